use super::{Candidate, MaximalList, Provenance, TraceStep};
use crate::chern::{ThreefoldInvariants, VarietyInvariants};
use crate::exact::Rat;
use crate::numerology::TransformationType;

struct EasyRow {
    r: i64,
    a: i64,
    b: i64,
    z: i64,
    /// `d, g, KS2, chiS, chiX, c3X`
    inv: [i64; 6],
    what: &'static str,
    citation: &'static str,
}

const ROWS: [EasyRow; 6] = [
    EasyRow {
        r: 7,
        a: 2,
        b: 2,
        z: 2,
        inv: [6, 1, 6, 1, 1, 6],
        what: "hyperplane section of P2 x P2 in P8",
        citation: "secant defective threefolds (Fujita)",
    },
    EasyRow {
        r: 7,
        a: 2,
        b: 1,
        z: 14,
        inv: [4, 0, 8, 1, 1, 6],
        what: "rational normal scroll in P6",
        citation: "threefolds of degree < 8 in P6 (Ionescu)",
    },
    EasyRow {
        r: 7,
        a: 2,
        b: 1,
        z: 12,
        inv: [5, 1, 5, 1, 1, 4],
        what: "linear section of G(1,4) in P6",
        citation: "threefolds of degree < 8 in P6 (Ionescu)",
    },
    EasyRow {
        r: 6,
        a: 2,
        b: 1,
        z: 5,
        inv: [3, 0, 8, 1, 1, 6],
        what: "Segre embedding of P1 x P2 in P5",
        citation: "degenerate threefold of degree < 4",
    },
    EasyRow {
        r: 5,
        a: 3,
        b: 1,
        z: 4,
        inv: [5, 2, 1, 1, 1, 0],
        what: "quintic Castelnuovo threefold in P5",
        citation: "m = 1: base locus cut out by the maximal minors of a 2 x 3 matrix",
    },
    EasyRow {
        r: 5,
        a: 2,
        b: 1,
        z: 2,
        inv: [2, 0, 8, 1, 1, 4],
        what: "quadric hypersurface in P4",
        citation: "m = 0: X is a quadric hypersurface in a hyperplane of P^r",
    },
];

/// Curated rows for `r = 7`, `r = 6, a = 2` and `r = 5, a <= 3`, settled by geometric arguments.
pub fn solve_n3_easy() -> Vec<Candidate> {
    ROWS.iter()
        .map(|row| {
            let t = TransformationType::from_degrees(3, row.r, row.a, row.b).expect("admissible type");
            let [d, g, ks2, chi_s, chi_x, c3x] = row.inv;
            let inv = ThreefoldInvariants {
                d: d.into(),
                g: g.into(),
                chi_s: Some(chi_s.into()),
                chi_x: Some(chi_x.into()),
                ks2: Some(ks2.into()),
                kx3: None,
                c2s: Some(Rat::int(12 * chi_s - ks2)),
                c3x: Some(c3x.into()),
            };
            let sec = row.a * row.b - 1;
            Candidate {
                list: MaximalList::ThreefoldEasy,
                ttype: t,
                inv: VarietyInvariants::Threefold(inv),
                z: row.z,
                e: 0,
                provenance: Provenance::Curated,
                citation: Some(row.citation.to_string()),
                secant_constraints: vec![],
                trace: vec![
                    TraceStep::new("numerology", t.to_string()),
                    TraceStep::new("deg Sec = ab - 1", sec.to_string()),
                    TraceStep::new("curated", row.what),
                ],
            }
        })
        .collect()
}
