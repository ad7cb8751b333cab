use super::linear::solve_parametric;
use super::{int, list_str, non_integral, owned, show, Candidate, MaximalList, Provenance, Rejection, Search, TraceStep};
use crate::chern::{fundamental_system, segre_curve, CurveInvariants, VarietyInvariants};
use crate::exact::Rat;
use crate::fano;
use crate::numerology::enumerate_types;

/// Maximal list for curves: `(d, g, e)` solved from the fundamental formulae for each admissible `z`.
pub fn search_n1() -> Search {
    let mut out = Search::default();
    let mut types = enumerate_types(1).expect("n = 1 is valid");
    types.sort_by_key(|t| (-t.r, -t.a, -t.b));
    for t in types {
        let target = fano::target(t.r, t.i).expect("numerology index in range");
        let zs = target.degrees.clone().expect("curve targets have coindex at most 2");
        let free_e = t.codim_y() == 2;
        let unknowns = if free_e { 3 } else { 2 };
        let sol = solve_parametric(unknowns, 1, |x, p| {
            let inv = CurveInvariants { d: x[0].clone(), g: x[1].clone() };
            let e = if free_e { x[2].clone() } else { Rat::zero() };
            let (z, bz, b2z_e) = fundamental_system(&t, &segre_curve(&inv, t.r)).expect("length n+1");
            let zt = &p[0];
            vec![z - zt, bz - zt * t.b, b2z_e - (zt * (t.b * t.b) - &e)]
        })
        .expect("curve system is affine with full rank");
        for z in zs {
            let zr = Rat::int(z);
            let fano_step = TraceStep::new("fano", format!("coindex {}: z in {} ({})", target.coindex, list_str(target.degrees.as_deref().unwrap()), target.citation));
            let Some(x) = sol.at(&[zr.clone()]) else {
                out.rejected.push(Rejection {
                    list: MaximalList::Curves,
                    ttype: t,
                    values: vec![("z".into(), zr)],
                    reasons: vec!["fundamental formulae inconsistent with e = 0".into()],
                });
                continue;
            };
            let e = if free_e { x[2].clone() } else { Rat::zero() };
            let named = [("d", &x[0]), ("g", &x[1]), ("e", &e), ("z", &zr)];
            let mut reasons = non_integral(&named);
            if e.is_negative() {
                reasons.push(format!("e = {e} < 0"));
            }
            if x[0] < 1 || x[0] >= t.degree_bound() {
                reasons.push(format!("d = {} outside [1, {})", x[0], t.degree_bound()));
            }
            if x[1].is_negative() {
                reasons.push(format!("g = {} < 0", x[1]));
            }
            if !reasons.is_empty() {
                out.rejected.push(Rejection { list: MaximalList::Curves, ttype: t, values: owned(&named), reasons });
                continue;
            }
            let e_note = if free_e { "e free" } else { "e = 0 (codim Y > 2)" };
            out.rows.push(Candidate {
                list: MaximalList::Curves,
                ttype: t,
                inv: VarietyInvariants::Curve(CurveInvariants { d: x[0].clone(), g: x[1].clone() }),
                z,
                e: int(&e),
                provenance: Provenance::Derived,
                citation: None,
                secant_constraints: vec![],
                trace: vec![
                    TraceStep::new("numerology", t.to_string()),
                    fano_step,
                    TraceStep::new(format!("fundamental formulae, {e_note}"), show(&named)),
                    TraceStep::new("integrality, e >= 0, d < a^(r-n)", "ok"),
                ],
            });
        }
    }
    out
}

pub fn solve_n1() -> Vec<Candidate> {
    search_n1().rows
}
