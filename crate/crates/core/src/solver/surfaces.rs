use super::linear::{solve_parametric, ParametricSolution};
use super::{
    int, list_str, non_integral, owned, show, Candidate, MaximalList, Provenance, Rejection, Search, SecantConstraint,
    TraceStep,
};
use crate::chern::{fundamental_system, segre_surface, SurfaceInvariants, VarietyInvariants};
use crate::exact::Rat;
use crate::fano;
use crate::multisecant::Formula;
use crate::numerology::{enumerate_types, TransformationType};

const LIST: MaximalList = MaximalList::Surfaces;

fn ff_residual(t: &TransformationType, inv: &SurfaceInvariants, z: &Rat, e: &Rat) -> Vec<Rat> {
    let (fz, fbz, fb2z) = fundamental_system(t, &segre_surface(inv, t.r)).expect("length n+1");
    vec![fz - z, fbz - z * t.b, fb2z - (z * (t.b * t.b) - e)]
}

fn fano_step(t: &TransformationType) -> (Vec<i64>, TraceStep) {
    let target = fano::target(t.r, t.i).expect("numerology index in range");
    let zs = target.degrees.clone().expect("surface targets have coindex at most 3");
    let step = TraceStep::new("fano", format!("coindex {}: z in {} ({})", target.coindex, list_str(&zs), target.citation));
    (zs, step)
}

/// Scrolls in `P^6`: `K^2 = 8(1-g)`, `chi = 1-g`, unknowns `(d, g, e)`.
fn scroll_branch(t: &TransformationType, out: &mut Search) {
    let (zs, fstep) = fano_step(t);
    let sol = solve_parametric(3, 1, |x, p| {
        let inv = SurfaceInvariants::scroll(x[0].clone(), x[1].clone());
        ff_residual(t, &inv, &p[0], &x[2])
    })
    .expect("scroll system is square");
    for z in zs {
        let zr = Rat::int(z);
        let x = sol.at(&[zr.clone()]).expect("square system");
        let named = [("d", &x[0]), ("g", &x[1]), ("e", &x[2]), ("z", &zr)];
        let mut reasons = non_integral(&named);
        if x[0] < 1 || x[0] >= t.degree_bound() {
            reasons.push(format!("d = {} outside [1, {})", x[0], t.degree_bound()));
        }
        if x[1].is_negative() {
            reasons.push(format!("g = {} < 0", x[1]));
        }
        if x[2].is_negative() {
            reasons.push(format!("e = {} < 0", x[2]));
        }
        if !reasons.is_empty() {
            out.rejected.push(Rejection { list: LIST, ttype: *t, values: owned(&named), reasons: prefix("scroll", reasons) });
            continue;
        }
        let inv = SurfaceInvariants::scroll(x[0].clone(), x[1].clone());
        out.rows.push(Candidate {
            list: LIST,
            ttype: *t,
            z,
            e: int(&x[2]),
            provenance: Provenance::Derived,
            citation: None,
            secant_constraints: vec![],
            trace: vec![
                TraceStep::new("numerology", t.to_string()),
                fstep.clone(),
                TraceStep::new("scroll: K2 = 8(1-g), chi = 1-g", format!("K2={} chi={}", inv.k2, inv.chi)),
                TraceStep::new("fundamental formulae", show(&named)),
                TraceStep::new("integrality, e >= 0, d < a^(r-n)", "ok"),
            ],
            inv: VarietyInvariants::Surface(inv),
        });
    }
}

fn prefix(tag: &str, reasons: Vec<String>) -> Vec<String> {
    reasons.into_iter().map(|r| format!("{tag}: {r}")).collect()
}

/// Non-scroll branch: for fixed `d`, unknowns `(g, K^2, chi[, e])` from the fundamental formulae
/// plus the linear secant constraints, then the nonlinear one as a filter.
struct Branch {
    linear: Vec<(Formula, i64, Rat)>,
    nonlinear: Option<(Formula, i64)>,
    free_e: bool,
    note: &'static str,
}

fn inv_of(d: &Rat, x: &[Rat]) -> SurfaceInvariants {
    SurfaceInvariants {
        d: d.clone(),
        g: x[0].clone(),
        k2: x[1].clone(),
        chi: x[2].clone(),
        is_scroll: false,
        line_selfints: vec![],
    }
}

fn general_branch(t: &TransformationType, branch: &Branch, out: &mut Search) {
    let (zs, fstep) = fano_step(t);
    let bound = t.degree_bound();
    let unknowns = if branch.free_e { 4 } else { 3 };
    let systems: Vec<(Rat, ParametricSolution)> = (1..bound)
        .map(|d| {
            let d = Rat::int(d);
            let sol = solve_parametric(unknowns, 1, |x, p| {
                let inv = inv_of(&d, x);
                let e = if branch.free_e { x[3].clone() } else { Rat::zero() };
                let mut res = ff_residual(t, &inv, &p[0], &e);
                for (f, amb, want) in &branch.linear {
                    res.push(f.eval(&inv, *amb).value - want);
                }
                res
            })
            .expect("surface system has full rank");
            (d, sol)
        })
        .collect();
    let constraint_desc: Vec<String> = branch
        .linear
        .iter()
        .map(|(f, _, v)| format!("{f}={v}"))
        .chain(branch.nonlinear.iter().map(|(f, _)| format!("{f}=0")))
        .collect();
    let constraint_desc = constraint_desc.join(", ");
    for z in zs {
        let zr = Rat::int(z);
        let mut hits = 0;
        for (d, sol) in &systems {
            let Some(x) = sol.at(&[zr.clone()]) else { continue };
            let inv = inv_of(d, &x);
            if let Some((f, amb)) = branch.nonlinear {
                if !f.eval(&inv, amb).value.is_zero() {
                    continue;
                }
            }
            hits += 1;
            let e = if branch.free_e { x[3].clone() } else { Rat::zero() };
            let named = [("d", d), ("g", &x[0]), ("K2", &x[1]), ("chi", &x[2]), ("e", &e), ("z", &zr)];
            let mut reasons = non_integral(&named);
            if x[0].is_negative() {
                reasons.push(format!("g = {} < 0", x[0]));
            }
            if e.is_negative() {
                reasons.push(format!("e = {e} < 0"));
            }
            if !reasons.is_empty() {
                out.rejected.push(Rejection { list: LIST, ttype: *t, values: owned(&named), reasons });
                continue;
            }
            let mut secant_constraints: Vec<SecantConstraint> = branch
                .linear
                .iter()
                .map(|(f, amb, v)| SecantConstraint { formula: *f, ambient: *amb, expected: v.clone() })
                .collect();
            if let Some((f, amb)) = branch.nonlinear {
                secant_constraints.push(SecantConstraint { formula: f, ambient: amb, expected: Rat::zero() });
            }
            out.rows.push(Candidate {
                list: LIST,
                ttype: *t,
                inv: VarietyInvariants::Surface(inv),
                z,
                e: int(&e),
                provenance: Provenance::Derived,
                citation: None,
                secant_constraints,
                trace: vec![
                    TraceStep::new("numerology", t.to_string()),
                    fstep.clone(),
                    TraceStep::new(format!("fundamental formulae, {constraint_desc}, {}", branch.note), show(&named)),
                    TraceStep::new("integrality, e >= 0, d < a^(r-n)", "ok"),
                ],
            });
        }
        if hits == 0 {
            out.rejected.push(Rejection {
                list: LIST,
                ttype: *t,
                values: vec![("z".into(), zr)],
                reasons: vec![format!("no d in [1, {bound}) satisfies the fundamental formulae with {constraint_desc}")],
            });
        }
    }
}

fn curated(t: &TransformationType, inv: SurfaceInvariants, z: i64, what: &str, citation: &str) -> Candidate {
    Candidate {
        list: LIST,
        ttype: *t,
        inv: VarietyInvariants::Surface(inv),
        z,
        e: 0,
        provenance: Provenance::Curated,
        citation: Some(citation.to_string()),
        secant_constraints: vec![],
        trace: vec![TraceStep::new("numerology", t.to_string()), TraceStep::new("curated", what)],
    }
}

/// Maximal list for surfaces.
pub fn search_n2() -> Search {
    let mut out = Search::default();
    let mut types = enumerate_types(2).expect("n = 2 is valid");
    types.sort_by_key(|t| (-t.r, -t.a, -t.b));
    let of = |r: i64, a: i64| -> Vec<TransformationType> { types.iter().copied().filter(|t| t.r == r && t.a == a).collect() };

    for t in of(6, 2) {
        scroll_branch(&t, &mut out);
    }
    for t in of(6, 2) {
        let branch = Branch {
            linear: vec![(Formula::N2, 6, Rat::int(2 * t.b - 1)), (Formula::N3_6, 6, Rat::zero())],
            nonlinear: None,
            free_e: true,
            note: "non-scroll, N2 = deg Sec = 2b-1",
        };
        general_branch(&t, &branch, &mut out);
    }
    for t in of(5, 2) {
        let row = match t.b {
            2 => curated(
                &t,
                SurfaceInvariants::new(4, 0, 9, 1),
                1,
                "Veronese surface in P5",
                "Severi: the only smooth surface in P5 with 4-dimensional secant variety is the Veronese",
            ),
            _ => curated(
                &t,
                SurfaceInvariants::scroll(3.into(), 0.into()),
                5,
                "cubic rational normal scroll in P4",
                "surface in P4 swept out by a 2-dimensional family of conics, hence the cubic scroll",
            ),
        };
        out.rows.push(row);
    }
    for t in of(4, 4) {
        let branch = Branch {
            linear: vec![(Formula::N2, 4, Rat::zero())],
            nonlinear: Some((Formula::N5_4, 4)),
            free_e: true,
            note: "not a scroll (scrolls in P4 have no 4-secant lines), defined by quartics",
        };
        general_branch(&t, &branch, &mut out);
    }
    for t in of(4, 3) {
        let branch = Branch {
            linear: vec![(Formula::N2, 4, Rat::zero())],
            nonlinear: Some((Formula::N4_4, 4)),
            free_e: false,
            note: "defined by cubics, e = 0 (codim Y > 2)",
        };
        general_branch(&t, &branch, &mut out);
    }
    for t in of(4, 2) {
        out.rows.push(curated(
            &t,
            SurfaceInvariants::new(2, 0, 8, 1),
            2,
            "quadric surface in P3",
            "m = 0: X is a quadric hypersurface in a hyperplane of P^r",
        ));
    }
    out
}

pub fn solve_n2() -> Vec<Candidate> {
    search_n2().rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_rows() {
        let s = search_n2();
        assert_eq!(s.rows.len(), 20, "{:#?}", s.rows.iter().map(|r| (r.ttype.to_string(), r.z, r.inv.named())).collect::<Vec<_>>());
    }
}
