use num_bigint::BigInt;
use num_integer::Integer;

use super::linear::{solve_parametric, ParametricSolution};
use super::{
    liaison_invariants, list_str, non_integral, owned, show, Candidate, MaximalList, Provenance, Rejection, Search,
    SecantConstraint, TraceStep,
};
use crate::chern::{
    c3_formula, fundamental_system, noether_c2, p5_values, segre_threefold, SheafResolution, ThreefoldInvariants,
    VarietyInvariants,
};
use crate::exact::{integer_roots_quadratic, Rat};
use crate::fano;
use crate::multisecant::Formula;
use crate::numerology::{enumerate_types, TransformationType};

/// `(d, g_min, g_max)` for `(a, b) = (5, 1)` and `d <= 18`: the lower end is `floor((11d - 123)/2) + 1`
/// from `e < z`, the upper end is the genus bound for threefolds in `P^5` lying on no quartic.
pub const G_WINDOW_51: [(i64, i64, i64); 8] = [
    (18, 38, 40),
    (17, 33, 36),
    (16, 27, 33),
    (15, 22, 28),
    (14, 16, 24),
    (13, 11, 21),
    (12, 5, 19),
    (11, 0, 15),
];

const GENUS_BOUND: &str = "Gruson-Peskine genus bound for threefolds in P5";

/// Threefold invariants from the unknown vector `(g, KS2, chiS, chiX, KX3)` at fixed `d`.
fn threefold(d: &Rat, g: &Rat, ks2: &Rat, chi_s: &Rat, chi_x: &Rat, kx3: &Rat) -> ThreefoldInvariants {
    let mut inv = ThreefoldInvariants {
        d: d.clone(),
        g: g.clone(),
        chi_s: Some(chi_s.clone()),
        chi_x: Some(chi_x.clone()),
        ks2: Some(ks2.clone()),
        kx3: Some(kx3.clone()),
        c2s: Some(noether_c2(chi_s, ks2)),
        c3x: None,
    };
    inv.c3x = Some(c3_formula(&inv).expect("all fields set"));
    inv
}

/// Fundamental formulae plus the two `P^5` relations, affine in every invariant except `d`.
fn residual(t: &TransformationType, inv: &ThreefoldInvariants, z: &Rat, e: &Rat) -> Vec<Rat> {
    let s = segre_threefold(inv, t.r).expect("complete invariants");
    let (fz, fbz, fb2z) = fundamental_system(t, &s).expect("length n+1");
    let (kx3, twice_ks2) = p5_values(inv).expect("complete invariants");
    vec![
        fz - z,
        fbz - z * t.b,
        fb2z - (z * (t.b * t.b) - e),
        inv.kx3.as_ref().unwrap() - kx3,
        inv.ks2.as_ref().unwrap() * 2 - twice_ks2,
    ]
}

fn named(inv: &ThreefoldInvariants, e: &Rat, z: &Rat) -> Vec<(&'static str, Rat)> {
    let mut v = VarietyInvariants::Threefold(inv.clone()).named();
    v.push(("e", e.clone()));
    v.push(("z", z.clone()));
    v
}

fn refs<'a>(v: &'a [(&'static str, Rat)]) -> Vec<(&'static str, &'a Rat)> {
    v.iter().map(|(n, x)| (*n, x)).collect()
}

fn fano_step(t: &TransformationType) -> (Vec<i64>, TraceStep) {
    let target = fano::target(t.r, t.i).expect("numerology index in range");
    let zs = target.degrees.clone().unwrap_or_default();
    let step = TraceStep::new("fano", format!("coindex {}: z in {} ({})", target.coindex, list_str(&zs), target.citation));
    (zs, step)
}

fn types_p5(a: i64) -> Vec<TransformationType> {
    let mut v: Vec<_> = enumerate_types(3).expect("n = 3 is valid").into_iter().filter(|t| t.r == 5 && t.a == a).collect();
    v.sort_by_key(|t| -t.b);
    v
}

fn derived(list: MaximalList, t: &TransformationType, inv: ThreefoldInvariants, z: i64, e: i64, formula: Formula, trace: Vec<TraceStep>) -> Candidate {
    Candidate {
        list,
        ttype: *t,
        inv: VarietyInvariants::Threefold(inv),
        z,
        e,
        provenance: Provenance::Derived,
        citation: None,
        secant_constraints: vec![SecantConstraint { formula, ambient: 4, expected: Rat::zero() }],
        trace,
    }
}

/// `n = 3`, `(a, b) = (4, b)` in `P^5`: `e = 0`, unknowns `(g, KS2, chiS, chiX, KX3)` per `d < 16`,
/// filtered by `N5,4(S) = 0`.
pub fn search_n3_a4() -> Search {
    let list = MaximalList::Threefold4b;
    let mut out = Search::default();
    for t in types_p5(4) {
        let (zs, fstep) = fano_step(&t);
        let bound = t.degree_bound().min(16);
        let systems: Vec<(Rat, ParametricSolution)> = (1..bound)
            .map(|d| {
                let d = Rat::int(d);
                let sol = solve_parametric(5, 1, |x, p| {
                    let inv = threefold(&d, &x[0], &x[1], &x[2], &x[3], &x[4]);
                    residual(&t, &inv, &p[0], &Rat::zero())
                })
                .expect("threefold system has full rank");
                (d, sol)
            })
            .collect();
        for z in zs {
            let zr = Rat::int(z);
            let mut hits = 0;
            for (d, sol) in &systems {
                let Some(x) = sol.at(&[zr.clone()]) else { continue };
                let inv = threefold(d, &x[0], &x[1], &x[2], &x[3], &x[4]);
                let s = inv.section().expect("complete");
                if !Formula::N5_4.eval(&s, 4).value.is_zero() {
                    continue;
                }
                hits += 1;
                let vals = named(&inv, &Rat::zero(), &zr);
                let reasons = non_integral(&refs(&vals));
                if !reasons.is_empty() {
                    out.rejected.push(Rejection { list, ttype: t, values: owned(&refs(&vals)), reasons });
                    continue;
                }
                let trace = vec![
                    TraceStep::new("numerology", t.to_string()),
                    fstep.clone(),
                    TraceStep::new("fundamental formulae, P5 relations, e = 0 (codim Y > 2), N5,4(S) = 0", show(&refs(&vals))),
                    TraceStep::new("integrality", "ok"),
                ];
                out.rows.push(derived(list, &t, inv, z, 0, Formula::N5_4, trace));
            }
            if hits == 0 {
                out.rejected.push(Rejection {
                    list,
                    ttype: t,
                    values: vec![("z".into(), zr)],
                    reasons: vec![format!("no d in [1, {bound}) satisfies the fundamental formulae with N5,4(S) = 0")],
                });
            }
        }
    }
    out
}

pub fn solve_n3_a4() -> Vec<Candidate> {
    search_n3_a4().rows
}

/// `n = 3`, `(a, b) = (5, b)` with `b >= b_min`. For `b >= 2` the search runs over `d < 25` and
/// `0 <= e < z b^2`; for `b = 1` it runs over genus windows and solves `N6,4 = 0` for `z`.
pub fn search_n3_a5(b_min: i64) -> Search {
    let mut out = Search::default();
    for t in types_p5(5).into_iter().filter(|t| t.b >= b_min) {
        if t.b == 1 {
            search_51(&t, &mut out);
        } else {
            search_5b(&t, &mut out);
        }
    }
    out
}

pub fn solve_n3_a5(b_min: i64) -> Vec<Candidate> {
    search_n3_a5(b_min).rows
}

fn search_5b(t: &TransformationType, out: &mut Search) {
    let list = MaximalList::Threefold5b;
    let (zs, fstep) = fano_step(t);
    let bound = t.degree_bound().min(25);
    let systems: Vec<(Rat, ParametricSolution)> = (1..bound)
        .map(|d| {
            let d = Rat::int(d);
            let sol = solve_parametric(5, 2, |x, p| {
                let inv = threefold(&d, &x[0], &x[1], &x[2], &x[3], &x[4]);
                residual(t, &inv, &p[0], &p[1])
            })
            .expect("threefold system has full rank");
            (d, sol)
        })
        .collect();
    for z in zs {
        let zr = Rat::int(z);
        let mut hits = 0;
        for (d, sol) in &systems {
            let inv_at = |e: i64| -> ThreefoldInvariants {
                let x = sol.at(&[zr.clone(), Rat::int(e)]).expect("square system");
                threefold(d, &x[0], &x[1], &x[2], &x[3], &x[4])
            };
            let n64 = |e: i64| Formula::N6_4.eval(&inv_at(e).section().expect("complete"), 4).value;
            let cubic = forward_differences(&(0..5).map(n64).collect::<Vec<_>>());
            assert!(cubic[4].is_zero(), "N6,4 is cubic in e");
            for e in 0..z * t.b * t.b {
                if !newton_eval(&cubic[..4], e).is_zero() {
                    continue;
                }
                let er = Rat::int(e);
                let inv = inv_at(e);
                hits += 1;
                let vals = named(&inv, &er, &zr);
                let reasons = non_integral(&refs(&vals));
                if !reasons.is_empty() {
                    out.rejected.push(Rejection { list, ttype: *t, values: owned(&refs(&vals)), reasons });
                    continue;
                }
                let trace = vec![
                    TraceStep::new("numerology", t.to_string()),
                    fstep.clone(),
                    TraceStep::new(
                        format!("fundamental formulae, P5 relations, 0 <= e < z b^2 = {}, N6,4(S) = 0", z * t.b * t.b),
                        show(&refs(&vals)),
                    ),
                    TraceStep::new("integrality", "ok"),
                ];
                out.rows.push(derived(list, t, inv, z, e, Formula::N6_4, trace));
            }
        }
        if hits == 0 {
            out.rejected.push(Rejection {
                list,
                ttype: *t,
                values: vec![("z".into(), zr)],
                reasons: vec![format!("no (d, e) with d < {bound}, 0 <= e < z b^2 satisfies N6,4(S) = 0")],
            });
        }
    }
}

/// `Delta^k f(0)` for `k = 0..len`.
fn forward_differences(values: &[Rat]) -> Vec<Rat> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// `sum_k Delta^k f(0) C(x, k)`.
fn newton_eval(diffs: &[Rat], x: i64) -> Rat {
    let mut acc = Rat::zero();
    let mut c = Rat::one();
    for (k, dk) in diffs.iter().enumerate() {
        acc += dk * &c;
        c = c * (x - k as i64) / (k as i64 + 1);
    }
    acc
}

/// The `(d, g)` pairs visited for `(a, b) = (5, 1)`, with the reason each was admitted.
pub(crate) fn windows_51() -> Vec<(i64, i64, String)> {
    let mut v = vec![
        (20, 51, "complete intersection (4,5)".to_string()),
        (19, 45, "linked (4,5) to a P3".to_string()),
    ];
    for (d, lo, hi) in G_WINDOW_51 {
        for g in lo..=hi {
            v.push((d, g, format!("(11d-123)/2 < g <= {hi} ({GENUS_BOUND})")));
        }
    }
    v
}

fn r5(v: &Rat) -> BigInt {
    v.numer().clone()
}

fn search_51(t: &TransformationType, out: &mut Search) {
    let list = MaximalList::Threefold51;
    let target = fano::target(t.r, t.i).expect("numerology index in range");
    let coindex = target.coindex;
    for (d, g, why) in windows_51() {
        let dr = Rat::int(d);
        let gr = Rat::int(g);
        let sol = solve_parametric(5, 1, |x, p| {
            let inv = threefold(&dr, &gr, &x[1], &x[2], &x[3], &x[4]);
            residual(t, &inv, &p[0], &x[0])
        })
        .expect("threefold system has full rank");
        let at = |z: i64| -> (Vec<Rat>, ThreefoldInvariants) {
            let x = sol.at(&[Rat::int(z)]).expect("square system");
            let inv = threefold(&dr, &gr, &x[1], &x[2], &x[3], &x[4]);
            (x, inv)
        };
        let n64 = |z: i64| Formula::N6_4.eval(&at(z).1.section().expect("complete"), 4).value;
        let (v0, v1, v2, v3) = (n64(0), n64(1), n64(2), n64(3));
        let qa = (&v2 - &v1 * 2 + &v0) / 2;
        let qb = &v1 - &v0 - &qa;
        let qc = v0.clone();
        assert_eq!(&qa * 9 + &qb * 3 + &qc, v3, "N6,4 is quadratic in z");
        let scale = [&qa, &qb, &qc].iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let sr = Rat::from(scale);
        let (ia, ib, ic) = (r5(&(&qa * &sr)), r5(&(&qb * &sr)), r5(&(&qc * &sr)));
        let roots = integer_roots_quadratic(&ia, &ib, &ic).expect("N6,4 is not identically zero in z");
        let window = TraceStep::new("window", format!("d={d} g={g}: {why}"));
        let quad = TraceStep::new("N6,4(S) = 0 as a quadratic in z", format!("{qa} z^2 + {qb} z + {qc}"));
        if roots.is_empty() {
            out.rejected.push(Rejection {
                list,
                ttype: *t,
                values: vec![("d".into(), dr.clone()), ("g".into(), gr.clone())],
                reasons: vec![format!("N6,4(S) = 0 has no integer root z ({qa} z^2 + {qb} z + {qc})")],
            });
            continue;
        }
        for z in roots {
            let z: i64 = z.try_into().expect("small root");
            let (x, inv) = at(z);
            let e = x[0].clone();
            let zr = Rat::int(z);
            let vals = named(&inv, &e, &zr);
            let mut reasons = Vec::new();
            if z < 1 {
                reasons.push(format!("z = {z} < 1"));
            } else if !fano::degree_coindex_compatible(z, coindex) {
                reasons.push(format!("z = {z} impossible for coindex {coindex}"));
            }
            if e.is_negative() {
                reasons.push(format!("e = {e} < 0"));
            }
            if !(e < zr) {
                reasons.push(format!("e = {e} >= z"));
            }
            reasons.extend(non_integral(&refs(&vals)));
            if reasons.is_empty() && d == 18 && g == 39 {
                reasons.push(linkage_obstruction_18_39());
            }
            if !reasons.is_empty() {
                out.rejected.push(Rejection { list, ttype: *t, values: owned(&refs(&vals)), reasons });
                continue;
            }
            let trace = vec![
                TraceStep::new("numerology", t.to_string()),
                TraceStep::new("fano", format!("coindex {coindex}: z unrestricted ({})", target.citation)),
                window.clone(),
                quad.clone(),
                TraceStep::new("fundamental formulae, P5 relations", show(&refs(&vals))),
                TraceStep::new("z >= 1, coindex, 0 <= e < z, integrality", "ok"),
            ];
            out.rows.push(derived(list, t, inv, z, e.to_i64().expect("integral"), Formula::N6_4, trace));
        }
    }
    out.rejected.push(Rejection {
        list,
        ttype: *t,
        values: vec![("d".into(), Rat::int(10))],
        reasons: vec!["d <= 10: excluded by the classification of threefolds of low degree in P5 (Beltrametti-Schneider-Sommese)".into()],
    });
}

/// `d = 18, g = 39`: linked `(5,5)` to `X'` with `(d', g') = (7, 6)`, itself linked `(2,4)` to a `P^3`.
/// The resulting resolution forces `h^0(I_X(5)) = 4`, too few quintics.
fn linkage_obstruction_18_39() -> String {
    let (d1, g1) = liaison_invariants(18, 39, 5, 5).expect("18 <= 25");
    let x = SheafResolution::complete_intersection(5, 1, 1).linked(2, 4).linked(5, 5);
    let h0 = x.h0_ideal(5).expect("line bundle resolution");
    format!("linked (5,5) to d'={d1} g'={g1}, linked (2,4) to P3; resolution {x} gives h0(I_X(5)) = {h0} < 6")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(c: &Candidate) -> (i64, i64, i64, i64) {
        (c.ttype.b, c.z, c.inv.d().to_i64().unwrap(), c.inv.g().to_i64().unwrap())
    }

    #[test]
    fn quartic_case() {
        let s = search_n3_a4();
        let k: Vec<_> = s.rows.iter().map(key).collect();
        assert_eq!(k, vec![(1, 4, 12, 19), (1, 6, 10, 12), (1, 8, 9, 9)]);
        let bad: Vec<_> = s.rejected.iter().filter(|r| r.values.len() > 1).map(|r| r.reasons.clone()).collect();
        assert_eq!(bad.len(), 2);
        assert!(bad[0].iter().any(|m| m == "chiX = 5/3 not integral"), "{bad:?}");
        assert!(bad[1].iter().any(|m| m == "chiX = 5/12 not integral"), "{bad:?}");
    }

    #[test]
    fn quintic_b_at_least_two() {
        let s = search_n3_a5(2);
        let k: Vec<_> = s.rows.iter().map(|c| (key(c), c.e)).collect();
        assert_eq!(k, vec![((5, 1, 15, 26), 15), ((3, 3, 14, 22), 14), ((2, 6, 16, 28), 21), ((2, 14, 12, 16), 33)]);
    }

    #[test]
    fn quintic_b_one() {
        let s = search_n3_a5(1);
        let k: Vec<_> = s.rows.iter().filter(|c| c.ttype.b == 1).map(|c| (c.inv.d().to_i64().unwrap(), c.inv.g().to_i64().unwrap(), c.z, c.e)).collect();
        let want: Vec<_> = [(20, 51, 5), (17, 33, 29), (17, 35, 13), (17, 36, 8), (16, 31, 9), (15, 27, 12), (14, 23, 16), (13, 19, 21), (12, 15, 21), (11, 13, 42), (11, 15, 68)]
            .into_iter()
            .map(|(d, g, z)| (d, g, z, z + 11 * d - 2 * g - 123))
            .collect();
        assert_eq!(k, want);
        let r18 = s.rejected.iter().find(|r| r.values.iter().any(|(n, v)| n == "z" && *v == 36)).unwrap();
        assert!(r18.reasons[0].contains("h0(I_X(5)) = 4"), "{:?}", r18.reasons);
    }

    #[test]
    fn windows_match_lower_bound_formula() {
        for (d, lo, _) in G_WINDOW_51 {
            assert_eq!(lo, Integer::div_floor(&(11 * d - 123), &2) + 1);
        }
    }
}
