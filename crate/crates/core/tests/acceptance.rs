//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use special_birational::chern::{p5_values, SurfaceInvariants, ThreefoldInvariants, VarietyInvariants};
use special_birational::cli::{self, row_labels};
use special_birational::exact::{integer_roots_quadratic_i64, Rat};
use special_birational::knowledge::{self, candidate_value, KnowledgeBase};
use special_birational::multisecant::{n2, n3_4, n4_4};
use special_birational::numerology::{enumerate_types, families};
use special_birational::solver::{
    liaison_invariants, search_n1, search_n2, search_n3_a4, search_n3_a5, Candidate, MaximalList, Search,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// (r, a, b list, i = slope*b + offset as (slope, offset), m), retyped from the numerology tables.
type Fam = (i64, i64, &'static [i64], (i64, i64), i64);

const NUM_N1: &[Fam] = &[(4, 2, &[1, 2, 3], (1, 2), 2), (3, 3, &[1, 2, 3], (1, 1), 1), (3, 2, &[1], (0, 3), 0)];
const NUM_N2: &[Fam] = &[
    (6, 2, &[1, 2, 3, 4], (1, 3), 4),
    (5, 2, &[1, 2], (2, 2), 2),
    (4, 4, &[1, 2, 3, 4], (1, 1), 2),
    (4, 3, &[1, 2], (2, 1), 1),
    (4, 2, &[1], (0, 4), 0),
];
const NUM_N3: &[Fam] = &[
    (8, 2, &[1, 2, 3, 4, 5], (1, 4), 6),
    (7, 2, &[1, 2], (2, 3), 4),
    (6, 3, &[1, 2, 3, 4, 5], (1, 2), 4),
    (6, 2, &[1], (0, 5), 2),
    (5, 5, &[1, 2, 3, 4, 5], (1, 1), 3),
    (5, 4, &[1, 2], (2, 1), 2),
    (5, 3, &[1], (0, 4), 1),
    (5, 2, &[1], (0, 5), 0),
];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for (n, table) in [(1, NUM_N1), (2, NUM_N2), (3, NUM_N3)] {
        let types = enumerate_types(n).map_err(|e| e.to_string())?;
        let fams = families(&types);
        ensure(fams.len() == table.len(), || format!("n={n}: {} families, want {}", fams.len(), table.len()))?;
        let got: BTreeSet<_> = types.iter().map(|t| (t.r, t.a, t.b, t.i, t.m)).collect();
        let want: BTreeSet<_> = table
            .iter()
            .flat_map(|&(r, a, bs, (s, o), m)| bs.iter().map(move |&b| (r, a, b, s * b + o, m)))
            .collect();
        ensure(got == want, || format!("n={n}: types differ: {:?} vs {:?}", got, want))?;
        for (f, &(r, a, bs, _, m)) in fams.iter().zip(table) {
            ensure((f.r, f.a, f.m, f.bs.as_slice()) == (r, a, m, bs), || format!("n={n}: family order {f:?}"))?;
        }
        cli::numerology_report(n, None, None).map_err(|_| format!("numerology --n {n} failed"))?;
        summary.push(fams.len().to_string());
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}, limit 1 s"))?;
    Ok(format!("families {} in {took:.2?}", summary.join("/")))
}

// Published rows: (r, a, b, fields, z). Surface fields are d, g, K2, chi; threefold fields d, g, chiS, chiX.
type Row = (i64, i64, i64, [i64; 4], i64);

const MAX_N1: &[Row] = &[
    (4, 2, 3, [5, 1, 0, 0], 1),
    (4, 2, 2, [4, 0, 0, 0], 2),
    (4, 2, 1, [4, 1, 0, 0], 4),
    (4, 2, 1, [3, 0, 0, 0], 5),
    (3, 3, 3, [6, 3, 0, 0], 1),
    (3, 3, 2, [5, 1, 0, 0], 2),
    (3, 3, 1, [6, 4, 0, 0], 3),
    (3, 3, 1, [5, 2, 0, 0], 4),
    (3, 3, 1, [4, 0, 0, 0], 5),
    (3, 2, 1, [2, 0, 0, 0], 2),
];

// Scrolls carry K2 = 8(1-g), chi = 1-g; the Veronese, the cubic scroll and the quadric are read off
// their descriptions.
const MAX_N2: &[Row] = &[
    (6, 2, 4, [7, 1, 0, 0], 1),
    (6, 2, 2, [5, 0, 8, 1], 5),
    (6, 2, 1, [4, 0, 8, 1], 14),
    (6, 2, 4, [8, 3, 1, 1], 1),
    (6, 2, 3, [7, 2, 3, 1], 2),
    (6, 2, 2, [6, 1, 6, 1], 4),
    (6, 2, 1, [5, 1, 5, 1], 12),
    (5, 2, 2, [4, 0, 9, 1], 1),
    (5, 2, 1, [3, 0, 8, 1], 5),
    (4, 4, 4, [10, 11, 5, 5], 1),
    (4, 4, 2, [9, 8, -5, 2], 3),
    (4, 4, 2, [8, 6, -1, 2], 5),
    (4, 4, 1, [12, 19, 48, 16], 4),
    (4, 4, 1, [10, 12, 12, 7], 6),
    (4, 4, 1, [9, 9, 2, 4], 8),
    (4, 4, 1, [7, 4, -2, 1], 14),
    (4, 3, 2, [5, 1, 0, 0], 1),
    (4, 3, 1, [6, 4, 0, 2], 3),
    (4, 3, 1, [5, 2, 1, 1], 4),
    (4, 2, 1, [2, 0, 8, 1], 2),
];

const MAX_4B: &[Row] = &[
    (5, 4, 1, [12, 19, 16, -5], 4),
    (5, 4, 1, [10, 12, 7, 0], 6),
    (5, 4, 1, [9, 9, 4, 1], 8),
];

const MAX_5B: &[Row] = &[
    (5, 5, 5, [15, 26, 20, -4], 1),
    (5, 5, 3, [14, 22, 14, 0], 3),
    (5, 5, 2, [16, 28, 16, 10], 6),
    (5, 5, 2, [12, 16, 9, 0], 14),
];

const MAX_51: &[Row] = &[
    (5, 5, 1, [20, 51, 70, -55], 5),
    (5, 5, 1, [17, 33, 23, 9], 29),
    (5, 5, 1, [17, 35, 34, -12], 13),
    (5, 5, 1, [17, 36, 39, -21], 8),
    (5, 5, 1, [16, 31, 29, -11], 9),
    (5, 5, 1, [15, 27, 23, -7], 12),
    (5, 5, 1, [14, 23, 17, -3], 16),
    (5, 5, 1, [13, 19, 11, 1], 21),
    (5, 5, 1, [12, 15, 6, 2], 21),
    (5, 5, 1, [11, 13, 6, 1], 42),
    (5, 5, 1, [11, 15, 10, 2], 68),
];

fn int_of(c: &Candidate, name: &str) -> Option<i64> {
    candidate_value(c, name).and_then(|v| v.to_i64())
}

fn compare(list: MaximalList, rows: &[Candidate], want: &[Row]) -> Result<(), String> {
    let rows: Vec<&Candidate> = rows.iter().filter(|c| c.list == list).collect();
    ensure(rows.len() == want.len(), || format!("{list}: {} rows, want {}", rows.len(), want.len()))?;
    let owned: Vec<Candidate> = rows.iter().map(|c| (*c).clone()).collect();
    let labels = row_labels(&owned);
    for ((c, w), label) in rows.iter().zip(want).zip(labels) {
        let (r, a, b, f, z) = *w;
        let t = &c.ttype;
        let names: [&str; 4] = match &c.inv {
            VarietyInvariants::Curve(_) => ["d", "g", "", ""],
            VarietyInvariants::Surface(_) => ["d", "g", "K2", "chi"],
            VarietyInvariants::Threefold(_) => ["d", "g", "chiS", "chiX"],
        };
        for (name, expected) in names.iter().zip(f) {
            if name.is_empty() {
                continue;
            }
            let got = int_of(c, name);
            ensure(got == Some(expected), || format!("{list}/{label}: {name} = {got:?}, want {expected}"))?;
        }
        ensure((t.r, t.a, t.b, c.z) == (r, a, b, z), || {
            format!("{list}/{label}: (r,a,b,z) = {:?}, want {:?}", (t.r, t.a, t.b, c.z), (r, a, b, z))
        })?;
    }
    Ok(())
}

fn discrepancy_in_trace(s: &Search) -> Result<(), String> {
    // The (4, b) tuple with z = 14 must be killed with a recorded constraint, never emitted.
    let hit = s
        .rejected
        .iter()
        .filter(|x| x.list == MaximalList::Threefold4b)
        .any(|x| x.values.iter().any(|(n, v)| n == "z" && *v == 14) && !x.reasons.is_empty());
    ensure(hit, || "(4,b) discrepancy tuple not in the rejection trace".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let s1 = search_n1();
    let s2 = search_n2();
    let s4 = search_n3_a4();
    let s5 = search_n3_a5(1);
    let took = start.elapsed();
    compare(MaximalList::Curves, &s1.rows, MAX_N1)?;
    compare(MaximalList::Surfaces, &s2.rows, MAX_N2)?;
    compare(MaximalList::Threefold4b, &s4.rows, MAX_4B)?;
    compare(MaximalList::Threefold5b, &s5.rows, MAX_5B)?;
    compare(MaximalList::Threefold51, &s5.rows, MAX_51)?;
    discrepancy_in_trace(&s4)?;
    ensure(took < Duration::from_secs(10), || format!("took {took:?}, limit 10 s"))?;
    Ok(format!("rows 10/20/3/4/11 in {took:.2?}"))
}

fn criterion_3() -> Outcome {
    let kb = KnowledgeBase::builtin();
    let mut classes = Vec::new();
    let mut counts = Vec::new();
    for (n, table, want) in [(1, "n1", 8), (2, "n2", 13), (3, "n3r5", 7)] {
        let c = knowledge::classify(&kb, n).map_err(|e| e.to_string())?;
        let got = c.theorem(table).len();
        ensure(got == want, || format!("table {table}: {got} rows, want {want}"))?;
        for row in &c.rows {
            let cited = kb.rows.iter().find(|r| r.case_id == row.case_id).map(|r| &r.verdict);
            ensure(cited == Some(&row.verdict), || format!("{}: verdict differs from its ledger record", row.case_id))?;
        }
        counts.push(got.to_string());
        classes.push(c);
    }
    let types = knowledge::codimension_two_types(&classes);
    ensure(types.len() == 18, || format!("corollary: {} types, want 18", types.len()))?;
    Ok(format!("theorem rows {}, codimension-two types {}", counts.join("/"), types.len()))
}

fn section(c: &Candidate) -> Option<SurfaceInvariants> {
    match &c.inv {
        VarietyInvariants::Surface(s) => Some(s.clone()),
        VarietyInvariants::Threefold(t) => t.section().ok(),
        VarietyInvariants::Curve(_) => None,
    }
}

fn criterion_4() -> Outcome {
    let mut rows = knowledge::search_for(1).unwrap().rows;
    rows.extend(knowledge::search_for(2).unwrap().rows);
    rows.extend(knowledge::search_for(3).unwrap().rows);
    let mut constraints = 0;
    for c in &rows {
        let id = format!("{} [{}] z={}", c.list, c.ttype, c.z);
        ensure(c.fundamental_round_trip(), || format!("{id}: fundamental formulae do not round-trip"))?;
        for (name, v) in c.inv.named() {
            ensure(v.is_integer(), || format!("{id}: {name} = {v} not integral"))?;
        }
        for k in &c.secant_constraints {
            let s = section(c).ok_or_else(|| format!("{id}: no surface to evaluate {}", k.formula))?;
            let got = k.formula.eval(&s, k.ambient).value;
            ensure(got == k.expected, || format!("{id}: {} = {got}, cited {}", k.formula, k.expected))?;
            constraints += 1;
        }
        if c.list == MaximalList::Surfaces && c.ttype.r == 6 && !c.is_scroll() {
            let s = section(c).unwrap();
            let want = Rat::int(2 * c.ttype.b - 1);
            ensure(n2(&s, 6).value == want, || format!("{id}: N2 != 2b-1"))?;
            ensure(
                c.secant_constraints.iter().any(|k| k.expected == want),
                || format!("{id}: N2 = 2b-1 not recorded"),
            )?;
        }
        if c.list == MaximalList::Surfaces && c.ttype.r == 6 && c.is_scroll() {
            let d = int_of(c, "d").unwrap();
            let (num, den) = (160 - 19 * d, 7 * c.ttype.b - 1);
            ensure(num % den == 0 && num / den == c.z, || format!("{id}: z = {num}/{den}"))?;
        }
        if c.list == MaximalList::Threefold51 {
            let (d, g) = (int_of(c, "d").unwrap(), int_of(c, "g").unwrap());
            ensure(c.e == c.z + 11 * d - 2 * g - 123, || format!("{id}: e off the eliminated line"))?;
        }
    }
    Ok(format!("{} rows round-trip, {constraints} secant constraints at their cited values", rows.len()))
}

fn criterion_5() -> Outcome {
    let kb = KnowledgeBase::builtin();
    let checks = knowledge::verify_resolutions(&kb);
    ensure(!checks.is_empty(), || "no resolutions checked".into())?;
    for c in &checks {
        ensure(c.passed, || c.to_string())?;
    }
    let fano21 = checks
        .iter()
        .find(|c| c.id == "max/51/viii")
        .and_then(|c| c.computed.clone())
        .ok_or("no resolution for the degree-21 Fano row")?;
    let want = (Rat::int(13), Rat::int(19), Rat::int(1));
    ensure((fano21.d.clone(), fano21.g.clone(), fano21.chi_x.clone()) == want, || format!("degree-21 row: {fano21:?}"))?;
    Ok(format!("{} resolutions and links; degree-21 row d=13 g=19 chi=1", checks.len()))
}

fn criterion_6() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let strategy = (1i64..15, 1i64..15, 0.0f64..=1.0, -100i64..300);
    runner
        .run(&strategy, |(p, q, frac, g)| {
            let d = ((p * q) as f64 * frac).floor() as i64;
            let (d2, g2) = liaison_invariants(d, g, p, q).unwrap();
            prop_assert_eq!(liaison_invariants(d2, g2, p, q).unwrap(), (d, g));
            Ok(())
        })
        .map_err(|e| format!("liaison involution: {e}"))?;

    let mut quadric = ThreefoldInvariants::new(2, 0);
    quadric.chi_s = Some(Rat::one());
    quadric.chi_x = Some(Rat::one());
    let (kx3, _) = p5_values(&quadric).map_err(|e| e.to_string())?;
    ensure(kx3 == Rat::int(-54), || format!("quadric K^3 = {kx3}"))?;

    let plane = SurfaceInvariants::new(1, 0, 9, 1);
    for (name, v) in [("N2", n2(&plane, 4).value), ("N3,4", n3_4(&plane).value), ("N4,4", n4_4(&plane).value)] {
        ensure(v.is_zero(), || format!("plane {name} = {v}"))?;
    }
    let veronese = SurfaceInvariants::new(4, 0, 9, 1);
    ensure(n2(&veronese, 5).value.is_zero(), || "Veronese N2 nonzero".into())?;

    let mut polys = 0;
    for a in -50i64..=50 {
        for b in -50i64..=50 {
            for c in -50i64..=50 {
                let got = integer_roots_quadratic_i64(a, b, c);
                if (a, b, c) == (0, 0, 0) {
                    ensure(got.is_err(), || "zero polynomial accepted".into())?;
                    continue;
                }
                let brute: Vec<i64> = (-51i64..=51).filter(|z| a * z * z + b * z + c == 0).collect();
                ensure(got.as_ref().ok() == Some(&brute), || format!("roots of {a}z^2+{b}z+{c}: {got:?} vs {brute:?}"))?;
                polys += 1;
            }
        }
    }
    Ok(format!("1000 links, K^3 = -54, plane/Veronese counts 0, {polys} quadratics"))
}

const REPORTS: &[&[&str]] = &[
    &["numerology", "--n", "1"],
    &["numerology", "--n", "2"],
    &["numerology", "--n", "3"],
    &["maximal-list", "--n", "1", "--show-rejected"],
    &["maximal-list", "--n", "2", "--show-rejected"],
    &["maximal-list", "--n", "3", "--show-rejected"],
    &["classify", "--n", "1"],
    &["classify", "--n", "2"],
    &["classify", "--n", "3", "--families"],
    &["classify", "--codim-two"],
    &["lebarz", "--d", "9", "--g", "8", "--k2", "-5", "--chi", "2"],
    &["verify-resolutions"],
    &["liaison", "--p", "5", "--q", "5", "--d", "10", "--g", "6"],
];

fn all_reports(mut one: impl FnMut(&[&str]) -> Vec<u8>) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for args in REPORTS {
        for fmt in ["md", "json", "csv"] {
            let mut a = args.to_vec();
            a.extend(["--format", fmt]);
            out.push(one(&a));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let in_process = |a: &[&str]| {
        let mut argv = vec!["sbt"];
        argv.extend_from_slice(a);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        cli::run_with(argv, &mut out, &mut err);
        out
    };
    let first = all_reports(in_process);
    let second = all_reports(in_process);
    ensure(first == second, || "in-process reports differ between runs".into())?;
    let exe = env!("CARGO_BIN_EXE_sbt");
    let spawned = |a: &[&str]| Command::new(exe).args(a).output().expect("spawn sbt").stdout;
    let third = all_reports(spawned);
    ensure(first == third, || "binary output differs from the in-process run".into())?;
    let bytes: usize = first.iter().map(Vec::len).sum();
    Ok(format!("{} reports, {bytes} bytes, identical across three runs", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("numerology families", criterion_1),
        ("maximal lists", criterion_2),
        ("classification counts", criterion_3),
        ("consistency suite", criterion_4),
        ("resolution profiles", criterion_5),
        ("property checks", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
