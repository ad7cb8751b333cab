//! Command-line surface: `numerology`, `maximal-list`, `classify`, `lebarz`,
//! `verify-resolutions`, `liaison`.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 on a validation failure.

pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{ClassificationReport, Format, Header, RejectedTuple, Report, ReportRow, TableReport, ENGINE_VERSION};

use crate::chern::{hilbert_from_resolution, SheafResolution, SurfaceInvariants};
use crate::exact::Rat;
use crate::knowledge::{self, KnowledgeBase, Verdict};
use crate::multisecant::Formula;
use crate::numerology::{enumerate_types, families};
use crate::solver::{self, Candidate, MaximalList, Rejection};

#[derive(Debug, Parser)]
#[command(name = "sbt", version, about = "Classification engine for special birational transformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value = "md", global = true)]
    format: FormatArg,
    /// Include rejected tuples and per-row traces.
    #[arg(long, global = true)]
    show_rejected: bool,
    /// Knowledge file replacing the built-in one.
    #[arg(long, global = true)]
    knowledge: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Md,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Md => Format::Md,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Families of admissible types for a base locus of dimension n.
    Numerology {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
    },
    /// Rows allowed by the fundamental formulae and the secant constraints.
    MaximalList {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
    },
    /// Maximal list joined with the verdict ledger.
    Classify {
        #[arg(long, required_unless_present = "codim_two")]
        n: Option<i64>,
        /// All types with r = n + 2, over n = 1, 2, 3.
        #[arg(long, conflicts_with = "n")]
        codim_two: bool,
        /// List the parametric families stored as single rows.
        #[arg(long)]
        families: bool,
    },
    /// Multisecant line counts of a surface.
    Lebarz {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        k2: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        chi: Option<i64>,
        /// Ambient dimension for the double-point count.
        #[arg(long, default_value_t = 4)]
        r: i64,
        #[arg(long)]
        scroll: bool,
        /// Self-intersection of a line on the surface; repeatable.
        #[arg(long = "line-selfint", allow_negative_numbers = true)]
        line_selfint: Vec<i64>,
    },
    /// Hilbert profiles of every stored resolution and link.
    VerifyResolutions,
    /// Invariants, and optionally a resolution, of the residual in a complete intersection.
    Liaison {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        g: Option<i64>,
        /// e.g. "P5: O(-5)^4 -> O(-4)^5"
        #[arg(long)]
        resolution: Option<String>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    /// The report is still emitted.
    Validation(String, Option<Report>),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Validation(..) => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn validation(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into(), None)
}

/// Runs the CLI on `argv` (program name first) against the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let format: Format = cli.common.format.into();
    let (report, code) = match execute(&cli) {
        Ok(r) => (Some(r), 0),
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            return 1;
        }
        Err(Failure::Validation(m, r)) => {
            let _ = writeln!(err, "validation failure: {m}");
            (r, 2)
        }
    };
    if let Some(report) = report {
        let text = report.render(format);
        match &cli.common.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, text) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return 1;
                }
            }
            None => {
                if out.write_all(text.as_bytes()).is_err() {
                    return 1;
                }
            }
        }
    }
    code
}

fn load_knowledge(common: &Common) -> Result<KnowledgeBase, Failure> {
    match &common.knowledge {
        None => Ok(KnowledgeBase::builtin()),
        Some(p) => KnowledgeBase::load(p).map_err(|e| validation(format!("{}: {e}", p.display()))),
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let show = cli.common.show_rejected;
    match &cli.command {
        Command::Numerology { n, a, b } => numerology_report(*n, *a, *b),
        Command::MaximalList { n, a, b } => maximal_list_report(*n, *a, *b, show),
        Command::Classify { n, codim_two, families } => {
            let kb = load_knowledge(&cli.common)?;
            if *codim_two {
                codim_two_report(&kb, show)
            } else {
                classify_report(&kb, n.expect("clap enforces --n"), show, *families)
            }
        }
        Command::Lebarz { d, g, k2, chi, r, scroll, line_selfint } => {
            lebarz_report(*d, *g, *k2, *chi, *r, *scroll, line_selfint)
        }
        Command::VerifyResolutions => {
            let kb = load_knowledge(&cli.common)?;
            verify_report(&kb)
        }
        Command::Liaison { p, q, d, g, resolution } => liaison_report(*p, *q, *d, *g, resolution.as_deref()),
    }
}

pub fn numerology_report(n: i64, a: Option<i64>, b: Option<i64>) -> Result<Report, Failure> {
    let types = enumerate_types(n).map_err(|e| usage(e.to_string()))?;
    let types: Vec<_> = types.into_iter().filter(|t| a.map_or(true, |a| t.a == a) && b.map_or(true, |b| t.b == b)).collect();
    let fams = families(&types);
    let columns = ["r", "a", "m", "b", "i", "types"].map(String::from).to_vec();
    let rows = fams
        .iter()
        .map(|f| vec![f.r.to_string(), f.a.to_string(), f.m.to_string(), f.b_range(), f.index_expr(), f.bs.len().to_string()])
        .collect();
    let mut header = Header::new("numerology", Some(n));
    if let Some(a) = a {
        header = header.param("a", a);
    }
    if let Some(b) = b {
        header = header.param("b", b);
    }
    let notes = vec![format!("{} families, {} types", fams.len(), types.len())];
    Ok(Report::Table(TableReport { header, columns, rows, notes }))
}

const ROMAN: [&str; 20] = [
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv", "xv", "xvi", "xvii", "xviii",
    "xix", "xx",
];

const EASY_LABELS: [&str; 6] = ["I-a", "I-b", "I-c", "II", "III", "IV"];

/// Position labels of solver rows within their lists.
pub fn row_labels(rows: &[Candidate]) -> Vec<String> {
    let mut seen: Vec<(MaximalList, usize)> = Vec::new();
    rows.iter()
        .map(|c| {
            let k = match seen.iter_mut().find(|(l, _)| *l == c.list) {
                Some((_, k)) => {
                    *k += 1;
                    *k
                }
                None => {
                    seen.push((c.list, 0));
                    0
                }
            };
            let table: &[&str] = if c.list == MaximalList::ThreefoldEasy { &EASY_LABELS } else { &ROMAN };
            table.get(k).map_or_else(|| (k + 1).to_string(), |s| s.to_string())
        })
        .collect()
}

fn rejected_of(r: &Rejection) -> RejectedTuple {
    RejectedTuple { list: r.list, ttype: r.ttype, tuple: r.values.clone(), constraint: r.reasons.join("; ") }
}

fn strip_trace(mut c: Candidate, show: bool) -> Candidate {
    if !show {
        c.trace.clear();
    }
    c
}

fn keep(a: Option<i64>, b: Option<i64>) -> impl Fn(&crate::numerology::TransformationType) -> bool {
    move |t| a.map_or(true, |a| t.a == a) && b.map_or(true, |b| t.b == b)
}

pub fn maximal_list_report(n: i64, a: Option<i64>, b: Option<i64>, show: bool) -> Result<Report, Failure> {
    let search = knowledge::search_for(n).map_err(|e| usage(e.to_string()))?;
    let labels = row_labels(&search.rows);
    let keep = keep(a, b);
    let rows: Vec<ReportRow> = search
        .rows
        .iter()
        .zip(labels)
        .filter(|(c, _)| keep(&c.ttype))
        .map(|(c, label)| ReportRow {
            label,
            case_id: None,
            candidate: strip_trace(c.clone(), show),
            verdict: None,
            description: None,
            citations: c.citation.iter().cloned().collect(),
        })
        .collect();
    let rejected: Vec<RejectedTuple> = search.rejected.iter().filter(|r| keep(&r.ttype)).map(rejected_of).collect();
    let rejected_count = rejected.len();
    let mut header = Header::new("maximal-list", Some(n));
    if let Some(a) = a {
        header = header.param("a", a);
    }
    if let Some(b) = b {
        header = header.param("b", b);
    }
    let notes = list_counts(&rows);
    Ok(Report::Classification(ClassificationReport {
        header,
        visited: rows.len() + rejected_count,
        rows,
        rejected: if show { rejected } else { vec![] },
        rejected_count,
        notes,
    }))
}

fn list_counts(rows: &[ReportRow]) -> Vec<String> {
    MaximalList::ALL
        .iter()
        .filter_map(|l| {
            let k = rows.iter().filter(|r| r.candidate.list == *l).count();
            (k > 0).then(|| format!("list {}: {k} rows", l.tag()))
        })
        .collect()
}

fn classified_row(r: &knowledge::ClassifiedRow, show: bool) -> ReportRow {
    let label = r.case_id.rsplit('/').next().unwrap_or_default().to_string();
    let citations = vec![r.citation.clone()];
    ReportRow {
        label,
        case_id: Some(r.case_id.clone()),
        candidate: strip_trace(r.candidate.clone(), show),
        verdict: Some(r.verdict.clone()),
        description: Some(r.description.clone()),
        citations,
    }
}

fn excluded_tuples(cl: &knowledge::Classification) -> Vec<RejectedTuple> {
    let mut out: Vec<RejectedTuple> = cl
        .rows
        .iter()
        .filter(|r| !r.verdict.is_smooth())
        .map(|r| RejectedTuple {
            list: r.candidate.list,
            ttype: r.candidate.ttype,
            tuple: r.candidate.inv.named().into_iter().map(|(n, v)| (n.to_string(), v)).chain([("z".to_string(), Rat::int(r.candidate.z))]).collect(),
            constraint: format!("{} ({}): {}", r.verdict, r.case_id, r.citation),
        })
        .collect();
    out.extend(cl.search.rejected.iter().map(rejected_of));
    out
}

fn classify_error(e: knowledge::ClassifyError) -> Failure {
    match e {
        knowledge::ClassifyError::BadDimension(_) => usage(e.to_string()),
        _ => validation(format!("incomplete ledger: {e}")),
    }
}

pub fn classify_report(kb: &KnowledgeBase, n: i64, show: bool, list_families: bool) -> Result<Report, Failure> {
    let cl = knowledge::classify(kb, n).map_err(classify_error)?;
    let rows: Vec<ReportRow> = cl.survivors().into_iter().map(|r| classified_row(r, show)).collect();
    let rejected = excluded_tuples(&cl);
    let rejected_count = rejected.len();
    let visited = cl.search.rows.len() + cl.search.rejected.len();
    let mut notes = vec![format!("{} smooth types out of {} maximal rows", rows.len(), cl.rows.len())];
    let mut tables: Vec<String> = Vec::new();
    for r in &rows {
        for l in r.verdict.as_ref().map_or(&[][..], Verdict::labels) {
            let t = l.split('/').next().unwrap_or_default().to_string();
            if !tables.contains(&t) {
                tables.push(t);
            }
        }
    }
    for t in tables {
        let mut labels: Vec<&str> = Vec::new();
        for r in &rows {
            for l in r.verdict.as_ref().map_or(&[][..], Verdict::labels) {
                if l.split('/').next() == Some(t.as_str()) {
                    labels.push(l.split('/').nth(1).unwrap_or_default());
                }
            }
        }
        labels.sort_by_key(|l| ROMAN.iter().position(|x| x.eq_ignore_ascii_case(l)));
        labels.dedup();
        notes.push(format!("table {t}: {} rows ({})", labels.len(), labels.join(", ")));
    }
    if list_families {
        for f in &kb.families {
            notes.push(format!("family {} ({}): {} [{}]", f.id, f.condition, f.description, f.citation));
        }
    } else {
        let ids: Vec<&str> = kb.families.iter().map(|f| f.id.as_str()).collect();
        notes.push(format!("parametric families kept as single rows: {}", ids.join(", ")));
    }
    Ok(Report::Classification(ClassificationReport {
        header: Header::new("classify", Some(n)),
        rows,
        rejected: if show { rejected } else { vec![] },
        rejected_count,
        visited,
        notes,
    }))
}

pub fn codim_two_report(kb: &KnowledgeBase, show: bool) -> Result<Report, Failure> {
    let mut classes = Vec::new();
    for n in 1..=3 {
        classes.push(knowledge::classify(kb, n).map_err(classify_error)?);
    }
    let types = knowledge::codimension_two_types(&classes);
    let mut rows = Vec::new();
    let mut rejected = Vec::new();
    let mut visited = 0;
    for cl in &classes {
        visited += cl.search.rows.len() + cl.search.rejected.len();
        for r in &cl.rows {
            let t = &r.candidate.ttype;
            if r.verdict.is_smooth() && t.r == t.n + 2 {
                rows.push(classified_row(r, show));
            }
        }
        rejected.extend(excluded_tuples(cl));
    }
    let off_codim = classes.iter().flat_map(|c| c.survivors()).count() - rows.len();
    let quadrics = rows.iter().filter(|r| r.candidate.ttype.m == 0).count();
    let notes = vec![
        format!("{} types with r = n + 2 ({} quadric rows counted as one family)", types.len(), quadrics),
        format!("{off_codim} smooth rows with r > n + 2 omitted"),
    ];
    let rejected_count = rejected.len() + off_codim;
    Ok(Report::Classification(ClassificationReport {
        header: Header::new("classify", None).param("codim-two", true),
        rows,
        rejected: if show { rejected } else { vec![] },
        rejected_count,
        visited,
        notes,
    }))
}

pub fn lebarz_report(
    d: i64,
    g: i64,
    k2: Option<i64>,
    chi: Option<i64>,
    r: i64,
    scroll: bool,
    lines: &[i64],
) -> Result<Report, Failure> {
    let mut inv = if scroll {
        let s = SurfaceInvariants::scroll(d.into(), g.into());
        if k2.is_some_and(|k| s.k2 != k) || chi.is_some_and(|c| s.chi != c) {
            return Err(usage("a scroll has K2 = 8(1-g) and chi = 1-g"));
        }
        s
    } else {
        let (Some(k2), Some(chi)) = (k2, chi) else {
            return Err(usage("--k2 and --chi are required unless --scroll is given"));
        };
        SurfaceInvariants::new(d, g, k2, chi)
    };
    inv.line_selfints = lines.to_vec();
    let columns = ["formula", "ambient", "value", "applicable"].map(String::from).to_vec();
    let rows = Formula::ALL
        .iter()
        .map(|f| {
            let amb = match f {
                Formula::N2 => r,
                Formula::N3_6 => 6,
                _ => 4,
            };
            let c = f.eval(&inv, amb);
            vec![f.to_string(), format!("P{amb}"), c.value.to_string(), c.applicable.to_string()]
        })
        .collect();
    let mut header = Header::new("lebarz", Some(2))
        .param("d", d)
        .param("g", g)
        .param("K2", &inv.k2)
        .param("chi", &inv.chi)
        .param("scroll", scroll);
    if !lines.is_empty() {
        header = header.param("line-selfint", lines.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    }
    Ok(Report::Table(TableReport { header, columns, rows, notes: vec![] }))
}

pub fn verify_report(kb: &KnowledgeBase) -> Result<Report, Failure> {
    let checks = knowledge::verify_resolutions(kb);
    let columns = ["id", "status", "d", "g", "chi", "chiS", "detail"].map(String::from).to_vec();
    let opt = |r: Option<&Rat>| r.map_or(String::new(), Rat::to_string);
    let rows = checks
        .iter()
        .map(|c| {
            let p = c.computed.as_ref();
            vec![
                c.id.clone(),
                if c.passed { "pass" } else { "FAIL" }.into(),
                opt(p.map(|p| &p.d)),
                opt(p.map(|p| &p.g)),
                opt(p.map(|p| &p.chi_x)),
                opt(p.and_then(|p| p.chi_s.as_ref())),
                c.message.clone(),
            ]
        })
        .collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let notes = vec![format!("{} checks, {failed} failed", checks.len())];
    let report = Report::Table(TableReport { header: Header::new("verify-resolutions", None), columns, rows, notes });
    if failed > 0 {
        return Err(Failure::Validation(format!("{failed} resolution checks failed"), Some(report)));
    }
    Ok(report)
}

pub fn liaison_report(p: i64, q: i64, d: Option<i64>, g: Option<i64>, res: Option<&str>) -> Result<Report, Failure> {
    let mut header = Header::new("liaison", None).param("p", p).param("q", q);
    let columns = ["field", "value"].map(String::from).to_vec();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut notes = Vec::new();
    let res: Option<SheafResolution> = match res {
        Some(s) => Some(s.parse().map_err(|e: crate::chern::ResolutionError| usage(e.to_string()))?),
        None => None,
    };
    let (d, g, n) = match (d, g, &res) {
        (Some(d), Some(g), _) => (d, g, None),
        (None, None, Some(r)) => {
            let prof = hilbert_from_resolution(r).map_err(|e| usage(e.to_string()))?;
            match (prof.d.to_i64(), prof.g.to_i64()) {
                (Some(d), Some(g)) => (d, g, Some(prof.dim)),
                _ => return Err(usage("resolution has non-integral degree or genus")),
            }
        }
        _ => return Err(usage("give --d and --g, or --resolution")),
    };
    header.n = n;
    header = header.param("d", d).param("g", g);
    let (d2, g2) = solver::liaison_invariants(d, g, p, q).map_err(|e| usage(e.to_string()))?;
    rows.push(vec!["d'".into(), d2.to_string()]);
    rows.push(vec!["g'".into(), g2.to_string()]);
    if d2 == 0 {
        notes.push("degenerate: X is the complete intersection, the residual is empty".into());
    }
    if let Some(r) = res {
        header = header.param("resolution", &r);
        let linked = knowledge::liaison_resolution(&r, p, q);
        rows.push(vec!["resolution'".into(), linked.resolution.to_string()]);
        rows.push(vec!["degenerate".into(), linked.degenerate.to_string()]);
        if let Ok(prof) = hilbert_from_resolution(&linked.resolution) {
            rows.push(vec!["profile d'".into(), prof.d.to_string()]);
            rows.push(vec!["profile g'".into(), prof.g.to_string()]);
            rows.push(vec!["profile chi'".into(), prof.chi_x.to_string()]);
        }
        notes.extend(linked.assumptions);
    }
    Ok(Report::Table(TableReport { header, columns, rows, notes }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("sbt").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn numerology_surfaces() {
        let (code, out, _) = call(&["numerology", "--n", "2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1 + 5);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["numerology", "--n", "2", "--bogus"]).0, 1);
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["maximal-list", "--n", "7"]).0, 1);
        assert_eq!(call(&["lebarz", "--d", "5", "--g", "1"]).0, 1);
    }

    #[test]
    fn labels_follow_lists() {
        let rows = solver::solve_n3_easy();
        assert_eq!(row_labels(&rows), EASY_LABELS.map(String::from).to_vec());
    }

    #[test]
    fn liaison_from_resolution() {
        let (code, out, _) = call(&["liaison", "--p", "5", "--q", "5", "--resolution", "P5: O(-5)^4 -> O(-4)^5", "--format", "csv"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("d',15\r\n"));
        assert!(out.contains("g',26\r\n"));
        assert!(out.contains("P5: O(-6)^5 -> O(-5)^6"));
    }
}
