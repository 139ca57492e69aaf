mod render;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seshadri::bounds::{compare_references, pell_fundamental, pell_plus_one, ReferenceRow};
use seshadri::exactmath::{parse_rational, to_decimal};
use seshadri::lptest::{certify_empty, Solver, TargetSystem};
use seshadri::nefcert::{
    nef_coprime_pencil, nef_plane_extended, nef_truncated, nef_uniform, nef_with_multiplicity, CertificateInput,
    Regime,
};
use seshadri::{apps, stats, Error, NefCertificate, Rational};

use render::{exact, print_csv, print_pairs, print_table, runs, yes_no};

/// Exact lower bounds for multipoint Seshadri constants and related thresholds.
#[derive(Parser, Debug)]
#[command(name = "seshadri", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower bound for the Seshadri constant of L (L^2 = l) at n general points.
    Epsilon {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        l: u64,
        /// Allow a point of multiplicity m <= max(1, d-1) on the witness curve.
        #[arg(long)]
        refined: bool,
        /// Also print the nef certificate for the witness.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Scan l (or n) and count how often the inequality or interval conditions hold.
    Scan(ScanArgs),
    /// Build or check nef certificates.
    Nef {
        #[command(subcommand)]
        action: NefAction,
    },
    /// Find the best test divisor for t L' - sum b_i E_i and try to certify emptiness.
    Lp(LpArgs),
    /// Thresholds for F_t = t L' - m (E_1 + ... + E_n) on the plane.
    Apps {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Compare plane bounds with 1/sqrt(n+1) and the Pell value d/r.
    Compare {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..), conflicts_with = "n_range")]
        n: Option<u64>,
        /// Inclusive range such as 10..40.
        #[arg(long, value_parser = parse_range)]
        n_range: Option<(u64, u64)>,
        #[command(flatten)]
        out: Output,
    },
    /// Least solution of r^2 - N d^2 = +-1.
    Pell {
        radicand: String,
        /// Require the +1 equation.
        #[arg(long)]
        plus_one: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Fractional digits for decimal renderings.
    #[arg(long, default_value_t = 6)]
    digits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stat {
    Star,
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "J", alias = "j")]
    J,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), required_unless_present = "n_range")]
    n: Option<u64>,
    /// Inclusive l range such as 1..10 (default 1..n).
    #[arg(long, value_parser = parse_range)]
    l_range: Option<(u64, u64)>,
    /// Inclusive n range; prints one summary row per n.
    #[arg(long, value_parser = parse_range, conflicts_with = "n")]
    n_range: Option<(u64, u64)>,
    #[arg(long, value_enum, default_value_t = Stat::Star)]
    stat: Stat,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand, Debug)]
enum NefAction {
    /// Build a certificate from one of the constructions.
    Build(BuildArgs),
    /// Re-check a divisor and curve given as JSON (a file path or - for stdin).
    Check {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    /// Uniform divisor from a smooth curve through r points.
    Nefcor,
    /// Nonuniform divisor with blocks of coefficients.
    Nefcorb,
    /// Uniform divisor from a curve with one point of multiplicity m.
    Nefcorref,
    /// Plane divisor with effective count up to n + d - 1.
    Plusonecor,
    /// Plane divisor from a coprime pencil.
    Adhoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Case {
    A,
    B,
    C,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(value_enum)]
    kind: Construction,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 1)]
    l: u64,
    /// Number of points on the curve (default n).
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    /// Expected case: a (above), b (below), c (equality).
    #[arg(long, value_enum)]
    case: Option<Case>,
    /// Degree coefficient for the equality case.
    #[arg(long, value_parser = parse_rat)]
    t: Option<Rational>,
    #[arg(long)]
    j: Option<u64>,
    #[arg(long, value_parser = parse_rat)]
    d_prime: Option<Rational>,
    #[arg(long)]
    r_prime: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    c: Option<u64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct LpArgs {
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    t: Rational,
    /// Comma-separated nonincreasing multiplicities.
    #[arg(long, required_unless_present = "mults_file", conflicts_with = "mults_file")]
    mults: Option<String>,
    /// File with one multiplicity per line.
    #[arg(long)]
    mults_file: Option<PathBuf>,
    /// Number of points (default: number of multiplicities).
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value_t = 1)]
    l: u64,
    #[arg(long, default_value = "simplex")]
    solver: String,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) => Failure::Precondition(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .or_else(|| s.split_once('-'))
        .ok_or_else(|| format!("expected a range like 1..10, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a == 0 || a > b {
        return Err(format!("empty or non-positive range {s:?}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Epsilon { n, l, refined, witness, out } => cmd_epsilon(n, l, refined, witness, out),
        Command::Scan(args) => cmd_scan(args),
        Command::Nef { action } => match action {
            NefAction::Build(args) => cmd_nef_build(args),
            NefAction::Check { input, out } => cmd_nef_check(&input, out),
        },
        Command::Lp(args) => cmd_lp(args),
        Command::Apps { n, m, out } => cmd_apps(n, m, out),
        Command::Compare { n, n_range, out } => cmd_compare(n, n_range, out),
        Command::Pell { radicand, plus_one, out } => cmd_pell(&radicand, plus_one, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_epsilon(n: u64, l: u64, refined: bool, witness: bool, out: Output) -> CmdResult {
    let b = if refined { seshadri::epsilon_refined(n, l)? } else { seshadri::epsilon_basic(n, l)? };
    let cert = match (&b.witness, witness) {
        (Some(w), true) => Some(if w.tag.is_refined() {
            nef_with_multiplicity(n, l, w.r, w.d, w.m, None)?
        } else {
            nef_uniform(n, l, w.r, w.d, None)?
        }),
        _ => None,
    };
    let decimal = to_decimal(&b.value, out.digits);
    match out.format {
        Format::Table => {
            println!("{b}");
            println!("decimal {decimal}");
            if let Some(c) = &cert {
                println!("certificate {c}");
            }
        }
        Format::Csv => {
            let w = b.witness.as_ref();
            let cell = |f: &dyn Fn(&seshadri::BoundWitness) -> String| w.map(f).unwrap_or_default();
            print_csv(
                &["n", "l", "epsilon_num", "epsilon_den", "decimal", "square_case", "r", "d", "m", "family"],
                &[vec![
                    n.to_string(),
                    l.to_string(),
                    b.value.numer().to_string(),
                    b.value.denom().to_string(),
                    decimal,
                    b.square_case.to_string(),
                    cell(&|w| w.r.to_string()),
                    cell(&|w| w.d.to_string()),
                    cell(&|w| w.m.to_string()),
                    cell(&|w| w.tag.to_string()),
                ]],
            );
        }
        Format::Json => {
            let mut v = serde_json::to_value(&b).expect("serializable");
            v["decimal"] = json!(decimal);
            if let Some(c) = &cert {
                v["certificate"] = serde_json::to_value(c).expect("serializable");
            }
            print_json(&v);
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct ScanLine {
    l: u64,
    epsilon: Rational,
    star: bool,
    in_i: bool,
    in_j: bool,
}

fn cmd_scan(args: ScanArgs) -> CmdResult {
    if let Some((lo, hi)) = args.n_range {
        return scan_over_n(lo.max(2), hi, args.out);
    }
    let n = args.n.expect("required by clap");
    let (lo, hi) = args.l_range.unwrap_or((1, n));
    let mut lines = Vec::new();
    for l in lo..=hi {
        let epsilon = seshadri::epsilon_basic(n, l)?.value;
        lines.push(ScanLine {
            l,
            star: stats::star_holds(n, l)?,
            in_i: stats::interval_i_contains(n, l)?,
            in_j: stats::interval_j_contains(n, l)?,
            epsilon,
        });
    }
    // The full star scan uses the published convention: count l < n over n values.
    let full_star = args.stat == Stat::Star && args.l_range.is_none();
    let (count, total, note) = if full_star {
        let report = stats::star_fraction(n, false)?;
        let note = format!(
            "l = n counted separately ({}); including it: {}%",
            yes_no(report.holds_at_n),
            to_decimal(&report.inclusive_percentage(), 1)
        );
        (report.holds_count, report.total_l, Some(note))
    } else {
        let hit = |s: &ScanLine| match args.stat {
            Stat::Star => s.star,
            Stat::I => s.in_i,
            Stat::J => s.in_j,
        };
        (lines.iter().filter(|s| hit(s)).count() as u64, lines.len() as u64, None)
    };
    let pct = Rational::new((100 * count).into(), total.into());
    let summary = format!("{}% ({count}/{total}) exact {pct}%", to_decimal(&pct, 1));
    let header = ["n", "l", "epsilon_num", "epsilon_den", "star", "in_I", "in_J"];
    let rows: Vec<Vec<String>> = lines
        .iter()
        .map(|s| {
            vec![
                n.to_string(),
                s.l.to_string(),
                s.epsilon.numer().to_string(),
                s.epsilon.denom().to_string(),
                s.star.to_string(),
                s.in_i.to_string(),
                s.in_j.to_string(),
            ]
        })
        .collect();
    let stat_name = match args.stat {
        Stat::Star => "star",
        Stat::I => "I",
        Stat::J => "J",
    };
    match args.out.format {
        Format::Table => {
            print_table(&header, &rows);
            println!("{stat_name}: {summary}");
            if let Some(note) = note {
                println!("{note}");
            }
        }
        Format::Csv => {
            print_csv(&header, &rows);
            eprintln!("{stat_name}: {summary}");
        }
        Format::Json => {
            let rows: Vec<Value> = lines
                .iter()
                .map(|s| json!({"l": s.l, "epsilon": s.epsilon.to_string(), "star": s.star, "in_I": s.in_i, "in_J": s.in_j}))
                .collect();
            print_json(&json!({
                "n": n,
                "stat": stat_name,
                "count": count,
                "total": total,
                "percentage": pct.to_string(),
                "percentage_decimal": to_decimal(&pct, 1),
                "note": note,
                "rows": rows,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn scan_over_n(lo: u64, hi: u64, out: Output) -> CmdResult {
    let mut reports = Vec::new();
    for n in lo..=hi {
        reports.push(stats::star_fraction(n, false)?);
    }
    let header = ["n", "holds_count", "total_l", "percentage", "percentage_decimal"];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.holds_count.to_string(),
                r.total_l.to_string(),
                r.percentage.to_string(),
                to_decimal(&r.percentage, 1),
            ]
        })
        .collect();
    let min = reports.iter().min_by(|a, b| a.percentage.cmp(&b.percentage)).expect("nonempty");
    let max = reports.iter().max_by(|a, b| a.percentage.cmp(&b.percentage).then(b.n.cmp(&a.n))).expect("nonempty");
    let summary = format!(
        "min {}% at n={}, max {}% at n={}",
        to_decimal(&min.percentage, 1),
        min.n,
        to_decimal(&max.percentage, 1),
        max.n
    );
    match out.format {
        Format::Table => {
            print_table(&header, &rows);
            println!("{summary}");
        }
        Format::Csv => {
            print_csv(&header, &rows);
            eprintln!("{summary}");
        }
        Format::Json => print_json(&json!({
            "reports": serde_json::to_value(&reports).expect("serializable"),
            "min_n": min.n,
            "max_n": max.n,
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn need(v: Option<u64>, name: &str) -> Result<u64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this construction")))
}

fn check_case(case: Option<Case>, r_eff: u64, n: u64, d: u64, l: u64) -> Result<(), Failure> {
    let Some(case) = case else { return Ok(()) };
    let actual = Regime::of(r_eff, n, d, l);
    let (expected, rel) = match case {
        Case::A => (Regime::Above, ">"),
        Case::B => (Regime::Below, "<"),
        Case::C => (Regime::Equal, "="),
    };
    if actual != expected {
        return Err(Failure::Precondition(format!(
            "case {case:?} requires {r_eff}^2 {rel} n d^2 l = {}, but {r_eff}^2 = {}",
            n * d * d * l,
            r_eff * r_eff
        )));
    }
    Ok(())
}

fn cmd_nef_build(args: BuildArgs) -> CmdResult {
    let n = args.n;
    let l = args.l;
    let cert = match args.kind {
        Construction::Nefcor => {
            let (r, d) = (args.r.unwrap_or(n), need(args.d, "d")?);
            check_case(args.case, r, n, d, l)?;
            nef_uniform(n, l, r, d, args.t.as_ref())?
        }
        Construction::Nefcorb => {
            let (r, d) = (args.r.unwrap_or(n), need(args.d, "d")?);
            nef_truncated(n, l, r, d, args.j, args.d_prime.as_ref())?
        }
        Construction::Nefcorref => {
            let (r, d, m) = (args.r.unwrap_or(n), need(args.d, "d")?, need(args.m, "m")?);
            let m_cap = seshadri::bounds::max_multiplicity(d);
            if m > m_cap {
                return Err(Failure::Precondition(format!("m exceeds f(d): m = {m}, f({d}) = {m_cap}")));
            }
            check_case(args.case, r + m - 1, n, d, l)?;
            nef_with_multiplicity(n, l, r, d, m, args.t.as_ref())?
        }
        Construction::Plusonecor => {
            if l != 1 {
                return Err(Failure::Precondition("this construction is for the plane (l = 1)".into()));
            }
            nef_plane_extended(n, need(args.d, "d")?, need(args.r_prime, "r-prime")?)?
        }
        Construction::Adhoc => {
            if l != 1 {
                return Err(Failure::Precondition("this construction is for the plane (l = 1)".into()));
            }
            nef_coprime_pencil(n, need(args.a, "a")?, need(args.b, "b")?, need(args.c, "c")?, need(args.r_prime, "r-prime")?)?
        }
    };
    emit_certificate(&cert, args.out)
}

fn cmd_nef_check(input: &PathBuf, out: Output) -> CmdResult {
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| Failure::Usage(format!("reading {}: {e}", input.display())))?
    };
    let parsed: CertificateInput =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid certificate JSON: {e}")))?;
    let cert = parsed.check()?;
    emit_certificate(&cert, out)
}

fn emit_certificate(cert: &NefCertificate, out: Output) -> CmdResult {
    let checks = [
        ("ordered", cert.checks.ordered),
        ("degree", cert.checks.degree),
        ("self_intersection", cert.checks.self_intersection),
        ("partial_sums", cert.checks.partial_sums),
        ("total_sum", cert.checks.total_sum),
    ];
    match out.format {
        Format::Table => {
            let mut rows = vec![
                ("divisor".to_string(), cert.divisor.to_string()),
                ("curve".to_string(), format!("d={} mults={}", cert.curve.d, runs(&cert.curve.mults))),
            ];
            for (name, ok) in checks {
                rows.push((name.to_string(), if ok { "pass" } else { "FAIL" }.to_string()));
            }
            rows.push(("valid".into(), yes_no(cert.valid).into()));
            rows.push(("provenance".into(), cert.provenance.clone()));
            if let Some(v) = cert.bound_value() {
                rows.push(("bound".into(), exact(&v, out.digits)));
            }
            rows.push(("self-pairing".into(), exact(&cert.divisor.self_pairing(), out.digits)));
            for f in &cert.flags {
                rows.push(("assumes".into(), f.clone()));
            }
            print_pairs(&rows);
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = checks.iter().map(|(k, v)| vec![k.to_string(), v.to_string()]).collect();
            print_csv(&["check", "passed"], &rows);
        }
        Format::Json => print_json(&serde_json::to_value(cert).expect("serializable")),
    }
    Ok(if cert.valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn read_mults(args: &LpArgs) -> Result<Vec<u64>, Failure> {
    let parse = |tok: &str| -> Result<u64, Failure> {
        tok.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad multiplicity {tok:?}")))
    };
    if let Some(inline) = &args.mults {
        return inline.split(',').filter(|t| !t.trim().is_empty()).map(parse).collect();
    }
    let path = args.mults_file.as_ref().expect("required by clap");
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|t| !t.is_empty() && !t.starts_with('#'))
        .map(parse)
        .collect()
}

fn cmd_lp(args: LpArgs) -> CmdResult {
    let solver: Solver = args.solver.parse()?;
    let b = read_mults(&args)?;
    let target = TargetSystem::new(args.t.clone(), b, args.n, args.l)?;
    let v = certify_empty(&target, solver)?;
    match args.out.format {
        Format::Table => print_pairs(&[
            ("target".into(), target.class().to_string()),
            ("empty certified".into(), yes_no(v.empty_certified).into()),
            ("threshold".into(), exact(&v.threshold, args.out.digits)),
            ("attained".into(), yes_no(v.attained).into()),
            ("test curve".into(), format!("d={} through r={} points", v.d, v.r)),
            ("test divisor".into(), v.best_test_divisor.divisor.to_string()),
            ("pairing".into(), exact(&v.pairing, args.out.digits)),
        ]),
        Format::Csv => print_csv(
            &["t", "threshold_num", "threshold_den", "empty_certified", "d", "r"],
            &[vec![
                target.t.to_string(),
                v.threshold.numer().to_string(),
                v.threshold.denom().to_string(),
                v.empty_certified.to_string(),
                v.d.to_string(),
                v.r.to_string(),
            ]],
        ),
        Format::Json => print_json(&serde_json::to_value(&v).expect("serializable")),
    }
    Ok(if v.empty_certified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_apps(n: u64, m: u64, out: Output) -> CmdResult {
    let r = apps::threshold_report(n, m)?;
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
    let regularity = match (r.regularity_a, r.regularity_b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, _) => a,
    };
    let mut rows = vec![
        ("epsilon".to_string(), exact(&r.epsilon, out.digits)),
        ("effectivity".to_string(), exact(&r.effectivity_lb, out.digits)),
        ("ampleness".to_string(), exact(&r.ampleness_lb, out.digits)),
        (
            "regularity (a)".to_string(),
            format!("{}{}", opt(r.regularity_a), if r.regularity_sharp { " (sharp)" } else { "" }),
        ),
        ("regularity (b)".to_string(), opt(r.regularity_b)),
        ("regularity".to_string(), opt(regularity)),
        ("free".to_string(), opt(r.freeness_lb)),
        ("very ample".to_string(), opt(r.very_ample_lb)),
    ];
    match out.format {
        Format::Table => {
            for note in &r.notes {
                rows.push(("note".into(), note.clone()));
            }
            print_pairs(&rows);
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows.into_iter().map(|(k, v)| vec![k, v.replace(',', ";")]).collect();
            print_csv(&["quantity", "value"], &rows);
        }
        Format::Json => {
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["regularity"] = json!(regularity);
            print_json(&v);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(n: Option<u64>, n_range: Option<(u64, u64)>, out: Output) -> CmdResult {
    let (lo, hi) = match (n, n_range) {
        (Some(n), _) => (n, n),
        (None, Some((a, b))) => (a.max(2), b),
        (None, None) => return Err(Failure::Usage("give --n or --n-range".into())),
    };
    let mut reports: Vec<ReferenceRow> = Vec::new();
    for n in lo..=hi {
        reports.push(compare_references(n)?);
    }
    let header = ["n", "epsilon", "refined", "vs_1/sqrt(n+1)", "refined_vs_basic", "n+-1_square", "pell_r", "pell_d", "pell_value", "pell_r<=n"];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.epsilon.to_string(),
                r.refined.to_string(),
                r.versus_inverse_sqrt.to_string(),
                r.refined_versus_basic.to_string(),
                r.n_pm1_square.to_string(),
                r.pell.as_ref().map_or(String::new(), |p| p.r.to_string()),
                r.pell.as_ref().map_or(String::new(), |p| p.d.to_string()),
                r.pell_value.as_ref().map_or(String::new(), |v| v.to_string()),
                r.pell_within_n.to_string(),
            ]
        })
        .collect();
    match out.format {
        Format::Table => print_table(&header, &rows),
        Format::Csv => print_csv(&header, &rows),
        Format::Json => print_json(&serde_json::to_value(&reports).expect("serializable")),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_pell(radicand: &str, plus_one: bool, out: Output) -> CmdResult {
    let radicand: seshadri::Integer =
        radicand.trim().parse().map_err(|_| Failure::Usage(format!("bad integer {radicand:?}")))?;
    let sol = if plus_one { pell_plus_one(&radicand)? } else { pell_fundamental(&radicand)? };
    match out.format {
        Format::Table => println!("{sol}"),
        Format::Csv => print_csv(&["N", "r", "d", "rhs"], &[vec![radicand.to_string(), sol.r.to_string(), sol.d.to_string(), sol.rhs.to_string()]]),
        Format::Json => {
            let mut v = serde_json::to_value(&sol).expect("serializable");
            v["N"] = json!(radicand.to_string());
            print_json(&v);
        }
    }
    Ok(ExitCode::SUCCESS)
}
