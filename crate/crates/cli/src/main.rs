use clap::{Args, Parser, Subcommand};
use dsc_core::clifford::CliffordSystem;
use dsc_core::constructor::{
    choose_dimensions, construct, read_certificate, verify_certificate, write_certificate,
    ConstructionCertificate, VerificationReport,
};
use dsc_core::format::{parse_clifford_file, parse_rees_file, parse_table_file, ReesFile, TableFile};
use dsc_core::rees::{SubgroupLabel, TripleCensus};
use dsc_core::relations::{bell, enumerate_partitions, Partition};
use dsc_core::semigroup::DscReport;
use dsc_core::{Error, ExactRational, Limits};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exact DSC coefficients of finite semigroups.
#[derive(Parser)]
#[command(name = "dsc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Cross-check structural results by enumerating relations.
    #[arg(long)]
    brute_force: bool,
    /// Print the enumerated objects as well as the totals.
    #[arg(long)]
    list: bool,
    /// Also write the result as `key=value` lines to this file.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Largest semigroup order for brute-force enumeration.
    #[arg(long, value_name = "N")]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Count congruences and diagonal subsemigroups of a group or semigroup
    /// table.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Census of linked triples for a Rees matrix semigroup.
    Rees {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build and verify a Rees matrix semigroup with a given coefficient.
    Construct {
        /// Target coefficient as `β/γ`.
        #[arg(long, required_unless_present = "verify_only")]
        alpha: Option<String>,
        #[arg(long, requires = "b")]
        a: Option<usize>,
        #[arg(long, requires = "a")]
        b: Option<usize>,
        /// Write the certificate here instead of standard output.
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
        /// Re-check an existing certificate file.
        #[arg(long, value_name = "PATH", conflicts_with_all = ["alpha", "a", "b", "output"])]
        verify_only: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the coefficient of a Clifford semigroup with that of its
    /// semilattice.
    Clifford {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Bell number B(n).
    Bell {
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    /// Exit code 1.
    Domain(String),
    /// Exit code 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Validation(_) => Failure::Input(e.to_string()),
            Error::Cap { .. }
            | Error::Domain(_)
            | Error::Contract(_)
            | Error::Shape(_)
            | Error::Internal(_) => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn limits(common: &Common) -> Limits {
    let mut l = Limits::default();
    if let Some(cap) = common.cap {
        l.brute_force_order = cap;
    }
    l
}

fn partition_text(p: &Partition) -> String {
    p.blocks()
        .iter()
        .map(|b| {
            let items: Vec<String> = b.iter().map(usize::to_string).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect()
}

fn dsc_line(r: &DscReport) -> String {
    format!("congruences={} diagonal={} chi={}", r.congruence_count, r.diagonal_count, r.chi)
}

/// Prints `text` and, when asked, mirrors the `key=value` tokens of its
/// summary lines into the report file.
fn finish(common: &Common, text: String, report: Vec<(String, String)>) -> Outcome {
    if let Some(path) = &common.report {
        let mut out = String::new();
        for (k, v) in &report {
            writeln!(out, "{k}={v}").unwrap();
        }
        write(path, &out)?;
    }
    Ok(text)
}

fn analyze(path: &Path, common: &Common) -> Outcome {
    let file = parse_table_file(&read(path)?)?;
    let lim = limits(common);
    let s = file.semigroup();
    let kind = match file {
        TableFile::Group(_) => "group",
        TableFile::Semigroup(_) => "semigroup",
    };
    let mut out = String::new();
    if common.list {
        for rel in s.congruences(&lim)? {
            writeln!(out, "congruence {rel}").unwrap();
        }
        for rel in s.diagonal_subsemigroups(&lim)? {
            writeln!(out, "diagonal {rel}").unwrap();
        }
    }
    let report = s.dsc_coefficient(&lim)?;
    writeln!(out, "{}", dsc_line(&report)).unwrap();
    let keys = vec![
        ("kind".into(), kind.into()),
        ("order".into(), s.order().to_string()),
        ("congruences".into(), report.congruence_count.to_string()),
        ("diagonal".into(), report.diagonal_count.to_string()),
        ("chi".into(), report.chi.to_string()),
    ];
    finish(common, out, keys)
}

fn census_lines(census: &TripleCensus, out: &mut String) {
    for row in census.rows() {
        let label = match &row.label {
            SubgroupLabel::Concrete(n) => {
                let items: Vec<String> = n.elements().iter().map(usize::to_string).collect();
                format!("N={{{}}}", items.join(","))
            }
            SubgroupLabel::Chain { from, to } => format!("m={from}..{to}"),
        };
        writeln!(
            out,
            "subgroup {label} count={} sigma={} tau={} e_I={} e_L={} r_I={} r_L={}",
            row.multiplicity,
            partition_text(&row.sigma),
            partition_text(&row.tau),
            row.e_i,
            row.e_lambda,
            row.r_i,
            row.r_lambda
        )
        .unwrap();
    }
}

fn rees(path: &Path, common: &Common) -> Outcome {
    let file = parse_rees_file(&read(path)?)?;
    let lim = limits(common);
    let mut out = String::new();
    let (report, concrete) = match &file {
        ReesFile::Concrete(spec) => {
            let census = spec.triple_census(&lim)?;
            census_lines(&census, &mut out);
            (census.report()?, Some(spec.clone()))
        }
        ReesFile::Cyclic(spec) => {
            let census = spec.triple_census()?;
            census_lines(&census, &mut out);
            let concrete = if common.brute_force { Some(spec.to_concrete(&lim)?) } else { None };
            (census.report()?, concrete)
        }
    };
    if common.list {
        let spec = concrete
            .as_ref()
            .ok_or_else(|| Failure::Domain("--list needs an explicit group; add --brute-force for a cyclic spec".into()))?;
        for t in spec.linked_reflexive_triples(&lim)? {
            let kind = match t.kind {
                dsc_core::rees::TripleKind::Equivalence => "equivalence",
                dsc_core::rees::TripleKind::Reflexive => "reflexive",
            };
            writeln!(out, "triple {kind} N={:?} S={} T={}", t.normal.elements(), t.on_i, t.on_lambda).unwrap();
        }
    }
    writeln!(out, "{}", dsc_line(&report)).unwrap();
    let mut keys = vec![
        ("congruences".into(), report.congruence_count.to_string()),
        ("diagonal".into(), report.diagonal_count.to_string()),
        ("chi".into(), report.chi.to_string()),
    ];
    if common.brute_force {
        let spec = concrete.expect("concrete spec under --brute-force");
        let brute = spec.materialize(&lim)?.dsc_coefficient(&lim)?;
        let verdict = if brute == report { "agree" } else { "disagree" };
        writeln!(out, "brute_force={verdict} {}", dsc_line(&brute)).unwrap();
        keys.push(("brute_force".into(), verdict.into()));
        if brute != report {
            finish(common, out.clone(), keys)?;
            return Err(Failure::Domain(format!("{out}brute force disagrees with the census")));
        }
    }
    finish(common, out, keys)
}

fn certificate_keys(cert: &ConstructionCertificate) -> Vec<(String, String)> {
    vec![
        ("alpha".into(), cert.alpha.to_string()),
        ("a".into(), cert.a.to_string()),
        ("b".into(), cert.b.to_string()),
        ("c".into(), cert.c.to_string()),
        ("d".into(), cert.d.to_string()),
        ("k".into(), cert.k.to_string()),
        ("r".into(), cert.r.to_string()),
        ("p".into(), cert.p.to_string()),
        ("chi".into(), cert.chi.to_string()),
    ]
}

fn verification_text(report: &VerificationReport, out: &mut String) {
    for c in &report.checks {
        let status = match c.passed {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "skip",
        };
        if c.witness.is_empty() {
            writeln!(out, "check {}={status}", c.name).unwrap();
        } else {
            writeln!(out, "check {}={status} ({})", c.name, c.witness).unwrap();
        }
    }
    let verdict = if report.all_passed() { "pass" } else { "fail" };
    writeln!(out, "verified={verdict}").unwrap();
}

fn construct_cmd(
    alpha: Option<&str>,
    dims: Option<(usize, usize)>,
    output: Option<&Path>,
    verify_only: Option<&Path>,
    common: &Common,
) -> Outcome {
    let lim = limits(common);
    let mut out = String::new();
    if let Some(path) = verify_only {
        let cert = read_certificate(&read(path)?)?;
        let report = verify_certificate(&cert, &lim);
        verification_text(&report, &mut out);
        let mut keys = certificate_keys(&cert);
        keys.push(("verified".into(), report.all_passed().to_string()));
        finish(common, out.clone(), keys)?;
        return if report.all_passed() { Ok(out) } else { Err(Failure::Domain(out)) };
    }
    let alpha: ExactRational = alpha
        .expect("clap requires --alpha")
        .parse()
        .map_err(|_| Failure::Input("--alpha must be a rational `β/γ`".into()))?;
    if alpha.is_one() {
        writeln!(out, "alpha=1/1: every finite group has chi=1/1, e.g. the trivial group").unwrap();
        return finish(common, out, vec![("alpha".into(), alpha.to_string()), ("group".into(), "trivial".into())]);
    }
    let (a, b) = match dims {
        Some(d) => d,
        None => choose_dimensions(&alpha)?,
    };
    let cert = construct(&alpha, a, b)?;
    let report = verify_certificate(&cert, &lim);
    let summary: Vec<String> = certificate_keys(&cert).iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "{}", summary.join(" ")).unwrap();
    verification_text(&report, &mut out);
    if !report.all_passed() {
        return Err(Failure::Domain(out));
    }
    let text = write_certificate(&cert)?;
    match output {
        Some(path) => write(path, &text)?,
        None => out.push_str(&text),
    }
    let mut keys = certificate_keys(&cert);
    keys.push(("verified".into(), "true".into()));
    finish(common, out, keys)
}

fn clifford(path: &Path, common: &Common) -> Outcome {
    let sys: CliffordSystem = parse_clifford_file(&read(path)?)?;
    let lim = limits(common);
    let mut out = String::new();
    if common.list {
        for k in sys.enumerate_kernels(&lim)? {
            let parts: Vec<String> = k.subgroups.iter().map(|n| format!("{:?}", n.elements())).collect();
            writeln!(out, "kernel {}", parts.join(" ")).unwrap();
        }
        for pair in sys.congruence_pairs(&lim)? {
            let parts: Vec<String> = pair.kernel.subgroups.iter().map(|n| format!("{:?}", n.elements())).collect();
            writeln!(out, "congruence_pair {} trace={}", parts.join(" "), pair.trace).unwrap();
        }
    }
    let r = sys.chi_bound_report(&lim)?;
    let bound = if r.tight { "tight" } else { "strict" };
    let pair_bound = if r.pair_bound_holds { "holds" } else { "fails" };
    writeln!(
        out,
        "chi_S={} chi_Y={} bound={bound} K={} cong_Y={} diag_Y={} cong_S={} diag_S={} pair_bound={pair_bound}",
        r.chi_s(),
        r.chi_y(),
        r.kernel_count,
        r.semilattice.congruence_count,
        r.semilattice.diagonal_count,
        r.semigroup.congruence_count,
        r.semigroup.diagonal_count,
    )
    .unwrap();
    let keys = vec![
        ("chi_S".into(), r.chi_s().to_string()),
        ("chi_Y".into(), r.chi_y().to_string()),
        ("bound".into(), bound.into()),
        ("K".into(), r.kernel_count.to_string()),
        ("cong_Y".into(), r.semilattice.congruence_count.to_string()),
        ("diag_Y".into(), r.semilattice.diagonal_count.to_string()),
        ("cong_S".into(), r.semigroup.congruence_count.to_string()),
        ("diag_S".into(), r.semigroup.diagonal_count.to_string()),
        ("pair_bound".into(), pair_bound.into()),
    ];
    finish(common, out, keys)
}

fn bell_cmd(n: usize, common: &Common) -> Outcome {
    let value = bell(n)?;
    let mut out = String::new();
    if common.list {
        let cap = common.cap.unwrap_or(Limits::default().brute_force_order);
        if n > cap {
            return Err(Error::Cap {
                what: "ground set for listing partitions",
                size: n,
                cap,
                hint: "",
            }
            .into());
        }
        for p in enumerate_partitions(n)? {
            writeln!(out, "{}", partition_text(&p)).unwrap();
        }
    }
    writeln!(out, "bell={value}").unwrap();
    finish(common, out, vec![("n".into(), n.to_string()), ("bell".into(), value.to_string())])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { path, common } => analyze(path, common),
        Command::Rees { path, common } => rees(path, common),
        Command::Construct {
            alpha,
            a,
            b,
            output,
            verify_only,
            common,
        } => construct_cmd(
            alpha.as_deref(),
            a.zip(*b),
            output.as_deref(),
            verify_only.as_deref(),
            common,
        ),
        Command::Clifford { path, common } => clifford(path, common),
        Command::Bell { n, common } => bell_cmd(*n, common),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(2)
        }
    }
}
