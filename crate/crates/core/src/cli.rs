//! Command-line front end. Data goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad input,
//! 3 unsupported topology, 4 resource budget exceeded.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::enumerate::{enumerate_hypertrees, enumerate_pm_hypertrees, enumerate_unicyclic};
use crate::error::{Error, Result};
use crate::estrada::{compare_ee, default_depth, estrada_truncated, EstradaReport};
use crate::hypergraph::Hypergraph;
use crate::oracle::{matrix_power_trace, trace_bruteforce, Budget, DEFAULT_BUDGET};
use crate::rational::ExactRational;
use crate::trace::trace_report;
use crate::verify::{
    bundled_instances, check_all, check_extremal_theorem, check_structure_lemma, girth_sweep, parse_instances,
    ExtremalFamily, Status, StructureLemma,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "hypertrace", version, about = "Exact traces and Estrada indices of uniform hypergraphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tr_d from the closed forms.
    Trace {
        /// Hypergraph JSON file, or `-` for stdin.
        input: PathBuf,
        #[command(flatten)]
        range: DRange,
        /// Include the nonzero per-shape contributions.
        #[arg(long)]
        terms: bool,
    },
    /// Tr_d by brute force (any hypergraph) or by matrix powers (graphs).
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        range: DRange,
        #[arg(long, value_enum, default_value_t = Method::Bruteforce)]
        method: Method,
        /// Maximum number of rooted edge multisets to visit.
        #[arg(long, env = "HYPERTRACE_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        max_seconds: Option<f64>,
    },
    /// Certified interval for the Estrada index.
    Estrada {
        input: PathBuf,
        /// Truncation depth D (default: smallest adequate multiple of m).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Certified comparison of two Estrada indices.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// List a family up to isomorphism.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        #[arg(long)]
        m: usize,
        /// Edges (hypertrees), matching size (pm-hypertrees).
        #[arg(long)]
        k: Option<usize>,
        /// Edges (unicyclic).
        #[arg(long)]
        z: Option<usize>,
        /// Girth (unicyclic).
        #[arg(long)]
        girth: Option<usize>,
    },
    /// Run lemma, theorem and structure checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct DRange {
    /// A single d.
    #[arg(long)]
    pub d: Option<usize>,
    /// Every d from 0 to this value.
    #[arg(long)]
    pub d_max: Option<usize>,
}

impl DRange {
    fn values(&self) -> Vec<usize> {
        match (self.d, self.d_max) {
            (Some(d), _) => vec![d],
            (None, Some(max)) => (0..=max).collect(),
            (None, None) => unreachable!("clap requires one of --d, --d-max"),
        }
    }

    fn single(&self) -> bool {
        self.d.is_some()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bruteforce,
    Matrix,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Hypertrees,
    PmHypertrees,
    Unicyclic,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "target")]
struct VerifyTarget {
    /// Lemma id: 3.3, 4.4, 5.1, 6.2, 6.2(1), 6.2(2), 6.3, 6.4, 6.5.
    #[arg(long)]
    lemma: Option<String>,
    /// Every lemma instance.
    #[arg(long)]
    all_lemmas: bool,
    /// 5.3 (needs --m, --k) or 6.6 (needs --m, --z).
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long, value_enum)]
    structure: Option<StructureArg>,
    /// 6.7: exploratory sweep over all girths (needs --m, --z).
    #[arg(long)]
    problem: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    target: VerifyTarget,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    z: Option<usize>,
    /// Evaluate lemmas at these d (comma separated).
    #[arg(long, value_delimiter = ',')]
    d: Option<Vec<usize>>,
    /// Estrada truncation depth for theorem checks.
    #[arg(long)]
    depth: Option<usize>,
    /// Lemma instances (JSON array) to use instead of the bundled library.
    #[arg(long)]
    instances: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StructureArg {
    TreeRoot,
    CoredMultiplicity,
    PmDecomposition,
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let mut buffer = Vec::new();
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buffer)),
            Err(e) => Err(Error::Input(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli, &mut buffer),
    };
    let _ = out.write_all(&buffer);
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Construction(_) | Error::Instance { .. } => EXIT_INPUT,
        Error::Unsupported { .. } => EXIT_UNSUPPORTED,
        Error::Resource { .. } => EXIT_RESOURCE,
    }
}

fn read_hypergraph(path: &PathBuf) -> Result<Hypergraph> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_text(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialise");
    writeln!(out, "{text}").map_err(|e| Error::Input(format!("stdout: {e}")))
}

fn emit_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let io = |e: io::Error| Error::Input(format!("stdout: {e}"));
    writeln!(out, "{}", header.join(",")).map_err(io)?;
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| csv_cell(c)).collect();
        writeln!(out, "{}", cells.join(",")).map_err(io)?;
    }
    Ok(())
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

#[derive(Serialize)]
struct TraceRow {
    d: usize,
    trace: ExactRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<crate::trace::ShapeTerm>>,
}

fn emit_traces(cli: &Cli, out: &mut dyn Write, rows: Vec<TraceRow>, single: bool) -> Result<()> {
    match cli.format {
        Format::Json if single => emit_json(out, &rows[0]),
        Format::Json => emit_json(out, &rows),
        Format::Csv => {
            let table: Vec<Vec<String>> = rows.iter().map(|r| vec![r.d.to_string(), r.trace.to_string()]).collect();
            emit_csv(out, &["d", "trace"], &table)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<i32> {
    match &cli.command {
        Command::Trace { input, range, terms } => {
            let h = read_hypergraph(input)?;
            let rows = range
                .values()
                .into_iter()
                .map(|d| {
                    let r = trace_report(&h, d, *terms)?;
                    Ok(TraceRow {
                        d,
                        trace: r.trace,
                        terms: r.terms,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            emit_traces(cli, out, rows, range.single())?;
        }
        Command::Oracle {
            input,
            range,
            method,
            budget,
            max_seconds,
        } => {
            let h = read_hypergraph(input)?;
            if *budget == 0 {
                return Err(Error::input("budget must be positive"));
            }
            let deadline = match max_seconds {
                Some(s) if !(s.is_finite() && *s > 0.0) => return Err(Error::input("--max-seconds must be positive")),
                Some(s) => Some(Instant::now() + Duration::from_secs_f64(*s)),
                None => None,
            };
            let budget = Budget {
                max_multisets: *budget,
                deadline,
            };
            let rows = range
                .values()
                .into_iter()
                .map(|d| {
                    let trace = match method {
                        Method::Bruteforce => trace_bruteforce(&h, d, &budget)?,
                        Method::Matrix => ExactRational::from_integer(matrix_power_trace(&h, d)?),
                    };
                    Ok(TraceRow { d, trace, terms: None })
                })
                .collect::<Result<Vec<_>>>()?;
            emit_traces(cli, out, rows, range.single())?;
        }
        Command::Estrada { input, depth } => {
            let h = read_hypergraph(input)?;
            let depth = depth.unwrap_or_else(|| default_depth(&h));
            let report = EstradaReport::from(&estrada_truncated(&h, depth)?);
            match cli.format {
                Format::Json => emit_json(out, &report)?,
                Format::Csv => emit_csv(
                    out,
                    &["D", "lower", "upper", "exact_lower", "exact_upper"],
                    &[vec![
                        report.depth.to_string(),
                        report.lower.clone(),
                        report.upper.clone(),
                        report.exact_lower.to_string(),
                        report.exact_upper.to_string(),
                    ]],
                )?,
            }
        }
        Command::Compare { a, b, depth } => {
            let (ha, hb) = (read_hypergraph(a)?, read_hypergraph(b)?);
            let c = compare_ee(&ha, &hb, *depth)?;
            let (ra, rb) = (EstradaReport::from(&c.a), EstradaReport::from(&c.b));
            match cli.format {
                Format::Json => emit_json(out, &json!({ "verdict": c.verdict, "a": ra, "b": rb }))?,
                Format::Csv => emit_csv(
                    out,
                    &["verdict", "D", "a_lower", "a_upper", "b_lower", "b_upper"],
                    &[vec![
                        serde_json::to_value(c.verdict).unwrap().as_str().unwrap().to_string(),
                        ra.depth.to_string(),
                        ra.lower,
                        ra.upper,
                        rb.lower,
                        rb.upper,
                    ]],
                )?,
            }
        }
        Command::Enumerate { kind, m, k, z, girth } => {
            let need = |v: &Option<usize>, name: &str| v.ok_or_else(|| Error::input(format!("--{name} is required")));
            if *m < 2 {
                return Err(Error::input("m must be at least 2"));
            }
            let family = match kind {
                EnumKind::Hypertrees => enumerate_hypertrees(*m, need(k, "k")?),
                EnumKind::PmHypertrees => enumerate_pm_hypertrees(*m, need(k, "k")?),
                EnumKind::Unicyclic => enumerate_unicyclic(*m, need(z, "z")?, need(girth, "girth")?)?,
            };
            match cli.format {
                Format::Json => emit_json(out, &family)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = family
                        .iter()
                        .enumerate()
                        .map(|(i, h)| vec![i.to_string(), h.m().to_string(), h.n().to_string(), serde_json::to_string(h.edges()).unwrap()])
                        .collect();
                    emit_csv(out, &["index", "m", "n", "edges"], &rows)?;
                }
            }
        }
        Command::Verify(args) => return verify(cli, args, out),
    }
    Ok(EXIT_OK)
}

fn status_code(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn verify(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::input(format!("--{name} is required")));
    let t = &args.target;
    if t.lemma.is_some() || t.all_lemmas {
        let library = match &args.instances {
            Some(p) => parse_instances(&read_text(p)?)?,
            None => bundled_instances(),
        };
        let chosen: Vec<_> = library
            .into_iter()
            .filter(|i| t.lemma.as_deref().is_none_or(|q| i.matches(q)))
            .filter(|i| args.m.is_none_or(|m| i.m == m))
            .collect();
        if chosen.is_empty() {
            return Err(Error::input("no lemma instance matches the selection"));
        }
        let reports = check_all(&chosen, args.d.as_deref())?;
        let pass = reports.iter().all(|r| r.status == Status::Pass);
        match cli.format {
            Format::Json => emit_json(out, &json!({ "status": if pass { "PASS" } else { "FAIL" }, "reports": reports }))?,
            Format::Csv => {
                let rows: Vec<Vec<String>> = reports
                    .iter()
                    .flat_map(|r| {
                        r.rows.iter().map(move |row| {
                            vec![
                                r.lemma.to_string(),
                                r.name.clone(),
                                row.d.to_string(),
                                row.left.to_string(),
                                row.right.to_string(),
                                format!("{:?}", row.expected),
                                format!("{:?}", row.observed),
                                row.ok.to_string(),
                            ]
                        })
                    })
                    .collect();
                emit_csv(out, &["lemma", "instance", "d", "left", "right", "expected", "observed", "ok"], &rows)?;
            }
        }
        return Ok(status_code(pass));
    }
    if let Some(th) = &t.theorem {
        let which = match th.as_str() {
            "5.3" => ExtremalFamily::PmHypertrees {
                m: need(args.m, "m")?,
                k: need(args.k, "k")?,
            },
            "6.6" => ExtremalFamily::UnicyclicGirth3 {
                m: need(args.m, "m")?,
                z: need(args.z, "z")?,
            },
            other => return Err(Error::input(format!("unknown theorem {other}; expected 5.3 or 6.6"))),
        };
        let report = check_extremal_theorem(which, args.depth)?;
        emit_json(out, &report)?;
        return Ok(status_code(report.status == Status::Pass));
    }
    if let Some(s) = t.structure {
        let which = match s {
            StructureArg::TreeRoot => StructureLemma::TreeRoot,
            StructureArg::CoredMultiplicity => StructureLemma::CoredMultiplicity,
            StructureArg::PmDecomposition => StructureLemma::PmDecomposition,
        };
        let report = check_structure_lemma(which);
        emit_json(out, &report)?;
        return Ok(status_code(report.status == Status::Pass));
    }
    if let Some(p) = &t.problem {
        if p != "6.7" {
            return Err(Error::input(format!("unknown problem {p}; expected 6.7")));
        }
        let sweep = girth_sweep(need(args.m, "m")?, need(args.z, "z")?, args.depth)?;
        emit_json(out, &sweep)?;
        return Ok(EXIT_OK);
    }
    unreachable!("clap requires one verify target")
}
