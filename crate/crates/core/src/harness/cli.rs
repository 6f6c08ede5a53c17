use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use super::catalog::Catalog;
use super::report::{ReportBundle, VerificationReport};
use super::suites::{self, Config, SUITES};
use crate::cay::{format_table, parse_group, parse_index_list, parse_loop};
use crate::congruence::{derived_series_loop, is_solvable_loop};
use crate::error::Error;
use crate::group::{FiniteGroup, DEFAULT_SUBGROUP_ENUM_CAP};
use crate::rightloop::RightLoop;
use crate::transversal::CosetSpace;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "loopcheck",
    version,
    about = "Verify solvability results for right transversals of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a verification suite over the group catalog.
    Verify(VerifyArgs),
    /// Inspect a group given as a `.cay` Cayley table.
    Group {
        #[arg(value_enum)]
        action: GroupAction,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Inspect a right loop given as a `.cay` table.
    Loop {
        #[arg(value_enum)]
        action: LoopAction,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the transversals of a subgroup.
    Transversals {
        file: PathBuf,
        /// Comma-separated subgroup elements.
        #[arg(long)]
        subgroup: String,
        #[arg(long, default_value_t = suites::DEFAULT_MAX_TRANSVERSALS)]
        max_transversals: u128,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(
        SUITES.iter().copied().chain(["all"])
    ))]
    suite: String,
    #[arg(long, default_value_t = suites::DEFAULT_MAX_ORDER)]
    max_order: usize,
    #[arg(long, default_value_t = suites::DEFAULT_MAX_TRANSVERSALS)]
    max_transversals: u128,
    /// Transversals drawn per pair above the cap.
    #[arg(long, default_value_t = suites::DEFAULT_SAMPLE)]
    sample: usize,
    #[arg(long, default_value_t = suites::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Extra catalog group; repeatable.
    #[arg(long)]
    group_file: Vec<PathBuf>,
    /// Extra right loop for the loop-level suites; repeatable.
    #[arg(long)]
    loop_file: Vec<PathBuf>,
    /// Skip the A5 stress case.
    #[arg(long)]
    no_stress: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroupAction {
    Validate,
    Info,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LoopAction {
    Validate,
    Torsion,
    DerivedSeries,
    Solvable,
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }
}

fn in_file(path: &Path, e: Error) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

pub fn load_group_file(path: &Path) -> Result<FiniteGroup, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_group(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_loop_file(path: &Path) -> Result<RightLoop, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_loop(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_PASS {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Verify(args) => verify(args, out, err),
        Command::Group {
            action,
            file,
            format,
        } => group_command(action, &file, format, out),
        Command::Loop {
            action,
            file,
            format,
        } => loop_command(action, &file, format, out),
        Command::Transversals {
            file,
            subgroup,
            max_transversals,
            format,
        } => transversals_command(&file, &subgroup, max_transversals, format, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("write failed: {e}")))
}

fn verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let mut catalog = Catalog::builtin(args.max_order);
    for path in &args.group_file {
        let g = load_group_file(path).map_err(Failure::usage)?;
        catalog
            .add(&file_stem(path), g)
            .map_err(|e| in_file(path, e))?;
    }
    let mut user_loops = Vec::new();
    for path in &args.loop_file {
        user_loops.push((
            file_stem(path),
            load_loop_file(path).map_err(Failure::usage)?,
        ));
    }
    let cfg = Config {
        max_order: args.max_order,
        max_transversals: args.max_transversals,
        sample: args.sample,
        seed: args.seed,
        stress: !args.no_stress,
        user_loops,
    };
    let names: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    let run_all = || -> Result<Vec<(VerificationReport, Duration)>, Failure> {
        names
            .iter()
            .map(|name| {
                let start = Instant::now();
                let r = suites::run_suite(name, &catalog, &cfg)
                    .map_err(|e| Failure::usage(format!("{name}: {e}")))?;
                Ok((r, start.elapsed()))
            })
            .collect()
    };
    let timed = match args.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::usage(e.to_string()))?
            .install(run_all)?,
        None => run_all()?,
    };
    let mut reports = Vec::new();
    for (r, elapsed) in timed {
        let _ = writeln!(err, "{}: {elapsed:.2?}", r.experiment);
        reports.push(r);
    }
    let (text, passed) = if reports.len() == 1 && args.suite != "all" {
        let r = &reports[0];
        let text = match args.format {
            Format::Json => to_json(r),
            Format::Text => r.to_text(),
        };
        (text, r.passed || !r.asserted)
    } else {
        let bundle = ReportBundle::new(reports);
        let text = match args.format {
            Format::Json => to_json(&bundle),
            Format::Text => bundle.to_text(),
        };
        (text, bundle.passed)
    };
    match &args.output {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => emit(out, &text)?,
    }
    Ok(if passed { EXIT_PASS } else { EXIT_VIOLATION })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn render(format: Format, value: serde_json::Value, text: String) -> String {
    match format {
        Format::Json => to_json(&value),
        Format::Text => text,
    }
}

fn group_command(
    action: GroupAction,
    path: &Path,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let g = load_group_file(path).map_err(Failure::usage)?;
    let n = g.order();
    let text = match action {
        GroupAction::Validate => render(
            format,
            json!({"valid": true, "order": n}),
            format!("valid group of order {n}\n"),
        ),
        GroupAction::Info => {
            let series: Vec<usize> = g.derived_series().iter().map(|k| k.order()).collect();
            let subs = g
                .all_subgroups(DEFAULT_SUBGROUP_ENUM_CAP.max(n))
                .map_err(|e| in_file(path, e))?;
            let core_free = subs.iter().filter(|h| g.is_core_free(h)).count();
            let normal = subs.iter().filter(|h| g.is_normal(h)).count();
            let orders: Vec<usize> = (0..n).map(|x| g.element_order(x)).collect();
            render(
                format,
                json!({
                    "order": n,
                    "abelian": g.is_abelian(),
                    "solvable": g.is_solvable(),
                    "derived_series_orders": series,
                    "subgroups": subs.len(),
                    "normal_subgroups": normal,
                    "core_free_subgroups": core_free,
                    "element_orders": orders,
                }),
                format!(
                    "order {n}\nabelian {}\nsolvable {}\nderived series orders {series:?}\nsubgroups {} (normal {normal}, core-free {core_free})\nelement orders {orders:?}\n",
                    g.is_abelian(),
                    g.is_solvable(),
                    subs.len()
                ),
            )
        }
    };
    emit(out, &text)?;
    Ok(EXIT_PASS)
}

fn loop_command(
    action: LoopAction,
    path: &Path,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let s = load_loop_file(path).map_err(Failure::usage)?;
    let n = s.order();
    let text = match action {
        LoopAction::Validate => {
            let assoc = s.is_associative();
            render(
                format,
                json!({"valid": true, "order": n, "associative": assoc, "commutative": s.is_commutative()}),
                format!(
                    "valid right loop of order {n}\nassociative {assoc}\ncommutative {}\n",
                    s.is_commutative()
                ),
            )
        }
        LoopAction::Torsion => {
            let t = s.torsion_group().map_err(|e| in_file(path, e))?;
            let tg = t.as_group();
            let gens: Vec<String> = t
                .generators()
                .iter()
                .map(|((y, z), p)| format!("f({y},{z}) = {p}"))
                .collect();
            render(
                format,
                json!({
                    "order": t.order(),
                    "abelian": tg.is_abelian(),
                    "elementary_abelian_2": tg.is_elementary_abelian_2(),
                    "generators": gens,
                }),
                format!(
                    "torsion order {}\nabelian {}\nelementary abelian 2-group {}\n{}",
                    t.order(),
                    tg.is_abelian(),
                    tg.is_elementary_abelian_2(),
                    gens.iter().map(|g| format!("{g}\n")).collect::<String>()
                ),
            )
        }
        LoopAction::DerivedSeries => {
            let series: Vec<Vec<usize>> = derived_series_loop(&s)
                .iter()
                .map(|t| t.elements().to_vec())
                .collect();
            let text = series
                .iter()
                .enumerate()
                .map(|(k, t)| format!("S^({k}) order {}: {t:?}\n", t.len()))
                .collect();
            render(format, json!({"series": series}), text)
        }
        LoopAction::Solvable => {
            let solvable = is_solvable_loop(&s);
            render(
                format,
                json!({"solvable": solvable}),
                format!("solvable {solvable}\n"),
            )
        }
    };
    emit(out, &text)?;
    Ok(EXIT_PASS)
}

fn transversals_command(
    path: &Path,
    subgroup: &str,
    cap: u128,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let g = load_group_file(path).map_err(Failure::usage)?;
    let set = parse_index_list(subgroup).map_err(|e| Failure::usage(format!("--subgroup: {e}")))?;
    let h = g
        .as_subgroup(&set)
        .map_err(|e| Failure::usage(format!("--subgroup: {e}")))?;
    let space = CosetSpace::new(&g, &h);
    let iter = space
        .transversals(cap)
        .map_err(|e| Failure::usage(format!("{e}; raise --max-transversals")))?;
    let mut rows = Vec::new();
    let mut lines = format!(
        "index {}\ntransversals {}\ncore-free {}\nnormal {}\n",
        space.index(),
        space.transversal_count(),
        g.is_core_free(&h),
        g.is_normal(&h)
    );
    for t in iter {
        let s = space.induced_loop(&t);
        let l = s.right_loop();
        let generating = space.is_generating(&t);
        let assoc = l.is_associative();
        let solvable = is_solvable_loop(l);
        lines.push_str(&format!(
            "{:?} generating={generating} associative={assoc} solvable={solvable}\n",
            t.reps()
        ));
        rows.push(json!({
            "reps": t.reps(),
            "generating": generating,
            "associative": assoc,
            "solvable": solvable,
            "table": format_table(&l.rows()),
        }));
    }
    let text = render(
        format,
        json!({
            "index": space.index(),
            "core_free": g.is_core_free(&h),
            "normal": g.is_normal(&h),
            "transversals": rows,
        }),
        lines,
    );
    emit(out, &text)?;
    Ok(EXIT_PASS)
}
