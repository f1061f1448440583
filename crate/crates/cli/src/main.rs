//! `bcblow`: exact blow-up calculus for refined Chern classes.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bcblow_cli::manifest::{self, Manifest};
use bcblow_cli::tasks::{run_tasks, TaskRecord};
use bcblow_core::nilbc;
use bcblow_core::presets;
use bcblow_core::rat::{self, BigInt};

#[derive(Parser)]
#[command(
    name = "bcblow",
    about = "Exact symbolic calculus for Chern classes of blow-ups in Bott-Chern cohomology",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a JSON manifest and emit JSON-line reports.
    Run(RunArgs),
    /// Print the coefficient table of the universal integer series of
    /// Riemann-Roch without denominators.
    RrSeries(RrSeriesArgs),
    /// Bott-Chern dimension tables of nilmanifolds from invariant forms.
    Nilbc(NilbcArgs),
    /// Run a shipped verification preset.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the manifest file.
    manifest: PathBuf,
    /// Run only the task with this name.
    #[arg(long)]
    task: Option<String>,
    /// Write the JSON-line report stream to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run independent tasks on separate threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct RrSeriesArgs {
    /// Rank of the dualized bundle in the alternating product.
    #[arg(long)]
    u: u32,
    /// Rank of the twisting bundle.
    #[arg(long)]
    v: u32,
    /// Degree bound of the series.
    #[arg(long)]
    degree: u32,
}

#[derive(Args)]
struct NilbcArgs {
    /// Named preset: `iwasawa`, or `torus-N` for an N-dimensional torus.
    #[arg(long, conflicts_with = "manifest")]
    preset: Option<String>,
    /// Manifest file declaring nilmanifolds.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Which nilmanifold of the manifest to use (defaults to the only one).
    #[arg(long)]
    name: Option<String>,
    /// Print the full dimension table (default behaviour).
    #[arg(long, default_value_t = true)]
    dims: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: surface-point, threefold-point, threefold-curve, iwasawa,
    /// universal-r2, universal-r3.
    #[arg(long)]
    preset: String,
}

fn main() -> ExitCode {
    // die quietly when the read end of a pipe closes (e.g. `bcblow ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::RrSeries(args) => cmd_rr_series(args),
        Command::Nilbc(args) => cmd_nilbc(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{failures} verification task(s) failed");
            ExitCode::FAILURE
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn load_manifest(path: &PathBuf) -> Result<Manifest, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        format!(
            "{}: parse error at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })
}

fn emit_records(records: &[TaskRecord], out: Option<PathBuf>) -> Result<(), String> {
    let mut lines = String::new();
    for record in records {
        lines.push_str(&serde_json::to_string(record).expect("serializable record"));
        lines.push('\n');
    }
    match out {
        Some(path) => {
            let mut file =
                fs::File::create(&path).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            file.write_all(lines.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        None => print!("{lines}"),
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<usize, String> {
    let manifest = load_manifest(&args.manifest)?;
    let built = manifest::build(manifest).map_err(|e| e.to_string())?;
    if let Some(filter) = &args.task {
        let known = built
            .tasks
            .iter()
            .enumerate()
            .any(|(i, t)| t.label(i) == *filter);
        if !known {
            return Err(format!("unknown task name '{filter}'"));
        }
    }
    let records = run_tasks(&built, args.task.as_deref(), args.parallel);
    emit_records(&records, args.out)?;

    let mut failures = 0;
    println!("-- summary --");
    for record in &records {
        let verdict = if record.passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {} ({}) - {} checks",
            record.task,
            record.kind,
            record.checks.len()
        );
        if !record.passed {
            failures += 1;
            for check in &record.checks {
                if check.status != "pass" {
                    println!("     {}: {}", check.key, check.detail);
                }
            }
        }
    }
    println!(
        "{} task(s), {} failed",
        records.len(),
        failures
    );
    Ok(failures)
}

fn cmd_rr_series(args: RrSeriesArgs) -> Result<usize, String> {
    let f = bcblow_core::rrwd::compute_f(args.u, args.v, args.degree)
        .map_err(|e| e.to_string())?;
    let names = f.variable_names();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    println!(
        "universal series f for ranks u = {}, v = {}, truncated above degree {}",
        args.u, args.v, args.degree
    );
    println!(
        "variables: {} (deg z_i = i, deg w_j = j); all coefficients integers",
        names.join(", ")
    );
    let expected = rat::alt_big(args.u - 1, rat::factorial(args.u - 1) * BigInt::from(args.v));
    println!("constant term: {} = (-1)^(u-1) (u-1)! v", expected);
    for (m, c) in f.entries() {
        let mono = bcblow_core::poly::Poly::from_monomial(m.clone(), rat::rat_int(1));
        println!("  {:>8}  {}", c.to_string(), mono.render(&name_refs));
    }
    Ok(0)
}

fn cmd_nilbc(args: NilbcArgs) -> Result<usize, String> {
    let (label, se) = match (&args.preset, &args.manifest) {
        (Some(name), None) => {
            let se = if name == "iwasawa" {
                nilbc::StructureEquations::iwasawa()
            } else if let Some(n) = name.strip_prefix("torus-") {
                let n: u32 = n
                    .parse()
                    .map_err(|_| format!("bad torus dimension in '{name}'"))?;
                if n == 0 || n > 6 {
                    return Err("torus dimension must be between 1 and 6".to_string());
                }
                nilbc::StructureEquations::torus(n)
            } else {
                return Err(format!(
                    "unknown nilmanifold preset '{name}' (try iwasawa or torus-N)"
                ));
            };
            (name.clone(), se)
        }
        (None, Some(path)) => {
            let manifest = load_manifest(path)?;
            let built = manifest::build(manifest).map_err(|e| e.to_string())?;
            let mut nilmanifolds = built.nilmanifolds;
            let name = match &args.name {
                Some(n) => n.clone(),
                None if nilmanifolds.len() == 1 => {
                    nilmanifolds.keys().next().unwrap().clone()
                }
                None => {
                    return Err(format!(
                        "manifest declares {} nilmanifolds; pick one with --name",
                        nilmanifolds.len()
                    ))
                }
            };
            let se = nilmanifolds
                .remove(&name)
                .ok_or_else(|| format!("unknown nilmanifold '{name}'"))?;
            (name, se)
        }
        _ => return Err("pass exactly one of --preset or --manifest".to_string()),
    };

    nilbc::build_bicomplex(&se).map_err(|e| e.to_string())?;
    let n = se.dim();
    println!("nilmanifold '{label}', complex dimension {n}");
    if args.dims {
        let table = nilbc::bc_dimension_table(&se);
        println!("Bott-Chern dimensions h^(p,q), rows p = 0..{n}, columns q = 0..{n}:");
        for p in 0..=n {
            let row: Vec<String> = (0..=n).map(|q| table[&(p, q)].to_string()).collect();
            println!("  p={p}:  {}", row.join("  "));
        }
        let symmetric = table.iter().all(|(&(p, q), &d)| table[&(q, p)] == d);
        println!(
            "conjugation symmetry h^(p,q) = h^(q,p): {}",
            if symmetric { "holds" } else { "VIOLATED" }
        );
        if !symmetric {
            return Ok(1);
        }
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<usize, String> {
    let reports = presets::verify_preset(&args.preset).map_err(|e| e.to_string())?;
    let mut failures = 0;
    for report in &reports {
        println!("{report}");
        if !report.passed {
            failures += 1;
        }
    }
    println!(
        "preset '{}': {}/{} checks passed",
        args.preset,
        reports.len() - failures,
        reports.len()
    );
    Ok(failures)
}
