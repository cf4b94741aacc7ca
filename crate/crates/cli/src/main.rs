use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use grpcover::error::Error;
use grpcover::{parse_group_expr, Budgets, CoverOutcome, GroupTable};
use grpcover_cli::analysis::{
    analyze, exit_code_for, result_line, subgroup_generators, GroupAnalysis,
};
use grpcover_cli::catalog::{load_catalog, GroupRecord, GroupSource};
use grpcover_cli::checks::{any_failed, build_population, render_reports, run_all_checks};
use grpcover_cli::{default_jobs, parallel_map};

/// Covering numbers of finite groups: sigma_n over proper normalizers,
/// sigma over proper subgroups, sigma_c over proper centralizers.
#[derive(Parser)]
#[command(name = "grpcover", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Build a group from a construction expression,
    /// e.g. "product(dihedral(8),cyclic(3))".
    #[arg(long)]
    construct: Option<String>,
    /// Read groups from a catalog file (.gens, .cayley/.csv or .cat).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Order budget (also settable via GRPCOVER_MAX_ORDER).
    #[arg(long)]
    max_order: Option<usize>,
    /// Branch-and-bound node cap for the exact cover solver.
    #[arg(long)]
    node_cap: Option<u64>,
    /// Reserved: the toolkit never uses randomness; always on.
    #[arg(long, default_value_t = true)]
    seedless: bool,
    /// Emit the full result record as JSON as well.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Normalizer covering number of one or more groups.
    SigmaN(CommonOpts),
    /// Classical covering number (proper subgroups).
    Sigma(CommonOpts),
    /// Centralizer covering number.
    SigmaC(CommonOpts),
    /// Analyze every record of a catalog and write line-delimited results.
    Batch {
        #[command(flatten)]
        common: CommonOpts,
        /// Output path for the results file.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (output is identical for any value).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Record real per-group timings instead of deterministic nulls.
        #[arg(long)]
        timings: bool,
    },
    /// Run the whole verification harness and print the traceability table.
    VerifyPaper {
        /// Extra catalogs to widen the population.
        catalogs: Vec<PathBuf>,
        /// Largest order included in the built-in sweep.
        #[arg(long, default_value_t = 120)]
        sweep_max: u64,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        node_cap: Option<u64>,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long, default_value_t = true)]
        seedless: bool,
    },
    /// List every group in the population attaining a given sigma_n.
    Search {
        /// The sigma_n value to look for.
        #[arg(long)]
        value: usize,
        /// Largest order included in the built-in sweep.
        #[arg(long, default_value_t = 120)]
        max_order: u64,
        /// Extra catalogs to widen the population.
        catalogs: Vec<PathBuf>,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long, default_value_t = true)]
        seedless: bool,
    },
    /// Dump the full subgroup lattice of a group.
    LatticeDump(CommonOpts),
}

fn budgets_from(max_order: Option<usize>, node_cap: Option<u64>) -> Budgets {
    let mut budgets = Budgets::default();
    if let Ok(value) = std::env::var("GRPCOVER_MAX_ORDER") {
        if let Ok(v) = value.parse() {
            budgets.max_order = v;
        }
    }
    if let Some(v) = max_order {
        budgets.max_order = v;
    }
    if let Some(v) = node_cap {
        budgets.node_cap = v;
    }
    budgets
}

/// Groups named by --construct or --in.
fn resolve_inputs(common: &CommonOpts, budgets: &Budgets) -> Result<Vec<GroupRecord>, Error> {
    let mut records = Vec::new();
    if let Some(text) = &common.construct {
        let expr = parse_group_expr(text)?;
        records.push(GroupRecord {
            name: text.trim().to_string(),
            source: GroupSource::Constructed(expr),
        });
    }
    if let Some(path) = &common.input {
        records.extend(load_catalog(path)?);
    }
    if records.is_empty() {
        return Err(Error::BadParameter(
            "nothing to do: pass --construct EXPR or --in PATH".into(),
        ));
    }
    let _ = budgets;
    Ok(records)
}

fn describe_cover(
    table: &GroupTable,
    analysis_lattice: &grpcover::SubgroupLattice,
    label: &str,
    outcome: &CoverOutcome,
) -> String {
    match outcome {
        CoverOutcome::Finite {
            value,
            witness_cover,
        } => {
            let mut out = format!("{label} = {value}\ncover:\n");
            for &id in witness_cover {
                let sub = analysis_lattice.subgroup(id);
                let norm = analysis_lattice.normalizer_of(id);
                let gens: Vec<String> = subgroup_generators(table, &sub.members)
                    .iter()
                    .map(|e| e.to_string())
                    .collect();
                out.push_str(&format!(
                    "  N(H) of order {}, H = <{}> (order {})\n",
                    norm.len(),
                    gens.join(" "),
                    sub.order()
                ));
            }
            out
        }
        CoverOutcome::Infinite { witness_element } => format!(
            "{label} = infinity, witness element of order {} (index {})\n",
            table.order_of(*witness_element),
            witness_element
        ),
    }
}

fn run_single_group_command(common: &CommonOpts, which: &str) -> Result<(), (i32, String)> {
    let budgets = budgets_from(common.max_order, common.node_cap);
    let records =
        resolve_inputs(common, &budgets).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    for record in records {
        let started = Instant::now();
        let table = record
            .resolve(&budgets)
            .map_err(|e| (exit_code_for(&e), e.to_string()))?;
        let analysis = analyze(table, record.source.describe(), &budgets)
            .map_err(|e| (exit_code_for(&e), e.to_string()))?;
        let elapsed = started.elapsed().as_millis();
        println!("group: {} (order {})", analysis.name, analysis.order());
        match which {
            "sigma-n" => print!(
                "{}",
                describe_cover(
                    &analysis.table,
                    &analysis.lattice,
                    "sigma_n",
                    &analysis.sigma_n
                )
            ),
            "sigma" => match &analysis.sigma {
                Some(outcome) => {
                    match outcome {
                        CoverOutcome::Finite { value, .. } => println!("sigma = {value}"),
                        CoverOutcome::Infinite { .. } => {
                            println!("sigma = infinity (cyclic group)")
                        }
                    };
                }
                None => {
                    return Err((
                        3,
                        format!(
                            "sigma not computed: order {} exceeds the sigma budget {}",
                            analysis.order(),
                            budgets.sigma_order_budget
                        ),
                    ))
                }
            },
            "sigma-c" => match &analysis.sigma_c {
                CoverOutcome::Finite { value, .. } => println!("sigma_c = {value}"),
                CoverOutcome::Infinite { .. } => println!("sigma_c = infinity (abelian group)"),
            },
            _ => unreachable!(),
        }
        println!("elapsed: {elapsed} ms");
        if common.json {
            let name = analysis.name.clone();
            println!("{}", result_line(&name, &Ok(analysis), Some(elapsed)));
        }
    }
    Ok(())
}

fn run_lattice_dump(common: &CommonOpts) -> Result<(), (i32, String)> {
    let budgets = budgets_from(common.max_order, common.node_cap);
    let records =
        resolve_inputs(common, &budgets).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    for record in records {
        let table = record
            .resolve(&budgets)
            .map_err(|e| (exit_code_for(&e), e.to_string()))?;
        let lattice = grpcover::enumerate_subgroups(&table, &budgets)
            .map_err(|e| (exit_code_for(&e), e.to_string()))?;
        println!(
            "group: {} (order {}, {} subgroups)",
            table.name(),
            table.order(),
            lattice.len()
        );
        for sub in lattice.subgroups() {
            let gens: Vec<String> = subgroup_generators(&table, &sub.members)
                .iter()
                .map(|e| e.to_string())
                .collect();
            let members: Vec<String> = sub.members.iter().map(|e| e.to_string()).collect();
            println!(
                "id={} order={} normal={} normalizer_order={} gens=[{}] members=[{}]",
                sub.id,
                sub.order(),
                if sub.is_normal { "yes" } else { "no" },
                lattice.normalizer_of(sub.id).len(),
                gens.join(" "),
                members.join(" ")
            );
        }
    }
    Ok(())
}

fn run_batch(
    common: &CommonOpts,
    out_path: &PathBuf,
    jobs: usize,
    timings: bool,
) -> Result<(), (i32, String)> {
    let budgets = budgets_from(common.max_order, common.node_cap);
    let mut records =
        resolve_inputs(common, &budgets).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    records.sort_by(|a, b| a.name.cmp(&b.name));

    let file = std::fs::File::create(out_path)
        .map_err(|e| (2, format!("cannot create {}: {e}", out_path.display())))?;
    let mut writer = std::io::BufWriter::new(file);

    // Workers push (index, line); the writer flushes completed prefixes
    // so partial progress is on disk while output stays name-sorted.
    let total = records.len();
    let (tx, rx) = std::sync::mpsc::channel::<(usize, String)>();
    let budgets_ref = &budgets;
    std::thread::scope(|scope| {
        scope.spawn(move || {
            let indexed: Vec<(usize, GroupRecord)> = records.drain(..).enumerate().collect();
            let tx2 = tx;
            parallel_map(indexed, jobs, |(i, record)| {
                let started = Instant::now();
                let outcome = record
                    .resolve(budgets_ref)
                    .and_then(|t| analyze(t, record.source.describe(), budgets_ref));
                let elapsed = timings.then(|| started.elapsed().as_millis());
                let line = result_line(&record.name, &outcome, elapsed);
                tx2.send((i, line)).expect("writer alive");
            });
        });
        let mut pending: std::collections::BTreeMap<usize, String> = Default::default();
        let mut next = 0usize;
        let mut write_error: Option<String> = None;
        for (i, line) in rx.iter() {
            pending.insert(i, line);
            while let Some(line) = pending.remove(&next) {
                if let Err(e) = writeln!(writer, "{line}").and_then(|_| writer.flush()) {
                    write_error = Some(e.to_string());
                }
                next += 1;
            }
            if next == total {
                break;
            }
        }
        match write_error {
            Some(e) => Err((2, format!("write failed: {e}"))),
            None => Ok(()),
        }
    })
}

fn run_verify(
    catalogs: &[PathBuf],
    sweep_max: u64,
    max_order: Option<usize>,
    node_cap: Option<u64>,
    jobs: usize,
) -> Result<bool, (i32, String)> {
    let budgets = budgets_from(max_order, node_cap);
    let groups = build_population(sweep_max, catalogs, &budgets, jobs)
        .map_err(|e| (exit_code_for(&e), e.to_string()))?;
    eprintln!(
        "population: {} groups (sweep max order {sweep_max})",
        groups.len()
    );
    let reports = run_all_checks(&groups, &budgets, jobs);
    print!("{}", render_reports(&reports));
    Ok(any_failed(&reports))
}

fn run_search(
    value: usize,
    max_order: u64,
    catalogs: &[PathBuf],
    jobs: usize,
) -> Result<(), (i32, String)> {
    if value < 3 {
        return Err((
            2,
            "no group is the union of fewer than 3 proper subgroups".into(),
        ));
    }
    let budgets = budgets_from(None, None);
    // Budget failures on individual catalog records are reported and
    // skipped; the scan continues over the rest.
    let mut errors = Vec::new();
    let groups = grpcover_cli::checks::build_population_lenient(
        max_order,
        catalogs,
        &budgets,
        jobs,
        &mut errors,
    )
    .map_err(|e| (exit_code_for(&e), e.to_string()))?;
    for (name, e) in &errors {
        eprintln!("skipping {name}: {e}");
    }
    let hits: Vec<&GroupAnalysis> = groups
        .iter()
        .filter(|a| a.sigma_n_value() == Some(value))
        .collect();
    if hits.is_empty() {
        println!(
            "sigma_n = {value}: none found in population of size {}",
            groups.len()
        );
    } else {
        println!(
            "sigma_n = {value}: {} group(s) in population of size {}",
            hits.len(),
            groups.len()
        );
        for a in hits {
            println!("  {} (order {})", a.name, a.order());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<bool, (i32, String)> = match &cli.command {
        Command::SigmaN(common) => run_single_group_command(common, "sigma-n").map(|_| false),
        Command::Sigma(common) => run_single_group_command(common, "sigma").map(|_| false),
        Command::SigmaC(common) => run_single_group_command(common, "sigma-c").map(|_| false),
        Command::LatticeDump(common) => run_lattice_dump(common).map(|_| false),
        Command::Batch {
            common,
            out,
            jobs,
            timings,
        } => run_batch(common, out, *jobs, *timings).map(|_| false),
        Command::VerifyPaper {
            catalogs,
            sweep_max,
            max_order,
            node_cap,
            jobs,
            ..
        } => run_verify(catalogs, *sweep_max, *max_order, *node_cap, *jobs),
        Command::Search {
            value,
            max_order,
            catalogs,
            jobs,
            ..
        } => run_search(*value, *max_order, catalogs, *jobs).map(|_| false),
    };
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
