//! Command-line front end: run grids of (game x algorithm) configurations,
//! write per-run CSV convergence data plus a JSON summary, and check game
//! sizes against the published reference table.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::efg::GameTree;
use crate::engine::{run_on, Averaging, ConvergenceRecord, InfosetSummary, LogSchedule, RunConfig, UpdateMode};
use crate::games::{reference_stats, GameSpec};
use crate::regret::{Variant, VariantTag};

pub const CSV_HEADER: &str =
    "iteration,exploitability,total_pred_gap,total_state_gap,bound_thm1,bound_thm2,mean_alpha,max_alpha,wall_time_s";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown flag `{0}`")]
    UnknownFlag(String),
    #[error("flag `{0}` needs a value")]
    MissingValue(String),
    #[error("bad value for `{flag}`: {reason}")]
    BadValue { flag: String, reason: String },
    #[error("unknown command `{0}` (expected `bench` or `stats`)")]
    UnknownCommand(String),
    #[error("missing command (expected `bench` or `stats`)")]
    MissingCommand,
}

/// Output formats toggled by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub json: bool,
}

/// A fully parsed `bench` invocation.
#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub runs: Vec<RunConfig>,
    pub out_dir: PathBuf,
    pub formats: Formats,
    pub baseline: Variant,
    pub jobs: usize,
    pub dump_infosets: bool,
}

/// A fully parsed `stats` invocation.
#[derive(Debug, Clone)]
pub struct StatsPlan {
    pub games: Vec<GameSpec>,
    pub check_reference: bool,
}

#[derive(Debug, Clone)]
pub enum Command {
    Bench(BenchPlan),
    Stats(StatsPlan),
}

pub const USAGE: &str = "\
cfr-forge: regret-minimization benchmarks for two-player zero-sum games

USAGE:
    cfr-forge bench [FLAGS]
    cfr-forge stats --game <spec> [--game <spec> ...] [--check-paper]

BENCH FLAGS:
    --game <spec>           repeatable; kuhn | leduc[:ranks] | goofspiel:n |
                            liars_dice:d | battleship:RxC:S
    --algo <name>           repeatable; cfr | cfr+ | dcfr | pcfr+ | apcfr+ |
                            apcfr+v2 | sapcfr+ | apdcfr+
    --iters <n>             iterations per run (default 5000)
    --mode <m>              alternating | simultaneous (default alternating)
    --avg <a>               linear | quadratic | apd | apd_raw
                            (default quadratic; apd is forced for apdcfr+)
    --alpha-max <f>         cap on the learned asymmetry
    --lambda <f>            discounted-predictive rate scale
    --kappa <f>             discounted-predictive rate offset
    --beta <f>              discounted-predictive rate exponent
    --log-schedule <s>      log | pow2 | every:N | final (default log)
    --diagnostics <on|off>  track regret-bound sums (default on)
    --dump-infosets         also write per-infoset accumulators per run
    --out <dir>             output directory (default bench_out)
    --format <list>         comma-separated subset of csv,json (default both)
    --jobs <n>              concurrent runs (default 1)
    --baseline <name>       summary comparison baseline (default pcfr+)
";

/// Parses `bench` arguments (everything after the subcommand).
pub fn parse_cli(args: &[String]) -> Result<BenchPlan, CliError> {
    let mut games: Vec<GameSpec> = Vec::new();
    let mut algos: Vec<Variant> = Vec::new();
    let mut iters: u64 = 5000;
    let mut mode = UpdateMode::Alternating;
    let mut avg = Averaging::Quadratic;
    let mut schedule = LogSchedule::Log10;
    let mut diagnostics = true;
    let mut out_dir = PathBuf::from("bench_out");
    let mut formats = Formats { csv: true, json: true };
    let mut jobs = 1usize;
    let mut baseline = Variant::new(VariantTag::PcfrPlus);
    let mut dump_infosets = false;
    let mut alpha_max: Option<f64> = None;
    let mut lambda: Option<f64> = None;
    let mut kappa: Option<f64> = None;
    let mut beta: Option<f64> = None;

    let mut it = args.iter();
    while let Some(flag) = it.next() {
        let mut value = |flag: &str| {
            it.next()
                .cloned()
                .ok_or_else(|| CliError::MissingValue(flag.to_string()))
        };
        let bad = |flag: &str, reason: String| CliError::BadValue {
            flag: flag.to_string(),
            reason,
        };
        match flag.as_str() {
            "--game" => {
                let v = value(flag)?;
                games.push(GameSpec::parse(&v).map_err(|e| bad(flag, e.to_string()))?);
            }
            "--algo" => {
                let v = value(flag)?;
                algos.push(Variant::parse(&v).map_err(|e| bad(flag, e.to_string()))?);
            }
            "--iters" => {
                let v = value(flag)?;
                iters = v.parse().map_err(|_| bad(flag, format!("`{v}` is not a count")))?;
                if iters == 0 {
                    return Err(bad(flag, "must be at least 1".to_string()));
                }
            }
            "--mode" => {
                let v = value(flag)?;
                mode = UpdateMode::parse(&v)
                    .ok_or_else(|| bad(flag, format!("`{v}` is not alternating|simultaneous")))?;
            }
            "--avg" => {
                let v = value(flag)?;
                avg = Averaging::parse(&v)
                    .ok_or_else(|| bad(flag, format!("`{v}` is not linear|quadratic|apd|apd_raw")))?;
            }
            "--alpha-max" => alpha_max = Some(parse_f64(flag, &value(flag)?)?),
            "--lambda" => lambda = Some(parse_f64(flag, &value(flag)?)?),
            "--kappa" => kappa = Some(parse_f64(flag, &value(flag)?)?),
            "--beta" => beta = Some(parse_f64(flag, &value(flag)?)?),
            "--log-schedule" => {
                let v = value(flag)?;
                schedule = LogSchedule::parse(&v)
                    .ok_or_else(|| bad(flag, format!("`{v}` is not log|pow2|every:N|final")))?;
            }
            "--diagnostics" => {
                let v = value(flag)?;
                diagnostics = match v.as_str() {
                    "on" => true,
                    "off" => false,
                    _ => return Err(bad(flag, format!("`{v}` is not on|off"))),
                };
            }
            "--dump-infosets" => dump_infosets = true,
            "--out" => out_dir = PathBuf::from(value(flag)?),
            "--format" => {
                let v = value(flag)?;
                let mut f = Formats { csv: false, json: false };
                for part in v.split(',') {
                    match part {
                        "csv" => f.csv = true,
                        "json" => f.json = true,
                        _ => return Err(bad(flag, format!("`{part}` is not csv|json"))),
                    }
                }
                formats = f;
            }
            "--jobs" => {
                let v = value(flag)?;
                jobs = v.parse().map_err(|_| bad(flag, format!("`{v}` is not a count")))?;
                jobs = jobs.max(1);
            }
            "--baseline" => {
                let v = value(flag)?;
                baseline = Variant::parse(&v).map_err(|e| bad(flag, e.to_string()))?;
            }
            other => return Err(CliError::UnknownFlag(other.to_string())),
        }
    }

    let mut runs = Vec::with_capacity(games.len() * algos.len());
    for &game in &games {
        for algo in &algos {
            let mut variant = *algo;
            if let Some(a) = alpha_max {
                variant.params.alpha_max = a;
            }
            if let Some(l) = lambda {
                variant.params.lambda = l;
            }
            if let Some(k) = kappa {
                variant.params.kappa = k;
            }
            if let Some(b) = beta {
                variant.params.beta = b;
            }
            let averaging = if variant.tag == VariantTag::ApdcfrPlus {
                if avg != Averaging::ApdWeighted && avg != Averaging::ApdUnweighted {
                    eprintln!("note: {} uses its own decayed averaging; forcing --avg apd", variant.name());
                }
                match avg {
                    Averaging::ApdUnweighted => Averaging::ApdUnweighted,
                    _ => Averaging::ApdWeighted,
                }
            } else {
                avg
            };
            runs.push(RunConfig {
                game,
                variant,
                iterations: iters,
                update_mode: mode,
                averaging,
                log_schedule: schedule,
                diagnostics,
            });
        }
    }
    Ok(BenchPlan {
        runs,
        out_dir,
        formats,
        baseline,
        jobs,
        dump_infosets,
    })
}

/// Parses `stats` arguments (everything after the subcommand).
pub fn parse_stats(args: &[String]) -> Result<StatsPlan, CliError> {
    let mut games = Vec::new();
    let mut check_reference = false;
    let mut it = args.iter();
    while let Some(flag) = it.next() {
        match flag.as_str() {
            "--game" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::MissingValue(flag.clone()))?;
                games.push(GameSpec::parse(v).map_err(|e| CliError::BadValue {
                    flag: flag.clone(),
                    reason: e.to_string(),
                })?);
            }
            "--check-paper" => check_reference = true,
            other => return Err(CliError::UnknownFlag(other.to_string())),
        }
    }
    Ok(StatsPlan { games, check_reference })
}

/// Parses a full argv (without the binary name) into a command.
pub fn parse_command(args: &[String]) -> Result<Command, CliError> {
    match args.first().map(String::as_str) {
        Some("bench") => Ok(Command::Bench(parse_cli(&args[1..])?)),
        Some("stats") => Ok(Command::Stats(parse_stats(&args[1..])?)),
        Some(other) => Err(CliError::UnknownCommand(other.to_string())),
        None => Err(CliError::MissingCommand),
    }
}

fn parse_f64(flag: &str, v: &str) -> Result<f64, CliError> {
    v.parse().map_err(|_| CliError::BadValue {
        flag: flag.to_string(),
        reason: format!("`{v}` is not a number"),
    })
}

#[derive(Debug, Serialize)]
struct Summary {
    baseline: String,
    runs: Vec<SummaryRun>,
}

#[derive(Debug, Serialize)]
struct SummaryRun {
    game: String,
    algo: String,
    iters: u64,
    final_exploitability: f64,
    delta_vs_baseline_pct: Option<f64>,
}

/// Renders one record as a CSV row. Exploitability and the diagnostic totals
/// are written with 17 significant digits so re-parsing is lossless.
pub fn csv_row(r: &ConvergenceRecord) -> String {
    format!(
        "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.3}",
        r.iteration,
        r.exploitability,
        r.total_pred_gap,
        r.total_state_gap,
        r.bound_thm1,
        r.bound_thm2,
        r.mean_alpha,
        r.max_alpha,
        r.wall_time_s
    )
}

/// Executes every run in the plan (up to `jobs` concurrently), writes one CSV
/// per run plus `summary.json`, and returns the process exit code.
pub fn execute(plan: &BenchPlan) -> i32 {
    if plan.runs.is_empty() {
        return 0;
    }
    if let Err(e) = fs::create_dir_all(&plan.out_dir) {
        eprintln!("error: cannot create {}: {e}", plan.out_dir.display());
        return 1;
    }

    // Build each distinct game once; runs share the immutable tree.
    let mut trees: HashMap<GameSpec, Arc<GameTree>> = HashMap::new();
    for run in &plan.runs {
        if let std::collections::hash_map::Entry::Vacant(slot) = trees.entry(run.game) {
            match run.game.build() {
                Ok(tree) => {
                    slot.insert(Arc::new(tree));
                }
                Err(e) => {
                    eprintln!("error: cannot build {}: {e}", run.game.name());
                    return 1;
                }
            }
        }
    }

    struct Done {
        index: usize,
        final_exploitability: Option<f64>,
        failed: bool,
    }

    let next = Mutex::new(0usize);
    let results: Mutex<Vec<Done>> = Mutex::new(Vec::with_capacity(plan.runs.len()));
    std::thread::scope(|scope| {
        for _ in 0..plan.jobs.min(plan.runs.len()) {
            scope.spawn(|| loop {
                let index = {
                    let mut guard = next.lock().unwrap();
                    let i = *guard;
                    if i >= plan.runs.len() {
                        break;
                    }
                    *guard += 1;
                    i
                };
                let config = &plan.runs[index];
                let tree = &trees[&config.game];
                let output = run_on(tree, config, &mut |_| {});
                let mut failed = false;
                if plan.formats.csv {
                    let path = plan
                        .out_dir
                        .join(format!("{}_{}.csv", config.game.name(), config.variant.name()));
                    if let Err(e) = write_csv(&path, &output.records) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        failed = true;
                    }
                }
                if plan.dump_infosets {
                    match &output.infoset_summaries {
                        Some(summaries) => {
                            let path = plan.out_dir.join(format!(
                                "{}_{}_infosets.csv",
                                config.game.name(),
                                config.variant.name()
                            ));
                            if let Err(e) = write_infoset_csv(&path, summaries) {
                                eprintln!("error: cannot write {}: {e}", path.display());
                                failed = true;
                            }
                        }
                        None => eprintln!(
                            "note: --dump-infosets needs --diagnostics on; skipping {}_{}",
                            config.game.name(),
                            config.variant.name()
                        ),
                    }
                }
                let final_exploitability = output.records.last().map(|r| r.exploitability);
                results.lock().unwrap().push(Done {
                    index,
                    final_exploitability,
                    failed,
                });
            });
        }
    });

    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|d| d.index);
    if results.iter().any(|d| d.failed) {
        return 1;
    }

    if plan.formats.json {
        let mut finals: HashMap<(GameSpec, u64), f64> = HashMap::new();
        for d in &results {
            let config = &plan.runs[d.index];
            if config.variant.tag == plan.baseline.tag {
                if let Some(eps) = d.final_exploitability {
                    finals.insert((config.game, config.iterations), eps);
                }
            }
        }
        let runs = results
            .iter()
            .map(|d| {
                let config = &plan.runs[d.index];
                let eps = d.final_exploitability.unwrap_or(f64::NAN);
                let delta = if config.variant.tag == plan.baseline.tag {
                    None
                } else {
                    finals
                        .get(&(config.game, config.iterations))
                        .map(|base| (eps - base) / base * 100.0)
                };
                SummaryRun {
                    game: config.game.name(),
                    algo: config.variant.name().to_string(),
                    iters: config.iterations,
                    final_exploitability: eps,
                    delta_vs_baseline_pct: delta,
                }
            })
            .collect();
        let summary = Summary {
            baseline: plan.baseline.name().to_string(),
            runs,
        };
        let path = plan.out_dir.join("summary.json");
        let body = serde_json::to_string_pretty(&summary).expect("serializable");
        if let Err(e) = fs::write(&path, body + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 1;
        }
    }
    0
}

fn write_infoset_csv(
    path: &std::path::Path,
    summaries: &[InfosetSummary],
) -> std::io::Result<()> {
    let mut out = String::with_capacity(80 * (summaries.len() + 1));
    out.push_str(
        "infoset,player,num_actions,realized_regret,bound1_sum,bound2_sum,alpha,sum_pred_gap,sum_state_gap\n",
    );
    for s in summaries {
        out.push_str(&format!(
            "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            s.infoset.0, s.player, s.num_actions, s.realized_regret, s.bound1_sum, s.bound2_sum,
            s.alpha, s.sum_pred_gap, s.sum_state_gap
        ));
    }
    fs::write(path, out)
}

fn write_csv(path: &std::path::Path, records: &[ConvergenceRecord]) -> std::io::Result<()> {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    fs::write(path, out)
}

/// Prints the size table for the requested games; with `check_reference`
/// compares against the published rows and returns nonzero on any mismatch.
pub fn stats_command(plan: &StatsPlan, out: &mut dyn Write) -> i32 {
    let mut code = 0;
    let _ = writeln!(
        out,
        "{:<20} {:>10} {:>9} {:>10} {:>6} {:>12}  reference",
        "game", "histories", "infosets", "terminals", "depth", "max_infoset"
    );
    for spec in &plan.games {
        let tree = match spec.build() {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        let stats = tree.stats();
        let verdict = match reference_stats(spec) {
            Some(expected) if plan.check_reference => {
                if stats == expected {
                    "ok".to_string()
                } else {
                    code = 1;
                    format!(
                        "MISMATCH (expected {} {} {} {} {})",
                        expected.histories,
                        expected.infosets,
                        expected.terminal_histories,
                        expected.depth,
                        expected.max_infoset_size
                    )
                }
            }
            Some(_) => "-".to_string(),
            None => {
                if plan.check_reference {
                    "no reference row".to_string()
                } else {
                    "-".to_string()
                }
            }
        };
        let _ = writeln!(
            out,
            "{:<20} {:>10} {:>9} {:>10} {:>6} {:>12}  {}",
            spec.name(),
            stats.histories,
            stats.infosets,
            stats.terminal_histories,
            stats.depth,
            stats.max_infoset_size,
            verdict
        );
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn defaults_single_run() {
        let plan = parse_cli(&args("--game kuhn --algo sapcfr+ --iters 5000")).unwrap();
        assert_eq!(plan.runs.len(), 1);
        let run = &plan.runs[0];
        assert_eq!(run.game.name(), "kuhn");
        assert_eq!(run.variant.tag, VariantTag::SapcfrPlus);
        assert_eq!(run.iterations, 5000);
        assert_eq!(run.update_mode, UpdateMode::Alternating);
        assert_eq!(run.averaging, Averaging::Quadratic);
    }

    #[test]
    fn grid_is_cartesian() {
        let plan =
            parse_cli(&args("--game leduc:5 --game leduc:9 --algo pcfr+ --algo sapcfr+")).unwrap();
        assert_eq!(plan.runs.len(), 4);
        let names: Vec<_> = plan
            .runs
            .iter()
            .map(|r| format!("{}/{}", r.game.name(), r.variant.name()))
            .collect();
        assert_eq!(
            names,
            vec!["leduc_5/pcfr+", "leduc_5/sapcfr+", "leduc_9/pcfr+", "leduc_9/sapcfr+"]
        );
    }

    #[test]
    fn apd_variant_forces_its_averaging() {
        let plan = parse_cli(&args("--game kuhn --algo apdcfr+ --avg quadratic")).unwrap();
        assert_eq!(plan.runs[0].averaging, Averaging::ApdWeighted);
        let plan = parse_cli(&args("--game kuhn --algo pcfr+ --avg linear")).unwrap();
        assert_eq!(plan.runs[0].averaging, Averaging::Linear);
    }

    #[test]
    fn unknown_flag_is_an_error() {
        assert!(matches!(
            parse_cli(&args("--frobnicate 3")),
            Err(CliError::UnknownFlag(_))
        ));
        assert!(parse_cli(&args("--game nosuchgame")).is_err());
        assert!(parse_cli(&args("--algo nosuchalgo")).is_err());
    }

    #[test]
    fn empty_plan_executes_to_zero() {
        let plan = parse_cli(&[]).unwrap();
        assert!(plan.runs.is_empty());
        assert_eq!(execute(&plan), 0);
    }

    #[test]
    fn hyperparameter_overrides_reach_variants() {
        let plan = parse_cli(&args("--game kuhn --algo apcfr+ --alpha-max 7.5")).unwrap();
        assert_eq!(plan.runs[0].variant.params.alpha_max, 7.5);
    }
}
