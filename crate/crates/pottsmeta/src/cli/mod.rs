//! Command-line front end. `main` only forwards `argv` to [`run`].

pub mod config;
pub mod report;
pub mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dynamics::{observers, run_batch, Engine, Predicate, SimConfig};
use crate::energy::{energy_gap_vs_monochrome, hamiltonian, Params};
use crate::error::{Error, Result};
use crate::estimators::hitting::{default_cap, TargetSet};
use crate::geometry::{local_min_class, shape_class};
use crate::landscape::{
    exact_oracle, flood_cycle, initial_cycle, phi_between, stability_level, ExploreBudget, OracleRequests,
};
use crate::lattice::Config;
use crate::paths::{build_reference_path, Spiral};
use report::Envelope;

#[derive(Debug, Parser)]
#[command(name = "pottsmeta", version = concat!("v", env!("CARGO_PKG_VERSION")))]
#[command(about = "Potts model metastability: simulation, landscape analysis and verification")]
pub struct Cli {
    /// Defaults for any flag of the chosen command, as key=value lines or a
    /// JSON object. Explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run independent trajectories; one CSV row per trajectory.
    Simulate(SimulateArgs),
    /// Energy-landscape queries; JSON reports.
    #[command(subcommand)]
    Landscape(LandscapeCommand),
    /// Every shape predicate for a snapshot.
    Classify(ClassifyArgs),
    /// Energy profile of the reference path as CSV.
    Refpath(RefpathArgs),
    /// Run acceptance suites; exit 1 if any fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 3)]
    pub q: u8,
    #[arg(long = "K", default_value_t = 9)]
    pub k: usize,
    #[arg(long = "L", default_value_t = 9)]
    pub l: usize,
    #[arg(long, default_value_t = 0.9)]
    pub h: f64,
    /// Proceed when 0 < h < 1 or 2/h ∉ ℕ fails; the report flags it.
    #[arg(long)]
    pub unsafe_params: bool,
}

impl ModelArgs {
    pub fn params(&self) -> Result<Params> {
        model_params(self.q, self.k, self.l, self.h, self.unsafe_params)
    }
}

fn model_params(q: u8, k: usize, l: usize, h: f64, unsafe_params: bool) -> Result<Params> {
    if unsafe_params {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::FieldOutOfRange(h));
        }
        Params::unchecked(q, k, l, h)
    } else {
        Params::new(q, k, l, h)
    }
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Maximum number of states a search may visit.
    #[arg(long, default_value_t = 2_000_000)]
    pub max_states: usize,
    /// Comma-separated spin labels flips may write; default {1, m} when the
    /// full space is large.
    #[arg(long)]
    pub labels: Option<String>,
}

impl BudgetArgs {
    fn budget(&self, p: &Params, m: u8) -> Result<ExploreBudget> {
        let mut b = ExploreBudget::default_for(p, m);
        b.max_states = ExploreBudget::new(self.max_states)?.max_states;
        if let Some(ls) = &self.labels {
            let labels = parse_list::<u8>(ls, "labels")?;
            b = b.with_subspace(&labels);
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Naive,
    Kmc,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub beta: f64,
    /// Number of trajectories.
    #[arg(long, short = 'N', default_value_t = 100)]
    pub n: usize,
    /// Step cap per trajectory; default `cap-factor · e^{βΓ}`.
    #[arg(long)]
    pub cap: Option<u64>,
    #[arg(long, default_value_t = 50.0)]
    pub cap_factor: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Metastable starting spin.
    #[arg(long, default_value_t = 2)]
    pub m: u8,
    /// Starting state (`mono:S` or snapshot file); default the monochrome m.
    #[arg(long)]
    pub start: Option<String>,
    /// stable (𝟏), metastable (other monochromes) or G (leave the initial cycle).
    #[arg(long, default_value = "stable")]
    pub target: String,
    /// Comma-separated observers: gate, other-gates, other-metastable,
    /// tube-exit, leave-cycle, stable.
    #[arg(long, default_value = "gate,other-metastable,tube-exit")]
    pub observe: String,
    #[arg(long, value_enum, default_value_t = EngineArg::Kmc)]
    pub engine: EngineArg,
}

#[derive(Debug, Subcommand)]
pub enum LandscapeCommand {
    /// Communication height between two states.
    Phi(PhiArgs),
    /// Stability level of a state.
    Vlevel(StateArgs),
    /// Cycle flooded from a local minimum, with its principal boundary.
    Flood(StateArgs),
    /// Exhaustive analysis of a small lattice.
    Oracle(OracleArgs),
    /// Initial cycle of a state towards a target set.
    InitialCycle(InitialCycleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PhiArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, default_value = "mono:2")]
    pub from: String,
    #[arg(long, default_value = "mono:1")]
    pub to: String,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// `mono:S` or a snapshot file.
    #[arg(long)]
    pub state: String,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Also compute essential saddles for each monochrome pair.
    #[arg(long)]
    pub essential: bool,
}

#[derive(Debug, Clone, Args)]
pub struct InitialCycleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, default_value = "mono:2")]
    pub state: String,
    /// stable or metastable.
    #[arg(long, default_value = "stable")]
    pub target: String,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// Snapshot file; q, K and L come from its header.
    pub snapshot: PathBuf,
    #[arg(long, default_value_t = 0.9)]
    pub h: f64,
    #[arg(long)]
    pub unsafe_params: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpiralArg {
    Cw,
    Ccw,
}

#[derive(Debug, Clone, Args)]
pub struct RefpathArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 2)]
    pub m: u8,
    #[arg(long, default_value_t = 0)]
    pub row: usize,
    #[arg(long, default_value_t = 0)]
    pub col: usize,
    #[arg(long, value_enum, default_value_t = SpiralArg::Cw)]
    pub spiral: SpiralArg,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// all, fast, mc, a criterion number 1-10, or its name.
    #[arg(default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for raw CSV tables.
    #[arg(long, value_name = "DIR")]
    pub raw: Option<PathBuf>,
    /// JSON file overriding manifest thresholds.
    #[arg(long, value_name = "FILE")]
    pub manifest: Option<PathBuf>,
    /// Include wall-clock times in the report and count budgets toward the
    /// exit code; the report is then no longer reproducible byte for byte.
    #[arg(long)]
    pub timings: bool,
}

/// What a command produced.
pub struct Output {
    pub text: String,
    pub code: i32,
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code: 0 success, 1 criterion failure, 2 usage or runtime error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match parse(&argv) {
        Ok(c) => c,
        Err(ParseFailure::Clap(e)) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
        Err(ParseFailure::Other(e)) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => out.code,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub enum ParseFailure {
    Clap(clap::Error),
    Other(Error),
}

fn command() -> clap::Command {
    fn overriding(c: clap::Command) -> clap::Command {
        c.args_override_self(true).mut_subcommands(overriding)
    }
    overriding(Cli::command())
}

/// Finds `--config` and the command path by scanning `argv`; when a config
/// file is given, its entries are inserted right after the command path.
pub fn parse(argv: &[String]) -> std::result::Result<Cli, ParseFailure> {
    let cmd = command();
    let mut config_path = None;
    let mut sub = &cmd;
    let mut at = 1.min(argv.len());
    for (i, tok) in argv.iter().enumerate().skip(1) {
        if let Some(v) = tok.strip_prefix("--config=") {
            config_path = Some(PathBuf::from(v));
        } else if tok == "--config" {
            config_path = argv.get(i + 1).map(PathBuf::from);
        } else if !tok.starts_with('-') {
            if let Some(next) = sub.find_subcommand(tok) {
                sub = next;
                at = i + 1;
            }
        }
    }
    let Some(path) = config_path else {
        return cmd.try_get_matches_from(argv).and_then(|m| Cli::from_arg_matches(&m)).map_err(ParseFailure::Clap);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| ParseFailure::Other(Error::Invalid(format!("{}: {e}", path.display()))))?;
    let entries = config::parse(&text).map_err(ParseFailure::Other)?;
    let mut injected = Vec::new();
    for (key, value) in entries {
        let flag = config::flag_name(&key);
        let arg = sub.get_arguments().find(|a| {
            a.get_long() == Some(flag.as_str()) || (flag.len() == 1 && a.get_short() == flag.chars().next())
        });
        let Some(arg) = arg.filter(|a| a.get_id() != "config") else {
            continue;
        };
        let long = arg.get_long().expect("every flag has a long form");
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            if value.parse::<bool>().map_err(|_| ParseFailure::Other(Error::Parse(format!("config {key}: not a bool"))))? {
                injected.push(format!("--{long}"));
            }
        } else {
            injected.push(format!("--{long}={value}"));
        }
    }
    let mut merged = argv[..at].to_vec();
    merged.extend(injected);
    merged.extend_from_slice(&argv[at..]);
    cmd.try_get_matches_from(&merged).and_then(|m| Cli::from_arg_matches(&m)).map_err(ParseFailure::Clap)
}

/// Runs a parsed command without touching stdout.
pub fn execute(cli: &Cli) -> Result<Output> {
    let ok = |text| Ok(Output { text, code: 0 });
    match &cli.command {
        Command::Simulate(a) => ok(simulate(a)?),
        Command::Landscape(l) => ok(landscape(l)?),
        Command::Classify(a) => ok(classify(a)?),
        Command::Refpath(a) => ok(refpath(a)?),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad {what} entry {t:?}"))))
        .collect()
}

/// `mono:S` or a snapshot file matching the model.
pub fn load_state(p: &Params, arg: &str) -> Result<Config> {
    let cfg = if let Some(s) = arg.strip_prefix("mono:") {
        let s: u8 = s.parse().map_err(|_| Error::Parse(format!("bad spin in {arg:?}")))?;
        p.monochrome(s)?
    } else {
        Config::from_snapshot(&read(Path::new(arg))?)?
    };
    p.check(&cfg)?;
    Ok(cfg)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Most frequent non-1 spin, ties to the smaller label; 2 for `𝟏`.
fn sea_spin(cfg: &Config) -> u8 {
    (2..=cfg.q()).max_by_key(|&s| (cfg.count(s), std::cmp::Reverse(s))).unwrap_or(2)
}

/// `# key=value` lines opening every CSV.
fn csv_preamble(command: &str, p: &Params, seed: Option<u64>) -> String {
    let e = Envelope::new(command, Some(p), seed, Value::Null);
    let mut out = format!("# {} {} {}\n", e.tool, e.version, e.command);
    let params = serde_json::to_value(&e.params).expect("serializes");
    let flags = serde_json::to_value(e.assumptions).expect("serializes");
    for v in [params, flags] {
        for (k, x) in v.as_object().into_iter().flatten() {
            let _ = writeln!(out, "# {k}={x}");
        }
    }
    if let Some(s) = seed {
        let _ = writeln!(out, "# seed={s}");
    }
    out
}

fn observer(p: &Params, m: u8, name: &str) -> Result<Predicate> {
    Ok(match name {
        "gate" => observers::gate(p, m),
        "other-gates" => observers::other_gates(p, m),
        "other-metastable" => observers::other_metastable(p, m),
        "tube-exit" => observers::tube_exit(p, m),
        "leave-cycle" => observers::exit_initial_cycle(p, m),
        "stable" => observers::monochrome(p, 1),
        _ => return Err(Error::Parse(format!("unknown observer {name:?}"))),
    })
}

fn simulate(a: &SimulateArgs) -> Result<String> {
    let p = a.model.params()?;
    if a.m < 2 || a.m > p.q {
        return Err(Error::Invalid(format!("m={} must be in 2..={}", a.m, p.q)));
    }
    let start = match &a.start {
        Some(s) => load_state(&p, s)?,
        None => p.monochrome(a.m)?,
    };
    let target: TargetSet = a.target.parse()?;
    let names: Vec<&str> = a.observe.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let obs = names.iter().map(|n| observer(&p, a.m, n)).collect::<Result<Vec<_>>>()?;
    let cap = a.cap.unwrap_or_else(|| default_cap(&p, a.beta, a.cap_factor));
    let engine = match a.engine {
        EngineArg::Naive => Engine::Naive,
        EngineArg::Kmc => Engine::Kmc,
    };
    let cfg = SimConfig::new(a.beta, a.seed, cap)?;
    let runs = run_batch(&p, &start, &[target.predicate(&p, a.m)], &obs, &cfg, a.n, engine)?;

    let mut out = csv_preamble("simulate", &p, Some(a.seed));
    let _ = writeln!(out, "# beta={} m={} target={:?} cap={cap} engine={:?}", a.beta, a.m, a.target, a.engine);
    let mut header = vec!["stream".to_string(), "steps".into(), "events".into(), "absorbed".into(), "capped".into(), "max_energy".into()];
    for n in &names {
        header.push(format!("{n}_step"));
        header.push(format!("{n}_before_target"));
    }
    out.push_str(&header.join(","));
    out.push('\n');
    for r in &runs {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            r.stream,
            r.steps,
            r.events,
            r.absorbed.is_some() as u8,
            r.capped as u8,
            p.level_value(r.max_level)
        );
        for (i, h) in r.first_hits.iter().enumerate() {
            let step = h.map(|t| t.to_string()).unwrap_or_default();
            let _ = write!(out, ",{step},{}", r.hit_before_absorption(i) as u8);
        }
        out.push('\n');
    }
    Ok(out)
}

fn landscape(cmd: &LandscapeCommand) -> Result<String> {
    let (name, p, result) = match cmd {
        LandscapeCommand::Phi(a) => {
            let p = a.model.params()?;
            let (from, to) = (load_state(&p, &a.from)?, load_state(&p, &a.to)?);
            let out = phi_between(&p, &from, &to, &a.budget.budget(&p, sea_spin(&from))?)?;
            ("landscape phi", p, serde_json::to_value(out))
        }
        LandscapeCommand::Vlevel(a) => {
            let p = a.model.params()?;
            let s = load_state(&p, &a.state)?;
            let out = stability_level(&p, &s, &a.budget.budget(&p, sea_spin(&s))?)?;
            ("landscape vlevel", p, serde_json::to_value(out))
        }
        LandscapeCommand::Flood(a) => {
            let p = a.model.params()?;
            let s = load_state(&p, &a.state)?;
            let out = flood_cycle(&p, &s, &a.budget.budget(&p, sea_spin(&s))?)?;
            ("landscape flood", p, serde_json::to_value(out))
        }
        LandscapeCommand::Oracle(a) => {
            let p = a.model.params()?;
            let one = p.monochrome(1)?;
            let monos = (2..=p.q).map(|s| p.monochrome(s)).collect::<Result<Vec<_>>>()?;
            let req = OracleRequests {
                pairs: monos.iter().map(|m| (m.clone(), one.clone())).collect(),
                initial: monos,
                essential: a.essential,
            };
            let (_, report) = exact_oracle(&p, &req)?;
            ("landscape oracle", p, serde_json::to_value(report))
        }
        LandscapeCommand::InitialCycle(a) => {
            let p = a.model.params()?;
            let s = load_state(&p, &a.state)?;
            let m = sea_spin(&s);
            let target = match a.target.parse::<TargetSet>()? {
                TargetSet::LeaveCycle => return Err(Error::Invalid("target G is defined by the initial cycle itself".into())),
                t => t.predicate(&p, m),
            };
            let out = initial_cycle(&p, &s, |c, l| target.test(c, l), &a.budget.budget(&p, m)?)?;
            let v = json!({"cycle": out, "trivial": out.is_trivial()});
            ("landscape initial-cycle", p, Ok(v))
        }
    };
    let result = result.map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(Envelope::new(name, Some(&p), None, result).to_json())
}

fn classify(a: &ClassifyArgs) -> Result<String> {
    let cfg = Config::from_snapshot(&read(&a.snapshot)?)?;
    let p = model_params(cfg.q(), cfg.geom().rows(), cfg.geom().cols(), a.h, a.unsafe_params)?;
    let gaps = (2..=p.q)
        .map(|s| Ok((s.to_string(), json!(energy_gap_vs_monochrome(&p, &cfg, s)?))))
        .collect::<Result<serde_json::Map<String, Value>>>()?;
    let result = json!({
        "energy": p.value(hamiltonian(&cfg)),
        "counts": (1..=p.q).map(|s| cfg.count(s)).collect::<Vec<_>>(),
        "gap_vs_monochrome": gaps,
        "local_minimum": local_min_class(&p, &cfg),
        "shapes": shape_class(&p, &cfg),
    });
    Ok(Envelope::new("classify", Some(&p), None, result).to_json())
}

fn refpath(a: &RefpathArgs) -> Result<String> {
    let p = a.model.params()?;
    let spiral = match a.spiral {
        SpiralArg::Cw => Spiral::Clockwise,
        SpiralArg::Ccw => Spiral::CounterClockwise,
    };
    let path = build_reference_path(&p, a.m, (a.row, a.col), spiral)?;
    let mut out = csv_preamble("refpath", &p, None);
    let _ = writeln!(out, "# m={} height={} argmax={:?}", a.m, path.relative_height(&p), path.argmax);
    out.push_str("step,n1,rel_energy\n");
    for (i, (c, r)) in path.states().zip(path.relative_values(&p)).enumerate() {
        let _ = writeln!(out, "{i},{},{r}", c.count(1));
    }
    Ok(out)
}

fn verify_cmd(a: &VerifyArgs) -> Result<Output> {
    let manifest: verify::Manifest = match &a.manifest {
        Some(path) => serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("manifest: {e}")))?,
        None => verify::Manifest::default(),
    };
    let ids = verify::resolve_suite(&a.suite)?;
    if let Some(dir) = &a.raw {
        std::fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
    }
    let mut verdicts = Vec::new();
    let mut all = true;
    for id in ids {
        let v = verify::run_criterion(id, &manifest, a.seed)?;
        let budget = manifest.budget(id);
        eprintln!("{}", v.line(budget));
        all &= v.passed && (!a.timings || v.seconds <= budget);
        if let Some(dir) = &a.raw {
            for t in &v.raw {
                let path = dir.join(format!("criterion{:02}_{}.csv", v.id, t.name));
                std::fs::write(&path, t.to_csv()).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            }
        }
        let mut json = serde_json::to_value(&v).expect("verdict serializes");
        if a.timings {
            json["seconds"] = json!(v.seconds);
            json["budget_seconds"] = json!(budget);
        }
        verdicts.push(json);
    }
    let result = json!({"suite": a.suite, "passed": all, "manifest": manifest, "verdicts": verdicts});
    let p = Params::new(manifest.q, manifest.k, manifest.l, manifest.h)?;
    Ok(Output { text: Envelope::new("verify", Some(&p), Some(a.seed), result).to_json(), code: if all { 0 } else { 1 } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn tmp(name: &str, text: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("pottsmeta-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    #[test]
    fn refpath_csv_peaks_at_step_seven() {
        let cli = parse(&argv("pottsmeta refpath --q 3 --K 9 --L 9 --h 0.9 --m 2")).ok().unwrap();
        let out = execute(&cli).unwrap().text;
        let rows: Vec<Vec<f64>> = out
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("step"))
            .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
            .collect();
        let top = rows.iter().map(|r| r[2]).fold(f64::MIN, f64::max);
        let at: Vec<f64> = rows.iter().filter(|r| (r[2] - top).abs() < 1e-9).map(|r| r[0]).collect();
        assert!((top - 5.7).abs() < 1e-9);
        assert_eq!(at, vec![7.0]);
        assert_eq!(rows[7][1], 7.0);
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let path = tmp("sim.conf", "q = 4\nK = 5\nL = 5\nbeta = 0.5\nN = 3\nunknown_key = 1\nunsafe_params = false\n");
        let cli = parse(&argv(&format!("pottsmeta simulate --config {} --K 4 --L 4", path.display()))).ok().unwrap();
        let Command::Simulate(a) = &cli.command else { panic!() };
        assert_eq!((a.model.q, a.model.k, a.model.l, a.beta), (4, 4, 4, 0.5));
        let json = tmp("sim.json", r#"{"beta": 1.5, "observe": ["gate"], "unsafe_params": true}"#);
        let cli = parse(&argv(&format!("pottsmeta --config {} simulate", json.display()))).ok().unwrap();
        let Command::Simulate(a) = &cli.command else { panic!() };
        assert_eq!((a.beta, a.observe.as_str(), a.model.unsafe_params), (1.5, "gate", true));
    }

    #[test]
    fn oracle_report_finds_unique_ground_state() {
        let cli = parse(&argv("pottsmeta landscape oracle --q 3 --K 3 --L 3 --h 0.9")).ok().unwrap();
        let v: Value = serde_json::from_str(&execute(&cli).unwrap().text).unwrap();
        let stable = v["result"]["stable"].as_array().unwrap();
        assert_eq!(stable.len(), 1);
        assert!(stable[0]["rows"].as_array().unwrap().iter().all(|r| r == "1 1 1"));
        assert_eq!(v["assumptions"]["lattice_at_least_three_critical"], false);
    }

    #[test]
    fn degenerate_field_needs_unsafe_flag() {
        let cli = parse(&argv("pottsmeta refpath --h 0.5")).ok().unwrap();
        assert!(matches!(execute(&cli), Err(Error::DegenerateField(_))));
        let cli = parse(&argv("pottsmeta refpath --h 0.5 --unsafe-params")).ok().unwrap();
        assert!(execute(&cli).unwrap().text.contains("# unsafe_params=true"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(argv("pottsmeta verify nope")), 2);
        assert_eq!(run(argv("pottsmeta frobnicate")), 2);
        assert_eq!(run(argv("pottsmeta --help")), 0);
    }

    #[test]
    fn simulate_csv_has_one_row_per_trajectory() {
        let cli = parse(&argv("pottsmeta simulate --q 3 --K 4 --L 4 --beta 0.5 -N 5 --seed 3 --observe gate,stable")).ok().unwrap();
        let text = execute(&cli).unwrap().text;
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], "stream,steps,events,absorbed,capped,max_energy,gate_step,gate_before_target,stable_step,stable_before_target");
        assert_eq!(body.len(), 6);
        assert_eq!(text, execute(&cli).unwrap().text);
    }

    #[test]
    fn classify_reports_gate() {
        let mut c = Params::new(3, 9, 9, 0.9).unwrap().monochrome(2).unwrap();
        for (r, col) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (1, 3)] {
            c.set(r * 9 + col, 1);
        }
        let path = tmp("gate.txt", &c.to_snapshot());
        let cli = parse(&argv(&format!("pottsmeta classify {}", path.display()))).ok().unwrap();
        let v: Value = serde_json::from_str(&execute(&cli).unwrap().text).unwrap();
        assert_eq!(v["result"]["shapes"]["w_gate"], json!([2]));
        assert!((v["result"]["gap_vs_monochrome"]["2"].as_f64().unwrap() - 5.7).abs() < 1e-9);
    }
}
