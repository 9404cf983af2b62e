use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qgame::catalog::{builtin, builtins, classical_analysis, validate, Cell, GameSpec};
use qgame::claims::{run_claims, run_criterion, ClaimTable, ClaimsConfig};
use qgame::equilibria::{
    epsilon_ne_scan, format_sig12, landscape, write_landscape_csv, GameSetup, Profile,
    StrategyGrid, DEFAULT_EPSILON,
};
use qgame::ewl::{parse_angle, CorrelationKind, InputBits, StrategyParams};
use qgame::monty::{
    bob_payoff_closed_form, play_monty, InitialState, MontyConfig, MontyOperator, SwitchMix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Angles typed with a few decimals (1.5708 for π/2) may overshoot the range
/// by this much; they are clamped instead of rejected.
const INPUT_ANGLE_SLACK: f64 = 1e-4;

#[derive(Parser)]
#[command(
    name = "qgame",
    version,
    about = "Quantum 2x2 games with quantum and classical correlations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the builtin games with their classical analysis
    Catalog(CatalogArgs),
    /// Outcome distribution and payoffs for one strategy profile
    Analyze(AnalyzeArgs),
    /// Scan the strategy space for epsilon-Nash equilibria
    NeScan(ScanArgs),
    /// Write the payoff landscape over the grid as CSV
    Sweep(SweepArgs),
    /// Play the qutrit Monty Hall game
    Monty(MontyArgs),
    /// Check every reference result and print a pass/fail table
    VerifyClaims(ClaimsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Output {
    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!("unsupported --format for this command");
        }
        Ok(f)
    }

    fn emit(&self, bytes: &[u8]) -> Result<()> {
        match &self.out {
            Some(path) => {
                fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
            }
            None => io::stdout()
                .write_all(bytes)
                .context("cannot write to stdout"),
        }
    }
}

#[derive(Args)]
struct GameArgs {
    /// Builtin game name (PD, CG, SH, BoS, MP, SD)
    #[arg(value_name = "GAME")]
    name: Option<String>,
    #[arg(long = "game", value_name = "NAME", conflicts_with = "name")]
    game_flag: Option<String>,
    /// Game definition in JSON
    #[arg(long, value_name = "PATH", conflicts_with_all = ["name", "game_flag"])]
    game_file: Option<PathBuf>,
    #[arg(long, value_parser = parse_kind, conflicts_with_all = ["qc", "cc", "none"])]
    correlation: Option<CorrelationKind>,
    #[arg(long, conflicts_with_all = ["cc", "none"])]
    qc: bool,
    #[arg(long, conflicts_with = "none")]
    cc: bool,
    #[arg(long)]
    none: bool,
    /// Input bits fg
    #[arg(long, default_value = "00", value_parser = parse_bits)]
    bits: InputBits,
}

impl GameArgs {
    fn game(&self) -> Result<GameSpec> {
        if let Some(path) = &self.game_file {
            return load_game(path);
        }
        let name = self
            .name
            .as_deref()
            .or(self.game_flag.as_deref())
            .ok_or_else(|| anyhow!("no game given (use a name or --game-file)"))?;
        Ok(builtin(name)?)
    }

    fn kind(&self) -> CorrelationKind {
        match (self.correlation, self.qc, self.cc, self.none) {
            (Some(k), ..) => k,
            (_, _, true, _) => CorrelationKind::Classical,
            (_, _, _, true) => CorrelationKind::None,
            _ => CorrelationKind::Quantum,
        }
    }

    fn setup(&self) -> Result<GameSetup> {
        Ok(GameSetup::new(self.game()?, self.kind()).with_bits(self.bits))
    }
}

#[derive(Args)]
struct CatalogArgs {
    /// Only this game
    #[arg(long)]
    game: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    game: GameArgs,
    /// θA,φA,θB,φB in radians, or two strategies such as isy,isy
    #[arg(long, allow_hyphen_values = true)]
    profile: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value = "65x33", value_parser = parse_grid)]
    grid: StrategyGrid,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value = "65x33", value_parser = parse_grid)]
    grid: StrategyGrid,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct MontyArgs {
    #[arg(long, default_value = "entangled", value_parser = parse_initial)]
    initial: InitialState,
    /// Switch-mix angle: 0 always switches, π/2 always stays
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    gamma: String,
    /// identity, cyclic, fair, random, or a JSON file with a 3x3 matrix of [re, im]
    #[arg(long, default_value = "identity")]
    alice: String,
    #[arg(long, default_value = "identity")]
    bob: String,
    #[arg(long, value_enum, default_value = "channel")]
    mix: MixArg,
    /// Seed for `random` operators
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum MixArg {
    Channel,
    Coherent,
}

#[derive(Args)]
struct ClaimsArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Replace the builtin game of the same name (repeatable)
    #[arg(long, value_name = "PATH")]
    game_file: Vec<PathBuf>,
    /// Run only these criteria (repeatable)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=11))]
    criterion: Vec<u8>,
    #[arg(long, value_parser = parse_grid)]
    grid: Option<StrategyGrid>,
    #[command(flatten)]
    output: Output,
}

fn parse_kind(s: &str) -> std::result::Result<CorrelationKind, String> {
    s.parse().map_err(|e: qgame::Error| e.to_string())
}

fn parse_bits(s: &str) -> std::result::Result<InputBits, String> {
    s.parse().map_err(|e: qgame::Error| e.to_string())
}

fn parse_grid(s: &str) -> std::result::Result<StrategyGrid, String> {
    s.parse().map_err(|e: qgame::Error| e.to_string())
}

fn parse_initial(s: &str) -> std::result::Result<InitialState, String> {
    s.parse().map_err(|e: qgame::Error| e.to_string())
}

fn load_game(path: &Path) -> Result<GameSpec> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    GameSpec::from_json(&text).with_context(|| format!("invalid game file {}", path.display()))
}

fn angle_in(name: &str, value: f64, hi: f64) -> Result<f64> {
    if !value.is_finite() || value < -INPUT_ANGLE_SLACK || value > hi + INPUT_ANGLE_SLACK {
        bail!("{name} = {value} outside [0, {hi:.6}]");
    }
    Ok(value.clamp(0.0, hi))
}

fn parse_strategy(s: &str) -> Result<StrategyParams> {
    if let Some(named) = StrategyParams::named(s) {
        return Ok(named);
    }
    let (t, p) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("bad strategy `{s}` (expected id, isy, isz or θ:φ)"))?;
    Ok(StrategyParams::new(
        angle_in("theta", parse_angle(t)?, PI)?,
        angle_in("phi", parse_angle(p)?, FRAC_PI_2)?,
    )?)
}

fn parse_profile(s: &str) -> Result<Profile> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok(Profile::new(parse_strategy(a)?, parse_strategy(b)?)),
        [ta, pa, tb, pb] => {
            let angle = |v: &str, hi, name| -> Result<f64> { angle_in(name, parse_angle(v)?, hi) };
            Ok(Profile::new(
                StrategyParams::new(angle(ta, PI, "thetaA")?, angle(pa, FRAC_PI_2, "phiA")?)?,
                StrategyParams::new(angle(tb, PI, "thetaB")?, angle(pb, FRAC_PI_2, "phiB")?)?,
            ))
        }
        _ => bail!("bad profile `{s}` (expected θA,φA,θB,φB or two strategies like isy,isy)"),
    }
}

fn monty_operator(spec: &str, rng: &mut ChaCha8Rng) -> Result<MontyOperator> {
    if spec.eq_ignore_ascii_case("random") {
        return Ok(MontyOperator::random(rng));
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {spec}"))?;
        return MontyOperator::from_json(&text)
            .with_context(|| format!("invalid operator file {spec}"));
    }
    Ok(MontyOperator::named(spec)?)
}

fn to_json(v: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s.into_bytes()
}

fn catalog(args: &CatalogArgs) -> Result<()> {
    let games = match &args.game {
        Some(name) => vec![builtin(name)?],
        None => builtins(),
    };
    let format = args
        .output
        .format(Format::Text, &[Format::Text, Format::Json])?;
    if format == Format::Json {
        let entries: Vec<serde_json::Value> = games
            .iter()
            .map(|g| {
                json!({
                    "game": serde_json::from_str::<serde_json::Value>(&g.to_json()).expect("spec json"),
                    "constraints": validate(g),
                    "classical": classical_analysis(g),
                })
            })
            .collect();
        return args.output.emit(&to_json(&json!(entries)));
    }

    let mut out = String::new();
    for g in &games {
        out.push_str(&format!("{}\n", g.name));
        for cell in Cell::all() {
            let p = g.payoffs[cell.outcome()];
            out.push_str(&format!(
                "  {:<7} ({}, {})\n",
                g.cell_label(cell),
                format_sig12(p.alice),
                format_sig12(p.bob)
            ));
        }
        let mut flags = Vec::new();
        if g.flags.symmetric {
            flags.push("symmetric");
        }
        if g.flags.zero_sum {
            flags.push("zero-sum");
        }
        if g.flags.discoordination {
            flags.push("discoordination");
        }
        out.push_str(&format!(
            "  flags: {}\n",
            if flags.is_empty() {
                "-".into()
            } else {
                flags.join(", ")
            }
        ));
        for c in &validate(g).checks {
            out.push_str(&format!(
                "  constraint {}: {}\n",
                c.name,
                if c.passed { "ok" } else { "violated" }
            ));
        }
        let a = classical_analysis(g);
        let labels = |cells: &[Cell]| -> String {
            if cells.is_empty() {
                "none".into()
            } else {
                cells
                    .iter()
                    .map(|&c| g.cell_label(c))
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        out.push_str(&format!(
            "  pure NE: {}\n",
            if a.pure_ne.is_empty() {
                "no pure NE".into()
            } else {
                labels(&a.pure_ne)
            }
        ));
        match &a.mixed_ne {
            Some(m) => {
                out.push_str(&format!(
                    "  mixed NE: ({}, {}) -> ({}, {})\n",
                    format_sig12(m.p_alice),
                    format_sig12(m.q_bob),
                    format_sig12(m.payoffs.alice),
                    format_sig12(m.payoffs.bob)
                ));
                if g.name == "SD" {
                    out.push_str(
                        "  erratum: the figures (0.25, -0.25) sometimes quoted for this game are not its mixed equilibrium\n",
                    );
                }
            }
            None => out.push_str("  mixed NE: none\n"),
        }
        out.push_str(&format!(
            "  Pareto optimal: {}\n",
            labels(&a.pareto_optimal)
        ));
    }
    args.output.emit(out.as_bytes())
}

fn analyze(args: &AnalyzeArgs) -> Result<()> {
    let setup = args.game.setup()?;
    let profile = parse_profile(&args.profile)?;
    let dist = setup.distribution(profile.alice, profile.bob);
    let pay = setup.profile_payoffs(&profile);
    let format = args
        .output
        .format(Format::Text, &[Format::Text, Format::Json])?;
    let bytes = if format == Format::Json {
        to_json(&json!({
            "game": setup.game().name,
            "correlation": setup.kind(),
            "bits": setup.bits().to_string(),
            "profile": profile,
            "distribution": dist,
            "payoffs": pay,
        }))
    } else {
        let p = dist.as_array();
        format!(
            "game {} correlation {} bits {}\nprofile {}\nP00 {}  P01 {}  P10 {}  P11 {}\npayoffs ({}, {})\n",
            setup.game().name,
            setup.kind().short_name(),
            setup.bits(),
            profile,
            format_sig12(p[0]),
            format_sig12(p[1]),
            format_sig12(p[2]),
            format_sig12(p[3]),
            format_sig12(pay.alice),
            format_sig12(pay.bob)
        )
        .into_bytes()
    };
    args.output.emit(&bytes)
}

fn ne_scan(args: &ScanArgs) -> Result<()> {
    let setup = args.game.setup()?;
    let scan = epsilon_ne_scan(&setup, &args.grid, args.epsilon)?;
    let format = args
        .output
        .format(Format::Json, &[Format::Json, Format::Text])?;
    let bytes = if format == Format::Json {
        let mut s = scan.to_json();
        s.push('\n');
        s.into_bytes()
    } else {
        let mut out = format!(
            "{} {} bits {} grid {} epsilon {}: {} component(s)\n",
            scan.game,
            scan.correlation.short_name(),
            scan.bits,
            scan.grid,
            scan.epsilon,
            scan.components.len()
        );
        for c in &scan.components {
            out.push_str(&format!(
                "  {:<6} {} payoff ({}, {}) members {} gain {:.2e}{}\n",
                c.geometry.to_string(),
                c.representative,
                format_sig12(c.representative_payoffs.alice),
                format_sig12(c.representative_payoffs.bob),
                c.member_count,
                c.max_unilateral_gain,
                if c.focal { " focal" } else { "" }
            ));
        }
        out.into_bytes()
    };
    args.output.emit(&bytes)
}

fn sweep(args: &SweepArgs) -> Result<()> {
    args.output.format(Format::Csv, &[Format::Csv])?;
    let rows = landscape(&args.game.setup()?, &args.grid);
    let mut buf = Vec::new();
    write_landscape_csv(&rows, &mut buf)?;
    args.output.emit(&buf)
}

fn monty(args: &MontyArgs) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let alice = monty_operator(&args.alice, &mut rng)?;
    let bob = monty_operator(&args.bob, &mut rng)?;
    let gamma = parse_angle(&args.gamma)?;
    let gamma =
        angle_in("gamma", gamma, FRAC_PI_2).map_err(|_| qgame::Error::GammaOutOfRange(gamma))?;
    let mix = match args.mix {
        MixArg::Channel => SwitchMix::Channel,
        MixArg::Coherent => SwitchMix::Coherent,
    };
    let cfg = MontyConfig::new(args.initial, alice.clone(), bob.clone(), gamma)?.with_mix(mix);
    let result = play_monty(&cfg)?;
    let bob_is_identity = bob
        .matrix()
        .max_abs_diff(MontyOperator::identity().matrix())
        < 1e-12;
    let closed = (bob_is_identity && args.initial != InitialState::Uncorrelated)
        .then(|| bob_payoff_closed_form(&alice, gamma))
        .transpose()?;

    let format = args
        .output
        .format(Format::Text, &[Format::Text, Format::Json])?;
    let bytes = if format == Format::Json {
        to_json(&json!({
            "initial": args.initial,
            "gamma": gamma,
            "alice": alice,
            "bob": bob,
            "mix": mix,
            "bob_win": result.bob_win_probability,
            "closed_form": closed,
            "total_weight": result.total_weight,
            "branch_weights": result.branch_weights,
        }))
    } else {
        let mut out = format!(
            "initial {} gamma {}\nbob_win {}\n",
            args.initial,
            format_sig12(gamma),
            format_sig12(result.bob_win_probability)
        );
        if let Some(c) = closed {
            out.push_str(&format!("closed_form {}\n", format_sig12(c)));
        }
        out.push_str(&format!(
            "total_weight {}\n",
            format_sig12(result.total_weight)
        ));
        out.into_bytes()
    };
    args.output.emit(&bytes)
}

fn verify_claims(args: &ClaimsArgs) -> Result<bool> {
    let mut cfg = ClaimsConfig::default();
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(grid) = args.grid {
        cfg.grid = grid;
    }
    for path in &args.game_file {
        cfg = cfg.with_override(load_game(path)?);
    }
    let table = if args.criterion.is_empty() {
        run_claims(&cfg)?
    } else {
        let mut criteria = args.criterion.clone();
        criteria.sort_unstable();
        criteria.dedup();
        let mut rows = Vec::new();
        for c in criteria {
            rows.extend(run_criterion(&cfg, c)?);
        }
        ClaimTable { rows }
    };
    let format = args
        .output
        .format(Format::Text, &[Format::Text, Format::Json])?;
    let bytes = if format == Format::Json {
        to_json(&json!(table))
    } else {
        table.render().into_bytes()
    };
    args.output.emit(&bytes)?;
    Ok(table.all_passed())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Catalog(a) => catalog(a)?,
        Command::Analyze(a) => analyze(a)?,
        Command::NeScan(a) => ne_scan(a)?,
        Command::Sweep(a) => sweep(a)?,
        Command::Monty(a) => monty(a)?,
        Command::VerifyClaims(a) => {
            if !verify_claims(a)? {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", line.trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
