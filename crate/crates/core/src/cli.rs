//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::chain::{build_disorder, ChainGeometry, DisorderRealization, HalfTime, PhaseVector};
use crate::design::{advantage_estimate, default_inputs, Evaluation};
use crate::ergodicity::exact::local_matrix;
use crate::ergodicity::{
    halfinteger_ergodicity_check, phase_statistics, single_site_phase, subsystem_check, transition_histogram,
    twirl_invariance_test, weak_ergodicity_check, zero_site_stats, Dressing, ExactEnsemble, InitialState, L1Method,
    TwirlStatistic,
};
use crate::error::{Error, Result};
use crate::montecarlo::{rng_from_seed, McConfig, DEFAULT_STREAMS};
use crate::symplectic::{
    block_rank_histogram, count_subspaces, group_order, sample_uniform, single_rank_tail_bound, tail_rows, Block,
};
use crate::walls::{
    confinement_test, counterexample_fixture, exact_wall_count_n1, fixture_identities, is_right_wall,
    lightcone_grid, scan_chain, wall_probability, GridMode, Side, WallKind, WallReport,
};
use crate::{SCHEMA, VERSION};

/// Output format of an artifact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Pgm,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "floquet", version, about = "Floquet random Clifford chains in phase space")]
pub struct Cli {
    /// Base seed; drawn at random and printed to stderr when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Parallel Monte Carlo streams; results depend only on (seed, streams).
    #[arg(long, global = true, default_value_t = DEFAULT_STREAMS)]
    pub streams: usize,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Exit with status 1 when a bound check fails.
    #[arg(long, global = true)]
    pub assert: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uniform symplectic matrices, or the rank histogram of one of their blocks.
    Sample(SampleArgs),
    /// Group order of Sp(2n), or the number of k-dimensional subspaces of Z_2^n.
    Order(OrderArgs),
    /// One trajectory of a single realization.
    Evolve(EvolveArgs),
    /// Ergodicity experiments.
    #[command(subcommand)]
    Ergo(ErgoCommand),
    /// Wall detection, probabilities and lightcones.
    #[command(subcommand)]
    Walls(WallsCommand),
    /// Distinguishability from a Haar-random unitary.
    #[command(subcommand)]
    Design(DesignCommand),
    /// Exact distributions of the L=2, N=1 chain.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long = "L", alias = "l")]
    pub l: usize,
    #[arg(long = "N", alias = "n")]
    pub n: usize,
}

impl ChainArgs {
    fn geometry(&self) -> Result<ChainGeometry> {
        ChainGeometry::new(self.l, self.n)
    }
}

fn parse_time(s: &str) -> std::result::Result<HalfTime, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_initial(s: &str) -> std::result::Result<InitialState, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub chain: ChainArgs,
    /// Time as `5/2`, `2.5` or `t2=5`.
    #[arg(long, value_parser = parse_time)]
    pub t: HalfTime,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// `local:x`, `full`, or a Pauli string with `|` between sites.
    #[arg(long, value_parser = parse_initial, default_value = "local:0")]
    pub initial: InitialState,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Matrices are 2n x 2n.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    /// Emit the rank histogram of a block of Sp(4n) elements over `--samples` draws.
    #[arg(long, value_enum, ignore_case = true)]
    pub ranks: Option<Block>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long)]
    pub n: usize,
    /// Count k-dimensional subspaces of Z_2^n instead.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long, value_parser = parse_time)]
    pub t: HalfTime,
    #[arg(long, value_parser = parse_initial, default_value = "local:0")]
    pub initial: InitialState,
    /// Realization JSON to use instead of drawing one from the seed.
    #[arg(long)]
    pub realization: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ErgoCommand {
    /// Local seed before or around scrambling, against the causal window.
    Weak {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = L1Method::Orbit)]
        method: L1Method,
    },
    /// Half-integer time in [t_scr, 2 t_scr], against all nonzero vectors.
    Half {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = L1Method::Orbit)]
        method: L1Method,
    },
    /// Projection onto sites 0..ls.
    Subsystem {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        ls: usize,
        #[arg(long, value_enum, default_value_t = L1Method::Orbit)]
        method: L1Method,
    },
    /// Symplectic-form phases on sites 0..ls, or on one site with `--site`.
    Phases {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 2)]
        ls: usize,
        #[arg(long)]
        site: Option<usize>,
    },
    /// Per-site zero frequencies.
    Zeros {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Invariance of a statistic under fixed local dressing drawn from the seed.
    Twirl {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = TwirlKind::Zeros)]
        statistic: TwirlKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TwirlKind {
    /// Zero pattern of the outcome.
    Zeros,
    /// Outcome projected onto site 0.
    Window,
}

#[derive(Debug, Subcommand)]
pub enum WallsCommand {
    /// Walls of one realization, optionally with confinement tests.
    Scan {
        #[command(flatten)]
        chain: ChainArgs,
        /// Trials per wall for a confinement test; none when 0.
        #[arg(long, default_value_t = 0)]
        trials: u64,
        /// Half-steps per confinement trial; `6L` when absent.
        #[arg(long)]
        t2max: Option<u32>,
    },
    /// Right-wall probability of a random gate pair.
    Prob {
        #[arg(long)]
        n: usize,
        /// Enumerate all 720^2 pairs (N = 1 only).
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Support of one trajectory at every half-step.
    Lightcone {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        t2max: u32,
        #[arg(long, value_parser = parse_initial, default_value = "local:0")]
        initial: InitialState,
        #[arg(long, value_enum, default_value_t = GridMode::Site)]
        mode: GridMode,
    },
    /// Identities and confinement failure of the N = 2 non-wall fixture.
    Fixture {
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum DesignCommand {
    /// Worst l1 distance to the Haar reference and the implied guessing probability.
    Check {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, value_parser = parse_time)]
        t: HalfTime,
        /// Exact law instead of sampling.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Repeatable; one X seed per twirl orbit when absent.
        #[arg(long, value_parser = parse_initial)]
        initial: Vec<InitialState>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Exact law of `S(t) u0` over all 720^2 realizations of the L=2, N=1 chain.
    Enumerate {
        #[arg(long, value_parser = parse_time)]
        t: HalfTime,
        #[arg(long, value_parser = parse_initial, default_value = "local:0")]
        initial: InitialState,
    },
}

/// Text of an artifact and whether its checks passed.
struct Artifact {
    text: String,
    pass: bool,
}

impl Artifact {
    fn new(text: String, pass: bool) -> Self {
        Self { text, pass }
    }

    fn json<T: Serialize>(value: &T, pass: bool) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("serializable report");
        text.push('\n');
        Self { text, pass }
    }
}

struct Context {
    seed: u64,
    streams: usize,
    format: Option<Format>,
}

impl Context {
    fn mc(&self, samples: u64) -> McConfig {
        McConfig::new(samples, self.seed).with_streams(self.streams)
    }

    /// The requested format if allowed, else the first allowed one.
    fn format(&self, allowed: &[Format]) -> Result<Format> {
        match self.format {
            None => Ok(allowed[0]),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(f) => Err(Error::InvalidArgument(format!("format {f:?} not available here; use one of {allowed:?}"))),
        }
    }

    fn realization(&self, g: ChainGeometry) -> DisorderRealization {
        build_disorder(g, &mut rng_from_seed(self.seed))
    }
}

/// Parses the arguments, runs the command and returns the exit status: 2 for
/// configuration errors, 1 for a failed check under `--assert`, 0 otherwise.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let seed = cli.seed.unwrap_or_else(rand::random);
    if cli.seed.is_none() {
        eprintln!("seed: {seed}");
    }
    let ctx = Context {
        seed,
        streams: cli.streams.max(1),
        format: cli.format,
    };
    let artifact = match run(&cli.command, &ctx) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, artifact.text.as_bytes()),
        None => std::io::stdout().write_all(artifact.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }
    let code = status(cli.assert, artifact.pass);
    if code != 0 {
        eprintln!("check failed");
    }
    code
}

fn status(assert: bool, pass: bool) -> i32 {
    i32::from(assert && !pass)
}

fn run(command: &Command, ctx: &Context) -> Result<Artifact> {
    match command {
        Command::Sample(a) => sample(a, ctx),
        Command::Order(a) => order(a, ctx),
        Command::Evolve(a) => evolve(a, ctx),
        Command::Ergo(c) => ergo(c, ctx),
        Command::Walls(c) => walls(c, ctx),
        Command::Design(c) => design(c, ctx),
        Command::Oracle(c) => oracle(c, ctx),
    }
}

fn sample(a: &SampleArgs, ctx: &Context) -> Result<Artifact> {
    if a.n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if let Some(block) = a.ranks {
        let hist = block_rank_histogram(a.n, block, &ctx.mc(a.samples));
        let rows = tail_rows(&hist, 2 * a.n, |k| single_rank_tail_bound(a.n, k));
        let pass = rows.iter().all(|r| r.pass);
        return match ctx.format(&[Format::Csv, Format::Json])? {
            Format::Csv => {
                let mut s = String::from("rank,count,frequency,paper_bound,pass\r\n");
                for r in &rows {
                    writeln!(s, "{},{},{},{},{}\r", r.rank, r.count, r.frequency, r.paper_bound, r.pass).expect("string write");
                }
                Ok(Artifact::new(s, pass))
            }
            _ => Ok(Artifact::json(
                &json!({
                    "n": a.n, "block": block, "samples": a.samples, "seed": ctx.seed, "streams": ctx.streams,
                    "rows": rows, "pass": pass, "schema": SCHEMA, "version": VERSION,
                }),
                pass,
            )),
        };
    }
    let mut rng = rng_from_seed(ctx.seed);
    let matrices: Vec<String> = (0..a.count).map(|_| sample_uniform(a.n, &mut rng).matrix().to_text()).collect();
    match ctx.format(&[Format::Json, Format::Text])? {
        Format::Text => Ok(Artifact::new(matrices.join("\n"), true)),
        _ => Ok(Artifact::json(
            &json!({
                "n": a.n, "count": a.count, "seed": ctx.seed, "streams": 1,
                "matrices": matrices, "schema": SCHEMA, "version": VERSION,
            }),
            true,
        )),
    }
}

fn order(a: &OrderArgs, ctx: &Context) -> Result<Artifact> {
    ctx.format(&[Format::Text])?;
    let value = match a.k {
        Some(k) => count_subspaces(a.n, k)?,
        None => group_order(a.n),
    };
    Ok(Artifact::new(format!("{}\n", value.0), true))
}

fn evolve(a: &EvolveArgs, ctx: &Context) -> Result<Artifact> {
    ctx.format(&[Format::Json])?;
    let g = a.chain.geometry()?;
    let realization = match &a.realization {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            let r = DisorderRealization::from_json(&text)?;
            if r.geometry() != g {
                return Err(Error::InvalidArgument("realization geometry differs from --L/--N".into()));
            }
            r
        }
        None => ctx.realization(g),
    };
    let u0 = a.initial.resolve(g)?;
    let steps: Vec<_> = realization
        .trajectory(&u0, a.t.t2())?
        .iter()
        .enumerate()
        .map(|(t2, u)| json!({"t2": t2, "pauli": u.to_pauli(), "hex": u.bits().to_hex(), "support": u.support()}))
        .collect();
    let file = realization.to_file(Some(ctx.seed));
    Ok(Artifact::json(
        &json!({
            "L": g.l(), "N": g.n(), "t2": a.t.t2(), "seed": ctx.seed, "streams": ctx.streams,
            "initial": u0.to_pauli(), "realization": file, "trajectory": steps,
            "schema": SCHEMA, "version": VERSION,
        }),
        true,
    ))
}

fn histogram_csv(run: &RunArgs, ctx: &Context, g: ChainGeometry) -> Result<Artifact> {
    let u0 = run.initial.resolve(g)?;
    let hist = transition_histogram(&u0, run.t, &ctx.mc(run.samples), None)?;
    let mut s = String::from("outcome_hex,count,frequency\r\n");
    for (k, c) in hist.iter() {
        writeln!(s, "{},{},{}\r", k.to_hex(), c, c as f64 / hist.total().max(1) as f64).expect("string write");
    }
    Ok(Artifact::new(s, true))
}

fn ergo(c: &ErgoCommand, ctx: &Context) -> Result<Artifact> {
    let run = match c {
        ErgoCommand::Weak { run, .. }
        | ErgoCommand::Half { run, .. }
        | ErgoCommand::Subsystem { run, .. }
        | ErgoCommand::Phases { run, .. }
        | ErgoCommand::Zeros { run }
        | ErgoCommand::Twirl { run, .. } => run,
    };
    let g = run.chain.geometry()?;
    let cfg = ctx.mc(run.samples);
    let u0 = run.initial.resolve(g)?;
    let histogram_ok = matches!(c, ErgoCommand::Weak { .. } | ErgoCommand::Half { .. } | ErgoCommand::Subsystem { .. });
    let allowed: &[Format] = match c {
        ErgoCommand::Zeros { .. } => &[Format::Json, Format::Csv],
        _ if histogram_ok => &[Format::Json, Format::Csv],
        _ => &[Format::Json],
    };
    if ctx.format(allowed)? == Format::Csv && histogram_ok {
        return histogram_csv(run, ctx, g);
    }
    match c {
        ErgoCommand::Weak { method, .. } => {
            let x0 = match run.initial {
                InitialState::Local(x) => x,
                _ => return Err(Error::InvalidArgument("weak check needs --initial local:x".into())),
            };
            let r = weak_ergodicity_check(x0, run.t, g, &cfg, *method)?;
            Ok(Artifact::json(&r, r.pass))
        }
        ErgoCommand::Half { method, .. } => {
            let r = halfinteger_ergodicity_check(&u0, run.t, &cfg, *method)?;
            Ok(Artifact::json(&r, r.pass))
        }
        ErgoCommand::Subsystem { ls, method, .. } => {
            let r = subsystem_check(&u0, *ls, run.t, &cfg, *method)?;
            Ok(Artifact::json(&r, r.pass))
        }
        ErgoCommand::Phases { ls, site, .. } => {
            let r = match site {
                Some(x) => single_site_phase(&u0, *x, run.t, &cfg)?,
                None => phase_statistics(&u0, *ls, run.t, &cfg)?,
            };
            Ok(Artifact::json(&r, r.pass))
        }
        ErgoCommand::Zeros { .. } => {
            let r = zero_site_stats(&u0, run.t, &cfg)?;
            match ctx.format(allowed)? {
                Format::Csv => Ok(Artifact::new(r.to_csv(), r.pass)),
                _ => Ok(Artifact::json(&r, r.pass)),
            }
        }
        ErgoCommand::Twirl { statistic, .. } => {
            let mut rng = rng_from_seed(ctx.seed ^ 0x5457_4952_4c00_0000);
            let mut locals = || -> Vec<_> { (0..g.l()).map(|_| sample_uniform(g.site_bits() / 2, &mut rng)).collect() };
            let dressing = if run.t.is_integer() {
                Dressing::Conjugation(local_matrix(g, &locals()))
            } else {
                let pre = local_matrix(g, &locals());
                Dressing::TwoSided { pre, post: local_matrix(g, &locals()) }
            };
            let stat = match statistic {
                TwirlKind::Zeros => TwirlStatistic::ZeroSites,
                TwirlKind::Window => TwirlStatistic::TransitionWindow(vec![0]),
            };
            let r = twirl_invariance_test(&stat, &u0, run.t, &dressing, &cfg)?;
            Ok(Artifact::json(&r, r.pass))
        }
    }
}

fn walls(c: &WallsCommand, ctx: &Context) -> Result<Artifact> {
    match c {
        WallsCommand::Scan { chain, trials, t2max } => {
            let g = chain.geometry()?;
            ctx.format(&[Format::Json])?;
            let r = ctx.realization(g);
            let found = scan_chain(&r)?;
            let t2max = t2max.unwrap_or(6 * g.l() as u32);
            let mut reports = Vec::new();
            if *trials > 0 {
                for w in &found {
                    reports.push(confinement_test(&r, w, t2max, &ctx.mc(*trials))?);
                }
            }
            let pass = reports.iter().all(|r| r.pass);
            Ok(Artifact::json(
                &json!({
                    "L": g.l(), "N": g.n(), "seed": ctx.seed, "streams": ctx.streams,
                    "walls": found, "confinement": reports, "pass": pass,
                    "schema": SCHEMA, "version": VERSION,
                }),
                pass,
            ))
        }
        WallsCommand::Prob { n, exact, samples } => {
            if *exact {
                if *n != 1 {
                    return Err(Error::InvalidArgument("exact enumeration needs --n 1".into()));
                }
                let e = exact_wall_count_n1();
                let p = e.right_probability();
                let pass = e.rounds_to_012() && e.n1_disagreements == 0;
                return match ctx.format(&[Format::Text, Format::Json])? {
                    Format::Json => Ok(Artifact::json(
                        &json!({
                            "N": 1, "exact": e, "probability": p.to_string(),
                            "rounds_to_0.12": e.rounds_to_012(), "pass": pass,
                            "schema": SCHEMA, "version": VERSION,
                        }),
                        pass,
                    )),
                    _ => Ok(Artifact::new(
                        format!(
                            "right walls: {} of {} pairs\nprobability: {p}\nrounds to 0.12: {}\nleft walls: {}\nproduct form: {} of {}\n",
                            e.right_walls,
                            e.pairs,
                            e.rounds_to_012(),
                            e.left_walls,
                            e.product_form,
                            e.group_order
                        ),
                        pass,
                    )),
                };
            }
            ctx.format(&[Format::Json])?;
            let r = wall_probability(*n, &ctx.mc(*samples))?;
            Ok(Artifact::json(&r, r.pass))
        }
        WallsCommand::Lightcone { chain, t2max, initial, mode } => {
            let g = chain.geometry()?;
            let r = ctx.realization(g);
            let u0 = initial.resolve(g)?;
            let grid = lightcone_grid(&r, &u0, *t2max, *mode)?;
            let positions: Vec<usize> = scan_chain(&r)?.iter().map(|w| w.position).collect();
            match ctx.format(&[Format::Svg, Format::Pgm, Format::Csv, Format::Json])? {
                Format::Svg => Ok(Artifact::new(grid.to_svg(&positions), true)),
                Format::Pgm => Ok(Artifact::new(grid.to_pgm(&positions), true)),
                Format::Csv => Ok(Artifact::new(grid.extents_csv(), true)),
                _ => Ok(Artifact::json(
                    &json!({
                        "seed": ctx.seed, "streams": ctx.streams, "initial": u0.to_pauli(), "walls": positions,
                        "grid": grid, "schema": SCHEMA, "version": VERSION,
                    }),
                    true,
                )),
            }
        }
        WallsCommand::Fixture { trials } => {
            ctx.format(&[Format::Json])?;
            let (s0, s1) = counterexample_fixture();
            let ids = fixture_identities(&s0, &s1)?;
            let j = crate::gf2::SymplecticForm::new(2).matrix();
            let identities = json!({
                "C1C0_zero": ids.c1c0.is_zero(),
                "C1(D0A1)C0_zero": ids.c1_cycle_c0[1].is_zero(),
                "C1(D0A1)^2C0_zero": ids.c1_cycle_c0[2].is_zero(),
                "(D0A1)^2_is_J": ids.cycle.pow(2) == j,
                "(D0A1)^4_is_I": ids.cycle.pow(4) == crate::gf2::BitMatrix::identity(4),
            });
            let g = ChainGeometry::new(4, 2)?;
            let mut r = DisorderRealization::identity(g);
            r.set_gate(0, s0.clone())?;
            r.set_gate(1, s1.clone())?;
            let candidate = WallReport {
                position: 0,
                side: Side::Right,
                penetration: 1,
                detected_by: WallKind::RightChain,
            };
            let confinement = confinement_test(&r, &candidate, 6 * 4, &ctx.mc(*trials))?;
            let wall = is_right_wall(&s0, &s1)?;
            let pass = !wall
                && ids.c1c0.is_zero()
                && ids.c1_cycle_c0[1].is_zero()
                && !ids.c1_cycle_c0[2].is_zero()
                && !confinement.pass;
            Ok(Artifact::json(
                &json!({
                    "S0": s0.matrix().to_text(), "S1": s1.matrix().to_text(), "identities": identities,
                    "is_right_wall": wall, "confinement": confinement, "pass": pass,
                    "seed": ctx.seed, "streams": ctx.streams, "schema": SCHEMA, "version": VERSION,
                }),
                pass,
            ))
        }
    }
}

fn design(c: &DesignCommand, ctx: &Context) -> Result<Artifact> {
    let DesignCommand::Check { chain, t, exact, samples, initial } = c;
    ctx.format(&[Format::Json])?;
    let g = chain.geometry()?;
    let inputs = if initial.is_empty() {
        default_inputs(g)
    } else {
        initial.iter().map(|s| s.resolve(g)).collect::<Result<_>>()?
    };
    let cfg = ctx.mc(*samples);
    let evaluation = if *exact { Evaluation::Exact } else { Evaluation::Sampled(&cfg) };
    let r = advantage_estimate(g, *t, &inputs, evaluation)?;
    Ok(Artifact::json(&r, r.pass))
}

fn oracle(c: &OracleCommand, ctx: &Context) -> Result<Artifact> {
    let OracleCommand::Enumerate { t, initial } = c;
    let g = ChainGeometry::new(2, 1)?;
    let u0: PhaseVector = initial.resolve(g)?;
    let d = ExactEnsemble::new(g)?.distribution(&u0, *t)?;
    match ctx.format(&[Format::Csv, Format::Json])? {
        Format::Csv => {
            let mut s = String::from("outcome_hex,count,probability\r\n");
            for (&v, &count) in &d.counts {
                writeln!(s, "{},{},{}\r", d.key(v).to_hex(), count, d.probability(v)).expect("string write");
            }
            Ok(Artifact::new(s, true))
        }
        _ => {
            let outcomes: Vec<_> = d
                .counts
                .iter()
                .map(|(&v, &count)| json!({"outcome_hex": d.key(v).to_hex(), "count": count, "probability": d.probability(v).to_string()}))
                .collect();
            Ok(Artifact::json(
                &json!({
                    "L": 2, "N": 1, "t2": t.t2(), "initial": u0.to_pauli(), "total": d.total,
                    "l1_to_uniform_nonzero": d.l1_to_uniform_nonzero().to_string(), "outcomes": outcomes,
                    "schema": SCHEMA, "version": VERSION,
                }),
                true,
            ))
        }
    }
}
