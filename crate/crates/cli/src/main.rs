//! Command-line driver.
//!
//! Exit codes: 0 certified or passed, 1 error or failed check, 2 rigorous
//! unknown, 3 refinement budget exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use horseshoe::cubical::CubicalSet;
use horseshoe::henon::{Mode, Param};
use horseshoe::hyp::{self, Budgets, Status, VerifyConfig};
use horseshoe::interval::{CInterval, Interval};
use horseshoe::io::{interval_text, BoxFile};
use horseshoe::monodromy::{self, ParamLoop, PartitionTrack};
use horseshoe::periodic::{self, CrossCheckVerdict};
use horseshoe::shift::{self, Sft, Word};
use horseshoe::{render, Error};

#[derive(Parser)]
#[command(name = "horseshoe", version, about = "Rigorous computations for Hénon horseshoes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify quasi-hyperbolicity on the chain-recurrent set.
    Verify(VerifyArgs),
    /// Verify every box of a region file, bisecting failures.
    Sweep(SweepArgs),
    /// Write an enclosure of the chain-recurrent set as a cube-set file.
    CrEnclose(EncloseArgs),
    /// Continue the basepoint partition around a loop and read off the swap.
    Monodromy(MonodromyArgs),
    /// Periodic-point counts of a subshift given by forbidden words.
    Sft(SftArgs),
    /// Certified counts of real periodic points.
    Count(CountArgs),
    /// Compare certified real counts with subshift counts.
    PruningCheck(PruningArgs),
    /// Draw a box file, cube-set file or track slice as SVG.
    Render(RenderArgs),
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Re a, as a decimal or `[lo, hi]`.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    a_im: String,
    /// Re c, as a decimal or `[lo, hi]`.
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    c_im: String,
    #[arg(long, default_value = "real")]
    mode: Mode,
}

impl ParamArgs {
    fn param(&self) -> anyhow::Result<Param> {
        let iv = |s: &str| s.parse::<Interval>().with_context(|| format!("bad interval {s:?}"));
        let a = CInterval::new(iv(&self.a)?, iv(&self.a_im)?);
        let c = CInterval::new(iv(&self.c)?, iv(&self.c_im)?);
        Ok(Param::new(a, c, self.mode)?)
    }
}

#[derive(Args, Clone)]
struct BudgetArgs {
    #[arg(long, default_value_t = 4)]
    min_depth: u8,
    #[arg(long, default_value_t = 12)]
    max_depth: u8,
    #[arg(long, default_value_t = 2)]
    fiber_depth: u8,
    #[arg(long, default_value_t = 3)]
    max_fiber_depth: u8,
    #[arg(long, default_value_t = Budgets::default().max_cubes)]
    max_cubes: usize,
    #[arg(long, default_value_t = Budgets::default().max_edges)]
    max_edges: usize,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    max_seconds: Option<f64>,
}

impl BudgetArgs {
    fn config(&self) -> VerifyConfig {
        VerifyConfig {
            min_base_depth: self.min_depth,
            max_base_depth: self.max_depth,
            fiber_depth: self.fiber_depth,
            max_fiber_depth: self.max_fiber_depth,
            budgets: Budgets {
                max_cubes: self.max_cubes,
                max_edges: self.max_edges,
                max_wall: self.max_seconds.map(Duration::from_secs_f64),
            },
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    p: ParamArgs,
    #[command(flatten)]
    b: BudgetArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Region file listing parameter boxes.
    region: PathBuf,
    /// Override the mode given in the region file.
    #[arg(long)]
    mode: Option<Mode>,
    /// Bisection depth per box.
    #[arg(long, default_value_t = 4)]
    param_depth: usize,
    /// Directory for certified.toml and unknown.toml.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[command(flatten)]
    b: BudgetArgs,
}

#[derive(Args)]
struct EncloseArgs {
    #[command(flatten)]
    p: ParamArgs,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, default_value_t = 1 << 24)]
    max_cubes: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MonodromyArgs {
    /// Loop file.
    path: PathBuf,
    #[arg(long, default_value_t = 256)]
    n_steps: usize,
    #[arg(long, default_value_t = 8)]
    depth: u8,
    /// Ceiling for doubling the step count on refinement requests.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Ceiling for deepening the grid once the step ceiling is reached.
    #[arg(long)]
    max_depth: Option<u8>,
    /// Symbol radius for reading off the swapped words.
    #[arg(long, default_value_t = 4)]
    window: usize,
    /// Extra depth of the basepoint enclosure used for the words.
    #[arg(long, default_value_t = 0)]
    extra_depth: u8,
    #[arg(long, default_value_t = 1 << 24)]
    max_cubes: usize,
    /// Write per-slice cube sets and labels here.
    #[arg(long)]
    dump: Option<PathBuf>,
}

/// Inclusive range `lo..hi`.
fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let a: usize = a.parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b: usize = b.trim_start_matches('=').parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a > b || a == 0 {
        return Err(format!("empty or invalid range {s:?}"));
    }
    Ok(a..=b)
}

#[derive(Args)]
struct SftArgs {
    /// Forbidden words; a named column (DN, Lp, Lq, Lr, Ls, EMP) with --column.
    words: Vec<String>,
    #[arg(long)]
    column: Option<shift::Column>,
    /// Inclusive period range.
    #[arg(long, value_parser = parse_range, default_value = "3..7")]
    n: std::ops::RangeInclusive<usize>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    p: ParamArgs,
    #[arg(long, value_parser = parse_range, default_value = "3..7")]
    n: std::ops::RangeInclusive<usize>,
}

#[derive(Args)]
struct PruningArgs {
    #[command(flatten)]
    p: ParamArgs,
    /// Forbidden words of the predicted subshift.
    words: Vec<String>,
    #[arg(long, value_parser = parse_range, default_value = "3..7")]
    n: std::ops::RangeInclusive<usize>,
}

#[derive(Args)]
struct RenderArgs {
    /// Box file (.toml), cube-set file, or track directory.
    input: PathBuf,
    /// Track slice index when the input is a track directory.
    #[arg(long, default_value_t = 0)]
    slice: usize,
    /// Two projection axes, e.g. `0,2`.
    #[arg(long)]
    axes: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

enum Outcome {
    Ok,
    Failed,
    Unknown,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::from(0),
        Ok(Outcome::Failed) => ExitCode::from(1),
        Ok(Outcome::Unknown) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::RefinementExhausted { .. }) | Some(Error::RefineNeeded { .. }) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Sweep(a) => sweep(a),
        Cmd::CrEnclose(a) => enclose(a),
        Cmd::Monodromy(a) => monodromy_cmd(a),
        Cmd::Sft(a) => sft(a),
        Cmd::Count(a) => count(a),
        Cmd::PruningCheck(a) => pruning(a),
        Cmd::Render(a) => render_cmd(a),
    }
}

fn print_report(r: &hyp::VerifyReport) {
    print!("{}", toml::to_string(r).expect("reports serialize"));
}

fn verify(a: VerifyArgs) -> anyhow::Result<Outcome> {
    let p = a.p.param()?;
    let r = hyp::verify_quasi_hyperbolic(&p, &a.b.config());
    println!("# hyp::verify_quasi_hyperbolic");
    print_report(&r);
    Ok(match r.status {
        Status::Certified => Outcome::Ok,
        Status::Unknown => Outcome::Unknown,
    })
}

fn sweep(a: SweepArgs) -> anyhow::Result<Outcome> {
    let mut region = BoxFile::read(&a.region)?;
    if let Some(m) = a.mode {
        region.boxes = region
            .boxes
            .iter()
            .map(|p| p.with_mode(m))
            .collect::<horseshoe::Result<_>>()?;
        region.mode = m;
    }
    let res = hyp::sweep_params(&region.boxes, a.param_depth, &a.b.config());
    std::fs::create_dir_all(&a.out)?;
    let write = |name: &str, list: &[hyp::SweepEntry]| -> anyhow::Result<PathBuf> {
        let path = a.out.join(name);
        BoxFile {
            mode: region.mode,
            boxes: list.iter().map(|e| e.param).collect(),
        }
        .write(&path)?;
        Ok(path)
    };
    let cp = write("certified.toml", &res.certified)?;
    let up = write("unknown.toml", &res.unknown)?;
    println!("# hyp::sweep_params");
    println!("region = {:?}", a.region.display().to_string());
    println!("certified = {}", res.certified.len());
    println!("unknown = {}", res.unknown.len());
    println!("symmetry_halving = {}", res.symmetry_halving);
    println!("certified_file = {:?}", cp.display().to_string());
    println!("unknown_file = {:?}", up.display().to_string());
    for e in res.certified.iter().chain(&res.unknown) {
        println!();
        println!("[[box]]");
        println!("c = {:?}", interval_text(e.param.c().re));
        println!("c_im = {:?}", interval_text(e.param.c().im));
        println!("a = {:?}", interval_text(e.param.a().re));
        println!("status = {:?}", format!("{:?}", e.report.status));
        println!("mirrored = {}", e.mirrored);
        println!("base_depth = {}", e.report.base_depth);
        println!("wall_seconds = {:.3}", e.report.wall_seconds);
        if let Some(r) = &e.report.reason {
            println!("reason = {r:?}");
        }
    }
    Ok(if res.unknown.is_empty() {
        Outcome::Ok
    } else {
        Outcome::Unknown
    })
}

fn enclose(a: EncloseArgs) -> anyhow::Result<Outcome> {
    let p = a.p.param()?;
    let e = hyp::enclose_chain_recurrent(&p, a.depth, a.max_cubes)?;
    let f = std::fs::File::create(&a.out)?;
    e.write_to(std::io::BufWriter::new(f))?;
    println!("# hyp::enclose_chain_recurrent");
    println!("cubes = {}", e.len());
    println!("depth = {}", a.depth);
    println!("file = {:?}", a.out.display().to_string());
    Ok(Outcome::Ok)
}

fn monodromy_cmd(a: MonodromyArgs) -> anyhow::Result<Outcome> {
    let lp = ParamLoop::from_file(&a.path)?;
    let track = monodromy::continue_with_escalation(
        &lp,
        a.n_steps,
        a.depth,
        a.max_steps.unwrap_or(a.n_steps),
        a.max_depth.unwrap_or(a.depth),
        a.max_cubes,
        |n, d, e| eprintln!("n_steps {n}, depth {d}: {e}"),
    )?;
    if let Some(dir) = &a.dump {
        track.dump(dir)?;
    }
    let swaps = monodromy::identify_swapped_blocks(&track, a.window, a.extra_depth, a.max_cubes)?;
    let words: Vec<String> = swaps
        .pairs
        .iter()
        .map(|(u, v)| format!("{} <-> {}", u.undotted(), v.undotted()))
        .collect();
    println!("# monodromy::continue_partition + identify_swapped_blocks");
    println!("loop = {:?}", lp.name);
    println!("n_steps = {}", track.n_steps);
    println!("depth = {}", track.depth);
    println!("swap = {:?}", swaps.to_string());
    println!("words = {:?}", words.join(", "));
    if let Some(dir) = &a.dump {
        println!("track = {:?}", dir.display().to_string());
    }
    Ok(Outcome::Ok)
}

fn sft_of(words: &[String]) -> anyhow::Result<Sft> {
    let w: Vec<Word> = words.iter().map(|s| s.parse()).collect::<horseshoe::Result<_>>()?;
    Ok(Sft::new(&w))
}

fn sft(a: SftArgs) -> anyhow::Result<Outcome> {
    let s = match (&a.column, a.words.is_empty()) {
        (Some(c), true) => c.sft().ok_or_else(|| anyhow!("column {} has no subshift", c.name()))?,
        (None, false) => sft_of(&a.words)?,
        (Some(_), false) => bail!("give either --column or words, not both"),
        (None, true) => Sft::full(),
    };
    println!("# shift::count_fixed");
    println!("n count");
    for n in a.n {
        println!("{n} {}", shift::count_fixed(&s, n)?);
    }
    Ok(Outcome::Ok)
}

fn count(a: CountArgs) -> anyhow::Result<Outcome> {
    let p = a.p.param()?;
    let mut all_exact = true;
    println!("# periodic::count_real");
    println!("n lower upper certificates");
    for n in a.n {
        let r = periodic::count_real(&p, n)?;
        all_exact &= r.exact;
        println!("{n} {} {} {}", r.lower_real, r.upper_real, r.certificates.len());
    }
    Ok(if all_exact { Outcome::Ok } else { Outcome::Unknown })
}

fn pruning(a: PruningArgs) -> anyhow::Result<Outcome> {
    let p = a.p.param()?;
    let s = sft_of(&a.words)?;
    let (verdict, rows) = periodic::crosscheck_pruning(&p, &s, a.n)?;
    println!("# periodic::crosscheck_pruning");
    println!("n lower upper symbolic");
    for r in &rows {
        println!("{} {} {} {}", r.n, r.lower_real, r.upper_real, r.symbolic);
    }
    println!("verdict = {verdict:?}");
    Ok(match verdict {
        CrossCheckVerdict::Pass => Outcome::Ok,
        CrossCheckVerdict::Fail => Outcome::Failed,
        CrossCheckVerdict::Inconclusive => Outcome::Unknown,
    })
}

fn parse_axes(s: &Option<String>, default: (usize, usize)) -> anyhow::Result<(usize, usize)> {
    match s {
        None => Ok(default),
        Some(t) => {
            let (x, y) = t.split_once(',').ok_or_else(|| anyhow!("axes as i,j"))?;
            Ok((x.trim().parse()?, y.trim().parse()?))
        }
    }
}

fn render_cmd(a: RenderArgs) -> anyhow::Result<Outcome> {
    let svg = if a.input.is_dir() {
        let (set, labels) = PartitionTrack::read_slice(&a.input, a.slice)?;
        let axes = parse_axes(&a.axes, (0, 2))?;
        check_axes(axes, set.grid().dim())?;
        let title = format!("slice {}", a.slice);
        render::render_cubes(&set, Some(&labels), axes, &title)
    } else if is_box_file(&a.input)? {
        let f = BoxFile::read(&a.input)?;
        let default = if f.mode == Mode::Complex { (2, 3) } else { (2, 0) };
        let axes = parse_axes(&a.axes, default)?;
        check_axes(axes, 4)?;
        render::render_boxes(&f.boxes, axes, &a.input.display().to_string())
    } else {
        let file = std::fs::File::open(&a.input)?;
        let set = CubicalSet::read_from(std::io::BufReader::new(file))?;
        let axes = parse_axes(&a.axes, (0, 1))?;
        check_axes(axes, set.grid().dim())?;
        render::render_cubes(&set, None, axes, &a.input.display().to_string())
    };
    std::fs::write(&a.out, svg)?;
    println!("# render");
    println!("file = {:?}", a.out.display().to_string());
    Ok(Outcome::Ok)
}

fn check_axes((x, y): (usize, usize), dim: usize) -> anyhow::Result<()> {
    if x >= dim || y >= dim || x == y {
        bail!("axes must be two distinct indices below {dim}");
    }
    Ok(())
}

fn is_box_file(p: &Path) -> anyhow::Result<bool> {
    let text = std::fs::read_to_string(p)?;
    Ok(!text.trim_start().starts_with("cubeset"))
}
