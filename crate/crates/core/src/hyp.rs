//! Quasi-hyperbolicity certificates.
//!
//! The tangent map is checked for nontrivial bounded orbits on a cubical
//! neighbourhood `N = B × [−1,1]^k` of the zero section over an enclosure `B`
//! of the chain-recurrent set. Fibers are written in a frame `M_P` chosen per
//! base cube, so the combinatorial test sees the fiber map in coordinates
//! where the expansion and contraction are visible at unit scale. Any
//! invertible frame gives a compact neighbourhood of the zero section, so the
//! frame choice affects only whether the test succeeds, never its soundness.

use std::time::{Duration, Instant};

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::cubical::{self, Csr, CubicalSet, Grid, Prune};
use crate::error::{Error, Result};
use crate::henon::{self, conj_param, Mode, Param};
use crate::interval::{CInterval, Interval, IntervalBox};

type C64 = Complex<f64>;

/// Margin by which the combinatorial domain exceeds the trapping box.
pub const DOMAIN_MARGIN: f64 = 1.0 / 16.0;

/// Grid domain for `p`: the trapping box widened by [`DOMAIN_MARGIN`] so that
/// the boundary fixed point lies strictly inside at every depth of interest.
pub fn combinatorial_domain(p: &Param) -> Result<IntervalBox> {
    let r = henon::radius_r(p)?.hi();
    let w = Interval::point(r).scale(1.0 + DOMAIN_MARGIN)?.hi();
    Ok(IntervalBox::new(&vec![Interval::symmetric(w)?; p.mode().phase_dim()]))
}

/// Outer enclosure of the chain-recurrent set at grid depth `rounds`.
pub fn enclose_chain_recurrent(p: &Param, rounds: usize, budget: usize) -> Result<CubicalSet> {
    let grid = Grid::uniform(combinatorial_domain(p)?, 0)?;
    let start = CubicalSet::full(grid)?;
    let f = |b: &IntervalBox| henon::eval_fwd(p, b);
    cubical::refine_loop(&start, &f, rounds, Prune::ChainRecurrent, budget)
}

/// Explicit work limits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Budgets {
    pub max_cubes: usize,
    pub max_edges: usize,
    pub max_wall: Option<Duration>,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_cubes: 2_000_000,
            max_edges: 200_000_000,
            max_wall: None,
        }
    }
}

impl Budgets {
    pub fn zero() -> Self {
        Budgets {
            max_cubes: 0,
            max_edges: 0,
            max_wall: Some(Duration::ZERO),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Smallest base depth tried.
    pub min_base_depth: u8,
    /// Largest base depth tried.
    pub max_base_depth: u8,
    /// Fiber depth for the first attempts; side `2^(1−d)` in `[−1,1]`.
    pub fiber_depth: u8,
    /// Fiber depth ceiling once base refinement is exhausted.
    pub max_fiber_depth: u8,
    pub budgets: Budgets,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            min_base_depth: 4,
            max_base_depth: 12,
            fiber_depth: 2,
            max_fiber_depth: 3,
            budgets: Budgets::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Certified,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub status: Status,
    pub mode: Mode,
    pub a: [String; 2],
    pub c: [String; 2],
    pub base_depth: u8,
    pub fiber_depth: u8,
    pub base_cubes: usize,
    pub collar_cubes: usize,
    pub tangent_vertices: usize,
    pub tangent_edges: usize,
    pub wall_seconds: f64,
    pub reason: Option<String>,
}

fn interval_text(i: CInterval) -> [String; 2] {
    [format!("{:?}", i.re), format!("{:?}", i.im)]
}

/// Outcome of one attempt at fixed depths.
#[derive(Clone, Debug, PartialEq)]
pub struct Attempt {
    pub certified: bool,
    pub reason: Option<String>,
    pub base_cubes: usize,
    pub collar_cubes: usize,
    pub tangent_vertices: usize,
    pub tangent_edges: usize,
}

/// Per-base-cube fiber frame and its rigorous inverse.
#[derive(Clone, Debug)]
struct Frame {
    m: [[CInterval; 2]; 2],
    minv: [[CInterval; 2]; 2],
}

fn mat_mul(a: &[[CInterval; 2]; 2], b: &[[CInterval; 2]; 2]) -> Result<[[CInterval; 2]; 2]> {
    let mut out = [[CInterval::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0].mul(b[0][j])?.add(a[i][1].mul(b[1][j])?)?;
        }
    }
    Ok(out)
}

fn c2i(z: C64) -> CInterval {
    CInterval::point(z.re, z.im)
}

/// Frame with columns `u / nu` and `s / ns`, plus an enclosure of its inverse.
fn make_frame(u: [C64; 2], s: [C64; 2], nu: f64, ns: f64) -> Result<Frame> {
    let m = [
        [c2i(u[0] / nu), c2i(s[0] / ns)],
        [c2i(u[1] / nu), c2i(s[1] / ns)],
    ];
    let det = m[0][0].mul(m[1][1])?.sub(m[0][1].mul(m[1][0])?)?;
    let minv = [
        [m[1][1].div(det)?, m[0][1].neg().div(det)?],
        [m[1][0].neg().div(det)?, m[0][0].div(det)?],
    ];
    Ok(Frame { m, minv })
}

fn jac_point(a: C64, x: C64) -> [[C64; 2]; 2] {
    [[x * 2.0, -a], [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]]
}

fn apply2(m: &[[C64; 2]; 2], v: [C64; 2]) -> [C64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

fn inv_apply2(m: &[[C64; 2]; 2], v: [C64; 2]) -> [C64; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [
        (m[1][1] * v[0] - m[0][1] * v[1]) / det,
        (-m[1][0] * v[0] + m[0][0] * v[1]) / det,
    ]
}

fn vnorm(v: [C64; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

// Unit vector with a real, non-negative largest component.
fn normalize(v: [C64; 2]) -> [C64; 2] {
    let k = if v[0].norm() >= v[1].norm() { 0 } else { 1 };
    let phase = if v[k].norm() > 0.0 { v[k].conj() / v[k].norm() } else { C64::new(1.0, 0.0) };
    let n = vnorm(v);
    [v[0] * phase / n, v[1] * phase / n]
}

fn dist2(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn as_c64(p: &Param, z: &[f64]) -> (C64, C64) {
    match p.mode() {
        Mode::Real => (C64::new(z[0], 0.0), C64::new(z[1], 0.0)),
        Mode::Complex => (C64::new(z[0], z[1]), C64::new(z[2], z[3])),
    }
}

fn henon_point(a: C64, c: C64, x: C64, y: C64) -> (C64, C64) {
    (x * x + c - a * y, x)
}

/// Frames from graph-propagated unstable/stable directions and
/// Lyapunov-type scales taken as maxima over all edges.
fn build_frames(p: &Param, cubes: &CubicalSet, g: &Csr) -> Result<Vec<Frame>> {
    let n = cubes.len();
    let (a, c) = p.center();
    let centers: Vec<Vec<f64>> = cubes
        .iter()
        .map(|id| cubes.grid().cube_box(id).midpoint())
        .collect();
    let pts: Vec<(C64, C64)> = centers.iter().map(|z| as_c64(p, z)).collect();
    let images: Vec<Vec<f64>> = pts
        .iter()
        .map(|&(x, y)| {
            let (u, v) = henon_point(a, c, x, y);
            match p.mode() {
                Mode::Real => vec![u.re, v.re],
                Mode::Complex => vec![u.re, u.im, v.re, v.im],
            }
        })
        .collect();
    let rev = g.reversed();
    // Best-matching predecessor and successor per cube.
    let pred: Vec<usize> = (0..n)
        .map(|v| {
            rev.succ(v)
                .iter()
                .map(|&w| w as usize)
                .min_by(|&i, &j| {
                    dist2(&images[i], &centers[v]).total_cmp(&dist2(&images[j], &centers[v]))
                })
                .unwrap_or(v)
        })
        .collect();
    let succ: Vec<usize> = (0..n)
        .map(|v| {
            g.succ(v)
                .iter()
                .map(|&w| w as usize)
                .min_by(|&i, &j| {
                    dist2(&centers[i], &images[v]).total_cmp(&dist2(&centers[j], &images[v]))
                })
                .unwrap_or(v)
        })
        .collect();
    let jacs: Vec<[[C64; 2]; 2]> = pts.iter().map(|&(x, _)| jac_point(a, x)).collect();
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut eu = vec![[one, zero]; n];
    let mut es = vec![[zero, one]; n];
    for _ in 0..48 {
        eu = (0..n)
            .map(|v| normalize(apply2(&jacs[pred[v]], eu[pred[v]])))
            .collect();
        es = (0..n)
            .map(|v| normalize(inv_apply2(&jacs[v], es[succ[v]])))
            .collect();
    }
    // Growth along each edge v → w, measured in the target frame directions.
    let mut nu = vec![1.0f64; n];
    let mut ns = vec![1.0f64; n];
    let gu: Vec<f64> = (0..n).map(|v| vnorm(apply2(&jacs[v], eu[v]))).collect();
    let hs: Vec<f64> = (0..n).map(|v| vnorm(apply2(&jacs[v], es[v]))).collect();
    let min_g = gu.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_h = hs.iter().cloned().fold(0.0, f64::max);
    // Target rate between 1 and the weakest one-step rate, in log scale.
    let rate = |x: f64| x.max(1.0 + 1e-3);
    let mu_u = rate(min_g).sqrt().max(1.0);
    let mu_s = rate(1.0 / max_h.max(1e-300)).sqrt().max(1.0);
    for _ in 0..64 {
        let mut changed = false;
        for v in 0..n {
            for &w in g.succ(v) {
                let w = w as usize;
                let cand_u = 1.0 + mu_u * nu[v] / gu[v];
                if cand_u > nu[w] * (1.0 + 1e-9) && cand_u.is_finite() && cand_u < 1e6 {
                    nu[w] = cand_u;
                    changed = true;
                }
                let cand_s = 1.0 + mu_s * hs[v] * ns[w];
                if cand_s > ns[v] * (1.0 + 1e-9) && cand_s.is_finite() && cand_s < 1e6 {
                    ns[v] = cand_s;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..n)
        .map(|v| make_frame(eu[v], es[v], nu[v], ns[v]))
        .collect()
}

/// Fiber coordinates as complex pairs; real mode uses zero imaginary parts.
fn fiber_vec(p: &Param, b: &IntervalBox) -> [CInterval; 2] {
    match p.mode() {
        Mode::Real => [CInterval::real(b[0]), CInterval::real(b[1])],
        Mode::Complex => [b.complex(0), b.complex(1)],
    }
}

fn fiber_box(p: &Param, w: [CInterval; 2]) -> IntervalBox {
    match p.mode() {
        Mode::Real => IntervalBox::new(&[w[0].re, w[1].re]),
        Mode::Complex => IntervalBox::new(&[w[0].re, w[0].im, w[1].re, w[1].im]),
    }
}

fn check_wall(start: Instant, b: &Budgets) -> Result<()> {
    if let Some(limit) = b.max_wall {
        if start.elapsed() > limit {
            return Err(Error::RefinementExhausted {
                cubes: 0,
                budget: 0,
            });
        }
    }
    Ok(())
}

/// One certification attempt on a given chain-recurrent enclosure.
pub fn attempt(
    p: &Param,
    enclosure: &CubicalSet,
    fiber_depth: u8,
    budgets: &Budgets,
    start: Instant,
) -> Result<Attempt> {
    let mut out = Attempt {
        certified: false,
        reason: None,
        base_cubes: enclosure.len(),
        collar_cubes: 0,
        tangent_vertices: 0,
        tangent_edges: 0,
    };
    if fiber_depth < 2 {
        return Err(Error::Invalid(
            "fiber depth must be at least 2 so zero and boundary layers are disjoint".into(),
        ));
    }
    let collar = enclosure.collar();
    out.collar_cubes = collar.len();
    let base = enclosure.union(&collar)?;
    if base.len() > budgets.max_cubes {
        out.reason = Some(format!("cube budget: {} base cubes", base.len()));
        return Ok(out);
    }
    let f = |b: &IntervalBox| henon::eval_fwd(p, b);
    let bg = cubical::build_graph(&base, &f)?;
    check_wall(start, budgets)?;
    let inv = bg.edges.inv_mask();
    if let Some((i, _)) = base
        .iter()
        .enumerate()
        .find(|&(i, id)| inv[i] && collar.contains(id))
    {
        out.reason = Some(format!("invariant set meets the collar (base cube {i})"));
        return Ok(out);
    }
    let (g, kept) = bg.edges.restrict(&inv);
    let vset = base.select(&inv);
    if vset.is_empty() {
        out.certified = true;
        out.reason = Some("empty invariant set".into());
        return Ok(out);
    }
    let frames = build_frames(p, &vset, &g)?;
    drop(kept);

    // Fiber grid over [−1,1]^k.
    let k = p.mode().phase_dim();
    let fgrid = Grid::uniform(IntervalBox::new(&vec![Interval::symmetric(1.0)?; k]), fiber_depth)?;
    let nf = fgrid.total_cubes() as usize;
    let fboxes: Vec<IntervalBox> = (0..nf)
        .map(|i| fgrid.cube_box(cubical::CubeId(i as u64)))
        .collect();
    let boundary: Vec<bool> = (0..nf)
        .map(|i| {
            let c = fgrid.unpack(cubical::CubeId(i as u64));
            (0..k).any(|ax| c[ax] == 0 || c[ax] + 1 == fgrid.cells(ax))
        })
        .collect();
    let nv = vset.len() * nf;
    out.tangent_vertices = nv;
    if nv > u32::MAX as usize || nv > budgets.max_cubes.saturating_mul(nf) {
        out.reason = Some(format!("cube budget: {nv} tangent cubes"));
        return Ok(out);
    }
    // Fiber map per base edge: M_w⁻¹ · DH(P) · M_v.
    let jac: Vec<[[CInterval; 2]; 2]> = vset
        .iter()
        .map(|id| henon::jacobian(p, &vset.grid().cube_box(id)))
        .collect::<Result<_>>()?;
    let groups: usize = (0..vset.len()).map(|v| g.succ(v).len()).sum::<usize>() * nf;
    if groups > budgets.max_edges {
        out.reason = Some(format!("edge budget: at least {groups} tangent edges"));
        return Ok(out);
    }
    let fiber_edges = |v: usize| -> Result<(Vec<u32>, Vec<u32>)> {
        let dm = mat_mul(&jac[v], &frames[v].m)?;
        let mats: Vec<(usize, [[CInterval; 2]; 2])> = g
            .succ(v)
            .iter()
            .map(|&w| Ok((w as usize, mat_mul(&frames[w as usize].minv, &dm)?)))
            .collect::<Result<_>>()?;
        let mut lens = Vec::with_capacity(nf);
        let mut targets = Vec::new();
        for fb in &fboxes {
            let wv = fiber_vec(p, fb);
            let start = targets.len();
            for (w, a) in &mats {
                let ib = fiber_box(p, henon::mat_vec(a, wv)?);
                let Some((r, _)) = fgrid.box_ranges(&ib) else { continue };
                let base_idx = (*w * nf) as u32;
                let mut c = [0u32; crate::interval::MAX_DIM];
                for ax in 0..k {
                    c[ax] = r[ax].0;
                }
                'odometer: loop {
                    targets.push(base_idx + fgrid.pack(&c[..k]).0 as u32);
                    for ax in (0..k).rev() {
                        if c[ax] < r[ax].1 {
                            c[ax] += 1;
                            continue 'odometer;
                        }
                        c[ax] = r[ax].0;
                    }
                    break;
                }
            }
            lens.push((targets.len() - start) as u32);
        }
        Ok((lens, targets))
    };
    // Built in chunks so only one chunk of scratch lists is alive at a time.
    let mut offsets = Vec::with_capacity(nv + 1);
    offsets.push(0usize);
    let mut targets: Vec<u32> = Vec::new();
    for chunk in (0..vset.len()).collect::<Vec<_>>().chunks(256) {
        let parts: Vec<Result<(Vec<u32>, Vec<u32>)>> =
            chunk.par_iter().map(|&v| fiber_edges(v)).collect();
        for r in parts {
            let (lens, t) = r?;
            for l in lens {
                offsets.push(offsets.last().unwrap() + l as usize);
            }
            if targets.len() + t.len() > budgets.max_edges {
                out.reason = Some(format!(
                    "edge budget: more than {} tangent edges",
                    budgets.max_edges
                ));
                return Ok(out);
            }
            if targets.capacity() < targets.len() + t.len() {
                // Grow by half rather than doubling near the budget.
                let want = (targets.len() + t.len()).max(targets.capacity() * 3 / 2);
                targets.reserve_exact(want.min(budgets.max_edges) - targets.len());
            }
            targets.extend_from_slice(&t);
        }
        check_wall(start, budgets)?;
    }
    out.tangent_edges = targets.len();
    check_wall(start, budgets)?;
    let tg = Csr::from_parts(offsets, targets);
    let tinv = tg.inv_mask();
    let bad = (0..nv).filter(|&i| tinv[i] && boundary[i % nf]).count();
    if bad > 0 {
        out.reason = Some(format!("{bad} invariant tangent cubes touch the fiber boundary"));
        return Ok(out);
    }
    out.certified = true;
    Ok(out)
}

/// Certifies quasi-hyperbolicity of `H` on its chain-recurrent set for every
/// parameter in `p`, refining the base before the fiber.
pub fn verify_quasi_hyperbolic(p: &Param, cfg: &VerifyConfig) -> VerifyReport {
    let start = Instant::now();
    let mut report = VerifyReport {
        status: Status::Unknown,
        mode: p.mode(),
        a: interval_text(p.a()),
        c: interval_text(p.c()),
        base_depth: 0,
        fiber_depth: cfg.fiber_depth,
        base_cubes: 0,
        collar_cubes: 0,
        tangent_vertices: 0,
        tangent_edges: 0,
        wall_seconds: 0.0,
        reason: None,
    };
    let finish = |mut r: VerifyReport| {
        r.wall_seconds = start.elapsed().as_secs_f64();
        r
    };
    if cfg.budgets.max_cubes == 0 || cfg.budgets.max_edges == 0 {
        report.reason = Some("budget: zero work allowed".into());
        return finish(report);
    }
    let mut enclosures: Vec<Option<CubicalSet>> = Vec::new();
    let mut last_reason = String::from("no depth attempted");
    for fd in cfg.fiber_depth..=cfg.max_fiber_depth.max(cfg.fiber_depth) {
        for d in cfg.min_base_depth..=cfg.max_base_depth {
            let d_us = d as usize;
            if enclosures.len() <= d_us {
                enclosures.resize(d_us + 1, None);
            }
            if enclosures[d_us].is_none() {
                // Reuse the deepest shallower enclosure.
                let prev = (0..d_us).rev().find(|&j| enclosures[j].is_some());
                let e = match prev {
                    Some(j) => {
                        let f = |b: &IntervalBox| henon::eval_fwd(p, b);
                        cubical::refine_loop(
                            enclosures[j].as_ref().unwrap(),
                            &f,
                            d_us - j,
                            Prune::ChainRecurrent,
                            cfg.budgets.max_cubes,
                        )
                    }
                    None => enclose_chain_recurrent(p, d_us, cfg.budgets.max_cubes),
                };
                match e {
                    Ok(e) => enclosures[d_us] = Some(e),
                    Err(Error::RefinementExhausted { cubes, budget }) => {
                        last_reason = format!("cube budget: {cubes} cubes > {budget} at base depth {d}");
                        break;
                    }
                    Err(e) => {
                        report.reason = Some(format!("error: {e}"));
                        return finish(report);
                    }
                }
            }
            let enc = enclosures[d_us].as_ref().unwrap();
            match attempt(p, enc, fd, &cfg.budgets, start) {
                Ok(a) => {
                    report.base_depth = d;
                    report.fiber_depth = fd;
                    report.base_cubes = a.base_cubes;
                    report.collar_cubes = a.collar_cubes;
                    report.tangent_vertices = a.tangent_vertices;
                    report.tangent_edges = a.tangent_edges;
                    if a.certified {
                        report.status = Status::Certified;
                        report.reason = a.reason;
                        return finish(report);
                    }
                    last_reason = a.reason.unwrap_or_default();
                    // A finer base shrinks images, so edge overruns may recover.
                    if last_reason.starts_with("cube budget") {
                        break;
                    }
                }
                Err(Error::RefinementExhausted { .. }) => {
                    report.reason = Some("budget: wall time".into());
                    return finish(report);
                }
                Err(e) => {
                    report.reason = Some(format!("error: {e}"));
                    return finish(report);
                }
            }
            if let Some(limit) = cfg.budgets.max_wall {
                if start.elapsed() > limit {
                    report.reason = Some(format!("budget: wall time; last failure: {last_reason}"));
                    return finish(report);
                }
            }
        }
    }
    report.reason = Some(last_reason);
    finish(report)
}

/// Result of a parameter sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub certified: Vec<SweepEntry>,
    pub unknown: Vec<SweepEntry>,
    pub symmetry_halving: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    #[serde(skip)]
    pub param: Param,
    pub depth: usize,
    /// The box is the conjugate of a verified box.
    pub mirrored: bool,
    pub report: VerifyReport,
}

/// Halves along the widest non-degenerate parameter coordinate.
pub fn bisect_param(p: &Param) -> Option<(Param, Param)> {
    let coords = [p.a().re, p.a().im, p.c().re, p.c().im];
    let (k, w) = coords
        .iter()
        .enumerate()
        .filter(|(k, _)| p.mode() == Mode::Complex || k % 2 == 0)
        .map(|(k, i)| (k, i.width()))
        .filter(|&(_, w)| w > 0.0)
        .max_by(|x, y| x.1.total_cmp(&y.1))?;
    let _ = w;
    let (l, r) = coords[k].bisect();
    let build = |half: Interval| {
        let mut c = coords;
        c[k] = half;
        Param::new(CInterval::new(c[0], c[1]), CInterval::new(c[2], c[3]), p.mode())
    };
    match (build(l), build(r)) {
        (Ok(a), Ok(b)) => Some((a, b)),
        _ => None,
    }
}

fn split_at_real_axis(p: &Param) -> Option<(Param, Param)> {
    let im = p.c().im;
    if !(im.lo() < 0.0 && im.hi() > 0.0 && im.lo() == -im.hi()) {
        return None;
    }
    let up = Param::new(p.a(), CInterval::new(p.c().re, Interval::new(0.0, im.hi()).ok()?), p.mode()).ok()?;
    Some((up, conj_param(&up)))
}

/// Verifies every box, bisecting failures up to `max_param_depth`.
///
/// In complex mode with real `a`, conjugate boxes are verified once: the
/// conjugate of a certified box is certified because `H_{ā,c̄}` is conjugate
/// to `H_{a,c}`.
pub fn sweep_params(region: &[Param], max_param_depth: usize, cfg: &VerifyConfig) -> SweepResult {
    let mut work: Vec<(Param, usize)> = Vec::new();
    let mut mirrors: Vec<bool> = Vec::new();
    let mut halving = false;
    let real_a = |p: &Param| p.a().is_real();
    let queue: Vec<Param> = region.to_vec();
    let mut i = 0;
    while i < queue.len() {
        let p = queue[i];
        i += 1;
        if p.mode() == Mode::Complex && real_a(&p) {
            if let Some((up, _)) = split_at_real_axis(&p) {
                halving = true;
                work.push((up, 0));
                mirrors.push(true);
                continue;
            }
            let cp = conj_param(&p);
            if cp != p && region.contains(&cp) {
                if p.c().im.lo() >= 0.0 {
                    halving = true;
                    work.push((p, 0));
                    mirrors.push(true);
                }
                continue;
            }
        }
        work.push((p, 0));
        mirrors.push(false);
    }
    let mut certified = Vec::new();
    let mut unknown = Vec::new();
    let mut level: Vec<(Param, usize, bool)> = work
        .into_iter()
        .zip(mirrors)
        .map(|((p, d), m)| (p, d, m))
        .collect();
    while !level.is_empty() {
        let reports: Vec<VerifyReport> = level
            .par_iter()
            .map(|(p, _, _)| verify_quasi_hyperbolic(p, cfg))
            .collect();
        let mut next = Vec::new();
        for ((p, d, mirror), r) in level.into_iter().zip(reports) {
            let push = |list: &mut Vec<SweepEntry>, r: &VerifyReport| {
                list.push(SweepEntry {
                    param: p,
                    depth: d,
                    mirrored: false,
                    report: r.clone(),
                });
                if mirror {
                    list.push(SweepEntry {
                        param: conj_param(&p),
                        depth: d,
                        mirrored: true,
                        report: r.clone(),
                    });
                }
            };
            if r.status == Status::Certified {
                push(&mut certified, &r);
            } else if d < max_param_depth {
                match bisect_param(&p) {
                    Some((l, rr)) => {
                        next.push((l, d + 1, mirror));
                        next.push((rr, d + 1, mirror));
                    }
                    None => push(&mut unknown, &r),
                }
            } else {
                push(&mut unknown, &r);
            }
        }
        level = next;
    }
    SweepResult {
        certified,
        unknown,
        symmetry_halving: halving,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_is_unknown() {
        let p = Param::point(1.0, -10.0, Mode::Real).unwrap();
        let cfg = VerifyConfig {
            budgets: Budgets::zero(),
            ..VerifyConfig::default()
        };
        let r = verify_quasi_hyperbolic(&p, &cfg);
        assert_eq!(r.status, Status::Unknown);
        assert!(r.reason.unwrap().contains("budget"));
    }

    #[test]
    fn enclosure_holds_fixed_points() {
        let p = Param::point(1.0, -10.0, Mode::Real).unwrap();
        let e = enclose_chain_recurrent(&p, 6, 1 << 20).unwrap();
        for x in [1.0 - 11f64.sqrt(), 1.0 + 11f64.sqrt()] {
            let id = e.locate(&[x, x]).unwrap();
            let near = CubicalSet::neighbors_of(e.grid(), id);
            assert!(e.contains(id) || near.iter().any(|&n| e.contains(n)));
        }
    }

    #[test]
    fn bisection_is_exact() {
        let p = Param::real(Interval::ONE, Interval::new(-10.5, -9.5).unwrap()).unwrap();
        let (l, r) = bisect_param(&p).unwrap();
        assert_eq!(l.c().re.lo(), -10.5);
        assert_eq!(l.c().re.hi(), r.c().re.lo());
        assert_eq!(r.c().re.hi(), -9.5);
    }
}
