//! Monodromy of the horseshoe coding around parameter loops.
//!
//! The two pieces of `K` at a Devaney–Nitecki basepoint, split by the sign of
//! `Re y`, are continued along the loop as tubes of cubical enclosures. The
//! cubes whose piece has changed when the loop returns are then read off as
//! symbol windows, which gives the block-swap automorphism.

use std::io::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cubical::{self, CubeId, CubicalSet, Grid, Prune, UnionFind};
use crate::error::{Error, Result};
use crate::henon::{self, Param, Tri};
use crate::interval::{parse_rational, CInterval, Interval, IntervalBox};
use crate::shift::{Automorphism, BlockSwap, Word};

/// Which side of `Re y = 0` carries symbol 0 at the basepoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroSide {
    #[default]
    Negative,
    Positive,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexText {
    t: String,
    a: String,
    #[serde(default)]
    a_im: Option<String>,
    c: String,
    #[serde(default)]
    c_im: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LoopText {
    name: String,
    #[serde(default)]
    symmetric: bool,
    #[serde(default)]
    zero_side: ZeroSide,
    vertex: Vec<VertexText>,
}

type Rational = (BigInt, BigInt);

#[derive(Clone, Debug)]
struct Exact {
    t: Rational,
    a: [Rational; 2],
    c: [Rational; 2],
}

/// One vertex of a loop, with enclosures of its decimal coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoopVertex {
    pub t: Interval,
    pub a: CInterval,
    pub c: CInterval,
}

/// Piecewise-linear closed loop in complex parameter space.
#[derive(Clone, Debug)]
pub struct ParamLoop {
    pub name: String,
    pub vertices: Vec<LoopVertex>,
    pub symmetric: bool,
    pub zero_side: ZeroSide,
}

fn rat_eq(x: &Rational, y: &Rational) -> bool {
    &x.0 * &y.1 == &y.0 * &x.1
}

fn rat_neg(x: &Rational) -> Rational {
    (-x.0.clone(), x.1.clone())
}

impl ParamLoop {
    /// Parses the loop file format (TOML with decimal strings).
    pub fn from_toml(text: &str) -> Result<ParamLoop> {
        let raw: LoopText = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let zero = "0".to_string();
        let mut exact = Vec::new();
        let mut vertices = Vec::new();
        for v in &raw.vertex {
            let a_im = v.a_im.as_ref().unwrap_or(&zero);
            let c_im = v.c_im.as_ref().unwrap_or(&zero);
            exact.push(Exact {
                t: parse_rational(v.t.trim())?,
                a: [parse_rational(v.a.trim())?, parse_rational(a_im.trim())?],
                c: [parse_rational(v.c.trim())?, parse_rational(c_im.trim())?],
            });
            vertices.push(LoopVertex {
                t: Interval::from_decimal(&v.t)?,
                a: CInterval::new(Interval::from_decimal(&v.a)?, Interval::from_decimal(a_im)?),
                c: CInterval::new(Interval::from_decimal(&v.c)?, Interval::from_decimal(c_im)?),
            });
        }
        let bad = |m: &str| Err(Error::Invalid(format!("loop {}: {m}", raw.name)));
        if exact.len() < 2 {
            return bad("needs at least two vertices");
        }
        let first = &exact[0];
        let last = &exact[exact.len() - 1];
        let zero_r: Rational = (BigInt::from(0), BigInt::from(1));
        let one_r: Rational = (BigInt::from(1), BigInt::from(1));
        if !rat_eq(&first.t, &zero_r) || !rat_eq(&last.t, &one_r) {
            return bad("time marks must run from 0 to 1");
        }
        if exact.windows(2).any(|w| &w[0].t.0 * &w[1].t.1 >= &w[1].t.0 * &w[0].t.1) {
            return bad("time marks must increase strictly");
        }
        let same = |x: &Exact, y: &Exact| (0..2).all(|i| rat_eq(&x.a[i], &y.a[i]) && rat_eq(&x.c[i], &y.c[i]));
        if !same(first, last) {
            return bad("first and last vertex differ; the loop is not closed");
        }
        if raw.symmetric {
            let n = exact.len();
            for i in 0..n {
                let (x, y) = (&exact[i], &exact[n - 1 - i]);
                let t_sum = (&x.t.0 * &y.t.1 + &y.t.0 * &x.t.1, &x.t.1 * &y.t.1);
                let mirrored = rat_eq(&t_sum, &one_r)
                    && rat_eq(&x.a[0], &y.a[0])
                    && rat_eq(&x.a[1], &rat_neg(&y.a[1]))
                    && rat_eq(&x.c[0], &y.c[0])
                    && rat_eq(&x.c[1], &rat_neg(&y.c[1]));
                if !mirrored {
                    return bad("symmetric flag set but the second half does not mirror the first");
                }
            }
        }
        Ok(ParamLoop {
            name: raw.name,
            vertices,
            symmetric: raw.symmetric,
            zero_side: raw.zero_side,
        })
    }

    pub fn from_file(path: &Path) -> Result<ParamLoop> {
        ParamLoop::from_toml(&std::fs::read_to_string(path)?)
    }

    /// The loop that stays at one parameter.
    pub fn constant(a: CInterval, c: CInterval) -> ParamLoop {
        let v = |t: f64| LoopVertex {
            t: Interval::point(t),
            a,
            c,
        };
        ParamLoop {
            name: "constant".into(),
            vertices: vec![v(0.0), v(1.0)],
            symmetric: true,
            zero_side: ZeroSide::Negative,
        }
    }

    pub fn basepoint(&self) -> Result<Param> {
        let v = self.vertices[0];
        Param::complex(v.a, v.c)
    }

    /// Parameter hull of the loop over `t ∈ [t0, t1]`.
    pub fn hull_over(&self, t0: Interval, t1: Interval) -> Result<Param> {
        let mut acc: Option<(CInterval, CInterval)> = None;
        let mut add = |a: CInterval, c: CInterval| {
            acc = Some(match acc {
                None => (a, c),
                Some((a0, c0)) => (a0.hull(a), c0.hull(c)),
            });
        };
        for t in [t0, t1] {
            let (a, c) = self.position(t)?;
            add(a, c);
        }
        for v in &self.vertices {
            if v.t.hi() >= t0.lo() && v.t.lo() <= t1.hi() {
                add(v.a, v.c);
            }
        }
        let (a, c) = acc.expect("two endpoints");
        Param::complex(a, c)
    }

    /// Enclosure of the loop position at time `t`.
    pub fn position(&self, t: Interval) -> Result<(CInterval, CInterval)> {
        let vs = &self.vertices;
        let mut out: Option<(CInterval, CInterval)> = None;
        for w in vs.windows(2) {
            if t.hi() < w[0].t.lo() || t.lo() > w[1].t.hi() {
                continue;
            }
            let s = t.sub(w[0].t)?.div(w[1].t.sub(w[0].t)?)?;
            let s = s
                .intersection(Interval::new(0.0, 1.0)?)
                .unwrap_or(Interval::new(0.0, 1.0)?);
            let s = CInterval::real(s);
            let a = w[0].a.add(s.mul(w[1].a.sub(w[0].a)?)?)?;
            let c = w[0].c.add(s.mul(w[1].c.sub(w[0].c)?)?)?;
            out = Some(match out {
                None => (a, c),
                Some((a0, c0)) => (a0.hull(a), c0.hull(c)),
            });
        }
        out.ok_or_else(|| Error::Domain("time outside [0, 1]"))
    }

    /// Hull of all vertices.
    pub fn hull(&self) -> Result<Param> {
        self.hull_over(Interval::ZERO, Interval::ONE)
    }
}

/// Common symmetric grid domain for every parameter of `p`.
pub fn loop_domain(hull: &Param) -> Result<IntervalBox> {
    crate::hyp::combinatorial_domain(hull)
}

/// Outer enclosure of `K` for every parameter in `p`, at grid depth `depth`
/// over `domain`.
pub fn enclose_k_over(p: &Param, domain: &IntervalBox, depth: u8, budget: usize) -> Result<CubicalSet> {
    let start = CubicalSet::full(Grid::uniform(domain.clone(), 0)?)?;
    let f = |b: &IntervalBox| henon::eval_fwd(p, b);
    cubical::refine_loop(&start, &f, depth as usize, Prune::Invariant, budget)
}

const RE_Y: usize = 2;

fn side_label(grid: &Grid, id: CubeId, zero_side: ZeroSide) -> u8 {
    let negative = grid.unpack(id)[RE_Y] < grid.cells(RE_Y) / 2;
    match (zero_side, negative) {
        (ZeroSide::Negative, true) | (ZeroSide::Positive, false) => 0,
        _ => 1,
    }
}

/// Labels 0/1 of a basepoint enclosure by the sign of `Re y`.
///
/// # Errors
/// `RefineNeeded` when a connected component has cubes on both sides.
pub fn initial_partition(n0: &CubicalSet, zero_side: ZeroSide) -> Result<Vec<u8>> {
    if n0.grid().dim() != 4 {
        return Err(Error::Invalid("partition needs a complex enclosure".into()));
    }
    if n0.grid().depths()[RE_Y] == 0 {
        return Err(Error::RefineNeeded {
            slice: 0,
            reason: "grid has no Re y = 0 face".into(),
        });
    }
    let labels: Vec<u8> = n0.iter().map(|id| side_label(n0.grid(), id, zero_side)).collect();
    let comp = n0.components();
    let k = comp.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut seen = vec![0u8; k];
    for (i, &c) in comp.iter().enumerate() {
        seen[c as usize] |= 1 << labels[i];
    }
    if seen.iter().any(|&s| s == 3) {
        return Err(Error::RefineNeeded {
            slice: 0,
            reason: "a component meets both sides of Re y = 0".into(),
        });
    }
    if !labels.contains(&0) || !labels.contains(&1) {
        return Err(Error::RefineNeeded {
            slice: 0,
            reason: "one side of Re y = 0 is empty".into(),
        });
    }
    Ok(labels)
}

/// Per-slice enclosures of `K` along a loop with the continued labels.
#[derive(Clone, Debug)]
pub struct PartitionTrack {
    pub loop_name: String,
    pub zero_side: ZeroSide,
    pub n_steps: usize,
    pub depth: u8,
    pub params: Vec<Param>,
    pub slices: Vec<CubicalSet>,
    /// 0 or 1 for cubes in a labeled tube, 2 for cubes in no tube.
    pub labels: Vec<Vec<u8>>,
    pub basepoint: Param,
    pub domain: IntervalBox,
}

/// Complex conjugate of a cube on a grid whose domain is symmetric.
fn mirror_cube(g: &Grid, id: CubeId) -> CubeId {
    let mut c = g.unpack(id);
    for ax in [1, 3] {
        c[ax] = g.cells(ax) - 1 - c[ax];
    }
    g.pack(&c[..g.dim()])
}

fn mirror_set(s: &CubicalSet) -> CubicalSet {
    let v = s.iter().map(|id| mirror_cube(s.grid(), id)).collect();
    CubicalSet::from_cubes(s.grid().clone(), v)
}

/// Continues the basepoint partition around `lp` in `n_steps` slices.
///
/// # Errors
/// `RefineNeeded { slice }` names the first slice at which the 0- and
/// 1-rooted tubes touch; `Domain` if the basepoint is not certified to lie in
/// the Devaney–Nitecki region.
pub fn continue_partition(lp: &ParamLoop, n_steps: usize, depth: u8, budget: usize) -> Result<PartitionTrack> {
    if n_steps == 0 {
        return Err(Error::Invalid("n_steps must be positive".into()));
    }
    let base = lp.basepoint()?;
    if henon::in_dn(&base)? != Tri::Yes {
        return Err(Error::Domain("loop basepoint is not certified inside DN"));
    }
    let domain = loop_domain(&lp.hull()?)?;
    let nt = Interval::point(n_steps as f64);
    let params: Vec<Param> = (0..n_steps)
        .map(|k| {
            let t0 = Interval::point(k as f64).div(nt)?;
            let t1 = Interval::point(k as f64 + 1.0).div(nt)?;
            lp.hull_over(t0, t1)
        })
        .collect::<Result<_>>()?;
    // With a symmetric loop, slice n−1−k is the conjugate of slice k.
    let own = if lp.symmetric { n_steps.div_ceil(2) } else { n_steps };
    let computed: Vec<Result<CubicalSet>> = params[..own]
        .par_iter()
        .map(|p| enclose_k_over(p, &domain, depth, budget))
        .collect();
    let mut slices: Vec<CubicalSet> = computed.into_iter().collect::<Result<_>>()?;
    for k in own..n_steps {
        let m = mirror_set(&slices[n_steps - 1 - k]);
        slices.push(m);
    }
    let grid = slices[0].grid().clone();
    let roots = initial_partition(&slices[0], lp.zero_side)?;

    let offs: Vec<usize> = std::iter::once(0)
        .chain(slices.iter().scan(0, |acc, s| {
            *acc += s.len();
            Some(*acc)
        }))
        .collect();
    let total = offs[n_steps];
    let mut uf = UnionFind::new(total);
    let mut bits = vec![0u8; total];
    for (i, &l) in roots.iter().enumerate() {
        bits[i] = 1 << l;
    }
    let join = |uf: &mut UnionFind, bits: &mut Vec<u8>, x: usize, y: usize| -> bool {
        let (rx, ry) = (uf.find(x), uf.find(y));
        if rx == ry {
            return false;
        }
        let b = bits[rx] | bits[ry];
        uf.union(rx, ry);
        let r = uf.find(rx);
        bits[r] = b;
        b == 3
    };
    for k in 0..n_steps {
        let s = &slices[k];
        let mut merged = false;
        for (i, id) in s.iter().enumerate() {
            for n in CubicalSet::neighbors_of(&grid, id) {
                if n > id {
                    if let Some(j) = s.index_of(n) {
                        merged |= join(&mut uf, &mut bits, offs[k] + i, offs[k] + j);
                    }
                }
            }
            if k > 0 {
                let prev = &slices[k - 1];
                let touching = std::iter::once(id).chain(CubicalSet::neighbors_of(&grid, id));
                for n in touching {
                    if let Some(j) = prev.index_of(n) {
                        merged |= join(&mut uf, &mut bits, offs[k] + i, offs[k - 1] + j);
                    }
                }
            }
        }
        if merged {
            return Err(Error::RefineNeeded {
                slice: k,
                reason: "the 0 and 1 tubes meet".into(),
            });
        }
    }
    let labels = (0..n_steps)
        .map(|k| {
            (0..slices[k].len())
                .map(|i| match bits[uf.find(offs[k] + i)] {
                    1 => 0,
                    2 => 1,
                    _ => 2,
                })
                .collect()
        })
        .collect();
    Ok(PartitionTrack {
        loop_name: lp.name.clone(),
        zero_side: lp.zero_side,
        n_steps,
        depth,
        params,
        slices,
        labels,
        basepoint: base,
        domain,
    })
}

/// Runs [`continue_partition`], doubling `n_steps` on each `RefineNeeded`
/// and deepening the grid once `max_steps` is reached.
pub fn continue_with_escalation(
    lp: &ParamLoop,
    n_steps: usize,
    depth: u8,
    max_steps: usize,
    max_depth: u8,
    budget: usize,
    mut log: impl FnMut(usize, u8, &Error),
) -> Result<PartitionTrack> {
    let (mut n, mut d) = (n_steps, depth);
    loop {
        match continue_partition(lp, n, d, budget) {
            Ok(t) => return Ok(t),
            Err(e @ Error::RefineNeeded { .. }) => {
                log(n, d, &e);
                if n * 2 <= max_steps {
                    n *= 2;
                } else if d < max_depth {
                    d += 1;
                } else {
                    return Err(e);
                }
            }
            Err(e) => return Err(e),
        }
    }
}

impl PartitionTrack {
    /// Writes one cube-set file per slice and a label index.
    pub fn dump(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut index = std::fs::File::create(dir.join("labels.txt"))?;
        writeln!(index, "loop {}", self.loop_name)?;
        writeln!(index, "slices {} depth {}", self.n_steps, self.depth)?;
        for (k, s) in self.slices.iter().enumerate() {
            let name = format!("slice_{k:04}.cubes");
            s.write_to(std::io::BufWriter::new(std::fs::File::create(dir.join(&name))?))?;
            let l: String = self.labels[k]
                .iter()
                .map(|&x| match x {
                    0 => '0',
                    1 => '1',
                    _ => '-',
                })
                .collect();
            writeln!(index, "{name} {l}")?;
        }
        Ok(())
    }

    /// Reads slice `k` and its labels back from a dump directory.
    pub fn read_slice(dir: &Path, k: usize) -> Result<(CubicalSet, Vec<u8>)> {
        let name = format!("slice_{k:04}.cubes");
        let f = std::fs::File::open(dir.join(&name))?;
        let set = CubicalSet::read_from(std::io::BufReader::new(f))?;
        let index = std::fs::read_to_string(dir.join("labels.txt"))?;
        let line = index
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{name} ")).or((l == name).then_some("")))
            .ok_or_else(|| Error::Parse(format!("{name} missing from labels.txt")))?;
        let labels: Vec<u8> = line
            .bytes()
            .map(|b| match b {
                b'0' => 0,
                b'1' => 1,
                _ => 2,
            })
            .collect();
        if labels.len() != set.len() {
            return Err(Error::Parse(format!("{name}: label count does not match cube count")));
        }
        Ok((set, labels))
    }

    fn final_label(&self, coarse: CubeId) -> Option<u8> {
        let last = self.n_steps - 1;
        let i = self.slices[last].index_of(coarse)?;
        match self.labels[last][i] {
            2 => None,
            l => Some(l),
        }
    }
}

/// Interchanged word pairs with the dot after coordinate 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SwapResult {
    pub pairs: Vec<(Word, Word)>,
}

impl std::fmt::Display for SwapResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.pairs.iter().map(|(u, v)| format!("{u} <-> {v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

fn propagate(g: &cubical::Csr, start: usize, steps: usize, label: &[u8]) -> Vec<Option<u8>> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = vec![start as u32];
    let mut mark = vec![false; label.len()];
    for i in 0..=steps {
        if i > 0 {
            let mut next = Vec::new();
            for &v in &cur {
                for &w in g.succ(v as usize) {
                    if !mark[w as usize] {
                        mark[w as usize] = true;
                        next.push(w);
                    }
                }
            }
            for &w in &next {
                mark[w as usize] = false;
            }
            cur = next;
        }
        let first = cur.first().map(|&v| label[v as usize]);
        match first {
            Some(l) if cur.iter().all(|&v| label[v as usize] == l) => out.push(Some(l)),
            _ => {
                out.resize(steps + 1, None);
                break;
            }
        }
    }
    out
}

/// Reads the changed region of a successful track as symbol windows.
///
/// The basepoint enclosure is refined `extra_depth` levels below the track
/// grid; each of its cubes gets symbols `s_{−d}..s_d` from the forward and
/// backward images in the transition graph, and the shortest window around
/// coordinate 0 that separates changed from unchanged cubes gives the words.
///
/// # Errors
/// `Ambiguous` when no window up to `d` is determined by the cubes.
pub fn identify_swapped_blocks(track: &PartitionTrack, d: usize, extra_depth: u8, budget: usize) -> Result<SwapResult> {
    let base = track.basepoint;
    let fine = enclose_k_over(&base, &track.domain, track.depth + extra_depth, budget)?;
    let coarse_grid = track.slices[0].grid();
    let fg = fine.grid();
    let f = |b: &IntervalBox| henon::eval_fwd(&base, b);
    let g = cubical::build_graph(&fine, &f)?;
    let inv = g.edges.inv_mask();
    let (fwd, kept) = g.edges.restrict(&inv);
    let cubes = fine.select(&inv);
    drop(kept);
    let bwd = fwd.reversed();
    let initial: Vec<u8> = cubes.iter().map(|id| side_label(fg, id, track.zero_side)).collect();
    let changed: Vec<Option<bool>> = cubes
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let mut c = fg.unpack(id);
            for x in c.iter_mut().take(4) {
                *x >>= extra_depth;
            }
            let parent = coarse_grid.pack(&c[..4]);
            track.final_label(parent).map(|l| l != initial[i])
        })
        .collect();
    let rows: Vec<(Vec<Option<u8>>, Vec<Option<u8>>)> = (0..cubes.len())
        .into_par_iter()
        .map(|i| (propagate(&fwd, i, d, &initial), propagate(&bwd, i, d, &initial)))
        .collect();
    if !changed.iter().any(|c| *c == Some(true)) {
        return Ok(SwapResult::default());
    }
    // Windows [−l, r] by increasing length.
    let mut windows: Vec<(usize, usize)> = (0..=d).flat_map(|l| (0..=d).map(move |r| (l, r))).collect();
    windows.sort_by_key(|&(l, r)| (l + r, l));
    'window: for (l, r) in windows {
        let mut classes: std::collections::BTreeMap<Vec<u8>, bool> = Default::default();
        for (i, row) in rows.iter().enumerate() {
            let Some(ch) = changed[i] else { continue };
            let mut w = Vec::with_capacity(l + r + 1);
            for j in (1..=l).rev() {
                match row.1[j] {
                    Some(s) => w.push(s),
                    None => continue 'window,
                }
            }
            for j in 0..=r {
                match row.0[j] {
                    Some(s) => w.push(s),
                    None => continue 'window,
                }
            }
            match classes.get(&w) {
                Some(&prev) if prev != ch => continue 'window,
                _ => {
                    classes.insert(w, ch);
                }
            }
        }
        let hot: Vec<Vec<u8>> = classes.into_iter().filter(|(_, c)| *c).map(|(w, _)| w).collect();
        let mut pairs = Vec::new();
        for u in &hot {
            let mut v = u.clone();
            v[l] ^= 1;
            if !hot.contains(&v) {
                return Err(Error::Ambiguous(format!(
                    "changed window {u:?} has no changed partner"
                )));
            }
            if u < &v {
                pairs.push((Word::new(u.clone(), Some(l + 1))?, Word::new(v, Some(l + 1))?));
            }
        }
        return Ok(SwapResult { pairs });
    }
    Err(Error::Ambiguous(format!(
        "no window up to radius {d} separates the changed cubes"
    )))
}

/// The block-swap automorphism of a swap result; identity when empty.
pub fn monodromy_of(swaps: &SwapResult) -> Result<Automorphism> {
    if swaps.pairs.is_empty() {
        return Ok(Automorphism::identity());
    }
    Ok(Automorphism::swap(BlockSwap::new(&swaps.pairs)?))
}

/// Monodromy of the loop around the real axis outside the horseshoe locus:
/// the global symbol flip.
pub fn gamma_empty() -> Automorphism {
    Automorphism::flip()
}

/// Maps a cube set to its complex conjugate (exposed for symmetry checks).
pub fn conjugate_set(s: &CubicalSet) -> CubicalSet {
    mirror_set(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::henon::Mode;

    const SMALL: &str = r#"
name = "small"
symmetric = true
[[vertex]]
t = "0"
a = "1"
c = "-10"
[[vertex]]
t = "0.5"
a = "1"
c = "-10"
c_im = "0.5"
[[vertex]]
t = "1"
a = "1"
c = "-10"
"#;

    #[test]
    fn symmetric_flag_is_checked() {
        assert!(ParamLoop::from_toml(SMALL).is_err());
        let ok = SMALL.replacen("c_im = \"0.5\"", "", 1);
        let lp = ParamLoop::from_toml(&ok).unwrap();
        assert_eq!(lp.vertices.len(), 3);
    }

    #[test]
    fn unclosed_loop_is_rejected() {
        let t = SMALL.replacen("c_im = \"0.5\"", "", 1).replace("c = \"-10\"\n\"#", "");
        let bad = t.rsplit_once("c = \"-10\"").map(|(h, tl)| format!("{h}c = \"-9\"{tl}")).unwrap();
        assert!(ParamLoop::from_toml(&bad).is_err());
    }

    #[test]
    fn hull_covers_vertices() {
        let text = r#"
name = "square"
[[vertex]]
t = "0"
a = "1"
c = "-10"
[[vertex]]
t = "0.25"
a = "1"
c = "-9"
[[vertex]]
t = "0.5"
a = "1"
c = "-9"
c_im = "1"
[[vertex]]
t = "1"
a = "1"
c = "-10"
"#;
        let lp = ParamLoop::from_toml(text).unwrap();
        let h = lp.hull_over(Interval::point(0.125), Interval::point(0.375)).unwrap();
        assert!(h.c().re.contains(-9.5) && h.c().re.contains(-9.0));
        assert!(h.c().im.contains(0.5) && !h.c().im.contains(0.6));
    }

    #[test]
    fn mirror_is_an_involution() {
        let d = IntervalBox::new(&[Interval::symmetric(2.0).unwrap(); 4]);
        let g = Grid::uniform(d, 2).unwrap();
        let s = CubicalSet::from_cubes(g.clone(), vec![g.pack(&[0, 1, 2, 3]), g.pack(&[3, 3, 0, 0])]);
        assert_eq!(mirror_set(&mirror_set(&s)), s);
        assert!(mirror_set(&s).contains(g.pack(&[0, 2, 2, 0])));
    }

    #[test]
    fn coarse_grid_needs_refinement() {
        let p = Param::point(1.0, -10.0, Mode::Complex).unwrap();
        let dom = loop_domain(&p).unwrap();
        let n0 = enclose_k_over(&p, &dom, 1, 1 << 20).unwrap();
        assert!(matches!(
            initial_partition(&n0, ZeroSide::Negative),
            Err(Error::RefineNeeded { .. })
        ));
    }

    #[test]
    fn gamma_empty_is_an_involution() {
        let x = crate::shift::PeriodicSeq::new(vec![0, 1, 1, 0, 1]).unwrap();
        let f = gamma_empty();
        let twice = crate::shift::apply_periodic(&f, &crate::shift::apply_periodic(&f, &x));
        assert_eq!(twice, x);
    }
}
