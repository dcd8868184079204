//! Uniform cubical grids, cube sets, rigorous transition graphs and the
//! combinatorial invariant-set machinery built on them.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalBox, MAX_DIM};

/// Packed cube coordinates; axis 0 occupies the most significant bits, so
/// numeric order is lexicographic order of the coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeId(pub u64);

/// Cube coordinates per axis.
pub type Coords = [u32; MAX_DIM];

/// A dyadic subdivision of a domain box, `2^depth[i]` cells along axis `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    domain: IntervalBox,
    depths: [u8; MAX_DIM],
    shifts: [u8; MAX_DIM],
    // 2^depth / width per axis, for locating points.
    scale: [Interval; MAX_DIM],
}

pub const MAX_AXIS_DEPTH: u8 = 31;

impl Grid {
    pub fn new(domain: IntervalBox, depths: &[u8]) -> Result<Self> {
        let n = domain.dim();
        if depths.len() != n || n == 0 {
            return Err(Error::Invalid(format!(
                "grid needs {} depths, got {}",
                n,
                depths.len()
            )));
        }
        if let Some(d) = depths.iter().find(|&&d| d > MAX_AXIS_DEPTH) {
            return Err(Error::DepthLimit(format!("axis depth {d} > {MAX_AXIS_DEPTH}")));
        }
        let total: u32 = depths.iter().map(|&d| d as u32).sum();
        if total > 64 {
            return Err(Error::DepthLimit(format!("total depth {total} > 64")));
        }
        if domain.iter().any(|i| i.is_point()) {
            return Err(Error::Invalid("grid domain must have positive widths".into()));
        }
        let mut g = Grid {
            domain,
            depths: [0; MAX_DIM],
            shifts: [0; MAX_DIM],
            scale: [Interval::ZERO; MAX_DIM],
        };
        let mut shift = 0u8;
        for i in (0..n).rev() {
            g.depths[i] = depths[i];
            g.shifts[i] = shift;
            shift += depths[i];
            let width = Interval::point(domain[i].hi()).sub(Interval::point(domain[i].lo()))?;
            g.scale[i] = Interval::point((1u64 << depths[i]) as f64).div(width)?;
        }
        Ok(g)
    }

    pub fn uniform(domain: IntervalBox, depth: u8) -> Result<Self> {
        let d = vec![depth; domain.dim()];
        Grid::new(domain, &d)
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &IntervalBox {
        &self.domain
    }

    pub fn depths(&self) -> &[u8] {
        &self.depths[..self.dim()]
    }

    pub fn cells(&self, axis: usize) -> u32 {
        1u32 << self.depths[axis]
    }

    pub fn pack(&self, c: &[u32]) -> CubeId {
        let mut key = 0u64;
        for (i, &ci) in c.iter().enumerate().take(self.dim()) {
            debug_assert!(ci < self.cells(i));
            key |= (ci as u64) << self.shifts[i];
        }
        CubeId(key)
    }

    pub fn unpack(&self, id: CubeId) -> Coords {
        let mut c = [0u32; MAX_DIM];
        for (i, ci) in c.iter_mut().enumerate().take(self.dim()) {
            let mask = (1u64 << self.depths[i]) - 1;
            *ci = ((id.0 >> self.shifts[i]) & mask) as u32;
        }
        c
    }

    /// Grid coordinate `k / 2^depth` along `axis`, enclosed.
    fn corner(&self, axis: usize, k: u32) -> Interval {
        let dom = self.domain[axis];
        if k == 0 {
            return Interval::point(dom.lo());
        }
        if k == self.cells(axis) {
            return Interval::point(dom.hi());
        }
        let frac = Interval::point(k as f64 / self.cells(axis) as f64);
        let width = Interval::point(dom.hi()).sub(Interval::point(dom.lo()));
        // Widths of finite domains never overflow after validation in `new`.
        let width = width.expect("grid width is finite");
        frac.mul(width)
            .and_then(|t| t.add(Interval::point(dom.lo())))
            .expect("grid corner is finite")
    }

    /// Outward enclosure of the cube's ideal box.
    pub fn cube_box(&self, id: CubeId) -> IntervalBox {
        let c = self.unpack(id);
        let mut b = IntervalBox::zeros(self.dim());
        for i in 0..self.dim() {
            let lo = self.corner(i, c[i]).lo();
            let hi = self.corner(i, c[i] + 1).hi();
            b[i] = Interval::new(lo, hi).expect("ordered corners");
        }
        b
    }

    /// Cell index range along `axis` meeting `t`, and whether `t` leaves the domain.
    pub fn axis_range(&self, axis: usize, t: Interval) -> Option<(u32, u32, bool)> {
        let n = self.cells(axis) as f64;
        let rel = t
            .sub(Interval::point(self.domain[axis].lo()))
            .and_then(|r| r.mul(self.scale[axis]));
        let (slo, shi) = match rel {
            Ok(s) => (s.lo(), s.hi()),
            Err(_) => return Some((0, self.cells(axis) - 1, true)),
        };
        let clipped = slo < 0.0 || shi > n;
        if shi < 0.0 || slo > n {
            return None;
        }
        let klo = (slo.ceil() - 1.0).max(0.0);
        let khi = shi.floor().min(n - 1.0);
        if klo > khi {
            return None;
        }
        Some((klo as u32, khi as u32, clipped))
    }

    /// Per-axis index ranges of cubes meeting `b`; `None` if `b` misses the domain.
    pub fn box_ranges(&self, b: &IntervalBox) -> Option<([(u32, u32); MAX_DIM], bool)> {
        let mut r = [(0u32, 0u32); MAX_DIM];
        let mut clipped = false;
        for (i, ri) in r.iter_mut().enumerate().take(self.dim()) {
            let (lo, hi, c) = self.axis_range(i, b[i])?;
            *ri = (lo, hi);
            clipped |= c;
        }
        Some((r, clipped))
    }

    /// Same domain with `depth + 1` on the chosen axes.
    pub fn refined(&self, axes: &[usize]) -> Result<Grid> {
        let mut d = self.depths().to_vec();
        for &a in axes {
            if a >= d.len() {
                return Err(Error::Invalid(format!("axis {a} out of range")));
            }
            d[a] += 1;
        }
        Grid::new(self.domain, &d)
    }

    /// Number of cubes in the whole grid (saturating).
    pub fn total_cubes(&self) -> u64 {
        let bits: u32 = self.depths().iter().map(|&d| d as u32).sum();
        if bits >= 64 {
            u64::MAX
        } else {
            1u64 << bits
        }
    }
}

/// Calls `f` on every lattice point of the product of inclusive ranges.
fn for_each_in_ranges(n: usize, r: &[(u32, u32)], mut f: impl FnMut(&Coords)) {
    let mut c = [0u32; MAX_DIM];
    for i in 0..n {
        c[i] = r[i].0;
    }
    loop {
        f(&c);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] < r[i].1 {
                c[i] += 1;
                break;
            }
            c[i] = r[i].0;
        }
    }
}

fn range_volume(n: usize, r: &[(u32, u32)]) -> u128 {
    r[..n].iter().map(|&(a, b)| (b - a + 1) as u128).product()
}

/// A sorted, deduplicated set of cubes of one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicalSet {
    grid: Grid,
    cubes: Vec<CubeId>,
}

impl CubicalSet {
    pub fn empty(grid: Grid) -> Self {
        CubicalSet {
            grid,
            cubes: Vec::new(),
        }
    }

    pub fn from_cubes(grid: Grid, mut cubes: Vec<CubeId>) -> Self {
        cubes.sort_unstable();
        cubes.dedup();
        CubicalSet { grid, cubes }
    }

    /// Every cube of the grid.
    pub fn full(grid: Grid) -> Result<Self> {
        let total = grid.total_cubes();
        if total > 1 << 32 {
            return Err(Error::RefinementExhausted {
                cubes: usize::MAX,
                budget: 1 << 32,
            });
        }
        let mut r = [(0u32, 0u32); MAX_DIM];
        for (i, ri) in r.iter_mut().enumerate().take(grid.dim()) {
            *ri = (0, grid.cells(i) - 1);
        }
        let mut cubes = Vec::with_capacity(total as usize);
        for_each_in_ranges(grid.dim(), &r, |c| cubes.push(grid.pack(c)));
        Ok(CubicalSet::from_cubes(grid, cubes))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn cubes(&self) -> &[CubeId] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, id: CubeId) -> bool {
        self.cubes.binary_search(&id).is_ok()
    }

    pub fn index_of(&self, id: CubeId) -> Option<usize> {
        self.cubes.binary_search(&id).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = CubeId> + '_ {
        self.cubes.iter().copied()
    }

    /// Cube whose ideal box contains the point, ties broken toward lower indices.
    pub fn locate(&self, x: &[f64]) -> Option<CubeId> {
        let g = &self.grid;
        let mut c = [0u32; MAX_DIM];
        for i in 0..g.dim() {
            let (lo, hi, clipped) = g.axis_range(i, Interval::point(x[i]))?;
            if clipped && (x[i] < g.domain[i].lo() || x[i] > g.domain[i].hi()) {
                return None;
            }
            c[i] = lo.min(hi);
        }
        Some(g.pack(&c))
    }

    fn check_same(&self, other: &CubicalSet) -> Result<()> {
        if self.grid != other.grid {
            Err(Error::GridMismatch)
        } else {
            Ok(())
        }
    }

    pub fn union(&self, other: &CubicalSet) -> Result<CubicalSet> {
        self.check_same(other)?;
        let mut v = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.cubes[i].cmp(&other.cubes[j]) {
                std::cmp::Ordering::Less => {
                    v.push(self.cubes[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    v.push(other.cubes[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    v.push(self.cubes[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        v.extend_from_slice(&self.cubes[i..]);
        v.extend_from_slice(&other.cubes[j..]);
        Ok(CubicalSet {
            grid: self.grid.clone(),
            cubes: v,
        })
    }

    pub fn intersection(&self, other: &CubicalSet) -> Result<CubicalSet> {
        self.check_same(other)?;
        let cubes = self.iter().filter(|&c| other.contains(c)).collect();
        Ok(CubicalSet {
            grid: self.grid.clone(),
            cubes,
        })
    }

    pub fn difference(&self, other: &CubicalSet) -> Result<CubicalSet> {
        self.check_same(other)?;
        let cubes = self.iter().filter(|&c| !other.contains(c)).collect();
        Ok(CubicalSet {
            grid: self.grid.clone(),
            cubes,
        })
    }

    /// Keeps the cubes at positions where `mask` is true.
    pub fn select(&self, mask: &[bool]) -> CubicalSet {
        let cubes = self
            .cubes
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(&c, _)| c)
            .collect();
        CubicalSet {
            grid: self.grid.clone(),
            cubes,
        }
    }

    /// Grid cubes sharing at least a vertex with `id` (excluding `id`).
    pub fn neighbors_of(grid: &Grid, id: CubeId) -> Vec<CubeId> {
        let c = grid.unpack(id);
        let mut r = [(0u32, 0u32); MAX_DIM];
        for i in 0..grid.dim() {
            r[i] = (c[i].saturating_sub(1), (c[i] + 1).min(grid.cells(i) - 1));
        }
        let mut out = Vec::new();
        for_each_in_ranges(grid.dim(), &r, |n| {
            let k = grid.pack(n);
            if k != id {
                out.push(k);
            }
        });
        out
    }

    /// Grid cubes touching `self` but not in it.
    pub fn collar(&self) -> CubicalSet {
        let mut v: Vec<CubeId> = self
            .cubes
            .par_iter()
            .flat_map_iter(|&c| {
                CubicalSet::neighbors_of(&self.grid, c)
                    .into_iter()
                    .filter(|&n| !self.contains(n))
            })
            .collect();
        v.par_sort_unstable();
        v.dedup();
        CubicalSet {
            grid: self.grid.clone(),
            cubes: v,
        }
    }

    /// Cubes of `self` touching a cube outside `self` or the domain boundary.
    pub fn boundary_cubes(&self) -> CubicalSet {
        let g = &self.grid;
        let cubes = self
            .iter()
            .filter(|&id| {
                let c = g.unpack(id);
                let at_edge = (0..g.dim()).any(|i| c[i] == 0 || c[i] + 1 == g.cells(i));
                at_edge
                    || CubicalSet::neighbors_of(g, id)
                        .into_iter()
                        .any(|n| !self.contains(n))
            })
            .collect();
        CubicalSet {
            grid: g.clone(),
            cubes,
        }
    }

    /// Connected components under vertex adjacency; one label per cube, labels
    /// numbered by first occurrence.
    pub fn components(&self) -> Vec<u32> {
        let mut uf = UnionFind::new(self.len());
        for (i, &c) in self.cubes.iter().enumerate() {
            for n in CubicalSet::neighbors_of(&self.grid, c) {
                if n > c {
                    if let Some(j) = self.index_of(n) {
                        uf.union(i, j);
                    }
                }
            }
        }
        uf.labels()
    }

    /// Children of every cube after refining the chosen axes.
    pub fn subdivide(&self, axes: &[usize]) -> Result<CubicalSet> {
        let g2 = self.grid.refined(axes)?;
        let n = self.grid.dim();
        let mut split = [false; MAX_DIM];
        for &a in axes {
            split[a] = true;
        }
        let mut cubes = Vec::with_capacity(self.len() << axes.len());
        for id in self.iter() {
            let c = self.grid.unpack(id);
            let mut r = [(0u32, 0u32); MAX_DIM];
            for i in 0..n {
                r[i] = if split[i] {
                    (2 * c[i], 2 * c[i] + 1)
                } else {
                    (c[i], c[i])
                };
            }
            for_each_in_ranges(n, &r, |k| cubes.push(g2.pack(k)));
        }
        Ok(CubicalSet::from_cubes(g2, cubes))
    }

    /// Writes the cube-set text format.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        let mut s = String::new();
        writeln!(s, "cubeset 1").ok();
        writeln!(s, "dims {}", self.grid.dim()).ok();
        let depths: Vec<String> = self.grid.depths().iter().map(|d| d.to_string()).collect();
        writeln!(s, "depths {}", depths.join(" ")).ok();
        for i in self.grid.domain.iter() {
            writeln!(s, "domain {:?} {:?}", i.lo(), i.hi()).ok();
        }
        writeln!(s, "count {}", self.len()).ok();
        w.write_all(s.as_bytes())?;
        for c in &self.cubes {
            writeln!(w, "{}", c.0)?;
        }
        Ok(())
    }

    /// Reads the cube-set text format; the exact inverse of [`write_to`](Self::write_to).
    pub fn read_from(r: impl BufRead) -> Result<CubicalSet> {
        let bad = |m: &str| Error::Parse(format!("cube set: {m}"));
        let mut lines = r.lines();
        let mut next = || -> Result<String> {
            lines
                .next()
                .ok_or_else(|| bad("unexpected end of file"))?
                .map_err(Error::from)
        };
        if next()?.trim() != "cubeset 1" {
            return Err(bad("missing header"));
        }
        let field = |line: String, key: &str| -> Result<String> {
            line.strip_prefix(key)
                .map(|s| s.trim().to_string())
                .ok_or_else(|| bad(&format!("expected {key}")))
        };
        let dims: usize = field(next()?, "dims")?.parse().map_err(|_| bad("dims"))?;
        if dims == 0 || dims > MAX_DIM {
            return Err(bad("dims out of range"));
        }
        let depths: Vec<u8> = field(next()?, "depths")?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("depths")))
            .collect::<Result<_>>()?;
        let mut dom = Vec::with_capacity(dims);
        for _ in 0..dims {
            let f = field(next()?, "domain")?;
            let v: Vec<f64> = f
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("domain bound")))
                .collect::<Result<_>>()?;
            if v.len() != 2 {
                return Err(bad("domain needs two bounds"));
            }
            dom.push(Interval::new(v[0], v[1])?);
        }
        let grid = Grid::new(IntervalBox::new(&dom), &depths)?;
        let count: usize = field(next()?, "count")?.parse().map_err(|_| bad("count"))?;
        let mut cubes = Vec::with_capacity(count);
        for _ in 0..count {
            let k: u64 = next()?.trim().parse().map_err(|_| bad("cube id"))?;
            let id = CubeId(k);
            if grid.pack(&grid.unpack(id)) != id {
                return Err(bad("cube id outside grid"));
            }
            cubes.push(id);
        }
        Ok(CubicalSet::from_cubes(grid, cubes))
    }
}

/// Smallest set of grid cubes whose union contains `b`, and whether `b`
/// sticks out of the domain.
pub fn cover(grid: &Grid, b: &IntervalBox) -> (CubicalSet, bool) {
    let Some((r, clipped)) = grid.box_ranges(b) else {
        return (CubicalSet::empty(grid.clone()), true);
    };
    let mut cubes = Vec::new();
    for_each_in_ranges(grid.dim(), &r, |c| cubes.push(grid.pack(c)));
    (CubicalSet::from_cubes(grid.clone(), cubes), clipped)
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }

    pub(crate) fn labels(&mut self) -> Vec<u32> {
        let n = self.parent.len();
        let mut map = vec![u32::MAX; n];
        let mut next = 0u32;
        let mut out = vec![0u32; n];
        for (i, o) in out.iter_mut().enumerate() {
            let r = self.find(i);
            if map[r] == u32::MAX {
                map[r] = next;
                next += 1;
            }
            *o = map[r];
        }
        out
    }
}

/// Directed graph in compressed sparse row form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    /// From per-vertex successor lists.
    pub fn from_lists(lists: &[Vec<u32>]) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for l in lists {
            targets.extend_from_slice(l);
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    /// From raw parts; `offsets` has one more entry than vertices.
    pub fn from_parts(offsets: Vec<usize>, targets: Vec<u32>) -> Self {
        assert_eq!(offsets.first(), Some(&0));
        assert_eq!(offsets.last(), Some(&targets.len()));
        Csr { offsets, targets }
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn succ(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn reversed(&self) -> Csr {
        let n = self.num_vertices();
        let mut deg = vec![0usize; n + 1];
        for &t in &self.targets {
            deg[t as usize + 1] += 1;
        }
        for i in 0..n {
            deg[i + 1] += deg[i];
        }
        let mut fill = deg.clone();
        let mut targets = vec![0u32; self.targets.len()];
        for v in 0..n {
            for &t in self.succ(v) {
                targets[fill[t as usize]] = v as u32;
                fill[t as usize] += 1;
            }
        }
        Csr {
            offsets: deg,
            targets,
        }
    }

    /// Strongly connected components, each sorted, ordered by smallest vertex.
    pub fn scc(&self) -> Vec<Vec<u32>> {
        let comp = self.scc_ids();
        let k = comp.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); k];
        for (v, &c) in comp.iter().enumerate() {
            out[c as usize].push(v as u32);
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    /// Component id per vertex (iterative Tarjan).
    pub fn scc_ids(&self) -> Vec<u32> {
        const UNSEEN: u32 = u32::MAX;
        let n = self.num_vertices();
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0u32; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![UNSEEN; n];
        let mut stack: Vec<u32> = Vec::new();
        let mut call: Vec<(u32, usize)> = Vec::new();
        let mut next_index = 0u32;
        let mut next_comp = 0u32;
        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root as u32, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root as u32);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                let v = v as usize;
                let succ = self.succ(v);
                if *pos < succ.len() {
                    let w = succ[*pos] as usize;
                    *pos += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w as u32);
                        on_stack[w] = true;
                        call.push((w as u32, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        let p = parent as usize;
                        low[p] = low[p].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().expect("tarjan stack") as usize;
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                }
            }
        }
        comp
    }

    /// Vertices lying on a directed cycle.
    pub fn recurrent_mask(&self) -> Vec<bool> {
        let comp = self.scc_ids();
        let k = comp.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut size = vec![0u32; k];
        for &c in &comp {
            size[c as usize] += 1;
        }
        (0..self.num_vertices())
            .map(|v| {
                size[comp[v] as usize] > 1 || self.succ(v).contains(&(v as u32))
            })
            .collect()
    }

    /// Vertices reachable from the seed set (seeds included).
    pub fn reach(&self, seeds: &[bool]) -> Vec<bool> {
        let mut seen = seeds.to_vec();
        let mut queue: Vec<u32> = (0..seen.len())
            .filter(|&v| seen[v])
            .map(|v| v as u32)
            .collect();
        while let Some(v) = queue.pop() {
            for &w in self.succ(v as usize) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push(w);
                }
            }
        }
        seen
    }

    /// Vertices on some bi-infinite path: reachable from a cycle and reaching one.
    ///
    /// Tarjan numbers components in reverse topological order, so "reaches a
    /// cycle" is one pass over components without building the reverse graph.
    pub fn inv_mask(&self) -> Vec<bool> {
        let n = self.num_vertices();
        let comp = self.scc_ids();
        let k = comp.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut start = vec![0u32; k + 1];
        for &c in &comp {
            start[c as usize + 1] += 1;
        }
        for i in 0..k {
            start[i + 1] += start[i];
        }
        let mut order = vec![0u32; n];
        let mut fill = start.clone();
        for (v, &c) in comp.iter().enumerate() {
            order[fill[c as usize] as usize] = v as u32;
            fill[c as usize] += 1;
        }
        drop(fill);
        let mut good = vec![false; k];
        for c in 0..k {
            let members = &order[start[c] as usize..start[c + 1] as usize];
            let mut g = members.len() > 1;
            for &v in members {
                if g {
                    break;
                }
                for &w in self.succ(v as usize) {
                    let cw = comp[w as usize] as usize;
                    if cw == c || good[cw] {
                        g = true;
                        break;
                    }
                }
            }
            good[c] = g;
        }
        drop(order);
        let rec: Vec<bool> = (0..n)
            .map(|v| {
                let c = comp[v] as usize;
                start[c + 1] - start[c] > 1 || self.succ(v).contains(&(v as u32))
            })
            .collect();
        let mut out = self.reach(&rec);
        for (v, o) in out.iter_mut().enumerate() {
            *o = *o && good[comp[v] as usize];
        }
        out
    }

    /// Subgraph on the kept vertices, renumbered in order.
    pub fn restrict(&self, keep: &[bool]) -> (Csr, Vec<u32>) {
        let mut new_id = vec![u32::MAX; keep.len()];
        let mut kept = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                new_id[v] = kept.len() as u32;
                kept.push(v as u32);
            }
        }
        let mut offsets = Vec::with_capacity(kept.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for &v in &kept {
            targets.extend(
                self.succ(v as usize)
                    .iter()
                    .map(|&w| new_id[w as usize])
                    .filter(|&w| w != u32::MAX),
            );
            offsets.push(targets.len());
        }
        (Csr { offsets, targets }, kept)
    }
}

/// Box map used to build transition graphs.
pub type BoxMap<'a> = dyn Fn(&IntervalBox) -> Result<IntervalBox> + Sync + 'a;

/// Cube set plus its rigorous image graph.
#[derive(Clone, Debug)]
pub struct TransitionGraph {
    pub vertices: CubicalSet,
    pub edges: Csr,
    /// Vertex `v` has image mass outside the vertex set.
    pub escape: Vec<bool>,
}

const CHUNK: usize = 512;

/// Edges from every cube of `s` to each cube of `s` meeting `f(box)`.
pub fn build_graph(s: &CubicalSet, f: &BoxMap) -> Result<TransitionGraph> {
    let grid = s.grid();
    let n = grid.dim();
    let index: FxHashMap<u64, u32> = s
        .cubes()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.0, i as u32))
        .collect();
    let chunks: Vec<Result<(Vec<u32>, Vec<u32>, Vec<bool>)>> = s
        .cubes()
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut lens = Vec::with_capacity(chunk.len());
            let mut targets = Vec::new();
            let mut esc = Vec::with_capacity(chunk.len());
            for &id in chunk {
                let img = f(&grid.cube_box(id))?;
                let start = targets.len();
                let escaped = match grid.box_ranges(&img) {
                    None => true,
                    Some((r, clipped)) => {
                        let vol = range_volume(n, &r);
                        let mut found = 0u128;
                        if vol > 4 * s.len() as u128 + 64 {
                            for (j, &c) in s.cubes().iter().enumerate() {
                                let cc = grid.unpack(c);
                                if (0..n).all(|i| r[i].0 <= cc[i] && cc[i] <= r[i].1) {
                                    targets.push(j as u32);
                                    found += 1;
                                }
                            }
                        } else {
                            for_each_in_ranges(n, &r, |c| {
                                if let Some(&j) = index.get(&grid.pack(c).0) {
                                    targets.push(j);
                                    found += 1;
                                }
                            });
                            targets[start..].sort_unstable();
                        }
                        clipped || found < vol
                    }
                };
                lens.push((targets.len() - start) as u32);
                esc.push(escaped);
            }
            Ok((lens, targets, esc))
        })
        .collect();
    let mut offsets = Vec::with_capacity(s.len() + 1);
    offsets.push(0usize);
    let mut targets = Vec::new();
    let mut escape = Vec::with_capacity(s.len());
    for ch in chunks {
        let (lens, t, e) = ch?;
        for l in lens {
            offsets.push(offsets.last().unwrap() + l as usize);
        }
        targets.extend_from_slice(&t);
        escape.extend_from_slice(&e);
    }
    Ok(TransitionGraph {
        vertices: s.clone(),
        edges: Csr::from_parts(offsets, targets),
        escape,
    })
}

/// Strongly connected components of the graph.
pub fn scc(g: &TransitionGraph) -> Vec<Vec<u32>> {
    g.edges.scc()
}

/// Cubes on some bi-infinite path inside the vertex set.
pub fn inv_vertices(g: &TransitionGraph) -> CubicalSet {
    g.vertices.select(&g.edges.inv_mask())
}

/// Cubes on some directed cycle.
pub fn chain_recurrent_vertices(g: &TransitionGraph) -> CubicalSet {
    g.vertices.select(&g.edges.recurrent_mask())
}

/// Which combinatorial invariant set `refine_loop` keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prune {
    ChainRecurrent,
    Invariant,
}

/// Subdivide every axis, rebuild the graph, prune; repeated `rounds` times.
///
/// Fails with `RefinementExhausted` once a subdivided set exceeds `budget`.
pub fn refine_loop(
    s: &CubicalSet,
    f: &BoxMap,
    rounds: usize,
    prune: Prune,
    budget: usize,
) -> Result<CubicalSet> {
    let axes: Vec<usize> = (0..s.grid().dim()).collect();
    let mut cur = s.clone();
    for _ in 0..rounds {
        if cur.is_empty() {
            let g = cur.grid().refined(&axes)?;
            cur = CubicalSet::empty(g);
            continue;
        }
        cur = cur.subdivide(&axes)?;
        if cur.len() > budget {
            return Err(Error::RefinementExhausted {
                cubes: cur.len(),
                budget,
            });
        }
        cur = prune_once(&cur, f, prune)?;
    }
    Ok(cur)
}

/// Rebuilds the graph on `s` and keeps its combinatorial invariant part.
pub fn prune_once(s: &CubicalSet, f: &BoxMap, prune: Prune) -> Result<CubicalSet> {
    let g = build_graph(s, f)?;
    Ok(match prune {
        Prune::ChainRecurrent => chain_recurrent_vertices(&g),
        Prune::Invariant => inv_vertices(&g),
    })
}
