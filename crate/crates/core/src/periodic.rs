//! Periodic orbits: numerical seeds by homotopy continuation, Krawczyk
//! certificates on the unfolded periodic system, and rigorous bounds on the
//! number of real period-`n` points.
//!
//! A period-`n` point is a cyclic sequence `x₀ … x_{n−1}` with
//! `x_{k+1} = x_k² + c − a·x_{k−1}`; the phase-space point is `(x₀, x_{n−1})`.

use nalgebra::{Complex, DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::henon::{Mode, Param};
use crate::interval::{CInterval, Interval, IntervalBox};

type C64 = Complex<f64>;

/// Approximate period-`n` point, unfolded over the orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    pub x: Vec<C64>,
}

impl Seed {
    pub fn period(&self) -> usize {
        self.x.len()
    }

    pub fn is_real(&self) -> bool {
        let scale = 1.0 + self.x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        self.x.iter().all(|z| z.im.abs() <= 1e-9 * scale)
    }

    /// The point `(x₀, y₀) = (x₀, x_{n−1})`.
    pub fn phase_point(&self) -> (C64, C64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// The next point of the orbit.
    pub fn rotated(&self, j: usize) -> Seed {
        let mut x = self.x.clone();
        let n = x.len();
        x.rotate_left(j % n);
        Seed { x }
    }
}

fn residual(a: C64, c: C64, x: &[C64]) -> DVector<C64> {
    let n = x.len();
    DVector::from_fn(n, |k, _| {
        x[(k + 1) % n] - x[k] * x[k] - c + a * x[(k + n - 1) % n]
    })
}

fn jac(a: C64, x: &[C64]) -> DMatrix<C64> {
    let n = x.len();
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n {
        m[(k, (k + 1) % n)] += C64::new(1.0, 0.0);
        m[(k, k)] -= x[k] * 2.0;
        m[(k, (k + n - 1) % n)] += a;
    }
    m
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Newton's method; returns the last step size on convergence.
fn newton(a: C64, c: C64, x: &mut [C64], max_iter: usize, first_step_limit: f64) -> bool {
    for it in 0..max_iter {
        let f = residual(a, c, x);
        let Some(dx) = jac(a, x).lu().solve(&f) else {
            return false;
        };
        let step = dx.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if it == 0 && step > first_step_limit {
            return false;
        }
        for (xi, d) in x.iter_mut().zip(dx.iter()) {
            *xi -= *d;
        }
        if !x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        if step <= 1e-13 * (1.0 + norm(x)) {
            return true;
        }
    }
    residual(a, c, x).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-10 * (1.0 + norm(x))
}

/// Anti-integrable start: `x_k = s_k √(x_{k+1} + a·x_{k−1} − c)` iterated.
fn anti_integrable(a: C64, c: C64, symbols: &[u8]) -> Vec<C64> {
    let n = symbols.len();
    let sign = |k: usize| if symbols[k] == 1 { 1.0 } else { -1.0 };
    let mut x: Vec<C64> = (0..n).map(|k| (-c).sqrt() * sign(k)).collect();
    for _ in 0..200 {
        for k in 0..n {
            let r = x[(k + 1) % n] + a * x[(k + n - 1) % n] - c;
            x[k] = r.sqrt() * sign(k);
        }
    }
    x
}

// Path from c0 to c1 bulging into the upper half plane.
fn path(c0: C64, c1: C64, s: f64) -> C64 {
    let bump = 0.7 * (1.0 + (c1 - c0).norm() / 8.0);
    c0 + (c1 - c0) * s + C64::new(0.0, bump * (std::f64::consts::PI * s).sin())
}

/// Continues a solution at `path(0)` to `path(1)`.
fn track(a: C64, c0: C64, c1: C64, mut x: Vec<C64>) -> Option<Vec<C64>> {
    let mut s = 0.0f64;
    let mut h = 0.02f64;
    while s < 1.0 {
        let s1 = (s + h).min(1.0);
        // Tangent predictor: J dx = dc since ∂F/∂c = −1.
        let dc = path(c0, c1, s1) - path(c0, c1, s);
        let tangent = jac(a, &x).lu().solve(&DVector::from_element(x.len(), dc));
        let mut y: Vec<C64> = match tangent {
            Some(t) => x.iter().zip(t.iter()).map(|(xi, ti)| xi + ti).collect(),
            None => x.clone(),
        };
        let limit = 0.05 * (1.0 + norm(&x));
        if newton(a, path(c0, c1, s1), &mut y, 8, limit) {
            x = y;
            s = s1;
            h = (h * 1.5).min(0.05);
        } else {
            h *= 0.5;
            if h < 1e-9 {
                return None;
            }
        }
    }
    newton(a, c1, &mut x, 20, f64::INFINITY).then_some(x)
}

fn same_point(x: &[C64], y: &[C64]) -> bool {
    let tol = 1e-7 * (1.0 + norm(x));
    x.iter().zip(y).all(|(p, q)| (p - q).norm() <= tol)
}

/// Smallest `m` with `x` invariant under rotation by `m`.
fn minimal_period(x: &[C64]) -> usize {
    let n = x.len();
    (1..=n)
        .find(|&m| n % m == 0 && same_point(x, &Seed { x: x.to_vec() }.rotated(m).x))
        .unwrap_or(n)
}

/// Cyclic binary words of length `n`, one per rotation class.
fn necklaces(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for m in 0u64..(1u64 << n) {
        let w: Vec<u8> = (0..n).map(|j| ((m >> j) & 1) as u8).collect();
        let is_min = (1..n).all(|r| {
            let mut v = w.clone();
            v.rotate_left(r);
            w <= v
        });
        if is_min {
            out.push(w);
        }
    }
    out
}

/// Midpoint parameter used for seeding; certificates use the whole box.
fn point_param(p: &Param) -> Result<(C64, C64)> {
    let (a, c) = (p.a(), p.c());
    let w = [a.re, a.im, c.re, c.im].iter().map(|i| i.width()).fold(0.0, f64::max);
    if w > 1e-6 {
        return Err(Error::Invalid(
            "periodic orbits need a point parameter or a box of width at most 1e-6".into(),
        ));
    }
    Ok((C64::new(a.re.mid(), a.im.mid()), C64::new(c.re.mid(), c.im.mid())))
}

/// Approximate period-`n` points, one seed per point, orbits expanded by
/// rotation and duplicates removed. Real mode keeps only real points.
///
/// Seeds start at the anti-integrable limit for a strongly negative `c` and
/// follow a complex path to the target, which avoids the real bifurcation set.
pub fn find_seeds(p: &Param, n: usize, mode: Mode) -> Result<Vec<Seed>> {
    if n == 0 || n > 16 {
        return Err(Error::Invalid(format!("period {n} outside 1..=16")));
    }
    let (a, c) = point_param(p)?;
    let c0 = C64::new(-(4.0 * (1.0 + a.norm()).powi(2) + 10.0).max(2.0 * c.norm() + 10.0), 0.0);
    let tracked: Vec<Option<Vec<C64>>> = necklaces(n)
        .par_iter()
        .map(|w| {
            let mut x0 = anti_integrable(a, c0, w);
            if !newton(a, c0, &mut x0, 30, f64::INFINITY) {
                return None;
            }
            track(a, c0, c, x0)
        })
        .collect();
    let mut seeds: Vec<Seed> = Vec::new();
    for x in tracked.into_iter().flatten() {
        let m = minimal_period(&x);
        for j in 0..m {
            let s = Seed { x: x.clone() }.rotated(j);
            if !seeds.iter().any(|t| same_point(&t.x, &s.x)) {
                seeds.push(s);
            }
        }
    }
    if mode == Mode::Real {
        seeds.retain(Seed::is_real);
        for s in &mut seeds {
            for z in &mut s.x {
                z.im = 0.0;
            }
        }
    }
    seeds.sort_by(|s, t| {
        let (a, b) = (s.phase_point(), t.phase_point());
        (a.0.re, a.0.im, a.1.re, a.1.im)
            .partial_cmp(&(b.0.re, b.0.im, b.1.re, b.1.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(seeds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Real,
    Nonreal,
}

/// Krawczyk certificate: exactly one period-`n` point in `unfolded`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub period: usize,
    pub kind: CertKind,
    /// Box `X` for `(x₀, …, x_{n−1})`.
    pub unfolded: Vec<CInterval>,
    /// Krawczyk image `K(X)`, strictly inside `X`.
    pub image: Vec<CInterval>,
}

impl Certificate {
    /// Isolating box of the phase-space point: `[x, y]` or `[Re x, Im x, Re y, Im y]`.
    pub fn isolating_box(&self) -> IntervalBox {
        let x = self.unfolded[0];
        let y = self.unfolded[self.period - 1];
        match self.kind {
            CertKind::Real => IntervalBox::new(&[x.re, y.re]),
            CertKind::Nonreal => IntervalBox::new(&[x.re, x.im, y.re, y.im]),
        }
    }

    /// The complex-conjugate certificate (exact, since `a` and `c` are real).
    pub fn twin(&self) -> Certificate {
        Certificate {
            period: self.period,
            kind: self.kind,
            unfolded: self.unfolded.iter().map(|z| z.conj()).collect(),
            image: self.image.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn disjoint_from(&self, other: &Certificate) -> bool {
        boxes_disjoint(&self.unfolded, &other.unfolded)
    }
}

fn boxes_disjoint(x: &[CInterval], y: &[CInterval]) -> bool {
    x.len() != y.len()
        || x
            .iter()
            .zip(y)
            .any(|(p, q)| !p.re.intersects(q.re) || !p.im.intersects(q.im))
}

fn ci(z: C64) -> CInterval {
    CInterval::point(z.re, z.im)
}

/// `K(X) = m − C·F(m) + (I − C·J(X))·(X − m)` for the unfolded system.
fn krawczyk(p: &Param, m: &[C64], x: &[CInterval], cinv: &DMatrix<C64>) -> Result<Vec<CInterval>> {
    let n = m.len();
    let (a, c) = (p.a(), p.c());
    let mi: Vec<CInterval> = m.iter().map(|&z| ci(z)).collect();
    // F(m), enclosed.
    let mut fm = Vec::with_capacity(n);
    for k in 0..n {
        let v = mi[(k + 1) % n]
            .sub(mi[k].sqr()?)?
            .sub(c)?
            .add(a.mul(mi[(k + n - 1) % n])?)?;
        fm.push(v);
    }
    // Column j of J(X): 1 at row j−1, −2x_j at row j, a at row j+1 (summed when rows coincide).
    let mut jx = vec![vec![CInterval::ZERO; n]; n];
    for k in 0..n {
        let two_x = CInterval::new(x[k].re.scale(2.0)?, x[k].im.scale(2.0)?);
        jx[k][(k + 1) % n] = jx[k][(k + 1) % n].add(CInterval::ONE)?;
        jx[k][k] = jx[k][k].sub(two_x)?;
        jx[k][(k + n - 1) % n] = jx[k][(k + n - 1) % n].add(a)?;
    }
    let cm: Vec<Vec<CInterval>> = (0..n)
        .map(|i| (0..n).map(|j| ci(cinv[(i, j)])).collect())
        .collect();
    let dx: Vec<CInterval> = x
        .iter()
        .zip(&mi)
        .map(|(xi, mi)| xi.sub(*mi))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut cf = CInterval::ZERO;
        for l in 0..n {
            cf = cf.add(cm[i][l].mul(fm[l])?)?;
        }
        let mut acc = mi[i].sub(cf)?;
        for j in 0..n {
            let mut cj = CInterval::ZERO;
            for l in 0..n {
                if jx[l][j] != CInterval::ZERO {
                    cj = cj.add(cm[i][l].mul(jx[l][j])?)?;
                }
            }
            let e = if i == j { CInterval::ONE.sub(cj)? } else { cj.neg() };
            acc = acc.add(e.mul(dx[j])?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Radii tried around the seed, relative to `1 + |x|`.
pub const INFLATION: [f64; 6] = [1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-3];

/// Krawczyk certificate for the point near `seed`.
///
/// Real seeds use boxes symmetric about ℝⁿ: uniqueness in the box plus
/// invariance of the system under conjugation forces the zero to be real.
pub fn certify(p: &Param, seed: &Seed, n: usize, mode: Mode) -> Result<Certificate> {
    if seed.period() != n {
        return Err(Error::Invalid("seed length differs from the period".into()));
    }
    let (a, c) = point_param(p)?;
    if !p.is_real_valued() && mode == Mode::Real {
        return Err(Error::Invalid("real certificates need real parameters".into()));
    }
    let mut m = seed.x.clone();
    newton(a, c, &mut m, 20, f64::INFINITY);
    let real = mode == Mode::Real || (seed.is_real() && p.is_real_valued());
    if real {
        for z in &mut m {
            z.im = 0.0;
        }
    }
    let cinv = jac(a, &m)
        .try_inverse()
        .ok_or_else(|| Error::Invalid("singular Jacobian at seed".into()))?;
    let scale = 1.0 + norm(&m);
    for rel in INFLATION {
        let r = rel * scale;
        let x: Vec<CInterval> = m
            .iter()
            .map(|z| -> Result<CInterval> {
                Ok(CInterval::new(
                    Interval::point(z.re).inflate(r)?,
                    Interval::point(z.im).inflate(r)?,
                ))
            })
            .collect::<Result<_>>()?;
        let k = match krawczyk(p, &m, &x, &cinv) {
            Ok(k) => k,
            Err(_) => continue,
        };
        let inside = k
            .iter()
            .zip(&x)
            .all(|(ki, xi)| ki.re.interior_subset(xi.re) && ki.im.interior_subset(xi.im));
        if !inside {
            continue;
        }
        let kind = if real {
            CertKind::Real
        } else if k.iter().any(|z| !z.im.contains(0.0)) {
            CertKind::Nonreal
        } else {
            continue;
        };
        return Ok(Certificate {
            period: n,
            kind,
            unfolded: x,
            image: k,
        });
    }
    Err(Error::Invalid("Krawczyk contraction not verified".into()))
}

/// Rigorous bounds on `|Fix(Hⁿ) ∩ ℝ²|`.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub a: f64,
    pub c: f64,
    pub n: usize,
    pub lower_real: u128,
    pub upper_real: u128,
    pub exact: bool,
    pub certificates: Vec<Certificate>,
}

/// Lower bound: disjoint real certificates. Upper bound: `2ⁿ` minus disjoint
/// nonreal certificates, since `Hⁿ` has exactly `2ⁿ` fixed points in ℂ²
/// counted with multiplicity.
pub fn count_real(p: &Param, n: usize) -> Result<CountReport> {
    if !p.is_real_valued() {
        return Err(Error::Invalid("counting real points needs real parameters".into()));
    }
    let cp = p.with_mode(Mode::Complex)?;
    let seeds = find_seeds(&cp, n, Mode::Complex)?;
    let certs: Vec<Certificate> = seeds
        .par_iter()
        .filter_map(|s| {
            let mode = if s.is_real() { Mode::Real } else { Mode::Complex };
            certify(&cp, s, n, mode).ok()
        })
        .collect();
    // Keep a pairwise disjoint family; twins fill in conjugates that seeding missed.
    let mut family: Vec<Certificate> = Vec::new();
    for cert in certs {
        if family.iter().all(|f| f.disjoint_from(&cert)) {
            family.push(cert);
        }
    }
    let twins: Vec<Certificate> = family
        .iter()
        .filter(|f| f.kind == CertKind::Nonreal)
        .map(Certificate::twin)
        .collect();
    for t in twins {
        if family.iter().all(|f| f.disjoint_from(&t)) {
            family.push(t);
        }
    }
    let real = family.iter().filter(|f| f.kind == CertKind::Real).count() as u128;
    let nonreal = family.len() as u128 - real;
    let total = 1u128 << n;
    let upper = total.saturating_sub(nonreal);
    let (a, c) = point_param(p)?;
    Ok(CountReport {
        a: a.re,
        c: c.re,
        n,
        lower_real: real,
        upper_real: upper,
        exact: real == upper,
        certificates: family,
    })
}

#[derive(Clone, Debug)]
pub struct CrossCheckRow {
    pub n: usize,
    pub lower_real: u128,
    pub upper_real: u128,
    pub symbolic: u128,
}

impl CrossCheckRow {
    pub fn exact(&self) -> bool {
        self.lower_real == self.upper_real
    }

    pub fn pass(&self) -> bool {
        self.exact() && self.lower_real == self.symbolic
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossCheckVerdict {
    Pass,
    Fail,
    /// Some count was not exact; nothing contradicts the subshift.
    Inconclusive,
}

/// Compares certified real counts with the periodic-point counts of `sft`.
pub fn crosscheck_pruning(
    p: &Param,
    sft: &crate::shift::Sft,
    ns: std::ops::RangeInclusive<usize>,
) -> Result<(CrossCheckVerdict, Vec<CrossCheckRow>)> {
    let mut rows = Vec::new();
    for n in ns {
        let r = count_real(p, n)?;
        rows.push(CrossCheckRow {
            n,
            lower_real: r.lower_real,
            upper_real: r.upper_real,
            symbolic: crate::shift::count_fixed(sft, n)?,
        });
    }
    let contradicted = rows
        .iter()
        .any(|r| r.symbolic < r.lower_real || r.symbolic > r.upper_real);
    let verdict = if contradicted {
        CrossCheckVerdict::Fail
    } else if rows.iter().all(CrossCheckRow::pass) {
        CrossCheckVerdict::Pass
    } else {
        CrossCheckVerdict::Inconclusive
    };
    Ok((verdict, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(a: f64, c: f64) -> Param {
        Param::point(a, c, Mode::Real).unwrap()
    }

    #[test]
    fn necklace_count() {
        // Number of binary necklaces of length 7 is 20.
        assert_eq!(necklaces(7).len(), 20);
        assert_eq!(necklaces(1).len(), 2);
    }

    #[test]
    fn fixed_point_seeds() {
        let s = find_seeds(&real(1.0, -10.0), 1, Mode::Real).unwrap();
        assert_eq!(s.len(), 2);
        let r = 11f64.sqrt();
        assert!((s[0].x[0].re - (1.0 - r)).abs() < 1e-10);
        assert!((s[1].x[0].re - (1.0 + r)).abs() < 1e-10);
    }

    #[test]
    fn fixed_point_certificate() {
        let p = real(1.0, -10.0);
        let seed = Seed {
            x: vec![C64::new(1.0 + 11f64.sqrt(), 0.0)],
        };
        let cert = certify(&p, &seed, 1, Mode::Real).unwrap();
        assert_eq!(cert.kind, CertKind::Real);
        assert!(cert.isolating_box()[0].contains(1.0 + 11f64.sqrt()));
    }

    #[test]
    fn nonreal_fixed_points_in_emp() {
        // (1, 10) lies in EMP and HOV: both fixed points are nonreal.
        let p = real(1.0, 10.0);
        let r = count_real(&p, 1).unwrap();
        assert_eq!((r.lower_real, r.upper_real), (0, 0));
        assert_eq!(r.certificates.len(), 2);
        assert!(r.certificates.iter().all(|c| c.kind == CertKind::Nonreal));
    }

    #[test]
    fn dn_counts_are_full() {
        let r = count_real(&real(1.0, -10.0), 5).unwrap();
        assert!(r.exact);
        assert_eq!(r.lower_real, 32);
    }
}
