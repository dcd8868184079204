//! The Hénon family `H(x, y) = (x² + c − a·y, x)` as rigorous box maps.
//!
//! Phase-space boxes are `[x, y]` in real mode and `[Re x, Im x, Re y, Im y]`
//! in complex mode. Parameters are boxes too; every evaluation encloses the
//! image over all parameters in the box.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{CInterval, Interval, IntervalBox};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Real,
    Complex,
}

impl Mode {
    /// Real dimension of phase space.
    pub fn phase_dim(self) -> usize {
        match self {
            Mode::Real => 2,
            Mode::Complex => 4,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Mode::Real),
            "complex" => Ok(Mode::Complex),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Real => "real",
            Mode::Complex => "complex",
        })
    }
}

/// A box of Hénon parameters `(a, c)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Param {
    a: CInterval,
    c: CInterval,
    mode: Mode,
}

impl Param {
    /// Real parameters; `a` must exclude zero.
    pub fn real(a: Interval, c: Interval) -> Result<Self> {
        Param::new(CInterval::real(a), CInterval::real(c), Mode::Real)
    }

    /// Complex parameters (the map acts on ℂ²).
    pub fn complex(a: CInterval, c: CInterval) -> Result<Self> {
        Param::new(a, c, Mode::Complex)
    }

    pub fn new(a: CInterval, c: CInterval, mode: Mode) -> Result<Self> {
        if mode == Mode::Real && !(a.is_real() && c.is_real()) {
            return Err(Error::Invalid(
                "real-mode parameters need exactly zero imaginary parts".into(),
            ));
        }
        if a.re.contains(0.0) && a.im.contains(0.0) {
            return Err(Error::Invalid("parameter a must exclude 0".into()));
        }
        Ok(Param { a, c, mode })
    }

    /// Point parameter from doubles.
    pub fn point(a: f64, c: f64, mode: Mode) -> Result<Self> {
        Param::new(CInterval::point(a, 0.0), CInterval::point(c, 0.0), mode)
    }

    /// The same parameter box acting on the other phase space.
    pub fn with_mode(self, mode: Mode) -> Result<Self> {
        Param::new(self.a, self.c, mode)
    }

    pub fn a(&self) -> CInterval {
        self.a
    }

    pub fn c(&self) -> CInterval {
        self.c
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_real_valued(&self) -> bool {
        self.a.is_real() && self.c.is_real()
    }

    /// Midpoint parameter as floats `(a, c)`.
    pub fn center(&self) -> (num_complex::Complex64, num_complex::Complex64) {
        (
            num_complex::Complex64::new(self.a.re.mid(), self.a.im.mid()),
            num_complex::Complex64::new(self.c.re.mid(), self.c.im.mid()),
        )
    }
}

/// `(ā, c̄)`; conjugates the dynamics by `(x, y) ↦ (x̄, ȳ)`.
pub fn conj_param(p: &Param) -> Param {
    Param {
        a: p.a.conj(),
        c: p.c.conj(),
        mode: p.mode,
    }
}

fn check_dim(p: &Param, z: &IntervalBox) -> Result<()> {
    if z.dim() != p.mode.phase_dim() {
        return Err(Error::Invalid(format!(
            "box has dimension {} but {} mode needs {}",
            z.dim(),
            p.mode,
            p.mode.phase_dim()
        )));
    }
    Ok(())
}

fn coords(p: &Param, z: &IntervalBox) -> (CInterval, CInterval) {
    match p.mode {
        Mode::Real => (CInterval::real(z[0]), CInterval::real(z[1])),
        Mode::Complex => (z.complex(0), z.complex(1)),
    }
}

fn pack(p: &Param, x: CInterval, y: CInterval) -> IntervalBox {
    match p.mode {
        Mode::Real => IntervalBox::new(&[x.re, y.re]),
        Mode::Complex => IntervalBox::new(&[x.re, x.im, y.re, y.im]),
    }
}

/// Enclosure of `{(x² + c − a·y, x)}` over the box and the parameters.
pub fn eval_fwd(p: &Param, z: &IntervalBox) -> Result<IntervalBox> {
    check_dim(p, z)?;
    let (x, y) = coords(p, z);
    let nx = x.sqr()?.add(p.c)?.sub(p.a.mul(y)?)?;
    Ok(pack(p, nx, x))
}

/// Enclosure of the inverse `(u, v) ↦ (v, (v² + c − u) / a)`.
pub fn eval_inv(p: &Param, z: &IntervalBox) -> Result<IntervalBox> {
    check_dim(p, z)?;
    let (u, v) = coords(p, z);
    let ny = v.sqr()?.add(p.c)?.sub(u)?.div(p.a)?;
    Ok(pack(p, v, ny))
}

/// Entrywise enclosure of `DH = [[2x, −a], [1, 0]]` over the box.
pub fn jacobian(p: &Param, z: &IntervalBox) -> Result<[[CInterval; 2]; 2]> {
    check_dim(p, z)?;
    let (x, _) = coords(p, z);
    let two_x = CInterval::new(x.re.scale(2.0)?, x.im.scale(2.0)?);
    Ok([[two_x, p.a.neg()], [CInterval::ONE, CInterval::ZERO]])
}

/// Complex 2×2 interval matrix times a complex 2-vector.
pub fn mat_vec(m: &[[CInterval; 2]; 2], v: [CInterval; 2]) -> Result<[CInterval; 2]> {
    Ok([
        m[0][0].mul(v[0])?.add(m[0][1].mul(v[1])?)?,
        m[1][0].mul(v[0])?.add(m[1][1].mul(v[1])?)?,
    ])
}

/// `(H(base), DH(base)·fiber)`; fibers use the same layout as phase space.
pub fn tangent_fwd(
    p: &Param,
    base: &IntervalBox,
    fiber: &IntervalBox,
) -> Result<(IntervalBox, IntervalBox)> {
    check_dim(p, fiber)?;
    let img = eval_fwd(p, base)?;
    let j = jacobian(p, base)?;
    let (u, v) = coords(p, fiber);
    let w = mat_vec(&j, [u, v])?;
    Ok((img, pack(p, w[0], w[1])))
}

/// `R(a,c) = ½(1 + |a| + √((1 + |a|)² + 4|c|))`, enclosed over the box.
pub fn radius_r(p: &Param) -> Result<Interval> {
    let one_a = Interval::ONE.add(p.a.modulus()?)?;
    let disc = one_a.sqr()?.add(p.c.modulus()?.scale(4.0)?)?;
    one_a.add(disc.sqrt_nn()?)?.scale(0.5)
}

/// The closed box `|coordinate| ≤ sup R` in every real coordinate.
pub fn trap_box(p: &Param) -> Result<IntervalBox> {
    let r = Interval::symmetric(radius_r(p)?.hi())?;
    Ok(IntervalBox::new(&vec![r; p.mode.phase_dim()]))
}

/// Answer of a region predicate on a parameter box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Indeterminate,
}

// `lhs < rhs` everywhere / nowhere.
fn less(lhs: Interval, rhs: Interval) -> Tri {
    if lhs.hi() < rhs.lo() {
        Tri::Yes
    } else if lhs.lo() >= rhs.hi() {
        Tri::No
    } else {
        Tri::Indeterminate
    }
}

// Real-parameter predicates are "no" where the box is certainly non-real.
fn real_part_gate(p: &Param) -> Option<Tri> {
    let certainly_nonreal = !p.a.im.contains(0.0) || !p.c.im.contains(0.0);
    if certainly_nonreal {
        Some(Tri::No)
    } else if !p.is_real_valued() {
        Some(Tri::Indeterminate)
    } else {
        None
    }
}

fn one_plus_abs_a_sq(p: &Param) -> Result<Interval> {
    Interval::ONE.add(p.a.modulus()?)?.sqr()
}

/// `c < −(5 + 2√5)(|a| + 1)² / 4` for real `(a, c)`.
pub fn in_dn(p: &Param) -> Result<Tri> {
    if let Some(t) = real_part_gate(p) {
        return Ok(t);
    }
    let k = Interval::point(5.0)
        .add(Interval::point(5.0).sqrt_nn()?.scale(2.0)?)?
        .scale(0.25)?;
    let threshold = k.mul(one_plus_abs_a_sq(p)?)?.neg();
    Ok(less(p.c.re, threshold))
}

/// `|c| > 2(|a| + 1)²`.
pub fn in_hov(p: &Param) -> Result<Tri> {
    let bound = one_plus_abs_a_sq(p)?.scale(2.0)?;
    Ok(less(bound, p.c.modulus()?))
}

/// `c > (|a| + 1)² / 4` for real `(a, c)`.
pub fn in_emp(p: &Param) -> Result<Tri> {
    if let Some(t) = real_part_gate(p) {
        return Ok(t);
    }
    let bound = one_plus_abs_a_sq(p)?.scale(0.25)?;
    Ok(less(bound, p.c.re))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionTag {
    DN,
    HOV,
    EMP,
    NONE,
}

/// First region (in the order DN, EMP, HOV) that certainly contains `p`.
///
/// DN and EMP are disjoint; HOV overlaps both, so it is reported only for
/// parameters outside the two real regions.
pub fn region_tag(p: &Param) -> Result<RegionTag> {
    Ok(if in_dn(p)? == Tri::Yes {
        RegionTag::DN
    } else if in_emp(p)? == Tri::Yes {
        RegionTag::EMP
    } else if in_hov(p)? == Tri::Yes {
        RegionTag::HOV
    } else {
        RegionTag::NONE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, c: f64) -> Param {
        Param::point(a, c, Mode::Real).unwrap()
    }

    #[test]
    fn forward_examples() {
        let q = p(1.0, -10.0);
        let img = eval_fwd(&q, &IntervalBox::point(&[0.0, 0.0])).unwrap();
        assert!(img.contains_point(&[-10.0, 0.0]));
        let xs = 1.0 + 11f64.sqrt();
        let img = eval_fwd(&q, &IntervalBox::point(&[xs, xs])).unwrap();
        assert!((img[0].mid() - xs).abs() < 1e-12);
    }

    #[test]
    fn inverse_examples() {
        let q = p(1.0, -10.0);
        let back = eval_inv(&q, &IntervalBox::point(&[-10.0, 0.0])).unwrap();
        assert!(back.contains_point(&[0.0, 0.0]));
        let z = IntervalBox::point(&[0.3, -1.7]);
        let rt = eval_inv(&q, &eval_fwd(&q, &z).unwrap()).unwrap();
        assert!(rt.contains_point(&[0.3, -1.7]));
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&p(1.0, 3.0), &IntervalBox::point(&[0.0, 0.0])).unwrap();
        assert!(j[0][0].contains(0.0, 0.0) && j[0][1].contains(-1.0, 0.0));
        assert!(j[1][0].contains(1.0, 0.0) && j[1][1].contains(0.0, 0.0));
        let z = IntervalBox::new(&[Interval::new(1.0, 2.0).unwrap(), Interval::ZERO]);
        let j = jacobian(&p(1.0, 3.0), &z).unwrap();
        assert!(Interval::new(2.0, 4.0).unwrap().subset(j[0][0].re));
    }

    #[test]
    fn tangent_examples() {
        let q = p(1.0, -1.0);
        let base = IntervalBox::point(&[0.0, 0.0]);
        let (_, w) = tangent_fwd(&q, &base, &IntervalBox::zeros(2)).unwrap();
        assert_eq!(w, IntervalBox::zeros(2));
        let (_, w) = tangent_fwd(&q, &base, &IntervalBox::point(&[1.0, 0.0])).unwrap();
        assert!(w.contains_point(&[0.0, 1.0]));
    }

    #[test]
    fn radius_examples() {
        let r = radius_r(&p(1.0, -10.0)).unwrap();
        assert!(r.contains(1.0 + 11f64.sqrt()));
        assert!(radius_r(&p(1.0, -12.0)).unwrap().lo() > r.hi());
        let t = trap_box(&Param::point(1.0, -10.0, Mode::Complex).unwrap()).unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn region_examples() {
        assert_eq!(in_hov(&p(1.0, -10.0)).unwrap(), Tri::Yes);
        assert_eq!(in_dn(&p(1.0, -10.0)).unwrap(), Tri::Yes);
        assert_eq!(in_dn(&p(1.0, -5.4)).unwrap(), Tri::No);
        assert_eq!(in_hov(&p(1.0, -5.4)).unwrap(), Tri::No);
        assert_eq!(in_emp(&p(1.0, 2.0)).unwrap(), Tri::Yes);
        assert_eq!(region_tag(&p(1.0, -10.0)).unwrap(), RegionTag::DN);
        let straddle = Param::real(Interval::ONE, Interval::new(-9.6, -9.3).unwrap()).unwrap();
        assert_eq!(in_dn(&straddle).unwrap(), Tri::Indeterminate);
    }

    #[test]
    fn conjugation() {
        let q = Param::complex(CInterval::ONE, CInterval::point(-5.0, 2.0)).unwrap();
        let cq = conj_param(&q);
        assert!(cq.c().contains(-5.0, -2.0));
        assert_eq!(conj_param(&cq), q);
        let r = p(1.0, -5.4);
        assert_eq!(conj_param(&r), r);
    }

    #[test]
    fn a_must_exclude_zero() {
        assert!(Param::real(Interval::new(-1.0, 1.0).unwrap(), Interval::ONE).is_err());
    }
}
