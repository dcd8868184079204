//! Outward-rounded interval arithmetic.
//!
//! Rounding never touches the FPU mode. Sums use an error-free transform to
//! decide which bound needs to move by one ulp, so exact results stay exact;
//! products, quotients and square roots are computed in round-to-nearest and
//! then pushed one ulp outward. Both schemes are pure functions of their
//! inputs and safe under any amount of parallelism.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` of finite doubles.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[inline]
fn finite(lo: f64, hi: f64) -> Result<Interval> {
    if lo.is_finite() && hi.is_finite() {
        Ok(Interval { lo, hi })
    } else {
        Err(Error::Overflow)
    }
}

// TwoSum: the rounding error of `s = a + b`, exact barring overflow.
#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_finite() && two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_finite() && two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
fn min4(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a.min(b).min(c.min(d))
}

#[inline]
fn max4(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a.max(b).max(c.max(d))
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Builds `[lo, hi]`, rejecting reversed or non-finite bounds.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo <= hi && lo.is_finite() && hi.is_finite() {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    /// Degenerate interval `[x, x]`.
    ///
    /// # Panics
    /// If `x` is not finite.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "interval point must be finite, got {x}");
        Interval { lo: x, hi: x }
    }

    /// Symmetric interval `[-r, r]`.
    pub fn symmetric(r: f64) -> Result<Self> {
        Interval::new(-r.abs(), r.abs())
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    /// A double inside the interval, close to the center.
    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on `hi - lo`.
    pub fn width(self) -> f64 {
        add_up(self.hi, -self.lo)
    }

    /// Upper bound on the distance from `mid()` to either endpoint.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        add_up(m, -self.lo).max(add_up(self.hi, -m))
    }

    /// `max |x|` over the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// `min |x|` over the interval.
    pub fn mig(self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`.
    pub fn subset(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `self` lies in the interior of `other`.
    pub fn interior_subset(self, other: Interval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn intersects(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Splits at a double strictly inside, so the halves cover `self` exactly.
    pub fn bisect(self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }

    /// Widens each side by `r ≥ 0`.
    pub fn inflate(self, r: f64) -> Result<Interval> {
        finite(add_down(self.lo, -r), add_up(self.hi, r))
    }

    pub fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn add(self, b: Interval) -> Result<Interval> {
        finite(add_down(self.lo, b.lo), add_up(self.hi, b.hi))
    }

    pub fn sub(self, b: Interval) -> Result<Interval> {
        finite(add_down(self.lo, -b.hi), add_up(self.hi, -b.lo))
    }

    pub fn mul(self, b: Interval) -> Result<Interval> {
        let (a0, a1, b0, b1) = (self.lo, self.hi, b.lo, b.hi);
        if (a0 == 0.0 && a1 == 0.0) || (b0 == 0.0 && b1 == 0.0) {
            return Ok(Interval::ZERO);
        }
        let p = [a0 * b0, a0 * b1, a1 * b0, a1 * b1];
        finite(
            min4(p[0], p[1], p[2], p[3]).next_down(),
            max4(p[0], p[1], p[2], p[3]).next_up(),
        )
    }

    /// Product with an exact double.
    pub fn scale(self, k: f64) -> Result<Interval> {
        self.mul(Interval::point(k))
    }

    /// Enclosure of `{x² : x ∈ self}`; never negative.
    pub fn sqr(self) -> Result<Interval> {
        let (l, h) = (self.lo, self.hi);
        let (lo, hi) = if l >= 0.0 {
            (l * l, h * h)
        } else if h <= 0.0 {
            (h * h, l * l)
        } else {
            (0.0, (l * l).max(h * h))
        };
        let lo = if lo == 0.0 { 0.0 } else { lo.next_down().max(0.0) };
        finite(lo, if hi == 0.0 { 0.0 } else { hi.next_up() })
    }

    /// Quotient by an interval that excludes zero.
    pub fn div(self, b: Interval) -> Result<Interval> {
        if b.contains(0.0) {
            return Err(Error::DivisionByZero);
        }
        if self.lo == 0.0 && self.hi == 0.0 {
            return Ok(Interval::ZERO);
        }
        let (a0, a1, b0, b1) = (self.lo, self.hi, b.lo, b.hi);
        let q = [a0 / b0, a0 / b1, a1 / b0, a1 / b1];
        finite(
            min4(q[0], q[1], q[2], q[3]).next_down(),
            max4(q[0], q[1], q[2], q[3]).next_up(),
        )
    }

    /// Square root of the non-negative part.
    pub fn sqrt_nn(self) -> Result<Interval> {
        if self.hi < 0.0 {
            return Err(Error::Domain("sqrt of a negative interval"));
        }
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            self.lo.sqrt().next_down().max(0.0)
        };
        let hi = if self.hi == 0.0 { 0.0 } else { self.hi.sqrt().next_up() };
        finite(lo, hi)
    }

    /// `{|x| : x ∈ self}`.
    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval {
                lo: 0.0,
                hi: self.mag(),
            }
        }
    }

    /// Outward enclosure of a decimal literal such as `-5.46875` or `1e-3`.
    ///
    /// Exactly representable values give a point interval; anything else
    /// gives the two neighbouring doubles.
    pub fn from_decimal(s: &str) -> Result<Interval> {
        let s = s.trim();
        let (num, den) = parse_rational(s)?;
        let near: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("not a decimal number: {s:?}")))?;
        if !near.is_finite() {
            return Err(Error::Overflow);
        }
        match cmp_f64_rational(near, &num, &den) {
            std::cmp::Ordering::Equal => Ok(Interval::point(near)),
            std::cmp::Ordering::Less => finite(near, near.next_up()),
            std::cmp::Ordering::Greater => finite(near.next_down(), near),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Accepts `x` or `[lo, hi]`, both decimal, enclosed outward.
impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected [lo, hi], got {s:?}")))?;
            let lo = Interval::from_decimal(a)?;
            let hi = Interval::from_decimal(b)?;
            Interval::new(lo.lo, hi.hi)
        } else {
            Interval::from_decimal(t)
        }
    }
}

/// Parses `[-+]digits[.digits][e[-+]digits]` into `num / den` with `den > 0`.
pub(crate) fn parse_rational(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if exp.unsigned_abs() > 400 {
        return Err(bad());
    }
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    if shift >= 0 {
        Ok((num * ten.pow(shift as u32), BigInt::from(1u8)))
    } else {
        Ok((num, ten.pow((-shift) as u32)))
    }
}

/// Exact comparison of a finite double with `num / den`, `den > 0`.
fn cmp_f64_rational(x: f64, num: &BigInt, den: &BigInt) -> std::cmp::Ordering {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { Sign::Minus } else { Sign::Plus };
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    let mut xm = BigInt::from_biguint(sign, m.into());
    if m == 0 {
        xm = BigInt::from(0u8);
    }
    // x = xm * 2^e; compare xm * 2^e * den with num.
    let (lhs, rhs) = if e >= 0 {
        (xm * den * (BigInt::from(1u8) << e as usize), num.clone())
    } else {
        (xm * den, num * (BigInt::from(1u8) << (-e) as usize))
    };
    lhs.cmp(&rhs)
}

/// Complex interval as a rectangle `re + i·im`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl fmt::Debug for CInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + i{:?})", self.re, self.im)
    }
}

impl CInterval {
    pub const ZERO: CInterval = CInterval {
        re: Interval::ZERO,
        im: Interval::ZERO,
    };
    pub const ONE: CInterval = CInterval {
        re: Interval::ONE,
        im: Interval::ZERO,
    };

    pub fn new(re: Interval, im: Interval) -> Self {
        CInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        CInterval {
            re,
            im: Interval::ZERO,
        }
    }

    pub fn point(re: f64, im: f64) -> Self {
        CInterval {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn is_real(self) -> bool {
        self.im == Interval::ZERO
    }

    pub fn conj(self) -> Self {
        CInterval {
            re: self.re,
            im: self.im.neg(),
        }
    }

    pub fn neg(self) -> Self {
        CInterval {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn contains(self, re: f64, im: f64) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn subset(self, other: CInterval) -> bool {
        self.re.subset(other.re) && self.im.subset(other.im)
    }

    pub fn hull(self, other: CInterval) -> CInterval {
        CInterval {
            re: self.re.hull(other.re),
            im: self.im.hull(other.im),
        }
    }

    pub fn add(self, b: CInterval) -> Result<CInterval> {
        Ok(CInterval {
            re: self.re.add(b.re)?,
            im: self.im.add(b.im)?,
        })
    }

    pub fn sub(self, b: CInterval) -> Result<CInterval> {
        Ok(CInterval {
            re: self.re.sub(b.re)?,
            im: self.im.sub(b.im)?,
        })
    }

    pub fn mul(self, b: CInterval) -> Result<CInterval> {
        // Real factors keep the product tight and exact-zero imaginary parts exact.
        if b.is_real() {
            return Ok(CInterval {
                re: self.re.mul(b.re)?,
                im: self.im.mul(b.re)?,
            });
        }
        if self.is_real() {
            return b.mul(self);
        }
        Ok(CInterval {
            re: self.re.mul(b.re)?.sub(self.im.mul(b.im)?)?,
            im: self.re.mul(b.im)?.add(self.im.mul(b.re)?)?,
        })
    }

    /// `(x² − y², 2xy)` with dedicated squares.
    pub fn sqr(self) -> Result<CInterval> {
        if self.is_real() {
            return Ok(CInterval::real(self.re.sqr()?));
        }
        Ok(CInterval {
            re: self.re.sqr()?.sub(self.im.sqr()?)?,
            im: self.re.mul(self.im)?.scale(2.0)?,
        })
    }

    /// Enclosure of `|z|²`.
    pub fn norm_sqr(self) -> Result<Interval> {
        self.re.sqr()?.add(self.im.sqr()?)
    }

    /// Enclosure of `|z|`.
    pub fn modulus(self) -> Result<Interval> {
        if self.is_real() {
            return Ok(self.re.abs());
        }
        self.norm_sqr()?.sqrt_nn()
    }

    /// Quotient by a rectangle that excludes zero.
    pub fn div(self, b: CInterval) -> Result<CInterval> {
        if b.is_real() {
            return Ok(CInterval {
                re: self.re.div(b.re)?,
                im: self.im.div(b.re)?,
            });
        }
        let n = b.norm_sqr()?;
        if n.contains(0.0) {
            return Err(Error::DivisionByZero);
        }
        let t = self.mul(b.conj())?;
        Ok(CInterval {
            re: t.re.div(n)?,
            im: t.im.div(n)?,
        })
    }
}

/// Free-function forms of the basic operations.
pub fn add(a: Interval, b: Interval) -> Result<Interval> {
    a.add(b)
}

pub fn sub(a: Interval, b: Interval) -> Result<Interval> {
    a.sub(b)
}

pub fn mul(a: Interval, b: Interval) -> Result<Interval> {
    a.mul(b)
}

pub fn sqr(a: Interval) -> Result<Interval> {
    a.sqr()
}

pub fn neg(a: Interval) -> Interval {
    a.neg()
}

pub fn scalar_div(a: Interval, b: Interval) -> Result<Interval> {
    a.div(b)
}

pub fn sqrt_nn(a: Interval) -> Result<Interval> {
    a.sqrt_nn()
}

pub fn cadd(a: CInterval, b: CInterval) -> Result<CInterval> {
    a.add(b)
}

pub fn cmul(a: CInterval, b: CInterval) -> Result<CInterval> {
    a.mul(b)
}

pub fn csqr(a: CInterval) -> Result<CInterval> {
    a.sqr()
}

/// Largest dimension an [`IntervalBox`] supports.
pub const MAX_DIM: usize = 8;

/// Axis-aligned box of up to [`MAX_DIM`] intervals.
#[derive(Clone, Copy, PartialEq)]
pub struct IntervalBox {
    len: u8,
    d: [Interval; MAX_DIM],
}

impl fmt::Debug for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl std::ops::Deref for IntervalBox {
    type Target = [Interval];
    fn deref(&self) -> &[Interval] {
        &self.d[..self.len as usize]
    }
}

impl std::ops::DerefMut for IntervalBox {
    fn deref_mut(&mut self) -> &mut [Interval] {
        &mut self.d[..self.len as usize]
    }
}

impl IntervalBox {
    /// # Panics
    /// If more than [`MAX_DIM`] intervals are given.
    pub fn new(dims: &[Interval]) -> Self {
        assert!(dims.len() <= MAX_DIM, "box dimension {} > {MAX_DIM}", dims.len());
        let mut d = [Interval::ZERO; MAX_DIM];
        d[..dims.len()].copy_from_slice(dims);
        IntervalBox {
            len: dims.len() as u8,
            d,
        }
    }

    pub fn point(x: &[f64]) -> Self {
        let v: Vec<Interval> = x.iter().map(|&t| Interval::point(t)).collect();
        IntervalBox::new(&v)
    }

    pub fn zeros(n: usize) -> Self {
        IntervalBox::new(&vec![Interval::ZERO; n])
    }

    pub fn dim(&self) -> usize {
        self.len as usize
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.iter().map(|i| i.mid()).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.iter().map(|i| i.width()).collect()
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.iter().zip(x).all(|(i, &t)| i.contains(t))
    }

    pub fn subset(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim() && self.iter().zip(other.iter()).all(|(a, b)| a.subset(*b))
    }

    pub fn interior_subset(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim()
            && self
                .iter()
                .zip(other.iter())
                .all(|(a, b)| a.interior_subset(*b))
    }

    pub fn intersects(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim() && self.iter().zip(other.iter()).all(|(a, b)| a.intersects(*b))
    }

    pub fn hull(&self, other: &IntervalBox) -> IntervalBox {
        let mut out = *self;
        for (o, b) in out.iter_mut().zip(other.iter()) {
            *o = o.hull(*b);
        }
        out
    }

    pub fn inflate(&self, r: f64) -> Result<IntervalBox> {
        let mut out = *self;
        for o in out.iter_mut() {
            *o = o.inflate(r)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: f64) -> Result<IntervalBox> {
        let mut out = *self;
        for o in out.iter_mut() {
            *o = o.scale(k)?;
        }
        Ok(out)
    }

    /// Consecutive coordinate pairs read as complex numbers.
    pub fn complex(&self, i: usize) -> CInterval {
        CInterval::new(self[2 * i], self[2 * i + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn add_is_exact_when_representable() {
        assert_eq!(iv(1.0, 2.0).add(iv(3.0, 4.0)).unwrap(), iv(4.0, 6.0));
        let ab = iv(-0.3, 0.7);
        assert_eq!(Interval::ZERO.add(ab).unwrap(), ab);
    }

    #[test]
    fn add_rounds_outward() {
        let s = Interval::point(0.1).add(Interval::point(0.2)).unwrap();
        assert!(s.lo() < s.hi());
        assert!(s.lo().next_up().next_up() >= s.hi());
        // The double nearest 0.3 lies just below the decimal 0.3.
        assert!(s.lo() <= 0.3 && 0.3 < s.hi());
    }

    #[test]
    fn mul_sign_cases() {
        let p = iv(-1.0, 2.0).mul(iv(3.0, 4.0)).unwrap();
        assert!(iv(-4.0, 8.0).subset(p));
        assert!(p.width() < 12.0 + 1e-12);
    }

    #[test]
    fn sqr_is_dependency_aware() {
        let s = iv(-1.0, 2.0).sqr().unwrap();
        assert_eq!(s.lo(), 0.0);
        assert!(s.contains(4.0) && s.hi() < 4.0 + 1e-12);
        assert!(iv(3.0, 3.0).sqr().unwrap().contains(9.0));
    }

    #[test]
    fn sqrt_cases() {
        assert!(iv(2.0, 3.0).subset(iv(4.0, 9.0).sqrt_nn().unwrap()));
        assert_eq!(Interval::ZERO.sqrt_nn().unwrap(), Interval::ZERO);
        let r = Interval::point(2.0).sqrt_nn().unwrap();
        assert!(r.lo().next_up().next_up() >= r.hi());
        assert!(r.lo() * r.lo() <= 2.0 + 1e-15);
        assert_eq!(iv(-2.0, -1.0).sqrt_nn(), Err(Error::Domain("sqrt of a negative interval")));
    }

    #[test]
    fn division_by_zero_interval() {
        assert_eq!(Interval::ONE.div(iv(-1.0, 1.0)), Err(Error::DivisionByZero));
        assert!(Interval::ONE.div(iv(2.0, 4.0)).unwrap().contains(0.25));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Interval::point(f64::MAX);
        assert_eq!(big.add(big), Err(Error::Overflow));
        assert_eq!(big.mul(Interval::point(2.0)), Err(Error::Overflow));
        assert_eq!(big.sqr(), Err(Error::Overflow));
    }

    #[test]
    fn invalid_bounds_rejected() {
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn complex_ops() {
        let z = CInterval::point(0.5, -0.25);
        let w = CInterval::ONE.mul(z).unwrap();
        assert!(z.subset(w));
        let i2 = CInterval::point(0.0, 1.0).sqr().unwrap();
        assert!(i2.contains(-1.0, 0.0));
        let s = CInterval::point(1.0, 2.0).add(CInterval::point(3.0, 4.0)).unwrap();
        assert!(s.contains(4.0, 6.0));
        let q = CInterval::point(1.0, 1.0).div(CInterval::point(0.0, 2.0)).unwrap();
        assert!(q.contains(0.5, -0.5));
    }

    #[test]
    fn decimal_parsing_is_outward() {
        let d = Interval::from_decimal("-5.46875").unwrap();
        assert!(d.is_point() && d.lo() == -5.46875);
        let t = Interval::from_decimal("0.1").unwrap();
        assert_eq!(t.lo().next_up(), t.hi());
        assert!(t.contains(0.1));
        let e = Interval::from_decimal("25e-1").unwrap();
        assert_eq!(e, Interval::point(2.5));
        let big = Interval::from_decimal("1e22").unwrap();
        assert!(big.is_point());
        let odd = Interval::from_decimal("1e23").unwrap();
        assert!(!odd.is_point());
        assert!("[-1, 0.5]".parse::<Interval>().unwrap() == iv(-1.0, 0.5));
        assert!("abc".parse::<Interval>().is_err());
        assert!("1.2.3".parse::<Interval>().is_err());
    }

    #[test]
    fn bisect_covers_exactly() {
        let x = iv(-5.671875, -4.4375);
        let (l, r) = x.bisect();
        assert_eq!(l.lo(), x.lo());
        assert_eq!(r.hi(), x.hi());
        assert_eq!(l.hi(), r.lo());
    }
}
