//! Interval operations against exact rational arithmetic.

use horseshoe::interval::{CInterval, Interval};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

fn encloses(i: Interval, exact: &BigRational) -> bool {
    q(i.lo()) <= *exact && *exact <= q(i.hi())
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6..1e6f64, -1.0..1.0f64, (-40i32..40).prop_map(|k| k as f64 * 0.125)]
}

fn interval() -> impl Strategy<Value = (Interval, f64)> {
    (finite(), 0.0..1.0f64, 0.0..1.0f64).prop_map(|(m, w, t)| {
        let i = Interval::new(m, m + w).unwrap();
        (i, m + w * t)
    })
}

proptest! {
    #[test]
    fn sum_encloses_exact_sum((a, x) in interval(), (b, y) in interval()) {
        let s = a.add(b).unwrap();
        prop_assert!(encloses(s, &(q(x) + q(y))));
        prop_assert!(encloses(a.sub(b).unwrap(), &(q(x) - q(y))));
    }

    #[test]
    fn product_encloses_exact_product((a, x) in interval(), (b, y) in interval()) {
        prop_assert!(encloses(a.mul(b).unwrap(), &(q(x) * q(y))));
        prop_assert!(encloses(a.sqr().unwrap(), &(q(x) * q(x))));
    }

    #[test]
    fn quotient_encloses_exact_quotient((a, x) in interval(), d in 0.5..100.0f64) {
        let b = Interval::new(d, d * 1.5).unwrap();
        let y = d * 1.25;
        prop_assert!(encloses(a.div(b).unwrap(), &(q(x) / q(y))));
    }

    #[test]
    fn square_root_brackets_the_root(x in 0.0..1e8f64) {
        let r = Interval::point(x).sqrt_nn().unwrap();
        prop_assert!(q(r.lo()) * q(r.lo()) <= q(x));
        prop_assert!(q(r.hi()) * q(r.hi()) >= q(x));
    }

    #[test]
    fn exact_sums_stay_points(a in -1000i32..1000, b in -1000i32..1000) {
        let s = Interval::point(a as f64 * 0.5).add(Interval::point(b as f64 * 0.25)).unwrap();
        prop_assert!(s.is_point());
    }

    #[test]
    fn multiplication_is_inclusion_monotone((a, _) in interval(), (b, _) in interval(), s in 0.0..1.0f64) {
        let sub = Interval::new(a.lo(), a.lo() + (a.hi() - a.lo()) * s).unwrap();
        prop_assert!(sub.mul(b).unwrap().subset(a.mul(b).unwrap()));
        prop_assert!(sub.add(b).unwrap().subset(a.add(b).unwrap()));
    }

    #[test]
    fn complex_product_encloses_samples(
        (ar, x) in interval(), (ai, y) in interval(),
        (br, u) in interval(), (bi, v) in interval(),
    ) {
        let p = CInterval::new(ar, ai).mul(CInterval::new(br, bi)).unwrap();
        prop_assert!(encloses(p.re, &(q(x) * q(u) - q(y) * q(v))));
        prop_assert!(encloses(p.im, &(q(x) * q(v) + q(y) * q(u))));
    }

    #[test]
    fn decimal_parse_encloses_the_decimal(int in -100_000i64..100_000, frac in 0u32..1_000_000) {
        let s = format!("{int}.{frac:06}");
        let i: Interval = s.parse().unwrap();
        let exact = BigRational::new(
            (int * 1_000_000 + if int < 0 { -(frac as i64) } else { frac as i64 }).into(),
            1_000_000.into(),
        );
        prop_assert!(encloses(i, &exact));
        prop_assert!(i.width() <= 2.0 * f64::EPSILON * (int.abs() as f64 + 1.0));
    }
}
