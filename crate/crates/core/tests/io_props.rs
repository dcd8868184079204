use horseshoe::interval::Interval;
use horseshoe::io::{exact_decimal, interval_text};
use proptest::prelude::*;

proptest! {
    #[test]
    fn exact_decimal_reads_back(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let back = Interval::from_decimal(&exact_decimal(x)).unwrap();
        prop_assert_eq!(back, Interval::point(x));
    }

    #[test]
    fn interval_text_reads_back(a in -1e12..1e12f64, w in 0.0..10.0f64) {
        let i = Interval::new(a, a + w).unwrap();
        prop_assert_eq!(interval_text(i).parse::<Interval>().unwrap(), i);
    }
}
