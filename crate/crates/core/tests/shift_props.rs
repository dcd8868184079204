//! Exact symbolic dynamics: counting, swaps, flips.

use horseshoe::shift::{
    apply, apply_periodic, count_fixed_enumerate, count_fixed_transfer, fix_to_sft, is_fixed,
    Automorphism, BlockSwap, PeriodicSeq, Sft, Word,
};
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..2, 1..=max)
}

fn sft() -> impl Strategy<Value = Sft> {
    proptest::collection::vec(word(6), 0..4).prop_map(|ws| {
        let ws: Vec<Word> = ws.into_iter().map(|b| Word::new(b, None).unwrap()).collect();
        Sft::new(&ws)
    })
}

fn text(b: &[u8]) -> String {
    b.iter().map(|x| char::from(b'0' + x)).collect()
}

// A swap `u ↔ v` with u, v differing in one interior position.
fn swap() -> impl Strategy<Value = BlockSwap> {
    (word(3), word(3)).prop_filter_map("order dependent rewrite", |(l, r)| {
        let mut u = l.clone();
        u.push(0);
        u.extend_from_slice(&r);
        let mut v = l;
        v.push(1);
        v.extend_from_slice(&r);
        BlockSwap::from_words(&text(&u), &text(&v)).ok()
    })
}

proptest! {
    #[test]
    fn transfer_counts_match_enumeration(s in sft(), n in 1usize..=10) {
        prop_assert_eq!(count_fixed_transfer(&s, n).unwrap(), count_fixed_enumerate(&s, n).unwrap());
    }

    #[test]
    fn flip_is_an_involution(x in word(12)) {
        let x = PeriodicSeq::new(x).unwrap();
        let f = Automorphism::flip();
        prop_assert_eq!(apply_periodic(&f, &apply_periodic(&f, &x)), x);
    }

    #[test]
    fn swaps_are_involutions(s in swap(), x in word(14)) {
        let a = Automorphism::swap(s);
        let x = PeriodicSeq::new(x).unwrap();
        prop_assert_eq!(apply_periodic(&a, &apply_periodic(&a, &x)), x);
    }

    #[test]
    fn swaps_commute_with_the_shift(s in swap(), x in word(14)) {
        let a = Automorphism::swap(s);
        let x = PeriodicSeq::new(x).unwrap();
        prop_assert_eq!(apply_periodic(&a, &x.rotate()), apply_periodic(&a, &x).rotate());
    }

    #[test]
    fn fixed_points_of_a_swap_form_its_sft(s in swap(), x in word(14)) {
        let sft = fix_to_sft(&s).unwrap();
        let x = PeriodicSeq::new(x).unwrap();
        prop_assert_eq!(is_fixed(&Automorphism::swap(s), &x), sft.admits_periodic(x.word()));
    }

    #[test]
    fn window_image_has_expected_length(s in swap(), w in word(16)) {
        let (l, r) = s.radius();
        prop_assume!(w.len() > l + r);
        let a = Automorphism::swap(s);
        let img = apply(&a, &Word::new(w.clone(), None).unwrap()).unwrap();
        prop_assert_eq!(img.len(), w.len() - l - r);
    }
}
