//! Box maps and transition graphs contain sampled point dynamics.

use horseshoe::cubical::{build_graph, cover, CubicalSet, Grid};
use horseshoe::henon::{eval_fwd, eval_inv, trap_box, Mode, Param};
use horseshoe::interval::{CInterval, Interval, IntervalBox};
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn henon(a: C, c: C, x: C, y: C) -> (C, C) {
    (x * x + c - a * y, x)
}

fn real_param() -> impl Strategy<Value = (f64, f64)> {
    (0.1..2.0f64, -12.0..-4.0f64)
}

proptest! {
    #[test]
    fn forward_box_contains_sampled_images(
        (a, c) in real_param(),
        x in -3.0..3.0f64, y in -3.0..3.0f64, w in 0.0..0.5f64,
        s in 0.0..1.0f64, t in 0.0..1.0f64,
    ) {
        let p = Param::point(a, c, Mode::Real).unwrap();
        let b = IntervalBox::new(&[Interval::new(x, x + w).unwrap(), Interval::new(y, y + w).unwrap()]);
        let img = eval_fwd(&p, &b).unwrap();
        let (u, v) = (x + w * s, y + w * t);
        let (nx, ny) = henon(C::from(a), C::from(c), C::from(u), C::from(v));
        // The sample itself is rounded; allow one relative ulp of slack.
        let slack = 4.0 * f64::EPSILON * (1.0 + nx.re.abs());
        prop_assert!(img[0].lo() - slack <= nx.re && nx.re <= img[0].hi() + slack);
        prop_assert!(img[1].contains(ny.re));
    }

    #[test]
    fn complex_forward_box_contains_sampled_images(
        ar in 0.1..1.5f64, ai in -0.5..0.5f64, cr in -11.0..-9.0f64, ci in -1.0..1.0f64,
        z in proptest::array::uniform4(-2.0..2.0f64),
    ) {
        let p = Param::complex(CInterval::point(ar, ai), CInterval::point(cr, ci)).unwrap();
        let b = IntervalBox::new(&z.map(|v| Interval::new(v, v + 0.25).unwrap()));
        let img = eval_fwd(&p, &b).unwrap();
        let mid = b.midpoint();
        let (nx, ny) = henon(C::new(ar, ai), C::new(cr, ci), C::new(mid[0], mid[1]), C::new(mid[2], mid[3]));
        prop_assert!(img.contains_point(&[nx.re, nx.im, ny.re, ny.im]));
    }

    #[test]
    fn inverse_undoes_forward((a, c) in real_param(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let p = Param::point(a, c, Mode::Real).unwrap();
        let z = IntervalBox::point(&[x, y]);
        let back = eval_inv(&p, &eval_fwd(&p, &z).unwrap()).unwrap();
        prop_assert!(back.contains_point(&[x, y]));
    }

    #[test]
    fn cover_contains_the_box(lo in proptest::array::uniform2(-1.0..0.9f64), w in 0.0..0.5f64, depth in 1u8..6) {
        let dom = IntervalBox::new(&[Interval::new(-1.0, 1.0).unwrap(); 2]);
        let g = Grid::uniform(dom, depth).unwrap();
        let b = IntervalBox::new(&lo.map(|l| Interval::new(l, (l + w).min(0.999)).unwrap()));
        let (s, clipped) = cover(&g, &b);
        prop_assert!(!clipped);
        for corner in [[b[0].lo(), b[1].lo()], [b[0].hi(), b[1].hi()], [b[0].lo(), b[1].hi()]] {
            let id = s.locate(&corner);
            prop_assert!(id.is_some() && s.contains(id.unwrap()));
        }
    }

    #[test]
    fn graph_edges_contain_point_transitions((a, c) in real_param(), samples in proptest::collection::vec((0.0..1.0f64, 0.0..1.0f64), 20)) {
        let p = Param::point(a, c, Mode::Real).unwrap();
        let g = Grid::uniform(trap_box(&p).unwrap(), 4).unwrap();
        let all = CubicalSet::full(g.clone()).unwrap();
        let f = |b: &IntervalBox| eval_fwd(&p, b);
        let tg = build_graph(&all, &f).unwrap();
        let dom = g.domain();
        for (s, t) in samples {
            let x = [dom[0].lo() + s * dom[0].width(), dom[1].lo() + t * dom[1].width()];
            let (nx, ny) = henon(C::from(a), C::from(c), C::from(x[0]), C::from(x[1]));
            let Some(from) = all.locate(&x) else { continue };
            let vi = all.index_of(from).unwrap();
            match all.locate(&[nx.re, ny.re]) {
                Some(to) => {
                    let ti = all.index_of(to).unwrap() as u32;
                    prop_assert!(tg.edges.succ(vi).contains(&ti));
                }
                None => prop_assert!(tg.escape[vi]),
            }
        }
    }
}
