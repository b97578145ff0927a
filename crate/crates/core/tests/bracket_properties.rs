mod common;

use common::{canonical_cfs, random_cf, random_tree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tanglekit::bracket::{
    bracket_contfrac, bracket_knot, bracket_tangle, bracket_tangle_oracle, fraction_bracket,
    fraction_bracket_diagram, normalized_f, LaurentPoly,
};
use tanglekit::diagram::{build_standard, from_expr, Axis};
use tanglekit::tangle::component_count;
use tanglekit::{ContinuedFraction, Fraction, TangleExpr};

#[test]
fn recursion_matches_states_on_algebraic_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..500 {
        let t = random_tree(&mut rng, 10);
        let d = from_expr(&t).unwrap();
        assert_eq!(
            bracket_tangle(&t),
            bracket_tangle_oracle(&d).unwrap(),
            "{t}"
        );
    }
}

#[test]
fn arithmetic_of_fractions_at_sqrt_i() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = [0usize; 4];
    while checked.iter().any(|&c| c < 500) {
        let (t, s) = (random_tree(&mut rng, 8), random_tree(&mut rng, 8));
        let (Ok(ft), Ok(fs)) = (fraction_bracket(&t), fraction_bracket(&s)) else {
            continue;
        };
        if !(ft.is_infinite() && fs.is_infinite()) {
            let sum = fraction_bracket(&TangleExpr::sum(t.clone(), s.clone())).unwrap();
            assert_eq!(sum, &ft + &fs, "{t} + {s}");
            checked[0] += 1;
        }
        assert_eq!(
            fraction_bracket(&TangleExpr::mirror(t.clone())).unwrap(),
            -&ft
        );
        assert_eq!(
            fraction_bracket(&TangleExpr::invert(t.clone())).unwrap(),
            ft.recip()
        );
        assert_eq!(
            fraction_bracket(&TangleExpr::rotate(t.clone())).unwrap(),
            (-&ft).recip()
        );
        for c in &mut checked[1..] {
            *c += 1;
        }
    }
}

#[test]
fn bracket_fraction_matches_continued_fraction() {
    fn extend(prefix: &mut Vec<i64>, left: usize, count: &mut usize) {
        let c = ContinuedFraction::new(prefix.clone()).unwrap();
        assert_eq!(bracket_contfrac(&c).fraction().unwrap(), c.eval(), "{c}");
        *count += 1;
        if left == 0 {
            return;
        }
        for a in (-4..=4).filter(|&a| a != 0) {
            prefix.push(a);
            extend(prefix, left - 1, count);
            prefix.pop();
        }
    }
    let mut count = 0;
    for a1 in -4..=4 {
        extend(&mut vec![a1], 4, &mut count);
    }
    assert_eq!(count, 9 * (1 + 8 + 64 + 512 + 4096));
}

#[test]
fn mirror_switches_a_and_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let d = build_standard(&random_cf(&mut rng, 8)).unwrap();
        let m = d.mirror();
        assert_eq!(
            bracket_tangle_oracle(&m).unwrap(),
            bracket_tangle_oracle(&d).unwrap().mirror()
        );
        let (n, mn) = (d.numerator().unwrap(), m.numerator().unwrap());
        assert_eq!(
            bracket_knot(&mn).unwrap(),
            bracket_knot(&n).unwrap().mirror()
        );
    }
}

#[test]
fn curls_scale_by_minus_a_cubed() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut knots = 0;
    while knots < 200 {
        let c = random_cf(&mut rng, 8);
        let f = c.eval();
        if f.is_infinite() || component_count(&f) != 1 {
            continue;
        }
        knots += 1;
        let k = build_standard(&c).unwrap().numerator().unwrap();
        if k.max_edge() == 0 {
            continue;
        }
        let edge = rng.gen_range(1..=k.max_edge());
        let curled = k.add_curl(edge, true).unwrap();
        let want = &bracket_knot(&k).unwrap() * &LaurentPoly::monomial(-1, 3);
        assert_eq!(bracket_knot(&curled).unwrap(), want, "{c}");
        let uncurled = k.add_curl(edge, false).unwrap();
        let want = &bracket_knot(&k).unwrap() * &LaurentPoly::monomial(-1, -3);
        assert_eq!(bracket_knot(&uncurled).unwrap(), want, "{c}");
        let f0 = normalized_f(&k, &k.default_orientation().unwrap()).unwrap();
        let f1 = normalized_f(&curled, &curled.default_orientation().unwrap()).unwrap();
        assert_eq!(f0, f1, "{c}");
    }
}

#[test]
fn inversion_conjugates_at_sqrt_i() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..500 {
        let t = random_tree(&mut rng, 10);
        let (d, n) = bracket_tangle(&t).eval_sqrt_i();
        let (di, ni) = bracket_tangle(&TangleExpr::invert(t)).eval_sqrt_i();
        assert_eq!(di, n.conj());
        assert_eq!(ni, d.conj());
    }
}

#[test]
fn flips_keep_the_fraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..300 {
        let c = random_cf(&mut rng, 8);
        let d = build_standard(&c).unwrap();
        for axis in [Axis::Horizontal, Axis::Vertical] {
            let f = fraction_bracket_diagram(&d.flip(axis).unwrap()).unwrap();
            assert_eq!(f, c.eval(), "{c} {axis:?}");
        }
    }
}

#[test]
fn fixtures() {
    let c: ContinuedFraction = "[2,3,4]".parse().unwrap();
    assert_eq!(
        bracket_contfrac(&c).fraction().unwrap(),
        Fraction::new(30, 13).unwrap()
    );
    assert_eq!(
        fraction_bracket(&TangleExpr::int(1)).unwrap(),
        Fraction::one()
    );
    assert_eq!(
        fraction_bracket(&TangleExpr::int(0)).unwrap(),
        Fraction::zero()
    );
    assert_eq!(
        fraction_bracket(&TangleExpr::Infinity).unwrap(),
        Fraction::infinity()
    );
    let trefoil = build_standard(&"[3]".parse().unwrap())
        .unwrap()
        .numerator()
        .unwrap();
    assert_eq!(
        bracket_knot(&trefoil).unwrap(),
        LaurentPoly::from_terms([(-7, 1), (-3, -1), (5, -1)])
    );
    assert_eq!(canonical_cfs(0).len(), 2);
}
