//! Property tests for the monoid layer and the Gröbner engine.

use proptest::prelude::*;

use logls_core::field::Field;
use logls_core::groebner::{algebra_map_kernel, buchberger, PresentedAlgebra};
use logls_core::monoids::{FpMonoid, MonoidHom};
use logls_core::poly::{MonomialOrder, Poly, PolyRing};

fn free(n: usize, prefix: &str) -> FpMonoid {
    FpMonoid::new((0..n).map(|i| format!("{prefix}{i}")).collect(), vec![]).unwrap()
}

fn images(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..4, cols), rows)
}

fn ring(field: Field, names: &[&str]) -> PolyRing {
    PolyRing::new(field, names.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex)
}

fn poly(r: &PolyRing, terms: &[(i64, Vec<u32>)]) -> Poly {
    terms.iter().fold(Poly::zero(), |acc, (c, m)| r.add(&acc, &r.monomial(m.clone(), r.field.from_i64(*c))))
}

fn terms(nv: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..3, nv)), 1..4)
}

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![Field::Rationals, Field::prime(2).unwrap(), Field::prime(3).unwrap()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn group_completion_is_functorial((a, b, c, fi, gi) in (1usize..4, 1usize..4, 1usize..4)
        .prop_flat_map(|(a, b, c)| (Just(a), Just(b), Just(c), images(a, b), images(b, c))))
    {
        let f = MonoidHom::new(free(a, "a"), free(b, "b"), fi).unwrap();
        let g = MonoidHom::new(free(b, "b"), free(c, "c"), gi).unwrap();
        let composed = g.compose(&f).gp();
        let product = g.gp().compose(&f.gp()).unwrap();
        prop_assert_eq!(composed.matrix, product.matrix);
    }

    #[test]
    fn groebner_bases_are_reproducible(f in field(), gens in prop::collection::vec(terms(3), 1..4)) {
        let r = ring(f, &["x", "y", "z"]);
        let ps: Vec<Poly> = gens.iter().map(|t| poly(&r, t)).collect();
        let a = buchberger(&r, &ps);
        let b = buchberger(&r, &ps);
        let fa: Vec<String> = a.iter().map(|p| r.format(p)).collect();
        let fb: Vec<String> = b.iter().map(|p| r.format(p)).collect();
        prop_assert_eq!(fa, fb);
        for p in &ps {
            prop_assert!(logls_core::groebner::normal_form(&r, p, &a).is_zero());
        }
    }

    #[test]
    fn kernel_elements_map_to_zero(f in field(), imgs in prop::collection::vec(terms(2), 3), rel in terms(2)) {
        let src = PresentedAlgebra::new(ring(f, &["x", "y", "z"]), vec![]);
        let tr = ring(f, &["s", "t"]);
        let relp = poly(&tr, &rel);
        let tgt = PresentedAlgebra::new(tr.clone(), vec![relp]);
        prop_assume!(!tgt.is_unit_ideal());
        let images: Vec<Poly> = imgs.iter().map(|t| poly(&tr, t)).collect();
        for g in algebra_map_kernel(&src, &tgt, &images) {
            let img = src.ring.substitute(&g, &images, &tr);
            prop_assert!(tgt.is_zero(&img), "{} does not vanish", src.ring.format(&g));
        }
    }
}
