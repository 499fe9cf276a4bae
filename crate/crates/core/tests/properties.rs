mod common;

use std::collections::BTreeMap;

use common::*;
use dgcoh::coalgebra::opposite;
use dgcoh::comodule::{cofree, DGComodule, Side};
use dgcoh::complex::{cohomology_dims, cone, homotopy_witness, induced_map, is_quasi_iso, tensor_complex, GradedSpace};
use dgcoh::cyclic::check_operator_identities;
use dgcoh::resolution::{colinear_maps, cotensor, StandardResolution};
use dgcoh::{ChainComplex, CoalgebraMorphism, Field};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(5)), Just(Field::Prime(2))]
}

fn dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 1..5)
}

fn h(x: &ChainComplex, lo: i32, hi: i32) -> BTreeMap<i32, usize> {
    cohomology_dims(x, lo..=hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(seed: u64, f in field(), r in 0usize..6, c in 0usize..6) {
        let a = random_matrix(&mut rng(seed), f, r, c);
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), c);
        prop_assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn tensor_is_multiplicative(seed: u64, f in field(), n in 1usize..4, m in 1usize..4, k in 1usize..4, l in 1usize..4) {
        let mut g = rng(seed);
        let (a, c) = (random_matrix(&mut g, f, n, m), random_matrix(&mut g, f, m, k));
        let (b, d) = (random_matrix(&mut g, f, l, k), random_matrix(&mut g, f, k, n));
        prop_assert_eq!(a.tensor(&b).mul(&c.tensor(&d)), a.mul(&c).tensor(&b.mul(&d)));
    }

    #[test]
    fn euler_characteristic_is_conserved(seed: u64, f in field(), d in dims()) {
        let x = random_complex(&mut rng(seed), f, &d);
        let hd = h(&x, 0, d.len() as i32);
        let chi: i64 = hd.iter().map(|(n, k)| if n % 2 == 0 { *k as i64 } else { -(*k as i64) }).sum();
        prop_assert_eq!(chi, x.euler_characteristic());
    }

    #[test]
    fn cone_long_exact_sequence(seed: u64, f in field(), d in dims(), lambda in 0i64..3) {
        let mut g = rng(seed);
        let x = random_complex(&mut g, f, &d);
        let (phi, _) = homotopic_to_scalar(&mut g, &x, lambda);
        let c = cone(&phi).unwrap();
        c.check_square_zero().unwrap();
        let top = d.len() as i32;
        for n in -1..=top {
            let (a, b) = (induced_map(&phi, n), induced_map(&phi, n + 1));
            let coker = a.rows() - a.rank();
            let ker = b.cols() - b.rank();
            prop_assert_eq!(h(&c, n, n)[&n], coker + ker, "degree {}", n);
        }
    }

    #[test]
    fn homotopic_maps_agree_on_quasi_iso(seed: u64, f in field(), d in dims(), lambda in 0i64..3) {
        let mut g = rng(seed);
        let x = random_complex(&mut g, f, &d);
        let (phi, scalar) = homotopic_to_scalar(&mut g, &x, lambda);
        prop_assert!(homotopy_witness(&phi, &scalar).unwrap().is_some());
        for n in 0..d.len() as i32 {
            prop_assert_eq!(is_quasi_iso(&phi, n..=n).is_quasi_iso, is_quasi_iso(&scalar, n..=n).is_quasi_iso);
        }
    }

    #[test]
    fn kunneth(seed: u64, f in field(), d1 in dims(), d2 in dims()) {
        let mut g = rng(seed);
        let (x, y) = (random_complex(&mut g, f, &d1), random_complex(&mut g, f, &d2));
        let t = tensor_complex(&x, &y).unwrap();
        t.check_square_zero().unwrap();
        let (hx, hy) = (h(&x, 0, 4), h(&y, 0, 4));
        for n in 0..8 {
            let expect: usize = (0..=n).map(|p| hx.get(&p).unwrap_or(&0) * hy.get(&(n - p)).unwrap_or(&0)).sum();
            prop_assert_eq!(h(&t, n, n)[&n], expect, "degree {}", n);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_coalgebras_validate(seed: u64, f in field()) {
        let c = random_coalgebra(&mut rng(seed), f, 4);
        prop_assert!(c.validate().is_valid(), "{:?}", c.validate());
        prop_assert_eq!(opposite(&opposite(&c)), c.clone());
        prop_assert!(opposite(&c).validate().is_valid());
        for side in [Side::Left, Side::Right] {
            prop_assert!(DGComodule::regular(&c, side).validate().is_valid());
        }
    }

    #[test]
    fn corestriction_keeps_the_complex(seed: u64, f in field()) {
        let mut g = rng(seed);
        let c = random_coalgebra(&mut g, f, 4);
        let p = random_change(&mut g, &c);
        let phi = CoalgebraMorphism::new(c.change_basis(&p).unwrap(), c.clone(), p).unwrap();
        prop_assert!(phi.validate().is_valid());
        let m = DGComodule::regular(&phi.source, Side::Left);
        let r = m.corestrict(&phi).unwrap();
        prop_assert!(r.validate().is_valid());
        prop_assert_eq!(r.as_complex().unwrap(), m.as_complex().unwrap());
    }

    #[test]
    fn operator_identities_on_random_coalgebras(seed: u64, f in field(), n in 0usize..3) {
        let c = random_coalgebra(&mut rng(seed), f, 3);
        for check in check_operator_identities(&c, n).unwrap() {
            prop_assert!(check.holds, "{} fails at arity {}", check.identity, n);
        }
    }

    #[test]
    fn cofree_adjunction(seed: u64, f in field(), r in 1usize..3) {
        let c = random_concentrated(&mut rng(seed), f, 3);
        let m = DGComodule::regular(&c, Side::Left);
        let v = ChainComplex::new(f, GradedSpace::new([(0, r)]), BTreeMap::new()).unwrap();
        let cv = cofree(&c, &v).unwrap();
        prop_assert_eq!(colinear_maps(&m, &cv).unwrap().len(), m.dim() * r);
        let x = DGComodule::regular(&c, Side::Right);
        let small = cotensor(&x, &m).unwrap();
        let big = cotensor(&x, &cv).unwrap();
        prop_assert_eq!(small.space().total_dim(), m.dim());
        prop_assert_eq!(big.space().total_dim(), r * c.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn resolutions_square_to_zero_and_contract(seed: u64, f in field(), p in 1usize..4) {
        let c = random_coalgebra(&mut rng(seed), f, 3);
        let m = DGComodule::regular(&c, Side::Left);
        StandardResolution::new(&m, p).unwrap().complex().check_square_zero().unwrap();
        StandardResolution::augmented(&m, p).unwrap().check_contraction().unwrap();
    }

    #[test]
    fn truncation_is_stable(seed: u64, f in field(), p in 2usize..4) {
        let c = random_concentrated(&mut rng(seed), f, 3);
        let m = DGComodule::regular(&c, Side::Left);
        let a = StandardResolution::new(&m, p).unwrap();
        let b = StandardResolution::new(&m, p + 1).unwrap();
        let top = p as i32 - 2;
        prop_assert_eq!(h(a.complex(), 0, top), h(b.complex(), 0, top));
    }
}
