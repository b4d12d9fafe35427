use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use superhopf::algebra_file::AlgebraSpec;
use superhopf::ground_ring::{qpi_binomial, qpi_factorial, qpi_integer};
use superhopf::module::{induce_module, restrict_module, shift_module, Side, SuperModule};
use superhopf::superalgebra::validate_algebra;
use superhopf::towers::nilcoxeter::build_nilcoxeter;
use superhopf::towers::Tower;
use superhopf::{GroundElem, Mode, TwistScalar, Q};

fn elem(mode: Mode) -> impl Strategy<Value = GroundElem> {
    prop::collection::vec((-4i64..5, 0u8..2, -3i64..4), 0..5).prop_map(move |ts| {
        let mut e = GroundElem::zero(mode);
        for (q, p, c) in ts {
            e.add_monomial(q, if mode == Mode::Full { p } else { 0 }, c);
        }
        e
    })
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Full), Just(Mode::Collapsed)]
}

fn ring_triple() -> impl Strategy<Value = (GroundElem, GroundElem, GroundElem)> {
    mode().prop_flat_map(|m| (elem(m), elem(m), elem(m)))
}

fn twist() -> impl Strategy<Value = TwistScalar> {
    (-2i64..3, 0u8..2).prop_map(|(d, e)| TwistScalar::new(d, e))
}

proptest! {
    #[test]
    fn ground_ring_laws((a, b, c) in ring_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn bar_and_collapse_are_ring_maps((a, b, _) in ring_triple()) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).collapse_pi(), &a.collapse_pi() * &b.collapse_pi());
    }

    #[test]
    fn eval_is_multiplicative((a, b, _) in ring_triple(), q in 1i64..5, neg in any::<bool>()) {
        let pi = if neg && a.mode() == Mode::Full { -1 } else { 1 };
        let q = Q::from_integer(q.into());
        prop_assert_eq!((&a * &b).eval(&q, pi), a.eval(&q, pi) * b.eval(&q, pi));
    }

    #[test]
    fn one_plus_pi_division_inverts(a in elem(Mode::Full)) {
        let a = a.collapse_pi();
        let mut z = GroundElem::zero(Mode::Full);
        for (q, _, c) in a.terms() {
            z.add_monomial(q, 0, c.to_integer());
        }
        let one_plus_pi = &GroundElem::one(Mode::Full) + &GroundElem::pi(Mode::Full);
        prop_assert_eq!((&one_plus_pi * &z).div_one_plus_pi().unwrap(), z);
    }

    #[test]
    fn q_integers_sum_powers(c in twist(), n in 0usize..7) {
        let mut s = GroundElem::zero(Mode::Full);
        for j in 0..n {
            s = &s + &c.pow(j as i64, Mode::Full);
        }
        prop_assert_eq!(qpi_integer(n, c, Mode::Full), s);
    }

    #[test]
    fn q_binomials_satisfy_pascal(c in twist(), n in 1usize..8, k in 1usize..8) {
        prop_assume!(k < n);
        let m = Mode::Full;
        let lhs = qpi_binomial(n, k, c, m).unwrap();
        let rhs = &qpi_binomial(n - 1, k - 1, c, m).unwrap() + &(&c.pow(k as i64, m) * &qpi_binomial(n - 1, k, c, m).unwrap());
        prop_assert_eq!(&lhs, &rhs);
        let prod = &(&lhs * &qpi_factorial(k, c, m)) * &qpi_factorial(n - k, c, m);
        prop_assert_eq!(prod, qpi_factorial(n, c, m));
    }

    #[test]
    fn shift_moves_graded_dimension(n in -3i64..4, s in 0u8..2, d in 1i64..3, eps in 0u8..2) {
        let t = Tower::nilcoxeter(3, d, eps).unwrap();
        let m = SuperModule::regular(t.algebra(3).clone(), Side::Left);
        let sh = shift_module(&m, n, s);
        prop_assert!(sh.validate().passed());
        let expect = &GroundElem::monomial(Mode::Full, n, s, 1) * &m.graded_dim(Mode::Full);
        prop_assert_eq!(sh.graded_dim(Mode::Full), expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nilcoxeter_algebras_are_coherent(n in 0usize..5, d in 0i64..3, eps in 0u8..2) {
        let nc = build_nilcoxeter(n, d, eps).unwrap();
        prop_assert!(validate_algebra(&nc.algebra).passed());
        let f = nc.frobenius().unwrap();
        prop_assert_eq!(&f.nakayama.images, &nc.nakayama_closed_form());
    }

    #[test]
    fn spec_files_round_trip(n in 0usize..4, d in 1i64..3, eps in 0u8..2) {
        let nc = build_nilcoxeter(n, d, eps).unwrap();
        let f = nc.frobenius().unwrap();
        let text = AlgebraSpec::from_algebra(&nc.algebra, Some(&f)).unwrap().to_json();
        let back = AlgebraSpec::parse(&text).unwrap().to_algebra().unwrap();
        prop_assert_eq!(back.table(), nc.algebra.table());
        prop_assert_eq!(back.degrees(), nc.algebra.degrees());
    }

    #[test]
    fn induction_multiplies_dimensions(k in 1usize..3, l in 1usize..3, eps in 0u8..2) {
        let t = Tower::nilcoxeter(4, 1, eps).unwrap();
        let rho = t.rho(k, l).unwrap();
        let triv = SuperModule::trivial(t.tensor(k, l), superhopf::superalgebra::Degree::new(0, 0), Side::Left).unwrap();
        let ind = induce_module(&rho, &triv).unwrap();
        prop_assert!(ind.validate().passed());
        // Free over A_k ⊗ A_l with rank C(k+l, k).
        prop_assert_eq!(BigInt::from(ind.dim()), superhopf::ground_ring::binomial(k + l, k));
        let res = restrict_module(&rho, &ind).unwrap();
        prop_assert!(res.validate().passed());
    }
}

#[test]
fn sergeev_dimensions() {
    let t = Tower::wreath(Arc::new(superhopf::frobenius::clifford1_frobenius()), 3).unwrap();
    let dims: Vec<usize> = (0..=3).map(|n| t.algebra(n).dim()).collect();
    assert_eq!(dims, [1, 2, 8, 48]);
}
