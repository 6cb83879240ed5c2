use num_bigint::BigInt;
use proptest::prelude::*;
use qgl::blmcore::AlgebraCtx;
use qgl::indices::{enumerate_set, IndexSet, MatIdx};
use qgl::qring::{classical_binom_int, gauss_binom, make_ring, Generic, LaurentPoly, Ring, RingMode};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..5)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn gauss_binom_symmetric_and_specializes(n in 0i64..12, t in 0i64..12) {
        prop_assume!(t <= n);
        let g = gauss_binom(n, t);
        prop_assert_eq!(&g, &gauss_binom(n, n - t));
        prop_assert_eq!(g.bar(), g.clone());
        prop_assert_eq!(g.eval_i64(1), classical_binom_int(n, t).into());
    }

    #[test]
    fn specialization_is_a_ring_map(a in poly(), b in poly()) {
        let k = make_ring(3, 2, 2, RingMode::Auto).unwrap();
        prop_assert_eq!(k.from_laurent(&(&a * &b)), k.mul(&k.from_laurent(&a), &k.from_laurent(&b)));
        prop_assert_eq!(k.from_laurent(&(&a + &b)), k.add(&k.from_laurent(&a), &k.from_laurent(&b)));
    }

    #[test]
    fn compact_form_round_trips(n in 2usize..5, seed in prop::collection::vec(-3i64..4, 16)) {
        let entries: Vec<i64> = (0..n * n)
            .map(|k| if k / n == k % n { seed[k] } else { seed[k].max(0) })
            .collect();
        let a = MatIdx::new(n, &entries).unwrap();
        prop_assert_eq!(MatIdx::parse(&a.compact(), n).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schur_product_is_associative(r in 1i64..4, i in 0usize..100, j in 0usize..100, k in 0usize..100) {
        let ctx = AlgebraCtx::schur(2, r, &Generic::new()).unwrap();
        let basis = enumerate_set(&IndexSet::ThetaNr { n: 2, r }).unwrap();
        let pick = |x: usize| ctx.basis(&basis[x % basis.len()]).unwrap();
        let (x, y, z) = (pick(i), pick(j), pick(k));
        let left = ctx.mult(&ctx.mult(&x, &y).unwrap(), &z).unwrap();
        let right = ctx.mult(&x, &ctx.mult(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn schur_identity_is_sum_of_idempotents(r in 1i64..4, i in 0usize..100) {
        let ctx = AlgebraCtx::schur(2, r, &Generic::new()).unwrap();
        let basis = enumerate_set(&IndexSet::ThetaNr { n: 2, r }).unwrap();
        let one = ctx
            .elem(basis.iter().filter(|a| a.off_diag() == MatIdx::zero(2)).map(|a| (a.clone(), LaurentPoly::one())).collect())
            .unwrap();
        let x = ctx.basis(&basis[i % basis.len()]).unwrap();
        prop_assert_eq!(ctx.mult(&one, &x).unwrap(), x.clone());
        prop_assert_eq!(ctx.mult(&x, &one).unwrap(), x);
    }

    #[test]
    fn quotient_product_is_associative(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let ring = make_ring(3, 2, 1, RingMode::Auto).unwrap();
        let ctx = AlgebraCtx::quotient(2, &ring).unwrap();
        let lv = ctx.levels().unwrap();
        let basis = enumerate_set(&IndexSet::ThetaTildeQuot { n: 2, levels: lv }).unwrap();
        let after = |a: &MatIdx, x: usize| {
            let co = a.co();
            let next: Vec<&MatIdx> = basis
                .iter()
                .filter(|b| b.ro().iter().zip(&co).all(|(u, w)| (u - w).rem_euclid(lv.period) == 0))
                .collect();
            next[x % next.len()].clone()
        };
        let a = basis[i % basis.len()].clone();
        let b = after(&a, j);
        let c = after(&b, k);
        let (x, y, z) = (ctx.basis(&a).unwrap(), ctx.basis(&b).unwrap(), ctx.basis(&c).unwrap());
        let xy = ctx.mult(&x, &y).unwrap();
        let left = ctx.mult(&xy, &z).unwrap();
        let right = ctx.mult(&x, &ctx.mult(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
