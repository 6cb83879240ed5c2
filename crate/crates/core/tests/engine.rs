use qgl::blmcore::AlgebraCtx;
use qgl::indices::{enumerate_set, IndexSet, MatIdx};
use qgl::qring::{make_ring, Generic, Ring, RingMode, RingSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(lp: u64, p: u64, h: u32) -> RingSpec {
    make_ring(lp, p, h, RingMode::Auto).unwrap()
}

#[test]
fn triangularity_theta_3_3() {
    let g = Generic::new();
    let k = ring(3, 2, 1);
    let sg = AlgebraCtx::schur(3, 3, &g).unwrap();
    let sk = AlgebraCtx::schur(3, 3, &k).unwrap();
    for a in enumerate_set(&IndexSet::ThetaNr { n: 3, r: 3 }).unwrap() {
        sg.monomial_for(&a).unwrap_or_else(|e| panic!("{a}: {e}"));
        sk.monomial_for(&a).unwrap_or_else(|e| panic!("{a}: {e}"));
    }
}

#[test]
fn quotient_associativity() {
    for (lp, p) in [(3, 2), (4, 3)] {
        let k = ring(lp, p, 1);
        let q = AlgebraCtx::quotient(2, &k).unwrap();
        let all = enumerate_set(&IndexSet::ThetaTildeQuot {
            n: 2,
            levels: q.levels().unwrap(),
        })
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut nonzero = 0;
        for _ in 0..100 {
            let a = all.choose(&mut rng).unwrap();
            // bias towards composable triples
            let pick = |rng: &mut ChaCha8Rng, co: &[i64]| {
                let cands: Vec<&MatIdx> = all
                    .iter()
                    .filter(|b| {
                        b.ro()
                            .iter()
                            .zip(co)
                            .all(|(x, y)| (x - y).rem_euclid(q.levels().unwrap().period) == 0)
                    })
                    .collect();
                (*cands.choose(rng).unwrap()).clone()
            };
            let b = pick(&mut rng, &a.co());
            let c = if rng.gen_bool(0.9) {
                pick(&mut rng, &b.co())
            } else {
                all.choose(&mut rng).unwrap().clone()
            };
            let (x, y, z) = (q.basis(a).unwrap(), q.basis(&b).unwrap(), q.basis(&c).unwrap());
            let l = q.mult(&q.mult(&x, &y).unwrap(), &z).unwrap();
            let r = q.mult(&x, &q.mult(&y, &z).unwrap()).unwrap();
            assert_eq!(l, r, "{a} {b} {c}");
            nonzero += usize::from(!l.is_zero());
        }
        assert!(nonzero > 20);
    }
}

#[test]
fn quotient_lift_independence() {
    let k = ring(3, 2, 1);
    let q = AlgebraCtx::quotient(2, &k).unwrap();
    let lv = q.levels().unwrap();
    let all = enumerate_set(&IndexSet::ThetaTildeQuot { n: 2, levels: lv }).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let a = all.choose(&mut rng).unwrap();
        let b = all
            .iter()
            .filter(|b| b.ro().iter().zip(a.co()).all(|(x, y)| (x - y).rem_euclid(lv.period) == 0))
            .collect::<Vec<_>>()
            .choose(&mut rng)
            .map(|b| (*b).clone())
            .unwrap();
        let x = q.basis(a).unwrap();
        let y = q.basis(&b).unwrap();
        let base = q.mult(&x, &y).unwrap();
        let d = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        assert_eq!(q.mult_lifted(&x, &y, &d).unwrap(), base, "{a} {b} {d:?}");
    }
}

#[test]
fn tau_is_multiplicative() {
    let k = ring(3, 2, 1);
    let kw = AlgebraCtx::kwindow(2, &k, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let m: i64 = rng.gen_range(0..3);
        let gen = if rng.gen_bool(0.5) {
            MatIdx::unit(2, 0, 1, m)
        } else {
            MatIdx::unit(2, 1, 0, m)
        };
        let a = MatIdx::from_rows(&[
            vec![rng.gen_range(-2..4), rng.gen_range(0..3)],
            vec![rng.gen_range(0..3), rng.gen_range(-2..4)],
        ])
        .unwrap();
        let d0: Vec<i64> = a.ro().iter().zip(gen.co()).map(|(r, c)| r - c).collect();
        let g = gen.add_diag(&d0);
        let d = MatIdx::diag(&[rng.gen_range(-1..=1), rng.gen_range(-1..=1)]);
        let (x, y) = (kw.basis(&g).unwrap(), kw.basis(&a).unwrap());
        let lhs = kw.tau_shift(&d, &kw.mult(&x, &y).unwrap()).unwrap();
        let rhs = kw
            .mult(&kw.tau_shift(&d, &x).unwrap(), &kw.tau_shift(&d, &y).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "{g} {a} {d}");
    }
}

#[test]
fn closure_generator_times_basis() {
    for h in [1, 2] {
        let k = ring(3, 2, h);
        let kw = AlgebraCtx::kwindow(2, &k, None).unwrap();
        let lv = kw.levels().unwrap();
        let offs = enumerate_set(&IndexSet::ThetaPmLevel { n: 2, bound: lv.bound }).unwrap();
        for a in offs {
            let a = a.add_diag(&[1, 2]);
            let y = kw.basis(&a).unwrap();
            for m in 0..lv.bound {
                for i in [0usize] {
                    for r in [kw.e_step(i, m, &y).unwrap(), kw.f_step(i, m, &y).unwrap()] {
                        for (b, c) in r.terms() {
                            assert!(
                                b.max_off_diag() < lv.bound,
                                "{a} m={m}: {b} with coefficient {}",
                                k.format_elem(c)
                            );
                        }
                    }
                }
            }
        }
    }
}
