use super::*;
use crate::indices::{enumerate_set, IndexSet};
use crate::qring::{make_ring, Generic, LaurentPoly, RingMode};

fn m(s: &str, n: usize) -> MatIdx {
    MatIdx::parse(s, n).unwrap()
}

fn rows(r: &[&[i64]]) -> MatIdx {
    MatIdx::from_rows(&r.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn k2() -> AlgebraCtx<Generic> {
    AlgebraCtx::kwindow(2, &Generic::new(), None).unwrap()
}

#[test]
fn e_times_f_in_k2() {
    let k = k2();
    let x = k.basis(&m("E12", 2)).unwrap();
    let y = k.basis(&m("E21", 2)).unwrap();
    let p = k.mult(&x, &y).unwrap();
    let want = k
        .elem(vec![
            (MatIdx::diag(&[1, 0]), LaurentPoly::one()),
            (rows(&[&[0, 1], &[1, -1]]), LaurentPoly::one()),
        ])
        .unwrap();
    assert_eq!(p, want);
}

#[test]
fn f_times_e_in_k2() {
    let k = k2();
    let x = k.basis(&m("E21", 2)).unwrap();
    let y = k.basis(&m("E12", 2)).unwrap();
    let p = k.mult(&x, &y).unwrap();
    let want = k
        .elem(vec![
            (MatIdx::diag(&[0, 1]), LaurentPoly::one()),
            (rows(&[&[-1, 1], &[1, 0]]), LaurentPoly::one()),
        ])
        .unwrap();
    assert_eq!(p, want);
}

#[test]
fn schur_2_1_is_matrix_units() {
    // S(n,1) has basis [E_ij] multiplying as matrix units
    for n in 2..=3 {
        let s = AlgebraCtx::schur(n, 1, &Generic::new()).unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let x = s.basis(&MatIdx::unit(n, i, j, 1)).unwrap();
                        let y = s.basis(&MatIdx::unit(n, k, l, 1)).unwrap();
                        let p = s.mult(&x, &y).unwrap();
                        let want = if j == k {
                            s.basis(&MatIdx::unit(n, i, l, 1)).unwrap()
                        } else {
                            s.zero()
                        };
                        assert_eq!(p, want, "E{i}{j} E{k}{l}");
                    }
                }
            }
        }
    }
}

#[test]
fn idempotent_laws() {
    let k = k2();
    let a = rows(&[&[2, 1], &[3, -1]]);
    let x = k.basis(&a).unwrap();
    let left = k.basis(&MatIdx::diag(&a.ro())).unwrap();
    let right = k.basis(&MatIdx::diag(&a.co())).unwrap();
    assert_eq!(k.mult(&left, &x).unwrap(), x);
    assert_eq!(k.mult(&x, &right).unwrap(), x);
    let other = k.basis(&MatIdx::diag(&[0, 0])).unwrap();
    assert!(k.mult(&other, &x).unwrap().is_zero());
    assert!(k.mult(&x, &other).unwrap().is_zero());
}

#[test]
fn generator_data_products() {
    let k = k2();
    let y = k.basis(&m("E21", 2)).unwrap();
    // [E12 + diag(0,0)] has co = (0,1) = ro(E21)
    let p = k.mult_gen_e(0, 1, &[0, 0], &y).unwrap();
    assert_eq!(p, k.mult(&k.basis(&m("E12", 2)).unwrap(), &y).unwrap());
    assert!(k.mult_gen_e(0, 1, &[1, 0], &y).unwrap().is_zero());
    let z = k.basis(&m("E12", 2)).unwrap();
    let q = k.mult_gen_f(0, 1, &[0, 0], &z).unwrap();
    assert_eq!(q, k.mult(&k.basis(&m("E21", 2)).unwrap(), &z).unwrap());
}

#[test]
fn transpose_reverses_products() {
    let k = AlgebraCtx::kwindow(3, &Generic::new(), None).unwrap();
    let samples = ["E12", "E21", "E23+E31", "2E12+E32+diag(1,0,-1)", "E13+diag(2,1,0)"];
    for a in samples {
        for b in samples {
            let (a, b) = (m(a, 3), m(b, 3));
            let x = k.basis(&a).unwrap();
            let y = k.basis(&b.add_diag(&{
                // make the pair composable
                let co = a.co();
                let ro = b.ro();
                co.iter().zip(&ro).map(|(c, r)| c - r).collect::<Vec<_>>()
            }))
            .unwrap();
            let lhs = k.transpose(&k.mult(&x, &y).unwrap()).unwrap();
            let rhs = k
                .mult(&k.transpose(&y).unwrap(), &k.transpose(&x).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn monomial_examples() {
    let k = k2();
    let (w, exp) = k.monomial_for(&MatIdx::diag(&[3, -1])).unwrap();
    assert!(w.is_empty());
    assert_eq!(exp, k.basis(&MatIdx::diag(&[3, -1])).unwrap());

    let a = m("E12+E21", 2);
    let (w, exp) = k.monomial_for(&a).unwrap();
    assert!(w.atoms.contains(&Atom::Idem(vec![0, 2])));
    let want = k
        .elem(vec![
            (a.clone(), LaurentPoly::one()),
            (MatIdx::diag(&[1, 1]), LaurentPoly::v_pow(-1)),
        ])
        .unwrap();
    assert_eq!(exp, want);

    let (w, exp) = k.monomial_for(&m("2E12", 2)).unwrap();
    assert_eq!(w.atoms[0], Atom::E { i: 0, m: 2 });
    assert_eq!(exp.coeff(&m("2E12", 2)), LaurentPoly::one());
}

#[test]
fn triangularity_on_small_schur() {
    let g = Generic::new();
    let k = make_ring(3, 2, 1, RingMode::Auto).unwrap();
    for r in 0..=3 {
        let s = AlgebraCtx::schur(2, r, &g).unwrap();
        let sk = AlgebraCtx::schur(2, r, &k).unwrap();
        for a in enumerate_set(&IndexSet::ThetaNr { n: 2, r }).unwrap() {
            s.monomial_for(&a).unwrap();
            sk.monomial_for(&a).unwrap();
        }
    }
    let s3 = AlgebraCtx::schur(3, 2, &g).unwrap();
    for a in enumerate_set(&IndexSet::ThetaNr { n: 3, r: 2 }).unwrap() {
        s3.monomial_for(&a).unwrap();
    }
}

#[test]
fn schur_associativity() {
    let g = Generic::new();
    let s = AlgebraCtx::schur(2, 2, &g).unwrap();
    let basis = enumerate_set(&IndexSet::ThetaNr { n: 2, r: 2 }).unwrap();
    for a in &basis {
        for b in &basis {
            if a.co() != b.ro() {
                continue;
            }
            for c in &basis {
                if b.co() != c.ro() {
                    continue;
                }
                let (x, y, z) = (
                    s.basis(a).unwrap(),
                    s.basis(b).unwrap(),
                    s.basis(c).unwrap(),
                );
                let l = s.mult(&s.mult(&x, &y).unwrap(), &z).unwrap();
                let r = s.mult(&x, &s.mult(&y, &z).unwrap()).unwrap();
                assert_eq!(l, r, "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn schur_image_of_k_product() {
    // discarding negative diagonals after the product agrees with the S(2,1) product
    let k = k2();
    let s = AlgebraCtx::schur(2, 1, &Generic::new()).unwrap();
    let p = k
        .mult(&k.basis(&m("E12", 2)).unwrap(), &k.basis(&m("E21", 2)).unwrap())
        .unwrap();
    let kept: Vec<_> = p
        .terms()
        .filter(|(a, _)| a.min_diag() >= 0)
        .map(|(a, c)| (a.clone(), c.clone()))
        .collect();
    let ps = s
        .mult(&s.basis(&m("E12", 2)).unwrap(), &s.basis(&m("E21", 2)).unwrap())
        .unwrap();
    assert_eq!(ps, s.elem(kept).unwrap());
    assert_eq!(ps, s.basis(&MatIdx::diag(&[1, 0])).unwrap());
}

#[test]
fn quotient_basics() {
    let ring = make_ring(3, 2, 1, RingMode::Auto).unwrap();
    let q = AlgebraCtx::quotient(2, &ring).unwrap();
    let all = enumerate_set(&IndexSet::ThetaTildeQuot {
        n: 2,
        levels: q.levels().unwrap(),
    })
    .unwrap();
    assert_eq!(all.len(), 81);
    let a = q
        .double_bracket(&m("E12", 2), &DiagResidue::new(&[0, 0], 3))
        .unwrap();
    let b = q
        .double_bracket(&m("E21", 2), &DiagResidue::new(&[2, 2], 3))
        .unwrap();
    // co(E12) = (0,1) vs ro = (0,1) + (2,2) = (2,0) mod 3: mismatch
    assert!(q.mult(&a, &b).unwrap().is_zero());
    assert!(q
        .double_bracket(&m("3E12", 2), &DiagResidue::new(&[0, 0], 3))
        .is_err());
    assert!(AlgebraCtx::quotient_at(2, 2, &ring).is_err());
    let x = q.basis(&m("E12+diag(0,2)", 2)).unwrap();
    assert!(matches!(
        q.e_step(0, 3, &x),
        Err(Error::BoundViolation(_))
    ));
}

#[test]
fn quotient_identity_element() {
    let ring = make_ring(3, 2, 1, RingMode::Auto).unwrap();
    let q = AlgebraCtx::quotient(2, &ring).unwrap();
    let lv = q.levels().unwrap();
    let one = q
        .elem(
            crate::indices::boxed_vectors(2, lv.period)
                .into_iter()
                .map(|d| (MatIdx::diag(&d), ring.one()))
                .collect(),
        )
        .unwrap();
    for a in enumerate_set(&IndexSet::ThetaTildeQuot { n: 2, levels: lv }).unwrap() {
        let x = q.basis(&a).unwrap();
        assert_eq!(q.mult(&one, &x).unwrap(), x);
        assert_eq!(q.mult(&x, &one).unwrap(), x);
    }
}

#[test]
fn tau_shift_examples() {
    let ring = make_ring(3, 2, 1, RingMode::Auto).unwrap();
    let k = AlgebraCtx::kwindow(2, &ring, None).unwrap();
    let x = k.basis(&MatIdx::diag(&[1, 2])).unwrap();
    assert_eq!(k.tau_shift(&MatIdx::zero(2), &x).unwrap(), x);
    assert_eq!(
        k.tau_shift(&MatIdx::diag(&[1, -1]), &x).unwrap(),
        k.basis(&MatIdx::diag(&[4, -1])).unwrap()
    );
    assert!(k.tau_shift(&m("E12", 2), &x).is_err());
    assert!(k2().tau_shift(&MatIdx::zero(2), &k2().zero()).is_err());
}

#[test]
fn window_widening() {
    let g = Generic::new();
    let a = m("2E12", 2);
    let b = m("2E21", 2);
    let k = AlgebraCtx::kwindow(2, &g, Some((-1, 1))).unwrap();
    let x = k.basis(&a).unwrap();
    let y = k.basis(&b).unwrap();
    let p = k.mult(&x, &y).unwrap();
    let free = k2();
    let want = free
        .mult(&free.basis(&a).unwrap(), &free.basis(&b).unwrap())
        .unwrap();
    assert_eq!(p.to_text(), want.to_text());
    assert!(matches!(p.ctx().kind(), CtxKind::KWindow { window: Some(_) }));
    assert!(k.basis(&MatIdx::diag(&[5, 0])).is_err());
    let auto = AlgebraCtx::kwindow_for(2, &g, &[&a, &b]).unwrap();
    assert_eq!(auto.kind(), &CtxKind::KWindow { window: Some((-4, 4)) });
}

#[test]
fn ctx_mismatch() {
    let a = k2();
    let b = AlgebraCtx::schur(2, 1, &Generic::new()).unwrap();
    let x = a.basis(&m("E12", 2)).unwrap();
    let y = b.basis(&m("E12", 2)).unwrap();
    assert!(matches!(a.mult(&x, &y), Err(Error::CtxMismatch(_))));
}

#[test]
fn json_and_text() {
    let k = k2();
    let p = k
        .mult(&k.basis(&m("E12", 2)).unwrap(), &k.basis(&m("E21", 2)).unwrap())
        .unwrap();
    assert_eq!(p.to_text(), "[[0,1],[1,-1]] + [diag(1,0)]");
    let j = p.to_json();
    assert_eq!(j["ctx"]["kind"], "kwindow");
    assert_eq!(j["terms"].as_array().unwrap().len(), 2);
    assert_eq!(j["terms"][0]["coeff"], "1");
    let e = k.monomial_for(&m("E12+E21", 2)).unwrap().1;
    assert_eq!(e.to_text(), "[[0,1],[1,0]] + v^-1*[diag(1,1)]");
}
