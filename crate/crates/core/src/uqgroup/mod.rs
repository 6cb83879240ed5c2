//! Quantum `gl_n` inside the BLM algebras: the elements `A(delta, lambda)`,
//! generator images, bases of the level-`h` subalgebras and the realization
//! checks.

mod bases;
mod det;
mod formula;
mod realization;
mod relations;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blmcore::{AlgElem, AlgebraCtx, CtxKind};
use crate::error::{Error, Result};
use crate::indices::{boxed_vectors, compositions, MatIdx};
use crate::qring::Ring;

pub use bases::{basis_report, family, BasisKind, BasisReport};
pub use det::{sign_det, sign_matrix, SignDet};
pub use formula::{commute_e_formula, oracle_checks, vanishing_scan};
pub use realization::{frobenius_tower_checks, kernel_injectivity_report, refine};
pub use relations::verify_relations;

/// `A(delta, lambda)` with `A` off-diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ADeltaLambda {
    pub a: MatIdx,
    pub delta: Vec<i64>,
    pub lambda: Vec<i64>,
}

impl ADeltaLambda {
    pub fn new(a: MatIdx, delta: Vec<i64>, lambda: Vec<i64>) -> Result<Self> {
        let n = a.n();
        if delta.len() != n || lambda.len() != n {
            return Err(Error::SizeMismatch(delta.len().max(lambda.len()), n));
        }
        if a.diagonal().iter().any(|x| *x != 0) {
            return Err(Error::InvalidParams(format!("{a} must have zero diagonal")));
        }
        if lambda.iter().any(|x| *x < 0) {
            return Err(Error::InvalidParams("lambda must be nonnegative".into()));
        }
        Ok(Self { a, delta, lambda })
    }

    /// The torus element `0(delta, lambda) = prod_i K_i^{delta_i} [K_i; 0 lambda_i]`.
    pub fn torus(delta: Vec<i64>, lambda: Vec<i64>) -> Result<Self> {
        Self::new(MatIdx::zero(delta.len()), delta, lambda)
    }
}

/// A generator of the divided-power integral form. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorSym {
    E { i: usize, m: i64 },
    F { i: usize, m: i64 },
    /// `K_j^e`.
    K { j: usize, e: i64 },
    /// `[K_j; 0 over t]`.
    KBinom { j: usize, t: i64 },
}

impl fmt::Display for GeneratorSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::E { i, m } => write!(f, "E{}^({m})", i + 1),
            Self::F { i, m } => write!(f, "F{}^({m})", i + 1),
            Self::K { j, e } => write!(f, "K{}^{e}", j + 1),
            Self::KBinom { j, t } => write!(f, "[K{};0 {t}]", j + 1),
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `prod_i [mu_i over lambda_i]`.
pub(crate) fn binom_vec<R: Ring>(ring: &R, mu: &[i64], lambda: &[i64]) -> R::Elem {
    let mut c = ring.one();
    for (m, l) in mu.iter().zip(lambda) {
        if *l == 0 {
            continue;
        }
        c = ring.mul(&c, &ring.qbinom(*m, *l));
        if ring.is_zero(&c) {
            break;
        }
    }
    c
}

fn level_bound<R: Ring>(ctx: &AlgebraCtx<R>) -> Option<i64> {
    match ctx.kind() {
        CtxKind::Quotient { .. } => ctx.levels().map(|l| l.bound),
        _ => None,
    }
}

/// The diagonal vectors a finite sum over `mu` ranges over, together with the
/// off-diagonal total that must be subtracted from `r` in `S(n,r)`.
fn diagonal_range<R: Ring>(ctx: &AlgebraCtx<R>, a: &MatIdx) -> Result<Vec<Vec<i64>>> {
    let n = ctx.n();
    match ctx.kind() {
        CtxKind::Quotient { .. } => Ok(boxed_vectors(n, ctx.levels().expect("levels").period)),
        CtxKind::Schur { r } => Ok(compositions(n, r - a.off_diag_total())),
        CtxKind::KWindow { window: Some((lo, hi)) } => Ok(boxed_vectors(n, hi - lo + 1)
            .into_iter()
            .map(|v| v.into_iter().map(|x| x + lo).collect())
            .collect()),
        CtxKind::KWindow { window: None } => Err(Error::InfiniteSet(
            "sums over all diagonals need a window".into(),
        )),
    }
}

/// The image of `A(delta, lambda)`.
///
/// In `K(n,h)_q` this is the residue sum `sum_mu e^{delta.mu} [mu over lambda] [[A + diag(mu)]]`;
/// in `S(n,r)` the sum runs over `Lambda(n, r - sigma(A))`; in a `K_n` window it is truncated.
pub fn embed_adl<R: Ring>(x: &ADeltaLambda, ctx: &AlgebraCtx<R>) -> Result<AlgElem<R>> {
    let ring = ctx.ring();
    if x.a.n() != ctx.n() {
        return Err(Error::SizeMismatch(x.a.n(), ctx.n()));
    }
    if let Some(b) = level_bound(ctx) {
        if x.a.max_off_diag() >= b || x.lambda.iter().any(|l| *l >= b) {
            return Err(Error::BoundViolation(format!(
                "A(delta, lambda) with A = {}, lambda = {:?} exceeds the level bound {b}",
                x.a, x.lambda
            )));
        }
    }
    let mut terms = Vec::new();
    for mu in diagonal_range(ctx, &x.a)? {
        let c = ring.mul(&ring.v_pow(dot(&x.delta, &mu)), &binom_vec(ring, &mu, &x.lambda));
        if !ring.is_zero(&c) {
            terms.push((x.a.add_diag(&mu), c));
        }
    }
    ctx.elem(terms)
}

/// The image of a generator.
pub fn embed_generator<R: Ring>(g: &GeneratorSym, ctx: &AlgebraCtx<R>) -> Result<AlgElem<R>> {
    let n = ctx.n();
    let ring = ctx.ring();
    let bound = level_bound(ctx);
    let check_level = |x: i64| -> Result<()> {
        if x < 0 {
            return Err(Error::InvalidParams(format!("{g}: negative exponent")));
        }
        match bound {
            Some(b) if x >= b => Err(Error::BoundViolation(format!("{g}: exponent >= {b}"))),
            _ => Ok(()),
        }
    };
    let (a, coeff): (MatIdx, Box<dyn Fn(&[i64]) -> R::Elem + '_>) = match *g {
        GeneratorSym::E { i, m } | GeneratorSym::F { i, m } => {
            if i + 1 >= n {
                return Err(Error::InvalidParams(format!("{g}: index out of range")));
            }
            check_level(m)?;
            let a = if matches!(g, GeneratorSym::E { .. }) {
                MatIdx::unit(n, i, i + 1, m)
            } else {
                MatIdx::unit(n, i + 1, i, m)
            };
            (a, Box::new(|_: &[i64]| ring.one()))
        }
        GeneratorSym::K { j, e } => {
            if j >= n {
                return Err(Error::InvalidParams(format!("{g}: index out of range")));
            }
            (MatIdx::zero(n), Box::new(move |mu: &[i64]| ring.v_pow(e * mu[j])))
        }
        GeneratorSym::KBinom { j, t } => {
            if j >= n {
                return Err(Error::InvalidParams(format!("{g}: index out of range")));
            }
            check_level(t)?;
            (MatIdx::zero(n), Box::new(move |mu: &[i64]| ring.qbinom(mu[j], t)))
        }
    };
    let mut terms = Vec::new();
    for mu in diagonal_range(ctx, &a)? {
        let c = coeff(&mu);
        if !ring.is_zero(&c) {
            terms.push((a.add_diag(&mu), c));
        }
    }
    ctx.elem(terms)
}

/// The identity element: the sum of all diagonal idempotents.
pub fn identity<R: Ring>(ctx: &AlgebraCtx<R>) -> Result<AlgElem<R>> {
    embed_generator(&GeneratorSym::K { j: 0, e: 0 }, ctx)
}

/// Product of generator images, left to right.
pub fn embed_word<R: Ring>(word: &[GeneratorSym], ctx: &AlgebraCtx<R>) -> Result<AlgElem<R>> {
    let mut acc = identity(ctx)?;
    for g in word.iter().rev() {
        acc = ctx.mult(&embed_generator(g, ctx)?, &acc)?;
    }
    Ok(acc)
}

/// `x^k` for `k >= 0`.
pub fn power<R: Ring>(ctx: &AlgebraCtx<R>, x: &AlgElem<R>, k: u32) -> Result<AlgElem<R>> {
    let mut acc = identity(ctx)?;
    for _ in 0..k {
        acc = ctx.mult(x, &acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::{make_ring, Generic, LaurentPoly, RingMode};

    #[test]
    fn schur_generator_images() {
        let g = Generic::new();
        let s22 = AlgebraCtx::schur(2, 2, &g).unwrap();
        let k1 = embed_generator(&GeneratorSym::K { j: 0, e: 1 }, &s22).unwrap();
        let want = s22
            .elem(vec![
                (MatIdx::diag(&[0, 2]), LaurentPoly::one()),
                (MatIdx::diag(&[1, 1]), LaurentPoly::v_pow(1)),
                (MatIdx::diag(&[2, 0]), LaurentPoly::v_pow(2)),
            ])
            .unwrap();
        assert_eq!(k1, want);
        let s21 = AlgebraCtx::schur(2, 1, &g).unwrap();
        let e1 = embed_generator(&GeneratorSym::E { i: 0, m: 1 }, &s21).unwrap();
        assert_eq!(e1, s21.basis(&MatIdx::unit(2, 0, 1, 1)).unwrap());
        let e2 = embed_generator(&GeneratorSym::E { i: 0, m: 2 }, &s22).unwrap();
        assert_eq!(e2, s22.basis(&MatIdx::unit(2, 0, 1, 2)).unwrap());
        assert!(embed_generator(&GeneratorSym::E { i: 1, m: 1 }, &s22).is_err());
    }

    #[test]
    fn divided_power_matches_power_over_factorial() {
        // [2] E^(2) = E^2 in S(2,3)
        let g = Generic::new();
        let s = AlgebraCtx::schur(2, 3, &g).unwrap();
        let e = embed_generator(&GeneratorSym::E { i: 0, m: 1 }, &s).unwrap();
        let e2 = embed_generator(&GeneratorSym::E { i: 0, m: 2 }, &s).unwrap();
        let sq = s.mult(&e, &e).unwrap();
        assert_eq!(sq, e2.scale(&crate::qring::quantum_int(2)));
    }

    #[test]
    fn quotient_identity_and_k_periodicity() {
        let ring = make_ring(3, 2, 1, RingMode::Auto).unwrap();
        let q = AlgebraCtx::quotient(2, &ring).unwrap();
        let one = identity(&q).unwrap();
        let trivial = embed_adl(&ADeltaLambda::torus(vec![0, 0], vec![0, 0]).unwrap(), &q).unwrap();
        assert_eq!(one, trivial);
        assert_eq!(one.len(), 9);
        for j in 0..2 {
            let mut delta = vec![0, 0];
            delta[j] = 1;
            let kj = embed_adl(&ADeltaLambda::torus(delta, vec![0, 0]).unwrap(), &q).unwrap();
            assert_eq!(kj, embed_generator(&GeneratorSym::K { j, e: 1 }, &q).unwrap());
            assert_eq!(power(&q, &kj, 3).unwrap(), one);
        }
    }

    #[test]
    fn residue_representatives_do_not_matter() {
        for (lp, p, h) in [(3, 2, 1), (4, 3, 1), (3, 2, 2)] {
            let ring = make_ring(lp, p, h, RingMode::Auto).unwrap();
            let per = ring.period();
            for mu in -8..8i64 {
                for lam in 0..ring.bound() {
                    assert_eq!(ring.qbinom(mu, lam), ring.qbinom(mu + per, lam));
                    assert_eq!(ring.v_pow(mu), ring.v_pow(mu + per));
                }
            }
        }
    }

    #[test]
    fn bounds_enforced() {
        let ring = make_ring(3, 2, 1, RingMode::Auto).unwrap();
        let q = AlgebraCtx::quotient(2, &ring).unwrap();
        let bad = ADeltaLambda::torus(vec![0, 0], vec![3, 0]).unwrap();
        assert!(matches!(embed_adl(&bad, &q), Err(Error::BoundViolation(_))));
        assert!(embed_generator(&GeneratorSym::F { i: 0, m: 3 }, &q).is_err());
        let k = AlgebraCtx::kwindow(2, &ring, None).unwrap();
        assert!(matches!(
            embed_generator(&GeneratorSym::E { i: 0, m: 1 }, &k),
            Err(Error::InfiniteSet(_))
        ));
    }
}
