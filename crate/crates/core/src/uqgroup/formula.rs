use crate::blmcore::{AlgElem, AlgebraCtx};
use crate::error::{Error, Result};
use crate::indices::{boxed_vectors, compositions, MatIdx};
use crate::qring::{Ring, RingElem, RingSpec};
use crate::report::Check;

use super::{embed_adl, embed_generator, ADeltaLambda, GeneratorSym};

/// One summand of the closed formula for `(mE_{i,i+1})(0) A(delta, lambda)`.
#[derive(Clone, Debug)]
pub struct FormulaTerm {
    pub matrix: MatIdx,
    pub delta: Vec<i64>,
    pub lambda: Vec<i64>,
    pub coeff: RingElem,
    /// Whether the off-diagonal entries and `lambda` respect the level bound.
    pub in_range: bool,
}

/// All summands of the closed formula, including those outside the level bounds.
pub fn formula_terms(m: i64, i: usize, x: &ADeltaLambda, ring: &RingSpec) -> Result<Vec<FormulaTerm>> {
    let n = x.a.n();
    if i + 1 >= n {
        return Err(Error::InvalidParams(format!("i = {i} out of range for n = {n}")));
    }
    let bound = ring.bound();
    if !(0..bound).contains(&m) {
        return Err(Error::BoundViolation(format!("m = {m} must lie in [0, {bound})")));
    }
    if x.a.max_off_diag() >= bound || x.lambda.iter().any(|l| *l >= bound) {
        return Err(Error::BoundViolation("A(delta, lambda) outside the level bounds".into()));
    }
    let a = |r: usize, c: usize| x.a.get(r, c);
    let (lam, del) = (&x.lambda, &x.delta);
    let i1 = i + 1;
    let mut out = Vec::new();
    for t in compositions(n, m) {
        if (0..n).any(|u| u != i1 && t[u] > a(i1, u)) {
            continue;
        }
        let mut target = x.a.clone();
        for u in 0..n {
            if u != i {
                target = target.add_entry(i, u, t[u]);
            }
            if u != i1 {
                target = target.add_entry(i1, u, -t[u]);
            }
        }
        let mut g0 = 0;
        for u in 0..n {
            for jj in u + 1..n {
                if jj != i {
                    g0 += a(i, jj) * t[u];
                }
                if jj != i1 {
                    g0 -= a(i1, jj) * t[u];
                }
            }
        }
        for u2 in 0..n {
            if u2 == i || u2 == i1 {
                continue;
            }
            for u in 0..u2 {
                g0 += t[u] * t[u2];
            }
        }
        g0 += -t[i] * del[i] + t[i1] * del[i1];
        let mut prod_a = ring.one();
        for u in 0..n {
            if u != i {
                prod_a = ring.mul(&prod_a, &ring.qbinom(a(i, u) + t[u], t[u]));
            }
        }
        let below_i: i64 = t[..i].iter().sum();
        let below_i1: i64 = t[..i1].iter().sum();
        for j in 0..=lam[i] {
            for k in 0..=lam[i1] {
                let g = g0 + 2 * j * t[i] - k * t[i1];
                for c in 0..=t[i].min(j) {
                    let mut f = ring.mul(&ring.v_pow(g), &prod_a);
                    for b in [
                        ring.qbinom(-t[i], lam[i] - j),
                        ring.qbinom(t[i] + j - c, t[i]),
                        ring.qbinom(t[i], c),
                        ring.qbinom(t[i1], lam[i1] - k),
                    ] {
                        f = ring.mul(&f, &b);
                    }
                    let mut delta = del.clone();
                    delta[i] += below_i + lam[i] - j - c;
                    delta[i1] += lam[i1] - k - below_i1;
                    let mut lambda = lam.clone();
                    lambda[i] = t[i] + j - c;
                    lambda[i1] = k;
                    let in_range = target.max_off_diag() < bound && lambda.iter().all(|l| *l < bound);
                    out.push(FormulaTerm {
                        matrix: target.clone(),
                        delta,
                        lambda,
                        coeff: f,
                        in_range,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The closed formula evaluated in `W(n,h)`.
///
/// Fails with `BoundViolation` if a summand outside the level bounds carries a
/// nonzero coefficient.
pub fn commute_e_formula(m: i64, i: usize, x: &ADeltaLambda, ctx: &AlgebraCtx<RingSpec>) -> Result<AlgElem<RingSpec>> {
    let ring = ctx.ring();
    let mut acc = ctx.zero();
    for term in formula_terms(m, i, x, ring)? {
        if ring.is_zero(&term.coeff) {
            continue;
        }
        if !term.in_range {
            return Err(Error::BoundViolation(format!(
                "summand {} with lambda {:?} has coefficient {}",
                term.matrix,
                term.lambda,
                ring.format_elem(&term.coeff)
            )));
        }
        let y = embed_adl(&ADeltaLambda::new(term.matrix, term.delta, term.lambda)?, ctx)?;
        acc = acc.plus(&y.scale(&term.coeff))?;
    }
    Ok(acc)
}

/// Counts summands outside the level bounds and how many of them have a
/// nonzero coefficient.
pub fn vanishing_scan(m: i64, i: usize, x: &ADeltaLambda, ring: &RingSpec) -> Result<(usize, usize)> {
    let terms = formula_terms(m, i, x, ring)?;
    let out: Vec<_> = terms.iter().filter(|t| !t.in_range).collect();
    let bad = out.iter().filter(|t| !ring.is_zero(&t.coeff)).count();
    Ok((out.len(), bad))
}

/// Closed formula against engine products over `n = 2`, every `m` below the
/// bound, every `lambda` in the level box, `delta in {0,1}^2` and
/// `A in {0, E12, E21}`.
pub fn oracle_checks(ring: &RingSpec) -> Result<Vec<Check>> {
    let n = 2;
    let ctx = AlgebraCtx::quotient(n, ring)?;
    let bound = ring.bound();
    let tag = format!("l'={} p={} h={}", ring.lprime(), ring.p(), ring.h());
    let mut checks = Vec::new();
    let mut outside = 0;
    let mut outside_nonzero = 0;
    for a in [MatIdx::zero(n), MatIdx::unit(n, 0, 1, 1), MatIdx::unit(n, 1, 0, 1)] {
        let mut cases = 0;
        let mut mismatches = 0;
        let mut first = None;
        for m in 0..bound {
            let e = embed_generator(&GeneratorSym::E { i: 0, m }, &ctx)?;
            for delta in boxed_vectors(n, 2) {
                for lambda in boxed_vectors(n, bound) {
                    let x = ADeltaLambda::new(a.clone(), delta.clone(), lambda.clone())?;
                    let (o, z) = vanishing_scan(m, 0, &x, ring)?;
                    outside += o;
                    outside_nonzero += z;
                    let engine = ctx.mult(&e, &embed_adl(&x, &ctx)?)?;
                    cases += 1;
                    let same = match commute_e_formula(m, 0, &x, &ctx) {
                        Ok(f) => f == engine,
                        Err(Error::BoundViolation(_)) => false,
                        Err(err) => return Err(err),
                    };
                    if !same {
                        mismatches += 1;
                        first.get_or_insert_with(|| format!("m={m} delta={delta:?} lambda={lambda:?}"));
                    }
                }
            }
        }
        checks.push(Check::new(
            format!("{tag} A={a}: formula = engine ({cases} cases)"),
            0,
            serde_json::json!({"mismatches": mismatches, "first": first}),
            mismatches == 0,
        ));
    }
    checks.push(Check::new(
        format!("{tag}: out-of-range summands vanish"),
        0,
        serde_json::json!({"out_of_range": outside, "nonzero": outside_nonzero}),
        outside_nonzero == 0,
    ));
    Ok(checks)
}
