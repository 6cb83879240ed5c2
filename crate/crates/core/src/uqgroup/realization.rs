use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blmcore::{AlgElem, AlgebraCtx};
use crate::error::{Error, Result};
use crate::indices::{boxed_vectors, enumerate_set, IndexSet, MatIdx};
use crate::qring::{Field, Ring, RingElem, RingSpec};
use crate::report::Check;

use super::bases::{family, labelled_rank, w_index, BasisKind};
use super::det::sign_det;
use super::{embed_generator, identity, power, GeneratorSym};

/// Determinant over a field by elimination.
pub(crate) fn det_field<F: Field>(field: &F, mut a: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = a.len();
    let mut det = field.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !field.is_zero(&a[r][k])) else {
            return field.zero();
        };
        if p != k {
            a.swap(p, k);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[k][k]);
        let inv = field.inv(&a[k][k]).expect("nonzero pivot");
        for r in k + 1..n {
            if field.is_zero(&a[r][k]) {
                continue;
            }
            let f = field.mul(&a[r][k], &inv);
            for c in k..n {
                let d = field.mul(&f, &a[k][c]);
                a[r][c] = field.sub(&a[r][c], &d);
            }
        }
    }
    det
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Checks that the level-`h` subalgebra of `U` is realized faithfully in `W(n,h)`.
///
/// Odd `l'`: `K_i^l - 1` maps to zero and both `N_h` and the reduced family
/// have rank `dim W`. Even `l'`: `B_h` has rank `dim W` and, for every
/// `lambda`, the change-of-basis block `(e^{d.lambda} (-1)^{b.(d-lambda)})`
/// is invertible with determinant `(-e)^{sum_d d.lambda} det(X_n)`.
pub fn kernel_injectivity_report(n: usize, ring: &RingSpec) -> Result<Vec<Check>> {
    if ring.p() == 0 && ring.h() > 1 {
        return Err(Error::Hypothesis("level h > 1 needs positive characteristic".into()));
    }
    let ctx = AlgebraCtx::quotient(n, ring)?;
    let index = w_index(&ctx)?;
    let dim = index.len();
    let tag = format!("n={n} l'={} p={} h={}", ring.lprime(), ring.p(), ring.h());
    let mut out = Vec::new();
    let rank_check = |kind: BasisKind, out: &mut Vec<Check>| -> Result<()> {
        let fam = family(kind, &ctx)?;
        let rank = labelled_rank(&ctx, &index, &fam)?;
        out.push(Check::new(
            format!("{tag}: rank of {kind} image = dim W"),
            serde_json::json!({"rank": dim, "size": dim}),
            serde_json::json!({"rank": rank, "size": fam.len()}),
            rank == dim && fam.len() == dim,
        ));
        Ok(())
    };
    if ring.lprime() % 2 == 1 {
        let one = identity(&ctx)?;
        for j in 0..n {
            let k = embed_generator(&GeneratorSym::K { j, e: 1 }, &ctx)?;
            let d = power(&ctx, &k, ring.l() as u32)?.minus(&one)?;
            out.push(Check::new(
                format!("{tag}: K{}^{} - 1 maps to 0", j + 1, ring.l()),
                0,
                d.len(),
                d.is_zero(),
            ));
        }
        rank_check(BasisKind::Nh, &mut out)?;
        rank_check(BasisKind::Reduced, &mut out)?;
    } else {
        rank_check(BasisKind::Bh, &mut out)?;
        let deltas = boxed_vectors(n, 2);
        let det_x: BigInt = sign_det(n as u32)?.det.parse().expect("integer");
        let det_x = ring.from_bigint(&det_x);
        let minus_eps = ring.neg(&ring.v_pow(1));
        let mut singular = 0;
        let mut off_formula = 0;
        let lambdas = boxed_vectors(n, ring.bound());
        for lambda in &lambdas {
            let block: Vec<Vec<RingElem>> = deltas
                .iter()
                .map(|d| {
                    deltas
                        .iter()
                        .map(|b| {
                            let diff: Vec<i64> = d.iter().zip(lambda).map(|(x, y)| x - y).collect();
                            let s = ring.v_pow(dot(d, lambda));
                            if dot(b, &diff).rem_euclid(2) == 0 {
                                s
                            } else {
                                ring.neg(&s)
                            }
                        })
                        .collect()
                })
                .collect();
            let det = det_field(ring, block);
            let s: i64 = deltas.iter().map(|d| dot(d, lambda)).sum();
            let mut want = det_x.clone();
            for _ in 0..s {
                want = ring.mul(&want, &minus_eps);
            }
            singular += usize::from(ring.is_zero(&det));
            off_formula += usize::from(det != want);
        }
        out.push(Check::new(
            format!("{tag}: change-of-basis blocks invertible ({} blocks)", lambdas.len()),
            0,
            singular,
            singular == 0,
        ));
        out.push(Check::new(
            format!("{tag}: block determinant = (-e)^S det(X_n)"),
            0,
            off_formula,
            off_formula == 0,
        ));
    }
    Ok(out)
}

/// The refinement `W(n,h) -> W(n,h')`, `h' >= h`: each residue class modulo
/// `l' p^{h-1}` splits into the classes modulo `l' p^{h'-1}` above it.
pub fn refine(x: &AlgElem<RingSpec>, target: &AlgebraCtx<RingSpec>) -> Result<AlgElem<RingSpec>> {
    let (Some(from), Some(to)) = (x.ctx().levels(), target.levels()) else {
        return Err(Error::InvalidParams("refinement needs level contexts".into()));
    };
    if !x.ctx().is_quotient() || !target.is_quotient() || to.period % from.period != 0 {
        return Err(Error::CtxMismatch("refinement needs quotient contexts with nested periods".into()));
    }
    let n = target.n();
    let lifts = boxed_vectors(n, to.period / from.period);
    let mut terms = Vec::new();
    for (a, c) in x.terms() {
        if a.max_off_diag() >= to.bound {
            return Err(Error::BoundViolation(format!("{a} exceeds the target bound")));
        }
        let d = a.diagonal();
        for k in &lifts {
            let nu: Vec<i64> = d.iter().zip(k).map(|(x, k)| x + k * from.period).collect();
            terms.push((a.with_diag(&nu), c.clone()));
        }
    }
    target.elem(terms)
}

/// Refinement from level `h` to `h + 1`: generator images agree and the map
/// respects products on random pairs.
pub fn frobenius_tower_checks(n: usize, ring: &RingSpec, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let up = ring.with_level(ring.h() + 1)?;
    let lo = AlgebraCtx::quotient(n, ring)?;
    let hi = AlgebraCtx::quotient(n, &up)?;
    let tag = format!("n={n} l'={} p={} h={}->{}", ring.lprime(), ring.p(), ring.h(), ring.h() + 1);
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        for m in 0..ring.bound() {
            gens.push(GeneratorSym::E { i, m });
            gens.push(GeneratorSym::F { i, m });
        }
    }
    for j in 0..n {
        gens.push(GeneratorSym::K { j, e: 1 });
        gens.push(GeneratorSym::K { j, e: -1 });
        for t in 0..ring.bound() {
            gens.push(GeneratorSym::KBinom { j, t });
        }
    }
    let mut bad = Vec::new();
    for g in &gens {
        if refine(&embed_generator(g, &lo)?, &hi)? != embed_generator(g, &hi)? {
            bad.push(g.to_string());
        }
    }
    let mut out = vec![Check::new(
        format!("{tag}: refined generator images equal level-{} images", ring.h() + 1),
        Vec::<String>::new(),
        bad.clone(),
        bad.is_empty(),
    )];
    let lv = lo.levels().expect("levels");
    let basis = enumerate_set(&IndexSet::ThetaTildeQuot { n, levels: lv })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..samples {
        let a: &MatIdx = basis.choose(&mut rng).expect("nonempty");
        let co = a.co();
        let composable: Vec<&MatIdx> = basis
            .iter()
            .filter(|b| b.ro().iter().zip(&co).all(|(x, y)| (x - y).rem_euclid(lv.period) == 0))
            .collect();
        let b = *composable.choose(&mut rng).expect("some composable");
        let (x, y) = (lo.basis(a)?, lo.basis(b)?);
        let lhs = refine(&lo.mult(&x, &y)?, &hi)?;
        let rhs = hi.mult(&refine(&x, &hi)?, &refine(&y, &hi)?)?;
        failures += usize::from(lhs != rhs);
    }
    out.push(Check::new(
        format!("{tag}: refinement is multiplicative ({samples} pairs)"),
        0,
        failures,
        failures == 0,
    ));
    Ok(out)
}
