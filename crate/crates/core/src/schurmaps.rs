//! Maps from the level-`h` algebras to `q`-Schur algebras `S(n,r)_k`, and the
//! little and infinitesimal `q`-Schur algebras they cut out.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::blmcore::{coordinates, AlgElem, AlgebraCtx, CtxKind};
use crate::error::{Error, Result};
use crate::exactla::{normalize, Echelon, SparseVec};
use crate::indices::{boxed_vectors, compositions, enumerate_set, DiagResidue, IndexSet, MatIdx};
use crate::qring::{Ring, RingElem, RingSpec};
use crate::report::Check;
use crate::uqgroup::{embed_adl, embed_generator, embed_word, identity, ADeltaLambda, GeneratorSym};

/// `[[A + diag(lambda), r]]_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBracket {
    pub a: MatIdx,
    pub residue: DiagResidue,
    pub r: i64,
}

impl RBracket {
    pub fn new(a: MatIdx, residue: DiagResidue, r: i64) -> Result<Self> {
        if residue.residues.len() != a.n() {
            return Err(Error::SizeMismatch(residue.residues.len(), a.n()));
        }
        Ok(Self { a: a.off_diag(), residue, r })
    }

    /// Whether the defining sum is nonempty: `sigma(A) <= r` and the residue
    /// lifts to `Lambda(n, r - sigma(A))`.
    pub fn is_nonzero(&self) -> bool {
        !self.lifts().is_empty()
    }

    fn lifts(&self) -> Vec<Vec<i64>> {
        let s = self.a.off_diag_total();
        if s > self.r {
            return Vec::new();
        }
        let m = self.residue.modulus;
        compositions(self.a.n(), self.r - s)
            .into_iter()
            .filter(|mu| mu.iter().zip(&self.residue.residues).all(|(x, y)| x.rem_euclid(m) == *y))
            .collect()
    }

    /// The element of `S(n,r)_k`.
    pub fn value<R: Ring>(&self, schur: &AlgebraCtx<R>) -> Result<AlgElem<R>> {
        if *schur.kind() != (CtxKind::Schur { r: self.r }) {
            return Err(Error::CtxMismatch(format!("expected S(n,{})", self.r)));
        }
        let one = schur.ring().one();
        schur.elem(self.lifts().into_iter().map(|mu| (self.a.add_diag(&mu), one.clone())).collect())
    }
}

/// `zeta_r` on `W(n,h)`: lift every residue class and keep the terms in `Theta(n,r)`.
pub fn zeta_image(x: &AlgElem<RingSpec>, schur: &AlgebraCtx<RingSpec>) -> Result<AlgElem<RingSpec>> {
    let CtxKind::Schur { r } = *schur.kind() else {
        return Err(Error::CtxMismatch("target must be a Schur context".into()));
    };
    let Some(lv) = x.ctx().levels().filter(|_| x.ctx().is_quotient()) else {
        return Err(Error::CtxMismatch("source must be a quotient context".into()));
    };
    let n = schur.n();
    let mut terms = Vec::new();
    for (a, c) in x.terms() {
        let free = r - a.off_diag_total();
        if free < 0 {
            continue;
        }
        let base = a.diagonal();
        // lifts base + P k with every entry in [0, free]
        let steps = free / lv.period + 1;
        for k in boxed_vectors(n, steps) {
            let nu: Vec<i64> = base.iter().zip(&k).map(|(b, k)| b + k * lv.period).collect();
            if nu.iter().sum::<i64>() == free {
                terms.push((a.with_diag(&nu), c.clone()));
            }
        }
    }
    schur.elem(terms)
}

fn schur_index(n: usize, r: i64) -> Result<BTreeMap<MatIdx, usize>> {
    Ok(enumerate_set(&IndexSet::ThetaNr { n, r })?
        .into_iter()
        .enumerate()
        .map(|(k, a)| (a, k))
        .collect())
}

fn level_generators(n: usize, bound: i64, binom_top: i64) -> Vec<GeneratorSym> {
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        for m in 1..bound {
            gens.push(GeneratorSym::E { i, m });
            gens.push(GeneratorSym::F { i, m });
        }
    }
    for j in 0..n {
        gens.push(GeneratorSym::K { j, e: 1 });
        gens.push(GeneratorSym::K { j, e: -1 });
        for t in 1..binom_top {
            gens.push(GeneratorSym::KBinom { j, t });
        }
    }
    gens
}

/// Span of all words in `gens` inside `S(n,r)`, grown one letter at a time
/// until a length adds nothing. Returns the echelon basis vectors and the
/// length at which the span closed.
fn word_span(
    schur: &AlgebraCtx<RingSpec>,
    index: &BTreeMap<MatIdx, usize>,
    gens: &[GeneratorSym],
    cap: usize,
) -> Result<(Vec<SparseVec<RingElem>>, usize)> {
    let ring = schur.ring();
    let images: Vec<AlgElem<RingSpec>> = gens.iter().map(|g| embed_generator(g, schur)).collect::<Result<_>>()?;
    let mut ech = Echelon::new(ring, index.len(), false);
    let mut kept = Vec::new();
    let one = identity(schur)?;
    let v = normalize(ring, coordinates(&one, index)?);
    ech.insert(&v);
    kept.push(v);
    let mut frontier = vec![one];
    let mut length = 0;
    while !frontier.is_empty() {
        if length >= cap {
            return Err(Error::InvalidParams(format!("word span did not close within length {cap}")));
        }
        length += 1;
        let mut next = Vec::new();
        for x in &frontier {
            for g in &images {
                let y = schur.mult(g, x)?;
                let v = normalize(ring, coordinates(&y, index)?);
                if ech.insert(&v) {
                    kept.push(v);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok((kept, length))
}

fn span_of(ring: &RingSpec, ncols: usize, vs: &[SparseVec<RingElem>]) -> Echelon<RingSpec> {
    let mut e = Echelon::new(ring, ncols, false);
    for v in vs {
        e.insert(v);
    }
    e
}

/// `zeta_r(U_h) = u(n,h,r)`: the span of generator words in `S(n,r)_k`
/// against the span of the nonzero `[[A + diag(lambda), r]]_h`, by rank and
/// mutual membership. Also checks the vanishing rule of the brackets, that
/// `zeta_r` sends the unit to the unit and the level-`h` generators to their
/// Schur images, and multiplicativity on random pairs.
pub fn little_schur_report(n: usize, r: i64, ring: &RingSpec, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let odd = ring.lprime() % 2 == 1;
    if !odd && ring.p() == 0 && ring.h() > 1 {
        return Err(Error::Hypothesis("level h > 1 needs positive characteristic".into()));
    }
    let w = AlgebraCtx::quotient(n, ring)?;
    let s = AlgebraCtx::schur(n, r, ring)?;
    let index = schur_index(n, r)?;
    let lv = w.levels().expect("levels");
    let tag = format!("n={n} h={} r={r} l'={} p={}", ring.h(), ring.lprime(), ring.p());
    let mut out = Vec::new();

    let mut brackets = Vec::new();
    let mut rule_bad = 0;
    let mut nonzero = 0;
    for a in enumerate_set(&IndexSet::ThetaPmLevel { n, bound: lv.bound })? {
        for res in boxed_vectors(n, lv.period) {
            let rb = RBracket::new(a.clone(), DiagResidue::new(&res, lv.period), r)?;
            let val = rb.value(&s)?;
            let lifted = zeta_image(&w.double_bracket(&a, &rb.residue)?, &s)?;
            let fits = a.off_diag_total() <= r && compositions(n, r - a.off_diag_total())
                .iter()
                .any(|mu| mu.iter().zip(&res).all(|(x, y)| x.rem_euclid(lv.period) == *y));
            rule_bad += usize::from(val != lifted || val.is_zero() == fits);
            if !val.is_zero() {
                nonzero += 1;
                brackets.push(normalize(ring, coordinates(&val, &index)?));
            }
        }
    }
    out.push(Check::new(format!("{tag}: bracket vanishing rule and lift-and-filter agree"), 0, rule_bad, rule_bad == 0));

    let one_ok = zeta_image(&identity(&w)?, &s)? == identity(&s)?;
    out.push(Check::holds(format!("{tag}: zeta(1_W) = 1_S"), one_ok));

    let gens = level_generators(n, lv.bound, lv.bound);
    let mut gen_bad = Vec::new();
    for g in &gens {
        if zeta_image(&embed_generator(g, &w)?, &s)? != embed_generator(g, &s)? {
            gen_bad.push(g.to_string());
        }
    }
    out.push(Check::new(
        format!("{tag}: zeta of generator images = Schur generators"),
        Vec::<String>::new(),
        gen_bad.clone(),
        gen_bad.is_empty(),
    ));

    let basis = enumerate_set(&IndexSet::ThetaTildeQuot { n, levels: lv })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mult_bad = 0;
    for _ in 0..samples {
        let a = basis.choose(&mut rng).expect("nonempty");
        let co = a.co();
        let comp: Vec<&MatIdx> = basis
            .iter()
            .filter(|b| b.ro().iter().zip(&co).all(|(x, y)| (x - y).rem_euclid(lv.period) == 0))
            .collect();
        let b = *comp.choose(&mut rng).expect("composable");
        let (x, y) = (w.basis(a)?, w.basis(b)?);
        let lhs = zeta_image(&w.mult(&x, &y)?, &s)?;
        let rhs = s.mult(&zeta_image(&x, &s)?, &zeta_image(&y, &s)?)?;
        mult_bad += usize::from(lhs != rhs);
    }
    out.push(Check::new(format!("{tag}: zeta multiplicative ({samples} pairs)"), 0, mult_bad, mult_bad == 0));

    let cap = 2 * n * lv.bound as usize;
    let (words, length) = word_span(&s, &index, &gens, cap + 1)?;
    let span_b = span_of(ring, index.len(), &brackets);
    let span_w = span_of(ring, index.len(), &words);
    let w_in_b = words.iter().filter(|v| !span_b.contains(v)).count();
    let b_in_w = brackets.iter().filter(|v| !span_w.contains(v)).count();
    out.push(Check::new(
        format!("{tag}: rank zeta(U_h) = rank u(n,h,r)"),
        json!({ "rank": span_b.rank() }),
        json!({ "rank": span_w.rank(), "word_length": length, "cap": cap, "brackets": nonzero }),
        span_b.rank() == span_w.rank() && length <= cap,
    ));
    out.push(Check::new(
        format!("{tag}: mutual membership"),
        json!({ "words_outside": 0, "brackets_outside": 0 }),
        json!({ "words_outside": w_in_b, "brackets_outside": b_in_w }),
        w_in_b == 0 && b_in_w == 0,
    ));
    Ok(out)
}

/// Spanning families of the infinitesimal algebra in `U_k`:
/// `A(delta, lambda)` with `A` in `Theta(n)^{+-}_h`, `delta in {0,1}^n` and
/// `lambda` in `[0, trunc]^n`.
pub fn snkh_basis_families(n: usize, bound: i64, trunc: i64) -> Result<Vec<ADeltaLambda>> {
    let mut out = Vec::new();
    for a in enumerate_set(&IndexSet::ThetaPmLevel { n, bound })? {
        for delta in boxed_vectors(n, 2) {
            for lambda in boxed_vectors(n, trunc + 1) {
                out.push(ADeltaLambda::new(a.clone(), delta.clone(), lambda)?);
            }
        }
    }
    Ok(out)
}

/// `zeta_r(s(n,h)) = s(n,h,r)`: the basis `{[A] : A in Theta(n,r)_h}` against
/// the images `A(delta, lambda, r)`, both ways, plus the monomial family.
pub fn infinitesimal_basis_report(n: usize, r: i64, ring: &RingSpec) -> Result<Vec<Check>> {
    let s = AlgebraCtx::schur(n, r, ring)?;
    let index = schur_index(n, r)?;
    let bound = ring.bound();
    let tag = format!("n={n} h={} r={r} l'={} p={}", ring.h(), ring.lprime(), ring.p());
    let theta_h = enumerate_set(&IndexSet::ThetaNrLevel { n, r, bound })?;
    let basis_vecs: Vec<SparseVec<RingElem>> = theta_h
        .iter()
        .map(|a| Ok(normalize(ring, coordinates(&s.basis(a)?, &index)?)))
        .collect::<Result<_>>()?;
    let span_basis = span_of(ring, index.len(), &basis_vecs);
    let mut out = vec![Check::equal(
        format!("{tag}: |Theta(n,r)_h| = rank of [A]"),
        theta_h.len(),
        span_basis.rank(),
    )];

    let trunc = r.max(2 * bound);
    let fam = snkh_basis_families(n, bound, trunc)?;
    let mut images = Vec::new();
    let mut beyond_nonzero = 0;
    for x in &fam {
        let y = embed_adl(x, &s)?;
        if x.lambda.iter().any(|l| *l > r) {
            beyond_nonzero += usize::from(!y.is_zero());
            continue;
        }
        images.push(normalize(ring, coordinates(&y, &index)?));
    }
    out.push(Check::new(
        format!("{tag}: A(d,l,r) = 0 once some l_i > r"),
        0,
        beyond_nonzero,
        beyond_nonzero == 0,
    ));
    let span_img = span_of(ring, index.len(), &images);
    let outside = images.iter().filter(|v| !span_basis.contains(v)).count();
    out.push(Check::new(
        format!("{tag}: zeta(s(n,h)) inside s(n,h,r)"),
        0,
        outside,
        outside == 0,
    ));
    out.push(Check::equal(
        format!("{tag}: rank zeta(s(n,h)) = |Theta(n,r)_h|"),
        theta_h.len(),
        span_img.rank(),
    ));
    let mut cert_bad = 0;
    for a in &theta_h {
        let x = ADeltaLambda::new(a.off_diag(), vec![0; n], a.diagonal())?;
        let y = embed_adl(&x, &s)?;
        cert_bad += usize::from(y != s.basis(a)? || !span_img.contains(&normalize(ring, coordinates(&y, &index)?)));
    }
    out.push(Check::new(
        format!("{tag}: [A + diag(mu)] = A(0, mu, r) in zeta(s(n,h))"),
        0,
        cert_bad,
        cert_bad == 0,
    ));

    // monomial family E^{(A+)} 0(d, l) F^{(A-)} with unbounded l
    let engine = AlgebraCtx::kwindow(n, ring, None)?;
    let mut mono = Vec::new();
    for a in enumerate_set(&IndexSet::ThetaPmLevel { n, bound })? {
        if a.off_diag_total() > r {
            continue;
        }
        let (e, f) = engine.monomial_halves(&a.add_diag(&vec![bound; n]))?;
        let to_syms = |w: &crate::blmcore::GenWord| -> Vec<GeneratorSym> {
            w.atoms
                .iter()
                .filter_map(|t| match *t {
                    crate::blmcore::Atom::E { i, m } => Some(GeneratorSym::E { i, m }),
                    crate::blmcore::Atom::F { i, m } => Some(GeneratorSym::F { i, m }),
                    crate::blmcore::Atom::Idem(_) => None,
                })
                .collect()
        };
        let (ew, fw) = (embed_word(&to_syms(&e), &s)?, embed_word(&to_syms(&f), &s)?);
        for delta in boxed_vectors(n, 2) {
            for lambda in boxed_vectors(n, r + 1) {
                let t = embed_adl(&ADeltaLambda::torus(delta.clone(), lambda)?, &s)?;
                let y = s.mult(&ew, &s.mult(&t, &fw)?)?;
                mono.push(normalize(ring, coordinates(&y, &index)?));
            }
        }
    }
    let span_mono = span_of(ring, index.len(), &mono);
    let mono_out = mono.iter().filter(|v| !span_basis.contains(v)).count();
    out.push(Check::new(
        format!("{tag}: monomial family spans s(n,h,r)"),
        json!({ "rank": theta_h.len(), "outside": 0 }),
        json!({ "rank": span_mono.rank(), "outside": mono_out }),
        span_mono.rank() == theta_h.len() && mono_out == 0,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::{make_ring, RingMode};

    fn ring(h: u32) -> RingSpec {
        make_ring(3, 2, h, RingMode::Auto).unwrap()
    }

    #[test]
    fn rbracket_branches() {
        let k = ring(1);
        let s = AlgebraCtx::schur(2, 1, &k).unwrap();
        let e12 = MatIdx::unit(2, 0, 1, 1);
        let rb = RBracket::new(e12.clone(), DiagResidue::new(&[0, 0], 3), 1).unwrap();
        assert_eq!(rb.value(&s).unwrap(), s.basis(&e12).unwrap());
        let big = RBracket::new(MatIdx::unit(2, 0, 1, 2), DiagResidue::new(&[0, 0], 3), 1).unwrap();
        assert!(!big.is_nonzero());
        let off = RBracket::new(e12, DiagResidue::new(&[1, 0], 3), 1).unwrap();
        assert!(!off.is_nonzero());
    }

    #[test]
    fn zeta_identity() {
        let k = ring(1);
        let w = AlgebraCtx::quotient(2, &k).unwrap();
        for r in 1..4 {
            let s = AlgebraCtx::schur(2, r, &k).unwrap();
            assert_eq!(zeta_image(&identity(&w).unwrap(), &s).unwrap(), identity(&s).unwrap());
        }
    }

    #[test]
    fn little_schur_small() {
        let cs = little_schur_report(2, 1, &ring(1), 20, 1).unwrap();
        assert!(cs.iter().all(|c| c.pass), "{cs:?}");
    }

    #[test]
    fn infinitesimal_small() {
        let cs = infinitesimal_basis_report(2, 2, &ring(1)).unwrap();
        assert!(cs.iter().all(|c| c.pass), "{cs:?}");
    }

    #[test]
    fn large_level_gives_full_schur() {
        // bound 6 > r = 3: every off-diagonal entry is allowed
        let cs = infinitesimal_basis_report(2, 3, &ring(2)).unwrap();
        assert_eq!(cs[0].computed, serde_json::json!(20));
        assert!(cs.iter().all(|c| c.pass), "{cs:?}");
    }

    #[test]
    fn reverse_certificate_example() {
        let k = ring(1);
        let s = AlgebraCtx::schur(2, 2, &k).unwrap();
        let a = MatIdx::from_rows(&[vec![0, 1], vec![0, 1]]).unwrap();
        let x = ADeltaLambda::new(a.off_diag(), vec![0, 0], vec![0, 1]).unwrap();
        assert_eq!(embed_adl(&x, &s).unwrap(), s.basis(&a).unwrap());
    }
}
