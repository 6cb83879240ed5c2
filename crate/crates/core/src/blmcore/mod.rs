//! The multiplication engine for the stabilized algebra `K_n`, the q-Schur
//! algebras `S(n,r)` and the finite quotients `K(n,h)_q`.
//!
//! Generator products use the closed divided-power formula; arbitrary products
//! go through a certified triangular decomposition of the left factor into
//! generator words. `S(n,r)` reuses the `K_n` steps and discards terms with a
//! negative diagonal entry after every step.

mod kernel;
mod word;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::indices::{cmp_order, lift, pr_matrix, DiagResidue, LevelBounds, MatIdx, OrderRel};
use crate::qring::{Ring, RingSpec};

pub use word::{Atom, GenWord};

use kernel::{add_term, e_step_into, f_step_into, Terms};
use word::{monomial_word, ORDERS};

/// Which algebra an element lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CtxKind {
    /// `K_n`, optionally restricted to diagonals in `[lo, hi]`.
    KWindow { window: Option<(i64, i64)> },
    /// `S(n, r)`.
    Schur { r: i64 },
    /// `K(n,h)_q`, basis symbols carry diagonals reduced into `[0, l' p^{h-1})`.
    Quotient { h: u32 },
}

type Decomp<E> = Arc<Vec<(MatIdx, E)>>;

struct Inner<R: Ring> {
    n: usize,
    kind: CtxKind,
    ring: R,
    levels: Option<LevelBounds>,
    engine: Option<AlgebraCtx<R>>,
    decomps: RwLock<HashMap<MatIdx, Decomp<R::Elem>>>,
    words: RwLock<HashMap<MatIdx, Arc<GenWord>>>,
}

/// Immutable algebra descriptor plus its decomposition caches.
pub struct AlgebraCtx<R: Ring> {
    inner: Arc<Inner<R>>,
}

impl<R: Ring> Clone for AlgebraCtx<R> {
    fn clone(&self) -> Self {
        Self {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<R: Ring> fmt::Debug for AlgebraCtx<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// A finite linear combination of basis symbols.
#[derive(Clone)]
pub struct AlgElem<R: Ring> {
    ctx: AlgebraCtx<R>,
    terms: Terms<R::Elem>,
}

impl<R: Ring> fmt::Debug for AlgElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<R: Ring> PartialEq for AlgElem<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.terms == other.terms
    }
}

impl<R: Ring> AlgebraCtx<R> {
    fn build(n: usize, kind: CtxKind, ring: R, engine: Option<AlgebraCtx<R>>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParams("n must be >= 1".into()));
        }
        let levels = ring.level().map(|(bound, period)| LevelBounds { bound, period });
        Ok(Self {
            inner: Arc::new(Inner {
                n,
                kind,
                ring,
                levels,
                engine,
                decomps: RwLock::new(HashMap::new()),
                words: RwLock::new(HashMap::new()),
            }),
        })
    }

    /// `K_n` over `ring`; `window` bounds the diagonal entries when given.
    pub fn kwindow(n: usize, ring: &R, window: Option<(i64, i64)>) -> Result<Self> {
        if let Some((lo, hi)) = window {
            if lo > hi {
                return Err(Error::InvalidParams(format!("empty window [{lo}, {hi}]")));
            }
        }
        Self::build(n, CtxKind::KWindow { window }, ring.clone(), None)
    }

    /// A window covering `inputs`: their diagonal range padded by `n` times the
    /// largest off-diagonal total.
    pub fn kwindow_for(n: usize, ring: &R, inputs: &[&MatIdx]) -> Result<Self> {
        let lo = inputs.iter().map(|a| a.min_diag()).min().unwrap_or(0);
        let hi = inputs
            .iter()
            .map(|a| a.diagonal().into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        let smax = inputs.iter().map(|a| a.off_diag_total()).max().unwrap_or(0);
        let pad = n as i64 * smax;
        Self::kwindow(n, ring, Some((lo - pad, hi + pad)))
    }

    pub fn schur(n: usize, r: i64, ring: &R) -> Result<Self> {
        if r < 0 {
            return Err(Error::InvalidParams("r must be >= 0".into()));
        }
        Self::build(n, CtxKind::Schur { r }, ring.clone(), None)
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn kind(&self) -> &CtxKind {
        &self.inner.kind
    }

    pub fn ring(&self) -> &R {
        &self.inner.ring
    }

    /// Off-diagonal bound and diagonal period of a specialized ring.
    pub fn levels(&self) -> Option<LevelBounds> {
        self.inner.levels
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self.inner.kind, CtxKind::Quotient { .. })
    }

    /// Same context object, or an equal descriptor.
    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n == other.inner.n
                && self.inner.kind == other.inner.kind
                && self.inner.ring.describe() == other.inner.ring.describe())
    }

    pub fn describe(&self) -> Value {
        let mut v = json!({ "n": self.inner.n, "ring": self.inner.ring.describe() });
        match &self.inner.kind {
            CtxKind::KWindow { window } => {
                v["kind"] = json!("kwindow");
                if let Some((lo, hi)) = window {
                    v["window"] = json!([lo, hi]);
                }
            }
            CtxKind::Schur { r } => {
                v["kind"] = json!("schur");
                v["r"] = json!(r);
            }
            CtxKind::Quotient { h } => {
                v["kind"] = json!("quotient");
                v["h"] = json!(h);
                if let Some(lv) = self.inner.levels {
                    v["bound"] = json!(lv.bound);
                    v["period"] = json!(lv.period);
                }
            }
        }
        v
    }

    fn period(&self) -> Result<i64> {
        self.inner
            .levels
            .map(|l| l.period)
            .ok_or_else(|| Error::CtxMismatch("needs a specialized coefficient ring".into()))
    }

    /// Checks that `a` is a basis symbol of this algebra.
    pub fn validate(&self, a: &MatIdx) -> Result<()> {
        if a.n() != self.inner.n {
            return Err(Error::SizeMismatch(a.n(), self.inner.n));
        }
        match &self.inner.kind {
            CtxKind::KWindow { window } => {
                if let Some((lo, hi)) = window {
                    let d = a.diagonal();
                    if d.iter().any(|x| x < lo || x > hi) {
                        let need_lo = d.iter().copied().min().unwrap().min(*lo);
                        let need_hi = d.iter().copied().max().unwrap().max(*hi);
                        return Err(Error::WindowOverflow {
                            lo: need_lo,
                            hi: need_hi,
                        });
                    }
                }
            }
            CtxKind::Schur { r } => {
                if a.min_diag() < 0 || a.total() != *r {
                    return Err(Error::InvalidParams(format!("{a} is not in Theta(n, {r})")));
                }
            }
            CtxKind::Quotient { .. } => {
                let lv = self.inner.levels.expect("quotient has levels");
                if a.max_off_diag() >= lv.bound {
                    return Err(Error::BoundViolation(format!(
                        "{a} has an off-diagonal entry >= {}",
                        lv.bound
                    )));
                }
                if a.diagonal().iter().any(|x| *x < 0 || *x >= lv.period) {
                    return Err(Error::InvalidParams(format!(
                        "{a} diagonal is not reduced mod {}",
                        lv.period
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> AlgElem<R> {
        AlgElem {
            ctx: self.clone(),
            terms: Terms::new(),
        }
    }

    /// The basis element `[a]`.
    pub fn basis(&self, a: &MatIdx) -> Result<AlgElem<R>> {
        self.validate(a)?;
        let mut terms = Terms::new();
        terms.insert(a.clone(), self.inner.ring.one());
        Ok(AlgElem {
            ctx: self.clone(),
            terms,
        })
    }

    /// A validated linear combination; repeated symbols are summed.
    pub fn elem(&self, terms: Vec<(MatIdx, R::Elem)>) -> Result<AlgElem<R>> {
        let ring = &self.inner.ring;
        let mut acc = Terms::new();
        for (a, c) in terms {
            self.validate(&a)?;
            add_term(ring, &mut acc, a, c);
        }
        Ok(AlgElem {
            ctx: self.clone(),
            terms: acc,
        })
    }

    fn wrap(&self, terms: Terms<R::Elem>) -> AlgElem<R> {
        AlgElem {
            ctx: self.clone(),
            terms,
        }
    }

    fn check_same(&self, x: &AlgElem<R>) -> Result<()> {
        if self.same(&x.ctx) {
            Ok(())
        } else {
            Err(Error::CtxMismatch(format!(
                "element of {} used in {}",
                x.ctx.describe(),
                self.describe()
            )))
        }
    }

    /// Post-processing after a raw `K_n` step.
    fn settle(&self, raw: Terms<R::Elem>) -> Result<Terms<R::Elem>> {
        match &self.inner.kind {
            CtxKind::KWindow { window: None } => Ok(raw),
            CtxKind::KWindow { .. } => {
                for a in raw.keys() {
                    self.validate(a)?;
                }
                Ok(raw)
            }
            CtxKind::Schur { .. } => Ok(raw.into_iter().filter(|(a, _)| a.min_diag() >= 0).collect()),
            CtxKind::Quotient { .. } => {
                let lv = self.inner.levels.expect("quotient has levels");
                let ring = &self.inner.ring;
                let mut out = Terms::new();
                for (a, c) in raw {
                    if a.max_off_diag() >= lv.bound {
                        return Err(Error::BoundViolation(format!(
                            "product term {a} leaves the level (coefficient {})",
                            ring.format_elem(&c)
                        )));
                    }
                    add_term(ring, &mut out, pr_matrix(&a, lv.period), c);
                }
                Ok(out)
            }
        }
    }

    fn check_exponent(&self, m: i64, i: usize) -> Result<()> {
        if m < 0 || i + 1 >= self.inner.n {
            return Err(Error::InvalidParams(format!(
                "generator index {} / exponent {m} out of range for n = {}",
                i + 1,
                self.inner.n
            )));
        }
        if let (CtxKind::Quotient { .. }, Some(lv)) = (&self.inner.kind, self.inner.levels) {
            if m >= lv.bound {
                return Err(Error::BoundViolation(format!(
                    "divided power {m} >= {}",
                    lv.bound
                )));
            }
        }
        Ok(())
    }

    fn apply_atom(&self, atom: &Atom, terms: &Terms<R::Elem>) -> Result<Terms<R::Elem>> {
        let ring = &self.inner.ring;
        let mut raw = Terms::new();
        match atom {
            Atom::E { i, m } => {
                self.check_exponent(*m, *i)?;
                for (a, c) in terms {
                    e_step_into(ring, *i, *m, a, c, &mut raw);
                }
            }
            Atom::F { i, m } => {
                self.check_exponent(*m, *i)?;
                for (a, c) in terms {
                    f_step_into(ring, *i, *m, a, c, &mut raw);
                }
            }
            Atom::Idem(lambda) => {
                let period = if self.is_quotient() { Some(self.period()?) } else { None };
                for (a, c) in terms {
                    let ro = a.ro();
                    let hit = match period {
                        Some(p) => ro.iter().zip(lambda).all(|(x, y)| (x - y).rem_euclid(p) == 0),
                        None => ro == *lambda,
                    };
                    if hit {
                        raw.insert(a.clone(), c.clone());
                    }
                }
                return Ok(raw);
            }
        }
        self.settle(raw)
    }

    /// `E_i^{(m)} . x` (0-based `i`).
    pub fn e_step(&self, i: usize, m: i64, x: &AlgElem<R>) -> Result<AlgElem<R>> {
        self.check_same(x)?;
        Ok(self.wrap(self.apply_atom(&Atom::E { i, m }, &x.terms)?))
    }

    /// `F_i^{(m)} . x` (0-based `i`).
    pub fn f_step(&self, i: usize, m: i64, x: &AlgElem<R>) -> Result<AlgElem<R>> {
        self.check_same(x)?;
        Ok(self.wrap(self.apply_atom(&Atom::F { i, m }, &x.terms)?))
    }

    /// `[m E_{i,i+1} + diag(lambda)] . x`.
    pub fn mult_gen_e(&self, i: usize, m: i64, lambda: &[i64], x: &AlgElem<R>) -> Result<AlgElem<R>> {
        let mut co = lambda.to_vec();
        co[i + 1] += m;
        let y = self.wrap(self.apply_atom(&Atom::Idem(co), &x.terms)?);
        self.e_step(i, m, &y)
    }

    /// `[m E_{i+1,i} + diag(lambda)] . x`.
    pub fn mult_gen_f(&self, i: usize, m: i64, lambda: &[i64], x: &AlgElem<R>) -> Result<AlgElem<R>> {
        let mut co = lambda.to_vec();
        co[i] += m;
        let y = self.wrap(self.apply_atom(&Atom::Idem(co), &x.terms)?);
        self.f_step(i, m, &y)
    }

    /// `word . x`, rightmost atom first.
    pub fn apply_word(&self, word: &GenWord, x: &AlgElem<R>) -> Result<AlgElem<R>> {
        self.check_same(x)?;
        let mut t = x.terms.clone();
        for atom in word.atoms.iter().rev() {
            t = self.apply_atom(atom, &t)?;
            if t.is_empty() {
                break;
            }
        }
        Ok(self.wrap(t))
    }

    /// `[A] -> [A^T]`.
    pub fn transpose(&self, x: &AlgElem<R>) -> Result<AlgElem<R>> {
        self.check_same(x)?;
        Ok(self.wrap(x.terms.iter().map(|(a, c)| (a.transpose(), c.clone())).collect()))
    }

    fn certify(&self, a: &MatIdx, exp: &Terms<R::Elem>) -> bool {
        let ring = &self.inner.ring;
        match exp.get(a) {
            Some(c) if ring.is_one(c) => {}
            _ => return false,
        }
        exp.keys()
            .filter(|b| *b != a)
            .all(|b| cmp_order(b, a).map(|o| o == OrderRel::StrictlyLower).unwrap_or(false))
    }

    /// `E^{(A+)} [diag(lambda)] F^{(A-)}` with `lambda = diag(A) + sigma(A)`,
    /// applied to `[diag(co(A))]`; certified to be `[A]` plus strictly lower terms.
    pub fn monomial_for(&self, a: &MatIdx) -> Result<(GenWord, AlgElem<R>)> {
        self.validate(a)?;
        if let Some(engine) = &self.inner.engine {
            let (w, exp) = engine.monomial_for(a)?;
            let mut t = self.settle(exp.terms)?;
            t.retain(|_, c| !self.inner.ring.is_zero(c));
            return Ok((w, self.wrap(t)));
        }
        if let Some(w) = self.inner.words.read().unwrap().get(a) {
            let w = (**w).clone();
            let exp = self.apply_word(&w, &self.seed(a))?;
            return Ok((w, exp));
        }
        if a.is_diagonal() {
            return Ok((GenWord::default(), self.seed(a)));
        }
        let lambda: Vec<i64> = a
            .diagonal()
            .iter()
            .zip(a.sigma_vec())
            .map(|(d, s)| d + s)
            .collect();
        let seed = self.seed(a);
        for eo in ORDERS {
            for fo in ORDERS {
                let w = monomial_word(a, &lambda, eo, fo);
                let exp = self.apply_word(&w, &seed)?;
                if self.certify(a, &exp.terms) {
                    self.inner
                        .words
                        .write()
                        .unwrap()
                        .insert(a.clone(), Arc::new(w.clone()));
                    return Ok((w, exp));
                }
            }
        }
        Err(Error::Certification(a.to_string()))
    }

    /// The certified halves `E^{(A+)}` and `F^{(A-)}` of the monomial for `a`.
    pub fn monomial_halves(&self, a: &MatIdx) -> Result<(GenWord, GenWord)> {
        let (w, _) = self.monomial_for(a)?;
        Ok(match w.atoms.iter().position(|x| matches!(x, Atom::Idem(_))) {
            None => (GenWord::default(), GenWord::default()),
            Some(k) => (
                GenWord::new(w.atoms[..k].to_vec()),
                GenWord::new(w.atoms[k + 1..].to_vec()),
            ),
        })
    }

    fn seed(&self, a: &MatIdx) -> AlgElem<R> {
        let mut t = Terms::new();
        t.insert(MatIdx::diag(&a.co()), self.inner.ring.one());
        self.wrap(t)
    }

    /// `[A] = sum_C g_C M_C` over certified monomials `M_C`.
    fn decompose(&self, a: &MatIdx) -> Result<Decomp<R::Elem>> {
        if let Some(d) = self.inner.decomps.read().unwrap().get(a) {
            return Ok(Arc::clone(d));
        }
        let ring = &self.inner.ring;
        let (_, exp) = self.monomial_for(a)?;
        let mut parts = Terms::new();
        parts.insert(a.clone(), ring.one());
        for (b, f) in &exp.terms {
            if b == a {
                continue;
            }
            let nf = ring.neg(f);
            for (c, g) in self.decompose(b)?.iter() {
                add_term(ring, &mut parts, c.clone(), ring.mul(&nf, g));
            }
        }
        let d: Decomp<R::Elem> = Arc::new(parts.into_iter().collect());
        self.inner
            .decomps
            .write()
            .unwrap()
            .insert(a.clone(), Arc::clone(&d));
        Ok(d)
    }

    fn word_of(&self, c: &MatIdx) -> Result<Arc<GenWord>> {
        if let Some(w) = self.inner.words.read().unwrap().get(c) {
            return Ok(Arc::clone(w));
        }
        let (w, _) = self.monomial_for(c)?;
        Ok(Arc::new(w))
    }

    /// `[a] . y` through the decomposition of `[a]`.
    fn left_mult_basis(&self, a: &MatIdx, y: &Terms<R::Elem>) -> Result<Terms<R::Elem>> {
        let ring = &self.inner.ring;
        let co = a.co();
        let y: Terms<R::Elem> = y
            .iter()
            .filter(|(b, _)| b.ro() == co)
            .map(|(b, c)| (b.clone(), c.clone()))
            .collect();
        let mut out = Terms::new();
        if y.is_empty() {
            return Ok(out);
        }
        if a.is_diagonal() {
            return Ok(y);
        }
        for (c, g) in self.decompose(a)?.iter() {
            let w = self.word_of(c)?;
            let mut t = y.clone();
            for atom in w.atoms.iter().rev() {
                t = self.apply_atom(atom, &t)?;
                if t.is_empty() {
                    break;
                }
            }
            for (b, x) in t {
                add_term(ring, &mut out, b, ring.mul(g, &x));
            }
        }
        Ok(out)
    }

    fn mult_once(&self, x: &AlgElem<R>, y: &AlgElem<R>, shift: Option<&[i64]>) -> Result<AlgElem<R>> {
        let ring = &self.inner.ring;
        let mut out = Terms::new();
        if let Some(engine) = &self.inner.engine {
            let p = self.period()?;
            for (a, c) in &x.terms {
                let mut at = a.clone();
                if let Some(d) = shift {
                    let dd: Vec<i64> = d.iter().map(|v| v * p).collect();
                    at = at.add_diag(&dd);
                }
                let co = at.co();
                for (b, c2) in &y.terms {
                    let ro = b.ro();
                    if co.iter().zip(&ro).any(|(u, w)| (u - w).rem_euclid(p) != 0) {
                        continue;
                    }
                    let (off, res) = (b.off_diag(), DiagResidue::new(&b.diagonal(), p));
                    let bt = lift(&off, &res, Some(&co))?;
                    let mut single = Terms::new();
                    single.insert(bt, ring.mul(c, c2));
                    let prod = engine.left_mult_basis(&at, &single)?;
                    for (k, v) in self.settle(prod)? {
                        add_term(ring, &mut out, k, v);
                    }
                }
            }
            return Ok(self.wrap(out));
        }
        for (a, c) in &x.terms {
            for (b, v) in self.left_mult_basis(a, &y.terms)? {
                add_term(ring, &mut out, b, ring.mul(c, &v));
            }
        }
        Ok(self.wrap(out))
    }

    /// The product `x . y`.
    ///
    /// A `K_n` window that overflows is widened once before giving up.
    pub fn mult(&self, x: &AlgElem<R>, y: &AlgElem<R>) -> Result<AlgElem<R>> {
        self.check_same(x)?;
        self.check_same(y)?;
        match self.mult_once(x, y, None) {
            Err(Error::WindowOverflow { lo, hi }) => {
                let CtxKind::KWindow { window: Some((wlo, whi)) } = self.inner.kind else {
                    return Err(Error::WindowOverflow { lo, hi });
                };
                let margin = 2 * (wlo - lo).max(hi - whi).max(1);
                let wider = Self::kwindow(self.inner.n, &self.inner.ring, Some((wlo - margin, whi + margin)))?;
                let (xw, yw) = (x.rehome(&wider), y.rehome(&wider));
                wider.mult_once(&xw, &yw, None)
            }
            r => r,
        }
    }

    /// Quotient product computed from the lift of the left factor shifted by
    /// `l' p^{h-1} d`; agrees with [`Self::mult`] when the product is well defined.
    pub fn mult_lifted(&self, x: &AlgElem<R>, y: &AlgElem<R>, d: &[i64]) -> Result<AlgElem<R>> {
        if !self.is_quotient() {
            return Err(Error::CtxMismatch("lifted products need a quotient context".into()));
        }
        self.check_same(x)?;
        self.check_same(y)?;
        self.mult_once(x, y, Some(d))
    }

    /// `tau_D`: `[A] -> [A + l' p^{h-1} D]`.
    pub fn tau_shift(&self, d: &MatIdx, x: &AlgElem<R>) -> Result<AlgElem<R>> {
        self.check_same(x)?;
        if !d.is_diagonal() || d.n() != self.inner.n {
            return Err(Error::InvalidParams(format!("{d} is not an n x n diagonal matrix")));
        }
        let p = self.period()?;
        let shift: Vec<i64> = d.diagonal().iter().map(|v| v * p).collect();
        let mut t = Terms::new();
        for (a, c) in &x.terms {
            let b = a.add_diag(&shift);
            self.validate(&b)?;
            t.insert(b, c.clone());
        }
        Ok(self.wrap(t))
    }
}

impl AlgebraCtx<RingSpec> {
    /// `K(n,h)_q` over `ring`, at the ring's level `h`.
    pub fn quotient(n: usize, ring: &RingSpec) -> Result<Self> {
        let engine = Self::kwindow(n, ring, None)?;
        Self::build(n, CtxKind::Quotient { h: ring.h() }, ring.clone(), Some(engine))
    }

    /// As [`Self::quotient`], insisting that the ring was built for level `h`.
    pub fn quotient_at(n: usize, h: u32, ring: &RingSpec) -> Result<Self> {
        if ring.h() != h {
            return Err(Error::CtxMismatch(format!(
                "quotient at level {h} needs a ring at level {h}, got {}",
                ring.h()
            )));
        }
        Self::quotient(n, ring)
    }

    /// `[[A + diag(lambda)]]_h` as a basis symbol.
    pub fn double_bracket(&self, a: &MatIdx, lambda: &DiagResidue) -> Result<AlgElem<RingSpec>> {
        if !self.is_quotient() {
            return Err(Error::CtxMismatch("double brackets live in a quotient context".into()));
        }
        let p = self.period()?;
        if lambda.modulus != p {
            return Err(Error::InvalidParams(format!(
                "residues mod {} in a context of period {p}",
                lambda.modulus
            )));
        }
        self.basis(&lift(a, lambda, None)?)
    }
}

/// `[A] + (c)[B]`, with matrices in compact form; `0` for the zero element.
impl<R: Ring> fmt::Display for AlgElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let ring = self.ctx.ring();
        let one = ring.one();
        for (k, (a, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if *c != one {
                write!(f, "({})", ring.format_elem(c))?;
            }
            write!(f, "[{}]", a.compact())?;
        }
        Ok(())
    }
}

impl<R: Ring> AlgElem<R> {
    pub fn ctx(&self) -> &AlgebraCtx<R> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MatIdx, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &MatIdx) -> R::Elem {
        self.terms
            .get(a)
            .cloned()
            .unwrap_or_else(|| self.ctx.ring().zero())
    }

    pub fn support(&self) -> Vec<MatIdx> {
        self.terms.keys().cloned().collect()
    }

    fn rehome(&self, ctx: &AlgebraCtx<R>) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: self.terms.clone(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(other)?;
        let ring = self.ctx.ring();
        let mut t = self.terms.clone();
        for (a, c) in &other.terms {
            add_term(ring, &mut t, a.clone(), c.clone());
        }
        Ok(self.ctx.wrap(t))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let ring = self.ctx.ring();
        self.ctx
            .wrap(self.terms.iter().map(|(a, c)| (a.clone(), ring.neg(c))).collect())
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let ring = self.ctx.ring();
        let mut t = Terms::new();
        for (a, c) in &self.terms {
            add_term(ring, &mut t, a.clone(), ring.mul(s, c));
        }
        self.ctx.wrap(t)
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&MatIdx) -> bool) -> Self {
        self.ctx.wrap(
            self.terms
                .iter()
                .filter(|(a, _)| keep(a))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        let ring = self.ctx.ring();
        let quotient = self.ctx.is_quotient();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let mut t = json!({ "matrix": a.rows(), "coeff": ring.format_elem(c) });
                if quotient {
                    t["diag_residues"] = json!(a.diagonal());
                }
                t
            })
            .collect();
        json!({ "ctx": self.ctx.describe(), "terms": terms })
    }

    /// Human-readable form, e.g. `[diag(1,0)] + [[0,1],[1,-1]]`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let ring = self.ctx.ring();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let sym = if a.is_diagonal() {
                    let d: Vec<String> = a.diagonal().iter().map(i64::to_string).collect();
                    format!("[diag({})]", d.join(","))
                } else {
                    a.to_string()
                };
                let cs = ring.format_elem(c);
                match cs.as_str() {
                    "1" => sym,
                    "-1" => format!("-{sym}"),
                    s if s.contains(' ') => format!("({s})*{sym}"),
                    s => format!("{s}*{sym}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Sums `coeff * elem` over a list.
pub fn linear_combination<R: Ring>(
    ctx: &AlgebraCtx<R>,
    parts: &[(R::Elem, AlgElem<R>)],
) -> Result<AlgElem<R>> {
    let mut acc = ctx.zero();
    for (c, x) in parts {
        acc = acc.plus(&x.scale(c))?;
    }
    Ok(acc)
}

/// Coordinates of an element in a fixed basis list.
pub fn coordinates<R: Ring>(x: &AlgElem<R>, index: &BTreeMap<MatIdx, usize>) -> Result<Vec<(usize, R::Elem)>> {
    x.terms
        .iter()
        .map(|(a, c)| {
            index
                .get(a)
                .map(|k| (*k, c.clone()))
                .ok_or_else(|| Error::Dimension(format!("{a} is outside the coordinate basis")))
        })
        .collect::<Result<Vec<_>>>()
        .map(|mut v| {
            v.sort_by_key(|(k, _)| *k);
            v
        })
}

#[cfg(test)]
mod tests;
