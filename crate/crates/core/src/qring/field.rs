//! Specialization targets: fields containing a primitive `l'`-th root of unity.
//!
//! In positive characteristic the field is `F_p[e]/(f)` with `f` an irreducible
//! factor of the cyclotomic polynomial mod `p`; in characteristic zero it is
//! `Q[e]/(Phi_{l'})`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::laurent::{write_terms, LaurentPoly};
use super::quantum::gauss_binom;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Largest field size built by exhaustive factor search.
const MAX_FIELD_SIZE: u64 = 1 << 22;
const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RingMode {
    /// Decide from `p`: zero means characteristic zero.
    Auto,
    CharP,
    CharZero,
}

/// An element of a [`RingSpec`] field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElem {
    /// Base-`p` digit encoding of the residue polynomial.
    Fq(u32),
    /// Rational coefficients of the residue polynomial, low degree first.
    Cyc(Box<[BigRational]>),
}

#[derive(Debug)]
struct FqTables {
    p: u64,
    d: usize,
    q: u32,
    /// `p^k` for `k < d`.
    place: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl FqTables {
    fn digits(&self, a: u32) -> Vec<u64> {
        let mut a = a as u64;
        let mut out = Vec::with_capacity(self.d);
        for _ in 0..self.d {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u64]) -> u32 {
        digits
            .iter()
            .zip(&self.place)
            .map(|(c, w)| (*c as u32) * w)
            .sum()
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n as u64;
        self.exp[e as usize]
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    fn pow(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as i64;
        let k = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[k as usize]
    }
}

#[derive(Debug)]
enum Backend {
    Fq(FqTables),
    Cyc { phi: Vec<BigInt>, eps_pows: Vec<RingElem> },
}

struct Inner {
    lprime: u64,
    p: u64,
    h: u32,
    /// Monic modulus, low degree first, coefficients reduced mod `p` when `p > 0`.
    modulus: Vec<BigInt>,
    backend: Backend,
    eps: RingElem,
    binoms: RwLock<HashMap<(i64, i64), RingElem>>,
}

/// A field `k` containing a primitive `l'`-th root of unity `e`, with its
/// characteristic `p` and the level `h` used for all `l p^{h-1}` bounds.
#[derive(Clone)]
pub struct RingSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingSpec(lprime={}, p={}, h={}, modulus={})",
            self.lprime(),
            self.p(),
            self.h(),
            self.modulus_string()
        )
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer polynomial quotient by a monic divisor; panics if not exact.
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    if r.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            r[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    assert!(r.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    q
}

/// Integer coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = div_monic(&poly, &cyclotomic(d));
        }
    }
    poly
}

fn mul_order(p: u64, m: u64) -> usize {
    if m <= 2 {
        return 1;
    }
    let mut x = p % m;
    let mut k = 1;
    while x != 1 {
        x = x * p % m;
        k += 1;
    }
    k
}

/// `a * b mod f` over `F_p`, all polynomials low degree first, `f` monic of degree `d`.
fn mulmod_p(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (d..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for j in 0..=d {
            prod[k - d + j] = (prod[k - d + j] + p * p - c * f[j] % p) % p;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

fn rem_p(num: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut r = num.to_vec();
    for k in (d..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for j in 0..=d {
            r[k - d + j] = (r[k - d + j] + p - c * f[j] % p) % p;
        }
    }
    r.truncate(d);
    r
}

fn build_fq(lprime: u64, p: u64) -> Result<(FqTables, Vec<u64>)> {
    let d = mul_order(p, lprime);
    let q64 = p.checked_pow(d as u32).unwrap_or(u64::MAX);
    if q64 > MAX_FIELD_SIZE {
        return Err(Error::InvalidRing(format!(
            "field of size {p}^{d} is beyond the supported range"
        )));
    }
    let q = q64 as u32;
    let phi: Vec<u64> = cyclotomic(lprime)
        .iter()
        .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
        .collect();
    // First monic degree-d divisor in lexicographic order; every such divisor
    // is irreducible because all factors of Phi mod p share degree d.
    let mut modulus = None;
    for code in 0..q64 {
        let mut f: Vec<u64> = Vec::with_capacity(d + 1);
        let mut c = code;
        for _ in 0..d {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if rem_p(&phi, &f, p).iter().all(|x| *x == 0) {
            modulus = Some(f);
            break;
        }
    }
    let f = modulus.ok_or_else(|| {
        Error::InvalidRing(format!("no degree-{d} factor of Phi_{lprime} mod {p}"))
    })?;
    let place: Vec<u32> = (0..d).map(|k| (p as u32).pow(k as u32)).collect();
    let mut tables = FqTables {
        p,
        d,
        q,
        place,
        exp: Vec::new(),
        log: vec![0; q as usize],
        neg: Vec::new(),
        add: None,
    };
    tables.neg = (0..q)
        .map(|a| {
            let ds: Vec<u64> = tables.digits(a).iter().map(|c| (p - c) % p).collect();
            tables.encode(&ds)
        })
        .collect();
    if q <= ADD_TABLE_LIMIT {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = tables.add_slow(a, b);
            }
        }
        tables.add = Some(t);
    }
    // multiplicative generator
    let order = q64 - 1;
    let factors = prime_factors(order);
    let slow_pow = |g: &[u64], mut e: u64| -> Vec<u64> {
        let mut acc = vec![0u64; d];
        acc[0] = 1;
        let mut base = g.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod_p(&acc, &base, &f, p);
            }
            base = mulmod_p(&base, &base, &f, p);
            e >>= 1;
        }
        acc
    };
    let mut one = vec![0u64; d];
    one[0] = 1;
    let mut gen = None;
    for cand in 1..q {
        let g = tables.digits(cand);
        if order == 1 || factors.iter().all(|r| slow_pow(&g, order / r) != one) {
            gen = Some(g);
            break;
        }
    }
    let g = gen.expect("finite field has a primitive element");
    let mut cur = one.clone();
    let mut exp = Vec::with_capacity(order as usize);
    for k in 0..order {
        let idx = tables.encode(&cur);
        exp.push(idx);
        tables.log[idx as usize] = k as u32;
        cur = mulmod_p(&cur, &g, &f, p);
    }
    tables.exp = exp;
    Ok((tables, f))
}

// --- characteristic zero helpers: polynomials over Q, low degree first ---

fn q_trim(a: &mut Vec<BigRational>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    q_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    q_trim(&mut r);
    (q, r)
}

fn q_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn q_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    q_trim(&mut out);
    out
}

/// Reduces a rational polynomial modulo the monic integer polynomial `phi`.
fn cyc_reduce_with(phi: &[BigInt], mut c: Vec<BigRational>) -> Vec<BigRational> {
    let d = phi.len() - 1;
    for k in (d..c.len()).rev() {
        let top = c[k].clone();
        if top.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().enumerate() {
            c[k - d + j] -= &top * BigRational::from_integer(pj.clone());
        }
    }
    c.resize(d, BigRational::zero());
    c
}

impl RingSpec {
    /// Builds the specialization field for `(l', p, h)`.
    pub fn new(lprime: u64, p: u64, h: u32, mode: RingMode) -> Result<Self> {
        if lprime == 0 {
            return Err(Error::InvalidRing("l' must be at least 1".into()));
        }
        if h == 0 {
            return Err(Error::InvalidRing("level h must be at least 1".into()));
        }
        match mode {
            RingMode::CharP if p == 0 => {
                return Err(Error::InvalidRing("char-p mode needs p > 0".into()))
            }
            RingMode::CharZero if p != 0 => {
                return Err(Error::InvalidRing("char-0 mode needs p = 0".into()))
            }
            _ => {}
        }
        if p > 0 {
            if !is_prime(p) {
                return Err(Error::InvalidRing(format!("{p} is not prime")));
            }
            if lprime.is_multiple_of(p) {
                return Err(Error::InvalidRing(format!("p={p} divides l'={lprime}")));
            }
        } else if h >= 2 {
            return Err(Error::InvalidRing(
                "h >= 2 needs positive characteristic".into(),
            ));
        }
        let (backend, modulus, eps) = if p > 0 {
            let (tables, f) = build_fq(lprime, p)?;
            let eps = if tables.d >= 2 {
                RingElem::Fq(p as u32)
            } else {
                RingElem::Fq(((p - f[0]) % p) as u32)
            };
            let modulus = f.iter().map(|c| BigInt::from(*c)).collect();
            (Backend::Fq(tables), modulus, eps)
        } else {
            let phi = cyclotomic(lprime);
            let d = phi.len() - 1;
            let mut e = vec![BigRational::zero(); d];
            if d >= 2 {
                e[1] = BigRational::one();
            } else {
                e[0] = BigRational::from_integer(-phi[0].clone());
            }
            let mut pows = Vec::with_capacity(lprime as usize);
            let mut cur = vec![BigRational::zero(); d];
            cur[0] = BigRational::one();
            for _ in 0..lprime {
                pows.push(RingElem::Cyc(cur.clone().into_boxed_slice()));
                cur = cyc_reduce_with(&phi, q_mul(&cur, &e));
            }
            let eps = RingElem::Cyc(e.into_boxed_slice());
            (
                Backend::Cyc {
                    phi: phi.clone(),
                    eps_pows: pows,
                },
                phi,
                eps,
            )
        };
        let inner = Inner {
            lprime,
            p,
            h,
            modulus,
            backend,
            eps,
            binoms: RwLock::new(HashMap::new()),
        };
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    pub fn lprime(&self) -> u64 {
        self.inner.lprime
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn h(&self) -> u32 {
        self.inner.h
    }

    /// `l' ` if odd, `l'/2` if even.
    pub fn l(&self) -> u64 {
        if self.inner.lprime % 2 == 1 {
            self.inner.lprime
        } else {
            self.inner.lprime / 2
        }
    }

    fn p_pow(&self) -> u64 {
        if self.inner.p == 0 {
            1
        } else {
            self.inner.p.pow(self.inner.h - 1)
        }
    }

    /// `l p^{h-1}`: the divided-power and off-diagonal bound.
    pub fn bound(&self) -> i64 {
        (self.l() * self.p_pow()) as i64
    }

    /// `l' p^{h-1}`: the diagonal period.
    pub fn period(&self) -> i64 {
        (self.inner.lprime * self.p_pow()) as i64
    }

    /// `p^{h-1}` (1 in characteristic zero).
    pub fn p_power(&self) -> i64 {
        self.p_pow() as i64
    }

    /// The same field with a different level `h`.
    pub fn with_level(&self, h: u32) -> Result<Self> {
        let mode = if self.p() == 0 {
            RingMode::CharZero
        } else {
            RingMode::CharP
        };
        Self::new(self.lprime(), self.p(), h, mode)
    }

    /// `l' <= 2` makes `e = +-1` and most statements trivial.
    pub fn is_degenerate(&self) -> bool {
        self.inner.lprime <= 2
    }

    pub fn eps(&self) -> RingElem {
        self.inner.eps.clone()
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    /// Number of elements, or `None` in characteristic zero.
    pub fn size(&self) -> Option<u64> {
        match &self.inner.backend {
            Backend::Fq(t) => Some(t.q as u64),
            Backend::Cyc { .. } => None,
        }
    }

    pub fn modulus_string(&self) -> String {
        struct M<'a>(&'a [BigInt]);
        impl fmt::Display for M<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_terms(
                    f,
                    "e",
                    self.0
                        .iter()
                        .enumerate()
                        .rev()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k as i64, c)),
                )
            }
        }
        M(&self.inner.modulus).to_string()
    }

    /// Header line for the text form of elements.
    pub fn header(&self) -> String {
        format!(
            "# lprime={} p={} modulus={}",
            self.lprime(),
            self.p(),
            self.modulus_string()
        )
    }

    /// Residue coefficients of an element, low degree first, as rationals.
    pub fn coefficients(&self, a: &RingElem) -> Vec<BigRational> {
        match (&self.inner.backend, a) {
            (Backend::Fq(t), RingElem::Fq(x)) => t
                .digits(*x)
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            (Backend::Cyc { .. }, RingElem::Cyc(c)) => c.to_vec(),
            _ => panic!("element from a different ring"),
        }
    }

    /// Element with the given residue coefficients (low degree first).
    pub fn from_coefficients(&self, cs: &[i64]) -> RingElem {
        let e = self.eps();
        let mut acc = self.zero();
        let mut pw = self.one();
        for c in cs {
            acc = self.add(&acc, &self.mul(&self.from_int(*c), &pw));
            pw = self.mul(&pw, &e);
        }
        acc
    }

    pub fn pow(&self, a: &RingElem, e: i64) -> RingElem {
        match (&self.inner.backend, a) {
            (Backend::Fq(t), RingElem::Fq(x)) => RingElem::Fq(t.pow(*x, e)),
            _ => {
                let base = if e < 0 {
                    self.inv(a).expect("negative power of zero")
                } else {
                    a.clone()
                };
                let mut k = e.unsigned_abs();
                let mut acc = self.one();
                let mut b = base;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = self.mul(&acc, &b);
                    }
                    b = self.mul(&b, &b);
                    k >>= 1;
                }
                acc
            }
        }
    }

    fn cyc_reduce(&self, c: Vec<BigRational>) -> RingElem {
        let Backend::Cyc { phi, .. } = &self.inner.backend else {
            unreachable!()
        };
        RingElem::Cyc(cyc_reduce_with(phi, c).into_boxed_slice())
    }

    /// Direct route for `[n over t]_e`: image of the generic Gaussian binomial.
    pub fn qbinom_direct(&self, n: i64, t: i64) -> RingElem {
        self.qbinom(n, t)
    }
}

impl Ring for RingSpec {
    type Elem = RingElem;

    fn zero(&self) -> RingElem {
        match &self.inner.backend {
            Backend::Fq(_) => RingElem::Fq(0),
            Backend::Cyc { phi, .. } => {
                RingElem::Cyc(vec![BigRational::zero(); phi.len() - 1].into_boxed_slice())
            }
        }
    }

    fn one(&self) -> RingElem {
        self.from_int(1)
    }

    fn is_zero(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Fq(x) => *x == 0,
            RingElem::Cyc(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (&self.inner.backend, a, b) {
            (Backend::Fq(t), RingElem::Fq(x), RingElem::Fq(y)) => RingElem::Fq(t.add(*x, *y)),
            (Backend::Cyc { .. }, RingElem::Cyc(x), RingElem::Cyc(y)) => RingElem::Cyc(
                x.iter().zip(y.iter()).map(|(u, w)| u + w).collect(),
            ),
            _ => panic!("element from a different ring"),
        }
    }

    fn neg(&self, a: &RingElem) -> RingElem {
        match (&self.inner.backend, a) {
            (Backend::Fq(t), RingElem::Fq(x)) => RingElem::Fq(t.neg[*x as usize]),
            (Backend::Cyc { .. }, RingElem::Cyc(x)) => RingElem::Cyc(x.iter().map(|u| -u).collect()),
            _ => panic!("element from a different ring"),
        }
    }

    fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (&self.inner.backend, a, b) {
            (Backend::Fq(t), RingElem::Fq(x), RingElem::Fq(y)) => RingElem::Fq(t.mul(*x, *y)),
            (Backend::Cyc { .. }, RingElem::Cyc(x), RingElem::Cyc(y)) => {
                self.cyc_reduce(q_mul(x, y))
            }
            _ => panic!("element from a different ring"),
        }
    }

    fn from_bigint(&self, c: &BigInt) -> RingElem {
        match &self.inner.backend {
            Backend::Fq(t) => {
                let r = c.mod_floor(&BigInt::from(t.p)).to_u32().unwrap();
                RingElem::Fq(r)
            }
            Backend::Cyc { phi, .. } => {
                let mut v = vec![BigRational::zero(); phi.len() - 1];
                v[0] = BigRational::from_integer(c.clone());
                RingElem::Cyc(v.into_boxed_slice())
            }
        }
    }

    fn from_laurent(&self, poly: &LaurentPoly) -> RingElem {
        let mut acc = self.zero();
        for (e, c) in poly.terms() {
            let term = self.mul(&self.from_bigint(c), &self.v_pow(e));
            acc = self.add(&acc, &term);
        }
        acc
    }

    fn v_pow(&self, e: i64) -> RingElem {
        match &self.inner.backend {
            Backend::Fq(t) => {
                let RingElem::Fq(x) = self.inner.eps else {
                    unreachable!()
                };
                RingElem::Fq(t.pow(x, e))
            }
            Backend::Cyc { eps_pows, .. } => {
                eps_pows[e.rem_euclid(self.inner.lprime as i64) as usize].clone()
            }
        }
    }

    fn qbinom(&self, n: i64, t: i64) -> RingElem {
        if let Some(b) = self.inner.binoms.read().unwrap().get(&(n, t)) {
            return b.clone();
        }
        let b = self.from_laurent(&gauss_binom(n, t));
        self.inner.binoms.write().unwrap().insert((n, t), b.clone());
        b
    }

    fn format_elem(&self, a: &RingElem) -> String {
        struct Show(Vec<(i64, BigRational)>);
        impl fmt::Display for Show {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.iter().all(|(_, c)| c.is_integer()) {
                    let ints: Vec<(i64, BigInt)> =
                        self.0.iter().map(|(e, c)| (*e, c.to_integer())).collect();
                    return write_terms(f, "e", ints.iter().map(|(e, c)| (*e, c)));
                }
                let mut first = true;
                for (e, c) in &self.0 {
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    match e {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "({c})*e")?,
                        _ => write!(f, "({c})*e^{e}")?,
                    }
                }
                Ok(())
            }
        }
        let cs = self.coefficients(a);
        let terms: Vec<(i64, BigRational)> = cs
            .into_iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c))
            .collect();
        Show(terms).to_string()
    }

    fn describe(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "field",
            "lprime": self.lprime(),
            "p": self.p(),
            "h": self.h(),
            "modulus": self.modulus_string(),
        })
    }

    fn level(&self) -> Option<(i64, i64)> {
        Some((self.bound(), self.period()))
    }
}

impl Field for RingSpec {
    fn inv(&self, a: &RingElem) -> Option<RingElem> {
        match (&self.inner.backend, a) {
            (Backend::Fq(t), RingElem::Fq(x)) => t.inv(*x).map(RingElem::Fq),
            (Backend::Cyc { phi, .. }, RingElem::Cyc(x)) => {
                if x.iter().all(|c| c.is_zero()) {
                    return None;
                }
                // extended Euclid: s*a + t*phi = g, g a nonzero constant
                let phi_q: Vec<BigRational> = phi
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                let mut a0 = x.to_vec();
                q_trim(&mut a0);
                let (mut r0, mut r1) = (phi_q, a0);
                let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
                while !r1.is_empty() {
                    let (q, r) = q_divrem(&r0, &r1);
                    let s2 = q_sub(&s0, &q_mul(&q, &s1));
                    r0 = std::mem::replace(&mut r1, r);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                // r0 is the gcd; phi irreducible over Q so it is constant
                if r0.len() != 1 {
                    return None;
                }
                let g = r0[0].clone();
                let s: Vec<BigRational> = s0.iter().map(|c| c / &g).collect();
                Some(self.cyc_reduce(s))
            }
            _ => panic!("element from a different ring"),
        }
    }
}

/// Builds the specialization ring; thin wrapper over [`RingSpec::new`].
pub fn make_ring(lprime: u64, p: u64, h: u32, mode: RingMode) -> Result<RingSpec> {
    RingSpec::new(lprime, p, h, mode)
}

/// `v -> e` applied to a Laurent polynomial.
pub fn eval_at_eps(poly: &LaurentPoly, ring: &RingSpec) -> RingElem {
    ring.from_laurent(poly)
}

impl RingElem {
    /// True when the element is a rational integer residue (no `e` terms).
    pub fn is_scalar(&self) -> bool {
        match self {
            RingElem::Fq(_) => true,
            RingElem::Cyc(c) => c.iter().skip(1).all(|x| x.is_zero()),
        }
    }
}
