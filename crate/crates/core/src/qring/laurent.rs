//! Sparse Laurent polynomials in `v` with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An element of `Z[v, v^-1]`.
///
/// Terms are kept in a sorted exponent map and zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial<T: Into<BigInt>>(c: T, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, T>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d` in `Z[v, v^-1]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Work with ordinary polynomials: strip the lowest powers of v.
        let d_lo = d.min_exp().unwrap();
        let d_hi = d.max_exp().unwrap();
        let dv: Vec<BigInt> = (d_lo..=d_hi).map(|e| d.coeff(e)).collect();
        let n_lo = self.min_exp().unwrap();
        let n_hi = self.max_exp().unwrap();
        let mut nv: Vec<BigInt> = (n_lo..=n_hi).map(|e| self.coeff(e)).collect();
        if nv.len() < dv.len() {
            return None;
        }
        let lead = dv.last().unwrap().clone();
        let qlen = nv.len() - dv.len() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &nv[k + dv.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (qq, rr) = top.div_rem(&lead);
            if !rr.is_zero() {
                return None;
            }
            for (j, dj) in dv.iter().enumerate() {
                nv[k + j] -= &qq * dj;
            }
            q[k] = qq;
        }
        if nv.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_terms(
            q.into_iter()
                .enumerate()
                .map(|(k, c)| (n_lo - d_lo + k as i64, c)),
        ))
    }

    /// Value at an integer point `v = x` (exact rational when exponents are negative).
    pub fn eval_i64(&self, x: i64) -> num_rational::BigRational {
        use num_rational::BigRational;
        let xb = BigRational::from_integer(BigInt::from(x));
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let base = if e >= 0 {
                num_traits::pow(xb.clone(), e as usize)
            } else {
                num_traits::pow(xb.recip(), (-e) as usize)
            };
            acc += base * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// The polynomial with `v` replaced by `v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Writes `c*x^e` terms, exponents descending, joined by `" + "`.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, var: &str, terms: I) -> fmt::Result
where
    I: Iterator<Item = (i64, &'a BigInt)>,
{
    let mut first = true;
    for (e, c) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        if e == 0 {
            write!(f, "{c}")?;
            continue;
        }
        let mono = if e == 1 {
            var.to_string()
        } else {
            format!("{var}^{e}")
        };
        if c.is_one() {
            f.write_str(&mono)?;
        } else if c.is_negative() && c.abs().is_one() {
            write!(f, "-{mono}")?;
        } else {
            write!(f, "{c}*{mono}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "v", self.terms.iter().rev().map(|(e, c)| (*e, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zeros() {
        let p = LaurentPoly::from_terms([(2, 1), (2, -1), (0, 3)]);
        assert_eq!(p, LaurentPoly::constant(3));
        assert_eq!(p.num_terms(), 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_matches_golden_form() {
        let p = LaurentPoly::from_terms([(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]);
        assert_eq!(p.to_string(), "v^4 + v^2 + 2 + v^-2 + v^-4");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let q = LaurentPoly::from_terms([(1, 1), (-1, -1), (-3, 3)]);
        assert_eq!(q.to_string(), "v + -v^-1 + 3*v^-3");
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        let b = LaurentPoly::from_terms([(3, 2), (0, -1), (-2, 5)]);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a));
        assert_eq!(b.div_exact(&LaurentPoly::constant(2)), None);
        assert_eq!(LaurentPoly::zero().div_exact(&b), Some(LaurentPoly::zero()));
    }

    #[test]
    fn pow_and_bar() {
        let a = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        let a3 = a.pow(3);
        assert_eq!(a3, LaurentPoly::from_terms([(3, 1), (1, 3), (-1, 3), (-3, 1)]));
        assert_eq!(a3.bar(), a3);
        assert_eq!(LaurentPoly::v_pow(2).bar(), LaurentPoly::v_pow(-2));
    }
}
