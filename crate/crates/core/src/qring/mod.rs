//! Exact arithmetic in `Z[v, v^-1]` and its specializations at a root of unity.

mod field;
mod laurent;
mod quantum;
mod ring;

pub use field::{cyclotomic, eval_at_eps, make_ring, RingElem, RingMode, RingSpec};
pub use laurent::LaurentPoly;
pub use quantum::{classical_binom_int, gauss_binom, gauss_binom_product, quantum_factorial, quantum_int};
pub use ring::{Field, Generic, Ring};

use crate::error::{Error, Result};

/// Which formula evaluates a Gaussian binomial at the root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomRoute {
    /// Specialize the generic Gaussian binomial.
    Direct,
    /// Split top and bottom `l`-adically: `m = m0 + l m1`, `t = t0 + l t1`.
    Ladic,
}

/// `[n over t]_e` by the chosen route.
///
/// The l-adic route is only valid for `0 <= t <= n`.
pub fn qbinom_at_eps(n: i64, t: i64, ring: &RingSpec, via: BinomRoute) -> Result<RingElem> {
    if t < 0 {
        return Err(Error::InvalidParams(format!("t = {t} must be nonnegative")));
    }
    match via {
        BinomRoute::Direct => Ok(ring.qbinom(n, t)),
        BinomRoute::Ladic => {
            if t > n {
                return Err(Error::InvalidParams(format!(
                    "l-adic route needs 0 <= t <= n, got n={n} t={t}"
                )));
            }
            let l = ring.l() as i64;
            let (m1, m0) = (n.div_euclid(l), n.rem_euclid(l));
            let (t1, t0) = (t.div_euclid(l), t.rem_euclid(l));
            let sign_exp = l * (t1 * l - t1 * m0 - t * m1);
            let small = ring.qbinom(m0, t0);
            let big = ring.from_bigint(&classical_binom_int(m1, t1));
            Ok(ring.mul(&ring.v_pow(sign_exp), &ring.mul(&small, &big)))
        }
    }
}

/// Ordinary binomial `(m over s)` with integer top, mapped into `k`.
pub fn classical_binom(m: i64, s: i64, ring: &RingSpec) -> Result<RingElem> {
    if s < 0 {
        return Err(Error::InvalidParams(format!("s = {s} must be nonnegative")));
    }
    Ok(ring.from_bigint(&classical_binom_int(m, s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(lp: u64, p: u64, h: u32) -> RingSpec {
        make_ring(lp, p, h, RingMode::Auto).unwrap()
    }

    #[test]
    fn qbinom_examples() {
        for p in [2, 0] {
            let k = ring(3, p, 1);
            let b = qbinom_at_eps(4, 3, &k, BinomRoute::Direct).unwrap();
            assert!(k.is_one(&b), "p={p}");
            assert!(k.is_zero(&qbinom_at_eps(3, 1, &k, BinomRoute::Direct).unwrap()));
            assert!(k.is_one(&qbinom_at_eps(4, 3, &k, BinomRoute::Ladic).unwrap()));
        }
        let k = ring(4, 3, 1);
        let b = qbinom_at_eps(3, 1, &k, BinomRoute::Direct).unwrap();
        assert_eq!(b, k.from_int(-1));
    }

    #[test]
    fn ladic_rejects_t_above_n() {
        let k = ring(3, 2, 1);
        assert!(qbinom_at_eps(2, 3, &k, BinomRoute::Ladic).is_err());
        assert!(qbinom_at_eps(-2, 1, &k, BinomRoute::Ladic).is_err());
        assert!(qbinom_at_eps(-2, 1, &k, BinomRoute::Direct).is_ok());
    }

    #[test]
    fn classical_binom_examples() {
        let k = ring(5, 3, 2);
        assert!(k.is_one(&classical_binom(7, 0, &k).unwrap()));
        assert_eq!(classical_binom(5, 2, &k).unwrap(), classical_binom(2, 2, &k).unwrap());
        assert!(k.is_one(&classical_binom(5, 2, &k).unwrap()));
        for s in 0..6 {
            let want = if s % 2 == 0 { k.one() } else { k.from_int(-1) };
            assert_eq!(classical_binom(-1, s, &k).unwrap(), want);
        }
    }
}
