//! Quantum integers and Gaussian binomials over `Z[v, v^-1]`, plus classical
//! binomials with an arbitrary integer top.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;

/// `[i] = (v^i - v^-i) / (v - v^-1)`.
pub fn quantum_int(i: i64) -> LaurentPoly {
    let num = &LaurentPoly::v_pow(i) - &LaurentPoly::v_pow(-i);
    let den = &LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1);
    num.div_exact(&den)
        .expect("v - v^-1 divides v^i - v^-i")
}

/// `[t]! = [1][2]...[t]`.
pub fn quantum_factorial(t: u32) -> LaurentPoly {
    (1..=t as i64).fold(LaurentPoly::one(), |acc, i| &acc * &quantum_int(i))
}

/// Coefficients (ascending in `q`) of the ordinary Gaussian polynomial
/// `prod_{s=1..t} (1 - q^{n-t+s}) / (1 - q^s)` for `0 <= t <= n`.
///
/// Every partial product is itself a Gaussian polynomial, so each division by
/// `1 - q^s` is exact and is done by the recurrence `Q_j = P_j + Q_{j-s}`.
fn gaussian_q_coeffs(n: u64, t: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for s in 1..=t {
        let a = (n - t + s) as usize;
        // multiply by (1 - q^a)
        let mut next = vec![BigInt::zero(); p.len() + a];
        for (j, c) in p.iter().enumerate() {
            next[j] += c;
            next[j + a] -= c;
        }
        // divide by (1 - q^s)
        let s = s as usize;
        let qlen = next.len() - s;
        let mut q = vec![BigInt::zero(); qlen];
        for j in 0..qlen {
            let mut c = next[j].clone();
            if j >= s {
                c += &q[j - s];
            }
            q[j] = c;
        }
        debug_assert!({
            let mut ok = true;
            for j in qlen..next.len() {
                let mut c = next[j].clone();
                if j >= s && j - s < qlen {
                    c += &q[j - s];
                }
                ok &= c.is_zero();
            }
            ok
        });
        p = q;
    }
    p
}

/// The Gaussian binomial `[N over t]` for any integer `N` and `t >= 0`.
///
/// Negative tops go through `[N over t] = (-1)^t [t - N - 1 over t]`; nonnegative
/// tops use the balanced form `v^{-t(N-t)} G(v^2)` of the Gaussian polynomial.
pub fn gauss_binom(n: i64, t: i64) -> LaurentPoly {
    assert!(t >= 0, "gauss_binom needs t >= 0");
    if t == 0 {
        return LaurentPoly::one();
    }
    if n < 0 {
        let b = gauss_binom(t - n - 1, t);
        return if t % 2 == 0 { b } else { -b };
    }
    if t > n {
        return LaurentPoly::zero();
    }
    let shift = -t * (n - t);
    let coeffs = gaussian_q_coeffs(n as u64, t as u64);
    LaurentPoly::from_terms(
        coeffs
            .into_iter()
            .enumerate()
            .map(|(j, c)| (shift + 2 * j as i64, c)),
    )
}

/// `[N][N-1]...[N-t+1] / [t]!` evaluated literally by exact division.
pub fn gauss_binom_product(n: i64, t: i64) -> LaurentPoly {
    assert!(t >= 0);
    let num = (0..t).fold(LaurentPoly::one(), |acc, s| &acc * &quantum_int(n - s));
    num.div_exact(&quantum_factorial(t as u32))
        .expect("[t]! divides the falling quantum product")
}

/// Ordinary binomial `m(m-1)...(m-s+1)/s!` for integer `m`.
pub fn classical_binom_int(m: i64, s: i64) -> BigInt {
    assert!(s >= 0);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..s {
        num *= BigInt::from(m - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_int_small_values() {
        assert!(quantum_int(0).is_zero());
        assert_eq!(quantum_int(1), LaurentPoly::one());
        assert_eq!(
            quantum_int(2),
            LaurentPoly::from_terms([(1, 1), (-1, 1)])
        );
        for i in 1..=5 {
            assert_eq!(quantum_int(-i), -quantum_int(i));
        }
    }

    #[test]
    fn gauss_binom_examples() {
        for n in -4..6 {
            assert!(gauss_binom(n, 0).is_one());
        }
        assert_eq!(
            gauss_binom(4, 2),
            LaurentPoly::from_terms([(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert!(gauss_binom(2, 3).is_zero());
    }

    #[test]
    fn negative_top_identity() {
        for b in 0..=6i64 {
            for a in 0..=6i64 {
                let lhs = gauss_binom_product(-b, a);
                let sign = if a % 2 == 0 { 1 } else { -1 };
                let rhs = gauss_binom_product(b + a - 1, a).scale(&BigInt::from(sign));
                assert_eq!(lhs, rhs, "b={b} a={a}");
                assert_eq!(gauss_binom(-b, a), lhs);
            }
        }
    }

    #[test]
    fn fast_route_agrees_with_product_route() {
        for n in -7..=12 {
            for t in 0..=8 {
                assert_eq!(gauss_binom(n, t), gauss_binom_product(n, t), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn pascal_consistency() {
        for n in -5..=8i64 {
            for t in 1..=8i64 {
                let lhs = gauss_binom_product(n, t);
                let rhs = &gauss_binom_product(n - 1, t).shift(t)
                    + &gauss_binom_product(n - 1, t - 1).shift(t - n);
                assert_eq!(lhs, rhs, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn classical_binom_values() {
        assert_eq!(classical_binom_int(5, 2), BigInt::from(10));
        assert_eq!(classical_binom_int(7, 0), BigInt::from(1));
        for s in 0..8 {
            let want = if s % 2 == 0 { 1 } else { -1 };
            assert_eq!(classical_binom_int(-1, s), BigInt::from(want));
        }
        assert_eq!(classical_binom_int(-3, 2), BigInt::from(6));
        assert_eq!(classical_binom_int(2, 5), BigInt::from(0));
    }
}
