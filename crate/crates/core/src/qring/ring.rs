//! The coefficient-ring abstraction the multiplication engine is generic over.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use super::laurent::LaurentPoly;
use super::quantum::gauss_binom;

/// A commutative ring that `Z[v, v^-1]` maps into.
///
/// Elements are plain values; all structure (moduli, tables, caches) lives in
/// the ring object, which is cheap to clone and safe to share across threads.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, c: &BigInt) -> Self::Elem;
    /// Image of a Laurent polynomial under `v -> (image of v)`.
    fn from_laurent(&self, p: &LaurentPoly) -> Self::Elem;
    /// Image of `v^e`.
    fn v_pow(&self, e: i64) -> Self::Elem;
    /// Image of the Gaussian binomial `[n over t]`.
    fn qbinom(&self, n: i64, t: i64) -> Self::Elem;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Short machine-readable description used in JSON reports.
    fn describe(&self) -> serde_json::Value;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_int(&self, c: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(c))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    /// `(l p^{h-1}, l' p^{h-1})` for a specialization; `None` for generic `v`.
    fn level(&self) -> Option<(i64, i64)> {
        None
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// `Z[v, v^-1]` itself: generic `v`, no specialization.
#[derive(Clone, Debug, Default)]
pub struct Generic {
    binoms: Arc<RwLock<HashMap<(i64, i64), LaurentPoly>>>,
}

impl Generic {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Ring for Generic {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn from_bigint(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::constant(c.clone())
    }
    fn from_laurent(&self, p: &LaurentPoly) -> LaurentPoly {
        p.clone()
    }
    fn v_pow(&self, e: i64) -> LaurentPoly {
        LaurentPoly::v_pow(e)
    }
    fn qbinom(&self, n: i64, t: i64) -> LaurentPoly {
        if let Some(b) = self.binoms.read().unwrap().get(&(n, t)) {
            return b.clone();
        }
        let b = gauss_binom(n, t);
        self.binoms.write().unwrap().insert((n, t), b.clone());
        b
    }
    fn format_elem(&self, a: &LaurentPoly) -> String {
        a.to_string()
    }
    fn describe(&self) -> serde_json::Value {
        serde_json::json!({ "kind": "generic" })
    }
}
