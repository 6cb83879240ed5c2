//! Generator words and the factor orderings tried by the triangular decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::indices::MatIdx;

/// One factor of a generator word. Indices are 0-based (`E_i` raises row `i+1` into row `i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    E { i: usize, m: i64 },
    F { i: usize, m: i64 },
    /// The idempotent `[diag(lambda)]`: keeps terms with row sums `lambda`.
    Idem(Vec<i64>),
}

/// A product of atoms, written left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenWord {
    pub atoms: Vec<Atom>,
}

impl GenWord {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Largest divided-power exponent in the word.
    pub fn max_exponent(&self) -> i64 {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::E { m, .. } | Atom::F { m, .. } => *m,
                Atom::Idem(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("1");
        }
        for (k, a) in self.atoms.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match a {
                Atom::E { i, m } => write!(f, "E{}^({m})", i + 1)?,
                Atom::F { i, m } => write!(f, "F{}^({m})", i + 1)?,
                Atom::Idem(l) => {
                    let s: Vec<String> = l.iter().map(i64::to_string).collect();
                    write!(f, "1[{}]", s.join(","))?
                }
            }
        }
        Ok(())
    }
}

/// Traversal of the strictly upper entries `(i, j)` of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct EntryOrder {
    pub cols_ascending: bool,
    pub rows_ascending: bool,
}

pub(crate) const ORDERS: [EntryOrder; 4] = [
    EntryOrder {
        cols_ascending: true,
        rows_ascending: true,
    },
    EntryOrder {
        cols_ascending: true,
        rows_ascending: false,
    },
    EntryOrder {
        cols_ascending: false,
        rows_ascending: true,
    },
    EntryOrder {
        cols_ascending: false,
        rows_ascending: false,
    },
];

/// Divided powers creating the upper part of `u`, in the order they act:
/// entry `(i, j)` is carried up column `j` by `E_{j-1}, ..., E_i`.
pub(crate) fn raising_sequence(u: &MatIdx, ord: EntryOrder) -> Vec<(usize, i64)> {
    let n = u.n();
    let mut cols: Vec<usize> = (1..n).collect();
    if !ord.cols_ascending {
        cols.reverse();
    }
    let mut seq = Vec::new();
    for j in cols {
        let mut rows: Vec<usize> = (0..j).collect();
        if !ord.rows_ascending {
            rows.reverse();
        }
        for i in rows {
            let a = u.get(i, j);
            if a == 0 {
                continue;
            }
            for s in (i..j).rev() {
                seq.push((s, a));
            }
        }
    }
    seq
}

/// `E^{(A+)} [diag(lambda)] F^{(A-)}` for the given orderings of the two halves.
pub(crate) fn monomial_word(a: &MatIdx, lambda: &[i64], eo: EntryOrder, fo: EntryOrder) -> GenWord {
    let n = a.n();
    let mut upper = MatIdx::zero(n);
    let mut lower_t = MatIdx::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            upper.set(i, j, a.get(i, j));
            lower_t.set(i, j, a.get(j, i));
        }
    }
    let mut atoms: Vec<Atom> = raising_sequence(&upper, eo)
        .into_iter()
        .rev()
        .map(|(i, m)| Atom::E { i, m })
        .collect();
    atoms.push(Atom::Idem(lambda.to_vec()));
    // transpose reverses products: the lowering half mirrors a raising sequence
    atoms.extend(
        raising_sequence(&lower_t, fo)
            .into_iter()
            .map(|(i, m)| Atom::F { i, m }),
    );
    GenWord::new(atoms)
}
