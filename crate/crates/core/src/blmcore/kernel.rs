//! Left multiplication of a single basis element by a divided-power generator.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::indices::MatIdx;
use crate::qring::Ring;

pub(crate) type Terms<E> = BTreeMap<MatIdx, E>;

pub(crate) fn add_term<R: Ring>(ring: &R, acc: &mut Terms<R::Elem>, a: MatIdx, c: R::Elem) {
    if ring.is_zero(&c) {
        return;
    }
    match acc.entry(a) {
        Entry::Occupied(mut o) => {
            let s = ring.add(o.get(), &c);
            if ring.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Calls `f` on every `t` in `Lambda(n, m)` with `t_u <= caps[u]`.
fn bounded_compositions(caps: &[i64], m: i64, f: &mut impl FnMut(&[i64])) {
    fn rec(u: usize, left: i64, caps: &[i64], tail: &[i64], t: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if u == caps.len() {
            if left == 0 {
                f(t);
            }
            return;
        }
        // the remaining slots must be able to absorb what is left
        let lo = (left - tail[u + 1]).max(0);
        for x in lo..=caps[u].min(left) {
            t[u] = x;
            rec(u + 1, left - x, caps, tail, t, f);
        }
        t[u] = 0;
    }
    let n = caps.len();
    let mut tail = vec![0i64; n + 1];
    for u in (0..n).rev() {
        tail[u] = tail[u + 1] + caps[u];
    }
    if tail[0] < m {
        return;
    }
    let mut t = vec![0i64; n];
    rec(0, m, caps, &tail, &mut t, f);
}

/// `acc += coeff * (E_i^{(m)} . [a])` in `K_n`, with `i` 0-based.
///
/// Sum over `t` in `Lambda(n, m)`, `t_u <= a_{i+1,u}` for `u != i+1`, of
/// `v^beta prod_u [a_{i,u}+t_u over t_u] [a + sum_u t_u (E_{i,u} - E_{i+1,u})]`.
pub(crate) fn e_step_into<R: Ring>(
    ring: &R,
    i: usize,
    m: i64,
    a: &MatIdx,
    coeff: &R::Elem,
    acc: &mut Terms<R::Elem>,
) {
    let n = a.n();
    if m == 0 {
        add_term(ring, acc, a.clone(), coeff.clone());
        return;
    }
    let caps: Vec<i64> = (0..n)
        .map(|u| if u == i + 1 { m } else { a.get(i + 1, u).min(m) })
        .collect();
    let w: Vec<i64> = (0..n)
        .map(|u| (u + 1..n).map(|j| a.get(i, j) - a.get(i + 1, j)).sum())
        .collect();
    bounded_compositions(&caps, m, &mut |t| {
        let mut beta: i64 = 0;
        let mut sq: i64 = 0;
        for u in 0..n {
            beta += t[u] * w[u];
            sq += t[u] * t[u];
        }
        // sum_{u<u'} t_u t_u' = (m^2 - sum t_u^2) / 2
        beta += (m * m - sq) / 2;
        let mut c = ring.mul(coeff, &ring.v_pow(beta));
        for u in 0..n {
            if t[u] > 0 {
                c = ring.mul(&c, &ring.qbinom(a.get(i, u) + t[u], t[u]));
                if ring.is_zero(&c) {
                    return;
                }
            }
        }
        let mut b = a.clone();
        for u in 0..n {
            if t[u] != 0 {
                b.bump(i, u, t[u]);
                b.bump(i + 1, u, -t[u]);
            }
        }
        add_term(ring, acc, b, c);
    });
}

/// `acc += coeff * (F_i^{(m)} . [a])`, through the index-reversal automorphism.
pub(crate) fn f_step_into<R: Ring>(
    ring: &R,
    i: usize,
    m: i64,
    a: &MatIdx,
    coeff: &R::Elem,
    acc: &mut Terms<R::Elem>,
) {
    let n = a.n();
    let mut tmp = Terms::new();
    e_step_into(ring, n - 2 - i, m, &a.reverse(), coeff, &mut tmp);
    for (b, c) in tmp {
        add_term(ring, acc, b.reverse(), c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_respect_caps() {
        let mut seen = Vec::new();
        bounded_compositions(&[1, 3, 0], 2, &mut |t| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![0, 2, 0], vec![1, 1, 0]]);
        let mut count = 0;
        bounded_compositions(&[0, 0], 1, &mut |_| count += 1);
        assert_eq!(count, 0);
    }
}
