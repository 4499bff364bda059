//! Exact feasibility of small linear systems by Fourier–Motzkin elimination.

use num_traits::{Signed, Zero};

use crate::linalg::rref;
use crate::Q;

/// An inequality `coeffs · z <= bound`.
#[derive(Debug, Clone, PartialEq)]
struct Ineq {
    coeffs: Vec<Q>,
    bound: Q,
}

impl Ineq {
    /// Scale so the first non-zero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(c) = self.coeffs.iter().find(|c| !c.is_zero()).map(Q::abs) {
            for x in &mut self.coeffs {
                *x /= &c;
            }
            self.bound /= c;
        }
        self
    }
}

/// Decide whether `{ z >= 0 : A z = b }` is non-empty.
///
/// The equalities are solved first, so elimination only runs over the free
/// variables of the system.
pub fn nonneg_feasible(a: &[Vec<Q>], b: &[Q], nvars: usize) -> bool {
    let aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, nvars + 1);
    if pivots.last() == Some(&nvars) {
        return false;
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    // z_f >= 0  ->  -z_f <= 0
    let mut ineqs: Vec<Ineq> = (0..free.len())
        .map(|i| {
            let mut coeffs = vec![Q::zero(); free.len()];
            coeffs[i] = Q::from_integer((-1).into());
            Ineq { coeffs, bound: Q::zero() }
        })
        .collect();
    // z_p = rhs - sum row[f] z_f >= 0  ->  sum row[f] z_f <= rhs
    for row in &r {
        ineqs.push(Ineq {
            coeffs: free.iter().map(|&f| row[f].clone()).collect(),
            bound: row[nvars].clone(),
        });
    }
    fourier_motzkin(ineqs, free.len())
}

fn fourier_motzkin(mut ineqs: Vec<Ineq>, nvars: usize) -> bool {
    for v in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in ineqs {
            if q.coeffs[v].is_positive() {
                pos.push(q);
            } else if q.coeffs[v].is_negative() {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for p in &pos {
            for n in &neg {
                let (cp, cn) = (p.coeffs[v].clone(), -n.coeffs[v].clone());
                let coeffs: Vec<Q> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(x, y)| x * &cn + y * &cp)
                    .collect();
                let bound = &p.bound * &cn + &n.bound * &cp;
                let q = Ineq { coeffs, bound }.normalized();
                if !rest.contains(&q) {
                    rest.push(q);
                }
            }
        }
        ineqs = rest;
        if ineqs.iter().any(|q| q.coeffs.iter().all(Q::is_zero) && q.bound.is_negative()) {
            return false;
        }
    }
    ineqs.iter().all(|q| !q.bound.is_negative())
}
