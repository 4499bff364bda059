//! Exact linear algebra over `Q` and `Z`.
//!
//! Everything here works on plain `Vec<Vec<_>>` row-major matrices; the
//! matrices in this crate are small (at most a few hundred rows) and dense
//! storage keeps the routines easy to audit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Q;

pub type QMatrix = Vec<Vec<Q>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn to_q(m: &[Vec<BigInt>]) -> QMatrix {
    m.iter()
        .map(|row| row.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect()
}

/// Reduced row echelon form. Returns the non-zero rows and their pivot columns.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> (QMatrix, Vec<usize>) {
    let mut m: QMatrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> QMatrix {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Coordinates of `p` in terms of `vectors` when they are linearly
/// independent and `p` lies in their span.
pub fn coordinates(vectors: &[Vec<Q>], p: &[Q]) -> Option<Vec<Q>> {
    let dim = p.len();
    let k = vectors.len();
    let a: QMatrix = (0..dim)
        .map(|i| (0..k).map(|j| vectors[j][i].clone()).collect())
        .collect();
    solve(&a, p, k)
}

pub fn inverse(m: &[Vec<Q>]) -> Option<QMatrix> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn det_q(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: QMatrix = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn det_z(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Column-style Hermite reduction of a `d x n` integer matrix `t`.
///
/// Returns a unimodular `n x n` matrix `u` with `t * u = [h | 0]`, where `h`
/// is lower triangular with non-negative diagonal. The rows of `t` extend to
/// a lattice basis exactly when every diagonal entry of `h` equals one.
pub fn column_hermite(t: &[Vec<BigInt>], n: usize) -> (ZMatrix, ZMatrix) {
    let d = t.len();
    let mut a = t.to_vec();
    let mut u: ZMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    // column op helpers operate simultaneously on `a` and `u`
    let col_combine = |m: &mut ZMatrix, i: usize, j: usize, c: [&BigInt; 4]| {
        for row in m.iter_mut() {
            let x = row[i].clone();
            let y = row[j].clone();
            row[i] = c[0] * &x + c[1] * &y;
            row[j] = c[2] * &x + c[3] * &y;
        }
    };
    for r in 0..d.min(n) {
        for c in r + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let x = a[r][r].clone();
            let y = a[r][c].clone();
            let e = x.extended_gcd(&y);
            // [x y] * [[s, -y/g], [t, x/g]] = [g, 0]
            let yg = -(&y / &e.gcd);
            let xg = &x / &e.gcd;
            col_combine(&mut a, r, c, [&e.x, &e.y, &yg, &xg]);
            col_combine(&mut u, r, c, [&e.x, &e.y, &yg, &xg]);
        }
        if a[r][r].is_negative() {
            for m in [&mut a, &mut u] {
                for row in m.iter_mut() {
                    row[r] = -row[r].clone();
                }
            }
        }
    }
    (a, u)
}

/// `true` when the integer row vectors are part of a basis of `Z^n`.
pub fn is_lattice_basis_part(rows: &[Vec<BigInt>], n: usize) -> bool {
    if rows.len() > n {
        return false;
    }
    let (h, _) = column_hermite(rows, n);
    (0..rows.len()).all(|i| h[i][i].is_one())
}

/// Matrix of `q x q` minors of `a` (rows and columns indexed by sorted
/// `q`-subsets in lexicographic order), i.e. the matrix of the induced map
/// on `q`-th exterior powers.
pub fn exterior_power(a: &[Vec<Q>], ncols: usize, q: usize) -> QMatrix {
    let row_sets = subsets(a.len(), q);
    let col_sets = subsets(ncols, q);
    row_sets
        .iter()
        .map(|rs| {
            col_sets
                .iter()
                .map(|cs| {
                    let minor: QMatrix = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect())
                        .collect();
                    det_q(&minor)
                })
                .collect()
        })
        .collect()
}

/// All `k`-subsets of `0..n`, lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Inertia of a symmetric rational matrix by congruence diagonalization.
///
/// Non-zero diagonal entries are used as pivots. When the remaining diagonal
/// is identically zero but an off-diagonal entry `a` is not, the pair is
/// eliminated as the hyperbolic block `[[0, a], [a, 0]]`, which contributes
/// one positive and one negative square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

pub fn inertia(m: &[Vec<Q>]) -> Inertia {
    let mut a: QMatrix = m.to_vec();
    let mut alive: Vec<usize> = (0..a.len()).collect();
    let mut res = Inertia { positive: 0, negative: 0, zero: 0 };
    while !alive.is_empty() {
        if let Some(pos) = alive.iter().position(|&i| !a[i][i].is_zero()) {
            let p = alive.swap_remove(pos);
            let d = a[p][p].clone();
            if d.is_positive() {
                res.positive += 1;
            } else {
                res.negative += 1;
            }
            for &i in &alive {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = &a[i][p] / &d;
                for &j in &alive {
                    let t = &f * &a[p][j];
                    a[i][j] -= t;
                }
            }
            continue;
        }
        let pair = alive.iter().enumerate().find_map(|(x, &i)| {
            alive[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            res.zero += alive.len();
            break;
        };
        alive.retain(|&k| k != i && k != j);
        let off = a[i][j].clone();
        for &k in &alive {
            for &l in &alive {
                let t = (&a[k][i] * &a[l][j] + &a[k][j] * &a[l][i]) / &off;
                a[k][l] -= t;
            }
        }
        res.positive += 1;
        res.negative += 1;
    }
    res
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect()
    }

    fn zm(rows: &[&[i64]]) -> ZMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Q = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, qm(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&qm(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn determinants_agree() {
        let z = zm(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(det_z(&z), BigInt::from(-90));
        assert_eq!(det_q(&to_q(&z)), Q::from_integer((-90).into()));
        assert_eq!(det_z(&zm(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }

    #[test]
    fn hermite_completion() {
        let t = zm(&[&[1, 1, 0]]);
        let (h, u) = column_hermite(&t, 3);
        assert_eq!(h[0], vec![BigInt::one(), BigInt::zero(), BigInt::zero()]);
        assert!(det_z(&u).abs().is_one());
        assert!(is_lattice_basis_part(&t, 3));
        assert!(!is_lattice_basis_part(&zm(&[&[2, 0]]), 2));
        assert!(!is_lattice_basis_part(&zm(&[&[1, 1], &[1, -1]]), 2));
    }

    #[test]
    fn hyperbolic_block_inertia() {
        let h = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(inertia(&h).signature(), 0);
        let m = qm(&[&[-1, 0, 0], &[0, 0, 2], &[0, 2, 0]]);
        let i = inertia(&m);
        assert_eq!((i.positive, i.negative, i.zero), (1, 2, 0));
    }

    #[test]
    fn exterior_square_of_identity_is_identity() {
        let id = qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(exterior_power(&id, 3, 2), id);
    }
}
