//! Named fans used as test instances and CLI presets.
//!
//! Names: `p<n>` (projective space), `bl-p2` (P2 subdivided at the cone of
//! its first two rays), `bl-p1p1` (P1xP1 subdivided at the cone of `e1,e2`).
//! Factors joined with `*` form a product fan, and `p1xp2` is accepted as a
//! shorthand for `p1*p2`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, LatticeVector};
use crate::linalg::subsets;
use crate::subdivision;

/// The fan of projective space: rays `e_1..e_n` and `-(e_1+..+e_n)`, every
/// `n`-subset of rays spanning a maximal cone.
pub fn projective(n: usize) -> Fan {
    let mut rays: Vec<LatticeVector> = (0..n)
        .map(|i| LatticeVector((0..n).map(|j| BigInt::from(i32::from(i == j))).collect()))
        .collect();
    if n > 0 {
        rays.push(LatticeVector(vec![BigInt::from(-1); n]));
    }
    let max_cones = if n == 0 { vec![vec![]] } else { subsets(n + 1, n) };
    Fan::new(n, rays, max_cones).expect("projective fan is valid")
}

/// Product fan: rays of `f` followed by rays of `g`, cones all joins.
pub fn product(f: &Fan, g: &Fan) -> Fan {
    let (n, m) = (f.rank(), g.rank());
    let pad = |v: &LatticeVector, before: usize, after: usize| {
        let mut c = vec![BigInt::zero(); before];
        c.extend(v.coords().iter().cloned());
        c.extend(std::iter::repeat_n(BigInt::zero(), after));
        LatticeVector(c)
    };
    let mut rays: Vec<LatticeVector> = f.rays().iter().map(|v| pad(v, 0, m)).collect();
    rays.extend(g.rays().iter().map(|v| pad(v, n, 0)));
    let off = f.num_rays();
    let mut max_cones = Vec::new();
    for a in f.max_cone_lists() {
        for b in g.max_cone_lists() {
            let mut c = a.clone();
            c.extend(b.iter().map(|r| r + off));
            max_cones.push(c);
        }
    }
    Fan::new(n + m, rays, max_cones).expect("product of fans is a fan")
}

pub fn blowup_p2() -> Fan {
    subdivision::regular_star_subdivide(&projective(2), &Cone::new(vec![0, 1]))
        .expect("regular subdivision of P2")
        .0
}

pub fn blowup_p1xp1() -> Fan {
    let p1p1 = product(&projective(1), &projective(1));
    // rays: e1, -e1, e2, -e2
    subdivision::regular_star_subdivide(&p1p1, &Cone::new(vec![0, 2]))
        .expect("regular subdivision of P1xP1")
        .0
}

/// Look up a fan by name.
pub fn by_name(name: &str) -> Result<Fan> {
    let name = name.trim().to_ascii_lowercase();
    let mut factors = Vec::new();
    for part in name.split('*') {
        if part.starts_with('p') && part.contains('x') {
            factors.extend(part.split('x').map(str::to_string));
        } else {
            factors.push(part.to_string());
        }
    }
    let mut acc: Option<Fan> = None;
    for f in factors {
        let fan = factor(&f).ok_or_else(|| Error::UnknownName(name.clone()))?;
        acc = Some(match acc {
            None => fan,
            Some(a) => product(&a, &fan),
        });
    }
    acc.ok_or(Error::UnknownName(name))
}

fn factor(s: &str) -> Option<Fan> {
    match s {
        "bl-p2" => Some(blowup_p2()),
        "bl-p1p1" => Some(blowup_p1xp1()),
        _ => {
            let n: usize = s.strip_prefix('p')?.parse().ok()?;
            (n <= 8).then(|| projective(n))
        }
    }
}

/// Fans used by the test suites, with display names.
pub fn standard(max_rank: usize) -> Vec<(&'static str, Fan)> {
    let all: [&'static str; 14] = [
        "p0", "p1", "p2", "p1xp1", "bl-p2", "bl-p1p1", "p3", "p1xp2", "p1xp1xp1", "p1*bl-p2",
        "p4", "p2xp2", "p1xp3", "bl-p1p1*bl-p1p1",
    ];
    all.iter()
        .map(|&n| (n, by_name(n).expect("catalog name")))
        .filter(|(_, f)| f.rank() <= max_rank)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line() {
        let p1 = projective(1);
        assert_eq!(p1.rays(), &[LatticeVector::from_i64(&[1]), LatticeVector::from_i64(&[-1])]);
        let p0 = projective(0);
        assert_eq!(p0.cones().len(), 1);
        assert!(p0.is_complete());
    }

    #[test]
    fn product_of_lines() {
        let f = by_name("p1xp1").unwrap();
        assert_eq!(f.num_rays(), 4);
        assert_eq!(f.maximal_cones().len(), 4);
        assert!(f.is_complete() && f.is_unimodular());
        assert_eq!(by_name("p1*p1").unwrap(), f);
    }

    #[test]
    fn catalog_is_complete_and_unimodular() {
        for (name, f) in standard(4) {
            assert!(f.is_complete(), "{name}");
            assert!(f.is_unimodular(), "{name}");
        }
    }

    #[test]
    fn unknown() {
        assert!(matches!(by_name("q7"), Err(Error::UnknownName(_))));
    }
}
