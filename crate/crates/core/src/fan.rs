//! Simplicial fans in a lattice: construction and validation, stars, quotient
//! fans, orientation signs, local convexity and conewise-linear functions.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::lp;
use crate::Q;

/// An integer vector of the ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_primitive(&self) -> bool {
        linalg::gcd_all(&self.0).is_one()
    }

    pub fn to_q(&self) -> Vec<Q> {
        self.0.iter().map(|x| Q::from_integer(x.clone())).collect()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A simplicial cone, named by the strictly increasing list of its ray
/// indices. The empty list is the origin cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Self(rays)
    }

    pub fn origin() -> Self {
        Self(Vec::new())
    }

    pub fn ray(r: usize) -> Self {
        Self(vec![r])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn contains_ray(&self, r: usize) -> bool {
        self.0.binary_search(&r).is_ok()
    }

    /// `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains_ray(*r))
    }

    pub fn is_disjoint(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| !other.contains_ray(*r))
    }

    pub fn join(&self, other: &Cone) -> Cone {
        Cone::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn minus(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().copied().filter(|r| !other.contains_ray(*r)).collect())
    }

    /// The facet obtained by deleting the ray at sorted position `pos`.
    pub fn facet_without(&self, pos: usize) -> Cone {
        let mut v = self.0.clone();
        v.remove(pos);
        Cone(v)
    }

    /// All faces, including the origin and the cone itself.
    pub fn faces(&self) -> impl Iterator<Item = Cone> + '_ {
        let d = self.dim();
        (0u64..(1u64 << d)).map(move |mask| {
            Cone((0..d).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&[usize]> for Cone {
    fn from(r: &[usize]) -> Self {
        Cone::new(r.to_vec())
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Flags {
    pub complete: bool,
    pub simplicial: bool,
    pub unimodular: bool,
}

/// A simplicial fan. Immutable once built.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    rays_q: Vec<Vec<Q>>,
    cones: Vec<Cone>,
    index: HashMap<Cone, usize>,
    by_dim: Vec<Vec<usize>>,
    maximal: Vec<usize>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    /// For full-dimensional maximal cones: the inverse of the matrix whose
    /// columns are the primitive ray vectors. Row `i` is the dual basis form
    /// of the `i`-th ray.
    duals: HashMap<usize, QMatrix>,
    flags: Flags,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.cones == other.cones
    }
}

impl Fan {
    /// Build and validate a fan from its rays and maximal cones.
    pub fn new(rank: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.rank() != rank {
                return Err(Error::RayDimension { index: i, rank });
            }
            if !r.is_primitive() {
                return Err(Error::NonPrimitiveRay { index: i });
            }
        }
        let mut seen: HashMap<&LatticeVector, usize> = HashMap::new();
        for (i, r) in rays.iter().enumerate() {
            if let Some(&j) = seen.get(r) {
                return Err(Error::DuplicateRay { first: j, second: i });
            }
            seen.insert(r, i);
        }
        let rays_q: Vec<Vec<Q>> = rays.iter().map(LatticeVector::to_q).collect();

        let mut generators: BTreeSet<Cone> = BTreeSet::new();
        for mc in max_cones {
            let c = Cone::new(mc);
            if c.rays().iter().any(|&r| r >= rays.len()) {
                return Err(Error::UnknownRay { cone: c.rays().to_vec() });
            }
            let vecs: QMatrix = c.rays().iter().map(|&r| rays_q[r].clone()).collect();
            if c.dim() > rank || linalg::rank(&vecs) != c.dim() {
                return Err(Error::NotSimplicial { cone: c.rays().to_vec() });
            }
            generators.insert(c);
        }
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        all.insert(Cone::origin());
        for g in &generators {
            all.extend(g.faces());
        }
        for i in 0..rays.len() {
            if !all.contains(&Cone::ray(i)) {
                return Err(Error::DanglingRay { index: i });
            }
        }
        let cones: Vec<Cone> = all.into_iter().collect();
        let index: HashMap<Cone, usize> =
            cones.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut by_dim = vec![Vec::new(); rank + 1];
        for (i, c) in cones.iter().enumerate() {
            by_dim[c.dim()].push(i);
        }
        let mut facets = vec![Vec::new(); cones.len()];
        let mut cofacets = vec![Vec::new(); cones.len()];
        for (i, c) in cones.iter().enumerate() {
            for pos in 0..c.dim() {
                let f = index[&c.facet_without(pos)];
                facets[i].push(f);
                cofacets[f].push(i);
            }
        }
        let maximal: Vec<usize> = (0..cones.len()).filter(|&i| cofacets[i].is_empty()).collect();

        for (a, &i) in maximal.iter().enumerate() {
            for &j in &maximal[a + 1..] {
                if !meet_properly(&rays_q, &cones[i], &cones[j]) {
                    return Err(Error::OverlappingCones {
                        first: cones[i].rays().to_vec(),
                        second: cones[j].rays().to_vec(),
                    });
                }
            }
        }

        let mut duals = HashMap::new();
        for &m in &maximal {
            if cones[m].dim() == rank {
                let cols: QMatrix = (0..rank)
                    .map(|row| cones[m].rays().iter().map(|&r| rays_q[r][row].clone()).collect())
                    .collect();
                let inv = linalg::inverse(&cols).expect("simplicial cone has independent rays");
                duals.insert(m, inv);
            }
        }

        let unimodular = maximal.iter().all(|&m| {
            let rows: Vec<Vec<BigInt>> =
                cones[m].rays().iter().map(|&r| rays[r].0.clone()).collect();
            linalg::is_lattice_basis_part(&rows, rank)
        });
        let pure = maximal.iter().all(|&m| cones[m].dim() == rank);
        let closed = rank == 0 || by_dim[rank - 1].iter().all(|&r| cofacets[r].len() == 2);
        let flags = Flags { complete: pure && closed, simplicial: true, unimodular };

        Ok(Self { rank, rays, rays_q, cones, index, by_dim, maximal, facets, cofacets, duals, flags })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rank: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self> {
        Self::new(
            rank,
            rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray_q(&self, r: usize) -> &[Q] {
        &self.rays_q[r]
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, id: usize) -> &Cone {
        &self.cones[id]
    }

    pub fn cone_id(&self, c: &Cone) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &Cone) -> bool {
        self.index.contains_key(c)
    }

    pub fn require(&self, c: &Cone) -> Result<usize> {
        self.cone_id(c).ok_or_else(|| Error::ConeNotInFan { cone: c.rays().to_vec() })
    }

    pub fn cones_of_dim(&self, d: usize) -> &[usize] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn maximal_cones(&self) -> &[usize] {
        &self.maximal
    }

    pub fn facets_of(&self, id: usize) -> &[usize] {
        &self.facets[id]
    }

    pub fn cofacets_of(&self, id: usize) -> &[usize] {
        &self.cofacets[id]
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn is_complete(&self) -> bool {
        self.flags.complete
    }

    pub fn is_unimodular(&self) -> bool {
        self.flags.unimodular
    }

    /// Number of cones of each dimension `0..=rank`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Dual-basis forms of a full-dimensional maximal cone (row `i` belongs
    /// to the `i`-th ray of the cone).
    pub fn dual_basis(&self, max_cone: usize) -> Option<&QMatrix> {
        self.duals.get(&max_cone)
    }

    /// Coordinates of `p` with respect to the rays of the cone, if `p` lies in
    /// its linear span.
    pub fn cone_coordinates(&self, id: usize, p: &[Q]) -> Option<Vec<Q>> {
        if let Some(d) = self.duals.get(&id) {
            return Some(d.iter().map(|row| dot(row, p)).collect());
        }
        let vecs: QMatrix = self.cones[id].rays().iter().map(|&r| self.rays_q[r].clone()).collect();
        linalg::coordinates(&vecs, p)
    }

    /// `(Star(τ), [Star(τ)], ∂Star(τ))` as lists of cone ids.
    pub fn star_sets(&self, tau: &Cone) -> Result<StarSets> {
        self.require(tau)?;
        let star: Vec<usize> =
            (0..self.cones.len()).filter(|&i| tau.is_face_of(&self.cones[i])).collect();
        let mut closure: BTreeSet<usize> = BTreeSet::new();
        for &s in &star {
            for f in self.cones[s].faces() {
                closure.insert(self.index[&f]);
            }
        }
        let boundary = closure.iter().copied().filter(|i| !star.contains(i)).collect();
        Ok(StarSets { star, closure: closure.into_iter().collect(), boundary })
    }

    /// Sign of the facet `tau` in the boundary of `sigma`: `(-1)^k` where `k`
    /// is the sorted position of the ray of `sigma` missing from `tau`.
    pub fn incidence_sign(&self, sigma: &Cone, tau: &Cone) -> Result<i32> {
        if sigma.dim() != tau.dim() + 1 || !tau.is_face_of(sigma) {
            return Err(Error::NotAFacet(format!("{tau} in {sigma}")));
        }
        let k = (0..sigma.dim())
            .find(|&k| !tau.contains_ray(sigma.rays()[k]))
            .expect("facet misses one ray");
        Ok(if k % 2 == 0 { 1 } else { -1 })
    }

    /// The quotient fan of `Star(τ)` in `V / Span(τ)` together with the map
    /// from original ray indices to quotient ray indices.
    pub fn quotient_star(&self, tau: &Cone) -> Result<QuotientStar> {
        if !self.flags.unimodular {
            return Err(Error::NonUnimodular);
        }
        self.require(tau)?;
        let n = self.rank;
        let d = tau.dim();
        let t: Vec<Vec<BigInt>> = tau.rays().iter().map(|&r| self.rays[r].0.clone()).collect();
        let (_, u) = linalg::column_hermite(&t, n);
        let project = |v: &LatticeVector| -> LatticeVector {
            LatticeVector((d..n).map(|j| (0..n).map(|i| &v.0[i] * &u[i][j]).sum()).collect())
        };
        let star = self.star_sets(tau)?.star;
        let mut ray_map: Vec<(usize, usize)> = Vec::new();
        for &s in &star {
            let c = &self.cones[s];
            if c.dim() == d + 1 {
                let r = c.minus(tau).rays()[0];
                ray_map.push((r, 0));
            }
        }
        ray_map.sort_unstable();
        let mut rays = Vec::new();
        for (k, (r, q)) in ray_map.iter_mut().enumerate() {
            *q = k;
            let img = project(&self.rays[*r]);
            if !img.is_primitive() {
                return Err(Error::ImagePrimitivityViolation { index: *r });
            }
            rays.push(img);
        }
        let lookup: HashMap<usize, usize> = ray_map.iter().copied().collect();
        let max_cones: Vec<Vec<usize>> = star
            .iter()
            .filter(|&&s| self.cofacets[s].is_empty())
            .map(|&s| self.cones[s].minus(tau).rays().iter().map(|r| lookup[r]).collect())
            .collect();
        let fan = Fan::new(n - d, rays, max_cones)?;
        Ok(QuotientStar { fan, ray_map })
    }

    pub fn quotient_star_fan(&self, tau: &Cone) -> Result<Fan> {
        Ok(self.quotient_star(tau)?.fan)
    }

    /// `|Star(σ)|` is convex: every boundary facet of the maximal cones of the
    /// star spans a supporting hyperplane of the rays of `[Star(σ)]`.
    pub fn is_star_support_convex(&self, sigma: &Cone) -> Result<bool> {
        if !self.flags.complete {
            return Err(Error::NotComplete);
        }
        let sets = self.star_sets(sigma)?;
        let n = self.rank;
        let tops: Vec<usize> =
            sets.star.iter().copied().filter(|&s| self.cones[s].dim() == n).collect();
        let closure_rays: Vec<usize> = sets
            .closure
            .iter()
            .filter(|&&c| self.cones[c].dim() == 1)
            .map(|&c| self.cones[c].rays()[0])
            .collect();
        let mut facet_count: HashMap<usize, Vec<usize>> = HashMap::new();
        for &t in &tops {
            for &f in &self.facets[t] {
                facet_count.entry(f).or_default().push(t);
            }
        }
        for (f, owners) in facet_count {
            if owners.len() != 1 {
                continue;
            }
            let facet = &self.cones[f];
            let rows: QMatrix = facet.rays().iter().map(|&r| self.rays_q[r].clone()).collect();
            let normal = linalg::nullspace(&rows, n).pop().expect("facet spans a hyperplane");
            let apex = self.cones[owners[0]].minus(facet).rays()[0];
            let side = dot(&normal, &self.rays_q[apex]);
            for &r in &closure_rays {
                let s = dot(&normal, &self.rays_q[r]);
                if (s * &side).is_negative() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_locally_convex(&self) -> Result<bool> {
        if !self.flags.complete {
            return Err(Error::NotComplete);
        }
        for c in &self.cones {
            if !self.is_star_support_convex(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Value of a conewise-linear function at a rational point.
    pub fn pl_evaluate(&self, f: &PlFunction, p: &[Q]) -> Result<Q> {
        let id = self.locate(p).ok_or(Error::PointOutsideSupport)?;
        Ok(self.pl_evaluate_in(f, id, p).expect("located cone contains the point"))
    }

    /// Evaluate using the linear piece of a specific cone; `None` if the point
    /// is not in that cone.
    pub fn pl_evaluate_in(&self, f: &PlFunction, cone: usize, p: &[Q]) -> Option<Q> {
        let coords = self.cone_coordinates(cone, p)?;
        if coords.iter().any(Q::is_negative) {
            return None;
        }
        Some(self.cones[cone].rays().iter().zip(&coords).map(|(&r, c)| c * &f.values[r]).sum())
    }

    /// A maximal cone containing `p`.
    pub fn locate(&self, p: &[Q]) -> Option<usize> {
        self.maximal.iter().copied().find(|&m| {
            self.cone_coordinates(m, p).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
        })
    }

    /// Re-express the fan with its rays permuted: new ray `i` is old ray
    /// `perm[i]`.
    pub fn permute_rays(&self, perm: &[usize]) -> Result<Fan> {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let rays = perm.iter().map(|&p| self.rays[p].clone()).collect();
        let max_cones = self
            .maximal
            .iter()
            .map(|&m| self.cones[m].rays().iter().map(|&r| inv[r]).collect())
            .collect();
        Fan::new(self.rank, rays, max_cones)
    }

    pub fn max_cone_lists(&self) -> Vec<Vec<usize>> {
        self.maximal.iter().map(|&m| self.cones[m].rays().to_vec()).collect()
    }
}

/// Two simplicial cones meet along the cone on their shared rays: there is no
/// common point whose coordinates on the unshared rays of the first cone are
/// not all zero.
fn meet_properly(rays: &[Vec<Q>], a: &Cone, b: &Cone) -> bool {
    let own: Vec<usize> = a.rays().iter().copied().filter(|r| !b.contains_ray(*r)).collect();
    if own.is_empty() {
        return true;
    }
    let n = rays.first().map_or(0, Vec::len);
    let na = a.dim();
    let nvars = na + b.dim();
    let mut rows: QMatrix = (0..n)
        .map(|i| {
            a.rays()
                .iter()
                .map(|&r| rays[r][i].clone())
                .chain(b.rays().iter().map(|&r| -rays[r][i].clone()))
                .collect()
        })
        .collect();
    let mut rhs = vec![Q::zero(); n];
    let norm: Vec<Q> = (0..nvars)
        .map(|k| if k < na && own.contains(&a.rays()[k]) { Q::one() } else { Q::zero() })
        .collect();
    rows.push(norm);
    rhs.push(Q::one());
    !lp::nonneg_feasible(&rows, &rhs, nvars)
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSets {
    pub star: Vec<usize>,
    pub closure: Vec<usize>,
    pub boundary: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct QuotientStar {
    pub fan: Fan,
    /// `(original ray, quotient ray)` pairs, sorted by original ray.
    pub ray_map: Vec<(usize, usize)>,
}

impl QuotientStar {
    pub fn image_of(&self, ray: usize) -> Option<usize> {
        self.ray_map.iter().find(|(r, _)| *r == ray).map(|(_, q)| *q)
    }
}

/// A continuous conewise-linear function on a simplicial fan, stored by its
/// values on the primitive ray vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    pub values: Vec<Q>,
}

impl PlFunction {
    pub fn new(values: Vec<Q>) -> Self {
        Self { values }
    }

    /// The Courant function of a ray: one on its primitive vector, zero on
    /// every other ray.
    pub fn courant(fan: &Fan, ray: usize) -> Self {
        let mut values = vec![Q::zero(); fan.num_rays()];
        values[ray] = Q::one();
        Self { values }
    }

    /// Restriction of a global linear functional.
    pub fn linear(fan: &Fan, functional: &[Q]) -> Self {
        Self { values: (0..fan.num_rays()).map(|r| dot(functional, fan.ray_q(r))).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { values: self.values.iter().map(|a| a * c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q(x: i64) -> Q {
        Q::from_integer(x.into())
    }

    fn p2() -> Fan {
        catalog::projective(2)
    }

    #[test]
    fn p2_counts_and_flags() {
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
            .unwrap();
        assert_eq!(f.f_vector(), vec![1, 3, 3]);
        assert_eq!(f.flags(), Flags { complete: true, simplicial: true, unimodular: true });
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Fan::from_i64(2, &[&[2, 0], &[0, 1]], &[&[0, 1]]).unwrap_err(),
            Error::NonPrimitiveRay { index: 0 }
        );
        assert!(matches!(
            Fan::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]),
            Err(Error::OverlappingCones { .. })
        ));
        assert!(matches!(
            Fan::from_i64(2, &[&[1, 0], &[1, 0]], &[&[0], &[1]]),
            Err(Error::DuplicateRay { .. })
        ));
        assert!(matches!(
            Fan::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1, 2]]),
            Err(Error::NotSimplicial { .. })
        ));
        assert!(matches!(
            Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0]], &[&[0, 1]]),
            Err(Error::DanglingRay { index: 2 })
        ));
    }

    #[test]
    fn opposite_rays_meet_at_origin() {
        let f = Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap();
        assert!(f.is_complete());
    }

    #[test]
    fn classify_examples() {
        let single = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert!(!single.is_complete());
        assert!(single.is_unimodular());
        let point = Fan::new(0, vec![], vec![vec![]]).unwrap();
        assert!(point.is_complete());
        assert_eq!(point.f_vector(), vec![1]);
        let nonuni = Fan::from_i64(2, &[&[1, 0], &[1, 2]], &[&[0, 1]]).unwrap();
        assert!(!nonuni.is_unimodular());
    }

    #[test]
    fn stars() {
        let f = p2();
        let s = f.star_sets(&Cone::ray(0)).unwrap();
        assert_eq!(s.star.len(), 3);
        let o = f.star_sets(&Cone::origin()).unwrap();
        assert_eq!(o.star.len(), f.cones().len());
        assert!(o.boundary.is_empty());
        let top = Cone::new(vec![0, 1]);
        let t = f.star_sets(&top).unwrap();
        assert_eq!(t.star, vec![f.cone_id(&top).unwrap()]);
        assert_eq!(t.boundary.len(), 3);
        assert!(f.star_sets(&Cone::new(vec![0, 1, 2])).is_err());
    }

    #[test]
    fn quotients() {
        let f = p2();
        let qs = f.quotient_star(&Cone::ray(0)).unwrap();
        assert_eq!(qs.fan.rank(), 1);
        let mut imgs: Vec<BigInt> = qs.fan.rays().iter().map(|r| r.0[0].clone()).collect();
        imgs.sort();
        assert_eq!(imgs, vec![BigInt::from(-1), BigInt::from(1)]);
        assert!(qs.fan.is_complete() && qs.fan.is_unimodular());
        let top = f.quotient_star_fan(&Cone::new(vec![0, 1])).unwrap();
        assert_eq!(top.rank(), 0);
        assert!(top.is_complete());
        let p1p1 = catalog::product(&catalog::projective(1), &catalog::projective(1));
        let q = p1p1.quotient_star_fan(&Cone::ray(0)).unwrap();
        assert_eq!(q.num_rays(), 2);
        assert!(q.is_complete());
    }

    #[test]
    fn incidence_signs() {
        let f = p2();
        let s = Cone::new(vec![0, 1]);
        assert_eq!(f.incidence_sign(&s, &Cone::ray(1)).unwrap(), 1);
        assert_eq!(f.incidence_sign(&s, &Cone::ray(0)).unwrap(), -1);
        assert!(f.incidence_sign(&s, &Cone::ray(2)).is_err());
    }

    #[test]
    fn d_squared_vanishes_on_signs() {
        let f = catalog::projective(3);
        for c in f.cones() {
            if c.dim() < 2 {
                continue;
            }
            for i in 0..c.dim() {
                for j in i + 1..c.dim() {
                    let mu = c.facet_without(j).facet_without(i);
                    let t1 = c.facet_without(i);
                    let t2 = c.facet_without(j);
                    let s = f.incidence_sign(c, &t1).unwrap() * f.incidence_sign(&t1, &mu).unwrap()
                        + f.incidence_sign(c, &t2).unwrap() * f.incidence_sign(&t2, &mu).unwrap();
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn local_convexity_examples() {
        let f = p2();
        assert!(!f.is_star_support_convex(&Cone::ray(0)).unwrap());
        assert!(f.is_star_support_convex(&Cone::new(vec![0, 1])).unwrap());
        assert!(!f.is_locally_convex().unwrap());
        let p1p1 = catalog::product(&catalog::projective(1), &catalog::projective(1));
        assert!(p1p1.is_star_support_convex(&Cone::ray(0)).unwrap());
        let single = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert_eq!(single.is_locally_convex(), Err(Error::NotComplete));
    }

    #[test]
    fn courant_evaluation() {
        let f = p2();
        let phi0 = PlFunction::courant(&f, 0);
        assert_eq!(f.pl_evaluate(&phi0, &[q(1), q(1)]).unwrap(), q(1));
        assert_eq!(f.pl_evaluate(&phi0, &[q(1), q(0)]).unwrap(), q(1));
        let phi2 = PlFunction::courant(&f, 2);
        assert_eq!(f.pl_evaluate(&phi2, &[q(1), q(1)]).unwrap(), q(0));
        let single = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        let g = PlFunction::courant(&single, 0);
        assert_eq!(single.pl_evaluate(&g, &[q(-1), q(0)]), Err(Error::PointOutsideSupport));
    }

    #[test]
    fn evaluation_agrees_on_shared_faces() {
        let f = catalog::projective(3);
        let g = PlFunction::new(vec![q(3), q(-2), q(5), q(7)]);
        for &r in f.cones_of_dim(f.rank() - 1) {
            let face = f.cone(r);
            let p: Vec<Q> = (0..3)
                .map(|i| face.rays().iter().enumerate().map(|(k, &ray)| q(k as i64 + 1) * &f.ray_q(ray)[i]).sum())
                .collect();
            let vals: Vec<Q> =
                f.cofacets_of(r).iter().map(|&c| f.pl_evaluate_in(&g, c, &p).unwrap()).collect();
            assert_eq!(vals[0], vals[1]);
        }
    }
}
