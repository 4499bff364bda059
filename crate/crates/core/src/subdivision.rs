//! Star subdivisions, subdivision maps and conewise-linear pullbacks.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, LatticeVector, PlFunction};
use crate::rng::Lcg;
use crate::Q;

/// The map `π: Ψ → Φ` sending each cone of a subdivision to the smallest cone
/// of the coarser fan containing it.
#[derive(Clone, Debug)]
pub struct SubdivisionMap {
    pub source: Fan,
    pub target: Fan,
    /// For every ray of `source`, the smallest cone of `target` containing it.
    pub ray_image: Vec<Cone>,
}

impl SubdivisionMap {
    pub fn identity(fan: &Fan) -> Self {
        Self {
            source: fan.clone(),
            target: fan.clone(),
            ray_image: (0..fan.num_rays()).map(Cone::ray).collect(),
        }
    }

    pub fn cone_image(&self, c: &Cone) -> Cone {
        c.rays().iter().fold(Cone::origin(), |acc, &r| acc.join(&self.ray_image[r]))
    }

    /// The ray added by a star subdivision, if any.
    pub fn new_ray(&self) -> Option<usize> {
        (self.source.num_rays() > self.target.num_rays()).then(|| self.source.num_rays() - 1)
    }

    /// The cone that was subdivided (`None` for the identity).
    pub fn center(&self) -> Option<&Cone> {
        self.new_ray().map(|r| &self.ray_image[r])
    }

    pub fn is_identity(&self) -> bool {
        self.new_ray().is_none()
    }
}

/// Star subdivision of `fan` at `sigma` along the ray through `v`.
///
/// The cones containing `sigma` are replaced by the joins `ξ + ρ` of the new
/// ray `ρ` with every cone `ξ ∈ [Star(σ)]` that does not contain `σ`. The new
/// ray gets the next free index; old ray indices are unchanged.
pub fn star_subdivide(fan: &Fan, sigma: &Cone, v: &LatticeVector) -> Result<(Fan, SubdivisionMap)> {
    let sid = fan.require(sigma)?;
    if v.rank() != fan.rank() || !v.is_primitive() {
        return Err(Error::NonPrimitive);
    }
    let coords = fan.cone_coordinates(sid, &v.to_q()).ok_or(Error::NotInteriorPoint)?;
    if sigma.dim() == 0 || coords.iter().any(|c| !c.is_positive()) {
        return Err(Error::NotInteriorPoint);
    }
    if sigma.dim() == 1 {
        return Ok((fan.clone(), SubdivisionMap::identity(fan)));
    }
    let new = fan.num_rays();
    let mut max_cones = Vec::new();
    for &m in fan.maximal_cones() {
        let mc = fan.cone(m);
        if !sigma.is_face_of(mc) {
            max_cones.push(mc.rays().to_vec());
            continue;
        }
        for &r in sigma.rays() {
            let mut c: Vec<usize> = mc.rays().iter().copied().filter(|&x| x != r).collect();
            c.push(new);
            max_cones.push(c);
        }
    }
    let mut rays = fan.rays().to_vec();
    rays.push(v.clone());
    let sub = Fan::new(fan.rank(), rays, max_cones)?;
    let mut ray_image: Vec<Cone> = (0..new).map(Cone::ray).collect();
    ray_image.push(sigma.clone());
    let map = SubdivisionMap { source: sub.clone(), target: fan.clone(), ray_image };
    Ok((sub, map))
}

/// Star subdivision along the sum of the primitive vectors of `sigma`.
pub fn regular_star_subdivide(fan: &Fan, sigma: &Cone) -> Result<(Fan, SubdivisionMap)> {
    if !fan.is_unimodular() {
        return Err(Error::NonUnimodular);
    }
    fan.require(sigma)?;
    if sigma.dim() == 0 {
        return Err(Error::PreconditionViolated("cannot subdivide the origin cone".into()));
    }
    let mut v = vec![num_bigint::BigInt::zero(); fan.rank()];
    for &r in sigma.rays() {
        for (x, y) in v.iter_mut().zip(fan.rays()[r].coords()) {
            *x += y;
        }
    }
    let (sub, map) = star_subdivide(fan, sigma, &LatticeVector(v))?;
    assert!(sub.is_unimodular(), "regular star subdivision lost unimodularity");
    Ok((sub, map))
}

/// `(π*f)(v_ν) = f(v_ν)` for every ray `ν` of the finer fan.
pub fn pullback_pl(map: &SubdivisionMap, f: &PlFunction) -> PlFunction {
    let values = (0..map.source.num_rays())
        .map(|r| {
            map.target
                .pl_evaluate(f, map.source.ray_q(r))
                .expect("subdivision has the same support")
        })
        .collect();
    PlFunction::new(values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Convexity {
    NotConvex,
    Convex,
    StrictlyConvex,
}

/// Wall test: across every ridge shared by maximal cones `σ, σ'`, the linear
/// extension of `f` from `σ` must not exceed `f` at the far generator of `σ'`.
pub fn is_convex_pl(fan: &Fan, f: &PlFunction) -> Result<Convexity> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let n = fan.rank();
    if n == 0 {
        return Ok(Convexity::StrictlyConvex);
    }
    let mut strict = true;
    for &ridge in fan.cones_of_dim(n - 1) {
        let [a, b] = fan.cofacets_of(ridge) else {
            unreachable!("complete fan has two cofacets per ridge")
        };
        let far = fan.cone(*b).minus(fan.cone(ridge)).rays()[0];
        let coords = fan.cone_coordinates(*a, fan.ray_q(far)).expect("full-dimensional cone");
        let extended: Q = fan.cone(*a).rays().iter().zip(&coords).map(|(&r, c)| c * &f.values[r]).sum();
        let actual = &f.values[far];
        if &extended > actual {
            return Ok(Convexity::NotConvex);
        }
        if &extended == actual {
            strict = false;
        }
    }
    Ok(if strict { Convexity::StrictlyConvex } else { Convexity::Convex })
}

/// One step of a subdivision chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub fan: Fan,
    pub map: SubdivisionMap,
}

/// `steps` regular star subdivisions, each at a cone of dimension at least two
/// chosen with [`Lcg::below`] over the cones in fan order.
pub fn random_chain(seed: u64, start: &Fan, steps: usize) -> Result<Vec<ChainStep>> {
    if !start.is_complete() || !start.is_unimodular() {
        return Err(Error::NotCompleteSimplicialUnimodular);
    }
    let mut rng = Lcg::new(seed);
    let mut cur = start.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let candidates: Vec<usize> =
            (0..cur.cones().len()).filter(|&c| cur.cone(c).dim() >= 2).collect();
        if candidates.is_empty() {
            return Err(Error::PreconditionViolated("no cone of dimension >= 2".into()));
        }
        let pick = cur.cone(candidates[rng.below(candidates.len())]).clone();
        let (fan, map) = regular_star_subdivide(&cur, &pick)?;
        cur = fan.clone();
        out.push(ChainStep { fan, map });
    }
    Ok(out)
}
