//! Sheaves of finite-dimensional vector spaces on the face poset of a fan,
//! their cellular cohomology, and the Grothendieck group `K(Φ)` written in the
//! basis of the line-bundle classes `[O(σ)]`.
//!
//! Restriction maps go from a cone to its faces: a sheaf assigns a stalk
//! `F_σ` to each cone and a linear map `F_σ → F_τ` for every facet `τ < σ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::linalg::{self, QMatrix};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafSpec {
    /// Constant sheaf `R^dim`.
    Constant(usize),
    /// `R_{Star(σ)}`: one-dimensional on cones containing `σ`.
    IndicatorStar(Cone),
    /// One-dimensional at `σ` only.
    Skyscraper(Cone),
    /// `O(σ)`: one-dimensional on cones sharing no ray with `σ`.
    LineO(Cone),
    /// `Ω^q`, with stalk `Λ^q(σ^⊥)`.
    Forms(usize),
}

impl fmt::Display for SheafSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafSpec::Constant(d) => write!(f, "const:{d}"),
            SheafSpec::IndicatorStar(c) => write!(f, "star:{c}"),
            SheafSpec::Skyscraper(c) => write!(f, "sky:{c}"),
            SheafSpec::LineO(c) => write!(f, "o:{c}"),
            SheafSpec::Forms(q) => write!(f, "forms:{q}"),
        }
    }
}

/// Stalk dimensions and facet restriction matrices of a sheaf.
///
/// `restrictions[(σ, τ)]` has `dim F_τ` rows and `dim F_σ` columns.
#[derive(Clone, Debug)]
pub struct LinearSheaf {
    pub stalk_dims: Vec<usize>,
    pub restrictions: HashMap<(usize, usize), QMatrix>,
}

fn identity(d: usize) -> QMatrix {
    (0..d).map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

fn zeros(r: usize, c: usize) -> QMatrix {
    vec![vec![Q::zero(); c]; r]
}

pub fn stalk_model(fan: &Fan, spec: &SheafSpec) -> Result<LinearSheaf> {
    let cones = fan.cones();
    if let SheafSpec::IndicatorStar(c) | SheafSpec::Skyscraper(c) | SheafSpec::LineO(c) = spec {
        fan.require(c)?;
    }
    if let SheafSpec::Forms(q) = spec {
        return Ok(forms_sheaf(fan, *q));
    }
    let stalk_dims: Vec<usize> = cones
        .iter()
        .map(|t| match spec {
            SheafSpec::Constant(d) => *d,
            SheafSpec::IndicatorStar(s) => usize::from(s.is_face_of(t)),
            SheafSpec::Skyscraper(s) => usize::from(s == t),
            SheafSpec::LineO(s) => usize::from(s.is_disjoint(t)),
            SheafSpec::Forms(_) => unreachable!(),
        })
        .collect();
    let mut restrictions = HashMap::new();
    for (s, _) in cones.iter().enumerate() {
        for &t in fan.facets_of(s) {
            let (ds, dt) = (stalk_dims[s], stalk_dims[t]);
            let m = if ds == dt { identity(ds) } else { zeros(dt, ds) };
            restrictions.insert((s, t), m);
        }
    }
    Ok(LinearSheaf { stalk_dims, restrictions })
}

/// `Ω^q`: stalk `Λ^q(σ^⊥)`, restrictions induced by `σ^⊥ ⊆ τ^⊥`.
fn forms_sheaf(fan: &Fan, q: usize) -> LinearSheaf {
    let n = fan.rank();
    let perp: Vec<QMatrix> = fan
        .cones()
        .iter()
        .map(|c| {
            let rows: QMatrix = c.rays().iter().map(|&r| fan.ray_q(r).to_vec()).collect();
            if rows.is_empty() {
                identity(n)
            } else {
                linalg::nullspace(&rows, n)
            }
        })
        .collect();
    let stalk_dims: Vec<usize> = perp.iter().map(|b| binomial(b.len(), q)).collect();
    let mut restrictions = HashMap::new();
    for s in 0..fan.cones().len() {
        for &t in fan.facets_of(s) {
            // coordinates of each basis vector of σ^⊥ in the basis of τ^⊥
            let cols: Vec<Vec<Q>> = perp[s]
                .iter()
                .map(|v| linalg::coordinates(&perp[t], v).expect("σ^⊥ ⊆ τ^⊥"))
                .collect();
            let a: QMatrix = (0..perp[t].len())
                .map(|i| cols.iter().map(|c| c[i].clone()).collect())
                .collect();
            let m = if stalk_dims[t] == 0 || stalk_dims[s] == 0 {
                zeros(stalk_dims[t], stalk_dims[s])
            } else {
                linalg::exterior_power(&a, perp[s].len(), q)
            };
            restrictions.insert((s, t), m);
        }
    }
    LinearSheaf { stalk_dims, restrictions }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `χ = Σ_σ (-1)^{n - d(σ)} dim F_σ` with `n` the fan rank.
pub fn euler_char(fan: &Fan, spec: &SheafSpec) -> Result<i64> {
    let sheaf = stalk_model(fan, spec)?;
    Ok(alternating_sum(fan, &sheaf.stalk_dims))
}

fn alternating_sum(fan: &Fan, dims: &[usize]) -> i64 {
    let n = fan.rank();
    fan.cones()
        .iter()
        .zip(dims)
        .map(|(c, &d)| if (n - c.dim()) % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// `χ` from stalk dimensions: `Σ_σ (-1)^{n - d(σ)} dim F_σ`.
pub fn stalk_euler_char(fan: &Fan, sheaf: &LinearSheaf) -> i64 {
    alternating_sum(fan, &sheaf.stalk_dims)
}

/// Stalkwise tensor product; restrictions are Kronecker products.
pub fn tensor(a: &LinearSheaf, b: &LinearSheaf) -> LinearSheaf {
    let stalk_dims = a.stalk_dims.iter().zip(&b.stalk_dims).map(|(x, y)| x * y).collect();
    let restrictions = a
        .restrictions
        .iter()
        .map(|(key, ma)| {
            let mb = &b.restrictions[key];
            let rows = ma.len() * mb.len();
            let cols = ma.first().map_or(0, Vec::len) * mb.first().map_or(0, Vec::len);
            let mut m = zeros(rows, cols);
            let bc = mb.first().map_or(0, Vec::len);
            for (i, ra) in ma.iter().enumerate() {
                for (j, x) in ra.iter().enumerate() {
                    for (k, rb) in mb.iter().enumerate() {
                        for (l, y) in rb.iter().enumerate() {
                            m[i * mb.len() + k][j * bc + l] = x * y;
                        }
                    }
                }
            }
            (*key, m)
        })
        .collect();
    LinearSheaf { stalk_dims, restrictions }
}

/// Signed differentials `d^i: C^i → C^{i+1}`, `C^i = ⊕_{σ ∈ Φ(n-i)} F_σ`.
pub fn cellular_differentials(fan: &Fan, sheaf: &LinearSheaf) -> Vec<QMatrix> {
    let n = fan.rank();
    // offsets[c] = position of F_c inside C^{n - d(c)}
    let mut offsets = vec![0usize; fan.cones().len()];
    let mut sizes = vec![0usize; n + 1];
    for d in 0..=n {
        let mut off = 0;
        for &c in fan.cones_of_dim(d) {
            offsets[c] = off;
            off += sheaf.stalk_dims[c];
        }
        sizes[n - d] = off;
    }
    (0..n)
        .map(|i| {
            let mut m = zeros(sizes[i + 1], sizes[i]);
            for &s in fan.cones_of_dim(n - i) {
                for &t in fan.facets_of(s) {
                    let sign = fan.incidence_sign(fan.cone(s), fan.cone(t)).expect("facet");
                    let r = &sheaf.restrictions[&(s, t)];
                    for (a, row) in r.iter().enumerate() {
                        for (b, x) in row.iter().enumerate() {
                            let v = if sign > 0 { x.clone() } else { -x.clone() };
                            m[offsets[t] + a][offsets[s] + b] += v;
                        }
                    }
                }
            }
            m
        })
        .collect()
}

/// Dimensions of `H^0 .. H^n` of the cellular complex.
pub fn cellular_cohomology(fan: &Fan, sheaf: &LinearSheaf) -> Result<Vec<usize>> {
    let n = fan.rank();
    let ds = cellular_differentials(fan, sheaf);
    for w in ds.windows(2) {
        let (d0, d1) = (&w[0], &w[1]);
        for row in d1 {
            for j in 0..d0.first().map_or(0, Vec::len) {
                let v: Q = row.iter().zip(d0).map(|(a, r)| a * &r[j]).sum();
                if !v.is_zero() {
                    return Err(Error::IncompatibleRestrictions);
                }
            }
        }
    }
    let size = |i: usize| -> usize {
        fan.cones_of_dim(n - i).iter().map(|&c| sheaf.stalk_dims[c]).sum()
    };
    let ranks: Vec<usize> = ds.iter().map(|m| linalg::rank(m)).collect();
    Ok((0..=n)
        .map(|i| {
            let out = if i < n { ranks[i] } else { 0 };
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            size(i) - out - inc
        })
        .collect())
}

/// An element of `K(Φ) ⊗ Q` in the basis `[O(σ)]`, keyed by cone id of the
/// fan it belongs to (id 0 is the origin, `[O(o)] = [O]`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KClass {
    coeffs: BTreeMap<usize, Q>,
}

impl KClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `[O(σ)]` for the cone with the given id.
    pub fn basis(cone: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(cone, Q::one());
        Self { coeffs }
    }

    pub fn structure_sheaf() -> Self {
        Self::basis(0)
    }

    pub fn coeff(&self, cone: usize) -> Q {
        self.coeffs.get(&cone).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, cone: usize, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(cone).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&cone);
        }
    }

    pub fn add(&self, other: &KClass) -> KClass {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k, v);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> KClass {
        let mut out = KClass::zero();
        for (k, v) in self.iter() {
            out.add_term(k, &(v * c));
        }
        out
    }
}

/// Möbius function `μ(lo, hi)` of the face poset.
pub fn mobius(fan: &Fan, lo: usize, hi: usize) -> i64 {
    let (a, b) = (fan.cone(lo), fan.cone(hi));
    if !a.is_face_of(b) {
        return 0;
    }
    let mut memo: HashMap<usize, i64> = HashMap::new();
    fn rec(fan: &Fan, lo: usize, x: usize, memo: &mut HashMap<usize, i64>) -> i64 {
        if x == lo {
            return 1;
        }
        if let Some(&v) = memo.get(&x) {
            return v;
        }
        let low = fan.cone(lo).clone();
        let v = -fan
            .cone(x)
            .faces()
            .filter(|f| low.is_face_of(f) && f.dim() < fan.cone(x).dim())
            .map(|f| rec(fan, lo, fan.cone_id(&f).expect("face"), memo))
            .sum::<i64>();
        memo.insert(x, v);
        v
    }
    rec(fan, lo, hi, &mut memo)
}

/// `[R_{Star(σ)}] = Σ_{τ ≤ σ} (-1)^{d(τ)} [O(τ)]`.
pub fn indicator_star_class(fan: &Fan, sigma: &Cone) -> Result<KClass> {
    fan.require(sigma)?;
    let mut k = KClass::zero();
    for f in sigma.faces() {
        let sign = if f.dim() % 2 == 0 { Q::one() } else { -Q::one() };
        k.add_term(fan.cone_id(&f).expect("face"), &sign);
    }
    Ok(k)
}

/// `[O(σ)] = Σ_{τ ≤ σ} (-1)^{d(τ)} [R_{Star(τ)}]`, returned as coefficients on
/// the indicator classes keyed by cone id.
pub fn line_class_in_indicator_basis(fan: &Fan, sigma: &Cone) -> Result<BTreeMap<usize, Q>> {
    fan.require(sigma)?;
    Ok(sigma
        .faces()
        .map(|f| {
            let sign = if f.dim() % 2 == 0 { Q::one() } else { -Q::one() };
            (fan.cone_id(&f).expect("face"), sign)
        })
        .collect())
}

/// Skyscraper class by Möbius inversion of `[R_{Star(σ)}] = Σ_{τ ⊇ σ} [R_τ]`.
pub fn skyscraper_class(fan: &Fan, sigma: &Cone) -> Result<KClass> {
    let s = fan.require(sigma)?;
    let mut k = KClass::zero();
    for (t, tc) in fan.cones().iter().enumerate() {
        if !sigma.is_face_of(tc) {
            continue;
        }
        let mu = mobius(fan, s, t);
        k = k.add(&indicator_star_class(fan, tc)?.scale(&Q::from_integer(mu.into())));
    }
    Ok(k)
}

pub fn kclass_of(fan: &Fan, spec: &SheafSpec) -> Result<KClass> {
    match spec {
        SheafSpec::Constant(d) => Ok(KClass::structure_sheaf().scale(&Q::from_integer((*d).into()))),
        SheafSpec::IndicatorStar(s) => indicator_star_class(fan, s),
        SheafSpec::Skyscraper(s) => skyscraper_class(fan, s),
        SheafSpec::LineO(s) => Ok(KClass::basis(fan.require(s)?)),
        SheafSpec::Forms(_) => Err(Error::UnsupportedSpec(spec.to_string())),
    }
}

/// Class of an arbitrary stalk model: `Σ_σ dim F_σ · [R_σ]`.
pub fn kclass_from_stalks(fan: &Fan, sheaf: &LinearSheaf) -> Result<KClass> {
    let mut k = KClass::zero();
    for (c, &d) in sheaf.stalk_dims.iter().enumerate() {
        if d > 0 {
            k = k.add(&skyscraper_class(fan, fan.cone(c))?.scale(&Q::from_integer(d.into())));
        }
    }
    Ok(k)
}

/// `χ` of the quotient star of `τ` inside the subfan `members`, graded by the
/// quotient rank `n - d(τ)`.
pub fn star_euler_char(fan: &Fan, members: &[usize], tau: &Cone) -> i64 {
    let top = fan.rank() - tau.dim();
    members
        .iter()
        .map(|&m| fan.cone(m))
        .filter(|c| tau.is_face_of(c))
        .map(|c| if (top - (c.dim() - tau.dim())) % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// `Π_{ρ ∈ S} [O(ρ)]` expanded by the product formula over the subfan `⟨S⟩`
/// of cones generated by rays in `S`. Repeated rays are idempotent.
pub fn ray_product(fan: &Fan, rays: &[usize]) -> KClass {
    let s = Cone::new(rays.to_vec());
    if let Some(id) = fan.cone_id(&s) {
        return KClass::basis(id);
    }
    let members: Vec<usize> =
        (0..fan.cones().len()).filter(|&c| fan.cone(c).is_face_of(&s)).collect();
    let mut k = KClass::zero();
    for &t in &members {
        let tau = fan.cone(t);
        let top = fan.rank() - tau.dim();
        let chi = star_euler_char(fan, &members, tau);
        let c = if top % 2 == 0 { chi } else { -chi };
        k.add_term(t, &Q::from_integer(c.into()));
    }
    k
}

pub fn k_product(fan: &Fan, a: &KClass, b: &KClass) -> KClass {
    let mut memo: HashMap<Cone, KClass> = HashMap::new();
    let mut out = KClass::zero();
    for (s, x) in a.iter() {
        for (t, y) in b.iter() {
            let joined = fan.cone(s).join(fan.cone(t));
            let prod = memo
                .entry(joined.clone())
                .or_insert_with(|| ray_product(fan, joined.rays()));
            out = out.add(&prod.scale(&(x * y)));
        }
    }
    out
}

/// `χ([O(σ)]) = Σ_τ (-1)^{n - d(τ)} [τ shares no ray with σ]`.
pub fn chi_basis(fan: &Fan, sigma: usize) -> i64 {
    let s = fan.cone(sigma);
    let n = fan.rank();
    fan.cones()
        .iter()
        .filter(|t| s.is_disjoint(t))
        .map(|t| if (n - t.dim()) % 2 == 0 { 1 } else { -1 })
        .sum()
}

pub fn chi_k(fan: &Fan, a: &KClass) -> Q {
    a.iter().map(|(s, c)| c * Q::from_integer(chi_basis(fan, s).into())).sum()
}

/// `Σ_i [Ω^i] = 2^{-h_1} Π_ρ ([O(ρ)] + 1)` with `h_1 = #rays - n`.
pub fn forms_sum_kclass(fan: &Fan) -> KClass {
    let mut acc = KClass::structure_sheaf();
    for r in 0..fan.num_rays() {
        let rho = KClass::basis(fan.cone_id(&Cone::ray(r)).expect("ray cone"));
        acc = acc.add(&k_product(fan, &acc, &rho));
    }
    let h1 = fan.num_rays() - fan.rank();
    let scale = Q::new(1.into(), num_bigint::BigInt::from(2u32).pow(h1 as u32));
    acc.scale(&scale)
}
