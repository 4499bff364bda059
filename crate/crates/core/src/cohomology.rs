//! The cohomology ring `H(Φ)` of a complete unimodular fan.
//!
//! `H(Φ)` is presented as `Q[x_ρ] / (non-face monomials, θ_1..θ_n)` where
//! `x_ρ` stands for the Courant function of the ray `ρ` and
//! `θ_j = Σ_ρ (v_ρ)_j x_ρ` is the global linear functional `e_j^*`. Each
//! homogeneous degree is row-reduced once; normal forms are then expressed in
//! the standard (non-pivot) face monomials.
//!
//! Integration uses Brion's functional
//! `ζ(f) = Σ_{σ maximal} f_σ(p) / F_σ(p)`, evaluated at generic rational
//! points `p`: `f_σ` substitutes the dual-basis coordinates `u_{σ,ρ}(p)` for
//! `x_ρ` (zero for rays outside `σ`) and `F_σ = Π_{ρ∈σ} u_{σ,ρ}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, PlFunction};
use crate::linalg::{self, QMatrix};
use crate::rng::Lcg;
use crate::subdivision::SubdivisionMap;
use crate::Q;

/// A monomial in the ray variables, stored as a sorted multiset of ray
/// indices. Its length is the polynomial degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        Self(rays)
    }

    pub fn var(r: usize) -> Self {
        Self(vec![r])
    }

    /// `Π_{ρ ∈ σ} x_ρ`.
    pub fn of_cone(c: &Cone) -> Self {
        Self(c.rays().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn support(&self) -> Cone {
        Cone::new(self.0.clone())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Monomial(v)
    }

    /// `(ray, exponent)` pairs.
    pub fn exponents(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for &r in &self.0 {
            match out.last_mut() {
                Some((x, e)) if *x == r => *e += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (r, e)) in self.exponents().iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{r}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in the ray variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SrElement {
    terms: BTreeMap<Monomial, Q>,
}

impl SrElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(Monomial::one(), c);
        s
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn var(r: usize) -> Self {
        Self::monomial(Monomial::var(r))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut s = Self::zero();
        s.add_term(m, Q::one());
        s
    }

    /// `ℓ = Σ_ρ ℓ(v_ρ) x_ρ` for a conewise-linear function.
    pub fn from_pl(f: &PlFunction) -> Self {
        let mut s = Self::zero();
        for (r, v) in f.values.iter().enumerate() {
            s.add_term(Monomial::var(r), v.clone());
        }
        s
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The degree if all terms share one, `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn degree_part(&self, k: usize) -> SrElement {
        SrElement {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &SrElement) -> SrElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SrElement) -> SrElement {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> SrElement {
        if c.is_zero() {
            return SrElement::zero();
        }
        SrElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &SrElement) -> SrElement {
        self.mul_truncated(other, usize::MAX)
    }

    /// Product keeping only terms of degree `<= max_deg`.
    pub fn mul_truncated(&self, other: &SrElement, max_deg: usize) -> SrElement {
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if a.degree() + b.degree() > max_deg {
                    continue;
                }
                *acc.entry(a.mul(b)).or_insert_with(Q::zero) += x * y;
            }
        }
        SrElement { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> SrElement {
        (0..e).fold(SrElement::one(), |acc, _| acc.mul(self))
    }

    /// Ring substitution `x_r ↦ images[r]`.
    pub fn substitute(&self, images: &[SrElement]) -> SrElement {
        let mut out = SrElement::zero();
        for (m, c) in self.terms() {
            let mut t = SrElement::constant(c.clone());
            for &r in m.rays() {
                t = t.mul(&images[r]);
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for SrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

/// Generators of the ideal: minimal non-faces and the linear relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub nonfaces: Vec<Vec<usize>>,
    pub linear: Vec<SrElement>,
}

fn require_csu(fan: &Fan) -> Result<()> {
    if fan.is_complete() && fan.is_unimodular() {
        Ok(())
    } else {
        Err(Error::NotCompleteSimplicialUnimodular)
    }
}

pub fn sr_presentation(fan: &Fan) -> Result<Presentation> {
    require_csu(fan)?;
    let mut nonfaces = std::collections::BTreeSet::new();
    for c in fan.cones() {
        for r in 0..fan.num_rays() {
            if c.contains_ray(r) {
                continue;
            }
            let s = c.join(&Cone::ray(r));
            if fan.contains(&s) {
                continue;
            }
            let minimal = (0..s.dim()).all(|i| fan.contains(&s.facet_without(i)));
            if minimal {
                nonfaces.insert(s);
            }
        }
    }
    let linear = (0..fan.rank())
        .map(|j| {
            let mut t = SrElement::zero();
            for r in 0..fan.num_rays() {
                t.add_term(Monomial::var(r), fan.ray_q(r)[j].clone());
            }
            t
        })
        .collect();
    Ok(Presentation { nonfaces: nonfaces.into_iter().map(|c| c.rays().to_vec()).collect(), linear })
}

/// Row-reduction data of one homogeneous degree.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    /// Face monomials of this degree (monomials whose support is a cone).
    pub columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Pivot column ↦ its expression in standard monomials.
    reducers: HashMap<usize, Vec<(usize, Q)>>,
    /// Standard monomials (non-pivot columns), a basis of `H^{2k}`.
    pub basis: Vec<usize>,
}

impl DegreeBasis {
    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&c| self.columns[c].clone()).collect()
    }
}

/// Standard-monomial bases of all degrees with normal-form data.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub degrees: Vec<DegreeBasis>,
}

impl GradedBasis {
    pub fn h_vector(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.basis.len()).collect()
    }
}

/// Face monomials of degree `k`.
fn face_monomials(fan: &Fan, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for c in fan.cones() {
        let d = c.dim();
        if d > k || (d == 0 && k > 0) {
            continue;
        }
        // compositions of k into d positive parts
        fn rec(rays: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
            if rays.len() == 1 {
                let mut m = cur.clone();
                m.extend(std::iter::repeat_n(rays[0], left));
                out.push(Monomial::new(m));
                return;
            }
            for e in 1..=left - (rays.len() - 1) {
                let len = cur.len();
                cur.extend(std::iter::repeat_n(rays[0], e));
                rec(&rays[1..], left - e, cur, out);
                cur.truncate(len);
            }
        }
        if d == 0 {
            out.push(Monomial::one());
        } else {
            rec(c.rays(), k, &mut Vec::new(), &mut out);
        }
    }
    out.sort();
    out
}

/// Incrementally maintained sparse reduced row echelon form.
struct Echelon {
    rows: HashMap<usize, BTreeMap<usize, Q>>,
}

impl Echelon {
    fn insert(&mut self, mut v: BTreeMap<usize, Q>) {
        let hits: Vec<usize> = v.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for p in hits {
            let Some(f) = v.get(&p).cloned() else { continue };
            for (c, x) in &self.rows[&p] {
                let e = v.entry(*c).or_insert_with(Q::zero);
                *e -= &f * x;
                if e.is_zero() {
                    v.remove(c);
                }
            }
        }
        let Some((&p, lead)) = v.iter().next() else { return };
        let inv = lead.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            let Some(f) = row.get(&p).cloned() else { continue };
            for (c, x) in &v {
                let e = row.entry(*c).or_insert_with(Q::zero);
                *e -= &f * x;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
        self.rows.insert(p, v);
    }
}

fn degree_basis(fan: &Fan, k: usize, prev: Option<&DegreeBasis>, linear: &[SrElement]) -> DegreeBasis {
    let columns = face_monomials(fan, k);
    let index: HashMap<Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut ech = Echelon { rows: HashMap::new() };
    if let Some(prev) = prev {
        for m in &prev.columns {
            for theta in linear {
                let mut row = BTreeMap::new();
                for (v, c) in theta.terms() {
                    let prod = m.mul(v);
                    if let Some(&col) = index.get(&prod) {
                        *row.entry(col).or_insert_with(Q::zero) += c;
                    }
                }
                row.retain(|_, c: &mut Q| !c.is_zero());
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    let basis: Vec<usize> = (0..columns.len()).filter(|c| !ech.rows.contains_key(c)).collect();
    let reducers = ech
        .rows
        .into_iter()
        .map(|(p, row)| (p, row.into_iter().filter(|(c, _)| *c != p).map(|(c, x)| (c, -x)).collect()))
        .collect();
    DegreeBasis { columns, index, reducers, basis }
}

/// Precomputed evaluation data of `ζ` at one point.
#[derive(Clone, Debug)]
struct ZetaPoint {
    point: Vec<Q>,
    /// Per maximal cone: `(ray ↦ u_{σ,ρ}(p))` and `1 / F_σ(p)`.
    cones: Vec<(HashMap<usize, Q>, Q)>,
}

/// `H(Φ)` of a complete unimodular fan together with its integration data.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    fan: Fan,
    presentation: Presentation,
    basis: GradedBasis,
    points: [ZetaPoint; 2],
}

/// Seed of the generic-point sampler.
pub const POINT_SEED: u64 = 0x5EED_F00D;

impl CohomologyRing {
    pub fn new(fan: &Fan) -> Result<Self> {
        let presentation = sr_presentation(fan)?;
        let mut degrees: Vec<DegreeBasis> = Vec::with_capacity(fan.rank() + 1);
        for k in 0..=fan.rank() {
            let d = degree_basis(fan, k, degrees.last(), &presentation.linear);
            degrees.push(d);
        }
        let mut rng = Lcg::new(POINT_SEED);
        let first = generic_point(fan, &mut rng);
        let mut second = generic_point(fan, &mut rng);
        while fan.rank() > 0 && second.point == first.point {
            second = generic_point(fan, &mut rng);
        }
        Ok(Self { fan: fan.clone(), presentation, basis: GradedBasis { degrees }, points: [first, second] })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn rank(&self) -> usize {
        self.fan.rank()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn graded_basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn h_vector(&self) -> Vec<usize> {
        self.basis.h_vector()
    }

    pub fn face_monomials(&self, k: usize) -> &[Monomial] {
        &self.basis.degrees[k].columns
    }

    /// Normal form: non-face monomials dropped, pivots rewritten in standard
    /// monomials, terms above the top degree discarded.
    pub fn normal_form(&self, f: &SrElement) -> SrElement {
        let mut out = SrElement::zero();
        for (m, c) in f.terms() {
            let Some(deg) = self.basis.degrees.get(m.degree()) else { continue };
            let Some(&col) = deg.index.get(m) else { continue };
            match deg.reducers.get(&col) {
                None => out.add_term(m.clone(), c.clone()),
                Some(expr) => {
                    for (b, x) in expr {
                        out.add_term(deg.columns[*b].clone(), c * x);
                    }
                }
            }
        }
        out
    }

    /// Product with eager normal-form reduction.
    pub fn mul(&self, a: &SrElement, b: &SrElement) -> SrElement {
        self.normal_form(&a.mul_truncated(b, self.rank()))
    }

    /// `Π_i factors[i]` reduced after every step.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a SrElement>) -> SrElement {
        factors.into_iter().fold(SrElement::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn zeta_points(&self) -> [&[Q]; 2] {
        [&self.points[0].point, &self.points[1].point]
    }

    /// `ζ(f)` at an arbitrary point.
    pub fn zeta_evaluate(&self, f: &SrElement, p: &[Q]) -> Result<Q> {
        let zp = zeta_point(&self.fan, p).ok_or(Error::DegeneratePoint)?;
        Ok(zeta_at(f, &zp))
    }

    /// `∫_Φ f` for `f` homogeneous of degree `n` (zero is accepted). The two
    /// generic points must agree.
    pub fn integrate(&self, f: &SrElement) -> Result<Q> {
        let n = self.rank();
        if f.is_zero() {
            return Ok(Q::zero());
        }
        match f.homogeneous_degree() {
            Some(d) if d == n => {}
            _ => {
                return Err(Error::DegreeMismatch { expected: n, found: f.max_degree().unwrap_or(0) });
            }
        }
        let a = zeta_at(f, &self.points[0]);
        let b = zeta_at(f, &self.points[1]);
        assert_eq!(a, b, "ζ disagrees at two generic points");
        Ok(a)
    }

    /// `∫_Φ` of the degree-`n` component.
    pub fn integrate_top(&self, f: &SrElement) -> Q {
        self.integrate(&f.degree_part(self.rank())).expect("top-degree part")
    }

    /// Equality in `H(Φ)` via the pairing against all complementary face
    /// monomials.
    pub fn h_equal(&self, a: &SrElement, b: &SrElement) -> Result<bool> {
        let diff = a.sub(b);
        let k = match (a.homogeneous_degree(), b.homogeneous_degree()) {
            (Some(x), Some(y)) if x == y => x,
            (Some(x), None) if b.is_zero() => x,
            (None, Some(y)) if a.is_zero() => y,
            (None, None) if a.is_zero() && b.is_zero() => return Ok(true),
            (x, y) => {
                return Err(Error::DegreeMismatch {
                    expected: x.or(y).unwrap_or(0),
                    found: y.or(x).unwrap_or(0),
                })
            }
        };
        if k > self.rank() {
            return Ok(true);
        }
        for m in self.face_monomials(self.rank() - k) {
            let prod = diff.mul(&SrElement::monomial(m.clone()));
            if !self.integrate(&prod)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Gram matrix `∫ b_i b_j` over the standard monomials of degree `k`.
    pub fn gram(&self, k: usize) -> QMatrix {
        let basis = self.basis.degrees[k].basis_monomials();
        let other = self.basis.degrees[self.rank() - k].basis_monomials();
        basis
            .iter()
            .map(|a| {
                other
                    .iter()
                    .map(|b| self.integrate(&SrElement::monomial(a.mul(b))).expect("top degree"))
                    .collect()
            })
            .collect()
    }

    pub fn signature_report(&self) -> SignatureReport {
        let h = self.h_vector();
        let epsilon = h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        let n = self.rank();
        let (gram, signature) = if n % 2 == 1 {
            (Vec::new(), 0)
        } else {
            let g = self.gram(n / 2);
            let s = linalg::inertia(&g).signature();
            (g, s)
        };
        SignatureReport { h, gram, signature, epsilon }
    }

    /// `∫_Φ x_τ·m` against `∫_{Star̄(τ)} m̄`, for a monomial `m` in rays
    /// transverse to `τ` with `deg m + d(τ) = n`.
    pub fn star_integrals(&self, tau: &Cone, m: &Monomial) -> Result<(Q, Q)> {
        let fan = &self.fan;
        fan.require(tau)?;
        if m.degree() + tau.dim() != fan.rank() {
            return Err(Error::PreconditionViolated(format!(
                "deg {m} + dim {tau} != {}",
                fan.rank()
            )));
        }
        for &r in m.rays() {
            if tau.contains_ray(r) || !fan.contains(&tau.join(&Cone::ray(r))) {
                return Err(Error::PreconditionViolated(format!("ray {r} is not transverse to {tau}")));
            }
        }
        let lhs = self.integrate(&SrElement::monomial(Monomial::of_cone(tau).mul(m)))?;
        let qs = fan.quotient_star(tau)?;
        let image = Monomial::new(m.rays().iter().map(|&r| qs.image_of(r).expect("transverse ray")).collect());
        let ring = CohomologyRing::new(&qs.fan)?;
        let rhs = ring.integrate(&SrElement::monomial(image))?;
        Ok((lhs, rhs))
    }

    pub fn verify_star_integral(&self, tau: &Cone, m: &Monomial) -> Result<bool> {
        let (a, b) = self.star_integrals(tau, m)?;
        Ok(a == b)
    }
}

fn zeta_point(fan: &Fan, p: &[Q]) -> Option<ZetaPoint> {
    let mut cones = Vec::with_capacity(fan.maximal_cones().len());
    for &m in fan.maximal_cones() {
        let u = fan.cone_coordinates(m, p).expect("full-dimensional cone");
        let f: Q = u.iter().product();
        if f.is_zero() {
            return None;
        }
        let map = fan.cone(m).rays().iter().copied().zip(u).collect();
        cones.push((map, f.recip()));
    }
    Some(ZetaPoint { point: p.to_vec(), cones })
}

fn zeta_at(f: &SrElement, zp: &ZetaPoint) -> Q {
    let mut total = Q::zero();
    for (u, inv_f) in &zp.cones {
        let mut local = Q::zero();
        'terms: for (m, c) in f.terms() {
            let mut v = c.clone();
            for &r in m.rays() {
                match u.get(&r) {
                    Some(x) => v *= x,
                    None => continue 'terms,
                }
            }
            local += v;
        }
        total += local * inv_f;
    }
    total
}

fn generic_point(fan: &Fan, rng: &mut Lcg) -> ZetaPoint {
    let n = fan.rank();
    let mut bound = 5;
    let mut tries = 0;
    loop {
        let p: Vec<Q> = (0..n).map(|_| Q::from_integer(rng.symmetric(bound).into())).collect();
        if let Some(zp) = zeta_point(fan, &p) {
            return zp;
        }
        tries += 1;
        if tries % 16 == 0 {
            bound += 5;
        }
    }
}

/// h-vector, middle Gram matrix, signature and `ε = Σ (-1)^i h_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureReport {
    pub h: Vec<usize>,
    pub gram: QMatrix,
    pub signature: i64,
    pub epsilon: i64,
}

pub fn h_vector(fan: &Fan) -> Result<Vec<usize>> {
    Ok(CohomologyRing::new(fan)?.h_vector())
}

pub fn signature_report(fan: &Fan) -> Result<SignatureReport> {
    Ok(CohomologyRing::new(fan)?.signature_report())
}

/// Images `π*x_η = Σ_ν φ_η(v_ν) x_ν` of the generators of the coarser fan.
pub fn pullback_generators(map: &SubdivisionMap) -> Vec<SrElement> {
    (0..map.target.num_rays())
        .map(|eta| SrElement::from_pl(&crate::subdivision::pullback_pl(map, &PlFunction::courant(&map.target, eta))))
        .collect()
}

pub fn pullback_sr(map: &SubdivisionMap, a: &SrElement) -> SrElement {
    a.substitute(&pullback_generators(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::subdivision::regular_star_subdivide;

    fn q(x: i64) -> Q {
        Q::from_integer(x.into())
    }

    fn mono(r: &[usize]) -> SrElement {
        SrElement::monomial(Monomial::new(r.to_vec()))
    }

    #[test]
    fn presentations() {
        let p2 = catalog::projective(2);
        let pr = sr_presentation(&p2).unwrap();
        assert_eq!(pr.nonfaces, vec![vec![0, 1, 2]]);
        assert_eq!(pr.linear[0], mono(&[0]).sub(&mono(&[2])));
        assert_eq!(pr.linear[1], mono(&[1]).sub(&mono(&[2])));
        let p1p1 = catalog::by_name("p1xp1").unwrap();
        let pr = sr_presentation(&p1p1).unwrap();
        assert_eq!(pr.nonfaces, vec![vec![0, 1], vec![2, 3]]);
        let p0 = catalog::projective(0);
        let pr = sr_presentation(&p0).unwrap();
        assert!(pr.nonfaces.is_empty() && pr.linear.is_empty());
        assert_eq!(CohomologyRing::new(&p0).unwrap().h_vector(), vec![1]);
        let single = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert_eq!(sr_presentation(&single), Err(Error::NotCompleteSimplicialUnimodular));
    }

    #[test]
    fn h_vectors() {
        assert_eq!(h_vector(&catalog::projective(2)).unwrap(), vec![1, 1, 1]);
        assert_eq!(h_vector(&catalog::by_name("p1xp1").unwrap()).unwrap(), vec![1, 2, 1]);
        assert_eq!(h_vector(&catalog::blowup_p1xp1()).unwrap(), vec![1, 3, 1]);
        assert_eq!(h_vector(&catalog::projective(3)).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn zeta_values() {
        let p1 = catalog::projective(1);
        let r = CohomologyRing::new(&p1).unwrap();
        assert_eq!(r.zeta_evaluate(&SrElement::one(), &[q(3)]).unwrap(), q(0));
        assert_eq!(r.zeta_evaluate(&SrElement::one(), &[q(0)]), Err(Error::DegeneratePoint));
        let p2 = catalog::projective(2);
        let r = CohomologyRing::new(&p2).unwrap();
        for p in [[q(2), q(-7)], [q(5), q(3)], [q(-1), q(4)]] {
            assert_eq!(r.zeta_evaluate(&mono(&[0, 1]), &p).unwrap(), q(1));
        }
    }

    #[test]
    fn integrals() {
        let p2 = CohomologyRing::new(&catalog::projective(2)).unwrap();
        assert_eq!(p2.integrate(&mono(&[0, 1])).unwrap(), q(1));
        assert_eq!(p2.integrate(&mono(&[0, 0])).unwrap(), q(1));
        assert!(matches!(p2.integrate(&mono(&[0])), Err(Error::DegreeMismatch { .. })));
        let p1p1 = CohomologyRing::new(&catalog::by_name("p1xp1").unwrap()).unwrap();
        assert_eq!(p1p1.integrate(&mono(&[0, 0])).unwrap(), q(0));
    }

    #[test]
    fn equality_in_h() {
        let p2 = CohomologyRing::new(&catalog::projective(2)).unwrap();
        assert!(p2.h_equal(&mono(&[0]), &mono(&[1])).unwrap());
        let p1p1 = CohomologyRing::new(&catalog::by_name("p1xp1").unwrap()).unwrap();
        assert!(!p1p1.h_equal(&mono(&[0]), &mono(&[2])).unwrap());
        assert!(p1p1.h_equal(&mono(&[0]), &mono(&[0])).unwrap());
        assert!(p1p1.h_equal(&mono(&[0]), &mono(&[0, 1])).is_err());
    }

    #[test]
    fn signatures() {
        let s = signature_report(&catalog::projective(2)).unwrap();
        assert_eq!((s.signature, s.epsilon), (1, 1));
        assert_eq!(s.gram, vec![vec![q(1)]]);
        let s = signature_report(&catalog::by_name("p1xp1").unwrap()).unwrap();
        assert_eq!((s.signature, s.epsilon), (0, 0));
        let s = signature_report(&catalog::blowup_p1xp1()).unwrap();
        assert_eq!((s.signature, s.epsilon), (-1, -1));
        let s = signature_report(&catalog::projective(3)).unwrap();
        assert_eq!((s.signature, s.epsilon), (0, 0));
    }

    #[test]
    fn pullbacks() {
        let p2 = catalog::projective(2);
        let (bl, map) = regular_star_subdivide(&p2, &Cone::new(vec![0, 1])).unwrap();
        assert_eq!(pullback_sr(&map, &mono(&[0])), mono(&[0]).add(&mono(&[3])));
        let ring = CohomologyRing::new(&bl).unwrap();
        assert_eq!(ring.integrate(&pullback_sr(&map, &mono(&[0, 1]))).unwrap(), q(1));
        let id = SubdivisionMap::identity(&p2);
        let f = mono(&[0, 2]).add(&mono(&[1]).scale(&q(3)));
        assert_eq!(pullback_sr(&id, &f), f);
    }

    #[test]
    fn star_integrals() {
        let p2 = CohomologyRing::new(&catalog::projective(2)).unwrap();
        assert_eq!(p2.star_integrals(&Cone::ray(0), &Monomial::var(1)).unwrap(), (q(1), q(1)));
        assert!(p2.verify_star_integral(&Cone::new(vec![0, 1]), &Monomial::one()).unwrap());
        assert!(p2.verify_star_integral(&Cone::ray(0), &Monomial::var(0)).is_err());
        let p1p1 = CohomologyRing::new(&catalog::by_name("p1xp1").unwrap()).unwrap();
        assert!(p1p1.verify_star_integral(&Cone::ray(0), &Monomial::var(2)).unwrap());
    }
}
