//! Chern character, Todd and L classes, and exact checks of the
//! Riemann–Roch, signature, exceptional-positivity and Leung–Reiner
//! statements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cohomology::{pullback_sr, CohomologyRing, Monomial, SrElement};
use crate::error::{Error, Result};
use crate::fan::Cone;
use crate::linalg::subsets;
use crate::series::{bernoulli_abs, factorial, series, SeriesKind, TruncatedSeries};
use crate::sheaf::{chi_k, KClass};
use crate::subdivision::regular_star_subdivide;
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    HypothesisFailed,
}

/// One row of the Leung–Reiner table: `t = (-1)^k ∫ Π x_{ρ_i}^{2 m_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LrTerm {
    pub k: usize,
    pub exponents: Vec<usize>,
    pub rays: Vec<usize>,
    pub spans_cone: bool,
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub fan: String,
    pub status: Status,
    /// Named computed quantities, rationals as `p/q` strings.
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locally_convex: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<LrTerm>,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl TheoremReport {
    fn new(theorem: &str, pass: bool) -> Self {
        Self {
            theorem: theorem.to_string(),
            fan: String::new(),
            status: if pass { Status::Pass } else { Status::Fail },
            values: BTreeMap::new(),
            locally_convex: None,
            terms: Vec::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }

    pub fn labelled(mut self, fan: &str) -> Self {
        self.fan = fan.to_string();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// `Σ_{k<=n} c_k x_r^k`.
pub fn series_in(s: &TruncatedSeries, r: usize, n: usize) -> SrElement {
    let mut out = SrElement::zero();
    for k in 0..=n.min(s.order()) {
        out.add_term(Monomial::new(vec![r; k]), s.coeff(k));
    }
    out
}

/// `Π_ρ s(x_ρ)` with eager reduction.
pub fn series_product(ring: &CohomologyRing, s: &TruncatedSeries) -> SrElement {
    let n = ring.rank();
    let factors: Vec<SrElement> =
        (0..ring.fan().num_rays()).map(|r| ring.normal_form(&series_in(s, r, n))).collect();
    ring.product(&factors)
}

/// `ch([O(σ)]) = Π_{ρ∈σ} exp(-x_ρ)`, extended linearly.
pub fn chern_character(ring: &CohomologyRing, a: &KClass) -> SrElement {
    let n = ring.rank();
    let e = series(SeriesKind::ExpNeg, n);
    let mut out = SrElement::zero();
    for (s, c) in a.iter() {
        let factors: Vec<SrElement> =
            ring.fan().cone(s).rays().iter().map(|&r| ring.normal_form(&series_in(&e, r, n))).collect();
        out = out.add(&ring.product(&factors).scale(c));
    }
    ring.normal_form(&out)
}

pub fn todd_class(ring: &CohomologyRing) -> SrElement {
    series_product(ring, &series(SeriesKind::Todd, ring.rank()))
}

/// `Π_ρ (x_ρ/2)/tanh(x_ρ/2)` with the degree-`k` part scaled by `2^k`, so the
/// top component is `2^{rank}` times that of the product.
pub fn l_class(ring: &CohomologyRing) -> SrElement {
    let p = series_product(ring, &series(SeriesKind::LFactor, ring.rank()));
    let mut out = SrElement::zero();
    for (m, c) in p.terms() {
        out.add_term(m.clone(), c * Q::from_integer(BigInt::from(2).pow(m.degree() as u32)));
    }
    out
}

/// Ordered compositions of `n` into `k` positive parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn bernoulli_weight(m: usize) -> Q {
    bernoulli_abs(2 * m as u32).expect("even index") / Q::from_integer(factorial(2 * m))
}

fn sign(k: usize) -> Q {
    if k % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// The top component of `L` for rank `2n`, expanded directly:
/// `(-1)^n L_{2n} = 2^{2n} Σ_k Σ_{m, S} (-1)^k Π_i |B_{2m_i}|/(2m_i)! x_{S_i}^{2m_i}`
/// over compositions `m` of `n` into `k` parts and `k`-subsets `S` of rays.
pub fn l_top_by_enumeration(ring: &CohomologyRing) -> Result<SrElement> {
    let rank = ring.rank();
    if rank % 2 == 1 {
        return Err(Error::OddRank(rank));
    }
    let n = rank / 2;
    let rays = ring.fan().num_rays();
    let mut out = SrElement::zero();
    for k in 1..=n.min(rays) {
        for m in compositions(n, k) {
            let w: Q = m.iter().map(|&mi| bernoulli_weight(mi)).product::<Q>() * sign(k);
            for s in subsets(rays, k) {
                let mono: Vec<usize> =
                    s.iter().zip(&m).flat_map(|(&r, &mi)| std::iter::repeat_n(r, 2 * mi)).collect();
                out.add_term(Monomial::new(mono), w.clone());
            }
        }
    }
    let scale = Q::from_integer(BigInt::from(2).pow(rank as u32)) * sign(n);
    Ok(out.scale(&scale))
}

/// `∫ Td = 1`.
pub fn todd_check(ring: &CohomologyRing) -> TheoremReport {
    let v = ring.integrate_top(&todd_class(ring));
    TheoremReport::new("todd", v.is_one()).with("integral_td", &v)
}

/// `χ(γ) = ∫ ch(γ) Td`.
pub fn rr_check(ring: &CohomologyRing, a: &KClass) -> TheoremReport {
    rr_check_with(ring, a, &todd_class(ring))
}

pub fn rr_check_with(ring: &CohomologyRing, a: &KClass, td: &SrElement) -> TheoremReport {
    let chi = chi_k(ring.fan(), a);
    let rhs = ring.integrate_top(&ring.mul(&chern_character(ring, a), td));
    TheoremReport::new("riemann_roch", chi == rhs).with("chi", &chi).with("integral_ch_td", &rhs)
}

/// `signature = ε = ∫ L`; odd rank passes with signature 0.
pub fn signature_theorem_check(ring: &CohomologyRing) -> TheoremReport {
    let rep = ring.signature_report();
    if ring.rank() % 2 == 1 {
        return TheoremReport::new("signature", rep.signature == 0)
            .with("signature", rep.signature)
            .with("epsilon", rep.epsilon)
            .with("rank", "odd");
    }
    let l = l_class(ring);
    let int_l = ring.integrate_top(&l);
    let top = l_top_by_enumeration(ring).expect("even rank");
    let paths = ring.h_equal(&l.degree_part(ring.rank()), &top).expect("same degree");
    let s = Q::from_integer(rep.signature.into());
    let e = Q::from_integer(rep.epsilon.into());
    TheoremReport::new("signature", s == e && e == int_l && paths)
        .with("signature", rep.signature)
        .with("epsilon", rep.epsilon)
        .with("integral_l", &int_l)
        .with("l_paths_agree", paths)
}

/// Blow up `τ` (`d(τ) = k >= 2`) along its regular ray `ρ`, pick
/// `ξ = σ ∖ τ` for the first maximal `σ ⊇ τ`, and test
/// `(-1)^{k-1} ∫_Ψ x_ρ^k · π*(x_ξ) > 0`.
pub fn exceptional_positivity_check(ring: &CohomologyRing, tau: &Cone) -> Result<TheoremReport> {
    let fan = ring.fan();
    fan.require(tau)?;
    let k = tau.dim();
    if k < 2 {
        return Err(Error::PreconditionViolated(format!("cone {tau} has dimension {k} < 2")));
    }
    let sigma = fan
        .maximal_cones()
        .iter()
        .map(|&m| fan.cone(m))
        .find(|c| tau.is_face_of(c))
        .ok_or(Error::NoTransverseCone)?;
    let xi = sigma.minus(tau);
    let (psi, map) = regular_star_subdivide(fan, tau)?;
    let rho = map.new_ray().expect("dimension >= 2");
    let psi_ring = CohomologyRing::new(&psi)?;
    let pulled = pullback_sr(&map, &SrElement::monomial(Monomial::of_cone(&xi)));
    let integrand = SrElement::monomial(Monomial::new(vec![rho; k])).mul(&pulled);
    let t = psi_ring.integrate(&integrand)? * sign(k - 1);
    Ok(TheoremReport::new("exceptional_positivity", t.is_positive())
        .with("tau", tau)
        .with("xi", &xi)
        .with("k", k)
        .with("t", &t))
}

/// Term table and sign check for a locally convex fan of even rank `2n`.
/// Fails with [`Error::NotLocallyConvex`] when the hypothesis does not hold.
pub fn leung_reiner_certificate(ring: &CohomologyRing) -> Result<TheoremReport> {
    let fan = ring.fan();
    let rank = ring.rank();
    if rank % 2 == 1 {
        return Err(Error::OddRank(rank));
    }
    if !fan.is_locally_convex()? {
        return Err(Error::NotLocallyConvex);
    }
    let n = rank / 2;
    let rays = fan.num_rays();
    let mut terms = Vec::new();
    let mut reconstructed = Q::zero();
    let mut ok = true;
    for k in 1..=n.min(rays) {
        for m in compositions(n, k) {
            let w: Q = m.iter().map(|&mi| bernoulli_weight(mi)).product();
            for s in subsets(rays, k) {
                let mono: Vec<usize> =
                    s.iter().zip(&m).flat_map(|(&r, &mi)| std::iter::repeat_n(r, 2 * mi)).collect();
                let t = ring.integrate(&SrElement::monomial(Monomial::new(mono)))? * sign(k);
                let spans_cone = fan.contains(&Cone::new(s.clone()));
                ok &= !t.is_negative() && (spans_cone || t.is_zero());
                reconstructed += &w * &t;
                terms.push(LrTerm {
                    k,
                    exponents: m.iter().map(|mi| 2 * mi).collect(),
                    rays: s,
                    spans_cone,
                    value: t,
                });
            }
        }
    }
    reconstructed *= Q::from_integer(BigInt::from(2).pow(rank as u32));
    let rep = ring.signature_report();
    let signed = rep.signature * if n % 2 == 0 { 1 } else { -1 };
    let int_l = ring.integrate_top(&l_class(ring));
    let matches = reconstructed == &int_l * sign(n) && int_l == Q::from_integer(rep.signature.into());
    let mut report = TheoremReport::new("leung_reiner", ok && signed >= 0 && matches)
        .with("signed_signature", signed)
        .with("reconstructed_signed_integral_l", &reconstructed)
        .with("integral_l", &int_l);
    report.locally_convex = Some(true);
    report.terms = terms;
    Ok(report)
}

/// `sign(Ψ) = sign(Φ) - sign(Star̄(τ))` and the same for `ε`, for the regular
/// star subdivision `Ψ` of `Φ` at `τ`. Both need even rank.
pub fn subdivision_recursion_check(ring: &CohomologyRing, tau: &Cone) -> Result<TheoremReport> {
    let fan = ring.fan();
    if fan.rank() % 2 == 1 {
        return Err(Error::OddRank(fan.rank()));
    }
    if tau.dim() < 2 {
        return Err(Error::PreconditionViolated(format!("cone {tau} has dimension < 2")));
    }
    let (psi, _) = regular_star_subdivide(fan, tau)?;
    let before = ring.signature_report();
    let after = CohomologyRing::new(&psi)?.signature_report();
    let star = CohomologyRing::new(&fan.quotient_star_fan(tau)?)?.signature_report();
    let pass = after.signature == before.signature - star.signature
        && after.epsilon == before.epsilon - star.epsilon;
    Ok(TheoremReport::new("subdivision_recursion", pass)
        .with("tau", tau)
        .with("signature_before", before.signature)
        .with("signature_after", after.signature)
        .with("signature_star", star.signature)
        .with("epsilon_before", before.epsilon)
        .with("epsilon_after", after.epsilon)
        .with("epsilon_star", star.epsilon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::sheaf::ray_product;

    fn q(x: i64) -> Q {
        Q::from_integer(x.into())
    }

    fn ring(name: &str) -> CohomologyRing {
        CohomologyRing::new(&catalog::by_name(name).unwrap()).unwrap()
    }

    fn var(r: usize) -> SrElement {
        SrElement::var(r)
    }

    #[test]
    fn chern_characters() {
        let p1 = ring("p1");
        assert_eq!(chern_character(&p1, &KClass::structure_sheaf()), SrElement::one());
        let e1 = KClass::basis(p1.fan().cone_id(&Cone::ray(0)).unwrap());
        let ch = chern_character(&p1, &e1);
        assert!(p1.h_equal(&ch.degree_part(1), &var(0).scale(&q(-1))).unwrap());
        assert_eq!(ch.degree_part(0), SrElement::one());
        let p2 = ring("p2");
        let a = ray_product(p2.fan(), &[0]);
        let b = ray_product(p2.fan(), &[1]);
        let lhs = chern_character(&p2, &crate::sheaf::k_product(p2.fan(), &a, &b));
        let rhs = p2.mul(&chern_character(&p2, &a), &chern_character(&p2, &b));
        for d in 0..=2 {
            assert!(p2.h_equal(&lhs.degree_part(d), &rhs.degree_part(d)).unwrap());
        }
    }

    #[test]
    fn todd_classes() {
        let p1 = ring("p1");
        let td = todd_class(&p1);
        let expected = SrElement::one().add(&var(0).add(&var(1)).scale(&Q::new(1.into(), 2.into())));
        assert!(p1.h_equal(&td.degree_part(1), &expected.degree_part(1)).unwrap());
        for name in ["p1", "p2", "p1xp1", "p3", "bl-p2"] {
            let r = ring(name);
            assert!(todd_check(&r).passed(), "{name}");
        }
    }

    #[test]
    fn l_class_of_p2() {
        let p2 = ring("p2");
        let l = l_class(&p2);
        assert_eq!(p2.integrate_top(&l), q(1));
        let third = Q::new(1.into(), 3.into());
        let expected = (0..3).fold(SrElement::zero(), |acc, r| acc.add(&var(r).pow(2).scale(&third)));
        assert!(p2.h_equal(&l.degree_part(2), &expected).unwrap());
        assert!(p2.h_equal(&l_top_by_enumeration(&p2).unwrap(), &expected).unwrap());
        assert_eq!(l_top_by_enumeration(&ring("p1")), Err(Error::OddRank(1)));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(4, 1), vec![vec![4]]);
        assert_eq!(compositions(5, 3).len(), 6);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn riemann_roch() {
        let p2 = ring("p2");
        for s in 0..p2.fan().cones().len() {
            let rep = rr_check(&p2, &KClass::basis(s));
            assert!(rep.passed());
            assert_eq!(rep.values["chi"], if s == 0 { "1" } else { "0" });
        }
        let p1 = ring("p1");
        let prod = ray_product(p1.fan(), &[0, 1]);
        let rep = rr_check(&p1, &prod);
        assert!(rep.passed());
        assert_eq!(rep.values["chi"], "-1");
    }

    #[test]
    fn signature_theorem() {
        for (name, s) in [("p2", "1"), ("p1xp1", "0"), ("bl-p1p1", "-1")] {
            let rep = signature_theorem_check(&ring(name));
            assert!(rep.passed(), "{name}");
            assert_eq!(rep.values["integral_l"], s);
        }
        assert!(signature_theorem_check(&ring("p3")).passed());
    }

    #[test]
    fn exceptional_divisors() {
        let p2 = ring("p2");
        let rep = exceptional_positivity_check(&p2, &Cone::new(vec![0, 1])).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.values["t"], "1");
        let p1p1 = ring("p1xp1");
        let rep = exceptional_positivity_check(&p1p1, &Cone::new(vec![0, 2])).unwrap();
        assert_eq!(rep.values["t"], "1");
        assert!(exceptional_positivity_check(&p2, &Cone::ray(0)).is_err());
    }

    #[test]
    fn leung_reiner() {
        assert_eq!(leung_reiner_certificate(&ring("p2")), Err(Error::NotLocallyConvex));
        let rep = leung_reiner_certificate(&ring("bl-p1p1")).unwrap();
        assert!(rep.passed());
        let mut values: Vec<String> = rep.terms.iter().map(|t| t.value.to_string()).collect();
        values.sort();
        assert_eq!(values, vec!["0", "0", "1", "1", "1"]);
        assert_eq!(rep.values["signed_signature"], "1");
    }

    #[test]
    fn recursions() {
        let p2 = ring("p2");
        let rep = subdivision_recursion_check(&p2, &Cone::new(vec![0, 1])).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.values["signature_after"], "0");
        let p3 = ring("p3");
        assert_eq!(subdivision_recursion_check(&p3, &Cone::new(vec![0, 1])), Err(Error::OddRank(3)));
    }
}
