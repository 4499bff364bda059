//! Named theorem checks behind a common trait, selectable at runtime.

use crate::classes::{
    exceptional_positivity_check, leung_reiner_certificate, rr_check_with, signature_theorem_check,
    subdivision_recursion_check, todd_check, todd_class, Status, TheoremReport,
};
use crate::cohomology::CohomologyRing;
use crate::error::{Error, Result};
use crate::sheaf::KClass;

pub trait FanCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, ring: &CohomologyRing) -> Result<Vec<TheoremReport>>;
}

struct Todd;
struct RiemannRoch;
struct Signature;
struct LeungReiner;
struct Exceptional;
struct Recursion;

impl FanCheck for Todd {
    fn name(&self) -> &'static str {
        "todd-check"
    }
    fn summary(&self) -> &'static str {
        "integral of the Todd class equals 1"
    }
    fn run(&self, ring: &CohomologyRing) -> Result<Vec<TheoremReport>> {
        Ok(vec![todd_check(ring)])
    }
}

impl FanCheck for RiemannRoch {
    fn name(&self) -> &'static str {
        "rr-check"
    }
    fn summary(&self) -> &'static str {
        "chi([O(s)]) = integral of ch([O(s)]) Td for every cone s"
    }
    fn run(&self, ring: &CohomologyRing) -> Result<Vec<TheoremReport>> {
        let td = todd_class(ring);
        Ok((0..ring.fan().cones().len())
            .map(|s| {
                let mut r = rr_check_with(ring, &KClass::basis(s), &td);
                r.values.insert("cone".into(), ring.fan().cone(s).to_string());
                r
            })
            .collect())
    }
}

impl FanCheck for Signature {
    fn name(&self) -> &'static str {
        "sig-check"
    }
    fn summary(&self) -> &'static str {
        "signature = epsilon = integral of L"
    }
    fn run(&self, ring: &CohomologyRing) -> Result<Vec<TheoremReport>> {
        Ok(vec![signature_theorem_check(ring)])
    }
}

impl FanCheck for LeungReiner {
    fn name(&self) -> &'static str {
        "lr-certify"
    }
    fn summary(&self) -> &'static str {
        "(-1)^n signature >= 0 for locally convex fans of rank 2n, with term table"
    }
    fn run(&self, ring: &CohomologyRing) -> Result<Vec<TheoremReport>> {
        match leung_reiner_certificate(ring) {
            Ok(r) => Ok(vec![r]),
            Err(Error::NotLocallyConvex) => Ok(vec![hypothesis_failed("leung_reiner", Some(false))]),
            Err(Error::OddRank(n)) => {
                let mut r = hypothesis_failed("leung_reiner", None);
                r.values.insert("rank".into(), n.to_string());
                Ok(vec![r])
            }
            Err(e) => Err(e),
        }
    }
}

impl FanCheck for Exceptional {
    fn name(&self) -> &'static str {
        "exceptional-check"
    }
    fn summary(&self) -> &'static str {
        "exceptional divisor positivity at every cone of dimension 2..=4"
    }
    fn run(&self, ring: &CohomologyRing) -> Result<Vec<TheoremReport>> {
        ring.fan()
            .cones()
            .iter()
            .filter(|c| (2..=4).contains(&c.dim()))
            .map(|c| exceptional_positivity_check(ring, c))
            .collect()
    }
}

impl FanCheck for Recursion {
    fn name(&self) -> &'static str {
        "recursion-check"
    }
    fn summary(&self) -> &'static str {
        "signature and epsilon recursions under regular star subdivision at every cone"
    }
    fn run(&self, ring: &CohomologyRing) -> Result<Vec<TheoremReport>> {
        if ring.rank() % 2 == 1 {
            let mut r = hypothesis_failed("subdivision_recursion", None);
            r.values.insert("rank".into(), ring.rank().to_string());
            return Ok(vec![r]);
        }
        ring.fan()
            .cones()
            .iter()
            .filter(|c| c.dim() >= 2)
            .map(|c| subdivision_recursion_check(ring, c))
            .collect()
    }
}

fn hypothesis_failed(theorem: &str, locally_convex: Option<bool>) -> TheoremReport {
    TheoremReport {
        theorem: theorem.to_string(),
        fan: String::new(),
        status: Status::HypothesisFailed,
        values: Default::default(),
        locally_convex,
        terms: Vec::new(),
    }
}

pub struct CheckRegistry {
    checks: Vec<Box<dyn FanCheck>>,
}

impl CheckRegistry {
    pub fn empty() -> Self {
        Self { checks: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Todd));
        r.register(Box::new(RiemannRoch));
        r.register(Box::new(Signature));
        r.register(Box::new(LeungReiner));
        r.register(Box::new(Exceptional));
        r.register(Box::new(Recursion));
        r
    }

    /// Adds `check`, replacing any check of the same name.
    pub fn register(&mut self, check: Box<dyn FanCheck>) {
        self.checks.retain(|c| c.name() != check.name());
        self.checks.push(check);
    }

    pub fn get(&self, name: &str) -> Result<&dyn FanCheck> {
        self.checks
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::UnknownCheck(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }
}

impl Default for CheckRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn registry_lookup() {
        let reg = CheckRegistry::standard();
        assert_eq!(
            reg.names(),
            vec!["todd-check", "rr-check", "sig-check", "lr-certify", "exceptional-check", "recursion-check"]
        );
        assert!(matches!(reg.get("nope"), Err(Error::UnknownCheck(_))));
        let ring = CohomologyRing::new(&catalog::projective(2)).unwrap();
        for name in reg.names() {
            let reports = reg.get(name).unwrap().run(&ring).unwrap();
            assert!(reports.iter().all(TheoremReport::passed), "{name}");
        }
        let lr = reg.get("lr-certify").unwrap().run(&ring).unwrap();
        assert_eq!(lr[0].status, Status::HypothesisFailed);
        assert_eq!(lr[0].locally_convex, Some(false));
    }

    #[test]
    fn replacing_a_check() {
        struct Always;
        impl FanCheck for Always {
            fn name(&self) -> &'static str {
                "todd-check"
            }
            fn summary(&self) -> &'static str {
                "stub"
            }
            fn run(&self, _: &CohomologyRing) -> Result<Vec<TheoremReport>> {
                Ok(Vec::new())
            }
        }
        let mut reg = CheckRegistry::standard();
        reg.register(Box::new(Always));
        assert_eq!(reg.names().len(), 6);
        assert_eq!(reg.get("todd-check").unwrap().summary(), "stub");
    }
}
