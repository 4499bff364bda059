use fancoh::catalog;
use fancoh::classes::{rr_check_with, signature_theorem_check, todd_check, todd_class};
use fancoh::cohomology::{pullback_sr, CohomologyRing, Monomial, SrElement};
use fancoh::linalg::{inertia, QMatrix};
use fancoh::sheaf::{chi_k, forms_sum_kclass, KClass};
use fancoh::subdivision::{is_convex_pl, pullback_pl, random_chain, Convexity};
use fancoh::{Cone, Fan, PlFunction, Q};
use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}

fn chain_fan(seed: u64, start: &str, steps: usize) -> Fan {
    let f = catalog::by_name(start).unwrap();
    random_chain(seed, &f, steps).unwrap().pop().map_or(f, |s| s.fan)
}

fn eigen_signature(m: &QMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 0;
    }
    let d = DMatrix::from_fn(n, n, |i, j| m[i][j].to_f64().unwrap());
    let ev = d.symmetric_eigen().eigenvalues;
    let tol = 1e-9 * ev.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    ev.iter().map(|&x| if x > tol { 1 } else if x < -tol { -1 } else { 0 }).sum()
}

fn start_name() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("p2"), Just("p1xp1"), Just("bl-p2"), Just("bl-p1p1")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inertia_matches_eigenvalues(entries in proptest::collection::vec(-6i64..=6, 36), n in 1usize..=6) {
        let mut m = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                m[i][j] = q(entries[i * 6 + j]);
                m[j][i] = q(entries[i * 6 + j]);
            }
        }
        let inr = inertia(&m);
        prop_assert_eq!(inr.positive + inr.negative + inr.zero, n);
        prop_assert_eq!(inr.signature(), eigen_signature(&m));
    }

    #[test]
    fn chain_signatures_match_eigen_oracle(seed in 0u64..10_000, start in start_name(), steps in 0usize..=8) {
        let fan = chain_fan(seed, start, steps);
        let ring = CohomologyRing::new(&fan).unwrap();
        let rep = ring.signature_report();
        prop_assert_eq!(rep.signature, eigen_signature(&rep.gram));
        prop_assert!(signature_theorem_check(&ring).passed());
        let g = &rep.gram;
        prop_assert_eq!(inertia(g).zero, 0, "Poincaré pairing degenerate");
    }

    #[test]
    fn riemann_roch_along_rank2_chains(seed in 0u64..10_000, start in start_name(), steps in 0usize..=20) {
        let fan = chain_fan(seed, start, steps);
        let ring = CohomologyRing::new(&fan).unwrap();
        prop_assert!(todd_check(&ring).passed());
        let td = todd_class(&ring);
        for s in 0..fan.cones().len() {
            prop_assert!(rr_check_with(&ring, &KClass::basis(s), &td).passed());
        }
    }

    #[test]
    fn h_vector_is_permutation_invariant(seed in 0u64..10_000, steps in 0usize..=5, keys in proptest::collection::vec(any::<u32>(), 12)) {
        let fan = chain_fan(seed, "p1xp1", steps);
        let mut perm: Vec<usize> = (0..fan.num_rays()).collect();
        perm.sort_by_key(|&i| (keys[i], i));
        let g = fan.permute_rays(&perm).unwrap();
        let a = CohomologyRing::new(&fan).unwrap();
        let b = CohomologyRing::new(&g).unwrap();
        prop_assert_eq!(a.h_vector(), b.h_vector());
        prop_assert_eq!(a.signature_report().signature, b.signature_report().signature);
    }

    #[test]
    fn subdivision_bookkeeping(seed in 0u64..10_000, start in start_name(), steps in 1usize..=6) {
        let f = catalog::by_name(start).unwrap();
        let chain = random_chain(seed, &f, steps).unwrap();
        let mut prev = f;
        for step in chain {
            let sigma = step.map.center().unwrap().clone();
            let containing = prev.maximal_cones().iter().filter(|&&m| sigma.is_face_of(prev.cone(m))).count();
            prop_assert_eq!(
                step.fan.maximal_cones().len(),
                prev.maximal_cones().len() + (sigma.dim() - 1) * containing
            );
            prop_assert_eq!(step.fan.num_rays(), prev.num_rays() + 1);
            let h0 = CohomologyRing::new(&prev).unwrap().h_vector();
            let h1 = CohomologyRing::new(&step.fan).unwrap().h_vector();
            prop_assert_eq!(h1.iter().sum::<usize>(), h0.iter().sum::<usize>() + sigma.dim() - 1);
            // π*(strictly convex) stays convex, loses strictness
            let anti = PlFunction::new(vec![q(1); prev.num_rays()]);
            if is_convex_pl(&prev, &anti).unwrap() == Convexity::StrictlyConvex {
                let pb = pullback_pl(&step.map, &anti);
                prop_assert_eq!(is_convex_pl(&step.fan, &pb).unwrap(), Convexity::Convex);
            }
            prev = step.fan;
        }
    }

    #[test]
    fn integrals_survive_pullback(seed in 0u64..10_000, start in start_name(), steps in 1usize..=4, a in -3i64..=3, b in -3i64..=3) {
        let f = catalog::by_name(start).unwrap();
        let chain = random_chain(seed, &f, steps).unwrap();
        let last = chain.last().unwrap();
        let coarse = CohomologyRing::new(&last.map.target).unwrap();
        let fine = CohomologyRing::new(&last.fan).unwrap();
        let ell = SrElement::var(0).scale(&q(a)).add(&SrElement::var(1).scale(&q(b))).add(&SrElement::var(2));
        let top = ell.pow(2);
        prop_assert_eq!(fine.integrate(&pullback_sr(&last.map, &top)).unwrap(), coarse.integrate(&top).unwrap());
    }

    #[test]
    fn normal_form_preserves_integrals(seed in 0u64..10_000, steps in 0usize..=4, exps in proptest::collection::vec(0usize..12, 3)) {
        let fan = chain_fan(seed, "p1xp2", steps);
        let ring = CohomologyRing::new(&fan).unwrap();
        let r = fan.num_rays();
        let m = SrElement::monomial(Monomial::new(exps.iter().map(|e| e % r).collect()));
        prop_assert_eq!(ring.integrate(&m).unwrap(), ring.integrate(&ring.normal_form(&m)).unwrap());
        let lin = SrElement::var(exps[0] % r).add(&SrElement::var(exps[1] % r).scale(&q(-2)));
        let cube = lin.pow(3);
        prop_assert_eq!(ring.integrate(&cube).unwrap(), ring.integrate(&ring.product([&lin, &lin, &lin])).unwrap());
    }
}

#[test]
fn forms_sum_has_euler_characteristic_epsilon() {
    for (name, fan) in catalog::standard(4) {
        let ring = CohomologyRing::new(&fan).unwrap();
        let eps = ring.signature_report().epsilon;
        assert_eq!(chi_k(&fan, &forms_sum_kclass(&fan)), q(eps), "{name}");
    }
}

#[test]
fn anticanonical_volume_is_positive() {
    for name in ["p1", "p2", "p3", "p1xp1", "bl-p2", "bl-p1p1", "p1xp2", "p2xp2"] {
        let fan = catalog::by_name(name).unwrap();
        let anti = PlFunction::new(vec![q(1); fan.num_rays()]);
        assert_eq!(is_convex_pl(&fan, &anti).unwrap(), Convexity::StrictlyConvex, "{name}");
        let ring = CohomologyRing::new(&fan).unwrap();
        let vol = ring.integrate(&SrElement::from_pl(&anti).pow(fan.rank() as u32)).unwrap();
        assert!(vol > Q::zero(), "{name}");
    }
    // (-K)^2 = 9, 8, 8, 7 for P2, P1xP1, Bl P2, Bl P1xP1
    for (name, k2) in [("p2", 9), ("p1xp1", 8), ("bl-p2", 8), ("bl-p1p1", 7)] {
        let fan = catalog::by_name(name).unwrap();
        let ring = CohomologyRing::new(&fan).unwrap();
        let ell = SrElement::from_pl(&PlFunction::new(vec![q(1); fan.num_rays()]));
        assert_eq!(ring.integrate(&ell.pow(2)).unwrap(), q(k2), "{name}");
    }
}

#[test]
fn exceptional_self_intersection() {
    let bl = catalog::blowup_p2();
    let ring = CohomologyRing::new(&bl).unwrap();
    let e = bl.num_rays() - 1;
    assert_eq!(ring.integrate(&SrElement::var(e).pow(2)).unwrap(), q(-1));
    assert!(ring.verify_star_integral(&Cone::ray(e), &Monomial::var(e)).is_err());
}
