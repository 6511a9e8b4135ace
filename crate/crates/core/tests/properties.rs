//! Algebraic invariants checked with proptest, plus the scaling scan.

mod common;

use common::*;
use kenmotsu_core::calculus::{lie_bracket, lie_derivative_cotensor2};
use kenmotsu_core::catalog;
use kenmotsu_core::document::{emit_manifold, parse_manifold, ManifoldDocument};
use kenmotsu_core::frame::{CoTensor2, Geometry, LieFrameManifold};
use kenmotsu_core::rational::{format_rational, frac, int, parse_rational};
use kenmotsu_core::soliton::{soliton_residual, solve_soliton, SolitonProblem};
use kenmotsu_core::Rational;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

/// A random frame from a seed, so shrinking stays meaningful.
fn frame() -> impl Strategy<Value = LieFrameManifold> {
    any::<u64>().prop_map(|seed| random_frame(&mut rng(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(n in any::<i64>(), d in 1i64..=i64::MAX) {
        let r = frac(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(m in frame(), seed in any::<u64>(), s in rational(), t in rational()) {
        let mut rng = rng(seed);
        let d = m.dim();
        let (x, y, z) = (random_vector(&mut rng, d), random_vector(&mut rng, d), random_vector(&mut rng, d));
        let xy = lie_bracket(&m, &x, &y).unwrap();
        prop_assert_eq!(lie_bracket(&m, &y, &x).unwrap(), xy.scaled(&-int(1)));
        let lhs = lie_bracket(&m, &x.scaled(&s).add(&z.scaled(&t)), &y).unwrap();
        let rhs = xy.scaled(&s).add(&lie_bracket(&m, &z, &y).unwrap().scaled(&t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_is_linear_in_v(m in frame(), seed in any::<u64>(), s in rational(), t in rational()) {
        let mut rng = rng(seed);
        let d = m.dim();
        let (v, w) = (random_vector(&mut rng, d), random_vector(&mut rng, d));
        let g = m.metric_tensor();
        let lhs = lie_derivative_cotensor2(&m, &v.scaled(&s).add(&w.scaled(&t)), &g).unwrap();
        let rhs = lie_derivative_cotensor2(&m, &v, &g).unwrap().scaled(&s)
            .add(&lie_derivative_cotensor2(&m, &w, &g).unwrap().scaled(&t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn connection_is_tensorial_in_x(m in frame(), seed in any::<u64>(), s in rational()) {
        let mut rng = rng(seed);
        let d = m.dim();
        let geo = Geometry::compute(m).unwrap();
        let (x, y) = (random_vector(&mut rng, d), random_vector(&mut rng, d));
        prop_assert_eq!(
            geo.connection.covariant(&x.scaled(&s), &y),
            geo.connection.covariant(&x, &y).scaled(&s)
        );
    }

    #[test]
    fn metric_scaling_leaves_ricci_unchanged(m in frame(), c in (1i64..=9, 1i64..=9)) {
        let c = frac(c.0, c.1);
        let scaled = m.with_metric(m.metric().mapv(|x| x * &c)).unwrap();
        let (a, b) = (Geometry::compute(m).unwrap(), Geometry::compute(scaled).unwrap());
        prop_assert_eq!(&a.connection, &b.connection);
        prop_assert_eq!(&a.ricci, &b.ricci);
        prop_assert_eq!(a.scalar_curvature / &c, b.scalar_curvature);
    }

    #[test]
    fn document_round_trip(m in frame(), with_contact in any::<bool>(), seed in any::<u64>()) {
        let (m, acs) = if with_contact { random_kenmotsu(&mut rng(seed)) } else {
            let acs = standard_kenmotsu(3).1;
            (m, acs)
        };
        let contact = with_contact.then_some(&acs);
        let doc = ManifoldDocument::from_model("fuzz", &m, contact, Some("tag".into()));
        let text = emit_manifold(&doc);
        let back = parse_manifold(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(emit_manifold(&back), text);
        let model = back.to_model().unwrap();
        prop_assert_eq!(model.manifold, m);
        prop_assert_eq!(model.contact.as_ref(), contact);
    }
}

/// `L_{tV} g = t L_V g`, and the solver reports an exact soliton for `tV`
/// exactly when some `(λ, μ)` zeroes the residual. The scan runs over a λ grid
/// with step 1/15; for each λ the only candidate μ is read off the ξξ entry.
#[test]
fn scaling_covariance_with_brute_force_scan() {
    let grid: Vec<Rational> = (-150..=150).map(|k| frac(k, 15)).collect();
    for name in catalog::names() {
        let model = catalog::load(name).unwrap().unwrap();
        let acs = model.contact.unwrap();
        let geo = Geometry::compute(model.manifold).unwrap();
        let m = &geo.manifold;
        let d = m.dim();
        let g = m.metric_tensor();
        for v in [acs.xi().clone(), kenmotsu_core::frame::FrameVector::basis(d, 0)] {
            let base = lie_derivative_cotensor2(m, &v, &g).unwrap();
            for t in [-1i64, 0, 1, 2] {
                let t = int(t);
                let tv = v.scaled(&t);
                assert_eq!(lie_derivative_cotensor2(m, &tv, &g).unwrap(), base.scaled(&t));
                let prob = SolitonProblem::new(tv, int(0));
                let sol = solve_soliton(&geo, &acs, &prob).unwrap();
                // residual is affine in (λ, μ)
                let r0 = soliton_residual(&geo, &acs, &prob, &Rational::zero(), &Rational::zero()).unwrap();
                let ee = acs.eta_eta();
                let residual = |l: &Rational, u: &Rational| -> CoTensor2 {
                    r0.add(&g.scaled(&(int(2) * l))).add(&ee.scaled(&(int(2) * u)))
                };
                let xi_xi = ee.eval(acs.xi(), acs.xi());
                let found = grid.iter().any(|l| {
                    let u = -residual(l, &Rational::zero()).eval(acs.xi(), acs.xi()) / (int(2) * &xi_xi);
                    residual(l, &u).is_zero()
                });
                if sol.is_exact() {
                    assert!(sol.residual.is_zero(), "{name} t={t}");
                    assert!(found, "{name} t={t}: solver value outside the scan grid");
                } else {
                    assert!(!found, "{name} t={t}: scan found a solution the solver missed");
                }
            }
        }
    }
}
