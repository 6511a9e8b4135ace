//! The conformal η-Ricci soliton equation
//!
//! ```text
//! L_V g + 2S + [2λ − (p + 2/dim)] g + 2μ η⊗η = 0
//! ```
//!
//! posed on a homogeneous model with a given potential field `V` and
//! conformal pressure `p`, solved exactly for the constants `(λ, μ)`.

use std::fmt;

use ndarray::{Array1, Array2};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::calculus::{
    covariant_derivative_cotensor2, covariant_derivative_endomorphism, covariant_derivative_vector, hessian,
    lie_derivative_connection, lie_derivative_cotensor2, lie_derivative_curvature, lie_derivative_oneform,
};
use crate::contact::AlmostContactStructure;
use crate::error::{Error, Result};
use crate::frame::{CoTensor2, FrameVector, Geometry};
use crate::linalg::{self, AffineSolution};
use crate::rational::{frac, int, one, Rational};
use crate::validation::{tuples, Check, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolitonProblem {
    /// Potential vector field.
    pub v: FrameVector,
    /// Conformal pressure.
    pub p: Rational,
}

impl SolitonProblem {
    pub fn new(v: FrameVector, p: Rational) -> Self {
        SolitonProblem { v, p }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Shrinking,
    Steady,
    Expanding,
}

impl Classification {
    /// Shrinking for `λ > 0`, steady for `λ = 0`, expanding for `λ < 0`.
    pub fn from_lambda(lambda: &Rational) -> Self {
        if lambda.is_positive() {
            Classification::Shrinking
        } else if lambda.is_zero() {
            Classification::Steady
        } else {
            Classification::Expanding
        }
    }

    /// The equivalent test on `μ` against `2n + p/2 + 1/(2n+1)`, valid on
    /// Kenmotsu models where `λ + μ` equals that threshold.
    pub fn from_mu(mu: &Rational, n: usize, p: &Rational) -> Self {
        let threshold = trace_constant(n, p);
        if mu < &threshold {
            Classification::Shrinking
        } else if mu == &threshold {
            Classification::Steady
        } else {
            Classification::Expanding
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Shrinking => "shrinking",
            Classification::Steady => "steady",
            Classification::Expanding => "expanding",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolitonStatus {
    ExactSoliton,
    /// Equations for frame pairs up to and including `witness` (0-based, row-major)
    /// admit no common `(λ, μ)`.
    Inconsistent {
        witness: [usize; 2],
    },
    /// Every `(λ, μ) + t·direction` solves the system.
    Underdetermined {
        direction: [Rational; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolitonSolution {
    pub lambda: Rational,
    pub mu: Rational,
    /// Left-hand side of the soliton equation at `(lambda, mu)`. For an
    /// inconsistent system `(lambda, mu)` solves the equations before the witness.
    pub residual: CoTensor2,
    pub status: SolitonStatus,
    pub classification: Option<Classification>,
}

impl SolitonSolution {
    pub fn is_exact(&self) -> bool {
        self.status == SolitonStatus::ExactSoliton
    }
}

/// `2n + p/2 + 1/(2n+1)`, the value of `λ + μ` forced on a Kenmotsu model.
pub fn trace_constant(n: usize, p: &Rational) -> Rational {
    let dim = 2 * n as i64 + 1;
    int(2 * n as i64) + p * frac(1, 2) + frac(1, dim)
}

/// `p + 2/dim`.
fn pressure_term(dim: usize, p: &Rational) -> Rational {
    p + frac(2, dim as i64)
}

fn residual_of(
    geo: &Geometry,
    acs: &AlmostContactStructure,
    drift: &CoTensor2,
    p: &Rational,
    lambda: &Rational,
    mu: &Rational,
) -> CoTensor2 {
    let g = geo.manifold.metric_tensor();
    let coef = int(2) * lambda - pressure_term(geo.dim(), p);
    drift.add(&geo.ricci.scaled(&int(2))).add(&g.scaled(&coef)).add(&acs.eta_eta().scaled(&(int(2) * mu)))
}

fn check_dims(geo: &Geometry, acs: &AlmostContactStructure, v: &FrameVector) -> Result<()> {
    for found in [acs.dim(), v.dim()] {
        if found != geo.dim() {
            return Err(Error::DimensionMismatch { expected: geo.dim(), found });
        }
    }
    Ok(())
}

/// Left-hand side of the soliton equation on all frame pairs.
pub fn soliton_residual(
    geo: &Geometry,
    acs: &AlmostContactStructure,
    prob: &SolitonProblem,
    lambda: &Rational,
    mu: &Rational,
) -> Result<CoTensor2> {
    check_dims(geo, acs, &prob.v)?;
    let lvg = lie_derivative_cotensor2(&geo.manifold, &prob.v, &geo.manifold.metric_tensor())?;
    Ok(residual_of(geo, acs, &lvg, &prob.p, lambda, mu))
}

/// Stacks the equation over all frame pairs as a linear system in `(λ, μ)`
/// with `drift` in place of `L_V g`.
fn solve_with_drift(geo: &Geometry, acs: &AlmostContactStructure, drift: &CoTensor2, p: &Rational) -> SolitonSolution {
    let d = geo.dim();
    let g = geo.manifold.metric();
    let ee = acs.eta_eta();
    let constant = residual_of(geo, acs, drift, p, &Rational::zero(), &Rational::zero());
    let a = Array2::from_shape_fn((d * d, 2), |(row, col)| {
        let (i, j) = (row / d, row % d);
        if col == 0 {
            int(2) * &g[[i, j]]
        } else {
            int(2) * &ee.0[[i, j]]
        }
    });
    let b = Array1::from_shape_fn(d * d, |row| -constant.0[[row / d, row % d]].clone());
    let (lambda, mu, status) = match linalg::solve_affine(&a, &b) {
        AffineSolution::Unique(x) => (x[0].clone(), x[1].clone(), SolitonStatus::ExactSoliton),
        AffineSolution::Family { particular, directions } => {
            let dir = &directions[0];
            (
                particular[0].clone(),
                particular[1].clone(),
                SolitonStatus::Underdetermined { direction: [dir[0].clone(), dir[1].clone()] },
            )
        }
        AffineSolution::Inconsistent { row } => {
            let head = a.slice(ndarray::s![..row, ..]).to_owned();
            let rhs = b.slice(ndarray::s![..row]).to_owned();
            let (l, m) = match linalg::solve_affine(&head, &rhs) {
                AffineSolution::Unique(x) => (x[0].clone(), x[1].clone()),
                AffineSolution::Family { particular, .. } => (particular[0].clone(), particular[1].clone()),
                AffineSolution::Inconsistent { .. } => unreachable!("prefix of the first inconsistent row"),
            };
            (l, m, SolitonStatus::Inconsistent { witness: [row / d, row % d] })
        }
    };
    let residual = residual_of(geo, acs, drift, p, &lambda, &mu);
    let classification = match status {
        SolitonStatus::ExactSoliton => Some(Classification::from_lambda(&lambda)),
        _ => None,
    };
    SolitonSolution { lambda, mu, residual, status, classification }
}

pub fn solve_soliton(geo: &Geometry, acs: &AlmostContactStructure, prob: &SolitonProblem) -> Result<SolitonSolution> {
    check_dims(geo, acs, &prob.v)?;
    let lvg = lie_derivative_cotensor2(&geo.manifold, &prob.v, &geo.manifold.metric_tensor())?;
    Ok(solve_with_drift(geo, acs, &lvg, &prob.p))
}

/// `λ + μ = 2n + p/2 + 1/(2n+1)` for an exact soliton on a verified Kenmotsu model.
/// Reported as not applicable otherwise.
pub fn check_sum_constraint(
    sol: &SolitonSolution,
    acs: &AlmostContactStructure,
    prob: &SolitonProblem,
    kenmotsu_verified: bool,
) -> Check {
    const NAME: &str = "lambda_mu_trace_constraint";
    if !kenmotsu_verified || !sol.is_exact() {
        return Check::not_applicable(NAME);
    }
    let expected = trace_constant(acs.n(), &prob.p);
    Check::identity(NAME, tuples(1, 1), |_| (&sol.lambda + &sol.mu, expected.clone()))
}

/// Classification by the sign of `λ` agrees with the threshold test on `μ`.
pub fn check_classification_by_mu(
    sol: &SolitonSolution,
    acs: &AlmostContactStructure,
    prob: &SolitonProblem,
    kenmotsu_verified: bool,
) -> Check {
    const NAME: &str = "classification_by_mu";
    match sol.classification {
        Some(by_lambda) if kenmotsu_verified => {
            Check::from_bool(NAME, by_lambda == Classification::from_mu(&sol.mu, acs.n(), &prob.p))
        }
        _ => Check::not_applicable(NAME),
    }
}

/// Evaluates the chain of identities satisfied by a soliton on a Kenmotsu model,
/// each side computed independently.
pub fn soliton_lemma_suite(
    geo: &Geometry,
    acs: &AlmostContactStructure,
    prob: &SolitonProblem,
    sol: &SolitonSolution,
) -> Result<ValidationReport> {
    check_dims(geo, acs, &prob.v)?;
    let m = &geo.manifold;
    let d = m.dim();
    let n = acs.n();
    let nq = int(n as i64);
    let g = m.metric();
    let gt = m.metric_tensor();
    let xi = acs.xi();
    let eta = acs.eta();
    let (lambda, mu, p) = (&sol.lambda, &sol.mu, &prob.p);
    let e = |i| FrameVector::basis(d, i);
    let delta = |a: usize, b: usize| if a == b { one() } else { Rational::zero() };
    let mut report = ValidationReport::new();

    let lv_nabla = lie_derivative_connection(m, &geo.connection, &geo.curvature, &prob.v)?;
    let lvg = lie_derivative_cotensor2(m, &prob.v, &gt)?;
    let n_lvg = covariant_derivative_cotensor2(&geo.connection, &lvg);
    let ns = covariant_derivative_cotensor2(&geo.connection, &geo.ricci);
    let q = &geo.ricci_operator.0;
    let n_q = covariant_derivative_endomorphism(&geo.connection, &geo.ricci_operator);
    let lvr = lie_derivative_curvature(m, &geo.connection, &geo.curvature, &prob.v)?;
    let lvs = lie_derivative_cotensor2(m, &prob.v, &geo.ricci)?;
    let lv_xi = crate::calculus::lie_bracket(m, &prob.v, xi)?;
    let lv_eta = lie_derivative_oneform(m, &prob.v, eta)?;
    let half = frac(1, 2);
    // g((L_V∇)(X,Y), Z)
    let lowered = |x: usize, y: usize, z: usize| -> Rational {
        (0..d).fold(Rational::zero(), |acc, l| acc + &lv_nabla.0[[x, y, l]] * &g[[l, z]])
    };

    let exact = sol.is_exact();
    let applicable = |report: &mut ValidationReport, name: &str, check: Check| {
        if exact {
            report.push(check);
        } else {
            report.push(Check::not_applicable(name));
        }
    };

    // identities that hold for every V
    report.push(Check::from_bool("lie_connection_symmetric", lv_nabla.is_symmetric()));
    report.push(Check::identity("lie_connection_commutation", tuples(d, 3), |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let rhs = (&n_lvg[[x, y, z]] + &n_lvg[[y, z, x]] - &n_lvg[[z, x, y]]) * &half;
        (lowered(x, y, z), rhs)
    }));
    report.push(Check::identity("lie_metric_xi_split", tuples(d, 1), |t| {
        let x = t[0];
        let rhs = &lv_eta[x] - m.inner(&e(x), &lv_xi);
        (lvg.eval(&e(x), xi), rhs)
    }));

    // g((L_V∇)(X,Y),Z) = (∇_Z S)(X,Y) − (∇_X S)(Y,Z) − (∇_Y S)(Z,X) − 2μ[g(X,Y)η(Z) − η(X)η(Y)η(Z)]
    let c = Check::identity("lie_connection_from_ricci", tuples(d, 3), |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let rhs = &ns[[z, x, y]]
            - &ns[[x, y, z]]
            - &ns[[y, z, x]]
            - int(2) * mu * (&g[[x, y]] * &eta[z] - &eta[x] * &eta[y] * &eta[z]);
        (lowered(x, y, z), rhs)
    });
    applicable(&mut report, "lie_connection_from_ricci", c);

    // (L_V∇)(X, ξ) = 2QX + 4nX
    let c = Check::identity("lie_connection_along_xi", tuples(d, 2), |t| {
        let (x, l) = (t[0], t[1]);
        let lhs = lv_nabla.apply(&e(x), xi)[l].clone();
        (lhs, int(2) * &q[[l, x]] + int(4) * &nq * delta(x, l))
    });
    applicable(&mut report, "lie_connection_along_xi", c);

    // (L_V R)(X,Y)ξ = 2[(∇_X Q)Y − (∇_Y Q)X + η(X)QY − η(Y)QX] + 4n[η(X)Y − η(Y)X]
    let c = Check::identity("lie_curvature_xy_xi", tuples(d, 3), |t| {
        let (x, y, l) = (t[0], t[1], t[2]);
        let lhs = lvr.apply(&e(x), &e(y), xi)[l].clone();
        let rhs = int(2) * (&n_q[[x, l, y]] - &n_q[[y, l, x]] + &eta[x] * &q[[l, y]] - &eta[y] * &q[[l, x]])
            + int(4) * &nq * (&eta[x] * delta(y, l) - &eta[y] * delta(x, l));
        (lhs, rhs)
    });
    applicable(&mut report, "lie_curvature_xy_xi", c);

    let c = Check::identity("lie_curvature_x_xi_xi", tuples(d, 2), |t| {
        (lvr.apply(&e(t[0]), xi, xi)[t[1]].clone(), Rational::zero())
    });
    applicable(&mut report, "lie_curvature_x_xi_xi", c);

    let dim = d;
    let big = int(2) * lambda + int(2) * mu - int(4) * &nq - pressure_term(dim, p);
    let c = Check::identity("lie_curvature_x_xi_xi_closed_form", tuples(d, 2), |t| {
        let (x, l) = (t[0], t[1]);
        let lhs = lvr.apply(&e(x), xi, xi)[l].clone();
        (lhs, &big * (delta(x, l) - &eta[x] * &xi[l]))
    });
    applicable(&mut report, "lie_curvature_x_xi_xi_closed_form", c);

    // (L_V g)(X, ξ) = [4n − 2λ − 2μ + p + 2/(2n+1)] η(X)
    let coef = int(4) * &nq - int(2) * lambda - int(2) * mu + pressure_term(dim, p);
    let c = Check::identity("lie_metric_with_xi", tuples(d, 1), |t| (lvg.eval(&e(t[0]), xi), &coef * &eta[t[0]]));
    applicable(&mut report, "lie_metric_with_xi", c);

    let target = lambda + mu - trace_constant(n, p);
    let c = Check::identity("eta_of_lie_xi", tuples(1, 1), |_| (acs.eta_of(&lv_xi), target.clone()));
    applicable(&mut report, "eta_of_lie_xi", c);

    let c = Check::identity("lie_ricci_xi_xi", tuples(1, 1), |_| (lvs.eval(xi, xi), Rational::zero()));
    applicable(&mut report, "lie_ricci_xi_xi", c);

    // (L_V S)(Y, ξ) = −2[r + 2n(2n+1)]η(Y) − Yr, with Yr = 0
    let r_shift = &geo.scalar_curvature + int(2) * &nq * (int(2) * &nq + one());
    let c = Check::identity("lie_ricci_with_xi_trace_form", tuples(d, 1), |t| {
        (lvs.eval(&e(t[0]), xi), -int(2) * &r_shift * &eta[t[0]])
    });
    applicable(&mut report, "lie_ricci_with_xi_trace_form", c);

    let c = Check::identity("lie_ricci_with_xi", tuples(d, 1), |t| (lvs.eval(&e(t[0]), xi), Rational::zero()));
    applicable(&mut report, "lie_ricci_with_xi", c);

    let c =
        Check::identity("lie_metric_with_xi_vanishes", tuples(d, 1), |t| (lvg.eval(&e(t[0]), xi), Rational::zero()));
    applicable(&mut report, "lie_metric_with_xi_vanishes", c);

    // ξr = −2n[r + 2n(2n+1)] with ξr = 0
    let c = Check::identity("scalar_curvature_homogeneous", tuples(1, 1), |_| (r_shift.clone(), Rational::zero()));
    applicable(&mut report, "scalar_curvature_homogeneous", c);

    if n > 0 {
        let factor = int(2) * &nq + one() + &geo.scalar_curvature / (int(2) * &nq);
        let c = Check::identity("lie_xi_annihilated", tuples(d, 1), |t| (&factor * &lv_xi[t[0]], Rational::zero()));
        applicable(&mut report, "lie_xi_annihilated", c);
    } else {
        report.push(Check::not_applicable("lie_xi_annihilated"));
    }
    Ok(report)
}

/// Outcome of posing the gradient form of the equation for `V = Df`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientReport {
    pub hessian: CoTensor2,
    pub solution: SolitonSolution,
    pub checks: ValidationReport,
    /// `Df = η(Df) ξ`.
    pub collinear: bool,
}

/// Solves `Hess f + S + [λ − (p/2 + 1/dim)] g + μ η⊗η = 0` for `(λ, μ)` and
/// checks the identities a gradient soliton satisfies on a Kenmotsu model.
pub fn gradient_soliton_check(
    geo: &Geometry,
    acs: &AlmostContactStructure,
    df: &FrameVector,
    p: &Rational,
) -> Result<GradientReport> {
    check_dims(geo, acs, df)?;
    let m = &geo.manifold;
    let d = m.dim();
    let hess = hessian(m, &geo.connection, df)?;
    if !hess.symmetric {
        let (i, j) = tuples(d, 2)
            .map(|t| (t[0], t[1]))
            .find(|&(i, j)| hess.tensor.0[[i, j]] != hess.tensor.0[[j, i]])
            .expect("asymmetric entry");
        return Err(Error::AsymmetricHessian { i: i + 1, j: j + 1 });
    }
    // the gradient equation is half the general one with L_V g = 2 Hess f
    let solution = solve_with_drift(geo, acs, &hess.tensor.scaled(&int(2)), p);
    let xi = acs.xi();
    let eta = acs.eta();
    let q = &geo.ricci_operator.0;
    let n_q = covariant_derivative_endomorphism(&geo.connection, &geo.ricci_operator);
    let n_df = covariant_derivative_vector(&geo.connection, df).0;
    let e = |i| FrameVector::basis(d, i);
    let delta = |a: usize, b: usize| if a == b { one() } else { Rational::zero() };
    let (lambda, mu) = (&solution.lambda, &solution.mu);
    let shift = lambda - (p * frac(1, 2) + frac(1, d as i64));
    let df_flat = m.flat(df);
    let r_df = |x: usize, y: usize| geo.curvature.apply(&e(x), &e(y), df);

    let mut checks = ValidationReport::new();
    let names = [
        "gradient_connection_form",
        "gradient_curvature_identity",
        "gradient_curvature_xi_component",
        "gradient_curvature_potential",
    ];
    if solution.is_exact() {
        // ∇_X Df = −QX − [λ − (p/2 + 1/(2n+1))]X − μη(X)ξ
        checks.push(Check::identity(names[0], tuples(d, 2), |t| {
            let (x, l) = (t[0], t[1]);
            let rhs = -&q[[l, x]] - &shift * delta(x, l) - mu * &eta[x] * &xi[l];
            (n_df[[l, x]].clone(), rhs)
        }));
        // R(X,Y)Df = (∇_Y Q)X − (∇_X Q)Y + μ[η(X)Y − η(Y)X]
        checks.push(Check::identity(names[1], tuples(d, 3), |t| {
            let (x, y, l) = (t[0], t[1], t[2]);
            let rhs = &n_q[[y, l, x]] - &n_q[[x, l, y]] + mu * (&eta[x] * delta(y, l) - &eta[y] * delta(x, l));
            (r_df(x, y)[l].clone(), rhs)
        }));
        checks.push(Check::identity(names[2], tuples(d, 2), |t| (m.inner(&r_df(t[0], t[1]), xi), Rational::zero())));
        // g(R(X,Y)Df, ξ) = (Xf)η(Y) − (Yf)η(X)
        checks.push(Check::identity(names[3], tuples(d, 2), |t| {
            let (x, y) = (t[0], t[1]);
            (m.inner(&r_df(x, y), xi), &df_flat[x] * &eta[y] - &df_flat[y] * &eta[x])
        }));
    } else {
        for name in names {
            checks.push(Check::not_applicable(name));
        }
    }
    let along = xi.scaled(&acs.eta_of(df));
    let collinear = &along == df;
    checks.push(if solution.is_exact() {
        Check::from_bool("gradient_collinear_with_xi", collinear)
    } else {
        Check::not_applicable("gradient_collinear_with_xi")
    });
    Ok(GradientReport { hessian: hess.tensor, solution, checks, collinear })
}
