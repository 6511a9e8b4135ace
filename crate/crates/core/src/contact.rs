//! Almost contact metric structures, the Kenmotsu condition and η-Einstein fits.

use ndarray::{Array1, Array2};
use num_traits::Zero;

use crate::calculus::{covariant_derivative_cotensor2, covariant_derivative_endomorphism, covariant_derivative_vector};
use crate::error::{Error, Result};
use crate::frame::{CoTensor2, ConnectionCoefficients, Endomorphism, FrameVector, Geometry, LieFrameManifold};
use crate::linalg::{self, AffineSolution};
use crate::rational::{int, one, Rational};
use crate::validation::{tuples, Check, ValidationReport};

/// `(φ, ξ, η)` with constant components; `η` is always the metric dual of `ξ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlmostContactStructure {
    phi: Endomorphism,
    xi: FrameVector,
    eta: Array1<Rational>,
}

impl AlmostContactStructure {
    /// Attaches `(φ, ξ)` to `m`, deriving `η = g(·, ξ)`.
    pub fn new(m: &LieFrameManifold, phi: Endomorphism, xi: FrameVector) -> Result<Self> {
        let d = m.dim();
        if d.is_multiple_of(2) {
            return Err(Error::EvenDimension(d));
        }
        for found in [phi.dim(), phi.0.ncols(), xi.dim()] {
            if found != d {
                return Err(Error::DimensionMismatch { expected: d, found });
            }
        }
        let eta = m.flat(&xi);
        Ok(AlmostContactStructure { phi, xi, eta })
    }

    /// Like [`AlmostContactStructure::new`], but also checks a supplied `η`
    /// against `g(·, ξ)`.
    pub fn with_eta(m: &LieFrameManifold, phi: Endomorphism, xi: FrameVector, eta: Array1<Rational>) -> Result<Self> {
        let acs = Self::new(m, phi, xi)?;
        if eta.len() != acs.eta.len() {
            return Err(Error::DimensionMismatch { expected: acs.eta.len(), found: eta.len() });
        }
        if let Some(index) = (0..eta.len()).find(|&i| eta[i] != acs.eta[i]) {
            return Err(Error::EtaMismatch { index: index + 1 });
        }
        Ok(acs)
    }

    pub fn phi(&self) -> &Endomorphism {
        &self.phi
    }

    pub fn xi(&self) -> &FrameVector {
        &self.xi
    }

    pub fn eta(&self) -> &Array1<Rational> {
        &self.eta
    }

    pub fn dim(&self) -> usize {
        self.xi.dim()
    }

    /// `n` with `dim = 2n + 1`.
    pub fn n(&self) -> usize {
        (self.dim() - 1) / 2
    }

    pub fn eta_of(&self, x: &FrameVector) -> Rational {
        self.eta.iter().zip(x.0.iter()).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `η ⊗ η` as a (0,2) tensor.
    pub fn eta_eta(&self) -> CoTensor2 {
        CoTensor2::outer(&self.eta, &self.eta)
    }

    /// The same structure written in the frame `f_a = Σ_i p[i][a] e_i`;
    /// `m` must be the model in the old frame.
    pub fn change_basis(&self, m: &LieFrameManifold, p: &Array2<Rational>) -> Result<(LieFrameManifold, Self)> {
        let new_m = m.change_basis(p)?;
        let pinv = linalg::inverse(p)?;
        let phi = Endomorphism(linalg::matmul(&linalg::matmul(&pinv, &self.phi.0), p));
        let xi = FrameVector(linalg::matvec(&pinv, &self.xi.0));
        let acs = Self::new(&new_m, phi, xi)?;
        Ok((new_m, acs))
    }
}

fn e(d: usize, i: usize) -> FrameVector {
    FrameVector::basis(d, i)
}

/// `η(ξ) = 1`, `φξ = 0`, `η∘φ = 0`, `φ² = −I + ξ⊗η`, compatibility of `g`,
/// and `η = g(·, ξ)`.
pub fn verify_almost_contact(m: &LieFrameManifold, acs: &AlmostContactStructure) -> Result<ValidationReport> {
    let d = m.dim();
    if acs.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: acs.dim() });
    }
    let phi = &acs.phi.0;
    let xi = &acs.xi;
    let eta = &acs.eta;
    let g = m.metric();
    let mut report = ValidationReport::new();
    report.push(Check::identity("eta_of_xi", tuples(1, 1), |_| (acs.eta_of(xi), one())));
    let phi_xi = acs.phi.apply(xi);
    report.push(Check::identity("phi_xi_vanishes", tuples(d, 1), |t| (phi_xi[t[0]].clone(), Rational::zero())));
    report.push(Check::identity("eta_phi_vanishes", tuples(d, 1), |t| {
        (acs.eta_of(&acs.phi.apply(&e(d, t[0]))), Rational::zero())
    }));
    let phi2 = linalg::matmul(phi, phi);
    report.push(Check::identity("phi_squared", tuples(d, 2), |t| {
        let (i, j) = (t[0], t[1]);
        let delta = if i == j { one() } else { Rational::zero() };
        (phi2[[i, j]].clone(), &xi[i] * &eta[j] - delta)
    }));
    let compat = linalg::matmul(&linalg::matmul(&phi.t().to_owned(), g), phi);
    report.push(Check::identity("compatible_metric", tuples(d, 2), |t| {
        let (i, j) = (t[0], t[1]);
        (compat[[i, j]].clone(), &g[[i, j]] - &eta[i] * &eta[j])
    }));
    let dual = m.flat(xi);
    report.push(Check::identity("eta_metric_dual", tuples(d, 1), |t| (eta[t[0]].clone(), dual[t[0]].clone())));
    Ok(report)
}

/// `(∇_X φ)Y = g(φX, Y)ξ − η(Y)φX` and `∇_X ξ = X − η(X)ξ` on all frame fields.
pub fn verify_kenmotsu(
    m: &LieFrameManifold,
    gamma: &ConnectionCoefficients,
    acs: &AlmostContactStructure,
) -> ValidationReport {
    let d = m.dim();
    let nphi = covariant_derivative_endomorphism(gamma, &acs.phi);
    let nxi = covariant_derivative_vector(gamma, &acs.xi);
    let phi = &acs.phi.0;
    let mut report = ValidationReport::new();
    report.push(Check::identity("kenmotsu_nabla_phi", tuples(d, 3), |t| {
        let (x, y, l) = (t[0], t[1], t[2]);
        let phi_x = acs.phi.apply(&e(d, x));
        let rhs = m.inner(&phi_x, &e(d, y)) * &acs.xi[l] - &acs.eta[y] * &phi[[l, x]];
        (nphi[[x, l, y]].clone(), rhs)
    }));
    report.push(Check::identity("kenmotsu_nabla_xi", tuples(d, 2), |t| {
        let (x, l) = (t[0], t[1]);
        let delta = if x == l { one() } else { Rational::zero() };
        (nxi.0[[l, x]].clone(), delta - &acs.eta[x] * &acs.xi[l])
    }));
    report
}

/// The standard consequences of the Kenmotsu condition, checked on every frame tuple.
pub fn kenmotsu_identity_suite(geo: &Geometry, acs: &AlmostContactStructure) -> ValidationReport {
    let m = &geo.manifold;
    let d = m.dim();
    let n = int(acs.n() as i64);
    let g = m.metric();
    let eta = &acs.eta;
    let xi = &acs.xi;
    let r = &geo.curvature;
    let q = &geo.ricci_operator;
    let mut report = ValidationReport::new();

    // (∇_X η)Y = −η(∇_X Y) for constant components
    report.push(Check::identity("nabla_eta", tuples(d, 2), |t| {
        let (x, y) = (t[0], t[1]);
        let lhs = -acs.eta_of(&geo.connection.covariant(&e(d, x), &e(d, y)));
        (lhs, &g[[x, y]] - &eta[x] * &eta[y])
    }));
    report.push(Check::identity("curvature_xy_xi", tuples(d, 3), |t| {
        let (x, y, l) = (t[0], t[1], t[2]);
        let lhs = r.apply(&e(d, x), &e(d, y), xi)[l].clone();
        let rhs = &eta[x] * delta(y, l) - &eta[y] * delta(x, l);
        (lhs, rhs)
    }));
    report.push(Check::identity("curvature_xi_x_y", tuples(d, 3), |t| {
        let (x, y, l) = (t[0], t[1], t[2]);
        let lhs = r.apply(xi, &e(d, x), &e(d, y))[l].clone();
        (lhs, &eta[y] * delta(x, l) - &g[[x, y]] * &xi[l])
    }));
    report.push(Check::identity("eta_of_curvature", tuples(d, 3), |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = acs.eta_of(&r.apply(&e(d, x), &e(d, y), &e(d, z)));
        (lhs, &g[[x, z]] * &eta[y] - &g[[y, z]] * &eta[x])
    }));
    let s_xi = &geo.ricci;
    report.push(Check::identity("ricci_with_xi", tuples(d, 1), |t| {
        (s_xi.eval(&e(d, t[0]), xi), -(int(2) * &n) * &eta[t[0]])
    }));
    let nq = covariant_derivative_endomorphism(&geo.connection, q);
    // (∇_X Q)ξ = −QX − 2nX
    report.push(Check::identity("nabla_ricci_operator_xi", tuples(d, 2), |t| {
        let (x, l) = (t[0], t[1]);
        let mut lhs = Rational::zero();
        for j in 0..d {
            lhs += &nq[[x, l, j]] * &xi[j];
        }
        (lhs, -&q.0[[l, x]] - int(2) * &n * delta(x, l))
    }));
    // (∇_ξ Q)X = −2QX − 4nX
    report.push(Check::identity("nabla_xi_ricci_operator", tuples(d, 2), |t| {
        let (x, l) = (t[0], t[1]);
        let mut lhs = Rational::zero();
        for a in 0..d {
            lhs += &xi[a] * &nq[[a, l, x]];
        }
        (lhs, -int(2) * &q.0[[l, x]] - int(4) * &n * delta(x, l))
    }));
    let ns = covariant_derivative_cotensor2(&geo.connection, &geo.ricci);
    // (∇_Z S)(X, ξ) = −S(X,Z) − 2n g(X,Z)
    report.push(Check::identity("nabla_ricci_xi", tuples(d, 2), |t| {
        let (z, x) = (t[0], t[1]);
        let mut lhs = Rational::zero();
        for b in 0..d {
            lhs += &ns[[z, x, b]] * &xi[b];
        }
        (lhs, -&geo.ricci.0[[x, z]] - int(2) * &n * &g[[x, z]])
    }));
    // (∇_ξ S)(Z, X) = −2S(X,Z) − 4n g(X,Z)
    report.push(Check::identity("nabla_xi_ricci", tuples(d, 2), |t| {
        let (z, x) = (t[0], t[1]);
        let mut lhs = Rational::zero();
        for a in 0..d {
            lhs += &xi[a] * &ns[[a, z, x]];
        }
        (lhs, -int(2) * &geo.ricci.0[[x, z]] - int(4) * &n * &g[[x, z]])
    }));
    // Dr = (ξr)ξ: r is constant on a homogeneous model, both sides vanish.
    report.push(Check::pass("scalar_curvature_gradient_along_xi").informational());
    report
}

fn delta(a: usize, b: usize) -> Rational {
    if a == b {
        one()
    } else {
        Rational::zero()
    }
}

/// Exact fit of `S = α g + β η⊗η`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaEinsteinFit {
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub is_eta_einstein: bool,
    pub is_einstein: bool,
}

pub fn eta_einstein_fit(m: &LieFrameManifold, s: &CoTensor2, acs: &AlmostContactStructure) -> EtaEinsteinFit {
    let d = m.dim();
    let g = m.metric();
    let ee = acs.eta_eta();
    let a = Array2::from_shape_fn((d * d, 2), |(row, col)| {
        let (i, j) = (row / d, row % d);
        if col == 0 {
            g[[i, j]].clone()
        } else {
            ee.0[[i, j]].clone()
        }
    });
    let b = Array1::from_shape_fn(d * d, |row| s.0[[row / d, row % d]].clone());
    let coefficients = match linalg::solve_affine(&a, &b) {
        AffineSolution::Unique(x) => Some((x[0].clone(), x[1].clone())),
        // g ∝ η⊗η only in dimension one; take the representative with β = 0
        AffineSolution::Family { particular, directions } => {
            let dir = &directions[0];
            if dir[1].is_zero() {
                Some((particular[0].clone(), particular[1].clone()))
            } else {
                let t = -&particular[1] / &dir[1];
                Some((&particular[0] + &t * &dir[0], Rational::zero()))
            }
        }
        AffineSolution::Inconsistent { .. } => None,
    };
    match coefficients {
        Some((alpha, beta)) => {
            let is_einstein = beta.is_zero();
            EtaEinsteinFit { alpha: Some(alpha), beta: Some(beta), is_eta_einstein: true, is_einstein }
        }
        None => EtaEinsteinFit { alpha: None, beta: None, is_eta_einstein: false, is_einstein: false },
    }
}

/// Consequences of η-Einstein on a Kenmotsu model: `α + β = −2n`,
/// `S = (1 + r/2n) g − (2n+1 + r/2n) η⊗η`, and `r = −2n(2n+1)` when Einstein.
pub fn eta_einstein_suite(geo: &Geometry, acs: &AlmostContactStructure, fit: &EtaEinsteinFit) -> ValidationReport {
    let mut report = ValidationReport::new();
    let names = ["eta_einstein_trace_constraint", "eta_einstein_scalar_form", "einstein_scalar_curvature"];
    let (Some(alpha), Some(beta)) = (&fit.alpha, &fit.beta) else {
        for name in names {
            report.push(Check::not_applicable(name));
        }
        return report;
    };
    let n = int(acs.n() as i64);
    let two_n = int(2) * &n;
    report.push(Check::identity(names[0], tuples(1, 1), |_| (alpha + beta, -two_n.clone())));
    if n.is_zero() {
        report.push(Check::not_applicable(names[1]));
    } else {
        let r_over = &geo.scalar_curvature / &two_n;
        let a = one() + &r_over;
        let b = -(&two_n + one() + &r_over);
        let expected = geo.manifold.metric_tensor().scaled(&a).add(&acs.eta_eta().scaled(&b));
        report.push(Check::identity(names[1], tuples(geo.dim(), 2), |t| {
            (geo.ricci.0[[t[0], t[1]]].clone(), expected.0[[t[0], t[1]]].clone())
        }));
    }
    if fit.is_einstein {
        let expected = -(&two_n * (&two_n + one()));
        report.push(Check::identity(names[2], tuples(1, 1), |_| (geo.scalar_curvature.clone(), expected.clone())));
    } else {
        report.push(Check::not_applicable(names[2]));
    }
    report
}
