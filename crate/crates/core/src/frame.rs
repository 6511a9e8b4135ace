//! Homogeneous frame models and their Levi-Civita geometry.
//!
//! A model is a global frame `e_1..e_d` with constant structure constants
//! `[e_i, e_j] = c[i][j][k] e_k` and a constant metric `g(e_i, e_j)`. Since
//! every component function is constant, all directional derivatives of
//! components vanish and the calculus reduces to finite linear algebra.
//!
//! Internally indices are 0-based; witnesses and documents are 1-based.

use std::ops::Index;

use ndarray::{Array1, Array2, Array3, Array4};
use num_traits::Zero;

use crate::calculus;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{one, Rational};
use crate::validation::{tuples, Check, ValidationReport};

/// Vector field with constant frame components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrameVector(pub Array1<Rational>);

impl FrameVector {
    pub fn zeros(dim: usize) -> Self {
        FrameVector(Array1::from_elem(dim, Rational::zero()))
    }

    /// The frame field `e_index` (0-based).
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = one();
        v
    }

    pub fn from_vec(components: Vec<Rational>) -> Self {
        FrameVector(Array1::from(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        FrameVector(self.0.mapv(|x| x * t))
    }

    pub fn add(&self, other: &FrameVector) -> Self {
        FrameVector(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &FrameVector) -> Self {
        FrameVector(&self.0 - &other.0)
    }
}

impl Index<usize> for FrameVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

/// (0,2) tensor with constant components `T[i][j] = T(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoTensor2(pub Array2<Rational>);

impl CoTensor2 {
    pub fn zeros(dim: usize) -> Self {
        CoTensor2(Array2::from_elem((dim, dim), Rational::zero()))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn eval(&self, x: &FrameVector, y: &FrameVector) -> Rational {
        let mut acc = Rational::zero();
        for ((i, j), t) in self.0.indexed_iter() {
            if !t.is_zero() && !x[i].is_zero() && !y[j].is_zero() {
                acc += t * &x[i] * &y[j];
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.t() == self.0
    }

    /// `u ⊗ w` for one-forms given by their frame components.
    pub fn outer(u: &Array1<Rational>, w: &Array1<Rational>) -> Self {
        CoTensor2(Array2::from_shape_fn((u.len(), w.len()), |(i, j)| &u[i] * &w[j]))
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        CoTensor2(self.0.mapv(|x| x * t))
    }

    pub fn add(&self, other: &CoTensor2) -> Self {
        CoTensor2(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &CoTensor2) -> Self {
        CoTensor2(&self.0 - &other.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Index<[usize; 2]> for CoTensor2 {
    type Output = Rational;
    fn index(&self, ix: [usize; 2]) -> &Rational {
        &self.0[ix]
    }
}

/// (1,1) tensor, column-action convention: `A(e_j) = Σ_i A[i][j] e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism(pub Array2<Rational>);

impl Endomorphism {
    pub fn identity(dim: usize) -> Self {
        Endomorphism(linalg::identity(dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Endomorphism(Array2::from_elem((dim, dim), Rational::zero()))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn apply(&self, v: &FrameVector) -> FrameVector {
        FrameVector(linalg::matvec(&self.0, &v.0))
    }

    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism(linalg::matmul(&self.0, &other.0))
    }
}

impl Index<[usize; 2]> for Endomorphism {
    type Output = Rational;
    fn index(&self, ix: [usize; 2]) -> &Rational {
        &self.0[ix]
    }
}

/// `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionCoefficients(pub Array3<Rational>);

impl ConnectionCoefficients {
    pub fn dim(&self) -> usize {
        self.0.dim().0
    }

    /// `∇_X Y` for constant-component fields.
    pub fn covariant(&self, x: &FrameVector, y: &FrameVector) -> FrameVector {
        let d = self.dim();
        let mut out = FrameVector::zeros(d);
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let w = &x[i] * &y[j];
                for k in 0..d {
                    let gam = &self.0[[i, j, k]];
                    if !gam.is_zero() {
                        out.0[k] += &w * gam;
                    }
                }
            }
        }
        out
    }
}

impl Index<[usize; 3]> for ConnectionCoefficients {
    type Output = Rational;
    fn index(&self, ix: [usize; 3]) -> &Rational {
        &self.0[ix]
    }
}

/// `R(e_i, e_j) e_k = Σ_l R[i][j][k][l] e_l`, with
/// `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]} Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurvatureTensor(pub Array4<Rational>);

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.0.dim().0
    }

    /// `R(X,Y)Z` by multilinearity.
    pub fn apply(&self, x: &FrameVector, y: &FrameVector, z: &FrameVector) -> FrameVector {
        let d = self.dim();
        let mut out = FrameVector::zeros(d);
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                for k in 0..d {
                    if z[k].is_zero() {
                        continue;
                    }
                    let w = &x[i] * &y[j] * &z[k];
                    for l in 0..d {
                        let r = &self.0[[i, j, k, l]];
                        if !r.is_zero() {
                            out.0[l] += &w * r;
                        }
                    }
                }
            }
        }
        out
    }
}

impl Index<[usize; 4]> for CurvatureTensor {
    type Output = Rational;
    fn index(&self, ix: [usize; 4]) -> &Rational {
        &self.0[ix]
    }
}

/// `(i, j, terms)` for `[e_i, e_j] = Σ coef · e_k`, 0-based.
pub type BracketRow = (usize, usize, Vec<(usize, Rational)>);

/// A Lie-frame model: dimension, structure constants and constant metric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieFrameManifold {
    brackets: Array3<Rational>,
    metric: Array2<Rational>,
}

impl LieFrameManifold {
    /// Shape-checked constructor. Mathematical invariants are reported by
    /// [`validate_frame`], not enforced here.
    pub fn new(brackets: Array3<Rational>, metric: Array2<Rational>) -> Result<Self> {
        let (a, b, c) = brackets.dim();
        let dim = metric.nrows();
        if dim == 0 {
            return Err(Error::Malformed { what: "manifold", detail: "dimension must be positive".into() });
        }
        if metric.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: metric.ncols() });
        }
        for n in [a, b, c] {
            if n != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: n });
            }
        }
        Ok(LieFrameManifold { brackets, metric })
    }

    /// Builds from a bracket table listed once per pair `i < j` (0-based);
    /// the antisymmetric partner is filled in.
    pub fn from_bracket_table(dim: usize, table: &[BracketRow], metric: Array2<Rational>) -> Result<Self> {
        let mut c = Array3::from_elem((dim, dim, dim), Rational::zero());
        for (i, j, terms) in table {
            for (k, coef) in terms {
                if *i >= dim || *j >= dim || *k >= dim {
                    return Err(Error::Malformed {
                        what: "bracket table",
                        detail: format!("index out of range in [e{}, e{}]", i + 1, j + 1),
                    });
                }
                c[[*i, *j, *k]] += coef;
                c[[*j, *i, *k]] -= coef;
            }
        }
        Self::new(c, metric)
    }

    pub fn abelian(dim: usize) -> Self {
        LieFrameManifold {
            brackets: Array3::from_elem((dim, dim, dim), Rational::zero()),
            metric: linalg::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.metric.nrows()
    }

    pub fn structure_constants(&self) -> &Array3<Rational> {
        &self.brackets
    }

    pub fn metric(&self) -> &Array2<Rational> {
        &self.metric
    }

    pub fn metric_tensor(&self) -> CoTensor2 {
        CoTensor2(self.metric.clone())
    }

    pub fn with_metric(&self, metric: Array2<Rational>) -> Result<Self> {
        Self::new(self.brackets.clone(), metric)
    }

    pub fn inner(&self, x: &FrameVector, y: &FrameVector) -> Rational {
        CoTensor2(self.metric.clone()).eval(x, y)
    }

    /// Metric dual `g(v, ·)` as frame components.
    pub fn flat(&self, v: &FrameVector) -> Array1<Rational> {
        linalg::matvec(&self.metric.t().to_owned(), &v.0)
    }

    /// Re-expresses the model in the frame `f_a = Σ_i p[i][a] e_i`.
    pub fn change_basis(&self, p: &Array2<Rational>) -> Result<Self> {
        let d = self.dim();
        if p.dim() != (d, d) {
            return Err(Error::DimensionMismatch { expected: d, found: p.nrows() });
        }
        let pinv = linalg::inverse(p)?;
        // bracket of new frame fields in old coordinates, then map back
        let mut c = Array3::from_elem((d, d, d), Rational::zero());
        for a in 0..d {
            for b in 0..d {
                let fa = FrameVector(p.column(a).to_owned());
                let fb = FrameVector(p.column(b).to_owned());
                let old = calculus::bracket_components(&self.brackets, &fa, &fb);
                let new = linalg::matvec(&pinv, &old.0);
                for (k, v) in new.into_iter().enumerate() {
                    c[[a, b, k]] = v;
                }
            }
        }
        let g = linalg::matmul(&linalg::matmul(&p.t().to_owned(), &self.metric), p);
        Self::new(c, g)
    }
}

pub fn validate_frame(m: &LieFrameManifold) -> ValidationReport {
    let d = m.dim();
    let c = m.structure_constants();
    let g = m.metric();
    let mut report = ValidationReport::new();
    report.push(Check::identity("bracket_antisymmetry", tuples(d, 3), |t| {
        (c[[t[0], t[1], t[2]]].clone(), -c[[t[1], t[0], t[2]]].clone())
    }));
    report.push(Check::identity("jacobi", tuples(d, 4), |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let mut sum = Rational::zero();
        for m_ in 0..d {
            sum += &c[[i, j, m_]] * &c[[m_, k, l]];
            sum += &c[[j, k, m_]] * &c[[m_, i, l]];
            sum += &c[[k, i, m_]] * &c[[m_, j, l]];
        }
        (sum, Rational::zero())
    }));
    report.push(Check::identity("metric_symmetric", tuples(d, 2), |t| {
        (g[[t[0], t[1]]].clone(), g[[t[1], t[0]]].clone())
    }));
    let minors = linalg::leading_principal_minors(g);
    let pd = match minors.iter().position(|m| m <= &Rational::zero()) {
        None => Check::pass("metric_positive_definite"),
        Some(k) => Check::fail(
            "metric_positive_definite",
            Some(crate::validation::Witness { indices: vec![k + 1], lhs: minors[k].to_string(), rhs: "> 0".into() }),
        ),
    };
    report.push(pd);
    report
}

/// Solves the Koszul system. With constant metric components the formula reads
/// `2 g(∇_{e_i} e_j, e_k) = −g(e_i,[e_j,e_k]) + g(e_j,[e_k,e_i]) + g(e_k,[e_i,e_j])`.
pub fn levi_civita_connection(m: &LieFrameManifold) -> Result<ConnectionCoefficients> {
    let d = m.dim();
    let c = m.structure_constants();
    let g = m.metric();
    let ginv = linalg::inverse(g)?;
    // lowered brackets: cl[i][j][k] = g([e_i, e_j], e_k)
    let mut cl = Array3::from_elem((d, d, d), Rational::zero());
    for ((i, j, l), coef) in c.indexed_iter() {
        if coef.is_zero() {
            continue;
        }
        for k in 0..d {
            if !g[[l, k]].is_zero() {
                cl[[i, j, k]] += coef * &g[[l, k]];
            }
        }
    }
    let half = Rational::new(1.into(), 2.into());
    let mut gamma = Array3::from_elem((d, d, d), Rational::zero());
    for i in 0..d {
        for j in 0..d {
            let rhs: Array1<Rational> =
                Array1::from_shape_fn(d, |k| (-&cl[[j, k, i]] + &cl[[k, i, j]] + &cl[[i, j, k]]) * &half);
            let sol = linalg::matvec(&ginv, &rhs);
            for (k, v) in sol.into_iter().enumerate() {
                gamma[[i, j, k]] = v;
            }
        }
    }
    Ok(ConnectionCoefficients(gamma))
}

/// `R[i][j][k][l] = Σ_m Γ[j][k][m]Γ[i][m][l] − Γ[i][k][m]Γ[j][m][l] − c[i][j][m]Γ[m][k][l]`.
pub fn curvature_tensor(m: &LieFrameManifold, gamma: &ConnectionCoefficients) -> CurvatureTensor {
    let d = m.dim();
    let c = m.structure_constants();
    let gm = &gamma.0;
    let mut r = Array4::from_elem((d, d, d, d), Rational::zero());
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for mm in 0..d {
                    let a = &gm[[j, k, mm]];
                    let b = &gm[[i, k, mm]];
                    let cc = &c[[i, j, mm]];
                    if a.is_zero() && b.is_zero() && cc.is_zero() {
                        continue;
                    }
                    for l in 0..d {
                        let mut term = Rational::zero();
                        if !a.is_zero() && !gm[[i, mm, l]].is_zero() {
                            term += a * &gm[[i, mm, l]];
                        }
                        if !b.is_zero() && !gm[[j, mm, l]].is_zero() {
                            term -= b * &gm[[j, mm, l]];
                        }
                        if !cc.is_zero() && !gm[[mm, k, l]].is_zero() {
                            term -= cc * &gm[[mm, k, l]];
                        }
                        if !term.is_zero() {
                            r[[i, j, k, l]] += term;
                        }
                    }
                }
            }
        }
    }
    CurvatureTensor(r)
}

/// `Rm[i][j][k][l] = g(R(e_i,e_j)e_k, e_l)`.
pub fn lowered_curvature(m: &LieFrameManifold, r: &CurvatureTensor) -> Array4<Rational> {
    let d = m.dim();
    let g = m.metric();
    Array4::from_shape_fn((d, d, d, d), |(i, j, k, l)| {
        let mut acc = Rational::zero();
        for mm in 0..d {
            if !r.0[[i, j, k, mm]].is_zero() && !g[[mm, l]].is_zero() {
                acc += &r.0[[i, j, k, mm]] * &g[[mm, l]];
            }
        }
        acc
    })
}

/// `S(e_j, e_k) = Σ_i R[i][j][k][i]`, the trace of `X ↦ R(X, e_j) e_k`.
pub fn ricci_tensor(m: &LieFrameManifold, r: &CurvatureTensor) -> CoTensor2 {
    let d = m.dim();
    CoTensor2(Array2::from_shape_fn((d, d), |(j, k)| (0..d).fold(Rational::zero(), |acc, i| acc + &r.0[[i, j, k, i]])))
}

/// `Q = g⁻¹ S`, so that `g(QX, Y) = S(X, Y)`.
pub fn ricci_operator(m: &LieFrameManifold, s: &CoTensor2) -> Result<Endomorphism> {
    let ginv = linalg::inverse(m.metric())?;
    Ok(Endomorphism(linalg::matmul(&ginv, &s.0)))
}

pub fn scalar_curvature(m: &LieFrameManifold, s: &CoTensor2) -> Result<Rational> {
    let q = ricci_operator(m, s)?;
    Ok(q.0.diag().iter().fold(Rational::zero(), |acc, x| acc + x))
}

/// Everything derived from a frame model, computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub manifold: LieFrameManifold,
    pub connection: ConnectionCoefficients,
    pub curvature: CurvatureTensor,
    pub ricci: CoTensor2,
    pub ricci_operator: Endomorphism,
    pub scalar_curvature: Rational,
}

impl Geometry {
    pub fn compute(manifold: LieFrameManifold) -> Result<Self> {
        let connection = levi_civita_connection(&manifold)?;
        let curvature = curvature_tensor(&manifold, &connection);
        let ricci = ricci_tensor(&manifold, &curvature);
        let ricci_op = ricci_operator(&manifold, &ricci)?;
        let scalar = scalar_curvature(&manifold, &ricci)?;
        Ok(Geometry { manifold, connection, curvature, ricci, ricci_operator: ricci_op, scalar_curvature: scalar })
    }

    pub fn dim(&self) -> usize {
        self.manifold.dim()
    }
}

/// Torsion, metric compatibility, curvature symmetries, both Bianchi identities
/// and Ricci symmetry.
pub fn frame_identity_suite(geo: &Geometry) -> ValidationReport {
    let m = &geo.manifold;
    let d = m.dim();
    let c = m.structure_constants();
    let g = m.metric();
    let gm = &geo.connection.0;
    let r = &geo.curvature.0;
    let rm = lowered_curvature(m, &geo.curvature);
    let mut report = ValidationReport::new();

    report.push(Check::identity("torsion_free", tuples(d, 3), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        (&gm[[i, j, k]] - &gm[[j, i, k]], c[[i, j, k]].clone())
    }));
    report.push(Check::identity("metric_compatible", tuples(d, 3), |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let mut s = Rational::zero();
        for mm in 0..d {
            s += &gm[[i, j, mm]] * &g[[mm, k]] + &gm[[i, k, mm]] * &g[[j, mm]];
        }
        (s, Rational::zero())
    }));
    report.push(Check::identity("curvature_antisymmetry", tuples(d, 4), |t| {
        (r[[t[0], t[1], t[2], t[3]]].clone(), -r[[t[1], t[0], t[2], t[3]]].clone())
    }));
    report.push(Check::identity("lowered_curvature_antisymmetry", tuples(d, 4), |t| {
        (rm[[t[0], t[1], t[2], t[3]]].clone(), -rm[[t[0], t[1], t[3], t[2]]].clone())
    }));
    report.push(Check::identity("curvature_pair_symmetry", tuples(d, 4), |t| {
        (rm[[t[0], t[1], t[2], t[3]]].clone(), rm[[t[2], t[3], t[0], t[1]]].clone())
    }));
    report.push(Check::identity("first_bianchi", tuples(d, 4), |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        (&r[[i, j, k, l]] + &r[[j, k, i, l]] + &r[[k, i, j, l]], Rational::zero())
    }));
    let nabla_rm = calculus::covariant_derivative_covariant(&geo.connection, &rm.into_dyn());
    report.push(Check::identity("second_bianchi", tuples(d, 5), |t| {
        let (a, i, j, k, l) = (t[0], t[1], t[2], t[3], t[4]);
        (
            &nabla_rm[[a, i, j, k, l].as_slice()]
                + &nabla_rm[[i, j, a, k, l].as_slice()]
                + &nabla_rm[[j, a, i, k, l].as_slice()],
            Rational::zero(),
        )
    }));
    report.push(Check::identity("ricci_symmetric", tuples(d, 2), |t| {
        (geo.ricci.0[[t[0], t[1]]].clone(), geo.ricci.0[[t[1], t[0]]].clone())
    }));
    report
}
