//! Lie and covariant derivatives on a homogeneous frame model.
//!
//! All fields have constant frame components, so terms such as `V(T(X,Y))`
//! vanish and every derivative is an algebraic expression in the structure
//! constants, the connection and the curvature.

use std::ops::Index;

use ndarray::{Array1, Array2, Array3, Array4, ArrayD, IxDyn};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::frame::{CoTensor2, ConnectionCoefficients, CurvatureTensor, Endomorphism, FrameVector, LieFrameManifold};
use crate::rational::Rational;

/// Vector-valued bilinear form: `B(e_i, e_j) = Σ_k B[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor12(pub Array3<Rational>);

impl Tensor12 {
    pub fn apply(&self, x: &FrameVector, y: &FrameVector) -> FrameVector {
        ConnectionCoefficients(self.0.clone()).covariant(x, y)
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.0.dim().0;
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.0[[i, j, k]] == self.0[[j, i, k]])))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Index<[usize; 3]> for Tensor12 {
    type Output = Rational;
    fn index(&self, ix: [usize; 3]) -> &Rational {
        &self.0[ix]
    }
}

/// Curvature-shaped tensor: `D(e_i, e_j) e_k = Σ_l D[i][j][k][l] e_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor13(pub Array4<Rational>);

impl Tensor13 {
    pub fn apply(&self, x: &FrameVector, y: &FrameVector, z: &FrameVector) -> FrameVector {
        CurvatureTensor(self.0.clone()).apply(x, y, z)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Index<[usize; 4]> for Tensor13 {
    type Output = Rational;
    fn index(&self, ix: [usize; 4]) -> &Rational {
        &self.0[ix]
    }
}

fn check_dim(m: &LieFrameManifold, found: usize) -> Result<()> {
    if found != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), found });
    }
    Ok(())
}

pub(crate) fn bracket_components(c: &Array3<Rational>, x: &FrameVector, y: &FrameVector) -> FrameVector {
    // the table has the same layout as connection coefficients
    ConnectionCoefficients(c.clone()).covariant(x, y)
}

/// `[X, Y]_k = Σ_{i,j} x_i y_j c[i][j][k]`.
pub fn lie_bracket(m: &LieFrameManifold, x: &FrameVector, y: &FrameVector) -> Result<FrameVector> {
    check_dim(m, x.dim())?;
    check_dim(m, y.dim())?;
    Ok(bracket_components(m.structure_constants(), x, y))
}

fn brackets_with(m: &LieFrameManifold, v: &FrameVector) -> Vec<FrameVector> {
    (0..m.dim()).map(|i| bracket_components(m.structure_constants(), v, &FrameVector::basis(m.dim(), i))).collect()
}

/// `(L_V α)(X) = −α([V, X])` for a one-form given by components.
pub fn lie_derivative_oneform(
    m: &LieFrameManifold,
    v: &FrameVector,
    alpha: &Array1<Rational>,
) -> Result<Array1<Rational>> {
    check_dim(m, v.dim())?;
    check_dim(m, alpha.len())?;
    let bv = brackets_with(m, v);
    Ok(Array1::from_shape_fn(m.dim(), |i| {
        let mut acc = Rational::zero();
        for (k, a) in alpha.iter().enumerate() {
            if !a.is_zero() && !bv[i][k].is_zero() {
                acc -= a * &bv[i][k];
            }
        }
        acc
    }))
}

/// `(L_V T)(X, Y) = −T([V,X], Y) − T(X, [V,Y])`.
pub fn lie_derivative_cotensor2(m: &LieFrameManifold, v: &FrameVector, t: &CoTensor2) -> Result<CoTensor2> {
    check_dim(m, v.dim())?;
    check_dim(m, t.dim())?;
    let d = m.dim();
    let bv = brackets_with(m, v);
    Ok(CoTensor2(Array2::from_shape_fn((d, d), |(i, j)| {
        let mut acc = Rational::zero();
        for (k, b) in bv[i].0.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            acc -= b * &t.0[[k, j]];
        }
        for (k, b) in bv[j].0.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            acc -= &t.0[[i, k]] * b;
        }
        acc
    })))
}

/// `∇V` as an endomorphism: column `j` holds `∇_{e_j} V`.
pub fn covariant_derivative_vector(gamma: &ConnectionCoefficients, v: &FrameVector) -> Endomorphism {
    let d = gamma.dim();
    Endomorphism(Array2::from_shape_fn((d, d), |(k, j)| {
        let mut acc = Rational::zero();
        for i in 0..d {
            if !v[i].is_zero() {
                acc += &v[i] * &gamma.0[[j, i, k]];
            }
        }
        acc
    }))
}

/// Connection route: `(L_V T)(X,Y) = (∇_V T)(X,Y) + T(∇_X V, Y) + T(X, ∇_Y V)`.
/// For `T = g` this is `g(∇_X V, Y) + g(X, ∇_Y V)`.
pub fn lie_derivative_cotensor2_via_connection(
    m: &LieFrameManifold,
    gamma: &ConnectionCoefficients,
    v: &FrameVector,
    t: &CoTensor2,
) -> Result<CoTensor2> {
    check_dim(m, v.dim())?;
    check_dim(m, t.dim())?;
    let d = m.dim();
    let nv = covariant_derivative_vector(gamma, v);
    let nt = covariant_derivative_cotensor2(gamma, t);
    Ok(CoTensor2(Array2::from_shape_fn((d, d), |(i, j)| {
        let mut acc = Rational::zero();
        for a in 0..d {
            if !v[a].is_zero() {
                acc += &v[a] * &nt[[a, i, j]];
            }
            if !nv.0[[a, i]].is_zero() {
                acc += &nv.0[[a, i]] * &t.0[[a, j]];
            }
            if !nv.0[[a, j]].is_zero() {
                acc += &t.0[[i, a]] * &nv.0[[a, j]];
            }
        }
        acc
    })))
}

/// Covariant derivative of a purely covariant tensor of any rank:
/// `(∇T)[a, i_1..i_k] = −Σ_s Σ_m Γ[a][i_s][m] T[.., m, ..]`.
pub fn covariant_derivative_covariant(gamma: &ConnectionCoefficients, t: &ArrayD<Rational>) -> ArrayD<Rational> {
    let d = gamma.dim();
    let rank = t.ndim();
    let shape = vec![d; rank + 1];
    let mut out = ArrayD::from_elem(IxDyn(&shape), Rational::zero());
    let mut src = vec![0usize; rank];
    for (idx, slot) in out.indexed_iter_mut() {
        let a = idx[0];
        let mut acc = Rational::zero();
        for s in 0..rank {
            for (q, v) in src.iter_mut().enumerate() {
                *v = idx[q + 1];
            }
            let is = idx[s + 1];
            for mm in 0..d {
                let gam = &gamma.0[[a, is, mm]];
                if gam.is_zero() {
                    continue;
                }
                src[s] = mm;
                let tv = &t[IxDyn(&src)];
                if !tv.is_zero() {
                    acc -= gam * tv;
                }
            }
        }
        *slot = acc;
    }
    out
}

/// `(∇T)[i][j][k] = (∇_{e_i} T)(e_j, e_k) = −T(∇_{e_i}e_j, e_k) − T(e_j, ∇_{e_i}e_k)`.
pub fn covariant_derivative_cotensor2(gamma: &ConnectionCoefficients, t: &CoTensor2) -> Array3<Rational> {
    covariant_derivative_covariant(gamma, &t.0.clone().into_dyn()).into_dimensionality().expect("rank 3")
}

/// `D[a][i][j]`: `(∇_{e_a} A)(e_j) = Σ_i D[a][i][j] e_i = ∇_{e_a}(A e_j) − A(∇_{e_a} e_j)`.
pub fn covariant_derivative_endomorphism(gamma: &ConnectionCoefficients, a: &Endomorphism) -> Array3<Rational> {
    let d = gamma.dim();
    Array3::from_shape_fn((d, d, d), |(x, i, j)| {
        let mut acc = Rational::zero();
        for mm in 0..d {
            if !a.0[[mm, j]].is_zero() && !gamma.0[[x, mm, i]].is_zero() {
                acc += &a.0[[mm, j]] * &gamma.0[[x, mm, i]];
            }
            if !gamma.0[[x, j, mm]].is_zero() && !a.0[[i, mm]].is_zero() {
                acc -= &gamma.0[[x, j, mm]] * &a.0[[i, mm]];
            }
        }
        acc
    })
}

/// `(∇_{e_a} B)(e_i, e_j)` component `l`, indexed `[a][i][j][l]`.
pub fn covariant_derivative_tensor12(gamma: &ConnectionCoefficients, b: &Tensor12) -> Array4<Rational> {
    let d = gamma.dim();
    let g = &gamma.0;
    let b = &b.0;
    Array4::from_shape_fn((d, d, d, d), |(a, i, j, l)| {
        let mut acc = Rational::zero();
        for mm in 0..d {
            if !b[[i, j, mm]].is_zero() && !g[[a, mm, l]].is_zero() {
                acc += &b[[i, j, mm]] * &g[[a, mm, l]];
            }
            if !g[[a, i, mm]].is_zero() && !b[[mm, j, l]].is_zero() {
                acc -= &g[[a, i, mm]] * &b[[mm, j, l]];
            }
            if !g[[a, j, mm]].is_zero() && !b[[i, mm, l]].is_zero() {
                acc -= &g[[a, j, mm]] * &b[[i, mm, l]];
            }
        }
        acc
    })
}

/// `(L_V∇)(X,Y) = ∇_X∇_Y V − ∇_{∇_X Y} V + R(V,X)Y`.
pub fn lie_derivative_connection(
    m: &LieFrameManifold,
    gamma: &ConnectionCoefficients,
    r: &CurvatureTensor,
    v: &FrameVector,
) -> Result<Tensor12> {
    check_dim(m, v.dim())?;
    let d = m.dim();
    let g = &gamma.0;
    let nv = covariant_derivative_vector(gamma, v).0;
    Ok(Tensor12(Array3::from_shape_fn((d, d, d), |(i, j, l)| {
        let mut acc = Rational::zero();
        for mm in 0..d {
            // ∇_{e_i}(∇_{e_j} V)
            if !nv[[mm, j]].is_zero() && !g[[i, mm, l]].is_zero() {
                acc += &nv[[mm, j]] * &g[[i, mm, l]];
            }
            // ∇_{∇_{e_i} e_j} V
            if !g[[i, j, mm]].is_zero() && !nv[[l, mm]].is_zero() {
                acc -= &g[[i, j, mm]] * &nv[[l, mm]];
            }
            // R(V, e_i) e_j
            if !v[mm].is_zero() && !r.0[[mm, i, j, l]].is_zero() {
                acc += &v[mm] * &r.0[[mm, i, j, l]];
            }
        }
        acc
    })))
}

/// `(L_V∇)(X,Y) = [V, ∇_X Y] − ∇_{[V,X]} Y − ∇_X [V,Y]`, straight from the definition.
pub fn lie_derivative_connection_by_definition(
    m: &LieFrameManifold,
    gamma: &ConnectionCoefficients,
    v: &FrameVector,
) -> Result<Tensor12> {
    check_dim(m, v.dim())?;
    let d = m.dim();
    let e = |i| FrameVector::basis(d, i);
    let bv = brackets_with(m, v);
    let mut out = Array3::from_elem((d, d, d), Rational::zero());
    for i in 0..d {
        for j in 0..d {
            let nab = gamma.covariant(&e(i), &e(j));
            let val =
                lie_bracket(m, v, &nab)?.sub(&gamma.covariant(&bv[i], &e(j))).sub(&gamma.covariant(&e(i), &bv[j]));
            for (l, x) in val.0.into_iter().enumerate() {
                out[[i, j, l]] = x;
            }
        }
    }
    Ok(Tensor12(out))
}

/// `(L_V R)(X,Y)Z = (∇_X L_V∇)(Y,Z) − (∇_Y L_V∇)(X,Z)`.
pub fn lie_derivative_curvature(
    m: &LieFrameManifold,
    gamma: &ConnectionCoefficients,
    r: &CurvatureTensor,
    v: &FrameVector,
) -> Result<Tensor13> {
    let lv = lie_derivative_connection(m, gamma, r, v)?;
    let nb = covariant_derivative_tensor12(gamma, &lv);
    let d = m.dim();
    Ok(Tensor13(Array4::from_shape_fn((d, d, d, d), |(i, j, k, l)| &nb[[i, j, k, l]] - &nb[[j, i, k, l]])))
}

/// `(L_V R)(X,Y)Z = [V, R(X,Y)Z] − R([V,X],Y)Z − R(X,[V,Y])Z − R(X,Y)[V,Z]`.
pub fn lie_derivative_curvature_by_definition(
    m: &LieFrameManifold,
    r: &CurvatureTensor,
    v: &FrameVector,
) -> Result<Tensor13> {
    check_dim(m, v.dim())?;
    let d = m.dim();
    let e = |i| FrameVector::basis(d, i);
    let bv = brackets_with(m, v);
    let mut out = Array4::from_elem((d, d, d, d), Rational::zero());
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let rijk = FrameVector(r.0.slice(ndarray::s![i, j, k, ..]).to_owned());
                let val = lie_bracket(m, v, &rijk)?
                    .sub(&r.apply(&bv[i], &e(j), &e(k)))
                    .sub(&r.apply(&e(i), &bv[j], &e(k)))
                    .sub(&r.apply(&e(i), &e(j), &bv[k]));
                for (l, x) in val.0.into_iter().enumerate() {
                    out[[i, j, k, l]] = x;
                }
            }
        }
    }
    Ok(Tensor13(out))
}

/// Hessian of a potential whose gradient has constant components `df`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hessian {
    pub tensor: CoTensor2,
    /// Symmetric iff `g(df, ·)` is closed, i.e. `df` is a legitimate gradient.
    pub symmetric: bool,
}

/// `Hess f(X, Y) = g(∇_X Df, Y)`.
pub fn hessian(m: &LieFrameManifold, gamma: &ConnectionCoefficients, df: &FrameVector) -> Result<Hessian> {
    check_dim(m, df.dim())?;
    let d = m.dim();
    let g = m.metric();
    let nv = covariant_derivative_vector(gamma, df).0;
    let tensor = CoTensor2(Array2::from_shape_fn((d, d), |(x, y)| {
        let mut acc = Rational::zero();
        for k in 0..d {
            if !nv[[k, x]].is_zero() && !g[[k, y]].is_zero() {
                acc += &nv[[k, x]] * &g[[k, y]];
            }
        }
        acc
    }));
    let symmetric = tensor.is_symmetric();
    Ok(Hessian { tensor, symmetric })
}
