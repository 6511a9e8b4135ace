//! Seeded generators for frame models and Kenmotsu instances.
#![allow(dead_code)]

use kenmotsu_core::contact::AlmostContactStructure;
use kenmotsu_core::frame::{BracketRow, Endomorphism, FrameVector, LieFrameManifold};
use kenmotsu_core::linalg;
use kenmotsu_core::rational::{frac, int};
use kenmotsu_core::Rational;
use ndarray::{Array2, Array3};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in `-3..=3` and denominator in `1..=3`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.random_range(-3..=3), rng.random_range(1..=3))
}

pub fn positive_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.random_range(1..=4), rng.random_range(1..=3))
}

pub fn random_vector(rng: &mut impl Rng, d: usize) -> FrameVector {
    FrameVector::from_vec((0..d).map(|_| small_rational(rng)).collect())
}

/// Entries in `-1..=1` keep basis changes sparse enough for exact arithmetic to stay cheap.
pub fn invertible(rng: &mut impl Rng, d: usize) -> Array2<Rational> {
    loop {
        let p = Array2::from_shape_fn((d, d), |(i, j)| {
            if i == j {
                frac(rng.random_range(1..=2), 1) * if rng.random_bool(0.5) { int(1) } else { int(-1) }
            } else {
                int(rng.random_range(-1..=1))
            }
        });
        if !linalg::determinant(&p).is_zero() {
            return p;
        }
    }
}

/// `L Lᵀ` with `L` lower triangular and positive on the diagonal.
pub fn positive_definite(rng: &mut impl Rng, d: usize) -> Array2<Rational> {
    let l = Array2::from_shape_fn((d, d), |(i, j)| match i.cmp(&j) {
        std::cmp::Ordering::Greater => frac(rng.random_range(-2..=2), rng.random_range(1..=2)),
        std::cmp::Ordering::Equal => positive_rational(rng),
        std::cmp::Ordering::Less => Rational::zero(),
    });
    linalg::matmul(&l, &l.t().to_owned())
}

type Table = Vec<BracketRow>;

/// `[e_i, e_d] = e_i` for `i < d`.
pub fn hyperbolic_table(d: usize) -> Table {
    (0..d - 1).map(|i| (i, d - 1, vec![(i, int(1))])).collect()
}

fn heisenberg_table(d: usize) -> Table {
    // [e_{2k}, e_{2k+1}] = e_{d-1}
    (0..(d - 1) / 2).map(|k| (2 * k, 2 * k + 1, vec![(d - 1, int(1))])).collect()
}

fn so3_table() -> Table {
    vec![(0, 1, vec![(2, int(1))]), (1, 2, vec![(0, int(1))]), (0, 2, vec![(1, int(-1))])]
}

fn sl2_table() -> Table {
    // [h, x] = 2x, [h, y] = −2y, [x, y] = h
    vec![(0, 1, vec![(1, int(2))]), (0, 2, vec![(2, int(-2))]), (1, 2, vec![(0, int(1))])]
}

/// `R ⋉_D R^{d-1}`: `[e_i, e_{d-1}] = −Σ_k D[k][i] e_k`, Jacobi holds for any `D`.
fn semidirect_table(rng: &mut impl Rng, d: usize) -> Table {
    let m = d - 1;
    let dm = Array2::from_shape_fn((m, m), |_| int(rng.random_range(-2..=2)));
    (0..m)
        .map(|i| {
            let terms = (0..m).filter(|&k| !dm[[k, i]].is_zero()).map(|k| (k, -dm[[k, i]].clone())).collect();
            (i, d - 1, terms)
        })
        .collect()
}

/// A valid frame model: a standard Lie algebra, a random metric, then a random
/// change of frame.
pub fn random_frame(rng: &mut impl Rng) -> LieFrameManifold {
    let kind = rng.random_range(0..7);
    let (d, table) = match kind {
        0 => {
            let d = rng.random_range(1..=4);
            (d, Vec::new())
        }
        1 => (3, heisenberg_table(3)),
        2 => (5, heisenberg_table(5)),
        3 => (3, so3_table()),
        4 => (3, sl2_table()),
        5 => {
            let d = rng.random_range(2..=4);
            (d, hyperbolic_table(d))
        }
        _ => {
            let d = rng.random_range(2..=4);
            (d, semidirect_table(rng, d))
        }
    };
    let metric = positive_definite(rng, d);
    let m = LieFrameManifold::from_bracket_table(d, &table, metric).unwrap();
    let p = invertible(rng, d);
    m.change_basis(&p).unwrap()
}

/// `φ e_{2k} = e_{2k+1}`, `φ e_{2k+1} = −e_{2k}`, `φ e_{d-1} = 0`.
pub fn standard_phi(d: usize) -> Endomorphism {
    let mut phi = Endomorphism::zeros(d);
    for k in 0..(d - 1) / 2 {
        phi.0[[2 * k + 1, 2 * k]] = int(1);
        phi.0[[2 * k, 2 * k + 1]] = int(-1);
    }
    phi
}

pub fn standard_kenmotsu(d: usize) -> (LieFrameManifold, AlmostContactStructure) {
    let m = LieFrameManifold::from_bracket_table(d, &hyperbolic_table(d), linalg::identity(d)).unwrap();
    let acs = AlmostContactStructure::new(&m, standard_phi(d), FrameVector::basis(d, d - 1)).unwrap();
    (m, acs)
}

/// The hyperbolic Kenmotsu model in dimension 3 or 5, seen through a random frame.
pub fn random_kenmotsu(rng: &mut impl Rng) -> (LieFrameManifold, AlmostContactStructure) {
    let d = if rng.random_bool(0.5) { 3 } else { 5 };
    let (m, acs) = standard_kenmotsu(d);
    let p = invertible(rng, d);
    acs.change_basis(&m, &p).unwrap()
}

pub fn zero_brackets(d: usize) -> Array3<Rational> {
    Array3::from_elem((d, d, d), Rational::zero())
}
