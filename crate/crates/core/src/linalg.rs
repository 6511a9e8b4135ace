//! Exact Gaussian elimination over the rationals.

use ndarray::{Array1, Array2};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{one, Rational};

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum AffineSolution {
    Unique(Vec<Rational>),
    /// `particular + span(directions)`; `directions` is a basis of the null space of `A`.
    Family {
        particular: Vec<Rational>,
        directions: Vec<Vec<Rational>>,
    },
    /// Rows `0..=row` are already inconsistent while `0..row` are not.
    Inconsistent {
        row: usize,
    },
}

/// Incrementally reduced row basis of an augmented system.
struct Echelon {
    cols: usize,
    // (pivot column, row normalised so the pivot is 1, rhs)
    rows: Vec<(usize, Vec<Rational>, Rational)>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    /// Returns `false` when the row contradicts the rows inserted so far.
    fn insert(&mut self, mut coeffs: Vec<Rational>, mut rhs: Rational) -> bool {
        for (pivot, row, r) in &self.rows {
            let factor = coeffs[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                if !row[c].is_zero() {
                    coeffs[c] -= &factor * &row[c];
                }
            }
            rhs -= &factor * r;
        }
        match coeffs.iter().position(|c| !c.is_zero()) {
            Some(pivot) => {
                let inv = one() / &coeffs[pivot];
                for c in coeffs.iter_mut() {
                    *c *= &inv;
                }
                rhs *= &inv;
                // keep existing rows reduced against the new pivot
                for (_, row, r) in self.rows.iter_mut() {
                    let factor = row[pivot].clone();
                    if factor.is_zero() {
                        continue;
                    }
                    for c in 0..self.cols {
                        if !coeffs[c].is_zero() {
                            row[c] -= &factor * &coeffs[c];
                        }
                    }
                    *r -= &factor * &rhs;
                }
                self.rows.push((pivot, coeffs, rhs));
                true
            }
            None => rhs.is_zero(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Solves `a x = b` for any shape of `a`.
pub fn solve_affine(a: &Array2<Rational>, b: &Array1<Rational>) -> AffineSolution {
    let (m, n) = a.dim();
    assert_eq!(b.len(), m, "right-hand side length");
    let mut ech = Echelon::new(n);
    for i in 0..m {
        if !ech.insert(a.row(i).to_vec(), b[i].clone()) {
            return AffineSolution::Inconsistent { row: i };
        }
    }
    let mut particular = vec![Rational::zero(); n];
    let mut is_pivot = vec![false; n];
    for (pivot, _, rhs) in &ech.rows {
        particular[*pivot] = rhs.clone();
        is_pivot[*pivot] = true;
    }
    if ech.rank() == n {
        return AffineSolution::Unique(particular);
    }
    let directions = (0..n)
        .filter(|&free| !is_pivot[free])
        .map(|free| {
            let mut d = vec![Rational::zero(); n];
            d[free] = one();
            for (pivot, row, _) in &ech.rows {
                d[*pivot] = -row[free].clone();
            }
            d
        })
        .collect();
    AffineSolution::Family { particular, directions }
}

pub fn rank(a: &Array2<Rational>) -> usize {
    let mut ech = Echelon::new(a.ncols());
    for row in a.rows() {
        ech.insert(row.to_vec(), Rational::zero());
    }
    ech.rank()
}

/// Gauss-Jordan inverse of a square matrix.
pub fn inverse(a: &Array2<Rational>) -> Result<Array2<Rational>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.ncols() });
    }
    let mut work: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        work.swap(col, pivot);
        let inv = one() / &work[col][col];
        for v in work[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = work[col].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
    }
    Ok(Array2::from_shape_fn((n, n), |(i, j)| work[i][n + j].clone()))
}

/// Determinant by elimination with row swaps.
pub fn determinant(a: &Array2<Rational>) -> Rational {
    let n = a.nrows();
    assert_eq!(a.ncols(), n, "determinant of a non-square matrix");
    let mut work: Vec<Vec<Rational>> = a.rows().into_iter().map(|r| r.to_vec()).collect();
    let mut det = one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !work[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            work.swap(col, pivot);
            det = -det;
        }
        det *= &work[col][col];
        let pivot_row = work[col].clone();
        for row in work.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for c in col..n {
                if !pivot_row[c].is_zero() {
                    row[c] -= &factor * &pivot_row[c];
                }
            }
        }
    }
    det
}

/// Determinants of the leading `k x k` blocks, `k = 1..=n`.
pub fn leading_principal_minors(a: &Array2<Rational>) -> Vec<Rational> {
    (1..=a.nrows()).map(|k| determinant(&a.slice(ndarray::s![..k, ..k]).to_owned())).collect()
}

/// Sylvester's criterion, exactly.
pub fn is_positive_definite(a: &Array2<Rational>) -> bool {
    a.nrows() == a.ncols() && a.t() == a && leading_principal_minors(a).iter().all(|m| m > &Rational::zero())
}

pub fn matmul(a: &Array2<Rational>, b: &Array2<Rational>) -> Array2<Rational> {
    assert_eq!(a.ncols(), b.nrows(), "matmul shape");
    Array2::from_shape_fn((a.nrows(), b.ncols()), |(i, j)| {
        let mut acc = Rational::zero();
        for k in 0..a.ncols() {
            if !a[[i, k]].is_zero() && !b[[k, j]].is_zero() {
                acc += &a[[i, k]] * &b[[k, j]];
            }
        }
        acc
    })
}

pub fn matvec(a: &Array2<Rational>, v: &Array1<Rational>) -> Array1<Rational> {
    assert_eq!(a.ncols(), v.len(), "matvec shape");
    Array1::from_shape_fn(a.nrows(), |i| {
        let mut acc = Rational::zero();
        for k in 0..v.len() {
            if !a[[i, k]].is_zero() && !v[k].is_zero() {
                acc += &a[[i, k]] * &v[k];
            }
        }
        acc
    })
}

pub fn identity(n: usize) -> Array2<Rational> {
    Array2::from_shape_fn((n, n), |(i, j)| if i == j { one() } else { Rational::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use ndarray::array;

    fn mat(rows: &[&[i64]]) -> Array2<Rational> {
        Array2::from_shape_fn((rows.len(), rows[0].len()), |(i, j)| int(rows[i][j]))
    }

    #[test]
    fn inverse_round_trips() {
        let a = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(3));
        assert_eq!(determinant(&a), int(18));
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&a), Err(Error::SingularMatrix));
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn minors_detect_indefinite() {
        assert!(is_positive_definite(&mat(&[&[2, 1], &[1, 2]])));
        assert!(!is_positive_definite(&mat(&[&[1, 2], &[2, 1]])));
        assert!(!is_positive_definite(&mat(&[&[1, 1], &[0, 1]])));
        assert_eq!(leading_principal_minors(&mat(&[&[1, 2], &[2, 1]])), vec![int(1), int(-3)]);
    }

    #[test]
    fn affine_unique() {
        let a = mat(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = array![int(3), int(1), int(4)];
        assert_eq!(solve_affine(&a, &b), AffineSolution::Unique(vec![int(2), int(1)]));
    }

    #[test]
    fn affine_inconsistent_reports_first_bad_row() {
        let a = mat(&[&[1, 0], &[0, 1], &[1, 1], &[1, 1]]);
        let b = array![int(1), int(1), int(2), int(3)];
        assert_eq!(solve_affine(&a, &b), AffineSolution::Inconsistent { row: 3 });
    }

    #[test]
    fn affine_family() {
        let a = mat(&[&[2, 4], &[1, 2]]);
        let b = array![int(2), int(1)];
        match solve_affine(&a, &b) {
            AffineSolution::Family { particular, directions } => {
                assert_eq!(particular, vec![int(1), int(0)]);
                assert_eq!(directions, vec![vec![int(-2), int(1)]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let half = array![frac(1, 2)];
        assert_eq!(solve_affine(&mat(&[&[2]]), &half), AffineSolution::Unique(vec![frac(1, 4)]));
    }
}
