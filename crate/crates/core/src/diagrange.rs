//! Solutions of `A x = d` where `d` is the diagonal of a symmetric matrix `A`.
//!
//! Such a solution always exists: for `v` in the nullspace of a symmetric `A`,
//! `d . v = v^T A v = 0`, so `d` is orthogonal to the nullspace, which is the
//! orthogonal complement of the range.

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// `(a_11, a_22, ..., a_NN)`.
pub fn diagonal(a: &Gf2Matrix) -> Result<Gf2Vector> {
    a.diagonal()
}

/// The canonical `x` with `A x = diagonal(A)`: free variables zero under the
/// elimination pivot rule.
pub fn solve_diagonal(a: &Gf2Matrix) -> Result<Gf2Vector> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let d = a.diagonal()?;
    let solutions = a.solve(&d)?;
    solutions.particular().cloned().ok_or_else(|| {
        Error::InternalTheoremViolation(format!(
            "diagonal of a symmetric {}x{} matrix reported outside its range",
            a.rows(),
            a.cols()
        ))
    })
}

/// True iff `A x = diagonal(A)`.
pub fn certify_diagonal(a: &Gf2Matrix, x: &Gf2Vector) -> Result<bool> {
    let d = a.diagonal()?;
    Ok(a.matvec(x)? == d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Gf2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal(&Gf2Matrix::identity(3)).unwrap(), v("111"));
        assert_eq!(diagonal(&Gf2Matrix::zeros(2, 2)).unwrap(), v("00"));
        let a = Gf2Matrix::from_bits(&[[1, 1], [1, 0]]).unwrap();
        assert_eq!(diagonal(&a).unwrap(), v("10"));
        assert!(matches!(
            diagonal(&Gf2Matrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn solve_diagonal_examples() {
        assert_eq!(solve_diagonal(&Gf2Matrix::identity(1)).unwrap(), v("1"));
        assert_eq!(solve_diagonal(&Gf2Matrix::zeros(3, 3)).unwrap(), v("000"));
        let a = Gf2Matrix::from_bits(&[[1, 1], [1, 0]]).unwrap();
        assert_eq!(solve_diagonal(&a).unwrap(), v("01"));
    }

    #[test]
    fn solve_diagonal_rejects_asymmetric() {
        let a = Gf2Matrix::from_bits(&[[0, 1], [0, 0]]).unwrap();
        assert_eq!(solve_diagonal(&a), Err(Error::NotSymmetric));
        assert!(matches!(
            solve_diagonal(&Gf2Matrix::zeros(1, 2)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn certify_examples() {
        let id = Gf2Matrix::identity(2);
        assert!(certify_diagonal(&id, &v("11")).unwrap());
        assert!(!certify_diagonal(&id, &v("10")).unwrap());
        let a = Gf2Matrix::from_bits(&[[1, 1], [1, 0]]).unwrap();
        assert!(certify_diagonal(&a, &v("01")).unwrap());
        assert!(certify_diagonal(&id, &v("1")).is_err());
    }
}
