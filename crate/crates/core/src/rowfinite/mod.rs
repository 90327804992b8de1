//! Countably infinite symmetric matrices over GF(2) with finitely many ones per row.
//!
//! Indices are 1-based, as in the usual matrix notation `a_ij`, `i, j >= 1`.

mod blocks;
mod periodic;

use std::fmt;
use std::sync::Arc;

pub use blocks::{decompose, BlockDecomposition};
pub use periodic::{PeriodicSpec, PeriodicSpecFile, SPEC_VERSION};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

type SupportFn = dyn Fn(usize) -> Vec<usize> + Send + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// Given by an arbitrary support generator.
    ExplicitBanded,
    Periodic,
}

#[derive(Clone)]
enum Source {
    Generator(Arc<SupportFn>),
    Periodic(Arc<PeriodicSpec>),
}

/// An infinite matrix given row by row through its support.
///
/// Generators must be total and pure: `support(i)` may be asked for any row,
/// any number of times, from any thread, and must answer the same way. They
/// are also expected to be symmetric; see [`check_symmetry_window`].
#[derive(Clone)]
pub struct RowFiniteMatrix {
    source: Source,
}

impl RowFiniteMatrix {
    /// Wraps a support generator. Returned supports are sorted and deduplicated.
    pub fn from_fn(f: impl Fn(usize) -> Vec<usize> + Send + Sync + 'static) -> Self {
        Self {
            source: Source::Generator(Arc::new(f)),
        }
    }

    pub fn periodic(spec: PeriodicSpec) -> Self {
        Self {
            source: Source::Periodic(Arc::new(spec)),
        }
    }

    /// `support(i) = {i}`, as a generator.
    pub fn identity_diagonal() -> Self {
        Self::from_fn(|i| vec![i])
    }

    /// The infinite path as a generator; `closed` includes the diagonal.
    pub fn path(closed: bool) -> Self {
        Self::from_fn(move |i| {
            let mut s = Vec::with_capacity(3);
            if i > 1 {
                s.push(i - 1);
            }
            if closed {
                s.push(i);
            }
            s.push(i + 1);
            s
        })
    }

    /// Width-2 ladder as a generator: `v ~ v +- 2` and rung partners `2k-1 ~ 2k`.
    pub fn ladder(closed: bool) -> Self {
        Self::from_fn(move |v| {
            let partner = if v % 2 == 1 { v + 1 } else { v - 1 };
            let mut s = vec![partner, v + 2];
            if v > 2 {
                s.push(v - 2);
            }
            if closed {
                s.push(v);
            }
            s
        })
    }

    pub fn kind(&self) -> MatrixKind {
        match self.source {
            Source::Generator(_) => MatrixKind::ExplicitBanded,
            Source::Periodic(_) => MatrixKind::Periodic,
        }
    }

    pub fn periodic_spec(&self) -> Option<&PeriodicSpec> {
        match &self.source {
            Source::Periodic(s) => Some(s),
            Source::Generator(_) => None,
        }
    }

    /// Sorted column indices `j` with `a_ij = 1`.
    ///
    /// # Panics
    ///
    /// Panics if `i == 0` or the generator returns column `0`.
    pub fn support(&self, i: usize) -> Vec<usize> {
        assert!(i >= 1, "rows are 1-based");
        match &self.source {
            Source::Periodic(s) => s.support(i),
            Source::Generator(f) => {
                let mut s = f(i);
                s.sort_unstable();
                s.dedup();
                assert!(s.first() != Some(&0), "generator returned column 0 for row {i}");
                s
            }
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.support(i).binary_search(&j).is_ok()
    }

    pub fn diagonal_bit(&self, i: usize) -> bool {
        match &self.source {
            Source::Periodic(s) => s.diagonal_bit(i),
            Source::Generator(_) => self.entry(i, i),
        }
    }

    /// `(a_11, ..., a_mm)`.
    pub fn diagonal_prefix(&self, m: usize) -> Gf2Vector {
        Gf2Vector::from_bits((1..=m).map(|i| self.diagonal_bit(i)))
    }

    /// Rows `1..=rows`, columns `1..=cols`.
    pub fn leading_block(&self, rows: usize, cols: usize) -> Gf2Matrix {
        let data = (1..=rows)
            .map(|i| {
                Gf2Vector::from_ones(cols, self.support(i).into_iter().take_while(|&j| j <= cols).map(|j| j - 1))
                    .expect("filtered to range")
            })
            .collect();
        Gf2Matrix::from_rows(cols, data).expect("uniform rows")
    }

    /// Largest column index in rows `1..=rows`, zero if all are empty.
    pub(crate) fn max_support(&self, rows: std::ops::RangeInclusive<usize>) -> usize {
        rows.filter_map(|i| self.support(i).last().copied()).max().unwrap_or(0)
    }
}

impl fmt::Debug for RowFiniteMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Source::Generator(_) => f.write_str("RowFiniteMatrix(generator)"),
            Source::Periodic(s) => write!(f, "RowFiniteMatrix({s:?})"),
        }
    }
}

impl From<PeriodicSpec> for RowFiniteMatrix {
    fn from(spec: PeriodicSpec) -> Self {
        Self::periodic(spec)
    }
}

impl From<&PeriodicSpec> for RowFiniteMatrix {
    fn from(spec: &PeriodicSpec) -> Self {
        Self::periodic(spec.clone())
    }
}

/// The `m x m` leading principal submatrix.
pub fn window(m: &RowFiniteMatrix, size: usize) -> Gf2Matrix {
    m.leading_block(size, size)
}

/// Minimal cut points `k_1 < ... < k_count` for base size `n`.
///
/// `k_s` is the least integer above `k_{s-1}` (with `k_0 = 0`) such that every
/// row `i <= n + k_{s-1}` has its support inside `1..=n + k_s`.
pub fn cut_points(m: &RowFiniteMatrix, n: usize, count: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidArgument("base size n must be positive".into()));
    }
    let mut cuts = Vec::with_capacity(count);
    let mut prev = 0usize;
    let mut scanned = 0usize;
    let mut reach = 0usize;
    for _ in 0..count {
        let rows_end = n + prev;
        reach = reach.max(m.max_support(scanned + 1..=rows_end));
        scanned = rows_end;
        let k = (prev + 1).max(reach.saturating_sub(n));
        cuts.push(k);
        prev = k;
    }
    Ok(cuts)
}

/// First pair `(i, j)` with `i, j <= size` where `a_ij != a_ji`.
pub fn find_symmetry_violation(m: &RowFiniteMatrix, size: usize) -> Option<(usize, usize)> {
    let w = window(m, size);
    (0..size).find_map(|i| {
        w.row(i)
            .iter_ones()
            .find(|&j| !w.get(j, i))
            .map(|j| (i + 1, j + 1))
    })
}

/// True iff `window(m, size)` is symmetric.
pub fn check_symmetry_window(m: &RowFiniteMatrix, size: usize) -> bool {
    find_symmetry_violation(m, size).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_point_examples() {
        let id = RowFiniteMatrix::identity_diagonal();
        assert_eq!(cut_points(&id, 1, 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(cut_points(&RowFiniteMatrix::path(true), 2, 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(cut_points(&RowFiniteMatrix::ladder(true), 2, 2).unwrap(), vec![2, 4]);
        assert_eq!(
            cut_points(&RowFiniteMatrix::periodic(PeriodicSpec::ladder(true)), 2, 2).unwrap(),
            vec![2, 4]
        );
        assert!(cut_points(&id, 0, 1).is_err());
    }

    #[test]
    fn window_examples() {
        assert_eq!(window(&RowFiniteMatrix::identity_diagonal(), 2), Gf2Matrix::identity(2));
        assert_eq!(
            window(&RowFiniteMatrix::path(true), 3),
            Gf2Matrix::from_bits(&[[1, 1, 0], [1, 1, 1], [0, 1, 1]]).unwrap()
        );
        let spec = PeriodicSpec::path(true);
        assert_eq!(
            window(&RowFiniteMatrix::periodic(spec), 1),
            Gf2Matrix::from_bits(&[[1]]).unwrap()
        );
    }

    #[test]
    fn generators_match_periodic_forms() {
        let pairs = [
            (RowFiniteMatrix::path(true), PeriodicSpec::path(true)),
            (RowFiniteMatrix::path(false), PeriodicSpec::path(false)),
            (RowFiniteMatrix::ladder(true), PeriodicSpec::ladder(true)),
            (RowFiniteMatrix::ladder(false), PeriodicSpec::ladder(false)),
            (RowFiniteMatrix::identity_diagonal(), PeriodicSpec::identity()),
        ];
        for (g, s) in pairs {
            assert_eq!(window(&g, 17), window(&RowFiniteMatrix::periodic(s), 17));
        }
    }

    #[test]
    fn symmetry_window_checks() {
        let broken = RowFiniteMatrix::from_fn(|i| if i == 1 { vec![2] } else { vec![] });
        assert!(!check_symmetry_window(&broken, 2));
        assert_eq!(find_symmetry_violation(&broken, 2), Some((1, 2)));
        assert!(check_symmetry_window(&broken, 1));
        assert!(check_symmetry_window(&RowFiniteMatrix::path(true), 50));
        assert!(check_symmetry_window(&RowFiniteMatrix::periodic(PeriodicSpec::ladder(false)), 20));
    }

    #[test]
    fn kinds() {
        assert_eq!(RowFiniteMatrix::path(true).kind(), MatrixKind::ExplicitBanded);
        let p = RowFiniteMatrix::from(PeriodicSpec::identity());
        assert_eq!(p.kind(), MatrixKind::Periodic);
        assert!(p.periodic_spec().is_some());
    }
}
