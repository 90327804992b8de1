//! Gauss–Jordan elimination over GF(2).
//!
//! Pivot rule: at each step take the leftmost column that still has a one at
//! or below the current rank, and the first such row. Rows are fully reduced,
//! so the particular solution with all free variables at zero is canonical.

use std::collections::BTreeSet;

use super::matrix::Gf2Matrix;
use super::vector::Gf2Vector;

pub(crate) struct Echelon {
    cols: usize,
    reduced: Vec<Gf2Vector>,
    /// `transform[r]` is the combination of original rows that produced `reduced[r]`.
    transform: Option<Vec<Gf2Vector>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(a: &Gf2Matrix, track: bool) -> Self {
        let rows = a.rows();
        let cols = a.cols();
        let mut reduced = a.row_vectors().to_vec();
        let mut transform = track.then(|| (0..rows).map(|i| Gf2Vector::unit(rows, i)).collect::<Vec<_>>());
        let mut pivots = Vec::new();

        for col in 0..cols {
            let rank = pivots.len();
            if rank == rows {
                break;
            }
            let Some(found) = (rank..rows).find(|&r| reduced[r].get(col)) else {
                continue;
            };
            reduced.swap(rank, found);
            if let Some(t) = transform.as_mut() {
                t.swap(rank, found);
            }
            let pivot_row = reduced[rank].clone();
            let pivot_t = transform.as_ref().map(|t| t[rank].clone());
            for r in 0..rows {
                if r != rank && reduced[r].get(col) {
                    reduced[r].xor_words(&pivot_row);
                    if let (Some(t), Some(pt)) = (transform.as_mut(), pivot_t.as_ref()) {
                        t[r].xor_words(pt);
                    }
                }
            }
            pivots.push(col);
        }

        Self {
            cols,
            reduced,
            transform,
            pivots,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    pub(crate) fn nullspace_basis(&self) -> Vec<Gf2Vector> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = Gf2Vector::unit(self.cols, f);
                for (r, &p) in self.pivots.iter().enumerate() {
                    if self.reduced[r].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    pub(crate) fn solve(&self, b: &Gf2Vector) -> AffineSolutionSet {
        let transform = self.transform.as_ref().expect("solve requires tracked transform");
        let rank = self.rank();
        if let Some(witness) = transform[rank..].iter().find(|t| t.dot(b)) {
            return AffineSolutionSet {
                cols: self.cols,
                particular: None,
                nullspace_basis: self.nullspace_basis(),
                witness: Some(witness.clone()),
            };
        }
        let mut x = Gf2Vector::zeros(self.cols);
        for (r, &p) in self.pivots.iter().enumerate() {
            if transform[r].dot(b) {
                x.set(p, true);
            }
        }
        AffineSolutionSet {
            cols: self.cols,
            particular: Some(x),
            nullspace_basis: self.nullspace_basis(),
            witness: None,
        }
    }
}

/// The solution set `{x : A x = b}` of a linear system: empty, or a particular
/// solution plus the span of a nullspace basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSet {
    cols: usize,
    particular: Option<Gf2Vector>,
    nullspace_basis: Vec<Gf2Vector>,
    witness: Option<Gf2Vector>,
}

impl AffineSolutionSet {
    pub fn is_feasible(&self) -> bool {
        self.particular.is_some()
    }

    /// The solution with every free variable set to zero.
    pub fn particular(&self) -> Option<&Gf2Vector> {
        self.particular.as_ref()
    }

    pub fn nullspace_basis(&self) -> &[Gf2Vector] {
        &self.nullspace_basis
    }

    pub fn nullity(&self) -> usize {
        self.nullspace_basis.len()
    }

    pub fn num_variables(&self) -> usize {
        self.cols
    }

    /// For an infeasible system, a row combination `z` with `z^T A = 0` and `z . b = 1`.
    pub fn witness(&self) -> Option<&Gf2Vector> {
        self.witness.as_ref()
    }

    /// `2^nullity` when feasible, zero otherwise; `None` if it does not fit in a `u128`.
    pub fn solution_count(&self) -> Option<u128> {
        if !self.is_feasible() {
            return Some(0);
        }
        1u128.checked_shl(self.nullity() as u32)
    }

    /// Every solution, in Gray-code order of the basis coefficients.
    ///
    /// # Panics
    ///
    /// Panics if the nullity is 64 or more.
    pub fn iter(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        let count: u64 = match &self.particular {
            None => 0,
            Some(_) => {
                assert!(self.nullity() < 64, "solution set too large to enumerate");
                1u64 << self.nullity()
            }
        };
        let mut current = self.particular.clone();
        (0..count).map(move |k| {
            let cur = current.as_mut().expect("feasible");
            if k > 0 {
                cur.xor_words(&self.nullspace_basis[k.trailing_zeros() as usize]);
            }
            cur.clone()
        })
    }

    /// The set of distinct projections of solutions onto the first `p` variables.
    pub fn project_prefixes(&self, p: usize) -> BTreeSet<Gf2Vector> {
        assert!(p <= self.cols, "projection length {p} exceeds {} variables", self.cols);
        let Some(particular) = &self.particular else {
            return BTreeSet::new();
        };
        let span = independent_span(self.nullspace_basis.iter().map(|v| v.prefix(p)), p);
        let mut out = BTreeSet::new();
        let mut cur = particular.prefix(p);
        out.insert(cur.clone());
        for k in 1..(1u64 << span.len()) {
            cur.xor_words(&span[k.trailing_zeros() as usize]);
            out.insert(cur.clone());
        }
        out
    }
}

/// Reduces a family of vectors to a linearly independent spanning subset.
fn independent_span(vectors: impl Iterator<Item = Gf2Vector>, len: usize) -> Vec<Gf2Vector> {
    let rows: Vec<Gf2Vector> = vectors.collect();
    let a = Gf2Matrix::from_rows(len, rows).expect("uniform lengths");
    let ech = Echelon::new(&a, false);
    ech.reduced.into_iter().take(ech.pivots.len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Gf2Vector {
        s.parse().unwrap()
    }

    fn m(rows: &[&[u8]]) -> Gf2Matrix {
        Gf2Matrix::from_bits(rows).unwrap()
    }

    #[test]
    fn solve_identity() {
        let s = Gf2Matrix::identity(2).solve(&v("10")).unwrap();
        assert!(s.is_feasible());
        assert_eq!(s.particular(), Some(&v("10")));
        assert!(s.nullspace_basis().is_empty());
    }

    #[test]
    fn solve_all_ones_feasible() {
        let s = m(&[&[1, 1], &[1, 1]]).solve(&v("11")).unwrap();
        let sols: BTreeSet<_> = s.iter().collect();
        assert_eq!(sols, [v("10"), v("01")].into_iter().collect());
        assert_eq!(s.particular(), Some(&v("10")));
        assert_eq!(s.solution_count(), Some(2));
    }

    #[test]
    fn solve_all_ones_infeasible_with_witness() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = v("10");
        let s = a.solve(&b).unwrap();
        assert!(!s.is_feasible());
        assert_eq!(s.solution_count(), Some(0));
        assert_eq!(s.iter().count(), 0);
        let z = s.witness().unwrap();
        assert!(a.transpose().matvec(z).unwrap().is_zero());
        assert!(z.dot(&b));
    }

    #[test]
    fn leftmost_pivot_and_free_zero() {
        // x1 + x2 + x3 = 1 has pivot on x1; free x2, x3 are zero.
        let s = m(&[&[1, 1, 1]]).solve(&v("1")).unwrap();
        assert_eq!(s.particular(), Some(&v("100")));
        assert_eq!(s.nullspace_basis(), &[v("110"), v("101")]);
    }

    #[test]
    fn solve_rejects_bad_rhs() {
        assert!(Gf2Matrix::identity(2).solve(&v("1")).is_err());
    }

    #[test]
    fn projections() {
        // x1 + x2 = 1, x3 free
        let s = m(&[&[1, 1, 0]]).solve(&v("1")).unwrap();
        let p2: Vec<String> = s.project_prefixes(2).iter().map(|x| x.to_string()).collect();
        assert_eq!(p2, ["01", "10"]);
        let p1: Vec<String> = s.project_prefixes(1).iter().map(|x| x.to_string()).collect();
        assert_eq!(p1, ["0", "1"]);
        assert_eq!(s.project_prefixes(3).len(), 4);
        assert_eq!(s.project_prefixes(0).len(), 1);
    }
}
