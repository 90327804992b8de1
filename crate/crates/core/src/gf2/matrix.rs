use std::fmt;
use std::str::FromStr;

use super::solve::{AffineSolutionSet, Echelon};
use super::vector::Gf2Vector;
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(2), one packed [`Gf2Vector`] per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    row_data: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_data: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            row_data: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
        }
    }

    /// Builds from row vectors; all rows must share `cols`.
    pub fn from_rows(cols: usize, row_data: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(bad) = row_data.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: row_data.len(),
            cols,
            row_data,
        })
    }

    /// Builds from nested 0/1 slices, mostly for tests and literals.
    pub fn from_bits<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let data = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(Error::Parse(format!("entry {other} is not a bit"))),
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Gf2Vector::from_bits)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let row_data = (0..rows)
            .map(|i| Gf2Vector::from_bits((0..cols).map(|j| f(i, j))))
            .collect();
        Self {
            rows,
            cols,
            row_data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based entry access.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row_data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.row_data[i].set(j, value);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.row_data[i]
    }

    pub fn row_vectors(&self) -> &[Gf2Vector] {
        &self.row_data
    }

    pub fn into_rows(self) -> Vec<Gf2Vector> {
        self.row_data
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.row_data.iter().enumerate() {
            for j in row.iter_ones() {
                t.row_data[j].set(i, true);
            }
        }
        t
    }

    /// Rows `r0..r1`, columns `c0..c1`, 0-based half-open.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Self {
            rows: r1 - r0,
            cols: c1 - c0,
            row_data: self.row_data[r0..r1].iter().map(|r| r.slice(c0, c1)).collect(),
        }
    }

    /// `A x` over GF(2).
    pub fn matvec(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(Gf2Vector::from_bits(self.row_data.iter().map(|r| r.dot(x))))
    }

    /// `z^T A z` over GF(2).
    pub fn quadratic_form(&self, z: &Gf2Vector) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let az = self.matvec(z)?;
        Ok(z.dot(&az))
    }

    /// `c_i^{(j)}`: the first `j` entries of column `i`. The column index is
    /// 1-based, `j` is a row count.
    pub fn column_cut(&self, i: usize, j: usize) -> Result<Gf2Vector> {
        if i == 0 || i > self.cols {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.cols,
            });
        }
        if j > self.rows {
            return Err(Error::IndexOutOfRange {
                index: j,
                limit: self.rows,
            });
        }
        Ok(Gf2Vector::from_bits(self.row_data[..j].iter().map(|r| r.get(i - 1))))
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self, false).rank()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Gf2Vector> {
        Echelon::new(self, false).nullspace_basis()
    }

    /// Solves `A x = b`. Infeasible systems are reported in the result, not as errors.
    pub fn solve(&self, b: &Gf2Vector) -> Result<AffineSolutionSet> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        Ok(Echelon::new(self, true).solve(b))
    }

    pub fn diagonal(&self) -> Result<Gf2Vector> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Gf2Vector::from_bits((0..self.rows).map(|i| self.get(i, i))))
    }

    /// Parses the text format: a `rows cols` header, then one line of
    /// `0`/`1` characters per row.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let (rows, cols) = parse_dims(header)?;
        let mut data = Vec::with_capacity(rows);
        for (k, line) in lines.enumerate() {
            if k >= rows {
                return Err(Error::Parse(format!("more than {rows} rows")));
            }
            let row: Gf2Vector = line.parse()?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {cols}",
                    k + 1,
                    row.len()
                )));
            }
            data.push(row);
        }
        if data.len() != rows {
            return Err(Error::Parse(format!("expected {rows} rows, found {}", data.len())));
        }
        Self::from_rows(cols, data)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in &self.row_data {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

pub(crate) fn parse_dims(header: &str) -> Result<(usize, usize)> {
    let mut it = header.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad dimension {t:?}: {e}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(r), Some(c), None) => Ok((r?, c?)),
        _ => Err(Error::Parse(format!("expected \"rows cols\" header, found {header:?}"))),
    }
}

impl FromStr for Gf2Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for (k, r) in self.row_data.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
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
    fn matvec_examples() {
        assert_eq!(Gf2Matrix::identity(2).matvec(&v("10")).unwrap(), v("10"));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).matvec(&v("10")).unwrap(), v("01"));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).matvec(&v("11")).unwrap(), v("00"));
        assert!(matches!(
            Gf2Matrix::identity(2).matvec(&v("101")),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn quadratic_form_examples() {
        assert!(!Gf2Matrix::identity(2).quadratic_form(&v("11")).unwrap());
        assert!(m(&[&[1, 0], &[0, 0]]).quadratic_form(&v("10")).unwrap());
        let swap = m(&[&[0, 1], &[1, 0]]);
        for z in ["00", "01", "10", "11"] {
            assert!(!swap.quadratic_form(&v(z)).unwrap());
        }
        assert!(Gf2Matrix::zeros(2, 3).quadratic_form(&v("000")).is_err());
        assert!(Gf2Matrix::identity(2).quadratic_form(&v("0")).is_err());
    }

    #[test]
    fn column_cut_examples() {
        let id = Gf2Matrix::identity(3);
        assert_eq!(id.column_cut(2, 1).unwrap(), v("0"));
        assert_eq!(id.column_cut(2, 3).unwrap(), v("010"));
        assert_eq!(m(&[&[1, 1], &[1, 0]]).column_cut(1, 2).unwrap(), v("11"));
        assert!(id.column_cut(0, 1).is_err());
        assert!(id.column_cut(4, 1).is_err());
        assert!(id.column_cut(1, 4).is_err());
    }

    #[test]
    fn rank_and_nullspace_basics() {
        assert_eq!(Gf2Matrix::identity(5).rank(), 5);
        assert_eq!(Gf2Matrix::zeros(4, 3).rank(), 0);
        assert!(Gf2Matrix::identity(3).nullspace().is_empty());
        assert_eq!(Gf2Matrix::zeros(2, 2).nullspace().len(), 2);
    }

    #[test]
    fn text_format_round_trip() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let text = a.to_text();
        assert_eq!(text, "2 3\n101\n011\n");
        assert_eq!(text.parse::<Gf2Matrix>().unwrap(), a);
        assert!("2 3\n101\n".parse::<Gf2Matrix>().is_err());
        assert!("2 3\n101\n01\n".parse::<Gf2Matrix>().is_err());
        assert!("2\n".parse::<Gf2Matrix>().is_err());
        assert!("1 2\n1a\n".parse::<Gf2Matrix>().is_err());
    }

    #[test]
    fn symmetry_and_transpose() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!(!a.is_symmetric());
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(0, 2), a.get(2, 0));
        assert!(m(&[&[1, 1], &[1, 0]]).is_symmetric());
        assert!(!Gf2Matrix::zeros(2, 3).is_symmetric());
    }
}
