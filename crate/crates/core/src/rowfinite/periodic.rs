use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

pub const SPEC_VERSION: &str = "periodic-spec/1";

/// Finite description of an infinite symmetric matrix with a repeating
/// block-tridiagonal tail.
///
/// Indices `1..=P` form the preamble, with explicit supports. From `P + 1` on,
/// the indices are split into cells of `c` consecutive indices; cell `t`
/// covers `P + t*c + 1 ..= P + (t+1)*c`. Inside a cell the entries are
/// `cell_diag`; `cell_coupling[a][b]` links row `a` of cell `t` to column `b`
/// of cell `t + 1`, and the transpose links back. Preamble rows may reach into
/// the first cell only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PeriodicSpecFile", into = "PeriodicSpecFile")]
pub struct PeriodicSpec {
    preamble: Vec<Vec<usize>>,
    cell_diag: Gf2Matrix,
    cell_coupling: Gf2Matrix,
    /// For each row `a` of the first cell, the preamble rows that reach it.
    first_cell_back: Vec<Vec<usize>>,
}

impl PeriodicSpec {
    pub fn new(preamble: Vec<Vec<usize>>, cell_diag: Gf2Matrix, cell_coupling: Gf2Matrix) -> Result<Self> {
        let c = cell_diag.rows();
        if c == 0 {
            return Err(Error::InvalidSpec("cell size must be positive".into()));
        }
        if !cell_diag.is_symmetric() {
            return Err(Error::InvalidSpec("cell_diag must be square and symmetric".into()));
        }
        if cell_coupling.rows() != c || cell_coupling.cols() != c {
            return Err(Error::InvalidSpec(format!(
                "cell_coupling is {}x{}, expected {c}x{c}",
                cell_coupling.rows(),
                cell_coupling.cols()
            )));
        }
        let p = preamble.len();
        let mut preamble = preamble;
        for (i, row) in preamble.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            if let Some(&j) = row.iter().find(|&&j| j == 0 || j > p + c) {
                return Err(Error::InvalidSpec(format!(
                    "preamble row {} references column {j}, outside 1..={}",
                    i + 1,
                    p + c
                )));
            }
        }
        for (i, row) in preamble.iter().enumerate() {
            for &j in row.iter().filter(|&&j| j <= p) {
                if preamble[j - 1].binary_search(&(i + 1)).is_err() {
                    return Err(Error::InvalidSpec(format!(
                        "preamble is not symmetric: a({},{j}) = 1 but a({j},{}) = 0",
                        i + 1,
                        i + 1
                    )));
                }
            }
        }
        let mut first_cell_back = vec![Vec::new(); c];
        for (i, row) in preamble.iter().enumerate() {
            for &j in row.iter().filter(|&&j| j > p) {
                first_cell_back[j - p - 1].push(i + 1);
            }
        }
        Ok(Self {
            preamble,
            cell_diag,
            cell_coupling,
            first_cell_back,
        })
    }

    /// No preamble.
    pub fn uniform(cell_diag: Gf2Matrix, cell_coupling: Gf2Matrix) -> Result<Self> {
        Self::new(Vec::new(), cell_diag, cell_coupling)
    }

    /// `support(i) = {i}`.
    pub fn identity() -> Self {
        Self::uniform(Gf2Matrix::identity(1), Gf2Matrix::zeros(1, 1)).expect("valid")
    }

    /// The infinite path `1 - 2 - 3 - ...`; `closed` adds every self-loop.
    pub fn path(closed: bool) -> Self {
        let diag = Gf2Matrix::from_fn(1, 1, |_, _| closed);
        Self::uniform(diag, Gf2Matrix::identity(1)).expect("valid")
    }

    /// Width-2 ladder: vertex `v` is adjacent to `v +- 2` and to its rung partner.
    pub fn ladder(closed: bool) -> Self {
        let diag = Gf2Matrix::from_fn(2, 2, |a, b| a != b || closed);
        Self::uniform(diag, Gf2Matrix::identity(2)).expect("valid")
    }

    pub fn preamble_size(&self) -> usize {
        self.preamble.len()
    }

    pub fn cell_size(&self) -> usize {
        self.cell_diag.rows()
    }

    pub fn cell_diag(&self) -> &Gf2Matrix {
        &self.cell_diag
    }

    pub fn cell_coupling(&self) -> &Gf2Matrix {
        &self.cell_coupling
    }

    pub fn preamble(&self) -> &[Vec<usize>] {
        &self.preamble
    }

    /// Cell index and offset within the cell of a 1-based index past the preamble.
    pub fn locate(&self, i: usize) -> Option<(usize, usize)> {
        let p = self.preamble_size();
        (i > p).then(|| ((i - p - 1) / self.cell_size(), (i - p - 1) % self.cell_size()))
    }

    /// First 1-based index of cell `t`.
    pub fn cell_start(&self, t: usize) -> usize {
        self.preamble_size() + t * self.cell_size() + 1
    }

    /// Sorted support of row `i` (1-based).
    pub fn support(&self, i: usize) -> Vec<usize> {
        assert!(i >= 1, "rows are 1-based");
        let Some((t, a)) = self.locate(i) else {
            return self.preamble[i - 1].clone();
        };
        let c = self.cell_size();
        let mut out = Vec::new();
        if t == 0 {
            out.extend_from_slice(&self.first_cell_back[a]);
        } else {
            let prev = self.cell_start(t - 1);
            out.extend((0..c).filter(|&b| self.cell_coupling.get(b, a)).map(|b| prev + b));
        }
        let here = self.cell_start(t);
        out.extend(self.cell_diag.row(a).iter_ones().map(|b| here + b));
        let next = self.cell_start(t + 1);
        out.extend(self.cell_coupling.row(a).iter_ones().map(|b| next + b));
        out
    }

    pub fn diagonal_bit(&self, i: usize) -> bool {
        match self.locate(i) {
            None => self.preamble[i - 1].binary_search(&i).is_ok(),
            Some((_, a)) => self.cell_diag.get(a, a),
        }
    }

    /// Diagonal restricted to one cell.
    pub fn cell_diagonal(&self) -> Gf2Vector {
        self.cell_diag.diagonal().expect("square")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// On-disk form of a [`PeriodicSpec`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodicSpecFile {
    pub version: String,
    pub cell_size: usize,
    pub cell_diag: Vec<Vec<u8>>,
    pub cell_coupling: Vec<Vec<u8>>,
    #[serde(default)]
    pub preamble: Vec<Vec<usize>>,
}

fn bits_matrix(name: &str, c: usize, rows: &[Vec<u8>]) -> Result<Gf2Matrix> {
    if rows.len() != c || rows.iter().any(|r| r.len() != c) {
        return Err(Error::InvalidSpec(format!("{name} must be {c}x{c}")));
    }
    Gf2Matrix::from_bits(rows).map_err(|e| Error::InvalidSpec(format!("{name}: {e}")))
}

impl TryFrom<PeriodicSpecFile> for PeriodicSpec {
    type Error = Error;

    fn try_from(file: PeriodicSpecFile) -> Result<Self> {
        if file.version != SPEC_VERSION {
            return Err(Error::InvalidSpec(format!(
                "unsupported version {:?}, expected {SPEC_VERSION:?}",
                file.version
            )));
        }
        let diag = bits_matrix("cell_diag", file.cell_size, &file.cell_diag)?;
        let coupling = bits_matrix("cell_coupling", file.cell_size, &file.cell_coupling)?;
        Self::new(file.preamble, diag, coupling)
    }
}

impl From<PeriodicSpec> for PeriodicSpecFile {
    fn from(spec: PeriodicSpec) -> Self {
        let rows = |m: &Gf2Matrix| -> Vec<Vec<u8>> {
            m.row_vectors().iter().map(|r| r.iter().map(u8::from).collect()).collect()
        };
        Self {
            version: SPEC_VERSION.to_string(),
            cell_size: spec.cell_size(),
            cell_diag: rows(&spec.cell_diag),
            cell_coupling: rows(&spec.cell_coupling),
            preamble: spec.preamble,
        }
    }
}
