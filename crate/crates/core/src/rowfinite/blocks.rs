use super::{cut_points, find_symmetry_violation, window, RowFiniteMatrix};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// Block-tridiagonal view of the leading `n + k_m` rows and columns.
///
/// Diagonal block `t` covers indices `bounds[t] + 1 ..= bounds[t + 1]`, where
/// `bounds = [0, n, n + k_1, ..., n + k_m]`. Coupling block `s` (1-based) sits
/// in the rows of diagonal block `s - 1` and the columns of block `s`. Every
/// other off-diagonal block is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    n: usize,
    cuts: Vec<usize>,
    diag_blocks: Vec<Gf2Matrix>,
    coupling_blocks: Vec<Gf2Matrix>,
}

impl BlockDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    /// `D_n, D_{n+k_1}, ..., D_{n+k_m}`.
    pub fn diag_blocks(&self) -> &[Gf2Matrix] {
        &self.diag_blocks
    }

    /// `B_1, ..., B_m`.
    pub fn coupling_blocks(&self) -> &[Gf2Matrix] {
        &self.coupling_blocks
    }

    /// `[0, n, n + k_1, ..., n + k_m]`.
    pub fn bounds(&self) -> Vec<usize> {
        block_bounds(self.n, &self.cuts)
    }

    /// Reassembles the `(n + k_m)`-square window from the blocks.
    pub fn assemble(&self) -> Gf2Matrix {
        let bounds = self.bounds();
        let size = *bounds.last().expect("non-empty");
        let mut out = Gf2Matrix::zeros(size, size);
        let mut place = |block: &Gf2Matrix, r0: usize, c0: usize| {
            for i in 0..block.rows() {
                for j in block.row(i).iter_ones() {
                    out.set(r0 + i, c0 + j, true);
                    out.set(c0 + j, r0 + i, true);
                }
            }
        };
        for (t, d) in self.diag_blocks.iter().enumerate() {
            place(d, bounds[t], bounds[t]);
        }
        for (s, b) in self.coupling_blocks.iter().enumerate() {
            place(b, bounds[s], bounds[s + 1]);
        }
        out
    }
}

fn block_bounds(n: usize, cuts: &[usize]) -> Vec<usize> {
    std::iter::once(0)
        .chain(std::iter::once(n))
        .chain(cuts.iter().map(|k| n + k))
        .collect()
}

/// Splits the leading window into diagonal and coupling blocks along the
/// minimal cut points, checking symmetry and the zero-block property entry-wise.
pub fn decompose(m: &RowFiniteMatrix, n: usize, count: usize) -> Result<BlockDecomposition> {
    if count == 0 {
        return Err(Error::InvalidArgument("need at least one cut point".into()));
    }
    let cuts = cut_points(m, n, count)?;
    let bounds = block_bounds(n, &cuts);
    let size = *bounds.last().expect("non-empty");
    if let Some((row, col)) = find_symmetry_violation(m, size) {
        return Err(Error::SymmetryViolation { row, col });
    }
    // Rows of block t may only reach blocks t-1, t, t+1.
    for t in 0..bounds.len() - 1 {
        let lo = if t >= 1 { bounds[t - 1] } else { 0 };
        let hi = bounds.get(t + 2).copied();
        for i in bounds[t] + 1..=bounds[t + 1] {
            let support = m.support(i);
            let bad = support.iter().find(|&&j| j <= lo || hi.is_some_and(|h| j > h));
            if let Some(&col) = bad {
                return Err(Error::ZeroBlockViolation { row: i, col });
            }
        }
    }

    let w = window(m, size);
    let diag_blocks = (0..bounds.len() - 1)
        .map(|t| w.submatrix(bounds[t], bounds[t + 1], bounds[t], bounds[t + 1]))
        .collect();
    let coupling_blocks = (1..bounds.len() - 1)
        .map(|s| w.submatrix(bounds[s - 1], bounds[s], bounds[s], bounds[s + 1]))
        .collect();
    Ok(BlockDecomposition {
        n,
        cuts,
        diag_blocks,
        coupling_blocks,
    })
}
