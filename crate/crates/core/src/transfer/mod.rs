//! Prefixes of solutions of `A x = b` for infinite row-finite symmetric `A`.
//!
//! Two procedures:
//!
//! * [`consistent_prefixes`] works for any generator. At horizon `H` it takes
//!   the rows `1..=n + k_{H-1}`, which only involve the variables
//!   `1..=n + k_H`, solves that finite system exactly, and projects the
//!   solution set onto the first `p` variables. The sets shrink as `H` grows
//!   and can only over-approximate the prefixes of infinite solutions.
//! * [`exact_prefixes`] handles [`PeriodicSpec`](crate::rowfinite::PeriodicSpec)s. A finite transfer automaton
//!   over pairs of consecutive cells turns infinite solutions into infinite
//!   paths, and its live states (greatest fixed point of successor pruning)
//!   decide extendability exactly.

mod automaton;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use automaton::{
    exact_prefixes, EventuallyPeriodic, LiveStates, State, TransferAutomaton, DEFAULT_MAX_CELL_SIZE,
    MAX_EXACT_CELLS,
};

use crate::error::{Error, Result};
use crate::gf2::{AffineSolutionSet, Gf2Matrix, Gf2Vector};
use crate::rowfinite::{cut_points, find_symmetry_violation, window, RowFiniteMatrix};

/// Right-hand side of the infinite system.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Target {
    /// `b = (a_11, a_22, ...)`; always solvable.
    #[default]
    Diagonal,
    /// `b_i = preamble[i-1]` for `i <= preamble.len()`, then `cell` repeated.
    Periodic { preamble: Gf2Vector, cell: Gf2Vector },
}

impl Target {
    pub fn periodic(preamble: Gf2Vector, cell: Gf2Vector) -> Result<Self> {
        if cell.is_empty() {
            return Err(Error::InvalidArgument("periodic target needs a non-empty cell".into()));
        }
        Ok(Self::Periodic { preamble, cell })
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, Self::Diagonal)
    }

    /// Entry `i` (1-based).
    pub fn bit(&self, m: &RowFiniteMatrix, i: usize) -> bool {
        match self {
            Self::Diagonal => m.diagonal_bit(i),
            Self::Periodic { preamble, cell } => {
                if i <= preamble.len() {
                    preamble.get(i - 1)
                } else {
                    cell.get((i - preamble.len() - 1) % cell.len())
                }
            }
        }
    }

    pub fn prefix(&self, m: &RowFiniteMatrix, len: usize) -> Gf2Vector {
        Gf2Vector::from_bits((1..=len).map(|i| self.bit(m, i)))
    }
}

/// How final a prefix answer is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Extendable to a full infinite solution.
    Exact,
    /// Consistent with the truncated system at this horizon; may still die later.
    Horizon(usize),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => f.write_str("EXACT"),
            Self::Horizon(h) => write!(f, "HORIZON({h})"),
        }
    }
}

/// Serialized as the horizon number, or the string `"exact"`.
impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Exact => serializer.serialize_str("exact"),
            Self::Horizon(h) => serializer.serialize_u64(*h as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Horizon(usize),
            Tag(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Horizon(h) => Ok(Self::Horizon(h)),
            Raw::Tag(t) if t == "exact" => Ok(Self::Exact),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("unknown horizon {t:?}"))),
        }
    }
}

/// A set of length-`p` solution prefixes, tagged with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixSolutionSet {
    pub p: usize,
    pub horizon: Certificate,
    pub prefixes: BTreeSet<Gf2Vector>,
}

impl PrefixSolutionSet {
    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.prefixes.len()
    }

    pub fn contains(&self, prefix: &Gf2Vector) -> bool {
        self.prefixes.contains(prefix)
    }

    /// Lexicographically least member.
    pub fn least(&self) -> Option<&Gf2Vector> {
        self.prefixes.first()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// `S_H(p)`: prefixes of solutions of the rows `1..=n + k_{H-1}` of `A x = b`.
pub fn consistent_prefixes(
    m: &RowFiniteMatrix,
    n: usize,
    p: usize,
    horizon: usize,
    target: &Target,
) -> Result<PrefixSolutionSet> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let cuts = cut_points(m, n, horizon)?;
    let limit = n + cuts[0];
    if p > limit {
        return Err(Error::PrefixTooLong { p, limit });
    }
    let rows = n + if horizon >= 2 { cuts[horizon - 2] } else { 0 };
    let cols = n + cuts[horizon - 1];
    if let Some((row, col)) = find_symmetry_violation(m, cols) {
        return Err(Error::SymmetryViolation { row, col });
    }
    let system = m.leading_block(rows, cols);
    let rhs = target.prefix(m, rows);
    let prefixes = system.solve(&rhs)?.project_prefixes(p);
    if prefixes.is_empty() && target.is_diagonal() {
        return Err(Error::InternalTheoremViolation(format!(
            "truncated diagonal system at horizon {horizon} has no solution"
        )));
    }
    Ok(PrefixSolutionSet {
        p,
        horizon: Certificate::Horizon(horizon),
        prefixes,
    })
}

/// How [`solve_prefix`] decides extendability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixPolicy {
    /// Requires a periodic matrix.
    Exact,
    Horizon { n: usize, horizon: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixAnswer {
    pub prefix: Gf2Vector,
    pub certificate: Certificate,
}

/// The lexicographically least prefix under the given policy.
pub fn solve_prefix(m: &RowFiniteMatrix, p: usize, policy: PrefixPolicy, target: &Target) -> Result<PrefixAnswer> {
    match policy {
        PrefixPolicy::Exact => {
            let spec = m.periodic_spec().ok_or(Error::ExactRequiresPeriodic)?;
            let automaton = TransferAutomaton::new(spec, target)?;
            Ok(PrefixAnswer {
                prefix: automaton.least_prefix(p, &automaton.live_states())?,
                certificate: Certificate::Exact,
            })
        }
        PrefixPolicy::Horizon { n, horizon } => {
            let set = consistent_prefixes(m, n, p, horizon, target)?;
            let prefix = set.least().cloned().ok_or(Error::Unsolvable { witness: None })?;
            Ok(PrefixAnswer {
                prefix,
                certificate: set.horizon,
            })
        }
    }
}

/// The finite system `A_{n+k_l} z = (d_1, ..., d_{n+k_l})` cut from an infinite matrix.
#[derive(Debug, Clone)]
pub struct TruncatedSystem {
    pub n: usize,
    pub cuts: Vec<usize>,
    pub window: Gf2Matrix,
    pub diagonal: Gf2Vector,
}

impl TruncatedSystem {
    pub fn new(m: &RowFiniteMatrix, n: usize, level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("level must be at least 1".into()));
        }
        let cuts = cut_points(m, n, level)?;
        let size = n + cuts[level - 1];
        let window = window(m, size);
        if !window.is_symmetric() {
            let (row, col) = find_symmetry_violation(m, size).expect("asymmetric window");
            return Err(Error::SymmetryViolation { row, col });
        }
        let diagonal = window.diagonal()?;
        Ok(Self {
            n,
            cuts,
            window,
            diagonal,
        })
    }

    pub fn solutions(&self) -> Result<AffineSolutionSet> {
        self.window.solve(&self.diagonal)
    }

    /// For `j = 1..=level`, checks
    /// `sum_{i <= n+k_j} z_i c_i^{(n+k_{j-1})} = (d_1, ..., d_{n+k_{j-1}})`,
    /// plus the full system itself.
    pub fn nested_sums_hold(&self, z: &Gf2Vector) -> Result<bool> {
        let size = self.window.rows();
        if z.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: z.len(),
            });
        }
        let mut bounds: Vec<usize> = std::iter::once(self.n).chain(self.cuts.iter().map(|k| self.n + k)).collect();
        bounds.insert(0, 0);
        // (rows, cols) pairs: (n + k_{j-1}, n + k_j), then (size, size).
        let checks = (1..bounds.len() - 1)
            .map(|j| (bounds[j], bounds[j + 1]))
            .chain(std::iter::once((size, size)));
        for (rows, cols) in checks {
            let mut acc = Gf2Vector::zeros(rows);
            for i in z.iter_ones().map(|i| i + 1).take_while(|&i| i <= cols) {
                acc ^= &self.window.column_cut(i, rows)?;
            }
            if acc != self.diagonal.prefix(rows) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
