use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::{Certificate, PrefixSolutionSet, Target};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::rowfinite::{PeriodicSpec, RowFiniteMatrix};

/// Largest cell size accepted by default; the automaton has `2^(2c)` states.
pub const DEFAULT_MAX_CELL_SIZE: usize = 12;

/// Upper bound on the number of cells an exact prefix may span.
pub const MAX_EXACT_CELLS: usize = 256;

/// Assignment to two consecutive cells `(X_t, X_{t+1})`, packed as
/// `X_t | X_{t+1} << c` with bit `a` holding variable `a` of the cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(pub u32);

impl State {
    pub fn from_cells(current: u32, next: u32, c: usize) -> Self {
        Self(current | (next << c))
    }

    pub fn current(self, c: usize) -> u32 {
        self.0 & cell_mask(c)
    }

    pub fn next(self, c: usize) -> u32 {
        self.0 >> c
    }
}

fn cell_mask(c: usize) -> u32 {
    (1u32 << c) - 1
}

fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

/// Row masks of a small matrix.
fn masks(m: &Gf2Matrix) -> Vec<u32> {
    m.row_vectors().iter().map(|r| r.words().first().copied().unwrap_or(0) as u32).collect()
}

fn mul(rows: &[u32], x: u32) -> u32 {
    rows.iter().enumerate().fold(0, |acc, (a, &r)| acc | (parity(r & x) << a))
}

fn bits_of(x: u32, c: usize) -> impl Iterator<Item = bool> {
    (0..c).map(move |a| (x >> a) & 1 == 1)
}

fn to_mask(v: &Gf2Vector) -> u32 {
    v.iter_ones().fold(0, |acc, i| acc | (1 << i))
}

/// Lexicographic rank of a cell assignment: variable 0 is the most significant.
fn lex_key(x: u32, c: usize) -> u32 {
    x.reverse_bits() >> (32 - c)
}

/// Finite-state form of a periodic system `A x = b`.
///
/// A transition `(u, v) -> (v, w)` exists iff the rows of the middle cell hold:
/// `C^T u + D v + C w = b_cell`, where `D` is the cell block and `C` couples a
/// cell to the next one. Start states are the `(X_0, X_1)` for which some
/// preamble assignment satisfies the preamble rows and the first cell's rows.
pub struct TransferAutomaton {
    spec: PeriodicSpec,
    target: Target,
    c: usize,
    diag: Vec<u32>,
    coupling: Vec<u32>,
    coupling_t: Vec<u32>,
    cell_rhs: u32,
    /// `preimage[r]`: every `w` with `C w = r`.
    preimage: Vec<Vec<u32>>,
    /// `preimage_t[r]`: every `u` with `C^T u = r`.
    preimage_t: Vec<Vec<u32>>,
    /// Preamble and first-cell rows, split into preamble columns and cell columns.
    start_preamble_cols: Gf2Matrix,
    start_cell_cols: Gf2Matrix,
    start_rhs: Gf2Vector,
    /// `(mask, parity)`: a state `x` is a start state iff `parity(mask & x) == parity` for all.
    start_constraints: Vec<(u32, u32)>,
}

impl TransferAutomaton {
    pub fn new(spec: &PeriodicSpec, target: &Target) -> Result<Self> {
        Self::with_cell_bound(spec, target, DEFAULT_MAX_CELL_SIZE)
    }

    pub fn with_cell_bound(spec: &PeriodicSpec, target: &Target, max_cell: usize) -> Result<Self> {
        let c = spec.cell_size();
        let bound = max_cell.min(15);
        if c > bound {
            return Err(Error::CellTooLarge { size: c, bound });
        }
        let p = spec.preamble_size();
        let cell_rhs = match target {
            Target::Diagonal => to_mask(&spec.cell_diagonal()),
            Target::Periodic { preamble, cell } => {
                if preamble.len() != p || cell.len() != c {
                    return Err(Error::InvalidArgument(format!(
                        "target shape ({}, {}) does not match spec ({p}, {c})",
                        preamble.len(),
                        cell.len()
                    )));
                }
                to_mask(cell)
            }
        };

        let diag = masks(spec.cell_diag());
        let coupling = masks(spec.cell_coupling());
        let coupling_t = masks(&spec.cell_coupling().transpose());
        let mut preimage = vec![Vec::new(); 1 << c];
        let mut preimage_t = vec![Vec::new(); 1 << c];
        for x in 0..1u32 << c {
            preimage[mul(&coupling, x) as usize].push(x);
            preimage_t[mul(&coupling_t, x) as usize].push(x);
        }

        let m = RowFiniteMatrix::from(spec);
        let start_rows = m.leading_block(p + c, p + 2 * c);
        let start_preamble_cols = start_rows.submatrix(0, p + c, 0, p);
        let start_cell_cols = start_rows.submatrix(0, p + c, p, p + 2 * c);
        let start_rhs = target.prefix(&m, p + c);
        // x is a start state iff rhs + S_x x lies in the column space of S_y,
        // i.e. is orthogonal to every z with z^T S_y = 0.
        let start_constraints = start_preamble_cols
            .transpose()
            .nullspace()
            .iter()
            .map(|z| {
                let mask = to_mask(&start_cell_cols.transpose().matvec(z).expect("shape"));
                (mask, u32::from(z.dot(&start_rhs)))
            })
            .collect();

        Ok(Self {
            spec: spec.clone(),
            target: target.clone(),
            c,
            diag,
            coupling,
            coupling_t,
            cell_rhs,
            preimage,
            preimage_t,
            start_preamble_cols,
            start_cell_cols,
            start_rhs,
            start_constraints,
        })
    }

    pub fn cell_size(&self) -> usize {
        self.c
    }

    pub fn spec(&self) -> &PeriodicSpec {
        &self.spec
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn state_count(&self) -> usize {
        1 << (2 * self.c)
    }

    pub fn states(&self) -> impl Iterator<Item = State> {
        (0..self.state_count() as u32).map(State)
    }

    pub fn successors(&self, s: State) -> impl Iterator<Item = State> + '_ {
        let (u, v) = (s.current(self.c), s.next(self.c));
        let r = self.cell_rhs ^ mul(&self.coupling_t, u) ^ mul(&self.diag, v);
        self.preimage[r as usize]
            .iter()
            .map(move |&w| State::from_cells(v, w, self.c))
    }

    pub fn predecessors(&self, s: State) -> impl Iterator<Item = State> + '_ {
        let (v, w) = (s.current(self.c), s.next(self.c));
        let r = self.cell_rhs ^ mul(&self.diag, v) ^ mul(&self.coupling, w);
        self.preimage_t[r as usize]
            .iter()
            .map(move |&u| State::from_cells(u, v, self.c))
    }

    fn successor_count(&self, s: State) -> usize {
        let (u, v) = (s.current(self.c), s.next(self.c));
        let r = self.cell_rhs ^ mul(&self.coupling_t, u) ^ mul(&self.diag, v);
        self.preimage[r as usize].len()
    }

    pub fn is_start(&self, s: State) -> bool {
        self.start_constraints
            .iter()
            .all(|&(mask, par)| parity(mask & s.0) == par)
    }

    pub fn start_states(&self) -> impl Iterator<Item = State> + '_ {
        self.states().filter(|&s| self.is_start(s))
    }

    /// Greatest set of states closed under "has a successor in the set".
    ///
    /// Counts successors per state and repeatedly deletes states whose count
    /// drops to zero, walking predecessors of each deleted state.
    pub fn live_states(&self) -> LiveStates {
        let n = self.state_count();
        let mut count: Vec<u32> = self.states().map(|s| self.successor_count(s) as u32).collect();
        let mut live = vec![true; n];
        let mut queue: VecDeque<State> = VecDeque::new();
        for s in self.states() {
            if count[s.0 as usize] == 0 {
                live[s.0 as usize] = false;
                queue.push_back(s);
            }
        }
        while let Some(dead) = queue.pop_front() {
            for q in self.predecessors(dead) {
                let qi = q.0 as usize;
                if live[qi] {
                    count[qi] -= 1;
                    if count[qi] == 0 {
                        live[qi] = false;
                        queue.push_back(q);
                    }
                }
            }
        }
        LiveStates { c: self.c, live }
    }

    /// Preamble assignments `y` compatible with start state `s`.
    fn preamble_solutions(&self, s: State) -> Result<crate::gf2::AffineSolutionSet> {
        let x = Gf2Vector::from_bits(bits_of(s.current(self.c), self.c).chain(bits_of(s.next(self.c), self.c)));
        let rhs = &self.start_rhs ^ &self.start_cell_cols.matvec(&x)?;
        self.start_preamble_cols.solve(&rhs)
    }

    fn live_starts(&self, live: &LiveStates) -> Result<Vec<State>> {
        let starts: Vec<State> = self.start_states().filter(|&s| live.contains(s)).collect();
        if starts.is_empty() {
            return Err(if self.target.is_diagonal() {
                Error::InternalTheoremViolation("no live start state for the diagonal target".into())
            } else {
                Error::Unsolvable { witness: None }
            });
        }
        Ok(starts)
    }

    fn cells_bits(&self, cells: &[u32]) -> Gf2Vector {
        Gf2Vector::from_bits(cells.iter().flat_map(|&x| bits_of(x, self.c)))
    }

    /// `S_inf(p)`: every length-`p` prefix of an infinite solution.
    pub fn prefixes(&self, p: usize, live: &LiveStates) -> Result<BTreeSet<Gf2Vector>> {
        let pre = self.spec.preamble_size();
        let c = self.c;
        let cells_needed = p.saturating_sub(pre).div_ceil(c);
        if cells_needed > MAX_EXACT_CELLS {
            return Err(Error::PrefixTooLong {
                p,
                limit: pre + MAX_EXACT_CELLS * c,
            });
        }
        let mut out = BTreeSet::new();
        for s in self.live_starts(live)? {
            let ys = self.preamble_solutions(s)?.project_prefixes(pre.min(p));
            if p <= pre {
                out.extend(ys);
                continue;
            }
            let tails = self.cell_strings(s, cells_needed.max(2), live);
            for y in &ys {
                for tail in &tails {
                    out.insert(y.concat(&tail.prefix(p - pre)));
                }
            }
        }
        Ok(out)
    }

    /// The lexicographically least member of `S_inf(p)`, found bit by bit
    /// without listing the set, which may be exponentially large.
    pub fn least_prefix(&self, p: usize, live: &LiveStates) -> Result<Gf2Vector> {
        let pre = self.spec.preamble_size();
        if p.saturating_sub(pre).div_ceil(self.c) > MAX_EXACT_CELLS {
            return Err(Error::PrefixTooLong {
                p,
                limit: pre + MAX_EXACT_CELLS * self.c,
            });
        }
        let starts = self
            .live_starts(live)?
            .into_iter()
            .map(|s| Ok((s, self.preamble_solutions(s)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut w = Gf2Vector::zeros(0);
        for _ in 0..p {
            w.push(false);
            if !self.admits(&w, &starts, live)? {
                let last = w.len() - 1;
                w.set(last, true);
            }
        }
        Ok(w)
    }

    /// True iff some infinite solution starts with `w`.
    fn admits(&self, w: &Gf2Vector, starts: &[(State, crate::gf2::AffineSolutionSet)], live: &LiveStates) -> Result<bool> {
        let pre = self.spec.preamble_size();
        let c = self.c;
        let k = pre.min(w.len());
        for (s, ys) in starts {
            let Some(y) = ys.particular() else { continue };
            // some y + span(basis) agrees with w on the first k preamble bits
            let basis = ys.nullspace_basis();
            let b = Gf2Matrix::from_fn(k, basis.len(), |i, j| basis[j].get(i));
            if !b.solve(&(&y.prefix(k) ^ &w.prefix(k)))?.is_feasible() {
                continue;
            }
            if !(self.matches_prefix(0, s.current(c), w) && self.matches_prefix(1, s.next(c), w)) {
                continue;
            }
            let cells = w.len().saturating_sub(pre).div_ceil(c);
            let mut frontier = BTreeSet::from([*s]);
            for idx in 2..cells {
                frontier = frontier
                    .iter()
                    .flat_map(|&st| self.successors(st))
                    .filter(|&t| live.contains(t) && self.matches_prefix(idx, t.next(c), w))
                    .collect();
                if frontier.is_empty() {
                    break;
                }
            }
            if !frontier.is_empty() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Distinct bit strings of `cells` consecutive cells along live paths from `s`.
    fn cell_strings(&self, s: State, cells: usize, live: &LiveStates) -> BTreeSet<Gf2Vector> {
        let mut frontier: BTreeSet<(Gf2Vector, State)> = BTreeSet::new();
        frontier.insert((self.cells_bits(&[s.current(self.c), s.next(self.c)]), s));
        for _ in 2..cells {
            let mut next = BTreeSet::new();
            for (bits, st) in &frontier {
                for succ in self.successors(*st).filter(|&t| live.contains(t)) {
                    let mut b = bits.clone();
                    b.extend_from(&self.cells_bits(&[succ.next(self.c)]));
                    next.insert((b, succ));
                }
            }
            frontier = next;
        }
        frontier.into_iter().map(|(b, _)| b).collect()
    }

    /// A solution of the first `cells` cells (plus preamble) that starts with
    /// `prefix` and stays on live states, or `None` if `prefix` is not extendable.
    ///
    /// Every row whose support fits inside the returned assignment holds.
    pub fn extend_prefix(&self, prefix: &Gf2Vector, cells: usize, live: &LiveStates) -> Result<Option<Gf2Vector>> {
        let pre = self.spec.preamble_size();
        let c = self.c;
        let cells = cells.max(2).max(prefix.len().saturating_sub(pre).div_ceil(c));
        for s in self.live_starts(live)? {
            let Some(y) = self
                .preamble_solutions(s)?
                .iter()
                .find(|y| (0..pre.min(prefix.len())).all(|i| y.get(i) == prefix.get(i)))
            else {
                continue;
            };
            let mut path = vec![s.current(c), s.next(c)];
            if self.extend_path(&mut path, s, prefix, cells, live) {
                return Ok(Some(y.concat(&self.cells_bits(&path))));
            }
        }
        Ok(None)
    }

    fn matches_prefix(&self, cell_index: usize, x: u32, prefix: &Gf2Vector) -> bool {
        let base = self.spec.preamble_size() + cell_index * self.c;
        bits_of(x, self.c)
            .enumerate()
            .all(|(a, bit)| base + a >= prefix.len() || prefix.get(base + a) == bit)
    }

    fn extend_path(&self, path: &mut Vec<u32>, s: State, prefix: &Gf2Vector, cells: usize, live: &LiveStates) -> bool {
        if path.len() == 2 && !(self.matches_prefix(0, path[0], prefix) && self.matches_prefix(1, path[1], prefix)) {
            return false;
        }
        if path.len() >= cells {
            return true;
        }
        let idx = path.len();
        for succ in self.successors(s).filter(|&t| live.contains(t)) {
            let w = succ.next(self.c);
            if !self.matches_prefix(idx, w, prefix) {
                continue;
            }
            path.push(w);
            if self.extend_path(path, succ, prefix, cells, live) {
                return true;
            }
            path.pop();
        }
        false
    }

    /// One full solution in the form `transient` followed by `cycle` repeated forever.
    ///
    /// Starts from the lexicographically least live start state and always moves
    /// to the successor whose new cell is lexicographically least, so the walk
    /// becomes periodic once a state repeats.
    pub fn eventually_periodic(&self, live: &LiveStates) -> Result<EventuallyPeriodic> {
        let c = self.c;
        let start = self
            .live_starts(live)?
            .into_iter()
            .min_by_key(|s| (lex_key(s.current(c), c), lex_key(s.next(c), c)))
            .expect("non-empty");
        let y = self
            .preamble_solutions(start)?
            .particular()
            .cloned()
            .expect("start states admit a preamble assignment");

        let mut seen: HashMap<State, usize> = HashMap::new();
        let mut cells = vec![start.current(c)];
        let mut s = start;
        let cycle_from = loop {
            if let Some(&i) = seen.get(&s) {
                break i;
            }
            seen.insert(s, cells.len() - 1);
            cells.push(s.next(c));
            s = self
                .successors(s)
                .filter(|&t| live.contains(t))
                .min_by_key(|t| lex_key(t.next(c), c))
                .expect("live states have live successors");
        };
        // State index t is (X_t, X_{t+1}); the walk repeats from X_{cycle_from}.
        let period = seen.len() - cycle_from;
        let transient = y.concat(&self.cells_bits(&cells[..cycle_from]));
        let cycle = self.cells_bits(&cells[cycle_from..cycle_from + period]);
        Ok(EventuallyPeriodic { transient, cycle })
    }
}

impl fmt::Debug for TransferAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransferAutomaton")
            .field("cell_size", &self.c)
            .field("states", &self.state_count())
            .field("target", &self.target)
            .finish()
    }
}

/// Result of the liveness fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiveStates {
    c: usize,
    live: Vec<bool>,
}

impl LiveStates {
    pub fn contains(&self, s: State) -> bool {
        self.live[s.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.live.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        self.live
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| State(i as u32))
    }

    pub fn cell_size(&self) -> usize {
        self.c
    }
}

/// An infinite 0/1 sequence `transient cycle cycle cycle ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    pub transient: Gf2Vector,
    pub cycle: Gf2Vector,
}

impl EventuallyPeriodic {
    /// Entry `i`, 0-based.
    pub fn bit(&self, i: usize) -> bool {
        if i < self.transient.len() {
            self.transient.get(i)
        } else {
            self.cycle.get((i - self.transient.len()) % self.cycle.len())
        }
    }

    pub fn expand(&self, len: usize) -> Gf2Vector {
        Gf2Vector::from_bits((0..len).map(|i| self.bit(i)))
    }
}

/// `S_inf(p)` for a periodic matrix, certified [`Certificate::Exact`].
pub fn exact_prefixes(spec: &PeriodicSpec, p: usize, target: &Target) -> Result<PrefixSolutionSet> {
    let automaton = TransferAutomaton::new(spec, target)?;
    let live = automaton.live_states();
    let prefixes = automaton.prefixes(p, &live)?;
    Ok(PrefixSolutionSet {
        p,
        horizon: Certificate::Exact,
        prefixes,
    })
}
