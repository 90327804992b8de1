//! The Lights Out game on finite graphs with optional self-loops, and its
//! extension to infinite row-finite graphs.

mod graph;
mod infinite;

use serde::{Deserialize, Serialize};

pub use graph::{Graph, GraphFile};
pub use infinite::{infinite_self_loop_prefix, InfiniteGraph};

use crate::diagrange;
use crate::error::{Error, Result};
use crate::gf2::{parse_dims, AffineSolutionSet, Gf2Vector};

/// Which lights are on (`1`), indexed by vertex `1..=n` at bit `v - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoardState(pub Gf2Vector);

impl BoardState {
    pub fn all_off(n: usize) -> Self {
        Self(Gf2Vector::zeros(n))
    }

    pub fn all_on(n: usize) -> Self {
        Self(Gf2Vector::ones(n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_on(&self, v: usize) -> bool {
        self.0.get(v - 1)
    }

    pub fn lit(&self) -> usize {
        self.0.count_ones()
    }

    pub fn bits(&self) -> &Gf2Vector {
        &self.0
    }
}

/// Which vertices get pressed. Order never matters and pressing twice cancels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClickSet(pub Gf2Vector);

impl ClickSet {
    pub fn none(n: usize) -> Self {
        Self(Gf2Vector::zeros(n))
    }

    /// Pressed vertices, ascending, 1-based.
    pub fn pressed(&self) -> Vec<usize> {
        self.0.iter_ones().map(|i| i + 1).collect()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones()
    }

    pub fn bits(&self) -> &Gf2Vector {
        &self.0
    }
}

fn check_len(g: &Graph, len: usize) -> Result<()> {
    if len != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            found: len,
        });
    }
    Ok(())
}

/// Presses vertex `v` (1-based).
pub fn press(g: &Graph, s: &BoardState, v: usize) -> Result<BoardState> {
    check_len(g, s.len())?;
    let pattern = g.press_pattern(v)?;
    Ok(BoardState(&s.0 ^ &pattern))
}

/// Presses every vertex of `clicks`, one at a time.
pub fn apply_clicks(g: &Graph, s: &BoardState, clicks: &ClickSet) -> Result<BoardState> {
    check_len(g, clicks.0.len())?;
    clicks
        .pressed()
        .into_iter()
        .try_fold(s.clone(), |state, v| press(g, &state, v))
}

/// The full solution set of `influence(G) x = initial + target`.
pub fn board_solutions(g: &Graph, initial: &BoardState, target: &BoardState) -> Result<AffineSolutionSet> {
    check_len(g, initial.len())?;
    check_len(g, target.len())?;
    g.influence_matrix().solve(&(&initial.0 ^ &target.0))
}

/// The canonical click set turning `initial` into `target` (free variables zero).
///
/// Unsolvable boards fail with [`Error::Unsolvable`] carrying `z` such that
/// `z^T A = 0` and `z . (initial + target) = 1`: an odd number of lights in `z`
/// must change, but every press changes an even number of them.
pub fn solve_board(g: &Graph, initial: &BoardState, target: &BoardState) -> Result<ClickSet> {
    let set = board_solutions(g, initial, target)?;
    match set.particular() {
        Some(x) => Ok(ClickSet(x.clone())),
        None => Err(Error::Unsolvable {
            witness: set.witness().cloned(),
        }),
    }
}

/// Clicks that, from the all-off board, light exactly the self-looped vertices.
pub fn self_loop_pattern(g: &Graph) -> Result<ClickSet> {
    diagrange::solve_diagonal(&g.influence_matrix()).map(ClickSet)
}

/// The board file format: `rows cols`, then `rows` lines of `0`/`1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardFile {
    pub rows: usize,
    pub cols: usize,
    pub state: BoardState,
}

impl BoardFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty board file".into()))?;
        let (rows, cols) = parse_dims(header)?;
        let mut bits = Gf2Vector::zeros(0);
        let mut count = 0;
        for line in lines {
            let row: Gf2Vector = line.parse()?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "board row {} has {} cells, expected {cols}",
                    count + 1,
                    row.len()
                )));
            }
            bits.extend_from(&row);
            count += 1;
        }
        if count != rows {
            return Err(Error::Parse(format!("expected {rows} board rows, found {count}")));
        }
        Ok(Self {
            rows,
            cols,
            state: BoardState(bits),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            out.push_str(&self.state.0.slice(r * self.cols, (r + 1) * self.cols).to_string());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BoardState {
        BoardState(s.parse().unwrap())
    }

    #[test]
    fn press_examples() {
        let one = Graph::classic_grid(1, 1).unwrap();
        assert_eq!(press(&one, &b("0"), 1).unwrap(), b("1"));
        let edge = Graph::new(2, &[(1, 2)], &[]).unwrap();
        assert_eq!(press(&edge, &b("00"), 1).unwrap(), b("01"));
        let grid = Graph::classic_grid(3, 3).unwrap();
        let s = b("101010101");
        let twice = press(&grid, &press(&grid, &s, 5).unwrap(), 5).unwrap();
        assert_eq!(twice, s);
        assert_eq!(press(&grid, &BoardState::all_off(9), 5).unwrap(), b("010111010"));
        assert!(press(&grid, &s, 10).is_err());
        assert!(press(&grid, &b("1"), 1).is_err());
    }

    #[test]
    fn two_by_two_all_on() {
        let g = Graph::classic_grid(2, 2).unwrap();
        let x = solve_board(&g, &BoardState::all_on(4), &BoardState::all_off(4)).unwrap();
        assert_eq!(x.pressed(), vec![1, 2, 3, 4]);
        assert_eq!(
            apply_clicks(&g, &BoardState::all_on(4), &x).unwrap(),
            BoardState::all_off(4)
        );
    }

    #[test]
    fn triangle_without_loops_is_unsolvable() {
        let g = Graph::new(3, &[(1, 2), (2, 3), (1, 3)], &[]).unwrap();
        let initial = b("100");
        let err = solve_board(&g, &initial, &BoardState::all_off(3)).unwrap_err();
        let Error::Unsolvable { witness: Some(z) } = err else {
            panic!("expected a witness, got {err:?}");
        };
        assert!(g.influence_matrix().transpose().matvec(&z).unwrap().is_zero());
        assert!(z.dot(initial.bits()));
    }

    #[test]
    fn self_loop_pattern_examples() {
        let isolated = Graph::new(4, &[], &[1, 2, 3, 4]).unwrap();
        assert_eq!(self_loop_pattern(&isolated).unwrap().pressed(), vec![1, 2, 3, 4]);
        let path = Graph::new(3, &[(1, 2), (2, 3)], &[]).unwrap();
        assert_eq!(self_loop_pattern(&path).unwrap().count(), 0);
        let mixed = Graph::new(3, &[(1, 2), (2, 3)], &[1, 3]).unwrap();
        let x = self_loop_pattern(&mixed).unwrap();
        let lit = apply_clicks(&mixed, &BoardState::all_off(3), &x).unwrap();
        assert_eq!(lit, b("101"));
        // nullspace is {000, 111}: the canonical answer presses the white middle
        // vertex, the other answer presses both blue ends.
        assert_eq!(x.pressed(), vec![2]);
        let ends = ClickSet("101".parse().unwrap());
        assert_eq!(apply_clicks(&mixed, &BoardState::all_off(3), &ends).unwrap(), b("101"));
    }

    #[test]
    fn board_file_round_trip() {
        let f = BoardFile::parse("2 3\n101\n011\n").unwrap();
        assert_eq!(f.state, b("101011"));
        assert_eq!(f.to_text(), "2 3\n101\n011\n");
        assert!(BoardFile::parse("2 3\n101\n").is_err());
        assert!(BoardFile::parse("1 3\n1011\n").is_err());
        assert!(BoardFile::parse("").is_err());
    }
}
