use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// A finite simple undirected graph whose vertices may carry a self-loop.
///
/// Vertices are numbered `1..=n`. A self-looped ("blue") vertex toggles its own
/// light when pressed; a vertex without one ("white") toggles only its neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    self_loops: Gf2Vector,
}

impl Graph {
    /// Rejects loops given as edges, repeated edges, and out-of-range vertices.
    pub fn new(n: usize, edges: &[(usize, usize)], self_loops: &[usize]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::InvalidGraph(format!("edge endpoint {v} outside 1..={n}")));
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!(
                    "edge [{a},{a}] is a loop; list it under self_loops"
                )));
            }
            adjacency[a - 1].push(b);
            adjacency[b - 1].push(a);
        }
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("repeated edge at vertex {}", v + 1)));
            }
        }
        let mut loops = Gf2Vector::zeros(n);
        for &v in self_loops {
            if v == 0 || v > n {
                return Err(Error::InvalidGraph(format!("self-loop vertex {v} outside 1..={n}")));
            }
            loops.set(v - 1, true);
        }
        Ok(Self {
            adjacency,
            self_loops: loops,
        })
    }

    /// The rectangular Lights Out board: rectilinear neighbors, every cell
    /// self-looped, vertices numbered row-major from 1.
    pub fn classic_grid(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidGraph("grid dimensions must be positive".into()));
        }
        let id = |r: usize, c: usize| r * cols + c + 1;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        let all: Vec<usize> = (1..=rows * cols).collect();
        Self::new(rows * cols, &edges, &all)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbors of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v - 1]
    }

    pub fn has_self_loop(&self, v: usize) -> bool {
        self.self_loops.get(v - 1)
    }

    pub fn self_loops(&self) -> &Gf2Vector {
        &self.self_loops
    }

    pub fn set_self_loop(&mut self, v: usize, on: bool) -> Result<()> {
        self.check_vertex(v)?;
        self.self_loops.set(v - 1, on);
        Ok(())
    }

    /// Edges `(a, b)` with `a < b`, in order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.iter().filter(move |&&b| b > i + 1).map(move |&b| (i + 1, b)))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.vertex_count() {
            return Err(Error::IndexOutOfRange {
                index: v,
                limit: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Column `v` (1-based): the lights toggled by pressing `v`.
    pub fn press_pattern(&self, v: usize) -> Result<Gf2Vector> {
        self.check_vertex(v)?;
        let mut col = Gf2Vector::from_ones(self.vertex_count(), self.neighbors(v).iter().map(|&u| u - 1))?;
        if self.has_self_loop(v) {
            col.set(v - 1, true);
        }
        Ok(col)
    }

    /// `a_ij = 1` iff `{i, j}` is an edge, or `i = j` carries a self-loop.
    pub fn influence_matrix(&self) -> Gf2Matrix {
        let n = self.vertex_count();
        let rows = (1..=n)
            .map(|v| self.press_pattern(v).expect("in range"))
            .collect();
        Gf2Matrix::from_rows(n, rows).expect("square")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// On-disk form: `{"n": 3, "edges": [[1,2],[2,3]], "self_loops": [1,3]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub self_loops: Vec<usize>,
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<Self> {
        let edges: Vec<(usize, usize)> = f.edges.iter().map(|&[a, b]| (a, b)).collect();
        Graph::new(f.n, &edges, &f.self_loops)
    }
}

impl From<Graph> for GraphFile {
    fn from(g: Graph) -> Self {
        Self {
            n: g.vertex_count(),
            edges: g.edges().map(|(a, b)| [a, b]).collect(),
            self_loops: g.self_loops.iter_ones().map(|i| i + 1).collect(),
        }
    }
}
