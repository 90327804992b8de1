use crate::error::Result;
use crate::rowfinite::{PeriodicSpec, RowFiniteMatrix};
use crate::transfer::{solve_prefix, EventuallyPeriodic, PrefixAnswer, PrefixPolicy, Target, TransferAutomaton};

use super::ClickSet;

/// A countably infinite graph of finite degree, given by its influence matrix.
///
/// Self-loops are the diagonal of that matrix.
#[derive(Debug, Clone)]
pub struct InfiniteGraph {
    matrix: RowFiniteMatrix,
}

impl InfiniteGraph {
    pub fn new(matrix: RowFiniteMatrix) -> Self {
        Self { matrix }
    }

    pub fn periodic(spec: PeriodicSpec) -> Self {
        Self::new(RowFiniteMatrix::periodic(spec))
    }

    pub fn matrix(&self) -> &RowFiniteMatrix {
        &self.matrix
    }

    /// Vertices toggled by pressing `v`, ascending.
    pub fn press_pattern(&self, v: usize) -> Vec<usize> {
        self.matrix.support(v)
    }

    pub fn has_self_loop(&self, v: usize) -> bool {
        self.matrix.diagonal_bit(v)
    }

    /// For a periodic graph, a full click set lighting exactly the self-looped
    /// vertices, as a transient followed by a repeating block.
    pub fn self_loop_clicks(&self) -> Option<Result<EventuallyPeriodic>> {
        let spec = self.matrix.periodic_spec()?;
        Some(TransferAutomaton::new(spec, &Target::Diagonal).and_then(|a| a.eventually_periodic(&a.live_states())))
    }
}

/// First `p` clicks of a (possibly infinite) click set that, starting from all
/// lights off, turns on exactly the self-looped vertices.
pub fn infinite_self_loop_prefix(g: &InfiniteGraph, p: usize, mode: PrefixPolicy) -> Result<(ClickSet, PrefixAnswer)> {
    let answer = solve_prefix(&g.matrix, p, mode, &Target::Diagonal)?;
    Ok((ClickSet(answer.prefix.clone()), answer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::transfer::Certificate;

    #[test]
    fn closed_path_prefix() {
        let g = InfiniteGraph::periodic(PeriodicSpec::path(true));
        let (clicks, answer) = infinite_self_loop_prefix(&g, 3, PrefixPolicy::Exact).unwrap();
        assert_eq!(clicks.pressed(), vec![2]);
        assert_eq!(answer.certificate, Certificate::Exact);
    }

    #[test]
    fn loopless_path_prefix_is_zero() {
        let g = InfiniteGraph::periodic(PeriodicSpec::path(false));
        let (clicks, _) = infinite_self_loop_prefix(&g, 3, PrefixPolicy::Exact).unwrap();
        assert_eq!(clicks.0.to_string(), "000");
        let gen = InfiniteGraph::new(RowFiniteMatrix::path(false));
        let (clicks, answer) = infinite_self_loop_prefix(&gen, 3, PrefixPolicy::Horizon { n: 3, horizon: 5 }).unwrap();
        assert_eq!(clicks.0.to_string(), "000");
        assert_eq!(answer.certificate, Certificate::Horizon(5));
        assert!(matches!(
            infinite_self_loop_prefix(&gen, 3, PrefixPolicy::Exact),
            Err(Error::ExactRequiresPeriodic)
        ));
    }

    #[test]
    fn identity_graph_prefix() {
        let g = InfiniteGraph::periodic(PeriodicSpec::identity());
        let (clicks, _) = infinite_self_loop_prefix(&g, 4, PrefixPolicy::Exact).unwrap();
        assert_eq!(clicks.pressed(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn periodic_click_description() {
        let g = InfiniteGraph::periodic(PeriodicSpec::path(true));
        let sol = g.self_loop_clicks().unwrap().unwrap();
        let x = sol.expand(40);
        // lights after pressing x: vertex i sees x_{i-1} + x_i + x_{i+1}
        for i in 1..39 {
            let lit = g.press_pattern(i).iter().filter(|&&j| x.get(j - 1)).count() % 2 == 1;
            assert_eq!(lit, g.has_self_loop(i), "vertex {i}");
        }
        assert!(InfiniteGraph::new(RowFiniteMatrix::path(true)).self_loop_clicks().is_none());
    }
}
