//! Minimum-capacity edge cut between node sets of a directed network,
//! via shortest augmenting paths.

use crate::network::Network;
use std::collections::VecDeque;

/// (head, residual capacity, reverse arc index, originating edge)
type ResidualArc = (usize, u128, usize, Option<usize>);

struct FlowGraph {
    arcs: Vec<Vec<ResidualArc>>,
}

impl FlowGraph {
    fn add(&mut self, from: usize, to: usize, cap: u128, edge: Option<usize>) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push((to, cap, rev_from, edge));
        self.arcs[to].push((from, 0, rev_to, None));
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        let mut queue = VecDeque::from([source]);
        let mut seen = vec![false; self.arcs.len()];
        seen[source] = true;
        while let Some(x) = queue.pop_front() {
            for (k, &(y, cap, _, _)) in self.arcs[x].iter().enumerate() {
                if cap > 0 && !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut bottleneck = u128::MAX;
        let mut y = sink;
        while let Some((x, k)) = parent[y] {
            bottleneck = bottleneck.min(self.arcs[x][k].1);
            y = x;
        }
        let mut y = sink;
        while let Some((x, k)) = parent[y] {
            let rev = self.arcs[x][k].2;
            self.arcs[x][k].1 -= bottleneck;
            self.arcs[y][rev].1 += bottleneck;
            y = x;
        }
        true
    }

    fn residual_reach(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(x) = stack.pop() {
            for &(y, cap, _, _) in &self.arcs[x] {
                if cap > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Least-weight set of edges whose removal leaves no path from any of
/// `sources` to any of `sinks`, as sorted edge indices. `weights` holds
/// one positive integer per edge. `None` when the two
/// sets share a node.
pub(crate) fn min_edge_cut(net: &Network, weights: &[u64], sources: &[usize], sinks: &[usize]) -> Option<Vec<usize>> {
    if sources.iter().any(|s| sinks.contains(s)) {
        return None;
    }
    let n = net.node_count();
    let (super_source, super_sink) = (n, n + 1);
    let unbounded = weights.iter().map(|&w| u128::from(w)).sum::<u128>() + 1;
    let mut graph = FlowGraph { arcs: vec![Vec::new(); n + 2] };
    for (tail, head, edge) in net.arc_indices() {
        graph.add(tail, head, u128::from(weights[edge]), Some(edge));
    }
    for &s in sources {
        graph.add(super_source, s, unbounded, None);
    }
    for &t in sinks {
        graph.add(t, super_sink, unbounded, None);
    }
    while graph.augment(super_source, super_sink) {}
    let reach = graph.residual_reach(super_source);
    let mut cut: Vec<usize> = net
        .arc_indices()
        .into_iter()
        .filter(|&(tail, head, _)| reach[tail] && !reach[head])
        .map(|(_, _, edge)| edge)
        .collect();
    cut.sort_unstable();
    cut.dedup();
    Some(cut)
}
