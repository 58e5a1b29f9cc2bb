use super::{Adjacency, BoundsError, Candidate, CutReport, EnumerationCaps, Weights};
use crate::network::Network;
use rayon::prelude::*;

/// Minimum of `c(A) / |J(A)|` over all edge sets `A` separating at least one
/// commodity, where `J(A)` is the full set of commodities `A` separates and
/// `c(A)` is the total capacity of `A` (`|A|` for unit capacities).
///
/// Ties are broken by smallest `c(A)`, then `|A|`, then by lexicographic
/// edge order.
pub fn sparsity(net: &Network, caps: &EnumerationCaps) -> Result<CutReport, BoundsError> {
    let k = net.commodity_count();
    if k == 0 {
        return Err(BoundsError::NoCommodities);
    }
    let m = net.edge_count();
    if m > caps.sparsity_edges.min(63) {
        return Err(BoundsError::CapExceeded { what: "sparsity edge", size: m, cap: caps.sparsity_edges.min(63) });
    }
    if k > 64 {
        return Err(BoundsError::CapExceeded { what: "sparsity commodity", size: k, cap: 64 });
    }
    let weights = Weights::new(net)?;
    let adj = Adjacency::new(net);
    let endpoints: Vec<(usize, usize)> = (0..k).map(|i| net.commodity_endpoints(i)).collect();
    let mut sources: Vec<usize> = endpoints.iter().map(|&(s, _)| s).collect();
    sources.sort_unstable();
    sources.dedup();

    (0u64..1 << m)
        .into_par_iter()
        .filter_map(|cut| {
            let mut separated = 0u64;
            for &s in &sources {
                let reach = adj.reachable(s, |e| cut >> e & 1 == 1);
                for (i, &(src, dst)) in endpoints.iter().enumerate() {
                    if src == s && !reach[dst] {
                        separated |= 1 << i;
                    }
                }
            }
            (separated != 0).then(|| Candidate { edges: cut, commodities: separated, weight: weights.of_mask(cut) })
        })
        .min_by(|a, b| a.compare(b))
        .map(|best| best.report(net, &weights))
        .ok_or(BoundsError::NoCommodities)
}
