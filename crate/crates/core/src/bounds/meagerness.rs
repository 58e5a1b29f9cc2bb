use super::mincut::min_edge_cut;
use super::{bits, Adjacency, BoundsError, Candidate, CutReport, EnumerationCaps, Weights};
use crate::network::Network;
use rayon::prelude::*;
use std::cmp::Ordering;

fn check_input(net: &Network, caps: &EnumerationCaps) -> Result<usize, BoundsError> {
    if !net.is_directed() {
        return Err(BoundsError::NotDirected);
    }
    let k = net.commodity_count();
    if k == 0 {
        return Err(BoundsError::NoCommodities);
    }
    let cap = caps.commodities.min(32);
    if k > cap {
        return Err(BoundsError::CapExceeded { what: "meagerness commodity", size: k, cap });
    }
    Ok(k)
}

/// Largest commodity set that is pairwise compatible (`compatible[i]` has
/// bit `j` set iff no `s(i)->t(j)` nor `s(j)->t(i)` path survives, and bit
/// `i` iff `i` itself is separated). Among equally large sets the first in
/// index order wins.
fn largest_isolated_set(compatible: &[u32]) -> u32 {
    fn grow(compatible: &[u32], chosen: u32, open: u32, best: &mut u32) {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        if chosen.count_ones() + open.count_ones() <= best.count_ones() {
            return;
        }
        let mut rest = open;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            grow(compatible, chosen | 1 << i, rest & compatible[i as usize], best);
            if chosen.count_ones() + rest.count_ones() <= best.count_ones() {
                return;
            }
        }
    }
    let open = (0..compatible.len() as u32).filter(|&i| compatible[i as usize] >> i & 1 == 1).fold(0, |m, i| m | 1 << i);
    let mut best = 0;
    grow(compatible, 0, open, &mut best);
    best
}

/// Minimum over edge sets `A` of `c(A) / max{|J| : A isolates J}`.
///
/// Enumerates every `A` (so `|E|` is capped), builds the surviving
/// reachability matrix `R[i][j] = s(i) reaches t(j)` and finds the largest
/// `J` with `R` false on `J x J`.
pub fn meagerness(net: &Network, caps: &EnumerationCaps) -> Result<CutReport, BoundsError> {
    let k = check_input(net, caps)?;
    let m = net.edge_count();
    let cap = caps.meagerness_edges.min(63);
    if m > cap {
        return Err(BoundsError::CapExceeded { what: "meagerness edge", size: m, cap });
    }
    let weights = Weights::new(net)?;
    let adj = Adjacency::new(net);
    let endpoints: Vec<(usize, usize)> = (0..k).map(|i| net.commodity_endpoints(i)).collect();

    (0u64..1 << m)
        .into_par_iter()
        .filter_map(|cut| {
            // blocked[i] has bit j set iff s(i) does not reach t(j)
            let blocked: Vec<u32> = endpoints
                .iter()
                .map(|&(s, _)| {
                    let reach = adj.reachable(s, |e| cut >> e & 1 == 1);
                    endpoints.iter().enumerate().filter(|(_, &(_, t))| !reach[t]).fold(0u32, |m, (j, _)| m | 1 << j)
                })
                .collect();
            let compatible: Vec<u32> = (0..k)
                .map(|i| (0..k).filter(|&j| blocked[i] >> j & 1 == 1 && blocked[j] >> i & 1 == 1).fold(0, |m, j| m | 1 << j))
                .collect();
            let set = largest_isolated_set(&compatible);
            (set != 0).then(|| Candidate { edges: cut, commodities: set as u64, weight: weights.of_mask(cut) })
        })
        .min_by(|a, b| a.compare(b))
        .map(|best| best.report(net, &weights))
        .ok_or(BoundsError::NoCommodities)
}

/// Same value as [`meagerness`], computed as the minimum over nonempty
/// commodity sets `J` of `mincut(J) / |J|`, where `mincut(J)` is the least
/// capacity separating all sources of `J` from all sinks of `J`. Polynomial in
/// `|E|` for each `J`, so only the commodity cap applies.
pub fn meagerness_min_cut(net: &Network, caps: &EnumerationCaps) -> Result<CutReport, BoundsError> {
    let k = check_input(net, caps)?;
    let weights = Weights::new(net)?;
    let weight = |cut: &[usize]| cut.iter().map(|&e| u128::from(weights.per_edge[e])).sum::<u128>();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for set in 1u32..1 << k {
        let members = bits(set as u64);
        let sources: Vec<usize> = members.iter().map(|&i| net.commodity_endpoints(i).0).collect();
        let sinks: Vec<usize> = members.iter().map(|&i| net.commodity_endpoints(i).1).collect();
        let Some(cut) = min_edge_cut(net, &weights.per_edge, &sources, &sinks) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some((edges, commodities)) => {
                let lhs = weight(&cut) * commodities.len() as u128;
                let rhs = weight(edges) * members.len() as u128;
                match lhs.cmp(&rhs) {
                    Ordering::Less => true,
                    Ordering::Equal => (weight(&cut), cut.len()) < (weight(edges), edges.len()),
                    Ordering::Greater => false,
                }
            }
        };
        if better {
            best = Some((cut, members));
        }
    }
    let (edges, commodities) = best.ok_or(BoundsError::NoCommodities)?;
    Ok(CutReport::new(net, &weights, edges, commodities))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::isolates;
    use crate::network::{gen_hu, gen_n1, NetworkBuilder};
    use crate::rational::int;

    #[test]
    fn n1_meagerness_is_one() {
        for k in 2..=4 {
            let net = gen_n1(k).unwrap();
            let report = meagerness(&net, &EnumerationCaps::default()).unwrap();
            assert_eq!(report.value, int(1), "k = {k}");
            assert_eq!(meagerness_min_cut(&net, &EnumerationCaps::default()).unwrap().value, int(1));
        }
        for k in 5..=8 {
            assert_eq!(meagerness_min_cut(&gen_n1(k).unwrap(), &EnumerationCaps::default()).unwrap().value, int(1));
        }
    }

    #[test]
    fn single_arc() {
        let mut b = NetworkBuilder::new(true);
        b.node("s").unwrap().node("t").unwrap().edge("s", "t").unwrap().commodity("x", "s", "t").unwrap();
        let net = b.build();
        let report = meagerness(&net, &EnumerationCaps::default()).unwrap();
        assert_eq!(report.value, int(1));
        assert_eq!(report.witness_edge_indices, vec![0]);
    }

    #[test]
    fn witness_isolates_its_commodities() {
        let net = gen_n1(3).unwrap();
        let report = meagerness(&net, &EnumerationCaps::default()).unwrap();
        let set: Vec<usize> = report.witness_commodities.iter().map(|id| net.commodity_index(id).unwrap()).collect();
        assert!(isolates(&net, &report.witness_edge_indices, &set).unwrap());
        let report = meagerness_min_cut(&net, &EnumerationCaps::default()).unwrap();
        let set: Vec<usize> = report.witness_commodities.iter().map(|id| net.commodity_index(id).unwrap()).collect();
        assert!(isolates(&net, &report.witness_edge_indices, &set).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(meagerness(&gen_hu(), &EnumerationCaps::default()), Err(BoundsError::NotDirected));
        assert!(matches!(
            meagerness(&gen_n1(5).unwrap(), &EnumerationCaps::default()),
            Err(BoundsError::CapExceeded { size: 21, cap: 16, .. })
        ));
        let caps = EnumerationCaps { commodities: 2, ..Default::default() };
        assert!(matches!(meagerness_min_cut(&gen_n1(3).unwrap(), &caps), Err(BoundsError::CapExceeded { .. })));
    }

    #[test]
    fn largest_set_prefers_size_then_index_order() {
        // 0 and 2 compatible, 1 and 2 compatible, 0 and 1 not
        let compatible = [0b101, 0b110, 0b111];
        assert_eq!(largest_isolated_set(&compatible), 0b101);
        assert_eq!(largest_isolated_set(&[0b0, 0b10]), 0b10);
        assert_eq!(largest_isolated_set(&[0b0]), 0);
    }
}
