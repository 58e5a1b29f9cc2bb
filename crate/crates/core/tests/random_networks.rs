//! Bound orderings and an independent path-based LP on random small networks.

use kpairs_core::bounds::{meagerness, sparsity, wiener_bound, EnumerationCaps};
use kpairs_core::lp::{simplex_solve, LinearProgram, Relation};
use kpairs_core::network::{gen_n1, Network, NetworkBuilder};
use kpairs_core::rational::{int, ratio};
use kpairs_core::routing::{routing_rate, verify_scheme};
use kpairs_core::Rational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_network(rng: &mut StdRng) -> Network {
    let directed = rng.gen_bool(0.5);
    let n = rng.gen_range(3..=6);
    let mut b = NetworkBuilder::new(directed);
    for i in 0..n {
        b.node(&format!("n{i}")).unwrap();
    }
    let target_edges = rng.gen_range(1..=8);
    let mut added = 0;
    for _ in 0..64 {
        if added == target_edges {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let cap = if rng.gen_bool(0.2) { int(2) } else { int(1) };
        if b.edge_with_capacity(&format!("n{u}"), &format!("n{v}"), cap).is_ok() {
            added += 1;
        }
    }
    let k = rng.gen_range(1..=3);
    let mut made = 0;
    while made < k {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if s != t && b.commodity(&format!("c{made}"), &format!("n{s}"), &format!("n{t}")).is_ok() {
            made += 1;
        }
    }
    b.build()
}

/// Simple paths from `s` to `t` as lists of arc indices, or `None` past `limit`.
fn simple_paths(net: &Network, s: usize, t: usize, limit: usize) -> Option<Vec<Vec<usize>>> {
    fn walk(
        arcs: &[(usize, usize, usize)],
        at: usize,
        t: usize,
        seen: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        if at == t {
            out.push(path.clone());
            return out.len() <= limit;
        }
        for (a, &(tail, head, _)) in arcs.iter().enumerate() {
            if tail == at && !seen[head] {
                seen[head] = true;
                path.push(a);
                let ok = walk(arcs, head, t, seen, path, out, limit);
                path.pop();
                seen[head] = false;
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let arcs = net.arc_indices();
    let mut seen = vec![false; net.node_count()];
    seen[s] = true;
    let mut out = Vec::new();
    walk(&arcs, s, t, &mut seen, &mut Vec::new(), &mut out, limit).then_some(out)
}

/// Maximum concurrent rate with one variable per simple path.
fn path_rate(net: &Network, limit: usize) -> Option<Rational> {
    let arcs = net.arc_indices();
    let mut lp = LinearProgram::new();
    let r = lp.add_variable("r", true);
    let mut usage: Vec<Vec<_>> = vec![Vec::new(); net.edge_count()];
    for i in 0..net.commodity_count() {
        let (s, t) = net.commodity_endpoints(i);
        let paths = simple_paths(net, s, t, limit)?;
        let mut terms = vec![(r, int(1))];
        for (p, path) in paths.iter().enumerate() {
            let x = lp.add_variable(format!("x{i}_{p}"), true);
            terms.push((x, int(-1)));
            for &a in path {
                usage[arcs[a].2].push((x, int(1)));
            }
        }
        lp.add_constraint(format!("demand{i}"), terms, Relation::Le, int(0)).unwrap();
    }
    for (k, terms) in usage.into_iter().enumerate() {
        lp.add_constraint(format!("cap{k}"), terms, Relation::Le, net.edges()[k].capacity.clone()).unwrap();
    }
    lp.set_objective([(r, int(1))]).unwrap();
    let result = simplex_solve(&lp).unwrap();
    assert!(result.is_optimal());
    Some(result.value)
}

#[test]
fn bound_orderings_hold() {
    let mut rng = StdRng::seed_from_u64(7);
    let caps = EnumerationCaps::default();
    let mut compared = 0;
    for _ in 0..200 {
        let net = random_network(&mut rng);
        let (rate, scheme) = routing_rate(&net).unwrap();
        verify_scheme(&net, &scheme).unwrap();
        let s = sparsity(&net, &caps).unwrap().value;
        assert!(rate <= s, "routing {rate} > sparsity {s}");
        if net.is_directed() {
            let m = meagerness(&net, &caps).unwrap().value;
            assert!(m >= s, "meagerness {m} < sparsity {s}");
        } else if let Ok(w) = wiener_bound(&net) {
            assert!(rate <= w, "routing {rate} > wiener {w}");
        }
        if let Some(p) = path_rate(&net, 12) {
            assert_eq!(p, rate);
            compared += 1;
        }
    }
    assert!(compared > 100, "only {compared} instances had few enough paths");
}

#[test]
fn n1_paths_share_the_bottleneck() {
    for k in 2..=6 {
        let net = gen_n1(k).unwrap();
        let arcs = net.arc_indices();
        let uv = net.edges().iter().position(|e| e.u.as_str() == "u" && e.v.as_str() == "v").unwrap();
        for i in 0..k {
            let (s, t) = net.commodity_endpoints(i);
            let paths = simple_paths(&net, s, t, 12).unwrap();
            assert_eq!(paths.len(), 1);
            assert!(paths[0].iter().any(|&a| arcs[a].2 == uv));
        }
        assert_eq!(path_rate(&net, 12).unwrap(), ratio(1, k as i64));
        assert_eq!(routing_rate(&net).unwrap().0, ratio(1, k as i64));
    }
}

#[test]
fn bounds_scale_with_capacity() {
    let mut rng = StdRng::seed_from_u64(11);
    let caps = EnumerationCaps::default();
    for _ in 0..40 {
        let net = random_network(&mut rng);
        let factor = ratio(rng.gen_range(1..=5), rng.gen_range(1..=3));
        let big = net.scaled(&factor).unwrap();
        assert_eq!(sparsity(&big, &caps).unwrap().value, sparsity(&net, &caps).unwrap().value * &factor);
        assert_eq!(routing_rate(&big).unwrap().0, routing_rate(&net).unwrap().0 * &factor);
        if net.is_directed() {
            assert_eq!(meagerness(&big, &caps).unwrap().value, meagerness(&net, &caps).unwrap().value * &factor);
        } else if let Ok(w) = wiener_bound(&net) {
            assert_eq!(wiener_bound(&big).unwrap(), w * &factor);
        }
    }
}
