//! Standard instance families.

use super::{Network, NetworkBuilder, NetworkError};

/// Directed meagerness-gap family: sources `s1..sk` feed `u`, a single arc
/// `u -> v` fans out to sinks `t1..tk`, and every sink `ti` also hears
/// directly from each source `sj` with `j > i`.
pub fn gen_n1(k: usize) -> Result<Network, NetworkError> {
    if k < 2 {
        return Err(NetworkError::InvalidParameter(format!("n1 needs k >= 2, got {k}")));
    }
    let mut b = NetworkBuilder::new(true);
    for i in 1..=k {
        b.node(&format!("s{i}"))?;
    }
    b.node("u")?.node("v")?;
    for i in 1..=k {
        b.node(&format!("t{i}"))?;
    }
    for i in 1..=k {
        b.edge(&format!("s{i}"), "u")?;
    }
    b.edge("u", "v")?;
    for i in 1..=k {
        b.edge("v", &format!("t{i}"))?;
    }
    for i in 1..=k {
        for j in i + 1..=k {
            b.edge(&format!("s{j}"), &format!("t{i}"))?;
        }
    }
    for i in 1..=k {
        b.commodity(&i.to_string(), &format!("s{i}"), &format!("t{i}"))?;
    }
    Ok(b.build())
}

/// The undirected three-commodity network on nodes a, b, c, g, h, f.
pub fn gen_hu() -> Network {
    let build = || -> Result<Network, NetworkError> {
        let mut b = NetworkBuilder::new(false);
        for n in ["a", "b", "c", "g", "h", "f"] {
            b.node(n)?;
        }
        for (u, v) in [("a", "g"), ("b", "g"), ("c", "g"), ("a", "h"), ("b", "h"), ("c", "h"), ("a", "f"), ("c", "f")] {
            b.edge(u, v)?;
        }
        b.commodity("a", "a", "c")?.commodity("b", "b", "f")?.commodity("g", "g", "h")?;
        Ok(b.build())
    };
    build().expect("fixed topology is well formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BipartiteType {
    /// Commodities between every pair inside each partition, none across.
    I,
    /// Commodities between every pair of distinct vertices.
    II,
}

/// Complete bipartite network on `v1..vm` and `w1..wn`. Each unordered pair
/// becomes one commodity named `<x>_<y>` whose source is the
/// lexicographically smaller node.
pub fn gen_bipartite(kind: BipartiteType, m: usize, n: usize) -> Result<Network, NetworkError> {
    if m < 2 || n < 2 {
        return Err(NetworkError::InvalidParameter(format!("bipartite needs m, n >= 2, got ({m}, {n})")));
    }
    let left: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();
    let right: Vec<String> = (1..=n).map(|j| format!("w{j}")).collect();
    let mut b = NetworkBuilder::new(false);
    for name in left.iter().chain(&right) {
        b.node(name)?;
    }
    for v in &left {
        for w in &right {
            b.edge(v, w)?;
        }
    }
    let mut pairs: Vec<(&String, &String)> = Vec::new();
    for side in [&left, &right] {
        for (i, x) in side.iter().enumerate() {
            for y in &side[i + 1..] {
                pairs.push((x, y));
            }
        }
    }
    if kind == BipartiteType::II {
        for v in &left {
            for w in &right {
                pairs.push((v, w));
            }
        }
    }
    for (x, y) in pairs {
        let (src, dst) = if x <= y { (x, y) } else { (y, x) };
        b.commodity(&format!("{src}_{dst}"), src, dst)?;
    }
    Ok(b.build())
}
