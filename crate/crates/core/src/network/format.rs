//! Line-oriented network text format.
//!
//! ```text
//! directed 0|1
//! node <name>            # or: nodes <n1> <n2> ...
//! edge <u> <v> [<p>/<q>] # capacity defaults to 1
//! commodity <id> <src> <dst>
//! ```

use super::{Network, NetworkBuilder, NetworkError};
use crate::rational::{self, int};
use num_traits::One;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let mut builder: Option<NetworkBuilder> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };
        let Some(b) = builder.as_mut() else {
            if keyword != "directed" {
                return Err(ParseError::new(line, format!("expected `directed 0|1`, found `{keyword}`")));
            }
            builder = Some(match args {
                ["0"] => NetworkBuilder::new(false),
                ["1"] => NetworkBuilder::new(true),
                _ => return Err(ParseError::new(line, "`directed` takes exactly one argument, 0 or 1")),
            });
            continue;
        };
        let wrap = |e: NetworkError| ParseError::new(line, e.to_string());
        match (keyword, args) {
            ("directed", _) => return Err(ParseError::new(line, "duplicate `directed` line")),
            ("node", [name]) => {
                b.node(name).map_err(wrap)?;
            }
            ("nodes", names) if !names.is_empty() => {
                for name in names {
                    b.node(name).map_err(wrap)?;
                }
            }
            ("edge", [u, v]) => {
                b.edge(u, v).map_err(wrap)?;
            }
            ("edge", [u, v, cap]) => {
                let capacity =
                    rational::parse(cap).ok_or_else(|| ParseError::new(line, format!("invalid capacity `{cap}`")))?;
                b.edge_with_capacity(u, v, capacity).map_err(wrap)?;
            }
            ("commodity", [id, src, dst]) => {
                b.commodity(id, src, dst).map_err(wrap)?;
            }
            ("node" | "nodes" | "edge" | "commodity", _) => {
                return Err(ParseError::new(line, format!("wrong number of arguments for `{keyword}`")));
            }
            _ => return Err(ParseError::new(line, format!("unknown keyword `{keyword}`"))),
        }
    }
    builder
        .map(NetworkBuilder::build)
        .ok_or_else(|| ParseError::new(last_line.max(1), "missing `directed` line"))
}

/// Canonical serialization; parsing the output yields an equal network.
pub fn serialize_network(net: &Network) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "directed {}", u8::from(net.is_directed()));
    if !net.nodes().is_empty() {
        let names: Vec<&str> = net.nodes().iter().map(|n| n.as_str()).collect();
        let _ = writeln!(out, "nodes {}", names.join(" "));
    }
    for e in net.edges() {
        if e.capacity.is_one() {
            let _ = writeln!(out, "edge {} {}", e.u, e.v);
        } else {
            let _ = writeln!(out, "edge {} {} {}", e.u, e.v, rational::format(&e.capacity));
        }
    }
    for c in net.commodities() {
        let _ = writeln!(out, "commodity {} {} {}", c.id, c.source, c.sink);
    }
    debug_assert!(net.edges().iter().all(|e| e.capacity > int(0)));
    out
}
