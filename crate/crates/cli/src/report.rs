//! Report model shared by the subcommands, with a human table view and an
//! exact JSON view.

use kpairs_core::bounds::CutReport;
use kpairs_core::entropy::Target;
use kpairs_core::network::{Edge, Network};
use kpairs_core::rational::{format, to_decimal};
use kpairs_core::Rational;
use serde::Serialize;
use std::fmt::Write;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub nodes: usize,
    pub edges: usize,
    pub commodities: usize,
    pub directed: bool,
}

impl Summary {
    pub fn of(net: &Network) -> Self {
        Summary {
            nodes: net.node_count(),
            edges: net.edge_count(),
            commodities: net.commodity_count(),
            directed: net.is_directed(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Quantity {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness_edges: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness_commodities: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip)]
    pub exact: Option<Rational>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Quantity {
    pub fn value(name: &'static str, value: Rational) -> Self {
        Quantity {
            name,
            value: Some(format(&value)),
            method: None,
            witness_edges: Vec::new(),
            witness_commodities: Vec::new(),
            skipped: None,
            exact: Some(value),
            elapsed: None,
        }
    }

    pub fn cut(name: &'static str, net: &Network, cut: CutReport) -> Self {
        let mut q = Quantity::value(name, cut.value);
        q.witness_edges = cut.witness_edges.iter().map(|e| edge_label(net, e)).collect();
        q.witness_commodities = cut.witness_commodities;
        q
    }

    pub fn skipped(name: &'static str, reason: impl Into<String>) -> Self {
        Quantity {
            name,
            value: None,
            method: None,
            witness_edges: Vec::new(),
            witness_commodities: Vec::new(),
            skipped: Some(reason.into()),
            exact: None,
            elapsed: None,
        }
    }

    pub fn method(mut self, method: impl Into<String>) -> Self {
        self.method = Some(method.into());
        self
    }

    pub fn timed(mut self, elapsed: Duration) -> Self {
        self.elapsed = Some(elapsed);
        self
    }
}

pub fn edge_label(net: &Network, e: &Edge) -> String {
    let sep = if net.is_directed() { ">" } else { "-" };
    format!("{}{sep}{}", e.u, e.v)
}

#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub certificate: String,
    pub valid: bool,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric_bound: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub informal_steps: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    pub steps: usize,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

pub fn target_text(target: &Target) -> String {
    let mut out = String::new();
    for (id, a) in &target.alphas {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if *a != Rational::from_integer(1.into()) {
            let _ = write!(out, "{a} ");
        }
        let _ = write!(out, "r_{id}");
    }
    let _ = write!(out, " <= {}", target.bound);
    out
}

#[derive(Debug, Serialize)]
pub struct FlowEntry {
    pub commodity: String,
    pub arc: String,
    pub flow: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network: Option<Summary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub quantities: Vec<Quantity>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub scheme: Vec<FlowEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conclusions: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, net: &Network) -> Self {
        Report {
            command,
            network: Some(Summary::of(net)),
            quantities: Vec::new(),
            verdicts: Vec::new(),
            scheme: Vec::new(),
            lp: None,
            conclusions: Vec::new(),
        }
    }

    pub fn quantity(&self, name: &str) -> Option<&Rational> {
        self.quantities.iter().find(|q| q.name == name).and_then(|q| q.exact.as_ref())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(self).expect("report is plain data");
                s.push('\n');
                s
            }
            Format::Human => self.human(),
        }
    }

    fn human(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.network {
            let kind = if n.directed { "directed" } else { "undirected" };
            let _ = writeln!(out, "network: {} nodes, {} edges, {} commodities, {kind}", n.nodes, n.edges, n.commodities);
        }
        let width = self.quantities.iter().map(|q| q.name.len()).max().unwrap_or(0);
        for q in &self.quantities {
            match (&q.exact, &q.skipped) {
                (Some(v), _) => {
                    let _ = write!(out, "{:<width$}  {:<8} ({})", q.name, format(v), to_decimal(v, 6));
                    if let Some(m) = &q.method {
                        let _ = write!(out, "  via {m}");
                    }
                    if let Some(t) = q.elapsed {
                        let _ = write!(out, "  [{} ms]", t.as_millis());
                    }
                    out.push('\n');
                    if !q.witness_edges.is_empty() || !q.witness_commodities.is_empty() {
                        let _ = writeln!(
                            out,
                            "{:<width$}    cut {{{}}} against {{{}}}",
                            "",
                            q.witness_edges.join(", "),
                            q.witness_commodities.join(", ")
                        );
                    }
                }
                (None, Some(reason)) => {
                    let _ = writeln!(out, "{:<width$}  skipped: {reason}", q.name);
                }
                (None, None) => {}
            }
        }
        for v in &self.verdicts {
            let status = if v.valid { "valid" } else { "INVALID" };
            let _ = write!(out, "certificate {} ({} steps): {status}", v.certificate, v.steps);
            if let Some(t) = v.elapsed {
                let _ = write!(out, "  [{} ms]", t.as_millis());
            }
            out.push('\n');
            let _ = writeln!(out, "  target: {}", v.target);
            if let Some(b) = &v.symmetric_bound {
                let exact: Rational = kpairs_core::rational::parse(b).expect("formatted by us");
                let _ = writeln!(out, "  symmetric rate bound: {b} ({})", to_decimal(&exact, 6));
            }
            if !v.informal_steps.is_empty() {
                let steps: Vec<String> = v.informal_steps.iter().map(|s| s.to_string()).collect();
                let _ = writeln!(
                    out,
                    "  note: step(s) {} use source_out, whose soundness rests on an informal argument",
                    steps.join(", ")
                );
            }
            if let Some(r) = &v.residual {
                let _ = writeln!(out, "  residual (steps minus target, should be 0): {r}");
            }
        }
        if !self.scheme.is_empty() {
            out.push_str("routing scheme:\n");
            for f in &self.scheme {
                let _ = writeln!(out, "  {:<10} {:<12} {}", f.commodity, f.arc, f.flow);
            }
        }
        if let Some(lp) = &self.lp {
            out.push_str(lp);
            if !lp.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.conclusions {
            let _ = writeln!(out, "{c}");
        }
        out
    }
}
