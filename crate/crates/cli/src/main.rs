mod certs;
mod report;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kpairs_core::bounds::{meagerness, meagerness_min_cut, sparsity, wiener_bound, BoundsError, EnumerationCaps};
use kpairs_core::entropy::{check_certificate, parse_certificate, serialize_certificate, Certificate, Verdict};
use kpairs_core::network::{gen_bipartite, gen_hu, gen_n1, parse_network, serialize_network, BipartiteType, Network};
use kpairs_core::rational::format;
use kpairs_core::routing::{build_concurrent_flow_lp, routing_rate};
use kpairs_core::Rational;
use report::{target_text, FlowEntry, Format, Quantity, Report, VerdictReport};
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

/// Routing and network-coding rate bounds for k-pairs networks.
#[derive(Parser)]
#[command(name = "kpairs", version)]
struct Cli {
    /// Output style; `machine` prints JSON with exact fractions as strings.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Edge cap for the sparsity and meagerness enumerations.
    #[arg(long, global = true)]
    cap_edges: Option<usize>,
    /// Commodity cap for the meagerness search.
    #[arg(long, global = true)]
    cap_commodities: Option<usize>,
    /// Worker threads for the enumerations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated network file.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Sparsity, Wiener bound (undirected) and meagerness (directed).
    Bounds {
        /// Network file, or `-` for standard input.
        file: String,
    },
    /// Exact maximum concurrent routing rate.
    Route {
        file: String,
        /// Print the per-commodity arc flows.
        #[arg(long)]
        scheme: bool,
        /// Print the flow LP.
        #[arg(long)]
        dump_lp: bool,
    },
    /// Check an entropy certificate against a network.
    Check {
        file: String,
        /// Certificate file; defaults to a bundled certificate that applies.
        #[arg(long)]
        cert: Option<String>,
    },
    /// Routing rate next to every upper bound that applies.
    Gap {
        file: String,
        #[arg(long)]
        cert: Option<String>,
    },
    /// Print the certificate `check` would use, or a bundled one by label.
    Cert {
        file: Option<String>,
        #[arg(long, conflicts_with = "file")]
        bundled: Option<String>,
        #[arg(long, conflicts_with_all = ["file", "bundled"])]
        list: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Directed family with meagerness 1 and coding rate 1/k.
    N1 {
        #[arg(long)]
        k: usize,
    },
    /// Undirected three-commodity network on six nodes.
    Hu,
    /// Complete bipartite graph `K(m, n)` with Type I or Type II demands.
    Bipartite {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "II", alias = "ii")]
    II,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("configuring worker threads")?;
    }
    let mut caps = EnumerationCaps::default();
    if let Some(c) = cli.cap_edges {
        caps.sparsity_edges = c;
        caps.meagerness_edges = c;
    }
    if let Some(c) = cli.cap_commodities {
        caps.commodities = c;
    }
    let output = match cli.command {
        Command::Gen { family } => generate(family)?,
        Command::Bounds { file } => {
            let net = load_network(&file)?;
            let mut report = Report::new("bounds", &net);
            report.quantities = bounds(&net, &caps, true)?;
            report.render(cli.format)
        }
        Command::Route { file, scheme, dump_lp } => route(&load_network(&file)?, scheme, dump_lp)?.render(cli.format),
        Command::Check { file, cert } => check(&file, cert.as_deref())?.render(cli.format),
        Command::Gap { file, cert } => gap(&file, cert.as_deref(), &caps)?.render(cli.format),
        Command::Cert { file, bundled, list } => certificate(file.as_deref(), bundled.as_deref(), list)?,
    };
    Ok(output)
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load_network(path: &str) -> Result<Network> {
    let text = read_input(path)?;
    parse_network(&text).with_context(|| format!("parsing network {path}"))
}

fn load_certificate(path: &str) -> Result<Certificate> {
    let text = read_input(path)?;
    parse_certificate(&text).with_context(|| format!("parsing certificate {path}"))
}

fn generate(family: Family) -> Result<String> {
    let net = match family {
        Family::N1 { k } => gen_n1(k)?,
        Family::Hu => gen_hu(),
        Family::Bipartite { kind, m, n } => {
            let kind = match kind {
                Kind::I => BipartiteType::I,
                Kind::II => BipartiteType::II,
            };
            gen_bipartite(kind, m, n)?
        }
    };
    Ok(serialize_network(&net))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, std::time::Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

/// Cut and distance bounds. With `strict`, a sparsity cap overflow on an
/// undirected network is an error; otherwise it is reported as skipped.
fn bounds(net: &Network, caps: &EnumerationCaps, strict: bool) -> Result<Vec<Quantity>> {
    let mut out = Vec::new();
    if net.commodity_count() == 0 {
        out.push(Quantity::skipped("sparsity", "network has no commodities"));
        return Ok(out);
    }
    let (s, t) = timed(|| sparsity(net, caps));
    match s {
        Ok(cut) => out.push(Quantity::cut("sparsity", net, cut).timed(t)),
        Err(e @ BoundsError::CapExceeded { .. }) if net.is_directed() || !strict => {
            out.push(Quantity::skipped("sparsity", e.to_string()))
        }
        Err(e) => return Err(e).context("sparsity"),
    }
    if net.is_directed() {
        let enumerate = net.edge_count() <= caps.meagerness_edges;
        let (m, t) = timed(|| if enumerate { meagerness(net, caps) } else { meagerness_min_cut(net, caps) });
        let method = if enumerate { "enumeration" } else { "min-cut" };
        out.push(Quantity::cut("meagerness", net, m.context("meagerness")?).method(method).timed(t));
    } else {
        let (w, t) = timed(|| wiener_bound(net));
        match w {
            Ok(w) => out.push(Quantity::value("wiener_bound", w).timed(t)),
            Err(e @ BoundsError::Disconnected(_)) => out.push(Quantity::skipped("wiener_bound", e.to_string())),
            Err(e) => return Err(e).context("wiener bound"),
        }
    }
    Ok(out)
}

fn route(net: &Network, scheme: bool, dump_lp: bool) -> Result<Report> {
    let mut report = Report::new("route", net);
    let (result, t) = timed(|| routing_rate(net));
    let (rate, flows) = result.context("routing LP")?;
    report.quantities.push(Quantity::value("routing_rate", rate).method("edge flow LP").timed(t));
    if scheme {
        report.scheme = flows
            .flows
            .iter()
            .map(|((id, arc), f)| FlowEntry { commodity: id.clone(), arc: arc.to_string(), flow: format(f) })
            .collect();
    }
    if dump_lp {
        report.lp = Some(build_concurrent_flow_lp(net).lp.to_string());
    }
    Ok(report)
}

/// Certificate from `--cert`, or one that applies to `net`.
fn choose_certificate(net: &Network, cert: Option<&str>) -> Result<Option<(String, Certificate)>> {
    match cert {
        Some(path) => Ok(Some((format!("file:{path}"), load_certificate(path)?))),
        None => certs::find_applicable(net),
    }
}

fn verdict_report(net: &Network, label: String, cert: &Certificate) -> Result<VerdictReport> {
    let (verdict, t) = timed(|| check_certificate(net, cert));
    let verdict = verdict.with_context(|| format!("checking certificate {label}"))?;
    let mut report = VerdictReport {
        certificate: label,
        valid: verdict.is_valid(),
        target: target_text(&cert.target),
        bound: None,
        symmetric_bound: None,
        informal_steps: Vec::new(),
        residual: None,
        steps: cert.steps.len(),
        elapsed: Some(t),
    };
    match verdict {
        Verdict::Valid { bound, symmetric_bound, informal_steps } => {
            report.bound = Some(format(&bound));
            report.symmetric_bound = Some(format(&symmetric_bound));
            report.informal_steps = informal_steps;
        }
        Verdict::Invalid { residual, .. } => report.residual = Some(residual.to_string()),
    }
    Ok(report)
}

fn check(file: &str, cert: Option<&str>) -> Result<Report> {
    if file == "-" && cert == Some("-") {
        bail!("the network and the certificate cannot both come from standard input");
    }
    let net = load_network(file)?;
    let (label, cert) = choose_certificate(&net, cert)?
        .ok_or_else(|| anyhow!("no bundled certificate applies to this network; pass one with --cert"))?;
    let mut report = Report::new("check", &net);
    report.verdicts.push(verdict_report(&net, label, &cert)?);
    Ok(report)
}

fn gap(file: &str, cert: Option<&str>, caps: &EnumerationCaps) -> Result<Report> {
    if file == "-" && cert == Some("-") {
        bail!("the network and the certificate cannot both come from standard input");
    }
    let net = load_network(file)?;
    let mut report = Report::new("gap", &net);
    let (result, t) = timed(|| routing_rate(&net));
    let (rate, _) = result.context("routing LP")?;
    report.quantities.push(Quantity::value("routing_rate", rate.clone()).method("edge flow LP").timed(t));
    report.quantities.extend(bounds(&net, caps, false)?);

    match choose_certificate(&net, cert)? {
        Some((label, cert)) => {
            let verdict = verdict_report(&net, label.clone(), &cert)?;
            if let Some(b) = &verdict.symmetric_bound {
                let bound = kpairs_core::rational::parse(b).expect("formatted by us");
                report.quantities.push(Quantity::value("coding_bound", bound).method(label));
            }
            report.verdicts.push(verdict);
        }
        None => report.quantities.push(Quantity::skipped("coding_bound", "no certificate applies to this network")),
    }

    for name in ["sparsity", "wiener_bound", "meagerness", "coding_bound"] {
        if let Some(upper) = report.quantity(name) {
            if rate > *upper {
                bail!("routing rate {rate} exceeds {name} {upper}; the computation is inconsistent");
            }
        }
    }
    let coding = report.quantity("coding_bound").cloned();
    if let (Some(m), Some(c)) = (report.quantity("meagerness").cloned(), coding.clone()) {
        if c > Rational::from_integer(0.into()) {
            let ratio = m / &c;
            report.conclusions.push(format!("meagerness is {} times the coding upper bound", format(&ratio)));
            report.quantities.push(Quantity::value("meagerness_over_coding_bound", ratio));
        }
    }
    if let Some(c) = coding {
        if rate == c && !net.is_directed() {
            report.conclusions.push("routing rate equals the coding upper bound: conjecture confirmed on this instance".into());
        } else if rate == c {
            report.conclusions.push("routing rate equals the coding upper bound on this directed instance".into());
        } else {
            report.conclusions.push(format!(
                "routing rate {} is below the certified coding bound {}; this instance is not settled",
                format(&rate),
                format(&c)
            ));
        }
    }
    Ok(report)
}

fn certificate(file: Option<&str>, bundled: Option<&str>, list: bool) -> Result<String> {
    if list {
        return Ok(certs::BUNDLED.iter().map(|(label, _)| format!("{label}\n")).collect());
    }
    if let Some(label) = bundled {
        return certs::bundled(label).map(str::to_string).ok_or_else(|| anyhow!("no bundled certificate named {label}"));
    }
    let file = file.ok_or_else(|| anyhow!("pass a network file, --bundled <label> or --list"))?;
    let net = load_network(file)?;
    let (_, cert) = certs::find_applicable(&net)?.ok_or_else(|| anyhow!("no certificate applies to this network"))?;
    Ok(serialize_certificate(&cert))
}
