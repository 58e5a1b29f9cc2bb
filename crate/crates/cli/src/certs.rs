//! Certificates shipped with the binary and lookup of one that applies to a
//! given network.

use anyhow::{Context, Result};
use kpairs_core::entropy::{
    check_certificate, gen_certificate_bipartite, parse_certificate, serialize_certificate, Certificate, Verdict,
};
use kpairs_core::network::Network;

include!(concat!(env!("OUT_DIR"), "/bundled.rs"));

pub fn bundled(label: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(l, _)| *l == label).map(|(_, text)| *text)
}

/// A bundled certificate that checks valid on `net`, or one generated on the
/// fly for an undirected bipartite network. Always goes through the text
/// format.
pub fn find_applicable(net: &Network) -> Result<Option<(String, Certificate)>> {
    for (label, text) in BUNDLED {
        let cert = parse_certificate(text).with_context(|| format!("bundled certificate {label}"))?;
        if let Ok(Verdict::Valid { .. }) = check_certificate(net, &cert) {
            return Ok(Some((format!("bundled:{label}"), cert)));
        }
    }
    if let Ok(cert) = gen_certificate_bipartite(net) {
        let cert = parse_certificate(&serialize_certificate(&cert)).context("generated bipartite certificate")?;
        return Ok(Some(("generated:bipartite".to_string(), cert)));
    }
    Ok(None)
}
