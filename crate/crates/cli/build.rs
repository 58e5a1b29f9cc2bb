use kpairs_core::entropy::{gen_certificate_bipartite, gen_certificate_hu, gen_certificate_n1, serialize_certificate};
use kpairs_core::network::{gen_bipartite, BipartiteType};
use std::fmt::Write as _;
use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=build.rs");
    let out = std::env::var("OUT_DIR").expect("cargo sets OUT_DIR");
    let mut certs = Vec::new();
    for k in 2..=10 {
        certs.push(gen_certificate_n1(k).expect("k >= 2"));
    }
    certs.push(gen_certificate_hu());
    for (kind, tag) in [(BipartiteType::I, "I"), (BipartiteType::II, "II")] {
        for (m, n) in [(2, 2), (2, 3), (3, 3)] {
            let net = gen_bipartite(kind, m, n).expect("valid sizes");
            let mut cert = gen_certificate_bipartite(&net).expect("complete bipartite");
            cert.network = Some(format!("bipartite_{tag}_{m}_{n}"));
            certs.push(cert);
        }
    }
    let mut index = String::from("pub const BUNDLED: &[(&str, &str)] = &[\n");
    for cert in &certs {
        let label = cert.network.clone().expect("generators label their certificates");
        let file = format!("{label}.cert");
        std::fs::write(Path::new(&out).join(&file), serialize_certificate(cert)).expect("OUT_DIR is writable");
        writeln!(index, "    ({label:?}, include_str!(concat!(env!(\"OUT_DIR\"), \"/{file}\"))),").unwrap();
    }
    index.push_str("];\n");
    std::fs::write(Path::new(&out).join("bundled.rs"), index).expect("OUT_DIR is writable");
}
