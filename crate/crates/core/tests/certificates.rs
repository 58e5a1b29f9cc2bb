use kpairs_core::entropy::{
    check_certificate, gen_certificate_bipartite, gen_certificate_hu, gen_certificate_n1, parse_certificate,
    serialize_certificate, Axiom, Certificate, CertificateError, InfoVar, Verdict, VarSet,
};
use kpairs_core::network::{gen_bipartite, gen_hu, gen_n1, BipartiteType, Network};
use kpairs_core::rational::{int, ratio};
use kpairs_core::routing::routing_rate;

fn instances() -> Vec<(Network, Certificate)> {
    let mut out = Vec::new();
    for k in 2..=6 {
        out.push((gen_n1(k).unwrap(), gen_certificate_n1(k).unwrap()));
    }
    out.push((gen_hu(), gen_certificate_hu()));
    for (kind, m, n) in [(BipartiteType::I, 2, 3), (BipartiteType::II, 2, 2), (BipartiteType::I, 3, 3), (BipartiteType::II, 2, 3)] {
        let net = gen_bipartite(kind, m, n).unwrap();
        let cert = gen_certificate_bipartite(&net).unwrap();
        out.push((net, cert));
    }
    out
}

fn rejected(net: &Network, cert: &Certificate) -> bool {
    !matches!(check_certificate(net, cert), Ok(Verdict::Valid { .. }))
}

fn set_args(axiom: &mut Axiom) -> Vec<&mut VarSet> {
    match axiom {
        Axiom::Monotonicity { subset, superset } => vec![subset, superset],
        Axiom::Submodularity(a, b) | Axiom::Subadditivity(a, b) => vec![a, b],
        Axiom::GeneralizedSubmodularity(sets) => sets.iter_mut().collect(),
        Axiom::Functional { given, .. } => vec![given],
        Axiom::Independence { messages, .. } => vec![messages],
        Axiom::InputOutput(_) | Axiom::Capacity { .. } | Axiom::Rate(_) => vec![],
    }
}

#[test]
fn generated_certificates_are_valid() {
    for (net, cert) in instances() {
        let verdict = check_certificate(&net, &cert).unwrap();
        assert!(verdict.is_valid(), "{:?}: {verdict:?}", cert.network);
    }
}

#[test]
fn symmetric_bounds_match_closed_forms() {
    for k in 2..=6i64 {
        let cert = gen_certificate_n1(k as usize).unwrap();
        assert_eq!(cert.target.symmetric_bound(), ratio(1, k));
    }
    assert_eq!(gen_certificate_hu().target.symmetric_bound(), ratio(8, 7));
    let t1 = gen_bipartite(BipartiteType::I, 2, 3).unwrap();
    assert_eq!(gen_certificate_bipartite(&t1).unwrap().target.symmetric_bound(), ratio(3, 4));
    let t2 = gen_bipartite(BipartiteType::II, 2, 2).unwrap();
    assert_eq!(gen_certificate_bipartite(&t2).unwrap().target.symmetric_bound(), ratio(1, 2));
}

#[test]
fn bound_consistency_with_routing() {
    for (net, cert) in instances() {
        let (rate, _) = routing_rate(&net).unwrap();
        assert!(rate <= cert.target.symmetric_bound(), "{:?}", cert.network);
    }
}

#[test]
fn coefficient_perturbations_are_rejected() {
    for (net, cert) in instances() {
        for j in 0..cert.steps.len() {
            let mut bad = cert.clone();
            bad.steps[j].coeff += int(1);
            assert!(rejected(&net, &bad), "{:?} step {}", cert.network, j + 1);
        }
        let mut bad = cert.clone();
        bad.target.bound -= int(1);
        assert!(rejected(&net, &bad));
    }
}

#[test]
fn set_element_perturbations_are_rejected() {
    for (net, cert) in instances() {
        let spare = InfoVar::message(&net.commodities()[0].id);
        for j in 0..cert.steps.len() {
            let arity = set_args(&mut cert.steps[j].axiom.clone()).len();
            for a in 0..arity {
                let mut removed = cert.clone();
                let set = set_args(&mut removed.steps[j].axiom).swap_remove(a);
                if set.pop_first().is_some() {
                    assert!(rejected(&net, &removed), "{:?} step {} set {a} minus first", cert.network, j + 1);
                }
                let mut added = cert.clone();
                let set = set_args(&mut added.steps[j].axiom).swap_remove(a);
                let extra = net.arcs().iter().map(InfoVar::arc).chain([spare.clone()]).find(|v| !set.contains(v));
                if let Some(v) = extra {
                    set.insert(v);
                    assert!(rejected(&net, &added), "{:?} step {} set {a} plus one", cert.network, j + 1);
                }
            }
        }
    }
}

#[test]
fn generation_is_deterministic() {
    let first: Vec<String> = instances().iter().map(|(_, c)| serialize_certificate(c)).collect();
    let second: Vec<String> = instances().iter().map(|(_, c)| serialize_certificate(c)).collect();
    assert_eq!(first, second);
    for text in &first {
        assert_eq!(serialize_certificate(&parse_certificate(text).unwrap()), *text);
    }
}

#[test]
fn truncated_certificate_leaves_residual() {
    let text = serialize_certificate(&gen_certificate_hu());
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let cert = parse_certificate(&lines.join("\n")).unwrap();
    match check_certificate(&gen_hu(), &cert).unwrap() {
        Verdict::Invalid { residual, .. } => assert!(!residual.is_zero()),
        v => panic!("{v:?}"),
    }
}

#[test]
fn hu_certificate_fails_without_edge_bg() {
    let net = gen_hu();
    let k = net.edges().iter().position(|e| e.u.as_str() == "b" && e.v.as_str() == "g").unwrap();
    let smaller = net.without_edge(k);
    match check_certificate(&smaller, &gen_certificate_hu()) {
        Err(CertificateError::Axiom { source, .. }) => {
            assert!(source.to_string().contains("b>g") || source.to_string().contains("g>b"), "{source}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn only_source_out_steps_are_flagged_informal() {
    let (net, cert) = (gen_hu(), gen_certificate_hu());
    match check_certificate(&net, &cert).unwrap() {
        Verdict::Valid { informal_steps, .. } => {
            for j in &informal_steps {
                assert!(cert.steps[j - 1].axiom.is_informal());
            }
            assert_eq!(informal_steps.len(), cert.steps.iter().filter(|s| s.axiom.is_informal()).count());
        }
        v => panic!("{v:?}"),
    }
}
