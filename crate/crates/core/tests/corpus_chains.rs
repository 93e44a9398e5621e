use coopkit::eqchain::{chain_from_json, chain_to_json, translate_proof, verify_chain};
use coopkit::kernel::{check_proof, proof_from_json, LogicId};
use serde_json::Value;

fn corpus() -> Vec<(String, coopkit::kernel::Proof)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let manifest: Vec<Value> =
        serde_json::from_str(&std::fs::read_to_string(format!("{dir}/manifest.json")).unwrap()).unwrap();
    manifest
        .iter()
        .map(|e| {
            let file = e["file"].as_str().unwrap();
            let text = std::fs::read_to_string(format!("{dir}/{file}")).unwrap();
            (e["id"].as_str().unwrap().to_string(), proof_from_json(&text).unwrap())
        })
        .collect()
}

#[test]
fn llu_corpus_translates() {
    let mut n = 0;
    for (id, p) in corpus() {
        if !check_proof(&p, LogicId::LLu).ok {
            continue;
        }
        n += 1;
        let c = translate_proof(&p).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert_eq!(verify_chain(&c), Ok(()), "{id}");
        assert!(c.steps.len() <= 10 * p.size(), "{id}: {} steps", c.steps.len());
        let back = chain_from_json(&chain_to_json(&c)).unwrap();
        assert_eq!(verify_chain(&back), Ok(()), "{id}");
    }
    assert_eq!(n, 12);
}
