//! Acceptance battery. Runs without the libtest harness so each criterion
//! prints one `PASS`/`FAIL` line; exits nonzero when any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use coopkit::algebra::{
    check_laws_subset, enumerate_hoops, exhaustive_coop_search, random_assignment, sample_sequent, supports_sequent,
    Algebra, AlgebraClass, Law, LawMode, Model,
};
use coopkit::eqchain::{eval_term, translate_proof, verify_chain, Equation, Justification};
use coopkit::envelope::verify_envelope;
use coopkit::kernel::{check_proof, proof_from_json, transfer, LogicId, Proof};
use coopkit::lab::{all_ideals, check_cep, classify, congruences_by_search, monolith_and_decomposition};
use coopkit::numeric::Dyadic;
use coopkit::algebra::{embed_poset, poset_image, DenseModel, Poset};
use coopkit::pl::{decide_equation, decide_sequent, decide_universal, eval_exact, parse_matrix, sequent_formula, Ambient};
use coopkit::syntax::{parse_formula, parse_sequent, render_formula, Formula};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

const SEED: u64 = 20_240_611;

struct Entry {
    id: String,
    logic: LogicId,
    non_extension: Option<LogicId>,
    proof: Proof,
}

fn corpus() -> Vec<Entry> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let manifest: Vec<Json> =
        serde_json::from_str(&std::fs::read_to_string(format!("{dir}/manifest.json")).unwrap()).unwrap();
    manifest
        .iter()
        .map(|e| Entry {
            id: e["id"].as_str().unwrap().to_string(),
            logic: LogicId::parse(e["logic"].as_str().unwrap()).unwrap(),
            non_extension: e["non_extension"].as_str().map(|s| LogicId::parse(s).unwrap()),
            proof: proof_from_json(&std::fs::read_to_string(format!("{dir}/{}", e["file"].as_str().unwrap())).unwrap())
                .unwrap(),
        })
        .collect()
}

fn laws_criterion(seed: u64) -> (bool, Json) {
    let base = [
        Law::M1,
        Law::M2,
        Law::M3,
        Law::O1,
        Law::O2,
        Law::O3,
        Law::O4,
        Law::Le,
        Law::R,
        Law::Cwc,
        Law::H,
    ];
    let mut ok = true;
    let mut detail = BTreeMap::new();
    for spec in ["dyadic-capped:1", "dyadic-unbounded", "rational-capped:1", "rational-unbounded"] {
        let m = Model::from_spec(spec).unwrap();
        let mut laws = base.to_vec();
        if m.is_capped() {
            laws.extend([Law::Ann, Law::Inv, Law::Csd]);
        }
        let r = check_laws_subset(&m, &laws, LawMode::Sampled { count: 10_000, seed });
        let pass = r.passes_all(&laws);
        ok &= pass;
        let failures: Vec<&str> = r.failures().iter().map(|o| o.law.name()).collect();
        detail.insert(spec, json!({ "laws": laws.len(), "failures": failures }));
    }
    (ok, json!(detail))
}

fn coop_criterion() -> (bool, Json) {
    let t = Instant::now();
    let r = exhaustive_coop_search(3);
    let sizes: Vec<usize> = r.coops.iter().map(|a| a.size).collect();
    let ok = sizes == [1] && t.elapsed().as_secs() < 60;
    (ok, json!({ "coop_sizes": sizes, "search": r.sizes }))
}

fn kernel_criterion(corpus: &[Entry]) -> (bool, Json) {
    let mut ok = corpus.len() >= 12;
    let mut rows = vec![];
    for e in corpus {
        let home = check_proof(&e.proof, e.logic).ok;
        let mut ext_ok = true;
        let mut via_transfer = vec![];
        for ext in e.logic.extensions() {
            if check_proof(&e.proof, ext).ok {
                continue;
            }
            let t = transfer(&e.proof, ext).map(|q| check_proof(&q, ext).ok).unwrap_or(false);
            ext_ok &= t;
            via_transfer.push(ext.name());
        }
        let non_ext = match e.non_extension {
            Some(l) => !l.extends(e.logic) && !check_proof(&e.proof, l).ok,
            None => e.logic == LogicId::ALu,
        };
        ok &= home && ext_ok && non_ext;
        rows.push(json!({ "id": e.id, "logic": e.logic.name(), "home": home, "extensions": ext_ok,
            "via_transfer": via_transfer, "rejected_in_non_extension": non_ext }));
    }
    for needed in ["a1", "a2", "a5", "a6", "cwc_derivation", "ded_curried", "ded_conj"] {
        ok &= corpus.iter().any(|e| e.id == needed);
    }
    (ok, json!(rows))
}

fn candidate_models() -> Vec<(&'static str, Model)> {
    [
        "dyadic-unbounded",
        "dyadic-capped:1",
        "rational-unbounded",
        "rational-capped:1",
        "luk:2",
        "luk:3",
        "luk:5",
        "godel:3",
        "godel:4",
    ]
    .into_iter()
    .map(|s| (s, Model::from_spec(s).unwrap()))
    .collect()
}

fn soundness_criterion(corpus: &[Entry], seed: u64) -> (bool, Json) {
    let models = candidate_models();
    let mut ok = true;
    let mut rows = vec![];
    for e in corpus {
        let class = e.logic.model_class();
        let s = e.proof.conclusion();
        let mut used = vec![];
        let mut violations = 0;
        for (name, m) in &models {
            let mode = if m.is_dense() {
                LawMode::Sampled { count: 2000, seed }
            } else {
                LawMode::Exhaustive
            };
            if !supports_sequent(s, m) || !class.is_member(m, mode) {
                continue;
            }
            used.push(*name);
            if sample_sequent(s, m, 1000, seed).unwrap().is_some() {
                violations += 1;
            }
        }
        ok &= !used.is_empty() && violations == 0;
        rows.push(json!({ "id": e.id, "class": class.name(), "models": used, "violations": violations }));
    }
    (ok, json!(rows))
}

fn translation_criterion(corpus: &[Entry], seed: u64) -> (bool, Json) {
    let models: Vec<Model> = ["luk:3", "godel:3", "dyadic-unbounded"].iter().map(|s| Model::from_spec(s).unwrap()).collect();
    let mut ok = true;
    let mut rows = vec![];
    let mut n = 0;
    for e in corpus.iter().filter(|e| check_proof(&e.proof, LogicId::LLu).ok) {
        n += 1;
        let chain = match translate_proof(&e.proof) {
            Ok(c) => c,
            Err(err) => {
                ok = false;
                rows.push(json!({ "id": e.id, "error": err.to_string() }));
                continue;
            }
        };
        let verified = verify_chain(&chain).is_ok();
        let terms = chain.terms();
        let vars: Vec<String> = terms.iter().flat_map(|t| t.vars()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut semantic = true;
        for m in &models {
            for _ in 0..100 {
                let asg = random_assignment(vars.iter().cloned(), m, &mut rng);
                let first = eval_term(terms[0], &asg, m).unwrap();
                semantic &= terms.iter().all(|t| eval_term(t, &asg, m).unwrap() == first);
            }
        }
        let mut mutated = chain.clone();
        let target = mutated.steps.iter_mut().find_map(|s| match &mut s.justification {
            Justification::Equation { eq, subst, .. } => Some((eq, subst.clone())),
            Justification::Rearrange => None,
        });
        let rejected = match target {
            Some((eq, subst)) => {
                let all = [Equation::Eq1, Equation::Eq2, Equation::Eq3, Equation::Eq4, Equation::Eq5];
                let original = eq.instance(&subst);
                *eq = all.into_iter().find(|e| e.instance(&subst) != original).unwrap();
                verify_chain(&mutated).is_err()
            }
            None => false,
        };
        ok &= verified && semantic && rejected;
        rows.push(json!({ "id": e.id, "steps": chain.steps.len(), "verified": verified,
            "semantic": semantic, "mutation_rejected": rejected }));
    }
    ok &= n >= 10;
    (ok, json!(rows))
}

fn hoop_criterion() -> (bool, Json) {
    let hoops = enumerate_hoops(4);
    let mut counts = BTreeMap::new();
    let mut bad = vec![];
    let mut si = 0;
    for (i, h) in hoops.iter().enumerate() {
        *counts.entry(h.size).or_insert(0usize) += 1;
        let c = classify(h);
        let mut fine = c.simple == c.archimedean && (!c.simple || c.linear);
        fine &= congruences_by_search(h).len() == all_ideals(h).len();
        fine &= check_cep(h).is_none();
        match monolith_and_decomposition(h) {
            Ok(Some(d)) => {
                si += 1;
                fine &= d.verified();
            }
            Ok(None) => {}
            Err(_) => fine = false,
        }
        if !fine {
            bad.push(i);
        }
    }
    (bad.is_empty(), json!({ "hoops_by_size": counts, "subdirectly_irreducible": si, "failing": bad }))
}

fn poset_criterion(seed: u64) -> (bool, Json) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let laws = AlgebraClass::InvolutivePocrim.required_laws();
    let mut rows = vec![];
    let mut ok = true;
    for _ in 0..20 {
        let n = rng.gen_range(1..=5);
        let p = Poset::random(n, &mut rng);
        let a = embed_poset(&p);
        let laws_ok = check_laws_subset(&a, &laws, LawMode::Exhaustive).passes_all(&laws);
        let embeds = (0..n).all(|i| (0..n).all(|j| p.leq[i][j] == a.geq(&poset_image(j), &poset_image(i))));
        ok &= laws_ok && embeds;
        rows.push(json!({ "points": n, "size": a.size, "laws": laws_ok, "order_embedding": embeds }));
    }
    (ok, json!(rows))
}

fn envelope_criterion(seed: u64) -> (bool, Json) {
    let base = DenseModel::<Dyadic>::capped(Dyadic::from_int(1));
    match verify_envelope(&base, 1000, seed) {
        Ok(r) => (r.passed(), serde_json::to_value(&r).unwrap()),
        Err(e) => (false, json!({ "error": e.to_string() })),
    }
}

const SCALE: i64 = 1 << 20;
const GRID: i64 = 64;

fn eval_scaled(t: &Formula, asg: &BTreeMap<&str, i64>, ambient: Ambient) -> i64 {
    match t {
        Formula::Zero => 0,
        Formula::One => SCALE,
        Formula::Var(v) => asg[v.as_str()],
        Formula::Conj(a, b) => {
            let s = eval_scaled(a, asg, ambient) + eval_scaled(b, asg, ambient);
            match ambient {
                Ambient::Nonneg => s,
                Ambient::Interval => s.min(SCALE),
            }
        }
        Formula::Imp(a, b) => (eval_scaled(b, asg, ambient) - eval_scaled(a, asg, ambient)).max(0),
        Formula::Half(a) => {
            let v = eval_scaled(a, asg, ambient);
            assert_eq!(v % 2, 0, "grid scale too coarse");
            v / 2
        }
    }
}

/// Looks for a grid point in `[0,1]^n` where `t` is nonzero. In the nonneg
/// ambient terms without `1` are positively homogeneous, so the unit cube
/// is enough there too.
fn grid_refutes(t: &Formula, ambient: Ambient) -> bool {
    let vars: Vec<String> = t.vars().into_iter().collect();
    let n = vars.len();
    let points = (GRID + 1).pow(n as u32);
    (0..points).into_par_iter().any(|mut code| {
        let mut asg = BTreeMap::new();
        for v in &vars {
            asg.insert(v.as_str(), (code % (GRID + 1)) * (SCALE / GRID));
            code /= GRID + 1;
        }
        eval_scaled(t, &asg, ambient) != 0
    })
}

fn random_term(rng: &mut ChaCha8Rng, depth: usize, vars: &[&str], one: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Formula::Zero,
            1 if one => Formula::One,
            _ => Formula::var(vars[rng.gen_range(0..vars.len())]),
        };
    }
    match rng.gen_range(0..5) {
        0 | 1 => Formula::imp(random_term(rng, depth - 1, vars, one), random_term(rng, depth - 1, vars, one)),
        2 | 3 => Formula::conj(random_term(rng, depth - 1, vars, one), random_term(rng, depth - 1, vars, one)),
        _ => Formula::half(random_term(rng, depth - 1, vars, one)),
    }
}

fn decision_criterion(seed: u64) -> (bool, Json) {
    let f = |s: &str| parse_formula(s).unwrap();
    let mut ok = true;
    let mut detail = serde_json::Map::new();

    let axioms = [
        "P -o Q -o P",
        "(P -o Q) -o (Q -o R) -o P -o R",
        "((P -o Q) -o Q) -o (Q -o P) -o P",
        "((P -o 1) -o Q -o 1) -o Q -o P",
        "(P/2 -o P) -o P/2",
        "P/2 -o P/2 -o P",
    ];
    let axioms_valid: Vec<bool> = axioms
        .iter()
        .map(|a| decide_equation(&f(a), &Formula::Zero, Ambient::Interval).unwrap().is_valid())
        .collect();
    ok &= axioms_valid.iter().all(|&v| v);
    detail.insert("axioms_valid".into(), json!(axioms_valid));

    for (name, src) in [("cwc", "x + (x -> y) = y + (y -> x)"), ("csd", "(x -> y) -> y = (y -> x) -> x")] {
        let m = parse_matrix(src).unwrap();
        let valid = decide_universal(&m, &[Ambient::Nonneg, Ambient::Interval]).unwrap().is_valid();
        ok &= valid;
        detail.insert(name.into(), json!(valid));
    }

    let idem = parse_matrix("x + x = x").unwrap();
    let v = decide_universal(&idem, &[Ambient::Interval]).unwrap();
    let idem_ok = v.countermodel().is_some_and(|c| c.refutes(&idem));
    ok &= idem_ok;
    detail.insert("idempotence".into(), v.to_json());

    let con = parse_sequent("P |- P * P").unwrap();
    let v = decide_sequent(&con, Ambient::Interval).unwrap();
    let con_ok = v.countermodel().is_some_and(|c| {
        eval_exact(&sequent_formula(&con), c.ambient, &c.assignment).is_some_and(|q| q != BigRational::from_integer(0.into()))
    });
    ok &= con_ok;
    detail.insert("contraction".into(), v.to_json());

    let quasi = parse_matrix("x + y = x => y = 0").unwrap();
    let v = decide_universal(&quasi, &Ambient::parse_set("wajsberg").unwrap()).unwrap();
    let quasi_ok = v.countermodel().is_some_and(|c| c.ambient == Ambient::Interval && c.refutes(&quasi));
    ok &= quasi_ok;
    detail.insert("quasi_identity".into(), v.to_json());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0;
    let mut valid = 0;
    let mut cases = vec![];
    for i in 0..50 {
        let ambient = if i % 2 == 0 { Ambient::Interval } else { Ambient::Nonneg };
        let one = ambient == Ambient::Interval;
        let vars: &[&str] = if i % 5 == 4 { &["x", "y", "z"] } else { &["x", "y"] };
        let t = random_term(&mut rng, 3, vars, one);
        let s = match i % 3 {
            0 => Formula::conj(t.clone(), random_term(&mut rng, 2, vars, one)),
            _ => random_term(&mut rng, 3, vars, one),
        };
        let goal = Formula::imp(s, t);
        let verdict = decide_equation(&goal, &Formula::Zero, ambient).unwrap();
        let grid = grid_refutes(&goal, ambient);
        let witness_ok = verdict
            .countermodel()
            .is_none_or(|c| eval_exact(&goal, ambient, &c.assignment).is_some_and(|q| q != BigRational::from_integer(0.into())));
        if verdict.is_valid() == !grid && witness_ok {
            agree += 1;
        }
        valid += verdict.is_valid() as usize;
        cases.push(json!({ "term": render_formula(&goal), "ambient": ambient.name(), "valid": verdict.is_valid(), "grid_refutes": grid }));
    }
    ok &= agree == 50;
    detail.insert("oracle_agreement".into(), json!({ "agree": agree, "of": 50, "valid": valid, "cases": cases }));
    (ok, Json::Object(detail))
}

struct Outcome {
    name: &'static str,
    pass: bool,
    note: String,
    detail: Json,
}

fn battery(seed: u64) -> (Vec<Outcome>, String) {
    let corpus = corpus();
    let mut out = vec![];
    let mut transcript = vec![];
    let mut record = |name: &'static str, t: Instant, (pass, detail): (bool, Json)| {
        transcript.push(json!({ "criterion": name, "pass": pass, "detail": detail }));
        let note = format!("{:.1}s", t.elapsed().as_secs_f64());
        out.push(Outcome { name, pass, note, detail });
    };
    let t = Instant::now();
    record("law suite", t, laws_criterion(seed));
    let t = Instant::now();
    record("no finite coops", t, coop_criterion());
    let t = Instant::now();
    record("proof kernel", t, kernel_criterion(&corpus));
    let t = Instant::now();
    record("soundness bridge", t, soundness_criterion(&corpus, seed));
    let t = Instant::now();
    record("translation", t, translation_criterion(&corpus, seed));
    let t = Instant::now();
    record("finite hoops", t, hoop_criterion());
    let t = Instant::now();
    record("poset embedding", t, poset_criterion(seed));
    let t = Instant::now();
    record("envelope", t, envelope_criterion(seed));
    let t = Instant::now();
    record("decision engine", t, decision_criterion(seed));
    (out, serde_json::to_string(&transcript).unwrap())
}

fn main() {
    // Ignore libtest flags such as `--nocapture` or a name filter.
    let start = Instant::now();
    let (first, t1) = battery(SEED);
    let (_, t2) = battery(SEED);
    let mut all = true;
    for (i, o) in first.iter().enumerate() {
        all &= o.pass;
        let mut note = o.note.clone();
        if let Some(a) = o.detail.get("oracle_agreement") {
            note.push_str(&format!("; grid oracle agrees on {}/{} terms, {} valid", a["agree"], a["of"], a["valid"]));
        }
        println!("criterion {:>2} {:<18} {} ({note})", i + 1, o.name, if o.pass { "PASS" } else { "FAIL" });
    }
    let same = t1 == t2;
    all &= same;
    println!("criterion 10 {:<18} {}", "determinism", if same { "PASS" } else { "FAIL" });
    if !all {
        for o in first.iter().filter(|o| !o.pass) {
            println!("--- {} ---\n{}", o.name, serde_json::to_string_pretty(&o.detail).unwrap());
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    std::process::exit(if all { 0 } else { 1 });
}
