//! Report builders shared by the command line tool and the acceptance tests.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::horoclass::{dim_homogeneous_model, enumerate_special, homogeneity_verdict};
use crate::horofan::enumerate_rank1_embeddings;
use crate::octonion::{
    alternative_holds, composition_holds, derivation_algebra, g2_orbit_report, random_exact, repair_z_basis,
    symplectic_tensor_form, tabulated_z_patterns, verify_z_table, wedge_kernel_dim, Octonion,
};
use crate::rootsys::{RootSystem, SimpleType};
use crate::scalar::Scalar;
use crate::twoorbits::{
    case_verdict, dim_consistency, enumerate_product_triples, enumerate_simple_triples, fiber_case_table,
    four_case_table, row_scan, Outcome,
};
use crate::{ExactScalar, Rational};

pub const TOOL: &str = "horo";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_MAX_RANK: usize = 12;
/// Seed for the random octonion pairs.
pub const OCTONION_SEED: u64 = 7;
pub const RANDOM_PAIRS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub records: Vec<Value>,
    pub summary: BTreeMap<String, Value>,
}

impl ReportEnvelope {
    fn new(command: &str, params: BTreeMap<String, Value>) -> Self {
        ReportEnvelope {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            params,
            records: Vec::new(),
            summary: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// One row per record, columns in order of first appearance.
    pub fn to_tsv(&self) -> String {
        let mut cols: Vec<String> = Vec::new();
        for r in &self.records {
            if let Value::Object(m) = r {
                for k in m.keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
        }
        let cell = |v: Option<&Value>| match v {
            None | Some(Value::Null) => String::new(),
            Some(Value::String(s)) => s.replace(['\t', '\n'], " "),
            Some(other) => other.to_string(),
        };
        let mut out = cols.join("\t");
        out.push('\n');
        for r in &self.records {
            let row: Vec<String> = cols.iter().map(|c| cell(r.get(c))).collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Special pairs up to `max_rank` with their homogeneity verdicts.
pub fn cmd_classify(max_rank: usize) -> Result<ReportEnvelope> {
    let mut env = ReportEnvelope::new("classify", params(&[("max_rank", json!(max_rank))]));
    let mut by_case: BTreeMap<String, usize> = BTreeMap::new();
    let mut nonhomogeneous = Vec::new();
    for c in enumerate_special(max_rank)? {
        let v = homogeneity_verdict(&c.pair)?;
        let rs = RootSystem::simple(c.pair.gamma);
        let fmt = |w: &Option<crate::rootsys::Weight>| w.as_ref().map(|w| rs.format_weight(w));
        let model_dim = dim_homogeneous_model(c.case, c.m, c.i).ok();
        *by_case.entry(c.case.to_string()).or_default() += 1;
        if !v.homogeneous {
            nonhomogeneous.push(c.pair.to_string());
        }
        env.records.push(json!({
            "gamma": c.pair.gamma.to_string(),
            "alpha": c.pair.alpha,
            "beta": c.pair.beta,
            "case": c.case,
            "via_automorphism": c.via_automorphism,
            "special": v.special,
            "homogeneous": v.homogeneous,
            "pairing": v.pairing,
            "sections_Y": fmt(&v.sections_y),
            "sections_Z": fmt(&v.sections_z),
            "dim": v.dim_x1,
            "model": v.model,
            "model_dim": model_dim,
            "aut": v.aut.as_ref().map(|a| a.render(&rs)),
        }));
    }
    env.summary.insert("special_pairs".into(), json!(env.records.len()));
    env.summary.insert("by_case".into(), json!(by_case));
    env.summary.insert("nonhomogeneous".into(), json!(nonhomogeneous));
    env.summary.insert("verified_up_to_rank".into(), json!(max_rank));
    Ok(env)
}

/// Fiber cases, labeled triples with verdicts, and the four-case table.
pub fn cmd_two_orbits(max_rank: usize) -> Result<ReportEnvelope> {
    let mut env = ReportEnvelope::new("two-orbits", params(&[("max_rank", json!(max_rank))]));
    for f in fiber_case_table() {
        let mut v = serde_json::to_value(&f).expect("serializable");
        v["kind"] = json!("fiber_case");
        env.records.push(v);
    }
    let mut triples = enumerate_simple_triples(max_rank)?;
    triples.extend(enumerate_product_triples(max_rank)?);
    let mut by_label: BTreeMap<String, usize> = BTreeMap::new();
    let mut all_consistent = true;
    let mut nonhomogeneous = BTreeMap::new();
    let mut nonsmooth = BTreeMap::new();
    for l in &triples {
        let v = case_verdict(l)?;
        let consistent = dim_consistency(&v).ok();
        all_consistent &= consistent != Some(false);
        *by_label.entry(l.label.to_string()).or_default() += 1;
        match &v.outcome {
            Outcome::Nonhomogeneous { variety, .. } => {
                nonhomogeneous.insert(l.label.to_string(), json!(variety));
            }
            Outcome::Nonsmooth { witness } => {
                nonsmooth.insert(l.label.to_string(), json!(witness));
            }
            Outcome::Homogeneous { .. } => {}
        }
        env.records.push(json!({
            "kind": "triple",
            "label": l.label.to_string(),
            "G": l.triple.group_label(),
            "P": l.triple.p_label(),
            "Q": l.triple.q_label(),
            "via_automorphism": l.via_automorphism,
            "literal": l.literal.to_string(),
            "row": l.row.to_string(),
            "fiber_n": l.fiber_n,
            "outcome": v.outcome,
            "local_weight": v.local_weight,
            "allowed": v.allowed,
            "dims": v.dims,
            "dim_consistent": consistent,
            "row_scan": row_scan(&l.literal)?,
        }));
    }
    let four_case = four_case_table(max_rank);
    let four_case_ok = four_case.iter().all(|r| r.checks.iter().all(|c| c.holds()));
    for r in four_case {
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["kind"] = json!("four_case");
        env.records.push(v);
    }
    env.summary.insert("triples".into(), json!(triples.len()));
    env.summary.insert("by_label".into(), json!(by_label));
    env.summary.insert("nonhomogeneous".into(), json!(nonhomogeneous));
    env.summary.insert("nonsmooth".into(), json!(nonsmooth));
    env.summary.insert("dims_consistent".into(), json!(all_consistent));
    env.summary.insert("four_case_checks_hold".into(), json!(four_case_ok));
    env.summary.insert("verified_up_to_rank".into(), json!(max_rank));
    Ok(env)
}

/// Algebra checks, the tabulated `z`-table comparison and its repair.
pub fn cmd_octonion() -> Result<ReportEnvelope> {
    let mut env = ReportEnvelope::new(
        "octonion",
        params(&[("seed", json!(OCTONION_SEED)), ("random_pairs", json!(RANDOM_PAIRS))]),
    );
    let basis: Vec<Octonion<ExactScalar>> = (0..8).map(Octonion::basis).collect();
    let basis_ok = basis.iter().flat_map(|x| basis.iter().map(move |y| composition_holds(x, y))).filter(|&b| b).count();
    let mut rng = ChaCha8Rng::seed_from_u64(OCTONION_SEED);
    let mut random_ok = 0;
    let mut alternative_ok = 0;
    for _ in 0..RANDOM_PAIRS {
        let (x, y) = (random_exact(&mut rng), random_exact(&mut rng));
        random_ok += composition_holds(&x, &y) as usize;
        alternative_ok += alternative_holds(&x, &y) as usize;
    }
    let tabulated = verify_z_table(&tabulated_z_patterns());
    let (patterns, repairs) = repair_z_basis();
    let repaired = verify_z_table(&patterns);
    let g2 = g2_orbit_report(&patterns);
    let r = |x: i64| Rational::from_int(x);
    let e = |k: usize| -> Vec<Rational> { (0..4).map(|i| r((i == k) as i64)).collect() };
    let symplectic = symplectic_tensor_form(&e(0), &e(2))? == r(1) && symplectic_tensor_form(&e(0), &e(1))? == r(0);
    for entry in &tabulated.entries {
        let mut v = serde_json::to_value(entry).expect("serializable");
        v["kind"] = json!("z_entry");
        env.records.push(v);
    }
    let pairs = |v: &[(i8, i8)]| v.iter().map(|(a, b)| format!("z{a}·z{b}")).collect::<Vec<_>>();
    let s = &mut env.summary;
    s.insert("composition_basis".into(), json!(format!("{basis_ok}/64")));
    s.insert("composition_random".into(), json!(format!("{random_ok}/{RANDOM_PAIRS}")));
    s.insert("alternative_random".into(), json!(format!("{alternative_ok}/{RANDOM_PAIRS}")));
    s.insert("wedge_kernel_dim".into(), json!(wedge_kernel_dim::<Rational>()));
    s.insert("derivation_dim".into(), json!(derivation_algebra::<Rational>().len()));
    s.insert("tabulated_basis".into(), json!(tabulated.basis));
    s.insert("tabulated_is_basis".into(), json!(tabulated.is_basis));
    s.insert("tabulated_mismatches".into(), json!(pairs(&tabulated.mismatches)));
    s.insert("tabulated_antisymmetry_violations".into(), json!(pairs(&tabulated.antisymmetry_violations)));
    s.insert("repairs".into(), json!(repairs));
    s.insert("repaired_mismatches".into(), json!(pairs(&repaired.mismatches)));
    s.insert("repaired_antisymmetry_violations".into(), json!(pairs(&repaired.antisymmetry_violations)));
    s.insert("g2".into(), serde_json::to_value(&g2).expect("serializable"));
    s.insert("symplectic_tensor_form".into(), json!(symplectic));
    Ok(env)
}

/// The four complete colored fans of rank one with their Picard numbers.
pub fn cmd_fans() -> Result<ReportEnvelope> {
    let mut env = ReportEnvelope::new("fans", BTreeMap::new());
    for f in enumerate_rank1_embeddings() {
        let attached: Vec<&str> = f.colors().iter().filter(|c| c.attached).map(|c| c.name.as_str()).collect();
        env.records.push(json!({
            "rays": f.rays(),
            "attached": attached,
            "picard_number": f.picard_number(f.colors().len())?,
        }));
    }
    Ok(env)
}

/// Cartan matrix and root data of one simple type.
pub fn cmd_diagram(t: SimpleType) -> Result<ReportEnvelope> {
    let mut env = ReportEnvelope::new("diagram", params(&[("type", json!(t.to_string()))]));
    let rs = RootSystem::simple(t);
    let all: Vec<usize> = (0..t.rank()).collect();
    let w0 = rs.longest_element_word(&all)?;
    for (i, row) in rs.cartan().rows().into_iter().enumerate() {
        env.records.push(json!({ "vertex": i + 1, "cartan_row": row }));
    }
    env.summary.insert("positive_roots".into(), json!(rs.positive_roots().len()));
    env.summary.insert("longest_element_length".into(), json!(w0.len()));
    env.summary.insert("dimension".into(), json!(t.rank() + 2 * rs.positive_roots().len()));
    Ok(env)
}
