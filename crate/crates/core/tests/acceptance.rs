//! One PASS/FAIL line per acceptance criterion. Expected lists are transcribed
//! by hand below and never derived from the library.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use horo_core::dynkin::Diagram;
use horo_core::horoclass::{dim_homogeneous_model, dim_x1, enumerate_special};
use horo_core::horofan::enumerate_rank1_embeddings;
use horo_core::octonion::{
    composition_holds, random_exact, tabulated_z_patterns, verify_z_table, wedge_kernel_dim, Octonion,
};
use horo_core::report::{cmd_classify, cmd_octonion, OCTONION_SEED, RANDOM_PAIRS};
use horo_core::rootsys::{CoweightVec, Family};
use horo_core::twoorbits::{
    allowed_local_model, case_verdict, dim_consistency, enumerate_product_triples, enumerate_simple_triples,
    representative, witness_weight, Label, Outcome,
};
use horo_core::{ExactScalar, Rational, RootSystem, SimpleType, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = std::result::Result<String, String>;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn ty(s: &str) -> SimpleType {
    s.parse().expect("valid type")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set_diff<T: Ord + Clone + std::fmt::Debug>(want: &BTreeSet<T>, got: &BTreeSet<T>) -> Result<(), String> {
    let missing: Vec<_> = want.difference(got).cloned().collect();
    let extra: Vec<_> = got.difference(want).cloned().collect();
    ensure(missing.is_empty() && extra.is_empty(), || format!("missing {missing:?}, extra {extra:?}"))
}

// (type, smaller index, larger index, case, only via a diagram automorphism)
type PairKey = (String, usize, usize, u8, bool);

fn special_oracle(max_rank: usize) -> BTreeSet<PairKey> {
    let mut s = BTreeSet::new();
    let mut add = |t: String, a: usize, b: usize, case: u8, aut: bool| {
        s.insert((t, a.min(b), a.max(b), case, aut));
    };
    for m in 1..=max_rank {
        if m >= 2 {
            add(format!("A{m}"), 1, m, 1, false);
        }
        if m >= 3 {
            for i in 1..m {
                add(format!("A{m}"), i, i + 1, 2, false);
            }
            add(format!("B{m}"), m - 1, m, 3, false);
        }
        if m >= 2 {
            for i in 1..m {
                add(format!("C{m}"), i + 1, i, 5, false);
            }
        }
        if m >= 4 {
            add(format!("D{m}"), m - 1, m, 6, false);
        }
    }
    if max_rank >= 3 {
        add("B3".into(), 1, 3, 4, false);
    }
    if max_rank >= 4 {
        add("D4".into(), 1, 3, 6, true);
        add("D4".into(), 1, 4, 6, true);
        add("F4".into(), 2, 3, 7, false);
    }
    if max_rank >= 2 {
        add("G2".into(), 2, 1, 8, false);
    }
    s
}

fn record_key(r: &Value) -> PairKey {
    let a = r["alpha"].as_u64().unwrap() as usize;
    let b = r["beta"].as_u64().unwrap() as usize;
    (
        r["gamma"].as_str().unwrap().to_string(),
        a.min(b),
        a.max(b),
        r["case"].as_u64().unwrap() as u8,
        r["via_automorphism"].as_bool().unwrap(),
    )
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let env = cmd_classify(9).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let got: BTreeSet<PairKey> = env.records.iter().map(record_key).collect();
    ensure(got.len() == env.records.len(), || "duplicate records".into())?;
    set_diff(&special_oracle(9), &got)?;
    let golden: Value = serde_json::from_str(
        &fs::read_to_string(fixtures().join("classify.json")).map_err(|e| format!("classify fixture: {e}"))?,
    )
    .map_err(|e| e.to_string())?;
    let golden_low: Vec<&Value> = golden["records"]
        .as_array()
        .ok_or("fixture has no records")?
        .iter()
        .filter(|r| ty(r["gamma"].as_str().unwrap()).rank() <= 9)
        .collect();
    ensure(golden_low.len() == env.records.len() && golden_low.iter().zip(&env.records).all(|(g, r)| *g == r), || {
        "records differ from the golden fixture at rank <= 9".into()
    })?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{} special pairs at rank <= 9 in {:.2?}", got.len(), elapsed))
}

fn criterion_2() -> Check {
    let env = cmd_classify(9).map_err(|e| e.to_string())?;
    let mut got = BTreeMap::new();
    for r in env.records.iter().filter(|r| r["homogeneous"] == Value::Bool(false)) {
        let k = record_key(r);
        got.insert((k.0, k.1, k.2, k.3), r["pairing"].as_i64());
    }
    let mut want = BTreeMap::new();
    for m in 3..=9 {
        want.insert((format!("B{m}"), m - 1, m, 3), Some(1));
    }
    want.insert(("B3".into(), 1, 3, 4), Some(1));
    for m in 2..=9 {
        for i in 1..m {
            want.insert((format!("C{m}"), i, i + 1, 5), Some(1));
        }
    }
    want.insert(("F4".into(), 2, 3, 7), Some(1));
    want.insert(("G2".into(), 1, 2, 8), Some(2));
    ensure(got == want, || format!("non-homogeneous list differs: {got:?}"))?;
    let families: BTreeSet<u8> = got.keys().map(|k| k.3).collect();
    ensure(families == BTreeSet::from([3, 4, 5, 7, 8]), || format!("families {families:?}"))?;
    Ok(format!("{} non-homogeneous pairs in cases 3,4,5,7,8 with pairings 1,1,1,1,2", got.len()))
}

fn criterion_3() -> Check {
    let env = cmd_classify(12).map_err(|e| e.to_string())?;
    let mut n = 0;
    for r in &env.records {
        let case = r["case"].as_u64().unwrap();
        let gamma = r["gamma"].as_str().unwrap();
        let want_y = match case {
            3 => format!("ω_{}", ty(gamma).rank()),
            4 => "ω_3".into(),
            5 | 8 => "ω_1".into(),
            7 => "ω_4".into(),
            _ => continue,
        };
        n += 1;
        ensure(r["sections_Y"].as_str() == Some(want_y.as_str()), || {
            format!("{gamma} case {case}: Y gives {}", r["sections_Y"])
        })?;
        ensure(r["sections_Z"].is_null(), || format!("{gamma} case {case}: Z gives {}", r["sections_Z"]))?;
    }
    Ok(format!("{n} non-homogeneous pairs: Y sections as listed, Z sections zero"))
}

/// Coroot image of `α̌_m` under the longest element fixing the other vertices,
/// found by reflecting until the coweight is dominant on those vertices.
fn bm_coroot_image(m: usize) -> Vec<i64> {
    // B_m Cartan matrix written out by hand, a_ij = <α_i, α̌_j>.
    let mut a = vec![vec![0i64; m]; m];
    for i in 0..m {
        a[i][i] = 2;
        if i + 1 < m {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a[m - 2][m - 1] = -2;
    let mut c = vec![0i64; m];
    c[m - 1] = 1;
    loop {
        let pair = |i: usize, c: &[i64]| (0..m).map(|j| a[i][j] * c[j]).sum::<i64>();
        match (0..m - 1).find(|&i| pair(i, &c) < 0) {
            Some(i) => c[i] -= pair(i, &c),
            None => return c,
        }
    }
}

fn criterion_4() -> Check {
    for m in 3..=12 {
        let rs = RootSystem::simple(ty(&format!("B{m}")));
        let word = rs.longest_element_word(&rs.complement(&[m - 1])).map_err(|e| e.to_string())?;
        let image = rs.act_on_coweight(&word, &rs.simple_coroot(m - 1)).map_err(|e| e.to_string())?;
        let mut want = vec![2i64; m];
        want[m - 1] = 1;
        ensure(image == CoweightVec(want.clone()), || format!("B{m}: {:?}", image.coords()))?;
        ensure(bm_coroot_image(m) == want, || format!("B{m}: oracle disagrees"))?;
    }
    Ok("B3..B12 give 2(α̌_1+...+α̌_{m-1})+α̌_m".into())
}

fn criterion_5() -> Check {
    let mut n = 0;
    for c in enumerate_special(12).map_err(|e| e.to_string())? {
        if ![1, 2, 5, 6].contains(&c.case) {
            continue;
        }
        let model = dim_homogeneous_model(c.case, c.m, c.i).map_err(|e| e.to_string())?;
        let x1 = dim_x1(&c.pair);
        ensure(x1 == model, || format!("{}: dim X1 {x1} vs model {model}", c.pair))?;
        n += 1;
    }
    let flag = |t: &str, k: usize| {
        let rs = RootSystem::simple(ty(t));
        rs.dim_flag_variety(&rs.complement(&[k - 1])).unwrap()
    };
    ensure(flag("F4", 1) == 15, || format!("F4/P(ω_1) = {}", flag("F4", 1)))?;
    ensure(flag("E6", 2) == 21, || format!("E6/P(ω_2) = {}", flag("E6", 2)))?;
    Ok(format!("{n} pairs in cases 1,2,5,6 match their models; F4/P(ω_1)=15, E6/P(ω_2)=21"))
}

fn simple_lit(g: &str, p: usize, q: &[usize]) -> String {
    let mut q = q.to_vec();
    q.sort_unstable();
    let q: Vec<String> = q.iter().map(|k| format!("P(ω_{k})")).collect();
    format!("({g}, P(ω_{p}), {})", q.join("∩"))
}

fn product_lit(g: &str, p: usize, q: usize) -> String {
    format!("({g}×A1, P(ω_{p})×A1, P(ω_{q})×P(ω_1))")
}

fn triple_oracle(max_rank: usize) -> BTreeSet<(String, String)> {
    let mut s = BTreeSet::new();
    let mut add = |l: &str, lit: String| {
        s.insert((format!("({l})"), lit));
    };
    add("a", simple_lit("A4", 1, &[3]));
    for n in 3..=max_rank {
        for i in 1..=n - 2 {
            add("b", simple_lit(&format!("B{n}"), i, &[i + 1]));
        }
        if n >= 4 {
            for i in 1..=n - 3 {
                add("b", simple_lit(&format!("D{n}"), i, &[i + 1]));
            }
            add("b", simple_lit(&format!("D{n}"), n - 2, &[n - 1, n]));
        }
        add("f", simple_lit(&format!("C{n}"), 1, &[3]));
    }
    // D3 is A3 with its middle vertex first.
    add("b", simple_lit("A3", 2, &[1, 3]));
    add("c", simple_lit("B4", 4, &[2]));
    add("d", simple_lit("B4", 1, &[4]));
    add("e", simple_lit("B3", 2, &[1, 3]));
    add("g", simple_lit("C3", 2, &[1, 3]));
    add("h", simple_lit("F4", 1, &[3]));
    add("i", simple_lit("F4", 4, &[1]));
    add("j", simple_lit("F4", 4, &[3]));
    for n in 2..=max_rank {
        add("a'", product_lit(&format!("A{n}"), 2, 1));
        if n >= 3 {
            add("b'", product_lit(&format!("B{n}"), n - 1, n));
        }
        add("c'", product_lit(&format!("C{n}"), n - 1, n));
        add("d'", product_lit(&format!("C{n}"), 2, 1));
    }
    add("e'", product_lit("G2", 1, 2));
    add("f'", product_lit("G2", 2, 1));
    s
}

/// Images of a literal triple under the diagram automorphisms of its first factor.
fn automorphic_images(g: SimpleType, p: usize, q: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let n = g.rank();
    let mut maps: Vec<Vec<usize>> = vec![(0..=n).collect()];
    match g.family() {
        Family::A => maps.push((0..=n).map(|k| if k == 0 { 0 } else { n + 1 - k }).collect()),
        Family::D if n == 4 => {
            for perm in [[1, 4, 3], [3, 1, 4], [3, 4, 1], [4, 1, 3], [4, 3, 1]] {
                let mut m = vec![0, 0, 2, 0, 0];
                m[1] = perm[0];
                m[3] = perm[1];
                m[4] = perm[2];
                maps.push(m);
            }
        }
        Family::D => {
            let mut m: Vec<usize> = (0..=n).collect();
            m.swap(n - 1, n);
            maps.push(m);
        }
        Family::E if n == 6 => maps.push(vec![0, 6, 2, 5, 4, 3, 1]),
        _ => {}
    }
    maps.into_iter().map(|m| (m[p], q.iter().map(|&k| m[k]).collect())).collect()
}

fn parse_literal(lit: &str) -> (String, usize, Vec<usize>, bool) {
    let inner = lit.trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(", ").collect();
    let product = parts[0].contains('×');
    let g = parts[0].split('×').next().unwrap().to_string();
    let idx = |s: &str| -> Vec<usize> {
        s.split("P(ω_").skip(1).map(|t| t.split(')').next().unwrap().parse().unwrap()).collect()
    };
    let p = idx(parts[1])[0];
    let mut q = idx(parts[2]);
    if product {
        q.pop();
    }
    (g, p, q, product)
}

fn criterion_6() -> Check {
    let mut triples = enumerate_simple_triples(12).map_err(|e| e.to_string())?;
    triples.extend(enumerate_product_triples(12).map_err(|e| e.to_string())?);
    let got: BTreeSet<(String, String)> =
        triples.iter().map(|l| (l.label.to_string(), l.literal.to_string())).collect();
    set_diff(&triple_oracle(12), &got)?;
    for l in &triples {
        let shown = l.triple.to_string();
        let lit = l.literal.to_string();
        if !l.via_automorphism {
            ensure(shown == lit, || format!("{shown} differs from its literal {lit}"))?;
            continue;
        }
        let (g, p, q, product) = parse_literal(&lit);
        let images: Vec<String> = automorphic_images(ty(&g), p, &q)
            .into_iter()
            .map(|(p, q)| if product { product_lit(&g, p, q[0]) } else { simple_lit(&g, p, &q) })
            .collect();
        ensure(images.contains(&shown), || format!("{shown} is not an automorphic image of {lit}"))?;
    }
    let nonsmooth = [Label::E, Label::G, Label::J, Label::EPrime];
    let nonhomogeneous = [Label::H, Label::FPrime];
    for l in &triples {
        let v = case_verdict(l).map_err(|e| e.to_string())?;
        let kind_ok = match &v.outcome {
            Outcome::Nonsmooth { .. } => nonsmooth.contains(&l.label),
            Outcome::Nonhomogeneous { .. } => nonhomogeneous.contains(&l.label),
            Outcome::Homogeneous { .. } => {
                !nonsmooth.contains(&l.label) && !nonhomogeneous.contains(&l.label) && dim_consistency(&v) == Ok(true)
            }
        };
        ensure(kind_ok, || format!("{} {}: outcome {:?}", l.label, l.triple, v.outcome))?;
    }
    for (label, want) in nonsmooth.iter().map(|&l| (l, false)).chain(nonhomogeneous.iter().map(|&l| (l, true))) {
        let rep = representative(label).map_err(|e| e.to_string())?;
        let rs = rep.literal.root_system();
        let levi = Diagram::of_root_system(&rs).full_subdiagram(&rep.literal.q_levi()).map_err(|e| e.to_string())?;
        let w = witness_weight(label).ok_or_else(|| format!("{label} has no witness"))?;
        let allowed = allowed_local_model(&levi, &w).map_err(|e| e.to_string())?;
        ensure(allowed == want, || format!("{label}: witness {} allowed = {allowed}", rs.format_weight(&w)))?;
    }
    let h = representative(Label::H).map_err(|e| e.to_string())?.literal.root_system();
    ensure(h.format_weight(&witness_weight(Label::H).unwrap()) == "ω_1-ω_3", || "(h) witness".into())?;
    Ok(format!(
        "{} triples, {} distinct list entries; verdict trichotomy and witnesses as expected",
        triples.len(),
        got.len()
    ))
}

fn criterion_7() -> Check {
    let basis: Vec<Octonion<ExactScalar>> = (0..8).map(Octonion::basis).collect();
    let basis_ok = basis.iter().flat_map(|x| basis.iter().map(move |y| composition_holds(x, y))).filter(|&b| b).count();
    ensure(basis_ok == 64, || format!("{basis_ok}/64 basis products"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(OCTONION_SEED);
    let random_ok =
        (0..RANDOM_PAIRS).filter(|_| composition_holds(&random_exact(&mut rng), &random_exact(&mut rng))).count();
    ensure(random_ok == RANDOM_PAIRS, || format!("{random_ok}/{RANDOM_PAIRS} random pairs"))?;
    let kernel = wedge_kernel_dim::<Rational>();
    ensure(kernel == 14, || format!("kernel dimension {kernel}"))?;
    let first = verify_z_table(&tabulated_z_patterns());
    let second = verify_z_table(&tabulated_z_patterns());
    ensure(first.mismatches == second.mismatches, || "mismatch set changed between runs".into())?;
    let env = cmd_octonion().map_err(|e| e.to_string())?;
    let golden: Value = serde_json::from_str(
        &fs::read_to_string(fixtures().join("octonion.json")).map_err(|e| format!("octonion fixture: {e}"))?,
    )
    .map_err(|e| e.to_string())?;
    ensure(golden["summary"]["tabulated_mismatches"] == env.summary["tabulated_mismatches"], || {
        "mismatch set differs from the golden fixture".into()
    })?;
    Ok(format!(
        "64/64 basis, {random_ok}/{RANDOM_PAIRS} random, kernel 14, {} stable z-table mismatches",
        first.mismatches.len()
    ))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut types = 0;
    for t in SimpleType::all_up_to(8) {
        let rs = RootSystem::simple(t);
        let n = t.rank();
        let all: Vec<usize> = (0..n).collect();
        let w0 = rs.longest_element_word(&all).map_err(|e| e.to_string())?;
        ensure(w0.len() == rs.positive_roots().len(), || format!("{t}: longest length {}", w0.len()))?;
        let mut weights: Vec<Weight> = (0..n).map(|i| rs.fundamental_weight(i)).collect();
        weights.extend((0..16).map(|_| Weight((0..n).map(|_| rng.gen_range(-4..=4)).collect())));
        for w in &weights {
            for i in 0..n {
                let back = rs.reflect(i, &rs.reflect(i, w).unwrap()).unwrap();
                ensure(&back == w, || format!("{t}: s_{} not an involution on {w:?}", i + 1))?;
            }
            let (d, word) = rs.dominant_representative(w).unwrap();
            ensure(d.is_dominant() && rs.act_on_weight(&word, w).unwrap() == d, || {
                format!("{t}: bad representative of {w:?}")
            })?;
            let (dd, empty) = rs.dominant_representative(&d).unwrap();
            ensure(dd == d && empty.is_empty(), || format!("{t}: representative not idempotent on {d:?}"))?;
        }
        types += 1;
    }
    for f in enumerate_rank1_embeddings() {
        let rho = f.picard_number(f.colors().len()).map_err(|e| e.to_string())?;
        let both = f.attached_count() == 2;
        ensure((rho == 1) == both, || format!("fan {:?}: Picard number {rho}", f.colors()))?;
    }
    Ok(format!("root-system invariants on {types} types of rank <= 8; Picard one iff both colors attached"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("special pairs at rank <= 9", criterion_1),
        ("non-homogeneous list and pairings", criterion_2),
        ("normal-bundle section modules", criterion_3),
        ("coroot image in B_m", criterion_4),
        ("dimension identities", criterion_5),
        ("two-orbit lists and verdicts", criterion_6),
        ("octonion properties", criterion_7),
        ("property suite", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
