//! Triples `(G, P, Q)` with a two-orbit fibration `G/H -> G/P`, their
//! fiber cases, local weights and verdicts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dynkin::{is_smooth_end, positions, Diagram, LabelingRule};
use crate::error::{Error, Result};
use crate::horoclass::diagram_automorphisms;
use crate::linalg::solve;
use crate::octonion::{g2_orbit_report, repair_z_basis};
use crate::rootsys::{Family, RootSystem, SimpleType, Weight};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FiberRow {
    #[serde(rename = "1a")]
    R1a,
    #[serde(rename = "1b")]
    R1b,
    #[serde(rename = "2")]
    R2,
    #[serde(rename = "3a")]
    R3a,
    #[serde(rename = "3b")]
    R3b,
}

impl FiberRow {
    pub const ALL: [FiberRow; 5] = [FiberRow::R1a, FiberRow::R1b, FiberRow::R2, FiberRow::R3a, FiberRow::R3b];

    /// 1, 2 or 3.
    pub fn kind(self) -> u8 {
        match self {
            FiberRow::R1a | FiberRow::R1b => 1,
            FiberRow::R2 => 2,
            FiberRow::R3a | FiberRow::R3b => 3,
        }
    }

    /// Coefficient of the local weight on the fiber's distinguished vertex.
    pub fn weight_coefficient(self) -> i64 {
        match self {
            FiberRow::R1b | FiberRow::R3b => -2,
            _ => -1,
        }
    }

    /// Rows of the same kind.
    pub fn variants(kind: u8) -> &'static [FiberRow] {
        match kind {
            1 => &[FiberRow::R1a, FiberRow::R1b],
            2 => &[FiberRow::R2],
            _ => &[FiberRow::R3a, FiberRow::R3b],
        }
    }

    /// Dimension of the fiber model `X'` for parameter `n` (ignored for rows 3a, 3b).
    pub fn fiber_dim(self, n: usize) -> usize {
        match self.kind() {
            1 => n - 1,
            2 => 4 * n - 4,
            _ => 7,
        }
    }
}

impl fmt::Display for FiberRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FiberRow::R1a => "1a",
            FiberRow::R1b => "1b",
            FiberRow::R2 => "2",
            FiberRow::R3a => "3a",
            FiberRow::R3b => "3b",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCase {
    pub row: FiberRow,
    pub g_prime: String,
    pub h_prime: String,
    pub x_prime: String,
    pub q_prime: String,
    /// Local weight in the fiber group's fundamental weights.
    pub local_weight: String,
    /// Local weight when `n = 4`, where `SO(4)` has two simple factors.
    pub local_weight_n4: Option<String>,
}

pub fn fiber_case_table() -> Vec<FiberCase> {
    let row = |row, g: &str, h: &str, x: &str, q: &str, w: &str, w4: Option<&str>| FiberCase {
        row,
        g_prime: g.into(),
        h_prime: h.into(),
        x_prime: x.into(),
        q_prime: q.into(),
        local_weight: w.into(),
        local_weight_n4: w4.map(Into::into),
    };
    vec![
        row(FiberRow::R1a, "SO(n), n≥4", "SO(n-1)", "Q^{n-1}", "P(ω_α1), B if n=4", "-ω_1", Some("-ω_1-ω_1")),
        row(
            FiberRow::R1b,
            "SO(n)/C'",
            "S(O(1)×O(n-1))/C'",
            "P^{n-1}",
            "P(ω_α1), B if n=4",
            "-2ω_1",
            Some("-2ω_1-2ω_1"),
        ),
        row(FiberRow::R2, "Sp(2n)/C', n≥2", "(Sp(2n-2)×Sp(2))/C'", "Gr(2,2n)", "P(ω_α2)", "-ω_2", None),
        row(FiberRow::R3a, "Spin(7)", "G_2", "Q^7", "P(ω_α3)", "-ω_3", None),
        row(FiberRow::R3b, "SO(7)", "G_2", "P^7", "P(ω_α3)", "-2ω_3", None),
    ]
}

/// A position of `Levi(P)` admitting a fiber case: the row kind, the fiber
/// parameter `n` (none for kind 3) and the vertices carrying the local weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberShape {
    pub kind: u8,
    pub n: Option<usize>,
    pub vertices: Vec<usize>,
}

/// Fiber shapes of `j` inside the Levi diagram `levi` (component of `j`).
pub fn fiber_shapes(levi: &Diagram, j: usize, rule: LabelingRule) -> Result<Vec<FiberShape>> {
    let k = levi.component_of(j)?.len();
    let at = |family, pos| -> Result<bool> { Ok(positions(levi, j, family, rule)?.contains(&pos)) };
    let mut out = Vec::new();
    let one = |kind, n| FiberShape { kind, n, vertices: vec![j] };
    if k >= 2 && at(Family::B, 1)? {
        out.push(one(1, Some(2 * k + 1)));
    }
    if k >= 3 && at(Family::D, 1)? {
        out.push(one(1, Some(2 * k)));
    }
    if k >= 2 && at(Family::C, 2)? {
        out.push(one(2, Some(k)));
    }
    if k == 3 && at(Family::B, 3)? {
        out.push(one(3, None));
    }
    Ok(out)
}

fn simple_diagram(t: SimpleType) -> Diagram {
    Diagram::bourbaki(t)
}

fn check_vertex(t: SimpleType, v: usize) -> Result<()> {
    if v == 0 || v > t.rank() {
        Err(Error::IndexOutOfRange { index: v, rank: t.rank() })
    } else {
        Ok(())
    }
}

/// The diagram filter on a maximal pair `P(ω_i)`, `Q = P(ω_j)` (1-based):
/// `j` sits in a fiber-case position of its component of `S \ {i}`, and `i`
/// is an end of an A-component or the first vertex of a C-component of `S \ {j}`.
pub fn fiber_smoothness_filter(gamma: SimpleType, i: usize, j: usize) -> Result<bool> {
    fiber_smoothness_filter_with(gamma, i, j, LabelingRule::Induced)
}

/// As [`fiber_smoothness_filter`] with an explicit labeling rule for reading positions.
/// With [`LabelingRule::Any`], `D5` with `i = 1`, `j = 4` or `5` also passes.
pub fn fiber_smoothness_filter_with(gamma: SimpleType, i: usize, j: usize, rule: LabelingRule) -> Result<bool> {
    check_vertex(gamma, i)?;
    check_vertex(gamma, j)?;
    if i == j {
        return Ok(false);
    }
    let d = simple_diagram(gamma);
    let without_i = d.full_subdiagram(&complement(&d, &[i - 1]))?;
    if fiber_shapes(&without_i, j - 1, rule)?.is_empty() {
        return Ok(false);
    }
    let without_j = d.full_subdiagram(&complement(&d, &[j - 1]))?;
    is_smooth_end(&without_j, i - 1)
}

fn complement(d: &Diagram, omit: &[usize]) -> Vec<usize> {
    d.vertices().iter().copied().filter(|v| !omit.contains(v)).collect()
}

/// `(G, P, Q)`: `G` a product of simple types, `P` and `Q` given by omitted
/// vertices (global 0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CandidateTriple {
    pub g: Vec<SimpleType>,
    pub p_omit: usize,
    pub q_omit: Vec<usize>,
}

impl CandidateTriple {
    pub fn new(g: Vec<SimpleType>, p_omit: usize, mut q_omit: Vec<usize>) -> Result<Self> {
        let rank: usize = g.iter().map(|t| t.rank()).sum();
        q_omit.sort_unstable();
        q_omit.dedup();
        for &v in q_omit.iter().chain([&p_omit]) {
            if v >= rank {
                return Err(Error::IndexOutOfRange { index: v, rank });
            }
        }
        if q_omit.is_empty() || q_omit.len() > 2 || q_omit.contains(&p_omit) {
            return Err(Error::InvalidDiagram("Q must omit one or two vertices other than P's".into()));
        }
        Ok(CandidateTriple { g, p_omit, q_omit })
    }

    pub fn root_system(&self) -> RootSystem {
        RootSystem::new(self.g.clone()).expect("nonempty")
    }

    pub fn p_levi(&self) -> Vec<usize> {
        self.root_system().complement(&[self.p_omit])
    }

    pub fn q_levi(&self) -> Vec<usize> {
        self.root_system().complement(&self.q_omit)
    }

    pub fn group_label(&self) -> String {
        self.g.iter().map(ToString::to_string).collect::<Vec<_>>().join("×")
    }

    fn parabolic_label(&self, omit: &[usize]) -> String {
        let rs = self.root_system();
        let mut parts = Vec::new();
        for (f, t) in self.g.iter().enumerate() {
            let local: Vec<usize> =
                omit.iter().filter_map(|&v| rs.vertex_ref(v).ok().filter(|r| r.0 == f).map(|r| r.1)).collect();
            if local.is_empty() {
                parts.push(t.to_string());
            } else {
                parts.push(local.iter().map(|k| format!("P(ω_{k})")).collect::<Vec<_>>().join("∩"));
            }
        }
        parts.join("×")
    }

    pub fn p_label(&self) -> String {
        self.parabolic_label(&[self.p_omit])
    }

    pub fn q_label(&self) -> String {
        self.parabolic_label(&self.q_omit)
    }
}

impl fmt::Display for CandidateTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.group_label(), self.p_label(), self.q_label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    APrime,
    BPrime,
    CPrime,
    DPrime,
    EPrime,
    FPrime,
}

impl Label {
    pub const ALL: [Label; 16] = [
        Label::A,
        Label::B,
        Label::C,
        Label::D,
        Label::E,
        Label::F,
        Label::G,
        Label::H,
        Label::I,
        Label::J,
        Label::APrime,
        Label::BPrime,
        Label::CPrime,
        Label::DPrime,
        Label::EPrime,
        Label::FPrime,
    ];

    pub fn is_product(self) -> bool {
        self >= Label::APrime
    }

    fn letter(self) -> &'static str {
        ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "a'", "b'", "c'", "d'", "e'", "f'"][self as usize]
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letter())
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let core = s.trim().trim_start_matches('(').trim_end_matches(')');
        Label::ALL.into_iter().find(|l| l.letter() == core).ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Literal match data: label, the fiber row the case uses, and its parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct LiteralMatch {
    label: Label,
    row: FiberRow,
    n: Option<usize>,
}

fn lit(label: Label, row: FiberRow, n: Option<usize>) -> Option<LiteralMatch> {
    Some(LiteralMatch { label, row, n })
}

fn literal_simple(t: SimpleType, i: usize, q: &[usize]) -> Option<LiteralMatch> {
    use FiberRow::*;
    use Label::*;
    let m = t.rank();
    match (t.family(), q) {
        (Family::A, [3]) if m == 4 && i == 1 => lit(A, R1b, Some(6)),
        (Family::A, [1, 3]) if m == 3 && i == 2 => lit(B, R1a, Some(4)),
        (Family::B, [j]) if m >= 3 && i + 2 <= m && *j == i + 1 => lit(B, R1a, Some(2 * (m - i) + 1)),
        (Family::D, [j]) if m >= 4 && i + 3 <= m && *j == i + 1 => lit(B, R1a, Some(2 * (m - i))),
        (Family::D, [a, b]) if m >= 4 && i == m - 2 && *a == m - 1 && *b == m => lit(B, R1a, Some(4)),
        (Family::B, [2]) if m == 4 && i == 4 => lit(C, R1a, Some(6)),
        (Family::B, [4]) if m == 4 && i == 1 => lit(D, R3b, None),
        (Family::B, [1, 3]) if m == 3 && i == 2 => lit(E, R1b, Some(4)),
        (Family::C, [3]) if m >= 3 && i == 1 => lit(F, R2, Some(m - 1)),
        (Family::C, [1, 3]) if m == 3 && i == 2 => lit(G, R1b, Some(4)),
        (Family::F, [3]) if i == 1 => lit(H, R2, Some(3)),
        (Family::F, [1]) if i == 4 => lit(I, R1a, Some(7)),
        (Family::F, [3]) if i == 4 => lit(J, R3b, None),
        _ => None,
    }
}

/// `T × A1` with `P = P(ω_i) × A1`, `Q = P(ω_j) × P(ω_1)`.
fn literal_product(t: SimpleType, i: usize, j: usize) -> Option<LiteralMatch> {
    use FiberRow::*;
    use Label::*;
    let m = t.rank();
    let n4 = Some(4);
    match t.family() {
        Family::A if m >= 2 && i == 2 && j == 1 => lit(APrime, R1b, n4),
        Family::B if m >= 2 && i == m - 1 && j == m => lit(BPrime, R1b, n4),
        Family::C if m >= 2 && i == m - 1 && j == m => lit(CPrime, R1a, n4),
        Family::C if m >= 2 && i == 2 && j == 1 => lit(DPrime, R1b, n4),
        Family::G if i == 1 && j == 2 => lit(EPrime, R1b, n4),
        Family::G if i == 2 && j == 1 => lit(FPrime, R1b, n4),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledTriple {
    pub label: Label,
    /// The triple as enumerated.
    pub triple: CandidateTriple,
    /// The same triple moved by a diagram automorphism to the list's form.
    pub literal: CandidateTriple,
    pub via_automorphism: bool,
    /// Fiber row the case uses.
    pub row: FiberRow,
    /// Fiber parameter `n` (none for rows 3a, 3b).
    pub fiber_n: Option<usize>,
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Matches a simple-group triple (1-based `i`, `q`) against the list,
/// directly or after a diagram automorphism.
pub fn label_simple(t: SimpleType, i: usize, q: &[usize]) -> Result<LabeledTriple> {
    let q = sorted(q.to_vec());
    let found = CandidateTriple::new(vec![t], i - 1, q.iter().map(|v| v - 1).collect())?;
    let mut tries: Vec<(Vec<usize>, bool)> = vec![((0..=t.rank()).collect(), false)];
    tries.extend(diagram_automorphisms(t).into_iter().map(|s| (s, true)));
    for (sigma, via) in tries {
        let (si, sq) = (sigma[i], sorted(q.iter().map(|&v| sigma[v]).collect()));
        if let Some(m) = literal_simple(t, si, &sq) {
            return Ok(LabeledTriple {
                label: m.label,
                literal: CandidateTriple::new(vec![t], si - 1, sq.iter().map(|v| v - 1).collect())?,
                triple: found,
                via_automorphism: via && (si != i || sq != q),
                row: m.row,
                fiber_n: m.n,
            });
        }
    }
    Err(Error::ClassificationGap(format!("{found} is not in the list of triples")))
}

/// Matches `(T × A1, P(ω_i) × A1, P(ω_j) × P(ω_1))` against the list.
pub fn label_product(t: SimpleType, i: usize, j: usize) -> Result<LabeledTriple> {
    let g = vec![t, SimpleType::new(Family::A, 1)?];
    let z = t.rank();
    let found = CandidateTriple::new(g.clone(), i - 1, vec![j - 1, z])?;
    let mut tries: Vec<(Vec<usize>, bool)> = vec![((0..=t.rank()).collect(), false)];
    tries.extend(diagram_automorphisms(t).into_iter().map(|s| (s, true)));
    for (sigma, via) in tries {
        let (si, sj) = (sigma[i], sigma[j]);
        if let Some(m) = literal_product(t, si, sj) {
            return Ok(LabeledTriple {
                label: m.label,
                literal: CandidateTriple::new(g, si - 1, vec![sj - 1, z])?,
                triple: found,
                via_automorphism: via && (si, sj) != (i, j),
                row: m.row,
                fiber_n: m.n,
            });
        }
    }
    Err(Error::ClassificationGap(format!("{found} is not in the list of triples")))
}

fn sort_labeled(v: &mut [LabeledTriple]) {
    v.sort_by(|a, b| (a.label, &a.triple).cmp(&(b.label, &b.triple)));
}

/// Triples with `G` simple: maximal `Q` through [`fiber_smoothness_filter`], and
/// `Q` omitting two vertices `j1`, `j2` that are isolated in `S \ {i}` with `i`
/// an end of an A-component or first vertex of a C-component of `S \ {j1, j2}`.
pub fn enumerate_simple_triples(max_rank: usize) -> Result<Vec<LabeledTriple>> {
    let mut out = Vec::new();
    for t in SimpleType::irredundant_up_to(max_rank) {
        out.extend(simple_triples_of(t)?);
    }
    sort_labeled(&mut out);
    Ok(out)
}

/// The labeled simple-group triples for one type.
pub fn simple_triples_of(t: SimpleType) -> Result<Vec<LabeledTriple>> {
    let d = simple_diagram(t);
    let n = t.rank();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if fiber_smoothness_filter(t, i, j)? {
                out.push(label_simple(t, i, &[j])?);
            }
        }
        let without_i = d.full_subdiagram(&complement(&d, &[i - 1]))?;
        let singles: Vec<usize> =
            without_i.components().iter().filter(|c| c.len() == 1).map(|c| c.vertices()[0]).collect();
        for (a, &j1) in singles.iter().enumerate() {
            for &j2 in &singles[a + 1..] {
                let rest = d.full_subdiagram(&complement(&d, &[j1, j2]))?;
                if is_smooth_end(&rest, i - 1)? {
                    out.push(label_simple(t, i, &[j1 + 1, j2 + 1])?);
                }
            }
        }
    }
    Ok(out)
}

/// Triples `(T × A1, P(ω_i) × A1, P(ω_j) × P(ω_1))` where `{j}` is an isolated
/// vertex of `S_T \ {i}` and `i` an end of an A-component or first vertex of a
/// C-component of `S_T \ {j}`.
pub fn enumerate_product_triples(max_rank: usize) -> Result<Vec<LabeledTriple>> {
    let mut out = Vec::new();
    for t in SimpleType::irredundant_up_to(max_rank) {
        out.extend(product_triples_of(t)?);
    }
    sort_labeled(&mut out);
    Ok(out)
}

/// The labeled product triples with first factor `t`.
pub fn product_triples_of(t: SimpleType) -> Result<Vec<LabeledTriple>> {
    let d = simple_diagram(t);
    let mut out = Vec::new();
    for i in 1..=t.rank() {
        let without_i = d.full_subdiagram(&complement(&d, &[i - 1]))?;
        for c in without_i.components().iter().filter(|c| c.len() == 1) {
            let j = c.vertices()[0];
            let without_j = d.full_subdiagram(&complement(&d, &[j]))?;
            if is_smooth_end(&without_j, i - 1)? {
                out.push(label_product(t, i, j + 1)?);
            }
        }
    }
    Ok(out)
}

/// Fiber shapes of the triple: from the component of the `Q`-vertex in
/// `Levi(P)` when `Q` is maximal in `P`'s complement, or the `n = 4` shape
/// when `Q` omits two isolated vertices of `Levi(P)` (or one and the `A1` factor).
pub fn triple_fiber_shapes(t: &CandidateTriple) -> Result<Vec<FiberShape>> {
    let rs = t.root_system();
    let d = Diagram::of_root_system(&rs);
    let levi = d.full_subdiagram(&t.p_levi())?;
    match t.q_omit.as_slice() {
        [j] => fiber_shapes(&levi, *j, LabelingRule::Induced),
        [j1, j2] => {
            let isolated = |v: usize| levi.component_of(v).map(|c| c.len() == 1);
            if isolated(*j1)? && isolated(*j2)? {
                Ok(vec![FiberShape { kind: 1, n: Some(4), vertices: vec![*j1, *j2] }])
            } else {
                Ok(Vec::new())
            }
        }
        _ => Ok(Vec::new()),
    }
}

/// Extends a weight given on `Levi(P)` (`target`, keyed by vertex) to a weight
/// of the root lattice: `λ = Σ_{k ∈ Levi(P)} c_k α_k` with the prescribed
/// `Levi(P)` coordinates. `None` when the remaining coordinate is not integral.
pub fn lift_local_weight(rs: &RootSystem, levi_p: &[usize], target: &BTreeMap<usize, i64>) -> Option<Weight> {
    let a = rs.cartan();
    let r = |x: i64| Rational64::from_int(x);
    // Equation m: Σ_k c_k a_{k m} = target_m.
    let mat: Vec<Vec<Rational64>> = levi_p.iter().map(|&m| levi_p.iter().map(|&k| r(a.get(k, m))).collect()).collect();
    let rhs: Vec<Rational64> = levi_p.iter().map(|m| r(*target.get(m).unwrap_or(&0))).collect();
    let c = solve(&mat, &rhs)?;
    let mut w = vec![0i64; rs.rank()];
    for p in 0..rs.rank() {
        if let Some(idx) = levi_p.iter().position(|&m| m == p) {
            w[p] = rhs[idx].to_integer();
            continue;
        }
        let val = levi_p.iter().zip(&c).fold(Rational64::zero(), |acc, (&k, ck)| acc + *ck * r(a.get(k, p)));
        if !val.is_integer() {
            return None;
        }
        w[p] = val.to_integer().to_i64()?;
    }
    Some(Weight(w))
}

/// Local weight of the triple for a fiber row and shape, lifted to `G`.
pub fn local_weight(t: &CandidateTriple, row: FiberRow, shape: &FiberShape) -> Option<Weight> {
    let target: BTreeMap<usize, i64> = shape.vertices.iter().map(|&v| (v, row.weight_coefficient())).collect();
    lift_local_weight(&t.root_system(), &t.p_levi(), &target)
}

/// The weight restricted to the semi-simple part of `levi` is the highest
/// weight of an `ω_1`/`ω_n` module of a type-A component or the `ω_1` module of
/// a type-C component, and zero on every other component.
pub fn allowed_local_model(levi: &Diagram, w: &Weight) -> Result<bool> {
    let mut live = Vec::new();
    for c in levi.components() {
        let coords: Vec<(usize, i64)> = c
            .vertices()
            .iter()
            .map(|&v| w.0.get(v).copied().map(|x| (v, x)).ok_or(Error::UnknownVertex(v)))
            .collect::<Result<_>>()?;
        if coords.iter().any(|&(_, x)| x != 0) {
            live.push(coords);
        }
    }
    let [coords] = live.as_slice() else {
        return Ok(false);
    };
    let nonzero: Vec<&(usize, i64)> = coords.iter().filter(|(_, x)| *x != 0).collect();
    match nonzero.as_slice() {
        [(v, 1)] => is_smooth_end(levi, *v),
        _ => Ok(false),
    }
}

/// One fiber row tried on a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowScan {
    pub row: FiberRow,
    pub n: Option<usize>,
    pub weight: Option<String>,
    pub allowed: Option<bool>,
}

/// Every detected fiber shape with every row of its kind.
pub fn row_scan(t: &CandidateTriple) -> Result<Vec<RowScan>> {
    let rs = t.root_system();
    let levi_q = Diagram::of_root_system(&rs).full_subdiagram(&t.q_levi())?;
    let mut out = Vec::new();
    for shape in triple_fiber_shapes(t)? {
        for &row in FiberRow::variants(shape.kind) {
            let w = local_weight(t, row, &shape);
            let allowed = w.as_ref().map(|w| allowed_local_model(&levi_q, w)).transpose()?;
            out.push(RowScan { row, n: shape.n, weight: w.map(|w| rs.format_weight(&w)), allowed });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Homogeneous { target: String, dim: usize },
    Nonhomogeneous { variety: String, weight: String },
    Nonsmooth { witness: String },
}

/// A closed-form target with an optional flag-variety cross-check `G'/P(ω_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub name: String,
    pub dim: usize,
    pub flag: Option<(SimpleType, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    /// `dim G/P`.
    pub base: usize,
    /// `dim P/H`, from the fiber row.
    pub fiber: usize,
    /// `dim G/H`.
    pub total: usize,
    pub target: Option<usize>,
    /// Dimension of the flag variety the target is identified with.
    pub target_flag: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub label: Label,
    pub g: String,
    pub p: String,
    pub q: String,
    pub row: FiberRow,
    pub outcome: Outcome,
    /// Local weight computed from the row by the root-lattice lift.
    pub local_weight: Option<String>,
    /// Whether that weight is an allowed local model on `Levi(Q)`.
    pub allowed: Option<bool>,
    pub dims: Dims,
}

/// Isotropic `k`-planes for a nondegenerate quadratic form on `C^m`.
pub fn dim_isotropic_grassmannian(k: usize, m: usize) -> usize {
    k * (m - k) - k * (k + 1) / 2
}

fn st(f: Family, r: usize) -> SimpleType {
    SimpleType::new(f, r).expect("valid type")
}

fn target(l: &LabeledTriple) -> Option<Target> {
    let t = l.literal.g[0];
    let m = t.rank();
    let i = l.literal.p_omit + 1;
    let tg = |name: String, dim, flag| Some(Target { name, dim, flag });
    match l.label {
        Label::A => tg("P(∧²C⁵)".into(), 9, Some((st(Family::A, 9), 1))),
        Label::B => {
            // Quadric dimension of the ambient space: B_m -> 2m+2, D_m (and A3 as D3) -> 2m+1.
            let (ambient, flag_type) = match t.family() {
                Family::B => (2 * m + 2, st(Family::D, m + 1)),
                Family::D => (2 * m + 1, st(Family::B, m)),
                _ => (7, st(Family::B, 3)),
            };
            let k = if t.family() == Family::A { 2 } else { i + 1 };
            tg(format!("Gr_q({k},{ambient})"), dim_isotropic_grassmannian(k, ambient), Some((flag_type, k)))
        }
        Label::C => tg("F4/P(ω_1)".into(), 15, Some((st(Family::F, 4), 1))),
        Label::D => tg("Q^14".into(), 14, Some((st(Family::D, 8), 1))),
        Label::F => tg(format!("Gr(3,{})", 2 * m), 3 * (2 * m - 3), Some((st(Family::A, 2 * m - 1), 3))),
        Label::I => tg("E6/P(ω_2)".into(), 21, Some((st(Family::E, 6), 2))),
        Label::APrime => tg(format!("P(C^{}⊗C²)", m + 1), 2 * m + 1, Some((st(Family::A, 2 * m + 1), 1))),
        Label::BPrime => {
            tg(format!("Gr_q⁺({},{})", m + 2, 2 * m + 4), (m + 1) * (m + 2) / 2, Some((st(Family::D, m + 2), m + 2)))
        }
        Label::CPrime => {
            tg(format!("Gr_ω({},{})", m + 1, 2 * m + 2), (m + 1) * (m + 2) / 2, Some((st(Family::C, m + 1), m + 1)))
        }
        Label::DPrime => tg(format!("Q^{}", 4 * m - 2), 4 * m - 2, Some((st(Family::D, 2 * m), 1))),
        _ => None,
    }
}

/// Local weights of the non-homogeneous and non-smooth cases, in the
/// literal triple's fundamental-weight coordinates.
pub fn witness_weight(label: Label) -> Option<Weight> {
    let w = |v: &[i64]| Some(Weight(v.to_vec()));
    match label {
        Label::E => w(&[-2, 2, -2]),
        Label::G => w(&[-2, 3, -2]),
        Label::H => w(&[1, 0, -1, 0]),
        Label::J => w(&[0, 0, -2, 3]),
        Label::EPrime => w(&[3, -2, -2]),
        Label::FPrime => w(&[-2, 1, -2]),
        _ => None,
    }
}

fn flag_dim(t: SimpleType, k: usize) -> usize {
    let rs = RootSystem::simple(t);
    rs.dim_flag_variety(&rs.complement(&[k - 1])).expect("valid vertex")
}

/// Verdict for a labeled triple, computed on its literal form.
pub fn case_verdict(l: &LabeledTriple) -> Result<CaseVerdict> {
    let t = &l.literal;
    let rs = t.root_system();
    let base = rs.dim_flag_variety(&t.p_levi())?;
    let fiber = l.row.fiber_dim(l.fiber_n.unwrap_or(0));
    let shapes = triple_fiber_shapes(t)?;
    let shape = shapes
        .iter()
        .find(|s| s.kind == l.row.kind() && s.n == l.fiber_n)
        .ok_or_else(|| Error::ClassificationGap(format!("{t} has no fiber of row {}", l.row)))?;
    let levi_q = Diagram::of_root_system(&rs).full_subdiagram(&t.q_levi())?;
    let weight = local_weight(t, l.row, shape);
    let allowed = weight.as_ref().map(|w| allowed_local_model(&levi_q, w)).transpose()?;
    let tgt = target(l);
    let outcome = match (l.label, &tgt) {
        (_, Some(tg)) => Outcome::Homogeneous { target: tg.name.clone(), dim: tg.dim },
        (Label::H | Label::FPrime, _) => Outcome::Nonhomogeneous {
            variety: if l.label == Label::H { "X1" } else { "X2" }.into(),
            weight: rs.format_weight(&witness_weight(l.label).expect("listed")),
        },
        _ => Outcome::Nonsmooth { witness: rs.format_weight(&witness_weight(l.label).expect("listed")) },
    };
    Ok(CaseVerdict {
        label: l.label,
        g: t.group_label(),
        p: t.p_label(),
        q: t.q_label(),
        row: l.row,
        outcome,
        local_weight: weight.map(|w| rs.format_weight(&w)),
        allowed,
        dims: Dims {
            base,
            fiber,
            total: base + fiber,
            target: tgt.as_ref().map(|t| t.dim),
            target_flag: tgt.as_ref().and_then(|t| t.flag).map(|(ty, k)| flag_dim(ty, k)),
        },
    })
}

/// Smallest instance of each label.
pub fn representative(label: Label) -> Result<LabeledTriple> {
    let t = |s: &str| s.parse::<SimpleType>().expect("valid label");
    match label {
        Label::A => label_simple(t("A4"), 1, &[3]),
        Label::B => label_simple(t("B3"), 1, &[2]),
        Label::C => label_simple(t("B4"), 4, &[2]),
        Label::D => label_simple(t("B4"), 1, &[4]),
        Label::E => label_simple(t("B3"), 2, &[1, 3]),
        Label::F => label_simple(t("C3"), 1, &[3]),
        Label::G => label_simple(t("C3"), 2, &[1, 3]),
        Label::H => label_simple(t("F4"), 1, &[3]),
        Label::I => label_simple(t("F4"), 4, &[1]),
        Label::J => label_simple(t("F4"), 4, &[3]),
        Label::APrime => label_product(t("A2"), 2, 1),
        Label::BPrime => label_product(t("B3"), 2, 3),
        Label::CPrime => label_product(t("C2"), 1, 2),
        Label::DPrime => label_product(t("C2"), 2, 1),
        Label::EPrime => label_product(t("G2"), 1, 2),
        Label::FPrime => label_product(t("G2"), 2, 1),
    }
}

pub fn verdict_for_label(label: Label) -> Result<CaseVerdict> {
    case_verdict(&representative(label)?)
}

/// `dim G/P + dim P/H` equals the target's closed form, and the flag-variety
/// identification of the target agrees.
pub fn dim_consistency(v: &CaseVerdict) -> Result<bool> {
    match (&v.outcome, v.dims.target) {
        (Outcome::Homogeneous { .. }, Some(d)) => Ok(v.dims.total == d && v.dims.target_flag.map_or(true, |f| f == d)),
        _ => Err(Error::UnknownCase(format!("{} has no homogeneous target", v.label))),
    }
}

/// An equality of dimensions computed two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCheck {
    pub what: String,
    pub lhs: usize,
    pub rhs: usize,
}

impl DimCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCaseRow {
    pub label: String,
    pub g: String,
    pub p: String,
    pub h: String,
    pub excluded: bool,
    pub outcome: String,
    pub checks: Vec<DimCheck>,
}

fn group_dim(t: SimpleType) -> usize {
    let rs = RootSystem::simple(t);
    t.rank() + 2 * rs.positive_roots().len()
}

/// The four `(G, P, H)` rows whose rank-one embedding has a homogeneous
/// blow-up or total space, with dimension checks for `m` in `2..=max_m`.
pub fn four_case_table(max_m: usize) -> Vec<FourCaseRow> {
    let ms = || 2..=max_m.max(2);
    let dim_flag = |t: SimpleType, omit: &[usize]| {
        let rs = RootSystem::simple(t);
        let omit0: Vec<usize> = omit.iter().map(|k| k - 1).collect();
        rs.dim_flag_variety(&rs.complement(&omit0)).expect("valid vertices")
    };
    let row_i = ms()
        .map(|m| DimCheck {
            what: format!("m={m}: dim PSL(m+1)/GL(m) = dim P^m×(P^m)*"),
            lhs: group_dim(st(Family::A, m)) - m * m,
            rhs: dim_flag(st(Family::A, m), &[1]) + dim_flag(st(Family::A, m), &[m]),
        })
        .collect();
    let row_ii = ms()
        .map(|m| DimCheck {
            what: format!("m={m}: dim Gr_q(m,2m+1) + m = dim SO(2m+2)/(P(ω_1)∩P(ω_m+1))"),
            lhs: dim_isotropic_grassmannian(m, 2 * m + 1) + m,
            rhs: dim_flag(st(Family::D, m + 1), &[1, m + 1]),
        })
        .collect();
    let row_iii = ms()
        .map(|m| DimCheck {
            what: format!("m={m}: dim Sp(2m)/(B_SL2 × Sp(2m-2)) = dim SL(2m)/(P(ω_1)∩P(ω_2))"),
            lhs: group_dim(st(Family::C, m)) - 2 - sp_dim(m - 1),
            rhs: dim_flag(st(Family::A, 2 * m - 1), &[1, 2]),
        })
        .collect();
    let (patterns, _) = repair_z_basis();
    let g2 = g2_orbit_report(&patterns);
    let base = dim_flag(st(Family::G, 2), &[1]);
    let p_dim = g2.dim_g2 - base;
    let row_iv = vec![
        DimCheck {
            what: "dim Gr_q(2,7) = dim B3/P(ω_2)".into(),
            lhs: dim_isotropic_grassmannian(2, 7),
            rhs: dim_flag(st(Family::B, 3), &[2]),
        },
        DimCheck {
            what: "dim Gr_q(2,7) = dim G2/P(ω_1) + dim P/H".into(),
            lhs: dim_isotropic_grassmannian(2, 7),
            rhs: base + (p_dim - g2.generic_plane_stabilizer),
        },
        DimCheck {
            what: "dim Gr_q(2,7) = open G2-orbit".into(),
            lhs: dim_isotropic_grassmannian(2, 7),
            rhs: g2.generic_orbit,
        },
        DimCheck {
            what: "closed G2-orbit = dim G2/P(ω_2)".into(),
            lhs: g2.null_orbit,
            rhs: dim_flag(st(Family::G, 2), &[2]),
        },
        DimCheck {
            what: "stabilizer of the plane = stabilizer of its line in ∧²".into(),
            lhs: g2.generic_plane_stabilizer,
            rhs: g2.line_stabilizer,
        },
    ];
    vec![
        FourCaseRow {
            label: "(i)".into(),
            g: "PSL(m+1)".into(),
            p: "P(ω_1)".into(),
            h: "GL(m)".into(),
            excluded: true,
            outcome: "blow-up is P^m×(P^m)*, homogeneous".into(),
            checks: row_i,
        },
        FourCaseRow {
            label: "(ii)".into(),
            g: "SO(2m+1)".into(),
            p: "P(ω_m)".into(),
            h: "stabilizer of an isotropic m-plane and a non-isotropic line in its orthogonal".into(),
            excluded: true,
            outcome: "blow-up is SO(2m+2)/(P(ω_1)∩P(ω_m+1)), homogeneous".into(),
            checks: row_ii,
        },
        FourCaseRow {
            label: "(iii)".into(),
            g: "Sp(2m)/{±1}".into(),
            p: "stabilizer of a line".into(),
            h: "stabilizer of a line and a non-isotropic plane through it".into(),
            excluded: true,
            outcome: "blow-up is SL(2m)/(P(ω_1)∩P(ω_2)), homogeneous".into(),
            checks: row_iii,
        },
        FourCaseRow {
            label: "(iv)".into(),
            g: "G2".into(),
            p: "P(ω_1)".into(),
            h: "stabilizer of a generic isotropic plane".into(),
            excluded: true,
            outcome: "X = Gr_q(2,7), two G2-orbits, homogeneous under SO(7)".into(),
            checks: row_iv,
        },
    ]
}

fn sp_dim(m: usize) -> usize {
    m * (2 * m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn filter_examples() {
        assert!(fiber_smoothness_filter(ty("F4"), 1, 3).unwrap());
        assert!(fiber_smoothness_filter(ty("B4"), 1, 4).unwrap());
        assert!(!fiber_smoothness_filter(ty("A4"), 1, 2).unwrap());
        assert!(!fiber_smoothness_filter(ty("D5"), 1, 4).unwrap());
        assert!(fiber_smoothness_filter_with(ty("D5"), 1, 4, LabelingRule::Any).unwrap());
    }

    #[test]
    fn restrictions() {
        let labels = |v: Vec<LabeledTriple>| v.into_iter().map(|l| l.label.to_string()).collect::<Vec<_>>();
        assert_eq!(labels(simple_triples_of(ty("F4")).unwrap()), ["(h)", "(i)", "(j)"]);
        let mut a4 = labels(simple_triples_of(ty("A4")).unwrap());
        a4.dedup();
        assert_eq!(a4, ["(a)"]);
        let mut c3 = labels(simple_triples_of(ty("C3")).unwrap());
        c3.sort();
        assert_eq!(c3, ["(f)", "(g)"]);
        assert_eq!(labels(product_triples_of(ty("G2")).unwrap()), ["(e')", "(f')"]);
        assert!(product_triples_of(ty("A1")).unwrap().is_empty());
    }

    #[test]
    fn lifted_weights_match_listed_ones() {
        for l in [Label::E, Label::G, Label::H, Label::J, Label::EPrime, Label::FPrime] {
            let r = representative(l).unwrap();
            let shape = triple_fiber_shapes(&r.literal)
                .unwrap()
                .into_iter()
                .find(|s| s.kind == r.row.kind() && s.n == r.fiber_n)
                .unwrap();
            assert_eq!(local_weight(&r.literal, r.row, &shape), witness_weight(l), "{l}");
        }
    }

    #[test]
    fn verdicts() {
        let h = verdict_for_label(Label::H).unwrap();
        assert_eq!(h.outcome, Outcome::Nonhomogeneous { variety: "X1".into(), weight: "ω_1-ω_3".into() });
        assert_eq!(h.allowed, Some(true));
        let g = verdict_for_label(Label::G).unwrap();
        assert_eq!(g.outcome, Outcome::Nonsmooth { witness: "3ω_2-2ω_1-2ω_3".into() });
        assert_eq!(g.allowed, Some(false));
        let c = verdict_for_label(Label::C).unwrap();
        assert_eq!(c.dims.target_flag, Some(15));
        assert!(dim_consistency(&c).unwrap());
        let a = verdict_for_label(Label::A).unwrap();
        assert_eq!((a.dims.base, a.dims.fiber), (4, 5));
        assert!(dim_consistency(&verdict_for_label(Label::H).unwrap()).is_err());
    }

    #[test]
    fn label_parsing() {
        assert_eq!("(f')".parse::<Label>().unwrap(), Label::FPrime);
        assert_eq!("c".parse::<Label>().unwrap(), Label::C);
        assert!("(k)".parse::<Label>().is_err());
    }

    #[test]
    fn isotropic_grassmannian() {
        assert_eq!(dim_isotropic_grassmannian(2, 7), 7);
    }
}
