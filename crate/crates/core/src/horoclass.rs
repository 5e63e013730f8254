//! Rank-one horospherical homogeneous spaces `G/H` attached to a pair of simple
//! roots, which of them give smooth Picard-one completions, and whether those
//! completions are homogeneous.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{is_smooth_end, labelings_of_family, Diagram};
use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem, SimpleType, Weight, WeylWord};

/// `(Γ, α, β)` with Bourbaki (1-based) vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HoroPair {
    pub gamma: SimpleType,
    pub alpha: usize,
    pub beta: usize,
}

impl HoroPair {
    pub fn new(gamma: SimpleType, alpha: usize, beta: usize) -> Result<Self> {
        for v in [alpha, beta] {
            if v == 0 || v > gamma.rank() {
                return Err(Error::IndexOutOfRange { index: v, rank: gamma.rank() });
            }
        }
        if alpha == beta {
            return Err(Error::InvalidDiagram(format!("alpha and beta coincide at {alpha}")));
        }
        Ok(HoroPair { gamma, alpha, beta })
    }

    pub fn swapped(self) -> HoroPair {
        HoroPair { gamma: self.gamma, alpha: self.beta, beta: self.alpha }
    }

    fn a(self) -> usize {
        self.alpha - 1
    }

    fn b(self) -> usize {
        self.beta - 1
    }
}

impl fmt::Display for HoroPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, α_{}, α_{})", self.gamma, self.alpha, self.beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectiveCase {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    Ii,
    #[serde(rename = "iii")]
    Iii,
}

/// When the completion with `n + 1` colors (some attached) is a projective space.
pub fn projective_space_case(
    n: usize,
    attached_count: usize,
    two_colors_same_component: bool,
) -> Option<ProjectiveCase> {
    if attached_count <= n {
        Some(ProjectiveCase::I)
    } else if n >= 2 {
        Some(ProjectiveCase::Ii)
    } else if n == 1 && !two_colors_same_component {
        Some(ProjectiveCase::Iii)
    } else {
        None
    }
}

fn smooth_side(d: &Diagram, keep: usize, drop: usize) -> Result<bool> {
    let rest: Vec<usize> = d.vertices().iter().copied().filter(|&v| v != drop).collect();
    is_smooth_end(&d.full_subdiagram(&rest)?, keep)
}

/// Both colors sit where the smoothness criterion allows: `β` is an end of an
/// A-component or the first vertex of a C-component of `Γ_{S\{α}}`, and symmetrically.
pub fn is_special_pair(p: &HoroPair) -> Result<bool> {
    let d = Diagram::bourbaki(p.gamma);
    Ok(smooth_side(&d, p.b(), p.a())? && smooth_side(&d, p.a(), p.b())?)
}

/// The pair's position in the eight-family list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseMatch {
    /// The pair in the orientation of the family list.
    pub pair: HoroPair,
    pub case: u8,
    pub m: usize,
    pub i: Option<usize>,
    /// Matched only after a diagram automorphism.
    pub via_automorphism: bool,
}

fn literal_case(t: SimpleType, a: usize, b: usize) -> Option<(u8, Option<usize>)> {
    let m = t.rank();
    match t.family() {
        Family::A if m >= 2 && a == 1 && b == m => Some((1, None)),
        Family::A if m >= 3 && b == a + 1 => Some((2, Some(a))),
        Family::B if m >= 3 && a == m - 1 && b == m => Some((3, None)),
        Family::B if m == 3 && a == 1 && b == 3 => Some((4, None)),
        Family::C if m >= 2 && a == b + 1 => Some((5, Some(b))),
        Family::D if m >= 4 && a == m - 1 && b == m => Some((6, None)),
        Family::F if a == 2 && b == 3 => Some((7, None)),
        Family::G if a == 2 && b == 1 => Some((8, None)),
        _ => None,
    }
}

/// Automorphisms of the Bourbaki diagram as maps on 1-based indices (index 0 unused).
pub fn diagram_automorphisms(t: SimpleType) -> Vec<Vec<usize>> {
    let d = Diagram::bourbaki(t);
    labelings_of_family(&d, t.family())
        .expect("Bourbaki diagrams are connected")
        .into_iter()
        .map(|l| {
            let mut map = vec![0; t.rank() + 1];
            for (v, k) in l.relabeling {
                map[v + 1] = k;
            }
            map
        })
        .collect()
}

/// Matches a pair against the family list, trying both orientations and then
/// diagram automorphisms.
pub fn case_label(p: &HoroPair) -> Result<CaseMatch> {
    let t = p.gamma;
    for q in [*p, p.swapped()] {
        if let Some((case, i)) = literal_case(t, q.alpha, q.beta) {
            return Ok(CaseMatch { pair: q, case, m: t.rank(), i, via_automorphism: false });
        }
    }
    for sigma in diagram_automorphisms(t) {
        for q in [*p, p.swapped()] {
            if let Some((case, _)) = literal_case(t, sigma[q.alpha], sigma[q.beta]) {
                return Ok(CaseMatch { pair: q, case, m: t.rank(), i: None, via_automorphism: true });
            }
        }
    }
    Err(Error::ClassificationGap(format!("{p} is not in the family list")))
}

/// All special pairs over irredundant simple types of rank at most `max_rank`,
/// one per unordered pair, in family-list orientation.
pub fn enumerate_special(max_rank: usize) -> Result<Vec<CaseMatch>> {
    let mut out = Vec::new();
    for t in SimpleType::irredundant_up_to(max_rank) {
        for a in 1..=t.rank() {
            for b in a + 1..=t.rank() {
                let p = HoroPair::new(t, a, b)?;
                if is_special_pair(&p)? {
                    out.push(case_label(&p)?);
                }
            }
        }
    }
    out.sort_by_key(|c| (c.pair.gamma, c.pair.alpha, c.pair.beta));
    Ok(out)
}

fn longest_without(rs: &RootSystem, v: usize) -> WeylWord {
    rs.longest_element_word(&rs.complement(&[v])).expect("valid vertices")
}

/// `<ω_α - ω_β, w_0^β(β̌)>` where `w_0^β` is longest in `W_{S\{β}}`.
pub fn aut_stability_pairing(p: &HoroPair) -> i64 {
    let rs = RootSystem::simple(p.gamma);
    let word = longest_without(&rs, p.b());
    let image = rs.act_on_coweight(&word, &rs.simple_coroot(p.b())).expect("valid word");
    let lambda = &rs.fundamental_weight(p.a()) - &rs.fundamental_weight(p.b());
    crate::rootsys::pairing(&lambda, &image).expect("same rank")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Closed orbit `G/P(ω_α)`.
    Y,
    /// Closed orbit `G/P(ω_β)`.
    Z,
}

/// Global sections of the normal bundle of the closed orbit on `side`.
///
/// With `v` the vertex of that orbit and `u` the other one, the normal fiber has
/// lowest weight `μ = w_0^v(ω_u - ω_v)`. Sections are nonzero iff `μ` is
/// antidominant, and then form the simple module whose highest weight is
/// the dominant representative of `-μ`.
pub fn normal_sections_module(p: &HoroPair, side: Side) -> Option<Weight> {
    let rs = RootSystem::simple(p.gamma);
    let (v, u) = match side {
        Side::Y => (p.a(), p.b()),
        Side::Z => (p.b(), p.a()),
    };
    let lambda = &rs.fundamental_weight(u) - &rs.fundamental_weight(v);
    let mu = rs.act_on_weight(&longest_without(&rs, v), &lambda).expect("valid word");
    if !mu.is_antidominant() {
        return None;
    }
    Some(rs.dominant_representative(&-&mu).expect("same rank").0)
}

/// Automorphism group `(reductive part) ⋉ V(unipotent)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutDescriptor {
    pub reductive: String,
    pub unipotent: Weight,
}

impl AutDescriptor {
    pub fn render(&self, rs: &RootSystem) -> String {
        format!("({})⋉V({})", self.reductive, rs.format_weight(&self.unipotent))
    }
}

fn reductive_label(case: u8, m: usize) -> Option<String> {
    match case {
        3 => Some(format!("SO({})×C*", 2 * m + 1)),
        4 => Some("SO(7)×C*".into()),
        5 => Some(format!("(Sp({})×C*)/{{±1}}", 2 * m)),
        7 => Some("F4×C*".into()),
        8 => Some("G2×C*".into()),
        _ => None,
    }
}

fn model_name(c: &CaseMatch) -> Option<String> {
    let m = c.m;
    match (c.case, c.i) {
        (1, _) => Some(format!("quadric Q^{}", 2 * m)),
        (2, Some(i)) => Some(format!("Gr({}, {})", i + 1, m + 2)),
        (5, Some(i)) => Some(format!("odd symplectic Gr_ω({}, {})", i + 1, 2 * m + 1)),
        (6, _) => Some(format!("spinor variety Spin({})/P(ω_{})", 2 * m + 1, m)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub case: CaseMatch,
    pub special: bool,
    pub homogeneous: bool,
    pub pairing: Option<i64>,
    pub sections_y: Option<Weight>,
    pub sections_z: Option<Weight>,
    pub aut: Option<AutDescriptor>,
    pub model: Option<String>,
    pub dim_x1: usize,
}

/// Homogeneity of the Picard-one completion: it is homogeneous exactly when
/// the normal bundle of `Z` has sections.
pub fn homogeneity_verdict(p: &HoroPair) -> Result<ClassificationVerdict> {
    if !is_special_pair(p)? {
        return Err(Error::NotSpecial(p.to_string()));
    }
    let case = case_label(p)?;
    let q = case.pair;
    let sections_y = normal_sections_module(&q, Side::Y);
    let sections_z = normal_sections_module(&q, Side::Z);
    let homogeneous = sections_z.is_some();
    let pairing = (!homogeneous).then(|| aut_stability_pairing(&q));
    let aut = match (&sections_y, homogeneous) {
        (Some(w), false) => {
            reductive_label(case.case, case.m).map(|r| AutDescriptor { reductive: r, unipotent: w.clone() })
        }
        _ => None,
    };
    Ok(ClassificationVerdict {
        case,
        special: true,
        homogeneous,
        pairing,
        sections_y,
        sections_z,
        aut,
        model: model_name(&case),
        dim_x1: dim_x1(&q),
    })
}

/// `1 + #(R+ \ R+_I)` with `I = S \ {α, β}`.
pub fn dim_x1(p: &HoroPair) -> usize {
    let rs = RootSystem::simple(p.gamma);
    1 + rs.dim_flag_variety(&rs.complement(&[p.a(), p.b()])).expect("valid vertices")
}

/// Closed-form dimension of the named model in cases 1, 2, 5, 6.
pub fn dim_homogeneous_model(case: u8, m: usize, i: Option<usize>) -> Result<usize> {
    let need_i = || i.ok_or_else(|| Error::UnknownCase(format!("case {case} needs i")));
    match case {
        1 => Ok(2 * m),
        2 => {
            let i = need_i()?;
            Ok((i + 1) * (m + 1 - i))
        }
        5 => {
            let k = need_i()? + 1;
            Ok(k * (2 * m + 1 - k) - k * (k - 1) / 2)
        }
        6 => {
            let b = SimpleType::new(Family::B, m)?;
            let rs = RootSystem::simple(b);
            rs.dim_flag_variety(&rs.complement(&[m - 1]))
        }
        _ => Err(Error::UnknownCase(case.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(t: &str, a: usize, b: usize) -> HoroPair {
        HoroPair::new(t.parse().unwrap(), a, b).unwrap()
    }

    #[test]
    fn projective_cases() {
        assert_eq!(projective_space_case(3, 2, true), Some(ProjectiveCase::I));
        assert_eq!(projective_space_case(2, 3, true), Some(ProjectiveCase::Ii));
        assert_eq!(projective_space_case(1, 2, false), Some(ProjectiveCase::Iii));
        assert_eq!(projective_space_case(1, 2, true), None);
    }

    #[test]
    fn special_examples() {
        assert!(is_special_pair(&pair("B3", 1, 3)).unwrap());
        assert!(is_special_pair(&pair("G2", 2, 1)).unwrap());
        assert!(!is_special_pair(&pair("D4", 1, 2)).unwrap());
        assert!(is_special_pair(&pair("C2", 2, 1)).unwrap());
        assert!(!is_special_pair(&pair("A4", 1, 3)).unwrap());
    }

    #[test]
    fn labels() {
        let c = case_label(&pair("C4", 2, 3)).unwrap();
        assert_eq!((c.case, c.i, c.pair.alpha, c.pair.beta), (5, Some(2), 3, 2));
        let d = case_label(&pair("D4", 1, 3)).unwrap();
        assert!(d.via_automorphism);
        assert_eq!(d.case, 6);
        assert!(case_label(&pair("E6", 1, 6)).is_err());
    }

    #[test]
    fn restricted_enumerations() {
        let all = enumerate_special(4).unwrap();
        let a: Vec<u8> = all.iter().filter(|c| c.pair.gamma.family() == Family::A).map(|c| c.case).collect();
        assert!(a.iter().all(|&c| c == 1 || c == 2));
        let f4: Vec<_> = all.iter().filter(|c| c.pair.gamma.family() == Family::F).collect();
        assert_eq!(f4.len(), 1);
        assert_eq!((f4[0].pair.alpha, f4[0].pair.beta), (2, 3));
        let e = enumerate_special(8).unwrap();
        assert!(e.iter().all(|c| c.pair.gamma.family() != Family::E));
    }

    #[test]
    fn pairings() {
        assert_eq!(aut_stability_pairing(&pair("B5", 4, 5)), 1);
        assert_eq!(aut_stability_pairing(&pair("G2", 2, 1)), 2);
        assert_eq!(aut_stability_pairing(&pair("C5", 3, 2)), 1);
        assert_eq!(aut_stability_pairing(&pair("A3", 1, 3)), 0);
    }

    #[test]
    fn section_modules() {
        let p = pair("B4", 3, 4);
        assert_eq!(normal_sections_module(&p, Side::Y), Some(Weight(vec![0, 0, 0, 1])));
        assert_eq!(normal_sections_module(&p, Side::Z), None);
        assert_eq!(normal_sections_module(&pair("F4", 2, 3), Side::Y), Some(Weight(vec![0, 0, 0, 1])));
        assert!(normal_sections_module(&pair("A3", 1, 3), Side::Z).is_some());
    }

    #[test]
    fn verdicts() {
        let v = homogeneity_verdict(&pair("C3", 1, 2)).unwrap();
        assert!(!v.homogeneous);
        assert_eq!(v.aut.as_ref().unwrap().unipotent, Weight(vec![1, 0, 0]));
        let rs = RootSystem::simple("C3".parse().unwrap());
        assert_eq!(v.aut.unwrap().render(&rs), "((Sp(6)×C*)/{±1})⋉V(ω_1)");
        let q = homogeneity_verdict(&pair("A3", 1, 3)).unwrap();
        assert!(q.homogeneous);
        assert_eq!(q.model.as_deref(), Some("quadric Q^6"));
        let s = homogeneity_verdict(&pair("D5", 4, 5)).unwrap();
        assert!(s.homogeneous);
        assert!(s.model.unwrap().starts_with("spinor"));
        assert!(homogeneity_verdict(&pair("A4", 1, 3)).is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_x1(&pair("A5", 1, 5)), 10);
        assert_eq!(dim_x1(&pair("G2", 2, 1)), 7);
        assert_eq!(dim_x1(&pair("A4", 2, 3)), dim_homogeneous_model(2, 4, Some(2)).unwrap());
        assert_eq!(dim_homogeneous_model(1, 3, None).unwrap(), 6);
        assert_eq!(dim_homogeneous_model(2, 3, Some(1)).unwrap(), 6);
        assert_eq!(dim_homogeneous_model(6, 4, None).unwrap(), 10);
        assert!(dim_homogeneous_model(3, 4, None).is_err());
    }
}
