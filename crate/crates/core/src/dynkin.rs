//! Dynkin diagrams: induced subdiagrams, components, type recognition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem, SimpleType};

/// An edge; for multiplicity 2 or 3, `arrow` is the endpoint carrying the short root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub mult: u8,
    pub arrow: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl Diagram {
    pub fn new(vertices: Vec<usize>, edges: Vec<Edge>) -> Result<Self> {
        let mut vs = vertices;
        vs.sort_unstable();
        let before = vs.len();
        vs.dedup();
        if vs.len() != before {
            return Err(Error::InvalidDiagram("repeated vertex".into()));
        }
        let mut seen = BTreeSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for e in edges {
            if e.a == e.b {
                return Err(Error::InvalidDiagram(format!("loop at {}", e.a)));
            }
            for v in [e.a, e.b] {
                if vs.binary_search(&v).is_err() {
                    return Err(Error::UnknownVertex(v));
                }
            }
            let (a, b) = (e.a.min(e.b), e.a.max(e.b));
            if !seen.insert((a, b)) {
                return Err(Error::InvalidDiagram(format!("parallel edges {a}-{b}")));
            }
            match (e.mult, e.arrow) {
                (1, None) => {}
                (2 | 3, Some(s)) if s == a || s == b => {}
                _ => return Err(Error::InvalidDiagram(format!("bad edge data on {a}-{b}"))),
            }
            norm.push(Edge { a, b, mult: e.mult, arrow: e.arrow });
        }
        norm.sort();
        Ok(Diagram { vertices: vs, edges: norm })
    }

    /// Diagram of a (product) root system, vertex ids being global indices.
    pub fn of_root_system(rs: &RootSystem) -> Diagram {
        let c = rs.cartan();
        let n = rs.rank();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (aij, aji) = (c.get(i, j), c.get(j, i));
                if aij == 0 {
                    continue;
                }
                let mult = aij.abs().max(aji.abs()) as u8;
                let arrow = match mult {
                    1 => None,
                    _ if aij.abs() > 1 => Some(j),
                    _ => Some(i),
                };
                edges.push(Edge { a: i, b: j, mult, arrow });
            }
        }
        Diagram { vertices: (0..n).collect(), edges }
    }

    /// Bourbaki diagram of `t` on vertices `0..rank`.
    pub fn bourbaki(t: SimpleType) -> Diagram {
        let edges = t.bourbaki_edges().into_iter().map(|(a, b, mult, arrow)| Edge { a, b, mult, arrow }).collect();
        Diagram::new((0..t.rank()).collect(), edges).expect("Bourbaki edges are valid")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    fn require(&self, v: usize) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<&Edge> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges.iter().find(|e| e.a == a && e.b == b)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|e| match (e.a == v, e.b == v) {
                (true, _) => Some(e.b),
                (_, true) => Some(e.a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    /// `<α_u, α̌_v>` read off the edge data.
    pub fn cartan_entry(&self, u: usize, v: usize) -> i64 {
        if u == v {
            return 2;
        }
        match self.edge_between(u, v) {
            None => 0,
            Some(e) if e.mult == 1 => -1,
            Some(e) if e.arrow == Some(v) => -(e.mult as i64),
            Some(_) => -1,
        }
    }

    pub fn full_subdiagram(&self, subset: &[usize]) -> Result<Diagram> {
        subset.iter().try_for_each(|&v| self.require(v))?;
        let mut vertices = subset.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let edges = self
            .edges
            .iter()
            .filter(|e| vertices.binary_search(&e.a).is_ok() && vertices.binary_search(&e.b).is_ok())
            .cloned()
            .collect();
        Ok(Diagram { vertices, edges })
    }

    /// Connected components ordered by smallest vertex.
    pub fn components(&self) -> Vec<Diagram> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(self.full_subdiagram(&comp).expect("vertices come from self"));
        }
        out
    }

    pub fn component_of(&self, v: usize) -> Result<Diagram> {
        self.require(v)?;
        Ok(self.components().into_iter().find(|c| c.contains(v)).expect("every vertex lies in a component"))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// An end vertex whose incident edge is simple; a lone vertex counts.
    pub fn is_simple_end(&self, v: usize) -> Result<bool> {
        self.require(v)?;
        if self.vertices.len() == 1 {
            return Ok(true);
        }
        let incident: Vec<&Edge> = self.edges.iter().filter(|e| e.a == v || e.b == v).collect();
        Ok(incident.len() == 1 && incident[0].mult == 1)
    }
}

/// A Bourbaki labeling of a connected diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentType {
    pub simple_type: SimpleType,
    /// Vertex id to 1-based Bourbaki index.
    pub relabeling: BTreeMap<usize, usize>,
}

impl ComponentType {
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.relabeling.get(&v).copied()
    }

    /// Bourbaki indices increase with vertex ids.
    pub fn is_monotone(&self) -> bool {
        self.relabeling.values().zip(self.relabeling.values().skip(1)).all(|(a, b)| a < b)
    }
}

/// Every labeling of the connected diagram `d` by a Bourbaki diagram of `family`.
pub fn labelings_of_family(d: &Diagram, family: Family) -> Result<Vec<ComponentType>> {
    if d.is_empty() || !d.is_connected() {
        return Err(Error::InvalidDiagram("labelings need a connected nonempty diagram".into()));
    }
    let Ok(t) = SimpleType::new(family, d.len()) else {
        return Ok(Vec::new());
    };
    let target = Diagram::bourbaki(t);
    if signature(d) != signature(&target) {
        return Ok(Vec::new());
    }
    let order = bfs_order(d);
    let mut assignment: Vec<Option<usize>> = vec![None; order.len()];
    let mut used = vec![false; d.len()];
    let mut found = Vec::new();
    extend_iso(d, &target, &order, 0, &mut assignment, &mut used, &mut found);
    let mut out: Vec<ComponentType> = found
        .into_iter()
        .map(|img| ComponentType {
            simple_type: t,
            relabeling: order.iter().zip(img).map(|(&v, w)| (v, w + 1)).collect(),
        })
        .collect();
    out.sort_by(|a, b| a.relabeling.values().cmp(b.relabeling.values()));
    Ok(out)
}

/// Labelings over all families, in family order.
pub fn labelings(d: &Diagram) -> Result<Vec<ComponentType>> {
    let mut out = Vec::new();
    for f in Family::ALL {
        out.extend(labelings_of_family(d, f)?);
    }
    Ok(out)
}

/// Canonical type of a connected diagram: the first family (A < B < ... < G)
/// that fits, with the lexicographically smallest relabeling. So `D3` reads as
/// `A3` and the double edge on two vertices as `B2`.
pub fn classify_component(d: &Diagram) -> Result<ComponentType> {
    labelings(d)?.into_iter().next().ok_or_else(|| Error::InvalidDiagram("not a simple Dynkin diagram".into()))
}

/// Which labelings count when reading off a vertex position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelingRule {
    /// Use labelings compatible with the ambient vertex order when one exists.
    Induced,
    /// Use every labeling.
    Any,
}

/// Bourbaki indices `v` can take in `family`-labelings of its component in `d`.
pub fn positions(d: &Diagram, v: usize, family: Family, rule: LabelingRule) -> Result<BTreeSet<usize>> {
    let comp = d.component_of(v)?;
    let mut labs = labelings_of_family(&comp, family)?;
    if rule == LabelingRule::Induced && labs.iter().any(ComponentType::is_monotone) {
        labs.retain(ComponentType::is_monotone);
    }
    Ok(labs.iter().filter_map(|l| l.index_of(v)).collect())
}

/// `v` is an end of a type-A component or the first vertex of a type-C component:
/// the positions whose fundamental module is `ω_1`/`ω_n` of SL or `ω_1` of Sp.
pub fn is_smooth_end(d: &Diagram, v: usize) -> Result<bool> {
    let comp = d.component_of(v)?;
    let n = comp.len();
    let a = positions(d, v, Family::A, LabelingRule::Any)?;
    if a.contains(&1) || a.contains(&n) {
        return Ok(true);
    }
    Ok(positions(d, v, Family::C, LabelingRule::Any)?.contains(&1))
}

/// Sorted degrees and edge multiplicities, equal for isomorphic diagrams.
fn signature(d: &Diagram) -> (Vec<usize>, Vec<u8>) {
    let mut degrees: Vec<usize> = d.vertices.iter().map(|&v| d.degree(v)).collect();
    degrees.sort_unstable();
    let mut mults: Vec<u8> = d.edges.iter().map(|e| e.mult).collect();
    mults.sort_unstable();
    (degrees, mults)
}

fn bfs_order(d: &Diagram) -> Vec<usize> {
    let start = d.vertices[0];
    let mut order = vec![start];
    let mut seen = BTreeSet::from([start]);
    let mut i = 0;
    while i < order.len() {
        let mut nb = d.neighbors(order[i]);
        nb.sort_unstable();
        for w in nb {
            if seen.insert(w) {
                order.push(w);
            }
        }
        i += 1;
    }
    order
}

fn edge_matches(d: &Diagram, target: &Diagram, u: usize, v: usize, fu: usize, fv: usize) -> bool {
    match (d.edge_between(u, v), target.edge_between(fu, fv)) {
        (None, None) => true,
        (Some(e), Some(f)) => {
            e.mult == f.mult
                && match (e.arrow, f.arrow) {
                    (None, None) => true,
                    (Some(s), Some(t)) => (s == u) == (t == fu),
                    _ => false,
                }
        }
        _ => false,
    }
}

fn extend_iso(
    d: &Diagram,
    target: &Diagram,
    order: &[usize],
    k: usize,
    assignment: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    if k == order.len() {
        found.push(assignment.iter().map(|x| x.expect("complete")).collect());
        return;
    }
    let v = order[k];
    for cand in 0..target.len() {
        if used[cand] || d.degree(v) != target.degree(cand) {
            continue;
        }
        let ok = (0..k).all(|p| edge_matches(d, target, order[p], v, assignment[p].expect("assigned"), cand));
        if ok {
            used[cand] = true;
            assignment[k] = Some(cand);
            extend_iso(d, target, order, k + 1, assignment, used, found);
            assignment[k] = None;
            used[cand] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    fn bour(s: &str) -> Diagram {
        Diagram::bourbaki(t(s))
    }

    #[test]
    fn arrow_points_to_short_root() {
        let b3 = bour("B3");
        let e = b3.edge_between(1, 2).unwrap();
        assert_eq!((e.mult, e.arrow), (2, Some(2)));
        let c3 = bour("C3");
        assert_eq!(c3.edge_between(1, 2).unwrap().arrow, Some(1));
        assert_eq!(bour("G2").edge_between(0, 1).unwrap().arrow, Some(0));
        assert_eq!(b3.cartan_entry(1, 2), -2);
        assert_eq!(b3.cartan_entry(2, 1), -1);
    }

    #[test]
    fn validation() {
        assert!(Diagram::new(vec![0, 1], vec![Edge { a: 0, b: 0, mult: 1, arrow: None }]).is_err());
        assert!(Diagram::new(vec![0, 1], vec![Edge { a: 0, b: 2, mult: 1, arrow: None }]).is_err());
        assert!(Diagram::new(vec![0, 1], vec![Edge { a: 0, b: 1, mult: 2, arrow: None }]).is_err());
        let twice = vec![Edge { a: 0, b: 1, mult: 1, arrow: None }, Edge { a: 1, b: 0, mult: 1, arrow: None }];
        assert!(Diagram::new(vec![0, 1], twice).is_err());
    }

    #[test]
    fn subdiagrams_and_components() {
        let b3 = bour("B3");
        assert_eq!(b3.full_subdiagram(&[0, 1, 2]).unwrap(), b3);
        assert_eq!(classify_component(&b3.full_subdiagram(&[0, 1]).unwrap()).unwrap().simple_type, t("A2"));
        assert_eq!(classify_component(&b3.full_subdiagram(&[1, 2]).unwrap()).unwrap().simple_type, t("B2"));
        assert!(b3.full_subdiagram(&[5]).is_err());
        let a3 = bour("A3").full_subdiagram(&[0, 2]).unwrap();
        assert_eq!(a3.components().len(), 2);
        let f4 = bour("F4").full_subdiagram(&[0, 2, 3]).unwrap();
        let types: Vec<_> = f4.components().iter().map(|c| classify_component(c).unwrap().simple_type).collect();
        assert_eq!(types, vec![t("A1"), t("A2")]);
    }

    #[test]
    fn classify_recovers_bourbaki_types() {
        for ty in SimpleType::all_up_to(9) {
            let got = classify_component(&bour(&ty.to_string())).unwrap();
            let expect = match (ty.family(), ty.rank()) {
                (Family::D, 3) => t("A3"),
                (Family::C, 2) => t("B2"),
                _ => ty,
            };
            assert_eq!(got.simple_type, expect, "{ty}");
        }
        let path = Diagram::new(
            vec![0, 1, 2, 3],
            vec![
                Edge { a: 0, b: 1, mult: 1, arrow: None },
                Edge { a: 1, b: 2, mult: 1, arrow: None },
                Edge { a: 2, b: 3, mult: 1, arrow: None },
            ],
        )
        .unwrap();
        assert_eq!(classify_component(&path).unwrap().simple_type, t("A4"));
    }

    #[test]
    fn double_edge_direction_decides_b_or_c() {
        let mk = |arrow| {
            Diagram::new(
                vec![0, 1, 2],
                vec![Edge { a: 0, b: 1, mult: 1, arrow: None }, Edge { a: 1, b: 2, mult: 2, arrow: Some(arrow) }],
            )
            .unwrap()
        };
        assert_eq!(classify_component(&mk(2)).unwrap().simple_type, t("B3"));
        assert_eq!(classify_component(&mk(1)).unwrap().simple_type, t("C3"));
    }

    #[test]
    fn simple_ends() {
        assert!(bour("A1").is_simple_end(0).unwrap());
        assert!(bour("C4").is_simple_end(0).unwrap());
        let b2 = bour("B2");
        assert!(!b2.is_simple_end(0).unwrap());
        assert!(!b2.is_simple_end(1).unwrap());
        assert!(!bour("A3").is_simple_end(1).unwrap());
        assert!(bour("A3").is_simple_end(5).is_err());
    }

    #[test]
    fn d4_has_six_labelings() {
        assert_eq!(labelings_of_family(&bour("D4"), Family::D).unwrap().len(), 6);
        assert_eq!(labelings_of_family(&bour("E6"), Family::E).unwrap().len(), 2);
        assert_eq!(labelings_of_family(&bour("F4"), Family::F).unwrap().len(), 1);
    }

    #[test]
    fn induced_positions_break_triality() {
        let d5 = bour("D5");
        let levi = d5.full_subdiagram(&[1, 2, 3, 4]).unwrap();
        let induced = positions(&levi, 1, Family::D, LabelingRule::Induced).unwrap();
        assert_eq!(induced, BTreeSet::from([1]));
        let any = positions(&levi, 3, Family::D, LabelingRule::Any).unwrap();
        assert!(any.contains(&1));
        assert!(!positions(&levi, 3, Family::D, LabelingRule::Induced).unwrap().contains(&1));
    }

    #[test]
    fn smooth_ends() {
        let c3 = bour("C3");
        assert!(is_smooth_end(&c3, 0).unwrap());
        assert!(!is_smooth_end(&c3, 2).unwrap());
        let b2 = bour("B2");
        assert!(is_smooth_end(&b2, 1).unwrap());
        assert!(!is_smooth_end(&b2, 0).unwrap());
        assert!(is_smooth_end(&bour("A4"), 3).unwrap());
        assert!(!is_smooth_end(&bour("D4"), 0).unwrap());
    }
}
