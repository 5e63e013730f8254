//! Root systems of types A to G and their products, in exact integer coordinates.
//!
//! Vertices are 0-based positions: the Bourbaki simple root `α_k` of a simple
//! type is index `k - 1`. For products the factors are concatenated in order.
//! The Cartan matrix uses `a_ij = <α_i, α̌_j>`, so row `i` is `α_i` written in
//! fundamental weights.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.letter() == c.to_ascii_uppercase())
    }

    fn admits(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// A simple Dynkin type with Bourbaki numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if family.admits(rank) {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidType { family: family.letter(), rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Edges `(a, b, multiplicity, short end)` of the Bourbaki diagram, 0-based.
    /// The short end is the vertex the arrow points to.
    pub fn bourbaki_edges(self) -> Vec<(usize, usize, u8, Option<usize>)> {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|k| (k, k + 1, 1u8, None)).collect::<Vec<_>>();
        match self.family {
            Family::A => chain(n),
            Family::B => {
                let mut e = chain(n - 1);
                e.push((n - 2, n - 1, 2, Some(n - 1)));
                e
            }
            Family::C => {
                let mut e = chain(n - 1);
                e.push((n - 2, n - 1, 2, Some(n - 2)));
                e
            }
            Family::D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1, 1, None));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2, 1, None), (1, 3, 1, None)];
                e.extend((2..n - 1).map(|k| (k, k + 1, 1, None)));
                e
            }
            Family::F => vec![(0, 1, 1, None), (1, 2, 2, Some(2)), (2, 3, 1, None)],
            Family::G => vec![(0, 1, 3, Some(0))],
        }
    }

    /// Every valid type of rank at most `max_rank`, including the low-rank
    /// coincidences `B2`, `D3`.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// One representative per isomorphism class: `A1+, B3+, C2+, D4+, E6-8, F4, G2`.
    pub fn irredundant_up_to(max_rank: usize) -> Vec<SimpleType> {
        SimpleType::all_up_to(max_rank)
            .into_iter()
            .filter(|t| match t.family {
                Family::B => t.rank >= 3,
                Family::D => t.rank >= 4,
                _ => true,
            })
            .collect()
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadTypeLabel(s.to_string());
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        SimpleType::new(family, rank)
    }
}

impl TryFrom<String> for SimpleType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SimpleType> for String {
    fn from(t: SimpleType) -> String {
        t.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    /// Block-diagonal Cartan matrix of a product of simple types.
    pub fn of_product(factors: &[SimpleType]) -> CartanMatrix {
        let n: usize = factors.iter().map(|t| t.rank()).sum();
        let mut entries = vec![0; n * n];
        let mut offset = 0;
        for t in factors {
            for k in 0..t.rank() {
                entries[(offset + k) * n + offset + k] = 2;
            }
            for (a, b, mult, short) in t.bourbaki_edges() {
                let (a, b) = (a + offset, b + offset);
                match short {
                    None => {
                        entries[a * n + b] = -1;
                        entries[b * n + a] = -1;
                    }
                    Some(s) => {
                        let s = s + offset;
                        let l = if s == a { b } else { a };
                        entries[l * n + s] = -(mult as i64);
                        entries[s * n + l] = -1;
                    }
                }
            }
            offset += t.rank();
        }
        CartanMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `<α_i, α̌_j>`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(<[i64]>::to_vec).take(self.n).collect()
    }
}

pub fn cartan_matrix(t: SimpleType) -> CartanMatrix {
    CartanMatrix::of_product(&[t])
}

macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(n: usize) -> Self {
                $name(vec![0; n])
            }

            pub fn unit(n: usize, i: usize) -> Self {
                let mut v = vec![0; n];
                v[i] = 1;
                $name(v)
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                $name(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                $name(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Mul<&$name> for i64 {
            type Output = $name;
            fn mul(self, v: &$name) -> $name {
                $name(v.0.iter().map(|a| self * a).collect())
            }
        }
    };
}

int_vector!(
    /// Coordinates in the fundamental-weight basis.
    Weight
);
int_vector!(
    /// Coordinates in the simple-root basis.
    RootVec
);
int_vector!(
    /// Coordinates in the simple-coroot basis.
    CoweightVec
);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.0.iter().all(|&x| x <= 0)
    }
}

impl RootVec {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    /// True when the support lies inside `subset`.
    pub fn supported_on(&self, subset: &[usize]) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == 0 || subset.contains(&i))
    }
}

/// `<w, c>` for a weight and a coweight in dual bases.
pub fn pairing(w: &Weight, c: &CoweightVec) -> Result<i64> {
    if w.len() != c.len() {
        return Err(Error::DimensionMismatch { expected: w.len(), found: c.len() });
    }
    Ok(w.0.iter().zip(&c.0).map(|(a, b)| a * b).sum())
}

/// A word in the simple reflections, applied first letter first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }
}

/// Root data for an ordered product of simple types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    factors: Vec<SimpleType>,
    offsets: Vec<usize>,
    cartan: CartanMatrix,
    positive: Vec<RootVec>,
}

impl RootSystem {
    pub fn new(factors: Vec<SimpleType>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidDiagram("a root system needs at least one factor".into()));
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut acc = 0;
        for t in &factors {
            offsets.push(acc);
            acc += t.rank();
        }
        let cartan = CartanMatrix::of_product(&factors);
        let positive = root_string_closure(&cartan);
        Ok(RootSystem { factors, offsets, cartan, positive })
    }

    pub fn simple(t: SimpleType) -> Self {
        RootSystem::new(vec![t]).expect("one factor")
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.cartan.size()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Positive roots sorted by height, then coordinates.
    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive
    }

    /// Global index of Bourbaki vertex `bourbaki` (1-based) in factor `factor`.
    pub fn vertex(&self, factor: usize, bourbaki: usize) -> Result<usize> {
        let t = self.factors.get(factor).ok_or(Error::IndexOutOfRange { index: factor, rank: self.factors.len() })?;
        if bourbaki == 0 || bourbaki > t.rank() {
            return Err(Error::IndexOutOfRange { index: bourbaki, rank: t.rank() });
        }
        Ok(self.offsets[factor] + bourbaki - 1)
    }

    /// `(factor, Bourbaki index)` of a global vertex.
    pub fn vertex_ref(&self, v: usize) -> Result<(usize, usize)> {
        self.check(v)?;
        let f = self.offsets.iter().rposition(|&o| o <= v).expect("offsets start at 0");
        Ok((f, v - self.offsets[f] + 1))
    }

    /// Display name of the fundamental weight at `v`: `ω_k` in the first factor,
    /// `ω_0` for the trailing factor of a `simple × A1` product, primes otherwise.
    pub fn weight_name(&self, v: usize) -> String {
        let (f, k) = self.vertex_ref(v).expect("valid vertex");
        if f == 0 {
            format!("ω_{k}")
        } else if self.factors.len() == 2 && self.factors[1].rank() == 1 {
            "ω_0".to_string()
        } else {
            format!("ω_{k}{}", "'".repeat(f))
        }
    }

    /// Human-readable weight such as `ω_2-2ω_1-2ω_0`, positive terms first.
    pub fn format_weight(&self, w: &Weight) -> String {
        let mut terms: Vec<(i64, String)> =
            w.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (c, self.weight_name(i))).collect();
        if terms.is_empty() {
            return "0".to_string();
        }
        terms.sort_by_key(|(c, _)| *c < 0);
        let mut out = String::new();
        for (idx, (c, name)) in terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if idx > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            if mag == 1 {
                out.push_str(&format!("{sign}{name}"));
            } else {
                out.push_str(&format!("{sign}{mag}{name}"));
            }
        }
        out
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank(), found: len })
        }
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::unit(self.rank(), i)
    }

    /// `α_i` in fundamental-weight coordinates.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|j| self.cartan.get(i, j)).collect())
    }

    pub fn simple_coroot(&self, i: usize) -> CoweightVec {
        CoweightVec::unit(self.rank(), i)
    }

    /// Re-expresses a root-basis vector in fundamental weights.
    pub fn root_to_weight(&self, r: &RootVec) -> Weight {
        Weight((0..self.rank()).map(|j| (0..self.rank()).map(|i| r.0[i] * self.cartan.get(i, j)).sum()).collect())
    }

    /// Half-sum of positive roots on `subset`, as `Σ ω_i`.
    pub fn rho(&self, subset: &[usize]) -> Weight {
        let mut w = Weight::zero(self.rank());
        for &i in subset {
            w.0[i] = 1;
        }
        w
    }

    /// `s_i(w) = w - <w, α̌_i> α_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        self.check(i)?;
        self.check_len(w.len())?;
        Ok(self.reflect_unchecked(i, w))
    }

    fn reflect_unchecked(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        Weight(w.0.iter().enumerate().map(|(j, &x)| x - c * self.cartan.get(i, j)).collect())
    }

    /// `s_i(c) = c - <α_i, c> α̌_i`.
    pub fn reflect_coweight(&self, i: usize, c: &CoweightVec) -> Result<CoweightVec> {
        self.check(i)?;
        self.check_len(c.len())?;
        Ok(self.reflect_coweight_unchecked(i, c))
    }

    fn reflect_coweight_unchecked(&self, i: usize, c: &CoweightVec) -> CoweightVec {
        let p: i64 = (0..self.rank()).map(|j| self.cartan.get(i, j) * c.0[j]).sum();
        let mut out = c.clone();
        out.0[i] -= p;
        out
    }

    /// `s_i(r) = r - <r, α̌_i> α_i` in root coordinates.
    pub fn reflect_root(&self, i: usize, r: &RootVec) -> Result<RootVec> {
        self.check(i)?;
        self.check_len(r.len())?;
        let p = self.root_coroot_pairing(r, i);
        let mut out = r.clone();
        out.0[i] -= p;
        Ok(out)
    }

    fn root_coroot_pairing(&self, r: &RootVec, i: usize) -> i64 {
        (0..self.rank()).map(|j| r.0[j] * self.cartan.get(j, i)).sum()
    }

    fn check_word(&self, word: &WeylWord) -> Result<()> {
        word.0.iter().try_for_each(|&i| self.check(i))
    }

    pub fn act_on_weight(&self, word: &WeylWord, w: &Weight) -> Result<Weight> {
        self.check_word(word)?;
        self.check_len(w.len())?;
        Ok(word.0.iter().fold(w.clone(), |acc, &i| self.reflect_unchecked(i, &acc)))
    }

    pub fn act_on_coweight(&self, word: &WeylWord, c: &CoweightVec) -> Result<CoweightVec> {
        self.check_word(word)?;
        self.check_len(c.len())?;
        Ok(word.0.iter().fold(c.clone(), |acc, &i| self.reflect_coweight_unchecked(i, &acc)))
    }

    pub fn act_on_root(&self, word: &WeylWord, r: &RootVec) -> Result<RootVec> {
        self.check_word(word)?;
        word.0.iter().try_fold(r.clone(), |acc, &i| self.reflect_root(i, &acc))
    }

    /// Reduced word for the longest element of the parabolic subgroup `W_I`.
    ///
    /// Starts at `ρ_I` and reflects along the smallest `i ∈ I` with a positive
    /// coordinate until the weight is `I`-antidominant.
    pub fn longest_element_word(&self, subset: &[usize]) -> Result<WeylWord> {
        subset.iter().try_for_each(|&i| self.check(i))?;
        let mut sorted: Vec<usize> = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut w = self.rho(&sorted);
        let mut letters = Vec::new();
        while let Some(&i) = sorted.iter().find(|&&i| w.0[i] > 0) {
            w = self.reflect_unchecked(i, &w);
            letters.push(i);
        }
        Ok(WeylWord(letters))
    }

    /// The dominant weight in the orbit of `w` and a word carrying `w` to it.
    pub fn dominant_representative(&self, w: &Weight) -> Result<(Weight, WeylWord)> {
        self.check_len(w.len())?;
        let mut cur = w.clone();
        let mut letters = Vec::new();
        while let Some(i) = cur.0.iter().position(|&x| x < 0) {
            cur = self.reflect_unchecked(i, &cur);
            letters.push(i);
        }
        Ok((cur, WeylWord(letters)))
    }

    pub fn count_positive_roots_on(&self, subset: &[usize]) -> usize {
        self.positive.iter().filter(|r| r.supported_on(subset)).count()
    }

    /// `#(R+ \ R+_J)`, the dimension of `G/P_J`.
    pub fn dim_flag_variety(&self, levi: &[usize]) -> Result<usize> {
        levi.iter().try_for_each(|&i| self.check(i))?;
        Ok(self.positive.len() - self.count_positive_roots_on(levi))
    }

    /// All vertices except those listed.
    pub fn complement(&self, omit: &[usize]) -> Vec<usize> {
        (0..self.rank()).filter(|i| !omit.contains(i)).collect()
    }
}

/// Grows positive roots height by height: `r + α_i` is a root when the
/// `α_i`-string through `r` extends upward (`p - <r, α̌_i> > 0`).
fn root_string_closure(cartan: &CartanMatrix) -> Vec<RootVec> {
    let n = cartan.size();
    let mut known: HashSet<RootVec> = HashSet::new();
    let mut all = Vec::new();
    let mut layer: Vec<RootVec> = (0..n).map(|i| RootVec::unit(n, i)).collect();
    for r in &layer {
        known.insert(r.clone());
    }
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for r in &layer {
            for i in 0..n {
                if r.0[i] == 1 && r.height() == 1 {
                    continue;
                }
                let mut p = 0;
                loop {
                    let mut down = r.clone();
                    down.0[i] -= p + 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| r.0[j] * cartan.get(j, i)).sum();
                if p - pair > 0 {
                    let mut up = r.clone();
                    up.0[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        layer = next;
    }
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    all
}

pub fn positive_roots(t: SimpleType) -> Vec<RootVec> {
    RootSystem::simple(t).positive.clone()
}

pub fn longest_element_word(t: SimpleType, subset: &[usize]) -> Result<WeylWord> {
    RootSystem::simple(t).longest_element_word(subset)
}

pub fn dim_flag_variety(t: SimpleType, levi: &[usize]) -> Result<usize> {
    RootSystem::simple(t).dim_flag_variety(levi)
}
