//! Complex octonions in the basis `(1, e_1, ..., e_7)`, the `z`-basis of
//! `Im(O)`, and a few linear-algebra facts about them.

use std::fmt::{self, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank};
use crate::scalar::{Field, Qi2, Scalar};
use crate::ExactScalar;

/// `E_TABLE[a-1][b-1] = (sign, k)` means `e_a e_b = sign * e_k`, with `e_0 = 1`.
pub const E_TABLE: [[(i8, u8); 7]; 7] = [
    [(-1, 0), (1, 4), (1, 7), (-1, 2), (1, 6), (-1, 5), (-1, 3)],
    [(-1, 4), (-1, 0), (1, 5), (1, 1), (-1, 3), (1, 7), (-1, 6)],
    [(-1, 7), (-1, 5), (-1, 0), (1, 6), (1, 2), (-1, 4), (1, 1)],
    [(1, 2), (-1, 1), (-1, 6), (-1, 0), (1, 7), (1, 3), (-1, 5)],
    [(-1, 6), (1, 3), (-1, 2), (-1, 7), (-1, 0), (1, 1), (1, 4)],
    [(1, 5), (-1, 7), (1, 4), (-1, 3), (-1, 1), (-1, 0), (1, 2)],
    [(1, 3), (1, 6), (-1, 1), (1, 5), (-1, 4), (-1, 2), (-1, 0)],
];

/// `e_a e_b` for `a, b` in `0..8`, as `(sign, k)`.
pub fn basis_product(a: usize, b: usize) -> (i64, usize) {
    match (a, b) {
        (0, _) => (1, b),
        (_, 0) => (1, a),
        _ => {
            let (s, k) = E_TABLE[a - 1][b - 1];
            (s as i64, k as usize)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Octonion<S> {
    coords: [S; 8],
}

impl<S: Scalar> Octonion<S> {
    pub fn new(coords: [S; 8]) -> Self {
        Octonion { coords }
    }

    pub fn zero() -> Self {
        Octonion { coords: std::array::from_fn(|_| S::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// `e_k`, with `e_0 = 1`.
    pub fn basis(k: usize) -> Self {
        let mut x = Self::zero();
        x.coords[k] = S::one();
        x
    }

    pub fn coords(&self) -> &[S; 8] {
        &self.coords
    }

    pub fn re(&self) -> S {
        self.coords[0].clone()
    }

    pub fn im(&self) -> Self {
        let mut x = self.clone();
        x.coords[0] = S::zero();
        x
    }

    pub fn is_imaginary(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(S::is_zero)
    }

    pub fn conj(&self) -> Self {
        let mut x = -self.clone();
        x.coords[0] = self.coords[0].clone();
        x
    }

    pub fn scale(&self, s: &S) -> Self {
        Octonion { coords: std::array::from_fn(|k| s.clone() * self.coords[k].clone()) }
    }

    /// `q(x) = sum of x_k^2` (complex bilinear, not hermitian).
    pub fn norm_q(&self) -> S {
        bilinear(self, self)
    }
}

/// Polarization of `q`: `B(x, y) = sum x_k y_k`, so `B(x, x) = q(x)`.
pub fn bilinear<S: Scalar>(x: &Octonion<S>, y: &Octonion<S>) -> S {
    x.coords.iter().zip(&y.coords).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

pub fn norm_q<S: Scalar>(x: &Octonion<S>) -> S {
    x.norm_q()
}

impl<S: Scalar> Add for Octonion<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.coords;
        for (a, b) in c.iter_mut().zip(o.coords) {
            *a = a.clone() + b;
        }
        Octonion { coords: c }
    }
}

impl<S: Scalar> Sub for Octonion<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion { coords: self.coords.map(|a| -a) }
    }
}

impl<S: Scalar> Mul for &Octonion<S> {
    type Output = Octonion<S>;
    fn mul(self, o: &Octonion<S>) -> Octonion<S> {
        let mut out = Octonion::<S>::zero();
        for a in 0..8 {
            if self.coords[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if o.coords[b].is_zero() {
                    continue;
                }
                let (s, k) = basis_product(a, b);
                let term = self.coords[a].clone() * o.coords[b].clone();
                out.coords[k] = out.coords[k].clone() + if s > 0 { term } else { -term };
            }
        }
        out
    }
}

impl<S: Scalar> Mul for Octonion<S> {
    type Output = Octonion<S>;
    fn mul(self, o: Octonion<S>) -> Octonion<S> {
        &self * &o
    }
}

pub fn mul<S: Scalar>(x: &Octonion<S>, y: &Octonion<S>) -> Octonion<S> {
    x * y
}

impl<S: Scalar + Display> Display for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            let unit = if k == 0 { String::new() } else { format!("e{k}") };
            if c.is_one() && k > 0 {
                write!(f, "{unit}")?;
            } else if k == 0 {
                write!(f, "[{c}]")?;
            } else {
                write!(f, "[{c}]{unit}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `Im(z z')` for imaginary `z`, `z'`.
pub fn wedge_to_im<S: Scalar>(z: &Octonion<S>, zp: &Octonion<S>) -> Result<Octonion<S>> {
    if !z.is_imaginary() || !zp.is_imaginary() {
        return Err(Error::NotImaginary);
    }
    Ok((z * zp).im())
}

/// Pairs `(a, b)`, `1 <= a < b <= 7`, indexing the basis `e_a ∧ e_b` of `∧²Im(O)`.
pub fn wedge_basis() -> Vec<(usize, usize)> {
    (1..8).flat_map(|a| (a + 1..8).map(move |b| (a, b))).collect()
}

/// The `7 x 21` matrix of `z ∧ z' -> Im(z z')` in the bases `e_1..e_7` and `e_a ∧ e_b`.
pub fn wedge_map_matrix<F: Field>() -> Vec<Vec<F>> {
    let cols = wedge_basis();
    let mut m = vec![vec![F::zero(); cols.len()]; 7];
    for (c, &(a, b)) in cols.iter().enumerate() {
        let img = wedge_to_im(&Octonion::<F>::basis(a), &Octonion::basis(b)).expect("basis vectors are imaginary");
        for k in 1..8 {
            m[k - 1][c] = img.coords[k].clone();
        }
    }
    m
}

/// Dimension of the kernel of `∧²Im(O) -> Im(O)`.
pub fn wedge_kernel_dim<F: Field>() -> usize {
    21 - rank(&wedge_map_matrix::<F>())
}

/// A `7 x 7` matrix acting on `Im(O)` in the basis `e_1..e_7`.
pub type ImMatrix<F> = Vec<Vec<F>>;

fn apply<F: Field>(d: &ImMatrix<F>, v: &[F]) -> Vec<F> {
    d.iter().map(|row| row.iter().zip(v).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())).collect()
}

fn im_coords<F: Field>(x: &Octonion<F>) -> Vec<F> {
    x.coords[1..].to_vec()
}

/// Basis of the derivations of `O`, as matrices on `Im(O)` (a derivation kills 1).
///
/// Unknowns are the 49 entries `D[k][a]`; each product `e_a e_b` gives the
/// linear conditions `D(e_a e_b) = D(e_a) e_b + e_a D(e_b)`.
pub fn derivation_algebra<F: Field>() -> Vec<ImMatrix<F>> {
    static CACHE: OnceLock<Vec<ImMatrix<Rational64>>> = OnceLock::new();
    let conv = |x: &Rational64| F::from_int(*x.numer()) / F::from_int(*x.denom());
    CACHE
        .get_or_init(derivation_equations_solved)
        .iter()
        .map(|d| d.iter().map(|row| row.iter().map(conv).collect()).collect())
        .collect()
}

// Coefficients are small integers, so machine-size rationals suffice.
fn derivation_equations_solved() -> Vec<ImMatrix<Rational64>> {
    type F = Rational64;
    let var = |k: usize, a: usize| k * 7 + a;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for a in 1..8 {
        for b in 1..8 {
            // Coefficient of each unknown in each of the 8 output coordinates.
            let mut eq = vec![vec![F::zero(); 49]; 8];
            let (s, k) = basis_product(a, b);
            if k > 0 {
                for out in 1..8 {
                    eq[out][var(out - 1, k - 1)] += F::from_int(s);
                }
            }
            // - D(e_a) e_b = - sum_j D[j][a] e_j e_b
            for j in 1..8 {
                let (s1, k1) = basis_product(j, b);
                eq[k1][var(j - 1, a - 1)] -= F::from_int(s1);
                let (s2, k2) = basis_product(a, j);
                eq[k2][var(j - 1, b - 1)] -= F::from_int(s2);
            }
            rows.extend(eq.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
    }
    nullspace(&rows, 49).into_iter().map(|v| v.chunks(7).map(<[F]>::to_vec).collect()).collect()
}

/// Dimension of `{D in der : D(W) ⊂ W}` for `W` spanned by imaginary octonions.
pub fn stabilizer_dim<F: Field>(der: &[ImMatrix<F>], span: &[Octonion<F>]) -> usize {
    let w: Vec<Vec<F>> = span.iter().map(im_coords).collect();
    // Linear functionals vanishing on W.
    let annihilator = nullspace(&w, 7);
    let mut rows = Vec::new();
    for f in &annihilator {
        for v in &w {
            rows.push(der.iter().map(|d| dot(f, &apply(d, v))).collect::<Vec<F>>());
        }
    }
    der.len() - rank(&rows)
}

/// Dimension of the stabilizer of the line through a bivector `v` (coordinates
/// on [`wedge_basis`]) under the induced action on `∧²Im(O)`.
pub fn line_stabilizer_dim<F: Field>(der: &[ImMatrix<F>], v: &[F]) -> usize {
    let basis = wedge_basis();
    let act = |d: &ImMatrix<F>| -> Vec<F> {
        let mut out = vec![F::zero(); basis.len()];
        for (c, &(a, b)) in basis.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            // D(e_a ∧ e_b) = D e_a ∧ e_b + e_a ∧ D e_b
            for j in 1..8 {
                add_wedge(&mut out, &basis, j, b, v[c].clone() * d[j - 1][a - 1].clone());
                add_wedge(&mut out, &basis, a, j, v[c].clone() * d[j - 1][b - 1].clone());
            }
        }
        out
    };
    let annihilator = nullspace(&[v.to_vec()], basis.len());
    let images: Vec<Vec<F>> = der.iter().map(act).collect();
    let rows: Vec<Vec<F>> = annihilator.iter().map(|f| images.iter().map(|img| dot(f, img)).collect()).collect();
    der.len() - rank(&rows)
}

fn add_wedge<F: Field>(out: &mut [F], basis: &[(usize, usize)], a: usize, b: usize, c: F) {
    if a == b || c.is_zero() {
        return;
    }
    let (lo, hi, sign) = if a < b { (a, b, c) } else { (b, a, -c) };
    let idx = basis.iter().position(|&p| p == (lo, hi)).expect("pair in basis");
    out[idx] = out[idx].clone() + sign;
}

fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Bivector `x ∧ y` in the [`wedge_basis`] coordinates.
pub fn wedge<F: Field>(x: &Octonion<F>, y: &Octonion<F>) -> Vec<F> {
    let basis = wedge_basis();
    basis
        .iter()
        .map(|&(a, b)| x.coords[a].clone() * y.coords[b].clone() - x.coords[b].clone() * y.coords[a].clone())
        .collect()
}

/// `q(xy) = q(x) q(y)`.
pub fn composition_holds<S: Scalar>(x: &Octonion<S>, y: &Octonion<S>) -> bool {
    (x * y).norm_q() == x.norm_q() * y.norm_q()
}

/// `x(xy) = (xx)y` and `(yx)x = y(xx)`.
pub fn alternative_holds<S: Scalar>(x: &Octonion<S>, y: &Octonion<S>) -> bool {
    let xx = x * x;
    x * &(x * y) == &xx * y && &(y * x) * x == y * &xx
}

/// A random exact octonion whose coordinates have small integer parts.
pub fn random_exact<R: Rng>(rng: &mut R) -> Octonion<ExactScalar> {
    Octonion::new(std::array::from_fn(|_| {
        let mut part = || ExactScalar::from_int(rng.gen_range(-3..=3));
        let (a, b, c, d) = (part(), part(), part(), part());
        a + b * ExactScalar::i() + c * ExactScalar::sqrt2() + d * ExactScalar::i() * ExactScalar::sqrt2()
    }))
}

/// Indices of the `z`-basis in table order.
pub const Z_NAMES: [i8; 7] = [0, 1, 2, 3, -1, -2, -3];

/// The tabulated `z`-table: entry `[r][c]` is `z_r z_c` in terms of `1, z_k`.
pub const Z_TABLE: [[&str; 7]; 7] = [
    ["1", "z1", "z2", "-z3", "-z-1", "-z-2", "z-3"],
    ["-z1", "0", "z3", "0", "-1-z0", "0", "-2z-2"],
    ["-z2", "-z3", "0", "0", "0", "-1-z0", "2z-1"],
    ["z3", "0", "0", "0", "2z2", "-2z1", "-2+2z0"],
    ["z-1", "-1+z0", "0", "-2z2", "0", "z-3", "0"],
    ["z-2", "0", "-1+z0", "2z1", "-z-3", "0", "0"],
    ["-z-3", "2z-2", "-2z-1", "-2-2z0", "0", "0", "0"],
];

/// A term of a `z`-table entry: coefficient times `1` (`None`) or `z_k`.
pub type ZTerm = (i64, Option<i8>);

/// Parses entries such as `-2+2z0` or `-z-3`.
pub fn parse_z_entry(s: &str) -> Vec<ZTerm> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            sign = if bytes[i] == b'-' { -1 } else { 1 };
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let num: Option<i64> = s[start..i].parse().ok();
        if i < bytes.len() && bytes[i] == b'z' {
            i += 1;
            let zs = i;
            if i < bytes.len() && bytes[i] == b'-' {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k: i8 = s[zs..i].parse().expect("z index");
            terms.push((sign * num.unwrap_or(1), Some(k)));
        } else {
            let n = num.expect("number");
            if n != 0 {
                terms.push((sign * n, None));
            }
        }
    }
    terms
}

/// One `z`-vector pattern `scale * (e_real + sign * i * e_imag)`, or `sign * i * e_imag`
/// when `real` is `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZPattern {
    pub real: Option<usize>,
    pub imag: usize,
    pub sign: i8,
    pub inv_sqrt2: bool,
}

impl ZPattern {
    pub fn to_octonion(self) -> Octonion<ExactScalar> {
        self.over()
    }

    fn over<R: Field>(self) -> Octonion<Qi2<R>> {
        let mut x = Octonion::zero();
        x.coords[self.imag] = Qi2::from_int(self.sign as i64) * Qi2::i();
        if let Some(r) = self.real {
            x.coords[r] = Qi2::one();
        }
        if self.inv_sqrt2 {
            x = x.scale(&Qi2::inv_sqrt2());
        }
        x
    }

    pub fn render(self) -> String {
        let i_part = format!("{}i·e{}", if self.sign < 0 { "-" } else { "+" }, self.imag);
        let body = match self.real {
            Some(r) => format!("e{r} {} i·e{}", if self.sign < 0 { "-" } else { "+" }, self.imag),
            None => i_part.trim_start_matches('+').to_string(),
        };
        if self.inv_sqrt2 {
            format!("({body})/√2")
        } else {
            body
        }
    }

    fn mirrored(self) -> ZPattern {
        ZPattern { sign: -self.sign, ..self }
    }
}

/// `z`-vectors as tabulated, in [`Z_NAMES`] order.
pub fn tabulated_z_patterns() -> [ZPattern; 7] {
    let p = |real, imag, sign, inv_sqrt2| ZPattern { real, imag, sign, inv_sqrt2 };
    [
        p(None, 7, 1, false),
        p(Some(1), 3, 1, true),
        p(Some(2), 6, 1, true),
        p(Some(4), 6, -1, false),
        p(Some(1), 3, -1, true),
        p(Some(2), 6, -1, true),
        p(Some(4), 6, 1, false),
    ]
}

pub fn z_basis_from(patterns: &[ZPattern; 7]) -> [Octonion<ExactScalar>; 7] {
    basis_over(patterns)
}

fn basis_over<R: Field>(patterns: &[ZPattern; 7]) -> [Octonion<Qi2<R>>; 7] {
    std::array::from_fn(|k| patterns[k].over())
}

/// The tabulated `z`-vectors in `e`-coordinates.
pub fn z_basis() -> [Octonion<ExactScalar>; 7] {
    z_basis_from(&tabulated_z_patterns())
}

fn z_index(k: i8) -> usize {
    Z_NAMES.iter().position(|&n| n == k).expect("valid z index")
}

fn entry_vector<S: Scalar>(terms: &[ZTerm], basis: &[Octonion<S>; 7]) -> Octonion<S> {
    terms.iter().fold(Octonion::zero(), |acc, &(c, key)| {
        let v = match key {
            None => Octonion::one(),
            Some(k) => basis[z_index(k)].clone(),
        };
        acc + v.scale(&S::from_int(c))
    })
}

fn parsed_table() -> &'static [[Vec<ZTerm>; 7]; 7] {
    static CACHE: OnceLock<[[Vec<ZTerm>; 7]; 7]> = OnceLock::new();
    CACHE.get_or_init(|| std::array::from_fn(|r| std::array::from_fn(|c| parse_z_entry(Z_TABLE[r][c]))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZEntry {
    pub row: i8,
    pub col: i8,
    pub expected: String,
    pub computed: String,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZTableReport {
    pub basis: Vec<String>,
    /// Whether the seven vectors are linearly independent.
    pub is_basis: bool,
    pub entries: Vec<ZEntry>,
    /// Ordered pairs `(row, col)` whose tabulated entry disagrees with the product.
    pub mismatches: Vec<(i8, i8)>,
    /// Pairs whose tabulated entries violate `z_b z_a = -z_a z_b - 2 B(z_a, z_b)`.
    pub antisymmetry_violations: Vec<(i8, i8)>,
}

fn mismatch_pairs<S: Scalar>(basis: &[Octonion<S>; 7]) -> Vec<(i8, i8)> {
    let table = parsed_table();
    let mut out = Vec::new();
    for (r, &zr) in Z_NAMES.iter().enumerate() {
        for (c, &zc) in Z_NAMES.iter().enumerate() {
            let expect = entry_vector(&table[r][c], basis);
            if &basis[r] * &basis[c] != expect {
                out.push((zr, zc));
            }
        }
    }
    out
}

/// Compares every product `z_r z_c` with the tabulated table.
pub fn verify_z_table(patterns: &[ZPattern; 7]) -> ZTableReport {
    let basis = z_basis_from(patterns);
    let mut entries = Vec::new();
    for (r, &zr) in Z_NAMES.iter().enumerate() {
        for (c, &zc) in Z_NAMES.iter().enumerate() {
            let product = &basis[r] * &basis[c];
            let expect = entry_vector(&parse_z_entry(Z_TABLE[r][c]), &basis);
            entries.push(ZEntry {
                row: zr,
                col: zc,
                expected: Z_TABLE[r][c].to_string(),
                computed: product.to_string(),
                matched: product == expect,
            });
        }
    }
    let mismatches = entries.iter().filter(|e| !e.matched).map(|e| (e.row, e.col)).collect();
    let mut antisymmetry_violations = Vec::new();
    for r in 0..7 {
        for c in r..7 {
            let ab = entry_vector(&parse_z_entry(Z_TABLE[r][c]), &basis);
            let ba = entry_vector(&parse_z_entry(Z_TABLE[c][r]), &basis);
            let b = bilinear(&basis[r], &basis[c]);
            let rhs = -ab - Octonion::one().scale(&(ExactScalar::from_int(2) * b));
            if ba != rhs {
                antisymmetry_violations.push((Z_NAMES[r], Z_NAMES[c]));
            }
        }
    }
    let rows: Vec<Vec<ExactScalar>> = basis.iter().map(|z| z.coords.to_vec()).collect();
    ZTableReport {
        basis: patterns.iter().map(|p| p.render()).collect(),
        is_basis: rank(&rows) == 7,
        entries,
        mismatches,
        antisymmetry_violations,
    }
}

/// One slot change made by [`repair_z_basis`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZRepair {
    pub z: i8,
    pub tabulated: String,
    pub repaired: String,
}

fn slot_candidates(current: ZPattern) -> Vec<ZPattern> {
    let mut out = Vec::new();
    let reals: Vec<Option<usize>> = match current.real {
        None => vec![None],
        Some(_) => (1..8).map(Some).collect(),
    };
    for real in reals {
        for imag in 1..8 {
            if real == Some(imag) {
                continue;
            }
            for sign in [1, -1] {
                out.push(ZPattern { real, imag, sign, inv_sqrt2: current.inv_sqrt2 });
            }
        }
    }
    out
}

/// Coordinate descent over index and sign variants of each `z`-vector (the
/// pair `z_k`, `z_-k` moves together), minimising table mismatches. Keeps the
/// current choice on ties so unchanged slots stay as tabulated.
pub fn repair_z_basis() -> ([ZPattern; 7], Vec<ZRepair>) {
    static CACHE: OnceLock<([ZPattern; 7], Vec<ZRepair>)> = OnceLock::new();
    CACHE.get_or_init(search_z_basis).clone()
}

fn search_z_basis() -> ([ZPattern; 7], Vec<ZRepair>) {
    let tabulated = tabulated_z_patterns();
    let mut cur = tabulated;
    // Entries stay tiny, so machine-size rationals are exact here.
    let score = |p: &[ZPattern; 7]| mismatch_pairs(&basis_over::<Rational64>(p)).len();
    let mut best = score(&cur);
    // Slots: z_0 alone, then (z_k, z_-k) for k = 1, 2, 3.
    let slots: [(usize, Option<usize>); 4] = [(0, None), (1, Some(4)), (2, Some(5)), (3, Some(6))];
    loop {
        let mut improved = false;
        for &(pos, partner) in &slots {
            for cand in slot_candidates(cur[pos]) {
                let mut trial = cur;
                trial[pos] = cand;
                if let Some(q) = partner {
                    trial[q] = cand.mirrored();
                }
                let trial_score = score(&trial);
                if trial_score < best {
                    best = trial_score;
                    cur = trial;
                    improved = true;
                }
            }
        }
        if !improved || best == 0 {
            break;
        }
    }
    let changes = (0..7)
        .filter(|&k| cur[k] != tabulated[k])
        .map(|k| ZRepair { z: Z_NAMES[k], tabulated: tabulated[k].render(), repaired: cur[k].render() })
        .collect();
    (cur, changes)
}

/// `<x, y> = sum_k x_k y_-k - x_-k y_k` on `C^{2n}` with coordinates
/// ordered `e_1..e_n, e_-1..e_-n`.
pub fn symplectic_form<S: Scalar>(x: &[S], y: &[S]) -> Result<S> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    if x.len() % 2 != 0 {
        return Err(Error::DimensionMismatch { expected: x.len() + 1, found: x.len() });
    }
    let n = x.len() / 2;
    Ok((0..n).fold(S::zero(), |acc, k| acc + x[k].clone() * y[n + k].clone() - x[n + k].clone() * y[k].clone()))
}

/// `q(x1 ⊗ f1 + x2 ⊗ f2)` for the quadratic form on `C^{2n} ⊗ C^2` induced by
/// the two symplectic forms, computed as half the bilinear form on the diagonal.
pub fn symplectic_tensor_form<F: Field>(x1: &[F], x2: &[F]) -> Result<F> {
    let cols = [x1, x2];
    // Symplectic form on C^2 with <f1, f2> = 1.
    let omega2 = |a: usize, b: usize| -> i64 {
        match (a, b) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    };
    let mut total = F::zero();
    for a in 0..2 {
        for b in 0..2 {
            let w = omega2(a, b);
            if w != 0 {
                total = total + F::from_int(w) * symplectic_form(cols[a], cols[b])?;
            }
        }
    }
    Ok(total / F::from_int(2))
}

/// Lie-algebra dimension data for the two `G_2`-orbits on isotropic planes of `Im(O)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G2OrbitReport {
    pub dim_g2: usize,
    pub kernel_dim: usize,
    pub generic_plane_stabilizer: usize,
    pub generic_orbit: usize,
    pub null_plane_stabilizer: usize,
    pub null_orbit: usize,
    pub line_stabilizer: usize,
    /// Whether `z_1 ∧ z_2 + z_0 ∧ z_3` lies in the kernel of the wedge map.
    pub bivector_in_kernel: bool,
}

/// Stabilizer dimensions in `der(O)` for `E = <z_1, z_2>`, the null plane
/// `<z_1, z_3>` and the line of `z_1 ∧ z_2 + z_0 ∧ z_3`, in the given `z`-basis.
pub fn g2_orbit_report(patterns: &[ZPattern; 7]) -> G2OrbitReport {
    let der = derivation_algebra::<ExactScalar>();
    let z = z_basis_from(patterns);
    let (z0, z1, z2, z3) = (&z[0], &z[1], &z[2], &z[3]);
    let e_stab = stabilizer_dim(&der, &[z1.clone(), z2.clone()]);
    let null_stab = stabilizer_dim(&der, &[z1.clone(), z3.clone()]);
    let biv: Vec<ExactScalar> = wedge(z1, z2).into_iter().zip(wedge(z0, z3)).map(|(a, b)| a + b).collect();
    let image = apply(&wedge_map_matrix::<ExactScalar>(), &biv);
    G2OrbitReport {
        dim_g2: der.len(),
        kernel_dim: wedge_kernel_dim::<ExactScalar>(),
        generic_plane_stabilizer: e_stab,
        generic_orbit: der.len() - e_stab,
        null_plane_stabilizer: null_stab,
        null_orbit: der.len() - null_stab,
        line_stabilizer: line_stabilizer_dim(&der, &biv),
        bivector_in_kernel: image.iter().all(|x| x.is_zero()),
    }
}
