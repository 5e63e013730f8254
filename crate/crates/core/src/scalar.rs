//! Scalar traits shared by the linear algebra and octonion code, plus the
//! exact field `Q(i, sqrt 2)`.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// A commutative ring element usable as a coordinate.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: i64) -> Self;

    /// Zero test used by elimination. Exact types use `is_zero`; floats use a tolerance.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

/// A scalar that also supports division by nonzero elements.
pub trait Field: Scalar + Div<Output = Self> {}

impl<T: Scalar + Div<Output = T>> Field for T {}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

impl Scalar for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-4
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Debug + Integer + Signed + FromPrimitive,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer fits the backing type"))
    }
}

/// Element `a + b*i + c*s + d*i*s` of `Q(i, s)` with `i^2 = -1`, `s^2 = 2`,
/// over a rational type `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Qi2<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl<R: Field> Qi2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Qi2 { a, b, c, d }
    }

    pub fn rational(a: R) -> Self {
        Qi2::new(a, R::zero(), R::zero(), R::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Qi2::new(R::zero(), R::one(), R::zero(), R::zero())
    }

    pub fn sqrt2() -> Self {
        Qi2::new(R::zero(), R::zero(), R::one(), R::zero())
    }

    /// `1 / sqrt 2`.
    pub fn inv_sqrt2() -> Self {
        Qi2::new(R::zero(), R::zero(), R::one() / R::from_int(2), R::zero())
    }

    /// Complex conjugate (`i -> -i`).
    pub fn conj(&self) -> Self {
        Qi2::new(self.a.clone(), -self.b.clone(), self.c.clone(), -self.d.clone())
    }

    fn two() -> R {
        R::from_int(2)
    }

    /// Inverse, or `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x = u + v i with u = a + c s, v = b + d s; 1/x = (u - v i) / (u^2 + v^2).
        let two = Self::two();
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let p = a.clone() * a.clone()
            + b.clone() * b.clone()
            + two.clone() * c.clone() * c.clone()
            + two.clone() * d.clone() * d.clone();
        let r = two.clone() * (a.clone() * c.clone() + b.clone() * d.clone());
        let den = p.clone() * p.clone() - two * r.clone() * r.clone();
        let n_inv = Qi2::new(p / den.clone(), R::zero(), -r / den, R::zero());
        Some(self.conj() * n_inv)
    }
}

impl<R: Field> Zero for Qi2<R> {
    fn zero() -> Self {
        Qi2::new(R::zero(), R::zero(), R::zero(), R::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl<R: Field> One for Qi2<R> {
    fn one() -> Self {
        Qi2::rational(R::one())
    }
}

impl<R: Field> Add for Qi2<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Qi2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl<R: Field> Sub for Qi2<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Qi2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl<R: Field> Neg for Qi2<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Qi2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<R: Field> Mul for Qi2<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = Self::two();
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        let a = a1.clone() * a2.clone() - b1.clone() * b2.clone() + two.clone() * c1.clone() * c2.clone()
            - two.clone() * d1.clone() * d2.clone();
        let b = a1.clone() * b2.clone()
            + b1.clone() * a2.clone()
            + two.clone() * c1.clone() * d2.clone()
            + two * d1.clone() * c2.clone();
        let c = a1.clone() * c2.clone() + c1.clone() * a2.clone() - b1.clone() * d2.clone() - d1.clone() * b2.clone();
        let d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
        Qi2::new(a, b, c, d)
    }
}

impl<R: Field> Div for Qi2<R> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inverse().expect("division by zero in Q(i, sqrt 2)")
    }
}

impl<R: Field> Scalar for Qi2<R> {
    fn from_int(v: i64) -> Self {
        Qi2::rational(R::from_int(v))
    }
}

impl<R: Field + Display> Display for Qi2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [(&self.a, ""), (&self.b, "i"), (&self.c, "√2"), (&self.d, "i√2")];
        let mut wrote = false;
        for (coef, unit) in parts {
            if coef.is_zero() {
                continue;
            }
            if wrote {
                write!(f, "+")?;
            }
            if unit.is_empty() {
                write!(f, "{coef}")?;
            } else if coef.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "({coef}){unit}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = Qi2<BigRational>;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Q {
        Qi2::new(BigRational::from_int(a), BigRational::from_int(b), BigRational::from_int(c), BigRational::from_int(d))
    }

    #[test]
    fn units_square_correctly() {
        assert_eq!(Q::i() * Q::i(), Q::from_int(-1));
        assert_eq!(Q::sqrt2() * Q::sqrt2(), Q::from_int(2));
        assert_eq!(Q::inv_sqrt2() * Q::sqrt2(), Q::one());
        let is = Q::i() * Q::sqrt2();
        assert_eq!(is.clone() * is, Q::from_int(-2));
    }

    #[test]
    fn inverse_round_trips() {
        for x in [q(1, 1, 0, 0), q(3, -2, 5, 1), q(0, 0, 0, 7), q(2, 0, -1, 3)] {
            let inv = x.inverse().unwrap();
            assert_eq!(x * inv, Q::one());
        }
        assert!(Q::zero().inverse().is_none());
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(q(0, 0, 0, 0).to_string(), "0");
        assert_eq!(q(1, 1, 0, 0).to_string(), "1+i");
        assert_eq!(q(0, 0, 1, 2).to_string(), "√2+(2)i√2");
    }
}
