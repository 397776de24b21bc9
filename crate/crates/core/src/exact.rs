//! Exact arithmetic: reduced rationals, integer vectors, and linear algebra over ℚ.
//!
//! Nothing in here touches floating point. Ranks are computed by fraction-free
//! (Bareiss) elimination on integer-scaled rows; affine solution sets are built
//! by successive exact substitution.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// A rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::InvalidRational(format!("{numer}/0")));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Convenience for literals. Panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Rational::new(numer.into(), denom.into()).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Representative of `self` modulo 1 in `[0, 1)`.
    pub fn fract_mod1(&self) -> Rational {
        let floor = self.0.floor();
        Rational(&self.0 - floor)
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::InvalidRational("1/0".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    let bad = || Error::InvalidRational(whole.to_string());
    let (neg, digits) = if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, s)
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let v: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(if neg { -v } else { v })
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q`; the sign may be ASCII `-` or U+2212 and sits on the numerator.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            None => Ok(Rational::from_int(parse_int(s, s)?)),
            Some((p, q)) => {
                let numer = parse_int(p, s)?;
                if q.starts_with('-') || q.starts_with('\u{2212}') {
                    return Err(Error::InvalidRational(s.to_string()));
                }
                Rational::new(numer, parse_int(q, s)?).map_err(|_| Error::InvalidRational(s.to_string()))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        // Strings are canonical; bare JSON integers are tolerated on input.
        match serde_json::Value::deserialize(deserializer)? {
            serde_json::Value::String(s) => s.parse().map_err(de::Error::custom),
            serde_json::Value::Number(n) => {
                let text = n.to_string();
                parse_int(&text, &text)
                    .map(Rational::from_int)
                    .map_err(de::Error::custom)
            }
            other => Err(de::Error::custom(format!("expected rational string, got {other}"))),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Rational {
    /// Exact division; `rhs` must be nonzero.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::InvalidRational("division by zero".into()));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }
}

/// Fixed-length vector of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        IntVector(vec![BigInt::zero(); len])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// gcd of the absolute values of the entries (0 for the zero vector).
    pub fn gcd(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rational(&self, other: &[Rational]) -> Rational {
        self.0.iter().zip(other).fold(Rational::zero(), |acc, (a, b)| {
            acc + &(b * &Rational::from_int(a.clone()))
        })
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().cloned().map(Rational::from_int).collect()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            let n = serde_json::Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&n)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct IntVecVisitor;

        impl<'de> Visitor<'de> for IntVecVisitor {
            type Value = IntVector;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integers")
            }

            fn visit_seq<A: de::SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<IntVector, A::Error> {
                let mut out = Vec::new();
                while let Some(n) = seq.next_element::<serde_json::Number>()? {
                    let text = n.to_string();
                    let v =
                        parse_int(&text, &text).map_err(|_| de::Error::custom(format!("not an integer: {text}")))?;
                    out.push(v);
                }
                Ok(IntVector(out))
            }
        }

        deserializer.deserialize_seq(IntVecVisitor)
    }
}

/// Result of [`primitive_part`]: `v = sign · gcd · vector`, where `sign` is -1 iff `flipped`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivePart {
    pub vector: IntVector,
    pub gcd: BigInt,
    pub flipped: bool,
}

/// Splits `v` into a primitive vector whose first nonzero entry is positive and
/// the gcd of its entries.
pub fn primitive_part(v: &IntVector) -> Result<PrimitivePart> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.gcd();
    let flipped = v.0.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let divisor = if flipped { -g.clone() } else { g.clone() };
    let vector = IntVector(v.0.iter().map(|x| x / &divisor).collect());
    Ok(PrimitivePart {
        vector,
        gcd: g,
        flipped,
    })
}

/// Rectangular matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl RatMatrix {
    pub fn new(data: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = data.first().map_or(0, Vec::len);
        for row in &data {
            check_dim(cols, row.len())?;
        }
        Ok(RatMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_int_rows(rows: &[IntVector]) -> Result<Self> {
        Self::new(rows.iter().map(IntVector::to_rationals).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn transpose(&self) -> RatMatrix {
        let data = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect())
            .collect();
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Exact rank over ℚ.
    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Scales a rational row by the lcm of its denominators, yielding an integer row
/// spanning the same line.
fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Rank over ℚ via Bareiss fraction-free elimination.
pub fn rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.data.iter().map(|r| clear_denominators(r)).collect();
    bareiss_rank(&mut a, m.cols)
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                // Exact by Sylvester's identity.
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

pub fn rank_of_vectors(vectors: &[IntVector]) -> usize {
    let cols = vectors.first().map_or(0, IntVector::len);
    let mut a: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    bareiss_rank(&mut a, cols)
}

/// Affine subspace of ℚ^n, stored as a basepoint plus a basis of directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub basepoint: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

impl AffineSubspace {
    pub fn whole(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                e
            })
            .collect();
        AffineSubspace {
            basepoint: vec![Rational::zero(); n],
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    /// Whether the whole subspace lies in `{x : normal·x + constant = 0}`.
    pub fn lies_in(&self, normal: &IntVector, constant: &Rational) -> bool {
        (normal.dot_rational(&self.basepoint) + constant).is_zero()
            && self.basis.iter().all(|b| normal.dot_rational(b).is_zero())
    }

    /// Points of the form basepoint + Σ s_k basis_k for the given coefficients.
    pub fn point_at(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut p = self.basepoint.clone();
        for (s, b) in coeffs.iter().zip(&self.basis) {
            for (x, y) in p.iter_mut().zip(b) {
                *x = &*x + &(s * y);
            }
        }
        p
    }

    /// Intersection with `{x : normal·x + constant = 0}`; `None` if empty.
    pub fn intersect_hyperplane(&self, normal: &IntVector, constant: &Rational) -> Option<Self> {
        let offset = normal.dot_rational(&self.basepoint) + constant;
        let slopes: Vec<Rational> = self.basis.iter().map(|b| normal.dot_rational(b)).collect();
        let Some(pivot) = slopes.iter().position(|s| !s.is_zero()) else {
            return offset.is_zero().then(|| self.clone());
        };
        let pb = &self.basis[pivot];
        let ps = &slopes[pivot];
        let shift = offset.checked_div(ps).expect("pivot is nonzero");
        let basepoint = self.basepoint.iter().zip(pb).map(|(x, b)| x - &(&shift * b)).collect();
        let basis = self
            .basis
            .iter()
            .zip(&slopes)
            .enumerate()
            .filter(|(k, _)| *k != pivot)
            .map(|(_, (b, s))| {
                let ratio = s.checked_div(ps).expect("pivot is nonzero");
                b.iter().zip(pb).map(|(x, y)| x - &(&ratio * y)).collect()
            })
            .collect();
        Some(AffineSubspace { basepoint, basis })
    }
}

/// Solution set of `normal·x + constant = 0` over all given hyperplanes in ℚ^n.
pub fn affine_intersection(n: usize, hyperplanes: &[(IntVector, Rational)]) -> Result<Option<AffineSubspace>> {
    for (normal, _) in hyperplanes {
        check_dim(n, normal.len())?;
        if normal.is_zero() {
            return Err(Error::ZeroVector);
        }
    }
    let mut space = AffineSubspace::whole(n);
    for (normal, constant) in hyperplanes {
        match space.intersect_hyperplane(normal, constant) {
            Some(s) => space = s,
            None => return Ok(None),
        }
    }
    Ok(Some(space))
}

/// Coefficients `c` with `Σ c_k vectors[k] = target`, if the target lies in the span.
///
/// The vectors are expected to be linearly independent; with dependent inputs an
/// arbitrary solution is returned.
pub fn solve_combination(vectors: &[IntVector], target: &IntVector) -> Option<Vec<Rational>> {
    let k = vectors.len();
    let n = target.len();
    // Augmented system: one row per coordinate, one column per vector.
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = vectors
                .iter()
                .map(|v| Rational::from_int(v.entries()[i].clone()))
                .collect();
            row.push(Rational::from_int(target.entries()[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut coeffs = vec![Rational::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        coeffs[c] = a[row][k].clone();
    }
    Some(coeffs)
}
