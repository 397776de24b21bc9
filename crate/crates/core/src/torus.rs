//! Factored rational functions on the torus (ℂ*)^r and their zero/pole loci.
//!
//! Every function handled here is a product of binomials `(t^a - 1)^e` with
//! `a ≥ 0`. The zero set of a binomial is a finite union of codimension-one
//! subtori translated by roots of unity, which [`TranslatedSubtorus`] encodes
//! exactly as `{t : t^a = exp(2πi q)}` with `a` primitive and `q ∈ [0, 1) ∩ ℚ`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exact::{primitive_part, IntVector, Rational};

/// Default tolerance of the floating-point membership helper.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One binomial factor `(t^a - 1)^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialFactor {
    pub a: IntVector,
    pub e: i64,
}

impl MonomialFactor {
    pub fn new(a: IntVector, e: i64) -> Self {
        MonomialFactor { a, e }
    }

    /// Whether `t^a - 1` vanishes at `Exp(alpha)`.
    pub fn vanishes_at(&self, p: &TorsionPoint) -> bool {
        self.a.dot_rational(&p.alpha).is_integer()
    }
}

fn validate_exponent(r: usize, a: &IntVector) -> Result<()> {
    check_dim(r, a.len())?;
    if a.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !a.is_nonnegative() {
        return Err(Error::NegativeEntry(format!("{a:?}")));
    }
    Ok(())
}

/// A product `∏ (t^a - 1)^e` in canonical form: factors sorted by `a`, pairwise
/// distinct exponent vectors, no zero exponents. No factors means the constant 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFactored")]
pub struct FactoredTorusFunction {
    r: usize,
    factors: Vec<MonomialFactor>,
}

#[derive(Deserialize)]
struct RawFactored {
    r: usize,
    factors: Vec<MonomialFactor>,
}

impl TryFrom<RawFactored> for FactoredTorusFunction {
    type Error = Error;

    fn try_from(raw: RawFactored) -> Result<Self> {
        canonicalize(raw.r, raw.factors)
    }
}

impl fmt::Debug for FactoredTorusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "(t^{:?}-1)^{}", fac.a, fac.e)?;
        }
        Ok(())
    }
}

/// Merges equal exponent vectors, drops zero exponents and sorts.
pub fn canonicalize(r: usize, raw: Vec<MonomialFactor>) -> Result<FactoredTorusFunction> {
    let mut merged: BTreeMap<IntVector, i64> = BTreeMap::new();
    for f in raw {
        validate_exponent(r, &f.a)?;
        let slot = merged.entry(f.a).or_insert(0);
        *slot = slot
            .checked_add(f.e)
            .ok_or_else(|| Error::InvalidInput("exponent overflow".into()))?;
    }
    let factors = merged
        .into_iter()
        .filter(|(_, e)| *e != 0)
        .map(|(a, e)| MonomialFactor { a, e })
        .collect();
    Ok(FactoredTorusFunction { r, factors })
}

impl FactoredTorusFunction {
    pub fn one(r: usize) -> Self {
        FactoredTorusFunction { r, factors: Vec::new() }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn factors(&self) -> &[MonomialFactor] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `(t^a - 1)` in the canonical form, 0 if absent.
    pub fn exponent_of(&self, a: &IntVector) -> i64 {
        self.factors
            .binary_search_by(|f| f.a.cmp(a))
            .map_or(0, |i| self.factors[i].e)
    }

    pub fn invert(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|f| MonomialFactor {
                a: f.a.clone(),
                e: -f.e,
            })
            .collect();
        FactoredTorusFunction { r: self.r, factors }
    }
}

pub fn multiply(f: &FactoredTorusFunction, g: &FactoredTorusFunction) -> Result<FactoredTorusFunction> {
    check_dim(f.r, g.r)?;
    canonicalize(f.r, f.factors.iter().chain(&g.factors).cloned().collect())
}

/// Substitutes `t_i = s^{m_i}`: each `(t^a - 1)^e` becomes `(s^{⟨m,a⟩} - 1)^e`.
pub fn specialize(f: &FactoredTorusFunction, m: &IntVector) -> Result<FactoredTorusFunction> {
    check_dim(f.r, m.len())?;
    if m.entries().iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidInput(format!(
            "specialization weights must be positive: {m:?}"
        )));
    }
    let raw = f
        .factors
        .iter()
        .map(|fac| MonomialFactor {
            a: IntVector::new(vec![m.dot(&fac.a)]),
            e: fac.e,
        })
        .collect();
    canonicalize(1, raw)
}

/// The codimension-one subtorus `{t ∈ (ℂ*)^r : t^a = exp(2πi q)}`.
///
/// `a` is primitive with positive first nonzero entry and `q ∈ [0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TranslatedSubtorus {
    a: IntVector,
    q: Rational,
}

impl fmt::Debug for TranslatedSubtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{t^{:?} = e(2πi·{})}}", self.a, self.q)
    }
}

impl TranslatedSubtorus {
    /// The canonical components of `{t : t^a = exp(2πi q)}` for arbitrary nonzero `a`.
    ///
    /// With `a = ±d·a'` the set splits into the `d` cosets `t^{a'} = exp(2πi (±q + k)/d)`.
    pub fn components_of(a: &IntVector, q: &Rational) -> Result<Vec<TranslatedSubtorus>> {
        let pp = primitive_part(a)?;
        let q = if pp.flipped { -q } else { q.clone() };
        let d = pp
            .gcd
            .to_u64()
            .ok_or_else(|| Error::InvalidInput(format!("exponent gcd too large to enumerate: {}", pp.gcd)))?;
        let d_q = Rational::from_int(pp.gcd.clone());
        let mut out: Vec<_> = (0..d)
            .map(|k| TranslatedSubtorus {
                a: pp.vector.clone(),
                q: (&q + &Rational::from_int(k))
                    .checked_div(&d_q)
                    .expect("gcd is positive")
                    .fract_mod1(),
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Builds a single component; `(a, q)` must already be canonical.
    pub fn new(a: IntVector, q: Rational) -> Result<Self> {
        let pp = primitive_part(&a)?;
        if pp.flipped || !pp.gcd.is_one() || q.is_negative() || q >= Rational::one() {
            return Err(Error::InvalidInput(format!(
                "non-canonical subtorus ({a:?}, {q}); expected primitive a with positive leading entry and 0 ≤ q < 1"
            )));
        }
        Ok(TranslatedSubtorus { a, q })
    }

    pub fn a(&self) -> &IntVector {
        &self.a
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    /// Whether `Exp(alpha)` lies on the subtorus, i.e. `⟨a, α⟩ ≡ q (mod 1)`.
    pub fn contains(&self, p: &TorsionPoint) -> bool {
        (self.a.dot_rational(&p.alpha) - &self.q).is_integer()
    }

    /// The image under `λ ↦ λ^{-1}`: `q ↦ -q mod 1`.
    pub fn inverse(&self) -> Self {
        TranslatedSubtorus {
            a: self.a.clone(),
            q: (-&self.q).fract_mod1(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        primitive_part(&self.a).is_ok_and(|pp| !pp.flipped && pp.gcd.is_one())
            && !self.q.is_negative()
            && self.q < Rational::one()
    }
}

#[derive(Deserialize)]
struct RawSubtorus {
    a: IntVector,
    q: Rational,
}

/// A finite union of translated subtori, sorted by `(a, q)` without duplicates.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSupportSet")]
pub struct SupportSet {
    r: usize,
    components: Vec<TranslatedSubtorus>,
}

#[derive(Deserialize)]
struct RawSupportSet {
    r: usize,
    components: Vec<RawSubtorus>,
}

impl TryFrom<RawSupportSet> for SupportSet {
    type Error = Error;

    /// Components on input may be non-canonical; they are normalized here.
    fn try_from(raw: RawSupportSet) -> Result<Self> {
        let mut comps = Vec::new();
        for c in raw.components {
            check_dim(raw.r, c.a.len())?;
            comps.extend(TranslatedSubtorus::components_of(&c.a, &c.q)?);
        }
        SupportSet::from_components(raw.r, comps)
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.components).finish()
    }
}

impl SupportSet {
    pub fn empty(r: usize) -> Self {
        SupportSet {
            r,
            components: Vec::new(),
        }
    }

    pub fn from_components(r: usize, mut components: Vec<TranslatedSubtorus>) -> Result<Self> {
        for c in &components {
            check_dim(r, c.r())?;
        }
        components.sort();
        components.dedup();
        Ok(SupportSet { r, components })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn components(&self) -> &[TranslatedSubtorus] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains_component(&self, c: &TranslatedSubtorus) -> bool {
        self.components.binary_search(c).is_ok()
    }

    pub fn union(&self, other: &SupportSet) -> Result<SupportSet> {
        check_dim(self.r, other.r)?;
        let all = self.components.iter().chain(&other.components).cloned().collect();
        SupportSet::from_components(self.r, all)
    }

    /// Components of `self` missing from `other`.
    pub fn difference(&self, other: &SupportSet) -> SupportSet {
        let components = self
            .components
            .iter()
            .filter(|c| !other.contains_component(c))
            .cloned()
            .collect();
        SupportSet { r: self.r, components }
    }

    /// Floating-point membership for arbitrary (possibly non-torsion) points.
    ///
    /// Not used by any exact decision; exposed for interoperability with numeric tools.
    pub fn contains_approx(&self, lambda: &[Complex64], tol: f64) -> Result<bool> {
        check_dim(self.r, lambda.len())?;
        for c in &self.components {
            let mut value = Complex64::one();
            for (x, t) in c.a.entries().iter().zip(lambda) {
                let k = x
                    .to_i32()
                    .ok_or_else(|| Error::InvalidInput(format!("exponent {x} too large")))?;
                value *= t.powi(k);
            }
            let target = Complex64::from_polar(1.0, std::f64::consts::TAU * c.q.to_f64());
            if (value - target).norm() < tol {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// A torsion point `Exp(α)` of (ℂ*)^r, with every `α_i` reduced into `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    alpha: Vec<Rational>,
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.alpha).finish()
    }
}

impl TorsionPoint {
    /// Reduces each coordinate modulo 1.
    pub fn new(alpha: Vec<Rational>) -> Self {
        TorsionPoint {
            alpha: alpha.iter().map(Rational::fract_mod1).collect(),
        }
    }

    pub fn trivial(r: usize) -> Self {
        TorsionPoint {
            alpha: vec![Rational::zero(); r],
        }
    }

    /// Parses a comma-separated list of rationals such as `1/3,1/3,1/3`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let alpha = s.split(',').map(str::parse).collect::<Result<Vec<Rational>>>()?;
        Ok(TorsionPoint::new(alpha))
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn r(&self) -> usize {
        self.alpha.len()
    }

    /// The point `λ^{-1}`, i.e. `α ↦ (1 - α) mod 1`.
    pub fn inverse(&self) -> Self {
        TorsionPoint::new(self.alpha.iter().map(|x| -x).collect())
    }

    /// Complex coordinates `exp(2πi α_j)`.
    pub fn to_complex(&self) -> Vec<Complex64> {
        self.alpha
            .iter()
            .map(|x| Complex64::from_polar(1.0, std::f64::consts::TAU * x.to_f64()))
            .collect()
    }
}

/// The zero set of `t^a - 1` as canonical components.
pub fn decompose_factor(a: &IntVector) -> Result<Vec<TranslatedSubtorus>> {
    TranslatedSubtorus::components_of(a, &Rational::zero())
}

fn locus_of<'a>(r: usize, factors: impl Iterator<Item = &'a MonomialFactor>) -> SupportSet {
    let comps = factors
        .flat_map(|f| decompose_factor(&f.a).expect("canonical factors are nonzero"))
        .collect();
    SupportSet::from_components(r, comps).expect("factor dimensions checked on construction")
}

/// Union of the zero and polar loci.
pub fn pz(f: &FactoredTorusFunction) -> SupportSet {
    locus_of(f.r, f.factors.iter())
}

/// Zero locus only (factors with positive exponent).
pub fn zero_locus(f: &FactoredTorusFunction) -> SupportSet {
    locus_of(f.r, f.factors.iter().filter(|fac| fac.e > 0))
}

pub fn member(s: &SupportSet, p: &TorsionPoint) -> Result<bool> {
    check_dim(s.r, p.r())?;
    Ok(s.components.iter().any(|c| c.contains(p)))
}

/// Sum of the exponents of all factors that vanish at the point.
pub fn vanishing_order(f: &FactoredTorusFunction, p: &TorsionPoint) -> Result<i64> {
    check_dim(f.r, p.r())?;
    Ok(f.factors.iter().filter(|fac| fac.vanishes_at(p)).map(|fac| fac.e).sum())
}

/// Preimage of `s` under `τ_M : (ℂ*)^p → (ℂ*)^r`, the torus map with `(τ_M λ)^a = λ^{M·a}`.
///
/// `matrix` is given by its `p` rows, each of length `r`.
pub fn pullback_support(s: &SupportSet, matrix: &[IntVector]) -> Result<SupportSet> {
    let p = matrix.len();
    for row in matrix {
        check_dim(s.r, row.len())?;
    }
    let mut comps = Vec::new();
    for c in &s.components {
        let b = IntVector::new(matrix.iter().map(|row| row.dot(&c.a)).collect());
        if b.is_zero() {
            return Err(Error::Internal(format!(
                "specialization annihilates component {c:?}; matrix must be non-degenerate"
            )));
        }
        comps.extend(TranslatedSubtorus::components_of(&b, &c.q)?);
    }
    SupportSet::from_components(p, comps)
}

/// Image of `s` under `λ ↦ λ^{-1}`.
pub fn invert_set(s: &SupportSet) -> SupportSet {
    let comps = s.components.iter().map(TranslatedSubtorus::inverse).collect();
    SupportSet::from_components(s.r, comps).expect("dimension preserved")
}

/// The matrix-vector product `M^T α`, reduced mod 1: the point `τ_M(Exp(α))`.
pub fn push_point(matrix: &[IntVector], p: &TorsionPoint) -> Result<TorsionPoint> {
    check_dim(matrix.len(), p.r())?;
    let r = matrix.first().map_or(0, IntVector::len);
    let alpha = (0..r)
        .map(|i| {
            matrix.iter().zip(p.alpha()).fold(Rational::zero(), |acc, (row, x)| {
                acc + &(x * &Rational::from_int(row.entries()[i].clone()))
            })
        })
        .collect();
    Ok(TorsionPoint::new(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn fac(a: &[i64], e: i64) -> MonomialFactor {
        MonomialFactor::new(v(a), e)
    }

    fn sub(a: &[i64], qs: &str) -> TranslatedSubtorus {
        TranslatedSubtorus::new(v(a), q(qs)).unwrap()
    }

    fn pt(xs: &[&str]) -> TorsionPoint {
        TorsionPoint::new(xs.iter().map(|s| q(s)).collect())
    }

    fn cusp() -> FactoredTorusFunction {
        canonicalize(1, vec![fac(&[2], -1), fac(&[3], -1), fac(&[6], 1)]).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let one = canonicalize(2, vec![fac(&[1, 1], 2), fac(&[1, 1], -2)]).unwrap();
        assert!(one.is_one());

        let f = canonicalize(2, vec![fac(&[1, 0], -1), fac(&[0, 1], 1)]).unwrap();
        assert_eq!(f.factors(), &[fac(&[0, 1], 1), fac(&[1, 0], -1)]);

        let c = cusp();
        assert_eq!(c.factors(), &[fac(&[2], -1), fac(&[3], -1), fac(&[6], 1)]);
    }

    #[test]
    fn canonicalize_rejects_bad_vectors() {
        assert!(matches!(canonicalize(2, vec![fac(&[0, 0], 1)]), Err(Error::ZeroVector)));
        assert!(matches!(
            canonicalize(2, vec![fac(&[1, -1], 1)]),
            Err(Error::NegativeEntry(_))
        ));
        assert!(matches!(
            canonicalize(2, vec![fac(&[1], 1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn multiply_examples() {
        let f = canonicalize(2, vec![fac(&[1, 1], 1)]).unwrap();
        assert_eq!(multiply(&f, &FactoredTorusFunction::one(2)).unwrap(), f);

        let t1 = canonicalize(1, vec![fac(&[1], 1)]).unwrap();
        assert!(multiply(&t1, &t1.invert()).unwrap().is_one());

        let g = canonicalize(2, vec![fac(&[1, 0], -1)]).unwrap();
        let fg = multiply(&f, &g).unwrap();
        assert_eq!(fg.factors(), &[fac(&[1, 0], -1), fac(&[1, 1], 1)]);
        assert!(multiply(&f, &t1).is_err());
    }

    #[test]
    fn specialize_examples() {
        let f = canonicalize(2, vec![fac(&[1, 1], 1)]).unwrap();
        assert_eq!(specialize(&f, &v(&[1, 1])).unwrap().factors(), &[fac(&[2], 1)]);
        assert!(specialize(&FactoredTorusFunction::one(3), &v(&[4, 1, 2]))
            .unwrap()
            .is_one());
        let g = canonicalize(2, vec![fac(&[2, 1], -1), fac(&[1, 1], 1)]).unwrap();
        let s = specialize(&g, &v(&[2, 1])).unwrap();
        assert_eq!(s.factors(), &[fac(&[3], 1), fac(&[5], -1)]);
        assert!(specialize(&g, &v(&[0, 1])).is_err());
    }

    #[test]
    fn decompose_factor_examples() {
        assert_eq!(decompose_factor(&v(&[1, 1])).unwrap(), vec![sub(&[1, 1], "0")]);
        assert_eq!(
            decompose_factor(&v(&[2, 2])).unwrap(),
            vec![sub(&[1, 1], "0"), sub(&[1, 1], "1/2")]
        );
        let six = decompose_factor(&v(&[6])).unwrap();
        let expected: Vec<_> = (0..6).map(|k| sub(&[1], &format!("{k}/6"))).collect();
        assert_eq!(six, expected);
        assert!(matches!(decompose_factor(&v(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn sign_flip_folds_into_translation() {
        // t^{-a} = ζ  ⟺  t^{a} = ζ^{-1}
        let comps = TranslatedSubtorus::components_of(&v(&[-1, 2]), &q("1/3")).unwrap();
        assert_eq!(comps, vec![sub(&[1, -2], "2/3")]);
    }

    #[test]
    fn loci_examples() {
        assert!(pz(&FactoredTorusFunction::one(2)).is_empty());
        let f = canonicalize(3, vec![fac(&[1, 1, 1], 1)]).unwrap();
        assert_eq!(pz(&f).components(), &[sub(&[1, 1, 1], "0")]);

        let expected: Vec<_> = (0..6).map(|k| sub(&[1], &format!("{k}/6"))).collect();
        assert_eq!(pz(&cusp()).components(), expected.as_slice());

        let g = canonicalize(2, vec![fac(&[1, 0], 1), fac(&[0, 1], -1)]).unwrap();
        assert_eq!(zero_locus(&g).components(), &[sub(&[1, 0], "0")]);
        assert!(zero_locus(&FactoredTorusFunction::one(1)).is_empty());
        let h = canonicalize(2, vec![fac(&[1, 1], 2)]).unwrap();
        assert_eq!(zero_locus(&h).components(), &[sub(&[1, 1], "0")]);
    }

    #[test]
    fn member_examples() {
        let s = SupportSet::from_components(3, vec![sub(&[1, 1, 1], "0")]).unwrap();
        assert!(member(&s, &pt(&["1/3", "1/3", "1/3"])).unwrap());
        let s = SupportSet::from_components(2, vec![sub(&[1, 0], "0")]).unwrap();
        assert!(!member(&s, &pt(&["1/2", "0"])).unwrap());
        let s = SupportSet::from_components(2, vec![sub(&[1, 1], "1/2")]).unwrap();
        assert!(member(&s, &pt(&["1/4", "1/4"])).unwrap());
        assert!(member(&s, &pt(&["1/4"])).is_err());
    }

    #[test]
    fn vanishing_order_examples() {
        let f = canonicalize(1, vec![fac(&[1], 1)]).unwrap();
        assert_eq!(vanishing_order(&f, &pt(&["0"])).unwrap(), 1);
        let g = canonicalize(2, vec![fac(&[1, 0], 1), fac(&[1, 1], -1)]).unwrap();
        assert_eq!(vanishing_order(&g, &pt(&["0", "0"])).unwrap(), 0);
        assert_eq!(vanishing_order(&cusp(), &pt(&["1/6"])).unwrap(), 1);
    }

    #[test]
    fn pullback_examples() {
        let s = SupportSet::from_components(2, vec![sub(&[1, 1], "0")]).unwrap();
        let out = pullback_support(&s, &[v(&[1, 1])]).unwrap();
        assert_eq!(out.components(), &[sub(&[1], "0"), sub(&[1], "1/2")]);

        let id = [v(&[1, 0]), v(&[0, 1])];
        assert_eq!(pullback_support(&s, &id).unwrap(), s);

        let s = SupportSet::from_components(2, vec![sub(&[1, 0], "0")]).unwrap();
        let swapped = pullback_support(&s, &[v(&[0, 1]), v(&[1, 0])]).unwrap();
        assert_eq!(swapped.components(), &[sub(&[0, 1], "0")]);

        assert!(matches!(pullback_support(&s, &[v(&[0, 1])]), Err(Error::Internal(_))));
    }

    #[test]
    fn invert_set_examples() {
        let s = SupportSet::from_components(2, vec![sub(&[1, 1], "0")]).unwrap();
        assert_eq!(invert_set(&s), s);
        let s = SupportSet::from_components(2, vec![sub(&[1, 0], "1/3")]).unwrap();
        assert_eq!(invert_set(&s).components(), &[sub(&[1, 0], "2/3")]);
        assert_eq!(invert_set(&pz(&cusp())), pz(&cusp()));
    }

    #[test]
    fn support_set_json_is_canonical() {
        let s = SupportSet::from_components(2, vec![sub(&[1, 1], "1/2"), sub(&[1, 0], "0")]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"r":2,"components":[{"a":[1,0],"q":"0"},{"a":[1,1],"q":"1/2"}]}"#
        );
        // Non-canonical input is normalized on the way in.
        let raw = r#"{"r":1,"components":[{"a":[2],"q":"0"}]}"#;
        let parsed: SupportSet = serde_json::from_str(raw).unwrap();
        assert_eq!(parsed.components(), &[sub(&[1], "0"), sub(&[1], "1/2")]);
    }

    #[test]
    fn approx_membership_helper() {
        let s = SupportSet::from_components(2, vec![sub(&[1, 1], "1/2")]).unwrap();
        let t = Complex64::from_polar(1.3, 0.7);
        let on = [t, -Complex64::one() / t];
        assert!(s.contains_approx(&on, DEFAULT_TOLERANCE).unwrap());
        let off = [t, Complex64::one() / t];
        assert!(!s.contains_approx(&off, DEFAULT_TOLERANCE).unwrap());
    }

    // Numeric oracle: points sampled on each component satisfy t^a = 1, and a
    // component with a different translation does not contain them.
    fn sample_on(c: &TranslatedSubtorus, seed: u64) -> Vec<Complex64> {
        let r = c.r();
        let a: Vec<i64> = c.a().entries().iter().map(|x| x.to_i64().unwrap()).collect();
        let j = a.iter().position(|&x| x != 0).unwrap();
        let mut t: Vec<Complex64> = (0..r)
            .map(|i| {
                let s = (seed * 31 + i as u64 * 7) as f64;
                Complex64::from_polar(0.6 + (s.sin().abs()), s.cos() * 3.0)
            })
            .collect();
        let mut rest = Complex64::one();
        for i in 0..r {
            if i != j {
                rest *= t[i].powi(a[i] as i32);
            }
        }
        let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU * c.q().to_f64());
        t[j] = (zeta / rest).powf(1.0 / a[j] as f64);
        t
    }

    proptest! {
        #[test]
        fn numeric_samples_lie_on_binomial_zero_set(a in prop::collection::vec(0i64..5, 1..4), seed in 0u64..1000) {
            prop_assume!(a.iter().any(|&x| x != 0));
            let comps = decompose_factor(&v(&a)).unwrap();
            let g = v(&a).gcd().to_usize().unwrap();
            prop_assert_eq!(comps.len(), g);
            for (k, c) in comps.iter().enumerate() {
                let t = sample_on(c, seed + k as u64);
                let mut val = Complex64::one();
                for (ti, ai) in t.iter().zip(&a) {
                    val *= ti.powi(*ai as i32);
                }
                prop_assert!((val - Complex64::one()).norm() < 1e-9 * (1.0 + val.norm()));
                for other in comps.iter().filter(|o| o.q() != c.q()) {
                    let single = SupportSet::from_components(a.len(), vec![other.clone()]).unwrap();
                    prop_assert!(!single.contains_approx(&t, 1e-9).unwrap());
                }
            }
        }
    }
}
