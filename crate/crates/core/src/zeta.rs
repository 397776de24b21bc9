//! Monodromy zeta functions from log-resolution data.
//!
//! A resolution is consumed only through its combinatorial shadow: for each
//! stratum, the divisors lying over the stratum's generic point with their
//! vanishing-order vectors `a_j` and the Euler characteristics `χ(E_j°)`. The
//! local zeta function is `∏_j (t^{a_j} - 1)^{-χ(E_j°)}` and the support is the
//! union over strata of its zero and polar loci.
//!
//! The stratification is assumed finite; this cannot be checked from the data.
//! For a stratum of positive dimension the divisors are those of the germ at a
//! generic point of the stratum.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exact::{IntVector, RatMatrix};
use crate::torus::{self, FactoredTorusFunction, MonomialFactor, SupportSet, TorsionPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRecord {
    pub label: String,
    pub a: IntVector,
    pub chi: i64,
}

impl DivisorRecord {
    pub fn new(label: impl Into<String>, a: IntVector, chi: i64) -> Self {
        DivisorRecord {
            label: label.into(),
            a,
            chi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub name: String,
    pub divisors: Vec<DivisorRecord>,
}

impl Stratum {
    pub fn new(name: impl Into<String>, divisors: Vec<DivisorRecord>) -> Self {
        Stratum {
            name: name.into(),
            divisors,
        }
    }
}

/// Divisor data of a log resolution, grouped by stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawResolution")]
pub struct ResolutionData {
    r: usize,
    noninvertible: Vec<bool>,
    strata: Vec<Stratum>,
}

#[derive(Deserialize)]
struct RawResolution {
    r: usize,
    #[serde(default)]
    noninvertible: Option<Vec<bool>>,
    strata: Vec<Stratum>,
}

impl TryFrom<RawResolution> for ResolutionData {
    type Error = Error;

    fn try_from(raw: RawResolution) -> Result<Self> {
        ResolutionData::new(raw.r, raw.noninvertible, raw.strata)
    }
}

impl ResolutionData {
    /// Validates and builds resolution data. `noninvertible` defaults to all true.
    pub fn new(r: usize, noninvertible: Option<Vec<bool>>, strata: Vec<Stratum>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("resolution data needs r ≥ 1".into()));
        }
        if strata.is_empty() {
            return Err(Error::InvalidInput("resolution data needs at least one stratum".into()));
        }
        let noninvertible = noninvertible.unwrap_or_else(|| vec![true; r]);
        check_dim(r, noninvertible.len())?;

        let mut names = HashSet::new();
        for s in &strata {
            if !names.insert(s.name.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate stratum name {:?}", s.name)));
            }
            let mut labels = HashSet::new();
            for d in &s.divisors {
                if !labels.insert(d.label.as_str()) {
                    return Err(Error::InvalidInput(format!(
                        "duplicate divisor label {:?} in stratum {:?}",
                        d.label, s.name
                    )));
                }
                check_dim(r, d.a.len())?;
                if d.a.is_zero() {
                    return Err(Error::ZeroVector);
                }
                if !d.a.is_nonnegative() {
                    return Err(Error::NegativeEntry(format!("divisor {:?}: {:?}", d.label, d.a)));
                }
            }
        }
        Ok(ResolutionData {
            r,
            noninvertible,
            strata,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn noninvertible(&self) -> &[bool] {
        &self.noninvertible
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, name: &str) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.name == name)
    }
}

/// A `p × r` matrix of naturals; row `k` gives the exponents of the `k`-th
/// specialized function `∏_i f_i^{m_ki}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct SpecializationMatrix {
    #[serde(rename = "M")]
    rows: Vec<IntVector>,
}

#[derive(Deserialize)]
struct RawMatrix {
    #[serde(rename = "M")]
    rows: Vec<IntVector>,
}

impl TryFrom<RawMatrix> for SpecializationMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        SpecializationMatrix::new(raw.rows)
    }
}

impl SpecializationMatrix {
    pub fn new(rows: Vec<IntVector>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidInput("specialization matrix has no rows".into()));
        };
        let cols = first.len();
        for row in &rows {
            check_dim(cols, row.len())?;
            if !row.is_nonnegative() {
                return Err(Error::NegativeEntry(format!("matrix row {row:?}")));
            }
        }
        Ok(SpecializationMatrix { rows })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| IntVector::from_i64s(r)).collect())
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    /// Number of specialized functions.
    pub fn p(&self) -> usize {
        self.rows.len()
    }

    /// Number of original functions.
    pub fn r(&self) -> usize {
        self.rows[0].len()
    }

    /// `M·a`.
    pub fn apply(&self, a: &IntVector) -> IntVector {
        IntVector::new(self.rows.iter().map(|row| row.dot(a)).collect())
    }
}

/// `∏_j (t^{a_j} - 1)^{-χ_j}` over the divisors of the stratum, canonicalized.
pub fn local_zeta(s: &Stratum, r: usize) -> Result<FactoredTorusFunction> {
    let raw = s
        .divisors
        .iter()
        .map(|d| MonomialFactor::new(d.a.clone(), -d.chi))
        .collect();
    torus::canonicalize(r, raw)
}

/// Union over strata of the zero and polar loci of the local zeta functions.
pub fn support_from_resolution(data: &ResolutionData) -> Result<SupportSet> {
    let parts = data
        .strata
        .par_iter()
        .map(|s| local_zeta(s, data.r).map(|z| torus::pz(&z)))
        .collect::<Result<Vec<_>>>()?;
    let comps = parts.into_iter().flat_map(|p| p.components().to_vec()).collect();
    SupportSet::from_components(data.r, comps)
}

/// Surjectivity of the induced torus map (full row rank) plus a nonzero column
/// sum for every non-invertible function.
pub fn check_nondegenerate(m: &SpecializationMatrix, noninvertible: &[bool]) -> Result<bool> {
    check_dim(m.r(), noninvertible.len())?;
    if RatMatrix::from_int_rows(m.rows())?.rank() != m.p() {
        return Ok(false);
    }
    let columns_ok = noninvertible
        .iter()
        .enumerate()
        .filter(|(_, &ni)| ni)
        .all(|(i, _)| m.rows.iter().any(|row| !row.entries()[i].is_zero()));
    Ok(columns_ok)
}

/// Resolution data of the specialization `F^M`: every divisor vector `a` becomes `M·a`.
pub fn specialize_resolution(data: &ResolutionData, m: &SpecializationMatrix) -> Result<ResolutionData> {
    check_dim(data.r, m.r())?;
    if !check_nondegenerate(m, &data.noninvertible)? {
        return Err(Error::Degenerate(format!("{:?}", m.rows())));
    }
    let mut strata = Vec::with_capacity(data.strata.len());
    for s in &data.strata {
        let mut divisors = Vec::with_capacity(s.divisors.len());
        for d in &s.divisors {
            let a = m.apply(&d.a);
            if a.is_zero() {
                return Err(Error::Internal(format!(
                    "non-degenerate specialization sent divisor {:?} to zero",
                    d.label
                )));
            }
            divisors.push(DivisorRecord {
                label: d.label.clone(),
                a,
                chi: d.chi,
            });
        }
        strata.push(Stratum {
            name: s.name.clone(),
            divisors,
        });
    }
    let noninvertible = m
        .rows
        .iter()
        .map(|row| {
            row.entries()
                .iter()
                .zip(&data.noninvertible)
                .any(|(x, &ni)| ni && x.is_positive())
        })
        .collect();
    ResolutionData::new(m.p(), Some(noninvertible), strata)
}

/// A divisor certifying that a point lies in the support: its binomial vanishes
/// there and survives cancellation in the stratum's zeta function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaWitness {
    pub stratum: String,
    pub divisor: DivisorRecord,
}

/// Every certifying (stratum, divisor) pair, in input order.
pub fn witnesses(data: &ResolutionData, p: &TorsionPoint) -> Result<Vec<ZetaWitness>> {
    check_dim(data.r, p.r())?;
    let mut out = Vec::new();
    for s in &data.strata {
        let zeta = local_zeta(s, data.r)?;
        for d in &s.divisors {
            let fac = MonomialFactor::new(d.a.clone(), 0);
            if zeta.exponent_of(&d.a) != 0 && fac.vanishes_at(p) {
                out.push(ZetaWitness {
                    stratum: s.name.clone(),
                    divisor: d.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// A certificate of membership, if the point lies in the support.
///
/// Several divisors may certify the same point; the one of least total degree
/// `Σ a_i` is chosen, ties broken by input order.
pub fn witness(data: &ResolutionData, p: &TorsionPoint) -> Result<Option<ZetaWitness>> {
    Ok(witnesses(data, p)?
        .into_iter()
        .min_by_key(|w| w.divisor.a.entries().iter().sum::<BigInt>()))
}
