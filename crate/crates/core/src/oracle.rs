//! Top-level supports and the simplicity decision for rank-one local systems.
//!
//! For a torsion local system `L_λ`, `λ = Exp(α)`, the direct images
//! `Rj_*(L[n])` and `j_!(L[n])` are simple (equivalently semi-simple) exactly
//! when `λ` lies outside the support. The D-module verdicts are the same
//! booleans transported through the de Rham functor.
//!
//! For arrangements the dense-edge support is the codimension-one part of the
//! cohomology support locus. Components of higher codimension, which can occur
//! for global jump loci, are not computed.

use serde::Serialize;

use crate::arrangement::{intersection_lattice, line_arrangement_resolution, Arrangement};
use crate::error::{check_dim, Error, Result};
use crate::exact::{IntVector, Rational};
use crate::torus::{self, SupportSet, TorsionPoint, TranslatedSubtorus};
use crate::zeta::{self, ResolutionData};

/// One component `∏_{i ∈ W} t_i = 1` per dense edge `W`.
pub fn arrangement_support(arr: &Arrangement) -> Result<SupportSet> {
    let lattice = intersection_lattice(arr)?;
    let comps = lattice
        .dense_edges()
        .map(|e| {
            let mut a = IntVector::zeros(arr.r()).into_entries();
            for &i in &e.indices {
                a[i] = 1.into();
            }
            TranslatedSubtorus::new(IntVector::new(a), Rational::zero())
        })
        .collect::<Result<Vec<_>>>()?;
    SupportSet::from_components(arr.r(), comps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrangement_only: Option<SupportSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution_only: Option<SupportSet>,
}

/// Compares the dense-edge support with the support computed from the
/// automatic resolution of a line arrangement.
pub fn support_consistency_check(arr: &Arrangement) -> Result<ConsistencyReport> {
    let combinatorial = arrangement_support(arr)?;
    let via_zeta = zeta::support_from_resolution(&line_arrangement_resolution(arr)?)?;
    if combinatorial == via_zeta {
        return Ok(ConsistencyReport {
            consistent: true,
            arrangement_only: None,
            resolution_only: None,
        });
    }
    Ok(ConsistencyReport {
        consistent: false,
        arrangement_only: Some(combinatorial.difference(&via_zeta)),
        resolution_only: Some(via_zeta.difference(&combinatorial)),
    })
}

/// Stability of the support under `λ ↦ λ^{-1}`.
pub fn dual_stability_check(s: &SupportSet) -> bool {
    torus::invert_set(s) == *s
}

/// Where a support comes from.
#[derive(Clone, Copy, Debug)]
pub enum SupportSource<'a> {
    Arrangement(&'a Arrangement),
    Resolution(&'a ResolutionData),
}

impl SupportSource<'_> {
    pub fn r(&self) -> usize {
        match self {
            SupportSource::Arrangement(a) => a.r(),
            SupportSource::Resolution(d) => d.r(),
        }
    }

    pub fn support(&self) -> Result<SupportSet> {
        match self {
            SupportSource::Arrangement(a) => arrangement_support(a),
            SupportSource::Resolution(d) => zeta::support_from_resolution(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A dense edge with `Σ_{i ∈ W} α_i ∈ ℤ`; indices are 1-based.
    DenseEdge { indices: Vec<usize> },
    /// A divisor whose surviving zeta factor vanishes at `λ`.
    Divisor {
        stratum: String,
        label: String,
        a: IntVector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    #[serde(rename = "Rj_star_simple")]
    pub rj_star_simple: bool,
    pub j_shriek_simple: bool,
    #[serde(rename = "Dmod_jstar_simple")]
    pub dmodule_jstar_simple: bool,
    #[serde(rename = "Dmod_jshriek_simple")]
    pub dmodule_jshriek_simple: bool,
    /// `j_!(L[n]) = IC_X(L) = Rj_*(L[n])`.
    #[serde(rename = "ic_equals_both")]
    pub ic_equality: bool,
}

impl Verdicts {
    fn from_membership(in_support: bool) -> Self {
        let simple = !in_support;
        Verdicts {
            rj_star_simple: simple,
            j_shriek_simple: simple,
            dmodule_jstar_simple: simple,
            dmodule_jshriek_simple: simple,
            ic_equality: simple,
        }
    }
}

/// Identifications relating the D-module verdicts to the topological ones.
pub const DMODULE_NOTES: [&str; 4] = [
    "DR_X(j_*(D_U f^alpha)) = Rj_*(L_lambda[n]) and DR_X(j_!(D_U f^alpha)) = j_!(L_lambda[n]), f^alpha = prod_i f_i^alpha_i, lambda = exp(2 pi i alpha)",
    "j_*(D_U f^alpha) = O_X[1/f] f^alpha = D_X prod_i f_i^(alpha_i - k) = D_X[s] f^s f^alpha / (s + k) D_X[s] f^s f^alpha for k >> 0",
    "j_!(D_U f^alpha) = D_X[s] f^s f^alpha / (s - k) D_X[s] f^s f^alpha for k >> 0",
    "for rank-one L, semi-simplicity and simplicity of Rj_*(L[n]) and j_!(L[n]) coincide",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub alpha: Vec<Rational>,
    pub in_support: bool,
    pub witnesses: Vec<Witness>,
    pub verdicts: Verdicts,
    pub notes: Vec<&'static str>,
}

pub fn simplicity_report(source: SupportSource<'_>, alpha: &TorsionPoint) -> Result<SimplicityReport> {
    check_dim(source.r(), alpha.r())?;
    let support = source.support()?;
    let in_support = torus::member(&support, alpha)?;
    let witnesses = match source {
        SupportSource::Arrangement(arr) => intersection_lattice(arr)?
            .dense_edges()
            .filter(|e| {
                e.indices
                    .iter()
                    .fold(Rational::zero(), |acc, &i| acc + &alpha.alpha()[i])
                    .is_integer()
            })
            .map(|e| Witness::DenseEdge {
                indices: e.indices.iter().map(|i| i + 1).collect(),
            })
            .collect::<Vec<_>>(),
        SupportSource::Resolution(data) => zeta::witnesses(data, alpha)?
            .into_iter()
            .map(|w| Witness::Divisor {
                stratum: w.stratum,
                label: w.divisor.label,
                a: w.divisor.a,
            })
            .collect(),
    };
    if witnesses.is_empty() == in_support {
        return Err(Error::Internal(format!(
            "membership ({in_support}) disagrees with the {} witnesses found",
            witnesses.len()
        )));
    }
    Ok(SimplicityReport {
        alpha: alpha.alpha().to_vec(),
        in_support,
        witnesses,
        verdicts: Verdicts::from_membership(in_support),
        notes: DMODULE_NOTES.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(forms: &[&[i64]]) -> Arrangement {
        Arrangement::from_int_forms(2, forms).unwrap()
    }

    fn sub(a: &[i64]) -> TranslatedSubtorus {
        TranslatedSubtorus::new(IntVector::from_i64s(a), Rational::zero()).unwrap()
    }

    fn pt(xs: &[&str]) -> TorsionPoint {
        TorsionPoint::new(xs.iter().map(|s| s.parse::<Rational>().unwrap()).collect())
    }

    fn xyz() -> Arrangement {
        arr(&[&[0, 1, 0], &[0, 0, 1], &[0, 1, 1]])
    }

    #[test]
    fn arrangement_support_examples() {
        let s = arrangement_support(&arr(&[&[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(s.components(), &[sub(&[0, 1]), sub(&[1, 0])]);

        let s = arrangement_support(&xyz()).unwrap();
        assert_eq!(
            s.components(),
            &[sub(&[0, 0, 1]), sub(&[0, 1, 0]), sub(&[1, 0, 0]), sub(&[1, 1, 1])]
        );

        let s = arrangement_support(&Arrangement::from_int_forms(1, &[&[0, 1]]).unwrap()).unwrap();
        assert_eq!(s.components(), &[sub(&[1])]);
    }

    #[test]
    fn consistency_examples() {
        for a in [
            xyz(),
            arr(&[&[0, 1, 0], &[-1, 1, 0], &[0, 0, 1]]),
            arr(&[&[0, 1, 0], &[0, 0, 1]]),
        ] {
            let report = support_consistency_check(&a).unwrap();
            assert!(report.consistent, "{report:?}");
            assert_eq!(serde_json::to_string(&report).unwrap(), r#"{"consistent":true}"#);
        }
        assert!(support_consistency_check(&Arrangement::from_int_forms(1, &[&[0, 1]]).unwrap()).is_err());
    }

    #[test]
    fn simplicity_examples() {
        let a = xyz();
        let report = simplicity_report(SupportSource::Arrangement(&a), &pt(&["1/3", "1/3", "1/3"])).unwrap();
        assert!(report.in_support);
        assert_eq!(report.witnesses, vec![Witness::DenseEdge { indices: vec![1, 2, 3] }]);
        assert!(!report.verdicts.rj_star_simple && !report.verdicts.ic_equality);

        let report = simplicity_report(SupportSource::Arrangement(&a), &pt(&["1/2", "1/4", "1/8"])).unwrap();
        assert!(!report.in_support);
        assert!(report.witnesses.is_empty());
        assert_eq!(report.verdicts, Verdicts::from_membership(false));
        assert!(report.verdicts.ic_equality && report.verdicts.j_shriek_simple);

        let report = simplicity_report(SupportSource::Arrangement(&a), &TorsionPoint::trivial(3)).unwrap();
        assert!(report.in_support);
        assert_eq!(report.witnesses.len(), 4);

        assert!(simplicity_report(SupportSource::Arrangement(&a), &pt(&["0"])).is_err());
    }

    #[test]
    fn simplicity_from_resolution() {
        let data = line_arrangement_resolution(&xyz()).unwrap();
        let report = simplicity_report(SupportSource::Resolution(&data), &pt(&["1/3", "1/3", "1/3"])).unwrap();
        assert!(report.in_support);
        assert!(matches!(&report.witnesses[0], Witness::Divisor { stratum, .. } if stratum == "point(1,2,3)"));
        let report = simplicity_report(SupportSource::Resolution(&data), &pt(&["1/2", "1/4", "1/8"])).unwrap();
        assert!(!report.in_support);
    }

    #[test]
    fn dual_stability_examples() {
        assert!(dual_stability_check(&arrangement_support(&xyz()).unwrap()));
        let cusp = torus::pz(
            &torus::canonicalize(
                1,
                vec![
                    torus::MonomialFactor::new(IntVector::from_i64s(&[2]), -1),
                    torus::MonomialFactor::new(IntVector::from_i64s(&[3]), -1),
                    torus::MonomialFactor::new(IntVector::from_i64s(&[6]), 1),
                ],
            )
            .unwrap(),
        );
        assert!(dual_stability_check(&cusp));
        let lonely = SupportSet::from_components(
            2,
            vec![TranslatedSubtorus::new(IntVector::from_i64s(&[1, 0]), Rational::frac(1, 3)).unwrap()],
        )
        .unwrap();
        assert!(!dual_stability_check(&lonely));
    }

    #[test]
    fn report_json_shape() {
        let a = xyz();
        let report = simplicity_report(SupportSource::Arrangement(&a), &pt(&["1/3", "1/3", "1/3"])).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["alpha"], serde_json::json!(["1/3", "1/3", "1/3"]));
        assert_eq!(json["in_support"], true);
        assert_eq!(
            json["witnesses"][0],
            serde_json::json!({"kind": "dense_edge", "indices": [1, 2, 3]})
        );
        for key in [
            "Rj_star_simple",
            "j_shriek_simple",
            "Dmod_jstar_simple",
            "Dmod_jshriek_simple",
            "ic_equals_both",
        ] {
            assert_eq!(json["verdicts"][key], false, "{key}");
        }
    }
}
