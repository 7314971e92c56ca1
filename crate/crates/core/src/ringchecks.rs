//! Sufficient conditions on `B = K[u,v,s]/(g)` and the invertibility verdict.
//!
//! For a hypersurface the ring is Cohen–Macaulay, hence S2; Serre's criterion
//! then reduces normality to R1, i.e. a singular locus of dimension at most 0
//! inside the surface.  Smoothness (empty singular locus) gives regularity,
//! which is strictly stronger.  The verdict combines these checks with the
//! Keller gate and the elimination-based inversion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::ideal_dimension;
use crate::inversion::{case_classify, invert_map, CaseReport};
use crate::keller::{algebraic_independence, keller_check, KellerReport, PolyMap};
use crate::polyring::{Polynomial, Rational};
use crate::presentation::{search_lambda, DegreeReport, Presentation};

/// Citation strings attached to INVERTIBLE verdicts.  Fixed verbatim so the
/// JSON reports are snapshot-stable.
pub const JUSTIFICATION_NORMALITY: &str = "Theorem: normality of K[P,Q][x+y] implies invertibility";
pub const JUSTIFICATION_CHAIN: &str =
    "via: Adjamagbo equivalence, Bass unramified descent, Keller birational criterion";

#[derive(Clone, Debug, Serialize)]
pub struct NormalityReport {
    pub jacobian_ideal_gens: Vec<Polynomial>,
    pub smooth: bool,
    pub singular_locus_dimension: i64,
    pub normal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    #[serde(rename = "INVERTIBLE")]
    Invertible,
    #[serde(rename = "NOT_KELLER")]
    NotKeller,
    #[serde(rename = "NOT_INVERTIBLE_NOT_NORMAL")]
    NotInvertibleNotNormal,
    #[serde(rename = "JC_ALERT")]
    JcAlert,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub justification: Vec<String>,
    pub inverse: Option<PolyMap>,
}

/// Full pipeline result; `verdict` summarizes it.  Presentation-dependent
/// sections are absent when the images are algebraically dependent.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub keller: KellerReport,
    #[serde(serialize_with = "crate::polyring::serde_rational::serialize_opt")]
    pub lambda: Option<Rational>,
    pub presentation: Option<Presentation>,
    pub degree: Option<DegreeReport>,
    pub primitive: Option<bool>,
    pub normality: Option<NormalityReport>,
    pub krull_dimension: Option<i64>,
    pub cases: Option<CaseReport>,
    pub verdict: Verdict,
}

/// `[g, ∂g/∂u, ∂g/∂v, ∂g/∂s]`, the generators cutting out the singular locus.
pub fn jacobian_ideal(g: &Polynomial) -> Result<Vec<Polynomial>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(vec![
        g.clone(),
        g.partial_derivative("u")?,
        g.partial_derivative("v")?,
        g.partial_derivative("s")?,
    ])
}

/// Smooth affine hypersurface test: the Jacobian ideal is the unit ideal
/// exactly when the singular locus is empty.
pub fn is_smooth_hypersurface(g: &Polynomial) -> Result<bool> {
    Ok(singular_locus_dimension(g)? == -1)
}

/// Dimension of the singular locus; -1 means empty.
pub fn singular_locus_dimension(g: &Polynomial) -> Result<i64> {
    ideal_dimension(&jacobian_ideal(g)?)
}

/// Serre's criterion in hypersurface form: normal iff the singular locus has
/// dimension at most 0 (codimension at least 2 inside the surface).
pub fn is_normal_presentation(pres: &Presentation) -> Result<NormalityReport> {
    let gens = jacobian_ideal(&pres.g)?;
    let singular_locus_dimension = ideal_dimension(&gens)?;
    Ok(NormalityReport {
        jacobian_ideal_gens: gens,
        smooth: singular_locus_dimension == -1,
        singular_locus_dimension,
        normal: singular_locus_dimension <= 0,
    })
}

/// Krull dimension of `K[u,v,s]/(g)`; equals 2 for every valid presentation
/// (a nonzero principal prime in three variables).
pub fn krull_dimension_presentation(pres: &Presentation) -> Result<i64> {
    ideal_dimension(std::slice::from_ref(&pres.g))
}

/// Options controlling how much of the pipeline `analyze` runs.
#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    /// Classify the special cases (needs one extra elimination run).
    pub with_cases: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { with_cases: true }
    }
}

/// Full decision pipeline.
///
/// Keller and normal: INVERTIBLE with a composition-verified inverse.
/// Not Keller: NOT_KELLER, with the presentation analysis still attached
/// whenever the images are independent (those inputs carry the interesting
/// `g`).  Keller and not normal would contradict the Jacobian conjecture:
/// that branch is JC_ALERT and demands a certificate re-run.
pub fn analyze(m: &PolyMap, seed: u64, options: AnalyzeOptions) -> Result<Analysis> {
    let keller = keller_check(m)?;
    let independent = algebraic_independence(m)?;

    let mut lambda = None;
    let mut presentation = None;
    let mut degree = None;
    let mut primitive = None;
    let mut normality = None;
    let mut krull_dimension = None;
    let mut cases = None;

    if independent {
        let (l, pres, deg) = search_lambda(m, seed)?;
        let norm = is_normal_presentation(&pres)?;
        krull_dimension = Some(krull_dimension_presentation(&pres)?);
        if options.with_cases {
            cases = Some(case_classify(m, &pres)?);
        }
        primitive = Some(u64::from(pres.s_degree) == deg.extension_degree);
        lambda = Some(l);
        degree = Some(deg);
        normality = Some(norm);
        presentation = Some(pres);
    }

    let verdict = match (&keller.is_keller, normality.as_ref().map(|n| n.normal)) {
        (true, Some(true)) => {
            let inv = invert_map(m)?;
            if !inv.found {
                return Err(Error::InternalContract(
                    "normal Keller map must be invertible, but no inverse shape was found".into(),
                ));
            }
            Verdict {
                status: VerdictStatus::Invertible,
                justification: vec![
                    JUSTIFICATION_NORMALITY.to_string(),
                    JUSTIFICATION_CHAIN.to_string(),
                ],
                inverse: inv.as_map(),
            }
        }
        (true, Some(false)) => Verdict {
            status: VerdictStatus::JcAlert,
            justification: vec![
                "Keller map with non-normal K[P,Q][x+y]: counterexample candidate".into(),
                "re-run with --bundle to serialize the Groebner certificates".into(),
            ],
            inverse: None,
        },
        (true, None) => {
            return Err(Error::InternalContract(
                "Keller images are always algebraically independent".into(),
            ))
        }
        (false, _) => Verdict {
            status: VerdictStatus::NotKeller,
            justification: vec!["Jacobian determinant is not a nonzero constant".into()],
            inverse: None,
        },
    };

    Ok(Analysis {
        keller,
        lambda,
        presentation,
        degree,
        primitive,
        normality,
        krull_dimension,
        cases,
        verdict,
    })
}

/// The verdict alone; see `analyze` for the full report.
pub fn decide_invertible(m: &PolyMap, seed: u64) -> Result<Verdict> {
    Ok(analyze(m, seed, AnalyzeOptions { with_cases: false })?.verdict)
}

/// Verdict for a normality-focused query: unlike `decide_invertible`, a
/// non-Keller map with a non-normal presentation is reported as
/// NOT_INVERTIBLE_NOT_NORMAL (two independent reasons it cannot be an
/// automorphism: automorphisms are Keller, and they make the intermediate
/// ring a polynomial ring, which is normal).
pub fn normality_verdict(analysis: &Analysis) -> Verdict {
    match (
        analysis.keller.is_keller,
        analysis.normality.as_ref().map(|n| n.normal),
    ) {
        (false, Some(false)) => Verdict {
            status: VerdictStatus::NotInvertibleNotNormal,
            justification: vec![
                "not a Keller map, and K[P,Q][x+y] is not normal".into(),
                "invertible maps make K[P,Q][x+y] a polynomial ring, hence normal".into(),
            ],
            inverse: None,
        },
        _ => analysis.verdict.clone(),
    }
}
