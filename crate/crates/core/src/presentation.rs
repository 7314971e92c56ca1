//! Construction of the intermediate ring `K[P,Q][x+λy] ≅ K[u,v,s]/(g)`.
//!
//! The minimal polynomial `g` of `x+λy` over `K[P,Q]` is obtained by
//! eliminating `{x, y}` from the ideal `(u - P, v - Q, s - x - λy)`; its
//! kernel is prime of height one, so the elimination ideal is principal and
//! `g` is irreducible.  The field-extension degree is read off generic
//! fibers, and `λ` is "good" (the element `x+λy` is primitive) exactly when
//! the two degrees agree.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{elimination_ideal, quotient_vs_dimension, MonomialOrder, VsDim};
use crate::keller::{algebraic_independence, PolyMap};
use crate::polyring::{Polynomial, Rational, VarSet};
use crate::rng::SplitMix64;

/// Presentation data for `K[P,Q][x+λy] ≅ K[u,v,s]/(g)`.
///
/// `g` is nonzero, has positive degree in `s`, is irreducible over the
/// rationals, and is normalized integer-primitive with positive leading
/// coefficient in `s`; substituting `u → P`, `v → Q`, `s → x+λy` into `g`
/// yields the zero polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    #[serde(serialize_with = "crate::polyring::serde_rational::serialize")]
    pub lambda: Rational,
    pub g: Polynomial,
    pub s_degree: u32,
    pub normalized: bool,
}

/// Generic-fiber degree count for `[K(x,y) : K(P,Q)]`.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub extension_degree: u64,
    #[serde(serialize_with = "crate::polyring::serde_rational::serialize_pairs")]
    pub sample_points: Vec<(Rational, Rational)>,
    pub agreement: bool,
}

/// Variable set `{u, v, s}` housing the symbols for `P`, `Q`, and the
/// primitive element.
pub fn presentation_vars() -> VarSet {
    VarSet::new(["u", "v", "s"]).expect("distinct names")
}

fn joint_vars() -> VarSet {
    VarSet::new(["x", "y", "u", "v", "s"]).expect("distinct names")
}

/// Generators of the graph-plus-primitive-element ideal
/// `(u - P, v - Q, s - x - λy)` in `K[x, y, u, v, s]`, together with the
/// block order eliminating `{x, y}`.  Its reduced basis is the Gröbner
/// certificate behind `minimal_polynomial`.
pub fn presentation_ideal(
    m: &PolyMap,
    lambda: &Rational,
) -> Result<(Vec<Polynomial>, crate::groebner::MonomialOrder)> {
    let joint = joint_vars();
    let to_joint = |p: &Polynomial| -> Result<Polynomial> {
        // embed {x,y} into {x,y,u,v,s}
        p.remap(&joint, &[Some(0), Some(1)])
    };
    let x = Polynomial::variable(&joint, "x")?;
    let y = Polynomial::variable(&joint, "y")?;
    let u = Polynomial::variable(&joint, "u")?;
    let v = Polynomial::variable(&joint, "v")?;
    let s = Polynomial::variable(&joint, "s")?;
    let gens = vec![
        &u - &to_joint(&m.p)?,
        &v - &to_joint(&m.q)?,
        &(&s - &x) - &y.scale(lambda),
    ];
    let order = crate::groebner::MonomialOrder::elimination(vec![0, 1], vec![2, 3, 4]);
    Ok((gens, order))
}

/// Minimal polynomial of `x + λy` over `K[P,Q]`, as the single generator of
/// the elimination ideal of `(u - P, v - Q, s - x - λy)`.
pub fn minimal_polynomial(m: &PolyMap, lambda: &Rational) -> Result<Presentation> {
    if !algebraic_independence(m)? {
        return Err(Error::InternalContract(
            "minimal_polynomial requires algebraically independent images".into(),
        ));
    }
    let (gens, _) = presentation_ideal(m, lambda)?;
    let eliminated = elimination_ideal(&gens, &["x", "y"])?;
    if eliminated.len() != 1 || eliminated[0].is_zero() {
        return Err(Error::InternalContract(format!(
            "elimination ideal of a presentation must be principal and nonzero, got {} generators",
            eliminated.len()
        )));
    }
    let uvs = eliminated[0].vars().clone();
    let s_index = uvs.index_of("s").expect("retained variable");
    let mut g = eliminated[0].integer_primitive();
    let s_degree = g.degree_in(s_index);
    if s_degree == 0 {
        return Err(Error::InternalContract(
            "minimal polynomial must have positive degree in s".into(),
        ));
    }
    // Sign rule: the leading coefficient of g viewed in K[u,v][s] must be
    // positive (its canonical leading rational positive).
    let lead_coeff = g.coefficient_of_power(s_index, s_degree);
    if let Some((_, c)) = lead_coeff.terms().first() {
        if num_traits::Signed::is_negative(c) {
            g = -&g;
        }
    }

    // Annihilation check: g(P, Q, x + λy) = 0.
    let substituted = {
        let vars_xy = m.vars().clone();
        let xy_x = Polynomial::variable(&vars_xy, "x")?;
        let xy_y = Polynomial::variable(&vars_xy, "y")?;
        let primitive_elt = &xy_x + &xy_y.scale(lambda);
        let mut images = BTreeMap::new();
        images.insert("u".to_string(), m.p.clone());
        images.insert("v".to_string(), m.q.clone());
        images.insert("s".to_string(), primitive_elt);
        g.substitute(&images)?
    };
    if !substituted.is_zero() {
        return Err(Error::InternalContract(
            "minimal polynomial does not annihilate x + λy".into(),
        ));
    }

    Ok(Presentation {
        lambda: lambda.clone(),
        g,
        s_degree,
        normalized: true,
    })
}

/// Degree of `K(P,Q) ⊆ K(x,y)` measured as the vector-space dimension of
/// generic fibers `(P - u₀, Q - v₀)`, sampled at seeded random rational
/// points.  Non-generic points only inflate the count, so the minimum over
/// agreeing samples is the generic value.
pub fn extension_degree(m: &PolyMap, seed: u64) -> Result<DegreeReport> {
    if !algebraic_independence(m)? {
        return Err(Error::InternalContract(
            "extension_degree requires algebraically independent images".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let mut sample_points = Vec::new();
    let mut counts: Vec<Option<u64>> = Vec::new();
    let draw = |rng: &mut SplitMix64| -> (Rational, Rational) {
        let a = Rational::from_integer(rng.range_i64(-10_000, 10_000).into());
        let b = Rational::from_integer(rng.range_i64(-10_000, 10_000).into());
        (a, b)
    };
    let fiber_dim = |point: &(Rational, Rational)| -> Result<Option<u64>> {
        let u0 = Polynomial::constant(m.vars(), point.0.clone());
        let v0 = Polynomial::constant(m.vars(), point.1.clone());
        let gens = [&m.p - &u0, &m.q - &v0];
        match quotient_vs_dimension(&gens, &MonomialOrder::Grevlex)? {
            VsDim::Finite(n) => Ok(Some(n)),
            VsDim::Infinite => Ok(None),
        }
    };
    for _ in 0..3 {
        let pt = draw(&mut rng);
        counts.push(fiber_dim(&pt)?);
        sample_points.push(pt);
    }
    let all_same_finite = counts.iter().all(|c| c.is_some() && *c == counts[0]);
    let agreement;
    if all_same_finite {
        agreement = true;
    } else {
        agreement = false;
        for _ in 0..5 {
            let pt = draw(&mut rng);
            counts.push(fiber_dim(&pt)?);
            sample_points.push(pt);
        }
    }
    // Degenerate samples are infinite fibers or empty ones (a dominant map
    // can miss special points); the generic count is the minimum over the
    // nonzero finite observations.
    let finite_min = counts.iter().flatten().copied().filter(|&c| c > 0).min();
    match finite_min {
        Some(extension_degree) => Ok(DegreeReport {
            extension_degree,
            sample_points,
            agreement,
        }),
        None => Err(Error::DegenerateSample),
    }
}

/// `x + λy` is primitive iff the degree of its minimal polynomial equals the
/// full field-extension degree.
pub fn is_primitive(m: &PolyMap, lambda: &Rational, seed: u64) -> Result<bool> {
    let pres = minimal_polynomial(m, lambda)?;
    let deg = extension_degree(m, seed)?;
    Ok(u64::from(pres.s_degree) == deg.extension_degree)
}

/// Candidate sequence for the λ search: 1, 0, -1, 2, -2, 3, ...
fn lambda_candidates() -> impl Iterator<Item = Rational> {
    std::iter::once(Rational::one()).chain((0i64..).flat_map(|k| {
        if k == 0 {
            vec![Rational::from_integer(0.into())]
        } else {
            vec![
                Rational::from_integer((-k).into()),
                Rational::from_integer((k + 1).into()),
            ]
        }
    }))
}

/// Smallest candidate λ making `x + λy` primitive, searching
/// 1, 0, -1, 2, -2, 3, ...  Only finitely many λ fail, so the search
/// terminates; a safety cap guards against contract violations.
pub fn find_good_lambda(m: &PolyMap, seed: u64) -> Result<Rational> {
    Ok(search_lambda(m, seed)?.0)
}

/// λ search returning the witnesses so callers can avoid recomputation.
pub fn search_lambda(m: &PolyMap, seed: u64) -> Result<(Rational, Presentation, DegreeReport)> {
    let degree = extension_degree(m, seed)?;
    for lambda in lambda_candidates().take(1000) {
        let pres = minimal_polynomial(m, &lambda)?;
        if u64::from(pres.s_degree) == degree.extension_degree {
            return Ok((lambda, pres, degree));
        }
    }
    Err(Error::InternalContract(
        "no good lambda among 1000 candidates; the primitive element theorem forbids this".into(),
    ))
}
