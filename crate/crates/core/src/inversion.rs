//! Explicit inverses by lex elimination, composition verification, the
//! special-case classification, and subalgebra membership via tag variables.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form, MonomialOrder};
use crate::keller::PolyMap;
use crate::polyring::{Polynomial, VarSet};
use crate::presentation::Presentation;

/// Outcome of the elimination-based inversion.  When found, `f` and `g` are
/// polynomials in `{u, v}` with `f(P,Q) = x` and `g(P,Q) = y`.
#[derive(Clone, Debug, Serialize)]
pub struct InverseResult {
    pub found: bool,
    pub f: Option<Polynomial>,
    pub g: Option<Polynomial>,
}

impl InverseResult {
    fn not_found() -> Self {
        Self {
            found: false,
            f: None,
            g: None,
        }
    }

    /// The inverse as a map of the plane, in variables `{x, y}`.
    pub fn as_map(&self) -> Option<PolyMap> {
        let (f, g) = (self.f.as_ref()?, self.g.as_ref()?);
        let xy = VarSet::new(["x", "y"]).expect("distinct");
        let assign = [Some(0), Some(1)];
        Some(PolyMap {
            p: f.remap(&xy, &assign).expect("two variables"),
            q: g.remap(&xy, &assign).expect("two variables"),
        })
    }
}

/// Special cases that each imply invertibility for Keller maps: `case2` is
/// `x+λy ∈ K[P,Q]` (the minimal polynomial is linear in `s`); `case1` is
/// `K[P,Q][x+λy] = K[x,y]` (both `x` and `y` lie in the subalgebra).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CaseReport {
    pub case1: bool,
    pub case2: bool,
}

/// Generators of the graph ideal `(P(a,b) - u, Q(a,b) - v)` in
/// `K[a, b, u, v]`; its reduced lex basis (`a > b > u > v`) is the Gröbner
/// certificate behind `invert_map`.
pub fn graph_ideal(m: &PolyMap) -> Result<(Vec<Polynomial>, MonomialOrder)> {
    let full = VarSet::new(["a", "b", "u", "v"]).expect("distinct");
    let p_ab = m.p.remap(&full, &[Some(0), Some(1)])?;
    let q_ab = m.q.remap(&full, &[Some(0), Some(1)])?;
    let u = Polynomial::variable(&full, "u")?;
    let v = Polynomial::variable(&full, "v")?;
    Ok((vec![&p_ab - &u, &q_ab - &v], MonomialOrder::Lex))
}

/// Inverts the map by computing the reduced lex basis of the graph ideal
/// `(P(a,b) - u, Q(a,b) - v)` with `a > b > u > v`: the map is an
/// automorphism exactly when the basis contains `a - F(u,v)` and
/// `b - G(u,v)`.  Both compositions are re-verified before reporting
/// success.  Total on all inputs; returns `found = false` for
/// non-automorphisms.
pub fn invert_map(m: &PolyMap) -> Result<InverseResult> {
    let (gens, order) = graph_ideal(m)?;
    let basis = buchberger(&gens, &order)?;

    let uv = VarSet::new(["u", "v"]).expect("distinct");
    // shape test: a basis element `lead_var - tail` with tail in {u, v}
    let tail_in_uv = |g: &Polynomial, lead: usize| -> Option<Polynomial> {
        let (lm, lc) = crate::groebner::leading_term(g, &MonomialOrder::Lex)?;
        if lm.exp(lead) != 1 || lm.degree() != 1 || !num_traits::One::is_one(lc) {
            return None;
        }
        let tail = g.coefficient_of_power(lead, 0);
        // every other variable must be absent from the tail
        if tail.occurs(0) || tail.occurs(1) {
            return None;
        }
        let neg = -&tail;
        neg.remap(&uv, &[None, None, Some(0), Some(1)]).ok()
    };

    let mut f = None;
    let mut g = None;
    for gen in &basis.generators {
        if gen.terms().is_empty() {
            continue;
        }
        let lm = crate::groebner::leading_term(gen, &MonomialOrder::Lex)
            .expect("nonzero")
            .0;
        if lm.exp(0) > 0 && f.is_none() {
            f = tail_in_uv(gen, 0);
        } else if lm.exp(1) > 0 && lm.exp(0) == 0 && g.is_none() {
            g = tail_in_uv(gen, 1);
        }
    }

    let (f, g) = match (f, g) {
        (Some(f), Some(g)) => (f, g),
        _ => return Ok(InverseResult::not_found()),
    };
    let result = InverseResult {
        found: true,
        f: Some(f),
        g: Some(g),
    };
    let inverse_map = result.as_map().expect("found");
    if !verify_inverse(m, &inverse_map)? {
        return Err(Error::InternalContract(
            "inverse shape found but composition verification failed".into(),
        ));
    }
    Ok(result)
}

/// Both composites must restore the coordinate functions: four substitution
/// identities in total.
pub fn verify_inverse(m: &PolyMap, inv: &PolyMap) -> Result<bool> {
    let vars = m.vars();
    let x = Polynomial::variable(vars, "x")?;
    let y = Polynomial::variable(vars, "y")?;
    let compose_images = |outer: &PolyMap, inner: &PolyMap| -> Result<(Polynomial, Polynomial)> {
        let mut images = BTreeMap::new();
        images.insert("x".to_string(), outer.p.clone());
        images.insert("y".to_string(), outer.q.clone());
        Ok((inner.p.substitute(&images)?, inner.q.substitute(&images)?))
    };
    let (a, b) = compose_images(m, inv)?;
    let (c, d) = compose_images(inv, m)?;
    Ok(a == x && b == y && c == x && d == y)
}

/// Decides membership of `p` in the subalgebra generated by `gens` inside
/// `K[x,y]`, returning the representing polynomial in tag variables when it
/// exists.  One tag variable per generator; the normal form of `p` under a
/// block order eliminating `{x, y}` rewrites into tags exactly when `p` is a
/// member, and the representation is the normal form itself.
pub fn subalgebra_membership(p: &Polynomial, gens: &[Polynomial]) -> Result<Option<Polynomial>> {
    if gens.is_empty() {
        return Err(Error::InvalidParameter(
            "subalgebra membership needs at least one generator".into(),
        ));
    }
    let nxy = p.vars().len();
    debug_assert_eq!(nxy, 2);
    let mut names: Vec<String> = p.vars().names().to_vec();
    for i in 0..gens.len() {
        names.push(format!("t{}", i + 1));
    }
    let joint = VarSet::new(names)?;
    let embed: Vec<Option<usize>> = vec![Some(0), Some(1)];
    let order = MonomialOrder::elimination(vec![0, 1], (2..joint.len()).collect());

    let mut ideal = Vec::with_capacity(gens.len());
    for (i, gen) in gens.iter().enumerate() {
        if gen.vars() != p.vars() {
            return Err(Error::VarSetMismatch);
        }
        let tag = Polynomial::variable(&joint, &format!("t{}", i + 1))?;
        ideal.push(&tag - &gen.remap(&joint, &embed)?);
    }
    let basis = buchberger(&ideal, &order)?;
    let nf = normal_form(&p.remap(&joint, &embed)?, &basis)?;
    if nf.occurs(0) || nf.occurs(1) {
        return Ok(None);
    }
    let tag_names: Vec<String> = (0..gens.len()).map(|i| format!("t{}", i + 1)).collect();
    let tags = VarSet::new(tag_names)?;
    let mut assign = vec![None, None];
    assign.extend((0..gens.len()).map(Some));
    Ok(Some(nf.remap(&tags, &assign)?))
}

/// Classification of the two special cases for a map with its presentation.
pub fn case_classify(m: &PolyMap, pres: &Presentation) -> Result<CaseReport> {
    let case2 = pres.s_degree == 1;
    let vars = m.vars();
    let x = Polynomial::variable(vars, "x")?;
    let y = Polynomial::variable(vars, "y")?;
    let primitive_elt = &x + &y.scale(&pres.lambda);
    let gens = [m.p.clone(), m.q.clone(), primitive_elt];
    let case1 =
        subalgebra_membership(&x, &gens)?.is_some() && subalgebra_membership(&y, &gens)?.is_some();
    Ok(CaseReport { case1, case2 })
}
