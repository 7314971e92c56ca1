//! Monomial orders, Buchberger's algorithm, normal forms, elimination
//! ideals, membership, and staircase-based dimension computations.
//!
//! `buchberger` is externally pure and deterministic: the same input always
//! yields the same reduced basis.  The default working order is grevlex;
//! elimination runs under a block order with grevlex inside both blocks.

mod dimension;
mod engine;
mod order;

pub use dimension::VsDim;
pub use order::{InnerOrder, MonomialOrder};

use engine::{Engine, IPoly};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Rational, VarSet};

/// Largest term of `p` under `order` (not the canonical print order).
pub fn leading_term<'p>(
    p: &'p Polynomial,
    order: &MonomialOrder,
) -> Option<(&'p Monomial, &'p Rational)> {
    p.terms()
        .iter()
        .max_by(|(a, _), (b, _)| order.cmp(a, b))
        .map(|(m, c)| (m, c))
}

/// Reduced Gröbner basis together with its order.  Generators are monic and
/// listed by strictly descending leading term.
#[derive(Clone, Debug, Serialize)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub reduced: bool,
    #[serde(skip)]
    vars: Option<VarSet>,
    #[serde(skip)]
    engine_basis: Vec<EnginePoly>,
}

// Engine form cached for fast repeated normal forms.
#[derive(Clone, Debug)]
struct EnginePoly(IPoly);

impl GroebnerBasis {
    pub fn vars(&self) -> Option<&VarSet> {
        self.vars.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True iff the basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].constant_value().is_some()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| {
                leading_term(g, &self.order)
                    .expect("basis elements are nonzero")
                    .0
                    .clone()
            })
            .collect()
    }
}

fn common_vars(gens: &[Polynomial]) -> Result<Option<VarSet>> {
    let mut vars: Option<VarSet> = None;
    for g in gens {
        match &vars {
            None => vars = Some(g.vars().clone()),
            Some(v) => {
                if v != g.vars() {
                    return Err(Error::VarSetMismatch);
                }
            }
        }
    }
    Ok(vars)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
/// The empty (or all-zero) generator list yields the zero ideal's empty basis.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    let vars = common_vars(gens)?;
    let eng = Engine::new(order);
    let inputs: Vec<IPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| eng.lift_polynomial(g).0)
        .collect();
    let raw = eng.buchberger(inputs);
    let vars_for_out = vars.clone();
    // Monic with respect to the basis order: divide by the engine leading
    // coefficient, which is the order-leading one.
    let generators: Vec<Polynomial> = match &vars_for_out {
        Some(v) => raw
            .iter()
            .map(|ip| {
                let lc = Rational::from_integer(ip.leading().1.clone());
                eng.to_polynomial(ip, v, &lc.recip())
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(GroebnerBasis {
        generators,
        order: order.clone(),
        reduced: true,
        vars,
        engine_basis: raw.into_iter().map(EnginePoly).collect(),
    })
}

/// Remainder of multivariate division: no term of the result is divisible by
/// any leading term of the basis, and `p - normal_form(p)` lies in the ideal.
pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    if let Some(v) = &basis.vars {
        if v != p.vars() {
            return Err(Error::VarSetMismatch);
        }
    }
    if p.is_zero() || basis.generators.is_empty() {
        return Ok(p.clone());
    }
    let eng = Engine::new(&basis.order);
    let (ip, factor) = eng.lift_polynomial(p);
    let engine_refs: Vec<IPoly> = basis.engine_basis.iter().map(|e| e.0.clone()).collect();
    let (r, k) = eng.normal_form(ip, &engine_refs);
    let scale = factor / crate::polyring::Rational::from_integer(k);
    Ok(eng.to_polynomial(&r, p.vars(), &scale))
}

/// True iff `p` lies in the ideal generated by `gens`.
pub fn ideal_membership(
    p: &Polynomial,
    gens: &[Polynomial],
    order: &MonomialOrder,
) -> Result<bool> {
    let basis = buchberger(gens, order)?;
    Ok(normal_form(p, &basis)?.is_zero())
}

/// Generators of the intersection of the ideal with the subring in the
/// retained variables, computed under a block order and returned in the
/// retained variable set.
pub fn elimination_ideal(gens: &[Polynomial], eliminate: &[&str]) -> Result<Vec<Polynomial>> {
    let vars = common_vars(gens)?.ok_or_else(|| {
        Error::InvalidParameter("elimination needs at least one generator".into())
    })?;
    let mut front = Vec::new();
    for name in eliminate {
        let ix = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable((*name).to_string()))?;
        if !front.contains(&ix) {
            front.push(ix);
        }
    }
    front.sort_unstable();
    let back: Vec<usize> = (0..vars.len()).filter(|i| !front.contains(i)).collect();
    if back.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot eliminate every variable".into(),
        ));
    }
    let order = MonomialOrder::elimination(front.clone(), back.clone());
    let basis = buchberger(gens, &order)?;

    let retained_names: Vec<String> = back.iter().map(|&i| vars.name(i).to_string()).collect();
    let retained = VarSet::new(retained_names)?;
    let mut assign: Vec<Option<usize>> = vec![None; vars.len()];
    for (new_ix, &old_ix) in back.iter().enumerate() {
        assign[old_ix] = Some(new_ix);
    }

    let mut out = Vec::new();
    for g in &basis.generators {
        if front.iter().all(|&i| !g.occurs(i)) {
            out.push(g.remap(&retained, &assign)?);
        }
    }
    Ok(out)
}

/// Vector-space dimension of the quotient ring: the number of monomials
/// outside the leading-term ideal, or `Infinite` when the staircase is
/// unbounded.
pub fn quotient_vs_dimension(gens: &[Polynomial], order: &MonomialOrder) -> Result<VsDim> {
    let vars = common_vars(gens)?;
    let basis = buchberger(gens, order)?;
    let nvars = vars.map_or(0, |v| v.len());
    if basis.is_unit_ideal() {
        return Ok(VsDim::Finite(0));
    }
    Ok(dimension::standard_monomial_count(
        nvars,
        &basis.leading_monomials(),
    ))
}

/// Krull dimension of the quotient ring, computed from the grevlex staircase
/// as the maximum size of a variable subset meeting no leading-term support.
/// Returns -1 for the unit ideal and the variable count for the zero ideal.
pub fn ideal_dimension(gens: &[Polynomial]) -> Result<i64> {
    let vars = common_vars(gens)?;
    let nvars = match vars {
        Some(v) => v.len(),
        None => return Ok(0),
    };
    let basis = buchberger(gens, &MonomialOrder::Grevlex)?;
    if basis.is_unit_ideal() {
        return Ok(-1);
    }
    Ok(dimension::krull_dimension(
        nvars,
        &basis.leading_monomials(),
    ))
}
