use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{Monomial, Rational, VarSet};
use crate::error::{Error, Result};

/// Exact multivariate polynomial with rational coefficients.
///
/// Canonical form: no zero coefficients are stored, and terms are kept sorted
/// in descending graded-lexicographic order of their monomials.  Two
/// polynomials compare equal iff their term lists are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    vars: VarSet,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(vars: &VarSet) -> Self {
        Self {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &VarSet, value: Rational) -> Self {
        if value.is_zero() {
            return Self::zero(vars);
        }
        Self {
            vars: vars.clone(),
            terms: vec![(Monomial::one(vars.len()), value)],
        }
    }

    pub fn variable(vars: &VarSet, name: &str) -> Result<Self> {
        let index = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self {
            vars: vars.clone(),
            terms: vec![(Monomial::var(vars.len(), index), Rational::one())],
        })
    }

    /// Builds the canonical form from an arbitrary term list: coefficients of
    /// equal monomials are combined, zeros dropped, terms sorted descending.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), vars.len());
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.cmp_grlex(a));
        Self {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// For constant polynomials (including zero) the constant value.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Largest exponent of the given variable; 0 for polynomials (including
    /// zero) in which it does not occur.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exp(index))
            .max()
            .unwrap_or(0)
    }

    pub fn occurs(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(index) > 0)
    }

    /// Coefficient of `var^k`, viewed as a polynomial in the remaining
    /// variables (still expressed in the full variable set).
    pub fn coefficient_of_power(&self, index: usize, k: u32) -> Polynomial {
        let picked = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(index) == k)
            .map(|(m, c)| {
                let mut exps: Vec<u32> = m.exponents().to_vec();
                exps[index] = 0;
                (Monomial::from_exponents(exps), c.clone())
            });
        Polynomial::from_terms(&self.vars, picked)
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        Ok(self.merge(other, true))
    }

    /// Merge two canonically sorted term lists.
    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp_grlex(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_other {
                        -cb.clone()
                    } else {
                        cb.clone()
                    };
                    out.push((mb.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (m, c) in &self.terms[i..] {
            out.push((m.clone(), c.clone()));
        }
        for (m, c) in &other.terms[j..] {
            let c = if negate_other { -c.clone() } else { c.clone() };
            out.push((m.clone(), c));
        }
        Self {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    /// Clears denominators: returns integer term coefficients and the scale
    /// `1/L` with `self = (1/L) * (integer terms)`.
    fn to_integer_terms(&self) -> (Vec<(&Monomial, BigInt)>, BigInt) {
        let mut denom_lcm = BigInt::one();
        for (_, c) in &self.terms {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m, c.numer() * (&denom_lcm / c.denom())))
            .collect();
        (terms, denom_lcm)
    }

    /// Product via integer accumulation: big-integer multiply-adds in a hash
    /// map, one rational normalization per output term at the end.  This is
    /// the workhorse; exact rational arithmetic per pair would spend most of
    /// its time in gcd.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let (a_terms, a_denom) = self.to_integer_terms();
        let (b_terms, b_denom) = other.to_integer_terms();
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(a_terms.len() + b_terms.len());
        for (ma, ca) in &a_terms {
            for (mb, cb) in &b_terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                *acc.entry(m).or_insert_with(BigInt::zero) += c;
            }
        }
        let denom = a_denom * b_denom;
        let mut terms: Vec<(Monomial, Rational)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, denom.clone())))
            .collect();
        terms.sort_by(|(a, _), (b, _)| b.cmp_grlex(a));
        Ok(Self {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base).expect("same varset");
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base).expect("same varset");
            }
        }
        result
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self> {
        let index = self
            .vars
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(index);
            if e == 0 {
                return None;
            }
            let mut exps: Vec<u32> = m.exponents().to_vec();
            exps[index] = e - 1;
            Some((
                Monomial::from_exponents(exps),
                c * Rational::from_integer(BigInt::from(e)),
            ))
        });
        Ok(Self::from_terms(&self.vars, terms.collect::<Vec<_>>()))
    }

    /// Ring-homomorphism evaluation: every variable occurring in `self` must
    /// have an image, and all images must share one variable set.
    pub fn substitute(&self, images: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        let target = match images.values().next() {
            Some(p) => p.vars.clone(),
            // No images given: legal only for constant polynomials.
            None => self.vars.clone(),
        };
        for p in images.values() {
            if p.vars != target {
                return Err(Error::VarSetMismatch);
            }
        }
        // Resolve the image of each source variable up front, erroring only
        // for variables that actually occur.
        let mut resolved: Vec<Option<&Polynomial>> = vec![None; self.vars.len()];
        for (i, slot) in resolved.iter_mut().enumerate() {
            if self.occurs(i) {
                let name = self.vars.name(i);
                *slot = Some(
                    images
                        .get(name)
                        .ok_or_else(|| Error::MissingAssignment(name.to_string()))?,
                );
            }
        }
        self.substitute_horner(&resolved, &target)
    }

    /// Recursive Horner evaluation: split off the first occurring variable,
    /// substitute its coefficient polynomials recursively, then fold with the
    /// variable's image.  Keeps intermediate sizes linear in the result
    /// instead of multiplying full power products per term.
    fn substitute_horner(
        &self,
        resolved: &[Option<&Polynomial>],
        target: &VarSet,
    ) -> Result<Polynomial> {
        let Some(v) = (0..self.vars.len()).find(|&i| self.occurs(i)) else {
            return Ok(Polynomial::constant(
                target,
                self.constant_value().expect("no variables occur"),
            ));
        };
        let image = resolved[v].expect("occurring variables are resolved");
        let top = self.degree_in(v);
        let mut acc = self
            .coefficient_of_power(v, top)
            .substitute_horner(resolved, target)?;
        for k in (0..top).rev() {
            acc = acc.try_mul(image)?;
            let coeff = self.coefficient_of_power(v, k);
            if !coeff.is_zero() {
                acc = acc.try_add(&coeff.substitute_horner(resolved, target)?)?;
            }
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut values: Vec<Option<&Rational>> = vec![None; self.vars.len()];
        for (i, slot) in values.iter_mut().enumerate() {
            if self.occurs(i) {
                let name = self.vars.name(i);
                *slot = Some(
                    point
                        .get(name)
                        .ok_or_else(|| Error::MissingAssignment(name.to_string()))?,
                );
            }
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for i in m.support() {
                let base = values[i].expect("resolved above");
                let mut p = Rational::one();
                for _ in 0..m.exp(i) {
                    p *= base;
                }
                v *= p;
            }
            total += v;
        }
        Ok(total)
    }

    /// Re-express the polynomial in `target`, sending source variable `i` to
    /// target variable `assign[i]`; `None` entries must not occur in any term.
    pub fn remap(&self, target: &VarSet, assign: &[Option<usize>]) -> Result<Polynomial> {
        debug_assert_eq!(assign.len(), self.vars.len());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for i in m.support() {
                match assign[i] {
                    Some(j) => exps[j] += m.exp(i),
                    None => {
                        return Err(Error::InternalContract(format!(
                            "variable `{}` survives a remap that drops it",
                            self.vars.name(i)
                        )))
                    }
                }
            }
            terms.push((Monomial::from_exponents(exps), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Integer-primitive associate: multiply by the positive rational that
    /// clears denominators and divides out the integer content, then fix the
    /// sign so the canonical leading coefficient is positive.  Returns the
    /// zero polynomial unchanged.
    pub fn integer_primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for (_, c) in &self.terms {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            content = content.gcd(&scaled);
        }
        let mut factor = Rational::new(denom_lcm, content);
        let lead = &self.terms[0].1;
        if (lead * &factor).is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Monic associate (leading coefficient 1 in the canonical order).
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("varset mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("varset mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("varset mismatch in *")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(&self.vars, m);
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

fn format_monomial(vars: &VarSet, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..m.len() {
        let e = m.exp(i);
        if e == 1 {
            parts.push(vars.name(i).to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars.name(i), e));
        }
    }
    parts.join("*")
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, rat_int};

    fn vs_xy() -> VarSet {
        VarSet::new(["x", "y"]).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let vars = vs_xy();
        let p = |t: &str| parse_poly(t, &vars).unwrap();
        assert!(p("x + y").try_add(&p("-x - y")).unwrap().is_zero());
        assert_eq!(p("x + y").try_mul(&p("x - y")).unwrap(), p("x^2 - y^2"));
        assert_eq!(p("x + 1").pow(0), Polynomial::one(&vars));
    }

    #[test]
    fn varset_mismatch_is_an_error() {
        let a = Polynomial::one(&vs_xy());
        let b = Polynomial::one(&VarSet::new(["u", "v"]).unwrap());
        assert!(matches!(a.try_add(&b), Err(Error::VarSetMismatch)));
        assert!(matches!(a.try_mul(&b), Err(Error::VarSetMismatch)));
    }

    #[test]
    fn derivative_examples() {
        let vars = vs_xy();
        let p = |t: &str| parse_poly(t, &vars).unwrap();
        assert_eq!(p("x^2*y").partial_derivative("x").unwrap(), p("2*x*y"));
        assert!(p("x^2").partial_derivative("y").unwrap().is_zero());
        assert!(matches!(
            p("x").partial_derivative("z"),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let vars = vs_xy();
        let p = |t: &str| parse_poly(t, &vars).unwrap();
        let mut point = BTreeMap::new();
        point.insert("x".to_string(), rat_int(2));
        point.insert("y".to_string(), rat_int(3));
        assert_eq!(p("x^2 + y").evaluate(&point).unwrap(), rat_int(7));
        assert_eq!(
            Polynomial::zero(&vars).evaluate(&point).unwrap(),
            rat_int(0)
        );
        // missing assignment only matters for occurring variables
        let partial: BTreeMap<String, Rational> =
            [("x".to_string(), rat_int(2))].into_iter().collect();
        assert_eq!(p("x^2").evaluate(&partial).unwrap(), rat_int(4));
        assert!(matches!(
            p("x + y").evaluate(&partial),
            Err(Error::MissingAssignment(name)) if name == "y"
        ));
    }

    #[test]
    fn substitute_missing_assignment() {
        let vars = vs_xy();
        let p = parse_poly("x + y", &vars).unwrap();
        let mut images = BTreeMap::new();
        images.insert("x".to_string(), Polynomial::one(&vars));
        assert!(matches!(
            p.substitute(&images),
            Err(Error::MissingAssignment(name)) if name == "y"
        ));
    }
}
