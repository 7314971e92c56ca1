//! Jacobian computation and the Keller condition gate.

use serde::Serialize;

use crate::error::Result;
use crate::polyring::{Polynomial, Rational, VarSet};

/// Endomorphism of the two-variable polynomial ring, given by the images of
/// `x` and `y`.  Both images share the variable set `{x, y}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyMap {
    pub p: Polynomial,
    pub q: Polynomial,
}

impl PolyMap {
    pub fn new(p: Polynomial, q: Polynomial) -> Result<Self> {
        if p.vars() != q.vars() {
            return Err(crate::error::Error::VarSetMismatch);
        }
        Ok(Self { p, q })
    }

    pub fn vars(&self) -> &VarSet {
        self.p.vars()
    }

    pub fn identity(vars: &VarSet) -> Result<Self> {
        Ok(Self {
            p: Polynomial::variable(vars, "x")?,
            q: Polynomial::variable(vars, "y")?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KellerReport {
    pub jacobian: Polynomial,
    pub is_keller: bool,
    #[serde(serialize_with = "crate::polyring::serde_rational::serialize_opt")]
    pub jacobian_constant: Option<Rational>,
}

/// The Jacobian determinant `P_x Q_y - P_y Q_x`, exactly.
pub fn jacobian_det(m: &PolyMap) -> Result<Polynomial> {
    let px = m.p.partial_derivative("x")?;
    let py = m.p.partial_derivative("y")?;
    let qx = m.q.partial_derivative("x")?;
    let qy = m.q.partial_derivative("y")?;
    Ok(&(&px * &qy) - &(&py * &qx))
}

/// Keller gate: the map qualifies iff its Jacobian determinant is a nonzero
/// constant.
pub fn keller_check(m: &PolyMap) -> Result<KellerReport> {
    let jacobian = jacobian_det(m)?;
    let constant = jacobian.constant_value();
    let is_keller = matches!(&constant, Some(c) if !num_traits::Zero::is_zero(c));
    Ok(KellerReport {
        jacobian_constant: if is_keller { constant } else { None },
        is_keller,
        jacobian,
    })
}

/// Algebraic independence of the two images over the base field.  In
/// characteristic zero this is exactly the nonvanishing of the Jacobian
/// determinant, so no elimination is needed.
pub fn algebraic_independence(m: &PolyMap) -> Result<bool> {
    Ok(!jacobian_det(m)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, rat_int};

    fn map(p: &str, q: &str) -> PolyMap {
        let vars = VarSet::new(["x", "y"]).unwrap();
        PolyMap::new(parse_poly(p, &vars).unwrap(), parse_poly(q, &vars).unwrap()).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let vars = VarSet::new(["x", "y"]).unwrap();
        assert_eq!(
            jacobian_det(&map("x", "y")).unwrap(),
            Polynomial::one(&vars)
        );
        assert_eq!(
            jacobian_det(&map("x", "y + x^2")).unwrap(),
            Polynomial::one(&vars)
        );
        assert_eq!(
            jacobian_det(&map("x^2", "y^2")).unwrap(),
            parse_poly("4*x*y", &vars).unwrap()
        );
    }

    #[test]
    fn keller_examples() {
        let r = keller_check(&map("x", "y + x^2")).unwrap();
        assert!(r.is_keller);
        assert_eq!(r.jacobian_constant.unwrap(), rat_int(1));

        let r = keller_check(&map("x^2", "y^2")).unwrap();
        assert!(!r.is_keller);
        assert!(r.jacobian_constant.is_none());

        let r = keller_check(&map("2*x + y", "y")).unwrap();
        assert!(r.is_keller);
        assert_eq!(r.jacobian_constant.unwrap(), rat_int(2));
    }

    #[test]
    fn independence_examples() {
        assert!(algebraic_independence(&map("x", "y")).unwrap());
        assert!(algebraic_independence(&map("x^2", "y^2")).unwrap());
        assert!(!algebraic_independence(&map("x + y", "(x + y)^2")).unwrap());
    }
}
