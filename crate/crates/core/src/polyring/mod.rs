//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Values are immutable after construction and safe to share across threads;
//! every operation is a pure function.  Coefficients are exact rationals:
//! every downstream decision (ideal membership, normality) rests on exact
//! zero tests.

mod monomial;
mod parse;
mod poly;
mod varset;

pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use varset::VarSet;

/// Element of the coefficient field: an arbitrary-precision rational kept in
/// lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `serialize_with` helpers printing rationals in the canonical `a/b` form.
pub mod serde_rational {
    use super::Rational;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn serialize_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn serialize_pairs<S: Serializer>(
        pairs: &[(Rational, Rational)],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(pairs.len()))?;
        for (a, b) in pairs {
            seq.serialize_element(&[a.to_string(), b.to_string()])?;
        }
        seq.end()
    }

    pub fn serialize_array<S: Serializer, const N: usize>(
        arr: &[Rational; N],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(N))?;
        for a in arr {
            seq.serialize_element(&a.to_string())?;
        }
        seq.end()
    }
}
