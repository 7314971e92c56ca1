//! Deterministic generator of tame automorphisms with tracked inverses —
//! the oracle that exercises the whole pipeline.
//!
//! Every automorphism of the plane is tame (a composition of affine maps and
//! triangular shears), so seeded compositions of elementary moves sample the
//! full automorphism group.  Each generated map carries the inverse built
//! from the inverted moves in reverse order and is self-checked by
//! composition before it is returned.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inversion::verify_inverse;
use crate::keller::PolyMap;
use crate::polyring::{Polynomial, Rational, VarSet};
use crate::rng::SplitMix64;

/// Hard ceiling for the total degree of generated forward images.  Alternating
/// triangular moves multiply degrees, and elimination over degree ~200 inputs
/// is far beyond desk scale; the sampler resamples or falls back to affine
/// moves so the composed bound `min(max_deg^n_moves, DEGREE_CAP)` always
/// holds.
pub const DEGREE_CAP: u64 = 12;

/// Documented degree bound for `random_tame` output.
pub fn degree_bound(max_deg: u32, n_moves: u32) -> u64 {
    let naive = (u64::from(max_deg)).pow(n_moves);
    naive.min(DEGREE_CAP.max(u64::from(max_deg)))
}

/// One elementary automorphism.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
#[allow(clippy::large_enum_variant)]
pub enum ElementaryMove {
    /// `x -> x + p(y)`, `y -> y` with `p` univariate in `y`.
    #[serde(rename = "addX")]
    AddX { payload: Polynomial },
    /// `x -> x`, `y -> y + q(x)` with `q` univariate in `x`.
    #[serde(rename = "addY")]
    AddY { payload: Polynomial },
    /// `x -> a x + b y + e`, `y -> c x + d y + f` with `ad - bc != 0`.
    #[serde(rename = "affine")]
    Affine {
        #[serde(serialize_with = "crate::polyring::serde_rational::serialize_array")]
        matrix: [Rational; 4],
        #[serde(serialize_with = "crate::polyring::serde_rational::serialize_array")]
        translation: [Rational; 2],
    },
}

impl ElementaryMove {
    pub fn forward(&self, vars: &VarSet) -> Result<PolyMap> {
        let x = Polynomial::variable(vars, "x")?;
        let y = Polynomial::variable(vars, "y")?;
        // payloads must be univariate in the complementary variable
        let check_payload = |payload: &Polynomial, shifted: usize| -> Result<()> {
            if payload.occurs(shifted) {
                return Err(Error::InvalidParameter(format!(
                    "triangular payload `{}` mentions the variable it shifts",
                    payload
                )));
            }
            Ok(())
        };
        Ok(match self {
            ElementaryMove::AddX { payload } => {
                check_payload(payload, 0)?;
                PolyMap {
                    p: &x + payload,
                    q: y,
                }
            }
            ElementaryMove::AddY { payload } => {
                check_payload(payload, 1)?;
                PolyMap {
                    p: x,
                    q: &y + payload,
                }
            }
            ElementaryMove::Affine {
                matrix: [a, b, c, d],
                translation: [e, f],
            } => PolyMap {
                p: &(&x.scale(a) + &y.scale(b)) + &Polynomial::constant(vars, e.clone()),
                q: &(&x.scale(c) + &y.scale(d)) + &Polynomial::constant(vars, f.clone()),
            },
        })
    }

    pub fn inverted(&self) -> Result<ElementaryMove> {
        Ok(match self {
            ElementaryMove::AddX { payload } => ElementaryMove::AddX { payload: -payload },
            ElementaryMove::AddY { payload } => ElementaryMove::AddY { payload: -payload },
            ElementaryMove::Affine {
                matrix: [a, b, c, d],
                translation: [e, f],
            } => {
                let det = a * d - b * c;
                if det.is_zero() {
                    return Err(Error::InvalidParameter(
                        "affine move with zero determinant".into(),
                    ));
                }
                // inverse matrix M' and translation -M' t
                let (ia, ib, ic, id) = (d / &det, -(b / &det), -(c / &det), a / &det);
                let ie = -(&ia * e + &ib * f);
                let if_ = -(&ic * e + &id * f);
                ElementaryMove::Affine {
                    matrix: [ia, ib, ic, id],
                    translation: [ie, if_],
                }
            }
        })
    }

    /// Determinant contribution to the Jacobian constant.
    pub fn jacobian_factor(&self) -> Rational {
        match self {
            ElementaryMove::Affine {
                matrix: [a, b, c, d],
                ..
            } => a * d - b * c,
            _ => Rational::from_integer(1.into()),
        }
    }
}

/// A tame automorphism with its move list and tracked inverse.
#[derive(Clone, Debug, Serialize)]
pub struct TameAutomorphism {
    pub seed: u64,
    pub moves: Vec<ElementaryMove>,
    pub forward: PolyMap,
    pub inverse: PolyMap,
}

/// Composition of maps: `compose(a, b)` substitutes the images of `a` into
/// the images of `b`, i.e. acts as `a ∘ b` on the polynomial ring.  The
/// convention is pinned by the noncommuting test below.
pub fn compose(a: &PolyMap, b: &PolyMap) -> Result<PolyMap> {
    let mut images = BTreeMap::new();
    images.insert("x".to_string(), a.p.clone());
    images.insert("y".to_string(), a.q.clone());
    Ok(PolyMap {
        p: b.p.substitute(&images)?,
        q: b.q.substitute(&images)?,
    })
}

/// Deterministic seeded tame automorphism.
///
/// `n_moves` must lie in `1..=5` and `max_deg` in `2..=6`; the forward
/// images keep total degree at most `degree_bound(max_deg, n_moves)`.
pub fn random_tame(seed: u64, n_moves: u32, max_deg: u32) -> Result<TameAutomorphism> {
    if !(1..=5).contains(&n_moves) {
        return Err(Error::InvalidParameter(format!(
            "n_moves must be in 1..=5, got {}",
            n_moves
        )));
    }
    if !(2..=6).contains(&max_deg) {
        return Err(Error::InvalidParameter(format!(
            "max_deg must be in 2..=6, got {}",
            max_deg
        )));
    }
    let vars = VarSet::new(["x", "y"])?;
    let mut rng = SplitMix64::new(seed);
    let mut moves: Vec<ElementaryMove> = Vec::with_capacity(n_moves as usize);
    // Degree bounds of the running composition's images.
    let (mut deg_x, mut deg_y) = (1u64, 1u64);
    let cap = degree_bound(max_deg, n_moves);

    for _ in 0..n_moves {
        // Triangular payload degrees that keep the composed bound under cap.
        let fits = |d: u64, other: u64| d.saturating_mul(other) <= cap;
        let max_dx = (2..=u64::from(max_deg)).rev().find(|&d| fits(d, deg_y));
        let max_dy = (2..=u64::from(max_deg)).rev().find(|&d| fits(d, deg_x));
        let mut choices: Vec<u8> = vec![2]; // affine always fits
        if max_dx.is_some() {
            choices.push(0);
        }
        if max_dy.is_some() {
            choices.push(1);
        }
        let kind = choices[rng.below(choices.len() as u64) as usize];
        let mv = match kind {
            0 => {
                let hi = max_dx.expect("offered");
                let d = 2 + rng.below(hi - 1);
                let payload = random_univariate(&mut rng, &vars, "y", d as u32)?;
                deg_x = deg_x.max(d * deg_y);
                ElementaryMove::AddX { payload }
            }
            1 => {
                let hi = max_dy.expect("offered");
                let d = 2 + rng.below(hi - 1);
                let payload = random_univariate(&mut rng, &vars, "x", d as u32)?;
                deg_y = deg_y.max(d * deg_x);
                ElementaryMove::AddY { payload }
            }
            _ => {
                let mv = random_affine(&mut rng);
                let both = deg_x.max(deg_y);
                deg_x = both;
                deg_y = both;
                mv
            }
        };
        moves.push(mv);
    }

    let mut forward = PolyMap::identity(&vars)?;
    for mv in &moves {
        forward = compose(&forward, &mv.forward(&vars)?)?;
    }
    let mut inverse = PolyMap::identity(&vars)?;
    for mv in moves.iter().rev() {
        inverse = compose(&inverse, &mv.inverted()?.forward(&vars)?)?;
    }
    if !verify_inverse(&forward, &inverse)? {
        return Err(Error::InternalContract(
            "tracked inverse failed the composition self-check".into(),
        ));
    }
    Ok(TameAutomorphism {
        seed,
        moves,
        forward,
        inverse,
    })
}

/// Univariate payload of exact degree `d` with coefficients in `[-3, 3]` and
/// a nonzero leading coefficient.
fn random_univariate(rng: &mut SplitMix64, vars: &VarSet, var: &str, d: u32) -> Result<Polynomial> {
    let v = Polynomial::variable(vars, var)?;
    let mut acc = Polynomial::zero(vars);
    for k in 0..=d {
        let c = if k == d {
            let mut c = 0;
            while c == 0 {
                c = rng.range_i64(-3, 3);
            }
            c
        } else {
            rng.range_i64(-3, 3)
        };
        if c != 0 {
            acc = &acc + &v.pow(k).scale(&Rational::from_integer(c.into()));
        }
    }
    Ok(acc)
}

fn random_affine(rng: &mut SplitMix64) -> ElementaryMove {
    loop {
        let draw: Vec<i64> = (0..4).map(|_| rng.range_i64(-3, 3)).collect();
        let det = draw[0] * draw[3] - draw[1] * draw[2];
        if det == 0 {
            continue;
        }
        let matrix = [
            Rational::from_integer(draw[0].into()),
            Rational::from_integer(draw[1].into()),
            Rational::from_integer(draw[2].into()),
            Rational::from_integer(draw[3].into()),
        ];
        let translation = [
            Rational::from_integer(rng.range_i64(-3, 3).into()),
            Rational::from_integer(rng.range_i64(-3, 3).into()),
        ];
        return ElementaryMove::Affine {
            matrix,
            translation,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keller::keller_check;
    use crate::polyring::parse_poly;

    fn xy() -> VarSet {
        VarSet::new(["x", "y"]).unwrap()
    }

    fn map(p: &str, q: &str) -> PolyMap {
        let vars = xy();
        PolyMap::new(parse_poly(p, &vars).unwrap(), parse_poly(q, &vars).unwrap()).unwrap()
    }

    #[test]
    fn single_move_examples() {
        let vars = xy();
        let mv = ElementaryMove::AddY {
            payload: parse_poly("x^2", &vars).unwrap(),
        };
        let fwd = mv.forward(&vars).unwrap();
        assert_eq!(fwd, map("x", "y + x^2"));
        let inv = mv.inverted().unwrap().forward(&vars).unwrap();
        assert_eq!(inv, map("x", "y - x^2"));

        // affine swap is an involution
        let swap = ElementaryMove::Affine {
            matrix: [
                Rational::from_integer(0.into()),
                Rational::from_integer(1.into()),
                Rational::from_integer(1.into()),
                Rational::from_integer(0.into()),
            ],
            translation: [
                Rational::from_integer(0.into()),
                Rational::from_integer(0.into()),
            ],
        };
        assert_eq!(swap.forward(&vars).unwrap(), map("y", "x"));
        assert_eq!(
            swap.inverted().unwrap().forward(&vars).unwrap(),
            map("y", "x")
        );
    }

    #[test]
    fn compose_convention() {
        let vars = xy();
        let id = PolyMap::identity(&vars).unwrap();
        let m = map("x", "y + x^2");
        assert_eq!(compose(&id, &m).unwrap(), m);
        assert_eq!(
            compose(&map("x", "y + x^2"), &map("x", "y - x^2")).unwrap(),
            id
        );
        // the pinned composition order: moves [addY x^2, addX y^3] give
        // x + (y + x^2)^3 in the first image
        let g1 = map("x", "y + x^2");
        let g2 = map("x + y^3", "y");
        let c = compose(&g1, &g2).unwrap();
        assert_eq!(c.p, parse_poly("x + (y + x^2)^3", &xy()).unwrap());
        // noncommutativity
        let a = map("y", "x");
        let b = map("x", "y + x^2");
        assert_ne!(compose(&a, &b).unwrap(), compose(&b, &a).unwrap());
    }

    #[test]
    fn random_tame_is_deterministic_and_keller() {
        for seed in 1..=20u64 {
            let t1 = random_tame(seed, 3, 4).unwrap();
            let t2 = random_tame(seed, 3, 4).unwrap();
            assert_eq!(t1.forward, t2.forward);
            assert_eq!(t1.inverse, t2.inverse);
            let report = keller_check(&t1.forward).unwrap();
            assert!(report.is_keller);
            let expected: Rational = t1.moves.iter().map(|m| m.jacobian_factor()).product();
            assert_eq!(report.jacobian_constant.unwrap(), expected);
        }
    }

    #[test]
    fn degree_bound_holds() {
        for seed in 1..=30u64 {
            for (n, d) in [(1u32, 6u32), (3, 6), (5, 2), (2, 5)] {
                let t = random_tame(seed, n, d).unwrap();
                let bound = degree_bound(d, n);
                assert!(t.forward.p.total_degree().unwrap_or(0) <= bound);
                assert!(t.forward.q.total_degree().unwrap_or(0) <= bound);
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(random_tame(1, 0, 4).is_err());
        assert!(random_tame(1, 6, 4).is_err());
        assert!(random_tame(1, 3, 1).is_err());
        assert!(random_tame(1, 3, 7).is_err());
    }

    #[test]
    fn payload_mentioning_shifted_variable_is_rejected() {
        let vars = xy();
        let mv = ElementaryMove::AddX {
            payload: parse_poly("x + y^2", &vars).unwrap(),
        };
        assert!(mv.forward(&vars).is_err());
    }
}
