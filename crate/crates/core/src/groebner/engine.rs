//! Integer-arithmetic engine behind the public Gröbner API.
//!
//! Polynomials are handled as primitive integer term lists sorted descending
//! under the engine's monomial order; reduction is fraction-free
//! pseudo-reduction with an explicit multiplier, so rational remainders can
//! be recovered exactly.  Content is stripped as reductions proceed to bound
//! big-integer growth.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use crate::polyring::{Monomial, Polynomial, Rational, VarSet};

/// Term list sorted strictly descending under the ambient order; primitive
/// (unit integer content, positive leading coefficient) unless stated
/// otherwise at the call site.
#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> (&Monomial, &BigInt) {
        let (m, c) = &self.terms[0];
        (m, c)
    }

    /// Divides out the integer content and makes the leading coefficient
    /// positive.  Returns the (positive) content that was removed.
    pub fn normalize(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        let negative = self.terms[0].1.is_negative();
        if negative {
            content = -content;
        }
        if !content.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &content;
            }
        }
        content.abs()
    }
}

pub(crate) struct Engine<'a> {
    pub order: &'a MonomialOrder,
}

impl<'a> Engine<'a> {
    pub fn new(order: &'a MonomialOrder) -> Self {
        Self { order }
    }

    /// Converts a rational polynomial to primitive integer form, returning
    /// the rational factor `c` with `poly = c * ipoly`.
    pub fn lift_polynomial(&self, p: &Polynomial) -> (IPoly, Rational) {
        if p.is_zero() {
            return (IPoly { terms: Vec::new() }, Rational::one());
        }
        let prim = p.integer_primitive();
        let mut terms: Vec<(Monomial, BigInt)> = prim
            .terms()
            .iter()
            .map(|(m, c)| {
                debug_assert!(c.is_integer());
                (m.clone(), c.numer().clone())
            })
            .collect();
        terms.sort_by(|(a, _), (b, _)| self.order.cmp(b, a));
        let mut ip = IPoly { terms };
        // integer_primitive uses the canonical print order for its sign rule;
        // re-fix the sign for the engine order.
        ip.normalize();
        // factor: p = factor * ip. Compare any one coefficient.
        let (m0, c0) = ip.leading();
        let orig = p
            .terms()
            .iter()
            .find(|(m, _)| m == m0)
            .map(|(_, c)| c.clone())
            .expect("leading monomial present");
        let factor = orig / Rational::from_integer(c0.clone());
        (ip, factor)
    }

    /// Back to a rational polynomial, scaled by `factor`.
    pub fn to_polynomial(&self, ip: &IPoly, vars: &VarSet, factor: &Rational) -> Polynomial {
        Polynomial::from_terms(
            vars,
            ip.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) * factor)),
        )
    }

    /// `a*f - c*(m*g)`, merging the sorted term lists in one pass.
    fn combine(&self, f: &IPoly, a: &BigInt, g: &IPoly, c: &BigInt, m: &Monomial) -> IPoly {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            let (mf, cf) = &f.terms[i];
            let mg = g.terms[j].0.mul(m);
            match self.order.cmp(mf, &mg) {
                Ordering::Greater => {
                    out.push((mf.clone(), cf * a));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mg, -(&g.terms[j].1 * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = cf * a - &g.terms[j].1 * c;
                    if !coeff.is_zero() {
                        out.push((mg, coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        while i < f.terms.len() {
            let (mf, cf) = &f.terms[i];
            out.push((mf.clone(), cf * a));
            i += 1;
        }
        while j < g.terms.len() {
            let (mg, cg) = &g.terms[j];
            out.push((mg.mul(m), -(cg * c)));
            j += 1;
        }
        IPoly { terms: out }
    }

    /// Full normal form by pseudo-reduction: returns `(r, k)` with
    /// `k * input = (ideal element) + r` and no term of `r` divisible by any
    /// basis leading term.  `k` is a positive integer.
    pub fn normal_form(&self, input: IPoly, basis: &[IPoly]) -> (IPoly, BigInt) {
        let mut multiplier = BigInt::one();
        let mut head: Vec<(Monomial, BigInt)> = Vec::new();
        let mut tail = input;
        let mut steps_since_strip = 0usize;
        'outer: while !tail.is_zero() {
            let (m, c) = {
                let (m, c) = tail.leading();
                (m.clone(), c.clone())
            };
            for g in basis {
                if g.is_zero() {
                    continue;
                }
                let (gm, gc) = g.leading();
                if let Some(q) = m.checked_div(gm) {
                    let d = c.gcd(gc);
                    let fmul = gc / &d; // positive: basis leads are positive
                    let gmul = &c / &d;
                    if !fmul.is_one() {
                        for (_, hc) in &mut head {
                            *hc *= &fmul;
                        }
                        for (_, tc) in &mut tail.terms {
                            *tc *= &fmul;
                        }
                        multiplier *= &fmul;
                    }
                    tail = self.combine(&tail, &BigInt::one(), g, &gmul, &q);
                    steps_since_strip += 1;
                    if steps_since_strip >= 16 {
                        steps_since_strip = 0;
                        strip_common(&mut head, &mut tail, &mut multiplier);
                    }
                    continue 'outer;
                }
            }
            // irreducible leading term: move it to the head
            head.push(tail.terms.remove(0));
        }
        let mut remainder = IPoly { terms: head };
        strip_common_poly(&mut remainder, &mut multiplier);
        (remainder, multiplier)
    }

    /// S-polynomial with integer cross-scaling; head terms cancel exactly.
    fn s_polynomial(&self, f: &IPoly, g: &IPoly) -> IPoly {
        let (fm, fc) = f.leading();
        let (gm, gc) = g.leading();
        let lcm = fm.lcm(gm);
        let d = fc.gcd(gc);
        let f_factor = gc / &d;
        let g_factor = fc / &d;
        let mf = lcm.checked_div(fm).expect("lcm divisible");
        let mg = lcm.checked_div(gm).expect("lcm divisible");
        // f_factor * (mf * f) - g_factor * (mg * g)
        let shifted_f = IPoly {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&mf), c.clone()))
                .collect(),
        };
        self.combine(&shifted_f, &f_factor, g, &g_factor, &mg)
    }

    /// Buchberger's algorithm with the Gebauer–Möller pair criteria.
    /// Returns the unique reduced basis (primitive integer form, leading
    /// terms strictly descending).
    pub fn buchberger(&self, inputs: Vec<IPoly>) -> Vec<IPoly> {
        let mut basis: Vec<IPoly> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        for mut input in inputs {
            input.normalize();
            if input.is_zero() {
                continue;
            }
            let (mut reduced, _) = self.normal_form(input, &basis);
            if reduced.is_zero() {
                continue;
            }
            reduced.normalize();
            self.update_pairs(&mut basis, &mut pairs, reduced);
        }

        while !pairs.is_empty() {
            // Normal selection: smallest lcm under the order, ties by index.
            let mut best = 0;
            for k in 1..pairs.len() {
                let ord = self
                    .order
                    .cmp(&pairs[k].lcm, &pairs[best].lcm)
                    .then_with(|| (pairs[k].i, pairs[k].j).cmp(&(pairs[best].i, pairs[best].j)));
                if ord == Ordering::Less {
                    best = k;
                }
            }
            let pair = pairs.swap_remove(best);
            let s = self.s_polynomial(&basis[pair.i], &basis[pair.j]);
            if s.is_zero() {
                continue;
            }
            let (mut reduced, _) = self.normal_form(s, &basis);
            if reduced.is_zero() {
                continue;
            }
            reduced.normalize();
            self.update_pairs(&mut basis, &mut pairs, reduced);
        }

        self.autoreduce(basis)
    }

    /// Gebauer–Möller update: installs pairs of `h` against the basis after
    /// pruning with the multiple (M), same-lcm (F) and coprimality (B)
    /// criteria, then drops old pairs dominated by `h` (chain criterion).
    fn update_pairs(&self, basis: &mut Vec<IPoly>, pairs: &mut Vec<Pair>, h: IPoly) {
        let t = basis.len();
        let lt_h = h.leading().0.clone();

        let mut cand: Vec<Pair> = (0..t)
            .map(|i| Pair {
                i,
                j: t,
                lcm: basis[i].leading().0.lcm(&lt_h),
            })
            .collect();

        // M criterion: drop candidates whose lcm is a proper multiple of
        // another candidate's lcm.
        let keep: Vec<bool> = cand
            .iter()
            .map(|p| !cand.iter().any(|q| q.lcm != p.lcm && q.lcm.divides(&p.lcm)))
            .collect();
        let mut kept: Vec<Pair> = cand
            .drain(..)
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();

        // F criterion: one representative per lcm value; a coprime pair in a
        // class certifies the whole class, so the class is dropped entirely.
        let mut final_new: Vec<Pair> = Vec::new();
        while let Some(p) = kept.first().cloned() {
            let class: Vec<Pair> = kept.iter().filter(|q| q.lcm == p.lcm).cloned().collect();
            kept.retain(|q| q.lcm != p.lcm);
            let coprime = class
                .iter()
                .any(|q| basis[q.i].leading().0.is_coprime_with(&lt_h));
            if !coprime {
                final_new.push(class.into_iter().min_by_key(|q| q.i).expect("nonempty"));
            }
        }

        // Chain criterion on the old pairs.
        pairs.retain(|p| {
            let lcm_ij = &p.lcm;
            if !lt_h.divides(lcm_ij) {
                return true;
            }
            let lcm_it = basis[p.i].leading().0.lcm(&lt_h);
            let lcm_jt = basis[p.j].leading().0.lcm(&lt_h);
            lcm_it == *lcm_ij || lcm_jt == *lcm_ij
        });

        pairs.extend(final_new);
        basis.push(h);
    }

    /// Minimalize + tail-reduce: the classical post-pass yielding the unique
    /// reduced basis.
    fn autoreduce(&self, basis: Vec<IPoly>) -> Vec<IPoly> {
        // Minimalize: keep only elements whose leading term no other kept
        // element divides; scanning by ascending leading term makes the
        // result independent of insertion history.
        let mut order_ix: Vec<usize> = (0..basis.len()).collect();
        order_ix.sort_by(|&a, &b| self.order.cmp(basis[a].leading().0, basis[b].leading().0));
        let mut minimal: Vec<IPoly> = Vec::new();
        for ix in order_ix {
            let lt = basis[ix].leading().0;
            if !minimal.iter().any(|g| g.leading().0.divides(lt)) {
                minimal.push(basis[ix].clone());
            }
        }
        // Tail-reduce each element against the others.
        let mut reduced: Vec<IPoly> = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<IPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let (mut r, _) = self.normal_form(minimal[i].clone(), &others);
            r.normalize();
            debug_assert!(!r.is_zero());
            reduced.push(r);
        }
        reduced.sort_by(|a, b| self.order.cmp(b.leading().0, a.leading().0));
        reduced
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn strip_common(head: &mut [(Monomial, BigInt)], tail: &mut IPoly, multiplier: &mut BigInt) {
    let mut g = multiplier.clone();
    for (_, c) in head.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    for (_, c) in &tail.terms {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_one() || g.is_zero() {
        return;
    }
    for (_, c) in head.iter_mut() {
        *c = &*c / &g;
    }
    for (_, c) in &mut tail.terms {
        *c = &*c / &g;
    }
    *multiplier = &*multiplier / &g;
}

fn strip_common_poly(p: &mut IPoly, multiplier: &mut BigInt) {
    let mut g = multiplier.clone();
    for (_, c) in &p.terms {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_one() || g.is_zero() {
        return;
    }
    for (_, c) in &mut p.terms {
        *c = &*c / &g;
    }
    *multiplier = &*multiplier / &g;
}
