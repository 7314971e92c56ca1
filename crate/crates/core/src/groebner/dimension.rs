//! Staircase combinatorics on leading-term ideals: quotient vector-space
//! dimension (standard monomial counts) and Krull dimension via independent
//! variable subsets.

use crate::polyring::Monomial;

/// Number of monomials outside the leading-term ideal, or `Infinite` when
/// the staircase is unbounded.  `lms` must not contain 1; the caller handles
/// the unit ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VsDim {
    Finite(u64),
    Infinite,
}

pub(crate) fn standard_monomial_count(nvars: usize, lms: &[Monomial]) -> VsDim {
    if nvars == 0 {
        // Constants only; the quotient is K itself for the zero ideal.
        return if lms.is_empty() {
            VsDim::Finite(1)
        } else {
            VsDim::Finite(0)
        };
    }
    if lms.is_empty() {
        return VsDim::Infinite;
    }
    // Finite iff a pure power of every variable leads some basis element.
    let mut bounds = vec![None::<u32>; nvars];
    for lm in lms {
        let support: Vec<usize> = lm.support().collect();
        if support.len() == 1 {
            let i = support[0];
            let e = lm.exp(i);
            bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
        }
    }
    if bounds.iter().any(|b| b.is_none()) {
        return VsDim::Infinite;
    }
    let bounds: Vec<u32> = bounds.into_iter().map(|b| b.unwrap()).collect();
    // Enumerate the box below the pure-power bounds and keep the monomials
    // not divisible by any leading monomial.
    let mut count = 0u64;
    let mut exps = vec![0u32; nvars];
    loop {
        let candidate = Monomial::from_exponents(exps.iter().copied());
        if !lms.iter().any(|lm| lm.divides(&candidate)) {
            count += 1;
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == nvars {
                return VsDim::Finite(count);
            }
            exps[k] += 1;
            if exps[k] < bounds[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

/// Krull dimension of the quotient by the ideal with the given leading
/// monomials: the largest cardinality of a variable subset `U` such that no
/// leading monomial is supported inside `U`.  Callers handle the unit ideal.
pub(crate) fn krull_dimension(nvars: usize, lms: &[Monomial]) -> i64 {
    debug_assert!(lms.iter().all(|m| !m.is_one()));
    let mut best: i64 = -1;
    for mask in 0u32..(1 << nvars) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let independent = !lms
            .iter()
            .any(|lm| lm.support().all(|i| mask & (1 << i) != 0));
        if independent {
            best = size;
        }
    }
    best
}
