//! Shared test-support generator for random composition-zero complexes:
//! Koszul blocks, direct sums, elementary unimodular scrambles, and scalar
//! rescalings — every constructor provably preserves the complex property.

use kellerkit_core::complexes::{koszul_complex, FreeComplex, PolyMatrix, RingSpec};
use kellerkit_core::polyring::{Monomial, Polynomial, Rational, VarSet};
use kellerkit_core::rng::SplitMix64;

pub fn uvs() -> VarSet {
    VarSet::new(["u", "v", "s"]).unwrap()
}

pub fn random_poly(rng: &mut SplitMix64, vars: &VarSet, max_deg: u32, terms: usize) -> Polynomial {
    let mut acc = Polynomial::zero(vars);
    for _ in 0..terms {
        let mut exps = vec![0u32; vars.len()];
        let mut left = max_deg;
        for e in exps.iter_mut() {
            let d = rng.below(u64::from(left) + 1) as u32;
            *e = d;
            left -= d;
        }
        let c = rng.range_i64(-3, 3);
        acc = acc
            .try_add(&Polynomial::from_terms(
                vars,
                [(
                    Monomial::from_exponents(exps),
                    Rational::from_integer(c.into()),
                )],
            ))
            .unwrap();
    }
    acc
}

pub fn nonzero_poly(rng: &mut SplitMix64, vars: &VarSet, max_deg: u32, terms: usize) -> Polynomial {
    loop {
        let p = random_poly(rng, vars, max_deg, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Direct sum of two complexes over the same ring: block-diagonal maps after
/// padding both to the same length.
pub fn direct_sum(a: &FreeComplex, b: &FreeComplex) -> FreeComplex {
    let vars = &a.ring.vars;
    let len = a.maps.len().max(b.maps.len());
    let rank = |c: &FreeComplex, j: usize| -> usize { c.ranks.get(j).copied().unwrap_or(0) };
    let mut maps = Vec::new();
    for j in 0..len {
        let rows = rank(a, j) + rank(b, j);
        let cols = rank(a, j + 1) + rank(b, j + 1);
        let mut entries = vec![Polynomial::zero(vars); rows * cols];
        if let Some(ma) = a.maps.get(j) {
            for r in 0..ma.rows {
                for c in 0..ma.cols {
                    entries[r * cols + c] = ma.at(r, c).clone();
                }
            }
        }
        if let Some(mb) = b.maps.get(j) {
            let (r0, c0) = (rank(a, j), rank(a, j + 1));
            for r in 0..mb.rows {
                for c in 0..mb.cols {
                    entries[(r0 + r) * cols + (c0 + c)] = mb.at(r, c).clone();
                }
            }
        }
        maps.push(PolyMatrix::new(rows, cols, entries).unwrap());
    }
    FreeComplex::new(a.ring.clone(), maps).unwrap()
}

/// Basis change at position `j`: `β_j ← β_j·E` and `β_{j+1} ← E⁻¹·β_{j+1}`
/// for an elementary unimodular `E`, which keeps all consecutive products.
pub fn elementary_transform(complex: &mut FreeComplex, j: usize, rng: &mut SplitMix64) {
    let vars = complex.ring.vars.clone();
    let rank_j = complex.ranks[j];
    if rank_j < 2 {
        return;
    }
    let r1 = rng.below(rank_j as u64) as usize;
    let mut r2 = rng.below(rank_j as u64) as usize;
    if r1 == r2 {
        r2 = (r2 + 1) % rank_j;
    }
    let f = random_poly(rng, &vars, 1, 2);
    if j >= 1 {
        let m = &mut complex.maps[j - 1];
        for row in 0..m.rows {
            let updated = m
                .at(row, r1)
                .try_add(&m.at(row, r2).try_mul(&f).unwrap())
                .unwrap();
            m.entries[row * m.cols + r1] = updated;
        }
    }
    if j < complex.maps.len() {
        let m = &mut complex.maps[j];
        for col in 0..m.cols {
            let updated = m
                .at(r2, col)
                .try_sub(&m.at(r1, col).try_mul(&f).unwrap())
                .unwrap();
            m.entries[r2 * m.cols + col] = updated;
        }
    }
}

/// Random composition-zero complex over `K[u,v,s]`.
pub fn random_complex(rng: &mut SplitMix64) -> FreeComplex {
    let vars = uvs();
    let ring = RingSpec::polynomial_ring(&vars);
    let koszul_block = |rng: &mut SplitMix64| {
        let n = 1 + rng.below(3) as usize;
        let elements: Vec<Polynomial> = (0..n).map(|_| nonzero_poly(rng, &vars, 2, 2)).collect();
        koszul_complex(&elements, &ring).unwrap()
    };
    let mut complex = koszul_block(rng);
    if rng.below(2) == 0 {
        let other = koszul_block(rng);
        complex = direct_sum(&complex, &other);
    }
    for _ in 0..(1 + rng.below(4)) {
        let j = rng.below(complex.ranks.len() as u64) as usize;
        elementary_transform(&mut complex, j, rng);
    }
    if rng.below(3) == 0 && !complex.maps.is_empty() {
        let j = rng.below(complex.maps.len() as u64) as usize;
        let c = nonzero_poly(rng, &vars, 1, 2);
        let scaled = complex.maps[j].map_entries(|e| e.try_mul(&c).unwrap());
        complex.maps[j] = scaled;
    }
    complex
}
