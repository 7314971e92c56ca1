//! Finite free complexes over `K[u,v,s]` and their reduction modulo an
//! ideal: the constructive matrix-level content of passing from a complex of
//! free `R`-modules to a complex of free `R/I`-modules of the same ranks.
//!
//! Modules appear only through matrices; exactness over the quotient is
//! never decided, only probed generically through ranks over the fraction
//! field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form, GroebnerBasis, MonomialOrder};
use crate::polyring::{parse_poly, Polynomial, VarSet};

/// Base ring of a complex: a polynomial ring, optionally modulo an ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct RingSpec {
    pub vars: VarSet,
    pub modulus: Vec<Polynomial>,
}

impl RingSpec {
    pub fn polynomial_ring(vars: &VarSet) -> Self {
        Self {
            vars: vars.clone(),
            modulus: Vec::new(),
        }
    }

    pub fn quotient(vars: &VarSet, modulus: Vec<Polynomial>) -> Result<Self> {
        for g in &modulus {
            if g.vars() != vars {
                return Err(Error::VarSetMismatch);
            }
        }
        Ok(Self {
            vars: vars.clone(),
            modulus,
        })
    }

    pub fn is_quotient(&self) -> bool {
        !self.modulus.is_empty()
    }

    fn modulus_basis(&self) -> Result<Option<GroebnerBasis>> {
        if self.modulus.is_empty() {
            return Ok(None);
        }
        Ok(Some(buchberger(&self.modulus, &MonomialOrder::Grevlex)?))
    }
}

/// Dense matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix, vars: &VarSet) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(vars);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.at(i, k).try_mul(other.at(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(self.rows, other.cols, entries)
    }
}

/// Finite free complex `F_n -> ... -> F_1 -> F_0`.
///
/// `maps[j]` is the differential `F_{j+1} -> F_j`, a matrix with `ranks[j]`
/// rows and `ranks[j+1]` columns; `ranks` lists the free ranks
/// `r_0, ..., r_n`.  The complex contract is that consecutive products
/// vanish modulo the ring's modulus; `verify` decides it.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    pub ring: RingSpec,
    pub ranks: Vec<usize>,
    pub maps: Vec<PolyMatrix>,
}

impl FreeComplex {
    /// Builds a complex from its differentials, checking that adjacent
    /// shapes compose.  The composition-zero property is not enforced here;
    /// use `verify_complex`.
    pub fn new(ring: RingSpec, maps: Vec<PolyMatrix>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidParameter(
                "a complex needs at least one map".into(),
            ));
        }
        for m in &maps {
            for e in &m.entries {
                if e.vars() != &ring.vars {
                    return Err(Error::VarSetMismatch);
                }
            }
        }
        let mut ranks = vec![maps[0].rows];
        for (j, m) in maps.iter().enumerate() {
            if m.rows != *ranks.last().expect("nonempty") {
                return Err(Error::ShapeMismatch(format!(
                    "map {} has {} rows but the target module has rank {}",
                    j,
                    m.rows,
                    ranks.last().expect("nonempty")
                )));
            }
            ranks.push(m.cols);
        }
        Ok(Self { ring, ranks, maps })
    }
}

/// Standard Koszul complex on one to three ring elements; the differentials
/// are the textbook exterior-algebra matrices.
pub fn koszul_complex(elements: &[Polynomial], ring: &RingSpec) -> Result<FreeComplex> {
    if elements.is_empty() || elements.len() > 3 {
        return Err(Error::InvalidParameter(format!(
            "koszul complex supports 1 to 3 elements, got {}",
            elements.len()
        )));
    }
    for e in elements {
        if e.vars() != &ring.vars {
            return Err(Error::VarSetMismatch);
        }
    }
    let vars = &ring.vars;
    let maps = match elements {
        [a] => vec![PolyMatrix::new(1, 1, vec![a.clone()])?],
        [a, b] => vec![
            PolyMatrix::new(1, 2, vec![a.clone(), b.clone()])?,
            PolyMatrix::new(2, 1, vec![-b, a.clone()])?,
        ],
        [a, b, c] => vec![
            PolyMatrix::new(1, 3, vec![a.clone(), b.clone(), c.clone()])?,
            // columns e12, e13, e23 over rows e1, e2, e3
            PolyMatrix::new(
                3,
                3,
                vec![
                    -b,
                    -c,
                    Polynomial::zero(vars),
                    a.clone(),
                    Polynomial::zero(vars),
                    -c,
                    Polynomial::zero(vars),
                    a.clone(),
                    b.clone(),
                ],
            )?,
            PolyMatrix::new(3, 1, vec![c.clone(), -b, a.clone()])?,
        ],
        _ => unreachable!(),
    };
    FreeComplex::new(ring.clone(), maps)
}

/// Reduces a complex over the polynomial ring modulo an ideal: every entry
/// is replaced by its normal form, the ranks are unchanged, and the result
/// ring carries the modulus.  The reduced maps again compose to zero modulo
/// the ideal, entry by entry.
pub fn reduce_complex_mod_ideal(
    complex: &FreeComplex,
    ideal: &[Polynomial],
) -> Result<FreeComplex> {
    if complex.ring.is_quotient() {
        return Err(Error::InvalidParameter(
            "complex is already over a quotient ring".into(),
        ));
    }
    for g in ideal {
        if g.vars() != &complex.ring.vars {
            return Err(Error::VarSetMismatch);
        }
    }
    let basis = buchberger(ideal, &MonomialOrder::Grevlex)?;
    let maps = complex
        .maps
        .iter()
        .map(|m| {
            let entries: Result<Vec<Polynomial>> =
                m.entries.iter().map(|e| normal_form(e, &basis)).collect();
            Ok(PolyMatrix {
                rows: m.rows,
                cols: m.cols,
                entries: entries?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeComplex {
        ring: RingSpec::quotient(&complex.ring.vars, ideal.to_vec())?,
        ranks: complex.ranks.clone(),
        maps,
    })
}

/// True iff every consecutive product has all entries reducing to zero
/// modulo the ring's modulus (literally zero over the polynomial ring).
pub fn verify_complex(complex: &FreeComplex) -> Result<bool> {
    let basis = complex.ring.modulus_basis()?;
    for window in complex.maps.windows(2) {
        let product = window[0].mul(&window[1], &complex.ring.vars)?;
        for entry in &product.entries {
            let reduced = match &basis {
                Some(b) => normal_form(entry, b)?,
                None => entry.clone(),
            };
            if !reduced.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Generic rank data for a complex: the rank of each differential over the
/// fraction field of the base ring, plus the homology defect
/// `r_j - rank(β_j) - rank(β_{j+1})` this leaves at every position.  The
/// augmentation is dropped, so position 0 sees only the incoming map.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankProfile {
    pub map_ranks: Vec<usize>,
    pub defects: Vec<usize>,
}

/// Computes matrix ranks over `Frac(R)` or `Frac(R/(g))` by fraction-free
/// Gaussian elimination; a pivot candidate counts as zero exactly when its
/// normal form modulo `(g)` vanishes.  The modulus must be empty or a single
/// (irreducible) polynomial so the quotient is a domain.
pub fn generic_rank_profile(complex: &FreeComplex) -> Result<RankProfile> {
    if complex.ring.modulus.len() > 1 {
        return Err(Error::UnsupportedModulus(format!(
            "rank over a quotient needs a principal modulus, got {} generators",
            complex.ring.modulus.len()
        )));
    }
    if complex.ring.modulus.len() == 1 && complex.ring.modulus[0].is_zero() {
        return Err(Error::UnsupportedModulus("zero modulus".into()));
    }
    let basis = complex.ring.modulus_basis()?;
    let reduce = |p: &Polynomial| -> Result<Polynomial> {
        match &basis {
            Some(b) => normal_form(p, b),
            None => Ok(p.clone()),
        }
    };
    let mut map_ranks = Vec::with_capacity(complex.maps.len());
    for m in &complex.maps {
        map_ranks.push(matrix_rank(m, &reduce)?);
    }
    let n = complex.ranks.len();
    let mut defects = Vec::with_capacity(n);
    for j in 0..n {
        let outgoing = if j >= 1 { map_ranks[j - 1] } else { 0 };
        let incoming = if j < map_ranks.len() { map_ranks[j] } else { 0 };
        let defect = complex.ranks[j]
            .checked_sub(outgoing + incoming)
            .ok_or_else(|| {
                Error::InternalContract(
                    "rank sum exceeds free rank; input is not a complex over a domain".into(),
                )
            })?;
        defects.push(defect);
    }
    Ok(RankProfile { map_ranks, defects })
}

/// Fraction-free elimination: rows are cross-multiplied rather than divided,
/// which preserves rank over the fraction field of a domain; entries are
/// normal-formed and content-stripped to tame growth.
fn matrix_rank(
    matrix: &PolyMatrix,
    reduce: &impl Fn(&Polynomial) -> Result<Polynomial>,
) -> Result<usize> {
    let mut work: Vec<Vec<Polynomial>> = (0..matrix.rows)
        .map(|i| {
            (0..matrix.cols)
                .map(|j| reduce(matrix.at(i, j)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rank = 0;
    let mut row_start = 0;
    for col in 0..matrix.cols {
        // first row at or below row_start with a nonzero entry in this column
        let pivot = (row_start..work.len()).find(|&i| !work[i][col].is_zero());
        let Some(pivot) = pivot else { continue };
        work.swap(row_start, pivot);
        let pivot_entry = work[row_start][col].clone();
        for i in row_start + 1..work.len() {
            if work[i][col].is_zero() {
                continue;
            }
            let factor = work[i][col].clone();
            for j in 0..work[i].len() {
                let a = work[row_start][j].try_mul(&factor)?;
                let b = work[i][j].try_mul(&pivot_entry)?;
                work[i][j] = reduce(&b.try_sub(&a)?)?;
            }
            // strip content so coefficients stay small
            rank_normalize_row(&mut work[i]);
        }
        rank += 1;
        row_start += 1;
        if row_start == work.len() {
            break;
        }
    }
    Ok(rank)
}

/// Divides a whole row by the gcd of its integer contents.
fn rank_normalize_row(row: &mut [Polynomial]) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let mut denom_lcm = BigInt::one();
    let mut content = BigInt::zero();
    for p in row.iter() {
        for (_, c) in p.terms() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
    }
    for p in row.iter() {
        for (_, c) in p.terms() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            content = content.gcd(&scaled);
        }
    }
    if content.is_zero() || (content.is_one() && denom_lcm.is_one()) {
        return;
    }
    let factor = crate::polyring::Rational::new(denom_lcm, content);
    for p in row.iter_mut() {
        *p = p.scale(&factor);
    }
}

// ---------------------------------------------------------------------------
// JSON wire format: ranks plus row-major canonical-string matrices.

#[derive(Serialize, Deserialize)]
pub struct ComplexJson {
    pub ring: RingJson,
    pub ranks: Vec<usize>,
    pub maps: Vec<MatrixJson>,
}

#[derive(Serialize, Deserialize)]
pub struct RingJson {
    pub vars: Vec<String>,
    pub modulus: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl FreeComplex {
    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ring: RingJson {
                vars: self.ring.vars.names().to_vec(),
                modulus: self.ring.modulus.iter().map(|g| g.to_string()).collect(),
            },
            ranks: self.ranks.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| MatrixJson {
                    rows: m.rows,
                    cols: m.cols,
                    entries: m.entries.iter().map(|e| e.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let vars = VarSet::new(json.ring.vars.iter().cloned())?;
        let mut modulus = Vec::new();
        for (k, text) in json.ring.modulus.iter().enumerate() {
            modulus.push(parse_poly(text, &vars).map_err(|e| {
                Error::InvalidParameter(format!("bad modulus generator {}: {}", k, e))
            })?);
        }
        let ring = RingSpec::quotient(&vars, modulus)?;
        let mut maps = Vec::new();
        for (map_ix, m) in json.maps.iter().enumerate() {
            if m.entries.len() != m.rows * m.cols {
                return Err(Error::ShapeMismatch(format!(
                    "map {} declares {}x{} but carries {} entries",
                    map_ix,
                    m.rows,
                    m.cols,
                    m.entries.len()
                )));
            }
            let mut entries = Vec::with_capacity(m.entries.len());
            for (k, text) in m.entries.iter().enumerate() {
                let entry = parse_poly(text, &vars).map_err(|e| Error::MatrixEntry {
                    map: map_ix,
                    row: k / m.cols,
                    col: k % m.cols,
                    message: e.to_string(),
                })?;
                entries.push(entry);
            }
            maps.push(PolyMatrix::new(m.rows, m.cols, entries)?);
        }
        let complex = FreeComplex::new(ring, maps)?;
        if complex.ranks != json.ranks {
            return Err(Error::ShapeMismatch(format!(
                "declared ranks {:?} do not match map shapes {:?}",
                json.ranks, complex.ranks
            )));
        }
        Ok(complex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat_int;

    fn uvs() -> VarSet {
        VarSet::new(["u", "v", "s"]).unwrap()
    }

    fn p(text: &str) -> Polynomial {
        parse_poly(text, &uvs()).unwrap()
    }

    #[test]
    fn koszul_shapes_and_complex_property() {
        let ring = RingSpec::polynomial_ring(&uvs());
        let k1 = koszul_complex(&[p("u")], &ring).unwrap();
        assert_eq!(k1.ranks, vec![1, 1]);
        assert_eq!(k1.maps[0].entries, vec![p("u")]);

        let k2 = koszul_complex(&[p("u"), p("v")], &ring).unwrap();
        assert_eq!(k2.ranks, vec![1, 2, 1]);
        assert_eq!(k2.maps[0].entries, vec![p("u"), p("v")]);
        assert_eq!(k2.maps[1].entries, vec![p("-v"), p("u")]);
        assert!(verify_complex(&k2).unwrap());

        let k3 = koszul_complex(&[p("u"), p("v"), p("s")], &ring).unwrap();
        assert_eq!(k3.ranks, vec![1, 3, 3, 1]);
        assert!(verify_complex(&k3).unwrap());

        assert!(koszul_complex(&[], &ring).is_err());
    }

    #[test]
    fn reduce_examples() {
        let ring = RingSpec::polynomial_ring(&uvs());
        // grevlex with u > v > s leads (s - u - v) by u, so u rewrites to
        // s - v; the reduced matrices stay a complex of the same ranks.
        let k2 = koszul_complex(&[p("u"), p("v")], &ring).unwrap();
        let reduced = reduce_complex_mod_ideal(&k2, &[p("s - u - v")]).unwrap();
        assert_eq!(reduced.maps[0].entries, vec![p("s - v"), p("v")]);
        assert_eq!(reduced.maps[1].entries, vec![p("-v"), p("s - v")]);
        assert_eq!(reduced.ranks, k2.ranks);
        assert!(verify_complex(&reduced).unwrap());

        // self-annihilation: [g] mod (g) is the zero matrix
        let g = p("(s^2 - u - v)^2 - 4*u*v");
        let single = koszul_complex(std::slice::from_ref(&g), &ring).unwrap();
        let reduced = reduce_complex_mod_ideal(&single, &[g]).unwrap();
        assert!(reduced.maps[0].entries[0].is_zero());

        // mod (u - v) the grevlex normal form rewrites u into v
        let reduced = reduce_complex_mod_ideal(&k2, &[p("u - v")]).unwrap();
        assert_eq!(reduced.maps[0].entries, vec![p("v"), p("v")]);
        assert_eq!(reduced.maps[1].entries, vec![p("-v"), p("v")]);
        assert!(verify_complex(&reduced).unwrap());
    }

    #[test]
    fn verify_rejects_non_complex() {
        let ring = RingSpec::polynomial_ring(&uvs());
        let one = Polynomial::constant(&uvs(), rat_int(1));
        let maps = vec![
            PolyMatrix::new(1, 1, vec![one.clone()]).unwrap(),
            PolyMatrix::new(1, 1, vec![one]).unwrap(),
        ];
        let complex = FreeComplex::new(ring, maps).unwrap();
        assert!(!verify_complex(&complex).unwrap());
    }

    #[test]
    fn rank_profile_examples() {
        let ring = RingSpec::polynomial_ring(&uvs());
        let k2 = koszul_complex(&[p("u"), p("v")], &ring).unwrap();
        let profile = generic_rank_profile(&k2).unwrap();
        assert_eq!(profile.map_ranks, vec![1, 1]);
        assert_eq!(profile.defects, vec![0, 0, 0]);

        // 1x1 [g] mod (g): rank 0
        let g = p("s - u - v");
        let single = koszul_complex(std::slice::from_ref(&g), &ring).unwrap();
        let reduced = reduce_complex_mod_ideal(&single, &[g]).unwrap();
        let profile = generic_rank_profile(&reduced).unwrap();
        assert_eq!(profile.map_ranks, vec![0]);
        assert_eq!(profile.defects, vec![1, 1]);

        // koszul(u, v) mod (u - v): both maps keep rank 1, middle defect 0
        let reduced = reduce_complex_mod_ideal(&k2, &[p("u - v")]).unwrap();
        let profile = generic_rank_profile(&reduced).unwrap();
        assert_eq!(profile.map_ranks, vec![1, 1]);
        assert_eq!(profile.defects[1], 0);
    }

    #[test]
    fn json_round_trip() {
        let ring = RingSpec::polynomial_ring(&uvs());
        let k3 = koszul_complex(&[p("u"), p("v"), p("s")], &ring).unwrap();
        let json = k3.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: ComplexJson = serde_json::from_str(&text).unwrap();
        let back = FreeComplex::from_json(&parsed).unwrap();
        assert_eq!(back, k3);
    }

    #[test]
    fn from_json_names_bad_entry() {
        let json = ComplexJson {
            ring: RingJson {
                vars: vec!["u".into(), "v".into()],
                modulus: vec![],
            },
            ranks: vec![1, 2],
            maps: vec![MatrixJson {
                rows: 1,
                cols: 2,
                entries: vec!["u".into(), "2x".into()],
            }],
        };
        let err = FreeComplex::from_json(&json).unwrap_err();
        match err {
            Error::MatrixEntry { map, row, col, .. } => {
                assert_eq!((map, row, col), (0, 0, 1));
            }
            other => panic!("expected MatrixEntry error, got {other:?}"),
        }
    }
}
