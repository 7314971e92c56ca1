//! Independent oracles used only by tests: Sylvester resultants with a
//! fraction-free Bareiss determinant over polynomial entries.  Everything
//! here is built on plain `Polynomial` arithmetic and never touches the
//! Gröbner engine, so the two routes stay independent.

use kellerkit_core::polyring::Polynomial;

/// Exact multivariate division: `Some(q)` with `a = q * b`, or `None` when
/// `b` does not divide `a`.  Works by cancelling canonical leading terms,
/// which always succeeds for exact multiples.
pub fn exact_div(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    assert!(!b.is_zero(), "division by zero polynomial");
    let vars = a.vars().clone();
    let mut rest = a.clone();
    let mut quotient = Polynomial::zero(&vars);
    let (bm, bc) = {
        let t = &b.terms()[0];
        (t.0.clone(), t.1.clone())
    };
    while !rest.is_zero() {
        let (rm, rc) = {
            let t = &rest.terms()[0];
            (t.0.clone(), t.1.clone())
        };
        let m = rm.checked_div(&bm)?;
        let c = rc / &bc;
        let t = Polynomial::from_terms(&vars, [(m.clone(), c.clone())]);
        quotient = quotient.try_add(&t).unwrap();
        rest = rest.try_sub(&b.mul_term(&m, &c)).unwrap();
    }
    Some(quotient)
}

/// Determinant by the Bareiss one-step fraction-free scheme; all divisions
/// are exact over the polynomial ring.
pub fn determinant(matrix: &mut [Vec<Polynomial>]) -> Polynomial {
    let n = matrix.len();
    assert!(n > 0 && matrix.iter().all(|r| r.len() == n));
    let vars = matrix[0][0].vars().clone();
    let one = Polynomial::one(&vars);
    let mut sign = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if matrix[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !matrix[i][k].is_zero());
            match swap {
                Some(i) => {
                    matrix.swap(k, i);
                    sign = !sign;
                }
                None => return Polynomial::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&matrix[k][k] * &matrix[i][j]) - &(&matrix[i][k] * &matrix[k][j]);
                matrix[i][j] = if num.is_zero() {
                    num
                } else {
                    exact_div(&num, &prev).expect("Bareiss division is exact")
                };
            }
            matrix[i][k] = Polynomial::zero(&vars);
        }
        prev = matrix[k][k].clone();
    }
    let det = matrix[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Sylvester resultant of `p` and `q` with respect to `var`.  Degenerate
/// degrees follow the usual conventions: `Res(p, q) = p^deg(q)` when `p` is
/// free of `var`, and 1 when both are.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: &str) -> Polynomial {
    let vars = p.vars().clone();
    assert_eq!(q.vars(), &vars);
    let v = vars.index_of(var).expect("variable in scope");
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero(&vars);
    }
    let m = p.degree_in(v);
    let n = q.degree_in(v);
    match (m, n) {
        (0, 0) => return Polynomial::one(&vars),
        (0, _) => return p.pow(n),
        (_, 0) => return q.pow(m),
        _ => {}
    }
    let size = (m + n) as usize;
    let coeff = |f: &Polynomial, k: u32| f.coefficient_of_power(v, k);
    let mut matrix = vec![vec![Polynomial::zero(&vars); size]; size];
    for row in 0..n as usize {
        for k in 0..=m {
            matrix[row][row + (m - k) as usize] = coeff(p, k);
        }
    }
    for row in 0..m as usize {
        for k in 0..=n {
            matrix[n as usize + row][row + (n - k) as usize] = coeff(q, k);
        }
    }
    determinant(&mut matrix)
}
