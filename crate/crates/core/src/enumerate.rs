//! Exhaustive enumeration of coalgebra structures over small prime fields.

use rayon::prelude::*;

use crate::coalgebra::{check_coalgebra, Coalgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{solve, Mat};

pub const DEFAULT_BUDGET: u128 = 1 << 30;

/// `p^(dim³ + dim)`, saturating.
pub fn nominal_candidates(field: Field, dim: usize) -> u128 {
    let p = field.characteristic() as u128;
    let e = (dim * dim * dim + dim) as u32;
    p.checked_pow(e).unwrap_or(u128::MAX)
}

/// Every coalgebra structure on `F_p^dim`, sorted by tensor entries `d[i][j][k]`
/// (residues, `i` outermost) and then by counit.
///
/// The nominal search space is all tensors and counits; only the counital ones
/// are materialized, by solving the counit equations for each `Δ(e_i)`.
pub fn enumerate_coalgebras(field: Field, dim: usize, budget: u128) -> Result<Vec<Coalgebra>> {
    if !field.is_finite() {
        return Err(Error::InvalidStructure("enumeration needs a finite field".into()));
    }
    let required = nominal_candidates(field, dim);
    if required > budget {
        return Err(Error::BudgetExceeded {
            what: "coalgebra enumeration",
            required,
            limit: budget,
        });
    }
    if dim == 0 {
        let empty = Coalgebra::new(field, 0, Mat::zeros(field, 0, 0), Vec::new(), "C0#0")?;
        return Ok(vec![empty]);
    }
    let counits: Vec<Vec<Scalar>> = all_vectors(field, dim)
        .into_iter()
        .filter(|e| e.iter().any(|x| !x.is_zero()))
        .collect();
    let mut found: Vec<Coalgebra> = counits
        .par_iter()
        .map(|eps| with_counit(field, dim, eps))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort_by_cached_key(sort_key);
    for (idx, c) in found.iter_mut().enumerate() {
        c.name = format!("C{dim}#{idx}");
    }
    Ok(found)
}

/// All structures of dimension `0..=max_dim`, concatenated in dimension order.
pub fn enumerate_up_to(field: Field, max_dim: usize, budget: u128) -> Result<Vec<Coalgebra>> {
    let mut out = Vec::new();
    for d in 0..=max_dim {
        out.extend(enumerate_coalgebras(field, d, budget)?);
    }
    Ok(out)
}

fn sort_key(c: &Coalgebra) -> Vec<u64> {
    let n = c.dim();
    let mut key = Vec::with_capacity(n * n * n + n);
    for i in 0..n {
        for jk in 0..n * n {
            key.push(c.delta().get(jk, i).residue().unwrap_or(0));
        }
    }
    key.extend(c.counit().iter().map(|s| s.residue().unwrap_or(0)));
    key
}

/// All vectors of `F_p^n` in lexicographic residue order.
pub fn all_vectors(field: Field, n: usize) -> Vec<Vec<Scalar>> {
    let elems = field.elements();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    out
}

fn with_counit(field: Field, n: usize, eps: &[Scalar]) -> Result<Vec<Coalgebra>> {
    // unknowns D[j][k] (index j*n+k); rows: Σ_j ε_j D[j][k] = δ_ik, Σ_k D[j][k] ε_k = δ_ij
    let a = Mat::from_fn(field, 2 * n, n * n, |r, u| {
        let (j, k) = (u / n, u % n);
        if r < n {
            if k == r { eps[j].clone() } else { field.zero() }
        } else if j == r - n {
            eps[k].clone()
        } else {
            field.zero()
        }
    });
    let mut per_basis: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(n);
    for i in 0..n {
        let b = Mat::from_fn(field, 2 * n, 1, |r, _| {
            if r % n == i { field.one() } else { field.zero() }
        });
        let sol = match solve(&a, &b) {
            Ok(s) => s,
            Err(Error::Inconsistent) => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let base = sol.particular.column(0);
        let kernel = sol.kernel.basis_vectors().to_vec();
        let mut cands = Vec::new();
        for coeffs in all_vectors(field, kernel.len()) {
            let mut v = base.clone();
            for (c, k) in coeffs.iter().zip(&kernel) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(k) {
                    x.add_mul(c, y);
                }
            }
            cands.push(v);
        }
        per_basis.push(cands);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let c = Coalgebra::from_fn(field, n, eps.to_vec(), "", |i| per_basis[i][idx[i]].clone())?;
        if check_coalgebra(&c).is_empty() {
            out.push(c);
        }
        // odometer over the per-basis candidate lists
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_basis[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts_over_f2() {
        let f = Field::Prime(2);
        assert_eq!(enumerate_coalgebras(f, 0, DEFAULT_BUDGET).unwrap().len(), 1);
        let one = enumerate_coalgebras(f, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].delta().get(0, 0).is_one() && one[0].counit()[0].is_one());
    }

    #[test]
    fn dim_two_matches_naive_filter() {
        let f = Field::Prime(2);
        let fast = enumerate_coalgebras(f, 2, DEFAULT_BUDGET).unwrap();
        // all 2^10 tensors and counits, filtered directly
        let mut naive = Vec::new();
        for bits in 0u32..1 << 10 {
            let bit = |b: u32| f.from_i64(((bits >> b) & 1) as i64);
            let c = Coalgebra::from_fn(f, 2, vec![bit(8), bit(9)], "", |i| {
                (0..4).map(|jk| bit((i * 4 + jk) as u32)).collect()
            })
            .unwrap();
            if check_coalgebra(&c).is_empty() {
                naive.push(c);
            }
        }
        assert_eq!(fast.len(), naive.len());
        assert_eq!(fast.len(), 12);
        for c in &naive {
            assert!(fast.iter().any(|d| d.delta() == c.delta() && d.counit() == c.counit()));
        }
        let keys: Vec<_> = fast.iter().map(sort_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_and_field_guards() {
        let f = Field::Prime(2);
        assert!(matches!(
            enumerate_coalgebras(f, 2, 1 << 9),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(enumerate_coalgebras(Field::Rationals, 1, DEFAULT_BUDGET).is_err());
        assert!(enumerate_coalgebras(f, 4, DEFAULT_BUDGET).is_err());
    }
}
