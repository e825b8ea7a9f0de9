//! Purity of submodules: the split-projection test, Cohn witness systems and
//! Cohn saturation.

use std::fmt;

use rayon::prelude::*;

use super::bimodule::{Bimodule, Side};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{solve, Mat};
use crate::subspace::Subspace;

/// An `A`-linear projection `X: M → N` (in the coordinates of N's RREF basis)
/// restricting to the identity on `N`, if one exists.
pub fn find_projection(m: &Bimodule, n: &Subspace, side: Side) -> Result<Option<Mat>> {
    let sub_actions = m.restricted_actions(n, side)?;
    let f = m.field();
    let d = m.dim();
    let r = n.dim();
    let unknowns = r * d;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // X·Λ_i − L_i·X = 0
    for (big, small) in m.actions(side).iter().zip(&sub_actions) {
        for a in 0..r {
            for b in 0..d {
                let mut row = vec![f.zero(); unknowns];
                for c in 0..d {
                    row[a * d + c] += big.get(c, b);
                }
                for c in 0..r {
                    row[c * d + b] -= small.get(a, c);
                }
                rows.push(row);
                rhs.push(f.zero());
            }
        }
    }
    // X·b_s = e_s
    for a in 0..r {
        for (s, bs) in n.basis_vectors().iter().enumerate() {
            let mut row = vec![f.zero(); unknowns];
            for c in 0..d {
                row[a * d + c] = bs[c].clone();
            }
            rows.push(row);
            rhs.push(if a == s { f.one() } else { f.zero() });
        }
    }
    let sys = Mat::from_rows(f, unknowns, &rows);
    let b = Mat::from_columns(f, rows.len(), &[rhs]);
    match solve(&sys, &b) {
        Ok(s) => Ok(Some(Mat::from_data(f, r, d, s.particular.column(0)).expect("shape"))),
        Err(Error::Inconsistent) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Whether `n` is a direct summand of `m` as a one-sided module, which for
/// finite-dimensional modules is the same as purity.
pub fn is_pure_submodule(m: &Bimodule, n: &Subspace, side: Side) -> Result<bool> {
    if !m.is_closed(n, side) {
        return Err(Error::NotASubmodule(side.name()));
    }
    if n.is_zero() || n.is_full() {
        return Ok(true);
    }
    Ok(find_projection(m, n, side)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohnBound {
    pub unknowns: usize,
    pub equations: usize,
    pub max_systems: u128,
}

impl Default for CohnBound {
    fn default() -> Self {
        CohnBound {
            unknowns: 2,
            equations: 2,
            max_systems: 1 << 22,
        }
    }
}

/// A system `Σ_i λ_ij x_i = m_j` (left) or `Σ_i x_i λ_ij = m_j` (right) with
/// `λ_ij` a basis element of `A` or zero, solvable in `M` but not in `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohnWitness {
    pub side: Side,
    /// `coefficients[j][i]` is the basis index of `λ_ij`, `None` for zero.
    pub coefficients: Vec<Vec<Option<usize>>>,
    pub constants: Vec<Vec<Scalar>>,
    /// A solution in `M`, one vector per unknown.
    pub solution: Vec<Vec<Scalar>>,
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for CohnWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, row) in self.coefficients.iter().enumerate() {
            let terms: Vec<String> = row
                .iter()
                .enumerate()
                .filter_map(|(i, c)| {
                    c.map(|a| match self.side {
                        Side::Left => format!("a{a}·x{}", i + 1),
                        Side::Right => format!("x{}·a{a}", i + 1),
                    })
                })
                .collect();
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            if j > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{lhs} = {}", fmt_vec(&self.constants[j]))?;
        }
        let sol: Vec<String> = self
            .solution
            .iter()
            .enumerate()
            .map(|(i, x)| format!("x{} = {}", i + 1, fmt_vec(x)))
            .collect();
        write!(f, " (solved in M by {})", sol.join(", "))
    }
}

struct Pattern {
    k: usize,
    coefficients: Vec<Vec<Option<usize>>>,
    /// Block matrix `(j·dim) × (k·dim)` of the system over `M`.
    matrix: Mat,
}

fn patterns(m: &Bimodule, side: Side, bound: &CohnBound) -> Vec<Pattern> {
    let f = m.field();
    let d = m.dim();
    let na = m.base().dim();
    let acts = m.actions(side);
    let mut out = Vec::new();
    for k in 1..=bound.unknowns {
        for j in 1..=bound.equations {
            let slots = k * j;
            let total = (na + 1).pow(slots as u32);
            for code in 0..total {
                let mut c = code;
                let mut coefficients = vec![vec![None; k]; j];
                for slot in 0..slots {
                    let digit = c % (na + 1);
                    c /= na + 1;
                    coefficients[slot / k][slot % k] = digit.checked_sub(1);
                }
                let matrix = Mat::from_fn(f, j * d, k * d, |row, col| {
                    let (eq, r) = (row / d, row % d);
                    let (un, s) = (col / d, col % d);
                    match coefficients[eq][un] {
                        Some(a) => acts[a].get(r, s).clone(),
                        None => f.zero(),
                    }
                });
                out.push(Pattern { k, coefficients, matrix });
            }
        }
    }
    out
}

fn count_systems(m: &Bimodule, n_dim: usize, bound: &CohnBound) -> u128 {
    let na = m.base().dim() as u128;
    let mut total: u128 = 0;
    for k in 1..=bound.unknowns {
        for j in 1..=bound.equations {
            let coeff = (na + 1).saturating_pow((k * j) as u32);
            let consts = (n_dim as u128 + 1).saturating_pow(j as u32);
            total = total.saturating_add(coeff.saturating_mul(consts));
        }
    }
    total.saturating_mul(2)
}

fn constant_tuples(n: &Subspace, j: usize) -> Vec<Vec<Option<usize>>> {
    let r = n.dim();
    let mut out = vec![Vec::new()];
    for _ in 0..j {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Option<usize>>| {
                (0..=r).map(move |c| {
                    let mut t = t.clone();
                    t.push(c.checked_sub(1));
                    t
                })
            })
            .collect();
    }
    out
}

enum Outcome {
    Irrelevant,
    /// Solvable in `M` only; the full solution set as particular plus kernel.
    Witness { particular: Vec<Scalar>, kernel: Vec<Vec<Scalar>> },
}

fn examine(m: &Bimodule, n: &Subspace, p: &Pattern, consts: &[Vec<Scalar>]) -> Result<Outcome> {
    let f = m.field();
    let rhs: Vec<Scalar> = consts.iter().flatten().cloned().collect();
    let b = Mat::from_columns(f, rhs.len(), &[rhs]);
    let in_m = match solve(&p.matrix, &b) {
        Ok(s) => s,
        Err(Error::Inconsistent) => return Ok(Outcome::Irrelevant),
        Err(e) => return Err(e),
    };
    // x_i = B·y_i
    let basis_t = n.basis().transpose();
    let d = m.dim();
    let r = n.dim();
    let mut restricted = Mat::zeros(f, p.matrix.rows(), p.k * r);
    for un in 0..p.k {
        let block = p.matrix.select_columns(&(un * d..(un + 1) * d).collect::<Vec<_>>());
        let prod = &block * &basis_t;
        for row in 0..prod.rows() {
            for col in 0..r {
                restricted.set(row, un * r + col, prod.get(row, col).clone());
            }
        }
    }
    match solve(&restricted, &b) {
        Ok(_) => Ok(Outcome::Irrelevant),
        Err(Error::Inconsistent) => Ok(Outcome::Witness {
            particular: in_m.particular.column(0),
            kernel: in_m.kernel.basis_vectors().to_vec(),
        }),
        Err(e) => Err(e),
    }
}

fn split(v: &[Scalar], k: usize, d: usize) -> Vec<Vec<Scalar>> {
    (0..k).map(|i| v[i * d..(i + 1) * d].to_vec()).collect()
}

/// First system within the bound that solves in `M` but not in `N`, in
/// enumeration order (unknowns, equations, coefficient code, constants).
pub fn cohn_witness(m: &Bimodule, n: &Subspace, side: Side, bound: &CohnBound) -> Result<Option<CohnWitness>> {
    if !m.is_closed(n, side) {
        return Err(Error::NotASubmodule(side.name()));
    }
    guard(m, n, bound)?;
    let f = m.field();
    for p in patterns(m, side, bound) {
        let j = p.coefficients.len();
        for tuple in constant_tuples(n, j) {
            let consts: Vec<Vec<Scalar>> = tuple
                .iter()
                .map(|c| c.map_or_else(|| vec![f.zero(); m.dim()], |i| n.basis_vectors()[i].clone()))
                .collect();
            if let Outcome::Witness { particular, .. } = examine(m, n, &p, &consts)? {
                return Ok(Some(CohnWitness {
                    side,
                    coefficients: p.coefficients.clone(),
                    constants: consts,
                    solution: split(&particular, p.k, m.dim()),
                }));
            }
        }
    }
    Ok(None)
}

fn guard(m: &Bimodule, n: &Subspace, bound: &CohnBound) -> Result<()> {
    let required = count_systems(m, n.dim(), bound);
    if required > bound.max_systems {
        return Err(Error::BudgetExceeded {
            what: "Cohn systems",
            required,
            limit: bound.max_systems,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohnSaturation {
    pub result: Subspace,
    pub sweeps: usize,
    pub witnesses: usize,
    pub pure_left: bool,
    pub pure_right: bool,
}

impl CohnSaturation {
    /// The fixed point is not a summand on some side: the bound was too small.
    pub fn flagged(&self) -> bool {
        !(self.pure_left && self.pure_right)
    }
}

/// Enlarges a sub-bimodule until no bounded system with constants in it
/// solves in `m` without solving in it. Each such system contributes the
/// span of all its solutions in `m`; the result is re-closed as a sub-bimodule.
pub fn cohn_saturate(m: &Bimodule, n: &Subspace, bound: &CohnBound) -> Result<CohnSaturation> {
    if !m.is_sub_bimodule(n) {
        return Err(Error::NotASubmodule("bimodule"));
    }
    let f = m.field();
    let d = m.dim();
    let pats: Vec<(Side, Pattern)> = [Side::Left, Side::Right]
        .into_iter()
        .flat_map(|s| patterns(m, s, bound).into_iter().map(move |p| (s, p)))
        .collect();
    let mut cur = n.clone();
    let mut sweeps = 0;
    let mut witnesses = 0;
    loop {
        guard(m, &cur, bound)?;
        sweeps += 1;
        let found: Vec<Vec<Vec<Vec<Scalar>>>> = pats
            .par_iter()
            .map(|(_, p)| -> Result<Vec<Vec<Vec<Scalar>>>> {
                let mut adds = Vec::new();
                for tuple in constant_tuples(&cur, p.coefficients.len()) {
                    let consts: Vec<Vec<Scalar>> = tuple
                        .iter()
                        .map(|c| c.map_or_else(|| vec![f.zero(); d], |i| cur.basis_vectors()[i].clone()))
                        .collect();
                    if let Outcome::Witness { particular, kernel } = examine(m, &cur, p, &consts)? {
                        let mut sols = vec![particular];
                        sols.extend(kernel);
                        adds.push(sols);
                    }
                }
                Ok(adds)
            })
            .collect::<Result<_>>()?;
        let mut next = cur.clone();
        for sols in found.iter().flatten() {
            witnesses += 1;
            for s in sols {
                for x in split(s, s.len() / d, d) {
                    next.insert(x);
                }
            }
        }
        let next = m.sub_bimodule_generated(&next);
        if next == cur {
            break;
        }
        cur = next;
    }
    let pure_left = is_pure_submodule(m, &cur, Side::Left)?;
    let pure_right = is_pure_submodule(m, &cur, Side::Right)?;
    Ok(CohnSaturation {
        result: cur,
        sweeps,
        witnesses,
        pure_left,
        pure_right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::field::Field;

    #[test]
    fn ideal_x_is_not_pure() {
        let f = Field::Prime(2);
        let a = truncated_polynomial(2, f);
        let m = Bimodule::regular(&a);
        let x = Subspace::coordinate(f, 2, &[1]);
        assert!(!is_pure_submodule(&m, &x, Side::Left).unwrap());
        let w = cohn_witness(&m, &x, Side::Left, &CohnBound::default()).unwrap().unwrap();
        assert_eq!(w.coefficients, vec![vec![Some(1)]]);
        assert_eq!(w.constants, vec![vec![f.zero(), f.one()]]);
        assert_eq!(w.solution, vec![vec![f.one(), f.zero()]]);
        assert_eq!(w.to_string(), "a1·x1 = [0,1] (solved in M by x1 = [1,0])");
        let sat = cohn_saturate(&m, &x, &CohnBound::default()).unwrap();
        assert!(sat.result.is_full());
        assert!(!sat.flagged());
    }

    #[test]
    fn trivial_and_split_cases() {
        let f = Field::Prime(2);
        let a = truncated_polynomial(2, f);
        let m = Bimodule::regular(&a);
        assert!(is_pure_submodule(&m, &Subspace::zero(f, 2), Side::Left).unwrap());
        assert!(is_pure_submodule(&m, &Subspace::full(f, 2), Side::Right).unwrap());
        let aa = Bimodule::direct_sum(&[m.clone(), m.clone()]).unwrap();
        let first = Subspace::coordinate(f, 4, &[0, 1]);
        assert!(is_pure_submodule(&aa, &first, Side::Left).unwrap());
        assert!(cohn_witness(&aa, &first, Side::Left, &CohnBound::default()).unwrap().is_none());
        let sat = cohn_saturate(&aa, &first, &CohnBound::default()).unwrap();
        assert_eq!(sat.result, first);
        assert!(cohn_saturate(&m, &Subspace::full(f, 2), &CohnBound::default()).unwrap().result.is_full());
    }

    #[test]
    fn non_submodule_rejected() {
        let f = Field::Prime(2);
        let a = truncated_polynomial(2, f);
        let m = Bimodule::regular(&a);
        let one = Subspace::coordinate(f, 2, &[0]);
        assert!(matches!(is_pure_submodule(&m, &one, Side::Left), Err(Error::NotASubmodule(_))));
    }
}
