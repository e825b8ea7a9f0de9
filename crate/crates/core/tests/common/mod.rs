//! Brute-force oracles over F2 and the randomized comodule-coalgebra family.
//!
//! Nothing here calls the library's closure, rank or axiom routines: vectors
//! are bitmasks, subspaces are explicit sets of vectors and structure maps
//! are 0/1 tables.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use coalg::coalgebra::Coalgebra;
use coalg::enumerate::{enumerate_coalgebras, DEFAULT_BUDGET};
use coalg::hopf::ComoduleCoalgebra;
use coalg::hopf::Bialgebra;
use coalg::{Field, Mat, Scalar, Subspace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_c0a1;

pub fn f2() -> Field {
    Field::Prime(2)
}

pub fn bit(s: &Scalar) -> u8 {
    s.residue().expect("F2 scalar") as u8
}

pub fn to_mask(v: &[Scalar]) -> u32 {
    v.iter().enumerate().fold(0, |m, (i, s)| m | (u32::from(bit(s)) << i))
}

pub fn from_mask(n: usize, m: u32) -> Vec<Scalar> {
    (0..n).map(|i| f2().from_i64(i64::from((m >> i) & 1))).collect()
}

/// A subspace of F2^n as the sorted set of all its vectors.
pub type VecSet = BTreeSet<u32>;

pub fn span(gens: impl IntoIterator<Item = u32>) -> VecSet {
    let mut out: VecSet = [0].into();
    for g in gens {
        if out.contains(&g) {
            continue;
        }
        let shifted: Vec<u32> = out.iter().map(|v| v ^ g).collect();
        out.extend(shifted);
    }
    out
}

pub fn as_set(s: &Subspace) -> VecSet {
    span(s.basis_vectors().iter().map(|v| to_mask(v)))
}

pub fn as_subspace(n: usize, s: &VecSet) -> Subspace {
    Subspace::from_vectors(f2(), n, s.iter().map(|&m| from_mask(n, m)))
}

/// Every subspace of F2^n.
pub fn all_subspaces(n: usize) -> Vec<VecSet> {
    let mut seen: HashSet<VecSet> = HashSet::new();
    let mut frontier = vec![span([])];
    seen.insert(span([]));
    while let Some(s) = frontier.pop() {
        for v in 0..1u32 << n {
            if !s.contains(&v) {
                let t = span(s.iter().copied().chain([v]));
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    let mut out: Vec<VecSet> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    out
}

/// Rank of a set of F2 vectors.
pub fn rank(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Columns of an F2 matrix as bitmasks.
pub fn columns(m: &Mat) -> Vec<u32> {
    (0..m.cols()).map(|j| to_mask(&m.column(j))).collect()
}

/// Structure tensor `d[i][j][k]` and counit of an F2 coalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub n: usize,
    pub d: Vec<Vec<Vec<u8>>>,
    pub eps: Vec<u8>,
}

impl Table {
    pub fn of(c: &Coalgebra) -> Table {
        let n = c.dim();
        let d = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| bit(c.delta().get(j * n + k, i))).collect()).collect())
            .collect();
        Table {
            n,
            d,
            eps: c.counit().iter().map(bit).collect(),
        }
    }

    /// Δ(v) as an n×n 0/1 matrix `t[j][k]`.
    pub fn coproduct(&self, v: u32) -> Vec<Vec<u8>> {
        let n = self.n;
        let mut t = vec![vec![0u8; n]; n];
        for i in (0..n).filter(|i| v >> i & 1 == 1) {
            for j in 0..n {
                for k in 0..n {
                    t[j][k] ^= self.d[i][j][k];
                }
            }
        }
        t
    }

    pub fn is_coalgebra(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let mut l = 0;
                        let mut r = 0;
                        for x in 0..n {
                            l ^= self.d[i][x][c] & self.d[x][a][b];
                            r ^= self.d[i][a][x] & self.d[x][b][c];
                        }
                        if l != r {
                            return false;
                        }
                    }
                }
            }
            for k in 0..n {
                let mut l = 0;
                let mut r = 0;
                for x in 0..n {
                    l ^= self.eps[x] & self.d[i][x][k];
                    r ^= self.d[i][k][x] & self.eps[x];
                }
                let want = u8::from(i == k);
                if l != want || r != want {
                    return false;
                }
            }
        }
        true
    }
}

/// Column masks of a tensor `t[j][k]`: the first-factor vector for each `k`,
/// and the second-factor vector for each `j`.
fn slices(t: &[Vec<u8>]) -> (Vec<u32>, Vec<u32>) {
    let n = t.len();
    let m = t.first().map_or(0, Vec::len);
    let firsts = (0..m).map(|k| (0..n).fold(0, |acc, j| acc | (u32::from(t[j][k]) << j))).collect();
    let seconds = (0..n).map(|j| (0..m).fold(0, |acc, k| acc | (u32::from(t[j][k]) << k))).collect();
    (firsts, seconds)
}

/// `t ∈ D ⊗ E` iff every slice lies in the right factor.
pub fn tensor_in(t: &[Vec<u8>], d: &VecSet, e: &VecSet) -> bool {
    let (firsts, seconds) = slices(t);
    firsts.iter().all(|v| d.contains(v)) && seconds.iter().all(|v| e.contains(v))
}

pub fn delta_stable(c: &Table, d: &VecSet) -> bool {
    d.iter().all(|&v| tensor_in(&c.coproduct(v), d, d))
}

/// The unique smallest member of `candidates` containing `seed`, if the
/// smallest one is contained in all the others.
pub fn least_containing<'a>(candidates: impl IntoIterator<Item = &'a VecSet>, seed: &VecSet) -> Option<VecSet> {
    let hits: Vec<&VecSet> = candidates.into_iter().filter(|s| seed.is_subset(s)).collect();
    let min = hits.iter().min_by_key(|s| s.len())?;
    hits.iter().all(|s| min.is_subset(s)).then(|| (*min).clone())
}

/// The unique largest member of `candidates` inside `w`.
pub fn greatest_inside<'a>(candidates: impl IntoIterator<Item = &'a VecSet>, w: &VecSet) -> Option<VecSet> {
    let hits: Vec<&VecSet> = candidates.into_iter().filter(|s| s.is_subset(w)).collect();
    let max = hits.iter().max_by_key(|s| s.len())?;
    hits.iter().all(|s| s.is_subset(max)).then(|| (*max).clone())
}

/// `f: S → T` as a 0/1 matrix `f[t][s]`.
pub fn is_morphism(f: &[Vec<u8>], s: &Table, t: &Table) -> bool {
    for x in 0..s.n {
        let mut e = 0;
        for y in 0..t.n {
            e ^= t.eps[y] & f[y][x];
        }
        if e != s.eps[x] {
            return false;
        }
        for a in 0..t.n {
            for b in 0..t.n {
                let mut l = 0;
                for y in 0..t.n {
                    l ^= t.d[y][a][b] & f[y][x];
                }
                let mut r = 0;
                for j in 0..s.n {
                    for k in 0..s.n {
                        r ^= s.d[x][j][k] & f[a][j] & f[b][k];
                    }
                }
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

pub fn matrix_table(m: &Mat) -> Vec<Vec<u8>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(bit).collect()).collect()
}

pub fn table_matrix(rows: usize, cols: usize, f: &[Vec<u8>]) -> Mat {
    Mat::from_fn(f2(), rows, cols, |r, c| f2().from_i64(i64::from(f[r][c])))
}

/// Every 0/1 matrix with the given shape.
pub fn all_tables(rows: usize, cols: usize) -> Vec<Vec<Vec<u8>>> {
    let cells = rows * cols;
    (0..1u64 << cells)
        .map(|bits| {
            (0..rows)
                .map(|r| (0..cols).map(|c| (bits >> (r * cols + c) & 1) as u8).collect())
                .collect()
        })
        .collect()
}

pub fn morphisms(s: &Table, t: &Table) -> Vec<Vec<Vec<u8>>> {
    all_tables(t.n, s.n).into_iter().filter(|f| is_morphism(f, s, t)).collect()
}

pub fn compose(g: &[Vec<u8>], f: &[Vec<u8>], inner: usize) -> Vec<Vec<u8>> {
    let cols = f.first().map_or(0, Vec::len);
    g.iter()
        .map(|row| (0..cols).map(|c| (0..inner).fold(0, |acc, k| acc ^ (row[k] & f[k][c]))).collect())
        .collect()
}

/// A random invertible matrix over `field` with small integer entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Mat {
    loop {
        let p = Mat::from_fn(field, n, n, |_, _| field.from_i64(rng.gen_range(-2..=2)));
        if p.inverse().is_some() {
            return p;
        }
    }
}

/// `(P⁻¹ ⊗ P⁻¹) Δ P` and `ε P`: the structure in the basis given by the columns of `p`.
pub fn transport(c: &Coalgebra, p: &Mat) -> Coalgebra {
    let inv = p.inverse().expect("invertible");
    let delta = &(&inv.kron(&inv) * c.delta()) * p;
    let eps = Mat::from_rows(c.field(), c.dim(), &[c.counit().to_vec()]);
    let counit = (&eps * p).row(0).to_vec();
    Coalgebra::new(c.field(), c.dim(), delta, counit, format!("{}'", c.name)).expect("shape")
}

/// One member of the randomized family.
#[derive(Clone, Debug)]
pub struct Sample {
    pub h: Bialgebra,
    pub cc: ComoduleCoalgebra,
    pub seed: Subspace,
}

fn graded_rho(hd: usize, degrees: &[usize]) -> Mat {
    let n = degrees.len();
    Mat::from_fn(f2(), n * hd, n, |r, c| {
        if r == c * hd + degrees[c] {
            f2().one()
        } else {
            f2().zero()
        }
    })
}

/// `ρ(c) = c ⊗ 1 + d(c) ⊗ x` over `K[x]/x²` with `x` primitive.
fn primitive_rho(d: &[Vec<u8>]) -> Mat {
    let n = d.len();
    Mat::from_fn(f2(), n * 2, n, |r, c| {
        let (a, t) = (r / 2, r % 2);
        let v = if t == 0 { u8::from(a == c) } else { d[a][c] };
        f2().from_i64(i64::from(v))
    })
}

fn all_degrees(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |g| {
                    let mut w = v.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
    }
    out
}

/// Bialgebras of dimension at most 3 over F2 used by the family.
pub fn bialgebra_catalogue() -> Vec<Bialgebra> {
    let f = f2();
    vec![
        Bialgebra::ground(f),
        Bialgebra::cyclic_group(2, f),
        Bialgebra::cyclic_group(3, f),
        Bialgebra::monoid(f, &[vec![0, 1], vec![1, 1]], "K{1,e}").unwrap(),
        Bialgebra::monoid(f, &[vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]], "K{1,e,0}").unwrap(),
        Bialgebra::monoid(f, &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], "K{1,a,a²=0}").unwrap(),
        Bialgebra::monoid(f, &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], "K{1,a,b}").unwrap(),
        Bialgebra::primitive_dual_numbers(f).unwrap(),
    ]
}

/// Every comodule-coalgebra structure of the two generator shapes on the
/// enumerated coalgebras of dimension 1..=3, grouped by bialgebra.
pub fn comodule_coalgebra_pool() -> Vec<(Bialgebra, Vec<ComoduleCoalgebra>)> {
    let coalgebras: Vec<Coalgebra> = (1..=3)
        .flat_map(|n| enumerate_coalgebras(f2(), n, DEFAULT_BUDGET).unwrap())
        .collect();
    let primitive = Bialgebra::primitive_dual_numbers(f2()).unwrap();
    bialgebra_catalogue()
        .into_iter()
        .map(|h| {
            let mut found = Vec::new();
            for c in &coalgebras {
                let n = c.dim();
                let rhos: Vec<Mat> = if h == primitive {
                    all_tables(n, n).iter().map(|d| primitive_rho(d)).collect()
                } else {
                    all_degrees(n, h.dim()).iter().map(|deg| graded_rho(h.dim(), deg)).collect()
                };
                for rho in rhos {
                    if let Ok(cc) = ComoduleCoalgebra::new(h.clone(), c.clone(), rho) {
                        found.push(cc);
                    }
                }
            }
            (h, found)
        })
        .collect()
}

/// `count` samples: a uniformly chosen bialgebra, a uniformly chosen pool
/// member, a random basis change of `C` and a random nonzero seed of dim ≤ 2.
pub fn comodule_coalgebra_family(count: usize) -> Vec<Sample> {
    let pool = comodule_coalgebra_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let (h, members) = pool.choose(&mut rng).unwrap();
            let base = members.choose(&mut rng).unwrap();
            let c = base.coalgebra();
            let n = c.dim();
            let p = random_invertible(&mut rng, f2(), n);
            let inv = p.inverse().unwrap();
            let moved = transport(c, &p);
            let rho = &(&inv.kron(&Mat::identity(f2(), h.dim())) * base.rho()) * &p;
            let cc = ComoduleCoalgebra::new(h.clone(), moved, rho).expect("transported structure");
            let gens = rng.gen_range(1..=n.min(2));
            let seed = Subspace::from_vectors(
                f2(),
                n,
                (0..gens).map(|_| from_mask(n, rng.gen_range(1..1u32 << n))),
            );
            Sample {
                h: h.clone(),
                cc,
                seed,
            }
        })
        .collect()
}
