//! Test-only oracles and generators, independent of the library's algorithms.

#![allow(dead_code)]

use rand::Rng;
use spinc4::atlas::{k3, surface_product, ManifoldData};
use spinc4::lattice::Lattice;

pub type Matrix = Vec<Vec<i64>>;

pub fn diag(entries: &[i64]) -> Matrix {
    let n = entries.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect())
        .collect()
}

fn negative_e8() -> Matrix {
    let mut m = diag(&[-2; 8]);
    let mut link = |a: usize, b: usize| {
        m[a][b] = 1;
        m[b][a] = 1;
    };
    for i in 0..6 {
        link(i, i + 1);
    }
    link(4, 7);
    m
}

fn block_sum(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[off + i][off + j] = v;
            }
        }
        off += b.len();
    }
    out
}

/// A unimodular symmetric form of rank 1..=8 in a standard shape:
/// `−E8`, or a sum of `(±1)` and hyperbolic blocks.
pub fn random_standard_unimodular(rng: &mut impl Rng) -> Matrix {
    if rng.random_bool(0.1) {
        return negative_e8();
    }
    let rank = rng.random_range(1..=8usize);
    let mut blocks = Vec::new();
    let mut used = 0;
    while used < rank {
        if rank - used >= 2 && rng.random_bool(0.3) {
            blocks.push(vec![vec![0, 1], vec![1, 0]]);
            used += 2;
        } else {
            blocks.push(vec![vec![if rng.random_bool(0.5) { 1 } else { -1 }]]);
            used += 1;
        }
    }
    block_sum(&blocks)
}

/// A random unimodular integer matrix: a signed permutation followed by a
/// few elementary row additions with multipliers in {−1, 1}.
pub fn random_unimodular_change(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut p = vec![vec![0; n]; n];
    for (i, &j) in perm.iter().enumerate() {
        p[i][j] = if rng.random_bool(0.5) { 1 } else { -1 };
    }
    if n >= 2 {
        for _ in 0..(2 * n) {
            let a = rng.random_range(0..n);
            let mut b = rng.random_range(0..n);
            while b == a {
                b = rng.random_range(0..n);
            }
            let k = if rng.random_bool(0.5) { 1 } else { -1 };
            for c in 0..n {
                p[a][c] += k * p[b][c];
            }
        }
    }
    p
}

pub fn congruent(q: &Matrix, p: &Matrix) -> Matrix {
    // Pᵀ Q P
    let n = q.len();
    let mut qp = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            qp[i][j] = (0..n).map(|k| q[i][k] * p[k][j]).sum();
        }
    }
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| p[k][i] * qp[k][j]).sum();
        }
    }
    out
}

/// All characteristic vectors with coordinates in {0, 1}, found by
/// enumerating `{0,1}ⁿ` and checking `Q(c, e_i) ≡ Q(e_i, e_i) (mod 2)`.
pub fn characteristic_residues(q: &Matrix) -> Vec<Vec<i64>> {
    let n = q.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let c: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
        let ok = (0..n).all(|i| {
            let qc: i64 = (0..n).map(|j| q[i][j] * c[j]).sum();
            (qc - q[i][i]).rem_euclid(2) == 0
        });
        if ok {
            out.push(c);
        }
    }
    out
}

pub fn quadratic(q: &Matrix, x: &[i64]) -> i64 {
    let n = q.len();
    (0..n).map(|i| (0..n).map(|j| x[i] * q[i][j] * x[j]).sum::<i64>()).sum()
}

/// Signature from the signs of floating-point eigenvalues.
pub fn float_signature(q: &Matrix) -> i64 {
    let n = q.len();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| q[i][j] as f64);
    let eig = nalgebra::SymmetricEigen::new(m);
    eig.eigenvalues
        .iter()
        .map(|&l| if l > 1e-9 { 1 } else if l < -1e-9 { -1 } else { 0 })
        .sum()
}

pub fn random_symmetric(n: usize, bound: i64, rng: &mut impl Rng) -> Matrix {
    let mut q = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.random_range(-bound..=bound);
            q[i][j] = v;
            q[j][i] = v;
        }
    }
    q
}

pub fn lattice(q: &Matrix) -> Lattice {
    Lattice::from_dense(q).unwrap()
}

/// Kinds admitted by the nonvanishing theorem, with small genera.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    K3,
    Sp(u32, u32),
}

impl Gen {
    pub fn build(self) -> ManifoldData {
        match self {
            Gen::K3 => k3(),
            Gen::Sp(g, gp) => surface_product(g, gp).unwrap(),
        }
    }
}

pub const CERTIFIED: [Gen; 6] = [
    Gen::K3,
    Gen::Sp(1, 1),
    Gen::Sp(3, 1),
    Gen::Sp(1, 3),
    Gen::Sp(3, 3),
    Gen::Sp(5, 3),
];

/// Multisets of size `l` drawn from `CERTIFIED`, as index vectors.
pub fn multisets(l: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..CERTIFIED.len() {
            cur.push(i);
            rec(i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, l, &mut Vec::new(), &mut out);
    out
}
