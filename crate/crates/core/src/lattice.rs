//! Integer lattices with a symmetric bilinear form.
//!
//! The form is stored sparsely: intersection forms built by connected sum are
//! block diagonal and the blocks coming from surface products have one or two
//! nonzero entries per row, so dense storage would dominate every sweep.
//!
//! Signatures and determinants come from congruent diagonalization over the
//! rationals. No floating point is involved.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinates of a class in the fixed basis of a [`Lattice`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zeros(len: usize) -> Self {
        LatticeVector(vec![0; len])
    }

    /// The `index`-th standard basis vector of length `len`.
    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = vec![0; len];
        v[index] = 1;
        LatticeVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Concatenation, i.e. the vector `(self, other)` in an orthogonal sum.
    pub fn concat(&self, other: &LatticeVector) -> LatticeVector {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        LatticeVector(v)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Counts of positive, negative and zero diagonal entries after congruent
/// diagonalization (Sylvester's law of inertia).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// A free abelian group of finite rank with a symmetric integer bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    /// `rows[i]` holds the nonzero entries `(j, Q[i][j])`, sorted by `j`.
    rows: Vec<Vec<(usize, i64)>>,
}

impl Lattice {
    /// The rank-0 lattice.
    pub fn empty() -> Self {
        Lattice { rows: Vec::new() }
    }

    /// Builds a lattice from a dense matrix, rejecting non-square or
    /// asymmetric input.
    pub fn from_dense(form: &[Vec<i64>]) -> Result<Self> {
        let n = form.len();
        for (i, row) in form.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "form is not square: row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if form[i][j] != form[j][i] {
                    return Err(Error::Validation(format!(
                        "form is not symmetric: Q[{i}][{j}] = {} but Q[{j}][{i}] = {}",
                        form[i][j], form[j][i]
                    )));
                }
            }
        }
        let rows = form
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect()
            })
            .collect();
        Ok(Lattice { rows })
    }

    /// Builds a lattice of the given rank from upper-triangular entries
    /// `(i, j, value)` with `i <= j`; the lower triangle is filled by symmetry.
    /// Repeated positions accumulate.
    pub fn from_entries(rank: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); rank];
        for (i, j, v) in entries {
            *acc[i].entry(j).or_insert(0) += v;
            if i != j {
                *acc[j].entry(i).or_insert(0) += v;
            }
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|&(_, v)| v != 0).collect())
            .collect();
        Lattice { rows }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        Lattice::from_entries(entries.len(), entries.iter().enumerate().map(|(i, &v)| (i, i, v)))
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic() -> Self {
        Lattice::from_entries(2, [(0, 1, 1)])
    }

    /// The negative definite E8 lattice (negated Cartan matrix).
    ///
    /// Nodes 0..=6 form a chain and node 7 hangs off node 4, giving arms of
    /// length 4, 2 and 1 at the trivalent node.
    pub fn negative_e8() -> Self {
        let mut entries: Vec<(usize, usize, i64)> = (0..8).map(|i| (i, i, -2)).collect();
        entries.extend((0..6).map(|i| (i, i + 1, 1)));
        entries.push((4, 7, 1));
        Lattice::from_entries(8, entries)
    }

    /// Orthogonal direct sum of all given lattices, in order.
    pub fn orthogonal_sum<'a>(parts: impl IntoIterator<Item = &'a Lattice>) -> Lattice {
        let mut rows = Vec::new();
        for part in parts {
            let offset = rows.len();
            rows.extend(
                part.rows
                    .iter()
                    .map(|r| r.iter().map(|&(j, v)| (j + offset, v)).collect::<Vec<_>>()),
            );
        }
        Lattice { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        match self.rows[i].binary_search_by_key(&j, |&(k, _)| k) {
            Ok(pos) => self.rows[i][pos].1,
            Err(_) => 0,
        }
    }

    /// Nonzero entries of row `i` as `(column, value)` pairs.
    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        self.rows
            .iter()
            .map(|r| {
                let mut row = vec![0; n];
                for &(j, v) in r {
                    row[j] = v;
                }
                row
            })
            .collect()
    }

    fn check_len(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Shape {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `xᵀ Q y`.
    pub fn pairing(&self, x: &LatticeVector, y: &LatticeVector) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut total: i128 = 0;
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut inner: i128 = 0;
            for &(j, q) in &self.rows[i] {
                let term = (q as i128).checked_mul(y.coords()[j] as i128);
                inner = term
                    .and_then(|t| inner.checked_add(t))
                    .ok_or(Error::Overflow("pairing"))?;
            }
            total = (xi as i128)
                .checked_mul(inner)
                .and_then(|t| total.checked_add(t))
                .ok_or(Error::Overflow("pairing"))?;
        }
        i64::try_from(total).map_err(|_| Error::Overflow("pairing"))
    }

    /// `xᵀ Q x`.
    pub fn square(&self, x: &LatticeVector) -> Result<i64> {
        self.pairing(x, x)
    }

    /// Pairing of a dense vector with a sparse one given as `(index, coeff)`.
    pub(crate) fn pairing_sparse(&self, x: &LatticeVector, y: &[(usize, i64)]) -> Result<i64> {
        self.check_len(x)?;
        let mut total: i128 = 0;
        for &(k, yk) in y {
            for &(i, q) in &self.rows[k] {
                let term = (x.coords()[i] as i128)
                    .checked_mul(q as i128)
                    .and_then(|t| t.checked_mul(yk as i128));
                total = term
                    .and_then(|t| total.checked_add(t))
                    .ok_or(Error::Overflow("pairing"))?;
            }
        }
        i64::try_from(total).map_err(|_| Error::Overflow("pairing"))
    }

    /// Diagonal entries of a rational matrix congruent to the form.
    ///
    /// Pivots on the first remaining row with a nonzero diagonal entry. When
    /// every remaining diagonal entry is zero but some `Q[i][j]` is not, the
    /// basis vector `e_i` is replaced by `e_i + e_j`, which makes the new
    /// diagonal entry `2 Q[i][j]` nonzero. A row that becomes identically
    /// zero is a null direction and contributes a zero entry.
    pub fn diagonalize(&self) -> Vec<BigRational> {
        let n = self.rank();
        let mut rows: Vec<BTreeMap<usize, BigRational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&(j, v)| (j, BigRational::from_integer(v.into()))).collect())
            .collect();
        // Unprocessed rows with at least one nonzero entry.
        let mut alive: BTreeSet<usize> = (0..n).filter(|&i| !rows[i].is_empty()).collect();
        let mut with_diag: BTreeSet<usize> = alive.iter().copied().filter(|&i| rows[i].contains_key(&i)).collect();
        let mut null = n - alive.len();
        let mut diag = Vec::with_capacity(n);

        loop {
            let k = if let Some(&k) = with_diag.first() {
                k
            } else if let Some(&i) = alive.first() {
                let j = *rows[i].keys().next().expect("alive rows are nonempty");
                add_basis_vector(&mut rows, i, j);
                with_diag.insert(i);
                i
            } else {
                break;
            };
            let p = rows[k].remove(&k).expect("pivot on nonzero diagonal");
            with_diag.remove(&k);
            alive.remove(&k);
            let neighbours: Vec<(usize, BigRational)> = std::mem::take(&mut rows[k]).into_iter().collect();
            for (a, _) in &neighbours {
                rows[*a].remove(&k);
            }
            for (a, qa) in &neighbours {
                let factor = qa / &p;
                for (b, qb) in &neighbours {
                    let delta = &factor * qb;
                    let slot = rows[*a].entry(*b).or_insert_with(BigRational::zero);
                    *slot -= delta;
                    if slot.is_zero() {
                        rows[*a].remove(b);
                    }
                }
            }
            for (a, _) in &neighbours {
                if rows[*a].is_empty() {
                    alive.remove(a);
                    with_diag.remove(a);
                    null += 1;
                } else if rows[*a].contains_key(a) {
                    with_diag.insert(*a);
                } else {
                    with_diag.remove(a);
                }
            }
            diag.push(p);
        }
        diag.extend(std::iter::repeat_n(BigRational::zero(), null));
        diag
    }

    pub fn inertia(&self) -> Inertia {
        let mut inertia = Inertia {
            positive: 0,
            negative: 0,
            null: 0,
        };
        for d in self.diagonalize() {
            if d.is_positive() {
                inertia.positive += 1;
            } else if d.is_negative() {
                inertia.negative += 1;
            } else {
                inertia.null += 1;
            }
        }
        inertia
    }

    /// `b⁺ − b⁻`.
    pub fn signature(&self) -> i64 {
        self.inertia().signature()
    }

    /// Determinant of the form; 1 for the rank-0 lattice.
    pub fn determinant(&self) -> BigInt {
        // Every congruence used by `diagonalize` has determinant ±1.
        let product = self
            .diagonalize()
            .into_iter()
            .fold(BigRational::one(), |acc, d| acc * d);
        debug_assert!(product.is_integer());
        product.to_integer()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// True when the form is negative definite; the rank-0 form counts as
    /// (vacuously) negative definite.
    pub fn is_negative_definite(&self) -> bool {
        self.rank() == 0 || self.inertia().negative == self.rank()
    }

    /// True when every diagonal entry is even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.entry(i, i) % 2 == 0)
    }

    /// `Q(c, e_i) ≡ Q(e_i, e_i) (mod 2)` for every basis vector `e_i`.
    pub fn is_characteristic(&self, c: &LatticeVector) -> Result<bool> {
        Ok(self.characteristic_defect(c)?.is_none())
    }

    /// First basis index at which `c` fails to be characteristic.
    pub fn characteristic_defect(&self, c: &LatticeVector) -> Result<Option<usize>> {
        self.check_len(c)?;
        for i in 0..self.rank() {
            let lhs: i128 = self.rows[i]
                .iter()
                .map(|&(j, q)| (q as i128) * (c.coords()[j] as i128))
                .fold(0i128, |acc, t| acc.wrapping_add(t));
            let rhs = self.entry(i, i) as i128;
            if (lhs - rhs).rem_euclid(2) != 0 {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Replaces basis vector `e_i` by `e_i + e_j` (congruence by an elementary
/// unimodular matrix).
fn add_basis_vector(rows: &mut [BTreeMap<usize, BigRational>], i: usize, j: usize) {
    let zero = BigRational::zero();
    let q_ii = rows[i].get(&i).unwrap_or(&zero).clone();
    let q_ij = rows[i].get(&j).unwrap_or(&zero).clone();
    let q_jj = rows[j].get(&j).unwrap_or(&zero).clone();
    let new_ii = q_ii + &q_ij + &q_ij + q_jj;

    let row_j: Vec<(usize, BigRational)> = rows[j]
        .iter()
        .filter(|(&m, _)| m != i)
        .map(|(&m, v)| (m, v.clone()))
        .collect();
    for (m, v) in row_j {
        let updated = rows[i].get(&m).unwrap_or(&zero) + &v;
        if updated.is_zero() {
            rows[i].remove(&m);
            rows[m].remove(&i);
        } else {
            rows[i].insert(m, updated.clone());
            rows[m].insert(i, updated);
        }
    }
    if new_ii.is_zero() {
        rows[i].remove(&i);
    } else {
        rows[i].insert(i, new_ii);
    }
}
