//! Spin^c data: Dirac index, the twisting matrix of the index bundle over
//! the Jacobian torus, the parity condition (*), Stiefel–Whitney parities of
//! the approximating bundles, and the expected moduli dimension.
//!
//! Spin^c structures are identified with their determinant class
//! `c1(det 𝓛)` on the free part of `H²`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::atlas::ManifoldData;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// A spin^c structure, represented by `c1(det 𝓛)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCStructure {
    c1: LatticeVector,
}

impl SpinCStructure {
    /// Checks that `c1` is characteristic for the form of `m`.
    pub fn new(m: &ManifoldData, c1: LatticeVector) -> Result<Self> {
        if let Some(index) = m.h2().characteristic_defect(&c1)? {
            return Err(Error::NotCharacteristic { index });
        }
        Ok(SpinCStructure { c1 })
    }

    /// The structure induced by the complex structure, when `m` carries one.
    pub fn canonical(m: &ManifoldData) -> Result<Self> {
        let c1 = m.canonical_c1().ok_or_else(|| {
            Error::Validation("manifold carries no canonical spin^c structure; pass c1 explicitly".into())
        })?;
        SpinCStructure::new(m, c1.clone())
    }

    pub fn c1(&self) -> &LatticeVector {
        &self.c1
    }

    fn check(&self, m: &ManifoldData) -> Result<()> {
        if self.c1.len() != m.h2().rank() {
            return Err(Error::Shape {
                expected: m.h2().rank(),
                found: self.c1.len(),
            });
        }
        Ok(())
    }
}

/// `c1(det 𝓛)²`.
pub fn c1_squared(m: &ManifoldData, s: &SpinCStructure) -> Result<i64> {
    s.check(m)?;
    m.h2().square(s.c1())
}

/// Index of the spin^c Dirac operator, `(c1² − τ)/8`.
pub fn dirac_index(m: &ManifoldData, s: &SpinCStructure) -> Result<i64> {
    let numerator = c1_squared(m, s)?
        .checked_sub(m.signature())
        .ok_or(Error::Overflow("dirac index"))?;
    let (q, r) = numerator.div_rem(&8);
    if r != 0 {
        return Err(Error::InvalidSpinC(format!(
            "c1^2 - signature = {numerator} is not divisible by 8"
        )));
    }
    Ok(q)
}

/// `t[i][j] = ⟨c1 ⌣ α_i ⌣ α_j, [M]⟩`, an antisymmetric `b1 × b1` matrix.
pub fn t_matrix(m: &ManifoldData, s: &SpinCStructure) -> Result<Vec<Vec<i64>>> {
    s.check(m)?;
    let b1 = m.b1();
    let mut t = vec![vec![0; b1]; b1];
    for (i, j, class) in m.cup1().iter() {
        let v = m.h2().pairing_sparse(s.c1(), class)?;
        t[i][j] = v;
        t[j][i] = -v;
    }
    Ok(t)
}

/// Coefficients `c_ij` of `c1(Ind D) = Σ_{i<j} c_ij β_i β_j` in `H²(T; ℤ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusTwoForm {
    c: Vec<Vec<i64>>,
}

impl TorusTwoForm {
    /// Wraps an antisymmetric matrix with zero diagonal.
    pub fn new(c: Vec<Vec<i64>>) -> Result<Self> {
        let n = c.len();
        for (i, row) in c.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape { expected: n, found: row.len() });
            }
            if row[i] != 0 {
                return Err(Error::Validation(format!("c[{i}][{i}] must be zero")));
            }
            for j in (i + 1)..n {
                if c[j][i] != -row[j] {
                    return Err(Error::Validation(format!("c is not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(TorusTwoForm { c })
    }

    pub fn b1(&self) -> usize {
        self.c.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn is_even(&self) -> bool {
        self.c.iter().flatten().all(|x| x % 2 == 0)
    }

    /// Upper-triangle entries reduced mod 2, mirrored to a symmetric matrix.
    pub fn mod2(&self) -> Vec<Vec<u8>> {
        self.c
            .iter()
            .map(|row| row.iter().map(|x| x.rem_euclid(2) as u8).collect())
            .collect()
    }
}

/// Halves the t-matrix, failing on any odd entry.
pub fn c_matrix(m: &ManifoldData, s: &SpinCStructure) -> Result<TorusTwoForm> {
    let t = t_matrix(m, s)?;
    for (i, row) in t.iter().enumerate() {
        for (j, &v) in row.iter().enumerate().skip(i + 1) {
            if v % 2 != 0 {
                return Err(Error::Integrality { i: i + 1, j: j + 1, value: v });
            }
        }
    }
    let c = t.into_iter().map(|row| row.into_iter().map(|v| v / 2).collect()).collect();
    Ok(TorusTwoForm { c })
}

/// Verdict on condition (*): `(*)₁` the Dirac index is even, `(*)₂` every
/// `c_ij` is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarVerdict {
    pub star1: bool,
    pub star2: bool,
    pub holds: bool,
}

pub fn condition_star(m: &ManifoldData, s: &SpinCStructure) -> Result<StarVerdict> {
    let star1 = dirac_index(m, s)?.is_even();
    let star2 = c_matrix(m, s)?.is_even();
    Ok(StarVerdict {
        star1,
        star2,
        holds: star1 && star2,
    })
}

/// Whether `det Ind(D)` has a square root over the Jacobian torus, i.e.
/// `c1(Ind D) ≡ 0 mod 2`.
pub fn square_root_exists(m: &ManifoldData, s: &SpinCStructure) -> Result<bool> {
    Ok(c_matrix(m, s)?.is_even())
}

/// Mod-2 data of `w₂(T V̄)` and `w₂(Ē)`.
///
/// `w₂(T V̄) ≡ Σ c_ij β_i β_j + (m + a) c1(H)` and `w₂(Ē) ≡ m c1(H)`, where
/// `m` enters only through its parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct W2Report {
    pub torus_part_mod2: Vec<Vec<u8>>,
    pub h_coefficient_mod2: u8,
    pub e_h_coefficient_mod2: u8,
}

impl W2Report {
    /// True when both classes vanish.
    pub fn is_zero(&self) -> bool {
        self.h_coefficient_mod2 == 0
            && self.e_h_coefficient_mod2 == 0
            && self.torus_part_mod2.iter().flatten().all(|&x| x == 0)
    }
}

pub fn w2_classes(m: &ManifoldData, s: &SpinCStructure, m_parity: u8) -> Result<W2Report> {
    if m_parity > 1 {
        return Err(Error::Domain(format!("m_parity must be 0 or 1, got {m_parity}")));
    }
    let c = c_matrix(m, s)?;
    let a = dirac_index(m, s)?;
    Ok(W2Report {
        torus_part_mod2: c.mod2(),
        h_coefficient_mod2: (m_parity + a.rem_euclid(2) as u8) % 2,
        e_h_coefficient_mod2: m_parity,
    })
}

/// Expected dimension of the Seiberg–Witten moduli space,
/// `(c1² − 2χ − 3τ)/4`.
pub fn moduli_dimension(m: &ManifoldData, s: &SpinCStructure) -> Result<i64> {
    let c1sq = c1_squared(m, s)? as i128;
    let numerator = c1sq - 2 * m.euler() as i128 - 3 * m.signature() as i128;
    if numerator % 4 != 0 {
        return Err(Error::InvalidSpinC(format!(
            "c1^2 - 2*euler - 3*signature = {numerator} is not divisible by 4"
        )));
    }
    i64::try_from(numerator / 4).map_err(|_| Error::Overflow("moduli dimension"))
}
