//! The spin-bordism invariant σ⁰ for the covered family.
//!
//! This is a theorem lookup, not a computation of spin structures: for a
//! connected sum of `l` K3 surfaces and products `Σ_g × Σ_g'` with `g, g'`
//! odd, each with its canonical spin^c structure, σ⁰ is nontrivial in
//! `Ω^spin_{l−1} ≅ ℤ₂` when `l` is 2 or 3 and trivial when `l ≥ 4`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atlas::{ManifoldData, Summand};
use crate::error::{Error, Result};
use crate::spinc::{condition_star, moduli_dimension, SpinCStructure};

/// A summand admitted by the family hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertifiedSummand {
    K3,
    SurfaceProduct { g: u32, g_prime: u32 },
}

/// Evidence that `(M, 𝓛)` lies in the family covered by the nonvanishing
/// theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub l: usize,
    pub summand_kinds: Vec<CertifiedSummand>,
    pub canonical: bool,
}

/// Checks the family hypotheses: every summand is K3 or `Σ_g × Σ_g'` with odd
/// genera (`S⁴` summands are ignored), and `c1` is the canonical class.
pub fn certify_family(m: &ManifoldData, s: &SpinCStructure) -> Result<FamilyCertificate> {
    let mut kinds = Vec::new();
    for summand in m.summands() {
        match *summand {
            Summand::K3 => kinds.push(CertifiedSummand::K3),
            Summand::SurfaceProduct { g, g_prime } => {
                if g % 2 == 0 || g_prime % 2 == 0 {
                    return Err(Error::UnsupportedFamily(format!(
                        "summand {summand} has an even genus; only odd genera are covered"
                    )));
                }
                kinds.push(CertifiedSummand::SurfaceProduct { g, g_prime });
            }
            Summand::S4 => {}
            _ => {
                return Err(Error::UnsupportedFamily(format!(
                    "summand {summand} is neither K3 nor a product of odd-genus surfaces"
                )))
            }
        }
    }
    if kinds.is_empty() {
        return Err(Error::UnsupportedFamily("no K3 or surface-product summands".into()));
    }
    if m.canonical_c1() != Some(s.c1()) {
        return Err(Error::UnsupportedFamily(
            "c1 is not the sum of the canonical classes of the summands".into(),
        ));
    }
    Ok(FamilyCertificate {
        l: kinds.len(),
        summand_kinds: kinds,
        canonical: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BordismValue {
    Trivial,
    Nontrivial,
    Unknown,
}

impl fmt::Display for BordismValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BordismValue::Trivial => "trivial",
            BordismValue::Nontrivial => "nontrivial",
            BordismValue::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// `Ω^spin_d(pt)` for small `d`. Only the entries for `d = 1, 2` are used in
/// verdicts; the rest are standard values kept for display.
pub fn spin_bordism_group(d: u32) -> &'static str {
    match d {
        0 => "Z",
        1 | 2 => "Z2",
        3 => "0",
        4 => "Z",
        5..=7 => "0",
        8 => "Z+Z",
        _ => "not tabulated",
    }
}

/// A class in `Ω^spin_d(pt)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinBordismClass {
    pub dimension: u32,
    pub group: String,
    pub value: BordismValue,
}

/// σ⁰ of a certified connected sum.
///
/// `l = 1` is refused: the moduli space is a point there but no value of σ⁰
/// in `Ω₀` is established for it.
pub fn sigma0(m: &ManifoldData, s: &SpinCStructure) -> Result<SpinBordismClass> {
    let cert = certify_family(m, s)?;
    sigma0_certified(m, s, &cert)
}

pub(crate) fn sigma0_certified(
    m: &ManifoldData,
    s: &SpinCStructure,
    cert: &FamilyCertificate,
) -> Result<SpinBordismClass> {
    if cert.l < 2 {
        return Err(Error::NotAddressed(
            "sigma0 of a single summand (l = 1) is not evaluated".into(),
        ));
    }
    if !condition_star(m, s)?.holds {
        return Err(Error::Precondition("condition (*) fails, so sigma0 is undefined".into()));
    }
    let dimension = (cert.l - 1) as u32;
    let d = moduli_dimension(m, s)?;
    if d != dimension as i64 {
        return Err(Error::Validation(format!(
            "moduli dimension {d} disagrees with l - 1 = {dimension}"
        )));
    }
    let value = if cert.l <= 3 {
        BordismValue::Nontrivial
    } else {
        BordismValue::Trivial
    };
    Ok(SpinBordismClass {
        dimension,
        group: spin_bordism_group(dimension).to_string(),
        value,
    })
}

/// Certificate of a family on which σ⁰ is nontrivial (`l` = 2 or 3); the
/// hypothesis shared by the adjunction, Yamabe and Einstein results.
pub fn require_nontrivial(m: &ManifoldData, s: &SpinCStructure) -> Result<FamilyCertificate> {
    let cert = certify_family(m, s)?;
    let class = sigma0_certified(m, s, &cert)?;
    if class.value != BordismValue::Nontrivial {
        return Err(Error::Precondition(format!(
            "sigma0 is {} for l = {}; the result needs a nontrivial sigma0 (l = 2 or 3)",
            class.value, cert.l
        )));
    }
    Ok(cert)
}
