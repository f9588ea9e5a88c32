//! Generator manifolds and the connected-sum combinator.
//!
//! A [`ManifoldData`] records the free part of the cohomology of a closed
//! oriented 4-manifold: `b1`, the intersection lattice on `H²`, the cup
//! products of pairs of `H¹` generators expressed in the `H²` basis, the
//! Euler number, and which generators it was assembled from.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Inertia, Lattice, LatticeVector};

/// Provenance tag of a connected summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Summand {
    K3,
    /// `Σ_g × Σ_g'`.
    SurfaceProduct { g: u32, g_prime: u32 },
    Cp2,
    Cp2Bar,
    S1xS3,
    S4,
    Custom(String),
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::K3 => write!(f, "K3"),
            Summand::SurfaceProduct { g, g_prime } => write!(f, "SP({g},{g_prime})"),
            Summand::Cp2 => write!(f, "CP2"),
            Summand::Cp2Bar => write!(f, "~CP2"),
            Summand::S1xS3 => write!(f, "S1xS3"),
            Summand::S4 => write!(f, "S4"),
            Summand::Custom(label) => write!(f, "CUSTOM({label})"),
        }
    }
}

impl Serialize for Summand {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Summand {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Summand {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "K3" => Summand::K3,
            "CP2" => Summand::Cp2,
            "~CP2" => Summand::Cp2Bar,
            "S1xS3" => Summand::S1xS3,
            "S4" => Summand::S4,
            _ => {
                if let Some(inner) = s.strip_prefix("SP(").and_then(|r| r.strip_suffix(')')) {
                    let (a, b) = inner.split_once(',').ok_or_else(|| format!("bad summand tag `{s}`"))?;
                    let g = a.trim().parse().map_err(|_| format!("bad genus in `{s}`"))?;
                    let g_prime = b.trim().parse().map_err(|_| format!("bad genus in `{s}`"))?;
                    Summand::SurfaceProduct { g, g_prime }
                } else if let Some(label) = s.strip_prefix("CUSTOM(").and_then(|r| r.strip_suffix(')')) {
                    Summand::Custom(label.to_string())
                } else {
                    return Err(format!("unknown summand tag `{s}`"));
                }
            }
        })
    }
}

/// A sparse class in `H²`, as `(basis index, coefficient)` pairs.
pub type SparseClass = Vec<(usize, i64)>;

/// Cup products `α_i ⌣ α_j` of `H¹` generators, stored for `i < j`.
///
/// Missing pairs are zero. Lookups with `i > j` return the negated class and
/// `i == j` is always zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CupTensor {
    entries: BTreeMap<(usize, usize), SparseClass>,
}

impl CupTensor {
    pub fn new() -> Self {
        CupTensor::default()
    }

    /// Records `α_i ⌣ α_j` for `i < j`. Zero coefficients are dropped.
    pub fn insert(&mut self, i: usize, j: usize, class: SparseClass) {
        assert!(i < j, "cup tensor entries are keyed by i < j");
        let class: SparseClass = class.into_iter().filter(|&(_, c)| c != 0).collect();
        if class.is_empty() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), class);
        }
    }

    /// `(sign, class)` for `α_i ⌣ α_j`, or `None` when it vanishes.
    pub fn sparse(&self, i: usize, j: usize) -> Option<(i64, &[(usize, i64)])> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.entries.get(&(i, j)).map(|c| (1, c.as_slice())),
            Ordering::Greater => self.entries.get(&(j, i)).map(|c| (-1, c.as_slice())),
            Ordering::Equal => None,
        }
    }

    /// `α_i ⌣ α_j` as a dense vector in an `H²` of the given rank.
    pub fn class(&self, i: usize, j: usize, rank: usize) -> LatticeVector {
        let mut v = vec![0; rank];
        if let Some((sign, class)) = self.sparse(i, j) {
            for &(k, c) in class {
                v[k] += sign * c;
            }
        }
        LatticeVector::new(v)
    }

    /// Nonzero entries with `i < j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &[(usize, i64)])> {
        self.entries.iter().map(|(&(i, j), c)| (i, j, c.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn shifted(&self, index_offset: usize, class_offset: usize) -> impl Iterator<Item = ((usize, usize), SparseClass)> + '_ {
        self.entries.iter().map(move |(&(i, j), c)| {
            (
                (i + index_offset, j + index_offset),
                c.iter().map(|&(k, v)| (k + class_offset, v)).collect(),
            )
        })
    }
}

/// Free-part cohomological profile of a closed oriented 4-manifold.
///
/// Values are validated on construction and immutable afterwards.
#[derive(Clone, Debug)]
pub struct ManifoldData {
    b1: usize,
    h2: Lattice,
    cup1: CupTensor,
    euler: i64,
    summands: Vec<Summand>,
    canonical_c1: Option<LatticeVector>,
    inertia: OnceLock<Inertia>,
}

impl PartialEq for ManifoldData {
    fn eq(&self, other: &Self) -> bool {
        self.b1 == other.b1
            && self.h2 == other.h2
            && self.cup1 == other.cup1
            && self.euler == other.euler
            && self.summands == other.summands
            && self.canonical_c1 == other.canonical_c1
    }
}

impl Eq for ManifoldData {}

impl ManifoldData {
    /// Validates and assembles a manifold profile.
    ///
    /// Checks that every cup-tensor key is in range with a class of the right
    /// shape, that `χ = 2 − 2·b1 + rank H²`, and that `canonical_c1` (when
    /// given) is characteristic.
    pub fn new(
        b1: usize,
        h2: Lattice,
        cup1: CupTensor,
        euler: i64,
        summands: Vec<Summand>,
        canonical_c1: Option<LatticeVector>,
    ) -> Result<Self> {
        let rank = h2.rank();
        for (i, j, class) in cup1.iter() {
            if j >= b1 {
                return Err(Error::Validation(format!(
                    "cup1 entry ({},{}) refers to an H^1 generator beyond b1 = {b1}",
                    i + 1,
                    j + 1
                )));
            }
            if let Some(&(k, _)) = class.iter().find(|&&(k, _)| k >= rank) {
                return Err(Error::Validation(format!(
                    "cup1 entry ({},{}) has a coefficient at H^2 index {k} beyond rank {rank}",
                    i + 1,
                    j + 1
                )));
            }
        }
        let expected = 2 - 2 * b1 as i64 + rank as i64;
        if euler != expected {
            return Err(Error::Validation(format!(
                "Euler number {euler} does not match 2 - 2*b1 + rank(H^2) = {expected}"
            )));
        }
        if let Some(c1) = &canonical_c1 {
            if c1.len() != rank {
                return Err(Error::Validation(format!(
                    "c1 has length {} but rank(H^2) = {rank}",
                    c1.len()
                )));
            }
            if let Some(index) = h2.characteristic_defect(c1)? {
                return Err(Error::Validation(format!(
                    "declared c1 is not characteristic (fails at basis class {index})"
                )));
            }
        }
        Ok(ManifoldData {
            b1,
            h2,
            cup1,
            euler,
            summands,
            canonical_c1,
            inertia: OnceLock::new(),
        })
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn h2(&self) -> &Lattice {
        &self.h2
    }

    pub fn cup1(&self) -> &CupTensor {
        &self.cup1
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn canonical_c1(&self) -> Option<&LatticeVector> {
        self.canonical_c1.as_ref()
    }

    pub fn inertia(&self) -> Inertia {
        *self.inertia.get_or_init(|| self.h2.inertia())
    }

    pub fn signature(&self) -> i64 {
        self.inertia().signature()
    }

    pub fn b_plus(&self) -> usize {
        self.inertia().positive
    }

    pub fn b_minus(&self) -> usize {
        self.inertia().negative
    }

    pub fn is_negative_definite(&self) -> bool {
        self.h2.rank() == 0 || self.inertia().negative == self.h2.rank()
    }

    /// Connected sum of two manifolds.
    pub fn connected_sum(&self, other: &ManifoldData) -> ManifoldData {
        ManifoldData::connected_sum_all([self, other])
    }

    /// Left-to-right connected sum of all parts; the empty sum is `S⁴`.
    ///
    /// Forms add orthogonally, `b1` adds, `χ` drops by 2 per gluing, and cup
    /// products between generators of different summands vanish. The
    /// canonical class is the concatenation of the parts' canonical classes;
    /// a part with `H² = 0` contributes the empty vector whether or not it
    /// declares one. If any other part lacks one, so does the sum.
    pub fn connected_sum_all<'a>(parts: impl IntoIterator<Item = &'a ManifoldData>) -> ManifoldData {
        let parts: Vec<&ManifoldData> = parts.into_iter().collect();
        if parts.is_empty() {
            return s4();
        }
        let h2 = Lattice::orthogonal_sum(parts.iter().map(|p| &p.h2));
        let mut entries = BTreeMap::new();
        let (mut b1, mut rank) = (0, 0);
        let mut euler = 2;
        let mut summands = Vec::new();
        let mut canonical: Option<Vec<i64>> = Some(Vec::new());
        let mut any_canonical = false;
        for p in &parts {
            entries.extend(p.cup1.shifted(b1, rank));
            b1 += p.b1;
            rank += p.h2.rank();
            euler += p.euler - 2;
            summands.extend(p.summands.iter().cloned());
            match (&mut canonical, &p.canonical_c1) {
                (Some(acc), Some(c1)) => {
                    any_canonical = true;
                    acc.extend_from_slice(c1.coords());
                }
                (Some(_), None) if p.h2.rank() == 0 => {}
                _ => canonical = None,
            }
        }
        let canonical_c1 = canonical.filter(|_| any_canonical).map(LatticeVector::new);
        // Inertia is additive over orthogonal sums; reuse it when every part
        // already knows its own.
        let inertia = OnceLock::new();
        let known: Option<Vec<Inertia>> = parts.iter().map(|p| p.inertia.get().copied()).collect();
        if let Some(known) = known {
            let total = known.iter().fold(Inertia::default(), |acc, i| Inertia {
                positive: acc.positive + i.positive,
                negative: acc.negative + i.negative,
                null: acc.null + i.null,
            });
            let _ = inertia.set(total);
        }
        ManifoldData {
            b1,
            h2,
            cup1: CupTensor { entries },
            euler,
            summands,
            canonical_c1,
            inertia,
        }
    }

    /// `n` copies of `self` summed together; `n = 0` gives `S⁴`.
    pub fn repeated(&self, n: usize) -> ManifoldData {
        ManifoldData::connected_sum_all(std::iter::repeat_n(self, n))
    }

    /// Copy with the provenance list replaced.
    pub fn with_summands(mut self, summands: Vec<Summand>) -> ManifoldData {
        self.summands = summands;
        self
    }
}

/// The K3 surface: `H² = 3H ⊕ 2(−E8)`, `b1 = 0`, canonical class zero.
pub fn k3() -> ManifoldData {
    let h = Lattice::hyperbolic();
    let e8 = Lattice::negative_e8();
    let h2 = Lattice::orthogonal_sum([&h, &h, &h, &e8, &e8]);
    let c1 = LatticeVector::zeros(h2.rank());
    ManifoldData::new(0, h2, CupTensor::new(), 24, vec![Summand::K3], Some(c1)).expect("K3 data is consistent")
}

/// Intersection number `⟨u ⌣ v, [Σ_g]⟩` on a symplectic basis
/// `(x_1, y_1, …, x_g, y_g)` with `x_k ⌣ y_k` the fundamental class.
fn symplectic(u: usize, v: usize) -> i64 {
    if u / 2 != v / 2 || u == v {
        0
    } else if u.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ_g × Σ_g'` with the product complex structure.
///
/// `H²` basis: index 0 is `α` (pulled back from `Σ_g`), index 1 is `α'`
/// (from `Σ_g'`), then the mixed classes `p × q` at `2 + p·2g' + q`. `H¹`
/// generators are the `2g` classes of `Σ_g` followed by the `2g'` classes of
/// `Σ_g'`. Mixed classes pair by `Q(p×q, p'×q') = −⟨pp'⟩⟨qq'⟩`.
pub fn surface_product(g: u32, g_prime: u32) -> Result<ManifoldData> {
    if g == 0 || g_prime == 0 {
        return Err(Error::Domain(format!(
            "surface product genera must be positive, got ({g},{g_prime})"
        )));
    }
    let (n, n_prime) = (2 * g as usize, 2 * g_prime as usize);
    let rank = 2 + n * n_prime;
    let mixed = |p: usize, q: usize| 2 + p * n_prime + q;

    let mut form = vec![(0, 1, 1)];
    for p in 0..n {
        for q in 0..n_prime {
            // Each symplectic basis element pairs with exactly one partner.
            let (pp, qq) = (p ^ 1, q ^ 1);
            let (a, b) = (mixed(p, q), mixed(pp, qq));
            if a <= b {
                form.push((a, b, -symplectic(p, pp) * symplectic(q, qq)));
            }
        }
    }
    let h2 = Lattice::from_entries(rank, form);

    let mut cup1 = CupTensor::new();
    for i in 0..n {
        if i % 2 == 0 {
            cup1.insert(i, i + 1, vec![(0, symplectic(i, i + 1))]);
        }
        for q in 0..n_prime {
            cup1.insert(i, n + q, vec![(mixed(i, q), 1)]);
        }
    }
    for q in (0..n_prime).step_by(2) {
        cup1.insert(n + q, n + q + 1, vec![(1, symplectic(q, q + 1))]);
    }

    let euler = (2 - 2 * g as i64) * (2 - 2 * g_prime as i64);
    let mut c1 = vec![0; rank];
    c1[0] = 2 * (1 - g as i64);
    c1[1] = 2 * (1 - g_prime as i64);
    ManifoldData::new(
        n + n_prime,
        h2,
        cup1,
        euler,
        vec![Summand::SurfaceProduct { g, g_prime }],
        Some(LatticeVector::new(c1)),
    )
}

/// Complex projective plane with its standard orientation.
pub fn cp2() -> ManifoldData {
    ManifoldData::new(0, Lattice::diagonal(&[1]), CupTensor::new(), 3, vec![Summand::Cp2], None)
        .expect("CP2 data is consistent")
}

/// Complex projective plane with the reversed orientation.
pub fn cp2bar() -> ManifoldData {
    ManifoldData::new(0, Lattice::diagonal(&[-1]), CupTensor::new(), 3, vec![Summand::Cp2Bar], None)
        .expect("CP2-bar data is consistent")
}

pub fn s1xs3() -> ManifoldData {
    ManifoldData::new(1, Lattice::empty(), CupTensor::new(), 0, vec![Summand::S1xS3], None)
        .expect("S1xS3 data is consistent")
}

pub fn s4() -> ManifoldData {
    ManifoldData::new(0, Lattice::empty(), CupTensor::new(), 2, vec![Summand::S4], None)
        .expect("S4 data is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_invariants() {
        let m = k3();
        assert_eq!(m.b1(), 0);
        assert_eq!(m.euler(), 24);
        assert_eq!(m.h2().rank(), 22);
        assert_eq!(m.signature(), -16);
        assert_eq!((m.b_plus(), m.b_minus()), (3, 19));
        assert!(m.canonical_c1().unwrap().is_zero());
        assert!(m.cup1().is_empty());
    }

    #[test]
    fn torus_times_torus() {
        let m = surface_product(1, 1).unwrap();
        assert_eq!(m.b1(), 4);
        assert_eq!(m.euler(), 0);
        assert!(m.canonical_c1().unwrap().is_zero());
        assert_eq!(m.h2().rank(), 6);
        assert_eq!(m.signature(), 0);
    }

    #[test]
    fn genus_three_canonical_class() {
        let m = surface_product(3, 3).unwrap();
        let c1 = m.canonical_c1().unwrap();
        assert_eq!(&c1.coords()[..2], &[-4, -4]);
        assert!(c1.coords()[2..].iter().all(|&x| x == 0));
        assert_eq!(m.h2().square(c1).unwrap(), 32);
    }

    #[test]
    fn surface_products_are_unimodular_with_zero_signature() {
        for g in 1..=4 {
            for gp in 1..=4 {
                let m = surface_product(g, gp).unwrap();
                assert!(m.h2().is_unimodular(), "SP({g},{gp})");
                assert!(m.h2().is_even());
                assert_eq!(m.signature(), 0);
                assert_eq!(m.h2().rank(), 4 * (g * gp) as usize + 2);
                assert_eq!(m.b1(), 2 * (g + gp) as usize);
                let c1 = m.canonical_c1().unwrap();
                let expected = 8 * (1 - g as i64) * (1 - gp as i64);
                assert_eq!(m.h2().square(c1).unwrap(), expected);
            }
        }
    }

    #[test]
    fn surface_product_cup_structure() {
        let m = surface_product(1, 2).unwrap();
        // x1 ⌣ y1 on the genus-1 factor is α.
        assert_eq!(m.cup1().class(0, 1, m.h2().rank()).coords()[0], 1);
        assert_eq!(m.cup1().class(1, 0, m.h2().rank()).coords()[0], -1);
        // y1 ⌣ x1 on the genus-2 factor is −α'.
        assert_eq!(m.cup1().class(3, 2, m.h2().rank()).coords()[1], -1);
        // Cross-factor products are the mixed classes themselves.
        let mixed = m.cup1().class(0, 2, m.h2().rank());
        assert_eq!(mixed.coords().iter().filter(|&&x| x != 0).count(), 1);
        assert!(m.cup1().sparse(2, 2).is_none());
    }

    #[test]
    fn nonpositive_genus_rejected() {
        assert!(matches!(surface_product(0, 3), Err(Error::Domain(_))));
        assert!(matches!(surface_product(2, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn small_generators() {
        let m = cp2bar();
        assert_eq!((m.signature(), m.euler(), m.b1()), (-1, 3, 0));
        let m = cp2();
        assert_eq!((m.signature(), m.euler()), (1, 3));
        let m = s1xs3();
        assert_eq!((m.signature(), m.euler(), m.b1()), (0, 0, 1));
        let m = s4();
        assert_eq!((m.signature(), m.euler(), m.b1()), (0, 2, 0));
        for m in [cp2(), cp2bar(), s1xs3(), s4()] {
            assert!(m.canonical_c1().is_none());
        }
    }

    #[test]
    fn k3_sum_k3() {
        let m = k3().connected_sum(&k3());
        assert_eq!(m.euler(), 46);
        assert_eq!(m.signature(), -32);
        assert_eq!(m.b1(), 0);
        assert_eq!(m.canonical_c1().unwrap().len(), 44);
        assert_eq!(m.summands(), &[Summand::K3, Summand::K3]);
    }

    #[test]
    fn s4_is_a_unit() {
        let a = surface_product(3, 1).unwrap();
        let m = s4().connected_sum(&a);
        assert_eq!(m.euler(), a.euler());
        assert_eq!(m.signature(), a.signature());
        assert_eq!(m.b1(), a.b1());
        assert_eq!(m.canonical_c1(), a.canonical_c1());
        assert_eq!(m.h2(), a.h2());
        assert_eq!(m.cup1(), a.cup1());
    }

    #[test]
    fn canonical_class_dropped_by_cp2bar() {
        let m = k3().connected_sum(&cp2bar());
        assert!(m.canonical_c1().is_none());
        let m = k3().connected_sum(&s1xs3());
        assert_eq!(m.canonical_c1().map(|c| c.len()), Some(22));
        let m = s4().connected_sum(&s1xs3());
        assert!(m.canonical_c1().is_none());
    }

    #[test]
    fn cross_cup_products_vanish() {
        let a = surface_product(1, 1).unwrap();
        let m = a.connected_sum(&a);
        assert_eq!(m.b1(), 8);
        let rank = m.h2().rank();
        assert!(m.cup1().class(0, 4, rank).is_zero());
        // The second summand's classes are shifted by rank(H²_A) = 6.
        let c = m.cup1().class(4, 5, rank);
        assert_eq!(c.coords()[6], 1);
    }

    #[test]
    fn euler_mismatch_rejected() {
        let err = ManifoldData::new(0, Lattice::diagonal(&[-1]), CupTensor::new(), 4, vec![], None).unwrap_err();
        assert!(err.to_string().contains("Euler"));
    }

    #[test]
    fn summand_tags_round_trip() {
        for s in [
            Summand::K3,
            Summand::SurfaceProduct { g: 3, g_prime: 5 },
            Summand::Cp2,
            Summand::Cp2Bar,
            Summand::S1xS3,
            Summand::S4,
            Summand::Custom("x".into()),
        ] {
            assert_eq!(s.to_string().parse::<Summand>().unwrap(), s);
        }
    }
}
