//! Geometric consequences of a nontrivial σ⁰: the adjunction bound on
//! embedded surfaces, the Yamabe invariant of `M # N₁`, nonexistence of
//! Einstein metrics on `M # N₂`, together with the Hitchin–Thorpe inequality
//! and the parameter sweep comparing the two.
//!
//! Every inequality is evaluated in integers with denominators cleared;
//! equality counts as satisfied.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::atlas::{cp2bar, s1xs3, surface_product, ManifoldData};
use crate::bordism::require_nontrivial;
use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::lattice::LatticeVector;
use crate::spinc::{c1_squared, SpinCStructure};

/// A candidate embedded surface `Σ`, described by `Σ·Σ`, its genus and
/// `⟨c1(det 𝓛), [Σ]⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCandidate {
    pub self_intersection: i64,
    pub genus: u32,
    pub pairing: i64,
}

impl SurfaceCandidate {
    /// Reads `Σ·Σ` and the pairing off a homology class.
    pub fn from_class(m: &ManifoldData, s: &SpinCStructure, class: &LatticeVector, genus: u32) -> Result<Self> {
        Ok(SurfaceCandidate {
            self_intersection: m.h2().square(class)?,
            genus,
            pairing: m.h2().pairing(s.c1(), class)?,
        })
    }
}

/// True when the adjunction inequality `Σ·Σ ≤ ⟨c1, Σ⟩ + 2g − 2` fails, so no
/// such surface embeds. `false` says nothing about existence.
pub fn embedding_obstructed(m: &ManifoldData, s: &SpinCStructure, cand: &SurfaceCandidate) -> Result<bool> {
    if cand.genus == 0 {
        return Err(Error::Precondition("the adjunction bound needs a surface of positive genus".into()));
    }
    if cand.self_intersection < 0 {
        return Err(Error::Precondition(
            "the adjunction bound needs nonnegative self-intersection".into(),
        ));
    }
    require_nontrivial(m, s)?;
    let rhs = cand.pairing as i128 + 2 * cand.genus as i128 - 2;
    Ok(cand.self_intersection as i128 > rhs)
}

/// Smallest genus `g ≥ 1` compatible with the adjunction bound for a class
/// with self-intersection `n` and pairing `p`.
pub fn min_genus(m: &ManifoldData, s: &SpinCStructure, n: i64, p: i64) -> Result<i64> {
    if n < 0 {
        return Err(Error::Precondition(
            "the adjunction bound needs nonnegative self-intersection".into(),
        ));
    }
    require_nontrivial(m, s)?;
    Ok(min_genus_bound(n, p))
}

fn min_genus_bound(n: i64, p: i64) -> i64 {
    let x = n as i128 - p as i128 + 2;
    // ceil(x / 2)
    let g = (x + 1).div_euclid(2);
    g.max(1) as i64
}

/// `3|τ(X)| ≤ 2χ(X)`, necessary for an Einstein metric on `X`.
pub fn hitchin_thorpe(x: &ManifoldData) -> bool {
    3 * (x.signature() as i128).abs() <= 2 * x.euler() as i128
}

/// `4l − (2χ(N) + 3τ(N)) ≥ (1/3) Σ c1(M_j)²`, with the denominator cleared.
fn ishida_lebrun(l: usize, sum_c1_squared: i64, n2: &ManifoldData) -> bool {
    let lhs = 12 * l as i128 - 3 * (2 * n2.euler() as i128 + 3 * n2.signature() as i128);
    lhs >= sum_c1_squared as i128
}

fn require_negative_definite(n: &ManifoldData, name: &str) -> Result<()> {
    if !n.is_negative_definite() {
        return Err(Error::Precondition(format!("{name} not negative definite (b+ = {})", n.b_plus())));
    }
    Ok(())
}

/// True when `M # N₂` admits no Einstein metric by the Ishida–LeBrun type
/// inequality. Requires σ⁰(M) nontrivial and `N₂` negative definite.
pub fn einstein_nonexistence(m: &ManifoldData, s: &SpinCStructure, n2: &ManifoldData) -> Result<bool> {
    let cert = require_nontrivial(m, s)?;
    require_negative_definite(n2, "N2")?;
    Ok(ishida_lebrun(cert.l, c1_squared(m, s)?, n2))
}

/// Exact value `−4π √(2 Σ c1(M_j)²)`, also stored in the reduced form
/// `pi_coefficient · √sqrt_radicand · π` with `sqrt_radicand` squarefree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YamabeValue {
    pub sum_c1_squared: i64,
    pub pi_coefficient: i64,
    pub sqrt_radicand: i64,
}

impl YamabeValue {
    pub fn from_sum_c1_squared(sum: i64) -> Result<Self> {
        if sum < 0 {
            return Err(Error::Domain(format!("sum of c1^2 must be nonnegative, got {sum}")));
        }
        let twice = sum.checked_mul(2).ok_or(Error::Overflow("yamabe radicand"))?;
        let (outer, inner) = split_square(twice);
        Ok(YamabeValue {
            sum_c1_squared: sum,
            pi_coefficient: -4 * outer,
            sqrt_radicand: if outer == 0 { 0 } else { inner },
        })
    }

    pub fn is_zero(&self) -> bool {
        self.pi_coefficient == 0
    }

    /// Decimal approximation, for display only.
    pub fn approx(&self) -> f64 {
        self.pi_coefficient as f64 * (self.sqrt_radicand as f64).sqrt() * std::f64::consts::PI
    }
}

impl fmt::Display for YamabeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else if self.sqrt_radicand == 1 {
            write!(f, "{}π", self.pi_coefficient)
        } else {
            write!(f, "{}√{}·π", self.pi_coefficient, self.sqrt_radicand)
        }
    }
}

/// Writes `n = a² · b` with `b` squarefree.
fn split_square(n: i64) -> (i64, i64) {
    if n == 0 {
        return (0, 0);
    }
    let (mut outer, mut rest) = (1i64, n);
    let mut f = 2i64;
    while f * f <= rest {
        while rest % (f * f) == 0 {
            rest /= f * f;
            outer *= f;
        }
        f += 1;
    }
    (outer, rest)
}

/// Yamabe invariant of `M # N₁`. `n1_admits_nonneg_scalar` is the caller's
/// assertion that `N₁` carries a metric of nonnegative scalar curvature,
/// which cannot be decided from cohomological data.
pub fn yamabe_value(
    m: &ManifoldData,
    s: &SpinCStructure,
    n1: &ManifoldData,
    n1_admits_nonneg_scalar: bool,
) -> Result<YamabeValue> {
    if !n1_admits_nonneg_scalar {
        return Err(Error::Precondition(
            "metric hypothesis not certified: N1 must be asserted to admit nonnegative scalar curvature".into(),
        ));
    }
    require_nontrivial(m, s)?;
    require_negative_definite(n1, "N1")?;
    YamabeValue::from_sum_c1_squared(c1_squared(m, s)?)
}

/// One row of the sweep over `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub r: u32,
    pub einstein_obstructed: bool,
    pub hitchin_thorpe: bool,
    pub in_window: bool,
}

/// Sweep over `X = (Σ_{g1}×Σ_{g1'}) # (Σ_{g2}×Σ_{g2'}) # (#ʳ CP²-bar) # (#ˢ S¹×S³)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTable {
    pub genera: [(u32, u32); 2],
    /// `G = Σ (g_i − 1)(g_i' − 1)`.
    pub g_total: i64,
    pub s: u32,
    /// `(8/3)G − 4s − 4` in lowest terms.
    pub lower_bound: String,
    /// Least integer `r` at or above `lower_bound`.
    pub lower_bound_ceil: i64,
    /// `8G − 4s − 4`.
    pub upper_bound: i64,
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    /// Checks every row against the closed-form window.
    pub fn matches_closed_form(&self) -> bool {
        let bounds = ClosedForm::new(self.g_total, self.s as i64);
        self.rows.iter().all(|row| {
            row.einstein_obstructed == bounds.einstein(row.r as i64)
                && row.hitchin_thorpe == bounds.hitchin_thorpe(row.r as i64)
        })
    }
}

/// Closed-form window `(8/3)G − 4s − 4 ≤ r ≤ 8G − 4s − 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub lower: Ratio<i64>,
    pub upper: i64,
}

impl ClosedForm {
    pub fn new(g_total: i64, s: i64) -> Self {
        ClosedForm {
            lower: Ratio::new(8 * g_total, 3) - 4 * s - 4,
            upper: 8 * g_total - 4 * s - 4,
        }
    }

    pub fn einstein(&self, r: i64) -> bool {
        Ratio::from_integer(r) >= self.lower
    }

    pub fn hitchin_thorpe(&self, r: i64) -> bool {
        r <= self.upper
    }
}

fn ratio_string(q: Ratio<i64>) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `#ʳ CP²-bar # #ˢ S¹×S³`, or `S⁴` when `r = s = 0`.
pub fn negative_definite_tail(r: u32, s: u32) -> ManifoldData {
    let (cp, sx) = (cp2bar(), s1xs3());
    cp.inertia();
    sx.inertia();
    let parts = std::iter::repeat_n(&cp, r as usize).chain(std::iter::repeat_n(&sx, s as usize));
    ManifoldData::connected_sum_all(parts)
}

pub fn example_scan(genera: [(u32, u32); 2], s: u32, r_max: u32) -> Result<ScanTable> {
    example_scan_with(genera, s, r_max, Execution::default())
}

/// Runs the sweep for `r = 0..=r_max`. Each row assembles `N` and `X`
/// explicitly and evaluates both inequalities through the general
/// operations; nothing is read off the closed form.
pub fn example_scan_with(genera: [(u32, u32); 2], s: u32, r_max: u32, exec: Execution) -> Result<ScanTable> {
    for &(g, gp) in &genera {
        if g % 2 == 0 || gp % 2 == 0 {
            return Err(Error::Domain(format!("scan genera must be odd, got ({g},{gp})")));
        }
    }
    let m1 = surface_product(genera[0].0, genera[0].1)?;
    let m2 = surface_product(genera[1].0, genera[1].1)?;
    let m = m1.connected_sum(&m2);
    let spinc = SpinCStructure::canonical(&m)?;
    require_nontrivial(&m, &spinc)?;

    let g_total: i64 = genera.iter().map(|&(g, gp)| (g as i64 - 1) * (gp as i64 - 1)).sum();
    let bounds = ClosedForm::new(g_total, s as i64);

    let rs: Vec<u32> = (0..=r_max).collect();
    let rows = map_ordered(&rs, exec, |&r| scan_row(&m, &spinc, r, s));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

    Ok(ScanTable {
        genera,
        g_total,
        s,
        lower_bound: ratio_string(bounds.lower),
        lower_bound_ceil: bounds.lower.ceil().to_integer(),
        upper_bound: bounds.upper,
        rows,
    })
}

fn scan_row(m: &ManifoldData, spinc: &SpinCStructure, r: u32, s: u32) -> Result<ScanRow> {
    let n = negative_definite_tail(r, s);
    let einstein_obstructed = einstein_nonexistence(m, spinc, &n)?;
    let x = m.connected_sum(&n);
    let hitchin_thorpe = hitchin_thorpe(&x);
    Ok(ScanRow {
        r,
        einstein_obstructed,
        hitchin_thorpe,
        in_window: einstein_obstructed && hitchin_thorpe,
    })
}
