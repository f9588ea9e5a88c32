//! Reports: a serde-backed record of one command's results, rendered either
//! as JSON (`"schema": 1`) or as plain text derived from the same record.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atlas::{ManifoldData, Summand};
use crate::bordism::{FamilyCertificate, SpinBordismClass};
use crate::lattice::LatticeVector;
use crate::obstruction::{ScanTable, YamabeValue};
use crate::spinc::{StarVerdict, TorusTwoForm, W2Report};

pub const SCHEMA_VERSION: u32 = 1;

/// JSON Schema describing [`Report`] documents.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

pub const CAVEAT_FREE_PART: &str =
    "only the free parts of H^1 and H^2 are modeled; torsion classes and torsion spin^c structures are ignored";
pub const CAVEAT_SIGMA0_LOOKUP: &str = "sigma0 is a theorem lookup for connected sums of K3 surfaces and odd-genus surface products with canonical spin^c structures (nontrivial for l = 2, 3; trivial for l >= 4); it is not computed from spin structures";
pub const CAVEAT_YAMABE_HYPOTHESIS: &str =
    "the Yamabe value relies on the user's assertion that N1 admits a metric of nonnegative scalar curvature";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldSummary {
    pub expression: String,
    pub summands: Vec<Summand>,
    pub b1: usize,
    pub euler: i64,
    pub signature: i64,
    pub b_plus: usize,
    pub b_minus: usize,
    pub rank_h2: usize,
    /// Decimal string; determinants of custom forms can exceed 64 bits.
    pub form_determinant: String,
    pub negative_definite: bool,
}

impl ManifoldSummary {
    pub fn new(expression: &str, m: &ManifoldData) -> Self {
        ManifoldSummary {
            expression: expression.to_string(),
            summands: m.summands().to_vec(),
            b1: m.b1(),
            euler: m.euler(),
            signature: m.signature(),
            b_plus: m.b_plus(),
            b_minus: m.b_minus(),
            rank_h2: m.h2().rank(),
            form_determinant: m.h2().determinant().to_string(),
            negative_definite: m.is_negative_definite(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinCSource {
    Canonical,
    User,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCSummary {
    pub source: SpinCSource,
    pub c1: LatticeVector,
    pub c1_squared: i64,
    pub dirac_index: i64,
    pub moduli_dimension: i64,
    pub c_matrix: TorusTwoForm,
    pub square_root_exists: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sigma0Entry {
    pub certificate: FamilyCertificate,
    pub class: SpinBordismClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionEntry {
    pub self_intersection: i64,
    pub pairing: i64,
    pub genus: Option<u32>,
    pub obstructed: Option<bool>,
    pub min_genus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EinsteinEntry {
    pub n2: String,
    pub n2_euler: i64,
    pub n2_signature: i64,
    pub obstructed: bool,
    /// Hitchin–Thorpe for the sum `M # N2`.
    pub sum_hitchin_thorpe: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YamabeEntry {
    pub n1: String,
    pub nonneg_scalar_asserted: bool,
    pub value: YamabeValue,
    pub exact: String,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub manifold: Option<ManifoldSummary>,
    pub spinc: Option<SpinCSummary>,
    pub condition_star: Option<StarVerdict>,
    pub w2: Option<W2Report>,
    pub sigma0: Option<Sigma0Entry>,
    pub hitchin_thorpe: Option<bool>,
    pub adjunction: Option<AdjunctionEntry>,
    pub einstein: Option<EinsteinEntry>,
    pub yamabe: Option<YamabeEntry>,
    pub scan: Option<ScanTable>,
    /// Requested results that could not be produced, with the reason.
    pub notes: Vec<String>,
    pub caveats: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            input: input.to_string(),
            manifold: None,
            spinc: None,
            condition_star: None,
            w2: None,
            sigma0: None,
            hitchin_thorpe: None,
            adjunction: None,
            einstein: None,
            yamabe: None,
            scan: None,
            notes: Vec::new(),
            caveats: vec![CAVEAT_FREE_PART.to_string()],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.command, self.input)?;
        if let Some(m) = &self.manifold {
            writeln!(f, "manifold")?;
            let tags: Vec<String> = m.summands.iter().map(|s| s.to_string()).collect();
            writeln!(f, "  summands        {}", tags.join(" # "))?;
            writeln!(f, "  b1              {}", m.b1)?;
            writeln!(f, "  euler           {}", m.euler)?;
            writeln!(f, "  signature       {} (b+ = {}, b- = {})", m.signature, m.b_plus, m.b_minus)?;
            writeln!(f, "  rank H^2        {}", m.rank_h2)?;
            writeln!(f, "  det Q           {}", m.form_determinant)?;
            writeln!(f, "  neg. definite   {}", yes_no(m.negative_definite))?;
        }
        if let Some(s) = &self.spinc {
            let source = match s.source {
                SpinCSource::Canonical => "canonical",
                SpinCSource::User => "user",
            };
            writeln!(f, "spin^c ({source})")?;
            writeln!(f, "  c1              {}", s.c1)?;
            writeln!(f, "  c1^2            {}", s.c1_squared)?;
            writeln!(f, "  dirac index a   {}", s.dirac_index)?;
            writeln!(f, "  moduli dim d    {}", s.moduli_dimension)?;
            let nonzero = s.c_matrix.rows().iter().flatten().filter(|&&x| x != 0).count();
            writeln!(f, "  c_ij            {0}x{0}, {1} nonzero entries", s.c_matrix.b1(), nonzero)?;
            writeln!(f, "  sqrt(det Ind D) {}", yes_no(s.square_root_exists))?;
        }
        if let Some(v) = &self.condition_star {
            writeln!(
                f,
                "condition (*)     {} ((*)1 {}, (*)2 {})",
                if v.holds { "holds" } else { "fails" },
                yes_no(v.star1),
                yes_no(v.star2)
            )?;
        }
        if let Some(w) = &self.w2 {
            let torus_zero = w.torus_part_mod2.iter().flatten().all(|&x| x == 0);
            writeln!(
                f,
                "w2 (m even)       torus part {}, c1(H) coeff {}, w2(E) coeff {}",
                if torus_zero { "0" } else { "nonzero" },
                w.h_coefficient_mod2,
                w.e_h_coefficient_mod2
            )?;
        }
        if let Some(s) = &self.sigma0 {
            writeln!(
                f,
                "sigma0            {} in Omega^spin_{} = {} (l = {})",
                s.class.value, s.class.dimension, s.class.group, s.certificate.l
            )?;
        }
        if let Some(ht) = self.hitchin_thorpe {
            writeln!(f, "Hitchin-Thorpe    {}", if ht { "satisfied" } else { "violated" })?;
        }
        if let Some(a) = &self.adjunction {
            writeln!(f, "adjunction        n = {}, <c1,S> = {}", a.self_intersection, a.pairing)?;
            if let (Some(g), Some(ob)) = (a.genus, a.obstructed) {
                writeln!(
                    f,
                    "  genus {g}        {}",
                    if ob { "cannot embed" } else { "inequality satisfied" }
                )?;
            }
            writeln!(f, "  minimal genus   {}", a.min_genus)?;
        }
        if let Some(e) = &self.einstein {
            writeln!(f, "Einstein          N2 = {} (euler {}, signature {})", e.n2, e.n2_euler, e.n2_signature)?;
            writeln!(
                f,
                "  M # N2          {}; Hitchin-Thorpe {}",
                if e.obstructed { "admits no Einstein metric" } else { "no conclusion" },
                if e.sum_hitchin_thorpe { "satisfied" } else { "violated" }
            )?;
        }
        if let Some(y) = &self.yamabe {
            writeln!(f, "Yamabe            Y(M # {}) = {} ~ {:.6}", y.n1, y.exact, y.approx)?;
        }
        if let Some(t) = &self.scan {
            writeln!(
                f,
                "scan              genera {:?}, G = {}, s = {}",
                t.genera, t.g_total, t.s
            )?;
            writeln!(
                f,
                "  window          {} <= r <= {} (integer r from {})",
                t.lower_bound, t.upper_bound, t.lower_bound_ceil
            )?;
            writeln!(f, "  {:>5}  {:>9}  {:>14}  {:>6}", "r", "no-Einst.", "Hitchin-Thorpe", "window")?;
            for row in &t.rows {
                writeln!(
                    f,
                    "  {:>5}  {:>9}  {:>14}  {:>6}",
                    row.r,
                    yes_no(row.einstein_obstructed),
                    yes_no(row.hitchin_thorpe),
                    yes_no(row.in_window)
                )?;
            }
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        for caveat in &self.caveats {
            writeln!(f, "caveat: {caveat}")?;
        }
        Ok(())
    }
}
