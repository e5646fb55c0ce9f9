//! Report payloads for each command: one struct per command, serialized as
//! JSON under `--json` and rendered as text otherwise. Field order is fixed
//! by the struct declarations, so identical inputs give identical bytes.

use exact_linalg::{FGModule, ModuleMap, Ring};
use functors::{CharacteristicCycle, StalkReport, SupportSet};
use perv_core::{matrix_to_data, MatrixData, MorphismFile, MorphismClass, ObjectFile};
use serde::Serialize;
use theorem_suite::CheckReport;

#[derive(Serialize)]
pub struct ModuleOut {
    pub display: String,
    pub free_rank: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub invariant_factors: Vec<String>,
}

pub fn module_out<R: Ring>(m: &FGModule<R>) -> ModuleOut {
    ModuleOut {
        display: m.describe(),
        free_rank: m.free_rank() as u64,
        invariant_factors: m.torsion().iter().map(|d| m.ring().format(d)).collect(),
    }
}

#[derive(Serialize)]
pub struct MapOut {
    pub domain: String,
    pub codomain: String,
    pub matrix: MatrixData,
}

pub fn map_out<R: Ring>(f: &ModuleMap<R>) -> MapOut {
    MapOut {
        domain: f.domain().describe(),
        codomain: f.codomain().describe(),
        matrix: matrix_to_data(f),
    }
}

pub fn fmt_matrix(m: &MatrixData) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

#[derive(Serialize)]
pub struct StalkOut {
    pub location: String,
    pub minus_one: ModuleOut,
    pub zero: ModuleOut,
}

pub fn stalk_out<R: Ring>(report: &StalkReport<R>) -> StalkOut {
    StalkOut {
        location: report.location.to_string(),
        minus_one: module_out(&report.minus_one),
        zero: module_out(&report.zero),
    }
}

impl StalkOut {
    pub fn human(&self) -> String {
        format!(
            "{}: degree -1 = {}, degree 0 = {}",
            self.location, self.minus_one.display, self.zero.display
        )
    }
}

#[derive(Serialize)]
pub struct SupportOut {
    pub display: String,
    pub origin: bool,
    pub branches: Vec<bool>,
}

pub fn support_out(s: &SupportSet) -> SupportOut {
    SupportOut { display: s.to_string(), origin: s.origin, branches: s.branches.clone() }
}

#[derive(Serialize)]
pub struct CycleOut {
    pub display: String,
    pub branches: Vec<u64>,
    pub origin: u64,
}

pub fn cycle_out(cc: &CharacteristicCycle) -> CycleOut {
    CycleOut { display: cc.to_string(), branches: cc.branches.clone(), origin: cc.origin }
}

#[derive(Serialize)]
pub struct ClassOut {
    pub injective: bool,
    pub surjective: bool,
    pub zero: bool,
    pub isomorphism: bool,
}

pub fn class_out(c: &MorphismClass) -> ClassOut {
    ClassOut {
        injective: c.injective,
        surjective: c.surjective,
        zero: c.zero,
        isomorphism: c.isomorphism,
    }
}

impl ClassOut {
    pub fn human(&self) -> String {
        if self.isomorphism {
            return "isomorphism".to_string();
        }
        let mut parts = Vec::new();
        if self.injective {
            parts.push("injective");
        }
        if self.surjective {
            parts.push("surjective");
        }
        if self.zero {
            parts.push("zero");
        }
        if parts.is_empty() {
            "not injective, not surjective".to_string()
        } else {
            parts.join(", ")
        }
    }
}

#[derive(Serialize)]
pub struct ValidateOut {
    pub status: String,
    pub kind: String,
    pub ring: String,
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ValidateOut {
    pub fn human(&self) -> String {
        match &self.error {
            None => format!("{} {} over {}: {}", self.status, self.kind, self.ring, self.display),
            Some(e) => format!("invalid {}: {}", self.kind, e),
        }
    }
}

#[derive(Serialize)]
pub struct FactorPartOut {
    pub role: String,
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub support: SupportOut,
    pub stalks: Vec<StalkOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cc: Option<CycleOut>,
    pub object: ObjectFile,
}

#[derive(Serialize)]
pub struct FactorOut {
    pub ring: String,
    pub source: String,
    pub target: String,
    pub classification: ClassOut,
    pub parts: Vec<FactorPartOut>,
}

impl FactorOut {
    pub fn human(&self) -> String {
        let mut lines = vec![
            format!("morphism over {}: {} -> {}", self.ring, self.source, self.target),
            format!("classification: {}", self.classification.human()),
        ];
        for part in &self.parts {
            let name = part.name.as_ref().map(|n| format!(" = {n}")).unwrap_or_default();
            lines.push(format!("{}: {}{}", part.role, part.display, name));
            lines.push(format!("  support: {}", part.support.display));
            for s in &part.stalks {
                lines.push(format!("  stalk at {}", s.human()));
            }
            if let Some(cc) = &part.cc {
                lines.push(format!("  characteristic cycle: {}", cc.display));
            }
        }
        lines.join("\n")
    }
}

#[derive(Serialize)]
pub struct StalkObjectOut {
    pub ring: String,
    pub display: String,
    pub stalk: StalkOut,
}

impl StalkObjectOut {
    pub fn human(&self) -> String {
        format!("object over {}: {}\nstalk at {}", self.ring, self.display, self.stalk.human())
    }
}

#[derive(Serialize)]
pub struct StalkMorphismOut {
    pub ring: String,
    pub display: String,
    pub location: String,
    pub minus_one: MapOut,
    pub zero: MapOut,
}

impl StalkMorphismOut {
    pub fn human(&self) -> String {
        format!(
            "morphism over {}: {}\ninduced stalk maps at {}:\n  degree -1: {} -> {} via {}\n  degree 0: {} -> {} via {}",
            self.ring,
            self.display,
            self.location,
            self.minus_one.domain,
            self.minus_one.codomain,
            fmt_matrix(&self.minus_one.matrix),
            self.zero.domain,
            self.zero.codomain,
            fmt_matrix(&self.zero.matrix),
        )
    }
}

#[derive(Serialize)]
pub struct SupportCmdOut {
    pub ring: String,
    pub display: String,
    pub support: SupportOut,
}

impl SupportCmdOut {
    pub fn human(&self) -> String {
        format!("object over {}: {}\nsupport: {}", self.ring, self.display, self.support.display)
    }
}

#[derive(Serialize)]
pub struct CcCmdOut {
    pub ring: String,
    pub display: String,
    pub cc: CycleOut,
    pub underlying_set: String,
}

impl CcCmdOut {
    pub fn human(&self) -> String {
        format!(
            "object over {}: {}\ncharacteristic cycle: {}\nunderlying set: {}",
            self.ring, self.display, self.cc.display, self.underlying_set
        )
    }
}

#[derive(Serialize)]
pub struct PhiObjectOut {
    pub ring: String,
    pub display: String,
    pub phi: ModuleOut,
    pub monodromy: MatrixData,
}

impl PhiObjectOut {
    pub fn human(&self) -> String {
        format!(
            "object over {}: {}\nvanishing cycles: {}\nmonodromy: {}",
            self.ring,
            self.display,
            self.phi.display,
            fmt_matrix(&self.monodromy)
        )
    }
}

#[derive(Serialize)]
pub struct PhiMorphismOut {
    pub ring: String,
    pub display: String,
    pub source_phi: ModuleOut,
    pub target_phi: ModuleOut,
    pub matrix: MatrixData,
}

impl PhiMorphismOut {
    pub fn human(&self) -> String {
        format!(
            "morphism over {}: {}\ninduced map on vanishing cycles: {} -> {} via {}",
            self.ring,
            self.display,
            self.source_phi.display,
            self.target_phi.display,
            fmt_matrix(&self.matrix)
        )
    }
}

#[derive(Serialize)]
pub struct HomOut {
    pub ring: String,
    pub source: String,
    pub target: String,
    pub generator_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub generators: Vec<MorphismFile>,
}

impl HomOut {
    pub fn human(&self) -> String {
        let dim = match self.dimension {
            Some(d) => format!("dimension {d}"),
            None => format!("{} generators (integral: no dimension)", self.generator_count),
        };
        format!("Hom({} , {}) over {}: {}", self.source, self.target, self.ring, dim)
    }
}

#[derive(Serialize)]
pub struct IsoOut {
    pub ring: String,
    pub source: String,
    pub target: String,
    pub verdict: String,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<MorphismFile>,
}

impl IsoOut {
    pub fn human(&self) -> String {
        let mut line = format!(
            "{} vs {} over {}: {} (trials {}, seed {})",
            self.source, self.target, self.ring, self.verdict, self.trials, self.seed
        );
        if let Some(w) = &self.witness {
            line.push_str(&format!("\n  distinguished by: {w}"));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!("\n  note: {n}"));
        }
        line
    }
}

#[derive(Serialize)]
pub struct CheckOut {
    pub suite: String,
    pub ring: String,
    pub trials: u64,
    pub max_dim: u64,
    pub seed: u64,
    pub overall: String,
    pub reports: Vec<CheckReport>,
}

impl CheckOut {
    pub fn human(&self) -> String {
        let mut lines: Vec<String> = self.reports.iter().map(|r| r.summary_line()).collect();
        lines.push(format!("overall: {}", self.overall));
        lines.join("\n")
    }
}
