//! JSON file format for objects and morphisms.
//!
//! An object file records the ring tag, the branch modules, the vanishing
//! module, and the two families of structure matrices with entries written
//! as decimal strings (`"3"`, `"-1/2"`). Modules come in two spellings: the
//! shorthand `{"dim": n}` for a free module, and the full
//! `{"free_rank": n, "invariant_factors": [...]}` form. Matrices are
//! row-major, rows indexed by target generators, columns by source
//! generators, so a map out of a zero module is an empty array.

use exact_linalg::{FGModule, Mat, ModuleMap, Ring, RingKind};
use serde::{Deserialize, Serialize};

use crate::error::PervError;
use crate::morphism::PervMorphism;
use crate::object::PervObject;

pub type MatrixData = Vec<Vec<String>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRecord {
    Shorthand {
        dim: u64,
    },
    Full {
        free_rank: u64,
        #[serde(default)]
        invariant_factors: Vec<serde_json::Number>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectFile {
    pub ring: String,
    pub branches: usize,
    pub psi: Vec<ModuleRecord>,
    pub phi: ModuleRecord,
    pub can: Vec<MatrixData>,
    pub var: Vec<MatrixData>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismFile {
    pub source: ObjectFile,
    pub target: ObjectFile,
    pub a: Vec<MatrixData>,
    pub b: MatrixData,
}

pub fn module_to_record<R: Ring>(m: &FGModule<R>) -> ModuleRecord {
    if m.torsion().is_empty() {
        ModuleRecord::Shorthand { dim: m.free_rank() as u64 }
    } else {
        ModuleRecord::Full {
            free_rank: m.free_rank() as u64,
            invariant_factors: m
                .torsion()
                .iter()
                .map(|d| {
                    let s = m.ring().format(d);
                    serde_json::from_str(&s).expect("invariant factor is an integer")
                })
                .collect(),
        }
    }
}

fn record_to_module<R: Ring>(ring: &R, rec: &ModuleRecord) -> Result<FGModule<R>, PervError> {
    match rec {
        ModuleRecord::Shorthand { dim } => Ok(FGModule::free(ring, *dim as usize)),
        ModuleRecord::Full { free_rank, invariant_factors } => {
            let torsion = invariant_factors
                .iter()
                .map(|n| ring.parse(&n.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FGModule::new(ring, *free_rank as usize, torsion)?)
        }
    }
}

pub fn matrix_to_data<R: Ring>(m: &ModuleMap<R>) -> MatrixData {
    let ring = m.ring();
    let mat = m.matrix();
    (0..mat.rows())
        .map(|i| (0..mat.cols()).map(|j| ring.format(mat.at(i, j))).collect())
        .collect()
}

fn data_to_map<R: Ring>(
    ring: &R,
    domain: FGModule<R>,
    codomain: FGModule<R>,
    data: &MatrixData,
    what: &str,
) -> Result<ModuleMap<R>, PervError> {
    let rows = codomain.num_gens();
    let cols = domain.num_gens();
    if data.len() != rows {
        return Err(PervError::Input(format!(
            "{what}: expected {rows} rows, found {}",
            data.len()
        )));
    }
    let mut mat = Mat::zero(ring, rows, cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(PervError::Input(format!(
                "{what}: row {} has {} entries, expected {cols}",
                i + 1,
                row.len()
            )));
        }
        for (j, s) in row.iter().enumerate() {
            mat.set(i, j, ring.parse(s)?);
        }
    }
    Ok(ModuleMap::new(domain, codomain, mat)?)
}

impl ObjectFile {
    pub fn from_object<R: Ring>(obj: &PervObject<R>) -> Self {
        ObjectFile {
            ring: obj.ring().kind().to_string(),
            branches: obj.branches(),
            psi: obj.psi_all().iter().map(module_to_record).collect(),
            phi: module_to_record(obj.phi()),
            can: obj.can_all().iter().map(matrix_to_data).collect(),
            var: obj.var_all().iter().map(matrix_to_data).collect(),
        }
    }

    pub fn ring_kind(&self) -> Result<RingKind, PervError> {
        Ok(RingKind::parse(&self.ring)?)
    }

    /// Rebuild (and fully re-validate) the object over the given ring. The
    /// ring must match the file's tag.
    pub fn to_object<R: Ring>(&self, ring: &R) -> Result<PervObject<R>, PervError> {
        if self.ring_kind()? != ring.kind() {
            return Err(PervError::Input(format!(
                "file uses ring {}, reader expected {}",
                self.ring,
                ring.kind()
            )));
        }
        if self.psi.len() != self.branches
            || self.can.len() != self.branches
            || self.var.len() != self.branches
        {
            return Err(PervError::Input(format!(
                "file declares {} branches but lists {} branch modules, {} can matrices, {} var matrices",
                self.branches,
                self.psi.len(),
                self.can.len(),
                self.var.len()
            )));
        }
        let psi = self
            .psi
            .iter()
            .map(|r| record_to_module(ring, r))
            .collect::<Result<Vec<_>, _>>()?;
        let phi = record_to_module(ring, &self.phi)?;
        let mut can = Vec::with_capacity(self.branches);
        let mut var = Vec::with_capacity(self.branches);
        for i in 0..self.branches {
            can.push(data_to_map(
                ring,
                psi[i].clone(),
                phi.clone(),
                &self.can[i],
                &format!("can matrix for branch {}", i + 1),
            )?);
            var.push(data_to_map(
                ring,
                phi.clone(),
                psi[i].clone(),
                &self.var[i],
                &format!("var matrix for branch {}", i + 1),
            )?);
        }
        PervObject::new(psi, phi, can, var)
    }
}

impl MorphismFile {
    pub fn from_morphism<R: Ring>(t: &PervMorphism<R>) -> Self {
        MorphismFile {
            source: ObjectFile::from_object(t.source()),
            target: ObjectFile::from_object(t.target()),
            a: t.branch_maps().iter().map(matrix_to_data).collect(),
            b: matrix_to_data(t.vanishing_map()),
        }
    }

    pub fn ring_kind(&self) -> Result<RingKind, PervError> {
        let k = self.source.ring_kind()?;
        if self.target.ring_kind()? != k {
            return Err(PervError::Input(
                "morphism source and target use different rings".to_string(),
            ));
        }
        Ok(k)
    }

    pub fn to_morphism<R: Ring>(&self, ring: &R) -> Result<PervMorphism<R>, PervError> {
        let source = self.source.to_object(ring)?;
        let target = self.target.to_object(ring)?;
        if self.a.len() != source.branches() {
            return Err(PervError::Input(format!(
                "morphism lists {} branch matrices for {} branches",
                self.a.len(),
                source.branches()
            )));
        }
        let mut a = Vec::with_capacity(self.a.len());
        for i in 0..self.a.len() {
            a.push(data_to_map(
                ring,
                source.psi(i).clone(),
                target.psi(i).clone(),
                &self.a[i],
                &format!("branch matrix {}", i + 1),
            )?);
        }
        let b = data_to_map(
            ring,
            source.phi().clone(),
            target.phi().clone(),
            &self.b,
            "vanishing matrix",
        )?;
        PervMorphism::new(source, target, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{Integers, Rationals};

    #[test]
    fn object_round_trips_through_json() {
        let m = FGModule::new(&Integers, 1, vec![num::BigInt::from(4)]).unwrap();
        let free = FGModule::free(&Integers, 1);
        // can: Z → Z⊕Z/4 hitting the free generator; var = 0 keeps axioms.
        let can = ModuleMap::new(
            free.clone(),
            m.clone(),
            Mat::from_i64(&Integers, &[&[1], &[0]]),
        )
        .unwrap();
        let var = ModuleMap::zero_map(m.clone(), free.clone());
        let obj = PervObject::new(vec![free.clone()], m.clone(), vec![can], vec![var]).unwrap();

        let file = ObjectFile::from_object(&obj);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let parsed: ObjectFile = serde_json::from_str(&json).unwrap();
        let back = parsed.to_object(&Integers).unwrap();
        assert_eq!(back, obj);
    }

    #[test]
    fn shorthand_dim_spelling_is_accepted() {
        let json = r#"{
            "ring": "q",
            "branches": 1,
            "psi": [{"dim": 1}],
            "phi": {"dim": 1},
            "can": [[["1"]]],
            "var": [[["-2"]]]
        }"#;
        let file: ObjectFile = serde_json::from_str(json).unwrap();
        let obj = file.to_object(&Rationals).unwrap();
        assert_eq!(obj.psi(0).free_rank(), 1);
    }

    #[test]
    fn ring_mismatch_is_an_input_error() {
        let json = r#"{
            "ring": "z",
            "branches": 1,
            "psi": [{"dim": 1}],
            "phi": {"dim": 0},
            "can": [[]],
            "var": [[[]]]
        }"#;
        let file: ObjectFile = serde_json::from_str(json).unwrap();
        let err = file.to_object(&Rationals).unwrap_err();
        assert!(err.is_input_error(), "got {err}");
    }

    #[test]
    fn bad_axioms_in_a_file_are_not_input_errors() {
        // can = 1, var = -1 makes the branch monodromy zero.
        let json = r#"{
            "ring": "q",
            "branches": 1,
            "psi": [{"dim": 1}],
            "phi": {"dim": 1},
            "can": [[["1"]]],
            "var": [[["-1"]]]
        }"#;
        let file: ObjectFile = serde_json::from_str(json).unwrap();
        let err = file.to_object(&Rationals).unwrap_err();
        assert!(!err.is_input_error(), "got {err}");
        assert!(matches!(err, PervError::Axiom { .. }));
    }
}
