use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use csymlie::catalog::{self, CatalogEntry, NilpotentFamilySpec};
use csymlie::exact::{FormFile, Scalar};
use csymlie::lie::AlgebraFile;
use csymlie::semidirect::{ConnectionData, ConnectionFile, SpecialLagrangian};
use csymlie::{Error, ExteriorForm, LieAlgebra, Matrix, Subspace};

pub const CATALOG_ENV: &str = "CSYMLIE_CATALOG_DIR";

/// An algebra with `(J, Ω1)` and a proposed splitting `𝔤 ⊕ V`, each
/// subspace given by spanning vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureFile {
    pub algebra: AlgebraFile,
    pub j: Matrix,
    pub omega1: FormFile,
    pub g: Vec<Vec<Scalar>>,
    pub v: Vec<Vec<Scalar>>,
}

pub struct Structure {
    pub algebra: LieAlgebra,
    pub j: Matrix,
    pub omega1: ExteriorForm,
    pub g: Subspace,
    pub v: Subspace,
}

impl StructureFile {
    pub fn from_special_lagrangian(sl: &SpecialLagrangian) -> Self {
        StructureFile {
            algebra: sl.h.to_file(),
            j: sl.j.clone(),
            omega1: sl.omega1.to_file(),
            g: sl.g_space().basis().to_vec(),
            v: sl.v_space().basis().to_vec(),
        }
    }

    pub fn load(&self) -> Result<Structure, Error> {
        let algebra = LieAlgebra::from_file(&self.algebra)?;
        let n = algebra.dim();
        let omega1 = ExteriorForm::from_file(n, &self.omega1)?;
        for w in self.g.iter().chain(&self.v) {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
        }
        Ok(Structure {
            g: Subspace::span(n, &self.g),
            v: Subspace::span(n, &self.v),
            algebra,
            j: self.j.clone(),
            omega1,
        })
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn catalog() -> Result<Vec<CatalogEntry>, Error> {
    let dir = std::env::var_os(CATALOG_ENV).map(PathBuf::from);
    catalog::entries_with_overrides(dir.as_deref())
}

pub fn catalog_entry(id: &str) -> Result<CatalogEntry, Error> {
    catalog()?
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownEntry(id.into()))
}

/// A connection from a file, accepting either a bare connection or an
/// exported catalog entry, or else a catalog id.
pub fn connection(source: &str) -> Result<(String, ConnectionData), Error> {
    let path = Path::new(source);
    if !path.exists() {
        return Ok((source.to_string(), catalog_entry(source)?.connection));
    }
    let value: serde_json::Value = read_json(path)?;
    let parse = |e: serde_json::Error| Error::parse(source, e.to_string());
    let file: ConnectionFile = if value.get("connection").is_some() {
        serde_json::from_value::<catalog::EntryFile>(value).map_err(parse)?.connection
    } else {
        serde_json::from_value(value).map_err(parse)?
    };
    let name = path.file_stem().map_or(source.into(), |s| s.to_string_lossy().into_owned());
    Ok((name, ConnectionData::from_file(&file)?))
}

/// `"1 0; 0 1/2"`: rows split by `;`, entries by spaces or commas.
pub fn parse_matrix(s: &str) -> Result<Matrix, Error> {
    let rows = s
        .split(';')
        .map(|row| {
            row.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(str::parse)
                .collect::<Result<Vec<Scalar>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows)
}

pub fn family_spec(file: Option<&Path>, blocks: &[String]) -> Result<NilpotentFamilySpec, Error> {
    match file {
        Some(p) => read_json::<NilpotentFamilySpec>(p).and_then(|s| NilpotentFamilySpec::new(s.a)),
        None if blocks.is_empty() => Err(Error::parse("family", "give a spec file or at least one --a block")),
        None => NilpotentFamilySpec::new(blocks.iter().map(|b| parse_matrix(b)).collect::<Result<_, _>>()?),
    }
}
