//! File formats: family JSON, witness JSON, sweep grids.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use witfam::{canonicalize, ElementSet, GroundParams, SetFamily, WitnessAssignment};

use crate::CliError;

/// `{"n":6,"d":2,"s":1,"sets":[[1,2,3],[1,2,4]]}`. `d` and `s` may be
/// omitted on input and supplied by flags instead.
#[derive(Debug, Serialize, Deserialize)]
pub struct FamilyFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub sets: Vec<ElementSet>,
}

pub struct LoadedFamily {
    pub family: SetFamily,
    pub d: Option<usize>,
    pub s: Option<usize>,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_family(path: &Path) -> Result<LoadedFamily, CliError> {
    let file: FamilyFile = serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::usage(format!("malformed family file {}: {e}", path.display())))?;
    let family = canonicalize(file.n, file.sets)?;
    Ok(LoadedFamily {
        family,
        d: file.d,
        s: file.s,
    })
}

pub fn family_json(family: &SetFamily, params: &GroundParams) -> Result<String, CliError> {
    let file = FamilyFile {
        n: family.n(),
        d: Some(params.d),
        s: Some(params.s),
        sets: family.members().to_vec(),
    };
    Ok(serde_json::to_string(&file)? + "\n")
}

pub fn read_witnesses(path: &Path) -> Result<WitnessAssignment, CliError> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::usage(format!("malformed witness file {}: {e}", path.display())))
}

pub fn witness_json(assignment: &WitnessAssignment) -> Result<String, CliError> {
    Ok(serde_json::to_string(assignment)? + "\n")
}

/// One grid cell as written; validated per cell so a bad cell does not stop the sweep.
#[derive(Debug, Deserialize)]
pub struct GridCell {
    pub n: usize,
    pub d: usize,
    pub s: usize,
}

pub fn read_grid(path: &Path) -> Result<Vec<GridCell>, CliError> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::usage(format!("malformed grid file {}: {e}", path.display())))
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::usage(format!("cannot write stdout: {e}")))
        }
    }
}
