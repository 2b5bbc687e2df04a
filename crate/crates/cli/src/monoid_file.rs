//! Loading finite monoids and their actions from TOML files.
//!
//! ```toml
//! elements = ["e", "g"]
//! unit = "e"
//! mul = [["e", "g"], ["g", "e"]]      # row i: elements[i] · column j
//!
//! [left]
//! set = ["p0", "p1"]
//! action = [["p0", "p1"], ["p1", "p0"]]   # row: monoid element, column: set element
//! basepoint = "p0"
//!
//! [right]
//! set = ["q0"]
//! action = [["q0", "q0"]]                 # row: set element, column: monoid element
//! ```
//!
//! Entries are names, not indices; every monoid and action axiom is checked
//! exhaustively after resolution.

use std::path::Path;

use operads::action::{ActionError, FiniteAction, SetAction};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
struct MonoidDoc {
    elements: Vec<String>,
    unit: String,
    mul: Vec<Vec<String>>,
    left: Option<SideDoc>,
    right: Option<SideDoc>,
}

#[derive(Debug, Deserialize)]
struct SideDoc {
    set: Vec<String>,
    action: Vec<Vec<String>>,
    basepoint: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum MonoidFileError {
    #[error("cannot read monoid file: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0}")]
    Resolve(String),
    #[error("axiom violation: {0}")]
    Axioms(#[from] ActionError),
}

pub fn load_action(path: &Path) -> Result<FiniteAction, MonoidFileError> {
    let text = std::fs::read_to_string(path)?;
    parse_action(&text)
}

pub fn parse_action(text: &str) -> Result<FiniteAction, MonoidFileError> {
    let doc: MonoidDoc = toml::from_str(text)?;
    let resolve = |names: &[String], n: &str| -> Result<usize, MonoidFileError> {
        names
            .iter()
            .position(|m| m == n)
            .ok_or_else(|| MonoidFileError::Resolve(format!("unknown name `{n}`")))
    };
    let mul = doc
        .mul
        .iter()
        .map(|row| {
            row.iter()
                .map(|n| resolve(&doc.elements, n))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut basepoint: Option<String> = None;
    let left = doc
        .left
        .map(|side| {
            basepoint = side.basepoint.clone();
            let table = side
                .action
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|n| resolve(&side.set, n))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok::<_, MonoidFileError>(SetAction {
                names: side.set,
                table,
            })
        })
        .transpose()?;
    let right = doc
        .right
        .map(|side| {
            let table = side
                .action
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|n| resolve(&side.set, n))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok::<_, MonoidFileError>(SetAction {
                names: side.set,
                table,
            })
        })
        .transpose()?;
    Ok(FiniteAction::new(
        doc.elements,
        &doc.unit,
        mul,
        left,
        right,
        basepoint.as_deref(),
    )?)
}
