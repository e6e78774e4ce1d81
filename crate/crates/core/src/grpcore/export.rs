//! CSV and JSON renderings of character tables.

use serde::Serialize;

use super::{ClassFunction, Group};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub rep: String,
    pub size: usize,
    pub order: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedCharacter {
    pub name: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableExport {
    pub group: String,
    pub order: usize,
    pub classes: Vec<ClassInfo>,
    pub characters: Vec<NamedCharacter>,
}

impl TableExport {
    pub fn new(group: &Group, chars: &[(String, ClassFunction)]) -> TableExport {
        let cl = group.classes();
        TableExport {
            group: group.name().to_string(),
            order: group.order(),
            classes: (0..cl.len())
                .map(|c| ClassInfo {
                    rep: group.rep_key(c),
                    size: cl.size(c),
                    order: cl.element_order(c),
                })
                .collect(),
            characters: chars
                .iter()
                .map(|(name, chi)| NamedCharacter {
                    name: name.clone(),
                    values: chi.value_strings(),
                })
                .collect(),
        }
    }

    /// Header cells are `key|size`; one row per character.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
        let mut header = vec!["character".to_string()];
        header.extend(self.classes.iter().map(|c| format!("{}|{}", c.rep, c.size)));
        w.write_record(&header).map_err(io)?;
        for ch in &self.characters {
            let mut row = vec![ch.name.clone()];
            row.extend(ch.values.iter().cloned());
            w.write_record(&row).map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidParameter(format!("csv: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
