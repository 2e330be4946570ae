//! Bundled link catalog: named braid presentations with expected component
//! counts, plus loading of user catalogs in JSON-lines form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown link name {0:?}")]
    UnknownName(String),
    #[error("catalog line {line}: {message}")]
    BadEntry { line: usize, message: String },
    #[error(transparent)]
    Braid(#[from] crate::braid::BraidError),
}

/// Provenance of a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    #[serde(rename = "paper_appendix_A")]
    PaperAppendixA,
    #[serde(rename = "paper_section_8_3")]
    PaperSection83,
    #[serde(rename = "external_table")]
    ExternalTable,
}

/// A named braid presentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub braid: String,
    pub components: usize,
    pub source: Source,
}

impl CatalogEntry {
    pub fn word(&self) -> Result<BraidWord, CatalogError> {
        let w = BraidWord::parse(&self.braid)?;
        let found = w.components().count;
        if found != self.components {
            return Err(CatalogError::BadEntry {
                line: 0,
                message: format!(
                    "{}: braid closure has {} components, expected {}",
                    self.name, found, self.components
                ),
            });
        }
        Ok(w)
    }
}

/// The twelve 3-component pairs distinguished from their Homflypt partners,
/// in comparison order: (first, second) per pair.
pub const DISTINGUISHED_PAIRS: [(&str, &str); 6] = [
    ("L11n358{0,1}", "L11n418{0,0}"),
    ("L11a467{0,1}", "L11a527{0,0}"),
    ("L11n325{1,1}", "L11n424{0,0}"),
    ("L10n79{1,1}", "L10n95{1,0}"),
    ("L11a404{1,1}", "L11a428{0,1}"),
    ("L10n76{1,1}", "L11n425{1,0}"),
];

fn builtin() -> Vec<CatalogEntry> {
    let e = |name: &str, braid: &str, components: usize, source: Source| CatalogEntry {
        name: name.to_string(),
        braid: braid.to_string(),
        components,
        source,
    };
    vec![
        // tabulated 3-component pairs
        e(
            "L11n358{0,1}",
            "{1,-2,-3,-4,3,3,-5,4,-3,2,-1,-3,-2,-4,3,-2,-2,-2,5,4,-3}",
            3,
            Source::PaperAppendixA,
        ),
        e("L11n418{0,0}", "{-1,-2,3,-2,-3,2,-1,-3,-3,2,-3}", 3, Source::PaperAppendixA),
        e(
            "L11a467{0,1}",
            "{1,-2,-3,4,3,-2,3,3,-2,-4,5,4,3,-2,-1,-2,-3,-2,-2,-4,3,-2,-5}",
            3,
            Source::PaperAppendixA,
        ),
        e(
            "L11a527{0,0}",
            "{1,2,-3,-4,-3,5,4,-3,-2,-1,-3,-4,-3,2,-3,-3,-5,4,-3,2,2}",
            3,
            Source::PaperAppendixA,
        ),
        e("L11n325{1,1}", "{-1,2,-1,2,-1,-2,-2,3,-2,3,-2}", 3, Source::PaperAppendixA),
        e("L11n424{0,0}", "{-1,2,-1,-2,3,-2,-2,1,-2,3,-2}", 3, Source::PaperAppendixA),
        e("L10n79{1,1}", "{-1,2,-1,2,-1,-2,-2,-2,-2,-2}", 3, Source::PaperAppendixA),
        e("L10n95{1,0}", "{-1,2,-1,-2,-2,-2,1,-2,-2,-2}", 3, Source::PaperAppendixA),
        e("L11a404{1,1}", "{-1,-1,2,2,-1,3,2,2,-1,2,2,-3,2}", 3, Source::PaperAppendixA),
        e("L11a428{0,1}", "{1,-2,3,-2,1,1,1,-2,3,-2,1}", 3, Source::PaperAppendixA),
        e(
            "L10n76{1,1}",
            "{1,2,-3,4,-3,-2,-1,-3,-2,3,-2,3,-2,-3,-4,-3}",
            3,
            Source::PaperAppendixA,
        ),
        e("L11n425{1,0}", "{-1,2,-1,-3,-3,-2,1,3,-2,-3,-3}", 3, Source::PaperAppendixA),
        // knots used in the skein-tree cross checks
        e("5_2*", "{-1,2,-1,-2,-2,-2}", 1, Source::PaperSection83),
        e("8_20", "{-2,1,-2,-1,2,-1,-2,1}", 1, Source::PaperSection83),
        // standard table presentations, validated by their P values
        e("unknot", "{}", 1, Source::ExternalTable),
        e("3_1", "{1,1,1}", 1, Source::ExternalTable),
        e("3_1*", "{-1,-1,-1}", 1, Source::ExternalTable),
        e("4_1", "{1,-2,1,-2}", 1, Source::ExternalTable),
        e("6_2*", "{-1,-1,-1,2,-1,2}", 1, Source::ExternalTable),
        e("hopf", "{1,1}", 2, Source::ExternalTable),
        e("hopf*", "{-1,-1}", 2, Source::ExternalTable),
        e("solomon", "{1,1,1,1}", 2, Source::ExternalTable),
    ]
}

/// Name index over the built-in entries, plus any user-supplied ones.
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    by_alias: BTreeMap<String, usize>,
}

/// Names are matched laxly: case-insensitive, ignoring braces, commas,
/// dots and spaces, so `L11n418.00` finds `L11n418{0,0}`.
fn alias(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '{' | '}' | ',' | '.' | ' ' | '_'))
        .collect::<String>()
        .to_ascii_lowercase()
}

impl Catalog {
    pub fn builtin() -> Self {
        let mut c = Catalog { entries: Vec::new(), by_alias: BTreeMap::new() };
        for e in builtin() {
            c.insert(e);
        }
        c
    }

    pub fn insert(&mut self, entry: CatalogEntry) {
        self.by_alias.insert(alias(&entry.name), self.entries.len());
        self.entries.push(entry);
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.by_alias
            .get(&alias(name))
            .map(|&i| &self.entries[i])
            .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
    }

    /// Resolve a name to a parsed, component-checked braid word.
    pub fn resolve(&self, name: &str) -> Result<BraidWord, CatalogError> {
        self.get(name)?.word()
    }

    /// Extend from a JSON-lines catalog file
    /// (`{"name":…, "braid":"{…}", "components":…, "source":…}` per line).
    pub fn load_jsonl(&mut self, text: &str) -> Result<usize, CatalogError> {
        let mut added = 0;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry: CatalogEntry = serde_json::from_str(line)
                .map_err(|e| CatalogError::BadEntry { line: i + 1, message: e.to_string() })?;
            entry
                .word()
                .map_err(|e| CatalogError::BadEntry { line: i + 1, message: e.to_string() })?;
            self.insert(entry);
            added += 1;
        }
        Ok(added)
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Self::builtin()
    }
}
