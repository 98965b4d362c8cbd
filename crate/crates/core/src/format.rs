//! Text formats: algebra files (`.mla`), extension files (`.ext`) and map
//! files.
//!
//! An algebra file is a JSON object
//! `{ "name", "order", "mul", "star", "names"? }` whose tables are arrays of
//! rows of element ids. The writer puts one table row per line so that files
//! diff well.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementId, FiniteMla, GroupTable, MlaTables, UncheckedMla};
use crate::error::{MlaError, Result};
use crate::morph::MlaMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub order: usize,
    pub mul: Vec<Vec<u32>>,
    pub star: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra(g: &FiniteMla) -> Self {
        AlgebraFile {
            name: g.name().to_string(),
            order: g.order(),
            mul: g.group().rows(),
            star: g.tables().star_rows(),
            names: g.names().map(<[String]>::to_vec),
        }
    }

    /// Group-table checks run here; the `⋆` axioms do not.
    pub fn into_unchecked(self) -> Result<UncheckedMla> {
        let n = self.order;
        if n == 0 {
            return Err(MlaError::Parse("order must be positive".into()));
        }
        for (field, table) in [("mul", &self.mul), ("star", &self.star)] {
            if table.len() != n {
                return Err(MlaError::Parse(format!(
                    "field `{field}` has {} rows, expected {n}",
                    table.len()
                )));
            }
            if let Some(x) = table.iter().position(|r| r.len() != n) {
                return Err(MlaError::Parse(format!(
                    "field `{field}` row {x} has {} entries, expected {n}",
                    table[x].len()
                )));
            }
        }
        let group = GroupTable::from_rows(&self.mul)?;
        let tables = MlaTables::new(group, self.star.into_iter().flatten().collect())?;
        UncheckedMla::new(self.name, tables, self.names)
    }
}

/// Parses an algebra file. The result still has to be validated.
pub fn load_algebra(text: &str) -> Result<UncheckedMla> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| MlaError::Parse(e.to_string()))?;
    file.into_unchecked()
}

/// Parses and validates.
pub fn load_valid_algebra(text: &str) -> Result<FiniteMla> {
    load_algebra(text)?.into_validated()
}

fn write_table(out: &mut String, key: &str, rows: &[Vec<u32>]) {
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let sep = if i + 1 == rows.len() { "" } else { "," };
        let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
    }
    out.push_str("  ]");
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Serializes an algebra file with one table row per line.
pub fn store_algebra_file(file: &AlgebraFile) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"name\": {},", json_string(&file.name));
    let _ = writeln!(out, "  \"order\": {},", file.order);
    write_table(&mut out, "mul", &file.mul);
    out.push_str(",\n");
    write_table(&mut out, "star", &file.star);
    if let Some(names) = &file.names {
        let names: Vec<String> = names.iter().map(|s| json_string(s)).collect();
        let _ = write!(out, ",\n  \"names\": [{}]", names.join(", "));
    }
    out.push_str("\n}\n");
    out
}

pub fn store_algebra(g: &FiniteMla) -> String {
    store_algebra_file(&AlgebraFile::from_algebra(g))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| MlaError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| MlaError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads and validates an algebra file.
pub fn read_algebra(path: &Path) -> Result<FiniteMla> {
    load_valid_algebra(&read_text(path)?)
}

/// The algebra of an extension file: a name resolved next to the file, or
/// an inline algebra object.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub algebra: AlgebraRef,
    pub kernel: Vec<u32>,
    /// Marks the extension as a stem cover of the named algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_of: Option<String>,
}

pub fn parse_extension(text: &str) -> Result<ExtensionFile> {
    serde_json::from_str(text).map_err(|e| MlaError::Parse(e.to_string()))
}

/// An extension file with its algebra loaded and validated.
#[derive(Clone, Debug)]
pub struct LoadedExtension {
    pub algebra: FiniteMla,
    pub kernel: Vec<ElementId>,
    pub cover_of: Option<String>,
}

/// Loads an extension file; a named algebra is looked up as `<name>.mla` in
/// the same directory.
pub fn read_extension(path: &Path) -> Result<LoadedExtension> {
    let file = parse_extension(&read_text(path)?)?;
    let algebra = match file.algebra {
        AlgebraRef::Inline(inline) => inline.into_unchecked()?.into_validated()?,
        AlgebraRef::Name(name) => {
            let dir = path
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."));
            read_algebra(&dir.join(format!("{name}.mla")))?
        }
    };
    let n = algebra.order();
    if let Some(bad) = file.kernel.iter().find(|&&k| k as usize >= n) {
        return Err(MlaError::Parse(format!(
            "kernel id {bad} outside an algebra of order {n}"
        )));
    }
    Ok(LoadedExtension {
        algebra,
        kernel: file.kernel.into_iter().map(ElementId).collect(),
        cover_of: file.cover_of,
    })
}

pub fn store_extension(algebra_name: &str, kernel: &[ElementId], cover_of: Option<&str>) -> String {
    let file = ExtensionFile {
        algebra: AlgebraRef::Name(algebra_name.to_string()),
        kernel: kernel.iter().map(|k| k.0).collect(),
        cover_of: cover_of.map(str::to_string),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("extension serializes");
    text.push('\n');
    text
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: String,
    pub target: String,
    pub image: MlaMap,
}

pub fn parse_map(text: &str) -> Result<MapFile> {
    serde_json::from_str(text).map_err(|e| MlaError::Parse(e.to_string()))
}

/// Accepts either a map file or a bare id array such as `[0,2,1,3]`.
pub fn parse_map_or_image(text: &str) -> Result<MlaMap> {
    if let Ok(file) = serde_json::from_str::<MapFile>(text) {
        return Ok(file.image);
    }
    serde_json::from_str::<MlaMap>(text).map_err(|e| MlaError::Parse(format!("not a map: {e}")))
}

/// Parses a comma- or space-separated id list, optionally bracketed.
pub fn parse_id_list(text: &str) -> Result<Vec<ElementId>> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map(ElementId)
                .map_err(|_| MlaError::Parse(format!("`{s}` is not an element id")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn loads_c2() {
        let g = load_algebra(r#"{"name":"c2","order":2,"mul":[[0,1],[1,0]],"star":[[0,0],[0,0]]}"#)
            .unwrap()
            .into_validated()
            .unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(ElementId(1)), ElementId(1));
    }

    #[test]
    fn latin_violation_names_row() {
        let err =
            load_algebra(r#"{"name":"x","order":2,"mul":[[0,1],[1,1]],"star":[[0,0],[0,0]]}"#)
                .unwrap_err();
        assert!(err.to_string().contains("row 1 not a permutation"), "{err}");
    }

    #[test]
    fn missing_star_names_field() {
        let err = load_algebra(r#"{"name":"x","order":2,"mul":[[0,1],[1,0]]}"#).unwrap_err();
        assert!(matches!(err, MlaError::Parse(_)));
        assert!(err.to_string().contains("star"), "{err}");
    }

    #[test]
    fn ragged_table_is_a_parse_error() {
        let err = load_algebra(r#"{"name":"x","order":2,"mul":[[0,1],[1]],"star":[[0,0],[0,0]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("`mul` row 1"), "{err}");
    }

    #[test]
    fn round_trip_preserves_every_field() {
        for g in [
            fixtures::dihedral_commutator(4),
            fixtures::klein_trivial(),
            fixtures::quaternion_trivial(),
        ] {
            let text = store_algebra(&g);
            let back = load_valid_algebra(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(store_algebra(&back), text);
        }
    }

    #[test]
    fn stored_rows_sit_on_one_line() {
        let text = store_algebra(&fixtures::cyclic_trivial(3));
        assert!(text.contains("    [1, 2, 0],\n"), "{text}");
    }

    #[test]
    fn id_lists() {
        assert_eq!(
            parse_id_list("[0, 2,4]").unwrap(),
            vec![ElementId(0), ElementId(2), ElementId(4)]
        );
        assert_eq!(
            parse_id_list("1 3").unwrap(),
            vec![ElementId(1), ElementId(3)]
        );
        assert!(parse_id_list("a").is_err());
    }

    #[test]
    fn map_file_round_trip() {
        let m = MapFile {
            source: "a".into(),
            target: "b".into(),
            image: MlaMap::new(vec![ElementId(0), ElementId(1)]),
        };
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"source":"a","target":"b","image":[0,1]}"#);
        assert_eq!(parse_map(&text).unwrap(), m);
        assert_eq!(parse_map_or_image("[0,1]").unwrap(), m.image);
    }
}
