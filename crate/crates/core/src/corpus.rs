//! A corpus is a directory of algebra files (`*.mla`) and extension files
//! (`*.ext`), loaded in file-name order.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::algebra::{ElementId, FiniteMla};
use crate::error::{MlaError, Result};
use crate::fixtures;
use crate::format::{read_algebra, read_extension, store_algebra, store_extension, write_text};
use crate::isoclinism::{make_extension, CentralExtension};
use crate::structure::{enumerate_ideals_bounded, joint_center, DEFAULT_IDEAL_BOUND};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Algebra,
    Extension,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub path: PathBuf,
    pub kind: EntryKind,
}

#[derive(Clone, Debug)]
pub struct NamedExtension {
    pub name: String,
    pub extension: CentralExtension,
    /// Set when the file declares the extension a stem cover of this algebra.
    pub cover_of: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub root: PathBuf,
    pub catalog: Vec<CatalogEntry>,
    /// Catalog name and algebra, in catalog order.
    pub algebras: Vec<(String, FiniteMla)>,
    pub extensions: Vec<NamedExtension>,
}

fn entry_error(path: &Path, source: MlaError) -> MlaError {
    MlaError::CorpusEntry {
        path: path.display().to_string(),
        source: Box::new(source),
    }
}

impl Corpus {
    /// Loads and validates every entry. The first invalid entry aborts the
    /// load with an error naming its file.
    pub fn load(root: &Path) -> Result<Corpus> {
        let dir = std::fs::read_dir(root).map_err(|source| MlaError::Io {
            path: root.display().to_string(),
            source,
        })?;
        let mut paths: Vec<PathBuf> = Vec::new();
        for entry in dir {
            let entry = entry.map_err(|source| MlaError::Io {
                path: root.display().to_string(),
                source,
            })?;
            paths.push(entry.path());
        }
        paths.sort();

        let mut corpus = Corpus {
            root: root.to_path_buf(),
            ..Corpus::default()
        };
        for path in paths {
            let kind = match path.extension().and_then(|e| e.to_str()) {
                Some("mla") => EntryKind::Algebra,
                Some("ext") => EntryKind::Extension,
                _ => continue,
            };
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            match kind {
                EntryKind::Algebra => {
                    let g = read_algebra(&path).map_err(|e| entry_error(&path, e))?;
                    corpus.algebras.push((name.clone(), g));
                }
                EntryKind::Extension => {
                    let loaded = read_extension(&path).map_err(|e| entry_error(&path, e))?;
                    let extension = make_extension(&loaded.algebra, loaded.kernel)
                        .map_err(|e| entry_error(&path, e))?;
                    corpus.extensions.push(NamedExtension {
                        name: name.clone(),
                        extension,
                        cover_of: loaded.cover_of,
                    });
                }
            }
            corpus.catalog.push(CatalogEntry { name, path, kind });
        }
        Ok(corpus)
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    pub fn algebra(&self, name: &str) -> Option<&FiniteMla> {
        self.algebras
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    /// Every central extension `(G, H)` with `G` a corpus algebra of order at
    /// most `max_order` and `H` an ideal inside `𝒵(G)`, followed by the
    /// extension files. Names are `<algebra>[<kernel>]`.
    pub fn central_extensions(&self, max_order: usize) -> Result<Vec<NamedExtension>> {
        let mut out = Vec::new();
        for (name, g) in self.algebras.iter().filter(|(_, g)| g.order() <= max_order) {
            let z = joint_center(g);
            for h in enumerate_ideals_bounded(g, DEFAULT_IDEAL_BOUND.max(max_order))? {
                if h.is_subset_of(&z) {
                    out.push(NamedExtension {
                        name: format!("{name}{h}"),
                        extension: make_extension(g, h.members().to_vec())?,
                        cover_of: None,
                    });
                }
            }
        }
        out.extend(
            self.extensions
                .iter()
                .filter(|e| e.extension.total.order() <= max_order)
                .cloned(),
        );
        Ok(out)
    }
}

/// Extension files shipped with the corpus: name, algebra name, kernel and
/// the algebra covered, if any.
pub fn shipped_extensions() -> Vec<(&'static str, &'static str, Vec<u32>, Option<&'static str>)> {
    vec![
        ("c4_over_c2", "c4", vec![0, 2], None),
        ("d4_over_v4", "d4", vec![0, 2], Some("v4")),
        ("d4xc2_over_centre", "d4xc2", vec![0, 1, 4, 5], None),
        ("q8_over_v4", "q8", vec![0, 2], Some("v4")),
        ("v4_over_c2", "v4", vec![0, 2], None),
    ]
}

/// Writes the fixture algebras and shipped extensions into `dir`, which is
/// created if missing. Returns the written paths in order.
pub fn write_shipped_corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| MlaError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    for g in fixtures::corpus_algebras() {
        let path = dir.join(format!("{}.mla", g.name()));
        write_text(&path, &store_algebra(&g))?;
        written.push(path);
    }
    for (name, algebra, kernel, cover_of) in shipped_extensions() {
        let path = dir.join(format!("{name}.ext"));
        let kernel: Vec<ElementId> = kernel.into_iter().map(ElementId).collect();
        write_text(&path, &store_extension(algebra, &kernel, cover_of))?;
        written.push(path);
    }
    Ok(written)
}
