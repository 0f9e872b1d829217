//! Diagram and script files: versioned UTF-8 JSON with sorted keys and
//! explicit dart numbering, so load(save(d)) is bit-exact with identical
//! numbering.

use crate::cellmap::{CellMap, Dart, EdgeLabel, Family, Sign};
use crate::diagram::{Diagram, DiagramKind, TrisectionType};
use crate::error::{Error, Result};
use crate::moves::MoveScript;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const FORMAT_VERSION: u32 = 1;

/// On-disk diagram representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramFile {
    pub format_version: u32,
    pub kind: DiagramKind,
    pub declared_type: TrisectionType,
    /// Edge involution, one entry per dart.
    pub edge_involution: Vec<Dart>,
    /// Vertex rotation (next dart counterclockwise), one entry per dart.
    pub vertex_rotation: Vec<Dart>,
    /// Per-dart labels: (family, component, orientation bit). The bit is
    /// true on the dart pointing along its component's walk orientation.
    pub labels: Vec<(Family, u32, bool)>,
    /// Marked vertices: (minimal dart of the vertex, sign).
    pub marked_points: Vec<(Dart, Sign)>,
    /// Optional embedded move scripts.
    pub scripts: BTreeMap<String, MoveScript>,
}

impl DiagramFile {
    pub fn from_diagram(d: &Diagram) -> DiagramFile {
        let m = &d.map;
        let orient = orientation_bits(m);
        DiagramFile {
            format_version: FORMAT_VERSION,
            kind: d.kind,
            declared_type: d.declared,
            edge_involution: (0..m.dart_count() as Dart).map(|x| m.alpha(x)).collect(),
            vertex_rotation: (0..m.dart_count() as Dart).map(|x| m.sigma(x)).collect(),
            labels: (0..m.dart_count() as Dart)
                .map(|x| {
                    let l = m.label(x);
                    (l.family, l.component, orient[x as usize])
                })
                .collect(),
            marked_points: m.marked_points().to_vec(),
            scripts: BTreeMap::new(),
        }
    }

    pub fn into_diagram(self) -> Result<Diagram> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::VersionUnsupported(self.format_version));
        }
        let labels: Vec<EdgeLabel> = self
            .labels
            .iter()
            .map(|&(f, c, _)| EdgeLabel::new(f, c))
            .collect();
        let map = CellMap::build(
            self.edge_involution,
            self.vertex_rotation,
            labels,
            self.marked_points,
            false,
        )?;
        Diagram::new(map, self.kind)
    }
}

/// Walk-orientation bits: true on darts traversed forward by the canonical
/// component walk; scaffold and non-walkable components use the lower dart.
fn orientation_bits(m: &CellMap) -> Vec<bool> {
    let mut bits: Vec<bool> = (0..m.dart_count() as Dart).map(|d| d < m.alpha(d)).collect();
    for fam in Family::CURVES.into_iter().chain(Family::ARCS) {
        for c in m.components(fam) {
            if let Ok((walk, _)) = m.walk_component(fam, c) {
                for &d in &walk {
                    bits[d as usize] = true;
                    bits[m.alpha(d) as usize] = false;
                }
            }
        }
    }
    bits
}

/// Canonical JSON with sorted keys.
fn to_sorted_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Io(e.to_string()))?;
    serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))
}

pub fn save_diagram(d: &Diagram, path: &std::path::Path) -> Result<()> {
    save_diagram_with_scripts(d, &BTreeMap::new(), path)
}

pub fn save_diagram_with_scripts(
    d: &Diagram,
    scripts: &BTreeMap<String, MoveScript>,
    path: &std::path::Path,
) -> Result<()> {
    let mut file = DiagramFile::from_diagram(d);
    file.scripts = scripts.clone();
    let text = to_sorted_json(&file)?;
    std::fs::write(path, text).map_err(|e| Error::Io(e.to_string()))
}

pub fn load_diagram(path: &std::path::Path) -> Result<Diagram> {
    load_diagram_file(path)?.into_diagram()
}

pub fn load_diagram_file(path: &std::path::Path) -> Result<DiagramFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| Error::ParseError(e.to_string()))
}

/// Script files hold a single move script.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScriptFile {
    pub format_version: u32,
    pub script: MoveScript,
}

pub fn save_script(script: &MoveScript, path: &std::path::Path) -> Result<()> {
    let file = ScriptFile { format_version: FORMAT_VERSION, script: script.clone() };
    let text = to_sorted_json(&file)?;
    std::fs::write(path, text).map_err(|e| Error::Io(e.to_string()))
}

pub fn load_script(path: &std::path::Path) -> Result<MoveScript> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    let file: ScriptFile =
        serde_json::from_str(&text).map_err(|e| Error::ParseError(e.to_string()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::VersionUnsupported(file.format_version));
    }
    Ok(file.script)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::trivial_model;

    #[test]
    fn roundtrip_bit_exact() {
        let d = trivial_model(2, 1, 0, 0).unwrap();
        let dir = std::env::temp_dir().join("trisect-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t21.tri");
        save_diagram(&d, &path).unwrap();
        let loaded = load_diagram(&path).unwrap();
        assert_eq!(d.map, loaded.map);
        assert_eq!(d.kind, loaded.kind);
        // saving again produces identical bytes
        let path2 = dir.join("t21b.tri");
        save_diagram(&loaded, &path2).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            std::fs::read_to_string(&path2).unwrap()
        );
    }

    #[test]
    fn truncated_file_is_parse_error() {
        let dir = std::env::temp_dir().join("trisect-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("broken.tri");
        std::fs::write(&path, "{\"format_version\": 1, \"kind\": ").unwrap();
        let err = load_diagram(&path).unwrap_err();
        assert!(matches!(err, Error::ParseError(_)));
    }

    #[test]
    fn version_guard() {
        let d = trivial_model(1, 0, 0, 0).unwrap();
        let mut f = DiagramFile::from_diagram(&d);
        f.format_version = 99;
        let err = f.into_diagram().unwrap_err();
        assert!(matches!(err, Error::VersionUnsupported(99)));
    }
}
