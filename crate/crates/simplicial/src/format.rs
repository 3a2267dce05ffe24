//! Line-oriented text formats for simplicial sets, ordered simplicial
//! complexes, and maps between them.
//!
//! Writers are canonical: records are sorted, newline-terminated, UTF-8.
//! Loading a written document reproduces the value exactly, and re-saving
//! is byte-identical. Complex files list maximal simplices and a transitive
//! reduction of the order; the loader closes both again.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::delta::MonotoneMap;
use crate::osc::{OscComplex, OscError, OscMap};
use crate::sset::{DegenerateTerm, FiniteSimplicialSet, GenId, MapError, SimplicialMap};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("expected a `{expected}` document, found `{found}`")]
    WrongKind { expected: String, found: String },
    #[error("document does not validate:\n{0}")]
    InvalidDocument(String),
    #[error("name `{0}` contains whitespace and cannot be serialized")]
    UnserializableName(String),
    #[error("map file needs `{0}` header")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Osc(#[from] OscError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Sset(#[from] crate::sset::SsetError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

fn check_name(name: &str) -> Result<(), FormatError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace()) {
        Err(FormatError::UnserializableName(name.to_owned()))
    } else {
        Ok(())
    }
}

fn render_surjection(m: &MonotoneMap) -> String {
    m.values()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_surjection(line: usize, token: &str, codomain: usize) -> Result<MonotoneMap, FormatError> {
    let values = token
        .split(',')
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| err(line, format!("bad operator value `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    MonotoneMap::new(codomain, values).map_err(|e| err(line, e.to_string()))
}

/// Canonical text form of a presentation.
pub fn write_sset(space: &FiniteSimplicialSet) -> Result<String, FormatError> {
    let mut out = String::from("sset\n");
    let mut gens: Vec<(usize, &GenId)> = space.generators().map(|(g, d)| (d, g)).collect();
    gens.sort();
    for (d, g) in &gens {
        check_name(g.as_str())?;
        writeln!(out, "generator {g} {d}").expect("string write");
    }
    for (d, g) in &gens {
        if *d == 0 {
            continue;
        }
        for (i, t) in space.faces_of(g).expect("known").iter().enumerate() {
            check_name(t.generator.as_str())?;
            writeln!(
                out,
                "face {g} {i} {} {}",
                render_surjection(&t.surjection),
                t.generator
            )
            .expect("string write");
        }
    }
    for (_, g) in &gens {
        if let Some(coords) = space.coords(g) {
            let rendered: Vec<String> = coords.iter().map(|c| format!("{c:.9}")).collect();
            writeln!(out, "coord {g} {}", rendered.join(" ")).expect("string write");
        }
    }
    Ok(out)
}

/// Parses the `sset` format; the result is validated.
pub fn read_sset(text: &str) -> Result<FiniteSimplicialSet, FormatError> {
    let mut lines = text.lines().enumerate();
    let kind = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break l.trim().to_owned(),
            None => return Err(err(0, "empty document")),
        }
    };
    if kind != "sset" {
        return Err(FormatError::WrongKind {
            expected: "sset".into(),
            found: kind,
        });
    }
    let mut dims: BTreeMap<GenId, usize> = BTreeMap::new();
    let mut faces: BTreeMap<GenId, Vec<Option<DegenerateTerm>>> = BTreeMap::new();
    let mut coords: Vec<(GenId, Vec<f64>)> = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "generator" => {
                if tokens.len() != 3 {
                    return Err(err(line_no, "generator takes <name> <dim>"));
                }
                let name = GenId::from(tokens[1]);
                let dim: usize = tokens[2]
                    .parse()
                    .map_err(|_| err(line_no, "bad dimension"))?;
                if dims.insert(name.clone(), dim).is_some() {
                    return Err(err(line_no, format!("duplicate generator `{name}`")));
                }
                faces.insert(name, vec![None; if dim == 0 { 0 } else { dim + 1 }]);
            }
            "face" => {
                if tokens.len() != 5 {
                    return Err(err(line_no, "face takes <gen> <index> <operator> <target>"));
                }
                let gen = GenId::from(tokens[1]);
                let index: usize = tokens[2].parse().map_err(|_| err(line_no, "bad index"))?;
                let target = GenId::from(tokens[4]);
                let target_dim = *dims
                    .get(&target)
                    .ok_or_else(|| err(line_no, format!("unknown face target `{target}`")))?;
                let surjection = parse_surjection(line_no, tokens[3], target_dim)?;
                let slot = faces
                    .get_mut(&gen)
                    .ok_or_else(|| err(line_no, format!("unknown generator `{gen}`")))?
                    .get_mut(index)
                    .ok_or_else(|| err(line_no, "face index out of range"))?;
                if slot.is_some() {
                    return Err(err(line_no, "duplicate face record"));
                }
                *slot = Some(DegenerateTerm {
                    surjection,
                    generator: target,
                });
            }
            "coord" => {
                if tokens.len() < 3 {
                    return Err(err(line_no, "coord takes <gen> <values...>"));
                }
                let gen = GenId::from(tokens[1]);
                let values = tokens[2..]
                    .iter()
                    .map(|t| t.parse::<f64>().map_err(|_| err(line_no, "bad coordinate")))
                    .collect::<Result<Vec<_>, _>>()?;
                coords.push((gen, values));
            }
            other => return Err(err(line_no, format!("unknown record `{other}`"))),
        }
    }
    let mut space = FiniteSimplicialSet::new();
    let mut ordered: Vec<(usize, GenId)> = dims.iter().map(|(g, &d)| (d, g.clone())).collect();
    ordered.sort();
    for (d, g) in ordered {
        if d == 0 {
            space.add_vertex(g)?;
        } else {
            let recorded = faces.remove(&g).expect("tracked");
            let mut complete = Vec::with_capacity(recorded.len());
            for (i, slot) in recorded.into_iter().enumerate() {
                complete.push(slot.ok_or_else(|| {
                    err(0, format!("generator `{g}` is missing face {i}"))
                })?);
            }
            space.add_generator(g, complete)?;
        }
    }
    for (g, values) in coords {
        space.set_coords(&g, values)?;
    }
    let report = space.validate();
    if !report.is_ok() {
        return Err(FormatError::InvalidDocument(report.to_string()));
    }
    Ok(space)
}

/// Canonical text form of an ordered simplicial complex: all vertices,
/// maximal simplices, and a transitive reduction of the order.
pub fn write_osc(complex: &OscComplex) -> Result<String, FormatError> {
    let mut out = String::from("osc\n");
    for v in complex.vertices() {
        check_name(v)?;
        writeln!(out, "vertex {v}").expect("string write");
    }
    let mut maximal: Vec<Vec<String>> = complex
        .maximal_simplices()
        .into_iter()
        .filter(|s| s.len() > 1)
        .map(|s| s.iter().cloned().collect())
        .collect();
    maximal.sort();
    for s in maximal {
        writeln!(out, "simplex {}", s.join(" ")).expect("string write");
    }
    let strict = complex.strict_pairs();
    let mut reduced: Vec<(String, String)> = strict
        .iter()
        .filter(|(a, b)| {
            !strict
                .iter()
                .any(|(x, y)| x == a && strict.contains(&(y.clone(), b.clone())))
        })
        .cloned()
        .collect();
    reduced.sort();
    for (a, b) in reduced {
        writeln!(out, "order {a} {b}").expect("string write");
    }
    Ok(out)
}

/// Parses the `osc` format, closing simplices downward and the order
/// transitively.
pub fn read_osc(text: &str) -> Result<OscComplex, FormatError> {
    let mut lines = text.lines().enumerate();
    let kind = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break l.trim().to_owned(),
            None => return Err(err(0, "empty document")),
        }
    };
    if kind != "osc" {
        return Err(FormatError::WrongKind {
            expected: "osc".into(),
            found: kind,
        });
    }
    let mut vertices: Vec<String> = Vec::new();
    let mut simplices: Vec<BTreeSet<String>> = Vec::new();
    let mut order: Vec<(String, String)> = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(err(line_no, "vertex takes <name>"));
                }
                vertices.push(tokens[1].to_owned());
            }
            "simplex" => {
                if tokens.len() < 2 {
                    return Err(err(line_no, "simplex takes <vertices...>"));
                }
                simplices.push(tokens[1..].iter().map(|t| (*t).to_owned()).collect());
            }
            "order" => {
                if tokens.len() != 3 {
                    return Err(err(line_no, "order takes <a> <b>"));
                }
                order.push((tokens[1].to_owned(), tokens[2].to_owned()));
            }
            other => return Err(err(line_no, format!("unknown record `{other}`"))),
        }
    }
    Ok(OscComplex::assemble(vertices, simplices, order)?)
}

/// Canonical text form of a simplicial map; the endpoints are referenced by
/// path.
pub fn write_smap(
    map: &SimplicialMap,
    source_path: &str,
    target_path: &str,
) -> Result<String, FormatError> {
    let mut out = String::from("smap\n");
    writeln!(out, "source {source_path}").expect("string write");
    writeln!(out, "target {target_path}").expect("string write");
    for (g, t) in map.assignment() {
        check_name(g.as_str())?;
        check_name(t.generator.as_str())?;
        writeln!(
            out,
            "assign {g} {} {}",
            render_surjection(&t.surjection),
            t.generator
        )
        .expect("string write");
    }
    Ok(out)
}

/// Canonical text form of a complex map.
pub fn write_oscmap(
    map: &OscMap,
    source_path: &str,
    target_path: &str,
) -> Result<String, FormatError> {
    let mut out = String::from("oscmap\n");
    writeln!(out, "source {source_path}").expect("string write");
    writeln!(out, "target {target_path}").expect("string write");
    for (v, w) in map.vertex_map() {
        check_name(v)?;
        check_name(w)?;
        writeln!(out, "vassign {v} {w}").expect("string write");
    }
    Ok(out)
}

/// Parsed body of a map document, before the endpoint documents are loaded.
pub struct MapDocument {
    pub kind: String,
    pub source_path: String,
    pub target_path: String,
    pub assignments: Vec<(String, Option<String>, String)>,
}

pub fn read_map_document(text: &str) -> Result<MapDocument, FormatError> {
    let mut lines = text.lines().enumerate();
    let kind = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break l.trim().to_owned(),
            None => return Err(err(0, "empty document")),
        }
    };
    if kind != "smap" && kind != "oscmap" {
        return Err(FormatError::WrongKind {
            expected: "smap|oscmap".into(),
            found: kind,
        });
    }
    let mut source_path = None;
    let mut target_path = None;
    let mut assignments = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "source" if tokens.len() == 2 => source_path = Some(tokens[1].to_owned()),
            "target" if tokens.len() == 2 => target_path = Some(tokens[1].to_owned()),
            "assign" if tokens.len() == 4 => assignments.push((
                tokens[1].to_owned(),
                Some(tokens[2].to_owned()),
                tokens[3].to_owned(),
            )),
            "vassign" if tokens.len() == 3 => {
                assignments.push((tokens[1].to_owned(), None, tokens[2].to_owned()))
            }
            other => return Err(err(line_no, format!("bad record `{other}`"))),
        }
    }
    Ok(MapDocument {
        kind,
        source_path: source_path.ok_or(FormatError::MissingHeader("source"))?,
        target_path: target_path.ok_or(FormatError::MissingHeader("target"))?,
        assignments,
    })
}

/// Assembles a simplicial map from a parsed document and its loaded
/// endpoints. Vertex-only documents are lifted through the unique-simplex
/// structure of the target.
pub fn assemble_smap(
    doc: &MapDocument,
    source: FiniteSimplicialSet,
    target: FiniteSimplicialSet,
) -> Result<SimplicialMap, FormatError> {
    let full: bool = doc.assignments.iter().any(|(_, op, _)| op.is_some());
    if full {
        let mut assignment = BTreeMap::new();
        for (g, op, t) in &doc.assignments {
            let gen = GenId::from(g.as_str());
            let target_gen = GenId::from(t.as_str());
            let target_dim = target.dim_of(&target_gen)?;
            let surjection = match op {
                Some(tok) => parse_surjection(0, tok, target_dim)?,
                None => MonotoneMap::identity(target_dim),
            };
            assignment.insert(
                gen,
                DegenerateTerm {
                    surjection,
                    generator: target_gen,
                },
            );
        }
        Ok(SimplicialMap::new(source, target, assignment)?)
    } else {
        let vm: BTreeMap<GenId, GenId> = doc
            .assignments
            .iter()
            .map(|(v, _, w)| (GenId::from(v.as_str()), GenId::from(w.as_str())))
            .collect();
        Ok(SimplicialMap::from_vertex_map(&source, &target, &vm)?)
    }
}

pub fn assemble_oscmap(
    doc: &MapDocument,
    source: OscComplex,
    target: OscComplex,
) -> Result<OscMap, FormatError> {
    let vertex_map: BTreeMap<String, String> = doc
        .assignments
        .iter()
        .map(|(v, _, w)| (v.clone(), w.clone()))
        .collect();
    Ok(OscMap::new(source, target, vertex_map)?)
}

/// Loads a map document from disk, resolving its endpoint paths relative to
/// the document's directory.
pub fn load_smap_from_path(path: &std::path::Path) -> Result<SimplicialMap, FormatError> {
    let text = std::fs::read_to_string(path)?;
    let doc = read_map_document(&text)?;
    if doc.kind != "smap" {
        return Err(FormatError::WrongKind {
            expected: "smap".into(),
            found: doc.kind,
        });
    }
    let base = path.parent().unwrap_or_else(|| std::path::Path::new("."));
    let source = read_sset(&std::fs::read_to_string(base.join(&doc.source_path))?)?;
    let target = read_sset(&std::fs::read_to_string(base.join(&doc.target_path))?)?;
    assemble_smap(&doc, source, target)
}

pub fn load_oscmap_from_path(path: &std::path::Path) -> Result<OscMap, FormatError> {
    let text = std::fs::read_to_string(path)?;
    let doc = read_map_document(&text)?;
    if doc.kind != "oscmap" {
        return Err(FormatError::WrongKind {
            expected: "oscmap".into(),
            found: doc.kind,
        });
    }
    let base = path.parent().unwrap_or_else(|| std::path::Path::new("."));
    let source = read_osc(&std::fs::read_to_string(base.join(&doc.source_path))?)?;
    let target = read_osc(&std::fs::read_to_string(base.join(&doc.target_path))?)?;
    assemble_oscmap(&doc, source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;

    #[test]
    fn sset_roundtrip_is_byte_stable() {
        for x in [
            delta(2),
            delta_with_coords(2).unwrap(),
            circle(),
            parallel_pair(2),
            crate::subdivision::sd(&delta(2)).unwrap().space,
        ] {
            let text = write_sset(&x).unwrap();
            let back = read_sset(&text).unwrap();
            assert_eq!(back, x);
            assert_eq!(write_sset(&back).unwrap(), text);
        }
    }

    #[test]
    fn sset_rejects_broken_documents() {
        assert!(read_sset("nonsense\n").is_err());
        assert!(read_sset("sset\ngenerator e 1\n").is_err(), "missing faces");
        let wrong_identity = "sset\n\
            generator p 0\ngenerator q 0\ngenerator r 0\n\
            generator pq 1\ngenerator qr 1\ngenerator pr 1\ngenerator t 2\n\
            face pq 0 0 q\nface pq 1 0 p\n\
            face qr 0 0 r\nface qr 1 0 q\n\
            face pr 0 0 r\nface pr 1 0 p\n\
            face t 0 0,1 pq\nface t 1 0,1 pr\nface t 2 0,1 qr\n";
        assert!(matches!(
            read_sset(wrong_identity),
            Err(FormatError::InvalidDocument(_))
        ));
    }

    #[test]
    fn osc_roundtrip_is_byte_stable() {
        let y = OscComplex::assemble(
            ["z".into()],
            [
                BTreeSet::from(["a".into(), "b".into(), "c".into()]),
                BTreeSet::from(["c".into(), "d".into()]),
            ],
            [
                ("a".into(), "b".into()),
                ("b".into(), "c".into()),
                ("c".into(), "d".into()),
            ],
        )
        .unwrap();
        let text = write_osc(&y).unwrap();
        let back = read_osc(&text).unwrap();
        assert_eq!(back, y);
        assert_eq!(write_osc(&back).unwrap(), text);
        // the stored form is small: closure is not written out
        assert!(!text.contains("order a c"));
    }

    #[test]
    fn smap_roundtrip() {
        let f = crate::reflectors::family_f(1);
        let text = write_smap(&f, "pp.sset", "d1.sset").unwrap();
        let doc = read_map_document(&text).unwrap();
        assert_eq!(doc.kind, "smap");
        let rebuilt = assemble_smap(&doc, f.source().clone(), f.target().clone()).unwrap();
        assert_eq!(rebuilt.assignment(), f.assignment());
    }

    #[test]
    fn vertex_map_documents_lift() {
        let text = "smap\nsource a.sset\ntarget b.sset\nvassign 0 1\nvassign 1 2\n";
        let doc = read_map_document(text).unwrap();
        let map = assemble_smap(&doc, delta(1), delta(2)).unwrap();
        assert!(map.image_of(&GenId::from("01")).unwrap().is_nondegenerate());
        assert_eq!(
            map.image_of(&GenId::from("01")).unwrap().generator,
            GenId::from("12")
        );
    }
}
