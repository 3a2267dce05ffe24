//! Geometry exports: OFF meshes from coordinatized presentations and dot
//! digraphs of 1-skeletons.

use std::fmt::Write as _;

use thiserror::Error;

use crate::sset::{FiniteSimplicialSet, GenId};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("OFF export is limited to dimension 3, object has dimension {0}")]
    DimensionTooHigh(usize),
    #[error("vertex `{0}` has no coordinates")]
    MissingCoordinates(GenId),
    #[error("vertex `{0}` has {1} coordinates, at most 3 supported")]
    TooManyCoordinates(GenId, usize),
}

/// OFF mesh of the 2-skeleton: one face line per nondegenerate 2-simplex.
/// Requires coordinates on every vertex and total dimension at most 3.
pub fn write_off(space: &FiniteSimplicialSet) -> Result<String, ExportError> {
    if space.dim() > 3 {
        return Err(ExportError::DimensionTooHigh(space.dim()));
    }
    let vertices = space.vertex_ids();
    let mut positions = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let coords = space
            .coords(v)
            .ok_or_else(|| ExportError::MissingCoordinates(v.clone()))?;
        if coords.len() > 3 {
            return Err(ExportError::TooManyCoordinates(v.clone(), coords.len()));
        }
        let mut xyz = [0.0f64; 3];
        xyz[..coords.len()].copy_from_slice(coords);
        positions.push(xyz);
    }
    let index_of = |v: &GenId| vertices.iter().position(|w| w == v).expect("vertex listed");
    let mut faces = Vec::new();
    for t in space.generators_of_dim(2) {
        let vs = space.vertices_of(t).expect("valid");
        faces.push([index_of(&vs[0]), index_of(&vs[1]), index_of(&vs[2])]);
    }
    faces.sort();
    let mut out = String::from("OFF\n");
    writeln!(out, "{} {} 0", vertices.len(), faces.len()).expect("string write");
    for xyz in &positions {
        writeln!(out, "{:.9} {:.9} {:.9}", xyz[0], xyz[1], xyz[2]).expect("string write");
    }
    for f in &faces {
        writeln!(out, "3 {} {} {}", f[0], f[1], f[2]).expect("string write");
    }
    Ok(out)
}

/// Directed graph of the 1-skeleton, one arc per nondegenerate 1-simplex.
pub fn write_dot(space: &FiniteSimplicialSet) -> String {
    let mut out = String::from("digraph sset {\n");
    for v in space.vertex_ids() {
        writeln!(out, "  \"{v}\";").expect("string write");
    }
    let mut arcs = space.edge_arcs();
    arcs.sort();
    for (e, s, t) in arcs {
        writeln!(out, "  \"{s}\" -> \"{t}\" [label=\"{e}\"];").expect("string write");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;

    #[test]
    fn off_of_coordinatized_triangle() {
        let d = delta_with_coords(2).unwrap();
        let off = write_off(&d).unwrap();
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "3 1 0");
        assert_eq!(lines[2], "0.000000000 0.000000000 0.000000000");
        assert_eq!(lines[5], "3 0 1 2");
    }

    #[test]
    fn off_needs_coordinates() {
        assert!(matches!(
            write_off(&delta(2)),
            Err(ExportError::MissingCoordinates(_))
        ));
    }

    #[test]
    fn dot_lists_arcs() {
        let dot = write_dot(&three_cycle());
        assert!(dot.contains("\"a\" -> \"b\" [label=\"ab\"];"));
        assert!(dot.contains("\"c\" -> \"a\" [label=\"ca\"];"));
    }
}
