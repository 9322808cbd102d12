//! Plain-text point-set files: one point per line, three whitespace-separated
//! decimal coordinates, `#` starts a comment. Points must lie on the unit
//! sphere within 1e-9.

use std::fmt::Write as _;
use std::path::Path;

use crate::designs::SPHERE_TOL;
use crate::error::{Error, Result};
use crate::geometry::Vec3;

/// Parses point-set text. `origin` names the source in error messages.
pub fn parse(text: &str, origin: &str) -> Result<Vec<Vec3>> {
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::PointFile {
                path: origin.to_string(),
                line: lineno + 1,
                message: format!("expected 3 coordinates, found {}", fields.len()),
            });
        }
        let mut coords = [0.0f64; 3];
        for (slot, field) in coords.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| Error::PointFile {
                path: origin.to_string(),
                line: lineno + 1,
                message: format!("not a number: {field:?}"),
            })?;
        }
        let p = Vec3::new(coords[0], coords[1], coords[2]);
        let norm = p.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > SPHERE_TOL {
            return Err(Error::PointFile {
                path: origin.to_string(),
                line: lineno + 1,
                message: format!("point is off the unit sphere (|p| = {norm})"),
            });
        }
        points.push(p);
    }
    Ok(points)
}

pub fn read(path: &Path) -> Result<Vec<Vec3>> {
    let text = std::fs::read_to_string(path)?;
    parse(&text, &path.display().to_string())
}

/// Serializes points at full round-trip precision.
pub fn to_string(points: &[Vec3]) -> String {
    let mut s = String::new();
    for p in points {
        writeln!(s, "{} {} {}", p.x, p.y, p.z).unwrap();
    }
    s
}
