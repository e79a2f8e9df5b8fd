//! Polyline files.
//!
//! JSON: `{"dim": n, "points": [[x1,…,xn], …], "params": [u0, …]}` with
//! `params` optional (uniform when absent). CSV: one point per row, no
//! header, uniform parameters; lines starting with `#` are skipped.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Curve, Point, Polyline};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolylineFile {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
}

impl PolylineFile {
    pub fn from_polyline(p: &Polyline) -> Self {
        PolylineFile {
            dim: p.dim(),
            points: p.points().iter().map(|q| q.coords().to_vec()).collect(),
            params: Some(p.params().to_vec()),
        }
    }

    pub fn into_curve(self, source_name: &str) -> Result<Curve> {
        let err = |location: String, message: String| Error::Format {
            source_name: source_name.to_string(),
            location,
            message,
        };
        if self.dim == 0 {
            return Err(err("dim".into(), "must be at least 1".into()));
        }
        if self.points.len() < 2 {
            return Err(err("points".into(), "need at least 2 points".into()));
        }
        let mut points = Vec::with_capacity(self.points.len());
        for (j, coords) in self.points.into_iter().enumerate() {
            if coords.len() != self.dim {
                return Err(err(
                    format!("points[{j}]"),
                    format!("expected {} coordinates, found {}", self.dim, coords.len()),
                ));
            }
            points
                .push(Point::new(coords).map_err(|e| err(format!("points[{j}]"), e.to_string()))?);
        }
        Polyline::new(points, self.params)
            .map(Curve::from)
            .map_err(|e| err("params".into(), e.to_string()))
    }
}

pub fn parse_polyline_json(text: &str, source_name: &str) -> Result<Curve> {
    let file: PolylineFile = serde_json::from_str(text).map_err(|e| Error::Format {
        source_name: source_name.to_string(),
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    file.into_curve(source_name)
}

pub fn parse_polyline_csv(text: &str, source_name: &str) -> Result<Curve> {
    let err = |location: String, message: String| Error::Format {
        source_name: source_name.to_string(),
        location,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    let mut dim = None;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            err(format!("line {line}"), e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let coords = record
            .iter()
            .enumerate()
            .map(|(k, field)| {
                field.parse::<f64>().map_err(|_| {
                    err(
                        format!("line {line}, field {}", k + 1),
                        format!("invalid number `{field}`"),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match dim {
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(err(
                    format!("line {line}"),
                    format!("expected {d} fields, found {}", coords.len()),
                ))
            }
            _ => {}
        }
        points.push(Point::new(coords).map_err(|e| err(format!("line {line}"), e.to_string()))?);
    }
    if points.len() < 2 {
        return Err(err("file".into(), "need at least 2 points".into()));
    }
    Ok(Polyline::new(points, None)?.into())
}

/// Loads a polyline from `path`; `.csv` files use the CSV layout, anything
/// else is read as JSON.
pub fn read_polyline(path: impl AsRef<Path>) -> Result<Curve> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let name = path.display().to_string();
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        parse_polyline_csv(&text, &name)
    } else {
        parse_polyline_json(&text, &name)
    }
}
