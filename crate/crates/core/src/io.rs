//! Polygon, gradient-field, report and trace serialization.
//!
//! * polygon JSON: `{"vertices": [[x, y], ...]}`
//! * polygon CSV: one `x,y` line per vertex, no header
//! * trace CSV: header `iter,perimeter,area,residual_relative,lambda_hat,step_len,edge_cv,angle_cv`
//!
//! Numbers are written in shortest round-trip form, so reading a file back
//! reproduces every coordinate bit for bit.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Point2, Polygon};
use crate::optimizer::IterationRecord;
use crate::{Error, Result, Scalar};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Invalid {
        path: PathBuf,
        #[source]
        source: Error,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
struct PolygonDoc<T> {
    vertices: Vec<Point2<T>>,
}

pub fn polygon_to_json<T: Scalar>(p: &Polygon<T>) -> String {
    let doc = PolygonDoc {
        vertices: p.vertices().to_vec(),
    };
    let mut s = serde_json::to_string(&doc).expect("finite coordinates serialize");
    s.push('\n');
    s
}

/// Parses and validates; the result is normalized to CCW.
pub fn polygon_from_json<T: Scalar>(s: &str) -> Result<Polygon<T>> {
    let doc: PolygonDoc<T> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    Polygon::new(doc.vertices)
}

pub fn polygon_to_csv<T: Scalar>(p: &Polygon<T>) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for v in p.vertices() {
        w.serialize((v.x, v.y)).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

pub fn polygon_from_csv<T: Scalar>(s: &str) -> Result<Polygon<T>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(s.as_bytes());
    let vertices = r
        .deserialize::<(T, T)>()
        .map(|row| row.map(|(x, y)| Point2::new(x, y)))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(e.to_string()))?;
    Polygon::new(vertices)
}

/// Polygon file formats, chosen by extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonFormat {
    Json,
    Csv,
}

impl PolygonFormat {
    /// `.csv` selects CSV; anything else is JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => PolygonFormat::Csv,
            _ => PolygonFormat::Json,
        }
    }
}

pub fn read_polygon<T: Scalar>(path: &Path) -> std::result::Result<Polygon<T>, FileError> {
    let text = read_text(path)?;
    let parsed = match PolygonFormat::from_path(path) {
        PolygonFormat::Json => polygon_from_json(&text),
        PolygonFormat::Csv => polygon_from_csv(&text),
    };
    parsed.map_err(|source| FileError::Invalid {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_polygon<T: Scalar>(path: &Path, p: &Polygon<T>) -> std::result::Result<(), FileError> {
    let text = match PolygonFormat::from_path(path) {
        PolygonFormat::Json => polygon_to_json(p),
        PolygonFormat::Csv => polygon_to_csv(p),
    };
    write_text(path, &text)
}

pub fn trace_to_csv<T: Scalar>(trace: &[IterationRecord<T>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for rec in trace {
        w.serialize(rec).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

pub fn trace_from_csv<T: Scalar>(s: &str) -> Result<Vec<IterationRecord<T>>> {
    csv::Reader::from_reader(s.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

pub fn read_text(path: &Path) -> std::result::Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> std::result::Result<(), FileError> {
    fs::write(path, text).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn square() -> Polygon<f64> {
        Polygon::from_xy(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]).unwrap()
    }

    #[test]
    fn json_layout() {
        assert_eq!(
            polygon_to_json(&square()),
            "{\"vertices\":[[0.0,0.0],[1.0,0.0],[1.0,1.0],[0.0,1.0]]}\n"
        );
        assert_eq!(polygon_to_csv(&square()), "0.0,0.0\n1.0,0.0\n1.0,1.0\n0.0,1.0\n");
    }

    #[test]
    fn csv_accepts_integers_and_spaces() {
        let p: Polygon<f64> = polygon_from_csv("0,0\n1, 0\n1,1\n0,1\n").unwrap();
        assert_eq!(p, square());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(polygon_from_json::<f64>("{\"vertices\": 3}"), Err(Error::Parse(_))));
        assert!(matches!(polygon_from_csv::<f64>("0,0\n1,x\n"), Err(Error::Parse(_))));
        assert_eq!(
            polygon_from_json::<f64>("{\"vertices\": [[0,0],[1,1]]}").unwrap_err(),
            Error::TooFewVertices(2)
        );
    }

    #[test]
    fn file_errors_carry_path() {
        let err = read_polygon::<f64>(Path::new("/nonexistent/poly.json")).unwrap_err();
        assert!(matches!(err, FileError::Io { .. }));
        assert!(err.to_string().contains("/nonexistent/poly.json"));
    }

    #[test]
    fn trace_header() {
        let rec = IterationRecord {
            iter: 3,
            perimeter: 4.0,
            area: 1.0,
            residual_relative: 1e-9,
            lambda_hat: 2.0,
            step_len: 0.025,
            edge_cv: 0.0,
            angle_cv: 0.0,
        };
        let csv = trace_to_csv(&[rec]);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("iter,perimeter,area,residual_relative,lambda_hat,step_len,edge_cv,angle_cv")
        );
        assert_eq!(trace_from_csv::<f64>(&csv).unwrap(), vec![rec]);
    }

    proptest! {
        #[test]
        fn json_and_csv_round_trip_exactly(
            coords in proptest::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 3..12)
        ) {
            let verts: Vec<_> = coords.iter().map(|&(x, y)| Point2::new(x, y)).collect();
            let Ok(p) = Polygon::with_orientation(verts) else { return Ok(()); };
            // compare raw vertex order: readers normalize orientation
            let p = Polygon::new(p.into_vertices()).unwrap();
            let j: Polygon<f64> = polygon_from_json(&polygon_to_json(&p)).unwrap();
            let c: Polygon<f64> = polygon_from_csv(&polygon_to_csv(&p)).unwrap();
            prop_assert_eq!(j.vertices(), p.vertices());
            prop_assert_eq!(c.vertices(), p.vertices());
        }
    }
}
