//! JSON polyomino documents.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::families::{build_frame, build_parallelogram, build_rectangle, FrameSpec, NorthEastPath};
use crate::grid::{Cell, Polyomino};

/// `{"kind": "cells" | "rectangle" | "parallelogram" | "frame", ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PolyominoDocument {
    Cells { cells: Vec<Cell> },
    Rectangle { m: i32, n: i32 },
    Parallelogram { s1: NorthEastPath, s2: NorthEastPath },
    Frame { m: i32, n: i32, s1: NorthEastPath, s2: NorthEastPath },
}

impl PolyominoDocument {
    pub fn parse(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn build(&self) -> Result<Polyomino> {
        match self {
            PolyominoDocument::Cells { cells } => Polyomino::from_cells(cells.iter().copied()),
            PolyominoDocument::Rectangle { m, n } => build_rectangle(*m, *n),
            PolyominoDocument::Parallelogram { s1, s2 } => build_parallelogram(s1, s2),
            PolyominoDocument::Frame { m, n, s1, s2 } => {
                build_frame(&FrameSpec::new(*m, *n, s1.clone(), s2.clone()))
            }
        }
    }

    /// A document that rebuilds `p`, keeping frame metadata.
    pub fn from_polyomino(p: &Polyomino) -> Self {
        match p.frame() {
            Some(spec) => PolyominoDocument::Frame {
                m: spec.m,
                n: spec.n,
                s1: spec.s1.clone(),
                s2: spec.s2.clone(),
            },
            None => PolyominoDocument::Cells { cells: p.cells().iter().copied().collect() },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let frame = r#"{"kind":"frame","m":4,"n":4,"s1":[[2,2],[2,3],[3,3]],"s2":[[2,2],[3,2],[3,3]]}"#;
        let p = PolyominoDocument::parse(frame).unwrap().build().unwrap();
        assert_eq!((p.rank(), p.num_vertices()), (8, 16));
        let cells = r#"{"kind":"cells","cells":[[1,1],[1,2],[2,2]]}"#;
        assert_eq!(PolyominoDocument::parse(cells).unwrap().build().unwrap().rank(), 3);
        let rect = r#"{"kind":"rectangle","m":3,"n":4}"#;
        assert_eq!(PolyominoDocument::parse(rect).unwrap().build().unwrap().rank(), 6);
        let par = r#"{"kind":"parallelogram","s1":[[1,1],[1,2],[2,2]],"s2":[[1,1],[2,1],[2,2]]}"#;
        assert_eq!(PolyominoDocument::parse(par).unwrap().build().unwrap().rank(), 1);
    }

    #[test]
    fn rejects_bad_documents() {
        let err = PolyominoDocument::parse(r#"{"kind":"blob","cells":[]}"#).unwrap_err();
        assert!(err.to_string().contains("blob"), "{err}");
        let err = PolyominoDocument::parse(r#"{"kind":"rectangle","m":3}"#).unwrap_err();
        assert!(err.to_string().contains("`n`"), "{err}");
        let err = PolyominoDocument::parse(r#"{"kind":"rectangle","m":3,"n":3,"cells":[]}"#).unwrap_err();
        assert!(err.to_string().contains("cells"), "{err}");
        let err = PolyominoDocument::parse(r#"{"kind":"parallelogram","s1":[[1,1],[2,2]],"s2":[[1,1]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("unit step"), "{err}");
    }

    #[test]
    fn round_trip() {
        let frame = r#"{"kind":"frame","m":4,"n":4,"s1":[[2,2],[2,3],[3,3]],"s2":[[2,2],[3,2],[3,3]]}"#;
        let p = PolyominoDocument::parse(frame).unwrap().build().unwrap();
        let doc = PolyominoDocument::from_polyomino(&p);
        assert_eq!(doc.to_json(), frame);
        let q = PolyominoDocument::parse(&doc.to_json()).unwrap().build().unwrap();
        assert_eq!(p, q);
    }
}
