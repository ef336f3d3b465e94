//! JSON exchange format for intervals: `{"n": 6, "faces": [[1,2,4,5,6], ...]}`
//! with faces in canonical order and the empty face written `[]`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::interval::Interval;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalDoc {
    n: usize,
    faces: Vec<Vec<usize>>,
}

pub fn interval_to_json(phi: &Interval) -> Value {
    let doc = IntervalDoc { n: phi.ground_size(), faces: phi.faces().map(Face::to_vec).collect() };
    serde_json::to_value(doc).expect("serializable")
}

pub fn interval_from_json(value: &Value) -> Result<Interval> {
    let doc: IntervalDoc =
        serde_json::from_value(value.clone()).map_err(|e| Error::Malformed(format!("interval JSON: {e}")))?;
    let mut faces = Vec::with_capacity(doc.faces.len());
    for list in doc.faces {
        let face = Face::from_vertices(list.iter().copied())
            .ok_or_else(|| Error::Malformed(format!("face {list:?} has a vertex outside 1..=63")))?;
        if face.len() != list.len() {
            return Err(Error::Malformed(format!("face {list:?} repeats a vertex")));
        }
        faces.push(face);
    }
    Interval::new(doc.n, faces)
}

pub fn interval_from_str(text: &str) -> Result<Interval> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("JSON: {e}")))?;
    interval_from_json(&value)
}
