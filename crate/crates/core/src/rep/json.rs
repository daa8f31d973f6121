use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, Mat};
use crate::quiver::{DimVector, Quiver};

use super::{Morphism, Rep, RepError};

/// Wire form of a representation. Scalars are strings (`"p/q"` or residues).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    #[serde(default = "one")]
    pub v: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<Quiver>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub mats: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismJson {
    #[serde(default = "one")]
    pub v: u32,
    pub comps: BTreeMap<String, Vec<Vec<String>>>,
}

fn one() -> u32 {
    1
}

fn mat_to_strings(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

fn mat_from_strings(field: Field, rows: usize, cols: usize, data: &[Vec<String>], what: &str) -> Result<Mat, RepError> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(RepError::Json(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let mut m = Mat::zeros(field, rows, cols);
    for (i, row) in data.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, field.parse(s)?);
        }
    }
    Ok(m)
}

impl Rep {
    pub fn to_json(&self, embed_quiver: bool) -> RepJson {
        let q = self.quiver();
        RepJson {
            v: 1,
            quiver: embed_quiver.then(|| (**q).clone()),
            field: embed_quiver.then_some(self.field()),
            dims: (0..q.vertex_count())
                .map(|x| (q.vertex_id(x).to_string(), self.dim_at(x)))
                .collect(),
            mats: q
                .arrows()
                .iter()
                .enumerate()
                .map(|(a, arr)| (arr.id.clone(), mat_to_strings(self.arrow_map(a))))
                .collect(),
        }
    }

    /// Rebuilds a representation. An embedded quiver or field overrides the
    /// fallbacks; missing vertices have dimension 0 and missing arrows act by 0.
    pub fn from_json(raw: &RepJson, quiver: Option<Arc<Quiver>>, field: Field) -> Result<Rep, RepError> {
        let quiver = match (&raw.quiver, quiver) {
            (Some(q), Some(given)) if *q == *given => given,
            (Some(q), _) => Arc::new(q.clone()),
            (None, Some(given)) => given,
            (None, None) => return Err(RepError::Json("no quiver given".into())),
        };
        let field = raw.field.unwrap_or(field);
        let mut dims = vec![0; quiver.vertex_count()];
        for (id, &d) in &raw.dims {
            dims[quiver.vertex_index(id)?] = d;
        }
        for id in raw.mats.keys() {
            quiver.arrow_index(id)?;
        }
        let mut mats = Vec::new();
        for arr in quiver.arrows() {
            let (r, c) = (dims[arr.tgt], dims[arr.src]);
            mats.push(match raw.mats.get(&arr.id) {
                Some(data) if !(data.is_empty() && r * c == 0) => {
                    mat_from_strings(field, r, c, data, &format!("arrow {}", arr.id))?
                }
                _ => Mat::zeros(field, r, c),
            });
        }
        Rep::new(quiver, field, DimVector(dims), mats)
    }

    pub fn parse_json(text: &str, quiver: Option<Arc<Quiver>>, field: Field) -> Result<Rep, RepError> {
        let raw: RepJson = serde_json::from_str(text).map_err(|e| RepError::Json(e.to_string()))?;
        Rep::from_json(&raw, quiver, field)
    }
}

impl Morphism {
    pub fn to_json(&self, quiver: &Quiver) -> MorphismJson {
        MorphismJson {
            v: 1,
            comps: self
                .comps()
                .iter()
                .enumerate()
                .map(|(x, m)| (quiver.vertex_id(x).to_string(), mat_to_strings(m)))
                .collect(),
        }
    }

    /// Reads a morphism `source → target` and checks that it commutes.
    pub fn from_json(raw: &MorphismJson, source: &Rep, target: &Rep) -> Result<Morphism, RepError> {
        source.check_compatible(target)?;
        let q = source.quiver();
        for id in raw.comps.keys() {
            q.vertex_index(id)?;
        }
        let comps = (0..q.vertex_count())
            .map(|x| {
                let (r, c) = (target.dim_at(x), source.dim_at(x));
                match raw.comps.get(q.vertex_id(x)) {
                    Some(data) if !(data.is_empty() && r * c == 0) => {
                        mat_from_strings(source.field(), r, c, data, &format!("vertex {}", q.vertex_id(x)))
                    }
                    _ => Ok(Mat::zeros(source.field(), r, c)),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let f = Morphism::new(comps);
        f.check(source, target)?;
        Ok(f)
    }
}
