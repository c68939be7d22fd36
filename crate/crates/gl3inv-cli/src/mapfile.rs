//! JSON input format for polynomial maps `(x, y) ↦ (u1, u2)`.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "order": 2,
//!   "u1": [[[1, 0], [1.0, 0.0]], [[0, 2], [0.3, 0.0]]],
//!   "u2": [[[0, 1], [1.0, 0.0]], [[1, 1], [0.0, -0.2]]]
//! }
//! ```
//!
//! Each component lists `[exponents, [re, im]]` terms; repeated exponent
//! tuples are summed.

use gl3inv::derivs::MapJet2;
use gl3inv::jets::{MultiIndex, Polynomial};
use gl3inv::lft::Point;
use gl3inv::sampling::PolyMap2;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapInput {
    pub dim: usize,
    /// Jet order used for evaluation; at least 2.
    #[serde(default = "default_order")]
    pub order: usize,
    pub u1: Vec<(Vec<u8>, [f64; 2])>,
    pub u2: Vec<(Vec<u8>, [f64; 2])>,
}

fn default_order() -> usize {
    2
}

impl MapInput {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let m: MapInput = serde_json::from_str(text)?;
        if m.dim != 2 {
            return Err(CliError::Usage(format!("map dim must be 2, got {}", m.dim)));
        }
        if !(2..=6).contains(&m.order) {
            return Err(CliError::Usage(format!(
                "map order must lie in 2..=6, got {}",
                m.order
            )));
        }
        for (exps, _) in m.u1.iter().chain(&m.u2) {
            if exps.len() != m.dim {
                return Err(CliError::Usage(format!(
                    "exponent tuple {exps:?} does not have {} entries",
                    m.dim
                )));
            }
        }
        Ok(m)
    }

    fn component(&self, terms: &[(Vec<u8>, [f64; 2])]) -> Polynomial {
        let terms = terms
            .iter()
            .map(|(e, c)| (MultiIndex::new(e), Complex64::new(c[0], c[1])))
            .collect();
        Polynomial::new(self.dim, terms)
    }

    pub fn to_map(&self) -> PolyMap2 {
        PolyMap2 {
            p1: self.component(&self.u1),
            p2: self.component(&self.u2),
        }
    }

    pub fn jets_at(&self, z: Point) -> MapJet2 {
        self.to_map().jets(z, self.order)
    }
}
