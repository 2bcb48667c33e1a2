//! Custom-state documents: a JSON array of [re, im] amplitude pairs, atom 1
//! as the most significant bit of the position index. The loader normalizes
//! whatever it reads and rejects the zero vector.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::PureState;

/// A parsed custom state plus the norm the document had before
/// normalization, so callers can report silent rescaling.
#[derive(Debug, Clone)]
pub struct LoadedState {
    pub state: PureState,
    pub original_norm: f64,
}

impl LoadedState {
    /// Whether the document needed more than a rounding-level rescale.
    pub fn was_renormalized(&self) -> bool {
        (self.original_norm - 1.0).abs() > 1e-12
    }
}

/// Parse a state document. Parse errors carry serde's line/column location.
pub fn parse_state_text(text: &str) -> Result<LoadedState> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)
        .map_err(|e| Error::StateFile(format!("malformed amplitude list: {e}")))?;
    let amplitudes: Vec<Complex64> = pairs
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    if amplitudes.len() < 2 || !amplitudes.len().is_power_of_two() {
        return Err(Error::StateFile(format!(
            "expected 2^N amplitude pairs, got {}",
            amplitudes.len()
        )));
    }
    let original_norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let state = PureState::normalized(amplitudes)
        .map_err(|e| Error::StateFile(e.to_string()))?;
    Ok(LoadedState { state, original_norm })
}

/// Read and parse a state document from disk.
pub fn load_state_file(path: &Path) -> Result<LoadedState> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))?;
    parse_state_text(&text)
}
