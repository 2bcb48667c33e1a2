//! Multi-qubit pure states, the named entangled states under study, and
//! normally-ordered ladder-operator expectation values.
//!
//! Basis convention: atom 1 is the most significant bit of the basis index,
//! so a ket written |b₁b₂…b_N⟩ maps to index Σ bₘ·2^(N−1−m). Atom indices in
//! the public API are 1-based, matching the ket notation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Layout;

/// Unit-norm tolerance for state constructors.
pub const NORM_TOL: f64 = 1e-12;

/// A normalized pure state of `num_atoms` two-level atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_atoms: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wrap an amplitude vector that is already normalized to unit norm
    /// within [`NORM_TOL`]. The length must be a power of two ≥ 2.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_atoms = infer_num_atoms(&amplitudes)?;
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!(
                "state norm is {norm:.17}, expected 1 within {NORM_TOL:e}"
            )));
        }
        Ok(PureState { num_atoms, amplitudes })
    }

    /// Normalize an arbitrary nonzero amplitude vector into a state.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_atoms = infer_num_atoms(&amplitudes)?;
        let norm = l2_norm(&amplitudes);
        if !norm.is_finite() {
            return Err(Error::invalid("state amplitudes must be finite"));
        }
        if norm < NORM_TOL {
            return Err(Error::invalid("cannot normalize the zero vector"));
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(PureState { num_atoms, amplitudes })
    }

    /// The computational basis state |b₁b₂…b_N⟩ for the given binary digits,
    /// atom 1 first (most significant).
    pub fn basis(num_atoms: usize, bits: &[u8]) -> Result<Self> {
        if num_atoms == 0 {
            return Err(Error::invalid("need at least one atom"));
        }
        if bits.len() != num_atoms {
            return Err(Error::invalid(format!(
                "expected {num_atoms} binary digits, got {}",
                bits.len()
            )));
        }
        let mut index = 0usize;
        for &bit in bits {
            if bit > 1 {
                return Err(Error::invalid(format!("non-binary digit {bit}")));
            }
            index = (index << 1) | bit as usize;
        }
        let mut amplitudes = vec![Complex64::ZERO; 1 << num_atoms];
        amplitudes[index] = Complex64::ONE;
        Ok(PureState { num_atoms, amplitudes })
    }

    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Inner product ⟨self|other⟩ (conjugate-linear in `self`).
    pub fn inner(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// Apply the lowering operator Ŝ⁻ of one atom, returning the raw
    /// (generally unnormalized) amplitude vector Ŝ⁻ᵢ|ψ⟩.
    pub fn apply_lowering(&self, atom: usize) -> Result<Vec<Complex64>> {
        let mask = self.atom_mask(atom)?;
        Ok(lower(&self.amplitudes, mask))
    }

    /// Normally-ordered expectation value
    /// ⟨ψ| Ŝ⁺_{i₁}…Ŝ⁺_{iₚ} Ŝ⁻_{k₁}…Ŝ⁻_{k_q} |ψ⟩
    /// with all raising operators to the left of all lowering operators.
    ///
    /// Computed by operator application to state vectors: the raising string
    /// acting on the bra is the adjoint of the matching lowering string on
    /// the ket, so only Ŝ⁻ applications and one inner product are needed.
    pub fn correlator(&self, raising: &[usize], lowering: &[usize]) -> Result<Complex64> {
        let mut bra = self.amplitudes.clone();
        for &atom in raising {
            let mask = self.atom_mask(atom)?;
            bra = lower(&bra, mask);
        }
        let mut ket = self.amplitudes.clone();
        for &atom in lowering {
            let mask = self.atom_mask(atom)?;
            ket = lower(&ket, mask);
        }
        Ok(inner(&bra, &ket))
    }

    /// Total excited-state population Σᵢ ⟨Ŝ⁺ᵢŜ⁻ᵢ⟩.
    pub fn excitation_expectation(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(idx, amp)| idx.count_ones() as f64 * amp.norm_sqr())
            .sum()
    }

    fn atom_mask(&self, atom: usize) -> Result<usize> {
        if atom == 0 || atom > self.num_atoms {
            return Err(Error::invalid(format!(
                "atom index {atom} out of range 1..={}",
                self.num_atoms
            )));
        }
        Ok(1 << (self.num_atoms - atom))
    }
}

fn infer_num_atoms(amplitudes: &[Complex64]) -> Result<usize> {
    let len = amplitudes.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::invalid(format!(
            "amplitude vector length {len} is not a power of two >= 2"
        )));
    }
    Ok(len.trailing_zeros() as usize)
}

fn l2_norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
    bra.iter().zip(ket).map(|(b, k)| b.conj() * k).sum()
}

/// Ŝ⁻ for the atom selected by `mask`: moves amplitude from indices with the
/// bit set to the matching indices with the bit cleared.
fn lower(amplitudes: &[Complex64], mask: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; amplitudes.len()];
    for (idx, amp) in amplitudes.iter().enumerate() {
        if idx & mask != 0 {
            out[idx ^ mask] = *amp;
        }
    }
    out
}

/// The six entangled three-atom states with printed closed-form observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedState {
    /// ½(|110⟩ + |011⟩ + √2|101⟩), line layout.
    LineW21,
    /// ½(|110⟩ + |011⟩ − √2|101⟩), line layout.
    LineWbar21,
    /// (|011⟩ − |110⟩)/√2, line layout.
    LineWtilde21,
    /// (|110⟩ + |011⟩ + |101⟩)/√3, loop layout.
    LoopW21,
    /// (|101⟩ − |110⟩)/√2, loop layout.
    LoopGhzBar21,
    /// (|011⟩ − |110⟩)/√2, loop layout.
    LoopGhzTilde21,
}

// Basis indices with atom 1 as the most significant bit.
const KET_110: usize = 0b110;
const KET_101: usize = 0b101;
const KET_011: usize = 0b011;

impl NamedState {
    pub const ALL: [NamedState; 6] = [
        NamedState::LineW21,
        NamedState::LineWbar21,
        NamedState::LineWtilde21,
        NamedState::LoopW21,
        NamedState::LoopGhzBar21,
        NamedState::LoopGhzTilde21,
    ];

    /// Construct the state vector with the printed sign conventions.
    pub fn state(self) -> PureState {
        use std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex64::ZERO; 8];
        let re = |x: f64| Complex64::new(x, 0.0);
        match self {
            NamedState::LineW21 => {
                amps[KET_110] = re(0.5);
                amps[KET_011] = re(0.5);
                amps[KET_101] = re(FRAC_1_SQRT_2);
            }
            NamedState::LineWbar21 => {
                amps[KET_110] = re(0.5);
                amps[KET_011] = re(0.5);
                amps[KET_101] = re(-FRAC_1_SQRT_2);
            }
            NamedState::LineWtilde21 => {
                amps[KET_011] = re(FRAC_1_SQRT_2);
                amps[KET_110] = re(-FRAC_1_SQRT_2);
            }
            NamedState::LoopW21 => {
                let w = 1.0 / 3.0f64.sqrt();
                amps[KET_110] = re(w);
                amps[KET_011] = re(w);
                amps[KET_101] = re(w);
            }
            NamedState::LoopGhzBar21 => {
                amps[KET_101] = re(FRAC_1_SQRT_2);
                amps[KET_110] = re(-FRAC_1_SQRT_2);
            }
            NamedState::LoopGhzTilde21 => {
                amps[KET_011] = re(FRAC_1_SQRT_2);
                amps[KET_110] = re(-FRAC_1_SQRT_2);
            }
        }
        PureState { num_atoms: 3, amplitudes: amps }
    }

    /// The layout whose Hamiltonian has this state as an eigenstate.
    pub fn natural_layout(self) -> Layout {
        match self {
            NamedState::LineW21 | NamedState::LineWbar21 | NamedState::LineWtilde21 => Layout::Line,
            _ => Layout::Loop,
        }
    }

    /// Short token used on the command line and in table metadata.
    pub fn label(self) -> &'static str {
        match self {
            NamedState::LineW21 | NamedState::LoopW21 => "w21",
            NamedState::LineWbar21 => "wbar21",
            NamedState::LineWtilde21 => "wtilde21",
            NamedState::LoopGhzBar21 => "ghzbar21",
            NamedState::LoopGhzTilde21 => "ghztilde21",
        }
    }

    /// Resolve a token, preferring the variant natural to `layout` when the
    /// token is shared between layouts ("w21").
    pub fn from_label(layout: Layout, label: &str) -> Option<NamedState> {
        match (label, layout) {
            ("w21", Layout::Line) => Some(NamedState::LineW21),
            ("w21", Layout::Loop) => Some(NamedState::LoopW21),
            ("wbar21", _) => Some(NamedState::LineWbar21),
            ("wtilde21", _) => Some(NamedState::LineWtilde21),
            ("ghzbar21", _) => Some(NamedState::LoopGhzBar21),
            ("ghztilde21", _) => Some(NamedState::LoopGhzTilde21),
            _ => None,
        }
    }

    /// The printed eigenvalue of the matching Hamiltonian, as a function of
    /// the transition frequency ω and the nearest-neighbour coupling g
    /// (both in units of γ).
    pub fn eigenvalue(self, omega: f64, g: f64) -> f64 {
        let half = omega / 2.0;
        match self {
            NamedState::LineW21 => 2.0f64.sqrt() * g + half,
            NamedState::LineWbar21 => half - 2.0f64.sqrt() * g,
            NamedState::LineWtilde21 => half,
            NamedState::LoopW21 => 2.0 * g + half,
            NamedState::LoopGhzBar21 | NamedState::LoopGhzTilde21 => half - g,
        }
    }
}
