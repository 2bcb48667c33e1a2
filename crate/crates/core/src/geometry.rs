//! Atom placement for the line and loop layouts and the optical phase a
//! photon accumulates from each atom to a far-field detector.
//!
//! The detector direction is parameterized by the single polar angle θ of the
//! unit vector n̂ = (sin θ, 0, cos θ) in the x–z plane; the transition dipole
//! points along y, so no polarization factor enters.

use crate::error::{Error, Result};

/// Number of atoms in both supported layouts.
pub const NUM_ATOMS: usize = 3;

/// Arrangement of the three atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    /// Equally spaced along a line; atoms 1 and 3 do not couple directly.
    Line,
    /// Vertices of an equilateral triangle; every pair couples.
    Loop,
}

impl Layout {
    pub fn label(self) -> &'static str {
        match self {
            Layout::Line => "line",
            Layout::Loop => "loop",
        }
    }
}

/// Atom layout together with the dimensionless spacing kd (wavenumber times
/// interatomic distance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    layout: Layout,
    kd: f64,
}

impl Geometry {
    pub fn new(layout: Layout, kd: f64) -> Result<Self> {
        if !kd.is_finite() || kd <= 0.0 {
            return Err(Error::invalid(format!("kd must be positive and finite, got {kd}")));
        }
        Ok(Geometry { layout, kd })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn kd(&self) -> f64 {
        self.kd
    }

    /// Atom coordinates in units of 1/k, chosen so that k n̂·R⃗ⱼ reproduces
    /// [`Geometry::optical_phase`] exactly.
    ///
    /// Line: Rⱼ = (j·d, 0, 0). Loop: R₁ = (d, 0, 0), R₂ = (2d, 0, 0),
    /// R₃ = (3d/2, 0, √3·d/2).
    pub fn atom_positions(&self) -> [[f64; 3]; 3] {
        let kd = self.kd;
        match self.layout {
            Layout::Line => [
                [kd, 0.0, 0.0],
                [2.0 * kd, 0.0, 0.0],
                [3.0 * kd, 0.0, 0.0],
            ],
            Layout::Loop => [
                [kd, 0.0, 0.0],
                [2.0 * kd, 0.0, 0.0],
                [1.5 * kd, 0.0, 3.0f64.sqrt() / 2.0 * kd],
            ],
        }
    }

    /// Optical phase φⱼ = k n̂·R⃗ⱼ accumulated from atom `atom` (1-based) to a
    /// far-field detector at polar angle `theta`.
    ///
    /// Line: φⱼ = j·kd·sin θ. Loop: φ₁ = kd·sin θ, φ₂ = 2kd·sin θ,
    /// φ₃ = (3kd·sin θ + √3·kd·cos θ)/2.
    pub fn optical_phase(&self, atom: usize, theta: f64) -> Result<f64> {
        if atom == 0 || atom > NUM_ATOMS {
            return Err(Error::invalid(format!(
                "atom index {atom} out of range 1..={NUM_ATOMS}"
            )));
        }
        let kd = self.kd;
        let phase = match (self.layout, atom) {
            (Layout::Line, j) => j as f64 * kd * theta.sin(),
            (Layout::Loop, 1) => kd * theta.sin(),
            (Layout::Loop, 2) => 2.0 * kd * theta.sin(),
            (Layout::Loop, _) => (3.0 * kd * theta.sin() + 3.0f64.sqrt() * kd * theta.cos()) / 2.0,
        };
        Ok(phase)
    }

    /// All three optical phases [φ₁, φ₂, φ₃] at once.
    pub fn phase_vector(&self, theta: f64) -> [f64; 3] {
        // Atom indices 1..=3 are statically valid here.
        [
            self.optical_phase(1, theta).unwrap(),
            self.optical_phase(2, theta).unwrap(),
            self.optical_phase(3, theta).unwrap(),
        ]
    }
}
