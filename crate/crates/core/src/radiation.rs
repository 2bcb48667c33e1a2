//! Far-field intensity and zero-delay second-order correlation of the light
//! emitted by the three-atom system, computed two ways: a state-agnostic
//! correlator sum, and the per-state closed forms.
//!
//! All intensities are dimensionless: the 1/r field prefactor and the dipole
//! magnitude are set to one, so values compare directly against the
//! incoherent baseline (one unit per excited atom).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Geometry, NUM_ATOMS};
use crate::qstate::{NamedState, PureState};

/// Largest tolerated imaginary residue in brute-force sums, and the bound on
/// how negative the (theoretically nonnegative) g² numerator may come out.
pub const IMAG_TOL: f64 = 1e-10;

/// Below this intensity the g² ratio is reported as undefined.
pub const G2_INTENSITY_FLOOR: f64 = 1e-9;

/// Dead band around the incoherent baseline for radiance classification.
pub const RADIANCE_EPS: f64 = 1e-9;

/// A detector direction attached to a concrete geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionContext {
    pub geometry: Geometry,
    pub theta: f64,
}

impl DetectionContext {
    pub fn new(geometry: Geometry, theta: f64) -> Self {
        DetectionContext { geometry, theta }
    }

    pub fn phases(&self) -> [f64; 3] {
        self.geometry.phase_vector(self.theta)
    }
}

/// One evaluated detector direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiationSample {
    pub theta: f64,
    pub intensity: f64,
    /// `None` marks the undefined ratio at (numerically) vanishing intensity.
    pub g2: Option<f64>,
}

/// Radiance relative to the incoherent emission of the same number of
/// independently excited atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Radiance {
    Superradiant,
    Subradiant,
    Neutral,
}

fn check_three_atoms(state: &PureState) -> Result<()> {
    if state.num_atoms() != NUM_ATOMS {
        return Err(Error::invalid(format!(
            "radiation formulas require {NUM_ATOMS} atoms, state has {}",
            state.num_atoms()
        )));
    }
    Ok(())
}

/// I(θ) = Σ_{i,j} ⟨Ŝ⁺ᵢŜ⁻ⱼ⟩ e^{i(φᵢ−φⱼ)} evaluated from correlators.
pub fn intensity_bruteforce(state: &PureState, ctx: &DetectionContext) -> Result<f64> {
    check_three_atoms(state)?;
    let phases = ctx.phases();
    let mut sum = Complex64::ZERO;
    for i in 1..=NUM_ATOMS {
        for j in 1..=NUM_ATOMS {
            let correlator = state.correlator(&[i], &[j])?;
            sum += correlator * Complex64::from_polar(1.0, phases[i - 1] - phases[j - 1]);
        }
    }
    if sum.im.abs() >= IMAG_TOL {
        return Err(Error::consistency(format!(
            "intensity sum has imaginary residue {:e}",
            sum.im
        )));
    }
    Ok(sum.re)
}

/// The three addends of the intensity: incoherent populations, the classical
/// dipole part built from single-operator moments, and the remaining quantum
/// correlations. The parts sum to [`intensity_bruteforce`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityBreakdown {
    pub incoherent: f64,
    pub dipole: f64,
    pub quantum: f64,
}

impl IntensityBreakdown {
    pub fn total(&self) -> f64 {
        self.incoherent + self.dipole + self.quantum
    }
}

pub fn intensity_breakdown(state: &PureState, ctx: &DetectionContext) -> Result<IntensityBreakdown> {
    check_three_atoms(state)?;
    let phases = ctx.phases();
    let mut incoherent = 0.0;
    let mut dipole = Complex64::ZERO;
    let mut quantum = Complex64::ZERO;
    for i in 1..=NUM_ATOMS {
        incoherent += state.correlator(&[i], &[i])?.re;
        for j in 1..=NUM_ATOMS {
            if i == j {
                continue;
            }
            let phase = Complex64::from_polar(1.0, phases[i - 1] - phases[j - 1]);
            let joint = state.correlator(&[i], &[j])?;
            let moment_i = state.correlator(&[i], &[])?;
            let moment_j = state.correlator(&[], &[j])?;
            dipole += moment_i * moment_j * phase;
            quantum += (joint - moment_i * moment_j) * phase;
        }
    }
    if dipole.im.abs() >= IMAG_TOL || quantum.im.abs() >= IMAG_TOL {
        return Err(Error::consistency("intensity breakdown has imaginary residue"));
    }
    Ok(IntensityBreakdown {
        incoherent,
        dipole: dipole.re,
        quantum: quantum.re,
    })
}

fn cosine_differences(phases: &[f64; 3]) -> (f64, f64, f64) {
    let c12 = (phases[0] - phases[1]).cos();
    let c23 = (phases[1] - phases[2]).cos();
    let c13 = (phases[0] - phases[2]).cos();
    (c12, c23, c13)
}

/// The printed intensity expression for a named state, evaluated verbatim.
///
/// The formulas depend only on the optical phases, so a context whose layout
/// differs from the state's natural one is accepted.
pub fn intensity_closed_form(tag: NamedState, ctx: &DetectionContext) -> f64 {
    let (c12, c23, c13) = cosine_differences(&ctx.phases());
    let sqrt2 = 2.0f64.sqrt();
    match tag {
        NamedState::LineW21 => 2.0 + 0.5 * (c13 + sqrt2 * (c12 + c23)),
        NamedState::LineWbar21 => 2.0 + 0.5 * (c13 - sqrt2 * (c12 + c23)),
        NamedState::LineWtilde21 | NamedState::LoopGhzTilde21 => 2.0 - c13,
        NamedState::LoopW21 => 2.0 + (2.0 / 3.0) * (c13 + c12 + c23),
        NamedState::LoopGhzBar21 => 2.0 - c23,
    }
}

/// g²(0) = ⟨E⁻E⁻E⁺E⁺⟩ / ⟨E⁻E⁺⟩² from the normally-ordered quadruple sum.
///
/// Returns `None` when the intensity falls below [`G2_INTENSITY_FLOOR`] and
/// the ratio is undefined.
pub fn g2_bruteforce(state: &PureState, ctx: &DetectionContext) -> Result<Option<f64>> {
    let intensity = intensity_bruteforce(state, ctx)?;
    let phases = ctx.phases();
    let mut numerator = Complex64::ZERO;
    for i in 1..=NUM_ATOMS {
        for j in 1..=NUM_ATOMS {
            for k in 1..=NUM_ATOMS {
                for l in 1..=NUM_ATOMS {
                    let correlator = state.correlator(&[i, j], &[k, l])?;
                    let arg =
                        phases[i - 1] + phases[j - 1] - phases[k - 1] - phases[l - 1];
                    numerator += correlator * Complex64::from_polar(1.0, arg);
                }
            }
        }
    }
    if numerator.im.abs() >= IMAG_TOL {
        return Err(Error::consistency(format!(
            "g2 numerator has imaginary residue {:e}",
            numerator.im
        )));
    }
    if numerator.re < -IMAG_TOL {
        return Err(Error::consistency(format!(
            "g2 numerator is negative: {:e}",
            numerator.re
        )));
    }
    if intensity < G2_INTENSITY_FLOOR {
        return Ok(None);
    }
    Ok(Some(numerator.re.max(0.0) / (intensity * intensity)))
}

/// The printed g²(0) expression. Only the two line W states and the loop W
/// state have one; other tags yield an unsupported-operation error and must
/// go through [`g2_bruteforce`].
pub fn g2_closed_form(tag: NamedState, ctx: &DetectionContext) -> Result<f64> {
    let (c12, c23, c13) = cosine_differences(&ctx.phases());
    let sqrt2 = 2.0f64.sqrt();
    match tag {
        NamedState::LineW21 => {
            let bracket = c13 + sqrt2 * (c12 + c23);
            Ok((4.0 + 2.0 * bracket) / (2.0 + 0.5 * bracket).powi(2))
        }
        NamedState::LineWbar21 => {
            let bracket = c13 - sqrt2 * (c12 + c23);
            Ok((4.0 + 2.0 * bracket) / (2.0 + 0.5 * bracket).powi(2))
        }
        NamedState::LoopW21 => {
            let sum = c12 + c23 + c13;
            Ok((4.0 + 8.0 / 3.0 * sum) / (2.0 + 2.0 / 3.0 * sum).powi(2))
        }
        _ => Err(Error::Unsupported(format!(
            "no printed g2 closed form for {tag:?}; use the brute-force path"
        ))),
    }
}

/// Compare an intensity against the incoherent baseline of `excitation_count`
/// independently excited atoms.
pub fn classify_radiance(intensity: f64, excitation_count: usize) -> Radiance {
    let baseline = excitation_count as f64;
    if intensity > baseline + RADIANCE_EPS {
        Radiance::Superradiant
    } else if intensity < baseline - RADIANCE_EPS {
        Radiance::Subradiant
    } else {
        Radiance::Neutral
    }
}

/// Evaluate one detector direction with the brute-force path.
pub fn sample(state: &PureState, ctx: &DetectionContext, with_g2: bool) -> Result<RadiationSample> {
    let intensity = intensity_bruteforce(state, ctx)?;
    let g2 = if with_g2 { g2_bruteforce(state, ctx)? } else { None };
    Ok(RadiationSample { theta: ctx.theta, intensity, g2 })
}
