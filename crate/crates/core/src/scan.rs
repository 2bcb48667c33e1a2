//! Parameter sweeps over observation angle and atom spacing, and location of
//! the Poissonian points g²(0) = 1.
//!
//! Every row is computed through the brute-force correlator path; the closed
//! forms exist only as cross-checks in the test suites. Rows are evaluated
//! independently in a fixed order, so identical inputs always produce
//! bitwise-identical tables.

use crate::error::{Error, Result};
use crate::geometry::{Geometry, Layout};
use crate::qstate::PureState;
use crate::radiation::{self, DetectionContext};

/// Smallest spacing accepted by the sweep drivers; smaller values are clamped
/// (the coupling law and the phase pattern both degenerate as kd → 0).
pub const MIN_KD: f64 = 1e-3;

/// Refinement target for a reported crossing: |g²(θ*) − 1| < this.
pub const CROSSING_TOL: f64 = 1e-9;

/// A grid point with no sign change counts as a tangential touch when
/// |g² − 1| falls below this.
pub const TOUCH_TOL: f64 = 1e-6;

/// Which observables a sweep evaluates. g² is always normalized by the
/// intensity, so it cannot be requested alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observables {
    Intensity,
    IntensityAndG2,
}

impl Observables {
    pub fn with_g2(self) -> bool {
        matches!(self, Observables::IntensityAndG2)
    }

    pub fn labels(self) -> &'static [&'static str] {
        match self {
            Observables::Intensity => &["intensity"],
            Observables::IntensityAndG2 => &["intensity", "g2"],
        }
    }
}

/// The kd axis of a table: fixed for angular sweeps, a range for surfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KdAxis {
    Fixed(f64),
    Range { min: f64, max: f64, samples: usize },
}

/// Provenance carried along with the sampled rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanMetadata {
    /// Named-state token or a fingerprint of a custom state.
    pub state: String,
    pub layout: Layout,
    pub kd: KdAxis,
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_samples: usize,
    pub observables: Observables,
    pub version: &'static str,
}

/// One sampled grid point. `kd` repeats the fixed spacing for angular scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub kd: f64,
    pub theta: f64,
    pub intensity: f64,
    pub g2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub metadata: ScanMetadata,
    pub rows: Vec<ScanRow>,
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn clamp_kd(kd: f64) -> f64 {
    kd.max(MIN_KD)
}

/// Endpoint-exact uniform grid point `t` of `samples` over [min, max].
fn grid_point(min: f64, max: f64, samples: usize, t: usize) -> f64 {
    if t == samples - 1 {
        max
    } else {
        min + (max - min) * t as f64 / (samples - 1) as f64
    }
}

fn check_window(theta_min: f64, theta_max: f64, samples: usize) -> Result<()> {
    if !theta_min.is_finite() || !theta_max.is_finite() || theta_min >= theta_max {
        return Err(Error::invalid(format!(
            "need theta_min < theta_max, got [{theta_min}, {theta_max}]"
        )));
    }
    if samples < 2 {
        return Err(Error::invalid(format!("need at least 2 samples, got {samples}")));
    }
    Ok(())
}

/// Sweep the observation angle over an inclusive uniform grid.
pub fn angular_scan(
    state: &PureState,
    state_label: &str,
    geometry: Geometry,
    theta_min: f64,
    theta_max: f64,
    samples: usize,
    observables: Observables,
) -> Result<ScanTable> {
    check_window(theta_min, theta_max, samples)?;
    let geometry = Geometry::new(geometry.layout(), clamp_kd(geometry.kd()))?;
    let mut rows = Vec::with_capacity(samples);
    for t in 0..samples {
        let theta = grid_point(theta_min, theta_max, samples, t);
        let ctx = DetectionContext::new(geometry, theta);
        let sample = radiation::sample(state, &ctx, observables.with_g2())?;
        rows.push(ScanRow {
            kd: geometry.kd(),
            theta,
            intensity: sample.intensity,
            g2: sample.g2,
        });
    }
    Ok(ScanTable {
        metadata: ScanMetadata {
            state: state_label.to_owned(),
            layout: geometry.layout(),
            kd: KdAxis::Fixed(geometry.kd()),
            theta_min,
            theta_max,
            theta_samples: samples,
            observables,
            version: VERSION,
        },
        rows,
    })
}

/// Sweep a (kd, θ) grid, kd as the outer (row-major) axis and θ covering the
/// half-open full circle [−π, π). Surfaces report intensity only.
pub fn surface_scan(
    state: &PureState,
    state_label: &str,
    layout: Layout,
    kd_min: f64,
    kd_max: f64,
    kd_samples: usize,
    theta_samples: usize,
) -> Result<ScanTable> {
    if !kd_min.is_finite() || !kd_max.is_finite() || kd_min <= 0.0 || kd_min >= kd_max {
        return Err(Error::invalid(format!(
            "need 0 < kd_min < kd_max, got [{kd_min}, {kd_max}]"
        )));
    }
    if kd_samples < 2 || theta_samples < 2 {
        return Err(Error::invalid(format!(
            "need at least 2 samples per axis, got kd={kd_samples}, theta={theta_samples}"
        )));
    }
    let kd_min = clamp_kd(kd_min);
    let theta_step = std::f64::consts::TAU / theta_samples as f64;
    let mut rows = Vec::with_capacity(kd_samples * theta_samples);
    for r in 0..kd_samples {
        let kd = grid_point(kd_min, kd_max, kd_samples, r);
        let geometry = Geometry::new(layout, kd)?;
        for t in 0..theta_samples {
            let theta = -std::f64::consts::PI + theta_step * t as f64;
            let ctx = DetectionContext::new(geometry, theta);
            let intensity = radiation::intensity_bruteforce(state, &ctx)?;
            rows.push(ScanRow { kd, theta, intensity, g2: None });
        }
    }
    Ok(ScanTable {
        metadata: ScanMetadata {
            state: state_label.to_owned(),
            layout,
            kd: KdAxis::Range { min: kd_min, max: kd_max, samples: kd_samples },
            theta_min: -std::f64::consts::PI,
            theta_max: std::f64::consts::PI,
            theta_samples,
            observables: Observables::Intensity,
            version: VERSION,
        },
        rows,
    })
}

/// Angles where g²(0) = 1, split into genuine sign changes of g² − 1 and
/// tangential touches.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CrossingReport {
    /// Sign-change crossings, bisected until |g²(θ*) − 1| < [`CROSSING_TOL`].
    pub crossings: Vec<f64>,
    /// Grid minima of |g² − 1| below [`TOUCH_TOL`] with no sign change.
    pub touches: Vec<f64>,
}

/// Scan g²(0) − 1 over a uniform grid, bracket every sign change between
/// adjacent samples, and refine each bracket by bisection. Runs of samples
/// with |g² − 1| < [`TOUCH_TOL`] that contain no sign change are reported
/// once, at their minimum, as touches.
pub fn unity_crossings(
    state: &PureState,
    geometry: Geometry,
    theta_min: f64,
    theta_max: f64,
    samples: usize,
) -> Result<CrossingReport> {
    check_window(theta_min, theta_max, samples)?;
    let geometry = Geometry::new(geometry.layout(), clamp_kd(geometry.kd()))?;

    let deviation = |theta: f64| -> Result<Option<f64>> {
        let ctx = DetectionContext::new(geometry, theta);
        Ok(radiation::g2_bruteforce(state, &ctx)?.map(|g2| g2 - 1.0))
    };

    let thetas: Vec<f64> = (0..samples)
        .map(|t| grid_point(theta_min, theta_max, samples, t))
        .collect();
    let mut deviations = Vec::with_capacity(samples);
    for &theta in &thetas {
        deviations.push(deviation(theta)?);
    }

    let mut crossings = Vec::new();
    for t in 0..samples - 1 {
        let (Some(lo), Some(hi)) = (deviations[t], deviations[t + 1]) else {
            continue;
        };
        if lo == 0.0 {
            // Grid point sitting exactly on the level: count it as a crossing
            // only when the neighbours bracket a sign change through it.
            if t > 0 {
                if let Some(prev) = deviations[t - 1] {
                    if prev * hi < 0.0 {
                        crossings.push(thetas[t]);
                    }
                }
            }
            continue;
        }
        if lo * hi < 0.0 {
            if let Some(root) = bisect(&deviation, thetas[t], lo, thetas[t + 1])? {
                crossings.push(root);
            }
        }
    }

    let mut touches = Vec::new();
    let mut run_start: Option<usize> = None;
    for t in 0..=samples {
        let in_run = t < samples && matches!(deviations[t], Some(d) if d.abs() < TOUCH_TOL);
        match (run_start, in_run) {
            (None, true) => run_start = Some(t),
            (Some(start), false) => {
                let end = t - 1;
                if !run_has_sign_change(&deviations, start, end) {
                    let best = (start..=end)
                        .min_by(|&a, &b| {
                            let da = deviations[a].unwrap().abs();
                            let db = deviations[b].unwrap().abs();
                            da.total_cmp(&db)
                        })
                        .unwrap();
                    touches.push(thetas[best]);
                }
                run_start = None;
            }
            _ => {}
        }
    }

    Ok(CrossingReport { crossings, touches })
}

/// A sign change in the intervals inside the run or at its two edges means
/// the run belongs to a crossing, not a touch.
fn run_has_sign_change(deviations: &[Option<f64>], start: usize, end: usize) -> bool {
    let lo = start.saturating_sub(1);
    let hi = (end + 1).min(deviations.len() - 1);
    for t in lo..hi {
        if let (Some(a), Some(b)) = (deviations[t], deviations[t + 1]) {
            if a * b < 0.0 {
                return true;
            }
        }
    }
    false
}

fn bisect(
    deviation: &dyn Fn(f64) -> Result<Option<f64>>,
    mut lo: f64,
    mut d_lo: f64,
    mut hi: f64,
) -> Result<Option<f64>> {
    let mut best = (lo, d_lo.abs());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval exhausted at f64 resolution
        }
        let Some(d_mid) = deviation(mid)? else {
            return Ok(None);
        };
        if d_mid.abs() < best.1 {
            best = (mid, d_mid.abs());
        }
        if d_mid.abs() < CROSSING_TOL {
            return Ok(Some(mid));
        }
        if (d_mid > 0.0) == (d_lo > 0.0) {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    if best.1 < CROSSING_TOL {
        Ok(Some(best.0))
    } else {
        Ok(None)
    }
}
