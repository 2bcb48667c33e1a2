//! Distance-dependent dipole-dipole coupling, the excitation-exchange
//! Hamiltonian for both layouts, exact diagonalization, and identification of
//! the entangled eigenstates.
//!
//! All energies are expressed in units of the decay rate γ.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Layout;
use crate::qstate::{NamedState, PureState};

/// Hilbert-space dimension for three two-level atoms.
pub const HILBERT_DIM: usize = 8;

/// Hermiticity tolerance accepted by [`diagonalize`].
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Minimum subspace projection for a named-state match.
pub const MATCH_THRESHOLD: f64 = 0.999;

/// Dipole-dipole coupling strength Ω(kd) for transition dipoles perpendicular
/// to the interatomic axis:
///
/// Ω(kd) = (3γ/4)·[−cos(kd)/kd + sin(kd)/(kd)² + cos(kd)/(kd)³]
///
/// Reproduces Ω ≈ 0.29γ at kd = 2π/3 and Ω ≈ 2.60γ at kd = 2π/10.
pub fn coupling_strength(kd: f64, gamma: f64) -> Result<f64> {
    if !kd.is_finite() || kd <= 0.0 {
        return Err(Error::invalid(format!("kd must be positive and finite, got {kd}")));
    }
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::invalid(format!("gamma must be positive and finite, got {gamma}")));
    }
    let (s, c) = kd.sin_cos();
    Ok(0.75 * gamma * (-c / kd + s / (kd * kd) + c / (kd * kd * kd)))
}

/// Transition frequency, decay-rate unit, and the symmetric coupling matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingParams {
    omega: f64,
    gamma: f64,
    coupling: [[f64; 3]; 3],
}

impl CouplingParams {
    /// Couplings from a single nearest-neighbour strength `g`: the line gets
    /// Ω₁₂ = Ω₂₃ = g with Ω₁₃ = 0, the loop gets all three pairs equal to `g`.
    pub fn uniform(layout: Layout, omega: f64, gamma: f64, g: f64) -> Result<Self> {
        let coupling = match layout {
            Layout::Line => [[0.0, g, 0.0], [g, 0.0, g], [0.0, g, 0.0]],
            Layout::Loop => [[0.0, g, g], [g, 0.0, g], [g, g, 0.0]],
        };
        Self::from_matrix(omega, gamma, coupling)
    }

    /// Line couplings with an explicit direct 1–3 strength, for sensitivity
    /// studies away from the Ω₁₃ = 0 idealization.
    pub fn line_with_cross(omega: f64, gamma: f64, g: f64, omega13: f64) -> Result<Self> {
        Self::from_matrix(
            omega,
            gamma,
            [[0.0, g, omega13], [g, 0.0, g], [omega13, g, 0.0]],
        )
    }

    /// General constructor; requires a symmetric matrix with zero diagonal.
    pub fn from_matrix(omega: f64, gamma: f64, coupling: [[f64; 3]; 3]) -> Result<Self> {
        if !omega.is_finite() || omega < 0.0 {
            return Err(Error::invalid(format!("omega must be >= 0 and finite, got {omega}")));
        }
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::invalid(format!("gamma must be positive and finite, got {gamma}")));
        }
        for (i, row) in coupling.iter().enumerate() {
            if row[i] != 0.0 {
                return Err(Error::invalid("coupling matrix must have zero diagonal"));
            }
            for (j, &entry) in row.iter().enumerate() {
                if !entry.is_finite() {
                    return Err(Error::invalid("coupling matrix entries must be finite"));
                }
                if entry != coupling[j][i] {
                    return Err(Error::invalid("coupling matrix must be symmetric"));
                }
            }
        }
        Ok(CouplingParams { omega, gamma, coupling })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Coupling Ω_ij for 1-based atom indices.
    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.coupling[i - 1][j - 1]
    }

    fn check_topology(&self, layout: Layout) -> Result<()> {
        let c = &self.coupling;
        match layout {
            Layout::Line => {
                if c[0][1] != c[1][2] {
                    return Err(Error::invalid(
                        "line topology requires equal nearest-neighbour couplings",
                    ));
                }
            }
            Layout::Loop => {
                if c[0][1] != c[1][2] || c[0][1] != c[0][2] {
                    return Err(Error::invalid(
                        "loop topology requires all three couplings equal",
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Assemble H = ω·Σᵢ Ŝᶻᵢ + Σ_{i≠j} Ω_ij·Ŝ⁺ᵢŜ⁻ⱼ over the 8-dimensional basis,
/// with Ŝᶻ eigenvalues ±1/2 and atom 1 as the most significant bit.
///
/// The exchange term conserves the total excitation number, so the matrix is
/// block diagonal over excitation sectors and exactly Hermitian.
pub fn build_hamiltonian(layout: Layout, params: &CouplingParams) -> Result<DMatrix<Complex64>> {
    params.check_topology(layout)?;
    let mut h = DMatrix::<Complex64>::zeros(HILBERT_DIM, HILBERT_DIM);
    for idx in 0..HILBERT_DIM {
        let sz_sum = idx.count_ones() as f64 - 1.5;
        h[(idx, idx)] = Complex64::new(params.omega * sz_sum, 0.0);
    }
    for i in 1..=3usize {
        for j in 1..=3usize {
            if i == j || params.coupling(i, j) == 0.0 {
                continue;
            }
            let raise = 1usize << (3 - i);
            let lower = 1usize << (3 - j);
            for idx in 0..HILBERT_DIM {
                if idx & lower != 0 && idx & raise == 0 {
                    let target = (idx ^ lower) | raise;
                    h[(target, idx)] += Complex64::new(params.coupling(i, j), 0.0);
                }
            }
        }
    }
    Ok(h)
}

/// Real spectrum and orthonormal eigenbasis of a Hermitian matrix, sorted by
/// ascending eigenvalue.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector column aligned with `eigenvalues()[k]`.
    pub fn eigenvector(&self, k: usize) -> DVector<Complex64> {
        self.eigenvectors.column(k).into_owned()
    }

    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }
}

/// Exact diagonalization of a Hermitian matrix.
pub fn diagonalize(h: &DMatrix<Complex64>) -> Result<SpectralDecomposition> {
    if h.nrows() != h.ncols() {
        return Err(Error::invalid("matrix must be square"));
    }
    let mut max_asym = 0.0f64;
    for i in 0..h.nrows() {
        for j in 0..h.ncols() {
            max_asym = max_asym.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    if max_asym > HERMITICITY_TOL {
        return Err(Error::invalid(format!(
            "matrix is not Hermitian: max |H_ij - conj(H_ji)| = {max_asym:e}"
        )));
    }
    let eigen = nalgebra::SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..eigen.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eigen.eigenvalues[k]).collect();
    let mut eigenvectors = DMatrix::<Complex64>::zeros(h.nrows(), h.ncols());
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eigen.eigenvectors.column(src));
    }
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

/// Residual ‖H·ψ − λ·ψ‖₂ of a claimed eigenpair.
pub fn verify_eigenstate(h: &DMatrix<Complex64>, state: &PureState, lambda: f64) -> Result<f64> {
    if h.nrows() != state.dim() || h.ncols() != state.dim() {
        return Err(Error::invalid(format!(
            "dimension mismatch: matrix is {}x{}, state has dimension {}",
            h.nrows(),
            h.ncols(),
            state.dim()
        )));
    }
    let v = state_vector(state);
    let residual = h * &v - v.scale(lambda);
    Ok(residual.norm())
}

/// Column-vector view of a state's amplitudes.
pub fn state_vector(state: &PureState) -> DVector<Complex64> {
    DVector::from_column_slice(state.amplitudes())
}

/// A named state matched inside an eigenspace, with the norm of its
/// projection onto that subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateMatch {
    pub tag: NamedState,
    pub projection: f64,
}

/// One (possibly degenerate) eigenspace and the named states found in it.
#[derive(Debug, Clone)]
pub struct SubspaceClassification {
    /// Representative eigenvalue (mean over the degenerate group).
    pub eigenvalue: f64,
    /// Number of eigenvectors in the group.
    pub dimension: usize,
    /// Named states whose projection onto the subspace exceeds
    /// [`MATCH_THRESHOLD`], sorted by descending projection.
    pub matches: Vec<StateMatch>,
    /// Largest projection over all named states, matched or not.
    pub best: StateMatch,
}

impl SubspaceClassification {
    pub fn is_named(&self) -> bool {
        !self.matches.is_empty()
    }
}

/// Group eigenvectors into degenerate subspaces and report, per subspace, the
/// named states it contains. Projection-based matching is phase-insensitive
/// and independent of the eigensolver's basis choice within a degenerate
/// subspace.
///
/// A subspace that swallows the entire two-excitation sector (which happens
/// exactly when the coupling vanishes) matches nothing: every two-excitation
/// state is trivially an eigenvector there, so containment carries no
/// information.
pub fn classify_eigenstates(decomp: &SpectralDecomposition) -> Result<Vec<SubspaceClassification>> {
    if decomp.dim() != HILBERT_DIM {
        return Err(Error::invalid(format!(
            "classification expects an {HILBERT_DIM}-dimensional decomposition, got {}",
            decomp.dim()
        )));
    }
    let scale = decomp
        .eigenvalues()
        .iter()
        .fold(1.0f64, |acc, &v| acc.max(v.abs()));
    let group_tol = 1e-8 * scale;

    let named: Vec<(NamedState, DVector<Complex64>)> = NamedState::ALL
        .iter()
        .map(|&tag| (tag, state_vector(&tag.state())))
        .collect();

    let mut out = Vec::new();
    let mut start = 0;
    while start < decomp.dim() {
        let mut end = start + 1;
        while end < decomp.dim()
            && decomp.eigenvalues()[end] - decomp.eigenvalues()[end - 1] <= group_tol
        {
            end += 1;
        }
        let eigenvalue =
            decomp.eigenvalues()[start..end].iter().sum::<f64>() / (end - start) as f64;

        // Weight of the group inside the two-excitation sector; 3 means the
        // whole sector is degenerate and matching would be vacuous.
        let two_excitation_indices = [0b011usize, 0b101, 0b110];
        let sector_weight: f64 = (start..end)
            .map(|k| {
                let column = decomp.eigenvectors().column(k);
                two_excitation_indices
                    .iter()
                    .map(|&idx| column[idx].norm_sqr())
                    .sum::<f64>()
            })
            .sum();
        let vacuous = sector_weight > 3.0 - 1e-6;

        let mut projections: Vec<StateMatch> = named
            .iter()
            .map(|(tag, vec)| {
                let proj_sq: f64 = (start..end)
                    .map(|k| decomp.eigenvectors().column(k).dotc(vec).norm_sqr())
                    .sum();
                StateMatch { tag: *tag, projection: proj_sq.sqrt() }
            })
            .collect();
        projections.sort_by(|a, b| b.projection.total_cmp(&a.projection));
        let best = projections[0];
        let matches: Vec<StateMatch> = if vacuous {
            Vec::new()
        } else {
            projections
                .into_iter()
                .filter(|m| m.projection > MATCH_THRESHOLD)
                .collect()
        };

        out.push(SubspaceClassification {
            eigenvalue,
            dimension: end - start,
            matches,
            best,
        });
        start = end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn coupling_strength_reproduces_reference_values() {
        let third = coupling_strength(2.0 * PI / 3.0, 1.0).unwrap();
        assert!((third - 0.29).abs() < 0.01, "got {third}");
        let tenth = coupling_strength(2.0 * PI / 10.0, 1.0).unwrap();
        assert!((tenth - 2.6).abs() < 0.05, "got {tenth}");
        // cos(π/2) = 0 leaves only the 1/(kd)² term.
        let quarter = coupling_strength(PI / 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(quarter, 0.75 / (PI / 2.0).powi(2), epsilon = 1e-12);
    }

    #[test]
    fn coupling_strength_scales_with_gamma_and_validates() {
        let base = coupling_strength(1.0, 1.0).unwrap();
        let doubled = coupling_strength(1.0, 2.0).unwrap();
        assert_abs_diff_eq!(doubled, 2.0 * base, epsilon = 1e-15);
        assert!(coupling_strength(0.0, 1.0).is_err());
        assert!(coupling_strength(-1.0, 1.0).is_err());
        assert!(coupling_strength(1.0, 0.0).is_err());
    }

    #[test]
    fn coupling_params_validation() {
        assert!(CouplingParams::uniform(Layout::Line, 1.0, 1.0, 0.3).is_ok());
        assert!(CouplingParams::from_matrix(1.0, 1.0, [[0.1, 0.0, 0.0]; 3]).is_err());
        assert!(
            CouplingParams::from_matrix(1.0, 1.0, [
                [0.0, 1.0, 0.0],
                [2.0, 0.0, 0.0],
                [0.0, 0.0, 0.0]
            ])
            .is_err()
        );
        assert!(CouplingParams::uniform(Layout::Line, -1.0, 1.0, 0.3).is_err());
    }

    #[test]
    fn hamiltonian_matrix_elements() {
        let g = 0.7;
        let lp = CouplingParams::uniform(Layout::Loop, 0.0, 1.0, g).unwrap();
        let h = build_hamiltonian(Layout::Loop, &lp).unwrap();
        // Ω₂₃ exchange: |101⟩ -> |110⟩.
        assert_abs_diff_eq!(h[(0b110, 0b101)].re, g, epsilon = 1e-15);

        let line = CouplingParams::uniform(Layout::Line, 0.0, 1.0, g).unwrap();
        let h = build_hamiltonian(Layout::Line, &line).unwrap();
        // No direct 1-3 exchange on the line.
        assert_eq!(h[(0b110, 0b011)], Complex64::ZERO);

        let line = CouplingParams::uniform(Layout::Line, 1.0, 1.0, g).unwrap();
        let h = build_hamiltonian(Layout::Line, &line).unwrap();
        for idx in [0b110, 0b101, 0b011] {
            assert_abs_diff_eq!(h[(idx, idx)].re, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn hamiltonian_is_exactly_hermitian_and_block_diagonal() {
        let params = CouplingParams::uniform(Layout::Loop, 2.3, 1.0, 1.7).unwrap();
        let h = build_hamiltonian(Layout::Loop, &params).unwrap();
        for i in 0..HILBERT_DIM {
            for j in 0..HILBERT_DIM {
                assert!((h[(i, j)] - h[(j, i)].conj()).norm() <= 1e-15);
                if i.count_ones() != j.count_ones() {
                    assert_eq!(h[(i, j)], Complex64::ZERO);
                }
            }
        }
    }

    #[test]
    fn hamiltonian_rejects_topology_violation() {
        let params = CouplingParams::from_matrix(1.0, 1.0, [
            [0.0, 1.0, 0.5],
            [1.0, 0.0, 2.0],
            [0.5, 2.0, 0.0],
        ])
        .unwrap();
        assert!(build_hamiltonian(Layout::Line, &params).is_err());
        assert!(build_hamiltonian(Layout::Loop, &params).is_err());
    }

    #[test]
    fn line_two_excitation_spectrum() {
        let params = CouplingParams::uniform(Layout::Line, 0.0, 1.0, 1.0).unwrap();
        let h = build_hamiltonian(Layout::Line, &params).unwrap();
        let decomp = diagonalize(&h).unwrap();
        // Two-excitation block eigenvalues {−√2, 0, √2} appear twice (the
        // one-excitation block mirrors them at ω = 0).
        let r2 = 2.0f64.sqrt();
        for target in [-r2, 0.0, r2] {
            assert!(
                decomp
                    .eigenvalues()
                    .iter()
                    .any(|&v| (v - target).abs() < 1e-10),
                "missing eigenvalue {target}"
            );
        }
    }

    #[test]
    fn loop_two_excitation_spectrum() {
        let params = CouplingParams::uniform(Layout::Loop, 0.0, 1.0, 1.0).unwrap();
        let h = build_hamiltonian(Layout::Loop, &params).unwrap();
        let decomp = diagonalize(&h).unwrap();
        let count = |target: f64| {
            decomp
                .eigenvalues()
                .iter()
                .filter(|&&v| (v - target).abs() < 1e-10)
                .count()
        };
        // {−1, −1, 2} for each of the two single-sector blocks at ω = 0.
        assert_eq!(count(-1.0), 4);
        assert_eq!(count(2.0), 2);
    }

    #[test]
    fn noninteracting_spectrum_counts_excitations() {
        let params = CouplingParams::uniform(Layout::Line, 2.0, 1.0, 0.0).unwrap();
        let h = build_hamiltonian(Layout::Line, &params).unwrap();
        let decomp = diagonalize(&h).unwrap();
        let expected = [-3.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 3.0];
        for (v, e) in decomp.eigenvalues().iter().zip(expected) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-10);
        }
    }

    #[test]
    fn diagonalize_checks_inputs() {
        let mut h = DMatrix::<Complex64>::zeros(4, 4);
        h[(0, 1)] = Complex64::new(0.0, 1.0);
        h[(1, 0)] = Complex64::new(0.0, 1.0); // not the conjugate
        assert!(diagonalize(&h).is_err());
        assert!(diagonalize(&DMatrix::<Complex64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn decomposition_is_orthonormal_with_small_residuals() {
        let params = CouplingParams::uniform(Layout::Loop, 1.3, 1.0, 0.9).unwrap();
        let h = build_hamiltonian(Layout::Loop, &params).unwrap();
        let decomp = diagonalize(&h).unwrap();
        let vt = decomp.eigenvectors().adjoint() * decomp.eigenvectors();
        for i in 0..HILBERT_DIM {
            for j in 0..HILBERT_DIM {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((vt[(i, j)].re - expected).abs() < 1e-10);
                assert!(vt[(i, j)].im.abs() < 1e-10);
            }
        }
        for k in 0..HILBERT_DIM {
            let v = decomp.eigenvector(k);
            let residual = (&h * &v - v.scale(decomp.eigenvalues()[k])).norm();
            assert!(residual < 1e-10, "residual {residual} for eigenpair {k}");
        }
        let trace: f64 = (0..HILBERT_DIM).map(|i| h[(i, i)].re).sum();
        let sum: f64 = decomp.eigenvalues().iter().sum();
        assert_abs_diff_eq!(trace, sum, epsilon = 1e-10);
    }

    #[test]
    fn printed_eigenpairs_have_tiny_residuals() {
        let line = CouplingParams::uniform(Layout::Line, 1.0, 1.0, 0.29).unwrap();
        let h_line = build_hamiltonian(Layout::Line, &line).unwrap();
        let lambda = NamedState::LineW21.eigenvalue(1.0, 0.29);
        let residual = verify_eigenstate(&h_line, &NamedState::LineW21.state(), lambda).unwrap();
        assert!(residual < 1e-12, "residual {residual}");

        let lp = CouplingParams::uniform(Layout::Loop, 1.0, 1.0, 2.6).unwrap();
        let h_loop = build_hamiltonian(Layout::Loop, &lp).unwrap();
        let lambda = NamedState::LoopW21.eigenvalue(1.0, 2.6);
        let residual = verify_eigenstate(&h_loop, &NamedState::LoopW21.state(), lambda).unwrap();
        assert!(residual < 1e-12, "residual {residual}");
    }

    #[test]
    fn verify_eigenstate_rejects_dimension_mismatch() {
        let h = DMatrix::<Complex64>::identity(4, 4);
        let state = NamedState::LineW21.state();
        assert!(verify_eigenstate(&h, &state, 1.0).is_err());
    }

    #[test]
    fn classification_finds_line_w_state() {
        let params = CouplingParams::uniform(Layout::Line, 0.0, 1.0, 1.0).unwrap();
        let h = build_hamiltonian(Layout::Line, &params).unwrap();
        let classes = classify_eigenstates(&diagonalize(&h).unwrap()).unwrap();
        let top = classes
            .iter()
            .find(|c| (c.eigenvalue - 2.0f64.sqrt()).abs() < 1e-10)
            .expect("eigenvalue sqrt(2) present");
        assert!(top.matches.iter().any(|m| m.tag == NamedState::LineW21));
        assert!(top.best.projection > 1.0 - 1e-10);
    }

    #[test]
    fn classification_handles_degenerate_loop_subspace() {
        let params = CouplingParams::uniform(Layout::Loop, 0.0, 1.0, 1.0).unwrap();
        let h = build_hamiltonian(Layout::Loop, &params).unwrap();
        let classes = classify_eigenstates(&diagonalize(&h).unwrap()).unwrap();
        // At ω = 0 the one- and two-excitation blocks both contribute λ = −1,
        // so the group has dimension 4 and still contains both GHZ states.
        let degenerate = classes
            .iter()
            .find(|c| (c.eigenvalue + 1.0).abs() < 1e-9 && c.dimension >= 2)
            .expect("degenerate subspace present");
        let tags: Vec<NamedState> = degenerate.matches.iter().map(|m| m.tag).collect();
        assert!(tags.contains(&NamedState::LoopGhzBar21));
        assert!(tags.contains(&NamedState::LoopGhzTilde21));
        for m in &degenerate.matches {
            if m.tag == NamedState::LoopGhzBar21 || m.tag == NamedState::LoopGhzTilde21 {
                assert!(m.projection > 1.0 - 1e-10, "projection {}", m.projection);
            }
        }
    }

    #[test]
    fn classification_without_coupling_matches_nothing() {
        let params = CouplingParams::uniform(Layout::Line, 1.0, 1.0, 0.0).unwrap();
        let h = build_hamiltonian(Layout::Line, &params).unwrap();
        let classes = classify_eigenstates(&diagonalize(&h).unwrap()).unwrap();
        for class in classes {
            assert!(!class.is_named(), "unexpected match at {}", class.eigenvalue);
        }
    }
}
