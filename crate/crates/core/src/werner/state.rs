use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigs, partial_transpose, ComplexMatrix, ONE};

/// Sign in front of the swap operator.
///
/// `Proposition`: `ρ(α) = (I − αF)/(d² − αd)`, under which the separable /
/// one-distillable / one-undistillable ranges read `α ≤ 1/d`, `α > 1/2`,
/// and in between. `Displayed`: `ρ(α) = (I + αF)/(d² + αd)`, which is the
/// first family at `−α`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Proposition,
    Displayed,
}

impl Convention {
    pub fn name(&self) -> &'static str {
        match self {
            Convention::Proposition => "proposition",
            Convention::Displayed => "displayed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WernerState {
    pub d: usize,
    pub alpha: f64,
    pub convention: Convention,
}

/// `F = Σ Eᵢⱼ ⊗ Eⱼᵢ`.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            f[(i * d + j, j * d + i)] = ONE;
        }
    }
    f
}

impl WernerState {
    pub fn new(d: usize, alpha: f64) -> Result<Self> {
        Self::with_convention(d, alpha, Convention::Proposition)
    }

    pub fn with_convention(d: usize, alpha: f64, convention: Convention) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension(format!("local dimension must be at least 2, got {d}")));
        }
        if !(alpha.abs() <= 1.0) {
            return Err(Error::InvalidArgument(format!("alpha must lie in [-1, 1], got {alpha}")));
        }
        Ok(Self { d, alpha, convention })
    }

    /// The parameter of the same state written in the proposition convention.
    pub fn proposition_alpha(&self) -> f64 {
        match self.convention {
            Convention::Proposition => self.alpha,
            Convention::Displayed => -self.alpha,
        }
    }

    pub fn density(&self) -> ComplexMatrix {
        let d = self.d as f64;
        let a = self.proposition_alpha();
        let norm = d * d - a * d;
        let f = swap_operator(self.d);
        (&ComplexMatrix::identity(self.d * self.d) - &f.scale_real(a)).scale_real(1.0 / norm)
    }

    pub fn partial_transposed(&self) -> ComplexMatrix {
        partial_transpose(&self.density(), self.d, self.d).expect("square bipartite operator")
    }

    /// Smallest eigenvalue of `ρᴳ` from the spectrum of `I − αd|Φ⟩⟨Φ|`.
    pub fn ppt_min_eig(&self) -> f64 {
        let d = self.d as f64;
        let a = self.proposition_alpha();
        let norm = d * d - a * d;
        if a > 0.0 { (1.0 - a * d) / norm } else { 1.0 / norm }
    }

    pub fn ppt_min_eig_dense(&self) -> f64 {
        let eig = hermitian_eigs(&self.partial_transposed()).expect("Hermitian");
        *eig.values.last().expect("nonempty")
    }

    pub fn classify(&self) -> Classification {
        let a = self.proposition_alpha();
        if a <= 1.0 / self.d as f64 {
            Classification::Separable
        } else if a > 0.5 {
            Classification::NptOneDistillable
        } else {
            Classification::NptOneUndistillable
        }
    }

    /// `(1 − 2α)/(d² − αd)`: the Schmidt-rank-2 witness minimum for `α ≥ 0`,
    /// from `max |⟨Φ|ψ⟩|² = 2/d` over Schmidt rank two.
    pub fn witness_closed_form(&self) -> f64 {
        let d = self.d as f64;
        let a = self.proposition_alpha();
        let norm = d * d - a * d;
        if a >= 0.0 { (1.0 - 2.0 * a) / norm } else { 1.0 / norm }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Separable,
    NptOneDistillable,
    NptOneUndistillable,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Separable => "separable",
            Classification::NptOneDistillable => "npt_one_distillable",
            Classification::NptOneUndistillable => "npt_one_undistillable",
        }
    }
}

pub fn werner_density(d: usize, alpha: f64) -> Result<ComplexMatrix> {
    Ok(WernerState::new(d, alpha)?.density())
}

pub fn ppt_min_eig(d: usize, alpha: f64) -> Result<f64> {
    Ok(WernerState::new(d, alpha)?.ppt_min_eig())
}

pub fn classify(d: usize, alpha: f64) -> Result<Classification> {
    Ok(WernerState::new(d, alpha)?.classify())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_zero_is_maximally_mixed() {
        let rho = werner_density(3, 0.0).unwrap();
        assert!(rho.max_abs_diff(&ComplexMatrix::identity(9).scale_real(1.0 / 9.0)) < 1e-16);
        assert_eq!(ppt_min_eig(3, 0.0).unwrap(), 1.0 / 9.0);
    }

    #[test]
    fn spectrum_from_symmetric_and_antisymmetric_parts() {
        for (d, a) in [(2usize, 0.3), (3, -0.7), (4, 0.9), (5, 1.0)] {
            let df = d as f64;
            let eig = hermitian_eigs(&werner_density(d, a).unwrap()).unwrap().values;
            let norm = df * df - a * df;
            let sym = (1.0 - a) / norm;
            let anti = (1.0 + a) / norm;
            let n_sym = eig.iter().filter(|&&v| (v - sym).abs() < 1e-12).count();
            let n_anti = eig.iter().filter(|&&v| (v - anti).abs() < 1e-12).count();
            assert_eq!(n_sym, d * (d + 1) / 2);
            assert_eq!(n_anti, d * (d - 1) / 2);
            assert!((eig.iter().sum::<f64>() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn ppt_values() {
        assert!(ppt_min_eig(4, 0.25).unwrap().abs() < 1e-16);
        let s = WernerState::new(4, 0.25).unwrap();
        assert!(s.ppt_min_eig_dense().abs() < 1e-12);
        assert!((ppt_min_eig(4, 0.3).unwrap() + 0.2 / 14.8).abs() < 1e-15);
        assert!((WernerState::new(4, 0.3).unwrap().ppt_min_eig_dense() + 0.2 / 14.8).abs() < 1e-12);
    }

    #[test]
    fn proposition_ranges() {
        assert_eq!(classify(4, 0.2).unwrap(), Classification::Separable);
        assert_eq!(classify(4, 0.6).unwrap(), Classification::NptOneDistillable);
        assert_eq!(classify(4, 0.4).unwrap(), Classification::NptOneUndistillable);
        assert!(classify(4, 1.5).is_err());
    }

    #[test]
    fn displayed_convention_is_sign_flip() {
        let shown = WernerState::with_convention(4, 0.4, Convention::Displayed).unwrap();
        let flipped = WernerState::new(4, -0.4).unwrap();
        assert!(shown.density().max_abs_diff(&flipped.density()) < 1e-16);
        // written this way the state is PPT for every α ≥ −1/d
        for a in [0.0, 0.3, 0.6, 1.0] {
            let s = WernerState::with_convention(4, a, Convention::Displayed).unwrap();
            assert!(s.ppt_min_eig_dense() > -1e-12);
            assert_eq!(s.classify(), Classification::Separable);
        }
    }
}
