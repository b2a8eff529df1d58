//! Interaction configurations: supports, strengths, potentials, and the
//! sliding-window functionals behind the semiboundedness criteria.

pub mod potential;
pub mod seq;
pub mod support;

mod config_io;
mod window;

pub use config_io::{brasche_strengths, config_from_json, config_to_json};
pub use potential::{PiecewisePotential, PrimitiveV, VSegment};
pub use seq::{
    CustomSeq, Growth, Limit, Monomial, SeqExpr, SeqForm, SeriesClass, Sign, SumGrowth,
    SymbolicSequence,
};
pub use support::{Spacings, Support};
pub use window::{window_functional, WindowPart, WindowReport, WindowTarget};

use thiserror::Error;

/// Kind of point interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionKind {
    Delta,
    DeltaPrime,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("support positions must be strictly increasing and positive")]
    NonIncreasingSupport,
    #[error("delta-prime strength beta = 0 is forbidden; delete the point instead")]
    ZeroBetaStrength,
    #[error("delta strengths must be finite")]
    InfiniteAlphaStrength,
    #[error("strengths sequence too short for the support")]
    StrengthsTooShort,
    #[error("finite strengths with a symbolic support are not evaluable at every point")]
    StrengthsNotTotal,
    #[error("potential breakpoints/values malformed")]
    PotentialShape,
    #[error("asymptotics unavailable for an unannotated custom sequence")]
    UnknownAsymptotics,
    #[error("operation requires kind {expected:?}, got {actual:?}")]
    KindMismatch { expected: InteractionKind, actual: InteractionKind },
}

/// Full description of a Hamiltonian with point interactions on [0, ∞),
/// Dirichlet at the origin. The single source of truth for every module.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianConfig {
    pub kind: InteractionKind,
    pub support: Support,
    pub strengths: SymbolicSequence,
    pub potential: PiecewisePotential,
}

impl HamiltonianConfig {
    pub fn delta(
        support: Support,
        strengths: SymbolicSequence,
        potential: PiecewisePotential,
    ) -> HamiltonianConfig {
        HamiltonianConfig { kind: InteractionKind::Delta, support, strengths, potential }
    }

    pub fn delta_prime(
        support: Support,
        strengths: SymbolicSequence,
        potential: PiecewisePotential,
    ) -> HamiltonianConfig {
        HamiltonianConfig { kind: InteractionKind::DeltaPrime, support, strengths, potential }
    }

    /// Finite δ configuration from explicit points and strengths, q = 0.
    pub fn finite_delta(points: Vec<f64>, alphas: Vec<f64>) -> HamiltonianConfig {
        HamiltonianConfig::delta(
            Support::points(points),
            SymbolicSequence::finite(alphas),
            PiecewisePotential::zero(),
        )
    }

    /// Finite δ' configuration from explicit points and strengths, q = 0.
    pub fn finite_delta_prime(points: Vec<f64>, betas: Vec<f64>) -> HamiltonianConfig {
        HamiltonianConfig::delta_prime(
            Support::points(points),
            SymbolicSequence::finite(betas),
            PiecewisePotential::zero(),
        )
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        self.support.validate()?;
        self.potential.validate()?;

        match (&self.support.len(), &self.strengths.len()) {
            (Some(n), Some(m)) => {
                if m < n {
                    return Err(ModelError::StrengthsTooShort);
                }
            }
            (None, Some(_)) => return Err(ModelError::StrengthsNotTotal),
            _ => {}
        }

        let check_to = match self.strengths {
            SymbolicSequence::Finite(ref v) => v.len() as u64,
            _ => 1024,
        };
        for k in 1..=check_to {
            let s = match self.strengths.eval(k) {
                Some(s) => s,
                None => break,
            };
            match self.kind {
                InteractionKind::Delta => {
                    if !s.is_finite() {
                        return Err(ModelError::InfiniteAlphaStrength);
                    }
                }
                InteractionKind::DeltaPrime => {
                    if s == 0.0 {
                        return Err(ModelError::ZeroBetaStrength);
                    }
                    if s.is_nan() || s == f64::NEG_INFINITY {
                        return Err(ModelError::ZeroBetaStrength);
                    }
                }
            }
        }
        // symbolic δ' rules must be certifiably nonvanishing
        if self.kind == InteractionKind::DeltaPrime && !self.strengths.is_finite_data() {
            if let Some(SeqForm::Expr(e)) = self.strengths.form() {
                if e.sign_for_all().is_none() {
                    return Err(ModelError::ZeroBetaStrength);
                }
            }
        }
        Ok(())
    }

    /// Number of interactions for finite configurations.
    pub fn finite_len(&self) -> Option<usize> {
        self.support.len()
    }

    /// Positions and strengths of a finite configuration.
    pub fn finite_data(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let n = self.support.len()?;
        let xs: Vec<f64> = (1..=n as u64).map(|k| self.support.position(k).unwrap()).collect();
        let ss: Vec<f64> = (1..=n as u64)
            .map(|k| self.strengths.eval(k))
            .collect::<Option<Vec<f64>>>()?;
        Some((xs, ss))
    }

    /// Piecewise description of V(x) = ∫₀ˣ q + Σ_{x_k<x} α_k (δ only).
    pub fn primitive_v(&self) -> Result<PrimitiveV, ModelError> {
        if self.kind != InteractionKind::Delta {
            return Err(ModelError::KindMismatch {
                expected: InteractionKind::Delta,
                actual: self.kind,
            });
        }
        let (xs, alphas) = self
            .finite_data()
            .ok_or(ModelError::UnknownAsymptotics)?;
        Ok(PrimitiveV::assemble(&self.potential, &xs, &alphas))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_well_formed_delta() {
        let c = HamiltonianConfig::finite_delta(vec![1.0, 2.0], vec![-1.0, 3.0]);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_non_increasing() {
        let c = HamiltonianConfig::finite_delta(vec![2.0, 1.0], vec![-1.0, 3.0]);
        assert_eq!(c.validate(), Err(ModelError::NonIncreasingSupport));
    }

    #[test]
    fn rejects_zero_beta() {
        let c = HamiltonianConfig::finite_delta_prime(vec![1.0], vec![0.0]);
        assert_eq!(c.validate(), Err(ModelError::ZeroBetaStrength));
    }

    #[test]
    fn rejects_infinite_alpha() {
        let c = HamiltonianConfig::finite_delta(vec![1.0], vec![f64::INFINITY]);
        assert_eq!(c.validate(), Err(ModelError::InfiniteAlphaStrength));
    }

    #[test]
    fn allows_infinite_beta() {
        let c = HamiltonianConfig::finite_delta_prime(vec![1.0, 2.0], vec![f64::INFINITY, -2.0]);
        c.validate().unwrap();
    }

    #[test]
    fn accepts_paper_families() {
        // d_k = 1/k with α_k = -(2k+1)
        let c = HamiltonianConfig::delta(
            Support::SpacingRule(SymbolicSequence::PowerLaw { c: 1.0, p: -1.0 }),
            SymbolicSequence::AffinePower { c0: -1.0, c1: -2.0, c2: 0.0, p: -1.0 },
            PiecewisePotential::zero(),
        );
        c.validate().unwrap();

        // alternating Brasche data
        let a = 2.0;
        let c = HamiltonianConfig::delta(
            Support::BraschePair { a },
            SymbolicSequence::Custom(CustomSeq::new(
                "brasche-strengths",
                move |k| {
                    let m = k.div_ceil(2) as f64;
                    let v = a.powf(m);
                    if k % 2 == 1 {
                        v
                    } else {
                        -v
                    }
                },
                None,
            )),
            PiecewisePotential::zero(),
        );
        c.validate().unwrap();
    }

    #[test]
    fn primitive_v_requires_delta() {
        let c = HamiltonianConfig::finite_delta_prime(vec![1.0], vec![1.0]);
        assert!(matches!(c.primitive_v(), Err(ModelError::KindMismatch { .. })));
    }

    #[test]
    fn primitive_v_matches_example() {
        let c = HamiltonianConfig::finite_delta(vec![1.0], vec![-1.0]);
        let v = c.primitive_v().unwrap();
        assert_eq!(v.eval(0.5), 0.0);
        assert_eq!(v.eval(2.0), -1.0);
    }
}
