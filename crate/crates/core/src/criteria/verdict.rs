//! Verdict data model and the implication-propagating aggregator.

use serde::Serialize;

use crate::model::{HamiltonianConfig, InteractionKind};

/// Self-adjointness conclusions (deficiency indices are 0 or 1 here).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SaConclusion {
    SelfAdjoint,
    NotSelfAdjointN1,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SbConclusion {
    LowerSemibounded,
    NotLowerSemibounded,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiscConclusion {
    Discrete,
    NotDiscrete,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EssConclusion {
    /// σ_ess equals that of the interaction-free operator with the same q.
    EqualsFree,
    /// σ_ess equals that of the Neumann comb reference.
    EqualsNeumann,
    /// σ_ess = {0}.
    ZeroSingleton,
    /// σ_ess ⊆ [0, ∞).
    NonNegative,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TypeConclusion {
    AcPreserved,
    AcEmpty,
    /// Sparse-support partition with the constant a: pp ⊆ [0, 1/a] and
    /// [1/a, ∞) ⊆ sc closure (a = +∞: purely singular continuous).
    SparsePartition { a: f64 },
    Unknown,
}

/// One criterion's conclusion in its category.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "category", content = "value")]
pub enum Conclusion {
    SelfAdjointness(SaConclusion),
    Semiboundedness(SbConclusion),
    Discreteness(DiscConclusion),
    EssentialSpectrum(EssConclusion),
    SpectralType(TypeConclusion),
}

impl Conclusion {
    pub fn is_unknown(&self) -> bool {
        matches!(
            self,
            Conclusion::SelfAdjointness(SaConclusion::Unknown)
                | Conclusion::Semiboundedness(SbConclusion::Unknown)
                | Conclusion::Discreteness(DiscConclusion::Unknown)
                | Conclusion::EssentialSpectrum(EssConclusion::Unknown)
                | Conclusion::SpectralType(TypeConclusion::Unknown)
        )
    }
}

/// Certificate entry value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CertValue {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for CertValue {
    fn from(v: f64) -> Self {
        CertValue::Num(v)
    }
}
impl From<i64> for CertValue {
    fn from(v: i64) -> Self {
        CertValue::Int(v)
    }
}
impl From<bool> for CertValue {
    fn from(v: bool) -> Self {
        CertValue::Bool(v)
    }
}
impl From<&str> for CertValue {
    fn from(v: &str) -> Self {
        CertValue::Text(v.to_string())
    }
}
impl From<String> for CertValue {
    fn from(v: String) -> Self {
        CertValue::Text(v)
    }
}

/// One criterion's applicability, conclusion and diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub criterion_id: &'static str,
    pub applicable: bool,
    pub conclusion: Conclusion,
    pub certificate: Vec<(String, CertValue)>,
    pub paper_anchor: &'static str,
}

impl Verdict {
    pub fn new(
        criterion_id: &'static str,
        anchor: &'static str,
        applicable: bool,
        conclusion: Conclusion,
    ) -> Verdict {
        debug_assert!(applicable || conclusion.is_unknown());
        Verdict { criterion_id, applicable, conclusion, certificate: Vec::new(), paper_anchor: anchor }
    }

    pub fn with(mut self, name: &str, value: impl Into<CertValue>) -> Verdict {
        self.certificate.push((name.to_string(), value.into()));
        self
    }
}

/// Aggregated per-category conclusions plus propagation notes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateReport {
    pub self_adjointness: SaConclusion,
    pub semiboundedness: SbConclusion,
    pub discreteness: DiscConclusion,
    pub essential_spectrum: EssConclusion,
    pub spectral_type: TypeConclusion,
    /// Implications applied during aggregation.
    pub propagated: Vec<String>,
    /// Contradictory classifier outputs: a bug flag, not a data property.
    pub inconsistencies: Vec<String>,
}

/// Full analysis report for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
    pub aggregate: AggregateReport,
}

fn fold_sa(verdicts: &[Verdict], inconsistencies: &mut Vec<String>) -> SaConclusion {
    let mut yes = false;
    let mut no = false;
    for v in verdicts {
        if let Conclusion::SelfAdjointness(c) = v.conclusion {
            match c {
                SaConclusion::SelfAdjoint => yes = true,
                SaConclusion::NotSelfAdjointN1 => no = true,
                SaConclusion::Unknown => {}
            }
        }
    }
    if yes && no {
        inconsistencies
            .push("self-adjointness: both a positive witness and a deficiency pattern fired".into());
        SaConclusion::Unknown
    } else if yes {
        SaConclusion::SelfAdjoint
    } else if no {
        SaConclusion::NotSelfAdjointN1
    } else {
        SaConclusion::Unknown
    }
}

macro_rules! fold_category {
    ($name:ident, $variant:ident, $ty:ident, $pos:ident, $neg:ident, $label:literal) => {
        fn $name(verdicts: &[Verdict], inconsistencies: &mut Vec<String>) -> $ty {
            let mut yes = false;
            let mut no = false;
            for v in verdicts {
                if let Conclusion::$variant(c) = v.conclusion {
                    match c {
                        $ty::$pos => yes = true,
                        $ty::$neg => no = true,
                        _ => {}
                    }
                }
            }
            if yes && no {
                inconsistencies.push(concat!($label, ": contradictory conclusions").into());
                $ty::Unknown
            } else if yes {
                $ty::$pos
            } else if no {
                $ty::$neg
            } else {
                $ty::Unknown
            }
        }
    };
}

fold_category!(fold_sb, Semiboundedness, SbConclusion, LowerSemibounded, NotLowerSemibounded, "semiboundedness");
fold_category!(fold_disc, Discreteness, DiscConclusion, Discrete, NotDiscrete, "discreteness");

fn fold_ess(verdicts: &[Verdict]) -> EssConclusion {
    // most specific conclusion wins: {0} > Neumann/free > nonneg
    let mut best = EssConclusion::Unknown;
    let rank = |c: EssConclusion| match c {
        EssConclusion::ZeroSingleton => 3,
        EssConclusion::EqualsNeumann | EssConclusion::EqualsFree => 2,
        EssConclusion::NonNegative => 1,
        EssConclusion::Unknown => 0,
    };
    for v in verdicts {
        if let Conclusion::EssentialSpectrum(c) = v.conclusion {
            if rank(c) > rank(best) {
                best = c;
            }
        }
    }
    best
}

fn fold_type(verdicts: &[Verdict], inconsistencies: &mut Vec<String>) -> TypeConclusion {
    let mut out = TypeConclusion::Unknown;
    for v in verdicts {
        if let Conclusion::SpectralType(c) = v.conclusion {
            match (out, c) {
                (TypeConclusion::Unknown, c) => out = c,
                (TypeConclusion::AcEmpty, TypeConclusion::SparsePartition { a }) => {
                    out = TypeConclusion::SparsePartition { a }
                }
                (TypeConclusion::SparsePartition { .. }, TypeConclusion::AcEmpty) => {}
                (TypeConclusion::AcPreserved, TypeConclusion::AcEmpty)
                | (TypeConclusion::AcEmpty, TypeConclusion::AcPreserved) => {
                    inconsistencies.push("spectral type: ac both preserved and empty".into());
                    out = TypeConclusion::Unknown;
                }
                _ => {}
            }
        }
    }
    out
}

/// Apply the paper-level implications to a verdict list:
/// lower-semibounded ⇒ self-adjoint (both kinds), and for δ' on the
/// half-line with bounded q, lower-semibounded ⇒ not discrete.
pub fn aggregate(config: &HamiltonianConfig, verdicts: &[Verdict]) -> AggregateReport {
    let mut inconsistencies = Vec::new();
    let mut propagated = Vec::new();

    let mut sa = fold_sa(verdicts, &mut inconsistencies);
    let sb = fold_sb(verdicts, &mut inconsistencies);
    let mut disc = fold_disc(verdicts, &mut inconsistencies);
    let ess = fold_ess(verdicts);
    let ty = fold_type(verdicts, &mut inconsistencies);

    if sb == SbConclusion::LowerSemibounded {
        match sa {
            SaConclusion::Unknown => {
                sa = SaConclusion::SelfAdjoint;
                propagated.push("lower semibounded => self-adjoint".into());
            }
            SaConclusion::SelfAdjoint => {}
            SaConclusion::NotSelfAdjointN1 => {
                inconsistencies
                    .push("lower semibounded yet classified with nontrivial deficiency".into());
                sa = SaConclusion::Unknown;
            }
        }
    }

    // δ' on the half-line with bounded q: semibounded operators are never
    // purely discrete. Potentials here are piecewise constant, hence bounded.
    if config.kind == InteractionKind::DeltaPrime
        && sb == SbConclusion::LowerSemibounded
        && config.support.reaches_infinity() == Some(true)
    {
        match disc {
            DiscConclusion::Unknown => {
                disc = DiscConclusion::NotDiscrete;
                propagated
                    .push("delta-prime lower semibounded with bounded q => not discrete".into());
            }
            DiscConclusion::NotDiscrete => {}
            DiscConclusion::Discrete => {
                inconsistencies
                    .push("semibounded delta-prime operator classified as discrete".into());
                disc = DiscConclusion::Unknown;
            }
        }
    }

    AggregateReport {
        self_adjointness: sa,
        semiboundedness: sb,
        discreteness: disc,
        essential_spectrum: ess,
        spectral_type: ty,
        propagated,
        inconsistencies,
    }
}

/// Run every criterion for the configuration's kind and aggregate.
pub fn analyze(config: &HamiltonianConfig) -> Report {
    let mut verdicts = Vec::new();
    match config.kind {
        InteractionKind::Delta => {
            verdicts.extend(super::delta::self_adjointness(config));
            verdicts.extend(super::delta::semiboundedness(config));
            verdicts.extend(super::delta::discreteness(config));
            verdicts.extend(super::delta::essential_and_type(config));
        }
        InteractionKind::DeltaPrime => {
            verdicts.extend(super::delta_prime::self_adjointness(config));
            verdicts.extend(super::delta_prime::semiboundedness(config));
            verdicts.extend(super::delta_prime::discreteness(config));
            verdicts.extend(super::delta_prime::essential(config));
        }
    }
    let aggregate = aggregate(config, &verdicts);
    Report { verdicts, aggregate }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sa(c: SaConclusion) -> Verdict {
        Verdict::new("t", "test", !matches!(c, SaConclusion::Unknown), Conclusion::SelfAdjointness(c))
    }

    fn sb(c: SbConclusion) -> Verdict {
        Verdict::new("t", "test", !matches!(c, SbConclusion::Unknown), Conclusion::Semiboundedness(c))
    }

    #[test]
    fn lsb_implies_sa() {
        let cfg = HamiltonianConfig::finite_delta(vec![1.0], vec![1.0]);
        let rep = aggregate(&cfg, &[sb(SbConclusion::LowerSemibounded)]);
        assert_eq!(rep.self_adjointness, SaConclusion::SelfAdjoint);
        assert!(!rep.propagated.is_empty());
    }

    #[test]
    fn delta_prime_lsb_implies_not_discrete() {
        let cfg = HamiltonianConfig::finite_delta_prime(vec![1.0], vec![1.0]);
        let rep = aggregate(&cfg, &[sb(SbConclusion::LowerSemibounded)]);
        assert_eq!(rep.discreteness, DiscConclusion::NotDiscrete);
    }

    #[test]
    fn contradiction_is_flagged() {
        let cfg = HamiltonianConfig::finite_delta(vec![1.0], vec![1.0]);
        let rep = aggregate(
            &cfg,
            &[sa(SaConclusion::SelfAdjoint), sa(SaConclusion::NotSelfAdjointN1)],
        );
        assert!(!rep.inconsistencies.is_empty());
    }
}
