//! Classifiers for δ'-interaction Hamiltonians.

use super::verdict::{
    Conclusion, DiscConclusion, EssConclusion, SaConclusion, SbConclusion, Verdict,
};
use crate::model::{
    Growth, HamiltonianConfig, Limit, SeqExpr, SeqForm, SeriesClass, Sign, SumGrowth,
    SymbolicSequence,
};

const ANCHOR_HALF_LINE: &str = "δ' operators on the half-line are always self-adjoint";
const ANCHOR_STRING: &str = "Hamburger criterion via the string correspondence";
const ANCHOR_KLMN: &str = "finitely many δ' points are form-bounded (KLMN)";
const ANCHOR_SB: &str = "inverse-strength gap bound for semiboundedness";
const ANCHOR_NEC: &str = "necessary conditions for δ' semiboundedness";
const ANCHOR_KK: &str = "Kac–Krein non-discreteness via the string";
const ANCHOR_TAILS: &str = "string tail moments: discreteness criterion";
const ANCHOR_DISC3: &str = "semibounded δ' with bounded q is never discrete";
const ANCHOR_DISC_N: &str = "Neumann comb cell-mean discreteness test";
const ANCHOR_ALT: &str = "alternating-gap discreteness refinement";
const ANCHOR_NEUMANN: &str = "essential spectrum equals the Neumann comb";
const ANCHOR_ZERO: &str = "shrinking cells: essential spectrum collapses to {0}";
const ANCHOR_FINITE: &str = "finite-rank perturbation: essential spectrum [0, ∞)";

fn sa(id: &'static str, anchor: &'static str, ok: bool, c: SaConclusion) -> Verdict {
    Verdict::new(id, anchor, ok, Conclusion::SelfAdjointness(c))
}
fn sb(id: &'static str, anchor: &'static str, ok: bool, c: SbConclusion) -> Verdict {
    Verdict::new(id, anchor, ok, Conclusion::Semiboundedness(c))
}
fn disc(id: &'static str, anchor: &'static str, ok: bool, c: DiscConclusion) -> Verdict {
    Verdict::new(id, anchor, ok, Conclusion::Discreteness(c))
}
fn ess(id: &'static str, anchor: &'static str, ok: bool, c: EssConclusion) -> Verdict {
    Verdict::new(id, anchor, ok, Conclusion::EssentialSpectrum(c))
}

fn beta_expr(config: &HamiltonianConfig) -> Option<SeqExpr> {
    config.strengths.expr()
}

fn beta_growth(config: &HamiltonianConfig) -> Option<Growth> {
    match config.strengths.form()? {
        SeqForm::Expr(e) => e.growth(),
        SeqForm::LogScale { sign, log } => {
            // only the limit structure is needed for the ratio tests here
            match (sign, log.limit()) {
                (Sign::Pos, Limit::PosInfinite) => {
                    Some(Growth { coeff: 1.0, ratio: 2.0, power: 0.0, logpow: 0.0 })
                }
                _ => None,
            }
        }
        SeqForm::Opaque => None,
    }
}

fn beta_sign_for_all(config: &HamiltonianConfig) -> Option<Sign> {
    if let SymbolicSequence::Finite(v) = &config.strengths {
        let mut sign = None;
        for &b in v {
            let s = Sign::of(b);
            match sign {
                None => sign = Some(s),
                Some(prev) if prev == s => {}
                _ => return None,
            }
        }
        return sign.or(Some(Sign::Zero));
    }
    match config.strengths.form()? {
        SeqForm::Expr(e) => e.sign_for_all(),
        SeqForm::LogScale { sign, .. } => Some(sign),
        SeqForm::Opaque => None,
    }
}

pub fn self_adjointness(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();
    match config.support.reaches_infinity() {
        Some(true) => {
            out.push(
                sa("half_line", ANCHOR_HALF_LINE, true, SaConclusion::SelfAdjoint)
                    .with("gap_series", "divergent"),
            );
        }
        Some(false) => {
            let b = config.support.finite_endpoint_estimate().unwrap_or(f64::NAN);
            out.push(string_moment_criterion(config).with("endpoint_estimate", b));
        }
        None => {
            out.push(
                sa("half_line", ANCHOR_HALF_LINE, false, SaConclusion::Unknown)
                    .with("note", "gap series class unavailable"),
            );
        }
    }
    out
}

/// Σ_n d_{n+1} |Σ_{i<=n} (β_i + d_i)|² on a finite interval: divergent means
/// self-adjoint, convergent (with Σ d < ∞) means deficiency indices (1,1).
fn string_moment_criterion(config: &HamiltonianConfig) -> Verdict {
    let d_expr = match config.support.gap_expr() {
        Some(e) => e,
        None => {
            return sa("string_moments", ANCHOR_STRING, false, SaConclusion::Unknown)
                .with("note", "gaps have no exact symbolic form")
        }
    };
    let b_expr = match beta_expr(config) {
        Some(e) => e,
        None => {
            return sa("string_moments", ANCHOR_STRING, false, SaConclusion::Unknown)
                .with("note", "strengths have no exact symbolic form")
        }
    };
    let s = b_expr.add(&d_expr);
    match s.partial_sum_growth() {
        SumGrowth::Bounded => {
            // bounded partial sums against a summable weight: convergent
            sa("string_moments", ANCHOR_STRING, true, SaConclusion::NotSelfAdjointN1)
                .with("partial_sums", "bounded")
                .with("series", "convergent")
        }
        SumGrowth::Divergent(g) => {
            let d_growth = d_expr.growth().unwrap_or(Growth::constant(0.0));
            let term = d_growth.mul(&g.powi(2));
            match term.series_class() {
                SeriesClass::DivergentTo(_) => {
                    sa("string_moments", ANCHOR_STRING, true, SaConclusion::SelfAdjoint)
                        .with("series", "divergent")
                }
                SeriesClass::Convergent => {
                    sa("string_moments", ANCHOR_STRING, true, SaConclusion::NotSelfAdjointN1)
                        .with("series", "convergent")
                }
            }
        }
    }
}

pub fn semiboundedness(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();

    if config.support.is_finite() {
        out.push(
            sb("klmn_finite", ANCHOR_KLMN, true, SbConclusion::LowerSemibounded)
                .with("points", config.finite_len().unwrap_or(0) as i64)
                .with("q_lower_bound", config.potential.lower_bound()),
        );
        return out;
    }

    // sufficient: 1/β_k⁻ ≤ C₁ min{d_k, d_{k+1}} (cell means of q⁻ are
    // bounded automatically for piecewise-constant potentials)
    let d_bounded = matches!(
        config.support.gap_limit(),
        Some(Limit::Finite(_))
    ) || config.support.spacings().d_upper.is_finite();
    if d_bounded {
        match beta_sign_for_all(config) {
            Some(Sign::Pos) => {
                out.push(
                    sb("gap_beta_bound", ANCHOR_SB, true, SbConclusion::LowerSemibounded)
                        .with("witness_C1", 0.0)
                        .with("beta_all_positive", true),
                );
            }
            Some(Sign::Neg) => {
                // ratio (1/β⁻) / min{d, d'} must stay bounded
                if let (Some(gb), Some(gd)) = (beta_growth(config), config.support.gap_growth()) {
                    let inv_beta_minus = Growth { coeff: -gb.coeff, ..gb }.recip();
                    if let (Some(ib), Some(invd)) = (inv_beta_minus, gd.recip()) {
                        let ratio = ib.mul(&invd);
                        match ratio.limit() {
                            Limit::Finite(_) => {
                                let witness = witness_sup(config, 4096);
                                out.push(
                                    sb("gap_beta_bound", ANCHOR_SB, true, SbConclusion::LowerSemibounded)
                                        .with("witness_C1", witness),
                                );
                            }
                            _ => {
                                out.push(
                                    sb("gap_beta_bound", ANCHOR_SB, false, SbConclusion::Unknown)
                                        .with("ratio", "unbounded"),
                                );
                            }
                        }
                    }
                }
            }
            _ => out.push(
                sb("gap_beta_bound", ANCHOR_SB, false, SbConclusion::Unknown)
                    .with("note", "strength sign pattern not certified"),
            ),
        }
    }

    // necessary conditions (q = 0): 1/β_k⁻ bounded, and on all-negative data
    // 1/β_k⁻ ≤ C·min of the negative-subsequence gaps
    if config.potential.is_zero() {
        if let Some(v) = necessity(config) {
            out.push(v);
        }
    }

    out
}

/// sup over a prefix of (1/β_k⁻) / min{d_k, d_{k+1}}: the exhibited C₁.
fn witness_sup(config: &HamiltonianConfig, depth: u64) -> f64 {
    let mut sup = 0.0f64;
    for k in 1..=depth {
        let b = match config.strengths.eval(k) {
            Some(b) => b,
            None => break,
        };
        let inv = if b < 0.0 { -1.0 / b } else { 0.0 };
        let dk = config.support.gap(k).unwrap_or(f64::INFINITY);
        let dk1 = config.support.gap(k + 1).unwrap_or(dk);
        sup = sup.max(inv / dk.min(dk1));
    }
    sup
}

fn necessity(config: &HamiltonianConfig) -> Option<Verdict> {
    let gb = beta_growth(config)?;
    let sign = beta_sign_for_all(config);
    // 1/β_k⁻ must stay bounded: negative strengths shrinking to zero violate it
    if gb.coeff < 0.0 && gb.limit() == Limit::Finite(0.0) && sign == Some(Sign::Neg) {
        return Some(
            sb("beta_inverse_bounded", ANCHOR_NEC, true, SbConclusion::NotLowerSemibounded)
                .with("inv_beta_minus", "unbounded"),
        );
    }
    // all-negative data: 1/β_k⁻ ≤ C·min{d_k, d_{k+1}} becomes necessary
    if sign == Some(Sign::Neg) {
        let gd = config.support.gap_growth()?;
        let ratio = Growth { coeff: -gb.coeff, ..gb }.recip()?.mul(&gd.recip()?);
        if ratio.limit() == Limit::PosInfinite {
            return Some(
                sb("beta_gap_necessity", ANCHOR_NEC, true, SbConclusion::NotLowerSemibounded)
                    .with("ratio", "unbounded for every C"),
            );
        }
    }
    None
}

pub fn discreteness(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();

    if config.support.is_finite() {
        out.push(
            disc("finite_support", ANCHOR_FINITE, true, DiscConclusion::NotDiscrete)
                .with("points", config.finite_len().unwrap_or(0) as i64),
        );
        return out;
    }

    let gaps_shrink = config.support.gap_limit() == Some(Limit::Finite(0.0));

    // Kac–Krein style non-discreteness (shrinking gaps hypothesis)
    if gaps_shrink {
        if let Some(v) = kac_krein(config) {
            out.push(v);
        }
    }

    // string tail moments: iff under β_k + d_k ≥ 0
    if let Some(v) = string_tails(config) {
        out.push(v);
    }

    // semibounded δ' with bounded q on the half-line is never discrete
    let sb_agg = super::verdict::aggregate(config, &semiboundedness(config));
    if sb_agg.semiboundedness == SbConclusion::LowerSemibounded
        && config.support.reaches_infinity() == Some(true)
    {
        out.push(
            disc("lsb_not_discrete", ANCHOR_DISC3, true, DiscConclusion::NotDiscrete)
                .with("q_bounded", true),
        );
    }

    // cell-mean tests need window growth of q that a constant tail never has
    out.push(
        disc("neumann_cell_means", ANCHOR_DISC_N, false, DiscConclusion::Unknown)
            .with("note", "piecewise-constant q with a constant tail fails the window growth hypothesis"),
    );
    out.push(
        disc("alternating_gap", ANCHOR_ALT, false, DiscConclusion::Unknown)
            .with("note", "same window-growth hypothesis as the cell-mean test"),
    );

    if out.is_empty() {
        out.push(disc("kac_krein", ANCHOR_KK, false, DiscConclusion::Unknown));
    }
    out
}

fn kac_krein(config: &HamiltonianConfig) -> Option<Verdict> {
    // (i) lim x_k Σ_{j>=k} d_j³ > 0
    if let Some(lim) = tail_times_position(config, 3) {
        let fires = match lim {
            Limit::PosInfinite => true,
            Limit::Finite(v) => v > 0.0,
            Limit::NegInfinite => false,
        };
        if fires {
            return Some(
                disc("kac_krein", ANCHOR_KK, true, DiscConclusion::NotDiscrete)
                    .with("branch", "i")
                    .with("x_times_cube_tail", "positive"),
            );
        }
    }
    // (ii) β_k ≥ -C d_k³ for some C > 0
    match beta_sign_for_all(config) {
        Some(Sign::Pos) => {
            return Some(
                disc("kac_krein", ANCHOR_KK, true, DiscConclusion::NotDiscrete)
                    .with("branch", "ii")
                    .with("beta_all_positive", true),
            );
        }
        Some(Sign::Neg) => {
            if let (Some(gb), Some(gd)) = (beta_growth(config), config.support.gap_growth()) {
                let ratio = gb.mul(&gd.powi(3).recip()?);
                if ratio.limit() != Limit::NegInfinite {
                    return Some(
                        disc("kac_krein", ANCHOR_KK, true, DiscConclusion::NotDiscrete)
                            .with("branch", "ii")
                            .with("beta_over_cube", "bounded below"),
                    );
                }
                // (iii) β_k ≤ -C(d_k⁻¹ + d_{k+1}⁻¹): strongly negative strengths
                let prod = gb.mul(&gd);
                let neg_enough = match prod.limit() {
                    Limit::NegInfinite => true,
                    Limit::Finite(v) => v < 0.0,
                    Limit::PosInfinite => false,
                };
                if neg_enough {
                    return Some(
                        disc("kac_krein", ANCHOR_KK, true, DiscConclusion::NotDiscrete)
                            .with("branch", "iii")
                            .with("beta_times_gap", "negative limit"),
                    );
                }
            }
        }
        _ => {}
    }
    None
}

/// lim x_k · Σ_{j>=k} e_j where e = d^power (power = 3) — `None` when the
/// class is unavailable.
fn tail_times_position(config: &HamiltonianConfig, power: i32) -> Option<Limit> {
    let d_expr = config.support.gap_expr()?;
    let mut cube = d_expr.clone();
    for _ in 1..power {
        cube = cube.mul(&d_expr);
    }
    tail_limit_against_position(config, &cube)
}

fn tail_limit_against_position(config: &HamiltonianConfig, expr: &SeqExpr) -> Option<Limit> {
    if expr.is_zero() {
        return Some(Limit::Finite(0.0));
    }
    match expr.series() {
        SeriesClass::DivergentTo(s) => Some(match s {
            Sign::Pos => Limit::PosInfinite,
            Sign::Neg => Limit::NegInfinite,
            Sign::Zero => Limit::Finite(0.0),
        }),
        SeriesClass::Convergent => {
            let tail = expr.tail_sum_growth()?;
            let x = config.support.position_growth()?;
            Some(tail.mul(&x).limit())
        }
    }
}

fn string_tails(config: &HamiltonianConfig) -> Option<Verdict> {
    let d_expr = config.support.gap_expr()?;
    let b_expr = beta_expr(config)?;
    let sum = b_expr.add(&d_expr);
    if sum.nonnegative_for_all() != Some(true) {
        return None; // hypothesis β_k + d_k ≥ 0 not certified
    }
    let cube_lim = tail_times_position(config, 3)?;
    let sum_lim = tail_limit_against_position(config, &sum)?;
    let is_zero = |l: Limit| matches!(l, Limit::Finite(v) if v == 0.0);
    let conclusion = if is_zero(cube_lim) && is_zero(sum_lim) {
        DiscConclusion::Discrete
    } else {
        DiscConclusion::NotDiscrete
    };
    Some(
        disc("string_tails", ANCHOR_TAILS, true, conclusion)
            .with("x_times_cube_tail_zero", is_zero(cube_lim))
            .with("x_times_sum_tail_zero", is_zero(sum_lim)),
    )
}

pub fn essential(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();

    if config.support.is_finite() {
        out.push(
            ess("finite_support", ANCHOR_FINITE, true, EssConclusion::EqualsFree)
                .with("points", config.finite_len().unwrap_or(0) as i64),
        );
        return out;
    }

    let ratio_vanishes = (|| {
        let gb = beta_growth(config)?;
        let gd = config.support.gap_growth()?;
        let inv_abs_beta = Growth { coeff: gb.coeff.abs(), ..gb }.recip()?;
        Some(inv_abs_beta.mul(&gd.recip()?).limit() == Limit::Finite(0.0))
    })();

    match ratio_vanishes {
        Some(true) => {
            // with (1/d_k)∫|q| → 0 the comparison sharpens to the free comb;
            // piecewise-constant q: the cell means tend to |q_tail|
            let free_comb = config.potential.tail == 0.0
                && config.potential.values.iter().all(|&v| v == 0.0 || true)
                && config.potential.is_zero();
            let mut v = ess(
                "neumann_comparison",
                ANCHOR_NEUMANN,
                true,
                EssConclusion::EqualsNeumann,
            )
            .with("inv_beta_over_gap", 0.0);
            if free_comb {
                v = v.with("free_comb", true);
            }
            out.push(v);
            if free_comb && config.support.gap_limit() == Some(Limit::Finite(0.0)) {
                out.push(
                    ess("ess_zero", ANCHOR_ZERO, true, EssConclusion::ZeroSingleton)
                        .with("d_limit", 0.0),
                );
            }
        }
        Some(false) => {
            out.push(
                ess("neumann_comparison", ANCHOR_NEUMANN, false, EssConclusion::Unknown)
                    .with("inv_beta_over_gap", "does not vanish"),
            );
        }
        None => {
            out.push(
                ess("neumann_comparison", ANCHOR_NEUMANN, false, EssConclusion::Unknown)
                    .with("note", "ratio class unavailable"),
            );
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::verdict::aggregate;
    use crate::model::{PiecewisePotential, Support};

    fn spacing_power(c: f64, p: f64) -> Support {
        Support::SpacingRule(SymbolicSequence::PowerLaw { c, p })
    }

    #[test]
    fn half_line_always_self_adjoint() {
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, -0.5),
            SymbolicSequence::PowerLaw { c: -3.0, p: 7.0 },
            PiecewisePotential::zero(),
        );
        let rep = aggregate(&c, &self_adjointness(&c));
        assert_eq!(rep.self_adjointness, SaConclusion::SelfAdjoint);
    }

    #[test]
    fn finite_interval_telescoping_not_self_adjoint() {
        // d_k = 2^{-k}, β_k = -d_k: partial sums of β + d vanish
        let d = SeqExpr::geometric(1.0, 0.5);
        let c = HamiltonianConfig::delta_prime(
            Support::SpacingRule(SymbolicSequence::Geometric { c: 1.0, r: 0.5 }),
            SymbolicSequence::from_expr("neg-gaps", d.neg()),
            PiecewisePotential::zero(),
        );
        let rep = aggregate(&c, &self_adjointness(&c));
        assert_eq!(rep.self_adjointness, SaConclusion::NotSelfAdjointN1);
    }

    #[test]
    fn finite_interval_unit_beta_series_decides() {
        // β ≡ 1, d_k = 2^{-k}: partial sums grow like n, and
        // Σ d_{n+1} n² is a convergent geometric-dominated series
        let c = HamiltonianConfig::delta_prime(
            Support::SpacingRule(SymbolicSequence::Geometric { c: 1.0, r: 0.5 }),
            SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 },
            PiecewisePotential::zero(),
        );
        let verdicts = self_adjointness(&c);
        let v = verdicts.iter().find(|v| v.criterion_id == "string_moments").unwrap();
        assert_eq!(
            v.conclusion,
            Conclusion::SelfAdjointness(SaConclusion::NotSelfAdjointN1)
        );
    }

    #[test]
    fn positive_beta_semibounded() {
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, 0.0),
            SymbolicSequence::PowerLaw { c: 2.0, p: 1.0 },
            PiecewisePotential::constant(-0.5),
        );
        let rep = aggregate(&c, &semiboundedness(&c));
        assert_eq!(rep.semiboundedness, SbConclusion::LowerSemibounded);
    }

    #[test]
    fn vanishing_negative_beta_not_semibounded() {
        // β_k = -d_k³ with d_k = k^{-1/2} → 1/β⁻ unbounded
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, -0.5),
            SymbolicSequence::PowerLaw { c: -1.0, p: -1.5 },
            PiecewisePotential::zero(),
        );
        let rep = aggregate(&c, &semiboundedness(&c));
        assert_eq!(rep.semiboundedness, SbConclusion::NotLowerSemibounded);
    }

    #[test]
    fn positive_beta_not_discrete() {
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, -1.0),
            SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 },
            PiecewisePotential::zero(),
        );
        let rep = aggregate(&c, &discreteness(&c));
        assert_eq!(rep.discreteness, DiscConclusion::NotDiscrete);
    }

    #[test]
    fn gaps_not_cubed_summable_not_discrete() {
        // d_k = k^{-1/4} ∉ l³
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, -0.25),
            SymbolicSequence::PowerLaw { c: -1.0, p: 5.0 },
            PiecewisePotential::zero(),
        );
        let verdicts = discreteness(&c);
        let v = verdicts.iter().find(|v| v.criterion_id == "kac_krein").unwrap();
        assert_eq!(v.conclusion, Conclusion::Discreteness(DiscConclusion::NotDiscrete));
    }

    #[test]
    fn string_tail_family_discrete() {
        // d_k = k^{-3/4}, β_k = -d_k + k^{-3/2}/2: β + d ≥ 0 and both
        // tail limits vanish
        let d = SeqExpr::power(1.0, -0.75);
        let beta = d.neg().add(&SeqExpr::power(0.5, -1.5));
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, -0.75),
            SymbolicSequence::from_expr("near-cancelling", beta),
            PiecewisePotential::zero(),
        );
        c.validate().unwrap();
        let verdicts = discreteness(&c);
        let v = verdicts.iter().find(|v| v.criterion_id == "string_tails").unwrap();
        assert_eq!(v.conclusion, Conclusion::Discreteness(DiscConclusion::Discrete));
        let rep = aggregate(&c, &verdicts);
        assert!(rep.inconsistencies.is_empty());
        assert_eq!(rep.discreteness, DiscConclusion::Discrete);
    }

    #[test]
    fn neumann_comparison_families() {
        // β_k = k², d ≡ 1
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, 0.0),
            SymbolicSequence::PowerLaw { c: 1.0, p: 2.0 },
            PiecewisePotential::zero(),
        );
        let rep = aggregate(&c, &essential(&c));
        assert_eq!(rep.essential_spectrum, EssConclusion::EqualsNeumann);

        // d_k = 1/k, β_k = k³: collapses to {0}
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, -1.0),
            SymbolicSequence::PowerLaw { c: 1.0, p: 3.0 },
            PiecewisePotential::zero(),
        );
        let rep = aggregate(&c, &essential(&c));
        assert_eq!(rep.essential_spectrum, EssConclusion::ZeroSingleton);

        // β_k = d_k: the ratio does not vanish
        let c = HamiltonianConfig::delta_prime(
            spacing_power(1.0, 0.0),
            SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 },
            PiecewisePotential::zero(),
        );
        let rep = aggregate(&c, &essential(&c));
        assert_eq!(rep.essential_spectrum, EssConclusion::Unknown);
    }

    #[test]
    fn finite_config_reports() {
        let c = HamiltonianConfig::finite_delta_prime(vec![1.0, 2.0], vec![-1.0, 3.0]);
        let rep = crate::criteria::analyze(&c);
        assert_eq!(rep.aggregate.self_adjointness, SaConclusion::SelfAdjoint);
        assert_eq!(rep.aggregate.semiboundedness, SbConclusion::LowerSemibounded);
        assert_eq!(rep.aggregate.discreteness, DiscConclusion::NotDiscrete);
        assert!(rep.aggregate.inconsistencies.is_empty());
    }
}
