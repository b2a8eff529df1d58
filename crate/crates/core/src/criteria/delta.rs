//! Classifiers for δ-interaction Hamiltonians.

use super::verdict::{
    Conclusion, DiscConclusion, EssConclusion, SaConclusion, SbConclusion, TypeConclusion,
    Verdict,
};
use crate::model::{
    window_functional, Growth, HamiltonianConfig, Limit, SeqExpr, SeqForm, SeriesClass, Sign,
    Support, SymbolicSequence, WindowPart, WindowTarget,
};

fn sa(id: &'static str, anchor: &'static str, applicable: bool, c: SaConclusion) -> Verdict {
    Verdict::new(id, anchor, applicable, Conclusion::SelfAdjointness(c))
}

fn sb(id: &'static str, anchor: &'static str, applicable: bool, c: SbConclusion) -> Verdict {
    Verdict::new(id, anchor, applicable, Conclusion::Semiboundedness(c))
}

fn disc(id: &'static str, anchor: &'static str, applicable: bool, c: DiscConclusion) -> Verdict {
    Verdict::new(id, anchor, applicable, Conclusion::Discreteness(c))
}

/// Exact expression of the strengths, when available.
fn strength_expr(config: &HamiltonianConfig) -> Option<SeqExpr> {
    config.strengths.expr()
}

/// Leading growth of the strengths, when available.
fn strength_growth(config: &HamiltonianConfig) -> Option<Growth> {
    match config.strengths.form()? {
        SeqForm::Expr(e) => {
            if e.is_zero() {
                Some(Growth::constant(0.0))
            } else {
                e.growth()
            }
        }
        _ => None,
    }
}

/// Whether the support is the unit-harmonic lattice d_k = 1/k.
fn is_harmonic_spacing(support: &Support) -> bool {
    matches!(support.gap_expr(), Some(e) if e == SeqExpr::power(1.0, -1.0))
}

/// The sparse square-root family x_k = 2√k, α_k = -C√k with C > 0.
fn sqrt_lattice_constant(config: &HamiltonianConfig) -> Option<f64> {
    if !config.potential.is_zero() {
        return None;
    }
    match (&config.support, &config.strengths) {
        (
            Support::PowerPositions { c: xc, p: xp },
            SymbolicSequence::PowerLaw { c: ac, p: ap },
        ) if *xc == 2.0 && *xp == 0.5 && *ap == 0.5 && *ac < 0.0 => Some(-ac),
        _ => None,
    }
}

pub fn self_adjointness(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();

    // uniformly separated points with a bounded-below potential
    let gap_pos = config.support.gap_bounded_below();
    out.push(match gap_pos {
        Some(true) => sa("gesztesy_kirsch", ANCHOR_GK, true, SaConclusion::SelfAdjoint)
            .with("d_star_positive", true)
            .with("q_lower_bound", config.potential.lower_bound()),
        Some(false) => sa("gesztesy_kirsch", ANCHOR_GK, false, SaConclusion::Unknown)
            .with("d_star_positive", false),
        None => sa("gesztesy_kirsch", ANCHOR_GK, false, SaConclusion::Unknown)
            .with("note", "gap infimum not certified"),
    });

    // quadratic growth test: α_k ≥ -C₃x_k - C₄ under separated points
    if gap_pos == Some(true) {
        let v = match shubin_stolz_holds(config) {
            Some(true) => sa("shubin_stolz", ANCHOR_SS, true, SaConclusion::SelfAdjoint)
                .with("alpha_over_x_bounded", true),
            Some(false) => sa("shubin_stolz", ANCHOR_SS, false, SaConclusion::Unknown)
                .with("alpha_over_x_bounded", false),
            None => sa("shubin_stolz", ANCHOR_SS, false, SaConclusion::Unknown)
                .with("note", "growth comparison unavailable"),
        };
        out.push(v);
    }

    // Σ d_k² = ∞ (symbolic supports)
    if !config.support.is_finite() {
        let v = match config.support.gap_growth() {
            Some(g) => {
                let class = g.powi(2).series_class();
                match class {
                    SeriesClass::DivergentTo(Sign::Pos) => {
                        sa("carleman", ANCHOR_CARLEMAN, true, SaConclusion::SelfAdjoint)
                            .with("gap_square_series", "divergent")
                    }
                    _ => sa("carleman", ANCHOR_CARLEMAN, false, SaConclusion::Unknown)
                        .with("gap_square_series", "convergent"),
                }
            }
            None => sa("carleman", ANCHOR_CARLEMAN, false, SaConclusion::Unknown)
                .with("note", "gap class unavailable"),
        };
        out.push(v);
    }

    if is_harmonic_spacing(&config.support) {
        out.extend(harmonic_family(config));
    }

    out
}

fn shubin_stolz_holds(config: &HamiltonianConfig) -> Option<bool> {
    if config.support.is_finite() {
        // finitely many values: constants absorb everything
        return Some(true);
    }
    let g = strength_growth(config)?;
    if g.coeff >= 0.0 {
        return Some(true);
    }
    let x = config.support.position_growth()?;
    let ratio = Growth { coeff: -g.coeff, ..g }.mul(&x.recip()?);
    match ratio.limit() {
        Limit::Finite(_) => Some(true),
        Limit::PosInfinite => Some(false),
        Limit::NegInfinite => Some(true),
    }
}

const ANCHOR_GK: &str = "Gesztesy–Kirsch (1985)";
const ANCHOR_SS: &str = "Shubin Christ–Stolz (1994) growth test";
const ANCHOR_CARLEMAN: &str = "Carleman test for Jacobi matrices";
const ANCHOR_HARMONIC: &str = "Kostyuchenko–Mirzoev-type tests on the 1/k lattice";
const ANCHOR_BRINCK: &str = "Brinck condition / Brasche (1985)";
const ANCHOR_GAP_BOUNDED: &str = "uniformly separated points: semibounded iff inf α > -∞";
const ANCHOR_MOLCHANOV: &str = "Molchanov-type discreteness criterion";
const ANCHOR_RATIO: &str = "gap-ratio discreteness test α_k/d_k → ∞";
const ANCHOR_CHIHARA: &str = "Chihara condition for Jacobi matrices";
const ANCHOR_IK: &str = "Ismagilov–Kostyuchenko (2010)";
const ANCHOR_SQRT: &str = "square-root lattice family, discrete iff C > 4";
const ANCHOR_SPACING_NEC: &str = "discreteness requires d_k → 0 (Jacobi correspondence)";
const ANCHOR_FINITE: &str = "finite-rank perturbation: essential spectrum [0, ∞)";
const ANCHOR_BIRMAN: &str = "Birman stability of the essential spectrum";
const ANCHOR_AC: &str = "Kato–Rosenblum stability of the ac spectrum";
const ANCHOR_AC_EMPTY: &str = "unbounded strengths: empty ac spectrum (Shubin Christ–Stolz, Mikhailets)";
const ANCHOR_LOT: &str = "Lotoreichik (2011) sparse-support partition";

/// The five labeled branches on the harmonic lattice d_k = 1/k.
fn harmonic_family(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();
    let expr = match strength_expr(config) {
        Some(e) => e,
        None => {
            return vec![sa("harmonic_family", ANCHOR_HARMONIC, false, SaConclusion::Unknown)
                .with("note", "strengths have no exact symbolic form")]
        }
    };

    // (i) Σ |α_k| / k³ = ∞
    if let Some(sign) = expr.eventual_sign() {
        let abs_expr = if sign == Sign::Neg { expr.neg() } else { expr.clone() };
        let series = abs_expr.mul(&SeqExpr::power(1.0, -3.0)).series();
        if matches!(series, SeriesClass::DivergentTo(Sign::Pos)) {
            out.push(
                sa("harmonic_family", ANCHOR_HARMONIC, true, SaConclusion::SelfAdjoint)
                    .with("branch", "i")
                    .with("series_alpha_over_k3", "divergent"),
            );
        }
    }

    // (ii) α_k ≤ -2(2k+1) + O(1/k)
    let slack = expr.add(&SeqExpr::from_terms(vec![
        crate::model::Monomial { coeff: 4.0, ratio: 1.0, power: 1.0 },
        crate::model::Monomial { coeff: 2.0, ratio: 1.0, power: 0.0 },
    ]));
    let branch_ii = match slack.eventual_sign() {
        Some(Sign::Neg) | Some(Sign::Zero) => true,
        Some(Sign::Pos) => slack
            .growth()
            .map(|g| g.ratio < 1.0 || (g.ratio == 1.0 && g.power <= -1.0))
            .unwrap_or(false),
        None => false,
    };
    if branch_ii {
        out.push(
            sa("harmonic_family", ANCHOR_HARMONIC, true, SaConclusion::SelfAdjoint)
                .with("branch", "ii"),
        );
    }

    // (iii) α_k ≥ -C/k: k·α_k bounded below
    let scaled = expr.mul(&SeqExpr::power(1.0, 1.0));
    if scaled.limit() != Limit::NegInfinite {
        out.push(
            sa("harmonic_family", ANCHOR_HARMONIC, true, SaConclusion::SelfAdjoint)
                .with("branch", "iii"),
        );
    }

    // (iv) α_k = -(2k+1) + O(k^{-ε})
    let dev = expr.add(&SeqExpr::from_terms(vec![
        crate::model::Monomial { coeff: 2.0, ratio: 1.0, power: 1.0 },
        crate::model::Monomial { coeff: 1.0, ratio: 1.0, power: 0.0 },
    ]));
    if dev.limit() == Limit::Finite(0.0) || dev.is_zero() {
        out.push(
            sa("harmonic_family", ANCHOR_HARMONIC, true, SaConclusion::NotSelfAdjointN1)
                .with("branch", "iv")
                .with("deviation_limit", 0.0),
        );
    }

    // (v) α_k = -a(2k+1) + O(1/k) with a ∈ (0, 2)
    let c1 = expr.coeff_of(1.0, 1.0);
    let a = -c1 / 2.0;
    if a > 0.0 && a < 2.0 && a != 1.0 {
        let c0 = expr.coeff_of(1.0, 0.0);
        if c0 == -a {
            let rest = expr.without(1.0, 1.0).without(1.0, 0.0);
            let small = rest.is_zero()
                || rest
                    .growth()
                    .map(|g| g.ratio < 1.0 || (g.ratio == 1.0 && g.power <= -1.0))
                    .unwrap_or(false);
            if small {
                out.push(
                    sa("harmonic_family", ANCHOR_HARMONIC, true, SaConclusion::NotSelfAdjointN1)
                        .with("branch", "v")
                        .with("a", a),
                );
            }
        }
    }

    if out.is_empty() {
        out.push(
            sa("harmonic_family", ANCHOR_HARMONIC, false, SaConclusion::Unknown)
                .with("note", "no branch matched"),
        );
    }
    out
}

pub fn semiboundedness(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();

    let q_window = window_functional(
        WindowTarget::Potential(&config.potential),
        1.0,
        WindowPart::Negative,
    )
    .expect("potential windows are exact");
    let a_window = window_functional(
        WindowTarget::Strengths { support: &config.support, strengths: &config.strengths },
        1.0,
        WindowPart::Negative,
    );

    match &a_window {
        Ok(report) => {
            let q_bound = q_window.finite_bound().unwrap_or(f64::INFINITY);
            if let Some(bound) = report.finite_bound() {
                out.push(
                    sb("brinck", ANCHOR_BRINCK, true, SbConclusion::LowerSemibounded)
                        .with("q_minus_window_sup", q_bound)
                        .with("alpha_minus_window_sup", bound),
                );
            } else {
                out.push(
                    sb("brinck", ANCHOR_BRINCK, false, SbConclusion::Unknown)
                        .with("alpha_minus_windows", "divergent"),
                );
                // necessity clause: all-negative data
                let all_neg = all_nonpositive(config);
                if all_neg == Some(true) && config.potential.upper_bound() <= 0.0 {
                    out.push(
                        sb("brinck_necessity", ANCHOR_BRINCK, true, SbConclusion::NotLowerSemibounded)
                            .with("all_data_nonpositive", true)
                            .with("alpha_minus_windows", "divergent"),
                    );
                }
            }
        }
        Err(_) => {
            out.push(
                sb("brinck", ANCHOR_BRINCK, false, SbConclusion::Unknown)
                    .with("note", "window asymptotics unavailable"),
            );
        }
    }

    // uniformly separated points with bounded q: semibounded iff inf α > -∞
    if config.support.gap_bounded_below() == Some(true) {
        let v = match strength_lower_bound(config) {
            Some(Some(bound)) => {
                sb("uniform_gap", ANCHOR_GAP_BOUNDED, true, SbConclusion::LowerSemibounded)
                    .with("inf_alpha", bound)
            }
            Some(None) => {
                sb("uniform_gap", ANCHOR_GAP_BOUNDED, true, SbConclusion::NotLowerSemibounded)
                    .with("inf_alpha", "-infinity")
            }
            None => sb("uniform_gap", ANCHOR_GAP_BOUNDED, false, SbConclusion::Unknown)
                .with("note", "strength range not certified"),
        };
        out.push(v);
    }

    // strongly attractive clustered strengths force unboundedness from below
    if let Some(v) = ismagilov_kostyuchenko(config) {
        if v.0 {
            out.push(
                sb("ismagilov_kostyuchenko", ANCHOR_IK, true, SbConclusion::NotLowerSemibounded)
                    .with("expression_limit", "+infinity"),
            );
        }
    }

    if let Some(c) = sqrt_lattice_constant(config) {
        if c != 4.0 {
            out.push(
                sb("sqrt_lattice_family", ANCHOR_SQRT, true, SbConclusion::NotLowerSemibounded)
                    .with("C", c),
            );
        }
    }

    out
}

/// inf over k of α: Some(Some(bound)) finite, Some(None) = -∞.
fn strength_lower_bound(config: &HamiltonianConfig) -> Option<Option<f64>> {
    if let SymbolicSequence::Finite(v) = &config.strengths {
        let m = v.iter().cloned().fold(f64::INFINITY, f64::min);
        return Some(Some(if v.is_empty() { 0.0 } else { m }));
    }
    match config.strengths.form()? {
        SeqForm::Expr(e) => match e.limit() {
            Limit::NegInfinite => Some(None),
            _ => e.range_bounds().map(|(lo, _)| Some(lo)),
        },
        SeqForm::LogScale { sign, log } => match (sign, log.limit()) {
            (Sign::Neg, Limit::PosInfinite) => Some(None),
            (Sign::Neg, _) => None,
            _ => Some(Some(0.0)),
        },
        SeqForm::Opaque => None,
    }
}

fn all_nonpositive(config: &HamiltonianConfig) -> Option<bool> {
    if let SymbolicSequence::Finite(v) = &config.strengths {
        return Some(v.iter().all(|&a| a <= 0.0));
    }
    match config.strengths.form()? {
        SeqForm::Expr(e) => e
            .sign_for_all()
            .map(|s| matches!(s, Sign::Neg | Sign::Zero)),
        SeqForm::LogScale { sign, .. } => Some(sign == Sign::Neg),
        SeqForm::Opaque => None,
    }
}

fn all_nonnegative(config: &HamiltonianConfig) -> Option<bool> {
    if let SymbolicSequence::Finite(v) = &config.strengths {
        return Some(v.iter().all(|&a| a >= 0.0));
    }
    match config.strengths.form()? {
        SeqForm::Expr(e) => e
            .sign_for_all()
            .map(|s| matches!(s, Sign::Pos | Sign::Zero)),
        SeqForm::LogScale { sign, .. } => Some(sign == Sign::Pos),
        SeqForm::Opaque => None,
    }
}

/// The Ismagilov–Kostyuchenko expression |α_k|/(d_k + d_{k+1}) - 2/(d_k d_{k+1}):
/// Some((fires, certificate_limit)) when evaluable.
fn ismagilov_kostyuchenko(config: &HamiltonianConfig) -> Option<(bool, String)> {
    if all_nonpositive(config) != Some(true) {
        return None;
    }
    if config.support.gap_limit()? != Limit::Finite(0.0) {
        return None;
    }
    let ga = strength_growth(config)?;
    if ga.coeff >= 0.0 {
        return None;
    }
    let gd = config.support.gap_growth()?;
    let sum_gaps = Growth { coeff: 2.0 * gd.coeff, ..gd };
    let t1 = Growth { coeff: -ga.coeff, ..ga }.mul(&sum_gaps.recip()?);
    let t2 = gd.powi(2).recip()?;
    let diff = t1.add(&Growth { coeff: -2.0 * t2.coeff, ..t2 });
    match diff {
        Some(g) if g.limit() == Limit::PosInfinite => Some((true, "+infinity".into())),
        Some(_) => Some((false, "bounded or negative".into())),
        None => None, // exact leading cancellation: undecidable at this order
    }
}

pub fn discreteness(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();

    if config.support.is_finite() {
        out.push(
            disc("finite_support", ANCHOR_FINITE, true, DiscConclusion::NotDiscrete)
                .with("points", config.finite_len().unwrap_or(0) as i64),
        );
        out.push(
            disc("molchanov", ANCHOR_MOLCHANOV, false, DiscConclusion::Unknown)
                .with("note", "finite data has no x → ∞ window limit"),
        );
        return out;
    }

    let sb_report = super::verdict::aggregate(config, &semiboundedness(config));
    let sa_report = super::verdict::aggregate(config, &self_adjointness(config));
    let lsb = sb_report.semiboundedness == SbConclusion::LowerSemibounded;
    let sa_ok = sa_report.self_adjointness == SaConclusion::SelfAdjoint;

    // α_k/d_k → +∞ with shrinking gaps
    let ratio_limit = (|| {
        let ga = strength_growth(config)?;
        let gd = config.support.gap_growth()?;
        Some(ga.mul(&gd.recip()?).limit())
    })();
    let gaps_shrink = config.support.gap_limit() == Some(Limit::Finite(0.0));
    let alpha_window_ok = window_functional(
        WindowTarget::Strengths { support: &config.support, strengths: &config.strengths },
        1.0,
        WindowPart::Negative,
    )
    .map(|r| !r.is_divergent())
    .unwrap_or(false);
    match ratio_limit {
        Some(Limit::PosInfinite) if gaps_shrink && alpha_window_ok => {
            out.push(
                disc("strength_gap_ratio", ANCHOR_RATIO, true, DiscConclusion::Discrete)
                    .with("alpha_over_d", "+infinity")
                    .with("d_limit", 0.0),
            );
        }
        _ => {}
    }

    // Molchanov window criterion (iff, under the semiboundedness hypotheses)
    if lsb && alpha_window_ok {
        match molchanov_window_class(config, ratio_limit) {
            Some(true) => out.push(
                disc("molchanov", ANCHOR_MOLCHANOV, true, DiscConclusion::Discrete)
                    .with("window_sums", "divergent for every width"),
            ),
            Some(false) => out.push(
                disc("molchanov", ANCHOR_MOLCHANOV, true, DiscConclusion::NotDiscrete)
                    .with("window_sums", "bounded for some width"),
            ),
            None => out.push(
                disc("molchanov", ANCHOR_MOLCHANOV, false, DiscConclusion::Unknown)
                    .with("note", "window class not certified"),
            ),
        }
    }

    // Chihara test on the Jacobi matrix
    if sa_ok && gaps_shrink {
        if let Some(v) = chihara(config) {
            out.push(v);
        }
    }

    if let Some((fires, cert)) = ismagilov_kostyuchenko(config) {
        if fires {
            out.push(
                disc("ismagilov_kostyuchenko", ANCHOR_IK, true, DiscConclusion::Discrete)
                    .with("expression_limit", cert),
            );
        }
    }

    if let Some(c) = sqrt_lattice_constant(config) {
        if c > 4.0 {
            out.push(
                disc("sqrt_lattice_family", ANCHOR_SQRT, true, DiscConclusion::Discrete).with("C", c),
            );
        } else if c < 4.0 {
            out.push(
                disc("sqrt_lattice_family", ANCHOR_SQRT, true, DiscConclusion::NotDiscrete)
                    .with("C", c),
            );
        }
    }

    // necessary: purely discrete spectrum needs d_k → 0
    if sa_ok {
        if let Some(lim) = config.support.gap_limit() {
            let d_upper_finite = config.support.spacings().d_upper.is_finite();
            if d_upper_finite && lim != Limit::Finite(0.0) && lim != Limit::PosInfinite {
                out.push(
                    disc("spacing_necessity", ANCHOR_SPACING_NEC, true, DiscConclusion::NotDiscrete)
                        .with("d_limit_nonzero", true),
                );
            }
        }
    }

    if out.is_empty() {
        out.push(disc("molchanov", ANCHOR_MOLCHANOV, false, DiscConclusion::Unknown));
    }
    out
}

/// Window sums Σ_{x_k ∈ [x, x+ε]} α_k + ∫ q as x → ∞, for every ε: Some(true)
/// when they diverge to +∞ for every width, Some(false) when some width keeps
/// them bounded.
fn molchanov_window_class(
    config: &HamiltonianConfig,
    ratio_limit: Option<Limit>,
) -> Option<bool> {
    // piecewise-constant potentials contribute ε·q_tail, never +∞
    if config.support.gap_bounded_below() == Some(true) {
        // widths below the gap eventually see empty windows
        return Some(false);
    }
    if config.support.gap_limit() == Some(Limit::Finite(0.0)) {
        return match ratio_limit? {
            Limit::PosInfinite => Some(true),
            Limit::NegInfinite | Limit::Finite(_) => Some(false),
        };
    }
    None
}

fn chihara(config: &HamiltonianConfig) -> Option<Verdict> {
    let ga = strength_growth(config)?;
    let gd = config.support.gap_growth()?;
    if gd.limit() == Limit::PosInfinite {
        return None; // needs sup d < ∞
    }
    let abs_ratio = Growth { coeff: ga.coeff.abs(), ..ga }.mul(&gd.recip()?);
    if abs_ratio.limit() != Limit::PosInfinite {
        return None;
    }
    let prod = ga.mul(&gd);
    let fires = match prod.limit() {
        Limit::PosInfinite | Limit::NegInfinite => Some(true),
        Limit::Finite(l) => {
            if l > 0.0 {
                Some(true)
            } else if l == 0.0 {
                // 1/(α_k d_k) → ±∞ by the sign of the product
                Some(prod.coeff > 0.0)
            } else if l < -4.0 {
                Some(true)
            } else if l == -4.0 {
                None // boundary case left open
            } else {
                Some(false)
            }
        }
    };
    let limit_cert = match prod.limit() {
        Limit::Finite(l) if l != 0.0 => 1.0 / l,
        _ => 0.0,
    };
    match fires {
        Some(true) => Some(
            disc("chihara", ANCHOR_CHIHARA, true, DiscConclusion::Discrete)
                .with("lim_inv_alpha_d", limit_cert),
        ),
        Some(false) => Some(
            disc("chihara", ANCHOR_CHIHARA, false, DiscConclusion::Unknown)
                .with("lim_inv_alpha_d", limit_cert)
                .with("note", "limit not above -1/4"),
        ),
        None => Some(
            disc("chihara", ANCHOR_CHIHARA, false, DiscConclusion::Unknown)
                .with("note", "boundary value -1/4"),
        ),
    }
}

pub fn essential_and_type(config: &HamiltonianConfig) -> Vec<Verdict> {
    let mut out = Vec::new();

    let ess =
        |id: &'static str, anchor: &'static str, ok: bool, c: EssConclusion| -> Verdict {
            Verdict::new(id, anchor, ok, Conclusion::EssentialSpectrum(c))
        };
    let ty = |id: &'static str, anchor: &'static str, ok: bool, c: TypeConclusion| -> Verdict {
        Verdict::new(id, anchor, ok, Conclusion::SpectralType(c))
    };

    // Birman stability: windowed |α| sums vanish at infinity
    if config.support.is_finite() {
        out.push(
            ess("birman", ANCHOR_BIRMAN, true, EssConclusion::EqualsFree)
                .with("alpha_abs_windows", "eventually empty"),
        );
    } else if let (Some(ga), Some(gd)) = (strength_growth(config), config.support.gap_growth()) {
        let ratio = gd
            .recip()
            .map(|inv| Growth { coeff: ga.coeff.abs(), ..ga }.mul(&inv).limit());
        if ratio == Some(Limit::Finite(0.0))
            || (ga.coeff == 0.0)
        {
            out.push(
                ess("birman", ANCHOR_BIRMAN, true, EssConclusion::EqualsFree)
                    .with("lim_alpha_over_d", 0.0),
            );
        } else {
            out.push(ess("birman", ANCHOR_BIRMAN, false, EssConclusion::Unknown));
        }
    } else {
        out.push(ess("birman", ANCHOR_BIRMAN, false, EssConclusion::Unknown));
    }

    // ac-spectrum stability: Σ |α_k| / d_{k+1} < ∞ under bounded gaps
    let ac_applicable = if config.support.is_finite() {
        Some(true)
    } else {
        match (strength_growth(config), config.support.gap_growth()) {
            (Some(ga), Some(gd)) => {
                if gd.limit() == Limit::PosInfinite {
                    None
                } else {
                    gd.recip().map(|inv| {
                        Growth { coeff: ga.coeff.abs(), ..ga }
                            .mul(&inv)
                            .series_class()
                            == SeriesClass::Convergent
                    })
                }
            }
            _ => None,
        }
    };
    match ac_applicable {
        Some(true) => out.push(
            ty("ac_stability", ANCHOR_AC, true, TypeConclusion::AcPreserved)
                .with("alpha_over_gap_series", "convergent"),
        ),
        Some(false) => out.push(ty("ac_stability", ANCHOR_AC, false, TypeConclusion::Unknown)),
        None => out.push(
            ty("ac_stability", ANCHOR_AC, false, TypeConclusion::Unknown)
                .with("note", "hypotheses not certified"),
        ),
    }

    // unbounded strengths empty the ac spectrum under separated points
    if config.support.gap_bounded_below() == Some(true) && !config.support.is_finite() {
        let abs_unbounded = strength_growth(config).map(|g| {
            Growth { coeff: g.coeff.abs(), ..g }.limit() == Limit::PosInfinite
        });
        let nonneg = all_nonnegative(config);
        match abs_unbounded {
            Some(true) => {
                let branch = if nonneg == Some(true) { "i" } else { "ii" };
                out.push(
                    ty("ac_empty_unbounded", ANCHOR_AC_EMPTY, true, TypeConclusion::AcEmpty)
                        .with("branch", branch)
                        .with("limsup_abs_alpha", "+infinity"),
                );
            }
            Some(false) => {
                out.push(ty("ac_empty_unbounded", ANCHOR_AC_EMPTY, false, TypeConclusion::Unknown))
            }
            None => out.push(
                ty("ac_empty_unbounded", ANCHOR_AC_EMPTY, false, TypeConclusion::Unknown)
                    .with("note", "strength growth unavailable"),
            ),
        }
    }

    // sparse supports: d_k/d_{k-1} → ∞ with a = liminf d_k/(d_{k-1} α_k²)
    if let Some(v) = lotoreichik(config) {
        out.push(v);
    }

    out
}

/// ln-scale of a sequence: exact polynomial log for super-geometric custom
/// forms and geometric sequences.
fn log_scale(seq: &SymbolicSequence) -> Option<(Sign, SeqExpr)> {
    match seq.form()? {
        SeqForm::LogScale { sign, log } => Some((sign, log)),
        SeqForm::Expr(e) => {
            let lead = e.leading()?;
            if e.terms().len() == 1 && lead.power == 0.0 && lead.ratio > 0.0 && lead.coeff != 0.0 {
                // c·r^k: ln = ln|c| + k ln r
                let log = SeqExpr::from_terms(vec![
                    crate::model::Monomial { coeff: lead.ratio.ln(), ratio: 1.0, power: 1.0 },
                    crate::model::Monomial { coeff: lead.coeff.abs().ln(), ratio: 1.0, power: 0.0 },
                ]);
                Some((Sign::of(lead.coeff), log))
            } else {
                None
            }
        }
        SeqForm::Opaque => None,
    }
}

fn lotoreichik(config: &HamiltonianConfig) -> Option<Verdict> {
    let d_seq = match &config.support {
        Support::SpacingRule(seq) => seq,
        _ => return None,
    };
    let (d_sign, d_log) = log_scale(d_seq)?;
    if d_sign != Sign::Pos {
        return None;
    }
    let ratio_log = d_log.poly_difference()?;
    if ratio_log.limit() != Limit::PosInfinite {
        return None; // not sparse in the required sense
    }
    let (a_sign, a_log) = log_scale(&config.strengths)?;
    if a_sign != Sign::Pos || a_log.limit() != Limit::PosInfinite {
        return None; // needs α_k → +∞
    }
    // ln( d_k / (d_{k-1} α_k²) ) = Δ ln d - 2 ln α
    let expr = ratio_log.sub(&a_log.scale(2.0));
    let a = match expr.limit() {
        Limit::Finite(v) => v.exp(),
        Limit::PosInfinite => f64::INFINITY,
        Limit::NegInfinite => return None, // a = 0 is outside the theorem
    };
    let conclusion = if a.is_finite() {
        TypeConclusion::SparsePartition { a }
    } else {
        // a = ∞ requires all strengths positive; mixed signs are open
        match all_nonnegative(config) {
            Some(true) => TypeConclusion::SparsePartition { a: f64::INFINITY },
            _ => {
                return Some(
                    Verdict::new(
                        "lotoreichik",
                        ANCHOR_LOT,
                        false,
                        Conclusion::SpectralType(TypeConclusion::Unknown),
                    )
                    .with("note", "a = ∞ with mixed-sign strengths is open"),
                )
            }
        }
    };
    Some(
        Verdict::new("lotoreichik", ANCHOR_LOT, true, Conclusion::SpectralType(conclusion))
            .with("a", a)
            .with("pp_interval_end", if a.is_finite() { 1.0 / a } else { 0.0 }),
    )
}
