//! Sliding-window functionals sup_x Σ_{x_k ∈ [x, x+w]} α_k (and the integral
//! analogue for potentials), exact on finite data and classified on symbolic
//! families.

use super::potential::PiecewisePotential;
use super::seq::{Growth, Limit, SeqForm, Sign, SymbolicSequence};
use super::support::Support;
use super::ModelError;

/// Which part of the data the window sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowPart {
    /// Negative part x⁻ = (|x| - x)/2 (nonnegative).
    Negative,
    /// The raw signed values.
    Signed,
    /// Absolute values.
    Absolute,
}

impl WindowPart {
    fn apply(&self, v: f64) -> f64 {
        match self {
            WindowPart::Negative => (v.abs() - v) / 2.0,
            WindowPart::Signed => v,
            WindowPart::Absolute => v.abs(),
        }
    }
}

/// What the window slides over.
pub enum WindowTarget<'a> {
    Strengths { support: &'a Support, strengths: &'a SymbolicSequence },
    Potential(&'a PiecewisePotential),
}

/// Result of the supremum analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum WindowReport {
    /// Finite data: the exact supremum and a witness window start.
    Exact { sup: f64, witness: f64 },
    /// Symbolic family with bounded windows; `bound` is a certified scale.
    Bounded { bound: f64 },
    /// Windows diverge along the witness sequence described.
    Divergent { direction: Sign, witness: String },
}

impl WindowReport {
    pub fn is_divergent(&self) -> bool {
        matches!(self, WindowReport::Divergent { .. })
    }

    pub fn finite_bound(&self) -> Option<f64> {
        match self {
            WindowReport::Exact { sup, .. } => Some(*sup),
            WindowReport::Bounded { bound } => Some(*bound),
            WindowReport::Divergent { .. } => None,
        }
    }
}

/// Supremum over x > 0 of the width-`w` window functional.
pub fn window_functional(
    target: WindowTarget<'_>,
    width: f64,
    part: WindowPart,
) -> Result<WindowReport, ModelError> {
    assert!(width > 0.0, "window width must be positive");
    match target {
        WindowTarget::Potential(q) => Ok(potential_window(q, width, part)),
        WindowTarget::Strengths { support, strengths } => {
            strengths_window(support, strengths, width, part)
        }
    }
}

fn potential_window(q: &PiecewisePotential, w: f64, part: WindowPart) -> WindowReport {
    // the windowed integral of a piecewise-constant integrand is piecewise
    // affine in the window position; extrema occur where an edge meets a
    // breakpoint
    let mut candidates: Vec<f64> = vec![0.0];
    for &b in &q.breakpoints {
        candidates.push(b);
        if b - w > 0.0 {
            candidates.push(b - w);
        }
    }
    let last = q.breakpoints.last().copied().unwrap_or(0.0);
    candidates.push(last + 1.0); // window fully inside the tail

    let integral = |x: f64| -> f64 {
        // ∫_x^{x+w} part(q)
        let mut acc = 0.0;
        let mut lo = x;
        let hi = x + w;
        for (i, &b) in q.breakpoints.iter().enumerate() {
            if b <= lo {
                continue;
            }
            if b >= hi {
                acc += part.apply(q.values[i]) * (hi - lo);
                return acc;
            }
            acc += part.apply(q.values[i]) * (b - lo);
            lo = b;
        }
        acc + part.apply(q.tail) * (hi - lo)
    };

    let mut sup = f64::NEG_INFINITY;
    let mut witness = 0.0;
    for &x in &candidates {
        let v = integral(x);
        if v > sup {
            sup = v;
            witness = x;
        }
    }
    WindowReport::Exact { sup, witness }
}

fn strengths_window(
    support: &Support,
    strengths: &SymbolicSequence,
    w: f64,
    part: WindowPart,
) -> Result<WindowReport, ModelError> {
    if let (Some(n), true) = (support.len(), strengths.is_finite_data()) {
        return Ok(finite_strengths_window(support, strengths, n, w, part));
    }

    // named paired family: windows [n, n+w] carry the even-index masses
    if let Support::BraschePair { a } = support {
        if is_brasche_strengths(strengths) {
            return Ok(match part {
                WindowPart::Negative | WindowPart::Absolute | WindowPart::Signed => {
                    WindowReport::Divergent {
                        direction: Sign::Pos,
                        witness: format!(
                            "windows [n, n+{w}] carry mass a^n with a = {a}"
                        ),
                    }
                }
            });
        }
        return Err(ModelError::UnknownAsymptotics);
    }

    let form = strengths.form().ok_or(ModelError::UnknownAsymptotics)?;
    let strength_growth: Growth = match &form {
        SeqForm::Expr(e) => match e.growth() {
            Some(g) => g,
            None => return Ok(WindowReport::Bounded { bound: 0.0 }), // identically zero
        },
        SeqForm::LogScale { .. } | SeqForm::Opaque => {
            return Err(ModelError::UnknownAsymptotics)
        }
    };

    // sign pattern of the tail decides how the part acts on the leading term
    let tail_sign = Sign::of(strength_growth.coeff);
    let effective = match (part, tail_sign) {
        (WindowPart::Negative, Sign::Pos) => None, // negative part eventually 0
        (WindowPart::Negative, Sign::Neg) => Some(Growth { coeff: -strength_growth.coeff, ..strength_growth }),
        (WindowPart::Absolute, _) => Some(Growth { coeff: strength_growth.coeff.abs(), ..strength_growth }),
        (WindowPart::Signed, _) => Some(strength_growth),
        (_, Sign::Zero) => None,
    };

    let effective = match effective {
        None => {
            // eventual contribution vanishes; the prefix is finite data
            let prefix_sup = prefix_window_sup(support, strengths, w, part, 512);
            return Ok(WindowReport::Bounded { bound: prefix_sup });
        }
        Some(g) => g,
    };

    // points per window scale like 1 + w/d_k
    let per_window = match support.gap_growth().and_then(|g| g.recip()) {
        Some(inv_d) => {
            let scaled = Growth { coeff: inv_d.coeff * w, ..inv_d };
            match scaled.limit() {
                Limit::PosInfinite => effective.mul(&scaled),
                _ => effective,
            }
        }
        None => effective,
    };

    match per_window.limit() {
        Limit::PosInfinite => Ok(WindowReport::Divergent {
            direction: Sign::Pos,
            witness: format!("windows [x_k, x_k+{w}] with mass ~ k^{} scale", per_window.power),
        }),
        Limit::NegInfinite => Ok(WindowReport::Divergent {
            direction: Sign::Neg,
            witness: format!("windows [x_k, x_k+{w}]"),
        }),
        Limit::Finite(_) => {
            let prefix_sup = prefix_window_sup(support, strengths, w, part, 512);
            Ok(WindowReport::Bounded { bound: prefix_sup })
        }
    }
}

fn is_brasche_strengths(strengths: &SymbolicSequence) -> bool {
    match strengths {
        SymbolicSequence::Custom(c) => c.label.starts_with("brasche"),
        _ => false,
    }
}

/// Exact supremum for finite data: window edges aligned to support points.
fn finite_strengths_window(
    support: &Support,
    strengths: &SymbolicSequence,
    n: usize,
    w: f64,
    part: WindowPart,
) -> WindowReport {
    let xs: Vec<f64> = (1..=n as u64).map(|k| support.position(k).unwrap()).collect();
    let vals: Vec<f64> = (1..=n as u64)
        .map(|k| part.apply(strengths.eval(k).unwrap()))
        .collect();
    window_sup_over_points(&xs, &vals, w)
}

fn prefix_window_sup(
    support: &Support,
    strengths: &SymbolicSequence,
    w: f64,
    part: WindowPart,
    depth: u64,
) -> f64 {
    let xs: Vec<f64> = (1..=depth).filter_map(|k| support.position(k)).collect();
    let vals: Vec<f64> = (1..=xs.len() as u64)
        .map(|k| part.apply(strengths.eval(k).unwrap_or(0.0)))
        .collect();
    match window_sup_over_points(&xs, &vals, w) {
        WindowReport::Exact { sup, .. } => sup,
        _ => 0.0,
    }
}

fn window_sup_over_points(xs: &[f64], vals: &[f64], w: f64) -> WindowReport {
    if xs.is_empty() {
        return WindowReport::Exact { sup: 0.0, witness: 0.0 };
    }
    // candidate window starts: each point at the left edge, each point at the
    // right edge, midpoints between consecutive criticals, and past the end
    let mut criticals: Vec<f64> = Vec::with_capacity(2 * xs.len());
    for &x in xs {
        criticals.push(x);
        criticals.push(x - w);
    }
    criticals.retain(|&c| c > 0.0);
    criticals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    criticals.dedup();
    let mut candidates = criticals.clone();
    for pair in criticals.windows(2) {
        candidates.push(0.5 * (pair[0] + pair[1]));
    }
    if let Some(&last) = criticals.last() {
        candidates.push(last + 1.0);
    }
    candidates.push(f64::MIN_POSITIVE);

    let sum_at = |x: f64| -> f64 {
        xs.iter()
            .zip(vals)
            .filter(|(&p, _)| p >= x && p <= x + w)
            .map(|(_, &v)| v)
            .sum()
    };

    let mut sup = 0.0; // empty far window realizes 0
    let mut witness = xs.last().unwrap() + 1.0;
    for &x in &candidates {
        let v = sum_at(x);
        if v > sup {
            sup = v;
            witness = x;
        }
    }
    WindowReport::Exact { sup, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::seq::CustomSeq;

    #[test]
    fn zero_potential_window() {
        let r = potential_window(&PiecewisePotential::zero(), 1.0, WindowPart::Negative);
        assert_eq!(r.finite_bound(), Some(0.0));
    }

    #[test]
    fn constant_negative_potential_window() {
        let r = potential_window(&PiecewisePotential::constant(-1.0), 1.0, WindowPart::Negative);
        assert_eq!(r.finite_bound(), Some(1.0));
    }

    #[test]
    fn potential_window_straddles_breakpoint() {
        // q = -3 on [0,1), 0 beyond: the best unit window for q⁻ is [0,1]
        let q = PiecewisePotential::new(vec![1.0], vec![-3.0], 0.0);
        let r = potential_window(&q, 0.5, WindowPart::Negative);
        assert_eq!(r.finite_bound(), Some(1.5));
        let r = potential_window(&q, 2.0, WindowPart::Negative);
        assert_eq!(r.finite_bound(), Some(3.0));
    }

    #[test]
    fn finite_strengths_exact_sup() {
        let s = Support::points(vec![1.0, 2.0, 3.5]);
        let a = SymbolicSequence::finite(vec![-1.0, -2.0, 5.0]);
        let r = window_functional(
            WindowTarget::Strengths { support: &s, strengths: &a },
            1.0,
            WindowPart::Negative,
        )
        .unwrap();
        // window [1,2] catches both negative strengths
        assert_eq!(r.finite_bound(), Some(3.0));
        let r = window_functional(
            WindowTarget::Strengths { support: &s, strengths: &a },
            1.0,
            WindowPart::Signed,
        )
        .unwrap();
        // [2.5, 3.5] catches only +5
        assert_eq!(r.finite_bound(), Some(5.0));
    }

    #[test]
    fn window_monotone_in_width() {
        let s = Support::points(vec![0.5, 1.4, 2.0, 4.0]);
        let a = SymbolicSequence::finite(vec![-1.0, -0.5, -2.0, -0.25]);
        let mut prev = 0.0;
        for w in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let r = window_functional(
                WindowTarget::Strengths { support: &s, strengths: &a },
                w,
                WindowPart::Negative,
            )
            .unwrap();
            let v = r.finite_bound().unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn brasche_family_diverges() {
        let a = 2.0;
        let support = Support::BraschePair { a };
        let strengths = SymbolicSequence::Custom(CustomSeq::new(
            "brasche-strengths",
            move |k| {
                let m = k.div_ceil(2) as f64;
                if k % 2 == 1 {
                    a.powf(m)
                } else {
                    -a.powf(m)
                }
            },
            None,
        ));
        let r = window_functional(
            WindowTarget::Strengths { support: &support, strengths: &strengths },
            1.0,
            WindowPart::Negative,
        )
        .unwrap();
        assert!(r.is_divergent());
    }

    #[test]
    fn harmonic_family_negative_part_diverges() {
        // d_k = 1/k, α_k = -(2k+1): window mass ~ α⁻_k / d_k -> ∞
        let support = Support::SpacingRule(SymbolicSequence::PowerLaw { c: 1.0, p: -1.0 });
        let strengths = SymbolicSequence::AffinePower { c0: -1.0, c1: -2.0, c2: 0.0, p: -1.0 };
        let r = window_functional(
            WindowTarget::Strengths { support: &support, strengths: &strengths },
            1.0,
            WindowPart::Negative,
        )
        .unwrap();
        assert!(r.is_divergent());
    }

    #[test]
    fn positive_symbolic_negative_part_bounded() {
        let support = Support::SpacingRule(SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 });
        let strengths = SymbolicSequence::PowerLaw { c: 3.0, p: 1.0 };
        let r = window_functional(
            WindowTarget::Strengths { support: &support, strengths: &strengths },
            1.0,
            WindowPart::Negative,
        )
        .unwrap();
        assert!(!r.is_divergent());
    }
}
