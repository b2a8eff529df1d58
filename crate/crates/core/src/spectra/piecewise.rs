//! Closed-form piecewise test functions and evaluation of the energy forms
//!   δ:  t[f] = ∫(|f'|² + q|f|²) + Σ α_k |f(x_k)|²
//!   δ': t[f] = ∫(|f'|² + q|f|²) + Σ |f(x_k+) - f(x_k-)|² / β_k.

use super::SpectraError;
use crate::model::{HamiltonianConfig, InteractionKind};

/// Elementary closed form on one piece, parameterized by t = x - start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceKind {
    /// a·cos(ωt) + b·sin(ωt)
    Trig { omega: f64, a: f64, b: f64 },
    /// a·cosh(μt) + b·sinh(μt)
    Hyp { mu: f64, a: f64, b: f64 },
    /// a + b·t
    Affine { a: f64, b: f64 },
    /// a·e^{r t}
    Exp { a: f64, r: f64 },
}

impl PieceKind {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            PieceKind::Trig { omega, a, b } => a * (omega * t).cos() + b * (omega * t).sin(),
            PieceKind::Hyp { mu, a, b } => a * (mu * t).cosh() + b * (mu * t).sinh(),
            PieceKind::Affine { a, b } => a + b * t,
            PieceKind::Exp { a, r } => a * (r * t).exp(),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            PieceKind::Trig { omega, a, b } => {
                omega * (-a * (omega * t).sin() + b * (omega * t).cos())
            }
            PieceKind::Hyp { mu, a, b } => mu * (a * (mu * t).sinh() + b * (mu * t).cosh()),
            PieceKind::Affine { b, .. } => b,
            PieceKind::Exp { a, r } => a * r * (r * t).exp(),
        }
    }

    /// Antiderivative of f² from 0 to t.
    fn int_f2(&self, t: f64) -> f64 {
        match *self {
            PieceKind::Trig { omega, a, b } => {
                let (icc, iss, ics) = trig_moments(omega, t);
                a * a * icc + b * b * iss + 2.0 * a * b * ics
            }
            PieceKind::Hyp { mu, a, b } => {
                let (icc, iss, ics) = hyp_moments(mu, t);
                a * a * icc + b * b * iss + 2.0 * a * b * ics
            }
            PieceKind::Affine { a, b } => a * a * t + a * b * t * t + b * b * t * t * t / 3.0,
            PieceKind::Exp { a, r } => {
                if r == 0.0 {
                    a * a * t
                } else {
                    a * a * ((2.0 * r * t).exp() - 1.0) / (2.0 * r)
                }
            }
        }
    }

    /// Antiderivative of (f')² from 0 to t.
    fn int_fp2(&self, t: f64) -> f64 {
        match *self {
            PieceKind::Trig { omega, a, b } => {
                let (icc, iss, ics) = trig_moments(omega, t);
                omega * omega * (a * a * iss + b * b * icc - 2.0 * a * b * ics)
            }
            PieceKind::Hyp { mu, a, b } => {
                let (icc, iss, ics) = hyp_moments(mu, t);
                mu * mu * (a * a * iss + b * b * icc + 2.0 * a * b * ics)
            }
            PieceKind::Affine { b, .. } => b * b * t,
            PieceKind::Exp { a, r } => {
                if r == 0.0 {
                    0.0
                } else {
                    a * a * r * ((2.0 * r * t).exp() - 1.0) / 2.0
                }
            }
        }
    }
}

/// (∫cos², ∫sin², ∫cos·sin) over [0, t] at frequency ω.
fn trig_moments(omega: f64, t: f64) -> (f64, f64, f64) {
    if omega == 0.0 {
        return (t, 0.0, 0.0);
    }
    let s2 = (2.0 * omega * t).sin() / (4.0 * omega);
    let icc = t / 2.0 + s2;
    let iss = t / 2.0 - s2;
    let ics = (1.0 - (2.0 * omega * t).cos()) / (4.0 * omega);
    (icc, iss, ics)
}

/// (∫cosh², ∫sinh², ∫cosh·sinh) over [0, t] at rate μ.
fn hyp_moments(mu: f64, t: f64) -> (f64, f64, f64) {
    if mu == 0.0 {
        return (t, 0.0, 0.0);
    }
    let s2 = (2.0 * mu * t).sinh() / (4.0 * mu);
    let icc = t / 2.0 + s2;
    let iss = s2 - t / 2.0;
    let ics = ((2.0 * mu * t).cosh() - 1.0) / (4.0 * mu);
    (icc, iss, ics)
}

/// One piece of a piecewise test function on [start, end].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub kind: PieceKind,
}

impl Piece {
    fn len(&self) -> f64 {
        self.end - self.start
    }

    fn value_left(&self) -> f64 {
        self.kind.value(0.0)
    }

    fn value_right(&self) -> f64 {
        self.kind.value(self.len())
    }
}

/// Piecewise closed-form function; pieces contiguous from 0, the function is
/// treated as zero beyond the last piece.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFn {
    pub pieces: Vec<Piece>,
}

impl PiecewiseFn {
    pub fn new(pieces: Vec<Piece>) -> PiecewiseFn {
        assert!(!pieces.is_empty());
        assert!(pieces[0].start == 0.0);
        for pair in pieces.windows(2) {
            assert!(
                (pair[0].end - pair[1].start).abs() < 1e-12,
                "pieces must be contiguous"
            );
        }
        PiecewiseFn { pieces }
    }

    pub fn domain_end(&self) -> f64 {
        self.pieces.last().unwrap().end
    }

    pub fn value(&self, x: f64) -> f64 {
        for p in &self.pieces {
            if x >= p.start && x <= p.end {
                return p.kind.value(x - p.start);
            }
        }
        0.0
    }

    /// One-sided values at an interior point.
    fn one_sided(&self, x: f64) -> (f64, f64) {
        let mut left = 0.0;
        let mut right = 0.0;
        for p in &self.pieces {
            if (p.end - x).abs() < 1e-12 {
                left = p.value_right();
            }
            if (p.start - x).abs() < 1e-12 {
                right = p.value_left();
            }
        }
        // interior of a piece: both sides agree
        for p in &self.pieces {
            if x > p.start + 1e-12 && x < p.end - 1e-12 {
                let v = p.kind.value(x - p.start);
                left = v;
                right = v;
            }
        }
        (left, right)
    }

    /// ∫ f² over [0, upto].
    pub fn norm_sq_to(&self, upto: f64) -> f64 {
        self.integrate_to(upto, |p, t| p.kind.int_f2(t))
    }

    /// ∫ (f')² over [0, upto].
    pub fn grad_sq_to(&self, upto: f64) -> f64 {
        self.integrate_to(upto, |p, t| p.kind.int_fp2(t))
    }

    fn integrate_to(&self, upto: f64, anti: impl Fn(&Piece, f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for p in &self.pieces {
            if p.start >= upto {
                break;
            }
            let t = (upto.min(p.end) - p.start).max(0.0);
            acc += anti(p, t);
        }
        acc
    }

    /// ∫ q f² over [0, upto] for a piecewise-constant q: pieces are split at
    /// q's breakpoints internally.
    fn potential_term_to(&self, q: &crate::model::PiecewisePotential, upto: f64) -> f64 {
        let mut acc = 0.0;
        for p in &self.pieces {
            if p.start >= upto {
                break;
            }
            let hi = upto.min(p.end);
            // split [p.start, hi] at q breakpoints
            let mut lo = p.start;
            let mut cuts: Vec<f64> =
                q.breakpoints.iter().cloned().filter(|&b| b > lo && b < hi).collect();
            cuts.push(hi);
            for c in cuts {
                let qv = q.value_at(0.5 * (lo + c));
                acc += qv * (p.kind.int_f2(c - p.start) - p.kind.int_f2(lo - p.start));
                lo = c;
            }
        }
        acc
    }
}

/// Evaluation mode: the full form value, or partial sums over the first K
/// interaction points (integrals truncated at x_K) for divergence runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FormMode {
    Full,
    PartialSums { upto_terms: usize },
}

/// Form evaluation report.
#[derive(Debug, Clone, PartialEq)]
pub struct FormValue {
    pub gradient: f64,
    pub potential: f64,
    pub interaction: f64,
    pub norm_sq: f64,
    /// t[f] = gradient + potential + interaction.
    pub value: f64,
    /// Partial sums (per included interaction point) in partial-sum mode:
    /// (norm_sq, gradient, interaction) after each term.
    pub partials: Vec<(f64, f64, f64)>,
}

/// Evaluate the kind-appropriate energy form on a piecewise test function.
pub fn eval_form(
    config: &HamiltonianConfig,
    f: &PiecewiseFn,
    mode: FormMode,
) -> Result<FormValue, SpectraError> {
    let (limit, partial) = match mode {
        FormMode::Full => (usize::MAX, false),
        FormMode::PartialSums { upto_terms } => (upto_terms, true),
    };

    // gather interaction points within reach
    let domain_end = f.domain_end();
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut k = 1u64;
    while points.len() < limit.min(1_000_000) {
        match config.support.position(k) {
            Some(x) if x <= domain_end || partial => {
                if x > domain_end && partial {
                    break;
                }
                let s = config.strengths.eval(k).expect("validated strengths");
                points.push((x, s));
            }
            _ => break,
        }
        k += 1;
    }

    // regularity: δ needs continuity everywhere; δ' allows jumps only at x_k
    let scale = 1.0 + points.iter().map(|(_, s)| s.abs()).fold(0.0, f64::max);
    let _ = scale;
    for p in f.pieces.windows(2) {
        let x = p[1].start;
        let (l, r) = (p[0].value_right(), p[1].value_left());
        let jump = (r - l).abs();
        let at_interaction = points.iter().any(|(px, _)| (px - x).abs() < 1e-12);
        match config.kind {
            InteractionKind::Delta => {
                if jump > 1e-10 * (1.0 + l.abs().max(r.abs())) {
                    return Err(SpectraError::RegularityMismatch(format!(
                        "f jumps at {x} but δ forms need continuity"
                    )));
                }
            }
            InteractionKind::DeltaPrime => {
                if jump > 1e-10 * (1.0 + l.abs().max(r.abs())) && !at_interaction {
                    return Err(SpectraError::RegularityMismatch(format!(
                        "f jumps at {x} away from any interaction point"
                    )));
                }
            }
        }
    }

    let interaction_term = |x: f64, s: f64| -> f64 {
        match config.kind {
            InteractionKind::Delta => {
                let v = f.value(x);
                s * v * v
            }
            InteractionKind::DeltaPrime => {
                if s.is_infinite() {
                    0.0
                } else {
                    let (l, r) = f.one_sided(x);
                    (r - l) * (r - l) / s
                }
            }
        }
    };

    let mut partials = Vec::new();
    let mut interaction = 0.0;
    if partial {
        for &(x, s) in &points {
            interaction += interaction_term(x, s);
            partials.push((f.norm_sq_to(x), f.grad_sq_to(x), interaction));
        }
    } else {
        for &(x, s) in &points {
            interaction += interaction_term(x, s);
        }
    }

    let end = f.domain_end();
    let gradient = f.grad_sq_to(end);
    let potential = f.potential_term_to(&config.potential, end);
    let norm_sq = f.norm_sq_to(end);
    Ok(FormValue {
        gradient,
        potential,
        interaction,
        norm_sq,
        value: gradient + potential + interaction,
        partials,
    })
}

/// Build the piecewise closed form of the propagated solution at energy E
/// over [0, upto] (δ and δ' both; Dirichlet initial data).
pub fn propagated_piecewise(
    config: &HamiltonianConfig,
    energy: f64,
    upto: f64,
) -> PiecewiseFn {
    use super::{propagate, ShootState};
    let mut cuts: Vec<f64> = config
        .potential
        .breakpoints
        .iter()
        .cloned()
        .filter(|&b| b < upto)
        .collect();
    if let Some(n) = config.finite_len() {
        for k in 1..=n as u64 {
            let x = config.support.position(k).unwrap();
            if x < upto {
                cuts.push(x);
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    cuts.push(upto);

    let mut pieces = Vec::with_capacity(cuts.len());
    let mut lo = 0.0;
    let mut state = ShootState { position: 0.0, f: 0.0, fprime: 1.0, crossed_wall: false };
    for &hi in &cuts {
        if hi <= lo {
            continue;
        }
        let w = config.potential.value_at(lo + 0.5 * (hi - lo)) - energy;
        let kind = if w > 1e-13 {
            let mu = w.sqrt();
            PieceKind::Hyp { mu, a: state.f, b: state.fprime / mu }
        } else if w < -1e-13 {
            let omega = (-w).sqrt();
            PieceKind::Trig { omega, a: state.f, b: state.fprime / omega }
        } else {
            PieceKind::Affine { a: state.f, b: state.fprime }
        };
        pieces.push(Piece { start: lo, end: hi, kind });
        state = propagate(config, energy, hi);
        lo = hi;
    }
    PiecewiseFn::new(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PiecewisePotential;

    #[test]
    fn affine_integrals() {
        let f = PiecewiseFn::new(vec![Piece {
            start: 0.0,
            end: 2.0,
            kind: PieceKind::Affine { a: 0.0, b: 1.0 },
        }]);
        assert!((f.norm_sq_to(2.0) - 8.0 / 3.0).abs() < 1e-14);
        assert!((f.grad_sq_to(2.0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn trig_norm() {
        // sin(x) on [0, π]: ∫ sin² = π/2, ∫ cos² = π/2
        let f = PiecewiseFn::new(vec![Piece {
            start: 0.0,
            end: std::f64::consts::PI,
            kind: PieceKind::Trig { omega: 1.0, a: 0.0, b: 1.0 },
        }]);
        assert!((f.norm_sq_to(f.domain_end()) - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
        assert!((f.grad_sq_to(f.domain_end()) - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn form_identity_free_eigenpair() {
        // first Dirichlet eigenpair on [0, π]: E = 1, f = sin
        let c = HamiltonianConfig::finite_delta(vec![], vec![]);
        let f = PiecewiseFn::new(vec![Piece {
            start: 0.0,
            end: std::f64::consts::PI,
            kind: PieceKind::Trig { omega: 1.0, a: 0.0, b: 1.0 },
        }]);
        let v = eval_form(&c, &f, FormMode::Full).unwrap();
        assert!((v.value - 1.0 * v.norm_sq).abs() < 1e-12);
    }

    #[test]
    fn delta_interaction_term() {
        // tent over [0,2] with a δ at 1: t[f] = ∫f'² + α·f(1)²
        let c = HamiltonianConfig::finite_delta(vec![1.0], vec![-3.0]);
        let f = PiecewiseFn::new(vec![
            Piece { start: 0.0, end: 1.0, kind: PieceKind::Affine { a: 0.0, b: 1.0 } },
            Piece { start: 1.0, end: 2.0, kind: PieceKind::Affine { a: 1.0, b: -1.0 } },
        ]);
        let v = eval_form(&c, &f, FormMode::Full).unwrap();
        assert!((v.gradient - 2.0).abs() < 1e-14);
        assert!((v.interaction - (-3.0)).abs() < 1e-14);
        assert!((v.value - (-1.0)).abs() < 1e-14);
    }

    #[test]
    fn delta_rejects_jumps() {
        let c = HamiltonianConfig::finite_delta(vec![1.0], vec![1.0]);
        let f = PiecewiseFn::new(vec![
            Piece { start: 0.0, end: 1.0, kind: PieceKind::Affine { a: 0.0, b: 1.0 } },
            Piece { start: 1.0, end: 2.0, kind: PieceKind::Affine { a: 5.0, b: -1.0 } },
        ]);
        assert!(matches!(
            eval_form(&c, &f, FormMode::Full),
            Err(SpectraError::RegularityMismatch(_))
        ));
    }

    #[test]
    fn delta_prime_jump_term() {
        let c = HamiltonianConfig::finite_delta_prime(vec![1.0], vec![-2.0]);
        let f = PiecewiseFn::new(vec![
            Piece { start: 0.0, end: 1.0, kind: PieceKind::Affine { a: 0.0, b: 1.0 } },
            Piece { start: 1.0, end: 2.0, kind: PieceKind::Affine { a: 3.0, b: -1.0 } },
        ]);
        let v = eval_form(&c, &f, FormMode::Full).unwrap();
        // jump = 3 - 1 = 2: contribution 4 / (-2) = -2
        assert!((v.interaction - (-2.0)).abs() < 1e-14);
    }

    #[test]
    fn potential_term_split() {
        let c = HamiltonianConfig::delta(
            crate::model::Support::points(vec![5.0]),
            crate::model::SymbolicSequence::finite(vec![0.0]),
            PiecewisePotential::new(vec![1.0], vec![2.0], 0.0),
        );
        // f = 1 on [0, 2] (via affine with b = 0): ∫ q f² = 2
        let f = PiecewiseFn::new(vec![Piece {
            start: 0.0,
            end: 2.0,
            kind: PieceKind::Affine { a: 1.0, b: 0.0 },
        }]);
        let v = eval_form(&c, &f, FormMode::Full).unwrap();
        assert!((v.potential - 2.0).abs() < 1e-14);
    }

    #[test]
    fn propagated_piecewise_matches_propagate() {
        use crate::spectra::propagate;
        let c = HamiltonianConfig::finite_delta(vec![1.0, 2.0], vec![-1.5, 0.5]);
        let f = propagated_piecewise(&c, -0.7, 3.0);
        for x in [0.3, 0.9, 1.4, 2.7] {
            let direct = propagate(&c, -0.7, x);
            assert!(
                (f.value(x) - direct.f).abs() < 1e-11 * (1.0 + direct.f.abs()),
                "mismatch at {x}"
            );
        }
    }
}
