//! Closed-form sequence vocabulary and the exact asymptotic algebra behind
//! every limit-based spectral criterion.
//!
//! Verdicts must never rest on numerical trend detection, so sequences are
//! restricted to a vocabulary whose limits, series and partial sums are
//! decidable: sums of monomials `c·r^k·k^p`, plus an exponential-scale form
//! for super-geometric data. A `Custom` evaluator without a declared
//! asymptotic class supports evaluation only; classifiers treat it as opaque.

use std::fmt;
use std::sync::Arc;

/// Sign of a real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        match x.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Less) => Sign::Neg,
            Some(std::cmp::Ordering::Greater) => Sign::Pos,
            _ => Sign::Zero,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Pos => Sign::Neg,
            Sign::Zero => Sign::Zero,
        }
    }
}

/// Limit of a sequence in the extended reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    NegInfinite,
    Finite(f64),
    PosInfinite,
}

impl Limit {
    pub fn is_pos_infinite(&self) -> bool {
        matches!(self, Limit::PosInfinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Limit::Finite(v) => Some(*v),
            _ => None,
        }
    }
}

/// One term `coeff · ratio^k · k^power` with `ratio > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coeff: f64,
    pub ratio: f64,
    pub power: f64,
}

impl Monomial {
    pub fn eval(&self, k: u64) -> f64 {
        let kf = k as f64;
        let geo = if self.ratio == 1.0 {
            1.0
        } else {
            self.ratio.powf(kf)
        };
        let pow = if self.power == 0.0 { 1.0 } else { kf.powf(self.power) };
        self.coeff * geo * pow
    }

    /// Lexicographic dominance key: larger ratio wins, then larger power.
    fn class_key(&self) -> (f64, f64) {
        (self.ratio, self.power)
    }

    fn converges_as_series(&self) -> bool {
        self.ratio < 1.0 || (self.ratio == 1.0 && self.power < -1.0)
    }
}

/// Exact finite sum of monomials, the normal form for the closed vocabulary.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SeqExpr {
    terms: Vec<Monomial>,
}

/// Leading-order growth `coeff · ratio^k · k^power · (ln k)^logpow`.
///
/// Coarser than [`SeqExpr`]: closed under products and used wherever exact
/// term bookkeeping is impossible (ratios, partial sums, spacing classes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth {
    pub coeff: f64,
    pub ratio: f64,
    pub power: f64,
    pub logpow: f64,
}

/// Behavior of the partial sums of a sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum SumGrowth {
    /// Partial sums stay bounded (convergent series, or identically zero).
    Bounded,
    /// Partial sums diverge with the given leading growth.
    Divergent(Growth),
}

/// Convergence class of an infinite series with an eventual sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesClass {
    Convergent,
    DivergentTo(Sign),
}

const EXHAUSTIVE_CAP: u64 = 1 << 20;

impl SeqExpr {
    pub fn zero() -> SeqExpr {
        SeqExpr { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> SeqExpr {
        SeqExpr::from_terms(vec![Monomial { coeff: c, ratio: 1.0, power: 0.0 }])
    }

    pub fn power(c: f64, p: f64) -> SeqExpr {
        SeqExpr::from_terms(vec![Monomial { coeff: c, ratio: 1.0, power: p }])
    }

    pub fn geometric(c: f64, r: f64) -> SeqExpr {
        assert!(r > 0.0, "geometric ratio must be positive");
        SeqExpr::from_terms(vec![Monomial { coeff: c, ratio: r, power: 0.0 }])
    }

    pub fn from_terms(terms: Vec<Monomial>) -> SeqExpr {
        let mut e = SeqExpr { terms };
        e.normalize();
        e
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(&mut self) {
        self.terms.retain(|m| m.coeff != 0.0);
        self.terms.sort_by(|a, b| {
            b.class_key()
                .partial_cmp(&a.class_key())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut merged: Vec<Monomial> = Vec::with_capacity(self.terms.len());
        for m in self.terms.drain(..) {
            if let Some(last) = merged.last_mut() {
                if last.ratio == m.ratio && last.power == m.power {
                    last.coeff += m.coeff;
                    continue;
                }
            }
            merged.push(m);
        }
        merged.retain(|m| m.coeff != 0.0);
        self.terms = merged;
    }

    pub fn eval(&self, k: u64) -> f64 {
        self.terms.iter().map(|m| m.eval(k)).sum()
    }

    pub fn add(&self, other: &SeqExpr) -> SeqExpr {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        SeqExpr::from_terms(terms)
    }

    pub fn neg(&self) -> SeqExpr {
        SeqExpr::from_terms(
            self.terms
                .iter()
                .map(|m| Monomial { coeff: -m.coeff, ..*m })
                .collect(),
        )
    }

    pub fn sub(&self, other: &SeqExpr) -> SeqExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: f64) -> SeqExpr {
        SeqExpr::from_terms(
            self.terms
                .iter()
                .map(|m| Monomial { coeff: c * m.coeff, ..*m })
                .collect(),
        )
    }

    pub fn mul(&self, other: &SeqExpr) -> SeqExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Monomial {
                    coeff: a.coeff * b.coeff,
                    ratio: a.ratio * b.ratio,
                    power: a.power + b.power,
                });
            }
        }
        SeqExpr::from_terms(terms)
    }

    /// Exact difference `e(k) - e(k-1)` for expressions whose powers are
    /// nonnegative integers and whose ratios are 1 (polynomials in k).
    /// Used by the exponential-scale form to take log-ratios.
    pub fn poly_difference(&self) -> Option<SeqExpr> {
        let mut out = SeqExpr::zero();
        for m in &self.terms {
            if m.ratio != 1.0 || m.power < 0.0 || m.power.fract() != 0.0 || m.power > 12.0 {
                return None;
            }
            let n = m.power as i64;
            // k^n - (k-1)^n = -Σ_{j<n} C(n,j)·(-1)^{n-j}·k^j
            for j in 0..n {
                let sgn = if (n - j) % 2 == 0 { 1.0 } else { -1.0 };
                out = out.add(&SeqExpr::power(-m.coeff * sgn * binomial(n, j), j as f64));
            }
        }
        Some(out)
    }

    pub fn leading(&self) -> Option<Monomial> {
        self.terms.first().copied()
    }

    /// Coefficient of the exact monomial `ratio^k · k^power` (0 if absent).
    pub fn coeff_of(&self, ratio: f64, power: f64) -> f64 {
        self.terms
            .iter()
            .find(|m| m.ratio == ratio && m.power == power)
            .map(|m| m.coeff)
            .unwrap_or(0.0)
    }

    /// The expression with the exact monomial `ratio^k·k^power` removed.
    pub fn without(&self, ratio: f64, power: f64) -> SeqExpr {
        SeqExpr::from_terms(
            self.terms
                .iter()
                .filter(|m| !(m.ratio == ratio && m.power == power))
                .copied()
                .collect(),
        )
    }

    pub fn growth(&self) -> Option<Growth> {
        self.leading().map(|m| Growth {
            coeff: m.coeff,
            ratio: m.ratio,
            power: m.power,
            logpow: 0.0,
        })
    }

    pub fn limit(&self) -> Limit {
        match self.leading() {
            None => Limit::Finite(0.0),
            Some(m) => {
                if m.ratio > 1.0 || (m.ratio == 1.0 && m.power > 0.0) {
                    if m.coeff > 0.0 {
                        Limit::PosInfinite
                    } else {
                        Limit::NegInfinite
                    }
                } else if m.ratio == 1.0 && m.power == 0.0 {
                    Limit::Finite(m.coeff)
                } else {
                    Limit::Finite(0.0)
                }
            }
        }
    }

    /// First index K (a power of two past every turning point) beyond which
    /// the leading term dominates the others by at least a factor of two, so
    /// the eventual sign is rigorous. `None` for the zero expression.
    fn dominance_index(&self) -> Option<u64> {
        let lead = self.leading()?;
        if self.terms.len() == 1 {
            return Some(1);
        }
        // turning point of |m_i / lead| as a function of k
        let mut start = 1u64;
        for m in &self.terms[1..] {
            let rho = m.ratio / lead.ratio;
            let q = m.power - lead.power;
            if rho < 1.0 && q > 0.0 {
                let turn = (-q / rho.ln()).ceil().max(1.0);
                if turn.is_finite() {
                    start = start.max(turn as u64);
                }
            }
        }
        let ratio_sum = |k: u64| -> f64 {
            let lv = lead.eval(k).abs();
            if lv == 0.0 {
                return f64::INFINITY;
            }
            self.terms[1..].iter().map(|m| m.eval(k).abs()).sum::<f64>() / lv
        };
        let mut k = start.max(1);
        for _ in 0..200 {
            if ratio_sum(k) < 0.5 {
                return Some(k);
            }
            k = k.saturating_mul(2);
            if k > (1 << 50) {
                return None;
            }
        }
        None
    }

    /// Sign of every entry for k >= 1, when a single sign holds; `None` when
    /// the sign varies or cannot be certified.
    pub fn sign_for_all(&self) -> Option<Sign> {
        if self.is_zero() {
            return Some(Sign::Zero);
        }
        let dom = self.dominance_index()?;
        if dom > EXHAUSTIVE_CAP {
            return None;
        }
        let tail_sign = Sign::of(self.leading().unwrap().coeff);
        let mut seen: Option<Sign> = None;
        for k in 1..=dom {
            let s = Sign::of(self.eval(k));
            match seen {
                None => seen = Some(s),
                Some(prev) if prev == s => {}
                _ => return None,
            }
        }
        match seen {
            Some(s) if s == tail_sign => Some(s),
            _ => None,
        }
    }

    /// Eventual sign (valid beyond a computable index).
    pub fn eventual_sign(&self) -> Option<Sign> {
        if self.is_zero() {
            return Some(Sign::Zero);
        }
        self.dominance_index()?;
        Some(Sign::of(self.leading().unwrap().coeff))
    }

    /// True when `eval(k) >= 0` for every k >= 1 (certified).
    pub fn nonnegative_for_all(&self) -> Option<bool> {
        if self.is_zero() {
            return Some(true);
        }
        let dom = self.dominance_index()?;
        if dom > EXHAUSTIVE_CAP {
            return None;
        }
        for k in 1..=dom {
            if self.eval(k) < 0.0 {
                return Some(false);
            }
        }
        Some(self.leading().unwrap().coeff > 0.0)
    }

    /// Classification of `Σ_{k>=1} eval(k)`.
    pub fn series(&self) -> SeriesClass {
        if self.is_zero() {
            return SeriesClass::Convergent;
        }
        let divergent: Vec<&Monomial> =
            self.terms.iter().filter(|m| !m.converges_as_series()).collect();
        if divergent.is_empty() {
            return SeriesClass::Convergent;
        }
        // among divergent terms the dominant partial-sum class decides
        let dominant = divergent
            .iter()
            .max_by(|a, b| {
                partial_sum_growth(a)
                    .class_key()
                    .partial_cmp(&partial_sum_growth(b).class_key())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        SeriesClass::DivergentTo(Sign::of(dominant.coeff))
    }

    /// Growth of the partial sums S_n = Σ_{k<=n} eval(k).
    pub fn partial_sum_growth(&self) -> SumGrowth {
        let mut best: Option<Growth> = None;
        for m in &self.terms {
            if m.converges_as_series() {
                continue;
            }
            let g = partial_sum_growth(m);
            best = Some(match best {
                None => g,
                Some(b) => {
                    if g.class_key() > b.class_key() {
                        g
                    } else {
                        b
                    }
                }
            });
        }
        match best {
            None => SumGrowth::Bounded,
            Some(g) => SumGrowth::Divergent(g),
        }
    }

    /// Growth of the tails T_k = Σ_{j>=k} eval(j); requires convergence.
    pub fn tail_sum_growth(&self) -> Option<Growth> {
        if self.is_zero() {
            return Some(Growth { coeff: 0.0, ratio: 1.0, power: f64::NEG_INFINITY, logpow: 0.0 });
        }
        if self.series() != SeriesClass::Convergent {
            return None;
        }
        let mut best: Option<Growth> = None;
        for m in &self.terms {
            let g = if m.ratio < 1.0 {
                Growth { coeff: m.coeff / (1.0 - m.ratio), ratio: m.ratio, power: m.power, logpow: 0.0 }
            } else {
                // ratio == 1, power < -1
                Growth {
                    coeff: m.coeff / (-m.power - 1.0),
                    ratio: 1.0,
                    power: m.power + 1.0,
                    logpow: 0.0,
                }
            };
            best = Some(match best {
                None => g,
                Some(b) => {
                    if g.class_key() > b.class_key() {
                        g
                    } else {
                        b
                    }
                }
            });
        }
        best
    }

    /// Numeric infimum/supremum report over all k >= 1: exact minimum and
    /// maximum over an exhaustive prefix, widened by the limit behavior.
    pub fn range_bounds(&self) -> Option<(f64, f64)> {
        if self.is_zero() {
            return Some((0.0, 0.0));
        }
        let dom = self.dominance_index()?;
        if dom > EXHAUSTIVE_CAP {
            return None;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 1..=dom.max(8) {
            let v = self.eval(k);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        // beyond dominance the value lies within [0.5, 1.5]·leading and the
        // leading term is monotone in magnitude
        match self.limit() {
            Limit::NegInfinite => lo = f64::NEG_INFINITY,
            Limit::PosInfinite => hi = f64::INFINITY,
            Limit::Finite(l) => {
                let lead = self.leading().unwrap();
                let margin = 1.5 * lead.eval(dom.max(8)).abs();
                lo = lo.min(l - margin);
                hi = hi.max(l + margin);
            }
        }
        Some((lo, hi))
    }
}

fn binomial(n: i64, k: i64) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn partial_sum_growth(m: &Monomial) -> Growth {
    if m.ratio > 1.0 {
        Growth {
            coeff: m.coeff * m.ratio / (m.ratio - 1.0),
            ratio: m.ratio,
            power: m.power,
            logpow: 0.0,
        }
    } else if m.power > -1.0 {
        Growth { coeff: m.coeff / (m.power + 1.0), ratio: 1.0, power: m.power + 1.0, logpow: 0.0 }
    } else {
        // power == -1: harmonic-type, logarithmic growth
        Growth { coeff: m.coeff, ratio: 1.0, power: 0.0, logpow: 1.0 }
    }
}

impl Growth {
    pub fn constant(c: f64) -> Growth {
        Growth { coeff: c, ratio: 1.0, power: 0.0, logpow: 0.0 }
    }

    fn class_key(&self) -> (f64, f64, f64) {
        (self.ratio, self.power, self.logpow)
    }

    pub fn mul(&self, other: &Growth) -> Growth {
        Growth {
            coeff: self.coeff * other.coeff,
            ratio: self.ratio * other.ratio,
            power: self.power + other.power,
            logpow: self.logpow + other.logpow,
        }
    }

    pub fn powi(&self, n: i32) -> Growth {
        Growth {
            coeff: self.coeff.powi(n),
            ratio: self.ratio.powi(n),
            power: self.power * n as f64,
            logpow: self.logpow * n as f64,
        }
    }

    pub fn recip(&self) -> Option<Growth> {
        if self.coeff == 0.0 {
            return None;
        }
        Some(Growth {
            coeff: 1.0 / self.coeff,
            ratio: 1.0 / self.ratio,
            power: -self.power,
            logpow: -self.logpow,
        })
    }

    /// Dominant-class sum; `None` when the leading classes cancel exactly
    /// (sub-leading structure is not tracked here).
    pub fn add(&self, other: &Growth) -> Option<Growth> {
        match self.class_key().partial_cmp(&other.class_key()) {
            Some(std::cmp::Ordering::Greater) => Some(*self),
            Some(std::cmp::Ordering::Less) => Some(*other),
            _ => {
                let c = self.coeff + other.coeff;
                if c == 0.0 {
                    None
                } else {
                    Some(Growth { coeff: c, ..*self })
                }
            }
        }
    }

    pub fn limit(&self) -> Limit {
        if self.coeff == 0.0 {
            return Limit::Finite(0.0);
        }
        let up = if self.ratio > 1.0 {
            true
        } else if self.ratio < 1.0 {
            false
        } else if self.power != 0.0 {
            self.power > 0.0
        } else if self.logpow != 0.0 {
            self.logpow > 0.0
        } else {
            return Limit::Finite(self.coeff);
        };
        if up {
            if self.coeff > 0.0 {
                Limit::PosInfinite
            } else {
                Limit::NegInfinite
            }
        } else {
            Limit::Finite(0.0)
        }
    }

    /// Classification of `Σ c·r^k·k^p·(ln k)^l` by comparison tests.
    pub fn series_class(&self) -> SeriesClass {
        if self.coeff == 0.0 {
            return SeriesClass::Convergent;
        }
        let conv = if self.ratio < 1.0 {
            true
        } else if self.ratio > 1.0 {
            false
        } else if self.power < -1.0 {
            true
        } else if self.power > -1.0 {
            false
        } else {
            // k^{-1} (ln k)^l: convergent iff l < -1
            self.logpow < -1.0
        };
        if conv {
            SeriesClass::Convergent
        } else {
            SeriesClass::DivergentTo(Sign::of(self.coeff))
        }
    }
}

/// Analysis form attached to a sequence: either an exact monomial sum, an
/// exponential scale `sign · exp(log(k))` for super-geometric data, or opaque.
#[derive(Debug, Clone, PartialEq)]
pub enum SeqForm {
    Expr(SeqExpr),
    LogScale { sign: Sign, log: SeqExpr },
    Opaque,
}

impl SeqForm {
    pub fn limit(&self) -> Option<Limit> {
        match self {
            SeqForm::Expr(e) => Some(e.limit()),
            SeqForm::LogScale { sign, log } => match log.limit() {
                Limit::PosInfinite => Some(match sign {
                    Sign::Pos => Limit::PosInfinite,
                    Sign::Neg => Limit::NegInfinite,
                    Sign::Zero => Limit::Finite(0.0),
                }),
                Limit::NegInfinite => Some(Limit::Finite(0.0)),
                Limit::Finite(v) => Some(Limit::Finite(match sign {
                    Sign::Pos => v.exp(),
                    Sign::Neg => -v.exp(),
                    Sign::Zero => 0.0,
                })),
            },
            SeqForm::Opaque => None,
        }
    }
}

type EvalFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// Evaluator with an optional declared asymptotic class.
#[derive(Clone)]
pub struct CustomSeq {
    pub label: String,
    eval: EvalFn,
    pub class: Option<SeqForm>,
}

impl CustomSeq {
    pub fn new(
        label: impl Into<String>,
        eval: impl Fn(u64) -> f64 + Send + Sync + 'static,
        class: Option<SeqForm>,
    ) -> CustomSeq {
        CustomSeq { label: label.into(), eval: Arc::new(eval), class }
    }

    pub fn eval(&self, k: u64) -> f64 {
        (self.eval)(k)
    }
}

impl fmt::Debug for CustomSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSeq")
            .field("label", &self.label)
            .field("class", &self.class)
            .finish()
    }
}

impl PartialEq for CustomSeq {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.class == other.class
    }
}

/// Closed vocabulary of symbolic sequences indexed from k = 1.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolicSequence {
    /// Explicit finite data. Entries may be `f64::INFINITY` (δ' decoupling).
    Finite(Vec<f64>),
    /// `c0 + c1·k + c2·k^p` with `p < 0`.
    AffinePower { c0: f64, c1: f64, c2: f64, p: f64 },
    /// `c·k^p`.
    PowerLaw { c: f64, p: f64 },
    /// `c·r^k` with `r > 0`.
    Geometric { c: f64, r: f64 },
    /// Arbitrary evaluator; limit criteria see only the declared class.
    Custom(CustomSeq),
}

impl SymbolicSequence {
    pub fn finite(values: impl Into<Vec<f64>>) -> SymbolicSequence {
        SymbolicSequence::Finite(values.into())
    }

    /// Exact symbolic sequence backed by a monomial-sum expression.
    pub fn from_expr(label: impl Into<String>, expr: SeqExpr) -> SymbolicSequence {
        let e2 = expr.clone();
        SymbolicSequence::Custom(CustomSeq::new(
            label,
            move |k| e2.eval(k),
            Some(SeqForm::Expr(expr)),
        ))
    }

    /// Super-geometric sequence `sign·exp(log(k))` with an exact log scale.
    pub fn from_log_scale(
        label: impl Into<String>,
        sign: Sign,
        log: SeqExpr,
    ) -> SymbolicSequence {
        let l2 = log.clone();
        let s = match sign {
            Sign::Pos => 1.0,
            Sign::Neg => -1.0,
            Sign::Zero => 0.0,
        };
        SymbolicSequence::Custom(CustomSeq::new(
            label,
            move |k| s * l2.eval(k).exp(),
            Some(SeqForm::LogScale { sign, log }),
        ))
    }

    /// Number of entries for finite data; `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        match self {
            SymbolicSequence::Finite(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn is_finite_data(&self) -> bool {
        matches!(self, SymbolicSequence::Finite(_))
    }

    /// Value at index k >= 1; `None` past the end of finite data.
    pub fn eval(&self, k: u64) -> Option<f64> {
        assert!(k >= 1, "sequences are indexed from 1");
        match self {
            SymbolicSequence::Finite(v) => v.get((k - 1) as usize).copied(),
            SymbolicSequence::AffinePower { c0, c1, c2, p } => {
                let kf = k as f64;
                Some(c0 + c1 * kf + c2 * kf.powf(*p))
            }
            SymbolicSequence::PowerLaw { c, p } => Some(c * (k as f64).powf(*p)),
            SymbolicSequence::Geometric { c, r } => Some(c * r.powf(k as f64)),
            SymbolicSequence::Custom(c) => Some(c.eval(k)),
        }
    }

    /// Analysis form for limit-based criteria. Finite data has no asymptotic
    /// form and yields `None`; undeclared `Custom` yields `Opaque`.
    pub fn form(&self) -> Option<SeqForm> {
        match self {
            SymbolicSequence::Finite(_) => None,
            SymbolicSequence::AffinePower { c0, c1, c2, p } => {
                Some(SeqForm::Expr(SeqExpr::from_terms(vec![
                    Monomial { coeff: *c1, ratio: 1.0, power: 1.0 },
                    Monomial { coeff: *c0, ratio: 1.0, power: 0.0 },
                    Monomial { coeff: *c2, ratio: 1.0, power: *p },
                ])))
            }
            SymbolicSequence::PowerLaw { c, p } => Some(SeqForm::Expr(SeqExpr::power(*c, *p))),
            SymbolicSequence::Geometric { c, r } => {
                Some(SeqForm::Expr(SeqExpr::geometric(*c, *r)))
            }
            SymbolicSequence::Custom(c) => Some(c.class.clone().unwrap_or(SeqForm::Opaque)),
        }
    }

    /// Exact monomial-sum expression when one is available.
    pub fn expr(&self) -> Option<SeqExpr> {
        match self.form() {
            Some(SeqForm::Expr(e)) => Some(e),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(terms: &[(f64, f64, f64)]) -> SeqExpr {
        SeqExpr::from_terms(
            terms
                .iter()
                .map(|&(coeff, ratio, power)| Monomial { coeff, ratio, power })
                .collect(),
        )
    }

    #[test]
    fn merge_and_cancel() {
        let e = expr(&[(1.0, 1.0, -1.0), (-1.0, 1.0, -1.0)]);
        assert!(e.is_zero());
        let e = expr(&[(2.0, 1.0, 1.0), (3.0, 1.0, 1.0)]);
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.eval(2), 10.0);
    }

    #[test]
    fn limits() {
        assert_eq!(expr(&[(1.0, 1.0, -0.5)]).limit(), Limit::Finite(0.0));
        assert_eq!(expr(&[(-2.0, 1.0, 1.0), (-1.0, 1.0, 0.0)]).limit(), Limit::NegInfinite);
        assert_eq!(expr(&[(3.0, 1.0, 0.0), (5.0, 1.0, -1.0)]).limit(), Limit::Finite(3.0));
        assert_eq!(expr(&[(1.0, 2.0, 0.0)]).limit(), Limit::PosInfinite);
        assert_eq!(expr(&[(1.0, 0.5, 3.0)]).limit(), Limit::Finite(0.0));
    }

    #[test]
    fn series_classes() {
        // harmonic diverges, p = -2 converges
        assert_eq!(
            expr(&[(1.0, 1.0, -1.0)]).series(),
            SeriesClass::DivergentTo(Sign::Pos)
        );
        assert_eq!(expr(&[(1.0, 1.0, -2.0)]).series(), SeriesClass::Convergent);
        assert_eq!(expr(&[(1.0, 0.5, 2.0)]).series(), SeriesClass::Convergent);
        assert_eq!(
            expr(&[(-1.0, 1.0, 1.0), (100.0, 1.0, 0.5)]).series(),
            SeriesClass::DivergentTo(Sign::Neg)
        );
    }

    #[test]
    fn partial_sums() {
        match expr(&[(1.0, 1.0, -1.0)]).partial_sum_growth() {
            SumGrowth::Divergent(g) => {
                assert_eq!(g.logpow, 1.0);
                assert_eq!(g.power, 0.0);
            }
            other => panic!("expected log growth, got {other:?}"),
        }
        match expr(&[(2.0, 1.0, 0.0)]).partial_sum_growth() {
            SumGrowth::Divergent(g) => {
                assert_eq!(g.power, 1.0);
                assert_eq!(g.coeff, 2.0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(expr(&[(1.0, 1.0, -1.5)]).partial_sum_growth(), SumGrowth::Bounded);
    }

    #[test]
    fn tail_sums() {
        let g = expr(&[(1.0, 1.0, -3.0)]).tail_sum_growth().unwrap();
        assert_eq!(g.power, -2.0);
        assert!((g.coeff - 0.5).abs() < 1e-12);
        let g = expr(&[(1.0, 0.5, 0.0)]).tail_sum_growth().unwrap();
        assert_eq!(g.ratio, 0.5);
        assert!((g.coeff - 2.0).abs() < 1e-12);
    }

    #[test]
    fn signs() {
        // -k + 10·k^{1/2}: eventually negative, but positive early on
        let e = expr(&[(-1.0, 1.0, 1.0), (10.0, 1.0, 0.5)]);
        assert_eq!(e.eventual_sign(), Some(Sign::Neg));
        assert_eq!(e.sign_for_all(), None);
        let e = expr(&[(1.0, 1.0, -0.5), (2.0, 1.0, -1.0)]);
        assert_eq!(e.sign_for_all(), Some(Sign::Pos));
        assert_eq!(e.nonnegative_for_all(), Some(true));
    }

    #[test]
    fn poly_difference_squares() {
        // k^2 - (k-1)^2 = 2k - 1
        let d = SeqExpr::power(1.0, 2.0).poly_difference().unwrap();
        assert_eq!(d.eval(1), 1.0);
        assert_eq!(d.eval(5), 9.0);
        // k - (k-1) = 1
        let d = SeqExpr::power(1.0, 1.0).poly_difference().unwrap();
        assert_eq!(d.eval(7), 1.0);
    }

    #[test]
    fn growth_ops() {
        let a = Growth { coeff: 2.0, ratio: 1.0, power: 0.5, logpow: 0.0 };
        let b = Growth { coeff: 3.0, ratio: 1.0, power: -0.5, logpow: 0.0 };
        let p = a.mul(&b);
        assert_eq!(p.power, 0.0);
        assert_eq!(p.limit(), Limit::Finite(6.0));
        assert_eq!(
            Growth { coeff: 1.0, ratio: 1.0, power: -1.0, logpow: -2.0 }.series_class(),
            SeriesClass::Convergent
        );
        assert_eq!(
            Growth { coeff: 1.0, ratio: 1.0, power: -1.0, logpow: 0.0 }.series_class(),
            SeriesClass::DivergentTo(Sign::Pos)
        );
    }

    #[test]
    fn log_scale_limits() {
        // 2^{k²}: log = ln2·k²
        let log = SeqExpr::power(std::f64::consts::LN_2, 2.0);
        let form = SeqForm::LogScale { sign: Sign::Pos, log };
        assert_eq!(form.limit(), Some(Limit::PosInfinite));
        let log = SeqExpr::power(-1.0, 1.0);
        let form = SeqForm::LogScale { sign: Sign::Pos, log };
        assert_eq!(form.limit(), Some(Limit::Finite(0.0)));
    }

    #[test]
    fn symbolic_sequence_eval() {
        let s = SymbolicSequence::AffinePower { c0: -1.0, c1: -2.0, c2: 0.0, p: -1.0 };
        assert_eq!(s.eval(3), Some(-7.0)); // -(2k+1) at k=3
        let s = SymbolicSequence::PowerLaw { c: 2.0, p: 0.5 };
        assert!((s.eval(4).unwrap() - 4.0).abs() < 1e-15);
        let s = SymbolicSequence::finite(vec![1.0, f64::INFINITY]);
        assert_eq!(s.eval(2), Some(f64::INFINITY));
        assert_eq!(s.eval(3), None);
    }
}
