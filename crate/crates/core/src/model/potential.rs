//! Piecewise-constant potentials with a constant tail, and the primitive
//! V(x) = ∫₀ˣ q + Σ_{x_k<x} α_k used by the quasi-derivative formulation.

use super::ModelError;

/// Potential q: constant on each cell between breakpoints, constant tail.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PiecewisePotential {
    /// Strictly increasing positive breakpoints b_1 < ... < b_m.
    pub breakpoints: Vec<f64>,
    /// Value on [b_{i-1}, b_i) with b_0 = 0; same length as `breakpoints`.
    pub values: Vec<f64>,
    /// Value on [b_m, ∞).
    pub tail: f64,
}

impl PiecewisePotential {
    pub fn zero() -> PiecewisePotential {
        PiecewisePotential::default()
    }

    pub fn constant(v: f64) -> PiecewisePotential {
        PiecewisePotential { breakpoints: Vec::new(), values: Vec::new(), tail: v }
    }

    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, tail: f64) -> PiecewisePotential {
        PiecewisePotential { breakpoints, values, tail }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.breakpoints.len() != self.values.len() {
            return Err(ModelError::PotentialShape);
        }
        let mut prev = 0.0;
        for &b in &self.breakpoints {
            if !b.is_finite() || b <= prev {
                return Err(ModelError::PotentialShape);
            }
            prev = b;
        }
        if self.values.iter().chain(std::iter::once(&self.tail)).any(|v| !v.is_finite()) {
            return Err(ModelError::PotentialShape);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.tail == 0.0 && self.values.iter().all(|&v| v == 0.0)
    }

    /// q is bounded by construction; its essential inf over the half-line.
    pub fn lower_bound(&self) -> f64 {
        self.values.iter().cloned().fold(self.tail, f64::min)
    }

    pub fn upper_bound(&self) -> f64 {
        self.values.iter().cloned().fold(self.tail, f64::max)
    }

    pub fn value_at(&self, x: f64) -> f64 {
        for (i, &b) in self.breakpoints.iter().enumerate() {
            if x < b {
                return self.values[i];
            }
        }
        self.tail
    }

    /// ∫₀ˣ q(t) dt.
    pub fn integral_to(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        let mut lo = 0.0;
        for (i, &b) in self.breakpoints.iter().enumerate() {
            if x <= b {
                return acc + self.values[i] * (x - lo);
            }
            acc += self.values[i] * (b - lo);
            lo = b;
        }
        acc + self.tail * (x - lo)
    }

    /// ∫ of the negative part q⁻ = (|q| - q)/2 over the whole half-line;
    /// finite because only finitely many cells are negative.
    pub fn negative_part_integral(&self) -> f64 {
        if self.tail < 0.0 {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        let mut lo = 0.0;
        for (i, &b) in self.breakpoints.iter().enumerate() {
            let v = self.values[i];
            if v < 0.0 {
                acc += -v * (b - lo);
            }
            lo = b;
        }
        acc
    }
}

/// One affine segment of V on (start, end]: V(x) = value + slope·(x - start)
/// for x just past `start`. Jumps of V live exactly at segment starts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VSegment {
    pub start: f64,
    /// `None` for the unbounded final segment.
    pub end: Option<f64>,
    /// Right limit V(start+).
    pub value: f64,
    pub slope: f64,
}

/// Piecewise-affine primitive V with jumps at interaction points; V is
/// left-continuous (the jump at x_k is charged strictly past x_k).
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveV {
    pub segments: Vec<VSegment>,
}

impl PrimitiveV {
    /// Assemble V from the potential and the δ strengths at `points`.
    pub fn assemble(potential: &PiecewisePotential, points: &[f64], strengths: &[f64]) -> PrimitiveV {
        assert_eq!(points.len(), strengths.len());
        let mut cuts: Vec<f64> = potential
            .breakpoints
            .iter()
            .cloned()
            .chain(points.iter().cloned())
            .collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();

        let mut segments = Vec::with_capacity(cuts.len() + 1);
        let mut lo = 0.0;
        let mut v_left = 0.0; // V(lo) from the left (V(0) = 0)
        for &cut in cuts.iter().chain(std::iter::once(&f64::INFINITY)) {
            let jump: f64 = points
                .iter()
                .zip(strengths)
                .filter(|(&x, _)| x == lo)
                .map(|(_, &a)| a)
                .sum();
            let value = v_left + jump;
            let slope = potential.value_at(lo + 0.5 * (cut - lo).min(1.0));
            let end = if cut.is_finite() { Some(cut) } else { None };
            segments.push(VSegment { start: lo, end, value, slope });
            if let Some(e) = end {
                v_left = value + slope * (e - lo);
                lo = e;
            }
        }
        PrimitiveV { segments }
    }

    /// V(x) with the left-continuity convention.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        for seg in self.segments.iter().rev() {
            if x > seg.start {
                return seg.value + seg.slope * (x - seg.start);
            }
        }
        0.0
    }

    /// Right limit V(x+).
    pub fn eval_right(&self, x: f64) -> f64 {
        for seg in self.segments.iter().rev() {
            if x >= seg.start {
                return seg.value + seg.slope * (x - seg.start);
            }
        }
        0.0
    }

    /// Segment boundaries (integration restarts).
    pub fn cuts(&self) -> Vec<f64> {
        self.segments.iter().skip(1).map(|s| s.start).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_negative_delta() {
        // q = 0, α = (-1) at x = (1): V = 0 on [0,1], -1 past 1
        let v = PrimitiveV::assemble(&PiecewisePotential::zero(), &[1.0], &[-1.0]);
        assert_eq!(v.eval(0.5), 0.0);
        assert_eq!(v.eval(1.0), 0.0); // left-continuous at the jump
        assert_eq!(v.eval_right(1.0), -1.0);
        assert_eq!(v.eval(3.0), -1.0);
    }

    #[test]
    fn pure_potential_integral() {
        // q = 2 on [0,3] then 0: V = 2x then 6
        let q = PiecewisePotential::new(vec![3.0], vec![2.0], 0.0);
        let v = PrimitiveV::assemble(&q, &[], &[]);
        assert_eq!(v.eval(1.5), 3.0);
        assert_eq!(v.eval(3.0), 6.0);
        assert_eq!(v.eval(10.0), 6.0);
    }

    #[test]
    fn two_positive_deltas() {
        let v = PrimitiveV::assemble(&PiecewisePotential::zero(), &[1.0, 2.0], &[1.0, 1.0]);
        assert_eq!(v.eval(0.5), 0.0);
        assert_eq!(v.eval(1.5), 1.0);
        assert_eq!(v.eval(2.5), 2.0);
        assert_eq!(v.eval(2.0), 1.0);
    }

    #[test]
    fn nondecreasing_when_nonnegative() {
        let q = PiecewisePotential::new(vec![1.0, 2.0], vec![0.5, 1.0], 0.25);
        let v = PrimitiveV::assemble(&q, &[0.7, 1.3], &[2.0, 0.0]);
        let mut prev = f64::NEG_INFINITY;
        let mut x = 0.01;
        while x < 5.0 {
            let val = v.eval(x);
            assert!(val >= prev - 1e-14);
            prev = val;
            x += 0.01;
        }
    }

    #[test]
    fn integral_helpers() {
        let q = PiecewisePotential::new(vec![1.0, 2.0], vec![-1.0, 3.0], 0.0);
        assert_eq!(q.integral_to(0.5), -0.5);
        assert_eq!(q.integral_to(2.0), 2.0);
        assert_eq!(q.negative_part_integral(), 1.0);
        assert_eq!(q.lower_bound(), -1.0);
        assert!(PiecewisePotential::constant(-1.0).negative_part_integral().is_infinite());
    }
}
