use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AnalysisError, SchemeMetrics, MAX_EXACT_F_BITS};

/// Schemes combined by splitting every file in proportion to the weights.
#[derive(Clone, Debug, PartialEq)]
pub struct MemoryShareSpec {
    components: Vec<(SchemeMetrics, BigRational)>,
}

impl MemoryShareSpec {
    /// Weights must lie in `(0, 1]` and sum to exactly 1; components must be
    /// in ascending order of memory ratio.
    pub fn new(components: Vec<(SchemeMetrics, BigRational)>) -> Result<Self, AnalysisError> {
        if components.is_empty() {
            return Err(AnalysisError::EmptyShare);
        }
        let mut sum = BigRational::zero();
        for (_, w) in &components {
            if w <= &BigRational::zero() || w > &BigRational::one() {
                return Err(AnalysisError::WeightRange(w.clone()));
            }
            sum += w;
        }
        if !sum.is_one() {
            return Err(AnalysisError::WeightSum(sum));
        }
        if components.windows(2).any(|p| p[0].0.ratio > p[1].0.ratio) {
            return Err(AnalysisError::Unordered);
        }
        Ok(MemoryShareSpec { components })
    }

    /// Two schemes, the first with weight `lambda`.
    pub fn pair(
        a: SchemeMetrics,
        b: SchemeMetrics,
        lambda: BigRational,
    ) -> Result<Self, AnalysisError> {
        let rest = BigRational::one() - &lambda;
        if rest.is_zero() {
            return Self::new(vec![(a, lambda)]);
        }
        Self::new(vec![(a, lambda), (b, rest)])
    }

    pub fn components(&self) -> &[(SchemeMetrics, BigRational)] {
        &self.components
    }
}

/// `(Σ λ_i M_i/N, Σ λ_i R_i, Σ F_i)`.
pub fn memory_share(spec: &MemoryShareSpec) -> SchemeMetrics {
    let mut ratio = BigRational::zero();
    let mut rate = BigRational::zero();
    let mut f = Some(BigUint::zero());
    for (m, w) in &spec.components {
        ratio += &m.ratio * w;
        rate += &m.rate * w;
        f = f.zip(m.f.as_ref()).map(|(acc, x)| acc + x);
    }
    // log-sum-exp so that huge F never overflow
    let top = spec
        .components
        .iter()
        .map(|(m, _)| m.ln_f)
        .fold(f64::NEG_INFINITY, f64::max);
    let ln_f = top
        + spec
            .components
            .iter()
            .map(|(m, _)| (m.ln_f - top).exp())
            .sum::<f64>()
            .ln();
    SchemeMetrics {
        ratio,
        rate,
        ln_f,
        f: f.filter(|f| f.bits() <= MAX_EXACT_F_BITS),
    }
}
