//! Named spectral criteria as auditable classifiers. Every verdict carries
//! its hypothesis checks and computed certificates; sufficient tests never
//! produce a negative conclusion.

pub mod delta;
pub mod delta_prime;

mod verdict;

pub use verdict::{
    aggregate, analyze, AggregateReport, CertValue, Conclusion, DiscConclusion, EssConclusion,
    Report, SaConclusion, SbConclusion, TypeConclusion, Verdict,
};
