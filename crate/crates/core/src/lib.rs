//! Exact arithmetic for a family of linear codes over `F_p` built from the
//! trace of `x^2`, together with closed-form predictions of their complete
//! weight enumerators and the counting identities behind them.
//!
//! ```
//! use trace_codes::{brute_force_cwe, predicted_cwe_cd, CodeSpec, CodeVariant};
//!
//! let spec = CodeSpec::new(3, 5, 1, CodeVariant::Cd).unwrap();
//! let ctx = spec.field().unwrap();
//! let brute = brute_force_cwe(&ctx, &spec).unwrap();
//! assert_eq!(brute, predicted_cwe_cd(3, 5).unwrap());
//! assert_eq!(
//!     brute.weight_distribution().to_string(),
//!     "1 + 90 z^48 + 80 z^54 + 72 z^60"
//! );
//! ```

pub mod closed_form;
pub mod code;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod verify;

pub use closed_form::{
    predicted_cwe_cd, predicted_cwe_cdb, predicted_wd_cd, predicted_wd_cdb, SignConstant,
};
pub use code::{
    brute_force_cwe, build_defining_set, matches_square_set, CodeSpec, CodeVariant,
    CompleteWeightEnumerator, CompositionVector, DefiningSet, WeightDistribution,
};
pub use cyclotomic::{gauss_sum, mixed_trace_sum, square_trace_sum, CyclotomicInt, MixedTraceSums};
pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement, PrimeElement};

/// The guide's code samples, compiled and run as doc-tests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/fields.md")]
    struct Fields;
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    struct Cyclotomic;
    #[doc = include_str!("../../../book/src/codes.md")]
    struct Codes;
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    struct ClosedForms;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../README.md")]
    struct Readme;
}
