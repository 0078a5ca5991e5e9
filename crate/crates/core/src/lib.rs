//! Binary quadratic forms of negative discriminant, class-group arithmetic, and
//! a certification pipeline showing that `(d^2, 0, 2k - 1)` primitively
//! represents only even powers of `k`, which rules out extra solutions of
//! `x^2 + (2k - 1)^y = k^z`.

pub mod certificate;
pub mod error;
pub mod form;
pub mod modular;
pub mod pipeline;
pub mod represent;

pub use certificate::{Certificate, CertificateJson, FailureReason, Verdict};
pub use error::{Error, Result};
pub use form::{class_number, Form, TransformMatrix};
pub use modular::{factorize, CongruenceSolutionSet, Factorization};
pub use pipeline::{
    brute_force_solutions, certify_d, check_ab_conjecture, reverify_certificate, verify_k, DivisorStrategy,
    EligibilityMode, KContext, SolutionTriple, VerifyOptions, VerifyReport,
};
pub use represent::{primitively_represents, represented_exponents, RepresentationWitness};
