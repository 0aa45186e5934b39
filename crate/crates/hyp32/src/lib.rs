//! Evaluation and verification of the Clausen hypergeometric series
//! `3F2(a, b, c; b+1+m, c+1+n; 1)` whose denominator parameters exceed two of
//! the numerator parameters by the positive integers `1+m` and `1+n`.
//!
//! Every closed-form summation rule for this family is implemented as a
//! separate evaluator (see [`identities`]), each checked against an
//! independent direct-summation oracle with tail extrapolation
//! ([`series::sum_3f2_unit_oracle`]). The transformation rules used to derive
//! the closed forms are exposed as value-preserving rewrites in
//! [`transforms`], and [`verify`] drives seeded randomized comparisons of all
//! of them, producing machine-readable reports.
//!
//! Organization:
//!
//! - [`numerics`] — complex scalars, compensated accumulation, error-tracked
//!   values, tolerance policy
//! - [`gamma`] — Gamma, log-Gamma, Beta, Pochhammer and stable Gamma-ratio
//!   arithmetic over the complex plane
//! - [`series`] — direct series engines: the unit-argument oracle, Gauss
//!   summation, `2F1`/`3F2` power series, terminating sums, incomplete Beta
//! - [`identities`] — the closed-form evaluators and their registry
//! - [`transforms`] — Thomae, Pfaff, reversal and reduction rewrites
//! - [`verify`] — seeded sampling, identity cross-checking, singular probes

pub mod gamma;
pub mod identities;
pub mod numerics;
pub mod series;
pub mod transforms;
pub mod verify;

pub use numerics::{compensated_sum, rel_err, Cx, EvalError, Status, Tolerance, ValueWithError};
pub use series::{GaussSpec, Hyp32Spec, Params3F2NegDiff};
