//! Error-tracked complex arithmetic, compensated accumulation, and the
//! tolerance policy shared by the series engines and closed-form evaluators.

use serde::Serialize;
use thiserror::Error;

/// Complex scalar used throughout the crate (binary64 components).
pub type Cx = num_complex::Complex64;

/// Shorthand for building a [`Cx`] from real and imaginary parts.
#[inline]
pub fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

/// Default floor used by [`rel_err`] so that comparisons against an exact
/// zero stay meaningful.
pub const ABS_FLOOR: f64 = 1e-300;

/// Outcome classification attached to every computed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    SlowConvergence,
    NearSingular,
    DomainViolation,
}

/// Hard evaluation failures. Soft conditions (a value exists but is suspect)
/// travel as a [`Status`] on [`ValueWithError`] instead.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("near-singular: {0}")]
    NearSingular(String),
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("slow convergence: {0}")]
    SlowConvergence(String),
}

impl EvalError {
    pub fn status(&self) -> Status {
        match self {
            EvalError::NearSingular(_) => Status::NearSingular,
            EvalError::DomainViolation(_) => Status::DomainViolation,
            EvalError::SlowConvergence(_) => Status::SlowConvergence,
        }
    }
}

/// A complex value paired with an absolute-error estimate.
///
/// `status == Ok` means `abs_err` is a believed bound on `|true - value|`.
#[derive(Debug, Clone, Copy)]
pub struct ValueWithError {
    pub value: Cx,
    pub abs_err: f64,
    pub status: Status,
}

impl ValueWithError {
    pub fn new(value: Cx, abs_err: f64) -> Self {
        ValueWithError {
            value,
            abs_err,
            status: Status::Ok,
        }
    }

    /// A value believed exact to roundoff.
    pub fn exact(value: Cx) -> Self {
        ValueWithError::new(value, f64::EPSILON * value.norm())
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// Multiply by an exact scalar; the error scales with it.
    pub fn scale(&self, k: Cx) -> Self {
        ValueWithError {
            value: self.value * k,
            abs_err: self.abs_err * k.norm(),
            status: self.status,
        }
    }

    /// Relative error bound implied by `abs_err`.
    pub fn rel_err_bound(&self) -> f64 {
        self.abs_err / self.value.norm().max(ABS_FLOOR)
    }
}

/// Convergence policy for the series engines.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Target relative error of a series evaluation.
    pub rel_tol: f64,
    /// Floor protecting relative-error quotients against exact zeros.
    pub abs_floor: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_tol: 1e-10,
            abs_floor: ABS_FLOOR,
            max_terms: 10_000_000,
        }
    }
}

/// Neumaier (improved Kahan) accumulator for one real component.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated accumulator applied independently to the real and imaginary
/// parts of a complex stream. Also tracks the sum of term magnitudes, which
/// bounds the roundoff of the whole accumulation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanCx {
    re: KahanSum,
    im: KahanSum,
    abs: f64,
}

impl KahanCx {
    pub fn add(&mut self, t: Cx) {
        self.re.add(t.re);
        self.im.add(t.im);
        self.abs += t.norm();
    }

    pub fn value(&self) -> Cx {
        Cx::new(self.re.value(), self.im.value())
    }

    /// Sum of `|t_k|` over everything accumulated so far.
    pub fn abs_sum(&self) -> f64 {
        self.abs
    }

    /// Roundoff bound for the accumulated sum.
    pub fn roundoff(&self) -> f64 {
        2.0 * f64::EPSILON * self.abs
    }
}

/// Sum of a sequence with compensated accumulation per component.
///
/// The result matches the exactly-rounded sum up to `O(u^2 n Σ|t|)`.
pub fn compensated_sum(terms: &[Cx]) -> Cx {
    let mut acc = KahanCx::default();
    for &t in terms {
        acc.add(t);
    }
    acc.value()
}

/// `|x - y| / max(|y|, ABS_FLOOR)`; the second argument is the reference.
pub fn rel_err(x: Cx, y: Cx) -> f64 {
    (x - y).norm() / y.norm().max(ABS_FLOOR)
}
