//! Transformation rules as value-preserving rewrites with explicit
//! prefactors, so that every derivation step is independently checkable.
//!
//! A [`Rewrite`] never evaluates anything eagerly; callers (tests, the
//! verification harness) choose the evaluation route for each produced spec.

use crate::gamma::{exact_int, exact_nonpos_int, factorial, gamma_quotient, poch};
use crate::numerics::{cx, Cx, EvalError, KahanCx, Tolerance, ValueWithError};
use crate::series::{
    gauss_2f1_unit, sum_2f1_series, sum_3f2_series, sum_hyp32_unit, terminating_3f2_with_err,
    GaussSpec, Hyp32Spec, Params3F2NegDiff,
};

/// Result of a transformation: the input's value equals
/// `prefactor * sum_i coefficient_i * F(spec_i)`.
#[derive(Debug, Clone)]
pub struct Rewrite {
    pub prefactor: Cx,
    pub results: Vec<(Cx, Hyp32Spec)>,
}

fn one() -> Cx {
    cx(1.0, 0.0)
}

/// Evaluate a general `3F2` spec by the best available route: exact
/// terminating sum, the unit-argument engine, or the `|z| < 1` power series.
pub fn eval_hyp32_best(spec: &Hyp32Spec, tol: &Tolerance) -> Result<ValueWithError, EvalError> {
    if spec.termination_order().is_some() {
        let (v, e) = terminating_3f2_with_err(spec)?;
        return Ok(ValueWithError::new(v, e));
    }
    if spec.z == one() {
        return sum_hyp32_unit(spec, tol);
    }
    sum_3f2_series(spec, tol)
}

impl Rewrite {
    /// Numeric value of the right-hand side; coefficients that are exactly
    /// zero skip their spec entirely (it may not even converge).
    pub fn eval(&self, tol: &Tolerance) -> Result<ValueWithError, EvalError> {
        let mut acc = KahanCx::default();
        let mut err = 0.0;
        for (coeff, spec) in &self.results {
            if *coeff == cx(0.0, 0.0) {
                continue;
            }
            let v = eval_hyp32_best(spec, tol)?;
            acc.add(*coeff * v.value);
            err += coeff.norm() * v.abs_err + 5e-15 * (*coeff * v.value).norm();
        }
        let value = self.prefactor * acc.value();
        Ok(ValueWithError::new(
            value,
            self.prefactor.norm() * (err + acc.roundoff()),
        ))
    }
}

/// Weighted Gauss terms produced by the reduction rules.
pub fn eval_gauss_terms(
    terms: &[(Cx, GaussSpec)],
    tol: &Tolerance,
) -> Result<ValueWithError, EvalError> {
    let mut acc = KahanCx::default();
    let mut err = 0.0;
    for (coeff, g) in terms {
        if *coeff == cx(0.0, 0.0) {
            continue;
        }
        let v = if g.z == one() && g.termination_order().is_none() {
            gauss_2f1_unit(g.a, g.b, g.c)?
        } else {
            sum_2f1_series(g, tol)?
        };
        acc.add(*coeff * v.value);
        err += coeff.norm() * v.abs_err + 5e-15 * (*coeff * v.value).norm();
    }
    Ok(ValueWithError::new(acc.value(), err + acc.roundoff()))
}

/// Two-term Thomae transformation of a `3F2(1)`, slots
/// `(a, b, c; d, e) = (num[0], num[1], num[2]; den[0], den[1])`:
/// the rewrite is `G(d) G(p-c) / (G(p) G(d-c)) * 3F2(e-a, e-b, c; p, e; 1)`
/// with `p = d + e - a - b`. The last pair `(c, e)` is left unaltered.
pub fn thomae_two_term(s: &Hyp32Spec) -> Result<Rewrite, EvalError> {
    if s.z != one() {
        return Err(EvalError::DomainViolation("thomae requires z = 1".into()));
    }
    let [a, b, c] = s.num;
    let [d, e] = s.den;
    let p = d + e - a - b;
    let terminating = s.termination_order().is_some();
    if !terminating && (p - c).re <= 0.0 {
        return Err(EvalError::DomainViolation(
            "thomae: input series diverges (Re(d+e-a-b-c) <= 0)".into(),
        ));
    }
    if (d - c).re <= 0.0 && exact_nonpos_int(c).is_none() {
        return Err(EvalError::DomainViolation(
            "thomae: transformed series diverges (Re(d-c) <= 0, c not terminating)".into(),
        ));
    }
    let prefactor = gamma_quotient(&[d, p - c], &[p, d - c])?;
    Ok(Rewrite {
        prefactor,
        results: vec![(one(), Hyp32Spec::unit([e - a, e - b, c], [p, e]))],
    })
}

/// Three-term Thomae relation of a `3F2(1)`, slots
/// `(a, b, c; e, f)`. Produces
///
/// - coefficient `G(e) G(e-a-b) / (G(e-a) G(e-b))` on
///   `3F2(a, b, f-c; a+b-e+1, f; 1)`, and
/// - coefficient `G(e) G(f) G(a+b-e) G(e+f-a-b-c) /
///   (G(a) G(b) G(f-c) G(e+f-a-b))` on
///   `3F2(e-a, e-b, e+f-a-b-c; e-a-b+1, e+f-a-b; 1)`.
///
/// A coefficient whose Gamma poles sit only in the denominator is an exact
/// zero and its spec is skipped at evaluation time (the terminating case).
pub fn thomae_three_term(s: &Hyp32Spec) -> Result<Rewrite, EvalError> {
    if s.z != one() {
        return Err(EvalError::DomainViolation("thomae requires z = 1".into()));
    }
    let [a, b, c] = s.num;
    let [e, f] = s.den;
    let excess = e + f - a - b - c;
    let terminating = s.termination_order().is_some();
    if !terminating {
        if excess.re <= 0.0 {
            return Err(EvalError::DomainViolation(
                "thomae-3: input series diverges".into(),
            ));
        }
        if (one() + c - e).re <= 0.0 {
            return Err(EvalError::DomainViolation(
                "thomae-3: transformed series diverge (Re(1+c-e) <= 0)".into(),
            ));
        }
    }
    let c1 = gamma_quotient(&[e, e - a - b], &[e - a, e - b])?;
    let c2 = gamma_quotient(&[e, f, a + b - e, excess], &[a, b, f - c, e + f - a - b])?;
    Ok(Rewrite {
        prefactor: one(),
        results: vec![
            (c1, Hyp32Spec::unit([a, b, f - c], [a + b - e + one(), f])),
            (
                c2,
                Hyp32Spec::unit([e - a, e - b, excess], [e - a - b + one(), e + f - a - b]),
            ),
        ],
    })
}

/// Reduction of a `3F2` whose denominator carries the pair `(a, a-n)`
/// (slots: `num[0] = a`, `den[0] = a - n`) to `n+1` weighted Gauss
/// functions:
///
/// `3F2(a,b,c;a-n,d;z) = 1/(1-a)_n sum_p (-z)^p C(n,p) (1-a)_{n-p}
///  (b)_p (c)_p / (d)_p * 2F1(b+p, c+p; d+p; z)`.
pub fn pf_reduce(s: &Hyp32Spec, n: u32) -> Result<Vec<(Cx, GaussSpec)>, EvalError> {
    let [a, b, c] = s.num;
    let [d0, d] = s.den;
    let shifted = a - cx(n as f64, 0.0);
    if (d0 - shifted).norm() > 1e-9 * (1.0 + a.norm()) {
        return Err(EvalError::DomainViolation(
            "pf_reduce: den[0] must equal num[0] - n".into(),
        ));
    }
    let denom = poch(one() - a, n as i64)?;
    if denom == cx(0.0, 0.0) {
        return Err(EvalError::DomainViolation("pf_reduce: (1-a)_n = 0".into()));
    }
    let mut out = Vec::with_capacity(n as usize + 1);
    for p in 0..=(n as i64) {
        let binom = factorial(n) / (factorial(p as u32) * factorial(n - p as u32));
        let coeff = (-s.z).powi(p as i32) * binom * poch(one() - a, n as i64 - p)?
            * poch(b, p)?
            * poch(c, p)?
            / poch(d, p)?
            / denom;
        let pf = cx(p as f64, 0.0);
        out.push((coeff, GaussSpec::new(b + pf, c + pf, d + pf, s.z)));
    }
    Ok(out)
}

/// Reversal rule for a terminating `3F2(1)` with the denominator pattern
/// `c - n` (slots: `num = [-n, a, b]`, `den = [c-n, d]`):
///
/// `3F2(-n,a,b;c-n,d;1) = (1+a-c)_n/(1-c)_n * 3F2(-n,a,d-b;1+a-c,d;1)`.
pub fn rd_reverse(s: &Hyp32Spec, n: u32) -> Result<Rewrite, EvalError> {
    if s.z != one() {
        return Err(EvalError::DomainViolation("rd_reverse requires z = 1".into()));
    }
    if exact_int(s.num[0]) != Some(-(n as i64)) {
        return Err(EvalError::DomainViolation(
            "rd_reverse: num[0] must be exactly -n".into(),
        ));
    }
    let a = s.num[1];
    let b = s.num[2];
    let c = s.den[0] + cx(n as f64, 0.0);
    let d = s.den[1];
    let den = poch(one() - c, n as i64)?;
    if den == cx(0.0, 0.0) {
        return Err(EvalError::DomainViolation("rd_reverse: (1-c)_n = 0".into()));
    }
    let prefactor = poch(one() + a - c, n as i64)? / den;
    Ok(Rewrite {
        prefactor,
        results: vec![(
            one(),
            Hyp32Spec::unit([s.num[0], a, d - b], [one() + a - c, d]),
        )],
    })
}

/// Reversal rule for the fully shifted terminating pattern
/// (slots: `num = [-n, a, b-n]`, `den = [c-n, d-n]`):
///
/// `3F2(-n,a,b-n;c-n,d-n;1) = (1+a-c)_n (1-b)_n / ((1-c)_n (1-d)_n)
///  * 3F2(-n, d-b, 1-c; 1+a-c, 1-b; 1)`.
pub fn re_transform(s: &Hyp32Spec, n: u32) -> Result<Rewrite, EvalError> {
    if s.z != one() {
        return Err(EvalError::DomainViolation("re_transform requires z = 1".into()));
    }
    if exact_int(s.num[0]) != Some(-(n as i64)) {
        return Err(EvalError::DomainViolation(
            "re_transform: num[0] must be exactly -n".into(),
        ));
    }
    let nf = cx(n as f64, 0.0);
    let a = s.num[1];
    let b = s.num[2] + nf;
    let c = s.den[0] + nf;
    let d = s.den[1] + nf;
    let den = poch(one() - c, n as i64)? * poch(one() - d, n as i64)?;
    if den == cx(0.0, 0.0) {
        return Err(EvalError::DomainViolation(
            "re_transform: pole in the prefactor".into(),
        ));
    }
    let prefactor = poch(one() + a - c, n as i64)? * poch(one() - b, n as i64)? / den;
    Ok(Rewrite {
        prefactor,
        results: vec![(
            one(),
            Hyp32Spec::unit([s.num[0], d - b, one() - c], [one() + a - c, one() - b]),
        )],
    })
}

/// Pfaff's linear transformation of a Gauss function:
/// `2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))`.
pub fn pfaff_linear(g: &GaussSpec) -> Result<(Cx, GaussSpec), EvalError> {
    if g.z == one() {
        return Err(EvalError::DomainViolation("pfaff requires z != 1".into()));
    }
    if g.z.im == 0.0 && g.z.re > 1.0 {
        return Err(EvalError::DomainViolation(
            "pfaff requires |arg(1-z)| < pi".into(),
        ));
    }
    let prefactor = (one() - g.z).powc(-g.a);
    Ok((
        prefactor,
        GaussSpec::new(g.a, g.c - g.b, g.c, g.z / (g.z - one())),
    ))
}

/// Karlsson's reduction of the negative-difference `3F2(z)` to
/// `2 (m+1)(n+1)` weighted Gauss functions of the form
/// `2F1(a, c+j; c+j+1; z)` and `2F1(a, b+i; b+i+1; z)`. At `z = 1` each is
/// Gauss-summable, reproducing the double Beta sum.
pub fn karlsson_z_reduce(
    p: &Params3F2NegDiff,
    z: Cx,
) -> Result<Vec<(Cx, GaussSpec)>, EvalError> {
    let (a, b, c) = (p.a, p.b, p.c);
    for (name, v) in [("b", b), ("c", c)] {
        if exact_nonpos_int(v).is_some() {
            return Err(EvalError::DomainViolation(format!(
                "karlsson reduction: {name} is a nonpositive integer"
            )));
        }
    }
    if let Some(k) = exact_int(b - c) {
        if -(p.m as i64) <= k && k <= p.n as i64 {
            return Err(EvalError::DomainViolation(
                "karlsson reduction: b - c collides with an integer in [-m, n]".into(),
            ));
        }
    }
    let scale = poch(b, p.m as i64 + 1)? * poch(c, p.n as i64 + 1)?
        / (factorial(p.m) * factorial(p.n));
    let mut out = Vec::with_capacity(2 * (p.m as usize + 1) * (p.n as usize + 1));
    let mut wi = one();
    for i in 0..=(p.m as i64) {
        let fi = cx(i as f64, 0.0);
        let mut w = wi;
        for j in 0..=(p.n as i64) {
            let fj = cx(j as f64, 0.0);
            let shift = fi - fj;
            out.push((
                scale * w / ((c + fj) * (b - c + shift)),
                GaussSpec::new(a, c + fj, c + fj + one(), z),
            ));
            out.push((
                scale * w / ((b + fi) * (c - b - shift)),
                GaussSpec::new(a, b + fi, b + fi + one(), z),
            ));
            w *= (fj - cx(p.n as f64, 0.0)) / (fj + one());
        }
        wi *= (fi - cx(p.m as f64, 0.0)) / (fi + one());
    }
    Ok(out)
}

/// A `3F2` with one or two positive integral parameter differences
/// `(b_i + m_i)` over `(b_i)`, plus the remaining free parameters.
#[derive(Debug, Clone)]
pub struct KarMintonSpec {
    pub b1: Cx,
    pub m1: u32,
    /// Second positive-difference pair, present only for `r = 2`.
    pub pair2: Option<(Cx, u32)>,
    pub remaining_num: Vec<Cx>,
    pub remaining_den: Vec<Cx>,
    pub z: Cx,
}

/// Lower-order hypergeometric produced by the Karlsson-Minton reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReducedFn {
    /// A `2F1` (the `r = 1` case).
    Gauss(GaussSpec),
    /// A `1F0(a; ; z) = (1-z)^{-a}` (the `r = 2` case).
    Binomial { a: Cx, z: Cx },
}

impl ReducedFn {
    pub fn eval(&self, tol: &Tolerance) -> Result<ValueWithError, EvalError> {
        match self {
            ReducedFn::Gauss(g) => {
                if g.z == one() && g.termination_order().is_none() {
                    gauss_2f1_unit(g.a, g.b, g.c)
                } else {
                    sum_2f1_series(g, tol)
                }
            }
            ReducedFn::Binomial { a, z } => {
                if *z == one() {
                    return if *a == cx(0.0, 0.0) {
                        Ok(ValueWithError::exact(one()))
                    } else if a.re < 0.0 {
                        Ok(ValueWithError::new(cx(0.0, 0.0), 0.0))
                    } else {
                        Err(EvalError::DomainViolation(
                            "1F0 diverges at z = 1 for Re(a) >= 0".into(),
                        ))
                    };
                }
                let v = (one() - z).powc(-a);
                Ok(ValueWithError::exact(v))
            }
        }
    }
}

/// Karlsson-Minton-type reduction of a `3F2` with `r <= 2`
/// positive-difference pairs into nested finite sums of lower-order
/// functions, each shifted by the summation total `J` and weighted by the
/// binomial-Pochhammer factor of the rule. Capped at `m_i <= 16`.
pub fn karlsson_minton_reduce(
    s: &KarMintonSpec,
) -> Result<Vec<(Cx, ReducedFn)>, EvalError> {
    if s.m1 > 16 || s.pair2.map_or(false, |(_, m2)| m2 > 16) {
        return Err(EvalError::DomainViolation(
            "karlsson-minton reduction capped at m_i <= 16".into(),
        ));
    }
    match s.pair2 {
        None => {
            // 3F2(b1+m1, a2, a3; b1, b2; z) -> 2F1(a2+j, a3+j; b2+j; z).
            if s.remaining_num.len() != 2 || s.remaining_den.len() != 1 {
                return Err(EvalError::DomainViolation(
                    "r = 1 reduction needs 2 remaining numerator and 1 denominator parameters"
                        .into(),
                ));
            }
            let (a2, a3) = (s.remaining_num[0], s.remaining_num[1]);
            let b2 = s.remaining_den[0];
            let mut out = Vec::with_capacity(s.m1 as usize + 1);
            for j in 0..=(s.m1 as i64) {
                let binom =
                    factorial(s.m1) / (factorial(j as u32) * factorial(s.m1 - j as u32));
                let den = poch(s.b1, j)? * poch(b2, j)?;
                if den == cx(0.0, 0.0) {
                    return Err(EvalError::DomainViolation(
                        "karlsson-minton: pole in the weight".into(),
                    ));
                }
                let lam = binom * poch(a2, j)? * poch(a3, j)? / den;
                let jf = cx(j as f64, 0.0);
                out.push((
                    lam * s.z.powi(j as i32),
                    ReducedFn::Gauss(GaussSpec::new(a2 + jf, a3 + jf, b2 + jf, s.z)),
                ));
            }
            Ok(out)
        }
        Some((b2, m2)) => {
            // 3F2(b1+m1, b2+m2, a3; b1, b2; z) -> 1F0(a3+J; z).
            if s.remaining_num.len() != 1 || !s.remaining_den.is_empty() {
                return Err(EvalError::DomainViolation(
                    "r = 2 reduction needs 1 remaining numerator and 0 denominator parameters"
                        .into(),
                ));
            }
            let a3 = s.remaining_num[0];
            let mut out = Vec::new();
            for j1 in 0..=(s.m1 as i64) {
                for j2 in 0..=(m2 as i64) {
                    let jtot = j1 + j2;
                    let binom = factorial(s.m1)
                        / (factorial(j1 as u32) * factorial(s.m1 - j1 as u32))
                        * factorial(m2)
                        / (factorial(j2 as u32) * factorial(m2 - j2 as u32));
                    let den = poch(s.b1, j1)? * poch(b2, jtot)?;
                    if den == cx(0.0, 0.0) {
                        return Err(EvalError::DomainViolation(
                            "karlsson-minton: pole in the weight".into(),
                        ));
                    }
                    let lam =
                        binom * poch(b2 + cx(m2 as f64, 0.0), j1)? * poch(a3, jtot)? / den;
                    out.push((
                        lam * s.z.powi(jtot as i32),
                        ReducedFn::Binomial {
                            a: a3 + cx(jtot as f64, 0.0),
                            z: s.z,
                        },
                    ));
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rel_err;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn thomae_two_term_trivial_c_zero() {
        let s = Hyp32Spec::unit(
            [cx(0.4, 0.0), cx(0.9, 0.0), cx(0.0, 0.0)],
            [cx(2.2, 0.0), cx(3.0, 0.0)],
        );
        let rw = thomae_two_term(&s).unwrap();
        let v = rw.eval(&tol()).unwrap();
        assert!(rel_err(v.value, cx(1.0, 0.0)) < 1e-13);
    }

    #[test]
    fn thomae_two_term_terminating_instance() {
        let s = Hyp32Spec::unit(
            [cx(-2.0, 0.0), cx(1.0, 0.0), cx(0.5, 0.0)],
            [cx(3.0, 0.0), cx(2.5, 0.0)],
        );
        let direct = crate::series::sum_terminating_3f2(&s).unwrap();
        let rw = thomae_two_term(&s).unwrap();
        let v = rw.eval(&tol()).unwrap();
        assert!(rel_err(v.value, direct) < 1e-10);
    }

    #[test]
    fn thomae_two_term_preserves_last_pair() {
        let s = Hyp32Spec::unit(
            [cx(0.3, 0.1), cx(0.8, 0.0), cx(0.45, -0.2)],
            [cx(2.6, 0.0), cx(3.4, 0.3)],
        );
        let rw = thomae_two_term(&s).unwrap();
        let out = &rw.results[0].1;
        assert_eq!(out.num[2], s.num[2]);
        assert_eq!(out.den[1], s.den[1]);
        let lhs = sum_hyp32_unit(&s, &tol()).unwrap();
        let rhs = rw.eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs.value) < 1e-10);
    }

    #[test]
    fn thomae_two_term_bridges_fa_to_fb() {
        // The FA-form terminating series maps onto the FB-form one under the
        // slot arrangement (b, b-c, -n; 1+b-c, 1+b-a).
        let (a, b, c, n) = (cx(0.25, 0.0), cx(0.9, 0.0), cx(2.7, 0.0), 2u32);
        let nf = cx(n as f64, 0.0);
        let input = Hyp32Spec::unit(
            [b, b - c, -nf],
            [cx(1.0, 0.0) + b - c, cx(1.0, 0.0) + b - a],
        );
        let rw = thomae_two_term(&input).unwrap();
        let out = &rw.results[0].1;
        // Expected FB-form series (e-a, e-b, c; p, e).
        let expected = Hyp32Spec::unit(
            [cx(1.0, 0.0) - a, cx(1.0, 0.0) - a + c, -nf],
            [cx(2.0, 0.0) - a, cx(1.0, 0.0) + b - a],
        );
        for k in 0..3 {
            assert!((out.num[k] - expected.num[k]).norm() < 1e-12);
        }
        for k in 0..2 {
            assert!((out.den[k] - expected.den[k]).norm() < 1e-12);
        }
        let lhs = crate::series::sum_terminating_3f2(&input).unwrap();
        let rhs = rw.eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs) < 1e-12);
    }

    #[test]
    fn thomae_three_term_generic_point() {
        let s = Hyp32Spec::unit(
            [cx(0.3, 0.05), cx(0.6, 0.0), cx(2.3, 0.0)],
            [cx(2.2, 0.0), cx(3.1, 0.0)],
        );
        let lhs = sum_hyp32_unit(&s, &tol()).unwrap();
        let rhs = thomae_three_term(&s).unwrap().eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs.value) < 1e-10);
    }

    #[test]
    fn thomae_three_term_terminating_zeroes_second_coefficient() {
        let s = Hyp32Spec::unit(
            [cx(-2.0, 0.0), cx(0.6, 0.0), cx(2.3, 0.0)],
            [cx(2.2, 0.0), cx(3.1, 0.0)],
        );
        let rw = thomae_three_term(&s).unwrap();
        assert_eq!(rw.results[1].0, cx(0.0, 0.0));
        let lhs = crate::series::sum_terminating_3f2(&s).unwrap();
        let rhs = rw.eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs) < 1e-12);
    }

    #[test]
    fn thomae_three_term_theorem1_instance() {
        // Input (a, b, c; b+1+n, c+1+n; 1) with Re(c-b) > n: the two output
        // specs carry the numerator/denominator pairs (a, a-n) and
        // (2-a+2n, 2-a+n), each differing by exactly -n.
        let (a, b, c, n) = (cx(0.25, 0.3), cx(0.5, 0.0), cx(3.9, 0.0), 2u32);
        let nf = cx(n as f64, 0.0);
        let s = Hyp32Spec::unit([a, b, c], [b + cx(1.0, 0.0) + nf, c + cx(1.0, 0.0) + nf]);
        let rw = thomae_three_term(&s).unwrap();
        let first = &rw.results[0].1;
        let second = &rw.results[1].1;
        assert!((first.num[0] - first.den[0] - nf).norm() < 1e-12);
        assert!((second.num[2] - second.den[0] - nf).norm() < 1e-12);
        let lhs = sum_hyp32_unit(&s, &tol()).unwrap();
        let rhs = rw.eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs.value) < 1e-10);
    }

    #[test]
    fn pf_reduce_identity_at_n_zero() {
        let s = Hyp32Spec {
            num: [cx(0.7, 0.0), cx(0.9, 0.0), cx(1.4, 0.0)],
            den: [cx(0.7, 0.0), cx(2.8, 0.0)],
            z: cx(0.4, 0.0),
        };
        let terms = pf_reduce(&s, 0).unwrap();
        assert_eq!(terms.len(), 1);
        assert!((terms[0].0 - cx(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(
            terms[0].1,
            GaussSpec::new(cx(0.9, 0.0), cx(1.4, 0.0), cx(2.8, 0.0), cx(0.4, 0.0))
        );
    }

    #[test]
    fn pf_reduce_unit_argument() {
        // (a, b, c, d) = (0.5, 1, 1, 4.5), n = 1: all Gauss terms convergent.
        let (a, n) = (cx(0.5, 0.0), 1u32);
        let s = Hyp32Spec::unit(
            [a, cx(1.0, 0.0), cx(1.0, 0.0)],
            [a - cx(1.0, 0.0), cx(4.5, 0.0)],
        );
        let lhs = sum_hyp32_unit(&s, &tol()).unwrap();
        let terms = pf_reduce(&s, n).unwrap();
        let rhs = eval_gauss_terms(&terms, &tol()).unwrap();
        assert!(rel_err(rhs.value, lhs.value) < 1e-10);
    }

    #[test]
    fn pf_reduce_terminating_cross_check() {
        let (a, n) = (cx(0.37, 0.11), 2u32);
        let s = Hyp32Spec {
            num: [a, cx(-2.0, 0.0), cx(1.3, 0.0)],
            den: [a - cx(2.0, 0.0), cx(2.9, 0.0)],
            z: cx(0.7, 0.0),
        };
        let lhs = crate::series::sum_terminating_3f2(&s).unwrap();
        let terms = pf_reduce(&s, n).unwrap();
        let rhs = eval_gauss_terms(&terms, &tol()).unwrap();
        assert!(rel_err(rhs.value, lhs) < 1e-12);
    }

    #[test]
    fn rd_reverse_examples() {
        // n = 0 is the identity rewrite.
        let s = Hyp32Spec::unit(
            [cx(0.0, 0.0), cx(0.7, 0.0), cx(1.1, 0.0)],
            [cx(2.3, 0.0), cx(3.0, 0.0)],
        );
        let rw = rd_reverse(&s, 0).unwrap();
        assert!((rw.prefactor - cx(1.0, 0.0)).norm() < 1e-15);

        // The (QW) -> (QE) instance at (a, b, c, n) = (0.3, 0.8, 2.1, 2):
        // slots a -> 1-a+b, b -> 1 map the n-shifted denominator away.
        let (a, b, c, n) = (cx(0.3, 0.0), cx(0.8, 0.0), cx(2.1, 0.0), 2u32);
        let nf = cx(n as f64, 0.0);
        let one = cx(1.0, 0.0);
        let two = cx(2.0, 0.0);
        let input = Hyp32Spec::unit([-nf, one - a + b, one], [one + b - c - nf, two - a]);
        let rw = rd_reverse(&input, n).unwrap();
        let out = &rw.results[0].1;
        let expected = Hyp32Spec::unit([-nf, one - a + b, one - a], [one - a + c, two - a]);
        for k in 0..3 {
            assert!((out.num[k] - expected.num[k]).norm() < 1e-12);
        }
        for k in 0..2 {
            assert!((out.den[k] - expected.den[k]).norm() < 1e-12);
        }
        // Prefactor (1-a+c)_n / (c-b)_n.
        let pref = poch(one - a + c, n as i64).unwrap() / poch(c - b, n as i64).unwrap();
        assert!(rel_err(rw.prefactor, pref) < 1e-13);
        let lhs = crate::series::sum_terminating_3f2(&input).unwrap();
        let rhs = rw.eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs) < 1e-12);
    }

    #[test]
    fn rd_reverse_random_terminating() {
        let (a, b, n) = (cx(0.45, 0.2), cx(1.25, -0.1), 3u32);
        let c = cx(2.05, 0.15);
        let d = cx(3.65, 0.0);
        let nf = cx(n as f64, 0.0);
        let input = Hyp32Spec::unit([-nf, a, b], [c - nf, d]);
        let lhs = crate::series::sum_terminating_3f2(&input).unwrap();
        let rhs = rd_reverse(&input, n).unwrap().eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs) < 1e-12);
    }

    #[test]
    fn re_transform_examples() {
        let one = cx(1.0, 0.0);
        // n = 0 identity.
        let s = Hyp32Spec::unit(
            [cx(0.0, 0.0), cx(0.4, 0.0), cx(1.6, 0.0)],
            [cx(2.3, 0.0), cx(3.7, 0.0)],
        );
        let rw = re_transform(&s, 0).unwrap();
        assert!((rw.prefactor - one).norm() < 1e-15);

        // n = 1 with (a, b, c, d) = (0.4, 1.6, 2.3, 3.7): two-term sums.
        let (a, b, c, d, n) = (
            cx(0.4, 0.0),
            cx(1.6, 0.0),
            cx(2.3, 0.0),
            cx(3.7, 0.0),
            1u32,
        );
        let nf = cx(n as f64, 0.0);
        let input = Hyp32Spec::unit([-nf, a, b - nf], [c - nf, d - nf]);
        let lhs = crate::series::sum_terminating_3f2(&input).unwrap();
        let rhs = re_transform(&input, n).unwrap().eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs) < 1e-12);
    }

    #[test]
    fn re_transform_gmk_reduction_pattern() {
        // The G_{m,k} pattern: 3F2(-m+k, t+k, c-a-b-m; c-a-m+k, c-b-m+k; 1)
        // maps to 3F2(-m+k, c-b-t-m, 1+a-c; 1-b-m, 1-t-m; 1) with slots
        // num = [-n', c-a-b-m, t+k] where n' = m - k.
        let (a, b, c, t) = (cx(0.35, 0.0), cx(0.65, 0.0), cx(4.9, 0.0), cx(0.85, 0.0));
        let (m, k) = (3u32, 1u32);
        let np = m - k;
        let nf = cx(np as f64, 0.0);
        let mf = cx(m as f64, 0.0);
        let kf = cx(k as f64, 0.0);
        let one = cx(1.0, 0.0);
        let input = Hyp32Spec::unit(
            [-nf, c - a - b - mf, t + kf],
            [c - a - mf + kf, c - b - mf + kf],
        );
        let rw = re_transform(&input, np).unwrap();
        let out = &rw.results[0].1;
        let expected = Hyp32Spec::unit(
            [-nf, c - b - t - mf, one + a - c],
            [one - b - mf, one - t - mf],
        );
        for i in 0..3 {
            assert!((out.num[i] - expected.num[i]).norm() < 1e-12, "num[{i}]");
        }
        for i in 0..2 {
            assert!((out.den[i] - expected.den[i]).norm() < 1e-12, "den[{i}]");
        }
        let lhs = crate::series::sum_terminating_3f2(&input).unwrap();
        let rhs = rw.eval(&tol()).unwrap();
        assert!(rel_err(rhs.value, lhs) < 1e-11);
    }

    #[test]
    fn pfaff_examples() {
        let g = GaussSpec::new(cx(0.6, 0.0), cx(1.2, 0.0), cx(2.4, 0.0), cx(0.0, 0.0));
        let (pre, out) = pfaff_linear(&g).unwrap();
        assert_eq!(pre, cx(1.0, 0.0));
        assert_eq!(out.z, cx(0.0, 0.0));

        // 2F1(1,1;2;1/2): both routes give 2 ln 2.
        let g = GaussSpec::new(cx(1.0, 0.0), cx(1.0, 0.0), cx(2.0, 0.0), cx(0.5, 0.0));
        let (pre, out) = pfaff_linear(&g).unwrap();
        let lhs = sum_2f1_series(&g, &tol()).unwrap();
        let rhs = sum_2f1_series(&out, &tol()).unwrap();
        assert!(rel_err(pre * rhs.value, lhs.value) < 1e-12);
        assert!(rel_err(lhs.value, cx(2.0 * std::f64::consts::LN_2, 0.0)) < 1e-12);

        // Terminating polynomial check at z = 0.3.
        let g = GaussSpec::new(cx(-2.0, 0.0), cx(0.9, 0.0), cx(2.1, 0.0), cx(0.3, 0.0));
        let (pre, out) = pfaff_linear(&g).unwrap();
        let lhs = sum_2f1_series(&g, &tol()).unwrap();
        let rhs = sum_2f1_series(&out, &tol()).unwrap();
        assert!(rel_err(pre * rhs.value, lhs.value) < 1e-13);

        assert!(pfaff_linear(&GaussSpec::new(
            cx(0.5, 0.0),
            cx(1.0, 0.0),
            cx(2.0, 0.0),
            cx(1.0, 0.0)
        ))
        .is_err());
    }

    #[test]
    fn pfaff_applied_twice_preserves_value() {
        let g = GaussSpec::new(cx(0.6, 0.2), cx(1.2, 0.0), cx(2.4, 0.0), cx(0.45, 0.1));
        let (p1, g1) = pfaff_linear(&g).unwrap();
        let (p2, g2) = pfaff_linear(&g1).unwrap();
        assert!((g2.z - g.z).norm() < 1e-14);
        let original = sum_2f1_series(&g, &tol()).unwrap();
        let round_trip = p1 * p2 * sum_2f1_series(&g2, &tol()).unwrap().value;
        assert!(rel_err(round_trip, original.value) < 1e-12);
    }

    #[test]
    fn karlsson_z_reduce_specimen_structure() {
        let p = Params3F2NegDiff::new(cx(0.31, 0.17), cx(1.4, 0.0), cx(2.9, 0.0), 0, 0);
        let terms = karlsson_z_reduce(&p, cx(0.5, 0.0)).unwrap();
        assert_eq!(terms.len(), 2);
        // Two terms with coefficients c/(c-b) on 2F1(a,b;b+1;z) and
        // -b/(c-b) on 2F1(a,c;c+1;z).
        let cb = p.c - p.b;
        let on_b = terms.iter().find(|(_, g)| g.b == p.b).unwrap();
        let on_c = terms.iter().find(|(_, g)| g.b == p.c).unwrap();
        assert!(rel_err(on_b.0, p.c / cb) < 1e-13);
        assert!(rel_err(on_c.0, -p.b / cb) < 1e-13);
    }

    #[test]
    fn karlsson_z_reduce_at_zero_sums_to_one() {
        let p = Params3F2NegDiff::new(cx(0.4, 0.0), cx(1.1, 0.0), cx(2.45, 0.0), 2, 1);
        let terms = karlsson_z_reduce(&p, cx(0.0, 0.0)).unwrap();
        let total: Cx = terms.iter().map(|(c, _)| *c).sum();
        assert!(rel_err(total, cx(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn karlsson_z_reduce_matches_direct_series() {
        let p = Params3F2NegDiff::new(cx(0.5, 0.0), cx(1.0, 0.0), cx(2.0, 0.0), 1, 1);
        let z = cx(0.5, 0.0);
        let direct = sum_3f2_series(&p.spec(z), &tol()).unwrap();
        let terms = karlsson_z_reduce(&p, z).unwrap();
        let rhs = eval_gauss_terms(&terms, &tol()).unwrap();
        assert!(rel_err(rhs.value, direct.value) < 1e-12);
    }

    #[test]
    fn karlsson_minton_identity_when_m_zero() {
        let s = KarMintonSpec {
            b1: cx(0.8, 0.0),
            m1: 0,
            pair2: None,
            remaining_num: vec![cx(0.3, 0.0), cx(1.7, 0.0)],
            remaining_den: vec![cx(2.6, 0.0)],
            z: cx(0.4, 0.0),
        };
        let terms = karlsson_minton_reduce(&s).unwrap();
        assert_eq!(terms.len(), 1);
        assert!((terms[0].0 - cx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn karlsson_minton_r1_matches_series() {
        // 3F2(b+1, a2, a3; b, b2; z) at z = 0.4.
        let (b1, a2, a3, b2) = (cx(1.42, -0.23), cx(0.31, 0.17), cx(2.87, 0.41), cx(3.3, 0.0));
        let s = KarMintonSpec {
            b1,
            m1: 1,
            pair2: None,
            remaining_num: vec![a2, a3],
            remaining_den: vec![b2],
            z: cx(0.4, 0.0),
        };
        let terms = karlsson_minton_reduce(&s).unwrap();
        assert_eq!(terms.len(), 2);
        let mut acc = cx(0.0, 0.0);
        for (coeff, f) in &terms {
            acc += *coeff * f.eval(&tol()).unwrap().value;
        }
        let lhs = sum_3f2_series(
            &Hyp32Spec {
                num: [b1 + cx(1.0, 0.0), a2, a3],
                den: [b1, b2],
                z: cx(0.4, 0.0),
            },
            &tol(),
        )
        .unwrap();
        assert!(rel_err(acc, lhs.value) < 1e-11);
    }

    #[test]
    fn karlsson_minton_r2_matches_series_and_unit_argument() {
        let (b1, b2, a3) = (cx(1.42, 0.0), cx(2.87, 0.0), cx(-5.5, 0.0));
        // |z| < 1: each 1F0 is a closed-form binomial.
        let s = KarMintonSpec {
            b1,
            m1: 1,
            pair2: Some((b2, 2)),
            remaining_num: vec![a3],
            remaining_den: vec![],
            z: cx(0.4, 0.0),
        };
        let terms = karlsson_minton_reduce(&s).unwrap();
        let mut acc = cx(0.0, 0.0);
        for (coeff, f) in &terms {
            acc += *coeff * f.eval(&tol()).unwrap().value;
        }
        let lhs = sum_3f2_series(
            &Hyp32Spec {
                num: [b1 + cx(1.0, 0.0), b2 + cx(2.0, 0.0), a3],
                den: [b1, b2],
                z: cx(0.4, 0.0),
            },
            &tol(),
        )
        .unwrap();
        assert!(rel_err(acc, lhs.value) < 1e-11);

        // z = 1 with Re(a3) < -m1-m2: every reduced 1F0 vanishes, and the
        // direct summation of the left side confirms the zero within its
        // reported error.
        let s1 = KarMintonSpec {
            z: cx(1.0, 0.0),
            ..s
        };
        let terms = karlsson_minton_reduce(&s1).unwrap();
        let mut acc = cx(0.0, 0.0);
        for (coeff, f) in &terms {
            acc += *coeff * f.eval(&tol()).unwrap().value;
        }
        assert_eq!(acc, cx(0.0, 0.0));
        let lhs = sum_hyp32_unit(
            &Hyp32Spec::unit([b1 + cx(1.0, 0.0), b2 + cx(2.0, 0.0), a3], [b1, b2]),
            &tol(),
        )
        .unwrap();
        assert!(lhs.value.norm() <= lhs.abs_err.max(1e-10));
    }
}
