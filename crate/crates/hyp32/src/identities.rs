//! Closed-form evaluators for `F(a,b,c;m,n) := 3F2(a, b, c; b+1+m, c+1+n; 1)`.
//!
//! Each evaluator implements one published summation rule for this family
//! and returns the value of the same left-hand side, so all of them can be
//! cross-checked against each other and against the direct-summation oracle.
//! A static registry records every rule together with its applicability
//! shape and performs the parameter maps between the variants in one place.

use serde::Serialize;

use crate::gamma::{
    beta, dist_int, exact_int, factorial, gamma, gamma_quotient, gamma_ratio, parity, poch,
};
use crate::numerics::{cx, Cx, EvalError, KahanCx, Status, Tolerance, ValueWithError};
use crate::series::{
    partial_sum_2f1, sum_3f2_unit_oracle, terminating_3f2_with_err, Hyp32Spec, Params3F2NegDiff,
};

/// Relative accuracy of a single Gamma/Beta-grade factor in binary64.
const FORM_EPS: f64 = 5e-15;

/// `eval_zy` flags (but still computes) results this close to the `a = 1`
/// singular line of its Beta prefactors.
pub const A_ONE_NEAR: f64 = 1e-7;

/// Auto dispatch hands parameters this close to `a = 1` to the limit route.
pub const A_ONE_DISPATCH: f64 = 1e-8;

/// Auto dispatch falls back to the oracle when `b - c` is this close to an
/// integer in the colliding range `[-m, n]`.
pub const COLLISION_NEAR: f64 = 1e-6;

/// Every implemented closed form, keyed by its source equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    Zy,
    Zx,
    Tt,
    Tc,
    Mn,
    Kb,
    Om,
    Mp,
    Fa,
    Fb,
    P74416,
    A1Limit,
}

/// Restriction an identity places on the `(m, n)` shape (or on `a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamShape {
    /// Any `m, n`.
    Free,
    /// Requires `m == n`.
    EqualMn,
    /// Requires `n == 0`.
    NZero,
    /// Requires `m == n == 0`.
    MnZero,
    /// Requires `a` within [`A_ONE_DISPATCH`] of 1.
    AOne,
}

/// Registry entry: equation tag, one-line description, applicability shape.
#[derive(Debug, Clone, Copy)]
pub struct IdentityInfo {
    pub id: IdentityId,
    pub equation: &'static str,
    pub description: &'static str,
    pub shape: ParamShape,
}

pub const REGISTRY: [IdentityInfo; 12] = [
    IdentityInfo {
        id: IdentityId::Zy,
        equation: "ZY",
        description: "symmetric three-term closed form, independent m and n",
        shape: ParamShape::Free,
    },
    IdentityInfo {
        id: IdentityId::Zx,
        equation: "ZX",
        description: "symmetric three-term closed form at m = n",
        shape: ParamShape::EqualMn,
    },
    IdentityInfo {
        id: IdentityId::Tt,
        equation: "TT",
        description: "theorem-1 two-term form at m = n",
        shape: ParamShape::EqualMn,
    },
    IdentityInfo {
        id: IdentityId::Tc,
        equation: "TC",
        description: "corollary with the first numerator shifted by 2n",
        shape: ParamShape::EqualMn,
    },
    IdentityInfo {
        id: IdentityId::Mn,
        equation: "MN",
        description: "theorem-2 two-term form, independent m and n",
        shape: ParamShape::Free,
    },
    IdentityInfo {
        id: IdentityId::Kb,
        equation: "KB",
        description: "Karlsson double-sum of Beta quotients",
        shape: ParamShape::Free,
    },
    IdentityInfo {
        id: IdentityId::Om,
        equation: "OM",
        description: "Milgram single-sum of Gamma quotients (n = 0 shape)",
        shape: ParamShape::NZero,
    },
    IdentityInfo {
        id: IdentityId::Mp,
        equation: "MP",
        description: "Miller-Paris partial-sum form (n = 0 shape)",
        shape: ParamShape::NZero,
    },
    IdentityInfo {
        id: IdentityId::Fa,
        equation: "FA",
        description: "Miller-Paris terminating-3F2 form (n = 0 shape)",
        shape: ParamShape::NZero,
    },
    IdentityInfo {
        id: IdentityId::Fb,
        equation: "FB",
        description: "Thomae image of FA (n = 0 shape)",
        shape: ParamShape::NZero,
    },
    IdentityInfo {
        id: IdentityId::P74416,
        equation: "P7.4.4.16",
        description: "classical two-term Gamma form at m = n = 0",
        shape: ParamShape::MnZero,
    },
    IdentityInfo {
        id: IdentityId::A1Limit,
        equation: "A1",
        description: "finite limit of ZY on the singular line a = 1",
        shape: ParamShape::AOne,
    },
];

impl IdentityId {
    pub fn all() -> [IdentityId; 12] {
        [
            IdentityId::Zy,
            IdentityId::Zx,
            IdentityId::Tt,
            IdentityId::Tc,
            IdentityId::Mn,
            IdentityId::Kb,
            IdentityId::Om,
            IdentityId::Mp,
            IdentityId::Fa,
            IdentityId::Fb,
            IdentityId::P74416,
            IdentityId::A1Limit,
        ]
    }

    pub fn tag(&self) -> &'static str {
        match self {
            IdentityId::Zy => "zy",
            IdentityId::Zx => "zx",
            IdentityId::Tt => "tt",
            IdentityId::Tc => "tc",
            IdentityId::Mn => "mn",
            IdentityId::Kb => "kb",
            IdentityId::Om => "om",
            IdentityId::Mp => "mp",
            IdentityId::Fa => "fa",
            IdentityId::Fb => "fb",
            IdentityId::P74416 => "p7_4_4_16",
            IdentityId::A1Limit => "a1_limit",
        }
    }

    pub fn parse(s: &str) -> Option<IdentityId> {
        IdentityId::all().into_iter().find(|id| id.tag() == s)
    }

    pub fn info(&self) -> &'static IdentityInfo {
        REGISTRY.iter().find(|e| e.id == *self).unwrap()
    }

    pub fn shape(&self) -> ParamShape {
        self.info().shape
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// How a value was produced by [`evaluate_auto`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Identity(IdentityId),
    Oracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Identity(id) => f.write_str(id.tag()),
            Method::Oracle => f.write_str("oracle"),
        }
    }
}

fn nonzero(x: Cx, what: &str) -> Result<Cx, EvalError> {
    if x == cx(0.0, 0.0) {
        Err(EvalError::NearSingular(format!("{what} vanishes")))
    } else {
        Ok(x)
    }
}

/// Distance of `b - c` to the nearest integer of the colliding range
/// `[-m, n]`, where the prefactors or terminating denominators of the
/// three-term forms blow up.
pub fn collision_distance(p: &Params3F2NegDiff) -> f64 {
    let d = p.b - p.c;
    let mut best = f64::INFINITY;
    for k in -(p.m as i64)..=(p.n as i64) {
        best = best.min((d - cx(k as f64, 0.0)).norm());
    }
    best
}

fn one() -> Cx {
    cx(1.0, 0.0)
}

/// The two assembled addends of the symmetric three-term form, already
/// scaled by the `(b)_{m+1} (c)_{n+1}` prefactor, plus an error bound.
/// Their sum is the value of `F`; each addend alone diverges on the
/// singular lattice while the combination stays finite.
pub fn eval_zy_terms(p: &Params3F2NegDiff) -> Result<(Cx, Cx, f64), EvalError> {
    let (a, b, c) = (p.a, p.b, p.c);
    let (m, n) = (p.m as i64, p.n as i64);

    let s1 = Hyp32Spec::unit(
        [cx(-(m as f64), 0.0), b, b - c - cx(n as f64, 0.0)],
        [one() + b - a, one() + b - c],
    );
    let s2 = Hyp32Spec::unit(
        [cx(-(n as f64), 0.0), c, c - b - cx(m as f64, 0.0)],
        [one() + c - a, one() + c - b],
    );
    let (s1v, s1e) = terminating_3f2_with_err(&s1)?;
    let (s2v, s2e) = terminating_3f2_with_err(&s2)?;

    let pre = poch(b, m + 1)? * poch(c, n + 1)?;
    let f1 = beta(one() - a, b)?
        / (nonzero(poch(c - b, n + 1)?, "(c-b)_{n+1}")? * factorial(p.m));
    let f2 = beta(one() - a, c)?
        / (nonzero(poch(b - c, m + 1)?, "(b-c)_{m+1}")? * factorial(p.n));

    let t1 = pre * f1 * s1v;
    let t2 = pre * f2 * s2v;
    let abs_err = (pre * f1).norm() * s1e
        + (pre * f2).norm() * s2e
        + 8.0 * FORM_EPS * (t1.norm() + t2.norm());
    Ok((t1, t2, abs_err))
}

/// The symmetric three-term summation formula with independent `m`, `n`
/// (the canonical evaluator).
pub fn eval_zy(p: &Params3F2NegDiff) -> Result<ValueWithError, EvalError> {
    let (t1, t2, abs_err) = eval_zy_terms(p)?;
    let value = t1 + t2;
    let mut status = Status::Ok;
    if (p.a - one()).norm() <= A_ONE_NEAR
        || collision_distance(p) <= COLLISION_NEAR
        || abs_err > 1e-6 * value.norm()
    {
        status = Status::NearSingular;
    }
    Ok(ValueWithError {
        value,
        abs_err,
        status,
    })
}

/// The `m = n` specialization in its manifestly symmetric form.
pub fn eval_zx(p: &Params3F2NegDiff) -> Result<ValueWithError, EvalError> {
    if p.m != p.n {
        return Err(EvalError::DomainViolation("zx requires m == n".into()));
    }
    let (a, b, c) = (p.a, p.b, p.c);
    let n = p.n as i64;
    let nf = cx(p.n as f64, 0.0);

    let s1 = Hyp32Spec::unit([-nf, b, b - c - nf], [one() + b - a, one() + b - c]);
    let s2 = Hyp32Spec::unit([-nf, c, c - b - nf], [one() + c - a, one() + c - b]);
    let (s1v, s1e) = terminating_3f2_with_err(&s1)?;
    let (s2v, s2e) = terminating_3f2_with_err(&s2)?;

    let pre = poch(b, n + 1)? * poch(c, n + 1)? / factorial(p.n);
    let f1 = beta(one() - a, b)? / nonzero(poch(c - b, n + 1)?, "(c-b)_{n+1}")?;
    let f2 = beta(one() - a, c)? / nonzero(poch(b - c, n + 1)?, "(b-c)_{n+1}")?;
    let t1 = pre * f1 * s1v;
    let t2 = pre * f2 * s2v;
    let abs_err = (pre * f1).norm() * s1e
        + (pre * f2).norm() * s2e
        + 8.0 * FORM_EPS * (t1.norm() + t2.norm());
    Ok(ValueWithError::new(t1 + t2, abs_err))
}

/// Theorem-1 form at `m = n`.
pub fn eval_theorem1(p: &Params3F2NegDiff) -> Result<ValueWithError, EvalError> {
    if p.m != p.n {
        return Err(EvalError::DomainViolation("theorem 1 requires m == n".into()));
    }
    let (a, b, c) = (p.a, p.b, p.c);
    let n = p.n as i64;
    let nf = cx(p.n as f64, 0.0);
    if 2.0 - a.re + 2.0 * p.n as f64 <= 0.0 {
        return Err(EvalError::DomainViolation(
            "theorem 1 requires Re(2 - a + 2n) > 0".into(),
        ));
    }

    let s1 = Hyp32Spec::unit([-nf, b, one() + nf], [one() + b - c, a - nf]);
    let s2 = Hyp32Spec::unit(
        [-nf, one() - a + b + nf, one() + nf],
        [one() + b - c, cx(2.0, 0.0) - a + nf],
    );
    let (s1v, s1e) = terminating_3f2_with_err(&s1)?;
    let (s2v, s2e) = terminating_3f2_with_err(&s2)?;

    let f1 = beta(one() - a, b)? * poch(one() - a, n)?
        / nonzero(poch(one() + b - a, n)?, "(1+b-a)_n")?;
    let f2 = beta(one() - a, c)? * parity(1 + n) * poch(cx(2.0, 0.0) - a + nf, n)?
        / nonzero(poch(one() - a + c, n)?, "(1-a+c)_n")?;

    let scale = poch(b, n + 1)? * poch(c, n + 1)?
        / (nonzero(poch(c - b, n + 1)?, "(c-b)_{n+1}")? * factorial(p.n));
    let t1 = scale * f1 * s1v;
    let t2 = scale * f2 * s2v;
    let abs_err = (scale * f1).norm() * s1e
        + (scale * f2).norm() * s2e
        + 10.0 * FORM_EPS * (t1.norm() + t2.norm());
    Ok(ValueWithError::new(t1 + t2, abs_err))
}

/// Corollary-1 left side `3F2(a+2n, b, c; b+1+n, c+1+n; 1)`, evaluated from
/// its own two-term form.
///
/// The printed coefficients carry Gamma factors whose poles at integer
/// `a <= n+1` cancel only in the two-term combination. The `n+1`-step ratio
/// `Gamma(a+n-1)/Gamma(a+2n)` is evaluated as a Pochhammer reciprocal, which
/// removes half of those spurious poles; the remaining indeterminate lattice
/// points are handled by a symmetric Richardson limit in `a`.
pub fn eval_corollary1(a: Cx, b: Cx, c: Cx, n: u32) -> Result<ValueWithError, EvalError> {
    if 2.0 - a.re <= 0.0 {
        return Err(EvalError::DomainViolation(
            "corollary 1 requires Re(2 - a) > 0".into(),
        ));
    }
    if dist_int(a) < A_ONE_NEAR && a.re.round() <= 1.0 + n as f64 {
        // Indeterminate coefficient lattice: take the limit along real
        // offsets of a, exactly as for the a = 1 line of the symmetric form.
        let base = cx(a.re.round(), 0.0);
        let eval = |h: f64| -> Result<Cx, EvalError> {
            Ok((corollary1_direct(base + cx(h, 0.0), b, c, n)?.value
                + corollary1_direct(base - cx(h, 0.0), b, c, n)?.value)
                * cx(0.5, 0.0))
        };
        let a1 = eval(1e-4)?;
        let a2 = eval(1e-5)?;
        let value = a2 + (a2 - a1) / cx(99.0, 0.0);
        let disagreement = (a2 - a1).norm();
        let abs_err = disagreement / 99.0 + 1e-11 * value.norm();
        let status = if disagreement > 1e-6 * value.norm() {
            Status::NearSingular
        } else {
            Status::Ok
        };
        return Ok(ValueWithError {
            value,
            abs_err,
            status,
        });
    }
    corollary1_direct(a, b, c, n)
}

fn corollary1_direct(a: Cx, b: Cx, c: Cx, n: u32) -> Result<ValueWithError, EvalError> {
    let ni = n as i64;
    let nf = cx(n as f64, 0.0);
    let two = cx(2.0, 0.0);

    let s1 = Hyp32Spec::unit([-nf, b, one() + nf], [one() + b - c, a + nf]);
    let s2 = Hyp32Spec::unit(
        [-nf, one() - a + b - nf, one() + nf],
        [one() + b - c, two - a - nf],
    );
    let (s1v, s1e) = terminating_3f2_with_err(&s1)?;
    let (s2v, s2e) = terminating_3f2_with_err(&s2)?;

    let f1 = gamma(b)? * gamma_ratio(one() - a - nf, one() - a + b - nf)?;
    let f2 = gamma(c)? * gamma(two - a)? * gamma_ratio(a + nf - one(), a + two * nf)?
        / gamma(one() - a + c - nf)?;

    let scale = poch(b, ni + 1)? * poch(c, ni + 1)?
        / (nonzero(poch(c - b, ni + 1)?, "(c-b)_{n+1}")? * factorial(n));
    let t1 = scale * f1 * s1v;
    let t2 = scale * f2 * s2v;
    let abs_err = (scale * f1).norm() * s1e
        + (scale * f2).norm() * s2e
        + 10.0 * FORM_EPS * (t1.norm() + t2.norm());
    Ok(ValueWithError::new(t1 + t2, abs_err))
}

/// The two addends of the theorem-2 form.
#[derive(Debug, Clone, Copy)]
pub struct Theorem2Terms {
    pub t1: Cx,
    pub t2: Cx,
}

/// Theorem-2 form with independent `m`, `n`; returns both addends and the
/// assembled value of `F`.
pub fn eval_theorem2(
    p: &Params3F2NegDiff,
) -> Result<(Theorem2Terms, ValueWithError), EvalError> {
    let (a, b, c) = (p.a, p.b, p.c);
    let (mi, ni) = (p.m as i64, p.n as i64);
    let mf = cx(p.m as f64, 0.0);
    let nf = cx(p.n as f64, 0.0);
    let two = cx(2.0, 0.0);
    if p.decay_exponent() <= 0.0 {
        return Err(EvalError::DomainViolation(
            "theorem 2 requires Re(2 - a + m + n) > 0".into(),
        ));
    }

    let s1 = Hyp32Spec::unit([-mf, b, one() + nf], [one() + b - c, a - mf]);
    let s2 = Hyp32Spec::unit(
        [-nf, one() - a + b + mf, one() + mf],
        [two - a + mf, one() + b - c + mf - nf],
    );
    let (s1v, s1e) = terminating_3f2_with_err(&s1)?;
    let (s2v, s2e) = terminating_3f2_with_err(&s2)?;

    let f1 = beta(one() - a, b)? * poch(one() - a, mi)?
        / (nonzero(poch(one() + b - a, mi)?, "(1+b-a)_m")? * factorial(p.m));
    let f2 = beta(one() - a, c)? * parity(1 + mi) * poch(two - a + mf, ni)?
        * poch(c - b, ni - mi)?
        / (nonzero(poch(one() - a + c, ni)?, "(1-a+c)_n")? * factorial(p.n));

    let t1 = f1 * s1v;
    let t2 = f2 * s2v;
    let scale = poch(b, mi + 1)? * poch(c, ni + 1)?
        / nonzero(poch(c - b, ni + 1)?, "(c-b)_{n+1}")?;
    let value = scale * (t1 + t2);
    let abs_err = scale.norm()
        * (f1.norm() * s1e + f2.norm() * s2e + 10.0 * FORM_EPS * (t1.norm() + t2.norm()));
    Ok((
        Theorem2Terms { t1, t2 },
        ValueWithError::new(value, abs_err),
    ))
}

/// Karlsson's double-sum representation: `(m+1)(n+1)` pairs of Beta
/// quotients. Integer `b - c` is excluded outright (some divisor
/// `b - c + i - j` would vanish).
pub fn eval_karlsson_kb(p: &Params3F2NegDiff) -> Result<ValueWithError, EvalError> {
    let (a, b, c) = (p.a, p.b, p.c);
    if exact_int(b - c).is_some() {
        return Err(EvalError::DomainViolation(
            "karlsson double sum requires non-integer b - c".into(),
        ));
    }
    let mut acc = KahanCx::default();
    let one_m_a = one() - a;
    // Weights (-m)_i / i! accumulate exactly for small integers.
    let mut wi = one();
    for i in 0..=(p.m as i64) {
        let mut w = wi;
        for j in 0..=(p.n as i64) {
            let shift = cx((i - j) as f64, 0.0);
            let first = beta(one_m_a, c + cx(j as f64, 0.0))? / (b - c + shift);
            let second = beta(one_m_a, b + cx(i as f64, 0.0))? / (c - b - shift);
            acc.add(w * (first + second));
            w *= (cx(j as f64, 0.0) - cx(p.n as f64, 0.0)) / cx(j as f64 + 1.0, 0.0);
        }
        wi *= (cx(i as f64, 0.0) - cx(p.m as f64, 0.0)) / cx(i as f64 + 1.0, 0.0);
    }
    let scale = poch(b, p.m as i64 + 1)? * poch(c, p.n as i64 + 1)?
        / (factorial(p.m) * factorial(p.n));
    let value = scale * acc.value();
    let abs_err = scale.norm() * (acc.roundoff() + 6.0 * FORM_EPS * acc.abs_sum());
    Ok(ValueWithError::new(value, abs_err))
}

/// Inner sum `sum_{k=0}^{m} (-m)_k / ((b-c-j+k) k!)` evaluated directly.
/// Its closed form is `m!/(b-c)_{m+1} * (c-b-m)_j / (1+c-b)_j`.
pub fn eval_inner_sum_su(m: u32, bc_diff: Cx, j: u32) -> Result<Cx, EvalError> {
    let base = bc_diff - cx(j as f64, 0.0);
    let mut acc = KahanCx::default();
    let mut w = one();
    for k in 0..=(m as i64) {
        let d = base + cx(k as f64, 0.0);
        if d == cx(0.0, 0.0) {
            return Err(EvalError::DomainViolation(
                "inner sum: b - c - j + k vanishes".into(),
            ));
        }
        acc.add(w / d);
        w *= (cx(k as f64, 0.0) - cx(m as f64, 0.0)) / cx(k as f64 + 1.0, 0.0);
    }
    Ok(acc.value())
}

/// Milgram's form for `3F2(a, b, c; b+n, c+1; 1)`, `n >= 1`: one Gamma-ratio
/// leading term plus an `n`-term sum of Gamma quotients.
pub fn eval_milgram_om(a: Cx, b: Cx, c: Cx, n: u32) -> Result<ValueWithError, EvalError> {
    if n == 0 {
        return Err(EvalError::DomainViolation("milgram form requires n >= 1".into()));
    }
    let ni = n as i64;
    let nf = cx(n as f64, 0.0);
    let first = poch(b, ni)? / nonzero(poch(b - c, ni)?, "(b-c)_n")?
        * gamma_quotient(&[c + one(), one() - a], &[c + one() - a])?;

    // Each term pairs its Gammas into ratios: the integer-offset pair
    // G(c-b+1-n)/G(c-b+2-n+l) collapses to a Pochhammer reciprocal, and the
    // remaining pair differs by b.
    let gb_n = gamma(b + nf)?;
    let mut acc = KahanCx::default();
    for l in 0..ni {
        let lf = cx(l as f64, 0.0);
        let ratio_a = gamma_ratio(nf - lf - a, b + nf - a - lf)?;
        let ratio_int = gamma_ratio(c - b + one() - nf, c - b - nf + cx(2.0, 0.0) + lf)?;
        let term = parity(l) * ratio_a * ratio_int / factorial((n - 1 - l as u32) as u32);
        acc.add(term);
    }
    let second = c * gb_n * acc.value();
    let value = first + second;
    let abs_err = 8.0 * FORM_EPS
        * (first.norm() + (c * gb_n).norm() * acc.abs_sum());
    Ok(ValueWithError::new(value, abs_err))
}

/// Variant selector for the Miller-Paris family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MillerParisVariant {
    Mp,
    Fa,
    Fb,
}

/// Miller-Paris forms for `3F2(a, b, c; b+n, c+1; 1)` (MP, `n >= 1`) and
/// `3F2(a, b, c; b+1+n, c+1; 1)` (FA/FB, `n >= 0`).
pub fn eval_miller_paris(
    variant: MillerParisVariant,
    a: Cx,
    b: Cx,
    c: Cx,
    n: u32,
) -> Result<ValueWithError, EvalError> {
    let ni = n as i64;
    let nf = cx(n as f64, 0.0);
    let two = cx(2.0, 0.0);
    match variant {
        MillerParisVariant::Mp => {
            if n == 0 {
                return Err(EvalError::DomainViolation("MP form requires n >= 1".into()));
            }
            let ps = partial_sum_2f1(one() - a, b - c, one() + b - a, n - 1)?;
            let value = c * poch(b, ni)? / nonzero(poch(b - c, ni)?, "(b-c)_n")?
                * (beta(one() - a, c)? - beta(one() - a, b)? * ps);
            Ok(ValueWithError::new(value, 10.0 * FORM_EPS * value.norm() * (1.0 + ps.norm())))
        }
        MillerParisVariant::Fa => {
            let s = Hyp32Spec::unit([-nf, b, b - c], [one() + b - a, one() + b - c]);
            let (sv, se) = terminating_3f2_with_err(&s)?;
            let lead = beta(one() - a, c)? / nonzero(poch(b - c, ni + 1)?, "(b-c)_{n+1}")?;
            let tail = beta(one() - a, b)? / (nonzero(b - c, "b-c")? * factorial(n));
            let pre = c * poch(b, ni + 1)?;
            let value = pre * (lead - tail * sv);
            let abs_err = pre.norm()
                * (tail.norm() * se + 8.0 * FORM_EPS * (lead.norm() + (tail * sv).norm()));
            Ok(ValueWithError::new(value, abs_err))
        }
        MillerParisVariant::Fb => {
            let s = Hyp32Spec::unit([-nf, one() - a, one() - a + c], [two - a, one() - a + b]);
            let (sv, se) = terminating_3f2_with_err(&s)?;
            let tail = beta(one() - a, b)? * poch(two - a, ni)? / factorial(n);
            let pre = c * poch(b, ni + 1)? / nonzero(poch(b - c, ni + 1)?, "(b-c)_{n+1}")?;
            let lead = beta(one() - a, c)?;
            let value = pre * (lead - tail * sv);
            let abs_err = pre.norm()
                * (tail.norm() * se + 8.0 * FORM_EPS * (lead.norm() + (tail * sv).norm()));
            Ok(ValueWithError::new(value, abs_err))
        }
    }
}

/// The classical two-term Gamma form for `3F2(a, b, c; b+1, c+1; 1)`.
pub fn eval_special_7_4_4_16(a: Cx, b: Cx, c: Cx) -> Result<ValueWithError, EvalError> {
    if b == c {
        return Err(EvalError::DomainViolation("requires b != c".into()));
    }
    let value = b * c / (c - b) * (beta(one() - a, b)? - beta(one() - a, c)?);
    let scale = (b * c / (c - b)).norm()
        * (beta(one() - a, b)?.norm() + beta(one() - a, c)?.norm());
    Ok(ValueWithError::new(value, 6.0 * FORM_EPS * scale))
}

/// Finite limit of the symmetric three-term form on the singular line
/// `a = 1`, where both Beta prefactors diverge but their combination stays
/// bounded. Computed by symmetric evaluation at `a = 1 +- h` for
/// `h in {1e-4, 1e-5}` with one Richardson refinement in `h^2`, and flagged
/// when the two estimates disagree.
pub fn eval_a1_limit(p: &Params3F2NegDiff) -> Result<ValueWithError, EvalError> {
    if (p.a - one()).norm() > A_ONE_DISPATCH {
        return Err(EvalError::DomainViolation(
            "a1 limit requires a within 1e-8 of 1".into(),
        ));
    }
    let side = |h: f64| -> Result<Cx, EvalError> {
        let mut q = *p;
        q.a = cx(1.0 + h, 0.0);
        let plus = eval_zy(&q)?.value;
        q.a = cx(1.0 - h, 0.0);
        let minus = eval_zy(&q)?.value;
        Ok((plus + minus) * cx(0.5, 0.0))
    };
    let a1 = side(1e-4)?;
    let a2 = side(1e-5)?;
    let value = a2 + (a2 - a1) / cx(99.0, 0.0);
    let disagreement = (a2 - a1).norm();
    let status = if disagreement > 1e-6 * value.norm() {
        Status::NearSingular
    } else {
        Status::Ok
    };
    Ok(ValueWithError {
        value,
        abs_err: disagreement / 99.0 + 1e-11 * value.norm(),
        status,
    })
}

/// Shape check for dispatching an identity on a `(VB)`-family parameter set.
pub fn applicable(id: IdentityId, p: &Params3F2NegDiff) -> Result<(), EvalError> {
    match id.shape() {
        ParamShape::Free => Ok(()),
        ParamShape::EqualMn => {
            if p.m == p.n {
                Ok(())
            } else {
                Err(EvalError::DomainViolation(format!("{id} requires m == n")))
            }
        }
        ParamShape::NZero => {
            if p.n == 0 {
                Ok(())
            } else {
                Err(EvalError::DomainViolation(format!("{id} requires n == 0")))
            }
        }
        ParamShape::MnZero => {
            if p.m == 0 && p.n == 0 {
                Ok(())
            } else {
                Err(EvalError::DomainViolation(format!("{id} requires m == n == 0")))
            }
        }
        ParamShape::AOne => {
            if (p.a - one()).norm() <= A_ONE_DISPATCH {
                Ok(())
            } else {
                Err(EvalError::DomainViolation(format!(
                    "{id} requires a within 1e-8 of 1"
                )))
            }
        }
    }
}

/// Evaluate `F(a,b,c;m,n)` through the given identity, applying the
/// registry's parameter maps between the variants:
///
/// - `TC`: internal first numerator is `a - 2n`
/// - `OM`/`MP`: native order is `m + 1` (their left side is `b + n` over `b`)
/// - `FA`/`FB`: native order is `m`
pub fn evaluate(id: IdentityId, p: &Params3F2NegDiff) -> Result<ValueWithError, EvalError> {
    applicable(id, p)?;
    match id {
        IdentityId::Zy => eval_zy(p),
        IdentityId::Zx => eval_zx(p),
        IdentityId::Tt => eval_theorem1(p),
        IdentityId::Tc => {
            let shift = cx(2.0 * p.n as f64, 0.0);
            eval_corollary1(p.a - shift, p.b, p.c, p.n)
        }
        IdentityId::Mn => eval_theorem2(p).map(|(_, v)| v),
        IdentityId::Kb => eval_karlsson_kb(p),
        IdentityId::Om => eval_milgram_om(p.a, p.b, p.c, p.m + 1),
        IdentityId::Mp => eval_miller_paris(MillerParisVariant::Mp, p.a, p.b, p.c, p.m + 1),
        IdentityId::Fa => eval_miller_paris(MillerParisVariant::Fa, p.a, p.b, p.c, p.m),
        IdentityId::Fb => eval_miller_paris(MillerParisVariant::Fb, p.a, p.b, p.c, p.m),
        IdentityId::P74416 => eval_special_7_4_4_16(p.a, p.b, p.c),
        IdentityId::A1Limit => eval_a1_limit(p),
    }
}

/// Dispatch policy: the limit route within [`A_ONE_DISPATCH`] of `a = 1`,
/// the oracle within [`COLLISION_NEAR`] of a colliding integer `b - c`, the
/// symmetric three-term form everywhere else.
pub fn evaluate_auto(
    p: &Params3F2NegDiff,
    tol: &Tolerance,
) -> Result<(ValueWithError, Method), EvalError> {
    if (p.a - one()).norm() <= A_ONE_DISPATCH {
        return eval_a1_limit(p).map(|v| (v, Method::Identity(IdentityId::A1Limit)));
    }
    if collision_distance(p) <= COLLISION_NEAR {
        return sum_3f2_unit_oracle(p, tol).map(|v| (v, Method::Oracle));
    }
    eval_zy(p).map(|v| (v, Method::Identity(IdentityId::Zy)))
}
