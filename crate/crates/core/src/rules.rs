//! Applying a parameter set: the single restricted step `R = u·B + w·b`,
//! iterated reduction, and the all-digit linear form `C = Σ u^k·w^(m−k)·a_k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Numeral, ParameterSet, Result};

/// Splits a nonnegative `a` into `(B, b)` with `a = t·B + b`, `0 ≤ b < t`.
pub fn split(a: &BigInt, base: u32) -> Result<(BigInt, u32)> {
    if a.is_negative() {
        return Err(Error::NegativeInput);
    }
    let (lead, unit) = a.div_rem(&BigInt::from(base));
    let unit = u32::try_from(&unit).expect("remainder is below the base");
    Ok((lead, unit))
}

/// One restricted step `R = u·B + w·b` on `|a|`, with the sign of `a` carried
/// over to the result.
pub fn restricted_step(a: &BigInt, ps: &ParameterSet) -> BigInt {
    let (lead, unit) = split(&a.abs(), ps.base()).expect("magnitude is nonnegative");
    let r = lead * ps.u() + BigInt::from(ps.w()) * unit;
    if a.is_negative() {
        -r
    } else {
        r
    }
}

/// [`restricted_step`] in fixed width; `None` on overflow.
pub fn restricted_step_i128(a: i128, ps: &ParameterSet) -> Option<i128> {
    let magnitude = a.checked_abs()?;
    // 128-bit division is a library call; most scanned values fit in 64 bits.
    let (lead, unit) = match u64::try_from(magnitude) {
        Ok(m) => {
            let t = u64::from(ps.base());
            (i128::from(m / t), i128::from(m % t))
        }
        Err(_) => {
            let t = i128::from(ps.base());
            (magnitude / t, magnitude % t)
        }
    };
    let r = lead
        .checked_mul(i128::from(ps.u()))?
        .checked_add(unit.checked_mul(i128::from(ps.w()))?)?;
    Some(if a < 0 { -r } else { r })
}

/// Why a reduction stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// `|R| ≤ threshold`.
    BelowThreshold,
    /// The step reproduced its input.
    FixedPoint,
    /// `|R|` did not strictly decrease.
    NoDecrease,
    /// The iteration cap was reached first.
    IterationCap,
}

/// `R_0 = A, R_1, …` where each value is one [`restricted_step`] of the
/// previous one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace<V = BigInt> {
    pub params: ParameterSet,
    pub values: Vec<V>,
    pub termination: Termination,
}

impl<V> ReductionTrace<V> {
    /// Number of restricted steps applied.
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn last(&self) -> &V {
        self.values.last().expect("trace holds at least the input")
    }
}

pub(crate) trait StepValue: Sized + Clone + PartialEq {
    fn step(&self, ps: &ParameterSet) -> Option<Self>;
    fn within(&self, threshold: u64) -> bool;
    fn smaller_than(&self, other: &Self) -> bool;
}

impl StepValue for BigInt {
    fn step(&self, ps: &ParameterSet) -> Option<Self> {
        Some(restricted_step(self, ps))
    }

    fn within(&self, threshold: u64) -> bool {
        self.magnitude() <= &threshold.into()
    }

    fn smaller_than(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
}

impl StepValue for i128 {
    fn step(&self, ps: &ParameterSet) -> Option<Self> {
        restricted_step_i128(*self, ps)
    }

    fn within(&self, threshold: u64) -> bool {
        self.unsigned_abs() <= u128::from(threshold)
    }

    fn smaller_than(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
}

pub(crate) fn reduce_generic<V: StepValue>(
    a: V,
    ps: &ParameterSet,
    threshold: u64,
    max_iters: usize,
) -> Option<ReductionTrace<V>> {
    let threshold = threshold.max(u64::from(ps.base()));
    let max_iters = max_iters.max(1);
    let mut values = vec![a];
    let mut termination = Termination::IterationCap;
    if values[0].within(threshold) {
        termination = Termination::BelowThreshold;
    } else {
        for _ in 0..max_iters {
            let prev = values.last().expect("nonempty");
            let next = prev.step(ps)?;
            let stop = if next.within(threshold) {
                Some(Termination::BelowThreshold)
            } else if &next == prev {
                Some(Termination::FixedPoint)
            } else if !next.smaller_than(prev) {
                Some(Termination::NoDecrease)
            } else {
                None
            };
            values.push(next);
            if let Some(reason) = stop {
                termination = reason;
                break;
            }
        }
    }
    Some(ReductionTrace {
        params: *ps,
        values,
        termination,
    })
}

/// `t³`: above it every step with `|u|, |w| ≤ t − 1` strictly shrinks `|R|`.
pub fn default_threshold(base: u32) -> u64 {
    u64::from(base).pow(3)
}

/// Digit count of `a` in `base`, plus eight.
pub fn default_max_iters(a: &BigInt, base: u32) -> usize {
    let digits = if a.is_zero() {
        1
    } else {
        a.magnitude().to_radix_le(base).len()
    };
    digits + 8
}

/// Applies [`restricted_step`] until the magnitude is at most `threshold`,
/// stops shrinking, or `max_iters` steps have run.
///
/// `threshold` is raised to at least `t` and `max_iters` to at least 1.
pub fn reduce(a: &BigInt, ps: &ParameterSet, threshold: u64, max_iters: usize) -> ReductionTrace {
    reduce_generic(a.clone(), ps, threshold, max_iters).expect("bignum steps cannot overflow")
}

/// [`reduce`] in fixed width; `None` if an intermediate value overflows.
pub fn reduce_i128(
    a: i128,
    ps: &ParameterSet,
    threshold: u64,
    max_iters: usize,
) -> Option<ReductionTrace<i128>> {
    reduce_generic(a, ps, threshold, max_iters)
}

/// The coefficient vector `c_k = u^k · w^(m−k)` for `k = 0..=m`.
pub fn gdc_coefficients(ps: &ParameterSet, degree: usize) -> Vec<BigInt> {
    let powers = |x: i64| {
        let x = BigInt::from(x);
        let mut out = Vec::with_capacity(degree + 1);
        let mut acc = BigInt::from(1);
        for _ in 0..=degree {
            out.push(acc.clone());
            acc *= &x;
        }
        out
    };
    let (up, wp) = (powers(ps.u()), powers(ps.w()));
    (0..=degree).map(|k| &up[k] * &wp[degree - k]).collect()
}

/// The linear form for numerals of a fixed degree `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GdcForm {
    pub params: ParameterSet,
    pub coefficients: Vec<BigInt>,
}

impl GdcForm {
    pub fn new(ps: &ParameterSet, degree: usize) -> Self {
        Self {
            params: *ps,
            coefficients: gdc_coefficients(ps, degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `Σ c_k·a_k`, negated for a negative numeral.
    pub fn evaluate(&self, x: &Numeral) -> Result<BigInt> {
        if x.base() != self.params.base() {
            return Err(Error::BaseMismatch {
                expected: self.params.base(),
                found: x.base(),
            });
        }
        if x.degree() != self.degree() {
            return Err(Error::InvalidParameters(format!(
                "form has degree {} but the numeral has degree {}",
                self.degree(),
                x.degree()
            )));
        }
        let c: BigInt = self
            .coefficients
            .iter()
            .zip(x.digits())
            .map(|(c, &d)| c * d)
            .sum();
        Ok(if x.is_negative() { -c } else { c })
    }
}

/// `C = Σ u^k·w^(m−k)·a_k` over the digits of `x`, where `m = x.degree()`.
///
/// Computed by the running recurrence `P_k = w·P_(k−1) + u^k·a_k`.
pub fn gdc_evaluate(x: &Numeral, ps: &ParameterSet) -> Result<BigInt> {
    if x.base() != ps.base() {
        return Err(Error::BaseMismatch {
            expected: ps.base(),
            found: x.base(),
        });
    }
    let (w, u) = (BigInt::from(ps.w()), BigInt::from(ps.u()));
    let mut acc = BigInt::zero();
    let mut u_pow = BigInt::from(1);
    for &digit in x.digits() {
        acc = acc * &w + &u_pow * digit;
        u_pow *= &u;
    }
    Ok(if x.is_negative() { -acc } else { acc })
}

/// Closed form of the criterion for the repdigit with `m + 1` copies of
/// `digit`: `a·(u^(m+1) − w^(m+1)) / (u − w)`, or `a·(m+1)·u^m` when `u = w`.
pub fn identical_digit_form(digit: u32, degree: usize, ps: &ParameterSet) -> BigInt {
    let (w, u) = (BigInt::from(ps.w()), BigInt::from(ps.u()));
    let a = BigInt::from(digit);
    if w == u {
        return a * (degree + 1) * num_traits::pow(u, degree);
    }
    let num = num_traits::pow(u.clone(), degree + 1) - num_traits::pow(w.clone(), degree + 1);
    a * (num / (u - w))
}

/// Plain digit sum `Σ a_k`, negated for a negative numeral.
pub fn digit_sum(x: &Numeral) -> BigInt {
    let s: BigInt = x.digits().iter().map(|&d| BigInt::from(d)).sum();
    if x.is_negative() {
        -s
    } else {
        s
    }
}

/// Alternating digit sum with the most significant digit taken positive:
/// `Σ (−1)^(m−k)·a_k`. Negated for a negative numeral.
pub fn alternating_sum(x: &Numeral) -> BigInt {
    let m = x.degree();
    let s: BigInt = x
        .digits()
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            if (m - k).is_multiple_of(2) {
                BigInt::from(d)
            } else {
                -BigInt::from(d)
            }
        })
        .sum();
    if x.is_negative() {
        -s
    } else {
        s
    }
}
