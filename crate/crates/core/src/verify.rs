//! Ground truth and falsification against a direct modulo oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::params::{enumerate, select_best};
use crate::rules::{
    default_max_iters, default_threshold, gdc_evaluate, reduce, reduce_i128, restricted_step,
    restricted_step_i128,
};
use crate::{Error, Numeral, ParameterSet, Result, SoundnessClass};

/// `n | a` by plain modular reduction.
pub fn oracle_divisible(a: &BigInt, divisor: u64) -> Result<bool> {
    if divisor < 2 {
        return Err(Error::InvalidDivisor(divisor));
    }
    Ok((a % divisor).is_zero())
}

/// `n | R(a)` while `n ∤ a`.
pub(crate) fn is_reverse_witness(ps: &ParameterSet, a: u64) -> bool {
    let n = ps.divisor();
    let r = restricted_step_i128(i128::from(a), ps).expect("u64 input cannot overflow i128");
    !a.is_multiple_of(n) && r.rem_euclid(i128::from(n)) == 0
}

/// Result of comparing the restricted rule with the oracle on `A ∈ [0, bound]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub params: ParameterSet,
    pub bound: u64,
    /// Count of `A` with `n | A` but `n ∤ R(A)`. Always zero for a valid
    /// parameter set, since `w·A − R = N·B`.
    pub forward_violations: u64,
    /// Every `A` in the window with `n | R(A)` and `n ∤ A`, ascending.
    pub reverse_witnesses: Vec<u64>,
    pub verdict: SoundnessClass,
}

/// Scans `A = 0..=bound` (raised to at least `t²`) and records every
/// disagreement between the rule and the oracle.
pub fn equivalence_audit(ps: &ParameterSet, bound: u64) -> EquivalenceReport {
    let bound = bound.max(u64::from(ps.base()).pow(2));
    let n = ps.divisor();
    let wide_n = i128::from(n);
    let mut forward_violations = 0;
    let mut reverse_witnesses = Vec::new();
    for a in 0..=bound {
        let r = restricted_step_i128(i128::from(a), ps).expect("u64 input cannot overflow i128");
        let a_div = a % n == 0;
        let r_div = r.rem_euclid(wide_n) == 0;
        match (a_div, r_div) {
            (true, false) => forward_violations += 1,
            (false, true) => reverse_witnesses.push(a),
            _ => {}
        }
    }
    let verdict = match reverse_witnesses.first() {
        None => SoundnessClass::Full,
        Some(&witness) => SoundnessClass::ForwardOnly { witness },
    };
    EquivalenceReport {
        params: *ps,
        bound,
        forward_violations,
        reverse_witnesses,
        verdict,
    }
}

/// `R(A) ≡ w·A` and `C(A) ≡ w^m·A (mod n)`, with `m` the degree of `A` in
/// base `t`.
pub fn congruence_check(a: &BigInt, ps: &ParameterSet) -> bool {
    let n = BigInt::from(ps.divisor());
    let w = BigInt::from(ps.w());
    let congruent = |x: &BigInt, y: &BigInt| (x - y).mod_floor(&n).is_zero();

    let r = restricted_step(a, ps);
    let x = Numeral::from_value(a, ps.base()).expect("parameter base is valid");
    let c = gdc_evaluate(&x, ps).expect("same base");
    let w_m = num_traits::pow(w.clone(), x.degree());
    congruent(&r, &(&w * a)) && congruent(&c, &(w_m * a))
}

/// How [`verdict`] decides divisibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    /// Iterate the restricted step, then take the small residual modulo `n`.
    #[default]
    Restricted,
    /// Evaluate the all-digit linear form, then take it modulo `n`.
    Gdc,
    /// Plain `A mod n`.
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Method::Restricted => "restricted",
            Method::Gdc => "gdc",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "restricted" => Ok(Method::Restricted),
            "gdc" => Ok(Method::Gdc),
            "oracle" => Ok(Method::Oracle),
            other => Err(format!(
                "unknown method {other:?} (expected restricted, gdc or oracle)"
            )),
        }
    }
}

/// The preferred sound parameter set for `n` in `base`.
pub fn sound_parameters(divisor: u64, base: u32, q_max: u32) -> Result<ParameterSet> {
    let candidates = enumerate(divisor, base, q_max)?;
    select_best(&candidates, true).map_err(|e| match e {
        Error::NoSoundCandidate { .. } => Error::NoSoundCriterion(format!(
            "every parameter set for n = {divisor} in base {base} with |q| ≤ {q_max} is forward-only"
        )),
        other => other,
    })
}

/// Decides `n | x` with the chosen method, picking parameters automatically.
pub fn verdict(x: &Numeral, divisor: u64, method: Method, q_max: u32) -> Result<bool> {
    match method {
        Method::Oracle => oracle_divisible(&x.to_value(), divisor),
        _ => verdict_with(x, &sound_parameters(divisor, x.base(), q_max)?, method),
    }
}

/// Decides `n | x` with explicit parameters, which must be sound unless the
/// method is the oracle.
pub fn verdict_with(x: &Numeral, ps: &ParameterSet, method: Method) -> Result<bool> {
    if x.base() != ps.base() {
        return Err(Error::BaseMismatch {
            expected: ps.base(),
            found: x.base(),
        });
    }
    if method != Method::Oracle && !ps.is_sound() {
        return Err(Error::NoSoundCriterion(format!(
            "w = {} shares a factor with n = {}, so the rule only works one way",
            ps.w(),
            ps.divisor()
        )));
    }
    let value = x.to_value();
    match method {
        Method::Oracle => oracle_divisible(&value, ps.divisor()),
        Method::Gdc => oracle_divisible(&gdc_evaluate(x, ps)?, ps.divisor()),
        Method::Restricted => oracle_divisible(&restricted_residual(&value, ps), ps.divisor()),
    }
}

/// Final value of a default reduction of `value`.
pub(crate) fn restricted_residual(value: &BigInt, ps: &ParameterSet) -> BigInt {
    let threshold = default_threshold(ps.base());
    let max_iters = default_max_iters(value, ps.base());
    value
        .to_i128()
        .filter(|v| v.unsigned_abs() < 1 << 120)
        .and_then(|v| reduce_i128(v, ps, threshold, max_iters))
        .map(|trace| BigInt::from(*trace.last()))
        .unwrap_or_else(|| reduce(value, ps, threshold, max_iters).last().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ps(n: u64, t: u32, w: i64, u: i64) -> ParameterSet {
        ParameterSet::from_pair(n, t, w, u).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_divisible(&big(5916), 17), Ok(true));
        assert_eq!(oracle_divisible(&big(0), 5), Ok(true));
        assert_eq!(oracle_divisible(&big(9), 27), Ok(false));
        assert_eq!(oracle_divisible(&big(-34), 17), Ok(true));
        assert_eq!(oracle_divisible(&big(1), 1), Err(Error::InvalidDivisor(1)));
    }

    #[test]
    fn audit_seventeen_is_full() {
        let report = equivalence_audit(&ps(17, 10, 5, -1), 10_000);
        assert_eq!(report.forward_violations, 0);
        assert!(report.reverse_witnesses.is_empty());
        assert_eq!(report.verdict, SoundnessClass::Full);
    }

    #[test]
    fn audit_unsound_rows() {
        let report = equivalence_audit(&ps(27, 10, 3, 3), 1000);
        assert_eq!(report.forward_violations, 0);
        assert_eq!(report.reverse_witnesses[0], 9);
        assert_eq!(report.verdict, SoundnessClass::ForwardOnly { witness: 9 });
        assert_eq!(restricted_step(&big(9), &report.params), big(27));

        let report = equivalence_audit(&ps(22, 10, -2, 2), 1000);
        assert_eq!(report.verdict, SoundnessClass::ForwardOnly { witness: 11 });
        assert_eq!(restricted_step(&big(11), &report.params), big(0));
        assert!(report.reverse_witnesses.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn audit_raises_small_bound() {
        let report = equivalence_audit(&ps(7, 10, -2, 1), 5);
        assert_eq!(report.bound, 100);
    }

    #[test]
    fn congruence_examples() {
        assert!(congruence_check(&big(5916), &ps(17, 10, 2, 3)));
        assert_eq!((big(2) * 5916 - 1785) % 17, big(0));
        assert!(congruence_check(&big(1_860_523), &ps(7, 10, -2, 1)));
        assert!(congruence_check(&big(0), &ps(7, 10, -2, 1)));
        assert!(congruence_check(&big(-1_860_523), &ps(7, 10, -2, 1)));
    }

    #[test]
    fn verdict_examples() {
        let x = Numeral::parse("5916", 10).unwrap();
        for m in [Method::Restricted, Method::Gdc, Method::Oracle] {
            assert_eq!(verdict(&x, 17, m, 3), Ok(true));
        }
        let x = Numeral::parse("1860523", 10).unwrap();
        for m in [Method::Restricted, Method::Gdc, Method::Oracle] {
            assert_eq!(verdict(&x, 7, m, 3), Ok(true));
        }
        let nine = Numeral::parse("9", 10).unwrap();
        assert_eq!(verdict(&nine, 27, Method::Gdc, 3), Ok(false));
        // the table's (3, 3) rule would say yes: R(9) = 27
        let forward_only = ps(27, 10, 3, 3);
        assert!(oracle_divisible(&restricted_step(&big(9), &forward_only), 27).unwrap());
        assert!(matches!(
            verdict_with(&nine, &forward_only, Method::Gdc),
            Err(Error::NoSoundCriterion(_))
        ));
    }

    #[test]
    fn verdict_without_sound_rule() {
        let x = Numeral::parse("40", 10).unwrap();
        assert!(matches!(
            verdict(&x, 20, Method::Restricted, 3),
            Err(Error::NoSoundCriterion(_))
        ));
        assert_eq!(verdict(&x, 20, Method::Oracle, 3), Ok(true));
    }

    #[test]
    fn verdict_on_huge_numeral() {
        // 7·10^60 + 7 = 7·(10^60 + 1)
        let mut text = String::from("7");
        text.push_str(&"0".repeat(59));
        text.push('7');
        let x = Numeral::parse(&text, 10).unwrap();
        let expected = oracle_divisible(&x.to_value(), 7).unwrap();
        for m in [Method::Restricted, Method::Gdc] {
            assert_eq!(verdict(&x, 7, m, 3), Ok(expected));
        }
        let trace_end = restricted_residual(&x.to_value(), &sound_parameters(7, 10, 3).unwrap());
        assert!(trace_end.magnitude() <= &1000u32.into());
    }

    #[test]
    fn methods_agree_on_random_inputs() {
        let mut rng = StdRng::seed_from_u64(0xD1_71);
        let bases = [2u32, 8, 10, 16];
        let mut checked = 0;
        for _ in 0..10_000 {
            let a: u64 = rng.gen_range(0..1_000_000_000);
            let n: u64 = rng.gen_range(2..=100);
            let t = bases[rng.gen_range(0..bases.len())];
            let x = Numeral::from_value(&BigInt::from(a), t).unwrap();
            let truth = a.is_multiple_of(n);
            assert_eq!(verdict(&x, n, Method::Oracle, 3), Ok(truth));
            for m in [Method::Restricted, Method::Gdc] {
                match verdict(&x, n, m, 3) {
                    Ok(v) => {
                        assert_eq!(v, truth, "a={a} n={n} t={t} {m}");
                        checked += 1;
                    }
                    Err(Error::NoSoundCriterion(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(checked > 10_000);
    }

    #[test]
    fn method_parsing() {
        assert_eq!("GDC".parse::<Method>(), Ok(Method::Gdc));
        assert!("fast".parse::<Method>().is_err());
        assert_eq!(Method::default().to_string(), "restricted");
    }
}
