//! Divisibility parameters `(w, u)` solving `w·t − u = N = q·n`.

use std::fmt;

use num_integer::Integer;

use crate::numeral::check_base;
use crate::verify::equivalence_audit;
use crate::{Error, Result};

/// Largest multiplier `|q|` searched by default.
pub const DEFAULT_Q_MAX: u32 = 3;

/// One admissible choice of divisibility parameters for divisor `n` in base `t`.
///
/// Invariants, checked on construction: `N = q·n = w·t − u`, `q ≠ 0`,
/// `|u| ≤ t − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParameterSet {
    divisor: u64,
    base: u32,
    multiplier: i64,
    multiple: i64,
    w: i64,
    u: i64,
}

impl ParameterSet {
    pub fn new(divisor: u64, base: u32, multiplier: i64, w: i64, u: i64) -> Result<Self> {
        check_base(base)?;
        if divisor < 2 {
            return Err(Error::InvalidDivisor(divisor));
        }
        if multiplier == 0 {
            return Err(Error::ZeroMultiple);
        }
        let n = i64::try_from(divisor).map_err(|_| Error::Overflow("converting the divisor"))?;
        let multiple = multiplier
            .checked_mul(n)
            .ok_or(Error::Overflow("forming q·n"))?;
        let t = i64::from(base);
        if u.unsigned_abs() > u64::from(base - 1) {
            return Err(Error::InvalidParameters(format!(
                "|u| = {} exceeds t − 1 = {}",
                u.unsigned_abs(),
                base - 1
            )));
        }
        let encoded = w
            .checked_mul(t)
            .and_then(|wt| wt.checked_sub(u))
            .ok_or(Error::Overflow("forming w·t − u"))?;
        if encoded != multiple {
            return Err(Error::InvalidParameters(format!(
                "w·t − u = {encoded} but q·n = {multiple}"
            )));
        }
        Ok(Self {
            divisor,
            base,
            multiplier,
            multiple,
            w,
            u,
        })
    }

    /// Builds the parameter set for an explicit `(w, u)`, deriving `q` from
    /// `N = w·t − u`. Fails unless `n` divides `N`.
    pub fn from_pair(divisor: u64, base: u32, w: i64, u: i64) -> Result<Self> {
        check_base(base)?;
        if divisor < 2 {
            return Err(Error::InvalidDivisor(divisor));
        }
        let multiple = w
            .checked_mul(i64::from(base))
            .and_then(|wt| wt.checked_sub(u))
            .ok_or(Error::Overflow("forming w·t − u"))?;
        if multiple == 0 {
            return Err(Error::ZeroMultiple);
        }
        let n = i64::try_from(divisor).map_err(|_| Error::Overflow("converting the divisor"))?;
        if multiple % n != 0 {
            return Err(Error::InvalidParameters(format!(
                "w·t − u = {multiple} is not a multiple of {divisor}"
            )));
        }
        Self::new(divisor, base, multiple / n, w, u)
    }

    pub fn divisor(&self) -> u64 {
        self.divisor
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// The multiplier `q`.
    pub fn multiplier(&self) -> i64 {
        self.multiplier
    }

    /// The divisor multiple `N = q·n`.
    pub fn multiple(&self) -> i64 {
        self.multiple
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    /// `gcd(|w|, n) = 1`: the rule is an equivalence, not just an implication.
    pub fn is_sound(&self) -> bool {
        self.w.unsigned_abs().gcd(&self.divisor) == 1
    }

    /// `u = 0`: the rule only looks at the units digit.
    pub fn is_last_digit(&self) -> bool {
        self.u == 0
    }

    /// `(−w, −u)` for `−N`; every criterion value flips sign, verdicts do not.
    pub fn negated(&self) -> Self {
        Self {
            multiplier: -self.multiplier,
            multiple: -self.multiple,
            w: -self.w,
            u: -self.u,
            ..*self
        }
    }

    /// The representative of `{self, self.negated()}` with `w > 0`
    /// (or `u > 0` when `w = 0`).
    pub fn canonical(&self) -> Self {
        if self.w < 0 || (self.w == 0 && self.u < 0) {
            self.negated()
        } else {
            *self
        }
    }
}

impl fmt::Display for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} t={} q={} N={} w={} u={}",
            self.divisor, self.base, self.multiplier, self.multiple, self.w, self.u
        )
    }
}

/// Outcome of checking the reverse direction `n | R ⟹ n | A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoundnessClass {
    /// `n | R ⟺ n | A`.
    Full,
    /// `n | A ⟹ n | R` only; `witness` is the smallest `A ≥ 0` with
    /// `n | R(A)` and `n ∤ A`.
    ForwardOnly { witness: u64 },
}

impl SoundnessClass {
    pub fn is_full(&self) -> bool {
        matches!(self, SoundnessClass::Full)
    }

    pub fn witness(&self) -> Option<u64> {
        match *self {
            SoundnessClass::Full => None,
            SoundnessClass::ForwardOnly { witness } => Some(witness),
        }
    }
}

impl fmt::Display for SoundnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            SoundnessClass::Full => "full",
            SoundnessClass::ForwardOnly { .. } => "forward-only",
        })
    }
}

fn rank_key(w: i64, u: i64) -> (u64, u64, bool) {
    (u.unsigned_abs(), w.unsigned_abs(), w < 0)
}

/// Every `(w, u)` with `w·t − u = N` and `|u| ≤ t − 1`, smallest `|u|` first.
///
/// There is exactly one pair when `t | N` (with `u = 0`) and exactly two
/// otherwise.
pub fn representations(multiple: i64, base: u32) -> Result<Vec<(i64, i64)>> {
    check_base(base)?;
    if multiple == 0 {
        return Err(Error::ZeroMultiple);
    }
    let t = i64::from(base);
    let (w0, r) = (multiple.div_euclid(t), multiple.rem_euclid(t));
    if r == 0 {
        return Ok(vec![(w0, 0)]);
    }
    let w1 = w0
        .checked_add(1)
        .ok_or(Error::Overflow("solving w·t − u = N"))?;
    let mut pairs = vec![(w0, -r), (w1, t - r)];
    pairs.sort_by_key(|&(w, u)| rank_key(w, u));
    Ok(pairs)
}

/// All parameter sets for `q ∈ {±1, …, ±q_max}`, ordered by `|q|`, then
/// positive `q` first, then by [`representations`] order.
pub fn enumerate(divisor: u64, base: u32, q_max: u32) -> Result<Vec<ParameterSet>> {
    check_base(base)?;
    if divisor < 2 {
        return Err(Error::InvalidDivisor(divisor));
    }
    let n = i64::try_from(divisor).map_err(|_| Error::Overflow("converting the divisor"))?;
    let mut out = Vec::with_capacity(4 * q_max as usize);
    for q in 1..=i64::from(q_max) {
        for q in [q, -q] {
            let multiple = q.checked_mul(n).ok_or(Error::Overflow("forming q·n"))?;
            for (w, u) in representations(multiple, base)? {
                out.push(ParameterSet::new(divisor, base, q, w, u)?);
            }
        }
    }
    Ok(out)
}

/// Classifies a parameter set by exhaustive comparison with the modulo oracle
/// over `A ∈ [0, bound]`.
///
/// The gcd test predicts the outcome; when `gcd(|w|, n) = g > 1` but the scan
/// window holds no counterexample, the search continues up to `n / g`, which
/// is always a witness.
pub fn classify(ps: &ParameterSet, bound: u64) -> SoundnessClass {
    let report = equivalence_audit(ps, bound);
    if !report.verdict.is_full() || ps.is_sound() {
        return report.verdict;
    }
    let g = ps.w.unsigned_abs().gcd(&ps.divisor);
    let guaranteed = ps.divisor / g;
    let witness = (report.bound + 1..=guaranteed)
        .find(|&a| crate::verify::is_reverse_witness(ps, a))
        .unwrap_or(guaranteed);
    SoundnessClass::ForwardOnly { witness }
}

/// Picks the preferred candidate and returns it in canonical sign (`w > 0`).
///
/// With `require_sound`, candidates with `gcd(|w|, n) ≠ 1` are dropped first.
/// Ranking, in order: rules that use the leading part (`u ≠ 0`) before
/// last-digit rules; `|w| ≤ t − 1` before larger `|w|`; smallest `|u|`;
/// smallest `|w|`; `w > 0`; smallest `|q|`.
pub fn select_best(candidates: &[ParameterSet], require_sound: bool) -> Result<ParameterSet> {
    let first = candidates
        .first()
        .ok_or_else(|| Error::InvalidParameters("no candidates to select from".into()))?;
    let (divisor, base) = (first.divisor, first.base);
    if candidates
        .iter()
        .any(|c| c.divisor != divisor || c.base != base)
    {
        return Err(Error::InvalidParameters(
            "candidates mix different divisors or bases".into(),
        ));
    }
    let wide = u64::from(base - 1);
    candidates
        .iter()
        .filter(|c| !require_sound || c.is_sound())
        .min_by_key(|c| {
            let (au, aw, neg) = rank_key(c.w, c.u);
            (
                c.u == 0,
                aw > wide,
                au,
                aw,
                neg,
                c.multiplier.unsigned_abs(),
                c.multiplier < 0,
            )
        })
        .map(ParameterSet::canonical)
        .ok_or(Error::NoSoundCandidate { divisor, base })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: &[ParameterSet]) -> Vec<(i64, i64, i64)> {
        v.iter().map(|p| (p.multiplier(), p.w(), p.u())).collect()
    }

    #[test]
    fn two_representations_of_81() {
        assert_eq!(representations(81, 10).unwrap(), vec![(8, -1), (9, 9)]);
    }

    #[test]
    fn representations_of_17() {
        assert_eq!(representations(17, 10).unwrap(), vec![(2, 3), (1, -7)]);
    }

    #[test]
    fn multiple_of_base_has_one_representation() {
        assert_eq!(representations(10, 10).unwrap(), vec![(1, 0)]);
        assert_eq!(representations(-16, 8).unwrap(), vec![(-2, 0)]);
    }

    #[test]
    fn zero_multiple_rejected() {
        assert_eq!(representations(0, 10), Err(Error::ZeroMultiple));
        assert_eq!(ParameterSet::new(7, 10, 0, 0, 0), Err(Error::ZeroMultiple));
    }

    #[test]
    fn representations_match_brute_force() {
        for base in [2u32, 8, 10, 16] {
            let t = i64::from(base);
            for multiple in (-1000i64..=1000).filter(|&m| m != 0) {
                let got = representations(multiple, base).unwrap();
                for &(w, u) in &got {
                    assert_eq!(w * t - u, multiple);
                    assert!(u.abs() < t);
                }
                let span = multiple.abs() + 1;
                let brute: Vec<_> = (-span..=span)
                    .map(|w| (w, w * t - multiple))
                    .filter(|&(_, u)| u.abs() < t)
                    .collect();
                assert_eq!(brute.len(), got.len(), "N={multiple} t={base}");
                assert!(brute.iter().all(|p| got.contains(p)));
                assert_eq!(got.len(), if multiple % t == 0 { 1 } else { 2 });
                assert!(got.windows(2).all(|p| p[0].1.abs() <= p[1].1.abs()));
            }
        }
    }

    #[test]
    fn enumerate_seventeen_contains_worked_pairs() {
        let sets = enumerate(17, 10, 3).unwrap();
        let p = pairs(&sets);
        assert!(p.contains(&(1, 2, 3)));
        assert!(p.contains(&(2, 3, -4)));
        assert!(p.contains(&(3, 5, -1)));
        assert_eq!(sets.len(), 12);
        // |q| ascending, positive first
        let qs: Vec<i64> = sets.iter().map(|s| s.multiplier()).collect();
        assert_eq!(qs, vec![1, 1, -1, -1, 2, 2, -2, -2, 3, 3, -3, -3]);
    }

    #[test]
    fn enumerate_three_contains_worked_pairs() {
        let p = pairs(&enumerate(3, 10, 3).unwrap());
        for (q, w, u) in [(1, 1, 7), (2, 1, 4), (3, 1, 1)] {
            assert!(p.contains(&(q, w, u)), "missing {:?}", (q, w, u));
        }
    }

    #[test]
    fn enumerate_seven_has_negative_multiple() {
        let p = pairs(&enumerate(7, 10, 3).unwrap());
        assert!(p.contains(&(-3, -2, 1)));
    }

    #[test]
    fn enumerate_rejects_small_divisor() {
        assert_eq!(enumerate(1, 10, 3), Err(Error::InvalidDivisor(1)));
    }

    #[test]
    fn classify_examples() {
        let seven = ParameterSet::new(7, 10, -3, -2, 1).unwrap();
        assert_eq!(classify(&seven, 10_000), SoundnessClass::Full);

        let tw7 = ParameterSet::new(27, 10, 1, 3, 3).unwrap();
        assert_eq!(
            classify(&tw7, 1000),
            SoundnessClass::ForwardOnly { witness: 9 }
        );

        let four_octal = ParameterSet::new(4, 8, 2, 1, 0).unwrap();
        assert!(four_octal.is_last_digit());
        assert_eq!(classify(&four_octal, 10_000), SoundnessClass::Full);
    }

    #[test]
    fn classify_extends_past_small_bound() {
        // gcd(30, 303) = 3, so every witness is a multiple of 101 > t²
        let ps = ParameterSet::from_pair(303, 10, 30, -3).unwrap();
        assert!(!ps.is_sound());
        assert_eq!(
            classify(&ps, 100),
            SoundnessClass::ForwardOnly { witness: 101 }
        );
        assert!(crate::verify::is_reverse_witness(&ps, 101));
    }

    #[test]
    fn gcd_prediction_matches_scan() {
        for base in [8u32, 10] {
            for n in 2..=50 {
                for ps in enumerate(n, base, 3).unwrap() {
                    let report = equivalence_audit(&ps, 10_000);
                    assert_eq!(report.forward_violations, 0, "{ps}");
                    assert_eq!(report.verdict.is_full(), ps.is_sound(), "{ps}");
                }
            }
        }
    }

    #[test]
    fn select_best_examples() {
        let three = select_best(&enumerate(3, 10, 3).unwrap(), true).unwrap();
        assert_eq!((three.w(), three.u()), (1, 1));
        assert_eq!(three.multiplier(), 3);

        let seventeen = select_best(&enumerate(17, 10, 3).unwrap(), true).unwrap();
        assert_eq!((seventeen.w(), seventeen.u()), (5, -1));

        // (0, −5) has smaller |w| but is unsound
        let five = enumerate(5, 10, 1).unwrap();
        assert!(five.iter().any(|p| (p.w(), p.u()) == (0, -5)));
        let best = select_best(&five, true).unwrap();
        assert_eq!((best.w(), best.u()), (1, 5));
        // without the filter (0, −5) wins, canonicalised to (0, 5)
        let unfiltered = select_best(&five, false).unwrap();
        assert_eq!((unfiltered.w(), unfiltered.u()), (0, 5));
        assert!(!unfiltered.is_sound());
    }

    #[test]
    fn select_best_prefers_leading_part_over_last_digit() {
        // q = 2 gives the last-digit rule (1, 0); a rule using B is preferred
        let best = select_best(&enumerate(5, 10, 3).unwrap(), true).unwrap();
        assert_eq!((best.w(), best.u()), (1, 5));
        // when only last-digit rules are sound, one is returned
        let eight = select_best(&enumerate(8, 8, 3).unwrap(), true).unwrap();
        assert_eq!((eight.w(), eight.u()), (1, 0));
    }

    #[test]
    fn select_best_keeps_w_within_base() {
        // q = 3 gives (25, 1), smaller |u| but |w| > t − 1
        let best = select_best(&enumerate(83, 10, 3).unwrap(), true).unwrap();
        assert_eq!((best.w(), best.u()), (8, -3));
    }

    #[test]
    fn select_best_no_sound_candidate() {
        assert_eq!(
            select_best(&enumerate(16, 8, 3).unwrap(), true),
            Err(Error::NoSoundCandidate {
                divisor: 16,
                base: 8
            })
        );
    }

    #[test]
    fn sign_canonicalization() {
        let ps = ParameterSet::new(7, 10, -3, -2, 1).unwrap();
        let c = ps.canonical();
        assert_eq!((c.multiplier(), c.multiple(), c.w(), c.u()), (3, 21, 2, -1));
        assert_eq!(c.canonical(), c);
        assert_eq!(c.negated(), ps);
    }

    #[test]
    fn invariants_enforced() {
        assert!(ParameterSet::new(7, 10, 1, 1, 3).is_ok());
        assert!(matches!(
            ParameterSet::new(7, 10, 1, 2, 3),
            Err(Error::InvalidParameters(_))
        ));
        assert!(ParameterSet::new(7, 10, 3, 3, 9).is_ok());
        assert!(ParameterSet::new(13, 10, 1, 2, 7).is_ok());
        // |u| > t − 1
        assert!(ParameterSet::new(10, 10, 1, 2, 10).is_err());
        assert!(matches!(
            ParameterSet::from_pair(13, 8, 3, 2),
            Err(Error::InvalidParameters(_))
        ));
    }
}
