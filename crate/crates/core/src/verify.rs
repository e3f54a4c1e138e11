//! Structural verification of point sets: elementary intervals and
//! `(t,m,s)`-net checking, exact t-values, digital shift arithmetic, b-adic
//! norms, and admissibility tests.
//!
//! All checks work on exact digit strings. Norm and admissibility
//! quantities are powers of `b` and are handled in exponent space; the
//! exact rational values are exposed where reports need them.
//!
//! Two admissibility predicates are provided, mirroring the two inequality
//! shapes for point sets and sequences: the point-set variant demands
//! `min ‖x_n ⊖ x_k‖_b > b^{-m-d}` (strict), the sequence variant demands
//! `‖n ⊖ k‖_b · ‖x_n ⊖ x_k‖_b >= b^{-d}` over all index pairs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::digits::{DigitString, Radix};
use crate::field::FieldSpec;
use crate::radinv::int_digits;
use crate::{Error, Result};

/// An axis-aligned box `prod_i [a_i b^{-d_i}, (a_i+1) b^{-d_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementaryInterval {
    pub b: u64,
    /// Per-coordinate `(a_i, d_i)` with `0 <= a_i < b^{d_i}`.
    pub coords: Vec<(u64, u32)>,
}

impl ElementaryInterval {
    /// `b^{-(d_1 + … + d_s)}` as an exact rational.
    pub fn volume(&self) -> BigRational {
        let total: u32 = self.coords.iter().map(|&(_, d)| d).sum();
        BigRational::new(BigInt::one(), BigInt::from(self.b).pow(total))
    }

    /// Digit-prefix membership test.
    pub fn contains(&self, point: &[DigitString]) -> bool {
        self.coords.iter().enumerate().all(|(i, &(a, d))| {
            let digits = point[i].digits();
            let mut prefix = 0u64;
            for &dig in digits.iter().take(d as usize) {
                prefix = prefix * self.b + dig;
            }
            prefix == a
        })
    }
}

/// Result of a `(t,m,s)`-net check.
#[derive(Clone, Debug, Serialize)]
pub struct NetReport {
    pub b: u64,
    pub m: u32,
    pub s: usize,
    /// The t that was checked.
    pub t: u32,
    pub verified: bool,
    /// First interval (composition order, then prefix order) whose count is
    /// not `b^t`, when the check fails.
    pub violation: Option<ElementaryInterval>,
    /// Minimal passing t, filled by [`exact_t_value`]-style analyses.
    pub exact_t: Option<u32>,
}

fn validate_net_input(points: &[Vec<DigitString>], b: u64, m: u32) -> Result<usize> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    let expected = (b as u128)
        .checked_pow(m)
        .ok_or_else(|| Error::Usage(format!("b^m overflows at b={b}, m={m}")))?;
    if expected > u64::MAX as u128 || points.len() as u128 != expected {
        return Err(Error::WrongPointCount {
            expected: expected.min(u64::MAX as u128) as u64,
            got: points.len() as u64,
        });
    }
    let s = points.first().map_or(0, |p| p.len());
    if s == 0 {
        return Err(Error::Usage("points must have at least one coordinate".into()));
    }
    for p in points {
        if p.len() != s {
            return Err(Error::Usage("points of mixed dimension".into()));
        }
        for c in p {
            match c.radix() {
                Radix::Fixed(base) if *base == b => {}
                Radix::Fixed(_) => return Err(Error::BaseMismatch),
                Radix::Mixed(_) => return Err(Error::MixedRadixUnsupported),
            }
            if c.precision() < m as usize {
                return Err(Error::PrecisionTooSmall {
                    needed: m as usize,
                    have: c.precision(),
                });
            }
        }
    }
    Ok(s)
}

/// Checks a single composition `(d_1, …, d_s)`: buckets points by their
/// digit prefixes and demands every bucket hold exactly `b^t` points.
/// Returns the first offending interval otherwise.
fn check_composition(
    points: &[Vec<DigitString>],
    b: u64,
    t: u32,
    dims: &[u32],
) -> Option<ElementaryInterval> {
    let mut buckets: std::collections::BTreeMap<u128, u64> = std::collections::BTreeMap::new();
    for p in points {
        let mut key = 0u128;
        for (i, &d) in dims.iter().enumerate() {
            for &dig in p[i].digits().iter().take(d as usize) {
                key = key * b as u128 + dig as u128;
            }
        }
        *buckets.entry(key).or_insert(0) += 1;
    }
    let want = b.pow(t);
    for (&key, &count) in &buckets {
        if count != want {
            // Decode the packed prefix back into per-coordinate a_i.
            let total: u32 = dims.iter().sum();
            let mut digits = vec![0u64; total as usize];
            let mut k = key;
            for slot in digits.iter_mut().rev() {
                *slot = (k % b as u128) as u64;
                k /= b as u128;
            }
            let mut coords = Vec::with_capacity(dims.len());
            let mut offset = 0usize;
            for &d in dims {
                let mut a = 0u64;
                for &dig in &digits[offset..offset + d as usize] {
                    a = a * b + dig;
                }
                coords.push((a, d));
                offset += d as usize;
            }
            return Some(ElementaryInterval { b, coords });
        }
    }
    None
}

/// Iterates all compositions of `total` into `parts` nonnegative parts in
/// lexicographic order, invoking `f` until it returns `Some`.
fn first_composition_hit<T>(
    total: u32,
    parts: usize,
    mut f: impl FnMut(&[u32]) -> Option<T>,
) -> Option<T> {
    fn rec<T>(
        dims: &mut Vec<u32>,
        idx: usize,
        remaining: u32,
        f: &mut impl FnMut(&[u32]) -> Option<T>,
    ) -> Option<T> {
        if idx + 1 == dims.len() {
            dims[idx] = remaining;
            return f(dims);
        }
        for d in 0..=remaining {
            dims[idx] = d;
            if let Some(hit) = rec(dims, idx + 1, remaining - d, f) {
                return Some(hit);
            }
        }
        None
    }
    let mut dims = vec![0u32; parts];
    rec(&mut dims, 0, total, &mut f)
}

/// Verifies the `(t,m,s)`-net property: every elementary interval of volume
/// `b^{t-m}` must contain exactly `b^t` of the `b^m` points. Exact; checks
/// all compositions `d_1 + … + d_s = m − t`.
pub fn is_net(points: &[Vec<DigitString>], b: u64, t: u32, m: u32) -> Result<NetReport> {
    let s = validate_net_input(points, b, m)?;
    if t > m {
        return Err(Error::Usage(format!("t={t} exceeds m={m}")));
    }
    let violation = first_composition_hit(m - t, s, |dims| check_composition(points, b, t, dims));
    Ok(NetReport {
        b,
        m,
        s,
        t,
        verified: violation.is_none(),
        violation,
        exact_t: None,
    })
}

/// Minimal `t` for which the point set is a `(t,m,s)`-net. Binary search is
/// valid because the net property is monotone in `t` (an interval of volume
/// `b^{t+1-m}` is a disjoint union of `b` intervals of volume `b^{t-m}`).
pub fn exact_t_value(points: &[Vec<DigitString>], b: u64, m: u32) -> Result<u32> {
    let s = validate_net_input(points, b, m)?;
    let passes = |t: u32| {
        first_composition_hit(m - t, s, |dims| check_composition(points, b, t, dims)).is_none()
    };
    let (mut lo, mut hi) = (0u32, m); // t = m always passes
    while lo < hi {
        let mid = (lo + hi) / 2;
        if passes(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

fn require_fixed_base(x: &DigitString, spec: &FieldSpec) -> Result<()> {
    match x.radix() {
        Radix::Fixed(b) if *b == spec.order() => Ok(()),
        Radix::Fixed(_) => Err(Error::BaseMismatch),
        Radix::Mixed(_) => Err(Error::MixedRadixUnsupported),
    }
}

/// Digit-wise shifted point `x ⊕ y`: digits add in `F_b` through the
/// bijection `phi`. For prime `b` this is plain addition mod `b`.
pub fn digit_shift(x: &DigitString, y: &DigitString, spec: &FieldSpec) -> Result<DigitString> {
    digit_zip(x, y, spec, |s, a, b| s.add_index(a, b))
}

/// Digit-wise difference `x ⊖ y`, the inverse of [`digit_shift`].
pub fn digit_sub(x: &DigitString, y: &DigitString, spec: &FieldSpec) -> Result<DigitString> {
    digit_zip(x, y, spec, |s, a, b| s.sub_index(a, b))
}

fn digit_zip(
    x: &DigitString,
    y: &DigitString,
    spec: &FieldSpec,
    op: impl Fn(&FieldSpec, u64, u64) -> u64,
) -> Result<DigitString> {
    require_fixed_base(x, spec)?;
    require_fixed_base(y, spec)?;
    if x.precision() != y.precision() {
        return Err(Error::PrecisionMismatch);
    }
    let digits = x
        .digits()
        .iter()
        .zip(y.digits())
        .map(|(&a, &b)| op(spec, a, b))
        .collect();
    DigitString::fixed(spec.order(), digits)
}

/// Digit-wise negation `⊖x` (so `x ⊕ (⊖x) = 0`).
pub fn digit_neg(x: &DigitString, spec: &FieldSpec) -> Result<DigitString> {
    require_fixed_base(x, spec)?;
    let digits = x.digits().iter().map(|&a| spec.neg_index(a)).collect();
    DigitString::fixed(spec.order(), digits)
}

/// b-adic norm of a fractional digit string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Norm {
    /// `‖x‖_b = b^{-exp}` with `exp = k + 1`, `k` the number of leading
    /// zero digits.
    Exact { exp: u32 },
    /// All digits are zero through the stated precision: the norm is only
    /// known to be at most `b^{-precision}`.
    TruncatedZero { precision: usize },
}

impl Norm {
    /// Exact value when certified, `None` for a truncated zero.
    pub fn value(&self, b: u64) -> Option<BigRational> {
        match self {
            Norm::Exact { exp } => {
                Some(BigRational::new(BigInt::one(), BigInt::from(b).pow(*exp)))
            }
            Norm::TruncatedZero { .. } => None,
        }
    }
}

/// `‖x‖_b = b^{-k-1}` where `x_1 = … = x_k = 0` and `x_{k+1} ≠ 0`; an
/// all-zero string reports its truncation instead of a value.
pub fn norm_b(x: &DigitString) -> Result<Norm> {
    if x.base().is_none() {
        return Err(Error::MixedRadixUnsupported);
    }
    let k = x.leading_zeros();
    if k == x.precision() {
        Ok(Norm::TruncatedZero { precision: x.precision() })
    } else {
        Ok(Norm::Exact { exp: k as u32 + 1 })
    }
}

/// `‖n‖_b = b^k` for `n ∈ [b^k, b^{k+1})`; requires `n >= 1`.
pub fn norm_b_int(n: u64, b: u64) -> Result<u64> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if n == 0 {
        return Err(Error::Usage("integer norm requires n >= 1".into()));
    }
    let mut pow = 1u64;
    while pow <= n / b {
        pow *= b;
    }
    Ok(pow)
}

/// Exponent `e` with `‖n ⊖ k‖_b = b^e`: the position of the highest base-b
/// digit where `n` and `k` differ. `None` when `n = k`.
pub fn int_shift_norm_exponent(n: u64, k: u64, b: u64) -> Option<u32> {
    let (dn, dk) = (int_digits(n, b), int_digits(k, b));
    let len = dn.len().max(dk.len());
    (0..len)
        .rev()
        .find(|&r| dn.get(r).copied().unwrap_or(0) != dk.get(r).copied().unwrap_or(0))
        .map(|r| r as u32)
}

/// Sum over coordinates of the exponents of `‖x^{(i)} ⊖ y^{(i)}‖_b`, i.e.
/// `prod_i ‖·‖ = b^{-result}`. `Err` carries the coordinate index when some
/// pair of coordinates agrees on every stored digit (not certifiable).
fn pair_norm_exponent(x: &[DigitString], y: &[DigitString]) -> std::result::Result<u64, usize> {
    let mut total = 0u64;
    for (i, (a, b)) in x.iter().zip(y).enumerate() {
        let diff_at = a
            .digits()
            .iter()
            .zip(b.digits())
            .position(|(da, db)| da != db);
        match diff_at {
            Some(j) => total += j as u64 + 1,
            None => return Err(i),
        }
    }
    Ok(total)
}

/// Result of the weak-admissibility scan (the quantity `κ_m`).
#[derive(Clone, Debug)]
pub struct WeakAdmissibility {
    pub b: u64,
    /// `κ_m = min ‖x_n ⊖ x_k‖_b`, exact; `0` when a pair of points agrees
    /// on every stored digit.
    pub kappa: BigRational,
    /// `κ_m = b^{-exp}` when nonzero.
    pub kappa_exponent: Option<u64>,
    pub weakly_admissible: bool,
    /// Index pairs whose difference is zero through the whole precision;
    /// `κ` is reported as zero and flagged rather than certified.
    pub truncated_pairs: Vec<(u64, u64)>,
    /// A pair attaining `κ_m` when nonzero.
    pub min_pair: Option<(u64, u64)>,
}

/// Exhaustive pairwise `κ_m` over the given points. Quadratic in the point
/// count; intended for prefixes up to `2^13` points.
pub fn weak_admissibility(points: &[Vec<DigitString>]) -> Result<WeakAdmissibility> {
    if points.len() < 2 {
        return Err(Error::Usage("need at least two points".into()));
    }
    let b = points[0][0].base().ok_or(Error::MixedRadixUnsupported)?;
    let mut worst: Option<(u64, (u64, u64))> = None;
    let mut truncated = Vec::new();
    for n in 1..points.len() {
        for k in 0..n {
            match pair_norm_exponent(&points[n], &points[k]) {
                Ok(exp) => {
                    if worst.as_ref().map_or(true, |(w, _)| exp > *w) {
                        worst = Some((exp, (n as u64, k as u64)));
                    }
                }
                Err(_) => truncated.push((n as u64, k as u64)),
            }
        }
    }
    if !truncated.is_empty() {
        return Ok(WeakAdmissibility {
            b,
            kappa: BigRational::zero(),
            kappa_exponent: None,
            weakly_admissible: false,
            truncated_pairs: truncated,
            min_pair: None,
        });
    }
    let (exp, pair) = worst.unwrap();
    Ok(WeakAdmissibility {
        b,
        kappa: BigRational::new(BigInt::one(), BigInt::from(b).pow(exp as u32)),
        kappa_exponent: Some(exp),
        weakly_admissible: true,
        truncated_pairs: vec![],
        min_pair: Some(pair),
    })
}

/// Outcome of a d-admissibility check.
#[derive(Clone, Debug, Serialize)]
pub struct DAdmissibility {
    pub d: u32,
    pub pairs_checked: u64,
    pub admissible: bool,
    pub violating_pair: Option<(u64, u64)>,
}

/// Sequence-variant check on a prefix: for all `0 <= k < n < N`,
/// `‖n ⊖ k‖_b · ‖x_n ⊖ x_k‖_b >= b^{-d}`. A pair whose coordinate digits
/// agree through the whole precision cannot be certified and is an error.
pub fn d_admissible_sequence(points: &[Vec<DigitString>], d: u32) -> Result<DAdmissibility> {
    let b = points
        .first()
        .and_then(|p| p.first())
        .and_then(|c| c.base())
        .ok_or(Error::MixedRadixUnsupported)?;
    let mut pairs = 0u64;
    for n in 1..points.len() {
        for k in 0..n {
            pairs += 1;
            let int_exp =
                int_shift_norm_exponent(n as u64, k as u64, b).expect("distinct indices differ");
            let frac_exp = pair_norm_exponent(&points[n], &points[k]).map_err(|i| {
                Error::Certification(format!(
                    "points {n} and {k} agree in coordinate {i} at full precision"
                ))
            })?;
            // b^{int_exp} · b^{-frac_exp} >= b^{-d}
            if (int_exp as i64) - (frac_exp as i64) < -(d as i64) {
                return Ok(DAdmissibility {
                    d,
                    pairs_checked: pairs,
                    admissible: false,
                    violating_pair: Some((n as u64, k as u64)),
                });
            }
        }
    }
    Ok(DAdmissibility { d, pairs_checked: pairs, admissible: true, violating_pair: None })
}

/// Point-set variant (strict): `min ‖x_n ⊖ x_k‖_b > b^{-m-d}` over the
/// `b^m` points.
pub fn d_admissible_net(points: &[Vec<DigitString>], d: u32, m: u32) -> Result<DAdmissibility> {
    let mut pairs = 0u64;
    for n in 1..points.len() {
        for k in 0..n {
            pairs += 1;
            let frac_exp = pair_norm_exponent(&points[n], &points[k]).map_err(|i| {
                Error::Certification(format!(
                    "points {n} and {k} agree in coordinate {i} at full precision"
                ))
            })?;
            if frac_exp >= (m + d) as u64 {
                return Ok(DAdmissibility {
                    d,
                    pairs_checked: pairs,
                    admissible: false,
                    violating_pair: Some((n as u64, k as u64)),
                });
            }
        }
    }
    Ok(DAdmissibility { d, pairs_checked: pairs, admissible: true, violating_pair: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::DigitalConfig;
    use crate::polyring::Poly;
    use crate::radinv::vdc;

    fn gf(b: u64) -> FieldSpec {
        FieldSpec::gf(b).unwrap()
    }

    fn grid_points(b: u64, m: u32) -> Vec<Vec<DigitString>> {
        (0..b.pow(m))
            .map(|n| vec![vdc(n, b, m as usize).unwrap()])
            .collect()
    }

    #[test]
    fn full_grid_is_a_zero_net() {
        let points = grid_points(2, 4);
        let report = is_net(&points, 2, 0, 4).unwrap();
        assert!(report.verified);
        assert_eq!(exact_t_value(&points, 2, 4).unwrap(), 0);
    }

    #[test]
    fn concentrated_points_fail() {
        let points: Vec<Vec<DigitString>> = (0..8)
            .map(|_| vec![DigitString::fixed(2, vec![1, 0, 0]).unwrap()])
            .collect();
        let report = is_net(&points, 2, 2, 3).unwrap();
        assert!(!report.verified);
        assert!(report.violation.is_some());
        assert_eq!(exact_t_value(&points, 2, 3).unwrap(), 3);
    }

    #[test]
    fn net_monotone_in_t() {
        let spec = gf(2);
        let polys = [
            Poly::parse(&spec, "x+1").unwrap(),
            Poly::parse(&spec, "x^2+x+1").unwrap(),
        ];
        let cfg = DigitalConfig::niederreiter(&polys, None, 12).unwrap();
        let m = 6u32;
        let points = cfg.generator(1 << m).unwrap().points(0..1 << m).unwrap();
        let t_min = exact_t_value(&points, 2, m).unwrap();
        assert!(t_min <= 1);
        for t in 0..=m {
            let pass = is_net(&points, 2, t, m).unwrap().verified;
            assert_eq!(pass, t >= t_min, "t={t}");
        }
    }

    /// Independent oracle: enumerate every elementary interval explicitly
    /// and count membership by exact value comparison against the interval
    /// bounds, then compare verdicts with the digit-prefix bucketing.
    #[test]
    fn net_check_matches_value_counting_oracle() {
        use num_bigint::BigInt;
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(41);
        for (b, m, s) in [(2u64, 3u32, 2usize), (3, 2, 2), (2, 4, 1)] {
            for _ in 0..8 {
                let points: Vec<Vec<DigitString>> = (0..b.pow(m))
                    .map(|_| {
                        (0..s)
                            .map(|_| {
                                let digits: Vec<u64> =
                                    (0..m).map(|_| rng.gen_range(0..b)).collect();
                                DigitString::fixed(b, digits).unwrap()
                            })
                            .collect()
                    })
                    .collect();
                for t in 0..=m {
                    let fast = is_net(&points, b, t, m).unwrap().verified;
                    let slow = oracle_is_net(&points, b, t, m);
                    assert_eq!(fast, slow, "b={b} m={m} s={s} t={t}");
                }
                let exact = exact_t_value(&points, b, m).unwrap();
                assert!(oracle_is_net(&points, b, exact, m));
                assert!(exact == 0 || !oracle_is_net(&points, b, exact - 1, m));
            }
        }

        fn oracle_is_net(points: &[Vec<DigitString>], b: u64, t: u32, m: u32) -> bool {
            let s = points[0].len();
            let values: Vec<Vec<BigRational>> = points
                .iter()
                .map(|p| p.iter().map(|c| c.value()).collect())
                .collect();
            let mut dims = vec![0u32; s];
            loop {
                if dims.iter().sum::<u32>() == m - t {
                    // All anchor choices for this shape.
                    let mut anchors = vec![0u64; s];
                    loop {
                        let count = values
                            .iter()
                            .filter(|v| {
                                (0..s).all(|i| {
                                    let den = BigInt::from(b).pow(dims[i]);
                                    let lo = BigRational::new(
                                        BigInt::from(anchors[i]),
                                        den.clone(),
                                    );
                                    let hi = BigRational::new(
                                        BigInt::from(anchors[i] + 1),
                                        den,
                                    );
                                    v[i] >= lo && v[i] < hi
                                })
                            })
                            .count() as u64;
                        if count != b.pow(t) {
                            return false;
                        }
                        let mut i = 0;
                        while i < s {
                            anchors[i] += 1;
                            if anchors[i] < b.pow(dims[i]) {
                                break;
                            }
                            anchors[i] = 0;
                            i += 1;
                        }
                        if i == s {
                            break;
                        }
                    }
                }
                // Odometer over shapes with entries in [0, m].
                let mut i = 0;
                while i < s {
                    dims[i] += 1;
                    if dims[i] <= m {
                        break;
                    }
                    dims[i] = 0;
                    i += 1;
                }
                if i == s {
                    return true;
                }
            }
        }
    }

    #[test]
    fn net_input_validation() {
        let points = grid_points(2, 3);
        assert!(matches!(
            is_net(&points, 2, 0, 4),
            Err(Error::WrongPointCount { .. })
        ));
        assert!(matches!(
            is_net(&points, 3, 0, 3),
            Err(Error::WrongPointCount { .. })
        ));
        let shallow: Vec<Vec<DigitString>> = (0..4)
            .map(|n| vec![DigitString::fixed(2, vec![n & 1]).unwrap()])
            .collect();
        assert!(matches!(
            is_net(&shallow, 2, 0, 2),
            Err(Error::PrecisionTooSmall { .. })
        ));
    }

    #[test]
    fn violating_interval_is_reported_and_real() {
        // 4 points all in the left half: t=0, m=2 must fail with a witness.
        let points: Vec<Vec<DigitString>> = [0u64, 0, 1, 2]
            .iter()
            .map(|&k| vec![DigitString::fixed(2, vec![0, k & 1]).unwrap()])
            .collect();
        let report = is_net(&points, 2, 0, 2).unwrap();
        assert!(!report.verified);
        let interval = report.violation.unwrap();
        let count = points.iter().filter(|p| interval.contains(p)).count() as u64;
        assert_ne!(count, 1); // b^t = 1
    }

    #[test]
    fn digit_shift_examples() {
        let spec = gf(2);
        let x = DigitString::fixed(2, vec![1, 0, 1]).unwrap();
        let zero = DigitString::zero_fixed(2, 3);
        assert_eq!(digit_shift(&x, &zero, &spec).unwrap(), x);
        assert!(digit_shift(&x, &x, &spec).unwrap().is_zero());
        let spec3 = gf(3);
        let a = DigitString::fixed(3, vec![1, 2]).unwrap();
        let b = DigitString::fixed(3, vec![2, 1]).unwrap();
        assert!(digit_shift(&a, &b, &spec3).unwrap().is_zero());
        // ⊖ then ⊕ restores.
        let diff = digit_sub(&a, &b, &spec3).unwrap();
        assert_eq!(digit_shift(&diff, &b, &spec3).unwrap(), a);
        assert!(matches!(digit_shift(&x, &a, &spec), Err(Error::BaseMismatch)));
    }

    #[test]
    fn digit_shift_group_exhaustive_small() {
        // Abelian group on fixed-precision strings for b <= 4, L = 3.
        for b in [2u64, 3, 4] {
            let spec = gf(b);
            let l = 3usize;
            let all: Vec<DigitString> = (0..b.pow(l as u32))
                .map(|v| {
                    let mut digits = vec![0u64; l];
                    let mut v = v;
                    for d in digits.iter_mut().rev() {
                        *d = v % b;
                        v /= b;
                    }
                    DigitString::fixed(b, digits).unwrap()
                })
                .collect();
            let zero = DigitString::zero_fixed(b, l);
            for x in &all {
                assert_eq!(&digit_shift(x, &zero, &spec).unwrap(), x);
                let neg = digit_neg(x, &spec).unwrap();
                assert!(digit_shift(x, &neg, &spec).unwrap().is_zero());
                for y in &all {
                    let xy = digit_shift(x, y, &spec).unwrap();
                    assert_eq!(xy, digit_shift(y, x, &spec).unwrap());
                    for z in &all {
                        let a = digit_shift(&xy, z, &spec).unwrap();
                        let bz = digit_shift(y, z, &spec).unwrap();
                        let c = digit_shift(x, &bz, &spec).unwrap();
                        assert_eq!(a, c);
                    }
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        let x = DigitString::fixed(2, vec![0, 1]).unwrap();
        assert_eq!(norm_b(&x).unwrap(), Norm::Exact { exp: 2 });
        assert_eq!(
            norm_b(&x).unwrap().value(2).unwrap(),
            BigRational::new(1.into(), 4.into())
        );
        let y = DigitString::fixed(2, vec![1, 1]).unwrap();
        assert_eq!(norm_b(&y).unwrap(), Norm::Exact { exp: 1 });
        let z = DigitString::zero_fixed(2, 5);
        assert_eq!(norm_b(&z).unwrap(), Norm::TruncatedZero { precision: 5 });
        assert_eq!(norm_b_int(5, 2).unwrap(), 4);
        assert_eq!(norm_b_int(1, 2).unwrap(), 1);
        assert!(norm_b_int(0, 2).is_err());
    }

    #[test]
    fn norm_symmetry_under_shift() {
        let spec = gf(3);
        let a = DigitString::fixed(3, vec![0, 2, 1]).unwrap();
        let b = DigitString::fixed(3, vec![0, 1, 1]).unwrap();
        let ab = digit_sub(&a, &b, &spec).unwrap();
        let ba = digit_sub(&b, &a, &spec).unwrap();
        assert_eq!(norm_b(&ab).unwrap(), norm_b(&ba).unwrap());
    }

    #[test]
    fn weak_admissibility_vdc() {
        let points = grid_points(2, 4);
        let report = weak_admissibility(&points).unwrap();
        assert!(report.weakly_admissible);
        assert!(report.kappa > BigRational::zero());
        // Independent oracle: recompute κ from exact rational values. For
        // strings differing first at position e, the norm is 2^{-e} and the
        // value difference is at least 2^{-(precision)} apart; the digit
        // norm must match the first differing position.
        let mut min: Option<BigRational> = None;
        for n in 1..points.len() {
            for k in 0..n {
                let exp = points[n][0]
                    .digits()
                    .iter()
                    .zip(points[k][0].digits())
                    .position(|(a, b)| a != b)
                    .unwrap() as u32
                    + 1;
                let norm = BigRational::new(1.into(), BigInt::from(2).pow(exp));
                min = Some(match min {
                    None => norm,
                    Some(m) => m.min(norm),
                });
            }
        }
        assert_eq!(report.kappa, min.unwrap());
    }

    #[test]
    fn equal_points_are_not_weakly_admissible() {
        let p = DigitString::fixed(2, vec![1, 0, 1]).unwrap();
        let points = vec![vec![p.clone()], vec![p]];
        let report = weak_admissibility(&points).unwrap();
        assert_eq!(report.kappa, BigRational::zero());
        assert!(!report.weakly_admissible);
        assert_eq!(report.truncated_pairs, vec![(1, 0)]);
        // The same situation is a certification error for d-admissibility.
        assert!(matches!(
            d_admissible_sequence(&points, 3),
            Err(Error::Certification(_))
        ));
    }

    #[test]
    fn integer_shift_norm() {
        assert_eq!(int_shift_norm_exponent(5, 4, 2), Some(0));
        assert_eq!(int_shift_norm_exponent(8, 0, 2), Some(3));
        assert_eq!(int_shift_norm_exponent(7, 7, 2), None);
        // Digit-wise difference sees the highest differing digit, not the
        // arithmetic difference.
        assert_eq!(int_shift_norm_exponent(9, 1, 2), Some(3));
    }

    #[test]
    fn vdc_prefix_is_one_admissible() {
        // Van der Corput base 2: ‖n ⊖ k‖·‖x_n ⊖ x_k‖ >= 2^{-1}.
        let points: Vec<Vec<DigitString>> =
            (0..32).map(|n| vec![vdc(n, 2, 16).unwrap()]).collect();
        let report = d_admissible_sequence(&points, 1).unwrap();
        assert!(report.admissible);
        let net = d_admissible_net(&points[..16], 1, 4).unwrap();
        assert!(net.admissible);
    }
}
