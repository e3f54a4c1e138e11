//! Bounded-remainder-set experiments: the discrepancy function `Δ` for
//! anchored boxes `[0, γ)`, the finite-expansion test on box corners,
//! per-scale sup profiles, and exact star discrepancy at small scale.
//!
//! `Δ([0,γ), x_0..x_{N-1}) = #{n < N : x_n ∈ [0,γ)} − N·λ([0,γ))`, exact
//! rational arithmetic throughout. Membership `x < γ` is decided digit by
//! digit with on-demand unrolling of γ's periodic expansion; when the
//! stored digits of a point tie with γ through the whole precision and γ
//! continues with nonzero digits, the comparison is reported as
//! uncertifiable rather than guessed. Mixed-radix points (whose digit
//! strings are exact by construction) fall back to exact value comparison.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::digits::{DigitString, Radix};
use crate::{Error, Result};

/// One coordinate of a box corner: either exactly 1 (full axis) or a
/// base-`b` expansion split into preperiodic and periodic digit lists. A
/// finite expansion has an empty period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaCoord {
    One,
    Expansion { pre: Vec<u64>, period: Vec<u64> },
}

/// A box corner `γ = (γ_1, …, γ_s)` in canonical base-`b` digit form: no
/// all-`(b-1)` periodic tail, all-zero periods normalized away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSpec {
    b: u64,
    coords: Vec<GammaCoord>,
}

impl GammaSpec {
    pub fn new(b: u64, coords: Vec<GammaCoord>) -> Result<GammaSpec> {
        if b < 2 {
            return Err(Error::InvalidBase(b));
        }
        if coords.is_empty() {
            return Err(Error::Usage("gamma needs at least one coordinate".into()));
        }
        let coords = coords
            .into_iter()
            .map(|c| match c {
                GammaCoord::One => Ok(GammaCoord::One),
                GammaCoord::Expansion { pre, period } => {
                    for &d in pre.iter().chain(&period) {
                        if d >= b {
                            return Err(Error::InvalidDigit { digit: d, base: b });
                        }
                    }
                    if !period.is_empty() && period.iter().all(|&d| d == b - 1) {
                        return Err(Error::Usage(
                            "all-(b-1) periodic tail is not canonical".into(),
                        ));
                    }
                    // All-zero periods mean a finite expansion.
                    let period = if period.iter().all(|&d| d == 0) { vec![] } else { period };
                    Ok(GammaCoord::Expansion { pre, period })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GammaSpec { b, coords })
    }

    /// Builds one coordinate from `num/den` by base-`b` long division with
    /// cycle detection; requires `0 <= num <= den`.
    pub fn coord_from_rational(b: u64, num: u64, den: u64) -> Result<GammaCoord> {
        if b < 2 {
            return Err(Error::InvalidBase(b));
        }
        if den == 0 || num > den {
            return Err(Error::Usage(format!("{num}/{den} is not in [0, 1]")));
        }
        if num == den {
            return Ok(GammaCoord::One);
        }
        let mut digits = Vec::new();
        let mut seen: HashMap<u64, usize> = HashMap::new();
        let mut r = num;
        loop {
            if r == 0 {
                return Ok(GammaCoord::Expansion { pre: digits, period: vec![] });
            }
            if let Some(&start) = seen.get(&r) {
                let period = digits.split_off(start);
                return Ok(GammaCoord::Expansion { pre: digits, period });
            }
            seen.insert(r, digits.len());
            let wide = r as u128 * b as u128;
            digits.push((wide / den as u128) as u64);
            r = (wide % den as u128) as u64;
        }
    }

    pub fn base(&self) -> u64 {
        self.b
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[GammaCoord] {
        &self.coords
    }

    /// Digit `γ_{i,j}` (1-based position `j`) with the period unrolled.
    /// Coordinate `i` must not be the full axis.
    fn digit(&self, i: usize, j: usize) -> u64 {
        match &self.coords[i] {
            GammaCoord::One => unreachable!("full-axis coordinate has no digits"),
            GammaCoord::Expansion { pre, period } => {
                if j <= pre.len() {
                    pre[j - 1]
                } else if period.is_empty() {
                    0
                } else {
                    period[(j - pre.len() - 1) % period.len()]
                }
            }
        }
    }

    /// Largest position with a nonzero digit for a finite coordinate;
    /// `None` when the expansion is infinite.
    fn max_nonzero_digit(&self, i: usize) -> Option<usize> {
        match &self.coords[i] {
            GammaCoord::One => Some(0),
            GammaCoord::Expansion { pre, period } => {
                if period.is_empty() {
                    Some(pre.iter().rposition(|&d| d != 0).map_or(0, |p| p + 1))
                } else {
                    None
                }
            }
        }
    }

    /// Exact value of coordinate `i`.
    pub fn coord_value(&self, i: usize) -> BigRational {
        match &self.coords[i] {
            GammaCoord::One => BigRational::one(),
            GammaCoord::Expansion { pre, period } => {
                let b = BigInt::from(self.b);
                let mut pre_num = BigInt::zero();
                for &d in pre {
                    pre_num = &pre_num * &b + d;
                }
                let pre_den = b.pow(pre.len() as u32);
                let mut val = BigRational::new(pre_num, pre_den.clone());
                if !period.is_empty() {
                    // Geometric series: the period repeats with total weight
                    // b^{-|pre|} / (b^{|period|} − 1).
                    let mut per_num = BigInt::zero();
                    for &d in period {
                        per_num = &per_num * &b + d;
                    }
                    let per_den = (b.pow(period.len() as u32) - BigInt::one()) * pre_den;
                    val += BigRational::new(per_num, per_den);
                }
                val
            }
        }
    }

    /// `λ([0, γ)) = prod_i γ_i`, exact.
    pub fn volume(&self) -> BigRational {
        (0..self.coords.len()).map(|i| self.coord_value(i)).product()
    }

    /// The finite-expansion condition: true iff every coordinate's
    /// expansion terminates (the box is an expected bounded-remainder set).
    pub fn cond_check(&self) -> bool {
        (0..self.coords.len()).all(|i| self.max_nonzero_digit(i).is_some())
    }

    /// Exact membership `x_i < γ_i` for one coordinate.
    fn coord_contains(&self, i: usize, x: &DigitString) -> Result<bool> {
        match &self.coords[i] {
            GammaCoord::One => Ok(true),
            GammaCoord::Expansion { .. } => {
                let same_base = matches!(x.radix(), Radix::Fixed(base) if *base == self.b);
                if !same_base {
                    // Mixed-radix (or foreign-base) strings are exact by
                    // construction; compare values.
                    return Ok(x.value() < self.coord_value(i));
                }
                for (idx, &xd) in x.digits().iter().enumerate() {
                    let g = self.digit(i, idx + 1);
                    if xd < g {
                        return Ok(true);
                    }
                    if xd > g {
                        return Ok(false);
                    }
                }
                // Tie through the whole precision: decidable only if gamma
                // has no nonzero digits past it.
                match self.max_nonzero_digit(i) {
                    Some(max) if max <= x.precision() => Ok(false),
                    _ => Err(Error::Certification(format!(
                        "point ties with gamma coordinate {i} through precision {}",
                        x.precision()
                    ))),
                }
            }
        }
    }

    /// Exact membership `x ∈ [0, γ)`.
    pub fn contains(&self, point: &[DigitString]) -> Result<bool> {
        if point.len() != self.coords.len() {
            return Err(Error::Usage(format!(
                "gamma has {} coordinates, point has {}",
                self.coords.len(),
                point.len()
            )));
        }
        for (i, x) in point.iter().enumerate() {
            if !self.coord_contains(i, x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parses a ';'-separated coordinate list; each coordinate is `1`, `0`,
    /// a fraction `a/c`, a digit literal `0.d…d` (decimal digit characters,
    /// so digit literals require `b <= 10`), or a periodic literal
    /// `0.d…d(p…p)`.
    pub fn parse(b: u64, text: &str) -> Result<GammaSpec> {
        let coords = text
            .split(';')
            .map(|part| Self::parse_coord(b, part.trim()))
            .collect::<Result<Vec<_>>>()?;
        GammaSpec::new(b, coords)
    }

    fn parse_coord(b: u64, text: &str) -> Result<GammaCoord> {
        let err = || Error::Parse(format!("bad gamma coordinate '{text}'"));
        if text == "1" {
            return Ok(GammaCoord::One);
        }
        if text == "0" {
            return Ok(GammaCoord::Expansion { pre: vec![], period: vec![] });
        }
        if let Some((num, den)) = text.split_once('/') {
            let num: u64 = num.trim().parse().map_err(|_| err())?;
            let den: u64 = den.trim().parse().map_err(|_| err())?;
            return Self::coord_from_rational(b, num, den);
        }
        let rest = text.strip_prefix("0.").ok_or_else(err)?;
        let digit = |c: char| -> Result<u64> {
            let d = c.to_digit(10).ok_or_else(err)? as u64;
            if d >= b {
                return Err(Error::InvalidDigit { digit: d, base: b });
            }
            Ok(d)
        };
        let (pre_str, period_str) = match rest.split_once('(') {
            None => (rest, ""),
            Some((p, rem)) => (p, rem.strip_suffix(')').ok_or_else(err)?),
        };
        let pre = pre_str.chars().map(digit).collect::<Result<Vec<_>>>()?;
        let period = period_str.chars().map(digit).collect::<Result<Vec<_>>>()?;
        if pre.is_empty() && period.is_empty() {
            return Err(err());
        }
        Ok(GammaCoord::Expansion { pre, period })
    }
}

impl fmt::Display for GammaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            match c {
                GammaCoord::One => write!(f, "1")?,
                GammaCoord::Expansion { pre, period } => {
                    if pre.is_empty() && period.is_empty() {
                        write!(f, "0")?;
                    } else {
                        // Bases above 10 need separators to stay readable.
                        let sep = if self.b > 10 { "," } else { "" };
                        let join = |ds: &[u64]| {
                            ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep)
                        };
                        write!(f, "0.{}", join(pre))?;
                        if !period.is_empty() {
                            write!(f, "({})", join(period))?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Δ([0,γ), first N points) = count − N·λ`, exact.
pub fn delta(points: &[Vec<DigitString>], gamma: &GammaSpec) -> Result<BigRational> {
    let mut count = 0u64;
    for p in points {
        if gamma.contains(p)? {
            count += 1;
        }
    }
    let n = BigRational::from_integer(BigInt::from(points.len() as u64));
    Ok(BigRational::from_integer(BigInt::from(count)) - n * gamma.volume())
}

/// One row of a [`DeltaProfile`]: the sup of `|Δ|` over `1 <= N <= b^m`.
#[derive(Clone, Debug)]
pub struct ProfileEntry {
    pub m: u32,
    /// First N attaining the sup.
    pub n_at_sup: u64,
    pub sup_abs_delta: BigRational,
}

/// Per-scale sup profile of `|Δ|`, nondecreasing in `m` by construction
/// (sup over nested prefix ranges).
#[derive(Clone, Debug)]
pub struct DeltaProfile {
    pub sequence_id: String,
    pub gamma: GammaSpec,
    pub entries: Vec<ProfileEntry>,
}

impl DeltaProfile {
    /// Desk-scale boundedness proxy: the profile is flat on the upper half
    /// of the measured range, `m ∈ [m_max/2, m_max]`.
    pub fn bounded_proxy(&self) -> bool {
        let m_max = match self.entries.last() {
            Some(e) => e.m,
            None => return true,
        };
        let m0 = m_max / 2;
        let upper: Vec<&ProfileEntry> = self.entries.iter().filter(|e| e.m >= m0).collect();
        upper.windows(2).all(|w| w[0].sup_abs_delta == w[1].sup_abs_delta)
    }
}

/// Streams the first `b^m_max` points once, maintaining the running `Δ`
/// and recording `sup_{1 <= N <= b^m} |Δ|` at every scale `m <= m_max`.
pub fn delta_profile<I>(
    sequence_id: &str,
    gamma: &GammaSpec,
    m_max: u32,
    points: I,
) -> Result<DeltaProfile>
where
    I: IntoIterator<Item = Result<Vec<DigitString>>>,
{
    let b = gamma.base();
    let total = (b as u128)
        .checked_pow(m_max)
        .filter(|&t| t <= u64::MAX as u128)
        .ok_or_else(|| Error::Usage(format!("b^m_max overflows at m_max={m_max}")))?
        as u64;
    let volume = gamma.volume();
    let (lam_num, lam_den) = (volume.numer().clone(), volume.denom().clone());
    let mut running = BigInt::zero(); // Δ·lam_den after N points
    let mut sup_num = BigInt::zero();
    let mut n_at_sup = 1u64;
    let mut entries = Vec::with_capacity(m_max as usize + 1);
    let mut next_boundary = 1u64; // b^0
    let mut m = 0u32;
    let mut n = 0u64;
    for point in points {
        let point = point?;
        if gamma.contains(&point)? {
            running += &lam_den - &lam_num;
        } else {
            running -= &lam_num;
        }
        n += 1;
        let abs = running.abs();
        if abs > sup_num {
            sup_num = abs;
            n_at_sup = n;
        }
        while m <= m_max && n == next_boundary {
            entries.push(ProfileEntry {
                m,
                n_at_sup,
                sup_abs_delta: BigRational::new(sup_num.clone(), lam_den.clone()),
            });
            m += 1;
            match next_boundary.checked_mul(b) {
                Some(nb) => next_boundary = nb,
                None => break,
            }
        }
        if n == total {
            break;
        }
    }
    if n < total {
        return Err(Error::Usage(format!(
            "point stream ended after {n} of {total} points"
        )));
    }
    Ok(DeltaProfile {
        sequence_id: sequence_id.to_string(),
        gamma: gamma.clone(),
        entries,
    })
}

/// Exact star discrepancy by critical-corner enumeration: the sup of
/// `|Δ([0,y))/N|` is attained on the grid of point coordinates (and 1),
/// evaluating each corner both as a limit from above (closed counts) and
/// from below (open counts). Desk scale: `N <= 4096`, `s <= 3`.
pub fn star_discrepancy_exact(points: &[Vec<DigitString>]) -> Result<BigRational> {
    let n = points.len();
    if n == 0 || n > 4096 {
        return Err(Error::Usage(format!("need 1..=4096 points, got {n}")));
    }
    let s = points[0].len();
    if s == 0 || s > 3 {
        return Err(Error::Usage(format!("need 1..=3 coordinates, got {s}")));
    }
    if points.iter().any(|p| p.len() != s) {
        return Err(Error::Usage("points of mixed dimension".into()));
    }
    let coords: Vec<Vec<BigRational>> = points
        .iter()
        .map(|p| p.iter().map(|c| c.value()).collect())
        .collect();
    let one = BigRational::one();
    let grids: Vec<Vec<BigRational>> = (0..s)
        .map(|i| {
            let mut g: Vec<BigRational> = coords.iter().map(|p| p[i].clone()).collect();
            g.push(one.clone());
            g.sort();
            g.dedup();
            g
        })
        .collect();
    let n_rat = BigRational::from_integer(BigInt::from(n as u64));
    let mut best = BigRational::zero();
    let mut idx = vec![0usize; s];
    loop {
        let corner: Vec<&BigRational> = (0..s).map(|i| &grids[i][idx[i]]).collect();
        let mut closed = 0u64;
        let mut open = 0u64;
        for p in &coords {
            let mut all_le = true;
            let mut all_lt = true;
            for i in 0..s {
                if &p[i] > corner[i] {
                    all_le = false;
                    all_lt = false;
                    break;
                }
                if &p[i] == corner[i] {
                    all_lt = false;
                }
            }
            closed += all_le as u64;
            open += all_lt as u64;
        }
        let lambda: BigRational = corner.iter().copied().cloned().product();
        let from_above =
            BigRational::from_integer(BigInt::from(closed)) / &n_rat - lambda.clone();
        let from_below = lambda - BigRational::from_integer(BigInt::from(open)) / &n_rat;
        best = best.max(from_above).max(from_below);
        // Odometer over the grid product.
        let mut i = 0;
        while i < s {
            idx[i] += 1;
            if idx[i] < grids[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == s {
            break;
        }
    }
    Ok(best)
}
