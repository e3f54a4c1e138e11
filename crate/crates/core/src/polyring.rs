//! Polynomial arithmetic over `F_b` and truncated Laurent expansion of
//! proper rational functions `f/g` at the infinite place.
//!
//! The expansion convention follows the degree valuation: for
//! `deg f < deg g`,
//!
//! ```text
//! f(x)/g(x) = sum_{r >= 0} a(r) x^{-r-1}
//! ```
//!
//! and [`LaurentTail`] produces the coefficient stream `a(0), a(1), …` by
//! long division in descending powers. Tails are restartable: extending the
//! truncation length never changes already produced coefficients.
//!
//! Text grammar (round-trippable, see also the repository README): for
//! prime fields terms look like `2x^3+x+1` with coefficients in `[0, b)`;
//! for extension fields each coefficient is written as a digit vector over
//! `GF(p)`, most significant first, e.g. `[1,0]x^2+[1,1]`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::field::{FieldElement, FieldSpec};
use crate::{Error, Result};

/// Polynomial over `F_b`, ascending coefficients, normalized so the highest
/// stored coefficient is nonzero (the zero polynomial stores nothing and
/// has degree `None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    spec: FieldSpec,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(spec: &FieldSpec) -> Poly {
        Poly { spec: spec.clone(), coeffs: vec![] }
    }

    pub fn one(spec: &FieldSpec) -> Poly {
        Poly { spec: spec.clone(), coeffs: vec![1] }
    }

    pub fn x(spec: &FieldSpec) -> Poly {
        Poly { spec: spec.clone(), coeffs: vec![0, 1] }
    }

    /// Builds a polynomial from `phi`-indices, ascending powers.
    pub fn from_indices(spec: &FieldSpec, coeffs: &[u64]) -> Result<Poly> {
        for &c in coeffs {
            if c >= spec.order() {
                return Err(Error::DigitOutOfRange { digit: c, order: spec.order() });
            }
        }
        let mut coeffs = coeffs.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Poly { spec: spec.clone(), coeffs })
    }

    pub fn from_elements(spec: &FieldSpec, coeffs: &[FieldElement]) -> Poly {
        let mut v: Vec<u64> = coeffs
            .iter()
            .map(|c| {
                assert!(c.spec() == spec, "coefficient from different field");
                c.index()
            })
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly { spec: spec.clone(), coeffs: v }
    }

    pub fn monomial(spec: &FieldSpec, coeff: u64, degree: usize) -> Result<Poly> {
        let mut v = vec![0u64; degree + 1];
        v[degree] = coeff;
        Poly::from_indices(spec, &v)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `x^r` as a `phi`-index (0 beyond the degree).
    pub fn coeff_index(&self, r: usize) -> u64 {
        self.coeffs.get(r).copied().unwrap_or(0)
    }

    pub fn coeff(&self, r: usize) -> FieldElement {
        self.spec.phi(self.coeff_index(r)).unwrap()
    }

    /// Iterates `(power, coefficient-index)` over nonzero coefficients.
    pub fn coeff_iter(&self) -> impl Iterator<Item = (usize, &u64)> {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0)
    }

    pub fn leading_index(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Scales by the inverse of the leading coefficient (identity on zero).
    pub fn monic(&self) -> Poly {
        match self.leading_index() {
            None | Some(1) => self.clone(),
            Some(lead) => {
                let inv = self.spec.inv_index(lead).unwrap();
                self.scale_index(inv)
            }
        }
    }

    fn scale_index(&self, c: u64) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| self.spec.mul_index(a, c)).collect();
        let mut p = Poly { spec: self.spec.clone(), coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn assert_same_spec(&self, other: &Poly) {
        assert!(
            self.spec == other.spec,
            "polynomials over different fields: {} vs {}",
            self.spec,
            other.spec
        );
    }

    /// Euclidean division: `self = q·g + r` with `deg r < deg g`.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_spec(g);
        let gd = g.degree().ok_or(Error::ZeroPolyDivision)?;
        let lead_inv = self.spec.inv_index(g.coeffs[gd])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(gd)];
        while rem.len() > gd {
            let d = rem.len() - 1;
            let c = self.spec.mul_index(rem[d], lead_inv);
            if c != 0 {
                let shift = d - gd;
                quot[shift] = c;
                for (i, &gc) in g.coeffs.iter().enumerate() {
                    let prod = self.spec.mul_index(c, gc);
                    rem[i + shift] = self.spec.sub_index(rem[i + shift], prod);
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        let mut q = Poly { spec: self.spec.clone(), coeffs: quot };
        q.normalize();
        Ok((q, Poly { spec: self.spec.clone(), coeffs: rem }))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_same_spec(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_coprime(&self, other: &Poly) -> bool {
        self.gcd(other).degree() == Some(0)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.spec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        let x = at.index();
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.spec.add_index(self.spec.mul_index(acc, x), c);
        }
        self.spec.phi(acc).unwrap()
    }

    /// Exact irreducibility test. Fast path: degree 1 is irreducible and
    /// degrees 2 and 3 are irreducible iff they have no root in `F_b`;
    /// higher degrees fall back to trial division over all monic
    /// polynomials of degree up to `deg/2` (desk scale).
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantPolyIrreducibility),
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic();
        if d <= 3 {
            for e in self.spec.elements() {
                if f.eval(&e).is_zero() {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        for dd in 1..=d / 2 {
            let mut low = vec![0u64; dd];
            loop {
                let mut cand = low.clone();
                cand.push(1);
                let trial = Poly { spec: self.spec.clone(), coeffs: cand };
                let (_, rem) = f.divmod(&trial)?;
                if rem.is_zero() {
                    return Ok(false);
                }
                let mut pos = 0;
                while pos < dd {
                    low[pos] += 1;
                    if low[pos] < self.spec.order() {
                        break;
                    }
                    low[pos] = 0;
                    pos += 1;
                }
                if pos == dd {
                    break;
                }
            }
        }
        Ok(true)
    }

    /// Parses the documented text grammar in the given field.
    pub fn parse(spec: &FieldSpec, s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<u64> = vec![];
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in '{s}'")));
            }
            let (coeff, exp) = parse_term(spec, term)?;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] = spec.add_index(coeffs[exp], coeff);
        }
        Poly::from_indices(spec, &coeffs)
    }
}

fn parse_term(spec: &FieldSpec, term: &str) -> Result<(u64, usize)> {
    let err = || Error::Parse(format!("bad term '{term}'"));
    let (coeff_str, rest) = if let Some(end) = term.find(']') {
        if !term.starts_with('[') {
            return Err(err());
        }
        (&term[..=end], &term[end + 1..])
    } else {
        let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        (&term[..split], &term[split..])
    };
    let exp = if rest.is_empty() {
        0
    } else if rest == "x" {
        1
    } else if let Some(e) = rest.strip_prefix("x^") {
        e.parse::<usize>().map_err(|_| err())?
    } else {
        return Err(err());
    };
    let coeff = if coeff_str.is_empty() {
        if rest.is_empty() {
            return Err(err());
        }
        1
    } else if let Some(inner) = coeff_str.strip_prefix('[') {
        // Digit vector over GF(p), most significant first.
        let inner = inner.strip_suffix(']').ok_or_else(err)?;
        let p = spec.characteristic();
        let mut idx = 0u64;
        for part in inner.split(',') {
            let d: u64 = part.trim().parse().map_err(|_| err())?;
            if d >= p {
                return Err(Error::InvalidDigit { digit: d, base: p });
            }
            idx = idx * p + d;
        }
        idx
    } else {
        coeff_str.parse::<u64>().map_err(|_| err())?
    };
    if coeff >= spec.order() {
        return Err(Error::DigitOutOfRange { digit: coeff, order: spec.order() });
    }
    Ok((coeff, exp))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ext = self.spec.degree() > 1;
        let p = self.spec.characteristic();
        let k = self.spec.degree() as usize;
        let mut first = true;
        for r in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[r];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if ext {
                let mut digits = vec![0u64; k];
                let mut v = c;
                for d in digits.iter_mut() {
                    *d = v % p;
                    v /= p;
                }
                let parts: Vec<String> = digits.iter().rev().map(|d| d.to_string()).collect();
                write!(f, "[{}]", parts.join(","))?;
                match r {
                    0 => {}
                    1 => write!(f, "x")?,
                    _ => write!(f, "x^{r}")?,
                }
            } else {
                match (r, c) {
                    (0, c) => write!(f, "{c}")?,
                    (1, 1) => write!(f, "x")?,
                    (1, c) => write!(f, "{c}x")?,
                    (r, 1) => write!(f, "x^{r}")?,
                    (r, c) => write!(f, "{c}x^{r}")?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_spec(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![0u64; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self
                .spec
                .add_index(self.coeff_index(i), rhs.coeff_index(i));
        }
        let mut p = Poly { spec: self.spec.clone(), coeffs };
        p.normalize();
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_spec(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![0u64; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self
                .spec
                .sub_index(self.coeff_index(i), rhs.coeff_index(i));
        }
        let mut p = Poly { spec: self.spec.clone(), coeffs };
        p.normalize();
        p
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_spec(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.spec);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let prod = self.spec.mul_index(a, b);
                coeffs[i + j] = self.spec.add_index(coeffs[i + j], prod);
            }
        }
        let mut p = Poly { spec: self.spec.clone(), coeffs };
        p.normalize();
        p
    }
}

/// Truncated expansion `f/g = sum_{r >= 0} a(r) x^{-r-1}` with
/// `deg f < deg g`. The tail remembers its fraction, so it can be extended
/// in place; already produced coefficients never change.
#[derive(Clone, Debug)]
pub struct LaurentTail {
    f: Poly,
    g: Poly,
    lead_inv: u64,
    rem: Vec<u64>,
    coeffs: Vec<u64>,
}

impl LaurentTail {
    pub fn new(f: &Poly, g: &Poly) -> Result<LaurentTail> {
        let gd = g.degree().ok_or(Error::ZeroPolyDivision)?;
        if let Some(fd) = f.degree() {
            if fd >= gd {
                return Err(Error::NumeratorDegree { num_deg: fd, den_deg: gd });
            }
        }
        let lead_inv = g.spec().inv_index(g.coeffs[gd])?;
        Ok(LaurentTail {
            f: f.clone(),
            g: g.clone(),
            lead_inv,
            rem: f.coeffs.clone(),
            coeffs: vec![],
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        self.f.spec()
    }

    /// The valuation at which the stored stream starts (always 0 here: the
    /// precondition `deg f < deg g` pins the first coefficient index).
    pub fn start(&self) -> i64 {
        0
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn numerator(&self) -> &Poly {
        &self.f
    }

    pub fn denominator(&self) -> &Poly {
        &self.g
    }

    /// Produced coefficients `a(0), …, a(len-1)` as `phi`-indices.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Extends the stream to at least `len` coefficients.
    pub fn extend_to(&mut self, len: usize) {
        let spec = self.f.spec().clone();
        let gd = self.g.degree().unwrap();
        while self.coeffs.len() < len {
            // Multiply the remainder by x, then take out the constant part
            // of rem·x / g: one long-division step per coefficient.
            self.rem.insert(0, 0);
            let c = if self.rem.len() == gd + 1 {
                let c = spec.mul_index(*self.rem.last().unwrap(), self.lead_inv);
                if c != 0 {
                    for (i, &gc) in self.g.coeffs.iter().enumerate() {
                        let prod = spec.mul_index(c, gc);
                        self.rem[i] = spec.sub_index(self.rem[i], prod);
                    }
                }
                self.rem.pop();
                while self.rem.last() == Some(&0) {
                    self.rem.pop();
                }
                c
            } else {
                0
            };
            self.coeffs.push(c);
        }
    }

    /// Coefficient `a(r)`, extending on demand.
    pub fn coeff_index(&mut self, r: usize) -> u64 {
        self.extend_to(r + 1);
        self.coeffs[r]
    }

    pub fn prefix(&mut self, len: usize) -> &[u64] {
        self.extend_to(len);
        &self.coeffs[..len]
    }
}

/// Expands `f/g` to `len` coefficients (see [`LaurentTail`]).
pub fn laurent_expand(f: &Poly, g: &Poly, len: usize) -> Result<LaurentTail> {
    let mut tail = LaurentTail::new(f, g)?;
    tail.extend_to(len);
    Ok(tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn gf(b: u64) -> FieldSpec {
        FieldSpec::gf(b).unwrap()
    }

    fn poly(spec: &FieldSpec, s: &str) -> Poly {
        Poly::parse(spec, s).unwrap()
    }

    /// Oracle: the maximal-degree monic common divisor found by exhaustive
    /// enumeration, independent of the Euclidean path.
    fn gcd_by_enumeration(a: &Poly, b: &Poly) -> Poly {
        let spec = a.spec().clone();
        let max_d = a.degree().unwrap().min(b.degree().unwrap());
        let mut best = Poly::one(&spec);
        for d in (1..=max_d).rev() {
            let mut low = vec![0u64; d];
            'outer: loop {
                let mut cand = low.clone();
                cand.push(1);
                let trial = Poly::from_indices(&spec, &cand).unwrap();
                let (_, r1) = a.divmod(&trial).unwrap();
                let (_, r2) = b.divmod(&trial).unwrap();
                if r1.is_zero() && r2.is_zero() {
                    best = trial;
                    break 'outer;
                }
                let mut pos = 0;
                while pos < d {
                    low[pos] += 1;
                    if low[pos] < spec.order() {
                        break;
                    }
                    low[pos] = 0;
                    pos += 1;
                }
                if pos == d {
                    break;
                }
            }
            if best.degree() == Some(d) {
                break;
            }
        }
        best
    }

    #[test]
    fn gcd_coprime_pair_gf2() {
        let f = gf(2);
        let a = poly(&f, "x+1");
        let b = poly(&f, "x^2+x+1");
        assert_eq!(a.gcd(&b), Poly::one(&f));
        assert_eq!(gcd_by_enumeration(&a, &b), Poly::one(&f));
    }

    #[test]
    fn divmod_by_unit() {
        let f = gf(3);
        let a = poly(&f, "2x^3+x+1");
        let (q, r) = a.divmod(&Poly::one(&f)).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn characteristic_two_square() {
        let f = gf(2);
        let a = poly(&f, "x+1");
        assert_eq!(&a * &a, poly(&f, "x^2+1"));
    }

    #[test]
    fn division_by_zero_poly() {
        let f = gf(2);
        let a = poly(&f, "x+1");
        assert_eq!(a.divmod(&Poly::zero(&f)).unwrap_err(), Error::ZeroPolyDivision);
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = gf(2);
        assert!(poly(&f2, "x^2+x+1").is_irreducible().unwrap());
        assert!(!poly(&f2, "x^2+1").is_irreducible().unwrap()); // (x+1)^2
        let f3 = gf(3);
        assert!(poly(&f3, "x^2+1").is_irreducible().unwrap());
        assert_eq!(
            Poly::one(&f2).is_irreducible().unwrap_err(),
            Error::ConstantPolyIrreducibility
        );
    }

    /// Cross-check the fast path against plain trial division on every
    /// polynomial of degree up to 4 over GF(2) and GF(3).
    #[test]
    fn irreducibility_exhaustive_cross_check() {
        for b in [2u64, 3] {
            let spec = gf(b);
            for d in 1..=4usize {
                let mut coeffs = vec![0u64; d + 1];
                coeffs[d] = 1;
                loop {
                    let f = Poly::from_indices(&spec, &coeffs).unwrap();
                    let mut divisible = false;
                    for dd in 1..=d / 2 {
                        let mut low = vec![0u64; dd];
                        loop {
                            let mut cand = low.clone();
                            cand.push(1);
                            let t = Poly::from_indices(&spec, &cand).unwrap();
                            if f.divmod(&t).unwrap().1.is_zero() {
                                divisible = true;
                            }
                            let mut pos = 0;
                            while pos < dd {
                                low[pos] += 1;
                                if low[pos] < b {
                                    break;
                                }
                                low[pos] = 0;
                                pos += 1;
                            }
                            if pos == dd {
                                break;
                            }
                        }
                    }
                    assert_eq!(f.is_irreducible().unwrap(), !divisible, "{f}");
                    let mut pos = 0;
                    while pos < d {
                        coeffs[pos] += 1;
                        if coeffs[pos] < b {
                            break;
                        }
                        coeffs[pos] = 0;
                        pos += 1;
                    }
                    if pos == d {
                        break;
                    }
                }
            }
        }
    }

    /// Multiply-back oracle: with T = sum_{r<L} a(r) x^{-r-1}, the Laurent
    /// polynomial g·T − f must have zero coefficients at every power
    /// x^j with j >= deg(g) − L.
    fn assert_multiply_back(f: &Poly, g: &Poly, tail: &LaurentTail) {
        let spec = f.spec().clone();
        let len = tail.len();
        let mut terms: BTreeMap<i64, u64> = BTreeMap::new();
        for (r, &a) in tail.coeffs().iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &gc) in g.coeff_iter() {
                let pow = j as i64 - (r as i64 + 1);
                let prod = spec.mul_index(a, gc);
                let e = terms.entry(pow).or_insert(0);
                *e = spec.add_index(*e, prod);
            }
        }
        for (j, &fc) in f.coeff_iter() {
            let e = terms.entry(j as i64).or_insert(0);
            *e = spec.sub_index(*e, fc);
        }
        let cutoff = g.degree().unwrap() as i64 - len as i64;
        for (&pow, &c) in &terms {
            if pow >= cutoff {
                assert_eq!(c, 0, "residual coefficient at x^{pow}");
            }
        }
    }

    #[test]
    fn laurent_ones_over_x_plus_one() {
        let f2 = gf(2);
        let one = Poly::one(&f2);
        let g = poly(&f2, "x+1");
        let tail = laurent_expand(&one, &g, 5).unwrap();
        assert_eq!(tail.coeffs(), &[1, 1, 1, 1, 1]);
        assert_multiply_back(&one, &g, &tail);
    }

    #[test]
    fn laurent_zero_numerator_and_pure_monomial() {
        let f2 = gf(2);
        let g = poly(&f2, "x+1");
        let tail = laurent_expand(&Poly::zero(&f2), &g, 4).unwrap();
        assert_eq!(tail.coeffs(), &[0, 0, 0, 0]);
        let tail = laurent_expand(&Poly::one(&f2), &Poly::x(&f2), 3).unwrap();
        assert_eq!(tail.coeffs(), &[1, 0, 0]);
    }

    #[test]
    fn laurent_rejects_improper_fraction() {
        let f2 = gf(2);
        let f = poly(&f2, "x^2+1");
        let g = poly(&f2, "x+1");
        assert!(matches!(
            laurent_expand(&f, &g, 3),
            Err(Error::NumeratorDegree { .. })
        ));
    }

    #[test]
    fn laurent_prefix_stable_extension() {
        let f3 = gf(3);
        let f = poly(&f3, "x+2");
        let g = poly(&f3, "x^2+1");
        let short = laurent_expand(&f, &g, 6).unwrap();
        let mut long = laurent_expand(&f, &g, 6).unwrap();
        long.extend_to(14);
        assert_eq!(&long.coeffs()[..6], short.coeffs());
    }

    proptest! {
        #[test]
        fn multiply_back_random(b in prop::sample::select(vec![2u64, 3]), seed_f in prop::collection::vec(0u64..64, 1..6), seed_g in prop::collection::vec(0u64..64, 2..7)) {
            let spec = gf(b);
            let g = Poly::from_indices(&spec, &seed_g.iter().map(|c| c % b).collect::<Vec<_>>()).unwrap();
            prop_assume!(g.degree().map_or(false, |d| d >= 1));
            let f_raw: Vec<u64> = seed_f.iter().map(|c| c % b).collect();
            let f = Poly::from_indices(&spec, &f_raw[..f_raw.len().min(g.degree().unwrap())]).unwrap();
            let tail = laurent_expand(&f, &g, 12).unwrap();
            assert_multiply_back(&f, &g, &tail);
        }

        #[test]
        fn gcd_divides_both(b in prop::sample::select(vec![2u64, 3]), ca in prop::collection::vec(0u64..3, 1..6), cb in prop::collection::vec(0u64..3, 1..6)) {
            let spec = gf(b);
            let a = Poly::from_indices(&spec, &ca.iter().map(|c| c % b).collect::<Vec<_>>()).unwrap();
            let c = Poly::from_indices(&spec, &cb.iter().map(|c| c % b).collect::<Vec<_>>()).unwrap();
            prop_assume!(!a.is_zero() && !c.is_zero());
            let g = a.gcd(&c);
            prop_assert!(a.divmod(&g).unwrap().1.is_zero());
            prop_assert!(c.divmod(&g).unwrap().1.is_zero());
            prop_assert!(g.is_monic());
        }

        #[test]
        fn divmod_contract(b in prop::sample::select(vec![2u64, 3, 4]), ca in prop::collection::vec(0u64..4, 1..8), cb in prop::collection::vec(0u64..4, 1..5)) {
            let spec = gf(b);
            let a = Poly::from_indices(&spec, &ca.iter().map(|c| c % b).collect::<Vec<_>>()).unwrap();
            let g = Poly::from_indices(&spec, &cb.iter().map(|c| c % b).collect::<Vec<_>>()).unwrap();
            prop_assume!(!g.is_zero());
            let (q, r) = a.divmod(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, a);
            if let Some(rd) = r.degree() {
                prop_assert!(rd < g.degree().unwrap());
            }
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        let f3 = gf(3);
        for s in ["x^2+2x+1", "2x^4+x", "1", "0", "x"] {
            let p = poly(&f3, s);
            assert_eq!(Poly::parse(&f3, &p.to_string()).unwrap(), p);
        }
        let f4 = gf(4);
        let p = Poly::from_indices(&f4, &[3, 0, 2]).unwrap();
        let shown = p.to_string();
        assert_eq!(shown, "[1,0]x^2+[1,1]");
        assert_eq!(Poly::parse(&f4, &shown).unwrap(), p);
        assert!(Poly::parse(&f3, "x^2+5").is_err());
        assert!(Poly::parse(&f3, "y+1").is_err());
    }
}
