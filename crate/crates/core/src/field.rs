//! Exact arithmetic in the finite field `F_b` for prime-power `b`, plus the
//! digit bijection `phi` between `{0,…,b−1}` and `F_b`.
//!
//! Elements are stored by their `phi`-index: the integer in `[0, b)` whose
//! base-`p` digits are the element's coefficients over `GF(p)` in the
//! polynomial basis (least significant digit = constant term). With that
//! convention `phi` is the identity on the packed representation, `phi(0)`
//! is the additive identity, and for prime fields `phi` is the canonical
//! order-preserving map.
//!
//! Extension fields reduce modulo a monic irreducible polynomial. Orders
//! `p^k ≤ 64` come with a built-in modulus table (Conway-style, see
//! [`FieldSpec::gf`]); any other monic irreducible modulus can be supplied
//! explicitly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::{Error, Result};

/// Built-in irreducible moduli for prime-power orders up to 64, coefficient
/// vectors in ascending powers over `GF(p)`.
const BUILTIN_MODULI: &[(u64, &[u64])] = &[
    (4, &[1, 1, 1]),          // x^2 + x + 1 over GF(2)
    (8, &[1, 1, 0, 1]),       // x^3 + x + 1
    (16, &[1, 1, 0, 0, 1]),   // x^4 + x + 1
    (32, &[1, 0, 1, 0, 0, 1]), // x^5 + x^2 + 1
    (64, &[1, 1, 0, 1, 1, 0, 1]), // x^6 + x^4 + x^3 + x + 1
    (9, &[2, 2, 1]),          // x^2 + 2x + 2 over GF(3)
    (27, &[1, 2, 0, 1]),      // x^3 + 2x + 1
    (25, &[2, 4, 1]),         // x^2 + 4x + 2 over GF(5)
    (49, &[3, 6, 1]),         // x^2 + 6x + 3 over GF(7)
];

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug)]
struct SpecInner {
    p: u64,
    k: u32,
    b: u64,
    /// Monic modulus of degree `k`, ascending coefficients; `None` iff `k == 1`.
    modulus: Option<Vec<u64>>,
}

/// Description of a finite field `GF(p^k)`: characteristic, extension
/// degree, and (for `k > 1`) the reduction modulus. Cheap to clone and
/// immutable after construction.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    inner: Arc<SpecInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// The prime field `GF(p)`. The characteristic is capped at `2^32` so
    /// products of indices never overflow `u64`.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p >= 1 << 32 {
            return Err(Error::InvalidModulus(format!(
                "characteristic {p} exceeds the supported bound 2^32"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec {
            inner: Arc::new(SpecInner { p, k: 1, b: p, modulus: None }),
        })
    }

    /// The extension field `GF(p^k)` with an explicit monic irreducible
    /// modulus of degree `k` (ascending coefficients over `GF(p)`).
    pub fn extension(p: u64, k: u32, modulus: &[u64]) -> Result<FieldSpec> {
        if p >= 1 << 32 {
            return Err(Error::InvalidModulus(format!(
                "characteristic {p} exceeds the supported bound 2^32"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 2 {
            return Err(Error::InvalidModulus(
                "extension degree must be at least 2".into(),
            ));
        }
        if modulus.len() != k as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "modulus must have degree {k}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(
                "modulus coefficients must lie in [0, p)".into(),
            ));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !zp::is_irreducible(modulus, p) {
            return Err(Error::InvalidModulus(format!(
                "modulus reducible over GF({p})"
            )));
        }
        let b = p
            .checked_pow(k)
            .ok_or_else(|| Error::InvalidModulus("order overflows u64".into()))?;
        Ok(FieldSpec {
            inner: Arc::new(SpecInner { p, k, b, modulus: Some(modulus.to_vec()) }),
        })
    }

    /// The field of order `b`, using the built-in modulus table for
    /// prime-power non-prime orders (available for `b ≤ 64`).
    pub fn gf(b: u64) -> Result<FieldSpec> {
        if is_prime(b) {
            return FieldSpec::prime(b);
        }
        // Find p, k with b = p^k.
        let mut p = 2;
        while p * p <= b {
            if b % p == 0 {
                let mut k = 0u32;
                let mut rest = b;
                while rest % p == 0 {
                    rest /= p;
                    k += 1;
                }
                if rest != 1 {
                    return Err(Error::NotPrimePower(b));
                }
                let modulus = BUILTIN_MODULI
                    .iter()
                    .find(|(order, _)| *order == b)
                    .map(|(_, m)| *m)
                    .ok_or(Error::NoBuiltinModulus(b))?;
                return FieldSpec::extension(p, k, modulus);
            }
            p += 1;
        }
        Err(Error::NotPrimePower(b))
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    /// The order `b = p^k`.
    pub fn order(&self) -> u64 {
        self.inner.b
    }

    /// Reduction modulus (ascending coefficients), present iff `k > 1`.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.inner.modulus.as_deref()
    }

    /// The digit bijection: maps `d ∈ [0, b)` to the element whose
    /// coefficient vector is the base-`p` expansion of `d`.
    pub fn phi(&self, d: u64) -> Result<FieldElement> {
        if d >= self.inner.b {
            return Err(Error::DigitOutOfRange { digit: d, order: self.inner.b });
        }
        Ok(FieldElement { spec: self.clone(), repr: d })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: self.clone(), repr: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { spec: self.clone(), repr: 1 }
    }

    /// All `b` elements in `phi`-index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.b).map(move |d| FieldElement { spec: self.clone(), repr: d })
    }

    fn unpack(&self, repr: u64) -> Vec<u64> {
        let (p, k) = (self.inner.p, self.inner.k as usize);
        let mut out = vec![0; k];
        let mut r = repr;
        for c in out.iter_mut() {
            *c = r % p;
            r /= p;
        }
        out
    }

    fn pack(&self, coeffs: &[u64]) -> u64 {
        let p = self.inner.p;
        coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    // Arithmetic directly on phi-indices. These back the FieldElement
    // operators and the hot loops in polyring/digital, and let callers work
    // with raw digit grids (generating matrices, dual bases) without
    // wrapping every entry in a FieldElement.

    /// `phi^{-1}(phi(a) + phi(b))`.
    #[inline]
    pub fn add_index(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return (a + b) % p;
        }
        // Digit-wise mod-p addition, no carries.
        let (mut out, mut mul, mut x, mut y) = (0u64, 1u64, a, b);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * mul;
            x /= p;
            y /= p;
            mul *= p;
        }
        out
    }

    #[inline]
    pub fn neg_index(&self, a: u64) -> u64 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return (p - a % p) % p;
        }
        let (mut out, mut mul, mut x) = (0u64, 1u64, a);
        while x > 0 {
            out += ((p - x % p) % p) * mul;
            x /= p;
            mul *= p;
        }
        out
    }

    #[inline]
    pub fn sub_index(&self, a: u64, b: u64) -> u64 {
        self.add_index(a, self.neg_index(b))
    }

    #[inline]
    pub fn mul_index(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return (a * b) % p;
        }
        let va = self.unpack(a);
        let vb = self.unpack(b);
        let mut prod = zp::mul(&va, &vb, p);
        zp::rem_in_place(&mut prod, self.inner.modulus.as_ref().unwrap(), p);
        self.pack(&prod)
    }

    pub fn inv_index(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Ok(zp::inv_scalar(a, p));
        }
        let va = self.unpack(a);
        let inv = zp::inv_mod(&va, self.inner.modulus.as_ref().unwrap(), p);
        Ok(self.pack(&inv))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "GF({})", self.inner.b)
        } else {
            write!(
                f,
                "GF({})=GF({})[x]/({})",
                self.inner.b,
                self.inner.p,
                zp::format_poly(self.inner.modulus.as_ref().unwrap())
            )
        }
    }
}

/// An element of `F_b`, carrying its field spec. Immutable; the arithmetic
/// operators panic on mismatched specs (a usage error), while [`inv`]
/// reports `Error::ZeroInverse` for the zero element.
///
/// [`inv`]: FieldElement::inv
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    repr: u64,
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// The inverse bijection `phi^{-1}`: the element's index in `[0, b)`.
    pub fn index(&self) -> u64 {
        self.repr
    }

    /// Coefficient vector over `GF(p)`, constant term first, length `k`.
    pub fn coeffs(&self) -> Vec<u64> {
        self.spec.unpack(self.repr)
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            spec: self.spec.clone(),
            repr: self.spec.inv_index(self.repr)?,
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.repr;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.spec.mul_index(acc, base);
            }
            base = self.spec.mul_index(base, base);
            e >>= 1;
        }
        FieldElement { spec: self.spec.clone(), repr: acc }
    }

    fn assert_same_spec(&self, other: &FieldElement) {
        assert!(
            self.spec == other.spec,
            "field elements from different specs: {} vs {}",
            self.spec,
            other.spec
        );
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $repr_op:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.assert_same_spec(rhs);
                FieldElement {
                    spec: self.spec.clone(),
                    repr: self.spec.$repr_op(self.repr, rhs.repr),
                }
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add_index);
binop!(Sub, sub, sub_index);
binop!(Mul, mul, mul_index);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            spec: self.spec.clone(),
            repr: self.spec.neg_index(self.repr),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Raw polynomial arithmetic over `Z_p` on plain coefficient vectors
/// (ascending powers). This backs extension-field arithmetic and modulus
/// validation; the public polynomial type over `F_b` lives in `polyring`.
mod zp {
    pub fn inv_scalar(a: u64, p: u64) -> u64 {
        // Extended Euclid on integers; p prime, a != 0 mod p.
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        (((t % p as i128) + p as i128) % p as i128) as u64
    }

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn deg(v: &[u64]) -> Option<usize> {
        v.iter().rposition(|&c| c != 0)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ca * cb) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `v` modulo the monic polynomial `m`, in place.
    pub fn rem_in_place(v: &mut Vec<u64>, m: &[u64], p: u64) {
        let md = deg(m).expect("monic modulus");
        while let Some(d) = deg(v) {
            if d < md {
                break;
            }
            let lead = v[d];
            let shift = d - md;
            for (i, &mc) in m.iter().enumerate() {
                let idx = i + shift;
                v[idx] = (v[idx] + (p - (lead * mc) % p)) % p;
            }
        }
        trim(v);
    }

    /// Inverse of `a` modulo the monic irreducible `m` via extended Euclid.
    pub fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
        trim(&mut r1);
        while !r1.is_empty() {
            let (q, rem) = divmod(&r0, &r1, p);
            let qt = mul(&q, &t1, p);
            let new_t = sub(&t0, &qt, p);
            (r0, r1) = (r1, rem);
            (t0, t1) = (t1, new_t);
        }
        // r0 is the gcd, a nonzero constant; scale t0 by its inverse.
        let c = inv_scalar(r0[0], p);
        let mut out: Vec<u64> = t0.iter().map(|&x| (x * c) % p).collect();
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let ca = a.get(i).copied().unwrap_or(0);
            let cb = b.get(i).copied().unwrap_or(0);
            *o = (ca + p - cb) % p;
        }
        trim(&mut out);
        out
    }

    pub fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let bd = deg(b).expect("nonzero divisor");
        let lead_inv = inv_scalar(b[bd], p);
        let mut rem = a.to_vec();
        trim(&mut rem);
        let mut quot = vec![0u64; rem.len().saturating_sub(bd)];
        while let Some(d) = deg(&rem) {
            if d < bd {
                break;
            }
            let c = (rem[d] * lead_inv) % p;
            let shift = d - bd;
            quot[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                let idx = i + shift;
                rem[idx] = (rem[idx] + p - (c * bc) % p) % p;
            }
        }
        trim(&mut quot);
        trim(&mut rem);
        (quot, rem)
    }

    /// Exhaustive trial division over all monic polynomials of degree up to
    /// `deg(f)/2`; adequate for the degrees that occur as field moduli.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = match deg(f) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        for dd in 1..=d / 2 {
            // Odometer over the dd low coefficients of a monic degree-dd poly.
            let mut coeffs = vec![0u64; dd + 1];
            coeffs[dd] = 1;
            loop {
                let (_, rem) = divmod(f, &coeffs, p);
                if rem.is_empty() {
                    return false;
                }
                let mut pos = 0;
                loop {
                    if pos == dd {
                        break;
                    }
                    coeffs[pos] += 1;
                    if coeffs[pos] < p {
                        break;
                    }
                    coeffs[pos] = 0;
                    pos += 1;
                }
                if pos == dd {
                    break;
                }
            }
        }
        true
    }

    pub fn format_poly(coeffs: &[u64]) -> String {
        let mut terms = Vec::new();
        for (e, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (e, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (e, 1) => format!("x^{e}"),
                (e, c) => format!("{c}x^{e}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_characteristic_two_identity() {
        let f = FieldSpec::gf(2).unwrap();
        assert_eq!((f.one() + f.one()).index(), 0);
    }

    #[test]
    fn gf3_inverse_of_two() {
        let f = FieldSpec::gf(3).unwrap();
        assert_eq!(f.phi(2).unwrap().inv().unwrap().index(), 2);
    }

    /// Oracle: multiply coefficient vectors over GF(2) and reduce by the
    /// modulus by hand, independent of the packed-representation path.
    fn mul_and_reduce_oracle(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ca) in a.iter().enumerate() {
            for (j, &cb) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca * cb) % p;
            }
        }
        // Reduce highest powers using x^k = -(lower part of modulus).
        let k = modulus.len() - 1;
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mc) in modulus[..k].iter().enumerate() {
                prod[d - k + i] = (prod[d - k + i] + c * (p - mc) % p) % p;
            }
        }
        prod.truncate(k);
        prod
    }

    #[test]
    fn gf4_x_times_x() {
        let f = FieldSpec::gf(4).unwrap();
        let x = f.phi(2).unwrap(); // coeffs [0, 1]
        let expected = mul_and_reduce_oracle(&[0, 1], &[0, 1], &[1, 1, 1], 2);
        assert_eq!(expected, vec![1, 1]); // x + 1
        let prod = &x * &x;
        assert_eq!(prod.coeffs(), expected);
        assert_eq!(prod.index(), 3);
    }

    #[test]
    fn phi_zero_is_additive_identity() {
        for b in [2u64, 3, 4, 5, 8, 9] {
            let f = FieldSpec::gf(b).unwrap();
            let z = f.phi(0).unwrap();
            assert!(z.is_zero());
            for e in f.elements() {
                assert_eq!(&e + &z, e);
            }
        }
    }

    #[test]
    fn phi_roundtrip_and_bijectivity() {
        let f = FieldSpec::gf(3).unwrap();
        assert_eq!(f.phi(2).unwrap().index(), 2);
        for b in [2u64, 3, 4, 5, 8, 9] {
            let f = FieldSpec::gf(b).unwrap();
            let mut seen: Vec<u64> = (0..b).map(|d| f.phi(d).unwrap().index()).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len() as u64, b);
        }
        assert!(matches!(
            FieldSpec::gf(4).unwrap().phi(4),
            Err(Error::DigitOutOfRange { .. })
        ));
    }

    #[test]
    fn field_axioms_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for b in [2u64, 3, 4, 5, 8, 9] {
            let f = FieldSpec::gf(b).unwrap();
            for _ in 0..200 {
                let a = f.phi(rng.gen_range(0..b)).unwrap();
                let c = f.phi(rng.gen_range(0..b)).unwrap();
                let d = f.phi(rng.gen_range(0..b)).unwrap();
                assert_eq!(&(&a + &c) + &d, &a + &(&c + &d));
                assert_eq!(&(&a * &c) * &d, &a * &(&c * &d));
                assert_eq!(&a + &c, &c + &a);
                assert_eq!(&a * &c, &c * &a);
                assert_eq!(&a * &(&c + &d), &(&a * &c) + &(&a * &d));
                assert_eq!(&(&a - &c) + &c, a);
            }
        }
    }

    #[test]
    fn inverses_exhaustive_small_orders() {
        for b in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::gf(b).unwrap();
            for e in f.elements().skip(1) {
                assert_eq!(&e * &e.inv().unwrap(), f.one(), "order {b}");
            }
            assert_eq!(f.zero().inv(), Err(Error::ZeroInverse));
        }
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for &(b, _) in BUILTIN_MODULI {
            assert!(FieldSpec::gf(b).is_ok(), "GF({b})");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(FieldSpec::prime(6), Err(Error::NotPrime(6))));
        assert!(matches!(FieldSpec::gf(12), Err(Error::NotPrimePower(12))));
        // Characteristic bound keeps index products inside u64.
        assert!(FieldSpec::prime((1 << 32) + 15).is_err());
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(
            FieldSpec::extension(2, 2, &[1, 0, 1]),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    #[should_panic(expected = "different specs")]
    fn mismatched_specs_panic() {
        let a = FieldSpec::gf(2).unwrap().one();
        let b = FieldSpec::gf(3).unwrap().one();
        let _ = &a + &b;
    }

    #[test]
    fn display_forms() {
        assert_eq!(FieldSpec::gf(5).unwrap().to_string(), "GF(5)");
        assert_eq!(
            FieldSpec::gf(4).unwrap().to_string(),
            "GF(4)=GF(2)[x]/(x^2+x+1)"
        );
        assert_eq!(
            FieldSpec::gf(9).unwrap().to_string(),
            "GF(9)=GF(3)[x]/(x^2+2x+2)"
        );
    }
}
