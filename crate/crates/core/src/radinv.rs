//! Radical-inverse constructions: van der Corput, Cantor-base Halton
//! (Hellekalek), the polynomial Halton analogue (Tezuka), and Halton-type
//! sequences built from per-coordinate lists of monic irreducible
//! polynomials.
//!
//! The polynomial constructions share one mechanism. The index `n` becomes
//! the polynomial `v_n(x) = sum_r phi(a_r(n)) x^r` from its base-`b`
//! digits. Iterated division by the coordinate's place list
//! `P_{i,1}, P_{i,2}, …` produces remainder blocks
//!
//! ```text
//! v_n = R_1 + R_2·P_{i,1} + R_3·P_{i,1}P_{i,2} + …,   deg R_j < deg P_{i,j},
//! ```
//!
//! and block `j` contributes `deg P_{i,j}` base-`b` digits: the
//! coefficients of `R_j` on `1, x, …, x^{e-1}`, most significant first.
//! This fixed residue-to-digit encoding is the bijection between residues
//! and digit blocks used by all equidistribution checks. Tezuka's sequence
//! is the constant-list case with no irreducibility constraint on the
//! moduli; points generated here always carry exact digit strings (a
//! nonzero digit past the requested precision is reported as an error, not
//! silently dropped).

use num_integer::Integer;

use crate::digits::DigitString;
use crate::field::FieldSpec;
use crate::polyring::Poly;
use crate::{Error, Result};

/// Number of base-`q` digits of `n` (zero for `n = 0`).
fn digit_len(mut n: u64, q: u64) -> usize {
    let mut len = 0;
    while n > 0 {
        n /= q;
        len += 1;
    }
    len
}

/// Base-`q` digits of `n`, least significant first.
pub(crate) fn int_digits(mut n: u64, q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % q);
        n /= q;
    }
    out
}

/// Van der Corput radical inverse: mirrors the base-`q` expansion of `n`
/// across the radix point, producing a fixed base-`q` digit string of the
/// requested precision.
pub fn vdc(n: u64, q: u64, precision: usize) -> Result<DigitString> {
    if q < 2 {
        return Err(Error::InvalidBase(q));
    }
    let needed = digit_len(n, q);
    if needed > precision {
        return Err(Error::PrecisionTooSmall { needed, have: precision });
    }
    let mut digits = int_digits(n, q);
    digits.resize(precision, 0);
    DigitString::fixed(q, digits)
}

/// A Cantor base `Q = (q_1, q_2, …)`: either a finite list or a finite
/// list repeated cyclically, every entry at least 2. Materialization to any
/// depth is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorBase {
    entries: Vec<u64>,
    cyclic: bool,
}

impl CantorBase {
    /// The constant base `(q, q, …)`.
    pub fn constant(q: u64) -> Result<CantorBase> {
        CantorBase::cycle(vec![q])
    }

    /// Repeats `entries` cyclically: `q_j = entries[(j-1) mod len]`.
    pub fn cycle(entries: Vec<u64>) -> Result<CantorBase> {
        Self::validated(entries, true)
    }

    /// Exactly the given bases; indices beyond the list are an error.
    pub fn finite(entries: Vec<u64>) -> Result<CantorBase> {
        Self::validated(entries, false)
    }

    fn validated(entries: Vec<u64>, cyclic: bool) -> Result<CantorBase> {
        if entries.is_empty() {
            return Err(Error::Usage("empty base list".into()));
        }
        if let Some(&q) = entries.iter().find(|&&q| q < 2) {
            return Err(Error::InvalidBase(q));
        }
        Ok(CantorBase { entries, cyclic })
    }

    /// The distinct radices that can occur anywhere in the sequence.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// `q_j` for 1-based `j`.
    pub fn base_at(&self, j: usize) -> Result<u64> {
        if self.cyclic {
            Ok(self.entries[(j - 1) % self.entries.len()])
        } else {
            self.entries
                .get(j - 1)
                .copied()
                .ok_or(Error::BaseDepthExceeded { index: j as u64, depth: self.entries.len() })
        }
    }

    /// `q_1, …, q_depth`.
    pub fn prefix(&self, depth: usize) -> Result<Vec<u64>> {
        (1..=depth).map(|j| self.base_at(j)).collect()
    }

    /// `Some(q)` when the sequence is the constant base `(q, q, …)`.
    pub fn constant_base(&self) -> Option<u64> {
        let q = self.entries[0];
        (self.cyclic && self.entries.iter().all(|&e| e == q)).then_some(q)
    }

    /// Cumulative product `Q_j = q_1 ⋯ q_j` (checked; desk-scale depths).
    pub fn cumulative_product(&self, j: usize) -> Result<u64> {
        let mut acc: u64 = 1;
        for t in 1..=j {
            acc = acc
                .checked_mul(self.base_at(t)?)
                .ok_or_else(|| Error::Usage(format!("Q_{j} overflows u64")))?;
        }
        Ok(acc)
    }
}

/// Cantor-base radical inverse: maps `n = sum_j n_j q_1⋯q_{j-1}` to the
/// digit string with value `sum_j n_j / (q_1⋯q_j)`. Constant bases yield a
/// fixed-radix string (the classical van der Corput case), everything else
/// a mixed-radix one.
pub fn cantor_inverse(n: u64, base: &CantorBase, precision: usize) -> Result<DigitString> {
    if let Some(q) = base.constant_base() {
        return vdc(n, q, precision);
    }
    let mut digits = Vec::with_capacity(precision);
    let mut rest = n;
    for j in 1..=precision {
        if rest == 0 {
            // Remaining digits are zero; still need radices for the string.
            // A finite base shorter than the precision is fine once the
            // expansion has terminated: pad with radix 2.
            let q = base.base_at(j).unwrap_or(2);
            digits.push((q, 0));
            continue;
        }
        let q = base.base_at(j).map_err(|_| Error::BaseDepthExceeded {
            index: n,
            depth: base.entries.len(),
        })?;
        digits.push((q, rest % q));
        rest /= q;
    }
    if rest > 0 {
        // Count how deep the expansion of n actually goes.
        let mut needed = 0;
        let mut r = n;
        while r > 0 {
            needed += 1;
            r /= base.base_at(needed)?;
        }
        return Err(Error::PrecisionTooSmall { needed, have: precision });
    }
    let (bases, ds): (Vec<u64>, Vec<u64>) = digits.into_iter().unzip();
    DigitString::mixed(bases, ds)
}

/// Hellekalek's generalized Halton sequence: coordinate `i` is the Cantor
/// radical inverse for base list `P_i`, with cross-coordinate coprimality
/// `gcd(p_{i,k}, p_{j,l}) = 1` for `i ≠ j` checked at construction.
#[derive(Clone, Debug)]
pub struct HellekalekSequence {
    bases: Vec<CantorBase>,
    precision: usize,
}

impl HellekalekSequence {
    pub fn new(bases: Vec<CantorBase>, precision: usize) -> Result<HellekalekSequence> {
        if bases.is_empty() {
            return Err(Error::Config("at least one coordinate required".into()));
        }
        for (i, a) in bases.iter().enumerate() {
            for b in bases.iter().skip(i + 1) {
                for &qa in a.entries() {
                    for &qb in b.entries() {
                        if qa.gcd(&qb) != 1 {
                            return Err(Error::NotCoprime(format!(
                                "bases {qa} and {qb} share a factor across coordinates"
                            )));
                        }
                    }
                }
            }
        }
        Ok(HellekalekSequence { bases, precision })
    }

    /// Classical Halton sequence: constant pairwise-coprime integer bases.
    pub fn halton(bases: &[u64], precision: usize) -> Result<HellekalekSequence> {
        let lists = bases
            .iter()
            .map(|&q| CantorBase::constant(q))
            .collect::<Result<Vec<_>>>()?;
        HellekalekSequence::new(lists, precision)
    }

    pub fn dimension(&self) -> usize {
        self.bases.len()
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn bases(&self) -> &[CantorBase] {
        &self.bases
    }

    pub fn point(&self, n: u64) -> Result<Vec<DigitString>> {
        self.bases
            .iter()
            .map(|base| cantor_inverse(n, base, self.precision))
            .collect()
    }
}

/// `v_n(x) = sum_r phi(a_r(n)) x^r` from the base-`b` digits of `n`.
pub fn index_poly(spec: &FieldSpec, n: u64) -> Poly {
    let digits = int_digits(n, spec.order());
    Poly::from_indices(spec, &digits).expect("digits below order")
}

/// Remainder blocks of `f` under iterated division by the place sequence
/// `places(1), places(2), …`, written into 0-based digit positions using
/// the monomial-coefficient encoding. Errors if a nonzero digit falls past
/// the precision.
fn residue_digits(
    f: &Poly,
    mut place_at: impl FnMut(usize) -> Result<Poly>,
    precision: usize,
) -> Result<Vec<u64>> {
    let mut digits = vec![0u64; precision];
    let mut quotient = f.clone();
    let mut pos = 0usize;
    let mut j = 1usize;
    while !quotient.is_zero() {
        let place = place_at(j)?;
        let e = place
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Config(format!("place {place} must be nonconstant")))?;
        let (q, r) = quotient.divmod(&place)?;
        for mu in 0..e {
            let d = r.coeff_index(mu);
            if pos + mu < precision {
                digits[pos + mu] = d;
            } else if d != 0 {
                return Err(Error::PrecisionTooSmall {
                    needed: pos + mu + 1,
                    have: precision,
                });
            }
        }
        pos += e;
        quotient = q;
        j += 1;
    }
    Ok(digits)
}

/// Tezuka's polynomial analogue of the Halton sequence: coordinate `i`
/// expands `v_n` in powers of the modulus `p_i` and reads the remainder
/// blocks as digits. Moduli must be nonconstant and pairwise coprime; they
/// need not be irreducible.
#[derive(Clone, Debug)]
pub struct TezukaSequence {
    spec: FieldSpec,
    moduli: Vec<Poly>,
    precision: usize,
}

impl TezukaSequence {
    pub fn new(spec: &FieldSpec, moduli: Vec<Poly>, precision: usize) -> Result<TezukaSequence> {
        if moduli.is_empty() {
            return Err(Error::Config("at least one coordinate required".into()));
        }
        for p in &moduli {
            if p.spec() != spec {
                return Err(Error::SpecMismatch);
            }
            if p.degree().map_or(true, |d| d < 1) {
                return Err(Error::Config(format!("modulus {p} must be nonconstant")));
            }
        }
        for (i, a) in moduli.iter().enumerate() {
            for b in moduli.iter().skip(i + 1) {
                if !a.is_coprime(b) {
                    return Err(Error::NotCoprime(format!("moduli {a} and {b}")));
                }
            }
        }
        Ok(TezukaSequence { spec: spec.clone(), moduli, precision })
    }

    pub fn dimension(&self) -> usize {
        self.moduli.len()
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn moduli(&self) -> &[Poly] {
        &self.moduli
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn point(&self, n: u64) -> Result<Vec<DigitString>> {
        let f = index_poly(&self.spec, n);
        self.moduli
            .iter()
            .map(|p| {
                let digits = residue_digits(&f, |_| Ok(p.clone()), self.precision)?;
                DigitString::fixed(self.spec.order(), digits)
            })
            .collect()
    }
}

/// Per-coordinate lists of monic irreducible polynomials defining a
/// Halton-type sequence. Lists repeat cyclically. Construction enforces:
/// every place monic, irreducible, and coprime to `x`; no place shared
/// between two different coordinates (distinct monic irreducibles are
/// coprime, so this is exactly cross-coordinate coprimality).
#[derive(Clone, Debug)]
pub struct PlaceList {
    spec: FieldSpec,
    coords: Vec<Vec<Poly>>,
}

impl PlaceList {
    pub fn new(spec: &FieldSpec, coords: Vec<Vec<Poly>>) -> Result<PlaceList> {
        if coords.is_empty() || coords.iter().any(|c| c.is_empty()) {
            return Err(Error::Config("each coordinate needs at least one place".into()));
        }
        for list in &coords {
            for p in list {
                if p.spec() != spec {
                    return Err(Error::SpecMismatch);
                }
                if !p.is_monic() {
                    return Err(Error::Config(format!("place {p} must be monic")));
                }
                if !p.is_irreducible()? {
                    return Err(Error::Config(format!("place {p} must be irreducible")));
                }
                if p.coeff_index(0) == 0 {
                    return Err(Error::NotCoprime(format!("place {p} is divisible by x")));
                }
            }
        }
        for (i, a) in coords.iter().enumerate() {
            for b in coords.iter().skip(i + 1) {
                for pa in a {
                    for pb in b {
                        if pa == pb {
                            return Err(Error::NotCoprime(format!(
                                "place {pa} appears in two coordinates"
                            )));
                        }
                    }
                }
            }
        }
        Ok(PlaceList { spec: spec.clone(), coords })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// `P_{i,j}` for 0-based coordinate `i`, 1-based block `j`.
    pub fn place_at(&self, i: usize, j: usize) -> &Poly {
        let list = &self.coords[i];
        &list[(j - 1) % list.len()]
    }

    /// Cumulative degree `n_{i,j} = deg(P_{i,1}) + … + deg(P_{i,j})`.
    pub fn cumulative_degree(&self, i: usize, j: usize) -> usize {
        (1..=j).map(|t| self.place_at(i, t).degree().unwrap()).sum()
    }

    /// Cumulative product `prod_{k<=j} P_{i,k}` (the modulus that digit
    /// blocks `1..=j` determine a residue against).
    pub fn cumulative_product(&self, i: usize, j: usize) -> Poly {
        let mut acc = Poly::one(&self.spec);
        for t in 1..=j {
            acc = &acc * self.place_at(i, t);
        }
        acc
    }
}

/// Halton-type digital sequence from a [`PlaceList`] (rational function
/// field, degree valuation at infinity): coordinate `i` of point `n` reads
/// the remainder blocks of `v_n` under `P_{i,1}, P_{i,2}, …`.
#[derive(Clone, Debug)]
pub struct HaltonTypeSequence {
    places: PlaceList,
    precision: usize,
}

impl HaltonTypeSequence {
    pub fn new(places: PlaceList, precision: usize) -> HaltonTypeSequence {
        HaltonTypeSequence { places, precision }
    }

    pub fn places(&self) -> &PlaceList {
        &self.places
    }

    pub fn dimension(&self) -> usize {
        self.places.dimension()
    }

    pub fn spec(&self) -> &FieldSpec {
        self.places.spec()
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn point(&self, n: u64) -> Result<Vec<DigitString>> {
        let spec = self.places.spec();
        let f = index_poly(spec, n);
        (0..self.places.dimension())
            .map(|i| {
                let digits = residue_digits(
                    &f,
                    |j| Ok(self.places.place_at(i, j).clone()),
                    self.precision,
                )?;
                DigitString::fixed(spec.order(), digits)
            })
            .collect()
    }
}
