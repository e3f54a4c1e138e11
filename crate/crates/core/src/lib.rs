//! Construction and verification of digital low-discrepancy sequences over
//! finite fields, together with bounded-remainder-set experiments.
//!
//! The crate is organized around six subsystems:
//!
//! - [`field`] — exact arithmetic in `GF(p^k)` plus the digit bijection
//!   `phi : {0,…,b−1} → F_b`.
//! - [`polyring`] — polynomials over `F_b` and truncated Laurent expansion of
//!   rational functions in powers of `x^{-1}`.
//! - [`digits`] — exact base-`b` (and mixed-radix) digit strings used as
//!   point coordinates; no floating point anywhere on the exact paths.
//! - [`radinv`] — radical-inverse constructions: van der Corput, Cantor-base
//!   Halton (Hellekalek), polynomial Halton (Tezuka), and Halton-type
//!   sequences built from per-coordinate lists of irreducible polynomials.
//! - [`digital`] — the generic digital-sequence engine, generalized
//!   Niederreiter generating matrices, overall matrices, and dual spaces.
//! - [`verify`] — elementary intervals, `(t,m,s)`-net checks, exact
//!   t-values, digital shifts, b-adic norms, and admissibility tests.
//! - [`brs`] — discrepancy function `Δ` for anchored boxes, the finite
//!   expansion test on box corners, per-scale sup profiles, and exact star
//!   discrepancy at small scale.
//!
//! All arithmetic is exact (integer / rational); decimal output is for
//! display only.
//!
//! ```
//! use lowdisc::brs::{delta, GammaSpec};
//! use lowdisc::digital::DigitalConfig;
//! use lowdisc::field::FieldSpec;
//! use lowdisc::polyring::Poly;
//! use lowdisc::verify::exact_t_value;
//! use num_traits::Zero;
//!
//! // The two-dimensional sequence with moduli (x+1, x^2+x+1) over GF(2).
//! let spec = FieldSpec::gf(2)?;
//! let moduli = [Poly::parse(&spec, "x+1")?, Poly::parse(&spec, "x^2+x+1")?];
//! let cfg = DigitalConfig::niederreiter(&moduli, None, 16)?;
//! let points = cfg.generator(256)?.points(0..256)?;
//!
//! // Its first 2^8 points form a (1,8,2)-net ...
//! assert_eq!(exact_t_value(&points, 2, 8)?, 1);
//!
//! // ... so the box [0, 1/2) x [0, 3/4) holds exactly its share of them.
//! let gamma = GammaSpec::parse(2, "1/2; 3/4")?;
//! assert!(delta(&points, &gamma)?.is_zero());
//! # Ok::<(), lowdisc::Error>(())
//! ```

pub mod brs;
pub mod digital;
pub mod digits;
pub mod field;
pub mod polyring;
pub mod radinv;
pub mod verify;

use std::fmt;

/// Coarse classification of an [`Error`], used by front ends to pick exit
/// codes: usage and configuration errors are caller mistakes, domain errors
/// are invalid mathematical operations, certification errors mean a result
/// could not be decided at the available digit precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Domain,
    Config,
    Certification,
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not prime.
    NotPrime(u64),
    /// Order is not a prime power.
    NotPrimePower(u64),
    /// No built-in irreducible modulus for this prime-power order.
    NoBuiltinModulus(u64),
    /// Supplied extension modulus is rejected (wrong degree, not monic,
    /// reducible, or bad coefficients).
    InvalidModulus(String),
    /// Digit outside `[0, b)` passed to the bijection `phi`.
    DigitOutOfRange { digit: u64, order: u64 },
    /// Multiplicative inverse of zero requested.
    ZeroInverse,
    /// Operands belong to different field specs.
    SpecMismatch,
    /// Division by the zero polynomial.
    ZeroPolyDivision,
    /// Irreducibility is undefined for constant polynomials.
    ConstantPolyIrreducibility,
    /// Laurent expansion requires `deg f < deg g`.
    NumeratorDegree { num_deg: usize, den_deg: usize },
    /// Text form could not be parsed.
    Parse(String),
    /// Digit not valid for the radix at its position.
    InvalidDigit { digit: u64, base: u64 },
    /// Operation requires digit strings in the same fixed base.
    BaseMismatch,
    /// Operation requires digit strings of equal precision.
    PrecisionMismatch,
    /// Operation requires a fixed-radix digit string.
    MixedRadixUnsupported,
    /// Requested precision cannot hold all nonzero digits.
    PrecisionTooSmall { needed: usize, have: usize },
    /// A finite base list is too shallow for the requested index.
    BaseDepthExceeded { index: u64, depth: usize },
    /// A radix entry smaller than 2.
    InvalidBase(u64),
    /// Coprimality requirement violated (bases or polynomials).
    NotCoprime(String),
    /// Numerator family not linearly independent modulo its place.
    DependentNumerators(String),
    /// Mismatched dimensions or field specs in a configuration.
    Config(String),
    /// Point-set size does not match `b^m`.
    WrongPointCount { expected: u64, got: u64 },
    /// Result cannot be certified at the available precision.
    Certification(String),
    /// Generic precondition violation.
    Usage(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            ZeroInverse | ZeroPolyDivision => ErrorClass::Domain,
            Certification(_) => ErrorClass::Certification,
            NotPrime(_) | NotPrimePower(_) | NoBuiltinModulus(_) | InvalidModulus(_)
            | Parse(_) | NotCoprime(_) | DependentNumerators(_) | Config(_)
            | InvalidBase(_) => ErrorClass::Config,
            _ => ErrorClass::Usage,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            NotPrime(p) => write!(f, "{p} is not prime"),
            NotPrimePower(b) => write!(f, "{b} is not a prime power"),
            NoBuiltinModulus(b) => write!(f, "no built-in modulus for GF({b})"),
            InvalidModulus(m) => write!(f, "invalid modulus: {m}"),
            DigitOutOfRange { digit, order } => {
                write!(f, "digit {digit} out of range for order {order}")
            }
            ZeroInverse => write!(f, "inverse of zero"),
            SpecMismatch => write!(f, "operands from different fields"),
            ZeroPolyDivision => write!(f, "division by zero polynomial"),
            ConstantPolyIrreducibility => {
                write!(f, "irreducibility undefined for constant polynomial")
            }
            NumeratorDegree { num_deg, den_deg } => write!(
                f,
                "numerator degree {num_deg} not below denominator degree {den_deg}"
            ),
            Parse(s) => write!(f, "parse error: {s}"),
            InvalidDigit { digit, base } => write!(f, "digit {digit} not valid in base {base}"),
            BaseMismatch => write!(f, "digit strings have different bases"),
            PrecisionMismatch => write!(f, "digit strings have different precisions"),
            MixedRadixUnsupported => write!(f, "operation requires a fixed-radix digit string"),
            PrecisionTooSmall { needed, have } => {
                write!(f, "precision {have} too small; {needed} digits needed")
            }
            BaseDepthExceeded { index, depth } => {
                write!(f, "base list of depth {depth} cannot represent index {index}")
            }
            InvalidBase(q) => write!(f, "radix {q} must be at least 2"),
            NotCoprime(s) => write!(f, "coprimality violated: {s}"),
            DependentNumerators(s) => write!(f, "numerators linearly dependent: {s}"),
            Config(s) => write!(f, "configuration error: {s}"),
            WrongPointCount { expected, got } => {
                write!(f, "expected {expected} points, got {got}")
            }
            Certification(s) => write!(f, "cannot certify at this precision: {s}"),
            Usage(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
