//! Generic digital sequences over `F_b`: lazily extensible generating
//! matrices, the generalized Niederreiter construction, overall generating
//! matrices, and dual-space computation.
//!
//! A generating matrix `C = (c_{j,r})` (rows `j >= 1`, columns `r >= 0`)
//! maps the digit vector of an index `n` to the digit vector of one point
//! coordinate: `y_j = sum_r phi(a_r(n)) · c_{j,r}`. Matrices materialize on
//! demand; extension is deterministic, so re-materializing always yields
//! identical entries, and previously produced digits never change when the
//! precision grows.
//!
//! The Niederreiter rule for a coordinate with modulus `p` (degree `e`) and
//! numerators `y_0, …, y_{e-1}` fills row `j` (with `j − 1 = Q·e + k`) from
//! the Laurent coefficient stream of `(y_k mod p^{Q+1}) / p^{Q+1}`.

use std::sync::Mutex;

use serde::Serialize;

use crate::digits::DigitString;
use crate::field::FieldSpec;
use crate::polyring::{LaurentTail, Poly};
use crate::radinv::int_digits;
use crate::{Error, Result};

/// How entries of a [`GeneratingMatrix`] beyond the materialized region are
/// produced.
#[derive(Clone, Debug)]
pub enum MatrixRule {
    /// `c_{j,r} = 1` iff `r = j − 1` (digit reversal; van der Corput).
    Identity,
    /// A finite grid of `phi`-indices; entries outside it are zero.
    Explicit(Vec<Vec<u64>>),
    /// Generalized Niederreiter rule for one coordinate.
    Niederreiter { modulus: Poly, numerators: Vec<Poly> },
}

/// One coordinate's generating matrix. Interior memoization is
/// synchronized; concurrent readers observe identical entries.
#[derive(Debug)]
pub struct GeneratingMatrix {
    spec: FieldSpec,
    rule: MatrixRule,
    rows: Mutex<Vec<LaurentTail>>,
}

impl GeneratingMatrix {
    pub fn identity(spec: &FieldSpec) -> GeneratingMatrix {
        GeneratingMatrix {
            spec: spec.clone(),
            rule: MatrixRule::Identity,
            rows: Mutex::new(vec![]),
        }
    }

    /// Finite explicit matrix, rows of `phi`-indices (row-major digit grid).
    pub fn explicit(spec: &FieldSpec, rows: Vec<Vec<u64>>) -> Result<GeneratingMatrix> {
        for row in &rows {
            for &c in row {
                if c >= spec.order() {
                    return Err(Error::DigitOutOfRange { digit: c, order: spec.order() });
                }
            }
        }
        Ok(GeneratingMatrix {
            spec: spec.clone(),
            rule: MatrixRule::Explicit(rows),
            rows: Mutex::new(vec![]),
        })
    }

    /// Niederreiter matrix for modulus `p` and the given numerator family
    /// `y_0, …, y_{e-1}` (`None` for the classical default `y_k = x^k`).
    /// The family must be linearly independent modulo `p`.
    pub fn niederreiter(p: &Poly, numerators: Option<Vec<Poly>>) -> Result<GeneratingMatrix> {
        let spec = p.spec().clone();
        let e = match p.degree() {
            Some(e) if e >= 1 => e,
            _ => return Err(Error::Config(format!("modulus {p} must be nonconstant"))),
        };
        let numerators = match numerators {
            None => (0..e)
                .map(|k| Poly::monomial(&spec, 1, k))
                .collect::<Result<Vec<_>>>()?,
            Some(ys) => {
                if ys.len() != e {
                    return Err(Error::Config(format!(
                        "need {e} numerators for a degree-{e} modulus, got {}",
                        ys.len()
                    )));
                }
                for y in &ys {
                    if y.spec() != &spec {
                        return Err(Error::SpecMismatch);
                    }
                }
                // Linear independence of the residues mod p over F_b.
                let residues: Vec<Poly> = ys
                    .iter()
                    .map(|y| y.divmod(p).map(|(_, r)| r))
                    .collect::<Result<Vec<_>>>()?;
                let mat: Vec<Vec<u64>> = residues
                    .iter()
                    .map(|r| (0..e).map(|c| r.coeff_index(c)).collect())
                    .collect();
                if rank(&spec, mat) != e {
                    return Err(Error::DependentNumerators(format!(
                        "numerator residues mod {p} do not span"
                    )));
                }
                ys
            }
        };
        Ok(GeneratingMatrix {
            spec: spec.clone(),
            rule: MatrixRule::Niederreiter { modulus: p.clone(), numerators },
            rows: Mutex::new(vec![]),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rule(&self) -> &MatrixRule {
        &self.rule
    }

    /// Upper-left `rows × cols` snapshot of `phi`-indices.
    pub fn snapshot(&self, rows: usize, cols: usize) -> Vec<Vec<u64>> {
        match &self.rule {
            MatrixRule::Identity => (0..rows)
                .map(|j| (0..cols).map(|r| u64::from(r == j)).collect())
                .collect(),
            MatrixRule::Explicit(grid) => (0..rows)
                .map(|j| {
                    (0..cols)
                        .map(|r| grid.get(j).and_then(|row| row.get(r)).copied().unwrap_or(0))
                        .collect()
                })
                .collect(),
            MatrixRule::Niederreiter { modulus, numerators } => {
                let e = modulus.degree().unwrap();
                let mut cache = self.rows.lock().unwrap();
                while cache.len() < rows {
                    let j = cache.len(); // 0-based; row j+1 in 1-based terms
                    let big_q = j / e;
                    let k = j % e;
                    let den = modulus.pow(big_q as u32 + 1);
                    // Reduce so deg(numerator) < deg(denominator); reduction
                    // leaves the r >= 0 coefficient stream unchanged.
                    let (_, num) = numerators[k].divmod(&den).expect("nonzero denominator");
                    cache.push(LaurentTail::new(&num, &den).expect("proper fraction"));
                }
                cache[..rows]
                    .iter_mut()
                    .map(|tail| tail.prefix(cols).to_vec())
                    .collect()
            }
        }
    }

    /// Entry `c_{j,r}` with 1-based row `j`, 0-based column `r`.
    pub fn entry(&self, j: usize, r: usize) -> u64 {
        self.snapshot(j, r + 1)[j - 1][r]
    }
}

/// A digital-sequence configuration: one generating matrix per coordinate
/// over a shared field, points produced at a fixed digit precision.
#[derive(Debug)]
pub struct DigitalConfig {
    spec: FieldSpec,
    matrices: Vec<GeneratingMatrix>,
    precision: usize,
}

impl DigitalConfig {
    pub fn new(
        spec: &FieldSpec,
        matrices: Vec<GeneratingMatrix>,
        precision: usize,
    ) -> Result<DigitalConfig> {
        if matrices.is_empty() {
            return Err(Error::Config("at least one coordinate required".into()));
        }
        if matrices.iter().any(|m| m.spec() != spec) {
            return Err(Error::SpecMismatch);
        }
        if precision == 0 {
            return Err(Error::Usage("precision must be positive".into()));
        }
        Ok(DigitalConfig { spec: spec.clone(), matrices, precision })
    }

    /// Identity matrices in every coordinate (coordinate-wise van der
    /// Corput in base `b`).
    pub fn identity(spec: &FieldSpec, dimension: usize, precision: usize) -> Result<DigitalConfig> {
        let matrices = (0..dimension).map(|_| GeneratingMatrix::identity(spec)).collect();
        DigitalConfig::new(spec, matrices, precision)
    }

    /// Generalized Niederreiter sequence for pairwise coprime nonconstant
    /// moduli, each coprime to `x`. `numerators[i]`, when provided, gives
    /// the family `y_{i,0}, …, y_{i,e_i-1}` for coordinate `i`.
    pub fn niederreiter(
        moduli: &[Poly],
        numerators: Option<Vec<Option<Vec<Poly>>>>,
        precision: usize,
    ) -> Result<DigitalConfig> {
        if moduli.is_empty() {
            return Err(Error::Config("at least one modulus required".into()));
        }
        let spec = moduli[0].spec().clone();
        for p in moduli {
            if p.spec() != &spec {
                return Err(Error::SpecMismatch);
            }
            if p.degree().map_or(true, |d| d < 1) {
                return Err(Error::Config(format!("modulus {p} must be nonconstant")));
            }
            if p.coeff_index(0) == 0 {
                return Err(Error::NotCoprime(format!("modulus {p} is divisible by x")));
            }
        }
        for (i, a) in moduli.iter().enumerate() {
            for b in moduli.iter().skip(i + 1) {
                if !a.is_coprime(b) {
                    return Err(Error::NotCoprime(format!("moduli {a} and {b}")));
                }
            }
        }
        let mut nums = match numerators {
            None => vec![None; moduli.len()],
            Some(ns) => {
                if ns.len() != moduli.len() {
                    return Err(Error::Config("one numerator family per modulus".into()));
                }
                ns
            }
        };
        let matrices = moduli
            .iter()
            .zip(nums.drain(..))
            .map(|(p, ys)| GeneratingMatrix::niederreiter(p, ys))
            .collect::<Result<Vec<_>>>()?;
        DigitalConfig::new(&spec, matrices, precision)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.matrices.len()
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn matrix(&self, i: usize) -> &GeneratingMatrix {
        &self.matrices[i]
    }

    /// The point `x_n`.
    pub fn point(&self, n: u64) -> Result<Vec<DigitString>> {
        self.generator(n)?.point(n)
    }

    /// A generator with matrices pre-materialized for all indices up to
    /// `max_index`; point evaluation then takes no locks.
    pub fn generator(&self, max_index: u64) -> Result<PointGenerator<'_>> {
        let cols = int_digits(max_index, self.spec.order()).len().max(1);
        let snapshots: Vec<Vec<Vec<u64>>> = self
            .matrices
            .iter()
            .map(|m| m.snapshot(self.precision, cols))
            .collect();
        Ok(PointGenerator { cfg: self, cols, snapshots })
    }

    /// Overall generating matrix `[C]_m`: the transposed `m × m` upper-left
    /// submatrices of all coordinates side by side, shape `m × s·m`.
    pub fn overall_matrix(&self, m: usize) -> Vec<Vec<u64>> {
        let blocks: Vec<Vec<Vec<u64>>> =
            self.matrices.iter().map(|mat| mat.snapshot(m, m)).collect();
        (0..m)
            .map(|r| {
                let mut row = Vec::with_capacity(self.dimension() * m);
                for block in &blocks {
                    for block_row in block.iter().take(m) {
                        row.push(block_row[r]);
                    }
                }
                row
            })
            .collect()
    }

    /// Basis of the dual space: the null space of `[C]_m` in `F_b^{sm}`.
    pub fn dual_space(&self, m: usize) -> DualBasis {
        let matrix = self.overall_matrix(m);
        let row_space_dim = rank(&self.spec, matrix.clone());
        let vectors = null_space(&self.spec, &matrix, self.dimension() * m);
        DualBasis {
            b: self.spec.order(),
            s: self.dimension(),
            m,
            row_space_dim,
            vectors,
        }
    }
}

/// Snapshot-backed point generator for a [`DigitalConfig`].
pub struct PointGenerator<'a> {
    cfg: &'a DigitalConfig,
    cols: usize,
    snapshots: Vec<Vec<Vec<u64>>>,
}

impl PointGenerator<'_> {
    pub fn point(&self, n: u64) -> Result<Vec<DigitString>> {
        let spec = &self.cfg.spec;
        let digits_of_n = int_digits(n, spec.order());
        if digits_of_n.len() > self.cols {
            return Err(Error::Usage(format!("index {n} beyond materialized range")));
        }
        let mut out = Vec::with_capacity(self.snapshots.len());
        for rows in &self.snapshots {
            let mut digits = vec![0u64; self.cfg.precision];
            for (j, row) in rows.iter().enumerate() {
                let mut acc = 0u64;
                for (r, &a) in digits_of_n.iter().enumerate() {
                    if a != 0 {
                        acc = spec.add_index(acc, spec.mul_index(a, row[r]));
                    }
                }
                digits[j] = acc;
            }
            out.push(DigitString::fixed(spec.order(), digits)?);
        }
        Ok(out)
    }

    /// Points `x_n` for `n` in the given range.
    pub fn points(&self, range: std::ops::Range<u64>) -> Result<Vec<Vec<DigitString>>> {
        range.map(|n| self.point(n)).collect()
    }
}

/// Basis of `C_m^⊥ ⊆ F_b^{sm}` together with the row-space dimension, so
/// that `row_space_dim + vectors.len() = s·m` (rank–nullity).
#[derive(Clone, Debug, Serialize)]
pub struct DualBasis {
    pub b: u64,
    pub s: usize,
    pub m: usize,
    pub row_space_dim: usize,
    pub vectors: Vec<Vec<u64>>,
}

/// Reduced row echelon form in place; returns pivot column indices.
fn rref(spec: &FieldSpec, mat: &mut [Vec<u64>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pivot_row) = (row..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(row, pivot_row);
        let inv = spec.inv_index(mat[row][col]).unwrap();
        for c in col..cols {
            mat[row][c] = spec.mul_index(mat[row][c], inv);
        }
        for r in 0..rows {
            if r != row && mat[r][col] != 0 {
                let factor = mat[r][col];
                for c in col..cols {
                    let prod = spec.mul_index(factor, mat[row][c]);
                    mat[r][c] = spec.sub_index(mat[r][c], prod);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub(crate) fn rank(spec: &FieldSpec, mut mat: Vec<Vec<u64>>) -> usize {
    rref(spec, &mut mat).len()
}

/// Basis of `{ v : M v = 0 }` from the RREF free columns, deterministic
/// order (one basis vector per free column, ascending).
fn null_space(spec: &FieldSpec, matrix: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut mat: Vec<Vec<u64>> = matrix.to_vec();
    for row in &mut mat {
        row.resize(cols, 0);
    }
    let pivots = rref(spec, &mut mat);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        // Pivot row pr reads: v[pivots[pr]] + mat[pr][free]·v[free] = 0.
        for (pr, &pc) in pivots.iter().enumerate() {
            v[pc] = spec.neg_index(mat[pr][free]);
        }
        basis.push(v);
    }
    basis
}
