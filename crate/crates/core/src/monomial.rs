//! Monomial (generalized permutation) matrices and a dense matrix type used
//! as an oracle and for rank computations.

use std::fmt;

use crate::error::Error;
use crate::linalg;
use crate::scalar::{GaussianRational, Scalar};

/// A matrix with exactly one nonzero entry per row and column.
///
/// Acts on basis vectors by `M·e_x = scale[x]·e_{perm[x]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    scale: Vec<Scalar>,
}

fn check_permutation(perm: &[usize]) -> Result<(), Error> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::NotAPermutation(format!("{perm:?}")));
        }
        seen[p] = true;
    }
    Ok(())
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, scale: Vec<Scalar>) -> Result<Self, Error> {
        if perm.len() != scale.len() {
            return Err(Error::DimMismatch(perm.len(), scale.len()));
        }
        check_permutation(&perm)?;
        if let Some(col) = scale.iter().position(Scalar::is_zero) {
            return Err(Error::ZeroScale(col));
        }
        Ok(Self { perm, scale })
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Scalar::one())
    }

    /// `c·I`. Panics if `c` is zero.
    pub fn scalar(dim: usize, c: Scalar) -> Self {
        assert!(!c.is_zero(), "zero scalar matrix is not monomial");
        Self {
            perm: (0..dim).collect(),
            scale: vec![c; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &[Scalar] {
        &self.scale
    }

    /// Image of basis vector `x`: `(target index, coefficient)`.
    pub fn image(&self, x: usize) -> (usize, &Scalar) {
        (self.perm[x], &self.scale[x])
    }

    fn check_dim(&self, other: &Self) -> Result<(), Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        self.check_dim(other)?;
        let (perm, scale) = (0..self.dim())
            .map(|x| {
                let y = other.perm[x];
                (self.perm[y], &other.scale[x] * &self.scale[y])
            })
            .unzip();
        Ok(Self { perm, scale })
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        let mut perm = vec![0; self.dim()];
        let mut scale = vec![Scalar::zero(); self.dim()];
        for (x, (&y, s)) in self.perm.iter().zip(&self.scale).enumerate() {
            perm[y] = x;
            scale[y] = s.inverse().ok_or(Error::NonInvertibleScale(x))?;
        }
        Ok(Self { perm, scale })
    }

    /// Conjugate transpose with respect to the orthonormal standard basis.
    pub fn adjoint(&self) -> Self {
        let mut perm = vec![0; self.dim()];
        let mut scale = vec![Scalar::zero(); self.dim()];
        for (x, (&y, s)) in self.perm.iter().zip(&self.scale).enumerate() {
            perm[y] = x;
            scale[y] = s.conj();
        }
        Self { perm, scale }
    }

    pub fn equals(&self, other: &Self) -> Result<bool, Error> {
        self.check_dim(other)?;
        Ok(self == other)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.scale.iter().all(Scalar::is_one)
    }

    /// Dense rendering: entry `(perm[col], col)` holds `scale[col]`.
    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zero(self.dim());
        for (col, (&row, s)) in self.perm.iter().zip(&self.scale).enumerate() {
            out.set(row, col, s.clone());
        }
        out
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (x, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[self.perm[x]] = c * &self.scale[x];
            }
        }
        out
    }
}

/// Square matrix of scalars, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<Scalar>,
}

/// Where to compute a rank: at a specialization of `t`, or over the field of
/// fractions of the Laurent ring.
#[derive(Clone, Debug)]
pub enum RankMode {
    At(GaussianRational),
    Symbolic,
}

impl DenseMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for i in 0..dim {
            out.set(i, i, Scalar::one());
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimMismatch(dim, r.len()));
            }
            entries.extend(r);
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Scalar) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.entries[i * n + j] + &(a * b);
                        out.entries[i * n + j] = cur;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Specializes `t := at`, row-major.
    pub fn eval(&self, at: &GaussianRational) -> Result<Vec<Vec<GaussianRational>>, Error> {
        self.rows()
            .map(|r| r.iter().map(|s| s.eval(at)).collect())
            .collect()
    }

    pub fn rank(&self, mode: &RankMode) -> Result<usize, Error> {
        match mode {
            RankMode::At(p) => {
                if p.is_zero() {
                    return Err(Error::EvalAtZero);
                }
                Ok(linalg::dense_rank(&self.eval(p)?))
            }
            RankMode::Symbolic => {
                let rows: Vec<Vec<Scalar>> = self.rows().map(<[Scalar]>::to_vec).collect();
                Ok(linalg::dense_rank(&rows))
            }
        }
    }

    /// Row-major grid of canonical scalar strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(Scalar::to_string).collect())
            .collect()
    }

    /// CSV with one matrix row per line, each cell a quoted canonical scalar.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in self.rows() {
            let cells: Vec<String> = r.iter().map(|s| format!("\"{s}\"")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid = self.to_strings();
        let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in grid {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, (&y, s)) in self.perm.iter().zip(&self.scale).enumerate() {
            writeln!(f, "e{x} -> ({s})*e{y}")?;
        }
        Ok(())
    }
}
