//! The Vandermonde factor `A` with `A[l][tau] = (2^t1 3^t2 5^t3)^l` and the
//! solver for `A^{⊗b} x = N` that applies `A^{-1}` one tensor mode at a time.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A per-block type `(t1, t2, t3)` with entries in `0..=d`.
pub type Tau = [u32; 3];

#[derive(Clone, Debug)]
pub struct VandermondeFactor {
    d: u32,
    taus: Vec<Tau>,
    bases: Vec<BigInt>,
    matrix: Matrix,
}

/// Builds the `(d+1)^3 × (d+1)^3` factor. Columns are `tau` in lexicographic
/// order, rows are `l = 1, 2, ...`.
pub fn build_vandermonde(d: u32) -> Result<VandermondeFactor> {
    if d == 0 {
        return Err(Error::InvalidArgument("block size d must be at least 1".into()));
    }
    let side = d + 1;
    let taus: Vec<Tau> = (0..side)
        .flat_map(|a| (0..side).flat_map(move |b| (0..side).map(move |c| [a, b, c])))
        .collect();
    let bases: Vec<BigInt> = taus.iter().map(tau_base).collect();
    let size = taus.len();
    let mut matrix = Matrix::zeros(size, size);
    for (col, base) in bases.iter().enumerate() {
        let mut power = BigInt::one();
        for row in 0..size {
            power *= base;
            matrix[(row, col)] = Rational::from_integer(power.clone());
        }
    }
    Ok(VandermondeFactor {
        d,
        taus,
        bases,
        matrix,
    })
}

/// `2^t1 · 3^t2 · 5^t3`
pub fn tau_base(tau: &Tau) -> BigInt {
    num_traits::pow(BigInt::from(2), tau[0] as usize)
        * num_traits::pow(BigInt::from(3), tau[1] as usize)
        * num_traits::pow(BigInt::from(5), tau[2] as usize)
}

impl VandermondeFactor {
    pub fn d(&self) -> u32 {
        self.d
    }

    /// `(d+1)^3`
    pub fn size(&self) -> usize {
        self.taus.len()
    }

    pub fn taus(&self) -> &[Tau] {
        &self.taus
    }

    pub fn tau_index(&self, tau: &Tau) -> Option<usize> {
        let side = self.d + 1;
        tau.iter()
            .all(|&t| t < side)
            .then(|| ((tau[0] * side + tau[1]) * side + tau[2]) as usize)
    }

    pub fn bases(&self) -> &[BigInt] {
        &self.bases
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Entry for the 1-based row `l`.
    pub fn entry(&self, l: usize, tau: &Tau) -> Option<&Rational> {
        let col = self.tau_index(tau)?;
        (1..=self.size()).contains(&l).then(|| &self.matrix[(l - 1, col)])
    }

    /// Exact inverse as a dense matrix.
    pub fn inverse(&self) -> Result<Arc<Matrix>> {
        Ok(Arc::new(self.inverse_rows().to_matrix()))
    }

    /// Exact inverse from Lagrange basis polynomials, computed once per `d`
    /// and shared.
    ///
    /// `A = V·D` with `V[i][tau] = x_tau^i` and `D = diag(x_tau)`; row `tau` of
    /// `V^{-1}` holds the coefficients of the Lagrange polynomial `L_tau`.
    pub fn inverse_rows(&self) -> Arc<FactorInverse> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FactorInverse>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(inv) = cache.lock().unwrap().get(&self.d) {
            return inv.clone();
        }
        let inv = Arc::new(FactorInverse::lagrange(&self.bases));
        cache.lock().unwrap().insert(self.d, inv.clone());
        inv
    }
}

/// `A^{-1}` stored as integer rows, each over its own denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorInverse {
    num: Vec<Vec<BigInt>>,
    den: Vec<BigInt>,
}

impl FactorInverse {
    /// Needs distinct nonzero nodes.
    fn lagrange(nodes: &[BigInt]) -> Self {
        let n = nodes.len();
        // P(t) = Π (t − x_k), ascending coefficients
        let mut p = vec![BigInt::one()];
        for x in nodes {
            let mut next = vec![BigInt::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * x;
            }
            p = next;
        }
        let mut num = Vec::with_capacity(n);
        let mut den = Vec::with_capacity(n);
        for x in nodes {
            // Q(t) = P(t) / (t − x) by synthetic division
            let mut q = vec![BigInt::zero(); n];
            q[n - 1] = p[n].clone();
            for i in (1..n).rev() {
                q[i - 1] = &p[i] + x * &q[i];
            }
            let q_at_x = q.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
            den.push(q_at_x * x);
            num.push(q);
        }
        FactorInverse { num, den }
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.den.len();
        let mut m = Matrix::zeros(n, n);
        for (i, (row, d)) in self.num.iter().zip(&self.den).enumerate() {
            for (j, c) in row.iter().enumerate() {
                m[(i, j)] = Rational::new(c.clone(), d.clone());
            }
        }
        m
    }

    fn row_times(&self, i: usize, fiber: &[Rational], fiber_int: Option<&[BigInt]>) -> Rational {
        let sum = match fiber_int {
            Some(ints) => Rational::from_integer(
                self.num[i]
                    .iter()
                    .zip(ints)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum(),
            ),
            None => self.num[i]
                .iter()
                .zip(fiber)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| b * a)
                .sum(),
        };
        sum / &self.den[i]
    }
}

/// `A^{⊗b} x = N` with `N` indexed by `l⃗ ∈ {1..(d+1)^3}^b`.
#[derive(Clone, Debug)]
pub struct KroneckerSystem {
    pub factor: VandermondeFactor,
    pub blocks: usize,
    pub rhs: HashMap<Vec<u32>, BigInt>,
}

/// Solution tensor over `tau`-indices, row-major with one axis per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerSolution {
    pub side: usize,
    pub blocks: usize,
    pub values: Vec<Rational>,
}

impl KroneckerSolution {
    /// Per-block column indices of a flat position.
    pub fn type_index(&self, flat: usize) -> Vec<usize> {
        super::GridValues::index_of(&vec![self.side; self.blocks], flat)
    }

    pub fn get(&self, type_index: &[usize]) -> &Rational {
        &self.values[super::GridValues::flat_of(&vec![self.side; self.blocks], type_index)]
    }
}

impl KroneckerSystem {
    /// Number of unknowns, `((d+1)^3)^b`.
    pub fn grid_size(&self) -> usize {
        self.factor.size().pow(self.blocks as u32)
    }

    /// Every `l⃗` in the grid in row-major order (last block fastest).
    pub fn grid_points(side: usize, blocks: usize) -> impl Iterator<Item = Vec<u32>> {
        let shape = vec![side; blocks];
        let total = side.pow(blocks as u32);
        (0..total).map(move |flat| {
            super::GridValues::index_of(&shape, flat)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect()
        })
    }

    fn dense_rhs(&self) -> Result<Vec<Rational>> {
        let side = self.factor.size();
        Self::grid_points(side, self.blocks)
            .map(|l| {
                self.rhs
                    .get(&l)
                    .map(|v| Rational::from_integer(v.clone()))
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!("right-hand side has no entry for l = {l:?}"))
                    })
            })
            .collect()
    }

    pub fn solve(&self) -> Result<KroneckerSolution> {
        let mut data = self.dense_rhs()?;
        let inv = self.factor.inverse_rows();
        let side = self.factor.size();
        for mode in 0..self.blocks {
            apply_along_mode(&mut data, side, self.blocks, mode, |i, f, fi| inv.row_times(i, f, fi));
        }
        Ok(KroneckerSolution {
            side,
            blocks: self.blocks,
            values: data,
        })
    }

    /// `A^{⊗b} x` computed mode by mode.
    pub fn apply(&self, x: &KroneckerSolution) -> Vec<Rational> {
        let mut data = x.values.clone();
        let m = self.factor.matrix();
        for mode in 0..self.blocks {
            apply_along_mode(&mut data, x.side, x.blocks, mode, |i, f, fi| integer_row_times(m.row(i), f, fi));
        }
        data
    }

    /// True when `A^{⊗b} x` reproduces the right-hand side exactly.
    pub fn residual_is_zero(&self, x: &KroneckerSolution) -> Result<bool> {
        Ok(self.apply(x) == self.dense_rhs()?)
    }
}

fn integer_row_times(row: &[Rational], fiber: &[Rational], fiber_int: Option<&[BigInt]>) -> Rational {
    match fiber_int {
        Some(ints) if row.iter().all(|a| a.is_integer()) => Rational::from_integer(
            row.iter()
                .zip(ints)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a.numer() * b)
                .sum(),
        ),
        _ => row
            .iter()
            .zip(fiber)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum(),
    }
}

/// Replaces each mode-`mode` fiber `f` of the tensor by `M · f`, where
/// `row_times(i, f, ints)` computes `(M f)_i`; `ints` is `f` as integers
/// when every entry is one, which keeps the arithmetic gcd-free.
fn apply_along_mode<F>(data: &mut [Rational], side: usize, blocks: usize, mode: usize, row_times: F)
where
    F: Fn(usize, &[Rational], Option<&[BigInt]>) -> Rational,
{
    let stride = side.pow((blocks - 1 - mode) as u32);
    let mut fiber = vec![Rational::zero(); side];
    for start in 0..data.len() {
        if !(start / stride).is_multiple_of(side) {
            continue;
        }
        for (k, slot) in fiber.iter_mut().enumerate() {
            *slot = std::mem::replace(&mut data[start + k * stride], Rational::zero());
        }
        let ints: Option<Vec<BigInt>> = fiber
            .iter()
            .map(|v| v.is_integer().then(|| v.numer().clone()))
            .collect();
        for i in 0..side {
            data[start + i * stride] = row_times(i, &fiber, ints.as_deref());
        }
    }
}

/// Solves the system with the explicit `A^{⊗b}` by Gauss–Jordan; only for
/// tiny cases, as an independent check of the factorized route.
pub fn kronecker_solve_dense(sys: &KroneckerSystem) -> Result<Vec<Rational>> {
    if sys.blocks == 0 {
        return sys.dense_rhs();
    }
    let mut full = sys.factor.matrix().clone();
    for _ in 1..sys.blocks {
        full = full.kron(sys.factor.matrix());
    }
    full.inverse()?.mul_vec(&sys.dense_rhs()?)
}
