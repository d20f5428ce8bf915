//! Exact linear algebra over `Z` and `Z_p`: Smith normal form, linear
//! solving, and cohomology presentations with deterministic bases.

// index-style loops read better than iterator chains in these kernels
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{Euclid, One, Signed, Zero};
use thiserror::Error;

use crate::ring::{inv_mod, Ring};

#[derive(Debug, Error, PartialEq)]
pub enum LaError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("d_out * d_in is nonzero; not a complex")]
    CompositionNonzero,
    #[error("vector is not a cocycle")]
    NotACocycle,
}

/// Dense matrix over `Z`, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = self.get(i, k) * b + out.get(i, j);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn hcat_cols(cols: &[Vec<BigInt>], rows: usize) -> IntMat {
        let mut m = IntMat::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `R_i += q * R_j`
    fn row_add(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let b = self.get(j, k);
            if !b.is_zero() {
                let v = self.get(i, k) + q * b;
                self.set(i, k, v);
            }
        }
    }

    /// `C_i += q * C_j`
    fn col_add(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.rows {
            let b = self.get(k, j);
            if !b.is_zero() {
                let v = self.get(k, i) + q * b;
                self.set(k, i, v);
            }
        }
    }

    fn row_neg(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k).clone();
            self.set(i, k, v);
        }
    }

    fn col_neg(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -self.get(k, j).clone();
            self.set(k, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; the tests use it as
    /// an independent oracle.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.row_swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

/// Smith normal form `U * M * V = D` together with the unimodular transforms
/// and their inverses.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub u_inv: IntMat,
    pub v_inv: IntMat,
    /// number of nonzero diagonal entries
    pub rank: usize,
}

impl Snf {
    pub fn diag(&self, k: usize) -> BigInt {
        if k < self.d.rows.min(self.d.cols) {
            self.d.get(k, k).clone()
        } else {
            BigInt::zero()
        }
    }
}

/// Smith normal form. Pivoting takes the smallest nonzero absolute value,
/// ties broken in row-major order, so the bases are reproducible.
pub fn smith_normal_form(m: &IntMat) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    let limit = rows.min(cols);
    let mut reached = limit;
    'stages: for k in 0..limit {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let val = d.get(i, j);
                    if val.is_zero() {
                        continue;
                    }
                    match &best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if val.abs() < d.get(*bi, *bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                reached = k;
                break 'stages;
            };
            if pi != k {
                d.row_swap(k, pi);
                u.row_swap(k, pi);
                u_inv.col_swap(k, pi);
            }
            if pj != k {
                d.col_swap(k, pj);
                v.col_swap(k, pj);
                v_inv.row_swap(k, pj);
            }
            if d.get(k, k).is_negative() {
                d.row_neg(k);
                u.row_neg(k);
                u_inv.col_neg(k);
            }

            let pivot = d.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                let e = d.get(i, k).clone();
                if !e.is_zero() {
                    let q = -e.div_euclid(&pivot);
                    d.row_add(i, k, &q);
                    u.row_add(i, k, &q);
                    u_inv.col_add(k, i, &(-&q));
                    if !d.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                let e = d.get(k, j).clone();
                if !e.is_zero() {
                    let q = -e.div_euclid(&pivot);
                    d.col_add(j, k, &q);
                    v.col_add(j, k, &q);
                    v_inv.row_add(k, j, &(-&q));
                    if !d.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(d.get(i, j) % &pivot).is_zero() {
                        let one = BigInt::one();
                        d.row_add(k, i, &one);
                        u.row_add(k, i, &one);
                        u_inv.col_add(i, k, &(-&one));
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }
    let mut rank = 0;
    for k in 0..reached {
        if !d.get(k, k).is_zero() {
            rank = k + 1;
        }
    }
    Snf {
        u,
        d,
        v,
        u_inv,
        v_inv,
        rank,
    }
}

/// Solves `M x = b` over `Z`. `None` means no integer solution exists, a
/// legitimate outcome rather than a failure.
pub fn solve_z(m: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    solve_with_snf(&snf, b, m.cols)
}

/// Same as [`solve_z`] with a precomputed factorization.
pub fn solve_with_snf(snf: &Snf, b: &[BigInt], cols: usize) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); cols];
    for (i, ubi) in ub.iter().enumerate() {
        let di = if i < cols { snf.diag(i) } else { BigInt::zero() };
        if di.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            if !(ubi % &di).is_zero() {
                return None;
            }
            y[i] = ubi / &di;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Integer kernel basis of `M`, as matrix columns.
pub fn kernel_z(m: &IntMat) -> IntMat {
    let snf = smith_normal_form(m);
    let mut cols = Vec::new();
    for j in 0..m.cols {
        if snf.diag(j).is_zero() {
            cols.push(snf.v.col(j));
        }
    }
    IntMat::hcat_cols(&cols, m.cols)
}

/// Dense matrix over `Z_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_int(m: &IntMat, p: u64) -> Self {
        let ring = Ring::Zp(p);
        let mut out = FpMat::zero(p, m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                let r = ring.reduce_big(m.get(i, j));
                out.set(i, j, crate::ring::big_to_i128(&r) as u64);
            }
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) as u128 * v[j] as u128) % self.p as u128;
                }
                acc as u64
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u128;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(row * self.cols + j, pr * self.cols + j);
            }
            let inv = inv_mod(self.get(row, col), self.p) as u128;
            for j in 0..self.cols {
                let v = (self.get(row, j) as u128 * inv % p) as u64;
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i != row && self.get(i, col) != 0 {
                    let f = self.get(i, col) as u128;
                    for j in 0..self.cols {
                        let v = (self.get(i, j) as u128 + p - f * self.get(row, j) as u128 % p) % p;
                        self.set(i, j, v as u64);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel, as matrix columns.
    pub fn kernel(&self) -> FpMat {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMat::zero(self.p, self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            out.set(fc, idx, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.get(r, fc);
                if v != 0 {
                    out.set(pc, idx, self.p - v);
                }
            }
        }
        out
    }

    /// Solves `M x = b`; `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMat::zero(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % self.p);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Presentation of `ker(d_out) / im(d_in)` with a stored projection onto
/// canonical coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    pub ring: Ring,
    pub degree: usize,
    pub free_rank: usize,
    /// invariant factors `> 1`, aligned with the torsion coordinates that
    /// follow the free ones
    pub torsion: Vec<BigInt>,
    /// cochain-coordinate vectors projecting to the unit coordinate vectors
    pub cocycle_basis: Vec<Vec<BigInt>>,
    proj: Proj,
}

#[derive(Clone, Debug)]
enum Proj {
    Z {
        kernel: IntMat,
        kernel_snf: Snf,
        uy: IntMat,
        /// retained SNF coordinate indices with modulus (0 marks free), free
        /// coordinates listed first
        retained: Vec<(usize, BigInt)>,
    },
    Zp {
        kernel: FpMat,
        /// echelon rows of the image expressed in kernel coordinates
        reducers: FpMat,
        reducer_pivots: Vec<usize>,
        free_cols: Vec<usize>,
    },
}

impl CohomologyPresentation {
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Coordinates of a cocycle's class: free coordinates first, then torsion
    /// residues normalized to `0..d`.
    pub fn project(&self, cocycle: &[BigInt]) -> Result<Vec<BigInt>, LaError> {
        match &self.proj {
            Proj::Z {
                kernel,
                kernel_snf,
                uy,
                retained,
            } => {
                let c =
                    solve_with_snf(kernel_snf, cocycle, kernel.cols).ok_or(LaError::NotACocycle)?;
                let h = uy.mul_vec(&c);
                Ok(retained
                    .iter()
                    .map(|(idx, modulus)| {
                        if modulus.is_zero() {
                            h[*idx].clone()
                        } else {
                            let mut r = &h[*idx] % modulus;
                            if r.is_negative() {
                                r += modulus;
                            }
                            r
                        }
                    })
                    .collect())
            }
            Proj::Zp {
                kernel,
                reducers,
                reducer_pivots,
                free_cols,
            } => {
                let p = kernel.p;
                let bp: Vec<u64> = cocycle
                    .iter()
                    .map(|v| crate::ring::big_to_i128(&Ring::Zp(p).reduce_big(v)) as u64)
                    .collect();
                let mut c = kernel.solve(&bp).ok_or(LaError::NotACocycle)?;
                for (r, &pc) in reducer_pivots.iter().enumerate() {
                    let f = c[pc] as u128;
                    if f != 0 {
                        let pp = p as u128;
                        for j in 0..c.len() {
                            let v = (c[j] as u128 + pp - f * reducers.get(r, j) as u128 % pp) % pp;
                            c[j] = v as u64;
                        }
                    }
                }
                Ok(free_cols.iter().map(|&j| BigInt::from(c[j])).collect())
            }
        }
    }

    /// Membership of `target` in the subgroup generated by `gens`, all given
    /// in projected coordinates.
    pub fn class_in_subgroup(&self, gens: &[Vec<BigInt>], target: &[BigInt]) -> bool {
        let dim = self.dim();
        assert_eq!(target.len(), dim);
        match self.ring {
            Ring::Z => {
                let mut cols: Vec<Vec<BigInt>> = gens.to_vec();
                for (t, modulus) in self.torsion.iter().enumerate() {
                    let mut rel = vec![BigInt::zero(); dim];
                    rel[self.free_rank + t] = modulus.clone();
                    cols.push(rel);
                }
                if cols.is_empty() {
                    return target.iter().all(Zero::is_zero);
                }
                let m = IntMat::hcat_cols(&cols, dim);
                solve_z(&m, target).is_some()
            }
            Ring::Zp(p) => {
                if gens.is_empty() {
                    return target
                        .iter()
                        .all(|t| Ring::Zp(p).reduce_big(t).is_zero());
                }
                let m = IntMat::hcat_cols(gens, dim);
                let fp = FpMat::from_int(&m, p);
                let bp: Vec<u64> = target
                    .iter()
                    .map(|v| crate::ring::big_to_i128(&Ring::Zp(p).reduce_big(v)) as u64)
                    .collect();
                fp.solve(&bp).is_some()
            }
        }
    }

    /// Generators of the subgroup spanned by `gens` in canonical (Smith) form;
    /// used for reporting indeterminacy subgroups deterministically.
    pub fn subgroup_canonical(&self, gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let dim = self.dim();
        if gens.is_empty() || dim == 0 {
            return Vec::new();
        }
        match self.ring {
            Ring::Z => {
                let m = IntMat::hcat_cols(gens, dim);
                let snf = smith_normal_form(&m);
                // columns of U^{-1} D span the same lattice as M V = U^{-1} D
                let ud = snf.u_inv.mul(&snf.d);
                let mut out = Vec::new();
                for j in 0..ud.cols.min(snf.rank) {
                    let col = ud.col(j);
                    if col.iter().any(|v| !v.is_zero()) {
                        out.push(col);
                    }
                }
                out
            }
            Ring::Zp(p) => {
                let m = IntMat::hcat_cols(gens, dim);
                let fp = FpMat::from_int(&m, p);
                // row space of the transpose = column space generators
                let mut t = FpMat::zero(p, fp.cols, fp.rows);
                for i in 0..fp.rows {
                    for j in 0..fp.cols {
                        t.set(j, i, fp.get(i, j));
                    }
                }
                let pivots = t.rref();
                (0..pivots.len())
                    .map(|r| (0..t.cols).map(|j| BigInt::from(t.get(r, j))).collect())
                    .collect()
            }
        }
    }
}

/// Presentation of `ker(d_out)/im(d_in)` over the given ring. `d_out` maps
/// degree-`n` cochains forward, `d_in` maps into them; the composite must be
/// zero.
pub fn cohomology(
    d_out: &IntMat,
    d_in: &IntMat,
    ring: Ring,
    degree: usize,
) -> Result<CohomologyPresentation, LaError> {
    if d_out.cols != d_in.rows {
        return Err(LaError::Dimension(format!(
            "d_out cols {} vs d_in rows {}",
            d_out.cols, d_in.rows
        )));
    }
    match ring {
        Ring::Z => {
            if !d_out.mul(d_in).is_zero() {
                return Err(LaError::CompositionNonzero);
            }
            let kernel = kernel_z(d_out);
            let kernel_snf = smith_normal_form(&kernel);
            let mut ycols = Vec::new();
            for j in 0..d_in.cols {
                let col = d_in.col(j);
                let y = solve_with_snf(&kernel_snf, &col, kernel.cols)
                    .expect("image of d_in must lie in ker(d_out)");
                ycols.push(y);
            }
            let k = kernel.cols;
            let y = IntMat::hcat_cols(&ycols, k);
            let ysnf = smith_normal_form(&y);
            let mut retained: Vec<(usize, BigInt)> = Vec::new();
            let mut torsion = Vec::new();
            for idx in 0..k {
                if ysnf.diag(idx).is_zero() {
                    retained.push((idx, BigInt::zero()));
                }
            }
            let free_rank = retained.len();
            for idx in 0..y.rows.min(y.cols) {
                let d = ysnf.diag(idx);
                if !d.is_zero() && d != BigInt::one() {
                    retained.push((idx, d.clone()));
                    torsion.push(d);
                }
            }
            let mut cocycle_basis = Vec::new();
            for (idx, _) in &retained {
                let gen_in_kernel = ysnf.u_inv.col(*idx);
                cocycle_basis.push(kernel.mul_vec(&gen_in_kernel));
            }
            Ok(CohomologyPresentation {
                ring,
                degree,
                free_rank,
                torsion,
                cocycle_basis,
                proj: Proj::Z {
                    kernel,
                    kernel_snf,
                    uy: ysnf.u.clone(),
                    retained,
                },
            })
        }
        Ring::Zp(p) => {
            let out_p = FpMat::from_int(d_out, p);
            let in_p = FpMat::from_int(d_in, p);
            for j in 0..in_p.cols {
                let col: Vec<u64> = (0..in_p.rows).map(|i| in_p.get(i, j)).collect();
                if out_p.mul_vec(&col).iter().any(|&v| v != 0) {
                    return Err(LaError::CompositionNonzero);
                }
            }
            let kernel = out_p.kernel();
            let k = kernel.cols;
            let mut reducers = FpMat::zero(p, in_p.cols, k);
            for j in 0..in_p.cols {
                let col: Vec<u64> = (0..in_p.rows).map(|i| in_p.get(i, j)).collect();
                let y = kernel.solve(&col).expect("image must lie in kernel");
                for (i, yi) in y.iter().enumerate() {
                    reducers.set(j, i, *yi);
                }
            }
            let reducer_pivots = reducers.rref();
            let free_cols: Vec<usize> = (0..k).filter(|c| !reducer_pivots.contains(c)).collect();
            let free_rank = free_cols.len();
            let mut cocycle_basis = Vec::new();
            for &j in &free_cols {
                let vals: Vec<BigInt> = (0..kernel.rows)
                    .map(|i| BigInt::from(kernel.get(i, j)))
                    .collect();
                cocycle_basis.push(vals);
            }
            Ok(CohomologyPresentation {
                ring,
                degree,
                free_rank,
                torsion: Vec::new(),
                cocycle_basis,
                proj: Proj::Zp {
                    kernel,
                    reducers,
                    reducer_pivots,
                    free_cols,
                },
            })
        }
    }
}

/// Solves `M x = b` over the requested ring with `BigInt` I/O.
pub fn solve(m: &IntMat, b: &[BigInt], ring: Ring) -> Option<Vec<BigInt>> {
    match ring {
        Ring::Z => solve_z(m, b),
        Ring::Zp(p) => {
            let fp = FpMat::from_int(m, p);
            let bp: Vec<u64> = b
                .iter()
                .map(|v| crate::ring::big_to_i128(&Ring::Zp(p).reduce_big(v)) as u64)
                .collect();
            fp.solve(&bp)
                .map(|x| x.into_iter().map(BigInt::from).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    #[test]
    fn snf_small_examples() {
        let m = IntMat::from_rows(vec![vec![2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag(0), BigInt::from(2));

        let m = IntMat::from_rows(vec![vec![1, 0], vec![0, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag(0), BigInt::from(1));
        assert_eq!(s.diag(1), BigInt::from(0));

        // oracle: gcd of entries is 2 and |det| = 8, so D = diag(2, 4)
        let m = IntMat::from_rows(vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(m.det().abs(), BigInt::from(8));
        let s = smith_normal_form(&m);
        assert_eq!(s.diag(0), BigInt::from(2));
        assert_eq!(s.diag(1), BigInt::from(4));
    }

    fn random_mat(s: &mut Sampler, rows: usize, cols: usize) -> IntMat {
        IntMat::from_fn(rows, cols, |_, _| BigInt::from(s.int(-9, 9)))
    }

    #[test]
    fn snf_reconstruction_and_unimodularity() {
        let mut s = Sampler::new(11);
        for trial in 0..40 {
            let rows = s.usize(1, 12);
            let cols = s.usize(1, 12);
            let m = random_mat(&mut s, rows, cols);
            let snf = smith_normal_form(&m);
            assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d, "trial {trial}");
            assert_eq!(snf.u_inv.mul(&snf.d).mul(&snf.v_inv), m);
            assert_eq!(snf.u.mul(&snf.u_inv), IntMat::identity(rows));
            assert_eq!(snf.v.mul(&snf.v_inv), IntMat::identity(cols));
            assert_eq!(snf.u.det().abs(), BigInt::one());
            assert_eq!(snf.v.det().abs(), BigInt::one());
            for k in 1..rows.min(cols) {
                let prev = snf.diag(k - 1);
                let cur = snf.diag(k);
                if !cur.is_zero() {
                    assert!(!prev.is_zero());
                    assert!((cur % prev).is_zero());
                }
            }
        }
    }

    #[test]
    fn solve_z_verified() {
        let mut s = Sampler::new(5);
        let mut solved = 0;
        for _ in 0..60 {
            let rows = s.usize(1, 6);
            let cols = s.usize(1, 6);
            let m = random_mat(&mut s, rows, cols);
            let b: Vec<BigInt> = (0..rows).map(|_| BigInt::from(s.int(-9, 9))).collect();
            if let Some(x) = solve_z(&m, &b) {
                assert_eq!(m.mul_vec(&x), b);
                solved += 1;
            }
        }
        assert!(solved > 0);
    }

    #[test]
    fn solve_no_solution_cross_checked_exhaustively() {
        let mut s = Sampler::new(9);
        for p in [2u64, 3] {
            for _ in 0..25 {
                let rows = s.usize(1, 4);
                let cols = s.usize(1, 6);
                let m = IntMat::from_fn(rows, cols, |_, _| BigInt::from(s.int(0, p as i128 - 1)));
                let b: Vec<BigInt> = (0..rows)
                    .map(|_| BigInt::from(s.int(0, p as i128 - 1)))
                    .collect();
                let got = solve(&m, &b, Ring::Zp(p));
                let mut found = false;
                let total = (p as usize).pow(cols as u32);
                'outer: for mask in 0..total {
                    let mut x = Vec::with_capacity(cols);
                    let mut rem = mask;
                    for _ in 0..cols {
                        x.push(BigInt::from((rem % p as usize) as u64));
                        rem /= p as usize;
                    }
                    let mx = m.mul_vec(&x);
                    for (got, want) in mx.iter().zip(b.iter()) {
                        if Ring::Zp(p).reduce_big(&(got - want)) != BigInt::zero() {
                            continue 'outer;
                        }
                    }
                    found = true;
                    break;
                }
                assert_eq!(got.is_some(), found);
                if let Some(x) = got {
                    let mx = m.mul_vec(&x);
                    for (got, want) in mx.iter().zip(b.iter()) {
                        assert_eq!(Ring::Zp(p).reduce_big(&(got - want)), BigInt::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_columns_annihilate() {
        let mut s = Sampler::new(21);
        for _ in 0..20 {
            let rows = s.usize(1, 6);
            let cols = s.usize(1, 6);
            let m = random_mat(&mut s, rows, cols);
            let k = kernel_z(&m);
            for j in 0..k.cols {
                let col = k.col(j);
                assert!(m.mul_vec(&col).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn fp_kernel_and_rank() {
        let m = IntMat::from_rows(vec![vec![1, 2, 0], vec![2, 4, 0]]);
        let fp = FpMat::from_int(&m, 5);
        assert_eq!(fp.rank(), 1);
        let k = fp.kernel();
        assert_eq!(k.cols, 2);
        for j in 0..k.cols {
            let col: Vec<u64> = (0..k.rows).map(|i| k.get(i, j)).collect();
            assert!(fp.mul_vec(&col).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn cohomology_presentation_invariants() {
        let mut s = Sampler::new(33);
        for ring in [Ring::Z, Ring::Zp(3)] {
            for _ in 0..12 {
                let n1 = s.usize(1, 5);
                let n2 = s.usize(1, 5);
                let d_in = random_mat(&mut s, n2, n1);
                // any matrix whose rows annihilate the image gives a complex
                let k = kernel_z(&d_in.transpose());
                let d_out = k.transpose();
                let pres = cohomology(&d_out, &d_in, ring, 1).unwrap();
                for j in 0..d_in.cols {
                    let col = d_in.col(j);
                    let proj = pres.project(&col).unwrap();
                    assert!(
                        proj.iter().all(Zero::is_zero),
                        "coboundary must project to 0"
                    );
                }
                for (i, gen) in pres.cocycle_basis.iter().enumerate() {
                    let proj = pres.project(gen).unwrap();
                    for (j, v) in proj.iter().enumerate() {
                        let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                        assert_eq!(*v, expect, "generator {i} coordinate {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_membership_z() {
        // free module Z^2 presented as cohomology of zero maps
        let d_out = IntMat::zero(0, 2);
        let d_in = IntMat::zero(2, 0);
        let pres = cohomology(&d_out, &d_in, Ring::Z, 2).unwrap();
        assert_eq!(pres.free_rank, 2);
        let gens = vec![
            vec![BigInt::from(2), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(3)],
        ];
        assert!(pres.class_in_subgroup(&gens, &[BigInt::from(4), BigInt::from(3)]));
        assert!(!pres.class_in_subgroup(&gens, &[BigInt::one(), BigInt::zero()]));
        assert!(pres.class_in_subgroup(&[], &[BigInt::zero(), BigInt::zero()]));
    }
}
