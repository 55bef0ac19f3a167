//! Exact linear algebra over the prime field F_p (p an odd prime).
//!
//! Matrices act on row vectors from the right: `v · g`. The canonical form
//! for subspaces is the reduced row echelon basis, so equality of subspaces
//! is structural equality.

use crate::{is_prime, Error, Result};

/// Dense matrix over F_p with entries stored as least nonnegative residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::invalid(format!("modulus {p} is not an odd prime")));
    }
    Ok(())
}

/// a^e mod p by square-and-multiply.
pub fn pow_mod(a: u64, mut e: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

impl FpMatrix {
    pub fn new(p: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        check_odd_prime(p)?;
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(FpMatrix {
            p,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::invalid("ragged row list"));
        }
        Self::new(p, r, c, rows.concat())
    }

    pub fn zero(p: u64, rows: usize, cols: usize) -> Result<Self> {
        Self::new(p, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zero(p, n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Matrix product; panics on shape or modulus mismatch.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut out[i * other.cols + j];
                    *cell = (*cell + a * other.entries[k * other.cols + j]) % self.p;
                }
            }
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            entries: out,
        }
    }

    /// Row vector times matrix.
    pub fn act_on_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![0u64; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (cell, &entry) in out.iter_mut().zip(self.row(i)) {
                *cell = (*cell + vi * entry) % self.p;
            }
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = vec![0u64; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        FpMatrix {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            entries: out,
        }
    }

    /// self − other, entrywise.
    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p, "modulus mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Determinant by elimination mod p; inverses are taken at pivots only.
    pub fn det(&self) -> u64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let p = self.p;
        let mut a = self.entries.clone();
        let mut det = 1u64;
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| a[r * n + col] != 0);
            let Some(pr) = pivot_row else { return 0 };
            if pr != col {
                for j in 0..n {
                    a.swap(pr * n + j, col * n + j);
                }
                det = (p - det) % p;
            }
            let pivot = a[col * n + col];
            det = det * pivot % p;
            let pivot_inv = inv_mod(pivot, p);
            for r in col + 1..n {
                let factor = a[r * n + col] * pivot_inv % p;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = factor * a[col * n + j] % p;
                    a[r * n + j] = (a[r * n + j] + p - sub) % p;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.det() != 0
    }
}

/// Subspace of F_p^n held as a reduced-row-echelon basis (unique form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpSubspace {
    p: u64,
    ambient_dim: usize,
    basis: Vec<Vec<u64>>,
}

impl FpSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for row in &self.basis {
            let lead = row.iter().position(|&x| x != 0).unwrap();
            if v[lead] != 0 {
                let f = v[lead];
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = (*vi + p * f - f * ri % p) % p;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// In-place Gauss-Jordan; returns the pivot columns.
fn rref_in_place(p: u64, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        let Some(pr) = (next_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(next_row, pr);
        let inv = inv_mod(rows[next_row][col], p);
        for x in rows[next_row].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && row[col] != 0 {
                let f = row[col];
                for (cell, &pv) in row.iter_mut().zip(&pivot_row) {
                    let sub = f * pv % p;
                    *cell = (*cell + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    rows.truncate(next_row);
    pivots
}

/// Reduced row echelon form; the row space is preserved.
pub fn rref(m: &FpMatrix) -> FpMatrix {
    let mut rows: Vec<Vec<u64>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    rref_in_place(m.p, &mut rows);
    while rows.len() < m.rows {
        rows.push(vec![0; m.cols]);
    }
    FpMatrix::from_rows(m.p, &rows).unwrap()
}

pub fn rank(m: &FpMatrix) -> usize {
    let mut rows: Vec<Vec<u64>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    rref_in_place(m.p, &mut rows).len()
}

/// Right null space { v : M v^T = 0 }, i.e. solutions over the column index.
pub fn kernel(m: &FpMatrix) -> FpSubspace {
    let p = m.p;
    let mut rows: Vec<Vec<u64>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let pivots = rref_in_place(p, &mut rows);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u64; m.cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            // pivot variable = -coefficient of the free column
            v[pc] = (p - rows[r][free]) % p;
        }
        basis.push(v);
    }
    rref_in_place(p, &mut basis);
    FpSubspace {
        p,
        ambient_dim: m.cols,
        basis,
    }
}

/// Simultaneous fixed space of row-vector actions: { v : v·g = v for all g }.
/// Generators suffice; the fixed space of the generated group is the same.
pub fn fixed_subspace(mats: &[FpMatrix], dim: usize) -> Result<FpSubspace> {
    let p = match mats.first() {
        Some(m) => m.p,
        None => {
            return Err(Error::invalid("fixed_subspace needs at least one matrix"));
        }
    };
    let mut stacked: Vec<Vec<u64>> = Vec::new();
    for g in mats {
        if !g.is_square() || g.rows != dim {
            return Err(Error::invalid(format!(
                "fixed_subspace expects square {dim}x{dim} matrices"
            )));
        }
        if g.p != p {
            return Err(Error::invalid("mixed moduli"));
        }
        if !g.is_invertible() {
            return Err(Error::invalid("singular matrix in group action"));
        }
        // v·g = v  <=>  (g − I)^T v^T = 0
        let gt = g.sub(&FpMatrix::identity(p, dim)?).transpose();
        for r in 0..dim {
            stacked.push(gt.row(r).to_vec());
        }
    }
    let m = FpMatrix::from_rows(p, &stacked)?;
    Ok(kernel(&m))
}

/// All of GL_m(F_p) by exhaustive enumeration, sorted.
pub fn gl_full(m: usize, p: u64, cap: u64) -> Result<Vec<FpMatrix>> {
    check_odd_prime(p)?;
    let total = (p as u128)
        .checked_pow((m * m) as u32)
        .ok_or_else(|| Error::limit(format!("p^(m^2) overflows for m={m}, p={p}")))?;
    if total > cap as u128 {
        return Err(Error::limit(format!(
            "enumerating {total} matrices exceeds cap {cap}"
        )));
    }
    let mut out = Vec::new();
    let mut digits = vec![0u64; m * m];
    loop {
        let cand = FpMatrix {
            p,
            rows: m,
            cols: m,
            entries: digits.clone(),
        };
        if cand.det() != 0 {
            out.push(cand);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                out.sort();
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// GL_m^+(F_p): the kernel of det^((p−1)/2), i.e. matrices whose determinant
/// is a nonzero square. Index 2 in GL_m(F_p) for odd p.
pub fn gl_plus(m: usize, p: u64, cap: u64) -> Result<Vec<FpMatrix>> {
    let all = gl_full(m, p, cap)?;
    Ok(all
        .into_iter()
        .filter(|g| pow_mod(g.det(), (p - 1) / 2, p) == 1)
        .collect())
}

/// Closure of a set of invertible matrices under multiplication, sorted.
pub fn matrix_closure(gens: &[FpMatrix], cap: u64) -> Result<Vec<FpMatrix>> {
    let Some(first) = gens.first() else {
        return Err(Error::invalid(
            "matrix_closure needs at least one generator",
        ));
    };
    let n = first.rows;
    let p = first.p;
    for g in gens {
        if !g.is_square() || g.rows != n || g.p != p {
            return Err(Error::invalid("mixed shapes in matrix_closure"));
        }
        if !g.is_invertible() {
            return Err(Error::invalid("singular generator"));
        }
    }
    let mut seen: std::collections::BTreeSet<FpMatrix> = std::collections::BTreeSet::new();
    let mut frontier = vec![FpMatrix::identity(p, n)?];
    seen.insert(frontier[0].clone());
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::limit(format!("matrix closure exceeds cap {cap}")));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
