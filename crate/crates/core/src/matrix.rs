//! Graded matrices and rank computations over F_p.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Sparse vector: strictly increasing positions, nonzero values.
pub type SparseVec = Vec<(u32, u32)>;

/// A matrix whose rows and columns carry degrees.
#[derive(Clone, Debug)]
pub struct GradedMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    /// Column-major sparse storage.
    columns: Vec<SparseVec>,
    row_degrees: Vec<i32>,
    col_degrees: Vec<i32>,
}

impl GradedMatrix {
    pub fn new(field: PrimeField, row_degrees: Vec<i32>, col_degrees: Vec<i32>) -> Self {
        let rows = row_degrees.len();
        let cols = col_degrees.len();
        Self { field, rows, cols, columns: vec![Vec::new(); cols], row_degrees, col_degrees }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_degrees(&self) -> &[i32] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i32] {
        &self.col_degrees
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Adds `value` to entry `(r, c)`.
    pub fn add_entry(&mut self, r: usize, c: usize, value: u32) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::Structural(format!("entry ({r},{c}) outside {}x{}", self.rows, self.cols)));
        }
        let k = self.field;
        let col = &mut self.columns[c];
        match col.binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(i) => {
                col[i].1 = k.add(col[i].1, value);
                if col[i].1 == 0 {
                    col.remove(i);
                }
            }
            Err(i) => {
                if !value.is_multiple_of(k.characteristic()) {
                    col.insert(i, (r as u32, value % k.characteristic()));
                }
            }
        }
        Ok(())
    }

    pub fn entry(&self, r: usize, c: usize) -> u32 {
        self.columns[c]
            .binary_search_by_key(&(r as u32), |e| e.0)
            .map(|i| self.columns[c][i].1)
            .unwrap_or(0)
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn rank(&self, budget: &Budget) -> Result<usize> {
        rank(self.field, self.rows, self.columns.clone(), budget)
    }

    /// Rank of the submatrix of rows and columns of one degree.
    pub fn rank_in_degree(&self, degree: i32, budget: &Budget) -> Result<usize> {
        let mut row_map = vec![u32::MAX; self.rows];
        let mut n = 0u32;
        for (r, &d) in self.row_degrees.iter().enumerate() {
            if d == degree {
                row_map[r] = n;
                n += 1;
            }
        }
        let cols: Vec<SparseVec> = (0..self.cols)
            .filter(|&c| self.col_degrees[c] == degree)
            .map(|c| {
                self.columns[c]
                    .iter()
                    .filter(|e| row_map[e.0 as usize] != u32::MAX)
                    .map(|e| (row_map[e.0 as usize], e.1))
                    .collect()
            })
            .collect();
        rank(self.field, n as usize, cols, budget)
    }
}

/// Rank of the span of `vectors`, each a sparse vector in a space of
/// dimension `dim`. Chooses dense or sparse elimination by size.
pub fn rank(field: PrimeField, dim: usize, mut vectors: Vec<SparseVec>, budget: &Budget) -> Result<usize> {
    vectors.retain(|v| !v.is_empty());
    if vectors.is_empty() || dim == 0 {
        return Ok(0);
    }
    let nnz: usize = vectors.iter().map(|v| v.len()).sum();
    budget.check_matrix(nnz, "rank")?;
    let n = vectors.len();
    if (dim as u64) * (n.min(dim) as u64) <= 4_000_000 {
        return dense_rank(field, dim, &vectors, budget);
    }
    sparse_rank(field, dim, vectors, budget)
}

/// Dense elimination. The matrix is stored with the smaller side as rows'
/// length so that at most `min(dim, n)` pivots are searched.
pub fn dense_rank(field: PrimeField, dim: usize, vectors: &[SparseVec], budget: &Budget) -> Result<usize> {
    let p = field.characteristic() as u64;
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = vec![0u32; dim];
    for v in vectors {
        if basis.len() == dim {
            break;
        }
        row.iter_mut().for_each(|x| *x = 0);
        for &(i, c) in v {
            row[i as usize] = c;
        }
        for (b, &piv) in basis.iter().zip(&pivots) {
            let c = row[piv];
            if c == 0 {
                continue;
            }
            let m = p - c as u64;
            for j in piv..dim {
                if b[j] != 0 {
                    row[j] = ((row[j] as u64 + m * b[j] as u64) % p) as u32;
                }
            }
        }
        if let Some(piv) = row.iter().position(|&x| x != 0) {
            let inv = field.inv(row[piv]) as u64;
            let normalized: Vec<u32> = row.iter().map(|&x| ((x as u64 * inv) % p) as u32).collect();
            basis.push(normalized);
            pivots.push(piv);
        }
        budget.charge(basis.len() as u64 + 1, "dense rank")?;
    }
    Ok(basis.len())
}

/// Sparse incremental echelon form. Positions are relabelled so that rarely
/// used positions become leading positions first, which keeps fill low.
pub fn sparse_rank(field: PrimeField, dim: usize, mut vectors: Vec<SparseVec>, budget: &Budget) -> Result<usize> {
    let mut count = vec![0u32; dim];
    for v in &vectors {
        for &(i, _) in v {
            count[i as usize] += 1;
        }
    }
    let mut order: Vec<u32> = (0..dim as u32).collect();
    order.sort_by_key(|&i| (count[i as usize], i));
    let mut relabel = vec![0u32; dim];
    for (new, &old) in order.iter().enumerate() {
        relabel[old as usize] = new as u32;
    }
    for v in &mut vectors {
        for e in v.iter_mut() {
            e.0 = relabel[e.0 as usize];
        }
        v.sort_unstable_by_key(|e| e.0);
    }
    vectors.sort_by_key(|v| (v.len(), v.first().map(|e| e.0)));

    let p = field.characteristic() as u64;
    let mut pivot_rows: Vec<Option<SparseVec>> = vec![None; dim];
    let mut acc = vec![0u32; dim];
    let mut touched = vec![false; dim];
    let mut rank = 0usize;
    let max_rank = dim.min(vectors.len());
    for v in &vectors {
        if rank == max_rank {
            break;
        }
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::with_capacity(v.len() * 2);
        for &(i, c) in v {
            acc[i as usize] = c;
            touched[i as usize] = true;
            heap.push(Reverse(i));
        }
        let mut result: SparseVec = Vec::new();
        let mut work = 0u64;
        while let Some(Reverse(i)) = heap.pop() {
            let iu = i as usize;
            if !touched[iu] {
                continue;
            }
            touched[iu] = false;
            let c = acc[iu];
            acc[iu] = 0;
            if c == 0 {
                continue;
            }
            match &pivot_rows[iu] {
                Some(row) if result.is_empty() => {
                    let m = p - c as u64;
                    for &(j, b) in &row[1..] {
                        let ju = j as usize;
                        acc[ju] = ((acc[ju] as u64 + m * b as u64) % p) as u32;
                        if !touched[ju] {
                            touched[ju] = true;
                            heap.push(Reverse(j));
                        }
                    }
                    work += row.len() as u64;
                }
                _ => result.push((i, c)),
            }
        }
        budget.charge(work / 16 + 1, "sparse rank")?;
        if let Some(&(lead, c)) = result.first() {
            let inv = field.inv(c) as u64;
            for e in result.iter_mut() {
                e.1 = ((e.1 as u64 * inv) % p) as u32;
            }
            pivot_rows[lead as usize] = Some(result);
            rank += 1;
        }
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn graded_matrix_entries_and_rank() {
        let mut m = GradedMatrix::new(k(), vec![1, 1, 2], vec![1, 1, 2]);
        m.add_entry(0, 0, 1).unwrap();
        m.add_entry(1, 1, 3).unwrap();
        m.add_entry(2, 2, 5).unwrap();
        m.add_entry(2, 2, 96).unwrap();
        assert_eq!(m.entry(2, 2), 0);
        assert_eq!(m.rank(&Budget::unlimited()).unwrap(), 2);
        assert_eq!(m.rank_in_degree(1, &Budget::unlimited()).unwrap(), 2);
        assert_eq!(m.rank_in_degree(2, &Budget::unlimited()).unwrap(), 0);
        assert!(m.add_entry(3, 0, 1).is_err());
    }

    #[test]
    fn sparse_and_dense_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let dim = rng.gen_range(1..40);
            let n = rng.gen_range(1..40);
            // low-rank by construction: combinations of a few generators
            let gens: Vec<Vec<u32>> =
                (0..rng.gen_range(1..8)).map(|_| (0..dim).map(|_| rng.gen_range(0..101)).collect()).collect();
            let vecs: Vec<SparseVec> = (0..n)
                .map(|_| {
                    let mut d = vec![0u64; dim];
                    for g in &gens {
                        let c = rng.gen_range(0..3u64);
                        for (x, y) in d.iter_mut().zip(g) {
                            *x = (*x + c * *y as u64) % 101;
                        }
                    }
                    d.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x as u32)).collect()
                })
                .collect();
            let b = Budget::unlimited();
            let a = dense_rank(k(), dim, &vecs, &b).unwrap();
            let s = sparse_rank(k(), dim, vecs.clone(), &b).unwrap();
            assert_eq!(a, s);
            assert!(a <= gens.len());
        }
    }
}
