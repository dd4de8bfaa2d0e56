//! Integer lattices in Hermite normal form, used to grade quotient rings by
//! `Z^n / L` where `L` is spanned by exponent differences inside generators.

/// A sublattice of `Z^n` kept in row echelon form with positive pivots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_generators<I>(dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let mut l = Self::zero(dim);
        for g in gens {
            l.insert(g);
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<i64>) {
        assert_eq!(v.len(), self.dim, "lattice vector of wrong length");
        loop {
            let Some(c) = v.iter().position(|&x| x != 0) else { return };
            match self.pivots.iter().position(|&p| p == c) {
                Some(r) => {
                    let row = &self.rows[r];
                    let (a, b) = (row[c], v[c]);
                    let (g, x, y) = ext_gcd(a, b);
                    let (ra, rb) = (a / g, b / g);
                    let combined: Vec<i64> = row.iter().zip(&v).map(|(&p, &q)| x * p + y * q).collect();
                    let rest: Vec<i64> = row.iter().zip(&v).map(|(&p, &q)| ra * q - rb * p).collect();
                    self.rows[r] = combined;
                    v = rest;
                }
                None => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    let at = self.pivots.iter().position(|&p| p > c).unwrap_or(self.pivots.len());
                    self.pivots.insert(at, c);
                    self.rows.insert(at, v);
                    return;
                }
            }
        }
    }

    /// Canonical representative of `v + L`: every pivot coordinate is brought
    /// into `[0, pivot)`.
    pub fn reduce(&self, v: &mut [i64]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = v[c].div_euclid(row[c]);
            if q != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fermat_differences() {
        let l = Lattice::from_generators(3, vec![vec![3, -3, 0], vec![3, 0, -3], vec![0, 3, -3]]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&[6, -3, -3]));
        assert!(!l.contains(&[1, -1, 0]));
        let mut a = vec![4, 1, 0];
        let mut b = vec![1, 4, 0];
        l.reduce(&mut a);
        l.reduce(&mut b);
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn reduction_is_canonical(
            gens in proptest::collection::vec(proptest::collection::vec(-4i64..5, 3), 0..4),
            v in proptest::collection::vec(-6i64..7, 3),
            coeffs in proptest::collection::vec(-3i64..4, 4),
        ) {
            let l = Lattice::from_generators(3, gens.clone());
            let mut shifted = v.clone();
            for (g, c) in gens.iter().zip(&coeffs) {
                for k in 0..3 {
                    shifted[k] += c * g[k];
                }
            }
            let mut a = v.clone();
            l.reduce(&mut a);
            l.reduce(&mut shifted);
            prop_assert_eq!(&a, &shifted);
            for g in &gens {
                prop_assert!(l.contains(g));
            }
        }
    }
}
