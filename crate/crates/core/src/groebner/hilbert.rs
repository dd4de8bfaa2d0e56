//! Hilbert series of quotients by monomial (leading-term) ideals.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::Ring;

use super::GroebnerBasis;

/// Hilbert series `numerator(t) / (1 - t)^n_vars` of `S/I` for a standard
/// graded ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub n_vars: usize,
}

impl HilbertSeries {
    /// Coefficient of `t^d`.
    pub fn function(&self, d: u32) -> u64 {
        let n = self.n_vars as i64;
        let mut total: i128 = 0;
        for (k, &c) in self.numerator.iter().enumerate() {
            let k = k as i64;
            if k > d as i64 || c == 0 {
                continue;
            }
            total += c as i128 * binomial((d as i64 - k + n - 1) as u64, (n - 1).max(0) as u64) as i128;
        }
        if n == 0 {
            total = self.numerator.get(d as usize).copied().unwrap_or(0) as i128;
        }
        debug_assert!(total >= 0);
        total as u64
    }

    /// `(h-vector, dimension)` with `numerator = h(t) (1-t)^(n - dim)` and
    /// `h(1) != 0`.
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        let mut h = self.numerator.clone();
        let mut codim = 0;
        while codim < self.n_vars && !h.is_empty() && h.iter().sum::<i64>() == 0 {
            // divide by (1 - t)
            let mut q = vec![0i64; h.len() - 1];
            let mut carry = 0i64;
            for i in 0..h.len() - 1 {
                carry += h[i];
                q[i] = carry;
            }
            h = q;
            codim += 1;
        }
        trim(&mut h);
        (h, self.n_vars - codim)
    }

    pub fn dimension(&self) -> usize {
        self.reduced().1
    }

    pub fn multiplicity(&self) -> i64 {
        self.reduced().0.iter().sum()
    }

    /// Top degree with a nonzero value, for finite-length quotients.
    pub fn top_degree(&self) -> Option<usize> {
        let (h, dim) = self.reduced();
        if dim == 0 {
            h.iter().rposition(|&c| c != 0)
        } else {
            None
        }
    }

    pub fn is_zero_ring(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }

    /// Numerator after multiplying the series by `(1 - t^d)`.
    pub fn times_one_minus_t_pow(&self, d: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.numerator.len() + d];
        for (i, &c) in self.numerator.iter().enumerate() {
            out[i] += c;
            out[i + d] -= c;
        }
        trim(&mut out);
        out
    }
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series of `S/(gens)` with `gens`
/// monomials, by pivot recursion.
pub fn monomial_numerator(gens: &[Monomial], n_vars: usize) -> Vec<i64> {
    let mut out = numerator_rec(minimalize(gens.to_vec()), n_vars);
    trim(&mut out);
    if out.is_empty() {
        out.push(0);
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>, n: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // split off generators coprime to all others: they contribute (1 - t^d)
    let mut product = vec![1i64];
    let mut rest = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let isolated = gens.iter().enumerate().all(|(j, h)| i == j || g.is_coprime(h));
        if isolated {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] = -1;
            product = poly_mul(&product, &f);
        } else {
            rest.push(g.clone());
        }
    }
    if rest.is_empty() {
        return product;
    }
    // pivot: most frequent variable, median exponent among its occurrences
    let mut counts = vec![0usize; n];
    for g in &rest {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u16> = rest.iter().map(|g| g.exponents()[var]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pivot_exps = vec![0u16; n];
    pivot_exps[var] = e;
    let pivot = Monomial::from_exponents(&pivot_exps);

    // N(I) = N(I + p) + t^deg(p) N(I : p)
    let mut with_pivot = rest.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|g| {
            let ex: Vec<u16> = g
                .exponents()
                .iter()
                .zip(pivot.exponents())
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect();
            Monomial::from_exponents(&ex)
        })
        .collect();
    let mut a = numerator_rec(minimalize(with_pivot), n);
    let b = numerator_rec(minimalize(colon), n);
    poly_add_shifted(&mut a, &b, e as usize);
    poly_mul(&product, &a)
}

/// Hilbert series of `S/I` from a Gröbner basis (standard grading).
pub fn hilbert_numerator(gb: &GroebnerBasis) -> Result<HilbertSeries> {
    if gb.ring().weights().iter().any(|&w| w != 1) {
        return Err(Error::Structural("Hilbert series requires the standard grading".into()));
    }
    let n = gb.ring().n_vars();
    Ok(HilbertSeries { numerator: monomial_numerator(&gb.leading_monomials(), n), n_vars: n })
}

/// Dimension of `(S/I)_d`.
pub fn hilbert_function(gb: &GroebnerBasis, d: u32) -> Result<u64> {
    Ok(hilbert_numerator(gb)?.function(d))
}

/// Degree-`d` monomials outside the leading-term ideal, in descending ring
/// order.
pub fn standard_monomials(gb: &GroebnerBasis, d: u32) -> Vec<Monomial> {
    standard_monomials_of(gb.ring(), &gb.leading_monomials(), d)
}

pub(crate) fn standard_monomials_of(ring: &Ring, leads: &[Monomial], d: u32) -> Vec<Monomial> {
    let n = ring.n_vars();
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    // depth-first over exponent vectors; a partial vector already divisible
    // by a leading term is pruned since divisibility is monotone
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, leads: &[Monomial], out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left as u16;
            let m = Monomial::from_exponents(cur);
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            let partial = Monomial::from_exponents(cur);
            if leads.iter().any(|l| l.divides(&partial)) {
                continue;
            }
            rec(i + 1, left - e, cur, leads, out);
        }
        cur[i] = 0;
    }
    if n > 0 {
        rec(0, d, &mut cur, leads, &mut out);
    }
    let order = ring.order();
    out.sort_by(|a, b| order.compare(b, a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::groebner::groebner;
    use crate::ideal::Ideal;
    use crate::monomial::{monomials_of_degree, MonomialOrder};
    use crate::poly::Polynomial;
    use crate::ring::RingDescriptor;

    fn twisted() -> GroebnerBasis {
        let i = Ideal::parse_text(
            "ring: p=32003 vars=[x0,x1,x2,x3] order=grevlex\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n",
        )
        .unwrap();
        groebner(&i, &Budget::unlimited()).unwrap()
    }

    #[test]
    fn free_ring_pieces() {
        let r = RingDescriptor::standard("x", 2, 101, MonomialOrder::Grevlex).unwrap();
        let gb = groebner(&Ideal::zero(&r), &Budget::unlimited()).unwrap();
        let sm = standard_monomials(&gb, 2);
        assert_eq!(sm.len(), 3);
        assert_eq!(sm[0], Monomial::from_exponents(&[2, 0]));
        for d in 0..10 {
            assert_eq!(hilbert_function(&gb, d).unwrap(), d as u64 + 1);
        }
        let r4 = RingDescriptor::standard("x", 4, 101, MonomialOrder::Grevlex).unwrap();
        let gb4 = groebner(&Ideal::zero(&r4), &Budget::unlimited()).unwrap();
        for d in 0..8 {
            assert_eq!(hilbert_function(&gb4, d).unwrap(), binomial(d as u64 + 3, 3));
        }
    }

    #[test]
    fn twisted_cubic_counts() {
        let gb = twisted();
        assert_eq!(standard_monomials(&gb, 2).len(), 7);
        for d in 0..15 {
            let by_enumeration = monomials_of_degree(4, d).into_iter().filter(|m| gb.is_standard(m)).count();
            assert_eq!(by_enumeration as u64, 3 * d as u64 + 1);
            assert_eq!(hilbert_function(&gb, d).unwrap(), 3 * d as u64 + 1);
            assert_eq!(standard_monomials(&gb, d).len() as u64, 3 * d as u64 + 1);
        }
        let hs = hilbert_numerator(&gb).unwrap();
        assert_eq!(hs.dimension(), 2);
        assert_eq!(hs.multiplicity(), 3);
    }

    #[test]
    fn plane_cubic_degree_five() {
        let r = RingDescriptor::new(vec!["x".into(), "y".into(), "z".into()], 32003, MonomialOrder::Grevlex).unwrap();
        let f = Polynomial::parse(&r, "y^2*z - x^3 - x^2*z").unwrap();
        let gb = groebner(&Ideal::new(&r, vec![f]).unwrap(), &Budget::unlimited()).unwrap();
        assert_eq!(hilbert_function(&gb, 5).unwrap(), 21 - 6);
    }

    #[test]
    fn artinian_top_degree() {
        let ms: Vec<Monomial> = [[2u16, 0, 0], [0, 2, 0], [0, 0, 2]].iter().map(|e| Monomial::from_exponents(e)).collect();
        let hs = HilbertSeries { numerator: monomial_numerator(&ms, 3), n_vars: 3 };
        assert_eq!(hs.reduced(), (vec![1, 3, 3, 1], 0));
        assert_eq!(hs.top_degree(), Some(3));
    }
}
