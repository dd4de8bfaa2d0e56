//! Free-module vectors and syzygies of homogeneous module elements.
//!
//! Syzygies of `f_1..f_s ∈ S^m` come from a Gröbner basis of the vectors
//! `(f_j, e_j) ∈ S^m ⊕ S^s` in a position-over-term order that ranks the
//! first `m` components highest; basis elements whose leading component lies
//! in the tag part have vanishing `S^m` part and generate the syzygy module.

use std::cmp::Ordering;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// A vector in a graded free module `⊕ S(-twists[c])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleVector {
    pub components: Vec<Polynomial>,
    pub twists: Vec<i32>,
}

impl FreeModuleVector {
    pub fn new(components: Vec<Polynomial>, twists: Vec<i32>) -> Result<Self> {
        if components.len() != twists.len() {
            return Err(Error::Structural("component and twist counts differ".into()));
        }
        if components.is_empty() {
            return Err(Error::Structural("vectors need at least one component".into()));
        }
        let ring = components[0].ring().clone();
        if components.iter().any(|c| !same_ring(c.ring(), &ring)) {
            return Err(Error::Structural("components live in different rings".into()));
        }
        Ok(Self { components, twists })
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Common degree `deg(component) + twist`, or `None` when not homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let mut degree = None;
        for (c, &t) in self.components.iter().zip(&self.twists) {
            if c.is_zero() {
                continue;
            }
            let d = c.homogeneous_degree()? as i32 + t;
            if degree.is_some_and(|e| e != d) {
                return None;
            }
            degree = Some(d);
        }
        degree
    }

    /// `Σ components[c] * targets[c]`.
    pub fn apply(&self, targets: &[Polynomial]) -> Result<Polynomial> {
        if targets.len() != self.rank() {
            return Err(Error::Structural("target count differs from the rank".into()));
        }
        let mut acc = Polynomial::zero(self.ring());
        for (c, t) in self.components.iter().zip(targets) {
            acc = acc.checked_add(&c.checked_mul(t)?)?;
        }
        Ok(acc)
    }
}

type Term = (u32, Monomial, u32);

#[derive(Clone)]
struct Vector {
    terms: Vec<Term>,
    degree: i32,
}

fn pot_cmp(order: MonomialOrder, a: &(u32, Monomial), b: &(u32, Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.compare(&a.1, &b.1))
}

fn sub_mul(ring: &Ring, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> Vec<Term> {
    let k = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let scaled = b.get(j).map(|(comp, mono, coef)| (*comp, mono.mul(m), *coef));
        let ord = match (a.get(i), &scaled) {
            (Some(x), Some(y)) => pot_cmp(order, &(x.0, x.1.clone()), &(y.0, y.1.clone())),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (comp, mono, coef) = scaled.unwrap();
                out.push((comp, mono, k.neg(k.mul(c, coef))));
                j += 1;
            }
            Ordering::Equal => {
                let (comp, mono, coef) = scaled.unwrap();
                let v = k.sub(a[i].2, k.mul(c, coef));
                if v != 0 {
                    out.push((comp, mono, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn reduce(ring: &Ring, mut f: Vec<Term>, basis: &[Vector], budget: &Budget) -> Result<Vec<Term>> {
    let k = ring.field();
    let mut done: Vec<Term> = Vec::new();
    while !f.is_empty() {
        let (comp, mono, coef) = f[0].clone();
        let reducer = basis.iter().find(|g| g.terms[0].0 == comp && g.terms[0].1.divides(&mono));
        match reducer {
            Some(g) => {
                budget.charge(1, "module reduction")?;
                let q = g.terms[0].1.quotient_of(&mono).unwrap();
                let c = k.mul(coef, k.inv(g.terms[0].2));
                f = sub_mul(ring, &f, c, &q, &g.terms);
            }
            None => {
                done.push(f.remove(0));
            }
        }
    }
    Ok(done)
}

fn s_vector(ring: &Ring, a: &Vector, b: &Vector) -> Option<Vector> {
    let (ca, ma, _) = &a.terms[0];
    let (cb, mb, _) = &b.terms[0];
    if ca != cb {
        return None;
    }
    let k = ring.field();
    let l = ma.lcm(mb);
    let qa = ma.quotient_of(&l).unwrap();
    let qb = mb.quotient_of(&l).unwrap();
    let scaled_a: Vec<Term> =
        a.terms.iter().map(|(c, m, v)| (*c, m.mul(&qa), k.mul(*v, k.inv(a.terms[0].2)))).collect();
    let terms = sub_mul(ring, &scaled_a, k.inv(b.terms[0].2), &qb, &b.terms);
    Some(Vector { terms, degree: a.degree + qa.degree() as i32 })
}

/// Generators of the syzygy module of homogeneous `gens`, as vectors in
/// `⊕_j S(-deg gens_j)`. The result is a Gröbner basis of the syzygy module,
/// not necessarily minimal.
pub fn syzygies(gens: &[FreeModuleVector], budget: &Budget) -> Result<Vec<FreeModuleVector>> {
    let Some(first) = gens.first() else {
        return Ok(vec![]);
    };
    let ring = first.ring().clone();
    if ring.weights().iter().any(|&w| w != 1) {
        return Err(Error::Structural("syzygies require the standard grading".into()));
    }
    let m = first.rank();
    let s = gens.len();
    let mut degrees = Vec::with_capacity(s);
    let mut inputs = Vec::with_capacity(s);
    for (j, g) in gens.iter().enumerate() {
        if g.rank() != m || g.twists != first.twists || !same_ring(g.ring(), &ring) {
            return Err(Error::Structural("vectors live in different free modules".into()));
        }
        let d = if g.is_zero() { 0 } else { g.degree().ok_or_else(|| Error::Precondition("inhomogeneous vector".into()))? };
        degrees.push(d);
        let mut terms: Vec<Term> = Vec::new();
        for (c, p) in g.components.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(mono, coef)| (c as u32, mono.clone(), *coef)));
        }
        terms.push(((m + j) as u32, Monomial::one(ring.n_vars()), 1));
        inputs.push(Vector { terms, degree: d });
    }
    inputs.sort_by_key(|v| v.degree);

    let mut basis: Vec<Vector> = Vec::new();
    let mut pairs: Vec<(usize, usize, i32)> = Vec::new();
    let mut pending = inputs.into_iter().peekable();
    loop {
        let next_pair = pairs.iter().enumerate().min_by_key(|(_, p)| p.2).map(|(i, p)| (i, p.2));
        let candidate = match (pending.peek(), next_pair) {
            (Some(v), Some((_, d))) if v.degree <= d => pending.next().unwrap(),
            (Some(_), None) => pending.next().unwrap(),
            (_, Some((idx, _))) => {
                let (a, b, _) = pairs.swap_remove(idx);
                match s_vector(&ring, &basis[a], &basis[b]) {
                    Some(v) => v,
                    None => continue,
                }
            }
            (None, None) => break,
        };
        budget.charge(1, "module groebner")?;
        let degree = candidate.degree;
        let terms = reduce(&ring, candidate.terms, &basis, budget)?;
        if terms.is_empty() {
            continue;
        }
        let t = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if g.terms[0].0 == terms[0].0 {
                let l = g.terms[0].1.lcm(&terms[0].1);
                let d = g.degree + g.terms[0].1.quotient_of(&l).unwrap().degree() as i32;
                pairs.push((i, t, d));
            }
        }
        basis.push(Vector { terms, degree });
    }

    let syz: Vec<&Vector> = basis.iter().filter(|v| v.terms[0].0 as usize >= m).collect();
    let mut out = Vec::new();
    for (idx, v) in syz.iter().enumerate() {
        // drop elements whose leading term is divisible by another's
        let redundant = syz.iter().enumerate().any(|(j, w)| {
            j != idx
                && w.terms[0].0 == v.terms[0].0
                && w.terms[0].1.divides(&v.terms[0].1)
                && (w.terms[0].1 != v.terms[0].1 || j < idx)
        });
        if redundant {
            continue;
        }
        let mut comps: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); s];
        for (c, mono, coef) in &v.terms {
            comps[*c as usize - m].push((mono.clone(), *coef));
        }
        let components = comps.into_iter().map(|t| Polynomial::from_terms(&ring, t)).collect();
        out.push(FreeModuleVector::new(components, degrees.clone())?);
    }
    out.sort_by_key(|v| v.degree());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    fn ring(n: usize) -> Ring {
        RingDescriptor::standard("x", n, 32003, MonomialOrder::Grevlex).unwrap()
    }

    fn column(r: &Ring, polys: &[&str]) -> Vec<FreeModuleVector> {
        polys
            .iter()
            .map(|p| FreeModuleVector::new(vec![Polynomial::parse(r, p).unwrap()], vec![0]).unwrap())
            .collect()
    }

    #[test]
    fn two_variables_have_one_koszul_syzygy() {
        let r = ring(2);
        let gens = column(&r, &["x0", "x1"]);
        let syz = syzygies(&gens, &Budget::unlimited()).unwrap();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].degree(), Some(2));
    }

    #[test]
    fn twisted_cubic_has_two_linear_syzygies() {
        let r = ring(4);
        let polys = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"];
        let gens = column(&r, &polys);
        let syz = syzygies(&gens, &Budget::unlimited()).unwrap();
        let targets: Vec<Polynomial> = polys.iter().map(|p| Polynomial::parse(&r, p).unwrap()).collect();
        for v in &syz {
            assert!(v.apply(&targets).unwrap().is_zero());
        }
        assert_eq!(syz.iter().filter(|v| v.degree() == Some(3)).count(), 2);
    }

    #[test]
    fn mismatched_twists_are_rejected() {
        let r = ring(2);
        let a = FreeModuleVector::new(vec![Polynomial::var(&r, 0)], vec![0]).unwrap();
        let b = FreeModuleVector::new(vec![Polynomial::var(&r, 1)], vec![1]).unwrap();
        assert!(syzygies(&[a, b], &Budget::unlimited()).is_err());
    }
}
