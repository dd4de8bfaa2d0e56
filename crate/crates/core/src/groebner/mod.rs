//! Gröbner bases and the operations built on them.

mod buchberger;
pub mod elimination;
pub mod hilbert;
pub mod module;
pub mod resolution;
pub mod saturation;

pub use buchberger::buchberger;
pub use elimination::{intersect, kernel_of_ring_map};
pub use hilbert::{hilbert_function, hilbert_numerator, standard_monomials, HilbertSeries};
pub use module::{syzygies, FreeModuleVector};
pub use saturation::{colon_by_variable_power, saturate_irrelevant};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{merge_sub_mul, Polynomial};
use crate::ring::{same_ring, Ring};

/// A reduced Gröbner basis: monic, no leading term divides another, sorted
/// by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    basis: Vec<Polynomial>,
    masks: Vec<u64>,
}

impl GroebnerBasis {
    pub(crate) fn from_reduced(ideal: Ideal, basis: Vec<Polynomial>) -> Self {
        let masks = basis.iter().map(|g| g.leading_monomial().expect("nonzero").support_mask()).collect();
        Self { ideal, basis, masks }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring().order()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect()
    }

    /// The basis as an ideal (same ring).
    pub fn as_ideal(&self) -> Ideal {
        Ideal::new(self.ring(), self.basis.clone()).expect("basis elements are homogeneous")
    }

    /// Index of a basis element whose leading monomial divides `m`.
    #[inline]
    pub fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.basis.iter().zip(&self.masks).position(|(g, &gm)| {
            gm & !mask == 0 && g.leading_monomial().expect("nonzero").divides(m)
        })
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.find_divisor(m).is_none()
    }

    /// Membership test.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    /// The leading-term (monomial) ideal.
    pub fn initial_ideal(&self) -> Ideal {
        let gens = self
            .basis
            .iter()
            .map(|g| Polynomial::monomial(self.ring(), g.leading_monomial().expect("nonzero").clone(), 1))
            .collect();
        Ideal::new(self.ring(), gens).expect("monomials are homogeneous")
    }

    /// Checks Buchberger's criterion directly: every S-polynomial reduces to 0.
    pub fn verify(&self) -> Result<bool> {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = s_polynomial(&self.basis[i], &self.basis[j]);
                if !normal_form(&s, self)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Gröbner basis of an ideal in its own ring order.
pub fn groebner(ideal: &Ideal, budget: &Budget) -> Result<GroebnerBasis> {
    buchberger(ideal, ideal.ring().order(), budget)
}

pub(crate) fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let k = f.ring().field();
    let a = f.mul_term(&lf.quotient_of(&l).unwrap(), k.inv(f.leading_coefficient().unwrap()));
    let cg = k.inv(g.leading_coefficient().unwrap());
    a.sub_mul_term(cg, &lg.quotient_of(&l).unwrap(), g)
}

/// Fully reduced remainder of `f` modulo `G`.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if !same_ring(f.ring(), gb.ring()) {
        return Err(Error::Structural("normal form across different rings".into()));
    }
    Ok(reduce_full(f, &gb.basis, &gb.masks))
}

/// Remainder of full reduction by a list of polynomials.
pub(crate) fn reduce_full(f: &Polynomial, basis: &[Polynomial], masks: &[u64]) -> Polynomial {
    let ring = f.ring().clone();
    let k = ring.field();
    let mut rest: Vec<(Monomial, u32)> = f.terms().to_vec();
    let mut start = 0;
    let mut done: Vec<(Monomial, u32)> = Vec::new();
    while start < rest.len() {
        let (m, c) = &rest[start];
        let mask = m.support_mask();
        let div = basis
            .iter()
            .zip(masks)
            .position(|(g, &gm)| gm & !mask == 0 && g.leading_monomial().unwrap().divides(m));
        match div {
            Some(i) => {
                let g = &basis[i];
                let q = g.leading_monomial().unwrap().quotient_of(m).unwrap();
                let coef = k.mul(*c, k.inv(g.leading_coefficient().unwrap()));
                rest = merge_sub_mul(&ring, &rest[start..], coef, &q, g.terms());
                start = 0;
            }
            None => {
                done.push(rest[start].clone());
                start += 1;
            }
        }
    }
    Polynomial::from_sorted_unchecked(&ring, done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    pub(crate) fn twisted_cubic() -> Ideal {
        Ideal::parse_text(
            "ring: p=32003 vars=[x0,x1,x2,x3] order=grevlex\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n",
        )
        .unwrap()
    }

    #[test]
    fn one_reduction_step() {
        let r = RingDescriptor::standard("x", 3, 32003, MonomialOrder::Grevlex).unwrap();
        let i = Ideal::new(&r, vec![Polynomial::parse(&r, "x1^2 - x0*x2").unwrap()]).unwrap();
        let gb = groebner(&i, &Budget::unlimited()).unwrap();
        let nf = normal_form(&Polynomial::parse(&r, "x1^2").unwrap(), &gb).unwrap();
        assert_eq!(nf, Polynomial::parse(&r, "x0*x2").unwrap());
        for g in gb.basis() {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn twisted_cubic_basis_is_its_generators() {
        let i = twisted_cubic();
        let gb = groebner(&i, &Budget::unlimited()).unwrap();
        assert_eq!(gb.len(), 3);
        assert!(gb.verify().unwrap());
        for g in i.gens() {
            assert!(gb.basis().contains(g));
        }
    }

    #[test]
    fn twisted_cubic_normal_form() {
        let i = twisted_cubic();
        let gb = groebner(&i, &Budget::unlimited()).unwrap();
        // leading terms are x1^2, x1*x2, x2^2, so x0*x1*x3 is standard and
        // x0*x2^2 = x0*x1*x3 - x0*(x1*x3 - x2^2) reduces to it
        let leads: Vec<String> =
            gb.basis().iter().map(|g| Polynomial::monomial_to_string(i.ring(), g.leading_monomial().unwrap())).collect();
        assert_eq!(leads, ["x2^2", "x1*x2", "x1^2"]);
        let f = Polynomial::parse(i.ring(), "x0*x1*x3").unwrap();
        let g = Polynomial::parse(i.ring(), "x0*x2^2").unwrap();
        assert_eq!(normal_form(&f, &gb).unwrap(), f);
        assert_eq!(normal_form(&g, &gb).unwrap(), f);
        assert_eq!(&f - &g, &Polynomial::var(i.ring(), 0) * &Polynomial::parse(i.ring(), "x1*x3 - x2^2").unwrap());
    }

    #[test]
    fn ring_mismatch_in_normal_form() {
        let gb = groebner(&twisted_cubic(), &Budget::unlimited()).unwrap();
        let r = RingDescriptor::standard("y", 4, 32003, MonomialOrder::Grevlex).unwrap();
        assert!(normal_form(&Polynomial::var(&r, 0), &gb).is_err());
    }
}
