//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are kept sorted descending in the ring's monomial order with no zero
//! coefficients, so the leading term is always `terms[0]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::{same_ring, Ring};

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let v = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.n_vars()), v)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.n_vars(), i), 1)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Self { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops
    /// zeros and sorts.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let k = ring.field();
        let order = ring.order();
        let mut v: Vec<(Monomial, u32)> = terms.into_iter().collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = k.add(*lc, c),
                _ => out.push((m, c % k.characteristic())),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Self { ring: ring.clone(), terms: out }
    }

    /// Wraps terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Self { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Maximum total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Common weighted degree of all terms when homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|t| t.0.weighted_degree(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Weighted degree of the heaviest term (the "sugar" of an input).
    pub fn weighted_max_degree(&self) -> u32 {
        let w = self.ring.weights();
        self.terms.iter().map(|t| t.0.weighted_degree(w)).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        let order = self.ring.order();
        self.terms
            .binary_search_by(|t| order.compare(m, &t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn scale(&self, c: u32) -> Self {
        if c == 0 {
            return Self::zero(&self.ring);
        }
        let k = self.ring.field();
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), k.mul(*a, c))).collect();
        Self { ring: self.ring.clone(), terms }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.field().inv(c)),
        }
    }

    pub(crate) fn make_monic(&mut self) {
        if let Some(c) = self.leading_coefficient() {
            if c != 1 {
                let k = self.ring.field();
                let inv = k.inv(c);
                for t in &mut self.terms {
                    t.1 = k.mul(t.1, inv);
                }
            }
        }
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Self {
        if c == 0 {
            return Self::zero(&self.ring);
        }
        let k = self.ring.field();
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), k.mul(*a, c))).collect();
        Self { ring: self.ring.clone(), terms }
    }

    /// `self - c * m * g`, by a single merge pass.
    pub fn sub_mul_term(&self, c: u32, m: &Monomial, g: &Polynomial) -> Self {
        let terms = merge_sub_mul(&self.ring, &self.terms, c, m, &g.terms);
        Self { ring: self.ring.clone(), terms }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::Structural("polynomials live in different rings".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.sub_mul_term(self.ring.field().neg(1), &Monomial::one(self.ring.n_vars()), other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.sub_mul_term(1, &Monomial::one(self.ring.n_vars()), other))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let k = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), k.mul(*c1, *c2)));
            }
        }
        Ok(Self::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.ring, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Re-sorts the terms for a different order on the same variables, or
    /// moves into a ring with the same variables but other weights/order.
    pub fn to_ring(&self, target: &Ring) -> Self {
        assert_eq!(target.n_vars(), self.ring.n_vars());
        Self::from_terms(target, self.terms.iter().cloned().map(|(m, c)| (m, c % target.prime())))
    }

    /// Renames variables: variable `i` becomes variable `map[i]` of `target`.
    pub fn remap(&self, target: &Ring, map: &[usize]) -> Self {
        let n = target.n_vars();
        Self::from_terms(target, self.terms.iter().map(|(m, c)| (m.remap(n, map), *c)))
    }

    /// Applies the ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .ok_or_else(|| Error::Structural("empty substitution".into()))?;
        if images.len() != self.ring.n_vars() {
            return Err(Error::Structural("substitution needs one image per variable".into()));
        }
        // powers cache: powers[i][e]
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::constant(&target, 1), p.clone()]).collect();
        let mut acc = Vec::new();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, *c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = term.checked_mul(&powers[i][e as usize])?;
            }
            acc.extend(term.terms);
        }
        Ok(Self::from_terms(&target, acc))
    }

    /// Canonical text form: terms descending, coefficients as least
    /// nonnegative residues, coefficient 1 omitted on non-constant terms.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = self.ring.var_names();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors: Vec<String> = Vec::new();
                if *c != 1 || m.is_one() {
                    factors.push(c.to_string());
                }
                for (i, &e) in m.exponents().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(names[i].clone()),
                        _ => factors.push(format!("{}^{}", names[i], e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    pub fn monomial_to_string(ring: &Ring, m: &Monomial) -> String {
        Polynomial::monomial(ring, m.clone(), 1).to_canonical_string()
    }

    /// Parses the text grammar: signed terms `coeff*x0^e0*x1^e1...`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        parse_poly(ring, text).map_err(|msg| Error::Parse { line: 0, msg: format!("{msg} in '{text}'") })
    }
}

/// `a - c * m * b` on sorted term slices.
pub(crate) fn merge_sub_mul(
    ring: &Ring,
    a: &[(Monomial, u32)],
    c: u32,
    m: &Monomial,
    b: &[(Monomial, u32)],
) -> Vec<(Monomial, u32)> {
    let k = ring.field();
    let order = ring.order();
    let nc = k.neg(c);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut next_b = b.first().map(|(t, x)| (t.mul(m), k.mul(*x, nc)));
    while i < a.len() || next_b.is_some() {
        match next_b.take() {
            None => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            Some(y) => {
                if i == a.len() {
                    out.push(y);
                    j += 1;
                    out.extend(b[j..].iter().map(|(t, x)| (t.mul(m), k.mul(*x, nc))));
                    break;
                }
                match order.compare(&a[i].0, &y.0) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                        next_b = Some(y);
                        continue;
                    }
                    Ordering::Less => out.push(y),
                    Ordering::Equal => {
                        let s = k.add(a[i].1, y.1);
                        if s != 0 {
                            out.push((y.0, s));
                        }
                        i += 1;
                    }
                }
                j += 1;
                next_b = b.get(j).map(|(t, x)| (t.mul(m), k.mul(*x, nc)));
            }
        }
    }
    out
}

fn parse_poly(ring: &Ring, text: &str) -> std::result::Result<Polynomial, String> {
    let k = ring.field();
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &s[start..i];
        if term.is_empty() {
            return Err("dangling sign".into());
        }
        let mut coeff = k.from_i64(sign);
        let mut mono = Monomial::one(ring.n_vars());
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err("empty factor".into());
            }
            if factor.as_bytes()[0].is_ascii_digit() {
                let v: u64 = factor.parse().map_err(|_| format!("bad number '{factor}'"))?;
                coeff = k.mul(coeff, (v % k.characteristic() as u64) as u32);
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u16>().map_err(|_| format!("bad exponent '{e}'"))?),
                None => (factor, 1),
            };
            let idx = ring.var_index(name).ok_or_else(|| format!("unknown variable '{name}'"))?;
            let e = mono.exponents()[idx]
                .checked_add(exp)
                .ok_or_else(|| "exponent overflow".to_string())?;
            mono.set_exponent(idx, e);
        }
        terms.push((mono, coeff));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::ring::RingDescriptor;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn ring2() -> Ring {
        RingDescriptor::new(vec!["x".into(), "y".into()], 32003, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring2();
        let f = Polynomial::parse(&r, "x + y").unwrap();
        let g = Polynomial::parse(&r, "x - y").unwrap();
        assert_eq!(&f * &g, Polynomial::parse(&r, "x^2 - y^2").unwrap());
        assert!((&f * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn modular_product_matches_big_integers() {
        let r = ring2();
        let f = Polynomial::parse(&r, "16001*x").unwrap();
        let g = Polynomial::parse(&r, "2*x").unwrap();
        let expected = (BigInt::from(16001) * BigInt::from(2)) % BigInt::from(32003);
        let prod = &f * &g;
        assert_eq!(prod.terms()[0].1.to_string(), expected.to_string());
        assert_eq!(prod, Polynomial::parse(&r, "-x^2").unwrap());
        assert_eq!(prod.to_canonical_string(), "32002*x^2");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = ring2();
        let s = RingDescriptor::standard("x", 3, 32003, MonomialOrder::Grevlex).unwrap();
        assert!(Polynomial::var(&r, 0).checked_mul(&Polynomial::var(&s, 0)).is_err());
    }

    #[test]
    fn parse_errors() {
        let r = ring2();
        assert!(Polynomial::parse(&r, "x + z").is_err());
        assert!(Polynomial::parse(&r, "x + ").is_err());
        assert!(Polynomial::parse(&r, "x^a").is_err());
        assert_eq!(Polynomial::parse(&r, "x - x").unwrap(), Polynomial::zero(&r));
    }

    #[test]
    fn canonical_printing_is_descending() {
        let r = RingDescriptor::standard("x", 4, 32003, MonomialOrder::Grevlex).unwrap();
        let f = Polynomial::parse(&r, "x0*x2 - x1^2 + 3").unwrap();
        assert_eq!(f.to_canonical_string(), "32002*x1^2 + x0*x2 + 3");
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!(Polynomial::parse(&r, "x0*x2 - x1^2").unwrap().homogeneous_degree(), Some(2));
    }

    fn poly_strategy(r: Ring) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0u16..4, 5), 0u32..32003), 0..6).prop_map(
            move |ts| {
                Polynomial::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
            },
        )
    }

    proptest! {
        #[test]
        fn commutative_ring_axioms(
            (f, g, h) in {
                let r = RingDescriptor::standard("x", 5, 32003, MonomialOrder::Grevlex).unwrap();
                (poly_strategy(r.clone()), poly_strategy(r.clone()), poly_strategy(r))
            }
        ) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f + &g) - &g, f.clone());
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn print_parse_identity(f in poly_strategy(RingDescriptor::standard("x", 5, 32003, MonomialOrder::Lex).unwrap())) {
            let back = Polynomial::parse(f.ring(), &f.to_canonical_string()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
