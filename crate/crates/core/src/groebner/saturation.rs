//! Colon ideals by variable powers and saturation by the irrelevant ideal.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::RingDescriptor;

use super::elimination::intersect;
use super::{buchberger, hilbert_numerator};

/// `I : x_var^∞` for a homogeneous ideal in the standard grading.
///
/// In grevlex with `x_var` the last variable, `x_var^k` divides the leading
/// term of a homogeneous `f` iff it divides `f`, so dividing a Gröbner basis
/// by the largest such powers yields the colon.
pub fn colon_by_variable_power(ideal: &Ideal, var: usize, budget: &Budget) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.n_vars();
    if var >= n {
        return Err(Error::Structural(format!("variable index {var} out of range")));
    }
    if ring.weights().iter().any(|&w| w != 1) {
        return Err(Error::Structural("saturation requires the standard grading".into()));
    }
    // permutation sending var to the last slot
    let map: Vec<usize> = (0..n)
        .map(|i| match i.cmp(&var) {
            std::cmp::Ordering::Less => i,
            std::cmp::Ordering::Equal => n - 1,
            std::cmp::Ordering::Greater => i - 1,
        })
        .collect();
    let mut inverse = vec![0; n];
    for (i, &j) in map.iter().enumerate() {
        inverse[j] = i;
    }
    let names: Vec<String> = inverse.iter().map(|&i| ring.var_names()[i].clone()).collect();
    let permuted = RingDescriptor::new(names, ring.prime(), MonomialOrder::Grevlex)?;
    let gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.remap(&permuted, &map)).collect();
    let gb = buchberger(&Ideal::new(&permuted, gens)?, MonomialOrder::Grevlex, budget)?;
    let last = n - 1;
    let divided: Vec<Polynomial> = gb
        .basis()
        .iter()
        .map(|g| {
            let k = g.terms().iter().map(|(m, _)| m.exponents()[last]).min().unwrap_or(0);
            let terms = g.terms().iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e[last] -= k;
                (crate::monomial::Monomial::from_exponents(&e), *c)
            });
            Polynomial::from_terms(&permuted, terms).remap(ring, &inverse)
        })
        .collect();
    Ideal::new(ring, divided)
}

/// True when `J ⊇ I` is known and both have the same Hilbert series.
fn same_as(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<bool> {
    let a = hilbert_numerator(&buchberger(i, MonomialOrder::Grevlex, budget)?)?;
    let b = hilbert_numerator(&buchberger(j, MonomialOrder::Grevlex, budget)?)?;
    Ok(a == b)
}

/// `I : m^∞` as the intersection of the colons `I : x_i^∞`, repeated until
/// stable. Since `I : m^∞ = ∩ (I : x_i^∞)` and every colon contains `I`, one
/// colon equal to `I` already certifies that `I` is saturated.
pub fn saturate_irrelevant(ideal: &Ideal, budget: &Budget) -> Result<Ideal> {
    let mut current = ideal.clone();
    'outer: loop {
        let mut colons: Vec<Ideal> = Vec::new();
        for v in (0..current.n_vars()).rev() {
            let c = colon_by_variable_power(&current, v, budget)?;
            if same_as(&current, &c, budget)? {
                break 'outer;
            }
            colons.push(c);
        }
        let mut acc = colons.pop().expect("at least one variable");
        while let Some(next) = colons.pop() {
            acc = intersect(&acc, &next, budget)?;
        }
        if same_as(&current, &acc, budget)? {
            break;
        }
        current = acc;
    }
    let gb = buchberger(&current, MonomialOrder::Grevlex, budget)?;
    Ok(gb.as_ideal().with_order(ideal.ring().order()))
}

/// Whether `I` equals its saturation (one probe per variable).
pub fn is_saturated(ideal: &Ideal, budget: &Budget) -> Result<bool> {
    for v in 0..ideal.n_vars() {
        let c = colon_by_variable_power(ideal, v, budget)?;
        if !same_as(ideal, &c, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}
