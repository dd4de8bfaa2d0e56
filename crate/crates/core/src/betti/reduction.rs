//! Reduction of a graded quotient (or one of its Veronese subrings) modulo a
//! maximal regular sequence of degree-`ℓ` forms.
//!
//! Betti numbers over the polynomial ring on `V_ℓ = (S/I)_ℓ` do not change
//! when a regular linear form is divided out on both sides, so the Koszul
//! complexes can be built over the smaller quotient. Regularity is tested
//! exactly through Hilbert series: `z` is a nonzerodivisor on `S/I` iff
//! `HS(S/(I+z)) = (1 - t^ℓ) HS(S/I)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{groebner, hilbert_numerator, normal_form, saturate_irrelevant, standard_monomials};
use crate::groebner::{GroebnerBasis, HilbertSeries};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;

const RANDOM_TRIES: usize = 24;

#[derive(Clone, Debug)]
pub struct Reduction {
    pub ring: Ring,
    pub ell: u32,
    /// The regular sequence, in the order it was found.
    pub regular: Vec<Polynomial>,
    /// Gröbner basis of `I + (regular)`, possibly replaced by its saturation
    /// when the removed torsion misses every degree divisible by `ℓ`.
    pub gb: GroebnerBasis,
    pub series: HilbertSeries,
    pub artinian: bool,
    /// `max(q - i)` over the Betti table of the (Veronese) ring.
    pub regularity: u32,
}

impl Reduction {
    pub fn depth(&self) -> usize {
        self.regular.len()
    }
}

fn trimmed(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn graded_ring(ring: &Ring) -> Result<Ring> {
    if ring.weights().iter().any(|&w| w != 1) {
        return Err(Error::Structural("Betti computations require the standard grading".into()));
    }
    Ok(ring.with_order(MonomialOrder::Grevlex))
}

/// Reduces `S/I` (when `veronese` is false, `ℓ` must be 1) or its `ℓ`-th
/// Veronese subring.
pub fn reduce(ideal: &Ideal, ell: u32, veronese: bool, budget: &Budget) -> Result<Reduction> {
    if ell == 0 {
        return Err(Error::Precondition("the Veronese power must be at least 1".into()));
    }
    if !veronese && ell != 1 {
        return Err(Error::Structural("plain reductions use linear forms".into()));
    }
    let ring = graded_ring(ideal.ring())?;
    let gens = ideal.gens().iter().map(|g| g.to_ring(&ring)).collect();
    let gb = groebner(&Ideal::new(&ring, gens)?, budget)?;
    if gb.is_unit() {
        return Err(Error::Precondition("the unit ideal defines the zero ring".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    reduce_gb(ring, gb, ell, budget, &mut rng)
}

fn reduce_gb(ring: Ring, mut gb: GroebnerBasis, ell: u32, budget: &Budget, rng: &mut ChaCha8Rng) -> Result<Reduction> {
    let mut series = hilbert_numerator(&gb)?;
    let mut regular = Vec::new();
    loop {
        if series.dimension() == 0 {
            let top = series.top_degree().unwrap_or(0) as u32;
            return Ok(Reduction { ring, ell, regular, gb, series, artinian: true, regularity: top / ell });
        }
        if let Some((z, next, next_series)) = find_regular(&ring, &gb, &series, ell, budget, rng)? {
            regular.push(z);
            gb = next;
            series = next_series;
            continue;
        }
        let saturated = groebner(&saturate_irrelevant(&gb.as_ideal(), budget)?, budget)?;
        let sat_series = hilbert_numerator(&saturated)?;
        if sat_series == series {
            return Err(Error::Structural("no regular element found on a saturated quotient".into()));
        }
        match torsion_top(&series, &sat_series, ell) {
            None => {
                gb = saturated;
                series = sat_series;
            }
            Some(top) => {
                let rest = reduce_gb(ring.clone(), saturated, ell, budget, rng)?;
                let regularity = top.max(rest.regularity);
                return Ok(Reduction { ring, ell, regular, gb, series, artinian: false, regularity });
            }
        }
    }
}

/// Largest `k` with `(I^sat / I)_{kℓ} ≠ 0`, if any.
fn torsion_top(series: &HilbertSeries, saturated: &HilbertSeries, ell: u32) -> Option<u32> {
    let bound = (series.numerator.len().max(saturated.numerator.len()) + series.n_vars + 1) as u32;
    (0..=bound / ell).rev().find(|&k| series.function(k * ell) != saturated.function(k * ell))
}

type Found = (Polynomial, GroebnerBasis, HilbertSeries);

fn find_regular(
    ring: &Ring,
    gb: &GroebnerBasis,
    series: &HilbertSeries,
    ell: u32,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Found>> {
    let n = ring.n_vars();
    let target = trimmed(series.times_one_minus_t_pow(ell as usize));
    let mut candidates: Vec<Polynomial> = (0..n).rev().map(|i| Polynomial::var(ring, i).pow(ell)).collect();
    let standard = standard_monomials(gb, ell);
    let p = ring.prime() as u64;
    for _ in 0..RANDOM_TRIES {
        let terms: Vec<(Monomial, u32)> =
            standard.iter().map(|m| (m.clone(), rng.gen_range(1..p) as u32)).collect();
        candidates.push(Polynomial::from_terms(ring, terms));
    }
    for c in candidates {
        let z = normal_form(&c, gb)?;
        if z.is_zero() {
            continue;
        }
        let mut gens = gb.basis().to_vec();
        gens.push(z.clone());
        let next = groebner(&Ideal::new(ring, gens)?, budget)?;
        let next_series = hilbert_numerator(&next)?;
        if trimmed(next_series.numerator.clone()) == target {
            return Ok(Some((z, next, next_series)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(text: &str) -> Ideal {
        Ideal::parse_text(text).unwrap()
    }

    #[test]
    fn twisted_cubic_is_cohen_macaulay() {
        let i = ideal("ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n");
        let r = reduce(&i, 1, false, &Budget::unlimited()).unwrap();
        assert!(r.artinian);
        assert_eq!(r.depth(), 2);
        assert_eq!(r.regularity, 1);
    }

    #[test]
    fn rational_quartic_has_depth_one() {
        let i = ideal(
            "ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx1*x2 - x0*x3\nx0*x2^2 - x1^2*x3\nx1^3 - x0^2*x2\nx2^3 - x1*x3^2\n",
        );
        let r = reduce(&i, 1, false, &Budget::unlimited()).unwrap();
        assert!(!r.artinian);
        assert_eq!(r.depth(), 1);
        assert_eq!(r.regularity, 2);
        // the second Veronese subring is Cohen-Macaulay
        let v = reduce(&i, 2, true, &Budget::unlimited()).unwrap();
        assert!(v.artinian);
        assert_eq!(v.depth(), 2);
    }

    #[test]
    fn veronese_of_the_plane_reduces_by_powers() {
        let i = ideal("ring: p=32003 vars=[x0,x1,x2]\ngens:\n");
        let r = reduce(&i, 3, true, &Budget::unlimited()).unwrap();
        assert!(r.artinian);
        assert_eq!(r.depth(), 3);
        assert!(r.regular.iter().all(|z| z.len() == 1));
        assert_eq!(r.regularity, 2);
    }
}
