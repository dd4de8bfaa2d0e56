//! Veronese re-embeddings, full Veronese varieties and cones over
//! degenerate embeddings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::betti::table::BettiTable;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::hilbert::binomial;
use crate::groebner::saturation::is_saturated;
use crate::groebner::{groebner, kernel_of_ring_map, standard_monomials};
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingDescriptor};

/// `ν_ℓ(X) ⊂ P(V_ℓ)` given by the kernel of `k[t] → S/I`, `t_k ↦ basis_k`.
#[derive(Clone, Debug)]
pub struct VeronesePresentation {
    pub ell: u32,
    pub source: Ideal,
    /// Basis of `V_ℓ`: standard monomials of `(S/I)_ℓ`, or all degree-`ℓ`
    /// monomials for the full ambient space.
    pub basis: Vec<Monomial>,
    pub target_ring: Ring,
    pub kernel: Ideal,
    /// `C(r + ℓ, ℓ)`, the number of degree-`ℓ` monomials.
    pub n_full: u64,
    pub full_ambient: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationHeader {
    pub ell: u32,
    #[serde(rename = "dimV_ell")]
    pub dim_v_ell: usize,
    #[serde(rename = "N_full")]
    pub n_full: u64,
    pub basis: Vec<String>,
}

impl VeronesePresentation {
    pub fn header(&self) -> PresentationHeader {
        PresentationHeader {
            ell: self.ell,
            dim_v_ell: self.basis.len(),
            n_full: self.n_full,
            basis: self.basis.iter().map(|m| Polynomial::monomial_to_string(self.source.ring(), m)).collect(),
        }
    }
}

fn target_ring(k: usize, prime: u32) -> Result<Ring> {
    RingDescriptor::standard("t", k, prime, MonomialOrder::Grevlex)
}

/// Builds the presentation of `ν_ℓ` of the scheme defined by a saturated `I`.
pub fn veronese_presentation(ideal: &Ideal, ell: u32, full_ambient: bool, budget: &Budget) -> Result<VeronesePresentation> {
    if ell == 0 {
        return Err(Error::Precondition("the Veronese power must be at least 1".into()));
    }
    if !is_saturated(ideal, budget)? {
        return Err(Error::Precondition("the input ideal is not saturated".into()));
    }
    let source = ideal.with_order(MonomialOrder::Grevlex);
    let n = source.n_vars();
    let gb = groebner(&source, budget)?;
    let basis = if full_ambient { monomials_of_degree(n, ell) } else { standard_monomials(&gb, ell) };
    let target = target_ring(basis.len(), source.ring().prime())?;
    let images: Vec<Polynomial> = basis.iter().map(|m| Polynomial::monomial(source.ring(), m.clone(), 1)).collect();
    let kernel = kernel_of_ring_map(&images, &target, &source, budget)?;
    Ok(VeronesePresentation {
        ell,
        source,
        basis,
        target_ring: target,
        kernel,
        n_full: binomial(n as u64 - 1 + ell as u64, ell as u64),
        full_ambient,
    })
}

/// Ideal of `ν_ℓ(P^r) ⊂ P^N`.
pub fn full_veronese_ideal(r: usize, ell: u32, prime: u32, budget: &Budget) -> Result<Ideal> {
    if r == 0 || ell == 0 {
        return Err(Error::Precondition("full Veronese needs r ≥ 1 and ℓ ≥ 1".into()));
    }
    let source = RingDescriptor::standard("x", r + 1, prime, MonomialOrder::Grevlex)?;
    Ok(veronese_presentation(&Ideal::zero(&source), ell, false, budget)?.kernel)
}

fn extra_names(ring: &Ring, e: usize) -> Vec<String> {
    let names = ring.var_names();
    let n = names.len();
    // continue an indexed family x0, x1, ... when the ring uses one
    let prefix: String = names.first().map(|s| s.trim_end_matches(|c: char| c.is_ascii_digit()).to_string()).unwrap_or_default();
    let indexed = !prefix.is_empty() && names.iter().enumerate().all(|(i, s)| *s == format!("{prefix}{i}"));
    let base = if indexed { prefix } else { "u".to_string() };
    let start = if indexed { n } else { 0 };
    let mut out = Vec::with_capacity(e);
    let mut k = start;
    while out.len() < e {
        let name = format!("{base}{k}");
        if ring.var_index(&name).is_none() {
            out.push(name);
        }
        k += 1;
    }
    out
}

/// `X ⊂ Λ ≅ P^r ⊂ P^{r+e}`: the generators of `I` plus `e` new variables.
pub fn degenerate_embed(ideal: &Ideal, e: usize) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::Precondition("degenerate embeddings need e ≥ 1".into()));
    }
    let ring = ideal.ring();
    let n = ring.n_vars();
    let mut names = ring.var_names().to_vec();
    names.extend(extra_names(ring, e));
    let big = RingDescriptor::new(names, ring.prime(), ring.order())?;
    let map: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.remap(&big, &map)).collect();
    gens.extend((n..n + e).map(|i| Polynomial::var(&big, i)));
    Ideal::new(&big, gens)
}

/// Betti numbers after adding `e` independent linear forms:
/// `β'_{i,q} = Σ_k C(e,k) β_{i-k,q-k}`.
pub fn tensor_transfer(table: &BettiTable, e: usize) -> BTreeMap<(usize, u32), u64> {
    let mut out = BTreeMap::new();
    for entry in table.nonzero() {
        for k in 0..=e {
            *out.entry((entry.i + k, entry.q + k as u32)).or_insert(0) += binomial(e as u64, k as u64) * entry.beta;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::normal_form;

    #[test]
    fn conic_from_the_line() {
        let b = Budget::unlimited();
        let p = veronese_presentation(
            &Ideal::zero(&RingDescriptor::standard("x", 2, 32003, MonomialOrder::Grevlex).unwrap()),
            2,
            false,
            &b,
        )
        .unwrap();
        assert_eq!(p.basis.len(), 3);
        assert_eq!(p.kernel.gens().len(), 1);
        assert_eq!(p.n_full, 3);
        assert_eq!(p.header().basis, ["x0^2", "x0*x1", "x1^2"]);
    }

    #[test]
    fn generator_counts_of_full_veronese() {
        let b = Budget::unlimited();
        assert_eq!(full_veronese_ideal(1, 3, 32003, &b).unwrap().gens().len(), 3);
        let surface = full_veronese_ideal(2, 2, 32003, &b).unwrap();
        // C(7, 2) - C(6, 4) quadrics
        assert_eq!(surface.gens().len(), 21 - 15);
        assert!(surface.gens().iter().all(|g| g.homogeneous_degree() == Some(2)));
    }

    #[test]
    fn kernel_vanishes_on_the_basis() {
        let b = Budget::unlimited();
        let cubic = Ideal::parse_text("ring: p=32003 vars=[x,y,z]\ngens:\ny^2*z - x^3 - x^2*z\n").unwrap();
        let p = veronese_presentation(&cubic, 2, false, &b).unwrap();
        assert_eq!(p.basis.len(), 6);
        let gb = groebner(&p.source, &b).unwrap();
        let images: Vec<Polynomial> =
            p.basis.iter().map(|m| Polynomial::monomial(p.source.ring(), m.clone(), 1)).collect();
        for g in p.kernel.gens() {
            assert!(normal_form(&g.substitute(&images).unwrap(), &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn linear_presentation_is_a_relabelling() {
        let b = Budget::unlimited();
        let tc = Ideal::parse_text("ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n")
            .unwrap();
        let p = veronese_presentation(&tc, 1, false, &b).unwrap();
        assert_eq!(p.kernel.gens().len(), 3);
    }

    #[test]
    fn unsaturated_input_is_rejected() {
        let i = Ideal::parse_text("ring: p=32003 vars=[x,y]\ngens:\nx^2\nx*y\n").unwrap();
        assert!(veronese_presentation(&i, 2, false, &Budget::unlimited()).is_err());
    }

    #[test]
    fn point_in_a_plane() {
        let i = Ideal::parse_text("ring: p=32003 vars=[x0,x1]\ngens:\nx0\n").unwrap();
        let d = degenerate_embed(&i, 1).unwrap();
        assert_eq!(d.ring().var_names(), ["x0", "x1", "x2"]);
        assert_eq!(d.gens().iter().map(|g| g.to_canonical_string()).collect::<Vec<_>>(), ["x0", "x2"]);
    }

    #[test]
    fn transfer_for_the_twisted_cubic() {
        let t = BettiTable::complete_from([((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        let expected: BTreeMap<(usize, u32), u64> =
            [((0, 0), 1), ((1, 1), 1), ((1, 2), 3), ((2, 3), 5), ((3, 4), 2)].into_iter().collect();
        assert_eq!(tensor_transfer(&t, 1), expected);
    }
}
