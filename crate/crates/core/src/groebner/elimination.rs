//! Elimination: ideal intersections and kernels of graded ring maps.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring, RingDescriptor};

use super::buchberger;

/// Elements of a Gröbner basis (in a block order eliminating the first
/// `k` variables) free of those variables, moved to `target` whose variables
/// are the remaining ones in order.
fn keep_free_of_first(gens: &[Polynomial], k: usize, target: &Ring) -> Vec<Polynomial> {
    let n = target.n_vars();
    gens.iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
        .map(|g| {
            Polynomial::from_terms(
                target,
                g.terms().iter().map(|(m, c)| (Monomial::from_exponents(&m.exponents()[k..k + n]), *c)),
            )
        })
        .collect()
}

/// `I ∩ J` as `(t I + (1 - t) J) ∩ k[x]`, with `t` of weight zero.
pub fn intersect(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<Ideal> {
    if !same_ring(i.ring(), j.ring()) {
        return Err(Error::Structural("intersection of ideals in different rings".into()));
    }
    let ring = i.ring();
    let n = ring.n_vars();
    let mut names = vec![fresh_name(ring, "t")];
    names.extend(ring.var_names().iter().cloned());
    let mut weights = vec![0u32];
    weights.extend(ring.weights());
    let big = RingDescriptor::new(names, ring.prime(), MonomialOrder::Elimination(1))?.with_weights(weights);
    let shift: Vec<usize> = (1..=n).collect();
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::constant(&big, 1) - &t;
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(&t * &g.remap(&big, &shift));
    }
    for g in j.gens() {
        gens.push(&one_minus_t * &g.remap(&big, &shift));
    }
    let gb = buchberger(&Ideal::new(&big, gens)?, MonomialOrder::Elimination(1), budget)?;
    let kept = keep_free_of_first(gb.basis(), 1, ring);
    Ideal::new(ring, kept)
}

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = format!("{base}_");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Kernel of the graded map `target -> source/modulo` sending the i-th
/// target variable to `images[i]`.
///
/// Computed by eliminating the source variables from the graph ideal
/// `(t_i - images_i) + modulo` in a block order; the result is the reduced
/// grevlex Gröbner basis of the kernel.
pub fn kernel_of_ring_map(images: &[Polynomial], target: &Ring, modulo: &Ideal, budget: &Budget) -> Result<Ideal> {
    let source = modulo.ring();
    if images.len() != target.n_vars() {
        return Err(Error::Structural(format!(
            "{} images for a ring with {} variables",
            images.len(),
            target.n_vars()
        )));
    }
    if target.prime() != source.prime() {
        return Err(Error::Structural("source and target rings have different primes".into()));
    }
    let mut degree = None;
    for f in images {
        if !same_ring(f.ring(), source) {
            return Err(Error::Structural("image outside the source ring".into()));
        }
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| Error::Precondition(format!("image {f} is not homogeneous and nonzero")))?;
        if degree.is_some_and(|e| e != d) {
            return Err(Error::Precondition("images must share one degree".into()));
        }
        degree = Some(d);
    }
    let Some(ell) = degree else {
        return Ok(Ideal::zero(target));
    };
    let nx = source.n_vars();
    let nt = target.n_vars();
    let mut names: Vec<String> = source.var_names().iter().map(|v| format!("{v}'")).collect();
    names.extend(target.var_names().iter().cloned());
    let mut weights = vec![1u32; nx];
    weights.extend(std::iter::repeat_n(ell, nt));
    let big = RingDescriptor::new(names, source.prime(), MonomialOrder::Elimination(nx))?.with_weights(weights);
    let xs: Vec<usize> = (0..nx).collect();
    let mut gens = Vec::with_capacity(nt + modulo.gens().len());
    for (i, f) in images.iter().enumerate() {
        gens.push(&Polynomial::var(&big, nx + i) - &f.remap(&big, &xs));
    }
    for g in modulo.gens() {
        gens.push(g.remap(&big, &xs));
    }
    let gb = buchberger(&Ideal::new(&big, gens)?, MonomialOrder::Elimination(nx), budget)?;
    let graded_target = target.with_order(MonomialOrder::Grevlex);
    let kept = keep_free_of_first(gb.basis(), nx, &graded_target);
    let reduced = buchberger(&Ideal::new(&graded_target, kept)?, MonomialOrder::Grevlex, budget)?;
    let gens = reduced.basis().iter().map(|g| g.to_ring(target)).collect();
    Ideal::new(target, gens)
}
