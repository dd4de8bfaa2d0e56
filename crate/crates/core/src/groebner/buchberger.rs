use std::cmp::Ordering;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{merge_sub_mul, Polynomial};
use crate::ring::Ring;

use super::{reduce_full, GroebnerBasis};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State {
    ring: Ring,
    polys: Vec<Polynomial>,
    leads: Vec<Monomial>,
    masks: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn divisor_of(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        (0..self.polys.len()).find(|&i| self.active[i] && self.masks[i] & !mask == 0 && self.leads[i].divides(m))
    }

    /// Reduces until the leading term is irreducible; tails are left alone.
    fn top_reduce(&self, f: Polynomial, budget: &Budget) -> Result<Polynomial> {
        let k = self.ring.field();
        let mut terms = f.into_terms();
        let mut steps = 0u64;
        while let Some((m, c)) = terms.first() {
            let Some(i) = self.divisor_of(m) else { break };
            let g = &self.polys[i];
            let q = self.leads[i].quotient_of(m).expect("divides");
            let coef = k.mul(*c, k.inv(g.leading_coefficient().unwrap()));
            terms = merge_sub_mul(&self.ring, &terms, coef, &q, g.terms());
            steps += 1;
            if steps.is_multiple_of(32) {
                budget.charge(32, "buchberger reduction")?;
            }
        }
        budget.charge(steps % 32 + 1, "buchberger reduction")?;
        Ok(Polynomial::from_sorted_unchecked(&self.ring, terms))
    }

    /// Gebauer–Möller update for a new basis element `h`.
    fn update(&mut self, h: Polynomial) {
        let order = self.ring.order();
        let weights = self.ring.weights().to_vec();
        let t = self.polys.len();
        let lt = h.leading_monomial().unwrap().clone();
        let mask = lt.support_mask();

        // candidate pairs with the new element
        let mut cands: Vec<(usize, Monomial, bool)> = (0..t)
            .filter(|&i| self.active[i])
            .map(|i| (i, self.leads[i].lcm(&lt), self.leads[i].is_coprime(&lt)))
            .collect();

        // criterion M: drop (i,t) when some (j,t) has lcm properly dividing it
        let keep: Vec<bool> = cands
            .iter()
            .map(|(_, l, _)| !cands.iter().any(|(_, l2, _)| l2 != l && l2.divides(l)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> =
            cands.drain(..).zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();

        // criterion F: among equal lcms keep one, preferring a coprime pair so
        // that the whole class is dropped by the product criterion
        kept.sort_by(|a, b| order.compare(&a.1, &b.1).then((!a.2).cmp(&!b.2)).then(a.0.cmp(&b.0)));
        let mut chosen: Vec<(usize, Monomial, bool)> = Vec::new();
        for c in kept {
            if chosen.last().is_some_and(|last| last.1 == c.1) {
                continue;
            }
            chosen.push(c);
        }
        // product criterion
        chosen.retain(|c| !c.2);

        // criterion B on old pairs
        let leads = &self.leads;
        self.pairs.retain(|p| {
            !(lt.divides(&p.lcm) && leads[p.i].lcm(&lt) != p.lcm && leads[p.j].lcm(&lt) != p.lcm)
        });

        for (i, l, _) in chosen {
            let sugar = l.weighted_degree(&weights);
            self.pairs.push(Pair { i, j: t, lcm: l, sugar });
        }

        // old elements made redundant by the new leading term
        for i in 0..t {
            if self.active[i] && self.masks[i] & !mask == 0 && lt.divides(&self.leads[i]) {
                // only retire if strictly divisible; equal leads cannot occur
                // because h is top-reduced
                self.active[i] = false;
            }
        }

        self.polys.push(h);
        self.leads.push(lt);
        self.masks.push(mask);
        self.active.push(true);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then_with(|| order.compare(&p.lcm, &q.lcm))
                .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Buchberger's algorithm with sugar selection and Gebauer–Möller pair
/// elimination. Returns the reduced Gröbner basis for `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
    let ideal = if ideal.ring().order() == order { ideal.clone() } else { ideal.with_order(order) };
    let ring = ideal.ring().clone();
    let mut st = State {
        ring: ring.clone(),
        polys: Vec::new(),
        leads: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    let mut inputs: Vec<Polynomial> = ideal.gens().to_vec();
    inputs.sort_by(|a, b| {
        a.weighted_max_degree()
            .cmp(&b.weighted_max_degree())
            .then_with(|| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
    });
    let mut pending = inputs.into_iter().peekable();

    loop {
        // feed input generators in degree order alongside the pairs
        let next_pair_sugar = st.pairs.iter().map(|p| p.sugar).min();
        let take_input = match (pending.peek(), next_pair_sugar) {
            (Some(g), Some(s)) => g.weighted_max_degree() <= s,
            (Some(_), None) => true,
            (None, _) => false,
        };
        let candidate = if take_input {
            pending.next().unwrap()
        } else if let Some(pair) = st.pop_pair() {
            super::s_polynomial(&st.polys[pair.i], &st.polys[pair.j])
        } else {
            break;
        };
        budget.charge(1, "buchberger").map_err(|e| partial(e, &st))?;
        let h = st.top_reduce(candidate, budget).map_err(|e| partial(e, &st))?;
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            let one = Polynomial::constant(&ring, 1);
            return Ok(GroebnerBasis::from_reduced(ideal, vec![one]));
        }
        st.update(h);
    }

    // minimal basis from the active elements, then interreduce
    let mut minimal: Vec<Polynomial> =
        (0..st.polys.len()).filter(|&i| st.active[i]).map(|i| st.polys[i].clone()).collect();
    minimal.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in minimal {
        let lt = g.leading_monomial().unwrap();
        if !kept.iter().any(|h| h.leading_monomial().unwrap().divides(lt)) {
            kept.push(g);
        }
    }
    let masks: Vec<u64> = kept.iter().map(|g| g.leading_monomial().unwrap().support_mask()).collect();
    let mut reduced = Vec::with_capacity(kept.len());
    // a tail term is never divisible by its own leading term, so the whole
    // minimal basis can serve as the reducer set
    for g in &kept {
        budget.charge(1, "interreduction")?;
        let lead = Polynomial::from_sorted_unchecked(&ring, vec![g.terms()[0].clone()]);
        let tail = Polynomial::from_sorted_unchecked(&ring, g.terms()[1..].to_vec());
        let tail = reduce_full(&tail, &kept, &masks);
        let mut terms = lead.into_terms();
        terms.extend(tail.into_terms());
        let mut p = Polynomial::from_sorted_unchecked(&ring, terms);
        p.make_monic();
        reduced.push(p);
    }
    reduced.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    debug_assert!(reduced.windows(2).all(|w| {
        order.compare(w[0].leading_monomial().unwrap(), w[1].leading_monomial().unwrap()) == Ordering::Less
    }));
    Ok(GroebnerBasis::from_reduced(ideal, reduced))
}

fn partial(e: Error, st: &State) -> Error {
    match e {
        Error::Budget { stage, partial } => Error::Budget {
            stage,
            partial: format!(
                "{partial}; {} basis elements, {} pairs pending",
                st.active.iter().filter(|a| **a).count(),
                st.pairs.len()
            ),
        },
        other => other,
    }
}
