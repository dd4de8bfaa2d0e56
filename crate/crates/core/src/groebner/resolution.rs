//! Schreyer resolutions of cyclic modules `S/I`.
//!
//! Level 1 is a Gröbner basis of `I`; each further level consists of the
//! syzygies obtained by reducing S-pairs of the previous level, which form a
//! Gröbner basis for the induced (Schreyer) order. Within one component the
//! elements are sorted lexicographically descending by leading monomial, so
//! the frame has length at most the number of variables. The frame is not
//! minimal; minimal Betti numbers are read off the degree-zero parts of the
//! differentials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::matrix::{rank, SparseVec};
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::Ring;

use super::buchberger;

/// A term `coef * mono * e_comp` of a vector in the previous level.
#[derive(Clone, Debug)]
pub struct FrameTerm {
    pub mono: Monomial,
    pub comp: u32,
    pub coef: u32,
}

/// One basis element of a free module in the resolution, together with its
/// image under the differential.
#[derive(Clone, Debug)]
pub struct FrameElement {
    /// Component of the leading term in the previous level.
    pub comp: usize,
    pub lead: Monomial,
    pub degree: u32,
    /// Leading monomial of the image pushed all the way down to `S`.
    pub total: Monomial,
    /// Image in the previous level, sorted by the Schreyer order.
    pub image: Vec<FrameTerm>,
}

#[derive(Clone, Debug)]
pub struct SchreyerResolution {
    ring: Ring,
    levels: Vec<Vec<FrameElement>>,
    max_level: usize,
    max_degree: Option<u32>,
    /// True when no level or degree cap cut the frame short.
    complete: bool,
}

struct HeapTerm {
    total: Monomial,
    comp: u32,
    mono: Monomial,
    coef: u32,
}

impl PartialEq for HeapTerm {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapTerm {}
impl PartialOrd for HeapTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        schreyer_cmp(&self.total, self.comp, &other.total, other.comp)
    }
}

#[inline]
fn schreyer_cmp(t1: &Monomial, c1: u32, t2: &Monomial, c2: u32) -> Ordering {
    MonomialOrder::Grevlex.compare(t1, t2).then(c2.cmp(&c1))
}

fn lex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    b.exponents().cmp(a.exponents())
}

impl SchreyerResolution {
    /// Resolves `S/I`, computing levels `0..=max_level` and only elements of
    /// degree at most `max_degree`.
    pub fn compute(ideal: &Ideal, max_level: Option<usize>, max_degree: Option<u32>, budget: &Budget) -> Result<Self> {
        let ring = ideal.ring().graded();
        if ideal.ring().weights().iter().any(|&w| w != 1) {
            return Err(Error::Structural("resolutions require the standard grading".into()));
        }
        let ideal = ideal.with_order(MonomialOrder::Grevlex);
        let ideal = Ideal::new(&ring, ideal.gens().iter().map(|g| g.to_ring(&ring)).collect())?;
        let gb = buchberger(&ideal, MonomialOrder::Grevlex, budget)?;
        let n = ring.n_vars();
        let max_level = max_level.unwrap_or(n + 1).min(n + 1);
        let one = Monomial::one(n);
        let mut levels = vec![vec![FrameElement { comp: 0, lead: one.clone(), degree: 0, total: one, image: vec![] }]];
        let mut complete = true;

        let mut first: Vec<FrameElement> = gb
            .basis()
            .iter()
            .filter(|g| max_degree.is_none_or(|d| g.total_degree().unwrap() <= d) || {
                complete = false;
                false
            })
            .map(|g| {
                let lead = g.leading_monomial().unwrap().clone();
                FrameElement {
                    comp: 0,
                    degree: lead.degree(),
                    total: lead.clone(),
                    lead,
                    image: g.terms().iter().map(|(m, c)| FrameTerm { mono: m.clone(), comp: 0, coef: *c }).collect(),
                }
            })
            .collect();
        first.sort_by(|a, b| lex_desc(&a.lead, &b.lead));
        if gb.is_unit() {
            return Err(Error::Precondition("the unit ideal has no resolution of S/I".into()));
        }
        levels.push(first);

        while levels.len() <= max_level {
            let prev = levels.last().unwrap();
            if prev.is_empty() {
                break;
            }
            let below = &levels[levels.len() - 2];
            let next = next_level(&ring, below, prev, max_degree, &mut complete, budget)?;
            levels.push(next);
        }
        if levels.last().is_some_and(|l| !l.is_empty()) && levels.len() > max_level {
            // the last level computed may have nonempty successors
            complete = false;
        }
        Ok(Self { ring, levels, max_level, max_degree, complete })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn levels(&self) -> &[Vec<FrameElement>] {
        &self.levels
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.max_degree
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    /// Ranks of each frame module: `(level, degree) -> count`.
    pub fn frame_ranks(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for (i, level) in self.levels.iter().enumerate() {
            for e in level {
                *out.entry((i, e.degree)).or_insert(0) += 1;
            }
        }
        out
    }

    /// Rank of the degree-zero part of the differential `F_i -> F_{i-1}` in
    /// internal degree `q`.
    fn constant_rank(&self, i: usize, q: u32, budget: &Budget) -> Result<usize> {
        if i == 0 || i >= self.levels.len() {
            return Ok(0);
        }
        let prev = &self.levels[i - 1];
        let mut row_index: BTreeMap<u32, u32> = BTreeMap::new();
        for (idx, e) in prev.iter().enumerate() {
            if e.degree == q {
                let n = row_index.len() as u32;
                row_index.insert(idx as u32, n);
            }
        }
        if row_index.is_empty() {
            return Ok(0);
        }
        let cols: Vec<SparseVec> = self.levels[i]
            .iter()
            .filter(|e| e.degree == q)
            .map(|e| {
                let mut v: SparseVec =
                    e.image.iter().filter(|t| t.mono.is_one()).map(|t| (row_index[&t.comp], t.coef)).collect();
                v.sort_unstable_by_key(|x| x.0);
                v
            })
            .collect();
        rank(self.ring.field(), row_index.len(), cols, budget)
    }

    /// Minimal graded Betti numbers `β_{i,q}` for all computed cells:
    /// `β = f_{i,q} - rank(d_i)_q - rank(d_{i+1})_q` on the degree-zero parts.
    /// Cells at the last computed level are only exact when the resolution
    /// is complete.
    pub fn betti_numbers(&self, budget: &Budget) -> Result<BTreeMap<(usize, u32), u64>> {
        let frame = self.frame_ranks();
        let mut out = BTreeMap::new();
        for (&(i, q), &f) in &frame {
            let r_in = self.constant_rank(i, q, budget)? as u64;
            let r_out = self.constant_rank(i + 1, q, budget)? as u64;
            let b = f - r_in - r_out;
            if b > 0 {
                out.insert((i, q), b);
            }
        }
        Ok(out)
    }
}

fn next_level(
    ring: &Ring,
    below: &[FrameElement],
    prev: &[FrameElement],
    max_degree: Option<u32>,
    complete: &mut bool,
    budget: &Budget,
) -> Result<Vec<FrameElement>> {
    // frame: minimal generators of (lead_b : lead_a) over later b in the
    // same component
    let mut frame: Vec<(usize, Monomial, usize)> = Vec::new();
    let mut start = 0;
    while start < prev.len() {
        let comp = prev[start].comp;
        let mut end = start;
        while end < prev.len() && prev[end].comp == comp {
            end += 1;
        }
        for a in start..end {
            let ma = &prev[a].lead;
            let mut gens: Vec<(Monomial, usize)> = (a + 1..end)
                .map(|b| (ma.quotient_of(&ma.lcm(&prev[b].lead)).unwrap(), b))
                .collect();
            gens.sort_by(|x, y| x.0.degree().cmp(&y.0.degree()).then(x.1.cmp(&y.1)));
            let mut minimal: Vec<(Monomial, usize)> = Vec::new();
            for (q, b) in gens {
                if !minimal.iter().any(|(m, _)| m.divides(&q)) {
                    minimal.push((q, b));
                }
            }
            minimal.sort_by(|x, y| lex_desc(&x.0, &y.0));
            for (q, b) in minimal {
                let degree = prev[a].degree + q.degree();
                if max_degree.is_some_and(|d| degree > d) {
                    *complete = false;
                    continue;
                }
                frame.push((a, q, b));
            }
        }
        start = end;
    }

    let totals: Vec<Monomial> = below.iter().map(|e| e.total.clone()).collect();
    let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); below.len()];
    for (idx, e) in prev.iter().enumerate() {
        by_comp[e.comp].push(idx);
    }
    let k = ring.field();
    let mut out = Vec::with_capacity(frame.len());
    for (a, q, b) in frame {
        let ea = &prev[a];
        let eb = &prev[b];
        let lcm = ea.lead.lcm(&eb.lead);
        let qb = eb.lead.quotient_of(&lcm).unwrap();
        let ca = ea.image[0].coef;
        let cb = eb.image[0].coef;
        let cb_scaled = k.neg(k.mul(ca, k.inv(cb)));

        let mut syz: Vec<FrameTerm> = vec![
            FrameTerm { mono: q.clone(), comp: a as u32, coef: 1 },
            FrameTerm { mono: qb.clone(), comp: b as u32, coef: cb_scaled },
        ];
        let mut heap: BinaryHeap<HeapTerm> = BinaryHeap::new();
        push_scaled(&mut heap, &k, &totals, ea, &q, 1, true);
        push_scaled(&mut heap, &k, &totals, eb, &qb, cb_scaled, true);
        let mut steps = 0u64;
        while let Some(top) = heap.pop() {
            let mut coef = top.coef;
            while heap.peek().is_some_and(|h| h.comp == top.comp && h.total == top.total) {
                coef = k.add(coef, heap.pop().unwrap().coef);
            }
            if coef == 0 {
                continue;
            }
            let comp = top.comp as usize;
            let reducer = by_comp
                .get(comp)
                .and_then(|list| list.iter().copied().find(|&r| prev[r].lead.divides(&top.mono)))
                .ok_or_else(|| Error::Structural("Schreyer reduction found an irreducible term".into()))?;
            let er = &prev[reducer];
            let quo = er.lead.quotient_of(&top.mono).unwrap();
            let c = k.neg(k.mul(coef, k.inv(er.image[0].coef)));
            push_scaled(&mut heap, &k, &totals, er, &quo, c, false);
            syz.push(FrameTerm { mono: quo, comp: reducer as u32, coef: c });
            steps += 1;
            if steps.is_multiple_of(64) {
                budget.charge(64, "schreyer reduction")?;
            }
        }
        budget.charge(steps % 64 + 1, "schreyer reduction")?;
        // sort by the Schreyer order of this level and merge duplicates
        let mut keyed: Vec<(Monomial, FrameTerm)> =
            syz.into_iter().map(|t| (t.mono.mul(&prev[t.comp as usize].total), t)).collect();
        keyed.sort_by(|x, y| schreyer_cmp(&y.0, y.1.comp, &x.0, x.1.comp));
        let mut image: Vec<FrameTerm> = Vec::with_capacity(keyed.len());
        let mut last_key: Option<(Monomial, u32)> = None;
        for (key, t) in keyed {
            if last_key.as_ref().is_some_and(|(m, c)| *m == key && *c == t.comp) {
                let l = image.last_mut().unwrap();
                l.coef = k.add(l.coef, t.coef);
                continue;
            }
            last_key = Some((key, t.comp));
            image.push(t);
        }
        image.retain(|t| t.coef != 0);
        debug_assert!(image[0].comp as usize == a && image[0].mono == q);
        out.push(FrameElement {
            comp: a,
            degree: ea.degree + q.degree(),
            total: q.mul(&ea.total),
            lead: q,
            image,
        });
    }
    Ok(out)
}

/// Pushes `c * m * image(e)` onto the heap, optionally skipping the leading
/// term (which the caller has already cancelled).
fn push_scaled(
    heap: &mut BinaryHeap<HeapTerm>,
    k: &PrimeField,
    totals: &[Monomial],
    e: &FrameElement,
    m: &Monomial,
    c: u32,
    with_lead: bool,
) {
    let skip = usize::from(!with_lead);
    for t in &e.image[skip..] {
        let mono = t.mono.mul(m);
        let total = mono.mul(&totals[t.comp as usize]);
        heap.push(HeapTerm { total, comp: t.comp, mono, coef: k.mul(t.coef, c) });
    }
}
