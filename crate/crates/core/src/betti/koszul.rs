//! Betti numbers from Koszul complexes `∧^i V' ⊗ A'_j`, after reducing by a
//! maximal regular sequence.
//!
//! `A'` is the (Veronese subring of the) reduced quotient with standard
//! monomial bases and `V'` its degree-one part. Each complex splits into
//! blocks by the grading of `S` modulo the lattice spanned by exponent
//! differences inside Gröbner basis elements.
//!
//! The same bases also describe the monomial algebra `S/in(I')`, a flat
//! degeneration of `A'` over the same polynomial ring. Betti numbers can only
//! grow under this degeneration, so a cell vanishing there vanishes for `A'`
//! and the exact computation is skipped.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::betti::reduction::{reduce, Reduction};
use crate::betti::table::{BettiTable, Window};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::grading::Lattice;
use crate::groebner::{hilbert_numerator, normal_form, standard_monomials};
use crate::ideal::Ideal;
use crate::matrix::{rank, SparseVec};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

struct Piece {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

/// Multiplication `V' × A'_j → A'_{j+1}` as sparse vectors, `[v][a]`.
type Action = Vec<Vec<SparseVec>>;

pub struct KoszulComplex {
    reduction: Reduction,
    target_vars: usize,
    v_basis: Vec<Monomial>,
    leads: Vec<Monomial>,
    monomial: bool,
    lattice: Lattice,
    pieces: Mutex<Vec<Arc<Piece>>>,
    actions: Mutex<HashMap<(u32, bool), Arc<Action>>>,
    ranks: Mutex<HashMap<(usize, u32, bool), usize>>,
}

fn exps(m: &Monomial) -> Vec<i64> {
    m.exponents().iter().map(|&e| e as i64).collect()
}

impl KoszulComplex {
    /// The Koszul side of `S/I` over `S`.
    pub fn for_quotient(ideal: &Ideal, budget: &Budget) -> Result<Self> {
        let reduction = reduce(ideal, 1, false, budget)?;
        let n = reduction.ring.n_vars();
        // V' is spanned by the variables that are not leading terms of the
        // linear regular sequence
        let linear = Ideal::new(&reduction.ring, reduction.regular.clone())?;
        let lin_gb = crate::groebner::groebner(&linear, budget)?;
        let v_basis = standard_monomials(&lin_gb, 1);
        Self::build(reduction, n, v_basis)
    }

    /// The Koszul side of the `ℓ`-th Veronese subring of `S/I` over the
    /// polynomial ring on `(S/I)_ℓ`, i.e. of the re-embedding by degree-`ℓ`
    /// forms.
    pub fn for_veronese(ideal: &Ideal, ell: u32, budget: &Budget) -> Result<Self> {
        let reduction = reduce(ideal, ell, true, budget)?;
        let original = crate::groebner::groebner(&ideal.with_order(crate::monomial::MonomialOrder::Grevlex), budget)?;
        let target_vars = hilbert_numerator(&original)?.function(ell) as usize;
        let v_basis = standard_monomials(&reduction.gb, ell);
        Self::build(reduction, target_vars, v_basis)
    }

    fn build(reduction: Reduction, target_vars: usize, v_basis: Vec<Monomial>) -> Result<Self> {
        if v_basis.len() > 64 {
            return Err(Error::Structural(format!("{} Koszul generators exceed the supported 64", v_basis.len())));
        }
        let gb = &reduction.gb;
        let n = reduction.ring.n_vars();
        let leads = gb.leading_monomials();
        let monomial = gb.basis().iter().all(|g| g.len() == 1);
        let lattice = Lattice::from_generators(
            n,
            gb.basis().iter().flat_map(|g| {
                let lead = exps(g.leading_monomial().unwrap());
                g.terms()[1..]
                    .iter()
                    .map(move |(m, _)| exps(m).iter().zip(&lead).map(|(a, b)| a - b).collect::<Vec<i64>>())
                    .collect::<Vec<_>>()
            }),
        );
        Ok(Self {
            reduction,
            target_vars,
            v_basis,
            leads,
            monomial,
            lattice,
            pieces: Mutex::new(Vec::new()),
            actions: Mutex::new(HashMap::new()),
            ranks: Mutex::new(HashMap::new()),
        })
    }

    /// Number of variables of the polynomial ring the Betti numbers refer to.
    pub fn target_vars(&self) -> usize {
        self.target_vars
    }

    /// Length of the regular sequence found: the depth of the ring.
    pub fn depth(&self) -> usize {
        self.reduction.depth()
    }

    /// Projective dimension, by Auslander–Buchsbaum.
    pub fn projdim(&self) -> usize {
        self.target_vars - self.depth()
    }

    /// `max(q - i)` over nonzero Betti numbers.
    pub fn regularity(&self) -> u32 {
        self.reduction.regularity
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    /// Dimension of the reduced generator space `V'`.
    pub fn koszul_rank(&self) -> usize {
        self.v_basis.len()
    }

    fn piece(&self, j: u32) -> Arc<Piece> {
        let mut pieces = self.pieces.lock().unwrap();
        while pieces.len() <= j as usize {
            let d = pieces.len() as u32 * self.reduction.ell;
            let basis = standard_monomials(&self.reduction.gb, d);
            let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k as u32)).collect();
            pieces.push(Arc::new(Piece { basis, index }));
        }
        pieces[j as usize].clone()
    }

    fn action(&self, j: u32, degenerate: bool) -> Result<Arc<Action>> {
        if let Some(a) = self.actions.lock().unwrap().get(&(j, degenerate)) {
            return Ok(a.clone());
        }
        let src = self.piece(j);
        let dst = self.piece(j + 1);
        let ring = &self.reduction.ring;
        let mut table: Action = Vec::with_capacity(self.v_basis.len());
        for v in &self.v_basis {
            let mut row = Vec::with_capacity(src.basis.len());
            for a in &src.basis {
                let m = v.mul(a);
                let image: SparseVec = if degenerate || self.monomial {
                    if self.leads.iter().any(|l| l.divides(&m)) {
                        vec![]
                    } else {
                        vec![(dst.index[&m], 1)]
                    }
                } else {
                    let nf = normal_form(&Polynomial::monomial(ring, m, 1), &self.reduction.gb)?;
                    let mut sv: SparseVec = nf.terms().iter().map(|(t, c)| (dst.index[t], *c)).collect();
                    sv.sort_unstable_by_key(|e| e.0);
                    sv
                };
                row.push(image);
            }
            table.push(row);
        }
        let table = Arc::new(table);
        self.actions.lock().unwrap().insert((j, degenerate), table.clone());
        Ok(table)
    }

    /// Rank of `∂: ∧^i V' ⊗ A'_j → ∧^{i-1} V' ⊗ A'_{j+1}`.
    fn differential_rank(&self, i: usize, j: u32, degenerate: bool, budget: &Budget) -> Result<usize> {
        let d = self.v_basis.len();
        if i == 0 || i > d {
            return Ok(0);
        }
        let degenerate = degenerate && !self.monomial;
        if let Some(&r) = self.ranks.lock().unwrap().get(&(i, j, degenerate)) {
            return Ok(r);
        }
        let src = self.piece(j);
        let dst = self.piece(j + 1);
        if src.basis.is_empty() || dst.basis.is_empty() {
            return Ok(0);
        }
        let action = self.action(j, degenerate)?;
        let no_lattice = Lattice::zero(self.lattice.dim());
        let lattice = if degenerate { &no_lattice } else { &self.lattice };

        // group the domain by grading class
        let v_exps: Vec<Vec<i64>> = self.v_basis.iter().map(exps).collect();
        let mut blocks: HashMap<Vec<i64>, Vec<(u64, u32)>> = HashMap::new();
        for (a_idx, a) in src.basis.iter().enumerate() {
            let base = exps(a);
            let mut sum = base.clone();
            enumerate_subsets(d, i, 0, 0, &v_exps, &mut sum, &mut |mask, s| {
                let mut key = s.to_vec();
                lattice.reduce(&mut key);
                blocks.entry(key).or_default().push((mask, a_idx as u32));
            });
        }
        budget.check_time("koszul blocks")?;
        let field = self.reduction.ring.field();
        let blocks: Vec<Vec<(u64, u32)>> = blocks.into_values().collect();
        let total = blocks
            .into_par_iter()
            .map(|domain| -> Result<usize> {
                let mut rows: HashMap<(u64, u32), u32> = HashMap::new();
                let mut cols: Vec<SparseVec> = Vec::with_capacity(domain.len());
                for (mask, a) in domain {
                    let mut col: SparseVec = Vec::new();
                    let mut bits = mask;
                    let mut position = 0u32;
                    while bits != 0 {
                        let k = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let face = mask & !(1u64 << k);
                        let negative = position % 2 == 1;
                        for &(a2, c) in &action[k][a as usize] {
                            let next = rows.len() as u32;
                            let r = *rows.entry((face, a2)).or_insert(next);
                            col.push((r, if negative { field.neg(c) } else { c }));
                        }
                        position += 1;
                    }
                    col.sort_unstable_by_key(|e| e.0);
                    cols.push(col);
                }
                budget.charge(cols.len() as u64, "koszul differential")?;
                rank(field, rows.len(), cols, budget)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        self.ranks.lock().unwrap().insert((i, j, degenerate), total);
        Ok(total)
    }

    fn chain_dim(&self, i: usize, j: u32) -> u64 {
        let d = self.v_basis.len() as u64;
        crate::groebner::hilbert::binomial(d, i as u64) * self.piece(j).basis.len() as u64
    }

    fn homology(&self, i: usize, j: u32, degenerate: bool, budget: &Budget) -> Result<u64> {
        let dim = self.chain_dim(i, j);
        if dim == 0 {
            return Ok(0);
        }
        let out = self.differential_rank(i, j, degenerate, budget)? as u64;
        let inc = if j == 0 { 0 } else { self.differential_rank(i + 1, j - 1, degenerate, budget)? as u64 };
        Ok(dim - out - inc)
    }

    /// `β_{i,q}` over the target polynomial ring.
    pub fn cell(&self, i: usize, q: u32, budget: &Budget) -> Result<u64> {
        let Some(j) = q.checked_sub(i as u32) else { return Ok(0) };
        if i > self.v_basis.len() || j > self.regularity() {
            return Ok(0);
        }
        if !self.monomial && self.homology(i, j, true, budget)? == 0 {
            return Ok(0);
        }
        self.homology(i, j, false, budget)
    }

    /// All cells inside `window` (everything when `None`). The table is
    /// complete when the window covers `i ≤ projdim` and `q - i ≤ regularity`.
    pub fn table(&self, window: Option<Window>, budget: &Budget) -> Result<BettiTable> {
        let d = self.v_basis.len();
        let reg = self.regularity();
        let full = Window::new(d, d as u32 + reg);
        let window = window.unwrap_or(full);
        let mut table = BettiTable::new(window);
        for i in 0..=d.min(window.max_i) {
            for j in 0..=reg {
                let q = i as u32 + j;
                if q > window.max_q {
                    break;
                }
                table.set(i, q, self.cell(i, q, budget)?);
            }
        }
        table.set_complete(window.max_i >= d && window.max_q >= d as u32 + reg);
        Ok(table)
    }
}

/// Calls `f(mask, exponent_sum)` for each `size`-subset of `0..n` with the
/// running sum of their exponent vectors added to `sum`.
fn enumerate_subsets(
    n: usize,
    size: usize,
    start: usize,
    mask: u64,
    v_exps: &[Vec<i64>],
    sum: &mut Vec<i64>,
    f: &mut impl FnMut(u64, &[i64]),
) {
    if size == 0 {
        f(mask, sum);
        return;
    }
    for k in start..=n - size {
        for (s, e) in sum.iter_mut().zip(&v_exps[k]) {
            *s += e;
        }
        enumerate_subsets(n, size - 1, k + 1, mask | (1u64 << k), v_exps, sum, f);
        for (s, e) in sum.iter_mut().zip(&v_exps[k]) {
            *s -= e;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(text: &str) -> Ideal {
        Ideal::parse_text(text).unwrap()
    }

    #[test]
    fn twisted_cubic_table() {
        let i = ideal("ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n");
        let b = Budget::unlimited();
        let k = KoszulComplex::for_quotient(&i, &b).unwrap();
        let t = k.table(None, &b).unwrap();
        assert!(t.is_complete());
        let expected: std::collections::BTreeMap<(usize, u32), u64> =
            [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)].into_iter().collect();
        assert_eq!(t.entries(), expected);
    }

    #[test]
    fn veronese_surface_from_the_plane() {
        let i = ideal("ring: p=32003 vars=[x0,x1,x2]\ngens:\n");
        let b = Budget::unlimited();
        let k = KoszulComplex::for_veronese(&i, 2, &b).unwrap();
        assert_eq!(k.target_vars(), 6);
        let t = k.table(None, &b).unwrap();
        let expected: std::collections::BTreeMap<(usize, u32), u64> =
            [((0, 0), 1), ((1, 2), 6), ((2, 3), 8), ((3, 4), 3)].into_iter().collect();
        assert_eq!(t.entries(), expected);
    }

    #[test]
    fn rational_quartic_table() {
        let i = ideal(
            "ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx1*x2 - x0*x3\nx0*x2^2 - x1^2*x3\nx1^3 - x0^2*x2\nx2^3 - x1*x3^2\n",
        );
        let b = Budget::unlimited();
        let k = KoszulComplex::for_quotient(&i, &b).unwrap();
        let t = k.table(None, &b).unwrap();
        let expected: std::collections::BTreeMap<(usize, u32), u64> =
            [((0, 0), 1), ((1, 2), 1), ((1, 3), 3), ((2, 4), 4), ((3, 5), 1)].into_iter().collect();
        assert_eq!(t.entries(), expected);
        assert_eq!(k.projdim(), 3);
    }
}
