//! `k`-normality through graded local duality:
//! `H^1_m(S/I)_k ≅ Ext^{n-1}_S(S/I, S(-n))_{-k}^∨`, with the Ext computed
//! from a Schreyer resolution.

use std::collections::HashMap;

use crate::betti::koszul::KoszulComplex;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::hilbert::binomial;
use crate::groebner::resolution::SchreyerResolution;
use crate::ideal::Ideal;
use crate::matrix::{rank, SparseVec};
use crate::monomial::{monomials_of_degree, Monomial};

/// `Ext^e_S(S/I, S)` in single degrees, from the dual of a free resolution.
pub struct ExtModules {
    resolution: SchreyerResolution,
    /// `incidence[j][b]`: terms `(a, mono, coef)` of images of level-`j`
    /// elements `a` in component `b`.
    incidence: Vec<Vec<Vec<(usize, Monomial, u32)>>>,
}

impl ExtModules {
    pub fn new(ideal: &Ideal, budget: &Budget) -> Result<Self> {
        let resolution = SchreyerResolution::compute(ideal, None, None, budget)?;
        if !resolution.is_complete() {
            return Err(Error::Structural("duality needs a complete resolution".into()));
        }
        let levels = resolution.levels();
        let mut incidence = vec![Vec::new()];
        for j in 1..levels.len() {
            let mut inc: Vec<Vec<(usize, Monomial, u32)>> = vec![Vec::new(); levels[j - 1].len()];
            for (a, e) in levels[j].iter().enumerate() {
                for t in &e.image {
                    inc[t.comp as usize].push((a, t.mono.clone(), t.coef));
                }
            }
            incidence.push(inc);
        }
        Ok(Self { resolution, incidence })
    }

    fn n_vars(&self) -> usize {
        self.resolution.ring().n_vars()
    }

    fn hom_dim(&self, j: usize, d: i64) -> u64 {
        let n = self.n_vars() as u64;
        let Some(level) = self.resolution.levels().get(j) else { return 0 };
        level
            .iter()
            .filter_map(|e| {
                let s = e.degree as i64 + d;
                (s >= 0).then(|| binomial(s as u64 + n - 1, n - 1))
            })
            .sum()
    }

    /// Rank of the transpose `Hom(F_{j-1}, S)_d → Hom(F_j, S)_d`.
    fn dual_rank(&self, j: usize, d: i64, budget: &Budget) -> Result<usize> {
        let levels = self.resolution.levels();
        if j == 0 || j >= levels.len() {
            return Ok(0);
        }
        let n = self.n_vars();
        let mut rows: HashMap<(usize, Monomial), u32> = HashMap::new();
        let mut cols: Vec<SparseVec> = Vec::new();
        for (b, e) in levels[j - 1].iter().enumerate() {
            let s = e.degree as i64 + d;
            if s < 0 {
                continue;
            }
            for u in monomials_of_degree(n, s as u32) {
                let mut col: SparseVec = Vec::new();
                for (a, mono, coef) in &self.incidence[j][b] {
                    let key = (*a, u.mul(mono));
                    let next = rows.len() as u32;
                    let r = *rows.entry(key).or_insert(next);
                    col.push((r, *coef));
                }
                col.sort_unstable_by_key(|x| x.0);
                // merge repeated rows
                let mut merged: SparseVec = Vec::with_capacity(col.len());
                let field = self.resolution.ring().field();
                for (r, c) in col {
                    match merged.last_mut() {
                        Some(last) if last.0 == r => last.1 = field.add(last.1, c),
                        _ => merged.push((r, c)),
                    }
                }
                merged.retain(|x| x.1 != 0);
                cols.push(merged);
            }
        }
        budget.charge(cols.len() as u64 + 1, "ext")?;
        rank(self.resolution.ring().field(), rows.len(), cols, budget)
    }

    /// `dim Ext^e(S/I, S)_d`.
    pub fn dimension(&self, e: usize, d: i64, budget: &Budget) -> Result<u64> {
        let dim = self.hom_dim(e, d);
        if dim == 0 {
            return Ok(0);
        }
        let out = self.dual_rank(e + 1, d, budget)? as u64;
        let inc = self.dual_rank(e, d, budget)? as u64;
        Ok(dim - out - inc)
    }

    /// `dim H^1_m(S/I)_k`.
    pub fn first_local_cohomology(&self, k: i64, budget: &Budget) -> Result<u64> {
        let n = self.n_vars();
        if n == 0 {
            return Ok(0);
        }
        self.dimension(n - 1, -k - n as i64, budget)
    }
}

fn sheaf_regularity(ideal: &Ideal, budget: &Budget) -> Result<u32> {
    Ok(KoszulComplex::for_quotient(ideal, budget)?.regularity() + 1)
}

/// Whether the restriction `H^0(O(k)) → H^0(O_X(k))` is onto, for saturated
/// `I` and `k ≥ 1`. Degrees `k ≥ m - 1` hold by Mumford's bound without
/// computation.
pub fn k_normality(ideal: &Ideal, k: u32, budget: &Budget) -> Result<bool> {
    if k == 0 {
        return Err(Error::Precondition("k-normality is defined for k ≥ 1".into()));
    }
    let m = sheaf_regularity(ideal, budget)?;
    if k + 1 >= m {
        return Ok(true);
    }
    Ok(ExtModules::new(ideal, budget)?.first_local_cohomology(k as i64, budget)? == 0)
}

/// `k`-normality decided by duality alone, without the regularity shortcut.
pub fn k_normality_by_duality(ideal: &Ideal, k: u32, budget: &Budget) -> Result<bool> {
    Ok(ExtModules::new(ideal, budget)?.first_local_cohomology(k as i64, budget)? == 0)
}

/// Least `k` in `1..=up_to` where `k`-normality fails.
pub fn first_non_normal_degree(ideal: &Ideal, up_to: u32, budget: &Budget) -> Result<Option<u32>> {
    let m = sheaf_regularity(ideal, budget)?;
    let last = up_to.min(m.saturating_sub(2));
    if last == 0 {
        return Ok(None);
    }
    let ext = ExtModules::new(ideal, budget)?;
    for k in 1..=last {
        if ext.first_local_cohomology(k as i64, budget)? != 0 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Least `s ≥ 1` with `k`-normality for every `k ≥ s`.
pub fn normality_threshold(ideal: &Ideal, budget: &Budget) -> Result<u32> {
    let m = sheaf_regularity(ideal, budget)?;
    if m <= 2 {
        return Ok(1);
    }
    let ext = ExtModules::new(ideal, budget)?;
    for k in (1..=m - 2).rev() {
        if ext.first_local_cohomology(k as i64, budget)? != 0 {
            return Ok(k + 1);
        }
    }
    Ok(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(text: &str) -> Ideal {
        Ideal::parse_text(text).unwrap()
    }

    const QUARTIC: &str =
        "ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx1*x2 - x0*x3\nx0*x2^2 - x1^2*x3\nx1^3 - x0^2*x2\nx2^3 - x1*x3^2\n";

    #[test]
    fn rational_quartic_normality() {
        let b = Budget::unlimited();
        let i = ideal(QUARTIC);
        assert!(!k_normality(&i, 1, &b).unwrap());
        assert!(k_normality(&i, 2, &b).unwrap());
        assert!(k_normality_by_duality(&i, 2, &b).unwrap());
        assert!(k_normality_by_duality(&i, 3, &b).unwrap());
        assert_eq!(normality_threshold(&i, &b).unwrap(), 2);
        // one missing section in degree 1: h0(O_C(1)) = 5 against 4 linear forms
        let ext = ExtModules::new(&i, &b).unwrap();
        assert_eq!(ext.first_local_cohomology(1, &b).unwrap(), 1);
    }

    #[test]
    fn hypersurfaces_and_acm_curves_are_normal() {
        let b = Budget::unlimited();
        let cubic = ideal("ring: p=32003 vars=[x,y,z]\ngens:\ny^2*z - x^3 - x^2*z\n");
        assert_eq!(normality_threshold(&cubic, &b).unwrap(), 1);
        assert!(k_normality_by_duality(&cubic, 1, &b).unwrap());
        let tc = ideal("ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n");
        assert_eq!(normality_threshold(&tc, &b).unwrap(), 1);
        for k in 1..4 {
            assert!(k_normality_by_duality(&tc, k, &b).unwrap());
        }
    }
}
