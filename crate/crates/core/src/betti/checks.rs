//! Property predicates read off Betti numbers: `N_0`, `N_{2,p}`, `N_p`,
//! regularity and generation degree.

use serde::{Deserialize, Serialize};

use crate::betti::duality::{first_non_normal_degree, normality_threshold};
use crate::betti::koszul::KoszulComplex;
use crate::betti::table::{BettiEntry, BettiTable, Window};
use crate::betti::{betti_table, Method};
use crate::budget::Budget;
use crate::error::Result;
use crate::ideal::Ideal;

/// How far a syzygy property holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PBound {
    /// Holds for `p` and fails for `p + 1`.
    Exact(usize),
    /// Holds for every `p`.
    Unbounded,
    /// Holds up to the evaluated window; larger `p` were not examined.
    AtLeast(usize),
}

impl PBound {
    /// Whether the property holds at `p`, when that is decided.
    pub fn holds_at(&self, p: usize) -> Option<bool> {
        match *self {
            PBound::Exact(q) => Some(p <= q),
            PBound::Unbounded => Some(true),
            PBound::AtLeast(q) => (p <= q).then_some(true),
        }
    }

    pub fn label(&self) -> String {
        match self {
            PBound::Exact(p) => p.to_string(),
            PBound::Unbounded => "inf".into(),
            PBound::AtLeast(p) => format!(">={p}"),
        }
    }
}

/// `N_p` outcome: `N_0` failing is reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NpVerdict {
    FailsN0,
    Holds(PBound),
}

impl NpVerdict {
    pub fn holds_at(&self, p: usize) -> Option<bool> {
        match self {
            NpVerdict::FailsN0 => Some(false),
            NpVerdict::Holds(b) => b.holds_at(p),
        }
    }

    /// `-1` for a failed `N_0`, otherwise the bound.
    pub fn label(&self) -> String {
        match self {
            NpVerdict::FailsN0 => "-1".into(),
            NpVerdict::Holds(b) => b.label(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct N0Verdict {
    pub holds: bool,
    pub depth: usize,
    /// Least `k` with `H^1_m(S/I)_k ≠ 0`, when that is why `N_0` fails.
    pub witness: Option<u32>,
}

/// `N_{2,p}` from a table: the least `i` with a nonzero cell in rows `≥ 2`
/// gives `p = i - 1`. Unknown cells stop the scan with a lower bound.
pub fn n2p_from_table(table: &BettiTable) -> PBound {
    let w = table.window();
    for i in 1..=w.max_i {
        let mut unknown = false;
        for q in i as u32 + 2..=w.max_q {
            match table.get(i, q) {
                Some(0) => {}
                Some(_) => return PBound::Exact(i - 1),
                None => unknown = true,
            }
        }
        if unknown {
            return PBound::AtLeast(i - 1);
        }
    }
    if table.is_complete() {
        PBound::Unbounded
    } else {
        PBound::AtLeast(w.max_i)
    }
}

/// Whether `β_{i,q} = 0` for `1 ≤ i ≤ p` and `q ≥ i + 2`.
pub fn satisfies_n2p(complex: &KoszulComplex, p: usize, budget: &Budget) -> Result<bool> {
    let reg = complex.regularity();
    for i in 1..=p.min(complex.koszul_rank()) {
        for j in 2..=reg {
            if complex.cell(i, i as u32 + j, budget)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `N_{2,p}` by scanning rows `≥ 2` column by column, up to `max_p + 1`.
pub fn n2p_from_complex(complex: &KoszulComplex, max_p: Option<usize>, budget: &Budget) -> Result<PBound> {
    let reg = complex.regularity();
    let d = complex.koszul_rank();
    let last = max_p.map_or(d, |p| (p + 1).min(d));
    for i in 1..=last {
        for j in 2..=reg {
            if complex.cell(i, i as u32 + j, budget)? != 0 {
                return Ok(PBound::Exact(i - 1));
            }
        }
    }
    Ok(if last >= d { PBound::Unbounded } else { PBound::AtLeast(last) })
}

/// `N_0` for the ring the complex describes: depth at least two.
pub fn n0_from_complex(complex: &KoszulComplex) -> N0Verdict {
    N0Verdict { holds: complex.depth() >= 2, depth: complex.depth(), witness: None }
}

pub fn np_from_complex(complex: &KoszulComplex, max_p: Option<usize>, budget: &Budget) -> Result<NpVerdict> {
    if !n0_from_complex(complex).holds {
        return Ok(NpVerdict::FailsN0);
    }
    Ok(NpVerdict::Holds(n2p_from_complex(complex, max_p, budget)?))
}

/// Whether `N_p` holds: `N_0` plus vanishing of rows `≥ 2` through column `p`.
pub fn satisfies_np(complex: &KoszulComplex, p: usize, budget: &Budget) -> Result<bool> {
    Ok(n0_from_complex(complex).holds && satisfies_n2p(complex, p, budget)?)
}

/// Largest degree of a minimal generator.
pub fn generation_degree_of(complex: &KoszulComplex, budget: &Budget) -> Result<u32> {
    let reg = complex.regularity();
    for q in (1..=reg + 1).rev() {
        if complex.cell(1, q, budget)? != 0 {
            return Ok(q);
        }
    }
    Ok(0)
}

/// `m` such that the ideal sheaf is `m`-regular: `max(q - i) + 1`.
pub fn regularity_of_sheaf(ideal: &Ideal, budget: &Budget) -> Result<u32> {
    Ok(KoszulComplex::for_quotient(ideal, budget)?.regularity() + 1)
}

pub fn check_n0(ideal: &Ideal, budget: &Budget) -> Result<N0Verdict> {
    let complex = KoszulComplex::for_quotient(ideal, budget)?;
    let mut verdict = n0_from_complex(&complex);
    if !verdict.holds && verdict.depth == 1 {
        verdict.witness = first_non_normal_degree(ideal, complex.regularity() + 1, budget)?;
    }
    Ok(verdict)
}

pub fn check_n2p(ideal: &Ideal, max_p: Option<usize>, budget: &Budget) -> Result<PBound> {
    n2p_from_complex(&KoszulComplex::for_quotient(ideal, budget)?, max_p, budget)
}

pub fn check_np(ideal: &Ideal, max_p: Option<usize>, budget: &Budget) -> Result<NpVerdict> {
    np_from_complex(&KoszulComplex::for_quotient(ideal, budget)?, max_p, budget)
}

/// Everything the analyzer reports about one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub betti: Vec<BettiEntry>,
    pub regularity: u32,
    pub projdim: usize,
    pub n0: bool,
    pub max_n2p: String,
    pub normality_from: Option<u32>,
    pub generation_degree: u32,
    pub complete: bool,
}

pub fn property_report(ideal: &Ideal, window: Option<Window>, method: Method, budget: &Budget) -> Result<PropertyReport> {
    let complex = KoszulComplex::for_quotient(ideal, budget)?;
    let table = match method {
        Method::Koszul => complex.table(window, budget)?,
        Method::Schreyer => betti_table(ideal, window, method, budget)?,
    };
    let normality_from = match normality_threshold(ideal, budget) {
        Ok(s) => Some(s),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    Ok(PropertyReport {
        betti: table.nonzero().collect(),
        regularity: complex.regularity() + 1,
        projdim: complex.projdim(),
        n0: n0_from_complex(&complex).holds,
        max_n2p: n2p_from_table(&table).label(),
        normality_from,
        generation_degree: generation_degree_of(&complex, budget)?,
        complete: table.is_complete(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(text: &str) -> Ideal {
        Ideal::parse_text(text).unwrap()
    }

    const TWISTED_CUBIC: &str = "ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n";
    const QUARTIC: &str =
        "ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx1*x2 - x0*x3\nx0*x2^2 - x1^2*x3\nx1^3 - x0^2*x2\nx2^3 - x1*x3^2\n";

    #[test]
    fn twisted_cubic_predicates() {
        let b = Budget::unlimited();
        let i = ideal(TWISTED_CUBIC);
        assert_eq!(regularity_of_sheaf(&i, &b).unwrap(), 2);
        assert!(check_n0(&i, &b).unwrap().holds);
        assert_eq!(check_n2p(&i, None, &b).unwrap(), PBound::Unbounded);
        assert_eq!(check_np(&i, None, &b).unwrap(), NpVerdict::Holds(PBound::Unbounded));
    }

    #[test]
    fn rational_quartic_fails_n0() {
        let b = Budget::unlimited();
        let i = ideal(QUARTIC);
        assert_eq!(regularity_of_sheaf(&i, &b).unwrap(), 3);
        let n0 = check_n0(&i, &b).unwrap();
        assert!(!n0.holds);
        assert_eq!(n0.witness, Some(1));
        assert_eq!(check_np(&i, None, &b).unwrap(), NpVerdict::FailsN0);
        // cubic generators break N_{2,1}
        assert_eq!(check_n2p(&i, None, &b).unwrap(), PBound::Exact(0));
    }

    #[test]
    fn complete_intersection_with_a_cubic() {
        let b = Budget::unlimited();
        let i = ideal("ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx0^2 + x1^2 + x2^2 + x3^2\nx0^3 + x1^3 + x2^3 + x3^3\n");
        assert_eq!(check_n2p(&i, None, &b).unwrap(), PBound::Exact(0));
        let report = property_report(&i, None, Method::Koszul, &b).unwrap();
        assert_eq!(report.regularity, 4);
        assert_eq!(report.generation_degree, 3);
        assert_eq!(report.normality_from, Some(1));
        assert!(report.n0 && report.complete);
        assert_eq!(report.max_n2p, "0");
    }

    #[test]
    fn windowed_bounds() {
        let t = BettiTable::complete_from([((0, 0), 1), ((1, 2), 6), ((2, 3), 8), ((3, 4), 3)]);
        assert_eq!(n2p_from_table(&t), PBound::Unbounded);
        assert_eq!(PBound::AtLeast(3).holds_at(4), None);
        assert_eq!(PBound::Exact(5).holds_at(6), Some(false));
    }
}
