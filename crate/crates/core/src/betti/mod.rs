//! Graded Betti tables by Koszul complexes and by Schreyer resolutions.

pub mod checks;
pub mod duality;
pub mod koszul;
pub mod reduction;
pub mod table;

use serde::{Deserialize, Serialize};

pub use checks::{
    check_n0, check_n2p, check_np, generation_degree_of, property_report, regularity_of_sheaf, satisfies_n2p, satisfies_np,
    N0Verdict, NpVerdict, PBound, PropertyReport,
};
pub use duality::{k_normality, normality_threshold};
pub use koszul::KoszulComplex;
pub use table::{BettiEntry, BettiTable, Window};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::resolution::SchreyerResolution;
use crate::ideal::Ideal;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Koszul,
    Schreyer,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "koszul" => Ok(Method::Koszul),
            "schreyer" => Ok(Method::Schreyer),
            other => Err(Error::Precondition(format!("unknown Betti method '{other}'"))),
        }
    }
}

/// Betti table of `S/I` restricted to `window` (all of it when `None`).
pub fn betti_table(ideal: &Ideal, window: Option<Window>, method: Method, budget: &Budget) -> Result<BettiTable> {
    match method {
        Method::Koszul => KoszulComplex::for_quotient(ideal, budget)?.table(window, budget),
        Method::Schreyer => schreyer_table(ideal, window, budget),
    }
}

fn schreyer_table(ideal: &Ideal, window: Option<Window>, budget: &Budget) -> Result<BettiTable> {
    let Some(w) = window else {
        let res = SchreyerResolution::compute(ideal, None, None, budget)?;
        let mut table = BettiTable::complete_from(res.betti_numbers(budget)?);
        table.set_complete(res.is_complete());
        return Ok(table);
    };
    let res = SchreyerResolution::compute(ideal, Some(w.max_i + 1), Some(w.max_q), budget)?;
    let values = res.betti_numbers(budget)?;
    let mut table = BettiTable::new(w);
    for i in 0..=w.max_i {
        for q in i as u32..=w.max_q {
            table.set(i, q, values.get(&(i, q)).copied().unwrap_or(0));
        }
    }
    // the window is exhaustive when the untruncated frame fits inside it
    let n = ideal.n_vars();
    let fits = res.is_complete() && w.max_i >= n;
    table.set_complete(fits);
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree_on_a_complete_intersection() {
        let i = Ideal::parse_text("ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx0^2 + x1^2 + x2^2 + x3^2\nx0^3 + 2*x1^3 + 3*x2^3 + 5*x3^3\n")
            .unwrap();
        let b = Budget::unlimited();
        let k = betti_table(&i, None, Method::Koszul, &b).unwrap();
        let s = betti_table(&i, None, Method::Schreyer, &b).unwrap();
        assert_eq!(k.entries(), s.entries());
        let expected: std::collections::BTreeMap<(usize, u32), u64> =
            [((0, 0), 1), ((1, 2), 1), ((1, 3), 1), ((2, 5), 1)].into_iter().collect();
        assert_eq!(k.entries(), expected);
    }

    #[test]
    fn windowed_schreyer_marks_incomplete() {
        let i = Ideal::parse_text("ring: p=32003 vars=[x0,x1,x2,x3]\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n")
            .unwrap();
        let t = betti_table(&i, Some(Window::new(1, 3)), Method::Schreyer, &Budget::unlimited()).unwrap();
        assert!(!t.is_complete());
        assert_eq!(t.get(1, 2), Some(3));
        assert_eq!(t.get(2, 3), None);
    }
}
