use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Bounds on the computed region: homological index `i ≤ max_i` and
/// internal degree `q ≤ max_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub max_i: usize,
    pub max_q: u32,
}

impl Window {
    pub fn new(max_i: usize, max_q: u32) -> Self {
        Self { max_i, max_q }
    }

    pub fn contains(&self, i: usize, q: u32) -> bool {
        i <= self.max_i && q <= self.max_q
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub q: u32,
    pub beta: u64,
}

/// Graded Betti numbers `β_{i,q}`: step `i` of a minimal resolution contains
/// `S(-q)^{β_{i,q}}`. A cell is known when it was evaluated (zero or not) or
/// when the table is complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    cells: BTreeMap<(usize, u32), u64>,
    window: Window,
    complete: bool,
}

impl BettiTable {
    pub fn new(window: Window) -> Self {
        Self { cells: BTreeMap::new(), window, complete: false }
    }

    /// A complete table from its nonzero entries.
    pub fn complete_from(entries: impl IntoIterator<Item = ((usize, u32), u64)>) -> Self {
        let cells: BTreeMap<(usize, u32), u64> = entries.into_iter().filter(|(_, b)| *b > 0).collect();
        let max_i = cells.keys().map(|k| k.0).max().unwrap_or(0);
        let max_q = cells.keys().map(|k| k.1).max().unwrap_or(0);
        Self { cells, window: Window::new(max_i, max_q), complete: true }
    }

    pub fn set(&mut self, i: usize, q: u32, beta: u64) {
        self.cells.insert((i, q), beta);
    }

    pub fn set_complete(&mut self, complete: bool) {
        self.complete = complete;
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// `Some(β)` when the cell is known, `None` otherwise.
    pub fn get(&self, i: usize, q: u32) -> Option<u64> {
        match self.cells.get(&(i, q)) {
            Some(&b) => Some(b),
            None if self.complete => Some(0),
            None => None,
        }
    }

    /// The cell in the `β^{paper}_{i,j}` convention, i.e. `β_{i, i+j}`.
    pub fn get_shifted(&self, i: usize, j: u32) -> Option<u64> {
        self.get(i, i as u32 + j)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = BettiEntry> + '_ {
        self.cells.iter().filter(|(_, &b)| b > 0).map(|(&(i, q), &beta)| BettiEntry { i, q, beta })
    }

    pub fn evaluated(&self) -> impl Iterator<Item = BettiEntry> + '_ {
        self.cells.iter().map(|(&(i, q), &beta)| BettiEntry { i, q, beta })
    }

    /// Nonzero cells only, ignoring which zeros were evaluated.
    pub fn entries(&self) -> BTreeMap<(usize, u32), u64> {
        self.nonzero().map(|e| ((e.i, e.q), e.beta)).collect()
    }

    pub fn projdim(&self) -> Option<usize> {
        self.complete.then(|| self.nonzero().map(|e| e.i).max().unwrap_or(0))
    }

    /// `max(q - i)` over nonzero cells: the regularity of the quotient.
    pub fn max_row(&self) -> Option<u32> {
        self.complete.then(|| self.nonzero().map(|e| e.q - e.i as u32).max().unwrap_or(0))
    }

    /// Largest `q` with `β_{1,q} ≠ 0`.
    pub fn generation_degree(&self) -> Option<u32> {
        self.complete.then(|| self.nonzero().filter(|e| e.i == 1).map(|e| e.q).max().unwrap_or(0))
    }

    /// `Σ_{i,q} (-1)^i β_{i,q} t^q` as a coefficient vector.
    pub fn euler_polynomial(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for e in self.nonzero() {
            let q = e.q as usize;
            if out.len() <= q {
                out.resize(q + 1, 0);
            }
            let b = e.beta as i64;
            out[q] += if e.i % 2 == 0 { b } else { -b };
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Macaulay-style diagram: rows `q - i`, columns `i`; unknown cells are
    /// shown as `?` and zeros as `.`.
    pub fn diagram(&self) -> String {
        let max_i = self.cells.keys().map(|k| k.0).max().unwrap_or(0);
        let max_row = self.cells.keys().filter_map(|&(i, q)| q.checked_sub(i as u32)).max().unwrap_or(0);
        let cell_text = |i: usize, row: u32| -> String {
            match self.get(i, row + i as u32) {
                Some(0) => ".".to_string(),
                Some(b) => b.to_string(),
                None => "?".to_string(),
            }
        };
        let mut totals = Vec::with_capacity(max_i + 1);
        for i in 0..=max_i {
            let known = (0..=max_row).all(|r| self.get(i, r + i as u32).is_some());
            let sum: u64 = (0..=max_row).filter_map(|r| self.get(i, r + i as u32)).sum();
            totals.push(if known { sum.to_string() } else { format!("{sum}+") });
        }
        let mut width = totals.iter().map(String::len).max().unwrap_or(1);
        for i in 0..=max_i {
            width = width.max(i.to_string().len());
            for r in 0..=max_row {
                width = width.max(cell_text(i, r).len());
            }
        }
        let label_width = format!("{max_row}").len().max("total".len());
        let mut out = String::new();
        let _ = write!(out, "{:>label_width$} ", "");
        for i in 0..=max_i {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>label_width$}:", "total");
        for t in &totals {
            let _ = write!(out, " {t:>width$}");
        }
        out.push('\n');
        for r in 0..=max_row {
            let _ = write!(out, "{r:>label_width$}:");
            for i in 0..=max_i {
                let _ = write!(out, " {:>width$}", cell_text(i, r));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twisted_cubic() -> BettiTable {
        BettiTable::complete_from([((0, 0), 1), ((1, 2), 3), ((2, 3), 2)])
    }

    #[test]
    fn invariants_of_a_complete_table() {
        let t = twisted_cubic();
        assert_eq!(t.projdim(), Some(2));
        assert_eq!(t.max_row(), Some(1));
        assert_eq!(t.generation_degree(), Some(2));
        assert_eq!(t.get(3, 5), Some(0));
        assert_eq!(t.get_shifted(1, 1), Some(3));
        assert_eq!(t.euler_polynomial(), vec![1, 0, -3, 2]);
    }

    #[test]
    fn diagram_layout() {
        let expected = "       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n";
        assert_eq!(twisted_cubic().diagram(), expected);
    }

    #[test]
    fn unknown_cells() {
        let mut t = BettiTable::new(Window::new(2, 4));
        t.set(0, 0, 1);
        t.set(1, 2, 3);
        assert_eq!(t.get(2, 3), None);
        assert_eq!(t.projdim(), None);
        assert!(t.diagram().contains('?'));
    }
}
