//! Preset tables of binomials `x^n + a·x^r` and their generic bounds.
//!
//! Table mode has no concrete `a`, so every column uses the no-root radius
//! (`n0 = 0`), which is the worst case over `a`.

use indexbound::arith::gcd;
use indexbound::bounds::{BoundInterval, Classification};
use indexbound::charsum::Rational;
use indexbound::poly::index::index_of_exponents;
use indexbound::poly::support_class;

use crate::args::Preset;
use crate::error::CliResult;
use crate::report::{TableCells, TableRow};

pub const TRIVIAL: &str = "∗";

/// A row as originally published: `(m, n, r, weil, index, ours)`.
pub type PublishedRow = (u32, u64, u64, &'static str, &'static str, &'static str);

const TABLE1: [PublishedRow; 6] = [
    (4, 13, 4, TRIVIAL, TRIVIAL, "12"),
    (6, 41, 5, TRIVIAL, "56", "24"),
    (6, 43, 25, TRIVIAL, "56", "24"),
    (6, 53, 25, TRIVIAL, TRIVIAL, "24"),
    (8, 57, 12, TRIVIAL, TRIVIAL, "80"),
    (8, 63, 3, TRIVIAL, TRIVIAL, "80"),
];

const TABLE2: [PublishedRow; 7] = [
    (2, 7, 1, TRIVIAL, TRIVIAL, "6"),
    (3, 19, 2, TRIVIAL, TRIVIAL, "6√3"),
    (4, 44, 28, TRIVIAL, "45", "18"),
    (4, 46, 18, TRIVIAL, TRIVIAL, "36"),
    (5, 154, 11, TRIVIAL, TRIVIAL, "18√3"),
    (6, 107, 9, TRIVIAL, TRIVIAL, "189"),
    (6, 122, 18, TRIVIAL, "378", "108"),
];

const TABLE3: [PublishedRow; 6] = [
    (2, 14, 10, TRIVIAL, TRIVIAL, "20"),
    (2, 19, 11, TRIVIAL, "15", "10"),
    (3, 33, 10, TRIVIAL, TRIVIAL, "20√5"),
    (3, 77, 3, TRIVIAL, TRIVIAL, "10√5"),
    (4, 42, 10, TRIVIAL, TRIVIAL, "150"),
    (4, 314, 50, TRIVIAL, TRIVIAL, "100"),
];

pub fn preset_prime(preset: Preset) -> u64 {
    match preset {
        Preset::Table1 => 2,
        Preset::Table2 => 3,
        Preset::Table3 => 5,
    }
}

pub fn published(preset: Preset) -> &'static [PublishedRow] {
    match preset {
        Preset::Table1 => &TABLE1,
        Preset::Table2 => &TABLE2,
        Preset::Table3 => &TABLE3,
    }
}

fn cell(k: u64, q: u64, applicable: bool) -> String {
    let b = if applicable {
        BoundInterval::new(Rational::from_integer(0), k, q, q, "")
    } else {
        BoundInterval::inapplicable(q, q, "")
    };
    match b.classify() {
        Classification::Informative => b.render_radius(),
        _ => TRIVIAL.to_string(),
    }
}

/// Generic bounds for `x^n + a·x^r` over `F_{p^m}`.
pub fn compute_row(p: u64, m: u32, n: u64, r: u64, budget: u64) -> CliResult<TableRow> {
    let q = p.pow(m);
    let q1 = q - 1;
    let exps = [n, r];
    let l = index_of_exponents(&exps, q);
    let lo = n.min(r);
    let class = support_class(&exps, p, m, budget)?;
    let t = gcd(gcd(n, r), q1);
    Ok(TableRow {
        p,
        m,
        n,
        r,
        cells: TableCells {
            weil: cell(n.max(r) - 1, q, gcd(n.max(r), p) == 1),
            index: cell(l * gcd(lo, q1 / l), q, true),
            ours: cell(class.generic_radius_coeff, q, true),
        },
        l,
        l_star: class.l_star,
        t,
        binomial: BoundInterval::new(Rational::from_integer(0), class.l_star * t, q, q, "").render_radius(),
    })
}

pub fn compute_table(preset: Preset, budget: u64) -> CliResult<Vec<TableRow>> {
    let p = preset_prime(preset);
    published(preset)
        .iter()
        .map(|&(m, n, r, ..)| compute_row(p, m, n, r, budget))
        .collect()
}

/// Cells that differ from the published table, as `(m, n, r, column, computed, published)`.
pub fn mismatches(preset: Preset, rows: &[TableRow]) -> Vec<(u32, u64, u64, &'static str, String, &'static str)> {
    let mut out = Vec::new();
    for (row, &(m, n, r, weil, index, ours)) in rows.iter().zip(published(preset)) {
        for (col, got, want) in [
            ("weil", &row.cells.weil, weil),
            ("index", &row.cells.index, index),
            ("ours", &row.cells.ours, ours),
        ] {
            if got != want {
                out.push((m, n, r, col, got.clone(), want));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_rows() {
        let row = compute_row(2, 4, 13, 4, 1000).unwrap();
        assert_eq!(
            (
                row.cells.weil.as_str(),
                row.cells.index.as_str(),
                row.cells.ours.as_str()
            ),
            (TRIVIAL, TRIVIAL, "12")
        );
        let row = compute_row(5, 4, 314, 50, 1000).unwrap();
        assert_eq!(row.cells.ours, "100");
        let row = compute_row(2, 6, 41, 5, 1000).unwrap();
        assert_eq!((row.cells.index.as_str(), row.cells.ours.as_str()), ("56", "24"));
    }

    #[test]
    fn row_counts() {
        let n: usize = [Preset::Table1, Preset::Table2, Preset::Table3]
            .iter()
            .map(|&p| published(p).len())
            .sum();
        assert_eq!(n, 19);
    }
}
