//! Tables of symmetric generating data for the standard families,
//! compared row by row against the stored reference rows in `golden/`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use super::{analyze, AnalyzeError, Limits};
use crate::diagram::{named_type, CoxeterMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    AffineA,
    /// `B_n`; as Coxeter groups `C_n = B_n`.
    B,
    D,
    E,
    F4,
    /// `~B_n, ~C_n, ~D_n, ~E_6, ~E_7, ~E_8, ~F_4, ~G_2` at the affine node.
    Affine,
    H,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::A, Family::AffineA, Family::B, Family::D, Family::E, Family::F4, Family::Affine, Family::H];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::AffineA => "~A",
            Family::B => "B",
            Family::D => "D",
            Family::E => "E",
            Family::F4 => "F4",
            Family::Affine => "affine",
            Family::H => "H",
        }
    }

    fn golden(self) -> &'static str {
        match self {
            Family::A => include_str!("../../golden/A.txt"),
            Family::AffineA => include_str!("../../golden/A_affine.txt"),
            Family::B => include_str!("../../golden/B.txt"),
            Family::D => include_str!("../../golden/D.txt"),
            Family::E => include_str!("../../golden/E.txt"),
            Family::F4 => include_str!("../../golden/F4.txt"),
            Family::Affine => include_str!("../../golden/affine.txt"),
            Family::H => include_str!("../../golden/H.txt"),
        }
    }

    /// Every `(n, diagram, node, t label)` in table order.
    fn row_defs(self) -> Vec<RowDef> {
        let ty = |s: String| named_type(&s).expect("family type");
        let mut out = Vec::new();
        let mut push =
            |n: u32, m: CoxeterMatrix, node: usize, t: String| out.push(RowDef { family: self, n, matrix: m, node, t });
        let desc = |n: u32| (1..=n as usize).rev();
        match self {
            // Row n is A_{n-1}, at nodes n-1 down to n - floor(n/2).
            Family::A => {
                for n in 2..=8u32 {
                    let m = ty(format!("A{}", n - 1));
                    for k in (n - n / 2..n).rev() {
                        push(n, m.clone(), k as usize - 1, format!("s_{k}"));
                    }
                }
            }
            Family::AffineA => {
                for n in 3..=7u32 {
                    push(n, ty(format!("~A{}", n - 1)), n as usize - 1, format!("s_{n}"));
                }
            }
            Family::B | Family::H => {
                let (letter, range) = if self == Family::B { ('B', 2..=7) } else { ('H', 3..=5) };
                for n in range {
                    let m = ty(format!("{letter}{n}"));
                    for k in desc(n) {
                        push(n, m.clone(), k - 1, format!("s_{k}"));
                    }
                }
            }
            Family::D => {
                for n in 4..=8u32 {
                    let m = ty(format!("D{n}"));
                    for k in desc(n).filter(|&k| k != n as usize - 1) {
                        push(n, m.clone(), k - 1, format!("s_{k}"));
                    }
                }
            }
            Family::E => {
                for n in 6..=8u32 {
                    let m = ty(format!("E{n}"));
                    for k in desc(n) {
                        push(n, m.clone(), k - 1, format!("s_{k}"));
                    }
                }
            }
            Family::F4 => {
                let m = ty("F4".into());
                push(4, m.clone(), 3, "s_4".into());
                push(4, m, 2, "s_3".into());
            }
            Family::Affine => {
                let mut aff = |letter: char, range: RangeInclusive<u32>| {
                    for n in range {
                        push(n, ty(format!("~{letter}{n}")), n as usize, "s_0".into());
                    }
                };
                aff('B', 3..=7);
                aff('C', 2..=7);
                aff('D', 4..=8);
                aff('E', 6..=8);
                aff('F', 4..=4);
                aff('G', 2..=2);
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, TableError> {
        Ok(match s.trim() {
            "A" | "a" => Family::A,
            "~A" | "~a" | "A_affine" | "affineA" => Family::AffineA,
            "B" | "b" | "C" | "c" | "BC" => Family::B,
            "D" | "d" => Family::D,
            "E" | "e" => Family::E,
            "F4" | "f4" | "F" => Family::F4,
            "affine" | "Affine" | "~" => Family::Affine,
            "H" | "h" => Family::H,
            other => return Err(TableError::UnknownFamily(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("unknown family {0:?} (expected A, ~A, B, C, D, E, F4, affine or H)")]
    UnknownFamily(String),
    #[error("family {family} has no row with n = {n} at node {node}")]
    NoSuchRow { family: Family, n: u32, node: usize },
    #[error("family {family} has no rows with n in {start}..={end}")]
    EmptyRange { family: Family, start: u32, end: u32 },
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
}

#[derive(Clone, Debug)]
struct RowDef {
    family: Family,
    n: u32,
    matrix: CoxeterMatrix,
    node: usize,
    t: String,
}

/// One computed row together with the stored reference row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub family: Family,
    pub n: u32,
    /// Zero-based node of `t` in the diagram.
    pub node: usize,
    pub w: String,
    pub t: String,
    pub parabolic: String,
    pub centralizer: String,
    pub m: usize,
    pub relations: String,
    pub expected: Option<String>,
}

impl TableRow {
    pub fn line(&self) -> String {
        format!("{} | {} | {} | {} | {} | {}", self.w, self.t, self.parabolic, self.centralizer, self.m, self.relations)
    }

    pub fn matches(&self) -> bool {
        self.expected.as_deref() == Some(self.line().as_str())
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.matches())
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().next().is_none()
    }

    /// Unified-style diff of the mismatching rows, empty when all match.
    pub fn diff(&self) -> String {
        let mut out = String::new();
        for r in self.mismatches() {
            out.push_str(&format!("- {}\n+ {}\n", r.expected.as_deref().unwrap_or("<missing>"), r.line()));
        }
        out
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn with_golden(family: Family) -> Vec<(RowDef, Option<String>)> {
    let mut golden = family.golden().lines().filter(|l| !l.trim().is_empty()).map(str::to_string);
    family.row_defs().into_iter().map(|s| (s, golden.next())).collect()
}

fn compute(def: &RowDef, expected: Option<String>, limits: &Limits) -> Result<TableRow, AnalyzeError> {
    let r = analyze(&def.matrix, def.node, limits)?;
    Ok(TableRow {
        family: def.family,
        n: def.n,
        node: def.node,
        relations: r.relations_text(),
        w: r.group,
        t: def.t.clone(),
        parabolic: r.parabolic.name,
        centralizer: r.centralizer.name,
        m: r.m,
        expected,
    })
}

/// The `(n, zero-based node)` pairs of a family in table order.
pub fn table_rows(family: Family) -> Vec<(u32, usize)> {
    family.row_defs().iter().map(|s| (s.n, s.node)).collect()
}

/// A single row of a family table.
pub fn table_row(family: Family, n: u32, node: usize, limits: &Limits) -> Result<TableRow, TableError> {
    let (def, expected) = with_golden(family)
        .into_iter()
        .find(|(s, _)| s.n == n && s.node == node)
        .ok_or(TableError::NoSuchRow { family, n, node: node + 1 })?;
    Ok(compute(&def, expected, limits)?)
}

/// All rows of a family, optionally restricted to a range of `n`.
pub fn tables(family: Family, range: Option<RangeInclusive<u32>>, limits: &Limits) -> Result<TableReport, TableError> {
    let work: Vec<_> =
        with_golden(family).into_iter().filter(|(s, _)| range.as_ref().is_none_or(|r| r.contains(&s.n))).collect();
    if let (true, Some(r)) = (work.is_empty(), &range) {
        return Err(TableError::EmptyRange { family, start: *r.start(), end: *r.end() });
    }
    let rows = work.into_par_iter().map(|(s, e)| compute(&s, e, limits)).collect::<Result<Vec<_>, _>>()?;
    Ok(TableReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts_match_golden() {
        for f in Family::ALL {
            let g = f.golden().lines().filter(|l| !l.trim().is_empty()).count();
            assert_eq!(f.row_defs().len(), g, "{f}");
        }
    }

    #[test]
    fn small_rows() {
        let l = Limits::default();
        let r = table_row(Family::A, 2, 0, &l).unwrap();
        assert_eq!(r.line(), "A_1 | s_1 | 1 | 1 | 1 | -");
        assert!(r.matches());
        let r = table_row(Family::F4, 4, 2, &l).unwrap();
        assert!(r.matches(), "{r}");
        assert!(matches!(table_row(Family::F4, 4, 0, &l), Err(TableError::NoSuchRow { .. })));
    }

    #[test]
    fn family_names() {
        assert_eq!("C".parse::<Family>().unwrap(), Family::B);
        assert_eq!("~A".parse::<Family>().unwrap(), Family::AffineA);
        assert!("Z".parse::<Family>().is_err());
    }

    #[test]
    fn range_filter() {
        let t = tables(Family::B, Some(2..=3), &Limits::default()).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert!(t.all_match(), "{}", t.diff());
    }
}
