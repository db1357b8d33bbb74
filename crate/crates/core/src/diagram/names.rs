//! Recognition of the standard finite and affine diagrams.

use super::parse::named_type;
use super::{components, CoxeterMatrix, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Finite(char, usize),
    Dihedral(Label),
    Affine(char, usize),
}

impl Kind {
    fn name(self) -> String {
        match self {
            Kind::Finite(f, n) => format!("{f}_{n}"),
            Kind::Dihedral(l) => format!("I_2({l})"),
            Kind::Affine(f, n) => format!("~{f}_{n}"),
        }
    }

    fn order(self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).try_fold(1u128, |a, b| a.checked_mul(b));
        match self {
            Kind::Finite('A', n) => fact(n + 1),
            Kind::Finite('B', n) => fact(n)?.checked_mul(1u128.checked_shl(n as u32)?),
            Kind::Finite('D', n) => fact(n)?.checked_mul(1u128.checked_shl(n as u32 - 1)?),
            Kind::Finite('E', 6) => Some(51_840),
            Kind::Finite('E', 7) => Some(2_903_040),
            Kind::Finite('E', 8) => Some(696_729_600),
            Kind::Finite('F', 4) => Some(1152),
            Kind::Finite('G', 2) => Some(12),
            Kind::Finite('H', 3) => Some(120),
            Kind::Finite('H', 4) => Some(14_400),
            Kind::Dihedral(Label::Finite(m)) => Some(2 * m as u128),
            _ => None,
        }
    }
}

/// Canonical string for a labelled tree, minimised over all roots.
fn tree_code(m: &CoxeterMatrix) -> Option<String> {
    let n = m.rank();
    let edges: usize = (0..n).map(|i| m.neighbours(i).filter(|&j| j > i).count()).sum();
    if edges + 1 != n {
        return None;
    }
    fn code(m: &CoxeterMatrix, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = m
            .neighbours(v)
            .filter(|&w| Some(w) != parent)
            .map(|w| format!("{}{}", m.label(v, w), code(m, w, Some(v))))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..n).map(|r| code(m, r, None)).min()
}

fn candidates(rank: usize) -> Vec<Kind> {
    let mut out = Vec::new();
    for f in ['A', 'B', 'D', 'E', 'F', 'G', 'H'] {
        out.push(Kind::Finite(f, rank));
    }
    if rank >= 2 {
        for f in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
            out.push(Kind::Affine(f, rank - 1));
        }
    }
    out
}

fn matrix_of(kind: Kind) -> Option<CoxeterMatrix> {
    match kind {
        Kind::Finite(f, n) => named_type(&format!("{f}{n}")).ok(),
        Kind::Affine(f, n) => named_type(&format!("~{f}{n}")).ok(),
        Kind::Dihedral(_) => None,
    }
}

fn recognise(m: &CoxeterMatrix) -> Option<Kind> {
    match m.rank() {
        1 => return Some(Kind::Finite('A', 1)),
        2 => {
            return Some(match m.label(0, 1) {
                Label::Finite(3) => Kind::Finite('A', 2),
                Label::Finite(4) => Kind::Finite('B', 2),
                Label::Finite(6) => Kind::Finite('G', 2),
                Label::Infinite => Kind::Affine('A', 1),
                l => Kind::Dihedral(l),
            })
        }
        _ => {}
    }
    let n = m.rank();
    let is_cycle = (0..n).all(|i| m.neighbours(i).count() == 2)
        && (0..n).all(|i| m.neighbours(i).all(|j| m.label(i, j) == Label::Finite(3)))
        && components(m).len() == 1;
    if is_cycle {
        return Some(Kind::Affine('A', n - 1));
    }
    let code = tree_code(m)?;
    candidates(n).into_iter().find(|&k| matrix_of(k).and_then(|c| tree_code(&c)).as_deref() == Some(code.as_str()))
}

/// Name of an irreducible diagram: `A_5`, `B_3` (also used for type C),
/// `I_2(7)`, `~E_8`, ... Unrecognised diagrams get a label list such as
/// `Y(1-2:3,2-3:7)`.
pub fn component_name(m: &CoxeterMatrix) -> String {
    if let Some(k) = recognise(m) {
        return k.name();
    }
    let mut parts = Vec::new();
    for i in 0..m.rank() {
        for j in m.neighbours(i).filter(|&j| j > i) {
            parts.push(format!("{}-{}:{}", i + 1, j + 1, m.label(i, j)));
        }
    }
    format!("Y({})", parts.join(","))
}

/// Name of a possibly reducible diagram: irreducible names sorted by
/// decreasing rank (then by name) and joined with ` x `; `1` for rank 0.
pub fn type_name(m: &CoxeterMatrix) -> String {
    let mut comps: Vec<(usize, String)> =
        components(m).blocks().iter().map(|b| (b.len(), component_name(&m.restrict(b)))).collect();
    if comps.is_empty() {
        return "1".to_string();
    }
    comps.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    comps.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" x ")
}

/// Order of a finite Coxeter group whose components are all recognised
/// (`H_5` and the affine types give `None`). Rank 0 gives 1.
pub fn finite_order(m: &CoxeterMatrix) -> Option<u128> {
    components(m)
        .blocks()
        .iter()
        .try_fold(1u128, |acc, b| recognise(&m.restrict(b))?.order().and_then(|o| acc.checked_mul(o)))
}
