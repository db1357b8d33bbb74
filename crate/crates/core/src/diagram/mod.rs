//! Coxeter matrices and the combinatorics of their diagrams.

mod names;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactfield::{self, Signature};

pub use names::{component_name, finite_order, type_name};
pub use parse::{named_type, parse_diagram, DiagramError};

/// A Coxeter integer `m_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    /// True when the nodes are joined in the Dynkin graph (`m ≥ 3`).
    pub fn is_edge(self) -> bool {
        !matches!(self, Label::Finite(1) | Label::Finite(2))
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1 && m > 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => s.serialize_u32(*m),
            Label::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(m) => Ok(Label::Finite(m)),
            Raw::Str(s) if s == "inf" => Ok(Label::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad Coxeter label {s:?}"))),
        }
    }
}

/// Symmetric Coxeter matrix. Rank 0 only arises from deleting the last
/// node of a rank-1 diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct CoxeterMatrix {
    rank: usize,
    labels: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rank: usize,
    labels: Vec<Vec<Label>>,
}

impl From<CoxeterMatrix> for RawMatrix {
    fn from(m: CoxeterMatrix) -> Self {
        let labels = (0..m.rank).map(|i| (0..m.rank).map(|j| m.label(i, j)).collect()).collect();
        RawMatrix { rank: m.rank, labels }
    }
}

impl TryFrom<RawMatrix> for CoxeterMatrix {
    type Error = String;
    fn try_from(raw: RawMatrix) -> Result<Self, String> {
        if raw.labels.len() != raw.rank || raw.labels.iter().any(|r| r.len() != raw.rank) {
            return Err("label matrix does not match rank".into());
        }
        CoxeterMatrix::from_rows(raw.labels).map_err(|e| e.to_string())
    }
}

impl CoxeterMatrix {
    /// Rank-`n` matrix with every off-diagonal label equal to 2.
    pub fn commuting(rank: usize) -> Self {
        let mut labels = vec![Label::Finite(2); rank * rank];
        for i in 0..rank {
            labels[i * rank + i] = Label::Finite(1);
        }
        CoxeterMatrix { rank, labels }
    }

    pub fn from_rows(rows: Vec<Vec<Label>>) -> Result<Self, DiagramError> {
        let rank = rows.len();
        let mut m = CoxeterMatrix::commuting(rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(DiagramError::Invalid(format!("row {} has wrong length", i + 1)));
            }
            for (j, &l) in row.iter().enumerate() {
                if i == j {
                    if l != Label::Finite(1) {
                        return Err(DiagramError::Invalid(format!("diagonal entry ({0},{0}) must be 1", i + 1)));
                    }
                    continue;
                }
                if rows[j][i] != l {
                    return Err(DiagramError::Invalid(format!("matrix is not symmetric at ({},{})", i + 1, j + 1)));
                }
                if let Label::Finite(v) = l {
                    if v < 2 {
                        return Err(DiagramError::LabelTooSmall { i: i + 1, j: j + 1, label: v });
                    }
                }
                m.labels[i * rank + j] = l;
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank + j]
    }

    /// Sets `m_ij = m_ji`. Panics on diagonal or out-of-range input.
    pub fn set_label(&mut self, i: usize, j: usize, label: Label) {
        assert!(i != j && i < self.rank && j < self.rank);
        if let Label::Finite(v) = label {
            assert!(v >= 2, "off-diagonal Coxeter label must be at least 2");
        }
        self.labels[i * self.rank + j] = label;
        self.labels[j * self.rank + i] = label;
    }

    /// Finite labels occurring off the diagonal.
    pub fn finite_labels(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.rank).flat_map(move |i| (i + 1..self.rank).filter_map(move |j| self.label(i, j).finite()))
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| j != i && self.label(i, j).is_edge())
    }

    /// Principal submatrix on `nodes` (in the given order).
    pub fn restrict(&self, nodes: &[usize]) -> CoxeterMatrix {
        let rank = nodes.len();
        let mut labels = Vec::with_capacity(rank * rank);
        for &a in nodes {
            for &b in nodes {
                labels.push(self.label(a, b));
            }
        }
        CoxeterMatrix { rank, labels }
    }

    /// Same diagram with nodes renumbered: node `i` of the result is node
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterMatrix {
        assert_eq!(perm.len(), self.rank);
        self.restrict(perm)
    }
}

impl fmt::Display for CoxeterMatrix {
    /// Writes the diagram in the line-oriented input format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {}", self.rank)?;
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let l = self.label(i, j);
                if l != Label::Finite(2) {
                    writeln!(f, "edge {} {} {}", i + 1, j + 1, l)?;
                }
            }
        }
        Ok(())
    }
}

/// Disjoint blocks covering the nodes; blocks are sorted internally and
/// ordered by their smallest node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodePartition {
    blocks: Vec<Vec<usize>>,
}

impl NodePartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, node: usize) -> Option<&[usize]> {
        self.blocks.iter().find(|b| b.contains(&node)).map(Vec::as_slice)
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &NodePartition) -> bool {
        self.blocks.iter().all(|b| other.block_of(b[0]).is_some_and(|ob| b.iter().all(|x| ob.contains(x))))
    }

    fn from_graph(rank: usize, joined: impl Fn(usize, usize) -> bool) -> Self {
        let mut seen = vec![false; rank];
        let mut blocks = Vec::new();
        for start in 0..rank {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for (w, done) in seen.iter_mut().enumerate() {
                    if !*done && w != v && joined(v, w) {
                        *done = true;
                        block.push(w);
                        stack.push(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        NodePartition { blocks }
    }
}

/// Connected components of the Dynkin graph (edges where `m_ij ≥ 3`).
pub fn components(m: &CoxeterMatrix) -> NodePartition {
    NodePartition::from_graph(m.rank(), |i, j| m.label(i, j).is_edge())
}

/// Components of the subgraph of odd-labelled edges. Generators in the
/// same block are conjugate; different blocks are separated by linear
/// characters.
pub fn odd_components(m: &CoxeterMatrix) -> NodePartition {
    NodePartition::from_graph(m.rank(), |i, j| m.label(i, j).is_odd())
}

/// Rank `r` of the abelianization `W/[W,W] ≅ 2^r`.
pub fn abelianization_rank(m: &CoxeterMatrix) -> usize {
    odd_components(m).len()
}

/// A maximal parabolic: the matrix with one node removed, plus the
/// original index of every surviving node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deletion {
    pub matrix: CoxeterMatrix,
    /// `kept[new] = old`.
    pub kept: Vec<usize>,
}

impl Deletion {
    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.kept.iter().position(|&o| o == old)
    }
}

pub fn delete_node(m: &CoxeterMatrix, k: usize) -> Result<Deletion, DiagramError> {
    if k >= m.rank() {
        return Err(DiagramError::NodeOutOfRange { node: k + 1, rank: m.rank() });
    }
    let kept: Vec<usize> = (0..m.rank()).filter(|&i| i != k).collect();
    Ok(Deletion { matrix: m.restrict(&kept), kept })
}

/// Nodes `i ≠ k` with `m_ik = 2`, in the indexing of `delete_node(m, k)`.
/// The parabolic on these nodes is the centralizer of `s_k` in `W'`.
pub fn centralizer_support(m: &CoxeterMatrix, k: usize) -> Result<Vec<usize>, DiagramError> {
    let del = delete_node(m, k)?;
    Ok(del
        .kept
        .iter()
        .enumerate()
        .filter(|&(_, &old)| m.label(old, k) == Label::Finite(2))
        .map(|(new, _)| new)
        .collect())
}

/// Type of an irreducible Coxeter group read off the signature of its
/// Gram form. Ordered from best to worst behaved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupClass {
    Finite,
    Affine,
    CompactHyperbolic,
    NonCompactHyperbolic,
    Indefinite,
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub nodes: Vec<usize>,
    pub name: String,
    pub class: GroupClass,
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Worst class over the components; `Finite` for rank 0.
    pub class: GroupClass,
    pub components: Vec<ComponentClass>,
}

pub fn classify(m: &CoxeterMatrix) -> Classification {
    let components: Vec<ComponentClass> = components(m)
        .blocks()
        .iter()
        .map(|nodes| {
            let sub = m.restrict(nodes);
            let (class, signature) = classify_irreducible(&sub);
            ComponentClass { nodes: nodes.clone(), name: component_name(&sub), class, signature }
        })
        .collect();
    let class = components.iter().map(|c| c.class).max().unwrap_or(GroupClass::Finite);
    Classification { class, components }
}

fn classify_irreducible(m: &CoxeterMatrix) -> (GroupClass, Signature) {
    let n = m.rank();
    let ctx = exactfield::field_context(m);
    let sig = exactfield::gram(m, &ctx).signature();
    let class = if sig.pos == n {
        GroupClass::Finite
    } else if sig.neg == 0 && sig.zero == 1 {
        GroupClass::Affine
    } else if sig.neg == 1 && sig.zero == 0 {
        // Principal submatrices of definite (semidefinite) forms are again
        // definite (semidefinite), so the maximal proper ones suffice.
        let subs: Vec<Signature> = (0..n)
            .map(|k| {
                let kept: Vec<usize> = (0..n).filter(|&i| i != k).collect();
                exactfield::gram(&m.restrict(&kept), &ctx).signature()
            })
            .collect();
        if subs.iter().all(|s| s.pos == n - 1) {
            GroupClass::CompactHyperbolic
        } else if subs.iter().all(|s| s.neg == 0) {
            GroupClass::NonCompactHyperbolic
        } else {
            GroupClass::Indefinite
        }
    } else {
        GroupClass::Indefinite
    };
    (class, sig)
}
