//! Involutory symmetric generation of a Coxeter group from one node.
//!
//! For a diagram `M` and node `k`, [`analyze`] builds the maximal parabolic
//! `W'` on the other nodes, the parabolic `W_X` on the nodes commuting with
//! `s_k` (the centralizer of `s_k` in `W'`), the action `π` of `W'` on the
//! `m` cosets of `W_X`, the progenitor `P = 2^{*m}:W'` and its quotient `Q`
//! by the relators `(S_i T_1)^{m_ik}`. [`verify`] adds the independent
//! checks: root orbits, eigenspace identities, isomorphism `Q ≅ W` for
//! finite groups, and brute-force computations in the regular
//! representation.

mod tables;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{
    abelianization_rank, centralizer_support, classify, components, delete_node, finite_order, odd_components,
    type_name, CoxeterMatrix, DiagramError, GroupClass, Label,
};
use crate::enumerator::{
    default_limit, enumerate, order_via_parabolic_chain_with, regular_elements, EnumerateError, PermutationAction,
    DEFAULT_MAX_COSETS,
};
use crate::exactfield::field_context;
use crate::presentation::{
    coxeter_presentation, parse_presentation, progenitor_presentation, symgen_presentation, Presentation,
    PresentationError, Word,
};
use crate::rootorbit::{
    eigen_checks, fixed_vector_check, invariant_checks, long_root_count, orbit_size, Geometry, Matrix, OrbitError,
    RootLengths, DEFAULT_ORBIT_LIMIT,
};

pub use tables::{table_row, table_rows, tables, Family, TableError, TableReport, TableRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named check. Failures carry a witness in `details`;
/// skipped checks carry the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub details: String,
}

impl CheckResult {
    pub fn pass(name: &str, details: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: CheckStatus::Pass, details: details.into() }
    }

    pub fn fail(name: &str, details: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: CheckStatus::Fail, details: details.into() }
    }

    pub fn skipped(name: &str, reason: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: CheckStatus::Skipped, details: reason.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skip",
        };
        write!(f, "{tag:<4}  {:<26} {}", self.name, self.details)
    }
}

/// Resource limits for enumerations and orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Cap on live cosets for every enumeration. `None` scales the cap
    /// with the predicted index, falling back to `fallback_cosets`.
    pub max_cosets: Option<usize>,
    pub fallback_cosets: usize,
    pub orbit_limit: usize,
    /// Largest group order for the regular-representation oracles.
    pub brute_force_cap: usize,
    /// Largest order for which `Q` is enumerated over the trivial subgroup.
    pub direct_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cosets: None,
            fallback_cosets: DEFAULT_MAX_COSETS,
            orbit_limit: DEFAULT_ORBIT_LIMIT,
            brute_force_cap: 20_000,
            direct_cap: 20_000,
        }
    }
}

impl Limits {
    pub fn coset_limit(&self, predicted: Option<u128>) -> usize {
        self.max_cosets.unwrap_or_else(|| default_limit(predicted, self.fallback_cosets))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(
        "coset enumeration of W' over the centralizer parabolic exceeded {limit} cosets; \
         the standing assumption that C_W'(s_{node}) has finite index in W' may fail"
    )]
    Exceeded { node: usize, limit: usize },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub nodes: Vec<usize>,
    pub name: String,
    pub class: GroupClass,
}

/// A parabolic subgroup: its type name and its (one-based) nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parabolic {
    pub name: String,
    pub nodes: Vec<usize>,
}

/// An added relator `(s_node t)^exponent` of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub node: usize,
    pub exponent: u32,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s_{} t)^{}", self.node, self.exponent)
    }
}

/// Full analysis of one `(diagram, node)` pair. All node numbers are
/// one-based; `action[g]` lists the images of the points `1..m` under
/// the `g`-th generator of `W'` (in the order of `parabolic.nodes`), and
/// `representatives[j]` is a word (list of nodes) `w` with `t_{j+1} = t^w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymGenReport {
    pub diagram: CoxeterMatrix,
    pub node: usize,
    pub group: String,
    pub class: GroupClass,
    pub components: Vec<ComponentInfo>,
    pub parabolic: Parabolic,
    /// Nodes of the component of `W` containing `s_k`.
    pub component: Vec<usize>,
    /// Class of `W'_t`, the part of `W'` inside that component.
    pub parabolic_component_class: GroupClass,
    pub centralizer: Parabolic,
    pub m: usize,
    pub action: Vec<Vec<usize>>,
    pub representatives: Vec<Vec<usize>>,
    pub coset_digest: String,
    pub relations: Vec<Relation>,
    pub progenitor: String,
    pub presentation: String,
    pub strict: bool,
    pub r: usize,
    pub odd_classes: Vec<Vec<usize>>,
    pub checks: Vec<CheckResult>,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn cycles(img: &[usize]) -> String {
    let mut seen = vec![false; img.len()];
    let mut out = String::new();
    for s in 0..img.len() {
        if seen[s] || img[s] == s {
            continue;
        }
        let mut c = vec![s + 1];
        seen[s] = true;
        let mut x = img[s];
        while x != s {
            seen[x] = true;
            c.push(x + 1);
            x = img[x];
        }
        out.push_str(&format!("({})", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

impl SymGenReport {
    /// `π` as a permutation action (zero-based points).
    pub fn pi(&self) -> PermutationAction {
        let images = self.action.iter().map(|img| img.iter().map(|x| x - 1).collect()).collect();
        PermutationAction::with_degree(self.m, images).expect("stored action is valid")
    }

    pub fn progenitor_presentation(&self) -> Presentation {
        parse_presentation(&self.progenitor).expect("stored progenitor parses")
    }

    pub fn symmetric_presentation(&self) -> Presentation {
        parse_presentation(&self.presentation).expect("stored presentation parses")
    }

    /// Coset representatives as words over the nodes (zero-based letters).
    pub fn representative_words(&self) -> Vec<Word> {
        self.representatives
            .iter()
            .map(|w| w.iter().map(|&i| crate::presentation::Letter::new(i - 1)).collect())
            .collect()
    }

    pub fn relations_text(&self) -> String {
        if self.relations.is_empty() {
            "-".to_string()
        } else {
            self.relations.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        }
    }

    /// `W | t | W' | C | m | relations` with `t` written as `s_k`.
    pub fn table_line(&self) -> String {
        format!(
            "{} | s_{} | {} | {} | {} | {}",
            self.group,
            self.node,
            self.parabolic.name,
            self.centralizer.name,
            self.m,
            self.relations_text()
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn all_passed(&self) -> bool {
        !self.checks.iter().any(CheckResult::failed)
    }
}

impl fmt::Display for SymGenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "W = {} ({}), t = s_{}", self.group, self.class, self.node)?;
        writeln!(f, "W' = {}  nodes {:?}", self.parabolic.name, self.parabolic.nodes)?;
        writeln!(f, "C_W'(t) = W_X = {}  X = {:?}", self.centralizer.name, self.centralizer.nodes)?;
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "relations: {}", self.relations_text())?;
        let verdict = if self.strict { "strict" } else { "weak" };
        writeln!(f, "symmetric generation: {verdict} (r = {})", self.r)?;
        writeln!(f, "row: {}", self.table_line())?;
        writeln!(f, "pi:")?;
        for (g, img) in self.action.iter().enumerate() {
            let zero: Vec<usize> = img.iter().map(|x| x - 1).collect();
            writeln!(f, "  s_{}: {}", self.parabolic.nodes[g], cycles(&zero))?;
        }
        writeln!(f, "P: {}", self.progenitor.trim_end())?;
        writeln!(f, "Q: {}", self.presentation.trim_end())?;
        if !self.checks.is_empty() {
            writeln!(f, "checks:")?;
            for c in &self.checks {
                writeln!(f, "  {c}")?;
            }
        }
        Ok(())
    }
}

/// Symmetric generation is strict iff the odd-labelled subgraph is connected.
/// The node does not affect the verdict.
pub fn strictness(m: &CoxeterMatrix, _k: usize) -> bool {
    odd_components(m).len() == 1
}

/// Builds `W'`, `X`, `π`, `P` and `Q` for node `k` (zero-based).
pub fn analyze(m: &CoxeterMatrix, k: usize, limits: &Limits) -> Result<SymGenReport, AnalyzeError> {
    let del = delete_node(m, k)?;
    let x = centralizer_support(m, k)?;
    let cls = classify(m);
    let comp_nodes: Vec<usize> = components(m).block_of(k).expect("k is a node").to_vec();

    // Enumerate inside the component of s_k; the other components lie in
    // W_X and act trivially on the conjugates of s_k.
    let local_old: Vec<usize> = comp_nodes.iter().copied().filter(|&i| i != k).collect();
    let local_new: Vec<usize> = local_old.iter().map(|&o| del.new_index(o).unwrap()).collect();
    let local_m = m.restrict(&local_old);
    let local_x: Vec<usize> = (0..local_new.len()).filter(|&i| x.contains(&local_new[i])).collect();
    let predicted = finite_order(&local_m).zip(finite_order(&local_m.restrict(&local_x))).map(|(a, b)| a / b);
    let limit = limits.coset_limit(predicted);
    let sub: Vec<Word> = local_x.iter().map(|&i| Word::gen(i)).collect();
    let table = enumerate(&coxeter_presentation(&local_m), &sub, limit).map_err(|e| match e {
        EnumerateError::Exceeded { limit } => AnalyzeError::Exceeded { node: k + 1, limit },
        other => AnalyzeError::Enumerate(other),
    })?;
    let deg = table.index();
    let local_action = table.action();
    let images: Vec<Vec<usize>> = (0..del.kept.len())
        .map(|g| match local_new.iter().position(|&n| n == g) {
            Some(l) => local_action.images(l).to_vec(),
            None => (0..deg).collect(),
        })
        .collect();
    let pi = PermutationAction::with_degree(deg, images)?;
    let representatives: Vec<Vec<usize>> =
        (0..deg).map(|c| table.representative(c).letters().iter().map(|l| local_old[l.gen] + 1).collect()).collect();

    let p = progenitor_presentation(m, k, &pi)?;
    let q = symgen_presentation(m, k, &pi)?;
    let relations = (0..m.rank())
        .filter(|&i| i != k)
        .filter_map(|i| match m.label(i, k) {
            Label::Finite(e) if e > 2 => Some(Relation { node: i + 1, exponent: e }),
            _ => None,
        })
        .collect();

    let x_old: Vec<usize> = x.iter().map(|&n| del.kept[n]).collect();
    let mut report = SymGenReport {
        diagram: m.clone(),
        node: k + 1,
        group: type_name(m),
        class: cls.class,
        components: cls
            .components
            .iter()
            .map(|c| ComponentInfo { nodes: one_based(&c.nodes), name: c.name.clone(), class: c.class })
            .collect(),
        parabolic: Parabolic { name: type_name(&del.matrix), nodes: one_based(&del.kept) },
        component: one_based(&comp_nodes),
        parabolic_component_class: classify(&local_m).class,
        centralizer: Parabolic { name: type_name(&del.matrix.restrict(&x)), nodes: one_based(&x_old) },
        m: deg,
        action: pi.images_one_based(),
        representatives,
        coset_digest: table.digest(),
        relations,
        progenitor: p.to_native(),
        presentation: q.to_native(),
        strict: strictness(m, k),
        r: abelianization_rank(m),
        odd_classes: odd_components(m).blocks().iter().map(|b| one_based(b)).collect(),
        checks: Vec::new(),
    };
    let table_ok = table.verify(&coxeter_presentation(&local_m), &sub) && local_action.is_transitive();
    report.checks.push(if table_ok {
        CheckResult::pass("coset_table", format!("{deg} cosets, relators trivial, transitive"))
    } else {
        CheckResult::fail("coset_table", "coset table fails a relator or is not transitive")
    });
    report.checks.push(check_two_relation_consistency(m, k, &pi));
    Ok(report)
}

impl PermutationAction {
    fn images_one_based(&self) -> Vec<Vec<usize>> {
        (0..self.generator_count()).map(|g| one_based(self.images(g))).collect()
    }
}

/// For every `i` with `m_ik = 2`, `π(s_i)` must fix the point 1.
pub fn check_two_relation_consistency(m: &CoxeterMatrix, k: usize, pi: &PermutationAction) -> CheckResult {
    const NAME: &str = "two_relation_consistency";
    let others: Vec<usize> = (0..m.rank()).filter(|&i| i != k).collect();
    let mut count = 0;
    for (g, &i) in others.iter().enumerate() {
        if m.label(i, k) == Label::Finite(2) {
            count += 1;
            if pi.image(g, 0) != 0 {
                return CheckResult::fail(NAME, format!("pi(s_{}) moves point 1 to {}", i + 1, pi.image(g, 0) + 1));
            }
        }
    }
    CheckResult::pass(NAME, format!("pi(s_i) fixes 1 for all {count} nodes with m_ik = 2"))
}

/// Orbit of `α_k` under `W'` against the coset count `m`.
pub fn check_orbit_oracle(m: &CoxeterMatrix, k: usize, index: usize, limits: &Limits) -> CheckResult {
    const NAME: &str = "orbit_index";
    match orbit_size(m, k, limits.orbit_limit) {
        Ok(o) if o.size == index => CheckResult::pass(NAME, format!("|alpha_{}^W'| = m = {index}", k + 1)),
        Ok(o) => CheckResult::fail(NAME, format!("orbit size {} but m = {index}", o.size)),
        Err(OrbitError::Exceeded { limit }) => CheckResult::skipped(NAME, format!("orbit exceeded {limit}")),
        Err(e) => CheckResult::fail(NAME, e.to_string()),
    }
}

/// For an affine component and a node whose removal leaves the finite
/// root system, `m` equals the number of its long roots.
pub fn check_long_roots(m: &CoxeterMatrix, k: usize, index: usize, limits: &Limits) -> CheckResult {
    const NAME: &str = "affine_long_roots";
    let comp: Vec<usize> = components(m).block_of(k).expect("node").to_vec();
    let cm = m.restrict(&comp);
    let ck = comp.iter().position(|&i| i == k).unwrap();
    let name = type_name(&cm);
    let Some(finite) = name.strip_prefix('~') else {
        return CheckResult::skipped(NAME, "component of t is not a recognised affine type");
    };
    let finite = if finite.starts_with('C') { finite.replacen('C', "B", 1) } else { finite.to_string() };
    let del = delete_node(&cm, ck).expect("node");
    if type_name(&del.matrix) != finite {
        return CheckResult::skipped(NAME, "t is not a special node of the affine diagram");
    }
    let lengths = RootLengths::from_seed(&cm, ck).restrict(&del.kept);
    match long_root_count(&del.matrix, &lengths, limits.orbit_limit) {
        Ok(c) if c == index => CheckResult::pass(NAME, format!("{c} long roots in {finite}")),
        Ok(c) => CheckResult::fail(NAME, format!("{c} long roots in {finite} but m = {index}")),
        Err(e) => CheckResult::skipped(NAME, e.to_string()),
    }
}

fn finite_group_order(m: &CoxeterMatrix, limits: &Limits) -> Result<u128, EnumerateError> {
    order_via_parabolic_chain_with(m, limits.fallback_cosets)
}

/// Images of the generators of `Q` in `ρ`: `S_i ↦ ρ(s_i)`,
/// `T_j ↦ ρ(w_j)^{-1} ρ(s_k) ρ(w_j)`.
fn q_images(geo: &Geometry, report: &SymGenReport) -> Vec<Matrix> {
    let k = report.node - 1;
    let mut out: Vec<Matrix> = report.parabolic.nodes.iter().map(|&i| geo.rho(i - 1).clone()).collect();
    for w in report.representative_words() {
        let a = geo.word_matrix(&w);
        let a_inv = geo.word_matrix(&w.inverse());
        out.push(a_inv.mul(geo.rho(k)).mul(&a));
    }
    out
}

/// Every relator of `Q` maps to the identity in `ρ`.
fn check_homomorphism(geo: &Geometry, report: &SymGenReport, q: &Presentation) -> Result<(), String> {
    let images = q_images(geo, report);
    for r in q.relators() {
        // Every image is an involution, so inverse letters use the same matrix.
        let prod = r.letters().iter().fold(Matrix::identity(&geo.ctx, geo.rank()), |acc, l| acc.mul(&images[l.gen]));
        if !prod.is_identity() {
            return Err(format!("relator {} is not trivial in W", q.word_to_string(r)));
        }
    }
    Ok(())
}

/// `|Q| = |W|` for finite `W`.
///
/// Up to `limits.direct_cap`, `Q` is enumerated over the trivial subgroup.
/// Beyond that, `Q` is enumerated over `H = ⟨S_i⟩`; since every relator of
/// `Q` holds in `W` (checked in the faithful representation `ρ`), `Q` maps
/// onto `W`, and `H` is a quotient of `W'`, so `[Q:H]·|W'| = |W|` forces
/// `Q ≅ W`.
pub fn verify_isomorphism(m: &CoxeterMatrix, k: usize, limits: &Limits) -> CheckResult {
    match analyze(m, k, limits) {
        Ok(r) => verify_isomorphism_for(&r, limits),
        Err(e) => CheckResult::skipped("isomorphism", e.to_string()),
    }
}

pub fn verify_isomorphism_for(report: &SymGenReport, limits: &Limits) -> CheckResult {
    const NAME: &str = "isomorphism";
    let m = &report.diagram;
    let k = report.node - 1;
    if report.class != GroupClass::Finite {
        return CheckResult::skipped(NAME, "infinite group; isomorphism verified only through structural checks");
    }
    let order = match finite_group_order(m, limits) {
        Ok(o) => o,
        Err(e) => return CheckResult::skipped(NAME, e.to_string()),
    };
    let q = report.symmetric_presentation();
    let geo = Geometry::new(m);
    if let Err(w) = check_homomorphism(&geo, report, &q) {
        return CheckResult::fail(NAME, w);
    }
    if order <= limits.direct_cap as u128 {
        return match enumerate(&q, &[], limits.coset_limit(Some(order))) {
            Ok(t) if t.index() as u128 == order => {
                CheckResult::pass(NAME, format!("|Q| = {order} = |W| by direct enumeration"))
            }
            Ok(t) => CheckResult::fail(NAME, format!("|Q| = {} but |W| = {order}", t.index())),
            Err(e) => CheckResult::skipped(NAME, e.to_string()),
        };
    }
    let wp = delete_node(m, k).expect("node").matrix;
    let wp_order = match finite_group_order(&wp, limits) {
        Ok(o) => o,
        Err(e) => return CheckResult::skipped(NAME, e.to_string()),
    };
    let sub: Vec<Word> = (0..wp.rank()).map(Word::gen).collect();
    // Intermediate tables over <S> grow far beyond the final index.
    let limit = limits.max_cosets.unwrap_or(limits.fallback_cosets.max(limits.coset_limit(Some(order / wp_order))));
    match enumerate(&q, &sub, limit) {
        Ok(t) if t.index() as u128 * wp_order == order => {
            CheckResult::pass(NAME, format!("[Q:<S>] = {} and |Q| = {} * {wp_order} = |W|", t.index(), t.index()))
        }
        Ok(t) => CheckResult::fail(
            NAME,
            format!("[Q:<S>] = {} gives |Q| <= {} but |W| = {order}", t.index(), t.index() as u128 * wp_order),
        ),
        Err(e) => CheckResult::skipped(NAME, e.to_string()),
    }
}

fn regular(m: &CoxeterMatrix, cap: usize, name: &str) -> Result<crate::enumerator::ElementTable, CheckResult> {
    if classify(m).class != GroupClass::Finite {
        return Err(CheckResult::skipped(name, "infinite group"));
    }
    regular_elements(m, cap).map_err(|_| CheckResult::skipped(name, format!("group order exceeds the cap {cap}")))
}

/// Elementwise centralizer of `s_k` in `W'` against `⟨s_i : i ∈ X⟩`.
pub fn brute_force_centralizer(m: &CoxeterMatrix, k: usize, cap: usize) -> CheckResult {
    const NAME: &str = "brute_force_centralizer";
    let reg = match regular(m, cap, NAME) {
        Ok(r) => r,
        Err(c) => return c,
    };
    let n = m.rank();
    let wp_gens: Vec<usize> = (0..n).filter(|&i| i != k).map(|i| reg.generator(i)).collect();
    let wp = reg.closure(&wp_gens);
    let sk = reg.generator(k);
    let cent: Vec<usize> = wp.iter().copied().filter(|&w| reg.mul(sk, w) == reg.mul_gen(w, k)).collect();
    let x: Vec<usize> = (0..n).filter(|&i| i != k && m.label(i, k) == Label::Finite(2)).collect();
    let wx = reg.closure(&x.iter().map(|&i| reg.generator(i)).collect::<Vec<_>>());
    if cent == wx {
        CheckResult::pass(NAME, format!("|C_W'(s_{})| = |W_X| = {}", k + 1, wx.len()))
    } else {
        let witness = cent
            .iter()
            .find(|w| wx.binary_search(w).is_err())
            .or_else(|| wx.iter().find(|w| cent.binary_search(w).is_err()))
            .copied()
            .unwrap();
        let word: Vec<String> = reg.word(witness).letters().iter().map(|l| format!("s_{}", l.gen + 1)).collect();
        CheckResult::fail(
            NAME,
            format!("centralizer has {} elements, W_X has {}; differs at {}", cent.len(), wx.len(), word.join(" ")),
        )
    }
}

/// Distinct conjugates `w^-1 s_k w` (`w ∈ W'`) as elements.
fn conjugates(reg: &crate::enumerator::ElementTable, m: &CoxeterMatrix, k: usize) -> Vec<usize> {
    let wp_gens: Vec<usize> = (0..m.rank()).filter(|&i| i != k).map(|i| reg.generator(i)).collect();
    let sk = reg.generator(k);
    let mut ts: Vec<usize> =
        reg.closure(&wp_gens).into_iter().map(|w| reg.mul(reg.mul(reg.inverse(w), sk), w)).collect();
    ts.sort_unstable();
    ts.dedup();
    ts
}

/// The conjugates of `s_k` under `W'` are `m` distinct involutions.
pub fn brute_force_conjugates(m: &CoxeterMatrix, k: usize, index: usize, cap: usize) -> CheckResult {
    const NAME: &str = "conjugate_count";
    let reg = match regular(m, cap, NAME) {
        Ok(r) => r,
        Err(c) => return c,
    };
    let ts = conjugates(&reg, m, k);
    if ts.len() == index && ts.iter().all(|&t| t != 0 && reg.mul(t, t) == 0) {
        CheckResult::pass(NAME, format!("{index} distinct involutions t_j"))
    } else {
        CheckResult::fail(NAME, format!("{} distinct conjugates but m = {index}", ts.len()))
    }
}

/// Facts about the subgroup generated by the conjugates of `s_k` under `W'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFacts {
    pub order: usize,
    pub closure_order: usize,
    pub strict: bool,
    pub r: usize,
    /// `|W_J|`, `J` = the nodes outside the odd class of `s_k`.
    pub quotient_order: u128,
    /// Index of the closure's image in the abelianization `2^r`.
    pub abelian_index: u128,
}

impl ClosureFacts {
    pub fn index(&self) -> usize {
        self.order / self.closure_order
    }
}

pub fn closure_facts(m: &CoxeterMatrix, k: usize, cap: usize) -> Result<ClosureFacts, CheckResult> {
    let reg = regular(m, cap, "brute_force_strictness")?;
    let ts = conjugates(&reg, m, k);
    let closure = reg.closure(&ts);
    let odd = odd_components(m);
    let class = odd.block_of(k).expect("node").to_vec();
    let j: Vec<usize> = (0..m.rank()).filter(|i| !class.contains(i)).collect();
    // λ(w): parities of the letters of w in each odd class.
    let lambda = |w: usize| -> Vec<bool> {
        let mut v = vec![false; odd.len()];
        for l in reg.word(w).letters() {
            let b = odd.blocks().iter().position(|b| b.contains(&l.gen)).unwrap();
            v[b] = !v[b];
        }
        v
    };
    let mut image: Vec<Vec<bool>> = closure.iter().map(|&w| lambda(w)).collect();
    image.sort();
    image.dedup();
    Ok(ClosureFacts {
        order: reg.order(),
        closure_order: closure.len(),
        strict: odd.len() == 1,
        r: odd.len(),
        quotient_order: finite_order(&m.restrict(&j)).unwrap_or(0),
        abelian_index: (1u128 << odd.len()) / image.len() as u128,
    })
}

/// Closure of the `t_j` is `W` exactly when symmetric generation is strict.
/// When it is weak, the closure is the normal closure of `s_k`, whose
/// index is `|W_J|` with `J` the nodes outside the odd class of `s_k`; its
/// image in `W/[W,W] ≅ 2^r` has index `2^{r-1}`.
pub fn brute_force_strictness(m: &CoxeterMatrix, k: usize, cap: usize) -> CheckResult {
    const NAME: &str = "brute_force_strictness";
    let f = match closure_facts(m, k, cap) {
        Ok(f) => f,
        Err(c) => return c,
    };
    let full = f.closure_order == f.order;
    let details = format!(
        "closure of t_j has index {} (|W_J| = {}), abelianization image index {} (2^(r-1) = {})",
        f.index(),
        f.quotient_order,
        f.abelian_index,
        1u128 << (f.r - 1)
    );
    if full != f.strict {
        return CheckResult::fail(NAME, format!("strict = {} but {details}", f.strict));
    }
    if f.index() as u128 != f.quotient_order || f.abelian_index != 1u128 << (f.r - 1) {
        return CheckResult::fail(NAME, details);
    }
    CheckResult::pass(NAME, details)
}

/// Runs [`analyze`] and every applicable check.
pub fn verify(m: &CoxeterMatrix, k: usize, limits: &Limits) -> Result<SymGenReport, AnalyzeError> {
    let mut report = analyze(m, k, limits)?;
    let ctx = field_context(m);
    let geo = Geometry::with_context(m, &ctx);
    let x_words: Vec<Word> = report.centralizer.nodes.iter().map(|&i| Word::gen(i - 1)).collect();
    let index = report.m;
    let mut checks = vec![
        check_orbit_oracle(m, k, index, limits),
        eigen_checks(m, k, &ctx),
        fixed_vector_check(m, k, &x_words, &ctx),
        invariant_checks(&geo),
    ];
    if report.parabolic_component_class == GroupClass::Finite
        && classify(&m.restrict(&report.component.iter().map(|i| i - 1).collect::<Vec<_>>())).class
            == GroupClass::Affine
    {
        checks.push(check_long_roots(m, k, index, limits));
    }
    checks.push(verify_isomorphism_for(&report, limits));
    checks.push(brute_force_centralizer(m, k, limits.brute_force_cap));
    checks.push(brute_force_conjugates(m, k, index, limits.brute_force_cap));
    checks.push(brute_force_strictness(m, k, limits.brute_force_cap));
    report.checks.extend(checks);
    Ok(report)
}
