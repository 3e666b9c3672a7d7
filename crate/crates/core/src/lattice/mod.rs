//! Finite ortholattices and monadic ortholattices.
//!
//! An [`OrthoLattice`] can only be obtained from data that passed
//! [`validate_ortholattice`] (and [`check_quantifier`] when a quantifier is
//! attached), so every instance in circulation satisfies the axioms.

mod hom;
mod quantifier;

pub use hom::{
    enumerate_homomorphisms, find_isomorphism, homomorphism_violation, is_homomorphism, LatticeHom,
};
pub use quantifier::{
    check_quantifier, closed_elements, generated_sub_ortholattice, quantifier_from_subalgebra,
    quantifiers_from_subalgebras, sub_ortholattice_violation, sub_ortholattices,
    validate_quantifier,
};

use crate::bitset::{BitSet, Relation};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Unvalidated lattice data as read from a file or produced by a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    pub name: String,
    pub labels: Vec<String>,
    pub leq: Relation,
    pub ortho: Vec<usize>,
    pub exists: Option<Vec<usize>>,
}

impl LatticeData {
    /// Builds the order as the reflexive-transitive closure of the given cover pairs.
    pub fn from_covers(
        name: impl Into<String>,
        labels: Vec<String>,
        covers: &[(usize, usize)],
        ortho: Vec<usize>,
    ) -> Self {
        let n = labels.len();
        let leq = Relation::from_pairs(n, covers.iter().copied()).reflexive_transitive_closure();
        LatticeData {
            name: name.into(),
            labels,
            leq,
            ortho,
            exists: None,
        }
    }
}

/// Meet and join tables of a finite lattice, row-major `n * n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetJoinTables {
    n: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl MeetJoinTables {
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }
}

/// Which bound was missing in [`meets_joins`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MissingBound {
    Meet(usize, usize),
    Join(usize, usize),
}

/// Computes binary meets and joins of a partial order by greatest-lower-bound scan.
pub fn meets_joins(leq: &Relation) -> std::result::Result<MeetJoinTables, MissingBound> {
    let n = leq.size();
    let geq = leq.transpose();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower = geq.row(a).intersection(geq.row(b));
            meet[a * n + b] = lower
                .iter()
                .find(|&c| lower.is_subset(geq.row(c)))
                .ok_or(MissingBound::Meet(a, b))?;
            let upper = leq.row(a).intersection(leq.row(b));
            join[a * n + b] = upper
                .iter()
                .find(|&c| upper.is_subset(leq.row(c)))
                .ok_or(MissingBound::Join(a, b))?;
        }
    }
    Ok(MeetJoinTables { n, meet, join })
}

fn structural_check(data: &LatticeData) -> Result<()> {
    let n = data.labels.len();
    if n == 0 {
        return Err(Error::Structural("lattice has no elements".into()));
    }
    if data.leq.size() != n {
        return Err(Error::Structural(format!(
            "order relation has size {} but there are {n} elements",
            data.leq.size()
        )));
    }
    let check_map = |what: &str, map: &[usize]| -> Result<()> {
        if map.len() != n {
            return Err(Error::Structural(format!(
                "{what} map defined on {} of {n} elements",
                map.len()
            )));
        }
        if let Some((a, &b)) = map.iter().enumerate().find(|(_, &b)| b >= n) {
            return Err(Error::Structural(format!(
                "{what}({}) = index {b} out of range",
                data.labels[a]
            )));
        }
        Ok(())
    };
    check_map("ortho", &data.ortho)?;
    if let Some(ex) = &data.exists {
        check_map("exists", ex)?;
    }
    Ok(())
}

/// Checks every ortholattice axiom; the report is empty iff `data` is an ortholattice.
///
/// Structural defects (out-of-range indices, non-total maps) are returned as
/// [`Error::Structural`], never as violations.
pub fn validate_ortholattice(data: &LatticeData) -> Result<ValidationReport> {
    structural_check(data)?;
    let mut report = ValidationReport::new(format!("ortholattice {}", data.name));
    let lbl = |i: usize| data.labels[i].clone();
    let leq = &data.leq;
    let n = data.labels.len();

    if let Some(a) = leq.first_irreflexive_failure() {
        report.violate("reflexivity", format!("{} ≰ {}", lbl(a), lbl(a)), [lbl(a)]);
    }
    if let Some((a, b)) = leq.first_antisymmetry_failure() {
        report.violate(
            "antisymmetry",
            format!(
                "{} ≤ {} ≤ {} with {} ≠ {}",
                lbl(a),
                lbl(b),
                lbl(a),
                lbl(a),
                lbl(b)
            ),
            [lbl(a), lbl(b)],
        );
    }
    if let Some((a, b, c)) = leq.first_transitivity_failure() {
        report.violate(
            "transitivity",
            format!(
                "{} ≤ {} ≤ {} but {} ≰ {}",
                lbl(a),
                lbl(b),
                lbl(c),
                lbl(a),
                lbl(c)
            ),
            [lbl(a), lbl(b), lbl(c)],
        );
    }
    if !report.is_valid() {
        return Ok(report);
    }

    let tables = match meets_joins(leq) {
        Ok(t) => t,
        Err(MissingBound::Meet(a, b)) => {
            report.violate(
                "meet-existence",
                format!("no meet for ({}, {})", lbl(a), lbl(b)),
                [lbl(a), lbl(b)],
            );
            return Ok(report);
        }
        Err(MissingBound::Join(a, b)) => {
            report.violate(
                "join-existence",
                format!("no join for ({}, {})", lbl(a), lbl(b)),
                [lbl(a), lbl(b)],
            );
            return Ok(report);
        }
    };

    let bottom = (0..n).fold(0, |m, a| tables.meet(m, a));
    let top = (0..n).fold(0, |j, a| tables.join(j, a));
    if let Some(a) = (0..n).find(|&a| !leq.contains(bottom, a) || !leq.contains(a, top)) {
        report.violate(
            "bounds",
            format!("{} is not between the bounds", lbl(a)),
            [lbl(a)],
        );
    }

    let o = &data.ortho;
    if let Some(a) = (0..n).find(|&a| o[o[a]] != a) {
        report.violate(
            "involution",
            format!("{}'' = {} ≠ {}", lbl(a), lbl(o[o[a]]), lbl(a)),
            [lbl(a)],
        );
    }
    if let Some((a, b)) = leq.pairs().find(|&(a, b)| !leq.contains(o[b], o[a])) {
        report.violate(
            "order-inversion",
            format!("{} ≤ {} but {}' ≰ {}'", lbl(a), lbl(b), lbl(b), lbl(a)),
            [lbl(a), lbl(b)],
        );
    }
    if let Some(a) = (0..n).find(|&a| tables.meet(a, o[a]) != bottom) {
        report.violate(
            "complement-meet",
            format!(
                "{} ∧ {}' = {} ≠ {}",
                lbl(a),
                lbl(a),
                lbl(tables.meet(a, o[a])),
                lbl(bottom)
            ),
            [lbl(a)],
        );
    }
    if let Some(a) = (0..n).find(|&a| tables.join(a, o[a]) != top) {
        report.violate(
            "complement-join",
            format!(
                "{} ∨ {}' = {} ≠ {}",
                lbl(a),
                lbl(a),
                lbl(tables.join(a, o[a])),
                lbl(top)
            ),
            [lbl(a)],
        );
    }
    Ok(report)
}

/// A validated finite ortholattice, optionally carrying a validated quantifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoLattice {
    name: String,
    labels: Vec<String>,
    leq: Relation,
    ortho: Vec<usize>,
    exists: Option<Vec<usize>>,
    tables: MeetJoinTables,
    bottom: usize,
    top: usize,
}

impl OrthoLattice {
    pub fn new(data: LatticeData) -> Result<Self> {
        let report = validate_ortholattice(&data)?;
        if !report.is_valid() {
            return Err(Error::invalid(report));
        }
        let tables = meets_joins(&data.leq).expect("validated lattice has meets and joins");
        let n = data.labels.len();
        let bottom = (0..n).fold(0, |m, a| tables.meet(m, a));
        let top = (0..n).fold(0, |j, a| tables.join(j, a));
        let lattice = OrthoLattice {
            name: data.name,
            labels: data.labels,
            leq: data.leq,
            ortho: data.ortho,
            exists: None,
            tables,
            bottom,
            top,
        };
        match data.exists {
            Some(ex) => lattice.with_quantifier(ex),
            None => Ok(lattice),
        }
    }

    /// Attaches a quantifier after checking it against [`check_quantifier`].
    pub fn with_quantifier(mut self, exists: Vec<usize>) -> Result<Self> {
        let report = check_quantifier(&self, &exists)?;
        if !report.is_valid() {
            return Err(Error::invalid(report));
        }
        self.exists = Some(exists);
        Ok(self)
    }

    pub fn without_quantifier(&self) -> Self {
        let mut l = self.clone();
        l.exists = None;
        l
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn to_data(&self) -> LatticeData {
        LatticeData {
            name: self.name.clone(),
            labels: self.labels.clone(),
            leq: self.leq.clone(),
            ortho: self.ortho.clone(),
            exists: self.exists.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn order(&self) -> &Relation {
        &self.leq
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.tables.meet(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.tables.join(a, b)
    }

    #[inline]
    pub fn ortho(&self, a: usize) -> usize {
        self.ortho[a]
    }

    pub fn ortho_map(&self) -> &[usize] {
        &self.ortho
    }

    pub fn exists(&self, a: usize) -> Option<usize> {
        self.exists.as_ref().map(|e| e[a])
    }

    pub fn exists_map(&self) -> Option<&[usize]> {
        self.exists.as_deref()
    }

    pub fn is_monadic(&self) -> bool {
        self.exists.is_some()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |m, a| self.meet(m, a))
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |j, a| self.join(j, a))
    }

    /// `↑a` as a set of element indices.
    pub fn up_set(&self, a: usize) -> BitSet {
        self.leq.row(a).clone()
    }

    /// `↓a` as a set of element indices.
    pub fn down_set(&self, a: usize) -> BitSet {
        BitSet::from_indices(self.len(), self.elements().filter(|&b| self.leq(b, a)))
    }

    /// Nonzero elements, the carrier of the MacLaren frame.
    pub fn nonzero(&self) -> Vec<usize> {
        self.elements().filter(|&a| a != self.bottom).collect()
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.leq.row(a).iter() {
                if a == b {
                    continue;
                }
                let between = self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.covers()
            .into_iter()
            .filter(|&(a, _)| a == self.bottom)
            .map(|(_, b)| b)
            .collect()
    }

    /// Elements with exactly one lower cover; every element is a join of these.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let covers = self.covers();
        self.elements()
            .filter(|&b| covers.iter().filter(|&&(_, c)| c == b).count() == 1)
            .collect()
    }

    /// The orthomodular law `a ≤ b ⇒ b = a ∨ (a' ∧ b)`.
    pub fn is_orthomodular(&self) -> bool {
        self.leq
            .pairs()
            .all(|(a, b)| b == self.join(a, self.meet(self.ortho(a), b)))
    }
}
