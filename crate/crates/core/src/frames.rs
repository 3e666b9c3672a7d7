//! Orthoframes, monadic orthoframes and the ortholattice `B(X)` of
//! bi-orthogonally closed subsets.

use std::collections::HashMap;

use crate::bitset::{BitSet, Relation};
use crate::error::{Error, Result};
use crate::lattice::{LatticeData, OrthoLattice};
use crate::report::ValidationReport;

/// A finite set with an irreflexive symmetric orthogonality relation `⊥`,
/// optionally carrying a second relation `R` that makes it a monadic orthoframe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoFrame {
    name: String,
    labels: Vec<String>,
    perp: Relation,
    rel: Option<Relation>,
}

/// Checks that `perp` is an orthogonality relation on `labels.len()` points.
pub fn validate_orthoframe(
    name: &str,
    labels: &[String],
    perp: &Relation,
) -> Result<ValidationReport> {
    if perp.size() != labels.len() {
        return Err(Error::Structural(format!(
            "orthogonality relation has size {} but there are {} points",
            perp.size(),
            labels.len()
        )));
    }
    let mut report = ValidationReport::new(format!("orthoframe {name}"));
    if let Some(x) = perp.first_reflexive_pair() {
        report.violate(
            "irreflexive",
            format!("{0} ⊥ {0}", labels[x]),
            [labels[x].clone()],
        );
    }
    if let Some((x, y)) = perp.first_asymmetric_pair() {
        report.violate(
            "symmetric",
            format!(
                "{} ⊥ {} but not {} ⊥ {}",
                labels[x], labels[y], labels[y], labels[x]
            ),
            [labels[x].clone(), labels[y].clone()],
        );
    }
    Ok(report)
}

/// Checks reflexivity, transitivity and `R[R[{x}]^⊥] ⊆ R[{x}]^⊥` for every point.
pub fn validate_monadic_frame(frame: &OrthoFrame, rel: &Relation) -> Result<ValidationReport> {
    if rel.size() != frame.len() {
        return Err(Error::Structural(format!(
            "relation has size {} but there are {} points",
            rel.size(),
            frame.len()
        )));
    }
    let lbl = |x: usize| frame.label(x).to_string();
    let mut report = ValidationReport::new(format!("monadic orthoframe {}", frame.name()));
    if let Some(x) = rel.first_irreflexive_failure() {
        report.violate("reflexive", format!("not {0} R {0}", lbl(x)), [lbl(x)]);
    }
    if let Some((x, y, z)) = rel.first_transitivity_failure() {
        report.violate(
            "transitive",
            format!(
                "{} R {} R {} but not {} R {}",
                lbl(x),
                lbl(y),
                lbl(z),
                lbl(x),
                lbl(z)
            ),
            [lbl(x), lbl(y), lbl(z)],
        );
    }
    for x in frame.points() {
        let orth = frame.orthogonal(&rel.image(&BitSet::singleton(frame.len(), x)));
        let pushed = rel.image(&orth);
        if let Some(y) = pushed.difference(&orth).first() {
            report.violate(
                "R-stable-orthogonal",
                format!(
                    "R[R[{{{0}}}]^⊥] ⊄ R[{{{0}}}]^⊥: {1} escapes",
                    lbl(x),
                    lbl(y)
                ),
                [lbl(x), lbl(y)],
            );
            break;
        }
    }
    Ok(report)
}

impl OrthoFrame {
    pub fn new(name: impl Into<String>, labels: Vec<String>, perp: Relation) -> Result<Self> {
        let name = name.into();
        let report = validate_orthoframe(&name, &labels, &perp)?;
        if !report.is_valid() {
            return Err(Error::invalid(report));
        }
        Ok(OrthoFrame {
            name,
            labels,
            perp,
            rel: None,
        })
    }

    /// Attaches `R`, checked by [`validate_monadic_frame`].
    pub fn with_relation(mut self, rel: Relation) -> Result<Self> {
        let report = validate_monadic_frame(&self, &rel)?;
        if !report.is_valid() {
            return Err(Error::invalid(report));
        }
        self.rel = Some(rel);
        Ok(self)
    }

    pub fn without_relation(&self) -> Self {
        let mut f = self.clone();
        f.rel = None;
        f
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn perp(&self) -> &Relation {
        &self.perp
    }

    #[inline]
    pub fn is_perp(&self, x: usize, y: usize) -> bool {
        self.perp.contains(x, y)
    }

    pub fn relation(&self) -> Option<&Relation> {
        self.rel.as_ref()
    }

    pub fn is_monadic(&self) -> bool {
        self.rel.is_some()
    }

    pub fn full(&self) -> BitSet {
        BitSet::full(self.len())
    }

    pub fn singleton(&self, x: usize) -> BitSet {
        BitSet::singleton(self.len(), x)
    }

    /// `S^⊥ = {y : x ⊥ y for all x ∈ S}`; the orthogonal of `∅` is the carrier.
    pub fn orthogonal(&self, set: &BitSet) -> BitSet {
        let mut out = self.full();
        for x in set.iter() {
            out.intersect_with(self.perp.row(x));
        }
        out
    }

    pub fn biorthogonal(&self, set: &BitSet) -> BitSet {
        self.orthogonal(&self.orthogonal(set))
    }

    pub fn is_closed(&self, set: &BitSet) -> bool {
        self.biorthogonal(set) == *set
    }

    /// `R[A]`; requires a monadic frame.
    pub fn image(&self, set: &BitSet) -> BitSet {
        relational_image(self.rel.as_ref().expect("frame carries no relation R"), set)
    }

    /// The frame quantifier `∃A = R[A]^⊥⊥`.
    pub fn quantify(&self, set: &BitSet) -> BitSet {
        self.biorthogonal(&self.image(set))
    }

    pub fn set_label(&self, set: &BitSet) -> String {
        let inner: Vec<&str> = set.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// `R[A] = {y : x R y for some x ∈ A}`.
pub fn relational_image(rel: &Relation, set: &BitSet) -> BitSet {
    rel.image(set)
}

/// The ortholattice `B(X)` of an orthoframe, with its frame quantifier when `R` is present.
#[derive(Clone, Debug)]
pub struct ClosedSetLattice {
    pub frame: OrthoFrame,
    /// Closed sets in lattice-index order (sorted by size, then members).
    pub sets: Vec<BitSet>,
    pub lattice: OrthoLattice,
    index: HashMap<BitSet, usize>,
}

impl ClosedSetLattice {
    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn set(&self, i: usize) -> &BitSet {
        &self.sets[i]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Enumerates `B(X)` as the intersection-closure of `{ {x}^⊥ : x ∈ X } ∪ {X}`.
///
/// Fails with a budget error once more than `budget` closed sets are produced.
pub fn enumerate_closed_sets(frame: &OrthoFrame, budget: usize) -> Result<Vec<BitSet>> {
    let mut family = vec![frame.full()];
    let mut seen: std::collections::HashSet<BitSet> = family.iter().cloned().collect();
    for x in frame.points() {
        let generator = frame.perp().row(x).clone();
        let mut added = Vec::new();
        for member in &family {
            let meet = member.intersection(&generator);
            if seen.insert(meet.clone()) {
                added.push(meet);
            }
        }
        family.extend(added);
        if family.len() > budget {
            return Err(Error::budget(
                format!("closed-set enumeration for {}", frame.name()),
                budget,
            ));
        }
    }
    family.sort();
    Ok(family)
}

/// Builds `B(X)` and validates it as a (monadic) ortholattice.
///
/// Meets are intersections, joins are `(A ∪ B)^⊥⊥`, the orthocomplement is
/// `A ↦ A^⊥` and, with `R` present, the quantifier is `A ↦ R[A]^⊥⊥`.
pub fn closed_set_lattice(frame: &OrthoFrame, budget: usize) -> Result<ClosedSetLattice> {
    let sets = enumerate_closed_sets(frame, budget)?;
    let index: HashMap<BitSet, usize> = sets
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let lookup = |s: &BitSet, what: &str| {
        index.get(s).copied().ok_or_else(|| {
            Error::Inconsistency(format!(
                "{what} of a closed set is not closed in {}",
                frame.name()
            ))
        })
    };
    let n = sets.len();
    let leq = Relation::from_fn(n, |i, j| sets[i].is_subset(&sets[j]));
    let ortho = sets
        .iter()
        .map(|s| lookup(&frame.orthogonal(s), "orthogonal"))
        .collect::<Result<Vec<_>>>()?;
    let exists = if frame.is_monadic() {
        Some(
            sets.iter()
                .map(|s| lookup(&frame.quantify(s), "R-closure"))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let data = LatticeData {
        name: format!("B({})", frame.name()),
        labels: sets.iter().map(|s| frame.set_label(s)).collect(),
        leq,
        ortho,
        exists,
    };
    let lattice = OrthoLattice::new(data).map_err(|e| match e {
        Error::Invalid(r) => Error::Inconsistency(r.summary()),
        other => other,
    })?;
    Ok(ClosedSetLattice {
        frame: frame.clone(),
        sets,
        lattice,
        index,
    })
}
