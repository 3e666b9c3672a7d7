//! MacLaren and Goldblatt frames of an ortholattice, the embeddings `g` and
//! `h` into their closed-set lattices, and the checks that these are the
//! MacNeille and canonical completions.

mod srel;
mod verify;

pub use srel::{relation_s, SRelation};
pub use verify::{verify_canonical, verify_macneille};

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, Relation};
use crate::error::{Error, Result};
use crate::frames::{closed_set_lattice, enumerate_closed_sets, ClosedSetLattice, OrthoFrame};
use crate::lattice::{homomorphism_violation, OrthoLattice};

fn promote(e: Error) -> Error {
    match e {
        Error::Invalid(r) => Error::Inconsistency(r.summary()),
        other => other,
    }
}

/// The MacLaren orthoframe `(L*, ⊥)` with `a ⊥ b` iff `a ≤ b'`.
///
/// Point `i` of the frame is the `i`-th nonzero element of `lattice` in index order.
pub fn maclaren_frame(lattice: &OrthoLattice) -> Result<OrthoFrame> {
    if lattice.len() == 1 {
        return Err(Error::Degenerate(format!(
            "{} is trivial; its MacLaren frame has no points",
            lattice.name()
        )));
    }
    let points = lattice.nonzero();
    let labels = points
        .iter()
        .map(|&a| lattice.label(a).to_string())
        .collect();
    let perp = Relation::from_fn(points.len(), |i, j| {
        lattice.leq(points[i], lattice.ortho(points[j]))
    });
    OrthoFrame::new(format!("MacLaren({})", lattice.name()), labels, perp).map_err(promote)
}

/// The monadic MacLaren frame: `a R b` iff `b ≤ ∃a`.
pub fn maclaren_monadic_frame(lattice: &OrthoLattice) -> Result<OrthoFrame> {
    let exists = lattice
        .exists_map()
        .ok_or_else(|| Error::Structural(format!("{} carries no quantifier", lattice.name())))?;
    let frame = maclaren_frame(lattice)?;
    let points = lattice.nonzero();
    let rel = Relation::from_fn(points.len(), |i, j| {
        lattice.leq(points[j], exists[points[i]])
    });
    frame.with_relation(rel).map_err(promote)
}

/// The proper nonempty filters of a lattice, sorted by their least element.
#[derive(Clone, Debug)]
pub struct FilterSet {
    pub filters: Vec<BitSet>,
    /// Least element of each filter (the meet of its members).
    pub minima: Vec<usize>,
    index: HashMap<BitSet, usize>,
}

impl FilterSet {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn index_of(&self, filter: &BitSet) -> Option<usize> {
        self.index.get(filter).copied()
    }

    pub fn filter(&self, i: usize) -> &BitSet {
        &self.filters[i]
    }

    /// Index of the principal filter `↑a`, for nonzero `a`.
    pub fn principal(&self, a: usize) -> Option<usize> {
        self.minima.iter().position(|&m| m == a)
    }
}

/// Smallest filter of `lattice` containing `seed` (possibly improper).
pub fn generated_filter(lattice: &OrthoLattice, seed: &BitSet) -> BitSet {
    let mut set = seed.clone();
    set.insert(lattice.top());
    loop {
        let mut next = set.clone();
        for a in set.iter() {
            next.union_with(&lattice.up_set(a));
            for b in set.iter() {
                next.insert(lattice.meet(a, b));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Every filter of `lattice`, proper or not, enumerated as a closure system.
pub fn enumerate_all_filters(lattice: &OrthoLattice) -> Vec<BitSet> {
    let start = generated_filter(lattice, &BitSet::empty(lattice.len()));
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for e in lattice.elements().filter(|&e| !f.contains(e)) {
            let mut seed = f.clone();
            seed.insert(e);
            let g = generated_filter(lattice, &seed);
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    seen.into_iter().collect()
}

/// The set `F(L)` of proper nonempty filters, enumerated generically (upward
/// closed, meet closed, excluding bottom) rather than as principal filters.
pub fn enumerate_proper_filters(lattice: &OrthoLattice) -> FilterSet {
    let mut tagged: Vec<(usize, BitSet)> = enumerate_all_filters(lattice)
        .into_iter()
        .filter(|f| !f.contains(lattice.bottom()))
        .map(|f| (lattice.meet_all(f.iter()), f))
        .collect();
    tagged.sort();
    let index = tagged
        .iter()
        .enumerate()
        .map(|(i, (_, f))| (f.clone(), i))
        .collect();
    let (minima, filters) = tagged.into_iter().unzip();
    FilterSet {
        filters,
        minima,
        index,
    }
}

/// Checks the finite-lattice oracle: the filters are exactly the principal
/// filters `↑a` of the nonzero elements, each listed once.
pub fn principal_filter_mismatch(lattice: &OrthoLattice, set: &FilterSet) -> Option<String> {
    let principal: BTreeSet<BitSet> = lattice
        .nonzero()
        .into_iter()
        .map(|a| lattice.up_set(a))
        .collect();
    let generic: BTreeSet<BitSet> = set.filters.iter().cloned().collect();
    if generic.len() != set.len() {
        return Some("duplicate filter".into());
    }
    if let Some(f) = generic.difference(&principal).next() {
        return Some(format!("filter {:?} is not principal", f.to_vec()));
    }
    if let Some(f) = principal.difference(&generic).next() {
        return Some(format!("principal filter {:?} missing", f.to_vec()));
    }
    for (f, &m) in set.filters.iter().zip(&set.minima) {
        if *f != lattice.up_set(m) {
            return Some(format!(
                "filter with minimum {} is not ↑{}",
                lattice.label(m),
                lattice.label(m)
            ));
        }
    }
    None
}

pub fn filter_label(lattice: &OrthoLattice, minimum: usize) -> String {
    format!("^{}", lattice.label(minimum))
}

fn goldblatt_perp(lattice: &OrthoLattice, filters: &FilterSet) -> Relation {
    let n = filters.len();
    // x ⊥ y iff some a ∈ L* has a ∈ x and a' ∈ y
    Relation::from_fn(n, |i, j| {
        filters.filters[i]
            .iter()
            .any(|a| a != lattice.bottom() && filters.filters[j].contains(lattice.ortho(a)))
    })
}

/// `∃[x] = {∃a : a ∈ x}`.
pub fn exists_image(lattice: &OrthoLattice, filter: &BitSet) -> BitSet {
    let exists = lattice.exists_map().expect("lattice carries no quantifier");
    BitSet::from_indices(lattice.len(), filter.iter().map(|a| exists[a]))
}

/// The Goldblatt orthoframe `(F(L), ⊥)`, its points ordered as in [`enumerate_proper_filters`].
pub fn goldblatt_frame(lattice: &OrthoLattice) -> Result<OrthoFrame> {
    let filters = enumerate_proper_filters(lattice);
    goldblatt_frame_over(lattice, &filters)
}

pub(crate) fn goldblatt_frame_over(
    lattice: &OrthoLattice,
    filters: &FilterSet,
) -> Result<OrthoFrame> {
    let labels = filters
        .minima
        .iter()
        .map(|&m| filter_label(lattice, m))
        .collect();
    let frame = OrthoFrame::new(
        format!("Goldblatt({})", lattice.name()),
        labels,
        goldblatt_perp(lattice, filters),
    )
    .map_err(promote)?;
    if lattice.is_monadic() {
        frame
            .with_relation(goldblatt_relation(lattice, filters))
            .map_err(promote)
    } else {
        Ok(frame)
    }
}

/// `x R y` iff `∃[x] ⊆ y`.
pub fn goldblatt_relation(lattice: &OrthoLattice, filters: &FilterSet) -> Relation {
    let images: Vec<BitSet> = filters
        .filters
        .iter()
        .map(|f| exists_image(lattice, f))
        .collect();
    Relation::from_fn(filters.len(), |i, j| {
        images[i].is_subset(&filters.filters[j])
    })
}

/// The monadic Goldblatt frame `(F(L), ⊥, R)`.
pub fn goldblatt_monadic_frame(lattice: &OrthoLattice) -> Result<OrthoFrame> {
    if !lattice.is_monadic() {
        return Err(Error::Structural(format!(
            "{} carries no quantifier",
            lattice.name()
        )));
    }
    goldblatt_frame(lattice)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionKind {
    MacNeille,
    Canonical,
}

/// An embedding of a lattice into a family of closed sets of a frame.
///
/// Targets are kept as plain set families so that verification only uses
/// set-level operations of the frame and can be run on corrupted witnesses.
#[derive(Clone, Debug)]
pub struct CompletionWitness {
    pub kind: CompletionKind,
    pub source: OrthoLattice,
    pub frame: OrthoFrame,
    pub target: Vec<BitSet>,
    /// `embedding[a]` is the image of element `a`.
    pub embedding: Vec<BitSet>,
}

impl CompletionWitness {
    /// Builds the target as a validated ortholattice together with the index form of the embedding.
    pub fn target_lattice(&self, budget: usize) -> Result<(ClosedSetLattice, Vec<usize>)> {
        let target = closed_set_lattice(&self.frame, budget)?;
        let map = self
            .embedding
            .iter()
            .map(|s| {
                target
                    .index_of(s)
                    .ok_or_else(|| Error::Inconsistency("image set is not closed".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((target, map))
    }

    pub fn image_label(&self, a: usize) -> String {
        self.frame.set_label(&self.embedding[a])
    }
}

fn assert_embedding(w: &CompletionWitness, budget: usize) -> Result<()> {
    let (target, map) = w.target_lattice(budget)?;
    if let Some(v) = homomorphism_violation(&w.source, &target.lattice, &map)? {
        return Err(Error::Inconsistency(format!(
            "embedding is not a homomorphism: {v}"
        )));
    }
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != map.len() {
        return Err(Error::Inconsistency("embedding is not injective".into()));
    }
    Ok(())
}

/// `g(a) = {b ∈ L* : b ≤ a}` into `B(L*, ⊥[, R])`.
pub fn embedding_g(lattice: &OrthoLattice, budget: usize) -> Result<CompletionWitness> {
    let frame = if lattice.is_monadic() {
        maclaren_monadic_frame(lattice)?
    } else {
        maclaren_frame(lattice)?
    };
    let points = lattice.nonzero();
    let embedding = lattice
        .elements()
        .map(|a| {
            BitSet::from_indices(
                points.len(),
                (0..points.len()).filter(|&i| lattice.leq(points[i], a)),
            )
        })
        .collect();
    let w = CompletionWitness {
        kind: CompletionKind::MacNeille,
        source: lattice.clone(),
        target: enumerate_closed_sets(&frame, budget)?,
        frame,
        embedding,
    };
    assert_embedding(&w, budget)?;
    Ok(w)
}

/// `h(a) = {x ∈ F(L) : a ∈ x}` into `B(F(L), ⊥[, R])`.
pub fn embedding_h(lattice: &OrthoLattice, budget: usize) -> Result<CompletionWitness> {
    let filters = enumerate_proper_filters(lattice);
    let frame = goldblatt_frame_over(lattice, &filters)?;
    let embedding = lattice.elements().map(|a| h_image(&filters, a)).collect();
    let w = CompletionWitness {
        kind: CompletionKind::Canonical,
        source: lattice.clone(),
        target: enumerate_closed_sets(&frame, budget)?,
        frame,
        embedding,
    };
    assert_embedding(&w, budget)?;
    Ok(w)
}

/// `h(a)` over a given filter set.
pub fn h_image(filters: &FilterSet, a: usize) -> BitSet {
    BitSet::from_indices(
        filters.len(),
        (0..filters.len()).filter(|&i| filters.filters[i].contains(a)),
    )
}
