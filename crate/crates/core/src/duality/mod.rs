//! Finite orthospaces and the dual adjunction between ortholattices and
//! orthospaces given by proper filters `F` and closed sets `C`.
//!
//! A compact topology in which `C(X)` separates points is discrete on a
//! finite carrier, so no topology is stored: every continuity condition holds
//! identically and `C(X) = B(X)`.

mod adjunction;
mod functors;
mod morphism;

pub use adjunction::{
    goldblatt_family, two_point_counterexample, verify_adjunction, verify_dual_equivalence,
    AdjunctionCertificate, Counterexample, Families,
};
pub use functors::{
    functor_c, functor_f, goldblatt_space, is_ortho_sober, point_filter, transpose_minus,
    transpose_plus, unit_g, unit_h, verify_unit_g, verify_unit_h, GoldblattSpace, Sobriety, UnitG,
};
pub use morphism::{
    enumerate_space_morphisms, is_os_morphism, validate_os_morphism, SpaceMorphism,
};

use crate::bitset::{BitSet, Relation};
use crate::error::{Error, Result};
use crate::frames::{closed_set_lattice, validate_monadic_frame, ClosedSetLattice, OrthoFrame};
use crate::lattice::OrthoLattice;
use crate::report::ValidationReport;

/// `x ≤ y` iff `y ∈ {x}^⊥⊥`, always a preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedOrder {
    pub relation: Relation,
    /// First pair `x ≠ y` with `x ≤ y ≤ x`, when the order fails to separate points.
    pub separation_failure: Option<(usize, usize)>,
}

pub fn derive_order(frame: &OrthoFrame) -> DerivedOrder {
    let closures: Vec<BitSet> = frame
        .points()
        .map(|x| frame.biorthogonal(&frame.singleton(x)))
        .collect();
    let relation = Relation::from_fn(frame.len(), |x, y| closures[x].contains(y));
    let separation_failure = relation.first_antisymmetry_failure();
    DerivedOrder {
        relation,
        separation_failure,
    }
}

/// Checks the orthospace conditions literally with `C(X) = B(X)`:
/// (1) `x ≰ y` gives a `U ∈ C(X)` with `x ∈ U`, `y ∉ U`, and `≤` is a partial order;
/// (2) `x ⊥ z` and `x ≤ y` give `y ⊥ z`;
/// (3) `U ∈ C(X)` gives `U^⊥ ∈ C(X)`;
/// (4) `x ⊥ y` gives a `U ∈ C(X)` with `x ∈ U` and `y ∈ U^⊥`.
///
/// `order` defaults to the derived order; a supplied order is also compared with it.
pub fn validate_orthospace(
    frame: &OrthoFrame,
    order: Option<&Relation>,
    closed_budget: usize,
) -> Result<ValidationReport> {
    let cs = closed_set_lattice(&frame.without_relation(), closed_budget)?;
    validate_orthospace_over(frame, order, &cs.sets)
}

fn validate_orthospace_over(
    frame: &OrthoFrame,
    order: Option<&Relation>,
    closed: &[BitSet],
) -> Result<ValidationReport> {
    let derived = derive_order(frame);
    let order = order.unwrap_or(&derived.relation);
    if order.size() != frame.len() {
        return Err(Error::Structural(format!(
            "order has size {} but there are {} points",
            order.size(),
            frame.len()
        )));
    }
    let lbl = |x: usize| frame.label(x).to_string();
    let mut report = ValidationReport::new(format!("orthospace {}", frame.name()));

    if let Some(x) = order.first_irreflexive_failure() {
        report.violate("partial-order", format!("not {0} ≤ {0}", lbl(x)), [lbl(x)]);
    } else if let Some((x, y, z)) = order.first_transitivity_failure() {
        report.violate(
            "partial-order",
            format!(
                "{} ≤ {} ≤ {} but not {} ≤ {}",
                lbl(x),
                lbl(y),
                lbl(z),
                lbl(x),
                lbl(z)
            ),
            [lbl(x), lbl(y), lbl(z)],
        );
    } else if let Some((x, y)) = order.first_antisymmetry_failure() {
        report.violate(
            "partial-order",
            format!("{} ≤ {} ≤ {}: separation fails", lbl(x), lbl(y), lbl(x)),
            [lbl(x), lbl(y)],
        );
    }

    'sep: for x in frame.points() {
        for y in frame.points() {
            if !order.contains(x, y) && !closed.iter().any(|u| u.contains(x) && !u.contains(y)) {
                report.violate(
                    "separation",
                    format!("{} ≰ {} but no closed set separates them", lbl(x), lbl(y)),
                    [lbl(x), lbl(y)],
                );
                break 'sep;
            }
        }
    }

    'up: for x in frame.points() {
        for z in frame.perp().row(x).iter() {
            if let Some(y) = order.row(x).iter().find(|&y| !frame.is_perp(y, z)) {
                report.violate(
                    "orthogonality-up-closed",
                    format!(
                        "{} ⊥ {} and {} ≤ {} but not {} ⊥ {}",
                        lbl(x),
                        lbl(z),
                        lbl(x),
                        lbl(y),
                        lbl(y),
                        lbl(z)
                    ),
                    [lbl(x), lbl(y), lbl(z)],
                );
                break 'up;
            }
        }
    }

    for u in closed {
        let o = frame.orthogonal(u);
        if !closed.contains(&o) {
            report.violate(
                "orthogonal-closed",
                format!("{}^⊥ is not in C(X)", frame.set_label(u)),
                [frame.set_label(u)],
            );
            break;
        }
    }

    'sepperp: for (x, y) in frame.perp().pairs() {
        if !closed
            .iter()
            .any(|u| u.contains(x) && frame.orthogonal(u).contains(y))
        {
            report.violate(
                "orthogonality-separated",
                format!(
                    "{} ⊥ {} but no U has {} ∈ U, {} ∈ U^⊥",
                    lbl(x),
                    lbl(y),
                    lbl(x),
                    lbl(y)
                ),
                [lbl(x), lbl(y)],
            );
            break 'sepperp;
        }
    }

    if let Some((x, y)) = order
        .pairs()
        .find(|&(x, y)| !derived.relation.contains(x, y))
    {
        report.violate(
            "order-from-biorthogonal",
            format!("{} ≤ {} but {} ∉ {{{}}}^⊥⊥", lbl(x), lbl(y), lbl(y), lbl(x)),
            [lbl(x), lbl(y)],
        );
    } else if let Some((x, y)) = derived
        .relation
        .pairs()
        .find(|&(x, y)| !order.contains(x, y))
    {
        report.violate(
            "order-from-biorthogonal",
            format!(
                "{} ∈ {{{}}}^⊥⊥ but not {} ≤ {}",
                lbl(y),
                lbl(x),
                lbl(x),
                lbl(y)
            ),
            [lbl(x), lbl(y)],
        );
    }
    Ok(report)
}

/// Adds to [`validate_orthospace`] the monadic frame conditions on `R` and
/// `R[U] ∈ C(X)` for every `U ∈ C(X)`.
pub fn validate_monadic_orthospace(
    frame: &OrthoFrame,
    order: Option<&Relation>,
    closed_budget: usize,
) -> Result<ValidationReport> {
    let rel = frame
        .relation()
        .ok_or_else(|| Error::Structural(format!("{} carries no relation R", frame.name())))?;
    let cs = closed_set_lattice(&frame.without_relation(), closed_budget)?;
    let mut report = validate_orthospace_over(frame, order, &cs.sets)?;
    report.subject = format!("monadic orthospace {}", frame.name());
    report.absorb("monadic-frame", validate_monadic_frame(frame, rel)?);
    for u in &cs.sets {
        let image = rel.image(u);
        if cs.index_of(&image).is_none() {
            report.violate(
                "R-image-closed",
                format!(
                    "R[{}] = {} is not in C(X)",
                    frame.set_label(u),
                    frame.set_label(&image)
                ),
                [frame.set_label(u)],
            );
            break;
        }
    }
    Ok(report)
}

/// A validated finite (monadic) orthospace together with `C(X)`.
#[derive(Clone, Debug)]
pub struct OrthoSpace {
    closed: ClosedSetLattice,
    order: Relation,
}

impl OrthoSpace {
    /// Validates `frame` as an orthospace, monadic when it carries `R`.
    pub fn new(frame: OrthoFrame, order: Option<Relation>, closed_budget: usize) -> Result<Self> {
        let report = if frame.is_monadic() {
            validate_monadic_orthospace(&frame, order.as_ref(), closed_budget)?
        } else {
            validate_orthospace(&frame, order.as_ref(), closed_budget)?
        };
        if !report.is_valid() {
            return Err(Error::invalid(report));
        }
        let order = order.unwrap_or_else(|| derive_order(&frame).relation);
        let closed = closed_set_lattice(&frame, closed_budget)?;
        Ok(OrthoSpace { closed, order })
    }

    pub fn frame(&self) -> &OrthoFrame {
        &self.closed.frame
    }

    pub fn name(&self) -> &str {
        self.closed.frame.name()
    }

    pub fn len(&self) -> usize {
        self.closed.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.frame.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        self.closed.frame.points()
    }

    pub fn label(&self, x: usize) -> &str {
        self.closed.frame.label(x)
    }

    pub fn order(&self) -> &Relation {
        &self.order
    }

    pub fn is_monadic(&self) -> bool {
        self.closed.frame.is_monadic()
    }

    /// `C(X)` as sets and as a (monadic) ortholattice.
    pub fn closed(&self) -> &ClosedSetLattice {
        &self.closed
    }

    pub fn clopen_lattice(&self) -> &OrthoLattice {
        &self.closed.lattice
    }

    pub fn closed_set(&self, i: usize) -> &BitSet {
        self.closed.set(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{mo, two_point_frame};
    use crate::completions::maclaren_frame;

    fn lbls(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn derived_order_examples() {
        let two = two_point_frame();
        let d = derive_order(&two);
        assert_eq!(d.relation, Relation::identity(2));
        assert!(d.separation_failure.is_none());

        let m = mo(2).unwrap();
        let f = maclaren_frame(&m).unwrap();
        let d = derive_order(&f);
        let one = f.index_of("1").unwrap();
        // oracle: evaluate {x}^⊥⊥ per point
        for x in f.points() {
            for y in f.points() {
                let expected = x == y || x == one;
                assert_eq!(
                    d.relation.contains(x, y),
                    expected,
                    "{} ≤ {}",
                    f.label(x),
                    f.label(y)
                );
            }
        }

        let flat = OrthoFrame::new("flat", lbls(&["p", "q"]), Relation::empty(2)).unwrap();
        let d = derive_order(&flat);
        assert_eq!(d.relation, Relation::total(2));
        assert_eq!(d.separation_failure, Some((0, 1)));
    }

    #[test]
    fn orthospace_examples() {
        let two = two_point_frame();
        assert!(validate_orthospace(&two, None, 64).unwrap().is_valid());

        let flat = OrthoFrame::new("flat", lbls(&["p", "q"]), Relation::empty(2)).unwrap();
        let eq = Relation::identity(2);
        let r = validate_orthospace(&flat, Some(&eq), 64).unwrap();
        assert!(r.has_violation("separation"));
        assert_eq!(
            r.violations
                .iter()
                .find(|v| v.axiom == "separation")
                .unwrap()
                .witness,
            lbls(&["p", "q"])
        );
        let r = validate_orthospace(&flat, None, 64).unwrap();
        assert!(r.has_violation("partial-order"));
        assert!(OrthoSpace::new(flat, None, 64).is_err());
    }

    #[test]
    fn monadic_orthospace_examples() {
        let two = two_point_frame()
            .with_relation(Relation::identity(2))
            .unwrap();
        assert!(validate_monadic_orthospace(&two, None, 64)
            .unwrap()
            .is_valid());

        let f = maclaren_frame(&mo(2).unwrap())
            .unwrap()
            .with_relation(Relation::total(5))
            .unwrap();
        let r = validate_monadic_orthospace(&f, None, 64).unwrap();
        // oracle: R[U] is ∅ or the carrier, both closed
        let cs = closed_set_lattice(&f.without_relation(), 64).unwrap();
        let all_closed = cs
            .sets
            .iter()
            .all(|u| cs.index_of(&Relation::total(5).image(u)).is_some());
        assert!(all_closed);
        assert_eq!(r.is_valid(), all_closed);
    }

    #[test]
    fn supplied_order_must_agree() {
        let two = two_point_frame();
        let mut bad = Relation::identity(2);
        bad.insert(0, 1);
        let r = validate_orthospace(&two, Some(&bad), 64).unwrap();
        assert!(r.has_violation("order-from-biorthogonal"));
    }
}
