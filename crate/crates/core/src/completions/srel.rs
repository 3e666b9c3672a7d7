use super::{enumerate_proper_filters, exists_image, goldblatt_relation};
use crate::bitset::Relation;
use crate::error::{Error, Result};
use crate::frames::{enumerate_closed_sets, validate_monadic_frame};
use crate::lattice::OrthoLattice;
use crate::report::ValidationReport;

/// The relation `x S y` iff `∃[x] = ∃[y]` on proper filters, with its checks.
#[derive(Clone, Debug)]
pub struct SRelation {
    pub relation: Relation,
    pub report: ValidationReport,
}

/// Builds `S` on `F(L)` and checks that it is an equivalence relation, that
/// `R = ↑∘S` as relations, that `(F(L), ⊥, S)` is a monadic orthoframe, and
/// that `R[A]^⊥⊥ = S[A]^⊥⊥` for every `A ∈ B(F(L), ⊥)`.
pub fn relation_s(lattice: &OrthoLattice, closed_budget: usize) -> Result<SRelation> {
    if !lattice.is_monadic() {
        return Err(Error::Structural(format!(
            "{} carries no quantifier",
            lattice.name()
        )));
    }
    let filters = enumerate_proper_filters(lattice);
    let frame = super::goldblatt_frame_over(lattice, &filters)?;
    let n = filters.len();
    let images: Vec<_> = filters
        .filters
        .iter()
        .map(|f| exists_image(lattice, f))
        .collect();
    let s = Relation::from_fn(n, |i, j| images[i] == images[j]);
    let r = goldblatt_relation(lattice, &filters);
    let lbl = |i: usize| frame.label(i).to_string();

    let mut report = ValidationReport::new(format!("relation S on F({})", lattice.name()));
    if !s.is_equivalence() {
        report.violate(
            "equivalence",
            "S is not an equivalence relation",
            Vec::<String>::new(),
        );
    }
    let inclusion = Relation::from_fn(n, |i, j| filters.filter(i).is_subset(filters.filter(j)));
    let up_s = s.then(&inclusion);
    if let Some((i, j)) = up_s.pairs().find(|&(i, j)| !r.contains(i, j)) {
        report.violate(
            "R-equals-upS",
            format!("{} ↑S {} but not R", lbl(i), lbl(j)),
            [lbl(i), lbl(j)],
        );
    } else if let Some((i, j)) = r.pairs().find(|&(i, j)| !up_s.contains(i, j)) {
        report.violate(
            "R-equals-upS",
            format!("{} R {} but not ↑S", lbl(i), lbl(j)),
            [lbl(i), lbl(j)],
        );
    }
    report.absorb("monadic-frame-S", validate_monadic_frame(&frame, &s)?);
    let plain = frame.without_relation();
    for a in enumerate_closed_sets(&plain, closed_budget)? {
        let via_r = frame.biorthogonal(&r.image(&a));
        let via_s = frame.biorthogonal(&s.image(&a));
        if via_r != via_s {
            report.violate(
                "quantifier-R-equals-S",
                format!("R[A]^⊥⊥ ≠ S[A]^⊥⊥ for A = {}", frame.set_label(&a)),
                [frame.set_label(&a)],
            );
            break;
        }
    }
    if !report.is_valid() {
        return Err(Error::Inconsistency(report.summary()));
    }
    Ok(SRelation {
        relation: s,
        report,
    })
}
