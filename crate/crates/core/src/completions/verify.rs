//! Completion checks. Everything here is evaluated with set operations of the
//! witness frame: meets are intersections, joins are closures of unions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{enumerate_all_filters, CompletionKind, CompletionWitness};
use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::report::ValidationReport;

struct SetOps<'a> {
    w: &'a CompletionWitness,
}

impl SetOps<'_> {
    fn meet<'s>(&self, sets: impl IntoIterator<Item = &'s BitSet>) -> BitSet {
        let mut out = self.w.frame.full();
        for s in sets {
            out.intersect_with(s);
        }
        out
    }

    fn join<'s>(&self, sets: impl IntoIterator<Item = &'s BitSet>) -> BitSet {
        let mut out = BitSet::empty(self.w.frame.len());
        for s in sets {
            out.union_with(s);
        }
        self.w.frame.biorthogonal(&out)
    }

    fn label(&self, s: &BitSet) -> String {
        self.w.frame.set_label(s)
    }
}

/// Embedding sub-check shared by both completion kinds. Returns false when the
/// embedding is unusable for the remaining checks (not total, or leaves the target).
fn check_embedding(w: &CompletionWitness, report: &mut ValidationReport) -> bool {
    let l = &w.source;
    let ops = SetOps { w };
    let e = &w.embedding;
    let lbl = |a: usize| l.label(a).to_string();

    if e.len() != l.len() {
        report.violate("embedding", "embedding is not total", Vec::<String>::new());
        return false;
    }
    if let Some(a) = l.elements().find(|&a| !w.target.contains(&e[a])) {
        report.violate(
            "embedding",
            format!("e({}) = {} is not in the target", lbl(a), ops.label(&e[a])),
            [lbl(a)],
        );
        return false;
    }
    check_embedding_equations(w, report);
    true
}

fn check_embedding_equations(w: &CompletionWitness, report: &mut ValidationReport) {
    let l = &w.source;
    let ops = SetOps { w };
    let e = &w.embedding;
    let lbl = |a: usize| l.label(a).to_string();
    for a in l.elements() {
        for b in l.elements().filter(|&b| b > a) {
            if e[a] == e[b] {
                report.violate(
                    "embedding",
                    format!("e({}) = e({})", lbl(a), lbl(b)),
                    [lbl(a), lbl(b)],
                );
                return;
            }
        }
    }
    let bottom = ops.meet(w.target.iter());
    if e[l.bottom()] != bottom || !e[l.top()].is_full() {
        report.violate(
            "embedding",
            "bounds not preserved",
            [lbl(l.bottom()), lbl(l.top())],
        );
        return;
    }
    for a in l.elements() {
        if e[l.ortho(a)] != w.frame.orthogonal(&e[a]) {
            report.violate("embedding", format!("e({0}') ≠ e({0})^⊥", lbl(a)), [lbl(a)]);
            return;
        }
        for b in l.elements() {
            if e[l.meet(a, b)] != e[a].intersection(&e[b]) {
                report.violate(
                    "embedding",
                    format!("e({0} ∧ {1}) ≠ e({0}) ∩ e({1})", lbl(a), lbl(b)),
                    [lbl(a), lbl(b)],
                );
                return;
            }
            if e[l.join(a, b)] != ops.join([&e[a], &e[b]]) {
                report.violate(
                    "embedding",
                    format!("e({0} ∨ {1}) ≠ e({0}) ∨ e({1})", lbl(a), lbl(b)),
                    [lbl(a), lbl(b)],
                );
                return;
            }
        }
    }
    if let (Some(_), true) = (l.exists_map(), w.frame.is_monadic()) {
        for a in l.elements() {
            let ea = l.exists(a).unwrap();
            if e[ea] != w.frame.quantify(&e[a]) {
                report.violate("embedding", format!("e(∃{0}) ≠ ∃e({0})", lbl(a)), [lbl(a)]);
                return;
            }
        }
    }
}

fn check_target_closed(w: &CompletionWitness, report: &mut ValidationReport) {
    if let Some(s) = w.target.iter().find(|s| !w.frame.is_closed(s)) {
        report.violate(
            "target-closure",
            format!(
                "target member {} is not bi-orthogonally closed",
                w.frame.set_label(s)
            ),
            [w.frame.set_label(s)],
        );
    }
}

/// Checks that `w` is the MacNeille completion of its source: embedding,
/// join- and meet-density of the image, and that the target's
/// orthocomplement and quantifier agree with their MacNeille extensions
/// `x ↦ ⋀{e(a') : e(a) ≤ x}` and `x ↦ ⋁{e(∃a) : e(a) ≤ x}`.
pub fn verify_macneille(w: &CompletionWitness) -> ValidationReport {
    let mut report = ValidationReport::new(format!("MacNeille completion of {}", w.source.name()));
    if w.kind != CompletionKind::MacNeille {
        report.violate(
            "kind",
            "witness is not a MacNeille witness",
            Vec::<String>::new(),
        );
        return report;
    }
    let l = &w.source;
    let ops = SetOps { w };
    let e = &w.embedding;
    check_target_closed(w, &mut report);
    if !check_embedding(w, &mut report) {
        return report;
    }

    for x in &w.target {
        let below: Vec<&BitSet> = e.iter().filter(|s| s.is_subset(x)).collect();
        if ops.join(below.iter().copied()) != *x {
            report.violate(
                "join-density",
                format!("{} is not a join of image elements", ops.label(x)),
                [ops.label(x)],
            );
            break;
        }
    }
    for x in &w.target {
        let above: Vec<&BitSet> = e.iter().filter(|s| x.is_subset(s)).collect();
        if ops.meet(above.iter().copied()) != *x {
            report.violate(
                "meet-density",
                format!("{} is not a meet of image elements", ops.label(x)),
                [ops.label(x)],
            );
            break;
        }
    }
    for x in &w.target {
        let formula = ops.meet(
            l.elements()
                .filter(|&a| e[a].is_subset(x))
                .map(|a| &e[l.ortho(a)]),
        );
        if formula != w.frame.orthogonal(x) {
            report.violate(
                "ortho-extension",
                format!(
                    "⋀{{e(a') : e(a) ≤ {0}}} = {1} ≠ {0}^⊥",
                    ops.label(x),
                    ops.label(&formula)
                ),
                [ops.label(x)],
            );
            break;
        }
    }
    if l.is_monadic() && w.frame.is_monadic() {
        for x in &w.target {
            let formula = ops.join(
                l.elements()
                    .filter(|&a| e[a].is_subset(x))
                    .map(|a| &e[l.exists(a).unwrap()]),
            );
            if formula != w.frame.quantify(x) {
                report.violate(
                    "exists-extension",
                    format!(
                        "⋁{{e(∃a) : e(a) ≤ {0}}} = {1} ≠ ∃{0}",
                        ops.label(x),
                        ops.label(&formula)
                    ),
                    [ops.label(x)],
                );
                break;
            }
        }
    }
    if report.is_valid() {
        let onto = w.target.iter().all(|x| e.contains(x));
        report.note(if onto {
            "embedding is onto: the finite lattice is its own MacNeille completion"
        } else {
            "embedding is not onto"
        });
    }
    report
}

/// Checks that `w` is the canonical completion of its source.
///
/// Density is checked literally through the closed elements `K` (meets of
/// image elements) and the open elements (joins of image elements).
/// Compactness is checked in its filter/ideal form over every pair of a filter
/// and an ideal, and over subset pairs `(S, T)`: exhaustively (grouped by the
/// filter and ideal they generate) up to `budget.subset_exhaustive_max`
/// elements, by seeded sampling beyond. The target's `′` and `∃` are compared
/// with their σ-extensions.
pub fn verify_canonical(w: &CompletionWitness, budget: &Budget) -> ValidationReport {
    let mut report = ValidationReport::new(format!("canonical completion of {}", w.source.name()));
    if w.kind != CompletionKind::Canonical {
        report.violate(
            "kind",
            "witness is not a canonical witness",
            Vec::<String>::new(),
        );
        return report;
    }
    let l = &w.source;
    let ops = SetOps { w };
    let e = &w.embedding;
    check_target_closed(w, &mut report);
    if !check_embedding(w, &mut report) {
        return report;
    }

    // K: closure of the image under intersection, including the empty meet.
    let mut closed_elems: Vec<BitSet> = vec![w.frame.full()];
    for img in e {
        let mut added = Vec::new();
        for k in &closed_elems {
            let m = k.intersection(img);
            if !closed_elems.contains(&m) && !added.contains(&m) {
                added.push(m);
            }
        }
        closed_elems.extend(added);
    }
    closed_elems.sort();
    // Open elements: closures of unions of image elements, including the empty join.
    let mut open_elems: Vec<BitSet> = vec![ops.join(std::iter::empty())];
    for img in e {
        let mut added = Vec::new();
        for o in &open_elems {
            let j = ops.join([o, img]);
            if !open_elems.contains(&j) && !added.contains(&j) {
                added.push(j);
            }
        }
        open_elems.extend(added);
    }
    report.note(format!(
        "{} closed elements, {} open elements",
        closed_elems.len(),
        open_elems.len()
    ));

    for x in &w.target {
        let joined = ops.join(closed_elems.iter().filter(|k| k.is_subset(x)));
        if joined != *x {
            report.violate(
                "density-join-of-meets",
                format!("{} is not a join of closed elements", ops.label(x)),
                [ops.label(x)],
            );
            break;
        }
    }
    for x in &w.target {
        let met = ops.meet(open_elems.iter().filter(|o| x.is_subset(o)));
        if met != *x {
            report.violate(
                "density-meet-of-joins",
                format!("{} is not a meet of open elements", ops.label(x)),
                [ops.label(x)],
            );
            break;
        }
    }

    check_compactness(w, budget, &mut report);

    for x in &w.target {
        let parts: Vec<BitSet> = closed_elems
            .iter()
            .filter(|k| k.is_subset(x))
            .map(|k| {
                ops.join(
                    l.elements()
                        .filter(|&a| k.is_subset(&e[a]))
                        .map(|a| &e[l.ortho(a)]),
                )
            })
            .collect();
        let formula = ops.meet(parts.iter());
        if formula != w.frame.orthogonal(x) {
            report.violate(
                "ortho-sigma",
                format!(
                    "σ-extension of ′ at {0} is {1}, target has {0}^⊥",
                    ops.label(x),
                    ops.label(&formula)
                ),
                [ops.label(x)],
            );
            break;
        }
    }
    if l.is_monadic() && w.frame.is_monadic() {
        for x in &w.target {
            let parts: Vec<BitSet> = closed_elems
                .iter()
                .filter(|k| k.is_subset(x))
                .map(|k| {
                    ops.meet(
                        l.elements()
                            .filter(|&a| k.is_subset(&e[a]))
                            .map(|a| &e[l.exists(a).unwrap()]),
                    )
                })
                .collect();
            let formula = ops.join(parts.iter());
            let actual = w.frame.quantify(x);
            if formula != actual {
                report.violate(
                    "exists-sigma",
                    format!(
                        "σ-extension of ∃ at {} is {}, target quantifier gives {}",
                        ops.label(x),
                        ops.label(&formula),
                        ops.label(&actual)
                    ),
                    [ops.label(x)],
                );
                break;
            }
        }
    }
    if report.is_valid() && w.target.iter().all(|x| e.contains(x)) {
        report.note("embedding is onto: on a finite lattice the canonical and MacNeille completions coincide with the lattice itself");
    }
    report
}

fn check_compactness(w: &CompletionWitness, budget: &Budget, report: &mut ValidationReport) {
    let l = &w.source;
    let ops = SetOps { w };
    let e = &w.embedding;
    let n = l.len();

    // Filter/ideal form: ⋀e[x] ≤ ⋁e[I] iff x ∩ I ≠ ∅, over all filters x and ideals I.
    let filters = enumerate_all_filters(l);
    let ideals: Vec<BitSet> = filters
        .iter()
        .map(|f| BitSet::from_indices(n, f.iter().map(|a| l.ortho(a))))
        .collect();
    let filter_meets: Vec<BitSet> = filters
        .iter()
        .map(|f| ops.meet(f.iter().map(|a| &e[a])))
        .collect();
    let ideal_joins: Vec<BitSet> = ideals
        .iter()
        .map(|i| ops.join(i.iter().map(|a| &e[a])))
        .collect();
    'outer: for (fi, f) in filters.iter().enumerate() {
        for (ii, i) in ideals.iter().enumerate() {
            let below = filter_meets[fi].is_subset(&ideal_joins[ii]);
            if below != f.intersects(i) {
                let lbl = |s: &BitSet| {
                    let v: Vec<&str> = s.iter().map(|a| l.label(a)).collect();
                    format!("{{{}}}", v.join(","))
                };
                report.violate(
                    "compactness-filter-ideal",
                    format!(
                        "filter {} and ideal {}: ⋀e ≤ ⋁e is {below} but they {} intersect",
                        lbl(f),
                        lbl(i),
                        if f.intersects(i) { "do" } else { "do not" }
                    ),
                    [lbl(f), lbl(i)],
                );
                break 'outer;
            }
        }
    }

    // Subset form. For finite L the finite sub-cover is (S, T) itself; what is
    // checked is that ⋀e[S] ≤ ⋁e[T] iff ⋀S ≤ ⋁T, the filter generated by S
    // meeting the ideal generated by T.
    let subset_label = |mask: &BitSet| {
        let v: Vec<&str> = mask.iter().map(|a| l.label(a)).collect();
        format!("{{{}}}", v.join(","))
    };
    if n <= budget.subset_exhaustive_max {
        // Exhaustive over S and T separately; each reduces to its generated filter/ideal.
        for mask in 0u64..(1u64 << n) {
            let s = BitSet::from_mask(n, mask);
            let m = l.meet_all(s.iter());
            let meet_img = ops.meet(s.iter().map(|a| &e[a]));
            if meet_img != e[m] {
                report.violate(
                    "compactness-subsets",
                    format!("⋀e[S] ≠ e(⋀S) for S = {}", subset_label(&s)),
                    [subset_label(&s)],
                );
                return;
            }
            let j = l.join_all(s.iter());
            let join_img = ops.join(s.iter().map(|a| &e[a]));
            if join_img != e[j] {
                report.violate(
                    "compactness-subsets",
                    format!("⋁e[T] ≠ e(⋁T) for T = {}", subset_label(&s)),
                    [subset_label(&s)],
                );
                return;
            }
        }
        // Pairs (S, T) now reduce to pairs (⋀S, ⋁T) of elements.
        for a in l.elements() {
            for b in l.elements() {
                if e[a].is_subset(&e[b]) != l.leq(a, b) {
                    report.violate(
                        "compactness-subsets",
                        format!(
                            "e({}) ≤ e({}) disagrees with the order",
                            l.label(a),
                            l.label(b)
                        ),
                        [l.label(a).to_string(), l.label(b).to_string()],
                    );
                    return;
                }
            }
        }
    } else {
        report.exhaustive = false;
        report.note(format!(
            "subset compactness sampled: {} pairs, seed {}",
            budget.sample_pairs, budget.seed
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        for _ in 0..budget.sample_pairs {
            let s = BitSet::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)));
            let t = BitSet::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)));
            let lhs = ops.meet(s.iter().map(|a| &e[a]));
            let rhs = ops.join(t.iter().map(|a| &e[a]));
            let generated_meet = l
                .up_set(l.meet_all(s.iter()))
                .intersects(&l.down_set(l.join_all(t.iter())));
            if lhs.is_subset(&rhs) != generated_meet {
                report.violate(
                    "compactness-subsets",
                    format!("S = {}, T = {}", subset_label(&s), subset_label(&t)),
                    [subset_label(&s), subset_label(&t)],
                );
                return;
            }
        }
    }
}
