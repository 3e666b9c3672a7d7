//! Quantifiers on finite ortholattices and their correspondence with
//! sub-ortholattices: a quantifier is determined by its set of closed elements,
//! and every sub-ortholattice is the closed-element set of exactly one quantifier.

use std::collections::{BTreeSet, VecDeque};

use super::OrthoLattice;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Checks `exists` against the quantifier axioms on `lattice`.
///
/// Axioms: increasing, monotone, idempotent, and `(∃a)' = ∃((∃a)')`. The derived
/// consequences `∃0 = 0` and "closed elements form a sub-ortholattice" are
/// asserted as well. Join preservation is recorded as a note, never required.
pub fn check_quantifier(lattice: &OrthoLattice, exists: &[usize]) -> Result<ValidationReport> {
    let n = lattice.len();
    if exists.len() != n {
        return Err(Error::Structural(format!(
            "exists map defined on {} of {n} elements",
            exists.len()
        )));
    }
    if let Some(&b) = exists.iter().find(|&&b| b >= n) {
        return Err(Error::Structural(format!(
            "exists value index {b} out of range"
        )));
    }
    let lbl = |a: usize| lattice.label(a).to_string();
    let mut report = ValidationReport::new(format!("quantifier on {}", lattice.name()));

    if let Some(a) = lattice.elements().find(|&a| !lattice.leq(a, exists[a])) {
        report.violate(
            "increasing",
            format!("{} ≰ ∃{} = {}", lbl(a), lbl(a), lbl(exists[a])),
            [lbl(a)],
        );
    }
    if let Some((a, b)) = lattice
        .order()
        .pairs()
        .find(|&(a, b)| !lattice.leq(exists[a], exists[b]))
    {
        report.violate(
            "monotone",
            format!("{} ≤ {} but ∃{} ≰ ∃{}", lbl(a), lbl(b), lbl(a), lbl(b)),
            [lbl(a), lbl(b)],
        );
    }
    if let Some(a) = lattice.elements().find(|&a| exists[exists[a]] != exists[a]) {
        report.violate(
            "idempotent",
            format!(
                "∃∃{} = {} ≠ {} = ∃{}",
                lbl(a),
                lbl(exists[exists[a]]),
                lbl(exists[a]),
                lbl(a)
            ),
            [lbl(a)],
        );
    }
    if let Some(a) = lattice.elements().find(|&a| {
        let c = lattice.ortho(exists[a]);
        exists[c] != c
    }) {
        let c = lattice.ortho(exists[a]);
        report.violate(
            "closed-orthocomplement",
            format!(
                "(∃{})' = {} but ∃{} = {}",
                lbl(a),
                lbl(c),
                lbl(c),
                lbl(exists[c])
            ),
            [lbl(a)],
        );
    }

    let bottom = lattice.bottom();
    if exists[bottom] != bottom {
        report.violate(
            "derived/exists-bottom",
            format!("∃{} = {}", lbl(bottom), lbl(exists[bottom])),
            [lbl(bottom)],
        );
    }
    let closed = BitSet::from_indices(n, lattice.elements().filter(|&a| exists[a] == a));
    if let Some(w) = sub_ortholattice_violation(lattice, &closed) {
        report.violate("derived/closed-sub-ortholattice", w.0, w.1);
    }

    if report.is_valid() {
        let joins_preserved = lattice.elements().all(|a| {
            lattice
                .elements()
                .all(|b| exists[lattice.join(a, b)] == lattice.join(exists[a], exists[b]))
        });
        report.note(if joins_preserved {
            "∃(a ∨ b) = ∃a ∨ ∃b holds for all a, b"
        } else {
            "∃(a ∨ b) = ∃a ∨ ∃b fails for some a, b"
        });
    }
    Ok(report)
}

/// Validates the quantifier carried by `lattice`.
pub fn validate_quantifier(lattice: &OrthoLattice) -> Result<ValidationReport> {
    let exists = lattice
        .exists_map()
        .ok_or_else(|| Error::Structural(format!("{} carries no quantifier", lattice.name())))?;
    check_quantifier(lattice, exists)
}

/// First reason `set` fails to be a sub-ortholattice, as (message, witness labels).
pub fn sub_ortholattice_violation(
    lattice: &OrthoLattice,
    set: &BitSet,
) -> Option<(String, Vec<String>)> {
    let lbl = |a: usize| lattice.label(a).to_string();
    for bound in [lattice.bottom(), lattice.top()] {
        if !set.contains(bound) {
            return Some((format!("missing bound {}", lbl(bound)), vec![lbl(bound)]));
        }
    }
    for a in set.iter() {
        if !set.contains(lattice.ortho(a)) {
            return Some((
                format!("{}' = {} not in set", lbl(a), lbl(lattice.ortho(a))),
                vec![lbl(a)],
            ));
        }
        for b in set.iter() {
            let m = lattice.meet(a, b);
            if !set.contains(m) {
                return Some((
                    format!("{} ∧ {} = {} not in set", lbl(a), lbl(b), lbl(m)),
                    vec![lbl(a), lbl(b)],
                ));
            }
            let j = lattice.join(a, b);
            if !set.contains(j) {
                return Some((
                    format!("{} ∨ {} = {} not in set", lbl(a), lbl(b), lbl(j)),
                    vec![lbl(a), lbl(b)],
                ));
            }
        }
    }
    None
}

/// Smallest sub-ortholattice containing `seed`.
pub fn generated_sub_ortholattice(lattice: &OrthoLattice, seed: &BitSet) -> BitSet {
    let mut set = seed.clone();
    set.insert(lattice.bottom());
    set.insert(lattice.top());
    loop {
        let mut next = set.clone();
        for a in set.iter() {
            next.insert(lattice.ortho(a));
            for b in set.iter() {
                next.insert(lattice.meet(a, b));
                next.insert(lattice.join(a, b));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// All sub-ortholattices, enumerated as the closure system of generated
/// subalgebras (breadth-first from `{0, 1}`), sorted.
pub fn sub_ortholattices(lattice: &OrthoLattice) -> Vec<BitSet> {
    let n = lattice.len();
    let start = generated_sub_ortholattice(lattice, &BitSet::empty(n));
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for e in lattice.elements().filter(|&e| !s.contains(e)) {
            let mut seed = s.clone();
            seed.insert(e);
            let t = generated_sub_ortholattice(lattice, &seed);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// The quantifier whose closed elements are `sub`: `∃a` is the least member of `sub` above `a`.
pub fn quantifier_from_subalgebra(lattice: &OrthoLattice, sub: &BitSet) -> Vec<usize> {
    lattice
        .elements()
        .map(|a| lattice.meet_all(sub.iter().filter(|&c| lattice.leq(a, c))))
        .collect()
}

/// One quantifier per sub-ortholattice, paired with that sub-ortholattice.
pub fn quantifiers_from_subalgebras(lattice: &OrthoLattice) -> Vec<(BitSet, Vec<usize>)> {
    sub_ortholattices(lattice)
        .into_iter()
        .map(|s| {
            let q = quantifier_from_subalgebra(lattice, &s);
            (s, q)
        })
        .collect()
}

/// `{a : ∃a = a}` for the lattice's quantifier, verified to be a sub-ortholattice.
pub fn closed_elements(lattice: &OrthoLattice) -> Result<BitSet> {
    let exists = lattice
        .exists_map()
        .ok_or_else(|| Error::Structural(format!("{} carries no quantifier", lattice.name())))?;
    let closed = BitSet::from_indices(
        lattice.len(),
        lattice.elements().filter(|&a| exists[a] == a),
    );
    if let Some((msg, _)) = sub_ortholattice_violation(lattice, &closed) {
        return Err(Error::Inconsistency(format!(
            "closed elements are not a sub-ortholattice: {msg}"
        )));
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean, mo};

    /// Oracle: filter every subset by closure under ∧, ∨, ′ and the bounds.
    fn brute_sub_ols(l: &OrthoLattice) -> Vec<BitSet> {
        let n = l.len();
        let mut out: Vec<BitSet> = (0u64..1 << n)
            .map(|m| BitSet::from_mask(n, m))
            .filter(|s| {
                s.contains(l.bottom())
                    && s.contains(l.top())
                    && s.iter().all(|a| {
                        s.contains(l.ortho(a))
                            && s.iter()
                                .all(|b| s.contains(l.meet(a, b)) && s.contains(l.join(a, b)))
                    })
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn boolean_square_has_two_quantifiers() {
        let l = boolean(2).unwrap();
        let qs = quantifiers_from_subalgebras(&l);
        assert_eq!(qs.len(), 2);
        assert_eq!(
            qs.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>(),
            brute_sub_ols(&l)
        );
        // collapse and identity
        let collapse: Vec<usize> = l
            .elements()
            .map(|a| if a == l.bottom() { a } else { l.top() })
            .collect();
        let identity: Vec<usize> = l.elements().collect();
        assert!(qs.iter().any(|(_, q)| *q == collapse));
        assert!(qs.iter().any(|(_, q)| *q == identity));
    }

    #[test]
    fn mo2_has_four_quantifiers() {
        let l = mo(2).unwrap();
        let subs = sub_ortholattices(&l);
        assert_eq!(subs, brute_sub_ols(&l));
        assert_eq!(subs.len(), 4);
        for (s, q) in quantifiers_from_subalgebras(&l) {
            let r = check_quantifier(&l, &q).unwrap();
            assert!(r.is_valid(), "{r:?}");
            let with = l.clone().with_quantifier(q).unwrap();
            assert_eq!(closed_elements(&with).unwrap(), s);
        }
    }

    #[test]
    fn quantifier_examples() {
        let l = boolean(2).unwrap();
        let id: Vec<usize> = l.elements().collect();
        assert!(check_quantifier(&l, &id).unwrap().is_valid());

        let m = mo(2).unwrap();
        let a = m.index_of("a").unwrap();
        let b = m.index_of("b").unwrap();
        let collapse: Vec<usize> = m
            .elements()
            .map(|x| if x == m.bottom() { x } else { m.top() })
            .collect();
        let r = check_quantifier(&m, &collapse).unwrap();
        assert!(r.is_valid());
        let with = m.clone().with_quantifier(collapse).unwrap();
        assert_eq!(
            closed_elements(&with).unwrap().to_vec(),
            vec![m.bottom(), m.top()]
        );

        let mut bad: Vec<usize> = m.elements().collect();
        bad[a] = b;
        let r = check_quantifier(&m, &bad).unwrap();
        assert!(r.has_violation("increasing"));
        assert!(r.violations[0].message.starts_with("a ≰ ∃a"));
    }

    #[test]
    fn block_quantifier_closed_elements() {
        let m = mo(2).unwrap();
        let a = m.index_of("a").unwrap();
        let block = BitSet::from_indices(m.len(), [m.bottom(), a, m.ortho(a), m.top()]);
        let q = quantifier_from_subalgebra(&m, &block);
        let with = m.clone().with_quantifier(q).unwrap();
        // fixpoint scan
        let fix: Vec<usize> = with
            .elements()
            .filter(|&x| with.exists(x) == Some(x))
            .collect();
        assert_eq!(closed_elements(&with).unwrap().to_vec(), fix);
        assert_eq!(fix.len(), 4);
    }

    #[test]
    fn missing_quantifier_is_an_error() {
        let l = boolean(2).unwrap();
        assert!(validate_quantifier(&l).is_err());
        assert!(closed_elements(&l).is_err());
    }
}
