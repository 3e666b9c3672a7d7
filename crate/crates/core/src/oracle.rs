//! Brute-force references. Each function enumerates the whole search space and
//! tests the defining conditions pointwise, sharing no search code with the
//! engine. Results are sorted so they compare directly with engine output.

use crate::bitset::{BitSet, Relation};
use crate::duality::OrthoSpace;
use crate::error::{Error, Result};
use crate::lattice::OrthoLattice;

/// Largest carrier the powerset oracles accept.
pub const POWERSET_MAX: usize = 16;

/// Largest `|target|^|source|` the raw map oracles accept.
pub const RAW_MAPS_MAX: usize = 1 << 20;

fn subsets(n: usize) -> Result<impl Iterator<Item = BitSet>> {
    if n > POWERSET_MAX {
        return Err(Error::budget(
            format!("powerset of {n} elements"),
            POWERSET_MAX,
        ));
    }
    Ok((0u64..1 << n).map(move |m| BitSet::from_mask(n, m)))
}

fn all_maps(source: usize, target: usize) -> Result<impl Iterator<Item = Vec<usize>>> {
    let total = (0..source).try_fold(1usize, |acc, _| {
        acc.checked_mul(target).filter(|&t| t <= RAW_MAPS_MAX)
    });
    let total =
        total.ok_or_else(|| Error::budget(format!("{target}^{source} maps"), RAW_MAPS_MAX))?;
    Ok((0..total).map(move |mut code| {
        (0..source)
            .map(|_| {
                let d = code % target;
                code /= target;
                d
            })
            .collect()
    }))
}

fn orthogonal(perp: &Relation, set: &BitSet) -> BitSet {
    let n = perp.size();
    BitSet::from_indices(
        n,
        (0..n).filter(|&x| set.iter().all(|y| perp.contains(x, y))),
    )
}

/// Every `S ⊆ X` with `S = S^⊥⊥`, by filtering the powerset.
pub fn powerset_closed_sets(perp: &Relation) -> Result<Vec<BitSet>> {
    let mut out: Vec<BitSet> = subsets(perp.size())?
        .filter(|s| orthogonal(perp, &orthogonal(perp, s)) == *s)
        .collect();
    out.sort();
    Ok(out)
}

/// `{↑a : a ≠ 0}`, the proper filters of a finite lattice.
pub fn principal_filters(l: &OrthoLattice) -> Vec<BitSet> {
    let n = l.len();
    let mut out: Vec<BitSet> = l
        .elements()
        .filter(|&a| a != l.bottom())
        .map(|a| BitSet::from_indices(n, l.elements().filter(|&b| l.leq(a, b))))
        .collect();
    out.sort();
    out
}

/// Every subset containing 0 and 1 and closed under ∧, ∨ and ′.
pub fn brute_sub_ortholattices(l: &OrthoLattice) -> Result<Vec<BitSet>> {
    let mut out: Vec<BitSet> = subsets(l.len())?
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
    Ok(out)
}

/// Every self-map satisfying the quantifier axioms: increasing, monotone,
/// idempotent, and `(∃a)'` fixed by ∃.
pub fn raw_quantifiers(l: &OrthoLattice) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = all_maps(l.len(), l.len())?
        .filter(|e| {
            l.elements().all(|a| {
                l.leq(a, e[a])
                    && e[e[a]] == e[a]
                    && e[l.ortho(e[a])] == l.ortho(e[a])
                    && l.elements().all(|b| !l.leq(a, b) || l.leq(e[a], e[b]))
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Every map preserving 0, 1, ′, ∧, ∨ (and ∃ when both sides carry one).
pub fn raw_homomorphisms(source: &OrthoLattice, target: &OrthoLattice) -> Result<Vec<Vec<usize>>> {
    let quantifiers = source.exists_map().zip(target.exists_map());
    let mut out: Vec<Vec<usize>> = all_maps(source.len(), target.len())?
        .filter(|f| {
            f[source.bottom()] == target.bottom()
                && f[source.top()] == target.top()
                && source.elements().all(|a| {
                    f[source.ortho(a)] == target.ortho(f[a])
                        && quantifiers.is_none_or(|(se, te)| f[se[a]] == te[f[a]])
                        && source.elements().all(|b| {
                            f[source.meet(a, b)] == target.meet(f[a], f[b])
                                && f[source.join(a, b)] == target.join(f[a], f[b])
                        })
                })
        })
        .collect();
    out.sort();
    Ok(out)
}

fn preimage(map: &[usize], set: &BitSet) -> BitSet {
    BitSet::from_indices(map.len(), (0..map.len()).filter(|&p| set.contains(map[p])))
}

fn image(rel: &Relation, set: &BitSet) -> BitSet {
    let n = rel.size();
    BitSet::from_indices(
        n,
        (0..n).filter(|&y| set.iter().any(|x| rel.contains(x, y))),
    )
}

/// Every map satisfying the OS-morphism conditions, with closed sets and
/// biorthogonals recomputed from the raw ⊥ relations.
pub fn raw_space_morphisms(source: &OrthoSpace, target: &OrthoSpace) -> Result<Vec<Vec<usize>>> {
    let (sp, tp) = (source.frame().perp(), target.frame().perp());
    let (m, n) = (sp.size(), tp.size());
    let hull: Vec<BitSet> = (0..n)
        .map(|x| orthogonal(tp, &orthogonal(tp, &BitSet::singleton(n, x))))
        .collect();
    let relations = source.frame().relation().zip(target.frame().relation());
    let target_closed = match relations {
        Some(_) => powerset_closed_sets(tp)?,
        None => Vec::new(),
    };
    let mut out: Vec<Vec<usize>> = all_maps(m, n)?
        .filter(|f| {
            let reflects =
                (0..m).all(|p| (0..m).all(|q| !tp.contains(f[p], f[q]) || sp.contains(p, q)));
            let back = (0..n).all(|x| {
                (0..m).all(|p| {
                    tp.contains(x, f[p])
                        || (0..m).any(|q| !sp.contains(q, p) && hull[x].contains(f[q]))
                })
            });
            let monadic = relations.is_none_or(|(rs, rt)| {
                target_closed
                    .iter()
                    .all(|u| image(rs, &preimage(f, u)) == preimage(f, &image(rt, u)))
            });
            reflects && back && monadic
        })
        .collect();
    out.sort();
    Ok(out)
}
