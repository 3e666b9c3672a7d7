use serde::{Deserialize, Serialize};

use super::OrthoSpace;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A map between orthospace carriers, `map[p]` being the image of point `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceMorphism {
    pub map: Vec<usize>,
}

impl SpaceMorphism {
    pub fn new(map: Vec<usize>) -> Self {
        SpaceMorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        SpaceMorphism {
            map: (0..n).collect(),
        }
    }

    pub fn apply(&self, p: usize) -> usize {
        self.map[p]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SpaceMorphism) -> SpaceMorphism {
        SpaceMorphism {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    /// `φ⁻¹[U]` as a subset of a carrier of `source_len` points.
    pub fn preimage(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.map.len(),
            (0..self.map.len()).filter(|&p| set.contains(self.map[p])),
        )
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.map.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.map.len()
    }
}

/// Checks `φ: source → target`:
/// (1) `φ(p) ⊥ φ(q)` implies `p ⊥ q`;
/// (2) `x ⊥̸ φ(p)` implies some `q ⊥̸ p` with `φ(q) ∈ {x}^⊥⊥`;
/// and, when both spaces are monadic, `R[φ⁻¹[U]] = φ⁻¹[R[U]]` for `U ∈ C(target)`.
pub fn validate_os_morphism(
    source: &OrthoSpace,
    target: &OrthoSpace,
    map: &[usize],
) -> Result<ValidationReport> {
    if map.len() != source.len() {
        return Err(Error::Structural(format!(
            "map defined on {} of {} points",
            map.len(),
            source.len()
        )));
    }
    if map.iter().any(|&x| x >= target.len()) {
        return Err(Error::Structural("map value out of range".into()));
    }
    let (sf, tf) = (source.frame(), target.frame());
    let s = |p: usize| source.label(p).to_string();
    let t = |x: usize| target.label(x).to_string();
    let mut report =
        ValidationReport::new(format!("OS morphism {} → {}", source.name(), target.name()));

    'one: for p in source.points() {
        for q in source.points() {
            if tf.is_perp(map[p], map[q]) && !sf.is_perp(p, q) {
                report.violate(
                    "reflects-orthogonality",
                    format!("φ({}) ⊥ φ({}) but {} ⊥̸ {}", s(p), s(q), s(p), s(q)),
                    [s(p), s(q)],
                );
                break 'one;
            }
        }
    }

    let closures: Vec<BitSet> = target
        .points()
        .map(|x| tf.biorthogonal(&tf.singleton(x)))
        .collect();
    'two: for x in target.points() {
        for p in source.points() {
            if tf.is_perp(x, map[p]) {
                continue;
            }
            let found = source
                .points()
                .any(|q| !sf.is_perp(q, p) && closures[x].contains(map[q]));
            if !found {
                report.violate(
                    "back-condition",
                    format!(
                        "{} ⊥̸ φ({}) but no q ⊥̸ {} has φ(q) ∈ {{{}}}^⊥⊥",
                        t(x),
                        s(p),
                        s(p),
                        t(x)
                    ),
                    [t(x), s(p)],
                );
                break 'two;
            }
        }
    }

    if let (Some(rs), Some(rt)) = (sf.relation(), tf.relation()) {
        let phi = SpaceMorphism::new(map.to_vec());
        for u in &target.closed().sets {
            let lhs = rs.image(&phi.preimage(u));
            let rhs = phi.preimage(&rt.image(u));
            if lhs != rhs {
                report.violate(
                    "monadic-preimage",
                    format!("R[φ⁻¹[{0}]] ≠ φ⁻¹[R[{0}]]", tf.set_label(u)),
                    [tf.set_label(u)],
                );
                break;
            }
        }
    }
    Ok(report)
}

pub fn is_os_morphism(source: &OrthoSpace, target: &OrthoSpace, map: &[usize]) -> bool {
    matches!(validate_os_morphism(source, target, map), Ok(r) if r.is_valid())
}

/// Every (monadic, when both are monadic) OS morphism `source → target`, sorted.
///
/// Backtracks over point images, pruning partial maps by condition (1).
/// `budget` bounds the number of branch choices; exceeding it is an error.
pub fn enumerate_space_morphisms(
    source: &OrthoSpace,
    target: &OrthoSpace,
    budget: usize,
) -> Result<Vec<SpaceMorphism>> {
    let mut found = Vec::new();
    let mut partial: Vec<usize> = Vec::with_capacity(source.len());
    let mut spent = 0usize;

    fn go(
        source: &OrthoSpace,
        target: &OrthoSpace,
        partial: &mut Vec<usize>,
        spent: &mut usize,
        budget: usize,
        found: &mut Vec<SpaceMorphism>,
    ) -> Result<()> {
        let (sf, tf) = (source.frame(), target.frame());
        let p = partial.len();
        if p == source.len() {
            if is_os_morphism(source, target, partial) {
                found.push(SpaceMorphism::new(partial.clone()));
            }
            return Ok(());
        }
        for x in target.points() {
            *spent += 1;
            if *spent > budget {
                return Err(Error::budget(
                    format!("OS morphism search {} → {}", source.name(), target.name()),
                    budget,
                ));
            }
            if tf.is_perp(x, x) {
                continue;
            }
            let consistent = (0..p).all(|q| !tf.is_perp(x, partial[q]) || sf.is_perp(p, q));
            if consistent {
                partial.push(x);
                go(source, target, partial, spent, budget, found)?;
                partial.pop();
            }
        }
        Ok(())
    }

    go(source, target, &mut partial, &mut spent, budget, &mut found)?;
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{one_point_space_frame, two_point_frame};

    fn space(f: crate::frames::OrthoFrame) -> OrthoSpace {
        OrthoSpace::new(f, None, 64).unwrap()
    }

    fn raw(source: &OrthoSpace, target: &OrthoSpace) -> Vec<SpaceMorphism> {
        let (n, m) = (source.len(), target.len());
        let mut out = Vec::new();
        for mut code in 0..m.pow(n as u32) {
            let mut map = vec![0; n];
            for slot in map.iter_mut() {
                *slot = code % m;
                code /= m;
            }
            // condition (2) by direct quantifier evaluation
            let tf = target.frame();
            let sf = source.frame();
            let c1 =
                (0..n).all(|p| (0..n).all(|q| !tf.is_perp(map[p], map[q]) || sf.is_perp(p, q)));
            let c2 = (0..m).all(|x| {
                (0..n).all(|p| {
                    tf.is_perp(x, map[p])
                        || (0..n).any(|q| {
                            !sf.is_perp(q, p) && tf.biorthogonal(&tf.singleton(x)).contains(map[q])
                        })
                })
            });
            if c1 && c2 {
                out.push(SpaceMorphism::new(map));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn identity_is_a_morphism() {
        let two = space(two_point_frame());
        assert!(is_os_morphism(&two, &two, &[0, 1]));
    }

    #[test]
    fn constant_map_to_one_point() {
        let two = space(two_point_frame());
        let one = space(one_point_space_frame());
        let r = validate_os_morphism(&two, &one, &[0, 0]).unwrap();
        let expected = raw(&two, &one).contains(&SpaceMorphism::new(vec![0, 0]));
        assert_eq!(r.is_valid(), expected);
        // p ⊥̸ φ(x) for the only point; q = x itself works
        assert!(r.is_valid());
    }

    #[test]
    fn enumeration_matches_raw() {
        let two = space(two_point_frame());
        let one = space(one_point_space_frame());
        for (a, b) in [(&two, &two), (&two, &one), (&one, &two), (&one, &one)] {
            assert_eq!(enumerate_space_morphisms(a, b, 4096).unwrap(), raw(a, b));
        }
        assert!(enumerate_space_morphisms(&two, &two, 4096)
            .unwrap()
            .contains(&SpaceMorphism::identity(2)));
    }

    #[test]
    fn budget_is_reported() {
        let two = space(two_point_frame());
        assert!(matches!(
            enumerate_space_morphisms(&two, &two, 1),
            Err(Error::Budget { .. })
        ));
    }
}
