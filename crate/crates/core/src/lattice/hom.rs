use serde::{Deserialize, Serialize};

use super::OrthoLattice;
use crate::error::{Error, Result};

/// A map between ortholattice carriers, `map[a]` being the image of element `a`.
///
/// Source and target are passed alongside whenever the map is checked or composed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeHom {
    pub map: Vec<usize>,
}

impl LatticeHom {
    pub fn new(map: Vec<usize>) -> Self {
        LatticeHom { map }
    }

    pub fn identity(n: usize) -> Self {
        LatticeHom {
            map: (0..n).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LatticeHom) -> LatticeHom {
        LatticeHom {
            map: self.map.iter().map(|&b| other.map[b]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.map.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.map.len()
    }
}

/// First violated preservation equation of `map: source → target`, or `None`
/// when the map is a homomorphism (monadic when both sides carry quantifiers).
pub fn homomorphism_violation(
    source: &OrthoLattice,
    target: &OrthoLattice,
    map: &[usize],
) -> Result<Option<String>> {
    if map.len() != source.len() {
        return Err(Error::Structural(format!(
            "map defined on {} of {} elements",
            map.len(),
            source.len()
        )));
    }
    if map.iter().any(|&b| b >= target.len()) {
        return Err(Error::Structural("map value out of range".into()));
    }
    let s = |a: usize| source.label(a);
    let t = |b: usize| target.label(b);
    let f = |a: usize| map[a];

    if f(source.bottom()) != target.bottom() {
        return Ok(Some(format!(
            "f({}) ≠ {}",
            s(source.bottom()),
            t(target.bottom())
        )));
    }
    if f(source.top()) != target.top() {
        return Ok(Some(format!(
            "f({}) ≠ {}",
            s(source.top()),
            t(target.top())
        )));
    }
    for a in source.elements() {
        if f(source.ortho(a)) != target.ortho(f(a)) {
            return Ok(Some(format!("f({}') ≠ f({})'", s(a), s(a))));
        }
    }
    for a in source.elements() {
        for b in source.elements() {
            if f(source.meet(a, b)) != target.meet(f(a), f(b)) {
                return Ok(Some(format!(
                    "f({} ∧ {}) ≠ f({}) ∧ f({})",
                    s(a),
                    s(b),
                    s(a),
                    s(b)
                )));
            }
            if f(source.join(a, b)) != target.join(f(a), f(b)) {
                return Ok(Some(format!(
                    "f({} ∨ {}) ≠ f({}) ∨ f({})",
                    s(a),
                    s(b),
                    s(a),
                    s(b)
                )));
            }
        }
    }
    if let (Some(se), Some(te)) = (source.exists_map(), target.exists_map()) {
        for a in source.elements() {
            if f(se[a]) != te[f(a)] {
                return Ok(Some(format!("f(∃{}) ≠ ∃f({})", s(a), s(a))));
            }
        }
    }
    Ok(None)
}

pub fn is_homomorphism(source: &OrthoLattice, target: &OrthoLattice, map: &[usize]) -> bool {
    matches!(homomorphism_violation(source, target, map), Ok(None))
}

struct Search<'a> {
    source: &'a OrthoLattice,
    target: &'a OrthoLattice,
    monadic: bool,
    order: Vec<usize>,
    budget: usize,
    spent: usize,
    found: Vec<LatticeHom>,
}

impl Search<'_> {
    /// Assigns `a ↦ v` and every value it forces; false on conflict.
    fn assign(&self, partial: &mut [Option<usize>], a: usize, v: usize) -> bool {
        let (src, tgt) = (self.source, self.target);
        let mut queue = vec![(a, v)];
        while let Some((a, v)) = queue.pop() {
            match partial[a] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {}
            }
            partial[a] = Some(v);
            queue.push((src.ortho(a), tgt.ortho(v)));
            if self.monadic {
                queue.push((src.exists(a).unwrap(), tgt.exists(v).unwrap()));
            }
            for b in src.elements() {
                if let Some(w) = partial[b] {
                    queue.push((src.meet(a, b), tgt.meet(v, w)));
                    queue.push((src.join(a, b), tgt.join(v, w)));
                }
            }
        }
        true
    }

    fn run(&mut self, partial: Vec<Option<usize>>) -> Result<()> {
        let Some(&next) = self.order.iter().find(|&&a| partial[a].is_none()) else {
            let map: Vec<usize> = partial.into_iter().map(Option::unwrap).collect();
            debug_assert!(is_homomorphism(self.source, self.target, &map));
            self.found.push(LatticeHom { map });
            return Ok(());
        };
        for v in self.target.elements() {
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::budget(
                    format!(
                        "homomorphism search {} → {}",
                        self.source.name(),
                        self.target.name()
                    ),
                    self.budget,
                ));
            }
            let mut p = partial.clone();
            if self.assign(&mut p, next, v) {
                self.run(p)?;
            }
        }
        Ok(())
    }
}

/// Every (monadic, when both sides are monadic) ortholattice homomorphism
/// `source → target`, sorted.
///
/// Backtracks over join-irreducibles first, propagating the values forced by
/// the preservation equations. `budget` bounds the number of branch choices
/// tried; exceeding it is an error, never a truncated result.
pub fn enumerate_homomorphisms(
    source: &OrthoLattice,
    target: &OrthoLattice,
    budget: usize,
) -> Result<Vec<LatticeHom>> {
    let mut order = source.join_irreducibles();
    let rest: Vec<usize> = source.elements().filter(|a| !order.contains(a)).collect();
    order.extend(rest);
    let mut search = Search {
        source,
        target,
        monadic: source.is_monadic() && target.is_monadic(),
        order,
        budget,
        spent: 0,
        found: Vec::new(),
    };
    let mut start = vec![None; source.len()];
    let ok = search.assign(&mut start, source.bottom(), target.bottom())
        && search.assign(&mut start, source.top(), target.top());
    if ok {
        search.run(start)?;
    }
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// A bijective homomorphism `a → b`, if one exists.
pub fn find_isomorphism(
    a: &OrthoLattice,
    b: &OrthoLattice,
    budget: usize,
) -> Result<Option<LatticeHom>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    Ok(enumerate_homomorphisms(a, b, budget)?
        .into_iter()
        .find(LatticeHom::is_injective))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean, chain, mo};

    #[test]
    fn identity_on_mo2() {
        let m = mo(2).unwrap();
        assert!(is_homomorphism(&m, &m, &LatticeHom::identity(6).map));
    }

    #[test]
    fn constant_top_fails_at_bottom() {
        let l = boolean(2).unwrap();
        let map = vec![l.top(); 4];
        let w = homomorphism_violation(&l, &l, &map).unwrap().unwrap();
        assert_eq!(w, "f(0) ≠ 0");
    }

    #[test]
    fn boolean_square_embeds_in_mo2() {
        let l = boolean(2).unwrap();
        let m = mo(2).unwrap();
        let img = |x: &str| m.index_of(x).unwrap();
        let map: Vec<usize> = ["0", "a", "b", "1"]
            .iter()
            .map(|x| match *x {
                "b" => img("a'"),
                y => img(y),
            })
            .collect();
        assert_eq!(l.index_of("b"), Some(2));
        // check all 4·4 meet/join pairs by hand
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(map[l.meet(a, b)], m.meet(map[a], map[b]));
                assert_eq!(map[l.join(a, b)], m.join(map[a], map[b]));
            }
        }
        assert!(is_homomorphism(&l, &m, &map));
    }

    fn raw(src: &OrthoLattice, tgt: &OrthoLattice) -> Vec<LatticeHom> {
        let (n, m) = (src.len(), tgt.len());
        let total = m.pow(n as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut map = vec![0; n];
            for slot in map.iter_mut() {
                *slot = code % m;
                code /= m;
            }
            if is_homomorphism(src, tgt, &map) {
                out.push(LatticeHom { map });
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hom_counts_match_raw_filter() {
        let b2 = boolean(2).unwrap();
        let homs = enumerate_homomorphisms(&b2, &b2, 4096).unwrap();
        assert_eq!(homs, raw(&b2, &b2));
        // identity, the swap a ↔ b, and the two maps a ↦ 0 / a ↦ 1 onto {0, 1}
        assert_eq!(homs.len(), 4);
        assert_eq!(homs.iter().filter(|h| h.is_injective()).count(), 2);

        let m = mo(2).unwrap();
        let two = chain(2).unwrap();
        let homs = enumerate_homomorphisms(&m, &two, 4096).unwrap();
        assert_eq!(homs, raw(&m, &two));
        assert_eq!(homs.len(), 0);
    }

    #[test]
    fn budget_is_reported() {
        let m = mo(3).unwrap();
        let err = enumerate_homomorphisms(&m, &m, 3).unwrap_err();
        assert!(matches!(err, Error::Budget { limit: 3, .. }));
    }
}
