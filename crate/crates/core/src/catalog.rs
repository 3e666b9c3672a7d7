//! Instance generators: Boolean algebras, `MOn`, the hexagon `O6`, short
//! chains, horizontal sums and products, plus quantifier selectors and the
//! small fixture frames used throughout the tests.

use std::fmt;

use crate::bitset::{BitSet, Relation};
use crate::error::{Error, Result};
use crate::frames::OrthoFrame;
use crate::lattice::{
    quantifier_from_subalgebra, quantifiers_from_subalgebras, sub_ortholattices, LatticeData,
    OrthoLattice,
};

/// Largest lattice any generator will build.
pub const MAX_ELEMENTS: usize = 64;

fn letter(i: usize) -> String {
    let letters = "abcdefghijklmnopqrstuvwxyz";
    if i < 26 {
        letters[i..i + 1].to_string()
    } else {
        format!("e{i}")
    }
}

fn labels(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn bound(what: &str, size: usize) -> Result<()> {
    if size > MAX_ELEMENTS {
        return Err(Error::budget(
            format!("{what} with {size} elements"),
            MAX_ELEMENTS,
        ));
    }
    Ok(())
}

fn build(data: LatticeData) -> Result<OrthoLattice> {
    OrthoLattice::new(data).map_err(|e| match e {
        Error::Invalid(r) => Error::Inconsistency(format!(
            "generator produced an invalid lattice: {}",
            r.summary()
        )),
        other => other,
    })
}

/// The Boolean algebra `2^n`; element `i` is the subset of atoms with bit mask `i`.
pub fn boolean(n: usize) -> Result<OrthoLattice> {
    if n == 0 {
        return Err(Error::Degenerate(
            "boolean(0) is the trivial lattice; use chain(1)".into(),
        ));
    }
    if n > 6 {
        return Err(Error::budget(format!("boolean({n})"), MAX_ELEMENTS));
    }
    let size = 1usize << n;
    let full = size - 1;
    let names = (0..size)
        .map(|m| match m {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => (0..n).filter(|&i| m >> i & 1 == 1).map(letter).collect(),
        })
        .collect();
    let leq = Relation::from_fn(size, |a, b| a & !b == 0);
    let ortho = (0..size).map(|m| full & !m).collect();
    build(LatticeData {
        name: format!("boolean({n})"),
        labels: names,
        leq,
        ortho,
        exists: None,
    })
}

/// `MOn`: `0`, then `a, a', b, b', ...`, then `1`, with the `2n` middle elements pairwise incomparable.
pub fn mo(n: usize) -> Result<OrthoLattice> {
    if n == 0 {
        return Err(Error::Degenerate(
            "mo(0) is the 2-element chain; use chain(2)".into(),
        ));
    }
    let size = 2 * n + 2;
    bound(&format!("mo({n})"), size)?;
    let top = size - 1;
    let mut names = vec!["0".to_string()];
    for i in 0..n {
        names.push(letter(i));
        names.push(format!("{}'", letter(i)));
    }
    names.push("1".into());
    let mut covers = Vec::new();
    for x in 1..top {
        covers.push((0, x));
        covers.push((x, top));
    }
    let ortho = (0..size)
        .map(|x| match x {
            0 => top,
            x if x == top => 0,
            x if x % 2 == 1 => x + 1,
            x => x - 1,
        })
        .collect();
    build(LatticeData::from_covers(
        format!("mo({n})"),
        names,
        &covers,
        ortho,
    ))
}

/// The chains that are ortholattices: the trivial lattice and `0 < 1`.
pub fn chain(n: usize) -> Result<OrthoLattice> {
    match n {
        1 => build(LatticeData::from_covers(
            "chain(1)",
            labels(&["0"]),
            &[],
            vec![0],
        )),
        2 => build(LatticeData::from_covers(
            "chain(2)",
            labels(&["0", "1"]),
            &[(0, 1)],
            vec![1, 0],
        )),
        _ => Err(Error::Structural(format!(
            "chain({n}) has no orthocomplementation; only chain(1) and chain(2) exist"
        ))),
    }
}

/// The hexagon: `0 < a < b' < 1` and `0 < b < a' < 1`.
pub fn o6() -> Result<OrthoLattice> {
    let names = labels(&["0", "a", "b", "a'", "b'", "1"]);
    let covers = [(0, 1), (1, 4), (4, 5), (0, 2), (2, 3), (3, 5)];
    build(LatticeData::from_covers(
        "o6",
        names,
        &covers,
        vec![5, 3, 4, 1, 2, 0],
    ))
}

/// Glues two nontrivial ortholattices at their bounds.
pub fn horizontal_sum(left: &OrthoLattice, right: &OrthoLattice) -> Result<OrthoLattice> {
    if left.len() < 2 || right.len() < 2 {
        return Err(Error::Degenerate(
            "horizontal sum needs two nontrivial summands".into(),
        ));
    }
    let mid = |l: &OrthoLattice| -> Vec<usize> {
        l.elements()
            .filter(|&a| a != l.bottom() && a != l.top())
            .collect()
    };
    let (lm, rm) = (mid(left), mid(right));
    let size = lm.len() + rm.len() + 2;
    let name = format!("horizontal_sum({},{})", left.name(), right.name());
    bound(&name, size)?;
    let top = size - 1;
    // index 0 is bottom, then left middle, then right middle, then top
    let place_left = |a: usize| -> usize {
        if a == left.bottom() {
            0
        } else if a == left.top() {
            top
        } else {
            1 + lm.iter().position(|&x| x == a).unwrap()
        }
    };
    let place_right = |a: usize| -> usize {
        if a == right.bottom() {
            0
        } else if a == right.top() {
            top
        } else {
            1 + lm.len() + rm.iter().position(|&x| x == a).unwrap()
        }
    };
    let mut names = vec!["0".to_string()];
    names.extend(lm.iter().map(|&a| format!("L.{}", left.label(a))));
    names.extend(rm.iter().map(|&a| format!("R.{}", right.label(a))));
    names.push("1".into());
    let mut pairs = Vec::new();
    for a in left.elements() {
        for b in left.elements() {
            if left.leq(a, b) {
                pairs.push((place_left(a), place_left(b)));
            }
        }
    }
    for a in right.elements() {
        for b in right.elements() {
            if right.leq(a, b) {
                pairs.push((place_right(a), place_right(b)));
            }
        }
    }
    let mut ortho = vec![0; size];
    for a in left.elements() {
        ortho[place_left(a)] = place_left(left.ortho(a));
    }
    for a in right.elements() {
        ortho[place_right(a)] = place_right(right.ortho(a));
    }
    build(LatticeData::from_covers(name, names, &pairs, ortho))
}

/// Componentwise product; element `(x, y)` has index `x * |right| + y`.
pub fn product(left: &OrthoLattice, right: &OrthoLattice) -> Result<OrthoLattice> {
    let m = right.len();
    let size = left.len() * m;
    let name = format!("product({},{})", left.name(), right.name());
    bound(&name, size)?;
    let names = (0..size)
        .map(|i| format!("({},{})", left.label(i / m), right.label(i % m)))
        .collect();
    let leq = Relation::from_fn(size, |i, j| {
        left.leq(i / m, j / m) && right.leq(i % m, j % m)
    });
    let ortho = (0..size)
        .map(|i| left.ortho(i / m) * m + right.ortho(i % m))
        .collect();
    build(LatticeData {
        name,
        labels: names,
        leq,
        ortho,
        exists: None,
    })
}

/// Attaches `∃0 = 0`, `∃x = 1` otherwise (the quantifier of the sub-ortholattice `{0, 1}`).
pub fn collapse(lattice: OrthoLattice) -> Result<OrthoLattice> {
    let (bot, top) = (lattice.bottom(), lattice.top());
    let exists = lattice
        .elements()
        .map(|a| if a == bot { bot } else { top })
        .collect();
    lattice.with_quantifier(exists)
}

pub fn identity_quantifier(lattice: OrthoLattice) -> Result<OrthoLattice> {
    let exists = lattice.elements().collect();
    lattice.with_quantifier(exists)
}

/// Attaches the quantifier whose closed elements are `sub`.
pub fn with_sub_quantifier(lattice: OrthoLattice, sub: &BitSet) -> Result<OrthoLattice> {
    let exists = quantifier_from_subalgebra(&lattice, sub);
    lattice.with_quantifier(exists)
}

/// Which quantifier to attach to a generated lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantifierSelector {
    Identity,
    Collapse,
    /// Index into [`sub_ortholattices`], which lists sub-ortholattices by size.
    Sub(usize),
}

impl fmt::Display for QuantifierSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantifierSelector::Identity => write!(f, "identity"),
            QuantifierSelector::Collapse => write!(f, "collapse"),
            QuantifierSelector::Sub(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for QuantifierSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(QuantifierSelector::Identity),
            "collapse" => Ok(QuantifierSelector::Collapse),
            k => k.parse().map(QuantifierSelector::Sub).map_err(|_| {
                Error::Structural(format!(
                    "quantifier selector {s:?} is not identity, collapse or an index"
                ))
            }),
        }
    }
}

impl QuantifierSelector {
    pub fn apply(&self, lattice: OrthoLattice) -> Result<OrthoLattice> {
        let name = format!("{}[{}]", lattice.name(), self);
        let l = match self {
            QuantifierSelector::Identity => identity_quantifier(lattice)?,
            QuantifierSelector::Collapse => collapse(lattice)?,
            QuantifierSelector::Sub(k) => {
                let subs = sub_ortholattices(&lattice);
                let sub = subs.get(*k).ok_or_else(|| {
                    Error::Structural(format!(
                        "{} has {} sub-ortholattices; index {k} out of range",
                        lattice.name(),
                        subs.len()
                    ))
                })?;
                with_sub_quantifier(lattice, sub)?
            }
        };
        Ok(l.renamed(name))
    }
}

/// A generator family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Boolean(usize),
    Mo(usize),
    Chain(usize),
    O6,
    HorizontalSum(Box<CatalogSpec>, Box<CatalogSpec>),
    Product(Box<CatalogSpec>, Box<CatalogSpec>),
}

/// A generator call such as `horizontal_sum(boolean(2),mo(2))`, optionally
/// followed by a quantifier selector in brackets, e.g. `mo(2)[collapse]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogSpec {
    pub family: Family,
    pub quantifier: Option<QuantifierSelector>,
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Boolean(n) => write!(f, "boolean({n})")?,
            Family::Mo(n) => write!(f, "mo({n})")?,
            Family::Chain(n) => write!(f, "chain({n})")?,
            Family::O6 => write!(f, "o6")?,
            Family::HorizontalSum(a, b) => write!(f, "horizontal_sum({a},{b})")?,
            Family::Product(a, b) => write!(f, "product({a},{b})")?,
        }
        if let Some(q) = &self.quantifier {
            write!(f, "[{q}]")?;
        }
        Ok(())
    }
}

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            line: 1,
            column: self.pos + 1,
            message: format!("{msg} in generator spec {:?}", self.text),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn number(&mut self) -> Result<usize> {
        let w = self.word().to_string();
        w.parse()
            .map_err(|_| self.err(&format!("expected a number, found {w:?}")))
    }

    fn spec(&mut self) -> Result<CatalogSpec> {
        let name = self.word().to_string();
        let family = match name.as_str() {
            "o6" => Family::O6,
            "boolean" | "mo" | "chain" => {
                self.eat('(')?;
                let n = self.number()?;
                self.eat(')')?;
                match name.as_str() {
                    "boolean" => Family::Boolean(n),
                    "mo" => Family::Mo(n),
                    _ => Family::Chain(n),
                }
            }
            "horizontal_sum" | "product" => {
                self.eat('(')?;
                let a = Box::new(self.spec()?);
                self.eat(',')?;
                let b = Box::new(self.spec()?);
                self.eat(')')?;
                if name == "product" {
                    Family::Product(a, b)
                } else {
                    Family::HorizontalSum(a, b)
                }
            }
            "" => return Err(self.err("expected a family name")),
            other => return Err(self.err(&format!("unknown family {other:?}"))),
        };
        let quantifier = if self.peek() == Some('[') {
            self.eat('[')?;
            let w = self.word().to_string();
            self.eat(']')?;
            Some(w.parse()?)
        } else {
            None
        };
        Ok(CatalogSpec { family, quantifier })
    }
}

impl std::str::FromStr for CatalogSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = SpecParser {
            text: &compact,
            pos: 0,
        };
        let spec = p.spec()?;
        if p.pos != compact.len() {
            return Err(p.err("trailing input"));
        }
        Ok(spec)
    }
}

impl CatalogSpec {
    pub fn plain(family: Family) -> Self {
        CatalogSpec {
            family,
            quantifier: None,
        }
    }

    /// Builds a spec from a family name and its arguments, as given on a command line.
    pub fn from_parts(family: &str, params: &[String]) -> Result<Self> {
        let text = if params.is_empty() {
            family.to_string()
        } else {
            format!("{family}({})", params.join(","))
        };
        text.parse()
    }

    pub fn with_quantifier(mut self, q: QuantifierSelector) -> Self {
        self.quantifier = Some(q);
        self
    }

    pub fn generate(&self) -> Result<OrthoLattice> {
        let l = match &self.family {
            Family::Boolean(n) => boolean(*n)?,
            Family::Mo(n) => mo(*n)?,
            Family::Chain(n) => chain(*n)?,
            Family::O6 => o6()?,
            Family::HorizontalSum(a, b) => horizontal_sum(&a.generate()?, &b.generate()?)?,
            Family::Product(a, b) => product(&a.generate()?, &b.generate()?)?,
        };
        match &self.quantifier {
            Some(q) => q.apply(l),
            None => Ok(l),
        }
    }
}

/// The non-monadic lattice catalog, every member of size at most 24.
pub fn standard_specs() -> Vec<CatalogSpec> {
    let texts = [
        "chain(2)",
        "boolean(2)",
        "boolean(3)",
        "boolean(4)",
        "mo(1)",
        "mo(2)",
        "mo(3)",
        "mo(4)",
        "mo(5)",
        "mo(6)",
        "o6",
        "horizontal_sum(boolean(2),boolean(3))",
        "horizontal_sum(o6,boolean(2))",
        "horizontal_sum(boolean(3),boolean(3))",
        "horizontal_sum(mo(2),o6)",
        "product(chain(2),mo(2))",
        "product(o6,chain(2))",
        "product(boolean(2),o6)",
    ];
    texts
        .iter()
        .map(|t| t.parse().expect("catalog spec parses"))
        .collect()
}

pub fn standard_lattices() -> Vec<OrthoLattice> {
    standard_specs()
        .iter()
        .map(|s| s.generate().expect("catalog lattice generates"))
        .collect()
}

/// Every catalog lattice with at most `max_size` elements, paired with each
/// of its quantifiers; names carry the sub-ortholattice index.
pub fn monadic_corpus(max_size: usize) -> Vec<OrthoLattice> {
    let mut out = Vec::new();
    for l in standard_lattices()
        .into_iter()
        .filter(|l| l.len() <= max_size)
    {
        for (k, (_, q)) in quantifiers_from_subalgebras(&l).into_iter().enumerate() {
            let name = format!("{}[{k}]", l.name());
            out.push(
                l.clone()
                    .with_quantifier(q)
                    .expect("quantifier from sub-ortholattice")
                    .renamed(name),
            );
        }
    }
    out
}

/// Two points `x ⊥ y`.
pub fn two_point_frame() -> OrthoFrame {
    let perp = Relation::from_pairs(2, [(0, 1), (1, 0)]);
    OrthoFrame::new("two-point", labels(&["x", "y"]), perp).expect("two-point frame")
}

/// One point `p` with empty orthogonality.
pub fn one_point_space_frame() -> OrthoFrame {
    OrthoFrame::new("one-point", labels(&["p"]), Relation::empty(1)).expect("one-point frame")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{find_isomorphism, validate_ortholattice};

    #[test]
    fn sizes() {
        assert_eq!(boolean(3).unwrap().len(), 8);
        assert_eq!(mo(4).unwrap().len(), 10);
        assert_eq!(o6().unwrap().len(), 6);
        assert_eq!(boolean(2).unwrap().labels(), &["0", "a", "b", "1"]);
        assert!(chain(3).is_err());
        assert!(boolean(7).is_err());
    }

    #[test]
    fn mo2_passes_the_axiom_scan() {
        let m = mo(2).unwrap();
        assert!(validate_ortholattice(&m.to_data()).unwrap().is_valid());
        assert_eq!(m.labels(), &["0", "a", "a'", "b", "b'", "1"]);
    }

    #[test]
    fn horizontal_sum_of_squares_is_mo2() {
        let b = boolean(2).unwrap();
        let s = horizontal_sum(&b, &b).unwrap();
        assert!(find_isomorphism(&s, &mo(2).unwrap(), 4096)
            .unwrap()
            .is_some());
    }

    #[test]
    fn product_of_chains_is_square() {
        let c = chain(2).unwrap();
        let p = product(&c, &c).unwrap();
        assert!(find_isomorphism(&p, &boolean(2).unwrap(), 4096)
            .unwrap()
            .is_some());
    }

    #[test]
    fn specs_round_trip_through_text() {
        for s in standard_specs() {
            assert_eq!(s.to_string().parse::<CatalogSpec>().unwrap(), s);
        }
        let q: CatalogSpec = "mo(2)[collapse]".parse().unwrap();
        assert_eq!(q.quantifier, Some(QuantifierSelector::Collapse));
        let l = q.generate().unwrap();
        assert_eq!(l.name(), "mo(2)[collapse]");
        assert!(l.is_monadic());
        assert!("mo(2".parse::<CatalogSpec>().is_err());
        assert!("torus(3)".parse::<CatalogSpec>().is_err());
        let p = CatalogSpec::from_parts("horizontal_sum", &["boolean(2)".into(), "mo(2)".into()])
            .unwrap();
        assert_eq!(p.to_string(), "horizontal_sum(boolean(2),mo(2))");
    }

    #[test]
    fn catalog_sizes_stay_small() {
        for l in standard_lattices() {
            assert!(l.len() <= 24, "{}", l.name());
        }
    }

    #[test]
    fn sub_selector_indexes_sub_ortholattices() {
        let m = mo(2).unwrap();
        let n = sub_ortholattices(&m).len();
        assert_eq!(n, 4);
        let top = QuantifierSelector::Sub(n - 1).apply(m.clone()).unwrap();
        assert_eq!(top.exists_map().unwrap(), &[0, 1, 2, 3, 4, 5]);
        assert!(QuantifierSelector::Sub(n).apply(m).is_err());
    }
}
