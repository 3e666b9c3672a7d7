//! Line-oriented text format for lattices, frames and maps.
//!
//! ```text
//! # comments run to end of line
//! lattice <name>
//! elements <id>...
//! covers <a> <b>        # a is covered by b
//! leq <a> <b>           # any order pair; closed reflexively and transitively
//! ortho <a> <b>         # a' = b, and b' = a unless b has its own line
//! exists <a> <b>        # ∃a = b; total when present
//! end
//!
//! frame <name>
//! points <id>...
//! perp <x> <y>          # symmetrized on load
//! rel <x> <y>           # R; the frame is monadic when any rel line is present
//! leq <x> <y>           # optional order, checked against the derived one
//! end
//!
//! map <name> <source> <target>
//! send <p> <q>
//! end
//! ```
//!
//! Identifiers are whitespace-free tokens not starting with `#`.

use std::collections::HashMap;

use crate::bitset::Relation;
use crate::error::{Error, Result};
use crate::frames::OrthoFrame;
use crate::lattice::{LatticeData, LatticeHom, OrthoLattice};

/// A frame block: the frame and the order given by its `leq` lines, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameDoc {
    pub frame: OrthoFrame,
    pub order: Option<Relation>,
}

/// A map block with its pairs still as labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub line: usize,
    pub sends: Vec<(usize, String, String)>,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub lattices: Vec<OrthoLattice>,
    pub frames: Vec<FrameDoc>,
    pub maps: Vec<MapDoc>,
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (byte, c) in content
            .char_indices()
            .chain(std::iter::once((content.len(), ' ')))
        {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(byte),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..byte],
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn arity(line: &Line<'_>, n: usize) -> Result<()> {
    if line.tokens.len() != n + 1 {
        let col = line
            .tokens
            .get(n + 1)
            .or(line.tokens.last())
            .map_or(1, |t| t.column);
        return Err(syntax(
            line.number,
            col,
            format!(
                "'{}' takes {} argument(s), found {}",
                line.tokens[0].text,
                n,
                line.tokens.len() - 1
            ),
        ));
    }
    Ok(())
}

struct Names {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Names {
    fn new() -> Self {
        Names {
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn declare(&mut self, line: usize, tok: &Token<'_>) -> Result<()> {
        if self.index.contains_key(tok.text) {
            return Err(syntax(
                line,
                tok.column,
                format!("'{}' declared twice", tok.text),
            ));
        }
        self.index.insert(tok.text.to_string(), self.labels.len());
        self.labels.push(tok.text.to_string());
        Ok(())
    }

    fn get(&self, line: usize, kind: &'static str, tok: &Token<'_>) -> Result<usize> {
        self.index
            .get(tok.text)
            .copied()
            .ok_or_else(|| Error::Undeclared {
                line,
                kind,
                name: tok.text.to_string(),
            })
    }
}

struct LatticeBuilder {
    name: String,
    start: usize,
    names: Names,
    declared: bool,
    pairs: Vec<(usize, usize)>,
    ortho: Vec<(usize, usize, usize)>,
    exists: Vec<(usize, usize, usize)>,
}

impl LatticeBuilder {
    fn finish(self, end_line: usize) -> Result<OrthoLattice> {
        let n = self.names.labels.len();
        if !self.declared || n == 0 {
            return Err(syntax(
                self.start,
                1,
                format!("lattice {} declares no elements", self.name),
            ));
        }
        let mut explicit: Vec<Option<(usize, usize)>> = vec![None; n];
        for &(line, a, b) in &self.ortho {
            match explicit[a] {
                Some((_, prev)) if prev != b => {
                    return Err(syntax(
                        line,
                        1,
                        format!(
                            "conflicting orthocomplements for '{}'",
                            self.names.labels[a]
                        ),
                    ));
                }
                _ => explicit[a] = Some((line, b)),
            }
        }
        let mut ortho: Vec<Option<usize>> = explicit.iter().map(|e| e.map(|(_, b)| b)).collect();
        for &(_, a, b) in &self.ortho {
            if explicit[b].is_none() {
                match ortho[b] {
                    Some(prev) if prev != a => {
                        return Err(syntax(
                            end_line,
                            1,
                            format!(
                                "'{}' is implied to have two orthocomplements",
                                self.names.labels[b]
                            ),
                        ));
                    }
                    _ => ortho[b] = Some(a),
                }
            }
        }
        let ortho = ortho
            .into_iter()
            .enumerate()
            .map(|(a, o)| {
                o.ok_or_else(|| {
                    syntax(
                        end_line,
                        1,
                        format!("no orthocomplement for '{}'", self.names.labels[a]),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let exists = if self.exists.is_empty() {
            None
        } else {
            let mut map: Vec<Option<usize>> = vec![None; n];
            for &(line, a, b) in &self.exists {
                if matches!(map[a], Some(prev) if prev != b) {
                    return Err(syntax(
                        line,
                        1,
                        format!(
                            "conflicting quantifier values for '{}'",
                            self.names.labels[a]
                        ),
                    ));
                }
                map[a] = Some(b);
            }
            Some(
                map.into_iter()
                    .enumerate()
                    .map(|(a, e)| {
                        e.ok_or_else(|| {
                            syntax(
                                end_line,
                                1,
                                format!("no quantifier value for '{}'", self.names.labels[a]),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        };
        let mut data = LatticeData::from_covers(self.name, self.names.labels, &self.pairs, ortho);
        data.exists = exists;
        OrthoLattice::new(data)
    }
}

struct FrameBuilder {
    name: String,
    start: usize,
    names: Names,
    declared: bool,
    perp: Vec<(usize, usize)>,
    rel: Vec<(usize, usize)>,
    order: Vec<(usize, usize)>,
}

impl FrameBuilder {
    fn finish(self) -> Result<FrameDoc> {
        let n = self.names.labels.len();
        if !self.declared || n == 0 {
            return Err(syntax(
                self.start,
                1,
                format!("frame {} declares no points", self.name),
            ));
        }
        let perp = Relation::from_pairs(n, self.perp.iter().copied()).symmetric_closure();
        let mut frame = OrthoFrame::new(self.name, self.names.labels, perp)?;
        if !self.rel.is_empty() {
            frame = frame.with_relation(Relation::from_pairs(n, self.rel.iter().copied()))?;
        }
        let order =
            (!self.order.is_empty()).then(|| Relation::from_pairs(n, self.order.iter().copied()));
        Ok(FrameDoc { frame, order })
    }
}

enum Block {
    Lattice(LatticeBuilder),
    Frame(FrameBuilder),
    Map(MapDoc),
}

/// Parses every block of a document, validating each lattice and frame.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut current: Option<Block> = None;
    let lines = tokenize(text);
    for line in &lines {
        let head = &line.tokens[0];
        let ln = line.number;
        match (head.text, &mut current) {
            ("lattice" | "frame" | "map", Some(_)) => {
                return Err(syntax(
                    ln,
                    head.column,
                    format!("'{}' inside an open block", head.text),
                ));
            }
            ("lattice", None) => {
                arity(line, 1)?;
                current = Some(Block::Lattice(LatticeBuilder {
                    name: line.tokens[1].text.to_string(),
                    start: ln,
                    names: Names::new(),
                    declared: false,
                    pairs: Vec::new(),
                    ortho: Vec::new(),
                    exists: Vec::new(),
                }));
            }
            ("frame", None) => {
                arity(line, 1)?;
                current = Some(Block::Frame(FrameBuilder {
                    name: line.tokens[1].text.to_string(),
                    start: ln,
                    names: Names::new(),
                    declared: false,
                    perp: Vec::new(),
                    rel: Vec::new(),
                    order: Vec::new(),
                }));
            }
            ("map", None) => {
                arity(line, 3)?;
                current = Some(Block::Map(MapDoc {
                    name: line.tokens[1].text.to_string(),
                    source: line.tokens[2].text.to_string(),
                    target: line.tokens[3].text.to_string(),
                    line: ln,
                    sends: Vec::new(),
                }));
            }
            ("end", Some(_)) => {
                arity(line, 0)?;
                match current.take().unwrap() {
                    Block::Lattice(b) => doc.lattices.push(b.finish(ln)?),
                    Block::Frame(b) => doc.frames.push(b.finish()?),
                    Block::Map(m) => doc.maps.push(m),
                }
            }
            (_, None) => {
                return Err(syntax(
                    ln,
                    head.column,
                    format!("'{}' outside a block", head.text),
                ));
            }
            ("elements", Some(Block::Lattice(b))) => {
                b.declared = true;
                for t in &line.tokens[1..] {
                    b.names.declare(ln, t)?;
                }
            }
            ("covers" | "leq" | "ortho" | "exists", Some(Block::Lattice(b))) => {
                arity(line, 2)?;
                let x = b.names.get(ln, "element", &line.tokens[1])?;
                let y = b.names.get(ln, "element", &line.tokens[2])?;
                match head.text {
                    "covers" | "leq" => b.pairs.push((x, y)),
                    "ortho" => b.ortho.push((ln, x, y)),
                    _ => b.exists.push((ln, x, y)),
                }
            }
            ("points", Some(Block::Frame(b))) => {
                b.declared = true;
                for t in &line.tokens[1..] {
                    b.names.declare(ln, t)?;
                }
            }
            ("perp" | "rel" | "leq", Some(Block::Frame(b))) => {
                arity(line, 2)?;
                let x = b.names.get(ln, "point", &line.tokens[1])?;
                let y = b.names.get(ln, "point", &line.tokens[2])?;
                match head.text {
                    "perp" => b.perp.push((x, y)),
                    "rel" => b.rel.push((x, y)),
                    _ => b.order.push((x, y)),
                }
            }
            ("send", Some(Block::Map(m))) => {
                arity(line, 2)?;
                m.sends.push((
                    ln,
                    line.tokens[1].text.to_string(),
                    line.tokens[2].text.to_string(),
                ));
            }
            (other, Some(_)) => {
                return Err(syntax(
                    ln,
                    head.column,
                    format!("unknown directive '{other}'"),
                ));
            }
        }
    }
    if current.is_some() {
        let last = lines.last().map_or(1, |l| l.number);
        return Err(syntax(last, 1, "missing 'end'"));
    }
    Ok(doc)
}

fn only<T>(items: Vec<T>, what: &str) -> Result<T> {
    let n = items.len();
    let mut it = items.into_iter();
    match (it.next(), n) {
        (Some(x), 1) => Ok(x),
        _ => Err(syntax(
            1,
            1,
            format!("expected exactly one {what} block, found {n}"),
        )),
    }
}

pub fn parse_lattice(text: &str) -> Result<OrthoLattice> {
    only(parse_document(text)?.lattices, "lattice")
}

pub fn parse_frame(text: &str) -> Result<FrameDoc> {
    only(parse_document(text)?.frames, "frame")
}

pub fn parse_morphism(text: &str) -> Result<MapDoc> {
    only(parse_document(text)?.maps, "map")
}

fn resolve(
    map: &MapDoc,
    source: &[String],
    target: &[String],
    kind: &'static str,
) -> Result<Vec<usize>> {
    let find = |labels: &[String], line: usize, name: &str| {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Undeclared {
                line,
                kind,
                name: name.to_string(),
            })
    };
    let mut out: Vec<Option<usize>> = vec![None; source.len()];
    for (line, p, q) in &map.sends {
        let i = find(source, *line, p)?;
        let j = find(target, *line, q)?;
        if matches!(out[i], Some(prev) if prev != j) {
            return Err(syntax(*line, 1, format!("'{p}' sent twice")));
        }
        out[i] = Some(j);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                syntax(
                    map.line,
                    1,
                    format!("map {} does not send '{}'", map.name, source[i]),
                )
            })
        })
        .collect()
}

/// Resolves a map block against its source and target lattices.
pub fn resolve_lattice_map(
    map: &MapDoc,
    source: &OrthoLattice,
    target: &OrthoLattice,
) -> Result<LatticeHom> {
    resolve(map, source.labels(), target.labels(), "element").map(LatticeHom::new)
}

/// Resolves a map block against the point labels of two frames.
pub fn resolve_point_map(
    map: &MapDoc,
    source: &OrthoFrame,
    target: &OrthoFrame,
) -> Result<Vec<usize>> {
    resolve(map, source.labels(), target.labels(), "point")
}

/// Writes a lattice so that [`parse_lattice`] returns an equal value.
pub fn render_lattice(l: &OrthoLattice) -> String {
    let mut out = format!("lattice {}\nelements {}\n", l.name(), l.labels().join(" "));
    for (a, b) in l.covers() {
        out.push_str(&format!("covers {} {}\n", l.label(a), l.label(b)));
    }
    for a in l.elements() {
        out.push_str(&format!("ortho {} {}\n", l.label(a), l.label(l.ortho(a))));
    }
    if let Some(e) = l.exists_map() {
        for a in l.elements() {
            out.push_str(&format!("exists {} {}\n", l.label(a), l.label(e[a])));
        }
    }
    out.push_str("end\n");
    out
}

/// Writes a frame (and an optional order) so that [`parse_frame`] returns an equal value.
pub fn render_frame(f: &OrthoFrame, order: Option<&Relation>) -> String {
    let mut out = format!("frame {}\npoints {}\n", f.name(), f.labels().join(" "));
    for (x, y) in f.perp().pairs().filter(|&(x, y)| x < y) {
        out.push_str(&format!("perp {} {}\n", f.label(x), f.label(y)));
    }
    if let Some(r) = f.relation() {
        for (x, y) in r.pairs() {
            out.push_str(&format!("rel {} {}\n", f.label(x), f.label(y)));
        }
    }
    if let Some(o) = order {
        for (x, y) in o.pairs() {
            out.push_str(&format!("leq {} {}\n", f.label(x), f.label(y)));
        }
    }
    out.push_str("end\n");
    out
}

pub fn render_map(
    name: &str,
    source: (&str, &[String]),
    target: (&str, &[String]),
    map: &[usize],
) -> String {
    let mut out = format!("map {} {} {}\n", name, source.0, target.0);
    for (p, &q) in map.iter().enumerate() {
        out.push_str(&format!("send {} {}\n", source.1[p], target.1[q]));
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{chain, collapse, mo, standard_lattices, two_point_frame};

    const MO2: &str = "\
# the modular ortholattice with two blocks
lattice mo(2)
elements 0 a a' b b' 1
covers 0 a
covers 0 a'
covers 0 b
covers 0 b'
covers a 1
covers a' 1
covers b 1
covers b' 1
ortho 0 1
ortho a a'
ortho b b'
end
";

    #[test]
    fn minimal_chain() {
        let l = parse_lattice("lattice two\nelements 0 1\ncovers 0 1\northo 0 1\nend\n").unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.to_data().leq, chain(2).unwrap().to_data().leq);
    }

    #[test]
    fn mo2_file_matches_generator() {
        let l = parse_lattice(MO2).unwrap();
        assert_eq!(l, mo(2).unwrap());
    }

    #[test]
    fn broken_ortho_is_a_validation_failure() {
        let text = "lattice b\nelements 0 a b 1\ncovers 0 a\ncovers 0 b\ncovers a 1\ncovers b 1\northo 0 1\northo a a\northo b b\nend\n";
        assert!(matches!(parse_lattice(text), Err(Error::Invalid(_))));
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_lattice("lattice x\nelements 0 1\ncovers 0 q\nend\n").unwrap_err();
        assert!(
            matches!(err, Error::Undeclared { line: 3, kind: "element", ref name } if name == "q")
        );
        let err = parse_lattice("lattice x\nelements 0 1\n  bogus 0 1\nend\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 3,
                column: 3,
                ..
            }
        ));
        let err = parse_lattice("lattice x\nelements 0 1\ncovers 0 1\northo 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 4, .. }));
        let err = parse_lattice("lattice x\nelements 0 1\ncovers 0 1 1\nend\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 3,
                column: 12,
                ..
            }
        ));
    }

    #[test]
    fn lattice_round_trip() {
        for l in standard_lattices() {
            assert_eq!(
                parse_lattice(&render_lattice(&l)).unwrap(),
                l,
                "{}",
                l.name()
            );
        }
        let m = collapse(mo(3).unwrap()).unwrap();
        assert_eq!(parse_lattice(&render_lattice(&m)).unwrap(), m);
    }

    #[test]
    fn frame_round_trip_and_symmetrization() {
        let doc = parse_frame("frame two-point\npoints x y\nperp x y\nend\n").unwrap();
        assert_eq!(doc.frame, two_point_frame());
        assert_eq!(doc.order, None);
        let f = two_point_frame()
            .with_relation(Relation::identity(2))
            .unwrap();
        let text = render_frame(&f, Some(&Relation::identity(2)));
        let back = parse_frame(&text).unwrap();
        assert_eq!(back.frame, f);
        assert_eq!(back.order, Some(Relation::identity(2)));
    }

    #[test]
    fn maps_resolve() {
        let m = mo(2).unwrap();
        let c = chain(2).unwrap();
        let text = render_map(
            "f",
            ("chain(2)", c.labels()),
            ("mo(2)", m.labels()),
            &[0, 5],
        );
        let doc = parse_morphism(&text).unwrap();
        assert_eq!(resolve_lattice_map(&doc, &c, &m).unwrap().map, vec![0, 5]);
        let bad = parse_morphism("map f chain(2) mo(2)\nsend 0 0\nsend 1 z\nend\n").unwrap();
        assert!(matches!(
            resolve_lattice_map(&bad, &c, &m),
            Err(Error::Undeclared { line: 3, .. })
        ));
    }
}
