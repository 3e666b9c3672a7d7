use super::{validate_os_morphism, OrthoSpace, SpaceMorphism};
use crate::bitset::{BitSet, Relation};
use crate::completions::{enumerate_proper_filters, goldblatt_frame_over, h_image, FilterSet};
use crate::error::{Error, Result};
use crate::lattice::{homomorphism_violation, LatticeHom, OrthoLattice};
use crate::report::ValidationReport;

/// The space `F(L)` of proper filters, ordered by inclusion, together with `L`.
#[derive(Clone, Debug)]
pub struct GoldblattSpace {
    pub lattice: OrthoLattice,
    pub filters: FilterSet,
    pub space: OrthoSpace,
}

fn inconsistent(e: Error) -> Error {
    match e {
        Error::Invalid(r) => Error::Inconsistency(r.summary()),
        other => other,
    }
}

/// Builds `F(L)` and validates it as a (monadic) orthospace whose given
/// order, filter inclusion, must agree with the derived one.
pub fn goldblatt_space(lattice: &OrthoLattice, closed_budget: usize) -> Result<GoldblattSpace> {
    let filters = enumerate_proper_filters(lattice);
    let frame = goldblatt_frame_over(lattice, &filters)?;
    let n = filters.len();
    let inclusion = Relation::from_fn(n, |i, j| filters.filter(i).is_subset(filters.filter(j)));
    let space = OrthoSpace::new(frame, Some(inclusion), closed_budget).map_err(inconsistent)?;
    Ok(GoldblattSpace {
        lattice: lattice.clone(),
        filters,
        space,
    })
}

/// `F(f) = f⁻¹[·]: F(M) → F(L)` for `f: L → M`.
pub fn functor_f(
    f: &LatticeHom,
    source: &GoldblattSpace,
    target: &GoldblattSpace,
) -> Result<SpaceMorphism> {
    let l = &source.lattice;
    let map = target
        .filters
        .filters
        .iter()
        .map(|y| {
            let pre =
                BitSet::from_indices(l.len(), l.elements().filter(|&a| y.contains(f.apply(a))));
            source.filters.index_of(&pre).ok_or_else(|| {
                Error::Inconsistency("preimage of a proper filter is not a proper filter".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpaceMorphism::new(map))
}

/// `C(φ) = φ⁻¹[·]: C(X) → C(P)` for `φ: P → X`.
pub fn functor_c(
    phi: &SpaceMorphism,
    source: &OrthoSpace,
    target: &OrthoSpace,
) -> Result<LatticeHom> {
    let map = target
        .closed()
        .sets
        .iter()
        .map(|u| {
            source.closed().index_of(&phi.preimage(u)).ok_or_else(|| {
                Error::Inconsistency(format!(
                    "preimage of {} is not closed",
                    target.frame().set_label(u)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeHom::new(map))
}

/// `h_L(a) = {x ∈ F(L) : a ∈ x}` as a map `L → C(F(L))`.
pub fn unit_h(gs: &GoldblattSpace) -> Result<LatticeHom> {
    let map = gs
        .lattice
        .elements()
        .map(|a| {
            gs.space
                .closed()
                .index_of(&h_image(&gs.filters, a))
                .ok_or_else(|| Error::Inconsistency("h(a) is not closed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeHom::new(map))
}

/// Checks that `h_L` is a (monadic) ortholattice isomorphism.
pub fn verify_unit_h(gs: &GoldblattSpace) -> Result<ValidationReport> {
    let h = unit_h(gs)?;
    let target = gs.space.clopen_lattice();
    let mut report = ValidationReport::new(format!("h for {}", gs.lattice.name()));
    if let Some(v) = homomorphism_violation(&gs.lattice, target, &h.map)? {
        report.violate("homomorphism", v, Vec::<String>::new());
    }
    if !h.is_injective() {
        report.violate(
            "injective",
            "two elements share an image",
            Vec::<String>::new(),
        );
    }
    if target.len() != gs.lattice.len() {
        report.violate(
            "surjective",
            format!(
                "|C(F(L))| = {} but |L| = {}",
                target.len(),
                gs.lattice.len()
            ),
            [target.len().to_string()],
        );
    }
    Ok(report)
}

/// The filter `{U ∈ C(X) : x ∈ U}` as a set of `C(X)` indices.
pub fn point_filter(space: &OrthoSpace, x: usize) -> BitSet {
    let cs = space.closed();
    BitSet::from_indices(cs.len(), (0..cs.len()).filter(|&i| cs.set(i).contains(x)))
}

/// `g_X: X → F(C(X))` with its target space.
#[derive(Clone, Debug)]
pub struct UnitG {
    pub target: GoldblattSpace,
    pub map: SpaceMorphism,
}

pub fn unit_g(space: &OrthoSpace, closed_budget: usize) -> Result<UnitG> {
    let target = goldblatt_space(space.clopen_lattice(), closed_budget)?;
    let map = space
        .points()
        .map(|x| {
            target
                .filters
                .index_of(&point_filter(space, x))
                .ok_or_else(|| {
                    Error::Inconsistency(format!(
                        "point filter of {} is not a proper filter",
                        space.label(x)
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitG {
        target,
        map: SpaceMorphism::new(map),
    })
}

/// Checks that `g_X` is an injective (monadic) OS morphism and, in the monadic
/// case, that `R[g⁻¹[h(U)]]` and `g⁻¹[R[h(U)]]` both equal `R[U]` for every
/// `U ∈ C(X)`, where `R` on `F(C(X))` is `∃[F] ⊆ G`.
/// Surjectivity is recorded as a note; it holds exactly for ortho-sober `X`.
pub fn verify_unit_g(space: &OrthoSpace, ug: &UnitG) -> Result<ValidationReport> {
    let mut report = ValidationReport::new(format!("g for {}", space.name()));
    if !ug.map.is_injective() {
        let (x, y) = first_collision(&ug.map.map);
        report.violate(
            "injective",
            format!("g({}) = g({})", space.label(x), space.label(y)),
            [space.label(x).to_string(), space.label(y).to_string()],
        );
    }
    report.absorb(
        "os-morphism",
        validate_os_morphism(space, &ug.target.space, &ug.map.map)?,
    );
    if let (Some(rel), Some(rf)) = (space.frame().relation(), ug.target.space.frame().relation()) {
        let cs = space.closed();
        for (i, u) in cs.sets.iter().enumerate() {
            let v = h_image(&ug.target.filters, i);
            let expected = rel.image(u);
            let via_x = rel.image(&ug.map.preimage(&v));
            let via_f = ug.map.preimage(&rf.image(&v));
            if via_x != expected || via_f != expected {
                let lbl = space.frame().set_label(u);
                report.violate(
                    "monadic-principal",
                    format!("R[g⁻¹[h({lbl})]] or g⁻¹[R[h({lbl})]] differs from R[{lbl}]"),
                    [lbl],
                );
                break;
            }
        }
    }
    let onto = ug.target.space.len() == space.len();
    report.note(format!(
        "|X| = {}, |F(C(X))| = {}: g is {}",
        space.len(),
        ug.target.space.len(),
        if onto { "bijective" } else { "not surjective" }
    ));
    Ok(report)
}

fn first_collision(map: &[usize]) -> (usize, usize) {
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            if map[i] == map[j] {
                return (i, j);
            }
        }
    }
    unreachable!("map is injective")
}

/// Whether every proper filter of `C(X)` is a point filter, with an unrealized filter otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sobriety {
    pub sober: bool,
    /// Members of the first unrealized filter, as `C(X)` indices.
    pub unrealized: Option<BitSet>,
    pub witness: Option<String>,
}

/// Decides ortho-sobriety without going through `g_X`: on a finite lattice
/// every proper filter is `↑U` for a nonempty `U ∈ C(X)`, so each `↑U` is
/// compared with the point filters.
pub fn is_ortho_sober(space: &OrthoSpace) -> Sobriety {
    let cs = space.closed();
    let l = space.clopen_lattice();
    let point_filters: Vec<BitSet> = space.points().map(|x| point_filter(space, x)).collect();
    for u in (0..cs.len()).filter(|&i| !cs.set(i).is_empty()) {
        let up = l.up_set(u);
        if !point_filters.contains(&up) {
            let names: Vec<String> = up
                .iter()
                .map(|i| space.frame().set_label(cs.set(i)))
                .collect();
            return Sobriety {
                sober: false,
                witness: Some(format!("{{{}}}", names.join(","))),
                unrealized: Some(up),
            };
        }
    }
    Sobriety {
        sober: true,
        unrealized: None,
        witness: None,
    }
}

/// `f⁻(x) = {a : x ∈ f(a)}` for `f: L → C(X)`.
pub fn transpose_minus(
    f: &LatticeHom,
    gs: &GoldblattSpace,
    space: &OrthoSpace,
) -> Result<SpaceMorphism> {
    let l = &gs.lattice;
    let map = space
        .points()
        .map(|x| {
            let filter = BitSet::from_indices(
                l.len(),
                l.elements()
                    .filter(|&a| space.closed_set(f.apply(a)).contains(x)),
            );
            gs.filters.index_of(&filter).ok_or_else(|| {
                Error::Inconsistency(format!("f⁻({}) is not a proper filter", space.label(x)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpaceMorphism::new(map))
}

/// `φ⁺(a) = {x : a ∈ φ(x)}` for `φ: X → F(L)`.
pub fn transpose_plus(
    phi: &SpaceMorphism,
    gs: &GoldblattSpace,
    space: &OrthoSpace,
) -> Result<LatticeHom> {
    let map = gs
        .lattice
        .elements()
        .map(|a| {
            let set = BitSet::from_indices(
                space.len(),
                space
                    .points()
                    .filter(|&x| gs.filters.filter(phi.apply(x)).contains(a)),
            );
            space.closed().index_of(&set).ok_or_else(|| {
                Error::Inconsistency(format!("φ⁺({}) is not closed", gs.lattice.label(a)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeHom::new(map))
}
