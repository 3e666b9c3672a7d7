use serde::Serialize;

use super::{
    enumerate_space_morphisms, functor_c, functor_f, goldblatt_space, is_ortho_sober, point_filter,
    transpose_minus, transpose_plus, unit_g, unit_h, validate_os_morphism, verify_unit_g,
    verify_unit_h, GoldblattSpace, OrthoSpace, SpaceMorphism,
};
use crate::budget::Budget;
use crate::catalog::two_point_frame;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_homomorphisms, LatticeHom};
use crate::report::ValidationReport;

/// Test families for the naturality equations: every `ψ: X′ → X` with `X′`
/// among `spaces` and every `f: L′ → L` with `L′` among `lattices` is used.
#[derive(Clone, Debug, Default)]
pub struct Families {
    pub spaces: Vec<OrthoSpace>,
    pub lattices: Vec<GoldblattSpace>,
}

/// Hom-set tables, transpose tables and the outcome of every adjunction check.
#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionCertificate {
    pub lattice: String,
    pub space: String,
    /// `Hom(L, C(X))`, each map listed by element index.
    pub lattice_homs: Vec<Vec<usize>>,
    /// `Hom(X, F(L))`, each map listed by point index.
    pub space_morphisms: Vec<Vec<usize>>,
    /// `minus[i]` is the index of `f_i⁻` in `space_morphisms`.
    pub minus: Vec<Option<usize>>,
    /// `plus[j]` is the index of `φ_j⁺` in `lattice_homs`.
    pub plus: Vec<Option<usize>>,
    pub naturality_space_triples: usize,
    pub naturality_lattice_triples: usize,
    pub report: ValidationReport,
}

impl AdjunctionCertificate {
    pub fn passed(&self) -> bool {
        self.report.is_valid()
    }
}

/// Verifies `F ⊣ C` on one pair `(L, X)` of matching kind: the transposes are
/// mutually inverse bijections `Hom(L, C(X)) ≅ Hom(X, F(L))`, they factor as
/// `f⁻ = F(f) ∘ g_X` and `φ⁺ = C(φ) ∘ h_L`, and both naturality equations
/// `(α∘ψ)⁺ = C(ψ)∘α⁺` and `(F(f)∘α)⁺ = α⁺∘f` hold over the given families.
///
/// A budget overrun yields a failing certificate marked non-exhaustive.
pub fn verify_adjunction(
    gs: &GoldblattSpace,
    space: &OrthoSpace,
    families: &Families,
    budget: &Budget,
) -> Result<AdjunctionCertificate> {
    if gs.lattice.is_monadic() != space.is_monadic() {
        return Err(Error::Structural(format!(
            "{} and {} are not of the same kind (monadic vs plain)",
            gs.lattice.name(),
            space.name()
        )));
    }
    let mut cert = AdjunctionCertificate {
        lattice: gs.lattice.name().to_string(),
        space: space.name().to_string(),
        lattice_homs: Vec::new(),
        space_morphisms: Vec::new(),
        minus: Vec::new(),
        plus: Vec::new(),
        naturality_space_triples: 0,
        naturality_lattice_triples: 0,
        report: ValidationReport::new(format!(
            "adjunction at ({}, {})",
            gs.lattice.name(),
            space.name()
        )),
    };
    match fill(gs, space, families, budget, &mut cert) {
        Ok(()) => Ok(cert),
        Err(Error::Budget { what, limit }) => {
            cert.report.exhaustive = false;
            cert.report.violate(
                "budget",
                format!("{what}: budget of {limit} exceeded"),
                [limit.to_string()],
            );
            Ok(cert)
        }
        Err(e) => Err(e),
    }
}

fn fill(
    gs: &GoldblattSpace,
    space: &OrthoSpace,
    families: &Families,
    budget: &Budget,
    cert: &mut AdjunctionCertificate,
) -> Result<()> {
    let l = &gs.lattice;
    let cx = space.clopen_lattice();
    let homs = enumerate_homomorphisms(l, cx, budget.hom_candidates)?;
    let morphs = enumerate_space_morphisms(space, &gs.space, budget.hom_candidates)?;
    cert.lattice_homs = homs.iter().map(|h| h.map.clone()).collect();
    cert.space_morphisms = morphs.iter().map(|m| m.map.clone()).collect();
    let ug = unit_g(space, budget.closed_sets)?;
    let h = unit_h(gs)?;
    let report = &mut cert.report;
    let lbl = |f: &LatticeHom| format!("{:?}", f.map);
    let slbl = |m: &SpaceMorphism| format!("{:?}", m.map);

    for f in &homs {
        let fm = transpose_minus(f, gs, space)?;
        let idx = morphs.iter().position(|m| *m == fm);
        cert.minus.push(idx);
        if idx.is_none() {
            let v = validate_os_morphism(space, &gs.space, &fm.map)?;
            report.violate(
                "minus-is-morphism",
                format!("f⁻ is not in Hom(X, F(L)): {}", v.summary()),
                [lbl(f)],
            );
        }
        if transpose_plus(&fm, gs, space)? != *f {
            report.violate("round-trip-minus-plus", "f⁻⁺ ≠ f", [lbl(f)]);
        }
        let via_units = ug.map.then(&functor_f(f, gs, &ug.target)?);
        if via_units != fm {
            report.violate("minus-factorization", "f⁻ ≠ F(f) ∘ g_X", [lbl(f)]);
        }
    }
    for phi in &morphs {
        let pp = transpose_plus(phi, gs, space)?;
        let idx = homs.iter().position(|f| *f == pp);
        cert.plus.push(idx);
        if idx.is_none() {
            report.violate(
                "plus-is-homomorphism",
                "φ⁺ is not in Hom(L, C(X))",
                [slbl(phi)],
            );
        }
        if transpose_minus(&pp, gs, space)? != *phi {
            report.violate("round-trip-plus-minus", "φ⁺⁻ ≠ φ", [slbl(phi)]);
        }
        let via_units = h.then(&functor_c(phi, space, &gs.space)?);
        if via_units != pp {
            report.violate("plus-factorization", "φ⁺ ≠ C(φ) ∘ h_L", [slbl(phi)]);
        }
    }
    let mut hit: Vec<Option<usize>> = cert.minus.clone();
    hit.sort();
    hit.dedup();
    let bijective =
        homs.len() == morphs.len() && hit.len() == homs.len() && hit.iter().all(Option::is_some);
    if !bijective {
        report.violate(
            "bijection",
            format!(
                "|Hom(L, C(X))| = {}, |Hom(X, F(L))| = {}",
                homs.len(),
                morphs.len()
            ),
            [homs.len().to_string(), morphs.len().to_string()],
        );
    }

    let plus: Vec<LatticeHom> = morphs
        .iter()
        .map(|a| transpose_plus(a, gs, space))
        .collect::<Result<_>>()?;
    for xp in families
        .spaces
        .iter()
        .filter(|s| s.is_monadic() == space.is_monadic())
    {
        for psi in enumerate_space_morphisms(xp, space, budget.hom_candidates)? {
            let c_psi = functor_c(&psi, xp, space)?;
            for (alpha, alpha_plus) in morphs.iter().zip(&plus) {
                cert.naturality_space_triples += 1;
                let lhs = transpose_plus(&psi.then(alpha), gs, xp)?;
                let rhs = alpha_plus.then(&c_psi);
                if lhs != rhs {
                    report.violate(
                        "naturality-space",
                        format!("(α∘ψ)⁺ ≠ C(ψ)∘α⁺ for ψ: {} → {}", xp.name(), space.name()),
                        [slbl(&psi), slbl(alpha)],
                    );
                }
            }
        }
    }
    for lp in families
        .lattices
        .iter()
        .filter(|g| g.lattice.is_monadic() == l.is_monadic())
    {
        for f in enumerate_homomorphisms(&lp.lattice, l, budget.hom_candidates)? {
            let ff = functor_f(&f, lp, gs)?;
            for (alpha, alpha_plus) in morphs.iter().zip(&plus) {
                cert.naturality_lattice_triples += 1;
                let lhs = transpose_plus(&alpha.then(&ff), lp, space)?;
                let rhs = f.then(alpha_plus);
                if lhs != rhs {
                    report.violate(
                        "naturality-lattice",
                        format!(
                            "(F(f)∘α)⁺ ≠ α⁺∘f for f: {} → {}",
                            lp.lattice.name(),
                            l.name()
                        ),
                        [lbl(&f), slbl(alpha)],
                    );
                }
            }
        }
    }
    report.note(format!(
        "|Hom(L, C(X))| = {}, |Hom(X, F(L))| = {}, naturality triples: {} space, {} lattice",
        homs.len(),
        morphs.len(),
        cert.naturality_space_triples,
        cert.naturality_lattice_triples
    ));
    Ok(())
}

/// For every `L`, `h_L` is an isomorphism; for every ortho-sober `X`, `g_X`
/// is an isomorphism whose inverse, built from the points realizing each
/// filter, is checked to be a (monadic) OS morphism. Non-sober spaces are
/// skipped with a note after checking that sobriety and bijectivity of `g_X` agree.
pub fn verify_dual_equivalence(
    lattices: &[GoldblattSpace],
    spaces: &[OrthoSpace],
    budget: &Budget,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new("dual equivalence on ortho-sober spaces");
    for gs in lattices {
        report.absorb(&format!("h[{}]", gs.lattice.name()), verify_unit_h(gs)?);
    }
    for space in spaces {
        let tag = format!("g[{}]", space.name());
        let sob = is_ortho_sober(space);
        let ug = unit_g(space, budget.closed_sets)?;
        report.absorb(&tag, verify_unit_g(space, &ug)?);
        let bijective = ug.map.is_injective() && ug.target.space.len() == space.len();
        if sob.sober != bijective {
            report.violate(
                "sobriety-agreement",
                format!(
                    "{}: sober = {}, g bijective = {}",
                    space.name(),
                    sob.sober,
                    bijective
                ),
                [space.name().to_string()],
            );
            continue;
        }
        if !sob.sober {
            report.note(format!("{} is not ortho-sober; excluded", space.name()));
            continue;
        }
        let fc = &ug.target;
        let inverse: Option<Vec<usize>> = fc
            .space
            .points()
            .map(|y| {
                space
                    .points()
                    .find(|&x| point_filter(space, x) == *fc.filters.filter(y))
            })
            .collect();
        let Some(inverse) = inverse.map(SpaceMorphism::new) else {
            report.violate(
                "inverse",
                format!("{}: a filter of C(X) has no point", space.name()),
                [space.name().to_string()],
            );
            continue;
        };
        if ug.map.then(&inverse) != SpaceMorphism::identity(space.len()) {
            report.violate(
                "inverse",
                format!("{}: g⁻¹ ∘ g ≠ id", space.name()),
                [space.name().to_string()],
            );
        }
        if inverse.then(&ug.map) != SpaceMorphism::identity(fc.space.len()) {
            report.violate(
                "inverse",
                format!("{}: g ∘ g⁻¹ ≠ id", space.name()),
                [space.name().to_string()],
            );
        }
        report.absorb(
            &format!("{tag}⁻¹"),
            validate_os_morphism(&fc.space, space, &inverse.map)?,
        );
    }
    Ok(report)
}

/// The two-point space `x ⊥ y` that is not ortho-sober.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub points: usize,
    pub closed_sets: usize,
    pub filters: usize,
    pub g_injective: bool,
    pub g_surjective: bool,
    pub ortho_sober: bool,
    pub witness: Option<String>,
}

impl Counterexample {
    pub fn statement(&self) -> String {
        format!(
            "two-point counterexample: |FC(X)| = {} ≠ {} = |X|",
            self.filters, self.points
        )
    }
}

pub fn two_point_counterexample(budget: &Budget) -> Result<Counterexample> {
    let space = OrthoSpace::new(two_point_frame(), None, budget.closed_sets)?;
    let ug = unit_g(&space, budget.closed_sets)?;
    let sob = is_ortho_sober(&space);
    let mut images = ug.map.map.clone();
    images.sort_unstable();
    images.dedup();
    Ok(Counterexample {
        points: space.len(),
        closed_sets: space.closed().len(),
        filters: ug.target.space.len(),
        g_injective: ug.map.is_injective(),
        g_surjective: images.len() == ug.target.space.len(),
        ortho_sober: sob.sober,
        witness: sob.witness,
    })
}

/// `F(L)` for each lattice, for use as a naturality family.
pub fn goldblatt_family(
    lattices: &[crate::lattice::OrthoLattice],
    budget: &Budget,
) -> Result<Vec<GoldblattSpace>> {
    lattices
        .iter()
        .map(|l| goldblatt_space(l, budget.closed_sets))
        .collect()
}
