//! Acceptance criteria 1-8. Each criterion prints one PASS/FAIL line and the
//! target exits non-zero if any criterion fails.

use std::process::Command;

use ortho_core::bitset::Relation;
use ortho_core::catalog::{
    boolean, chain, collapse, identity_quantifier, mo, monadic_corpus, standard_lattices,
    standard_specs, two_point_frame,
};
use ortho_core::completions::{
    embedding_g, embedding_h, enumerate_proper_filters, goldblatt_frame, goldblatt_monadic_frame,
    h_image, maclaren_monadic_frame, relation_s, verify_canonical, verify_macneille,
};
use ortho_core::duality::{
    enumerate_space_morphisms, goldblatt_family, goldblatt_space, is_ortho_sober,
    two_point_counterexample, unit_g, verify_adjunction, verify_dual_equivalence, verify_unit_h,
    Families, OrthoSpace,
};
use ortho_core::format::{parse_lattice, render_lattice};
use ortho_core::frames::{closed_set_lattice, enumerate_closed_sets, validate_monadic_frame};
use ortho_core::lattice::{
    closed_elements, enumerate_homomorphisms, quantifiers_from_subalgebras, sub_ortholattices,
    OrthoLattice,
};
use ortho_core::oracle;
use ortho_core::suite::RESULT_IDS;
use ortho_core::Budget;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn budget() -> Budget {
    Budget::default()
}

fn criterion_1() -> Outcome {
    let c = two_point_counterexample(&budget()).map_err(e2s)?;
    ensure(
        c.points == 2 && c.closed_sets == 4 && c.filters == 3,
        || format!("{c:?}"),
    )?;
    ensure(c.g_injective && !c.g_surjective, || {
        "g_X injective, not surjective".into()
    })?;
    ensure(!c.ortho_sober && c.witness.is_some(), || {
        "two-point space not sober with witness".into()
    })?;
    Ok(format!(
        "|C(X)| = 4, |F(C(X))| = 3, unrealized filter {}",
        c.witness.unwrap()
    ))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for l in standard_lattices() {
        if l.len() > 24 {
            return Err(format!("{} has {} elements", l.name(), l.len()));
        }
        let gs = goldblatt_space(&l, budget().closed_sets).map_err(e2s)?;
        let v = verify_unit_h(&gs).map_err(e2s)?;
        ensure(v.is_valid(), || v.summary())?;
        ensure(gs.space.closed().len() == l.len(), || {
            format!("|C(F({}))| ≠ |L|", l.name())
        })?;
        count += 1;
    }
    Ok(format!("h_L an isomorphism on {count} catalog lattices"))
}

fn criterion_3() -> Outcome {
    let b = budget();
    let mut plain = 0;
    for l in standard_lattices() {
        let m = verify_macneille(&embedding_g(&l, b.closed_sets).map_err(e2s)?);
        ensure(m.is_valid(), || m.summary())?;
        let c = verify_canonical(&embedding_h(&l, b.closed_sets).map_err(e2s)?, &b);
        ensure(c.is_valid(), || c.summary())?;
        plain += 1;
    }
    let corpus = monadic_corpus(12);
    for l in &corpus {
        let m = verify_macneille(&embedding_g(l, b.closed_sets).map_err(e2s)?);
        ensure(m.is_valid(), || m.summary())?;
        let c = verify_canonical(&embedding_h(l, b.closed_sets).map_err(e2s)?, &b);
        ensure(c.is_valid(), || c.summary())?;
    }
    Ok(format!(
        "{plain} lattices, {} (L, ∃) pairs; on finite L both completions are isomorphisms, \
         so MacNeille and canonical cannot be told apart here",
        corpus.len()
    ))
}

fn criterion_4() -> Outcome {
    let b = budget();
    let corpus = monadic_corpus(12);
    for l in &corpus {
        let e = l.exists_map().expect("monadic");
        for f in [
            maclaren_monadic_frame(l).map_err(e2s)?,
            goldblatt_monadic_frame(l).map_err(e2s)?,
        ] {
            let v = validate_monadic_frame(&f, f.relation().unwrap()).map_err(e2s)?;
            ensure(v.is_valid(), || v.summary())?;
        }
        let s = relation_s(l, b.closed_sets).map_err(e2s)?;
        let fs = enumerate_proper_filters(l);
        let n = fs.len();
        let plain = goldblatt_frame(l).map_err(e2s)?;
        let with_s = plain
            .clone()
            .with_relation(s.relation.clone())
            .map_err(e2s)?;
        let v = validate_monadic_frame(&with_s, &s.relation).map_err(e2s)?;
        ensure(v.is_valid(), || v.summary())?;
        // R and ↑∘S recomputed from filter images.
        let images: Vec<_> = fs
            .filters
            .iter()
            .map(|x| ortho_core::bitset::BitSet::from_indices(l.len(), x.iter().map(|a| e[a])))
            .collect();
        let r = Relation::from_fn(n, |i, j| images[i].is_subset(fs.filter(j)));
        let up = Relation::from_fn(n, |i, j| fs.filter(i).is_subset(fs.filter(j)));
        ensure(s.relation.then(&up) == r, || {
            format!("R ≠ ↑∘S on {}", l.name())
        })?;
        for a in enumerate_closed_sets(&plain, b.closed_sets).map_err(e2s)? {
            let er = plain.biorthogonal(&r.image(&a));
            let es = plain.biorthogonal(&s.relation.image(&a));
            ensure(er == es, || {
                format!("∃_R ≠ ∃_S on {} at {}", l.name(), plain.set_label(&a))
            })?;
        }
        for a in l.elements() {
            ensure(r.image(&h_image(&fs, a)) == h_image(&fs, e[a]), || {
                format!("R[h({})] ≠ h(∃{}) on {}", l.label(a), l.label(a), l.name())
            })?;
        }
    }
    Ok(format!("{} (L, ∃) pairs", corpus.len()))
}

fn two_point_with(rel: Relation, name: &str) -> Result<OrthoSpace, String> {
    let f = two_point_frame()
        .with_relation(rel)
        .map_err(e2s)?
        .renamed(name);
    OrthoSpace::new(f, None, budget().closed_sets).map_err(e2s)
}

fn adjunction_grid(
    lattices: &[OrthoLattice],
    spaces: Vec<OrthoSpace>,
) -> Result<(usize, usize), String> {
    let b = budget();
    let families = Families {
        spaces: spaces.clone(),
        lattices: goldblatt_family(lattices, &b).map_err(e2s)?,
    };
    let (mut pairs, mut members) = (0, 0);
    for gs in &families.lattices {
        for x in &spaces {
            let cert = verify_adjunction(gs, x, &families, &b).map_err(e2s)?;
            ensure(cert.passed() && cert.report.exhaustive, || {
                cert.report.summary()
            })?;
            ensure(
                cert.minus.iter().all(Option::is_some) && cert.plus.iter().all(Option::is_some),
                || format!("transpose missing on ({}, {})", cert.lattice, cert.space),
            )?;
            pairs += 1;
            members += cert.lattice_homs.len() + cert.space_morphisms.len();
        }
    }
    Ok((pairs, members))
}

fn criterion_5() -> Outcome {
    let b = budget();
    let plain = [chain(2).unwrap(), boolean(2).unwrap(), mo(2).unwrap()];
    let mut spaces = vec![OrthoSpace::new(two_point_frame(), None, b.closed_sets).map_err(e2s)?];
    for l in &plain[..2] {
        spaces.push(goldblatt_space(l, b.closed_sets).map_err(e2s)?.space);
    }
    let (p1, m1) = adjunction_grid(&plain, spaces)?;

    let mut monadic = Vec::new();
    for l in &plain {
        monadic.push(identity_quantifier(l.clone()).map_err(e2s)?);
        monadic.push(collapse(l.clone()).map_err(e2s)?);
    }
    let mut mspaces = vec![
        two_point_with(Relation::identity(2), "two-point[identity]")?,
        two_point_with(Relation::total(2), "two-point[total]")?,
    ];
    for l in [
        identity_quantifier(chain(2).unwrap()).map_err(e2s)?,
        identity_quantifier(boolean(2).unwrap()).map_err(e2s)?,
        collapse(boolean(2).unwrap()).map_err(e2s)?,
    ] {
        mspaces.push(goldblatt_space(&l, b.closed_sets).map_err(e2s)?.space);
    }
    let (p2, m2) = adjunction_grid(&monadic, mspaces)?;
    Ok(format!(
        "{} pairs, {} hom-set members, all transposes inverse and natural",
        p1 + p2,
        m1 + m2
    ))
}

fn criterion_6() -> Outcome {
    let b = budget();
    let mut lattices = standard_lattices();
    lattices.extend(monadic_corpus(12));
    let family = goldblatt_family(&lattices, &b).map_err(e2s)?;
    let spaces: Vec<OrthoSpace> = family.iter().map(|g| g.space.clone()).collect();
    for s in &spaces {
        ensure(is_ortho_sober(s).sober, || {
            format!("{} not ortho-sober", s.name())
        })?;
        let ug = unit_g(s, b.closed_sets).map_err(e2s)?;
        ensure(
            ug.map.is_injective() && ug.target.space.len() == s.len(),
            || format!("g on {} is not bijective", s.name()),
        )?;
    }
    let v = verify_dual_equivalence(&family, &spaces, &b).map_err(e2s)?;
    ensure(v.is_valid(), || v.summary())?;
    Ok(format!(
        "{} spaces ortho-sober with g an isomorphism",
        spaces.len()
    ))
}

fn criterion_7() -> Outcome {
    let b = budget();
    let lattices = standard_lattices();
    for l in &lattices {
        let mut engine = enumerate_proper_filters(l).filters;
        engine.sort();
        ensure(engine == oracle::principal_filters(l), || {
            format!("filters of {}", l.name())
        })?;
    }
    let mut frames = vec![two_point_frame()];
    for l in &lattices {
        frames.push(ortho_core::completions::maclaren_frame(l).map_err(e2s)?);
        frames.push(goldblatt_frame(l).map_err(e2s)?);
    }
    let mut closure_checked = 0;
    for f in frames.iter().filter(|f| f.len() <= 12) {
        let mut engine = enumerate_closed_sets(f, b.closed_sets).map_err(e2s)?;
        engine.sort();
        ensure(
            engine == oracle::powerset_closed_sets(f.perp()).map_err(e2s)?,
            || format!("B({}) differs from powerset filtering", f.name()),
        )?;
        let cs = closed_set_lattice(f, b.closed_sets).map_err(e2s)?;
        ensure(cs.len() == engine.len(), || f.name().to_string())?;
        closure_checked += 1;
    }
    let mut small: Vec<OrthoLattice> = lattices.iter().filter(|l| l.len() <= 6).cloned().collect();
    small.extend(monadic_corpus(6));
    let mut hom_pairs = 0;
    for s in &small {
        for t in &small {
            let engine: Vec<Vec<usize>> = enumerate_homomorphisms(s, t, b.hom_candidates)
                .map_err(e2s)?
                .into_iter()
                .map(|h| h.map)
                .collect();
            ensure(
                engine == oracle::raw_homomorphisms(s, t).map_err(e2s)?,
                || {
                    format!(
                        "Hom({}, {}) differs from raw enumeration",
                        s.name(),
                        t.name()
                    )
                },
            )?;
            hom_pairs += 1;
        }
    }
    let mut spaces = vec![OrthoSpace::new(two_point_frame(), None, b.closed_sets).map_err(e2s)?];
    for l in small.iter().filter(|l| l.len() <= 6) {
        spaces.push(goldblatt_space(l, b.closed_sets).map_err(e2s)?.space);
    }
    for p in spaces.iter().filter(|s| s.len() <= 5) {
        for x in spaces
            .iter()
            .filter(|s| s.len() <= 5 && s.is_monadic() == p.is_monadic())
        {
            let engine: Vec<Vec<usize>> = enumerate_space_morphisms(p, x, b.hom_candidates)
                .map_err(e2s)?
                .into_iter()
                .map(|m| m.map)
                .collect();
            ensure(
                engine == oracle::raw_space_morphisms(p, x).map_err(e2s)?,
                || {
                    format!(
                        "morphisms {} → {} differ from raw enumeration",
                        p.name(),
                        x.name()
                    )
                },
            )?;
        }
    }
    let mut round_trips = 0;
    for l in lattices.iter().filter(|l| l.len() <= 12) {
        let subs = sub_ortholattices(l);
        ensure(
            subs == oracle::brute_sub_ortholattices(l).map_err(e2s)?,
            || format!("sub-ortholattices of {}", l.name()),
        )?;
        let qs = quantifiers_from_subalgebras(l);
        ensure(qs.len() == subs.len(), || {
            format!("quantifier count on {}", l.name())
        })?;
        if l.len() <= 6 {
            let mut engine: Vec<Vec<usize>> = qs.iter().map(|(_, q)| q.clone()).collect();
            engine.sort();
            ensure(engine == oracle::raw_quantifiers(l).map_err(e2s)?, || {
                format!("quantifiers of {} differ from raw enumeration", l.name())
            })?;
        }
        for (sub, q) in qs {
            let m = l.clone().with_quantifier(q).map_err(e2s)?;
            ensure(closed_elements(&m).map_err(e2s)? == sub, || {
                format!("sub ↦ ∃ ↦ closed elements on {}", l.name())
            })?;
            round_trips += 1;
        }
    }
    Ok(format!(
        "filters on {} lattices, B(X) on {closure_checked} frames, {hom_pairs} hom-set pairs, {round_trips} quantifier round trips",
        lattices.len()
    ))
}

fn ortho(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ortho"))
        .args(args)
        .output()
        .expect("ortho runs")
}

fn criterion_8() -> Outcome {
    let first = ortho(&["--json", "check", "paper"]);
    ensure(first.status.code() == Some(0), || {
        format!(
            "check paper exited {:?}: {}",
            first.status.code(),
            String::from_utf8_lossy(&first.stdout)
        )
    })?;
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(e2s)?;
    let checks = report["checks"].as_array().ok_or("no checks array")?;
    let names: Vec<&str> = checks.iter().filter_map(|c| c["name"].as_str()).collect();
    ensure(names == RESULT_IDS, || format!("result ids {names:?}"))?;
    ensure(checks.iter().all(|c| c["passed"] == true), || {
        "a result failed".into()
    })?;
    let text = String::from_utf8_lossy(&first.stdout);
    ensure(
        text.contains("two-point counterexample: |FC(X)| = 3 ≠ 2 = |X|"),
        || "counterexample statement missing".into(),
    )?;
    let second = ortho(&["--json", "check", "paper"]);
    ensure(first.stdout == second.stdout, || "reruns differ".into())?;

    let mut lattices = standard_lattices();
    lattices.extend(monadic_corpus(12));
    for l in &lattices {
        ensure(
            parse_lattice(&render_lattice(l)).map_err(e2s)? == *l,
            || format!("round trip on {}", l.name()),
        )?;
    }
    let dir = tempfile::tempdir().map_err(e2s)?;
    for spec in standard_specs() {
        let gen = ortho(&["gen", &spec.to_string()]);
        ensure(gen.status.success(), || format!("gen {spec}"))?;
        let path = dir.path().join("l.txt");
        std::fs::write(&path, &gen.stdout).map_err(e2s)?;
        let v = ortho(&["validate", path.to_str().unwrap()]);
        ensure(v.status.success(), || format!("validate {spec}"))?;
        let again = ortho(&["gen", &spec.to_string()]);
        ensure(again.stdout == gen.stdout, || {
            format!("gen {spec} not deterministic")
        })?;
    }
    Ok(format!(
        "{} result ids pass, byte-identical reruns, round trip on {} lattices",
        RESULT_IDS.len(),
        lattices.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 counterexample pinning", criterion_1),
        ("2 representation", criterion_2),
        ("3 completions", criterion_3),
        ("4 monadic frames", criterion_4),
        ("5 adjunction", criterion_5),
        ("6 dual equivalence", criterion_6),
        ("7 oracle equivalences", criterion_7),
        ("8 CLI contract", criterion_8),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
