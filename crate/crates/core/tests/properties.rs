use proptest::prelude::*;

use ortho_core::bitset::{BitSet, Relation};
use ortho_core::catalog::{monadic_corpus, standard_lattices};
use ortho_core::completions::{
    embedding_g, embedding_h, enumerate_proper_filters, goldblatt_monadic_frame, h_image,
    maclaren_monadic_frame,
};
use ortho_core::duality::{
    derive_order, enumerate_space_morphisms, functor_c, functor_f, goldblatt_space,
    validate_orthospace, validate_os_morphism, OrthoSpace,
};
use ortho_core::frames::{closed_set_lattice, enumerate_closed_sets, OrthoFrame};
use ortho_core::lattice::{
    closed_elements, enumerate_homomorphisms, is_homomorphism, quantifier_from_subalgebra,
    sub_ortholattices, LatticeHom, OrthoLattice,
};

const CLOSED: usize = 1 << 16;

fn small_lattices() -> Vec<OrthoLattice> {
    standard_lattices()
        .into_iter()
        .filter(|l| l.len() <= 12)
        .collect()
}

fn corpus() -> Vec<OrthoLattice> {
    monadic_corpus(12)
}

/// A random orthoframe on `n` points: `⊥` from the upper-triangle bits of `mask`.
fn frame_from(n: usize, mask: u64) -> OrthoFrame {
    let mut bit = 0;
    let mut perp = Relation::empty(n);
    for x in 0..n {
        for y in x + 1..n {
            if mask >> bit & 1 == 1 {
                perp.insert(x, y);
                perp.insert(y, x);
            }
            bit += 1;
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    OrthoFrame::new(format!("random({n},{mask})"), labels, perp).unwrap()
}

fn frames() -> impl Strategy<Value = OrthoFrame> {
    (1usize..=7, any::<u64>()).prop_map(|(n, m)| frame_from(n, m))
}

fn subset_of(n: usize, mask: u64) -> BitSet {
    BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn polarity_is_a_galois_connection(f in frames(), a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (subset_of(f.len(), a), subset_of(f.len(), b));
        prop_assert_eq!(a.is_subset(&f.orthogonal(&b)), b.is_subset(&f.orthogonal(&a)));
        prop_assert!(a.is_subset(&f.biorthogonal(&a)));
        prop_assert_eq!(f.orthogonal(&f.biorthogonal(&a)), f.orthogonal(&a));
    }

    #[test]
    fn closed_sets_satisfy_de_morgan(f in frames()) {
        let cs = closed_set_lattice(&f, CLOSED).unwrap();
        let l = &cs.lattice;
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(l.ortho(l.meet(a, b)), l.join(l.ortho(a), l.ortho(b)));
                prop_assert_eq!(cs.set(l.meet(a, b)), &cs.set(a).intersection(cs.set(b)));
            }
        }
    }

    #[test]
    fn closed_sets_are_up_sets_of_the_derived_order(f in frames()) {
        let order = derive_order(&f).relation;
        for u in enumerate_closed_sets(&f, CLOSED).unwrap() {
            for (x, y) in order.pairs() {
                prop_assert!(!u.contains(x) || u.contains(y));
            }
        }
    }

    #[test]
    fn separated_frames_are_orthospaces_both_ways(f in frames()) {
        let closed = enumerate_closed_sets(&f, CLOSED).unwrap();
        let separated = f.points().all(|x| {
            f.points().all(|y| x == y || closed.iter().any(|u| u.contains(x) != u.contains(y)))
        });
        let derived = validate_orthospace(&f, None, CLOSED).unwrap();
        prop_assert_eq!(separated, derived.is_valid());
        if separated {
            let order = derive_order(&f).relation;
            let space = OrthoSpace::new(f.clone(), Some(order.clone()), CLOSED).unwrap();
            prop_assert_eq!(derive_order(space.frame()).relation, order);
        }
    }

    #[test]
    fn quantifiers_round_trip_through_sub_ortholattices(i in 0usize..64, k in 0usize..64) {
        let ls = small_lattices();
        let l = &ls[i % ls.len()];
        let subs = sub_ortholattices(l);
        let sub = &subs[k % subs.len()];
        let q = quantifier_from_subalgebra(l, sub);
        let m = l.clone().with_quantifier(q.clone()).unwrap();
        prop_assert_eq!(&closed_elements(&m).unwrap(), sub);
        let closed = closed_elements(&m).unwrap();
        prop_assert_eq!(quantifier_from_subalgebra(l, &closed), q.clone());
        // ∃a is the least closed element above a.
        for a in l.elements() {
            prop_assert!(l.leq(a, q[a]) && closed.contains(q[a]));
            for c in closed.iter().filter(|&c| l.leq(a, c)) {
                prop_assert!(l.leq(q[a], c));
            }
        }
    }

    #[test]
    fn g_and_h_are_isomorphisms(i in 0usize..64) {
        let ls = small_lattices();
        let l = &ls[i % ls.len()];
        for w in [embedding_g(l, CLOSED).unwrap(), embedding_h(l, CLOSED).unwrap()] {
            let (target, map) = w.target_lattice(CLOSED).unwrap();
            prop_assert_eq!(target.len(), l.len());
            // A bijective ortholattice homomorphism is an isomorphism.
            prop_assert!(is_homomorphism(l, &target.lattice, &map));
            prop_assert!(LatticeHom::new(map).is_injective());
        }
    }

    #[test]
    fn h_turns_ortho_into_orthogonal(i in 0usize..64) {
        let ls = small_lattices();
        let l = &ls[i % ls.len()];
        let w = embedding_h(l, CLOSED).unwrap();
        for a in l.elements() {
            prop_assert_eq!(w.frame.orthogonal(&w.embedding[a]), w.embedding[l.ortho(a)].clone());
        }
    }

    #[test]
    fn principal_filters_carry_maclaren_onto_goldblatt(i in 0usize..1024) {
        let c = corpus();
        let l = &c[i % c.len()];
        let mac = maclaren_monadic_frame(l).unwrap();
        let gold = goldblatt_monadic_frame(l).unwrap();
        let fs = enumerate_proper_filters(l);
        let points = l.nonzero();
        let image: Vec<usize> = points.iter().map(|&a| fs.principal(a).unwrap()).collect();
        let (rm, rg) = (mac.relation().unwrap(), gold.relation().unwrap());
        for p in 0..points.len() {
            for q in 0..points.len() {
                prop_assert_eq!(mac.is_perp(p, q), gold.is_perp(image[p], image[q]));
                prop_assert_eq!(rm.contains(p, q), rg.contains(image[p], image[q]));
            }
        }
        let e = l.exists_map().unwrap();
        for a in l.elements() {
            prop_assert_eq!(rg.image(&h_image(&fs, a)), h_image(&fs, e[a]));
        }
    }
}

fn small_spaces() -> Vec<OrthoSpace> {
    let mut out = vec![
        OrthoSpace::new(ortho_core::catalog::two_point_frame(), None, CLOSED).unwrap(),
        OrthoSpace::new(ortho_core::catalog::one_point_space_frame(), None, CLOSED).unwrap(),
    ];
    for l in standard_lattices().into_iter().filter(|l| l.len() <= 6) {
        out.push(goldblatt_space(&l, CLOSED).unwrap().space);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn space_morphisms_compose(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let sp = small_spaces();
        let (a, b, c) = (&sp[i % sp.len()], &sp[j % sp.len()], &sp[k % sp.len()]);
        for phi in enumerate_space_morphisms(a, b, 4096).unwrap() {
            for psi in enumerate_space_morphisms(b, c, 4096).unwrap() {
                let comp = phi.then(&psi);
                prop_assert!(validate_os_morphism(a, c, &comp.map).unwrap().is_valid());
                let lhs = functor_c(&comp, a, c).unwrap();
                let rhs = functor_c(&psi, b, c).unwrap().then(&functor_c(&phi, a, b).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn f_reverses_composition(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let ls: Vec<OrthoLattice> = standard_lattices().into_iter().filter(|l| l.len() <= 8).collect();
        let pick = |n: usize| goldblatt_space(&ls[n % ls.len()], CLOSED).unwrap();
        let (a, b, c) = (pick(i), pick(j), pick(k));
        for f in enumerate_homomorphisms(&a.lattice, &b.lattice, 4096).unwrap() {
            let ff = functor_f(&f, &a, &b).unwrap();
            prop_assert!(validate_os_morphism(&b.space, &a.space, &ff.map).unwrap().is_valid());
            for g in enumerate_homomorphisms(&b.lattice, &c.lattice, 4096).unwrap() {
                let lhs = functor_f(&f.then(&g), &a, &c).unwrap();
                let rhs = functor_f(&g, &b, &c).unwrap().then(&ff);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
