//! Homological checks on the builtin examples and generated families.

use std::collections::BTreeMap;

use sponge_core::complexes::homology;
use sponge_core::cosheaf::{build_cosheaf, cosheaf_homology, dihomology_check, CosheafError};
use sponge_core::enumerative::{fvector_of, hvector_of, polytope_hvector, ExtendedFVector};
use sponge_core::generators::{
    builtin_sponge, gen_model_sponge, gen_polytope_skeleton, gen_simplex_skeleton, graph_sponge,
    PolytopeFaceLattice,
};
use sponge_core::poset::{
    all_chains, check_cohen_macaulay, link_join_prediction, link_members, order_complex,
    order_complex_of_subset, reduced_simplicial_homology, Selector,
};
use sponge_core::sponge::{
    cellular_complex, check_acyclic, check_local_model, local_cohomology, local_cohomology_all,
    realization_cross_check, sign_solver, validate_sponge, SpongeComplex, SpongeError,
};
use sponge_core::{Coefficients, GradedPoset, HomologyGroup, Strategy};

fn ranks(h: &sponge_core::HomologyProfile, degrees: std::ops::RangeInclusive<i64>) -> Vec<usize> {
    degrees.map(|d| h.free_rank(d)).collect()
}

#[test]
fn cosheaf_homology_of_corpus() {
    let k33 = builtin_sponge("f3_k33").unwrap();
    let c = build_cosheaf(&k33, Strategy::Sequential);
    for s in 0..k33.faces().len() {
        let expected = if k33.faces().rank(s) == 0 { 2 } else { 1 };
        assert_eq!(c.section(s).support(), vec![1]);
        assert_eq!(c.section(s).free_rank(1), expected);
    }
    assert_eq!(ranks(&cosheaf_homology(&c, 1), 0..=1), vec![4, 1]);

    let g42 = builtin_sponge("g42_octahedron").unwrap();
    let c = build_cosheaf(&g42, Strategy::Sequential);
    assert_eq!(ranks(&cosheaf_homology(&c, 2), 0..=2), vec![4, 0, 1]);

    let model = gen_model_sponge(4).unwrap();
    let c = build_cosheaf(&model, Strategy::Sequential);
    assert_eq!(ranks(&cosheaf_homology(&c, 2), 0..=2), vec![0, 0, 1]);
}

#[test]
fn model_local_cohomology() {
    for n in 3..=6 {
        let z = gen_model_sponge(n).unwrap();
        let all = local_cohomology_all(&z, Coefficients::Integers, Strategy::Parallel);
        for (s, h) in all.iter().enumerate() {
            let k = z.faces().rank(s);
            assert_eq!(
                h.support(),
                vec![n as i64 - 2],
                "n = {n}, face {}",
                z.faces().id(s)
            );
            assert_eq!(h.at(n as i64 - 2), HomologyGroup::free(n - 1 - k));
        }
    }
    let z = gen_model_sponge(4).unwrap();
    assert_eq!(
        local_cohomology(&z, "{}", Coefficients::Integers)
            .unwrap()
            .free_rank(2),
        3
    );
    assert_eq!(
        local_cohomology(&z, "{1}", Coefficients::Integers)
            .unwrap()
            .free_rank(2),
        2
    );
    assert_eq!(
        local_cohomology(&z, "{1,2}", Coefficients::Integers)
            .unwrap()
            .free_rank(2),
        1
    );
    assert!(matches!(
        local_cohomology(&z, "{9}", Coefficients::Integers),
        Err(SpongeError::Poset(_))
    ));
}

#[test]
fn model_upper_intervals_match_simplex_skeleta() {
    for n in 3..=6 {
        let z = gen_model_sponge(n).unwrap();
        let p = z.faces();
        for s in 0..p.len() {
            let k = p.rank(s);
            let above = p.subposet(Selector::StrictlyAbove(p.id(s))).unwrap();
            let h = reduced_simplicial_homology(&order_complex(&above), Coefficients::Integers);
            let degree = n as i64 - 3 - k as i64;
            assert_eq!(h.support(), vec![degree]);
            if degree < 0 {
                assert_eq!(h.free_rank(-1), 1);
                continue;
            }
            // Above a k-face: the (n-3-k)-skeleton of the simplex on the n-k
            // remaining coordinates.
            let skeleton = gen_simplex_skeleton(n - k - 1, degree as usize).unwrap();
            let expected = reduced_simplicial_homology(&skeleton, Coefficients::Integers);
            assert!(
                h.same_groups(&expected),
                "n = {n}, k = {k}: {h} vs {expected}"
            );
            assert_eq!(h.free_rank(degree), n - 1 - k);
        }
    }
}

#[test]
fn model_and_corpus_posets_are_cm() {
    for n in 3..=6 {
        let z = gen_model_sponge(n).unwrap();
        assert!(
            check_cohen_macaulay(z.faces(), Coefficients::Integers, Strategy::Parallel).is_cm,
            "n = {n}"
        );
    }
    for name in ["f3_k33", "g42_octahedron", "cube_skeleton"] {
        let z = builtin_sponge(name).unwrap();
        assert!(
            check_cohen_macaulay(z.faces(), Coefficients::Integers, Strategy::Parallel).is_cm,
            "{name}"
        );
    }
}

#[test]
fn link_join_formula_agrees() {
    let corpus = [
        gen_model_sponge(4).unwrap(),
        gen_model_sponge(5).unwrap(),
        builtin_sponge("g42_octahedron").unwrap(),
        builtin_sponge("f3_k33").unwrap(),
    ];
    for z in &corpus {
        let p = z.faces();
        for chain in all_chains(p).into_iter().filter(|c| !c.is_empty()) {
            let link = order_complex_of_subset(p, &link_members(p, &chain));
            let h = reduced_simplicial_homology(&link, Coefficients::Rationals);
            let direct: Vec<(i64, usize)> = h
                .degrees()
                .filter(|&d| h.free_rank(d) > 0)
                .map(|d| (d, h.free_rank(d)))
                .collect();
            assert_eq!(direct, link_join_prediction(p, &chain));
        }
    }
}

#[test]
fn lower_sets_are_cones() {
    for z in [
        gen_model_sponge(5).unwrap(),
        builtin_sponge("g42_octahedron").unwrap(),
    ] {
        let p = z.faces();
        for s in 0..p.len() {
            let below = p.subposet(Selector::Below(p.id(s))).unwrap();
            assert!(
                reduced_simplicial_homology(&order_complex(&below), Coefficients::Integers)
                    .is_zero()
            );
        }
    }
}

#[test]
fn paper_sponges_are_acyclic() {
    let k33 = builtin_sponge("f3_k33").unwrap();
    let c = cellular_complex(&k33, false).unwrap();
    assert_eq!((c.rank(0), c.rank(1)), (6, 9));
    let h = homology(&c, Coefficients::Integers);
    assert_eq!(
        (h.at(0), h.at(1)),
        (HomologyGroup::free(1), HomologyGroup::free(4))
    );
    assert_eq!(
        fvector_of(&k33).unwrap(),
        ExtendedFVector::new(3, vec![6, 9], 4).unwrap()
    );

    let g42 = builtin_sponge("g42_octahedron").unwrap();
    let c = cellular_complex(&g42, true).unwrap();
    let h = homology(&c, Coefficients::Integers);
    assert_eq!(ranks(&h, -1..=2), vec![0, 0, 0, 4]);
    assert!(h.at(2).torsion.is_empty());
    assert!(check_acyclic(&g42).unwrap().acyclic);
    assert_eq!(
        fvector_of(&g42).unwrap(),
        ExtendedFVector::new(4, vec![6, 12, 11], 4).unwrap()
    );
    assert_eq!(check_local_model(&g42).unwrap(), vec![]);
    assert!(realization_cross_check(&g42).unwrap().agrees());
}

#[test]
fn dihomology_on_corpus() {
    for name in ["f3_k33", "g42_octahedron", "cube_skeleton", "model_n4"] {
        let z = builtin_sponge(name).unwrap();
        let r = dihomology_check(&z, Strategy::Parallel).unwrap();
        assert!(r.passed, "{name}: {r:?}");
        let integral = r
            .integral
            .expect("corpus sections are free and concentrated");
        assert_eq!(integral.first_mismatch, None);
    }
    let r = dihomology_check(&builtin_sponge("f3_k33").unwrap(), Strategy::Sequential).unwrap();
    assert_eq!(ranks(&r.cosheaf_side, 0..=1), vec![4, 1]);
    assert_eq!(ranks(&r.space_side, 0..=1), vec![4, 1]);

    // Two disjoint 2-chains.
    let p = GradedPoset::new(
        &[("a", 0), ("b", 1), ("c", 0), ("d", 1)],
        &[("b", "a"), ("d", "c")],
    )
    .unwrap();
    let signs: BTreeMap<(usize, usize), i64> = p.covers().into_iter().map(|c| (c, 1)).collect();
    let z = SpongeComplex::with_signs(3, p, &signs, false).unwrap();
    assert!(matches!(
        dihomology_check(&z, Strategy::Sequential),
        Err(CosheafError::NotCohenMacaulay { .. })
    ));
}

#[test]
fn trivalent_examples() {
    // Disjoint union of two triangle boundaries is not connected.
    let two = graph_sponge(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    let r = check_acyclic(&two).unwrap();
    assert!(!r.acyclic);
    assert_eq!(r.skeleton_acyclic_up_to, -1);

    let path = graph_sponge(3, &[(0, 1), (1, 2)]).unwrap();
    let violations = check_local_model(&path).unwrap();
    assert!(violations.iter().any(|v| v.face == "v0" && v.cofaces == 1));
}

#[test]
fn polytope_skeleta() {
    let cube = gen_polytope_skeleton(&PolytopeFaceLattice::cube(3)).unwrap();
    let fv = fvector_of(&cube).unwrap();
    assert_eq!(fv, ExtendedFVector::new(3, vec![8, 12], 5).unwrap());
    assert_eq!(hvector_of(&fv).h, polytope_hvector(&[8, 12, 6, 1]));

    let simplex = gen_polytope_skeleton(&PolytopeFaceLattice::simplex(3)).unwrap();
    assert_eq!(
        fvector_of(&simplex).unwrap(),
        ExtendedFVector::new(3, vec![4, 6], 3).unwrap()
    );

    let square = gen_polytope_skeleton(&PolytopeFaceLattice::polygon(4)).unwrap();
    assert_eq!(
        fvector_of(&square).unwrap(),
        ExtendedFVector::new(2, vec![4], 3).unwrap()
    );

    let lattices = [
        PolytopeFaceLattice::cube(4),
        PolytopeFaceLattice::simplex(4),
        PolytopeFaceLattice::product(
            &PolytopeFaceLattice::polygon(5),
            &PolytopeFaceLattice::cube(1),
        ),
        PolytopeFaceLattice::product(
            &PolytopeFaceLattice::polygon(3),
            &PolytopeFaceLattice::polygon(4),
        ),
    ];
    for l in &lattices {
        let z = gen_polytope_skeleton(l).unwrap();
        assert!(check_acyclic(&z).unwrap().acyclic);
        assert_eq!(check_local_model(&z).unwrap(), vec![]);
        let h = hvector_of(&fvector_of(&z).unwrap());
        assert_eq!(h.h, polytope_hvector(&l.face_counts()));
        assert!(h.symmetric && h.nonnegative);
    }
}

#[test]
fn sign_solver_examples() {
    let model = gen_model_sponge(4).unwrap();
    assert!(sign_solver(model.faces(), false).is_ok());
    // The simplicial convention itself satisfies every diamond.
    assert!(validate_sponge(&model).is_valid());

    let g42 = builtin_sponge("g42_octahedron").unwrap();
    let mut flipped: BTreeMap<(usize, usize), i64> = g42.incidences().clone();
    let p = g42.faces();
    let (&key, _) = flipped.iter().find(|((u, _), _)| p.rank(*u) == 2).unwrap();
    *flipped.get_mut(&key).unwrap() *= -1;
    let bad = SpongeComplex::with_signs(4, p.clone(), &flipped, false).unwrap();
    // One (2-face, edge) sign sits in the two diamonds through that edge's
    // endpoints.
    assert_eq!(validate_sponge(&bad).diamond_violations.len(), 2);

    // A 6-vertex projective plane capped by one 3-cell has no consistent signs.
    let tris = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    let mut elements: Vec<(String, usize)> = (0..6).map(|v| (format!("{v}"), 0)).collect();
    let mut covers = Vec::new();
    let mut edges = std::collections::BTreeSet::new();
    for t in tris {
        let mut t = t.to_vec();
        t.sort();
        let tid = format!("{}{}{}", t[0], t[1], t[2]);
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let e = format!("{a}{b}");
            covers.push((tid.clone(), e.clone()));
            if edges.insert(e.clone()) {
                covers.push((e.clone(), a.to_string()));
                covers.push((e.clone(), b.to_string()));
                elements.push((e, 1));
            }
        }
        covers.push(("top".to_string(), tid.clone()));
        elements.push((tid, 2));
    }
    elements.push(("top".to_string(), 3));
    assert_eq!(edges.len(), 15);
    let rp2 = GradedPoset::new(&elements, &covers).unwrap();
    assert_eq!(sign_solver(&rp2, true), Err(SpongeError::Unsolvable));
}
