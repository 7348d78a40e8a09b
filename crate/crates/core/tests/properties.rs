//! Randomised invariants checked against independent oracles.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sponge_core::complexes::{cohomology, homology};
use sponge_core::enumerative::{
    betti_polynomial, duality_check, hilbert_equivariant, hvector_of, IntPoly,
};
use sponge_core::exactalg::{invariant_factors, smith_normal_form, IntegerMatrix};
use sponge_core::format::{parse_document, Document, SpongeDocument};
use sponge_core::generators::{builtin_sponge, gen_trivalent_sponges};
use sponge_core::search::{scan, ScanItem};
use sponge_core::Strategy as Run;
use sponge_core::{ChainComplex, Coefficients, ExtendedFVector, SimplicialComplex};

mod common;
use common::{bareiss, determinantal_divisor};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0usize..=5, 0usize..=6).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![3 => Just(0i64), 2 => -4i64..=4, 1 => -40i64..=40];
        proptest::collection::vec(proptest::collection::vec(entry, c), r)
    })
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|v| {
        let facet = proptest::collection::btree_set(0..v, 1..=v.min(4));
        proptest::collection::vec(facet, 1..=8).prop_map(move |fs| {
            SimplicialComplex::from_facets(
                v,
                fs.into_iter().map(|f| f.into_iter().collect()).collect(),
            )
        })
    })
}

fn euler_consistent() -> impl Strategy<Value = ExtendedFVector> {
    (2usize..=6)
        .prop_flat_map(|n| proptest::collection::vec(0u64..=40, n - 1).prop_map(move |f| (n, f)))
        .prop_filter_map("b would be negative", |(n, f)| {
            ExtendedFVector::from_faces(n, f).ok()
        })
}

fn check_uct_and_euler(c: &ChainComplex) {
    let h = homology(c, Coefficients::Integers);
    let q = homology(c, Coefficients::Rationals);
    let co = cohomology(c, Coefficients::Integers);
    let mut chi_h = 0i64;
    for d in c.degrees() {
        assert_eq!(q.free_rank(d), h.free_rank(d));
        assert_eq!(co.free_rank(d), h.free_rank(d));
        assert_eq!(co.at(d).torsion, h.at(d - 1).torsion, "degree {d}");
        chi_h += if d.rem_euclid(2) == 0 { 1 } else { -1 } * h.free_rank(d) as i64;
    }
    assert_eq!(c.euler_characteristic(), chi_h);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_postconditions(rows in matrix()) {
        let cols = rows.first().map_or(0, Vec::len);
        let m = IntegerMatrix::from_rows(&rows);
        let m = if rows.is_empty() { IntegerMatrix::zeros(0, cols) } else { m };
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.verify(&m), Ok(()));
        prop_assert_eq!(&invariant_factors(&m), &s.diagonal);

        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let (rank, _) = bareiss(&big);
        prop_assert_eq!(s.rank(), rank);
        let mut product = BigInt::one();
        for (k, d) in s.diagonal.iter().enumerate() {
            product *= d;
            prop_assert_eq!(&product, &determinantal_divisor(&big, k + 1).abs());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn universal_coefficients_and_euler(k in complex()) {
        check_uct_and_euler(&k.chain_complex().0);
    }

    #[test]
    fn duality_on_euler_consistent_fvectors(fv in euler_consistent()) {
        prop_assert!(duality_check(&fv).holds);
        // The Poincare polynomial is the equivariant series times (1-t^2)^(n-1).
        let h = hilbert_equivariant(&fv).times_one_minus_t2_pow(fv.n - 1);
        prop_assert_eq!(h.denominator_power, 0);
        prop_assert_eq!(&h.numerator, &betti_polynomial(&fv));
        prop_assert_eq!(hvector_of(&fv).h.len(), fv.n + 1);
    }

    // The substitution turns one formula into the other for any (f, b), so
    // breaking the Euler relation cannot break it.
    #[test]
    fn reflection_is_formal(fv in euler_consistent(), shift in 1u64..5) {
        let broken = ExtendedFVector::new(fv.n, fv.f.clone(), fv.b + shift).unwrap();
        prop_assert!(!broken.satisfies_euler());
        prop_assert!(duality_check(&broken).holds);
    }

    #[test]
    fn scan_ignores_order(seed in any::<u64>()) {
        let items: Vec<ScanItem> = gen_trivalent_sponges(8)
            .unwrap()
            .into_iter()
            .map(|(g, sponge)| ScanItem { id: g.code(), sponge })
            .collect();
        let mut shuffled = items.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = scan(&items, Run::Sequential, None).unwrap();
        let b = scan(&shuffled, Run::Parallel, None).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn documents_round_trip(flips in proptest::collection::vec(any::<bool>(), 60)) {
        let z = builtin_sponge("g42_octahedron").unwrap();
        let mut doc = SpongeDocument::from_sponge(&z);
        for (c, flip) in doc.covers.iter_mut().zip(flips) {
            if flip {
                c.incidence = c.incidence.map(|v| -v);
            }
        }
        let text = Document::Sponge(doc.clone()).to_json();
        prop_assert_eq!(parse_document(&text).unwrap(), Document::Sponge(doc.clone()));
        let rebuilt = doc.to_sponge().unwrap();
        prop_assert_eq!(SpongeDocument::from_sponge(&rebuilt), doc);
    }
}

#[test]
fn polynomial_arithmetic_basics() {
    let p = IntPoly::from_i64(&[1, 0, -1]);
    assert_eq!(p.div_one_minus_t2(), Some(IntPoly::one()));
    assert!(IntPoly::from_i64(&[1, 1]).div_one_minus_t2().is_none());
}
