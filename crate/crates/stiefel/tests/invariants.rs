//! Structural invariants of the ring, checked against independent oracles
//! and brute-force recomputation at desk scale.

mod common;

use std::collections::BTreeMap;

use stiefel::parity::{binom_parity, equality_classifier, phi, EqualityClass};
use stiefel::stunted::{admissible_degrees, AdmissibleMode};
use stiefel::wu::{
    enumerate_systems, relation_table, state_bits, wu_rhs, DegreeVerdict, EnumerateOptions,
};
use stiefel::{CohomologyClass, Error, ReductionOrder, StiefelRing};

#[test]
fn basis_dimensions_sum_to_two_to_the_k() {
    for k in 1..=5u32 {
        for n in k + 1..=14 {
            let ring = StiefelRing::new(n, k).unwrap();
            let total: usize = (0..=ring.top_degree()).map(|d| ring.dim(d)).sum();
            assert_eq!(total, 1usize << k, "n = {n}, k = {k}");
            assert_eq!(state_bits(&ring), (1u32 << k) - 1, "n = {n}, k = {k}");
            for d in 0..=ring.top_degree() {
                let basis = ring.basis(d);
                assert_eq!(basis.len(), ring.dim(d));
                for m in basis.iter() {
                    assert_eq!(m.degree(), d);
                    // Square-free: indices strictly increase inside the
                    // generator window.
                    assert!(m.indices().windows(2).all(|w| w[0] < w[1]));
                    assert!(m
                        .indices()
                        .iter()
                        .all(|&i| ring.gen_lo() <= i && i <= ring.gen_hi()));
                }
            }
        }
    }
}

#[test]
fn multiplication_is_commutative_and_associative() {
    // Bilinearity reduces both laws to products of basis monomials, so
    // checking monomials exhaustively settles them for every class.
    for (n, k) in [(4, 2), (5, 2), (5, 3), (6, 3), (9, 3)] {
        let ring = StiefelRing::new(n, k).unwrap();
        let classes: Vec<CohomologyClass> = (0..=ring.top_degree())
            .flat_map(|d| {
                ring.basis(d)
                    .iter()
                    .cloned()
                    .map(CohomologyClass::from_monomial)
                    .collect::<Vec<_>>()
            })
            .collect();
        let unit = CohomologyClass::unit();
        for x in &classes {
            assert_eq!(&ring.multiply(x, &unit).unwrap(), x);
            for y in &classes {
                let xy = ring.multiply(x, y).unwrap();
                assert_eq!(xy, ring.multiply(y, x).unwrap());
                for z in &classes {
                    let left = ring.multiply(&xy, z).unwrap();
                    let right = ring
                        .multiply(x, &ring.multiply(y, z).unwrap())
                        .unwrap();
                    assert_eq!(left, right, "({x})({y})({z}) on n = {n}, k = {k}");
                }
            }
        }
    }
}

#[test]
fn reduction_is_confluent_across_orders() {
    // Rewriting duplicated indices with a_i a_i -> a_{2i} terminates in the
    // same normal form no matter which duplicate goes first.
    let ring = StiefelRing::new(10, 8).unwrap();
    let lo = ring.gen_lo();
    let hi = ring.gen_hi();
    let mut multisets: Vec<Vec<u32>> = Vec::new();
    for a in lo..=hi {
        for b in a..=hi {
            multisets.push(vec![a, b]);
            for c in b..=hi {
                multisets.push(vec![a, b, c]);
                for d in c..=hi {
                    multisets.push(vec![a, b, c, d]);
                }
            }
        }
    }
    for indices in &multisets {
        let small = ring.reduce(indices, ReductionOrder::SmallestFirst);
        let large = ring.reduce(indices, ReductionOrder::LargestFirst);
        assert_eq!(small, large, "indices {indices:?}");
        if let Some(m) = small {
            // The rewrite preserves total degree.
            assert_eq!(m.degree(), indices.iter().sum::<u32>());
            assert!(ring.validate_monomial(&m).is_ok());
        }
    }
    // A chain that cascades through several rewrites.
    let deep = StiefelRing::new(17, 15).unwrap();
    let m = deep
        .reduce(&[2, 2, 2, 2], ReductionOrder::SmallestFirst)
        .unwrap();
    assert_eq!(m.to_string(), "a8");
    assert_eq!(
        deep.reduce(&[2, 2, 2, 2], ReductionOrder::LargestFirst),
        Some(m)
    );
}

#[test]
fn binomial_parity_matches_pascal_triangle() {
    let rows = common::pascal_rows(4096);
    for a in 0..=4096usize {
        for b in 0..=a {
            let expected = common::pascal_odd(&rows, a, b);
            let got = binom_parity(a as i64, b as u64).unwrap().is_odd();
            assert_eq!(got, expected, "C({a}, {b})");
        }
        // Above the diagonal the coefficient vanishes.
        assert!(binom_parity(a as i64, a as u64 + 1).unwrap().is_even());
    }
}

#[test]
fn binomial_parity_domain() {
    assert!(binom_parity(-1, 0).unwrap().is_odd());
    assert!(matches!(
        binom_parity(-1, 1),
        Err(Error::BinomialDomain { .. })
    ));
    assert!(matches!(
        binom_parity(-2, 0),
        Err(Error::BinomialDomain { .. })
    ));
    assert!(binom_parity(0, 0).unwrap().is_odd());
    assert!(binom_parity(0, 1).unwrap().is_even());
}

#[test]
fn counting_function_matches_closed_form() {
    // phi(m) counts 0 < l <= m with l = 0, 1, 2, 4 mod 8; in closed form
    // that is floor(m/2) + 1 when m mod 8 lies in 1..=5 and floor(m/2)
    // otherwise.
    let mut running = 0u64;
    for m in 1..=65536u64 {
        if matches!(m % 8, 0 | 1 | 2 | 4) {
            running += 1;
        }
        let closed = m / 2 + u64::from(matches!(m % 8, 1..=5));
        assert_eq!(running, closed, "m = {m}");
        if m <= 2048 || m == 65536 {
            let value = phi(m);
            assert_eq!(value.phi, running, "m = {m}");
            assert_eq!(value.power, num_bigint::BigUint::from(1u32) << running as usize);
        }
    }
    assert_eq!(phi(0).phi, 0);
    assert_eq!(phi(0).power, num_bigint::BigUint::from(1u32));
}

#[test]
fn sphere_systems_follow_power_of_two_law() {
    // With one generator the only candidate nontrivial class is the top one,
    // and the Wu pair (i, m - i) forces it to vanish with weight
    // C(m - i - 1, i).  Some weight with 2i <= m is odd unless m is a power
    // of two, so exactly two systems survive precisely in that case.
    let options = EnumerateOptions {
        require_wu: true,
        ..EnumerateOptions::default()
    };
    for n in 2..=40u32 {
        let ring = StiefelRing::new(n, 1).unwrap();
        let systems: Vec<_> = enumerate_systems(&ring, &options).unwrap().collect();
        let m = n - 1;
        let expected = if m.is_power_of_two() { 2 } else { 1 };
        assert_eq!(systems.len(), expected, "n = {n}");
        assert!(systems[0].is_trivial());
        if expected == 2 {
            assert_eq!(systems[1].first_nonzero_degree(), Some(m));
            assert_eq!(systems[1].class(m).to_string(), format!("a{m}"));
        }
    }
}

#[test]
fn wu_rhs_diagonal_is_square() {
    // Sq^i on a degree-i class is its square, so the Wu expansion at (i, i)
    // must collapse to w_i^2 for every raw assignment, consistent or not.
    let ring = StiefelRing::new(5, 3).unwrap();
    let all = enumerate_systems(&ring, &EnumerateOptions::default()).unwrap();
    let mut seen = 0u64;
    for system in all {
        seen += 1;
        for i in 1..=ring.top_degree() {
            let w = system.class(i);
            let square = ring.multiply(&w, &w).unwrap();
            assert_eq!(wu_rhs(&system, i, i).unwrap(), square, "i = {i}");
        }
    }
    assert_eq!(seen, 128);
}

#[test]
fn relation_table_layout() {
    let ring = StiefelRing::new(7, 3).unwrap();
    let table = relation_table(&ring, 2).unwrap();
    assert_eq!((table.n, table.k, table.q), (7, 3, 2));
    let mut expected = BTreeMap::new();
    for degree in 1..=15u32 {
        expected.insert(
            degree,
            match degree {
                4 | 8 => DegreeVerdict::FreeGenerator,
                12 => DegreeVerdict::ForcedProduct(vec![4, 8]),
                _ => DegreeVerdict::ForcedZero,
            },
        );
    }
    assert_eq!(table.verdicts, expected);

    let wide = StiefelRing::new(10, 4).unwrap();
    let table = relation_table(&wide, 1).unwrap();
    assert_eq!(table.verdicts[&16], DegreeVerdict::FreeGenerator);
    assert_eq!(table.verdicts[&24], DegreeVerdict::ForcedProduct(vec![8, 16]));
    assert_eq!(
        table.verdicts[&30],
        DegreeVerdict::ForcedProduct(vec![2, 4, 8, 16])
    );
    assert_eq!(table.verdicts[&15], DegreeVerdict::ForcedZero);

    // The table is only derived inside the band-separation regime.
    let narrow = StiefelRing::new(6, 4).unwrap();
    assert!(matches!(
        relation_table(&narrow, 1),
        Err(Error::Hypothesis { .. })
    ));
}

#[test]
fn admissible_pair_appears_exactly_at_equality() {
    // The double-width window holds two admissible degrees exactly when
    // 2^{phi(c - 1)} = c for the codimension c, i.e. c = 1, 2, 4, 8.
    for k in 1..=6u32 {
        for n in k + 1..=k + 24 {
            let c = n - k;
            let set = admissible_degrees(n, k, AdmissibleMode::TwiceCodimension).unwrap();
            assert_eq!(set.range_hi, 2 * c);
            let equal = equality_classifier(c as u64) == EqualityClass::Equal;
            assert_eq!(set.degrees.len() == 2, equal, "n = {n}, k = {k}");
            if equal {
                assert!(matches!(c, 1 | 2 | 4 | 8));
                assert_eq!(
                    set.degrees.iter().copied().collect::<Vec<_>>(),
                    vec![c, 2 * c]
                );
            }
        }
    }
}
