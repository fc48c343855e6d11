//! End-to-end acceptance checks.  Each test guards one criterion and prints
//! a single `[acceptance] <name>: PASS` or `FAIL` line (visible under
//! `cargo test --test acceptance -- --nocapture`).

mod common;

use std::collections::BTreeSet;
use std::panic::UnwindSafe;

use num_bigint::BigUint;
use stiefel::parity::{binom_parity, equality_classifier, phi, EqualityClass};
use stiefel::steenrod::verify_axioms;
use stiefel::stunted::{
    admissible_degrees, image_generator_multiple, total_sw_of_line_multiple, AdmissibleMode,
    TruncatedPoly,
};
use stiefel::wu::{
    enumerate_systems, is_wu_consistent, relation_violations, EnumerateOptions,
};
use stiefel::StiefelRing;

fn criterion<F: FnOnce() + UnwindSafe>(name: &str, body: F) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("[acceptance] {name}: PASS"),
        Err(cause) => {
            println!("[acceptance] {name}: FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

/// Every Wu-consistent, low-vanishing system on the benchmark rings obeys its
/// relation table exactly.
#[test]
fn relation_tables_hold_on_benchmark_rings() {
    criterion("relation tables hold on benchmark rings", || {
        let options = EnumerateOptions {
            require_wu: true,
            require_low_vanishing: true,
            ..EnumerateOptions::default()
        };
        for (n, k) in [(4, 2), (5, 2), (6, 2), (6, 3), (7, 3), (8, 3), (9, 4)] {
            let ring = StiefelRing::new(n, k).unwrap();
            let mut nontrivial = 0u64;
            for system in enumerate_systems(&ring, &options).unwrap() {
                let Some(first) = system.first_nonzero_degree() else {
                    continue;
                };
                nontrivial += 1;
                assert!(
                    first.is_power_of_two(),
                    "n = {n}, k = {k}: first nonzero degree {first} is not a power of two"
                );
                let violations = relation_violations(&system, first.trailing_zeros()).unwrap();
                assert!(
                    violations.is_empty(),
                    "n = {n}, k = {k}: {} relation violations on {:?}",
                    violations.len(),
                    system.classes()
                );
            }
            // The filter never empties the search outright: the trivial
            // system always survives, so only count nontrivial ones.
            assert!(nontrivial <= 4, "n = {n}, k = {k}");
        }
    });
}

/// The admissible degree windows contain every exponent realized by the
/// truncated line-class powers, and match the frozen exact sets.
#[test]
fn admissible_windows_contain_line_class_exponents() {
    criterion("admissible windows contain line-class exponents", || {
        for n in 2..=20u32 {
            for k in 1..=n / 2 {
                let c = n - k;
                let multiple = u64::try_from(&image_generator_multiple(n, k).unwrap()).unwrap();
                let twice = admissible_degrees(n, k, AdmissibleMode::TwiceCodimension).unwrap();
                let proj = admissible_degrees(n, k, AdmissibleMode::ProjectiveDimension).unwrap();
                assert_eq!(twice.range_hi, 2 * c);
                assert_eq!(proj.range_hi, n - 1);
                for d in 1..=16u64 {
                    let wide = total_sw_of_line_multiple(2 * c + 1, d * multiple).unwrap();
                    for e in wide.exponents() {
                        assert!(
                            e == 0 || twice.degrees.contains(&e),
                            "n = {n}, k = {k}, d = {d}: exponent {e} outside {:?}",
                            twice.degrees
                        );
                    }
                    let narrow = total_sw_of_line_multiple(n, d * multiple).unwrap();
                    for e in narrow.exponents() {
                        assert!(
                            e == 0 || proj.degrees.contains(&e),
                            "n = {n}, k = {k}, d = {d}: exponent {e} outside {:?}",
                            proj.degrees
                        );
                    }
                }
            }
        }
        let exact = |n: u32, k: u32, mode: AdmissibleMode| {
            admissible_degrees(n, k, mode)
                .unwrap()
                .degrees
                .into_iter()
                .collect::<Vec<_>>()
        };
        assert_eq!(exact(7, 3, AdmissibleMode::TwiceCodimension), vec![4, 8]);
        assert_eq!(exact(8, 3, AdmissibleMode::TwiceCodimension), vec![8]);
        assert_eq!(exact(7, 3, AdmissibleMode::ProjectiveDimension), vec![4]);
        assert_eq!(exact(8, 3, AdmissibleMode::ProjectiveDimension), Vec::<u32>::new());
    });
}

/// The Steenrod squares satisfy identity, instability, top-square, Cartan,
/// and Adem checks on every desk-scale ring.
#[test]
fn steenrod_axioms_hold_at_desk_scale() {
    criterion("steenrod axioms hold at desk scale", || {
        let mut total = 0u64;
        for k in 1..=4u32 {
            for n in k + 1..=12 {
                let ring = StiefelRing::new(n, k).unwrap();
                let report = verify_axioms(&ring);
                assert!(
                    report.is_clean(),
                    "n = {n}, k = {k}: {:?}",
                    report.violations
                );
                total += report.total_checks();
            }
        }
        // The sweep is substantive: tens of thousands of individual checks.
        assert!(total > 10_000, "only {total} checks ran");
    });
}

/// Monomial degrees stratify into the length bands, the bands separate under
/// the width hypothesis, and the two binomial parity laws match the Pascal
/// oracle.
#[test]
fn degree_bands_and_binomial_laws() {
    criterion("degree bands and binomial parity laws", || {
        for k in 1..=5u32 {
            for n in k + 1..=14 {
                let ring = StiefelRing::new(n, k).unwrap();
                for d in 0..=ring.top_degree() {
                    for m in ring.basis(d).iter() {
                        let band = ring.t_band(m.len() as u32).unwrap();
                        assert!(band.contains(d), "n = {n}, k = {k}, monomial {m}");
                    }
                }
            }
        }
        for k in 1..=8u32 {
            for n in k + 1..=40 {
                if 4 * n <= k * (k + 4) {
                    continue;
                }
                let ring = StiefelRing::new(n, k).unwrap();
                let bands: Vec<_> = (0..=k).map(|p| ring.t_band(p).unwrap()).collect();
                for band in &bands {
                    assert!(band.width() < n - k, "n = {n}, k = {k}, p = {}", band.p);
                }
                for pair in bands.windows(2) {
                    assert!(pair[0].hi < pair[1].lo, "n = {n}, k = {k}");
                }
                // Endpoints are monotone in p, so consecutive separation
                // already gives pairwise disjointness; spot-check it anyway.
                for a in 0..bands.len() {
                    for b in a + 1..bands.len() {
                        assert!(bands[a].hi < bands[b].lo);
                    }
                }
            }
        }
        let rows = common::pascal_rows(4096);
        for t in 0..=6u32 {
            let block = 1u64 << t;
            for s in (1..=63u64).step_by(2) {
                for r in 0..=block {
                    let a = block * s + r - 1;
                    let parity = binom_parity(a as i64, r).unwrap();
                    assert_eq!(
                        parity.is_odd(),
                        common::pascal_odd(&rows, a as usize, r as usize),
                        "C({a}, {r}) disagrees with the Pascal oracle"
                    );
                    let expected_odd = r == 0 || r == block;
                    assert_eq!(parity.is_odd(), expected_odd, "t = {t}, s = {s}, r = {r}");
                }
                if s % 4 == 3 {
                    let a = block * s - 1;
                    let b = 2 * block;
                    let parity = binom_parity(a as i64, b).unwrap();
                    assert!(parity.is_odd(), "t = {t}, s = {s}");
                    assert!(common::pascal_odd(&rows, a as usize, b as usize));
                }
            }
        }
    });
}

/// The power bound 2^{phi(m-1)} >= m, the freshman-dream powers of truncated
/// polynomials, and the equality scan across k all hold.
#[test]
fn arithmetic_growth_bounds() {
    criterion("arithmetic growth bounds", || {
        for m in 1..=512u64 {
            let power = phi(m - 1).power;
            assert!(power >= BigUint::from(m), "m = {m}");
            let equal = power == BigUint::from(m);
            assert_eq!(equal, matches!(m, 1 | 2 | 4 | 8), "m = {m}");
            assert_eq!(
                equality_classifier(m) == EqualityClass::Equal,
                equal,
                "m = {m}"
            );
        }
        for modulus in 1..=64u32 {
            for a in 1..=10u32 {
                let mut base = TruncatedPoly::one(modulus).unwrap();
                if a < modulus {
                    base.set_coeff(a, true);
                }
                for e in 0..=5u32 {
                    let d = 1u64 << e;
                    let mut expected = TruncatedPoly::one(modulus).unwrap();
                    let target = a as u64 * d;
                    if target < modulus as u64 {
                        expected.set_coeff(target as u32, true);
                    }
                    assert_eq!(
                        base.pow(d),
                        expected,
                        "(1 + t^{a})^{d} mod t^{modulus}"
                    );
                }
            }
        }
        // Squaring doubles every exponent, for arbitrary supports.
        for mask in 0u32..64 {
            let mut p = TruncatedPoly::zero(11).unwrap();
            let mut expected = TruncatedPoly::zero(11).unwrap();
            for e in 0..6u32 {
                if mask >> e & 1 == 1 {
                    p.set_coeff(e, true);
                    if 2 * e < 11 {
                        expected.set_coeff(2 * e, true);
                    }
                }
            }
            assert_eq!(p.pow(2), expected, "mask {mask:#b}");
        }
        for k in 1..=4u64 {
            let equal: Vec<u64> = (k + 1..=200)
                .filter(|&n| equality_classifier(n - k) == EqualityClass::Equal)
                .collect();
            assert_eq!(equal, vec![k + 1, k + 2, k + 4, k + 8], "k = {k}");
        }
    });
}

/// Every Wu-consistent nontrivial system at desk scale begins in a
/// power-of-two degree.
#[test]
fn consistent_systems_begin_at_powers_of_two() {
    criterion("consistent systems begin at powers of two", || {
        let options = EnumerateOptions {
            require_wu: true,
            ..EnumerateOptions::default()
        };
        let mut nontrivial = 0u64;
        for k in 1..=4u32 {
            for n in k + 1..=10 {
                let ring = StiefelRing::new(n, k).unwrap();
                for system in enumerate_systems(&ring, &options).unwrap() {
                    let Some(first) = system.first_nonzero_degree() else {
                        continue;
                    };
                    nontrivial += 1;
                    assert!(
                        first.is_power_of_two(),
                        "counterexample on n = {n}, k = {k}: {}",
                        serde_json::to_string(&stiefel::cli::system_line(&system)).unwrap()
                    );
                }
            }
        }
        assert!(nontrivial > 0);
    });
}

/// The pruned enumeration, the brute-force route, and the committed snapshot
/// all list exactly the same consistent systems.
#[test]
fn enumeration_routes_and_snapshots_agree() {
    criterion("enumeration routes and snapshots agree", || {
        let update = std::env::var_os("UPDATE_SNAPSHOTS").is_some();
        for (n, k) in [(4, 2), (5, 2), (6, 3)] {
            let ring = StiefelRing::new(n, k).unwrap();
            let pruned_options = EnumerateOptions {
                require_wu: true,
                ..EnumerateOptions::default()
            };
            let pruned: Vec<String> = enumerate_systems(&ring, &pruned_options)
                .unwrap()
                .map(|s| serde_json::to_string(&stiefel::cli::system_line(&s)).unwrap())
                .collect();
            let brute: Vec<String> = enumerate_systems(&ring, &EnumerateOptions::default())
                .unwrap()
                .filter(is_wu_consistent)
                .map(|s| serde_json::to_string(&stiefel::cli::system_line(&s)).unwrap())
                .collect();
            assert_eq!(pruned, brute, "routes disagree on n = {n}, k = {k}");
            let path = format!(
                "{}/tests/snapshots/enum_{n}_{k}.jsonl",
                env!("CARGO_MANIFEST_DIR")
            );
            let body = pruned.join("\n") + "\n";
            if update {
                std::fs::write(&path, &body).unwrap();
            } else {
                let frozen = std::fs::read_to_string(&path).unwrap();
                assert_eq!(frozen, body, "snapshot drift at {path}");
            }
            // Distinct systems only: the serialized lines must not repeat.
            let unique: BTreeSet<&String> = pruned.iter().collect();
            assert_eq!(unique.len(), pruned.len());
        }
    });
}
