//! Acceptance suite: one test per numbered criterion, each printing a
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line; thresholds and runtime limits are pinned in the
//! assertions themselves.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};

use wordlab::chars::{
    character_table, classify_class_function, closed_form_wk_two_degree, fourier_coefficients,
    frobenius_count_wk, ClassFunctionSource, Classification,
};
use wordlab::corpus;
use wordlab::fiber::{
    convolve_disjoint, count_abelian_power_product, count_auto, count_brute_force,
    count_central_quotient, CountOptions,
};
use wordlab::group::catalog::{catalog, class2_all, class2_small, odd_p_class2};
use wordlab::group::{Element, FiniteGroup};
use wordlab::signature::{class2_signature, reduce_type1, NormalForm};
use wordlab::testsupport::count_abelian_exhaustive;
use wordlab::verify::{
    check_product_multiplicativity, check_rationality, check_uniformity_surjective, verify_bounds,
    verify_theorem_c, BoundMode, Verdict,
};
use wordlab::word::{build_named_word, parse_word, NamedWord};

fn criterion<F>(number: u32, description: &str, body: F)
where
    F: FnOnce() -> Result<(), String>,
{
    match body() {
        Ok(()) => println!("criterion {number:02} ({description}): PASS"),
        Err(msg) => {
            println!("criterion {number:02} ({description}): FAIL - {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

fn opts() -> CountOptions {
    CountOptions::default()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// The unique central involution of the order-8 catalog presentations.
fn central_involution(g: &FiniteGroup) -> Element {
    g.center()
        .iter()
        .find(|&e| e != g.identity())
        .expect("nontrivial center")
}

fn check<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn within(limit: Duration, took: Duration, what: &str) -> Result<(), String> {
    if took <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {took:?}, limit {limit:?}"))
    }
}

#[test]
fn acceptance_01_q8_commutator() {
    criterion(1, "Q8 commutator fiber sizes across three routes", || {
        let start = Instant::now();
        let g = catalog("q8").map_err(|e| e.to_string())?;
        let w = parse_word("[x1,x2]", None).map_err(|e| e.to_string())?;
        let minus_one = central_involution(&g);
        let brute = count_brute_force(&g, &w, &opts()).map_err(|e| e.to_string())?;
        check("N(1)", brute.count(g.identity()).clone(), big(40))?;
        check("N(-1)", brute.count(minus_one).clone(), big(24))?;
        check("support size", brute.support().len(), 2)?;
        let table = character_table(&g).map_err(|e| e.to_string())?;
        let fr = frobenius_count_wk(&g, &table, 1).map_err(|e| e.to_string())?;
        check("frobenius route", fr == brute, true)?;
        let (n1, ng) = closed_form_wk_two_degree(8, 2, 2, 1).map_err(|e| e.to_string())?;
        check("closed form", (n1, ng), (big(40), big(24)))?;
        within(Duration::from_secs(1), start.elapsed(), "criterion 1")
    });
}

#[test]
fn acceptance_02_heisenberg_w1() {
    criterion(2, "Heisenberg(3) w_1 two fiber sizes on G'", || {
        let g = catalog("heisenberg(3)").map_err(|e| e.to_string())?;
        let w = build_named_word(NamedWord::Wk, 1).map_err(|e| e.to_string())?;
        let dist = count_brute_force(&g, &w, &opts()).map_err(|e| e.to_string())?;
        check("N(1)", dist.count(g.identity()).clone(), big(297))?;
        let derived = g.derived_subgroup();
        check("|G'|", derived.order(), 3)?;
        for z in derived.iter() {
            if z != g.identity() {
                check("N(g) on G'", dist.count(z).clone(), big(216))?;
            }
        }
        // Support is exactly G' and there are exactly two fiber sizes there.
        let support = dist.support();
        check(
            "support = G'",
            support.iter().all(|&e| derived.contains(e)),
            true,
        )?;
        check("support size", support.len() as u64, derived.order())?;
        let mut sizes: Vec<BigUint> = derived.iter().map(|e| dist.count(e).clone()).collect();
        sizes.sort();
        sizes.dedup();
        check("distinct sizes on G'", sizes.len(), 2)?;
        let bound = big(27); // |G|^(2k-1)
        check(
            "lower bound |G|^(2k-1)",
            derived.iter().all(|e| dist.count(e) >= &bound),
            true,
        )?;
        let report = verify_theorem_c(&g, 1, &opts()).map_err(|e| e.to_string())?;
        check("thmC verdict", report.verdict, Verdict::Holds)
    });
}

#[test]
fn acceptance_03_w2_on_q8() {
    criterion(
        3,
        "w_2 on Q8: convolution = brute force = closed form",
        || {
            let g = catalog("q8").map_err(|e| e.to_string())?;
            let minus_one = central_involution(&g);
            let w1 = parse_word("[x1,x2]", None).map_err(|e| e.to_string())?;
            let d1 = count_brute_force(&g, &w1, &opts()).map_err(|e| e.to_string())?;
            let conv = convolve_disjoint(&g, &d1, &d1).map_err(|e| e.to_string())?;

            let start = Instant::now();
            let w2 = build_named_word(NamedWord::Wk, 2).map_err(|e| e.to_string())?;
            let brute = count_brute_force(&g, &w2, &opts()).map_err(|e| e.to_string())?;
            let brute_time = start.elapsed();

            check("convolution = brute", conv == brute, true)?;
            check("N(1)", brute.count(g.identity()).clone(), big(2176))?;
            check("N(-1)", brute.count(minus_one).clone(), big(1920))?;
            let (n1, ng) = closed_form_wk_two_degree(8, 2, 2, 2).map_err(|e| e.to_string())?;
            check("closed form", (n1, ng), (big(2176), big(1920)))?;
            let bound = big(512); // 8^3
            check(
                "bound 8^3",
                brute.support().iter().all(|&e| brute.count(e) >= &bound),
                true,
            )?;
            within(Duration::from_secs(10), brute_time, "brute-force leg")
        },
    );
}

/// Shared sweep for criteria 4 and 14: every catalog class-<=2 group of
/// order <= 64 against every corpus word of arity <= 3, brute force vs
/// central quotient. Returns the brute-force exports in deterministic order.
fn oracle_sweep(workers: usize) -> Result<Vec<String>, String> {
    let mut exports = Vec::new();
    let run_opts = CountOptions {
        budget: wordlab::DEFAULT_BUDGET,
        workers,
    };
    for name in class2_small() {
        let g = catalog(name).map_err(|e| e.to_string())?;
        for w in corpus::words_up_to_arity(3) {
            let brute = count_brute_force(&g, &w, &run_opts).map_err(|e| e.to_string())?;
            let central = count_central_quotient(&g, &w, &run_opts).map_err(|e| e.to_string())?;
            if brute != central {
                return Err(format!("method disagreement on {name} with {}", w.render()));
            }
            brute.validate(&g).map_err(|e| e.to_string())?;
            exports.push(brute.to_export(&g, &w.render()).to_json());
        }
    }
    Ok(exports)
}

#[test]
fn acceptance_04_oracle_equivalence() {
    criterion(
        4,
        "central quotient = brute force over the full sweep",
        || {
            let start = Instant::now();
            let exports = oracle_sweep(1)?;
            check("sweep size", exports.len() >= 20 * 20, true)?;
            within(
                Duration::from_secs(600),
                start.elapsed(),
                "criterion 4 sweep",
            )
        },
    );
}

#[test]
fn acceptance_05_theorem_a_sweep() {
    criterion(
        5,
        "two-variable words meet the |G| bound on class-2 groups",
        || {
            for name in class2_all() {
                let g = catalog(name).map_err(|e| e.to_string())?;
                for text in corpus::WORDS {
                    let w = parse_word(text, None).map_err(|e| e.to_string())?;
                    if w.arity() > 2 {
                        continue;
                    }
                    let w = parse_word(text, Some(2)).map_err(|e| e.to_string())?;
                    let report = verify_bounds(&g, &w, BoundMode::TwoVariable, &opts())
                        .map_err(|e| e.to_string())?;
                    check(
                        &format!("thmA on {name} with {text}"),
                        report.verdict,
                        Verdict::Holds,
                    )?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_06_theorem_b_sweep() {
    criterion(6, "odd-p class-2 groups meet the |G|^(k-2) bound", || {
        for name in odd_p_class2() {
            let g = catalog(name).map_err(|e| e.to_string())?;
            for w in corpus::words() {
                let report = verify_bounds(&g, &w, BoundMode::OddPrime, &opts())
                    .map_err(|e| e.to_string())?;
                check(
                    &format!("thmB on {name} with {}", w.render()),
                    report.verdict,
                    Verdict::Holds,
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_07_rationality_and_characters() {
    criterion(
        7,
        "class-2 rationality and integral Fourier coefficients",
        || {
            for name in class2_all() {
                let g = catalog(name).map_err(|e| e.to_string())?;
                let table = character_table(&g).map_err(|e| e.to_string())?;
                let odd = g.order() % 2 == 1;
                for w in corpus::words() {
                    let report = check_rationality(&g, &w, &opts()).map_err(|e| e.to_string())?;
                    check(
                        &format!("rationality on {name} with {}", w.render()),
                        report.verdict,
                        Verdict::Holds,
                    )?;
                    let dist = count_auto(&g, &w, &opts()).map_err(|e| e.to_string())?;
                    let f = fourier_coefficients(&dist, &table).map_err(|e| e.to_string())?;
                    check(
                        &format!("integral coefficients on {name} with {}", w.render()),
                        f.all_integral(),
                        true,
                    )?;
                    if odd {
                        check(
                            &format!("non-negative coefficients on {name} with {}", w.render()),
                            f.all_non_negative(),
                            true,
                        )?;
                    }
                    let class =
                        classify_class_function(&g, &table, &f, ClassFunctionSource::WordFiber)
                            .map_err(|e| e.to_string())?;
                    if odd {
                        check(
                            &format!("character on odd-p {name} with {}", w.render()),
                            class,
                            Classification::Character,
                        )?;
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_08_q8_non_character_witness() {
    criterion(
        8,
        "N_{x^2} on Q8 has coefficient -1 at the degree-2 character",
        || {
            let g = catalog("q8").map_err(|e| e.to_string())?;
            let table = character_table(&g).map_err(|e| e.to_string())?;
            let w = parse_word("x1^2", None).map_err(|e| e.to_string())?;
            let dist = count_brute_force(&g, &w, &opts()).map_err(|e| e.to_string())?;
            let f = fourier_coefficients(&dist, &table).map_err(|e| e.to_string())?;
            // The degree-2 character is the last row (degrees ascending).
            let deg2 = table.degrees().iter().position(|&d| d == 2).unwrap();
            let c = &f.coefficients()[deg2];
            check("denominator", c.denom().is_one(), true)?;
            check("coefficient", c.numer().clone(), BigInt::from(-1))?;
            let class = classify_class_function(&g, &table, &f, ClassFunctionSource::WordFiber)
                .map_err(|e| e.to_string())?;
            check("classified", class, Classification::GeneralizedCharacter)
        },
    );
}

#[test]
fn acceptance_09_character_tables() {
    criterion(9, "character tables of Q8, D4, Heisenberg(3)", || {
        for name in ["q8", "d4"] {
            let start = Instant::now();
            let g = catalog(name).map_err(|e| e.to_string())?;
            let t = character_table(&g).map_err(|e| e.to_string())?;
            check(
                &format!("{name} degrees"),
                t.degrees().to_vec(),
                vec![1, 1, 1, 1, 2],
            )?;
            check(
                &format!("{name} orthogonality < 1e-9"),
                t.orthogonality_residual() < 1e-9,
                true,
            )?;
            within(Duration::from_secs(5), start.elapsed(), name)?;
        }
        let start = Instant::now();
        let g = catalog("heisenberg(3)").map_err(|e| e.to_string())?;
        let t = character_table(&g).map_err(|e| e.to_string())?;
        let mut expected = vec![1u32; 9];
        expected.extend([3, 3]);
        check("heisenberg(3) degrees", t.degrees().to_vec(), expected)?;
        check(
            "heisenberg(3) orthogonality < 1e-9",
            t.orthogonality_residual() < 1e-9,
            true,
        )?;
        within(Duration::from_secs(5), start.elapsed(), "heisenberg(3)")
    });
}

#[test]
fn acceptance_10_product_multiplicativity() {
    criterion(
        10,
        "N on Q8 x Z3 is the pointwise product of components",
        || {
            let q8 = catalog("q8").map_err(|e| e.to_string())?;
            let z3 = catalog("cyclic(3)").map_err(|e| e.to_string())?;
            let w = parse_word("x1^2", None).map_err(|e| e.to_string())?;
            let report =
                check_product_multiplicativity(&q8, &z3, &w, &opts()).map_err(|e| e.to_string())?;
            check("verdict", report.verdict, Verdict::Holds)?;
            // N((-1, z)) = 6 * 1 for each of the three z in Z3.
            let product = q8.direct_product(&z3).map_err(|e| e.to_string())?;
            let dist = count_auto(&product, &w, &opts()).map_err(|e| e.to_string())?;
            let minus_one = central_involution(&q8);
            for z in 0..3usize {
                let idx = minus_one.index() + 8 * z;
                let e = product.element(idx).map_err(|e| e.to_string())?;
                check(&format!("N((-1, z{z}))"), dist.count(e).clone(), big(6))?;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_11_reduction_soundness() {
    criterion(
        11,
        "commutator-word reduction preserves distributions",
        || {
            let w = parse_word("[x1,x2]^6 [x3,x4]^4", None).map_err(|e| e.to_string())?;
            let sig = class2_signature(&w);
            let nf = reduce_type1(&sig, 2).map_err(|e| e.to_string())?;
            check("exponents", nf.exponents(), vec![1, 2])?;
            let canonical = match &nf {
                NormalForm::Type1 { .. } => nf.canonical_word().map_err(|e| e.to_string())?,
                _ => return Err("expected type-1 form".into()),
            };
            // [x1,x2]^2 [x3,x4]^4 as a word.
            let expected = parse_word("[x1,x2]^2 [x3,x4]^4", None).map_err(|e| e.to_string())?;
            check("canonical word", canonical.clone(), expected)?;
            for name in ["q8", "d4", "modular16"] {
                let g = catalog(name).map_err(|e| e.to_string())?;
                let before = count_auto(&g, &w, &opts()).map_err(|e| e.to_string())?;
                let after = count_auto(&g, &canonical, &opts()).map_err(|e| e.to_string())?;
                check(
                    &format!("distribution preserved on {name}"),
                    before == after,
                    true,
                )?;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_12_abelian_solver() {
    criterion(
        12,
        "abelian power-product solver vs exhaustive counting",
        || {
            // Frozen example: 2 z1 + 2 z2 = 0 in Z4 has 8 solutions.
            let count =
                count_abelian_power_product(&[4], &[BigInt::from(2), BigInt::from(2)], &[0])
                    .map_err(|e| e.to_string())?;
            check("m=4 a=(2,2) c=0", count, big(8))?;

            // All abelian groups of order <= 1000 as multisets of prime-power
            // cyclic factors; 100 deterministic random probes across them.
            let mut groups: Vec<Vec<u64>> = Vec::new();
            fn extend(
                current: &mut Vec<u64>,
                min_factor: u64,
                order: u64,
                out: &mut Vec<Vec<u64>>,
            ) {
                out.push(current.clone());
                let mut q = min_factor;
                while order * q <= 1000 {
                    // q runs over prime powers >= min_factor.
                    if wordlab::group::factorize(q).len() == 1 {
                        current.push(q);
                        extend(current, q, order * q, out);
                        current.pop();
                    }
                    q += 1;
                }
            }
            extend(&mut Vec::new(), 2, 1, &mut groups);
            groups.retain(|g| !g.is_empty());
            check("family is large", groups.len() > 1000, true)?;

            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xabe11a);
            let mut probes = 0;
            while probes < 100 {
                let invariants = &groups[rng.random_range(0..groups.len())];
                let order: u64 = invariants.iter().product();
                // Keep the exhaustive oracle affordable: order^k <= 2 * 10^6.
                let max_k = (1..=3usize)
                    .filter(|&k| (order as u128).pow(k as u32) <= 2_000_000)
                    .max()
                    .unwrap_or(1);
                let k = rng.random_range(0..=max_k);
                let a: Vec<i64> = (0..k).map(|_| rng.random_range(-8i64..=8)).collect();
                let target: Vec<u64> = invariants.iter().map(|&m| rng.random_range(0..m)).collect();
                let abig: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
                let fast = count_abelian_power_product(invariants, &abig, &target)
                    .map_err(|e| e.to_string())?;
                let slow = count_abelian_exhaustive(invariants, &a, &target);
                if fast != BigUint::from(slow) {
                    return Err(format!(
                    "solver mismatch on {invariants:?}, a={a:?}, c={target:?}: {fast} vs {slow}"
                ));
                }
                probes += 1;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_13_uniformity() {
    criterion(
        13,
        "x1 [x2,x3] is surjective with constant fiber |G|^2",
        || {
            for name in ["q8", "heisenberg(3)"] {
                let g = catalog(name).map_err(|e| e.to_string())?;
                let w = parse_word("x1 [x2,x3]", None).map_err(|e| e.to_string())?;
                let report =
                    check_uniformity_surjective(&g, &w, &opts()).map_err(|e| e.to_string())?;
                check(
                    &format!("verdict on {name}"),
                    report.verdict,
                    Verdict::Holds,
                )?;
                let dist = count_auto(&g, &w, &opts()).map_err(|e| e.to_string())?;
                let expected = big(g.order()) * big(g.order());
                check(
                    &format!("constant fiber |G|^2 on {name}"),
                    g.elements().all(|e| *dist.count(e) == expected),
                    true,
                )?;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_14_determinism() {
    criterion(
        14,
        "sweep exports byte-identical with 1 and 8 workers",
        || {
            let one = oracle_sweep(1)?;
            let eight = oracle_sweep(8)?;
            check("export count", one.len(), eight.len())?;
            for (a, b) in one.iter().zip(&eight) {
                if a != b {
                    return Err(format!("exports differ:\n  {a}\n  {b}"));
                }
            }
            Ok(())
        },
    );
}

/// Not part of the numbered list, but the classification criteria must
/// also agree on a synthetic non-example (delta at the identity).
#[test]
fn synthetic_delta_is_neither() {
    let g = catalog("cyclic(2)").unwrap();
    let t = character_table(&g).unwrap();
    let f =
        wordlab::chars::fourier_of_class_function(&t, &[BigInt::one(), BigInt::zero()]).unwrap();
    let class = classify_class_function(&g, &t, &f, ClassFunctionSource::Synthetic).unwrap();
    assert_eq!(class, Classification::Neither);
    let _ = BTreeMap::<String, String>::new();
}
