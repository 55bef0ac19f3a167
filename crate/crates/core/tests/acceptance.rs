//! End-to-end acceptance suite. One test per criterion; every check is an
//! exact equality (the underlying statements are theorems, not estimates).
//! Run with `cargo test -p altcoh --test acceptance -- --nocapture` to see
//! the per-criterion pass lines.

use altcoh::elemab::{self, IndexVector};
use altcoh::exterior;
use altcoh::fplin::{self, FpMatrix};
use altcoh::monomial::{self, GroupTable, SigmaGroup};
use altcoh::permgrp::{weyl_action, PermGroup};
use altcoh::stablecoh::{self, WeylSource};
use altcoh::DEFAULT_ENUM_CAP as CAP;

fn pass(criterion: &str) {
    println!("acceptance {criterion}: PASS");
}

/// Criterion 1 — Ore suite over Σ_3(C_3) (order 162 in S_9) and Σ_2(S_3)
/// (order 72): decomposition reassembly, conjugacy criterion against brute
/// force on all ordered pairs, and the centralizer order formula against
/// brute-force centralizer sizes.
#[test]
fn criterion_1_ore_suite() {
    let s33 = SigmaGroup::new(GroupTable::cyclic(3), 3).unwrap();
    assert_eq!(s33.order(), 162);
    assert_eq!(s33.embed_degree(), 9);
    let report = monomial::ore_report(&s33, CAP).unwrap();
    assert_eq!(report.conjugacy_pairs, 162 * 162);
    assert!(report.all_ok(), "Σ_3(C_3): {report:?}");

    let s23 = SigmaGroup::new(GroupTable::symmetric(3), 2).unwrap();
    assert_eq!(s23.order(), 72);
    let report = monomial::ore_report(&s23, CAP).unwrap();
    assert_eq!(report.conjugacy_pairs, 72 * 72);
    assert!(report.all_ok(), "Σ_2(S_3): {report:?}");

    pass("1 (Ore suite: decomposition, conjugacy, centralizer orders)");
}

/// Criterion 2 — Weyl suite: W_{S_9}(T_{2,2}) is all of GL_2(F_3) (order
/// 48), W_{A_9}(T_{2,2}) equals GL_2^+(F_3) (order 24), and |W_{A_{3k}}(E)|
/// = k!·2^{k−1} for k = 1, 2, 3.
#[test]
fn criterion_2_weyl_suite() {
    let t22 = elemab::build_t(&IndexVector::new(3, vec![0, 1]).unwrap());

    let s9 = PermGroup::symmetric(9);
    let w = weyl_action(&s9, &t22, CAP).unwrap();
    assert_eq!(w.matrices.len(), 48);
    assert_eq!(w.matrices, fplin::gl_full(2, 3, CAP).unwrap());

    let a9 = PermGroup::alternating(9);
    let w = weyl_action(&a9, &t22, CAP).unwrap();
    assert_eq!(w.matrices.len(), 24);
    assert_eq!(w.matrices, fplin::gl_plus(2, 3, CAP).unwrap());
    // |W|·|kernel| = |N|, and the kernel of N → Aut(T) is T itself
    assert_eq!(w.matrices.len() as u64 * w.kernel_order, w.normalizer_order);
    assert_eq!(w.kernel_order, 9);
    // the matrix set is a group: closed under products, contains the identity
    let as_set: std::collections::BTreeSet<&FpMatrix> = w.matrices.iter().collect();
    assert!(as_set.contains(&FpMatrix::identity(3, 2).unwrap()));
    for a in &w.matrices {
        for b in &w.matrices {
            assert!(as_set.contains(&a.mul(b)));
        }
    }

    for k in 1..=3usize {
        let n = 3 * k;
        let e = elemab::detecting_subgroup(n as u64, 3).unwrap();
        let w = weyl_action(&PermGroup::alternating(n), &e, CAP).unwrap();
        let expected = (1..=k).product::<usize>() * (1 << (k - 1));
        assert_eq!(w.matrices.len(), expected, "|W_A{n}(E)|");
        // the concrete Weyl group equals the signed-permutation description
        let abstract_gens = exterior::weyl_alternating_action(k);
        let abstract_group: Vec<FpMatrix> = if abstract_gens.is_empty() {
            vec![FpMatrix::identity(3, k).unwrap()]
        } else {
            fplin::matrix_closure(&abstract_gens, CAP).unwrap()
        };
        assert_eq!(w.matrices, abstract_group, "abstract vs concrete, k = {k}");
    }

    pass("2 (Weyl suite: GL_2, GL_2^+, k!·2^(k-1))");
}

/// Criterion 3 — for p = 3 and n ∈ {3,4,5,6,7,9,10} the closed-form table
/// equals the per-degree invariant dimensions of the exterior algebra under
/// the concretely computed Weyl action; n = 9 gives [1, 0, 0, 1].
#[test]
fn criterion_3_main_theorem_tables() {
    for n in [3u64, 4, 5, 6, 7, 9, 10] {
        let report = stablecoh::verify_theorem(n, 3, CAP).unwrap();
        assert_eq!(
            report.weyl_source,
            WeylSource::NormalizerEnumeration,
            "n = {n}"
        );
        assert_eq!(report.unverified_degrees, 0, "n = {n}");
        assert!(report.all_pass, "n = {n}: {report:?}");
        for row in &report.rows {
            assert_eq!(
                Some(row.formula_dim),
                row.invariant_dim,
                "n = {n}, d = {}",
                row.degree
            );
        }
        if n == 9 {
            let dims: Vec<u64> = report.rows.iter().map(|r| r.formula_dim).collect();
            assert_eq!(dims, vec![1, 0, 0, 1]);
        }
    }
    pass("3 (main theorem: formula tables match Weyl invariants, p = 3)");
}

/// Criterion 4 — vanishing for p ≥ 5: for (5,5), (10,5), (7,7) both the
/// formula and the independent invariant computation give 0 in every
/// positive degree.
#[test]
fn criterion_4_vanishing_p_ge_5() {
    for (n, p) in [(5u64, 5u64), (10, 5), (7, 7)] {
        let report = stablecoh::verify_theorem(n, p, CAP).unwrap();
        assert_eq!(
            report.weyl_source,
            WeylSource::NormalizerEnumeration,
            "({n},{p})"
        );
        assert!(report.all_pass, "({n},{p}): {report:?}");
        for row in &report.rows {
            if row.degree > 0 {
                assert_eq!(row.formula_dim, 0, "({n},{p}) d = {}", row.degree);
                assert_eq!(row.invariant_dim, Some(0), "({n},{p}) d = {}", row.degree);
            }
        }
    }
    pass("4 (vanishing for p >= 5 on both routes)");
}

/// Criterion 5 — closed-system checks over all 181440 conjugators of A_9:
/// (E, Syl_3(A_9), A_9) and (T_{2,2}, Syl_3(A_9), A_9).
#[test]
fn criterion_5_closed_system() {
    let a9 = PermGroup::alternating(9);
    assert_eq!(a9.order(), 181_440);
    let syl = elemab::sylow_generators(9, 3).unwrap();
    assert_eq!(syl.order(), 81);

    let e = elemab::detecting_subgroup(9, 3).unwrap();
    assert!(syl.contains_subgroup(&e.group()));
    assert!(elemab::closed_system_check(&e, &syl, &a9, CAP).unwrap());

    let t22 = elemab::build_t(&IndexVector::new(3, vec![0, 1]).unwrap());
    assert!(syl.contains_subgroup(&t22.group()));
    assert!(elemab::closed_system_check(&t22, &syl, &a9, CAP).unwrap());

    pass("5 (closed system over all 181440 conjugators)");
}

/// Criterion 6 — the p = 2 table: A_{2m} and A_{2m+1} agree for m ≤ 6, the
/// support is {0} ∪ {even d ≤ 2m} ∪ {odd 3 ≤ d ≤ 2m+1} with every dimension
/// 1, and in particular dim H^1 = 0 and dim H^3 = 1 for A_8.
#[test]
fn criterion_6_p2_table() {
    // golden table transcribed from the basis list {w_{2i}, u_1∧w_{2i}}
    for m in 0..=6u64 {
        let golden: Vec<u64> = (0..=2 * m + 3)
            .map(|d| {
                let even = d % 2 == 0 && d <= 2 * m;
                let odd = d % 2 == 1 && (3..=2 * m + 1).contains(&d);
                u64::from(even || odd)
            })
            .collect();
        for n in [2 * m, 2 * m + 1] {
            if n == 0 {
                continue;
            }
            for (d, &want) in golden.iter().enumerate() {
                let got = stablecoh::stable_dim(n, 2, d as u64).unwrap();
                assert_eq!(got, want, "n = {n}, d = {d}");
            }
        }
        if m >= 1 {
            for d in 0..=2 * m + 3 {
                assert_eq!(
                    stablecoh::stable_dim(2 * m, 2, d).unwrap(),
                    stablecoh::stable_dim(2 * m + 1, 2, d).unwrap()
                );
            }
        }
    }
    assert_eq!(stablecoh::stable_dim(8, 2, 1).unwrap(), 0);
    assert_eq!(stablecoh::stable_dim(8, 2, 3).unwrap(), 1);
    pass("6 (p = 2 golden table, pairs agree for m <= 6)");
}

/// Criterion 7 — the Z' lemma: for at least 20 deterministically sampled
/// elements of 3-power order in C_3 ≀ A_3 and C_3 ≀ A_4, Z'(x) is contained
/// in the brute-force centralizer and the index is a power of 2.
#[test]
fn criterion_7_zprime() {
    let mut samples = 0u64;
    for m in [3usize, 4] {
        let sigma = SigmaGroup::new(GroupTable::cyclic(3), m).unwrap();
        let wreath_alt = sigma.wreath_alternating();
        let eligible: Vec<_> = sigma
            .elements(CAP)
            .unwrap()
            .into_iter()
            .filter(|x| {
                if !x.sigma.is_even() {
                    return false;
                }
                let mut o = sigma.element_order(x);
                while o.is_multiple_of(3) {
                    o /= 3;
                }
                o == 1
            })
            .collect();
        assert!(eligible.len() >= 10);
        let step = (eligible.len() / 12).max(1);
        for x in eligible.iter().step_by(step) {
            let zprime = sigma.zprime(x, 3).unwrap();
            let centralizer = wreath_alt
                .centralizer(&sigma.embed_element(x), CAP)
                .unwrap();
            assert!(
                centralizer.contains_subgroup(&zprime),
                "Z' must sit inside the centralizer"
            );
            let index = centralizer.order() / zprime.order();
            assert_eq!(centralizer.order() % zprime.order(), 0);
            assert!(
                index.is_power_of_two(),
                "index {index} must be a power of 2"
            );
            samples += 1;
        }
    }
    assert!(samples >= 20, "only {samples} samples checked");
    pass("7 (Z' lemma: containment and power-of-2 index)");
}

/// Criterion 8 — the exact-arithmetic property battery, headless: action
/// homomorphism law, top-form determinant law, rref idempotence,
/// rank–nullity, and regular-representation freeness.
#[test]
fn criterion_8_property_battery() {
    // action law over all of GL_2(F_3) on a fixed element
    let gl = fplin::gl_full(2, 3, CAP).unwrap();
    let a = exterior::ExtElement::from_terms(3, 2, &[(0b01, 1), (0b10, 2), (0b11, 1)]);
    for g in &gl {
        for h in &gl {
            assert_eq!(
                exterior::act(g, &exterior::act(h, &a).unwrap()).unwrap(),
                exterior::act(&h.mul(g), &a).unwrap()
            );
        }
    }
    // top-form determinant law
    let top = exterior::ExtElement::top_form(3, 2);
    for g in &gl {
        assert_eq!(exterior::act(g, &top).unwrap(), top.scale(g.det()));
    }
    // rref idempotence and rank–nullity over every 2x2 matrix mod 3
    for code in 0..81u64 {
        let entries = vec![code % 3, code / 3 % 3, code / 9 % 3, code / 27 % 3];
        let m = FpMatrix::new(3, 2, 2, entries).unwrap();
        let r = fplin::rref(&m);
        assert_eq!(fplin::rref(&r), r);
        assert_eq!(fplin::rank(&m) + fplin::kernel(&m).dim(), 2);
    }
    // regular-representation freeness and transitivity
    for factors in [vec![3u64], vec![9], vec![3, 3], vec![5], vec![3, 9]] {
        let g = elemab::regular_embedding(&factors, CAP).unwrap();
        let degree = g.degree();
        assert_eq!(g.order(), degree as u64);
        assert_eq!(g.orbits().len(), 1, "regular action is transitive");
        for x in g.elements(CAP).unwrap() {
            if !x.is_identity() {
                assert!((0..degree).all(|pt| x.apply(pt) != pt), "free action");
            }
        }
    }
    pass("8 (exact property battery)");
}

/// Supporting exactness check: the chain order and the closure enumeration
/// agree on the embedded monomial groups used above.
#[test]
fn embedded_groups_closure_agreement() {
    let s33 = SigmaGroup::new(GroupTable::cyclic(3), 3).unwrap().embed();
    assert_eq!(s33.order(), s33.closure_order(CAP).unwrap());
    let s23 = SigmaGroup::new(GroupTable::symmetric(3), 2)
        .unwrap()
        .embed();
    assert_eq!(s23.order(), s23.closure_order(CAP).unwrap());
    let syl = elemab::sylow_generators(12, 3).unwrap();
    assert_eq!(syl.order(), syl.closure_order(CAP).unwrap());
}

/// Supporting spot check frozen from the enumeration oracle: the normalizer
/// of T_{2,2} in A_9 has order 216 = |GL_2^+(F_3)|·|T_{2,2}|.
#[test]
fn normalizer_of_t22_in_a9() {
    let a9 = PermGroup::alternating(9);
    let t22 = elemab::build_t(&IndexVector::new(3, vec![0, 1]).unwrap());
    let n = a9.normalizer(&t22.group(), CAP).unwrap();
    assert_eq!(n.order(), 216);
}

/// Supporting Ore check with length-3 cycles over a nonabelian base group:
/// Σ_3(S_3) of order 1296 exercises the direction convention of the
/// determinant product, which only matters when cycles are longer than 2
/// and H is noncommutative.
#[test]
fn ore_suite_sigma3_s3() {
    let s = SigmaGroup::new(GroupTable::symmetric(3), 3).unwrap();
    assert_eq!(s.order(), 1296);
    let report = monomial::ore_report(&s, CAP).unwrap();
    assert!(report.all_ok(), "Σ_3(S_3): {report:?}");
}

/// Supporting Weyl-order check for n ≡ 1 (mod 3): the extension structure
/// gives the same order k!·2^{k−1} as for n = 3k.
#[test]
fn weyl_orders_for_n_congruent_one() {
    for (n, k) in [(4usize, 1usize), (7, 2), (10, 3)] {
        let e = elemab::detecting_subgroup(n as u64, 3).unwrap();
        let w = weyl_action(&PermGroup::alternating(n), &e, CAP).unwrap();
        let expected = (1..=k).product::<usize>() * (1 << (k - 1));
        assert_eq!(w.matrices.len(), expected, "n = {n}");
    }
}
