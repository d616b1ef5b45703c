//! End-to-end acceptance suite: one test per release criterion.
//!
//! The harness's per-test `ok`/`FAILED` line is the verdict for each
//! criterion; run with `--nocapture` to see the one-line summaries the
//! tests print.  Every check here is exact (integer or rational equality,
//! zero tolerance); the stated wall-clock budgets are asserted where the
//! criterion names one.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use fiveq::characters::mn_character;
use fiveq::hilbert::{
    character_series, dim_invariants, dim_invariants_k, validate_table, HilbertSeriesData,
    TableReading,
};
use fiveq::jacobian::{eval_invariant, jacobian_rank, NamedInvariant};
use fiveq::partitions::Partition;
use fiveq::poly::{Monomial, Poly};
use fiveq::residue::{naive_constant_term_dimension, residue_series};
use fiveq::scalar::{qint, QRat, QuadExt, Scalar};
use fiveq::state::{
    apply_slocc, fingerprint, osterloh_state, random_local_operation, random_rational_state,
    seeded_rng, FINGERPRINT_ROWS,
};
use fiveq::transvect::{
    covariant_chain, discriminant, ground_form_from_state, slot_quadratic, transvect, Covariant,
    TransvectionSignature,
};
use fiveq::vars::{amp_var, decode_slot_var, slot_var, Slot, VarCopy};

/// Criterion 1 — Hilbert coefficients, three-way: for every even d ≤ 16 the
/// character-sum dimension equals the Taylor coefficient of the printed
/// rational series (corrected reading); in particular d=4 → 5 and d=6 → 1.
/// Budget: under 2 minutes.
#[test]
fn criterion_1_character_dimensions_match_table_series_through_16() {
    let start = Instant::now();
    let max_degree = 16u32;
    let expansion = HilbertSeriesData::corrected().series_expand(max_degree);
    for d in (0..=max_degree).step_by(2) {
        let by_character = dim_invariants(d).unwrap();
        let by_table = expansion[d as usize].clone();
        assert_eq!(by_character, by_table, "dimension mismatch at degree {d}");
    }
    assert_eq!(dim_invariants(4).unwrap(), BigInt::from(5));
    assert_eq!(dim_invariants(6).unwrap(), BigInt::from(1));
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "budget exceeded: {elapsed:?}");
    println!(
        "criterion 1: character sums equal the table expansion for even d ≤ {max_degree}; \
         d=4 → 5, d=6 → 1 ({elapsed:?})"
    );
}

/// Criterion 2 — Table validation: numerator degree 104, even support,
/// palindromy after repairing the single anomalous coefficient, and
/// P(1) = 3 014 400 under exactly one of the two readings; the report names
/// which.
#[test]
fn criterion_2_table_validation_accepts_exactly_one_reading() {
    let report = validate_table(16).unwrap();
    assert_eq!(report.numerator_degree, 104);
    assert!(report.degree_ok);
    assert!(report.even_support);
    assert_eq!(
        report.verbatim_palindrome_failures,
        vec![(42, 62)],
        "the verbatim reading must fail palindromy at exactly the degree-42/62 pair"
    );
    assert!(report.corrected_palindrome_ok);
    assert_eq!(report.p1_target, BigInt::from(3_014_400));
    assert_eq!(report.p1_corrected, report.p1_target);
    assert_ne!(report.p1_verbatim, report.p1_target);
    assert_eq!(report.accepted_reading, Some(TableReading::Corrected));
    assert!(report.all_ok());
    println!(
        "criterion 2: degree 104, even support, palindromic after the a42 repair; \
         accepted reading: corrected (P(1) = {}; verbatim P(1) = {})",
        report.p1_corrected, report.p1_verbatim
    );
}

/// Criterion 3 — fingerprint grid: all 36 cells (9 rows × 4 benchmark
/// states) match the published evaluation grid exactly.  Budget: under
/// 5 minutes.
#[test]
fn criterion_3_fingerprint_grid_matches_all_36_cells() {
    let start = Instant::now();
    // Row order Dx, Dy, Dz, Dt, Du, F, Bx, C31111, E11111.
    let expected: [(u8, [bool; 9]); 4] = [
        (1, [true, true, true, true, true, false, true, false, false]),
        (2, [true, true, false, false, false, false, true, false, true]),
        (3, [false, false, false, false, false, false, true, true, false]),
        (4, [false, false, false, false, false, false, true, true, true]),
    ];
    let mut cells = 0usize;
    for (k, rows) in expected {
        let fp = fingerprint(&osterloh_state(k).unwrap()).unwrap();
        for (i, label) in FINGERPRINT_ROWS.iter().enumerate() {
            assert_eq!(fp.rows[i], rows[i], "state {k}, row {label}");
            cells += 1;
        }
    }
    assert_eq!(cells, 36);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "budget exceeded: {elapsed:?}");
    println!("criterion 3: all 36 grid cells reproduced exactly ({elapsed:?})");
}

/// Criterion 4 — invariance: 25 seeded random rational states (against a
/// fixed seeded operation) and 25 seeded random unimodular 5-tuples
/// (against a fixed seeded state); Dx…Du and F unchanged in every case —
/// 50 pairs × 6 invariants = 300 exact equalities.
#[test]
fn criterion_4_three_hundred_exact_invariance_equalities() {
    let start = Instant::now();
    let mut equalities = 0usize;

    let mut check_pair = |psi: &fiveq::state::PureState5, g: &fiveq::state::LocalOperation| {
        let moved = apply_slocc(g, psi);
        for inv in NamedInvariant::ALL {
            let before = eval_invariant(inv, psi).unwrap();
            let after = eval_invariant(inv, &moved).unwrap();
            assert_eq!(before, after, "{} changed under the group action", inv.name());
            equalities += 1;
        }
    };

    let fixed_op = random_local_operation(&mut seeded_rng(403), 2);
    let mut state_rng = seeded_rng(401);
    for _ in 0..25 {
        let psi = random_rational_state(&mut state_rng, 2);
        check_pair(&psi, &fixed_op);
    }

    let fixed_state = random_rational_state(&mut seeded_rng(404), 2);
    let mut op_rng = seeded_rng(402);
    for _ in 0..25 {
        let g = random_local_operation(&mut op_rng, 2);
        check_pair(&fixed_state, &g);
    }

    assert_eq!(equalities, 300);
    println!(
        "criterion 4: 300/300 exact invariance equalities \
         (25 states × fixed op + fixed state × 25 ops, 6 invariants each; {:?})",
        start.elapsed()
    );
}

/// Criterion 5 — independence: the Jacobian of {Dx,…,Du} has rank 5 and of
/// {Dx,…,Du,F} rank 6 at five seeded rational points, exactly over ℚ.
#[test]
fn criterion_5_jacobian_ranks_are_5_and_6_at_five_seeded_points() {
    let mut rng = seeded_rng(501);
    let mut points = 0usize;
    for i in 0..5 {
        let psi = random_rational_state(&mut rng, 3);
        let quartic_rank = jacobian_rank(&NamedInvariant::QUARTICS, &psi).unwrap();
        let full_rank = jacobian_rank(&NamedInvariant::ALL, &psi).unwrap();
        assert_eq!(quartic_rank, 5, "point {i}: rank of {{Dx..Du}}");
        assert_eq!(full_rank, 6, "point {i}: rank of {{Dx..Du, F}}");
        points += 1;
    }
    assert!(points >= 5);
    println!("criterion 5: rank(Dx..Du) = 5 and rank(Dx..Du, F) = 6 at {points} seeded points");
}

/// Criterion 6 — multidegree bookkeeping: the transvection chain produces
/// covariants of multidegree (2,2,0,2,0), (3,1,1,1,1), (2,2,2,0,0),
/// (1,1,1,1,1) and a final scalar of amplitude degree 6.  Asserted
/// structurally: the slot degrees are recomputed from the body polynomials,
/// not read back from bookkeeping fields alone.
#[test]
fn criterion_6_chain_multidegrees_and_final_scalar() {
    let psi = random_rational_state(&mut seeded_rng(601), 2);
    let f = ground_form_from_state(&psi).unwrap();
    let chain = covariant_chain(&f).unwrap();

    let body_multidegree = |c: &Covariant<QuadExt>| -> [u32; 5] {
        let mut out = [0u32; 5];
        for slot in Slot::ALL {
            let d = c
                .body()
                .uniform_degree_where(|v| {
                    matches!(decode_slot_var(v), Some((s, VarCopy::Base, _)) if s == slot)
                })
                .expect("chain covariant body is homogeneous per slot");
            out[slot.index()] = u32::try_from(d).expect("non-negative slot degree");
        }
        out
    };

    let stages: [(&str, &Covariant<QuadExt>, [u32; 5], u32); 4] = [
        ("B22020", &chain.b22020, [2, 2, 0, 2, 0], 2),
        ("C31111", &chain.c31111, [3, 1, 1, 1, 1], 3),
        ("D22200", &chain.d22200, [2, 2, 2, 0, 0], 4),
        ("E11111", &chain.e11111, [1, 1, 1, 1, 1], 5),
    ];
    for (name, cov, degrees, a_deg) in stages {
        assert!(!cov.is_zero(), "{name} vanished on a generic state");
        assert_eq!(cov.multidegree(), degrees, "{name} multidegree");
        assert_eq!(body_multidegree(cov), degrees, "{name} body degrees");
        assert_eq!(cov.a_degree(), a_deg, "{name} amplitude degree");
    }

    let final_scalar = transvect(
        &chain.e11111,
        f.covariant(),
        TransvectionSignature::new([1, 1, 1, 1, 1]),
    )
    .unwrap();
    assert_eq!(final_scalar.multidegree(), [0; 5]);
    assert_eq!(final_scalar.a_degree(), 6);
    assert!(final_scalar.as_scalar().is_some(), "F is a scalar");
    println!(
        "criterion 6: chain multidegrees (2,2,0,2,0) → (3,1,1,1,1) → (2,2,2,0,0) → (1,1,1,1,1) \
         and a final amplitude-degree-6 scalar, recomputed from the bodies"
    );
}

/// Criterion 7 — residue engine: the iterated-residue series equals the
/// character series exactly through degree 12 for k = 1, 2, 3, 4, and the
/// naive constant-term reading (which would give 122 at k=5, d=2 where the
/// true dimension is 0) is pinned as a falsifier.  Budget: k ≤ 3 in
/// seconds, k = 4 under 10 minutes.
#[test]
fn criterion_7_residue_series_matches_characters_and_falsifier_holds() {
    let small_start = Instant::now();
    for k in 1..=3u32 {
        let by_residue = residue_series(k as usize, 12).unwrap();
        let by_character = character_series(k, 12).unwrap();
        for (d, expected) in by_character.iter().enumerate() {
            assert_eq!(
                by_residue[d],
                QRat::from_integer(expected.clone()),
                "k={k}, degree {d}"
            );
        }
    }
    let small_elapsed = small_start.elapsed();
    assert!(small_elapsed < Duration::from_secs(60), "k ≤ 3 budget exceeded: {small_elapsed:?}");

    let k4_start = Instant::now();
    let by_residue = residue_series(4, 12).unwrap();
    let by_character = character_series(4, 12).unwrap();
    for (d, expected) in by_character.iter().enumerate() {
        assert_eq!(
            by_residue[d],
            QRat::from_integer(expected.clone()),
            "k=4, degree {d}"
        );
    }
    let k4_elapsed = k4_start.elapsed();
    assert!(k4_elapsed < Duration::from_secs(600), "k = 4 budget exceeded: {k4_elapsed:?}");

    // Falsifier: summing naive geometric expansions over all sign vectors
    // (no contour selection) overcounts — 122 at k=5, d=2 — while the true
    // dimension in that degree is 0.
    let naive = naive_constant_term_dimension(5, 2).unwrap();
    let true_dim = dim_invariants_k(2, 5).unwrap();
    assert_eq!(naive, BigInt::from(122));
    assert!(true_dim.is_zero());

    println!(
        "criterion 7: residue series == character series through degree 12 for k = 1..4 \
         (k ≤ 3 in {small_elapsed:?}, k = 4 in {k4_elapsed:?}); \
         naive reading gives 122 at k=5, d=2 vs true dimension 0"
    );
}

/// Criterion 8 — oracle hygiene: every pinned example value is recomputed
/// here by an independent route, so no constant is its own only witness.
///   (a) the 2-slot (1,1) transvectant of a generic bilinear form equals
///       twice its determinant, symbolically;
///   (b) the x-slot quadratic of the first benchmark state is exactly
///       2·x₀x₁, whose discriminant gives Dx = 4;
///   (c) the χ^(2,2) character row is re-derived from the action of S₄ on
///       the three pair-partitions of {0,1,2,3} (fix count − 1), brute
///       forced over all 24 permutations;
///   (d) h₈ = 36 and h₁₀ = 15 via both the character sum and the table
///       expansion;
///   (e) the k ≤ 4 series equal their classical closed forms, expanded
///       here by plain geometric-series convolution.
#[test]
fn criterion_8_every_pinned_value_has_an_independent_witness() {
    // (a) 2-slot transvectant is twice the determinant, symbolically.
    let a = |i: usize, j: usize| Poly::<QRat>::var(amp_var(i * 16 + j * 8));
    let mut body: Poly<Poly<QRat>> = Poly::zero();
    for i in 0..2 {
        for j in 0..2 {
            let m = Monomial::var(slot_var(Slot::X, VarCopy::Base, i))
                .mul(&Monomial::var(slot_var(Slot::Y, VarCopy::Base, j)));
            body.add_term(m, a(i, j)).unwrap();
        }
    }
    let bilinear = Covariant::new(body, 1).unwrap();
    let res = transvect(
        &bilinear,
        &bilinear,
        TransvectionSignature::new([1, 1, 0, 0, 0]),
    )
    .unwrap();
    let det = a(0, 0)
        .mul(&a(1, 1))
        .unwrap()
        .sub(&a(0, 1).mul(&a(1, 0)).unwrap())
        .unwrap();
    assert_eq!(res.as_scalar().unwrap(), det.scale(&qint(2)).unwrap());

    // (b) Dx of the first benchmark state: the x-slot quadratic is exactly
    // 2·x₀x₁ (computed, then matched against the hand value), and the
    // discriminant of c₁·x₀x₁ is c₁², giving 4.
    let phi1 = osterloh_state(1).unwrap();
    let ground = ground_form_from_state(&phi1).unwrap();
    let bx = slot_quadratic(&ground, Slot::X).unwrap();
    let x0x1 = Monomial::var(slot_var(Slot::X, VarCopy::Base, 0))
        .mul(&Monomial::var(slot_var(Slot::X, VarCopy::Base, 1)));
    assert_eq!(bx.body(), &Poly::term(x0x1, QuadExt::from_int(2)));
    assert_eq!(discriminant(&bx).unwrap(), QuadExt::from_int(4));
    assert_eq!(
        eval_invariant(NamedInvariant::Dx, &phi1).unwrap(),
        QuadExt::from_int(4)
    );

    // (c) χ^(2,2): border-strip recursion vs the pairing-action oracle.
    let chi22 = |mu: &Partition| mn_character(&Partition::new(vec![2, 2]).unwrap(), mu).unwrap();
    let pinned: [(&[u32], i64); 5] = [
        (&[1, 1, 1, 1], 2),
        (&[2, 1, 1], 0),
        (&[2, 2], 2),
        (&[3, 1], -1),
        (&[4], 0),
    ];
    for (parts, value) in pinned {
        let mu = Partition::new(parts.to_vec()).unwrap();
        assert_eq!(chi22(&mu), value, "pinned χ^(2,2) at {mu}");
    }
    // S₄ permutes the three pairings of {0,1,2,3}; that permutation
    // character is triv + χ^(2,2), so χ^(2,2)(σ) = fix(σ) − 1.
    let pairings = [[1usize, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..4 {
        let mut next = Vec::new();
        for p in perms {
            for pos in 0..=i {
                let mut q = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        perms = next;
    }
    assert_eq!(perms.len(), 24);
    let cycle_type = |perm: &[usize]| {
        let mut seen = [false; 4];
        let mut cycles = Vec::new();
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            let (mut len, mut i) = (0u32, start);
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|x, y| y.cmp(x));
        cycles
    };
    for sigma in &perms {
        let fixed = pairings
            .iter()
            .filter(|&&pairing| (0..4).all(|i| pairing[sigma[i]] == sigma[pairing[i]]))
            .count() as i64;
        let mu = Partition::new(cycle_type(sigma)).unwrap();
        assert_eq!(chi22(&mu), fixed - 1, "pairing oracle at cycle type {mu}");
    }

    // (d) h₈ = 36 and h₁₀ = 15 by two independent routes.
    let expansion = HilbertSeriesData::corrected().series_expand(10);
    assert_eq!(dim_invariants(8).unwrap(), BigInt::from(36));
    assert_eq!(expansion[8], BigInt::from(36));
    assert_eq!(dim_invariants(10).unwrap(), BigInt::from(15));
    assert_eq!(expansion[10], BigInt::from(15));

    // (e) k ≤ 4 series vs classical closed forms, expanded by convolution:
    // 1, 1/(1−t²), 1/(1−t⁴), 1/((1−t²)(1−t⁴)²(1−t⁶)).
    let geometric_expand = |dens: &[usize], n: usize| -> Vec<BigInt> {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(1);
        for &a in dens {
            for i in a..=n {
                let prev = coeffs[i - a].clone();
                coeffs[i] += prev;
            }
        }
        coeffs
    };
    let closed_forms: [(u32, &[usize]); 4] =
        [(1, &[]), (2, &[2]), (3, &[4]), (4, &[2, 4, 4, 6])];
    for (k, dens) in closed_forms {
        let expected = geometric_expand(dens, 12);
        let actual = character_series(k, 12).unwrap();
        assert_eq!(actual, expected, "closed form at k={k}");
    }

    println!(
        "criterion 8: 2·det transvectant, Dx(first benchmark) = 4, the χ^(2,2) row, \
         h₈ = 36, h₁₀ = 15, and the k ≤ 4 closed forms all recomputed independently"
    );
}
