//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! All tolerances are exact (integer arithmetic); there are no numeric
//! thresholds to calibrate.

use braidhom::coxeter::CoxeterSystem;
use braidhom::linalg::{annihilator_exponent, char_poly, homology};
use braidhom::matrix::IntMatrix;
use braidhom::oracle::{compare_homology, fox_resolution_complex};
use braidhom::representations::{
    apply_rep, burau_minus1, find_intertwiner, symplectic_rep, trivial_rep, RepresentationSpec,
};
use braidhom::salvetti::{build_complex, build_negative_control, specialize, verify_d_squared};
use braidhom::suites::{suite_double_cover, suite_splitting_lemma, suite_torsion_theorem};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

fn report(criterion: &str, passed: bool, detail: String) {
    println!("[{}] {criterion} — {detail}", if passed { "PASS" } else { "FAIL" });
}

fn random_word(
    rng: &mut rand_chacha::ChaCha8Rng,
    system: CoxeterSystem,
    max_len: usize,
) -> braidhom::braid::BraidWord {
    let len = rng.gen_range(0..=max_len);
    let signed: Vec<i64> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=system.rank) as i64;
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    braidhom::braid::BraidWord::from_signed(system, &signed).unwrap()
}

/// Criterion 1: for n in {3, 5, 7} and all degrees k <= n-1, the homology
/// with symplectic coefficients has free rank 0 and annihilator exponent
/// dividing 4. Exact; expected well under 60 s total.
#[test]
fn criterion_1_torsion_theorem() {
    let t0 = std::time::Instant::now();
    let mut all = true;
    let mut details = Vec::new();
    for n in [3usize, 5, 7] {
        let r = suite_torsion_theorem(n, n - 1).expect("valid parameters");
        all &= r.all_passed();
        details.push(format!(
            "n={n}: {} ({} assertions)",
            if r.all_passed() { "ok" } else { "violated" },
            r.assertions.len()
        ));
    }
    report(
        "criterion 1: torsion theorem n in {3,5,7}",
        all,
        format!("{} in {:?}", details.join("; "), t0.elapsed()),
    );
    assert!(all, "4-torsion bound violated: {details:?}");
}

/// Stretch goal of criterion 1: n = 9 within 10 minutes.
#[test]
#[ignore = "stretch goal; run explicitly"]
fn criterion_1_stretch_n9() {
    let t0 = std::time::Instant::now();
    let r = suite_torsion_theorem(9, 8).expect("valid parameters");
    report(
        "criterion 1 (stretch): torsion theorem n=9",
        r.all_passed(),
        format!("in {:?}", t0.elapsed()),
    );
    assert!(r.all_passed());
    assert!(t0.elapsed().as_secs() < 600, "stretch budget is 10 minutes");
}

/// Criterion 2: the symbolic d o d = 0 check passes for types A and B up to
/// rank 8, and a deliberately corrupted sign convention is detected. Exact;
/// budget 5 minutes.
#[test]
fn criterion_2_engine_soundness() {
    let t0 = std::time::Instant::now();
    let mut all = true;
    for rank in 1..=8usize {
        for sys in [CoxeterSystem::type_a(rank), CoxeterSystem::type_b(rank)] {
            let ok = verify_d_squared(&build_complex(sys)).all_zero();
            if !ok {
                all = false;
            }
        }
    }
    let control = !verify_d_squared(&build_negative_control(CoxeterSystem::type_a(2))).all_zero();
    report(
        "criterion 2: engine soundness up to rank 8 + negative control",
        all && control,
        format!("in {:?}", t0.elapsed()),
    );
    assert!(all, "d o d != 0 somewhere below rank 9");
    assert!(control, "negative control went undetected");
    assert!(t0.elapsed().as_secs() < 300, "budget is 5 minutes");
}

fn custom_reps_for_n3(seed: u64) -> Vec<(String, RepresentationSpec)> {
    let sys = CoxeterSystem::type_a(2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for c in 0..5 {
        let base = if c % 2 == 0 {
            symplectic_rep(3).unwrap()
        } else {
            symplectic_rep(3).unwrap().direct_sum(&trivial_rep(sys)).unwrap()
        };
        let d = base.dimension;
        let mut p = IntMatrix::identity(d);
        for _ in 0..8 {
            let i = rng.gen_range(0..d);
            let j = rng.gen_range(0..d);
            if i != j {
                let q = BigInt::from(rng.gen_range(-2i64..=2));
                for col in 0..d {
                    let add = &p[(j, col)] * &q;
                    p[(i, col)] += add;
                }
            }
        }
        out.push((format!("custom{}", c + 1), base.conjugate(&p).unwrap()));
    }
    out
}

/// Criterion 3: the engine and the presentation-complex oracle agree in all
/// degrees for n = 3 (trivial, symplectic and 5 random valid custom
/// coefficient systems) and in degrees 0-1 for 3 <= n <= 9 (trivial, and
/// symplectic where defined). Exact.
#[test]
fn criterion_3_oracle_equivalence() {
    let t0 = std::time::Instant::now();
    let mut all = true;
    let mut failures = Vec::new();

    let sys3 = CoxeterSystem::type_a(2);
    let cx3 = build_complex(sys3);
    let mut reps: Vec<(String, RepresentationSpec)> = vec![
        ("trivial".into(), trivial_rep(sys3)),
        ("symplectic".into(), symplectic_rep(3).unwrap()),
    ];
    reps.extend(custom_reps_for_n3(0xACCE97));
    for (name, rep) in &reps {
        let he = homology(&specialize(&cx3, rep).unwrap(), None, false).unwrap();
        let hf = homology(&fox_resolution_complex(3, rep).unwrap(), None, false).unwrap();
        let cmp = compare_homology(&he, &hf, 0..=2);
        if !cmp.all_match() {
            all = false;
            failures.push(format!("n=3 {name}: {:?}", cmp.mismatches));
        }
    }

    for n in 3..=9usize {
        let sys = CoxeterSystem::type_a(n - 1);
        let cx = build_complex(sys);
        let mut reps: Vec<(String, RepresentationSpec)> =
            vec![("trivial".into(), trivial_rep(sys))];
        if n % 2 == 1 {
            reps.push(("symplectic".into(), symplectic_rep(n).unwrap()));
        }
        for (name, rep) in &reps {
            let he = homology(&specialize(&cx, rep).unwrap(), Some(1), false).unwrap();
            let hf = homology(&fox_resolution_complex(n, rep).unwrap(), Some(1), false).unwrap();
            let cmp = compare_homology(&he, &hf, 0..=1);
            if !cmp.all_match() {
                all = false;
                failures.push(format!("n={n} {name}: {:?}", cmp.mismatches));
            }
        }
    }
    report(
        "criterion 3: oracle equivalence (n=3 all degrees; n<=9 degrees 0-1)",
        all,
        format!("in {:?}", t0.elapsed()),
    );
    assert!(all, "oracle disagreement: {failures:?}");
}

/// Criterion 4: the transvection representation and reduced Burau at -1
/// admit an explicit unimodular intertwiner for n in {3,5,7}; their
/// characteristic polynomials agree on 100 random words per n; the
/// symplectic form is preserved on 200 random words per n. Exact.
#[test]
fn criterion_4_representation_cross_check() {
    let t0 = std::time::Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xB1A1D);
    let mut all = true;
    let mut details = Vec::new();
    for n in [3usize, 5, 7] {
        let sym = symplectic_rep(n).unwrap();
        let bur = burau_minus1(n).unwrap();
        let j = sym.preserved_form.clone().unwrap();
        let mut form_ok = true;
        for _ in 0..200 {
            let w = random_word(&mut rng, sym.system, 16);
            let m = apply_rep(&sym, &w).unwrap();
            if m.transpose().mul(&j).mul(&m) != j {
                form_ok = false;
                break;
            }
        }
        let mut charpoly_ok = true;
        let mut samples = Vec::new();
        for _ in 0..100 {
            let w = random_word(&mut rng, sym.system, 12);
            if char_poly(&apply_rep(&sym, &w).unwrap())
                != char_poly(&apply_rep(&bur, &w).unwrap())
            {
                charpoly_ok = false;
                break;
            }
            samples.push(w);
        }
        let intertwiner = find_intertwiner(&sym, &bur, &samples).unwrap();
        let found = intertwiner.is_some();
        details.push(format!(
            "n={n}: form {form_ok}, charpoly {charpoly_ok}, intertwiner {found}"
        ));
        all &= form_ok && charpoly_ok && found;
    }
    report(
        "criterion 4: symplectic/Burau(-1) cross-check n in {3,5,7}",
        all,
        format!("{} in {:?}", details.join("; "), t0.elapsed()),
    );
    assert!(all, "{details:?}");
}

/// Criterion 5: for 2 <= n <= 6 and k <= n-1, trivial-coefficient homology
/// of type B_n splits degreewise as that of type A_{n-1} plus the
/// degree-shifted type B_{n-1}. Exact; budget 5 minutes.
#[test]
fn criterion_5_splitting_lemma() {
    let t0 = std::time::Instant::now();
    let mut all = true;
    let mut details = Vec::new();
    for n in 2..=6usize {
        let r = suite_splitting_lemma(n, n - 1).expect("valid parameters");
        all &= r.all_passed();
        details.push(format!("n={n}: {}", if r.all_passed() { "ok" } else { "violated" }));
    }
    report(
        "criterion 5: splitting lemma 2 <= n <= 6",
        all,
        format!("{} in {:?}", details.join("; "), t0.elapsed()),
    );
    assert!(all, "{details:?}");
    assert!(t0.elapsed().as_secs() < 300, "budget is 5 minutes");
}

/// Criterion 6, implemented exactly as stated: for 2 <= n <= 5, the deck
/// map acts as the identity on cover homology, both composites of
/// projection and transfer are multiplication by 2, kernel classes of the
/// projection have order dividing 2, and doubled classes lift. Exact.
///
/// The identities depend on the deck transformation being homotopic to the
/// identity, which holds for an odd number of points; the computation
/// documents genuine failures at n = 2 and n = 4 (see the per-n lines), so
/// this criterion is red as specified while n = 3 and n = 5 pass.
#[test]
fn criterion_6_double_cover_identities() {
    let t0 = std::time::Instant::now();
    let mut all = true;
    let mut details = Vec::new();
    for n in 2..=5usize {
        let r = suite_double_cover(n, n).expect("valid parameters");
        let failed: Vec<&str> =
            r.assertions.iter().filter(|a| !a.passed).map(|a| a.name.as_str()).collect();
        details.push(format!(
            "n={n}: {}{}",
            if r.all_passed() { "ok" } else { "violated" },
            if failed.is_empty() { String::new() } else { format!(" ({})", failed.join(", ")) }
        ));
        all &= r.all_passed();
    }
    report(
        "criterion 6: double-cover identities 2 <= n <= 5",
        all,
        format!("{} in {:?}", details.join("; "), t0.elapsed()),
    );
    assert!(all, "double-cover identities as stated fail for even n: {details:?}");
}

/// Criterion 7 is a scope statement, not a computation: the mapping class
/// group side (stable vanishing into the full mapping class group) is out
/// of computational reach and is replaced by the suites above.
#[test]
fn criterion_7_scope_statement() {
    report(
        "criterion 7: mapping-class-group side explicitly out of desk scale",
        true,
        "documented non-goal; braid-group side fully exercised by criteria 1-6".into(),
    );
}
