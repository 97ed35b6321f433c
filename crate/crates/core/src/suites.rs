//! Pass/fail suites over computed homology: the 4-torsion bound for the
//! symplectic coefficients, the splitting of the annular configuration
//! spaces, the double-cover identities, and the engine integrity battery.
//!
//! Every verdict is a deterministic function of (parameters, seed, engine
//! version). The annular avatar dictionary: the type-B_n Artin group stands
//! for the configuration space of n black points and one white point, its
//! sign-cover coefficients for the double cover branched over coincidences,
//! and the type-A_{n-1} group for the plain n-point configuration space.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use crate::coxeter::CoxeterSystem;
use crate::linalg::{
    annihilator_exponent, char_poly, homology, induced_map, HomologyGroup,
};
use crate::matrix::IntMatrix;
use crate::oracle::{compare_homology, fox_resolution_complex, relation_fuzz};
use crate::representations::{
    apply_rep, burau_minus1, find_intertwiner, sign_cover_rep, symplectic_rep, trivial_rep,
    RepresentationSpec,
};
use crate::salvetti::{
    build_complex, build_negative_control, coefficient_chain_map, frozen_sign_convention,
    specialize, verify_d_squared,
};
use crate::ENGINE_VERSION;

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: serde_json::Value,
    pub seed: u64,
    pub engine_version: String,
    pub sign_convention: String,
    pub assertions: Vec<Assertion>,
    pub data: serde_json::Value,
}

impl SuiteReport {
    fn new(suite: &str, parameters: serde_json::Value, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            parameters,
            seed,
            engine_version: ENGINE_VERSION.to_string(),
            sign_convention: frozen_sign_convention().label(),
            assertions: Vec::new(),
            data: serde_json::Value::Null,
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "suite {} {} ({} assertions)",
            self.suite,
            if self.all_passed() { "PASS" } else { "FAIL" },
            self.assertions.len()
        )];
        for a in &self.assertions {
            lines.push(format!(
                "  [{}] {}{}",
                if a.passed { "pass" } else { "FAIL" },
                a.name,
                if a.detail.is_empty() { String::new() } else { format!(": {}", a.detail) }
            ));
        }
        lines
    }
}

/// Row of a homology table in report form.
#[derive(Debug, Clone, Serialize)]
pub struct HomologyRow {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyRow {
    pub fn from_group(h: &HomologyGroup) -> Self {
        HomologyRow {
            degree: h.degree,
            rank: h.free_rank,
            torsion: h
                .torsion
                .iter()
                .map(|d| d.to_u64().expect("torsion divisor exceeds u64"))
                .collect(),
        }
    }
}

pub fn homology_table(groups: &[HomologyGroup]) -> Vec<HomologyRow> {
    groups.iter().map(HomologyRow::from_group).collect()
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("torsion suite requires odd n >= 3, got {0}")]
    BadTorsionParameter(usize),
    #[error("suite requires n >= 2, got {0}")]
    BadParameter(usize),
    #[error("engine failure: {0}")]
    Engine(String),
}

fn engine_err(e: impl std::fmt::Display) -> SuiteError {
    SuiteError::Engine(e.to_string())
}

/// The 4-torsion bound: for n = 2g+1, the homology of the braid group with
/// symplectic coefficients has free rank 0 and annihilator exponent dividing
/// 4 in every degree. The observed exponents are recorded; sharper bounds
/// are data, never assertions.
pub fn suite_torsion_theorem(n: usize, max_degree: usize) -> Result<SuiteReport, SuiteError> {
    if n < 3 || n % 2 == 0 {
        return Err(SuiteError::BadTorsionParameter(n));
    }
    let mut report =
        SuiteReport::new("torsion-theorem", json!({"n": n, "max_degree": max_degree}), 0);
    let sys = CoxeterSystem::type_a(n - 1);
    let cx = build_complex(sys);
    let rep = symplectic_rep(n).map_err(engine_err)?;
    let sp = specialize(&cx, &rep).map_err(engine_err)?;
    let hs = homology(&sp, Some(max_degree), false).map_err(engine_err)?;
    let mut exponents = Vec::new();
    for h in &hs {
        let e = annihilator_exponent(h);
        report.check(
            format!("degree {}: free rank 0", h.degree),
            h.free_rank == 0,
            format!("H_{} = {}", h.degree, h),
        );
        report.check(
            format!("degree {}: annihilator exponent divides 4", h.degree),
            e.divides(4),
            format!("exponent {}", e),
        );
        exponents.push(e);
    }
    report.data = json!({
        "homology": homology_table(&hs),
        "annihilator_exponent_per_degree": exponents,
    });
    Ok(report)
}

/// Canonical elementary-divisor chain of a finite abelian group given as a
/// multiset of cyclic orders: primary decomposition, then recombination.
fn canonical_divisor_chain(divisors: &[BigInt]) -> Vec<BigInt> {
    use std::collections::BTreeMap;
    let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    for d in divisors {
        let mut rest = d.clone();
        let mut p = BigInt::from(2);
        while &p * &p <= rest {
            let mut e = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            if e > 0 {
                primary.entry(p.clone()).or_default().push(e);
            }
            p += 1;
        }
        if rest > BigInt::one() {
            primary.entry(rest).or_default().push(1);
        }
    }
    let mut chains: Vec<(BigInt, Vec<u32>)> = primary.into_iter().collect();
    let max_len = chains.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
    for (_, es) in &mut chains {
        es.sort_unstable();
    }
    // align largest exponents together: d_k is the product of the k-th
    // largest prime powers
    let mut out = vec![BigInt::one(); max_len];
    for (p, es) in &chains {
        for (offset, &e) in es.iter().rev().enumerate() {
            let slot = max_len - 1 - offset;
            out[slot] *= p.pow(e);
        }
    }
    out.retain(|d| !d.is_one());
    out
}

fn direct_sum_group(degree: usize, parts: &[&HomologyGroup]) -> HomologyGroup {
    let free_rank = parts.iter().map(|h| h.free_rank).sum();
    let mut torsion: Vec<BigInt> = Vec::new();
    for h in parts {
        torsion.extend(h.torsion.iter().cloned());
    }
    HomologyGroup { degree, free_rank, torsion: canonical_divisor_chain(&torsion), basis: None }
}

use num_traits::Zero;

/// The splitting of the annular configuration space: in every degree,
/// H_k(type B_n) is abstractly isomorphic to
/// H_k(type A_{n-1}) + H_{k-1}(type B_{n-1}), with trivial coefficients.
pub fn suite_splitting_lemma(n: usize, max_degree: usize) -> Result<SuiteReport, SuiteError> {
    if n < 2 {
        return Err(SuiteError::BadParameter(n));
    }
    let mut report =
        SuiteReport::new("splitting", json!({"n": n, "max_degree": max_degree}), 0);
    let compute = |sys: CoxeterSystem| -> Result<Vec<HomologyGroup>, SuiteError> {
        let cx = build_complex(sys);
        let sp = specialize(&cx, &trivial_rep(sys)).map_err(engine_err)?;
        homology(&sp, None, false).map_err(engine_err)
    };
    let hb = compute(CoxeterSystem::type_b(n))?;
    let ha = compute(CoxeterSystem::type_a(n - 1))?;
    let hprev = compute(CoxeterSystem::type_b(n - 1))?;
    let trivial =
        |k: usize| HomologyGroup { degree: k, free_rank: 0, torsion: vec![], basis: None };
    for k in 0..=max_degree.min(n) {
        let lhs = hb.iter().find(|h| h.degree == k).cloned().unwrap_or_else(|| trivial(k));
        let a_part = ha.iter().find(|h| h.degree == k).cloned().unwrap_or_else(|| trivial(k));
        let prev_part = if k == 0 {
            trivial(0)
        } else {
            hprev.iter().find(|h| h.degree == k - 1).cloned().unwrap_or_else(|| trivial(k - 1))
        };
        let rhs = direct_sum_group(k, &[&a_part, &prev_part]);
        report.check(
            format!("degree {k}: split isomorphism"),
            lhs.same_group(&rhs),
            format!("lhs {} vs rhs {}", lhs, rhs),
        );
    }
    report.data = json!({
        "annular": homology_table(&hb),
        "configuration": homology_table(&ha),
        "annular_previous": homology_table(&hprev),
    });
    Ok(report)
}

/// The double-cover identities over the type-B_n complex: the deck map acts
/// as the identity on homology, both composites of the projection and the
/// transfer are multiplication by 2, the kernel of the projection is
/// 2-torsion, and doubled classes lift.
pub fn suite_double_cover(n: usize, max_degree: usize) -> Result<SuiteReport, SuiteError> {
    if n < 2 {
        return Err(SuiteError::BadParameter(n));
    }
    let mut report =
        SuiteReport::new("double-cover", json!({"n": n, "max_degree": max_degree}), 0);
    let sys = CoxeterSystem::type_b(n);
    let cx = build_complex(sys);
    let cover = sign_cover_rep(n).map_err(engine_err)?;
    let triv = trivial_rep(sys);
    let sp_cover = specialize(&cx, &cover).map_err(engine_err)?;
    let sp_triv = specialize(&cx, &triv).map_err(engine_err)?;
    let h_cover = homology(&sp_cover, None, true).map_err(engine_err)?;
    let h_triv = homology(&sp_triv, None, true).map_err(engine_err)?;

    let aug = IntMatrix::from_rows_i64(&[vec![1, 1]]);
    let norm = IntMatrix::from_rows_i64(&[vec![1], vec![1]]);
    let swap = IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]);
    let f_aug = coefficient_chain_map(&cx, &cover, &triv, &aug).map_err(engine_err)?;
    let f_norm = coefficient_chain_map(&cx, &triv, &cover, &norm).map_err(engine_err)?;
    let f_swap = coefficient_chain_map(&cx, &cover, &cover, &swap).map_err(engine_err)?;

    for k in 0..=max_degree.min(n) {
        let hc = &h_cover[k];
        let ht = &h_triv[k];
        let sq_star =
            induced_map(&f_aug, &sp_cover, &sp_triv, hc, ht, k).map_err(engine_err)?;
        let sq_shriek =
            induced_map(&f_norm, &sp_triv, &sp_cover, ht, hc, k).map_err(engine_err)?;
        let eps = induced_map(&f_swap, &sp_cover, &sp_cover, hc, hc, k).map_err(engine_err)?;
        report.check(
            format!("degree {k}: deck map acts as the identity"),
            eps.is_identity(),
            format!("on H_{k}(cover) = {hc}"),
        );
        report.check(
            format!("degree {k}: Sq_* o Sq^! = x2"),
            sq_star.compose(&sq_shriek).is_multiplication_by(2),
            format!("on H_{k}(base) = {ht}"),
        );
        report.check(
            format!("degree {k}: Sq^! o Sq_* = x2"),
            sq_shriek.compose(&sq_star).is_multiplication_by(2),
            format!("on H_{k}(cover) = {hc}"),
        );
        report.check(
            format!("degree {k}: kernel of Sq_* has exponent dividing 2"),
            sq_star.kernel_exponent_divides(2),
            String::new(),
        );
        report.check(
            format!("degree {k}: doubled classes are in the image of Sq_*"),
            sq_star.image_contains_multiples(2),
            String::new(),
        );
    }
    report.data = json!({
        "cover": homology_table(&h_cover),
        "base": homology_table(&h_triv),
    });
    Ok(report)
}

/// Engine integrity battery: symbolic boundary soundness with a negative
/// control, cross-engine homology agreement, relation fuzzing with a
/// corrupted-representation control, symplectic form preservation,
/// characteristic-polynomial agreement and intertwiner existence.
pub fn suite_engine_integrity(max_rank: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    use rand::{Rng, SeedableRng};
    if max_rank < 2 {
        return Err(SuiteError::BadParameter(max_rank));
    }
    let mut report =
        SuiteReport::new("integrity", json!({"max_rank": max_rank}), seed);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // boundary soundness
    for rank in 1..=max_rank {
        for sys in [CoxeterSystem::type_a(rank), CoxeterSystem::type_b(rank)] {
            let cx = build_complex(sys);
            let r = verify_d_squared(&cx);
            report.check(
                format!("d o d = 0 for {}{}", sys.ctype, sys.rank),
                r.all_zero(),
                format!("{} columns checked", r.checked_columns),
            );
        }
    }
    let bad = verify_d_squared(&build_negative_control(CoxeterSystem::type_a(2)));
    report.check(
        "negative control: corrupted sign convention detected",
        !bad.all_zero(),
        format!("{} nonzero entries", bad.nonzero.len()),
    );

    // oracle agreement, all degrees at n = 3
    let sys3 = CoxeterSystem::type_a(2);
    let cx3 = build_complex(sys3);
    let mut reps3: Vec<(String, RepresentationSpec)> = vec![
        ("trivial".into(), trivial_rep(sys3)),
        ("symplectic".into(), symplectic_rep(3).map_err(engine_err)?),
    ];
    for c in 0..5 {
        // random unimodular conjugates of the symplectic representation and
        // of its sum with the trivial one
        let base = if c % 2 == 0 {
            symplectic_rep(3).map_err(engine_err)?
        } else {
            symplectic_rep(3)
                .map_err(engine_err)?
                .direct_sum(&trivial_rep(sys3))
                .map_err(engine_err)?
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
        let conj = base.conjugate(&p).map_err(engine_err)?;
        reps3.push((format!("custom{}", c + 1), conj));
    }
    for (name, rep) in &reps3 {
        let eng = specialize(&cx3, rep).map_err(engine_err)?;
        let fox = fox_resolution_complex(3, rep).map_err(engine_err)?;
        let he = homology(&eng, None, false).map_err(engine_err)?;
        let hf = homology(&fox, None, false).map_err(engine_err)?;
        let cmp = compare_homology(&he, &hf, 0..=2);
        report.check(
            format!("oracle agreement in all degrees, n=3, {name}"),
            cmp.all_match(),
            format!("{} mismatches", cmp.mismatches.len()),
        );
    }

    // oracle agreement in degrees 0..1 for larger n
    for n in 3..=(max_rank + 1) {
        let sys = CoxeterSystem::type_a(n - 1);
        let mut reps: Vec<(String, RepresentationSpec)> = vec![("trivial".into(), trivial_rep(sys))];
        if n % 2 == 1 {
            reps.push(("symplectic".into(), symplectic_rep(n).map_err(engine_err)?));
        }
        for (name, rep) in &reps {
            let eng = specialize(&build_complex(sys), rep).map_err(engine_err)?;
            let fox = fox_resolution_complex(n, rep).map_err(engine_err)?;
            let he = homology(&eng, Some(1), false).map_err(engine_err)?;
            let hf = homology(&fox, Some(1), false).map_err(engine_err)?;
            let cmp = compare_homology(&he, &hf, 0..=1);
            report.check(
                format!("oracle agreement in degrees 0-1, n={n}, {name}"),
                cmp.all_match(),
                format!("{} mismatches", cmp.mismatches.len()),
            );
        }
    }

    // relation fuzzing
    let fuzz_n = if max_rank >= 4 { 5 } else { 3 };
    let fz = relation_fuzz(&symplectic_rep(fuzz_n).map_err(engine_err)?, 1000, seed);
    report.check(
        format!("relation fuzz on symplectic n={fuzz_n}, 1000 trials"),
        fz.all_passed(),
        format!("{} failures", fz.failures.len()),
    );
    let corrupted = RepresentationSpec::new_unchecked(
        CoxeterSystem::type_a(2),
        vec![
            IntMatrix::from_rows_i64(&[vec![1, -1], vec![0, 1]]),
            IntMatrix::from_rows_i64(&[vec![1, 2], vec![0, 1]]),
        ],
    );
    let fz_bad = relation_fuzz(&corrupted, 300, seed ^ 0x5eed);
    report.check(
        "negative control: corrupted generator image detected by fuzz",
        !fz_bad.all_passed(),
        format!("{} failures reported", fz_bad.failures.len()),
    );

    // symplectic form preservation and Burau cross-checks
    for n in (3..=(max_rank + 1).min(7)).step_by(2) {
        let sym = symplectic_rep(n).map_err(engine_err)?;
        let j = sym.preserved_form.clone().expect("symplectic representation carries its form");
        let mut ok = true;
        for _ in 0..200 {
            let w = random_word(&mut rng, sym.system, 16);
            let m = apply_rep(&sym, &w).map_err(engine_err)?;
            if m.transpose().mul(&j).mul(&m) != j {
                ok = false;
                break;
            }
        }
        report.check(format!("symplectic form preserved, n={n}, 200 words"), ok, String::new());

        let bur = burau_minus1(n).map_err(engine_err)?;
        let mut ok = true;
        let mut samples = Vec::new();
        for _ in 0..100 {
            let w = random_word(&mut rng, sym.system, 12);
            let a = apply_rep(&sym, &w).map_err(engine_err)?;
            let b = apply_rep(&bur, &w).map_err(engine_err)?;
            if char_poly(&a) != char_poly(&b) {
                ok = false;
                break;
            }
            samples.push(w);
        }
        report.check(
            format!("characteristic polynomials agree, n={n}, 100 words"),
            ok,
            String::new(),
        );
        let p = find_intertwiner(&sym, &bur, &samples).map_err(engine_err)?;
        report.check(
            format!("unimodular intertwiner symplectic/Burau(-1), n={n}"),
            p.is_some(),
            p.as_ref().map(|m| format!("found {}x{}", m.rows(), m.cols())).unwrap_or_default(),
        );
    }

    report.data = json!({"max_rank": max_rank});
    Ok(report)
}

fn random_word(
    rng: &mut rand_chacha::ChaCha8Rng,
    system: CoxeterSystem,
    max_len: usize,
) -> crate::braid::BraidWord {
    use rand::Rng;
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
    crate::braid::BraidWord::from_signed(system, &signed).unwrap()
}
