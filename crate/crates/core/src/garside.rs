//! Garside left canonical form for finite-type Artin groups.
//!
//! Elements are written Delta^p A_1 ... A_m where Delta is the positive lift
//! of the longest Coxeter element and the A_i are simple elements (positive
//! lifts of Coxeter elements). The form is left-weighted: every left descent
//! of A_{i+1} is a right descent of A_i. Two words represent the same group
//! element iff their normal forms coincide, which solves the word problem.

use serde::{Deserialize, Serialize};

use crate::braid::{ArtinLetter, BraidWord, WordError};
use crate::coxeter::{
    left_descent, length, longest_element, reduced_word, right_descent, CoxeterElement,
    CoxeterSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalForm {
    pub delta_power: i64,
    pub factors: Vec<CoxeterElement>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm { delta_power: 0, factors: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// Number of letters of any positive word representing Delta^p-shifted
    /// part; the canonical word length of the element is |p|*len(Delta) plus
    /// the factor lengths.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }
}

/// Garside context for one Coxeter system: the longest element and the
/// diagram automorphism tau(x) = w0 x w0 realized on elements.
#[derive(Debug, Clone)]
pub struct GarsideContext {
    pub system: CoxeterSystem,
    w0: CoxeterElement,
}

impl GarsideContext {
    pub fn new(system: CoxeterSystem) -> Self {
        let gens: Vec<usize> = system.generators().collect();
        let w0 = longest_element(&system, &gens);
        GarsideContext { system, w0 }
    }

    pub fn longest(&self) -> &CoxeterElement {
        &self.w0
    }

    pub fn tau(&self, x: &CoxeterElement) -> CoxeterElement {
        self.w0.mul(x).mul(&self.w0)
    }

    /// The Garside element Delta as a positive braid word.
    pub fn delta_word(&self) -> BraidWord {
        positive_lift(&self.system, &self.w0)
    }
}

/// Positive braid word lifting a Coxeter element through its deterministic
/// reduced word. Well-defined in the Artin group by Matsumoto's property.
pub fn positive_lift(sys: &CoxeterSystem, w: &CoxeterElement) -> BraidWord {
    let letters =
        reduced_word(sys, w).into_iter().map(|s| ArtinLetter::new(s, 1)).collect::<Vec<_>>();
    BraidWord { system: *sys, letters }
}

pub fn is_left_weighted_pair(sys: &CoxeterSystem, u: &CoxeterElement, v: &CoxeterElement) -> bool {
    sys.generators().all(|s| !left_descent(sys, v, s) || right_descent(sys, u, s))
}

/// Move the largest possible head of `v` into `u`; afterwards the pair is
/// left-weighted. Returns true when letters moved.
fn make_pair_left_weighted(
    sys: &CoxeterSystem,
    u: &mut CoxeterElement,
    v: &mut CoxeterElement,
) -> bool {
    let mut v_inv = v.inverse();
    let mut changed = false;
    'outer: loop {
        for s in sys.generators() {
            // s is a left descent of v iff a right descent of v^-1
            if right_descent(sys, &v_inv, s) && !right_descent(sys, u, s) {
                u.right_mul_gen(sys, s);
                v_inv.right_mul_gen(sys, s); // v <- s v
                changed = true;
                continue 'outer;
            }
        }
        break;
    }
    if changed {
        *v = v_inv.inverse();
    }
    changed
}

/// Full stabilization of a factor sequence: repeated passes of pair fixes
/// until every adjacent pair is left-weighted, then identity factors are
/// dropped and leading longest-element factors are absorbed into the
/// delta power.
fn normalize_factors(ctx: &GarsideContext, delta_power: &mut i64, factors: &mut Vec<CoxeterElement>) {
    let sys = &ctx.system;
    loop {
        factors.retain(|f| !f.is_identity());
        let mut changed = false;
        for i in 0..factors.len().saturating_sub(1) {
            let (a, b) = factors.split_at_mut(i + 1);
            if make_pair_left_weighted(sys, &mut a[i], &mut b[0]) {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    factors.retain(|f| !f.is_identity());
    while !factors.is_empty() && factors[0] == *ctx.longest() {
        factors.remove(0);
        *delta_power += 1;
    }
}

fn debug_assert_left_weighted(ctx: &GarsideContext, nf: &NormalForm) {
    if cfg!(debug_assertions) {
        for f in &nf.factors {
            debug_assert!(!f.is_identity());
            debug_assert!(f != ctx.longest() || ctx.system.rank == 0);
        }
        for pair in nf.factors.windows(2) {
            debug_assert!(is_left_weighted_pair(&ctx.system, &pair[0], &pair[1]));
        }
    }
}

/// Right-multiply a normal form by a simple element. A single right-to-left
/// sweep restores the left-weighted condition.
pub fn nf_right_mul_simple(ctx: &GarsideContext, nf: &mut NormalForm, simple: &CoxeterElement) {
    if simple.is_identity() {
        return;
    }
    let sys = &ctx.system;
    nf.factors.push(simple.clone());
    let mut i = nf.factors.len() - 1;
    while i >= 1 {
        let (a, b) = nf.factors.split_at_mut(i);
        if !make_pair_left_weighted(sys, &mut a[i - 1], &mut b[0]) {
            break;
        }
        i -= 1;
    }
    while let Some(last) = nf.factors.last() {
        if last.is_identity() {
            nf.factors.pop();
        } else {
            break;
        }
    }
    while !nf.factors.is_empty() && nf.factors[0] == *ctx.longest() {
        nf.factors.remove(0);
        nf.delta_power += 1;
    }
    debug_assert_left_weighted(ctx, nf);
}

/// Right-multiply by the inverse of a generator, using
/// sigma_s^-1 = lift(s w0) Delta^-1.
pub fn nf_right_mul_gen_inverse(ctx: &GarsideContext, nf: &mut NormalForm, s: usize) {
    let sys = &ctx.system;
    let s_w0 = CoxeterElement::gen(sys, s).mul(ctx.longest());
    nf_right_mul_simple(ctx, nf, &s_w0);
    // absorb the trailing Delta^-1: Delta^p F Delta^-1 = Delta^(p-1) tau(F)
    nf.delta_power -= 1;
    for f in &mut nf.factors {
        *f = ctx.tau(f);
    }
    debug_assert_left_weighted(ctx, nf);
}

/// Garside left canonical form of a braid word.
pub fn normal_form(ctx: &GarsideContext, word: &BraidWord) -> NormalForm {
    assert_eq!(word.system, ctx.system, "word belongs to a different system");
    let mut nf = NormalForm::identity();
    for l in &word.letters {
        if l.sign > 0 {
            let g = CoxeterElement::gen(&ctx.system, l.index);
            nf_right_mul_simple(ctx, &mut nf, &g);
        } else {
            nf_right_mul_gen_inverse(ctx, &mut nf, l.index);
        }
    }
    nf
}

/// Product of two normal forms:
/// Delta^p F Delta^q G = Delta^(p+q) tau^q(F) G, then re-normalize.
pub fn nf_mul(ctx: &GarsideContext, x: &NormalForm, y: &NormalForm) -> NormalForm {
    let mut delta_power = x.delta_power + y.delta_power;
    let mut factors: Vec<CoxeterElement> = if y.delta_power % 2 == 0 {
        x.factors.clone()
    } else {
        x.factors.iter().map(|f| ctx.tau(f)).collect()
    };
    factors.extend(y.factors.iter().cloned());
    normalize_factors(ctx, &mut delta_power, &mut factors);
    let nf = NormalForm { delta_power, factors };
    debug_assert_left_weighted(ctx, &nf);
    nf
}

/// Do two words represent the same element of the Artin group?
pub fn words_equal(ctx: &GarsideContext, a: &BraidWord, b: &BraidWord) -> Result<bool, WordError> {
    if a.system != b.system || a.system != ctx.system {
        return Err(WordError::SystemMismatch);
    }
    Ok(normal_form(ctx, a) == normal_form(ctx, b))
}

/// Deterministic text rendering: "Δ^p · (w1)(w2)..." with each factor shown
/// through its reduced word, "()" when there are no factors.
pub fn render_normal_form(sys: &CoxeterSystem, nf: &NormalForm) -> String {
    let mut out = format!("Δ^{} · ", nf.delta_power);
    if nf.factors.is_empty() {
        out.push_str("()");
        return out;
    }
    for f in &nf.factors {
        let word: Vec<String> = reduced_word(sys, f).iter().map(|s| s.to_string()).collect();
        out.push('(');
        out.push_str(&word.join(" "));
        out.push(')');
    }
    out
}

/// Total letter count of the canonical positive-form representative;
/// used only as a size measure in reports.
pub fn nf_word_length(sys: &CoxeterSystem, nf: &NormalForm) -> usize {
    let gens: Vec<usize> = sys.generators().collect();
    let w0_len = length(sys, &longest_element(sys, &gens));
    nf.delta_power.unsigned_abs() as usize * w0_len
        + nf.factors.iter().map(|f| length(sys, f)).sum::<usize>()
}
