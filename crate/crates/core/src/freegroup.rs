//! Freely reduced words, the Artin action on the free group, and Fox
//! free differential calculus.
//!
//! The free group F_n carries the usual braid action through automorphisms
//! of the fundamental group of the n-punctured disc; its Fox derivatives,
//! specialized at -1, produce the Burau matrices used as a cross-check
//! against the transvection representation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::braid::BraidWord;
use crate::coxeter::CoxeterType;

/// A freely reduced word in the free group on generators x_1..x_n.
/// Letters are (generator index 1-based, sign).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeWord { letters: vec![(i, 1)] }
    }

    /// Build from arbitrary letters, freely reducing adjacent cancelling pairs.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut stack: Vec<(usize, i8)> = Vec::new();
        for (i, s) in letters {
            debug_assert!(i >= 1 && (s == 1 || s == -1));
            if let Some(&(j, t)) = stack.last() {
                if j == i && t == -s {
                    stack.pop();
                    continue;
                }
            }
            stack.push((i, s));
        }
        FreeWord { letters: stack }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect() }
    }

    pub fn push(&mut self, i: usize, s: i8) {
        if let Some(&(j, t)) = self.letters.last() {
            if j == i && t == -s {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((i, s));
    }

    /// Ring evaluation x_i -> -1 for every generator: (-1)^(exponent sum).
    pub fn eval_minus_one(&self) -> i64 {
        let e: i64 = self.letters.iter().map(|&(_, s)| s as i64).sum();
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

impl std::fmt::Display for FreeWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, s)| if s > 0 { format!("x{i}") } else { format!("x{i}^-1") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Image of the i-th free generator under the automorphism of F_n induced by
/// the braid word, freely reduced. Composition follows word order: the first
/// letter of the word acts first. The generator rule is
/// sigma_j: x_j -> x_j x_{j+1} x_j^-1, x_{j+1} -> x_j, others fixed.
pub fn artin_action(word: &BraidWord, i: usize) -> FreeWord {
    assert_eq!(word.system.ctype, CoxeterType::A, "the Artin action is defined on type A words");
    let n = word.system.rank + 1;
    assert!(i >= 1 && i <= n, "free generator index out of range");
    let mut cur = FreeWord::generator(i);
    for l in &word.letters {
        let j = l.index;
        let mut next = FreeWord::identity();
        for &(k, s) in cur.letters() {
            // image of x_k under the single-letter automorphism
            let image: &[(usize, i8)] = if l.sign > 0 {
                if k == j {
                    &[(j, 1), (j + 1, 1), (j, -1)]
                } else if k == j + 1 {
                    &[(j, 1)]
                } else {
                    &[(k, 1)]
                }
            } else if k == j {
                &[(j + 1, 1)]
            } else if k == j + 1 {
                &[(j + 1, -1), (j, 1), (j + 1, 1)]
            } else {
                &[(k, 1)]
            };
            if s > 0 {
                for &(a, b) in image {
                    next.push(a, b);
                }
            } else {
                for &(a, b) in image.iter().rev() {
                    next.push(a, -b);
                }
            }
        }
        cur = next;
    }
    cur
}

/// Finite formal integer combination of free-group elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeGroupRing {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl FreeGroupRing {
    pub fn zero() -> Self {
        FreeGroupRing::default()
    }

    pub fn one() -> Self {
        FreeGroupRing::monomial(FreeWord::identity(), BigInt::from(1))
    }

    pub fn monomial(w: FreeWord, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeGroupRing { terms }
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &FreeGroupRing) -> FreeGroupRing {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, u: &FreeWord) -> FreeGroupRing {
        let mut out = FreeGroupRing::zero();
        for (w, c) in &self.terms {
            out.add_term(u.mul(w), c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ring evaluation x_i -> -1 on every term.
    pub fn eval_minus_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (w, c) in &self.terms {
            acc += c * BigInt::from(w.eval_minus_one());
        }
        acc
    }
}

/// Fox free derivative d(w)/d(x_i), satisfying d(x_j)/d(x_i) = delta_ij,
/// d(uv) = du + u dv and d(x_j^-1)/d(x_i) = -delta_ij x_j^-1.
pub fn fox_derivative(w: &FreeWord, i: usize) -> FreeGroupRing {
    let mut out = FreeGroupRing::zero();
    let mut prefix = FreeWord::identity();
    for &(j, s) in w.letters() {
        if j == i {
            if s > 0 {
                // d(prefix * x_i * rest) contributes prefix
                out.add_term(prefix.clone(), BigInt::from(1));
            } else {
                // contributes -prefix * x_i^-1
                let mut t = prefix.clone();
                t.push(i, -1);
                out.add_term(t, BigInt::from(-1));
            }
        }
        prefix.push(j, s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;
    use crate::coxeter::CoxeterSystem;

    fn fw(letters: &[(usize, i8)]) -> FreeWord {
        FreeWord::from_letters(letters.iter().copied())
    }

    #[test]
    fn artin_action_examples() {
        let sys = CoxeterSystem::type_a(2); // Br_3, free group on 3 generators
        let id = parse_word("", sys).unwrap();
        for i in 1..=3 {
            assert_eq!(artin_action(&id, i), FreeWord::generator(i));
        }
        let s1 = parse_word("1", sys).unwrap();
        assert_eq!(artin_action(&s1, 1), fw(&[(1, 1), (2, 1), (1, -1)]));
        assert_eq!(artin_action(&s1, 2), fw(&[(1, 1)]));
        assert_eq!(artin_action(&s1, 3), fw(&[(3, 1)]));
        let cancel = parse_word("1 -1", sys).unwrap();
        assert_eq!(artin_action(&cancel, 2), FreeWord::generator(2));
        let cancel2 = parse_word("-2 2", sys).unwrap();
        for i in 1..=3 {
            assert_eq!(artin_action(&cancel2, i), FreeWord::generator(i));
        }
    }

    #[test]
    fn artin_action_respects_braid_relations() {
        // exhaustive over generator pairs at small rank
        for rank in 2..=4usize {
            let sys = CoxeterSystem::type_a(rank);
            for i in 1..rank {
                let j = i + 1;
                let lhs = parse_word(&format!("{i} {j} {i}"), sys).unwrap();
                let rhs = parse_word(&format!("{j} {i} {j}"), sys).unwrap();
                for k in 1..=rank + 1 {
                    assert_eq!(artin_action(&lhs, k), artin_action(&rhs, k));
                }
            }
            for i in 1..=rank {
                for j in (i + 2)..=rank {
                    let lhs = parse_word(&format!("{i} {j}"), sys).unwrap();
                    let rhs = parse_word(&format!("{j} {i}"), sys).unwrap();
                    for k in 1..=rank + 1 {
                        assert_eq!(artin_action(&lhs, k), artin_action(&rhs, k));
                    }
                }
            }
        }
    }

    #[test]
    fn fox_examples() {
        // d(x1)/d(x1) = 1
        assert_eq!(fox_derivative(&FreeWord::generator(1), 1), FreeGroupRing::one());
        // d(x1^-1)/d(x1) = -x1^-1
        assert_eq!(
            fox_derivative(&fw(&[(1, -1)]), 1),
            FreeGroupRing::monomial(fw(&[(1, -1)]), BigInt::from(-1))
        );
        // d(x1 x2 x1^-1)/d(x1) = 1 - x1 x2 x1^-1
        let w = fw(&[(1, 1), (2, 1), (1, -1)]);
        let mut expected = FreeGroupRing::one();
        expected.add_term(w.clone(), BigInt::from(-1));
        assert_eq!(fox_derivative(&w, 1), expected);
        assert_eq!(fox_derivative(&w, 3), FreeGroupRing::zero());
    }

    #[test]
    fn fox_product_rule_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = 3usize;
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let len = rng.gen_range(0..8);
                FreeWord::from_letters((0..len).map(|_| {
                    (rng.gen_range(1..=n), if rng.gen_bool(0.5) { 1 } else { -1 })
                }))
            };
            let u = mk(&mut rng);
            let v = mk(&mut rng);
            for i in 1..=n {
                let lhs = fox_derivative(&u.mul(&v), i);
                let rhs = fox_derivative(&u, i).add(&fox_derivative(&v, i).left_mul_word(&u));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn fox_fundamental_identity() {
        // sum_j d(w)/d(x_j) * (x_j - 1) = w - 1, checked after evaluation
        // by left-multiplying: w - 1 = sum_j dw/dx_j (x_j - 1)
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = 3usize;
            let len = rng.gen_range(0..10);
            let w = FreeWord::from_letters((0..len).map(|_| {
                (rng.gen_range(1..=n), if rng.gen_bool(0.5) { 1 } else { -1 })
            }));
            let mut acc = FreeGroupRing::zero();
            for j in 1..=n {
                let d = fox_derivative(&w, j);
                for (t, c) in d.terms() {
                    acc.add_term(t.mul(&FreeWord::generator(j)), c.clone());
                    acc.add_term(t.clone(), -c.clone());
                }
            }
            let mut expected = FreeGroupRing::monomial(w.clone(), BigInt::from(1));
            expected.add_term(FreeWord::identity(), BigInt::from(-1));
            assert_eq!(acc, expected);
        }
    }
}
