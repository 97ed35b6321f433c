//! Finite Coxeter combinatorics for types A and B: signed permutations,
//! root-counting lengths, descent sets, longest elements and minimal-length
//! parabolic coset representatives.
//!
//! Type A of rank r acts on r+1 points (the symmetric group); type B of rank n
//! acts on n signed points (the hyperoctahedral group). Generators 1..rank-1
//! are adjacent transpositions; in type B the generator `rank` flips the sign
//! of the last point, so the Coxeter matrix has entry 4 between `rank-1` and
//! `rank`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoxeterType {
    A,
    B,
}

impl std::fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoxeterType::A => write!(f, "A"),
            CoxeterType::B => write!(f, "B"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterSystem {
    pub ctype: CoxeterType,
    pub rank: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("type B requires rank >= 1")]
    InvalidRank,
    #[error("generator index {0} out of range 1..={1}")]
    GeneratorOutOfRange(usize, usize),
    #[error("subset is not contained in the reference generator set")]
    SubsetViolation,
}

impl CoxeterSystem {
    pub fn new(ctype: CoxeterType, rank: usize) -> Result<Self, CoxeterError> {
        if ctype == CoxeterType::B && rank == 0 {
            return Err(CoxeterError::InvalidRank);
        }
        Ok(CoxeterSystem { ctype, rank })
    }

    pub fn type_a(rank: usize) -> Self {
        CoxeterSystem { ctype: CoxeterType::A, rank }
    }

    pub fn type_b(rank: usize) -> Self {
        assert!(rank >= 1, "type B requires rank >= 1");
        CoxeterSystem { ctype: CoxeterType::B, rank }
    }

    /// Number of points the (signed) permutations act on.
    pub fn points(&self) -> usize {
        match self.ctype {
            CoxeterType::A => self.rank + 1,
            CoxeterType::B => self.rank,
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> {
        1..=self.rank
    }

    /// Coxeter matrix entry m(i, j) for distinct generators (1-based).
    pub fn coxeter_m(&self, i: usize, j: usize) -> usize {
        assert!(i != j && i >= 1 && j >= 1 && i <= self.rank && j <= self.rank);
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        if hi - lo > 1 {
            return 2;
        }
        match self.ctype {
            CoxeterType::A => 3,
            CoxeterType::B => {
                if hi == self.rank {
                    4
                } else {
                    3
                }
            }
        }
    }

    pub fn check_generator(&self, i: usize) -> Result<(), CoxeterError> {
        if i < 1 || i > self.rank {
            Err(CoxeterError::GeneratorOutOfRange(i, self.rank))
        } else {
            Ok(())
        }
    }

    /// Order of the parabolic subgroup generated by `t`, from the diagram's
    /// connected components (A_k component: (k+1)!, B_k component: 2^k k!).
    pub fn parabolic_order(&self, t: &[usize]) -> u128 {
        let set: HashSet<usize> = t.iter().copied().collect();
        let mut seen: HashSet<usize> = HashSet::new();
        let mut order: u128 = 1;
        for &start in t {
            if seen.contains(&start) {
                continue;
            }
            // walk the path-shaped diagram component
            let mut comp = vec![start];
            seen.insert(start);
            let mut frontier = vec![start];
            while let Some(g) = frontier.pop() {
                for nb in [g.wrapping_sub(1), g + 1] {
                    if nb >= 1 && nb <= self.rank && set.contains(&nb) && !seen.contains(&nb) {
                        seen.insert(nb);
                        comp.push(nb);
                        frontier.push(nb);
                    }
                }
            }
            let k = comp.len() as u128;
            let is_b = self.ctype == CoxeterType::B && comp.contains(&self.rank);
            let mut comp_order: u128 = 1;
            if is_b {
                for m in 1..=k {
                    comp_order *= 2 * m;
                }
            } else {
                for m in 2..=(k + 1) {
                    comp_order *= m;
                }
            }
            order *= comp_order;
        }
        order
    }
}

/// An element of a finite Coxeter group of type A or B, stored as the image
/// vector of a (signed) permutation: `images[k]` is w(k+1) with sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterElement {
    images: Vec<i8>,
}

/// Total order on signed values under which `kappa(a) > kappa(b)` detects a
/// negative image of the root e_a - e_b in type B (and reduces to the plain
/// inversion order in type A).
#[inline]
fn kappa(x: i8, n: i32) -> i32 {
    let v = x as i32;
    if v > 0 {
        v
    } else {
        2 * n + 1 + v
    }
}

impl CoxeterElement {
    pub fn identity(sys: &CoxeterSystem) -> Self {
        CoxeterElement { images: (1..=sys.points() as i8).collect() }
    }

    pub fn from_images(sys: &CoxeterSystem, images: Vec<i8>) -> Self {
        assert_eq!(images.len(), sys.points());
        let mut seen = vec![false; images.len()];
        for &v in &images {
            assert!(v != 0 && (v.unsigned_abs() as usize) <= images.len());
            assert!(sys.ctype == CoxeterType::B || v > 0);
            assert!(!seen[v.unsigned_abs() as usize - 1]);
            seen[v.unsigned_abs() as usize - 1] = true;
        }
        CoxeterElement { images }
    }

    pub fn images(&self) -> &[i8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k as i8 + 1)
    }

    /// Image of the signed value `x` under the signed permutation.
    #[inline]
    pub fn apply(&self, x: i8) -> i8 {
        if x > 0 {
            self.images[x as usize - 1]
        } else {
            -self.images[(-x) as usize - 1]
        }
    }

    /// Group product: (self * other)(x) = self(other(x)). With this
    /// convention `w * generator(s)` appends `s` on the right of any
    /// reduced word for `w`.
    pub fn mul(&self, other: &CoxeterElement) -> CoxeterElement {
        let images = other.images.iter().map(|&v| self.apply(v)).collect();
        CoxeterElement { images }
    }

    pub fn inverse(&self) -> CoxeterElement {
        let mut images = vec![0i8; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            if v > 0 {
                images[v as usize - 1] = k as i8 + 1;
            } else {
                images[(-v) as usize - 1] = -(k as i8 + 1);
            }
        }
        CoxeterElement { images }
    }

    /// Right multiplication by a generator, in place.
    pub fn right_mul_gen(&mut self, sys: &CoxeterSystem, s: usize) {
        debug_assert!(s >= 1 && s <= sys.rank);
        if sys.ctype == CoxeterType::B && s == sys.rank {
            self.images[s - 1] = -self.images[s - 1];
        } else {
            self.images.swap(s - 1, s);
        }
    }

    /// Left multiplication by a generator, in place.
    pub fn left_mul_gen(&mut self, sys: &CoxeterSystem, s: usize) {
        debug_assert!(s >= 1 && s <= sys.rank);
        if sys.ctype == CoxeterType::B && s == sys.rank {
            let n = sys.rank as i8;
            for v in &mut self.images {
                if v.unsigned_abs() as i8 == n {
                    *v = -*v;
                }
            }
        } else {
            let a = s as i8;
            let b = s as i8 + 1;
            for v in &mut self.images {
                if v.unsigned_abs() as i8 == a {
                    *v = v.signum() * b;
                } else if v.unsigned_abs() as i8 == b {
                    *v = v.signum() * a;
                }
            }
        }
    }

    pub fn gen(sys: &CoxeterSystem, s: usize) -> CoxeterElement {
        let mut e = CoxeterElement::identity(sys);
        e.right_mul_gen(sys, s);
        e
    }
}

/// Coxeter length by counting positive roots sent negative.
pub fn length(sys: &CoxeterSystem, w: &CoxeterElement) -> usize {
    let m = sys.points();
    let n = m as i32;
    let im = w.images();
    let mut len = 0usize;
    for i in 0..m {
        for j in (i + 1)..m {
            // long roots e_i - e_j
            if kappa(im[i], n) > kappa(im[j], n) {
                len += 1;
            }
            if sys.ctype == CoxeterType::B {
                // roots e_i + e_j
                if kappa(im[i], n) > kappa(-im[j], n) {
                    len += 1;
                }
            }
        }
        if sys.ctype == CoxeterType::B && im[i] < 0 {
            // short roots e_i
            len += 1;
        }
    }
    len
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Is `s` a right descent of `w`, i.e. length(w s) < length(w)?
#[inline]
pub fn right_descent(sys: &CoxeterSystem, w: &CoxeterElement, s: usize) -> bool {
    let im = w.images();
    if sys.ctype == CoxeterType::B && s == sys.rank {
        im[s - 1] < 0
    } else {
        let n = sys.points() as i32;
        kappa(im[s - 1], n) > kappa(im[s], n)
    }
}

/// Is `s` a left descent of `w`, i.e. length(s w) < length(w)?
#[inline]
pub fn left_descent(sys: &CoxeterSystem, w: &CoxeterElement, s: usize) -> bool {
    right_descent(sys, &w.inverse(), s)
}

pub fn descent_set(sys: &CoxeterSystem, w: &CoxeterElement, side: Side) -> Vec<usize> {
    let inv;
    let target = match side {
        Side::Right => w,
        Side::Left => {
            inv = w.inverse();
            &inv
        }
    };
    sys.generators().filter(|&s| right_descent(sys, target, s)).collect()
}

/// Deterministic reduced word: repeatedly strip the smallest left descent.
pub fn reduced_word(sys: &CoxeterSystem, w: &CoxeterElement) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = w.clone();
    let mut cur_inv = w.inverse();
    loop {
        let mut found = None;
        for s in sys.generators() {
            if right_descent(sys, &cur_inv, s) {
                found = Some(s);
                break;
            }
        }
        match found {
            None => break,
            Some(s) => {
                word.push(s);
                cur.left_mul_gen(sys, s);
                cur_inv.right_mul_gen(sys, s);
            }
        }
    }
    debug_assert!(cur.is_identity());
    word
}

/// Longest element of the parabolic subgroup generated by `t`, by greedy
/// ascent (any element other than w0(T) has an ascent in T).
pub fn longest_element(sys: &CoxeterSystem, t: &[usize]) -> CoxeterElement {
    let mut w = CoxeterElement::identity(sys);
    'outer: loop {
        for &s in t {
            if !right_descent(sys, &w, s) {
                w.right_mul_gen(sys, s);
                continue 'outer;
            }
        }
        return w;
    }
}

/// Minimal-length representatives of the right cosets W_{T'} \ W_T, i.e. the
/// elements of W_T without left descents in T'. Enumerated within W_T only,
/// ordered by (length, lexicographic reduced word).
pub fn minimal_coset_reps(
    sys: &CoxeterSystem,
    t: &[usize],
    t_sub: &[usize],
) -> Result<Vec<CoxeterElement>, CoxeterError> {
    for &s in t.iter().chain(t_sub.iter()) {
        sys.check_generator(s)?;
    }
    let t_set: HashSet<usize> = t.iter().copied().collect();
    if !t_sub.iter().all(|s| t_set.contains(s)) {
        return Err(CoxeterError::SubsetViolation);
    }
    let mut t_sorted: Vec<usize> = t_set.iter().copied().collect();
    t_sorted.sort_unstable();

    let no_left_descent_in_sub = |w: &CoxeterElement| -> bool {
        let inv = w.inverse();
        t_sub.iter().all(|&s| !right_descent(sys, &inv, s))
    };

    let mut reps: Vec<CoxeterElement> = Vec::new();
    let mut level: Vec<CoxeterElement> = vec![CoxeterElement::identity(sys)];
    let mut seen: HashSet<CoxeterElement> = level.iter().cloned().collect();
    let mut level_len = 0usize;
    while !level.is_empty() {
        // minimal coset representatives are closed under reduced-word
        // prefixes, so level-by-level extension reaches all of them
        level.sort_by_cached_key(|w| reduced_word(sys, w));
        reps.extend(level.iter().cloned());
        let mut next: Vec<CoxeterElement> = Vec::new();
        for w in &level {
            for &s in &t_sorted {
                if !right_descent(sys, w, s) {
                    let mut v = w.clone();
                    v.right_mul_gen(sys, s);
                    debug_assert_eq!(length(sys, &v), level_len + 1);
                    if no_left_descent_in_sub(&v) && !seen.contains(&v) {
                        seen.insert(v.clone());
                        next.push(v);
                    }
                }
            }
        }
        level = next;
        level_len += 1;
    }
    Ok(reps)
}

/// All elements of the parabolic subgroup generated by `t` (used by tests
/// and small exhaustive checks; not by the boundary construction).
pub fn enumerate_parabolic(sys: &CoxeterSystem, t: &[usize]) -> Vec<CoxeterElement> {
    let mut all: HashSet<CoxeterElement> = HashSet::new();
    let mut frontier = vec![CoxeterElement::identity(sys)];
    all.insert(frontier[0].clone());
    while let Some(w) = frontier.pop() {
        for &s in t {
            let mut v = w.clone();
            v.right_mul_gen(sys, s);
            if !all.contains(&v) {
                all.insert(v.clone());
                frontier.push(v);
            }
        }
    }
    let mut out: Vec<CoxeterElement> = all.into_iter().collect();
    out.sort_by_cached_key(|w| (length(sys, w), reduced_word(sys, w)));
    out
}
