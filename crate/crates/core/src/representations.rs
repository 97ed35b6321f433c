//! Integer matrix representations of finite-type Artin groups.
//!
//! The symplectic representation sends each braid generator to the
//! transvection along one curve of a chain of 2g simple closed curves, with
//! respect to the tridiagonal skew intersection form. Reduced Burau at t = -1
//! is constructed independently from Fox derivatives of the Artin action on
//! the free group and serves as a cross-check: the two are related by an
//! explicit unimodular intertwiner. The sign-cover module carries the
//! deck-transformation action of the double cover branched over the
//! configuration points.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::braid::BraidWord;
use crate::coxeter::{CoxeterSystem, CoxeterType};
use crate::freegroup::{artin_action, fox_derivative};
use crate::linalg::{is_unimodular, kernel_basis, unimodular_inverse};
use crate::matrix::IntMatrix;

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error("representation requires an odd number of strands n >= 3, got {0}")]
    BadStrandCount(usize),
    #[error("genus must be at least 1")]
    BadGenus,
    #[error("generator image {0} is not unimodular")]
    NotUnimodular(usize),
    #[error("generator image {0} is not square of the declared dimension")]
    BadDimension(usize),
    #[error("braid relation violated between generators {0} and {1}")]
    RelationViolated(usize, usize),
    #[error("generator image {0} does not preserve the bilinear form")]
    FormNotPreserved(usize),
    #[error("expected {expected} generator images, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("representations have different dimensions")]
    DimensionMismatch,
    #[error("word/representation system mismatch")]
    SystemMismatch,
    #[error("module map does not intertwine the representations at generator {0}")]
    NotIntertwining(usize),
    #[error("invalid representation file: {0}")]
    BadFile(String),
}

/// An integer matrix representation of the Artin group of a Coxeter system:
/// one unimodular image per generator, with exact inverses, and optionally a
/// preserved bilinear form.
#[derive(Debug, Clone)]
pub struct RepresentationSpec {
    pub system: CoxeterSystem,
    pub dimension: usize,
    images: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
    pub preserved_form: Option<IntMatrix>,
}

impl RepresentationSpec {
    pub fn new(
        system: CoxeterSystem,
        images: Vec<IntMatrix>,
        preserved_form: Option<IntMatrix>,
    ) -> Result<Self, RepError> {
        if images.len() != system.rank {
            return Err(RepError::WrongGeneratorCount { expected: system.rank, got: images.len() });
        }
        let dimension = if let Some(form) = &preserved_form {
            form.rows()
        } else {
            images.first().map_or(1, |m| m.rows())
        };
        let mut inverses = Vec::with_capacity(images.len());
        for (k, m) in images.iter().enumerate() {
            if m.rows() != dimension || m.cols() != dimension {
                return Err(RepError::BadDimension(k + 1));
            }
            let inv = unimodular_inverse(m).ok_or(RepError::NotUnimodular(k + 1))?;
            inverses.push(inv);
        }
        // defining relations as matrix identities, exhaustive over pairs
        for i in 1..=system.rank {
            for j in (i + 1)..=system.rank {
                let m = system.coxeter_m(i, j);
                let (a, b) = (&images[i - 1], &images[j - 1]);
                let (lhs, rhs) = match m {
                    2 => (a.mul(b), b.mul(a)),
                    3 => (a.mul(b).mul(a), b.mul(a).mul(b)),
                    4 => (a.mul(b).mul(a).mul(b), b.mul(a).mul(b).mul(a)),
                    _ => unreachable!("finite types A and B only"),
                };
                if lhs != rhs {
                    return Err(RepError::RelationViolated(i, j));
                }
            }
        }
        if let Some(form) = &preserved_form {
            for (k, g) in images.iter().enumerate() {
                if g.transpose().mul(form).mul(g) != *form {
                    return Err(RepError::FormNotPreserved(k + 1));
                }
            }
        }
        Ok(RepresentationSpec { system, dimension, images, inverses, preserved_form })
    }

    /// Skip the relation validation; for negative controls only. The images
    /// must still be unimodular so that inverses exist.
    pub fn new_unchecked(system: CoxeterSystem, images: Vec<IntMatrix>) -> Self {
        let dimension = images.first().map_or(1, |m| m.rows());
        let inverses = images
            .iter()
            .map(|m| unimodular_inverse(m).expect("negative-control images must be unimodular"))
            .collect();
        RepresentationSpec { system, dimension, images, inverses, preserved_form: None }
    }

    pub fn image(&self, generator: usize) -> &IntMatrix {
        &self.images[generator - 1]
    }

    pub fn image_inverse(&self, generator: usize) -> &IntMatrix {
        &self.inverses[generator - 1]
    }

    /// Conjugate representation P rho P^-1 (drops the preserved form).
    pub fn conjugate(&self, p: &IntMatrix) -> Result<RepresentationSpec, RepError> {
        let p_inv = unimodular_inverse(p).ok_or(RepError::NotUnimodular(0))?;
        let images = self.images.iter().map(|m| p.mul(m).mul(&p_inv)).collect();
        RepresentationSpec::new(self.system, images, None)
    }

    pub fn direct_sum(&self, other: &RepresentationSpec) -> Result<RepresentationSpec, RepError> {
        if self.system != other.system {
            return Err(RepError::SystemMismatch);
        }
        let d = self.dimension + other.dimension;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                let mut m = IntMatrix::zero(d, d);
                m.set_block(0, 0, a);
                m.set_block(self.dimension, self.dimension, b);
                m
            })
            .collect();
        RepresentationSpec::new(self.system, images, None)
    }
}

/// The trivial rank-1 representation of any system.
pub fn trivial_rep(system: CoxeterSystem) -> RepresentationSpec {
    let images = vec![IntMatrix::identity(1); system.rank];
    RepresentationSpec::new(system, images, None).expect("trivial representation is valid")
}

/// Tridiagonal skew intersection form of a chain of 2g curves on a genus-g
/// surface with one boundary component: consecutive curves meet once,
/// distant curves are disjoint.
pub fn chain_intersection_form(g: usize) -> Result<IntMatrix, RepError> {
    if g < 1 {
        return Err(RepError::BadGenus);
    }
    let d = 2 * g;
    let mut j = IntMatrix::zero(d, d);
    for i in 0..d - 1 {
        j[(i, i + 1)] = BigInt::one();
        j[(i + 1, i)] = -BigInt::one();
    }
    Ok(j)
}

/// The symplectic representation of the braid group on n = 2g+1 strands:
/// sigma_i acts on H_1 of the genus-g surface by the transvection
/// v -> v + <v, c_i> c_i along the i-th chain curve.
pub fn symplectic_rep(n: usize) -> Result<RepresentationSpec, RepError> {
    if n < 3 || n % 2 == 0 {
        return Err(RepError::BadStrandCount(n));
    }
    let g = (n - 1) / 2;
    let d = 2 * g;
    let j = chain_intersection_form(g)?;
    let system = CoxeterSystem::type_a(n - 1);
    let mut images = Vec::with_capacity(n - 1);
    for i in 0..d {
        // transvection along the basis vector e_i
        let mut m = IntMatrix::identity(d);
        for col in 0..d {
            let add = j[(col, i)].clone();
            if !add.is_zero() {
                m[(i, col)] += add;
            }
        }
        images.push(m);
    }
    RepresentationSpec::new(system, images, Some(j))
}

/// Unreduced Burau matrix of a single generator at t = -1, from Fox
/// derivatives of the Artin action on the free group.
fn burau_unreduced_generator(n: usize, j: usize) -> IntMatrix {
    let system = CoxeterSystem::type_a(n - 1);
    let word = BraidWord::generator(system, j);
    IntMatrix::from_fn(n, n, |k, i| {
        fox_derivative(&artin_action(&word, k + 1), i + 1).eval_minus_one()
    })
}

/// Reduced Burau representation at t = -1: the unreduced matrices fix the
/// all-ones vector; the reduced representation is the induced action on the
/// rank-(n-1) quotient lattice.
pub fn burau_minus1(n: usize) -> Result<RepresentationSpec, RepError> {
    if n < 3 || n % 2 == 0 {
        return Err(RepError::BadStrandCount(n));
    }
    let system = CoxeterSystem::type_a(n - 1);
    let mut images = Vec::with_capacity(n - 1);
    for j in 1..=(n - 1) {
        let u = burau_unreduced_generator(n, j);
        debug_assert_eq!(
            u.mul_vec(&vec![BigInt::one(); n]),
            vec![BigInt::one(); n],
            "unreduced Burau at -1 must fix the all-ones vector"
        );
        let r = IntMatrix::from_fn(n - 1, n - 1, |a, b| &u[(a, b)] - &u[(n - 1, b)]);
        images.push(r);
    }
    RepresentationSpec::new(system, images, None)
}

/// The rank-2 permutation module of the deck group of the double cover of
/// the one-white-point configuration space: braid generators exchanging two
/// black points act trivially; the type-B generator moving the white point
/// around a black point swaps the two sheets.
pub fn sign_cover_rep(n: usize) -> Result<RepresentationSpec, RepError> {
    let system =
        CoxeterSystem::new(CoxeterType::B, n).map_err(|_| RepError::BadStrandCount(n))?;
    let swap = IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]);
    let mut images = vec![IntMatrix::identity(2); n.saturating_sub(1)];
    images.push(swap);
    RepresentationSpec::new(system, images, None)
}

/// Image of a braid word: the product of generator images and exact inverse
/// images in word order.
pub fn apply_rep(rep: &RepresentationSpec, w: &BraidWord) -> Result<IntMatrix, RepError> {
    if w.system != rep.system {
        return Err(RepError::SystemMismatch);
    }
    let mut acc = IntMatrix::identity(rep.dimension);
    for l in &w.letters {
        let m = if l.sign > 0 { rep.image(l.index) } else { rep.image_inverse(l.index) };
        acc = acc.mul(m);
    }
    Ok(acc)
}

/// Search for a unimodular P with P rho1(sigma_i) = rho2(sigma_i) P for all
/// generators: solve the integer constraint system exactly, then scan small
/// combinations of the kernel lattice basis for a unimodular element.
pub fn find_intertwiner(
    rep1: &RepresentationSpec,
    rep2: &RepresentationSpec,
    samples: &[BraidWord],
) -> Result<Option<IntMatrix>, RepError> {
    if rep1.dimension != rep2.dimension {
        return Err(RepError::DimensionMismatch);
    }
    if rep1.system != rep2.system {
        return Err(RepError::SystemMismatch);
    }
    let d = rep1.dimension;
    let gens = rep1.system.rank;
    // unknowns: vec(P) row-major, p_{rc} at index r*d + c
    let mut constraints = IntMatrix::zero(gens * d * d, d * d);
    for g in 1..=gens {
        let a = rep1.image(g);
        let b = rep2.image(g);
        for i in 0..d {
            for j in 0..d {
                let row = (g - 1) * d * d + i * d + j;
                // (P A)_{ij} = sum_c P_{ic} A_{cj}; (B P)_{ij} = sum_r B_{ir} P_{rj}
                for c in 0..d {
                    constraints[(row, i * d + c)] += &a[(c, j)];
                }
                for r in 0..d {
                    constraints[(row, r * d + j)] -= &b[(i, r)];
                }
            }
        }
    }
    let kernel = kernel_basis(&constraints);
    let kr = kernel.cols();
    if kr == 0 {
        return Ok(None);
    }
    let unvec = |v: &[BigInt]| IntMatrix::from_fn(d, d, |r, c| v[r * d + c].clone());

    // enumerate coefficient boxes of growing radius, deterministic order
    for bound in 1..=3i64 {
        let mut coeffs = vec![-bound; kr];
        loop {
            if coeffs.iter().any(|&c| c != 0) {
                let mut v = vec![BigInt::zero(); d * d];
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        for (row, item) in v.iter_mut().enumerate() {
                            *item += &kernel[(row, k)] * BigInt::from(c);
                        }
                    }
                }
                let p = unvec(&v);
                if is_unimodular(&p) {
                    // exact verification on generators and on the samples
                    for g in 1..=gens {
                        debug_assert_eq!(p.mul(rep1.image(g)), rep2.image(g).mul(&p));
                    }
                    for w in samples {
                        let lhs = p.mul(&apply_rep(rep1, w)?);
                        let rhs = apply_rep(rep2, w)?.mul(&p);
                        if lhs != rhs {
                            return Err(RepError::NotIntertwining(0));
                        }
                    }
                    return Ok(Some(p));
                }
            }
            // next coefficient vector in the box
            let mut k = 0;
            loop {
                if k == kr {
                    break;
                }
                coeffs[k] += 1;
                if coeffs[k] <= bound {
                    break;
                }
                coeffs[k] = -bound;
                k += 1;
            }
            if k == kr {
                break;
            }
        }
    }
    Ok(None)
}

/// Verify that `module_map` intertwines two representations on every
/// generator: module_map rho_src(sigma) = rho_tgt(sigma) module_map.
pub fn check_intertwining(
    source: &RepresentationSpec,
    target: &RepresentationSpec,
    module_map: &IntMatrix,
) -> Result<(), RepError> {
    if source.system != target.system {
        return Err(RepError::SystemMismatch);
    }
    if module_map.rows() != target.dimension || module_map.cols() != source.dimension {
        return Err(RepError::DimensionMismatch);
    }
    for g in 1..=source.system.rank {
        if module_map.mul(source.image(g)) != target.image(g).mul(module_map) {
            return Err(RepError::NotIntertwining(g));
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct RepFile {
    dimension: usize,
    generator_images: Vec<Vec<Vec<i64>>>,
}

/// Load a custom representation from its structured text format: fields
/// `dimension` and `generator_images` (row-major integer matrices, one per
/// generator, in generator order). Unimodularity and the defining relations
/// are validated; invalid files are rejected.
pub fn load_custom_rep(system: CoxeterSystem, text: &str) -> Result<RepresentationSpec, RepError> {
    let parsed: RepFile =
        serde_json::from_str(text).map_err(|e| RepError::BadFile(e.to_string()))?;
    if parsed.generator_images.len() != system.rank {
        return Err(RepError::WrongGeneratorCount {
            expected: system.rank,
            got: parsed.generator_images.len(),
        });
    }
    let mut images = Vec::with_capacity(parsed.generator_images.len());
    for (k, rows) in parsed.generator_images.iter().enumerate() {
        if rows.len() != parsed.dimension || rows.iter().any(|r| r.len() != parsed.dimension) {
            return Err(RepError::BadDimension(k + 1));
        }
        images.push(IntMatrix::from_rows_i64(rows));
    }
    RepresentationSpec::new(system, images, None)
}
