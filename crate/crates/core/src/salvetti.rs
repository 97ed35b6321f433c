//! The finite free resolution of a finite-type Artin group: one cell per
//! subset of the generating set, boundaries given by signed sums of positive
//! lifts of minimal parabolic coset representatives.
//!
//! The boundary of the cell e_T is
//!
//!   d(e_T) = sum over tau in T, beta in reps(T, T \ tau) of
//!            sign(T, tau, beta) lift(beta) e_{T \ tau}
//!
//! where reps enumerates the minimal-length representatives of the right
//! cosets W_{T\tau} \ W_T and sign is (-1)^(length(beta) + position of tau).
//! The two binary sign choices (include the length parity, offset the
//! position parity) are discovered by checking d o d = 0 symbolically at
//! ranks 2 and 3 and frozen; composition of boundary entries is taken in
//! matrix order, so specialization through a representation is plain
//! substitution.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{length, minimal_coset_reps, CoxeterElement, CoxeterSystem};
use crate::garside::{normal_form, positive_lift, GarsideContext, NormalForm};
use crate::groupring::GroupRingElement;
use crate::linalg::{IntegerComplex, LinalgError};
use crate::matrix::IntMatrix;
use crate::representations::{apply_rep, check_intertwining, RepError, RepresentationSpec};
use crate::ENGINE_VERSION;

#[derive(Debug, thiserror::Error)]
pub enum SalvettiError {
    #[error("representation system does not match the complex system")]
    SystemMismatch,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("specialized complex would have {0} columns, above the ceiling {1}")]
    TooLarge(usize, usize),
}

/// The two binary sign choices of the boundary formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignConvention {
    /// Whether (-1)^length(beta) enters the sign.
    pub length_parity: bool,
    /// Whether the position of tau is counted 1-based instead of 0-based.
    pub position_offset: bool,
}

impl SignConvention {
    fn sign(&self, tau_position: usize, beta_length: usize) -> i64 {
        let mut e = tau_position;
        if self.position_offset {
            e += 1;
        }
        if self.length_parity {
            e += beta_length;
        }
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn label(&self) -> String {
        format!(
            "L{}P{}",
            if self.length_parity { 1 } else { 0 },
            if self.position_offset { 1 } else { 0 }
        )
    }

    pub fn candidates() -> [SignConvention; 4] {
        [
            SignConvention { length_parity: true, position_offset: false },
            SignConvention { length_parity: true, position_offset: true },
            SignConvention { length_parity: false, position_offset: false },
            SignConvention { length_parity: false, position_offset: true },
        ]
    }
}

/// A cell of the resolution: a subset of the generator indices, sorted.
pub type Cell = Vec<usize>;

/// Boundary matrix in one degree, stored by column: for the c-th cell of
/// degree k, the list of (row index in degree k-1, group-ring coefficient).
pub type BoundaryColumns = Vec<Vec<(usize, GroupRingElement)>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FreeComplex {
    pub system: CoxeterSystem,
    pub sign_convention: SignConvention,
    /// cells[k] lists the degree-k cells in lexicographic order.
    pub cells: Vec<Vec<Cell>>,
    /// boundaries[k-1] maps degree k to degree k-1.
    pub boundaries: Vec<BoundaryColumns>,
}

fn subsets_of_size(rank: usize, k: usize) -> Vec<Cell> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, rank: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Cell>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for g in start..=rank {
            current.push(g);
            rec(g + 1, rank, k, current, out);
            current.pop();
        }
    }
    rec(1, rank, k, &mut current, &mut out);
    out
}

fn build_complex_inner(
    system: CoxeterSystem,
    sign_convention: SignConvention,
    drop_position_sign: bool,
) -> FreeComplex {
    let ctx = GarsideContext::new(system);
    let rank = system.rank;
    let cells: Vec<Vec<Cell>> = (0..=rank).map(|k| subsets_of_size(rank, k)).collect();
    let mut boundaries = Vec::with_capacity(rank);
    for k in 1..=rank {
        let lower_index: HashMap<&Cell, usize> =
            cells[k - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
        let columns: BoundaryColumns = cells[k]
            .par_iter()
            .map(|t| {
                let mut col = Vec::with_capacity(t.len());
                for (pos, &tau) in t.iter().enumerate() {
                    let t_sub: Cell = t.iter().copied().filter(|&s| s != tau).collect();
                    let row = lower_index[&t_sub];
                    let reps = minimal_coset_reps(&system, t, &t_sub)
                        .expect("T' is a subset of T by construction");
                    let mut entry = GroupRingElement::zero();
                    for beta in reps {
                        let effective_pos = if drop_position_sign { 0 } else { pos };
                        let sign = sign_convention.sign(effective_pos, length(&system, &beta));
                        let nf = normal_form(&ctx, &positive_lift(&system, &beta));
                        entry.add_term(nf, BigInt::from(sign));
                    }
                    col.push((row, entry));
                }
                col
            })
            .collect();
        boundaries.push(columns);
    }
    FreeComplex { system, sign_convention, cells, boundaries }
}

/// Build the resolution with an explicit sign convention (used by the
/// discovery step and by negative controls).
pub fn build_complex_with_convention(
    system: CoxeterSystem,
    sign_convention: SignConvention,
) -> FreeComplex {
    build_complex_inner(system, sign_convention, false)
}

/// Negative control: a deliberately corrupted boundary whose faces all carry
/// the same position sign. Its composite d o d is genuinely nonzero, which
/// the symbolic check must detect.
pub fn build_negative_control(system: CoxeterSystem) -> FreeComplex {
    build_complex_inner(system, frozen_sign_convention(), true)
}

/// Symbolic check that consecutive boundaries compose to zero in the group
/// ring, canonicalizing every word by Garside normal form. Failures are a
/// report outcome, not an error.
#[derive(Debug, Clone, Default, Serialize)]
pub struct DSquaredReport {
    /// (degree k, row in degree k-2, column in degree k) of nonzero entries.
    pub nonzero: Vec<(usize, usize, usize)>,
    pub checked_columns: usize,
}

impl DSquaredReport {
    pub fn all_zero(&self) -> bool {
        self.nonzero.is_empty()
    }
}

pub fn verify_d_squared(complex: &FreeComplex) -> DSquaredReport {
    let ctx = GarsideContext::new(complex.system);
    let rank = complex.system.rank;
    let mut report = DSquaredReport::default();
    for k in 2..=rank {
        let upper = &complex.boundaries[k - 1];
        let lower = &complex.boundaries[k - 2];
        let mut nonzero: Vec<(usize, usize, usize)> = upper
            .par_iter()
            .enumerate()
            .flat_map(|(c, col)| {
                // composite column: rows of degree k-2
                let mut acc: HashMap<usize, GroupRingElement> = HashMap::new();
                for (mid, upper_entry) in col {
                    for (row, lower_entry) in &lower[*mid] {
                        // matrix-order product: (d_{k-1})_{row,mid} (d_k)_{mid,c}
                        let prod = lower_entry.mul(&ctx, upper_entry);
                        let slot = acc.entry(*row).or_default();
                        *slot = slot.add(&prod);
                    }
                }
                acc.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(row, _)| (k, row, c))
                    .collect::<Vec<_>>()
            })
            .collect();
        nonzero.sort_unstable();
        report.nonzero.extend(nonzero);
        report.checked_columns += upper.len();
    }
    report
}

/// Coefficient sums of the degree-1 entries all vanish, so that the
/// trivial-coefficient specialization of d_1 is the zero matrix. This is the
/// augmentation property of a resolution of the trivial module; it is what
/// separates the length-parity candidates, whose d o d = 0 holds regardless.
fn augmentation_vanishes(complex: &FreeComplex) -> bool {
    let Some(cols) = complex.boundaries.first() else { return true };
    cols.iter().all(|col| {
        col.iter().all(|(_, entry)| {
            let sum: BigInt = entry.terms().map(|(_, c)| c.clone()).sum();
            sum.is_zero()
        })
    })
}

/// The frozen sign convention: the first candidate passing both the symbolic
/// d o d = 0 check at ranks 2 and 3 in both types and the augmentation
/// check.
pub fn frozen_sign_convention() -> SignConvention {
    static FROZEN: OnceLock<SignConvention> = OnceLock::new();
    *FROZEN.get_or_init(|| {
        for cand in SignConvention::candidates() {
            let ok = [
                CoxeterSystem::type_a(2),
                CoxeterSystem::type_a(3),
                CoxeterSystem::type_b(2),
                CoxeterSystem::type_b(3),
            ]
            .into_iter()
            .all(|sys| {
                let cx = build_complex_with_convention(sys, cand);
                augmentation_vanishes(&cx) && verify_d_squared(&cx).all_zero()
            });
            if ok {
                return cand;
            }
        }
        panic!("no sign convention satisfies d o d = 0 and the augmentation check");
    })
}

/// Build the resolution with the frozen sign convention.
pub fn build_complex(system: CoxeterSystem) -> FreeComplex {
    build_complex_with_convention(system, frozen_sign_convention())
}

/// Evaluate normal forms through a representation, memoizing the simple
/// factors.
struct RepEvaluator<'a> {
    rep: &'a RepresentationSpec,
    system: CoxeterSystem,
    delta: IntMatrix,
    delta_inv: IntMatrix,
    simples: HashMap<CoxeterElement, IntMatrix>,
}

impl<'a> RepEvaluator<'a> {
    fn new(rep: &'a RepresentationSpec, ctx: &GarsideContext) -> Self {
        let delta = apply_rep(rep, &ctx.delta_word()).expect("system agreement checked earlier");
        let delta_inv = crate::linalg::unimodular_inverse(&delta)
            .expect("generator images are unimodular, so is the Garside element");
        RepEvaluator { rep, system: ctx.system, delta, delta_inv, simples: HashMap::new() }
    }

    fn simple(&mut self, f: &CoxeterElement) -> &IntMatrix {
        if !self.simples.contains_key(f) {
            let m = apply_rep(self.rep, &positive_lift(&self.system, f))
                .expect("lift stays in the same system");
            self.simples.insert(f.clone(), m);
        }
        &self.simples[f]
    }

    fn eval_nf(&mut self, nf: &NormalForm) -> IntMatrix {
        let d = self.rep.dimension;
        let mut acc = IntMatrix::identity(d);
        let power = nf.delta_power;
        for _ in 0..power.abs() {
            acc = if power > 0 { acc.mul(&self.delta) } else { acc.mul(&self.delta_inv) };
        }
        for f in &nf.factors {
            let m = self.simple(f).clone();
            acc = acc.mul(&m);
        }
        acc
    }

    fn eval_entry(&mut self, e: &GroupRingElement) -> IntMatrix {
        let d = self.rep.dimension;
        let mut acc = IntMatrix::zero(d, d);
        for (nf, c) in e.terms() {
            let m = self.eval_nf(nf);
            acc = acc.add(&m.scale(c));
        }
        acc
    }
}

/// Specialize the free complex through a representation: every group-ring
/// entry becomes its matrix image, module ranks multiply by the dimension.
pub fn specialize(
    complex: &FreeComplex,
    rep: &RepresentationSpec,
) -> Result<IntegerComplex, SalvettiError> {
    specialize_with_ceiling(complex, rep, usize::MAX)
}

/// Specialization with a guardrail on the number of integer columns.
pub fn specialize_with_ceiling(
    complex: &FreeComplex,
    rep: &RepresentationSpec,
    max_columns: usize,
) -> Result<IntegerComplex, SalvettiError> {
    if rep.system != complex.system {
        return Err(SalvettiError::SystemMismatch);
    }
    let d = rep.dimension;
    let ranks: Vec<usize> = complex.cells.iter().map(|cs| cs.len() * d).collect();
    if let Some(&max_rank) = ranks.iter().max() {
        if max_rank > max_columns {
            return Err(SalvettiError::TooLarge(max_rank, max_columns));
        }
    }
    let ctx = GarsideContext::new(complex.system);
    let mut evaluator = RepEvaluator::new(rep, &ctx);
    let mut boundaries = Vec::with_capacity(complex.boundaries.len());
    for (k, columns) in complex.boundaries.iter().enumerate() {
        let rows = ranks[k];
        let cols = ranks[k + 1];
        let mut m = IntMatrix::zero(rows, cols);
        for (c, col) in columns.iter().enumerate() {
            for (r, entry) in col {
                let block = evaluator.eval_entry(entry);
                m.set_block(r * d, c * d, &block);
            }
        }
        boundaries.push(m);
    }
    // the zero-composition invariant of the specialization is re-checked
    // exactly by the IntegerComplex constructor
    Ok(IntegerComplex::new(ranks, boundaries)?)
}

/// The chain map between two specializations induced by a coefficient
/// morphism: one `module_map` block per cell in every degree. The module map
/// must intertwine the two representations (checked on generators).
pub fn coefficient_chain_map(
    complex: &FreeComplex,
    rep_source: &RepresentationSpec,
    rep_target: &RepresentationSpec,
    module_map: &IntMatrix,
) -> Result<crate::linalg::ChainMap, SalvettiError> {
    if rep_source.system != complex.system || rep_target.system != complex.system {
        return Err(SalvettiError::SystemMismatch);
    }
    check_intertwining(rep_source, rep_target, module_map)?;
    let blocks = complex
        .cells
        .iter()
        .map(|cs| IntMatrix::block_diagonal(module_map, cs.len()))
        .collect();
    Ok(crate::linalg::ChainMap { blocks })
}

// ---------------------------------------------------------------------------
// On-disk cache
// ---------------------------------------------------------------------------

/// Cache key: system type and rank, frozen sign convention, engine version.
pub fn cache_key(system: &CoxeterSystem, convention: &SignConvention) -> String {
    format!("salvetti-{}{}-{}-v{}", system.ctype, system.rank, convention.label(), ENGINE_VERSION)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    key: String,
    sha256: String,
    payload: String,
}

fn payload_digest(payload: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(payload.as_bytes());
    hex_encode(&hasher.finalize())
}

fn hex_encode(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Serialize the complex deterministically; the same complex always yields
/// identical bytes.
pub fn complex_payload(complex: &FreeComplex) -> String {
    serde_json::to_string(complex).expect("complex serialization cannot fail")
}

/// Write the complex into the cache directory under a content-addressed
/// name; returns the path.
pub fn cache_store(
    dir: &std::path::Path,
    complex: &FreeComplex,
) -> std::io::Result<std::path::PathBuf> {
    let key = cache_key(&complex.system, &complex.sign_convention);
    let payload = complex_payload(complex);
    let digest = payload_digest(&payload);
    let path = dir.join(format!("{key}-{}.json", &digest[..16]));
    let file = CacheFile { key, sha256: digest, payload };
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, serde_json::to_string(&file).expect("cache file serialization"))?;
    Ok(path)
}

/// Look up a cached complex; verifies the key and the payload digest and
/// ignores corrupt or mismatching files.
pub fn cache_load(
    dir: &std::path::Path,
    system: &CoxeterSystem,
    convention: &SignConvention,
) -> Option<FreeComplex> {
    let key = cache_key(system, convention);
    let entries = std::fs::read_dir(dir).ok()?;
    for entry in entries.flatten() {
        let name = entry.file_name();
        let name = name.to_string_lossy();
        if !name.starts_with(&key) || !name.ends_with(".json") {
            continue;
        }
        let Ok(text) = std::fs::read_to_string(entry.path()) else { continue };
        let Ok(file) = serde_json::from_str::<CacheFile>(&text) else { continue };
        if file.key != key || payload_digest(&file.payload) != file.sha256 {
            continue;
        }
        if let Ok(complex) = serde_json::from_str::<FreeComplex>(&file.payload) {
            return Some(complex);
        }
    }
    None
}

/// Build through the cache when a directory is given; cache hits are
/// bit-identical to recomputation by construction of the payload.
pub fn build_complex_cached(system: CoxeterSystem, cache_dir: Option<&std::path::Path>) -> FreeComplex {
    let convention = frozen_sign_convention();
    if let Some(dir) = cache_dir {
        if let Some(cached) = cache_load(dir, &system, &convention) {
            return cached;
        }
        let built = build_complex_with_convention(system, convention);
        let _ = cache_store(dir, &built);
        return built;
    }
    build_complex_with_convention(system, convention)
}
