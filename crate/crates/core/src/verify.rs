//! Exact certification of the `NH_t` axioms and ordering searches.
//!
//! The three defining conditions for a p.f. array over `Z_v` relative to
//! the order-`t` subgroup `J` are checked verbatim:
//!
//! * (a1) uniform fill counts per row and per column;
//! * (b1) `{±x : x ∈ A}` covers `Z_v \ J` exactly once;
//! * (c1) no row or column sums to zero.
//!
//! Global simplicity anchors every row at its first filled cell and every
//! column at its top filled cell. Arrays may be non-tight or rectangular;
//! constructors never emit such arrays but external files can.

use serde::Serialize;

use crate::construct::{Axis, NzsArray};
use crate::modular::{AnchoredSequence, ModulusContext, Residue, SimplicityFailure};

/// A row or column of an array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineId {
    pub axis: Axis,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportCheck {
    pub ok: bool,
    /// Classes of `Z_v \ J` (as support values) not covered by `±A`.
    pub missing: Vec<u64>,
    /// Classes covered more than once.
    pub duplicated: Vec<u64>,
    /// Entries lying in `J` (support values; `0` for zero entries).
    pub forbidden: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumsCheck {
    pub ok: bool,
    pub offending: Vec<LineId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityWitness {
    pub line: LineId,
    pub failure: SimplicityFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalSimplicity {
    pub ok: bool,
    /// First failing line in row-then-column order.
    pub witness: Option<SimplicityWitness>,
}

/// Combined verification verdict; `overall` is the conjunction of the four
/// flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub filled_counts_ok: bool,
    pub support: SupportCheck,
    pub sums: SumsCheck,
    pub globally_simple: GlobalSimplicity,
    pub overall: bool,
}

fn check_filled_counts(a: &NzsArray) -> bool {
    let row_counts: Vec<usize> = (0..a.n_rows())
        .map(|i| a.line_elements(Axis::Row, i).len())
        .collect();
    let col_counts: Vec<usize> = (0..a.n_cols())
        .map(|j| a.line_elements(Axis::Col, j).len())
        .collect();
    let h = row_counts[0];
    let k = col_counts[0];
    h > 0 && k > 0 && row_counts.iter().all(|&c| c == h) && col_counts.iter().all(|&c| c == k)
}

fn check_support(a: &NzsArray) -> SupportCheck {
    let ctx = a.ctx();
    let half = ctx.half() as usize;
    let mut counts = vec![0u64; half + 1];
    let mut forbidden = Vec::new();
    for r in a.elements() {
        if ctx.in_subgroup(r) {
            forbidden.push(ctx.class_rep(r));
        } else {
            counts[ctx.class_rep(r) as usize] += 1;
        }
    }
    forbidden.sort();
    let mut missing = Vec::new();
    let mut duplicated = Vec::new();
    for c in 1..=half as u64 {
        if ctx.in_subgroup(ctx.residue(c)) {
            continue;
        }
        match counts[c as usize] {
            0 => missing.push(c),
            1 => {}
            _ => duplicated.push(c),
        }
    }
    let ok = missing.is_empty() && duplicated.is_empty() && forbidden.is_empty();
    SupportCheck {
        ok,
        missing,
        duplicated,
        forbidden,
    }
}

fn check_sums(a: &NzsArray) -> SumsCheck {
    let ctx = a.ctx();
    let mut offending = Vec::new();
    for axis in [Axis::Row, Axis::Col] {
        for index in 0..a.line_count(axis) {
            let total = a
                .line_elements(axis, index)
                .iter()
                .fold(ctx.residue(0), |acc, &e| ctx.add(acc, e));
            if total.is_zero() {
                offending.push(LineId { axis, index });
            }
        }
    }
    SumsCheck {
        ok: offending.is_empty(),
        offending,
    }
}

/// Global simplicity: every line, anchored at its first filled cell, has
/// nonzero pairwise distinct partial sums. Empty lines are skipped (they
/// already fail the fill-count check).
pub fn check_globally_simple(a: &NzsArray) -> GlobalSimplicity {
    let ctx = a.ctx();
    for axis in [Axis::Row, Axis::Col] {
        for index in 0..a.line_count(axis) {
            let elems = a.line_elements(axis, index);
            if elems.is_empty() {
                continue;
            }
            if let Err(failure) = AnchoredSequence::new(elems, 0).check_simple(&ctx) {
                return GlobalSimplicity {
                    ok: false,
                    witness: Some(SimplicityWitness {
                        line: LineId { axis, index },
                        failure,
                    }),
                };
            }
        }
    }
    GlobalSimplicity {
        ok: true,
        witness: None,
    }
}

/// Full verification of (a1), (b1), (c1) and global simplicity.
pub fn check_axioms(a: &NzsArray) -> VerificationReport {
    let filled_counts_ok = check_filled_counts(a);
    let support = check_support(a);
    let sums = check_sums(a);
    let globally_simple = check_globally_simple(a);
    let overall = filled_counts_ok && support.ok && sums.ok && globally_simple.ok;
    VerificationReport {
        filled_counts_ok,
        support,
        sums,
        globally_simple,
        overall,
    }
}

/// `t` is admissible when it divides `2nk/λ`.
pub fn is_admissible(n: u64, k: u64, t: u64, lambda: u64) -> bool {
    if n == 0 || k == 0 || t == 0 || lambda == 0 {
        return false;
    }
    let prod = 2 * n * k;
    prod.is_multiple_of(lambda) && (prod / lambda).is_multiple_of(t)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderingSearchError {
    #[error("multiset has {len} elements, above the search bound {bound}")]
    BoundExceeded { len: usize, bound: usize },
    #[error("no simple ordering exists")]
    NotFound,
}

/// Default size cap for [`find_simple_ordering`].
pub const DEFAULT_ORDERING_BOUND: usize = 12;

/// Backtracking search for a simple ordering of a multiset of residues.
///
/// Returns the lexicographically first (by canonical value) permutation
/// whose partial sums are nonzero and pairwise distinct.
pub fn find_simple_ordering(
    elements: &[Residue],
    ctx: &ModulusContext,
    bound: usize,
) -> Result<Vec<Residue>, OrderingSearchError> {
    if elements.len() > bound {
        return Err(OrderingSearchError::BoundExceeded {
            len: elements.len(),
            bound,
        });
    }
    let total = elements
        .iter()
        .fold(ctx.residue(0), |acc, &e| ctx.add(acc, e));
    if !elements.is_empty() && total.is_zero() {
        // The final partial sum is the total, so no ordering can be simple.
        return Err(OrderingSearchError::NotFound);
    }
    let mut pool: Vec<Residue> = elements.to_vec();
    pool.sort();
    let mut used = vec![false; pool.len()];
    let mut chosen = Vec::with_capacity(pool.len());
    let mut seen = std::collections::HashSet::new();
    if backtrack(
        &pool,
        ctx,
        &mut used,
        &mut chosen,
        ctx.residue(0),
        &mut seen,
    ) {
        Ok(chosen)
    } else {
        Err(OrderingSearchError::NotFound)
    }
}

fn backtrack(
    pool: &[Residue],
    ctx: &ModulusContext,
    used: &mut [bool],
    chosen: &mut Vec<Residue>,
    acc: Residue,
    seen: &mut std::collections::HashSet<u64>,
) -> bool {
    if chosen.len() == pool.len() {
        return true;
    }
    let mut prev: Option<Residue> = None;
    for i in 0..pool.len() {
        if used[i] || prev == Some(pool[i]) {
            continue;
        }
        let s = ctx.add(acc, pool[i]);
        if !s.is_zero() && !seen.contains(&s.value()) {
            used[i] = true;
            chosen.push(pool[i]);
            seen.insert(s.value());
            if backtrack(pool, ctx, used, chosen, s, seen) {
                return true;
            }
            seen.remove(&s.value());
            chosen.pop();
            used[i] = false;
        }
        prev = Some(pool[i]);
    }
    false
}

/// Direction in which a line is read cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Reverse,
}

/// Per-row and per-column reading directions. Rows cycle left-to-right when
/// forward, columns top-to-bottom; a reversed reading is anchored at the
/// line's last cell, so simplicity transfers from the forward reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedCyclicOrdering {
    pub row_dirs: Vec<Direction>,
    pub col_dirs: Vec<Direction>,
}

impl DirectedCyclicOrdering {
    pub fn all_forward(n: usize) -> Self {
        DirectedCyclicOrdering {
            row_dirs: vec![Direction::Forward; n],
            col_dirs: vec![Direction::Forward; n],
        }
    }

    /// The chosen reading of a line as an anchored sequence.
    pub fn reading(&self, a: &NzsArray, axis: Axis, index: usize) -> AnchoredSequence {
        let dir = match axis {
            Axis::Row => self.row_dirs[index],
            Axis::Col => self.col_dirs[index],
        };
        let natural = a.natural_ordering(axis, index);
        match dir {
            Direction::Forward => natural,
            Direction::Reverse => natural.reversed(),
        }
    }
}

/// Number of cycles of `ω_c ∘ ω_r` on the n² cells of a tight square under
/// the given directions. Compatibility means exactly one cycle.
pub fn composition_cycle_count(n: usize, dirs: &DirectedCyclicOrdering) -> usize {
    let step = |i: usize, j: usize| -> (usize, usize) {
        let j2 = match dirs.row_dirs[i] {
            Direction::Forward => (j + 1) % n,
            Direction::Reverse => (j + n - 1) % n,
        };
        let i2 = match dirs.col_dirs[j2] {
            Direction::Forward => (i + 1) % n,
            Direction::Reverse => (i + n - 1) % n,
        };
        (i2, j2)
    };
    let mut visited = vec![false; n * n];
    let mut cycles = 0;
    for start in 0..n * n {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let (mut i, mut j) = (start / n, start % n);
        while !visited[i * n + j] {
            visited[i * n + j] = true;
            let next = step(i, j);
            i = next.0;
            j = next.1;
        }
    }
    cycles
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompatibilityError {
    #[error("compatibility search requires a tight square array")]
    NotSquareTight,
    #[error("no compatible orderings found after {tries} candidates")]
    NotFound { tries: u64 },
}

/// Search for reading directions that make `ω_c ∘ ω_r` a single cycle on
/// all n² cells while keeping every chosen line reading simple.
///
/// Exhaustive over the `2^{2n}` direction patterns for `n <= 6`, seeded
/// random sampling beyond. Deterministic given `(seed, max_tries)`.
pub fn find_compatible_orderings(
    a: &NzsArray,
    seed: u64,
    max_tries: u64,
) -> Result<DirectedCyclicOrdering, CompatibilityError> {
    use rand::{Rng, SeedableRng};

    if !a.is_square() || !a.is_tight() {
        return Err(CompatibilityError::NotSquareTight);
    }
    let ctx = a.ctx();
    let n = a.n_rows();

    // Simplicity of each line in each direction, computed once.
    let line_ok = |axis: Axis| -> Vec<[bool; 2]> {
        (0..n)
            .map(|idx| {
                let fwd = a.natural_ordering(axis, idx);
                [fwd.is_simple(&ctx), fwd.reversed().is_simple(&ctx)]
            })
            .collect()
    };
    let rows_ok = line_ok(Axis::Row);
    let cols_ok = line_ok(Axis::Col);
    if rows_ok.iter().chain(&cols_ok).any(|ok| !ok[0] && !ok[1]) {
        // Some line is simple in neither direction: no pattern can work.
        return Err(CompatibilityError::NotFound { tries: 0 });
    }

    let viable = |dirs: &DirectedCyclicOrdering| -> bool {
        let dir_ok = |d: Direction, ok: &[bool; 2]| match d {
            Direction::Forward => ok[0],
            Direction::Reverse => ok[1],
        };
        dirs.row_dirs
            .iter()
            .zip(&rows_ok)
            .all(|(&d, ok)| dir_ok(d, ok))
            && dirs
                .col_dirs
                .iter()
                .zip(&cols_ok)
                .all(|(&d, ok)| dir_ok(d, ok))
            && composition_cycle_count(n, dirs) == 1
    };

    let decode_bit = |bit: bool| {
        if bit {
            Direction::Reverse
        } else {
            Direction::Forward
        }
    };

    if n <= 6 {
        let patterns = 1u64 << (2 * n);
        for mask in 0..patterns {
            let dirs = DirectedCyclicOrdering {
                row_dirs: (0..n).map(|i| decode_bit(mask >> i & 1 == 1)).collect(),
                col_dirs: (0..n)
                    .map(|j| decode_bit(mask >> (n + j) & 1 == 1))
                    .collect(),
            };
            if viable(&dirs) {
                return Ok(dirs);
            }
        }
        Err(CompatibilityError::NotFound { tries: patterns })
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..max_tries {
            let dirs = DirectedCyclicOrdering {
                row_dirs: (0..n).map(|_| decode_bit(rng.gen())).collect(),
                col_dirs: (0..n).map(|_| decode_bit(rng.gen())).collect(),
            };
            if viable(&dirs) {
                return Ok(dirs);
            }
        }
        Err(CompatibilityError::NotFound { tries: max_tries })
    }
}
