//! Independent brute-force references for validating the fast paths: naive
//! partial-sum accumulation, naive edge-cover counting, and exhaustive
//! enumeration of the `NH_t(2;2)`.
//!
//! Nothing here shares code with the implementation it checks.

use std::collections::BTreeMap;

use crate::construct::{NzsArray, Provenance};
use crate::decompose::{Edge, PathBlock};
use crate::modular::{ModulusContext, ParamError, Residue};

/// Naive left fold of partial sums mod `v`.
pub fn accumulate(seq: &[Residue], ctx: &ModulusContext) -> Vec<Residue> {
    let mut out = Vec::with_capacity(seq.len());
    let mut acc: i64 = 0;
    for e in seq {
        acc = (acc + e.value() as i64).rem_euclid(ctx.modulus() as i64);
        out.push(ctx.reduce(acc));
    }
    out
}

/// Exact multiplicity of every undirected edge covered by the blocks,
/// counted edge by edge with no index structure.
pub fn count_edge_cover(blocks: &[PathBlock]) -> BTreeMap<Edge, u64> {
    let mut counts = BTreeMap::new();
    for block in blocks {
        for e in block.edges() {
            *counts.entry(e).or_insert(0) += 1;
        }
    }
    counts
}

fn nh22_classes(t: u64) -> Result<(ModulusContext, Vec<u64>), ParamError> {
    if !matches!(t, 1 | 2 | 4 | 8) {
        return Err(ParamError::Unsupported { n: 2, t });
    }
    let ctx = ModulusContext::new(2, t)?;
    let classes: Vec<u64> = (1..=ctx.half())
        .filter(|&c| !ctx.in_subgroup(ctx.residue(c)))
        .collect();
    debug_assert_eq!(classes.len(), 4);
    Ok((ctx, classes))
}

fn grid_to_array(ctx: ModulusContext, grid: &[i64; 4]) -> NzsArray {
    let rows = vec![
        vec![Some(grid[0]), Some(grid[1])],
        vec![Some(grid[2]), Some(grid[3])],
    ];
    NzsArray::from_signed_rows(ctx.n(), ctx.t(), &rows, Provenance::External).unwrap()
}

/// Independent check of (c1) and global simplicity on a filled 2×2 grid of
/// signed entries; (a1) and (b1) hold by construction of the enumeration.
fn naive_grid_ok(grid: &[i64; 4], v: u64) -> bool {
    let lines = [
        [grid[0], grid[1]], // rows
        [grid[2], grid[3]],
        [grid[0], grid[2]], // columns
        [grid[1], grid[3]],
    ];
    for line in lines {
        let s1 = line[0].rem_euclid(v as i64);
        let s2 = (line[0] + line[1]).rem_euclid(v as i64);
        if s1 == 0 || s2 == 0 || s1 == s2 {
            return false;
        }
    }
    true
}

/// The full assignment space for `NH_t(2;2)`: every placement of the four
/// ± classes into the four cells with every sign pattern, in lexicographic
/// candidate order, with the naive pass/fail verdict.
pub fn enumerate_nh22_candidates(t: u64) -> Result<Vec<(NzsArray, bool)>, ParamError> {
    let (ctx, classes) = nh22_classes(t)?;
    let v = ctx.modulus();
    let mut out = Vec::new();
    let mut used = [false; 4];
    let mut grid = [0i64; 4];
    fn rec(
        cell: usize,
        classes: &[u64],
        used: &mut [bool; 4],
        grid: &mut [i64; 4],
        v: u64,
        ctx: ModulusContext,
        out: &mut Vec<(NzsArray, bool)>,
    ) {
        if cell == 4 {
            out.push((grid_to_array(ctx, grid), naive_grid_ok(grid, v)));
            return;
        }
        for c in 0..4 {
            if used[c] {
                continue;
            }
            used[c] = true;
            for sign in [1i64, -1] {
                grid[cell] = sign * classes[c] as i64;
                rec(cell + 1, classes, used, grid, v, ctx, out);
            }
            used[c] = false;
        }
    }
    rec(0, &classes, &mut used, &mut grid, v, ctx, &mut out);
    Ok(out)
}

/// All `NH_t(2;2)` satisfying (a1), (b1), (c1) and global simplicity, found
/// by backtracking with early pruning on zero row/column sums. Output order
/// is lexicographic in candidate order.
pub fn enumerate_nh22(t: u64) -> Result<Vec<NzsArray>, ParamError> {
    let (ctx, classes) = nh22_classes(t)?;
    let v = ctx.modulus() as i64;
    let mut out = Vec::new();
    let mut used = [false; 4];
    let mut grid = [0i64; 4];
    fn rec(
        cell: usize,
        classes: &[u64],
        used: &mut [bool; 4],
        grid: &mut [i64; 4],
        v: i64,
        ctx: ModulusContext,
        out: &mut Vec<NzsArray>,
    ) {
        if cell == 4 {
            out.push(grid_to_array(ctx, grid));
            return;
        }
        for c in 0..4 {
            if used[c] {
                continue;
            }
            used[c] = true;
            for sign in [1i64, -1] {
                grid[cell] = sign * classes[c] as i64;
                // Prune as soon as a completed line sums to zero: for
                // two-cell lines with nonzero entries this is the whole
                // simplicity condition.
                let ok = match cell {
                    1 => (grid[0] + grid[1]).rem_euclid(v) != 0,
                    2 => (grid[0] + grid[2]).rem_euclid(v) != 0,
                    3 => {
                        (grid[2] + grid[3]).rem_euclid(v) != 0
                            && (grid[1] + grid[3]).rem_euclid(v) != 0
                    }
                    _ => true,
                };
                if ok {
                    rec(cell + 1, classes, used, grid, v, ctx, out);
                }
            }
            used[c] = false;
        }
    }
    rec(0, &classes, &mut used, &mut grid, v, ctx, &mut out);
    Ok(out)
}

/// Reduce an enumeration to one representative per symmetry orbit. The
/// group (order 16) is generated by swapping the two rows, swapping the two
/// columns, transposing, and negating every entry; each generator preserves
/// (a1), (b1), (c1) and global simplicity (line reversals keep orderings
/// simple). Keeps the lexicographically smallest signed grid of each orbit.
pub fn reduce_by_symmetry(arrays: &[NzsArray]) -> Vec<NzsArray> {
    fn grid_of(a: &NzsArray) -> [i64; 4] {
        let rows = a.signed_rows();
        [
            rows[0][0].unwrap(),
            rows[0][1].unwrap(),
            rows[1][0].unwrap(),
            rows[1][1].unwrap(),
        ]
    }
    fn orbit_min(g: [i64; 4]) -> [i64; 4] {
        let mut best = [i64::MAX; 4];
        for &row_swap in &[false, true] {
            for &col_swap in &[false, true] {
                for &transpose in &[false, true] {
                    for &negate in &[false, true] {
                        let mut h = g;
                        if row_swap {
                            h = [h[2], h[3], h[0], h[1]];
                        }
                        if col_swap {
                            h = [h[1], h[0], h[3], h[2]];
                        }
                        if transpose {
                            h = [h[0], h[2], h[1], h[3]];
                        }
                        if negate {
                            h = [-h[0], -h[1], -h[2], -h[3]];
                        }
                        if h < best {
                            best = h;
                        }
                    }
                }
            }
        }
        best
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for a in arrays {
        if seen.insert(orbit_min(grid_of(a))) {
            out.push(a.clone());
        }
    }
    out
}
