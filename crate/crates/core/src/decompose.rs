//! Cyclic path decompositions of the complete multipartite graph
//! `K_{v/t × t}`, realized as the Cayley graph on `Z_v` with connection set
//! `Z_v \ J`.
//!
//! A simple ordering of a line with partial sums `s_1, ..., s_k` yields the
//! base path `(0, s_1, ..., s_k)`; developing the base paths by every
//! translate of `Z_v` partitions the edge set, and the row and column
//! decompositions of one array are orthogonal.

use std::collections::HashMap;

use serde::Serialize;

use crate::construct::{Axis, NzsArray};
use crate::modular::{gcd, AnchoredSequence, ModulusContext, Residue, SimplicityFailure};
use crate::verify::{LineId, SimplicityWitness};

/// Canonical undirected edge: `(min, max)` of the two endpoint values.
pub type Edge = (u64, u64);

fn edge(x: Residue, y: Residue) -> Edge {
    let (a, b) = (x.value(), y.value());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A path on `k+1` distinct vertices of `Z_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathBlock {
    vertices: Vec<Residue>,
}

impl PathBlock {
    pub fn vertices(&self) -> &[Residue] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn translate(&self, g: Residue, ctx: &ModulusContext) -> PathBlock {
        PathBlock {
            vertices: self.vertices.iter().map(|&x| ctx.add(x, g)).collect(),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| edge(w[0], w[1]))
    }
}

/// Base path `(0, s_1, ..., s_k)` of a simple ordering; fails with the
/// simplicity witness when the partial sums collide.
pub fn base_block(
    line: &AnchoredSequence,
    ctx: &ModulusContext,
) -> Result<PathBlock, SimplicityFailure> {
    line.check_simple(ctx)?;
    let mut vertices = vec![ctx.residue(0)];
    vertices.extend(line.partial_sums(ctx));
    Ok(PathBlock { vertices })
}

/// All unordered pairs `{x, y}` of `Z_v` with `x - y ∉ J`, i.e. the edges
/// of `K_{v/t × t}`; there are `v(v-t)/2` of them.
pub fn multipartite_edges(ctx: &ModulusContext) -> Vec<Edge> {
    let v = ctx.modulus();
    let mut edges = Vec::with_capacity((v * (v - ctx.t()) / 2) as usize);
    for x in 0..v {
        for y in x + 1..v {
            if !ctx.in_subgroup(ctx.sub(ctx.residue(y), ctx.residue(x))) {
                edges.push((x, y));
            }
        }
    }
    edges
}

/// A cyclic decomposition given by its base blocks: the full block set is
/// `{B + g : B base, g ∈ Z_v}`.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    #[serde(skip)]
    ctx: ModulusContext,
    pub axis: Axis,
    pub base_blocks: Vec<PathBlock>,
}

/// Identifies a developed block: base block index and translate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DevBlockId {
    pub base: usize,
    pub shift: u64,
}

impl Decomposition {
    /// Base blocks from the natural orderings of every line along `axis`.
    pub fn from_natural_orderings(a: &NzsArray, axis: Axis) -> Result<Self, SimplicityWitness> {
        let ctx = a.ctx();
        let readings = (0..a.line_count(axis))
            .map(|idx| a.natural_ordering(axis, idx))
            .collect();
        Decomposition::from_readings(&ctx, axis, readings)
    }

    /// Base blocks from arbitrary simple readings of the lines.
    pub fn from_readings(
        ctx: &ModulusContext,
        axis: Axis,
        readings: Vec<AnchoredSequence>,
    ) -> Result<Self, SimplicityWitness> {
        let mut base_blocks = Vec::with_capacity(readings.len());
        for (index, line) in readings.iter().enumerate() {
            let block = base_block(line, ctx).map_err(|failure| SimplicityWitness {
                line: LineId { axis, index },
                failure,
            })?;
            base_blocks.push(block);
        }
        Ok(Decomposition {
            ctx: *ctx,
            axis,
            base_blocks,
        })
    }

    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    /// Developed blocks in `(base, shift)` order.
    pub fn developed(&self) -> impl Iterator<Item = (DevBlockId, PathBlock)> + '_ {
        self.base_blocks
            .iter()
            .enumerate()
            .flat_map(move |(base, block)| {
                (0..self.ctx.modulus()).map(move |shift| {
                    (
                        DevBlockId { base, shift },
                        block.translate(self.ctx.residue(shift), &self.ctx),
                    )
                })
            })
    }

    /// Edge multiplicities of the developed decomposition, sharded over
    /// `threads` workers by translate.
    pub fn edge_multiplicities(&self, threads: usize) -> HashMap<Edge, u64> {
        let v = self.ctx.modulus();
        let count_range = |lo: u64, hi: u64| -> HashMap<Edge, u64> {
            let mut counts = HashMap::new();
            for block in &self.base_blocks {
                for shift in lo..hi {
                    let t = block.translate(self.ctx.residue(shift), &self.ctx);
                    for e in t.edges() {
                        *counts.entry(e).or_insert(0) += 1;
                    }
                }
            }
            counts
        };
        if threads <= 1 || v < threads as u64 {
            return count_range(0, v);
        }
        let chunk = v.div_ceil(threads as u64);
        let partials: Vec<HashMap<Edge, u64>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(v);
                    scope.spawn(move || count_range(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut counts = HashMap::new();
        for partial in partials {
            for (e, c) in partial {
                *counts.entry(e).or_insert(0) += c;
            }
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub ok: bool,
    /// Edges of `K_{v/t × t}` not covered.
    pub uncovered: Vec<Edge>,
    /// Edges covered more than once or lying outside the graph, with their
    /// multiplicities.
    pub overcovered: Vec<(Edge, u64)>,
}

/// Does the developed decomposition partition `E(K_{v/t × t})`?
pub fn check_partition(d: &Decomposition) -> PartitionCheck {
    check_partition_threaded(d, 1)
}

pub fn check_partition_threaded(d: &Decomposition, threads: usize) -> PartitionCheck {
    let ctx = d.ctx();
    let mut counts = d.edge_multiplicities(threads);
    let mut uncovered = Vec::new();
    let mut overcovered = Vec::new();
    for e in multipartite_edges(&ctx) {
        match counts.remove(&e) {
            None => uncovered.push(e),
            Some(1) => {}
            Some(m) => overcovered.push((e, m)),
        }
    }
    // Whatever remains covers pairs outside the multipartite edge set
    // (differences in J).
    let mut stray: Vec<(Edge, u64)> = counts.into_iter().collect();
    stray.sort();
    overcovered.extend(stray);
    PartitionCheck {
        ok: uncovered.is_empty() && overcovered.is_empty(),
        uncovered,
        overcovered,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityViolation {
    pub first: DevBlockId,
    pub second: DevBlockId,
    pub shared: Vec<Edge>,
}

/// Orthogonality: any block of `d1` and any block of `d2` share at most one
/// edge. Checked through an edge-to-block index of `d1`, O(E) overall.
pub fn check_orthogonal(
    d1: &Decomposition,
    d2: &Decomposition,
) -> Result<(), OrthogonalityViolation> {
    assert_eq!(
        d1.ctx().modulus(),
        d2.ctx().modulus(),
        "decompositions share the modulus"
    );
    let mut index: HashMap<Edge, Vec<DevBlockId>> = HashMap::new();
    for (id, block) in d1.developed() {
        for e in block.edges() {
            index.entry(e).or_default().push(id);
        }
    }
    for (id2, block) in d2.developed() {
        let mut seen: HashMap<DevBlockId, Edge> = HashMap::new();
        for e in block.edges() {
            for &id1 in index.get(&e).map_or(&[][..], |v| v) {
                if let Some(&prev) = seen.get(&id1) {
                    return Err(OrthogonalityViolation {
                        first: id1,
                        second: id2,
                        shared: vec![prev, e],
                    });
                }
                seen.insert(id1, e);
            }
        }
    }
    Ok(())
}

/// A closed circuit obtained by chaining translates of a path by its
/// endpoint difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Circuit {
    /// Closed walk; the edge back to `vertices[0]` is implicit.
    pub vertices: Vec<Residue>,
    /// Closure multiplier: least `λ > 0` with `λ(x_k - x_0) = 0`.
    pub lambda: u64,
    pub source: PathBlock,
}

impl Circuit {
    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertices.len()).map(|i| {
            edge(
                self.vertices[i],
                self.vertices[(i + 1) % self.vertices.len()],
            )
        })
    }
}

/// Close a path into the circuit `C_P = ∪_{i<λ} (P + i(x_k - x_0))` with
/// `λ = v / gcd(x_k - x_0, v)`.
pub fn circuit_closure(p: &PathBlock, ctx: &ModulusContext) -> Circuit {
    let verts = p.vertices();
    let d = ctx.sub(*verts.last().unwrap(), verts[0]);
    let lambda = ctx.modulus() / gcd(d.value(), ctx.modulus());
    let mut vertices = Vec::with_capacity(lambda as usize * (verts.len() - 1));
    for i in 0..lambda {
        let offset = ctx.mul_small(i, d);
        vertices.extend(verts[..verts.len() - 1].iter().map(|&x| ctx.add(x, offset)));
    }
    Circuit {
        vertices,
        lambda,
        source: p.clone(),
    }
}
