//! Face-2-colorable embeddings of `K_{v/t × t}` on orientable surfaces,
//! built from compatible simple orderings of an `NH_t(n;n)`.
//!
//! The rotation seed is the permutation on `±E(A)`
//!
//! ```text
//! ρ̄₀(a) = -ω_r(a)   if a ∈  E(A)
//! ρ̄₀(a) =  ω_c(-a)  if a ∈ -E(A)
//! ```
//!
//! which acts cyclically exactly when the orderings are compatible. Faces
//! are the orbits of the successor map `(x, x+a) ↦ (x+a, x+a+ρ̄₀(-a))` on
//! directed edges; orbits whose differences lie in `E(A)` are column faces,
//! the others row faces, and every undirected edge lies on one of each.

use serde::Serialize;

use crate::construct::{Axis, NzsArray};
use crate::modular::{gcd, ModulusContext, ParamError, Residue};
use crate::verify::DirectedCyclicOrdering;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RotationError {
    #[error("rotation requires a tight square array")]
    NotSquareTight,
    #[error("rho0 splits into {cycles} cycles; the orderings are not compatible")]
    NotCyclic { cycles: usize },
}

/// The rotation data: `ρ̄₀` on `±E(A)` plus the bookkeeping needed to trace
/// and label faces.
#[derive(Debug, Clone)]
pub struct RotationSeed {
    ctx: ModulusContext,
    /// Successor under `ρ̄₀`, indexed by canonical value; `u64::MAX` on `J`.
    rho0: Vec<u64>,
    /// Membership of each value in `E(A)` (the filled cells).
    in_ea: Vec<bool>,
    /// Cell `(i, j)` holding each value of `E(A)`.
    cell_of: Vec<Option<(usize, usize)>>,
}

impl RotationSeed {
    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn apply(&self, a: Residue) -> Residue {
        self.ctx.residue(self.rho0[a.value() as usize])
    }

    /// The full `ρ̄₀` cycle starting at the given value.
    pub fn cycle_from(&self, start: Residue) -> Vec<Residue> {
        let mut cycle = vec![start];
        let mut cur = self.apply(start);
        while cur != start {
            cycle.push(cur);
            cur = self.apply(cur);
        }
        cycle
    }
}

/// Build `ρ̄₀` from an array and reading directions, verifying that it acts
/// cyclically on the `2n²` signed entries.
pub fn build_rho0(
    a: &NzsArray,
    dirs: &DirectedCyclicOrdering,
) -> Result<RotationSeed, RotationError> {
    if !a.is_square() || !a.is_tight() {
        return Err(RotationError::NotSquareTight);
    }
    let ctx = a.ctx();
    let v = ctx.modulus() as usize;
    let n = a.n_rows();

    let mut in_ea = vec![false; v];
    for r in a.elements() {
        in_ea[r.value() as usize] = true;
    }
    let cell_of = a.cell_positions();

    // Per-line cyclic successor maps on values.
    let mut omega_r = vec![u64::MAX; v];
    let mut omega_c = vec![u64::MAX; v];
    for axis in [Axis::Row, Axis::Col] {
        for index in 0..n {
            let reading = dirs.reading(a, axis, index);
            let vals: Vec<Residue> = reading.iter().collect();
            let map = match axis {
                Axis::Row => &mut omega_r,
                Axis::Col => &mut omega_c,
            };
            for (m, &val) in vals.iter().enumerate() {
                map[val.value() as usize] = vals[(m + 1) % vals.len()].value();
            }
        }
    }

    let mut rho0 = vec![u64::MAX; v];
    for x in 0..v as u64 {
        let r = ctx.residue(x);
        if ctx.in_subgroup(r) {
            continue;
        }
        rho0[x as usize] = if in_ea[x as usize] {
            ctx.neg(ctx.residue(omega_r[x as usize])).value()
        } else {
            omega_c[ctx.neg(r).value() as usize]
        };
    }

    let seed = RotationSeed {
        ctx,
        rho0,
        in_ea,
        cell_of,
    };

    // Cycle structure check: one cycle through all of ±E(A).
    let domain = (ctx.modulus() - ctx.t()) as usize;
    let start = ctx.residue(
        (0..v as u64)
            .find(|&x| !ctx.in_subgroup(ctx.residue(x)))
            .expect("t < v"),
    );
    let cycle = seed.cycle_from(start);
    if cycle.len() != domain {
        let mut seen = vec![false; v];
        for r in &cycle {
            seen[r.value() as usize] = true;
        }
        let mut cycles = 1;
        for x in 0..v {
            if seed.rho0[x] != u64::MAX && !seen[x] {
                cycles += 1;
                let mut cur = ctx.residue(x as u64);
                while !seen[cur.value() as usize] {
                    seen[cur.value() as usize] = true;
                    cur = seed.apply(cur);
                }
            }
        }
        return Err(RotationError::NotCyclic { cycles });
    }
    Ok(seed)
}

/// Face color: column faces have their boundary differences in `E(A)`,
/// row faces in `-E(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceColor {
    Row,
    Col,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub color: FaceColor,
    /// Index of the row/column whose ordering generates the face.
    pub generator: usize,
    /// Number of edges (= boundary vertices).
    pub length: usize,
    /// Boundary vertex cycle, rotated to start at its minimal vertex with
    /// the traced orientation preserved.
    pub boundary: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub color: FaceColor,
    pub length: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub vertices: u64,
    pub edges: u64,
    pub face_count: usize,
    pub genus: u64,
    pub spectrum: Vec<SpectrumEntry>,
    pub faces: Vec<Face>,
}

/// Trace all faces of the embedding as orbits of the successor map on
/// directed edges, 2-color them, and compute the genus from Euler's
/// formula.
pub fn trace_faces(seed: &RotationSeed) -> EmbeddingReport {
    let ctx = seed.ctx;
    let v = ctx.modulus();
    let degree = v - ctx.t();

    // Connectivity: the connection set Z_v \ J generates Z_v.
    let mut unit = v;
    for a in 0..v {
        if !ctx.in_subgroup(ctx.residue(a)) {
            unit = gcd(unit, a);
        }
    }
    assert_eq!(unit, 1, "Cayley graph on Z_v \\ J must be connected");

    // Rank of each non-J value, for dense directed-edge indices.
    let mut rank = vec![usize::MAX; v as usize];
    let mut next = 0usize;
    for a in 0..v {
        if !ctx.in_subgroup(ctx.residue(a)) {
            rank[a as usize] = next;
            next += 1;
        }
    }
    let state = |x: u64, a: u64| -> usize { x as usize * degree as usize + rank[a as usize] };

    let mut visited = vec![false; (v * degree) as usize];
    let mut faces = Vec::new();
    for x0 in 0..v {
        for a0 in 0..v {
            if ctx.in_subgroup(ctx.residue(a0)) || visited[state(x0, a0)] {
                continue;
            }
            let mut boundary = Vec::new();
            let (mut x, mut a) = (x0, a0);
            while !visited[state(x, a)] {
                visited[state(x, a)] = true;
                boundary.push(x);
                let ar = ctx.residue(a);
                x = ctx.add(ctx.residue(x), ar).value();
                a = seed.apply(ctx.neg(ar)).value();
            }
            let color = if seed.in_ea[a0 as usize] {
                FaceColor::Col
            } else {
                FaceColor::Row
            };
            let generator = match color {
                FaceColor::Col => seed.cell_of[a0 as usize].expect("value in E(A)").1,
                FaceColor::Row => {
                    seed.cell_of[ctx.neg(ctx.residue(a0)).value() as usize]
                        .expect("negated value in E(A)")
                        .0
                }
            };
            let min_pos = boundary
                .iter()
                .enumerate()
                .min_by_key(|(_, &x)| x)
                .map(|(i, _)| i)
                .unwrap();
            boundary.rotate_left(min_pos);
            faces.push(Face {
                color,
                generator,
                length: boundary.len(),
                boundary,
            });
        }
    }

    faces.sort_by(|f, g| {
        (f.color, f.generator, f.length, &f.boundary).cmp(&(
            g.color,
            g.generator,
            g.length,
            &g.boundary,
        ))
    });

    let mut spectrum_map: std::collections::BTreeMap<(FaceColor, usize), usize> =
        std::collections::BTreeMap::new();
    for f in &faces {
        *spectrum_map.entry((f.color, f.length)).or_insert(0) += 1;
    }
    let spectrum = spectrum_map
        .into_iter()
        .map(|((color, length), count)| SpectrumEntry {
            color,
            length,
            count,
        })
        .collect();

    let edges = v * degree / 2;
    let face_count = faces.len();
    let chi = v as i64 - edges as i64 + face_count as i64;
    assert!(
        chi % 2 == 0 && chi <= 2,
        "orientable closed surface has even χ ≤ 2"
    );
    let genus = ((2 - chi) / 2) as u64;

    EmbeddingReport {
        vertices: v,
        edges,
        face_count,
        genus,
        spectrum,
        faces,
    }
}

/// Least `λ > 0` with `λ · (sum of line) = 0` in `Z_v`; the faces induced
/// by the line have length `n·λ` and there are `v/λ` of them.
pub fn line_lambda(a: &NzsArray, axis: Axis, index: usize) -> u64 {
    let ctx = a.ctx();
    let total = a
        .line_elements(axis, index)
        .iter()
        .fold(ctx.residue(0), |acc, &e| ctx.add(acc, e));
    ctx.modulus() / gcd(total.value(), ctx.modulus())
}

/// Which face-length law applies to an embedding built from the
/// construction for the given `(n, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceLengthRule {
    /// `t = 2`, odd `n`: lengths `4n` or multiples of `n(n²+1)/2`.
    T2,
    /// `t = 2n`, odd prime `n`: lengths `4n` or multiples of `n²`.
    T2n,
    /// `t = n²`, odd prime `n`: lengths `3n²` or `3n³`.
    Tn2,
    /// `t = 2n²`, odd prime `n`: lengths `4n`, `4n²` or `4n³`.
    T2n2,
    /// `t = n`, odd `n` with `2n+1` prime: lengths multiples of `n(2n+1)`.
    TDivN,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumCheck {
    pub ok: bool,
    pub rule: FaceLengthRule,
    /// Face lengths violating the rule.
    pub violations: Vec<usize>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Check a traced face-length spectrum against the law predicted for
/// `(n, t)`. Unsupported when no law's hypotheses hold.
pub fn predicted_spectrum_check(
    report: &EmbeddingReport,
    n: u64,
    t: u64,
) -> Result<SpectrumCheck, ParamError> {
    let odd = n % 2 == 1;
    let rule = if t == 2 && odd {
        FaceLengthRule::T2
    } else if t == 2 * n && odd && is_prime(n) {
        FaceLengthRule::T2n
    } else if t == n * n && odd && is_prime(n) {
        FaceLengthRule::Tn2
    } else if t == 2 * n * n && odd && is_prime(n) {
        FaceLengthRule::T2n2
    } else if t == n && odd && is_prime(2 * n + 1) {
        FaceLengthRule::TDivN
    } else {
        return Err(ParamError::Unsupported { n, t });
    };
    let nn = n as usize;
    let admissible = |len: usize| -> bool {
        match rule {
            FaceLengthRule::T2 => {
                let m = nn * (nn * nn + 1) / 2;
                len == 4 * nn || len.is_multiple_of(m)
            }
            FaceLengthRule::T2n => len == 4 * nn || len.is_multiple_of(nn * nn),
            FaceLengthRule::Tn2 => len == 3 * nn * nn || len == 3 * nn * nn * nn,
            FaceLengthRule::T2n2 => len == 4 * nn || len == 4 * nn * nn || len == 4 * nn * nn * nn,
            FaceLengthRule::TDivN => len.is_multiple_of(nn * (2 * nn + 1)),
        }
    };
    let violations: Vec<usize> = report
        .spectrum
        .iter()
        .filter(|e| !admissible(e.length))
        .map(|e| e.length)
        .collect();
    Ok(SpectrumCheck {
        ok: violations.is_empty(),
        rule,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::verify::find_compatible_orderings;

    fn embed(n: u64, t: u64) -> EmbeddingReport {
        let a = construct::construct(n, t).unwrap();
        let dirs = find_compatible_orderings(&a, 1, 100_000).unwrap();
        let seed = build_rho0(&a, &dirs).unwrap();
        trace_faces(&seed)
    }

    #[test]
    fn rho0_n1_is_a_two_cycle() {
        let a = construct::construct(1, 1).unwrap();
        let dirs = find_compatible_orderings(&a, 0, 10).unwrap();
        let seed = build_rho0(&a, &dirs).unwrap();
        let ctx = a.ctx();
        // 1 → -1 → 1 in Z_3.
        assert_eq!(seed.apply(ctx.residue(1)), ctx.residue(2));
        assert_eq!(seed.apply(ctx.residue(2)), ctx.residue(1));
        assert_eq!(seed.cycle_from(ctx.residue(1)).len(), 2);
    }

    #[test]
    fn rho0_single_cycle_for_compatible_dirs() {
        let a = construct::t2(3).unwrap();
        let dirs = find_compatible_orderings(&a, 0, 10).unwrap();
        let seed = build_rho0(&a, &dirs).unwrap();
        let start = a.elements().next().unwrap();
        assert_eq!(seed.cycle_from(start).len(), 18);
    }

    #[test]
    fn rho0_rejects_incompatible_dirs() {
        use crate::verify::DirectedCyclicOrdering;
        let a = construct::t2(3).unwrap();
        let all_fwd = DirectedCyclicOrdering::all_forward(3);
        // ω_c ∘ ω_r has 3 cycles under all-forward readings, so ρ̄₀ splits.
        let err = build_rho0(&a, &all_fwd).unwrap_err();
        assert_eq!(err, RotationError::NotCyclic { cycles: 3 });
    }

    #[test]
    fn k3_embeds_on_the_sphere() {
        let report = embed(1, 1);
        assert_eq!(report.vertices, 3);
        assert_eq!(report.edges, 3);
        assert_eq!(report.face_count, 2);
        assert_eq!(report.genus, 0);
        // Two triangles, one of each color.
        assert_eq!(report.faces[0].length, 3);
        assert_eq!(report.faces[1].length, 3);
        assert_ne!(report.faces[0].color, report.faces[1].color);
    }

    #[test]
    fn embedding_n3_t3() {
        // Line sums of the NH_3(3;3) are 8, 12, 10 (rows) and 9, 12, 9
        // (columns) mod 21, so λ is (21, 7, 21) for rows and 7 for every
        // column: 9 column faces of length 21, and row faces 63, 21×3, 63.
        let report = embed(3, 3);
        assert_eq!(report.face_count, 14);
        assert_eq!(report.genus, 78);
        let mut spectrum: Vec<(FaceColor, usize, usize)> = report
            .spectrum
            .iter()
            .map(|e| (e.color, e.length, e.count))
            .collect();
        spectrum.sort();
        assert_eq!(
            spectrum,
            vec![
                (FaceColor::Row, 21, 3),
                (FaceColor::Row, 63, 2),
                (FaceColor::Col, 21, 9)
            ]
        );
    }

    #[test]
    fn embedding_n3_t2() {
        let report = embed(3, 2);
        assert_eq!(report.face_count, 22);
        assert_eq!(report.genus, 70);
        let mut spectrum: Vec<(FaceColor, usize, usize)> = report
            .spectrum
            .iter()
            .map(|e| (e.color, e.length, e.count))
            .collect();
        spectrum.sort();
        assert_eq!(
            spectrum,
            vec![
                (FaceColor::Row, 12, 5),
                (FaceColor::Row, 15, 4),
                (FaceColor::Row, 30, 2),
                (FaceColor::Col, 12, 5),
                (FaceColor::Col, 15, 4),
                (FaceColor::Col, 30, 2),
            ]
        );
    }

    #[test]
    fn line_lambda_examples() {
        let a = construct::t2(3).unwrap();
        // Column 2 sums to -5 mod 20: order 4, face length 12 = 4n.
        assert_eq!(line_lambda(&a, Axis::Col, 1), 4);
        let a = construct::t_div_n(3, 3).unwrap();
        // Every column sum (9, 12, 9) has gcd 3 with 21.
        for j in 0..3 {
            assert_eq!(line_lambda(&a, Axis::Col, j), 7);
        }
        // Row sums are 8, 12, 10: the middle one shares a factor 3 with 21.
        assert_eq!(line_lambda(&a, Axis::Row, 0), 21);
        assert_eq!(line_lambda(&a, Axis::Row, 1), 7);
        assert_eq!(line_lambda(&a, Axis::Row, 2), 21);
    }

    /// Face counts and lengths per generating line match v/λ and n·λ.
    #[test]
    fn faces_match_line_lambdas() {
        for (n, t) in [(3u64, 3u64), (3, 2), (5, 5), (5, 2), (7, 2)] {
            let a = construct::construct(n, t).unwrap();
            let ctx = a.ctx();
            let dirs = find_compatible_orderings(&a, 1, 100_000).unwrap();
            let seed = build_rho0(&a, &dirs).unwrap();
            let report = trace_faces(&seed);
            for axis in [Axis::Row, Axis::Col] {
                let color = match axis {
                    Axis::Row => FaceColor::Row,
                    Axis::Col => FaceColor::Col,
                };
                for idx in 0..n as usize {
                    let lambda = line_lambda(&a, axis, idx);
                    let of_line: Vec<&Face> = report
                        .faces
                        .iter()
                        .filter(|f| f.color == color && f.generator == idx)
                        .collect();
                    assert_eq!(of_line.len() as u64, ctx.modulus() / lambda);
                    for f in of_line {
                        assert_eq!(f.length as u64, n * lambda);
                    }
                }
            }
        }
    }

    #[test]
    fn spectrum_rules() {
        // (n=3, t=3): multiples of 21.
        let report = embed(3, 3);
        let check = predicted_spectrum_check(&report, 3, 3).unwrap();
        assert!(check.ok);
        assert_eq!(check.rule, FaceLengthRule::TDivN);

        // (n=3, t=9): lengths in {27, 81}.
        let report = embed(3, 9);
        let check = predicted_spectrum_check(&report, 3, 9).unwrap();
        assert!(check.ok);
        assert_eq!(check.rule, FaceLengthRule::Tn2);
        assert!(report
            .spectrum
            .iter()
            .all(|e| e.length == 27 || e.length == 81));

        // (n=3, t=18): lengths in {12, 36, 108}.
        let report = embed(3, 18);
        let check = predicted_spectrum_check(&report, 3, 18).unwrap();
        assert!(check.ok);
        assert_eq!(check.rule, FaceLengthRule::T2n2);
        assert!(report
            .spectrum
            .iter()
            .all(|e| [12, 36, 108].contains(&e.length)));

        // t = 2 applies for every odd n, no primality needed.
        let report = embed(3, 2);
        assert!(predicted_spectrum_check(&report, 3, 2).unwrap().ok);
        // No law matches (9, 4): t is none of 2, n, 2n, n², 2n².
        assert_eq!(
            predicted_spectrum_check(&report, 9, 4),
            Err(ParamError::Unsupported { n: 9, t: 4 })
        );
        // n=1, t=1 falls to the t=n rule (2n+1 = 3 prime).
        let check = predicted_spectrum_check(&embed(1, 1), 1, 1).unwrap();
        assert_eq!(check.rule, FaceLengthRule::TDivN);
        assert!(check.ok);
    }

    /// Every traced face, as an edge set, is the circuit closure of one
    /// developed path block: row faces come from the decomposition built on
    /// the reversed row readings, column faces from the column readings.
    #[test]
    fn faces_are_circuits_of_the_decompositions() {
        use crate::decompose::{circuit_closure, Decomposition, Edge};
        use crate::verify::Direction;
        use std::collections::BTreeSet;

        for (n, t) in [(1u64, 1u64), (3, 3), (3, 2), (5, 2)] {
            let a = construct::construct(n, t).unwrap();
            let ctx = a.ctx();
            let dirs = find_compatible_orderings(&a, 3, 100_000).unwrap();
            let seed = build_rho0(&a, &dirs).unwrap();
            let report = trace_faces(&seed);

            let face_sets = |color: FaceColor| -> BTreeSet<BTreeSet<Edge>> {
                report
                    .faces
                    .iter()
                    .filter(|f| f.color == color)
                    .map(|f| {
                        (0..f.boundary.len())
                            .map(|m| {
                                let x = f.boundary[m];
                                let y = f.boundary[(m + 1) % f.boundary.len()];
                                (x.min(y), x.max(y))
                            })
                            .collect()
                    })
                    .collect()
            };

            let circuit_sets = |d: &Decomposition| -> BTreeSet<BTreeSet<Edge>> {
                d.developed()
                    .map(|(_, block)| circuit_closure(&block, &ctx).edges().collect())
                    .collect()
            };

            // D_{ω_c}: columns in their chosen directions.
            let col_readings = (0..n as usize)
                .map(|j| dirs.reading(&a, Axis::Col, j))
                .collect();
            let dc = Decomposition::from_readings(&ctx, Axis::Col, col_readings).unwrap();
            assert_eq!(face_sets(FaceColor::Col), circuit_sets(&dc));

            // D_{ω_r^{-1}}: rows read against their chosen directions,
            // anchored at the last element of the chosen reading.
            let flip = |d: Direction| match d {
                Direction::Forward => Direction::Reverse,
                Direction::Reverse => Direction::Forward,
            };
            let inv = DirectedCyclicOrdering {
                row_dirs: dirs.row_dirs.iter().map(|&d| flip(d)).collect(),
                col_dirs: dirs.col_dirs.clone(),
            };
            let row_readings = (0..n as usize)
                .map(|i| inv.reading(&a, Axis::Row, i))
                .collect();
            let dr_inv = Decomposition::from_readings(&ctx, Axis::Row, row_readings).unwrap();
            assert_eq!(face_sets(FaceColor::Row), circuit_sets(&dr_inv));
        }
    }

    /// Genus and closure sanity across a sweep: χ even, orbit lengths sum
    /// to v(v-t).
    #[test]
    fn closure_sweep() {
        for (n, t) in [
            (1u64, 1u64),
            (1, 2),
            (3, 2),
            (3, 3),
            (3, 6),
            (3, 9),
            (3, 18),
            (5, 2),
        ] {
            let report = embed(n, t);
            let total: usize = report.faces.iter().map(|f| f.length).sum();
            // Directed edges: v · (v - t) with v - t = 2n².
            assert_eq!(total as u64, report.vertices * 2 * n * n);
        }
    }
}
