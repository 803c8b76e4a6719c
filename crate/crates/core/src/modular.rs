//! Exact arithmetic in `Z_v` with `v = 2n^2 + t`.
//!
//! Everything here is plain 64-bit integer arithmetic with explicit
//! reduction. The order guard `n <= 1000` keeps `v <= 4_002_000`, so no
//! intermediate product can overflow.

use serde::Serialize;
use thiserror::Error;

/// Largest supported array order.
pub const MAX_ORDER: u64 = 1000;

/// Parameter errors shared by the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("array order n={n} out of range (1..={MAX_ORDER})")]
    OrderOutOfRange { n: u64 },
    #[error("t={t} is not admissible for n={n} (t must divide 2n^2)")]
    Inadmissible { n: u64, t: u64 },
    #[error("construction requires odd n, got n={n}")]
    EvenOrder { n: u64 },
    #[error("t={t} does not divide n={n}")]
    NotDivisor { n: u64, t: u64 },
    #[error("no construction implemented for (n={n}, t={t})")]
    Unsupported { n: u64, t: u64 },
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// An element of `Z_v` in canonical form, i.e. reduced into `[0, v-1]`.
///
/// The modulus is carried by the [`ModulusContext`] that produced the value,
/// not by the value itself; all arithmetic goes through the context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Residue(u64);

impl Residue {
    /// Canonical representative in `[0, v-1]`.
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The arithmetic context for an `NH_t(n;n)`: the modulus `v = 2n^2 + t`
/// and the subgroup `J` of order `t` generated by `step = v/t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModulusContext {
    n: u64,
    t: u64,
    v: u64,
    step: u64,
}

impl ModulusContext {
    /// Context for a tight square array of order `n` relative to the
    /// subgroup of order `t`. Requires `t | 2n^2`.
    pub fn new(n: u64, t: u64) -> Result<Self, ParamError> {
        if n == 0 || n > MAX_ORDER {
            return Err(ParamError::OrderOutOfRange { n });
        }
        if t == 0 || !(2 * n * n).is_multiple_of(t) {
            return Err(ParamError::Inadmissible { n, t });
        }
        let v = 2 * n * n + t;
        Ok(ModulusContext {
            n,
            t,
            v,
            step: v / t,
        })
    }

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn t(self) -> u64 {
        self.t
    }

    pub fn modulus(self) -> u64 {
        self.v
    }

    /// Generator of `J`, i.e. `v/t`.
    pub fn step(self) -> u64 {
        self.step
    }

    /// `floor(v/2)`, the largest absolute value of a signed representative.
    pub fn half(self) -> u64 {
        self.v / 2
    }

    /// Reduce an arbitrary integer into canonical form.
    pub fn reduce(self, x: i64) -> Residue {
        Residue(x.rem_euclid(self.v as i64) as u64)
    }

    pub fn residue(self, x: u64) -> Residue {
        Residue(x % self.v)
    }

    pub fn add(self, a: Residue, b: Residue) -> Residue {
        let s = a.0 + b.0;
        Residue(if s >= self.v { s - self.v } else { s })
    }

    pub fn sub(self, a: Residue, b: Residue) -> Residue {
        Residue(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            self.v - b.0 + a.0
        })
    }

    pub fn neg(self, a: Residue) -> Residue {
        Residue(if a.0 == 0 { 0 } else { self.v - a.0 })
    }

    /// `k * a` for a small scalar `k`.
    pub fn mul_small(self, k: u64, a: Residue) -> Residue {
        Residue((k % self.v) * a.0 % self.v)
    }

    /// Signed representative in `±[1, floor(v/2)]` (zero maps to zero; for
    /// even `v` the class `v/2` maps to `+v/2`).
    pub fn signed(self, a: Residue) -> i64 {
        if a.0 <= self.v / 2 {
            a.0 as i64
        } else {
            a.0 as i64 - self.v as i64
        }
    }

    /// Support value of a nonzero residue: `|signed(a)|`.
    pub fn class_rep(self, a: Residue) -> u64 {
        self.signed(a).unsigned_abs()
    }

    /// Membership in the subgroup `J` of order `t`.
    pub fn in_subgroup(self, a: Residue) -> bool {
        a.0.is_multiple_of(self.step)
    }

    /// The subgroup `J = {0, v/t, 2v/t, ...}`, sorted ascending.
    pub fn subgroup(self) -> Vec<Residue> {
        (0..self.t).map(|k| Residue(k * self.step)).collect()
    }
}

/// Index (1-based, to match the usual `s_1, ..., s_k` notation) of an
/// offending partial sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimplicityFailure {
    /// `s_index = 0`.
    ZeroPartialSum { index: usize },
    /// `s_first = s_second` with `first < second`.
    RepeatedPartialSum { first: usize, second: usize },
}

/// A row or column read as a linear sequence: the cyclic left-to-right
/// (top-to-bottom) reading that starts at the element in position `start`.
///
/// Partial sums are taken over this linearisation; the wrap happens once,
/// when rotating the elements to the anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredSequence {
    elements: Vec<Residue>,
    start: usize,
}

#[allow(clippy::len_without_is_empty)] // nonempty by construction
impl AnchoredSequence {
    /// `start` indexes into `elements`; the reading is
    /// `elements[start], elements[start+1], ..., wrapping once`.
    pub fn new(elements: Vec<Residue>, start: usize) -> Self {
        assert!(!elements.is_empty(), "anchored sequence must be nonempty");
        assert!(start < elements.len());
        AnchoredSequence { elements, start }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Elements in anchored order.
    pub fn iter(&self) -> impl Iterator<Item = Residue> + '_ {
        let k = self.elements.len();
        (0..k).map(move |i| self.elements[(self.start + i) % k])
    }

    /// The reversed reading, anchored at the last element of this one.
    pub fn reversed(&self) -> AnchoredSequence {
        let mut elems: Vec<Residue> = self.iter().collect();
        elems.reverse();
        AnchoredSequence {
            elements: elems,
            start: 0,
        }
    }

    /// Partial sums `s_1, ..., s_k` of the anchored reading, reduced mod `v`.
    pub fn partial_sums(&self, ctx: &ModulusContext) -> Vec<Residue> {
        let mut acc = ctx.residue(0);
        self.iter()
            .map(|e| {
                acc = ctx.add(acc, e);
                acc
            })
            .collect()
    }

    /// Sum of all elements, equal to the last partial sum.
    pub fn total(&self, ctx: &ModulusContext) -> Residue {
        self.iter().fold(ctx.residue(0), |acc, e| ctx.add(acc, e))
    }

    /// Simplicity check: all partial sums nonzero and pairwise distinct.
    /// On failure returns the first offense in reading order.
    pub fn check_simple(&self, ctx: &ModulusContext) -> Result<(), SimplicityFailure> {
        let sums = self.partial_sums(ctx);
        let mut seen: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
        for (i, s) in sums.iter().enumerate() {
            if s.is_zero() {
                return Err(SimplicityFailure::ZeroPartialSum { index: i + 1 });
            }
            if let Some(&first) = seen.get(&s.value()) {
                return Err(SimplicityFailure::RepeatedPartialSum {
                    first,
                    second: i + 1,
                });
            }
            seen.insert(s.value(), i + 1);
        }
        Ok(())
    }

    pub fn is_simple(&self, ctx: &ModulusContext) -> bool {
        self.check_simple(ctx).is_ok()
    }
}

/// The four zig-zag orderings whose partial-sum lists have closed forms.
///
/// With `ell = l`:
/// * `Omega`    = `(a, b, a+g, b-g, ..., b-(l-1)g, a+lg)`, `2l+1` terms;
/// * `OmegaInv` = reversal of `Omega`;
/// * `Nu`       = `(a, b, a+g, b-g, ..., a+lg, b-lg)`, `2l+2` terms;
/// * `NuInv`    = reversal of `Nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZigzagVariant {
    Omega,
    OmegaInv,
    Nu,
    NuInv,
}

/// Materialize the zig-zag ordering itself.
pub fn zigzag_sequence(
    a: Residue,
    b: Residue,
    g: Residue,
    ell: u64,
    variant: ZigzagVariant,
    ctx: &ModulusContext,
) -> Vec<Residue> {
    let mut seq = Vec::new();
    for k in 0..=ell {
        seq.push(ctx.add(a, ctx.mul_small(k, g)));
        // Omega stops after the a-term a + ell*g; Nu also takes b - ell*g.
        let last = k == ell && matches!(variant, ZigzagVariant::Omega | ZigzagVariant::OmegaInv);
        if !last {
            seq.push(ctx.sub(b, ctx.mul_small(k, g)));
        }
    }
    if matches!(variant, ZigzagVariant::OmegaInv | ZigzagVariant::NuInv) {
        seq.reverse();
    }
    seq
}

/// Closed-form unordered list of the partial sums of the zig-zag ordering.
///
/// Returned as a multiset (duplicates are kept; detecting them is the
/// caller's job).
pub fn zigzag_sums(
    a: Residue,
    b: Residue,
    g: Residue,
    ell: u64,
    variant: ZigzagVariant,
    ctx: &ModulusContext,
) -> Vec<Residue> {
    let ab = ctx.add(a, b);
    let abg = ctx.add(ab, g);
    let mut sums = Vec::new();
    match variant {
        ZigzagVariant::Omega => {
            // {k(a+b) : 1<=k<=l} ∪ {a + k(a+b+g) : 0<=k<=l}
            for k in 1..=ell {
                sums.push(ctx.mul_small(k, ab));
            }
            for k in 0..=ell {
                sums.push(ctx.add(a, ctx.mul_small(k, abg)));
            }
        }
        ZigzagVariant::OmegaInv => {
            // {k(a+b+g) : 1<=k<=l} ∪ {a + lg + k(a+b) : 0<=k<=l}
            for k in 1..=ell {
                sums.push(ctx.mul_small(k, abg));
            }
            let alg = ctx.add(a, ctx.mul_small(ell, g));
            for k in 0..=ell {
                sums.push(ctx.add(alg, ctx.mul_small(k, ab)));
            }
        }
        ZigzagVariant::Nu => {
            // {k(a+b) : 1<=k<=l+1} ∪ {a + k(a+b+g) : 0<=k<=l}
            for k in 1..=ell + 1 {
                sums.push(ctx.mul_small(k, ab));
            }
            for k in 0..=ell {
                sums.push(ctx.add(a, ctx.mul_small(k, abg)));
            }
        }
        ZigzagVariant::NuInv => {
            // {k(a+b) : 1<=k<=l+1} ∪ {b - lg + k(a+b+g) : 0<=k<=l}
            for k in 1..=ell + 1 {
                sums.push(ctx.mul_small(k, ab));
            }
            let blg = ctx.sub(b, ctx.mul_small(ell, g));
            for k in 0..=ell {
                sums.push(ctx.add(blg, ctx.mul_small(k, abg)));
            }
        }
    }
    sums
}
