//! Sets of positive integers without three-term arithmetic progressions.
//!
//! Three sources are offered: an exact branch and bound for small universes,
//! the sphere-digit (Behrend) construction, and the greedy baseline.

use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

pub const DEFAULT_EXACT_LIMIT: u64 = 40;
/// Bitmask search works on u64 words.
const EXACT_HARD_LIMIT: u64 = 63;

/// A 3-AP-free subset of `[1, universe_bound]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APSet {
    elements: Vec<u64>,
    universe_bound: u64,
}

impl APSet {
    pub fn new(mut elements: Vec<u64>, universe_bound: u64) -> Result<Self> {
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("repeated element"));
        }
        if elements.first() == Some(&0) {
            return Err(Error::invalid("elements must be positive"));
        }
        if elements.last().is_some_and(|&m| m > universe_bound) {
            return Err(Error::invalid(format!("element exceeds universe bound {universe_bound}")));
        }
        if !is_3ap_free(&elements) {
            return Err(Error::invalid("set contains a 3-term arithmetic progression"));
        }
        Ok(Self {
            elements,
            universe_bound,
        })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn universe_bound(&self) -> u64 {
        self.universe_bound
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }
}

/// True iff no `a < b < c` in `s` with `b - a == c - b`.
pub fn is_3ap_free(s: &[u64]) -> bool {
    let set: HashSet<u64> = s.iter().copied().collect();
    let mut v: Vec<u64> = set.iter().copied().collect();
    v.sort_unstable();
    for (i, &a) in v.iter().enumerate() {
        for &c in &v[i + 1..] {
            if (c - a) % 2 == 0 && set.contains(&(a + (c - a) / 2)) {
                return false;
            }
        }
    }
    true
}

/// The maximum size of a 3-AP-free subset of `[1, m]` for every `m <= n`,
/// followed by the lexicographically smallest maximizer for `n`.
pub fn max_3ap_free(n: u64) -> Result<APSet> {
    max_3ap_free_with_limit(n, DEFAULT_EXACT_LIMIT)
}

pub fn max_3ap_free_with_limit(n: u64, limit: u64) -> Result<APSet> {
    let limit = limit.min(EXACT_HARD_LIMIT);
    if n > limit {
        return Err(Error::LimitExceeded {
            what: format!("exact 3-AP-free search on [1,{n}]"),
            limit: limit as usize,
        });
    }
    let table = exact_sizes(n);
    let best = find_first(n, table[n as usize], &table).expect("size taken from the table is attainable");
    APSet::new(best, n)
}

/// `r[m]` = largest 3-AP-free subset of `[1, m]`, for `m` in `0..=n`.
pub fn exact_sizes(n: u64) -> Vec<usize> {
    let mut table = vec![0usize; n as usize + 1];
    for m in 1..=n {
        let prev = table[m as usize - 1];
        table[m as usize] = if find_first(m, prev + 1, &table).is_some() {
            prev + 1
        } else {
            prev
        };
    }
    table
}

/// Lexicographically smallest 3-AP-free subset of `[1, m]` of size `target`.
/// `table[len]` must hold the exact optimum for every `len < m`.
fn find_first(m: u64, target: usize, table: &[usize]) -> Option<Vec<u64>> {
    struct Dfs<'a> {
        m: u64,
        target: usize,
        table: &'a [usize],
        chosen: Vec<u64>,
    }
    impl Dfs<'_> {
        fn go(&mut self, x: u64, forbidden: u64) -> bool {
            if self.chosen.len() == self.target {
                return true;
            }
            if x > self.m {
                return false;
            }
            let remaining = (self.m - x + 1) as usize;
            // any 3-AP-free subset of [x, m] is a translate of one of [1, remaining]
            let bound = if x > 1 { self.table[remaining] } else { remaining };
            if self.chosen.len() + bound < self.target {
                return false;
            }
            if forbidden >> x & 1 == 0 {
                let mut next = forbidden;
                for &y in &self.chosen {
                    let z = 2 * x - y;
                    if z <= self.m {
                        next |= 1 << z;
                    }
                }
                self.chosen.push(x);
                if self.go(x + 1, next) {
                    return true;
                }
                self.chosen.pop();
            }
            self.go(x + 1, forbidden)
        }
    }
    if target == 0 {
        return Some(Vec::new());
    }
    let mut dfs = Dfs {
        m,
        target,
        table,
        chosen: Vec::with_capacity(target),
    };
    dfs.go(1, 0).then_some(dfs.chosen)
}

/// Greedy baseline: scan `1..=n`, keep `x` unless it completes a progression.
pub fn greedy_3ap_free(n: u64) -> APSet {
    let mut forbidden = vec![false; n as usize + 1];
    let mut chosen: Vec<u64> = Vec::new();
    for x in 1..=n {
        if forbidden[x as usize] {
            continue;
        }
        for &y in &chosen {
            let z = 2 * x - y;
            if z <= n {
                forbidden[z as usize] = true;
            }
        }
        chosen.push(x);
    }
    APSet {
        elements: chosen,
        universe_bound: n,
    }
}

/// Parameters of a sphere-digit set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehrendParams {
    pub base: u64,
    pub dim: u32,
    /// Squared radius of the shell; `None` when every 0/1 digit vector is
    /// taken, which is progression-free on its own.
    pub radius_sq: Option<u64>,
}

/// Best member of the digit-vector family for `[1, n]`: the larger of the
/// sphere-shell set and the base-3 0/1 cube (which needs no shell and wins
/// at every size a machine can enumerate).
pub fn behrend_set(n: u64) -> (APSet, BehrendParams) {
    let (sphere, sp) = sphere_set(n);
    let dim = cube_dim(n);
    let cube = collect_vectors(n, 3, dim, None);
    if n > 0 && cube.len() >= sphere.len() {
        let params = BehrendParams {
            base: 3,
            dim,
            radius_sq: None,
        };
        (
            APSet {
                elements: cube,
                universe_bound: n,
            },
            params,
        )
    } else {
        (sphere, sp)
    }
}

/// Integers `1 + sum x_i base^i` whose digit vectors `x` lie in
/// `[0, (base-1)/2]^dim` on one sphere, with base, dimension and radius
/// swept for the largest result. Digits below `base/2` never carry when two
/// numbers are added, so `a + c = 2b` holds coordinatewise, and a sphere
/// contains no midpoint of two of its other points.
pub fn sphere_set(n: u64) -> (APSet, BehrendParams) {
    let fallback = BehrendParams {
        base: 3,
        dim: 1,
        radius_sq: Some(0),
    };
    if n == 0 {
        return (
            APSet {
                elements: vec![],
                universe_bound: 0,
            },
            fallback,
        );
    }
    let best = behrend_grid(n)
        .par_iter()
        .map(|&(base, dim)| {
            let (count, radius) = best_shell(n, base, dim);
            (count, base, dim, radius)
        })
        .reduce(
            || (0, u64::MAX, u32::MAX, None),
            // most elements, then smallest dimension, then smallest base
            |a, b| {
                if (b.0, std::cmp::Reverse((b.2, b.1))) > (a.0, std::cmp::Reverse((a.2, a.1))) {
                    b
                } else {
                    a
                }
            },
        );
    let params = if best.0 == 0 {
        fallback
    } else {
        BehrendParams {
            base: best.1,
            dim: best.2,
            radius_sq: best.3,
        }
    };
    let mut elements = collect_vectors(n, params.base, params.dim, params.radius_sq);
    elements.sort_unstable();
    (
        APSet {
            elements,
            universe_bound: n,
        },
        params,
    )
}

/// Smallest dimension whose base-3 0/1 vectors cover every value below `n`.
fn cube_dim(n: u64) -> u32 {
    let mut dim = 1;
    while 3u64.saturating_pow(dim) < n {
        dim += 1;
    }
    dim
}

fn behrend_grid(n: u64) -> Vec<(u64, u32)> {
    let mut grid = Vec::new();
    let max_dim = (64 - n.leading_zeros()).max(1);
    for dim in 1..=max_dim {
        // base where (base/2) * base^(dim-1) ~ n, i.e. all admissible vectors just fit
        let centre = ((2 * n) as f64).powf(1.0 / dim as f64).ceil() as u64;
        let lo = (centre / 2).max(3);
        let hi = (centre * 2 + 2).max(lo);
        let step = ((hi - lo) / 48).max(1);
        let mut base = lo;
        while base <= hi {
            grid.push((base, dim));
            base += step;
        }
    }
    grid
}

/// Largest shell population among digit vectors whose value fits under `n`.
fn best_shell(n: u64, base: u64, dim: u32) -> (usize, Option<u64>) {
    let mut radii = Vec::new();
    walk_vectors(n, base, dim, &mut |_, r| radii.push(r));
    radii.sort_unstable();
    let mut best = (0usize, None);
    for run in radii.chunk_by(|a, b| a == b) {
        if run.len() > best.0 {
            best = (run.len(), Some(run[0]));
        }
    }
    best
}

fn collect_vectors(n: u64, base: u64, dim: u32, radius_sq: Option<u64>) -> Vec<u64> {
    let mut out = Vec::new();
    walk_vectors(n, base, dim, &mut |value, r| {
        if radius_sq.is_none_or(|want| want == r) {
            out.push(value + 1);
        }
    });
    // only 0/1 digits are progression-free without the sphere
    debug_assert!(radius_sq.is_some() || base == 3);
    out
}

/// Calls `f(value, squared_norm)` for every digit vector in
/// `[0, (base-1)/2]^dim` (0/1 digits for base 3) with `value + 1 <= n`.
fn walk_vectors(n: u64, base: u64, dim: u32, f: &mut dyn FnMut(u64, u64)) {
    let h = (base - 1) / 2;
    let limit = n - 1;
    let mut place = vec![1u64; dim as usize];
    for i in 1..dim as usize {
        place[i] = place[i - 1].saturating_mul(base);
    }
    fn rec(pos: usize, value: u64, r: u64, h: u64, limit: u64, place: &[u64], f: &mut dyn FnMut(u64, u64)) {
        if pos == 0 {
            f(value, r);
            return;
        }
        let p = place[pos - 1];
        for x in 0..=h {
            let Some(v) = value.checked_add(x.saturating_mul(p)) else { break };
            if v > limit {
                break;
            }
            rec(pos - 1, v, r + x * x, h, limit, place, f);
        }
    }
    rec(dim as usize, 0, 0, h, limit, &place, f);
}

/// `{a*x + b : x in s}`. Requires `a >= 1` and every image to be positive.
pub fn affine_transform(s: &APSet, a: i64, b: i64) -> Result<APSet> {
    if a < 1 {
        return Err(Error::invalid(format!("multiplier {a} must be at least 1")));
    }
    let map = |x: u64| -> Result<u64> {
        let y = a as i128 * x as i128 + b as i128;
        u64::try_from(y)
            .ok()
            .filter(|&y| y >= 1)
            .ok_or_else(|| Error::invalid(format!("{a}*{x}+{b} is not a positive integer")))
    };
    let elements = s.elements.iter().map(|&x| map(x)).collect::<Result<Vec<_>>>()?;
    let bound = (a as i128 * s.universe_bound as i128 + b as i128).max(elements.last().copied().unwrap_or(0) as i128);
    APSet::new(elements, bound.max(0) as u64)
}

/// Which construction produced a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Behrend,
    Greedy,
}

/// Largest available 3-AP-free subset of `[1, n]`: exact when `n` is within
/// `limit`, otherwise the larger of the Behrend and greedy sets.
pub fn best_available(n: u64, limit: u64) -> (APSet, Method) {
    if n <= limit.min(EXACT_HARD_LIMIT) {
        return (max_3ap_free_with_limit(n, limit).expect("within limit"), Method::Exact);
    }
    let (b, _) = behrend_set(n);
    let g = greedy_3ap_free(n);
    if b.len() >= g.len() {
        (b, Method::Behrend)
    } else {
        (g, Method::Greedy)
    }
}

/// 3-AP-free subset of `[1, n]` with every element `1 mod modulus`, the
/// affine image `modulus*(t-1)+1` of the best base set `t` in `[1, (n-1)/modulus + 1]`.
pub fn odd_3ap_free(n: u64, modulus: u64) -> Result<APSet> {
    if modulus != 4 && modulus != 8 {
        return Err(Error::invalid(format!("residue modulus must be 4 or 8, got {modulus}")));
    }
    if n == 0 {
        return APSet::new(vec![], 0);
    }
    let base_len = (n - 1) / modulus + 1;
    let (base, _) = best_available(base_len, DEFAULT_EXACT_LIMIT);
    let mut out = affine_transform(&base, modulus as i64, 1 - modulus as i64)?;
    out.universe_bound = n;
    Ok(out)
}
