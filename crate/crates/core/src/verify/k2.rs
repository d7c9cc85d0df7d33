//! Reachability between independent pairs under token jumping.
//!
//! Two independent pairs are edges of the complement, and one jump moves
//! between edges sharing an endpoint, so `A` reaches `B` iff their edges lie
//! in the same component of the complement.

use crate::bitset::Bitset;
use crate::engine::{Engine, ReconfigRule, ReconfigSequence};
use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};
use std::collections::VecDeque;

fn check_pair(g: &Graph, s: &IndependentSet, name: &str) -> Result<()> {
    if s.k() != 2 {
        return Err(Error::invalid(format!("{name} = {s} must have exactly 2 vertices")));
    }
    if !g.is_independent(s.vertices())? {
        return Err(Error::invalid(format!("{name} = {s} is not independent")));
    }
    Ok(())
}

/// Vertices of degree at least `(n-1)/2` form `B`; the rest, `S`, pairwise
/// share a non-neighbor and so lie in one component of the complement. `S`
/// is contracted to a single vertex `x`, and `x` sees `y` in the complement
/// iff `y` is non-adjacent to some vertex of `S`. The search then runs on
/// `|B| + 1` vertices.
pub fn decide_k2_fast(g: &Graph, a: &IndependentSet, b: &IndependentSet) -> Result<bool> {
    check_pair(g, a, "from")?;
    check_pair(g, b, "to")?;
    if a == b {
        return Ok(true);
    }
    let n = g.n();
    let mut high = Bitset::new(n);
    let mut low = Bitset::new(n);
    for v in 0..n {
        if 2 * g.degree(v) + 1 >= n {
            high.insert(v);
        } else {
            low.insert(v);
        }
    }
    // x is encoded as index n
    let rep = |v: usize| if low.contains(v) { n } else { v };
    let (src, dst) = (rep(a.vertices()[0]), rep(b.vertices()[0]));
    if src == dst {
        return Ok(true);
    }
    let mut sees_x = Bitset::new(n);
    let low_count = low.count();
    for y in high.iter() {
        if low.intersection_count(g.neighbors(y)) < low_count {
            sees_x.insert(y);
        }
    }
    let mut unseen = high.clone();
    let mut queue = VecDeque::new();
    let mut x_seen = false;
    let visit = |v: usize, unseen: &mut Bitset, queue: &mut VecDeque<usize>, x_seen: &mut bool| {
        if v == n {
            if !*x_seen {
                *x_seen = true;
                queue.push_back(v);
            }
        } else if unseen.contains(v) {
            unseen.remove(v);
            queue.push_back(v);
        }
    };
    visit(src, &mut unseen, &mut queue, &mut x_seen);
    let mut scratch = Bitset::new(n);
    while let Some(u) = queue.pop_front() {
        if u == dst {
            return Ok(true);
        }
        scratch.clear();
        if u == n {
            scratch.union_with(&sees_x);
            scratch.intersect_with(&unseen);
        } else {
            // complement neighbors of u among the unseen high vertices
            scratch.union_with(&unseen);
            scratch.difference_with(g.neighbors(u));
            scratch.remove(u);
            if sees_x.contains(u) {
                visit(n, &mut unseen, &mut queue, &mut x_seen);
            }
        }
        for v in scratch.iter() {
            visit(v, &mut unseen, &mut queue, &mut x_seen);
        }
    }
    Ok(false)
}

/// Builds the complement and searches it directly.
pub fn decide_k2_naive(g: &Graph, a: &IndependentSet, b: &IndependentSet) -> Result<bool> {
    check_pair(g, a, "from")?;
    check_pair(g, b, "to")?;
    let c = g.complement();
    let n = g.n();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([a.vertices()[0]]);
    seen[a.vertices()[0]] = true;
    while let Some(u) = queue.pop_front() {
        for v in c.neighbors(u).iter() {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    Ok(seen[b.vertices()[0]])
}

/// A shortest transformation from `a` to `b`, if one exists.
pub fn k2_witness(g: &Graph, a: &IndependentSet, b: &IndependentSet, cap: usize) -> Result<Option<ReconfigSequence>> {
    check_pair(g, a, "from")?;
    check_pair(g, b, "to")?;
    Engine::new(g, 2, ReconfigRule::TokenJumping)?
        .with_cap(cap)
        .shortest_sequence(a, b)
}
