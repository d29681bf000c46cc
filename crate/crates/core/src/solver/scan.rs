//! Exhaustive scans over labelled tournaments.
//!
//! A labelled tournament on `n` vertices is indexed by an integer whose bit
//! `b` orients the `b`-th pair `(i, j)`, `i < j`, in lexicographic order:
//! a set bit means `i → j`. Workers split the index range and the smallest
//! counterexample index wins, so results do not depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;

use super::SolverError;
use crate::digraph::{Digraph, DigraphBuilder};

/// Largest labelled space a scan will enumerate: `2^21` tournaments (`n = 7`).
pub const SCAN_GUARD_BITS: usize = 21;

fn pair_bits(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn check_guard(n: usize) -> Result<usize, SolverError> {
    let bits = pair_bits(n);
    if bits > SCAN_GUARD_BITS {
        return Err(SolverError::InfeasibleScan {
            bits,
            limit: SCAN_GUARD_BITS,
        });
    }
    Ok(bits)
}

/// Out-neighbourhood masks of labelled tournament `index` on `n ≤ 8` vertices.
pub fn tournament_masks(n: usize, index: u64) -> [u8; 8] {
    let mut out = [0u8; 8];
    let mut b = 0;
    for i in 0..n {
        for j in i + 1..n {
            if index >> b & 1 == 1 {
                out[i] |= 1 << j;
            } else {
                out[j] |= 1 << i;
            }
            b += 1;
        }
    }
    out
}

pub fn tournament_from_index(n: usize, index: u64) -> Digraph {
    let masks = tournament_masks(n, index);
    let mut b = DigraphBuilder::new(n).expect("small tournament");
    for (u, &m) in masks.iter().enumerate().take(n) {
        for v in 0..n {
            if m >> v & 1 == 1 {
                b.add_edge(u, v).expect("fresh edge");
            }
        }
    }
    b.build()
}

/// Whether the vertices in `cand` contain a `T_need`.
fn masks_have_transitive(out: &[u8; 8], cand: u8, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if masks_have_transitive(out, cand & out[v], need - 1) {
            return true;
        }
    }
    false
}

/// Exact cover of `left` by transitive `k`-sets, branching on the part
/// that holds its lowest vertex.
fn masks_tile(out: &[u8; 8], left: u8, k: usize) -> bool {
    if left == 0 {
        return true;
    }
    let v = left.trailing_zeros() as u8;
    choose_part(out, left, left & !(1 << v), 1 << v, k - 1, k)
}

/// Extends `part` by `need` vertices drawn from `pool` (ascending, so each
/// set is produced once); tiles the rest whenever the part is transitive.
fn choose_part(out: &[u8; 8], left: u8, pool: u8, part: u8, need: usize, k: usize) -> bool {
    if need == 0 {
        return is_transitive_mask(out, part) && masks_tile(out, left & !part, k);
    }
    let mut rest = pool;
    while rest != 0 {
        let u = rest.trailing_zeros();
        rest &= rest - 1;
        if choose_part(out, left, rest, part | 1 << u, need - 1, k) {
            return true;
        }
    }
    false
}

/// A tournament on `set` is transitive iff its out-degrees are distinct.
fn is_transitive_mask(out: &[u8; 8], set: u8) -> bool {
    let mut seen = 0u16;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (out[v] & set).count_ones();
        if seen >> d & 1 == 1 {
            return false;
        }
        seen |= 1 << d;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum RamseyScan {
    /// Every labelled tournament on `value` vertices contains `T_k`, and some
    /// tournament on `value − 1` vertices does not.
    Determined { value: usize },
    /// Some tournament on `n_max` vertices avoids `T_k`; the witness is the
    /// lowest such index and `free_count` counts all of them.
    NotDetermined {
        n_max: usize,
        witness_index: u64,
        #[serde(skip)]
        witness: Digraph,
        free_count: u64,
    },
}

/// Smallest `n ≤ n_max` such that every labelled `n`-vertex tournament
/// contains a transitive `T_k`.
pub fn ramsey_scan(k: usize, n_max: usize) -> Result<RamseyScan, SolverError> {
    check_guard(n_max)?;
    if k == 0 {
        return Err(SolverError::BadParams("k must be at least 1".into()));
    }
    for n in 1..=n_max {
        let total = 1u64 << pair_bits(n);
        let full = ((1u16 << n) - 1) as u8;
        let free = |i: u64| !masks_have_transitive(&tournament_masks(n, i), full, k);
        if n < n_max {
            if (0..total).into_par_iter().find_first(|&i| free(i)).is_none() {
                return Ok(RamseyScan::Determined { value: n });
            }
        } else {
            let (count, first) = (0..total)
                .into_par_iter()
                .filter(|&i| free(i))
                .fold(|| (0u64, u64::MAX), |(c, m), i| (c + 1, m.min(i)))
                .reduce(|| (0, u64::MAX), |a, b| (a.0 + b.0, a.1.min(b.1)));
            if count == 0 {
                return Ok(RamseyScan::Determined { value: n });
            }
            return Ok(RamseyScan::NotDetermined {
                n_max,
                witness_index: first,
                witness: tournament_from_index(n, first),
                free_count: count,
            });
        }
    }
    unreachable!("n_max >= 1 guaranteed by the loop returning at n_max")
}

/// Every labelled `T_k`-free tournament on `n` vertices, by index.
pub fn transitive_free_indices(k: usize, n: usize) -> Result<Vec<u64>, SolverError> {
    let bits = check_guard(n)?;
    let full = ((1u16 << n) - 1) as u8;
    Ok((0..1u64 << bits)
        .into_par_iter()
        .filter(|&i| !masks_have_transitive(&tournament_masks(n, i), full, k))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TilingScan {
    AllTile { checked: u64 },
    Counterexample {
        index: u64,
        #[serde(skip)]
        tournament: Digraph,
    },
}

/// Checks that every labelled `n`-vertex tournament has a `T_k`-factor.
pub fn tiling_scan(k: usize, n: usize) -> Result<TilingScan, SolverError> {
    if k == 0 || n == 0 || !n.is_multiple_of(k) {
        return Err(SolverError::BadParams(format!("k = {k} must divide n = {n}")));
    }
    let bits = check_guard(n)?;
    let total = 1u64 << bits;
    let full = ((1u16 << n) - 1) as u8;
    let bad = (0..total)
        .into_par_iter()
        .find_first(|&i| !masks_tile(&tournament_masks(n, i), full, k));
    Ok(match bad {
        None => TilingScan::AllTile { checked: total },
        Some(index) => TilingScan::Counterexample {
            index,
            tournament: tournament_from_index(n, index),
        },
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    heap_permute(&mut a, n, &mut out);
    out
}

fn heap_permute(a: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
    if len <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..len {
        heap_permute(a, len - 1, out);
        let j = if len.is_multiple_of(2) { i } else { 0 };
        a.swap(j, len - 1);
    }
}

/// Whether `pi` maps every edge of `a` onto an edge of `b` (same edge count
/// assumed by the callers, so this is an isomorphism).
fn maps_edges(a: &Digraph, b: &Digraph, pi: &[usize]) -> bool {
    a.edges().all(|(u, v)| b.has_edge(pi[u], pi[v]))
}

/// Brute-force isomorphism test for graphs with at most 9 vertices.
pub fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
    assert!(a.n() <= 9, "brute-force isomorphism limited to 9 vertices");
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (mut da, mut db): (Vec<_>, Vec<_>) = (
        (0..a.n()).map(|v| (a.out_degree(v), a.in_degree(v))).collect(),
        (0..b.n()).map(|v| (b.out_degree(v), b.in_degree(v))).collect(),
    );
    da.sort_unstable();
    db.sort_unstable();
    da == db && permutations(a.n()).iter().any(|pi| maps_edges(a, b, pi))
}

/// Order of the automorphism group, by brute force (at most 9 vertices).
pub fn automorphism_count(g: &Digraph) -> usize {
    assert!(g.n() <= 9, "brute-force automorphisms limited to 9 vertices");
    permutations(g.n()).iter().filter(|pi| maps_edges(g, g, pi)).count()
}
