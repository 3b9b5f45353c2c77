//! Maximum cardinality matching in general (non-bipartite) graphs.
//!
//! Edmonds' blossom-contraction algorithm in its classic O(V^3) form: grow
//! alternating BFS forests from free vertices, contract odd cycles to their
//! base, and augment along the found paths. A greedy pass seeds the matching
//! first. Iteration orders are fixed, so results are deterministic.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Returns a maximum matching as sorted `(u, v)` pairs with `u < v`.
/// Self-loops and duplicate edges are ignored.
pub fn maximum_matching(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sorted: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(a, b)| a != b)
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    sorted.sort_unstable();
    sorted.dedup();
    for &(a, b) in &sorted {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut mate = vec![NONE; n];
    for &(a, b) in &sorted {
        if mate[a] == NONE && mate[b] == NONE {
            mate[a] = b;
            mate[b] = a;
        }
    }
    for root in 0..n {
        if mate[root] == NONE {
            augment_from(&adj, &mut mate, root);
        }
    }

    (0..n)
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect()
}

/// One BFS phase: look for an augmenting path starting at `root`, contracting
/// blossoms on the way. Flips the path into `mate` when found.
fn augment_from(adj: &[Vec<usize>], mate: &mut [usize], root: usize) -> bool {
    let n = adj.len();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[root] = true;
    let mut queue = VecDeque::from([root]);

    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // Odd cycle: contract the blossom to its base vertex.
                let cur_base = lowest_common_base(&base, mate, &parent, v, to);
                let mut in_blossom = vec![false; n];
                mark_path(&base, mate, &mut parent, &mut in_blossom, v, cur_base, to);
                mark_path(&base, mate, &mut parent, &mut in_blossom, to, cur_base, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur_base;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    // Augment: flip matched/unmatched along the path to root.
                    let mut u = to;
                    while u != NONE {
                        let pu = parent[u];
                        let next = mate[pu];
                        mate[u] = pu;
                        mate[pu] = u;
                        u = next;
                    }
                    return true;
                }
                used[mate[to]] = true;
                queue.push_back(mate[to]);
            }
        }
    }
    false
}

fn lowest_common_base(
    base: &[usize],
    mate: &[usize],
    parent: &[usize],
    mut a: usize,
    mut b: usize,
) -> usize {
    let mut seen = vec![false; base.len()];
    loop {
        a = base[a];
        seen[a] = true;
        if mate[a] == NONE {
            break;
        }
        a = parent[mate[a]];
    }
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_path(
    base: &[usize],
    mate: &[usize],
    parent: &mut [usize],
    in_blossom: &mut [bool],
    mut v: usize,
    cur_base: usize,
    mut child: usize,
) {
    while base[v] != cur_base {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[child];
    }
}
