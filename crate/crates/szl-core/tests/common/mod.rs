//! Independent oracles for the integration suites. These deliberately avoid
//! the library's solver paths: the packing oracle packs explicit trees
//! instead of evaluating the partition condition, and the orientation oracle
//! walks the whole forward-count space.

use szl_core::graph::Multigraph;
use szl_core::orient::{imbalances, Orientation};

/// All edge sets of size n-1 (as pair-index lists over the upper triangle)
/// that form a spanning tree on n vertices.
fn spanning_tree_templates(n: usize) -> Vec<Vec<usize>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut templates = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        pairs: &[(usize, usize)],
        n: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == n - 1 {
            // Connectivity with n-1 edges means a spanning tree.
            let mut root = vec![usize::MAX; n];
            for v in 0..n {
                root[v] = v;
            }
            fn find(root: &mut Vec<usize>, v: usize) -> usize {
                if root[v] == v {
                    v
                } else {
                    let r = find(root, root[v]);
                    root[v] = r;
                    r
                }
            }
            let mut merged = 0;
            for &idx in chosen.iter() {
                let (u, v) = pairs[idx];
                let (ru, rv) = (find(&mut root, u), find(&mut root, v));
                if ru != rv {
                    root[ru] = rv;
                    merged += 1;
                }
            }
            if merged == n - 1 {
                out.push(chosen.clone());
            }
            return;
        }
        for idx in start..pairs.len() {
            chosen.push(idx);
            rec(pairs, n, idx + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(&pairs, n, 0, &mut chosen, &mut templates);
    templates
}

fn pack(templates: &[Vec<usize>], avail: &mut Vec<u32>, k: u64, min_template: usize) -> bool {
    if k == 0 {
        return true;
    }
    for (ti, tree) in templates.iter().enumerate().skip(min_template) {
        if tree.iter().any(|&idx| avail[idx] == 0) {
            continue;
        }
        for &idx in tree {
            avail[idx] -= 1;
        }
        if pack(templates, avail, k - 1, ti) {
            for &idx in tree {
                avail[idx] += 1;
            }
            return true;
        }
        for &idx in tree {
            avail[idx] += 1;
        }
    }
    false
}

/// Maximum number of edge-disjoint spanning trees found by explicitly
/// packing trees; `None` for the single-vertex graph where any number fits.
pub fn explicit_tree_packing(g: &Multigraph) -> Option<u64> {
    if g.n() == 1 {
        return None;
    }
    let templates = spanning_tree_templates(g.n());
    let avail: Vec<u32> = g.pairs().map(|(_, _, m)| m).collect();
    let upper = g.edge_count() / (g.n() as u64 - 1);
    for k in (1..=upper).rev() {
        if pack(&templates, &mut avail.clone(), k, 0) {
            return Some(k);
        }
    }
    Some(0)
}

/// Exhaustive exact-imbalance search: the first forward-count table whose
/// imbalances equal `gamma`, if one exists.
pub fn exhaustive_exact_orientation(g: &Multigraph, gamma: &[i64]) -> Option<Orientation> {
    let mults: Vec<u32> = g.pairs().map(|(_, _, m)| m).collect();
    let mut forward = vec![0u32; mults.len()];
    loop {
        let d = Orientation::new(g, forward.clone()).expect("counts within multiplicities");
        if imbalances(g, &d) == gamma {
            return Some(d);
        }
        let mut i = forward.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if forward[i] < mults[i] {
                forward[i] += 1;
                forward[i + 1..].iter_mut().for_each(|f| *f = 0);
                break;
            }
            forward[i] = 0;
        }
    }
}
