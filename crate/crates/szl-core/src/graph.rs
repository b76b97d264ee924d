//! Loopless labeled multigraphs on a small vertex set, together with the
//! structural operations the deciders build on: cuts, contraction, path
//! lifting, spanning-tree packing via the partition condition, and a
//! permutation-minimal canonical form for isomorphism tests.

use crate::error::{Error, Result};

/// Hard cap on vertex counts. Partition enumeration is exponential in n
/// (Bell(10) is about 115k), so everything stays comfortably desk-scale.
pub const N_MAX: usize = 10;

/// Canonical codes minimize over all vertex permutations, so they get a
/// tighter cap than the rest of the crate.
pub const CANON_N_MAX: usize = 8;

/// A loopless multigraph: a vertex count and a multiplicity for every
/// unordered pair. Parallel edges are counted, never materialized.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multigraph {
    n: usize,
    /// Upper-triangle multiplicities, row-major: pair (u, v) with u < v sits
    /// at `u*(2n-u-1)/2 + (v-u-1)`.
    mult: Vec<u32>,
}

#[inline]
pub(crate) fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl Multigraph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 || n > N_MAX {
            return Err(Error::VertexCountOutOfRange(n));
        }
        Ok(Multigraph {
            n,
            mult: vec![0; n * (n - 1) / 2],
        })
    }

    /// Builds a graph from explicit `(u, v, multiplicity)` entries. Each
    /// unordered pair may appear at most once.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Multigraph::new(n)?;
        let mut seen = vec![false; g.mult.len()];
        for &(u, v, m) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let idx = pair_index(n, a, b);
            if seen[idx] {
                return Err(Error::DuplicatePair { u: a, v: b });
            }
            seen[idx] = true;
            g.mult[idx] = m;
        }
        Ok(g)
    }

    /// Two vertices joined by `a` parallel edges.
    pub fn a_k2(a: u32) -> Self {
        let mut g = Multigraph::new(2).unwrap();
        g.set_mult(0, 1, a);
        g
    }

    /// Three vertices with pair multiplicities `a` on {0,1}, `b` on {1,2},
    /// and `c` on {2,0}.
    pub fn triangle(a: u32, b: u32, c: u32) -> Self {
        let mut g = Multigraph::new(3).unwrap();
        g.set_mult(0, 1, a);
        g.set_mult(1, 2, b);
        g.set_mult(2, 0, c);
        g
    }

    /// The first exceptional 4-vertex graph: a hub (vertex 0) triple-joined
    /// to each other vertex, plus a single triangle among the rest.
    /// e = 12, degrees (9, 5, 5, 5), max multiplicity 3.
    pub fn w1() -> Self {
        Multigraph::from_edges(
            4,
            &[
                (0, 1, 3),
                (0, 2, 3),
                (0, 3, 3),
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 1),
            ],
        )
        .unwrap()
    }

    /// The second exceptional 4-vertex graph.
    /// e = 12, degrees (7, 7, 5, 5), max multiplicity 3.
    pub fn w2() -> Self {
        Multigraph::from_edges(
            4,
            &[
                (0, 1, 3),
                (0, 2, 2),
                (0, 3, 2),
                (1, 2, 2),
                (1, 3, 2),
                (2, 3, 1),
            ],
        )
        .unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Multiplicity of the unordered pair {u, v}.
    pub fn mult(&self, u: usize, v: usize) -> u32 {
        assert!(u != v && u < self.n && v < self.n, "invalid pair ({u}, {v})");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.mult[pair_index(self.n, a, b)]
    }

    /// Overwrites the multiplicity of the unordered pair {u, v}.
    pub fn set_mult(&mut self, u: usize, v: usize, m: u32) {
        assert!(u != v && u < self.n && v < self.n, "invalid pair ({u}, {v})");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.mult[pair_index(self.n, a, b)] = m;
    }

    /// A copy with one extra edge on the pair {u, v}.
    pub fn with_added_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        g.set_mult(u, v, g.mult(u, v) + 1);
        g
    }

    /// All unordered pairs `(u, v, multiplicity)` with u < v, including
    /// multiplicity-zero pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| {
            ((u + 1)..n).map(move |v| (u, v, self.mult[pair_index(n, u, v)]))
        })
    }

    /// Pairs carrying at least one edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.pairs().filter(|&(_, _, m)| m > 0)
    }

    pub fn edge_count(&self) -> u64 {
        self.mult.iter().map(|&m| u64::from(m)).sum()
    }

    pub fn degree(&self, v: usize) -> u64 {
        assert!(v < self.n, "vertex {v} out of range");
        (0..self.n)
            .filter(|&u| u != v)
            .map(|u| u64::from(self.mult(u, v)))
            .sum()
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> u64 {
        (0..self.n).map(|v| self.degree(v)).min().unwrap()
    }

    /// Largest pair multiplicity; 0 for a single-vertex graph.
    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// Number of edges crossing between `s` and its complement.
    pub fn cut_degree(&self, s: &VertexSubset) -> Result<u64> {
        if s.n != self.n {
            return Err(Error::WrongVertexCount {
                n: s.n,
                expected: self.n,
            });
        }
        Ok(self.cut_degree_mask(s.mask))
    }

    pub(crate) fn cut_degree_mask(&self, mask: u16) -> u64 {
        self.pairs()
            .filter(|&(u, v, _)| (mask >> u) & 1 != (mask >> v) & 1)
            .map(|(_, _, m)| u64::from(m))
            .sum()
    }

    /// Identifies each block of `p` to a single vertex (block order becomes
    /// the new labeling) and drops the edges that became loops.
    pub fn contract(&self, p: &Partition) -> Result<Multigraph> {
        if p.n != self.n {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices, graph has {}",
                p.n, self.n
            )));
        }
        let mut block_of = vec![0usize; self.n];
        for (b, block) in p.blocks.iter().enumerate() {
            for &v in block {
                block_of[v] = b;
            }
        }
        let mut g = Multigraph::new(p.blocks.len())?;
        for (u, v, m) in self.edges() {
            let (a, b) = (block_of[u], block_of[v]);
            if a != b {
                g.set_mult(a, b, g.mult(a, b) + m);
            }
        }
        Ok(g)
    }

    /// Contracts the single pair {x, y}; the remaining vertices keep their
    /// relative order, with the merged vertex at position `min(x, y)`.
    pub fn contract_pair(&self, x: usize, y: usize) -> Result<Multigraph> {
        if x >= self.n {
            return Err(Error::VertexOutOfRange { index: x, n: self.n });
        }
        if y >= self.n {
            return Err(Error::VertexOutOfRange { index: y, n: self.n });
        }
        if x == y {
            return Err(Error::LoopEdge(x));
        }
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            if v == y {
                continue;
            }
            if v == x {
                blocks.push(vec![x, y]);
            } else {
                blocks.push(vec![v]);
            }
        }
        self.contract(&Partition::new(self.n, blocks)?)
    }

    /// Deletes one edge along each consecutive pair of `path` and adds one
    /// edge joining its endpoints. Closed walks are rejected because the
    /// replacement edge would be a loop.
    pub fn lift_path(&self, path: &[usize]) -> Result<Multigraph> {
        if path.len() < 2 {
            return Err(Error::PathTooShort);
        }
        for &v in path {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { index: v, n: self.n });
            }
        }
        let (first, last) = (path[0], path[path.len() - 1]);
        if first == last {
            return Err(Error::ClosedPath(first));
        }
        let mut g = self.clone();
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let m = g.mult(u, v);
            if m == 0 {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                return Err(Error::MissingPathEdge { u: a, v: b });
            }
            g.set_mult(u, v, m - 1);
        }
        g.set_mult(first, last, g.mult(first, last) + 1);
        Ok(g)
    }

    /// Restriction to `keep` (strictly increasing vertex list), relabeled to
    /// 0..keep.len() in order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Multigraph> {
        if keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(
                "induced subgraph needs a strictly increasing vertex list".into(),
            ));
        }
        for &v in keep {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { index: v, n: self.n });
            }
        }
        let mut g = Multigraph::new(keep.len())?;
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                g.set_mult(i, j, self.mult(u, v));
            }
        }
        Ok(g)
    }

    /// Largest `m` such that every partition `P` with at least two blocks
    /// satisfies `e(G/P) >= m (|P| - 1)`; by the partition theorem this is
    /// the number of edge-disjoint spanning trees. The witness is the first
    /// minimizing partition in lexicographic order.
    pub fn tree_packing_number(&self) -> TreePacking {
        if self.n == 1 {
            return TreePacking::Unbounded;
        }
        let mut best: Option<(u64, Vec<usize>)> = None;
        for labels in partition_labels(self.n) {
            let block_count = labels.iter().max().unwrap() + 1;
            if block_count < 2 {
                continue;
            }
            let cross: u64 = self
                .pairs()
                .filter(|&(u, v, _)| labels[u] != labels[v])
                .map(|(_, _, m)| u64::from(m))
                .sum();
            let value = cross / (block_count as u64 - 1);
            if best.as_ref().map_or(true, |(b, _)| value < *b) {
                best = Some((value, labels));
            }
        }
        let (count, labels) = best.unwrap();
        TreePacking::Finite {
            count,
            witness: Partition::from_labels(&labels),
        }
    }

    /// Searches for at most `d(z) - m` disjoint pairs of non-parallel edges
    /// at `z` whose lifting leaves `m` edge-disjoint spanning trees on the
    /// other vertices. Returns the chosen pairs (as neighbor pairs `(x, y)`,
    /// meaning the 2-path x-z-y) and the lifted graph with `z` still present.
    pub fn find_tree_preserving_lifts(
        &self,
        z: usize,
        m: u64,
    ) -> Result<(Vec<(usize, usize)>, Multigraph)> {
        if z >= self.n {
            return Err(Error::VertexOutOfRange { index: z, n: self.n });
        }
        if self.n < 2 {
            return Err(Error::Precondition(
                "lift search needs at least two vertices".into(),
            ));
        }
        let dz = self.degree(z);
        if dz > 2 * m {
            return Err(Error::Precondition(format!(
                "degree of z is {dz}, above the 2m = {} bound",
                2 * m
            )));
        }
        if !self.tree_packing_number().at_least(m) {
            return Err(Error::Precondition(format!(
                "graph does not have {m} edge-disjoint spanning trees"
            )));
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != z).collect();
        let max_pairs = (dz - m) as usize;
        let avail: Vec<u32> = (0..self.n)
            .map(|v| if v == z { 0 } else { self.mult(z, v) })
            .collect();
        // Candidate neighbor pairs in lexicographic order; the two lifted
        // edges must go to distinct neighbors (non-parallel).
        let candidates: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|x| ((x + 1)..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != z && y != z)
            .collect();

        let check = |pairs: &[(usize, usize)]| -> Option<Multigraph> {
            let mut lifted = self.clone();
            for &(x, y) in pairs {
                lifted = lifted.lift_path(&[x, z, y]).expect("availability tracked");
            }
            let remainder = lifted.induced_subgraph(&keep).expect("keep list valid");
            if remainder.tree_packing_number().at_least(m) {
                Some(lifted)
            } else {
                None
            }
        };

        // Smallest pairings first; within each size, lexicographic with
        // non-decreasing pair sequence so a multiset is visited once.
        for k in 0..=max_pairs {
            let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(k);
            let mut avail = avail.clone();
            if let Some(result) =
                search_pairings(&candidates, k, 0, &mut chosen, &mut avail, &check)
            {
                return Ok(result);
            }
        }
        panic!("tree-preserving lift search exhausted under valid preconditions");
    }

    /// Lexicographically minimal byte encoding over all vertex relabelings:
    /// `[n, big-endian multiplicities of the permuted upper triangle]`.
    /// Equal codes characterize isomorphism at this size.
    pub fn canonical_code(&self) -> Result<Vec<u8>> {
        if self.n > CANON_N_MAX {
            return Err(Error::CanonicalTooLarge { n: self.n });
        }
        let mut best: Option<Vec<u8>> = None;
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut buf = Vec::with_capacity(1 + 4 * self.mult.len());
        permute(&mut perm, 0, &mut |perm| {
            buf.clear();
            buf.push(self.n as u8);
            for i in 0..self.n {
                for j in (i + 1)..self.n {
                    buf.extend_from_slice(&self.mult(perm[i], perm[j]).to_be_bytes());
                }
            }
            if best.as_ref().map_or(true, |b| buf < *b) {
                best = Some(buf.clone());
            }
        });
        Ok(best.unwrap())
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> Result<bool> {
        Ok(self.canonical_code()? == other.canonical_code()?)
    }
}

fn search_pairings(
    candidates: &[(usize, usize)],
    remaining: usize,
    min_candidate: usize,
    chosen: &mut Vec<(usize, usize)>,
    avail: &mut Vec<u32>,
    check: &dyn Fn(&[(usize, usize)]) -> Option<Multigraph>,
) -> Option<(Vec<(usize, usize)>, Multigraph)> {
    if remaining == 0 {
        return check(chosen).map(|lifted| (chosen.clone(), lifted));
    }
    for (ci, &(x, y)) in candidates.iter().enumerate().skip(min_candidate) {
        if avail[x] == 0 || avail[y] == 0 {
            continue;
        }
        avail[x] -= 1;
        avail[y] -= 1;
        chosen.push((x, y));
        if let Some(result) =
            search_pairings(candidates, remaining - 1, ci, chosen, avail, check)
        {
            return Some(result);
        }
        chosen.pop();
        avail[x] += 1;
        avail[y] += 1;
    }
    None
}

/// Calls `f` with every permutation of `items[at..]`, lexicographic-ish
/// order; only determinism matters to callers, not the exact order.
fn permute(items: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        f(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, f);
        items.swap(at, i);
    }
}

/// All set partitions of {0..n} as restricted-growth label vectors, in
/// lexicographic label order (the all-zero single block comes first).
pub(crate) fn partition_labels(n: usize) -> Vec<Vec<usize>> {
    assert!(n >= 1 && n <= N_MAX);
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(labels: &mut Vec<usize>, at: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if at == labels.len() {
            out.push(labels.clone());
            return;
        }
        for b in 0..=max_used + 1 {
            labels[at] = b;
            rec(labels, at + 1, max_used.max(b), out);
        }
    }
    if n == 1 {
        out.push(labels);
    } else {
        rec(&mut labels, 1, 0, &mut out);
    }
    out
}

/// A subset of the vertices of an n-vertex graph, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSubset {
    n: usize,
    mask: u16,
}

impl VertexSubset {
    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        if n < 1 || n > N_MAX {
            return Err(Error::VertexCountOutOfRange(n));
        }
        let mut mask = 0u16;
        for &v in members {
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
            mask |= 1 << v;
        }
        Ok(VertexSubset { n, mask })
    }

    pub(crate) fn from_mask(n: usize, mask: u16) -> Self {
        debug_assert!(mask < (1 << n));
        VertexSubset { n, mask }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_members(n, &[])
    }

    pub fn complement(&self) -> Self {
        VertexSubset {
            n: self.n,
            mask: !self.mask & ((1 << self.n) - 1),
        }
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| (self.mask >> v) & 1 == 1).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && (self.mask >> v) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Every subset of {0..n} in lexicographic order of the sorted member list:
/// [], [0], [0,1], [0,1,2], ..., [0,2], ..., [1], [1,2], ...
pub(crate) fn subsets_lex(n: usize) -> Vec<VertexSubset> {
    let mut out = Vec::with_capacity(1 << n);
    fn rec(n: usize, next: usize, mask: u16, out: &mut Vec<VertexSubset>) {
        out.push(VertexSubset::from_mask(n, mask));
        for v in next..n {
            rec(n, v + 1, mask | (1 << v), out);
        }
    }
    rec(n, 0, 0, &mut out);
    out
}

/// An ordered partition of {0..n} into nonempty blocks. Block order matters:
/// contraction uses it as the new labeling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears in two blocks"
                    )));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidPartition("blocks do not cover all vertices".into()));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(Partition { n, blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    fn from_labels(labels: &[usize]) -> Self {
        let block_count = labels.iter().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); block_count];
        for (v, &b) in labels.iter().enumerate() {
            blocks[b].push(v);
        }
        Partition {
            n: labels.len(),
            blocks,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Result of the spanning-tree packing computation. A single vertex packs
/// any number of (empty) spanning trees, hence the unbounded variant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TreePacking {
    Unbounded,
    Finite { count: u64, witness: Partition },
}

impl TreePacking {
    pub fn at_least(&self, m: u64) -> bool {
        match self {
            TreePacking::Unbounded => true,
            TreePacking::Finite { count, .. } => *count >= m,
        }
    }

    pub fn count(&self) -> Option<u64> {
        match self {
            TreePacking::Unbounded => None,
            TreePacking::Finite { count, .. } => Some(*count),
        }
    }
}
