//! Orientations of a multigraph and the solvers that decide whether a
//! boundary can be realized: the cut-condition check with bad-set witnesses,
//! an exact-imbalance constructor based on path reversal, the candidate-lift
//! decision procedure, an exhaustive oracle, and the residue-interval solver
//! for three-vertex graphs.

use crate::boundary::{
    gamma_candidates, intersect, is_valid_boundary, residue_interval, BoundarySpec,
};
use crate::error::{Error, Result};
use crate::graph::{pair_index, subsets_lex, Multigraph, VertexSubset};

/// An orientation, recorded per unordered pair as the number of parallel
/// edges pointing from the lower-indexed endpoint to the higher one.
/// Parallel edges are interchangeable, so this is a complete description.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orientation {
    n: usize,
    forward: Vec<u32>,
}

impl Orientation {
    /// Wraps explicit forward counts; each count must fit its multiplicity.
    pub fn new(g: &Multigraph, forward: Vec<u32>) -> Result<Self> {
        let expected = g.n() * (g.n() - 1) / 2;
        if forward.len() != expected {
            return Err(Error::Precondition(format!(
                "orientation has {} pair entries, graph needs {expected}",
                forward.len()
            )));
        }
        for (u, v, m) in g.pairs() {
            let f = forward[pair_index(g.n(), u, v)];
            if f > m {
                return Err(Error::Precondition(format!(
                    "forward count {f} exceeds multiplicity {m} on pair {{{u}, {v}}}"
                )));
            }
        }
        Ok(Orientation { n: g.n(), forward })
    }

    /// Every edge pointing from its lower endpoint to its higher one.
    pub fn all_forward(g: &Multigraph) -> Self {
        Orientation {
            n: g.n(),
            forward: g.pairs().map(|(_, _, m)| m).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Forward count on the pair {u, v} with u < v.
    pub fn forward(&self, u: usize, v: usize) -> u32 {
        assert!(u < v && v < self.n, "invalid ordered pair ({u}, {v})");
        self.forward[pair_index(self.n, u, v)]
    }

    /// Number of arcs oriented `from -> to`, in either label order.
    pub fn arc_count(&self, g: &Multigraph, from: usize, to: usize) -> u32 {
        assert_eq!(g.n(), self.n, "orientation belongs to a different graph");
        if from < to {
            self.forward(from, to)
        } else {
            g.mult(to, from) - self.forward(to, from)
        }
    }
}

/// Out-degree minus in-degree of `v` under `d`.
pub fn imbalance(g: &Multigraph, d: &Orientation, v: usize) -> i64 {
    assert_eq!(g.n(), d.n(), "orientation belongs to a different graph");
    assert!(v < g.n(), "vertex {v} out of range");
    let mut total = 0i64;
    for u in g.vertices() {
        if u == v {
            continue;
        }
        let m = i64::from(g.mult(u, v));
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        let f = i64::from(d.forward(lo, hi));
        // Net flow lo -> hi is 2f - m; flip the sign when v is the target.
        let net = 2 * f - m;
        total += if v == lo { net } else { -net };
    }
    total
}

pub fn imbalances(g: &Multigraph, d: &Orientation) -> Vec<i64> {
    g.vertices().map(|v| imbalance(g, d, v)).collect()
}

/// True when every vertex imbalance matches the boundary modulo 2l.
pub fn verify_beta_orientation(g: &Multigraph, b: &BoundarySpec, d: &Orientation) -> bool {
    assert_eq!(b.len(), g.n(), "boundary belongs to a different graph");
    let modulus = i64::from(b.modulus());
    g.vertices()
        .all(|v| imbalance(g, d, v).rem_euclid(modulus) == i64::from(b.values()[v]))
}

/// A subset certifying that no orientation achieves the imbalances `gamma`:
/// the requested net flow out of `subset` exceeds its cut.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BadSetWitness {
    pub subset: VertexSubset,
    pub gamma_sum: i64,
    pub cut: u64,
}

/// Checks the cut condition `|sum of gamma over S| <= d(S)` over every
/// subset, in lexicographic order of the member lists; returns the first
/// violator. `gamma` must match degrees in parity and sum to zero.
pub fn hakimi_check(g: &Multigraph, gamma: &[i64]) -> Result<Option<BadSetWitness>> {
    if gamma.len() != g.n() {
        return Err(Error::Precondition(format!(
            "gamma has {} entries, graph has {} vertices",
            gamma.len(),
            g.n()
        )));
    }
    for v in g.vertices() {
        if gamma[v].rem_euclid(2) != (g.degree(v) % 2) as i64 {
            return Err(Error::Precondition(format!(
                "gamma({v}) = {} does not match degree {} in parity",
                gamma[v],
                g.degree(v)
            )));
        }
    }
    if gamma.iter().sum::<i64>() != 0 {
        return Err(Error::Precondition("gamma does not sum to zero".into()));
    }
    for subset in subsets_lex(g.n()) {
        let gamma_sum: i64 = subset.members().iter().map(|&v| gamma[v]).sum();
        let cut = g.cut_degree(&subset).expect("subset sized to graph");
        if gamma_sum.unsigned_abs() > cut {
            return Ok(Some(BadSetWitness {
                subset,
                gamma_sum,
                cut,
            }));
        }
    }
    Ok(None)
}

/// Builds an orientation whose imbalances equal `gamma` exactly. Starting
/// from the all-forward orientation, repeatedly reverses one directed path
/// from a surplus vertex to a deficit vertex (breadth-first, lowest index
/// first). The cut condition guarantees such a path exists, so a failed
/// search panics.
pub fn construct_orientation(g: &Multigraph, gamma: &[i64]) -> Result<Orientation> {
    if let Some(bad) = hakimi_check(g, gamma)? {
        return Err(Error::Precondition(format!(
            "gamma is infeasible: |{}| > {} on subset {:?}",
            bad.gamma_sum,
            bad.cut,
            bad.subset.members()
        )));
    }
    let n = g.n();
    let mut d = Orientation::all_forward(g);
    // Surplus s(v) > 0 means v currently points out more than gamma allows.
    let mut surplus: Vec<i64> = g
        .vertices()
        .map(|v| (imbalance(g, &d, v) - gamma[v]) / 2)
        .collect();

    loop {
        let source = match (0..n).find(|&v| surplus[v] > 0) {
            Some(v) => v,
            None => break,
        };
        // BFS over currently-directed arcs with reversible capacity.
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut visited = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        visited[source] = true;
        queue.push_back(source);
        let mut target = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for w in 0..n {
                if visited[w] || w == u {
                    continue;
                }
                if d.arc_count(g, u, w) == 0 {
                    continue;
                }
                visited[w] = true;
                parent[w] = Some(u);
                if surplus[w] < 0 {
                    target = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        let target =
            target.expect("a reversal path must exist once the cut condition holds");
        // Reverse every arc on the path back to the source.
        let mut b = target;
        while let Some(a) = parent[b] {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let idx = pair_index(n, lo, hi);
            if a < b {
                d.forward[idx] -= 1;
            } else {
                d.forward[idx] += 1;
            }
            b = a;
        }
        surplus[source] -= 1;
        surplus[target] += 1;
    }
    debug_assert_eq!(imbalances(g, &d), gamma);
    Ok(d)
}

/// One candidate imbalance vector together with the subset that refutes it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RefutedGamma {
    pub gamma: Vec<i64>,
    pub witness: BadSetWitness,
}

/// Either an orientation realizing the boundary or the per-candidate
/// refutations collected along the way.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    Feasible(Orientation),
    Infeasible(Vec<RefutedGamma>),
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible(_))
    }

    pub fn orientation(&self) -> Option<&Orientation> {
        match self {
            SolveOutcome::Feasible(d) => Some(d),
            SolveOutcome::Infeasible(_) => None,
        }
    }

    pub fn refutations(&self) -> &[RefutedGamma] {
        match self {
            SolveOutcome::Feasible(_) => &[],
            SolveOutcome::Infeasible(r) => r,
        }
    }
}

/// Decides whether `b` admits an orientation by sweeping the candidate
/// lifts in lexicographic order and checking the cut condition on each; the
/// first feasible candidate is materialized exactly. The candidate stream is
/// a complete search space, so infeasibility here is conclusive. A boundary
/// violating the parity or sum conditions is infeasible outright.
pub fn find_beta_orientation(g: &Multigraph, b: &BoundarySpec) -> Result<SolveOutcome> {
    if b.len() != g.n() {
        return Err(Error::BoundaryArity {
            len: b.len(),
            n: g.n(),
        });
    }
    if !is_valid_boundary(g, b) {
        return Ok(SolveOutcome::Infeasible(Vec::new()));
    }
    let mut refuted = Vec::new();
    for gamma in gamma_candidates(g, b)? {
        match hakimi_check(g, &gamma)? {
            None => {
                let d = construct_orientation(g, &gamma)?;
                debug_assert!(verify_beta_orientation(g, b, &d));
                return Ok(SolveOutcome::Feasible(d));
            }
            Some(witness) => refuted.push(RefutedGamma { gamma, witness }),
        }
    }
    Ok(SolveOutcome::Infeasible(refuted))
}

/// Search-space guard for the exhaustive oracle.
const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Exhaustive oracle: walks every forward-count table in lexicographic order
/// and reports the first one realizing `b`. Independent of the candidate
/// machinery; infeasibility carries no witnesses.
pub fn brute_force_beta_orientation(g: &Multigraph, b: &BoundarySpec) -> Result<SolveOutcome> {
    if b.len() != g.n() {
        return Err(Error::BoundaryArity {
            len: b.len(),
            n: g.n(),
        });
    }
    let space: u128 = g.pairs().map(|(_, _, m)| u128::from(m) + 1).product();
    if space > BRUTE_FORCE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "orientation space has {space} tables, limit is {BRUTE_FORCE_LIMIT}"
        )));
    }
    let mults: Vec<u32> = g.pairs().map(|(_, _, m)| m).collect();
    let mut forward = vec![0u32; mults.len()];
    loop {
        let d = Orientation {
            n: g.n(),
            forward: forward.clone(),
        };
        if verify_beta_orientation(g, b, &d) {
            return Ok(SolveOutcome::Feasible(d));
        }
        // Odometer: last pair varies fastest, giving lexicographic order.
        let mut i = forward.len();
        loop {
            if i == 0 {
                return Ok(SolveOutcome::Infeasible(Vec::new()));
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

/// Three-vertex solver via residue intervals: with pair multiplicities
/// mu_i on {v_i, v_i+1}, a boundary is realizable exactly when
/// I_0, I_1 - b_1, I_2 + b_0 share a residue; that residue decodes back
/// into per-pair net flows.
pub fn solve_three_vertex(g: &Multigraph, b: &BoundarySpec) -> Result<SolveOutcome> {
    if g.n() != 3 {
        return Err(Error::WrongVertexCount {
            n: g.n(),
            expected: 3,
        });
    }
    if b.len() != 3 {
        return Err(Error::BoundaryArity {
            len: b.len(),
            n: 3,
        });
    }
    if !is_valid_boundary(g, b) {
        return Ok(SolveOutcome::Infeasible(Vec::new()));
    }
    let ell = b.ell();
    let modulus = i64::from(2 * ell);
    let mu = [g.mult(0, 1), g.mult(1, 2), g.mult(2, 0)];
    let beta: Vec<i64> = b.values().iter().map(|&v| i64::from(v)).collect();

    let i0 = residue_interval(mu[0], ell)?;
    let i1 = residue_interval(mu[1], ell)?.shift(-beta[1]);
    let i2 = residue_interval(mu[2], ell)?.shift(beta[0]);
    let common = intersect(&[i0, i1, i2])?;
    let x0 = match common.min_member() {
        Some(x) => i64::from(x),
        None => return Ok(SolveOutcome::Infeasible(Vec::new())),
    };
    let x = [
        x0,
        (x0 + beta[1]).rem_euclid(modulus),
        (x0 - beta[0]).rem_euclid(modulus),
    ];
    // Decode each residue to the net flow of smallest absolute value
    // (ties resolved to the nonnegative one).
    let t: Vec<i64> = x
        .iter()
        .map(|&xi| if xi <= i64::from(ell) { xi } else { xi - modulus })
        .collect();
    for (i, &ti) in t.iter().enumerate() {
        debug_assert!(ti.unsigned_abs() <= u64::from(mu[i]));
        debug_assert_eq!(ti.rem_euclid(2), i64::from(mu[i] % 2));
    }

    let mut forward = vec![0u32; 3];
    forward[pair_index(3, 0, 1)] = ((i64::from(mu[0]) + t[0]) / 2) as u32;
    forward[pair_index(3, 1, 2)] = ((i64::from(mu[1]) + t[1]) / 2) as u32;
    forward[pair_index(3, 0, 2)] = ((i64::from(mu[2]) - t[2]) / 2) as u32;
    let d = Orientation { n: 3, forward };
    debug_assert!(verify_beta_orientation(g, b, &d));
    Ok(SolveOutcome::Feasible(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::enumerate_boundaries;

    /// Independent imbalance oracle: expand the orientation into explicit
    /// arcs and count heads and tails.
    fn arc_count_imbalance(g: &Multigraph, d: &Orientation, v: usize) -> i64 {
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for (a, b, m) in g.pairs() {
            let f = d.forward(a, b);
            for _ in 0..f {
                arcs.push((a, b));
            }
            for _ in 0..(m - f) {
                arcs.push((b, a));
            }
        }
        let out = arcs.iter().filter(|&&(t, _)| t == v).count() as i64;
        let inn = arcs.iter().filter(|&&(_, h)| h == v).count() as i64;
        out - inn
    }

    #[test]
    fn imbalance_examples() {
        let g = Multigraph::a_k2(4);
        let d = Orientation::all_forward(&g);
        assert_eq!(imbalances(&g, &d), vec![4, -4]);

        // Splitting every pair in half balances those contributions.
        let t = Multigraph::triangle(2, 4, 6);
        let d = Orientation::new(&t, vec![1, 3, 2]).unwrap();
        assert_eq!(imbalances(&t, &d), vec![0, 0, 0]);

        let w1 = Multigraph::w1();
        let d = Orientation::new(
            &w1,
            // Pairs in order (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
            vec![3, 1, 1, 0, 0, 1],
        )
        .unwrap();
        for v in 0..4 {
            assert_eq!(imbalance(&w1, &d, v), arc_count_imbalance(&w1, &d, v));
        }
        assert_eq!(imbalances(&w1, &d).iter().sum::<i64>(), 0);
    }

    #[test]
    fn imbalance_total_is_zero() {
        let g = Multigraph::from_edges(4, &[(0, 1, 2), (0, 3, 5), (1, 2, 1), (2, 3, 3)]).unwrap();
        let d = Orientation::new(&g, vec![2, 0, 1, 1, 0, 2]).unwrap();
        assert_eq!(imbalances(&g, &d).iter().sum::<i64>(), 0);
    }

    #[test]
    fn orientation_validation() {
        let g = Multigraph::a_k2(2);
        assert!(Orientation::new(&g, vec![3]).is_err());
        assert!(Orientation::new(&g, vec![1, 1]).is_err());
        assert_eq!(Orientation::all_forward(&g).arc_count(&g, 1, 0), 0);
    }

    #[test]
    fn verify_beta_orientation_examples() {
        let g = Multigraph::a_k2(4);
        let b = BoundarySpec::new(5, vec![4, 6]).unwrap();
        let d = Orientation::all_forward(&g);
        assert!(verify_beta_orientation(&g, &b, &d));

        // Balanced orientation realizes the zero boundary.
        let t = Multigraph::triangle(2, 2, 2);
        let b = BoundarySpec::new(4, vec![0, 0, 0]).unwrap();
        let d = Orientation::new(&t, vec![1, 1, 1]).unwrap();
        assert!(verify_beta_orientation(&t, &b, &d));
    }

    #[test]
    fn no_orientation_of_w1_hits_the_all_ell_boundary() {
        // Exhaustive negative check straight from the definitions.
        let w1 = Multigraph::w1();
        let b = BoundarySpec::new(5, vec![5, 5, 5, 5]).unwrap();
        let outcome = brute_force_beta_orientation(&w1, &b).unwrap();
        assert!(!outcome.is_feasible());
    }

    #[test]
    fn hakimi_check_examples() {
        let w1 = Multigraph::w1();
        let bad = hakimi_check(&w1, &[5, 5, -5, -5]).unwrap().unwrap();
        assert_eq!(bad.subset.members(), vec![0, 1]);
        assert_eq!(bad.gamma_sum, 10);
        assert_eq!(bad.cut, 8);

        // Complement of a bad set is bad too.
        let complement = bad.subset.complement();
        let sum: i64 = complement.members().iter().map(|&v| [5, 5, -5, -5][v]).sum();
        assert!(sum.unsigned_abs() > w1.cut_degree(&complement).unwrap());

        let t = Multigraph::triangle(2, 2, 2);
        assert!(hakimi_check(&t, &[0, 0, 0]).unwrap().is_none());
        assert!(hakimi_check(&t, &[4, -2, -2]).unwrap().is_none());
    }

    #[test]
    fn hakimi_check_rejects_bad_gamma() {
        let t = Multigraph::triangle(2, 2, 2);
        // Parity mismatch.
        assert!(hakimi_check(&t, &[1, -1, 0]).is_err());
        // Nonzero sum.
        assert!(hakimi_check(&t, &[2, 2, 2]).is_err());
        // Wrong length.
        assert!(hakimi_check(&t, &[0, 0]).is_err());
    }

    #[test]
    fn construct_orientation_examples() {
        let g = Multigraph::a_k2(4);
        let d = construct_orientation(&g, &[4, -4]).unwrap();
        assert_eq!(d.forward(0, 1), 4);
        let d = construct_orientation(&g, &[0, 0]).unwrap();
        assert_eq!(d.forward(0, 1), 2);

        let w1 = Multigraph::w1();
        let gamma = [3, -1, -1, -1];
        let d = construct_orientation(&w1, &gamma).unwrap();
        assert_eq!(imbalances(&w1, &d), gamma);
    }

    #[test]
    fn construct_orientation_rejects_infeasible_gamma() {
        let w1 = Multigraph::w1();
        assert!(matches!(
            construct_orientation(&w1, &[5, 5, -5, -5]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn construct_orientation_exact_over_sweep() {
        // Every feasible candidate of every boundary is realized exactly.
        let g = Multigraph::triangle(3, 2, 1);
        for b in enumerate_boundaries(&g, 3).unwrap() {
            for gamma in gamma_candidates(&g, &b).unwrap() {
                if hakimi_check(&g, &gamma).unwrap().is_none() {
                    let d = construct_orientation(&g, &gamma).unwrap();
                    assert_eq!(imbalances(&g, &d), gamma);
                }
            }
        }
    }

    #[test]
    fn find_beta_orientation_on_w1() {
        let w1 = Multigraph::w1();
        let b = BoundarySpec::new(5, vec![5, 5, 5, 5]).unwrap();
        match find_beta_orientation(&w1, &b).unwrap() {
            SolveOutcome::Feasible(_) => panic!("the all-5 boundary is infeasible"),
            SolveOutcome::Infeasible(refuted) => {
                assert_eq!(refuted.len(), 6);
                for r in &refuted {
                    assert_eq!(r.witness.subset.len(), 2);
                    assert_eq!(r.witness.gamma_sum.unsigned_abs(), 10);
                    assert_eq!(r.witness.cut, 8);
                }
            }
        }

        // Every other valid boundary of W1 is feasible.
        let b = BoundarySpec::new(5, vec![5, 5, 7, 3]).unwrap();
        assert!(is_valid_boundary(&w1, &b));
        assert!(find_beta_orientation(&w1, &b).unwrap().is_feasible());
    }

    #[test]
    fn find_beta_orientation_trivial_cases() {
        let k1 = Multigraph::new(1).unwrap();
        let b = BoundarySpec::new(3, vec![0]).unwrap();
        assert!(find_beta_orientation(&k1, &b).unwrap().is_feasible());

        // Invalid boundaries are infeasible rather than an error.
        let g = Multigraph::a_k2(3);
        let b = BoundarySpec::new(5, vec![4, 6]).unwrap();
        let fast = find_beta_orientation(&g, &b).unwrap();
        let brute = brute_force_beta_orientation(&g, &b).unwrap();
        assert!(!fast.is_feasible());
        assert!(!brute.is_feasible());
    }

    #[test]
    fn brute_force_agrees_with_find_on_w_graphs() {
        for g in [Multigraph::w1(), Multigraph::w2()] {
            for b in enumerate_boundaries(&g, 5).unwrap() {
                let fast = find_beta_orientation(&g, &b).unwrap();
                let brute = brute_force_beta_orientation(&g, &b).unwrap();
                assert_eq!(fast.is_feasible(), brute.is_feasible(), "boundary {:?}", b);
            }
        }
    }

    #[test]
    fn brute_force_guard() {
        let g = Multigraph::from_edges(3, &[(0, 1, 4000), (1, 2, 4000)]).unwrap();
        let b = BoundarySpec::new(3, vec![0, 0, 0]).unwrap();
        assert!(matches!(
            brute_force_beta_orientation(&g, &b),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn solve_three_vertex_examples() {
        let t = Multigraph::triangle(4, 4, 4);
        for b in enumerate_boundaries(&t, 5).unwrap() {
            let outcome = solve_three_vertex(&t, &b).unwrap();
            assert!(outcome.is_feasible(), "boundary {:?}", b);
            let d = outcome.orientation().unwrap();
            assert!(verify_beta_orientation(&t, &b, d));
        }

        // Balanced solution for the zero boundary.
        let t = Multigraph::triangle(2, 2, 2);
        let b = BoundarySpec::new(3, vec![0, 0, 0]).unwrap();
        let outcome = solve_three_vertex(&t, &b).unwrap();
        let d = outcome.orientation().unwrap();
        assert_eq!(imbalances(&t, d), vec![0, 0, 0]);

        let w1 = Multigraph::w1();
        let b = BoundarySpec::new(5, vec![5, 5, 5, 5]).unwrap();
        assert!(matches!(
            solve_three_vertex(&w1, &b),
            Err(Error::WrongVertexCount { n: 4, expected: 3 })
        ));
    }

    #[test]
    fn solve_three_vertex_agrees_with_oracle() {
        let t = Multigraph::triangle(1, 1, 2);
        for ell in [3u32, 4] {
            for b in enumerate_boundaries(&t, ell).unwrap() {
                let direct = solve_three_vertex(&t, &b).unwrap();
                let brute = brute_force_beta_orientation(&t, &b).unwrap();
                assert_eq!(direct.is_feasible(), brute.is_feasible(), "boundary {:?}", b);
                if let Some(d) = direct.orientation() {
                    assert!(verify_beta_orientation(&t, &b, d));
                }
            }
        }
    }
}
