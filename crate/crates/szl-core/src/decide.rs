//! Membership decisions: does a graph admit an orientation for *every*
//! boundary? The brute decider sweeps all boundaries; the fast decider
//! applies the characterizations for up to four vertices, including the
//! multiplicity simplification and the single exceptional boundary shape.

use crate::boundary::{check_ell, enumerate_boundaries, BoundarySpec};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSubset};
use crate::orient::{find_beta_orientation, RefutedGamma, SolveOutcome};

/// Cap on the number of per-boundary solver calls in one sweep.
const SWEEP_BUDGET: u128 = 1_000_000;

/// How a verdict was reached.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Fast,
    Brute,
}

/// The fast-path rule that settled a verdict. `as_str` values are stable;
/// tests and the cache format rely on them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FastRule {
    /// n = 1: always a member.
    SingleVertex,
    /// n = 2: membership is exactly multiplicity >= l - 1.
    TwoVertex { member: bool },
    /// n = 3: membership is exactly e >= 2l - 2 and min degree >= l - 1.
    ThreeVertex { member: bool },
    /// n = 4, simplified graph has min degree below l - 1.
    FourDeltaLow,
    /// n = 4, simplified graph has fewer than 3l - 3 edges.
    FourEdgesLow,
    /// n = 4, condition (1): simplified multiplicity equals l - 1.
    FourMultiplicity,
    /// n = 4, condition (1): simplified edge count at least 3l - 2.
    FourEdgesHigh,
    /// n = 4, condition (2): some 2-vertex cut differs from 2l - 2.
    FourCutBreak,
    /// n = 4, condition (3): some degree differs from l in parity.
    FourParityBreak,
    /// n = 4, all three conditions fail: the exceptional non-member shape.
    FourException,
}

impl FastRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            FastRule::SingleVertex => "1v-member",
            FastRule::TwoVertex { member: true } => "2v-mult-sufficient",
            FastRule::TwoVertex { member: false } => "2v-mult-deficient",
            FastRule::ThreeVertex { member: true } => "3v-trees-sufficient",
            FastRule::ThreeVertex { member: false } => "3v-trees-deficient",
            FastRule::FourDeltaLow => "4v-min-degree-low",
            FastRule::FourEdgesLow => "4v-edges-low",
            FastRule::FourMultiplicity => "4v-cond1-multiplicity",
            FastRule::FourEdgesHigh => "4v-cond1-edges",
            FastRule::FourCutBreak => "4v-cond2-cut",
            FastRule::FourParityBreak => "4v-cond3-parity",
            FastRule::FourException => "4v-exception",
        }
    }
}

/// Trace of the decision route. Brute verdicts at l = 2 sit outside the
/// characterized range and are labeled as such.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Trace {
    Brute,
    BruteUncharacterized,
    Fast(FastRule),
}

impl Trace {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trace::Brute => "brute",
            Trace::BruteUncharacterized => "brute-uncharacterized",
            Trace::Fast(rule) => rule.as_str(),
        }
    }
}

impl std::fmt::Display for Trace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A boundary with no orientation, along with the refutation of every
/// candidate imbalance vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FailingBoundary {
    pub boundary: BoundarySpec,
    pub refuted: Vec<RefutedGamma>,
}

/// Outcome of a membership decision. Brute non-member verdicts always carry
/// at least one failing boundary; fast verdicts leave the list empty and
/// defer certificates to `failing_boundaries`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub member: bool,
    pub method: Method,
    pub trace: Trace,
    pub failing: Vec<FailingBoundary>,
}

/// Truncates every multiplicity of at least l - 1 down to exactly l - 1.
/// Membership is invariant under this reduction, and the result is a
/// fixpoint.
pub fn szl_simplify(g: &Multigraph, ell: u32) -> Result<Multigraph> {
    check_ell(ell)?;
    if ell < 3 {
        return Err(Error::Precondition(
            "simplification is defined for ell >= 3".into(),
        ));
    }
    let cap = ell - 1;
    let mut out = g.clone();
    for (u, v, m) in g.pairs() {
        if m > cap {
            out.set_mult(u, v, cap);
        }
    }
    Ok(out)
}

fn sweep_budget_check(g: &Multigraph, ell: u32) -> Result<()> {
    let boundaries = u128::from(ell).pow(g.n() as u32 - 1);
    if boundaries > SWEEP_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "boundary sweep needs {boundaries} solver calls, limit is {SWEEP_BUDGET}"
        )));
    }
    Ok(())
}

/// Decides membership by solving every boundary. Non-member verdicts list
/// every failing boundary with its candidate refutations.
pub fn decide_brute(g: &Multigraph, ell: u32) -> Result<Verdict> {
    check_ell(ell)?;
    sweep_budget_check(g, ell)?;
    let mut failing = Vec::new();
    for boundary in enumerate_boundaries(g, ell)? {
        match find_beta_orientation(g, &boundary)? {
            SolveOutcome::Feasible(_) => {}
            SolveOutcome::Infeasible(refuted) => failing.push(FailingBoundary {
                boundary,
                refuted,
            }),
        }
    }
    Ok(Verdict {
        member: failing.is_empty(),
        method: Method::Brute,
        trace: if ell >= 3 {
            Trace::Brute
        } else {
            Trace::BruteUncharacterized
        },
        failing,
    })
}

/// Decides membership through the small-graph characterizations. Only
/// graphs on at most four vertices and l >= 3 are covered; anything else is
/// an error rather than a silent fallback.
pub fn decide_fast(g: &Multigraph, ell: u32) -> Result<Verdict> {
    check_ell(ell)?;
    if ell < 3 {
        return Err(Error::Precondition(
            "fast decisions require ell >= 3".into(),
        ));
    }
    if g.n() > 4 {
        return Err(Error::Precondition(format!(
            "fast decisions cover at most 4 vertices, graph has {}",
            g.n()
        )));
    }
    let ell64 = u64::from(ell);
    let rule = match g.n() {
        1 => FastRule::SingleVertex,
        2 => FastRule::TwoVertex {
            member: u64::from(g.max_multiplicity()) >= ell64 - 1,
        },
        3 => FastRule::ThreeVertex {
            member: g.edge_count() >= 2 * ell64 - 2 && g.min_degree() >= ell64 - 1,
        },
        4 => {
            let simplified = szl_simplify(g, ell)?;
            if simplified.min_degree() < ell64 - 1 {
                FastRule::FourDeltaLow
            } else if simplified.edge_count() < 3 * ell64 - 3 {
                FastRule::FourEdgesLow
            } else if u64::from(simplified.max_multiplicity()) == ell64 - 1 {
                FastRule::FourMultiplicity
            } else if simplified.edge_count() >= 3 * ell64 - 2 {
                FastRule::FourEdgesHigh
            } else {
                let (cuts_tight, parity_uniform) = exception_conditions_4v(&simplified, ell)?;
                if !cuts_tight {
                    FastRule::FourCutBreak
                } else if !parity_uniform {
                    FastRule::FourParityBreak
                } else {
                    FastRule::FourException
                }
            }
        }
        _ => unreachable!(),
    };
    let member = match rule {
        FastRule::SingleVertex
        | FastRule::FourMultiplicity
        | FastRule::FourEdgesHigh
        | FastRule::FourCutBreak
        | FastRule::FourParityBreak => true,
        FastRule::TwoVertex { member } | FastRule::ThreeVertex { member } => member,
        FastRule::FourDeltaLow | FastRule::FourEdgesLow | FastRule::FourException => false,
    };
    Ok(Verdict {
        member,
        method: Method::Fast,
        trace: Trace::Fast(rule),
        failing: Vec::new(),
    })
}

/// The two conditions shaping the 4-vertex exception: every 2-vertex cut
/// equals 2l - 2, and every degree matches l in parity.
pub fn exception_conditions_4v(g: &Multigraph, ell: u32) -> Result<(bool, bool)> {
    check_ell(ell)?;
    if g.n() != 4 {
        return Err(Error::WrongVertexCount {
            n: g.n(),
            expected: 4,
        });
    }
    // Complementary 2-sets share a cut, so the three through vertex 0 suffice.
    let cuts_tight = (1..4).all(|v| {
        let s = VertexSubset::from_members(4, &[0, v]).unwrap();
        g.cut_degree(&s).unwrap() == 2 * u64::from(ell) - 2
    });
    let parity_uniform = g
        .vertices()
        .all(|v| g.degree(v) % 2 == u64::from(ell) % 2);
    Ok((cuts_tight, parity_uniform))
}

/// Exactly the boundaries with no orientation, in lexicographic order.
pub fn failing_boundaries(g: &Multigraph, ell: u32) -> Result<Vec<BoundarySpec>> {
    check_ell(ell)?;
    sweep_budget_check(g, ell)?;
    let mut failing = Vec::new();
    for boundary in enumerate_boundaries(g, ell)? {
        if !find_beta_orientation(g, &boundary)?.is_feasible() {
            failing.push(boundary);
        }
    }
    Ok(failing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doubled_k4() -> Multigraph {
        Multigraph::from_edges(
            4,
            &[
                (0, 1, 2),
                (0, 2, 2),
                (0, 3, 2),
                (1, 2, 2),
                (1, 3, 2),
                (2, 3, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn simplify_examples() {
        let mut g = Multigraph::new(2).unwrap();
        g.set_mult(0, 1, 7);
        let s = szl_simplify(&g, 5).unwrap();
        assert_eq!(s.mult(0, 1), 4);
        // Already-simplified graphs are fixpoints.
        assert_eq!(szl_simplify(&s, 5).unwrap(), s);

        let t = Multigraph::triangle(3, 2, 1);
        assert_eq!(szl_simplify(&t, 5).unwrap(), t);

        assert!(szl_simplify(&t, 2).is_err());
    }

    #[test]
    fn simplify_preserves_membership() {
        // Check on triangles with one multiplicity pushed past l - 1.
        let ell = 3;
        for a in 0..=(ell + 1) {
            for b in 0..=(ell + 1) {
                for c in 0..=(ell + 1) {
                    let g = Multigraph::triangle(a, b, c);
                    let s = szl_simplify(&g, ell).unwrap();
                    assert_eq!(
                        decide_brute(&g, ell).unwrap().member,
                        decide_brute(&s, ell).unwrap().member,
                        "triangle({a},{b},{c})"
                    );
                }
            }
        }
        // And one 4-vertex case with a heavy pair.
        let g = Multigraph::from_edges(4, &[(0, 1, 5), (0, 2, 2), (1, 3, 2), (2, 3, 2), (1, 2, 1)])
            .unwrap();
        let s = szl_simplify(&g, 3).unwrap();
        assert_eq!(
            decide_brute(&g, 3).unwrap().member,
            decide_brute(&s, 3).unwrap().member
        );
    }

    #[test]
    fn brute_verdict_on_w1() {
        let verdict = decide_brute(&Multigraph::w1(), 5).unwrap();
        assert!(!verdict.member);
        assert_eq!(verdict.failing.len(), 1);
        assert_eq!(verdict.failing[0].boundary.values(), &[5, 5, 5, 5]);
        assert_eq!(verdict.failing[0].refuted.len(), 6);
        assert_eq!(verdict.trace.as_str(), "brute");
    }

    #[test]
    fn brute_verdict_trivia() {
        let k1 = Multigraph::new(1).unwrap();
        assert!(decide_brute(&k1, 5).unwrap().member);

        assert!(decide_brute(&doubled_k4(), 5).unwrap().member);

        // l = 2 is accepted but labeled as outside the characterized range.
        let verdict = decide_brute(&Multigraph::a_k2(1), 2).unwrap();
        assert!(verdict.member);
        assert_eq!(verdict.trace.as_str(), "brute-uncharacterized");
    }

    #[test]
    fn brute_budget_guard() {
        let g = Multigraph::new(5).unwrap();
        assert!(matches!(
            decide_brute(&g, 64),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn fast_verdicts_on_small_families() {
        // Exceptional non-members.
        for g in [Multigraph::w1(), Multigraph::w2()] {
            let verdict = decide_fast(&g, 5).unwrap();
            assert!(!verdict.member);
            assert_eq!(verdict.trace.as_str(), "4v-exception");
        }

        // Two-vertex threshold.
        for ell in 3..=6u32 {
            let at = decide_fast(&Multigraph::a_k2(ell - 1), ell).unwrap();
            assert!(at.member);
            assert_eq!(at.trace.as_str(), "2v-mult-sufficient");
            let below = decide_fast(&Multigraph::a_k2(ell - 2), ell).unwrap();
            assert!(!below.member);
        }

        // Parity escape: doubled K4 at l = 5 has even degrees.
        let verdict = decide_fast(&doubled_k4(), 5).unwrap();
        assert!(verdict.member);
        assert_eq!(verdict.trace.as_str(), "4v-cond3-parity");

        // A heavy pair simplifies into condition (1).
        let g = Multigraph::from_edges(4, &[(0, 1, 4), (0, 2, 2), (1, 3, 2), (2, 3, 2), (1, 2, 1)])
            .unwrap();
        let verdict = decide_fast(&g, 3).unwrap();
        assert!(verdict.member);
        assert_eq!(verdict.trace.as_str(), "4v-cond1-multiplicity");
        assert_eq!(decide_brute(&g, 3).unwrap().member, verdict.member);
    }

    #[test]
    fn fast_rejects_out_of_scope_inputs() {
        let g = Multigraph::new(5).unwrap();
        assert!(matches!(decide_fast(&g, 5), Err(Error::Precondition(_))));
        let t = Multigraph::triangle(1, 1, 1);
        assert!(matches!(decide_fast(&t, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn exception_conditions_examples() {
        assert_eq!(exception_conditions_4v(&Multigraph::w1(), 5).unwrap(), (true, true));
        assert_eq!(exception_conditions_4v(&Multigraph::w2(), 5).unwrap(), (true, true));
        assert_eq!(exception_conditions_4v(&doubled_k4(), 5).unwrap(), (true, false));

        // Unbalanced cuts: two heavy disjoint pairs.
        let g = Multigraph::from_edges(
            4,
            &[(0, 1, 4), (2, 3, 4), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)],
        )
        .unwrap();
        let (cuts, _) = exception_conditions_4v(&g, 5).unwrap();
        assert!(!cuts);

        assert!(exception_conditions_4v(&Multigraph::triangle(1, 1, 1), 5).is_err());
    }

    #[test]
    fn failing_boundaries_examples() {
        let failing = failing_boundaries(&Multigraph::w1(), 5).unwrap();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].values(), &[5, 5, 5, 5]);

        assert!(failing_boundaries(&doubled_k4(), 5).unwrap().is_empty());

        let failing = failing_boundaries(&Multigraph::a_k2(3), 5).unwrap();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].values(), &[5, 5]);
    }
}
