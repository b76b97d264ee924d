//! Exhaustive generation of small multigraph families and the harness that
//! compares the fast characterization against the brute-force decision on
//! every family member.

use crate::cache::{to_hex, CacheEntry};
use crate::decide::{decide_brute, decide_fast};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// A family of multigraphs: vertex count, edge-count range, multiplicity
/// cap, minimum-degree floor, and whether to collapse isomorphic copies.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilySpec {
    pub n: usize,
    pub e_min: u64,
    pub e_max: u64,
    pub mu_max: u32,
    pub delta_min: u64,
    pub up_to_iso: bool,
}

impl FamilySpec {
    pub fn render(&self) -> String {
        format!(
            "n={} e={}..{} mu<={} delta>={} iso={}",
            self.n, self.e_min, self.e_max, self.mu_max, self.delta_min, self.up_to_iso
        )
    }
}

/// Generation guard: number of multiplicity tables visited, roughly
/// C(e_max + pairs, pairs).
const ENUMERATION_BUDGET: u128 = 5_000_000;

fn enumeration_cost(spec: &FamilySpec) -> u128 {
    let slots = (spec.n * (spec.n - 1) / 2) as u128;
    let mut acc: u128 = 1;
    for i in 1..=slots {
        acc = acc.saturating_mul(u128::from(spec.e_max) + i) / i;
    }
    acc
}

/// Yields every multiplicity table satisfying the family constraints,
/// sorted by canonical code (table order breaks ties); with `up_to_iso`,
/// one representative per isomorphism class.
pub fn enumerate_graphs(spec: &FamilySpec) -> Result<Vec<Multigraph>> {
    if spec.n < 1 || spec.n > 4 {
        return Err(Error::Precondition(format!(
            "family enumeration covers 1..=4 vertices, spec asks for {}",
            spec.n
        )));
    }
    if spec.e_min > spec.e_max {
        return Err(Error::Precondition("empty edge range".into()));
    }
    if enumeration_cost(spec) > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "family enumeration would visit about {} tables, limit is {ENUMERATION_BUDGET}",
            enumeration_cost(spec)
        )));
    }
    let slots = spec.n * (spec.n - 1) / 2;
    let mut keyed: Vec<(Vec<u8>, Multigraph)> = Vec::new();
    let mut table = vec![0u32; slots];
    fill_tables(spec, &mut table, 0, 0, &mut |table| {
        let mut g = Multigraph::new(spec.n).expect("guarded vertex count");
        let mut idx = 0;
        for u in 0..spec.n {
            for v in (u + 1)..spec.n {
                g.set_mult(u, v, table[idx]);
                idx += 1;
            }
        }
        if g.min_degree() >= spec.delta_min {
            let code = g.canonical_code().expect("n <= 4");
            keyed.push((code, g));
        }
    });
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp_table(&b.1)));
    if spec.up_to_iso {
        keyed.dedup_by(|a, b| a.0 == b.0);
    }
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

fn fill_tables(
    spec: &FamilySpec,
    table: &mut Vec<u32>,
    at: usize,
    sum: u64,
    emit: &mut impl FnMut(&[u32]),
) {
    if at == table.len() {
        if sum >= spec.e_min {
            emit(table);
        }
        return;
    }
    let remaining_max = u64::from(spec.mu_max) * (table.len() - at) as u64;
    if sum + remaining_max < spec.e_min {
        return;
    }
    for m in 0..=spec.mu_max {
        let next = sum + u64::from(m);
        if next > spec.e_max {
            break;
        }
        table[at] = m;
        fill_tables(spec, table, at + 1, next, emit);
    }
    table[at] = 0;
}

/// A graph where the fast characterization and the brute sweep disagree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub code: Vec<u8>,
    pub fast_member: bool,
    pub brute_member: bool,
}

/// Outcome of running both deciders over a family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub ell: u32,
    pub family: FamilySpec,
    pub graphs_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub non_members: Vec<Vec<u8>>,
    /// Per-graph verdicts in family order, ready for the cache.
    pub entries: Vec<CacheEntry>,
}

impl VerificationReport {
    /// Deterministic text rendering; identical runs produce identical bytes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("verify ell {}\n", self.ell));
        out.push_str(&format!("family {}\n", self.family.render()));
        out.push_str(&format!("graphs-checked {}\n", self.graphs_checked));
        out.push_str(&format!("mismatches {}\n", self.mismatches.len()));
        for m in &self.mismatches {
            out.push_str(&format!(
                "mismatch {} fast={} brute={}\n",
                to_hex(&m.code),
                if m.fast_member { "member" } else { "nonmember" },
                if m.brute_member { "member" } else { "nonmember" },
            ));
        }
        out.push_str(&format!("non-members {}\n", self.non_members.len()));
        for code in &self.non_members {
            out.push_str(&format!("non-member {}\n", to_hex(code)));
        }
        out
    }
}

/// Runs the fast and brute deciders over every graph in the family and
/// collects disagreements and brute-certified non-members.
pub fn verify_characterization(ell: u32, spec: &FamilySpec) -> Result<VerificationReport> {
    let graphs = enumerate_graphs(spec)?;
    let mut mismatches = Vec::new();
    let mut non_members = Vec::new();
    let mut entries = Vec::new();
    for g in &graphs {
        let code = g.canonical_code().expect("n <= 4");
        let fast = decide_fast(g, ell)?;
        let brute = decide_brute(g, ell)?;
        if fast.member != brute.member {
            mismatches.push(Mismatch {
                code: code.clone(),
                fast_member: fast.member,
                brute_member: brute.member,
            });
        }
        if !brute.member {
            non_members.push(code.clone());
        }
        entries.push(CacheEntry {
            code,
            ell,
            member: brute.member,
            trace: fast.trace.as_str().to_string(),
        });
    }
    Ok(VerificationReport {
        ell,
        family: spec.clone(),
        graphs_checked: graphs.len(),
        mismatches,
        non_members,
        entries,
    })
}

impl Multigraph {
    /// Total order on same-size multiplicity tables, used only to break
    /// canonical-code ties deterministically.
    pub(crate) fn cmp_table(&self, other: &Multigraph) -> std::cmp::Ordering {
        debug_assert_eq!(self.n(), other.n());
        let mine: Vec<u32> = self.pairs().map(|(_, _, m)| m).collect();
        let theirs: Vec<u32> = other.pairs().map(|(_, _, m)| m).collect();
        mine.cmp(&theirs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_single_triple_edge() {
        let spec = FamilySpec {
            n: 2,
            e_min: 3,
            e_max: 3,
            mu_max: 3,
            delta_min: 0,
            up_to_iso: true,
        };
        let graphs = enumerate_graphs(&spec).unwrap();
        assert_eq!(graphs.len(), 1);
        assert_eq!(graphs[0], Multigraph::a_k2(3));
    }

    #[test]
    fn enumerate_three_vertex_partitions_of_four() {
        // Multiplicity multisets {4,0,0}, {3,1,0}, {2,2,0}, {2,1,1}.
        let spec = FamilySpec {
            n: 3,
            e_min: 4,
            e_max: 4,
            mu_max: 4,
            delta_min: 0,
            up_to_iso: true,
        };
        let graphs = enumerate_graphs(&spec).unwrap();
        assert_eq!(graphs.len(), 4);
        for g in &graphs {
            assert_eq!(g.edge_count(), 4);
        }
    }

    #[test]
    fn enumerate_contains_the_exceptional_graphs() {
        let spec = FamilySpec {
            n: 4,
            e_min: 12,
            e_max: 12,
            mu_max: 3,
            delta_min: 4,
            up_to_iso: true,
        };
        let graphs = enumerate_graphs(&spec).unwrap();
        let codes: Vec<Vec<u8>> = graphs
            .iter()
            .map(|g| g.canonical_code().unwrap())
            .collect();
        assert!(codes.contains(&Multigraph::w1().canonical_code().unwrap()));
        assert!(codes.contains(&Multigraph::w2().canonical_code().unwrap()));
        // Sorted by code, no duplicates.
        let mut sorted = codes.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, codes);
    }

    #[test]
    fn enumeration_soundness_and_iso_collapse() {
        let spec = FamilySpec {
            n: 3,
            e_min: 2,
            e_max: 5,
            mu_max: 3,
            delta_min: 1,
            up_to_iso: false,
        };
        let labeled = enumerate_graphs(&spec).unwrap();
        for g in &labeled {
            assert!(g.edge_count() >= 2 && g.edge_count() <= 5);
            assert!(g.max_multiplicity() <= 3);
            assert!(g.min_degree() >= 1);
        }
        // Complete at tiny scale: check against a by-hand triple loop.
        let mut expected = 0;
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for c in 0..=3u32 {
                    let g = Multigraph::triangle(a, b, c);
                    if (2..=5).contains(&g.edge_count()) && g.min_degree() >= 1 {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(labeled.len(), expected);

        // Collapsing the labeled stream by code equals the iso stream.
        let mut collapsed: Vec<Vec<u8>> = labeled
            .iter()
            .map(|g| g.canonical_code().unwrap())
            .collect();
        collapsed.dedup();
        let iso_spec = FamilySpec {
            up_to_iso: true,
            ..spec
        };
        let iso: Vec<Vec<u8>> = enumerate_graphs(&iso_spec)
            .unwrap()
            .iter()
            .map(|g| g.canonical_code().unwrap())
            .collect();
        assert_eq!(collapsed, iso);
    }

    #[test]
    fn enumerate_guards() {
        let mut spec = FamilySpec {
            n: 5,
            e_min: 0,
            e_max: 1,
            mu_max: 1,
            delta_min: 0,
            up_to_iso: false,
        };
        assert!(enumerate_graphs(&spec).is_err());
        spec.n = 4;
        spec.e_max = 10_000;
        spec.mu_max = 10_000;
        assert!(matches!(
            enumerate_graphs(&spec),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn verify_two_vertex_threshold() {
        let spec = FamilySpec {
            n: 2,
            e_min: 0,
            e_max: 6,
            mu_max: 6,
            delta_min: 0,
            up_to_iso: true,
        };
        let report = verify_characterization(3, &spec).unwrap();
        assert_eq!(report.graphs_checked, 7);
        assert!(report.mismatches.is_empty());
        let expected: Vec<Vec<u8>> = [0u32, 1]
            .iter()
            .map(|&a| Multigraph::a_k2(a).canonical_code().unwrap())
            .collect();
        assert_eq!(report.non_members, expected);
        assert_eq!(report.entries.len(), 7);
    }

    #[test]
    fn report_render_is_stable() {
        let spec = FamilySpec {
            n: 2,
            e_min: 0,
            e_max: 4,
            mu_max: 4,
            delta_min: 0,
            up_to_iso: true,
        };
        let a = verify_characterization(3, &spec).unwrap().render();
        let b = verify_characterization(3, &spec).unwrap().render();
        assert_eq!(a, b);
        assert!(a.starts_with("verify ell 3\nfamily n=2 e=0..4 mu<=4 delta>=0 iso=true\n"));
    }
}
