//! Boundary specifications modulo 2l, their enumeration, integer lifts
//! (gamma functions and candidate vectors for the feasibility check), and
//! the residue-interval sets used by the three-vertex solver.

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Upper bound on the modulus parameter l. Everything here works with
/// concrete small moduli; 2l residues must fit a u128 bitmask.
pub const ELL_MAX: u32 = 64;

pub(crate) fn check_ell(ell: u32) -> Result<()> {
    if ell < 2 || ell > ELL_MAX {
        return Err(Error::EllOutOfRange(ell));
    }
    Ok(())
}

/// Per-vertex residues modulo 2l. A boundary is *valid* for a graph when
/// every value matches its vertex degree in parity and the total vanishes
/// modulo 2l; validity is checked against a graph, not at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundarySpec {
    ell: u32,
    values: Vec<u32>,
}

impl BoundarySpec {
    pub fn new(ell: u32, values: Vec<u32>) -> Result<Self> {
        check_ell(ell)?;
        let modulus = 2 * ell;
        for &v in &values {
            if v >= modulus {
                return Err(Error::ResidueOutOfRange { value: v, modulus });
            }
        }
        Ok(BoundarySpec { ell, values })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn modulus(&self) -> u32 {
        2 * self.ell
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A violated boundary condition, naming the offending vertex where one exists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundaryViolation {
    Parity { vertex: usize, degree: u64, value: u32 },
    Sum { total: u64, modulus: u32 },
}

impl std::fmt::Display for BoundaryViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryViolation::Parity { vertex, degree, value } => write!(
                f,
                "vertex {vertex}: value {value} does not match degree {degree} in parity"
            ),
            BoundaryViolation::Sum { total, modulus } => {
                write!(f, "values sum to {total}, not 0 modulo {modulus}")
            }
        }
    }
}

/// Checks the two boundary conditions; an empty report means the boundary is
/// valid for `g`.
pub fn validate_boundary(g: &Multigraph, b: &BoundarySpec) -> Result<Vec<BoundaryViolation>> {
    if b.len() != g.n() {
        return Err(Error::BoundaryArity {
            len: b.len(),
            n: g.n(),
        });
    }
    let mut violations = Vec::new();
    for v in g.vertices() {
        let degree = g.degree(v);
        let value = b.values[v];
        if u64::from(value) % 2 != degree % 2 {
            violations.push(BoundaryViolation::Parity { vertex: v, degree, value });
        }
    }
    let total: u64 = b.values.iter().map(|&v| u64::from(v)).sum();
    if total % u64::from(b.modulus()) != 0 {
        violations.push(BoundaryViolation::Sum {
            total,
            modulus: b.modulus(),
        });
    }
    Ok(violations)
}

pub fn is_valid_boundary(g: &Multigraph, b: &BoundarySpec) -> bool {
    matches!(validate_boundary(g, b), Ok(v) if v.is_empty())
}

/// Streams every valid boundary of `g` exactly once, in lexicographic order
/// of the value vectors. The first n-1 residues range over the parity-correct
/// values; the last residue is forced by the zero-sum condition (the
/// handshake identity makes its parity come out right automatically).
pub fn enumerate_boundaries(g: &Multigraph, ell: u32) -> Result<BoundaryIter> {
    check_ell(ell)?;
    let modulus = 2 * ell;
    let choices: Vec<Vec<u32>> = g
        .vertices()
        .take(g.n() - 1)
        .map(|v| {
            let parity = (g.degree(v) % 2) as u32;
            (0..ell).map(|k| parity + 2 * k).collect()
        })
        .collect();
    Ok(BoundaryIter {
        ell,
        modulus,
        last_parity: (g.degree(g.n() - 1) % 2) as u32,
        choices,
        cursor: Some(vec![0; g.n() - 1]),
    })
}

pub struct BoundaryIter {
    ell: u32,
    modulus: u32,
    last_parity: u32,
    choices: Vec<Vec<u32>>,
    cursor: Option<Vec<usize>>,
}

impl Iterator for BoundaryIter {
    type Item = BoundarySpec;

    fn next(&mut self) -> Option<Self::Item> {
        let cursor = self.cursor.as_mut()?;
        let mut values: Vec<u32> = cursor
            .iter()
            .zip(&self.choices)
            .map(|(&i, options)| options[i])
            .collect();
        let partial: u64 = values.iter().map(|&v| u64::from(v)).sum();
        let last = ((u64::from(self.modulus) - partial % u64::from(self.modulus))
            % u64::from(self.modulus)) as u32;
        debug_assert_eq!(last % 2, self.last_parity);
        values.push(last);

        // Advance the odometer; None marks exhaustion.
        let mut done = true;
        for i in (0..cursor.len()).rev() {
            if cursor[i] + 1 < self.choices[i].len() {
                cursor[i] += 1;
                cursor[i + 1..].iter_mut().for_each(|c| *c = 0);
                done = false;
                break;
            }
        }
        if done {
            self.cursor = None;
        }
        Some(BoundarySpec {
            ell: self.ell,
            values,
        })
    }
}

/// An integer lift of a boundary with zero total, matching parities, and
/// spread at most 2l.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaFunction {
    values: Vec<i64>,
}

impl GammaFunction {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn spread(&self) -> i64 {
        let max = self.values.iter().max().copied().unwrap_or(0);
        let min = self.values.iter().min().copied().unwrap_or(0);
        max - min
    }
}

/// Builds an integer lift of `b` satisfying all three gamma conditions:
/// subtract 2l from the t largest values (t = sum / 2l, ties resolved toward
/// the lower vertex index), falling back to an exhaustive subset search if
/// the greedy pick misses the spread bound. Existence is guaranteed, so a
/// fully failed search panics.
pub fn corresponding_gamma(g: &Multigraph, b: &BoundarySpec) -> Result<GammaFunction> {
    let violations = validate_boundary(g, b)?;
    if !violations.is_empty() {
        return Err(Error::Precondition(format!(
            "corresponding_gamma needs a valid boundary: {}",
            violations[0]
        )));
    }
    let modulus = i64::from(b.modulus());
    let total: i64 = b.values.iter().map(|&v| i64::from(v)).sum();
    let t = (total / modulus) as usize;

    let mut order: Vec<usize> = (0..b.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(b.values[v]), v));
    let greedy: Vec<usize> = order[..t].to_vec();
    if let Some(gamma) = gamma_from_subtraction(b, &greedy, modulus) {
        return Ok(gamma);
    }

    // The greedy choice provably satisfies the spread bound, but keep the
    // exhaustive route as the documented safety net.
    let n = b.len();
    let mut found = None;
    let mut visit = |subset: &[usize]| {
        if found.is_none() {
            found = gamma_from_subtraction(b, subset, modulus);
        }
    };
    for_each_subset_of_size(n, t, &mut visit);
    Ok(found.expect("a valid gamma lift always exists for a valid boundary"))
}

fn gamma_from_subtraction(
    b: &BoundarySpec,
    subtract: &[usize],
    modulus: i64,
) -> Option<GammaFunction> {
    let mut values: Vec<i64> = b.values.iter().map(|&v| i64::from(v)).collect();
    for &v in subtract {
        values[v] -= modulus;
    }
    let in_range = values.iter().all(|&x| x.abs() <= modulus - 1);
    let gamma = GammaFunction { values };
    if in_range && gamma.spread() <= modulus {
        Some(gamma)
    } else {
        None
    }
}

fn for_each_subset_of_size(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for v in start..n {
            if n - v < k - acc.len() {
                break;
            }
            acc.push(v);
            rec(n, k, v + 1, acc, f);
            acc.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), f);
}

/// Streams every integer vector congruent to `b` modulo 2l with each entry
/// bounded by its vertex degree and zero total. Any orientation realizing `b`
/// has its imbalance vector in this stream, so the stream is a complete
/// search space for the feasibility check. Output is lexicographic.
pub fn gamma_candidates(g: &Multigraph, b: &BoundarySpec) -> Result<GammaCandidates> {
    if b.len() != g.n() {
        return Err(Error::BoundaryArity {
            len: b.len(),
            n: g.n(),
        });
    }
    let modulus = i64::from(b.modulus());
    let lifts: Vec<Vec<i64>> = g
        .vertices()
        .map(|v| {
            let d = g.degree(v) as i64;
            let value = i64::from(b.values[v]);
            let mut options = Vec::new();
            let mut x = value - modulus * ((value + d).div_euclid(modulus));
            while x <= d {
                if x >= -d {
                    options.push(x);
                }
                x += modulus;
            }
            options
        })
        .collect();
    let empty = lifts.iter().any(|l| l.is_empty());
    Ok(GammaCandidates {
        cursor: if empty { None } else { Some(vec![0; lifts.len()]) },
        lifts,
    })
}

pub struct GammaCandidates {
    lifts: Vec<Vec<i64>>,
    cursor: Option<Vec<usize>>,
}

impl GammaCandidates {
    fn advance(&mut self) {
        let cursor = match self.cursor.as_mut() {
            Some(c) => c,
            None => return,
        };
        for i in (0..cursor.len()).rev() {
            if cursor[i] + 1 < self.lifts[i].len() {
                cursor[i] += 1;
                cursor[i + 1..].iter_mut().for_each(|c| *c = 0);
                return;
            }
        }
        self.cursor = None;
    }
}

impl Iterator for GammaCandidates {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let cursor = self.cursor.as_ref()?;
            let candidate: Vec<i64> = cursor
                .iter()
                .zip(&self.lifts)
                .map(|(&i, options)| options[i])
                .collect();
            self.advance();
            if candidate.iter().sum::<i64>() == 0 {
                return Some(candidate);
            }
        }
    }
}

/// A subset of the residues modulo an even modulus 2l, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueSet {
    modulus: u32,
    bits: u128,
}

impl ResidueSet {
    pub fn empty(modulus: u32) -> Result<Self> {
        if modulus % 2 != 0 {
            return Err(Error::EllOutOfRange(modulus / 2));
        }
        check_ell(modulus / 2)?;
        Ok(ResidueSet { modulus, bits: 0 })
    }

    pub fn from_members(modulus: u32, members: &[u32]) -> Result<Self> {
        let mut set = ResidueSet::empty(modulus)?;
        for &r in members {
            if r >= modulus {
                return Err(Error::ResidueOutOfRange { value: r, modulus });
            }
            set.bits |= 1 << r;
        }
        Ok(set)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn members(&self) -> Vec<u32> {
        (0..self.modulus).filter(|&r| self.contains(r)).collect()
    }

    pub fn contains(&self, r: u32) -> bool {
        r < self.modulus && (self.bits >> r) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn min_member(&self) -> Option<u32> {
        if self.is_empty() {
            None
        } else {
            Some(self.bits.trailing_zeros())
        }
    }

    /// Elementwise shift: every member moves to (member + c) mod 2l.
    pub fn shift(&self, c: i64) -> ResidueSet {
        let m = self.modulus;
        let c = c.rem_euclid(i64::from(m)) as u32;
        if c == 0 {
            return self.clone();
        }
        let mask = if m == 128 {
            u128::MAX
        } else {
            (1u128 << m) - 1
        };
        let bits = ((self.bits << c) | (self.bits >> (m - c))) & mask;
        ResidueSet { modulus: m, bits }
    }

    pub fn intersect(&self, other: &ResidueSet) -> Result<ResidueSet> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                a: self.modulus,
                b: other.modulus,
            });
        }
        Ok(ResidueSet {
            modulus: self.modulus,
            bits: self.bits & other.bits,
        })
    }

    pub fn union(&self, other: &ResidueSet) -> Result<ResidueSet> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                a: self.modulus,
                b: other.modulus,
            });
        }
        Ok(ResidueSet {
            modulus: self.modulus,
            bits: self.bits | other.bits,
        })
    }
}

/// Intersection of one or more residue sets over a common modulus.
pub fn intersect(sets: &[ResidueSet]) -> Result<ResidueSet> {
    let first = sets
        .first()
        .ok_or_else(|| Error::Precondition("intersect needs at least one set".into()))?;
    let mut acc = first.clone();
    for set in &sets[1..] {
        acc = acc.intersect(set)?;
    }
    Ok(acc)
}

/// The residues modulo 2l reachable as the net flow over a multiplicity-mu
/// pair: { t mod 2l : -mu <= t <= mu, t = mu (mod 2) }.
pub fn residue_interval(mu: u32, ell: u32) -> Result<ResidueSet> {
    check_ell(ell)?;
    let modulus = 2 * ell;
    let mut set = ResidueSet::empty(modulus)?;
    let mu = i64::from(mu);
    if mu >= i64::from(modulus) {
        // Saturated: every residue of mu's parity appears.
        for r in 0..modulus {
            if i64::from(r) % 2 == mu % 2 {
                set.bits |= 1 << r;
            }
        }
        return Ok(set);
    }
    let mut t = -mu;
    while t <= mu {
        set.bits |= 1 << (t.rem_euclid(i64::from(modulus)) as u32);
        t += 2;
    }
    Ok(set)
}
