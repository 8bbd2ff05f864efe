//! Exhaustive discovery of formally dual pairs in small groups, with
//! translation normalization, plus invariant-based and brute-force
//! equivalence classification.
//!
//! Normalization fixes 0 into both subsets (sound by translation
//! invariance); automorphic duplicates are collapsed afterwards by
//! classification rather than during the search. The enumerated side is
//! pruned through the forced-weight function: the duality identity pins
//! nu_partner(y) = |chi_y(X)|^2 |partner| / |X|^2 pointwise, so the other
//! side is recovered by backtracking against those exact targets, largest
//! forced values first.

use crate::characters::character_spectrum;
use crate::duality::{partner_feasibility, verify_formally_dual, verify_primitive, Direction};
use crate::error::{Error, Result};
use crate::group::{automorphisms, Automorphism, ElementSet, FiniteAbelianGroup, GroupElement};
use crate::par;
use crate::ring::{difference_spectrum, GroupRingElement, SpectrumMultiset};
use std::collections::BTreeMap;

pub const DEFAULT_SEARCH_BOUND: u64 = 32;
pub const DEFAULT_FEASIBILITY_BOUND: u64 = 64;

/// A full-pair search task over one group.
#[derive(Clone, Debug)]
pub struct SearchTask {
    pub group: FiniteAbelianGroup,
    pub size_s: u64,
    pub size_t: u64,
    pub require_primitive: bool,
    /// Order bound guarding the exhaustive enumeration.
    pub max_order: u64,
}

impl SearchTask {
    pub fn new(group: FiniteAbelianGroup, size_s: u64, size_t: u64) -> Self {
        Self {
            group,
            size_s,
            size_t,
            require_primitive: false,
            max_order: DEFAULT_SEARCH_BOUND,
        }
    }

    pub fn primitive_only(mut self) -> Self {
        self.require_primitive = true;
        self
    }
}

/// Iterator over k-subsets of {1..n-1} joined with {0}, as sorted ranks.
struct NormalizedSubsets {
    n: u64,
    k: usize,
    current: Option<Vec<u64>>,
}

impl NormalizedSubsets {
    fn new(n: u64, k: u64) -> Self {
        let k = k as usize;
        let current = if k >= 1 && (k as u64) <= n {
            // {0} plus the k-1 smallest positive ranks
            Some((0..k as u64).collect())
        } else {
            None
        };
        Self { n, k, current }
    }
}

impl Iterator for NormalizedSubsets {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let cur = self.current.clone()?;
        // advance positions 1..k lexicographically, position 0 pinned at 0
        let mut next = cur.clone();
        let k = self.k;
        let mut i = k;
        loop {
            if i == 1 {
                self.current = None;
                break;
            }
            i -= 1;
            let max_here = self.n - (k - i) as u64;
            if next[i] < max_here {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

/// Backtracking T-side completion: find every sorted subset containing 0
/// of the given size whose difference function equals `forced` pointwise.
fn complete_partners(
    group: &FiniteAbelianGroup,
    forced: &[i64],
    size: u64,
) -> Vec<Vec<u64>> {
    let n = group.order();
    if forced[0] != size as i64 {
        return Vec::new();
    }
    if (forced.iter().map(|&v| v as i128).sum::<i128>()) != (size as i128) * (size as i128) {
        return Vec::new();
    }
    // candidate elements: nonzero ranks with a positive forced weight,
    // largest forced value first (hardest constraints first)
    let mut candidates: Vec<u64> = (1..n).filter(|&r| forced[r as usize] > 0).collect();
    candidates.sort_by_key(|&r| (std::cmp::Reverse(forced[r as usize]), r));

    // difference table d[i][j] = rank(candidate_or_zero_i - candidate_or_zero_j)
    let mut members: Vec<u64> = vec![0];
    let mut remaining = forced.to_vec();
    remaining[0] -= 1; // the self-pair of 0
    let mut out = Vec::new();

    fn step(
        group: &FiniteAbelianGroup,
        candidates: &[u64],
        from: usize,
        members: &mut Vec<u64>,
        remaining: &mut Vec<i64>,
        size: u64,
        out: &mut Vec<Vec<u64>>,
    ) {
        if members.len() as u64 == size {
            if remaining.iter().all(|&v| v == 0) {
                let mut t = members.clone();
                t.sort_unstable();
                out.push(t);
            }
            return;
        }
        let slots_left = size as usize - members.len();
        if candidates.len() - from < slots_left {
            return;
        }
        for idx in from..candidates.len() {
            let cand = candidates[idx];
            let ge = group.unrank(cand);
            // apply: self pair plus both cross differences with each member
            let mut touched: Vec<usize> = Vec::with_capacity(2 * members.len() + 1);
            let mut ok = true;
            let push = |r: usize, remaining: &mut Vec<i64>, touched: &mut Vec<usize>| {
                remaining[r] -= 1;
                touched.push(r);
                remaining[r] >= 0
            };
            if !push(0, remaining, &mut touched) {
                ok = false;
            }
            if ok {
                'mem: for &m in members.iter() {
                    let gm = group.unrank(m);
                    let d1 = group.rank_unchecked(&group.sub(&ge, &gm).expect("member")) as usize;
                    let d2 = group.rank_unchecked(&group.sub(&gm, &ge).expect("member")) as usize;
                    if !push(d1, remaining, &mut touched) {
                        ok = false;
                        break 'mem;
                    }
                    if !push(d2, remaining, &mut touched) {
                        ok = false;
                        break 'mem;
                    }
                }
            }
            if ok {
                members.push(cand);
                step(group, candidates, idx + 1, members, remaining, size, out);
                members.pop();
            }
            for r in touched {
                remaining[r] += 1;
            }
        }
    }
    step(
        group,
        &candidates,
        0,
        &mut members,
        &mut remaining,
        size,
        &mut out,
    );
    out
}

/// All normalized (S, T) pairs passing full verification (and primitivity
/// when flagged), sorted by ranks for determinism. The smaller side is
/// enumerated; candidates whose forced weight function is non-integral are
/// discarded before any partner search.
pub fn exhaustive_pairs(task: &SearchTask) -> Result<Vec<(ElementSet, ElementSet)>> {
    let group = &task.group;
    let n = group.order();
    if n > task.max_order {
        return Err(Error::SizeLimit {
            order: n,
            bound: task.max_order,
        });
    }
    if task.size_s * task.size_t != n || task.size_s == 0 {
        return Err(Error::SizeProductMismatch {
            size_s: task.size_s,
            size_t: task.size_t,
            order: n,
        });
    }
    // enumerate the smaller side, swap back on emit
    let swapped = task.size_s > task.size_t;
    let (enum_size, other_size) = if swapped {
        (task.size_t, task.size_s)
    } else {
        (task.size_s, task.size_t)
    };

    let mut results: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
    let mut batch: Vec<Vec<u64>> = Vec::new();
    let mut gen = NormalizedSubsets::new(n, enum_size);
    loop {
        batch.clear();
        batch.extend(gen.by_ref().take(8192));
        if batch.is_empty() {
            break;
        }
        let found = par::flat_map_collect(&batch, |ranks| {
            let x = ElementSet::from_ranks(group.clone(), ranks.clone()).expect("valid ranks");
            let feas = partner_feasibility(&x).expect("same group");
            let Some(forced) = feas.forced_weights else {
                return Vec::new();
            };
            complete_partners(group, &forced, other_size)
                .into_iter()
                .map(|t| (ranks.clone(), t))
                .collect()
        });
        results.extend(found);
    }

    let mut out = Vec::new();
    for (a, b) in results {
        let (s_ranks, t_ranks) = if swapped { (b, a) } else { (a, b) };
        let s = ElementSet::from_ranks(group.clone(), s_ranks)?;
        let t = ElementSet::from_ranks(group.clone(), t_ranks)?;
        let rep = verify_formally_dual(&s, &t, Direction::Both)?;
        debug_assert!(rep.ok, "forced-weight match must verify: {rep}");
        if !rep.ok {
            continue;
        }
        if task.require_primitive
            && !(verify_primitive(&s)?.is_primitive() && verify_primitive(&t)?.is_primitive())
        {
            continue;
        }
        out.push((s, t));
    }
    out.sort_by(|(s1, t1), (s2, t2)| {
        (s1.ranks(), t1.ranks()).cmp(&(s2.ranks(), t2.ranks()))
    });
    Ok(out)
}

/// One-sided feasibility scan, allowed up to a larger order bound than the
/// full pair search: enumerates normalized subsets of the given size and
/// keeps those whose forced partner-weight function is fully integral.
/// Infeasible candidates provably admit no dual partner of any shape.
pub fn feasible_sides(
    group: &FiniteAbelianGroup,
    size: u64,
    max_order: u64,
) -> Result<Vec<ElementSet>> {
    let n = group.order();
    if n > max_order {
        return Err(Error::SizeLimit {
            order: n,
            bound: max_order,
        });
    }
    if size == 0 || !n.is_multiple_of(size) {
        return Err(Error::SizeProductMismatch {
            size_s: size,
            size_t: n.checked_div(size).unwrap_or(0),
            order: n,
        });
    }
    let mut feasible = Vec::new();
    let mut gen = NormalizedSubsets::new(n, size);
    let mut batch: Vec<Vec<u64>> = Vec::new();
    loop {
        batch.clear();
        batch.extend(gen.by_ref().take(8192));
        if batch.is_empty() {
            break;
        }
        feasible.extend(par::flat_map_collect(&batch, |ranks| {
            let x = ElementSet::from_ranks(group.clone(), ranks.clone()).expect("valid ranks");
            match partner_feasibility(&x) {
                Ok(report) if report.feasible => vec![x],
                _ => Vec::new(),
            }
        }));
    }
    feasible.sort_by(|a, b| a.ranks().cmp(b.ranks()));
    Ok(feasible)
}

/// The invariant key of a pair: sorted difference and character spectra of
/// both sides. Equivalent pairs share keys; distinct keys prove
/// inequivalence (the converse is left open).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct InvariantKey {
    pub diff_s: SpectrumMultiset,
    pub diff_t: SpectrumMultiset,
    pub char_s: SpectrumMultiset,
    pub char_t: SpectrumMultiset,
}

impl InvariantKey {
    pub fn compute(s: &ElementSet, t: &ElementSet) -> Result<Self> {
        Ok(Self {
            diff_s: difference_spectrum(s),
            diff_t: difference_spectrum(t),
            char_s: character_spectrum(&GroupRingElement::from_set(s))?,
            char_t: character_spectrum(&GroupRingElement::from_set(t))?,
        })
    }
}

/// A bucket of pairs sharing every invariant.
#[derive(Clone, Debug)]
pub struct EquivalenceBucket {
    pub key: InvariantKey,
    /// Indices into the input pair list.
    pub members: Vec<usize>,
}

/// Partitions pairs by invariant key; buckets with distinct keys are
/// provably inequivalent.
pub fn classify_by_invariants(
    pairs: &[(ElementSet, ElementSet)],
) -> Result<Vec<EquivalenceBucket>> {
    let mut buckets: BTreeMap<InvariantKey, Vec<usize>> = BTreeMap::new();
    for (i, (s, t)) in pairs.iter().enumerate() {
        buckets
            .entry(InvariantKey::compute(s, t)?)
            .or_default()
            .push(i);
    }
    Ok(buckets
        .into_iter()
        .map(|(key, members)| EquivalenceBucket { key, members })
        .collect())
}

/// Searches for an explicit equivalence witness S' = g + phi(S) over the
/// enumerated automorphism group; None when the sets are inequivalent
/// (within the enumeration bound).
pub fn equivalence_bruteforce(
    s: &ElementSet,
    s_prime: &ElementSet,
    bound: u64,
) -> Result<Option<(GroupElement, Automorphism)>> {
    if s.group() != s_prime.group() {
        return Err(Error::GroupMismatch(
            "equivalence requires one common group".into(),
        ));
    }
    if s.len() != s_prime.len() {
        return Ok(None);
    }
    if s.is_empty() {
        return Ok(None);
    }
    let group = s.group();
    for phi in automorphisms(group, bound)? {
        let image = phi.apply_set(s)?;
        let base = group.unrank(image.ranks()[0]);
        // g must map some image element onto each target element
        for target in s_prime.elements() {
            let g = group.sub(&target, &base)?;
            if image.translate(&g)? == *s_prime {
                return Ok(Some((g, phi)));
            }
        }
    }
    Ok(None)
}
