//! Explicit families and combinators over Z_2 x Z_4^{2m}: the base sets J
//! and L, the weight blocks B_{m,i} and E_{m,i}, the lifting and product
//! combinators, the recursive combinator, the two direct families and the
//! mixed family, plus their closed-form spectra and theta values.
//!
//! The lifting combinator embeds a partitioned pair (S0 u S1, T) of G into
//! Z_2 x G with T-slices T and T^{(-1)}; the recursive combinator glues two
//! such lifted pairs over G1 and G2 into one over Z_2 x G1 x G2, legal when
//! one side has all squared character sums real.

use crate::arith::binomial;
use crate::duality::chi_square_real;
use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteAbelianGroup};
use crate::ring::SpectrumMultiset;
use std::fmt;

/// The named literal base sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseSet {
    /// {0,1} in Z4.
    J,
    /// {(0,0),(0,1),(1,0),(3,3)} in Z4^2.
    L,
    /// {(0,0),(0,1),(1,0)}.
    L1,
    /// {(3,3)}.
    L2,
    /// {(0,0),(0,2),(2,0),(2,2)}.
    Y,
    /// {(0,2),(2,0),(2,2)}.
    Z,
    /// {(0,1),(0,3),(1,0),(3,0),(1,1),(3,3)}.
    I,
}

/// The literal set in its home group (Z4 for J, Z4^2 otherwise).
pub fn base_set(which: BaseSet) -> ElementSet {
    let coords: &[&[i64]] = match which {
        BaseSet::J => &[&[0], &[1]],
        BaseSet::L => &[&[0, 0], &[0, 1], &[1, 0], &[3, 3]],
        BaseSet::L1 => &[&[0, 0], &[0, 1], &[1, 0]],
        BaseSet::L2 => &[&[3, 3]],
        BaseSet::Y => &[&[0, 0], &[0, 2], &[2, 0], &[2, 2]],
        BaseSet::Z => &[&[0, 2], &[2, 0], &[2, 2]],
        BaseSet::I => &[&[0, 1], &[0, 3], &[1, 0], &[3, 0], &[1, 1], &[3, 3]],
    };
    let group = if matches!(which, BaseSet::J) {
        FiniteAbelianGroup::new(&[4]).unwrap()
    } else {
        FiniteAbelianGroup::new(&[4, 4]).unwrap()
    };
    let elems: Vec<_> = coords
        .iter()
        .map(|c| group.element(c).unwrap())
        .collect();
    ElementSet::from_elements(group, &elems).unwrap()
}

fn z4_power(n: u32) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(&vec![4u32; n as usize]).unwrap()
}

/// All 0/1 vectors in Z4^{2m} of 1-weight exactly i; |B_{m,i}| = C(2m, i).
pub fn block_b(m: u32, i: u32) -> Result<ElementSet> {
    if i > 2 * m {
        return Err(Error::InvalidParameter(format!(
            "block index {i} out of range 0..={}",
            2 * m
        )));
    }
    if m > 12 {
        return Err(Error::InvalidParameter("block_b: m too large".into()));
    }
    let n = 2 * m;
    let group = z4_power(n);
    let mut ranks = Vec::with_capacity(binomial(n as u64, i as u64) as usize);
    for mask in 0u64..1 << n {
        if mask.count_ones() != i {
            continue;
        }
        // bit j set means coordinate j equals 1
        let mut rank = 0u64;
        for j in 0..n {
            rank = rank * 4 + ((mask >> j) & 1);
        }
        ranks.push(rank);
    }
    ElementSet::from_ranks(group, ranks)
}

// Per-block ranks of the L1 and L2 pieces inside one Z4^2 block.
const L1_BLOCK_RANKS: [u64; 3] = [0, 1, 4]; // (0,0),(0,1),(1,0)
const L2_BLOCK_RANK: u64 = 15; // (3,3)
const L_BLOCK_RANKS: [u64; 4] = [0, 1, 4, 15];

/// Union over block patterns with exactly i blocks equal to L1 of the
/// products of L1/L2 blocks; |E_{m,i}| = C(m,i) * 3^i, inside Z4^{2m}.
pub fn block_e(m: u32, i: u32) -> Result<ElementSet> {
    if i > m {
        return Err(Error::InvalidParameter(format!(
            "block index {i} out of range 0..={m}"
        )));
    }
    if m > 12 {
        return Err(Error::InvalidParameter("block_e: m too large".into()));
    }
    let group = z4_power(2 * m);
    let mut ranks = Vec::new();
    for mask in 0u64..1 << m {
        if mask.count_ones() != i {
            continue;
        }
        let mut partial: Vec<u64> = vec![0];
        for j in 0..m {
            let choices: &[u64] = if (mask >> j) & 1 == 1 {
                &L1_BLOCK_RANKS
            } else {
                std::slice::from_ref(&L2_BLOCK_RANK)
            };
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for &p in &partial {
                for &c in choices {
                    next.push(p * 16 + c);
                }
            }
            partial = next;
        }
        ranks.extend(partial);
    }
    ElementSet::from_ranks(group, ranks)
}

/// Provenance of a lifted pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Lifted,
    Dircon1 { m: u32 },
    Dircon2 { m: u32 },
    Mix { m1: u32, m2: u32 },
    Combined,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Lifted => write!(f, "lifted"),
            Family::Dircon1 { m } => write!(f, "dircon1 m={m}"),
            Family::Dircon2 { m } => write!(f, "dircon2 m={m}"),
            Family::Mix { m1, m2 } => write!(f, "mix m1={m1} m2={m2}"),
            Family::Combined => write!(f, "combined"),
        }
    }
}

/// A lifted pair in Z_2 x G, carrying its base partition for recursion.
#[derive(Clone, Debug)]
pub struct LiftedPair {
    base_group: FiniteAbelianGroup,
    s0: ElementSet,
    s1: ElementSet,
    t: ElementSet,
    group: FiniteAbelianGroup,
    s_lifted: ElementSet,
    t_lifted: ElementSet,
    family: Family,
}

impl LiftedPair {
    pub fn base_group(&self) -> &FiniteAbelianGroup {
        &self.base_group
    }

    pub fn base_partition(&self) -> (&ElementSet, &ElementSet) {
        (&self.s0, &self.s1)
    }

    pub fn base_t(&self) -> &ElementSet {
        &self.t
    }

    /// The ambient group Z_2 x G.
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn s(&self) -> &ElementSet {
        &self.s_lifted
    }

    #[allow(clippy::misnamed_getters)] // lifted side, not the base T field
    pub fn t(&self) -> &ElementSet {
        &self.t_lifted
    }

    pub fn family(&self) -> &Family {
        &self.family
    }
}

/// Lifts a partitioned pair into Z_2 x G:
/// S' = {0} x S0  u  {1} x S1,  T' = {0} x T  u  {1} x T^{(-1)}.
/// Does not verify duality; that is `lifting_condition`'s job.
pub fn lift_pair(s0: &ElementSet, s1: &ElementSet, t: &ElementSet) -> Result<LiftedPair> {
    let base = t.group();
    if s0.group() != base || s1.group() != base {
        return Err(Error::GroupMismatch(
            "partition and T live over different groups".into(),
        ));
    }
    if !s0.is_disjoint(s1) {
        return Err(Error::NotAPartition);
    }
    let n = base.order();
    let z2 = FiniteAbelianGroup::new(&[2]).unwrap();
    let group = z2.direct_product(base);
    let mut s_ranks: Vec<u64> = s0.ranks().to_vec();
    s_ranks.extend(s1.ranks().iter().map(|&r| r + n));
    let mut t_ranks: Vec<u64> = t.ranks().to_vec();
    t_ranks.extend(t.involution().ranks().iter().map(|&r| r + n));
    Ok(LiftedPair {
        base_group: base.clone(),
        s0: s0.clone(),
        s1: s1.clone(),
        t: t.clone(),
        s_lifted: ElementSet::from_ranks(group.clone(), s_ranks)?,
        t_lifted: ElementSet::from_ranks(group.clone(), t_ranks)?,
        group,
        family: Family::Lifted,
    })
}

/// Coordinate-concatenated product pair (S1 x S2, T1 x T2) in G1 x G2.
/// Only the size bookkeeping is checked; callers verify duality.
pub fn product_pair(
    p1: (&ElementSet, &ElementSet),
    p2: (&ElementSet, &ElementSet),
) -> Result<(ElementSet, ElementSet)> {
    let (s1, t1) = p1;
    let (s2, t2) = p2;
    if s1.group() != t1.group() || s2.group() != t2.group() {
        return Err(Error::GroupMismatch(
            "pair components live over different groups".into(),
        ));
    }
    for (s, t) in [(s1, t1), (s2, t2)] {
        if s.len() * t.len() != s.group().order() {
            return Err(Error::SizeProductMismatch {
                size_s: s.len(),
                size_t: t.len(),
                order: s.group().order(),
            });
        }
    }
    Ok((s1.direct_product(s2), t1.direct_product(t2)))
}

struct Parts {
    s0: ElementSet,
    s1: ElementSet,
    t: ElementSet,
}

/// Core of the recursive combinator on base data. Requires the squared
/// character sums of T1 or of T2 to be all real.
fn combine_parts(p1: &Parts, p2: &Parts) -> Result<Parts> {
    if !(chi_square_real(&p1.t)? || chi_square_real(&p2.t)?) {
        return Err(Error::ConditionViolated);
    }
    let s0 = p1
        .s0
        .direct_product(&p2.s0)
        .union(&p1.s1.direct_product(&p2.s1))?;
    let s1 = p1
        .s0
        .direct_product(&p2.s1)
        .union(&p1.s1.direct_product(&p2.s0))?;
    Ok(Parts {
        s0,
        s1,
        t: p1.t.direct_product(&p2.t),
    })
}

/// Combines two lifted pairs over G1 and G2 into one over Z_2 x G1 x G2:
/// S0'' = (S10 x S20) u (S11 x S21), S1'' = (S10 x S21) u (S11 x S20),
/// with T'' slices T1 x T2 and (T1 x T2)^{(-1)}. Refused unless one side
/// passes the squared-character reality condition.
pub fn recur_combine(p1: &LiftedPair, p2: &LiftedPair) -> Result<LiftedPair> {
    let parts = combine_parts(
        &Parts {
            s0: p1.s0.clone(),
            s1: p1.s1.clone(),
            t: p1.t.clone(),
        },
        &Parts {
            s0: p2.s0.clone(),
            s1: p2.s1.clone(),
            t: p2.t.clone(),
        },
    )?;
    let mut out = lift_pair(&parts.s0, &parts.s1, &parts.t)?;
    out.family = Family::Combined;
    Ok(out)
}

/// Base data of the first family: S = T = J^{2m} in Z4^{2m}, partitioned
/// by 1-weight mod 4 (weights 0,1 into S0; weights 2,3 into S1). m = 0 is
/// the trivial degenerate allowed for mixing.
fn dircon1_parts(m: u32) -> Result<Parts> {
    if m > 12 {
        return Err(Error::InvalidParameter("dircon1: m too large".into()));
    }
    let n = 2 * m;
    let group = z4_power(n);
    let mut s0 = Vec::new();
    let mut s1 = Vec::new();
    let mut t = Vec::new();
    for mask in 0u64..1 << n {
        let mut rank = 0u64;
        for j in 0..n {
            rank = rank * 4 + ((mask >> j) & 1);
        }
        t.push(rank);
        if mask.count_ones() % 4 <= 1 {
            s0.push(rank);
        } else {
            s1.push(rank);
        }
    }
    Ok(Parts {
        s0: ElementSet::from_ranks(group.clone(), s0)?,
        s1: ElementSet::from_ranks(group.clone(), s1)?,
        t: ElementSet::from_ranks(group, t)?,
    })
}

/// Base data of the second family: S = T = L^m in Z4^{2m}, partitioned by
/// the number i of L1-type blocks: odd i into S0 for odd m, even i into S0
/// for even m.
fn dircon2_parts(m: u32) -> Result<Parts> {
    if m > 10 {
        return Err(Error::InvalidParameter("dircon2: m too large".into()));
    }
    let group = z4_power(2 * m);
    let mut s0 = Vec::new();
    let mut s1 = Vec::new();
    let mut t = Vec::new();
    let mut stack: Vec<(u64, u32, u32)> = vec![(0, 0, 0)]; // (rank prefix, depth, l1 blocks)
    while let Some((prefix, depth, ones)) = stack.pop() {
        if depth == m {
            t.push(prefix);
            let in_s0 = if m % 2 == 1 {
                ones % 2 == 1
            } else {
                ones % 2 == 0
            };
            if in_s0 {
                s0.push(prefix);
            } else {
                s1.push(prefix);
            }
            continue;
        }
        for &c in &L_BLOCK_RANKS {
            let is_l1 = c != L2_BLOCK_RANK;
            stack.push((prefix * 16 + c, depth + 1, ones + is_l1 as u32));
        }
    }
    Ok(Parts {
        s0: ElementSet::from_ranks(group.clone(), s0)?,
        s1: ElementSet::from_ranks(group.clone(), s1)?,
        t: ElementSet::from_ranks(group, t)?,
    })
}

/// The first direct family in Z_2 x Z_4^{2m}: lift of J^{2m} with the
/// weight-mod-4 partition. m = 1 gives the 4/8 example pair.
pub fn dircon1(m: u32) -> Result<LiftedPair> {
    if m < 1 {
        return Err(Error::InvalidParameter("dircon1 requires m >= 1".into()));
    }
    let parts = dircon1_parts(m)?;
    let mut out = lift_pair(&parts.s0, &parts.s1, &parts.t)?;
    out.family = Family::Dircon1 { m };
    Ok(out)
}

/// The second direct family in Z_2 x Z_4^{2m}: lift of L^m with the
/// block-count parity partition, built directly from the E blocks.
pub fn dircon2(m: u32) -> Result<LiftedPair> {
    if m < 1 {
        return Err(Error::InvalidParameter("dircon2 requires m >= 1".into()));
    }
    let parts = dircon2_parts(m)?;
    let mut out = lift_pair(&parts.s0, &parts.s1, &parts.t)?;
    out.family = Family::Dircon2 { m };
    Ok(out)
}

/// The second family built inductively through the recursive combinator;
/// must agree with [`dircon2`] set for set.
pub fn dircon2_inductive(m: u32) -> Result<LiftedPair> {
    if m < 1 {
        return Err(Error::InvalidParameter("dircon2 requires m >= 1".into()));
    }
    let mut acc = dircon2(1)?;
    for _ in 1..m {
        acc = recur_combine(&acc, &dircon2(1)?)?;
    }
    acc.family = Family::Dircon2 { m };
    Ok(acc)
}

/// The mixed family: combines the J-power base at m1 with the L-power base
/// at m2 into a pair in Z_2 x Z_4^{2(m1+m2)}. m1 = 0 or m2 = 0 degenerate
/// to the pure families.
pub fn mix(m1: u32, m2: u32) -> Result<LiftedPair> {
    if m1 + m2 < 1 {
        return Err(Error::InvalidParameter("mix requires m1 + m2 >= 1".into()));
    }
    let parts = combine_parts(&dircon1_parts(m1)?, &dircon2_parts(m2)?)?;
    let mut out = lift_pair(&parts.s0, &parts.s1, &parts.t)?;
    out.family = Family::Mix { m1, m2 };
    Ok(out)
}

fn pow_u64(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::InvalidParameter(format!("{base}^{exp} overflows")))
}

/// Closed-form difference spectrum of dircon1's T' in Z_2 x Z_4^{2m}:
/// value 0 with multiplicity 2^{4m+1} - 3^{2m+1} + 2^{2m}, value 2 with
/// multiplicity (m+1) 2^{2m+1}, and value 2^l with multiplicity
/// 2^{2m-l+1} (C(2m,l-1) + C(2m,l)) for 2 <= l <= 2m+1.
pub fn predict_dircon1_spectrum(m: u32) -> Result<SpectrumMultiset> {
    if m < 1 {
        return Err(Error::InvalidParameter("m >= 1 required".into()));
    }
    let zero = pow_u64(2, 4 * m + 1)? - pow_u64(3, 2 * m + 1)? + pow_u64(2, 2 * m)?;
    let mut pairs = vec![(0i64, zero), (2, (m as u64 + 1) * pow_u64(2, 2 * m + 1)?)];
    for l in 2..=2 * m + 1 {
        let mult = pow_u64(2, 2 * m + 1 - l)?
            * (binomial(2 * m as u64, l as u64 - 1) + binomial(2 * m as u64, l as u64));
        pairs.push((pow_u64(2, l)? as i64, mult));
    }
    Ok(SpectrumMultiset::from_pairs(pairs))
}

/// theta(T') = 2^{4m+1} - 13^m - 10^m for the second family.
pub fn predict_dircon2_theta(m: u32) -> Result<u64> {
    if m < 1 {
        return Err(Error::InvalidParameter("m >= 1 required".into()));
    }
    Ok(pow_u64(2, 4 * m + 1)? - pow_u64(13, m)? - pow_u64(10, m)?)
}

/// theta(T') = 2^{4m+1} - 3^{2m1} 13^{m2} - (2*3^{2m1} - 2^{2m1}) 10^{m2}
/// for the mixed family, m = m1 + m2.
pub fn predict_mix_theta(m1: u32, m2: u32) -> Result<u64> {
    let m = m1 + m2;
    if m < 1 {
        return Err(Error::InvalidParameter("m1 + m2 >= 1 required".into()));
    }
    let total = pow_u64(2, 4 * m + 1)? as i128;
    let a = pow_u64(3, 2 * m1)? as i128 * pow_u64(13, m2)? as i128;
    let b = (2 * pow_u64(3, 2 * m1)? as i128 - pow_u64(2, 2 * m1)? as i128)
        * pow_u64(10, m2)? as i128;
    u64::try_from(total - a - b)
        .map_err(|_| Error::InvalidParameter("theta formula out of range".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{verify_formally_dual, verify_primitive, Direction};
    use crate::ring::{difference_spectrum, theta, GroupRingElement};

    fn coords_of(set: &ElementSet) -> Vec<Vec<u32>> {
        set.elements().map(|e| e.coords().to_vec()).collect()
    }

    #[test]
    fn base_set_literals() {
        assert_eq!(coords_of(&base_set(BaseSet::J)), vec![vec![0], vec![1]]);
        assert_eq!(coords_of(&base_set(BaseSet::L2)), vec![vec![3, 3]]);
        assert_eq!(base_set(BaseSet::I).len(), 6);
        assert_eq!(base_set(BaseSet::Y).len(), 4);
        assert_eq!(base_set(BaseSet::Z).len(), 3);
        // L = L1 u L2 disjointly
        let l = base_set(BaseSet::L);
        let l1 = base_set(BaseSet::L1);
        let l2 = base_set(BaseSet::L2);
        assert!(l1.is_disjoint(&l2));
        assert_eq!(l1.union(&l2).unwrap(), l);
        assert_eq!(
            coords_of(&l.involution()),
            vec![vec![0, 0], vec![0, 3], vec![1, 1], vec![3, 0]]
        );
    }

    #[test]
    fn block_b_examples() {
        assert_eq!(coords_of(&block_b(1, 2).unwrap()), vec![vec![1, 1]]);
        assert_eq!(
            coords_of(&block_b(1, 1).unwrap()),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(block_b(2, 2).unwrap().len(), 6);
        assert!(block_b(1, 3).is_err());
    }

    #[test]
    fn block_e_examples() {
        assert_eq!(block_e(1, 1).unwrap(), base_set(BaseSet::L1));
        assert_eq!(block_e(1, 0).unwrap(), base_set(BaseSet::L2));
        assert_eq!(block_e(2, 1).unwrap().len(), 6);
        assert!(block_e(2, 3).is_err());
        // E blocks partition L^m
        let union = block_e(2, 0)
            .unwrap()
            .union(&block_e(2, 1).unwrap())
            .unwrap()
            .union(&block_e(2, 2).unwrap())
            .unwrap();
        assert_eq!(union.len(), 16);
    }

    #[test]
    fn dircon1_m1_is_the_4_8_example() {
        let pair = dircon1(1).unwrap();
        assert_eq!(pair.group().factor_orders(), &[2, 4, 4]);
        assert_eq!(
            coords_of(pair.s()),
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![1, 1, 1]
            ]
        );
        assert_eq!(
            coords_of(pair.t()),
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![1, 0, 0],
                vec![1, 0, 3],
                vec![1, 3, 0],
                vec![1, 3, 3]
            ]
        );
        assert_eq!(theta(pair.t()), 9);
    }

    #[test]
    fn dircon2_m1_is_the_teichmuller_example() {
        let pair = dircon2(1).unwrap();
        assert_eq!(
            coords_of(pair.s()),
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![1, 3, 3]
            ]
        );
        assert_eq!(
            coords_of(pair.t()),
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 3, 3],
                vec![1, 0, 0],
                vec![1, 0, 3],
                vec![1, 1, 1],
                vec![1, 3, 0]
            ]
        );
        assert_eq!(theta(pair.t()), 9);
    }

    #[test]
    fn dircon1_m2_verifies() {
        let pair = dircon1(2).unwrap();
        assert_eq!(pair.s().len(), 16);
        assert_eq!(pair.t().len(), 32);
        let rep = verify_formally_dual(pair.s(), pair.t(), Direction::Both).unwrap();
        assert!(rep.ok, "{rep}");
        assert!(verify_primitive(pair.s()).unwrap().is_primitive());
        assert!(verify_primitive(pair.t()).unwrap().is_primitive());
    }

    #[test]
    fn dircon2_direct_equals_inductive() {
        for m in 1..=3 {
            let direct = dircon2(m).unwrap();
            let inductive = dircon2_inductive(m).unwrap();
            assert_eq!(direct.s(), inductive.s(), "S at m={m}");
            assert_eq!(direct.t(), inductive.t(), "T at m={m}");
        }
    }

    #[test]
    fn recur_combine_examples() {
        let d2 = dircon2(1).unwrap();
        let combined = recur_combine(&d2, &d2).unwrap();
        assert_eq!(theta(combined.t()), 243);
        assert_eq!(combined.s(), dircon2(2).unwrap().s());

        let d1 = dircon1(1).unwrap();
        assert!(matches!(
            recur_combine(&d1, &d1),
            Err(Error::ConditionViolated)
        ));

        let mixed = recur_combine(&d1, &d2).unwrap();
        assert_eq!(theta(mixed.t()), 255);
        assert_eq!(mixed.s(), mix(1, 1).unwrap().s());
        assert_eq!(mixed.t(), mix(1, 1).unwrap().t());
    }

    #[test]
    fn mix_degenerate_cases() {
        let m10 = mix(1, 0).unwrap();
        let d1 = dircon1(1).unwrap();
        assert_eq!(m10.s(), d1.s());
        assert_eq!(m10.t(), d1.t());

        let m01 = mix(0, 1).unwrap();
        let d2 = dircon2(1).unwrap();
        assert_eq!(m01.s(), d2.s());
        assert_eq!(m01.t(), d2.t());

        assert!(mix(0, 0).is_err());
    }

    #[test]
    fn mix_m2_thetas() {
        assert_eq!(theta(mix(0, 2).unwrap().t()), 243);
        assert_eq!(theta(mix(1, 1).unwrap().t()), 255);
        assert_eq!(theta(mix(2, 0).unwrap().t()), 285);
    }

    #[test]
    fn product_pair_examples() {
        let j = base_set(BaseSet::J);
        let (s, t) = product_pair((&j, &j), (&j, &j)).unwrap();
        assert_eq!(s.group().factor_orders(), &[4, 4]);
        assert!(verify_formally_dual(&s, &t, Direction::Both).unwrap().ok);

        let l = base_set(BaseSet::L);
        let (s, t) = product_pair((&l, &l), (&l, &l)).unwrap();
        assert_eq!(s.group().order(), 256);
        assert!(verify_formally_dual(&s, &t, Direction::Both).unwrap().ok);

        // product with the trivial pair is the identity
        let trivial = ElementSet::full(FiniteAbelianGroup::trivial());
        let (s, t) = product_pair((&j, &j), (&trivial, &trivial)).unwrap();
        assert_eq!(s.ranks(), j.ranks());
        assert_eq!(t.ranks(), j.ranks());
    }

    #[test]
    fn lift_with_empty_s1_is_well_formed() {
        let g2 = FiniteAbelianGroup::new(&[4, 4]).unwrap();
        let t = base_set(BaseSet::L);
        let empty = ElementSet::empty(g2);
        let pair = lift_pair(&t, &empty, &t).unwrap();
        assert_eq!(pair.s().len(), 4);
        assert_eq!(pair.t().len(), 8);
    }

    #[test]
    fn lift_rejects_overlap() {
        let t = base_set(BaseSet::L);
        assert!(matches!(lift_pair(&t, &t, &t), Err(Error::NotAPartition)));
    }

    #[test]
    fn predicted_dircon1_spectrum_m1() {
        let spec = predict_dircon1_spectrum(1).unwrap();
        assert_eq!(
            spec,
            SpectrumMultiset::from_pairs([(0, 9), (2, 16), (4, 6), (8, 1)])
        );
    }

    #[test]
    fn predicted_spectrum_mass_checks() {
        for m in 1..=4u32 {
            let spec = predict_dircon1_spectrum(m).unwrap();
            let order = 2u64 * 4u64.pow(2 * m);
            let t_size = 2 * 2u64.pow(2 * m);
            assert_eq!(spec.total(), order, "multiplicities sum to |G| at m={m}");
            assert_eq!(
                spec.weighted_sum(),
                (t_size as i128) * (t_size as i128),
                "weighted sum is |T'|^2 at m={m}"
            );
        }
    }

    #[test]
    fn predicted_thetas() {
        assert_eq!(predict_dircon2_theta(3).unwrap(), 4995);
        assert_eq!(predict_dircon2_theta(4).unwrap(), 92511);
        assert_eq!(predict_mix_theta(1, 1).unwrap(), 255);
        assert_eq!(predict_mix_theta(0, 2).unwrap(), 243);
        assert_eq!(predict_mix_theta(2, 0).unwrap(), 285);
        // degenerate splits match the pure-family formulas
        for m in 1..=5 {
            assert_eq!(
                predict_mix_theta(0, m).unwrap(),
                predict_dircon2_theta(m).unwrap()
            );
            assert_eq!(
                predict_mix_theta(m, 0).unwrap(),
                predict_dircon1_spectrum(m).unwrap().zero_multiplicity()
            );
        }
    }

    #[test]
    fn computed_spectrum_matches_prediction_small() {
        for m in 1..=2u32 {
            let pair = dircon1(m).unwrap();
            assert_eq!(
                difference_spectrum(pair.t()),
                predict_dircon1_spectrum(m).unwrap(),
                "m={m}"
            );
        }
    }

    #[test]
    fn ll_product_is_y_plus_2i() {
        let l = GroupRingElement::from_set(&base_set(BaseSet::L));
        let y = GroupRingElement::from_set(&base_set(BaseSet::Y));
        let i = GroupRingElement::from_set(&base_set(BaseSet::I));
        let expected = y.add(&i.scale(2)).unwrap();
        assert_eq!(l.product(&l).unwrap(), expected);
        let linv = l.involution();
        assert_eq!(linv.product(&linv).unwrap(), expected);
    }

    #[test]
    fn theta_product_law_on_combined_pairs() {
        // theta(T'') = 2 |G1| |G2| - |{T1T1^-}| |{T2T2^-}| - |{T1T1 + T1^-T1^-}| |{T2T2}|
        let cases = [
            (dircon2(1).unwrap(), dircon2(1).unwrap()),
            (dircon1(1).unwrap(), dircon2(1).unwrap()),
            (dircon2(2).unwrap(), dircon2(1).unwrap()),
        ];
        for (p1, p2) in cases {
            let combined = recur_combine(&p1, &p2).unwrap();
            let support = |s: &ElementSet, inv: bool| -> u64 {
                let a = GroupRingElement::from_set(s);
                let b = if inv { a.involution() } else { a.clone() };
                a.product(&b).unwrap().support_size()
            };
            let t1 = GroupRingElement::from_set(p1.base_t());
            let t2 = GroupRingElement::from_set(p2.base_t());
            let sym1 = t1
                .product(&t1)
                .unwrap()
                .add(&t1.involution().product(&t1.involution()).unwrap())
                .unwrap()
                .support_size();
            let expected = 2 * p1.base_group().order() * p2.base_group().order()
                - support(p1.base_t(), true) * support(p2.base_t(), true)
                - sym1 * t2.product(&t2).unwrap().support_size();
            assert_eq!(theta(combined.t()), expected);
        }
    }

    #[test]
    fn support_sizes_of_l_powers() {
        for m in 1..=2u32 {
            let parts = dircon2_parts(m).unwrap();
            let t = GroupRingElement::from_set(&parts.t);
            assert_eq!(
                t.product(&t.involution()).unwrap().support_size(),
                13u64.pow(m)
            );
            assert_eq!(t.product(&t).unwrap().support_size(), 10u64.pow(m));
        }
    }
}
