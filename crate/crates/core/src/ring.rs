//! Integer group-ring elements with convolution product, involution,
//! weight enumerators and spectrum extraction.
//!
//! Coefficients are machine-width signed integers with checked arithmetic;
//! overflow aborts with a diagnostic instead of wrapping. Elements are
//! always dense over the group's rank order.

use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteAbelianGroup, GroupElement};
use crate::par;
use std::collections::BTreeMap;
use std::fmt;

const OVERFLOW_MSG: &str = "group ring coefficient overflow: aborting rather than wrapping";

/// An element of `Z[G]`, dense over dense element ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    group: FiniteAbelianGroup,
    coeffs: Vec<i64>,
}

impl GroupRingElement {
    pub fn zero(group: FiniteAbelianGroup) -> Self {
        let n = group.order() as usize;
        Self {
            group,
            coeffs: vec![0; n],
        }
    }

    /// 0/1 indicator element of a subset.
    pub fn from_set(s: &ElementSet) -> Self {
        let mut out = Self::zero(s.group().clone());
        for &r in s.ranks() {
            out.coeffs[r as usize] = 1;
        }
        out
    }

    /// The single group element `g` with coefficient 1.
    pub fn singleton(group: FiniteAbelianGroup, g: &GroupElement) -> Result<Self> {
        let r = group.rank(g)?;
        let mut out = Self::zero(group);
        out.coeffs[r as usize] = 1;
        Ok(out)
    }

    pub fn from_coeffs(group: FiniteAbelianGroup, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() as u64 != group.order() {
            return Err(Error::GroupMismatch(format!(
                "coefficient vector length {} does not match group order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(Self { group, coeffs })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: &GroupElement) -> Result<i64> {
        Ok(self.coeffs[self.group.rank(g)? as usize])
    }

    pub fn sum_coeffs(&self) -> i64 {
        self.coeffs
            .iter()
            .fold(0i64, |a, &b| a.checked_add(b).expect(OVERFLOW_MSG))
    }

    /// Number of group elements with nonzero coefficient.
    pub fn support_size(&self) -> u64 {
        self.coeffs.iter().filter(|&&c| c != 0).count() as u64
    }

    /// Underlying subset of elements with nonzero coefficient.
    pub fn support(&self) -> ElementSet {
        let ranks: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(r, _)| r as u64)
            .collect();
        ElementSet::from_ranks(self.group.clone(), ranks).expect("ranks in range")
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                "group ring operands live over different groups".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_add(b).expect(OVERFLOW_MSG))
            .collect();
        Ok(Self {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_sub(b).expect(OVERFLOW_MSG))
            .collect();
        Ok(Self {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| c.checked_mul(k).expect(OVERFLOW_MSG))
                .collect(),
        }
    }

    /// Exact convolution: `[AB]_g = sum_h a_{g-h} b_h`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let n = self.group.order() as usize;
        let a_support: Vec<(u64, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(r, &c)| (r as u64, c))
            .collect();
        let b_support: Vec<(u64, i64)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(r, &c)| (r as u64, c))
            .collect();
        let group = &self.group;
        let coeffs = par::map_reduce_counts(&a_support, n, |&(ra, ca), acc| {
            let ga = group.unrank(ra);
            for &(rb, cb) in &b_support {
                let gb = group.unrank(rb);
                let g = group.add(&ga, &gb).expect("member");
                let idx = group.rank_unchecked(&g) as usize;
                acc[idx] = acc[idx]
                    .checked_add(ca.checked_mul(cb).expect(OVERFLOW_MSG))
                    .expect(OVERFLOW_MSG);
            }
        });
        Ok(Self {
            group: self.group.clone(),
            coeffs,
        })
    }

    /// Coefficients pulled back along negation: A^{(-1)}.
    pub fn involution(&self) -> Self {
        let n = self.group.order();
        let mut coeffs = vec![0i64; n as usize];
        for r in 0..n {
            let g = self.group.unrank(r);
            let neg = self.group.neg(&g).expect("member");
            coeffs[self.group.rank_unchecked(&neg) as usize] = self.coeffs[r as usize];
        }
        Self {
            group: self.group.clone(),
            coeffs,
        }
    }

    /// Multiset of coefficient values over the whole group.
    pub fn spectrum(&self) -> SpectrumMultiset {
        SpectrumMultiset::from_values(self.coeffs.iter().copied())
    }
}

/// Weight enumerator: the number of ordered pairs (a1, a2) in A1 x A2 with
/// a1 - a2 = y; equals [A1 A2^{(-1)}]_y.
pub fn weight_enumerator(a1: &ElementSet, a2: &ElementSet, y: &GroupElement) -> Result<u64> {
    if a1.group() != a2.group() {
        return Err(Error::GroupMismatch(
            "weight enumerator over different groups".into(),
        ));
    }
    let group = a1.group();
    group.check_member(y)?;
    let ind1 = a1.indicator();
    let mut count = 0u64;
    for b in a2.elements() {
        let a = group.add(y, &b)?;
        if ind1[group.rank_unchecked(&a) as usize] {
            count += 1;
        }
    }
    Ok(count)
}

/// Dense vector of [A B^{(-1)}]_y over all y, by pair enumeration in
/// O(|A| |B|) rather than full convolution. The inner loop works on flat
/// coordinate buffers; this is the hot path behind theta at large m.
pub fn cross_difference_counts(a: &ElementSet, b: &ElementSet) -> Result<Vec<i64>> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch(
            "difference counts over different groups".into(),
        ));
    }
    let group = a.group().clone();
    let n = group.order() as usize;
    let k = group.factor_orders().len();
    if k == 0 {
        return Ok(vec![(a.len() * b.len()) as i64]);
    }
    let orders: Vec<u64> = group.factor_orders().iter().map(|&o| o as u64).collect();
    let radix: Vec<u64> = (0..k)
        .map(|i| orders[i + 1..].iter().product::<u64>())
        .collect();
    let flat = |s: &ElementSet| -> Vec<u64> {
        let mut out = Vec::with_capacity(s.len() as usize * k);
        for e in s.elements() {
            out.extend(e.coords().iter().map(|&c| c as u64));
        }
        out
    };
    let a_flat = flat(a);
    let b_flat = flat(b);
    let a_index: Vec<usize> = (0..a.len() as usize).collect();
    Ok(par::map_reduce_counts(&a_index, n, |&ia, acc| {
        let ca = &a_flat[ia * k..(ia + 1) * k];
        for cb in b_flat.chunks_exact(k) {
            let mut rank = 0u64;
            for i in 0..k {
                rank += (ca[i] + orders[i] - cb[i]) % orders[i] * radix[i];
            }
            acc[rank as usize] += 1;
        }
    }))
}

/// Dense vector of [A A^{(-1)}]_y over all y.
pub fn difference_counts(a: &ElementSet) -> Vec<i64> {
    cross_difference_counts(a, a).expect("same group")
}

/// The difference spectrum of a set: multiset of [A A^{(-1)}]_g over g in G.
pub fn difference_spectrum(a: &ElementSet) -> SpectrumMultiset {
    SpectrumMultiset::from_values(difference_counts(a))
}

/// Multiplicity of 0 in the difference spectrum.
pub fn theta(a: &ElementSet) -> u64 {
    difference_counts(a).iter().filter(|&&c| c == 0).count() as u64
}

/// A value -> multiplicity map; difference and squared-character spectra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct SpectrumMultiset {
    counts: BTreeMap<i64, u64>,
}

impl SpectrumMultiset {
    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut counts = BTreeMap::new();
        for v in values {
            *counts.entry(v).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, u64)>>(pairs: I) -> Self {
        let mut counts = BTreeMap::new();
        for (v, m) in pairs {
            if m > 0 {
                *counts.entry(v).or_insert(0) += m;
            }
        }
        Self { counts }
    }

    pub fn multiplicity(&self, value: i64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Total multiplicity; equals |G| for a full spectrum over G.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn zero_multiplicity(&self) -> u64 {
        self.multiplicity(0)
    }

    /// Sum of value * multiplicity over the multiset.
    pub fn weighted_sum(&self) -> i128 {
        self.counts
            .iter()
            .map(|(&v, &m)| v as i128 * m as i128)
            .sum()
    }

    /// Ascending (value, multiplicity) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().map(|(&v, &m)| (v, m))
    }
}

impl fmt::Display for SpectrumMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{m}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z4() -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(&[4]).unwrap()
    }

    fn set(group: &FiniteAbelianGroup, ranks: &[u64]) -> ElementSet {
        ElementSet::from_ranks(group.clone(), ranks.to_vec()).unwrap()
    }

    #[test]
    fn from_set_examples() {
        let g = z4();
        let j = set(&g, &[0, 1]);
        assert_eq!(GroupRingElement::from_set(&j).coeffs(), &[1, 1, 0, 0]);
        let empty = ElementSet::empty(g.clone());
        assert!(GroupRingElement::from_set(&empty)
            .coeffs()
            .iter()
            .all(|&c| c == 0));

        let g2 = FiniteAbelianGroup::new(&[4, 4]).unwrap();
        let l = ElementSet::from_elements(
            g2.clone(),
            &[
                g2.element(&[0, 0]).unwrap(),
                g2.element(&[0, 1]).unwrap(),
                g2.element(&[1, 0]).unwrap(),
                g2.element(&[3, 3]).unwrap(),
            ],
        )
        .unwrap();
        let el = GroupRingElement::from_set(&l);
        assert_eq!(el.sum_coeffs(), 4);
        for r in [0u64, 1, 4, 15] {
            assert_eq!(el.coeffs()[r as usize], 1);
        }
    }

    #[test]
    fn product_examples() {
        let g = z4();
        let j = GroupRingElement::from_set(&set(&g, &[0, 1]));
        let prod = j.product(&j.involution()).unwrap();
        assert_eq!(prod.coeffs(), &[2, 1, 0, 1]);

        let ident = GroupRingElement::singleton(g.clone(), &g.identity()).unwrap();
        assert_eq!(j.product(&ident).unwrap(), j);
    }

    #[test]
    fn involution_examples() {
        let g = z4();
        let j = GroupRingElement::from_set(&set(&g, &[0, 1]));
        assert_eq!(j.involution().support().ranks(), &[0, 3]);
        let sym = GroupRingElement::from_set(&set(&g, &[0, 2]));
        assert_eq!(sym.involution(), sym);
    }

    #[test]
    fn weight_enumerator_examples() {
        // T = J x J in Z4 x Z4
        let g2 = FiniteAbelianGroup::new(&[4, 4]).unwrap();
        let t = ElementSet::from_ranks(g2.clone(), vec![0, 1, 4, 5]).unwrap();
        let nu = |c: &[i64]| {
            weight_enumerator(&t, &t, &g2.element(c).unwrap()).unwrap()
        };
        assert_eq!(nu(&[0, 0]), 4);
        assert_eq!(nu(&[0, 1]), 2);
        assert_eq!(nu(&[2, 2]), 0);
    }

    #[test]
    fn difference_spectrum_examples() {
        let g = z4();
        let j = set(&g, &[0, 1]);
        let spec = difference_spectrum(&j);
        assert_eq!(
            spec,
            SpectrumMultiset::from_pairs([(2, 1), (1, 2), (0, 1)])
        );

        // singleton {0} in Z6
        let g6 = FiniteAbelianGroup::new(&[6]).unwrap();
        let single = set(&g6, &[0]);
        assert_eq!(
            difference_spectrum(&single),
            SpectrumMultiset::from_pairs([(1, 1), (0, 5)])
        );
    }

    #[test]
    fn theta_of_whole_group_is_zero() {
        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(theta(&ElementSet::full(g)), 0);
    }

    #[test]
    fn difference_counts_on_trivial_group() {
        let t = ElementSet::full(FiniteAbelianGroup::trivial());
        assert_eq!(difference_counts(&t), vec![1]);
    }

    #[test]
    fn spectrum_matches_ring_product_oracle() {
        // pair enumeration must equal the coefficients of A A^{(-1)}
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for orders in [vec![4u32, 4], vec![2, 3, 4], vec![8, 8], vec![16, 4, 4]] {
            let g = FiniteAbelianGroup::new(&orders).unwrap();
            let ranks: Vec<u64> = (0..g.order()).filter(|_| next() % 3 == 0).collect();
            if ranks.is_empty() {
                continue;
            }
            let s = ElementSet::from_ranks(g.clone(), ranks).unwrap();
            let a = GroupRingElement::from_set(&s);
            let prod = a.product(&a.involution()).unwrap();
            assert_eq!(prod.coeffs(), difference_counts(&s).as_slice());
        }
    }

    #[test]
    fn group_mismatch_rejected() {
        let a = GroupRingElement::zero(z4());
        let b = GroupRingElement::zero(FiniteAbelianGroup::new(&[2, 2]).unwrap());
        assert!(a.product(&b).is_err());
    }

    proptest! {
        #[test]
        fn product_coefficient_sum_multiplies(mask_a in 0u32..256, mask_b in 0u32..256) {
            let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
            let coeffs_a: Vec<i64> = (0..8).map(|i| ((mask_a >> i) & 1) as i64 * ((i % 3) as i64 + 1)).collect();
            let coeffs_b: Vec<i64> = (0..8).map(|i| ((mask_b >> i) & 1) as i64 * ((i % 2) as i64 + 1)).collect();
            let a = GroupRingElement::from_coeffs(g.clone(), coeffs_a).unwrap();
            let b = GroupRingElement::from_coeffs(g, coeffs_b).unwrap();
            let prod = a.product(&b).unwrap();
            prop_assert_eq!(prod.sum_coeffs(), a.sum_coeffs() * b.sum_coeffs());
        }

        #[test]
        fn involution_is_involutive(mask in 0u32..65536) {
            let g = FiniteAbelianGroup::new(&[4, 4]).unwrap();
            let coeffs: Vec<i64> = (0..16).map(|i| ((mask >> i) & 1) as i64).collect();
            let a = GroupRingElement::from_coeffs(g, coeffs).unwrap();
            prop_assert_eq!(a.involution().involution(), a);
        }

        #[test]
        fn set_difference_identities(mask in 1u32..65536) {
            let g = FiniteAbelianGroup::new(&[4, 4]).unwrap();
            let ranks: Vec<u64> = (0..16).filter(|i| (mask >> i) & 1 == 1).collect();
            let s = ElementSet::from_ranks(g.clone(), ranks).unwrap();
            let counts = difference_counts(&s);
            let total: i64 = counts.iter().sum();
            prop_assert_eq!(total, (s.len() * s.len()) as i64);
            prop_assert_eq!(counts[0], s.len() as i64);
            for r in 0..g.order() {
                let neg = g.neg(&g.unrank(r)).unwrap();
                prop_assert_eq!(counts[r as usize], counts[g.rank(&neg).unwrap() as usize]);
            }
        }
    }
}
