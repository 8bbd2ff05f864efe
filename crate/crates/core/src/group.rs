//! Finite abelian groups as explicit ordered products of cyclic groups.
//!
//! A group is a factor list (n_1, ..., n_k) with n_i >= 2, written
//! additively. Elements are coordinate vectors reduced mod n_i. Every
//! element has a dense mixed-radix rank with the MOST significant factor
//! first: rank(x) = sum_i x_i * prod_{j>i} n_j. That rank order is the
//! canonical element order for all arrays, spectra and file output.
//!
//! The factor list is positional, not a canonical invariant-factor form:
//! (2,4,4) and (4,2,4) are distinct representations, related by the
//! explicit [`FiniteAbelianGroup::factor_permutation`] isomorphism helper.

use crate::arith::lcm;
use crate::error::{Error, Result};
use std::fmt;

/// A finite abelian group `Z_{n_1} x ... x Z_{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
    order: u64,
    exponent: u64,
    /// radix[i] = product of orders[i+1..]; rank weights, most significant first.
    radix: Vec<u64>,
}

/// An element of a [`FiniteAbelianGroup`]: one residue per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    /// Builds the group from a factor list. All orders must be >= 2; an
    /// empty list yields the trivial group.
    pub fn new(orders: &[u32]) -> Result<Self> {
        for &n in orders {
            if n < 2 {
                return Err(Error::InvalidOrder(n as u64));
            }
        }
        let mut order: u64 = 1;
        for &n in orders {
            order = order
                .checked_mul(n as u64)
                .ok_or_else(|| Error::InvalidParameter("group order overflows u64".into()))?;
        }
        let mut exponent = 1u64;
        for &n in orders {
            exponent = lcm(exponent, n as u64);
        }
        let mut radix = vec![1u64; orders.len()];
        for i in (0..orders.len()).rev() {
            if i + 1 < orders.len() {
                radix[i] = radix[i + 1] * orders[i + 1] as u64;
            }
        }
        Ok(Self {
            orders: orders.to_vec(),
            order,
            exponent,
            radix,
        })
    }

    /// The trivial group (empty factor list, one element).
    pub fn trivial() -> Self {
        Self::new(&[]).expect("trivial group")
    }

    pub fn factor_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Least common multiple of the factor orders; conductor of the
    /// cyclotomic ring housing all character values.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.orders.len()],
        }
    }

    /// Builds an element from arbitrary integer coordinates, reducing each
    /// one mod its factor order.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::GroupMismatch(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
            .collect();
        Ok(GroupElement { coords })
    }

    /// Checks strict membership: right length and every coordinate in range.
    pub fn check_member(&self, g: &GroupElement) -> Result<()> {
        if g.coords.len() != self.orders.len()
            || g.coords.iter().zip(&self.orders).any(|(&c, &n)| c >= n)
        {
            return Err(Error::GroupMismatch(format!(
                "element {g} does not belong to {self}"
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn scalar_mul(&self, k: u64, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| ((k % n as u64) * x as u64 % n as u64) as u32)
            .collect();
        Ok(GroupElement { coords })
    }

    /// Dense mixed-radix rank of an element, most significant factor first.
    pub fn rank(&self, a: &GroupElement) -> Result<u64> {
        self.check_member(a)?;
        Ok(self.rank_unchecked(a))
    }

    pub(crate) fn rank_unchecked(&self, a: &GroupElement) -> u64 {
        a.coords
            .iter()
            .zip(&self.radix)
            .map(|(&c, &r)| c as u64 * r)
            .sum()
    }

    /// Inverse of [`rank`](Self::rank). Panics if `r >= order`.
    pub fn unrank(&self, r: u64) -> GroupElement {
        assert!(r < self.order, "rank {r} out of range for {self}");
        let mut rem = r;
        let coords = self
            .radix
            .iter()
            .map(|&w| {
                let c = rem / w;
                rem %= w;
                c as u32
            })
            .collect();
        GroupElement { coords }
    }

    /// Iterates all elements in dense rank order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |r| self.unrank(r))
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        self.check_member(a)?;
        let mut ord = 1u64;
        for (&c, &n) in a.coords.iter().zip(&self.orders) {
            let n = n as u64;
            let o = n / crate::arith::gcd(n, c as u64);
            ord = lcm(ord, o);
        }
        Ok(ord)
    }

    /// Direct product, concatenating the factor lists in order.
    pub fn direct_product(&self, other: &Self) -> Self {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        Self::new(&orders).expect("product of valid groups")
    }

    /// Reorders the factor list by `perm` (new position i holds old factor
    /// `perm[i]`) and returns the reordered group together with the rank map:
    /// `map[old_rank] = new_rank`. This is the explicit isomorphism between
    /// the two positional representations of the same group.
    pub fn factor_permutation(&self, perm: &[usize]) -> Result<(Self, Vec<u64>)> {
        if perm.len() != self.orders.len() {
            return Err(Error::InvalidParameter(
                "permutation length does not match factor count".into(),
            ));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        let orders: Vec<u32> = perm.iter().map(|&p| self.orders[p]).collect();
        let target = Self::new(&orders)?;
        let mut map = vec![0u64; self.order as usize];
        for r in 0..self.order {
            let g = self.unrank(r);
            let coords: Vec<u32> = perm.iter().map(|&p| g.coords[p]).collect();
            map[r as usize] = target.rank_unchecked(&GroupElement { coords });
        }
        Ok((target, map))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A subset of a group, stored as strictly increasing dense ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSet {
    group: FiniteAbelianGroup,
    ranks: Vec<u64>,
}

impl ElementSet {
    pub fn from_elements(group: FiniteAbelianGroup, elems: &[GroupElement]) -> Result<Self> {
        let mut ranks = Vec::with_capacity(elems.len());
        for e in elems {
            ranks.push(group.rank(e)?);
        }
        Self::from_ranks(group, ranks)
    }

    pub fn from_ranks(group: FiniteAbelianGroup, mut ranks: Vec<u64>) -> Result<Self> {
        ranks.sort_unstable();
        for w in ranks.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0]));
            }
        }
        if let Some(&last) = ranks.last() {
            if last >= group.order() {
                return Err(Error::GroupMismatch(format!(
                    "rank {last} out of range for {group}"
                )));
            }
        }
        Ok(Self { group, ranks })
    }

    pub fn empty(group: FiniteAbelianGroup) -> Self {
        Self {
            group,
            ranks: Vec::new(),
        }
    }

    /// The whole group as a set.
    pub fn full(group: FiniteAbelianGroup) -> Self {
        let ranks = (0..group.order()).collect();
        Self { group, ranks }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn len(&self) -> u64 {
        self.ranks.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn contains_rank(&self, r: u64) -> bool {
        self.ranks.binary_search(&r).is_ok()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match self.group.rank(g) {
            Ok(r) => self.contains_rank(r),
            Err(_) => false,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.ranks.iter().map(move |&r| self.group.unrank(r))
    }

    /// Dense membership indicator over all ranks.
    pub fn indicator(&self) -> Vec<bool> {
        let mut ind = vec![false; self.group.order() as usize];
        for &r in &self.ranks {
            ind[r as usize] = true;
        }
        ind
    }

    pub fn translate(&self, g: &GroupElement) -> Result<Self> {
        self.group.check_member(g)?;
        let mut ranks = Vec::with_capacity(self.ranks.len());
        for e in self.elements() {
            ranks.push(self.group.rank_unchecked(&self.group.add(&e, g)?));
        }
        ranks.sort_unstable();
        Ok(Self {
            group: self.group.clone(),
            ranks,
        })
    }

    /// The set of negated elements (underlying set of the group-ring
    /// involution).
    pub fn involution(&self) -> Self {
        let mut ranks: Vec<u64> = self
            .elements()
            .map(|e| {
                let n = self.group.neg(&e).expect("member");
                self.group.rank_unchecked(&n)
            })
            .collect();
        ranks.sort_unstable();
        Self {
            group: self.group.clone(),
            ranks,
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.ranks.iter().all(|r| !other.contains_rank(*r))
    }

    /// Set union; groups must agree.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch("union of sets over different groups".into()));
        }
        let mut ranks = self.ranks.clone();
        ranks.extend_from_slice(&other.ranks);
        ranks.sort_unstable();
        ranks.dedup();
        Ok(Self {
            group: self.group.clone(),
            ranks,
        })
    }

    /// Cartesian product inside the direct product group.
    pub fn direct_product(&self, other: &Self) -> Self {
        let group = self.group.direct_product(&other.group);
        let m = other.group.order();
        let mut ranks = Vec::with_capacity(self.ranks.len() * other.ranks.len());
        for &a in &self.ranks {
            for &b in &other.ranks {
                ranks.push(a * m + b);
            }
        }
        ranks.sort_unstable();
        Self { group, ranks }
    }
}

/// A subgroup, held as its full (sorted) element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    set: ElementSet,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.set.len()
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn is_proper(&self) -> bool {
        self.order() < self.set.group().order()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.set.contains(g)
    }
}

/// Smallest subgroup containing the given generators, by closure iteration.
pub fn subgroup_generated(
    group: &FiniteAbelianGroup,
    generators: &[GroupElement],
) -> Result<Subgroup> {
    for g in generators {
        group.check_member(g)?;
    }
    let n = group.order() as usize;
    let mut member = vec![false; n];
    member[0] = true;
    let mut queue: Vec<u64> = vec![0];
    while let Some(r) = queue.pop() {
        let x = group.unrank(r);
        for g in generators {
            let y = group.add(&x, g)?;
            let ry = group.rank_unchecked(&y);
            if !member[ry as usize] {
                member[ry as usize] = true;
                queue.push(ry);
            }
        }
    }
    let ranks: Vec<u64> = (0..n as u64).filter(|&r| member[r as usize]).collect();
    Ok(Subgroup {
        set: ElementSet {
            group: group.clone(),
            ranks,
        },
    })
}

/// Verdict of the coset-confinement test.
#[derive(Clone, Debug)]
pub struct ConfinementReport {
    pub confined: bool,
    /// The proper subgroup containing S - s0, present when confined.
    pub witness: Option<Subgroup>,
}

/// Decides whether `s` is contained in a coset of a proper subgroup: it is
/// iff the subgroup generated by the differences s - s0 is proper.
pub fn coset_confinement(s: &ElementSet) -> Result<ConfinementReport> {
    if s.is_empty() {
        return Err(Error::EmptySet("coset confinement"));
    }
    let group = s.group();
    let s0 = group.unrank(s.ranks()[0]);
    let diffs: Vec<GroupElement> = s
        .elements()
        .map(|e| group.sub(&e, &s0))
        .collect::<Result<_>>()?;
    let h = subgroup_generated(group, &diffs)?;
    let confined = h.is_proper();
    Ok(ConfinementReport {
        confined,
        witness: confined.then_some(h),
    })
}

/// Finds a nonzero g with g + S = S, if any; S is then a union of cosets
/// of the subgroup generated by g. Returns None for the empty set.
pub fn nontrivial_stabilizer(s: &ElementSet) -> Option<GroupElement> {
    if s.is_empty() {
        return None;
    }
    let group = s.group();
    let ind = s.indicator();
    let s0 = group.unrank(s.ranks()[0]);
    for t in s.elements() {
        let g = group.sub(&t, &s0).expect("member");
        if group.rank_unchecked(&g) == 0 {
            continue;
        }
        let stabilizes = s.elements().all(|x| {
            let y = group.add(&x, &g).expect("member");
            ind[group.rank_unchecked(&y) as usize]
        });
        if stabilizes {
            return Some(g);
        }
    }
    None
}

/// A group automorphism, stored as basis images plus the induced rank
/// permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    group: FiniteAbelianGroup,
    basis_images: Vec<GroupElement>,
    perm: Vec<u64>,
}

impl Automorphism {
    pub fn basis_images(&self) -> &[GroupElement] {
        &self.basis_images
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        let r = self.group.rank(g)?;
        Ok(self.group.unrank(self.perm[r as usize]))
    }

    pub fn apply_set(&self, s: &ElementSet) -> Result<ElementSet> {
        if s.group() != &self.group {
            return Err(Error::GroupMismatch(
                "automorphism applied to a set over a different group".into(),
            ));
        }
        let mut ranks: Vec<u64> = s.ranks().iter().map(|&r| self.perm[r as usize]).collect();
        ranks.sort_unstable();
        Ok(ElementSet {
            group: self.group.clone(),
            ranks,
        })
    }
}

pub const DEFAULT_AUTOMORPHISM_BOUND: u64 = 64;

/// Enumerates all automorphisms of the group, as images of the standard
/// basis of the cyclic decomposition. Backtracking keeps only partial
/// basis images whose induced map stays injective, so the tuple space is
/// pruned long before full depth. Guarded by an order bound.
pub fn automorphisms(group: &FiniteAbelianGroup, bound: u64) -> Result<Vec<Automorphism>> {
    if group.order() > bound {
        return Err(Error::SizeLimit {
            order: group.order(),
            bound,
        });
    }
    let k = group.factor_orders().len();
    if k == 0 {
        return Ok(vec![Automorphism {
            group: group.clone(),
            basis_images: vec![],
            perm: vec![0],
        }]);
    }
    // Candidate images of basis vector e_i: elements of order dividing n_i.
    let mut candidates: Vec<Vec<u64>> = Vec::with_capacity(k);
    for &ni in group.factor_orders() {
        let mut c = Vec::new();
        for r in 0..group.order() {
            let g = group.unrank(r);
            if (ni as u64).is_multiple_of(group.element_order(&g)?) {
                c.push(r);
            }
        }
        candidates.push(c);
    }

    let mut out = Vec::new();
    // images of the prefix subgroup <e_1..e_i>, as ranks
    let mut prefix_images: Vec<u64> = vec![0];
    let mut chosen: Vec<u64> = Vec::with_capacity(k);
    fn dfs(
        group: &FiniteAbelianGroup,
        candidates: &[Vec<u64>],
        depth: usize,
        prefix_images: &mut Vec<u64>,
        chosen: &mut Vec<u64>,
        out: &mut Vec<Automorphism>,
    ) {
        let k = candidates.len();
        if depth == k {
            if prefix_images.len() == group.order() as usize {
                let basis_images: Vec<GroupElement> =
                    chosen.iter().map(|&r| group.unrank(r)).collect();
                let mut perm = vec![0u64; group.order() as usize];
                for r in 0..group.order() {
                    let x = group.unrank(r);
                    let mut img = group.identity();
                    for (i, y) in basis_images.iter().enumerate() {
                        let term = group.scalar_mul(x.coords()[i] as u64, y).expect("member");
                        img = group.add(&img, &term).expect("member");
                    }
                    perm[r as usize] = group.rank_unchecked(&img);
                }
                out.push(Automorphism {
                    group: group.clone(),
                    basis_images,
                    perm,
                });
            }
            return;
        }
        let ni = group.factor_orders()[depth] as u64;
        for &cand in &candidates[depth] {
            let y = group.unrank(cand);
            let mut seen = vec![false; group.order() as usize];
            let mut next_images = Vec::with_capacity(prefix_images.len() * ni as usize);
            let mut injective = true;
            'ext: for a in 0..ni {
                let ay = group.scalar_mul(a, &y).expect("member");
                let ray = group.rank_unchecked(&ay);
                for &p in prefix_images.iter() {
                    let sum = group
                        .add(&group.unrank(p), &group.unrank(ray))
                        .expect("member");
                    let rs = group.rank_unchecked(&sum);
                    if seen[rs as usize] {
                        injective = false;
                        break 'ext;
                    }
                    seen[rs as usize] = true;
                    next_images.push(rs);
                }
            }
            if !injective {
                continue;
            }
            chosen.push(cand);
            let saved = std::mem::replace(prefix_images, next_images);
            dfs(group, candidates, depth + 1, prefix_images, chosen, out);
            *prefix_images = saved;
            chosen.pop();
        }
    }
    dfs(
        group,
        &candidates,
        0,
        &mut prefix_images,
        &mut chosen,
        &mut out,
    );
    Ok(out)
}
