//! The verification layer: formal duality, primitivity, lifting conditions
//! and the squared-character reality condition, each returning a
//! machine-checkable certificate.
//!
//! Every right-hand side is carried as an exact rational (numerator over
//! the partner size), never rounded: the impossibility arguments for odd
//! powers hinge on spotting a non-integral requirement exactly. A full
//! verification costs one fast spectrum pass plus one O(|T|^2) weight pass,
//! O(|G| * sum n_i + |T|^2) in total.

use crate::arith::gcd;
use crate::characters::{self, sq_spectrum, SpectrumMethod};
use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::group::{
    coset_confinement, nontrivial_stabilizer, ElementSet, GroupElement, Subgroup,
};
use crate::ring::{cross_difference_counts, difference_counts, GroupRingElement};
use std::fmt;

/// Which side(s) of the duality identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    SSide,
    TSide,
    Both,
}

/// One failed comparison |chi_y(X)|^2 != (|X|^2/|partner|) nu_partner(y).
#[derive(Clone, Debug)]
pub struct DualFailure {
    /// Side whose spectrum sat on the left-hand side.
    pub side: Direction,
    pub witness: GroupElement,
    /// Exact |chi_y(X)|^2.
    pub lhs: CyclotomicInteger,
    /// Right-hand side as the exact rational rhs_num / rhs_den.
    pub rhs_num: i128,
    pub rhs_den: i128,
}

/// Certificate of a formal-duality check.
#[derive(Clone, Debug)]
pub struct DualPairReport {
    pub ok: bool,
    pub direction: Direction,
    pub group_order: u64,
    pub size_s: u64,
    pub size_t: u64,
    /// Whether |G| = |S| * |T| held; when false no per-witness scan runs.
    pub size_precheck_ok: bool,
    pub failures: Vec<DualFailure>,
}

impl fmt::Display for DualPairReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.size_precheck_ok {
            return write!(
                f,
                "FAIL: size precheck {} != {} (|S|*|T| vs |G|)",
                self.size_s * self.size_t,
                self.group_order
            );
        }
        if self.ok {
            write!(
                f,
                "ok: formally dual ({:?}, |S|={}, |T|={}, |G|={})",
                self.direction, self.size_s, self.size_t, self.group_order
            )
        } else {
            let first = &self.failures[0];
            write!(
                f,
                "FAIL: {} witness(es); first at y={} ({:?}): |chi_y|^2 = {} but required {}/{}",
                self.failures.len(),
                first.witness,
                first.side,
                first.lhs,
                first.rhs_num,
                first.rhs_den
            )
        }
    }
}

fn check_side(
    lhs_set: &ElementSet,
    partner: &ElementSet,
    side: Direction,
    failures: &mut Vec<DualFailure>,
) -> Result<()> {
    let group = lhs_set.group();
    let spectrum = sq_spectrum(
        &GroupRingElement::from_set(lhs_set),
        SpectrumMethod::Fast,
    )?;
    let nu = difference_counts(partner);
    let size_sq = (lhs_set.len() as i128) * (lhs_set.len() as i128);
    let den = partner.len() as i128;
    for (ry, lhs) in spectrum.into_iter().enumerate() {
        let num = size_sq * nu[ry] as i128;
        let holds = match lhs.as_rational_integer() {
            Some(q) => q as i128 * den == num,
            None => false, // irrational left side can never equal a rational
        };
        if !holds {
            failures.push(DualFailure {
                side,
                witness: group.unrank(ry as u64),
                lhs,
                rhs_num: num,
                rhs_den: den,
            });
        }
    }
    Ok(())
}

/// Checks the duality identity |chi_y(S)|^2 = (|S|^2/|T|) nu_T(y) for every
/// y (S-side), the interchanged identity (T-side), or both. The size
/// precheck |G| = |S| |T| is reported in the certificate, not raised.
pub fn verify_formally_dual(
    s: &ElementSet,
    t: &ElementSet,
    direction: Direction,
) -> Result<DualPairReport> {
    if s.group() != t.group() {
        return Err(Error::GroupMismatch(
            "S and T live over different groups".into(),
        ));
    }
    if s.is_empty() || t.is_empty() {
        return Err(Error::EmptySet("formal duality check"));
    }
    let group_order = s.group().order();
    let mut report = DualPairReport {
        ok: false,
        direction,
        group_order,
        size_s: s.len(),
        size_t: t.len(),
        size_precheck_ok: s.len() * t.len() == group_order,
        failures: Vec::new(),
    };
    if !report.size_precheck_ok {
        return Ok(report);
    }
    if matches!(direction, Direction::SSide | Direction::Both) {
        check_side(s, t, Direction::SSide, &mut report.failures)?;
    }
    if matches!(direction, Direction::TSide | Direction::Both) {
        check_side(t, s, Direction::TSide, &mut report.failures)?;
    }
    report.ok = report.failures.is_empty();
    Ok(report)
}

/// Certificate of the primitivity check. A set is primitive iff it is
/// neither contained in a coset of a proper subgroup nor stabilized by a
/// nonzero element (union of cosets). The confinement verdict is also
/// recomputed through the character criterion (a nonprincipal chi with
/// |chi(S)|^2 = |S|^2 exists iff confined) and the two must agree.
#[derive(Clone, Debug)]
pub struct PrimitivityReport {
    pub coset_confined: bool,
    pub confinement_witness: Option<Subgroup>,
    pub stabilized: bool,
    pub stabilizer_witness: Option<GroupElement>,
    pub character_criterion_agrees: bool,
}

impl PrimitivityReport {
    pub fn is_primitive(&self) -> bool {
        !self.coset_confined && !self.stabilized
    }
}

impl fmt::Display for PrimitivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_primitive() {
            write!(f, "primitive")?;
        } else if self.coset_confined {
            write!(
                f,
                "not primitive: confined to a coset of a proper subgroup of order {}",
                self.confinement_witness.as_ref().map_or(0, |h| h.order())
            )?;
        } else {
            write!(
                f,
                "not primitive: stabilized by {}",
                self.stabilizer_witness
                    .as_ref()
                    .map_or_else(|| "?".into(), |g| g.to_string())
            )?;
        }
        if !self.character_criterion_agrees {
            write!(f, " [WARNING: character criterion disagrees]")?;
        }
        Ok(())
    }
}

pub fn verify_primitive(s: &ElementSet) -> Result<PrimitivityReport> {
    if s.is_empty() {
        return Err(Error::EmptySet("primitivity check"));
    }
    let confinement = coset_confinement(s)?;
    let stabilizer = nontrivial_stabilizer(s);
    let spectrum = sq_spectrum(&GroupRingElement::from_set(s), SpectrumMethod::Fast)?;
    let size_sq = (s.len() * s.len()) as i64;
    let char_confined = spectrum
        .iter()
        .enumerate()
        .skip(1)
        .any(|(_, v)| v.as_rational_integer() == Some(size_sq));
    Ok(PrimitivityReport {
        coset_confined: confinement.confined,
        confinement_witness: confinement.witness,
        stabilized: stabilizer.is_some(),
        stabilizer_witness: stabilizer,
        character_criterion_agrees: char_confined == confinement.confined,
    })
}

/// One failed lifting identity, with the equation index (1 for T0+T1,
/// 2 for T0-T1) and the exact two sides.
#[derive(Clone, Debug)]
pub struct LiftingFailure {
    pub equation: u8,
    pub witness: GroupElement,
    pub lhs: CyclotomicInteger,
    pub rhs_num: i128,
    pub rhs_den: i128,
}

/// Verdict of the lifting condition.
#[derive(Clone, Debug)]
pub struct LiftingReport {
    pub holds: bool,
    pub witness: Option<LiftingFailure>,
}

impl fmt::Display for LiftingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.holds, &self.witness) {
            (true, _) => write!(f, "lifting condition holds"),
            (false, Some(w)) => write!(
                f,
                "lifting condition fails: equation {} at z={}: lhs {} vs {}/{}",
                w.equation, w.witness, w.lhs, w.rhs_num, w.rhs_den
            ),
            (false, None) => write!(f, "lifting condition fails"),
        }
    }
}

/// Checks the two lifting identities
///
/// |chi_z(T0+T1)|^2 = (4|T|^2/|S|) (nu_{S0}(z) + nu_{S1}(z)) and
/// |chi_z(T0-T1)|^2 = (4|T|^2/|S|) (nu_{S0,S1}(z) + nu_{S1,S0}(z))
///
/// for every z, where S = S0 u S1 must partition and T0 = `t`. When `t1`
/// is omitted the specialization T1 = T^{(-1)} is used. The first failing
/// z is returned as the witness.
pub fn lifting_condition(
    s0: &ElementSet,
    s1: &ElementSet,
    t: &ElementSet,
    t1: Option<&ElementSet>,
) -> Result<LiftingReport> {
    let group = t.group();
    if s0.group() != group || s1.group() != group {
        return Err(Error::GroupMismatch(
            "partition and T live over different groups".into(),
        ));
    }
    if let Some(t1) = t1 {
        if t1.group() != group {
            return Err(Error::GroupMismatch("T1 lives over a different group".into()));
        }
    }
    if !s0.is_disjoint(s1) {
        return Err(Error::NotAPartition);
    }
    let size_s = s0.len() + s1.len();
    if size_s == 0 || t.is_empty() {
        return Err(Error::EmptySet("lifting condition"));
    }
    let t1_owned;
    let t1 = match t1 {
        Some(x) => x,
        None => {
            t1_owned = t.involution();
            &t1_owned
        }
    };
    let e0 = GroupRingElement::from_set(t);
    let e1 = GroupRingElement::from_set(t1);
    let plus = sq_spectrum(&e0.add(&e1)?, SpectrumMethod::Fast)?;
    let minus = sq_spectrum(&e0.sub(&e1)?, SpectrumMethod::Fast)?;
    let nu0 = difference_counts(s0);
    let nu1 = difference_counts(s1);
    let cross01 = cross_difference_counts(s0, s1)?;
    let cross10 = cross_difference_counts(s1, s0)?;
    // 4|T|^2 with |T| defined through |T0| + |T1| = 2|T|
    let factor = (t.len() + t1.len()) as i128 * (t.len() + t1.len()) as i128;
    let den = size_s as i128;
    for rz in 0..group.order() as usize {
        for (equation, lhs, mult) in [
            (1u8, &plus[rz], nu0[rz] + nu1[rz]),
            (2u8, &minus[rz], cross01[rz] + cross10[rz]),
        ] {
            let num = factor * mult as i128;
            let holds = match lhs.as_rational_integer() {
                Some(q) => q as i128 * den == num,
                None => false,
            };
            if !holds {
                return Ok(LiftingReport {
                    holds: false,
                    witness: Some(LiftingFailure {
                        equation,
                        witness: group.unrank(rz as u64),
                        lhs: lhs.clone(),
                        rhs_num: num,
                        rhs_den: den,
                    }),
                });
            }
        }
    }
    Ok(LiftingReport {
        holds: true,
        witness: None,
    })
}

/// True iff chi_z(T)^2 is real for every character chi_z.
pub fn chi_square_real(t: &ElementSet) -> Result<bool> {
    let elem = GroupRingElement::from_set(t);
    if let Some(sums) = characters::gauss_char_sums(&elem) {
        // (a+bi)^2 real iff ab = 0
        return Ok(sums.iter().all(|g| g.re == 0 || g.im == 0));
    }
    for v in characters::char_sums(&elem, SpectrumMethod::Fast)? {
        if !v.mul(&v)?.is_real() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A forced weight nu_partner(y) that is not a nonnegative integer, as the
/// reduced exact fraction num/den.
#[derive(Clone, Debug)]
pub struct ForcedViolation {
    pub witness: GroupElement,
    pub num: i128,
    pub den: i128,
}

/// Feasibility of finding any partner for `t`: the duality identity forces
/// nu_partner(y) = |chi_y(T)|^2 |S| / |T|^2 pointwise for the implied
/// partner size |S| = |G|/|T|, so a single non-integral value rules out
/// every candidate partner at once.
#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// |G| / |T| when integral.
    pub partner_size: Option<u64>,
    /// Forced dense weight function when fully integral.
    pub forced_weights: Option<Vec<i64>>,
    pub violations: Vec<ForcedViolation>,
    /// A witness where |chi_y(T)|^2 itself is irrational (exponent not
    /// dividing 4), which equally rules out all partners.
    pub irrational_witness: Option<GroupElement>,
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.feasible {
            write!(
                f,
                "feasible: partner size {}",
                self.partner_size.unwrap_or(0)
            )
        } else if let Some(v) = self.violations.first() {
            write!(
                f,
                "infeasible: forced weight nu({}) = {}/{} is not an integer",
                v.witness, v.num, v.den
            )
        } else if let Some(w) = &self.irrational_witness {
            write!(f, "infeasible: |chi_y(T)|^2 irrational at y={w}")
        } else {
            write!(f, "infeasible: |T| does not divide |G|")
        }
    }
}

pub fn partner_feasibility(t: &ElementSet) -> Result<FeasibilityReport> {
    if t.is_empty() {
        return Err(Error::EmptySet("partner feasibility"));
    }
    let group = t.group();
    let order = group.order();
    if !order.is_multiple_of(t.len()) {
        return Ok(FeasibilityReport {
            feasible: false,
            partner_size: None,
            forced_weights: None,
            violations: Vec::new(),
            irrational_witness: None,
        });
    }
    let size_s = order / t.len();
    let spectrum = sq_spectrum(&GroupRingElement::from_set(t), SpectrumMethod::Fast)?;
    let den_raw = (t.len() as i128) * (t.len() as i128);
    let mut forced = Vec::with_capacity(order as usize);
    let mut violations = Vec::new();
    let mut irrational_witness = None;
    for (ry, v) in spectrum.into_iter().enumerate() {
        match v.as_rational_integer() {
            Some(q) => {
                let num = q as i128 * size_s as i128;
                if num % den_raw == 0 {
                    forced.push((num / den_raw) as i64);
                } else {
                    let g = gcd(num.unsigned_abs() as u64, den_raw as u64) as i128;
                    violations.push(ForcedViolation {
                        witness: group.unrank(ry as u64),
                        num: num / g,
                        den: den_raw / g,
                    });
                }
            }
            None => {
                if irrational_witness.is_none() {
                    irrational_witness = Some(group.unrank(ry as u64));
                }
            }
        }
    }
    let feasible = violations.is_empty() && irrational_witness.is_none();
    Ok(FeasibilityReport {
        feasible,
        partner_size: Some(size_s),
        forced_weights: feasible.then_some(forced),
        violations,
        irrational_witness,
    })
}
