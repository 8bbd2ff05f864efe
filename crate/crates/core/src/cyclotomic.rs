//! Exact arithmetic in `Z[zeta_e]`, the ring of integers with a primitive
//! e-th root of unity adjoined, represented as integer polynomials reduced
//! modulo the e-th cyclotomic polynomial.
//!
//! All duality checks run on this ring; floating point appears only in
//! cross-validation tests. Conductors 1, 2 and 4 (rational and Gaussian
//! integers) get a compact machine-width fast path used by the character
//! transforms, behind the same interface.

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};
use std::fmt;

const OVERFLOW_MSG: &str = "cyclotomic coefficient overflow: aborting rather than wrapping";

fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect(OVERFLOW_MSG)
}

fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect(OVERFLOW_MSG)
}

/// Coefficients of the e-th cyclotomic polynomial, ascending degree,
/// computed by exact division of x^e - 1 by the lower-index cyclotomic
/// polynomials.
pub fn cyclotomic_poly(e: i64) -> Result<Vec<i64>> {
    if e < 1 {
        return Err(Error::InvalidConductor(e));
    }
    let e = e as u64;
    let mut known: Vec<(u64, Vec<i64>)> = Vec::new();
    for d in divisors(e) {
        // x^d - 1
        let mut num = vec![0i64; d as usize + 1];
        num[0] = -1;
        num[d as usize] = 1;
        let mut den = vec![1i64];
        for &(d2, ref poly) in &known {
            if d % d2 == 0 {
                den = poly_mul(&den, poly);
            }
        }
        let phi_d = poly_div_exact(&num, &den).expect("x^d - 1 divisible by lower factors");
        known.push((d, phi_d));
    }
    Ok(known.pop().expect("divisor list nonempty").1)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = cadd(out[i + j], cmul(x, y));
        }
    }
    out
}

/// Exact division by a monic divisor; None when a remainder is left.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        return rem.iter().all(|&c| c == 0).then_some(vec![0]);
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        if c == 0 {
            continue;
        }
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] = cadd(rem[i + j], -cmul(c, d));
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quot)
}

/// Remainder of `poly` modulo the monic `m`.
fn poly_rem(poly: &[i64], m: &[i64]) -> Vec<i64> {
    let dm = m.len() - 1;
    let mut rem = poly.to_vec();
    for i in (dm..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        // subtract c * x^{i-dm} * m
        for (j, &d) in m.iter().enumerate() {
            rem[i - dm + j] = cadd(rem[i - dm + j], -cmul(c, d));
        }
    }
    rem.truncate(dm.max(1));
    rem.resize(dm.max(1), 0);
    rem
}

/// An element of `Z[zeta_e]`, reduced mod the e-th cyclotomic polynomial.
/// Coefficient vector has length phi(e), basis 1, zeta, ..., zeta^{phi(e)-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicInteger {
    conductor: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(conductor: u64) -> Self {
        let deg = euler_phi(conductor).max(1) as usize;
        Self {
            conductor,
            coeffs: vec![0; deg],
        }
    }

    pub fn from_integer(conductor: u64, value: i64) -> Self {
        let mut out = Self::zero(conductor);
        out.coeffs[0] = value;
        out
    }

    /// zeta_e^t, reduced.
    pub fn root_power(conductor: u64, t: u64) -> Result<Self> {
        let t = (t % conductor.max(1)) as usize;
        let mut poly = vec![0i64; t + 1];
        poly[t] = 1;
        Self::from_poly(conductor, &poly)
    }

    /// Builds from an arbitrary-degree integer polynomial in zeta_e.
    /// Exponents are folded mod e and the result is reduced mod Phi_e.
    pub fn from_poly(conductor: u64, poly: &[i64]) -> Result<Self> {
        if conductor < 1 {
            return Err(Error::InvalidConductor(conductor as i64));
        }
        let e = conductor as usize;
        let mut folded = vec![0i64; e];
        for (i, &c) in poly.iter().enumerate() {
            folded[i % e] = cadd(folded[i % e], c);
        }
        let phi = cyclotomic_poly(conductor as i64)?;
        let rem = poly_rem(&folded, &phi);
        Ok(Self {
            conductor,
            coeffs: rem,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_conductor(&self, other: &Self) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| cadd(a, b))
            .collect();
        Ok(Self {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| cadd(a, -b))
            .collect();
        Ok(Self {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        Self::from_poly(self.conductor, &prod)
    }

    /// Complex conjugation: zeta |-> zeta^{e-1}.
    pub fn conj(&self) -> Self {
        let e = self.conductor as usize;
        let mut poly = vec![0i64; e];
        for (j, &c) in self.coeffs.iter().enumerate() {
            poly[(e - j % e) % e] = cadd(poly[(e - j % e) % e], c);
        }
        Self::from_poly(self.conductor, &poly).expect("valid conductor")
    }

    /// a * conj(a); real, and a rational integer whenever e divides 4.
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj()).expect("same conductor")
    }

    /// The integer value when all non-constant coefficients vanish.
    pub fn as_rational_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    /// Real iff fixed by conjugation.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Numeric embedding at zeta_e = exp(2 pi i / e), for cross-checks only.
    pub fn approx(&self) -> (f64, f64) {
        let e = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let th = 2.0 * std::f64::consts::PI * j as f64 / e;
            re += c as f64 * th.cos();
            im += c as f64 * th.sin();
        }
        (re, im)
    }

    /// Compact Gaussian view when the conductor divides 4.
    pub(crate) fn to_gauss(&self) -> Option<Gauss> {
        match self.conductor {
            1 | 2 => Some(Gauss {
                re: self.coeffs[0],
                im: 0,
            }),
            4 => Some(Gauss {
                re: self.coeffs[0],
                im: self.coeffs[1],
            }),
            _ => None,
        }
    }

    pub(crate) fn from_gauss(conductor: u64, g: Gauss) -> Self {
        match conductor {
            1 | 2 => {
                debug_assert_eq!(g.im, 0, "imaginary part must vanish for conductor {conductor}");
                Self {
                    conductor,
                    coeffs: vec![g.re],
                }
            }
            4 => Self {
                conductor,
                coeffs: vec![g.re, g.im],
            },
            _ => unreachable!("Gaussian fast path only covers conductors dividing 4"),
        }
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.conductor;
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let term = match j {
                0 => format!("{mag}"),
                _ if mag == 1 => format!("ζ{e}^{j}"),
                _ => format!("{mag}ζ{e}^{j}"),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Gaussian integer used by the conductor-dividing-4 fast paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub(crate) struct Gauss {
    pub re: i64,
    pub im: i64,
}

impl Gauss {
    pub const ZERO: Gauss = Gauss { re: 0, im: 0 };

    pub fn add(self, other: Gauss) -> Gauss {
        Gauss {
            re: cadd(self.re, other.re),
            im: cadd(self.im, other.im),
        }
    }

    /// Multiplication by i^q.
    pub fn rot(self, q: u8) -> Gauss {
        match q & 3 {
            0 => self,
            1 => Gauss {
                re: -self.im,
                im: self.re,
            },
            2 => Gauss {
                re: -self.re,
                im: -self.im,
            },
            _ => Gauss {
                re: self.im,
                im: -self.re,
            },
        }
    }

    pub fn norm_sq(self) -> i64 {
        cadd(cmul(self.re, self.re), cmul(self.im, self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_poly_table() {
        // Textbook values for small conductors.
        let cases: &[(i64, &[i64])] = &[
            (1, &[-1, 1]),
            (2, &[1, 1]),
            (3, &[1, 1, 1]),
            (4, &[1, 0, 1]),
            (5, &[1, 1, 1, 1, 1]),
            (6, &[1, -1, 1]),
            (8, &[1, 0, 0, 0, 1]),
            (9, &[1, 0, 0, 1, 0, 0, 1]),
            (10, &[1, -1, 1, -1, 1]),
            (12, &[1, 0, -1, 0, 1]),
        ];
        for &(e, expected) in cases {
            assert_eq!(cyclotomic_poly(e).unwrap(), expected, "Phi_{e}");
        }
        assert!(matches!(
            cyclotomic_poly(0),
            Err(Error::InvalidConductor(0))
        ));
    }

    #[test]
    fn product_of_divisor_polys_is_xe_minus_1() {
        for e in 1u64..=24 {
            let mut prod = vec![1i64];
            for d in divisors(e) {
                prod = poly_mul(&prod, &cyclotomic_poly(d as i64).unwrap());
            }
            let mut expected = vec![0i64; e as usize + 1];
            expected[0] = -1;
            expected[e as usize] = 1;
            assert_eq!(prod, expected, "prod over divisors of {e}");
        }
    }

    #[test]
    fn gaussian_identities() {
        let i = CyclotomicInteger::root_power(4, 1).unwrap();
        let i3 = CyclotomicInteger::root_power(4, 3).unwrap();
        assert!(i.add(&i3).unwrap().is_zero());

        let one_plus_i = CyclotomicInteger::from_poly(4, &[1, 1]).unwrap();
        let sq = one_plus_i.mul(&one_plus_i).unwrap();
        assert_eq!(sq.coeffs(), &[0, 2]); // 2i
        assert_eq!(one_plus_i.conj().coeffs(), &[1, -1]);
        assert_eq!(one_plus_i.norm_sq().as_rational_integer(), Some(2));
        assert_eq!(sq.norm_sq().as_rational_integer(), Some(4));
        assert_eq!(
            CyclotomicInteger::zero(4).norm_sq().as_rational_integer(),
            Some(0)
        );
    }

    #[test]
    fn rational_integer_detection() {
        let two = CyclotomicInteger::from_integer(4, 2);
        assert_eq!(two.as_rational_integer(), Some(2));
        let i = CyclotomicInteger::root_power(4, 1).unwrap();
        assert_eq!(i.as_rational_integer(), None);
        let zero = i
            .add(&CyclotomicInteger::root_power(4, 3).unwrap())
            .unwrap();
        assert_eq!(zero.as_rational_integer(), Some(0));
    }

    #[test]
    fn conductor_mismatch_rejected() {
        let a = CyclotomicInteger::from_integer(4, 1);
        let b = CyclotomicInteger::from_integer(3, 1);
        assert!(matches!(a.add(&b), Err(Error::ConductorMismatch(4, 3))));
    }

    #[test]
    fn e4_realness_is_vanishing_imaginary_coeff() {
        for re in -3i64..=3 {
            for im in -3i64..=3 {
                let v = CyclotomicInteger::from_poly(4, &[re, im]).unwrap();
                assert_eq!(v.is_real(), im == 0);
                assert!(v.norm_sq().is_real());
            }
        }
    }

    fn arb_cyc(e: u64) -> impl Strategy<Value = CyclotomicInteger> {
        let deg = euler_phi(e).max(1) as usize;
        proptest::collection::vec(-100i64..=100, deg).prop_map(move |coeffs| {
            CyclotomicInteger::from_poly(e, &coeffs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn conj_is_involution(e in prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 12]),
                              seed in 0u64..1 << 16) {
            // derive coefficients from the seed for a quick spread
            let deg = euler_phi(e).max(1) as usize;
            let coeffs: Vec<i64> = (0..deg).map(|i| ((seed >> i) & 0xff) as i64 - 128).collect();
            let a = CyclotomicInteger::from_poly(e, &coeffs).unwrap();
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn norm_is_multiplicative((a, b) in prop::sample::select(vec![1u64, 2, 3, 4, 6, 8, 12])
            .prop_flat_map(|e| (arb_cyc(e), arb_cyc(e)))) {
            let lhs = a.mul(&b).unwrap().norm_sq();
            let rhs = a.norm_sq().mul(&b.norm_sq()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn float_embedding_is_homomorphic((a, b) in prop::sample::select(vec![3u64, 4, 5, 6, 8, 12])
            .prop_flat_map(|e| (arb_cyc(e), arb_cyc(e)))) {
            let (ar, ai) = a.approx();
            let (br, bi) = b.approx();
            let (pr, pi) = a.mul(&b).unwrap().approx();
            let er = ar * br - ai * bi;
            let ei = ar * bi + ai * br;
            // coefficients are <= 100, so absolute tolerance is meaningful
            prop_assert!((pr - er).abs() < 1e-9 && (pi - ei).abs() < 1e-9,
                "({pr},{pi}) vs ({er},{ei})");
        }
    }

    #[test]
    fn gauss_matches_cyclotomic() {
        for re in -4i64..=4 {
            for im in -4i64..=4 {
                let g = Gauss { re, im };
                let c = CyclotomicInteger::from_gauss(4, g);
                assert_eq!(c.to_gauss(), Some(g));
                assert_eq!(c.norm_sq().as_rational_integer(), Some(g.norm_sq()));
                for q in 0u8..4 {
                    let rot = CyclotomicInteger::from_gauss(4, g.rot(q));
                    let zeta = CyclotomicInteger::root_power(4, q as u64).unwrap();
                    assert_eq!(rot, c.mul(&zeta).unwrap());
                }
            }
        }
    }
}
