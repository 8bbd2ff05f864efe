//! Exact character evaluation, character sums, squared-character spectra
//! and Fourier inversion over finite abelian groups.
//!
//! The canonical isomorphism z |-> chi_z is fixed coordinate-wise:
//! chi_z(g) = zeta_e^{k(z,g)} with k(z,g) = sum_i (e/n_i) z_i g_i mod e,
//! where e is the group exponent. The `Fast` method performs one exact DFT
//! per axis in O(|G| * sum n_i) ring operations; `Naive` evaluates each
//! character sum directly and serves as the test oracle. When e divides 4
//! the transform runs on machine-width Gaussian integers; otherwise values
//! are carried in the power basis of `Z[x]/(x^e - 1)` and reduced modulo the
//! cyclotomic polynomial at the boundary.

use crate::cyclotomic::{CyclotomicInteger, Gauss};
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::par;
use crate::ring::{GroupRingElement, SpectrumMultiset};

/// Which spectrum algorithm to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMethod {
    Naive,
    Fast,
}

/// The exponent k in chi_z(g) = zeta_e^k; bilinear and symmetric in (z, g).
pub fn char_exponent(
    group: &FiniteAbelianGroup,
    z: &GroupElement,
    g: &GroupElement,
) -> Result<u64> {
    group.check_member(z)?;
    group.check_member(g)?;
    let e = group.exponent();
    let mut k = 0u64;
    for ((&zi, &gi), &ni) in z
        .coords()
        .iter()
        .zip(g.coords())
        .zip(group.factor_orders())
    {
        k = (k + (e / ni as u64) * zi as u64 % e * gi as u64) % e;
    }
    Ok(k)
}

/// chi_z(g) as an exact cyclotomic integer.
pub fn char_value(
    group: &FiniteAbelianGroup,
    z: &GroupElement,
    g: &GroupElement,
) -> Result<CyclotomicInteger> {
    let k = char_exponent(group, z, g)?;
    CyclotomicInteger::root_power(group.exponent(), k)
}

/// The character sum chi_z(A) = sum_g a_g zeta_e^{k(z,g)}, exact.
pub fn char_sum(z: &GroupElement, a: &GroupRingElement) -> Result<CyclotomicInteger> {
    let group = a.group();
    group.check_member(z)?;
    let e = group.exponent();
    let mut by_exponent = vec![0i64; e as usize];
    for (r, &c) in a.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let g = group.unrank(r as u64);
        let k = char_exponent(group, z, &g)? as usize;
        by_exponent[k] = by_exponent[k]
            .checked_add(c)
            .expect("character sum overflow");
    }
    CyclotomicInteger::from_poly(e, &by_exponent)
}

/// Axis-wise exact transform over Gaussian integers; requires e | 4.
/// `inverse` negates every twiddle exponent.
fn transform_gauss(group: &FiniteAbelianGroup, init: Vec<Gauss>, inverse: bool) -> Vec<Gauss> {
    let orders = group.factor_orders();
    let total = init.len();
    let mut cur = init;
    let mut next = vec![Gauss::ZERO; total];
    let mut inner: u64 = total as u64;
    for &ni in orders {
        let n = ni as u64;
        inner /= n;
        let step = (4 / n) as u8; // zeta_e^{(e/n)jk} = i^{(4/n)jk}
        let prev = &cur;
        par::for_each_chunk_mut(&mut next, 4096, |base, chunk| {
            for (off, slot) in chunk.iter_mut().enumerate() {
                let idx = (base + off) as u64;
                let r = idx % inner;
                let j = (idx / inner) % n;
                let o = idx / (inner * n);
                let in_base = o * n * inner + r;
                let mut acc = Gauss::ZERO;
                for k in 0..n {
                    let mut q = (step as u64 * j * k % 4) as u8;
                    if inverse {
                        q = (4 - q) & 3;
                    }
                    acc = acc.add(prev[(in_base + k * inner) as usize].rot(q));
                }
                *slot = acc;
            }
        });
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// Axis-wise exact transform for arbitrary exponent. Values are carried in
/// the power basis of `Z[x]/(x^e - 1)`, where multiplying by zeta^t is an
/// index rotation.
fn transform_generic(
    group: &FiniteAbelianGroup,
    init: Vec<Vec<i64>>,
    inverse: bool,
) -> Vec<Vec<i64>> {
    let orders = group.factor_orders();
    let e = group.exponent();
    let total = init.len();
    let mut cur = init;
    let mut next = vec![vec![0i64; e as usize]; total];
    let mut inner: u64 = total as u64;
    for &ni in orders {
        let n = ni as u64;
        inner /= n;
        let step = e / n;
        let prev = &cur;
        par::for_each_chunk_mut(&mut next, 1024, |base, chunk| {
            for (off, slot) in chunk.iter_mut().enumerate() {
                let idx = (base + off) as u64;
                let r = idx % inner;
                let j = (idx / inner) % n;
                let o = idx / (inner * n);
                let in_base = o * n * inner + r;
                slot.iter_mut().for_each(|c| *c = 0);
                for k in 0..n {
                    let mut t = step * j * k % e;
                    if inverse {
                        t = (e - t) % e;
                    }
                    let src = &prev[(in_base + k * inner) as usize];
                    for (p, &c) in src.iter().enumerate() {
                        if c != 0 {
                            let q = (p + t as usize) % e as usize;
                            slot[q] = slot[q].checked_add(c).expect("character sum overflow");
                        }
                    }
                }
            }
        });
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

fn gauss_forward(a: &GroupRingElement, inverse: bool) -> Vec<Gauss> {
    let init: Vec<Gauss> = a
        .coeffs()
        .iter()
        .map(|&c| Gauss { re: c, im: 0 })
        .collect();
    transform_gauss(a.group(), init, inverse)
}

fn generic_forward(a: &GroupRingElement, inverse: bool) -> Vec<Vec<i64>> {
    let e = a.group().exponent() as usize;
    let init: Vec<Vec<i64>> = a
        .coeffs()
        .iter()
        .map(|&c| {
            let mut v = vec![0i64; e];
            v[0] = c;
            v
        })
        .collect();
    transform_generic(a.group(), init, inverse)
}

fn uses_gauss(group: &FiniteAbelianGroup) -> bool {
    4 % group.exponent() == 0
}

/// Gaussian-integer character sums when the exponent divides 4; the
/// allocation-free path for in-family groups.
pub(crate) fn gauss_char_sums(a: &GroupRingElement) -> Option<Vec<Gauss>> {
    uses_gauss(a.group()).then(|| gauss_forward(a, false))
}

/// All character sums chi_z(A) in dense rank order of z.
pub fn char_sums(a: &GroupRingElement, method: SpectrumMethod) -> Result<Vec<CyclotomicInteger>> {
    let group = a.group();
    let e = group.exponent();
    match method {
        SpectrumMethod::Naive => (0..group.order())
            .map(|rz| char_sum(&group.unrank(rz), a))
            .collect(),
        SpectrumMethod::Fast => {
            if uses_gauss(group) {
                Ok(gauss_forward(a, false)
                    .into_iter()
                    .map(|g| CyclotomicInteger::from_gauss(e, g))
                    .collect())
            } else {
                gauss_free_sums(a)
            }
        }
    }
}

fn gauss_free_sums(a: &GroupRingElement) -> Result<Vec<CyclotomicInteger>> {
    let e = a.group().exponent();
    generic_forward(a, false)
        .into_iter()
        .map(|v| CyclotomicInteger::from_poly(e, &v))
        .collect()
}

/// Full squared character spectrum |chi_z(A)|^2 in dense z order. Both
/// methods agree exactly; `Naive` stays around as the oracle.
pub fn sq_spectrum(
    a: &GroupRingElement,
    method: SpectrumMethod,
) -> Result<Vec<CyclotomicInteger>> {
    let group = a.group();
    let e = group.exponent();
    if method == SpectrumMethod::Fast && uses_gauss(group) {
        return Ok(gauss_forward(a, false)
            .into_iter()
            .map(|g| CyclotomicInteger::from_integer(e, g.norm_sq()))
            .collect());
    }
    Ok(char_sums(a, method)?
        .into_iter()
        .map(|v| v.norm_sq())
        .collect())
}

/// Squared spectrum as rational integers; errors when some value is
/// irrational (possible only when the exponent does not divide 4).
pub fn sq_spectrum_ints(a: &GroupRingElement, method: SpectrumMethod) -> Result<Vec<i64>> {
    let group = a.group();
    if method == SpectrumMethod::Fast && uses_gauss(group) {
        return Ok(gauss_forward(a, false)
            .into_iter()
            .map(|g| g.norm_sq())
            .collect());
    }
    sq_spectrum(a, method)?
        .into_iter()
        .enumerate()
        .map(|(rz, v)| {
            v.as_rational_integer()
                .ok_or(Error::IrrationalSpectrum(rz as u64))
        })
        .collect()
}

/// The character spectrum of A as a multiset of integers.
pub fn character_spectrum(a: &GroupRingElement) -> Result<SpectrumMultiset> {
    Ok(SpectrumMultiset::from_values(
        sq_spectrum_ints(a, SpectrumMethod::Fast)?,
    ))
}

/// Fourier inversion: recovers the unique A with `chi_z(A) = values[z]` for
/// every z, via `a_g = (1/|G|) sum_z values[z] * conj(chi_z(g))`. Exact
/// integer division with a checked remainder; anything non-integral means
/// the values are not the transform of an integer group ring element.
pub fn fourier_invert(
    group: &FiniteAbelianGroup,
    values: &[CyclotomicInteger],
) -> Result<GroupRingElement> {
    if values.len() as u64 != group.order() {
        return Err(Error::GroupMismatch(format!(
            "expected {} character values, got {}",
            group.order(),
            values.len()
        )));
    }
    let e = group.exponent();
    for v in values {
        if v.conductor() != e {
            return Err(Error::ConductorMismatch(e, v.conductor()));
        }
    }
    let n = group.order() as i64;
    let mut coeffs = Vec::with_capacity(values.len());
    if uses_gauss(group) {
        let init: Vec<Gauss> = values
            .iter()
            .map(|v| v.to_gauss().expect("conductor divides 4"))
            .collect();
        for (rg, g) in transform_gauss(group, init, true).into_iter().enumerate() {
            if g.im != 0 || g.re % n != 0 {
                return Err(Error::NotAGroupRingElement(rg as u64));
            }
            coeffs.push(g.re / n);
        }
    } else {
        let init: Vec<Vec<i64>> = values
            .iter()
            .map(|v| {
                let mut p = vec![0i64; e as usize];
                for (j, &c) in v.coeffs().iter().enumerate() {
                    p[j] = c;
                }
                p
            })
            .collect();
        for (rg, p) in transform_generic(group, init, true).into_iter().enumerate() {
            let value = CyclotomicInteger::from_poly(e, &p)?;
            match value.as_rational_integer() {
                Some(v) if v % n == 0 => coeffs.push(v / n),
                _ => return Err(Error::NotAGroupRingElement(rg as u64)),
            }
        }
    }
    GroupRingElement::from_coeffs(group.clone(), coeffs)
}
