//! The reproduction self-test suite: ten deterministic criteria covering
//! the base pair, both example pairs, the three families, the supporting
//! lemmas, the odd-power impossibility, transform correctness, verifier
//! invariances and the small-group searches. Every expected value is an
//! exact integer; randomized criteria run from fixed ChaCha20 seeds so two
//! runs print identical bytes.

use crate::characters::{char_sums, fourier_invert, sq_spectrum, sq_spectrum_ints, SpectrumMethod};
use crate::constructions::{
    base_set, block_b, dircon1, dircon2, dircon2_inductive, lift_pair, mix,
    predict_dircon1_spectrum, predict_dircon2_theta, predict_mix_theta, BaseSet,
};
use crate::cyclotomic::CyclotomicInteger;
use crate::duality::{
    partner_feasibility, verify_formally_dual, verify_primitive, Direction,
};
use crate::error::Result;
use crate::group::{ElementSet, FiniteAbelianGroup, GroupElement};
use crate::ring::{difference_spectrum, theta, GroupRingElement};
use crate::search::{equivalence_bruteforce, exhaustive_pairs, SearchTask};
use crate::arith::binomial;
use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use std::time::{Duration, Instant};

/// Outcome of one criterion. `detail` is deterministic on success; timing
/// lives only in `elapsed` so printed output stays byte-identical.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub budget: Duration,
    pub elapsed: Duration,
}

pub const CRITERIA: [(u32, &str, u64); 10] = [
    (1, "base-pair", 1),
    (2, "examples", 1),
    (3, "dircon1-family", 120),
    (4, "dircon2-family", 120),
    (5, "mix-family", 120),
    (6, "lemma-suite", 120),
    (7, "negative-check", 120),
    (8, "transforms", 120),
    (9, "invariance", 120),
    (10, "search", 300),
];

/// Runs one criterion by id (1..=10).
pub fn run_criterion(id: u32) -> CriterionOutcome {
    let (_, name, budget_secs) = CRITERIA
        .iter()
        .find(|(cid, _, _)| *cid == id)
        .copied()
        .unwrap_or((id, "unknown", 1));
    let budget = Duration::from_secs(budget_secs);
    let start = Instant::now();
    let result = match id {
        1 => criterion_base_pair(),
        2 => criterion_examples(),
        3 => criterion_dircon1_family(),
        4 => criterion_dircon2_family(),
        5 => criterion_mix_family(),
        6 => criterion_lemma_suite(),
        7 => criterion_negative_check(),
        8 => criterion_transforms(),
        9 => criterion_invariance(),
        10 => criterion_search(),
        _ => Err(format!("unknown criterion {id}")),
    };
    let elapsed = start.elapsed();
    let (mut passed, detail) = match result {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    let detail = if elapsed > budget {
        passed = false;
        format!("{detail} [exceeded budget: {elapsed:?} > {budget:?}]")
    } else {
        detail
    };
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        budget,
        elapsed,
    }
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|&(id, _, _)| run_criterion(id)).collect()
}

type Check = std::result::Result<String, String>;

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

fn ensure(cond: bool, msg: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn coords_list(set: &ElementSet) -> Vec<Vec<u32>> {
    set.elements().map(|e| e.coords().to_vec()).collect()
}

fn verify_pair_fully(s: &ElementSet, t: &ElementSet, what: &str) -> std::result::Result<(), String> {
    let rep = lib(verify_formally_dual(s, t, Direction::Both))?;
    ensure(rep.ok, &format!("{what}: duality failed: {rep}"))?;
    let ps = lib(verify_primitive(s))?;
    ensure(
        ps.is_primitive() && ps.character_criterion_agrees,
        &format!("{what}: S not primitive ({ps})"),
    )?;
    let pt = lib(verify_primitive(t))?;
    ensure(
        pt.is_primitive() && pt.character_criterion_agrees,
        &format!("{what}: T not primitive ({pt})"),
    )?;
    Ok(())
}

fn criterion_base_pair() -> Check {
    let g = FiniteAbelianGroup::new(&[4]).map_err(|e| e.to_string())?;
    let j = lib(ElementSet::from_ranks(g.clone(), vec![0, 1]))?;
    let rep = lib(verify_formally_dual(&j, &j, Direction::Both))?;
    ensure(rep.ok, &format!("(J,J) failed: {rep}"))?;
    let elem = GroupRingElement::from_set(&j);
    for method in [SpectrumMethod::Fast, SpectrumMethod::Naive] {
        let spec = lib(sq_spectrum_ints(&elem, method))?;
        ensure(
            spec == vec![4, 2, 0, 2],
            &format!("spectrum {spec:?} != [4,2,0,2]"),
        )?;
    }
    Ok("(J,J) dual in Z4 both directions; |chi(J)|^2 = [4,2,0,2]".into())
}

fn criterion_examples() -> Check {
    let p1 = lib(dircon1(1))?;
    let tito_s = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 1, 1]];
    let tito_t = vec![
        vec![0, 0, 0],
        vec![0, 0, 1],
        vec![0, 1, 0],
        vec![0, 1, 1],
        vec![1, 0, 0],
        vec![1, 0, 3],
        vec![1, 3, 0],
        vec![1, 3, 3],
    ];
    ensure(coords_list(p1.s()) == tito_s, "dircon1(1) S mismatch")?;
    ensure(coords_list(p1.t()) == tito_t, "dircon1(1) T mismatch")?;

    let p2 = lib(dircon2(1))?;
    let teich_s = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 3, 3]];
    let teich_t = vec![
        vec![0, 0, 0],
        vec![0, 0, 1],
        vec![0, 1, 0],
        vec![0, 3, 3],
        vec![1, 0, 0],
        vec![1, 0, 3],
        vec![1, 1, 1],
        vec![1, 3, 0],
    ];
    ensure(coords_list(p2.s()) == teich_s, "dircon2(1) S mismatch")?;
    ensure(coords_list(p2.t()) == teich_t, "dircon2(1) T mismatch")?;

    verify_pair_fully(p1.s(), p1.t(), "dircon1(1)")?;
    verify_pair_fully(p2.s(), p2.t(), "dircon2(1)")?;
    ensure(theta(p1.t()) == 9, "theta(dircon1(1).T) != 9")?;
    ensure(theta(p2.t()) == 9, "theta(dircon2(1).T) != 9")?;
    Ok("both example pairs emitted verbatim, primitive formally dual, theta = 9".into())
}

fn criterion_dircon1_family() -> Check {
    let mut verify_m3 = Duration::ZERO;
    for m in 1..=3u32 {
        let pair = lib(dircon1(m))?;
        let t0 = Instant::now();
        verify_pair_fully(pair.s(), pair.t(), &format!("dircon1({m})"))?;
        if m == 3 {
            verify_m3 = t0.elapsed();
        }
    }
    ensure(
        verify_m3 <= Duration::from_secs(60),
        &format!("m=3 verification exceeded 60 s ({verify_m3:?})"),
    )?;
    let mut spectrum_m4 = Duration::ZERO;
    for m in 1..=4u32 {
        let pair = lib(dircon1(m))?;
        let t0 = Instant::now();
        let spec = difference_spectrum(pair.t());
        let predicted = lib(predict_dircon1_spectrum(m))?;
        ensure(
            spec == predicted,
            &format!("spectrum mismatch at m={m}: computed {spec} vs {predicted}"),
        )?;
        if m == 4 {
            spectrum_m4 = t0.elapsed();
        }
    }
    ensure(
        spectrum_m4 <= Duration::from_secs(60),
        &format!("m=4 spectrum exceeded 60 s ({spectrum_m4:?})"),
    )?;
    Ok("verified m=1..3; brute-force T' spectrum = closed form for m=1..4".into())
}

fn criterion_dircon2_family() -> Check {
    for m in 1..=3u32 {
        let direct = lib(dircon2(m))?;
        verify_pair_fully(direct.s(), direct.t(), &format!("dircon2({m})"))?;
        let inductive = lib(dircon2_inductive(m))?;
        ensure(
            direct.s() == inductive.s() && direct.t() == inductive.t(),
            &format!("direct and inductive dircon2({m}) differ"),
        )?;
    }
    for m in 1..=4u32 {
        let pair = lib(dircon2(m))?;
        let computed = theta(pair.t());
        let predicted = lib(predict_dircon2_theta(m))?;
        ensure(
            computed == predicted,
            &format!("theta mismatch at m={m}: {computed} vs {predicted}"),
        )?;
    }
    Ok("verified m=1..3 (direct = inductive); theta = 2^(4m+1)-13^m-10^m for m=1..4".into())
}

fn criterion_mix_family() -> Check {
    let mut thetas = Vec::new();
    for m1 in 0..=2u32 {
        let pair = lib(mix(m1, 2 - m1))?;
        verify_pair_fully(pair.s(), pair.t(), &format!("mix({m1},{})", 2 - m1))?;
        thetas.push(theta(pair.t()));
    }
    thetas.sort_unstable();
    ensure(
        thetas == vec![243, 255, 285],
        &format!("m=2 thetas {thetas:?} != [243, 255, 285]"),
    )?;
    for m in 2..=5u32 {
        let mut predicted: Vec<u64> = Vec::new();
        for m1 in 0..=m {
            predicted.push(lib(predict_mix_theta(m1, m - m1))?);
        }
        let mut sorted = predicted.clone();
        sorted.sort_unstable();
        sorted.dedup();
        ensure(
            sorted.len() == (m + 1) as usize,
            &format!("predicted thetas at m={m} not pairwise distinct: {predicted:?}"),
        )?;
        if m <= 3 {
            for m1 in 0..=m {
                let pair = lib(mix(m1, m - m1))?;
                let computed = theta(pair.t());
                ensure(
                    computed == predicted[m1 as usize],
                    &format!("mix({m1},{}) theta {computed} != {}", m - m1, predicted[m1 as usize]),
                )?;
            }
        }
    }
    Ok("all m=2 splits verify with thetas {243,255,285}; m+1 predicted thetas distinct for m=2..5, matching computed theta for m<=3".into())
}

/// Weight profile of an element of Z4^n: counts of coordinates equal to
/// 1, 2 and 3.
fn weight_profile(e: &GroupElement) -> (u32, u32, u32) {
    let mut w = (0, 0, 0);
    for &c in e.coords() {
        match c {
            1 => w.0 += 1,
            2 => w.1 += 1,
            3 => w.2 += 1,
            _ => {}
        }
    }
    w
}

fn criterion_lemma_suite() -> Check {
    // (a) block-coefficient lemma: [B_{m,u+h} B_{m,v+h}^{(-1)}]_x =
    //     C(2m-u-v, h) on C_{m,u,v}, and the iff support condition.
    for m in 1..=3u32 {
        let n = 2 * m;
        let group = FiniteAbelianGroup::new(&vec![4u32; n as usize]).map_err(|e| e.to_string())?;
        let blocks: Vec<GroupRingElement> = (0..=n)
            .map(|i| Ok(GroupRingElement::from_set(&lib(block_b(m, i))?)))
            .collect::<std::result::Result<_, String>>()?;
        for u in 0..=n {
            for v in 0..=(n - u) {
                let c_class: Vec<u64> = (0..group.order())
                    .filter(|&r| {
                        let (w1, w2, w3) = weight_profile(&group.unrank(r));
                        w1 == u && w3 == v && w2 == 0
                    })
                    .collect();
                for h in 0..=(n - u - v) {
                    let prod = lib(blocks[(u + h) as usize].product(&blocks[(v + h) as usize].involution()))?;
                    let expected = binomial((n - u - v) as u64, h as u64) as i64;
                    for &r in &c_class {
                        ensure(
                            prod.coeffs()[r as usize] == expected,
                            &format!(
                                "block lemma fails at m={m} u={u} v={v} h={h} rank {r}: {} != {expected}",
                                prod.coeffs()[r as usize]
                            ),
                        )?;
                    }
                }
                if m <= 2 && !c_class.is_empty() {
                    for i in 0..=n {
                        for j in 0..=n {
                            let prod = lib(blocks[i as usize].product(&blocks[j as usize].involution()))?;
                            let contained = c_class
                                .iter()
                                .all(|&r| prod.coeffs()[r as usize] > 0);
                            let exists_h = (0..=(n - u - v))
                                .any(|h| i == u + h && j == v + h);
                            ensure(
                                contained == exists_h,
                                &format!("block iff fails at m={m} u={u} v={v} i={i} j={j}"),
                            )?;
                        }
                    }
                }
            }
        }
    }

    // (b) and (c): the four-case formulas over the dircon1 base.
    for m in 1..=3u32 {
        let pair = lib(dircon1(m))?;
        let (s0, s1) = pair.base_partition();
        let group = pair.base_group().clone();
        let n = 2 * m;
        let e0 = GroupRingElement::from_set(s0);
        let e1 = GroupRingElement::from_set(s1);
        let partition_autocorr = lib(lib(e0.product(&e0.involution()))?
            .add(&lib(e1.product(&e1.involution()))?))?;
        let t_elem = GroupRingElement::from_set(pair.base_t());
        let sym = lib(t_elem.add(&t_elem.involution()))?;
        let sym_spectrum = lib(sq_spectrum_ints(&sym, SpectrumMethod::Fast))?;
        for r in 0..group.order() {
            let (w1, w2, w3) = weight_profile(&group.unrank(r));
            let (expected_b, expected_c) = if w2 > 0 {
                (0, 0)
            } else {
                let (u, v) = (w1, w3);
                match (u as i32 - v as i32).rem_euclid(4) {
                    0 => (
                        1i64 << (n - u - v),
                        1i64 << (4 * m + 2 - u - v),
                    ),
                    2 => (0, 0),
                    _ => (
                        1i64 << (n - u - v - 1),
                        1i64 << (4 * m + 1 - u - v),
                    ),
                }
            };
            ensure(
                partition_autocorr.coeffs()[r as usize] == expected_b,
                &format!(
                    "S0S0^- + S1S1^- fails at m={m} rank {r}: {} != {expected_b}",
                    partition_autocorr.coeffs()[r as usize]
                ),
            )?;
            ensure(
                sym_spectrum[r as usize] == expected_c,
                &format!(
                    "|chi(T+T^-)|^2 fails at m={m} rank {r}: {} != {expected_c}",
                    sym_spectrum[r as usize]
                ),
            )?;
        }
    }

    // (d) TT-difference lemmas for the J-power base, m <= 2.
    for m in 1..=2u32 {
        let pair = lib(dircon1(m))?;
        let group = pair.base_group().clone();
        let t_elem = GroupRingElement::from_set(pair.base_t());
        let diff = lib(t_elem.product(&t_elem.involution()))?;
        let square = lib(t_elem.product(&t_elem))?;
        let n = 2 * m;
        for r in 0..group.order() {
            let (w1, w2, w3) = weight_profile(&group.unrank(r));
            let expected_diff = if w2 > 0 { 0 } else { 1i64 << (n - w1 - w3) };
            ensure(
                diff.coeffs()[r as usize] == expected_diff,
                &format!("TT^- lemma fails at m={m} rank {r}"),
            )?;
            let expected_sq = if w3 > 0 { 0 } else { 1i64 << w1 };
            ensure(
                square.coeffs()[r as usize] == expected_sq,
                &format!("TT lemma fails at m={m} rank {r}"),
            )?;
        }
    }

    // (e) support sizes 13^m and 10^m for the L-power base, m <= 3, and
    //     the LL = Y + 2I identity.
    let l = GroupRingElement::from_set(&base_set(BaseSet::L));
    let y = GroupRingElement::from_set(&base_set(BaseSet::Y));
    let i_set = GroupRingElement::from_set(&base_set(BaseSet::I));
    let expected = lib(y.add(&i_set.scale(2)))?;
    ensure(lib(l.product(&l))? == expected, "LL != Y + 2I")?;
    for m in 1..=3u32 {
        let pair = lib(dircon2(m))?;
        let t_elem = GroupRingElement::from_set(pair.base_t());
        let diff_support = lib(t_elem.product(&t_elem.involution()))?.support_size();
        ensure(
            diff_support == 13u64.pow(m),
            &format!("|{{TT^-}}| = {diff_support} != 13^{m}"),
        )?;
        let sq_support = lib(t_elem.product(&t_elem))?.support_size();
        ensure(
            sq_support == 10u64.pow(m),
            &format!("|{{TT}}| = {sq_support} != 10^{m}"),
        )?;
    }
    Ok("block lemma (with iff), both four-case formulas (m<=3), TT lemmas (m<=2), supports 13^m/10^m (m<=3), LL = Y+2I".into())
}

fn criterion_negative_check() -> Check {
    for m in 1..=2u32 {
        let n = 2 * m + 1;
        let group = FiniteAbelianGroup::new(&vec![4u32; n as usize]).map_err(|e| e.to_string())?;
        let ranks: Vec<u64> = (0..group.order())
            .filter(|&r| group.unrank(r).coords().iter().all(|&c| c <= 1))
            .collect();
        let t = lib(ElementSet::from_ranks(group.clone(), ranks))?;
        let empty = ElementSet::empty(group.clone());
        let lifted = lib(lift_pair(&empty, &empty, &t))?;
        let report = lib(partner_feasibility(lifted.t()))?;
        ensure(
            !report.feasible,
            &format!("odd power 2m+1={n} unexpectedly feasible"),
        )?;
        let mut target = vec![0i64];
        target.extend(std::iter::repeat_n(1, n as usize));
        let witness = lifted.group().element(&target).map_err(|e| e.to_string())?;
        let violation = report
            .violations
            .iter()
            .find(|v| v.witness == witness)
            .ok_or_else(|| format!("no violation at all-ones for n={n}"))?;
        ensure(
            violation.num == 1 && violation.den == 2,
            &format!(
                "forced weight at all-ones is {}/{} instead of 1/2",
                violation.num, violation.den
            ),
        )?;
    }
    Ok("T = J^(2m+1) forces nu = 1/2 at (0,1,...,1) for m=1,2; no partner configuration exists".into())
}

fn random_group(rng: &mut ChaCha20Rng, max_order: u64) -> FiniteAbelianGroup {
    let menu = [2u32, 2, 3, 4, 4, 5, 6, 8, 9, 12];
    loop {
        let k = rng.gen_range(1..=3);
        let orders: Vec<u32> = (0..k).map(|_| menu[rng.gen_range(0..menu.len())]).collect();
        let group = FiniteAbelianGroup::new(&orders).unwrap();
        if group.order() <= max_order {
            return group;
        }
    }
}

fn criterion_transforms() -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(0x0f0e_1d2c_3b4a_5968);
    for trial in 0..100u32 {
        let group = random_group(&mut rng, 256);
        let coeffs: Vec<i64> = (0..group.order())
            .map(|_| rng.gen_range(-5i64..=5))
            .collect();
        let a = GroupRingElement::from_coeffs(group.clone(), coeffs).map_err(|e| e.to_string())?;
        let fast = lib(sq_spectrum(&a, SpectrumMethod::Fast))?;
        let naive = lib(sq_spectrum(&a, SpectrumMethod::Naive))?;
        ensure(
            fast == naive,
            &format!("fast != naive squared spectrum (trial {trial}, group {group})"),
        )?;
        let sums = lib(char_sums(&a, SpectrumMethod::Fast))?;
        let back = lib(fourier_invert(&group, &sums))?;
        ensure(
            back == a,
            &format!("Fourier roundtrip failed (trial {trial}, group {group})"),
        )?;
        let mut acc = CyclotomicInteger::zero(group.exponent());
        for v in &fast {
            acc = lib(acc.add(v))?;
        }
        let expected: i64 = a.coeffs().iter().map(|&c| c * c).sum::<i64>() * group.order() as i64;
        ensure(
            acc.as_rational_integer() == Some(expected),
            &format!("Parseval failed (trial {trial}, group {group})"),
        )?;
    }
    Ok("fast = naive squared spectra, exact Fourier roundtrip and Parseval on 100 random elements over groups of order <= 256".into())
}

fn criterion_invariance() -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(0x7a11_5ce5 ^ 0x1111_2222_3333_4444);
    for trial in 0..50u32 {
        // alternate genuinely dual instances with arbitrary ones
        let (s, t) = if trial % 5 == 0 {
            let j = base_set(BaseSet::J);
            (j.clone(), j)
        } else if trial % 5 == 1 {
            let l = base_set(BaseSet::L);
            (l.clone(), l)
        } else {
            let group = random_group(&mut rng, 64);
            let order = group.order();
            let divisors: Vec<u64> = (1..=order).filter(|d| order.is_multiple_of(*d)).collect();
            let size_s = divisors[rng.gen_range(0..divisors.len())];
            let size_t = order / size_s;
            let mut ranks: Vec<u64> = (0..order).collect();
            ranks.shuffle(&mut rng);
            let s = ElementSet::from_ranks(group.clone(), ranks[..size_s as usize].to_vec())
                .map_err(|e| e.to_string())?;
            ranks.shuffle(&mut rng);
            let t = ElementSet::from_ranks(group.clone(), ranks[..size_t as usize].to_vec())
                .map_err(|e| e.to_string())?;
            (s, t)
        };
        let s_side = lib(verify_formally_dual(&s, &t, Direction::SSide))?.ok;
        let t_side = lib(verify_formally_dual(&s, &t, Direction::TSide))?.ok;
        ensure(
            s_side == t_side,
            &format!("interchangeability broken on trial {trial}"),
        )?;
        let group = s.group().clone();
        let g = group.unrank(rng.gen_range(0..group.order()));
        let h = group.unrank(rng.gen_range(0..group.order()));
        let translated = lib(verify_formally_dual(
            &lib(s.translate(&g))?,
            &lib(t.translate(&h))?,
            Direction::Both,
        ))?
        .ok;
        let original = lib(verify_formally_dual(&s, &t, Direction::Both))?.ok;
        ensure(
            translated == original,
            &format!("translation invariance broken on trial {trial}"),
        )?;
    }
    Ok("S-side verdict = T-side verdict and translation invariance on 50 instances".into())
}

fn criterion_search() -> Check {
    // Z4, sizes (2,2), primitive: exactly the four normalized pairs
    let z4 = FiniteAbelianGroup::new(&[4]).map_err(|e| e.to_string())?;
    let pairs = lib(exhaustive_pairs(&SearchTask::new(z4.clone(), 2, 2).primitive_only()))?;
    let got: Vec<(Vec<u64>, Vec<u64>)> = pairs
        .iter()
        .map(|(s, t)| (s.ranks().to_vec(), t.ranks().to_vec()))
        .collect();
    let expected = vec![
        (vec![0, 1], vec![0, 1]),
        (vec![0, 1], vec![0, 3]),
        (vec![0, 3], vec![0, 1]),
        (vec![0, 3], vec![0, 3]),
    ];
    ensure(got == expected, &format!("Z4 search returned {got:?}"))?;
    let j = lib(ElementSet::from_ranks(z4, vec![0, 1]))?;
    for (s, t) in &pairs {
        ensure(
            lib(equivalence_bruteforce(&j, s, 64))?.is_some()
                && lib(equivalence_bruteforce(&j, t, 64))?.is_some(),
            "a Z4 search pair is not equivalent to (J,J)",
        )?;
    }

    // Z2 x Z2, sizes (2,2), primitive: none
    let z22 = FiniteAbelianGroup::new(&[2, 2]).map_err(|e| e.to_string())?;
    let none = lib(exhaustive_pairs(&SearchTask::new(z22, 2, 2).primitive_only()))?;
    ensure(none.is_empty(), "Z2xZ2 search must be empty")?;

    // Z4 x Z4, sizes (4,4), primitive: contains (JxJ, JxJ) and (L,L)
    let z44 = FiniteAbelianGroup::new(&[4, 4]).map_err(|e| e.to_string())?;
    let pairs = lib(exhaustive_pairs(&SearchTask::new(z44.clone(), 4, 4).primitive_only()))?;
    let jj = lib(ElementSet::from_ranks(z44.clone(), vec![0, 1, 4, 5]))?;
    let l = base_set(BaseSet::L);
    let has = |s: &ElementSet, t: &ElementSet| pairs.iter().any(|(a, b)| a == s && b == t);
    ensure(has(&jj, &jj), "(JxJ, JxJ) missing from Z4^2 search")?;
    ensure(has(&l, &l), "(L, L) missing from Z4^2 search")?;
    for (s, t) in &pairs {
        ensure(
            lib(verify_formally_dual(s, t, Direction::Both))?.ok,
            "a returned Z4^2 pair fails re-verification",
        )?;
    }
    Ok(format!(
        "Z4 (2,2): exactly 4 pairs, all equivalent to (J,J); Z2^2: none; Z4^2 (4,4): {} pairs including (JxJ,JxJ) and (L,L), all re-verified",
        pairs.len()
    ))
}
