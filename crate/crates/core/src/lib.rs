//! Exact-arithmetic construction, verification and classification of
//! formally dual pairs in finite abelian groups.
//!
//! Two subsets S, T of a finite abelian group G form a formally dual pair
//! when |chi_y(S)|^2 = (|S|^2/|T|) nu_T(y) for every y in G, where nu_T
//! counts ordered difference pairs. This crate provides:
//!
//! * groups as explicit products of cyclic factors, with subgroup and
//!   automorphism machinery ([`group`]);
//! * exact cyclotomic integer arithmetic housing all character sums
//!   ([`cyclotomic`]);
//! * integer group rings with convolution, involution and spectra
//!   ([`ring`]);
//! * exact character transforms and Fourier inversion ([`characters`]);
//! * the duality, primitivity and lifting verifiers, each returning
//!   machine-checkable certificates ([`duality`]);
//! * the explicit families and combinators over Z_2 x Z_4^{2m} together
//!   with their closed-form spectra ([`constructions`]);
//! * exhaustive search and equivalence classification in small groups
//!   ([`search`]);
//! * a deterministic self-test suite reproducing every reference value
//!   ([`selftest`]).
//!
//! Everything is exact: verification never rounds, and coefficient
//! overflow aborts rather than wrapping. The `parallel` feature (default)
//! runs spectra, convolutions and searches data-parallel via rayon; with
//! `--no-default-features` the same code runs sequentially.

mod arith;
mod par;

pub mod characters;
pub mod constructions;
pub mod cyclotomic;
pub mod duality;
pub mod error;
pub mod group;
pub mod ring;
pub mod search;
pub mod selftest;

pub use characters::{char_exponent, char_sum, char_sums, char_value, character_spectrum,
    fourier_invert, sq_spectrum, sq_spectrum_ints, SpectrumMethod};
pub use constructions::{
    base_set, block_b, block_e, dircon1, dircon2, dircon2_inductive, lift_pair, mix,
    predict_dircon1_spectrum, predict_dircon2_theta, predict_mix_theta, product_pair,
    recur_combine, BaseSet, Family, LiftedPair,
};
pub use cyclotomic::{cyclotomic_poly, CyclotomicInteger};
pub use duality::{
    chi_square_real, lifting_condition, partner_feasibility, verify_formally_dual,
    verify_primitive, Direction, DualFailure, DualPairReport, FeasibilityReport, LiftingReport,
    PrimitivityReport,
};
pub use error::{Error, Result};
pub use group::{
    automorphisms, coset_confinement, nontrivial_stabilizer, subgroup_generated, Automorphism,
    ConfinementReport, ElementSet, FiniteAbelianGroup, GroupElement, Subgroup,
    DEFAULT_AUTOMORPHISM_BOUND,
};
pub use ring::{
    cross_difference_counts, difference_counts, difference_spectrum, theta, weight_enumerator,
    GroupRingElement, SpectrumMultiset,
};
pub use search::{
    classify_by_invariants, equivalence_bruteforce, exhaustive_pairs, feasible_sides,
    EquivalenceBucket, InvariantKey, SearchTask, DEFAULT_FEASIBILITY_BOUND, DEFAULT_SEARCH_BOUND,
};
