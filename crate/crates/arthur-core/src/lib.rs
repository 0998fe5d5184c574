//! Exact symbolic combinatorics of local Arthur parameters for classical
//! p-adic groups.
//!
//! Everything here is finite bookkeeping: formal parameters are multisets of
//! triples (cuspidal label, exponent shift, pair of special-linear factor
//! dimensions), and the quantities of interest — component groups, sign
//! characters, normalization signs, endoscopic decompositions, packet-label
//! duality — are all computable by exact integer arithmetic.  No floating
//! point, no randomness, no IO.  The crate is `no_std` (with `alloc`).

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod component;
pub mod endoscopy;
pub mod generic;
pub mod group;
pub mod packets;
pub mod param;
pub mod sign;
pub mod signs;

pub use endoscopy::{
    endoscopic_datum, endoscopic_sign_product, image_in_component_group, mw_character_closed,
    mw_character_xu, Eig, EndoscopicDatum, OrderVariant, SemisimpleElement, SplitHints,
};

pub use signs::{
    alpha, beta_gl, beta_l, beta_oracle_discrete, beta_phi_psi, beta_phi_psi_closed_form,
    witt_rank, LeviFactor,
};

pub use classify::{is_relevant, validate_for_group, GpEntry, GpPartition, NsdPair};
pub use component::{
    characters_for_form, component_info, eval_at_s_psi, expected_character_count, pair,
    restrict_to_l_packet_domain, ComponentGroupInfo, GpKey, SignCharacter,
};
pub use generic::{
    generic_dual_chain, generic_dual_l, phi0_phi1_split, standard_module_shape, ChainRecord,
    GenericDatum, StandardModuleShape,
};
pub use group::{Family, FormFlag, GroupForm};
pub use packets::{
    az_dual_label, beta_rep, compare_duality, duality_sign_product, is_supercuspidal,
    reduction_chain, reduction_step, DualityComparison, PacketLabel, ReductionCase, ReductionStep,
};
pub use param::{
    exp_to_string, parse_input, parse_param, Exp, FormalParameter, Irrep, ParamKind, ParseError,
    SdClass, Summand,
};
pub use sign::Sign;

use alloc::string::String;

/// Errors produced by the structural validators and derived computations.
///
/// Each variant carries a human-readable message; the variants exist so that
/// callers (and tests) can distinguish failure modes without string matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter fails the structural requirements of a group form
    /// (dimension mismatch, illegal duality class, unpaired summand, ...).
    Validation(String),
    /// Two objects that must share a domain (characters, elements) do not.
    DomainMismatch(String),
    /// An operation was invoked on data outside its stated preconditions.
    Unsupported(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::Validation(m) => write!(f, "validation error: {}", m),
            Error::DomainMismatch(m) => write!(f, "domain mismatch: {}", m),
            Error::Unsupported(m) => write!(f, "unsupported: {}", m),
        }
    }
}
