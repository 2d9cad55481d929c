//! Exact integer polynomials and the `Z[X]` / `XZ[X]` machinery.

mod fg;
mod intpoly;
mod primes;
mod xz;
mod zx;

pub use fg::{fg_ideal_witness, quotient_coordinates, quotient_element, FgReport, QuotientCheck};
pub use intpoly::IntPoly;
pub use primes::{factorial, find_prime_neg_one_mod, is_prime, sieve};
pub use xz::{in_h_xz, in_rr_possible, xz_checks, xz_parity_profile, XzReport};
pub use zx::{
    build_q, build_q_double_prime, build_q_prime, certify_not_in_rh, coset_representative, eisenstein_witness,
    h_coset_representatives, in_h, parity_profile, reduce_mod_im, CertificateVerdict, NotInRhCertificate,
    ParityProfile, Premise, Reduction,
};
