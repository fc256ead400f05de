//! Stability analysis of fractional-order linear and nonlinear systems.
//!
//! The crate covers four areas:
//!
//! * **w-plane stability** — characteristic pseudo-polynomials with exact
//!   rational exponents are lifted with `w = s^(1/m)` and every root is
//!   classified against the Riemann-sheet sectors ([`lti`], [`orders`]).
//! * **Analytic responses** — impulse/step responses as Mittag-Leffler
//!   series ([`ml`], [`response`]).
//! * **Nonlinear systems** — equilibria of polynomial vector fields, exact
//!   Jacobians, the incommensurate characteristic determinant and chaos
//!   order bounds ([`field`], [`nonlinear`]).
//! * **Simulation** — fixed-step Grünwald-Letnikov integration with
//!   optional short memory ([`gl`]).
//!
//! Text input formats live in [`parse`].

pub mod error;
pub mod field;
pub mod gamma;
pub mod gl;
mod linalg;
pub mod lti;
pub mod ml;
pub mod nonlinear;
pub mod orders;
pub mod parse;
pub mod response;
pub mod roots;

pub use error::{Error, Result};
pub use field::{MultiPolynomial, PolynomialVectorField};
pub use gl::{simulate, simulate_lti, InputKind, SimConfig, Trajectory};
pub use lti::{
    analyze, analyze_characteristic, classify_roots, commensurate_eig_test, controllable,
    final_value, find_roots, matrix_sector_test, modal_stable, observable, to_state_space,
    ClassifiedRoot, FinalValue, ModalTerm, Sector, StabilityReport, StateSpace, Verdict,
};
pub use ml::{ml, ml_deriv, podlubny_ek, MLParams};
pub use nonlinear::{
    char_poly_incommensurate, find_equilibria, jacobian_at, min_chaos_order, nonlinear_stability,
    Equilibrium, EquilibriumVerdict, IncommensurateCharPoly, NonlinearStability,
};
pub use orders::{
    fdeg, is_minimal, lcm_of_orders, to_w_polynomial, PseudoPolynomial, RationalOrder, WPolynomial,
};
pub use parse::{
    parse_pseudo_polynomial, parse_transfer_function, parse_vector_field,
    parse_vector_field_file, pseudo_polynomial_to_string, TransferFunction,
};
pub use response::{
    commensurate_response, fode3_response, general_fode_response, ClosedLoop2x3, ResponsePoint,
    ResponseVariant, SeriesBudget,
};

/// Re-exported so downstream code can name complex values and matrices
/// without pinning its own copies of the dependencies.
pub use nalgebra::DMatrix;
pub use num_complex::Complex64;
