//! Central values of quartic Dirichlet L-functions, Hecke L-series in the
//! region of absolute convergence, and the main-term constants.

pub mod special;
mod vfun;

pub use vfun::{
    a_j, gamma_factor, sum_tail_bound, v_bound, v_closed_form, v_quadrature, v_table, x_factor, Estimate,
    GChoice, QuadratureParams, VTable,
};

mod afe;

pub use afe::{
    epsilon_factor, epsilon_from_tau, lvalue_afe, lvalue_afe_with_tau, lvalue_direct, lvalue_direct_central,
    AfeConfig, LValueRecord, Method,
};

pub mod constants;
mod hecke;

pub use constants::{constants, constants_with, Constants, ConstantsConfig};
pub use hecke::{hecke_l_series, principal_value_at_2};
