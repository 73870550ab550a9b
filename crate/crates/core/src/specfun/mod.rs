//! Gamma, modified Bessel and confluent hypergeometric functions.
//!
//! Every function has a log-domain variant returning [`LogValue`](crate::LogValue);
//! the plain `f64` variants report overflow as an error.

pub mod bessel;
mod dd;
pub mod gamma;
mod integrate;
pub mod kummer;

pub use bessel::{
    bessel_i, bessel_i_asymptotic, bessel_i_integral, bessel_i_log, bessel_i_series, bessel_k, bessel_k_asymptotic,
    bessel_k_integral, bessel_k_log, bessel_k_series, Regime,
};
pub use gamma::{gamma, ln_gamma, log_gamma, log_rgamma, sin_pi};
pub use kummer::{
    bessel_hypergeom_bridge, bessel_hypergeom_bridge_log, kummer_m, kummer_m_log, kummer_m_series, kummer_m_via_bessel,
    tri_t, tricomi_u, tricomi_u_connection, tricomi_u_log,
};
