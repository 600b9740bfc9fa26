//! Exact local densities, combinatorial constants and truncated Euler products
//! for every predicted leading constant.

pub mod densities;
pub mod euler;
pub mod predict;
pub mod selberg;

pub use densities::{
    hilbert_condition_volume, local_density_conic, local_density_conic_closed,
    local_density_two_squares, local_density_two_squares_closed, ratio, rational_to_f64,
    tamagawa_convert, ConversionMode, ExactRational, HilbertVolume,
};
pub use euler::{primes_up_to, EulerProduct, KahanSum, ProductValue};
pub use predict::{
    factorized_factor_closed, kappa_prime, predict_conics, predict_genguo, predict_norm_form, predict_two_squares,
    two_squares_naive_truncation, ConicPrediction, NormFormPrediction, ZETA_3,
};
pub use selberg::{
    beta_bm, beta_correction, c_bm, gamma_correction, gamma_d, kappa, selberg_delange_check,
    selberg_delange_triple_check, t0, t_p, t_p_series, tau_odd,
};
