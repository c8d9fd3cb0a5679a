//! Special functions: Pochhammer symbols, `pFq` and its even/odd parts,
//! modified Bessel `K`, confluent `U` / Whittaker `W`, and Gauss `2F1`.

mod bessel;
mod confluent;
mod gamma;
mod gauss;
mod series;

pub use bessel::bessel_k;
pub(crate) use bessel::ln_bessel_k;
pub(crate) use confluent::ln_whittaker_w;
pub use confluent::{hyperu, hyperu_series, whittaker_w, DEFAULT_SPECIAL_TOL};
pub use gamma::{gamma, ln_factorial, ln_gamma, ln_pochhammer, recip_gamma};
pub use gauss::gauss_2f1;
pub(crate) use gauss::gauss_2f1_split;
pub(crate) use series::RatioSeries;
pub use series::{
    convergence_domain, hyper_even_pcq, hyper_odd_psq, hyper_part, hyper_pfq, series_term_direct,
    series_terms_recurrence, BoundaryBehaviour, ConvergenceDomain, DomainKind, SeriesPart,
    SeriesResult, DEFAULT_SERIES_TOL, TERM_CAP,
};
