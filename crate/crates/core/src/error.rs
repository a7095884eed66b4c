use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("branch factor i^delta is not representable for delta = {re} + {im}i")]
    Branch { re: f64, im: f64 },

    #[error("{what} requires a normalizable regime, but the parameters are in the {regime} regime")]
    Regime { what: &'static str, regime: &'static str },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature cutoff too small: integrand tail ratio {ratio:e} at rho_max = {rho_max}")]
    Cutoff { rho_max: f64, ratio: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
