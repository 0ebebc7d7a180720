//! Complex special functions: Pochhammer symbol, Kummer's `M`, Gamma, `erf`, `erfi`.

pub(crate) mod dd;
mod erf;
mod gamma;
pub mod kummer;

pub use erf::{erf_c, erfi_c};
pub use gamma::{gamma_c, nonpositive_integer, pochhammer, rgamma_c, POLE_TOL};
pub use kummer::{kummer_m, kummer_m_prime};
