//! Discrete fractional Fourier transform and the sound-design methods built
//! on it: alpha-synthesis (windowed FrFT of pure tones) and alpha-filtering
//! (multiplication in a fractional domain).
//!
//! Everything here is pure computation over `alloc` buffers; file formats,
//! the command line, and rendering live in the companion `frft-cli` crate.
//!
//! Sample index `k` of a length-`N` buffer sits at the dimensionless
//! coordinate `u_k = (k - N/2) / sqrt(N)` (integer division), for every
//! transform in the crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod analysis;
pub mod buffer;
pub mod dft;
pub mod filtering;
pub mod framing;
pub mod lct;
pub mod order;
pub mod signals;
pub mod synthesis;
pub mod transform;

pub use buffer::ComplexBuffer;
pub use error::{FrftError, Result};
pub use num_complex::Complex64;
pub use order::{reduce_order, FrftOrder};
pub use transform::{frft, frft_direct, frft_fast, frft_inverse, Implementation};
