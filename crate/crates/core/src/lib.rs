//! Inverse spectral problems for finite three-term recurrences with complex
//! coefficients: forward maps, reconstruction from Weyl data, two spectra,
//! polynomial boundary conditions, transmission eigenvalues and the
//! mixed problem for symmetric Jacobi matrices.
//!
//! Everything is generic over the real scalar: `f32`, `f64` or the
//! double-double [`Wide`]. Random instances of size 8 and up can be too
//! ill-conditioned for a plain `f64` round trip, so the tools default to `Wide`.

pub mod error;
pub mod forward;
pub mod gauge;
pub mod hochstadt;
pub mod linalg;
pub mod poly;
pub mod reduction;
pub mod roots;
pub mod sample;
pub mod scalar;
pub mod stability;
pub mod weyl;
pub mod wide;

pub use error::{Error, Result};
pub use forward::{
    BoundaryConfig, BoundaryPolys, StandardCoeffs, TransmissionInstance, TwoSpectra, WeylData,
};
pub use hochstadt::SymmetricJacobi;
pub use poly::Poly;
pub use roots::Spectrum;
pub use scalar::{Real, Wide};

pub type C64 = num_complex::Complex<f64>;
pub type Poly64 = Poly<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type StandardCoeffs64 = StandardCoeffs<f64>;
pub type TransmissionInstance64 = TransmissionInstance<f64>;
pub type BoundaryPolys64 = BoundaryPolys<f64>;
pub type WeylData64 = WeylData<f64>;
pub type SymmetricJacobi64 = SymmetricJacobi<f64>;

pub type CWide = num_complex::Complex<Wide>;
