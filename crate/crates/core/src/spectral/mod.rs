//! Exact transfer matrices over the Gaussian integers and their spectra.

pub mod charpoly;
pub mod cyclotomic;
pub mod matrix;
pub mod poly;
pub mod series;
pub mod table;
pub mod transfer;

pub use charpoly::{char_poly, char_poly_gauss, char_poly_rev, CharPolyMethod};
pub use cyclotomic::{cyclotomic, cyclotomic_factorize, predicted_charpoly, Factorization, SpectrumSummary};
pub use matrix::{mat_pow_trace, Matrix};
pub use poly::Poly;
pub use series::{fit_linear_recurrence, series_of_rational, RationalGF};
pub use table::tabulated_charpoly_rev;
pub use transfer::{build_transfer, check_r_consistency, dump_matrix, load_matrix, Label, TransferKind, TransferMatrix};
