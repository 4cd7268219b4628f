//! Truncated q-series and the classical modular series.

mod bivariate;
pub mod classical;
mod matrix;
mod series;

pub use bivariate::BivariateSeries;
pub use matrix::{series_det, series_mat_mul, SeriesMatrix};
pub use series::{Agreement, QSeries};
