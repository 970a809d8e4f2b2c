//! Exact-arithmetic toolkit for fine-monoid chart analysis over a discrete
//! valuation ring.
//!
//! From chart data (P, ρ) over the base V the pipeline builds the chart
//! ring V[P]/(π − ρ), the monomial map h induced by a lift of the quotient
//! decomposition, an η-étaleness certificate for it, and a quasi-finite
//! η-étale map f obtained by a Noether normalization whose correction
//! terms are polynomials in N-th powers — all with independently checkable
//! certificates.
//!
//! Modules mirror the layers of the construction:
//! - [`coeff`]: exact arithmetic, the two DVR models, valuations, residues;
//! - [`poly`]: sparse multivariate polynomials, ideals, presentations;
//! - [`groebner`]: Buchberger engine, finiteness criterion, toric ideals;
//! - [`monoid`]: affine monoids, Smith normal form, quotient decomposition;
//! - [`chart`]: the pipeline (chart ring, h, certificates, normalization);
//! - [`cli`]: job parsing, reports and the symbolic counterexample demos.

pub mod chart;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod groebner;
pub mod monoid;
pub mod poly;

pub use error::{Error, Result};
