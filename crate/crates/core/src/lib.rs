//! Exact computational tools for ordinary triple points on Calabi-Yau
//! threefolds: coefficient fields, sparse polynomials, (weighted) projective
//! geometry, local singularity classification, finite-field census,
//! singularity spectra and the example constructions.

pub mod algebra;
pub mod polyring;
pub mod geometry;
pub mod local;
pub mod census;
pub mod spectra;
pub mod constructions;
