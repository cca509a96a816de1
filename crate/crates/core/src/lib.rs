//! Exact algebra and numerics for Lorentzian geometries with parallel
//! skew-symmetric torsion and naturally reductive infinitesimal models.

#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod coordgeo;
pub mod liealg;
pub mod mlinalg;
pub mod models;
pub mod torsioncurv;
