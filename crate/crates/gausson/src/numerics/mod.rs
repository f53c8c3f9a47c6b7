//! Shared numerical kernels: adaptive Runge-Kutta integration with event
//! location, adaptive Gauss-Kronrod quadrature, safeguarded root finding,
//! monotone cubic interpolation, finite-difference stencils, and least-squares
//! slope fitting.

pub mod fd;
pub mod fit;
pub mod interp;
pub mod quad;
pub mod rk45;
pub mod roots;
