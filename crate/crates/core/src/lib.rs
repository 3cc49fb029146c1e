//! Generalized Cardano polynomials.
//!
//! Odd-degree polynomials `C_{n,c,d}` whose roots are `pω^j + qω^(−j)` with
//! `pq = c` and `pⁿ + qⁿ = 2d`: construction from exact integer
//! coefficients, closed-form roots (radical and trigonometric), recognition,
//! the classical cubic and quartic solvers, the Vieta–Lucas bridge and the
//! clock/shift/Fourier operator forms.

pub mod cardano;
pub mod chebyshev;
pub mod cli;
pub mod ferrari;
pub mod operator;
pub mod poly;

pub use cardano::{CardanoError, CardanoParams, PQForm, PQPair};
pub use poly::{oracle_roots, root_multiset_equal, Complex, PolyError, Polynomial, RootSet};
