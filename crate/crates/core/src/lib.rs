//! Rigorous enclosures of eigenpairs of complex interval matrices.
//!
//! Every eigenpair of every point matrix inside an interval matrix is
//! enclosed in a max-norm ball around an approximate eigenpair, certified by
//! negativity of the radii polynomials. A Krawczyk operator with
//! epsilon-inflation is included for comparison, along with a generator of
//! test matrices with known spectra and the `radiipol` command-line tool.

pub mod interval;
pub mod matrix;
pub mod verifier;
pub mod krawczyk;
pub mod method;
pub mod genbench;
pub mod io;
pub mod cli;
