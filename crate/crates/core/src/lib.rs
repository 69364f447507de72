//! Exact classification engine for Belyi coverings that induce pull-backs
//! from hypergeometric to Heun equations.
//!
//! Modules, bottom up:
//! - [`exactalg`]: rationals, `Q(i)`, `Q(w)`, polynomials, rational functions.
//! - [`patterns`]: restriction types, branching patterns, exponent transport.
//! - [`monodromy`]: permutation triples, orbit counts, dessins, block systems.
//! - [`charcount`]: symmetric-group characters and the triple-count formula.
//! - [`belyi`]: the covering catalog, the verifier and a low-degree solver.
//! - [`lemmas`]: the non-existence engine.
//! - [`mp24`]: degree-24 branch data with six-part third fiber.
//! - [`shell`]: fixtures, reports and the command-line surface.

pub mod belyi;
pub mod charcount;
pub mod exactalg;
pub mod lemmas;
pub mod monodromy;
pub mod mp24;
pub mod patterns;
pub mod shell;
