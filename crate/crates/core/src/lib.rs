//! Exact computation of the Kauffman polynomial of framed links from PD
//! codes, and machine checks of its specialization at `z = -a - a^-1`.
//!
//! The crate is organized bottom-up:
//!
//! - [`laurent`]: integer Laurent polynomials in `a` and `(a, z)`.
//! - [`diagram`]: PD codes, orientations, writhe, linking numbers, and the
//!   local rewrites (smoothings, crossing switch).
//! - [`kauffman`]: the skein-recursive engine for `Λ(D)` and the derived
//!   framed, oriented, and specialized polynomials.
//! - [`transfer`]: the sum over orientations `gτ` and its checks.
//! - [`lmt`]: the linking-number generating function and the verifier.
//! - [`braid`] and [`corpus`]: input diagrams.
//!
//! ```
//! use lmt::diagram::{parse_pd, OrientationMask};
//! use lmt::kauffman::specialized_f;
//! use lmt::lmt::lmt_rhs;
//!
//! let hopf = parse_pd("Xr 1 3 2 4\nXr 3 1 4 2").unwrap();
//! let o = OrientationMask::reference(2);
//! let lhs = specialized_f(&hopf, &o).unwrap();
//! assert_eq!(lhs.to_string(), "-a^-4 - 1");
//! assert_eq!(lhs, lmt_rhs(&hopf, &o).unwrap());
//! ```

pub mod braid;
pub mod corpus;
pub mod diagram;
pub mod kauffman;
pub mod laurent;
pub mod lmt;
pub mod transfer;

pub use diagram::{parse_pd, Diagram, OrientationMask, Smoothing, SublinkMask};
pub use kauffman::{Engine, SkeinTask};
pub use laurent::{parse_poly, LaurentA, LaurentAZ};

// The guide's code blocks run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/skein.md")]
    mod skein {}
    #[doc = include_str!("../../../book/src/orientations.md")]
    mod orientations {}
    #[doc = include_str!("../../../book/src/linking.md")]
    mod linking {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
