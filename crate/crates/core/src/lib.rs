//! Characters of minimal affinizations of quantum loop algebras in types A, B
//! and C.
//!
//! The crate evaluates a nested Demazure-operator formula for the characters,
//! decomposes them into irreducible characters of the simple Lie algebra,
//! counts the same multiplicities with tableau crystals, and checks the
//! limiting product formula for normalized characters. All arithmetic is
//! exact.
//!
//! ```
//! use affinize::{build_algebra, decomp, minaff, Kind};
//!
//! let b3 = build_algebra(Kind::B, 3).unwrap();
//! let ch = minaff::minaff_character(&b3, &[1, 1, 2]).unwrap();
//! let mults = decomp::decompose(&b3, &ch).unwrap();
//! assert_eq!(mults.len(), 6);
//! ```

pub mod charring;
pub mod crystal;
pub mod decomp;
pub mod error;
pub mod exec;
pub mod limits;
pub mod minaff;
pub mod rootsys;
pub mod selftest;

pub use charring::{CharPoly, FiniteChar, FiniteWeight, Poly};
pub use error::{Error, Result};
pub use exec::Exec;
pub use rootsys::{build_algebra, AffineWeight, AlgebraData, ExtWeylWord, Kind, Letter, Rational, RealRoot};
