//! Zero-difference balanced functions: constructions, exhaustive
//! verification, and the codes and difference systems they generate.
//!
//! A function `f` on a finite abelian group of order `n` is
//! *zero-difference balanced* when the agreement count
//! `|{x : f(x + a) = f(x)}|` is the same constant `lambda` for every
//! nonzero shift `a`. Its preimage classes then form a partitioned
//! difference family, and standard derivations turn it into an optimal
//! constant composition code and, on cyclic groups, a perfect difference
//! system of sets.
//!
//! The crate provides three constructions:
//!
//! * [`product`] — coset labellings of GF(q_1) x ... x GF(q_k) with
//!   parameters (n, (n + e - 1)/e, e - 1);
//! * [`cyclotomic::coset_zdb`] — 2-cyclotomic coset leaders modulo
//!   2^m - 1, parameters (2^m - 1, (2^m + m - 2)/m, m - 1);
//! * [`cyclotomic::pair_coset_zdb`] — leaders of the paired classes
//!   B and -B, parameters (2^m - 1, (2^(m-1) + m - 1)/m, 2m - 1);
//!
//! plus two independent exhaustive oracles ([`verify::verify_zdb`],
//! [`verify::verify_pdf`]) that never trust construction metadata, the
//! derivations and exact bound certificates for constant composition codes
//! ([`ccc`]) and difference systems of sets ([`dss`]), and a JSON artifact
//! format ([`artifact`]).
//!
//! ```
//! use zdb::{cyclotomic, verify_pdf, verify_zdb};
//!
//! let f = cyclotomic::coset_zdb(5)?;
//! let params = verify_zdb(&f).expect("balanced");
//! assert_eq!((params.n, params.ell_bar, params.lambda), (31, 7, 4));
//! assert!(verify_pdf(&f, &params));
//!
//! let code = zdb::ccc::CccCode::from_zdb(&f, &params);
//! assert!(code.is_optimal()?);
//!
//! let dss = zdb::dss::build_dss(&f, &params)?;
//! assert!(dss.is_perfect() && dss.is_optimal());
//! # Ok::<(), zdb::Error>(())
//! ```

pub mod algebra;
pub mod artifact;
pub mod ccc;
pub mod cyclotomic;
pub mod dss;
pub mod error;
pub mod function;
pub mod group;
pub mod product;
pub mod verify;

pub use error::{Error, Result};
pub use function::{Family, ZdbFunction, ZdbParams};
pub use group::{GroupSpec, Support};
pub use verify::{verify_pdf, verify_zdb, NotZdb};
