//! Extending binary operations along monads over finite carriers.
//!
//! A binary operation `φ : X × Y → Z` extends to `Φ : TX × TY → TZ` for a
//! monad `T` by `Φ(a, b) = μ(T(x ↦ Tφ_x(b))(a))`, or equivalently
//! `Φ(a, b) = Tφ(a ⊗ b)`. This crate computes both, for the identity monad,
//! nonempty subsets (`exp`), maximal linked systems (`lambda`), up-families
//! (`incl`) and finitely supported probability measures (`prob`), and checks
//! the laws relating them exhaustively or by seeded sampling.
//!
//! ```
//! use monadic_extension::{extend_direct, exp, BinOpTable};
//!
//! let z2 = BinOpTable::cyclic(2);
//! let x = z2.left().clone();
//! let both = exp::subset(&x, &[0, 1]).unwrap();
//! let zero = exp::subset(&x, &[0]).unwrap();
//! assert_eq!(extend_direct(&z2, &both, &zero).unwrap().render(), "{0,1}");
//! ```

pub mod error;
pub mod extend;
pub mod finset;
pub mod job;
pub mod monad;
pub mod report;
pub mod tensor;
pub mod zoo;

pub use error::{Error, Result};
pub use extend::{
    extend_direct, extend_via_tensor, extended_cayley_table, idempotents, ExtendedOp, OpMorphism,
};
pub use finset::{enumerate_binary_ops, BinOpTable, FinMap, FinSet};
pub use job::{emit_report, parse_table, run_job, Check, Format, JobConfig, Report};
pub use monad::{fmap, kleisli_bind, materialize_carrier, mult, unit, MonadKind, TElement};
pub use report::{CheckOptions, Guards, LawReport, Status};
pub use tensor::tensor;
pub use zoo::{exp, prob, upfamily};
