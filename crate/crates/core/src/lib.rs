//! Type-C seaweed subalgebras of `sp(2n)`.
//!
//! A seaweed is named by two partial compositions of `n`, written
//! `C{2n} a1|...|am / b1|...|bt`. This crate builds the standard matrix form
//! and its Chevalley basis, the half and full meanders, the winding-down
//! reduction with its homotopy type, the vector-space decomposition into
//! core and peak blocks, and the regular one-form assembled from those
//! blocks. On index-one seaweeds that form is contact; [`verify`] certifies
//! this with exact integer and rational arithmetic.
//!
//! ```
//! use seaweed_core::{forms, meander, SeaweedDescriptor};
//!
//! let d: SeaweedDescriptor = "C16 2|3 / 1|6".parse().unwrap();
//! assert_eq!(meander::index_via_meander(&d), 1);
//! let contact = forms::contact_form(&d).unwrap();
//! assert_eq!(contact.kernel.element.to_string(), "e[8,8]-e[9,9]");
//! ```

pub mod decomposition;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod meander;
pub mod seaweed;
pub mod verify;
pub mod winding;

pub use error::{Result, SeaweedError, Side};
pub use seaweed::{
    AlgebraElement, BasisElement, BasisKind, FullComposition, MatrixLocation, OneForm,
    PartialComposition, Rational, SeaweedDescriptor,
};
