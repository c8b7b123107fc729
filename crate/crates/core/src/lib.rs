//! Exact two-sided shift spaces over the countably infinite alphabet of
//! nonnegative integers, restricted to eventually periodic points and
//! finitely specified spaces.

pub mod block_code;
pub mod bridge;
pub mod higher_block;
pub mod point;
pub mod reference;
pub mod space;
pub mod spec_file;
pub mod text;
pub mod topology;
pub mod words;

pub use point::{BiPoint, Length, OnePoint, PointError, TwoSided};
pub use words::{Cell, LeftRay, Letter, Occurrences, PatCell, Pattern, WordError, FRESH};
