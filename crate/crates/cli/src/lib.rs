//! Text formats, deterministic instance generation, and structured result
//! documents for the `hypermim` command-line tool.

pub mod format;
pub mod gen;
pub mod report;

pub use format::{parse_instance, serialize_instance, ParseError};
pub use gen::{generate_random, GenParams};
pub use report::{fnv1a_hex, ResultDocument};
