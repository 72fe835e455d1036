//! mdbook cannot run a book's code blocks against crate dependencies, so
//! each chapter is included here as a module doc and `cargo test --doc`
//! exercises every fenced Rust block. One module per chapter keeps test
//! failures attributable to their source file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/scalar-ops.md")]
pub mod scalar_ops {}

#[doc = include_str!("../../../book/src/membership.md")]
pub mod membership {}

#[doc = include_str!("../../../book/src/orders.md")]
pub mod orders {}

#[doc = include_str!("../../../book/src/convolution.md")]
pub mod convolution {}

#[doc = include_str!("../../../book/src/harness.md")]
pub mod harness {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
