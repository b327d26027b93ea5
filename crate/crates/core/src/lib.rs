pub mod branch;
pub mod cli;
pub mod endcell;
pub mod maplemma;
pub mod error;
pub mod field;
pub mod poly;
pub mod polyalg;
pub mod rat;
pub mod realalg;
pub mod ring;
pub mod syntax;
pub mod typebuilder;

pub use error::{Error, Result};
pub use realalg::RealAlg;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/realalg.md")]
    mod realalg {}
    #[doc = include_str!("../../../book/src/branches.md")]
    mod branches {}
    #[doc = include_str!("../../../book/src/endcells.md")]
    mod endcells {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/towers.md")]
    mod towers {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
