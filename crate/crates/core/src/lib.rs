//! Rigorous numerics for Hénon-map horseshoes.
//!
//! The crate is layered bottom-up: [`interval`] arithmetic, the [`henon`] map
//! as box maps, [`cubical`] grids and transition graphs, and on top of those
//! the hyperbolicity certificates in [`hyp`], loop monodromy in
//! [`monodromy`], exact symbolic dynamics in [`shift`] and periodic-orbit
//! certificates in [`periodic`].

pub mod cubical;
pub mod error;
pub mod henon;
pub mod hyp;
pub mod interval;
pub mod io;
pub mod monodromy;
pub mod periodic;
pub mod render;
pub mod shift;

pub use error::{Error, Result};

// Book chapters compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/henon.md")]
    mod henon {}
    #[doc = include_str!("../../../book/src/cubical.md")]
    mod cubical {}
    #[doc = include_str!("../../../book/src/hyperbolicity.md")]
    mod hyperbolicity {}
    #[doc = include_str!("../../../book/src/symbolic.md")]
    mod symbolic {}
    #[doc = include_str!("../../../book/src/monodromy.md")]
    mod monodromy {}
    #[doc = include_str!("../../../book/src/periodic.md")]
    mod periodic {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
