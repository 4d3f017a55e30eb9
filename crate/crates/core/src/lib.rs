pub mod classic;
pub mod counters;
pub mod game;
pub mod io;
pub mod lifting;
pub mod oracles;
pub mod separator;
pub mod tree;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/games.md")]
    mod games {}
    #[doc = include_str!("../../../book/src/counters.md")]
    mod counters {}
    #[doc = include_str!("../../../book/src/tree-coding.md")]
    mod tree_coding {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/separator.md")]
    mod separator {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
