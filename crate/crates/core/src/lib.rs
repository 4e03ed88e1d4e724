pub mod arith;
pub mod campaign;
pub mod charsum;
pub mod cliquezoo;
pub mod ffield;
pub mod geometry;
pub mod gpgraph;
pub mod oval;
pub mod spectra;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/oval.md")]
    mod oval {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/cliques.md")]
    mod cliques {}
    #[doc = include_str!("../../../book/src/charsum.md")]
    mod charsum {}
    #[doc = include_str!("../../../book/src/campaign.md")]
    mod campaign {}
}
