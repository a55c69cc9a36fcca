//! The book chapters as doctests: every fenced Rust block under book/src
//! compiles and runs with `cargo test --doc`, keeping the guide in sync
//! with the crate.

macro_rules! doc_chapter {
    ($module:ident, $path:literal) => {
        #[doc = include_str!($path)]
        pub mod $module {}
    };
}

doc_chapter!(introduction, "../../../book/src/introduction.md");
doc_chapter!(domains, "../../../book/src/domains.md");
doc_chapter!(grid_embedding, "../../../book/src/grid-embedding.md");
doc_chapter!(operators, "../../../book/src/operators.md");
doc_chapter!(eigensolver, "../../../book/src/eigensolver.md");
doc_chapter!(
    equivalent_formulations,
    "../../../book/src/equivalent-formulations.md"
);
doc_chapter!(shape_optimization, "../../../book/src/shape-optimization.md");
doc_chapter!(verification, "../../../book/src/verification.md");
doc_chapter!(cli, "../../../book/src/cli.md");
