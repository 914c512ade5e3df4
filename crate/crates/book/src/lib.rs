//! Compiles and runs every Rust snippet of the guide under `book/` as a
//! doctest, so the guide cannot drift from the API.

macro_rules! chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[cfg(doctest)]
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

chapters! {
    introduction => "introduction.md",
    f_function => "f-function.md",
    regions => "regions.md",
    geometry => "geometry.md",
    achievability => "achievability.md",
    rank_oracle => "rank-oracle.md",
    monte_carlo => "monte-carlo.md",
    cli => "cli.md",
    file_formats => "file-formats.md",
}
