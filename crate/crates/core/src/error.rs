use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("requested {requested} factors but only {available} are available")]
    FactorCount { requested: usize, available: usize },

    #[error("lacunarity violated at index {index}: {next} < 3 * {prev}")]
    Lacunarity { index: usize, prev: u128, next: u128 },

    #[error("coefficient {index} has modulus {modulus}, outside the allowed range")]
    CoefficientModulus { index: usize, modulus: f64 },

    #[error("parameter `{name}` = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("empty window: K = {k}, window = {window}")]
    EmptyWindow { k: usize, window: usize },

    #[error("density is negative ({min}) on the evaluation grid")]
    NegativeDensity { min: f64 },

    #[error("Gram conditioning failure for H({p},{q}): numerical rank {rank}, expected {expected}")]
    RankDeficiency {
        p: u32,
        q: u32,
        rank: usize,
        expected: usize,
    },

    #[error("polynomial is not of bidegree ({p},{q})")]
    Bidegree { p: u32, q: u32 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
