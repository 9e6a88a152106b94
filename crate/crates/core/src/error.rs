use thiserror::Error;

/// Errors raised by the group, counting, bound and construction routines.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("closure overflow: more than {cap} elements")]
    ClosureOverflow { cap: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("permutation group is not transitive ({orbits} orbits); decompose into orbits first")]
    NotTransitive { orbits: usize },
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error(
        "generator search budget exceeded; best known lower bound d >= {lower_bound}"
    )]
    GeneratorBudgetExceeded { lower_bound: usize },
    #[error("witness width cap {cap} exceeded with {homs} homomorphisms; retry with kernel deduplication or a larger cap")]
    WidthCapExceeded { cap: usize, homs: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("gcd({a}, {modulus}) != 1")]
    NotCoprime { a: u64, modulus: u64 },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("all candidates failed: {0}")]
    AllCandidatesFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
