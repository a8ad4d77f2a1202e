use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no factorization")]
    Zero,
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("radical must be at least 2, got {0}")]
    RadicalTooSmall(u64),
    #[error("radical {0} exceeds the supported range (M < 2^60)")]
    RadicalTooLarge(u64),
    #[error("({u} + {v}*sqrt({m}))/2 is not an algebraic integer")]
    Parity { u: String, v: String, m: u64 },
    #[error("elements of Q(sqrt {0}) and Q(sqrt {1}) cannot be combined")]
    MixedRadicals(u64, u64),
    #[error("{q} does not ramify in the field of discriminant {d}")]
    NotRamified { q: u64, d: u64 },
    #[error("invalid ideal (a={a}, P={p}) for discriminant {d}")]
    InvalidIdeal { a: u64, p: u64, d: u64 },
    #[error("{r} ramified primes exceed the lattice cap of {cap}")]
    TooManyPrimes { r: usize, cap: usize },
    #[error("M={m}: {reason}")]
    WrongResidue { m: u64, reason: &'static str },
    #[error("M={0} has a unit of norm -1, so there is no non-canonical relation")]
    NoRelation(u64),
    #[error("M={m}: gcd criterion reached an inconsistent state (m={m_plus}, m'={m_minus})")]
    Inconsistent { m: u64, m_plus: u64, m_minus: u64 },
}
