use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("group of order {order} is not a p-group")]
pub struct NotPGroup {
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsiError {
    #[error(transparent)]
    NotPGroup(#[from] NotPGroup),
    #[error("{0} is not a CP2 group")]
    NotCp2(String),
    #[error("Omega_{{m-1}} of a group of order {order} is the whole group")]
    TopRecursionInapplicable { order: usize },
    #[error("group orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("primes differ: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("arithmetic overflow in the chosen scalar type")]
    Overflow,
    #[error(transparent)]
    Group(#[from] GroupError),
}
