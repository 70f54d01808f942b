//! Exact unsigned scalars for element-order sums.
//!
//! Every ψ formula is generic over [`PsiScalar`], so the same code runs on
//! fixed-width integers (with overflow reported, never wrapped) and on
//! arbitrary-precision integers.

use std::fmt;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Unsigned};

use crate::PsiError;

pub trait PsiScalar:
    Unsigned
    + FromPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Clone
    + Ord
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
{
}

impl<T> PsiScalar for T where
    T: Unsigned
        + FromPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Clone
        + Ord
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
{
}

pub(crate) fn lift<T: PsiScalar>(v: u64) -> Result<T, PsiError> {
    T::from_u64(v).ok_or(PsiError::Overflow)
}

pub(crate) fn add<T: PsiScalar>(a: &T, b: &T) -> Result<T, PsiError> {
    a.checked_add(b).ok_or(PsiError::Overflow)
}

pub(crate) fn sub<T: PsiScalar>(a: &T, b: &T) -> Result<T, PsiError> {
    a.checked_sub(b).ok_or(PsiError::Overflow)
}

pub(crate) fn mul<T: PsiScalar>(a: &T, b: &T) -> Result<T, PsiError> {
    a.checked_mul(b).ok_or(PsiError::Overflow)
}

/// `base^exp` with overflow checking.
pub(crate) fn pow<T: PsiScalar>(base: u64, exp: u32) -> Result<T, PsiError> {
    let b = lift::<T>(base)?;
    (0..exp).try_fold(T::one(), |acc, _| mul(&acc, &b))
}
