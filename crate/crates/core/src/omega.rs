//! Exponent, Ω-sets, Ω-subgroups and the Ω-filtration of a p-group.

use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::scalar::{add, lift, PsiScalar};
use crate::{NotPGroup, PsiError};

/// The prime `p` with `|G| = p^n`, `n >= 1`.
pub fn prime_of(g: &FiniteGroup) -> Result<u64, NotPGroup> {
    let n = g.order() as u64;
    let err = NotPGroup { order: g.order() };
    if n < 2 {
        return Err(err);
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).ok_or(err.clone())?;
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    if rest == 1 {
        Ok(p)
    } else {
        Err(err)
    }
}

/// Least common multiple of all element orders.
pub fn exponent(g: &FiniteGroup) -> u64 {
    g.exponent()
}

/// `log_p(x)` for an exact power of `p`.
pub(crate) fn log_p(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0);
        x /= p;
        k += 1;
    }
    k
}

pub(crate) fn omega_set_with(g: &FiniteGroup, p: u64, level: u32) -> Vec<Elem> {
    let Some(q) = p.checked_pow(level) else {
        return g.elements().collect();
    };
    g.elements().filter(|&x| g.pow(x, q) == 0).collect()
}

/// `{x in G : x^(p^level) = 1}`, in increasing index order.
pub fn omega_set(g: &FiniteGroup, level: u32) -> Result<Vec<Elem>, NotPGroup> {
    let p = prime_of(g)?;
    Ok(omega_set_with(g, p, level))
}

/// `Ω_level(G)`: the subgroup generated by [`omega_set`].
pub fn omega_subgroup(g: &FiniteGroup, level: u32) -> Result<Subgroup<'_>, NotPGroup> {
    let set = omega_set(g, level)?;
    Ok(Subgroup::closure(g, set).expect("indices come from the group"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaLevel {
    /// `|{x : x^(p^i) = 1}|`
    pub set_size: usize,
    /// `|Ω_i(G)|`
    pub subgroup_size: usize,
    pub set_is_subgroup: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaFiltration {
    pub prime: u64,
    /// `exp(G) = p^m`
    pub m: u32,
    /// Levels `0..=m`.
    pub levels: Vec<OmegaLevel>,
}

impl OmegaFiltration {
    pub fn subgroup_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.subgroup_size).collect()
    }

    pub fn set_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.set_size).collect()
    }

    pub fn order(&self) -> usize {
        self.levels.last().map_or(1, |l| l.subgroup_size)
    }

    pub fn exponent(&self) -> u64 {
        self.prime.pow(self.m)
    }

    /// `|Ω_i|`, which is `|G|` for every `i >= m`.
    pub fn size_at(&self, level: u32) -> usize {
        let i = (level as usize).min(self.levels.len() - 1);
        self.levels[i].subgroup_size
    }

    /// First level whose Ω-set is not closed, if any.
    pub fn first_open_level(&self) -> Option<u32> {
        self.levels
            .iter()
            .position(|l| !l.set_is_subgroup)
            .map(|i| i as u32)
    }

    pub fn is_omega_closed(&self) -> bool {
        self.first_open_level().is_none()
    }

    /// `ψ(Ω_level)` from subgroup sizes alone:
    /// `1 + sum_{j=1..=level} (|Ω_j| - |Ω_{j-1}|) p^j`.
    ///
    /// Only meaningful when every Ω-set is closed, so that the elements of
    /// `Ω_j \ Ω_{j-1}` all have order exactly `p^j`.
    pub fn psi_up_to<T: PsiScalar>(&self, level: u32) -> Result<T, PsiError> {
        let top = (level as usize).min(self.levels.len() - 1);
        let mut acc = T::one();
        let mut weight = T::one();
        let p = lift::<T>(self.prime)?;
        for j in 1..=top {
            weight = crate::scalar::mul(&weight, &p)?;
            let diff = (self.levels[j].subgroup_size - self.levels[j - 1].subgroup_size) as u64;
            let term = crate::scalar::mul(&lift::<T>(diff)?, &weight)?;
            acc = add(&acc, &term)?;
        }
        Ok(acc)
    }
}

pub(crate) fn omega_filtration_with(g: &FiniteGroup, p: u64) -> OmegaFiltration {
    let m = log_p(g.exponent(), p);
    let levels = (0..=m)
        .map(|i| {
            let set = omega_set_with(g, p, i);
            let set_size = set.len();
            let sub = Subgroup::closure(g, set).expect("indices come from the group");
            OmegaLevel {
                set_size,
                subgroup_size: sub.len(),
                set_is_subgroup: sub.len() == set_size,
            }
        })
        .collect();
    OmegaFiltration {
        prime: p,
        m,
        levels,
    }
}

pub fn omega_filtration(g: &FiniteGroup) -> Result<OmegaFiltration, NotPGroup> {
    let p = prime_of(g)?;
    Ok(omega_filtration_with(g, p))
}

/// Exact sum of all element orders.
pub fn psi_brute<T: PsiScalar>(g: &FiniteGroup) -> Result<T, PsiError> {
    sum_orders(g, g.elements())
}

/// Exact sum of element orders over a subset of `g`.
pub fn psi_subset<T: PsiScalar>(
    g: &FiniteGroup,
    subset: impl IntoIterator<Item = Elem>,
) -> Result<T, PsiError> {
    let subset: Vec<Elem> = subset.into_iter().collect();
    for &x in &subset {
        g.check_index(x)?;
    }
    sum_orders(g, subset)
}

fn sum_orders<T: PsiScalar>(
    g: &FiniteGroup,
    elems: impl IntoIterator<Item = Elem>,
) -> Result<T, PsiError> {
    let orders = g.element_orders();
    elems
        .into_iter()
        .try_fold(T::zero(), |acc, x| add(&acc, &lift(orders[x])?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, parse_group_expr, BuildOptions};

    fn build(s: &str) -> FiniteGroup {
        build_group(&parse_group_expr(s).unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn primes() {
        assert_eq!(prime_of(&build("C27")), Ok(3));
        assert_eq!(prime_of(&build("C4*C4*C4*C4")), Ok(2));
        assert_eq!(prime_of(&build("C12")), Err(NotPGroup { order: 12 }));
        assert_eq!(prime_of(&build("C1")), Err(NotPGroup { order: 1 }));
        assert!(omega_set(&build("C6"), 1).is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(exponent(&build("C4*C4*C4*C4")), 4);
        assert_eq!(exponent(&build("D16*C2*C2*C2*C2")), 8);
        assert_eq!(exponent(&build("H27")), 3);
        assert_eq!(exponent(&build("C4*C3")), 12);
    }

    #[test]
    fn omega_sets() {
        let d8 = build("D8");
        assert_eq!(omega_set(&d8, 0).unwrap(), vec![0]);
        assert_eq!(omega_set(&d8, 1).unwrap(), vec![0, 2, 4, 5, 6, 7]);
        assert_eq!(omega_set(&build("C4*C4*C4*C4"), 1).unwrap().len(), 16);
    }

    #[test]
    fn omega_subgroups() {
        assert_eq!(omega_subgroup(&build("Q8"), 1).unwrap().len(), 2);
        assert_eq!(omega_subgroup(&build("D8"), 1).unwrap().len(), 8);
        assert_eq!(
            omega_subgroup(&build("C8"), 2).unwrap().members(),
            &[0, 2, 4, 6]
        );
    }

    #[test]
    fn filtrations() {
        let f = omega_filtration(&build("C8")).unwrap();
        assert_eq!(f.subgroup_sizes(), vec![1, 2, 4, 8]);
        assert!(f.is_omega_closed());

        let f = omega_filtration(&build("C9*C9")).unwrap();
        assert_eq!(f.subgroup_sizes(), vec![1, 9, 81]);

        let f = omega_filtration(&build("D16")).unwrap();
        assert_eq!(f.subgroup_sizes(), vec![1, 16, 16, 16]);
        assert_eq!(f.set_sizes(), vec![1, 10, 12, 16]);
        assert_eq!(f.first_open_level(), Some(1));
    }

    #[test]
    fn brute_psi() {
        assert_eq!(psi_brute::<u64>(&build("C3*C3*C3")), Ok(79));
        assert_eq!(psi_brute::<u64>(&build("H27")), Ok(79));
        assert_eq!(psi_brute::<u64>(&build("C2")), Ok(3));
        assert_eq!(psi_brute::<u64>(&build("D16*C2*C2*C2*C2")), Ok(959));
        assert_eq!(psi_brute::<u64>(&build("C4*C4*C4*C4")), Ok(991));
        assert_eq!(
            psi_brute::<u8>(&build("C4*C4*C4*C4")),
            Err(PsiError::Overflow)
        );
    }

    #[test]
    fn subset_psi() {
        let g = build("C8");
        assert_eq!(psi_subset::<u64>(&g, [0, 4]), Ok(3));
        assert_eq!(psi_subset::<u64>(&g, g.elements()), psi_brute(&g));
        assert!(matches!(
            psi_subset::<u64>(&g, [8]),
            Err(PsiError::Group(_))
        ));
    }
}
