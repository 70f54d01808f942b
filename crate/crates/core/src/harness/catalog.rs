use std::collections::BTreeMap;

use thiserror::Error;

use crate::cp2::{cp2_from_filtration, Cp2Report};
use crate::group::{build_group, BuildError, BuildOptions, FiniteGroup, GroupExpr};
use crate::omega::OmegaFiltration;
use crate::psi::GroupProfile;
use crate::{Psi, PsiError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("max order {max_order} exceeds the table limit {limit}")]
    MaxOrderTooLarge { max_order: usize, limit: usize },
    #[error("building {name}: {source}")]
    Build { name: String, source: BuildError },
    #[error("profiling {name}: {source}")]
    Profile { name: String, source: PsiError },
}

/// Default catalog size per prime: 256 for 2, 243 for 3, 125 for 5, p^3 otherwise.
pub fn default_max_order(p: u64) -> usize {
    match p {
        2 => 256,
        3 => 243,
        5 => 125,
        _ => (p * p * p) as usize,
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub group: FiniteGroup,
    pub profile: GroupProfile,
    pub cp2: Cp2Report,
    /// Cyclic factor orders, descending, for abelian entries.
    pub abelian_type: Option<Vec<u64>>,
}

impl CatalogEntry {
    pub fn new(group: FiniteGroup, abelian_type: Option<Vec<u64>>) -> Result<Self, PsiError> {
        let profile = GroupProfile::new(&group)?;
        let cp2 = cp2_from_filtration(&profile.filtration);
        Ok(Self {
            group,
            profile,
            cp2,
            abelian_type,
        })
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    pub fn filtration(&self) -> &OmegaFiltration {
        &self.profile.filtration
    }

    pub fn psi(&self) -> Psi {
        self.profile.psi
    }

    pub fn prime(&self) -> u64 {
        self.profile.prime
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// p-groups built from construction expressions, sorted by prime, order, name.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name() == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds an externally supplied group (e.g. a GT1 import).
    pub fn push(&mut self, group: FiniteGroup) -> Result<(), CatalogError> {
        let name = group.name().to_string();
        let entry = CatalogEntry::new(group, None)
            .map_err(|source| CatalogError::Profile { name, source })?;
        self.entries.push(entry);
        self.sort();
        Ok(())
    }

    fn sort(&mut self) {
        self.entries.sort_by(|a, b| {
            (a.prime(), a.order(), a.name()).cmp(&(b.prime(), b.order(), b.name()))
        });
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Partitions of `k` into parts in non-increasing order.
pub fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

fn cyclic_product(p: u64, parts: &[u32]) -> (GroupExpr, Vec<u64>) {
    let orders: Vec<u64> = parts.iter().map(|&e| p.pow(e)).collect();
    let expr = GroupExpr::product_of(
        orders
            .iter()
            .map(|&o| GroupExpr::leaf(crate::group::Constructor::Cyclic, o)),
    )
    .expect("nonempty partition");
    (expr, orders)
}

/// Every abelian group of order `p^k`, one per partition of `k`.
pub fn abelian_groups(
    p: u64,
    k: u32,
    opts: BuildOptions,
) -> Result<Vec<(Vec<u64>, FiniteGroup)>, CatalogError> {
    partitions(k)
        .into_iter()
        .map(|parts| {
            let (expr, orders) = cyclic_product(p, &parts);
            build_group(&expr, opts)
                .map(|g| (orders, g))
                .map_err(|e| CatalogError::Build {
                    name: expr.to_string(),
                    source: e.into(),
                })
        })
        .collect()
}

/// Nonabelian building blocks of order `p^a`.
fn nonabelian_bases(p: u64, a: u32) -> Vec<GroupExpr> {
    use crate::group::Constructor::*;
    let n = p.pow(a);
    let mut out = Vec::new();
    if p == 2 {
        if a >= 3 {
            out.push(GroupExpr::leaf(Dihedral, n));
            out.push(GroupExpr::leaf(Quaternion, n));
        }
        // M8 is D8; the modular family starts at 16
        if a >= 4 {
            out.push(GroupExpr::leaf(Modular, n));
        }
    } else {
        if a == 3 {
            out.push(GroupExpr::leaf(Heisenberg, n));
        }
        if a >= 3 {
            out.push(GroupExpr::leaf(Modular, n));
        }
    }
    out
}

fn catalog_exprs(p: u64, max_order: usize) -> Vec<(GroupExpr, Option<Vec<u64>>)> {
    let mut k_max = 0;
    while (p.pow(k_max + 1) as usize) <= max_order {
        k_max += 1;
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        for parts in partitions(k) {
            let (expr, orders) = cyclic_product(p, &parts);
            out.push((expr, Some(orders)));
        }
    }
    // nonabelian bases, alone and times every abelian group that fits
    for a in 3..=k_max {
        for base in nonabelian_bases(p, a) {
            out.push((base.clone(), None));
            for b in 1..=k_max - a {
                for parts in partitions(b) {
                    let (abelian, _) = cyclic_product(p, &parts);
                    let expr = GroupExpr::Product(Box::new(base.clone()), Box::new(abelian));
                    // flatten to a left-nested product so names normalize
                    let flat = GroupExpr::product_of(
                        expr.leaves()
                            .into_iter()
                            .map(|(c, k)| GroupExpr::leaf(c, k)),
                    )
                    .expect("nonempty");
                    out.push((flat, None));
                }
            }
        }
    }
    out
}

/// Builds the catalog for each prime up to `max_order`.
///
/// Contents per prime: every abelian group of order `p^k` (one per
/// partition), the dihedral, generalized quaternion and modular 2-groups of
/// order at least 8 (16 for modular), the extraspecial group `H p^3` and the
/// modular groups `M p^j` for odd p, and each nonabelian block times every
/// abelian group that keeps the order within `max_order`. For p = 2 and
/// `max_order >= 256` this includes `D16*C2*C2*C2*C2`.
pub fn build_catalog(primes: &[u64], max_order: usize) -> Result<Catalog, CatalogError> {
    let specs: Vec<(u64, usize)> = primes.iter().map(|&p| (p, max_order)).collect();
    build_catalog_for(&specs)
}

/// Catalog with [`default_max_order`] for each prime.
pub fn build_default_catalog(primes: &[u64]) -> Result<Catalog, CatalogError> {
    let specs: Vec<(u64, usize)> = primes.iter().map(|&p| (p, default_max_order(p))).collect();
    build_catalog_for(&specs)
}

pub fn build_catalog_for(specs: &[(u64, usize)]) -> Result<Catalog, CatalogError> {
    let limit = crate::group::max_order_from_env();
    let mut by_name: BTreeMap<String, CatalogEntry> = BTreeMap::new();
    for &(p, max_order) in specs {
        if !is_prime(p) {
            return Err(CatalogError::NotPrime(p));
        }
        if max_order > limit {
            return Err(CatalogError::MaxOrderTooLarge { max_order, limit });
        }
        let opts = BuildOptions { max_order };
        for (expr, abelian_type) in catalog_exprs(p, max_order) {
            let name = expr.to_string();
            if by_name.contains_key(&name) {
                continue;
            }
            let group = build_group(&expr, opts).map_err(|e| CatalogError::Build {
                name: name.clone(),
                source: e.into(),
            })?;
            let entry =
                CatalogEntry::new(group, abelian_type).map_err(|source| CatalogError::Profile {
                    name: name.clone(),
                    source,
                })?;
            by_name.insert(name, entry);
        }
    }
    let mut cat = Catalog {
        entries: by_name.into_values().collect(),
    };
    cat.sort();
    Ok(cat)
}
