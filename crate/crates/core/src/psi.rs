//! Fast ψ formulas for p-groups, ψ comparison predictors, and
//! order-preserving bijections.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::omega::{
    log_p, omega_filtration_with, omega_set_with, prime_of, psi_subset, OmegaFiltration,
};
use crate::scalar::{add, lift, mul, pow, sub, PsiScalar};
use crate::{Psi, PsiError};

/// ψ by peeling off the top layer: with `exp(G) = p^m` and
/// `M = Ω_{m-1}(G) != G`, every element outside `M` has order `p^m`, so
/// `ψ(G) = ψ(M) + |M| p^m (|G|/|M| - 1)`. Recurses into `M` until trivial.
pub fn psi_top_recursion<T: PsiScalar>(g: &FiniteGroup) -> Result<T, PsiError> {
    if g.order() == 1 {
        return Ok(T::one());
    }
    let p = prime_of(g)?;
    top_step(g, p)
}

fn top_step<T: PsiScalar>(g: &FiniteGroup, p: u64) -> Result<T, PsiError> {
    if g.order() == 1 {
        return Ok(T::one());
    }
    let exp = g.exponent();
    let m = log_p(exp, p);
    let below = Subgroup::closure(g, omega_set_with(g, p, m - 1))?;
    if below.is_whole() {
        return Err(PsiError::TopRecursionInapplicable { order: g.order() });
    }
    let inner_group = below.to_group(format!("Omega_{}({})", m - 1, g.name()));
    let inner: T = top_step(&inner_group, p)?;
    let size_m = lift::<T>(below.len() as u64)?;
    let cosets = lift::<T>((g.order() / below.len() - 1) as u64)?;
    let layer = mul(&mul(&size_m, &lift(exp)?)?, &cosets)?;
    add(&inner, &layer)
}

/// ψ through the quotient by `N = Ω_1(G)`, `|N| = p^r`:
/// `ψ(G) = 1 - p + p^(r+1) ψ(G/N)`. Requires CP2 at every step.
pub fn psi_bottom_recursion<T: PsiScalar>(g: &FiniteGroup) -> Result<T, PsiError> {
    if g.order() == 1 {
        return Ok(T::one());
    }
    let p = prime_of(g)?;
    bottom_step(g, p)
}

fn bottom_step<T: PsiScalar>(g: &FiniteGroup, p: u64) -> Result<T, PsiError> {
    if g.order() == 1 {
        return Ok(T::one());
    }
    let filtration = omega_filtration_with(g, p);
    if !filtration.is_omega_closed() {
        return Err(PsiError::NotCp2(g.name().to_string()));
    }
    let n1 = Subgroup::closure(g, omega_set_with(g, p, 1))?;
    let r = log_p(n1.len() as u64, p);
    let q = n1.quotient(format!("{}/Omega_1", g.name()))?;
    let inner: T = bottom_step(&q, p)?;
    let scaled = mul(&pow::<T>(p, r + 1)?, &inner)?;
    sub(&add(&scaled, &T::one())?, &lift(p)?)
}

/// ψ from the Ω-filtration: `1 + sum_j (|Ω_j| - |Ω_{j-1}|) p^j`.
pub fn psi_filtration<T: PsiScalar>(g: &FiniteGroup) -> Result<T, PsiError> {
    if g.order() == 1 {
        return Ok(T::one());
    }
    let p = prime_of(g)?;
    let f = omega_filtration_with(g, p);
    if !f.is_omega_closed() {
        return Err(PsiError::NotCp2(g.name().to_string()));
    }
    f.psi_up_to(f.m)
}

/// Everything the comparison predictors need about one p-group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupProfile {
    pub name: String,
    pub order: usize,
    pub prime: u64,
    pub filtration: OmegaFiltration,
    pub psi: Psi,
    /// `ψ(Ω_i(G))` for `i = 0..=m`, summed element by element.
    pub omega_psi: Vec<Psi>,
    pub spectrum: BTreeMap<u64, usize>,
}

impl GroupProfile {
    pub fn new(g: &FiniteGroup) -> Result<Self, PsiError> {
        let prime = prime_of(g)?;
        let filtration = omega_filtration_with(g, prime);
        let omega_psi = (0..=filtration.m)
            .map(|i| {
                let sub = Subgroup::closure(g, omega_set_with(g, prime, i))?;
                psi_subset(g, sub.members().iter().copied())
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            name: g.name().to_string(),
            order: g.order(),
            prime,
            psi: crate::omega::psi_brute(g)?,
            omega_psi,
            spectrum: g.order_spectrum(),
            filtration,
        })
    }

    pub fn is_cp2(&self) -> bool {
        self.filtration.is_omega_closed()
    }

    pub fn m(&self) -> u32 {
        self.filtration.m
    }

    pub fn exponent(&self) -> u64 {
        self.filtration.exponent()
    }

    /// `Ω_{m-1}(G) != G`.
    pub fn top_omega_proper(&self) -> bool {
        self.m() >= 1 && self.filtration.size_at(self.m() - 1) < self.order
    }

    /// `ψ(Ω_i)`; for `i >= m` this is `ψ(G)`.
    pub fn omega_psi_at(&self, level: u32) -> Psi {
        let i = (level as usize).min(self.omega_psi.len() - 1);
        self.omega_psi[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Same-order CP2 groups: equal ψ iff equal Ω-filtrations.
    EqualFiltration,
    /// Larger exponent with proper `Ω_{m-1}` forces larger ψ.
    Exponent,
    /// Same exponent, CP2: the first filtration difference from the top decides.
    FirstDifference,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::EqualFiltration => "T1.1",
            Self::Exponent => "T1.2",
            Self::FirstDifference => "T1.3",
        })
    }
}

pub fn relation_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub theorem: Theorem,
    pub relation: Ordering,
    /// For T1.3: the first level `m-t-1` (scanning down) where the filtrations differ.
    pub level: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub description: String,
    pub passed: bool,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "pass" } else { "fail" };
        write!(f, "[{tag}] {}", self.description)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiComparison {
    pub psi_p: Psi,
    pub psi_q: Psi,
    pub relation: Ordering,
    pub prediction: Option<Prediction>,
    /// One-line summary of which predictor applied, or why none did.
    pub theorem_note: String,
    pub hypothesis_log: Vec<Hypothesis>,
}

impl PsiComparison {
    /// `Some(false)` marks a prediction that disagrees with the actual relation.
    pub fn prediction_holds(&self) -> Option<bool> {
        self.prediction
            .as_ref()
            .map(|p| p.relation == self.relation)
    }
}

fn check_comparable(p: &GroupProfile, q: &GroupProfile) -> Result<(), PsiError> {
    if p.order != q.order {
        return Err(PsiError::OrderMismatch {
            left: p.order,
            right: q.order,
        });
    }
    if p.prime != q.prime {
        return Err(PsiError::PrimeMismatch {
            left: p.prime,
            right: q.prime,
        });
    }
    Ok(())
}

/// Equal Ω-filtrations, for two CP2 p-groups of the same order.
pub fn psi_equal_via_omega(p: &FiniteGroup, q: &FiniteGroup) -> Result<bool, PsiError> {
    let (pp, qp) = (GroupProfile::new(p)?, GroupProfile::new(q)?);
    profiles_equal_via_omega(&pp, &qp)
}

pub fn profiles_equal_via_omega(p: &GroupProfile, q: &GroupProfile) -> Result<bool, PsiError> {
    check_comparable(p, q)?;
    for g in [p, q] {
        if !g.is_cp2() {
            return Err(PsiError::NotCp2(g.name.clone()));
        }
    }
    Ok(filtrations_agree(&p.filtration, &q.filtration))
}

pub(crate) fn filtrations_agree(a: &OmegaFiltration, b: &OmegaFiltration) -> bool {
    let top = a.m.max(b.m);
    (0..=top).all(|i| a.size_at(i) == b.size_at(i))
}

pub fn predict_order(p: &FiniteGroup, q: &FiniteGroup) -> Result<PsiComparison, PsiError> {
    compare_profiles(&GroupProfile::new(p)?, &GroupProfile::new(q)?)
}

/// Actual ψ relation of `p` and `q` plus whatever the exponent and
/// filtration predictors say about it.
pub fn compare_profiles(p: &GroupProfile, q: &GroupProfile) -> Result<PsiComparison, PsiError> {
    check_comparable(p, q)?;
    let mut log = vec![
        Hypothesis {
            description: format!("|P| = |Q| = {}", p.order),
            passed: true,
        },
        Hypothesis {
            description: format!("P and Q are {}-groups", p.prime),
            passed: true,
        },
    ];
    let mut prediction = None;
    let note;
    let (ep, eq) = (p.exponent(), q.exponent());
    if ep != eq {
        let (big, label) = if ep > eq { (p, "P") } else { (q, "Q") };
        log.push(Hypothesis {
            description: format!("exp(P) = {ep} != exp(Q) = {eq}"),
            passed: true,
        });
        let proper = big.top_omega_proper();
        log.push(Hypothesis {
            description: format!("Omega_{{m-1}}({label}) != {label}"),
            passed: proper,
        });
        if proper {
            let relation = ep.cmp(&eq);
            note = format!("T1.2 predicts {}", relation_symbol(relation));
            prediction = Some(Prediction {
                theorem: Theorem::Exponent,
                relation,
                level: None,
            });
        } else {
            note = format!("T1.2 inapplicable: Omega_{{m-1}}({label})={label}");
        }
    } else {
        let m = p.m();
        log.push(Hypothesis {
            description: format!("exp(P) = exp(Q) = {ep}"),
            passed: true,
        });
        for (g, label) in [(p, "P"), (q, "Q")] {
            log.push(Hypothesis {
                description: format!("{label} is CP2"),
                passed: g.is_cp2(),
            });
        }
        if p.is_cp2() && q.is_cp2() {
            let differing = (0..m)
                .rev()
                .find(|&l| p.filtration.size_at(l) != q.filtration.size_at(l));
            match differing {
                Some(level) => {
                    let (a, b) = (p.filtration.size_at(level), q.filtration.size_at(level));
                    log.push(Hypothesis {
                        description: format!(
                            "|Omega_i(P)| = |Omega_i(Q)| for i = {}..{m}",
                            level + 1
                        ),
                        passed: true,
                    });
                    log.push(Hypothesis {
                        description: format!(
                            "|Omega_{level}(P)| = {a} != |Omega_{level}(Q)| = {b}"
                        ),
                        passed: true,
                    });
                    // smaller Ω at the first difference means larger ψ
                    let relation = b.cmp(&a);
                    note = format!(
                        "T1.3 predicts {} (first difference at level {level}, t={})",
                        relation_symbol(relation),
                        m - 1 - level
                    );
                    prediction = Some(Prediction {
                        theorem: Theorem::FirstDifference,
                        relation,
                        level: Some(level),
                    });
                }
                None => {
                    log.push(Hypothesis {
                        description: "|Omega_i(P)| = |Omega_i(Q)| for every i".into(),
                        passed: true,
                    });
                    note = "T1.1 predicts =".into();
                    prediction = Some(Prediction {
                        theorem: Theorem::EqualFiltration,
                        relation: Ordering::Equal,
                        level: None,
                    });
                }
            }
        } else {
            note = "none applicable: equal exponents but not both CP2".into();
        }
    }
    Ok(PsiComparison {
        psi_p: p.psi,
        psi_q: q.psi,
        relation: p.psi.cmp(&q.psi),
        prediction,
        theorem_note: note,
        hypothesis_log: log,
    })
}

/// An order-preserving bijection between two groups, as `(x in P, f(x) in Q)`
/// pairs sorted by element order and then by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBijection {
    pub pairs: Vec<(Elem, Elem)>,
}

impl OrderBijection {
    /// `f` as a lookup table indexed by elements of `P`.
    pub fn as_map(&self) -> Vec<Elem> {
        let mut map = vec![0; self.pairs.len()];
        for &(x, y) in &self.pairs {
            map[x] = y;
        }
        map
    }

    pub fn is_valid_for(&self, p: &FiniteGroup, q: &FiniteGroup) -> bool {
        let n = p.order();
        if q.order() != n || self.pairs.len() != n {
            return false;
        }
        let (mut seen_p, mut seen_q) = (vec![false; n], vec![false; n]);
        self.pairs.iter().all(|&(x, y)| {
            x < n
                && y < n
                && !std::mem::replace(&mut seen_p[x], true)
                && !std::mem::replace(&mut seen_q[y], true)
                && p.element_orders()[x] == q.element_orders()[y]
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BijectionOutcome {
    Found(OrderBijection),
    /// The largest element order whose counts differ.
    Mismatch {
        order: u64,
        count_p: usize,
        count_q: usize,
    },
}

fn buckets(g: &FiniteGroup) -> BTreeMap<u64, Vec<Elem>> {
    let mut b: BTreeMap<u64, Vec<Elem>> = BTreeMap::new();
    for (x, &o) in g.element_orders().iter().enumerate() {
        b.entry(o).or_default().push(x);
    }
    b
}

pub fn order_bijection(p: &FiniteGroup, q: &FiniteGroup) -> Result<BijectionOutcome, PsiError> {
    if p.order() != q.order() {
        return Err(PsiError::OrderMismatch {
            left: p.order(),
            right: q.order(),
        });
    }
    let (bp, bq) = (buckets(p), buckets(q));
    let mut all_orders: Vec<u64> = bp.keys().chain(bq.keys()).copied().collect();
    all_orders.sort_unstable();
    all_orders.dedup();
    // scan from the largest order down, like peeling Ω-layers from the top
    for o in all_orders.into_iter().rev() {
        let count_p = bp.get(&o).map_or(0, Vec::len);
        let count_q = bq.get(&o).map_or(0, Vec::len);
        if count_p != count_q {
            return Ok(BijectionOutcome::Mismatch {
                order: o,
                count_p,
                count_q,
            });
        }
    }
    let pairs = bp
        .values()
        .zip(bq.values())
        .flat_map(|(xs, ys)| xs.iter().copied().zip(ys.iter().copied()))
        .collect();
    Ok(BijectionOutcome::Found(OrderBijection { pairs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, parse_group_expr, BuildOptions};
    use num_bigint::BigUint;

    fn build(s: &str) -> FiniteGroup {
        build_group(&parse_group_expr(s).unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn top_recursion() {
        assert_eq!(psi_top_recursion::<u64>(&build("C8")), Ok(43));
        assert_eq!(psi_top_recursion::<u64>(&build("C4")), Ok(11));
        assert_eq!(psi_top_recursion::<u64>(&build("C1")), Ok(1));
        assert_eq!(
            psi_top_recursion::<u64>(&build("D16")),
            Err(PsiError::TopRecursionInapplicable { order: 16 })
        );
        assert!(matches!(
            psi_top_recursion::<u64>(&build("C6")),
            Err(PsiError::NotPGroup(_))
        ));
    }

    #[test]
    fn bottom_recursion() {
        assert_eq!(psi_bottom_recursion::<u64>(&build("C4")), Ok(11));
        assert_eq!(psi_bottom_recursion::<u64>(&build("C3*C3*C3")), Ok(79));
        assert_eq!(psi_bottom_recursion::<u64>(&build("C9*C3")), Ok(187));
        assert_eq!(
            psi_bottom_recursion::<u64>(&build("D8")),
            Err(PsiError::NotCp2("D8".into()))
        );
    }

    #[test]
    fn filtration_formula() {
        assert_eq!(psi_filtration::<u64>(&build("C8")), Ok(43));
        assert_eq!(psi_filtration::<u64>(&build("C9*C9")), Ok(673));
        assert_eq!(psi_filtration::<u64>(&build("C9*C3*C3")), Ok(565));
        assert!(matches!(
            psi_filtration::<u64>(&build("D16")),
            Err(PsiError::NotCp2(_))
        ));
    }

    #[test]
    fn scalar_types_agree() {
        for s in ["C27", "Q8*C4", "C9*C3*C3", "H27*C3"] {
            let g = build(s);
            let small: u64 = psi_filtration(&g).unwrap();
            let big: BigUint = psi_filtration(&g).unwrap();
            assert_eq!(BigUint::from(small), big);
            let big_bottom: BigUint = psi_bottom_recursion(&g).unwrap();
            assert_eq!(big, big_bottom);
            let narrow: u128 = psi_top_recursion(&g).unwrap();
            assert_eq!(narrow, small as u128);
        }
        assert_eq!(psi_filtration::<u8>(&build("C27")), Err(PsiError::Overflow));
    }

    #[test]
    fn equality_via_omega() {
        let c93 = build("C9*C3");
        assert_eq!(psi_equal_via_omega(&c93, &build("M27")), Ok(true));
        assert_eq!(psi_equal_via_omega(&c93, &build("C27")), Ok(false));
        assert_eq!(psi_equal_via_omega(&c93, &c93), Ok(true));
        assert!(matches!(
            psi_equal_via_omega(&c93, &build("C9")),
            Err(PsiError::OrderMismatch { .. })
        ));
        assert!(matches!(
            psi_equal_via_omega(&build("D8"), &build("Q8")),
            Err(PsiError::NotCp2(_))
        ));
    }

    #[test]
    fn predictions() {
        let c = predict_order(&build("C27"), &build("C9*C3")).unwrap();
        assert_eq!((c.psi_p, c.psi_q), (547, 187));
        assert_eq!(c.relation, Ordering::Greater);
        let pred = c.prediction.clone().unwrap();
        assert_eq!(pred.theorem, Theorem::Exponent);
        assert_eq!(pred.relation, Ordering::Greater);

        let c = predict_order(&build("D16*C2*C2*C2*C2"), &build("C4*C4*C4*C4")).unwrap();
        assert_eq!((c.psi_p, c.psi_q), (959, 991));
        assert_eq!(c.relation, Ordering::Less);
        assert_eq!(c.prediction, None);
        assert_eq!(c.theorem_note, "T1.2 inapplicable: Omega_{m-1}(P)=P");

        let c = predict_order(&build("C9*C9"), &build("C9*C3*C3")).unwrap();
        assert_eq!((c.psi_p, c.psi_q), (673, 565));
        let pred = c.prediction.clone().unwrap();
        assert_eq!(pred.theorem, Theorem::FirstDifference);
        assert_eq!(pred.level, Some(1));
        assert_eq!(c.prediction_holds(), Some(true));

        // swapped arguments flip the prediction
        let c = predict_order(&build("C9*C3"), &build("C27")).unwrap();
        assert_eq!(c.prediction.unwrap().relation, Ordering::Less);

        let c = predict_order(&build("C9*C3"), &build("M27")).unwrap();
        assert_eq!(c.prediction.unwrap().theorem, Theorem::EqualFiltration);
        assert_eq!(c.relation, Ordering::Equal);

        assert!(matches!(
            predict_order(&build("C8"), &build("C9")),
            Err(PsiError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn bijections() {
        let (p, q) = (build("C3*C3*C3"), build("H27"));
        match order_bijection(&p, &q).unwrap() {
            BijectionOutcome::Found(b) => {
                assert_eq!(b.pairs.len(), 27);
                assert!(b.is_valid_for(&p, &q));
            }
            other => panic!("{other:?}"),
        }
        let g = build("D8");
        match order_bijection(&g, &g).unwrap() {
            BijectionOutcome::Found(b) => assert_eq!(b.as_map(), (0..8).collect::<Vec<_>>()),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            order_bijection(&build("C4"), &build("C2*C2")).unwrap(),
            BijectionOutcome::Mismatch {
                order: 4,
                count_p: 2,
                count_q: 0
            }
        );
        assert!(order_bijection(&build("C4"), &build("C8")).is_err());
    }
}
