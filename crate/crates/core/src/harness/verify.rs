//! Property suites run over a [`Catalog`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cp2::{is_cp2_omega, is_cp2_pairwise};
use crate::group::{FiniteGroup, Subgroup};
use crate::omega::{omega_filtration, omega_set, omega_subgroup};
use crate::psi::{
    compare_profiles, filtrations_agree, order_bijection, psi_bottom_recursion, psi_filtration,
    psi_top_recursion, BijectionOutcome, Theorem,
};
use crate::{Psi, PsiError};

use super::catalog::{Catalog, CatalogEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    Violated,
    Vacuous,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Verified => "verified",
            Self::Violated => "violated",
            Self::Vacuous => "vacuous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub subject: String,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub pairs_checked: usize,
    pub hypothesis_applicable: usize,
    pub violations: Vec<Violation>,
    /// Observations outside the hypotheses (fuzz mode); never violations.
    pub findings: Vec<String>,
    /// Notable applicable cases, e.g. nontrivial equalities.
    pub cases: Vec<String>,
}

impl TheoremReport {
    fn new(id: &'static str, statement: &'static str) -> Self {
        Self {
            id,
            statement,
            pairs_checked: 0,
            hypothesis_applicable: 0,
            violations: Vec::new(),
            findings: Vec::new(),
            cases: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        if !self.violations.is_empty() {
            Status::Violated
        } else if self.hypothesis_applicable == 0 {
            Status::Vacuous
        } else {
            Status::Verified
        }
    }

    fn check(&mut self, ok: bool, subject: impl Into<String>, details: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(Violation {
                subject: subject.into(),
                details: details(),
            });
        }
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<20} {:<8} checked={:>6} applicable={:>6} violations={:>3} findings={:>3}  {}",
            self.id,
            self.status(),
            self.pairs_checked,
            self.hypothesis_applicable,
            self.violations.len(),
            self.findings.len(),
            self.statement
        )?;
        for v in &self.violations {
            write!(f, "\n  violation: {}: {}", v.subject, v.details)?;
        }
        for finding in &self.findings {
            write!(f, "\n  finding: {finding}")?;
        }
        Ok(())
    }
}

fn pair_name(p: &CatalogEntry, q: &CatalogEntry) -> String {
    format!("({}, {})", p.name(), q.name())
}

/// Runs every property suite and returns one report per property, in a
/// fixed order.
pub fn verify_theorems(cat: &Catalog) -> Vec<TheoremReport> {
    let pairs = same_order_pairs(cat);
    vec![
        cp2_agreement(cat),
        max_order_law(cat),
        quotient_cp2(cat),
        quotient_omega(cat),
        omega_levels_cp2(cat),
        omega_nesting(cat),
        elementary_omega1(cat),
        psi_oracles(cat),
        psi_mod_p(cat),
        equal_filtration(&pairs),
        exponent_order(&pairs),
        exponent_bound(&pairs),
        first_difference(&pairs),
        order_bijections(&pairs),
        abelian_injectivity(cat),
    ]
}

fn same_order_pairs(cat: &Catalog) -> Vec<(&CatalogEntry, &CatalogEntry)> {
    let mut out = Vec::new();
    for (i, p) in cat.entries.iter().enumerate() {
        for q in &cat.entries[i + 1..] {
            if p.order() == q.order() && p.prime() == q.prime() {
                out.push((p, q));
            }
        }
    }
    out
}

fn cp2_agreement(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new(
        "cp2-criterion",
        "pairwise CP2 test agrees with the Omega-set criterion",
    );
    for e in &cat.entries {
        r.pairs_checked += 1;
        r.hypothesis_applicable += 1;
        let pairwise = is_cp2_pairwise(&e.group);
        r.check(pairwise.is_cp2 == e.cp2.is_cp2, e.name(), || {
            format!(
                "pairwise={} omega={} witness={:?} level={:?}",
                pairwise.is_cp2, e.cp2.is_cp2, pairwise.witness, e.cp2.failing_level
            )
        });
    }
    r
}

fn max_order_law(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new(
        "max-order-law",
        "in CP2, o(x) != o(y) implies o(xy) = max(o(x), o(y))",
    );
    for e in &cat.entries {
        r.pairs_checked += 1;
        if !e.cp2.is_cp2 {
            continue;
        }
        r.hypothesis_applicable += 1;
        let g = &e.group;
        let orders = g.element_orders();
        let bad = g.elements().find_map(|x| {
            g.elements().find_map(|y| {
                let xy = g.mul(x, y);
                (orders[x] != orders[y] && orders[xy] != orders[x].max(orders[y])).then_some((x, y))
            })
        });
        r.check(bad.is_none(), e.name(), || format!("pair {bad:?}"));
    }
    r
}

fn omega1_quotient(g: &FiniteGroup) -> Result<(usize, FiniteGroup), PsiError> {
    let n1 = omega_subgroup(g, 1)?;
    let q = n1.quotient(format!("{}/Omega_1", g.name()))?;
    Ok((n1.len(), q))
}

fn quotient_cp2(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new("quotient-cp2", "G in CP2 implies G/Omega_1(G) in CP2");
    for e in &cat.entries {
        r.pairs_checked += 1;
        if !e.cp2.is_cp2 {
            continue;
        }
        r.hypothesis_applicable += 1;
        let outcome = omega1_quotient(&e.group).map(|(_, q)| {
            q.order() == 1 || is_cp2_pairwise(&q).is_cp2 && is_cp2_omega(&q).is_ok_and(|c| c.is_cp2)
        });
        r.check(outcome == Ok(true), e.name(), || format!("{outcome:?}"));
    }
    r
}

fn quotient_omega(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new(
        "quotient-omega",
        "|Omega_i(G/Omega_1)| = |Omega_{i+1}(G)| / |Omega_1(G)| in CP2",
    );
    for e in &cat.entries {
        r.pairs_checked += 1;
        if !e.cp2.is_cp2 {
            continue;
        }
        r.hypothesis_applicable += 1;
        let f = e.filtration();
        let result: Result<Vec<(usize, usize)>, PsiError> =
            omega1_quotient(&e.group).and_then(|(n1, q)| {
                (0..=f.m)
                    .map(|i| {
                        let lhs = if q.order() == 1 {
                            1
                        } else {
                            omega_subgroup(&q, i)?.len()
                        };
                        Ok((lhs, f.size_at(i + 1) / n1))
                    })
                    .collect()
            });
        match result {
            Ok(sizes) => {
                let bad = sizes.iter().position(|(a, b)| a != b);
                r.check(bad.is_none(), e.name(), || format!("sizes {sizes:?}"));
            }
            Err(err) => r.check(false, e.name(), || err.to_string()),
        }
    }
    r
}

fn omega_levels_cp2(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new(
        "omega-subgroups-cp2",
        "every Omega_i of a CP2 group is itself CP2",
    );
    for e in &cat.entries {
        r.pairs_checked += 1;
        if !e.cp2.is_cp2 {
            continue;
        }
        r.hypothesis_applicable += 1;
        for i in 1..e.filtration().m {
            let sub = omega_subgroup(&e.group, i).expect("p-group");
            let h = sub.to_group(format!("Omega_{i}({})", e.name()));
            let ok = is_cp2_pairwise(&h).is_cp2 && h.exponent() == e.prime().pow(i);
            r.check(ok, e.name(), || {
                format!("Omega_{i} is not CP2 of exponent p^{i}")
            });
        }
    }
    r
}

fn omega_nesting(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new(
        "omega-nesting",
        "Omega_i(Omega_j(G)) = Omega_i(G) for i <= j",
    );
    for e in &cat.entries {
        r.pairs_checked += 1;
        r.hypothesis_applicable += 1;
        let g = &e.group;
        let m = e.filtration().m;
        for j in 1..=m {
            let outer = omega_subgroup(g, j).expect("p-group");
            let h = outer.to_group("outer");
            for i in 0..=j {
                let inner: Vec<usize> = if h.order() == 1 {
                    vec![0]
                } else {
                    omega_subgroup(&h, i)
                        .expect("p-group")
                        .members()
                        .iter()
                        .map(|&k| outer.members()[k])
                        .collect()
                };
                let direct = omega_subgroup(g, i).expect("p-group");
                r.check(inner == direct.members(), e.name(), || {
                    format!(
                        "Omega_{i}(Omega_{j}) has {} elements, Omega_{i} has {}",
                        inner.len(),
                        direct.len()
                    )
                });
                // sets are nested as well
                if i < j {
                    let (a, b) = (omega_set(g, i).unwrap(), omega_set(g, i + 1).unwrap());
                    r.check(
                        a.iter().all(|x| b.binary_search(x).is_ok()),
                        e.name(),
                        || format!("Omega-set {i} not inside Omega-set {}", i + 1),
                    );
                }
            }
        }
    }
    r
}

fn elementary_omega1(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new(
        "elementary-omega1",
        "in CP2, Omega_1 has exponent p and psi(Omega_1) = p^(r+1) - p + 1",
    );
    for e in &cat.entries {
        r.pairs_checked += 1;
        if !e.cp2.is_cp2 {
            continue;
        }
        r.hypothesis_applicable += 1;
        let p = e.prime();
        let n1 = omega_subgroup(&e.group, 1).expect("p-group");
        let r_exp = crate::omega::log_p(n1.len() as u64, p);
        let expected = p.pow(r_exp + 1) - p + 1;
        let psi = e.profile.omega_psi_at(1);
        let exp_p = n1
            .members()
            .iter()
            .all(|&x| e.group.element_orders()[x] <= p);
        r.check(psi == expected && exp_p, e.name(), || {
            format!("psi(Omega_1) = {psi}, expected {expected}, exponent p: {exp_p}")
        });
    }
    r
}

fn psi_oracles(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new(
        "psi-oracles",
        "top recursion, bottom recursion and filtration formula equal brute-force psi",
    );
    for e in &cat.entries {
        r.pairs_checked += 1;
        r.hypothesis_applicable += 1;
        let brute = e.psi();
        let g = &e.group;
        match psi_top_recursion::<Psi>(g) {
            Ok(v) => r.check(v == brute, e.name(), || format!("top {v} != brute {brute}")),
            Err(PsiError::TopRecursionInapplicable { order }) => {
                r.check(!e.cp2.is_cp2, e.name(), || {
                    format!("top recursion inapplicable at order {order} in a CP2 group")
                });
            }
            Err(err) => r.check(false, e.name(), || format!("top: {err}")),
        }
        if e.cp2.is_cp2 {
            let bottom = psi_bottom_recursion::<Psi>(g);
            r.check(bottom == Ok(brute), e.name(), || {
                format!("bottom {bottom:?} != {brute}")
            });
            let filt = psi_filtration::<Psi>(g);
            r.check(filt == Ok(brute), e.name(), || {
                format!("filtration {filt:?} != {brute}")
            });
        }
        let fresh = omega_filtration(g).ok();
        r.check(fresh.as_ref() == Some(e.filtration()), e.name(), || {
            "cached filtration differs from a fresh one".into()
        });
    }
    r
}

fn psi_mod_p(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new("psi-mod-p", "psi(G) = 1 (mod p) and psi(G) > |G|");
    for e in &cat.entries {
        r.pairs_checked += 1;
        r.hypothesis_applicable += 1;
        let psi = e.psi();
        let n = e.order() as u64;
        r.check(
            psi % e.prime() == 1 && (psi > n) == (n > 1),
            e.name(),
            || format!("psi = {psi}"),
        );
    }
    r
}

type Pairs<'a> = [(&'a CatalogEntry, &'a CatalogEntry)];

fn equal_filtration(pairs: &Pairs<'_>) -> TheoremReport {
    let mut r = TheoremReport::new(
        "T1.1",
        "CP2, same order: psi equal <=> |Omega_i| equal <=> psi(Omega_i) equal",
    );
    for &(p, q) in pairs {
        r.pairs_checked += 1;
        if !(p.cp2.is_cp2 && q.cp2.is_cp2) {
            continue;
        }
        r.hypothesis_applicable += 1;
        let psi_eq = p.psi() == q.psi();
        let filt_eq = filtrations_agree(p.filtration(), q.filtration());
        let top = p.filtration().m.max(q.filtration().m);
        let levels_eq = (0..=top).all(|i| p.profile.omega_psi_at(i) == q.profile.omega_psi_at(i));
        r.check(
            psi_eq == filt_eq && filt_eq == levels_eq,
            pair_name(p, q),
            || {
                format!(
                    "psi {} vs {}; filtrations {:?} vs {:?}; psi(Omega_i) {:?} vs {:?}",
                    p.psi(),
                    q.psi(),
                    p.filtration().subgroup_sizes(),
                    q.filtration().subgroup_sizes(),
                    p.profile.omega_psi,
                    q.profile.omega_psi
                )
            },
        );
        let predicted = compare_profiles(&p.profile, &q.profile)
            .ok()
            .and_then(|c| c.prediction);
        if psi_eq {
            r.cases.push(format!("{} psi={}", pair_name(p, q), p.psi()));
            r.check(
                predicted
                    .as_ref()
                    .is_some_and(|x| x.theorem == Theorem::EqualFiltration),
                pair_name(p, q),
                || format!("equal psi but predictor said {predicted:?}"),
            );
        }
    }
    r
}

fn exponent_order(pairs: &Pairs<'_>) -> TheoremReport {
    let mut r = TheoremReport::new(
        "T1.2",
        "exp(P) > exp(Q) and Omega_{m-1}(P) != P imply psi(P) > psi(Q)",
    );
    for &(a, b) in pairs {
        r.pairs_checked += 1;
        let (ea, eb) = (a.profile.exponent(), b.profile.exponent());
        if ea == eb {
            continue;
        }
        let (big, small) = if ea > eb { (a, b) } else { (b, a) };
        if !big.profile.top_omega_proper() {
            if big.cp2.is_cp2 {
                r.findings.push(format!(
                    "{}: CP2 group with Omega_{{m-1}} = whole group",
                    big.name()
                ));
            }
            if big.psi() < small.psi() {
                r.findings.push(format!(
                    "{}: larger exponent but smaller psi ({} < {}); hypothesis fails",
                    pair_name(big, small),
                    big.psi(),
                    small.psi()
                ));
            }
            continue;
        }
        r.hypothesis_applicable += 1;
        r.cases.push(format!(
            "{} psi {} > {}",
            pair_name(big, small),
            big.psi(),
            small.psi()
        ));
        let cmp = compare_profiles(&big.profile, &small.profile).expect("comparable");
        let ok = cmp
            .prediction
            .as_ref()
            .is_some_and(|x| x.theorem == Theorem::Exponent)
            && cmp.prediction_holds() == Some(true)
            && big.psi() > small.psi();
        r.check(ok, pair_name(big, small), || {
            format!("psi {} vs {}; {}", big.psi(), small.psi(), cmp.theorem_note)
        });
    }
    r
}

fn exponent_bound(pairs: &Pairs<'_>) -> TheoremReport {
    let mut r = TheoremReport::new(
        "exponent-bound",
        "psi(Q) < p^n p^(m-1) < psi(P) when exp(P) = p^m > exp(Q), Omega_{m-1}(P) != P",
    );
    for &(a, b) in pairs {
        r.pairs_checked += 1;
        let (ea, eb) = (a.profile.exponent(), b.profile.exponent());
        if ea == eb {
            continue;
        }
        let (big, small) = if ea > eb { (a, b) } else { (b, a) };
        if !big.profile.top_omega_proper() {
            continue;
        }
        r.hypothesis_applicable += 1;
        let bound = big.order() as u64 * ea.max(eb) / big.prime();
        r.check(
            small.psi() < bound && bound < big.psi(),
            pair_name(big, small),
            || {
                format!(
                    "psi(Q) = {}, bound = {bound}, psi(P) = {}",
                    small.psi(),
                    big.psi()
                )
            },
        );
    }
    r
}

fn first_difference(pairs: &Pairs<'_>) -> TheoremReport {
    let mut r = TheoremReport::new(
        "T1.3",
        "CP2, same exponent p^m, Omega levels equal above m-t-1 and smaller at m-t-1 imply larger psi",
    );
    for &(a, b) in pairs {
        r.pairs_checked += 1;
        let cmp = match compare_profiles(&a.profile, &b.profile) {
            Ok(c) => c,
            Err(err) => {
                r.check(false, pair_name(a, b), || err.to_string());
                continue;
            }
        };
        let Some(pred) = cmp
            .prediction
            .as_ref()
            .filter(|x| x.theorem == Theorem::FirstDifference)
        else {
            continue;
        };
        r.hypothesis_applicable += 1;
        let level = pred.level.expect("T1.3 records its level");
        // orient so that `big` is the predicted winner
        let (big, small) = if pred.relation == Ordering::Greater {
            (a, b)
        } else {
            (b, a)
        };
        r.cases.push(format!(
            "{} level {level}: psi {} > {}",
            pair_name(big, small),
            big.psi(),
            small.psi()
        ));
        let holds = cmp.prediction_holds() == Some(true);
        // intermediate step: psi(Omega_{m-t}) already separates the groups
        let (upper_big, upper_small) = (
            big.profile.omega_psi_at(level + 1),
            small.profile.omega_psi_at(level + 1),
        );
        // levels above the first difference carry identical layer sizes
        let layers_equal = (level + 1..=big.filtration().m)
            .all(|i| big.filtration().size_at(i) == small.filtration().size_at(i));
        r.check(
            holds && upper_big > upper_small && layers_equal,
            pair_name(big, small),
            || {
                format!(
                    "psi {} vs {}; psi(Omega_{}) {upper_big} vs {upper_small}",
                    big.psi(),
                    small.psi(),
                    level + 1
                )
            },
        );
    }
    r
}

fn order_bijections(pairs: &Pairs<'_>) -> TheoremReport {
    let mut r = TheoremReport::new(
        "T1.4",
        "CP2, same order: psi equal <=> an order-preserving bijection exists",
    );
    for &(p, q) in pairs {
        r.pairs_checked += 1;
        let outcome = match order_bijection(&p.group, &q.group) {
            Ok(o) => o,
            Err(err) => {
                r.check(false, pair_name(p, q), || err.to_string());
                continue;
            }
        };
        let psi_eq = p.psi() == q.psi();
        let found = matches!(outcome, BijectionOutcome::Found(_));
        if let BijectionOutcome::Found(b) = &outcome {
            // summing orders over a bijection always gives equal psi
            r.check(
                b.is_valid_for(&p.group, &q.group) && psi_eq,
                pair_name(p, q),
                || "bijection invalid or psi differs".into(),
            );
        }
        let both_cp2 = p.cp2.is_cp2 && q.cp2.is_cp2;
        if !both_cp2 {
            if psi_eq && !found {
                r.findings.push(format!(
                    "{}: equal psi {} without an order-preserving bijection (not both CP2)",
                    pair_name(p, q),
                    p.psi()
                ));
            }
            continue;
        }
        r.hypothesis_applicable += 1;
        r.check(psi_eq == found, pair_name(p, q), || {
            format!("psi {} vs {}, bijection {found}", p.psi(), q.psi())
        });
        if let BijectionOutcome::Found(b) = outcome {
            r.cases.push(format!("{} psi={}", pair_name(p, q), p.psi()));
            let m = p.filtration().m;
            if m >= 1 {
                let below_p = Subgroup::closure(&p.group, omega_set(&p.group, m - 1).unwrap())
                    .expect("valid");
                let below_q = Subgroup::closure(&q.group, omega_set(&q.group, m - 1).unwrap())
                    .expect("valid");
                let map = b.as_map();
                let ok = below_p.members().iter().all(|&x| below_q.contains(map[x]));
                r.check(ok, pair_name(p, q), || {
                    "bijection does not send Omega_{m-1}(P) into Omega_{m-1}(Q)".into()
                });
            }
        }
    }
    r
}

fn abelian_injectivity(cat: &Catalog) -> TheoremReport {
    let mut r = TheoremReport::new(
        "abelian-injectivity",
        "abelian p-groups of the same order have distinct psi",
    );
    let mut groups: BTreeMap<(u64, usize), Vec<&CatalogEntry>> = BTreeMap::new();
    for e in cat.entries.iter().filter(|e| e.abelian_type.is_some()) {
        groups.entry((e.prime(), e.order())).or_default().push(e);
    }
    for ((_, order), entries) in groups {
        r.pairs_checked += 1;
        if entries.len() < 2 {
            continue;
        }
        r.hypothesis_applicable += 1;
        let mut seen: BTreeMap<Psi, &str> = BTreeMap::new();
        for e in entries {
            if let Some(prev) = seen.insert(e.psi(), e.name()) {
                r.check(false, format!("order {order}"), || {
                    format!("{prev} and {} share psi {}", e.name(), e.psi())
                });
            }
        }
    }
    r
}

/// Distinctness of ψ over the abelian groups of order `p^k` (given as
/// `(type, psi)` rows). Returns the colliding pairs.
pub fn psi_collisions(rows: &[(Vec<u64>, Psi)]) -> Vec<(Vec<u64>, Vec<u64>, Psi)> {
    let mut seen: BTreeMap<Psi, &Vec<u64>> = BTreeMap::new();
    let mut out = Vec::new();
    for (ty, psi) in rows {
        if let Some(prev) = seen.insert(*psi, ty) {
            out.push((prev.clone(), ty.clone(), *psi));
        }
    }
    out
}
