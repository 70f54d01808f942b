//! Finite groups stored as dense multiplication tables.

mod build;
mod expr;
mod gt1;
mod subgroup;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use build::{build_group, expr_order, max_order_from_env, BuildOptions, DEFAULT_MAX_ORDER};
pub use expr::{parse_group_expr, Constructor, ExprError, GroupExpr};
pub use gt1::{parse_group_table, serialize_group};
pub use subgroup::Subgroup;

/// Element index inside a [`FiniteGroup`]. Index 0 is always the identity.
pub type Elem = usize;

/// Tables up to this order are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 512;

/// How associativity of an imported table is validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssocCheck {
    /// Exhaustive up to [`EXHAUSTIVE_ASSOC_LIMIT`], sampled above it.
    #[default]
    Auto,
    /// Always check every triple.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("line {line}: {msg}")]
    MalformedRow { line: usize, msg: String },
    #[error("row {row}: expected {expected} entries, found {found}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("not a latin square: {0}")]
    NotLatin(String),
    #[error("index 0 is not the identity")]
    IdentityNotZero,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("element {0} does not reach the identity within the group order")]
    NoFiniteOrder(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{constructor}{param}: {reason}")]
    Domain {
        constructor: char,
        param: u64,
        reason: &'static str,
    },
    #[error("group order {order} exceeds the table limit {limit}")]
    TooLarge { order: u128, limit: usize },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: Elem, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Parses and builds a group expression, with the table limit taken from
/// `PSIGROUPS_MAX_ORDER`.
pub fn group_from_expr(text: &str) -> Result<FiniteGroup, BuildError> {
    let expr = parse_group_expr(text)?;
    let opts = BuildOptions {
        max_order: max_order_from_env(),
    };
    Ok(build_group(&expr, opts)?)
}

/// A finite group given by its complete multiplication table.
///
/// Immutable after construction; inverses and element orders are computed
/// eagerly so a group can be shared freely across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u64>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major table, validating every group axiom.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        assoc: AssocCheck,
    ) -> Result<Self, TableError> {
        if order == 0 {
            return Err(TableError::EmptyGroup);
        }
        if table.len() != order * order {
            return Err(TableError::RowCount {
                expected: order,
                found: table.len() / order,
            });
        }
        if let Some(pos) = table.iter().position(|&v| v as usize >= order) {
            return Err(TableError::EntryOutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos] as usize,
            });
        }
        check_latin(order, &table)?;
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(TableError::IdentityNotZero);
            }
        }
        check_assoc(order, &table, assoc)?;
        Self::finish(name.into(), order, table)
    }

    /// Builds a group from a table known to satisfy the axioms (constructors).
    pub(crate) fn from_trusted_table(name: String, order: usize, table: Vec<u32>) -> Self {
        Self::finish(name, order, table).expect("constructed table is a group")
    }

    fn finish(name: String, order: usize, table: Vec<u32>) -> Result<Self, TableError> {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            // latin square: exactly one b with a*b = e
            let b = row.iter().position(|&v| v == 0).expect("latin row");
            inverses[a] = b as u32;
        }
        let mut orders = vec![0u64; order];
        for x in 0..order {
            let mut k = 1u64;
            let mut y = x;
            while y != 0 {
                y = table[y * order + x] as usize;
                k += 1;
                if k as usize > order {
                    return Err(TableError::NoFiniteOrder(x));
                }
            }
            orders[x] = k;
        }
        Ok(Self {
            name,
            order,
            table,
            inverses,
            orders,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub(crate) fn with_name(mut self, name: String) -> Self {
        self.name = name;
        self
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a] as usize
    }

    /// `x^k` by repeated squaring.
    pub fn pow(&self, x: Elem, mut k: u64) -> Elem {
        let mut base = x;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn check_index(&self, x: Elem) -> Result<(), GroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    /// Order of `x`: the least `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: Elem) -> Result<u64, GroupError> {
        self.check_index(x)?;
        Ok(self.orders[x])
    }

    /// All element orders indexed by element.
    pub fn element_orders(&self) -> &[u64] {
        &self.orders
    }

    /// Map from element order to the number of elements of that order.
    pub fn order_spectrum(&self) -> BTreeMap<u64, usize> {
        let mut spectrum = BTreeMap::new();
        for &o in &self.orders {
            *spectrum.entry(o).or_insert(0) += 1;
        }
        spectrum
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every element index, as a set.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn check_latin(order: usize, table: &[u32]) -> Result<(), TableError> {
    let mut seen = vec![usize::MAX; order];
    for r in 0..order {
        for c in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == r {
                return Err(TableError::NotLatin(format!("row {r} repeats entry {v}")));
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..order {
        for r in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == c {
                return Err(TableError::NotLatin(format!(
                    "column {c} repeats entry {v}"
                )));
            }
            seen[v] = c;
        }
    }
    Ok(())
}

fn check_assoc(order: usize, table: &[u32], mode: AssocCheck) -> Result<(), TableError> {
    let mul = |a: usize, b: usize| table[a * order + b] as usize;
    let holds = |a, b, c| mul(mul(a, b), c) == mul(a, mul(b, c));
    if mode == AssocCheck::Exhaustive || order <= EXHAUSTIVE_ASSOC_LIMIT {
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(TableError::NotAssociative { a, b, c });
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
        let samples = 10 * order * order;
        for _ in 0..samples {
            let (a, b, c) = (
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            );
            if !holds(a, b, c) {
                return Err(TableError::NotAssociative { a, b, c });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_table(n: usize) -> Vec<u32> {
        (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect()
    }

    #[test]
    fn cyclic_orders() {
        let g = FiniteGroup::from_table("C4", 4, cyclic_table(4), AssocCheck::Auto).unwrap();
        assert_eq!(g.element_orders(), &[1, 4, 2, 4]);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.pow(1, 6), 2);
    }

    #[test]
    fn rejects_repeated_row_entry() {
        let mut t = cyclic_table(3);
        t[5] = 2; // row 1 = [1, 2, 2]
        let err = FiniteGroup::from_table("bad", 3, t, AssocCheck::Auto).unwrap_err();
        assert!(matches!(err, TableError::NotLatin(_)), "{err}");
    }

    #[test]
    fn rejects_misplaced_identity() {
        // Z3 with 1 playing the identity role.
        let t = vec![2, 0, 1, 0, 1, 2, 1, 2, 0];
        let err = FiniteGroup::from_table("bad", 3, t, AssocCheck::Auto).unwrap_err();
        assert_eq!(err, TableError::IdentityNotZero);
    }

    #[test]
    fn rejects_nonassociative_loop() {
        // Smallest non-associative loop with identity 0 (order 5).
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let err = FiniteGroup::from_table("loop", 5, t, AssocCheck::Auto).unwrap_err();
        assert!(matches!(err, TableError::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn out_of_range_element() {
        let g = FiniteGroup::from_table("C2", 2, cyclic_table(2), AssocCheck::Auto).unwrap();
        assert!(matches!(
            g.element_order(2),
            Err(GroupError::IndexOutOfRange { index: 2, order: 2 })
        ));
    }
}
