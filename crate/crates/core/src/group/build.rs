use super::{Constructor, FiniteGroup, GroupError, GroupExpr};

/// Default cap on the order of a constructed group (table has n^2 entries).
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Reads `PSIGROUPS_MAX_ORDER`, falling back to [`DEFAULT_MAX_ORDER`].
pub fn max_order_from_env() -> usize {
    std::env::var("PSIGROUPS_MAX_ORDER")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_order: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// Returns `(p, j)` when `n = p^j` with p prime and j >= 1.
fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut j = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        j += 1;
    }
    (rest == 1).then_some((p, j))
}

fn domain(constructor: Constructor, param: u64, reason: &'static str) -> GroupError {
    GroupError::Domain {
        constructor: constructor.letter(),
        param,
        reason,
    }
}

fn leaf_order(c: Constructor, k: u64) -> Result<u64, GroupError> {
    let ok = match c {
        Constructor::Cyclic => k >= 1,
        Constructor::Dihedral => k >= 4 && k.is_multiple_of(2),
        Constructor::Quaternion => matches!(prime_power(k), Some((2, j)) if j >= 3),
        Constructor::Heisenberg => matches!(prime_power(k), Some((p, 3)) if p != 2),
        Constructor::Modular => matches!(prime_power(k), Some((_, j)) if j >= 3),
    };
    if ok {
        Ok(k)
    } else {
        Err(domain(
            c,
            k,
            match c {
                Constructor::Cyclic => "order must be at least 1",
                Constructor::Dihedral => "order must be even and at least 4",
                Constructor::Quaternion => "order must be 2^j with j >= 3",
                Constructor::Heisenberg => "order must be p^3 for an odd prime p",
                Constructor::Modular => "order must be p^j with j >= 3",
            },
        ))
    }
}

/// Order of the group an expression denotes, validating every leaf.
pub fn expr_order(expr: &GroupExpr) -> Result<u128, GroupError> {
    match expr {
        GroupExpr::Leaf(c, k) => leaf_order(*c, *k).map(u128::from),
        GroupExpr::Product(l, r) => {
            let (a, b) = (expr_order(l)?, expr_order(r)?);
            Ok(a.saturating_mul(b))
        }
    }
}

/// Evaluates a construction expression into a multiplication table.
///
/// Products are direct products indexed lexicographically with the left
/// factor major: `(a, b)` lives at `a * |B| + b`.
pub fn build_group(expr: &GroupExpr, opts: BuildOptions) -> Result<FiniteGroup, GroupError> {
    let order = expr_order(expr)?;
    if order > opts.max_order as u128 {
        return Err(GroupError::TooLarge {
            order,
            limit: opts.max_order,
        });
    }
    Ok(eval(expr).with_name(expr.to_string()))
}

fn eval(expr: &GroupExpr) -> FiniteGroup {
    match expr {
        GroupExpr::Leaf(c, k) => {
            let k = *k as usize;
            let name = format!("{}{}", c.letter(), k);
            let table = match c {
                Constructor::Cyclic => cyclic(k),
                Constructor::Dihedral => dihedral(k),
                Constructor::Quaternion => quaternion(k),
                Constructor::Heisenberg => heisenberg(k),
                Constructor::Modular => modular(k),
            };
            FiniteGroup::from_trusted_table(name, k, table)
        }
        GroupExpr::Product(l, r) => direct_product(&eval(l), &eval(r)),
    }
}

pub(crate) fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            table.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
        }
    }
    FiniteGroup::from_trusted_table(format!("{}*{}", a.name(), b.name()), n, table)
}

fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u32> {
    let mut t = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            t.push(f(x, y) as u32);
        }
    }
    t
}

fn cyclic(n: usize) -> Vec<u32> {
    from_fn(n, |x, y| (x + y) % n)
}

/// Rotations `r^i` at `i`, reflections `s r^i` at `n/2 + i`; `r s = s r^-1`.
fn dihedral(k: usize) -> Vec<u32> {
    let n = k / 2;
    from_fn(k, |x, y| {
        let (ex, i) = (x / n, x % n);
        let (ey, j) = (y / n, y % n);
        match (ex, ey) {
            (0, 0) => (i + j) % n,
            (0, _) => n + (j + n - i) % n,
            (_, 0) => n + (i + j) % n,
            _ => (j + n - i) % n,
        }
    })
}

/// `a^i b^e` at `e * n + i` with `a^n = 1`, `b^2 = a^(n/2)`, `b^-1 a b = a^-1`.
fn quaternion(k: usize) -> Vec<u32> {
    let n = k / 2;
    from_fn(k, |x, y| {
        let (ex, i) = (x / n, x % n);
        let (ey, j) = (y / n, y % n);
        match (ex, ey) {
            (0, _) => ey * n + (i + j) % n,
            (_, 0) => n + (i + n - j) % n,
            _ => (i + n - j + n / 2) % n,
        }
    })
}

/// Upper unitriangular 3x3 matrices over F_p: `(a, b, c)` at `a p^2 + b p + c`.
fn heisenberg(k: usize) -> Vec<u32> {
    let (p, _) = prime_power(k as u64).expect("validated");
    let p = p as usize;
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    from_fn(k, |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
    })
}

/// `a^i b^e` at `e * N + i` where `N = p^(j-1)` and `b^e a^i = a^(i s^e) b^e`,
/// `s` being the inverse of `1 + p^(j-2)` modulo `N`.
fn modular(k: usize) -> Vec<u32> {
    let (p, j) = prime_power(k as u64).expect("validated");
    let p = p as usize;
    let big_n = p.pow(j - 1);
    let r = 1 + p.pow(j - 2);
    let s = (1..big_n)
        .find(|s| (r * s) % big_n == 1)
        .expect("1 + p^(j-2) is a unit");
    // s^e mod N for e < p
    let mut s_pows = vec![1usize; p];
    for e in 1..p {
        s_pows[e] = s_pows[e - 1] * s % big_n;
    }
    from_fn(k, |x, y| {
        let (e, i) = (x / big_n, x % big_n);
        let (f, l) = (y / big_n, y % big_n);
        let a_exp = (i + l * s_pows[e]) % big_n;
        ((e + f) % p) * big_n + a_exp
    })
}
