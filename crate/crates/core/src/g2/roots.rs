//! The root system of type G2 in the basis of simple roots.
//!
//! `alpha1` is short and `alpha2` is long, normalized by
//! `(alpha1, alpha1) = 2`, `(alpha2, alpha2) = 6`, `(alpha1, alpha2) = -3`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::rational::{self, Rational};

/// A root `m*alpha1 + n*alpha2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub m: i8,
    pub n: i8,
}

impl Root {
    pub const fn new(m: i8, n: i8) -> Self {
        Self { m, n }
    }

    /// Inner product in the normalization above.
    pub fn inner(self, other: Root) -> i64 {
        let (a, b) = (i64::from(self.m), i64::from(self.n));
        let (c, d) = (i64::from(other.m), i64::from(other.n));
        2 * a * c + 6 * b * d - 3 * (a * d + b * c)
    }

    pub fn norm2(self) -> i64 {
        self.inner(self)
    }

    pub fn is_long(self) -> bool {
        self.norm2() == 6
    }

    pub fn is_positive(self) -> bool {
        self.m > 0 || (self.m == 0 && self.n > 0)
    }

    pub fn height(self) -> i64 {
        i64::from(self.m) + i64::from(self.n)
    }

    pub fn neg(self) -> Root {
        Root::new(-self.m, -self.n)
    }

    pub fn add(self, other: Root) -> Root {
        Root::new(self.m + other.m, self.n + other.n)
    }

    pub fn sub(self, other: Root) -> Root {
        Root::new(self.m - other.m, self.n - other.n)
    }

    /// `alpha(h)` for the Cartan element with `alpha1(h) = a`, `alpha2(h) = b`.
    pub fn value_at(self, a: &Rational, b: &Rational) -> Rational {
        a * rational::int(i64::from(self.m)) + b * rational::int(i64::from(self.n))
    }

    /// Coefficients of the coroot `h_alpha` in terms of `h1, h2`.
    pub fn coroot(self) -> [Rational; 2] {
        let norm = self.norm2();
        [
            rational::frac(2 * i64::from(self.m), norm),
            rational::frac(6 * i64::from(self.n), norm),
        ]
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

pub const ALPHA1: Root = Root::new(1, 0);
pub const ALPHA2: Root = Root::new(0, 1);
/// Highest root `3 alpha1 + 2 alpha2`.
pub const THETA: Root = Root::new(3, 2);

/// Positive roots in basis order (by height, ties by `m`).
pub const POSITIVE_ROOTS: [Root; 6] = [
    Root::new(1, 0),
    Root::new(0, 1),
    Root::new(1, 1),
    Root::new(2, 1),
    Root::new(3, 1),
    Root::new(3, 2),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystemG2 {
    pub simple: [Root; 2],
    /// All twelve roots in basis order: positives, then their negatives.
    pub roots: Vec<Root>,
    pub long: Vec<Root>,
    pub short: Vec<Root>,
}

impl RootSystemG2 {
    pub fn new() -> Self {
        let roots: Vec<Root> = POSITIVE_ROOTS
            .iter()
            .copied()
            .chain(POSITIVE_ROOTS.iter().map(|r| r.neg()))
            .collect();
        let (long, short) = roots.iter().partition(|r| r.is_long());
        Self {
            simple: [ALPHA1, ALPHA2],
            roots,
            long,
            short,
        }
    }

    pub fn contains(&self, r: Root) -> bool {
        self.roots.contains(&r)
    }

    /// Position of a root among the twelve root vectors (0-based).
    pub fn index_of(&self, r: Root) -> Option<usize> {
        self.roots.iter().position(|&x| x == r)
    }

    /// Largest `p >= 0` such that `beta - p*alpha` is a root.
    pub fn string_down(&self, alpha: Root, beta: Root) -> usize {
        let mut p = 0;
        let mut cur = beta.sub(alpha);
        while self.contains(cur) {
            p += 1;
            cur = cur.sub(alpha);
        }
        p
    }
}

impl Default for RootSystemG2 {
    fn default() -> Self {
        Self::new()
    }
}
