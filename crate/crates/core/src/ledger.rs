//! Degree-4 intersection numbers on a rank-2 lattice of divisor classes.
//!
//! A [`MomentTable`] stores the five numbers `G0^{4-i} G1^i`; products of
//! [`ClassExpr`] factors are expanded and paired against the table.
//! Two tables are built in: the blowup `W` with generators `H, A` and the
//! blowup `V` with generators `L, B`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolSet {
    /// `H`, `A`
    W,
    /// `L`, `B`
    V,
}

impl SymbolSet {
    pub fn generators(self) -> [char; 2] {
        match self {
            Self::W => ['H', 'A'],
            Self::V => ['L', 'B'],
        }
    }

    fn of(c: char) -> Option<(Self, usize)> {
        match c {
            'H' => Some((Self::W, 0)),
            'A' => Some((Self::W, 1)),
            'L' => Some((Self::V, 0)),
            'B' => Some((Self::V, 1)),
            _ => None,
        }
    }

    pub fn table(self) -> MomentTable {
        match self {
            Self::W => builtin_w_table(),
            Self::V => builtin_v_table(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentTable {
    pub symbols: SymbolSet,
    /// `moments[i] = G0^{4-i} · G1^i`
    pub moments: [i64; 5],
}

impl MomentTable {
    pub fn moment(&self, i: usize, j: usize) -> Option<i64> {
        (i + j == 4).then(|| self.moments[j])
    }
}

pub fn builtin_w_table() -> MomentTable {
    MomentTable {
        symbols: SymbolSet::W,
        moments: [5, 0, -5, -8, -6],
    }
}

pub fn builtin_v_table() -> MomentTable {
    MomentTable {
        symbols: SymbolSet::V,
        moments: [18, 0, -3, -1, 1],
    }
}

/// A polynomial in `G0, G1`; keys are exponents `(i, j)` of `G0^i G1^j`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ClassExpr {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl ClassExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn g0() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn g1() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `a G0 + b G1`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::monomial(a, 1, 0).add(&Self::monomial(b, 0, 1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct total degrees of the monomials, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|(i, j)| i + j).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn insert(&mut self, key: (u32, u32), c: Rational) {
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                out.insert((i + k, j + l), a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// Replace `G0 -> x`, `G1 -> y`.
    pub fn substitute(&self, x: &Self, y: &Self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            out = out.add(&x.pow(*i).mul(&y.pow(*j)).scale(c));
        }
        out
    }

    /// Pairing of a homogeneous degree-4 expression with the table.
    pub fn pair(&self, t: &MomentTable) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::DegenerateProduct);
        }
        let degrees = self.degrees();
        if degrees != [4] {
            return Err(Error::WrongDegree(
                degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(", "),
            ));
        }
        Ok(self
            .terms
            .iter()
            .map(|((_, j), c)| c * rational::int(t.moments[*j as usize]))
            .sum())
    }

    pub fn display_with(&self, symbols: SymbolSet) -> String {
        let [g0, g1] = symbols.generators();
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // highest total degree first, then by descending power of G0
        let mut keys: Vec<_> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (n, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let mut mono = String::new();
            for (g, e) in [(g0, key.0), (g1, key.1)] {
                match e {
                    0 => {}
                    1 => mono.push(g),
                    _ => mono.push_str(&format!("{g}^{e}")),
                }
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if n > 0 {
                out.push_str(&format!(" {sign} "));
            } else if sign == "-" {
                out.push('-');
            }
            if mono.is_empty() {
                out.push_str(&rational::format(&mag));
            } else {
                if !mag.is_one() {
                    let m = rational::format(&mag);
                    if mag.is_integer() {
                        out.push_str(&m);
                    } else {
                        out.push_str(&format!("({m})"));
                    }
                }
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(SymbolSet::W))
    }
}

/// Expand the product of `factors` and pair it with `t`.
pub fn evaluate(t: &MomentTable, factors: &[ClassExpr]) -> Result<Rational> {
    if factors.is_empty() {
        return Err(Error::DegenerateProduct);
    }
    let product = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.mul(f));
    product.pair(t)
}

/// Output of [`parse`]: the expression and the symbol set it was written in
/// (`None` when no generator occurs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedExpr {
    pub expr: ClassExpr,
    pub symbols: Option<SymbolSet>,
}

const MAX_EXPONENT: u32 = 16;

/// Parse an expression over `{H, A}` or `{L, B}`.
///
/// ```text
/// expr   := term (('+' | '-') term)*
/// term   := unary (['*'] unary)*        juxtaposition multiplies: 2H, (H-A)(H+A)
/// unary  := ('+' | '-') unary | power
/// power  := atom ['^' integer]
/// atom   := integer ['/' integer] | 'H' | 'A' | 'L' | 'B' | '(' expr ')'
/// ```
pub fn parse(input: &str) -> Result<ParsedExpr> {
    let mut p = Parser {
        chars: input.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        len: input.len(),
        symbols: None,
    };
    let expr = p.expr()?;
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        return Err(p.error_at(at, format!("unexpected {c:?}")));
    }
    Ok(ParsedExpr {
        expr,
        symbols: p.symbols,
    })
}

/// Parse and evaluate on the table matching the expression's symbols.
pub fn evaluate_str(input: &str) -> Result<(SymbolSet, Rational)> {
    let parsed = parse(input)?;
    let symbols = parsed.symbols.ok_or_else(|| Error::WrongDegree("0".into()))?;
    let value = parsed.expr.pair(&symbols.table())?;
    Ok((symbols, value))
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    symbols: Option<SymbolSet>,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse { pos, msg: msg.into() }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.offset(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ClassExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ClassExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_alphanumeric()) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ClassExpr> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<ClassExpr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        let n = self.integer()?;
        let e = n
            .to_u32()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| self.error_at(at, format!("exponent must be in 0..={MAX_EXPONENT}")))?;
        Ok(base.pow(e))
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<ClassExpr> {
        let at = self.offset();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let value = if self.eat('/') {
                    let den_at = self.offset();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error_at(den_at, "zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                if self.peek() == Some('.') {
                    return Err(self.error("decimals are not allowed; use p/q"));
                }
                Ok(ClassExpr::constant(value))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) => {
                let (set, index) = SymbolSet::of(c)
                    .ok_or_else(|| self.error_at(at, format!("unknown symbol {c:?}; use H, A or L, B")))?;
                match self.symbols {
                    Some(s) if s != set => {
                        return Err(self.error_at(at, "cannot mix {H, A} with {L, B}"));
                    }
                    _ => self.symbols = Some(set),
                }
                self.pos += 1;
                Ok(if index == 0 { ClassExpr::g0() } else { ClassExpr::g1() })
            }
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    #[serde(with = "rational::serde_str")]
    pub expected: Rational,
    #[serde(with = "rational::serde_str")]
    pub computed: Rational,
    pub pass: bool,
}

fn check(name: &str, expected: Rational, computed: Result<Rational>) -> IdentityCheck {
    // a failed evaluation is reported as a failed row with computed 0
    let (computed, pass) = match computed {
        Ok(v) => {
            let pass = v == expected;
            (v, pass)
        }
        Err(_) => (Rational::zero(), false),
    };
    IdentityCheck {
        name: name.into(),
        expected,
        computed,
        pass,
    }
}

fn eval_named(expr: &str) -> Result<Rational> {
    evaluate_str(expr).map(|(_, v)| v)
}

/// Check the intersection-number identities that hold on the two tables.
pub fn verify_known_identities() -> Vec<IdentityCheck> {
    let i = rational::int;
    let mut out = vec![
        check("(2H-A)^4", i(18), eval_named("(2H-A)^4")),
        check("(2H-A)^3*(H-A)", i(0), eval_named("(2H-A)^3*(H-A)")),
        check("-(2H-A)^2*(H-A)^2", i(3), eval_named("-(2H-A)^2*(H-A)^2")),
        check("-H^2*A^2", i(5), eval_named("-H^2*A^2")),
        check("-(L-B)^2*(L-2B)^2", i(5), eval_named("-(L-B)^2*(L-2B)^2")),
        check("(L-B)^3*(L-2B)", i(0), eval_named("(L-B)^3*(L-2B)")),
    ];
    let w = builtin_w_table();
    let v = builtin_v_table();
    let h = ClassExpr::g0().sub(&ClassExpr::g1());
    let a = ClassExpr::g0().sub(&ClassExpr::g1().scale(&i(2)));
    let names = ["H^4", "H^3*A", "H^2*A^2", "H*A^3", "A^4"];
    for (j, name) in names.iter().enumerate() {
        let mono = ClassExpr::monomial(Rational::one(), 4 - j as u32, j as u32);
        let computed = mono.substitute(&h, &a).pair(&v);
        out.push(check(&format!("cross-table {name}"), i(w.moments[j]), computed));
    }
    out.push(check("(H-A)^4 = B^4", i(v.moments[4]), eval_named("(H-A)^4")));
    let genus = eval_named("L^4").map(|d| d / i(2) + i(1));
    out.push(check("genus from 2g-2 = deg V", i(10), genus));
    out.push(check("(3H-A)^4", i(225), eval_named("(3H-A)^4")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    #[test]
    fn builtin_tables() {
        assert_eq!(builtin_w_table().moments, [5, 0, -5, -8, -6]);
        assert_eq!(builtin_v_table().moments, [18, 0, -3, -1, 1]);
        assert_eq!(builtin_w_table().moment(2, 2), Some(-5));
        assert_eq!(builtin_w_table().moment(2, 1), None);
    }

    #[test]
    fn evaluate_examples() {
        let w = builtin_w_table();
        let two_h_minus_a = ClassExpr::linear(int(2), int(-1));
        assert_eq!(evaluate(&w, &vec![two_h_minus_a; 4]).unwrap(), int(18));
        let h_minus_a = ClassExpr::linear(int(1), int(-1));
        assert_eq!(evaluate(&w, &vec![h_minus_a; 4]).unwrap(), int(1));
        let third = ClassExpr::linear(frac(1, 3), int(0));
        assert_eq!(evaluate(&w, &vec![third; 4]).unwrap(), frac(5, 81));
    }

    #[test]
    fn evaluate_errors() {
        let w = builtin_w_table();
        assert_eq!(evaluate(&w, &[]), Err(Error::DegenerateProduct));
        assert_eq!(
            evaluate(&w, &[ClassExpr::zero(), ClassExpr::g0().pow(3)]),
            Err(Error::DegenerateProduct)
        );
        assert!(matches!(
            evaluate(&w, &[ClassExpr::g0().pow(3)]),
            Err(Error::WrongDegree(_))
        ));
        let mixed = ClassExpr::g0().add(&ClassExpr::constant(int(1)));
        assert!(matches!(evaluate(&w, &vec![mixed; 4]), Err(Error::WrongDegree(_))));
    }

    #[test]
    fn parser_examples() {
        let p = parse("(2H-A)^3*(H-A)").unwrap();
        assert_eq!(p.symbols, Some(SymbolSet::W));
        let q = parse("(2H - A)^3 (H - A)").unwrap();
        assert_eq!(p, q);
        assert_eq!(evaluate_str("1/3 H^4").unwrap(), (SymbolSet::W, frac(5, 3)));
        assert_eq!(evaluate_str("-L^2B^2").unwrap(), (SymbolSet::V, int(3)));
        assert_eq!(evaluate_str("2H*H^3").unwrap().1, int(10));
    }

    #[test]
    fn parser_errors() {
        for bad in ["H+L", "(H-A", "H^", "0.5H^4", "X^4", "1/0 H^4", "H^99", "", "H)"] {
            assert!(matches!(parse(bad), Err(Error::Parse { .. })), "{bad}");
        }
        assert!(matches!(evaluate_str("H^3"), Err(Error::WrongDegree(_))));
        assert!(matches!(evaluate_str("4"), Err(Error::WrongDegree(_))));
        assert_eq!(evaluate_str("H^4-H^4"), Err(Error::DegenerateProduct));
    }

    #[test]
    fn display_is_canonical() {
        let e = parse("(H-A)^2").unwrap().expr;
        assert_eq!(e.display_with(SymbolSet::W), "H^2 - 2HA + A^2");
        let e = parse("1/2 L - B").unwrap().expr;
        assert_eq!(e.display_with(SymbolSet::V), "(1/2)L - B");
    }

    #[test]
    fn all_identities_pass() {
        let checks = verify_known_identities();
        assert_eq!(checks.len(), 14);
        for c in &checks {
            assert!(c.pass, "{c:?}");
        }
        let a4 = checks.iter().find(|c| c.name == "cross-table A^4").unwrap();
        assert_eq!(a4.computed, int(-6));
    }
}
