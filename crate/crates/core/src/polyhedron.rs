//! Inequality systems `Ax <= b` with integral `A`: loading, validation,
//! perturbation to a simple system, and boundedness.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{enumerate_vertices, Vertex};
use crate::linalg::{dot, int, kernel_vector, Rational, RationalMatrix};

/// Default cap on the number of row subsets examined by basis enumeration.
pub const DEFAULT_BASIS_BUDGET: u128 = 2_000_000;

/// Halvings of the perturbation parameter before giving up.
pub const PERTURB_RETRIES: usize = 40;

#[derive(Clone, Debug)]
pub struct Polyhedron {
    a: RationalMatrix,
    b: Vec<Rational>,
    perturbed_b: Option<Vec<Rational>>,
    epsilon: Option<Rational>,
}

impl Polyhedron {
    /// Validated system: `A` integral with full column rank.
    pub fn new(a: RationalMatrix, b: Vec<Rational>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::Dimension(format!(
                "{} right-hand side entries for {} rows",
                b.len(),
                a.rows()
            )));
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if !a.get(i, j).is_integer() {
                    return Err(Error::NonIntegral {
                        row: i,
                        col: j,
                        value: a.get(i, j).to_string(),
                    });
                }
            }
        }
        let rank = a.rank();
        if rank < a.cols() {
            return Err(Error::RankDeficient { rank, cols: a.cols() });
        }
        Ok(Self { a, b, perturbed_b: None, epsilon: None })
    }

    pub fn from_i64(a: &[Vec<i64>], b: &[i64]) -> Result<Self> {
        Self::new(
            RationalMatrix::from_i64_rows(a)?,
            b.iter().copied().map(int).collect(),
        )
    }

    /// Parse the text format (`m n` header, then `m` rows of `n` coefficients
    /// followed by the right-hand side) or its JSON equivalent.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            parse_json(text)
        } else {
            parse_text(text)
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    /// Original right-hand side.
    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn perturbed_b(&self) -> Option<&[Rational]> {
        self.perturbed_b.as_deref()
    }

    pub fn epsilon(&self) -> Option<&Rational> {
        self.epsilon.as_ref()
    }

    pub fn is_perturbed(&self) -> bool {
        self.perturbed_b.is_some()
    }

    /// Right-hand side of the system actually analysed.
    pub fn rhs(&self) -> &[Rational] {
        self.perturbed_b.as_deref().unwrap_or(&self.b)
    }

    /// Number of inequalities.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Largest absolute entry of `A`.
    pub fn max_abs_entry(&self) -> BigInt {
        (0..self.m())
            .flat_map(|i| self.a.row(i).iter())
            .map(|v| v.to_integer().abs())
            .max()
            .unwrap_or_default()
    }

    /// The unperturbed system.
    pub fn original(&self) -> Self {
        Self { a: self.a.clone(), b: self.b.clone(), perturbed_b: None, epsilon: None }
    }

    /// Initial perturbation parameter `1 / (2 n m (n D1)^n H)`, with `D1` the
    /// largest entry of `A` and `H = max |b_i| + 1`.
    pub fn initial_epsilon(&self) -> Rational {
        let n = self.n() as i64;
        let m = self.m() as i64;
        let d1 = Rational::from_integer(self.max_abs_entry().max(BigInt::one()));
        let h = self
            .b
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
            .ceil()
            + Rational::one();
        let base = int(n) * d1;
        let mut denom = int(2 * n * m) * h;
        for _ in 0..n {
            denom *= &base;
        }
        denom.recip()
    }

    /// Replace `b` by `b + (eps, eps^2, ..., eps^m)` so that every vertex has
    /// exactly `n` tight rows. `eps` is halved until the perturbed system is
    /// simple and every original vertex is the limit of a perturbed one.
    pub fn perturb(&self, budget: u128) -> Result<Self> {
        let original = enumerate_vertices(&self.original(), budget)?;
        let mut eps = self.initial_epsilon();
        for _ in 0..PERTURB_RETRIES {
            let candidate = self.with_epsilon(&eps);
            let perturbed = enumerate_vertices(&candidate, budget)?;
            if perturbation_ok(self.n(), &original.vertices, &perturbed.vertices) {
                return Ok(candidate);
            }
            eps /= int(2);
        }
        Err(Error::Perturbation { retries: PERTURB_RETRIES })
    }

    pub fn with_epsilon(&self, eps: &Rational) -> Self {
        let mut power = Rational::one();
        let perturbed = self
            .b
            .iter()
            .map(|bi| {
                power *= eps;
                bi + &power
            })
            .collect();
        Self {
            a: self.a.clone(),
            b: self.b.clone(),
            perturbed_b: Some(perturbed),
            epsilon: Some(eps.clone()),
        }
    }

    /// A nonzero `r` with `A r <= 0`, if one exists.
    ///
    /// `A` has full column rank so the recession cone is pointed; if it is
    /// nontrivial it has an extreme ray, i.e. a direction annihilated by
    /// `n - 1` independent rows.
    pub fn recession_ray(&self, budget: u128) -> Result<Option<Vec<Rational>>> {
        let (m, n) = (self.m(), self.n());
        let required = binomial(m, n - 1);
        if required > budget {
            return Err(Error::Budget { what: "recession-ray", required, budget });
        }
        let rows = self.a.row_vecs();
        for subset in (0..m).combinations(n - 1) {
            let sub: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].clone()).collect();
            let r = kernel_vector(&sub, n);
            if r.iter().all(Zero::is_zero) {
                continue;
            }
            let s: Vec<Rational> = rows.iter().map(|row| dot(row, &r)).collect();
            if s.iter().all(|v| !v.is_positive()) {
                return Ok(Some(r));
            }
            if s.iter().all(|v| !v.is_negative()) {
                return Ok(Some(r.into_iter().map(|v| -v).collect()));
            }
        }
        Ok(None)
    }

    /// True iff the recession cone `{r : A r <= 0}` is `{0}`.
    pub fn classify_boundedness(&self, budget: u128) -> Result<bool> {
        Ok(self.recession_ray(budget)?.is_none())
    }

    /// Text serialization; only valid for unperturbed integral systems.
    pub fn to_text(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                let _ = writeln!(out, "# {line}");
            }
        }
        let _ = writeln!(out, "{} {}", self.m(), self.n());
        for i in 0..self.m() {
            let row = self.a.row(i).iter().map(|v| v.to_string()).join(" ");
            let _ = writeln!(out, "{row} {}", self.b[i]);
        }
        out
    }
}

fn perturbation_ok(n: usize, original: &[Vertex], perturbed: &[Vertex]) -> bool {
    if perturbed.iter().any(|v| v.tight_rows.len() != n) {
        return false;
    }
    original.iter().all(|o| {
        perturbed
            .iter()
            .any(|p| p.tight_rows.iter().all(|r| o.tight_rows.binary_search(r).is_ok()))
    })
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn parse_number(token: &str) -> Option<Rational> {
    if let Some((p, q)) = token.split_once('/') {
        let p = BigInt::from_str(p).ok()?;
        let q = BigInt::from_str(q).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Ok(v) = BigInt::from_str(token) {
        return Some(Rational::from_integer(v));
    }
    // exact decimal, optionally with exponent
    let (mantissa, exp) = match token.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (token, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let numer = BigInt::from_str(&format!("{whole}{frac}")).ok()? * sign;
    let scale = exp - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut v = Rational::from_integer(numer);
    if scale >= 0 {
        v *= num_traits::pow(ten, scale as usize);
    } else {
        v /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(v)
}

fn parse_text(text: &str) -> Result<Polyhedron> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing \"m n\" header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse { line: hline, message: format!("bad header: {e}") })?;
    let [m, n] = dims[..] else {
        return Err(Error::Parse { line: hline, message: "header must be \"m n\"".into() });
    };
    if m == 0 || n == 0 {
        return Err(Error::Parse { line: hline, message: "m and n must be positive".into() });
    }

    let mut a = Vec::with_capacity(m * n);
    let mut b = Vec::with_capacity(m);
    for row in 0..m {
        let (line, content) = lines.next().ok_or(Error::Parse {
            line: hline,
            message: format!("expected {m} constraint rows, found {row}"),
        })?;
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != n + 1 {
            return Err(Error::Parse {
                line,
                message: format!("expected {} numbers, found {}", n + 1, tokens.len()),
            });
        }
        for (col, tok) in tokens.iter().enumerate() {
            let v = parse_number(tok).ok_or_else(|| Error::Parse {
                line,
                message: format!("not a number: {tok:?}"),
            })?;
            if col < n {
                if !v.is_integer() {
                    return Err(Error::NonIntegral { row, col, value: tok.to_string() });
                }
                a.push(v);
            } else {
                b.push(v);
            }
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse { line, message: "trailing content after constraint rows".into() });
    }
    Polyhedron::new(RationalMatrix::new(m, n, a)?, b)
}

fn json_number(v: &Value) -> Option<Rational> {
    match v {
        Value::Number(num) => parse_number(&num.to_string()),
        Value::String(s) => parse_number(s.trim()),
        _ => None,
    }
}

fn parse_json(text: &str) -> Result<Polyhedron> {
    let bad = |message: String| Error::Parse { line: 1, message };
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let rows = root
        .get("A")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"A\"".into()))?;
    let b = root
        .get("b")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"b\"".into()))?;
    let n = rows
        .first()
        .and_then(Value::as_array)
        .map(Vec::len)
        .ok_or_else(|| bad("\"A\" must be a non-empty array of rows".into()))?;
    let mut a = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == n)
            .ok_or_else(|| bad(format!("row {i} of \"A\" must have {n} entries")))?;
        for (j, v) in row.iter().enumerate() {
            let q = json_number(v).ok_or_else(|| bad(format!("A[{i}][{j}] is not a number")))?;
            if !q.is_integer() {
                return Err(Error::NonIntegral { row: i, col: j, value: v.to_string() });
            }
            a.push(q);
        }
    }
    let b = b
        .iter()
        .enumerate()
        .map(|(i, v)| json_number(v).ok_or_else(|| bad(format!("b[{i}] is not a number"))))
        .collect::<Result<Vec<_>>>()?;
    Polyhedron::new(RationalMatrix::new(rows.len(), n, a)?, b)
}

impl FromStr for Polyhedron {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
