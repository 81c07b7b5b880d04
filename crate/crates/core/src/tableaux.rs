//! Exact counts of standard, skew standard and standard set-valued Young
//! tableaux.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::parse_list;

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates weakly decreasing parts; trailing zeros are dropped, interior
    /// zeros are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        for (idx, pair) in parts.windows(2).enumerate() {
            if pair[0] < pair[1] {
                return Err(Error::malformed(format!(
                    "partition parts must be weakly decreasing (part {} < part {})",
                    idx + 1,
                    idx + 2
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::malformed("partition has an interior zero part"));
        }
        Ok(Partition { parts })
    }

    /// Sorts into decreasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// `(n-1, n-2, .., 1)`, the shape of the longest element of `S_n`.
    pub fn staircase(n: usize) -> Self {
        Partition {
            parts: (1..n).rev().collect(),
        }
    }

    /// The `rows x cols` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![cols; rows],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (1-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.rows() <= self.rows() && (1..=other.rows()).all(|i| other.part(i) <= self.part(i))
    }

    /// Length of column `j` (1-based).
    pub fn column(&self, j: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= j).count()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition {
            parts: (1..=first).map(|j| self.column(j)).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Partition::new(parse_list(text)?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// A skew shape `outer / inner` with `inner` contained in `outer`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::malformed(format!(
                "inner shape {inner} is not contained in {outer}"
            )));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col > self.inner.part(row) && col <= self.outer.part(row)
    }

    /// Cells `(row, col)` in row reading order (left to right, top to bottom).
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (1..=self.outer.rows())
            .flat_map(|i| (self.inner.part(i) + 1..=self.outer.part(i)).map(move |j| (i, j)))
            .collect()
    }

    /// Parses `outer/inner`; a missing `/inner` means a straight shape.
    pub fn parse(text: &str) -> Result<Self> {
        match text.split_once('/') {
            Some((outer, inner)) => SkewShape::new(Partition::parse(outer)?, Partition::parse(inner)?),
            None => Ok(SkewShape::straight(Partition::parse(text)?)),
        }
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

impl FromStr for SkewShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SkewShape::parse(s)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `f^lambda` by the hook-length formula: `|lambda|!` divided by the product
/// of hook lengths, where the hook of a box counts the boxes weakly right of
/// it in its row and strictly below it in its column.
///
/// The quotient is assembled from prime exponents, so no big division is
/// performed.
pub fn hook_count(shape: &Partition) -> BigUint {
    let n = shape.size();
    if n <= 1 {
        return BigUint::one();
    }
    let sieve = SmallestFactor::new(n);
    let mut exponents = vec![0i64; n + 1];
    for m in 2..=n {
        sieve.add_factors(m, 1, &mut exponents);
    }
    for (i, &row) in shape.parts().iter().enumerate() {
        for j in 1..=row {
            let hook = row - j + 1 + shape.column(j) - (i + 1);
            sieve.add_factors(hook, -1, &mut exponents);
        }
    }
    let mut factors = Vec::new();
    for (p, &e) in exponents.iter().enumerate() {
        debug_assert!(e >= 0, "hook product does not divide n!");
        if e > 0 {
            factors.push(BigUint::from(p).pow(e as u32));
        }
    }
    product_tree(factors)
}

struct SmallestFactor {
    spf: Vec<usize>,
}

impl SmallestFactor {
    fn new(limit: usize) -> Self {
        let mut spf = vec![0; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                for j in (i..=limit).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i;
                    }
                }
            }
        }
        SmallestFactor { spf }
    }

    fn add_factors(&self, mut m: usize, sign: i64, exponents: &mut [i64]) {
        while m > 1 {
            let p = self.spf[m];
            exponents[p] += sign;
            m /= p;
        }
    }
}

fn product_tree(mut values: Vec<BigUint>) -> BigUint {
    if values.is_empty() {
        return BigUint::one();
    }
    while values.len() > 1 {
        values = values
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a * b,
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    values.pop().unwrap()
}

fn factorial(n: usize) -> BigUint {
    product_tree((2..=n).map(BigUint::from).collect())
}

/// `f^{lambda/mu} = |lambda/mu|! det(1 / (lambda_i - mu_j - i + j)!)`, with
/// `1/m! = 0` for negative `m`.
///
/// Row `i` is scaled by `M_i!` (its largest argument) to get an integer
/// matrix of falling factorials, whose determinant is taken by fraction-free
/// Bareiss elimination.
pub fn skew_det_count(shape: &SkewShape) -> BigUint {
    let t = shape.outer().rows();
    if t == 0 {
        return BigUint::one();
    }
    let lam = |i: usize| shape.outer().part(i) as i64;
    let mu = |j: usize| shape.inner().part(j) as i64;
    let arg = |i: usize, j: usize| lam(i) - mu(j) - i as i64 + j as i64;

    let mut scale = BigUint::one();
    let mut matrix: Vec<Vec<BigInt>> = Vec::with_capacity(t);
    for i in 1..=t {
        let top = (1..=t).map(|j| arg(i, j)).max().unwrap_or(0).max(0) as usize;
        scale *= factorial(top);
        let row = (1..=t)
            .map(|j| {
                let a = arg(i, j);
                if a < 0 {
                    BigInt::zero()
                } else {
                    // top! / a!
                    let falling: BigUint = ((a as usize + 1)..=top).map(BigUint::from).product();
                    BigInt::from(falling)
                }
            })
            .collect();
        matrix.push(row);
    }
    let det = bareiss_determinant(matrix);
    if det.is_zero() {
        return BigUint::zero();
    }
    let numerator = det * BigInt::from(factorial(shape.size()));
    let (quotient, remainder) = numerator.div_rem(&BigInt::from(scale));
    debug_assert!(remainder.is_zero());
    debug_assert!(!quotient.is_negative());
    quotient.to_biguint().expect("skew tableau count is nonnegative")
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = value;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Number of Lenart tableaux of shape `nu / mu`: fillings strictly
/// increasing along rows and down columns whose entries in row `i` lie in
/// `1..=i-1`.
pub fn lenart_count(mu: &Partition, nu: &Partition) -> Result<BigUint> {
    if !nu.contains(mu) {
        return Err(Error::contract(format!("{mu} is not contained in {nu}")));
    }
    for i in 1..=nu.rows() {
        if nu.part(i) - mu.part(i) > i - 1 {
            return Err(Error::contract(format!(
                "row {i} of {nu}/{mu} has more than {} added boxes",
                i - 1
            )));
        }
    }
    let shape = SkewShape {
        outer: nu.clone(),
        inner: mu.clone(),
    };
    let cells = shape.cells();
    let mut filling = vec![0usize; cells.len()];
    let mut count = 0u64;
    fill_lenart(&shape, &cells, 0, &mut filling, &mut count);
    Ok(BigUint::from(count))
}

fn fill_lenart(shape: &SkewShape, cells: &[(usize, usize)], idx: usize, filling: &mut [usize], count: &mut u64) {
    if idx == cells.len() {
        *count += 1;
        return;
    }
    let (row, col) = cells[idx];
    let mut low = 1;
    // cells are in reading order, so the left and upper neighbours are already filled
    if shape.contains_cell(row, col - 1) {
        low = low.max(filling[idx - 1] + 1);
    }
    if row > 1 && shape.contains_cell(row - 1, col) {
        let above = cells.iter().position(|&c| c == (row - 1, col)).unwrap();
        low = low.max(filling[above] + 1);
    }
    for value in low..row {
        filling[idx] = value;
        fill_lenart(shape, cells, idx + 1, filling, count);
    }
}

/// Shapes `nu` obtained from `mu` by adding `extra` boxes with at most
/// `i - 1` of them in row `i`.
pub fn lenart_supershapes(mu: &Partition, extra: usize) -> Vec<Partition> {
    fn go(mu: &Partition, row: usize, max_row: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            let mut parts = current.clone();
            parts.extend_from_slice(&mu.parts()[current.len().min(mu.rows())..]);
            out.push(Partition { parts });
            return;
        }
        if row > max_row {
            return;
        }
        let above = if row == 1 { usize::MAX } else { current[row - 2] };
        let base = mu.part(row);
        for add in 0..=left.min(row - 1) {
            let len = base + add;
            if len > above {
                break;
            }
            if len == 0 {
                // nothing can be added below an empty row
                continue;
            }
            current.push(len);
            go(mu, row + 1, max_row, left - add, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(mu, 1, mu.rows() + extra, extra, &mut Vec::new(), &mut out);
    out
}

/// `f^{lambda,N}`, the number of standard set-valued tableaux of shape
/// `lambda` using each of `1..=N` once, via
/// `f^{lambda,N} = sum_nu g_{lambda,nu} f^nu` over `|nu| = N`.
///
/// Cost grows combinatorially with `N - |lambda|`.
pub fn set_valued_count(shape: &Partition, n: usize) -> BigUint {
    if n < shape.size() {
        return BigUint::zero();
    }
    let extra = n - shape.size();
    lenart_supershapes(shape, extra)
        .into_par_iter()
        .map(|nu| {
            let g = lenart_count(shape, &nu).expect("supershape satisfies the row bounds");
            if g.is_zero() {
                g
            } else {
                g * hook_count(&nu)
            }
        })
        .reduce(BigUint::zero, |a, b| a + b)
}

/// `f^{nu/mu,N}` for a skew shape, through the Hecke-word identity
/// `f^{nu/mu,N} = #Hecke(w_{nu/mu}, N)`.
pub fn skew_set_valued_count(shape: &SkewShape, n: usize) -> Result<BigUint> {
    skew_set_valued_count_capped(shape, n, crate::hecke::DEFAULT_MEMO_CAP)
}

pub fn skew_set_valued_count_capped(shape: &SkewShape, n: usize, memo_cap: u64) -> Result<BigUint> {
    if n < shape.size() {
        return Ok(BigUint::zero());
    }
    let w = crate::hecke::skew_to_permutation(shape);
    crate::hecke::count_hecke_capped(&w, n, memo_cap)
}
