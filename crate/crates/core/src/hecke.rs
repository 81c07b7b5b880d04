//! Exact Hecke-word counting, the 321-avoiding permutation of a skew shape,
//! and Brill-Noether Euler characteristics.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tableaux::{skew_set_valued_count_capped, Partition, SkewShape};

pub const DEFAULT_MEMO_CAP: u64 = 10_000_000;

/// `#Hecke(w, N)` with the default table cap.
pub fn count_hecke_exact(w: &Permutation, n: usize) -> Result<BigUint> {
    count_hecke_capped(w, n, DEFAULT_MEMO_CAP)
}

/// `#Hecke(w, N)`, the number of words of length `N` whose Demazure fold is
/// `w`, via
///
/// `#Hecke(u, M) = sum_{i in D(u)} (#Hecke(u s_i, M-1) + #Hecke(u, M-1))`
///
/// with `#Hecke(id, 0) = 1` and `#Hecke(u, M) = 0` for `M < l(u)`.
///
/// The recurrence only visits the lower right weak order interval below `w`,
/// so the table is filled bottom-up over that interval, one slot per
/// `(u, M)` with `l(u) <= M <= N - (l(w) - l(u))`. `memo_cap` bounds the
/// number of slots.
pub fn count_hecke_capped(w: &Permutation, n: usize, memo_cap: u64) -> Result<BigUint> {
    let w = w.normalized();
    let top_len = w.length();
    if n < top_len {
        return Ok(BigUint::zero());
    }
    let slack = n - top_len;
    let width = slack as u64 + 1;

    // Interval below w, grouped by length (index 0 = identity).
    let mut levels: Vec<Vec<Permutation>> = vec![Vec::new(); top_len + 1];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    levels[top_len].push(w.clone());
    index.insert(w.clone(), 0);
    let mut states = width;
    for len in (1..=top_len).rev() {
        let mut next = Vec::new();
        for u in &levels[len] {
            for i in u.descents() {
                let v = u.times_simple(i);
                if !index.contains_key(&v) {
                    index.insert(v.clone(), next.len());
                    next.push(v);
                    states += width;
                    if states > memo_cap {
                        return Err(Error::ResourceLimit {
                            what: "Hecke table slots",
                            reached: states,
                            cap: memo_cap,
                        });
                    }
                }
            }
        }
        levels[len - 1] = next;
    }

    // table[len][pos][k] = #Hecke(u, len + k) for u = levels[len][pos]
    let mut below: Vec<Vec<BigUint>> = vec![{
        let mut row = vec![BigUint::zero(); slack + 1];
        row[0] = BigUint::one();
        row
    }];
    for len in 1..=top_len {
        let mut current = Vec::with_capacity(levels[len].len());
        for u in &levels[len] {
            let descents = u.descents();
            let mut row: Vec<BigUint> = Vec::with_capacity(slack + 1);
            for k in 0..=slack {
                let mut value = BigUint::zero();
                for &i in &descents {
                    let v = u.times_simple(i);
                    value += &below[index[&v]][k];
                }
                if k > 0 {
                    value += &row[k - 1] * BigUint::from(descents.len());
                }
                row.push(value);
            }
            current.push(row);
        }
        below = current;
    }
    Ok(below[0][slack].clone())
}

/// The 321-avoiding permutation `w_{lambda/mu}`: fill each northwest-southeast
/// diagonal of the shape with one label (1 on the northeast-most diagonal,
/// increasing to the southwest), read the labels left to right, top to
/// bottom, and multiply the corresponding simple transpositions.
pub fn skew_to_permutation(shape: &SkewShape) -> Permutation {
    let word = diagonal_reading_word(shape);
    let Some(&max_label) = word.iter().max() else {
        return Permutation::identity(1);
    };
    word.iter()
        .fold(Permutation::identity(max_label + 1), |acc, &i| {
            acc.demazure_append(i).expect("label within range")
        })
}

/// Row reading word of the diagonal labelling used by [`skew_to_permutation`].
pub fn diagonal_reading_word(shape: &SkewShape) -> Vec<usize> {
    let cells = shape.cells();
    let Some(max_diag) = cells.iter().map(|&(r, c)| c as i64 - r as i64).max() else {
        return Vec::new();
    };
    cells
        .iter()
        .map(|&(r, c)| (max_diag - (c as i64 - r as i64) + 1) as usize)
        .collect()
}

/// Parameters `(g, r, d, alpha, beta)` of a two-pointed Brill-Noether variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrillNoetherParams {
    pub g: usize,
    pub r: usize,
    pub d: usize,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

impl BrillNoetherParams {
    pub fn new(g: usize, r: usize, d: usize, alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        for (name, seq) in [("alpha", &alpha), ("beta", &beta)] {
            if seq.len() != r + 1 {
                return Err(Error::malformed(format!(
                    "{name} must have r+1 = {} entries, got {}",
                    r + 1,
                    seq.len()
                )));
            }
            if seq.windows(2).any(|p| p[0] > p[1]) {
                return Err(Error::malformed(format!("{name} must be weakly increasing")));
            }
        }
        Ok(BrillNoetherParams { g, r, d, alpha, beta })
    }
}

/// The skew diagram with cells `{(x, y) : 0 <= y <= r, -alpha_y <= x < g-d+r+beta_{r-y}}`,
/// with `y` as the matrix row counted from the top and `x` shifted so the
/// leftmost possible cell sits in column 1.
pub fn brill_noether_shape(p: &BrillNoetherParams) -> Result<SkewShape> {
    let shift = *p.alpha.iter().max().expect("r+1 >= 1 entries") as i64;
    let base = p.g as i64 - p.d as i64 + p.r as i64;
    let mut outer = Vec::with_capacity(p.r + 1);
    let mut inner = Vec::with_capacity(p.r + 1);
    for y in 0..=p.r {
        let low = shift - p.alpha[y] as i64;
        let high = shift + base + p.beta[p.r - y] as i64;
        if high < low {
            return Err(Error::malformed(format!(
                "row {y} of the Brill-Noether diagram has negative length {}",
                high - low
            )));
        }
        outer.push(high as usize);
        inner.push(low as usize);
    }
    SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)
}

/// `chi` of the Brill-Noether variety, split as `sign * magnitude` with
/// `magnitude = f^{CP, g}` and `sign = (-1)^{g - |CP|}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCharacteristic {
    pub shape: SkewShape,
    pub magnitude: BigUint,
    pub sign: i8,
}

impl EulerCharacteristic {
    pub fn value(&self) -> BigInt {
        let m = BigInt::from(self.magnitude.clone());
        if self.sign < 0 {
            -m
        } else {
            m
        }
    }
}

pub fn euler_characteristic(p: &BrillNoetherParams) -> Result<EulerCharacteristic> {
    euler_characteristic_capped(p, DEFAULT_MEMO_CAP)
}

pub fn euler_characteristic_capped(p: &BrillNoetherParams, memo_cap: u64) -> Result<EulerCharacteristic> {
    let shape = brill_noether_shape(p)?;
    let cells = shape.size();
    let magnitude = skew_set_valued_count_capped(&shape, p.g, memo_cap)?;
    let sign = if p.g.abs_diff(cells) % 2 == 0 { 1 } else { -1 };
    Ok(EulerCharacteristic {
        shape,
        magnitude,
        sign,
    })
}
