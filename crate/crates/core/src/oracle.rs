//! Brute-force enumerators used as ground truth. None of these share code
//! paths with the transition, Hecke-table or Lenart counters; they are slow
//! and guarded.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sampling::ChoiceSource;
use crate::tableaux::{Partition, SkewShape};

/// Largest number of memo states for the reduced-word recursion.
pub const REDUCED_STATE_GUARD: u64 = 2_000_000;
/// Largest `(n-1)^N` for Hecke word enumeration.
pub const WORD_GUARD: u64 = 10_000_000;
/// Largest number of boxes for tableau enumeration.
pub const TABLEAU_GUARD: usize = 11;
/// Largest `N` for set-valued enumeration.
pub const SET_VALUED_GUARD: usize = 14;
/// Largest number of fillings tried by the coefficient counters.
pub const FILLING_GUARD: u64 = 50_000_000;
/// Largest number of choice sequences in an exact expectation.
pub const PATH_GUARD: u64 = 5_000_000;

fn guard(what: &'static str, reached: u64, cap: u64) -> Error {
    Error::ResourceLimit { what, reached, cap }
}

/// `#Red(w)` by `#Red(w) = sum_{i in D(w)} #Red(w s_i)`, `#Red(id) = 1`.
pub fn enumerate_reduced_words(w: &Permutation) -> Result<BigUint> {
    fn go(u: &Permutation, memo: &mut HashMap<Vec<usize>, BigUint>) -> Result<BigUint> {
        if u.is_identity() {
            return Ok(BigUint::one());
        }
        if let Some(v) = memo.get(u.word()) {
            return Ok(v.clone());
        }
        if memo.len() as u64 >= REDUCED_STATE_GUARD {
            return Err(guard("reduced-word recursion states", memo.len() as u64, REDUCED_STATE_GUARD));
        }
        let mut total = BigUint::zero();
        for i in u.descents() {
            total += go(&u.times_simple(i), memo)?;
        }
        memo.insert(u.word().to_vec(), total.clone());
        Ok(total)
    }
    go(w, &mut HashMap::new())
}

/// Counts words in `{1..n-1}^N` whose Demazure fold is `w`.
pub fn enumerate_hecke_words(w: &Permutation, n: usize) -> Result<u64> {
    let letters = w.size().saturating_sub(1);
    let total = (letters as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > WORD_GUARD {
        return Err(guard("Hecke words to enumerate", total, WORD_GUARD));
    }
    fn go(prefix: &Permutation, left: usize, letters: usize, target: &Permutation, count: &mut u64) {
        if left == 0 {
            if prefix == target {
                *count += 1;
            }
            return;
        }
        for i in 1..=letters {
            let next = prefix.demazure_append(i).expect("letter in range");
            go(&next, left - 1, letters, target, count);
        }
    }
    let mut count = 0;
    go(&Permutation::identity(w.size()), n, letters, w, &mut count);
    Ok(count)
}

/// Standard Young tableaux of a straight shape, by removing corners.
pub fn enumerate_syt(shape: &Partition) -> Result<u64> {
    enumerate_skew_syt(&SkewShape::straight(shape.clone()))
}

/// Standard Young tableaux of a skew shape: repeatedly remove the largest
/// entry, which must sit in an outer corner.
pub fn enumerate_skew_syt(shape: &SkewShape) -> Result<u64> {
    if shape.size() > TABLEAU_GUARD {
        return Err(guard("tableau boxes", shape.size() as u64, TABLEAU_GUARD as u64));
    }
    fn go(outer: &mut Vec<usize>, inner: &[usize]) -> u64 {
        let mut total = 0;
        let mut any = false;
        for i in 0..outer.len() {
            let low = inner.get(i).copied().unwrap_or(0);
            let below = outer.get(i + 1).copied().unwrap_or(0);
            if outer[i] > low && outer[i] > below {
                any = true;
                outer[i] -= 1;
                total += go(outer, inner);
                outer[i] += 1;
            }
        }
        if any {
            total
        } else {
            1
        }
    }
    let mut outer = shape.outer().parts().to_vec();
    Ok(go(&mut outer, shape.inner().parts()))
}

/// Standard set-valued tableaux of `shape` with entries `1..=n`: every value
/// used once, and the largest entry of each box smaller than the smallest
/// entry of the boxes to its right and below.
///
/// Values are placed in increasing order; a box may receive the next value
/// only while its left and upper neighbours are nonempty and its right and
/// lower neighbours are still empty.
pub fn enumerate_set_valued(shape: &SkewShape, n: usize) -> Result<u64> {
    if n > SET_VALUED_GUARD {
        return Err(guard("set-valued entries", n as u64, SET_VALUED_GUARD as u64));
    }
    let cells = shape.cells();
    if n < cells.len() {
        return Ok(0);
    }
    let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let neighbour = |r: usize, c: usize| index.get(&(r, c)).copied();
    let links: Vec<[Option<usize>; 4]> = cells
        .iter()
        .map(|&(r, c)| {
            [
                neighbour(r, c.wrapping_sub(1)),
                neighbour(r.wrapping_sub(1), c),
                neighbour(r, c + 1),
                neighbour(r + 1, c),
            ]
        })
        .collect();
    fn go(value: usize, n: usize, filled: &mut [usize], links: &[[Option<usize>; 4]], count: &mut u64) {
        let empty = filled.iter().filter(|&&f| f == 0).count();
        if empty > n + 1 - value {
            return;
        }
        if value > n {
            *count += 1;
            return;
        }
        for b in 0..filled.len() {
            let [left, up, right, down] = links[b];
            let ready = left.map_or(true, |k| filled[k] > 0) && up.map_or(true, |k| filled[k] > 0);
            let open = right.map_or(true, |k| filled[k] == 0) && down.map_or(true, |k| filled[k] == 0);
            if ready && open {
                filled[b] += 1;
                go(value + 1, n, filled, links, count);
                filled[b] -= 1;
            }
        }
    }
    let mut filled = vec![0usize; cells.len()];
    let mut count = 0;
    go(1, n, &mut filled, &links, &mut count);
    Ok(count)
}

/// Monotonicity imposed on a filling by the coefficient counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fill {
    /// Strictly increasing along rows and down columns.
    Strict,
    /// Strictly increasing along rows, weakly down columns.
    ColumnWeak,
}

/// Order in which a filling is read into a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Top to bottom within each column, columns right to left.
    Columns,
    /// Right to left within each row, rows top to bottom.
    Rows,
}

/// Top to bottom within each column, columns right to left.
pub fn column_reading_word(shape: &Partition, rows: &[Vec<usize>]) -> Vec<usize> {
    let mut word = Vec::with_capacity(shape.size());
    for j in (1..=shape.part(1)).rev() {
        for row in rows.iter().take(shape.column(j)) {
            word.push(row[j - 1]);
        }
    }
    word
}

/// Right to left within each row, rows top to bottom.
pub fn row_reading_word(rows: &[Vec<usize>]) -> Vec<usize> {
    rows.iter().flat_map(|row| row.iter().rev().copied()).collect()
}

/// Counts fillings of `shape` with entries in `1..=max_entry`, monotone as
/// `fill` requires, whose reading word satisfies `accept`.
pub fn count_fillings(
    shape: &Partition,
    max_entry: usize,
    fill: Fill,
    reading: Reading,
    accept: &dyn Fn(&[usize]) -> bool,
) -> Result<u64> {
    struct Search<'a> {
        cells: Vec<(usize, usize)>,
        rows: Vec<Vec<usize>>,
        shape: &'a Partition,
        max_entry: usize,
        fill: Fill,
        reading: Reading,
        accept: &'a dyn Fn(&[usize]) -> bool,
        tried: u64,
        count: u64,
    }

    impl Search<'_> {
        fn go(&mut self, idx: usize) -> Result<()> {
            if idx == self.cells.len() {
                self.tried += 1;
                if self.tried > FILLING_GUARD {
                    return Err(guard("tableau fillings", self.tried, FILLING_GUARD));
                }
                let word = match self.reading {
                    Reading::Columns => column_reading_word(self.shape, &self.rows),
                    Reading::Rows => row_reading_word(&self.rows),
                };
                if (self.accept)(&word) {
                    self.count += 1;
                }
                return Ok(());
            }
            let (i, j) = self.cells[idx];
            let mut low = 1;
            if j > 0 {
                low = low.max(self.rows[i][j - 1] + 1);
            }
            if i > 0 {
                let above = self.rows[i - 1][j];
                low = low.max(match self.fill {
                    Fill::Strict => above + 1,
                    Fill::ColumnWeak => above,
                });
            }
            for v in low..=self.max_entry {
                self.rows[i][j] = v;
                self.go(idx + 1)?;
            }
            self.rows[i][j] = 0;
            Ok(())
        }
    }

    let mut search = Search {
        cells: (0..shape.rows())
            .flat_map(|i| (0..shape.part(i + 1)).map(move |j| (i, j)))
            .collect(),
        rows: shape.parts().iter().map(|&p| vec![0; p]).collect(),
        shape,
        max_entry,
        fill,
        reading,
        accept,
        tried: 0,
        count: 0,
    };
    search.go(0)?;
    Ok(search.count)
}

fn is_reduced_word_for(w: &Permutation, word: &[usize]) -> bool {
    let mut u = Permutation::identity(w.size());
    for &i in word {
        if i >= w.size() || u.has_descent_at(i) {
            return false;
        }
        u = u.times_simple(i);
    }
    &u == w
}

fn is_hecke_word_for(w: &Permutation, word: &[usize]) -> bool {
    if word.iter().any(|&i| i >= w.size()) {
        return false;
    }
    Permutation::demazure_fold(w.size(), word).is_ok_and(|u| &u == w)
}

/// `a_{w,lambda}`: row and column strict fillings whose column reading word
/// is a reduced word for `w`.
pub fn count_a(w: &Permutation, shape: &Partition) -> Result<u64> {
    let w = w.normalized();
    if shape.size() != w.length() {
        return Ok(0);
    }
    let max_entry = w.size().saturating_sub(1);
    count_fillings(shape, max_entry, Fill::Strict, Reading::Columns, &|word| {
        is_reduced_word_for(&w, word)
    })
}

/// `b_{w,lambda}`: row strict, column weak fillings whose row reading word
/// (right to left, rows top to bottom) is a Hecke word for `w`.
///
/// Read by columns instead, these fillings miscount some coefficients: for
/// `w = 1423` the filling `23/23` would be accepted, yet the degree 4 part of
/// the Grothendieck polynomial is `s_{2,1,1}` alone, and `N = 4` would give
/// `5` Hecke words instead of `3`.
pub fn count_b(w: &Permutation, shape: &Partition) -> Result<u64> {
    let w = w.normalized();
    let max_entry = w.size().saturating_sub(1);
    count_fillings(shape, max_entry, Fill::ColumnWeak, Reading::Rows, &|word| {
        is_hecke_word_for(&w, word)
    })
}

/// `c_{w,lambda}`: row and column strict fillings whose column reading word
/// is a Hecke word for `w`.
pub fn count_c(w: &Permutation, shape: &Partition) -> Result<u64> {
    let w = w.normalized();
    let max_entry = w.size().saturating_sub(1);
    count_fillings(shape, max_entry, Fill::Strict, Reading::Columns, &|word| {
        is_hecke_word_for(&w, word)
    })
}

/// Replays a prefix of choices and records every choice requested.
struct Recorder {
    script: Vec<usize>,
    arities: Vec<usize>,
}

impl ChoiceSource for Recorder {
    fn below(&mut self, m: usize) -> usize {
        let k = self.arities.len();
        self.arities.push(m);
        if k < self.script.len() {
            self.script[k]
        } else {
            self.script.push(0);
            0
        }
    }
}

/// The exact expectation of a random variable driven by uniform choices,
/// found by running it on every choice sequence and weighting each outcome by
/// the product of `1/m` over its choices.
pub fn exact_expectation(
    mut sample: impl FnMut(&mut dyn ChoiceSource) -> Result<BigUint>,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    let mut script: Vec<usize> = Vec::new();
    let mut paths = 0u64;
    loop {
        paths += 1;
        if paths > PATH_GUARD {
            return Err(guard("choice sequences", paths, PATH_GUARD));
        }
        let mut rec = Recorder {
            script: script.clone(),
            arities: Vec::new(),
        };
        let value = sample(&mut rec)?;
        let used = rec.arities.len();
        let mut weight = BigUint::one();
        for &m in &rec.arities {
            weight *= BigUint::from(m);
        }
        total += BigRational::new(BigInt::from(value), BigInt::from(weight));
        // odometer over the choices actually consumed
        let mut choices = rec.script;
        choices.truncate(used);
        let arities = rec.arities;
        loop {
            match choices.pop() {
                None => return Ok(total),
                Some(c) if c + 1 < arities[choices.len()] => {
                    choices.push(c + 1);
                    break;
                }
                Some(_) => {}
            }
        }
        script = choices;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{h_sample, y_sample, z_sample};

    fn p(word: &[usize]) -> Permutation {
        Permutation::from_one_line(word.to_vec()).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn reduced_word_examples() {
        assert_eq!(enumerate_reduced_words(&Permutation::identity(4)).unwrap(), BigUint::one());
        assert_eq!(enumerate_reduced_words(&p(&[3, 2, 1])).unwrap(), BigUint::from(2u32));
        assert_eq!(enumerate_reduced_words(&p(&[2, 1, 4, 3])).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn hecke_word_examples() {
        assert_eq!(enumerate_hecke_words(&Permutation::identity(3), 0).unwrap(), 1);
        assert_eq!(enumerate_hecke_words(&p(&[3, 2, 1]), 3).unwrap(), 2);
        assert_eq!(enumerate_hecke_words(&p(&[3, 1, 5, 2, 4]), 5).unwrap(), 32);
        assert!(enumerate_hecke_words(&Permutation::longest(8), 12).is_err());
    }

    #[test]
    fn syt_examples() {
        assert_eq!(enumerate_syt(&Partition::empty()).unwrap(), 1);
        assert_eq!(enumerate_syt(&part(&[3, 2])).unwrap(), 5);
        assert_eq!(enumerate_skew_syt(&SkewShape::parse("2,2/1").unwrap()).unwrap(), 2);
        assert_eq!(enumerate_skew_syt(&SkewShape::parse("2,1/1").unwrap()).unwrap(), 2);
        assert_eq!(enumerate_skew_syt(&SkewShape::parse("2,1/2,1").unwrap()).unwrap(), 1);
    }

    #[test]
    fn set_valued_examples() {
        let shape = SkewShape::straight(part(&[2, 2]));
        assert_eq!(enumerate_set_valued(&shape, 4).unwrap(), 2);
        assert_eq!(enumerate_set_valued(&shape, 5).unwrap(), 10);
        assert_eq!(enumerate_set_valued(&SkewShape::straight(part(&[3, 1])), 5).unwrap(), 17);
        assert_eq!(enumerate_set_valued(&SkewShape::straight(part(&[3, 2])), 5).unwrap(), 5);
        assert_eq!(enumerate_set_valued(&shape, 3).unwrap(), 0);
    }

    #[test]
    fn set_valued_enumeration_admits_a_displayed_tableau() {
        // {1} {2,3} {5} / {4,6} {7,8} on shape (3,2), N = 8
        let boxes: [&[usize]; 5] = [&[1], &[2, 3], &[5], &[4, 6], &[7, 8]];
        let cells = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)];
        let lookup = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c)).map(|k| boxes[k]);
        for &(r, c) in &cells {
            let here = lookup(r, c).unwrap();
            for (nr, nc) in [(r, c + 1), (r + 1, c)] {
                if let Some(next) = lookup(nr, nc) {
                    assert!(here.iter().max() < next.iter().min());
                }
            }
        }
        assert!(enumerate_set_valued(&SkewShape::straight(part(&[3, 2])), 8).unwrap() > 0);
    }

    #[test]
    fn coefficient_examples() {
        let w = p(&[3, 1, 5, 2, 4]);
        for shape in [part(&[3, 2]), part(&[3, 1, 1]), part(&[2, 2, 1])] {
            assert_eq!(count_b(&w, &shape).unwrap(), 2, "b for {shape}");
        }
        for shape in [part(&[2, 2]), part(&[3, 1]), part(&[3, 2])] {
            assert_eq!(count_c(&w, &shape).unwrap(), 1, "c for {shape}");
        }
        let grassmannian = p(&[1, 4, 2, 3]);
        assert_eq!(count_b(&grassmannian, &part(&[2, 1, 1])).unwrap(), 1);
        assert_eq!(count_b(&grassmannian, &part(&[2, 2])).unwrap(), 0);
        let sigma = p(&[2, 1, 4, 3]);
        assert_eq!(count_a(&sigma, &part(&[2])).unwrap(), 1);
        assert_eq!(count_a(&sigma, &part(&[1, 1])).unwrap(), 1);
    }

    #[test]
    fn reading_word_convention() {
        let shape = part(&[3, 2]);
        let rows = vec![vec![1, 2, 4], vec![1, 3]];
        assert_eq!(column_reading_word(&shape, &rows), vec![4, 2, 3, 1, 1]);
        assert_eq!(row_reading_word(&rows), vec![4, 2, 1, 3, 1]);
        let w = p(&[3, 1, 5, 2, 4]);
        for rows in [vec![vec![1, 2, 4], vec![1, 3]], vec![vec![1, 2, 4], vec![3, 4]]] {
            assert!(is_hecke_word_for(&w, &row_reading_word(&rows)));
        }
    }

    #[test]
    fn exact_expectations_of_small_samplers() {
        let s1 = p(&[2, 1]);
        let e = exact_expectation(|src| z_sample(&s1, 1, src)).unwrap();
        assert_eq!(e, BigRational::one());
        let w = p(&[5, 4, 2, 7, 8, 3, 1, 6]);
        let e = exact_expectation(|src| y_sample(&w, src)).unwrap();
        assert_eq!(e, BigRational::from_integer(BigInt::from(730158)));
        let w = p(&[3, 1, 5, 2, 4]);
        let e = exact_expectation(|src| z_sample(&w, 5, src)).unwrap();
        assert_eq!(e, BigRational::from_integer(BigInt::from(32)));
        let w = p(&[3, 2, 1]);
        let e = exact_expectation(|src| h_sample(&w, 4, src)).unwrap();
        assert_eq!(e, BigRational::from_integer(BigInt::from(8)));
    }
}
