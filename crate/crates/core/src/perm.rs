//! Permutations in one-line notation together with the statistics the
//! counting algorithms need: length, Lehmer code, descents, pattern
//! occurrences and the Demazure (0-Hecke) monoid action.
//!
//! Positions and values are 1-based throughout the public API, matching the
//! matrix coordinates used by Rothe diagrams.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, .., n}` stored in one-line notation.
///
/// The size is kept exactly as given; `S_n` embeds in `S_m` for `m > n` by
/// fixing the extra points, and [`Permutation::normalized`] strips those
/// trailing fixed points when a canonical key is needed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<usize>,
}

/// Lehmer code `(c_1, .., c_L)` without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LehmerCode {
    entries: Vec<usize>,
}

impl LehmerCode {
    /// Builds a code, dropping trailing zeros.
    pub fn new(mut entries: Vec<usize>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        LehmerCode { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.entries.iter().sum()
    }
}

impl Permutation {
    /// Parses one-line notation. Every value in `1..=n` must occur exactly once.
    pub fn from_one_line(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::malformed("permutation must have at least one entry"));
        }
        let mut seen = vec![false; n + 1];
        for (pos, &v) in word.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::malformed(format!(
                    "entry {v} at position {} is outside 1..={n}",
                    pos + 1
                )));
            }
            if seen[v] {
                return Err(Error::malformed(format!(
                    "entry {v} at position {} is repeated",
                    pos + 1
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n.max(1)).collect(),
        }
    }

    /// The longest element `w_0 = n n-1 .. 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n.max(1)).rev().collect(),
        }
    }

    /// `s_i`, the adjacent transposition swapping `i` and `i+1`, in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::malformed(format!("s_{i} is not a generator of S_{n}")));
        }
        let mut w = Permutation::identity(n);
        w.word.swap(i - 1, i);
        Ok(w)
    }

    /// `2 1 4 3 .. 2k 2k-1` in `S_{2k}`, a product of `k` commuting generators.
    pub fn disjoint_swaps(k: usize) -> Self {
        if k == 0 {
            return Permutation::identity(1);
        }
        let word = (1..=k).flat_map(|j| [2 * j, 2 * j - 1]).collect();
        Permutation { word }
    }

    /// Inverse of [`Permutation::lehmer_code`]: the permutation in the smallest
    /// symmetric group that has this code.
    pub fn from_lehmer_code(code: &LehmerCode) -> Result<Self> {
        let entries = code.entries();
        let mut n = entries.len().max(1);
        for (idx, &c) in entries.iter().enumerate() {
            let need = (idx + 1)
                .checked_add(c)
                .ok_or_else(|| Error::malformed("Lehmer code entry overflows"))?;
            n = n.max(need);
        }
        let mut unused: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for &c in entries {
            word.push(unused.remove(c));
        }
        word.extend(unused);
        Ok(Permutation { word })
    }

    pub fn size(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    /// `w(i)` for a 1-based position.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.word.len()];
        for (pos, &v) in self.word.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        Permutation { word: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(p, &v)| v == p + 1)
    }

    /// Drops trailing fixed points (keeping at least one entry).
    pub fn normalized(&self) -> Permutation {
        let mut word = self.word.clone();
        while word.len() > 1 && word[word.len() - 1] == word.len() {
            word.pop();
        }
        Permutation { word }
    }

    /// Embeds into `S_m` for `m >= n` by fixing the new points.
    pub fn extended(&self, m: usize) -> Permutation {
        let mut word = self.word.clone();
        word.extend(self.word.len() + 1..=m);
        Permutation { word }
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn lehmer_code(&self) -> LehmerCode {
        let w = &self.word;
        let entries = (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&v| v < w[i]).count())
            .collect();
        LehmerCode::new(entries)
    }

    /// Positions `i` (1-based) with `w(i) > w(i+1)`, ascending.
    pub fn descents(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[0] > pair[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn has_descent_at(&self, i: usize) -> bool {
        i >= 1 && i < self.word.len() && self.word[i - 1] > self.word[i]
    }

    /// Number of occurrences of `pattern`: index tuples `i_1 < .. < i_k`
    /// whose values are order-isomorphic to the pattern.
    pub fn count_pattern(&self, pattern: &Permutation) -> u64 {
        let mut count = 0u64;
        self.scan_pattern(pattern, &mut |_| {
            count += 1;
            true
        });
        count
    }

    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let mut found = false;
        self.scan_pattern(pattern, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// Calls `visit` with the 1-based positions of each occurrence until it
    /// returns `false`.
    pub fn scan_pattern(&self, pattern: &Permutation, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let k = pattern.size();
        if k > self.size() {
            return;
        }
        let mut chosen = Vec::with_capacity(k);
        extend_occurrence(&self.word, &pattern.word, 0, &mut chosen, visit);
    }

    /// Vexillary means 2143-avoiding.
    pub fn is_vexillary(&self) -> bool {
        !self.contains_pattern(&pattern_2143())
    }

    /// Swaps the entries at positions `i < j`, i.e. right multiplication by
    /// the transposition `(i, j)`.
    pub fn apply_transposition(&self, i: usize, j: usize) -> Result<Permutation> {
        let n = self.size();
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::malformed(format!(
                "transposition ({i},{j}) needs 1 <= i < j <= {n}"
            )));
        }
        Ok(self.swapped(i, j))
    }

    pub(crate) fn swapped(&self, i: usize, j: usize) -> Permutation {
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Permutation { word }
    }

    /// `w s_i`, growing the permutation if `i` reaches past its size.
    pub fn times_simple(&self, i: usize) -> Permutation {
        let mut w = if i >= self.size() {
            self.extended(i + 1)
        } else {
            self.clone()
        };
        w.word.swap(i - 1, i);
        w
    }

    /// The Demazure product `w * s_i`: `w s_i` when that is longer,
    /// otherwise `w` itself.
    pub fn demazure_append(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i >= self.size() {
            return Err(Error::malformed(format!(
                "s_{i} is not a generator of S_{}",
                self.size()
            )));
        }
        Ok(if self.has_descent_at(i) {
            self.clone()
        } else {
            self.times_simple(i)
        })
    }

    /// Left-to-right Demazure fold of a word in the generators, starting from
    /// the identity of `S_n`.
    pub fn demazure_fold(n: usize, word: &[usize]) -> Result<Permutation> {
        word.iter()
            .try_fold(Permutation::identity(n), |acc, &i| acc.demazure_append(i))
    }

    /// Parses comma-separated one-line notation such as `5,4,2,7,8,3,1,6`.
    /// Without commas, a string of digits `1..=9` is read one digit per
    /// entry, so `54278316` also works.
    pub fn parse_one_line(text: &str) -> Result<Permutation> {
        let text = text.trim();
        if text.len() > 1 && !text.contains(',') && text.bytes().all(|b| (b'1'..=b'9').contains(&b)) {
            return Permutation::from_one_line(text.bytes().map(|b| usize::from(b - b'0')).collect());
        }
        Permutation::from_one_line(parse_list(text)?)
    }

    /// Parses a comma-separated Lehmer code; the empty string is the identity.
    pub fn parse_code(text: &str) -> Result<Permutation> {
        Permutation::from_lehmer_code(&LehmerCode::new(parse_list(text)?))
    }
}

/// The pattern 2143.
pub fn pattern_2143() -> Permutation {
    Permutation { word: vec![2, 1, 4, 3] }
}

/// The pattern 321.
pub fn pattern_321() -> Permutation {
    Permutation { word: vec![3, 2, 1] }
}

/// Every permutation of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut word: Vec<usize> = (1..=n.max(1)).collect();
    loop {
        out.push(Permutation { word: word.clone() });
        // next lexicographic permutation
        let Some(i) = (0..word.len().saturating_sub(1))
            .rev()
            .find(|&i| word[i] < word[i + 1])
        else {
            break;
        };
        let j = (i + 1..word.len()).rev().find(|&j| word[j] > word[i]).unwrap();
        word.swap(i, j);
        word[i + 1..].reverse();
    }
    out
}

fn extend_occurrence(
    word: &[usize],
    pattern: &[usize],
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let depth = chosen.len();
    if depth == pattern.len() {
        let positions: Vec<usize> = chosen.iter().map(|&p| p + 1).collect();
        return visit(&positions);
    }
    let remaining = pattern.len() - depth;
    for pos in start..=word.len() - remaining {
        let v = word[pos];
        let consistent = chosen
            .iter()
            .zip(pattern)
            .all(|(&q, &pv)| (word[q] < v) == (pv < pattern[depth]));
        if consistent {
            chosen.push(pos);
            let keep_going = extend_occurrence(word, pattern, pos + 1, chosen, visit);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
    }
    true
}

pub(crate) fn parse_list(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(idx, tok)| {
            tok.trim().parse::<usize>().map_err(|_| {
                Error::malformed(format!("entry {} ({:?}) is not a nonnegative integer", idx + 1, tok.trim()))
            })
        })
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse_one_line(s)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        Permutation::from_one_line(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.word
    }
}
