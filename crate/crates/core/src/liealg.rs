//! Cartan data, Weyl-group action on weights and reduced words.
//!
//! Vertices are numbered `1..=n`. Weights are stored in the basis of
//! fundamental weights, and the Cartan matrix follows the convention
//! `a_ij = <alpha_i^vee, alpha_j>`, so the simple root `alpha_j` is column `j`.
//!
//! Weyl group elements are handled as words; two words are equal as elements
//! when they act identically on `rho`, which is regular, so the action is
//! faithful. Lengths and reduced words come from descent stripping on `w(rho)`:
//! a negative coordinate `i` of `w(rho)` is a left descent of `w`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Series::A | Series::D | Series::E)
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// A finite-type Dynkin diagram with its Cartan matrix.
///
/// Labeling: `A_n` is the path `1 - 2 - ... - n`. In `D_n` the vertices `1`
/// and `2` are the fork (spin) nodes attached to `3`, followed by the path
/// `3 - 4 - ... - n` ending at the vector node `n`; in `D_4` the central node
/// is `3`. `E_n` uses Bourbaki numbering (`2` hangs off `4`). For `B_n`/`C_n`
/// the vector representation is vertex `n` and the double bond joins `1`
/// and `2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    series: Series,
    rank: usize,
    cartan: Vec<Vec<i64>>,
}

impl DynkinDiagram {
    /// Simply-laced diagrams only; see [`DynkinDiagram::new_extended`].
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if !series.is_simply_laced() {
            return Err(Error::ExtendedRequired(series.letter()));
        }
        Self::new_extended(series, rank)
    }

    /// Any finite type, including the non-simply-laced series.
    pub fn new_extended(series: Series, rank: usize) -> Result<Self> {
        let bad = || Error::BadDiagram(format!("{}{}", series.letter(), rank));
        let n = rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize, aij: i64, aji: i64| {
            c[i - 1][j - 1] = aij;
            c[j - 1][i - 1] = aji;
        };
        match series {
            Series::A => {
                if n < 1 {
                    return Err(bad());
                }
                for i in 1..n {
                    bond(i, i + 1, -1, -1);
                }
            }
            Series::D => {
                if n < 4 {
                    return Err(bad());
                }
                bond(1, 3, -1, -1);
                bond(2, 3, -1, -1);
                for i in 3..n {
                    bond(i, i + 1, -1, -1);
                }
            }
            Series::E => {
                if !(6..=8).contains(&n) {
                    return Err(bad());
                }
                bond(1, 3, -1, -1);
                bond(2, 4, -1, -1);
                for i in 3..n {
                    bond(i, i + 1, -1, -1);
                }
            }
            Series::B | Series::C => {
                if n < 2 {
                    return Err(bad());
                }
                // vertex 1 is short in B_n and long in C_n
                if series == Series::B {
                    bond(1, 2, -2, -1);
                } else {
                    bond(1, 2, -1, -2);
                }
                for i in 2..n {
                    bond(i, i + 1, -1, -1);
                }
            }
            Series::F => {
                if n != 4 {
                    return Err(bad());
                }
                bond(1, 2, -1, -1);
                bond(2, 3, -1, -2);
                bond(3, 4, -1, -1);
            }
            Series::G => {
                if n != 2 {
                    return Err(bad());
                }
                bond(1, 2, -3, -1);
            }
        }
        Ok(DynkinDiagram { series, rank: n, cartan: c })
    }

    /// Parses `"A5"`, `"d4"`, `"E6"`; non-simply-laced names need `extended`.
    pub fn parse(s: &str, extended: bool) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_letter)
            .ok_or_else(|| Error::BadDiagram(s.to_string()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::BadDiagram(s.to_string()))?;
        if extended {
            Self::new_extended(series, rank)
        } else {
            Self::new(series, rank)
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        self.series.is_simply_laced()
    }

    /// Cartan entry `a_ij` for 1-based vertices.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series.letter(), self.rank)
    }

    /// Integers `d_i` with `d_i a_ij = d_j a_ji`.
    pub fn symmetrizer(&self) -> Vec<i64> {
        match self.series {
            Series::A | Series::D | Series::E => vec![1; self.rank],
            Series::B => (0..self.rank).map(|i| if i == 0 { 1 } else { 2 }).collect(),
            Series::C => (0..self.rank).map(|i| if i == 0 { 2 } else { 1 }).collect(),
            Series::F => vec![2, 2, 1, 1],
            Series::G => vec![1, 3],
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.rank {
            Err(Error::VertexOutOfRange { vertex: v, rank: self.rank })
        } else {
            Ok(())
        }
    }

    pub fn rho(&self) -> WeightVec {
        WeightVec(vec![1; self.rank])
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVec {
        let mut v = vec![0; self.rank];
        v[i - 1] = 1;
        WeightVec(v)
    }

    /// The simple root `alpha_i` in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> WeightVec {
        WeightVec((0..self.rank).map(|k| self.cartan[k][i - 1]).collect())
    }

    /// `s_i(lambda) = lambda - lambda_i alpha_i`.
    pub fn reflect(&self, i: usize, lambda: &WeightVec) -> WeightVec {
        let li = lambda.0[i - 1];
        WeightVec(
            lambda
                .0
                .iter()
                .enumerate()
                .map(|(k, &x)| x - li * self.cartan[k][i - 1])
                .collect(),
        )
    }

    /// Number of positive roots, i.e. the length of `w0`.
    pub fn num_positive_roots(&self) -> usize {
        let minus_rho = WeightVec(vec![-1; self.rank]);
        strip_descents(self, minus_rho, None).len()
    }

    /// Restriction to the vertex subset `k`, as a Cartan matrix indexed by
    /// the sorted elements of `k`.
    pub fn sub_cartan(&self, k: &[usize]) -> Vec<Vec<i64>> {
        k.iter().map(|&i| k.iter().map(|&j| self.a(i, j)).collect()).collect()
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for DynkinDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, false)
    }
}

/// Integer weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVec(pub Vec<i64>);

impl WeightVec {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
    /// Set only by constructors that have verified reducedness.
    pub claimed_reduced: bool,
}

impl ReducedWord {
    /// An unchecked word.
    pub fn new(letters: Vec<usize>) -> Self {
        ReducedWord { letters, claimed_reduced: false }
    }

    /// A word verified to be reduced in `d`.
    pub fn checked(d: &DynkinDiagram, letters: Vec<usize>) -> Result<Self> {
        if !is_reduced(d, &letters)? {
            return Err(Error::WordRejected {
                reason: "not reduced".into(),
                prefix: first_non_reduced_prefix(d, &letters),
            });
        }
        Ok(ReducedWord { letters, claimed_reduced: true })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses a comma-separated list such as `2,4,5,4`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(ReducedWord::new(parse_vertex_list(s)?))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `"1,3"` (spaces allowed); the empty string is the empty list.
pub fn parse_vertex_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad vertex {p:?}"))))
        .collect()
}

fn check_letters(d: &DynkinDiagram, letters: &[usize]) -> Result<()> {
    letters.iter().try_for_each(|&l| d.check_vertex(l))
}

/// `s_{i_1} ... s_{i_k}(lambda)`: letters act from last to first.
pub fn apply_word(d: &DynkinDiagram, letters: &[usize], lambda: &WeightVec) -> Result<WeightVec> {
    check_letters(d, letters)?;
    if lambda.0.len() != d.rank() {
        return Err(Error::SizeMismatch(format!(
            "weight has {} coordinates, diagram rank is {}",
            lambda.0.len(),
            d.rank()
        )));
    }
    Ok(letters.iter().rev().fold(lambda.clone(), |acc, &i| d.reflect(i, &acc)))
}

/// Repeatedly removes the smallest left descent (negative coordinate of
/// `v = w(rho)`), returning the letters of a reduced word for `w`.
/// `allowed` restricts the search to a vertex subset.
fn strip_descents(d: &DynkinDiagram, mut v: WeightVec, allowed: Option<&[usize]>) -> Vec<usize> {
    let mut word = Vec::new();
    loop {
        let pick = (1..=d.rank())
            .filter(|i| allowed.is_none_or(|a| a.contains(i)))
            .find(|&i| v.0[i - 1] < 0);
        match pick {
            Some(i) => {
                word.push(i);
                v = d.reflect(i, &v);
            }
            None => return word,
        }
    }
}

/// Length of the element represented by `letters`.
pub fn length(d: &DynkinDiagram, letters: &[usize]) -> Result<usize> {
    let v = apply_word(d, letters, &d.rho())?;
    Ok(strip_descents(d, v, None).len())
}

pub fn is_reduced(d: &DynkinDiagram, letters: &[usize]) -> Result<bool> {
    Ok(length(d, letters)? == letters.len())
}

fn first_non_reduced_prefix(d: &DynkinDiagram, letters: &[usize]) -> Vec<usize> {
    for k in 1..=letters.len() {
        if !matches!(is_reduced(d, &letters[..k]), Ok(true)) {
            return letters[..k].to_vec();
        }
    }
    letters.to_vec()
}

/// Equality of Weyl group elements via their action on `rho`.
pub fn same_element(d: &DynkinDiagram, a: &[usize], b: &[usize]) -> Result<bool> {
    Ok(apply_word(d, a, &d.rho())? == apply_word(d, b, &d.rho())?)
}

/// A reduced word for the element `w` with `w(rho) = v`, canonical by the
/// smallest-descent rule.
pub fn word_from_rho_image(d: &DynkinDiagram, v: WeightVec) -> ReducedWord {
    ReducedWord { letters: strip_descents(d, v, None), claimed_reduced: true }
}

pub fn longest_word(d: &DynkinDiagram) -> ReducedWord {
    word_from_rho_image(d, WeightVec(vec![-1; d.rank()]))
}

/// Image of `rho` under the longest element of the parabolic subgroup `W_K`.
fn parabolic_w0_rho(d: &DynkinDiagram, k: &[usize]) -> WeightVec {
    let mut v = d.rho();
    // climb: left-multiply by s_i while it increases length inside W_K
    while let Some(i) = k.iter().copied().find(|&i| v.0[i - 1] > 0) {
        v = d.reflect(i, &v);
    }
    v
}

fn normalize_subset(d: &DynkinDiagram, k: &[usize]) -> Result<Vec<usize>> {
    check_letters(d, k)?;
    let mut k = k.to_vec();
    k.sort_unstable();
    k.dedup();
    Ok(k)
}

/// Reduced word for `w0^K`, the longest element of `W_K`.
pub fn parabolic_longest_word(d: &DynkinDiagram, k: &[usize]) -> Result<ReducedWord> {
    let k = normalize_subset(d, k)?;
    let v = parabolic_w0_rho(d, &k);
    Ok(ReducedWord { letters: strip_descents(d, v, Some(&k)), claimed_reduced: true })
}

/// Reduced word `(i', i'')` for `w0` whose prefix `i'` is a reduced word for
/// `w0^K`, so the result lies in `R(w0, K)`. The prefix removes smallest left
/// descents, the suffix smallest right descents.
pub fn rw0k_word(d: &DynkinDiagram, k: &[usize]) -> Result<ReducedWord> {
    let k = normalize_subset(d, k)?;
    if k.len() == d.rank() {
        return Err(Error::KEqualsI);
    }
    let prefix = parabolic_longest_word(d, &k)?;
    // v_K = w0^K w0. Its word is built from the right by removing the
    // smallest right descent each time, i.e. by stripping left descents of
    // v_K^{-1} = w0 w0^K and reversing.
    let w0 = longest_word(d);
    let inv_rho = apply_word(d, &w0.letters, &parabolic_w0_rho(d, &k))?;
    let mut suffix = strip_descents(d, inv_rho, None);
    suffix.reverse();
    let mut letters = prefix.letters;
    letters.extend(suffix);
    Ok(ReducedWord { letters, claimed_reduced: true })
}

/// `r_K`, the length of `w0^K`.
pub fn parabolic_length(d: &DynkinDiagram, k: &[usize]) -> Result<usize> {
    Ok(parabolic_longest_word(d, k)?.len())
}

/// Checks that `letters` is a reduced word for `w0`.
pub fn check_longest(d: &DynkinDiagram, letters: &[usize]) -> Result<()> {
    check_letters(d, letters)?;
    let r = d.num_positive_roots();
    if letters.len() != r {
        return Err(Error::NotLongestWord(format!("length {} but w0 has length {r}", letters.len())));
    }
    if !is_reduced(d, letters)? {
        return Err(Error::WordRejected {
            reason: "not reduced".into(),
            prefix: first_non_reduced_prefix(d, letters),
        });
    }
    Ok(())
}

/// Validates membership in `R(w0, K)`, reporting the failing prefix.
pub fn validate_rw0k(d: &DynkinDiagram, k: &[usize], letters: &[usize]) -> Result<()> {
    let k = normalize_subset(d, k)?;
    check_longest(d, letters)?;
    let r_k = parabolic_length(d, &k)?;
    let prefix = &letters[..r_k];
    if let Some(pos) = prefix.iter().position(|l| !k.contains(l)) {
        return Err(Error::WordRejected {
            reason: format!("letter {} of the first {r_k} is outside K", prefix[pos]),
            prefix: letters[..=pos].to_vec(),
        });
    }
    // a reduced word of length r_K inside W_K is a word for w0^K
    Ok(())
}

/// The Nakayama involution: `alpha_{mu(i)} = -w0(alpha_i)`. Entry `i-1`
/// holds `mu(i)`.
pub fn nakayama(d: &DynkinDiagram) -> Vec<usize> {
    let w0 = longest_word(d);
    (1..=d.rank())
        .map(|i| {
            let img = apply_word(d, &w0.letters, &d.simple_root(i)).expect("letters in range");
            let neg = WeightVec(img.0.iter().map(|x| -x).collect());
            (1..=d.rank())
                .find(|&j| d.simple_root(j) == neg)
                .expect("-w0 permutes the simple roots")
        })
        .collect()
}
