//! Root-lattice arithmetic for symmetric Kac–Moody root systems.
//!
//! Vectors are written in simple-root coordinates with arbitrary-precision
//! integer entries. Words act on the lattice right to left, so the last
//! letter of a word is the first reflection applied.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite sequence of letters `1..=n` with no two equal neighbours.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    /// Builds a word, rejecting zero letters and adjacent repeats.
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        for (pos, pair) in letters.windows(2).enumerate() {
            if pair[0] == pair[1] {
                return Err(Error::RepeatedLetter { letter: pair[0], position: pos + 1 });
            }
        }
        if let Some(&l) = letters.iter().find(|&&l| l == 0) {
            return Err(Error::LetterOutOfRange { letter: l, rank: 0 });
        }
        Ok(Word(letters))
    }

    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses a digit string such as `"3213213213212312"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "-" || text == "e" {
            return Ok(Word::empty());
        }
        let letters = text
            .chars()
            .map(|ch| ch.to_digit(10).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::WordSyntax(text.to_string()))?;
        Word::new(letters)
    }

    /// Checks that every letter lies in `1..=rank`.
    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || l as usize > rank) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, rank }),
            None => Ok(()),
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// The suffix starting at position `start`.
    pub fn suffix(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Appends a letter, failing if it repeats the current last letter.
    pub fn push(&mut self, letter: u8) -> Result<()> {
        if letter == 0 {
            return Err(Error::LetterOutOfRange { letter, rank: 0 });
        }
        if self.last() == Some(letter) {
            return Err(Error::RepeatedLetter { letter, position: self.0.len() });
        }
        self.0.push(letter);
        Ok(())
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    /// All words over `1..=rank` of exactly `len` letters, in lexicographic order.
    pub fn all_of_length(rank: u8, len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * rank.saturating_sub(1) as usize);
            for w in &out {
                for l in 1..=rank {
                    if w.last() != Some(&l) {
                        let mut v: Vec<u8> = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(Word).collect()
    }

    /// All nonempty words over `1..=rank` with at most `max_len` letters, shortest first.
    pub fn all_up_to(rank: u8, max_len: usize) -> Vec<Word> {
        (1..=max_len).flat_map(|len| Word::all_of_length(rank, len)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Word::parse(&text).map_err(D::Error::custom)
    }
}

/// An element of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<BigInt>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![BigInt::zero(); n])
    }

    /// The simple root `α_i` for `i` in `1..=n`.
    pub fn simple(n: usize, i: u8) -> Result<Self> {
        check_index(n, i)?;
        let mut v = RootVector::zero(n);
        v.0[i as usize - 1] = BigInt::one();
        Ok(v)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RootVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// True when every coordinate is nonnegative and at least one is positive.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|c| !c.is_positive())
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> RootVector {
        RootVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Sum of the coordinates.
    pub fn height(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Flips an all-nonpositive vector; mixed signs are an error.
    pub fn positive_representative(self) -> Result<RootVector> {
        if self.is_positive() {
            Ok(self)
        } else if self.is_negative() {
            Ok(self.neg())
        } else {
            Err(Error::NotARealRoot(self.to_string()))
        }
    }

    /// Coordinatewise maximum.
    pub fn max(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a.max(b).clone()).collect())
    }

    /// True when `self ≥ other` in every coordinate.
    pub fn dominates(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Divides out the gcd of the entries.
    pub fn primitive(&self) -> RootVector {
        let g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        RootVector(self.0.iter().map(|c| c / &g).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        parts
            .iter()
            .map(|p| p.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(RootVector)
    }
}

fn check_index(n: usize, i: u8) -> Result<()> {
    if i == 0 || i as usize > n {
        Err(Error::LetterOutOfRange { letter: i, rank: n })
    } else {
        Ok(())
    }
}

/// A square integer matrix used for linear maps on the root lattice.
pub type LatticeMatrix = Vec<Vec<BigInt>>;

/// Symmetric generalized Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanSpec {
    n: usize,
    a: Vec<i64>,
}

impl CartanSpec {
    /// Builds and validates a Cartan matrix from its rows.
    pub fn new(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, found: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 2 {
                    return Err(Error::Cartan(format!("diagonal entry ({i},{j}) is {v}")));
                }
                if i != j && v > 0 {
                    return Err(Error::Cartan(format!("positive entry ({i},{j})")));
                }
                if i != j && rows[j][i] != v {
                    return Err(Error::Cartan(format!("asymmetric entry ({i},{j})")));
                }
                a.push(v);
            }
        }
        Ok(CartanSpec { n, a })
    }

    /// Cartan matrix from arrow multiplicities: `a_ij = -(m_ij + m_ji)`.
    pub fn from_multiplicities(mult: &[Vec<u32>]) -> Result<Self> {
        let n = mult.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else { -((mult[i][j] + mult[j][i]) as i64) })
                    .collect()
            })
            .collect();
        CartanSpec::new(&rows)
    }

    /// Rank-3 matrix with every off-diagonal entry equal to `-c`.
    pub fn uniform_rank3(c: i64) -> Self {
        CartanSpec::new(&[vec![2, -c, -c], vec![-c, 2, -c], vec![-c, -c, 2]]).expect("valid uniform Cartan")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    /// True when every pair of distinct generators generates an infinite dihedral group.
    pub fn is_universal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.entry(i, j) <= -2))
    }

    fn check_dim(&self, x: &RootVector) -> Result<()> {
        if x.dim() != self.n {
            Err(Error::Dimension { expected: self.n, found: x.dim() })
        } else {
            Ok(())
        }
    }

    /// The pairing `(α_i, x)`.
    fn pair_simple(&self, i: usize, x: &[BigInt]) -> BigInt {
        let row = &self.a[i * self.n..(i + 1) * self.n];
        let mut acc = BigInt::zero();
        for (a, c) in row.iter().zip(x) {
            match *a {
                0 => {}
                2 => acc += c * 2u32,
                v => acc += c * v,
            }
        }
        acc
    }

    /// The bilinear form `xᵀ A y`.
    pub fn pairing(&self, x: &RootVector, y: &RootVector) -> Result<BigInt> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok((0..self.n).map(|i| &x.0[i] * self.pair_simple(i, &y.0)).sum())
    }

    /// The simple reflection `s_i x = x - (α_i, x) α_i`.
    pub fn reflect(&self, i: u8, x: &RootVector) -> Result<RootVector> {
        self.check_dim(x)?;
        check_index(self.n, i)?;
        let mut out = x.clone();
        self.reflect_in_place(i as usize - 1, &mut out.0);
        Ok(out)
    }

    fn reflect_in_place(&self, i: usize, x: &mut [BigInt]) {
        let p = self.pair_simple(i, x);
        x[i] -= p;
    }

    /// Applies `s_{i_1} ⋯ s_{i_k}` to `x`; the rightmost letter acts first.
    ///
    /// Accepts raw letter sequences, repeated neighbours included.
    pub fn apply_letters(&self, letters: &[u8], x: &RootVector) -> Result<RootVector> {
        self.check_dim(x)?;
        for &l in letters {
            check_index(self.n, l)?;
        }
        let mut out = x.clone();
        for &l in letters.iter().rev() {
            self.reflect_in_place(l as usize - 1, &mut out.0);
        }
        Ok(out)
    }

    pub fn apply_word(&self, w: &Word, x: &RootVector) -> Result<RootVector> {
        self.apply_letters(w.letters(), x)
    }

    /// `s_w α_i`.
    pub fn word_on_simple(&self, letters: &[u8], i: u8) -> Result<RootVector> {
        self.apply_letters(letters, &RootVector::simple(self.n, i)?)
    }

    /// Matrix of `s_u` acting on simple-root coordinates; column `j` is `s_u α_j`.
    pub fn word_matrix(&self, letters: &[u8]) -> Result<LatticeMatrix> {
        let cols: Vec<RootVector> =
            (1..=self.n as u8).map(|j| self.word_on_simple(letters, j)).collect::<Result<_>>()?;
        Ok((0..self.n).map(|r| (0..self.n).map(|c| cols[c].0[r].clone()).collect()).collect())
    }

    /// Matrix of the reflection `r_β x = x - (β, x) β`.
    pub fn root_reflection_matrix(&self, beta: &RootVector) -> Result<LatticeMatrix> {
        self.check_dim(beta)?;
        let pairs: Vec<BigInt> = (0..self.n).map(|j| self.pair_simple(j, &beta.0)).collect();
        Ok((0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| {
                        let delta = if r == c { BigInt::one() } else { BigInt::zero() };
                        delta - &pairs[c] * &beta.0[r]
                    })
                    .collect()
            })
            .collect())
    }

    /// Descent test: `x` is a positive real root iff reflecting along
    /// positive pairings keeps it nonnegative and ends at a simple root.
    pub fn is_positive_real_root(&self, x: &RootVector) -> bool {
        if x.dim() != self.n || !x.is_positive() {
            return false;
        }
        let mut cur = x.0.clone();
        loop {
            let nonzero: Vec<usize> = (0..self.n).filter(|&i| !cur[i].is_zero()).collect();
            if nonzero.len() == 1 && cur[nonzero[0]].is_one() {
                return true;
            }
            let step = (0..self.n).find(|&i| self.pair_simple(i, &cur).is_positive());
            match step {
                None => return false,
                Some(i) => {
                    self.reflect_in_place(i, &mut cur);
                    if cur[i].is_negative() {
                        return false;
                    }
                }
            }
        }
    }

    /// Positive root attached to an odd-length word `u = p·m·q`: the first
    /// half applied to the middle simple root, confirmed against `s_u`.
    pub fn reflection_root_of_word(&self, letters: &[u8]) -> Result<RootVector> {
        let shown = || letters.iter().map(|l| l.to_string()).collect::<String>();
        if letters.len().is_multiple_of(2) {
            return Err(Error::EvenLength(shown()));
        }
        let mid = letters.len() / 2;
        let beta = self.word_on_simple(&letters[..mid], letters[mid])?;
        let beta = beta.positive_representative().map_err(|_| Error::NotAReflection(shown()))?;
        if self.word_matrix(letters)? != self.root_reflection_matrix(&beta)? {
            return Err(Error::NotAReflection(shown()));
        }
        Ok(beta)
    }

    /// Reflection test on the lattice action of `s_u`.
    pub fn is_reflection_by_matrix(&self, letters: &[u8]) -> bool {
        self.reflection_direction(letters).is_some()
    }

    /// The positive root `β` with `s_u = r_β`, if one exists.
    pub fn reflection_direction(&self, letters: &[u8]) -> Option<RootVector> {
        let m = self.word_matrix(letters).ok()?;
        let n = self.n;
        let ident = |r: usize, c: usize| if r == c { BigInt::one() } else { BigInt::zero() };
        let d: Vec<Vec<BigInt>> =
            (0..n).map(|r| (0..n).map(|c| &m[r][c] - ident(r, c)).collect()).collect();
        if d.iter().all(|row| row.iter().all(Zero::is_zero)) {
            return None;
        }
        let sq = mat_mul(&m, &m);
        if (0..n).any(|r| (0..n).any(|c| sq[r][c] != ident(r, c))) {
            return None;
        }
        for r1 in 0..n {
            for r2 in r1 + 1..n {
                for c1 in 0..n {
                    for c2 in c1 + 1..n {
                        if &d[r1][c1] * &d[r2][c2] != &d[r1][c2] * &d[r2][c1] {
                            return None;
                        }
                    }
                }
            }
        }
        let col = (0..n).find(|&c| (0..n).any(|r| !d[r][c].is_zero()))?;
        let v = RootVector((0..n).map(|r| d[r][col].clone()).collect()).primitive();
        let v = v.positive_representative().ok()?;
        if !self.is_positive_real_root(&v) {
            return None;
        }
        if self.root_reflection_matrix(&v).ok()? != m {
            return None;
        }
        Some(v)
    }

    /// Reflection test; universal Cartan matrices use free-product reduction,
    /// all others the matrix criterion.
    pub fn is_reflection(&self, letters: &[u8]) -> bool {
        if letters.iter().any(|&l| check_index(self.n, l).is_err()) {
            return false;
        }
        if self.is_universal() {
            is_reflection_free(letters)
        } else {
            self.is_reflection_by_matrix(letters)
        }
    }
}

/// Cancels adjacent equal letters until none remain.
pub fn free_reduce(letters: &[u8]) -> Vec<u8> {
    let mut stack: Vec<u8> = Vec::with_capacity(letters.len());
    for &l in letters {
        if stack.last() == Some(&l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// In a universal Coxeter group the reflections are exactly the reduced odd palindromes.
pub fn is_reflection_free(letters: &[u8]) -> bool {
    let r = free_reduce(letters);
    r.len() % 2 == 1 && r.iter().eq(r.iter().rev())
}

fn mat_mul(a: &LatticeMatrix, b: &LatticeMatrix) -> LatticeMatrix {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| &a[r][k] * &b[k][c]).sum()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(c: &[i64]) -> RootVector {
        RootVector::from_i64(c)
    }

    #[test]
    fn pairing_examples() {
        let c = CartanSpec::uniform_rank3(2);
        let a1 = RootVector::simple(3, 1).unwrap();
        let a2 = RootVector::simple(3, 2).unwrap();
        assert_eq!(c.pairing(&a1, &a1).unwrap(), BigInt::from(2));
        assert_eq!(c.pairing(&a1, &a2).unwrap(), BigInt::from(-2));
        assert_eq!(c.pairing(&a2, &rv(&[0, 1, 2])).unwrap(), BigInt::from(-2));
        assert!(c.pairing(&a1, &rv(&[1, 2])).is_err());
    }

    #[test]
    fn reflect_examples() {
        let c = CartanSpec::uniform_rank3(2);
        assert_eq!(c.reflect(1, &rv(&[1, 0, 0])).unwrap(), rv(&[-1, 0, 0]));
        assert_eq!(c.reflect(1, &rv(&[0, 1, 0])).unwrap(), rv(&[2, 1, 0]));
        let x = rv(&[10, 21, 60]);
        assert_eq!(c.pairing(&RootVector::simple(3, 2).unwrap(), &x).unwrap(), BigInt::from(-98));
        assert_eq!(c.reflect(2, &x).unwrap(), rv(&[10, 119, 60]));
        assert!(c.reflect(4, &x).is_err());
    }

    #[test]
    fn apply_word_examples() {
        let c = CartanSpec::uniform_rank3(2);
        let a2 = RootVector::simple(3, 2).unwrap();
        let mut letters = Word::parse("321321321321").unwrap().into_letters();
        letters.extend_from_slice(&[2, 3, 2, 1, 2, 3]);
        assert_eq!(c.apply_letters(&letters, &a2).unwrap(), rv(&[1662490, 4352663, 11395212]));
        assert_eq!(c.apply_word(&Word::empty(), &rv(&[4, 5, 6])).unwrap(), rv(&[4, 5, 6]));
        assert_eq!(c.word_on_simple(&[1, 2], 3).unwrap(), rv(&[6, 2, 1]));
    }

    #[test]
    fn reflection_roots() {
        let c = CartanSpec::uniform_rank3(2);
        assert_eq!(c.reflection_root_of_word(&[2, 3, 2]).unwrap(), rv(&[0, 2, 1]));
        let u = Word::parse("2321232321232").unwrap();
        assert_eq!(c.reflection_root_of_word(u.letters()).unwrap(), rv(&[10, 119, 60]));
        assert_eq!(c.reflection_root_of_word(&[2]).unwrap(), rv(&[0, 1, 0]));
        assert!(matches!(c.reflection_root_of_word(&[1, 2]), Err(Error::EvenLength(_))));
        assert!(matches!(c.reflection_root_of_word(&[1, 2, 3]), Err(Error::NotAReflection(_))));
    }

    #[test]
    fn reflection_tests() {
        let c = CartanSpec::uniform_rank3(2);
        for (u, expected) in [(&[2u8, 3, 1, 3, 2][..], true), (&[2, 3, 3, 2], false), (&[1, 2, 3], false)] {
            assert_eq!(c.is_reflection(u), expected);
            assert_eq!(c.is_reflection_by_matrix(u), expected);
        }
        assert_eq!(c.reflection_direction(&[2, 3, 1, 3, 2]).unwrap(), rv(&[1, 6, 2]));
    }

    #[test]
    fn real_root_descent() {
        let c = CartanSpec::uniform_rank3(2);
        assert!(c.is_positive_real_root(&rv(&[10, 119, 60])));
        assert!(c.is_positive_real_root(&rv(&[1, 0, 0])));
        assert!(!c.is_positive_real_root(&rv(&[1, 1, 1])));
        assert!(!c.is_positive_real_root(&rv(&[0, 0, 0])));
        let a2 = CartanSpec::new(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert!(a2.is_positive_real_root(&rv(&[1, 1])));
        assert!(!a2.is_positive_real_root(&rv(&[1, 2])));
    }

    #[test]
    fn words_validate() {
        assert!(Word::parse("1221").is_err());
        assert!(Word::parse("12a").is_err());
        assert_eq!(Word::parse("2312").unwrap().to_string(), "2312");
        assert_eq!(Word::all_of_length(3, 6).len(), 96);
        assert_eq!(Word::all_up_to(3, 3).len(), 3 + 6 + 12);
        assert!(Word::parse("14").unwrap().check_rank(3).is_err());
    }

    #[test]
    fn serialization_uses_strings() {
        let v = rv(&[1662490, 4352663, 11395212]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["1662490","4352663","11395212"]"#);
        let back: RootVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn cartan_validation() {
        assert!(CartanSpec::new(&[vec![2, -1], vec![-2, 2]]).is_err());
        assert!(CartanSpec::new(&[vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanSpec::new(&[vec![1, 0], vec![0, 2]]).is_err());
        let c = CartanSpec::from_multiplicities(&[vec![0, 2], vec![0, 0]]).unwrap();
        assert_eq!(c.entry(0, 1), -2);
    }
}
