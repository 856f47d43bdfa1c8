//! Exchange matrices, matrix mutation and the acyclic-prefix decomposition.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_lattice::{CartanSpec, Word};

/// Skew-symmetric integer matrix `B`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<BigInt>,
}

impl ExchangeMatrix {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        ExchangeMatrix::from_big_rows(big)
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, found: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != -&rows[j][i] {
                    return Err(Error::ExchangeMatrix(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
                }
            }
        }
        Ok(ExchangeMatrix { n, b: rows.into_iter().flatten().collect() })
    }

    /// The 2-complete seed `[[0,2,2],[-2,0,2],[-2,-2,0]]`: vertex 1 a source, vertex 3 a sink.
    pub fn two_complete() -> Self {
        ExchangeMatrix::new(&[vec![0, 2, 2], vec![-2, 0, 2], vec![-2, -2, 0]]).expect("skew-symmetric")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Entry `b_ij` with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.b[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.b.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Arrow count `c_ij = |b_ij|`.
    pub fn arrows(&self, i: usize, j: usize) -> BigInt {
        self.get(i, j).abs()
    }

    /// Matrix mutation at the 1-based vertex `k`.
    pub fn mutate(&self, k: u8) -> Result<ExchangeMatrix> {
        if k == 0 || k as usize > self.n {
            return Err(Error::LetterOutOfRange { letter: k, rank: self.n });
        }
        let k = k as usize - 1;
        let n = self.n;
        let mut out = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                let idx = i * n + j;
                if i == k || j == k {
                    out[idx] = -self.get(i, j);
                    continue;
                }
                let bik = self.get(i, k);
                let bkj = self.get(k, j);
                let prod = bik * bkj;
                if prod.is_positive() {
                    if bik.is_positive() {
                        out[idx] += prod;
                    } else {
                        out[idx] -= prod;
                    }
                }
            }
        }
        Ok(ExchangeMatrix { n, b: out })
    }

    /// Mutates along a word, leftmost letter first.
    pub fn mutate_word(&self, w: &Word) -> Result<ExchangeMatrix> {
        w.letters().iter().try_fold(self.clone(), |m, &k| m.mutate(k))
    }

    /// True when the quiver `i → j` for `b_ij > 0` has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n;
        let mut indegree: Vec<usize> =
            (0..n).map(|j| (0..n).filter(|&i| self.get(i, j).is_positive()).count()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&j| indegree[j] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for j in 0..n {
                if self.get(v, j).is_positive() {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        seen == n
    }

    /// The symmetric Cartan matrix `a_ij = -|b_ij|`.
    pub fn cartan(&self) -> Result<CartanSpec> {
        let rows: Vec<Vec<i64>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        if i == j {
                            Ok(2)
                        } else {
                            self.arrows(i, j).to_i64().map(|v| -v).ok_or(Error::Overflow("Cartan entry"))
                        }
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        CartanSpec::new(&rows)
    }

    /// Rank 3, at least two arrows between every pair, 1 a source and 3 a sink.
    pub fn is_two_complete_source_sink(&self) -> bool {
        let two = BigInt::from(2);
        self.n == 3
            && (0..3).all(|i| (0..3).all(|j| i == j || self.arrows(i, j) >= two))
            && self.get(0, 1).is_positive()
            && self.get(0, 2).is_positive()
            && self.get(1, 2).is_positive()
    }

    /// Largest absolute entry.
    pub fn max_entry(&self) -> BigInt {
        self.b.iter().map(|v| v.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .b
            .chunks(self.n)
            .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for ExchangeMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = self
            .b
            .chunks(self.n)
            .map(|r| {
                r.iter()
                    .map(|v| match v.to_i64() {
                        Some(x) => serde_json::Value::from(x),
                        None => serde_json::Value::from(v.to_string()),
                    })
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExchangeMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<serde_json::Value>>::deserialize(d)?;
        let big = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| match v {
                        serde_json::Value::Number(n) => n.to_string().parse::<BigInt>().map_err(D::Error::custom),
                        serde_json::Value::String(s) => s.parse::<BigInt>().map_err(D::Error::custom),
                        other => Err(D::Error::custom(format!("bad matrix entry {other}"))),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ExchangeMatrix::from_big_rows(big).map_err(D::Error::custom)
    }
}

/// Which of the seven cases a word falls into, by comparing `ℓ`, `δ` and `ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseLabel(pub u8);

/// The split `ŵ = 𝔴·𝔳` at the longest acyclic prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub prefix: Word,
    pub tail: Word,
    pub rho: usize,
    pub delta: usize,
    pub case_label: CaseLabel,
}

/// Length of the longest prefix of `w` lying in `𝒞₁ ∪ 𝒞₃`, i.e. a prefix
/// of `123123…` or of `321321…`.
pub fn pattern_rho(w: &Word) -> usize {
    let run = |start: [u8; 3]| w.letters().iter().enumerate().take_while(|(i, &l)| l == start[i % 3]).count();
    run([1, 2, 3]).max(run([3, 2, 1]))
}

/// The two-letter-run bound `δ` and the case label for a word with acyclic prefix length `rho`.
pub fn delta(w: &Word, rho: usize) -> Result<(usize, CaseLabel)> {
    let l = w.letters();
    let len = l.len();
    if len == 0 {
        return Err(Error::EmptyWord);
    }
    let q = rho.saturating_sub(1).max(1);
    let mut d = len;
    if len >= 2 {
        d = q;
        let mut letters = std::collections::BTreeSet::new();
        for (p, &letter) in l.iter().enumerate().skip(q - 1) {
            letters.insert(letter);
            if letters.len() > 2 {
                break;
            }
            if p + 1 > q {
                d = p + 1;
            }
        }
    }
    let label = if len == d {
        if d == rho {
            1
        } else if d == rho + 1 {
            2
        } else {
            3
        }
    } else {
        match len - d {
            1 => 4,
            2 => 5,
            3 => 6,
            _ => 7,
        }
    };
    Ok((d, CaseLabel(label)))
}

/// Splits a nonempty word at its longest acyclic prefix, walking matrices
/// from `b0`. For the 2-complete seed the answer is cross-checked against the
/// `𝒞₁ ∪ 𝒞₃` pattern.
pub fn decompose(b0: &ExchangeMatrix, w: &Word) -> Result<Decomposition> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    w.check_rank(b0.rank())?;
    let mut m = b0.clone();
    let mut rho = 0;
    for (p, &k) in w.letters().iter().enumerate() {
        m = m.mutate(k)?;
        if m.is_acyclic() {
            rho = p + 1;
        }
    }
    if b0.is_two_complete_source_sink() {
        let pattern = pattern_rho(w);
        if pattern != rho {
            return Err(Error::DecompositionMismatch { word: w.to_string(), matrix: rho, pattern });
        }
    }
    let (delta, case_label) = delta(w, rho)?;
    Ok(Decomposition { prefix: w.prefix(rho), tail: w.suffix(rho), rho, delta, case_label })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[[i64; 3]]) -> ExchangeMatrix {
        ExchangeMatrix::new(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn mutation_examples() {
        let b0 = ExchangeMatrix::two_complete();
        assert_eq!(b0.mutate(3).unwrap(), m(&[[0, 2, -2], [-2, 0, -2], [2, 2, 0]]));
        assert_eq!(b0.mutate(2).unwrap(), m(&[[0, -2, 6], [2, 0, -2], [-6, 2, 0]]));
        assert_eq!(b0.mutate(2).unwrap().mutate(2).unwrap(), b0);
        assert!(b0.mutate(4).is_err());
    }

    #[test]
    fn acyclicity() {
        let b0 = ExchangeMatrix::two_complete();
        assert!(b0.is_acyclic());
        assert!(!b0.mutate(2).unwrap().is_acyclic());
        let w = Word::parse("321321321321").unwrap();
        assert_eq!(b0.mutate_word(&w).unwrap(), b0);
    }

    #[test]
    fn decompositions() {
        let b0 = ExchangeMatrix::two_complete();
        let d = decompose(&b0, &Word::parse("3213213213212312").unwrap()).unwrap();
        assert_eq!((d.prefix.to_string(), d.tail.to_string(), d.rho), ("321321321321".into(), "2312".into(), 12));
        let d = decompose(&b0, &Word::parse("21").unwrap()).unwrap();
        assert_eq!((d.prefix.len(), d.tail.to_string(), d.rho), (0, "21".into(), 0));
        let d = decompose(&b0, &Word::parse("12312").unwrap()).unwrap();
        assert_eq!((d.prefix.to_string(), d.tail.len(), d.rho), ("12312".into(), 0, 5));
    }

    #[test]
    fn delta_examples() {
        let w = Word::parse("321321321321").unwrap();
        assert_eq!(delta(&w, 12).unwrap(), (12, CaseLabel(1)));
        assert_eq!(delta(&Word::parse("21").unwrap(), 0).unwrap(), (2, CaseLabel(3)));
        assert_eq!(delta(&Word::parse("3213213213212").unwrap(), 12).unwrap(), (13, CaseLabel(2)));
        assert_eq!(delta(&Word::parse("2").unwrap(), 0).unwrap(), (1, CaseLabel(2)));
        assert_eq!(delta(&Word::parse("2123").unwrap(), 0).unwrap(), (3, CaseLabel(4)));
    }

    #[test]
    fn pattern_prefixes() {
        assert_eq!(pattern_rho(&Word::parse("1231").unwrap()), 4);
        assert_eq!(pattern_rho(&Word::parse("3213").unwrap()), 4);
        assert_eq!(pattern_rho(&Word::parse("2131").unwrap()), 0);
        assert_eq!(pattern_rho(&Word::parse("13").unwrap()), 1);
    }

    #[test]
    fn cartan_from_matrix() {
        let c = ExchangeMatrix::two_complete().cartan().unwrap();
        assert_eq!(c, CartanSpec::uniform_rank3(2));
    }

    #[test]
    fn json_round_trip() {
        let b0 = ExchangeMatrix::two_complete();
        let text = serde_json::to_string(&b0).unwrap();
        let back: ExchangeMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, b0);
        let plain: ExchangeMatrix = serde_json::from_str("[[0,2,2],[-2,0,2],[-2,-2,0]]").unwrap();
        assert_eq!(plain, b0);
    }
}
