//! Exact cluster mutation over sparse Laurent polynomials.
//!
//! This is the slow ground truth for denominator vectors. Every exchange is
//! carried out by multiplication and exact long division, so a failed
//! division would expose a bug rather than being rounded away. Polynomials
//! that outgrow the term budget stop the run with a depth-limit error.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::ExchangeMatrix;
use crate::root_lattice::{RootVector, Word};

/// Default cap on the number of terms in any intermediate polynomial.
pub const DEFAULT_TERM_BUDGET: usize = 5_000_000;

/// A single product of polynomials may touch at most this many term pairs per budgeted term.
const WORK_PER_TERM: usize = 64;

/// Exponent vector of a Laurent monomial.
pub type Exponent<const N: usize> = [i32; N];

/// Sparse Laurent polynomial with big-integer coefficients.
///
/// Terms are kept in lexicographic exponent order and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<const N: usize> {
    terms: BTreeMap<Exponent<N>, BigInt>,
}

/// Limits applied to every polynomial operation in a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_terms: DEFAULT_TERM_BUDGET }
    }
}

impl Budget {
    pub fn new(max_terms: usize) -> Self {
        Budget { max_terms }
    }

    fn max_work(&self) -> usize {
        self.max_terms.saturating_mul(WORK_PER_TERM)
    }
}

/// Internal signal that a polynomial outgrew its budget.
#[derive(Debug)]
pub enum PolyError {
    Budget,
    Inexact(String),
    Overflow,
}

type PolyResult<T> = std::result::Result<T, PolyError>;

fn add_exp<const N: usize>(a: &Exponent<N>, b: &Exponent<N>) -> PolyResult<Exponent<N>> {
    let mut out = [0i32; N];
    for i in 0..N {
        out[i] = a[i].checked_add(b[i]).ok_or(PolyError::Overflow)?;
    }
    Ok(out)
}

fn sub_exp<const N: usize>(a: &Exponent<N>, b: &Exponent<N>) -> PolyResult<Exponent<N>> {
    let mut out = [0i32; N];
    for i in 0..N {
        out[i] = a[i].checked_sub(b[i]).ok_or(PolyError::Overflow)?;
    }
    Ok(out)
}

impl<const N: usize> LaurentPoly<N> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial([0; N], BigInt::one())
    }

    pub fn monomial(exp: Exponent<N>, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// The initial variable `x_i`, with `i` 1-based.
    pub fn variable(i: usize) -> Self {
        let mut e = [0; N];
        e[i - 1] = 1;
        Self::monomial(e, BigInt::one())
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (BigInt, Exponent<N>)>>(terms: I) -> Self {
        let mut map: BTreeMap<Exponent<N>, BigInt> = BTreeMap::new();
        for (c, e) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: map }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent<N>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent<N>) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }

    /// Multiplies by `c·x^e`.
    pub fn mul_monomial(&self, e: &Exponent<N>, c: &BigInt) -> PolyResult<Self> {
        let mut terms = BTreeMap::new();
        for (f, d) in &self.terms {
            terms.insert(add_exp(f, e)?, d * c);
        }
        Ok(LaurentPoly { terms })
    }

    /// Product within the term and work budget.
    pub fn mul(&self, other: &Self, budget: Budget) -> PolyResult<Self> {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (e, c) = small.terms.iter().next().expect("one term");
            return large.mul_monomial(e, c);
        }
        if small.len().saturating_mul(large.len()) > budget.max_work() {
            return Err(PolyError::Budget);
        }
        let mut acc: HashMap<Exponent<N>, BigInt> = HashMap::with_capacity(large.len() * 2);
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                let e = add_exp(e1, e2)?;
                match acc.get_mut(&e) {
                    Some(v) => *v += c1 * c2,
                    None => {
                        acc.insert(e, c1 * c2);
                    }
                }
            }
            if acc.len() > budget.max_terms {
                return Err(PolyError::Budget);
            }
        }
        let terms: BTreeMap<_, _> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly { terms })
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32, budget: Budget) -> PolyResult<Self> {
        let mut result = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base, budget)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, budget)?;
            }
        }
        Ok(result)
    }

    fn min_max(&self) -> Option<(Exponent<N>, Exponent<N>)> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for e in it {
            for i in 0..N {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / divisor`; a nonzero remainder is an error.
    ///
    /// Quotient exponents are confined to the box forced by Newton polytopes
    /// (`min(P) - min(D)` to `max(P) - max(D)`), which makes the lexicographic
    /// long division terminate on inexact input.
    pub fn div_exact(&self, divisor: &Self, budget: Budget) -> PolyResult<Self> {
        if divisor.is_empty() {
            return Err(PolyError::Inexact("division by zero".into()));
        }
        if self.is_empty() {
            return Ok(Self::zero());
        }
        if divisor.len() == 1 {
            let (e, c) = divisor.terms.iter().next().expect("one term");
            let mut terms = BTreeMap::new();
            for (f, d) in &self.terms {
                let (q, r) = d.div_rem(c);
                if !r.is_zero() {
                    return Err(PolyError::Inexact(format!("coefficient {d} not divisible by {c}")));
                }
                terms.insert(sub_exp(f, e)?, q);
            }
            return Ok(LaurentPoly { terms });
        }
        let (plo, phi) = self.min_max().expect("nonempty");
        let (dlo, dhi) = divisor.min_max().expect("nonempty");
        let qlo = sub_exp(&plo, &dlo)?;
        let qhi = sub_exp(&phi, &dhi)?;
        if (0..N).any(|i| qlo[i] > qhi[i]) {
            return Err(PolyError::Inexact("Newton boxes incompatible".into()));
        }
        let (lead_e, lead_c) = divisor.terms.iter().next_back().map(|(e, c)| (*e, c.clone())).expect("nonempty");
        let rest: Vec<(Exponent<N>, BigInt)> =
            divisor.terms.iter().filter(|(e, _)| **e != lead_e).map(|(e, c)| (*e, c.clone())).collect();
        let mut rem = self.terms.clone();
        let mut quotient: BTreeMap<Exponent<N>, BigInt> = BTreeMap::new();
        while let Some((e, c)) = rem.pop_last() {
            let qe = sub_exp(&e, &lead_e)?;
            if (0..N).any(|i| qe[i] < qlo[i] || qe[i] > qhi[i]) {
                return Err(PolyError::Inexact(format!("quotient exponent {qe:?} leaves the Newton box")));
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(PolyError::Inexact(format!("coefficient {c} not divisible by {lead_c}")));
            }
            for (de, dc) in &rest {
                let target = add_exp(&qe, de)?;
                let delta = &qc * dc;
                match rem.get_mut(&target) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&target);
                        }
                    }
                    None => {
                        rem.insert(target, -delta);
                    }
                }
            }
            quotient.insert(qe, qc);
            if rem.len() > budget.max_terms || quotient.len() > budget.max_terms {
                return Err(PolyError::Budget);
            }
        }
        Ok(LaurentPoly { terms: quotient })
    }

    /// Denominator vector: `m_i = -(least exponent of x_i)`.
    pub fn denominator_vector(&self) -> Result<RootVector> {
        let (lo, _) = self.min_max().ok_or_else(|| Error::Invariant("zero polynomial has no denominator".into()))?;
        Ok(RootVector(lo.iter().map(|&e| BigInt::from(-(e as i64))).collect()))
    }

    /// The numerator `x^d · p` for the denominator vector `d`: a polynomial
    /// with no monomial factor.
    pub fn numerator(&self) -> Self {
        match self.min_max() {
            None => Self::zero(),
            Some((lo, _)) => {
                let shift: Exponent<N> = std::array::from_fn(|i| -lo[i]);
                self.mul_monomial(&shift, &BigInt::one()).expect("shift stays in range")
            }
        }
    }

    /// Lines `coeff e1 e2 …`, sorted lexicographically by exponent.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let _ = write!(out, "{c}");
            for x in e {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the format produced by [`LaurentPoly::dump`].
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let mut parts = line.split_whitespace();
            let c: BigInt = parts
                .next()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| Error::Invariant(format!("bad dump line {line:?}")))?;
            let exps: Vec<i32> = parts.map(|p| p.parse::<i32>()).collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Invariant(format!("bad dump line {line:?}")))?;
            let e: Exponent<N> = exps
                .try_into()
                .map_err(|_| Error::Invariant(format!("dump line {line:?} has the wrong arity")))?;
            terms.push((c, e));
        }
        Ok(Self::from_terms(terms))
    }
}

/// A labeled seed: cluster variables in the initial variables plus the exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed<const N: usize> {
    pub cluster: [LaurentPoly<N>; N],
    pub matrix: ExchangeMatrix,
}

/// Outcome of mutating along a word.
#[derive(Clone, Debug)]
pub struct OracleRun<const N: usize> {
    pub seed: Seed<N>,
    pub dvectors: [RootVector; N],
}

impl<const N: usize> Seed<N> {
    /// The initial seed `((x_1, …, x_N), B)`.
    pub fn initial(matrix: ExchangeMatrix) -> Result<Self> {
        if matrix.rank() != N {
            return Err(Error::Dimension { expected: N, found: matrix.rank() });
        }
        Ok(Seed { cluster: std::array::from_fn(|i| LaurentPoly::variable(i + 1)), matrix })
    }

    /// One exchange at the 1-based vertex `k`.
    pub fn mutate(&self, k: u8, budget: Budget) -> Result<Self> {
        let kk = k as usize;
        if kk == 0 || kk > N {
            return Err(Error::LetterOutOfRange { letter: k, rank: N });
        }
        let budget_err = |_| Error::Budget { budget: budget.max_terms, completed: String::new() };
        let mut plus = LaurentPoly::one();
        let mut minus = LaurentPoly::one();
        for i in 0..N {
            let b = self.matrix.get(i, kk - 1);
            if b.is_zero() {
                continue;
            }
            let power = b.abs().to_u32().ok_or(Error::Overflow("exchange exponent"))?;
            let factor = self.cluster[i].pow(power, budget).map_err(|e| poly_error(e, budget))?;
            if b.is_positive() {
                plus = plus.mul(&factor, budget).map_err(|e| poly_error(e, budget))?;
            } else {
                minus = minus.mul(&factor, budget).map_err(|e| poly_error(e, budget))?;
            }
        }
        let numerator = plus.add(&minus);
        if numerator.len() > budget.max_terms {
            return Err(budget_err(()));
        }
        let fresh = numerator.div_exact(&self.cluster[kk - 1], budget).map_err(|e| poly_error(e, budget))?;
        let num = fresh.numerator();
        let (lo, _) = num.min_max().ok_or_else(|| Error::InexactDivision("zero cluster variable".into()))?;
        if lo.iter().any(|&e| e != 0) {
            return Err(Error::Invariant("numerator carries a monomial factor".into()));
        }
        let mut cluster = self.cluster.clone();
        cluster[kk - 1] = fresh;
        Ok(Seed { cluster, matrix: self.matrix.mutate(k)? })
    }

    /// Denominator vectors `(β_1, …, β_N)` of the current cluster.
    pub fn dvectors(&self) -> Result<[RootVector; N]> {
        let v: Vec<RootVector> = self.cluster.iter().map(|p| p.denominator_vector()).collect::<Result<_>>()?;
        Ok(v.try_into().expect("length N"))
    }

    /// Mutates along `w`, leftmost letter first. On budget exhaustion the
    /// error names the deepest prefix that completed.
    pub fn run_word(&self, w: &Word, budget: Budget) -> Result<OracleRun<N>> {
        w.check_rank(N)?;
        let mut seed = self.clone();
        for (p, &k) in w.letters().iter().enumerate() {
            seed = match seed.mutate(k, budget) {
                Ok(s) => s,
                Err(Error::Budget { budget, .. }) => {
                    return Err(Error::Budget { budget, completed: w.prefix(p).to_string() });
                }
                Err(e) => return Err(e),
            };
        }
        let dvectors = seed.dvectors()?;
        Ok(OracleRun { seed, dvectors })
    }
}

fn poly_error(e: PolyError, budget: Budget) -> Error {
    match e {
        PolyError::Budget => Error::Budget { budget: budget.max_terms, completed: String::new() },
        PolyError::Inexact(msg) => Error::InexactDivision(msg),
        PolyError::Overflow => Error::Overflow("Laurent exponent"),
    }
}

/// The denominator vector of the variable produced by the last mutation of `w`.
pub fn last_dvector(b0: &ExchangeMatrix, w: &Word, budget: Budget) -> Result<RootVector> {
    let last = w.last().ok_or(Error::EmptyWord)?;
    let run = Seed::<3>::initial(b0.clone())?.run_word(w, budget)?;
    Ok(run.dvectors[last as usize - 1].clone())
}

/// Laurent polynomial in one variable, stored densely from its least exponent.
///
/// It holds the image of a cluster variable after every initial variable but
/// one is set to 1. Cluster variables have positive coefficients, so the
/// specialization sums positive integers and cannot cancel: the least
/// exponent survives intact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projected {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Projected {
    fn monomial(e: i64) -> Self {
        Projected { low: e, coeffs: vec![BigInt::one()] }
    }

    fn one() -> Self {
        Self::monomial(0)
    }

    fn trimmed(mut low: i64, mut coeffs: Vec<BigInt>) -> Self {
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Projected { low: 0, coeffs: Vec::new() };
        }
        coeffs.drain(..lead_zeros);
        low += lead_zeros as i64;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Projected { low, coeffs }
    }

    pub fn least_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.len() as i64).max(other.low + other.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (high - low) as usize];
        for p in [self, other] {
            for (i, c) in p.coeffs.iter().enumerate() {
                coeffs[(p.low - low) as usize + i] += c;
            }
        }
        Self::trimmed(low, coeffs)
    }

    fn mul(&self, other: &Self, budget: Budget) -> PolyResult<Self> {
        if self.is_empty() || other.is_empty() {
            return Ok(Projected { low: 0, coeffs: Vec::new() });
        }
        let len = self.len() + other.len() - 1;
        if len > budget.max_terms || self.len().saturating_mul(other.len()) > budget.max_work() {
            return Err(PolyError::Budget);
        }
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self::trimmed(self.low + other.low, coeffs))
    }

    fn pow(&self, mut k: u32, budget: Budget) -> PolyResult<Self> {
        let mut result = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base, budget)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, budget)?;
            }
        }
        Ok(result)
    }

    fn div_exact(&self, divisor: &Self) -> PolyResult<Self> {
        if divisor.is_empty() {
            return Err(PolyError::Inexact("division by zero".into()));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        if self.len() < divisor.len() {
            return Err(PolyError::Inexact("divisor is wider than dividend".into()));
        }
        let q_len = self.len() - divisor.len() + 1;
        let lead = divisor.coeffs.last().expect("nonempty");
        let mut rem = self.coeffs.clone();
        let mut quotient = vec![BigInt::zero(); q_len];
        for qi in (0..q_len).rev() {
            let top = qi + divisor.len() - 1;
            let (q, r) = rem[top].div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::Inexact(format!("coefficient {} not divisible by {lead}", rem[top])));
            }
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[qi + j] -= &q * d;
                }
            }
            quotient[qi] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::Inexact("nonzero remainder".into()));
        }
        Ok(Self::trimmed(self.low - divisor.low, quotient))
    }
}

/// A seed whose cluster is projected onto a single initial variable.
#[derive(Clone, Debug)]
pub struct ProjectedSeed {
    pub variable: usize,
    pub cluster: Vec<Projected>,
    pub matrix: ExchangeMatrix,
}

impl ProjectedSeed {
    /// The initial seed with every initial variable except `x_variable` (1-based) set to 1.
    pub fn initial(matrix: ExchangeMatrix, variable: usize) -> Result<Self> {
        let n = matrix.rank();
        if variable == 0 || variable > n {
            return Err(Error::Dimension { expected: n, found: variable });
        }
        let cluster = (1..=n).map(|i| if i == variable { Projected::monomial(1) } else { Projected::one() }).collect();
        Ok(ProjectedSeed { variable, cluster, matrix })
    }

    pub fn mutate(&self, k: u8, budget: Budget) -> Result<Self> {
        let n = self.matrix.rank();
        let kk = k as usize;
        if kk == 0 || kk > n {
            return Err(Error::LetterOutOfRange { letter: k, rank: n });
        }
        let mut plus = Projected::one();
        let mut minus = Projected::one();
        for i in 0..n {
            let b = self.matrix.get(i, kk - 1);
            if b.is_zero() {
                continue;
            }
            let power = b.abs().to_u32().ok_or(Error::Overflow("exchange exponent"))?;
            let factor = self.cluster[i].pow(power, budget).map_err(|e| poly_error(e, budget))?;
            let side = if b.is_positive() { &mut plus } else { &mut minus };
            *side = side.mul(&factor, budget).map_err(|e| poly_error(e, budget))?;
        }
        let fresh = plus.add(&minus).div_exact(&self.cluster[kk - 1]).map_err(|e| poly_error(e, budget))?;
        if !fresh.is_positive() {
            return Err(Error::Invariant(format!("projected cluster variable has a negative coefficient after mutating at {k}")));
        }
        let mut cluster = self.cluster.clone();
        cluster[kk - 1] = fresh;
        Ok(ProjectedSeed { variable: self.variable, cluster, matrix: self.matrix.mutate(k)? })
    }

    /// The `variable`-th component of every denominator vector in the cluster.
    pub fn dvector_components(&self) -> Result<Vec<BigInt>> {
        self.cluster
            .iter()
            .map(|p| {
                p.least_exponent()
                    .map(|e| BigInt::from(-e))
                    .ok_or_else(|| Error::Invariant("zero cluster variable".into()))
            })
            .collect()
    }
}

/// How the oracle expands cluster variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    /// Sparse expansion in all initial variables.
    Full,
    /// One univariate expansion per initial variable, the others set to 1.
    Projected,
}

impl fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMethod::Full => "full",
            OracleMethod::Projected => "projected",
        })
    }
}

impl FromStr for OracleMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(OracleMethod::Full),
            "projected" => Ok(OracleMethod::Projected),
            other => Err(Error::Config(format!("unknown oracle method {other:?}"))),
        }
    }
}

/// Method and budget of an oracle run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub method: OracleMethod,
    pub budget: Budget,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { method: OracleMethod::Full, budget: Budget::default() }
    }
}

fn projected_last(b0: &ExchangeMatrix, w: &Word, budget: Budget) -> Result<RootVector> {
    let last = w.last().ok_or(Error::EmptyWord)?;
    w.check_rank(b0.rank())?;
    let mut coords = Vec::with_capacity(b0.rank());
    for variable in 1..=b0.rank() {
        let mut seed = ProjectedSeed::initial(b0.clone(), variable)?;
        for (p, &k) in w.letters().iter().enumerate() {
            seed = match seed.mutate(k, budget) {
                Ok(s) => s,
                Err(Error::Budget { budget, .. }) => {
                    return Err(Error::Budget { budget, completed: w.prefix(p).to_string() });
                }
                Err(e) => return Err(e),
            };
        }
        coords.push(seed.dvector_components()?.swap_remove(last as usize - 1));
    }
    Ok(RootVector(coords))
}

/// The denominator vector of the last-mutated variable, by the chosen method.
pub fn oracle_last_dvector(b0: &ExchangeMatrix, w: &Word, config: OracleConfig) -> Result<RootVector> {
    match config.method {
        OracleMethod::Full => last_dvector(b0, w, config.budget),
        OracleMethod::Projected => projected_last(b0, w, config.budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly<3>;

    fn poly(terms: &[(i64, [i32; 3])]) -> P {
        P::from_terms(terms.iter().map(|(c, e)| (BigInt::from(*c), *e)))
    }

    fn b0() -> ExchangeMatrix {
        ExchangeMatrix::two_complete()
    }

    #[test]
    fn first_mutation_at_three() {
        let s = Seed::<3>::initial(b0()).unwrap().mutate(3, Budget::default()).unwrap();
        assert_eq!(s.cluster[2], poly(&[(1, [2, 2, -1]), (1, [0, 0, -1])]));
    }

    #[test]
    fn exact_division_round_trip() {
        let a = poly(&[(1, [1, 0, 0]), (3, [0, 2, -1]), (-2, [0, 0, 4])]);
        let b = poly(&[(2, [0, 1, 0]), (1, [-1, 0, 0])]);
        let prod = a.mul(&b, Budget::default()).unwrap();
        assert_eq!(prod.div_exact(&b, Budget::default()).unwrap(), a);
        assert_eq!(prod.div_exact(&a, Budget::default()).unwrap(), b);
        let bumped = prod.add(&P::one());
        assert!(matches!(bumped.div_exact(&b, Budget::default()), Err(PolyError::Inexact(_))));
    }

    #[test]
    fn dvector_examples() {
        let budget = Budget::default();
        let s = Seed::<3>::initial(b0()).unwrap();
        assert_eq!(s.mutate(2, budget).unwrap().cluster[1].denominator_vector().unwrap(), RootVector::from_i64(&[0, 1, 0]));
        assert_eq!(s.cluster[0].denominator_vector().unwrap(), RootVector::from_i64(&[-1, 0, 0]));
        let w = |t: &str| Word::parse(t).unwrap();
        assert_eq!(last_dvector(&b0(), &w("21"), budget).unwrap(), RootVector::from_i64(&[1, 2, 0]));
        assert_eq!(last_dvector(&b0(), &w("23"), budget).unwrap(), RootVector::from_i64(&[0, 2, 1]));
        assert_eq!(last_dvector(&b0(), &w("121"), budget).unwrap(), RootVector::from_i64(&[3, 2, 0]));
        assert_eq!(last_dvector(&b0(), &w("12"), budget).unwrap(), RootVector::from_i64(&[2, 1, 0]));
    }

    #[test]
    fn involution() {
        let budget = Budget::default();
        let s = Seed::<3>::initial(b0()).unwrap().run_word(&Word::parse("231").unwrap(), budget).unwrap().seed;
        for k in 1..=3 {
            assert_eq!(s.mutate(k, budget).unwrap().mutate(k, budget).unwrap(), s);
        }
    }

    #[test]
    fn budget_is_reported() {
        let err = Seed::<3>::initial(b0()).unwrap().run_word(&Word::parse("213213").unwrap(), Budget::new(200));
        match err {
            Err(Error::Budget { budget, completed }) => {
                assert_eq!(budget, 200);
                assert!(completed.len() < 6);
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn dump_round_trip() {
        let p = poly(&[(1, [2, 2, -1]), (1, [0, 0, -1])]);
        assert_eq!(p.dump(), "1 0 0 -1\n1 2 2 -1\n");
        assert_eq!(P::parse_dump(&p.dump()).unwrap(), p);
    }

    #[test]
    fn projection_matches_full_expansion() {
        let full = OracleConfig::default();
        let projected = OracleConfig { method: OracleMethod::Projected, ..full };
        for w in Word::all_up_to(3, 3).into_iter().filter(|w| !w.is_empty()) {
            assert_eq!(oracle_last_dvector(&b0(), &w, projected).unwrap(), oracle_last_dvector(&b0(), &w, full).unwrap(), "{w}");
        }
    }

    #[test]
    fn projected_division() {
        let p = Projected::trimmed(-1, vec![1.into(), 2.into(), 1.into()]);
        let d = Projected::trimmed(0, vec![1.into(), 1.into()]);
        assert_eq!(p.div_exact(&d).unwrap(), Projected::trimmed(-1, vec![1.into(), 1.into()]));
        assert!(p.div_exact(&Projected::trimmed(0, vec![1.into(), 2.into()])).is_err());
        assert_eq!("projected".parse::<OracleMethod>().unwrap(), OracleMethod::Projected);
    }
}
