//! The fast path from a mutation word to a denominator vector.
//!
//! A word `ŵ` splits as `𝔴·𝔳` at its longest acyclic prefix. The tail `𝔳`
//! drives a triple of planar lattice vectors; the vector belonging to the
//! last letter is a straight segment whose grid-crossing word is a
//! reflection, and the root of that reflection, moved by `s_𝔴`, is `ψ(ŵ)`.
//! A componentwise-max recurrence gives a third, independent answer, and the
//! inequality monitor checks the dominance relations that make that
//! recurrence collapse to reflections.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent_oracle::{last_dvector, oracle_last_dvector, Budget, OracleConfig};
use crate::quiver::{decompose, CaseLabel, Decomposition, ExchangeMatrix};
use crate::root_lattice::{CartanSpec, RootVector, Word};

/// Which base triple is used for words starting with letter 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrientationMode {
    /// `V(2) = (⟨0,1⟩, ⟨1,1⟩, ⟨1,0⟩)`.
    PaperVerbatim,
    /// `V(2) = (⟨1,0⟩, ⟨1,1⟩, ⟨0,1⟩)`.
    Corrected,
}

impl OrientationMode {
    pub const ALL: [OrientationMode; 2] = [OrientationMode::Corrected, OrientationMode::PaperVerbatim];
}

impl fmt::Display for OrientationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrientationMode::PaperVerbatim => "paper-verbatim",
            OrientationMode::Corrected => "corrected",
        })
    }
}

impl FromStr for OrientationMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-verbatim" | "verbatim" | "paper" => Ok(OrientationMode::PaperVerbatim),
            "corrected" => Ok(OrientationMode::Corrected),
            other => Err(Error::Config(format!("unknown orientation mode {other:?}"))),
        }
    }
}

/// A planar lattice vector `⟨b, c⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub b: i64,
    pub c: i64,
}

impl Vec2 {
    pub const fn new(b: i64, c: i64) -> Self {
        Vec2 { b, c }
    }

    pub fn checked_add(self, o: Vec2) -> Result<Vec2> {
        Ok(Vec2 {
            b: self.b.checked_add(o.b).ok_or(Error::Overflow("vector triple"))?,
            c: self.c.checked_add(o.c).ok_or(Error::Overflow("vector triple"))?,
        })
    }

    pub fn det(self, o: Vec2) -> i128 {
        self.b as i128 * o.c as i128 - self.c as i128 * o.b as i128
    }

    pub fn norm_sq(self) -> i128 {
        self.b as i128 * self.b as i128 + self.c as i128 * self.c as i128
    }

    pub fn is_primitive(self) -> bool {
        self.b.unsigned_abs().gcd(&self.c.unsigned_abs()) == 1
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;

    fn neg(self) -> Vec2 {
        Vec2 { b: -self.b, c: -self.c }
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.b, self.c)
    }
}

/// `V(𝔴) = (v⃗_1, v⃗_2, v⃗_3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VectorTriple(pub [Vec2; 3]);

impl VectorTriple {
    /// The vector attached to the 1-based letter `p`.
    pub fn at(&self, p: u8) -> Vec2 {
        self.0[p as usize - 1]
    }

    /// All three pairwise determinants are `±1`.
    pub fn is_unimodular(&self) -> bool {
        let [a, b, c] = self.0;
        [a.det(b), a.det(c), b.det(c)].iter().all(|d| d.abs() == 1)
    }

    /// One replacement step: the vector of `letter` becomes the sum of the other two.
    pub fn step(&self, letter: u8) -> Result<VectorTriple> {
        let [v1, v2, v3] = self.0;
        let next = match letter {
            1 => [v2.checked_add(v3)?, v2, v3],
            2 => [v1, v1.checked_add(v3)?, v3],
            3 => [v1, v2, v1.checked_add(v2)?],
            _ => return Err(Error::LetterOutOfRange { letter, rank: 3 }),
        };
        Ok(VectorTriple(next))
    }
}

impl fmt::Display for VectorTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// The starting triple for a tail beginning with `letter`.
pub fn base_triple(letter: u8, mode: OrientationMode) -> Result<VectorTriple> {
    let v = Vec2::new;
    Ok(VectorTriple(match (letter, mode) {
        (1, _) => [v(-1, 2), v(-1, 1), v(0, 1)],
        (2, OrientationMode::PaperVerbatim) => [v(0, 1), v(1, 1), v(1, 0)],
        (2, OrientationMode::Corrected) => [v(1, 0), v(1, 1), v(0, 1)],
        (3, _) => [v(1, 0), v(1, -1), v(2, -1)],
        _ => return Err(Error::LetterOutOfRange { letter, rank: 3 }),
    }))
}

/// Folds the replacement rules over `v` after the base triple of its first letter.
pub fn v_triple(v: &Word, mode: OrientationMode) -> Result<VectorTriple> {
    let letters = v.letters();
    let first = *letters.first().ok_or(Error::EmptyWord)?;
    let mut t = base_triple(first, mode)?;
    for &l in &letters[1..] {
        t = t.step(l)?;
        if !t.is_unimodular() {
            return Err(Error::Invariant(format!("triple {t} lost unimodularity on {v}")));
        }
    }
    Ok(t)
}

/// Letters met by the open segment from the origin to `(b, c)`: `1` for
/// horizontal lines, `2` for antidiagonals `x + y ∈ ℤ`, `3` for vertical lines.
pub fn segment_word(b: i64, c: i64) -> Result<Word> {
    let g = b.unsigned_abs().gcd(&c.unsigned_abs());
    if g != 1 {
        return Err(Error::NotCoprime(b, c));
    }
    match (b, c) {
        (1, 0) | (-1, 0) => return Word::new(vec![1]),
        (0, 1) | (0, -1) => return Word::new(vec![3]),
        (1, -1) | (-1, 1) => return Word::new(vec![2]),
        _ => {}
    }
    let s = b.checked_add(c).ok_or(Error::Overflow("segment"))?;
    let families: [(u8, u64); 3] = [(1, c.unsigned_abs()), (2, s.unsigned_abs()), (3, b.unsigned_abs())];
    let mut crossings: Vec<(u64, u64, u8)> = Vec::new();
    for (letter, m) in families {
        for k in 1..m {
            crossings.push((k, m, letter));
        }
    }
    let cmp = |x: &(u64, u64, u8), y: &(u64, u64, u8)| (x.0 as u128 * y.1 as u128).cmp(&(y.0 as u128 * x.1 as u128));
    crossings.sort_by(cmp);
    if crossings.windows(2).any(|w| cmp(&w[0], &w[1]) == Ordering::Equal) {
        return Err(Error::Invariant(format!("two crossings of ({b}, {c}) coincide")));
    }
    Word::new(crossings.into_iter().map(|t| t.2).collect())
}

/// Closed-form value of `φ(v)` when `v` has one of the six printed shapes.
pub fn lemma_phi(cartan: &CartanSpec, v: &Word) -> Option<RootVector> {
    let l = v.letters();
    let i = *l.first()?;
    if l.iter().any(|&x| !(1..=3).contains(&x)) {
        return None;
    }
    let others: Vec<u8> = (1..=3).filter(|&x| x != i).collect();
    let seen_j = l.iter().copied().find(|&x| x != i);
    let alternates = |prefix: &[u8], j: u8| prefix.iter().enumerate().all(|(t, &x)| x == if t % 2 == 0 { i } else { j });
    let pow = |a: u8, b: u8, n: usize| -> Vec<u8> { [a, b].repeat(n) };
    let eval = |letters: Vec<u8>, target: u8| cartan.word_on_simple(&letters, target).ok();

    let k_pos = match seen_j {
        None => None,
        Some(j) => l.iter().position(|&x| x != i && x != j),
    };
    match (seen_j, k_pos) {
        (None, _) => Some(RootVector::simple(cartan.rank(), i).ok()?),
        (Some(j), None) => {
            if !alternates(l, j) {
                return None;
            }
            let m = l.len();
            if m.is_multiple_of(2) {
                let n = m / 2;
                let mut w = pow(i, j, n - 1);
                w.push(i);
                eval(w, j)
            } else {
                eval(pow(i, j, m / 2), i)
            }
        }
        (Some(first_other), Some(p)) => {
            let k = l[p];
            let j = if p == 1 { *others.iter().find(|&&x| x != k)? } else { first_other };
            if !alternates(&l[..p], j) {
                return None;
            }
            let rest = &l[p + 1..];
            let n = (p - 1) / 2;
            let mut w = vec![i];
            if p % 2 == 1 {
                w.extend(pow(j, i, 2 * n));
            } else {
                w.extend(pow(j, i, 2 * n + 1));
            }
            match rest {
                [] => eval(w, k),
                [r] if *r == i => {
                    w.push(k);
                    w.extend(pow(i, j, if p % 2 == 1 { n } else { n + 1 }));
                    eval(w, i)
                }
                [r] if *r == j => {
                    w.push(k);
                    w.extend(pow(i, j, n));
                    w.push(i);
                    eval(w, j)
                }
                _ => None,
            }
        }
    }
}

/// One state of the componentwise-max recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalState {
    pub matrix: ExchangeMatrix,
    pub beta: [RootVector; 3],
}

impl TropicalState {
    pub fn initial(b0: &ExchangeMatrix) -> Self {
        let beta = std::array::from_fn(|i| RootVector::simple(3, i as u8 + 1).expect("rank 3").neg());
        TropicalState { matrix: b0.clone(), beta }
    }

    /// `d′_k = −d_k + max(Σ[b_ik]₊ d_i, Σ[−b_ik]₊ d_i)`.
    pub fn mutate(&self, k: u8) -> Result<TropicalState> {
        let kk = k as usize - 1;
        let mut plus = RootVector::zero(3);
        let mut minus = RootVector::zero(3);
        for i in 0..3 {
            let b = self.matrix.get(i, kk);
            if b.is_positive() {
                plus = plus.add(&self.beta[i].scale(b));
            } else if b.is_negative() {
                minus = minus.add(&self.beta[i].scale(&-b));
            }
        }
        let mut beta = self.beta.clone();
        beta[kk] = RootVector::max(&plus, &minus).sub(&self.beta[kk]);
        Ok(TropicalState { matrix: self.matrix.mutate(k)?, beta })
    }

    /// `c_pq` of the current matrix, 1-based.
    pub fn c(&self, p: u8, q: u8) -> BigInt {
        self.matrix.arrows(p as usize - 1, q as usize - 1)
    }

    pub fn b(&self, p: u8) -> &RootVector {
        &self.beta[p as usize - 1]
    }
}

/// Verified engine for a rank-3 2-complete seed.
#[derive(Clone, Debug)]
pub struct PsiContext {
    b0: ExchangeMatrix,
    cartan: CartanSpec,
    mode: OrientationMode,
}

impl PsiContext {
    /// Rejects any seed that is not rank 3 with every `|b_ij| ≥ 2` and the
    /// source/sink orientation the curve construction is written for.
    pub fn new(b0: ExchangeMatrix, mode: OrientationMode) -> Result<Self> {
        if b0.rank() != 3 || !b0.is_two_complete_source_sink() {
            return Err(Error::NotTwoComplete);
        }
        let cartan = b0.cartan()?;
        Ok(PsiContext { b0, cartan, mode })
    }

    pub fn two_complete(mode: OrientationMode) -> Self {
        PsiContext::new(ExchangeMatrix::two_complete(), mode).expect("the standard seed is 2-complete")
    }

    pub fn mode(&self) -> OrientationMode {
        self.mode
    }

    pub fn with_mode(&self, mode: OrientationMode) -> PsiContext {
        PsiContext { mode, ..self.clone() }
    }

    pub fn cartan(&self) -> &CartanSpec {
        &self.cartan
    }

    pub fn seed_matrix(&self) -> &ExchangeMatrix {
        &self.b0
    }

    pub fn decompose(&self, w: &Word) -> Result<Decomposition> {
        decompose(&self.b0, w)
    }

    pub fn v_triple(&self, v: &Word) -> Result<VectorTriple> {
        v_triple(v, self.mode)
    }

    /// Segment word of the last letter's vector of `V(v)`.
    pub fn phi_word(&self, v: &Word) -> Result<Word> {
        let p = v.last().ok_or(Error::EmptyWord)?;
        let u = self.v_triple(v)?.at(p);
        segment_word(u.b, u.c)
    }

    /// `φ(v)`, the root of the reflection word of `v⃗_p(v)`.
    pub fn phi(&self, v: &Word) -> Result<RootVector> {
        let u = self.phi_word(v)?;
        if !self.cartan.is_reflection(u.letters()) {
            return Err(Error::NotAReflection(u.to_string()));
        }
        half_root(&self.cartan, u.letters())
    }

    /// `ψ(ŵ)`.
    pub fn psi(&self, w: &Word) -> Result<RootVector> {
        let d = self.decompose(w)?;
        if d.tail.is_empty() {
            let l = w.letters();
            return self.cartan.word_on_simple(&l[..l.len() - 1], l[l.len() - 1]);
        }
        let phi = self.phi(&d.tail)?;
        self.cartan.apply_word(&d.prefix, &phi)
    }

    /// `𝔴 · υ · reverse(𝔴)`, checked to be a reflection whose root is `ψ(ŵ)`.
    pub fn psi_reflection_word(&self, w: &Word) -> Result<Word> {
        let d = self.decompose(w)?;
        let (outer, middle) = if d.tail.is_empty() {
            let l = w.letters();
            (w.prefix(l.len() - 1), Word::new(vec![l[l.len() - 1]])?)
        } else {
            (d.prefix.clone(), self.phi_word(&d.tail)?)
        };
        let mut letters = outer.letters().to_vec();
        letters.extend_from_slice(middle.letters());
        letters.extend(outer.letters().iter().rev());
        let word = Word::new(letters)?;
        if !self.cartan.is_reflection(word.letters()) {
            return Err(Error::NotAReflection(word.to_string()));
        }
        if half_root(&self.cartan, word.letters())? != self.psi(w)? {
            return Err(Error::Invariant(format!("reflection word of {w} does not carry psi")));
        }
        Ok(word)
    }

    pub fn lemma_phi(&self, v: &Word) -> Option<RootVector> {
        lemma_phi(&self.cartan, v)
    }

    /// Every state of the recurrence along `w`, starting with the initial one.
    pub fn tropical_trace(&self, w: &Word) -> Result<Vec<TropicalState>> {
        w.check_rank(3)?;
        let mut states = vec![TropicalState::initial(&self.b0)];
        for &k in w.letters() {
            let next = states.last().expect("nonempty").mutate(k)?;
            states.push(next);
        }
        Ok(states)
    }

    pub fn tropical_dvectors(&self, w: &Word) -> Result<[RootVector; 3]> {
        w.check_rank(3)?;
        let mut s = TropicalState::initial(&self.b0);
        for &k in w.letters() {
            s = s.mutate(k)?;
        }
        Ok(s.beta)
    }

    /// Tropical d-vector of the variable mutated last.
    pub fn tropical_last(&self, w: &Word) -> Result<RootVector> {
        let last = w.last().ok_or(Error::EmptyWord)?;
        Ok(self.tropical_dvectors(w)?[last as usize - 1].clone())
    }

    pub fn inequality_monitor(&self, w: &Word) -> Result<MonitorReport> {
        inequality_monitor(self, w)
    }

    /// Compares `ψ` and the recurrence against the Laurent oracle, when the
    /// oracle finishes within its budget.
    pub fn report(&self, w: &Word, oracle: Option<OracleConfig>) -> Result<WordReport> {
        let d = self.decompose(w)?;
        let psi = self.psi(w)?;
        let tropical = self.tropical_last(w)?;
        let (oracle, oracle_status) = match oracle {
            None => (None, OracleStatus::Skipped),
            Some(config) => match oracle_last_dvector(&self.b0, w, config) {
                Ok(v) => (Some(v), OracleStatus::Complete),
                Err(Error::Budget { completed, .. }) => (None, OracleStatus::BudgetExhausted { completed }),
                Err(e) => return Err(e),
            },
        };
        let agree = psi == tropical && oracle.as_ref().is_none_or(|o| *o == psi);
        Ok(WordReport { word: w.clone(), psi, tropical, oracle, oracle_status, agree, case_label: d.case_label })
    }
}

/// `s_{u_1}⋯s_{u_{m−1}} α_{u_m}` for the middle index `m`, made positive.
fn half_root(cartan: &CartanSpec, letters: &[u8]) -> Result<RootVector> {
    if letters.len().is_multiple_of(2) {
        return Err(Error::EvenLength(Word::new(letters.to_vec())?.to_string()));
    }
    let mid = letters.len() / 2;
    cartan.word_on_simple(&letters[..mid], letters[mid])?.positive_representative()
}

/// Outcome of the oracle leg of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OracleStatus {
    Skipped,
    Complete,
    BudgetExhausted { completed: String },
}

/// One line of a verification sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordReport {
    pub word: Word,
    pub psi: RootVector,
    pub tropical: RootVector,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<RootVector>,
    pub oracle_status: OracleStatus,
    pub agree: bool,
    pub case_label: CaseLabel,
}

/// Result of comparing one orientation mode with the oracle on short words.
#[derive(Clone, Debug, Serialize)]
pub struct ModeTrial {
    pub mode: OrientationMode,
    pub words: usize,
    pub mismatches: Vec<String>,
}

/// Picks the orientation mode that agrees with the oracle on every word of
/// length at most `max_len`, preferring `Corrected` when both do.
pub fn resolve_orientation(b0: &ExchangeMatrix, max_len: usize, budget: Budget) -> Result<(OrientationMode, Vec<ModeTrial>)> {
    let words: Vec<Word> = Word::all_up_to(3, max_len).into_iter().filter(|w| !w.is_empty()).collect();
    let truth: Vec<RootVector> = words.iter().map(|w| last_dvector(b0, w, budget)).collect::<Result<_>>()?;
    let mut trials = Vec::new();
    for mode in OrientationMode::ALL {
        let ctx = PsiContext::new(b0.clone(), mode)?;
        let mismatches = words
            .iter()
            .zip(&truth)
            .filter(|(w, t)| ctx.psi(w).ok().as_ref() != Some(*t))
            .map(|(w, _)| w.to_string())
            .collect();
        trials.push(ModeTrial { mode, words: words.len(), mismatches });
    }
    let winner = trials
        .iter()
        .find(|t| t.mismatches.is_empty())
        .map(|t| t.mode)
        .ok_or_else(|| Error::Invariant("no orientation mode agrees with the oracle".into()))?;
    Ok((winner, trials))
}

/// The kinds of relation the monitor asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Leaving the acyclic region: the previous letter's term dominates.
    EntryDominance,
    /// Inside the two-letter run, continuing the run: strict dominance of the previous letter.
    RunDominance,
    /// Inside the run, jumping to the third letter: strict dominance of the other run letter.
    ExitDominance,
    /// After the run: the previous letter's term dominates.
    TailDominance,
    /// Pairings among the three roots inside the run.
    RunPairing,
    /// `(β_p, β_q) = c_pq` where `q` is the last letter.
    TailPairing,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::EntryDominance,
        CheckKind::RunDominance,
        CheckKind::ExitDominance,
        CheckKind::TailDominance,
        CheckKind::RunPairing,
        CheckKind::TailPairing,
    ];
}

/// Full state attached to a violated check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateDump {
    pub matrix: ExchangeMatrix,
    pub beta: [RootVector; 3],
}

/// A single check performed by the monitor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonitorCheck {
    /// Length of the prefix whose state is examined.
    pub step: usize,
    pub kind: CheckKind,
    pub relation: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<StateDump>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonitorReport {
    pub word: Word,
    pub rho: usize,
    pub delta: usize,
    pub checks: Vec<MonitorCheck>,
}

impl MonitorReport {
    pub fn violations(&self) -> impl Iterator<Item = &MonitorCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn is_clean(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn count(&self, kind: CheckKind) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }
}

fn third(p: u8, q: u8) -> u8 {
    6 - p - q
}

struct Recorder<'a> {
    checks: Vec<MonitorCheck>,
    cartan: &'a CartanSpec,
}

impl Recorder<'_> {
    fn push(&mut self, step: usize, kind: CheckKind, relation: String, holds: bool, s: &TropicalState) {
        let state = (!holds).then(|| StateDump { matrix: s.matrix.clone(), beta: s.beta.clone() });
        self.checks.push(MonitorCheck { step, kind, relation, holds, state });
    }

    /// `c_{x,win} β_win ≥ c_{x,lose} β_lose` at state `s`, before mutating at `x`.
    fn dominance(&mut self, step: usize, kind: CheckKind, s: &TropicalState, x: u8, win: u8, strict: bool) {
        let lose = third(x, win);
        let lhs = s.b(win).scale(&s.c(x, win));
        let rhs = s.b(lose).scale(&s.c(x, lose));
        let holds = lhs.dominates(&rhs) && (!strict || lhs != rhs);
        let op = if strict { ">" } else { ">=" };
        let relation = format!("c{x}{win}*b{win} {op} c{x}{lose}*b{lose} before mutating {x}");
        self.push(step, kind, relation, holds, s);
    }

    fn pairing(&mut self, step: usize, kind: CheckKind, s: &TropicalState, p: u8, q: u8, expected: BigInt, label: String) {
        let value = self.cartan.pairing(s.b(p), s.b(q)).unwrap_or_else(|_| BigInt::zero());
        let holds = value == expected;
        self.push(step, kind, format!("(b{p},b{q}) = {label}"), holds, s);
    }
}

/// Walks `w` with the recurrence and checks every dominance and pairing
/// relation whose hypotheses hold at each prefix. Relations inside the
/// two-letter run are only asserted when the acyclic prefix has length at
/// least 2, so that the run's second letter closes that prefix.
pub fn inequality_monitor(ctx: &PsiContext, w: &Word) -> Result<MonitorReport> {
    if w.is_empty() {
        return Ok(MonitorReport { word: w.clone(), rho: 0, delta: 0, checks: Vec::new() });
    }
    let d = ctx.decompose(w)?;
    let (rho, delta) = (d.rho, d.delta);
    let states = ctx.tropical_trace(w)?;
    let l = w.letters();
    let letter = |t: usize| l[t - 1];
    let mut rec = Recorder { checks: Vec::new(), cartan: &ctx.cartan };
    let run_letters: Vec<u8> = if delta > rho && rho >= 2 {
        let start = rho.saturating_sub(1).max(1);
        let mut v: Vec<u8> = l[start - 1..delta].to_vec();
        v.sort_unstable();
        v.dedup();
        v
    } else {
        Vec::new()
    };
    let other_run = |last: u8| run_letters.iter().copied().find(|&x| x != last);

    for t in 0..=l.len() {
        let s = &states[t];
        if t > rho && t <= delta && !run_letters.is_empty() {
            let last = letter(t);
            if let Some(o) = other_run(last) {
                let k = third(last, o);
                rec.pairing(t, CheckKind::RunPairing, s, last, o, s.c(last, o), format!("c{last}{o}"));
                rec.pairing(t, CheckKind::RunPairing, s, o, k, s.c(o, k), format!("c{o}{k}"));
                let expected = -s.c(last, k) + s.c(last, o) * s.c(o, k);
                rec.pairing(t, CheckKind::RunPairing, s, last, k, expected, format!("-c{last}{k}+c{last}{o}*c{o}{k}"));
            }
        }
        if t > delta && t >= 2 {
            let q = letter(t);
            for p in (1..=3).filter(|&p| p != q) {
                rec.pairing(t, CheckKind::TailPairing, s, p, q, s.c(p, q), format!("c{p}{q}"));
            }
        }
        if t == l.len() {
            break;
        }
        let x = letter(t + 1);
        if t == 0 {
            continue;
        }
        let last = letter(t);
        if t < rho {
            continue;
        }
        if t == rho {
            rec.dominance(t, CheckKind::EntryDominance, s, x, last, false);
        } else if t <= delta {
            if run_letters.is_empty() {
                continue;
            }
            if run_letters.contains(&x) {
                rec.dominance(t, CheckKind::RunDominance, s, x, last, true);
            } else if let Some(o) = other_run(last) {
                rec.dominance(t, CheckKind::ExitDominance, s, x, o, true);
            }
        } else {
            rec.dominance(t, CheckKind::TailDominance, s, x, last, false);
        }
    }
    Ok(MonitorReport { word: w.clone(), rho, delta, checks: rec.checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn rv(c: &[i64]) -> RootVector {
        RootVector::from_i64(c)
    }

    fn ctx() -> PsiContext {
        PsiContext::two_complete(OrientationMode::Corrected)
    }

    #[test]
    fn base_triples() {
        let v = Vec2::new;
        assert_eq!(base_triple(1, OrientationMode::Corrected).unwrap().0, [v(-1, 2), v(-1, 1), v(0, 1)]);
        assert_eq!(base_triple(2, OrientationMode::PaperVerbatim).unwrap().0, [v(0, 1), v(1, 1), v(1, 0)]);
        assert_eq!(base_triple(2, OrientationMode::Corrected).unwrap().0, [v(1, 0), v(1, 1), v(0, 1)]);
        for l in 1..=3 {
            for m in OrientationMode::ALL {
                assert!(base_triple(l, m).unwrap().is_unimodular());
            }
        }
    }

    #[test]
    fn triples_fold() {
        let v = Vec2::new;
        assert_eq!(v_triple(&w("2132"), OrientationMode::PaperVerbatim).unwrap().0, [v(2, 1), v(5, 3), v(3, 2)]);
        assert_eq!(v_triple(&w("2312"), OrientationMode::Corrected).unwrap().0, [v(3, 2), v(5, 3), v(2, 1)]);
        assert_eq!(v_triple(&w("2"), OrientationMode::Corrected).unwrap(), base_triple(2, OrientationMode::Corrected).unwrap());
    }

    #[test]
    fn segments() {
        assert_eq!(segment_word(5, 3).unwrap(), w("2321232321232"));
        assert_eq!(segment_word(3, 5).unwrap(), w("2123212123212"));
        assert_eq!(segment_word(1, 1).unwrap(), w("2"));
        assert_eq!(segment_word(-1, 2).unwrap(), w("1"));
        assert_eq!(segment_word(1, 0).unwrap(), w("1"));
        assert_eq!(segment_word(0, -1).unwrap(), w("3"));
        assert!(matches!(segment_word(0, 0), Err(Error::NotCoprime(0, 0))));
        assert!(matches!(segment_word(4, 6), Err(Error::NotCoprime(4, 6))));
    }

    #[test]
    fn phi_values() {
        let c = ctx();
        assert_eq!(c.phi(&w("2")).unwrap(), rv(&[0, 1, 0]));
        assert_eq!(c.phi(&w("2312")).unwrap(), rv(&[10, 119, 60]));
        assert_eq!(c.phi(&w("21")).unwrap(), rv(&[1, 2, 0]));
    }

    #[test]
    fn psi_values() {
        let c = ctx();
        let long = w("3213213213212312");
        assert_eq!(c.psi(&long).unwrap(), rv(&[1662490, 4352663, 11395212]));
        assert_eq!(c.psi(&w("12")).unwrap(), rv(&[2, 1, 0]));
        assert_eq!(c.psi(&w("321321321321")).unwrap(), rv(&[4895, 12816, 33552]));
        assert_eq!(c.psi(&w("121")).unwrap(), rv(&[3, 2, 0]));
    }

    #[test]
    fn reflection_words() {
        let c = ctx();
        let expected = format!("{}2321232321232{}", "321".repeat(4), "123".repeat(4));
        assert_eq!(c.psi_reflection_word(&w("3213213213212312")).unwrap(), w(&expected));
        assert_eq!(c.psi_reflection_word(&w("12")).unwrap(), w("121"));
        assert_eq!(c.psi_reflection_word(&w("2")).unwrap(), w("2"));
    }

    #[test]
    fn closed_forms() {
        let cart = CartanSpec::uniform_rank3(2);
        assert_eq!(lemma_phi(&cart, &w("2132")).unwrap(), rv(&[60, 119, 10]));
        assert_eq!(lemma_phi(&cart, &w("213")).unwrap(), rv(&[6, 12, 1]));
        assert_eq!(lemma_phi(&cart, &w("1")).unwrap(), rv(&[1, 0, 0]));
        assert!(lemma_phi(&cart, &w("21323")).is_none());
    }

    #[test]
    fn tropical_values() {
        let c = ctx();
        assert_eq!(c.tropical_dvectors(&w("2")).unwrap()[1], rv(&[0, 1, 0]));
        assert_eq!(c.tropical_dvectors(&w("21")).unwrap()[0], rv(&[1, 2, 0]));
        assert_eq!(c.tropical_last(&w("3213213213212312")).unwrap(), rv(&[1662490, 4352663, 11395212]));
    }

    #[test]
    fn monitor_examples() {
        let c = ctx();
        assert!(c.inequality_monitor(&w("3")).unwrap().checks.is_empty());
        let r = c.inequality_monitor(&w("3213213213212131")).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations().collect::<Vec<_>>());
        assert!(!r.checks.is_empty());
    }

    #[test]
    fn rejects_other_seeds() {
        let b = ExchangeMatrix::new(&[vec![0, 1, 2], vec![-1, 0, 2], vec![-2, -2, 0]]).unwrap();
        assert!(matches!(PsiContext::new(b, OrientationMode::Corrected), Err(Error::NotTwoComplete)));
    }
}
