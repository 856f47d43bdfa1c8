//! Word-level checks on finite, affine and rank-2 root systems.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::psi_engine::segment_word;
use crate::root_lattice::{CartanSpec, RootVector};

/// An acyclic quiver given by arrow multiplicities, `arrows[i][j]` arrows `i+1 → j+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverPreset {
    pub name: String,
    pub arrows: Vec<Vec<u32>>,
}

impl QuiverPreset {
    pub fn new(name: impl Into<String>, arrows: Vec<Vec<u32>>) -> Result<Self> {
        let n = arrows.len();
        if arrows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension { expected: n, found: arrows.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n) });
        }
        let q = QuiverPreset { name: name.into(), arrows };
        if topological_orders(&q).is_empty() {
            return Err(Error::ExchangeMatrix(format!("quiver {} has an oriented cycle", q.name)));
        }
        Ok(q)
    }

    fn from_edges(name: &str, n: usize, edges: &[(usize, usize)]) -> Self {
        let mut arrows = vec![vec![0; n]; n];
        for &(i, j) in edges {
            arrows[i - 1][j - 1] += 1;
        }
        QuiverPreset::new(name, arrows).expect("preset quivers are acyclic")
    }

    pub fn rank(&self) -> usize {
        self.arrows.len()
    }

    /// Equioriented `1 → 2 → ⋯ → n`.
    pub fn type_a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(&format!("A{n}"), n, &edges)
    }

    /// `1 → ⋯ → n−2` with `n−2 → n−1` and `n−2 → n`.
    pub fn type_d(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 2, n - 1));
        edges.push((n - 2, n));
        Self::from_edges(&format!("D{n}"), n, &edges)
    }

    /// The chain `5 ← 4 ← 3 ← 2 ← 1` with `1 → 6 → 7` and `1 → 8`.
    pub fn e8() -> Self {
        Self::from_edges("E8", 8, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (6, 7), (1, 8)])
    }

    /// `c` arrows `1 → 2`.
    pub fn rank2(c: u32) -> Self {
        QuiverPreset::new(format!("K{c}"), vec![vec![0, c], vec![0, 0]]).expect("acyclic")
    }

    /// `1 → 2 → 3` and `1 → 3`.
    pub fn a2_affine() -> Self {
        Self::from_edges("A2~", 3, &[(1, 2), (2, 3), (1, 3)])
    }

    /// The two-arrow quiver on three vertices with source 1 and sink 3.
    pub fn two_complete() -> Self {
        QuiverPreset::new("2-complete", vec![vec![0, 2, 2], vec![0, 0, 2], vec![0, 0, 0]]).expect("acyclic")
    }

    pub fn cartan(&self) -> CartanSpec {
        CartanSpec::from_multiplicities(&self.arrows).expect("multiplicities give a valid Cartan matrix")
    }
}

/// All orderings `σ` of the vertices with no arrow from a later vertex to an earlier one.
pub fn topological_orders(q: &QuiverPreset) -> Vec<Vec<usize>> {
    fn extend(q: &QuiverPreset, used: &mut Vec<bool>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = q.rank();
        if current.len() == n {
            out.push(current.iter().map(|v| v + 1).collect());
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let ready = (0..n).all(|u| used[u] || u == v || q.arrows[u][v] == 0);
            if ready {
                used[v] = true;
                current.push(v);
                extend(q, used, current, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(q, &mut vec![false; q.rank()], &mut Vec::new(), &mut out);
    out
}

/// Positive roots of a finite root system by closing the simple roots
/// under simple reflections, discarding anything above `height_cap`.
pub fn brute_force_positive_roots(cartan: &CartanSpec, height_cap: usize) -> BTreeSet<RootVector> {
    let n = cartan.rank();
    let cap = BigInt::from(height_cap);
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<RootVector> = (1..=n as u8).map(|i| RootVector::simple(n, i).expect("in range")).collect();
    while let Some(r) = queue.pop_front() {
        if !r.is_positive() || r.height() > cap || !seen.insert(r.clone()) {
            continue;
        }
        for i in 1..=n as u8 {
            let s = cartan.reflect(i, &r).expect("dimensions agree");
            if s.is_positive() && !seen.contains(&s) {
                queue.push_back(s);
            }
        }
    }
    seen
}

/// One checked item of a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub label: String,
    pub word: String,
    pub expected: Option<RootVector>,
    pub actual: Option<RootVector>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<SuiteCheck>,
    pub distinct_roots: usize,
    pub expected_roots: Option<usize>,
    pub passed: bool,
}

impl SuiteReport {
    fn finish(suite: String, checks: Vec<SuiteCheck>, roots: &BTreeSet<RootVector>, expected_roots: Option<usize>) -> Self {
        let passed = checks.iter().all(|c| c.pass) && expected_roots.is_none_or(|e| e == roots.len());
        SuiteReport { suite, checks, distinct_roots: roots.len(), expected_roots, passed }
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Letters joined by dots, so ranks above 9 stay readable.
fn show(letters: &[u8]) -> String {
    letters.iter().map(u8::to_string).collect::<Vec<_>>().join(".")
}

fn range(a: usize, b: usize) -> Vec<u8> {
    if a <= b {
        (a..=b).map(|i| i as u8).collect()
    } else {
        (b..=a).rev().map(|i| i as u8).collect()
    }
}

/// The palindrome `p · m · reverse(p)`.
fn palindrome(prefix: &[u8], middle: u8) -> Vec<u8> {
    let mut v = prefix.to_vec();
    v.push(middle);
    v.extend(prefix.iter().rev());
    v
}

fn unit_sum(n: usize, coeffs: &[(usize, i64)]) -> RootVector {
    let mut v = vec![0i64; n];
    for &(i, c) in coeffs {
        v[i - 1] += c;
    }
    RootVector::from_i64(&v)
}

/// Evaluates `prefix · α_middle`, checks it is a positive root whose
/// reflection is the palindromic word, and compares with `expected`.
fn root_check(
    cartan: &CartanSpec,
    label: String,
    prefix: &[u8],
    middle: u8,
    expected: Option<RootVector>,
    known: Option<&BTreeSet<RootVector>>,
) -> SuiteCheck {
    let word = palindrome(prefix, middle);
    let actual = cartan.word_on_simple(prefix, middle).ok();
    let mut notes = Vec::new();
    let mut pass = true;
    match &actual {
        Some(r) if r.is_positive() => {}
        _ => {
            pass = false;
            notes.push("not a positive root".to_string());
        }
    }
    if pass && cartan.reflection_direction(&word).as_ref() != actual.as_ref() {
        pass = false;
        notes.push("palindrome is not the reflection of the root".to_string());
    }
    if let Some(e) = &expected {
        if actual.as_ref() != Some(e) {
            pass = false;
            notes.push("value differs".to_string());
        }
    }
    if let (Some(set), Some(r)) = (known, &actual) {
        if !set.contains(r) {
            pass = false;
            notes.push("missing from the enumerated positive roots".to_string());
        }
    }
    SuiteCheck { label, word: show(&word), expected, actual, pass, note: (!notes.is_empty()).then(|| notes.join("; ")) }
}

fn collect_roots(checks: &[SuiteCheck]) -> BTreeSet<RootVector> {
    checks.iter().filter_map(|c| c.actual.clone()).collect()
}

/// `i⋯(j−1) j (j−1)⋯i` for `1 ≤ i ≤ j ≤ n` gives `α_i + ⋯ + α_j`, and these exhaust `Φ⁺(A_n)`.
pub fn verify_type_a(n: usize) -> Result<SuiteReport> {
    if !(1..=12).contains(&n) {
        return Err(Error::Config(format!("type A suite needs 1 <= n <= 12, got {n}")));
    }
    let cartan = QuiverPreset::type_a(n).cartan();
    let all = brute_force_positive_roots(&cartan, 2 * (n + 1));
    let mut checks = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let prefix = if j > i { range(i, j - 1) } else { Vec::new() };
            let expected = unit_sum(n, &(i..=j).map(|k| (k, 1)).collect::<Vec<_>>());
            checks.push(root_check(&cartan, format!("i={i} j={j}"), &prefix, j as u8, Some(expected), Some(&all)));
        }
    }
    let roots = collect_roots(&checks);
    let mut report = SuiteReport::finish(format!("A{n}"), checks, &roots, Some(n * (n + 1) / 2));
    report.passed &= roots == all;
    Ok(report)
}

/// The three families of positive roots of `D_n`, checked for completeness.
pub fn verify_type_d(n: usize) -> Result<SuiteReport> {
    if !(4..=10).contains(&n) {
        return Err(Error::Config(format!("type D suite needs 4 <= n <= 10, got {n}")));
    }
    let cartan = QuiverPreset::type_d(n).cartan();
    let all = brute_force_positive_roots(&cartan, 2 * (2 * n - 2));
    let mut checks = Vec::new();
    for i in 1..n {
        for j in i..n {
            let prefix = if j > i { range(i, j - 1) } else { Vec::new() };
            let expected = unit_sum(n, &(i..=j).map(|k| (k, 1)).collect::<Vec<_>>());
            checks.push(root_check(&cartan, format!("first i={i} j={j}"), &prefix, j as u8, Some(expected), Some(&all)));
        }
    }
    for i in 1..n {
        let prefix = if i <= n - 2 { range(i, n - 2) } else { Vec::new() };
        let mut coeffs: Vec<(usize, i64)> = (i..=n - 2).map(|k| (k, 1)).collect();
        coeffs.push((n, 1));
        let expected = unit_sum(n, &coeffs);
        checks.push(root_check(&cartan, format!("second i={i}"), &prefix, n as u8, Some(expected), Some(&all)));
    }
    for i in 1..n {
        for j in i + 1..n {
            let mut prefix = if j <= n - 2 { range(j, n - 2) } else { Vec::new() };
            prefix.push(n as u8);
            prefix.extend(range(n - 1, i + 1));
            let mut coeffs: Vec<(usize, i64)> = (i..j).map(|k| (k, 1)).collect();
            coeffs.extend((j..=n - 2).map(|k| (k, 2)));
            coeffs.extend([(n - 1, 1), (n, 1)]);
            let expected = unit_sum(n, &coeffs);
            checks.push(root_check(&cartan, format!("third i={i} j={j}"), &prefix, i as u8, Some(expected), Some(&all)));
        }
    }
    let roots = collect_roots(&checks);
    let mut report = SuiteReport::finish(format!("D{n}"), checks, &roots, Some(n * (n - 1)));
    report.passed &= roots == all;
    Ok(report)
}

/// The highest root of `E_8` as `(s_8⋯s_1)^5 (s_8⋯s_2) α_1`, with its palindromic reflection word.
pub fn verify_e8() -> Result<SuiteReport> {
    let cartan = QuiverPreset::e8().cartan();
    let all = brute_force_positive_roots(&cartan, 60);
    let mut prefix = Vec::new();
    for _ in 0..5 {
        prefix.extend(range(8, 1));
    }
    prefix.extend(range(8, 2));
    let highest = RootVector::from_i64(&[6, 5, 4, 3, 2, 4, 2, 3]);
    let mut checks = vec![root_check(&cartan, "highest root".into(), &prefix, 1, Some(highest.clone()), Some(&all))];
    let top = all.iter().max_by_key(|r| r.height()).cloned();
    checks.push(SuiteCheck {
        label: "unique root of greatest height".into(),
        word: String::new(),
        expected: Some(highest),
        actual: top,
        pass: checks[0].expected == all.iter().max_by_key(|r| r.height()).cloned()
            && all.iter().filter(|r| r.height() == BigInt::from(29)).count() == 1,
        note: None,
    });
    let word = palindrome(&prefix, 1);
    let m = cartan.word_matrix(&word)?;
    let involution = (0..8).all(|r| {
        (0..8).all(|c| {
            let v: BigInt = (0..8).map(|k| &m[r][k] * &m[k][c]).sum();
            v == if r == c { BigInt::one() } else { BigInt::zero() }
        })
    });
    checks.push(SuiteCheck {
        label: format!("{}-letter word squares to the identity", word.len()),
        word: show(&word),
        expected: None,
        actual: None,
        pass: involution,
        note: None,
    });
    let short = cartan.word_on_simple(&range(8, 2), 1)?;
    checks.push(SuiteCheck {
        label: "(s_8⋯s_2)α_1 has height 8".into(),
        word: show(&palindrome(&range(8, 2), 1)),
        expected: None,
        pass: short.is_positive() && short.height() == BigInt::from(8) && all.contains(&short),
        actual: Some(short),
        note: None,
    });
    let roots = BTreeSet::new();
    let mut report = SuiteReport::finish("E8".into(), checks, &roots, None);
    report.distinct_roots = all.len();
    report.expected_roots = Some(120);
    report.passed &= all.len() == 120;
    Ok(report)
}

/// Alternating odd words `iji⋯i` in rank 2 with `c` arrows, up to length `2·n_max + 1`.
pub fn verify_rank2(c: u32, n_max: usize) -> Result<SuiteReport> {
    if c < 2 {
        return Err(Error::Config(format!("rank-2 suite needs c >= 2, got {c}")));
    }
    let cartan = QuiverPreset::rank2(c).cartan();
    let mut checks = Vec::new();
    for k in 0..=n_max {
        for (i, j) in [(1u8, 2u8), (2, 1)] {
            let prefix: Vec<u8> = (0..k).map(|t| if t % 2 == 0 { i } else { j }).collect();
            let middle = if k % 2 == 0 { i } else { j };
            let expected = (c == 2).then(|| {
                let (big, small) = (k as i64 + 1, k as i64);
                RootVector::from_i64(&if i == 1 { [big, small] } else { [small, big] })
            });
            let mut check = root_check(&cartan, format!("start={i} k={k}"), &prefix, middle, expected, None);
            if let Some(r) = &check.actual {
                let (x, y) = (&r.0[0], &r.0[1]);
                let norm: BigInt = x * x + y * y - BigInt::from(c) * x * y;
                if !norm.is_one() {
                    check.pass = false;
                    check.note = Some(format!("x² + y² − cxy = {norm}"));
                }
            }
            checks.push(check);
        }
    }
    let roots = collect_roots(&checks);
    let expected = 2 * (n_max + 1);
    Ok(SuiteReport::finish(format!("rank2 c={c}"), checks, &roots, Some(expected)))
}

fn power(block: &[u8], times: usize) -> Vec<u8> {
    block.iter().copied().cycle().take(block.len() * times).collect()
}

fn segment_check(cartan: &CartanSpec, label: String, b: i64, c: i64, expected: &RootVector) -> SuiteCheck {
    let g = num_integer::gcd(b, c);
    let (b, c) = (b / g, c / g);
    let outcome = segment_word(b, c).map(|w| {
        let root = cartan.reflection_direction(w.letters());
        (w, root)
    });
    match outcome {
        Ok((w, root)) => SuiteCheck {
            label,
            word: w.to_string(),
            expected: Some(expected.clone()),
            pass: root.as_ref() == Some(expected),
            actual: root,
            note: Some(format!("segment ({b}, {c})")),
        },
        Err(e) => SuiteCheck {
            label,
            word: String::new(),
            expected: Some(expected.clone()),
            actual: None,
            pass: false,
            note: Some(e.to_string()),
        },
    }
}

/// The five families of real Schur roots of affine `A_2`, plus the
/// segment words for the two families realized by straight segments.
pub fn verify_a2_affine(n_max: usize) -> Result<SuiteReport> {
    let cartan = QuiverPreset::a2_affine().cartan();
    let mut checks = Vec::new();
    let v = |a: usize, b: usize, c: usize| RootVector::from_i64(&[a as i64, b as i64, c as i64]);
    for n in 0..=n_max {
        let (prefix, middle) = if n % 2 == 0 {
            (power(&[1, 2, 3, 2], n / 2), 1)
        } else {
            let mut p = power(&[1, 2, 3, 2], (n - 1) / 2);
            p.extend([1, 2]);
            (p, 3)
        };
        checks.push(root_check(&cartan, format!("first n={n}"), &prefix, middle, Some(v(n + 1, n, n)), None));

        let mut p = power(&[1, 2, 3, 2], n);
        p.push(1);
        checks.push(root_check(&cartan, format!("second n={n}"), &p, 2, Some(v(n + 1, n + 1, n)), None));

        let third = v(n, n + 1, n + 1);
        let (prefix, middle) = if n % 2 == 0 {
            let mut p = power(&[2, 3, 2, 1], n / 2);
            p.push(2);
            (p, 3)
        } else {
            let mut p = power(&[2, 3, 2, 1], (n - 1) / 2);
            p.extend([2, 3, 2]);
            (p, 1)
        };
        checks.push(root_check(&cartan, format!("third n={n}"), &prefix, middle, Some(third.clone()), None));
        checks.push(segment_check(&cartan, format!("third n={n} segment"), n as i64 + 2, n as i64 + 1, &third));

        let fourth = v(n, n, n + 1);
        let mut p = power(&[2, 3, 2, 1], n);
        p.extend([2, 3]);
        checks.push(root_check(&cartan, format!("fourth n={n}"), &p, 2, Some(fourth.clone()), None));
        checks.push(segment_check(&cartan, format!("fourth n={n} segment"), 2 * n as i64 + 3, 2 * n as i64 + 1, &fourth));
    }
    checks.push(root_check(&cartan, "fifth simple".into(), &[], 2, Some(v(0, 1, 0)), None));
    checks.push(root_check(&cartan, "fifth sum".into(), &[1], 3, Some(v(1, 0, 1)), None));
    for c in &mut checks {
        if let Some(r) = &c.actual {
            let norm = cartan.pairing(r, r)?;
            if norm != BigInt::from(2) || r.0.iter().any(|x| x.is_negative()) {
                c.pass = false;
                c.note = Some(format!("(β, β) = {norm}"));
            }
        }
    }
    let roots = collect_roots(&checks);
    Ok(SuiteReport::finish(format!("A2~ n<={n_max}"), checks, &roots, Some(4 * (n_max + 1) + 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(topological_orders(&QuiverPreset::two_complete()), vec![vec![1, 2, 3]]);
        assert_eq!(topological_orders(&QuiverPreset::type_a(2)), vec![vec![1, 2]]);
        let empty = QuiverPreset::new("empty", vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(topological_orders(&empty).len(), 2);
        assert!(QuiverPreset::new("cycle", vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn finite_types() {
        for n in [1, 3, 8] {
            let r = verify_type_a(n).unwrap();
            assert!(r.passed, "A{n}");
            assert_eq!(r.distinct_roots, n * (n + 1) / 2);
        }
        let a8 = verify_type_a(8).unwrap();
        let c = a8.checks.iter().find(|c| c.label == "i=2 j=5").unwrap();
        assert_eq!(c.actual, Some(RootVector::from_i64(&[0, 1, 1, 1, 1, 0, 0, 0])));
        for n in 4..=8 {
            let r = verify_type_d(n).unwrap();
            assert!(r.passed, "D{n}: {:?}", r.failures().next());
            assert_eq!(r.distinct_roots, n * (n - 1));
        }
        let d4 = verify_type_d(4).unwrap();
        let c = d4.checks.iter().find(|c| c.label == "second i=1").unwrap();
        assert_eq!(c.actual, Some(RootVector::from_i64(&[1, 1, 0, 1])));
    }

    #[test]
    fn exceptional() {
        let r = verify_e8().unwrap();
        assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().any(|c| c.label.starts_with("95-letter")));
    }

    #[test]
    fn rank_two() {
        let r = verify_rank2(2, 20).unwrap();
        assert!(r.passed, "{:?}", r.failures().take(2).collect::<Vec<_>>());
        assert_eq!(r.distinct_roots, 42);
        assert_eq!(r.checks[2].actual, Some(RootVector::from_i64(&[2, 1])));
        assert!(verify_rank2(3, 6).unwrap().passed);
    }

    #[test]
    fn affine() {
        let r = verify_a2_affine(10).unwrap();
        assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        let seg = r.checks.iter().find(|c| c.label == "fourth n=0 segment").unwrap();
        assert_eq!(seg.word, "23232");
    }
}
