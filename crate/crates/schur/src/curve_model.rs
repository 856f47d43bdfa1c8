//! Curves on the triangulated torus and the correspondence `ŵ ↔ z = (a, b, c)`.
//!
//! The plane carries three families of lines: horizontal (`y ∈ ℤ`, letter 1),
//! antidiagonal (`x + y ∈ ℤ`, letter 2) and vertical (`x ∈ ℤ`, letter 3).
//! Through the origin they give six rays, which a spiral around the origin
//! meets in the order `1,2,3,1,…` clockwise or `3,2,1,3,…` counterclockwise.
//! The acyclic prefix of a word is such a spiral, and the rest of the word
//! is the straight segment to `(b, c)`.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::psi_engine::{base_triple, segment_word, OrientationMode, PsiContext, Vec2, VectorTriple};
use crate::root_lattice::Word;

/// `z = (a, b, c)` with `gcd(|b|, |c|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl CurveSpec {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if (b, c) == (0, 0) || b.unsigned_abs().gcd(&c.unsigned_abs()) != 1 {
            return Err(Error::NotCoprime(b, c));
        }
        Ok(CurveSpec { a, b, c })
    }

    fn direction(&self) -> Vec2 {
        Vec2::new(self.b, self.c)
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

/// Turning direction of the spiral at the start of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spiral {
    Clockwise,
    Counterclockwise,
}

/// The six rays in counterclockwise order from the positive x-axis.
const RAYS: [(Vec2, u8); 6] = [
    (Vec2::new(1, 0), 1),
    (Vec2::new(0, 1), 3),
    (Vec2::new(-1, 1), 2),
    (Vec2::new(-1, 0), 1),
    (Vec2::new(0, -1), 3),
    (Vec2::new(1, -1), 2),
];

/// First letter and sign of the tail for each open sector between consecutive rays.
const SECTOR_TAIL: [(u8, i64); 6] = [(2, 1), (1, 1), (3, -1), (2, -1), (1, -1), (3, 1)];

/// Ray met as the `n`-th one (1-based) by a spiral, as an index into `RAYS`.
fn ray_at(branch: Spiral, n: usize) -> usize {
    match branch {
        Spiral::Clockwise => (6 - (n - 1) % 6) % 6,
        Spiral::Counterclockwise => n % 6,
    }
}

/// Sector entered after crossing `n` rays.
fn sector_after(branch: Option<Spiral>, n: usize) -> usize {
    match branch {
        None => 0,
        Some(Spiral::Clockwise) => (6 - n % 6) % 6,
        Some(Spiral::Counterclockwise) => n % 6,
    }
}

/// Letters met by a spiral crossing `rays` rays.
pub fn spiral_word(branch: Spiral, rays: usize) -> Word {
    let cycle: [u8; 3] = match branch {
        Spiral::Clockwise => [1, 2, 3],
        Spiral::Counterclockwise => [3, 2, 1],
    };
    Word::new((0..rays).map(|i| cycle[i % 3]).collect()).expect("cyclic words never repeat a letter")
}

fn branch_of(prefix: &Word) -> Option<Spiral> {
    match prefix.first() {
        Some(1) => Some(Spiral::Clockwise),
        Some(3) => Some(Spiral::Counterclockwise),
        _ => None,
    }
}

fn ceil_div6(n: usize) -> i64 {
    n.div_ceil(6) as i64
}

/// Strict count of positive x-axis crossings for the clockwise walk, and
/// the inclusive count for the counterclockwise one, signed by direction.
fn spiral_count(branch: Option<Spiral>, rays: usize, ends_on_ray: bool) -> i64 {
    match branch {
        None => 0,
        Some(Spiral::Clockwise) if ends_on_ray => ceil_div6(rays - 1),
        Some(Spiral::Clockwise) => ceil_div6(rays),
        Some(Spiral::Counterclockwise) => -((rays / 6) as i64),
    }
}

/// `ŵ ↦ z`.
pub fn word_to_z(ctx: &PsiContext, w: &Word) -> Result<CurveSpec> {
    let d = ctx.decompose(w)?;
    let branch = branch_of(&d.prefix);
    if d.tail.is_empty() {
        let n = w.len();
        let (dir, label) = RAYS[ray_at(branch.expect("acyclic words start with 1 or 3"), n)];
        debug_assert_eq!(Some(label), w.last());
        return CurveSpec::new(spiral_count(branch, n, true), dir.b, dir.c);
    }
    let sector = sector_after(branch, d.rho);
    let (first, sign) = SECTOR_TAIL[sector];
    if d.tail.first() != Some(first) {
        return Err(Error::Invariant(format!("tail of {w} does not start in sector {sector}")));
    }
    let p = d.tail.last().expect("nonempty tail");
    let v = ctx.v_triple(&d.tail)?.at(p);
    let v = if sign < 0 { -v } else { v };
    CurveSpec::new(spiral_count(branch, d.rho, false), v.b, v.c)
}

/// Index into `RAYS` of a unit ray direction, if `v` is one.
fn ray_index(v: Vec2) -> Option<usize> {
    RAYS.iter().position(|(r, _)| *r == v)
}

/// Open sector containing a direction that is not a ray.
fn sector_of(v: Vec2) -> usize {
    (0..6)
        .find(|&s| {
            let lo = RAYS[s].0;
            let hi = RAYS[(s + 1) % 6].0;
            lo.det(v) > 0 && v.det(hi) > 0
        })
        .expect("every non-ray direction lies in an open sector")
}

/// Largest component magnitude accepted by the tail search.
pub const SEARCH_MAX_COMPONENT: i64 = 1_000_000;
/// Deepest tail the search explores.
pub const SEARCH_MAX_DEPTH: usize = 60;

fn in_cone(p: Vec2, q: Vec2, u: Vec2) -> bool {
    let s = p.det(q).signum();
    p.det(u) * s >= 0 && u.det(q) * s >= 0
}

fn search_tail(first: u8, target: Vec2, mode: OrientationMode, z: &CurveSpec) -> Result<Word> {
    let exhausted = |reason: String| Error::SearchExhausted { b: z.b, c: z.c, reason };
    if target.b.abs() > SEARCH_MAX_COMPONENT || target.c.abs() > SEARCH_MAX_COMPONENT {
        return Err(exhausted(format!("component bound {SEARCH_MAX_COMPONENT}")));
    }
    let goal = target.norm_sq();
    let mut stack: Vec<(Vec<u8>, VectorTriple)> = vec![(vec![first], base_triple(first, mode)?)];
    let mut hit_depth = false;
    while let Some((letters, t)) = stack.pop() {
        let last = *letters.last().expect("nonempty");
        let v = t.at(last);
        if v == target {
            return Word::new(letters);
        }
        if v.norm_sq() > goal {
            continue;
        }
        if letters.len() >= SEARCH_MAX_DEPTH {
            hit_depth = true;
            continue;
        }
        for x in (1..=3u8).filter(|&x| x != last) {
            let others: Vec<Vec2> = (1..=3u8).filter(|&y| y != x).map(|y| t.at(y)).collect();
            if !in_cone(others[0], others[1], target) {
                continue;
            }
            let mut next = letters.clone();
            next.push(x);
            stack.push((next, t.step(x)?));
        }
    }
    Err(exhausted(if hit_depth {
        format!("depth bound {SEARCH_MAX_DEPTH}")
    } else {
        "no tail vector matches".to_string()
    }))
}

/// `z ↦ ŵ`, checked by mapping back.
pub fn z_to_word(ctx: &PsiContext, z: &CurveSpec) -> Result<Word> {
    let z = CurveSpec::new(z.a, z.b, z.c)?;
    let dir = z.direction();
    let word = if let Some(r) = ray_index(dir) {
        let mut found = None;
        for branch in [Spiral::Clockwise, Spiral::Counterclockwise] {
            let base = (1..=6).find(|&n| ray_at(branch, n) == r).expect("each ray is met once per turn");
            for m in 0..=z.a.unsigned_abs() as usize + 1 {
                let n = base + 6 * m;
                if spiral_count(Some(branch), n, true) == z.a {
                    found = Some(spiral_word(branch, n));
                }
            }
        }
        found.ok_or_else(|| Error::RoundTrip(format!("no spiral reaches {z}")))?
    } else {
        let sector = sector_of(dir);
        let (branch, rays) = if z.a >= 1 {
            let base = (1..=6).find(|&n| sector_after(Some(Spiral::Clockwise), n) == sector).expect("sector reachable");
            (Some(Spiral::Clockwise), base + 6 * (z.a as usize - 1))
        } else {
            let n = sector + 6 * z.a.unsigned_abs() as usize;
            (if n == 0 { None } else { Some(Spiral::Counterclockwise) }, n)
        };
        let (first, sign) = SECTOR_TAIL[sector];
        let target = if sign < 0 { -dir } else { dir };
        let tail = search_tail(first, target, ctx.mode(), &z)?;
        let mut letters = branch.map_or_else(Vec::new, |b| spiral_word(b, rays).into_letters());
        letters.extend_from_slice(tail.letters());
        Word::new(letters)?
    };
    let back = word_to_z(ctx, &word)?;
    if back != z {
        return Err(Error::RoundTrip(format!("{z} -> {word} -> {back}")));
    }
    Ok(word)
}

/// Spiral part of `η_z`: the word and whether the curve leaves along a ray.
fn spiral_of(ctx: &PsiContext, z: &CurveSpec) -> Result<(Word, Option<Spiral>, usize, bool)> {
    let w = z_to_word(ctx, z)?;
    let d = ctx.decompose(&w)?;
    if d.tail.is_empty() {
        let n = w.len();
        Ok((w.prefix(n - 1), branch_of(&w), n - 1, true))
    } else {
        Ok((d.prefix.clone(), branch_of(&d.prefix), d.rho, false))
    }
}

/// `spiral · segment · reverse(spiral)`, checked to be the reflection word of `ψ(z_to_word(z))`.
pub fn eta_word(ctx: &PsiContext, z: &CurveSpec) -> Result<Word> {
    let (spiral, _, _, _) = spiral_of(ctx, z)?;
    let seg = segment_word(z.b, z.c)?;
    let mut letters = spiral.letters().to_vec();
    letters.extend_from_slice(seg.letters());
    letters.extend(spiral.letters().iter().rev());
    let word = Word::new(letters)?;
    if !ctx.cartan().is_reflection(word.letters()) {
        return Err(Error::NotAReflection(word.to_string()));
    }
    let root = ctx.cartan().reflection_direction(word.letters());
    let psi = ctx.psi(&z_to_word(ctx, z)?)?;
    if root.as_ref() != Some(&psi) {
        return Err(Error::Invariant(format!("root of eta word for {z} differs from psi")));
    }
    Ok(word)
}

/// A polygonal path with exact rational vertices `(x / den, y / den)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polyline {
    pub den: i128,
    pub vertices: Vec<(i128, i128)>,
}

impl Polyline {
    pub fn from_integer_points(points: &[(i64, i64)]) -> Self {
        Polyline { den: 1, vertices: points.iter().map(|&(x, y)| (x as i128, y as i128)).collect() }
    }

    pub fn segments(&self) -> impl Iterator<Item = ((i128, i128), (i128, i128))> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn as_f64(&self) -> Vec<(f64, f64)> {
        let d = self.den as f64;
        self.vertices.iter().map(|&(x, y)| (x as f64 / d, y as f64 / d)).collect()
    }
}

/// Grid directions on the L1 circle of radius `s` (even), counterclockwise
/// from 45°, skipping the six rays.
fn direction_grid(s: i128) -> Vec<(i128, i128)> {
    let mut all = Vec::new();
    for j in 0..s {
        all.push((s - j, j));
    }
    for j in 0..s {
        all.push((-j, s - j));
    }
    for j in 0..s {
        all.push((-s + j, -j));
    }
    for j in 0..s {
        all.push((j, -s + j));
    }
    let is_ray = |p: &(i128, i128)| p.0 == 0 || p.1 == 0 || p.0 + p.1 == 0;
    let grid: Vec<(i128, i128)> = all.into_iter().filter(|p| !is_ray(p)).collect();
    let start = grid.iter().position(|&p| p == (s / 2, s / 2)).expect("45° lies on the grid");
    grid[start..].iter().chain(&grid[..start]).copied().collect()
}

fn det(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Number of rays strictly between two grid directions less than 180° apart.
fn rays_between(p: (i128, i128), q: (i128, i128)) -> usize {
    let orient = det(p, q).signum();
    RAYS.iter()
        .filter(|(r, _)| {
            let r = (r.b as i128, r.c as i128);
            det(p, r) * orient > 0 && det(r, q) * orient > 0
        })
        .count()
}

/// The non-self-intersecting realization of `η_z`: a spiral from the
/// origin out to `ε(b, c)`, the straight middle segment, and the spiral
/// rotated by 180° about `(b/2, c/2)`.
pub fn eta_polyline(ctx: &PsiContext, z: &CurveSpec, segments_per_turn: usize) -> Result<Polyline> {
    if segments_per_turn < 12 {
        return Err(Error::Resolution(segments_per_turn));
    }
    let (_, branch, rays, on_ray) = spiral_of(ctx, z)?;
    let s = (segments_per_turn as i128 + 9) / 4;
    let s = s + s % 2;
    let grid = direction_grid(s);
    let m = grid.len();
    let (b, c) = (z.b as i128, z.c as i128);
    let norm = b.abs() + c.abs();

    let step: isize = match branch {
        Some(Spiral::Clockwise) => -1,
        Some(Spiral::Counterclockwise) => 1,
        None => if det(grid[0], (b, c)) >= 0 { 1 } else { -1 },
    };
    let at = |i: isize| grid[i.rem_euclid(m as isize) as usize];
    let target_rays = rays;
    let mut dirs = vec![grid[0]];
    let mut crossed = 0usize;
    let mut i: isize = 0;
    loop {
        let cur = at(i);
        let nxt = at(i + step);
        let k = rays_between(cur, nxt);
        if crossed + k > target_rays {
            break;
        }
        if !on_ray && crossed == target_rays {
            let end = (b, c);
            let cur_to_end = det(cur, end) * step as i128;
            let nxt_to_end = det(nxt, end) * step as i128;
            if cur_to_end >= 0 && nxt_to_end <= 0 {
                break;
            }
        }
        crossed += k;
        i += step;
        dirs.push(nxt);
    }
    if crossed != target_rays {
        return Err(Error::Resolution(segments_per_turn));
    }
    let last = *dirs.last().expect("nonempty");
    let (end_raw, end_l1) = if on_ray {
        let e = (last.0 + s * b, last.1 + s * c);
        (e, e.0.abs() + e.1.abs())
    } else {
        ((b, c), norm)
    };
    let k_count = dirs.len() as i128;
    let den = 2 * norm * norm * (k_count + 1) * s * end_l1;
    let mut c1: Vec<(i128, i128)> = vec![(0, 0)];
    for (k, d) in dirs.iter().enumerate() {
        let f = (k as i128 + 1) * norm * end_l1;
        c1.push((f * d.0, f * d.1));
    }
    let ef = den / (2 * norm * end_l1);
    let end = (ef * end_raw.0, ef * end_raw.1);
    c1.push(end);
    let full = (b * den, c * den);
    let mid = (full.0 / 2, full.1 / 2);
    let mut vertices = c1.clone();
    vertices.push(mid);
    vertices.extend(c1.iter().rev().map(|p| (full.0 - p.0, full.1 - p.1)));
    let vertices = drop_collinear(vertices, mid);
    let poly = Polyline { den, vertices };
    let expected = eta_word(ctx, z)?;
    let got = crossing_word(&poly)?;
    if got != expected {
        return Err(Error::Invariant(format!("polyline for {z} crosses {got}, expected {expected}")));
    }
    Ok(poly)
}

fn drop_collinear(v: Vec<(i128, i128)>, keep: (i128, i128)) -> Vec<(i128, i128)> {
    let mut out: Vec<(i128, i128)> = Vec::with_capacity(v.len());
    for (idx, &p) in v.iter().enumerate() {
        if idx > 0 && idx + 1 < v.len() && p != keep {
            let a = *out.last().expect("nonempty");
            let q = v[idx + 1];
            let d1 = (p.0 - a.0, p.1 - a.1);
            let d2 = (q.0 - p.0, q.1 - p.1);
            if det(d1, d2) == 0 && d1.0 * d2.0 + d1.1 * d2.1 > 0 {
                continue;
            }
        }
        out.push(p);
    }
    out
}

/// Sequence of line-family crossings along a polyline, excluding its two endpoints.
pub fn crossing_word(p: &Polyline) -> Result<Word> {
    let den = p.den;
    let n_seg = p.vertices.len().saturating_sub(1);
    let mut letters = Vec::new();
    for (idx, (a, q)) in p.segments().enumerate() {
        let mut hits: Vec<(i128, i128, u8)> = Vec::new();
        for (letter, f) in [(1u8, (0i128, 1i128)), (2, (1, 1)), (3, (1, 0))] {
            let ga = f.0 * a.0 + f.1 * a.1;
            let gq = f.0 * q.0 + f.1 * q.1;
            if ga == gq {
                if ga.rem_euclid(den) == 0 {
                    return Err(Error::Invariant("polyline runs along a grid line".into()));
                }
                continue;
            }
            let (lo, hi) = (ga.min(gq), ga.max(gq));
            let first = lo.div_euclid(den) + 1;
            let last = hi.div_euclid(den);
            for k in first..=last {
                let num = k * den - ga;
                let dnm = gq - ga;
                let (num, dnm) = if dnm < 0 { (-num, -dnm) } else { (num, dnm) };
                let at_end = num == dnm;
                if at_end && idx + 1 == n_seg {
                    continue;
                }
                hits.push((num, dnm, letter));
            }
            if ga.rem_euclid(den) == 0 && idx == 0 {
                continue;
            }
        }
        hits.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        if hits.windows(2).any(|w| w[0].0 * w[1].1 == w[1].0 * w[0].1) {
            return Err(Error::Invariant("polyline passes through a lattice point".into()));
        }
        letters.extend(hits.into_iter().map(|h| h.2));
    }
    Word::new(letters)
}

type P = (i128, i128);

fn orient(a: P, b: P, c: P) -> i128 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_segment(a: P, b: P, p: P) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Intersection of two closed segments: `None`, a single point as a
/// rational `(x_num, y_num, den)`, or an overlap of positive length.
enum Meet {
    None,
    Point(i128, i128, i128),
    Overlap,
}

fn meet(a: P, b: P, c: P, d: P) -> Meet {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 == 0 && o2 == 0 {
        let pts: Vec<P> = [c, d].into_iter().filter(|&p| on_segment(a, b, p)).chain([a, b].into_iter().filter(|&p| on_segment(c, d, p))).collect();
        let mut uniq = pts.clone();
        uniq.sort_unstable();
        uniq.dedup();
        return match uniq.len() {
            0 => Meet::None,
            1 => Meet::Point(uniq[0].0, uniq[0].1, 1),
            _ => Meet::Overlap,
        };
    }
    let straddle = |x: i128, y: i128| (x >= 0 && y <= 0) || (x <= 0 && y >= 0);
    if !(straddle(o1, o2) && straddle(o3, o4)) {
        return Meet::None;
    }
    let denom = o1 - o2;
    let px = c.0 * (-o2) + d.0 * o1;
    let py = c.1 * (-o2) + d.1 * o1;
    let (px, py, denom) = if denom < 0 { (-px, -py, -denom) } else { (px, py, denom) };
    Meet::Point(px, py, denom)
}

fn is_lattice_point(x: i128, y: i128, den: i128, scale: i128) -> bool {
    let full = den * scale;
    x.rem_euclid(full) == 0 && y.rem_euclid(full) == 0
}

/// Counts self-intersections, in the plane or on the torus `ℝ²/ℤ²`.
/// Touching points of consecutive segments and contacts at lattice points
/// (the puncture) are not counted.
pub fn self_intersections(p: &Polyline, modulo_lattice: bool) -> usize {
    let segs: Vec<(P, P)> = p.segments().collect();
    let den = p.den;
    let mut count = 0;
    let bbox = |s: &(P, P)| (s.0 .0.min(s.1 .0), s.0 .0.max(s.1 .0), s.0 .1.min(s.1 .1), s.0 .1.max(s.1 .1));
    for i in 0..segs.len() {
        let bi = bbox(&segs[i]);
        for j in i..segs.len() {
            let bj = bbox(&segs[j]);
            let shifts: Vec<(i128, i128)> = if modulo_lattice {
                let tx_lo = (bi.0 - bj.1).div_euclid(den) + i128::from((bi.0 - bj.1).rem_euclid(den) != 0);
                let tx_hi = (bi.1 - bj.0).div_euclid(den);
                let ty_lo = (bi.2 - bj.3).div_euclid(den) + i128::from((bi.2 - bj.3).rem_euclid(den) != 0);
                let ty_hi = (bi.3 - bj.2).div_euclid(den);
                let mut v = Vec::new();
                for tx in tx_lo..=tx_hi {
                    for ty in ty_lo..=ty_hi {
                        v.push((tx, ty));
                    }
                }
                v
            } else {
                vec![(0, 0)]
            };
            for (tx, ty) in shifts {
                if i == j && (tx, ty) <= (0, 0) {
                    continue;
                }
                let (c, d) = segs[j];
                let c = (c.0 + tx * den, c.1 + ty * den);
                let d = (d.0 + tx * den, d.1 + ty * den);
                let (a, b) = segs[i];
                match meet(a, b, c, d) {
                    Meet::None => {}
                    Meet::Overlap => count += 1,
                    Meet::Point(x, y, s) => {
                        if is_lattice_point(x, y, den, s) {
                            continue;
                        }
                        if (tx, ty) == (0, 0) && j == i + 1 && (x, y) == (b.0 * s, b.1 * s) {
                            continue;
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Midpoint polyline of the triangle walk spelled by `w`, starting in the
/// lower-left triangle whose right-angle corner is the origin.
pub fn triangle_walk(w: &Word) -> Result<Polyline> {
    let l = w.letters();
    let first = *l.first().ok_or(Error::EmptyWord)?;
    w.check_rank(3)?;
    // (i, j, upper): the triangle of the unit square at (i, j), lower-left or upper-right half.
    let (mut i, mut j): (i64, i64) = match first {
        1 => (0, -1),
        2 => (0, 0),
        _ => (-1, 0),
    };
    let mut upper = false;
    let mut pts: Vec<(i128, i128)> = vec![(0, 0)];
    for &x in l {
        let mid = match (upper, x) {
            (false, 1) => (2 * i + 1, 2 * j),
            (false, 3) => (2 * i, 2 * j + 1),
            (true, 1) => (2 * i + 1, 2 * j + 2),
            (true, 3) => (2 * i + 2, 2 * j + 1),
            (_, _) => (2 * i + 1, 2 * j + 1),
        };
        pts.push((mid.0 as i128, mid.1 as i128));
        match (upper, x) {
            (false, 1) => j -= 1,
            (false, 3) => i -= 1,
            (true, 1) => j += 1,
            (true, 3) => i += 1,
            _ => {}
        }
        upper = !upper;
    }
    let last = *l.last().expect("nonempty");
    let corner = match (upper, last) {
        (true, 1) => (i + 1, j),
        (true, 3) => (i, j + 1),
        (true, _) => (i + 1, j + 1),
        (false, 1) => (i, j + 1),
        (false, 3) => (i + 1, j),
        (false, _) => (i, j),
    };
    pts.push((2 * corner.0 as i128, 2 * corner.1 as i128));
    Ok(Polyline { den: 2, vertices: pts })
}

/// Writes an SVG 1.1 figure: the three line families over the bounding box,
/// the curve in red and the crossing letters.
pub fn render_svg(p: &Polyline, title: &str, path: &Path) -> Result<()> {
    std::fs::write(path, svg_document(p, title)?)?;
    Ok(())
}

pub fn svg_document(p: &Polyline, title: &str) -> Result<String> {
    let pts = p.as_f64();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (gx0, gx1, gy0, gy1) = (x0.floor() as i64 - 1, x1.ceil() as i64 + 1, y0.floor() as i64 - 1, y1.ceil() as i64 + 1);
    let unit = 60.0;
    let w = (gx1 - gx0) as f64 * unit;
    let h = (gy1 - gy0) as f64 * unit;
    let sx = |x: f64| (x - gx0 as f64) * unit;
    let sy = |y: f64| (gy1 as f64 - y) * unit;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", xml_escape(title));
    let _ = writeln!(out, r##"<g stroke="#888" stroke-width="1">"##);
    for x in gx0..=gx1 {
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="0" x2="{:.2}" y2="{h:.2}"/>"#, sx(x as f64), sx(x as f64));
    }
    for y in gy0..=gy1 {
        let _ = writeln!(out, r#"<line x1="0" y1="{:.2}" x2="{w:.2}" y2="{:.2}"/>"#, sy(y as f64), sy(y as f64));
    }
    for k in (gx0 + gy0)..=(gx1 + gy1) {
        let (ax, ay) = (gx0 as f64, (k - gx0) as f64);
        let (bx, by) = (gx1 as f64, (k - gx1) as f64);
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, sx(ax), sy(ay), sx(bx), sy(by));
    }
    let _ = writeln!(out, "</g>");
    let mut d = String::new();
    for (k, &(x, y)) in pts.iter().enumerate() {
        let _ = write!(d, "{}{:.3},{:.3} ", if k == 0 { "M" } else { "L" }, sx(x), sy(y));
    }
    let _ = writeln!(out, r#"<path d="{}" fill="none" stroke="red" stroke-width="2"/>"#, d.trim_end());
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="11" fill="blue">"#);
    for (x, y, letter) in crossing_points(p)? {
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{letter}</text>"#, sx(x) + 3.0, sy(y) - 3.0);
    }
    let _ = writeln!(out, "</g>\n</svg>");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn crossing_points(p: &Polyline) -> Result<Vec<(f64, f64, u8)>> {
    let word = crossing_word(p)?;
    let mut out = Vec::new();
    let den = p.den as f64;
    let n_seg = p.vertices.len().saturating_sub(1);
    for (idx, (a, q)) in p.segments().enumerate() {
        let mut hits: Vec<(f64, u8)> = Vec::new();
        for (letter, f) in [(1u8, (0i128, 1i128)), (2, (1, 1)), (3, (1, 0))] {
            let ga = f.0 * a.0 + f.1 * a.1;
            let gq = f.0 * q.0 + f.1 * q.1;
            if ga == gq {
                continue;
            }
            let (lo, hi) = (ga.min(gq), ga.max(gq));
            for k in (lo.div_euclid(p.den) + 1)..=hi.div_euclid(p.den) {
                let t = (k * p.den - ga) as f64 / (gq - ga) as f64;
                if (t - 1.0).abs() < f64::EPSILON && idx + 1 == n_seg {
                    continue;
                }
                hits.push((t, letter));
            }
        }
        hits.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (t, letter) in hits {
            let x = (a.0 as f64 + t * (q.0 - a.0) as f64) / den;
            let y = (a.1 as f64 + t * (q.1 - a.1) as f64) / den;
            out.push((x, y, letter));
        }
    }
    debug_assert_eq!(out.len(), word.len());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PsiContext {
        PsiContext::two_complete(OrientationMode::Corrected)
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn z(a: i64, b: i64, c: i64) -> CurveSpec {
        CurveSpec::new(a, b, c).unwrap()
    }

    #[test]
    fn spirals() {
        assert_eq!(spiral_word(Spiral::Counterclockwise, 12), w("321321321321"));
        assert_eq!(spiral_word(Spiral::Clockwise, 2), w("12"));
        assert!(spiral_word(Spiral::Clockwise, 0).is_empty());
    }

    #[test]
    fn words_to_z() {
        let c = ctx();
        assert_eq!(word_to_z(&c, &w("3213213213212312")).unwrap(), z(-2, 5, 3));
        assert_eq!(word_to_z(&c, &w("21")).unwrap(), z(0, 1, 2));
        assert_eq!(word_to_z(&c, &w("2")).unwrap(), z(0, 1, 1));
        assert_eq!(word_to_z(&c, &w("1")).unwrap(), z(0, 1, 0));
        assert_eq!(word_to_z(&c, &w("1231231")).unwrap(), z(1, 1, 0));
        assert_eq!(word_to_z(&c, &w("321321")).unwrap(), z(-1, 1, 0));
    }

    #[test]
    fn z_to_words() {
        let c = ctx();
        assert_eq!(z_to_word(&c, &z(-2, 5, 3)).unwrap(), w("3213213213212312"));
        assert_eq!(z_to_word(&c, &z(0, 1, 2)).unwrap(), w("21"));
        assert_eq!(z_to_word(&c, &z(0, 1, 1)).unwrap(), w("2"));
        assert_eq!(z_to_word(&c, &z(1, 1, 0)).unwrap(), w("1231231"));
        assert!(CurveSpec::new(0, 2, 4).is_err());
    }

    #[test]
    fn eta_words() {
        let c = ctx();
        let expected = format!("{}2321232321232{}", "321".repeat(4), "123".repeat(4));
        assert_eq!(eta_word(&c, &z(-2, 5, 3)).unwrap(), w(&expected));
        assert_eq!(eta_word(&c, &z(0, 1, 2)).unwrap(), w("212"));
        assert_eq!(eta_word(&c, &z(0, 1, 1)).unwrap(), w("2"));
    }

    #[test]
    fn polylines() {
        let c = ctx();
        let diag = eta_polyline(&c, &z(0, 1, 1), 12).unwrap();
        assert_eq!(diag.vertices.len(), 3);
        let big = eta_polyline(&c, &z(-2, 5, 3), 12).unwrap();
        assert_eq!(crossing_word(&big).unwrap(), eta_word(&c, &z(-2, 5, 3)).unwrap());
        assert_eq!(self_intersections(&big, true), 0);
        let one = eta_polyline(&c, &z(1, 1, 0), 16).unwrap();
        let positive_axis = one
            .segments()
            .filter(|(a, b)| (a.1 > 0) != (b.1 > 0) && a.1 != b.1 && {
                let x_num = a.0 * (b.1 - a.1) - a.1 * (b.0 - a.0);
                x_num * (b.1 - a.1).signum() > 0
            })
            .count();
        assert!(positive_axis >= 1);
        assert!(eta_polyline(&c, &z(0, 1, 1), 8).is_err());
    }

    #[test]
    fn intersections() {
        let cross = Polyline::from_integer_points(&[(0, 0), (1, 1), (1, 0), (0, 1)]);
        assert_eq!(self_intersections(&cross, false), 1);
        let wrapped = Polyline { den: 10, vertices: vec![(1, 5), (9, 5), (15, 1), (15, 9)] };
        assert_eq!(self_intersections(&wrapped, false), 0);
        assert!(self_intersections(&wrapped, true) >= 1);
        let straight = eta_polyline(&ctx(), &z(0, 1, 2), 12).unwrap();
        assert_eq!(self_intersections(&straight, false), 0);
    }

    #[test]
    fn triangle_walks() {
        let p = triangle_walk(&w("23132")).unwrap();
        assert_eq!(*p.vertices.last().unwrap(), (6, 0));
        assert_eq!(crossing_word(&p).unwrap(), w("23132"));
    }
}
