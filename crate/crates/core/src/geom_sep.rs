//! Containment and intersection separation of `k`-subsets of a point set by
//! convex sets, in exact rational arithmetic.
//!
//! A convex set `C` only matters through `C ∩ X`, and `conv(C ∩ X) ⊆ C`
//! meets and contains exactly the same points of `X`. So the oracles range
//! over hull-closed point subsets ([`CanonicalConvexSet`]) without loss.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::{min_cover, CoverProblem};
use crate::setsystem::SubsetMask;
use crate::vc_tools::combinations;

pub type Point = Vec<BigRational>;

/// Largest point set accepted by [`min_geom_separator`].
pub const MAX_ORACLE_POINTS: usize = 10;
pub const MAX_POINTS: usize = crate::setsystem::MAX_ELEMENTS as usize;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| rat(c, 1)).collect()
}

/// Labeled points with exact coordinates, plus the tuple size `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    d: usize,
    points: Vec<Point>,
    k: usize,
}

impl PointConfig {
    pub fn new(d: usize, points: Vec<Point>, k: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if points.is_empty() || points.len() > MAX_POINTS {
            return Err(Error::SizeLimit(format!("need 1..={MAX_POINTS} points, got {}", points.len())));
        }
        if let Some(i) = points.iter().position(|p| p.len() != d) {
            return Err(Error::InvalidArgument(format!("point {i} does not have {d} coordinates")));
        }
        let distinct: BTreeSet<&Point> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidArgument("points must be distinct".into()));
        }
        if k == 0 || k > points.len() {
            return Err(Error::InvalidArgument(format!("k = {k} must be between 1 and {}", points.len())));
        }
        Ok(PointConfig { d, points, k })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        PointConfig::new(self.d, self.points.clone(), k)
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.n() as u32)
    }

    /// All `k`-subsets in lexicographic order.
    pub fn k_subsets(&self) -> Vec<SubsetMask> {
        combinations(self.n() as u32, self.k as u32)
    }

    fn select(&self, mask: SubsetMask) -> Vec<&Point> {
        mask.elements().map(|i| &self.points[i as usize]).collect()
    }

    /// No `d + 1` points on a common hyperplane.
    pub fn general_position(&self) -> bool {
        if self.n() <= self.d {
            return true;
        }
        combinations(self.n() as u32, self.d as u32 + 1).par_iter().all(|&s| orientation_of(&self.select(s)) != 0)
    }

    /// Labels of the points in `conv(generators)`.
    pub fn closure(&self, generators: SubsetMask) -> SubsetMask {
        let gens = self.select(generators);
        SubsetMask::from_elements(
            (0..self.n() as u32).filter(|&i| generators.contains(i) || in_hull_refs(&self.points[i as usize], &gens)),
        )
    }

    pub fn canonical(&self, generators: SubsetMask) -> CanonicalConvexSet {
        CanonicalConvexSet { generators, closure: self.closure(generators) }
    }
}

fn sub(a: &Point, b: &Point) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Gaussian elimination in place; returns the pivot columns and the sign
/// of the row permutation.
fn eliminate(m: &mut [Vec<BigRational>], cols: usize) -> (Vec<usize>, i8) {
    let mut pivots = Vec::new();
    let mut sign = 1i8;
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if p != row {
            m.swap(p, row);
            sign = -sign;
        }
        let pivot = m[row][col].clone();
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = &m[r][col] / &pivot;
                for c in col..m[r].len() {
                    let delta = &factor * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (pivots, sign)
}

fn det_sign(mut m: Vec<Vec<BigRational>>) -> i8 {
    let n = m.len();
    let (pivots, mut sign) = eliminate(&mut m, n);
    if pivots.len() < n {
        return 0;
    }
    for (i, row) in m.iter().enumerate() {
        if row[i].is_negative() {
            sign = -sign;
        }
    }
    sign
}

fn orientation_of(points: &[&Point]) -> i8 {
    let m = points.iter().map(|p| std::iter::once(BigRational::one()).chain(p.iter().cloned()).collect()).collect();
    det_sign(m)
}

/// Sign of `det [1 p_i]` over `d + 1` points of dimension `d`.
pub fn orientation(points: &[Point]) -> Result<i8> {
    let d = points.len().saturating_sub(1);
    if d == 0 || points.iter().any(|p| p.len() != d) {
        return Err(Error::InvalidArgument("orientation needs d + 1 points of dimension d".into()));
    }
    Ok(orientation_of(&points.iter().collect::<Vec<_>>()))
}

/// Barycentric coordinates of `p` over affinely independent `simplex`, or
/// `None` when the simplex is degenerate or `p` is off its affine hull.
fn barycentric(p: &Point, simplex: &[&Point]) -> Option<Vec<BigRational>> {
    let j = simplex.len() - 1;
    let d = p.len();
    let dirs: Vec<Point> = simplex[1..].iter().map(|t| sub(t, simplex[0])).collect();
    let rhs = sub(p, simplex[0]);
    // d equations in j unknowns, augmented
    let mut m: Vec<Vec<BigRational>> =
        (0..d).map(|r| dirs.iter().map(|v| v[r].clone()).chain(std::iter::once(rhs[r].clone())).collect()).collect();
    let (pivots, _) = eliminate(&mut m, j + 1);
    if pivots.len() != j || pivots.contains(&j) {
        return None;
    }
    let mut lambda = vec![BigRational::zero(); j + 1];
    for (r, &c) in pivots.iter().enumerate() {
        lambda[c + 1] = &m[r][j] / &m[r][c];
    }
    lambda[0] = BigRational::one() - lambda[1..].iter().fold(BigRational::zero(), |a, x| a + x);
    Some(lambda)
}

/// Is `p` a convex combination of at most `d + 1` affinely independent
/// generators?
fn in_hull_caratheodory(p: &Point, gens: &[&Point]) -> bool {
    let d = p.len();
    let n = gens.len() as u32;
    (1..=(d + 1).min(gens.len()) as u32).any(|size| {
        combinations(n, size).into_iter().any(|s| {
            let simplex: Vec<&Point> = s.elements().map(|i| gens[i as usize]).collect();
            barycentric(p, &simplex).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
        })
    })
}

fn orient2(a: &Point, b: &Point, c: &Point) -> i8 {
    let v = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Counter-clockwise hull vertices, collinear points dropped.
fn hull_2d<'a>(gens: &[&'a Point]) -> Vec<&'a Point> {
    let mut pts: Vec<&Point> = gens.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<&Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient2(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient2(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn in_hull_2d(p: &Point, gens: &[&Point]) -> bool {
    let h = hull_2d(gens);
    match h.len() {
        0 => false,
        1 => p == h[0],
        2 => {
            let (a, b) = (h[0], h[1]);
            orient2(a, b, p) == 0
                && (0..2).all(|i| {
                    let (lo, hi) = if a[i] <= b[i] { (&a[i], &b[i]) } else { (&b[i], &a[i]) };
                    lo <= &p[i] && &p[i] <= hi
                })
        }
        m => (0..m).all(|i| orient2(h[i], h[(i + 1) % m], p) >= 0),
    }
}

fn in_hull_refs(p: &Point, gens: &[&Point]) -> bool {
    if gens.is_empty() {
        return false;
    }
    if p.len() == 2 {
        in_hull_2d(p, gens)
    } else {
        in_hull_caratheodory(p, gens)
    }
}

/// Exact membership of `p` in `conv(generators)`.
pub fn in_hull(p: &Point, generators: &[Point]) -> bool {
    in_hull_refs(p, &generators.iter().collect::<Vec<_>>())
}

/// Dimension-independent membership test, for cross-checking the planar
/// fast path.
pub fn in_hull_general(p: &Point, generators: &[Point]) -> bool {
    in_hull_caratheodory(p, &generators.iter().collect::<Vec<_>>())
}

/// For every point, the minimal simplices of other points containing it.
#[derive(Clone, Debug)]
pub struct ClosureTable {
    simplices: Vec<Vec<SubsetMask>>,
}

impl ClosureTable {
    pub fn new(cfg: &PointConfig) -> Self {
        let n = cfg.n() as u32;
        let simplices = (0..n)
            .into_par_iter()
            .map(|i| {
                let p = cfg.point(i as usize);
                let mut found: Vec<SubsetMask> = Vec::new();
                for size in 1..=(cfg.d() as u32 + 1).min(n - 1) {
                    for s in combinations(n - 1, size) {
                        // skip over i itself
                        let low = s.0 & ((1 << i) - 1);
                        let high = (s.0 & !((1 << i) - 1)) << 1;
                        let t = SubsetMask(low | high);
                        if found.iter().any(|f| f.is_subset_of(t)) {
                            continue;
                        }
                        let simplex = cfg.select(t);
                        if barycentric(p, &simplex).is_some_and(|l| l.iter().all(|x| !x.is_negative())) {
                            found.push(t);
                        }
                    }
                }
                found
            })
            .collect();
        ClosureTable { simplices }
    }

    pub fn close(&self, mask: SubsetMask) -> SubsetMask {
        let extra = self
            .simplices
            .iter()
            .enumerate()
            .filter(|(_, ts)| ts.iter().any(|t| t.is_subset_of(mask)))
            .fold(SubsetMask::EMPTY, |acc, (i, _)| acc | SubsetMask::singleton(i as u32));
        mask | extra
    }
}

/// Convex hull of some points, kept with the labels it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalConvexSet {
    pub generators: SubsetMask,
    pub closure: SubsetMask,
}

/// Closed halfspace `normal · x ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    normal: Point,
    offset: BigRational,
}

impl HalfSpace {
    pub fn new(normal: Point, offset: BigRational) -> Result<Self> {
        if normal.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidArgument("halfspace normal must be nonzero".into()));
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> &BigRational {
        &self.offset
    }

    pub fn contains(&self, p: &Point) -> bool {
        dot(&self.normal, p) <= self.offset
    }

    pub fn opposite(&self) -> HalfSpace {
        HalfSpace { normal: self.normal.iter().map(|x| -x).collect(), offset: -&self.offset }
    }

    pub fn members(&self, cfg: &PointConfig) -> SubsetMask {
        SubsetMask::from_elements((0..cfg.n() as u32).filter(|&i| self.contains(cfg.point(i as usize))))
    }

    /// The halfspace `{x : normal · (P x) ≤ offset}` for a projection `P`
    /// given as rows.
    pub fn pull_back(&self, projection: &[Vec<BigRational>]) -> Result<HalfSpace> {
        let d = projection.first().map_or(0, |r| r.len());
        let normal = (0..d)
            .map(|c| projection.iter().zip(&self.normal).fold(BigRational::zero(), |a, (row, w)| a + &row[c] * w))
            .collect();
        HalfSpace::new(normal, self.offset.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexSet {
    Hull(CanonicalConvexSet),
    HalfSpace(HalfSpace),
}

impl ConvexSet {
    /// Labels of the configuration points inside the set.
    pub fn members(&self, cfg: &PointConfig) -> SubsetMask {
        match self {
            ConvexSet::Hull(c) => c.closure,
            ConvexSet::HalfSpace(h) => h.members(cfg),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Containment,
    Intersection,
}

#[inline]
fn separates_mask(inside: SubsetMask, a: SubsetMask, b: SubsetMask, mode: Mode) -> bool {
    match mode {
        Mode::Containment => a.is_subset_of(inside) != b.is_subset_of(inside),
        Mode::Intersection => !a.is_disjoint(inside) != !b.is_disjoint(inside),
    }
}

fn check_pair(a: SubsetMask, b: SubsetMask) -> Result<()> {
    if a == b {
        return Err(Error::InvalidArgument("the two subsets must differ".into()));
    }
    Ok(())
}

/// `c` contains exactly one of `a`, `b`.
pub fn containment_separates(cfg: &PointConfig, c: &ConvexSet, a: SubsetMask, b: SubsetMask) -> Result<bool> {
    check_pair(a, b)?;
    Ok(separates_mask(c.members(cfg), a, b, Mode::Containment))
}

/// `c` meets exactly one of `a`, `b`.
pub fn intersection_separates(cfg: &PointConfig, c: &ConvexSet, a: SubsetMask, b: SubsetMask) -> Result<bool> {
    check_pair(a, b)?;
    Ok(separates_mask(c.members(cfg), a, b, Mode::Intersection))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeomVerdict {
    Separating,
    Unseparated(SubsetMask, SubsetMask),
}

impl GeomVerdict {
    pub fn is_separating(self) -> bool {
        self == GeomVerdict::Separating
    }
}

/// Pairs of `k`-subsets whose hulls contain the same points; no convex set
/// containment-separates them.
pub fn inseparable_pairs(cfg: &PointConfig) -> Vec<(SubsetMask, SubsetMask)> {
    let table = ClosureTable::new(cfg);
    let ks = cfg.k_subsets();
    let closures: Vec<SubsetMask> = ks.iter().map(|&s| table.close(s)).collect();
    let mut out = Vec::new();
    for i in 0..ks.len() {
        for j in i + 1..ks.len() {
            if closures[i] == closures[j] {
                out.push((ks[i], ks[j]));
            }
        }
    }
    out
}

/// Checks every unordered pair of `k`-subsets, skipping in containment mode
/// the pairs with equal hull closure. The witness is the first failing pair
/// in lexicographic order.
pub fn verify_separator(cfg: &PointConfig, sets: &[ConvexSet], mode: Mode) -> GeomVerdict {
    let inside: Vec<SubsetMask> = sets.iter().map(|s| s.members(cfg)).collect();
    let ks = cfg.k_subsets();
    let closures: Option<Vec<SubsetMask>> = (mode == Mode::Containment).then(|| {
        let table = ClosureTable::new(cfg);
        ks.iter().map(|&s| table.close(s)).collect()
    });
    for i in 0..ks.len() {
        for j in i + 1..ks.len() {
            if closures.as_ref().is_some_and(|c| c[i] == c[j]) {
                continue;
            }
            if !inside.iter().any(|&c| separates_mask(c, ks[i], ks[j], mode)) {
                return GeomVerdict::Unseparated(ks[i], ks[j]);
            }
        }
    }
    GeomVerdict::Separating
}

/// Intervals `[x_1, x_i]` and `[x_i, x_n]` for `1 < i < n`, points sorted
/// along the line.
pub fn line_separator(cfg: &PointConfig) -> Result<Vec<CanonicalConvexSet>> {
    if cfg.d() != 1 || cfg.k() != 2 {
        return Err(Error::InvalidArgument("line separator needs d = 1 and k = 2".into()));
    }
    let n = cfg.n();
    if n < 4 {
        return Err(Error::InvalidArgument(format!("line separator needs n >= 4, got {n}")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cfg.point(a)[0].cmp(&cfg.point(b)[0]));
    let span = |lo: usize, hi: usize| {
        let generators = SubsetMask::from_elements([order[lo] as u32, order[hi] as u32]);
        let closure = SubsetMask::from_elements(order[lo..=hi].iter().map(|&i| i as u32));
        CanonicalConvexSet { generators, closure }
    };
    let mut sets: Vec<CanonicalConvexSet> = (1..n - 1).map(|i| span(0, i)).collect();
    sets.extend((1..n - 1).map(|i| span(i, n - 1)));
    Ok(sets)
}

/// Normal of the hyperplane through `d` affinely independent points of
/// dimension `d`, by cofactor expansion.
fn hyperplane_normal(points: &[&Point]) -> Point {
    let d = points[0].len();
    let rows: Vec<Point> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = det_value(minor);
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

fn det_value(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let (pivots, sign) = eliminate(&mut m, n);
    if pivots.len() < n {
        return BigRational::zero();
    }
    let prod = (0..n).fold(BigRational::one(), |a, i| a * &m[i][i]);
    if sign < 0 {
        -prod
    } else {
        prod
    }
}

/// Apply a projection given as rows.
pub fn project(cfg: &PointConfig, projection: &[Vec<BigRational>], k: usize) -> Result<PointConfig> {
    let pts = cfg.points().iter().map(|p| projection.iter().map(|row| dot(row, p)).collect()).collect();
    PointConfig::new(projection.len(), pts, k)
}

/// Deterministic projection to dimension `target` keeping the points
/// distinct and in general position.
pub fn generic_projection(cfg: &PointConfig, target: usize) -> Result<Vec<Vec<BigRational>>> {
    if target == 0 || target > cfg.d() {
        return Err(Error::InvalidArgument(format!("cannot project dimension {} to {target}", cfg.d())));
    }
    for shift in 0..1000i64 {
        let rows: Vec<Vec<BigRational>> =
            (0..target).map(|r| (0..cfg.d()).map(|c| rat((r as i64 + 1 + shift).pow(c as u32), 1)).collect()).collect();
        if let Ok(p) = project(cfg, &rows, 1) {
            if p.general_position() {
                return Ok(rows);
            }
        }
    }
    Err(Error::NotGeneralPosition)
}

/// Both closed sides of a hyperplane through each `(k-1)`-subset. When
/// `k - 1 < d` the hyperplanes come from a generic projection to dimension
/// `k - 1`, pulled back.
pub fn halfspace_separator(cfg: &PointConfig) -> Result<Vec<HalfSpace>> {
    let (d, k) = (cfg.d(), cfg.k());
    if k < 2 || k > d + 1 {
        return Err(Error::InvalidArgument(format!("halfspace separator needs 2 <= k <= d + 1, got k = {k}")));
    }
    if !cfg.general_position() {
        return Err(Error::NotGeneralPosition);
    }
    let (work, projection) = if k - 1 < d {
        let rows = generic_projection(cfg, k - 1)?;
        (project(cfg, &rows, k)?, Some(rows))
    } else {
        (cfg.clone(), None)
    };
    let mut out = Vec::new();
    for s in combinations(work.n() as u32, k as u32 - 1) {
        let pts = work.select(s);
        let normal = hyperplane_normal(&pts);
        let offset = dot(&normal, pts[0]);
        let h = HalfSpace::new(normal, offset)?;
        let h = match &projection {
            Some(rows) => h.pull_back(rows)?,
            None => h,
        };
        let o = h.opposite();
        out.push(h);
        out.push(o);
    }
    Ok(out)
}

/// Rational point on the unit circle, `((1-t²)/(1+t²), 2t/(1+t²))`.
pub fn circle_point(t: &BigRational) -> Point {
    let one = BigRational::one();
    let t2 = t * t;
    let den = &one + &t2;
    vec![(&one - &t2) / &den, (t + t) / &den]
}

fn scale(p: &Point, s: &BigRational) -> Point {
    p.iter().map(|x| x * s).collect()
}

/// `n` points `0, 1, ..., n-1` on a line, `k = 2`.
pub fn gen_collinear(n: usize) -> Result<PointConfig> {
    PointConfig::new(1, (0..n as i64).map(|i| int_point(&[i])).collect(), 2.min(n))
}

/// Points `(t, t², ..., t^d)` for `t = 1..=n`; always in general position.
pub fn gen_moment_curve(n: usize, d: usize, k: usize) -> Result<PointConfig> {
    let pts = (1..=n as i64).map(|t| (1..=d as u32).map(|e| rat(t.pow(e), 1)).collect()).collect();
    PointConfig::new(d, pts, k)
}

/// `n - 1` rational points on the unit circle in the first quadrant, in
/// order of increasing `x`, followed by `p = (1, 1)`.
pub fn gen_circle_apex(n: usize) -> Result<PointConfig> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("circle construction needs n >= 4, got {n}")));
    }
    let mut pts: Vec<Point> = (1..n as i64).rev().map(|j| circle_point(&rat(j, n as i64))).collect();
    pts.push(int_point(&[1, 1]));
    let cfg = PointConfig::new(2, pts, 2)?;
    assert!(cfg.general_position(), "circle construction is degenerate");
    Ok(cfg)
}

/// Number of outer points of [`gen_diameter_fan`].
pub fn fan_outer_count(n: usize) -> usize {
    2 * (n / 4)
}

/// `2⌊n/4⌋` outer points in antipodal pairs (labels `2j`, `2j+1`), then
/// inner points near the segment from the origin to `(1/8, 1/16)`.
pub fn gen_diameter_fan(n: usize) -> Result<PointConfig> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!("diameter construction needs n >= 8, got {n}")));
    }
    let outer = fan_outer_count(n);
    let half = (outer / 2) as i64;
    let mut pts = Vec::new();
    for j in 0..half {
        // t = j/(half-j) spreads the diameters over the half circle
        let u = circle_point(&rat(j, half - j));
        let v = scale(&u, &-BigRational::one());
        pts.push(u);
        pts.push(v);
    }
    let l = (n - outer) as i64;
    for i in 1..=l {
        let x = rat(i, 8 * l);
        let y = rat(i, 16 * l) + rat(i * i, 1_000_000);
        pts.push(vec![x, y]);
    }
    let cfg = PointConfig::new(2, pts, 3)?;
    assert!(cfg.general_position(), "diameter construction is degenerate");
    assert!(fan_interior_violations(&cfg, outer).is_empty(), "inner point outside two diameters");
    Ok(cfg)
}

/// `(a, b, i)` such that inner point `i` is not inside the hull of
/// diameters `a < b`.
pub fn fan_interior_violations(cfg: &PointConfig, outer: usize) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for a in 0..outer / 2 {
        for b in a + 1..outer / 2 {
            let quad: Vec<Point> = [2 * a, 2 * a + 1, 2 * b, 2 * b + 1].iter().map(|&i| cfg.point(i).clone()).collect();
            for i in outer..cfg.n() {
                if !in_hull(cfg.point(i), &quad) {
                    bad.push((a, b, i));
                }
            }
        }
    }
    bad
}

/// Triples `p_i, q_i, r_i` for `i < n/3`: `p_i` just inside the unit circle
/// in direction `u_i`, `q_i` and `r_i` on the circle on either side of it.
pub fn gen_polar_triples(n: usize) -> Result<PointConfig> {
    if n < 6 || !n.is_multiple_of(3) {
        return Err(Error::InvalidArgument(format!("polar construction needs n >= 6 divisible by 3, got {n}")));
    }
    let m = (n / 3) as i64;
    let eps = rat(1, 100);
    let delta = rat(1, 100 * m * m);
    let mut pts = Vec::new();
    for i in 0..m {
        let t = rat(i, 2 * m);
        pts.push(scale(&circle_point(&t), &(BigRational::one() - &eps)));
        pts.push(circle_point(&(&t + &delta)));
        pts.push(circle_point(&(&t - &delta)));
    }
    let cfg = PointConfig::new(2, pts, 2)?;
    assert!(cfg.general_position(), "polar construction is degenerate");
    Ok(cfg)
}

/// Exact minimum over hull-closed candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomMinimum {
    pub size: usize,
    pub sets: Vec<CanonicalConvexSet>,
    /// Containment mode only: pairs no convex set separates.
    pub inseparable: Vec<(SubsetMask, SubsetMask)>,
    pub n_candidates: usize,
    pub n_requirements: usize,
}

/// Every distinct nonempty hull closure, ascending.
pub fn canonical_candidates(cfg: &PointConfig) -> Vec<CanonicalConvexSet> {
    let table = ClosureTable::new(cfg);
    let closed: BTreeSet<SubsetMask> = (1u32..1 << cfg.n())
        .into_par_iter()
        .map(|s| table.close(SubsetMask(s)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    closed.into_iter().map(|c| CanonicalConvexSet { generators: c, closure: c }).collect()
}

/// Fewest canonical convex sets separating all pairs of `k`-subsets.
/// In containment mode pairs with equal hull closure are set aside, or
/// rejected when `strict`.
pub fn min_geom_separator(cfg: &PointConfig, mode: Mode, strict: bool, max_size: usize) -> Result<GeomMinimum> {
    if cfg.n() > MAX_ORACLE_POINTS {
        return Err(Error::SizeLimit(format!("geometric oracle handles at most {MAX_ORACLE_POINTS} points")));
    }
    let table = ClosureTable::new(cfg);
    let ks = cfg.k_subsets();
    let closures: Vec<SubsetMask> = ks.iter().map(|&s| table.close(s)).collect();
    let mut pairs = Vec::new();
    let mut inseparable = Vec::new();
    for i in 0..ks.len() {
        for j in i + 1..ks.len() {
            if mode == Mode::Containment && closures[i] == closures[j] {
                inseparable.push((ks[i], ks[j]));
            } else {
                pairs.push((ks[i], ks[j]));
            }
        }
    }
    if strict {
        if let Some(&(a, b)) = inseparable.first() {
            return Err(Error::Inseparable { a, b });
        }
    }
    let candidates = canonical_candidates(cfg);
    let problem = CoverProblem::from_fn(pairs.len(), candidates.len(), |c, r| {
        separates_mask(candidates[c].closure, pairs[r].0, pairs[r].1, mode)
    });
    let cover = min_cover(&problem, max_size)?;
    Ok(GeomMinimum {
        size: cover.size(),
        sets: cover.members.iter().map(|&i| candidates[i].clone()).collect(),
        inseparable,
        n_candidates: candidates.len(),
        n_requirements: pairs.len(),
    })
}

/// One singleton per point but the last: intersection-separates any two
/// distinct `k`-subsets.
pub fn singleton_separator(cfg: &PointConfig) -> Vec<CanonicalConvexSet> {
    (0..cfg.n() as u32 - 1)
        .map(|i| {
            let s = SubsetMask::singleton(i);
            CanonicalConvexSet { generators: s, closure: s }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Point {
        int_point(c)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])]).unwrap(), 1);
        assert_eq!(orientation(&[p(&[0, 0]), p(&[1, 1]), p(&[2, 2])]).unwrap(), 0);
        assert_eq!(orientation(&[p(&[1, 0]), p(&[0, 0]), p(&[0, 1])]).unwrap(), -1);
        assert_eq!(orientation(&[p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[0, 0, 1])]).unwrap(), 1);
        assert!(orientation(&[p(&[0, 0]), p(&[1, 0])]).is_err());
    }

    #[test]
    fn hull_examples() {
        let gens = vec![p(&[0, 0]), p(&[4, 0]), p(&[0, 4])];
        assert!(in_hull(&p(&[0, 0]), &gens));
        assert!(in_hull(&p(&[2, 0]), &gens));
        assert!(in_hull(&p(&[1, 1]), &gens));
        assert!(!in_hull(&p(&[3, 3]), &gens));
        assert!(!in_hull(&p(&[1, 1]), &[]));
        let seg = vec![p(&[0, 0]), p(&[2, 2])];
        assert!(in_hull(&p(&[1, 1]), &seg));
        assert!(!in_hull(&p(&[3, 3]), &seg));
        let tet = vec![p(&[0, 0, 0]), p(&[4, 0, 0]), p(&[0, 4, 0]), p(&[0, 0, 4])];
        assert!(in_hull(&p(&[1, 1, 1]), &tet));
        assert!(!in_hull(&p(&[2, 2, 1]), &tet));
    }

    #[test]
    fn planar_and_general_hulls_agree() {
        let cfg = gen_circle_apex(7).unwrap();
        let table = ClosureTable::new(&cfg);
        for s in 1u32..1 << cfg.n() {
            let gens: Vec<Point> = SubsetMask(s).elements().map(|i| cfg.point(i as usize).clone()).collect();
            let mut direct = SubsetMask::EMPTY;
            for i in 0..cfg.n() {
                let a = in_hull(cfg.point(i), &gens);
                assert_eq!(a, in_hull_general(cfg.point(i), &gens));
                if a {
                    direct = direct | SubsetMask::singleton(i as u32);
                }
            }
            assert_eq!(table.close(SubsetMask(s)), direct);
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let cfg = gen_diameter_fan(8).unwrap();
        let table = ClosureTable::new(&cfg);
        for s in 0u32..1 << cfg.n() {
            let c = table.close(SubsetMask(s));
            assert!(SubsetMask(s).is_subset_of(c));
            assert_eq!(table.close(c), c);
            for e in 0..cfg.n() as u32 {
                assert!(c.is_subset_of(table.close(SubsetMask(s) | SubsetMask::singleton(e))));
            }
        }
    }

    #[test]
    fn separation_predicates() {
        let cfg = gen_collinear(5).unwrap();
        let a = SubsetMask::from_elements([0, 1]);
        let b = SubsetMask::from_elements([0, 4]);
        let c = ConvexSet::Hull(cfg.canonical(a));
        assert!(containment_separates(&cfg, &c, a, b).unwrap());
        let all = ConvexSet::Hull(cfg.canonical(cfg.full_mask()));
        assert!(!containment_separates(&cfg, &all, a, b).unwrap());
        assert!(!intersection_separates(&cfg, &all, a, b).unwrap());
        let one = ConvexSet::Hull(cfg.canonical(SubsetMask::singleton(1)));
        assert!(intersection_separates(&cfg, &one, a, b).unwrap());
        let far = ConvexSet::Hull(cfg.canonical(SubsetMask::singleton(3)));
        assert!(!intersection_separates(&cfg, &far, a, b).unwrap());
        assert!(containment_separates(&cfg, &c, a, a).is_err());
    }

    #[test]
    fn equal_hull_triples_never_separated() {
        // 4 = interior point of triangle 0 1 2; {0,1,2} and ... share a closure
        let pts = vec![p(&[0, 0]), p(&[6, 0]), p(&[0, 6]), p(&[1, 1]), p(&[2, 1])];
        let cfg = PointConfig::new(2, pts, 3).unwrap();
        let pairs = inseparable_pairs(&cfg);
        assert!(pairs.is_empty(), "distinct triangles in general position differ");
        let cfg4 = cfg.with_k(4).unwrap();
        let pairs = inseparable_pairs(&cfg4);
        assert!(!pairs.is_empty());
        let (a, b) = pairs[0];
        let cands = canonical_candidates(&cfg4);
        assert!(cands.iter().all(|c| !separates_mask(c.closure, a, b, Mode::Containment)));
    }

    #[test]
    fn line_separator_examples() {
        for n in 4..=7 {
            let cfg = gen_collinear(n).unwrap();
            let sets = line_separator(&cfg).unwrap();
            assert_eq!(sets.len(), 2 * n - 4);
            let sets: Vec<ConvexSet> = sets.into_iter().map(ConvexSet::Hull).collect();
            assert!(verify_separator(&cfg, &sets, Mode::Containment).is_separating());
        }
        assert!(line_separator(&gen_collinear(3).unwrap()).is_err());
    }

    #[test]
    fn empty_list_fails() {
        let cfg = gen_collinear(4).unwrap();
        assert!(!verify_separator(&cfg, &[], Mode::Containment).is_separating());
    }

    #[test]
    fn halfspace_separator_examples() {
        for (n, d, k) in [(5, 2, 3), (6, 2, 3), (5, 3, 4), (6, 2, 2), (5, 3, 2), (5, 3, 3)] {
            let cfg = gen_moment_curve(n, d, k).unwrap();
            let hs = halfspace_separator(&cfg).unwrap();
            assert_eq!(hs.len() as u64, 2 * crate::vc_tools::binomial(n as u64, k as u64 - 1));
            let sets: Vec<ConvexSet> = hs.into_iter().map(ConvexSet::HalfSpace).collect();
            assert_eq!(verify_separator(&cfg, &sets, Mode::Containment), GeomVerdict::Separating, "{n} {d} {k}");
        }
        let degenerate = PointConfig::new(2, vec![p(&[0, 0]), p(&[1, 1]), p(&[2, 2]), p(&[0, 1])], 3).unwrap();
        assert_eq!(halfspace_separator(&degenerate), Err(Error::NotGeneralPosition));
    }

    #[test]
    fn generators_are_well_formed() {
        let c = gen_circle_apex(6).unwrap();
        assert_eq!(c.n(), 6);
        assert_eq!(c.point(5), &p(&[1, 1]));
        assert!(c.points()[..5].windows(2).all(|w| w[0][0] < w[1][0]));
        for q in &c.points()[..5] {
            assert_eq!(&q[0] * &q[0] + &q[1] * &q[1], BigRational::one());
            assert!(q[0].is_positive() && q[1].is_positive());
        }
        let f = gen_diameter_fan(8).unwrap();
        assert_eq!((f.n(), f.k()), (8, 3));
        assert!(fan_interior_violations(&f, 4).is_empty());
        let t = gen_polar_triples(9).unwrap();
        assert_eq!(t.n(), 9);
        assert!(gen_polar_triples(10).is_err());
    }

    #[test]
    fn geom_oracle_small() {
        let r = min_geom_separator(&gen_collinear(4).unwrap(), Mode::Containment, true, 10).unwrap();
        assert_eq!(r.size, 4);
        let cfg = gen_moment_curve(5, 2, 2).unwrap();
        let r = min_geom_separator(&cfg, Mode::Intersection, true, 10).unwrap();
        assert!(r.size <= 4);
        let sets: Vec<ConvexSet> = r.sets.into_iter().map(ConvexSet::Hull).collect();
        assert!(verify_separator(&cfg, &sets, Mode::Intersection).is_separating());
        let r = min_geom_separator(&cfg, Mode::Containment, true, 10).unwrap();
        assert!((1..=6).contains(&r.size));
    }

    #[test]
    fn singletons_intersection_separate() {
        let cfg = gen_polar_triples(6).unwrap();
        let sets: Vec<ConvexSet> = singleton_separator(&cfg).into_iter().map(ConvexSet::Hull).collect();
        assert!(verify_separator(&cfg, &sets, Mode::Intersection).is_separating());
    }

    #[test]
    fn pull_back_matches_projection() {
        let cfg = gen_moment_curve(6, 3, 2).unwrap();
        let rows = generic_projection(&cfg, 2).unwrap();
        let low = project(&cfg, &rows, 2).unwrap();
        let h = HalfSpace::new(vec![rat(1, 1), rat(-2, 3)], rat(5, 1)).unwrap();
        let up = h.pull_back(&rows).unwrap();
        assert_eq!(h.members(&low), up.members(&cfg));
    }
}
