//! Voronoi cells: exact vertex enumeration by incremental halfspace
//! insertion (double description with the combinatorial adjacency test),
//! exact covering radii and deep holes, and a randomized lower-bound mode
//! for dimensions beyond the exact cap.

use num::bigint::BigInt;
use num::traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::enumerate::{closest_vector, points_within, relevant_vectors};
use crate::error::Error;
use crate::lattice::Lattice;
use crate::qmat::QMat;
use crate::rational::{frac, Rat};

/// Point attaining (exact mode) or witnessing a lower bound for (heuristic
/// mode) the covering radius.
#[derive(Debug, Clone)]
pub struct DeepHole {
    /// Rational coordinates in the lattice's frame.
    pub point: Vec<Rat>,
    /// Squared distance from the point to the lattice.
    pub dist_sq: Rat,
    /// Lattice points at exactly that distance (exact mode: >= n+1).
    pub witnesses: Vec<Vec<i64>>,
    /// True when produced by exhaustive Voronoi vertex enumeration; false
    /// means `dist_sq` is only a certified lower bound on μ².
    pub exact: bool,
}

const TIGHT_WORDS: usize = 4;

/// Bitset over constraint indices (capacity 256).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightSet([u64; TIGHT_WORDS]);

impl TightSet {
    fn empty() -> Self {
        TightSet([0; TIGHT_WORDS])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    fn intersect(&self, other: &TightSet) -> TightSet {
        let mut w = [0u64; TIGHT_WORDS];
        for k in 0..TIGHT_WORDS {
            w[k] = self.0[k] & other.0[k];
        }
        TightSet(w)
    }

    fn union(&self, other: &TightSet) -> TightSet {
        let mut w = [0u64; TIGHT_WORDS];
        for k in 0..TIGHT_WORDS {
            w[k] = self.0[k] | other.0[k];
        }
        TightSet(w)
    }

    fn is_subset_of(&self, other: &TightSet) -> bool {
        (0..TIGHT_WORDS).all(|k| self.0[k] & !other.0[k] == 0)
    }

    pub fn iter_indices(&self, max: usize) -> impl Iterator<Item = usize> + '_ {
        (0..max).filter(move |&i| self.contains(i))
    }
}

/// A halfspace 2⟨z, v⟩_G <= ⟨v, v⟩_G from a lattice vector v, stored as
/// aᵀz <= b with a = 2Gv.
#[derive(Debug, Clone)]
pub struct Halfspace {
    pub vector: Vec<i64>,
    pub normal: Vec<Rat>,
    pub rhs: Rat,
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub point: Vec<Rat>,
    pub tight: TightSet,
}

/// Exact V- and H-representation of a Voronoi cell in lattice coordinates.
#[derive(Debug, Clone)]
pub struct VoronoiCell {
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<Vertex>,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b.iter())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn halfspace_from_vector(gram: &QMat, v: &[i64]) -> Halfspace {
    let vr: Vec<Rat> = v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect();
    let gv = gram.mul_vec(&vr);
    let rhs = dot(&vr, &gv);
    let normal: Vec<Rat> = gv.iter().map(|x| x * crate::rational::rat(2)).collect();
    Halfspace {
        vector: v.to_vec(),
        normal,
        rhs,
    }
}

/// Computes all vertices of the polytope {z : constraints}, starting from
/// the bounded parallelepiped given by the first 2n (basis) constraints.
fn dd_vertices(n: usize, halfspaces: &[Halfspace], gram: &QMat) -> Result<Vec<Vertex>, Error> {
    if halfspaces.len() > TIGHT_WORDS * 64 {
        return Err(Error::VertexEnumerationOverflow);
    }
    // Initial box: constraints 0..2n are ±e_j halfspaces; vertices satisfy
    // (G z)_j = ±G_jj / 2 for all j.
    let g_inv = gram.inverse().expect("positive definite");
    let mut vertices: Vec<Vertex> = Vec::new();
    for mask in 0u64..(1 << n) {
        let w: Vec<Rat> = (0..n)
            .map(|j| {
                let half = &gram[(j, j)] * frac(1, 2);
                if (mask >> j) & 1 == 1 {
                    half
                } else {
                    -half
                }
            })
            .collect();
        let point = g_inv.mul_vec(&w);
        let mut tight = TightSet::empty();
        for j in 0..n {
            // constraint order below: 2j = +e_j, 2j+1 = -e_j
            if (mask >> j) & 1 == 1 {
                tight.insert(2 * j);
            } else {
                tight.insert(2 * j + 1);
            }
        }
        vertices.push(Vertex { point, tight });
    }

    for (ci, hs) in halfspaces.iter().enumerate().skip(2 * n) {
        let mut inside: Vec<Vertex> = Vec::new();
        let mut outside: Vec<Vertex> = Vec::new();
        for mut v in vertices.drain(..) {
            let s = dot(&hs.normal, &v.point) - &hs.rhs;
            if s.is_zero() {
                v.tight.insert(ci);
                inside.push(v);
            } else if s < Rat::zero() {
                inside.push(v);
            } else {
                outside.push(v);
            }
        }
        if outside.is_empty() {
            vertices = inside;
            continue;
        }
        // New vertices on edges between inside and outside vertices;
        // adjacency via the combinatorial test against the full list.
        let mut new_pts: std::collections::BTreeMap<Vec<Rat>, TightSet> =
            std::collections::BTreeMap::new();
        for u in &inside {
            for w in &outside {
                let t = u.tight.intersect(&w.tight);
                let is_edge = inside
                    .iter()
                    .chain(outside.iter())
                    .filter(|x| x.point != u.point && x.point != w.point)
                    .all(|x| !t.is_subset_of(&x.tight));
                if !is_edge {
                    continue;
                }
                let su = dot(&hs.normal, &u.point) - &hs.rhs; // < 0 or = 0
                let sw = dot(&hs.normal, &w.point) - &hs.rhs; // > 0
                if su.is_zero() {
                    continue; // u itself lies on the hyperplane
                }
                let t_param = &su / (&su - &sw); // in (0,1)
                let point: Vec<Rat> = u
                    .point
                    .iter()
                    .zip(w.point.iter())
                    .map(|(a, b)| a + (b - a) * &t_param)
                    .collect();
                let mut tight = t;
                tight.insert(ci);
                new_pts
                    .entry(point)
                    .and_modify(|existing| *existing = existing.union(&tight))
                    .or_insert(tight);
            }
        }
        vertices = inside;
        for (point, tight) in new_pts {
            vertices.push(Vertex { point, tight });
        }
    }
    // Deterministic order.
    vertices.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(vertices)
}

/// Exact Voronoi cell of a lattice (dimension capped by the config).
pub fn voronoi_cell(lattice: &Lattice, cfg: &RunConfig) -> Result<VoronoiCell, Error> {
    let n = lattice.dim();
    if n > cfg.exact_voronoi_dim {
        return Err(Error::VertexEnumerationOverflow);
    }
    let relevant = relevant_vectors(lattice, cfg)?;
    let gram = lattice.gram();
    let mut halfspaces: Vec<Halfspace> = Vec::new();
    // Box constraints from ±basis vectors (valid but possibly redundant).
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        halfspaces.push(halfspace_from_vector(gram, &e));
        e[j] = -1;
        halfspaces.push(halfspace_from_vector(gram, &e));
    }
    for rv in &relevant {
        if halfspaces.iter().any(|h| h.vector == rv.coords) {
            continue;
        }
        halfspaces.push(halfspace_from_vector(gram, &rv.coords));
    }
    let vertices = dd_vertices(n, &halfspaces, gram)?;
    Ok(VoronoiCell {
        halfspaces,
        vertices,
    })
}

/// Exact covering radius: μ² = max over Voronoi-cell vertices of |z|²_G.
pub fn covering_radius(lattice: &Lattice, cfg: &RunConfig) -> Result<DeepHole, Error> {
    if lattice.dim() <= cfg.exact_voronoi_dim {
        covering_radius_exact(lattice, cfg)
    } else {
        covering_radius_lower_bound(lattice, cfg)
    }
}

fn covering_radius_exact(lattice: &Lattice, cfg: &RunConfig) -> Result<DeepHole, Error> {
    let cell = voronoi_cell(lattice, cfg)?;
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for v in &cell.vertices {
        let d = lattice.norm_sq(&v.point);
        match &best {
            Some((bd, bp)) => {
                if d > *bd || (d == *bd && v.point < *bp) {
                    best = Some((d, v.point.clone()));
                }
            }
            None => best = Some((d, v.point.clone())),
        }
    }
    let (dist_sq, point) = best.expect("cell has vertices");
    let witnesses: Vec<Vec<i64>> = points_within(lattice, &point, &dist_sq, cfg)?
        .into_iter()
        .filter(|(_, d)| *d == dist_sq)
        .map(|(x, _)| x)
        .collect();
    debug_assert!(witnesses.len() >= lattice.dim() + 1);
    Ok(DeepHole {
        point,
        dist_sq,
        witnesses,
        exact: true,
    })
}

/// Randomized deep-hole search: random rational starts refined by local
/// moves, every candidate distance verified by exact CVP. The result is a
/// certified lower bound on μ², never presented as exact.
fn covering_radius_lower_bound(lattice: &Lattice, cfg: &RunConfig) -> Result<DeepHole, Error> {
    let n = lattice.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    let starts = 12;
    let denom = 64i64;
    for _ in 0..starts {
        let mut t: Vec<Rat> = (0..n)
            .map(|_| frac(rng.gen_range(0..denom), denom))
            .collect();
        let (_, mut d) = closest_vector(lattice, &t, cfg)?;
        // Coordinate-wise refinement with shrinking steps.
        for k in 1..=4 {
            let step = frac(1, 4 * k);
            let mut improved = true;
            while improved {
                improved = false;
                for j in 0..n {
                    for dir in [1i64, -1] {
                        let mut cand = t.clone();
                        cand[j] = &cand[j] + &step * crate::rational::rat(dir);
                        let (_, dc) = closest_vector(lattice, &cand, cfg)?;
                        if dc > d {
                            t = cand;
                            d = dc;
                            improved = true;
                        }
                    }
                }
            }
        }
        match &best {
            Some((bd, _)) if *bd >= d => {}
            _ => best = Some((d, t)),
        }
    }
    let (dist_sq, point) = best.expect("at least one start");
    let witnesses: Vec<Vec<i64>> = points_within(lattice, &point, &dist_sq, cfg)?
        .into_iter()
        .filter(|(_, d)| *d == dist_sq)
        .map(|(x, _)| x)
        .collect();
    Ok(DeepHole {
        point,
        dist_sq,
        witnesses,
        exact: false,
    })
}

/// Exact Euclidean volume of the cell in the coordinate frame; equals 1 for
/// a correct Voronoi cell (the ambient volume is det Λ). Exposed for the
/// test suite's independent cross-check of `relevant_vectors`.
pub fn cell_coordinate_volume(cell: &VoronoiCell, n: usize) -> Rat {
    let mut total = Rat::zero();
    let nconstraints = cell.halfspaces.len();
    for ci in 0..nconstraints {
        let face: Vec<&Vertex> = cell
            .vertices
            .iter()
            .filter(|v| v.tight.contains(ci))
            .collect();
        if face.len() < n {
            continue;
        }
        let pts: Vec<Vec<Rat>> = face.iter().map(|v| v.point.clone()).collect();
        if affine_dim(&pts) != n - 1 {
            continue; // redundant constraint touching a lower-dim face
        }
        for simplex in triangulate(&pts, n - 1) {
            // simplex has n vertices; apex at the origin
            let m = QMat::from_fn(n, n, |i, j| simplex[j][i].clone());
            let mut vol = m.det();
            if vol < Rat::zero() {
                vol = -vol;
            }
            total += vol;
        }
    }
    let mut factorial = Rat::one();
    for k in 1..=n {
        factorial *= crate::rational::rat(k as i64);
    }
    total / factorial
}

fn affine_dim(pts: &[Vec<Rat>]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let base = &pts[0];
    let m = QMat::from_fn(pts.len() - 1, base.len(), |i, j| &pts[i + 1][j] - &base[j]);
    m.rank()
}

/// Fan triangulation of a d-dimensional polytope given by its vertices
/// (all lying in a common affine d-flat): returns (d+1)-tuples of points.
fn triangulate(pts: &[Vec<Rat>], d: usize) -> Vec<Vec<Vec<Rat>>> {
    if d == 0 {
        return vec![vec![pts[0].clone()]];
    }
    if pts.len() == d + 1 {
        return vec![pts.to_vec()];
    }
    // Base vertex: lexicographically smallest.
    let base = pts.iter().min().unwrap().clone();
    // Subfaces = maximal proper faces of this polytope. Recover them from
    // supporting hyperplanes spanned by d of the points... use a simpler
    // combinatorial route: supporting halfspaces in the affine hull.
    let mut out = Vec::new();
    for facet in polytope_facets(pts, d) {
        if facet.iter().any(|p| *p == base) {
            continue;
        }
        for mut simplex in triangulate(&facet, d - 1) {
            simplex.push(base.clone());
            out.push(simplex);
        }
    }
    out
}

/// Facets (as vertex lists) of the polytope conv(pts) inside its affine
/// hull of dimension d. Brute force over supporting hyperplanes spanned by
/// subsets of points; adequate for the small cells handled here.
fn polytope_facets(pts: &[Vec<Rat>], d: usize) -> Vec<Vec<Vec<Rat>>> {
    use std::collections::BTreeSet;
    let m = pts.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut facets = Vec::new();
    // Coordinates within the affine hull: use base point and a basis of the
    // hull to express everything in d dims.
    let base = &pts[0];
    let diffs = QMat::from_fn(m - 1, base.len(), |i, j| &pts[i + 1][j] - &base[j]);
    let (rref, pivots) = diffs.transpose().rref();
    let _ = rref;
    // pivot rows of diffsᵀ give d independent directions
    let dirs: Vec<Vec<Rat>> = pivots
        .iter()
        .map(|&c| (0..base.len()).map(|r| diffs[(c, r)].clone()).collect())
        .collect();
    debug_assert_eq!(dirs.len(), d);
    // Gram-free local coordinates: solve least squares via the dir matrix.
    let dmat = QMat::from_fn(base.len(), d, |i, j| dirs[j][i].clone());
    let dtd = dmat.transpose().mul(&dmat);
    let dtd_inv = dtd.inverse().expect("independent directions");
    let local = |p: &Vec<Rat>| -> Vec<Rat> {
        let rel: Vec<Rat> = p.iter().zip(base.iter()).map(|(a, b)| a - b).collect();
        dtd_inv.mul_vec(&dmat.transpose().mul_vec(&rel))
    };
    let locals: Vec<Vec<Rat>> = pts.iter().map(local).collect();
    // Every facet is the face where some supporting linear functional is
    // maximal; candidate functionals come from (d-1)-subsets spanning a
    // hyperplane in local coords.
    let idx: Vec<usize> = (0..m).collect();
    for combo in combinations(&idx, d) {
        // hyperplane through these d local points (if affinely independent)
        let p0 = &locals[combo[0]];
        let a = QMat::from_fn(d - 1, d, |i, j| &locals[combo[i + 1]][j] - &p0[j]);
        if a.rank() != d - 1 {
            continue;
        }
        let normal_mat = a.kernel();
        if normal_mat.cols() != 1 {
            continue;
        }
        let normal: Vec<Rat> = (0..d).map(|i| normal_mat[(i, 0)].clone()).collect();
        let c0 = dot(&normal, p0);
        let mut pos = false;
        let mut neg = false;
        for l in &locals {
            let s = dot(&normal, l) - &c0;
            if s > Rat::zero() {
                pos = true;
            } else if s < Rat::zero() {
                neg = true;
            }
        }
        if pos && neg {
            continue; // not supporting
        }
        let members: Vec<usize> = (0..m)
            .filter(|&i| dot(&normal, &locals[i]) == c0)
            .collect();
        if members.len() < d {
            continue;
        }
        let member_pts: Vec<Vec<Rat>> = members.iter().map(|&i| pts[i].clone()).collect();
        if affine_dim(&member_pts) != d - 1 {
            continue;
        }
        if seen.insert(members.clone()) {
            facets.push(member_pts);
        }
    }
    facets
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, combo: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if combo.len() == k {
            out.push(combo.clone());
            return;
        }
        for i in start..items.len() {
            combo.push(items[i]);
            rec(items, k, i + 1, combo, out);
            combo.pop();
        }
    }
    rec(items, k, 0, &mut combo, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{catalog, CatalogName};
    use crate::rational::rat;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn zn_covering_radius() {
        for n in 1..=4 {
            let zn = catalog(CatalogName::Zn, n).unwrap();
            let hole = covering_radius(&zn, &cfg()).unwrap();
            assert_eq!(hole.dist_sq, frac(n as i64, 4));
            assert!(hole.exact);
            // deep hole at (±1/2, ..., ±1/2); ours is the lex-smallest
            assert!(hole.point.iter().all(|c| c == &frac(1, 2) || c == &frac(-1, 2)));
            assert!(hole.witnesses.len() >= n + 1);
        }
    }

    #[test]
    fn d4_covering_radius() {
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let hole = covering_radius(&d4, &cfg()).unwrap();
        assert_eq!(hole.dist_sq, rat(1));
        assert!(hole.exact);
        assert!(hole.witnesses.len() >= 5);
    }

    #[test]
    fn hexagonal_covering_radius() {
        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        let hole = covering_radius(&hex, &cfg()).unwrap();
        assert_eq!(hole.dist_sq, frac(1, 3));
    }

    #[test]
    fn voronoi_vertices_are_equidistant() {
        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        let cell = voronoi_cell(&hex, &cfg()).unwrap();
        for v in &cell.vertices {
            let (_, d) = closest_vector(&hex, &v.point, &cfg()).unwrap();
            assert_eq!(d, hex.norm_sq(&v.point));
        }
        assert_eq!(cell.vertices.len(), 6);
    }

    #[test]
    fn cell_volume_is_one() {
        for (name, n) in [
            (CatalogName::Zn, 2),
            (CatalogName::Hexagonal, 2),
            (CatalogName::Zn, 3),
            (CatalogName::Dn, 3),
            (CatalogName::Dn, 4),
        ] {
            let l = catalog(name, n).unwrap();
            let cell = voronoi_cell(&l, &cfg()).unwrap();
            assert_eq!(cell_coordinate_volume(&cell, n), rat(1), "{name:?} {n}");
        }
    }

    #[test]
    fn heuristic_mode_gives_lower_bound() {
        let z7 = catalog(CatalogName::Zn, 7).unwrap();
        let hole = covering_radius(&z7, &cfg()).unwrap();
        assert!(!hole.exact);
        assert!(hole.dist_sq <= frac(7, 4));
        assert!(hole.dist_sq > Rat::zero());
    }
}
