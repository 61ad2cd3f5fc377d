//! Exact enumeration kernels: LLL reduction on Gram matrices, depth-first
//! sphere enumeration with float window bounds and exact acceptance, the
//! shortest/closest vector problems, and Voronoi relevant vectors.
//!
//! Enumeration strategy: interval endpoints per level are estimated in f64
//! with a safety margin, but every candidate is accepted or rejected by an
//! exact rational comparison, so results are exact; the float window only
//! affects how many candidates are probed.

use num::bigint::BigInt;
use num::traits::{ToPrimitive, Zero};

use crate::config::RunConfig;
use crate::error::Error;
use crate::lattice::Lattice;
use crate::qmat::QMat;
use crate::rational::{rat_f64, Rat};

/// A nonzero lattice vector of minimal squared length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortVectorResult {
    /// Integer coordinates w.r.t. the lattice basis.
    pub coords: Vec<i64>,
    pub norm_sq: Rat,
}

pub struct Budget {
    remaining: u64,
}

impl Budget {
    pub fn new(nodes: u64) -> Self {
        Budget { remaining: nodes }
    }

    pub fn tick(&mut self) -> Result<(), Error> {
        if self.remaining == 0 {
            return Err(Error::BudgetExceeded);
        }
        self.remaining -= 1;
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// LLL on an exact Gram matrix
// ---------------------------------------------------------------------------

/// Gram-Schmidt data of the implicit basis behind a Gram matrix.
fn gso(gram: &QMat) -> (Vec<Rat>, Vec<Vec<Rat>>) {
    let n = gram.rows();
    let mut d = vec![Rat::zero(); n];
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut r = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut v = gram[(i, j)].clone();
            for k in 0..j {
                v -= &r[i][k] * &mu[j][k];
            }
            r[i][j] = v.clone();
            if j < i {
                mu[i][j] = v / &d[j];
            } else {
                d[i] = v;
            }
        }
    }
    (d, mu)
}

fn round_rat(r: &Rat) -> BigInt {
    // round half up
    let two = BigInt::from(2);
    let num = r.numer() * &two + r.denom();
    num::integer::Integer::div_floor(&num, &(r.denom() * &two))
}

/// LLL reduction (δ = 3/4) performed directly on the exact Gram matrix.
/// Returns the reduced Gram A = UᵀGU together with the unimodular U.
pub fn lll_gram(gram: &QMat) -> (QMat, QMat) {
    let n = gram.rows();
    let mut a = gram.clone();
    let mut u = QMat::identity(n);
    let delta = crate::rational::frac(3, 4);

    let size_reduce = |a: &mut QMat, u: &mut QMat, k: usize, j: usize| {
        let (d, mu) = gso(a);
        let _ = d;
        let m = &mu[k][j];
        let q = round_rat(m);
        if q.is_zero() {
            return;
        }
        let qr = Rat::from_integer(q);
        // column op: b_k <- b_k - q b_j
        for i in 0..n {
            let s = &u[(i, j)] * &qr;
            u[(i, k)] -= s;
        }
        for c in 0..n {
            let s = &a[(j, c)] * &qr;
            a[(k, c)] -= s;
        }
        for r0 in 0..n {
            let s = &a[(r0, j)] * &qr;
            a[(r0, k)] -= s;
        }
    };

    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 100_000, "LLL failed to terminate");
        for j in (0..k).rev() {
            size_reduce(&mut a, &mut u, k, j);
        }
        let (d, mu) = gso(&a);
        let lhs = d[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &d[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            // swap columns k-1 and k
            for i in 0..n {
                let tmp = u[(i, k - 1)].clone();
                u[(i, k - 1)] = u[(i, k)].clone();
                u[(i, k)] = tmp;
            }
            for c in 0..n {
                let tmp = a[(k - 1, c)].clone();
                a[(k - 1, c)] = a[(k, c)].clone();
                a[(k, c)] = tmp;
            }
            for r0 in 0..n {
                let tmp = a[(r0, k - 1)].clone();
                a[(r0, k - 1)] = a[(r0, k)].clone();
                a[(r0, k)] = tmp;
            }
            k = k.max(2) - 1;
        }
    }
    (a, u)
}

// ---------------------------------------------------------------------------
// Sphere enumeration
// ---------------------------------------------------------------------------

struct EnumCtx<'a> {
    d: Vec<Rat>,
    mu: Vec<Vec<Rat>>,
    target: &'a [Rat],
    budget: &'a mut Budget,
}

/// All integer x with (x-t)ᵀG(x-t) <= radius_sq, by depth-first traversal.
pub fn enumerate_all_within(
    gram: &QMat,
    target: &[Rat],
    radius_sq: &Rat,
    budget: &mut Budget,
) -> Result<Vec<(Vec<i64>, Rat)>, Error> {
    let n = gram.rows();
    assert_eq!(target.len(), n);
    let (d, mu) = gso(gram);
    let mut ctx = EnumCtx {
        d,
        mu,
        target,
        budget,
    };
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    descend(&mut ctx, n, n, radius_sq, &Rat::zero(), &mut x, &mut |x, val| {
        out.push((x.to_vec(), val.clone()));
    })?;
    out.sort();
    Ok(out)
}

/// Depth-first enumeration level. `level` counts down from n to 0; the
/// quadratic form is Σ_i d_i (x_i - t_i + Σ_{j>i} mu_ji (x_j - t_j))².
#[allow(clippy::too_many_arguments)]
fn descend(
    ctx: &mut EnumCtx,
    n: usize,
    level: usize,
    radius_sq: &Rat,
    partial: &Rat,
    x: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64], &Rat),
) -> Result<(), Error> {
    ctx.budget.tick()?;
    if level == 0 {
        emit(x, partial);
        return Ok(());
    }
    let i = level - 1;
    // s_i = Σ_{j>i} mu_ji (x_j - t_j)
    let mut s = Rat::zero();
    for j in (i + 1)..n {
        let yj = Rat::from_integer(BigInt::from(x[j])) - &ctx.target[j];
        if !yj.is_zero() && !ctx.mu[j][i].is_zero() {
            s += &ctx.mu[j][i] * yj;
        }
    }
    let center = &ctx.target[i] - &s; // term is d_i (x_i - center)²
    let remaining = radius_sq - partial;
    let half_width_sq = &remaining / &ctx.d[i];
    let hw = rat_f64(&half_width_sq).max(0.0).sqrt();
    let c = rat_f64(&center);
    let lo = (c - hw - 1e-6 * (1.0 + hw.abs() + c.abs())).floor() as i64 - 1;
    let hi = (c + hw + 1e-6 * (1.0 + hw.abs() + c.abs())).ceil() as i64 + 1;
    for xi in lo..=hi {
        let yi = Rat::from_integer(BigInt::from(xi)) - &center;
        let term = &ctx.d[i] * &yi * &yi;
        if &term > &remaining {
            continue;
        }
        x[i] = xi;
        let next_partial = partial + &term;
        descend(ctx, n, level - 1, radius_sq, &next_partial, x, emit)?;
    }
    x[i] = 0;
    Ok(())
}

/// Exact quadratic form value (x-t)ᵀG(x-t).
pub fn form_value(gram: &QMat, target: &[Rat], x: &[i64]) -> Rat {
    let y: Vec<Rat> = x
        .iter()
        .zip(target.iter())
        .map(|(&xi, ti)| Rat::from_integer(BigInt::from(xi)) - ti)
        .collect();
    let gy = gram.mul_vec(&y);
    y.iter()
        .zip(gy.iter())
        .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
}

/// Minimum of the form over integer points (optionally excluding x = 0),
/// with the exact minimum value and ALL minimizers.
pub fn enumerate_minima(
    gram: &QMat,
    target: &[Rat],
    initial_radius_sq: &Rat,
    exclude_zero: bool,
    budget: &mut Budget,
) -> Result<(Rat, Vec<Vec<i64>>), Error> {
    let n = gram.rows();
    let mut best: Option<Rat> = None;
    {
        let (d, mu) = gso(gram);
        let mut ctx = EnumCtx {
            d,
            mu,
            target,
            budget,
        };
        let mut x = vec![0i64; n];
        // Shrinking pass: track the best value seen.
        shrink_descend(
            &mut ctx,
            n,
            n,
            initial_radius_sq.clone(),
            &Rat::zero(),
            &mut x,
            exclude_zero,
            &mut best,
        )?;
    }
    let best = best.ok_or(Error::DomainError(
        "no lattice point within initial enumeration radius".into(),
    ))?;
    let all = enumerate_all_within(gram, target, &best, budget)?;
    let minimizers: Vec<Vec<i64>> = all
        .into_iter()
        .map(|(x, _)| x)
        .filter(|x| !(exclude_zero && x.iter().all(|&v| v == 0)))
        .filter(|x| form_value(gram, target, x) == best)
        .collect();
    Ok((best, minimizers))
}

#[allow(clippy::too_many_arguments)]
fn shrink_descend(
    ctx: &mut EnumCtx,
    n: usize,
    level: usize,
    mut radius_sq: Rat,
    partial: &Rat,
    x: &mut Vec<i64>,
    exclude_zero: bool,
    best: &mut Option<Rat>,
) -> Result<Rat, Error> {
    ctx.budget.tick()?;
    if level == 0 {
        let is_zero = x.iter().all(|&v| v == 0);
        if !(exclude_zero && is_zero) {
            let val = partial.clone();
            match best {
                Some(b) if *b <= val => {}
                _ => {
                    *best = Some(val.clone());
                    radius_sq = val;
                }
            }
        }
        return Ok(radius_sq);
    }
    let i = level - 1;
    let mut s = Rat::zero();
    for j in (i + 1)..n {
        let yj = Rat::from_integer(BigInt::from(x[j])) - &ctx.target[j];
        if !yj.is_zero() && !ctx.mu[j][i].is_zero() {
            s += &ctx.mu[j][i] * yj;
        }
    }
    let center = &ctx.target[i] - &s;
    let rem = &radius_sq - partial;
    let half_width_sq = &rem / &ctx.d[i];
    let hw = rat_f64(&half_width_sq).max(0.0).sqrt();
    let c = rat_f64(&center);
    let lo = (c - hw - 1e-6 * (1.0 + hw.abs() + c.abs())).floor() as i64 - 1;
    let hi = (c + hw + 1e-6 * (1.0 + hw.abs() + c.abs())).ceil() as i64 + 1;
    // Visit candidates nearest the center first so the radius shrinks early.
    let mut candidates: Vec<i64> = (lo..=hi).collect();
    candidates.sort_by_key(|&v| {
        let dist = (v as f64 - c).abs();
        (dist * 1e9) as i64
    });
    for xi in candidates {
        let yi = Rat::from_integer(BigInt::from(xi)) - &center;
        let term = &ctx.d[i] * &yi * &yi;
        let new_partial = partial + &term;
        if new_partial > radius_sq {
            continue;
        }
        x[i] = xi;
        radius_sq = shrink_descend(
            ctx,
            n,
            level - 1,
            radius_sq,
            &new_partial,
            x,
            exclude_zero,
            best,
        )?;
    }
    x[i] = 0;
    Ok(radius_sq)
}

// ---------------------------------------------------------------------------
// Lattice-level operations
// ---------------------------------------------------------------------------

fn qmat_unimodular_to_i64(u: &QMat) -> Vec<Vec<i64>> {
    (0..u.rows())
        .map(|i| {
            (0..u.cols())
                .map(|j| {
                    debug_assert!(u[(i, j)].is_integer());
                    u[(i, j)].to_integer().to_i64().expect("small transform")
                })
                .collect()
        })
        .collect()
}

fn apply_transform(u: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    let n = u.len();
    (0..n)
        .map(|i| (0..n).map(|j| u[i][j] * x[j]).sum())
        .collect()
}

/// Sign-normalized (first nonzero coordinate positive) copy of x.
pub fn normalize_sign(x: &[i64]) -> Vec<i64> {
    match x.iter().find(|&&v| v != 0) {
        Some(&v) if v < 0 => x.iter().map(|&v| -v).collect(),
        _ => x.to_vec(),
    }
}

/// Nonzero lattice vector of minimal squared length; deterministic
/// tie-break: sign-normalized, then lexicographically smallest.
pub fn shortest_vector(lattice: &Lattice, cfg: &RunConfig) -> Result<ShortVectorResult, Error> {
    if lattice.dim() > cfg.svp_dim_cap {
        return Err(Error::BudgetExceeded);
    }
    let mut budget = Budget::new(cfg.node_budget);
    let (reduced, u) = lll_gram(lattice.gram());
    let n = lattice.dim();
    let init = (0..n)
        .map(|i| reduced[(i, i)].clone())
        .min()
        .expect("nonempty");
    let target = vec![Rat::zero(); n];
    let (min, minimizers) = enumerate_minima(&reduced, &target, &init, true, &mut budget)?;
    let ui = qmat_unimodular_to_i64(&u);
    let mut coords: Vec<Vec<i64>> = minimizers
        .iter()
        .map(|x| normalize_sign(&apply_transform(&ui, x)))
        .collect();
    coords.sort();
    coords.dedup();
    Ok(ShortVectorResult {
        coords: coords.into_iter().next().expect("at least one minimum"),
        norm_sq: min,
    })
}

/// Exact closest lattice point to a rational target, with squared distance.
/// Tie-break: lexicographically smallest coordinate vector.
pub fn closest_vector(
    lattice: &Lattice,
    target: &[Rat],
    cfg: &RunConfig,
) -> Result<(Vec<i64>, Rat), Error> {
    let n = lattice.dim();
    assert_eq!(target.len(), n);
    let mut budget = Budget::new(cfg.node_budget);
    let (reduced, u) = lll_gram(lattice.gram());
    let ui = qmat_unimodular_to_i64(&u);
    let u_inv = u.inverse().expect("unimodular");
    let t_red = u_inv.mul_vec(target);
    // Babai nearest plane for the initial radius.
    let babai = babai_nearest_plane(&reduced, &t_red);
    let init = form_value(&reduced, &t_red, &babai);
    let (min, minimizers) = enumerate_minima(&reduced, &t_red, &init, false, &mut budget)?;
    let mut coords: Vec<Vec<i64>> = minimizers
        .iter()
        .map(|x| apply_transform(&ui, x))
        .collect();
    coords.sort();
    coords.dedup();
    Ok((coords.into_iter().next().expect("nonempty"), min))
}

/// Babai's nearest-plane point for the quadratic form (exact arithmetic).
pub fn babai_nearest_plane(gram: &QMat, target: &[Rat]) -> Vec<i64> {
    let n = gram.rows();
    let (_, mu) = gso(gram);
    let mut x = vec![0i64; n];
    for i in (0..n).rev() {
        let mut s = Rat::zero();
        for j in (i + 1)..n {
            let yj = Rat::from_integer(BigInt::from(x[j])) - &target[j];
            s += &mu[j][i] * yj;
        }
        let center = &target[i] - &s;
        x[i] = round_rat(&center).to_i64().unwrap_or(0);
    }
    x
}

/// All lattice points x with |x - t|² <= radius_sq in the lattice's metric.
pub fn points_within(
    lattice: &Lattice,
    target: &[Rat],
    radius_sq: &Rat,
    cfg: &RunConfig,
) -> Result<Vec<(Vec<i64>, Rat)>, Error> {
    let mut budget = Budget::new(cfg.node_budget);
    let (reduced, u) = lll_gram(lattice.gram());
    let ui = qmat_unimodular_to_i64(&u);
    let u_inv = u.inverse().expect("unimodular");
    let t_red = u_inv.mul_vec(target);
    let all = enumerate_all_within(&reduced, &t_red, radius_sq, &mut budget)?;
    let mut out: Vec<(Vec<i64>, Rat)> = all
        .into_iter()
        .map(|(x, _)| {
            let orig = apply_transform(&ui, &x);
            let val = form_value(lattice.gram(), target, &orig);
            (orig, val)
        })
        .filter(|(_, val)| val <= radius_sq)
        .collect();
    out.sort();
    Ok(out)
}

/// Voronoi relevant vectors: nonzero v whose coset v + 2Λ attains its norm
/// minimum exactly at ±v. Result is closed under negation and sorted by
/// (norm, coordinates).
pub fn relevant_vectors(lattice: &Lattice, cfg: &RunConfig) -> Result<Vec<ShortVectorResult>, Error> {
    let n = lattice.dim();
    let mut budget = Budget::new(cfg.node_budget);
    let (reduced, u) = lll_gram(lattice.gram());
    let ui = qmat_unimodular_to_i64(&u);
    let mut out = Vec::new();
    // Enumerate the 2^n - 1 nonzero cosets of Λ/2Λ in reduced coordinates.
    for mask in 1u64..(1 << n) {
        let c: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
        // minimize (c + 2y)ᵀ G (c + 2y) = 4 (y + c/2)ᵀ G (y + c/2)
        let t: Vec<Rat> = c.iter().map(|&ci| crate::rational::frac(-ci, 2)).collect();
        let babai = babai_nearest_plane(&reduced, &t);
        let init = form_value(&reduced, &t, &babai);
        let (min, minimizers) = enumerate_minima(&reduced, &t, &init, false, &mut budget)?;
        if minimizers.len() == 2 {
            for y in &minimizers {
                let x: Vec<i64> = c.iter().zip(y.iter()).map(|(&ci, &yi)| ci + 2 * yi).collect();
                let orig = apply_transform(&ui, &x);
                let norm = lattice.norm_sq_int(
                    &orig.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(),
                );
                debug_assert_eq!(norm, &min * crate::rational::rat(4));
                out.push(ShortVectorResult {
                    coords: orig,
                    norm_sq: norm,
                });
            }
        }
    }
    out.sort_by(|a, b| (&a.norm_sq, &a.coords).cmp(&(&b.norm_sq, &b.coords)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{catalog, CatalogName};
    use crate::rational::{frac, rat};

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn gso_reconstructs_form() {
        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        let g = hex.gram();
        let x = [3i64, -2];
        let direct = form_value(g, &[Rat::zero(), Rat::zero()], &x);
        let (d, mu) = gso(g);
        // Σ d_i (x_i + Σ_{j>i} mu_ji x_j)²
        let n = 2;
        let mut total = Rat::zero();
        for i in 0..n {
            let mut inner = Rat::from_integer(BigInt::from(x[i]));
            for j in (i + 1)..n {
                inner += &mu[j][i] * Rat::from_integer(BigInt::from(x[j]));
            }
            total += &d[i] * &inner * &inner;
        }
        assert_eq!(total, direct);
    }

    #[test]
    fn lll_preserves_lattice() {
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let (reduced, u) = lll_gram(d4.gram());
        let check = u.transpose().mul(&d4.gram().mul(&u));
        assert_eq!(check, reduced);
        let det = u.det();
        assert!(det == rat(1) || det == rat(-1));
        assert_eq!(reduced.det(), d4.gram().det());
    }

    #[test]
    fn shortest_vectors_catalog() {
        let z5 = catalog(CatalogName::Zn, 5).unwrap();
        assert_eq!(shortest_vector(&z5, &cfg()).unwrap().norm_sq, rat(1));

        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        assert_eq!(shortest_vector(&d4, &cfg()).unwrap().norm_sq, rat(2));

        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        assert_eq!(shortest_vector(&hex, &cfg()).unwrap().norm_sq, rat(1));

        let e8 = catalog(CatalogName::E8, 8).unwrap();
        assert_eq!(shortest_vector(&e8, &cfg()).unwrap().norm_sq, rat(2));
    }

    #[test]
    fn shortest_vector_brute_force_oracle() {
        // brute force over |x_i| <= 2 for D4 and over |x_i| <= 3 for hexagonal
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let mut best = rat(100);
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    for d in -2i64..=2 {
                        if (a, b, c, d) == (0, 0, 0, 0) {
                            continue;
                        }
                        let v = form_value(
                            d4.gram(),
                            &[Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()],
                            &[a, b, c, d],
                        );
                        if v < best {
                            best = v;
                        }
                    }
                }
            }
        }
        assert_eq!(best, rat(2));

        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        let mut best = rat(100);
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let v = form_value(hex.gram(), &[Rat::zero(), Rat::zero()], &[a, b]);
                if v < best {
                    best = v;
                }
            }
        }
        assert_eq!(best, rat(1));
    }

    #[test]
    fn closest_vector_examples() {
        let z2 = catalog(CatalogName::Zn, 2).unwrap();
        let (p, d) = closest_vector(&z2, &[frac(2, 5), frac(3, 5)], &cfg()).unwrap();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(d, frac(8, 25));

        // symmetric tie at (1/2,1/2): lexicographically smallest minimizer
        let (p, d) = closest_vector(&z2, &[frac(1, 2), frac(1, 2)], &cfg()).unwrap();
        assert_eq!(p, vec![0, 0]);
        assert_eq!(d, frac(1, 2));

        // deep hole of D4 at ambient (1,0,0,0) = coords (1/2,-1/2,0,0)
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let t = [frac(1, 2), frac(-1, 2), Rat::zero(), Rat::zero()];
        let (_, dist) = closest_vector(&d4, &t, &cfg()).unwrap();
        assert_eq!(dist, rat(1));
    }

    #[test]
    fn relevant_vectors_examples() {
        let z1 = catalog(CatalogName::Zn, 1).unwrap();
        let rv = relevant_vectors(&z1, &cfg()).unwrap();
        assert_eq!(rv.len(), 2);

        // For Z² the coset of (1,1) has four minima, so only ±e1, ±e2 are relevant.
        let z2 = catalog(CatalogName::Zn, 2).unwrap();
        let rv = relevant_vectors(&z2, &cfg()).unwrap();
        assert_eq!(rv.len(), 4);
        assert!(rv.iter().all(|v| v.norm_sq == rat(1)));

        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        let rv = relevant_vectors(&hex, &cfg()).unwrap();
        assert_eq!(rv.len(), 6);
        assert!(rv.iter().all(|v| v.norm_sq == rat(1)));

        // closed under negation
        for v in &rv {
            let neg: Vec<i64> = v.coords.iter().map(|&x| -x).collect();
            assert!(rv.iter().any(|w| w.coords == neg));
        }
    }

    #[test]
    fn points_within_ball() {
        let z2 = catalog(CatalogName::Zn, 2).unwrap();
        let pts = points_within(&z2, &[Rat::zero(), Rat::zero()], &rat(1), &cfg()).unwrap();
        assert_eq!(pts.len(), 5); // 0 and ±e1, ±e2
    }

    #[test]
    fn budget_is_enforced() {
        let z4 = catalog(CatalogName::Zn, 4).unwrap();
        let tiny = RunConfig {
            node_budget: 3,
            ..RunConfig::default()
        };
        assert_eq!(
            shortest_vector(&z4, &tiny).unwrap_err(),
            Error::BudgetExceeded
        );
    }
}
