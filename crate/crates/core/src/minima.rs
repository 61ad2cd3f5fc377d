//! Packing radius, covering minima, the γ ratio, the free-plane finder with
//! verifiable certificates, and the per-lattice inequality chain.
//!
//! The i-th covering minimum is computed through its projection
//! characterization: μ_i(Λ)² is the maximum of the covering radius of
//! Λ|L⊥ over lattice planes L of rank n−i. Planes are enumerated by
//! ascending section determinant (small primal section ⇔ large projected
//! determinant ⇔ candidate for a large covering radius) and evaluated
//! exactly; the search is declared complete only when a recursive
//! certificate shows that every unexplored plane is bounded by the
//! incumbent.
//!
//! Completeness certificate (external classical inputs, not from the
//! problem statement itself): for a rank-j section S of the dual with a
//! primitive vector v ∈ S, splitting the projected lattice along span(v)
//! gives μ((S)*)² ≤ 1/(4|v|²) + μ((S|v⊥)*)², and for sections with no
//! vector of squared length ≤ R² the transference bound
//! μ(N)·λ₁(N*) ≤ dim/2 (Banaszczyk 1993) yields μ((S)*)² ≤ j²/(4R²).
//! Recursion over hyperplane sections of the primal lattice then bounds
//! every unexplored section; sub-branches that the additive split cannot
//! close are refined by exact evaluation of the lifted planes.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::enumerate::{closest_vector, points_within, shortest_vector};
use crate::error::Error;
use crate::imat::{primitive_vector, IMat};
use crate::lattice::{Lattice, LatticePlane};
use crate::planes::{enumerate_lattice_planes, PlaneWithDet};
use crate::rational::{frac, rat, rat_f64, rat_string, Rat};
use crate::voronoi::{covering_radius, DeepHole};

/// λ(Bⁿ, Λ)² = λ₁(Λ)²/4: the squared packing radius for the unit ball.
pub fn packing_radius_sq(lattice: &Lattice, cfg: &RunConfig) -> Result<Rat, Error> {
    Ok(shortest_vector(lattice, cfg)?.norm_sq / rat(4))
}

/// Report for the i-th covering minimum.
#[derive(Debug, Clone)]
pub struct CoveringMinimaReport {
    pub i: usize,
    /// Exact when complete; otherwise a certified lower bound on μ_i².
    pub mu_squared: Rat,
    /// The plane L of rank n−i maximizing the projected covering radius
    /// (None for i = n, where no projection is taken).
    pub achieving_plane: Option<LatticePlane>,
    pub deep_hole: DeepHole,
    pub complete: bool,
}

struct CertifyCtx {
    svp_cache: HashMap<String, Rat>,
    mu_cache: HashMap<String, Rat>,
    true_cache: HashMap<(String, usize), Vec<(Rat, Rat)>>, // known-true (min_gd, target)
    nodes: u64,
}

impl CertifyCtx {
    fn new() -> Self {
        CertifyCtx {
            svp_cache: HashMap::new(),
            mu_cache: HashMap::new(),
            true_cache: HashMap::new(),
            nodes: 0,
        }
    }

    fn lambda1_sq(&mut self, lattice: &Lattice, cfg: &RunConfig) -> Result<Rat, Error> {
        let key = lattice.gram_key();
        if let Some(v) = self.svp_cache.get(&key) {
            return Ok(v.clone());
        }
        let v = shortest_vector(lattice, cfg)?.norm_sq;
        self.svp_cache.insert(key, v.clone());
        Ok(v)
    }

    fn exact_mu_sq(&mut self, lattice: &Lattice, cfg: &RunConfig) -> Result<Rat, Error> {
        let key = lattice.gram_key();
        if let Some(v) = self.mu_cache.get(&key) {
            return Ok(v.clone());
        }
        let hole = covering_radius(lattice, cfg)?;
        if !hole.exact {
            return Err(Error::VertexEnumerationOverflow);
        }
        self.mu_cache.insert(key, hole.dist_sq.clone());
        Ok(hole.dist_sq)
    }
}

/// Certifies that every rank-j section S of lattice* with
/// Gramdet(S) > min_gd satisfies μ((S)*)² <= target. Returns false when it
/// cannot certify (which never makes a report wrong, only incomplete).
fn tail_cert(
    lattice: &Lattice,
    j: usize,
    min_gd: &Rat,
    target: &Rat,
    cfg: &RunConfig,
    ctx: &mut CertifyCtx,
    depth_nodes: u64,
) -> Result<bool, Error> {
    if target.is_negative() {
        return Ok(false);
    }
    if j == 0 {
        return Ok(true);
    }
    ctx.nodes += 1;
    if ctx.nodes > depth_nodes {
        return Ok(false);
    }
    let key = (lattice.gram_key(), j);
    if let Some(entries) = ctx.true_cache.get(&key) {
        if entries.iter().any(|(m, t)| m <= min_gd && t <= target) {
            return Ok(true);
        }
    }
    let dual = lattice.dual();
    let lambda_dual_sq = ctx.lambda1_sq(&dual, cfg)?;
    // Global transference bound: μ((S)*) <= j/(2λ₁(S)) and λ₁(S) >= λ₁(Λ*).
    let jj = rat((j * j) as i64);
    let ok = if &jj * frac(1, 4) <= target * &lambda_dual_sq {
        true
    } else if j == 1 {
        // Exact at rank one: sup over gd > min_gd of 1/(4 gd).
        let floor = if min_gd > &lambda_dual_sq {
            min_gd.clone()
        } else {
            lambda_dual_sq.clone()
        };
        frac(1, 4) <= target * &floor
    } else {
        tail_cert_branches(lattice, &dual, j, min_gd, target, cfg, ctx, depth_nodes)?
    };
    if ok {
        ctx.true_cache
            .entry(key)
            .or_default()
            .push((min_gd.clone(), target.clone()));
    }
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
fn tail_cert_branches(
    lattice: &Lattice,
    dual: &Lattice,
    j: usize,
    min_gd: &Rat,
    target: &Rat,
    cfg: &RunConfig,
    ctx: &mut CertifyCtx,
    depth_nodes: u64,
) -> Result<bool, Error> {
    let n = lattice.dim();
    // Sections with λ₁(S)² > R² are handled by transference; every other
    // section contains a primitive dual vector below the bound.
    let r_sq = rat((j * j) as i64) / (rat(4) * target);
    let zero = vec![Rat::zero(); n];
    let mut vectors: Vec<Vec<BigInt>> = Vec::new();
    for (v, norm) in points_within(dual, &zero, &r_sq, cfg)? {
        if norm.is_zero() {
            continue;
        }
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let prim = primitive_vector(&vb);
        let canon = canonical_sign_big(&prim);
        if !vectors.contains(&canon) {
            vectors.push(canon);
        }
    }
    vectors.sort();
    for v in vectors {
        let g = dual.norm_sq_int(&v);
        let head = frac(1, 4) / &g;
        let sub_target = target - &head;
        // Hyperplane section of the primal along v⊥ (pairing is the
        // standard dot product between primal and dual coordinates).
        let vt = IMat::from_fn(1, n, |_, c| v[c].clone());
        let kernel = vt.kernel();
        let k_q = kernel.to_qmat();
        let pair_gram = k_q.gram_with(lattice.gram());
        let pair = Lattice::from_gram(pair_gram)?;
        let next_min_gd = min_gd / &g;
        let closed = if sub_target.is_negative() {
            false
        } else {
            tail_cert(&pair, j - 1, &next_min_gd, &sub_target, cfg, ctx, depth_nodes)?
        };
        if closed {
            continue;
        }
        // Rescue: exactly evaluate the lifted planes through v up to a pair
        // cutoff, then certify the remaining tail at that cutoff.
        if !rescue_branch(
            lattice,
            dual,
            &kernel,
            &pair,
            &v,
            &g,
            j,
            min_gd,
            target,
            cfg,
            ctx,
            depth_nodes,
        )? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn rescue_branch(
    _lattice: &Lattice,
    dual: &Lattice,
    kernel: &IMat,
    pair: &Lattice,
    _v: &[BigInt],
    g: &Rat,
    j: usize,
    min_gd: &Rat,
    target: &Rat,
    cfg: &RunConfig,
    ctx: &mut CertifyCtx,
    depth_nodes: u64,
) -> Result<bool, Error> {
    let head = frac(1, 4) / g;
    let sub_target = target - &head;
    let mut pair_cutoff = {
        // start just above the excluded region
        let base = min_gd / g;
        if base.is_positive() {
            base * rat(4)
        } else {
            ctx.lambda1_sq(&pair.dual(), cfg)? * rat(4)
        }
    };
    for _ in 0..6 {
        // Exactly evaluate every lifted plane with pair-gramdet <= cutoff.
        let pair_dual = pair.dual();
        let enumeration = enumerate_lattice_planes(&pair_dual, j - 1, &pair_cutoff, cfg)?;
        if !enumeration.complete {
            return Ok(false);
        }
        for p in &enumeration.planes {
            let lifted_gd = g * &p.gramdet;
            if &lifted_gd <= min_gd {
                continue; // covered by the exhaustively enumerated region
            }
            // Lift: span = {u : Kᵀu ∈ span(section)}, a rank-j section of
            // the dual lattice containing v.
            let ann = p.plane.section_basis().transpose().kernel();
            let constraints = ann.transpose().mul(&kernel.transpose());
            let lifted_basis = constraints.kernel().column_lattice_hnf();
            let lifted = dual.plane_from_section_basis(lifted_basis)?;
            debug_assert!(lifted.rank() == j);
            let section_gram = dual.section_gram(&lifted);
            let projected = Lattice::from_gram(section_gram.inverse()?)?;
            let mu_sq = ctx.exact_mu_sq(&projected, cfg)?;
            if &mu_sq > target {
                return Ok(false); // a genuinely better plane exists out there
            }
        }
        // Tail beyond the pair cutoff.
        if sub_target.is_negative() {
            pair_cutoff = pair_cutoff * rat(4);
            continue;
        }
        if tail_cert(pair, j - 1, &pair_cutoff, &sub_target, cfg, ctx, depth_nodes)? {
            return Ok(true);
        }
        pair_cutoff = pair_cutoff * rat(4);
    }
    Ok(false)
}

fn canonical_sign_big(v: &[BigInt]) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|y| -y.clone()).collect(),
        _ => v.to_vec(),
    }
}

/// The i-th covering minimum via the projection characterization.
pub fn covering_minimum(
    lattice: &Lattice,
    i: usize,
    cfg: &RunConfig,
) -> Result<CoveringMinimaReport, Error> {
    let n = lattice.dim();
    if i < 1 || i > n {
        return Err(Error::DimensionMismatch(format!(
            "covering minimum needs 1 <= i <= n, got i={i}, n={n}"
        )));
    }
    if i == n {
        let hole = covering_radius(lattice, cfg)?;
        return Ok(CoveringMinimaReport {
            i,
            mu_squared: hole.dist_sq.clone(),
            achieving_plane: None,
            deep_hole: hole.clone(),
            complete: hole.exact,
        });
    }

    let exact_possible = i <= cfg.exact_voronoi_dim;
    let mut ctx = CertifyCtx::new();
    let mut best: Option<(Rat, PlaneWithDet, DeepHole)> = None;
    let mut evaluated: std::collections::BTreeSet<LatticePlane> = std::collections::BTreeSet::new();
    // Initial cutoff: the cheapest primal section determinant seen from the
    // reduced basis, then geometric growth.
    let mut cutoff = initial_cutoff(lattice, n - i, cfg)?;
    let mut complete = false;
    for _round in 0..10 {
        let enumeration = enumerate_lattice_planes(lattice, n - i, &cutoff, cfg)?;
        for p in &enumeration.planes {
            if evaluated.contains(&p.plane) {
                continue;
            }
            evaluated.insert(p.plane.clone());
            let projection = lattice.project(&p.plane)?;
            let hole = covering_radius(&projection.lattice, cfg)?;
            if exact_possible && !hole.exact {
                return Err(Error::VertexEnumerationOverflow);
            }
            let better = match &best {
                Some((bmu, _, _)) => hole.dist_sq > *bmu,
                None => true,
            };
            if better {
                best = Some((hole.dist_sq.clone(), p.clone(), hole));
            }
        }
        if !exact_possible || !enumeration.complete {
            break;
        }
        if let Some((mu, _, _)) = &best {
            // Certify: every dual section with gramdet above the enumerated
            // region is bounded by the incumbent.
            let dual_min_gd = &cutoff / lattice.det_squared();
            if tail_cert(lattice, i, &dual_min_gd, mu, cfg, &mut ctx, 200_000)? {
                complete = true;
                break;
            }
        }
        cutoff = cutoff * rat(4);
    }
    let (mu_squared, plane, deep_hole) = best.ok_or(Error::BudgetExceeded)?;
    Ok(CoveringMinimaReport {
        i,
        mu_squared,
        achieving_plane: Some(plane.plane),
        deep_hole,
        complete,
    })
}

fn initial_cutoff(lattice: &Lattice, rank: usize, cfg: &RunConfig) -> Result<Rat, Error> {
    // Smallest section determinant reachable from basis subsets; guarantees
    // a nonempty first round.
    let lambda = shortest_vector(lattice, cfg)?.norm_sq;
    let mut gd = num::pow::pow(lambda, rank);
    let mut diag_prod = Rat::from_integer(BigInt::from(1));
    let gram = lattice.gram();
    let mut diags: Vec<Rat> = (0..lattice.dim()).map(|k| gram[(k, k)].clone()).collect();
    diags.sort();
    for d in diags.iter().take(rank) {
        diag_prod *= d;
    }
    if diag_prod > gd {
        gd = diag_prod;
    }
    Ok(gd)
}

/// μ_i/λ for one lattice: an upper bound on γ_i(Bⁿ).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GammaRatio {
    pub value: f64,
    /// Set when the covering-minimum search was incomplete; the value is
    /// then only a lower bound on μ_i/λ for this lattice.
    pub lower_bound_only: bool,
}

pub fn gamma_ratio(lattice: &Lattice, i: usize, cfg: &RunConfig) -> Result<GammaRatio, Error> {
    let report = covering_minimum(lattice, i, cfg)?;
    let packing = packing_radius_sq(lattice, cfg)?;
    Ok(GammaRatio {
        value: (rat_f64(&report.mu_squared) / rat_f64(&packing)).sqrt(),
        lower_bound_only: !report.complete,
    })
}

// ---------------------------------------------------------------------------
// Free planes
// ---------------------------------------------------------------------------

/// A k-dimensional affine plane (direction space + offset) together with an
/// exact clearance proving it avoids every open ball of the packing.
#[derive(Debug, Clone)]
pub struct FreePlaneCertificate {
    pub lattice: Lattice,
    /// Squared packing radius λ₁²/4 (spheres of the packing).
    pub sphere_radius_sq: Rat,
    /// Direction space: a lattice plane of rank k.
    pub plane: LatticePlane,
    /// Offset in the canonical frame of Λ|plane⊥ (length n−k).
    pub offset: Vec<Rat>,
    /// Squared distance from the offset to the projected lattice.
    pub clearance_sq: Rat,
    pub verified: bool,
}

#[derive(Debug, Clone)]
pub enum FreePlaneOutcome {
    Found(FreePlaneCertificate),
    /// No free k-plane within the search budget. Only a nonexistence proof
    /// when `complete` is true.
    NotFound {
        best_clearance_sq: Option<Rat>,
        complete: bool,
    },
}

/// Searches for a free affine plane of dimension k in the sphere packing
/// carried by Λ (radius = packing radius, tangent spheres). Planes are
/// tried by ascending section determinant; the first one whose projected
/// covering radius reaches the packing radius yields a certificate with
/// the offset at a deep hole of the projection.
pub fn find_free_plane(
    lattice: &Lattice,
    k: usize,
    cfg: &RunConfig,
) -> Result<FreePlaneOutcome, Error> {
    let n = lattice.dim();
    if k < 1 || k >= n {
        return Err(Error::DimensionMismatch(format!(
            "free plane dimension must satisfy 1 <= k <= n-1, got k={k}, n={n}"
        )));
    }
    let radius_sq = packing_radius_sq(lattice, cfg)?;
    let mut evaluated: std::collections::BTreeSet<LatticePlane> = std::collections::BTreeSet::new();
    let mut best: Option<(Rat, PlaneWithDet, DeepHole)> = None;
    let mut cutoff = initial_cutoff(lattice, k, cfg)?;
    let mut ctx = CertifyCtx::new();
    let mut exhausted_min_gd: Option<Rat> = None;
    for _round in 0..8 {
        let enumeration = enumerate_lattice_planes(lattice, k, &cutoff, cfg)?;
        for p in &enumeration.planes {
            if evaluated.contains(&p.plane) {
                continue;
            }
            evaluated.insert(p.plane.clone());
            let projection = lattice.project(&p.plane)?;
            let hole = covering_radius(&projection.lattice, cfg)?;
            if hole.exact && hole.dist_sq >= radius_sq {
                let cert = FreePlaneCertificate {
                    lattice: lattice.clone(),
                    sphere_radius_sq: radius_sq.clone(),
                    plane: p.plane.clone(),
                    offset: hole.point.clone(),
                    clearance_sq: hole.dist_sq.clone(),
                    verified: false,
                };
                let verification = verify_certificate(&cert, cfg)?;
                if !verification.ok {
                    return Err(Error::IdentityViolation(
                        "freshly produced certificate failed verification".into(),
                    ));
                }
                return Ok(FreePlaneOutcome::Found(FreePlaneCertificate {
                    verified: true,
                    ..cert
                }));
            }
            let better = match &best {
                Some((bmu, _, _)) => hole.dist_sq > *bmu,
                None => true,
            };
            if better {
                best = Some((hole.dist_sq.clone(), p.clone(), hole));
            }
        }
        if !enumeration.complete {
            break;
        }
        exhausted_min_gd = Some(&cutoff / lattice.det_squared());
        cutoff = cutoff * rat(4);
    }
    // Try to certify nonexistence: every unexplored plane strictly below
    // the packing radius.
    let complete = if n - k <= cfg.exact_voronoi_dim {
        if let Some(min_gd) = exhausted_min_gd {
            let strict_target = &radius_sq * frac(999_999, 1_000_000);
            tail_cert(lattice, n - k, &min_gd, &strict_target, cfg, &mut ctx, 200_000)?
        } else {
            false
        }
    } else {
        false
    };
    Ok(FreePlaneOutcome::NotFound {
        best_clearance_sq: best.map(|(mu, _, _)| mu),
        complete,
    })
}

#[derive(Debug, Clone)]
pub struct VerifyResult {
    pub ok: bool,
    /// A lattice point whose projection violates the claimed clearance,
    /// in primal coordinates.
    pub counterexample: Option<Vec<BigInt>>,
    pub reason: Option<String>,
}

/// Independent re-check of a certificate: recomputes the projection from
/// scratch, runs exact CVP of the offset, asserts the stored clearance and
/// the free-plane condition, then samples random lattice points.
pub fn verify_certificate(
    cert: &FreePlaneCertificate,
    cfg: &RunConfig,
) -> Result<VerifyResult, Error> {
    let lattice = &cert.lattice;
    let n = lattice.dim();
    let k = cert.plane.rank();
    let fail = |reason: String, counterexample: Option<Vec<BigInt>>| VerifyResult {
        ok: false,
        counterexample,
        reason: Some(reason),
    };
    // The plane must be a saturated plane of this lattice.
    if lattice
        .plane_from_section_basis(cert.plane.section_basis().clone())
        .is_err()
    {
        return Ok(fail("plane is not a saturated lattice plane".into(), None));
    }
    // The claimed radius must be the packing radius of the lattice.
    let radius_sq = packing_radius_sq(lattice, cfg)?;
    if radius_sq != cert.sphere_radius_sq {
        return Ok(fail(
            format!(
                "stated sphere radius² {} differs from packing radius² {}",
                rat_string(&cert.sphere_radius_sq),
                rat_string(&radius_sq)
            ),
            None,
        ));
    }
    if cert.offset.len() != n - k {
        return Ok(fail("offset has wrong dimension".into(), None));
    }
    let projection = lattice.project(&cert.plane)?;
    let (cvp_point, dist_sq) = closest_vector(&projection.lattice, &cert.offset, cfg)?;
    // Lift the closest projected point to a primal lattice point: the
    // completion columns of the projection map reproduce it.
    let lift = lift_projected_point(lattice, &cert.plane, &cvp_point);
    if dist_sq != cert.clearance_sq {
        return Ok(fail(
            format!(
                "stated clearance² {} but exact distance² is {}",
                rat_string(&cert.clearance_sq),
                rat_string(&dist_sq)
            ),
            Some(lift),
        ));
    }
    if dist_sq < cert.sphere_radius_sq {
        return Ok(fail(
            "clearance is below the sphere radius; the plane meets a ball interior".into(),
            Some(lift),
        ));
    }
    // Random sampling: projected distances of concrete lattice points.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..1000 {
        let x: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect();
        let proj = projection.project_int_point(&x);
        let diff: Vec<Rat> = proj
            .iter()
            .zip(cert.offset.iter())
            .map(|(a, b)| a - b)
            .collect();
        let d = projection.lattice.norm_sq(&diff);
        if d < cert.sphere_radius_sq {
            return Ok(fail("sampled lattice point violates clearance".into(), Some(x)));
        }
    }
    Ok(VerifyResult {
        ok: true,
        counterexample: None,
        reason: None,
    })
}

fn lift_projected_point(lattice: &Lattice, plane: &LatticePlane, projected: &[i64]) -> Vec<BigInt> {
    let completion = plane.section_basis().unimodular_completion();
    let n = lattice.dim();
    (0..n)
        .map(|r| {
            let mut acc = BigInt::zero();
            for (c, &p) in projected.iter().enumerate() {
                acc += &completion[(r, c)] * BigInt::from(p);
            }
            acc
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Certificate JSON (exchange format)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    n: usize,
    k: usize,
    lattice: serde_json::Value,
    plane_hnf: Vec<Vec<String>>,
    offset: Vec<String>,
    clearance_sq: String,
    radius_sq: String,
    verified: bool,
}

impl FreePlaneCertificate {
    pub fn to_json(&self) -> String {
        let j = CertificateJson {
            n: self.lattice.dim(),
            k: self.plane.rank(),
            lattice: serde_json::from_str(&self.lattice.to_json()).expect("valid json"),
            plane_hnf: self
                .plane
                .hnf_rows()
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
            offset: self.offset.iter().map(rat_string).collect(),
            clearance_sq: rat_string(&self.clearance_sq),
            radius_sq: rat_string(&self.sphere_radius_sq),
            verified: self.verified,
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<FreePlaneCertificate, Error> {
        let j: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let lattice = Lattice::from_json(&j.lattice.to_string())?;
        if j.n != lattice.dim() {
            return Err(Error::Parse("n does not match the embedded lattice".into()));
        }
        let rows: Result<Vec<Vec<BigInt>>, Error> = j
            .plane_hnf
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        s.parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
                    })
                    .collect()
            })
            .collect();
        let section = IMat::from_rows(rows?);
        if section.rows() != j.n || section.cols() != j.k {
            return Err(Error::Parse("plane_hnf has wrong shape".into()));
        }
        // NOTE: primitivity is re-checked during verification, not here, so
        // tampered certificates parse and then fail verify with a reason.
        let plane = LatticePlaneParts {
            rank: j.k,
            section_basis: section,
        }
        .into_plane();
        let offset: Result<Vec<Rat>, Error> =
            j.offset.iter().map(|s| crate::rational::parse_rat(s)).collect();
        Ok(FreePlaneCertificate {
            lattice,
            sphere_radius_sq: crate::rational::parse_rat(&j.radius_sq)?,
            plane,
            offset: offset?,
            clearance_sq: crate::rational::parse_rat(&j.clearance_sq)?,
            verified: j.verified,
        })
    }
}

// Constructing a LatticePlane from raw parts is deliberately not part of the
// public lattice API (planes are normally built by saturation); the JSON
// loader goes through this small shim and verification re-checks primitivity.
struct LatticePlaneParts {
    rank: usize,
    section_basis: IMat,
}

impl LatticePlaneParts {
    fn into_plane(self) -> LatticePlane {
        LatticePlane::from_raw_parts(self.rank, self.section_basis)
    }
}

// ---------------------------------------------------------------------------
// Lemma chain
// ---------------------------------------------------------------------------

/// Float evaluation of the three-link chain bounding μ_i/λ from below by
/// closed forms, instantiated per lattice; exact quantities are computed
/// exactly and converted once at the end.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaChainReport {
    pub i: usize,
    /// μ_i/λ
    pub gamma_value: f64,
    /// max over dual sections of det(Λ|L⊥)^{1/i} / (κ_i^{1/i} λ)
    pub link_a_rhs: f64,
    /// det Λ^{1/n} / (κ_n^{1/n} λ) · ρ_i · τ_value(Λ*, i)⁻¹
    pub link_b_rhs: f64,
    /// δ_upper(n)^{-1/n} (link c lower-bounds detΛ^{1/n}/(κ_n^{1/n}λ))
    pub link_c_lhs: f64,
    pub link_c_rhs: f64,
    /// Full Lemma right-hand side δ^{-1/n}·ρ_i·max{...}
    pub lemma_rhs_full: f64,
    pub ok: bool,
}

pub fn lemma_chain_check(
    lattice: &Lattice,
    i: usize,
    cfg: &RunConfig,
) -> Result<LemmaChainReport, Error> {
    let n = lattice.dim();
    if i < 1 || i >= n {
        return Err(Error::DimensionMismatch(
            "lemma chain needs 1 <= i <= n-1".into(),
        ));
    }
    let minima = covering_minimum(lattice, i, cfg)?;
    if !minima.complete {
        return Err(Error::BudgetExceeded);
    }
    let dual = lattice.dual();
    let rankin = crate::planes::rankin_value(&dual, i, cfg)?;
    if !rankin.complete {
        return Err(Error::BudgetExceeded);
    }
    let lambda = rat_f64(&packing_radius_sq(lattice, cfg)?).sqrt();
    let mu_i = rat_f64(&minima.mu_squared).sqrt();
    let gamma_value = mu_i / lambda;

    let kappa_i_pow = (crate::bounds::ln_unit_ball_volume(i) / i as f64).exp();
    let kappa_n_pow = (crate::bounds::ln_unit_ball_volume(n) / n as f64).exp();
    let det_n = rat_f64(lattice.det_squared()).powf(1.0 / (2.0 * n as f64));

    // Link (a): μ_i/λ >= max over enumerated dual sections of
    // det(Λ|L⊥)^{1/i}/(κ_i^{1/i} λ); the max is attained at the minimal
    // dual section determinant via det(Λ|L⊥) = Gramdet(Λ*∩L)^{-1/2}.
    let link_a_rhs =
        rat_f64(&rankin.min_gramdet).powf(-1.0 / (2.0 * i as f64)) / (kappa_i_pow * lambda);
    // Link (b): that max >= detΛ^{1/n}/(κ_n^{1/n} λ) · ρ_i · τ(Λ*,i)⁻¹.
    let link_b_rhs =
        det_n / (kappa_n_pow * lambda) * crate::bounds::rho_ball(n, i) / rankin.tau_value;
    // Link (c): detΛ^{1/n}/(κ_n^{1/n}λ) >= δ_upper(n)^{-1/n}.
    let link_c_lhs = det_n / (kappa_n_pow * lambda);
    let (dlog2, _) = crate::bounds::delta_upper_log2(n);
    let link_c_rhs = (-dlog2 / n as f64).exp2();

    let lemma = crate::bounds::lemma_rhs(n, i);
    let tol = cfg.tol;
    let ok = gamma_value >= link_a_rhs - tol
        && link_a_rhs >= link_b_rhs - tol
        && link_c_lhs >= link_c_rhs - tol
        && gamma_value >= lemma.full - tol;
    if !ok {
        return Err(Error::ChainViolation(format!(
            "gamma {gamma_value} links a {link_a_rhs} b {link_b_rhs} c {link_c_lhs}/{link_c_rhs}"
        )));
    }
    Ok(LemmaChainReport {
        i,
        gamma_value,
        link_a_rhs,
        link_b_rhs,
        link_c_lhs,
        link_c_rhs,
        lemma_rhs_full: lemma.full,
        ok,
    })
}
