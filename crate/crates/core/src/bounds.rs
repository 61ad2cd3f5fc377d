//! Closed-form bound engine: ball volumes, projection constants,
//! sphere-packing density bounds, Rankin upper bounds, a zeta-product lower
//! bound, and the free-plane substitution expression.
//!
//! Everything here is float arithmetic in log space; exact per-lattice
//! values live in the `planes` and `minima` modules.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::config::RunConfig;
use crate::enumerate::shortest_vector;
use crate::error::Error;
use crate::lattice::Lattice;
use crate::rational::rat_f64;

/// Dimensions where the exact densest-lattice density δ(Bⁿ) is known.
/// External constants (not derived in this crate); classical values for the
/// hexagonal, fcc, D4 and E8 lattices. Sources: Conway & Sloane, SPLAG,
/// table 1.2 (densest lattice packings in low dimensions).
pub const EXACT_DELTA_DIMS: [usize; 4] = [2, 3, 4, 8];

/// δ(Bⁿ) for n in EXACT_DELTA_DIMS.
pub fn exact_delta(n: usize) -> Option<f64> {
    let pi = std::f64::consts::PI;
    match n {
        2 => Some(pi / 12f64.sqrt()),
        3 => Some(pi / 18f64.sqrt()),
        4 => Some(pi * pi / 16.0),
        8 => Some(pi.powi(4) / 384.0),
        _ => None,
    }
}

/// Hermite constants γₙ for the same dimensions (external table).
pub fn exact_hermite(n: usize) -> Option<f64> {
    match n {
        2 => Some((4.0f64 / 3.0).sqrt()),
        3 => Some(2.0f64.powf(1.0 / 3.0)),
        4 => Some(2.0f64.sqrt()),
        8 => Some(2.0),
        _ => None,
    }
}

/// ln κₙ where κₙ = π^{n/2} / Γ(n/2 + 1); stable up to n ~ 10⁶.
pub fn ln_unit_ball_volume(n: usize) -> f64 {
    let nf = n as f64;
    0.5 * nf * std::f64::consts::PI.ln() - ln_gamma(0.5 * nf + 1.0)
}

/// κₙ, the volume of the n-dimensional unit ball.
pub fn unit_ball_volume(n: usize) -> f64 {
    ln_unit_ball_volume(n).exp()
}

/// ρ_i(Bⁿ) = κₙ^{1/n} / κ_i^{1/i}; always at least √(i/n).
pub fn rho_ball(n: usize, i: usize) -> f64 {
    assert!(1 <= i && i <= n);
    let v = (ln_unit_ball_volume(n) / n as f64 - ln_unit_ball_volume(i) / i as f64).exp();
    debug_assert!(v >= (i as f64 / n as f64).sqrt() - 1e-12);
    v
}

/// Threshold below which the asymptotic density exponent is replaced by the
/// trivial bound δ <= 1 (the o(1) in the exponent is not quantified).
pub const KL_MIN_DIM: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DensityBoundKind {
    Trivial,
    KabatianskiLevenshtein,
}

/// Upper bound on δ(Bⁿ) in log₂ form: −0.599·n for n >= KL_MIN_DIM, else 0
/// (trivial bound 1). Returns the bound and which form was used.
pub fn delta_upper_log2(n: usize) -> (f64, DensityBoundKind) {
    if n >= KL_MIN_DIM {
        (-0.599 * n as f64, DensityBoundKind::KabatianskiLevenshtein)
    } else {
        (0.0, DensityBoundKind::Trivial)
    }
}

pub fn delta_upper(n: usize) -> f64 {
    let (log2, _) = delta_upper_log2(n);
    log2.exp2()
}

/// Rankin upper bound min{√(n−i+1), (√(i+1))^{(n−i)/i}}; equals 1 at i = n.
pub fn rankin_upper(n: usize, i: usize) -> f64 {
    assert!(1 <= i && i <= n);
    let a = ((n - i + 1) as f64).sqrt();
    let b = (((i + 1) as f64).sqrt()).powf((n - i) as f64 / i as f64);
    a.min(b)
}

/// ζ(k) for integer k >= 2 by direct series with an Euler-Maclaurin tail;
/// absolute error below 1e-14.
pub fn zeta(k: usize) -> f64 {
    assert!(k >= 2, "zeta(1) diverges");
    let kf = k as f64;
    if k > 60 {
        return 1.0 + 2f64.powf(-kf) + 3f64.powf(-kf);
    }
    let n = 64usize;
    let nf = n as f64;
    let mut s = 0.0;
    for m in 1..n {
        s += (m as f64).powf(-kf);
    }
    // ∫_N^∞ + f(N)/2 − B2/2! f'(N) − B4/4! f'''(N) − ...
    let t1 = nf.powf(1.0 - kf) / (kf - 1.0);
    let t2 = 0.5 * nf.powf(-kf);
    let t3 = kf / 12.0 * nf.powf(-kf - 1.0);
    let t5 = -kf * (kf + 1.0) * (kf + 2.0) / 720.0 * nf.powf(-kf - 3.0);
    let t7 = kf * (kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0) / 30240.0
        * nf.powf(-kf - 5.0);
    s + t1 + t2 + t3 + t5 + t7
}

/// Zeta-product lower bound on τ(n,i) over the rationals:
/// (2n · Π_{j=1..i} ζ(n−i+j)/((n−i+j)κ_{n−i+j}) / Π_{j=2..i} ζ(j)/(jκ_j))^{1/(in)}.
pub fn thunder_lower(n: usize, i: usize) -> Result<f64, Error> {
    if i < 2 || i > n - 1 {
        return Err(Error::DomainError(
            "thunder bound needs 2 <= i <= n-1 (zeta(1) diverges)".into(),
        ));
    }
    let mut ln = (2.0 * n as f64).ln();
    for j in 1..=i {
        let k = n - i + j;
        ln += zeta(k).ln() - (k as f64).ln() - ln_unit_ball_volume(k);
    }
    for j in 2..=i {
        ln -= zeta(j).ln() - (j as f64).ln() - ln_unit_ball_volume(j);
    }
    Ok((ln / (i as f64 * n as f64)).exp())
}

/// Lower bound on γ_i(Bⁿ): full form δ_upper^{-1/n}·ρ_i·max{...} and the
/// simplified ball form (3/2)√(i/n)·max{...} (valid for large n).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LemmaRhs {
    pub full: f64,
    pub simplified_ball: f64,
}

pub fn lemma_rhs(n: usize, i: usize) -> LemmaRhs {
    assert!(1 <= i && i <= n);
    let max_term = {
        let a = ((i + 1) as f64).powf(-((n - i) as f64) / (2.0 * i as f64));
        let b = 1.0 / ((n - i + 1) as f64).sqrt();
        a.max(b)
    };
    let (log2, _) = delta_upper_log2(n);
    let full = (-log2 / n as f64).exp2() * rho_ball(n, i) * max_term;
    let simplified_ball = 1.5 * (i as f64 / n as f64).sqrt() * max_term;
    LemmaRhs {
        full,
        simplified_ball,
    }
}

/// The displayed substitution value at i = n − n/log₂(n):
/// (3/2)·√(1−1/log₂ n)·(√(log₂ n/(n log₂ n − n + log₂ n)))^{1/(log₂ n − 1)}.
/// Also returns the last factor separately (it tends to 1/√2).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TheoremExpression {
    pub value: f64,
    pub last_factor: f64,
}

pub fn theorem_expression(n: usize) -> TheoremExpression {
    assert!(n >= 4);
    let log2n = (n as f64).log2();
    let inner = log2n / (n as f64 * log2n - n as f64 + log2n);
    let last_factor = inner.sqrt().powf(1.0 / (log2n - 1.0));
    let value = 1.5 * (1.0 - 1.0 / log2n).sqrt() * last_factor;
    TheoremExpression { value, last_factor }
}

/// Smallest scanned n with expression(m) > 1 for every scanned m >= n, or
/// None when the expression never stabilizes above 1 within the range.
pub fn theorem_threshold_scan(max_n: usize) -> Option<usize> {
    let mut last_failure = 3usize; // below the domain
    for n in 4..=max_n {
        if theorem_expression(n).value <= 1.0 {
            last_failure = n;
        }
    }
    let candidate = last_failure + 1;
    if candidate <= max_n && theorem_expression(candidate.max(4)).value > 1.0 {
        Some(candidate.max(4))
    } else {
        None
    }
}

/// Eq. checking report for τ(n,1) = 2(δ(Bⁿ)/κₙ)^{1/n} against √γₙ.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TauN1Report {
    pub n: usize,
    pub from_density: f64,
    pub sqrt_hermite: f64,
}

/// Evaluates 2(δ(Bⁿ)/κₙ)^{1/n} from the external δ table and compares with
/// the external Hermite-constant table. Only defined for the dimensions
/// with exact δ.
pub fn tau_n1_identity(n: usize) -> Result<TauN1Report, Error> {
    let delta = exact_delta(n).ok_or_else(|| {
        Error::DomainError(format!("no exact density table entry for n = {n}"))
    })?;
    let gamma = exact_hermite(n).expect("tables cover the same dimensions");
    let from_density = 2.0 * (delta / unit_ball_volume(n)).powf(1.0 / n as f64);
    Ok(TauN1Report {
        n,
        from_density,
        sqrt_hermite: gamma.sqrt(),
    })
}

/// Packing density check (λ₁/2)ⁿ·κₙ <= δ_upper(n)·det Λ; for dimensions in
/// the exact table also against exact δ(Bⁿ).
#[derive(Debug, Clone, Serialize)]
pub struct PackingDensityReport {
    pub n: usize,
    pub packing_density: f64,
    pub upper_bound_used: f64,
    pub exact_delta: Option<f64>,
    pub ok: bool,
}

pub fn packing_density_check(lattice: &Lattice, cfg: &RunConfig) -> Result<PackingDensityReport, Error> {
    let n = lattice.dim();
    let sv = shortest_vector(lattice, cfg)?;
    let lambda = rat_f64(&sv.norm_sq).sqrt() / 2.0;
    let det = rat_f64(lattice.det_squared()).sqrt();
    let density = lambda.powi(n as i32) * unit_ball_volume(n) / det;
    let ub = delta_upper(n).min(1.0);
    let exact = exact_delta(n);
    let bound = exact.map_or(ub, |d| d.min(ub));
    let ok = density <= bound + cfg.tol;
    Ok(PackingDensityReport {
        n,
        packing_density: density,
        upper_bound_used: bound,
        exact_delta: exact,
        ok,
    })
}

/// One row of evaluated closed-form bounds for a given (n, i).
#[derive(Debug, Clone, Serialize)]
pub struct BoundProfile {
    pub n: usize,
    pub i: usize,
    pub kappa_n: f64,
    pub kappa_i: f64,
    pub rho: f64,
    pub rho_lower: f64,
    pub delta_upper_log2: f64,
    pub density_bound_kind: DensityBoundKind,
    pub rankin_upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thunder_lower: Option<f64>,
    pub lemma_rhs_general: f64,
    pub lemma_rhs_ball: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_expression: Option<f64>,
}

pub fn bound_profile(n: usize, i: usize) -> Result<BoundProfile, Error> {
    if i < 1 || i > n {
        return Err(Error::DomainError("need 1 <= i <= n".into()));
    }
    let rhs = lemma_rhs(n, i);
    let (dlog2, kind) = delta_upper_log2(n);
    let theorem = if n >= 4 {
        let k = n - (n as f64 / (n as f64).log2()).round() as usize;
        if k == i {
            Some(theorem_expression(n).value)
        } else {
            None
        }
    } else {
        None
    };
    Ok(BoundProfile {
        n,
        i,
        kappa_n: unit_ball_volume(n),
        kappa_i: unit_ball_volume(i),
        rho: rho_ball(n, i),
        rho_lower: (i as f64 / n as f64).sqrt(),
        delta_upper_log2: dlog2,
        density_bound_kind: kind,
        rankin_upper: rankin_upper(n, i),
        thunder_lower: if i >= 2 && i < n {
            Some(thunder_lower(n, i)?)
        } else {
            None
        },
        lemma_rhs_general: rhs.full,
        lemma_rhs_ball: rhs.simplified_ball,
        theorem_expression: theorem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-12);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-12);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-12);
        // log form stays finite far beyond direct evaluation
        assert!(ln_unit_ball_volume(1_000_000).is_finite());
    }

    #[test]
    fn rho_examples() {
        assert!((rho_ball(5, 5) - 1.0).abs() < 1e-12);
        let r21 = rho_ball(2, 1);
        assert!((r21 - PI.sqrt() / 2.0).abs() < 1e-12);
        assert!(r21 >= (0.5f64).sqrt());
        assert!(rho_ball(100, 50) >= (0.5f64).sqrt());
    }

    #[test]
    fn rho_monotone_source() {
        // Γ(m/2+1)^{1/m}/√m strictly decreasing
        let f = |m: usize| ln_gamma(m as f64 / 2.0 + 1.0) / m as f64 - 0.5 * (m as f64).ln();
        for m in 1..500 {
            assert!(f(m + 1) < f(m) + 1e-12, "m = {m}");
        }
    }

    #[test]
    fn delta_upper_policy() {
        let (l, k) = delta_upper_log2(10);
        assert_eq!(l, 0.0);
        assert_eq!(k, DensityBoundKind::Trivial);
        let (l, k) = delta_upper_log2(100);
        assert!((l - (-59.9)).abs() < 1e-12);
        assert_eq!(k, DensityBoundKind::KabatianskiLevenshtein);
        assert!((delta_upper(1000).log2() - (-599.0)).abs() < 1e-9);
    }

    #[test]
    fn rankin_upper_examples() {
        assert!((rankin_upper(4, 4) - 1.0).abs() < 1e-12);
        assert!((rankin_upper(4, 2) - 3f64.sqrt()).abs() < 1e-12);
        for n in 3..=40 {
            assert!((rankin_upper(n, 1) - (n as f64).sqrt()).abs() < 1e-12);
        }
        // internal consistency: never below 1
        for n in 1..=60 {
            for i in 1..=n {
                assert!(rankin_upper(n, i) >= 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn zeta_kernel() {
        assert!((zeta(2) - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(4) - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(3) - 1.2020569031595943).abs() < 1e-14);
        assert!((zeta(80) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn thunder_is_below_known_value() {
        // τ(4,2) = (3/2)^{1/4}
        let t = thunder_lower(4, 2).unwrap();
        assert!(t <= (1.5f64).powf(0.25));
        assert!(t > 0.0);
        assert!(thunder_lower(4, 4).is_err());
    }

    #[test]
    fn thunder_order_of_magnitude_trend() {
        // For i = n/2 the bound grows like √n^{(n−i)/n}; the normalized
        // log-exponent climbs monotonically toward 1 (no exact target).
        let mut prev = 0.0;
        for k in 10..=50 {
            let (n, i) = (2 * k, k);
            let v = thunder_lower(n, i).unwrap();
            let normalized = v.ln() / ((n - i) as f64 / n as f64 * 0.5 * (n as f64).ln());
            assert!(normalized > prev, "k = {k}");
            assert!(normalized < 1.0, "k = {k}");
            prev = normalized;
        }
        // well on its way to the constant by n = 200
        let v = thunder_lower(200, 100).unwrap();
        let normalized = v.ln() / (0.5 * 0.5 * (200f64).ln());
        assert!(normalized > 0.45);
    }

    #[test]
    fn tau_n1_identity_matches_hermite() {
        for n in EXACT_DELTA_DIMS {
            let rep = tau_n1_identity(n).unwrap();
            assert!(
                (rep.from_density - rep.sqrt_hermite).abs() < 1e-9,
                "n = {n}: {} vs {}",
                rep.from_density,
                rep.sqrt_hermite
            );
        }
        // closed forms: n=2 → (4/3)^{1/4}, n=4 → 2^{1/4}, n=8 → √2
        assert!((tau_n1_identity(2).unwrap().from_density - (4f64 / 3.0).powf(0.25)).abs() < 1e-12);
        assert!((tau_n1_identity(4).unwrap().from_density - 2f64.powf(0.25)).abs() < 1e-12);
        assert!((tau_n1_identity(8).unwrap().from_density - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lemma_rhs_reductions() {
        // i = n: δ^{-1/n}·1·1
        let r = lemma_rhs(100, 100);
        assert!((r.full - 2f64.powf(0.599)).abs() < 1e-9);
        // full dominates the simplified ball form once the KL regime starts
        for n in [50usize, 64, 100, 128] {
            for i in [1usize, n / 2, n - 1, n] {
                let r = lemma_rhs(n, i);
                assert!(r.full >= r.simplified_ball - 1e-12, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn theorem_expression_limit() {
        let te = theorem_expression(1 << 20);
        assert!((te.last_factor - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.02);
        // monotone approach over n = 2^k
        let mut prev_gap = f64::INFINITY;
        for k in 4..=20 {
            let te = theorem_expression(1usize << k);
            let gap = (te.last_factor - std::f64::consts::FRAC_1_SQRT_2).abs();
            assert!(gap < prev_gap, "k = {k}");
            prev_gap = gap;
        }
    }

    #[test]
    fn theorem_scan_finds_threshold() {
        let n0 = theorem_threshold_scan(1 << 16).expect("threshold within range");
        assert!(n0 > 4);
        assert!(theorem_expression(n0).value > 1.0);
        assert!(theorem_expression(n0 - 1).value <= 1.0);
    }

    #[test]
    fn packing_density_bound_holds() {
        use crate::lattice::{catalog, CatalogName};
        let cfg = RunConfig::default();
        for (name, n) in [
            (CatalogName::Zn, 4),
            (CatalogName::Dn, 4),
            (CatalogName::E8, 8),
            (CatalogName::Hexagonal, 2),
        ] {
            let rep = packing_density_check(&catalog(name, n).unwrap(), &cfg).unwrap();
            assert!(rep.ok, "{name:?}");
        }
        // E8 attains δ(B⁸) = π⁴/384 exactly
        let rep = packing_density_check(&catalog(CatalogName::E8, 8).unwrap(), &cfg).unwrap();
        assert!((rep.packing_density - PI.powi(4) / 384.0).abs() < 1e-12);
    }
}
