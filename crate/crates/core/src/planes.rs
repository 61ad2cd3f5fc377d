//! Lattice-plane enumeration with determinant cutoffs and per-lattice
//! Rankin values.
//!
//! Exhaustiveness argument for `enumerate_lattice_planes`: a primitive
//! rank-i sublattice S with Gramdet(S) <= C contains i independent vectors
//! at its successive minima, and Minkowski's second theorem bounds
//! λ_i(S)² <= γ_i^i · C / λ₁(Λ)^{2(i-1)} with γ_i^i <= (4/3)^{i(i-1)/2}.
//! Saturating the span of any such witness subset recovers S, so scanning
//! all i-subsets of lattice vectors below that length bound and saturating
//! finds every plane under the cutoff. Cross-checked by a brute-force
//! oracle in the test suite for n <= 4.

use num::traits::{One, Zero};
use serde::Serialize;

use crate::config::RunConfig;
use crate::enumerate::{enumerate_all_within, lll_gram, normalize_sign, shortest_vector, Budget};
use crate::error::Error;
use crate::imat::{qmat_to_imat_exact, IMat};
use crate::lattice::{Lattice, LatticePlane};
use crate::qmat::QMat;
use crate::rational::{frac, rat_f64, rat_from_f64_upper, rat_string, Rat};

/// A plane together with its exact section Gram determinant.
#[derive(Debug, Clone)]
pub struct PlaneWithDet {
    pub plane: LatticePlane,
    pub gramdet: Rat,
}

#[derive(Debug, Clone)]
pub struct PlaneEnumeration {
    pub planes: Vec<PlaneWithDet>,
    /// True when the list provably contains every plane under the cutoff.
    pub complete: bool,
}

/// All lattice planes L of rank i with Gramdet(Λ∩L) <= cutoff, in canonical
/// HNF form, deduplicated by span, sorted by (gramdet, basis).
pub fn enumerate_lattice_planes(
    lattice: &Lattice,
    i: usize,
    cutoff: &Rat,
    cfg: &RunConfig,
) -> Result<PlaneEnumeration, Error> {
    let n = lattice.dim();
    if i < 1 || i >= n {
        return Err(Error::DimensionMismatch(format!(
            "plane rank must satisfy 1 <= i <= n-1, got i={i}, n={n}"
        )));
    }
    if 2 * i > n {
        // Transfer through the dual: ranks above n/2 enumerate faster there.
        let dual = lattice.dual();
        let dual_cutoff = cutoff / lattice.det_squared();
        let dual_planes = enumerate_lattice_planes(&dual, n - i, &dual_cutoff, cfg)?;
        let mut planes: Vec<PlaneWithDet> = dual_planes
            .planes
            .into_iter()
            .map(|p| {
                let plane = dual.plane_transfer(&p.plane);
                let gramdet = &p.gramdet * lattice.det_squared();
                debug_assert_eq!(gramdet, lattice.section_gramdet(&plane));
                PlaneWithDet { plane, gramdet }
            })
            .collect();
        planes.sort_by(|a, b| {
            (&a.gramdet, a.plane.section_basis()).cmp(&(&b.gramdet, b.plane.section_basis()))
        });
        return Ok(PlaneEnumeration {
            planes,
            complete: dual_planes.complete,
        });
    }

    let mut budget = Budget::new(cfg.node_budget);
    let (reduced, u) = lll_gram(lattice.gram());
    let u_int = qmat_to_imat_exact(&u);
    let lambda1_sq = shortest_vector(lattice, cfg)?.norm_sq;

    // Vector length bound from the witness argument.
    let gamma_pow = num::pow::pow(frac(4, 3), i * (i - 1) / 2);
    let lambda_pow = num::pow::pow(lambda1_sq.clone(), i - 1);
    let r_sq = &gamma_pow * cutoff / &lambda_pow;

    let zero = vec![Rat::zero(); n];
    let mut complete = true;
    let mut vectors: Vec<(Vec<i64>, Rat)> =
        match enumerate_all_within(&reduced, &zero, &r_sq, &mut budget) {
            Ok(v) => v,
            Err(Error::BudgetExceeded) => {
                return Ok(PlaneEnumeration {
                    planes: Vec::new(),
                    complete: false,
                })
            }
            Err(e) => return Err(e),
        }
        .into_iter()
        .filter(|(x, _)| x.iter().any(|&v| v != 0))
        .map(|(x, _)| {
            let xn = normalize_sign(&x);
            let norm = crate::enumerate::form_value(&reduced, &zero, &xn);
            (xn, norm)
        })
        .collect();
    vectors.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
    vectors.dedup();

    // DFS over index-increasing subsets with a partial-determinant prune:
    // a witness subset ordered by length has every prefix Gram determinant
    // at most γ_i^i · cutoff / λ₁^{2(i-r)}.
    let mut found: std::collections::BTreeMap<IMat, Rat> = std::collections::BTreeMap::new();
    let mut stack: Vec<usize> = Vec::new();
    match dfs_subsets(
        &vectors,
        &reduced,
        i,
        &gamma_pow,
        cutoff,
        &lambda1_sq,
        &mut stack,
        0,
        &mut found,
        &mut budget,
    ) {
        Ok(()) => {}
        Err(Error::BudgetExceeded) => complete = false,
        Err(e) => return Err(e),
    }

    let mut planes: Vec<PlaneWithDet> = Vec::new();
    for (section_red, gramdet) in found {
        if &gramdet > cutoff {
            continue;
        }
        // Map the section basis back to original coordinates.
        let section_orig = u_int.mul(&section_red).column_lattice_hnf();
        let plane = lattice.plane_from_section_basis(section_orig)?;
        debug_assert_eq!(gramdet, lattice.section_gramdet(&plane));
        planes.push(PlaneWithDet { plane, gramdet });
    }
    planes.sort_by(|a, b| {
        (&a.gramdet, a.plane.section_basis()).cmp(&(&b.gramdet, b.plane.section_basis()))
    });
    planes.dedup_by(|a, b| a.plane == b.plane);
    Ok(PlaneEnumeration { planes, complete })
}

#[allow(clippy::too_many_arguments)]
fn dfs_subsets(
    vectors: &[(Vec<i64>, Rat)],
    gram: &QMat,
    i: usize,
    gamma_pow: &Rat,
    cutoff: &Rat,
    lambda1_sq: &Rat,
    stack: &mut Vec<usize>,
    start: usize,
    found: &mut std::collections::BTreeMap<IMat, Rat>,
    budget: &mut Budget,
) -> Result<(), Error> {
    if stack.len() == i {
        let m = IMat::from_fn(gram.rows(), i, |r, c| {
            num::bigint::BigInt::from(vectors[stack[c]].0[r])
        });
        let sat = m.saturate_columns();
        if sat.cols() != i {
            return Ok(()); // dependent subset
        }
        let gramdet = sat.to_qmat().gram_with(gram).det();
        found
            .entry(sat)
            .and_modify(|g| debug_assert_eq!(g, &gramdet))
            .or_insert(gramdet);
        return Ok(());
    }
    let r = stack.len() + 1; // size after extension
    let prune_bound = gamma_pow * cutoff / num::pow::pow(lambda1_sq.clone(), i - r);
    for idx in start..vectors.len() {
        budget.tick()?;
        stack.push(idx);
        // Exact partial Gram determinant of the chosen vectors.
        let m = QMat::from_fn(gram.rows(), r, |row, c| {
            Rat::from_integer(num::bigint::BigInt::from(vectors[stack[c]].0[row]))
        });
        let partial = m.gram_with(gram).det();
        if !partial.is_zero() && partial <= prune_bound {
            dfs_subsets(
                vectors, gram, i, gamma_pow, cutoff, lambda1_sq, stack, idx + 1, found, budget,
            )?;
        }
        stack.pop();
    }
    Ok(())
}

/// Per-lattice Rankin data: the exact minimal section Gram determinant at
/// rank i, its minimizing plane, and the normalized tau value.
#[derive(Debug, Clone)]
pub struct RankinReport {
    pub i: usize,
    pub min_gramdet: Rat,
    pub minimizing_plane: LatticePlane,
    /// min_gramdet^{1/(2i)} / det²^{1/(2n)}
    pub tau_value: f64,
    /// Closed-form upper bound for τ(n,i) (sup level).
    pub upper_bound: f64,
    pub complete: bool,
}

#[derive(Serialize)]
struct RankinReportJson {
    i: usize,
    min_gramdet: String,
    plane_hnf: Vec<Vec<String>>,
    tau: f64,
    upper_bound: f64,
    complete: bool,
}

impl RankinReport {
    pub fn to_json(&self) -> String {
        let j = RankinReportJson {
            i: self.i,
            min_gramdet: rat_string(&self.min_gramdet),
            plane_hnf: self
                .minimizing_plane
                .hnf_rows()
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
            tau: self.tau_value,
            upper_bound: self.upper_bound,
            complete: self.complete,
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }
}

/// Candidate plane from subsets of the LLL-reduced basis: a cheap upper
/// bound on the minimal gramdet that clamps the search cutoff, and the
/// fallback report when the budget runs out.
fn incumbent_plane(lattice: &Lattice, i: usize) -> PlaneWithDet {
    let n = lattice.dim();
    let (reduced, u) = lll_gram(lattice.gram());
    let u_int = qmat_to_imat_exact(&u);
    let mut best: Option<(Rat, IMat)> = None;
    let idx: Vec<usize> = (0..n).collect();
    for combo in combinations(&idx, i) {
        let m = IMat::from_fn(n, i, |r, c| {
            if r == combo[c] {
                num::bigint::BigInt::one()
            } else {
                num::bigint::BigInt::from(0)
            }
        });
        let gd = m.to_qmat().gram_with(&reduced).det();
        match &best {
            Some((b, _)) if *b <= gd => {}
            _ => best = Some((gd, m)),
        }
    }
    let (gramdet, section_red) = best.expect("at least one subset");
    let section_orig = u_int.mul(&section_red).column_lattice_hnf();
    let plane = lattice
        .plane_from_section_basis(section_orig)
        .expect("basis subsets are primitive");
    PlaneWithDet { plane, gramdet }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo = Vec::new();
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

/// Exact inner infimum of the Rankin quotient for a fixed lattice: finds
/// the rank-i plane minimizing the section Gram determinant.
///
/// The search cutoff is auto-derived: the closed-form upper bound for
/// τ(n,i) turns into a gramdet cutoff (ub^{2i}·det²^{i/n}, rounded up), and
/// the incumbent from reduced-basis subsets clamps it further. Both are
/// valid upper bounds for the minimum, so the enumeration that respects
/// them is complete.
pub fn rankin_value(lattice: &Lattice, i: usize, cfg: &RunConfig) -> Result<RankinReport, Error> {
    let n = lattice.dim();
    if i < 1 || i >= n {
        return Err(Error::DimensionMismatch(format!(
            "rankin rank must satisfy 1 <= i <= n-1, got i={i}, n={n}"
        )));
    }
    let ub = crate::bounds::rankin_upper(n, i);
    let det_sq = rat_f64(lattice.det_squared());
    let eq25_cutoff = rat_from_f64_upper(
        ub.powi(2 * i as i32) * det_sq.powf(i as f64 / n as f64) * (1.0 + 1e-9),
    );
    let incumbent = incumbent_plane(lattice, i);
    let cutoff = if incumbent.gramdet < eq25_cutoff {
        incumbent.gramdet.clone()
    } else {
        eq25_cutoff
    };
    let enumeration = enumerate_lattice_planes(lattice, i, &cutoff, cfg)?;
    // When the budget ran out the incumbent is still a valid upper bound on
    // the infimum; the report is flagged incomplete.
    let best = enumeration
        .planes
        .first()
        .cloned()
        .unwrap_or_else(|| incumbent.clone());
    let best = if enumeration.complete || best.gramdet <= incumbent.gramdet {
        best
    } else {
        incumbent
    };
    let tau = rat_f64(&best.gramdet).powf(1.0 / (2.0 * i as f64))
        / det_sq.powf(1.0 / (2.0 * n as f64));
    Ok(RankinReport {
        i,
        min_gramdet: best.gramdet.clone(),
        minimizing_plane: best.plane,
        tau_value: tau,
        upper_bound: ub,
        complete: enumeration.complete,
    })
}

/// Exact per-lattice Rankin duality:
/// min_gramdet_i(Λ) = min_gramdet_{n-i}(Λ*) · det²Λ, with the minimizing
/// planes corresponding under plane transfer.
#[derive(Debug, Clone)]
pub struct RankinDualityReport {
    pub primal: RankinReport,
    pub dual: RankinReport,
    pub det_squared: Rat,
}

pub fn rankin_duality_check(
    lattice: &Lattice,
    i: usize,
    cfg: &RunConfig,
) -> Result<RankinDualityReport, Error> {
    let primal = rankin_value(lattice, i, cfg)?;
    let dual_lattice = lattice.dual();
    let dual = rankin_value(&dual_lattice, lattice.dim() - i, cfg)?;
    let rhs = &dual.min_gramdet * lattice.det_squared();
    if primal.min_gramdet != rhs {
        return Err(Error::IdentityViolation(format!(
            "rankin duality: {} vs {}",
            rat_string(&primal.min_gramdet),
            rat_string(&rhs)
        )));
    }
    // The transferred minimizing plane must achieve the dual minimum.
    let transferred = lattice.plane_transfer(&primal.minimizing_plane);
    if dual_lattice.section_gramdet(&transferred) != dual.min_gramdet {
        return Err(Error::IdentityViolation(
            "transferred minimizing plane does not achieve the dual minimum".into(),
        ));
    }
    Ok(RankinDualityReport {
        primal,
        dual,
        det_squared: lattice.det_squared().clone(),
    })
}

/// Per-lattice instance of the composition inequality:
/// tau_i(Λ) <= tau_m(Λ) · rankin_upper(m, i) for i <= m, checked in floats.
/// The per-lattice variant restricts to the minimizing m-section, whose
/// rank-i sections are rank-i sections of Λ.
#[derive(Debug, Clone)]
pub struct RankinChainReport {
    pub tau_i: f64,
    pub tau_m: f64,
    pub upper_m_i: f64,
    pub ok: bool,
}

pub fn rankin_chain_check(
    lattice: &Lattice,
    i: usize,
    m: usize,
    cfg: &RunConfig,
) -> Result<RankinChainReport, Error> {
    if !(1 <= i && i <= m && m < lattice.dim()) {
        return Err(Error::DimensionMismatch(
            "chain check needs 1 <= i <= m <= n-1".into(),
        ));
    }
    let rep_i = rankin_value(lattice, i, cfg)?;
    let rep_m = rankin_value(lattice, m, cfg)?;
    let upper = if i == m {
        1.0
    } else {
        crate::bounds::rankin_upper(m, i)
    };
    let ok = rep_i.tau_value <= rep_m.tau_value * upper + cfg.tol;
    Ok(RankinChainReport {
        tau_i: rep_i.tau_value,
        tau_m: rep_m.tau_value,
        upper_m_i: upper,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{catalog, CatalogName, Subspace};
    use crate::rational::rat;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn z2_rank1_planes() {
        let z2 = catalog(CatalogName::Zn, 2).unwrap();
        let e = enumerate_lattice_planes(&z2, 1, &rat(1), &cfg()).unwrap();
        assert!(e.complete);
        assert_eq!(e.planes.len(), 2); // spans of e1 and e2
        let e2 = enumerate_lattice_planes(&z2, 1, &rat(2), &cfg()).unwrap();
        assert_eq!(e2.planes.len(), 4); // adds (1,1) and (1,-1)
    }

    #[test]
    fn d4_contains_gramdet3_plane() {
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let e = enumerate_lattice_planes(&d4, 2, &rat(3), &cfg()).unwrap();
        assert!(e.planes.iter().any(|p| p.gramdet == rat(3)));
        // minimal gramdet of a rank-2 section of D4 is 3
        assert_eq!(e.planes.first().unwrap().gramdet, rat(3));
    }

    #[test]
    fn rankin_values_catalog() {
        let z4 = catalog(CatalogName::Zn, 4).unwrap();
        for i in 1..4 {
            let rep = rankin_value(&z4, i, &cfg()).unwrap();
            assert_eq!(rep.min_gramdet, rat(1));
            assert!((rep.tau_value - 1.0).abs() < 1e-12);
            assert!(rep.complete);
        }

        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let rep = rankin_value(&d4, 2, &cfg()).unwrap();
        assert_eq!(rep.min_gramdet, rat(3));
        assert!((rep.tau_value - (1.5f64).powf(0.25)).abs() < 1e-12);
        assert!(rep.complete);

        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        let rep = rankin_value(&hex, 1, &cfg()).unwrap();
        assert_eq!(rep.min_gramdet, rat(1));
        assert!((rep.tau_value - (4f64 / 3.0).powf(0.25)).abs() < 1e-12);
    }

    #[test]
    fn rankin_duality_examples() {
        let z4 = catalog(CatalogName::Zn, 4).unwrap();
        rankin_duality_check(&z4, 2, &cfg()).unwrap();

        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let rep = rankin_duality_check(&d4, 2, &cfg()).unwrap();
        assert_eq!(rep.primal.min_gramdet, rat(3));
        assert_eq!(rep.dual.min_gramdet, crate::rational::frac(3, 4));
    }

    #[test]
    fn rankin_chain_examples() {
        let z5 = catalog(CatalogName::Zn, 5).unwrap();
        assert!(rankin_chain_check(&z5, 1, 3, &cfg()).unwrap().ok);
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        assert!(rankin_chain_check(&d4, 1, 2, &cfg()).unwrap().ok);
    }

    #[test]
    fn enumeration_matches_brute_force_oracle() {
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let l = Lattice::from_basis(QMat::from_rows(vec![
            vec![rat(1), rat(1), rat(0)],
            vec![rat(0), rat(2), rat(1)],
            vec![rat(0), rat(0), rat(1)],
        ]))
        .unwrap();
        for (lat, i) in [(&l, 1usize), (&l, 2), (&d4, 2), (&d4, 3)] {
            let rep = rankin_value(lat, i, &cfg()).unwrap();
            let oracle = brute_force_min_gramdet(lat, i, 3);
            assert_eq!(rep.min_gramdet, oracle, "lattice dim {} i {}", lat.dim(), i);
        }
    }

    /// Independent oracle: every rank-i span generated by i-subsets of
    /// vectors with coordinates bounded by `coord_bound`, deduplicated by
    /// the primitive vector of i×i minors (Plücker coordinates), then
    /// saturated and measured exactly.
    pub(crate) fn brute_force_min_gramdet(lattice: &Lattice, i: usize, coord_bound: i64) -> Rat {
        let n = lattice.dim();
        let mut vecs: Vec<Vec<i64>> = Vec::new();
        let mut x = vec![-coord_bound; n];
        loop {
            if x.iter().any(|&v| v != 0) {
                vecs.push(x.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    break;
                }
                x[k] += 1;
                if x[k] <= coord_bound {
                    break;
                }
                x[k] = -coord_bound;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        // index combinations of coordinate rows for the minor vector
        let rows: Vec<Vec<usize>> = combinations(&(0..n).collect::<Vec<_>>(), i);
        let mut spans: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
        let mut chosen: Vec<usize> = Vec::new();
        fn minor_key(vecs: &[Vec<i64>], chosen: &[usize], rows: &[Vec<usize>], i: usize) -> Option<Vec<i64>> {
            let mut key: Vec<i64> = Vec::with_capacity(rows.len());
            for rset in rows {
                // determinant of the i x i minor over i128
                let mut m = vec![vec![0i128; i]; i];
                for (a, &r) in rset.iter().enumerate() {
                    for (b, &c) in chosen.iter().enumerate() {
                        m[a][b] = vecs[c][r] as i128;
                    }
                }
                key.push(det_i128(&mut m) as i64);
            }
            if key.iter().all(|&v| v == 0) {
                return None; // dependent
            }
            // primitive + canonical sign
            let mut g: i64 = 0;
            for &v in &key {
                g = num::integer::gcd(g, v.abs());
            }
            let mut key: Vec<i64> = key.iter().map(|v| v / g).collect();
            if let Some(first) = key.iter().find(|&&v| v != 0) {
                if *first < 0 {
                    key = key.iter().map(|v| -v).collect();
                }
            }
            Some(key)
        }
        fn det_i128(m: &mut [Vec<i128>]) -> i128 {
            let k = m.len();
            let mut det: i128 = 1;
            for col in 0..k {
                let Some(p) = (col..k).find(|&r| m[r][col] != 0) else {
                    return 0;
                };
                if p != col {
                    m.swap(p, col);
                    det = -det;
                }
                for r in (col + 1)..k {
                    while m[r][col] != 0 {
                        let q = m[r][col] / m[col][col];
                        for c in col..k {
                            m[r][c] -= q * m[col][c];
                        }
                        if m[r][col] != 0 {
                            m.swap(r, col);
                            det = -det;
                        }
                    }
                }
                det *= m[col][col];
            }
            det
        }
        fn rec(
            vecs: &[Vec<i64>],
            i: usize,
            start: usize,
            chosen: &mut Vec<usize>,
            rows: &[Vec<usize>],
            spans: &mut std::collections::BTreeSet<Vec<i64>>,
        ) {
            if chosen.len() == i {
                if let Some(key) = minor_key(vecs, chosen, rows, i) {
                    spans.insert(key);
                }
                return;
            }
            for k in start..vecs.len() {
                chosen.push(k);
                rec(vecs, i, k + 1, chosen, rows, spans);
                chosen.pop();
            }
        }
        rec(&vecs, i, 0, &mut chosen, &rows, &mut spans);
        // One saturation per distinct span: recover a spanning subset from
        // the minor vector by solving with the original enumeration.
        let mut best: Option<Rat> = None;
        let mut seen_rep: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
        let mut chosen: Vec<usize> = Vec::new();
        fn rec2(
            lattice: &Lattice,
            vecs: &[Vec<i64>],
            i: usize,
            start: usize,
            chosen: &mut Vec<usize>,
            rows: &[Vec<usize>],
            seen: &mut std::collections::BTreeSet<Vec<i64>>,
            best: &mut Option<Rat>,
        ) {
            if chosen.len() == i {
                if let Some(key) = minor_key(vecs, chosen, rows, i) {
                    if seen.insert(key) {
                        let m = IMat::from_fn(lattice.dim(), i, |r, c| {
                            num::bigint::BigInt::from(vecs[chosen[c]][r])
                        });
                        let sat = m.saturate_columns();
                        let gd = sat.to_qmat().gram_with(lattice.gram()).det();
                        match best {
                            Some(b) if *b <= gd => {}
                            _ => *best = Some(gd),
                        }
                    }
                }
                return;
            }
            for k in start..vecs.len() {
                chosen.push(k);
                rec2(lattice, vecs, i, k + 1, chosen, rows, seen, best);
                chosen.pop();
            }
        }
        let _ = spans;
        rec2(
            lattice,
            &vecs,
            i,
            0,
            &mut chosen,
            &rows,
            &mut seen_rep,
            &mut best,
        );
        best.unwrap()
    }

    #[test]
    fn scale_and_unimodular_invariance() {
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let rep = rankin_value(&d4, 2, &cfg()).unwrap();
        let scaled = d4.scaled(&rat(3));
        let rep_scaled = rankin_value(&scaled, 2, &cfg()).unwrap();
        assert!((rep.tau_value - rep_scaled.tau_value).abs() < 1e-12);
        // min gramdet scales by c^{2i} = 81
        assert_eq!(rep_scaled.min_gramdet, &rep.min_gramdet * rat(81));

        // unimodular change of basis
        let u = QMat::from_rows(vec![
            vec![rat(1), rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0), rat(1)],
            vec![rat(0), rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(1)],
        ]);
        let b2 = d4.basis().unwrap().mul(&u);
        let d4u = Lattice::from_basis(b2).unwrap();
        let rep_u = rankin_value(&d4u, 2, &cfg()).unwrap();
        assert_eq!(rep.min_gramdet, rep_u.min_gramdet);
    }

    #[test]
    fn deduplication_by_span() {
        let z3 = catalog(CatalogName::Zn, 3).unwrap();
        let e = enumerate_lattice_planes(&z3, 2, &rat(2), &cfg()).unwrap();
        let mut spans: Vec<Subspace> = e.planes.iter().map(|p| p.plane.span()).collect();
        let len = spans.len();
        spans.dedup();
        assert_eq!(len, spans.len());
    }

    #[test]
    fn report_serializes() {
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let rep = rankin_value(&d4, 2, &cfg()).unwrap();
        let j = rep.to_json();
        assert!(j.contains("\"min_gramdet\": \"3\""));
        assert!(j.contains("\"complete\": true"));
    }
}
