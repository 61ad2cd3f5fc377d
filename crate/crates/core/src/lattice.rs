//! Exact rational lattice algebra: construction, duals, planes, sections,
//! projections, saturation, and the named-lattice catalog.
//!
//! A lattice is stored by its Gram matrix in its own coordinate frame; a
//! rational basis is kept when one exists. Lattices whose natural embedding
//! is irrational (hexagonal, A_n) are represented by their exact rational
//! Gram matrix with an abstract frame, so every squared quantity stays
//! rational.
//!
//! Coordinate conventions used throughout the crate:
//! - a lattice vector is an integer coordinate vector w.r.t. the basis;
//! - the dual lattice is carried in its own frame with Gram G⁻¹, and the
//!   pairing between primal coordinates x and dual coordinates y is the
//!   standard integer dot product xᵀy;
//! - consequently the plane transfer L ↦ L⊥ is the integer kernel of the
//!   transposed section basis, with no Gram involved.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::imat::IMat;
use crate::qmat::QMat;
use crate::rational::{parse_rat, rat_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    basis: Option<QMat>,
    gram: QMat,
    det_squared: Rat,
}

impl Lattice {
    /// Builds a lattice from a nonsingular rational basis (columns).
    pub fn from_basis(basis: QMat) -> Result<Self, Error> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch("basis must be square".into()));
        }
        let det = basis.det();
        if det.is_zero() {
            return Err(Error::SingularBasis);
        }
        let gram = basis.transpose().mul(&basis);
        let det_squared = &det * &det;
        debug_assert_eq!(det_squared, gram.det());
        Ok(Lattice {
            n: basis.rows(),
            basis: Some(basis),
            gram,
            det_squared,
        })
    }

    /// Builds a lattice from an exact rational Gram matrix (abstract frame).
    pub fn from_gram(gram: QMat) -> Result<Self, Error> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("gram must be square".into()));
        }
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let det_squared = gram.det();
        Ok(Lattice {
            n: gram.rows(),
            basis: None,
            gram,
            det_squared,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn basis(&self) -> Option<&QMat> {
        self.basis.as_ref()
    }

    /// det(Λ)², cached at construction.
    pub fn det_squared(&self) -> &Rat {
        &self.det_squared
    }

    /// Polar (dual) lattice: Gram G⁻¹, basis (Bᵀ)⁻¹ when a basis exists.
    pub fn dual(&self) -> Lattice {
        let gram = self.gram.inverse().expect("positive definite");
        let basis = self
            .basis
            .as_ref()
            .map(|b| b.transpose().inverse().expect("nonsingular"));
        let det_squared = gram.det();
        Lattice {
            n: self.n,
            basis,
            gram,
            det_squared,
        }
    }

    /// The lattice c·Λ.
    pub fn scaled(&self, c: &Rat) -> Lattice {
        assert!(c.is_positive());
        let c2 = c * c;
        Lattice {
            n: self.n,
            basis: self.basis.as_ref().map(|b| b.scale(c)),
            gram: self.gram.scale(&c2),
            det_squared: self.det_squared.clone() * num::pow::pow(c2, self.n),
        }
    }

    /// Inner product of coordinate vectors in this lattice's frame.
    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(gy.iter())
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self, x: &[Rat]) -> Rat {
        self.inner(x, x)
    }

    pub fn norm_sq_int(&self, x: &[BigInt]) -> Rat {
        let xr: Vec<Rat> = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
        self.norm_sq(&xr)
    }

    /// Intersection Λ ∩ S for a rational subspace S, as a saturated plane.
    pub fn saturate(&self, s: &Subspace) -> Result<LatticePlane, Error> {
        if s.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch(
                "subspace ambient dimension differs from lattice".into(),
            ));
        }
        let scaled = IMat::from_qmat_scaled(s.span_matrix());
        let section = scaled.saturate_columns();
        if section.cols() != s.rank() {
            return Err(Error::NotLatticePlane);
        }
        Ok(LatticePlane {
            rank: section.cols(),
            section_basis: section,
        })
    }

    /// Wraps an explicit integer section basis after checking primitivity.
    pub fn plane_from_section_basis(&self, m: IMat) -> Result<LatticePlane, Error> {
        if m.rows() != self.n {
            return Err(Error::DimensionMismatch(
                "section basis rows must equal lattice dimension".into(),
            ));
        }
        if m.rank() != m.cols() || !m.is_primitive() {
            return Err(Error::NotLatticePlane);
        }
        Ok(LatticePlane {
            rank: m.cols(),
            section_basis: m.column_lattice_hnf(),
        })
    }

    /// Gram matrix of the section Λ ∩ L (w.r.t. this lattice's metric).
    pub fn section_gram(&self, plane: &LatticePlane) -> QMat {
        plane.section_basis.to_qmat().gram_with(&self.gram)
    }

    /// det(Λ ∩ L)² — the section's Gram determinant.
    pub fn section_gramdet(&self, plane: &LatticePlane) -> Rat {
        self.section_gram(plane).det()
    }

    /// Transfer L ↦ L⊥: the lattice plane Λ* ∩ L⊥ of the dual lattice, of
    /// complementary rank. Pure integer kernel computation.
    pub fn plane_transfer(&self, plane: &LatticePlane) -> LatticePlane {
        let kernel = plane.section_basis.transpose().kernel();
        LatticePlane {
            rank: self.n - plane.rank,
            section_basis: kernel.column_lattice_hnf(),
        }
    }

    /// Orthogonal projection Λ | L⊥ as an (n-i)-dimensional lattice with an
    /// exact rational Gram, plus the coordinate map for projecting points.
    pub fn project(&self, plane: &LatticePlane) -> Result<Projection, Error> {
        if plane.rank == 0 {
            return Ok(Projection {
                lattice: self.clone(),
                coord_map: QMat::identity(self.n),
            });
        }
        if plane.rank >= self.n {
            return Err(Error::DimensionMismatch(
                "projection needs a proper plane".into(),
            ));
        }
        if !plane.section_basis.is_primitive() {
            return Err(Error::NotLatticePlane);
        }
        let m = plane.section_basis.to_qmat();
        let c = plane.section_basis.unimodular_completion().to_qmat();
        // Gram of projected completion vectors:
        //   H = CᵀGC − CᵀGM (MᵀGM)⁻¹ MᵀGC
        let g = &self.gram;
        let mtgm = m.gram_with(g);
        let mtgm_inv = mtgm.inverse().map_err(|_| Error::NotLatticePlane)?;
        let ctgm = c.transpose().mul(&g.mul(&m));
        let h = c
            .gram_with(g)
            .sub(&ctgm.mul(&mtgm_inv).mul(&ctgm.transpose()));
        let lattice = Lattice::from_gram(h)?;
        // Coordinates of the projection of a point: the completion block of
        // [M | C]⁻¹ applied to primal coordinates.
        let n = self.n;
        let k = plane.rank;
        let full = QMat::from_fn(n, n, |i, j| {
            if j < k {
                m[(i, j)].clone()
            } else {
                c[(i, j - k)].clone()
            }
        });
        let inv = full.inverse().expect("unimodular completion");
        let coord_map = QMat::from_fn(n - k, n, |i, j| inv[(k + i, j)].clone());
        Ok(Projection { lattice, coord_map })
    }

    /// Both sides of det(Λ∩L) = det(Λ*∩L⊥)·det Λ in squared form; the
    /// equality is mathematically guaranteed, so a failure is a bug.
    pub fn section_duality_check(&self, plane: &LatticePlane) -> Result<DualityReport, Error> {
        let lhs = self.section_gramdet(plane);
        let dual = self.dual();
        let transfer = self.plane_transfer(plane);
        let dual_side = dual.section_gramdet(&transfer);
        let rhs = &dual_side * &self.det_squared;
        if lhs != rhs {
            return Err(Error::IdentityViolation(format!(
                "det(Λ∩L)² = {} but det(Λ*∩L⊥)²·det²Λ = {}",
                rat_string(&lhs),
                rat_string(&rhs)
            )));
        }
        Ok(DualityReport {
            section_gramdet: lhs,
            dual_section_gramdet: dual_side,
            det_squared: self.det_squared.clone(),
        })
    }

    /// Canonical key for memoization: the Gram matrix entries.
    pub fn gram_key(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                s.push_str(&rat_string(&self.gram[(i, j)]));
                s.push(',');
            }
        }
        s
    }
}

/// Result of projecting a lattice onto the orthogonal complement of a plane.
#[derive(Debug, Clone)]
pub struct Projection {
    pub lattice: Lattice,
    /// (n-i)×n rational matrix mapping primal coordinates to coordinates in
    /// the projected lattice's frame.
    pub coord_map: QMat,
}

impl Projection {
    pub fn project_point(&self, x: &[Rat]) -> Vec<Rat> {
        self.coord_map.mul_vec(x)
    }

    pub fn project_int_point(&self, x: &[BigInt]) -> Vec<Rat> {
        let xr: Vec<Rat> = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
        self.coord_map.mul_vec(&xr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub section_gramdet: Rat,
    pub dual_section_gramdet: Rat,
    pub det_squared: Rat,
}

/// A linear subspace of the coordinate frame, canonicalized by reduced
/// column echelon form so equality means equality of spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    span: QMat,
}

impl Subspace {
    pub fn new(span: QMat) -> Result<Self, Error> {
        if span.cols() == 0 || span.cols() > span.rows() {
            return Err(Error::DimensionMismatch(
                "subspace rank must be between 1 and n".into(),
            ));
        }
        let canonical = span.column_span_canonical();
        if canonical.cols() != span.cols() {
            return Err(Error::DimensionMismatch(
                "spanning columns are linearly dependent".into(),
            ));
        }
        Ok(Subspace {
            n: span.rows(),
            span: canonical,
        })
    }

    pub fn from_int_columns(n: usize, cols: &[Vec<i64>]) -> Result<Self, Error> {
        let m = QMat::from_fn(n, cols.len(), |i, j| crate::rational::rat(cols[j][i]));
        Subspace::new(m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.span.cols()
    }

    pub fn span_matrix(&self) -> &QMat {
        &self.span
    }

    /// Orthogonal complement w.r.t. the standard inner product of the frame.
    pub fn orthogonal_complement(&self) -> Subspace {
        let kernel = self.span.transpose().kernel();
        Subspace::new(kernel).expect("complement has full column rank")
    }
}

/// An i-dimensional lattice plane, stored as the canonical HNF basis of the
/// saturated section Λ ∩ L in lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePlane {
    rank: usize,
    section_basis: IMat,
}

impl LatticePlane {
    /// Unchecked constructor for deserialization paths; users go through
    /// `Lattice::saturate` / `plane_from_section_basis`, and verification
    /// re-checks primitivity.
    pub(crate) fn from_raw_parts(rank: usize, section_basis: IMat) -> Self {
        LatticePlane {
            rank,
            section_basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn section_basis(&self) -> &IMat {
        &self.section_basis
    }

    pub fn span(&self) -> Subspace {
        Subspace::new(self.section_basis.to_qmat()).expect("section basis has full rank")
    }

    pub fn hnf_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.section_basis.rows())
            .map(|i| {
                (0..self.section_basis.cols())
                    .map(|j| self.section_basis[(i, j)].clone())
                    .collect()
            })
            .collect()
    }
}

/// Named lattices used as the test corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogName {
    Zn,
    An,
    Dn,
    E8,
    Hexagonal,
}

impl std::str::FromStr for CatalogName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "zn" | "z" => Ok(CatalogName::Zn),
            "an" | "a" => Ok(CatalogName::An),
            "dn" | "d" => Ok(CatalogName::Dn),
            "e8" => Ok(CatalogName::E8),
            "hexagonal" | "hex" => Ok(CatalogName::Hexagonal),
            other => Err(Error::UnknownLattice(other.into())),
        }
    }
}

/// Standard basis/Gram for a named lattice. Documented properties (det²,
/// λ₁²) are verified by the test suite rather than assumed.
pub fn catalog(name: CatalogName, n: usize) -> Result<Lattice, Error> {
    match name {
        CatalogName::Zn => {
            if n == 0 {
                return Err(Error::DimensionMismatch("Zn needs n >= 1".into()));
            }
            Lattice::from_basis(QMat::identity(n))
        }
        CatalogName::An => {
            if n == 0 {
                return Err(Error::DimensionMismatch("An needs n >= 1".into()));
            }
            // Gram of the root basis e_i - e_{i+1} in R^{n+1}
            let gram = QMat::from_fn(n, n, |i, j| {
                if i == j {
                    crate::rational::rat(2)
                } else if i + 1 == j || j + 1 == i {
                    crate::rational::rat(-1)
                } else {
                    Rat::zero()
                }
            });
            Lattice::from_gram(gram)
        }
        CatalogName::Dn => {
            if n < 3 {
                return Err(Error::DimensionMismatch("Dn needs n >= 3".into()));
            }
            // Columns: e1+e2, e2-e1, e3-e2, ..., en-e(n-1)
            let basis = QMat::from_fn(n, n, |i, j| {
                let v: i64 = if j == 0 {
                    if i <= 1 {
                        1
                    } else {
                        0
                    }
                } else if i + 1 == j {
                    -1
                } else if i == j {
                    1
                } else {
                    0
                };
                crate::rational::rat(v)
            });
            Lattice::from_basis(basis)
        }
        CatalogName::E8 => {
            if n != 8 {
                return Err(Error::DimensionMismatch("E8 requires n = 8".into()));
            }
            // Standard generator matrix: 2e1, e_{j}-e_{j-1} for j = 2..7,
            // and the glue vector (1/2, ..., 1/2), as columns.
            let mut cols = vec![vec![Rat::zero(); 8]; 8];
            cols[0][0] = crate::rational::rat(2);
            for j in 1..7 {
                cols[j][j - 1] = crate::rational::rat(-1);
                cols[j][j] = crate::rational::rat(1);
            }
            cols[7] = vec![crate::rational::frac(1, 2); 8];
            let basis = QMat::from_fn(8, 8, |i, j| cols[j][i].clone());
            Lattice::from_basis(basis)
        }
        CatalogName::Hexagonal => {
            if n != 2 {
                return Err(Error::DimensionMismatch("hexagonal requires n = 2".into()));
            }
            let gram = QMat::from_rows(vec![
                vec![crate::rational::rat(1), crate::rational::frac(1, 2)],
                vec![crate::rational::frac(1, 2), crate::rational::rat(1)],
            ]);
            Lattice::from_gram(gram)
        }
    }
}

// ---------------------------------------------------------------------------
// Versioned JSON file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    #[serde(default = "default_format_version")]
    format: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gram: Option<Vec<Vec<String>>>,
}

fn default_format_version() -> String {
    "lattice/1".to_string()
}

fn parse_matrix(n: usize, rows: &[Vec<String>]) -> Result<QMat, Error> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix must be {n}x{n}")));
    }
    let mut out = QMat::zero(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            out[(i, j)] = parse_rat(s)?;
        }
    }
    Ok(out)
}

impl Lattice {
    pub fn from_json(text: &str) -> Result<Lattice, Error> {
        let file: LatticeFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match (&file.basis, &file.gram) {
            (Some(b), None) => Lattice::from_basis(parse_matrix(file.n, b)?),
            (None, Some(g)) => Lattice::from_gram(parse_matrix(file.n, g)?),
            _ => Err(Error::Parse(
                "exactly one of \"basis\" or \"gram\" must be present".into(),
            )),
        }
    }

    /// Serializes the lattice; a basis is emitted in HNF-canonical form
    /// (scaled integer HNF divided back by the common denominator).
    pub fn to_json(&self) -> String {
        let mat_to_strings = |m: &QMat| -> Vec<Vec<String>> {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| rat_string(&m[(i, j)])).collect())
                .collect()
        };
        let file = match &self.basis {
            Some(b) => {
                let scaled = IMat::from_qmat_scaled(b);
                let denom = if b.cols() > 0 && !b[(0, 0)].is_zero() {
                    // recover the scale factor from any nonzero entry
                    Rat::from_integer(scaled[(0, 0)].clone()) / b[(0, 0)].clone()
                } else {
                    Rat::one()
                };
                let hnf = scaled.column_lattice_hnf().to_qmat();
                let canonical = hnf.scale(&(Rat::one() / denom));
                LatticeFile {
                    format: default_format_version(),
                    n: self.n,
                    basis: Some(mat_to_strings(&canonical)),
                    gram: None,
                }
            }
            None => LatticeFile {
                format: default_format_version(),
                n: self.n,
                basis: None,
                gram: Some(mat_to_strings(&self.gram)),
            },
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imat::qmat_to_imat_exact;
    use crate::rational::{frac, rat};

    fn mat(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_lattice() {
        let l = Lattice::from_basis(QMat::identity(2)).unwrap();
        assert_eq!(l.det_squared(), &rat(1));
    }

    #[test]
    fn diagonal_det() {
        let l = Lattice::from_basis(mat(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(l.det_squared(), &rat(64));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            Lattice::from_basis(mat(&[&[1, 2], &[2, 4]])).unwrap_err(),
            Error::SingularBasis
        );
    }

    #[test]
    fn d4_determinant_and_index_oracle() {
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        assert_eq!(d4.det_squared(), &rat(4));
        // Oracle: |det| equals the number of Z^4 points in the half-open
        // fundamental parallelepiped of the D4 basis.
        let b = d4.basis().unwrap();
        let binv = b.inverse().unwrap();
        let mut count = 0;
        for x0 in -3i64..=3 {
            for x1 in -3i64..=3 {
                for x2 in -3i64..=3 {
                    for x3 in -3i64..=3 {
                        let x = [rat(x0), rat(x1), rat(x2), rat(x3)];
                        let y = binv.mul_vec(&x);
                        if y.iter().all(|v| !v.is_negative() && v < &rat(1)) {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 2); // det D4 = 2, det² = 4
    }

    #[test]
    fn dual_identities() {
        let l = Lattice::from_basis(mat(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
        let d = l.dual();
        assert_eq!(d.det_squared(), &frac(1, 64));
        assert_eq!(d.det_squared() * l.det_squared(), rat(1));
        assert_eq!(d.gram()[(0, 0)], frac(1, 4));
        // involution, exactly
        assert_eq!(&d.dual(), &l);
    }

    #[test]
    fn e8_is_self_dual() {
        let e8 = catalog(CatalogName::E8, 8).unwrap();
        assert_eq!(e8.det_squared(), &rat(1));
        // Λ** = Λ as point sets: change of basis B⁻¹·B* = G⁻¹ is unimodular.
        let g_inv = e8.gram().inverse().unwrap();
        let c = qmat_to_imat_exact(&g_inv);
        let det = c.to_qmat().det();
        assert!(det == rat(1) || det == rat(-1));
    }

    #[test]
    fn saturation_examples() {
        let z2 = catalog(CatalogName::Zn, 2).unwrap();
        let s = Subspace::from_int_columns(2, &[vec![1, 1]]).unwrap();
        let p = z2.saturate(&s).unwrap();
        assert_eq!(p.section_basis().col(0), vec![BigInt::from(1), BigInt::from(1)]);

        let s2 = Subspace::from_int_columns(2, &[vec![2, 4]]).unwrap();
        let p2 = z2.saturate(&s2).unwrap();
        assert_eq!(p2.section_basis().col(0), vec![BigInt::from(1), BigInt::from(2)]);

        let s3 = Subspace::from_int_columns(2, &[vec![3, 1]]).unwrap();
        let p3 = z2.saturate(&s3).unwrap();
        assert_eq!(p3.section_basis().col(0), vec![BigInt::from(3), BigInt::from(1)]);
    }

    #[test]
    fn saturation_idempotent() {
        let z3 = catalog(CatalogName::Zn, 3).unwrap();
        let s = Subspace::from_int_columns(3, &[vec![2, 4, 0], vec![0, 2, 2]]).unwrap();
        let p = z3.saturate(&s).unwrap();
        let again = z3.saturate(&p.span()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn orthogonal_complement_examples() {
        let s = Subspace::from_int_columns(3, &[vec![1, 0, 0]]).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c.rank(), 2);
        assert_eq!(
            c,
            Subspace::from_int_columns(3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap()
        );
        let s2 = Subspace::from_int_columns(2, &[vec![1, 1]]).unwrap();
        assert_eq!(
            s2.orthogonal_complement(),
            Subspace::from_int_columns(2, &[vec![1, -1]]).unwrap()
        );
        // involution on canonical forms
        assert_eq!(s2.orthogonal_complement().orthogonal_complement(), s2);
    }

    #[test]
    fn plane_transfer_round_trip() {
        let z3 = catalog(CatalogName::Zn, 3).unwrap();
        let p = z3
            .saturate(&Subspace::from_int_columns(3, &[vec![1, 0, 0]]).unwrap())
            .unwrap();
        let dual_plane = z3.plane_transfer(&p);
        assert_eq!(dual_plane.rank(), 2);
        let back = z3.dual().plane_transfer(&dual_plane);
        assert_eq!(back, p);
    }

    #[test]
    fn projection_examples() {
        // Z^3 along span(e3) -> Z^2
        let z3 = catalog(CatalogName::Zn, 3).unwrap();
        let p = z3
            .saturate(&Subspace::from_int_columns(3, &[vec![0, 0, 1]]).unwrap())
            .unwrap();
        let proj = z3.project(&p).unwrap();
        assert_eq!(proj.lattice.dim(), 2);
        assert_eq!(proj.lattice.det_squared(), &rat(1));

        // diag(1,1,2) along span(e1): projection gram diag(1,4)
        let l = Lattice::from_basis(mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]])).unwrap();
        let p1 = l
            .saturate(&Subspace::from_int_columns(3, &[vec![1, 0, 0]]).unwrap())
            .unwrap();
        let proj1 = l.project(&p1).unwrap();
        assert_eq!(proj1.lattice.det_squared(), &rat(4));
        let g = proj1.lattice.gram();
        assert_eq!(g[(0, 0)], rat(1));
        assert_eq!(g[(1, 1)], rat(4));
        assert_eq!(g[(0, 1)], rat(0));
    }

    #[test]
    fn d4_projection_gramdet() {
        // Plane spanned by ambient (1,1,0,0),(0,1,1,0): coords (1,0,0,0),(1,1,1,0)
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let plane = d4
            .plane_from_section_basis(IMat::from_i64_rows(&[
                vec![1, 1],
                vec![0, 1],
                vec![0, 1],
                vec![0, 0],
            ]))
            .unwrap();
        assert_eq!(d4.section_gramdet(&plane), rat(3));
        let proj = d4.project(&plane).unwrap();
        assert_eq!(proj.lattice.det_squared(), &frac(4, 3));
        // Eq. 2.1 ii consequence: det²(Λ|L⊥) · Gramdet(Λ*∩L⊥) = 1
        let dual_plane = d4.plane_transfer(&plane);
        let dual_gd = d4.dual().section_gramdet(&dual_plane);
        assert_eq!(proj.lattice.det_squared() * dual_gd, rat(1));
    }

    #[test]
    fn duality_check_examples() {
        let z3 = catalog(CatalogName::Zn, 3).unwrap();
        let p = z3
            .saturate(&Subspace::from_int_columns(3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap())
            .unwrap();
        let rep = z3.section_duality_check(&p).unwrap();
        assert_eq!(rep.section_gramdet, rat(1));

        let l = Lattice::from_basis(mat(&[&[2, 0], &[0, 3]])).unwrap();
        let p = l
            .saturate(&Subspace::from_int_columns(2, &[vec![1, 0]]).unwrap())
            .unwrap();
        let rep = l.section_duality_check(&p).unwrap();
        assert_eq!(rep.section_gramdet, rat(4));
        assert_eq!(rep.dual_section_gramdet, frac(1, 9));
        assert_eq!(rep.det_squared, rat(36));

        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let plane = d4
            .plane_from_section_basis(IMat::from_i64_rows(&[
                vec![1, 1],
                vec![0, 1],
                vec![0, 1],
                vec![0, 0],
            ]))
            .unwrap();
        let rep = d4.section_duality_check(&plane).unwrap();
        assert_eq!(rep.section_gramdet, rat(3));
        assert_eq!(rep.dual_section_gramdet, frac(3, 4));
    }

    #[test]
    fn catalog_construction() {
        assert!(catalog(CatalogName::E8, 7).is_err());
        assert!(catalog(CatalogName::Hexagonal, 3).is_err());
        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        assert_eq!(hex.det_squared(), &frac(3, 4));
        let a3 = catalog(CatalogName::An, 3).unwrap();
        assert_eq!(a3.det_squared(), &rat(4));
    }

    #[test]
    fn json_round_trip() {
        let d4 = catalog(CatalogName::Dn, 4).unwrap();
        let text = d4.to_json();
        let back = Lattice::from_json(&text).unwrap();
        assert_eq!(back.det_squared(), d4.det_squared());
        // same lattice: change of basis between them must be unimodular
        let c = d4
            .basis()
            .unwrap()
            .inverse()
            .unwrap()
            .mul(back.basis().unwrap());
        let det = c.det();
        assert!(det == rat(1) || det == rat(-1));

        let hex = catalog(CatalogName::Hexagonal, 2).unwrap();
        let text = hex.to_json();
        let back = Lattice::from_json(&text).unwrap();
        assert_eq!(&back, &hex);

        assert!(Lattice::from_json("{\"n\": 2}").is_err());
    }
}
