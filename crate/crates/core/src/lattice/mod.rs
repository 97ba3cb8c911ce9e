//! Flat tori `ℝᵐ/L` described by rational lattices.
//!
//! A [`Lattice`] always carries its Gram matrix; an explicit rational basis is
//! optional because many lattices of interest (the hexagonal one, every dual of
//! a Gram-only lattice) have no rational coordinates in ℝᵐ.

mod congruence;
mod enumerate;
mod reduce;

use serde::{Deserialize, Serialize};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, QMat};
use crate::rational::{parse_mat, q, qi, RatLit, Q};
use crate::spectrum::{SpectrumBuilder, SpectrumTable, Unit};

pub use congruence::{congruent, MAX_CONGRUENCE_DIM};
pub use enumerate::for_each_in_ellipsoid;
pub use reduce::{reduce_basis, reduce_with_transform, lll_delta};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    /// Columns are the generators.
    basis: Option<QMat>,
    gram: QMat,
}

/// A nonzero lattice vector in basis coordinates, with its exact squared length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticeVector {
    pub coords: Vec<i64>,
    pub norm: Q,
}

impl Lattice {
    /// Lattice generated by the columns of `basis`.
    pub fn from_basis(basis: QMat) -> Result<Self> {
        let m = basis.len();
        if m == 0 || !linalg::is_square(&basis) {
            return Err(Error::Domain("basis must be a nonempty square matrix".into()));
        }
        if linalg::det(&basis).is_zero() {
            return Err(Error::Domain("basis is singular".into()));
        }
        let gram = linalg::mul(&linalg::transpose(&basis), &basis);
        Ok(Lattice { dim: m, basis: Some(basis), gram })
    }

    /// Lattice known only up to isometry through its Gram matrix.
    pub fn from_gram(gram: QMat) -> Result<Self> {
        let m = gram.len();
        if m == 0 || !linalg::is_square(&gram) {
            return Err(Error::Domain("Gram matrix must be a nonempty square matrix".into()));
        }
        if !linalg::is_positive_definite(&gram) {
            return Err(Error::Domain("Gram matrix is not symmetric positive definite".into()));
        }
        Ok(Lattice { dim: m, basis: None, gram })
    }

    /// ℤᵐ with the standard basis.
    pub fn integer(m: usize) -> Self {
        Self::from_basis(linalg::identity(m)).expect("identity basis")
    }

    /// The hexagonal lattice with Gram `[[2,1],[1,2]]`.
    pub fn hexagonal() -> Self {
        Self::from_gram(linalg::from_i64(&[vec![2, 1], vec![1, 2]])).expect("hexagonal gram")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn basis(&self) -> Option<&QMat> {
        self.basis.as_ref()
    }

    /// `vol(ℝᵐ/L)² = det(Gram)`.
    pub fn volume_squared(&self) -> Q {
        linalg::det(&self.gram)
    }

    /// Squared length of the vector with integer coordinates `x`.
    pub fn norm(&self, x: &[i64]) -> Q {
        let v: Vec<Q> = x.iter().map(|&a| qi(a)).collect();
        linalg::bilinear(&self.gram, &v, &v)
    }

    /// Homothety scaling every length by `s`.
    pub fn scaled(&self, s: &Q) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::Domain("scale factor must be positive".into()));
        }
        let s2 = s * s;
        Ok(Lattice {
            dim: self.dim,
            basis: self.basis.as_ref().map(|b| linalg::scale(b, s)),
            gram: linalg::scale(&self.gram, &s2),
        })
    }

    /// Change of basis by an integer matrix `u` (columns are new generators in old coordinates).
    pub(crate) fn transformed(&self, u: &QMat) -> Self {
        let gram = linalg::mul(&linalg::mul(&linalg::transpose(u), &self.gram), u);
        Lattice {
            dim: self.dim,
            basis: self.basis.as_ref().map(|b| linalg::mul(b, u)),
            gram,
        }
    }

    /// The dual lattice `L* = {γ : ⟨γ, L⟩ ⊂ ℤ}` with the dual basis.
    pub fn dual(&self) -> Lattice {
        let gram = linalg::inverse(&self.gram).expect("Gram matrix is nonsingular");
        let basis = self
            .basis
            .as_ref()
            .map(|b| linalg::inverse(&linalg::transpose(b)).expect("basis is nonsingular"));
        Lattice { dim: self.dim, basis, gram }
    }

    /// All nonzero lattice vectors of squared length `<= bound`, ordered by
    /// `(norm, coords)` lexicographically.
    pub fn short_vectors(&self, bound: &Q) -> Result<Vec<LatticeVector>> {
        if bound.is_negative() {
            return Err(Error::Domain(format!("negative norm bound {bound}")));
        }
        let mut out = Vec::new();
        self.for_each_reduced(bound, |x, v| {
            if !v.is_zero() {
                out.push(LatticeVector { coords: x, norm: v.clone() });
            }
        });
        out.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.coords.cmp(&b.coords)));
        Ok(out)
    }

    /// Number of lattice vectors (including zero) of each squared length `<= bound`.
    pub fn norm_counts(&self, bound: &Q) -> Vec<(Q, u128)> {
        let (r, _) = reduce_with_transform(self);
        let mut b = SpectrumBuilder::new();
        let zero = vec![Q::zero(); self.dim];
        for_each_in_ellipsoid(r.gram(), &zero, bound, |_, v| b.add(v.clone(), 1));
        b.finish(Unit::Raw, bound.clone(), true).entries
    }

    /// Enumerates vectors of norm `<= bound` on a reduced basis, reporting coordinates in the original one.
    fn for_each_reduced<F: FnMut(Vec<i64>, &Q)>(&self, bound: &Q, mut visit: F) {
        let (r, u) = reduce_with_transform(self);
        let u: Vec<Vec<i64>> = u
            .iter()
            .map(|row| row.iter().map(|x| x.to_integer().try_into().expect("small transform")).collect())
            .collect();
        let zero = vec![Q::zero(); self.dim];
        for_each_in_ellipsoid(r.gram(), &zero, bound, |y, v| {
            let x = u.iter().map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum()).collect();
            visit(x, v);
        });
    }

    /// Minimum squared length of a nonzero vector.
    pub fn systole(&self) -> Q {
        // Any diagonal Gram entry is the norm of a lattice vector, so it bounds the minimum.
        let r = reduce_basis(self);
        let bound = r.gram.iter().enumerate().map(|(i, r)| r[i].clone()).min().expect("dim >= 1");
        self.short_vectors(&bound)
            .expect("nonnegative bound")
            .first()
            .map(|v| v.norm.clone())
            .expect("basis vector lies within its own norm")
    }

    /// Spectrum of the flat torus `ℝᵐ/L` up to `cutoff`, in units of 4π².
    ///
    /// Eigenvalues are the squared lengths `‖γ‖²`, `γ ∈ L*`, with multiplicity the
    /// number of dual vectors of that length.
    pub fn torus_spectrum(&self, cutoff: &Q) -> Result<SpectrumTable> {
        if cutoff.is_negative() {
            return Err(Error::Domain(format!("negative cutoff {cutoff}")));
        }
        let dual = self.dual();
        let mut b = SpectrumBuilder::new();
        for (e, m) in dual.norm_counts(cutoff) {
            b.add(e, m);
        }
        Ok(b.finish(Unit::FourPiSquared, cutoff.clone(), true))
    }

    /// `λ₁` in units of 4π², equal to the systole of the dual lattice.
    pub fn lambda1(&self) -> Q {
        self.dual().systole()
    }

    pub fn to_wire(&self) -> LatticeWire {
        match &self.basis {
            Some(b) => LatticeWire { dim: self.dim, basis: Some(to_lits(b)), gram: None },
            None => LatticeWire { dim: self.dim, basis: None, gram: Some(to_lits(&self.gram)) },
        }
    }

    pub fn from_wire(w: &LatticeWire) -> Result<Self> {
        let lat = match (&w.basis, &w.gram) {
            (Some(b), None) => Lattice::from_basis(parse_mat(b)?)?,
            (None, Some(g)) => Lattice::from_gram(parse_mat(g)?)?,
            _ => return Err(Error::Parse("lattice needs exactly one of `basis` or `gram`".into())),
        };
        if lat.dim != w.dim {
            return Err(Error::Parse(format!("declared dim {} but matrix is {}x{}", w.dim, lat.dim, lat.dim)));
        }
        Ok(lat)
    }
}

fn to_lits(m: &QMat) -> Vec<Vec<RatLit>> {
    m.iter().map(|r| r.iter().map(RatLit::from).collect()).collect()
}

/// Lattice file: `{"dim": m, "basis": [[...]]}` with generators as columns, or
/// `{"dim": m, "gram": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeWire {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<RatLit>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<RatLit>>>,
}

/// `γ_m^m` for the Hermite constants `γ_1 .. γ_8` (Blichfeldt, Cohn–Kumar for m = 8).
pub fn hermite_constant_power(m: usize) -> Option<Q> {
    Some(match m {
        1 => qi(1),
        2 => q(4, 3),
        3 => qi(2),
        4 => qi(4),
        5 => qi(8),
        6 => q(64, 3),
        7 => qi(64),
        8 => qi(256),
        _ => return None,
    })
}

/// Constants in the systole and reduced-basis inequalities for flat m-tori.
///
/// `lambda1_power` bounds `λ₁ᵐ · vol²` (λ₁ in units of 4π²). `basis_product` bounds
/// `Π ‖b_i‖² / vol²` for the basis returned by [`reduce_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusConstants {
    pub lambda1_power: Q,
    pub basis_product: Q,
}

impl TorusConstants {
    /// Hermite-based defaults: `γ_mᵐ` for both bounds when `m <= 4` (Minkowski-reduced
    /// bases realize the successive minima), and `(1/(δ-1/4))^{m(m-1)/2}` for the LLL
    /// basis product when `m > 4`.
    pub fn defaults(m: usize) -> Option<Self> {
        let h = hermite_constant_power(m)?;
        let basis_product = if m <= 4 {
            h.clone()
        } else {
            let alpha = Q::one() / (lll_delta() - q(1, 4));
            crate::rational::pow(&alpha, (m * (m - 1) / 2) as u32)
        };
        Some(TorusConstants { lambda1_power: h, basis_product })
    }

    /// `λ₁(T)ᵐ · vol(T)² <= C`.
    pub fn lambda1_holds(&self, lat: &Lattice) -> bool {
        crate::rational::pow(&lat.lambda1(), lat.dim() as u32) * lat.volume_squared() <= self.lambda1_power
    }

    /// `Π ‖b_i‖² <= C' · vol(T)²` for the given basis.
    pub fn basis_product_holds(&self, lat: &Lattice) -> bool {
        let prod = (0..lat.dim()).fold(Q::one(), |acc, i| acc * &lat.gram()[i][i]);
        prod <= &self.basis_product * lat.volume_squared()
    }
}
