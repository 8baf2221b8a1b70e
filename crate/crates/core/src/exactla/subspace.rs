use num_traits::{One, Zero};

use super::{LinAlgError, MatrixQ, Rational};

/// A linear subspace of Q^n stored by its reduced row-echelon basis, so that
/// equal subspaces are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(LinAlgError::DimensionMismatch { expected: ambient_dim, found: v.len() });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let (red, pivots) = MatrixQ::from_rows(vectors.to_vec())?.rref();
        let basis = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(LinAlgError::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim })
        }
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinAlgError> {
        if v.len() != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Ok(Subspace::span(self.ambient_dim, &vs)?.dim() == self.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_same_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    /// `{ w : w . v = 0 for all v in self }` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient_dim);
        }
        let m = MatrixQ::from_rows(self.basis.clone()).expect("basis rows share a length");
        super::kernel_basis(&m)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_same_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_same_ambient(other)?;
        Ok(other.sum(self)?.dim() == other.dim())
    }

    /// Image under `m` (acting on column vectors).
    pub fn image_under(&self, m: &MatrixQ) -> Result<Subspace, LinAlgError> {
        let vs = self.basis.iter().map(|v| m.apply(v)).collect::<Result<Vec<_>, _>>()?;
        Subspace::span(m.rows(), &vs)
    }
}

/// `U ∩ V` with its canonical basis.
pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, LinAlgError> {
    u.intersect(v)
}
