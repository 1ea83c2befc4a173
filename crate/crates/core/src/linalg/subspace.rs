use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{vector, Matrix, Vector};

/// A subspace of `F^n`, stored by its reduced row echelon basis.
///
/// The representation is canonical, so derived equality is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

/// A surjection onto `ambient / S` together with lifts of the quotient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// `(n - dim S) x n`, kernel exactly `S`.
    pub projection: Matrix,
    /// Standard basis vectors at the non-pivot positions of `S`.
    pub lift: Vec<Vector>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| vector::unit(field, ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: Vec<Vector>) -> Result<Self> {
        for v in &vectors {
            vector::check(field, ambient_dim, v)?;
        }
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient_dim));
        }
        let rref = Matrix::from_rows(field, vectors)?.rref();
        let basis = rref.reduced.row_vectors().into_iter().take(rref.rank).collect();
        Ok(Subspace {
            field,
            ambient_dim,
            basis,
            pivots: rref.pivots,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::fields(self.field, other.field));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient_dim, vs)
    }

    /// `v` with every pivot coordinate of this subspace eliminated. Zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            vector::sub_scaled(&mut r, &c, b);
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        vector::check(self.field, self.ambient_dim, v)?;
        Ok(vector::is_zero(&self.reduce(v)))
    }

    /// Coordinates of `v` in the echelon basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !vector::is_zero(&self.reduce(v)) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.basis.iter().all(|b| vector::is_zero(&other.reduce(b))))
    }

    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.field() != self.field {
            return Err(Error::fields(self.field, m.field()));
        }
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.cols(),
            });
        }
        let images = self.basis.iter().map(|b| m.apply(b)).collect();
        Subspace::span(self.field, m.rows(), images)
    }

    /// Invariance under `m`: `m(S) ⊆ S`.
    pub fn is_invariant_under(&self, m: &Matrix) -> Result<bool> {
        let image = self.image_under(m)?;
        image.is_subspace_of(self)
    }

    pub fn quotient(&self) -> Quotient {
        let free: Vec<usize> = (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let mut projection = Matrix::zeros(self.field, free.len(), self.ambient_dim);
        for (row, &f) in free.iter().enumerate() {
            projection.set(row, f, self.field.one());
        }
        // Pivot column p_r maps to minus the free part of basis row r.
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            for (row, &f) in free.iter().enumerate() {
                projection.set(row, p, -&b[f]);
            }
        }
        let lift = free
            .iter()
            .map(|&f| vector::unit(self.field, self.ambient_dim, f))
            .collect();
        Quotient { projection, lift }
    }
}
