//! Dense exact linear algebra: matrices, row reduction, kernels and the
//! subspace lattice.

mod matrix;
mod subspace;

pub use matrix::{is_nilpotent_matrix, Matrix, Nilpotency, Rref};
pub use subspace::{Quotient, Subspace};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Column vector of exact scalars.
pub type Vector = Vec<Scalar>;

/// Free functions on coordinate vectors.
pub mod vector {
    use super::*;

    pub fn zero(field: Field, n: usize) -> Vector {
        vec![field.zero(); n]
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Vector {
        let mut v = zero(field, n);
        v[i] = field.one();
        v
    }

    pub fn from_ints(field: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| field.int(x)).collect()
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale(s: &Scalar, v: &[Scalar]) -> Vector {
        v.iter().map(|x| s * x).collect()
    }

    /// `v -= s * w`.
    pub fn sub_scaled(v: &mut [Scalar], s: &Scalar, w: &[Scalar]) {
        for (a, b) in v.iter_mut().zip(w) {
            if !b.is_zero() {
                *a -= &(s * b);
            }
        }
    }

    /// `v += s * w`.
    pub fn add_scaled(v: &mut [Scalar], s: &Scalar, w: &[Scalar]) {
        for (a, b) in v.iter_mut().zip(w) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
    }

    pub fn check(field: Field, n: usize, v: &[Scalar]) -> Result<()> {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if let Some(s) = v.iter().find(|s| s.field() != field) {
            return Err(Error::fields(field, s.field()));
        }
        Ok(())
    }
}

/// Incremental echelon basis for span-closure loops: `insert` reports
/// whether a vector enlarged the span.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: Field,
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl SpanBuilder {
    pub fn new(field: Field, dim: usize) -> Self {
        SpanBuilder {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows are inserted already reduced against earlier rows, so reducing
    /// in insertion order clears every pivot.
    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if !r[*p].is_zero() {
                let c = r[*p].clone();
                vector::sub_scaled(&mut r, &c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vector::is_zero(&self.reduce(v))
    }

    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = r[p].inverse().expect("nonzero pivot");
        let r = vector::scale(&inv, &r);
        self.rows.push((p, r));
        true
    }

    pub fn to_subspace(&self) -> Subspace {
        let vs = self.rows.iter().map(|(_, r)| r.clone()).collect();
        Subspace::span(self.field, self.dim, vs).expect("builder rows share shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |xs| {
            let f = Field::Rationals;
            let rows: Vec<Vec<i64>> = xs.chunks(cols).map(<[i64]>::to_vec).collect();
            Matrix::from_ints(f, &rows)
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let r = m.rref();
            prop_assert_eq!(r.reduced.rref().reduced, r.reduced.clone());
            prop_assert_eq!(r.rank + m.kernel().dim(), m.cols());
            for k in m.kernel().basis() {
                prop_assert!(vector::is_zero(&m.apply(k)));
            }
        }

        #[test]
        fn nilpotent_verdict_matches_power(m in (1usize..4).prop_flat_map(|n| small_matrix(n, n))) {
            let verdict = is_nilpotent_matrix(&m).unwrap();
            prop_assert_eq!(verdict.nilpotent, m.pow(m.rows()).unwrap().is_zero());
            if let Some(k) = verdict.index {
                prop_assert!(m.pow(k).unwrap().is_zero());
                prop_assert!(k == 1 || !m.pow(k - 1).unwrap().is_zero());
            }
        }

        #[test]
        fn span_builder_agrees_with_span(m in (1usize..6, 1usize..4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let mut b = SpanBuilder::new(Field::Rationals, m.cols());
            for row in m.row_vectors() {
                b.insert(&row);
            }
            let direct = Subspace::span(Field::Rationals, m.cols(), m.row_vectors()).unwrap();
            prop_assert_eq!(b.to_subspace(), direct);
        }
    }
}
