//! Leibniz algebras given by structure constants.
//!
//! An algebra is a left Leibniz algebra when `x(yz) = (xy)z + y(xz)` for all
//! `x, y, z`. By bilinearity it suffices to check basis triples.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{vector, Matrix, SpanBuilder, Subspace, Vector};

/// Default bound on the size of a Lie set closure.
pub const DEFAULT_LIE_SET_CAP: usize = 1000;

/// `tensor[i][j]` holds the coordinates of `e_i · e_j`.
pub type StructureTensor = Vec<Vec<Vector>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    field: Field,
    dim: usize,
    tensor: StructureTensor,
    names: Vec<String>,
    validated: bool,
}

/// An algebra element by its coordinates in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vector,
}

/// One basis triple at which the Leibniz identity fails. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `e_i(e_j e_k)`
    pub lhs: Vector,
    /// `(e_i e_j)e_k + e_j(e_i e_k)`
    pub rhs: Vector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeibnizReport {
    pub violations: Vec<LeibnizViolation>,
}

impl LeibnizReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The multiplication-operator identities, each quantified over basis pairs
/// `(b, c)` or single basis elements `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OperatorIdentity {
    /// `R_{bc} = R_c R_b + L_b R_c`
    RightOfProduct,
    /// `L_b R_c = R_c L_b + R_{bc}`
    LeftRightCommutator,
    /// `L_c L_b = L_{cb} + L_b L_c`
    LeftOfProduct,
    /// `R_c R_b = -R_c L_b`
    RightRight,
    /// `L_{a^i} = 0` for `i >= 2`
    LeftOfPowerVanishes,
    /// `R_a^k = (-1)^{k-1} R_a L_a^{k-1}`
    RightPower,
}

impl OperatorIdentity {
    pub fn describe(self) -> &'static str {
        match self {
            OperatorIdentity::RightOfProduct => "R_{bc} = R_c R_b + L_b R_c",
            OperatorIdentity::LeftRightCommutator => "L_b R_c = R_c L_b + R_{bc}",
            OperatorIdentity::LeftOfProduct => "L_c L_b = L_{cb} + L_b L_c",
            OperatorIdentity::RightRight => "R_c R_b = -R_c L_b",
            OperatorIdentity::LeftOfPowerVanishes => "L_{a^i} = 0 (i >= 2)",
            OperatorIdentity::RightPower => "R_a^k = (-1)^(k-1) R_a L_a^(k-1)",
        }
    }
}

/// A failing instance: `b`, `c` are 0-based basis indices; for the power
/// identities `c` is unused and `exponent` carries `i` or `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: OperatorIdentity,
    pub b: usize,
    pub c: Option<usize>,
    pub exponent: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorIdentityReport {
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl OperatorIdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A finite set of nonzero elements closed under multiplication up to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSet {
    members: Vec<Element>,
}

impl LieSet {
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// First pair `(x, y)` (indices into the candidate list) whose product is
/// nonzero and not listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSetViolation {
    pub left: usize,
    pub right: usize,
    pub product: Element,
}

/// Nilpotency of an algebra or of a subspace under ambient products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyClass {
    pub nilpotent: bool,
    /// Largest `c` with a nonzero `c`-th term; only set when nilpotent.
    pub class: Option<usize>,
}

/// A two-sided ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    carrier: Subspace,
}

impl Ideal {
    pub fn new(algebra: &LeibnizAlgebra, carrier: Subspace) -> Result<Self> {
        if algebra.is_ideal(&carrier)? {
            Ok(Ideal { carrier })
        } else {
            Err(Error::NotAnIdeal { which: 0 })
        }
    }

    pub fn carrier(&self) -> &Subspace {
        &self.carrier
    }

    pub fn into_carrier(self) -> Subspace {
        self.carrier
    }
}

fn check_shape(field: Field, n: usize, tensor: &[Vec<Vector>]) -> Result<()> {
    if tensor.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "expected {n} rows of products, found {}",
            tensor.len()
        )));
    }
    for row in tensor {
        if row.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "expected {n} products per row, found {}",
                row.len()
            )));
        }
        for v in row {
            if v.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "expected product vectors of length {n}, found {}",
                    v.len()
                )));
            }
            vector::check(field, n, v)?;
        }
    }
    Ok(())
}

fn tensor_product(field: Field, tensor: &[Vec<Vector>], x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = x.len();
    let mut out = vector::zero(field, n);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = &tensor[i][j];
            if vector::is_zero(c) {
                continue;
            }
            vector::add_scaled(&mut out, &(xi * yj), c);
        }
    }
    out
}

/// Checks `e_i(e_j e_k) = (e_i e_j)e_k + e_j(e_i e_k)` on every basis triple.
pub fn validate_leibniz(field: Field, n: usize, tensor: &[Vec<Vector>]) -> Result<LeibnizReport> {
    check_shape(field, n, tensor)?;
    let basis: Vec<Vector> = (0..n).map(|i| vector::unit(field, n, i)).collect();
    let mul = |x: &[Scalar], y: &[Scalar]| tensor_product(field, tensor, x, y);
    let mut report = LeibnizReport::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = mul(&basis[i], &tensor[j][k]);
                let rhs = vector::add(&mul(&tensor[i][j], &basis[k]), &mul(&basis[j], &tensor[i][k]));
                if lhs != rhs {
                    report.violations.push(LeibnizViolation { i, j, k, lhs, rhs });
                }
            }
        }
    }
    Ok(report)
}

impl Element {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coords)
    }
}

impl LeibnizAlgebra {
    /// Builds and validates an algebra; fails with `NotLeibniz` if the
    /// identity does not hold.
    pub fn new(field: Field, dim: usize, tensor: StructureTensor) -> Result<Self> {
        let report = validate_leibniz(field, dim, &tensor)?;
        if !report.passed() {
            return Err(Error::NotLeibniz);
        }
        Ok(Self::assemble(field, dim, tensor, true))
    }

    /// Builds an algebra without enforcing the Leibniz identity. The result
    /// reports `is_validated() == false` unless the identity happens to hold.
    pub fn new_unvalidated(field: Field, dim: usize, tensor: StructureTensor) -> Result<Self> {
        let report = validate_leibniz(field, dim, &tensor)?;
        Ok(Self::assemble(field, dim, tensor, report.passed()))
    }

    /// Sparse constructor with 0-based `(i, j, k, coefficient)` entries
    /// meaning `e_i e_j` has coefficient `c` on `e_k`. Repeated keys add up.
    pub fn from_entries(field: Field, dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        Self::new(field, dim, Self::tensor_from_entries(field, dim, entries)?)
    }

    pub fn tensor_from_entries(
        field: Field,
        dim: usize,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<StructureTensor> {
        let mut tensor = vec![vec![vector::zero(field, dim); dim]; dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::ShapeMismatch(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if c.field() != field {
                return Err(Error::fields(field, c.field()));
            }
            tensor[*i][*j][*k] += c;
        }
        Ok(tensor)
    }

    fn assemble(field: Field, dim: usize, tensor: StructureTensor, validated: bool) -> Self {
        LeibnizAlgebra {
            field,
            dim,
            tensor,
            names: (1..=dim).map(|i| format!("e{i}")).collect(),
            validated,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.tensor[i][j]
    }

    pub fn validate(&self) -> LeibnizReport {
        validate_leibniz(self.field, self.dim, &self.tensor).expect("stored tensor has valid shape")
    }

    pub fn element(&self, coords: Vector) -> Result<Element> {
        vector::check(self.field, self.dim, &coords).map_err(|e| Error::AlgebraMismatch(e.to_string()))?;
        Ok(Element { coords })
    }

    pub fn element_from_ints(&self, xs: &[i64]) -> Result<Element> {
        self.element(vector::from_ints(self.field, xs))
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element {
            coords: vector::unit(self.field, self.dim, i),
        }
    }

    pub fn basis(&self) -> Vec<Element> {
        (0..self.dim).map(|i| self.basis_element(i)).collect()
    }

    pub fn zero(&self) -> Element {
        Element {
            coords: vector::zero(self.field, self.dim),
        }
    }

    fn owns(&self, x: &Element) -> Result<()> {
        vector::check(self.field, self.dim, &x.coords).map_err(|e| Error::AlgebraMismatch(e.to_string()))
    }

    /// Product on raw coordinate vectors; callers guarantee shapes.
    pub(crate) fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        tensor_product(self.field, &self.tensor, x, y)
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(Element {
            coords: self.mul_coords(&x.coords, &y.coords),
        })
    }

    /// `L_a`: column `j` is `a · e_j`.
    pub fn left_mult_matrix(&self, a: &Element) -> Result<Matrix> {
        self.owns(a)?;
        Ok(self.left_matrix_of(&a.coords))
    }

    /// `R_a`: column `j` is `e_j · a`.
    pub fn right_mult_matrix(&self, a: &Element) -> Result<Matrix> {
        self.owns(a)?;
        Ok(self.right_matrix_of(&a.coords))
    }

    pub(crate) fn left_matrix_of(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul_coords(a, &vector::unit(self.field, self.dim, j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("columns have algebra dimension")
    }

    pub(crate) fn right_matrix_of(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul_coords(&vector::unit(self.field, self.dim, j), a))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("columns have algebra dimension")
    }

    /// `a^1 = a`, `a^{k+1} = a · a^k`.
    pub fn power(&self, a: &Element, k: u32) -> Result<Element> {
        if k < 1 {
            return Err(Error::InvalidExponent(k));
        }
        self.owns(a)?;
        let mut p = a.coords.clone();
        for _ in 1..k {
            p = self.mul_coords(&a.coords, &p);
        }
        Ok(Element { coords: p })
    }

    /// Checks the four operator identities on every basis pair and the power
    /// identities on every basis element.
    pub fn verify_operator_identities(&self) -> OperatorIdentityReport {
        let n = self.dim;
        let lefts: Vec<Matrix> = (0..n).map(|i| self.left_matrix_of(&vector::unit(self.field, n, i))).collect();
        let rights: Vec<Matrix> = (0..n).map(|i| self.right_matrix_of(&vector::unit(self.field, n, i))).collect();
        let mut report = OperatorIdentityReport::default();
        let record = |report: &mut OperatorIdentityReport, ok: bool, f: IdentityFailure| {
            report.checked += 1;
            if !ok {
                report.failures.push(f);
            }
        };
        for b in 0..n {
            for c in 0..n {
                let (lb, rb, lc, rc) = (&lefts[b], &rights[b], &lefts[c], &rights[c]);
                let r_bc = self.right_matrix_of(&self.tensor[b][c]);
                let l_cb = self.left_matrix_of(&self.tensor[c][b]);
                let pair = |identity| IdentityFailure {
                    identity,
                    b,
                    c: Some(c),
                    exponent: None,
                };
                let rc_rb = rc * rb;
                record(
                    &mut report,
                    r_bc == &rc_rb + &(lb * rc),
                    pair(OperatorIdentity::RightOfProduct),
                );
                record(
                    &mut report,
                    lb * rc == &(rc * lb) + &r_bc,
                    pair(OperatorIdentity::LeftRightCommutator),
                );
                record(
                    &mut report,
                    lc * lb == &l_cb + &(lb * lc),
                    pair(OperatorIdentity::LeftOfProduct),
                );
                record(&mut report, rc_rb == -&(rc * lb), pair(OperatorIdentity::RightRight));
            }
        }
        for a in 0..n {
            let failures = self.power_identity_failures(&vector::unit(self.field, n, a));
            report.checked += n + n.saturating_sub(1);
            report
                .failures
                .extend(failures.into_iter().map(|f| IdentityFailure { b: a, ..f }));
        }
        report
    }

    /// Failures of `L_{a^i} = 0` (`2 <= i <= n+1`) and
    /// `R_a^k = (-1)^{k-1} R_a L_a^{k-1}` (`2 <= k <= n`) for one element.
    /// The `b` field of each failure is left at 0.
    pub fn power_identity_failures(&self, a: &[Scalar]) -> Vec<IdentityFailure> {
        let n = self.dim;
        let mut failures = Vec::new();
        let mut p = a.to_vec();
        for i in 2..=n + 1 {
            p = self.mul_coords(a, &p);
            if !self.left_matrix_of(&p).is_zero() {
                failures.push(IdentityFailure {
                    identity: OperatorIdentity::LeftOfPowerVanishes,
                    b: 0,
                    c: None,
                    exponent: Some(i),
                });
            }
        }
        let la = self.left_matrix_of(a);
        let ra = self.right_matrix_of(a);
        let mut r_pow = ra.clone();
        let mut l_pow = Matrix::identity(self.field, n);
        for k in 2..=n {
            r_pow = &r_pow * &ra;
            l_pow = &l_pow * &la;
            let sign = if k % 2 == 0 { -1 } else { 1 };
            let rhs = (&ra * &l_pow).scale(&self.field.int(sign));
            if r_pow != rhs {
                failures.push(IdentityFailure {
                    identity: OperatorIdentity::RightPower,
                    b: 0,
                    c: None,
                    exponent: Some(k),
                });
            }
        }
        failures
    }

    /// Smallest subspace containing `xs` and closed under multiplication.
    pub fn subalgebra_generated(&self, xs: &[Element]) -> Result<Subspace> {
        for x in xs {
            self.owns(x)?;
        }
        self.close_span(xs.iter().map(|x| x.coords.clone()).collect())
    }

    fn close_span(&self, seeds: Vec<Vector>) -> Result<Subspace> {
        let mut span = SpanBuilder::new(self.field, self.dim);
        let mut basis: Vec<Vector> = Vec::new();
        let mut queue: Vec<Vector> = Vec::new();
        for s in seeds {
            if span.insert(&s) {
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            basis.push(x);
            let x = basis.last().unwrap().clone();
            let mut fresh = Vec::new();
            for y in &basis {
                fresh.push(self.mul_coords(&x, y));
                fresh.push(self.mul_coords(y, &x));
            }
            for v in fresh {
                if span.insert(&v) {
                    queue.push(v);
                }
            }
        }
        Ok(span.to_subspace())
    }

    /// Checks that every pairwise product of `candidates` is zero or listed.
    pub fn is_lie_set(&self, candidates: &[Element]) -> Result<Option<LieSetViolation>> {
        for x in candidates {
            self.owns(x)?;
        }
        let listed: HashSet<&Vector> = candidates.iter().map(|x| &x.coords).collect();
        for (i, x) in candidates.iter().enumerate() {
            for (j, y) in candidates.iter().enumerate() {
                let p = self.mul_coords(&x.coords, &y.coords);
                if !vector::is_zero(&p) && !listed.contains(&p) {
                    return Ok(Some(LieSetViolation {
                        left: i,
                        right: j,
                        product: Element { coords: p },
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Adjoins nonzero products until the set is closed. Zero and repeated
    /// seeds are dropped. Fails once more than `cap` members accumulate.
    pub fn lie_set_closure(&self, seeds: &[Element], cap: usize) -> Result<LieSet> {
        let mut members: Vec<Vector> = Vec::new();
        let mut seen: HashSet<Vector> = HashSet::new();
        let mut push = |v: Vector, members: &mut Vec<Vector>| -> Result<()> {
            if vector::is_zero(&v) || seen.contains(&v) {
                return Ok(());
            }
            seen.insert(v.clone());
            members.push(v);
            if members.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
            Ok(())
        };
        for s in seeds {
            self.owns(s)?;
            push(s.coords.clone(), &mut members)?;
        }
        let mut next = 0;
        while next < members.len() {
            let x = members[next].clone();
            for j in 0..=next {
                let y = members[j].clone();
                push(self.mul_coords(&x, &y), &mut members)?;
                push(self.mul_coords(&y, &x), &mut members)?;
            }
            next += 1;
        }
        Ok(LieSet {
            members: members.into_iter().map(|coords| Element { coords }).collect(),
        })
    }

    /// Validates a candidate list as a Lie set without adjoining anything.
    pub fn lie_set(&self, members: Vec<Element>) -> Result<LieSet> {
        if let Some(v) = self.is_lie_set(&members)? {
            return Err(Error::AlgebraMismatch(format!(
                "not closed: product of members {} and {} is {}",
                v.left + 1,
                v.right + 1,
                self.format_element(&v.product)
            )));
        }
        let mut seen = HashSet::new();
        let members = members
            .into_iter()
            .filter(|m| !m.is_zero() && seen.insert(m.coords.clone()))
            .collect();
        Ok(LieSet { members })
    }

    /// `span(X · Y)`.
    pub fn product_span(&self, x: &Subspace, y: &Subspace) -> Subspace {
        let mut span = SpanBuilder::new(self.field, self.dim);
        for a in x.basis() {
            for b in y.basis() {
                span.insert(&self.mul_coords(a, b));
            }
        }
        span.to_subspace()
    }

    /// `S^1 = S`, `S^{k+1} = span(S·S^k + S^k·S)`, products taken in the
    /// algebra. Stops at zero or at the first term equal to its predecessor
    /// (which is not repeated).
    pub fn product_series(&self, s: &Subspace) -> Vec<Subspace> {
        let mut series = vec![s.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self
                .product_span(s, last)
                .sum(&self.product_span(last, s))
                .expect("same ambient space");
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Two-sided lower central series `A^1 ⊇ A^2 ⊇ ...`.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        self.product_series(&Subspace::full(self.field, self.dim))
    }

    /// Class `c` means `A^c ≠ 0 = A^{c+1}`.
    pub fn is_nilpotent_algebra(&self) -> NilpotencyClass {
        Self::classify(&self.lower_central_series())
    }

    pub fn subspace_nilpotency(&self, s: &Subspace) -> NilpotencyClass {
        Self::classify(&self.product_series(s))
    }

    fn classify(series: &[Subspace]) -> NilpotencyClass {
        let last = series.last().expect("series is nonempty");
        if last.is_zero() {
            NilpotencyClass {
                nilpotent: true,
                class: Some(series.len() - 1),
            }
        } else {
            NilpotencyClass {
                nilpotent: false,
                class: None,
            }
        }
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        if s.field() != self.field {
            return Err(Error::fields(self.field, s.field()));
        }
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.ambient_dim(),
            });
        }
        for b in s.basis() {
            for i in 0..self.dim {
                let e = vector::unit(self.field, self.dim, i);
                if !s.contains(&self.mul_coords(&e, b))? || !s.contains(&self.mul_coords(b, &e))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Human-readable linear combination such as `2*e1 - 1/2*e3`.
    pub fn format_element(&self, x: &Element) -> String {
        format_combination(&self.names, x.coords())
    }
}

pub(crate) fn format_combination(names: &[String], coords: &[Scalar]) -> String {
    let mut out = String::new();
    for (c, name) in coords.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn entries(xs: &[(usize, usize, usize, i64)]) -> Vec<(usize, usize, usize, Scalar)> {
        xs.iter().map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, Q.int(c))).collect()
    }

    fn c2() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(Q, 2, &entries(&[(1, 1, 2, 1)])).unwrap()
    }

    fn sol2() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(Q, 2, &entries(&[(1, 2, 2, 1), (2, 1, 2, -1)])).unwrap()
    }

    fn h3() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(Q, 3, &entries(&[(1, 2, 3, 1), (2, 1, 3, -1)])).unwrap()
    }

    fn span(a: &LeibnizAlgebra, vs: &[&[i64]]) -> Subspace {
        Subspace::span(a.field(), a.dim(), vs.iter().map(|v| vector::from_ints(a.field(), v)).collect()).unwrap()
    }

    #[test]
    fn leibniz_validation() {
        assert!(c2().validate().passed());
        let abelian = LeibnizAlgebra::from_entries(Q, 3, &[]).unwrap();
        assert!(abelian.validate().passed());

        let bad = LeibnizAlgebra::tensor_from_entries(Q, 2, &entries(&[(1, 1, 1, 1)])).unwrap();
        let report = validate_leibniz(Q, 2, &bad).unwrap();
        let v = &report.violations[0];
        assert_eq!((v.i, v.j, v.k), (0, 0, 0));
        assert_eq!(v.lhs, vector::from_ints(Q, &[1, 0]));
        assert_eq!(v.rhs, vector::from_ints(Q, &[2, 0]));
        assert!(matches!(LeibnizAlgebra::new(Q, 2, bad.clone()), Err(Error::NotLeibniz)));
        assert!(!LeibnizAlgebra::new_unvalidated(Q, 2, bad).unwrap().is_validated());

        assert!(matches!(validate_leibniz(Q, 3, &[]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn products_in_c2() {
        let a = c2();
        let (e1, e2) = (a.basis_element(0), a.basis_element(1));
        assert_eq!(a.multiply(&e1, &e1).unwrap(), e2);
        assert!(a.multiply(&e2, &e1).unwrap().is_zero());
        let x = a.element_from_ints(&[3, -2]).unwrap();
        assert!(a.multiply(&x, &a.zero()).unwrap().is_zero());
        let other = LeibnizAlgebra::from_entries(Q, 3, &[]).unwrap();
        assert!(matches!(a.multiply(&other.zero(), &e1), Err(Error::AlgebraMismatch(_))));
    }

    #[test]
    fn multiplication_matrices() {
        let a = c2();
        let n = Matrix::from_ints(Q, &[[0, 0], [1, 0]]);
        assert_eq!(a.left_mult_matrix(&a.basis_element(0)).unwrap(), n);
        assert_eq!(a.right_mult_matrix(&a.basis_element(0)).unwrap(), n);
        assert!(a.left_mult_matrix(&a.basis_element(1)).unwrap().is_zero());
        assert!(a.right_mult_matrix(&a.basis_element(1)).unwrap().is_zero());
    }

    #[test]
    fn powers() {
        let a = c2();
        let e1 = a.basis_element(0);
        assert_eq!(a.power(&e1, 1).unwrap(), e1);
        assert_eq!(a.power(&e1, 2).unwrap(), a.basis_element(1));
        assert!(a.power(&e1, 3).unwrap().is_zero());
        assert!(matches!(a.power(&e1, 0), Err(Error::InvalidExponent(0))));
        let ab = LeibnizAlgebra::from_entries(Q, 2, &[]).unwrap();
        assert!(ab.power(&ab.element_from_ints(&[1, 1]).unwrap(), 2).unwrap().is_zero());
    }

    #[test]
    fn operator_identities_hold() {
        let c = c2();
        assert!(c.verify_operator_identities().passed());
        let r = c.right_mult_matrix(&c.basis_element(0)).unwrap();
        let l = c.left_mult_matrix(&c.basis_element(0)).unwrap();
        assert!((&r * &r).is_zero());
        assert!((-&(&r * &l)).is_zero());
        assert!(LeibnizAlgebra::from_entries(Q, 4, &[]).unwrap().verify_operator_identities().passed());
        assert!(h3().verify_operator_identities().passed());
        assert!(sol2().verify_operator_identities().passed());
    }

    #[test]
    fn identities_fail_on_non_leibniz_data() {
        let bad = LeibnizAlgebra::tensor_from_entries(Q, 2, &entries(&[(1, 1, 1, 1)])).unwrap();
        let a = LeibnizAlgebra::new_unvalidated(Q, 2, bad).unwrap();
        assert!(!a.verify_operator_identities().passed());
    }

    #[test]
    fn generated_subalgebras() {
        let a = c2();
        assert!(a.subalgebra_generated(&[a.basis_element(0)]).unwrap().is_full());
        assert_eq!(a.subalgebra_generated(&[a.basis_element(1)]).unwrap(), span(&a, &[&[0, 1]]));
        assert!(a.subalgebra_generated(&[a.zero()]).unwrap().is_zero());
    }

    #[test]
    fn lie_sets() {
        let a = c2();
        assert!(a.is_lie_set(&a.basis()).unwrap().is_none());
        let closure = a.lie_set_closure(&[a.basis_element(0)], DEFAULT_LIE_SET_CAP).unwrap();
        assert_eq!(closure.members(), a.basis().as_slice());

        let s = sol2();
        let v = s.is_lie_set(&s.basis()).unwrap().unwrap();
        assert_eq!((v.left, v.right), (1, 0));
        assert_eq!(v.product, s.element_from_ints(&[0, -1]).unwrap());
        let closure = s.lie_set_closure(&s.basis(), DEFAULT_LIE_SET_CAP).unwrap();
        let expected = vec![
            s.basis_element(0),
            s.basis_element(1),
            s.element_from_ints(&[0, -1]).unwrap(),
        ];
        assert_eq!(closure.members(), expected.as_slice());
        assert!(s.is_lie_set(closure.members()).unwrap().is_none());
    }

    #[test]
    fn closure_cap() {
        // In sol2, 2e1 scales e2 by 2 at every step, so the closure is infinite.
        let s = sol2();
        let seeds = [s.element_from_ints(&[2, 0]).unwrap(), s.basis_element(1)];
        assert!(matches!(s.lie_set_closure(&seeds, 50), Err(Error::CapExceeded { cap: 50 })));
    }

    #[test]
    fn lower_central_series_examples() {
        let c = c2();
        let lcs = c.lower_central_series();
        assert_eq!(lcs, vec![Subspace::full(Q, 2), span(&c, &[&[0, 1]]), Subspace::zero(Q, 2)]);
        assert_eq!(c.is_nilpotent_algebra(), NilpotencyClass { nilpotent: true, class: Some(2) });

        let s = sol2();
        assert_eq!(s.lower_central_series(), vec![Subspace::full(Q, 2), span(&s, &[&[0, 1]])]);
        assert!(!s.is_nilpotent_algebra().nilpotent);

        let ab = LeibnizAlgebra::from_entries(Q, 3, &[]).unwrap();
        assert_eq!(ab.is_nilpotent_algebra().class, Some(1));
    }

    #[test]
    fn ideals() {
        let c = c2();
        assert!(c.is_ideal(&span(&c, &[&[0, 1]])).unwrap());
        assert!(!c.is_ideal(&span(&c, &[&[1, 0]])).unwrap());
        assert!(c.is_ideal(&Subspace::full(Q, 2)).unwrap());
        assert!(Ideal::new(&c, span(&c, &[&[1, 0]])).is_err());
    }

    #[test]
    fn element_formatting() {
        let c = h3();
        assert_eq!(c.format_element(&c.element_from_ints(&[2, 0, -1]).unwrap()), "2*e1 - e3");
        assert_eq!(c.format_element(&c.element_from_ints(&[0, -1, 0]).unwrap()), "-e2");
        assert_eq!(c.format_element(&c.zero()), "0");
    }
}
