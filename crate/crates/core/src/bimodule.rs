//! Leibniz bimodules as families of action matrices.
//!
//! A bimodule over `A` is a space `M` with left actions `T_a(m) = am` and
//! right actions `S_a(m) = ma`, stored on the basis of `A`. The defining
//! axioms are, for all `b, c` in `A`:
//!
//! ```text
//! S_{bc} = S_c S_b + T_b S_c
//! T_b S_c = S_c T_b + S_{bc}
//! T_c T_b = T_{cb} + T_b T_c
//! ```
//!
//! and `S_c S_b = -S_c T_b` follows from the first two.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Element, Ideal, LeibnizAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{vector, Matrix, SpanBuilder, Subspace, Vector};

/// Seed for the pseudo-random candidates of [`composition_chain`].
pub const CHAIN_SEED: u64 = 0x1eb2_0c0d;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    field: Field,
    algebra_dim: usize,
    module_dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

/// A subspace invariant under every action matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    carrier: Subspace,
}

impl Submodule {
    pub fn carrier(&self) -> &Subspace {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BimoduleAxiom {
    /// `S_{bc} = S_c S_b + T_b S_c`
    RightOfProduct,
    /// `T_b S_c = S_c T_b + S_{bc}`
    LeftRightCommutator,
    /// `T_c T_b = T_{cb} + T_b T_c`
    LeftOfProduct,
    /// `S_c S_b = -S_c T_b`, derived from the first two
    RightRight,
}

impl BimoduleAxiom {
    pub fn describe(self) -> &'static str {
        match self {
            BimoduleAxiom::RightOfProduct => "S_{bc} = S_c S_b + T_b S_c",
            BimoduleAxiom::LeftRightCommutator => "T_b S_c = S_c T_b + S_{bc}",
            BimoduleAxiom::LeftOfProduct => "T_c T_b = T_{cb} + T_b T_c",
            BimoduleAxiom::RightRight => "S_c S_b = -S_c T_b",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: BimoduleAxiom,
    pub b: usize,
    pub c: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BimoduleReport {
    /// Failures of the three defining axioms.
    pub axiom_failures: Vec<AxiomFailure>,
    /// Failures of the derived identity, reported separately.
    pub derived_failures: Vec<AxiomFailure>,
}

impl BimoduleReport {
    pub fn axioms_hold(&self) -> bool {
        self.axiom_failures.is_empty()
    }

    pub fn derived_holds(&self) -> bool {
        self.derived_failures.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.axioms_hold() && self.derived_holds()
    }
}

impl Bimodule {
    pub fn new(
        field: Field,
        algebra_dim: usize,
        module_dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Self> {
        if left.len() != algebra_dim || right.len() != algebra_dim {
            return Err(Error::ShapeMismatch(format!(
                "expected {algebra_dim} left and right actions, found {} and {}",
                left.len(),
                right.len()
            )));
        }
        for m in left.iter().chain(&right) {
            if m.field() != field {
                return Err(Error::fields(field, m.field()));
            }
            if m.rows() != module_dim || m.cols() != module_dim {
                return Err(Error::ShapeMismatch(format!(
                    "action matrix is {}x{}, module dimension is {module_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Bimodule {
            field,
            algebra_dim,
            module_dim,
            left,
            right,
        })
    }

    /// `A` acting on itself: `T = L`, `S = R`.
    pub fn regular(algebra: &LeibnizAlgebra) -> Self {
        let n = algebra.dim();
        let f = algebra.field();
        let left = (0..n).map(|i| algebra.left_matrix_of(&vector::unit(f, n, i))).collect();
        let right = (0..n).map(|i| algebra.right_matrix_of(&vector::unit(f, n, i))).collect();
        Bimodule {
            field: f,
            algebra_dim: n,
            module_dim: n,
            left,
            right,
        }
    }

    /// All actions zero.
    pub fn trivial(field: Field, algebra_dim: usize, module_dim: usize) -> Self {
        let z = Matrix::zeros(field, module_dim, module_dim);
        Bimodule {
            field,
            algebra_dim,
            module_dim,
            left: vec![z.clone(); algebra_dim],
            right: vec![z; algebra_dim],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// `T_{e_i}` for each basis element.
    pub fn left_actions(&self) -> &[Matrix] {
        &self.left
    }

    /// `S_{e_i}` for each basis element.
    pub fn right_actions(&self) -> &[Matrix] {
        &self.right
    }

    /// All `2n` action matrices, left ones first.
    pub fn actions(&self) -> impl Iterator<Item = &Matrix> {
        self.left.iter().chain(&self.right)
    }

    fn combine(&self, mats: &[Matrix], coords: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.module_dim, self.module_dim);
        for (c, m) in coords.iter().zip(mats) {
            out.add_scaled(c, m);
        }
        out
    }

    fn owns(&self, a: &Element) -> Result<()> {
        vector::check(self.field, self.algebra_dim, a.coords()).map_err(|e| Error::AlgebraMismatch(e.to_string()))
    }

    /// `T_a = Σ α_i T_i` for `a = Σ α_i e_i`.
    pub fn t_matrix(&self, a: &Element) -> Result<Matrix> {
        self.owns(a)?;
        Ok(self.combine(&self.left, a.coords()))
    }

    /// `S_a = Σ α_i S_i` for `a = Σ α_i e_i`.
    pub fn s_matrix(&self, a: &Element) -> Result<Matrix> {
        self.owns(a)?;
        Ok(self.combine(&self.right, a.coords()))
    }

    fn check_algebra(&self, algebra: &LeibnizAlgebra) -> Result<()> {
        if algebra.field() != self.field {
            return Err(Error::fields(algebra.field(), self.field));
        }
        if algebra.dim() != self.algebra_dim {
            return Err(Error::ShapeMismatch(format!(
                "bimodule has {} actions, algebra has dimension {}",
                self.algebra_dim,
                algebra.dim()
            )));
        }
        Ok(())
    }

    /// Checks the three axioms on every basis pair, and the derived identity.
    pub fn validate(&self, algebra: &LeibnizAlgebra) -> Result<BimoduleReport> {
        self.check_algebra(algebra)?;
        let n = self.algebra_dim;
        let mut report = BimoduleReport::default();
        for b in 0..n {
            for c in 0..n {
                let (tb, sb, tc, sc) = (&self.left[b], &self.right[b], &self.left[c], &self.right[c]);
                let s_bc = self.combine(&self.right, algebra.basis_product(b, c));
                let t_cb = self.combine(&self.left, algebra.basis_product(c, b));
                let sc_sb = sc * sb;
                let fail = |axiom| AxiomFailure { axiom, b, c };
                if s_bc != &sc_sb + &(tb * sc) {
                    report.axiom_failures.push(fail(BimoduleAxiom::RightOfProduct));
                }
                if tb * sc != &(sc * tb) + &s_bc {
                    report.axiom_failures.push(fail(BimoduleAxiom::LeftRightCommutator));
                }
                if tc * tb != &t_cb + &(tb * tc) {
                    report.axiom_failures.push(fail(BimoduleAxiom::LeftOfProduct));
                }
                if sc_sb != -&(sc * tb) {
                    report.derived_failures.push(fail(BimoduleAxiom::RightRight));
                }
            }
        }
        Ok(report)
    }

    /// Common kernel of every `T_i` and `S_i`: `{m | am = ma = 0 for all a}`.
    pub fn joint_kernel(&self) -> Subspace {
        if self.algebra_dim == 0 {
            return Subspace::full(self.field, self.module_dim);
        }
        let stacked = Matrix::vstack(self.field, self.module_dim, &self.left.iter().chain(&self.right).cloned().collect::<Vec<_>>())
            .expect("actions share shape");
        stacked.kernel()
    }

    /// `{a | T_a = 0 and S_a = 0}`, the kernel of `a ↦ (T_a, S_a)`.
    pub fn annihilator(&self, algebra: &LeibnizAlgebra) -> Result<Ideal> {
        self.check_algebra(algebra)?;
        let carrier = self.annihilator_space();
        Ideal::new(algebra, carrier).map_err(|_| Error::TheoremViolation("annihilator of a bimodule is not an ideal".into()))
    }

    fn annihilator_space(&self) -> Subspace {
        let columns: Vec<Vector> = (0..self.algebra_dim)
            .map(|i| {
                let mut col = self.left[i].to_flat();
                col.extend(self.right[i].to_flat());
                col
            })
            .collect();
        let rows = 2 * self.module_dim * self.module_dim;
        if rows == 0 {
            return Subspace::full(self.field, self.algebra_dim);
        }
        Matrix::from_columns(self.field, rows, &columns)
            .expect("flattened actions share length")
            .kernel()
    }

    /// Passes to `A / ann(M)`, on which `M` is faithful.
    ///
    /// The quotient basis is the set of standard basis vectors outside the
    /// pivot positions of the annihilator. Well-definedness of the induced
    /// products and actions is checked, not assumed.
    pub fn faithful_quotient(&self, algebra: &LeibnizAlgebra) -> Result<(LeibnizAlgebra, Bimodule)> {
        let ann = self.annihilator(algebra)?.into_carrier();
        for z in ann.basis() {
            if !self.combine(&self.left, z).is_zero() || !self.combine(&self.right, z).is_zero() {
                return Err(Error::TheoremViolation("annihilator element acts nontrivially".into()));
            }
        }
        let q = ann.quotient();
        let k = q.lift.len();
        let f = self.field;
        let mut tensor = vec![vec![vector::zero(f, k); k]; k];
        for (i, x) in q.lift.iter().enumerate() {
            for (j, y) in q.lift.iter().enumerate() {
                tensor[i][j] = q.projection.apply(&algebra.mul_coords(x, y));
            }
        }
        let names = q
            .lift
            .iter()
            .map(|l| {
                let pos = l.iter().position(|s| !s.is_zero()).expect("lift is a unit vector");
                algebra.names()[pos].clone()
            })
            .collect();
        let quotient = LeibnizAlgebra::new(f, k, tensor)
            .map_err(|_| Error::TheoremViolation("quotient by the annihilator is not Leibniz".into()))?
            .with_names(names)?;
        let left = q.lift.iter().map(|l| self.combine(&self.left, l)).collect();
        let right = q.lift.iter().map(|l| self.combine(&self.right, l)).collect();
        let module = Bimodule::new(f, k, self.module_dim, left, right)?;
        Ok((quotient, module))
    }

    pub fn is_submodule(&self, s: &Subspace) -> Result<bool> {
        for m in self.actions() {
            if !s.is_invariant_under(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn submodule(&self, carrier: Subspace) -> Result<Submodule> {
        if self.is_submodule(&carrier)? {
            Ok(Submodule { carrier })
        } else {
            Err(Error::ShapeMismatch("subspace is not invariant under the actions".into()))
        }
    }

    /// Smallest invariant subspace containing `seeds`, by spinning.
    pub fn spin(&self, seeds: &[Vector]) -> Result<Submodule> {
        let mut span = SpanBuilder::new(self.field, self.module_dim);
        let mut queue = Vec::new();
        for s in seeds {
            vector::check(self.field, self.module_dim, s)?;
            if span.insert(s) {
                queue.push(s.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for m in self.actions() {
                let w = m.apply(&v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        Ok(Submodule {
            carrier: span.to_subspace(),
        })
    }

    pub fn submodule_generated(&self, v: &[Scalar]) -> Result<Submodule> {
        self.spin(&[v.to_vec()])
    }

    /// Induced bimodule on `M / N`.
    pub fn quotient_module(&self, n: &Submodule) -> Result<Bimodule> {
        let q = n.carrier.quotient();
        let k = q.lift.len();
        let lift = Matrix::from_columns(self.field, self.module_dim, &q.lift)?;
        let induce = |m: &Matrix| &(&q.projection * m) * &lift;
        Bimodule::new(
            self.field,
            self.algebra_dim,
            k,
            self.left.iter().map(induce).collect(),
            self.right.iter().map(induce).collect(),
        )
    }

    /// A maximal chain `0 = N_0 ⊂ ... ⊂ N_r = M` of submodules, found
    /// greedily with the default candidate seed.
    pub fn composition_chain(&self) -> Vec<Submodule> {
        self.composition_chain_seeded(CHAIN_SEED)
    }

    /// Each step picks a submodule `W ⊋ N` and shrinks it while some
    /// candidate vector of `W \ N` spins (together with `N`) to something
    /// smaller. Candidates, in order: vectors killed by every action modulo
    /// `N`; basis vectors of `W`; vectors killed modulo `N` by a single
    /// action; seeded random combinations.
    pub fn composition_chain_seeded(&self, seed: u64) -> Vec<Submodule> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let zero = Subspace::zero(self.field, self.module_dim);
        let mut chain = vec![Submodule { carrier: zero }];
        loop {
            let n = chain.last().unwrap().carrier.clone();
            if n.is_full() {
                break;
            }
            let mut w = Subspace::full(self.field, self.module_dim);
            'shrink: loop {
                for v in self.chain_candidates(&n, &w, &mut rng) {
                    let mut seeds = n.basis().to_vec();
                    seeds.push(v);
                    let u = self.spin(&seeds).expect("shapes agree").carrier;
                    if u.dim() < w.dim() {
                        w = u;
                        continue 'shrink;
                    }
                }
                break;
            }
            chain.push(Submodule { carrier: w });
        }
        chain
    }

    fn chain_candidates(&self, n: &Subspace, w: &Subspace, rng: &mut ChaCha8Rng) -> Vec<Vector> {
        let f = self.field;
        let wb = Matrix::from_columns(f, self.module_dim, w.basis()).expect("basis vectors share length");
        let proj = n.quotient().projection;
        let in_w = |ys: &Subspace| -> Vec<Vector> { ys.basis().iter().map(|y| wb.apply(y)).collect() };
        let mut out = Vec::new();

        let restricted: Vec<Matrix> = self.actions().map(|m| &(&proj * m) * &wb).collect();
        if !restricted.is_empty() && proj.rows() > 0 {
            let stacked = Matrix::vstack(f, w.dim(), &restricted).expect("restricted actions share width");
            out.extend(in_w(&stacked.kernel()));
        } else {
            out.extend(w.basis().iter().cloned());
        }
        out.extend(w.basis().iter().cloned());
        if proj.rows() > 0 {
            for r in &restricted {
                out.extend(in_w(&r.kernel()));
            }
        }
        for _ in 0..8 {
            let coeffs: Vector = (0..w.dim()).map(|_| f.int(rng.random_range(-3..=3))).collect();
            out.push(wb.apply(&coeffs));
        }
        out.retain(|v| !n.contains(v).expect("shapes agree"));
        out
    }
}
