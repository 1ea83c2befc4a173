//! Nilpotent operator algebras, the word bound for a single element, and
//! the Engel flag of a bimodule.
//!
//! For a Lie set `C` generating `A` with every `T_c` nilpotent on `M`, the
//! associative algebra generated by `T_a, S_a` is nilpotent for each `a`,
//! the whole action algebra is nilpotent, and `M` has a nonzero vector
//! killed on both sides by `A`. The functions here compute each of those
//! objects directly so they can be checked.

use serde::Serialize;
use serde_json::json;

use crate::algebra::{Element, LeibnizAlgebra, LieSetViolation};
use crate::bimodule::{AxiomFailure, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{is_nilpotent_matrix, Matrix, SpanBuilder, Subspace, Vector};
use crate::report::{coords_json, Report, Verdict};

/// The non-unital associative algebra spanned by all nonempty words in the
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorAlgebra {
    generators: Vec<Matrix>,
    basis: Vec<Matrix>,
    power_dims: Vec<usize>,
    nilpotent: bool,
    index: Option<usize>,
}

impl OperatorAlgebra {
    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotent
    }

    /// Least `k` with `W_k = 0`.
    pub fn index(&self) -> Option<usize> {
        self.index
    }

    /// `dim W_1, dim W_2, ...` up to the first zero or repeated term.
    pub fn power_dims(&self) -> &[usize] {
        &self.power_dims
    }
}

/// Builds the algebra generated by `gens` and decides nilpotency through the
/// power chain `W_1 = span(basis)`, `W_{j+1} = span(gens · W_j)`. Since `W_j`
/// is the span of words of length at least `j`, this equals
/// `span(W_1 · W_j)`.
pub fn generated_operator_algebra(gens: &[Matrix]) -> Result<OperatorAlgebra> {
    let Some(first) = gens.first() else {
        return Ok(OperatorAlgebra {
            generators: Vec::new(),
            basis: Vec::new(),
            power_dims: vec![0],
            nilpotent: true,
            index: Some(1),
        });
    };
    let field = first.field();
    let m = first.rows();
    for g in gens {
        if g.field() != field {
            return Err(Error::fields(field, g.field()));
        }
        if !g.is_square() || g.rows() != m {
            return Err(Error::SizeMismatch(format!(
                "generator is {}x{}, expected {m}x{m}",
                g.rows(),
                g.cols()
            )));
        }
    }

    let mut span = SpanBuilder::new(field, m * m);
    let mut basis: Vec<Matrix> = Vec::new();
    let mut queue: Vec<Matrix> = Vec::new();
    for g in gens {
        if span.insert(&g.to_flat()) {
            queue.push(g.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for g in gens {
            for p in [g * &x, &x * g] {
                if span.insert(&p.to_flat()) {
                    queue.push(p);
                }
            }
        }
        basis.push(x);
    }

    let mut power_dims = vec![basis.len()];
    let mut level: Vec<Matrix> = basis.clone();
    let (nilpotent, index) = loop {
        if level.is_empty() {
            break (true, Some(power_dims.len()));
        }
        let mut next_span = SpanBuilder::new(field, m * m);
        let mut next = Vec::new();
        for g in gens {
            for w in &level {
                let p = g * w;
                if next_span.insert(&p.to_flat()) {
                    next.push(p);
                }
            }
        }
        if next.len() == level.len() {
            break (false, None);
        }
        power_dims.push(next.len());
        level = next;
    };

    Ok(OperatorAlgebra {
        generators: gens.to_vec(),
        basis,
        power_dims,
        nilpotent,
        index,
    })
}

/// Word-length bound for the algebra generated by `T_a` and `S_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordBound {
    /// Least `e` with `T_a^e = 0`.
    pub left_exponent: usize,
    /// `n = e + 1`.
    pub n: usize,
    /// `S_a^n = 0`.
    pub right_power_vanishes: bool,
    /// `2n - 1`.
    pub word_length: usize,
    /// Every word of length `2n - 1` in `T_a, S_a` vanishes.
    pub words_vanish: bool,
    /// Actual nilpotency index of the generated algebra.
    pub algebra_index: Option<usize>,
}

impl WordBound {
    pub fn holds(&self) -> bool {
        self.right_power_vanishes && self.words_vanish
    }
}

pub fn lemma_word_bound_check(algebra: &LeibnizAlgebra, module: &Bimodule, a: &Element) -> Result<WordBound> {
    let t = module.t_matrix(a)?;
    let s = module.s_matrix(a)?;
    if algebra.dim() != module.algebra_dim() {
        return Err(Error::ShapeMismatch("algebra and bimodule disagree on dimension".into()));
    }
    let verdict = is_nilpotent_matrix(&t)?;
    let Some(e) = verdict.index else {
        return Err(Error::NotNilpotent(algebra.format_element(a)));
    };
    let n = e + 1;
    let ops = generated_operator_algebra(&[t, s.clone()])?;
    let word_length = 2 * n - 1;
    Ok(WordBound {
        left_exponent: e,
        n,
        right_power_vanishes: s.pow(n)?.is_zero(),
        word_length,
        words_vanish: ops.index().is_some_and(|k| k <= word_length),
        algebra_index: ops.index(),
    })
}

/// Outcome of checking the hypotheses on a candidate Lie set `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Premises {
    pub members: Vec<Element>,
    /// First pair whose product is neither zero nor listed.
    pub lie_set_violation: Option<LieSetViolation>,
    /// Dimension of the subalgebra generated by `C`.
    pub generated_dim: usize,
    pub algebra_dim: usize,
    /// Nilpotency index of `T_c` per member.
    pub left_indices: Vec<Option<usize>>,
    /// First failure of the defining bimodule axioms, if any.
    pub module_axiom_failure: Option<AxiomFailure>,
}

impl Premises {
    pub fn is_lie_set(&self) -> bool {
        self.lie_set_violation.is_none()
    }

    pub fn generates(&self) -> bool {
        self.generated_dim == self.algebra_dim
    }

    /// First member (by position) whose left action is not nilpotent.
    pub fn non_nilpotent_witness(&self) -> Option<(usize, &Element)> {
        self.left_indices
            .iter()
            .position(Option::is_none)
            .map(|i| (i, &self.members[i]))
    }

    pub fn is_bimodule(&self) -> bool {
        self.module_axiom_failure.is_none()
    }

    pub fn passed(&self) -> bool {
        self.is_bimodule() && self.is_lie_set() && self.generates() && self.non_nilpotent_witness().is_none()
    }

    pub fn write_to(&self, algebra: &LeibnizAlgebra, report: &mut Report) {
        let module_witness = self.module_axiom_failure.as_ref().map(|f| {
            json!({ "axiom": f.axiom.describe(), "b": f.b + 1, "c": f.c + 1 })
        });
        report.premise("bimodule_axioms", self.is_bimodule(), module_witness);
        let lie_witness = self.lie_set_violation.as_ref().map(|v| {
            json!({
                "left": v.left + 1,
                "right": v.right + 1,
                "product": algebra.format_element(&v.product),
                "product_coords": coords_json(v.product.coords()),
            })
        });
        report.premise("lie_set", self.is_lie_set(), lie_witness);
        let gen_witness = (!self.generates()).then(|| {
            json!({ "generated_dim": self.generated_dim, "algebra_dim": self.algebra_dim })
        });
        report.premise("generates_algebra", self.generates(), gen_witness);
        let nil_witness = self.non_nilpotent_witness().map(|(i, x)| {
            json!({
                "member": i + 1,
                "element": algebra.format_element(x),
                "coords": coords_json(x.coords()),
            })
        });
        report.premise("left_actions_nilpotent", nil_witness.is_none(), nil_witness);
    }
}

pub fn check_engel_premises(algebra: &LeibnizAlgebra, module: &Bimodule, lie_set: &[Element]) -> Result<Premises> {
    let module_axiom_failure = module.validate(algebra)?.axiom_failures.into_iter().next();
    let lie_set_violation = algebra.is_lie_set(lie_set)?;
    let generated_dim = algebra.subalgebra_generated(lie_set)?.dim();
    let mut left_indices = Vec::with_capacity(lie_set.len());
    for c in lie_set {
        left_indices.push(is_nilpotent_matrix(&module.t_matrix(c)?)?.index);
    }
    Ok(Premises {
        members: lie_set.to_vec(),
        lie_set_violation,
        generated_dim,
        algebra_dim: algebra.dim(),
        left_indices,
        module_axiom_failure,
    })
}

/// `0 = M_0 ⊂ M_1 ⊂ ... ⊂ M_k = M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    chain: Vec<Subspace>,
}

impl Flag {
    pub fn levels(&self) -> &[Subspace] {
        &self.chain
    }

    /// `k`, the number of strict steps.
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }
}

/// `{m | T_c m ∈ below and S_c m ∈ below for every c}`.
fn joint_preimage(ops: &[Matrix], below: &Subspace) -> Subspace {
    let q = below.quotient();
    if q.projection.rows() == 0 || ops.is_empty() {
        return Subspace::full(below.field(), below.ambient_dim());
    }
    let blocks: Vec<Matrix> = ops.iter().map(|op| &q.projection * op).collect();
    Matrix::vstack(below.field(), below.ambient_dim(), &blocks)
        .expect("blocks share width")
        .kernel()
}

/// Ascending filtration by the generators `E`; fails with `FlagStalled`
/// when a level repeats before reaching `M`.
pub fn engel_flag(module: &Bimodule, generators: &[Element]) -> Result<Flag> {
    let mut ops = Vec::with_capacity(2 * generators.len());
    for c in generators {
        ops.push(module.t_matrix(c)?);
        ops.push(module.s_matrix(c)?);
    }
    let mut chain = vec![Subspace::zero(module.field(), module.module_dim())];
    loop {
        let last = chain.last().unwrap();
        if last.is_full() {
            return Ok(Flag { chain });
        }
        let next = joint_preimage(&ops, last);
        if &next == last {
            return Err(Error::FlagStalled {
                level: chain.len() - 1,
                dim: last.dim(),
                module_dim: module.module_dim(),
            });
        }
        chain.push(next);
    }
}

/// First canonical basis vector of the joint kernel of all actions.
pub fn joint_annihilator(module: &Bimodule) -> Result<Vector> {
    module
        .joint_kernel()
        .basis()
        .first()
        .cloned()
        .ok_or(Error::NoAnnihilator)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementAlgebra {
    /// 0-based basis index of `a`.
    pub basis_index: usize,
    pub dim: usize,
    pub nilpotent: bool,
    pub index: Option<usize>,
}

/// Everything checked for one `(A, M, C)`.
#[derive(Clone, Debug)]
pub struct Theorem2Outcome {
    pub premises: Premises,
    pub per_element: Vec<ElementAlgebra>,
    pub flag: Option<Result<Flag>>,
    pub annihilator: Option<Result<Vector>>,
    /// The algebra generated by every `T_i, S_i`.
    pub joint_algebra: Option<OperatorAlgebra>,
    pub module_dim: usize,
}

impl Theorem2Outcome {
    pub fn verdict(&self) -> Verdict {
        if !self.premises.passed() {
            Verdict::PremisesFailed
        } else if self.conclusion_failures().is_empty() {
            Verdict::Pass
        } else {
            Verdict::TheoremViolation
        }
    }

    /// Names of failed conclusions; empty when premises fail.
    pub fn conclusion_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.premises.passed() {
            return out;
        }
        for e in &self.per_element {
            if !e.nilpotent {
                out.push(format!("element_algebra_nilpotent[e{}]", e.basis_index + 1));
            }
        }
        if !matches!(self.flag, Some(Ok(_))) {
            out.push("engel_flag_complete".into());
        }
        if self.module_dim > 0 && !matches!(self.annihilator, Some(Ok(_))) {
            out.push("joint_annihilator".into());
        }
        match &self.joint_algebra {
            Some(j) if j.index().is_some_and(|k| k <= self.module_dim + 1) => {}
            _ => out.push("joint_algebra_nilpotent".into()),
        }
        out
    }

    /// `Err(TheoremViolation)` when premises hold and a conclusion fails.
    pub fn ensure_consistent(&self) -> Result<()> {
        let failures = self.conclusion_failures();
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Error::TheoremViolation(failures.join(", ")))
        }
    }

    pub fn to_report(&self, algebra: &LeibnizAlgebra, command: &str, input: &str) -> Report {
        let mut r = Report::new(command, input);
        self.premises.write_to(algebra, &mut r);
        if !self.premises.passed() {
            r.note("premises failed; conclusions not evaluated");
            return r;
        }
        for e in &self.per_element {
            r.conclusion(
                format!("element_algebra_nilpotent[e{}]", e.basis_index + 1),
                e.nilpotent,
                Some(json!({ "dim": e.dim, "index": e.index })),
            );
        }
        match &self.flag {
            Some(Ok(f)) => r.conclusion("engel_flag_complete", true, Some(json!({ "length": f.length(), "dims": f.dims() }))),
            Some(Err(e)) => r.conclusion("engel_flag_complete", false, Some(json!({ "error": e.to_string() }))),
            None => r.conclusion("engel_flag_complete", false, None),
        };
        if self.module_dim > 0 {
            match &self.annihilator {
                Some(Ok(v)) => r.conclusion("joint_annihilator", true, Some(json!({ "vector": coords_json(v) }))),
                Some(Err(e)) => r.conclusion("joint_annihilator", false, Some(json!({ "error": e.to_string() }))),
                None => r.conclusion("joint_annihilator", false, None),
            };
        }
        if let Some(j) = &self.joint_algebra {
            let ok = j.index().is_some_and(|k| k <= self.module_dim + 1);
            r.conclusion(
                "joint_algebra_nilpotent",
                ok,
                Some(json!({ "dim": j.dim(), "index": j.index(), "bound": self.module_dim + 1 })),
            );
        }
        r
    }
}

/// Checks the hypotheses on `lie_set`; when they hold, builds every
/// conclusion object. The flag uses `lie_set` as its generator list.
pub fn theorem2_verify(algebra: &LeibnizAlgebra, module: &Bimodule, lie_set: &[Element]) -> Result<Theorem2Outcome> {
    let premises = check_engel_premises(algebra, module, lie_set)?;
    let mut outcome = Theorem2Outcome {
        premises,
        per_element: Vec::new(),
        flag: None,
        annihilator: None,
        joint_algebra: None,
        module_dim: module.module_dim(),
    };
    if !outcome.premises.passed() {
        return Ok(outcome);
    }
    for (i, a) in algebra.basis().iter().enumerate() {
        let ops = generated_operator_algebra(&[module.t_matrix(a)?, module.s_matrix(a)?])?;
        outcome.per_element.push(ElementAlgebra {
            basis_index: i,
            dim: ops.dim(),
            nilpotent: ops.is_nilpotent(),
            index: ops.index(),
        });
    }
    outcome.flag = Some(engel_flag(module, lie_set));
    if module.module_dim() > 0 {
        outcome.annihilator = Some(joint_annihilator(module));
    }
    let all: Vec<Matrix> = module.actions().cloned().collect();
    let joint = if all.is_empty() {
        generated_operator_algebra(&[Matrix::zeros(module.field(), module.module_dim(), module.module_dim())])?
    } else {
        generated_operator_algebra(&all)?
    };
    outcome.joint_algebra = Some(joint);
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_LIE_SET_CAP;
    use crate::field::Field;
    use crate::linalg::vector;

    const Q: Field = Field::Rationals;

    fn alg(n: usize, xs: &[(usize, usize, usize, i64)]) -> LeibnizAlgebra {
        let e: Vec<_> = xs.iter().map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, Q.int(c))).collect();
        LeibnizAlgebra::from_entries(Q, n, &e).unwrap()
    }

    fn c2() -> LeibnizAlgebra {
        alg(2, &[(1, 1, 2, 1)])
    }

    fn c3() -> LeibnizAlgebra {
        alg(3, &[(1, 1, 2, 1), (1, 2, 3, 1)])
    }

    fn h3() -> LeibnizAlgebra {
        alg(3, &[(1, 2, 3, 1), (2, 1, 3, -1)])
    }

    fn sol2() -> LeibnizAlgebra {
        alg(2, &[(1, 2, 2, 1), (2, 1, 2, -1)])
    }

    /// Literal enumeration of every word of length `k` in `gens`.
    fn all_words_vanish(gens: &[Matrix], k: usize) -> bool {
        let mut words: Vec<Matrix> = gens.to_vec();
        for _ in 1..k {
            words = words.iter().flat_map(|w| gens.iter().map(move |g| g * w)).collect();
        }
        words.iter().all(Matrix::is_zero)
    }

    #[test]
    fn single_nilpotent_generator() {
        let n = Matrix::from_ints(Q, &[[0, 0], [1, 0]]);
        let ops = generated_operator_algebra(std::slice::from_ref(&n)).unwrap();
        assert_eq!(ops.basis(), &[n]);
        assert!(ops.is_nilpotent());
        assert_eq!(ops.index(), Some(2));
    }

    #[test]
    fn identity_generator() {
        let ops = generated_operator_algebra(&[Matrix::identity(Q, 2)]).unwrap();
        assert_eq!(ops.dim(), 1);
        assert!(!ops.is_nilpotent());
        assert_eq!(ops.index(), None);
    }

    #[test]
    fn cyclic_three_operators_are_lower_triangular() {
        let a = c3();
        let m = Bimodule::regular(&a);
        let e1 = a.basis_element(0);
        let ops = generated_operator_algebra(&[m.t_matrix(&e1).unwrap(), m.s_matrix(&e1).unwrap()]).unwrap();
        for b in ops.basis() {
            for i in 0..3 {
                for j in i..3 {
                    assert!(b.get(i, j).is_zero());
                }
            }
        }
        assert!(ops.is_nilpotent());
        assert!(ops.index().unwrap() <= 3);
    }

    #[test]
    fn generator_checks() {
        let a = Matrix::zeros(Q, 2, 2);
        let b = Matrix::zeros(Q, 3, 3);
        assert!(matches!(generated_operator_algebra(&[a.clone(), b]), Err(Error::SizeMismatch(_))));
        let c = Matrix::zeros(Field::Prime(5), 2, 2);
        assert!(matches!(generated_operator_algebra(&[a, c]), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn power_chain_matches_two_sided_products() {
        // W_{j+1} computed from W_1 · W_j must give the same dimensions.
        let a = c3();
        let m = Bimodule::regular(&a);
        let gens: Vec<Matrix> = m.actions().cloned().collect();
        let ops = generated_operator_algebra(&gens).unwrap();
        let mut dims = vec![ops.dim()];
        let mut level = ops.basis().to_vec();
        while !level.is_empty() {
            let mut s = SpanBuilder::new(Q, 9);
            let mut next = Vec::new();
            for x in ops.basis() {
                for w in &level {
                    let p = x * w;
                    if s.insert(&p.to_flat()) {
                        next.push(p);
                    }
                }
            }
            if next.len() == level.len() {
                break;
            }
            dims.push(next.len());
            level = next;
        }
        assert_eq!(dims, ops.power_dims());
    }

    #[test]
    fn word_bounds() {
        let a = c2();
        let m = Bimodule::regular(&a);
        let b = lemma_word_bound_check(&a, &m, &a.basis_element(0)).unwrap();
        assert_eq!((b.left_exponent, b.n, b.word_length), (2, 3, 5));
        assert!(b.holds());
        assert_eq!(b.algebra_index, Some(2));

        let t = Bimodule::trivial(Q, 2, 3);
        let b = lemma_word_bound_check(&a, &t, &a.basis_element(1)).unwrap();
        assert_eq!((b.n, b.word_length), (2, 3));
        assert!(b.holds());

        let a3 = c3();
        let m3 = Bimodule::regular(&a3);
        let e1 = a3.basis_element(0);
        let b = lemma_word_bound_check(&a3, &m3, &e1).unwrap();
        assert_eq!((b.left_exponent, b.n, b.word_length), (3, 4, 7));
        assert!(b.holds());
        assert!(b.algebra_index.unwrap() <= 3);
        let gens = [m3.t_matrix(&e1).unwrap(), m3.s_matrix(&e1).unwrap()];
        assert!(all_words_vanish(&gens, 7));
        assert!(all_words_vanish(&gens, b.algebra_index.unwrap()));

        let s = sol2();
        let ms = Bimodule::regular(&s);
        assert!(matches!(
            lemma_word_bound_check(&s, &ms, &s.basis_element(0)),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn premises() {
        let a = c2();
        let m = Bimodule::regular(&a);
        let p = check_engel_premises(&a, &m, &a.basis()).unwrap();
        assert!(p.passed());

        let p = check_engel_premises(&a, &m, &[a.basis_element(1)]).unwrap();
        assert!(p.is_lie_set());
        assert!(!p.generates());
        assert_eq!(p.generated_dim, 1);

        let s = sol2();
        let ms = Bimodule::regular(&s);
        let c = s.lie_set_closure(&s.basis(), DEFAULT_LIE_SET_CAP).unwrap();
        let p = check_engel_premises(&s, &ms, c.members()).unwrap();
        assert!(p.is_lie_set() && p.generates());
        assert_eq!(p.non_nilpotent_witness().unwrap().1, &s.basis_element(0));
    }

    #[test]
    fn flags() {
        let a = c2();
        let m = Bimodule::regular(&a);
        let f = engel_flag(&m, &a.basis()).unwrap();
        assert_eq!(f.dims(), vec![0, 1, 2]);
        assert_eq!(f.levels()[1], Subspace::span(Q, 2, vec![vector::unit(Q, 2, 1)]).unwrap());
        assert_eq!(f.length(), 2);

        let t = Bimodule::trivial(Q, 2, 3);
        assert_eq!(engel_flag(&t, &a.basis()).unwrap().dims(), vec![0, 3]);

        let s = sol2();
        let ms = Bimodule::regular(&s);
        assert_eq!(
            engel_flag(&ms, &s.basis()),
            Err(Error::FlagStalled { level: 0, dim: 0, module_dim: 2 })
        );
    }

    #[test]
    fn flag_levels_are_invariant() {
        for a in [c2(), c3(), h3()] {
            let m = Bimodule::regular(&a);
            let f = engel_flag(&m, &a.basis()).unwrap();
            for w in f.levels().windows(2) {
                for op in m.actions() {
                    assert!(w[1].image_under(op).unwrap().is_subspace_of(&w[0]).unwrap());
                }
            }
            let lcs = a.lower_central_series();
            let last_nonzero = &lcs[lcs.len() - 2];
            assert!(last_nonzero.is_subspace_of(&f.levels()[1]).unwrap());
        }
    }

    #[test]
    fn annihilators() {
        let a = c2();
        assert_eq!(joint_annihilator(&Bimodule::regular(&a)).unwrap(), vector::unit(Q, 2, 1));
        let h = h3();
        assert_eq!(joint_annihilator(&Bimodule::regular(&h)).unwrap(), vector::unit(Q, 3, 2));
        let s = sol2();
        assert_eq!(joint_annihilator(&Bimodule::regular(&s)), Err(Error::NoAnnihilator));
    }

    #[test]
    fn theorem_end_to_end() {
        let a = c2();
        let m = Bimodule::regular(&a);
        let out = theorem2_verify(&a, &m, &a.basis()).unwrap();
        assert_eq!(out.verdict(), Verdict::Pass);
        assert_eq!(out.flag.as_ref().unwrap().as_ref().unwrap().length(), 2);
        assert_eq!(out.annihilator.as_ref().unwrap().as_ref().unwrap(), &vector::unit(Q, 2, 1));
        let r = out.to_report(&a, "engel", "c2");
        assert_eq!(r.verdict, Verdict::Pass);

        let ab = alg(2, &[]);
        let out = theorem2_verify(&ab, &Bimodule::regular(&ab), &ab.basis()).unwrap();
        assert_eq!(out.verdict(), Verdict::Pass);
        assert_eq!(out.flag.unwrap().unwrap().length(), 1);

        let s = sol2();
        let c = s.lie_set_closure(&s.basis(), DEFAULT_LIE_SET_CAP).unwrap();
        let out = theorem2_verify(&s, &Bimodule::regular(&s), c.members()).unwrap();
        assert_eq!(out.verdict(), Verdict::PremisesFailed);
        assert!(out.per_element.is_empty() && out.flag.is_none());
        assert!(out.ensure_consistent().is_ok());
        let r = out.to_report(&s, "engel", "sol2");
        assert_eq!(r.verdict, Verdict::PremisesFailed);
        let w = r.premises[3].witness.as_ref().unwrap();
        assert_eq!(r.premises[3].name, "left_actions_nilpotent");
        assert_eq!(w["element"], "e1");
    }

    #[test]
    fn flag_uses_right_actions() {
        // T = 0 and S nilpotent with S^2 = 0 satisfy the axioms over abelian(1).
        let a = alg(1, &[]);
        let s = Matrix::from_ints(Field::Rationals, &[[0, 1], [0, 0]]);
        let m = Bimodule::new(a.field(), 1, 2, vec![Matrix::zeros(a.field(), 2, 2)], vec![s]).unwrap();
        assert!(m.validate(&a).unwrap().passed());
        let flag = engel_flag(&m, &a.basis()).unwrap();
        assert_eq!(flag.dims(), vec![0, 1, 2]);
        let out = theorem2_verify(&a, &m, &a.basis()).unwrap();
        assert_eq!(out.verdict(), Verdict::Pass);
        assert_eq!(joint_annihilator(&m).unwrap(), vector::from_ints(Field::Rationals, &[1, 0]));
    }

    #[test]
    fn invalid_module_fails_premises() {
        let a = c2();
        let bad = Bimodule::new(
            a.field(),
            2,
            2,
            Bimodule::regular(&a).left_actions().to_vec(),
            vec![Matrix::identity(a.field(), 2), Matrix::zeros(a.field(), 2, 2)],
        )
        .unwrap();
        let out = theorem2_verify(&a, &bad, &a.basis()).unwrap();
        assert!(!out.premises.is_bimodule());
        assert_eq!(out.verdict(), Verdict::PremisesFailed);
    }
}
