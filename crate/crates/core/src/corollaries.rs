//! Checkers for the consequences of the Engel-type theorem: abstract
//! nilpotency from a Lie set, fixed-point-free automorphisms of finite
//! order, non-singular derivations in characteristic zero, and sums of
//! nilpotent ideals.
//!
//! Each checker evaluates the hypotheses on concrete data and, only when all
//! of them hold, checks the conclusion. A failed conclusion after passing
//! hypotheses is reported as a theorem violation.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{Element, Ideal, LeibnizAlgebra, NilpotencyClass};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::linalg::{is_nilpotent_matrix, vector, Matrix, Subspace};
use crate::report::{coords_json, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Derivation,
    Automorphism,
    None,
}

/// A linear map `A -> A`; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSelfMap {
    pub matrix: Matrix,
    pub claimed_kind: MapKind,
}

/// Why a map fails to be a derivation or an automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapWitness {
    /// Defining relation fails on the 0-based basis pair.
    Pair { i: usize, j: usize },
    NotInvertible,
}

fn check_map(algebra: &LeibnizAlgebra, m: &Matrix) -> Result<()> {
    if m.field() != algebra.field() {
        return Err(Error::fields(algebra.field(), m.field()));
    }
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != algebra.dim() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dim(),
            found: m.rows(),
        });
    }
    Ok(())
}

/// `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` on every basis pair. Returns the
/// first failing pair.
pub fn is_derivation(algebra: &LeibnizAlgebra, d: &Matrix) -> Result<Option<MapWitness>> {
    check_map(algebra, d)?;
    let n = algebra.dim();
    let f = algebra.field();
    let images = d.columns();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.apply(algebra.basis_product(i, j));
            let rhs = vector::add(
                &algebra.mul_coords(&images[i], &vector::unit(f, n, j)),
                &algebra.mul_coords(&vector::unit(f, n, i), &images[j]),
            );
            if lhs != rhs {
                return Ok(Some(MapWitness::Pair { i, j }));
            }
        }
    }
    Ok(None)
}

/// `T` invertible and `T(e_i e_j) = T(e_i) T(e_j)` on every basis pair.
pub fn is_automorphism(algebra: &LeibnizAlgebra, t: &Matrix) -> Result<Option<MapWitness>> {
    check_map(algebra, t)?;
    if t.inverse().is_none() {
        return Ok(Some(MapWitness::NotInvertible));
    }
    let n = algebra.dim();
    let images = t.columns();
    for i in 0..n {
        for j in 0..n {
            if t.apply(algebra.basis_product(i, j)) != algebra.mul_coords(&images[i], &images[j]) {
                return Ok(Some(MapWitness::Pair { i, j }));
            }
        }
    }
    Ok(None)
}

fn witness_json(w: &Option<MapWitness>) -> Option<serde_json::Value> {
    w.as_ref().map(|w| match w {
        MapWitness::Pair { i, j } => json!({ "pair": [i + 1, j + 1] }),
        MapWitness::NotInvertible => json!({ "not_invertible": true }),
    })
}

fn nilpotency_conclusion(algebra: &LeibnizAlgebra, report: &mut Report) {
    let series = algebra.lower_central_series();
    let verdict = algebra.is_nilpotent_algebra();
    report.conclusion(
        "algebra_nilpotent",
        verdict.nilpotent,
        Some(json!({
            "class": verdict.class,
            "series_dims": series.iter().map(Subspace::dim).collect::<Vec<_>>(),
        })),
    );
}

/// Lie set `C` generating `A` with every `L_c` nilpotent implies `A`
/// nilpotent.
pub fn corollary3_check(algebra: &LeibnizAlgebra, lie_set: &[Element]) -> Result<Report> {
    let mut r = Report::new("corollary 3", "");
    let violation = algebra.is_lie_set(lie_set)?;
    r.premise(
        "lie_set",
        violation.is_none(),
        violation.map(|v| json!({ "left": v.left + 1, "right": v.right + 1, "product": algebra.format_element(&v.product) })),
    );
    let generated = algebra.subalgebra_generated(lie_set)?;
    r.premise(
        "generates_algebra",
        generated.is_full(),
        (!generated.is_full()).then(|| json!({ "generated_dim": generated.dim(), "algebra_dim": algebra.dim() })),
    );
    let mut witness = None;
    for (i, c) in lie_set.iter().enumerate() {
        if !is_nilpotent_matrix(&algebra.left_mult_matrix(c)?)?.nilpotent {
            witness = Some(json!({ "member": i + 1, "element": algebra.format_element(c), "coords": coords_json(c.coords()) }));
            break;
        }
    }
    r.premise("left_multiplications_nilpotent", witness.is_none(), witness);
    if r.premises_pass() {
        nilpotency_conclusion(algebra, &mut r);
    }
    Ok(r)
}

/// Automorphism of exact order `p` without nonzero fixed points implies `A`
/// nilpotent. A composite `p` is noted, not rejected.
pub fn corollary4_check(algebra: &LeibnizAlgebra, t: &Matrix, p: u32) -> Result<Report> {
    if p < 2 {
        return Err(Error::InvalidExponent(p));
    }
    check_map(algebra, t)?;
    let mut r = Report::new("corollary 4", "");
    if !is_prime(p as u64) {
        r.note(format!("NotPrime: order {p} is composite; exact order is still checked"));
    }
    let ch = algebra.field().characteristic();
    if ch != 0 && (p as u64).is_multiple_of(ch) {
        r.note(format!("order {p} is divisible by the characteristic {ch}"));
    }
    let w = is_automorphism(algebra, t)?;
    r.premise("automorphism", w.is_none(), witness_json(&w));

    let n = algebra.dim();
    let id = Matrix::identity(algebra.field(), n);
    let mut power = id.clone();
    let mut early = None;
    for q in 1..=p {
        power = &power * t;
        if q < p && power == id {
            early = Some(q);
            break;
        }
    }
    let exact = early.is_none() && power == id;
    let order_witness = match early {
        Some(q) => Some(json!({ "identity_at": q })),
        None if !exact => Some(json!({ "power_p_is_identity": false })),
        None => None,
    };
    r.premise("exact_order", exact, order_witness);

    let fixed = (t - &id).kernel();
    r.premise(
        "no_fixed_points",
        fixed.is_zero(),
        fixed.basis().first().map(|v| json!({ "fixed_vector": coords_json(v) })),
    );
    if r.premises_pass() {
        nilpotency_conclusion(algebra, &mut r);
    }
    Ok(r)
}

/// Non-singular derivation in characteristic zero implies `A` nilpotent.
pub fn corollary5_check(algebra: &LeibnizAlgebra, d: &Matrix) -> Result<Report> {
    check_map(algebra, d)?;
    let mut r = Report::new("corollary 5", "");
    let ch = algebra.field().characteristic();
    r.premise(
        "characteristic_zero",
        ch == 0,
        (ch != 0).then(|| json!({ "error": Error::CharacteristicNotZero(ch).to_string() })),
    );
    let w = is_derivation(algebra, d)?;
    r.premise("derivation", w.is_none(), witness_json(&w));
    let rank = d.rank();
    r.premise(
        "nonsingular",
        rank == algebra.dim(),
        (rank < algebra.dim()).then(|| json!({ "rank": rank })),
    );
    if r.premises_pass() {
        nilpotency_conclusion(algebra, &mut r);
    }
    Ok(r)
}

/// A nilpotent ideal together with its class under ambient products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentIdeal {
    pub ideal: Ideal,
    pub class: usize,
}

impl NilpotentIdeal {
    pub fn carrier(&self) -> &Subspace {
        self.ideal.carrier()
    }
}

fn nilpotent_ideal(algebra: &LeibnizAlgebra, s: &Subspace, which: usize) -> Result<NilpotentIdeal> {
    if !algebra.is_ideal(s)? {
        return Err(Error::NotAnIdeal { which });
    }
    match algebra.subspace_nilpotency(s) {
        NilpotencyClass { nilpotent: true, class: Some(class) } => Ok(NilpotentIdeal {
            ideal: Ideal::new(algebra, s.clone())?,
            class,
        }),
        _ => Err(Error::NotNilpotentIdeal { which }),
    }
}

/// `I1 + I2` for nilpotent ideals `I1`, `I2`. Errors name the offending
/// input as 1 or 2.
pub fn sum_of_nilpotent_ideals(algebra: &LeibnizAlgebra, i1: &Subspace, i2: &Subspace) -> Result<NilpotentIdeal> {
    nilpotent_ideal(algebra, i1, 1)?;
    nilpotent_ideal(algebra, i2, 2)?;
    let sum = i1.sum(i2)?;
    nilpotent_ideal(algebra, &sum, 0).map_err(|e| {
        Error::TheoremViolation(format!("sum of nilpotent ideals fails: {e}"))
    })
}

pub fn corollary6_check(algebra: &LeibnizAlgebra, i1: &Subspace, i2: &Subspace) -> Result<Report> {
    let mut r = Report::new("corollary 6", "");
    for (k, s) in [(1, i1), (2, i2)] {
        let ideal = algebra.is_ideal(s)?;
        r.premise(format!("I{k}_is_ideal"), ideal, None);
        let nil = algebra.subspace_nilpotency(s);
        r.premise(format!("I{k}_nilpotent"), nil.nilpotent, None);
    }
    if r.premises_pass() {
        let sum = i1.sum(i2)?;
        r.conclusion("sum_is_ideal", algebra.is_ideal(&sum)?, Some(json!({ "dim": sum.dim() })));
        let nil = algebra.subspace_nilpotency(&sum);
        r.conclusion("sum_nilpotent", nil.nilpotent, Some(json!({ "class": nil.class })));
    }
    Ok(r)
}

/// Folds ideal sums over `family`. Relative to the family only: the result
/// contains every member but need not be the largest nilpotent ideal.
/// Offenders are reported with their 1-based position.
pub fn nilradical_from_family(algebra: &LeibnizAlgebra, family: &[Subspace]) -> Result<NilpotentIdeal> {
    let mut acc = nilpotent_ideal(algebra, &Subspace::zero(algebra.field(), algebra.dim()), 0)?;
    for (k, s) in family.iter().enumerate() {
        nilpotent_ideal(algebra, s, k + 1)?;
        acc = sum_of_nilpotent_ideals(algebra, acc.carrier(), s).map_err(|e| match e {
            Error::NotAnIdeal { .. } => Error::NotAnIdeal { which: k + 1 },
            Error::NotNilpotentIdeal { .. } => Error::NotNilpotentIdeal { which: k + 1 },
            other => other,
        })?;
    }
    Ok(acc)
}
