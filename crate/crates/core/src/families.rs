//! Deterministic Leibniz algebra families and seeded test corpora.
//!
//! Random structure constants almost never satisfy the Leibniz identity, so
//! randomness only enters through basis changes and through the choice of
//! families, fields and modules.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::LeibnizAlgebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{vector, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `e_1 e_i = e_{i+1}`: nilpotent of class `n`, not Lie for `n >= 2`.
    Cyclic(usize),
    /// `e_1 e_2 = e_3 = -e_2 e_1`.
    Heisenberg3,
    Abelian(usize),
    /// `e_1 e_2 = e_2 = -e_2 e_1`; the non-nilpotent control.
    Sol2,
    DirectSum(Box<Family>, Box<Family>),
    /// The base family written in a seeded random basis.
    BasisChange(Box<Family>, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub field: Field,
}

impl Family {
    pub fn dim(&self) -> usize {
        match self {
            Family::Cyclic(n) | Family::Abelian(n) => *n,
            Family::Heisenberg3 => 3,
            Family::Sol2 => 2,
            Family::DirectSum(a, b) => a.dim() + b.dim(),
            Family::BasisChange(a, _) => a.dim(),
        }
    }

    /// Whether the family is nilpotent by construction.
    pub fn is_nilpotent(&self) -> bool {
        match self {
            Family::Sol2 => false,
            Family::DirectSum(a, b) => a.is_nilpotent() && b.is_nilpotent(),
            Family::BasisChange(a, _) => a.is_nilpotent(),
            _ => true,
        }
    }

    pub fn over(self, field: Field) -> FamilySpec {
        FamilySpec { family: self, field }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic({n})"),
            Family::Heisenberg3 => write!(f, "heisenberg3"),
            Family::Abelian(n) => write!(f, "abelian({n})"),
            Family::Sol2 => write!(f, "sol2"),
            Family::DirectSum(a, b) => write!(f, "direct_sum({a},{b})"),
            Family::BasisChange(a, s) => write!(f, "basis_change({a},{s})"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.family, self.field)
    }
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> SpecParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidSpec(format!("{msg} at offset {} in '{}'", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<u64> {
        let t = self.ident();
        t.parse().map_err(|_| self.err(&format!("expected a number, found '{t}'")))
    }

    fn family(&mut self) -> Result<Family> {
        let name = self.ident();
        match name {
            "cyclic" | "abelian" => {
                self.eat('(')?;
                let n = self.number()? as usize;
                self.eat(')')?;
                if n == 0 {
                    return Err(self.err("dimension must be at least 1"));
                }
                Ok(if name == "cyclic" { Family::Cyclic(n) } else { Family::Abelian(n) })
            }
            "heisenberg3" | "h3" => Ok(Family::Heisenberg3),
            "sol2" => Ok(Family::Sol2),
            "direct_sum" => {
                self.eat('(')?;
                let a = self.family()?;
                self.eat(',')?;
                let b = self.family()?;
                self.eat(')')?;
                Ok(Family::DirectSum(Box::new(a), Box::new(b)))
            }
            "basis_change" => {
                self.eat('(')?;
                let a = self.family()?;
                self.eat(',')?;
                let seed = self.number()?;
                self.eat(')')?;
                Ok(Family::BasisChange(Box::new(a), seed))
            }
            other => Err(self.err(&format!("unknown family '{other}'"))),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = SpecParser { src: s, pos: 0 };
        let f = p.family()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

/// Signed permutation followed by a few transvections with coefficients
/// in `{-1, 1}`. Determinant is `±1`, so the matrix is invertible over every
/// field and rational conjugation keeps integer entries.
pub fn random_unimodular(field: Field, n: usize, rng: &mut impl Rng) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut p = Matrix::zeros(field, n, n);
    for (col, &row) in perm.iter().enumerate() {
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        p.set(row, col, field.int(sign));
    }
    if n >= 2 {
        let steps = rng.random_range(1..=n.min(3));
        for _ in 0..steps {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = if rng.random_bool(0.5) { 1 } else { -1 };
            let mut t = Matrix::identity(field, n);
            t.set(i, j, field.int(c));
            p = &t * &p;
        }
    }
    p
}

/// Rewrites `algebra` in the basis `f_i = P e_i` given by the columns of `p`.
pub fn change_basis(algebra: &LeibnizAlgebra, p: &Matrix) -> Result<LeibnizAlgebra> {
    let inv = p
        .inverse()
        .ok_or_else(|| Error::InvalidSpec("basis change matrix is singular".into()))?;
    let n = algebra.dim();
    let cols = p.columns();
    let tensor = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| inv.apply(&algebra.mul_coords(&cols[i], &cols[j])))
                .collect()
        })
        .collect();
    LeibnizAlgebra::new(algebra.field(), n, tensor)
}

fn direct_sum(a: &LeibnizAlgebra, b: &LeibnizAlgebra) -> Result<LeibnizAlgebra> {
    let f = a.field();
    let na = a.dim();
    let n = na + b.dim();
    let mut tensor = vec![vec![vector::zero(f, n); n]; n];
    for (part, offset) in [(a, 0), (b, na)] {
        for i in 0..part.dim() {
            for j in 0..part.dim() {
                for (k, c) in part.basis_product(i, j).iter().enumerate() {
                    tensor[offset + i][offset + j][offset + k] = c.clone();
                }
            }
        }
    }
    LeibnizAlgebra::new(f, n, tensor)
}

pub fn build(spec: &FamilySpec) -> Result<LeibnizAlgebra> {
    build_family(&spec.family, spec.field)
}

pub fn build_family(family: &Family, field: Field) -> Result<LeibnizAlgebra> {
    let one = field.one();
    let entries = |xs: &[(usize, usize, usize, i64)]| -> Vec<_> {
        xs.iter().map(|&(i, j, k, c)| (i, j, k, field.int(c))).collect()
    };
    match family {
        Family::Cyclic(0) | Family::Abelian(0) => Err(Error::InvalidSpec("dimension must be at least 1".into())),
        Family::Cyclic(n) => {
            let e: Vec<_> = (0..n - 1).map(|i| (0, i, i + 1, one.clone())).collect();
            LeibnizAlgebra::from_entries(field, *n, &e)
        }
        Family::Heisenberg3 => LeibnizAlgebra::from_entries(field, 3, &entries(&[(0, 1, 2, 1), (1, 0, 2, -1)])),
        Family::Abelian(n) => LeibnizAlgebra::from_entries(field, *n, &[]),
        Family::Sol2 => LeibnizAlgebra::from_entries(field, 2, &entries(&[(0, 1, 1, 1), (1, 0, 1, -1)])),
        Family::DirectSum(a, b) => direct_sum(&build_family(a, field)?, &build_family(b, field)?),
        Family::BasisChange(a, seed) => {
            let base = build_family(a, field)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let p = random_unimodular(field, base.dim(), &mut rng);
            change_basis(&base, &p)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Regular,
    /// Regular module over `A / ann(A)`.
    FaithfulQuotient,
    /// `A / N` for a proper nonzero submodule `N` of the regular module.
    ModuleQuotient,
}

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub spec: FamilySpec,
    pub kind: ModuleKind,
    pub algebra: LeibnizAlgebra,
    pub module: Bimodule,
}

impl CorpusItem {
    pub fn label(&self) -> String {
        format!("{} [{:?}]", self.spec, self.kind)
    }
}

fn random_family(rng: &mut ChaCha8Rng, max_dim: usize, allow_change: bool) -> Family {
    loop {
        let roll = rng.random_range(0..100);
        let f = match roll {
            0..=19 => Family::Cyclic(rng.random_range(1..=max_dim)),
            20..=27 if max_dim >= 3 => Family::Heisenberg3,
            28..=35 => Family::Abelian(rng.random_range(1..=max_dim.min(4))),
            36..=45 if max_dim >= 2 => Family::Sol2,
            46..=62 if max_dim >= 2 => {
                let left = rng.random_range(1..max_dim);
                let a = random_family(rng, left, false);
                let b = random_family(rng, max_dim - a.dim(), false);
                Family::DirectSum(Box::new(a), Box::new(b))
            }
            63..=99 if allow_change => {
                let base = random_family(rng, max_dim, false);
                Family::BasisChange(Box::new(base), rng.random())
            }
            _ => continue,
        };
        if f.dim() <= max_dim {
            return f;
        }
    }
}

const CORPUS_FIELDS: [Field; 3] = [Field::Rationals, Field::Prime(5), Field::Prime(7)];

/// `count` validated algebra/bimodule pairs of dimension at most `max_dim`,
/// determined by `seed`.
pub fn fuzz_corpus(seed: u64, count: usize, max_dim: usize) -> Result<Vec<CorpusItem>> {
    if count == 0 || max_dim == 0 {
        return Err(Error::InvalidSpec("count and max_dim must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let family = random_family(&mut rng, max_dim, true);
        let field = CORPUS_FIELDS[rng.random_range(0..CORPUS_FIELDS.len())];
        let spec = family.over(field);
        let algebra = build(&spec)?;
        let regular = Bimodule::regular(&algebra);
        let roll = rng.random_range(0..4);
        let item = match roll {
            0 => {
                let (q, m) = regular.faithful_quotient(&algebra)?;
                if q.dim() == 0 {
                    None
                } else {
                    Some((ModuleKind::FaithfulQuotient, q, m))
                }
            }
            1 => {
                let kernel = regular.joint_kernel();
                let seed_vec = kernel
                    .basis()
                    .first()
                    .cloned()
                    .unwrap_or_else(|| vector::unit(field, algebra.dim(), algebra.dim() - 1));
                let n = regular.submodule_generated(&seed_vec)?;
                if n.carrier().is_full() {
                    None
                } else {
                    let m = regular.quotient_module(&n)?;
                    Some((ModuleKind::ModuleQuotient, algebra.clone(), m))
                }
            }
            _ => None,
        };
        let (kind, algebra, module) = item.unwrap_or((ModuleKind::Regular, algebra, regular));
        out.push(CorpusItem {
            spec,
            kind,
            algebra,
            module,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn spec_parsing_roundtrip() {
        for s in ["cyclic(3)", "heisenberg3", "abelian(1)", "sol2", "direct_sum(cyclic(2),sol2)", "basis_change(direct_sum(abelian(2),heisenberg3),42)"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("direct_sum( cyclic(2) , sol2 )".parse::<Family>().unwrap().dim(), 4);
        assert!("cyclic(0)".parse::<Family>().is_err());
        assert!("cyclic(2".parse::<Family>().is_err());
        assert!("lie(4)".parse::<Family>().is_err());
        assert!("sol2 sol2".parse::<Family>().is_err());
    }

    #[test]
    fn cyclic_two_is_c2() {
        let a = build(&Family::Cyclic(2).over(Q)).unwrap();
        assert!(a.validate().passed());
        assert_eq!(a.basis_product(0, 0), &vector::from_ints(Q, &[0, 1]));
        for (i, j) in [(0, 1), (1, 0), (1, 1)] {
            assert!(vector::is_zero(a.basis_product(i, j)));
        }
    }

    #[test]
    fn abelian_one() {
        let a = build(&Family::Abelian(1).over(Q)).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(vector::is_zero(a.basis_product(0, 0)));
    }

    #[test]
    fn cyclic_series_and_generation() {
        for n in 1..=6 {
            let a = build(&Family::Cyclic(n).over(Q)).unwrap();
            assert_eq!(a.lower_central_series().len(), n + 1);
            assert_eq!(a.is_nilpotent_algebra().class, Some(n));
            assert!(a.subalgebra_generated(&[a.basis_element(0)]).unwrap().is_full());
            if n >= 2 {
                // e1 e1 = e2 ≠ 0, so the product is not skew.
                assert!(!vector::is_zero(a.basis_product(0, 0)));
            }
        }
    }

    #[test]
    fn basis_change_preserves_class() {
        let base = build(&Family::Cyclic(3).over(Q)).unwrap();
        let changed = build(&Family::BasisChange(Box::new(Family::Cyclic(3)), 42).over(Q)).unwrap();
        assert!(changed.validate().passed());
        assert_eq!(changed.is_nilpotent_algebra(), base.is_nilpotent_algebra());
        assert_eq!(changed.is_nilpotent_algebra().class, Some(3));
    }

    #[test]
    fn unimodular_matrices_invert() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..7 {
            for f in CORPUS_FIELDS {
                assert!(random_unimodular(f, n, &mut rng).inverse().is_some());
            }
        }
    }

    #[test]
    fn corpus_determinism() {
        let one = fuzz_corpus(1, 1, 2).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].algebra.validate().passed());
        let a = fuzz_corpus(9, 10, 4).unwrap();
        let b = fuzz_corpus(9, 10, 4).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.spec, y.spec);
            assert_eq!(x.algebra, y.algebra);
            assert_eq!(x.module, y.module);
        }
    }

    #[test]
    fn corpus_contents() {
        let corpus = fuzz_corpus(7, 50, 6).unwrap();
        assert_eq!(corpus.len(), 50);
        let mut controls = 0;
        for item in &corpus {
            assert!(item.algebra.dim() <= 6);
            assert!(item.algebra.validate().passed());
            assert!(item.module.validate(&item.algebra).unwrap().passed(), "{}", item.label());
            if !item.algebra.is_nilpotent_algebra().nilpotent {
                controls += 1;
            }
        }
        assert!(controls >= 1);
        assert!(fuzz_corpus(1, 0, 3).is_err());
    }
}
