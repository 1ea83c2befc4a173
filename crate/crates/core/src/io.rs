//! JSON file formats. Indices are 1-based in files and 0-based in memory.
//! Coefficients are JSON integers or `"num/den"` strings; floats are
//! rejected.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{Element, LeibnizAlgebra};
use crate::bimodule::Bimodule;
use crate::corollaries::{LinearSelfMap, MapKind};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

fn field_from_value(v: &Value) -> Result<Field> {
    let repr: FieldRepr =
        serde_json::from_value(v.clone()).map_err(|_| Error::Parse(format!("bad field descriptor {v}")))?;
    match repr {
        FieldRepr::Name(s) if s == "Q" => Ok(Field::Rationals),
        FieldRepr::Name(s) => Err(Error::InvalidField(format!("expected \"Q\" or {{\"Fp\": p}}, found \"{s}\""))),
        FieldRepr::Prime { fp } => Field::prime(fp),
    }
}

pub fn field_to_value(field: Field) -> Value {
    match field {
        Field::Rationals => json!("Q"),
        Field::Prime(p) => json!({ "Fp": p }),
    }
}

pub fn parse_coeff(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Scalar::parse(field, &n.to_string()),
        Value::Number(n) => Err(Error::Parse(format!("coefficient {n} is not an integer; use a \"num/den\" string"))),
        Value::String(s) => Scalar::parse(field, s),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

/// Integers stay JSON numbers when they fit in `i64`; everything else is a string.
pub fn coeff_to_value(c: &Scalar) -> Value {
    match c.to_i64() {
        Some(n) => json!(n),
        None => json!(c.to_string()),
    }
}

fn parse_vector(field: Field, dim: usize, v: &Value, what: &str) -> Result<Vector> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array of coefficients")))?;
    if items.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: items.len(),
        });
    }
    items.iter().map(|c| parse_coeff(field, c)).collect()
}

fn parse_matrix(field: Field, rows: usize, cols: usize, v: &Value, what: &str) -> Result<Matrix> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array of rows")))?;
    if items.len() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: items.len(),
        });
    }
    let rows = items
        .iter()
        .map(|r| parse_vector(field, cols, r, what))
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(field, 0, cols));
    }
    Matrix::from_rows(field, rows)
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array(
        m.row_vectors()
            .iter()
            .map(|r| Value::Array(r.iter().map(coeff_to_value).collect()))
            .collect(),
    )
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    field: Value,
    dim: usize,
    #[serde(default)]
    names: Option<Vec<String>>,
    #[serde(default)]
    products: Vec<(usize, usize, usize, Value)>,
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<LeibnizAlgebra> {
    parse_algebra_with(text, true)
}

/// Parses an algebra file without checking the Leibniz identity.
pub fn parse_algebra_unvalidated(text: &str) -> Result<LeibnizAlgebra> {
    parse_algebra_with(text, false)
}

fn parse_algebra_with(text: &str, validate: bool) -> Result<LeibnizAlgebra> {
    let file: AlgebraFile =
        serde_json::from_value(parse_json(text)?).map_err(|e| Error::Parse(format!("algebra file: {e}")))?;
    let field = field_from_value(&file.field)?;
    let n = file.dim;
    let mut seen = BTreeMap::new();
    let mut entries = Vec::with_capacity(file.products.len());
    for (i, j, k, c) in &file.products {
        for idx in [i, j, k] {
            if *idx < 1 || *idx > n {
                return Err(Error::Parse(format!("index {idx} in [{i}, {j}, {k}] outside 1..={n}")));
            }
        }
        if seen.insert((*i, *j, *k), ()).is_some() {
            return Err(Error::Parse(format!("duplicate product entry [{i}, {j}, {k}]")));
        }
        entries.push((i - 1, j - 1, k - 1, parse_coeff(field, c)?));
    }
    let tensor = LeibnizAlgebra::tensor_from_entries(field, n, &entries)?;
    let algebra = if validate {
        LeibnizAlgebra::new(field, n, tensor)?
    } else {
        LeibnizAlgebra::new_unvalidated(field, n, tensor)?
    };
    match file.names {
        Some(names) => algebra.with_names(names),
        None => Ok(algebra),
    }
}

/// Structure constants as `[i, j, k, c]` with 1-based indices, sorted.
pub fn algebra_to_value(algebra: &LeibnizAlgebra) -> Value {
    let n = algebra.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in algebra.basis_product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    products.push(json!([i + 1, j + 1, k + 1, coeff_to_value(c)]));
                }
            }
        }
    }
    let mut obj = serde_json::Map::new();
    obj.insert("field".into(), field_to_value(algebra.field()));
    obj.insert("dim".into(), json!(n));
    let default = (1..=n).all(|i| algebra.names()[i - 1] == format!("e{i}"));
    if !default {
        obj.insert("names".into(), json!(algebra.names()));
    }
    obj.insert("products".into(), Value::Array(products));
    Value::Object(obj)
}

/// Pretty form with keys in schema order and one product entry per line.
pub fn algebra_to_json(algebra: &LeibnizAlgebra) -> String {
    let v = algebra_to_value(algebra);
    let compact = |x: &Value| serde_json::to_string(x).expect("values serialize");
    let mut s = String::from("{\n");
    s += &format!("  \"field\": {},\n", compact(&v["field"]));
    s += &format!("  \"dim\": {},\n", v["dim"]);
    if let Some(names) = v.get("names") {
        s += &format!("  \"names\": {},\n", compact(names));
    }
    let products = v["products"].as_array().expect("products array");
    if products.is_empty() {
        s += "  \"products\": []\n";
    } else {
        s += "  \"products\": [\n";
        let lines: Vec<String> = products
            .iter()
            .map(|p| {
                let parts: Vec<String> = p.as_array().expect("entry").iter().map(compact).collect();
                format!("    [{}]", parts.join(", "))
            })
            .collect();
        s += &lines.join(",\n");
        s += "\n  ]\n";
    }
    s += "}\n";
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BimoduleFile {
    #[serde(default)]
    field: Option<Value>,
    #[serde(default)]
    algebra_dim: Option<usize>,
    module_dim: usize,
    left: Vec<Value>,
    right: Vec<Value>,
}

/// `{"module_dim": m, "left": [T_{e_1}, ...], "right": [S_{e_1}, ...]}`
/// with each matrix given as rows. Optional `field` and `algebra_dim` must
/// agree with the algebra.
pub fn parse_bimodule(algebra: &LeibnizAlgebra, text: &str) -> Result<Bimodule> {
    let file: BimoduleFile =
        serde_json::from_value(parse_json(text)?).map_err(|e| Error::Parse(format!("bimodule file: {e}")))?;
    let field = algebra.field();
    if let Some(f) = &file.field {
        let declared = field_from_value(f)?;
        if declared != field {
            return Err(Error::fields(field, declared));
        }
    }
    let n = algebra.dim();
    if let Some(d) = file.algebra_dim {
        if d != n {
            return Err(Error::DimensionMismatch { expected: n, found: d });
        }
    }
    let m = file.module_dim;
    let read = |ms: &[Value], side: &str| -> Result<Vec<Matrix>> {
        if ms.len() != n {
            return Err(Error::Parse(format!("{side}: expected {n} matrices, found {}", ms.len())));
        }
        ms.iter().map(|v| parse_matrix(field, m, m, v, side)).collect()
    };
    let left = read(&file.left, "left")?;
    let right = read(&file.right, "right")?;
    Bimodule::new(field, n, m, left, right)
}

pub fn bimodule_to_value(m: &Bimodule) -> Value {
    json!({
        "field": field_to_value(m.field()),
        "algebra_dim": m.algebra_dim(),
        "module_dim": m.module_dim(),
        "left": m.left_actions().iter().map(matrix_to_value).collect::<Vec<_>>(),
        "right": m.right_actions().iter().map(matrix_to_value).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    #[serde(default = "no_kind")]
    kind: MapKind,
    matrix: Value,
}

fn no_kind() -> MapKind {
    MapKind::None
}

/// `{"kind": "automorphism" | "derivation" | "none", "matrix": rows}`;
/// column `j` of the matrix is the image of `e_j`.
pub fn parse_map(algebra: &LeibnizAlgebra, text: &str) -> Result<LinearSelfMap> {
    let file: MapFile =
        serde_json::from_value(parse_json(text)?).map_err(|e| Error::Parse(format!("map file: {e}")))?;
    let n = algebra.dim();
    let matrix = parse_matrix(algebra.field(), n, n, &file.matrix, "matrix")?;
    Ok(LinearSelfMap {
        matrix,
        claimed_kind: file.kind,
    })
}

pub fn map_to_value(map: &LinearSelfMap) -> Value {
    json!({ "kind": map.claimed_kind, "matrix": matrix_to_value(&map.matrix) })
}

/// An array of coordinate vectors.
pub fn parse_elements(algebra: &LeibnizAlgebra, text: &str) -> Result<Vec<Element>> {
    elements_from_value(algebra, &parse_json(text)?)
}

fn elements_from_value(algebra: &LeibnizAlgebra, v: &Value) -> Result<Vec<Element>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of coordinate vectors".into()))?;
    items
        .iter()
        .map(|x| algebra.element(parse_vector(algebra.field(), algebra.dim(), x, "element")?))
        .collect()
}

pub fn elements_to_value(xs: &[Element]) -> Value {
    Value::Array(
        xs.iter()
            .map(|x| Value::Array(x.coords().iter().map(coeff_to_value).collect()))
            .collect(),
    )
}

/// An array of subspaces, each an array of spanning coordinate vectors.
pub fn parse_ideals(algebra: &LeibnizAlgebra, text: &str) -> Result<Vec<Subspace>> {
    let v = parse_json(text)?;
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of spanning sets".into()))?;
    items
        .iter()
        .map(|s| {
            let vecs = elements_from_value(algebra, s)?
                .into_iter()
                .map(Element::into_coords)
                .collect();
            Subspace::span(algebra.field(), algebra.dim(), vecs)
        })
        .collect()
}

pub fn subspaces_to_value(spaces: &[Subspace]) -> Value {
    Value::Array(
        spaces
            .iter()
            .map(|s| {
                Value::Array(
                    s.basis()
                        .iter()
                        .map(|b| Value::Array(b.iter().map(coeff_to_value).collect()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Comma-separated coordinates such as `1,0,-1/2`.
pub fn parse_coords(algebra: &LeibnizAlgebra, text: &str) -> Result<Element> {
    let coords = text
        .split(',')
        .map(|t| Scalar::parse(algebra.field(), t))
        .collect::<Result<Vec<_>>>()?;
    algebra.element(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};

    const C2: &str = r#"{"field": "Q", "dim": 2, "products": [[1, 1, 2, 1]]}"#;

    #[test]
    fn parses_c2() {
        let a = parse_algebra(C2).unwrap();
        assert_eq!(a, build(&Family::Cyclic(2).over(Field::Rationals)).unwrap());
    }

    #[test]
    fn rejects_bad_files() {
        let bad = [
            r#"{"field": "Q", "dim": 2, "products": [[1, 1, 3, 1]]}"#,
            r#"{"field": "Q", "dim": 2, "products": [[0, 1, 2, 1]]}"#,
            r#"{"field": "Q", "dim": 2, "products": [[1, 1, 2, 1], [1, 1, 2, 2]]}"#,
            r#"{"field": "Q", "dim": 2, "products": [[1, 1, 2, 0.5]]}"#,
            r#"{"field": "R", "dim": 2, "products": []}"#,
            r#"{"field": {"Fp": 6}, "dim": 2, "products": []}"#,
            r#"{"field": {"Fp": 5}, "dim": 2, "products": [[1, 1, 2, "1/5"]]}"#,
            r#"{"field": "Q", "dim": 2, "products": [], "extra": 1}"#,
            r#"{"field": "Q", "dim": 2, "names": ["x"], "products": []}"#,
            r#"{"field": "Q", "dim": 2"#,
        ];
        for s in bad {
            assert!(parse_algebra(s).is_err(), "{s}");
        }
        // Parses but fails the Leibniz identity.
        let broken = r#"{"field": "Q", "dim": 2, "products": [[1, 2, 1, 1], [2, 1, 2, 1]]}"#;
        assert!(matches!(parse_algebra(broken), Err(Error::NotLeibniz)));
        let raw = parse_algebra_unvalidated(broken).unwrap();
        assert!(!raw.is_validated() && !raw.validate().passed());
    }

    #[test]
    fn rational_and_prime_coefficients() {
        let a = parse_algebra(r#"{"field": {"Fp": 7}, "dim": 2, "products": [[1, 1, 2, "3/2"]]}"#).unwrap();
        assert_eq!(a.basis_product(0, 0)[1], Scalar::from_i64(Field::Prime(7), 5));
        let q = parse_algebra(r#"{"field": "Q", "dim": 2, "products": [[1, 1, 2, "-3/2"]]}"#).unwrap();
        let v = algebra_to_value(&q);
        assert_eq!(v["products"][0][3], "-3/2");
    }

    #[test]
    fn algebra_roundtrip() {
        for s in ["basis_change(direct_sum(cyclic(3),heisenberg3),5)", "sol2"] {
            for f in [Field::Rationals, Field::Prime(5)] {
                let a = build(&s.parse::<Family>().unwrap().over(f)).unwrap();
                let text = algebra_to_json(&a);
                let back = parse_algebra(&text).unwrap();
                assert_eq!(back, a);
                assert_eq!(algebra_to_json(&back), text);
            }
        }
        let named = parse_algebra(r#"{"field": "Q", "dim": 1, "names": ["x"], "products": []}"#).unwrap();
        assert_eq!(algebra_to_value(&named)["names"], json!(["x"]));
    }

    #[test]
    fn bimodule_roundtrip() {
        let a = parse_algebra(C2).unwrap();
        let m = Bimodule::regular(&a);
        let text = bimodule_to_value(&m).to_string();
        assert_eq!(parse_bimodule(&a, &text).unwrap(), m);
        let wrong = r#"{"module_dim": 1, "left": [[[0]]], "right": [[[0]]]}"#;
        assert!(parse_bimodule(&a, wrong).is_err());
        let trivial = r#"{"module_dim": 1, "left": [[[0]], [[0]]], "right": [[[0]], [[0]]]}"#;
        assert_eq!(parse_bimodule(&a, trivial).unwrap().module_dim(), 1);
    }

    #[test]
    fn maps_elements_ideals() {
        let a = parse_algebra(C2).unwrap();
        let map = parse_map(&a, r#"{"kind": "derivation", "matrix": [[1, 0], [0, 2]]}"#).unwrap();
        assert_eq!(map.claimed_kind, MapKind::Derivation);
        assert_eq!(map.matrix, Matrix::diagonal(Field::Rationals, &[1, 2]));
        assert_eq!(parse_map(&a, &map_to_value(&map).to_string()).unwrap(), map);

        let xs = parse_elements(&a, "[[1, 0], [0, \"1/2\"]]").unwrap();
        assert_eq!(xs.len(), 2);
        assert_eq!(parse_elements(&a, &elements_to_value(&xs).to_string()).unwrap(), xs);
        assert!(parse_elements(&a, "[[1, 0, 0]]").is_err());

        let ideals = parse_ideals(&a, "[[[0, 1]], [[1, 0], [0, 1]]]").unwrap();
        assert_eq!(ideals[0].dim(), 1);
        assert!(ideals[1].is_full());
        assert_eq!(parse_ideals(&a, &subspaces_to_value(&ideals).to_string()).unwrap(), ideals);

        assert_eq!(parse_coords(&a, "1, -1/3").unwrap().coords()[1], Scalar::parse(Field::Rationals, "-1/3").unwrap());
        assert!(parse_coords(&a, "1").is_err());
    }
}
