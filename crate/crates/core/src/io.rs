//! JSON fixture files for algebras, Hopf superalgebras, Lie superalgebras
//! and Harish-Chandra pairs.
//!
//! Every file is an object with a `kind` (`algebra`, `hopf`, `lie`, `pair`)
//! and either a `constructor` naming a built-in family or the explicit
//! tables. Scalars are JSON integers or strings such as `"-3/4"`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{
    dual_super_numbers, grassmann_named, tensor, truncated_poly, AlgebraRef, Parity, SuperAlgebra, SuperVectorSpace,
};
use crate::error::{Error, Result};
use crate::hcp::{entry_var_names, gl_pair, pseudoabelian_example, GenericGenerator, HarishChandraPair, MatrixGroupModel, Representation};
use crate::hopf::{cyclic_functions, cyclic_group_algebra, tensor_hopf, HopfSuperAlgebra};
use crate::hyp::{
    additive_super_truncation, additive_truncation, grassmann_truncation, multiplicative_truncation, tensor_truncation,
    CanonicalBasis, TruncatedHopf,
};
use crate::lie::{gl_super, LieSuperAlgebra};
use crate::linalg::{self, Vector};
use crate::poly::{Mat, Poly};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Hopf,
    Lie,
    Pair,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Hopf => "hopf",
            Kind::Lie => "lie",
            Kind::Pair => "pair",
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        match s {
            "algebra" | "alg" => Some(Kind::Algebra),
            "hopf" => Some(Kind::Hopf),
            "lie" => Some(Kind::Lie),
            "pair" => Some(Kind::Pair),
            _ => None,
        }
    }
}

/// A Hopf superalgebra together with the data needed to read it as a
/// truncated hyperalgebra source.
#[derive(Clone, Debug)]
pub struct HopfFixture {
    pub hopf: HopfSuperAlgebra,
    pub limit: Option<usize>,
    pub canonical: Option<CanonicalBasis>,
}

impl HopfFixture {
    pub fn truncated(&self) -> Result<TruncatedHopf> {
        TruncatedHopf::new(self.hopf.clone(), self.limit, self.canonical.clone())
    }

    fn from_truncated(t: TruncatedHopf) -> HopfFixture {
        HopfFixture { hopf: t.hopf().clone(), limit: t.limit(), canonical: t.canonical().cloned() }
    }
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Algebra(AlgebraRef),
    Hopf(HopfFixture),
    Lie(LieSuperAlgebra),
    Pair(HarishChandraPair),
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be an object")))
}

fn get<'a>(o: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| bad(format!("{what} is missing '{key}'")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what} must be a string")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?.iter().map(|x| string(x, what).map(str::to_string)).collect()
}

pub fn scalar_from_json(v: &Value, field: Field) -> Result<Scalar> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.int(i)),
            None => Err(bad(format!("scalar {n} must be an integer or a string 'a/b'"))),
        },
        Value::String(s) => field.parse_scalar(s),
        _ => Err(bad(format!("bad scalar {v}"))),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    let text = s.to_string();
    match text.parse::<i64>() {
        Ok(i) => json!(i),
        Err(_) => json!(text),
    }
}

fn parity_of(v: &Value) -> Result<Parity> {
    match v {
        Value::Number(n) if n.as_u64() == Some(0) => Ok(Parity::Even),
        Value::Number(n) if n.as_u64() == Some(1) => Ok(Parity::Odd),
        Value::String(s) if s == "even" => Ok(Parity::Even),
        Value::String(s) if s == "odd" => Ok(Parity::Odd),
        _ => Err(bad(format!("parity must be 0, 1, \"even\" or \"odd\", got {v}"))),
    }
}

fn field_of(o: &Map<String, Value>, over: Option<Field>) -> Result<Field> {
    match (over, o.get("field")) {
        (Some(f), _) => Ok(f),
        (None, Some(v)) => Field::parse(string(v, "field")?),
        (None, None) => Ok(Field::Rational),
    }
}

fn index(labels: &[String], label: &str, what: &str) -> Result<usize> {
    labels.iter().position(|l| l == label).ok_or_else(|| bad(format!("unknown {what} label '{label}'")))
}

/// `{label: coefficient}` as a dense vector.
fn sparse(v: &Value, labels: &[String], field: Field, what: &str) -> Result<Vector> {
    let mut out = linalg::zero_vec(field, labels.len());
    for (k, c) in obj(v, what)? {
        let i = index(labels, k, what)?;
        out[i] += &scalar_from_json(c, field)?;
    }
    Ok(out)
}

fn sparse_to_json(labels: &[String], v: &[Scalar]) -> Value {
    let mut m = Map::new();
    for (l, c) in labels.iter().zip(v) {
        if !c.is_zero() {
            m.insert(l.clone(), scalar_to_json(c));
        }
    }
    Value::Object(m)
}

fn space_from_json(v: &Value) -> Result<SuperVectorSpace> {
    let mut labels = Vec::new();
    let mut parities = Vec::new();
    for b in array(v, "basis")? {
        let o = obj(b, "basis entry")?;
        labels.push(string(get(o, "label", "basis entry")?, "label")?.to_string());
        parities.push(parity_of(get(o, "parity", "basis entry")?)?);
    }
    SuperVectorSpace::new(labels, parities)
}

fn space_to_json(s: &SuperVectorSpace) -> Value {
    Value::Array(
        s.labels()
            .iter()
            .zip(s.parities())
            .map(|(l, p)| json!({"label": l, "parity": p.bit()}))
            .collect(),
    )
}

/// Reads the `kind` of a file, falling back to the `name.kind.json` suffix.
pub fn kind_of(v: &Value, path: Option<&str>) -> Result<Kind> {
    if let Some(k) = v.get("kind") {
        let s = string(k, "kind")?;
        return Kind::parse(s).ok_or_else(|| bad(format!("unknown kind '{s}'")));
    }
    path.and_then(|p| p.strip_suffix(".json"))
        .and_then(|p| p.rsplit('.').next())
        .and_then(Kind::parse)
        .ok_or_else(|| bad("file has no 'kind'"))
}

pub fn load(v: &Value, path: Option<&str>, field: Option<Field>) -> Result<Fixture> {
    Ok(match kind_of(v, path)? {
        Kind::Algebra => Fixture::Algebra(algebra_from_json(v, field)?),
        Kind::Hopf => Fixture::Hopf(hopf_from_json(v, field)?),
        Kind::Lie => Fixture::Lie(lie_from_json(v, field)?),
        Kind::Pair => Fixture::Pair(pair_from_json(v, field)?),
    })
}

pub fn load_file(path: &str, field: Option<Field>) -> Result<Fixture> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    load(&v, Some(path), field)
}

fn constructor(o: &Map<String, Value>) -> Result<Option<&str>> {
    o.get("constructor").map(|c| string(c, "constructor")).transpose()
}

fn name_list(o: &Map<String, Value>, key: &str) -> Result<Vec<String>> {
    o.get(key).map(|v| strings(v, key)).transpose().map(Option::unwrap_or_default)
}

pub fn algebra_from_json(v: &Value, over: Option<Field>) -> Result<AlgebraRef> {
    let o = obj(v, "algebra")?;
    let field = field_of(o, over)?;
    if let Some(c) = constructor(o)? {
        return match c {
            "grassmann" => {
                let names = name_list(o, "generators")?;
                grassmann_named(field, &names.iter().map(String::as_str).collect::<Vec<_>>())
            }
            "truncated_poly" => {
                let even = name_list(o, "even")?;
                let odd = name_list(o, "odd")?;
                let degree = usize_of(get(o, "degree", "truncated_poly")?, "degree")?;
                let e: Vec<&str> = even.iter().map(String::as_str).collect();
                let d: Vec<&str> = odd.iter().map(String::as_str).collect();
                Ok(truncated_poly(field, &e, &d, degree)?.0)
            }
            "dual_super_numbers" => {
                let base = match o.get("base") {
                    Some(b) => algebra_from_json(b, Some(field))?,
                    None => grassmann_named(field, &[])?,
                };
                let e0 = o.get("eps0").map(|x| string(x, "eps0")).transpose()?.unwrap_or("e0");
                let e1 = o.get("eps1").map(|x| string(x, "eps1")).transpose()?.unwrap_or("e1");
                Ok(dual_super_numbers(&base, e0, e1)?.algebra)
            }
            "tensor" => {
                let fs = array(get(o, "factors", "tensor")?, "factors")?;
                let mut it = fs.iter();
                let first = it.next().ok_or_else(|| bad("tensor needs factors"))?;
                let mut acc = algebra_from_json(first, Some(field))?;
                for f in it {
                    acc = tensor(&acc, &algebra_from_json(f, Some(field))?)?;
                }
                Ok(acc)
            }
            other => Err(bad(format!("unknown algebra constructor '{other}'"))),
        };
    }
    let space = space_from_json(get(o, "basis", "algebra")?)?;
    let labels = space.labels().to_vec();
    let n = labels.len();
    let unit = match get(o, "unit", "algebra")? {
        Value::String(s) => linalg::unit_vec(field, n, index(&labels, s, "unit")?),
        other => sparse(other, &labels, field, "unit")?,
    };
    let unit_index = (0..n).find(|&i| unit == linalg::unit_vec(field, n, i));
    let mut table: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    if let Some(u) = unit_index {
        for i in 0..n {
            table.insert((u, i), linalg::unit_vec(field, n, i));
            table.insert((i, u), linalg::unit_vec(field, n, i));
        }
    }
    for p in array(o.get("products").unwrap_or(&json!([])), "products")? {
        let po = obj(p, "product")?;
        let l = index(&labels, string(get(po, "left", "product")?, "left")?, "basis")?;
        let r = index(&labels, string(get(po, "right", "product")?, "right")?, "basis")?;
        table.insert((l, r), sparse(get(po, "value", "product")?, &labels, field, "product value")?);
    }
    SuperAlgebra::new(field, space, unit, |i, j| table.get(&(i, j)).cloned().unwrap_or_else(|| linalg::zero_vec(field, n)))
}

pub fn algebra_to_json(a: &AlgebraRef) -> Value {
    let labels = a.labels();
    let mut products = Vec::new();
    let n = a.dim();
    let unit_index = (0..n).find(|&i| a.unit_coords() == linalg::unit_vec(a.field(), n, i).as_slice());
    for i in 0..n {
        for j in 0..n {
            if Some(i) == unit_index || Some(j) == unit_index || a.structure_constants(i, j).is_empty() {
                continue;
            }
            products.push(json!({"left": labels[i], "right": labels[j], "value": sparse_to_json(labels, &a.basis_product(i, j))}));
        }
    }
    let unit = match unit_index {
        Some(u) => json!(labels[u]),
        None => sparse_to_json(labels, a.unit_coords()),
    };
    json!({
        "kind": "algebra",
        "field": a.field().to_string(),
        "basis": space_to_json(a.space()),
        "unit": unit,
        "products": products,
    })
}

fn tensor_term_key(labels: &[String], l: usize, r: usize) -> String {
    format!("{}|{}", labels[l], labels[r])
}

pub fn hopf_from_json(v: &Value, over: Option<Field>) -> Result<HopfFixture> {
    let o = obj(v, "hopf")?;
    let field = field_of(o, over)?;
    if let Some(c) = constructor(o)? {
        let n = || o.get("n").map(|x| usize_of(x, "n")).unwrap_or(Ok(1));
        let plain = |h: HopfSuperAlgebra| HopfFixture { hopf: h, limit: None, canonical: None };
        return match c {
            "grassmann" => {
                let names = name_list(o, "generators")?;
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                Ok(HopfFixture::from_truncated(grassmann_truncation(field, &refs)?))
            }
            "trivial" => Ok(HopfFixture::from_truncated(grassmann_truncation(field, &[])?)),
            "cyclic_functions" => Ok(plain(cyclic_functions(field, n()?)?)),
            "cyclic_group_algebra" => Ok(plain(cyclic_group_algebra(field, n()?)?)),
            "additive_truncation" => Ok(HopfFixture::from_truncated(additive_truncation(field, n()?)?)),
            "multiplicative_truncation" => Ok(HopfFixture::from_truncated(multiplicative_truncation(field, n()?)?)),
            "additive_super_truncation" => Ok(HopfFixture::from_truncated(additive_super_truncation(field, n()?)?)),
            "tensor" => {
                let fs = array(get(o, "factors", "tensor")?, "factors")?;
                let mut it = fs.iter();
                let first = it.next().ok_or_else(|| bad("tensor needs factors"))?;
                let mut acc = hopf_from_json(first, Some(field))?;
                for f in it {
                    let next = hopf_from_json(f, Some(field))?;
                    acc = match (acc.truncated(), next.truncated()) {
                        (Ok(a), Ok(b)) => HopfFixture::from_truncated(tensor_truncation(&a, &b)?),
                        _ => plain(tensor_hopf(&acc.hopf, &next.hopf)?),
                    };
                }
                Ok(acc)
            }
            other => Err(bad(format!("unknown hopf constructor '{other}'"))),
        };
    }
    let alg = algebra_from_json(get(o, "algebra", "hopf")?, Some(field))?;
    let labels = alg.labels().to_vec();
    let n = alg.dim();
    let mut delta = vec![linalg::zero_vec(field, n * n); n];
    for (k, terms) in obj(get(o, "coproduct", "hopf")?, "coproduct")? {
        let i = index(&labels, k, "coproduct")?;
        for (pair, c) in obj(terms, "coproduct entry")? {
            let (l, r) = pair.split_once('|').ok_or_else(|| bad(format!("coproduct term '{pair}' must read 'left|right'")))?;
            let (l, r) = (index(&labels, l, "coproduct")?, index(&labels, r, "coproduct")?);
            delta[i][l * n + r] += &scalar_from_json(c, field)?;
        }
    }
    let counit = sparse(get(o, "counit", "hopf")?, &labels, field, "counit")?;
    let mut antipode = vec![linalg::zero_vec(field, n); n];
    for (k, img) in obj(get(o, "antipode", "hopf")?, "antipode")? {
        antipode[index(&labels, k, "antipode")?] = sparse(img, &labels, field, "antipode")?;
    }
    let hopf = HopfSuperAlgebra::new(&alg, delta, counit, antipode)?;
    let limit = o.get("limit").map(|x| usize_of(x, "limit")).transpose()?;
    let canonical = match o.get("canonical") {
        None => None,
        Some(c) => {
            let co = obj(c, "canonical")?;
            let odd = strings(get(co, "odd_generators", "canonical")?, "odd_generators")?;
            let odd_idx = odd.iter().map(|g| index(&labels, g, "odd generator")).collect::<Result<Vec<_>>>()?;
            let fo = obj(get(co, "factors", "canonical")?, "factors")?;
            let mut factors = Vec::new();
            for l in &labels {
                let entry = array(get(fo, l, "factors")?, "factor")?;
                if entry.len() != 2 {
                    return Err(bad(format!("factor of '{l}' must be [even, [odd generators]]")));
                }
                let e = index(&labels, string(&entry[0], "even factor")?, "even factor")?;
                let mut mask = 0u32;
                for g in strings(&entry[1], "odd factor")? {
                    mask |= 1 << index(&odd, &g, "odd generator")?;
                }
                factors.push((e, mask));
            }
            Some(CanonicalBasis::new(&alg, factors, odd_idx)?)
        }
    };
    Ok(HopfFixture { hopf, limit, canonical })
}

pub fn hopf_to_json(h: &HopfFixture) -> Value {
    let alg = h.hopf.algebra();
    let labels = alg.labels();
    let n = alg.dim();
    let mut coproduct = Map::new();
    let mut antipode = Map::new();
    for i in 0..n {
        let mut terms = Map::new();
        for (lr, c) in h.hopf.delta_table()[i].iter().enumerate() {
            if !c.is_zero() {
                terms.insert(tensor_term_key(labels, lr / n, lr % n), scalar_to_json(c));
            }
        }
        coproduct.insert(labels[i].clone(), Value::Object(terms));
        antipode.insert(labels[i].clone(), sparse_to_json(labels, &h.hopf.antipode_table()[i]));
    }
    let mut out = json!({
        "kind": "hopf",
        "field": alg.field().to_string(),
        "algebra": algebra_to_json(alg),
        "coproduct": coproduct,
        "counit": sparse_to_json(labels, h.hopf.counit_table()),
        "antipode": antipode,
    });
    if let Some(l) = h.limit {
        out["limit"] = json!(l);
    }
    if let Some(c) = &h.canonical {
        let odd: Vec<&String> = c.odd_generators.iter().map(|&g| &labels[g]).collect();
        let mut factors = Map::new();
        for (i, &(e, mask)) in c.factors.iter().enumerate() {
            let gens: Vec<&String> = (0..odd.len()).filter(|k| mask >> k & 1 == 1).map(|k| odd[k]).collect();
            factors.insert(labels[i].clone(), json!([labels[e], gens]));
        }
        out["canonical"] = json!({"odd_generators": odd, "factors": factors});
    }
    out
}

pub fn lie_from_json(v: &Value, over: Option<Field>) -> Result<LieSuperAlgebra> {
    let o = obj(v, "lie")?;
    let field = field_of(o, over)?;
    if let Some(c) = constructor(o)? {
        return match c {
            "gl" => {
                let m = usize_of(get(o, "m", "gl")?, "m")?;
                let n = usize_of(get(o, "n", "gl")?, "n")?;
                Ok(gl_super(field, m, n)?.lie)
            }
            "pair" => Ok(pair_from_json(get(o, "pair", "lie")?, Some(field))?.lie().clone()),
            other => Err(bad(format!("unknown lie constructor '{other}'"))),
        };
    }
    let space = space_from_json(get(o, "basis", "lie")?)?;
    let labels = space.labels().to_vec();
    let n = labels.len();
    let mut table: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    for b in array(o.get("brackets").unwrap_or(&json!([])), "brackets")? {
        let bo = obj(b, "bracket")?;
        let l = index(&labels, string(get(bo, "left", "bracket")?, "left")?, "basis")?;
        let r = index(&labels, string(get(bo, "right", "bracket")?, "right")?, "basis")?;
        table.insert((l, r), sparse(get(bo, "value", "bracket")?, &labels, field, "bracket value")?);
    }
    // missing [y, x] is filled in by super-antisymmetry
    let filled: Vec<((usize, usize), Vector)> = table
        .iter()
        .filter(|((i, j), _)| !table.contains_key(&(*j, *i)))
        .map(|(&(i, j), x)| {
            let sign = if space.parity(i).koszul(space.parity(j)) { field.one() } else { field.int(-1) };
            ((j, i), linalg::scale(&sign, x))
        })
        .collect();
    table.extend(filled);
    LieSuperAlgebra::new(field, space, |i, j| table.get(&(i, j)).cloned().unwrap_or_else(|| linalg::zero_vec(field, n)))
}

pub fn lie_to_json(g: &LieSuperAlgebra) -> Value {
    let labels = g.space().labels();
    let mut brackets = Vec::new();
    for i in 0..g.dim() {
        for j in i..g.dim() {
            let b = g.basis_bracket(i, j);
            if !linalg::is_zero_vec(&b) {
                brackets.push(json!({"left": labels[i], "right": labels[j], "value": sparse_to_json(labels, &b)}));
            }
        }
    }
    json!({"kind": "lie", "field": g.field().to_string(), "basis": space_to_json(g.space()), "brackets": brackets})
}

fn scalar_matrix(v: &Value, size: usize, field: Field, what: &str) -> Result<Mat<Scalar>> {
    let rows = array(v, what)?;
    let rows = rows
        .iter()
        .map(|r| array(r, what)?.iter().map(|x| scalar_from_json(x, field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = Mat::from_rows(rows)?;
    if m.rows() != size || m.cols() != size {
        return Err(bad(format!("{what} must be {size}x{size}")));
    }
    Ok(m)
}

fn poly_matrix(v: &Value, rows: usize, names: &[String], field: Field, what: &str) -> Result<Mat<Poly>> {
    let parsed = array(v, what)?
        .iter()
        .map(|r| {
            array(r, what)?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Poly::parse(s, names, field),
                    other => Ok(Poly::constant(scalar_from_json(other, field)?, names.len())),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Mat::from_rows(parsed)?;
    if m.rows() != rows || m.cols() != rows {
        return Err(bad(format!("{what} must be {rows}x{rows}")));
    }
    Ok(m)
}

fn scalar_matrix_json(m: &Mat<Scalar>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect())).collect())
}

fn poly_matrix_json(m: &Mat<Poly>, names: &[String]) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|p| json!(p.display(names))).collect())).collect())
}

pub fn pair_from_json(v: &Value, over: Option<Field>) -> Result<HarishChandraPair> {
    let o = obj(v, "pair")?;
    let field = field_of(o, over)?;
    if let Some(c) = constructor(o)? {
        return match c {
            "gl" => gl_pair(field, usize_of(get(o, "m", "gl")?, "m")?, usize_of(get(o, "n", "gl")?, "n")?),
            "pseudoabelian" => pseudoabelian_example(field, usize_of(get(o, "n", "pseudoabelian")?, "n")?),
            other => Err(bad(format!("unknown pair constructor '{other}'"))),
        };
    }
    let name = o.get("name").map(|x| string(x, "name")).transpose()?.unwrap_or("pair");
    let go = obj(get(o, "group", "pair")?, "group")?;
    let size = usize_of(get(go, "size", "group")?, "size")?;
    let entry_names = entry_var_names(size);
    let equations = strings(go.get("equations").unwrap_or(&json!([])), "equations")?
        .iter()
        .map(|s| Poly::parse(s, &entry_names, field))
        .collect::<Result<Vec<_>>>()?;
    let mut lie_labels = Vec::new();
    let mut lie_basis = Vec::new();
    for x in array(get(go, "lie", "group")?, "lie")? {
        let xo = obj(x, "Lie basis entry")?;
        lie_labels.push(string(get(xo, "label", "Lie basis entry")?, "label")?.to_string());
        lie_basis.push(scalar_matrix(get(xo, "matrix", "Lie basis entry")?, size, field, "Lie basis matrix")?);
    }
    let mut generators = Vec::new();
    for g in array(go.get("generators").unwrap_or(&json!([])), "generators")? {
        let gob = obj(g, "generator")?;
        let params = strings(get(gob, "params", "generator")?, "params")?;
        let matrix = poly_matrix(get(gob, "matrix", "generator")?, size, &params, field, "generator matrix")?;
        generators.push(GenericGenerator { params, matrix });
    }
    let group = MatrixGroupModel::new(field, size, equations, lie_labels.clone(), lie_basis, generators)?;
    let vo = obj(get(o, "v", "pair")?, "v")?;
    let v_labels = strings(get(vo, "labels", "v")?, "labels")?;
    let t = v_labels.len();
    let rho = match (vo.get("adjoint"), vo.get("representation")) {
        (Some(a), None) => Representation::Adjoint {
            realization: array(a, "adjoint")?.iter().map(|m| scalar_matrix(m, size, field, "realization matrix")).collect::<Result<_>>()?,
        },
        (None, Some(r)) => Representation::Polynomial(poly_matrix(r, t, &entry_names, field, "representation")?),
        _ => return Err(bad("v needs exactly one of 'adjoint' or 'representation'")),
    };
    let g0 = lie_labels.len();
    let mut bracket_vv: Vec<Vec<Option<Vector>>> = vec![vec![None; t]; t];
    for b in array(o.get("brackets").unwrap_or(&json!([])), "brackets")? {
        let bo = obj(b, "bracket")?;
        let l = index(&v_labels, string(get(bo, "left", "bracket")?, "left")?, "V")?;
        let r = index(&v_labels, string(get(bo, "right", "bracket")?, "right")?, "V")?;
        bracket_vv[l][r] = Some(sparse(get(bo, "value", "bracket")?, &lie_labels, field, "bracket value")?);
    }
    let bracket_vv: Vec<Vec<Vector>> = (0..t)
        .map(|i| {
            (0..t)
                .map(|j| bracket_vv[i][j].clone().or_else(|| bracket_vv[j][i].clone()).unwrap_or_else(|| linalg::zero_vec(field, g0)))
                .collect()
        })
        .collect();
    let mut action = vec![vec![linalg::zero_vec(field, t); t]; g0];
    for a in array(o.get("action").unwrap_or(&json!([])), "action")? {
        let ao = obj(a, "action entry")?;
        let x = index(&lie_labels, string(get(ao, "lie", "action entry")?, "lie")?, "Lie")?;
        let w = index(&v_labels, string(get(ao, "v", "action entry")?, "v")?, "V")?;
        action[x][w] = sparse(get(ao, "value", "action entry")?, &v_labels, field, "action value")?;
    }
    HarishChandraPair::new(name, group, v_labels, rho, bracket_vv, action)
}

pub fn pair_to_json(p: &HarishChandraPair) -> Value {
    let size = p.group.size;
    let entry_names = entry_var_names(size);
    let lie: Vec<Value> = p
        .group
        .lie_labels
        .iter()
        .zip(&p.group.lie_basis)
        .map(|(l, m)| json!({"label": l, "matrix": scalar_matrix_json(m)}))
        .collect();
    let generators: Vec<Value> = p
        .group
        .generators
        .iter()
        .map(|g| json!({"params": g.params, "matrix": poly_matrix_json(&g.matrix, &g.params)}))
        .collect();
    let v_labels = p.v.labels();
    let mut v = json!({"labels": v_labels});
    match &p.rho {
        Representation::Adjoint { realization } => v["adjoint"] = Value::Array(realization.iter().map(scalar_matrix_json).collect()),
        Representation::Polynomial(m) => v["representation"] = poly_matrix_json(m, &entry_names),
    }
    let mut brackets = Vec::new();
    for i in 0..v_labels.len() {
        for j in i..v_labels.len() {
            if !linalg::is_zero_vec(&p.bracket_vv[i][j]) {
                brackets.push(json!({"left": v_labels[i], "right": v_labels[j], "value": sparse_to_json(&p.group.lie_labels, &p.bracket_vv[i][j])}));
            }
        }
    }
    let mut action = Vec::new();
    for (x, row) in p.action.iter().enumerate() {
        for (w, img) in row.iter().enumerate() {
            if !linalg::is_zero_vec(img) {
                action.push(json!({"lie": p.group.lie_labels[x], "v": v_labels[w], "value": sparse_to_json(v_labels, img)}));
            }
        }
    }
    json!({
        "kind": "pair",
        "name": p.name,
        "field": p.field().to_string(),
        "group": {
            "size": size,
            "equations": p.group.equations.iter().map(|e| e.display(&entry_names)).collect::<Vec<_>>(),
            "lie": lie,
            "generators": generators,
        },
        "v": v,
        "brackets": brackets,
        "action": action,
    })
}

/// Named built-in fixtures, addressable without a file.
pub fn builtin(name: &str, field: Field) -> Result<Fixture> {
    let lower = name.to_ascii_lowercase();
    let digits = |prefix: &str| -> Option<Vec<usize>> {
        lower.strip_prefix(prefix).map(|d| d.chars().filter_map(|c| c.to_digit(10).map(|x| x as usize)).collect())
    };
    if let Some(d) = digits("gl") {
        if d.len() == 2 {
            return Ok(Fixture::Pair(gl_pair(field, d[0], d[1])?));
        }
    }
    if let Some(d) = digits("pseudoabelian") {
        if d.len() == 1 {
            return Ok(Fixture::Pair(pseudoabelian_example(field, d[0])?));
        }
    }
    Err(Error::Parse(format!("unknown built-in fixture '{name}'")))
}

/// Coefficient rings named like `Lambda(a1,a2)` or `K`.
pub fn coefficient_ring(text: &str, field: Field) -> Result<AlgebraRef> {
    let s = text.trim();
    if s == "K" || s == "k" {
        return grassmann_named(field, &[]);
    }
    let inner = s
        .strip_prefix("Lambda(")
        .or_else(|| s.strip_prefix("Λ("))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad(format!("coefficient ring '{s}' must read Lambda(a1,...)")))?;
    let names: Vec<&str> = inner.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
    grassmann_named(field, &names)
}
