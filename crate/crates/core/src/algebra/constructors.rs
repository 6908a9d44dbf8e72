use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{AlgebraHandle, AlgebraMap, AlgebraRef, Element, Parity, SparseVec, SuperAlgebra, SuperIdeal, SuperVectorSpace};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Field, Scalar};

/// Basis bookkeeping for `K[t_1..t_m]/(deg > N) ⊗ Λ(θ_1..θ_s)`: every basis
/// element is a monomial `t^α θ_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub even_vars: Vec<String>,
    pub odd_vars: Vec<String>,
    pub max_degree: usize,
    /// `(α, S)` per basis index, with `S` a bitmask over the odd variables.
    pub monomials: Vec<(Vec<u32>, u32)>,
}

impl MonomialBasis {
    pub fn degree(&self, i: usize) -> usize {
        let (a, s) = &self.monomials[i];
        a.iter().sum::<u32>() as usize + s.count_ones() as usize
    }

    pub fn odd_degree(&self, i: usize) -> usize {
        self.monomials[i].1.count_ones() as usize
    }

    pub fn index_of(&self, alpha: &[u32], mask: u32) -> Option<usize> {
        self.monomials.iter().position(|(a, s)| a == alpha && *s == mask)
    }
}

/// Sign of `θ_S θ_T = ±θ_{S∪T}` for disjoint masks.
pub(crate) fn shuffle_sign(s: u32, t: u32) -> bool {
    let mut inversions = 0;
    for j in 0..32 {
        if t >> j & 1 == 1 {
            inversions += (s >> (j + 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

fn monomial_label(even: &[String], odd: &[String], alpha: &[u32], mask: u32) -> String {
    let mut parts = Vec::new();
    for (name, &e) in even.iter().zip(alpha) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    for (k, name) in odd.iter().enumerate() {
        if mask >> k & 1 == 1 {
            parts.push(name.clone());
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// `K[t_1..t_m] ⊗ Λ(θ_1..θ_s)` truncated at total degree `max_degree`.
pub fn truncated_poly(field: Field, even: &[&str], odd: &[&str], max_degree: usize) -> Result<(AlgebraRef, MonomialBasis)> {
    if odd.len() > 30 {
        return Err(Error::Dimension("too many odd variables".into()));
    }
    let even: Vec<String> = even.iter().map(|s| s.to_string()).collect();
    let odd: Vec<String> = odd.iter().map(|s| s.to_string()).collect();
    let mut names = HashSet::new();
    for n in even.iter().chain(&odd) {
        if n.is_empty() || n == "1" || !names.insert(n.clone()) {
            return Err(Error::InvalidAlgebra(format!("bad or repeated variable name '{n}'")));
        }
    }
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..even.len() {
        let mut next = Vec::new();
        for e in &exps {
            let used: u32 = e.iter().sum();
            for k in 0..=(max_degree as u32 - used.min(max_degree as u32)) {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        exps = next;
    }
    let mut monomials = Vec::new();
    for a in &exps {
        let da: u32 = a.iter().sum();
        for mask in 0..(1u32 << odd.len()) {
            if (da + mask.count_ones()) as usize <= max_degree {
                monomials.push((a.clone(), mask));
            }
        }
    }
    let key = |(a, s): &(Vec<u32>, u32)| {
        let deg = a.iter().sum::<u32>() + s.count_ones();
        let mut flat: Vec<u32> = a.clone();
        flat.extend((0..odd.len()).map(|k| s >> k & 1));
        (deg, std::cmp::Reverse(flat))
    };
    monomials.sort_by_key(key);
    let basis = MonomialBasis { even_vars: even.clone(), odd_vars: odd.clone(), max_degree, monomials };
    let labels = basis.monomials.iter().map(|(a, s)| monomial_label(&even, &odd, a, *s)).collect();
    let parities = basis.monomials.iter().map(|(_, s)| Parity::from_bit((s.count_ones() % 2) as u8)).collect();
    let space = SuperVectorSpace::new(labels, parities)?;
    let lookup: HashMap<(Vec<u32>, u32), usize> =
        basis.monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let n = basis.monomials.len();
    let table: Vec<Vec<SparseVec>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, s) = &basis.monomials[i];
                    let (b, t) = &basis.monomials[j];
                    if s & t != 0 {
                        return vec![];
                    }
                    let c: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    match lookup.get(&(c, s | t)) {
                        None => vec![],
                        Some(&k) => {
                            let sign = if shuffle_sign(*s, *t) { field.int(-1) } else { field.one() };
                            vec![(k, sign)]
                        }
                    }
                })
                .collect()
        })
        .collect();
    let unit = linalg::unit_vec(field, n, 0);
    let alg = SuperAlgebra::from_sparse(field, space, unit, table);
    Ok((Arc::new(alg), basis))
}

/// Grassmann algebra on a purely odd space; basis = subsets in canonical order.
pub fn grassmann(field: Field, v: &SuperVectorSpace) -> Result<AlgebraRef> {
    if v.parities().contains(&Parity::Even) {
        return Err(Error::Parity("Grassmann generators must be odd".into()));
    }
    let names: Vec<&str> = v.labels().iter().map(String::as_str).collect();
    grassmann_named(field, &names)
}

pub fn grassmann_named(field: Field, names: &[&str]) -> Result<AlgebraRef> {
    Ok(truncated_poly(field, &[], names, names.len())?.0)
}

fn tensor_labels(a: &SuperAlgebra, b: &SuperAlgebra) -> Vec<String> {
    let simple: Vec<String> = a
        .labels()
        .iter()
        .flat_map(|x| {
            b.labels().iter().map(move |y| match (x.as_str(), y.as_str()) {
                ("1", _) => y.clone(),
                (_, "1") => x.clone(),
                _ => format!("{x}*{y}"),
            })
        })
        .collect();
    let distinct: HashSet<&String> = simple.iter().collect();
    if distinct.len() == simple.len() {
        return simple;
    }
    a.labels()
        .iter()
        .flat_map(|x| b.labels().iter().map(move |y| format!("{x}⊗{y}")))
        .collect()
}

/// Tensor product with basis `(i, j) -> i * dim B + j` and the Koszul rule
/// `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'`.
pub fn tensor(a: &AlgebraRef, b: &AlgebraRef) -> Result<AlgebraRef> {
    if a.field() != b.field() {
        return Err(Error::Field(format!("cannot tensor over {} and {}", a.field(), b.field())));
    }
    let f = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let labels = tensor_labels(a, b);
    let parities = (0..na * nb).map(|k| a.parity(k / nb) + b.parity(k % nb)).collect();
    let space = SuperVectorSpace::new(labels, parities)?;
    let minus = f.int(-1);
    let mut table = vec![vec![Vec::new(); na * nb]; na * nb];
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                let ac = a.structure_constants(i, k);
                if ac.is_empty() {
                    continue;
                }
                let sign = b.parity(j).koszul(a.parity(k));
                for l in 0..nb {
                    let bc = b.structure_constants(j, l);
                    let mut entry: SparseVec = Vec::new();
                    for (m, x) in ac {
                        for (n, y) in bc {
                            let c = x * y;
                            entry.push((m * nb + n, if sign { &c * &minus } else { c }));
                        }
                    }
                    entry.sort_by_key(|e| e.0);
                    table[i * nb + j][k * nb + l] = entry;
                }
            }
        }
    }
    let unit = tensor_coords(a.unit_coords(), b.unit_coords());
    Ok(Arc::new(SuperAlgebra::from_sparse(f, space, unit, table).with_factors(a.clone(), b.clone())))
}

/// Coordinates of `x ⊗ y` in the pair basis (no sign is involved).
pub fn tensor_coords(x: &[Scalar], y: &[Scalar]) -> linalg::Vector {
    x.iter().flat_map(|xi| y.iter().map(move |yj| xi * yj)).collect()
}

impl Element {
    /// `self ⊗ other` inside a tensor algebra built from their owners.
    pub fn tensor_with(&self, other: &Element, target: &AlgebraRef) -> Result<Element> {
        match target.factors() {
            Some((a, b)) if a.uid() == self.algebra().uid() && b.uid() == other.algebra().uid() => {
                target.element(tensor_coords(self.coords(), other.coords()))
            }
            _ => Err(Error::AlgebraMismatch),
        }
    }
}

pub struct Quotient {
    pub algebra: AlgebraRef,
    pub projection: AlgebraMap,
    /// Representative in the source of each quotient basis element.
    pub section: Vec<linalg::Vector>,
}

/// `A / I` with basis the standard vectors outside the echelon pivots of `I`.
pub fn quotient_by_ideal(a: &AlgebraRef, ideal: &SuperIdeal) -> Result<Quotient> {
    if ideal.algebra().uid() != a.uid() {
        return Err(Error::AlgebraMismatch);
    }
    let f = a.field();
    let sub = ideal.subspace();
    let keep = sub.standard_complement();
    let project = |v: &[Scalar]| -> linalg::Vector {
        let r = sub.reduce(v);
        keep.iter().map(|&c| r[c].clone()).collect()
    };
    let labels = keep.iter().map(|&c| a.label(c).to_string()).collect();
    let parities = keep.iter().map(|&c| a.parity(c)).collect();
    let space = SuperVectorSpace::new(labels, parities)?;
    let n = a.dim();
    let unit = project(a.unit_coords());
    let q = SuperAlgebra::from_product(f, space, unit, |i, j| project(&a.basis_product(keep[i], keep[j])));
    let q = Arc::new(q);
    let images = (0..n).map(|i| project(&linalg::unit_vec(f, n, i))).collect();
    let projection = AlgebraMap::new(a.clone(), q.clone(), images)?;
    let section = keep.iter().map(|&c| linalg::unit_vec(f, n, c)).collect();
    Ok(Quotient { algebra: q, projection, section })
}

/// `R[ε0, ε1]` with `p_R` and `i_R`.
pub struct DualNumbers {
    pub algebra: AlgebraRef,
    pub projection: AlgebraMap,
    pub inclusion: AlgebraMap,
    pub eps0: Element,
    pub eps1: Element,
}

pub fn dual_super_numbers(r: &AlgebraRef, eps0: &str, eps1: &str) -> Result<DualNumbers> {
    let (d, _) = truncated_poly(r.field(), &[eps0], &[eps1], 1)?;
    let alg = tensor(r, &d)?;
    let f = r.field();
    let nr = r.dim();
    // d has basis 1, eps0, eps1 in this order
    let projection = AlgebraMap::new(
        alg.clone(),
        r.clone(),
        (0..alg.dim())
            .map(|k| if k % 3 == 0 { linalg::unit_vec(f, nr, k / 3) } else { linalg::zero_vec(f, nr) })
            .collect(),
    )?;
    let inclusion = AlgebraMap::new(r.clone(), alg.clone(), (0..nr).map(|i| linalg::unit_vec(f, alg.dim(), 3 * i)).collect())?;
    let e0 = r.one().tensor_with(&d.basis(1), &alg)?;
    let e1 = r.one().tensor_with(&d.basis(2), &alg)?;
    Ok(DualNumbers { algebra: alg, projection, inclusion, eps0: e0, eps1: e1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::odd_ideal;

    #[test]
    fn tensor_signs_and_braiding() {
        let q = Field::Rational;
        let a = grassmann_named(q, &["th"]).unwrap();
        let b = grassmann_named(q, &["eta"]).unwrap();
        let t = tensor(&a, &b).unwrap();
        t.validate().unwrap();
        assert_eq!(t.dims(), (2, 2));
        let th = a.basis_by_label("th").unwrap().tensor_with(&b.one(), &t).unwrap();
        let eta = a.one().tensor_with(&b.basis_by_label("eta").unwrap(), &t).unwrap();
        let both = t.basis_by_label("th*eta").unwrap();
        assert_eq!(&th * &eta, both);
        assert_eq!(&eta * &th, -&both);
    }

    #[test]
    fn dual_numbers_and_quotient() {
        let q = Field::Rational;
        let k = grassmann_named(q, &[]).unwrap();
        let d = dual_super_numbers(&k, "e0", "e1").unwrap();
        d.algebra.validate().unwrap();
        assert_eq!(d.algebra.dims(), (2, 1));
        assert!((&d.eps1 * &d.eps1).is_zero());
        let i = odd_ideal(&d.algebra).unwrap();
        assert_eq!(i.dim(), 1);
        let quo = quotient_by_ideal(&d.algebra, &i).unwrap();
        assert_eq!(quo.algebra.labels(), &["1".to_string(), "e0".to_string()]);
        assert!(quo.projection.is_multiplicative().is_ok());
        let x = &(&d.algebra.int(3) + &d.eps0.scale(&q.int(2))) + &d.eps1;
        assert_eq!(d.projection.apply(&x).unwrap(), k.int(3));
        for i in 0..k.dim() {
            assert_eq!(d.projection.apply(&d.inclusion.apply(&k.basis(i)).unwrap()).unwrap(), k.basis(i));
        }
    }

    #[test]
    fn truncated_poly_products() {
        let q = Field::Rational;
        let (a, basis) = truncated_poly(q, &["t"], &["th"], 3).unwrap();
        a.validate().unwrap();
        assert_eq!(a.dim(), 7);
        let t = a.basis_by_label("t").unwrap();
        assert_eq!(&t * &a.basis_by_label("t^2").unwrap(), a.basis_by_label("t^3").unwrap());
        assert!(t.pow(4).is_zero());
        assert_eq!(basis.degree(a.index_of("t^2*th").unwrap()), 3);
    }

    #[test]
    fn grassmann_rejects_even_generators() {
        let v = SuperVectorSpace::new(vec!["x".into()], vec![Parity::Even]).unwrap();
        assert!(matches!(grassmann(Field::Rational, &v), Err(Error::Parity(_))));
        let v = SuperVectorSpace::purely_odd(&[]).unwrap();
        assert_eq!(grassmann(Field::Rational, &v).unwrap().dim(), 1);
    }
}
