//! Normal-form arithmetic in the group `Γ(R)` of a Harish-Chandra pair.
//!
//! Elements are kept as `g e(a_1, v_1) ... e(a_t, v_t)` with `g` an even
//! group point and the odd coordinates indexed by the basis of `V`. Products
//! are normalized by a rewriting system built from the defining relations;
//! two independent oracles (the enveloping algebra and, for matrix pairs,
//! supermatrices) are provided for cross-checks.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{dual_super_numbers, grassmann_named, parse_element, AlgebraHandle, AlgebraRef, Element, Parity};
use crate::error::{Error, Result};
use crate::hcp::{HarishChandraPair, Representation};
use crate::lie::LieSuperAlgebra;
use crate::linalg::{self, Vector};
use crate::poly::{CommRing, Mat};
use crate::scalar::Scalar;

const MAX_STEPS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug)]
pub enum Token {
    Even(Mat<Element>),
    E { coef: Element, index: usize },
}

/// One letter of a generator word.
#[derive(Clone, Debug)]
pub enum Letter {
    /// `e(a, v)` with `v` in `V` coordinates
    E { coef: Element, v: Vector },
    /// `f(b, x)` with `x` in `Lie(G)` coordinates
    F { coef: Element, x: Vector },
    G(Mat<Element>),
}

#[derive(Clone)]
pub struct GammaElement {
    pub even: Mat<Element>,
    pub odd: Vec<Element>,
}

impl PartialEq for GammaElement {
    fn eq(&self, other: &Self) -> bool {
        self.even == other.even && self.odd == other.odd
    }
}

impl fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn format_matrix(m: &Mat<Element>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let odd: Vec<String> = self.odd.iter().map(|a| a.to_string()).collect();
        write!(f, "even part {}; coords ({})", format_matrix(&self.even), odd.join(", "))
    }
}

/// `Γ(R)` for a fixed pair and coefficient superalgebra `R`.
#[derive(Clone)]
pub struct Gamma {
    pair: Arc<HarishChandraPair>,
    ring: AlgebraRef,
    strategy: Strategy,
    brackets: Vec<Vec<Mat<Scalar>>>,
}

impl Gamma {
    pub fn new(pair: Arc<HarishChandraPair>, ring: AlgebraRef) -> Result<Gamma> {
        if pair.field() != ring.field() {
            return Err(Error::Field("pair and coefficient algebra use different fields".into()));
        }
        let t = pair.dim_v();
        let brackets = (0..t).map(|i| (0..t).map(|j| pair.bracket_matrix(i, j)).collect()).collect();
        Ok(Gamma { pair, ring, strategy: Strategy::Leftmost, brackets })
    }

    pub fn with_strategy(mut self, s: Strategy) -> Gamma {
        self.strategy = s;
        self
    }

    pub fn pair(&self) -> &Arc<HarishChandraPair> {
        &self.pair
    }

    pub fn ring(&self) -> &AlgebraRef {
        &self.ring
    }

    fn id_matrix(&self) -> Mat<Element> {
        Mat::identity(self.pair.group.size, &self.ring.one())
    }

    pub fn identity(&self) -> GammaElement {
        GammaElement { even: self.id_matrix(), odd: vec![self.ring.zero(); self.pair.dim_v()] }
    }

    fn owns(&self, x: &Element) -> Result<()> {
        if x.algebra().uid() != self.ring.uid() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn check_element(&self, u: &GammaElement) -> Result<()> {
        if u.odd.len() != self.pair.dim_v() || u.even.rows() != self.pair.group.size || u.even.cols() != self.pair.group.size {
            return Err(Error::Dimension("element does not belong to this pair".into()));
        }
        u.odd.iter().chain(u.even.entries()).try_for_each(|x| self.owns(x))
    }

    /// Validates an even group point over `R`.
    pub fn even_point(&self, g: Mat<Element>) -> Result<GammaElement> {
        let n = self.pair.group.size;
        if g.rows() != n || g.cols() != n {
            return Err(Error::Dimension(format!("expected a {n}x{n} matrix")));
        }
        g.entries().iter().try_for_each(|x| self.owns(x))?;
        if !g.entries().iter().all(|x| x.odd_part().is_zero()) {
            return Err(Error::Parity("group points have even entries".into()));
        }
        if !self.pair.group.contains(&g) {
            return Err(Error::InvalidGroup("matrix fails the membership equations".into()));
        }
        Ok(GammaElement { even: g, odd: vec![self.ring.zero(); self.pair.dim_v()] })
    }

    /// `e(a, v_index)`
    pub fn gen_e(&self, a: &Element, index: usize) -> Result<GammaElement> {
        self.owns(a)?;
        if !a.even_part().is_zero() {
            return Err(Error::Parity("e(a, v) needs odd a".into()));
        }
        if index >= self.pair.dim_v() {
            return Err(Error::Dimension(format!("no basis vector {index} in V")));
        }
        let mut u = self.identity();
        u.odd[index] = a.clone();
        Ok(u)
    }

    /// `f(b, x)` realized as the matrix `I + bX`.
    pub fn gen_f(&self, b: &Element, x: &[Scalar]) -> Result<GammaElement> {
        self.owns(b)?;
        if !b.odd_part().is_zero() {
            return Err(Error::Parity("f(b, x) needs even b".into()));
        }
        if !(b * b).is_zero() {
            return Err(Error::Precondition("f(b, x) needs b^2 = 0".into()));
        }
        if x.len() != self.pair.group.lie_dim() {
            return Err(Error::Dimension("x must be given in Lie(G) coordinates".into()));
        }
        // I + bX is the image of I + εX in G(K[ε]) under ε -> b, so it lies
        // in G(R) without a membership test
        let m = self.f_matrix(b, &self.pair.group.lie_matrix(x));
        Ok(GammaElement { even: m, odd: vec![self.ring.zero(); self.pair.dim_v()] })
    }

    fn f_matrix(&self, b: &Element, x: &Mat<Scalar>) -> Mat<Element> {
        self.id_matrix().add(&x.lift(&self.ring.one()).scale_by(b))
    }

    pub fn tokens(&self, u: &GammaElement) -> Vec<Token> {
        let mut out = vec![Token::Even(u.even.clone())];
        for (i, a) in u.odd.iter().enumerate() {
            if !a.is_zero() {
                out.push(Token::E { coef: a.clone(), index: i });
            }
        }
        out
    }

    pub fn multiply(&self, u: &GammaElement, w: &GammaElement) -> Result<GammaElement> {
        self.check_element(u)?;
        self.check_element(w)?;
        let mut t = self.tokens(u);
        t.extend(self.tokens(w));
        self.normalize(t)
    }

    pub fn inverse(&self, u: &GammaElement) -> Result<GammaElement> {
        self.check_element(u)?;
        let ginv = u.even.inverse().ok_or_else(|| Error::NotInvertible("group point is not invertible".into()))?;
        let mut t: Vec<Token> = u
            .odd
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| Token::E { coef: -a, index: i })
            .collect();
        t.push(Token::Even(ginv));
        self.normalize(t)
    }

    /// `g u g^{-1}`
    pub fn conjugate(&self, g: &Mat<Element>, u: &GammaElement) -> Result<GammaElement> {
        let gp = self.even_point(g.clone())?;
        self.check_element(u)?;
        let ginv = g.inverse().ok_or_else(|| Error::NotInvertible("group point is not invertible".into()))?;
        let mut t = vec![Token::Even(gp.even)];
        t.extend(self.tokens(u));
        t.push(Token::Even(ginv));
        self.normalize(t)
    }

    pub fn word(&self, letters: &[Letter]) -> Result<GammaElement> {
        let mut t = Vec::new();
        for l in letters {
            match l {
                Letter::E { coef, v } => {
                    self.owns(coef)?;
                    if !coef.even_part().is_zero() {
                        return Err(Error::Parity("e(a, v) needs odd a".into()));
                    }
                    if v.len() != self.pair.dim_v() {
                        return Err(Error::Dimension("v must be given in V coordinates".into()));
                    }
                    // e(a, sum c_k v_k) = prod e(c_k a, v_k) since a^2 = 0
                    for (k, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            t.push(Token::E { coef: coef.scale(c), index: k });
                        }
                    }
                }
                Letter::F { coef, x } => t.push(Token::Even(self.gen_f(coef, x)?.even)),
                Letter::G(g) => t.push(Token::Even(self.even_point(g.clone())?.even)),
            }
        }
        self.normalize(t)
    }

    fn rewrite_at(&self, t: &[Token], p: usize) -> bool {
        match (&t[p], t.get(p + 1)) {
            (Token::E { coef, .. }, _) if coef.is_zero() => true,
            (Token::Even(g), _) if p > 0 && g.is_identity() => true,
            (Token::Even(_), Some(Token::Even(_))) => true,
            (Token::E { .. }, Some(Token::Even(_))) => true,
            (Token::E { index: i, .. }, Some(Token::E { index: j, coef })) => i >= j && !coef.is_zero(),
            _ => false,
        }
    }

    /// Rewrites a token list into normal form.
    pub fn normalize(&self, mut t: Vec<Token>) -> Result<GammaElement> {
        for _ in 0..MAX_STEPS {
            let mut sites = (0..t.len()).filter(|&p| self.rewrite_at(&t, p));
            let site = match self.strategy {
                Strategy::Leftmost => sites.next(),
                Strategy::Rightmost => sites.next_back(),
            };
            let Some(p) = site else {
                return Ok(self.read_normal_form(t));
            };
            let replacement: Vec<Token> = match (&t[p], t.get(p + 1)) {
                (Token::E { coef, .. }, _) if coef.is_zero() => {
                    t.remove(p);
                    continue;
                }
                (Token::Even(g), _) if p > 0 && g.is_identity() => {
                    t.remove(p);
                    continue;
                }
                (Token::Even(g), Some(Token::Even(h))) => vec![Token::Even(g.mul(h))],
                (Token::E { coef, index }, Some(Token::Even(g))) => {
                    let ginv = g.inverse().ok_or_else(|| Error::NotInvertible("group point is not invertible".into()))?;
                    let rho = self
                        .pair
                        .rho_at(&ginv)
                        .ok_or_else(|| Error::Precondition("representation not defined at group point".into()))?;
                    let mut out = vec![Token::Even(g.clone())];
                    for j in 0..self.pair.dim_v() {
                        let c = rho.get(j, *index);
                        if !c.is_zero() {
                            out.push(Token::E { coef: c * coef, index: j });
                        }
                    }
                    out
                }
                (Token::E { coef: a, index: i }, Some(Token::E { coef: a2, index: j })) => {
                    let b = -&(a * a2);
                    if i == j {
                        let half = self.ring.field().int(2).inv().ok_or(Error::Field("characteristic 2".into()))?;
                        let x = self.brackets[*i][*i].scale(&half);
                        vec![Token::Even(self.f_matrix(&b, &x)), Token::E { coef: a + a2, index: *i }]
                    } else {
                        vec![
                            Token::Even(self.f_matrix(&b, &self.brackets[*i][*j])),
                            Token::E { coef: a2.clone(), index: *j },
                            Token::E { coef: a.clone(), index: *i },
                        ]
                    }
                }
                _ => unreachable!("rewrite site without a rule"),
            };
            t.splice(p..p + 2, replacement);
        }
        Err(Error::Precondition("rewriting did not terminate".into()))
    }

    fn read_normal_form(&self, t: Vec<Token>) -> GammaElement {
        let mut out = self.identity();
        for tok in t {
            match tok {
                Token::Even(g) => out.even = g,
                Token::E { coef, index } => out.odd[index] = coef,
            }
        }
        out
    }

    pub fn commutator(&self, u: &GammaElement, w: &GammaElement) -> Result<GammaElement> {
        let uw = self.multiply(u, w)?;
        let ui = self.inverse(u)?;
        let wi = self.inverse(w)?;
        self.multiply(&self.multiply(&uw, &ui)?, &wi)
    }
}

/// Splits `text` at whitespace outside brackets.
fn split_top(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_matrix(ring: &AlgebraRef, text: &str) -> Result<Mat<Element>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("bad matrix '{text}'")))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| Error::Parse(format!("bad matrix row in '{text}'")))?;
        let end = body.find(']').ok_or_else(|| Error::Parse(format!("unclosed row in '{text}'")))?;
        let row = body[..end].split(',').map(|e| parse_element(ring, e.trim())).collect::<Result<Vec<_>>>()?;
        rows.push(row);
        rest = body[end + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    Mat::from_rows(rows)
}

/// Parses words such as `e(a1,v-) e(a2,v+) f(b,E11) g[[2,0],[0,1]]`.
pub fn parse_word(pair: &HarishChandraPair, ring: &AlgebraRef, text: &str) -> Result<Vec<Letter>> {
    let f = pair.field();
    let mut out = Vec::new();
    for item in split_top(text) {
        if let Some(m) = item.strip_prefix('g') {
            out.push(Letter::G(parse_matrix(ring, m)?));
            continue;
        }
        let (head, args) = item
            .split_once('(')
            .and_then(|(h, r)| r.strip_suffix(')').map(|a| (h, a)))
            .ok_or_else(|| Error::Parse(format!("bad generator '{item}'")))?;
        let (coef, label) = args.rsplit_once(',').ok_or_else(|| Error::Parse(format!("generator '{item}' needs two arguments")))?;
        let coef = parse_element(ring, coef.trim())?;
        let label = label.trim();
        match head {
            "e" => {
                let i = pair.v_index(label).ok_or_else(|| Error::Parse(format!("unknown odd basis vector '{label}'")))?;
                out.push(Letter::E { coef, v: linalg::unit_vec(f, pair.dim_v(), i) });
            }
            "f" => {
                let i = pair
                    .group
                    .lie_labels
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| Error::Parse(format!("unknown Lie(G) basis vector '{label}'")))?;
                out.push(Letter::F { coef, x: linalg::unit_vec(f, pair.group.lie_dim(), i) });
            }
            _ => return Err(Error::Parse(format!("unknown generator '{head}'"))),
        }
    }
    Ok(out)
}

/// `[x, y]` for basis vectors of `Lie(G) ⊕ V`, read off the group
/// commutator of `e^{ε x}` and `e^{ε' y}` over `K[ε0,ε1] ⊗ K[ε0',ε1']`.
pub fn tangent_bracket(pair: &Arc<HarishChandraPair>, i: usize, j: usize) -> Result<Vector> {
    let f = pair.field();
    let g0 = pair.group.lie_dim();
    let n = g0 + pair.dim_v();
    if i >= n || j >= n {
        return Err(Error::Dimension("basis index out of range".into()));
    }
    let k = grassmann_named(f, &[])?;
    let d = dual_super_numbers(&k, "e0", "e1")?;
    let dd = dual_super_numbers(&d.algebra, "e0'", "e1'")?;
    let eps = [dd.inclusion.apply(&d.eps0)?, dd.inclusion.apply(&d.eps1)?];
    let eps_p = [dd.eps0.clone(), dd.eps1.clone()];
    let gamma = Gamma::new(pair.clone(), dd.algebra.clone())?;
    let exp = |idx: usize, e: &[Element; 2]| -> Result<GammaElement> {
        if idx < g0 {
            gamma.gen_f(&e[0], &linalg::unit_vec(f, g0, idx))
        } else {
            // e^{ε1 v} is e(-ε1, v)
            gamma.gen_e(&-&e[1], idx - g0)
        }
    };
    let px = pair.lie().parity(i);
    let py = pair.lie().parity(j);
    let c = gamma.commutator(&exp(i, &eps)?, &exp(j, &eps_p)?)?;
    let ee = &eps[px.bit() as usize] * &eps_p[py.bit() as usize];
    let pos = (0..dd.algebra.dim()).find(|&p| !ee.coord(p).is_zero()).expect("εε' is nonzero");
    let unit = ee.coord(pos).clone();
    let extract = |x: &Element| -> Result<Scalar> {
        let c = x.coord(pos) * &unit.inv().expect("nonzero");
        if *x != ee.scale(&c) {
            return Err(Error::Precondition(format!("commutator entry {x} is not a multiple of {ee}")));
        }
        Ok(c)
    };
    let sign = if px.koszul(py) { -f.one() } else { f.one() };
    let mut out = linalg::zero_vec(f, n);
    let diff = c.even.sub(&gamma.id_matrix());
    let m = Mat::from_fn(diff.rows(), diff.cols(), |_, _| f.zero());
    let mut m = m;
    for r in 0..diff.rows() {
        for s in 0..diff.cols() {
            m.set(r, s, &extract(diff.get(r, s))? * &sign);
        }
    }
    let even = pair.group.lie_coords(&m).ok_or_else(|| Error::Precondition("commutator leaves Lie(G)".into()))?;
    out[..g0].clone_from_slice(&even);
    for (k, a) in c.odd.iter().enumerate() {
        out[g0 + k] = -&(&extract(a)? * &sign);
    }
    Ok(out)
}

/// A PBW monomial: exponents over the basis of `Lie(G) ⊕ V` (odd ones are 0 or 1).
pub type Monomial = Vec<u32>;

/// Elements of `U(g) ⊗ R` truncated to the terms with nonzero coefficient.
#[derive(Clone, PartialEq)]
pub struct EnvElement {
    pub terms: BTreeMap<Monomial, Element>,
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in &self.terms {
            write!(f, "{m:?}⊗({c}) ")?;
        }
        Ok(())
    }
}

/// Ground truth for normal forms via `Gpl(U(g) ⊗ R)`.
pub struct EnvelopingOracle {
    pair: Arc<HarishChandraPair>,
    lie: LieSuperAlgebra,
    ring: AlgebraRef,
    cache: RefCell<HashMap<Vec<usize>, Vec<(Monomial, Scalar)>>>,
}

impl EnvelopingOracle {
    pub fn new(pair: Arc<HarishChandraPair>, ring: AlgebraRef) -> EnvelopingOracle {
        let lie = pair.lie().clone();
        EnvelopingOracle { pair, lie, ring, cache: RefCell::new(HashMap::new()) }
    }

    pub fn one(&self) -> EnvElement {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; self.lie.dim()], self.ring.one());
        EnvElement { terms }
    }

    /// `1 + sum_k y_k ⊗ c_k`
    pub fn one_plus(&self, coeffs: &[(usize, Element)]) -> EnvElement {
        let mut out = self.one();
        for (k, c) in coeffs {
            let mut m = vec![0; self.lie.dim()];
            m[*k] = 1;
            add_term(&mut out.terms, m, c.clone());
        }
        out
    }

    fn word_of(m: &Monomial) -> Vec<usize> {
        m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    /// PBW straightening of a word in the basis of `g`.
    fn straighten(&self, word: &[usize]) -> Vec<(Monomial, Scalar)> {
        if let Some(hit) = self.cache.borrow().get(word) {
            return hit.clone();
        }
        let f = self.lie.field();
        let pos = word
            .windows(2)
            .position(|w| w[0] > w[1] || (w[0] == w[1] && self.lie.parity(w[0]).is_odd()));
        let result = match pos {
            None => {
                let mut m = vec![0; self.lie.dim()];
                for &i in word {
                    m[i] += 1;
                }
                vec![(m, f.one())]
            }
            Some(p) => {
                let (x, y) = (word[p], word[p + 1]);
                let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
                let mut push = |terms: Vec<(Monomial, Scalar)>, c: &Scalar| {
                    for (m, s) in terms {
                        let e = acc.entry(m).or_insert_with(|| f.zero());
                        *e = &*e + &(&s * c);
                    }
                };
                let (bracket_scale, swap) = if x == y { (f.int(2).inv().expect("odd characteristic"), false) } else { (f.one(), true) };
                if swap {
                    let mut w = word.to_vec();
                    w.swap(p, p + 1);
                    let sign = if self.lie.parity(x).koszul(self.lie.parity(y)) { -f.one() } else { f.one() };
                    push(self.straighten(&w), &sign);
                }
                for (k, c) in self.lie.structure_constants(x, y) {
                    let mut w = word[..p].to_vec();
                    w.push(*k);
                    w.extend_from_slice(&word[p + 2..]);
                    push(self.straighten(&w), &(c * &bracket_scale));
                }
                acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
            }
        };
        self.cache.borrow_mut().insert(word.to_vec(), result.clone());
        result
    }

    fn monomial_parity(&self, m: &Monomial) -> Parity {
        let odd: u32 = m.iter().enumerate().filter(|(i, _)| self.lie.parity(*i).is_odd()).map(|(_, e)| e).sum();
        Parity::from_bit((odd % 2) as u8)
    }

    /// `(u ⊗ a)(u' ⊗ a') = (-1)^{|a||u'|} uu' ⊗ aa'`
    pub fn mul(&self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        let mut terms = BTreeMap::new();
        for (m1, a) in &x.terms {
            let (a0, a1) = (a.even_part(), a.odd_part());
            for (m2, b) in &y.terms {
                let twisted = if self.monomial_parity(m2).is_odd() { &a0 - &a1 } else { a.clone() };
                let coef = &twisted * b;
                if coef.is_zero() {
                    continue;
                }
                let mut w = Self::word_of(m1);
                w.extend(Self::word_of(m2));
                for (m, s) in self.straighten(&w) {
                    add_term(&mut terms, m, coef.scale(&s));
                }
            }
        }
        EnvElement { terms }
    }

    fn add(&self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        let mut terms = x.terms.clone();
        for (m, c) in &y.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        EnvElement { terms }
    }

    /// `exp(sum_k X_k ⊗ c_k)` for even nilpotent coefficients.
    fn exp(&self, coeffs: &[(usize, Element)]) -> Result<EnvElement> {
        let f = self.lie.field();
        let mut l = self.one_plus(coeffs);
        l.terms.remove(&vec![0; self.lie.dim()]);
        let mut out = self.one();
        let mut power = self.one();
        for n in 1.. {
            power = self.mul(&power, &l);
            if power.terms.is_empty() {
                break;
            }
            if n > self.ring.dim() + 1 {
                return Err(Error::Precondition("exponential does not truncate".into()));
            }
            let inv = f.int(n as i64).inv().ok_or_else(|| Error::Precondition("exponential needs division by the characteristic".into()))?;
            power = EnvElement { terms: power.terms.into_iter().map(|(m, c)| (m, c.scale(&inv))).collect() };
            out = self.add(&out, &power);
        }
        Ok(out)
    }

    /// Image of an even group point congruent to the identity modulo
    /// nilpotents: `exp(log g)`.
    pub fn of_even(&self, g: &Mat<Element>) -> Result<EnvElement> {
        let f = self.lie.field();
        let one = self.ring.one();
        let n = g.sub(&Mat::identity(g.rows(), &one));
        let mut log = Mat::filled(g.rows(), g.cols(), &self.ring.zero());
        let mut power = n.clone();
        let mut k = 1;
        while !power.is_zero() {
            if k > self.ring.dim() + 1 {
                return Err(Error::Precondition("oracle needs g congruent to I modulo nilpotents".into()));
            }
            let c = f.int(if k % 2 == 1 { 1 } else { -1 }).scale_div(k)?;
            log = log.add(&power.scale(&c));
            power = power.mul(&n);
            k += 1;
        }
        let coords = self.pair.group.lie_coords(&log).ok_or_else(|| Error::Precondition("log g is not in Lie(G) ⊗ R".into()))?;
        self.exp(&coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>())
    }

    pub fn of_element(&self, u: &GammaElement) -> Result<EnvElement> {
        let g0 = self.pair.group.lie_dim();
        let mut out = self.of_even(&u.even)?;
        for (i, a) in u.odd.iter().enumerate() {
            if !a.is_zero() {
                out = self.mul(&out, &self.one_plus(&[(g0 + i, a.clone())]));
            }
        }
        Ok(out)
    }

    pub fn of_letter(&self, l: &Letter) -> Result<EnvElement> {
        let g0 = self.pair.group.lie_dim();
        Ok(match l {
            Letter::E { coef, v } => {
                self.one_plus(&v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (g0 + k, coef.scale(c))).collect::<Vec<_>>())
            }
            Letter::F { coef, x } => {
                self.one_plus(&x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, coef.scale(c))).collect::<Vec<_>>())
            }
            Letter::G(g) => self.of_even(g)?,
        })
    }

    pub fn of_word(&self, letters: &[Letter]) -> Result<EnvElement> {
        let mut out = self.one();
        for l in letters {
            out = self.mul(&out, &self.of_letter(l)?);
        }
        Ok(out)
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Element>, m: Monomial, c: Element) {
    let sum = match terms.remove(&m) {
        Some(old) => &old + &c,
        None => c,
    };
    if !sum.is_zero() {
        terms.insert(m, sum);
    }
}

trait ScaleDiv {
    fn scale_div(&self, k: usize) -> Result<Scalar>;
}

impl ScaleDiv for Scalar {
    fn scale_div(&self, k: usize) -> Result<Scalar> {
        let inv = self
            .field()
            .int(k as i64)
            .inv()
            .ok_or_else(|| Error::Precondition("logarithm needs division by the characteristic".into()))?;
        Ok(self * &inv)
    }
}

/// Normal forms evaluated as supermatrices for pairs realized inside
/// `gl(m|n)`. `e(a, v)` maps to `I + a V P` or `I + a V` with `P` the
/// column-parity sign matrix, whichever satisfies the commutator relation.
pub struct SupermatrixOracle {
    pair: Arc<HarishChandraPair>,
    /// realization of each odd basis vector, after the sign twist
    odd_matrices: Vec<Mat<Scalar>>,
    pub twisted: bool,
}

/// Parity of the rows of the realization, found by 2-colouring the
/// row/column graph of the odd matrices with index 0 even.
fn index_parities(size: usize, realization: &[Mat<Scalar>]) -> Result<Vec<Parity>> {
    let mut colour: Vec<Option<Parity>> = vec![None; size];
    for start in 0..size {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(Parity::Even);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let ci = colour[i].expect("coloured");
            for m in realization {
                for j in 0..size {
                    if m.get(i, j).is_zero() && m.get(j, i).is_zero() {
                        continue;
                    }
                    match colour[j] {
                        None => {
                            colour[j] = Some(ci + Parity::Odd);
                            stack.push(j);
                        }
                        Some(cj) if cj == ci => return Err(Error::InvalidPair("realization is not by odd supermatrices".into())),
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(colour.into_iter().map(|c| c.expect("coloured")).collect())
}

impl SupermatrixOracle {
    pub fn calibrate(pair: Arc<HarishChandraPair>) -> Result<SupermatrixOracle> {
        let Representation::Adjoint { realization } = &pair.rho else {
            return Err(Error::Precondition("supermatrix oracle needs a matrix realization of V".into()));
        };
        let f = pair.field();
        let n = pair.group.size;
        let parities = index_parities(n, realization)?;
        let p = Mat::from_fn(n, n, |i, j| if i != j { f.zero() } else if parities[i].is_odd() { -f.one() } else { f.one() });
        let ring = grassmann_named(f, &["a", "b"])?;
        let (a, b) = (ring.basis_by_label("a")?, ring.basis_by_label("b")?);
        let mut found = Vec::new();
        for twisted in [false, true] {
            let odd_matrices: Vec<Mat<Scalar>> = realization.iter().map(|m| if twisted { m.mul(&p) } else { m.clone() }).collect();
            let o = SupermatrixOracle { pair: pair.clone(), odd_matrices, twisted };
            let one = ring.one();
            let e = |c: &Element, k: usize| Mat::identity(n, &one).add(&o.odd_matrices[k].lift(&one).scale_by(c));
            let mut ok = true;
            'pairs: for i in 0..pair.dim_v() {
                for j in 0..pair.dim_v() {
                    // e(a,v)e(b,w) = f(-ab,[v,w]) e(b,w) e(a,v)
                    let lhs = e(&a, i).mul(&e(&b, j));
                    let fm = Mat::identity(n, &one).add(&pair.bracket_matrix(i, j).lift(&one).scale_by(&-&(&a * &b)));
                    let rhs = fm.mul(&e(&b, j)).mul(&e(&a, i));
                    if lhs != rhs {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
            if ok {
                found.push(o);
            }
        }
        match found.len() {
            1 => Ok(found.pop().expect("one candidate")),
            0 => Err(Error::Precondition("no sign twist satisfies the commutator relation".into())),
            _ => Err(Error::Precondition("sign twist is not determined by the commutator relation".into())),
        }
    }

    fn e_matrix(&self, coef: &Element, v: &[Scalar]) -> Mat<Element> {
        let one = coef.one_like();
        let n = self.pair.group.size;
        let mut m = Mat::identity(n, &one);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.odd_matrices[k].lift(&one).scale_by(&coef.scale(c)));
            }
        }
        m
    }

    pub fn of_element(&self, u: &GammaElement) -> Mat<Element> {
        let f = self.pair.field();
        let mut m = u.even.clone();
        for (i, a) in u.odd.iter().enumerate() {
            if !a.is_zero() {
                m = m.mul(&self.e_matrix(a, &linalg::unit_vec(f, self.pair.dim_v(), i)));
            }
        }
        m
    }

    pub fn of_word(&self, ring: &AlgebraRef, letters: &[Letter]) -> Mat<Element> {
        let one = ring.one();
        let mut m = Mat::identity(self.pair.group.size, &one);
        for l in letters {
            let x = match l {
                Letter::E { coef, v } => self.e_matrix(coef, v),
                Letter::F { coef, x } => Mat::identity(self.pair.group.size, &one).add(&self.pair.group.lie_matrix(x).lift(&one).scale_by(coef)),
                Letter::G(g) => g.clone(),
            };
            m = m.mul(&x);
        }
        m
    }
}
