//! Harish-Chandra pairs over matrix group models: validation, subordinated
//! submodules, radicals and exactness conditions.

use crate::algebra::{truncated_poly, AlgebraHandle, Element, Parity, SuperVectorSpace};
use crate::error::{Error, Result};
use crate::lie::{gl_super, LieSuperAlgebra};
use crate::linalg::{self, Subspace, Vector};
use crate::poly::{BasisSolver, CommRing, Mat, Poly};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

/// Names of the coordinate functions on `n x n` matrices: entries in
/// row-major order, then `d` for the inverse determinant.
pub fn entry_var_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = (0..n * n)
        .map(|k| if n < 10 { format!("x{}{}", k / n + 1, k % n + 1) } else { format!("x{}_{}", k / n + 1, k % n + 1) })
        .collect();
    names.push("d".into());
    names
}

/// A group element with entries in the Laurent ring of its parameters.
#[derive(Clone, Debug)]
pub struct GenericGenerator {
    pub params: Vec<String>,
    pub matrix: Mat<Poly>,
}

impl GenericGenerator {
    pub fn label(&self) -> String {
        format!("generator({})", self.params.join(","))
    }
}

/// An algebraic group given as a closed subgroup of `GL_n`.
#[derive(Clone, Debug)]
pub struct MatrixGroupModel {
    pub field: Field,
    pub size: usize,
    /// Polynomials in [`entry_var_names`] vanishing on the group.
    pub equations: Vec<Poly>,
    pub lie_labels: Vec<String>,
    pub lie_basis: Vec<Mat<Scalar>>,
    pub generators: Vec<GenericGenerator>,
    solver: BasisSolver,
}

impl MatrixGroupModel {
    pub fn new(
        field: Field,
        size: usize,
        equations: Vec<Poly>,
        lie_labels: Vec<String>,
        lie_basis: Vec<Mat<Scalar>>,
        generators: Vec<GenericGenerator>,
    ) -> Result<MatrixGroupModel> {
        if lie_labels.len() != lie_basis.len() {
            return Err(Error::InvalidGroup("one label per Lie basis element".into()));
        }
        if lie_basis.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::InvalidGroup("Lie basis matrices have the wrong size".into()));
        }
        if equations.iter().any(|p| p.nvars() != size * size + 1) {
            return Err(Error::InvalidGroup("equations must use the entry variables and d".into()));
        }
        if generators.iter().any(|g| g.matrix.rows() != size || g.matrix.cols() != size) {
            return Err(Error::InvalidGroup("generator has the wrong size".into()));
        }
        let solver = BasisSolver::new(field, size * size, lie_basis.iter().map(|m| m.entries().to_vec()).collect())
            .map_err(|_| Error::InvalidGroup("Lie basis is linearly dependent".into()))?;
        Ok(MatrixGroupModel { field, size, equations, lie_labels, lie_basis, generators, solver })
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_basis.len()
    }

    /// Membership over any commutative ring: the determinant must be a
    /// unit and every defining polynomial must vanish.
    pub fn contains<T: CommRing>(&self, g: &Mat<T>) -> bool {
        let Some((_, det)) = g.inverse_and_det() else {
            return false;
        };
        let Some(d) = det.try_inverse() else {
            return false;
        };
        let mut vals: Vec<T> = g.entries().to_vec();
        vals.push(d.clone());
        let one = d.one_like();
        self.equations.iter().all(|p| p.eval(&vals, &one).is_some_and(|v| v.is_zero_elem()))
    }

    /// Coordinates in the Lie basis of a matrix with ring entries.
    pub fn lie_coords<T: CommRing>(&self, x: &Mat<T>) -> Option<Vec<T>> {
        if self.lie_basis.is_empty() {
            return if x.is_zero() { Some(vec![]) } else { None };
        }
        self.solver.coords(x.entries())
    }

    pub fn lie_matrix(&self, c: &[Scalar]) -> Mat<Scalar> {
        let mut m = Mat::filled(self.size, self.size, &self.field.zero());
        for (ck, b) in c.iter().zip(&self.lie_basis) {
            m = m.add(&b.scale(ck));
        }
        m
    }

    /// Lie-basis coordinates of `[X_i, X_j]`.
    pub fn lie_bracket(&self, i: usize, j: usize) -> Option<Vector> {
        self.lie_coords(&self.lie_basis[i].commutator(&self.lie_basis[j]))
    }

    pub fn check(&self) -> Report {
        let f = self.field;
        let mut r = Report::new();
        let one = f.one();
        r.record(
            "identity in group",
            if self.contains(&Mat::identity(self.size, &one)) { Ok(()) } else { Err("I".into()) },
        );
        r.record(
            "generators in group",
            match self.generators.iter().find(|g| !self.contains(&g.matrix)) {
                None => Ok(()),
                Some(g) => Err(g.label()),
            },
        );
        let tangent = (|| {
            let (dual, _) = truncated_poly(f, &["b"], &[], 1).map_err(|e| e.to_string())?;
            let b = dual.basis(1);
            let one = dual.one();
            for (label, x) in self.lie_labels.iter().zip(&self.lie_basis) {
                let m = Mat::identity(self.size, &one).add(&x.lift(&one).scale_by(&b));
                if !self.contains(&m) {
                    return Err(format!("I + b*{label}"));
                }
            }
            Ok(())
        })();
        r.record("Lie algebra is tangent", tangent);
        let closed = (|| {
            for i in 0..self.lie_dim() {
                for j in 0..self.lie_dim() {
                    if self.lie_bracket(i, j).is_none() {
                        return Err(format!("[{}, {}]", self.lie_labels[i], self.lie_labels[j]));
                    }
                }
            }
            Ok(())
        })();
        r.record("Lie algebra closed", closed);
        r
    }
}

/// How the group acts on `V`.
#[derive(Clone, Debug)]
pub enum Representation {
    /// Matrix entries are polynomials in [`entry_var_names`].
    Polynomial(Mat<Poly>),
    /// `V` is realized by matrices and `g` acts by `v -> g v g^{-1}`.
    Adjoint { realization: Vec<Mat<Scalar>> },
}

/// A Harish-Chandra pair `(G, V)` with its bracket data. The assembled Lie
/// superalgebra `Lie(G) ⊕ V` lists the `Lie(G)` basis first.
#[derive(Clone, Debug)]
pub struct HarishChandraPair {
    pub name: String,
    pub group: MatrixGroupModel,
    pub v: SuperVectorSpace,
    pub rho: Representation,
    /// `[v_i, v_j]` in `Lie(G)` coordinates.
    pub bracket_vv: Vec<Vec<Vector>>,
    /// `X_k . v_i` in `V` coordinates.
    pub action: Vec<Vec<Vector>>,
    lie: LieSuperAlgebra,
    adjoint_solver: Option<BasisSolver>,
}

impl HarishChandraPair {
    pub fn new(
        name: &str,
        group: MatrixGroupModel,
        v_labels: Vec<String>,
        rho: Representation,
        bracket_vv: Vec<Vec<Vector>>,
        action: Vec<Vec<Vector>>,
    ) -> Result<HarishChandraPair> {
        let f = group.field;
        let t = v_labels.len();
        let g0 = group.lie_dim();
        let v = SuperVectorSpace::new(v_labels, vec![Parity::Odd; t])?;
        if bracket_vv.len() != t || bracket_vv.iter().any(|row| row.len() != t || row.iter().any(|x| x.len() != g0)) {
            return Err(Error::InvalidPair("bracket table has the wrong shape".into()));
        }
        if action.len() != g0 || action.iter().any(|row| row.len() != t || row.iter().any(|x| x.len() != t)) {
            return Err(Error::InvalidPair("action table has the wrong shape".into()));
        }
        let adjoint_solver = match &rho {
            Representation::Polynomial(m) => {
                if m.rows() != t || m.cols() != t {
                    return Err(Error::InvalidPair("representation matrix has the wrong size".into()));
                }
                if m.entries().iter().any(|p| p.nvars() != group.size * group.size + 1) {
                    return Err(Error::InvalidPair("representation entries must use the entry variables".into()));
                }
                None
            }
            Representation::Adjoint { realization } => {
                if realization.len() != t || realization.iter().any(|m| m.rows() != group.size || m.cols() != group.size) {
                    return Err(Error::InvalidPair("realization matrices have the wrong shape".into()));
                }
                Some(BasisSolver::new(f, group.size * group.size, realization.iter().map(|m| m.entries().to_vec()).collect())?)
            }
        };
        let mut labels = group.lie_labels.clone();
        labels.extend(v.labels().iter().cloned());
        let mut parities = vec![Parity::Even; g0];
        parities.extend(vec![Parity::Odd; t]);
        let space = SuperVectorSpace::new(labels, parities)?;
        let mut brackets = vec![vec![linalg::zero_vec(f, g0 + t); g0 + t]; g0 + t];
        for i in 0..g0 {
            for j in 0..g0 {
                let c = group
                    .lie_bracket(i, j)
                    .ok_or_else(|| Error::InvalidGroup(format!("Lie algebra not closed at [{}, {}]", group.lie_labels[i], group.lie_labels[j])))?;
                brackets[i][j][..g0].clone_from_slice(&c);
            }
            for j in 0..t {
                brackets[i][g0 + j][g0..].clone_from_slice(&action[i][j]);
                brackets[g0 + j][i][g0..].clone_from_slice(&linalg::scale(&f.int(-1), &action[i][j]));
            }
        }
        for i in 0..t {
            for j in 0..t {
                brackets[g0 + i][g0 + j][..g0].clone_from_slice(&bracket_vv[i][j]);
            }
        }
        let lie = LieSuperAlgebra::new(f, space, |i, j| brackets[i][j].clone())?;
        Ok(HarishChandraPair { name: name.into(), group, v, rho, bracket_vv, action, lie, adjoint_solver })
    }

    pub fn field(&self) -> Field {
        self.group.field
    }

    pub fn dim_v(&self) -> usize {
        self.v.dim()
    }

    /// `Lie(G) ⊕ V`
    pub fn lie(&self) -> &LieSuperAlgebra {
        &self.lie
    }

    pub fn v_index(&self, label: &str) -> Option<usize> {
        self.v.index_of(label)
    }

    /// `ρ(g)` as a matrix acting on `V` coordinates (columns are images).
    pub fn rho_at<T: CommRing>(&self, g: &Mat<T>) -> Option<Mat<T>> {
        let one = g.entries().first()?.one_like();
        match &self.rho {
            Representation::Polynomial(m) => {
                let (_, det) = g.inverse_and_det()?;
                let mut vals = g.entries().to_vec();
                vals.push(det.try_inverse()?);
                m.try_map(|p| p.eval(&vals, &one))
            }
            Representation::Adjoint { realization } => {
                let inv = g.inverse()?;
                let solver = self.adjoint_solver.as_ref()?;
                let cols = realization
                    .iter()
                    .map(|r| solver.coords(g.mul(&r.lift(&one)).mul(&inv).entries()))
                    .collect::<Option<Vec<_>>>()?;
                Some(Mat::from_fn(self.dim_v(), self.dim_v(), |i, j| cols[j][i].clone()))
            }
        }
    }

    /// `[v_i, v_j]` as a matrix.
    pub fn bracket_matrix(&self, i: usize, j: usize) -> Mat<Scalar> {
        self.group.lie_matrix(&self.bracket_vv[i][j])
    }

    /// Matrix of the action of `X_k` on `V` (columns are images).
    pub fn action_matrix(&self, k: usize) -> Mat<Scalar> {
        let t = self.dim_v();
        Mat::from_fn(t, t, |i, j| self.action[k][j][i].clone())
    }

    /// Action of an arbitrary `Lie(G)` vector on `V`.
    pub fn act(&self, x: &[Scalar], v: &[Scalar]) -> Vector {
        let f = self.field();
        let mut out = linalg::zero_vec(f, self.dim_v());
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    linalg::axpy(&mut out, &(xk * vj), &self.action[k][j]);
                }
            }
        }
        out
    }

    /// `[v, w]` in `Lie(G)` coordinates for `v, w ∈ V`.
    pub fn bracket(&self, v: &[Scalar], w: &[Scalar]) -> Vector {
        let f = self.field();
        let mut out = linalg::zero_vec(f, self.group.lie_dim());
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                if !b.is_zero() {
                    linalg::axpy(&mut out, &(a * b), &self.bracket_vv[i][j]);
                }
            }
        }
        out
    }

    /// Symbolic check that `W` is stable under every generic generator.
    pub fn is_stable(&self, w: &Subspace) -> std::result::Result<(), String> {
        let f = self.field();
        for g in &self.group.generators {
            let rho = self.rho_at(&g.matrix).ok_or_else(|| format!("cannot evaluate rho at {}", g.label()))?;
            let nv = g.params.len();
            let poly_w = Subspace::span(f, self.dim_v(), w.basis().to_vec());
            for b in poly_w.basis() {
                let img: Vec<Poly> = (0..self.dim_v())
                    .map(|i| {
                        let mut acc = Poly::zero(f, nv);
                        for (j, bj) in b.iter().enumerate() {
                            acc = acc.add(&rho.get(i, j).scale(bj));
                        }
                        acc
                    })
                    .collect();
                // every monomial coefficient vector must lie in W
                let mut monomials: Vec<Vec<i32>> = img.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
                monomials.sort();
                monomials.dedup();
                for e in monomials {
                    let v: Vector = img.iter().map(|p| p.coefficient(&e)).collect();
                    if !w.contains(&v) {
                        return Err(format!("{} moves a vector out of W", g.label()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Conditions (a) symmetry, (b) equivariance on the generic generators, (c)
/// `[v,v].v = 0` as a cubic identity in formal coefficients, together with
/// consistency checks of the group model and the action.
pub fn validate_pair(p: &HarishChandraPair) -> Report {
    let f = p.field();
    let t = p.dim_v();
    let g0 = p.group.lie_dim();
    let labels = p.v.labels();
    let mut r = Report::new();
    r.extend("group: ", p.group.check());
    let a = (|| {
        for i in 0..t {
            for j in 0..t {
                if p.bracket_vv[i][j] != p.bracket_vv[j][i] {
                    return Err(format!("[{}, {}] != [{}, {}]", labels[i], labels[j], labels[j], labels[i]));
                }
            }
        }
        Ok(())
    })();
    r.record("(a) bracket symmetric", a);
    let b = (|| {
        for g in &p.group.generators {
            let rho = p.rho_at(&g.matrix).ok_or_else(|| format!("cannot evaluate rho at {}", g.label()))?;
            let ginv = g.matrix.inverse().ok_or_else(|| format!("{} is not invertible", g.label()))?;
            let one = Poly::one(f, g.params.len());
            for i in 0..t {
                for j in i..t {
                    let mut lhs = Mat::filled(p.group.size, p.group.size, &one.zero_like());
                    for k in 0..t {
                        for l in 0..t {
                            let c = rho.get(k, i).mul(rho.get(l, j));
                            if c.is_zero() {
                                continue;
                            }
                            lhs = lhs.add(&p.bracket_matrix(k, l).lift(&one).scale_by(&c));
                        }
                    }
                    let rhs = g.matrix.mul(&p.bracket_matrix(i, j).lift(&one)).mul(&ginv);
                    if lhs != rhs {
                        return Err(format!("{} at ({}, {})", g.label(), labels[i], labels[j]));
                    }
                }
            }
        }
        Ok(())
    })();
    r.record("(b) equivariant", b);
    let c = {
        let var = |i: usize| Poly::var(f, t, i);
        let mut vv = vec![Poly::zero(f, t); g0];
        for i in 0..t {
            for j in 0..t {
                let cc = var(i).mul(&var(j));
                for (k, x) in p.bracket_vv[i][j].iter().enumerate() {
                    if !x.is_zero() {
                        vv[k] = vv[k].add(&cc.scale(x));
                    }
                }
            }
        }
        let mut out = vec![Poly::zero(f, t); t];
        for (k, pk) in vv.iter().enumerate() {
            if pk.is_zero() {
                continue;
            }
            for l in 0..t {
                let pl = pk.mul(&var(l));
                for (m, x) in p.action[k][l].iter().enumerate() {
                    if !x.is_zero() {
                        out[m] = out[m].add(&pl.scale(x));
                    }
                }
            }
        }
        match out.iter().position(|q| !q.is_zero()) {
            None => Ok(()),
            Some(m) => {
                let names: Vec<String> = labels.iter().map(|l| format!("c_{l}")).collect();
                // a basis vector on which the cubic already fails, if any
                let witness = (0..t)
                    .find(|&i| {
                        let mut e = vec![0; t];
                        e[i] = 3;
                        out.iter().any(|q| !q.coefficient(&e).is_zero())
                    })
                    .map(|i| labels[i].clone());
                Err(match witness {
                    Some(v) => format!("v = {v}"),
                    None => format!("component {} is {}", labels[m], out[m].display(&names)),
                })
            }
        }
    };
    r.record("(c) [v,v].v = 0", c);
    let drho = (|| {
        let (dual, _) = truncated_poly(f, &["b"], &[], 1).map_err(|e| e.to_string())?;
        let bb = dual.basis(1);
        let one = dual.one();
        for k in 0..g0 {
            let g = Mat::identity(p.group.size, &one).add(&p.group.lie_basis[k].lift(&one).scale_by(&bb));
            let rho = p.rho_at(&g).ok_or_else(|| format!("cannot evaluate rho at I + b*{}", p.group.lie_labels[k]))?;
            let expect = Mat::identity(t, &one).add(&p.action_matrix(k).lift(&one).scale_by(&bb));
            if rho != expect {
                return Err(p.group.lie_labels[k].clone());
            }
        }
        Ok(())
    })();
    r.record("differential of rho matches the action", drho);
    let rep = (|| {
        for i in 0..g0 {
            for j in 0..g0 {
                let br = p.group.lie_bracket(i, j).ok_or("Lie algebra not closed")?;
                let mut lhs = Mat::filled(t, t, &f.zero());
                for (k, c) in br.iter().enumerate() {
                    lhs = lhs.add(&p.action_matrix(k).scale(c));
                }
                if lhs != p.action_matrix(i).commutator(&p.action_matrix(j)) {
                    return Err(format!("({}, {})", p.group.lie_labels[i], p.group.lie_labels[j]));
                }
            }
        }
        Ok(())
    })();
    r.record("action is a representation", rep);
    r
}

/// Result of the subordinated-submodule fixpoint.
#[derive(Clone, Debug)]
pub struct Subordinated {
    pub w: Subspace,
    pub iterations: usize,
    /// Whether `W` is stable under the generic generators of `G`.
    pub stable: bool,
}

/// `W_R`: start from `{w : [w,V] ⊆ Lie(R)}` and shrink by
/// `W^{k+1} = {w ∈ W^k : [[w,V],V] ⊆ W^k}` until stable. `lie_r` is a
/// subspace of `Lie(G)` coordinates.
pub fn subordinated_closure(p: &HarishChandraPair, lie_r: &Subspace) -> Result<Subordinated> {
    let f = p.field();
    let t = p.dim_v();
    if lie_r.ambient() != p.group.lie_dim() {
        return Err(Error::Dimension("Lie(R) must be given in Lie(G) coordinates".into()));
    }
    let e = |i: usize| linalg::unit_vec(f, t, i);
    // rows of the map w -> (reduce_R [w, v_j])_j
    let mut rows = Vec::new();
    for j in 0..t {
        let cols: Vec<Vector> = (0..t).map(|i| lie_r.reduce(&p.bracket(&e(i), &e(j)))).collect();
        rows.extend(linalg::transpose(&cols, p.group.lie_dim()));
    }
    let mut w = Subspace::span(f, t, linalg::nullspace(&rows, t, f));
    let mut iterations = 0;
    loop {
        let mut rows = Vec::new();
        for j in 0..t {
            for l in 0..t {
                let cols: Vec<Vector> = (0..t).map(|i| w.reduce(&p.act(&p.bracket(&e(i), &e(j)), &e(l)))).collect();
                rows.extend(linalg::transpose(&cols, t));
            }
        }
        let next = w.intersection(&Subspace::span(f, t, linalg::nullspace(&rows, t, f)));
        iterations += 1;
        if next == w {
            break;
        }
        w = next;
        if iterations > t + 1 {
            return Err(Error::Precondition("fixpoint did not stabilize".into()));
        }
    }
    for x in w.basis() {
        for j in 0..t {
            let br = p.bracket(x, &e(j));
            if !lie_r.contains(&br) {
                return Err(Error::Precondition("[W, V] is not inside Lie(R)".into()));
            }
            for l in 0..t {
                if !w.contains(&p.act(&br, &e(l))) {
                    return Err(Error::Precondition("[W, V, V] is not inside W".into()));
                }
            }
        }
    }
    let stable = p.is_stable(&w).is_ok();
    Ok(Subordinated { w, iterations, stable })
}

/// `(W_R, Lie(H_R))` with `Lie(H_R) = {x ∈ Lie(R) : x.V ⊆ W_R}`.
pub fn r_radical(p: &HarishChandraPair, lie_r: &Subspace) -> Result<(Subordinated, Subspace)> {
    let sub = subordinated_closure(p, lie_r)?;
    let f = p.field();
    let t = p.dim_v();
    let basis = lie_r.basis();
    let mut rows = Vec::new();
    for j in 0..t {
        let cols: Vec<Vector> = basis.iter().map(|x| sub.w.reduce(&p.act(x, &linalg::unit_vec(f, t, j)))).collect();
        rows.extend(linalg::transpose(&cols, t));
    }
    let kernel = linalg::nullspace(&rows, basis.len(), f);
    let vecs = kernel.into_iter().map(|c| {
        let mut x = linalg::zero_vec(f, p.group.lie_dim());
        for (ck, b) in c.iter().zip(basis) {
            linalg::axpy(&mut x, ck, b);
        }
        x
    });
    let h = Subspace::span(f, p.group.lie_dim(), vecs);
    for w in sub.w.basis() {
        for j in 0..t {
            if !h.contains(&p.bracket(w, &linalg::unit_vec(f, t, j))) {
                return Err(Error::Precondition("[W_R, V] is not inside Lie(H_R)".into()));
            }
        }
    }
    Ok((sub, h))
}

fn elementary(field: Field, n: usize, i: usize, j: usize) -> Mat<Scalar> {
    let zero = field.zero();
    Mat::from_fn(n, n, |a, b| if (a, b) == (i, j) { field.one() } else { zero.clone() })
}

fn torus_generator(field: Field, n: usize, params: &[String], active: &[usize]) -> GenericGenerator {
    let np = params.len();
    let m = Mat::from_fn(n, n, |i, j| {
        if i != j {
            Poly::zero(field, np)
        } else {
            match active.iter().position(|&a| a == i) {
                Some(k) => Poly::var(field, np, k),
                None => Poly::one(field, np),
            }
        }
    });
    GenericGenerator { params: params.to_vec(), matrix: m }
}

fn unipotent_generator(field: Field, n: usize, i: usize, j: usize, param: &str) -> GenericGenerator {
    let m = Mat::from_fn(n, n, |a, b| {
        if a == b {
            Poly::one(field, 1)
        } else if (a, b) == (i, j) {
            Poly::var(field, 1, 0)
        } else {
            Poly::zero(field, 1)
        }
    });
    GenericGenerator { params: vec![param.into()], matrix: m }
}

/// The pair of `GL(m|n)`: `G = GL_m × GL_n` block diagonal, `V` the odd
/// block matrices acting by conjugation, `[v,w] = vw + wv`. For `gl(1|1)`
/// the odd basis is named `v+ = E12`, `v- = E21`.
pub fn gl_pair(field: Field, m: usize, n: usize) -> Result<HarishChandraPair> {
    let gl = gl_super(field, m, n)?;
    let size = m + n;
    let nv = size * size + 1;
    let block = |i: usize| i < m;
    let mut equations = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if block(i) != block(j) {
                equations.push(Poly::var(field, nv, i * size + j));
            }
        }
    }
    let even: Vec<usize> = gl.lie.even_indices();
    let odd: Vec<usize> = gl.lie.odd_indices();
    let lie_labels: Vec<String> = even.iter().map(|&k| gl.lie.label(k).to_string()).collect();
    let lie_basis: Vec<Mat<Scalar>> = even.iter().map(|&k| gl.matrices[k].clone()).collect();
    let mut generators = vec![torus_generator(field, size, &(1..=size).map(|i| format!("t{i}")).collect::<Vec<_>>(), &(0..size).collect::<Vec<_>>())];
    for i in 0..size {
        for j in 0..size {
            if i != j && block(i) == block(j) {
                generators.push(unipotent_generator(field, size, i, j, &format!("s{}{}", i + 1, j + 1)));
            }
        }
    }
    let group = MatrixGroupModel::new(field, size, equations, lie_labels, lie_basis.clone(), generators)?;
    let v_labels: Vec<String> = if (m, n) == (1, 1) {
        vec!["v+".into(), "v-".into()]
    } else {
        odd.iter().map(|&k| gl.lie.label(k).to_string()).collect()
    };
    let realization: Vec<Mat<Scalar>> = odd.iter().map(|&k| gl.matrices[k].clone()).collect();
    let vsolver = BasisSolver::new(field, size * size, realization.iter().map(|m| m.entries().to_vec()).collect())?;
    let bracket_vv = realization
        .iter()
        .map(|a| {
            realization
                .iter()
                .map(|b| {
                    let ab = a.mul(b).add(&b.mul(a));
                    group.lie_coords(&ab).expect("anticommutator of odd blocks is even")
                })
                .collect()
        })
        .collect();
    let action = lie_basis
        .iter()
        .map(|x| realization.iter().map(|v| vsolver.coords(x.commutator(v).entries()).expect("odd block")).collect())
        .collect();
    HarishChandraPair::new(&format!("gl{m}{n}"), group, v_labels, Representation::Adjoint { realization }, bracket_vv, action)
}

/// `V = W ⊕ W*` over a torus times `G_a`: `[φ_i, w_j] = δ_ij x` with `x` the
/// `G_a` direction, which is central and acts trivially on `V`.
pub fn pseudoabelian_example(field: Field, n: usize) -> Result<HarishChandraPair> {
    if n == 0 {
        return Err(Error::Dimension("need n >= 1".into()));
    }
    let size = n + 2;
    let nv = size * size + 1;
    let var = |i: usize, j: usize| Poly::var(field, nv, i * size + j);
    let one = Poly::one(field, nv);
    let mut equations = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if i != j && !(i == n && j == n + 1) {
                equations.push(var(i, j));
            }
        }
    }
    equations.push(var(n, n).sub(&one));
    equations.push(var(n + 1, n + 1).sub(&one));
    let mut lie_labels: Vec<String> = (1..=n).map(|i| format!("h{i}")).collect();
    let mut lie_basis: Vec<Mat<Scalar>> = (0..n).map(|i| elementary(field, size, i, i)).collect();
    lie_labels.push("x".into());
    lie_basis.push(elementary(field, size, n, n + 1));
    let params: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let generators = vec![
        torus_generator(field, size, &params, &(0..n).collect::<Vec<_>>()),
        unipotent_generator(field, size, n, n + 1, "s"),
    ];
    let group = MatrixGroupModel::new(field, size, equations, lie_labels, lie_basis, generators)?;
    let t = 2 * n;
    let mut labels: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    labels.extend((1..=n).map(|i| format!("phi{i}")));
    // φ_i scales by t_i^{-1} = d * prod_{j != i} t_j on the group
    let rho = Mat::from_fn(t, t, |a, b| {
        if a != b {
            return Poly::zero(field, nv);
        }
        if a < n {
            var(a, a)
        } else {
            let i = a - n;
            let mut p = Poly::var(field, nv, size * size);
            for j in (0..n).filter(|&j| j != i) {
                p = p.mul(&var(j, j));
            }
            p
        }
    });
    let g0 = n + 1;
    let mut bracket_vv = vec![vec![linalg::zero_vec(field, g0); t]; t];
    for i in 0..n {
        bracket_vv[n + i][i] = linalg::unit_vec(field, g0, n);
        bracket_vv[i][n + i] = linalg::unit_vec(field, g0, n);
    }
    let mut action = vec![vec![linalg::zero_vec(field, t); t]; g0];
    for i in 0..n {
        action[i][i] = linalg::unit_vec(field, t, i);
        action[i][n + i] = linalg::scale(&field.int(-1), &linalg::unit_vec(field, t, n + i));
    }
    HarishChandraPair::new(&format!("pseudoabelian{n}"), group, labels, Representation::Polynomial(rho), bracket_vv, action)
}

/// A short sequence `(H, W) -> (G, V) -> (Q, U)` given by linear maps on the
/// odd parts; the inner group is a subgroup of `G` in the same ambient size.
#[derive(Clone, Debug)]
pub struct ExactSequenceData<'a> {
    pub inner: &'a HarishChandraPair,
    pub mid: &'a HarishChandraPair,
    pub outer: &'a HarishChandraPair,
    /// images in `V` of the basis of `W`
    pub embedding: Vec<Vector>,
    /// images in `U` of the basis of `V`
    pub projection: Vec<Vector>,
    /// Exactness of `1 -> H -> G -> Q -> 1`, which the matrix model cannot
    /// decide and is therefore supplied.
    pub even_exact: bool,
}

pub fn check_exact_sequence(s: &ExactSequenceData<'_>) -> Result<Report> {
    let f = s.mid.field();
    let (nw, nv, nu) = (s.inner.dim_v(), s.mid.dim_v(), s.outer.dim_v());
    if s.embedding.len() != nw || s.embedding.iter().any(|x| x.len() != nv) {
        return Err(Error::Dimension("embedding W -> V has the wrong shape".into()));
    }
    if s.projection.len() != nv || s.projection.iter().any(|x| x.len() != nu) {
        return Err(Error::Dimension("projection V -> U has the wrong shape".into()));
    }
    if s.inner.group.size != s.mid.group.size {
        return Err(Error::InvalidPair("inner group must live in the same matrix size".into()));
    }
    let mut r = Report::new();
    r.record("even-level exactness (supplied)", if s.even_exact { Ok(()) } else { Err("declared not exact".into()) });
    let image = Subspace::span(f, nv, s.embedding.clone());
    let proj_rows = linalg::transpose(&s.projection, nu);
    let kernel = Subspace::span(f, nv, linalg::nullspace(&proj_rows, nv, f));
    let exact = if image.dim() != nw {
        Err("W -> V is not injective".into())
    } else if linalg::rank(&s.projection, nu) != nu {
        Err("V -> U is not surjective".into())
    } else if image != kernel {
        Err("image of W differs from the kernel of V -> U".into())
    } else {
        Ok(())
    };
    r.record("(1) superspace sequence exact", exact);
    r.record("(2a) W is G-stable", s.mid.is_stable(&image));
    let trivial = (|| {
        for g in &s.inner.group.generators {
            let rho = s.mid.rho_at(&g.matrix).ok_or_else(|| format!("cannot evaluate rho at {}", g.label()))?;
            let np = g.params.len();
            let id = Mat::identity(nv, &Poly::one(f, np));
            let diff = rho.sub(&id);
            for j in 0..nv {
                let mut monomials: Vec<Vec<i32>> = (0..nv).flat_map(|i| diff.get(i, j).terms().map(|(e, _)| e.clone()).collect::<Vec<_>>()).collect();
                monomials.sort();
                monomials.dedup();
                for e in monomials {
                    let col: Vector = (0..nv).map(|i| diff.get(i, j).coefficient(&e)).collect();
                    if !image.contains(&col) {
                        return Err(format!("{} moves {} modulo W", g.label(), s.mid.v.labels()[j]));
                    }
                }
            }
        }
        Ok(())
    })();
    r.record("(2b) inner group acts trivially on V/W", trivial);
    let inner_lie = BasisSolver::new(f, s.mid.group.size * s.mid.group.size, s.inner.group.lie_basis.iter().map(|m| m.entries().to_vec()).collect());
    let c = (|| {
        for j in 0..nv {
            for w in image.basis() {
                let m = s.mid.group.lie_matrix(&s.mid.bracket(&linalg::unit_vec(f, nv, j), w));
                let inside = match &inner_lie {
                    Ok(solver) if solver.dim() > 0 => solver.coords(m.entries()).is_some(),
                    _ => m.is_zero(),
                };
                if !inside {
                    return Err(format!("[{}, W] leaves Lie(H)", s.mid.v.labels()[j]));
                }
            }
        }
        Ok(())
    })();
    r.record("(2c) [V,W] inside Lie(H)", c);
    Ok(r)
}

/// The subgroup of `G` generated by a subset of its generators, with the
/// given Lie subalgebra. Membership equations are inherited.
pub fn subgroup(g: &MatrixGroupModel, lie: &[Vector], generators: Vec<GenericGenerator>, extra_equations: Vec<Poly>) -> Result<MatrixGroupModel> {
    let labels = (0..lie.len()).map(|k| format!("y{}", k + 1)).collect();
    let basis = lie.iter().map(|c| g.lie_matrix(c)).collect();
    let mut eqs = g.equations.clone();
    eqs.extend(extra_equations);
    MatrixGroupModel::new(g.field, g.size, eqs, labels, basis, generators)
}

/// A pair with the given group and zero odd part.
pub fn purely_even_pair(name: &str, group: MatrixGroupModel) -> Result<HarishChandraPair> {
    let g0 = group.lie_dim();
    HarishChandraPair::new(name, group, vec![], Representation::Polynomial(Mat::from_rows(vec![])?), vec![], vec![vec![]; g0])
}

/// Evaluates a generic generator at scalar parameter values.
pub fn specialize(g: &GenericGenerator, values: &[Scalar]) -> Option<Mat<Scalar>> {
    let one = values.first().map(|v| v.one_like())?;
    g.matrix.try_map(|p| p.eval(values, &one))
}

/// Even group points over a coefficient algebra must have even entries.
pub fn is_even_matrix(g: &Mat<Element>) -> bool {
    g.entries().iter().all(Element::is_even)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl11_pair_validates() {
        let p = gl_pair(Field::Rational, 1, 1).unwrap();
        let r = validate_pair(&p);
        assert!(r.passed(), "{r}");
        assert!(crate::lie::check_axioms(p.lie()).passed());
        let vp = p.v_index("v+").unwrap();
        let vm = p.v_index("v-").unwrap();
        let br = p.bracket_matrix(vp, vm);
        assert_eq!(br, Mat::identity(2, &Field::Rational.one()));
    }

    #[test]
    fn broken_pairs_are_reported() {
        let q = Field::Rational;
        let p = gl_pair(q, 1, 1).unwrap();
        let mut bad = p.bracket_vv.clone();
        bad[0][1] = linalg::zero_vec(q, 2);
        let asym = HarishChandraPair::new("bad", p.group.clone(), p.v.labels().to_vec(), p.rho.clone(), bad, p.action.clone()).unwrap();
        assert!(!validate_pair(&asym).get("(a) bracket symmetric").unwrap().passed);

        // V = span{v}, [v,v] = h, h.v = v
        let nv = 2;
        let group = MatrixGroupModel::new(
            q,
            1,
            vec![],
            vec!["h".into()],
            vec![Mat::identity(1, &q.one())],
            vec![torus_generator(q, 1, &["t".into()], &[0])],
        )
        .unwrap();
        let rho = Mat::from_rows(vec![vec![Poly::var(q, nv, 0)]]).unwrap();
        let pair = HarishChandraPair::new(
            "cubic",
            group,
            vec!["v".into()],
            Representation::Polynomial(rho),
            vec![vec![vec![q.one()]]],
            vec![vec![vec![q.one()]]],
        )
        .unwrap();
        let c = validate_pair(&pair);
        let check = c.get("(c) [v,v].v = 0").unwrap();
        assert!(!check.passed);
        assert_eq!(check.witness.as_deref(), Some("v = v"));
    }

    #[test]
    fn pseudoabelian_radicals() {
        let q = Field::Rational;
        for n in 1..=3 {
            let p = pseudoabelian_example(q, n).unwrap();
            assert!(validate_pair(&p).passed(), "{}", validate_pair(&p));
            let x = Subspace::span(q, n + 1, vec![linalg::unit_vec(q, n + 1, n)]);
            let (w, h) = r_radical(&p, &x).unwrap();
            assert_eq!(w.w.dim(), 2 * n);
            assert_eq!(h, x);
            let (w0, h0) = r_radical(&p, &Subspace::zero(q, n + 1)).unwrap();
            assert!(w0.w.is_zero() && h0.is_zero());
        }
    }

    #[test]
    fn gl11_scalar_radical() {
        let q = Field::Rational;
        let p = gl_pair(q, 1, 1).unwrap();
        let scalar = Subspace::span(q, 2, vec![vec![q.one(), q.one()]]);
        let (w, h) = r_radical(&p, &scalar).unwrap();
        assert_eq!(w.w.dim(), 2);
        assert_eq!(h, scalar);
    }
}
