//! Yetter–Drinfel'd modules (left module, right comodule) and module algebras.
//!
//! A module of dimension `m` over `H` (dimension `n`) stores one `m x m`
//! action matrix per basis element of `H` and an `(m * n) x m` coaction
//! matrix whose column `i` is `χ(v_i)` on the flat basis `v_j ⊗ e_b ↦ j * n + b`.

use std::sync::Arc;

use crate::convolution::{cocycle_twist, conv_inverse, same_host, twist_rform, Functional};
use crate::double::{DoubleResult, RMatrix};
use crate::error::{Error, Result};
use crate::hopf::{support, FinHopf};
use crate::linalg::Matrix;
use crate::report::{CheckReport, Witness};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct YDModule {
    host: Arc<FinHopf>,
    dim: usize,
    act: Vec<Matrix>,
    coact: Matrix,
}

impl PartialEq for YDModule {
    fn eq(&self, other: &YDModule) -> bool {
        same_host(&self.host, &other.host) && self.act == other.act && self.coact == other.coact
    }
}

impl YDModule {
    pub fn new(host: Arc<FinHopf>, act: Vec<Matrix>, coact: Matrix) -> Result<YDModule> {
        let n = host.dim();
        let m = coact.cols();
        if act.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for a {n}-dimensional host",
                act.len()
            )));
        }
        if act.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::DimensionMismatch(format!("action matrices must be {m} x {m}")));
        }
        if coact.rows() != m * n {
            return Err(Error::DimensionMismatch(format!("coaction must be {} x {m}", m * n)));
        }
        let field = host.field();
        if let Some(x) = act.iter().chain(std::iter::once(&coact)).find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field, x.field()));
        }
        Ok(YDModule {
            host,
            dim: m,
            act,
            coact,
        })
    }

    pub fn host(&self) -> &Arc<FinHopf> {
        &self.host
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The matrix of `e_a · -`.
    pub fn action(&self, a: usize) -> &Matrix {
        &self.act[a]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.act
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coact
    }

    /// The matrix of `x · -` for an arbitrary `x ∈ H`.
    pub fn action_of(&self, x: &[Scalar]) -> Matrix {
        let f = self.host.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (a, c) in support(x) {
            out = out.add(&self.act[a].scale(c));
        }
        out
    }

    pub fn act_on(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.host.field().zero(); self.dim];
        for (a, c) in support(x) {
            let w = self.act[a].apply(v);
            for (o, wi) in out.iter_mut().zip(&w) {
                *o += &(c * wi);
            }
        }
        out
    }

    pub fn coact_on(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.coact.apply(v)
    }

    fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.host.field().zero(); self.dim];
        v[i] = self.host.field().one();
        v
    }

    /// `χ(v_i)` as `(j, b, coeff)` terms.
    fn coact_terms(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        let n = self.host.dim();
        (0..self.dim * n)
            .filter(|&p| !self.coact.get(p, i).is_zero())
            .map(|p| (p / n, p % n, self.coact.get(p, i).clone()))
            .collect()
    }
}

/// Right-multiplies the `H` leg of an element of `M ⊗ H` by `y`, or left-multiplies when `left`.
fn mul_h_leg(h: &FinHopf, m: usize, x: &[Scalar], y: &[Scalar], left: bool) -> Vec<Scalar> {
    let n = h.dim();
    let mut out = vec![h.field().zero(); m * n];
    for (p, c) in support(x) {
        let (j, b) = (p / n, p % n);
        let e = h.basis_vector(b);
        let prod = if left { h.mul(y, &e) } else { h.mul(&e, y) };
        for (z, d) in support(&prod) {
            out[j * n + z] += &(c * d);
        }
    }
    out
}

fn module_witness(m: &YDModule) -> (Option<Witness>, Option<Witness>) {
    let h = &m.host;
    let n = h.dim();
    let id = Matrix::identity(h.field(), m.dim);
    let unit = if m.action_of(h.unit()) == id {
        None
    } else {
        Some(Witness::note(&[], "1 does not act as the identity"))
    };
    let mut assoc = None;
    'a: for a in 0..n {
        for b in 0..n {
            let lhs = m.action_of(&crate::hopf::to_dense(h.field(), n, h.mul_basis(a, b)));
            let rhs = m.act[a].mul(&m.act[b]);
            if lhs != rhs {
                let j = (0..m.dim).find(|&j| lhs.column(j) != rhs.column(j)).unwrap_or(0);
                assoc = Some(Witness::new(&[a, b, j], &lhs.column(j), &rhs.column(j)));
                break 'a;
            }
        }
    }
    (unit, assoc)
}

fn comodule_witness(m: &YDModule) -> (Option<Witness>, Option<Witness>) {
    let h = &m.host;
    let n = h.dim();
    let f = h.field();
    let mut counit = None;
    for i in 0..m.dim {
        let mut v = vec![f.zero(); m.dim];
        for (j, b, c) in m.coact_terms(i) {
            v[j] += &(&c * &h.counit()[b]);
        }
        if v != m.basis(i) {
            counit = Some(Witness::new(&[i], &v, &m.basis(i)));
            break;
        }
    }
    let mut coassoc = None;
    for i in 0..m.dim {
        // (χ ⊗ id)χ and (id ⊗ Δ)χ in M ⊗ H ⊗ H
        let mut lhs = vec![f.zero(); m.dim * n * n];
        let mut rhs = vec![f.zero(); m.dim * n * n];
        for (j, b, c) in m.coact_terms(i) {
            for (k, a, d) in m.coact_terms(j) {
                lhs[(k * n + a) * n + b] += &(&c * &d);
            }
            for (p, d) in h.coproduct_basis(b) {
                rhs[j * n * n + p] += &(&c * d);
            }
        }
        if lhs != rhs {
            coassoc = Some(Witness::new(&[i], &lhs, &rhs));
            break;
        }
    }
    (counit, coassoc)
}

/// `Σ h_(1)·m_(0) ⊗ h_(2) m_(1) = Σ (h_(2)·m)_(0) ⊗ (h_(2)·m)_(1) h_(1)` on basis pairs.
fn compatibility_witness(m: &YDModule) -> Option<Witness> {
    let h = &m.host;
    let n = h.dim();
    let f = h.field();
    for a in 0..n {
        for i in 0..m.dim {
            let mut lhs = vec![f.zero(); m.dim * n];
            let mut rhs = vec![f.zero(); m.dim * n];
            for (p, c) in h.coproduct_basis(a) {
                let (h1, h2) = (p / n, p % n);
                for (j, b, d) in m.coact_terms(i) {
                    let v = m.act[h1].column(j);
                    let w = to_dense_sparse(h, h.mul_basis(h2, b));
                    let cd = c * &d;
                    for (x, vx) in support(&v) {
                        for (z, wz) in support(&w) {
                            lhs[x * n + z] += &(&cd * &(vx * wz));
                        }
                    }
                }
                let moved = m.coact.apply(&m.act[h2].column(i));
                let shifted = mul_h_leg(h, m.dim, &moved, &h.basis_vector(h1), false);
                for (x, y) in rhs.iter_mut().zip(&shifted) {
                    *x += &(c * y);
                }
            }
            if lhs != rhs {
                return Some(Witness::new(&[a, i], &lhs, &rhs));
            }
        }
    }
    None
}

fn to_dense_sparse(h: &FinHopf, s: &[(usize, Scalar)]) -> Vec<Scalar> {
    crate::hopf::to_dense(h.field(), h.dim(), s)
}

/// Module axioms, comodule axioms and the Yetter–Drinfel'd compatibility.
pub fn check_yd(m: &YDModule) -> CheckReport {
    let mut report = CheckReport::new();
    let (unit, assoc) = module_witness(m);
    report.record("module_unit", unit);
    report.record("module_associative", assoc);
    let (counit, coassoc) = comodule_witness(m);
    report.record("comodule_counit", counit);
    report.record("comodule_coassociative", coassoc);
    report.record("compatibility", compatibility_witness(m));
    report
}

fn require_yd(m: YDModule) -> Result<YDModule> {
    match check_yd(&m).first_failure() {
        None => Ok(m),
        Some(c) => Err(Error::StructureInvalid(format!("induced structure fails {}", c.name))),
    }
}

/// Completes a right comodule to a YD module with `h·a = Σ a_(0) r(h ⊗ a_(1))`.
pub fn induce_from_rform(coact: Matrix, r: &Functional) -> Result<YDModule> {
    let m = YDModule::new(
        r.host().clone(),
        vec![Matrix::zeros(r.host().field(), coact.cols(), coact.cols()); r.host().dim()],
        coact,
    )?;
    require_yd(with_induced_action(&m, r))
}

fn with_induced_action(m: &YDModule, r: &Functional) -> YDModule {
    let h = &m.host;
    let n = h.dim();
    let f = h.field();
    let mut act = vec![Matrix::zeros(f, m.dim, m.dim); n];
    for i in 0..m.dim {
        for (j, b, c) in m.coact_terms(i) {
            for (a, mat) in act.iter_mut().enumerate() {
                let v = r.value(&[a, b]);
                if !v.is_zero() {
                    mat.add_to(j, i, &(&c * v));
                }
            }
        }
    }
    YDModule {
        host: r.host().clone(),
        dim: m.dim,
        act,
        coact: m.coact.clone(),
    }
}

/// Completes a left module to a YD module with `χ_R(a) = Σ R_2·a ⊗ R_1`.
pub fn induce_from_rmatrix(act: Vec<Matrix>, r: &RMatrix) -> Result<YDModule> {
    let h = r.host();
    let n = h.dim();
    let f = h.field();
    let Some(m) = act.first().map(Matrix::cols) else {
        return Err(Error::DimensionMismatch("no action matrices".into()));
    };
    let mut coact = Matrix::zeros(f, m * n, m);
    for (p, c) in support(r.coeffs()) {
        let (x, y) = (p / n, p % n);
        let Some(ay) = act.get(y) else {
            return Err(Error::DimensionMismatch("action has too few matrices".into()));
        };
        for i in 0..m {
            for j in 0..m {
                let v = ay.get(j, i);
                if !v.is_zero() {
                    coact.add_to(j * n + x, i, &(c * v));
                }
            }
        }
    }
    require_yd(YDModule::new(h.clone(), act, coact)?)
}

/// Restricts a `D(H)`-module (one matrix per basis element of `D(H)`) to `H`:
/// the action through `a ↦ ε⊗a` and the coaction `χ(m) = Σ_b (f_b ⊗ 1)·m ⊗ e_b`.
pub fn restrict_double_module(h: Arc<FinHopf>, d: &DoubleResult, act: &[Matrix]) -> Result<YDModule> {
    let n = h.dim();
    let f = h.field();
    if act.len() != n * n {
        return Err(Error::DimensionMismatch(
            "need one matrix per basis element of D(H)".into(),
        ));
    }
    let m = act[0].cols();
    let through = |col: Vec<Scalar>| {
        let mut out = Matrix::zeros(f, m, m);
        for (p, c) in support(&col) {
            out = out.add(&act[p].scale(c));
        }
        out
    };
    let hact: Vec<Matrix> = (0..n).map(|a| through(d.embed_h.column(a))).collect();
    let mut coact = Matrix::zeros(f, m * n, m);
    for b in 0..n {
        let fb = through(d.embed_dual.column(b));
        for i in 0..m {
            for j in 0..m {
                let v = fb.get(j, i);
                if !v.is_zero() {
                    coact.set(j * n + b, i, v.clone());
                }
            }
        }
    }
    require_yd(YDModule::new(h, hact, coact)?)
}

/// `M ⊗̃ N`: `h·(a⊗b) = h_(1)·a ⊗ h_(2)·b`, `χ(a⊗b) = a_(0) ⊗ b_(0) ⊗ b_(1)a_(1)`.
pub fn yd_tensor(m: &YDModule, nmod: &YDModule) -> Result<YDModule> {
    if !same_host(&m.host, &nmod.host) {
        return Err(Error::HostMismatch);
    }
    let h = &m.host;
    let n = h.dim();
    let f = h.field();
    let (dm, dn) = (m.dim, nmod.dim);
    let act = (0..n)
        .map(|a| {
            let mut out = Matrix::zeros(f, dm * dn, dm * dn);
            for (p, c) in h.coproduct_basis(a) {
                out = out.add(&m.act[p / n].kron(&nmod.act[p % n]).scale(c));
            }
            out
        })
        .collect();
    let mut coact = Matrix::zeros(f, dm * dn * n, dm * dn);
    for i in 0..dm {
        let ti = m.coact_terms(i);
        for j in 0..dn {
            for (p, x, c) in &ti {
                for (q, y, d) in nmod.coact_terms(j) {
                    let cd = c * &d;
                    for (z, e) in h.mul_basis(y, *x) {
                        coact.add_to((p * dn + q) * n + z, i * dn + j, &(&cd * e));
                    }
                }
            }
        }
    }
    YDModule::new(h.clone(), act, coact)
}

/// `φ_{MN}(m ⊗ n) = Σ n_(0) ⊗ n_(1)·m`, a `(dim N · dim M) x (dim M · dim N)` matrix.
pub fn braiding(m: &YDModule, nmod: &YDModule) -> Result<Matrix> {
    if !same_host(&m.host, &nmod.host) {
        return Err(Error::HostMismatch);
    }
    let f = m.host.field();
    let (dm, dn) = (m.dim, nmod.dim);
    let mut out = Matrix::zeros(f, dn * dm, dm * dn);
    for i in 0..dm {
        for j in 0..dn {
            for (q, y, c) in nmod.coact_terms(j) {
                for k in 0..dm {
                    let v = m.act[y].get(k, i);
                    if !v.is_zero() {
                        out.add_to(q * dm + k, i * dn + j, &(&c * v));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `f: M → N` (a `dim N x dim M` matrix) commutes with both structures.
pub fn is_yd_morphism(map: &Matrix, m: &YDModule, nmod: &YDModule) -> Result<CheckReport> {
    if !same_host(&m.host, &nmod.host) {
        return Err(Error::HostMismatch);
    }
    if map.rows() != nmod.dim || map.cols() != m.dim {
        return Err(Error::DimensionMismatch("morphism shape".into()));
    }
    let h = &m.host;
    let mut report = CheckReport::new();
    let mut fail = None;
    for a in 0..h.dim() {
        let lhs = map.mul(&m.act[a]);
        let rhs = nmod.act[a].mul(map);
        if lhs != rhs {
            let j = (0..m.dim).find(|&j| lhs.column(j) != rhs.column(j)).unwrap_or(0);
            fail = Some(Witness::new(&[a, j], &lhs.column(j), &rhs.column(j)));
            break;
        }
    }
    report.record("module_map", fail);
    let lhs = map.kron(&Matrix::identity(h.field(), h.dim())).mul(&m.coact);
    let rhs = nmod.coact.mul(map);
    if lhs == rhs {
        report.pass("comodule_map");
    } else {
        let j = (0..m.dim).find(|&j| lhs.column(j) != rhs.column(j)).unwrap_or(0);
        report.fail("comodule_map", Witness::new(&[j], &lhs.column(j), &rhs.column(j)));
    }
    Ok(report)
}

fn compare_matrices(report: &mut CheckReport, name: &str, lhs: &Matrix, rhs: &Matrix) {
    if lhs == rhs {
        report.pass(name);
    } else {
        let j = (0..lhs.cols()).find(|&j| lhs.column(j) != rhs.column(j)).unwrap_or(0);
        report.fail(name, Witness::new(&[j], &lhs.column(j), &rhs.column(j)));
    }
}

/// Braiding properties on a triple: `φ_{MN}` is an invertible YD morphism,
/// the two hexagon identities and the braid relation on `M ⊗ N ⊗ P`.
pub fn check_braiding(m: &YDModule, nmod: &YDModule, p: &YDModule) -> Result<CheckReport> {
    let f = m.host.field();
    let id = |x: &YDModule| Matrix::identity(f, x.dim);
    let mut report = CheckReport::new();
    let mn = yd_tensor(m, nmod)?;
    let nm = yd_tensor(nmod, m)?;
    let phi_mn = braiding(m, nmod)?;
    report.merge("braiding.", is_yd_morphism(&phi_mn, &mn, &nm)?);
    if phi_mn.inverse()?.is_some() {
        report.pass("braiding.invertible");
    } else {
        report.fail("braiding.invertible", Witness::note(&[], "singular"));
    }
    let phi_mp = braiding(m, p)?;
    let phi_np = braiding(nmod, p)?;
    // φ_{M, N⊗P} = (id_N ⊗ φ_{MP})(φ_{MN} ⊗ id_P)
    let lhs = braiding(m, &yd_tensor(nmod, p)?)?;
    let rhs = id(nmod).kron(&phi_mp).mul(&phi_mn.kron(&id(p)));
    compare_matrices(&mut report, "hexagon_left", &lhs, &rhs);
    // φ_{M⊗N, P} = (φ_{MP} ⊗ id_N)(id_M ⊗ φ_{NP})
    let lhs = braiding(&mn, p)?;
    let rhs = phi_mp.kron(&id(nmod)).mul(&id(m).kron(&phi_np));
    compare_matrices(&mut report, "hexagon_right", &lhs, &rhs);
    // (φ_{NP} ⊗ id_M)(id_N ⊗ φ_{MP})(φ_{MN} ⊗ id_P) = (id_P ⊗ φ_{MN})(φ_{MP} ⊗ id_N)(id_M ⊗ φ_{NP})
    let lhs = phi_np
        .kron(&id(m))
        .mul(&id(nmod).kron(&phi_mp))
        .mul(&phi_mn.kron(&id(p)));
    let rhs = id(p)
        .kron(&phi_mn)
        .mul(&phi_mp.kron(&id(nmod)))
        .mul(&id(m).kron(&phi_np));
    compare_matrices(&mut report, "yang_baxter", &lhs, &rhs);
    Ok(report)
}

/// `φ_{NM} ∘ φ_{MN} = id`.
pub fn braiding_is_symmetric(m: &YDModule, nmod: &YDModule) -> Result<bool> {
    let there = braiding(m, nmod)?;
    let back = braiding(nmod, m)?;
    Ok(back.mul(&there).is_identity())
}

/// A YD module with an associative unital product; `mult` is `m x m²`
/// with column `i * m + j` equal to `v_i v_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct YDAlgebra {
    module: YDModule,
    mult: Matrix,
    unit: Vec<Scalar>,
}

impl YDAlgebra {
    pub fn new(module: YDModule, mult: Matrix, unit: Vec<Scalar>) -> Result<YDAlgebra> {
        let m = module.dim;
        if mult.rows() != m || mult.cols() != m * m || unit.len() != m {
            return Err(Error::DimensionMismatch("algebra product must be m x m²".into()));
        }
        Ok(YDAlgebra { module, mult, unit })
    }

    pub fn module(&self) -> &YDModule {
        &self.module
    }

    pub fn host(&self) -> &Arc<FinHopf> {
        &self.module.host
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mult.apply(&crate::hopf::kron_vec(x, y))
    }

    fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mult.column(i * self.dim() + j)
    }
}

/// Every YD-module-algebra axiom: the module checks plus associativity,
/// unit, `h·(ab) = Σ (h_(1)·a)(h_(2)·b)`, `h·1 = ε(h)1`,
/// `χ(ab) = Σ a_(0)b_(0) ⊗ b_(1)a_(1)` and `χ(1) = 1 ⊗ 1`.
pub fn check_yd_algebra(a: &YDAlgebra) -> CheckReport {
    let mut report = check_yd(&a.module);
    let h = a.host().clone();
    let n = h.dim();
    let m = a.dim();
    let f = h.field();
    let basis = |i: usize| a.module.basis(i);

    let mut fail = None;
    'assoc: for i in 0..m {
        for j in 0..m {
            let ij = a.mul_basis(i, j);
            for k in 0..m {
                let lhs = a.mul(&ij, &basis(k));
                let rhs = a.mul(&basis(i), &a.mul_basis(j, k));
                if lhs != rhs {
                    fail = Some(Witness::new(&[i, j, k], &lhs, &rhs));
                    break 'assoc;
                }
            }
        }
    }
    report.record("associativity", fail);

    let mut fail = None;
    for i in 0..m {
        let e = basis(i);
        let l = a.mul(&a.unit, &e);
        let r = a.mul(&e, &a.unit);
        if l != e || r != e {
            fail = Some(Witness::new(&[i], if l != e { &l } else { &r }, &e));
            break;
        }
    }
    report.record("unit", fail);

    let mut fail = None;
    'ma: for x in 0..n {
        for i in 0..m {
            for j in 0..m {
                let lhs = a.module.act[x].apply(&a.mul_basis(i, j));
                let mut rhs = vec![f.zero(); m];
                for (p, c) in h.coproduct_basis(x) {
                    let prod = a.mul(&a.module.act[p / n].column(i), &a.module.act[p % n].column(j));
                    for (o, v) in rhs.iter_mut().zip(&prod) {
                        *o += &(c * v);
                    }
                }
                if lhs != rhs {
                    fail = Some(Witness::new(&[x, i, j], &lhs, &rhs));
                    break 'ma;
                }
            }
        }
    }
    report.record("module_algebra", fail);

    let mut fail = None;
    for x in 0..n {
        let lhs = a.module.act[x].apply(&a.unit);
        let rhs: Vec<Scalar> = a.unit.iter().map(|u| u * &h.counit()[x]).collect();
        if lhs != rhs {
            fail = Some(Witness::new(&[x], &lhs, &rhs));
            break;
        }
    }
    report.record("module_unit_preserved", fail);

    let mut fail = None;
    'ca: for i in 0..m {
        let ti = a.module.coact_terms(i);
        for j in 0..m {
            let lhs = a.module.coact.apply(&a.mul_basis(i, j));
            let mut rhs = vec![f.zero(); m * n];
            for (p, x, c) in &ti {
                for (q, y, d) in a.module.coact_terms(j) {
                    let prod = a.mul_basis(*p, q);
                    let hx = to_dense_sparse(&h, h.mul_basis(y, *x));
                    let cd = c * &d;
                    for (s, u) in support(&prod) {
                        for (z, v) in support(&hx) {
                            rhs[s * n + z] += &(&cd * &(u * v));
                        }
                    }
                }
            }
            if lhs != rhs {
                fail = Some(Witness::new(&[i, j], &lhs, &rhs));
                break 'ca;
            }
        }
    }
    report.record("comodule_algebra", fail);

    let lhs = a.module.coact.apply(&a.unit);
    let rhs = crate::hopf::kron_vec(&a.unit, h.unit());
    if lhs == rhs {
        report.pass("comodule_unit_preserved");
    } else {
        report.fail("comodule_unit_preserved", Witness::new(&[], &lhs, &rhs));
    }
    report
}

/// Algebra-map and module-map checks for `f: A → B`.
pub fn is_yd_algebra_morphism(map: &Matrix, a: &YDAlgebra, b: &YDAlgebra) -> Result<CheckReport> {
    let mut report = is_yd_morphism(map, &a.module, &b.module)?;
    let m = a.dim();
    let mut fail = None;
    'm: for i in 0..m {
        for j in 0..m {
            let lhs = map.apply(&a.mul_basis(i, j));
            let rhs = b.mul(&map.column(i), &map.column(j));
            if lhs != rhs {
                fail = Some(Witness::new(&[i, j], &lhs, &rhs));
                break 'm;
            }
        }
    }
    report.record("multiplicative", fail);
    let fu = map.apply(&a.unit);
    if fu == b.unit {
        report.pass("unital");
    } else {
        report.fail("unital", Witness::new(&[], &fu, &b.unit));
    }
    Ok(report)
}

/// `A # B` on `A ⊗̃ B` with `(a#c)(b#d) = Σ a b_(0) # (b_(1)·c) d`.
pub fn smash(a: &YDAlgebra, b: &YDAlgebra) -> Result<YDAlgebra> {
    let module = yd_tensor(&a.module, &b.module)?;
    let h = a.host();
    let f = h.field();
    let (ma, mb) = (a.dim(), b.dim());
    let dim = ma * mb;
    let mut mult = Matrix::zeros(f, dim, dim * dim);
    for i in 0..ma {
        for j in 0..mb {
            for k in 0..ma {
                let tk = a.module.coact_terms(k);
                for l in 0..mb {
                    let col = (i * mb + j) * dim + k * mb + l;
                    for (k0, y, c) in &tk {
                        let left = a.mul_basis(i, *k0);
                        let moved = b.module.act[*y].column(j);
                        let right = b.mul(&moved, &b.module.basis(l));
                        for (p, u) in support(&left) {
                            for (q, v) in support(&right) {
                                mult.add_to(p * mb + q, col, &(c * &(u * v)));
                            }
                        }
                    }
                }
            }
        }
    }
    let unit = crate::hopf::kron_vec(&a.unit, &b.unit);
    YDAlgebra::new(module, mult, unit)
}

/// `Ā`: the product `m ∘ φ_{AA}`, `a ∘ b = Σ b_(0) (b_(1)·a)`.
pub fn yd_opposite(a: &YDAlgebra) -> YDAlgebra {
    let phi = braiding(&a.module, &a.module).expect("same host");
    YDAlgebra {
        module: a.module.clone(),
        mult: a.mult.mul(&phi),
        unit: a.unit.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndSide {
    /// `End(P)` with composition.
    Standard,
    /// `End(P)^op`.
    Op,
}

/// `End(P)` on the matrix units `E_rs` (flat `r * m + s`, `E_rs v_s = v_r`).
///
/// Standard: `(h·f)(m) = Σ h_(1)·f(S(h_(2))·m)` and
/// `χ(f)(m) = Σ f(m_(0))_(0) ⊗ S⁻¹(m_(1)) f(m_(0))_(1)`.
/// Op: `(h·f)(m) = Σ h_(2)·f(S⁻¹(h_(1))·m)` and
/// `χ(f)(m) = Σ f(m_(0))_(0) ⊗ f(m_(0))_(1) S(m_(1))`.
pub fn end_algebra(p: &YDModule, side: EndSide) -> Result<YDAlgebra> {
    let h = &p.host;
    let n = h.dim();
    let f = h.field();
    let m = p.dim;
    if m == 0 {
        return Err(Error::DimensionMismatch("End of the zero module".into()));
    }
    let (s, s_inv) = h.require_antipode()?;
    let mm = m * m;
    let unit_e = |r: usize, c: usize| {
        let mut e = Matrix::zeros(f, m, m);
        e.set(r, c, f.one());
        e
    };
    let flatten = |x: &Matrix| -> Vec<Scalar> { (0..mm).map(|q| x.get(q / m, q % m).clone()).collect() };

    let act: Vec<Matrix> = (0..n)
        .map(|a| {
            let cols: Vec<Vec<Scalar>> = (0..mm)
                .map(|q| {
                    let e = unit_e(q / m, q % m);
                    let mut out = Matrix::zeros(f, m, m);
                    for (pq, c) in h.coproduct_basis(a) {
                        let (h1, h2) = (pq / n, pq % n);
                        let term = match side {
                            EndSide::Standard => p.act[h1].mul(&e).mul(&p.action_of(&s.column(h2))),
                            EndSide::Op => p.act[h2].mul(&e).mul(&p.action_of(&s_inv.column(h1))),
                        };
                        out = out.add(&term.scale(c));
                    }
                    flatten(&out)
                })
                .collect();
            Matrix::from_columns(f, mm, &cols).expect("shape")
        })
        .collect();

    let mut coact = Matrix::zeros(f, mm * n, mm);
    for r in 0..m {
        let tr = p.coact_terms(r);
        for sidx in 0..m {
            let col = r * m + sidx;
            for i in 0..m {
                for (j, b, c) in p.coact_terms(i) {
                    if j != sidx {
                        continue;
                    }
                    for (pp, q, d) in &tr {
                        let prod = match side {
                            EndSide::Standard => h.mul(&s_inv.column(b), &h.basis_vector(*q)),
                            EndSide::Op => h.mul(&h.basis_vector(*q), &s.column(b)),
                        };
                        let cd = &c * d;
                        for (z, v) in support(&prod) {
                            coact.add_to((pp * m + i) * n + z, col, &(&cd * v));
                        }
                    }
                }
            }
        }
    }
    let module = YDModule::new(h.clone(), act, coact)?;
    let mut mult = Matrix::zeros(f, mm, mm * mm);
    for x in 0..mm {
        let (r, sx) = (x / m, x % m);
        for y in 0..mm {
            let (t, u) = (y / m, y % m);
            match side {
                EndSide::Standard if sx == t => mult.set(r * m + u, x * mm + y, f.one()),
                EndSide::Op if u == r => mult.set(t * m + sx, x * mm + y, f.one()),
                _ => {}
            }
        }
    }
    let unit = flatten(&Matrix::identity(f, m));
    YDAlgebra::new(module, mult, unit)
}

/// `F: A # Ā → End(A)`, `F(a # b̄)(c) = Σ a c_(0) (c_(1)·b)`, and
/// `G: Ā # A → End(A)^op`, `G(ā # b)(c) = Σ a_(0) (a_(1)·c) b`.
pub fn map_fg(a: &YDAlgebra) -> (Matrix, Matrix) {
    let m = a.dim();
    let f = a.host().field();
    let mm = m * m;
    let mut fm = Matrix::zeros(f, mm, mm);
    let mut gm = Matrix::zeros(f, mm, mm);
    for i in 0..m {
        let ti = a.module.coact_terms(i);
        for j in 0..m {
            let col = i * m + j;
            for k in 0..m {
                for (k0, y, c) in a.module.coact_terms(k) {
                    let moved = a.module.act[y].column(j);
                    let v = a.mul(&a.mul_basis(i, k0), &moved);
                    for (pp, x) in support(&v) {
                        fm.add_to(pp * m + k, col, &(&c * x));
                    }
                }
                for (i0, y, c) in &ti {
                    let moved = a.module.act[*y].column(k);
                    let v = a.mul(&a.mul(&a.module.basis(*i0), &moved), &a.module.basis(j));
                    for (pp, x) in support(&v) {
                        gm.add_to(pp * m + k, col, &(c * x));
                    }
                }
            }
        }
    }
    (fm, gm)
}

/// `F` and `G` are YD-algebra maps into `End(A)` and `End(A)^op`, and both are bijective.
pub fn check_fg(a: &YDAlgebra) -> Result<CheckReport> {
    let (fm, gm) = map_fg(a);
    let bar = yd_opposite(a);
    let mut report = CheckReport::new();
    let src_f = smash(a, &bar)?;
    let src_g = smash(&bar, a)?;
    let end = end_algebra(&a.module, EndSide::Standard)?;
    let end_op = end_algebra(&a.module, EndSide::Op)?;
    report.merge("F.", is_yd_algebra_morphism(&fm, &src_f, &end)?);
    report.merge("G.", is_yd_algebra_morphism(&gm, &src_g, &end_op)?);
    for (name, x) in [("F.bijective", &fm), ("G.bijective", &gm)] {
        if x.inverse()?.is_some() {
            report.pass(name);
        } else {
            report.fail(name, Witness::note(&[], &format!("rank {} of {}", x.rank(), x.rows())));
        }
    }
    Ok(report)
}

/// `F` and `G` are both invertible (and `A ≠ 0`).
pub fn is_azumaya(a: &YDAlgebra) -> bool {
    if a.dim() == 0 {
        return false;
    }
    let (fm, gm) = map_fg(a);
    matches!(fm.inverse(), Ok(Some(_))) && matches!(gm.inverse(), Ok(Some(_)))
}

/// The duality functor on modules: the same space over `H*`, with
/// `ξ ⇀ m = (id ⊗ ξ)χ(m)` and the coaction `ρ(m) = Σ_a (e_a·m) ⊗ f_a`.
pub fn dualize_yd(m: &YDModule) -> Result<YDModule> {
    let dual = Arc::new(m.host.dual()?);
    dualize_onto(m, dual)
}

/// As `dualize_yd`, reusing an already computed dual host.
pub fn dualize_onto(m: &YDModule, dual: Arc<FinHopf>) -> Result<YDModule> {
    let n = m.host.dim();
    if dual.dim() != n || dual.field() != m.host.field() {
        return Err(Error::HostMismatch);
    }
    let f = dual.field();
    let d = m.dim;
    let mut act = vec![Matrix::zeros(f, d, d); n];
    let mut coact = Matrix::zeros(f, d * n, d);
    for i in 0..d {
        for (j, b, c) in m.coact_terms(i) {
            act[b].set(j, i, c);
        }
        for a in 0..n {
            for j in 0..d {
                let v = m.act[a].get(j, i);
                if !v.is_zero() {
                    coact.set(j * n + a, i, v.clone());
                }
            }
        }
    }
    YDModule::new(dual, act, coact)
}

/// The duality functor on algebras: dual structure and the opposite product.
pub fn dualize_alg(a: &YDAlgebra) -> Result<YDAlgebra> {
    let dual = Arc::new(a.host().dual()?);
    dualize_alg_onto(a, dual)
}

pub fn dualize_alg_onto(a: &YDAlgebra, dual: Arc<FinHopf>) -> Result<YDAlgebra> {
    let module = dualize_onto(&a.module, dual)?;
    let m = a.dim();
    let flip = Matrix::flip(a.host().field(), m, m);
    YDAlgebra::new(module, a.mult.mul(&flip), a.unit.clone())
}

/// `τ_{M,N} ∘ ψ_{𝒟N,𝒟M} = φ_{MN} ∘ τ_{N,M}`, with `ψ` the braiding over `H*`.
pub fn check_duality_braiding(m: &YDModule, nmod: &YDModule, dual: &Arc<FinHopf>) -> Result<CheckReport> {
    let f = m.host.field();
    let dm = dualize_onto(m, dual.clone())?;
    let dn = dualize_onto(nmod, dual.clone())?;
    let psi = braiding(&dn, &dm)?;
    let lhs = Matrix::flip(f, m.dim, nmod.dim).mul(&psi);
    let rhs = braiding(m, nmod)?.mul(&Matrix::flip(f, nmod.dim, m.dim));
    let mut report = CheckReport::new();
    compare_matrices(&mut report, "braiding_duality", &lhs, &rhs);
    Ok(report)
}

/// `τ: 𝒟(B # A) → 𝒟(A) # 𝒟(B)` is an isomorphism of YD algebras.
pub fn check_duality_smash(a: &YDAlgebra, b: &YDAlgebra, dual: &Arc<FinHopf>) -> Result<CheckReport> {
    let f = a.host().field();
    let src = dualize_alg_onto(&smash(b, a)?, dual.clone())?;
    let dst = smash(&dualize_alg_onto(a, dual.clone())?, &dualize_alg_onto(b, dual.clone())?)?;
    let tau = Matrix::flip(f, b.dim(), a.dim());
    let mut report = is_yd_algebra_morphism(&tau, &src, &dst)?;
    if tau.inverse()?.is_some() {
        report.pass("bijective");
    } else {
        report.fail("bijective", Witness::note(&[], "singular"));
    }
    Ok(report)
}

/// Whether the action of `m` is the one induced from its coaction by `r`.
pub fn action_is_induced(m: &YDModule, r: &Functional) -> bool {
    same_host(&m.host, r.host()) && with_induced_action(m, r).act == m.act
}

/// The twist `A ↦ A_{σ⁻¹τ}` for comodule-induced algebras.
///
/// The product becomes `a·b = Σ a_(0) b_(0) σ⁻¹(b_(1) ⊗ a_(1))` over
/// `_σH_{σ⁻¹}`, the coaction is kept and the action is re-induced with
/// `r_σ = (στ) * r * σ⁻¹`. Returns the algebra together with `r_σ`.
pub fn twist_alg(a: &YDAlgebra, r: &Functional, sigma: &Functional) -> Result<(YDAlgebra, Functional)> {
    if !same_host(a.host(), r.host()) || !same_host(r.host(), sigma.host()) {
        return Err(Error::HostMismatch);
    }
    if !action_is_induced(&a.module, r) {
        return Err(Error::PreconditionViolated(
            "the action is not induced from the coaction by r".into(),
        ));
    }
    let twisted = Arc::new(cocycle_twist(a.host(), sigma)?);
    let r_sigma = twist_rform(r, sigma)?.rehost(twisted.clone())?;
    let inv = conv_inverse(sigma)?.ok_or_else(|| Error::NotInvertible("cocycle".into()))?;
    let m = a.dim();
    let f = twisted.field();
    let mut mult = Matrix::zeros(f, m, m * m);
    for i in 0..m {
        let ti = a.module.coact_terms(i);
        for j in 0..m {
            for (i0, x, c) in &ti {
                for (j0, y, d) in a.module.coact_terms(j) {
                    let w = inv.value(&[y, *x]);
                    if w.is_zero() {
                        continue;
                    }
                    let coef = &(c * &d) * w;
                    let prod = a.mul_basis(*i0, j0);
                    for (p, v) in support(&prod) {
                        mult.add_to(p, i * m + j, &(&coef * v));
                    }
                }
            }
        }
    }
    let base = YDModule {
        host: twisted.clone(),
        dim: m,
        act: a.module.act.clone(),
        coact: a.module.coact.clone(),
    };
    let module = with_induced_action(&base, &r_sigma);
    Ok((YDAlgebra::new(module, mult, a.unit.clone())?, r_sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Field;

    fn h4() -> Arc<FinHopf> {
        Arc::new(catalog::make_h4(Field::Rational).unwrap())
    }

    #[test]
    fn trivial_module_is_yd() {
        let k = catalog::trivial_yd(h4());
        assert!(check_yd(&k).passed());
        let phi = braiding(&k, &k).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn adjoint_with_flipped_coaction_fails() {
        let h = h4();
        let adj = catalog::adjoint_yd(h.clone()).unwrap();
        assert!(check_yd(&adj).passed(), "{}", check_yd(&adj));
        let n = 4;
        let f = Field::Rational;
        let mut bad = Matrix::zeros(f, n * n, n);
        for k in 0..n {
            for (p, c) in h.coproduct_basis(k) {
                bad.add_to((p % n) * n + p / n, k, c);
            }
        }
        let m = YDModule::new(h, adj.actions().to_vec(), bad).unwrap();
        let r = check_yd(&m);
        assert!(!r.passed());
        assert!(r.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn shape_errors() {
        let h = h4();
        let f = Field::Rational;
        assert!(matches!(
            YDModule::new(h.clone(), vec![Matrix::identity(f, 1)], Matrix::zeros(f, 4, 1)),
            Err(Error::DimensionMismatch(_))
        ));
        let z2 = Arc::new(catalog::group_algebra_cyclic(f, 2).unwrap());
        let a = catalog::trivial_yd(h);
        let b = catalog::trivial_yd(z2);
        assert!(matches!(yd_tensor(&a, &b), Err(Error::HostMismatch)));
    }

    #[test]
    fn tensor_with_unit_object_is_identity_braiding() {
        let h = h4();
        let k = catalog::trivial_yd(h.clone());
        let adj = catalog::adjoint_yd(h).unwrap();
        let km = yd_tensor(&k, &adj).unwrap();
        assert_eq!(km, adj);
        assert!(braiding(&k, &adj).unwrap().is_identity());
    }
}
