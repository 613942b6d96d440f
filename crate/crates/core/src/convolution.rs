//! Functionals on tensor powers, the convolution product, 2-cocycles,
//! cocycle twists and R-forms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{to_dense, FinHopf, HopfBuilder};
use crate::linalg::Matrix;
use crate::report::{CheckReport, Witness};
use crate::scalar::Scalar;

/// A linear functional on `H^{⊗k}`, stored by its values on the flat tensor basis.
#[derive(Clone, Debug)]
pub struct Functional {
    host: Arc<FinHopf>,
    arity: usize,
    coeffs: Vec<Scalar>,
}

impl PartialEq for Functional {
    fn eq(&self, other: &Functional) -> bool {
        self.arity == other.arity && same_host(&self.host, &other.host) && self.coeffs == other.coeffs
    }
}

pub(crate) fn same_host(a: &Arc<FinHopf>, b: &Arc<FinHopf>) -> bool {
    Arc::ptr_eq(a, b) || a.structure_eq(b)
}

impl Functional {
    pub fn new(host: Arc<FinHopf>, arity: usize, coeffs: Vec<Scalar>) -> Result<Functional> {
        if arity == 0 {
            return Err(Error::DimensionMismatch("arity must be at least 1".into()));
        }
        let len = host.dim().pow(arity as u32);
        if coeffs.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "functional has {} values, expected {len}",
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.field() != host.field()) {
            return Err(Error::FieldMismatch(host.field(), c.field()));
        }
        Ok(Functional { host, arity, coeffs })
    }

    pub fn from_fn(host: Arc<FinHopf>, arity: usize, f: impl Fn(&[usize]) -> Scalar) -> Result<Functional> {
        let n = host.dim();
        let coeffs = (0..n.pow(arity as u32))
            .map(|p| f(&crate::hopf::split_index(p, n, arity)))
            .collect();
        Functional::new(host, arity, coeffs)
    }

    /// `ε^{⊗k}`, the unit for convolution.
    pub fn counit_power(host: Arc<FinHopf>, arity: usize) -> Functional {
        let eps = host.counit().to_vec();
        let mut coeffs = vec![host.field().one()];
        for _ in 0..arity {
            coeffs = crate::hopf::kron_vec(&coeffs, &eps);
        }
        Functional { host, arity, coeffs }
    }

    pub fn host(&self) -> &Arc<FinHopf> {
        &self.host
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn value(&self, indices: &[usize]) -> &Scalar {
        &self.coeffs[crate::hopf::join_index(indices, self.host.dim())]
    }

    /// Value on an arbitrary element of `H^{⊗k}`.
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.host.field().zero();
        for (p, a) in crate::hopf::support(x) {
            if !self.coeffs[p].is_zero() {
                acc += &(a * &self.coeffs[p]);
            }
        }
        acc
    }

    /// The same values read as a functional over another Hopf algebra on the same space.
    pub fn rehost(&self, host: Arc<FinHopf>) -> Result<Functional> {
        if host.dim() != self.host.dim() || host.field() != self.host.field() {
            return Err(Error::HostMismatch);
        }
        Ok(Functional {
            host,
            arity: self.arity,
            coeffs: self.coeffs.clone(),
        })
    }

    /// `f ∘ τ` for a bilinear form.
    pub fn transpose(&self) -> Functional {
        assert_eq!(self.arity, 2, "transpose needs arity 2");
        let n = self.host.dim();
        let coeffs = (0..n * n).map(|p| self.coeffs[(p % n) * n + p / n].clone()).collect();
        Functional {
            host: self.host.clone(),
            arity: 2,
            coeffs,
        }
    }

    fn pair(&self, i: usize, j: usize) -> &Scalar {
        &self.coeffs[i * self.host.dim() + j]
    }
}

/// `(f * g)(x) = Σ f(x_(1)) g(x_(2))` with the factorwise coproduct of `H^{⊗k}`.
pub fn convolve(f: &Functional, g: &Functional) -> Result<Functional> {
    if !same_host(&f.host, &g.host) {
        return Err(Error::HostMismatch);
    }
    if f.arity != g.arity {
        return Err(Error::DimensionMismatch("arity mismatch".into()));
    }
    let h = &f.host;
    let k = f.arity;
    let coeffs = (0..f.coeffs.len())
        .map(|idx| {
            let mut acc = h.field().zero();
            for (l, r, c) in h.tensor_coproduct_terms(k, idx) {
                let (a, b) = (&f.coeffs[l], &g.coeffs[r]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(&(&c * a) * b);
                }
            }
            acc
        })
        .collect();
    Ok(Functional {
        host: f.host.clone(),
        arity: k,
        coeffs,
    })
}

/// Solves `f * x = ε^{⊗k}` and then checks `x * f = ε^{⊗k}`.
///
/// `Ok(None)` when the left system has no solution; `OneSidedInverse` when
/// the left solution is not also a right inverse.
pub fn conv_inverse(f: &Functional) -> Result<Option<Functional>> {
    let h = &f.host;
    let k = f.arity;
    let len = f.coeffs.len();
    let field = h.field();
    let mut rows = vec![vec![field.zero(); len]; len];
    for (idx, row) in rows.iter_mut().enumerate() {
        for (l, r, c) in h.tensor_coproduct_terms(k, idx) {
            if !f.coeffs[l].is_zero() {
                row[r] += &(&c * &f.coeffs[l]);
            }
        }
    }
    let unit = Functional::counit_power(h.clone(), k);
    let a = Matrix::from_rows(field, rows)?;
    let Some(x) = a.solve(&unit.coeffs)? else {
        return Ok(None);
    };
    let x = Functional {
        host: h.clone(),
        arity: k,
        coeffs: x,
    };
    if convolve(&x, f)? != unit {
        return Err(Error::OneSidedInverse);
    }
    Ok(Some(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleSide {
    Left,
    Right,
}

/// `ε(h)` for every basis element, compared with `σ(h ⊗ 1)` and `σ(1 ⊗ h)`.
fn unitality_witness(s: &Functional) -> Option<Witness> {
    let h = &s.host;
    let n = h.dim();
    for i in 0..n {
        let e = h.basis_vector(i);
        let left = s.eval(&crate::hopf::kron_vec(&e, h.unit()));
        let right = s.eval(&crate::hopf::kron_vec(h.unit(), &e));
        let eps = h.counit()[i].clone();
        if left != eps {
            return Some(Witness::new(&[i], &[left], &[eps]));
        }
        if right != eps {
            return Some(Witness::new(&[i], &[right], &[eps]));
        }
    }
    None
}

/// For every basis pair `(x, y)`, the element `Σ σ(x_(a) ⊗ y_(a)) x_(b) y_(b)` of `H`,
/// where `σ` sees the first tensor legs when `sigma_first` and the second otherwise.
fn weighted_products(s: &Functional, sigma_first: bool) -> Vec<Vec<Scalar>> {
    let h = &s.host;
    let n = h.dim();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut acc = h.zero_vector(n);
            for (p, c) in h.coproduct_basis(x) {
                let (x1, x2) = (p / n, p % n);
                for (q, d) in h.coproduct_basis(y) {
                    let (y1, y2) = (q / n, q % n);
                    let (sv, (a, b)) = if sigma_first {
                        (s.pair(x1, y1), (x2, y2))
                    } else {
                        (s.pair(x2, y2), (x1, y1))
                    };
                    if sv.is_zero() {
                        continue;
                    }
                    let w = &(c * d) * sv;
                    for (z, m) in h.mul_basis(a, b) {
                        acc[*z] += &(&w * m);
                    }
                }
            }
            out.push(acc);
        }
    }
    out
}

/// Verifies unitality and the cocycle identity on every basis triple.
///
/// Left: `Σ σ(k_(1)⊗m_(1)) σ(h⊗k_(2)m_(2)) = Σ σ(h_(1)⊗k_(1)) σ(h_(2)k_(2)⊗m)`.
/// Right: `Σ σ(k_(2)⊗m_(2)) σ(h⊗k_(1)m_(1)) = Σ σ(h_(2)⊗k_(2)) σ(h_(1)k_(1)⊗m)`.
pub fn check_2cocycle(s: &Functional, side: CocycleSide) -> CheckReport {
    let mut report = CheckReport::new();
    if s.arity != 2 {
        report.fail("arity", Witness::note(&[], "a 2-cocycle has arity 2"));
        return report;
    }
    report.record("unitality", unitality_witness(s));
    let h = &s.host;
    let n = h.dim();
    let sigma_first = side == CocycleSide::Left;
    let w = weighted_products(s, sigma_first);
    let mut fail = None;
    'outer: for a in 0..n {
        for k in 0..n {
            let v = &w[a * n + k];
            for m in 0..n {
                let wkm = &w[k * n + m];
                let mut lhs = h.field().zero();
                let mut rhs = h.field().zero();
                for z in 0..n {
                    if !wkm[z].is_zero() {
                        lhs += &(s.pair(a, z) * &wkm[z]);
                    }
                    if !v[z].is_zero() {
                        rhs += &(&v[z] * s.pair(z, m));
                    }
                }
                if lhs != rhs {
                    fail = Some(Witness::new(&[a, k, m], &[lhs], &[rhs]));
                    break 'outer;
                }
            }
        }
    }
    report.record("cocycle", fail);
    report
}

fn require_cocycle(s: &Functional) -> Result<()> {
    let report = check_2cocycle(s, CocycleSide::Left);
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::NotACocycle(match &c.witness {
            Some(w) => format!("{} fails at {:?}", c.name, w.indices),
            None => c.name.clone(),
        })),
    }
}

fn require_inverse(f: &Functional, what: &str) -> Result<Functional> {
    match conv_inverse(f) {
        Ok(Some(x)) => Ok(x),
        Ok(None) | Err(Error::OneSidedInverse) => Err(Error::NotInvertible(what.into())),
        Err(e) => Err(e),
    }
}

/// `_σH_{σ⁻¹}`: product `Σ σ(a_(1)⊗b_(1)) a_(2)b_(2) σ⁻¹(a_(3)⊗b_(3))`,
/// the same coalgebra and unit, and the antipode `u * S * u⁻¹` with
/// `u = σ(id⊗S)Δ`.
pub fn cocycle_twist(h: &Arc<FinHopf>, sigma: &Functional) -> Result<FinHopf> {
    if !same_host(h, &sigma.host) {
        return Err(Error::HostMismatch);
    }
    if sigma.arity != 2 {
        return Err(Error::NotACocycle("arity must be 2".into()));
    }
    require_cocycle(sigma)?;
    let inv = require_inverse(sigma, "cocycle")?;
    let n = h.dim();
    let f = h.field();
    let (s, _) = h.require_antipode()?;
    let mut b = HopfBuilder::new(f, h.labels().to_vec());
    let triples: Vec<_> = (0..n).map(|k| h.double_coproduct_terms(k)).collect();
    for i in 0..n {
        for j in 0..n {
            for (a1, a2, a3, c) in &triples[i] {
                for (b1, b2, b3, d) in &triples[j] {
                    let l = sigma.pair(*a1, *b1);
                    let r = inv.pair(*a3, *b3);
                    if l.is_zero() || r.is_zero() {
                        continue;
                    }
                    let w = &(&(c * d) * l) * r;
                    for (k, m) in h.mul_basis(*a2, *b2) {
                        b.product(i, j, *k, &w * m);
                    }
                }
            }
        }
        for (k, c) in h.coproduct_basis(i) {
            b.coproduct(k / n, k % n, i, c.clone());
        }
        b.unit(i, h.unit()[i].clone());
        b.counit(i, h.counit()[i].clone());
    }
    // u(x) = Σ σ(x_(1) ⊗ S x_(2))
    let u_coeffs: Vec<Scalar> = (0..n)
        .map(|x| {
            let mut acc = f.zero();
            for (p, c) in h.coproduct_basis(x) {
                let sx = s.column(p % n);
                let arg = crate::hopf::kron_vec(&h.basis_vector(p / n), &sx);
                acc += &(c * &sigma.eval(&arg));
            }
            acc
        })
        .collect();
    let u = Functional::new(h.clone(), 1, u_coeffs)?;
    let u_inv = require_inverse(&u, "u = σ(id⊗S)Δ")?;
    let mut st = Matrix::zeros(f, n, n);
    for (x, terms) in triples.iter().enumerate() {
        for (x1, x2, x3, c) in terms {
            let w = &(c * &u.coeffs[*x1]) * &u_inv.coeffs[*x3];
            if w.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = s.get(r, *x2);
                if !v.is_zero() {
                    st.add_to(r, x, &(&w * v));
                }
            }
        }
    }
    b.antipode_matrix(st);
    b.build()
}

/// Verifies the R-form axioms.
///
/// Unitality, `r(ab⊗c) = Σ r(a⊗c_(1)) r(b⊗c_(2))`,
/// `r(a⊗bc) = Σ r(a_(2)⊗b) r(a_(1)⊗c)`, the intertwining law
/// `Σ r(a_(1)⊗b_(1)) a_(2)b_(2) = Σ b_(1)a_(1) r(a_(2)⊗b_(2))`, convolution
/// invertibility and, when asked, `r * (rτ) = ε⊗ε = (rτ) * r`.
pub fn check_rform(r: &Functional, cotriangular: bool) -> CheckReport {
    let mut report = CheckReport::new();
    if r.arity != 2 {
        report.fail("arity", Witness::note(&[], "an R-form has arity 2"));
        return report;
    }
    let h = &r.host;
    let n = h.dim();
    let f = h.field();
    report.record("unitality", unitality_witness(r));

    let mut fail = None;
    'ml: for a in 0..n {
        for b in 0..n {
            let ab = to_dense(f, n, h.mul_basis(a, b));
            for c in 0..n {
                let lhs = r.eval(&crate::hopf::kron_vec(&ab, &h.basis_vector(c)));
                let mut rhs = f.zero();
                for (p, d) in h.coproduct_basis(c) {
                    rhs += &(&(d * r.pair(a, p / n)) * r.pair(b, p % n));
                }
                if lhs != rhs {
                    fail = Some(Witness::new(&[a, b, c], &[lhs], &[rhs]));
                    break 'ml;
                }
            }
        }
    }
    report.record("multiplicative_left", fail);

    let mut fail = None;
    'mr: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bc = to_dense(f, n, h.mul_basis(b, c));
                let lhs = r.eval(&crate::hopf::kron_vec(&h.basis_vector(a), &bc));
                let mut rhs = f.zero();
                for (p, d) in h.coproduct_basis(a) {
                    rhs += &(&(d * r.pair(p % n, b)) * r.pair(p / n, c));
                }
                if lhs != rhs {
                    fail = Some(Witness::new(&[a, b, c], &[lhs], &[rhs]));
                    break 'mr;
                }
            }
        }
    }
    report.record("multiplicative_right", fail);

    let mut fail = None;
    'it: for a in 0..n {
        for b in 0..n {
            let mut lhs = h.zero_vector(n);
            let mut rhs = h.zero_vector(n);
            for (p, c) in h.coproduct_basis(a) {
                let (a1, a2) = (p / n, p % n);
                for (q, d) in h.coproduct_basis(b) {
                    let (b1, b2) = (q / n, q % n);
                    let cd = c * d;
                    let l = r.pair(a1, b1);
                    if !l.is_zero() {
                        let w = &cd * l;
                        for (z, m) in h.mul_basis(a2, b2) {
                            lhs[*z] += &(&w * m);
                        }
                    }
                    let rr = r.pair(a2, b2);
                    if !rr.is_zero() {
                        let w = &cd * rr;
                        for (z, m) in h.mul_basis(b1, a1) {
                            rhs[*z] += &(&w * m);
                        }
                    }
                }
            }
            if lhs != rhs {
                fail = Some(Witness::new(&[a, b], &lhs, &rhs));
                break 'it;
            }
        }
    }
    report.record("intertwining", fail);

    match conv_inverse(r) {
        Ok(Some(_)) => report.pass("invertible"),
        Ok(None) => report.fail("invertible", Witness::note(&[], "no convolution inverse")),
        Err(e) => report.fail("invertible", Witness::note(&[], &e.to_string())),
    }

    if cotriangular {
        let rt = r.transpose();
        let unit = Functional::counit_power(h.clone(), 2);
        let left = convolve(r, &rt).expect("same host");
        let right = convolve(&rt, r).expect("same host");
        let fail = first_difference(&left, &unit).or_else(|| first_difference(&right, &unit));
        report.record("cotriangular", fail);
    }
    report
}

/// The first basis tuple on which two functionals disagree.
pub fn first_difference(a: &Functional, b: &Functional) -> Option<Witness> {
    let n = a.host.dim();
    (0..a.coeffs.len()).find(|&p| a.coeffs[p] != b.coeffs[p]).map(|p| {
        Witness::new(
            &crate::hopf::split_index(p, n, a.arity),
            &[a.coeffs[p].clone()],
            &[b.coeffs[p].clone()],
        )
    })
}

/// `r_σ = (στ) * r * σ⁻¹`, hosted on the twisted algebra `_σH_{σ⁻¹}`.
pub fn twist_rform(r: &Functional, sigma: &Functional) -> Result<Functional> {
    if !same_host(&r.host, &sigma.host) {
        return Err(Error::HostMismatch);
    }
    let twisted = Arc::new(cocycle_twist(&r.host, sigma)?);
    let inv = require_inverse(sigma, "cocycle")?;
    let out = convolve(&convolve(&sigma.transpose(), r)?, &inv)?;
    out.rehost(twisted)
}

#[cfg(test)]
#[allow(clippy::identity_op, clippy::erasing_op)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Field;

    fn h4() -> Arc<FinHopf> {
        Arc::new(catalog::make_h4(Field::Rational).unwrap())
    }

    #[test]
    fn counit_is_convolution_unit() {
        let h = h4();
        let t = Field::Rational.from_ratio(3, 7).unwrap();
        let fam = catalog::h4_family(&h, &t).unwrap();
        let e = Functional::counit_power(h.clone(), 2);
        assert_eq!(convolve(&e, &fam.sigma).unwrap(), fam.sigma);
        assert_eq!(conv_inverse(&e).unwrap().unwrap(), e);
    }

    #[test]
    fn host_mismatch_is_reported() {
        let a = Functional::counit_power(h4(), 2);
        let z2 = Arc::new(catalog::group_algebra_cyclic(Field::Rational, 2).unwrap());
        let b = Functional::counit_power(z2, 2);
        assert_eq!(convolve(&a, &b), Err(Error::HostMismatch));
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let h = h4();
        let f = Field::Rational;
        let mut coeffs = Functional::counit_power(h.clone(), 2).coeffs().to_vec();
        coeffs[1 * 4 + 2] = f.one();
        let bad = Functional::new(h.clone(), 2, coeffs).unwrap();
        assert!(!check_2cocycle(&bad, CocycleSide::Left).passed());
        assert!(matches!(cocycle_twist(&h, &bad), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn zero_functional_has_no_inverse() {
        let h = h4();
        let z = Functional::new(h.clone(), 1, vec![Field::Rational.zero(); 4]).unwrap();
        assert_eq!(conv_inverse(&z).unwrap(), None);
    }
}
