//! The Drinfel'd double `D(H)` with its standard R-matrix, quasitriangularity
//! checks, the exponent element and the structural isomorphisms between
//! doubles of related Hopf algebras.
//!
//! `D(H)` has basis `f_i ⊗ e_j` at flat index `i * n + j`, where `f_i` is the
//! dual basis of `H*`. The coalgebra is `H*^cop ⊗ H` and the product is
//! `(ξ⊗a)(η⊗b) = Σ ξ η' ⊗ a_(2) b` with `η'(z) = η(S⁻¹(a_(3)) z a_(1))`.

use std::sync::Arc;

use crate::convolution::same_host;
use crate::error::{Error, Result};
use crate::hopf::{is_morphism, join_index, split_index, support, FinHopf, HopfBuilder, MorphismKind, Variant};
use crate::linalg::Matrix;
use crate::report::{CheckReport, Witness};
use crate::scalar::Scalar;

/// An element of `A ⊗ A` on the flat basis `i * n + j`.
#[derive(Clone, Debug)]
pub struct RMatrix {
    host: Arc<FinHopf>,
    coeffs: Vec<Scalar>,
}

impl PartialEq for RMatrix {
    fn eq(&self, other: &RMatrix) -> bool {
        same_host(&self.host, &other.host) && self.coeffs == other.coeffs
    }
}

impl RMatrix {
    pub fn new(host: Arc<FinHopf>, coeffs: Vec<Scalar>) -> Result<RMatrix> {
        let n = host.dim();
        if coeffs.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "R-matrix has {} entries, expected {}",
                coeffs.len(),
                n * n
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.field() != host.field()) {
            return Err(Error::FieldMismatch(host.field(), c.field()));
        }
        Ok(RMatrix { host, coeffs })
    }

    pub fn unit(host: Arc<FinHopf>) -> RMatrix {
        let coeffs = host.tensor_unit(2);
        RMatrix { host, coeffs }
    }

    pub fn host(&self) -> &Arc<FinHopf> {
        &self.host
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `τR`.
    pub fn flip(&self) -> RMatrix {
        RMatrix {
            host: self.host.clone(),
            coeffs: self.host.permute_legs(2, &[1, 0], &self.coeffs),
        }
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if !same_host(&self.host, &other.host) {
            return Err(Error::HostMismatch);
        }
        Ok(RMatrix {
            host: self.host.clone(),
            coeffs: self.host.tensor_mul(2, &self.coeffs, &other.coeffs),
        })
    }

    /// Two-sided inverse in `A ⊗ A`, found by solving `R X = 1⊗1`.
    pub fn inverse(&self) -> Option<RMatrix> {
        let h = &self.host;
        let len = self.coeffs.len();
        let f = h.field();
        let mut cols = Vec::with_capacity(len);
        for q in 0..len {
            let mut e = vec![f.zero(); len];
            e[q] = f.one();
            cols.push(h.tensor_mul(2, &self.coeffs, &e));
        }
        let l = Matrix::from_columns(f, len, &cols).ok()?;
        let one = h.tensor_unit(2);
        let x = l.solve(&one).ok()??;
        if h.tensor_mul(2, &x, &self.coeffs) != one {
            return None;
        }
        Some(RMatrix {
            host: h.clone(),
            coeffs: x,
        })
    }
}

/// Places the legs of `x ∈ A^{⊗k}` at `positions` inside `A^{⊗total}`.
fn embed(h: &FinHopf, x: &[Scalar], k: usize, positions: &[usize], total: usize) -> Vec<Scalar> {
    let n = h.dim();
    let f = h.field();
    let mut out = vec![f.zero(); n.pow(total as u32)];
    let rest = total - k;
    let units = h.tensor_unit(rest);
    for (p, a) in support(x) {
        let pd = split_index(p, n, k);
        for (q, b) in support(&units) {
            let qd = split_index(q, n, rest);
            let mut digits = vec![0; total];
            let mut it = qd.iter();
            for (slot, d) in digits.iter_mut().enumerate() {
                *d = match positions.iter().position(|&s| s == slot) {
                    Some(leg) => pd[leg],
                    None => *it.next().unwrap(),
                };
            }
            out[join_index(&digits, n)] += &(a * b);
        }
    }
    out
}

/// Invertibility, `(Δ⊗id)R = R₁₃R₂₃`, `(id⊗Δ)R = R₁₃R₁₂` and `R Δ(a) = Δ^cop(a) R`.
pub fn check_quasitriangular(r: &RMatrix) -> CheckReport {
    let h = &r.host;
    let n = h.dim();
    let mut report = CheckReport::new();
    if r.inverse().is_some() {
        report.pass("invertible");
    } else {
        report.fail("invertible", Witness::note(&[], "no inverse in A⊗A"));
    }
    let r13 = embed(h, &r.coeffs, 2, &[0, 2], 3);
    let r23 = embed(h, &r.coeffs, 2, &[1, 2], 3);
    let r12 = embed(h, &r.coeffs, 2, &[0, 1], 3);

    let lhs = h.coproduct_leg(2, 0, &r.coeffs);
    let rhs = h.tensor_mul(3, &r13, &r23);
    if lhs == rhs {
        report.pass("coproduct_left");
    } else {
        report.fail("coproduct_left", Witness::new(&[], &lhs, &rhs));
    }
    let lhs = h.coproduct_leg(2, 1, &r.coeffs);
    let rhs = h.tensor_mul(3, &r13, &r12);
    if lhs == rhs {
        report.pass("coproduct_right");
    } else {
        report.fail("coproduct_right", Witness::new(&[], &lhs, &rhs));
    }

    let mut fail = None;
    for a in 0..n {
        let d = h.coproduct(&h.basis_vector(a));
        let dcop = h.permute_legs(2, &[1, 0], &d);
        let lhs = h.tensor_mul(2, &r.coeffs, &d);
        let rhs = h.tensor_mul(2, &dcop, &r.coeffs);
        if lhs != rhs {
            fail = Some(Witness::new(&[a], &lhs, &rhs));
            break;
        }
    }
    report.record("intertwining", fail);
    report
}

/// `(τR) R = 1 ⊗ 1`.
pub fn check_triangular(r: &RMatrix) -> bool {
    monodromy(r) == r.host.tensor_unit(2)
}

/// `(τR) R` as an element of `A ⊗ A`.
pub fn monodromy(r: &RMatrix) -> Vec<Scalar> {
    r.host.tensor_mul(2, &r.flip().coeffs, &r.coeffs)
}

/// Smallest `k ≤ bound` with `x^k = 1` in `A^{⊗legs}`.
pub fn element_order(h: &FinHopf, legs: usize, x: &[Scalar], bound: usize) -> Option<usize> {
    let one = h.tensor_unit(legs);
    let mut p = x.to_vec();
    for k in 1..=bound {
        if p == one {
            return Some(k);
        }
        p = h.tensor_mul(legs, &p, x);
    }
    None
}

/// `D(H)` together with its standard R-matrix and the two embeddings.
#[derive(Clone, Debug)]
pub struct DoubleResult {
    pub double: Arc<FinHopf>,
    pub r: RMatrix,
    /// `a ↦ ε ⊗ a`, an `n² x n` matrix.
    pub embed_h: Matrix,
    /// `ξ ↦ ξ ⊗ 1`, an `n² x n` matrix.
    pub embed_dual: Matrix,
}

pub fn build_double(h: &FinHopf) -> Result<DoubleResult> {
    h.ensure_valid()?;
    let n = h.dim();
    let f = h.field();
    let (s, s_inv) = h.require_antipode()?;
    let hstar = h.dual_unchecked();
    let labels: Vec<String> = (0..n * n)
        .map(|p| format!("{}.{}", hstar.labels()[p / n], h.labels()[p % n]))
        .collect();
    let mut b = HopfBuilder::new(f, labels);

    // t[(x * n + y) * n + z] = (S⁻¹(e_x) e_z e_y) on the basis
    let mut sandwich = vec![Vec::new(); n * n * n];
    for x in 0..n {
        let sx = s_inv.column(x);
        for z in 0..n {
            let left = h.mul(&sx, &h.basis_vector(z));
            for y in 0..n {
                let v = h.mul(&left, &h.basis_vector(y));
                sandwich[(x * n + y) * n + z] = support(&v).map(|(k, c)| (k, c.clone())).collect::<Vec<_>>();
            }
        }
    }
    let triples: Vec<_> = (0..n).map(|j| h.double_coproduct_terms(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let p = i * n + j;
            for k in 0..n {
                for l in 0..n {
                    let q = k * n + l;
                    for (a1, a2, a3, c) in &triples[j] {
                        for z in 0..n {
                            let coef = sandwich[(a3 * n + a1) * n + z]
                                .iter()
                                .find(|(kk, _)| *kk == k)
                                .map(|(_, v)| v);
                            let Some(eta) = coef else { continue };
                            let w = c * eta;
                            for (xi, d) in hstar.mul_basis(i, z) {
                                for (m, e) in h.mul_basis(*a2, l) {
                                    b.product(p, q, xi * n + m, &(&w * d) * e);
                                }
                            }
                        }
                    }
                }
            }
            // Δ(f_i ⊗ e_j) = Σ (f_i)_(2) ⊗ e_j(1) ⊗ (f_i)_(1) ⊗ e_j(2)
            for (pq, c) in hstar.coproduct_basis(i) {
                let (f1, f2) = (pq / n, pq % n);
                for (ab, d) in h.coproduct_basis(j) {
                    let (a, bb) = (ab / n, ab % n);
                    b.coproduct(f2 * n + a, f1 * n + bb, p, c * d);
                }
            }
            b.unit(p, &h.counit()[i] * &h.unit()[j]);
            b.counit(p, &h.unit()[i] * &h.counit()[j]);
        }
    }
    let bare = b.build()?;

    // S_D(ξ⊗a) = (ε ⊗ S a)(S*⁻¹ ξ ⊗ 1)
    let nn = n * n;
    let mut sd_cols = Vec::with_capacity(nn);
    for i in 0..n {
        let mut right = vec![f.zero(); nn];
        for p in 0..n {
            for q in 0..n {
                let v = s_inv.get(i, p) * &h.unit()[q];
                if !v.is_zero() {
                    right[p * n + q] = v;
                }
            }
        }
        for j in 0..n {
            let mut left = vec![f.zero(); nn];
            for p in 0..n {
                for q in 0..n {
                    let v = &h.counit()[p] * s.get(q, j);
                    if !v.is_zero() {
                        left[p * n + q] = v;
                    }
                }
            }
            sd_cols.push(bare.mul(&left, &right));
        }
    }
    let double = bare.with_antipode(Some(Matrix::from_columns(f, nn, &sd_cols)?))?;
    if let Some(c) = double.check_axioms().first_failure() {
        return Err(Error::AxiomFailure(format!("double fails {}", c.name)));
    }

    let mut embed_h = Matrix::zeros(f, nn, n);
    let mut embed_dual = Matrix::zeros(f, nn, n);
    for a in 0..n {
        for p in 0..n {
            embed_h.set(p * n + a, a, h.counit()[p].clone());
            embed_dual.set(a * n + p, a, h.unit()[p].clone());
        }
    }
    let double = Arc::new(double);
    // ℛ = Σ_i (ε ⊗ e_i) ⊗ (f_i ⊗ 1)
    let mut r = vec![f.zero(); nn * nn];
    for i in 0..n {
        for p in 0..n {
            for q in 0..n {
                let v = &h.counit()[p] * &h.unit()[q];
                if !v.is_zero() {
                    r[(p * n + i) * nn + i * n + q] += &v;
                }
            }
        }
    }
    Ok(DoubleResult {
        r: RMatrix::new(double.clone(), r)?,
        double,
        embed_h,
        embed_dual,
    })
}

/// The exponent element of `D(H)` and its multiplicative order.
#[derive(Clone, Debug)]
pub struct Exponent {
    pub u: Vec<Scalar>,
    pub order: Option<usize>,
    /// Whether `u = ε ⊗ 1`.
    pub trivial: bool,
}

/// `u = Σ_j S*⁻¹(f_j) ⊗ e_j` in `D(H)`.
pub fn exponent_element(d: &DoubleResult, h: &FinHopf, bound: usize) -> Result<Exponent> {
    let n = h.dim();
    let f = h.field();
    let (_, s_inv) = h.require_antipode()?;
    let mut u = vec![f.zero(); n * n];
    for j in 0..n {
        for p in 0..n {
            let v = s_inv.get(j, p);
            if !v.is_zero() {
                u[p * n + j] += v;
            }
        }
    }
    let order = element_order(&d.double, 1, &u, bound.max(1));
    let trivial = u == d.double.unit();
    Ok(Exponent { u, order, trivial })
}

fn iso_checks(report: &mut CheckReport, prefix: &str, map: &Matrix, src: &FinHopf, dst: &FinHopf) -> Result<()> {
    report.merge(prefix, is_morphism(map, src, dst, MorphismKind::Hopf)?);
    let name = format!("{prefix}bijective");
    if map.inverse()?.is_some() {
        report.pass(name);
    } else {
        report.fail(name, Witness::note(&[], "map matrix is singular"));
    }
    Ok(())
}

fn compare(report: &mut CheckReport, name: &str, lhs: &[Scalar], rhs: &[Scalar]) {
    if lhs == rhs {
        report.pass(name);
    } else {
        report.fail(name, Witness::new(&[], lhs, rhs));
    }
}

/// Builds and certifies three isomorphisms of doubles:
///
/// * `flip.`: `ξ⊗a ↦ S(a) ⊗ S*⁻¹(ξ)`, `D(H) → D(H*)^op`, sending `ℛ` to `τℛ'`;
/// * `dual_antipode.`: `S* ⊗ id`, `D(H^cop) → D(H)^cop`, sending `τℛ⁻¹` to `τℛ`;
/// * `op_to_cop.`: `ξ⊗a ↦ S*(ξ) ⊗ S⁻¹(a)`, `D(H^op) → D(H^cop)`, fixing the R-matrix.
pub fn verify_double_isos(h: &FinHopf) -> Result<CheckReport> {
    h.ensure_valid()?;
    let n = h.dim();
    let nn = n * n;
    let f = h.field();
    let (s, s_inv) = h.require_antipode()?;
    let mut report = CheckReport::new();

    let pair_map = |left: &dyn Fn(usize, usize) -> Scalar, right: &dyn Fn(usize, usize) -> Scalar, swap: bool| {
        // column (i, j) = left(·, i) ⊗ right(·, j), optionally written in swapped order
        let mut m = Matrix::zeros(f, nn, nn);
        for i in 0..n {
            for j in 0..n {
                for p in 0..n {
                    let a = left(p, i);
                    if a.is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        let b = right(q, j);
                        if b.is_zero() {
                            continue;
                        }
                        let row = if swap { q * n + p } else { p * n + q };
                        m.add_to(row, i * n + j, &(&a * &b));
                    }
                }
            }
        }
        m
    };
    let s_dual = |p: usize, i: usize| s.get(i, p).clone();
    let s_dual_inv = |p: usize, i: usize| s_inv.get(i, p).clone();
    let s_h = |q: usize, j: usize| s.get(q, j).clone();
    let s_h_inv = |q: usize, j: usize| s_inv.get(q, j).clone();
    let id = |q: usize, j: usize| if q == j { f.one() } else { f.zero() };

    let d = build_double(h)?;

    // (a) D(H) → D(H*)^op
    let hstar = h.dual_unchecked();
    let d_star = build_double(&hstar)?;
    let target = d_star.double.variant_unchecked(Variant::Op);
    let phi = pair_map(&s_dual_inv, &s_h, true);
    iso_checks(&mut report, "flip.", &phi, &d.double, &target)?;
    let pushed = phi.kron(&phi).apply(d.r.coeffs());
    compare(&mut report, "flip.r_matrix", &pushed, d_star.r.flip().coeffs());

    // (b) D(H^cop) → D(H)^cop
    let hcop = h.variant_unchecked(Variant::Cop);
    let d_cop = build_double(&hcop)?;
    let target = d.double.variant_unchecked(Variant::Cop);
    let phi = pair_map(&s_dual, &id, false);
    iso_checks(&mut report, "dual_antipode.", &phi, &d_cop.double, &target)?;
    match d_cop.r.inverse() {
        Some(rinv) => {
            let pushed = phi.kron(&phi).apply(rinv.flip().coeffs());
            compare(&mut report, "dual_antipode.r_matrix", &pushed, d.r.flip().coeffs());
        }
        None => report.fail("dual_antipode.r_matrix", Witness::note(&[], "R-matrix not invertible")),
    }

    // (c) D(H^op) → D(H^cop)
    let hop = h.variant_unchecked(Variant::Op);
    let d_op = build_double(&hop)?;
    let phi = pair_map(&s_dual, &s_h_inv, false);
    iso_checks(&mut report, "op_to_cop.", &phi, &d_op.double, &d_cop.double)?;
    let pushed = phi.kron(&phi).apply(d_op.r.coeffs());
    compare(&mut report, "op_to_cop.r_matrix", &pushed, d_cop.r.coeffs());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Field;

    #[test]
    fn trivial_r_matrix_on_group_algebra() {
        let z2 = Arc::new(catalog::group_algebra_cyclic(Field::Rational, 2).unwrap());
        let r = RMatrix::unit(z2);
        assert!(check_quasitriangular(&r).passed());
        assert!(check_triangular(&r));
    }

    #[test]
    fn double_of_z2_is_commutative() {
        let z2 = catalog::group_algebra_cyclic(Field::Rational, 2).unwrap();
        let d = build_double(&z2).unwrap();
        assert_eq!(d.double.dim(), 4);
        let op = d.double.variant(Variant::Op).unwrap();
        assert!(op.structure_eq(&d.double));
        assert!(check_quasitriangular(&d.r).passed());
    }

    #[test]
    fn embeddings_are_hopf_maps() {
        let h = catalog::make_h4(Field::Rational).unwrap();
        let d = build_double(&h).unwrap();
        let r = is_morphism(&d.embed_h, &h, &d.double, MorphismKind::Hopf).unwrap();
        assert!(r.passed(), "{r}");
        let dual_cop = h.dual().unwrap().variant(Variant::Cop).unwrap();
        let r = is_morphism(&d.embed_dual, &dual_cop, &d.double, MorphismKind::Hopf).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn r_matrix_length_is_validated() {
        let z2 = Arc::new(catalog::group_algebra_cyclic(Field::Rational, 2).unwrap());
        assert!(matches!(RMatrix::new(z2, vec![]), Err(Error::DimensionMismatch(_))));
    }
}
