//! Concrete test subjects: group algebras, a non-group monoid, Sweedler's
//! four-dimensional algebra with its structure families, and a handful of
//! Yetter–Drinfel'd modules and algebras over them.

use std::sync::Arc;

use crate::convolution::Functional;
use crate::double::RMatrix;
use crate::error::{Error, Result};
use crate::hopf::{FinHopf, HopfBuilder};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use crate::yd::{induce_from_rform, YDAlgebra, YDModule};

/// `k[G]` from a Cayley table: `table[a][b]` is the index of `a b`.
pub fn group_algebra<S: Into<String>>(
    field: Field,
    labels: impl IntoIterator<Item = S>,
    table: &[Vec<usize>],
) -> Result<FinHopf> {
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    let n = labels.len();
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(Error::NotAGroup(format!("table must be {n} x {n}")));
    }
    if table.iter().flatten().any(|&c| c >= n) {
        return Err(Error::NotAGroup("table entry out of range".into()));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
    let mut inverse = vec![0; n];
    for (a, inv) in inverse.iter_mut().enumerate() {
        *inv = (0..n)
            .find(|&b| table[a][b] == e && table[b][a] == e)
            .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
    }
    let mut b = HopfBuilder::new(field, labels);
    for x in 0..n {
        for y in 0..n {
            b.product(x, y, table[x][y], field.one());
        }
        b.coproduct(x, x, x, field.one());
        b.counit(x, field.one());
        b.antipode(inverse[x], x, field.one());
    }
    b.unit(e, field.one());
    b.build()
}

/// `k[Z_n]` with basis `1, g, g^2, ...`.
pub fn group_algebra_cyclic(field: Field, n: usize) -> Result<FinHopf> {
    let labels = (0..n).map(|i| match i {
        0 => "1".to_string(),
        1 => "g".to_string(),
        _ => format!("g{i}"),
    });
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    group_algebra(field, labels, &table)
}

/// `k[Z_2 × Z_2]` with basis `1, a, b, ab`.
pub fn klein_four(field: Field) -> Result<FinHopf> {
    let table: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
    group_algebra(field, ["1", "a", "b", "ab"], &table)
}

/// The bialgebra of the monoid `{1, z}` with `z² = z`; it has no antipode.
pub fn monoid_algebra_idempotent(field: Field) -> Result<FinHopf> {
    let mut b = HopfBuilder::new(field, ["1", "z"]);
    let one = field.one();
    b.product(0, 0, 0, one.clone())
        .product(0, 1, 1, one.clone())
        .product(1, 0, 1, one.clone())
        .product(1, 1, 1, one.clone())
        .coproduct(0, 0, 0, one.clone())
        .coproduct(1, 1, 1, one.clone())
        .unit(0, one.clone())
        .counit(0, one.clone())
        .counit(1, one);
    b.build()
}

const H4_LABELS: [&str; 4] = ["1", "g", "h", "gh"];
const G: usize = 1;
const H: usize = 2;
const GH: usize = 3;

pub(crate) fn h4_builder(f: Field) -> HopfBuilder {
    let mut b = HopfBuilder::new(f, H4_LABELS);
    // basis element i is g^(i & 1) h^(i >> 1)
    for i in 0..4 {
        for j in 0..4 {
            let (a1, b1) = (i & 1, i >> 1);
            let (a2, b2) = (j & 1, j >> 1);
            if b1 + b2 > 1 {
                continue;
            }
            let sign = if b1 * a2 == 1 { -1 } else { 1 };
            b.product(i, j, ((a1 + a2) % 2) | ((b1 + b2) << 1), f.from_int(sign));
        }
    }
    let one = f.one();
    b.coproduct(0, 0, 0, one.clone())
        .coproduct(G, G, G, one.clone())
        .coproduct(H, G, H, one.clone())
        .coproduct(0, H, H, one.clone())
        .coproduct(GH, 0, GH, one.clone())
        .coproduct(G, GH, GH, one.clone())
        .unit(0, one.clone())
        .counit(0, one.clone())
        .counit(G, one.clone())
        .antipode(0, 0, one.clone())
        .antipode(G, G, one.clone())
        .antipode(GH, H, one)
        .antipode(H, GH, f.from_int(-1));
    b
}

/// Sweedler's algebra on the basis `1, g, h, gh`.
pub fn make_h4(field: Field) -> Result<FinHopf> {
    if field.characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    h4_builder(field).build()
}

fn check_h4_host(host: &FinHopf) -> Result<()> {
    if host.field().characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    let reference = make_h4(host.field())?;
    if !reference.structure_eq(host) {
        return Err(Error::HostMismatch);
    }
    Ok(())
}

/// Values of a unital bilinear form on `H4` given its restriction to the
/// pairs of non-unit basis elements (indices 1..4, row-major).
fn h4_form(host: &Arc<FinHopf>, table: [[Scalar; 3]; 3]) -> Result<Functional> {
    let eps = host.counit().to_vec();
    Functional::from_fn(host.clone(), 2, |ix| {
        let (a, b) = (ix[0], ix[1]);
        if a == 0 {
            eps[b].clone()
        } else if b == 0 {
            eps[a].clone()
        } else {
            table[a - 1][b - 1].clone()
        }
    })
}

/// `r_t`: `r(g⊗g) = -1`, `r(h⊗h) = r(gh⊗h) = r(gh⊗gh) = -r(h⊗gh) = t`.
pub fn h4_rform(host: &Arc<FinHopf>, t: &Scalar) -> Result<Functional> {
    check_h4_host(host)?;
    let f = host.field();
    let z = f.zero();
    h4_form(
        host,
        [
            [f.from_int(-1), z.clone(), z.clone()],
            [z.clone(), t.clone(), -t],
            [z.clone(), t.clone(), t.clone()],
        ],
    )
}

/// `σ_t`: `σ(g⊗g) = 1`, `σ(h⊗h) = σ(gh⊗h) = -σ(h⊗gh) = -σ(gh⊗gh) = t/2`.
pub fn h4_cocycle(host: &Arc<FinHopf>, t: &Scalar) -> Result<Functional> {
    check_h4_host(host)?;
    let f = host.field();
    let half = &f.from_ratio(1, 2)? * t;
    let z = f.zero();
    h4_form(
        host,
        [
            [f.one(), z.clone(), z.clone()],
            [z.clone(), half.clone(), -&half],
            [z.clone(), half.clone(), -&half],
        ],
    )
}

/// `R_t = ½(1⊗1 + 1⊗g + g⊗1 - g⊗g) + (t/2)(h⊗h + h⊗gh + gh⊗gh - gh⊗h)`.
pub fn h4_rmatrix(host: &Arc<FinHopf>, t: &Scalar) -> Result<RMatrix> {
    check_h4_host(host)?;
    let f = host.field();
    let half = f.from_ratio(1, 2)?;
    let th = &half * t;
    let mut c = vec![f.zero(); 16];
    c[0] = half.clone();
    c[G] = half.clone();
    c[G * 4] = half.clone();
    c[G * 4 + G] = -&half;
    c[H * 4 + H] = th.clone();
    c[H * 4 + GH] = th.clone();
    c[GH * 4 + GH] = th.clone();
    c[GH * 4 + H] = -&th;
    RMatrix::new(host.clone(), c)
}

/// The structure family of `H4` attached to one parameter value.
#[derive(Clone, Debug)]
pub struct H4Family {
    pub r: Functional,
    pub big_r: RMatrix,
    pub sigma: Functional,
    /// The tabulated convolution inverse of `sigma`.
    pub nu: Functional,
}

pub fn h4_family(host: &Arc<FinHopf>, t: &Scalar) -> Result<H4Family> {
    let f = host.field();
    let half = &f.from_ratio(1, 2)? * t;
    let z = f.zero();
    let nu = {
        check_h4_host(host)?;
        h4_form(
            host,
            [
                [f.one(), z.clone(), z.clone()],
                [z.clone(), -&half, half.clone()],
                [z.clone(), -&half, half.clone()],
            ],
        )?
    };
    Ok(H4Family {
        r: h4_rform(host, t)?,
        big_r: h4_rmatrix(host, t)?,
        sigma: h4_cocycle(host, t)?,
        nu,
    })
}

/// `H4 → H4*`: `1 ↦ f_1 + f_g`, `g ↦ f_1 - f_g`, `h ↦ f_h + f_gh`, and `gh`
/// to the product of the images of `g` and `h`.
pub fn h4_self_duality(field: Field) -> Result<Matrix> {
    let h = make_h4(field)?;
    let dual = h.dual()?;
    let f = field;
    let one = f.one();
    let m1 = f.from_int(-1);
    let z = f.zero();
    let img_1 = vec![one.clone(), one.clone(), z.clone(), z.clone()];
    let img_g = vec![one.clone(), m1, z.clone(), z.clone()];
    let img_h = vec![z.clone(), z, one.clone(), one];
    let img_gh = dual.mul(&img_g, &img_h);
    Matrix::from_columns(f, 4, &[img_1, img_g, img_h, img_gh])
}

/// Pushes `R ∈ H⊗H` through `φ ⊗ φ` into `H*⊗H*`, read as a bilinear form on `H`.
pub fn transport_rmatrix(map: &Matrix, r: &RMatrix) -> Result<Functional> {
    let pushed = map.kron(map).apply(r.coeffs());
    Functional::new(r.host().clone(), 2, pushed)
}

/// The one-dimensional module with action `ε` and coaction `v ↦ v ⊗ 1`.
pub fn trivial_yd(host: Arc<FinHopf>) -> YDModule {
    let f = host.field();
    let n = host.dim();
    let act = host
        .counit()
        .iter()
        .map(|e| Matrix::new(f, 1, 1, vec![e.clone()]).unwrap())
        .collect();
    let coact = Matrix::new(f, n, 1, host.unit().to_vec()).unwrap();
    YDModule::new(host, act, coact).unwrap()
}

/// `k` as a YD algebra.
pub fn trivial_algebra(host: Arc<FinHopf>) -> YDAlgebra {
    let f = host.field();
    let m = trivial_yd(host);
    YDAlgebra::new(m, Matrix::identity(f, 1), vec![f.one()]).unwrap()
}

/// `H` acting on itself by `h·m = Σ h_(1) m S(h_(2))`, with the coaction
/// `χ(m) = Σ m_(2) ⊗ S⁻¹(m_(1))`.
pub fn adjoint_yd(host: Arc<FinHopf>) -> Result<YDModule> {
    let n = host.dim();
    let f = host.field();
    let (s, s_inv) = host.require_antipode()?;
    let mut act = Vec::with_capacity(n);
    for a in 0..n {
        let mut cols = Vec::with_capacity(n);
        for m in 0..n {
            let mut v = host.zero_vector(n);
            for (p, c) in host.coproduct_basis(a) {
                let x = host.mul(
                    &host.mul(&host.basis_vector(p / n), &host.basis_vector(m)),
                    &s.column(p % n),
                );
                for (o, xi) in v.iter_mut().zip(&x) {
                    *o += &(c * xi);
                }
            }
            cols.push(v);
        }
        act.push(Matrix::from_columns(f, n, &cols)?);
    }
    let mut coact = Matrix::zeros(f, n * n, n);
    for m in 0..n {
        for (p, c) in host.coproduct_basis(m) {
            let (m1, m2) = (p / n, p % n);
            for b in 0..n {
                let v = s_inv.get(b, m1);
                if !v.is_zero() {
                    coact.add_to(m2 * n + b, m, &(c * v));
                }
            }
        }
    }
    YDModule::new(host, act, coact)
}

/// The adjoint module with the product of `H`.
pub fn adjoint_algebra(host: Arc<FinHopf>) -> Result<YDAlgebra> {
    let n = host.dim();
    let f = host.field();
    let module = adjoint_yd(host.clone())?;
    let cols: Vec<Vec<crate::scalar::Scalar>> = (0..n * n)
        .map(|p| crate::hopf::to_dense(f, n, host.mul_basis(p / n, p % n)))
        .collect();
    YDAlgebra::new(module, Matrix::from_columns(f, n, &cols)?, host.unit().to_vec())
}

fn h4_comodule(host: &FinHopf, entries: &[(usize, usize, usize)]) -> Result<Matrix> {
    check_h4_host(host)?;
    let f = host.field();
    let mut c = Matrix::zeros(f, 2 * 4, 2);
    for &(j, b, i) in entries {
        c.set(j * 4 + b, i, f.one());
    }
    Ok(c)
}

/// The graded comodule `V`: `χ(v_0) = v_0 ⊗ 1`, `χ(v_1) = v_1 ⊗ g`.
pub fn graded_comodule(host: &FinHopf) -> Result<Matrix> {
    h4_comodule(host, &[(0, 0, 0), (1, G, 1)])
}

/// The comodule `W = span{1, h}`: `χ(w_0) = w_0 ⊗ 1`, `χ(w_1) = w_1 ⊗ g + w_0 ⊗ h`.
pub fn nilpotent_comodule(host: &FinHopf) -> Result<Matrix> {
    h4_comodule(host, &[(0, 0, 0), (1, G, 1), (0, H, 1)])
}

/// `V` made into a YD module through `r`.
pub fn graded_yd(r: &Functional) -> Result<YDModule> {
    induce_from_rform(graded_comodule(r.host())?, r)
}

/// `W` made into a YD module through `r`.
pub fn nilpotent_yd(r: &Functional) -> Result<YDModule> {
    induce_from_rform(nilpotent_comodule(r.host())?, r)
}

/// `k[x]/(x²)` with action `ε` and coaction `a ↦ a ⊗ 1`.
pub fn dual_numbers_trivial(host: Arc<FinHopf>) -> Result<YDAlgebra> {
    let f = host.field();
    let n = host.dim();
    let act = host.counit().iter().map(|e| Matrix::identity(f, 2).scale(e)).collect();
    let mut coact = Matrix::zeros(f, 2 * n, 2);
    for i in 0..2 {
        for b in 0..n {
            coact.set(i * n + b, i, host.unit()[b].clone());
        }
    }
    let module = YDModule::new(host, act, coact)?;
    let mut mult = Matrix::zeros(f, 2, 4);
    mult.set(0, 0, f.one());
    mult.set(1, 1, f.one());
    mult.set(1, 2, f.one());
    YDAlgebra::new(module, mult, vec![f.one(), f.zero()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{derive_antipode, is_morphism, MorphismKind};

    #[test]
    fn h4_products() {
        let h = make_h4(Field::Rational).unwrap();
        assert_eq!(h.mult_coeff(GH, G, H), Field::Rational.one());
        assert_eq!(h.mult_coeff(GH, H, G), Field::Rational.from_int(-1));
        assert!(h.check_axioms().passed());
    }

    #[test]
    fn char_two_rejected() {
        assert_eq!(make_h4(Field::prime(2).unwrap()), Err(Error::CharTwoUnsupported));
    }

    #[test]
    fn non_group_tables_rejected() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            group_algebra(Field::Rational, ["1", "z"], &bad),
            Err(Error::NotAGroup(_))
        ));
        let nonassoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(matches!(
            group_algebra(Field::Rational, ["e", "a", "b"], &nonassoc),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn z3_over_gf7() {
        let f = Field::prime(7).unwrap();
        let z3 = group_algebra_cyclic(f, 3).unwrap();
        assert!(z3.check_axioms().passed());
        assert_eq!(
            derive_antipode(&z3.with_antipode(None).unwrap()).as_ref(),
            z3.antipode()
        );
    }

    #[test]
    fn self_duality_is_hopf_iso() {
        let f = Field::Rational;
        let phi = h4_self_duality(f).unwrap();
        let h = make_h4(f).unwrap();
        let r = is_morphism(&phi, &h, &h.dual().unwrap(), MorphismKind::Hopf).unwrap();
        assert!(r.passed(), "{r}");
    }
}
