//! Finite-dimensional Hopf algebras as structure constants.
//!
//! Basis elements are `e_0 .. e_{n-1}`; tensor powers use the flat index
//! `i * n + j` (and `((i * n) + j) * n + k` for three factors, and so on).
//! Products and coproducts of basis elements are stored sparsely with
//! entries sorted by index and no explicit zeros, so derived equality is
//! tensor equality.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{CheckReport, Witness};
use crate::scalar::{Field, Scalar};

pub(crate) type SparseVec = Vec<(usize, Scalar)>;

/// Sorts by index, merges duplicates and drops zeros.
pub(crate) fn canonical(entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in entries {
        if c.is_zero() {
            continue;
        }
        match map.get_mut(&i) {
            Some(v) => *v += &c,
            None => {
                map.insert(i, c);
            }
        }
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub(crate) fn to_dense(field: Field, len: usize, sparse: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    for (i, c) in sparse {
        v[*i] += c;
    }
    v
}

pub(crate) fn support(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

/// Decomposes a flat tensor index into `k` base-`n` digits, most significant first.
pub(crate) fn split_index(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut digits = vec![0; k];
    for d in digits.iter_mut().rev() {
        *d = idx % n;
        idx /= n;
    }
    digits
}

pub(crate) fn join_index(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

/// A finite-dimensional bialgebra, optionally carrying an antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinHopf {
    field: Field,
    labels: Vec<String>,
    /// `products[i * n + j]` is `e_i e_j`.
    products: Vec<SparseVec>,
    unit: Vec<Scalar>,
    /// `coproducts[k]` is `Δ(e_k)` over the flat basis of `H ⊗ H`.
    coproducts: Vec<SparseVec>,
    counit: Vec<Scalar>,
    antipode: Option<Matrix>,
    antipode_inv: Option<Matrix>,
}

/// Incremental construction from sparse structure-constant entries.
#[derive(Clone, Debug)]
pub struct HopfBuilder {
    field: Field,
    labels: Vec<String>,
    products: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
    coproducts: Vec<Vec<(usize, Scalar)>>,
    counit: Vec<Scalar>,
    antipode: Option<Matrix>,
}

impl HopfBuilder {
    pub fn new<S: Into<String>>(field: Field, labels: impl IntoIterator<Item = S>) -> HopfBuilder {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        HopfBuilder {
            field,
            products: vec![Vec::new(); n * n],
            unit: vec![field.zero(); n],
            coproducts: vec![Vec::new(); n],
            counit: vec![field.zero(); n],
            antipode: None,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Adds `c` to the coefficient of `e_k` in `e_i e_j`.
    pub fn product(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        let n = self.dim();
        self.products[i * n + j].push((k, c));
        self
    }

    /// Adds `c` to the coefficient of `e_i ⊗ e_j` in `Δ(e_k)`.
    pub fn coproduct(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        let n = self.dim();
        self.coproducts[k].push((i * n + j, c));
        self
    }

    pub fn unit(&mut self, i: usize, c: Scalar) -> &mut Self {
        self.unit[i] += &c;
        self
    }

    pub fn counit(&mut self, i: usize, c: Scalar) -> &mut Self {
        self.counit[i] += &c;
        self
    }

    /// Adds `c` to the coefficient of `e_i` in `S(e_j)`.
    pub fn antipode(&mut self, i: usize, j: usize, c: Scalar) -> &mut Self {
        let n = self.dim();
        let m = self.antipode.get_or_insert_with(|| Matrix::zeros(self.field, n, n));
        m.add_to(i, j, &c);
        self
    }

    pub fn antipode_matrix(&mut self, s: Matrix) -> &mut Self {
        self.antipode = Some(s);
        self
    }

    pub fn build(&self) -> Result<FinHopf> {
        let n = self.dim();
        let check_index = |i: usize, bound: usize| {
            if i < bound {
                Ok(())
            } else {
                Err(Error::DimensionMismatch(format!("index {i} out of range {bound}")))
            }
        };
        for entries in &self.products {
            for (k, _) in entries {
                check_index(*k, n)?;
            }
        }
        for entries in &self.coproducts {
            for (k, _) in entries {
                check_index(*k, n * n)?;
            }
        }
        FinHopf::from_parts(
            self.field,
            self.labels.clone(),
            self.products.iter().map(|e| canonical(e.iter().cloned())).collect(),
            self.unit.clone(),
            self.coproducts.iter().map(|e| canonical(e.iter().cloned())).collect(),
            self.counit.clone(),
            self.antipode.clone(),
        )
    }
}

/// Which of the three opposite constructions to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Op,
    Cop,
    OpCop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    Algebra,
    Coalgebra,
    Hopf,
}

impl FinHopf {
    fn from_parts(
        field: Field,
        labels: Vec<String>,
        products: Vec<SparseVec>,
        unit: Vec<Scalar>,
        coproducts: Vec<SparseVec>,
        counit: Vec<Scalar>,
        antipode: Option<Matrix>,
    ) -> Result<FinHopf> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("dimension must be positive".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::StructureInvalid(format!("bad basis label {l:?}")));
            }
            if labels[..i].contains(l) {
                return Err(Error::StructureInvalid(format!("duplicate basis label {l}")));
            }
        }
        if products.len() != n * n || coproducts.len() != n || unit.len() != n || counit.len() != n {
            return Err(Error::DimensionMismatch(
                "structure tensors do not match the basis".into(),
            ));
        }
        let all_scalars = products
            .iter()
            .chain(&coproducts)
            .flat_map(|e| e.iter().map(|(_, c)| c))
            .chain(&unit)
            .chain(&counit);
        for c in all_scalars {
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
        }
        let antipode_inv = match &antipode {
            Some(s) => {
                if s.rows() != n || !s.is_square() {
                    return Err(Error::DimensionMismatch("antipode must be n x n".into()));
                }
                if s.field() != field {
                    return Err(Error::FieldMismatch(field, s.field()));
                }
                s.inverse()?
            }
            None => None,
        };
        Ok(FinHopf {
            field,
            labels,
            products,
            unit,
            coproducts,
            counit,
            antipode,
            antipode_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn relabel(&self, labels: Vec<String>) -> Result<FinHopf> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch("label count".into()));
        }
        let mut h = self.clone();
        h.labels = labels;
        FinHopf::from_parts(
            h.field,
            h.labels,
            h.products,
            h.unit,
            h.coproducts,
            h.counit,
            h.antipode,
        )
    }

    /// Coefficient of `e_k` in `e_i e_j`.
    pub fn mult_coeff(&self, k: usize, i: usize, j: usize) -> Scalar {
        lookup(&self.products[i * self.dim() + j], k, self.field)
    }

    /// Coefficient of `e_i ⊗ e_j` in `Δ(e_k)`.
    pub fn comult_coeff(&self, i: usize, j: usize, k: usize) -> Scalar {
        lookup(&self.coproducts[k], i * self.dim() + j, self.field)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    pub fn coproduct_basis(&self, k: usize) -> &[(usize, Scalar)] {
        &self.coproducts[k]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> Option<&Matrix> {
        self.antipode.as_ref()
    }

    /// `S⁻¹`, if an invertible antipode is present.
    pub fn antipode_inverse(&self) -> Option<&Matrix> {
        self.antipode_inv.as_ref()
    }

    pub(crate) fn require_antipode(&self) -> Result<(&Matrix, &Matrix)> {
        match (&self.antipode, &self.antipode_inv) {
            (Some(s), Some(si)) => Ok((s, si)),
            (None, _) => Err(Error::AxiomFailure("no antipode".into())),
            (Some(_), None) => Err(Error::AxiomFailure("antipode is not bijective".into())),
        }
    }

    pub fn with_antipode(&self, s: Option<Matrix>) -> Result<FinHopf> {
        FinHopf::from_parts(
            self.field,
            self.labels.clone(),
            self.products.clone(),
            self.unit.clone(),
            self.coproducts.clone(),
            self.counit.clone(),
            s,
        )
    }

    /// Equality of every structure tensor, ignoring basis labels.
    pub fn structure_eq(&self, other: &FinHopf) -> bool {
        self.field == other.field
            && self.products == other.products
            && self.unit == other.unit
            && self.coproducts == other.coproducts
            && self.counit == other.counit
            && self.antipode == other.antipode
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self, len: usize) -> Vec<Scalar> {
        vec![self.field.zero(); len]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, a) in support(x) {
            for (j, b) in support(y) {
                let ab = a * b;
                for (k, c) in &self.products[i * n + j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    pub fn coproduct(&self, x: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n * n];
        for (k, a) in support(x) {
            for (ij, c) in &self.coproducts[k] {
                out[*ij] += &(a * c);
            }
        }
        out
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (i, a) in support(x) {
            if !self.counit[i].is_zero() {
                acc += &(a * &self.counit[i]);
            }
        }
        acc
    }

    /// Product in the tensor power `H^{⊗k}` (factorwise).
    pub fn tensor_mul(&self, k: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let len = n.pow(k as u32);
        let mut out = vec![self.field.zero(); len];
        for (p, a) in support(x) {
            let pd = split_index(p, n, k);
            for (q, b) in support(y) {
                let qd = split_index(q, n, k);
                let ab = a * b;
                for (idx, c) in self.tensor_basis_product(&pd, &qd) {
                    out[idx] += &(&ab * &c);
                }
            }
        }
        out
    }

    /// Expansion of `(e_{p_1} ⊗ ..)(e_{q_1} ⊗ ..)` as flat index terms.
    pub(crate) fn tensor_basis_product(&self, p: &[usize], q: &[usize]) -> Vec<(usize, Scalar)> {
        let n = self.dim();
        let mut terms = vec![(0usize, self.field.one())];
        for (&a, &b) in p.iter().zip(q) {
            let prod = &self.products[a * n + b];
            if prod.is_empty() {
                return Vec::new();
            }
            let mut next = Vec::with_capacity(terms.len() * prod.len());
            for (idx, c) in &terms {
                for (k, d) in prod {
                    next.push((idx * n + k, c * d));
                }
            }
            terms = next;
        }
        terms
    }

    /// Coproduct of a basis element of `H^{⊗k}`: terms `(left, right, coeff)`
    /// with `Δ(x_1 ⊗ .. ⊗ x_k) = Σ (x_1' ⊗ .. ⊗ x_k') ⊗ (x_1'' ⊗ .. ⊗ x_k'')`.
    pub(crate) fn tensor_coproduct_terms(&self, k: usize, idx: usize) -> Vec<(usize, usize, Scalar)> {
        let n = self.dim();
        let digits = split_index(idx, n, k);
        let mut terms = vec![(0usize, 0usize, self.field.one())];
        for d in digits {
            let cop = &self.coproducts[d];
            let mut next = Vec::with_capacity(terms.len() * cop.len());
            for (l, r, c) in &terms {
                for (ij, e) in cop {
                    next.push((l * n + ij / n, r * n + ij % n, c * e));
                }
            }
            terms = next;
        }
        terms
    }

    /// `Δ^{(2)}(e_k) = (Δ ⊗ id)Δ(e_k)` as `(a, b, c, coeff)` terms.
    pub(crate) fn double_coproduct_terms(&self, k: usize) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for (ij, c) in &self.coproducts[k] {
            let (i, j) = (ij / n, ij % n);
            for (ab, d) in &self.coproducts[i] {
                out.push((ab / n, ab % n, j, c * d));
            }
        }
        out
    }

    /// Applies `Δ` to leg `leg` of an element of `H^{⊗k}`, giving `H^{⊗(k+1)}`.
    pub(crate) fn coproduct_leg(&self, k: usize, leg: usize, x: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n.pow(k as u32 + 1)];
        for (p, a) in support(x) {
            let d = split_index(p, n, k);
            for (ij, c) in &self.coproducts[d[leg]] {
                let mut e = Vec::with_capacity(k + 1);
                e.extend_from_slice(&d[..leg]);
                e.push(ij / n);
                e.push(ij % n);
                e.extend_from_slice(&d[leg + 1..]);
                out[join_index(&e, n)] += &(a * c);
            }
        }
        out
    }

    /// Permutes tensor legs: output leg `i` is input leg `perm[i]`.
    pub(crate) fn permute_legs(&self, k: usize, perm: &[usize], x: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); x.len()];
        for (p, a) in support(x) {
            let d = split_index(p, n, k);
            let e: Vec<usize> = perm.iter().map(|&src| d[src]).collect();
            out[join_index(&e, n)] += a;
        }
        out
    }

    /// The unit of `H^{⊗k}`.
    pub(crate) fn tensor_unit(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.one()];
        for _ in 0..k {
            v = kron_vec(&v, &self.unit);
        }
        v
    }

    /// Full report over the eight axiom families.
    pub fn check_axioms(&self) -> CheckReport {
        let n = self.dim();
        let f = self.field;
        let mut report = CheckReport::new();

        let mut fail = None;
        'assoc: for i in 0..n {
            for j in 0..n {
                let ij = to_dense(f, n, &self.products[i * n + j]);
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis_vector(k));
                    let jk = to_dense(f, n, &self.products[j * n + k]);
                    let rhs = self.mul(&self.basis_vector(i), &jk);
                    if lhs != rhs {
                        fail = Some(Witness::new(&[i, j, k], &lhs, &rhs));
                        break 'assoc;
                    }
                }
            }
        }
        report.record("associativity", fail);

        let mut fail = None;
        for i in 0..n {
            let e = self.basis_vector(i);
            let left = self.mul(&self.unit, &e);
            let right = self.mul(&e, &self.unit);
            if left != e {
                fail = Some(Witness::new(&[i], &left, &e));
                break;
            }
            if right != e {
                fail = Some(Witness::new(&[i], &right, &e));
                break;
            }
        }
        report.record("unit", fail);

        let mut fail = None;
        for k in 0..n {
            let d = to_dense(f, n * n, &self.coproducts[k]);
            let lhs = self.coproduct_leg(2, 0, &d);
            let rhs = self.coproduct_leg(2, 1, &d);
            if lhs != rhs {
                fail = Some(Witness::new(&[k], &lhs, &rhs));
                break;
            }
        }
        report.record("coassociativity", fail);

        let mut fail = None;
        for k in 0..n {
            let e = self.basis_vector(k);
            let mut left = vec![f.zero(); n];
            let mut right = vec![f.zero(); n];
            for (ij, c) in &self.coproducts[k] {
                let (i, j) = (ij / n, ij % n);
                left[j] += &(c * &self.counit[i]);
                right[i] += &(c * &self.counit[j]);
            }
            if left != e {
                fail = Some(Witness::new(&[k], &left, &e));
                break;
            }
            if right != e {
                fail = Some(Witness::new(&[k], &right, &e));
                break;
            }
        }
        report.record("counit", fail);

        let mut fail = None;
        let unit_cop = self.coproduct(&self.unit);
        let unit2 = self.tensor_unit(2);
        if unit_cop != unit2 {
            fail = Some(Witness::new(&[], &unit_cop, &unit2));
        }
        'cm: for i in 0..n {
            let di = to_dense(f, n * n, &self.coproducts[i]);
            for j in 0..n {
                let lhs = self.coproduct(&to_dense(f, n, &self.products[i * n + j]));
                let dj = to_dense(f, n * n, &self.coproducts[j]);
                let rhs = self.tensor_mul(2, &di, &dj);
                if fail.is_none() && lhs != rhs {
                    fail = Some(Witness::new(&[i, j], &lhs, &rhs));
                    break 'cm;
                }
            }
        }
        report.record("comultiplication_multiplicative", fail);

        let mut fail = None;
        let eps_unit = self.counit_of(&self.unit);
        if !eps_unit.is_one() {
            fail = Some(Witness::new(&[], &[eps_unit], &[f.one()]));
        }
        'em: for i in 0..n {
            for j in 0..n {
                let lhs = self.counit_of(&to_dense(f, n, &self.products[i * n + j]));
                let rhs = &self.counit[i] * &self.counit[j];
                if fail.is_none() && lhs != rhs {
                    fail = Some(Witness::new(&[i, j], &[lhs], &[rhs]));
                    break 'em;
                }
            }
        }
        report.record("counit_multiplicative", fail);

        match &self.antipode {
            None => {
                report.fail("antipode", Witness::note(&[], "no antipode given"));
                report.fail("antipode_bijective", Witness::note(&[], "no antipode given"));
            }
            Some(s) => {
                let mut fail = None;
                for k in 0..n {
                    let target: Vec<Scalar> = self.unit.iter().map(|u| u * &self.counit[k]).collect();
                    let mut left = vec![f.zero(); n];
                    let mut right = vec![f.zero(); n];
                    for (ij, c) in &self.coproducts[k] {
                        let (i, j) = (ij / n, ij % n);
                        let si = s.column(i);
                        let sj = s.column(j);
                        let l = self.mul(&si, &self.basis_vector(j));
                        let r = self.mul(&self.basis_vector(i), &sj);
                        for x in 0..n {
                            left[x] += &(c * &l[x]);
                            right[x] += &(c * &r[x]);
                        }
                    }
                    if left != target {
                        fail = Some(Witness::new(&[k], &left, &target));
                        break;
                    }
                    if right != target {
                        fail = Some(Witness::new(&[k], &right, &target));
                        break;
                    }
                }
                report.record("antipode", fail);
                if self.antipode_inv.is_some() {
                    report.pass("antipode_bijective");
                } else {
                    report.fail("antipode_bijective", Witness::note(&[], "antipode matrix is singular"));
                }
            }
        }
        report
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.check_axioms();
        match report.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::AxiomFailure(c.name.clone())),
        }
    }

    /// The dual Hopf algebra on the dual basis `f_i` (labels `f_<label>`).
    pub fn dual(&self) -> Result<FinHopf> {
        self.ensure_valid()?;
        Ok(self.dual_unchecked())
    }

    pub(crate) fn dual_unchecked(&self) -> FinHopf {
        let n = self.dim();
        let mut products: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for k in 0..n {
            for (ij, c) in &self.coproducts[k] {
                products[*ij].push((k, c.clone()));
            }
        }
        let mut coproducts: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for ij in 0..n * n {
            for (k, c) in &self.products[ij] {
                coproducts[*k].push((ij, c.clone()));
            }
        }
        FinHopf::from_parts(
            self.field,
            self.labels.iter().map(|l| format!("f_{l}")).collect(),
            products.into_iter().map(canonical).collect(),
            self.counit.clone(),
            coproducts.into_iter().map(canonical).collect(),
            self.unit.clone(),
            self.antipode.as_ref().map(Matrix::transpose),
        )
        .expect("dual of a consistent structure is consistent")
    }

    /// `H^op`, `H^cop` or `H^{op,cop}`.
    pub fn variant(&self, which: Variant) -> Result<FinHopf> {
        self.ensure_valid()?;
        Ok(self.variant_unchecked(which))
    }

    pub(crate) fn variant_unchecked(&self, which: Variant) -> FinHopf {
        let n = self.dim();
        let swap_mult = matches!(which, Variant::Op | Variant::OpCop);
        let swap_comult = matches!(which, Variant::Cop | Variant::OpCop);
        let products = if swap_mult {
            (0..n * n)
                .map(|ij| self.products[(ij % n) * n + ij / n].clone())
                .collect()
        } else {
            self.products.clone()
        };
        let coproducts = if swap_comult {
            self.coproducts
                .iter()
                .map(|e| canonical(e.iter().map(|(ij, c)| ((ij % n) * n + ij / n, c.clone()))))
                .collect()
        } else {
            self.coproducts.clone()
        };
        let antipode = match which {
            Variant::OpCop => self.antipode.clone(),
            _ => self.antipode_inv.clone(),
        };
        FinHopf::from_parts(
            self.field,
            self.labels.clone(),
            products,
            self.unit.clone(),
            coproducts,
            self.counit.clone(),
            antipode,
        )
        .expect("variant of a consistent structure is consistent")
    }

    /// Tensor product Hopf algebra on the flat basis `i * n_B + j`.
    pub fn tensor(&self, other: &FinHopf) -> Result<FinHopf> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (n, m) = (self.dim(), other.dim());
        let f = self.field;
        let labels: Vec<String> = (0..n * m)
            .map(|p| format!("{}.{}", self.labels[p / m], other.labels[p % m]))
            .collect();
        let mut b = HopfBuilder::new(f, labels);
        for p in 0..n * m {
            let (a, x) = (p / m, p % m);
            for q in 0..n * m {
                let (c, y) = (q / m, q % m);
                for (k, u) in self.mul_basis(a, c) {
                    for (l, v) in other.mul_basis(x, y) {
                        b.product(p, q, k * m + l, u * v);
                    }
                }
            }
            for (ij, u) in self.coproduct_basis(a) {
                for (kl, v) in other.coproduct_basis(x) {
                    let left = (ij / n) * m + kl / m;
                    let right = (ij % n) * m + kl % m;
                    b.coproduct(left, right, p, u * v);
                }
            }
            b.unit(p, &self.unit[a] * &other.unit[x]);
            b.counit(p, &self.counit[a] * &other.counit[x]);
        }
        if let (Some(s), Some(t)) = (&self.antipode, &other.antipode) {
            b.antipode_matrix(s.kron(t));
        }
        b.build()
    }
}

fn lookup(entries: &[(usize, Scalar)], idx: usize, field: Field) -> Scalar {
    match entries.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(p) => entries[p].1.clone(),
        Err(_) => field.zero(),
    }
}

pub(crate) fn kron_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let zero = y
        .first()
        .map(|s| s.field().zero())
        .unwrap_or_else(|| x[0].field().zero());
    let mut out = vec![zero; x.len() * y.len()];
    for (i, a) in support(x) {
        for (j, b) in support(y) {
            out[i * y.len() + j] = a * b;
        }
    }
    out
}

/// Solves for the convolution inverse of the identity map.
///
/// Unknowns are the entries `S[a][i]`; both `Σ S(e_(1)) e_(2) = ε(e) 1` and
/// `Σ e_(1) S(e_(2)) = ε(e) 1` are imposed, which pins `S` down uniquely when
/// it exists.
pub fn derive_antipode(h: &FinHopf) -> Option<Matrix> {
    let n = h.dim();
    let f = h.field;
    let unknowns = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for side in 0..2 {
        for k in 0..n {
            let mut block = vec![vec![f.zero(); unknowns]; n];
            for (ij, c) in &h.coproducts[k] {
                let (i, j) = (ij / n, ij % n);
                for a in 0..n {
                    // side 0: S(e_i) e_j, S(e_i) = Σ_a S[a][i] e_a
                    // side 1: e_i S(e_j)
                    let (var, prod) = if side == 0 {
                        (a * n + i, h.mul_basis(a, j))
                    } else {
                        (a * n + j, h.mul_basis(i, a))
                    };
                    for (b, m) in prod {
                        block[*b][var] += &(c * m);
                    }
                }
            }
            for (b, row) in block.into_iter().enumerate() {
                rows.push(row);
                rhs.push(&h.counit[k] * &h.unit[b]);
            }
        }
    }
    let a = Matrix::from_rows(f, rows).ok()?;
    let x = a.solve(&rhs).ok()??;
    Matrix::new(f, n, n, x).ok()
}

/// Checks that `f` (a `dim B x dim A` matrix) is a morphism of the given kind.
pub fn is_morphism(f: &Matrix, a: &FinHopf, b: &FinHopf, kind: MorphismKind) -> Result<CheckReport> {
    if f.rows() != b.dim() || f.cols() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            b.dim(),
            a.dim()
        )));
    }
    if a.field != b.field || f.field() != a.field {
        return Err(Error::FieldMismatch(a.field, b.field));
    }
    let n = a.dim();
    let mut report = CheckReport::new();
    let image: Vec<Vec<Scalar>> = (0..n).map(|j| f.column(j)).collect();
    if matches!(kind, MorphismKind::Algebra | MorphismKind::Hopf) {
        let mut fail = None;
        'm: for i in 0..n {
            for j in 0..n {
                let lhs = f.apply(&to_dense(a.field, n, a.mul_basis(i, j)));
                let rhs = b.mul(&image[i], &image[j]);
                if lhs != rhs {
                    fail = Some(Witness::new(&[i, j], &lhs, &rhs));
                    break 'm;
                }
            }
        }
        report.record("multiplicative", fail);
        let fu = f.apply(&a.unit);
        if fu == b.unit {
            report.pass("unital");
        } else {
            report.fail("unital", Witness::new(&[], &fu, &b.unit));
        }
    }
    if matches!(kind, MorphismKind::Coalgebra | MorphismKind::Hopf) {
        let ff = f.kron(f);
        let mut fail = None;
        for k in 0..n {
            let lhs = b.coproduct(&image[k]);
            let rhs = ff.apply(&to_dense(a.field, n * n, a.coproduct_basis(k)));
            if lhs != rhs {
                fail = Some(Witness::new(&[k], &lhs, &rhs));
                break;
            }
        }
        report.record("comultiplicative", fail);
        let mut fail = None;
        for k in 0..n {
            let lhs = b.counit_of(&image[k]);
            if lhs != a.counit[k] {
                fail = Some(Witness::new(&[k], &[lhs], &[a.counit[k].clone()]));
                break;
            }
        }
        report.record("counital", fail);
    }
    if kind == MorphismKind::Hopf {
        match (a.antipode(), b.antipode()) {
            (Some(sa), Some(sb)) => {
                let lhs = sb.mul(f);
                let rhs = f.mul(sa);
                if lhs == rhs {
                    report.pass("antipode");
                } else {
                    let j = (0..n).find(|&j| lhs.column(j) != rhs.column(j)).unwrap_or(0);
                    report.fail("antipode", Witness::new(&[j], &lhs.column(j), &rhs.column(j)));
                }
            }
            _ => report.fail("antipode", Witness::note(&[], "missing antipode")),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn split_and_join_are_inverse() {
        for idx in 0..64 {
            assert_eq!(join_index(&split_index(idx, 4, 3), 4), idx);
        }
    }

    #[test]
    fn z2_passes_all_axioms() {
        let h = catalog::group_algebra_cyclic(Field::Rational, 2).unwrap();
        let r = h.check_axioms();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 8);
    }

    #[test]
    fn corrupted_h4_coproduct_fails_with_witness() {
        let h = catalog::make_h4(Field::Rational).unwrap();
        let f = Field::Rational;
        // Δ(h) := h⊗1 + 1⊗h
        let mut b = catalog::h4_builder(f);
        b.coproducts[2] = vec![(2 * 4, f.one()), (2, f.one())];
        let bad = b.build().unwrap();
        let r = bad.check_axioms();
        assert!(!r.passed());
        let failing: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(
            failing.contains(&"antipode") || failing.contains(&"coassociativity"),
            "{failing:?}"
        );
        assert!(r.first_failure().unwrap().witness.is_some());
        assert!(h.check_axioms().passed());
    }

    #[test]
    fn missing_antipode_is_reported() {
        let h = catalog::make_h4(Field::Rational).unwrap().with_antipode(None).unwrap();
        let r = h.check_axioms();
        assert!(!r.is_pass("antipode"));
        assert!(r.is_pass("associativity"));
    }

    #[test]
    fn derive_antipode_recovers_h4() {
        let h = catalog::make_h4(Field::Rational).unwrap();
        let bare = h.with_antipode(None).unwrap();
        assert_eq!(derive_antipode(&bare).as_ref(), h.antipode());
    }

    #[test]
    fn non_group_monoid_has_no_antipode() {
        let m = catalog::monoid_algebra_idempotent(Field::Rational).unwrap();
        assert!(derive_antipode(&m).is_none());
    }

    #[test]
    fn dimension_errors() {
        let f = Field::Rational;
        assert!(matches!(
            HopfBuilder::new(f, ["a"]).product(0, 0, 3, f.one()).build(),
            Err(Error::DimensionMismatch(_))
        ));
        let h = catalog::make_h4(f).unwrap();
        assert!(matches!(
            is_morphism(&Matrix::identity(f, 3), &h, &h, MorphismKind::Algebra),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            HopfBuilder::new(f, ["a", "a"]).build(),
            Err(Error::StructureInvalid(_))
        ));
    }

    #[test]
    fn op_differs_exactly_on_anticommuting_pairs() {
        let h = catalog::make_h4(Field::Rational).unwrap();
        let op = h.variant(Variant::Op).unwrap();
        let mut diff = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    if h.mult_coeff(k, i, j) != op.mult_coeff(k, i, j) {
                        diff.push((i, j));
                    }
                }
            }
        }
        diff.dedup();
        // g·h = gh but h·g = -gh, and so on: the pairs involving g with h/gh
        assert_eq!(diff, vec![(1, 2), (1, 3), (2, 1), (3, 1)]);
    }
}
