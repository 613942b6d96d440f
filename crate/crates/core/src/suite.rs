//! The H4 reproduction suite: twelve fixed checks, each made of many exact
//! sub-assertions, run over a chosen field.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::catalog::{self, h4_cocycle, h4_family, h4_rform, h4_rmatrix, make_h4};
use crate::convolution::{
    check_2cocycle, check_rform, cocycle_twist, conv_inverse, convolve, twist_rform, CocycleSide, Functional,
};
use crate::double::{
    build_double, check_quasitriangular, check_triangular, element_order, exponent_element, monodromy,
    verify_double_isos,
};
use crate::error::Result;
use crate::hopf::{derive_antipode, is_morphism, FinHopf, MorphismKind, Variant};
use crate::report::CheckReport;
use crate::scalar::{Field, Scalar};
use crate::yd::{
    action_is_induced, braiding_is_symmetric, check_braiding, check_duality_braiding, check_duality_smash, check_fg,
    check_yd, check_yd_algebra, dualize_alg_onto, dualize_onto, end_algebra, is_azumaya, map_fg, twist_alg,
    yd_opposite, EndSide,
};

pub const CHECK_IDS: [&str; 12] = [
    "P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9", "P10", "P11", "P12",
];

/// Bound used for multiplicative orders in the double.
pub const ORDER_BOUND: usize = 64;

/// The `(s, t)` grid for the two-parameter identity.
pub const GRID: [i64; 6] = [-2, -1, 0, 1, 2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub id: String,
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub field: String,
    pub t: String,
    pub checks: Vec<SuiteCheck>,
    pub passed: bool,
}

/// The field and the value of `t` to run under. Over `ratfun` the default
/// `t` is the indeterminate itself; elsewhere it is 3.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub field: Field,
    pub t: Scalar,
}

impl SuiteConfig {
    pub fn new(field: Field, t: Option<Scalar>) -> Result<SuiteConfig> {
        let t = match t {
            Some(t) => {
                if t.field() != field {
                    return Err(crate::Error::FieldMismatch(field, t.field()));
                }
                t
            }
            None => match field {
                Field::RatFun => field.var()?,
                _ => field.from_int(3),
            },
        };
        Ok(SuiteConfig { field, t })
    }

    fn symbolic(&self) -> bool {
        self.field == Field::RatFun && self.t == Field::RatFun.var().expect("ratfun has t")
    }
}

/// Accumulates named sub-assertions.
#[derive(Default)]
struct Probe {
    total: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Probe {
    fn check(&mut self, name: &str, ok: bool) {
        self.total += 1;
        if !ok {
            self.failures.push(name.to_string());
        }
    }

    fn report(&mut self, name: &str, r: &CheckReport) {
        self.total += 1;
        if let Some(c) = r.first_failure() {
            self.failures.push(format!("{name}: {}", c.name));
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    fn finish(self) -> (Status, String) {
        let mut detail = if self.failures.is_empty() {
            format!("{} assertions hold", self.total)
        } else {
            format!(
                "{} of {} assertions fail: {}",
                self.failures.len(),
                self.total,
                self.failures.join("; ")
            )
        };
        for n in self.notes {
            detail.push_str("; ");
            detail.push_str(&n);
        }
        let status = if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        (status, detail)
    }
}

struct Ctx {
    cfg: SuiteConfig,
    h: Arc<FinHopf>,
}

impl Ctx {
    fn f(&self) -> Field {
        self.cfg.field
    }

    fn int(&self, v: i64) -> Scalar {
        self.f().from_int(v)
    }
}

fn check_name(id: &str) -> &'static str {
    match id {
        "P1" => "h4_axioms",
        "P2" => "rform_cotriangular",
        "P3" => "rmatrix_triangular",
        "P4" => "cocycle_and_inverse",
        "P5" => "twist_fixes_product",
        "P6" => "twisted_rform_family",
        "P7" => "self_duality",
        "P8" => "double_exponent",
        "P9" => "double_isomorphisms",
        "P10" => "yd_suite",
        "P11" => "duality_functor",
        "P12" => "twist_functor",
        _ => "unknown",
    }
}

fn p1(_: Option<&Ctx>) -> Result<Probe> {
    let mut p = Probe::default();
    for field in [Field::Rational, Field::prime(5)?, Field::prime(7)?, Field::RatFun] {
        let h = make_h4(field)?;
        p.report(&format!("axioms over {field}"), &h.check_axioms());
        let (g, hh, gh) = (1, 2, 3);
        p.check("g·h = gh", h.mult_coeff(gh, g, hh).is_one());
        p.check("h·g = -gh", h.mult_coeff(gh, hh, g) == field.from_int(-1));
        p.check("g² = 1", h.mult_coeff(0, g, g).is_one());
        p.check("h² = 0", (0..4).all(|k| h.mult_coeff(k, hh, hh).is_zero()));
        let s = h.antipode().expect("H4 has an antipode");
        p.check("S(g) = g", s.column(g) == h.basis_vector(g));
        p.check("S(h) = gh", s.column(hh) == h.basis_vector(gh));
        p.check(
            "S recovered from the bialgebra",
            derive_antipode(&h.with_antipode(None)?).as_ref() == Some(s),
        );
        let s2 = s.mul(s);
        p.check("S² ≠ id, S⁴ = id", !s2.is_identity() && s2.mul(&s2).is_identity());
        p.check(
            "Δ(gh) = gh⊗1 + g⊗gh",
            h.comult_coeff(gh, 0, gh).is_one()
                && h.comult_coeff(g, gh, gh).is_one()
                && h.coproduct_basis(gh).len() == 2,
        );
    }
    p.check(
        "GF(2) rejected",
        matches!(make_h4(Field::prime(2)?), Err(crate::Error::CharTwoUnsupported)),
    );
    Ok(p)
}

fn p2(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let r = h4_rform(&c.h, &c.cfg.t)?;
    p.report("r_t R-form and cotriangular", &check_rform(&r, true));
    let e = Functional::counit_power(c.h.clone(), 2);
    let rt = r.transpose();
    p.check(
        "r_t * r_tτ = ε⊗ε = r_tτ * r_t",
        convolve(&r, &rt)? == e && convolve(&rt, &r)? == e,
    );
    let r0 = h4_rform(&c.h, &c.f().zero())?;
    p.check("r_0(h⊗h) = 0", r0.value(&[2, 2]).is_zero());
    p.check("r_0(g⊗g) = -1", *r0.value(&[1, 1]) == c.int(-1));
    p.report("r_t left cocycle", &check_2cocycle(&r, CocycleSide::Left));
    match conv_inverse(&r)? {
        Some(inv) => {
            p.check("r_t⁻¹ = r_t τ", inv == r.transpose());
            p.report(
                "r_t⁻¹τ left cocycle",
                &check_2cocycle(&inv.transpose(), CocycleSide::Left),
            );
        }
        None => p.check("r_t invertible", false),
    }
    Ok(p)
}

fn p3(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    for (label, t) in [("R_t", c.cfg.t.clone()), ("R_0", c.f().zero())] {
        let big_r = h4_rmatrix(&c.h, &t)?;
        p.report(&format!("{label} quasitriangular"), &check_quasitriangular(&big_r));
        p.check(&format!("{label} triangular"), check_triangular(&big_r));
        let back = big_r.mul(&big_r.flip())?;
        p.check(&format!("{label}(τ{label}) = 1⊗1"), back.coeffs() == c.h.tensor_unit(2));
    }
    let r0 = h4_rmatrix(&c.h, &c.f().zero())?;
    p.check("τR_0 = R_0", r0.flip() == r0);
    p.check("R_0² = 1⊗1", r0.mul(&r0)?.coeffs() == c.h.tensor_unit(2));
    Ok(p)
}

fn p4(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let fam = h4_family(&c.h, &c.cfg.t)?;
    p.report("σ_t left cocycle", &check_2cocycle(&fam.sigma, CocycleSide::Left));
    p.report("σ_t right cocycle", &check_2cocycle(&fam.sigma, CocycleSide::Right));
    let half = &c.f().from_ratio(1, 2)? * &c.cfg.t;
    p.check("σ_t(gh⊗gh) = -t/2", *fam.sigma.value(&[3, 3]) == -&half);
    p.check("ν_t(h⊗h) = -t/2", *fam.nu.value(&[2, 2]) == -&half);
    let inv = conv_inverse(&fam.sigma)?;
    p.check("conv_inverse(σ_t) = ν_t", inv.as_ref() == Some(&fam.nu));
    let e = Functional::counit_power(c.h.clone(), 2);
    p.check(
        "σ_t * ν_t = ε⊗ε = ν_t * σ_t",
        convolve(&fam.sigma, &fam.nu)? == e && convolve(&fam.nu, &fam.sigma)? == e,
    );
    Ok(p)
}

fn p5(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let sigma = h4_cocycle(&c.h, &c.cfg.t)?;
    let tw = cocycle_twist(&c.h, &sigma)?;
    p.check("twist by σ_t equals H4", tw.structure_eq(&c.h));
    p.report("twisted algebra axioms", &tw.check_axioms());
    let e = Functional::counit_power(c.h.clone(), 2);
    p.check("twist by ε⊗ε equals H4", cocycle_twist(&c.h, &e)?.structure_eq(&c.h));
    let r0 = h4_rform(&c.h, &c.f().zero())?;
    let op = c.h.variant(Variant::Op)?;
    let by_r0 = cocycle_twist(&c.h, &r0)?;
    p.check(
        "twist by r_0 has the opposite product",
        (0..4).all(|i| (0..4).all(|j| (0..4).all(|k| by_r0.mult_coeff(k, i, j) == op.mult_coeff(k, i, j)))),
    );
    Ok(p)
}

/// `twist_rform(r_s, σ_t) = r_{t−s}` on the grid and symbolically.
fn p6(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let grid_field = match c.f() {
        Field::RatFun => Field::Rational,
        f => f,
    };
    let hg = Arc::new(make_h4(grid_field)?);
    let mut matched = 0;
    let mut diagonal = 0;
    for &s in &GRID {
        for &t in &GRID {
            let (sv, tv) = (grid_field.from_int(s), grid_field.from_int(t));
            let got = twist_rform(&h4_rform(&hg, &sv)?, &h4_cocycle(&hg, &tv)?)?;
            let want = h4_rform(&hg, &(&tv - &sv))?;
            if got.coeffs() == want.coeffs() {
                matched += 1;
            }
            if s == t && got.coeffs() == h4_rform(&hg, &grid_field.zero())?.coeffs() {
                diagonal += 1;
            }
        }
    }
    p.check(
        &format!("grid over {grid_field}: r_(t-s) on {matched} of 36 points"),
        matched == 36,
    );
    p.check(
        &format!("twist_rform(r_s, σ_s) = r_0 on {diagonal} of 6 points"),
        diagonal == 6,
    );
    if c.f() == Field::RatFun {
        let t = Field::RatFun.var()?;
        for s in [0, 1] {
            let sv = Field::RatFun.from_int(s);
            let got = twist_rform(&h4_rform(&c.h, &sv)?, &h4_cocycle(&c.h, &t)?)?;
            let want = h4_rform(&c.h, &(&t - &sv))?;
            p.check(&format!("symbolic s = {s}: r_(t-s)"), got.coeffs() == want.coeffs());
            p.note(format!("symbolic s = {s}: value at h⊗h is {}", got.value(&[2, 2])));
        }
    }
    Ok(p)
}

fn p7(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let phi = catalog::h4_self_duality(c.f())?;
    let dual = c.h.dual()?;
    p.report(
        "self-duality is a Hopf map",
        &is_morphism(&phi, &c.h, &dual, MorphismKind::Hopf)?,
    );
    p.check("self-duality is bijective", phi.inverse()?.is_some());
    let (one, m1, z) = (c.f().one(), c.int(-1), c.f().zero());
    p.check(
        "g ↦ f_1 - f_g",
        phi.column(1) == vec![one.clone(), m1, z.clone(), z.clone()],
    );
    p.check(
        "1 ↦ f_1 + f_g",
        phi.column(0) == vec![one.clone(), one.clone(), z.clone(), z.clone()],
    );
    p.check("h ↦ f_h + f_gh", phi.column(2) == vec![z.clone(), z, one.clone(), one]);
    let r0 = h4_rmatrix(&c.h, &c.f().zero())?;
    let pushed = catalog::transport_rmatrix(&phi, &r0)?;
    p.check("R_0 goes over to r_0", pushed == h4_rform(&c.h, &c.f().zero())?);
    Ok(p)
}

fn p8(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let d = build_double(&c.h)?;
    p.check("dim D(H4) = 16", d.double.dim() == 16);
    p.report("D(H4) axioms", &d.double.check_axioms());
    p.report("ℛ quasitriangular", &check_quasitriangular(&d.r));
    p.check("ℛ not triangular", !check_triangular(&d.r));
    let e = exponent_element(&d, &c.h, ORDER_BOUND)?;
    p.check("u ≠ ε⊗1", !e.trivial);
    let mono = element_order(&d.double, 2, &monodromy(&d.r), ORDER_BOUND);
    p.check("order(u) = order((τℛ)ℛ)", e.order == mono);
    let show = |o: Option<usize>| o.map_or(format!("> {ORDER_BOUND}"), |k| k.to_string());
    p.note(format!("order(u) {}, order((τℛ)ℛ) {}", show(e.order), show(mono)));
    Ok(p)
}

fn p9(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let z2 = catalog::group_algebra_cyclic(c.f(), 2)?;
    for (name, h) in [("kZ2", z2), ("H4", (*c.h).clone()), ("H4*", c.h.dual()?)] {
        p.report(&format!("isomorphisms for {name}"), &verify_double_isos(&h)?);
    }
    Ok(p)
}

fn p10(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let r = h4_rform(&c.h, &c.cfg.t)?;
    let triv = catalog::trivial_yd(c.h.clone());
    let adj = catalog::adjoint_yd(c.h.clone())?;
    let v = catalog::graded_yd(&r)?;
    let w = catalog::nilpotent_yd(&r)?;
    for (name, m) in [("trivial", &triv), ("adjoint", &adj), ("V", &v), ("W", &w)] {
        p.report(&format!("{name} is YD"), &check_yd(m));
    }
    p.report("braiding on V, V, V", &check_braiding(&v, &v, &v)?);
    p.report("braiding on V, W, adjoint", &check_braiding(&v, &w, &adj)?);
    for (name, a, b) in [("V, V", &v, &v), ("V, W", &v, &w), ("W, W", &w, &w)] {
        p.check(&format!("φ² = id on {name}"), braiding_is_symmetric(a, b)?);
    }
    p.report(
        "adjoint algebra",
        &check_yd_algebra(&catalog::adjoint_algebra(c.h.clone())?),
    );
    p.report("k algebra", &check_yd_algebra(&catalog::trivial_algebra(c.h.clone())));
    for (name, m) in [("V", &v), ("W", &w)] {
        let end = end_algebra(m, EndSide::Standard)?;
        p.report(&format!("End({name})"), &check_yd_algebra(&end));
        p.report(
            &format!("End({name})^op"),
            &check_yd_algebra(&end_algebra(m, EndSide::Op)?),
        );
        p.report(&format!("F, G for End({name})"), &check_fg(&end)?);
        p.check(&format!("End({name}) Azumaya"), is_azumaya(&end));
    }
    let dn = catalog::dual_numbers_trivial(c.h.clone())?;
    let (fm, _) = map_fg(&dn);
    p.check("F singular for k[x]/(x²)", fm.inverse()?.is_none());
    p.check("k[x]/(x²) not Azumaya", !is_azumaya(&dn));
    Ok(p)
}

fn p11(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let dual = Arc::new(c.h.dual()?);
    let r = h4_rform(&c.h, &c.cfg.t)?;
    let triv = catalog::trivial_yd(c.h.clone());
    let adj = catalog::adjoint_yd(c.h.clone())?;
    let v = catalog::graded_yd(&r)?;
    let w = catalog::nilpotent_yd(&r)?;
    let mods = [("trivial", &triv), ("adjoint", &adj), ("V", &v), ("W", &w)];
    for (name, m) in mods {
        p.report(
            &format!("𝒟({name}) is YD over H4*"),
            &check_yd(&dualize_onto(m, dual.clone())?),
        );
    }
    for (na, a) in mods {
        for (nb, b) in mods {
            p.report(
                &format!("braiding duality on {na}, {nb}"),
                &check_duality_braiding(a, b, &dual)?,
            );
        }
    }
    for (name, m) in [("V", &v), ("W", &w)] {
        let end = end_algebra(m, EndSide::Standard)?;
        let d_end = dualize_alg_onto(&end, dual.clone())?;
        p.report(&format!("𝒟(End({name})) is a YD algebra"), &check_yd_algebra(&d_end));
        p.check(
            &format!("𝒟(overline End({name})) = overline 𝒟(End({name}))"),
            dualize_alg_onto(&yd_opposite(&end), dual.clone())? == yd_opposite(&d_end),
        );
        p.report(
            &format!("τ: 𝒟(B#A) ≅ 𝒟(A)#𝒟(B) on End({name})"),
            &check_duality_smash(&end, &end, &dual)?,
        );
    }
    Ok(p)
}

fn p12(c: &Ctx) -> Result<Probe> {
    let mut p = Probe::default();
    let t = c.cfg.t.clone();
    let s = &t + &c.f().one();
    let r_s = h4_rform(&c.h, &s)?;
    let sigma = h4_cocycle(&c.h, &t)?;
    let end = end_algebra(&catalog::graded_yd(&r_s)?, EndSide::Standard)?;
    p.check(
        "End(V) is comodule-induced over (H4, r_s)",
        action_is_induced(end.module(), &r_s),
    );
    let (tw, _) = twist_alg(&end, &r_s, &sigma)?;
    p.report("twisted End(V) is a YD algebra", &check_yd_algebra(&tw));
    p.check("twisted End(V) lives over H4", tw.host().structure_eq(&c.h));
    let target = h4_rform(&c.h, &(&t - &s))?.rehost(tw.host().clone())?;
    p.check(
        "twisted End(V) is induced by r_(t-s)",
        action_is_induced(tw.module(), &target),
    );
    p.check("twisted End(V) Azumaya", is_azumaya(&tw));

    let r0 = h4_rform(&c.h, &c.f().zero())?;
    let end0 = end_algebra(&catalog::graded_yd(&r0)?, EndSide::Standard)?;
    let (tw0, r_new) = twist_alg(&end0, &r0, &r0)?;
    let op = c.h.variant(Variant::Op)?;
    p.check("twist by r_0 lands on H4^op", tw0.host().structure_eq(&op));
    p.report("twist by r_0 is a YD algebra", &check_yd_algebra(&tw0));
    p.report("transported form is an R-form on H4^op", &check_rform(&r_new, false));
    p.check("twist by r_0 preserves Azumaya", is_azumaya(&end0) && is_azumaya(&tw0));
    Ok(p)
}

fn run_one(id: &str, ctx: Option<&Ctx>) -> SuiteCheck {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Option<Result<Probe>> {
        if id == "P1" {
            return Some(p1(ctx));
        }
        let c = ctx?;
        Some(match id {
            "P2" => p2(c),
            "P3" => p3(c),
            "P4" => p4(c),
            "P5" => p5(c),
            "P6" => p6(c),
            "P7" => p7(c),
            "P8" => p8(c),
            "P9" => p9(c),
            "P10" => p10(c),
            "P11" => p11(c),
            "P12" => p12(c),
            _ => return None,
        })
    }));
    let (status, detail) = match outcome {
        Ok(None) => (Status::Skipped, "H4 needs characteristic different from 2".to_string()),
        Ok(Some(Ok(probe))) => probe.finish(),
        Ok(Some(Err(e))) => (Status::Fail, format!("error: {e}")),
        Err(_) => (Status::Fail, "internal panic".to_string()),
    };
    SuiteCheck {
        id: id.to_string(),
        name: check_name(id).to_string(),
        status,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the checks with the given ids (all of them when `ids` is empty).
pub fn run_suite(cfg: &SuiteConfig, ids: &[&str]) -> SuiteReport {
    let ctx = make_h4(cfg.field).ok().map(|h| Ctx {
        cfg: cfg.clone(),
        h: Arc::new(h),
    });
    let selected: Vec<&str> = if ids.is_empty() {
        CHECK_IDS.to_vec()
    } else {
        ids.to_vec()
    };
    let checks: Vec<SuiteCheck> = selected.iter().map(|id| run_one(id, ctx.as_ref())).collect();
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    SuiteReport {
        field: cfg.field.to_string(),
        t: if cfg.symbolic() {
            "t".to_string()
        } else {
            cfg.t.to_string()
        },
        checks,
        passed,
    }
}

impl SuiteReport {
    /// One line per check, without timings, so equal runs print equal text.
    pub fn to_text(&self) -> String {
        let mut out = format!("field {}  t = {}\n", self.field, self.t);
        for c in &self.checks {
            let mark = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("{:<4} {mark}  {}: {}\n", c.id, c.name, c.detail));
        }
        out.push_str(if self.passed {
            "overall: pass\n"
        } else {
            "overall: FAIL\n"
        });
        out
    }
}
