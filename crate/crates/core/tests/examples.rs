//! Worked examples for each module, run against the public API.

use std::sync::Arc;

use hopfkit::catalog;
use hopfkit::scalar::Field;

fn q() -> Field {
    Field::Rational
}

mod scalars_and_solver {
    use super::*;
    use hopfkit::linalg::{invert_matrix, solve_linear, Matrix};

    #[test]
    fn arithmetic() {
        let f = q();
        assert_eq!(
            &f.from_ratio(1, 2).unwrap() + &f.from_ratio(1, 3).unwrap(),
            f.from_ratio(5, 6).unwrap()
        );
        let gf5 = Field::prime(5).unwrap();
        assert_eq!(gf5.from_int(2).inv().unwrap(), gf5.from_int(3));
        let r = Field::RatFun;
        assert_eq!(r.parse("(t^2-1)/(t-1)").unwrap(), r.parse("t+1").unwrap());
    }

    #[test]
    fn solving_and_inverting() {
        let f = q();
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        assert_eq!(
            solve_linear(&Matrix::identity(f, 3), &v(&[1, 2, 3])).unwrap(),
            Some(v(&[1, 2, 3]))
        );
        let a = Matrix::from_rows(f, vec![v(&[1, 1]), v(&[2, 2])]).unwrap();
        assert_eq!(solve_linear(&a, &v(&[1, 3])).unwrap(), None);
        assert_eq!(
            invert_matrix(&Matrix::identity(f, 4)).unwrap(),
            Some(Matrix::identity(f, 4))
        );
        let swap = Matrix::from_rows(f, vec![v(&[0, 1]), v(&[1, 0])]).unwrap();
        assert_eq!(invert_matrix(&swap).unwrap(), Some(swap));
    }
}

mod hopf_core {
    use super::*;
    use hopfkit::hopf::{derive_antipode, is_morphism, MorphismKind, Variant};
    use hopfkit::linalg::Matrix;

    #[test]
    fn z2_and_its_dual() {
        let z2 = catalog::group_algebra_cyclic(q(), 2).unwrap();
        assert!(z2.check_axioms().passed());
        assert!(z2.dual().unwrap().check_axioms().passed());
        assert_eq!(
            derive_antipode(&z2.with_antipode(None).unwrap()),
            Some(Matrix::identity(q(), 2))
        );
    }

    #[test]
    fn identity_is_a_hopf_map() {
        let h = catalog::make_h4(q()).unwrap();
        assert!(is_morphism(&Matrix::identity(q(), 4), &h, &h, MorphismKind::Hopf)
            .unwrap()
            .passed());
    }

    /// `S(1) = 1`, `ε∘S = ε` and `S: H → H^op` is an algebra map.
    #[test]
    fn antipode_properties_on_catalog() {
        let f = q();
        let hs = [
            catalog::group_algebra_cyclic(f, 3).unwrap(),
            catalog::klein_four(f).unwrap(),
            catalog::make_h4(f).unwrap(),
            catalog::make_h4(f).unwrap().dual().unwrap(),
        ];
        for h in hs {
            let s = h.antipode().unwrap();
            assert_eq!(s.apply(h.unit()), h.unit());
            for i in 0..h.dim() {
                assert_eq!(h.counit_of(&s.column(i)), h.counit()[i]);
            }
            let op = h.variant(Variant::Op).unwrap();
            assert!(is_morphism(s, &h, &op, MorphismKind::Algebra).unwrap().passed());
        }
    }
}

mod convolution_twist {
    use super::*;
    use hopfkit::catalog::{h4_rform, make_h4};
    use hopfkit::convolution::{check_2cocycle, check_rform, CocycleSide, Functional};
    use hopfkit::double::build_double;

    #[test]
    fn counit_is_a_cocycle_on_both_sides() {
        let h = Arc::new(make_h4(q()).unwrap());
        let e = Functional::counit_power(h, 2);
        assert!(check_2cocycle(&e, CocycleSide::Left).passed());
        assert!(check_2cocycle(&e, CocycleSide::Right).passed());
    }

    #[test]
    fn corrupted_rform_fails_multiplicativity() {
        let h = Arc::new(make_h4(q()).unwrap());
        let r = h4_rform(&h, &q().from_int(2)).unwrap();
        let mut c = r.coeffs().to_vec();
        c[4 + 1] = q().one();
        let bad = Functional::new(h, 2, c).unwrap();
        let rep = check_rform(&bad, false);
        let first = rep.first_failure().expect("corruption is detected");
        assert!(first.witness.is_some());
        assert!(!rep.is_pass("multiplicative_left") || !rep.is_pass("multiplicative_right"));
    }

    /// The pairing of `ℛ` with `D(H4)*` is an R-form that is not cotriangular.
    #[test]
    fn dual_of_the_double_carries_a_noncotriangular_form() {
        let d = build_double(&make_h4(q()).unwrap()).unwrap();
        let dual = Arc::new(d.double.dual().unwrap());
        let r = Functional::new(dual, 2, d.r.coeffs().to_vec()).unwrap();
        let rep = check_rform(&r, true);
        assert!(
            rep.checks.iter().filter(|c| c.name != "cotriangular").all(|c| c.passed),
            "{rep}"
        );
        assert!(!rep.is_pass("cotriangular"));
    }
}

mod drinfeld_double {
    use super::*;
    use hopfkit::double::{build_double, check_quasitriangular, RMatrix};

    #[test]
    fn trivial_r_matrix_and_commutative_double() {
        let z2 = Arc::new(catalog::group_algebra_cyclic(q(), 2).unwrap());
        assert!(check_quasitriangular(&RMatrix::unit(z2.clone())).passed());
        let d = build_double(&z2).unwrap();
        assert_eq!(d.double.dim(), 4);
        assert!(d.double.check_axioms().passed());
        assert!(check_quasitriangular(&d.r).passed());
        let x = &d.double;
        assert!((0..4).all(|i| (0..4).all(|j| x.mul_basis(i, j) == x.mul_basis(j, i))));
    }
}

mod yetter_drinfeld {
    use super::*;
    use hopfkit::catalog::{adjoint_algebra, h4_rform, make_h4, trivial_algebra, trivial_yd};
    use hopfkit::convolution::Functional;
    use hopfkit::double::build_double;
    use hopfkit::linalg::Matrix;
    use hopfkit::yd::{
        check_yd, dualize_yd, end_algebra, induce_from_rform, map_fg, restrict_double_module, twist_alg, EndSide,
    };

    #[test]
    fn trivial_coaction_induces_the_trivial_module() {
        let f = Field::RatFun;
        let h = Arc::new(make_h4(f).unwrap());
        let r = h4_rform(&h, &f.var().unwrap()).unwrap();
        let coact = Matrix::new(f, 4, 1, h.unit().to_vec()).unwrap();
        assert_eq!(induce_from_rform(coact, &r).unwrap(), trivial_yd(h));
    }

    /// The left regular `D(H4)`-module restricts to a YD module over `H4`.
    #[test]
    fn double_modules_restrict() {
        let h = Arc::new(make_h4(q()).unwrap());
        let d = build_double(&h).unwrap();
        let n = d.double.dim();
        let act: Vec<Matrix> = (0..n)
            .map(|a| {
                let cols: Vec<_> = (0..n)
                    .map(|b| d.double.mul(&d.double.basis_vector(a), &d.double.basis_vector(b)))
                    .collect();
                Matrix::from_columns(q(), n, &cols).unwrap()
            })
            .collect();
        let m = restrict_double_module(h, &d, &act).unwrap();
        assert!(check_yd(&m).passed());
    }

    #[test]
    fn endomorphisms_of_the_unit_object() {
        let h = Arc::new(make_h4(q()).unwrap());
        let k = trivial_algebra(h.clone());
        let end = end_algebra(&trivial_yd(h.clone()), EndSide::Standard).unwrap();
        assert_eq!(end, k);
        let (fm, gm) = map_fg(&k);
        assert!(fm.is_identity() && gm.is_identity());
        assert_eq!(
            dualize_yd(&trivial_yd(h.clone())).unwrap(),
            trivial_yd(Arc::new(h.dual().unwrap()))
        );
    }

    #[test]
    fn adjoint_algebra_ranks() {
        let h = Arc::new(make_h4(q()).unwrap());
        let (fm, gm) = map_fg(&adjoint_algebra(h).unwrap());
        // Computed, not predicted: both maps are singular.
        assert!(fm.rank() < 16 && gm.rank() < 16);
    }

    #[test]
    fn twist_by_counit_is_identity() {
        let f = q();
        let h = Arc::new(make_h4(f).unwrap());
        let r = h4_rform(&h, &f.from_int(3)).unwrap();
        let a = end_algebra(&catalog::graded_yd(&r).unwrap(), EndSide::Standard).unwrap();
        let (tw, r_new) = twist_alg(&a, &r, &Functional::counit_power(h.clone(), 2)).unwrap();
        assert_eq!(tw, a);
        assert_eq!(r_new, r);
    }

    #[test]
    fn twist_needs_an_induced_action() {
        let f = q();
        let h = Arc::new(make_h4(f).unwrap());
        let r = h4_rform(&h, &f.zero()).unwrap();
        let adj = adjoint_algebra(h.clone()).unwrap();
        assert!(matches!(
            twist_alg(&adj, &r, &Functional::counit_power(h, 2)),
            Err(hopfkit::Error::PreconditionViolated(_))
        ));
    }
}

mod catalog_objects {
    use super::*;

    #[test]
    fn group_tables() {
        let gf7 = Field::prime(7).unwrap();
        assert!(catalog::group_algebra_cyclic(gf7, 3).unwrap().check_axioms().passed());
        let bad = catalog::group_algebra(q(), ["1", "a"], &[vec![0, 1], vec![1, 1]]);
        assert!(matches!(bad, Err(hopfkit::Error::NotAGroup(_))));
    }
}

mod hopfspec_format {
    use super::*;
    use hopfkit::hopfspec::{parse, Document};

    #[test]
    fn catalog_round_trips() {
        for f in [q(), Field::prime(7).unwrap(), Field::RatFun] {
            let h4 = Arc::new(catalog::make_h4(f).unwrap());
            let t = if f == Field::RatFun {
                f.var().unwrap()
            } else {
                f.from_int(2)
            };
            let fam = catalog::h4_family(&h4, &t).unwrap();
            let mut doc = Document::new(f);
            doc.add_hopf("H4", h4.clone());
            doc.add_hopf("Z3", Arc::new(catalog::group_algebra_cyclic(f, 3).unwrap()));
            doc.add_hopf("K4", Arc::new(catalog::klein_four(f).unwrap()));
            doc.add_hopf("H4dual", Arc::new(h4.dual().unwrap()));
            doc.add_functional("r", fam.r.clone());
            doc.add_functional("sigma", fam.sigma);
            doc.add_functional("nu", fam.nu);
            doc.add_rmatrix("R", fam.big_r);
            doc.add_module("adj", catalog::adjoint_yd(h4.clone()).unwrap());
            doc.add_module("W", catalog::nilpotent_yd(&fam.r).unwrap());
            doc.add_algebra("adjalg", catalog::adjoint_algebra(h4.clone()).unwrap());
            doc.add_algebra("dn", catalog::dual_numbers_trivial(h4.clone()).unwrap());
            let text = doc.to_text().unwrap();
            let back = parse(&text).unwrap();
            for (a, b) in doc.hopfs.iter().zip(&back.hopfs) {
                assert!(a.value.structure_eq(&b.value) && a.value.labels() == b.value.labels());
            }
            for name in ["r", "sigma", "nu"] {
                assert_eq!(
                    back.functional(name).unwrap().coeffs(),
                    doc.functional(name).unwrap().coeffs()
                );
            }
            assert_eq!(back.module("W"), doc.module("W"));
            assert_eq!(back.algebra("adjalg"), doc.algebra("adjalg"));
            assert_eq!(back.to_text().unwrap(), text);
        }
    }
}
