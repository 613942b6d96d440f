//! The two-parameter twist identity as it actually computes, next to the
//! literal `r_{t-s}` form checked by the acceptance target.

use std::sync::Arc;

use hopfkit::catalog::{graded_yd, h4_cocycle, h4_rform, make_h4, nilpotent_yd};
use hopfkit::convolution::{conv_inverse, convolve, twist_rform};
use hopfkit::scalar::Field;
use hopfkit::yd::{action_is_induced, check_yd_algebra, end_algebra, is_azumaya, twist_alg, EndSide};

const GRID: [i64; 6] = [-2, -1, 0, 1, 2, 3];

#[test]
fn twisted_rform_is_r_s_minus_t_on_grid() {
    let f = Field::Rational;
    let h = Arc::new(make_h4(f).unwrap());
    for s in GRID {
        for t in GRID {
            let got = twist_rform(
                &h4_rform(&h, &f.from_int(s)).unwrap(),
                &h4_cocycle(&h, &f.from_int(t)).unwrap(),
            )
            .unwrap();
            assert_eq!(got, h4_rform(&h, &f.from_int(s - t)).unwrap(), "s = {s}, t = {t}");
        }
    }
}

#[test]
fn twisted_rform_is_r_s_minus_t_symbolically() {
    let f = Field::RatFun;
    let h = Arc::new(make_h4(f).unwrap());
    let t = f.var().unwrap();
    for s in [0, 1] {
        let s = f.from_int(s);
        let got = twist_rform(&h4_rform(&h, &s).unwrap(), &h4_cocycle(&h, &t).unwrap()).unwrap();
        assert_eq!(got, h4_rform(&h, &(&s - &t)).unwrap());
    }
}

#[test]
fn conjugated_form_at_h_h_is_s_minus_t() {
    let f = Field::RatFun;
    let h = Arc::new(make_h4(f).unwrap());
    let t = f.var().unwrap();
    let s = f.from_int(5);
    let sigma = h4_cocycle(&h, &t).unwrap();
    let inv = conv_inverse(&sigma).unwrap().unwrap();
    let v = convolve(&convolve(&sigma.transpose(), &h4_rform(&h, &s).unwrap()).unwrap(), &inv).unwrap();
    assert_eq!(*v.value(&[2, 2]), &s - &t);
}

/// `W` sees the nilpotent part of `r`, so it tells the two signs apart.
#[test]
fn twisted_end_w_is_induced_by_r_s_minus_t() {
    let f = Field::RatFun;
    let h = Arc::new(make_h4(f).unwrap());
    let t = f.var().unwrap();
    let s = f.from_int(2);
    let r_s = h4_rform(&h, &s).unwrap();
    let end = end_algebra(&nilpotent_yd(&r_s).unwrap(), EndSide::Standard).unwrap();
    let (tw, r_new) = twist_alg(&end, &r_s, &h4_cocycle(&h, &t).unwrap()).unwrap();
    assert!(check_yd_algebra(&tw).passed());
    assert!(is_azumaya(&tw));
    let want = h4_rform(&h, &(&s - &t)).unwrap().rehost(tw.host().clone()).unwrap();
    assert_eq!(r_new, want);
    assert!(action_is_induced(tw.module(), &want));
    let literal = h4_rform(&h, &(&t - &s)).unwrap().rehost(tw.host().clone()).unwrap();
    assert!(!action_is_induced(tw.module(), &literal));
}

/// `V` only sees grouplike values of `r`, so both signs induce its action.
#[test]
fn twisted_end_v_does_not_see_the_sign() {
    let f = Field::RatFun;
    let h = Arc::new(make_h4(f).unwrap());
    let t = f.var().unwrap();
    let s = f.one();
    let r_s = h4_rform(&h, &s).unwrap();
    let end = end_algebra(&graded_yd(&r_s).unwrap(), EndSide::Standard).unwrap();
    let (tw, _) = twist_alg(&end, &r_s, &h4_cocycle(&h, &t).unwrap()).unwrap();
    for v in [&s - &t, &t - &s] {
        let r = h4_rform(&h, &v).unwrap().rehost(tw.host().clone()).unwrap();
        assert!(action_is_induced(tw.module(), &r));
    }
}
