use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use cgf_core::asymptotics::diaconis_diagnostics;
use cgf_core::cyclotomic::{cyclo, q_int};
use cgf_core::forms::{
    cgf_check, coeff_via_partitions, cyclo_to_rational, rational_to_poly, RationalForm,
};
use cgf_core::monoids::{indices_in_class, Catalog, MonoidClass};
use cgf_core::stats::{
    central_moment, central_moment_oracle, charfun_eval, cumulant, moment, moment_oracle, Rat,
};
use cgf_core::{CycloForm, IntPoly};

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::build(16).unwrap())
}

fn pool(class: MonoidClass, max_degree: u64) -> Vec<Vec<u64>> {
    (1..=max_degree)
        .flat_map(|n| catalog().elements(class, n).unwrap())
        .collect()
}

fn plus_pool(max_degree: u64) -> &'static [Vec<u64>] {
    static P15: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    assert_eq!(max_degree, 15);
    P15.get_or_init(|| pool(MonoidClass::Plus, 15))
}

fn poly_of(ix: &[u64]) -> IntPoly {
    CycloForm::basic(ix.to_vec()).unwrap().to_poly()
}

fn any_cgf() -> impl Strategy<Value = Vec<u64>> {
    let n = plus_pool(15).len();
    (0..n).prop_map(|i| plus_pool(15)[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn round_trip(ix in any_cgf()) {
        let f = poly_of(&ix);
        let cf = cgf_check(&f).unwrap();
        prop_assert_eq!(&cf.indices, &ix);
        prop_assert_eq!(rational_to_poly(&cyclo_to_rational(&cf)).unwrap(), f);
    }

    #[test]
    fn probabilistic_form_identity(ix in any_cgf(), alpha in 1u32..5, beta in 0usize..4) {
        let cf = CycloForm::new(alpha.into(), beta, ix).unwrap();
        let f = cf.to_poly();
        let rf = cyclo_to_rational(&cf);
        let lhs = rf.denom.iter().fold(f, |acc, &b| &acc * &q_int(b));
        let rhs = rf
            .numer
            .iter()
            .fold(IntPoly::one(), |acc, &a| &acc * &q_int(a))
            .scale(&BigInt::from(alpha))
            .shift(beta);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn zeros_are_primitive_roots(ix in any_cgf()) {
        // f(e^{2 pi i k/n}) = 0 exactly for the indices n present
        let f = poly_of(&ix);
        for &n in &ix {
            let t = 2.0 * std::f64::consts::PI / n as f64;
            prop_assert!(charfun_eval(&f, t, false).unwrap().norm() < 1e-9);
            prop_assert!(f.div_exact(&cyclo(n)).is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kth_term_matches_expansion(ix in any_cgf()) {
        let f = poly_of(&ix);
        let rf = cyclo_to_rational(&CycloForm::basic(ix).unwrap());
        for k in 0..=f.degree().unwrap() {
            prop_assert_eq!(coeff_via_partitions(&rf, k as u64), f.coeff(k));
        }
    }

    #[test]
    fn moments_match_coefficient_sums(ix in any_cgf()) {
        let f = poly_of(&ix);
        let rf = cyclo_to_rational(&CycloForm::basic(ix).unwrap());
        for d in 1..=8 {
            prop_assert_eq!(moment(&rf, d), moment_oracle(&f, d).unwrap());
            prop_assert_eq!(central_moment(&rf, d), central_moment_oracle(&f, d).unwrap());
        }
    }

    #[test]
    fn cumulant_sign_law(ix in any_cgf()) {
        let rf = cyclo_to_rational(&CycloForm::basic(ix).unwrap());
        for d in 1..=5u32 {
            prop_assert!(cumulant(&rf, 2 * d + 1).is_zero());
            let k = cumulant(&rf, 2 * d);
            let signed = if d % 2 == 1 { k } else { -k };
            prop_assert!(!signed.is_negative());
        }
    }

    #[test]
    fn cumulants_add(i in any_cgf(), j in any_cgf()) {
        let a = cyclo_to_rational(&CycloForm::basic(i).unwrap());
        let b = cyclo_to_rational(&CycloForm::basic(j).unwrap());
        let ab = a.mul(&b);
        for d in 1..=10 {
            prop_assert_eq!(cumulant(&ab, d), cumulant(&a, d) + cumulant(&b, d));
        }
    }

    #[test]
    fn charfun_is_bounded_and_hermitian(ix in any_cgf(), t in -10.0f64..10.0) {
        let f = poly_of(&ix);
        let v = charfun_eval(&f, t, false).unwrap();
        let w = charfun_eval(&f, -t, false).unwrap();
        prop_assert!(v.norm() <= 1.0 + 1e-12);
        prop_assert!((v - w.conj()).norm() < 1e-12);
    }

    #[test]
    fn diaconis_ratio_below_one(ix in any_cgf()) {
        let rf = cyclo_to_rational(&CycloForm::basic(ix).unwrap());
        let d = diaconis_diagnostics(&rf).unwrap();
        prop_assert!((0.0..1.0).contains(&d.ratio));
        prop_assert!(d.quartic >= 1.0);
        let k2 = cumulant(&rf, 2);
        prop_assert_eq!(d.std_k4_exact, cumulant(&rf, 4) / (&k2 * &k2));
    }
}

fn closure_case(class: MonoidClass) -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    let elems = pool(class, 15);
    let n = elems.len();
    (0..n, 0..n)
        .prop_map(move |(i, j)| (elems[i].clone(), elems[j].clone()))
        .prop_filter("total degree at most 16", |(a, b)| {
            let deg = |v: &Vec<u64>| v.iter().map(|&x| cgf_core::cyclotomic::euler_phi(x)).sum::<u64>();
            deg(a) + deg(b) <= 16
        })
}

macro_rules! closure_test {
    ($name:ident, $class:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]
            #[test]
            fn $name((a, b) in closure_case($class)) {
                let mut ab = a.clone();
                ab.extend(&b);
                prop_assert!(indices_in_class(&ab, $class));
            }
        }
    };
}

closure_test!(closure_pm, MonoidClass::Pm);
closure_test!(closure_plus, MonoidClass::Plus);
closure_test!(closure_uni, MonoidClass::Uni);
closure_test!(closure_lcc, MonoidClass::Lcc);
closure_test!(closure_gale, MonoidClass::Gale);

proptest! {
    #[test]
    fn reduction_is_idempotent(a in proptest::collection::vec(1u64..30, 0..6), b in proptest::collection::vec(1u64..30, 0..6)) {
        let rf = RationalForm::new(a, b).unwrap();
        let r = rf.reduced();
        prop_assert_eq!(r.reduced(), r.clone());
        prop_assert_eq!(r.numer.len(), r.denom.len());
        prop_assert!(!r.numer.iter().any(|x| r.denom.contains(x) && *x != 1));
        for d in 1..=6 {
            prop_assert_eq!(cumulant(&r, d), cumulant(&rf, d));
        }
    }
}

#[test]
fn cumulant_rational_is_exact_for_uniform() {
    let rf = RationalForm::new(vec![2], vec![1]).unwrap();
    let r = |n: i64, d: i64| Rat::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(moment(&rf, 3), r(1, 2));
    assert_eq!(central_moment(&rf, 2), r(1, 4));
}
