use num_bigint::BigInt;
use num_traits::Signed;

use cgf_core::asymptotics::diaconis_diagnostics;
use cgf_core::families::{
    box_partitions, family, hook_cgf, macmahon_box, plane_partitions, syt_maj, Family,
};
use cgf_core::forms::{polynomiality_check, rational_to_poly, Polynomiality};
use cgf_core::monoids::{Catalog, MonoidClass};
use cgf_core::partitions::{Partition, Partitions};
use cgf_core::stats::{bernoulli, charfun_eval, cyclo_cumulant, rat_to_f64, Rat};
use cgf_core::{CycloForm, IntPoly};

#[test]
fn macmahon_matches_plane_partitions() {
    for x in 1..=3 {
        for y in 1..=3 {
            for z in 1..=3 {
                let rf = macmahon_box(x, y, z).unwrap();
                assert_eq!(rational_to_poly(&rf).unwrap(), plane_partitions(x, y, z).unwrap());
            }
        }
    }
}

#[test]
fn macmahon_is_symmetric() {
    for x in 1..=4 {
        for y in 1..=4 {
            for z in 1..=4 {
                let base = macmahon_box(x, y, z).unwrap().reduced();
                for (a, b, c) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                    assert_eq!(macmahon_box(a, b, c).unwrap().reduced(), base);
                }
            }
        }
    }
}

#[test]
fn hook_formula_matches_tableaux() {
    for n in 1..=8 {
        for parts in Partitions::new(n) {
            let lambda = Partition::new(parts).unwrap();
            let rf = hook_cgf(&lambda).unwrap();
            assert_eq!(polynomiality_check(&rf), Polynomiality::Holds);
            assert_eq!(rf.beta as u64, lambda.b_statistic());
            assert_eq!(rational_to_poly(&rf).unwrap(), syt_maj(&lambda).unwrap(), "{lambda:?}");
        }
    }
}

#[test]
fn qbinomial_matches_box_partitions() {
    for n in 0..=10 {
        for k in 0..=n {
            let rf = family(&Family::QBinomial { n, k }).unwrap();
            assert_eq!(rational_to_poly(&rf).unwrap(), box_partitions(n, k).unwrap());
        }
    }
}

#[test]
fn cyclotomic_cumulant_bounds() {
    let two_pi = 2.0 * std::f64::consts::PI;
    for n in 2..=100u64 {
        for d in 1..=4u32 {
            let k = cyclo_cumulant(n, 2 * d).unwrap().abs();
            let fact: f64 = (1..=2 * d).map(|j| j as f64).product();
            let lower = fact / d as f64 * (n as f64 / two_pi).powi(2 * d as i32);
            assert!(rat_to_f64(&k) >= lower * (1.0 - 1e-6), "n={n} d={d}");
            let upper = bernoulli(2 * d).abs() * Rat::from_integer(BigInt::from(n).pow(2 * d))
                / Rat::from_integer(BigInt::from(2 * d));
            assert!(k <= upper, "n={n} d={d}");
        }
    }
}

#[test]
fn cyclotomic_cumulants_add_over_indices() {
    let ix = vec![4u64, 5, 5, 6];
    let rf = cgf_core::forms::cyclo_to_rational(&CycloForm::basic(ix.clone()).unwrap());
    for d in [2u32, 4, 6] {
        let sum: Rat = ix.iter().map(|&n| cyclo_cumulant(n, d).unwrap()).sum();
        assert_eq!(cgf_core::stats::cumulant(&rf, d), sum);
    }
}

#[test]
fn standardized_log_charfun_below_gaussian() {
    let cat = Catalog::build(10).unwrap();
    let mut checked = 0;
    'outer: for n in 1..=10 {
        for ix in cat.elements(MonoidClass::Plus, n).unwrap() {
            if checked == 50 {
                break 'outer;
            }
            checked += 1;
            let f: IntPoly = CycloForm::basic(ix).unwrap().to_poly();
            for i in -14..=14 {
                let t = i as f64 / 10.0;
                let v = charfun_eval(&f, t, true).unwrap();
                assert!(v.im.abs() < 1e-9);
                assert!(v.re.ln() <= -t * t / 2.0 + 1e-9, "t={t}");
            }
        }
    }
    assert_eq!(checked, 50);
}

#[test]
fn qbinomial_fourth_cumulant_decays() {
    let k4 = |k: u64| {
        let rf = family(&Family::QBinomial { n: 2 * k, k }).unwrap();
        diaconis_diagnostics(&rf).unwrap().std_k4.abs()
    };
    assert!(k4(40) < k4(5) / 4.0);
}
