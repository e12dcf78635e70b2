mod common;

use common::{lower_product, pos, tp_by_definition};
use proptest::prelude::*;
use tptori::exact_linalg::{char_poly, int, to_f64, Rational, SquareMatrix};
use tptori::flags::{is_in_b_neg, is_in_b_pos, FlagPairClass};
use tptori::pimap::{eigen_split, pi, pi_prime, verify_unique_borel, verify_unique_borel_neg};
use tptori::pinning::{ReducedWord, TorusElement};
use tptori::tori::{iota, same_torus, torus_element};

fn lower(n: usize, raw: &[(u32, u32)]) -> SquareMatrix {
    let word = ReducedWord::standard(n);
    let p: Vec<Rational> = raw.iter().take(word.len()).map(|&(a, b)| pos(a, b)).collect();
    lower_product(n, word.letters(), &p)
}

/// Coefficients of `prod (x - lambda_i)`, ascending.
fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut c = vec![int(1)];
    for r in roots {
        let mut next = vec![int(0); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * r;
        }
        c = next;
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_roundtrip(
        ru in prop::collection::vec((0u32..20, 0u32..20), 6),
        rv in prop::collection::vec((0u32..20, 0u32..20), 6),
        n in 2usize..5,
    ) {
        let pair = FlagPairClass::from_unipotents(&lower(n, &ru), &lower(n, &rv)).unwrap();
        let f = iota(&pair).unwrap();
        // widely spread eigenvalues make S d S^-1 totally positive
        let mut m = int(1);
        let mut diag = Vec::new();
        for _ in 0..n {
            diag.insert(0, m.clone());
            m *= int(1 << 20);
        }
        let d = TorusElement::new(diag.clone()).unwrap();
        let g = torus_element(&f, &d).unwrap();
        prop_assume!(n == 4 || tp_by_definition(&g));
        prop_assume!(tptori::pinning::is_in_g_pos(&g).verdict);
        let data = eigen_split(&g).unwrap();
        prop_assert!(data.exact);
        prop_assert_eq!(&data.values, &diag);
        prop_assert_eq!(char_poly(&g).coeffs().to_vec(), poly_from_roots(&diag));
        prop_assert!(same_torus(&pi(&g).unwrap(), &f));
        let back = pi_prime(&g).unwrap();
        prop_assert_eq!(back.u(), pair.u());
        prop_assert_eq!(back.v(), pair.v());
        prop_assert!(is_in_b_pos(back.first()) && is_in_b_neg(back.second()));
        prop_assert!(verify_unique_borel(&g, back.first()));
        prop_assert!(verify_unique_borel_neg(&g, back.second()));
    }
}

#[test]
fn irrational_spectrum_residual() {
    let g = SquareMatrix::from_i64(&[&[3, 2, 1], &[2, 3, 2], &[1, 2, 3]]).unwrap();
    let data = eigen_split(&g).unwrap();
    assert!(!data.exact);
    assert!(data.residual < 1e-10);
    // trace and determinant from the computed values
    let sum: f64 = data.values.iter().map(to_f64).sum();
    let prod: f64 = data.values.iter().map(to_f64).product();
    assert!((sum - 9.0).abs() < 1e-9);
    assert!((prod - to_f64(&g.determinant())).abs() < 1e-9);
}
