use argshift::linalg::Matrix;
use argshift::liealg::catalog;
use argshift::poisson::{frozen_bracket, lie_poisson_bracket};
use argshift::ratpoly::{gcd_multivariate, int, rat, univariate_distinct_roots, Monomial, Root};
use argshift::shiftalg::{b_of, shift_expand, trdeg_estimate, mf_generators, extended_generators, TrdegOptions};
use argshift::singular::{fundamental_semiinvariant, index, pfaffian};
use argshift::{MultiPoly, Rational, ShiftPoint, UniPoly};
use proptest::prelude::*;

fn poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let term = (proptest::collection::vec(0..=max_deg, nvars), -9i64..=9, 1i64..=4);
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        MultiPoly::from_terms(nvars, terms.into_iter().map(|(e, n, d)| (Monomial::new(e), rat(n, d))))
    })
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-20i64..=20, 1i64..=5).prop_map(|(n, d)| rat(n, d)), nvars)
}

fn skew(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(-6i64..=6, n * (n - 1) / 2).prop_map(move |vals| {
        let mut m = vec![vec![int(0); n]; n];
        let mut it = vals.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = int(it.next().unwrap());
                m[j][i] = -v.clone();
                m[i][j] = v;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly(3, 3, 4), g in poly(3, 3, 4), h in poly(3, 3, 4)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &MultiPoly::one(3), f.clone());
    }

    #[test]
    fn gcd_is_certified_common_divisor(f in poly(3, 2, 3), g in poly(3, 2, 3), h in poly(3, 2, 3)) {
        prop_assume!(!h.is_zero() && !f.is_zero() && !g.is_zero());
        let fh = &f * &h;
        let gh = &g * &h;
        let d = gcd_multivariate(&fh, &gh).unwrap();
        prop_assert!(fh.div_exact(&d).is_some());
        prop_assert!(gh.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&h).is_some(), "gcd {} misses common factor {}", d, h);
    }

    #[test]
    fn restriction_matches_evaluation(f in poly(3, 3, 5), base in point(3), dir in point(3), t in -10i64..=10) {
        let q = f.restrict_to_line(&base, &dir).unwrap();
        let t = int(t);
        let y: Vec<Rational> = base.iter().zip(&dir).map(|(b, d)| b + &t * d).collect();
        prop_assert_eq!(q.eval(&t), f.evaluate(&y).unwrap());
    }

    #[test]
    fn rational_roots_recovered(roots in proptest::collection::vec((-12i64..=12, 1i64..=3), 1..5)) {
        let mut q = UniPoly::constant(int(1));
        let mut expected: Vec<(Rational, usize)> = Vec::new();
        for (n, d) in roots {
            let r = rat(n, d);
            q = &q * &UniPoly::linear_factor(&r);
            match expected.iter_mut().find(|(v, _)| *v == r) {
                Some(e) => e.1 += 1,
                None => expected.push((r, 1)),
            }
        }
        let found = univariate_distinct_roots(&q).unwrap();
        prop_assert_eq!(found.len(), expected.len());
        for (r, m) in &expected {
            let hit = found.iter().find(|(root, _)| root.as_exact() == Some(r));
            prop_assert_eq!(hit.map(|(_, k)| *k), Some(*m));
        }
        prop_assert!(found.iter().all(|(root, _)| matches!(root, Root::Exact(_))));
    }

    #[test]
    fn brackets_satisfy_leibniz(f in poly(5, 2, 3), g in poly(5, 2, 3), h in poly(5, 2, 3), a in point(5)) {
        let alg = catalog("b2+h3").unwrap();
        let gh = &g * &h;
        let lp = |p: &MultiPoly, q: &MultiPoly| lie_poisson_bracket(&alg, p, q).unwrap();
        let lhs = lp(&f, &gh);
        let rhs = &(&lp(&f, &g) * &h) + &(&g * &lp(&f, &h));
        prop_assert_eq!(lhs, rhs);
        let fr = |p: &MultiPoly, q: &MultiPoly| frozen_bracket(&alg, &a, p, q).unwrap();
        prop_assert_eq!(fr(&f, &gh), &(&fr(&f, &g) * &h) + &(&g * &fr(&f, &h)));
    }

    #[test]
    fn lie_poisson_jacobi(f in poly(3, 2, 3), g in poly(3, 2, 3), h in poly(3, 2, 3)) {
        for name in ["sl2", "b2+C"] {
            let alg = catalog(name).unwrap();
            let lp = |p: &MultiPoly, q: &MultiPoly| lie_poisson_bracket(&alg, p, q).unwrap();
            let sum = &(&lp(&f, &lp(&g, &h)) + &lp(&g, &lp(&h, &f))) + &lp(&h, &lp(&f, &g));
            prop_assert!(sum.is_zero());
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant(m in (1usize..=4).prop_flat_map(|k| skew(2 * k))) {
        let pf = pfaffian(&m, &int(1)).unwrap();
        let det = Matrix::from_rows(&m).det(0.0);
        prop_assert_eq!(&pf * &pf, det);
    }

    #[test]
    fn shift_coefficients_reconstruct(f in poly(4, 3, 4), a in point(4), x in point(4), lambda in -6i64..=6) {
        let coeffs = shift_expand(&f, &a).unwrap();
        let lambda = int(lambda);
        let y: Vec<Rational> = a.iter().zip(&x).map(|(ai, xi)| ai + &lambda * xi).collect();
        let mut total = int(0);
        let mut power = int(1);
        for c in &coeffs {
            total += &power * c.evaluate(&x).unwrap();
            power *= &lambda;
        }
        prop_assert_eq!(total, f.evaluate(&y).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trdeg_monotone_and_bounded(seed in 0u64..1000, name in prop::sample::select(vec!["b2+h3", "gl2", "h5", "b2+b2", "sl2"])) {
        let alg = catalog(name).unwrap();
        let cert = index(&alg);
        let a = ShiftPoint::random(&alg, &cert, seed);
        let p_g = fundamental_semiinvariant(&alg).unwrap();
        let gens = if p_g.is_constant() { mf_generators(&alg, &a) } else { extended_generators(&alg, &a, &p_g) }
            .unwrap()
            .polys();
        let opts = TrdegOptions { seed, ..TrdegOptions::default() };
        let n = alg.dim();
        let mut last = 0;
        for k in 0..=gens.len() {
            let t = trdeg_estimate(&gens[..k], n, &opts).unwrap().trdeg;
            prop_assert!(t >= last && t <= k);
            last = t;
        }
        prop_assert!(last <= b_of(&alg, &cert));
    }
}
