use argshift::linalg::Matrix;
use argshift::pencil::{FormPair, Pencil, PencilOptions};
use argshift::random;
use argshift::Rational;

fn random_skew(seed: u64, stream: u64, n: usize) -> Matrix<Rational> {
    let mut rng = random::rng_for(seed, stream);
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = random::integer(&mut rng, 5);
            m[(j, i)] = -v.clone();
            m[(i, j)] = v;
        }
    }
    m
}

fn check_random_pairs(n: usize, count: u64) {
    for k in 0..count {
        let pair = FormPair::new(random_skew(n as u64, 2 * k, n), random_skew(n as u64, 2 * k + 1, n)).unwrap();
        let p = Pencil::new(pair, None, PencilOptions::default()).unwrap();
        assert_eq!((p.lperp.len() - p.l.len()) % 2, 0);
        assert!(p.spectrum.iter().all(|e| e.corank > p.r));
        let report = p.report();
        assert!(report.all_checks_pass(), "size {n}, pair {k}: {report:#?}");
    }
}

#[test]
fn random_pairs_of_size_4() {
    check_random_pairs(4, 50);
}

#[test]
fn random_pairs_of_size_6() {
    check_random_pairs(6, 50);
}

#[test]
fn random_pairs_of_odd_size() {
    check_random_pairs(5, 20);
}
