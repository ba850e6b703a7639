mod common;

use common::{
    cofactor_det, fields, invertible, naive_adjoint, naive_congruence, naive_integral, naive_mul,
    naive_unimodular, random_matrix, rng, symmetric_integral,
};
use isodescent_core::forge::random_unimodular;
use isodescent_core::{Error, Field, Matrix, Permutation, PermuteSide, ValExt};
use proptest::prelude::*;
use rand::Rng;

fn size(seed: u64, max: usize) -> usize {
    1 + (seed % max as u64) as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn inverse_is_exact(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let a = invertible(&f, size(seed >> 8, 6), &mut g);
        let inv = a.inverse().unwrap();
        let id = Matrix::identity(f, a.rows());
        prop_assert_eq!(naive_mul(&a, &inv), id.clone());
        prop_assert_eq!(naive_mul(&inv, &a), id);
    }

    #[test]
    fn product_matches_naive_and_associates(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let n = size(seed >> 8, 6);
        let (a, b, c) = (random_matrix(&f, n, &mut g), random_matrix(&f, n, &mut g), random_matrix(&f, n, &mut g));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(&ab, &naive_mul(&a, &b));
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let n = size(seed >> 8, 5);
        let (a, b) = (random_matrix(&f, n, &mut g), random_matrix(&f, n, &mut g));
        let (da, db) = (a.determinant().unwrap(), b.determinant().unwrap());
        prop_assert_eq!(&da, &cofactor_det(&a));
        prop_assert_eq!(a.mul(&b).unwrap().determinant().unwrap(), &da * &db);
    }

    #[test]
    fn adjoint_reverses_products(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let n = size(seed >> 8, 5);
        let (a, b) = (random_matrix(&f, n, &mut g), random_matrix(&f, n, &mut g));
        prop_assert_eq!(a.star_adjoint(), naive_adjoint(&a));
        prop_assert_eq!(a.star_adjoint().star_adjoint(), a.clone());
        prop_assert_eq!(
            a.mul(&b).unwrap().star_adjoint(),
            b.star_adjoint().mul(&a.star_adjoint()).unwrap()
        );
    }

    #[test]
    fn congruence_preserves_symmetry(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let n = size(seed >> 8, 5);
        let a = symmetric_integral(&f, n, &mut g);
        let u = random_matrix(&f, n, &mut g);
        let c = a.congruence(&u).unwrap();
        prop_assert_eq!(&c, &naive_congruence(&a, &u));
        prop_assert!(c.is_star_symmetric());
        prop_assert_eq!(a.congruence(&Matrix::identity(f, n)).unwrap(), a.clone());
        if u.is_integral() {
            prop_assert!(c.is_integral());
        }
    }

    #[test]
    fn unimodular_group_is_closed(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let n = size(seed >> 8, 6);
        let a = random_unimodular(&f, n, seed);
        let b = random_unimodular(&f, n, seed ^ 0x9e37_79b9);
        prop_assert!(naive_unimodular(&f, &a));
        prop_assert!(a.mul(&b).unwrap().is_unimodular());
        let inv = a.inverse().unwrap();
        prop_assert!(inv.is_unimodular());
        prop_assert!(naive_integral(&f, &inv));
    }

    /// The residue-field test agrees with integrality plus a unit cofactor
    /// determinant, on matrices that are integral about half the time.
    #[test]
    fn unimodularity_matches_determinant(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let n = size(seed >> 8, 5);
        let a = if g.random_bool(0.5) {
            common::matrix_with(&f, n, &mut g, |f, g| common::element_between(f, g, 0, 1))
        } else {
            random_matrix(&f, n, &mut g)
        };
        prop_assert_eq!(a.is_integral(), naive_integral(&f, &a));
        prop_assert_eq!(a.is_unimodular(), naive_unimodular(&f, &a));
    }

    #[test]
    fn integral_unit_determinant_gives_integral_inverse(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let n = size(seed >> 8, 5);
        let a = common::matrix_with(&f, n, &mut g, |f, g| common::element_between(f, g, 0, 1));
        let det = cofactor_det(&a);
        if f.is_unit(&det) {
            prop_assert!(a.inverse().unwrap().is_integral());
        }
    }

    #[test]
    fn blocks_reassemble(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let n = 2 + (seed >> 8) as usize % 4;
        let k = 1 + (seed >> 16) as usize % (n - 1);
        let a = random_matrix(&f, n, &mut g);
        let blocks = vec![
            vec![a.block(0..k, 0..k).unwrap(), a.block(0..k, k..n).unwrap()],
            vec![a.block(k..n, 0..k).unwrap(), a.block(k..n, k..n).unwrap()],
        ];
        prop_assert_eq!(Matrix::assemble(f, &blocks).unwrap(), a);
    }

    #[test]
    fn congruent_permutation_is_conjugation(seed in any::<u64>()) {
        let fs = fields();
        let f = fs[(seed % fs.len() as u64) as usize];
        let mut g = rng(seed);
        let n = size(seed >> 8, 6);
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            images.swap(i, g.random_range(0..=i));
        }
        let p = Permutation::new(images).unwrap();
        let a = symmetric_integral(&f, n, &mut g);
        let pm = p.to_matrix(f);
        let c = p.apply(&a, PermuteSide::Congruent).unwrap();
        prop_assert_eq!(&c, &naive_congruence(&a, &pm));
        prop_assert!(c.is_star_symmetric());
        prop_assert_eq!(p.apply(&a, PermuteSide::Rows).unwrap(), naive_mul(&pm, &a));
    }
}

fn q5() -> Field {
    Field::rational_padic(5).unwrap()
}

fn parse(f: Field, rows: &[&[&str]]) -> Matrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| f.parse(s).unwrap()).collect())
        .collect();
    Matrix::from_rows(f, rows).unwrap()
}

#[test]
fn product_examples() {
    let f = q5();
    let a = Matrix::from_ints(f, &[&[1, 1], &[1, 25]]);
    let i3 = Matrix::identity(f, 3);
    let b = Matrix::from_ints(f, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
    assert_eq!(i3.mul(&b).unwrap(), b);
    let swap = Matrix::from_ints(f, &[&[0, 1], &[1, 0]]);
    assert_eq!(
        swap.mul(&a).unwrap(),
        Matrix::from_ints(f, &[&[1, 25], &[1, 1]])
    );
    assert_eq!(
        Matrix::diagonal(f, &[f.from_int(5), f.parse("1/5").unwrap()]).unwrap(),
        parse(f, &[&["5", "0"], &["0", "1/5"]])
    );
}

#[test]
fn adjoint_and_congruence_examples() {
    let g = Field::gaussian_inert(3).unwrap();
    let a = parse(g, &[&["i", "1+i"], &["0", "2"]]);
    assert_eq!(a.star_adjoint(), parse(g, &[&["-i", "0"], &["1-i", "2"]]));
    let f = q5();
    let b = Matrix::from_ints(f, &[&[1, 2], &[3, 4]]);
    assert_eq!(b.star_adjoint(), Matrix::from_ints(f, &[&[1, 3], &[2, 4]]));
    let a = Matrix::from_ints(f, &[&[1, 1], &[1, 25]]);
    assert_eq!(a.star_adjoint(), a);
    let swap = Matrix::from_ints(f, &[&[0, 1], &[1, 0]]);
    assert_eq!(
        a.congruence(&swap).unwrap(),
        Matrix::from_ints(f, &[&[25, 1], &[1, 1]])
    );
}

#[test]
fn inverse_and_determinant_examples() {
    let f = q5();
    let d = parse(f, &[&["5", "0"], &["0", "1/5"]]);
    assert_eq!(
        d.inverse().unwrap(),
        parse(f, &[&["1/5", "0"], &["0", "5"]])
    );
    assert_eq!(
        Matrix::from_ints(f, &[&[1, 1], &[1, 25]])
            .determinant()
            .unwrap(),
        f.from_int(24)
    );
    assert!(matches!(
        Matrix::from_ints(f, &[&[1, 1], &[1, 1]]).inverse(),
        Err(Error::SingularMatrix)
    ));
}

#[test]
fn valuation_matrix_examples() {
    let f = q5();
    let m = parse(f, &[&["50/3", "1"], &["0", "1/5"]]);
    assert_eq!(
        m.valuation_matrix(),
        vec![
            vec![ValExt::Finite(2), ValExt::Finite(0)],
            vec![ValExt::Infinity, ValExt::Finite(-1)]
        ]
    );
    let id = Matrix::identity(f, 3).valuation_matrix();
    for (i, row) in id.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let expected = if i == j {
                ValExt::Finite(0)
            } else {
                ValExt::Infinity
            };
            assert_eq!(*v, expected);
        }
    }
}

#[test]
fn unimodularity_examples() {
    let f = q5();
    assert!(Matrix::from_ints(f, &[&[1, 1], &[1, 25]]).is_unimodular());
    assert!(!parse(f, &[&["5", "0"], &["0", "1/5"]]).is_unimodular());
    assert!(!Matrix::from_ints(f, &[&[5, 0], &[0, 1]]).is_unimodular());
}

#[test]
fn permutation_examples() {
    let f = q5();
    let d = parse(f, &[&["5", "0"], &["0", "1/5"]]);
    assert_eq!(
        Permutation::identity(2)
            .apply(&d, PermuteSide::Congruent)
            .unwrap(),
        d
    );
    assert_eq!(
        Permutation::swap(2, 0, 1)
            .apply(&d, PermuteSide::Congruent)
            .unwrap(),
        parse(f, &[&["1/5", "0"], &["0", "5"]])
    );
}

#[test]
fn block_examples() {
    let f = q5();
    let z = Matrix::identity(f, 4).block(0..2, 2..4).unwrap();
    assert_eq!(z, Matrix::zeros(f, 2, 2));
    let a = Matrix::from_ints(f, &[&[1, 2, 3], &[2, 5, 6], &[3, 6, 9]]);
    let x = a.block(0..2, 0..2).unwrap();
    let y = a.block(0..2, 2..3).unwrap();
    let z = a.block(2..3, 2..3).unwrap();
    let rebuilt = Matrix::assemble(f, &[vec![x, y.clone()], vec![y.star_adjoint(), z]]).unwrap();
    assert_eq!(rebuilt, a);
    assert!(rebuilt.is_star_symmetric());
}
