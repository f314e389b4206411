//! Seeded generators of small random complexes and dg categories for property tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{FieldSpec, Matrix, Quotient, Scalar, SparseVec};
use crate::freealg::{polynomial_ring, quantum_plane};

use super::category::{complexes_category, ringoid_truncated, SmallDgCategory};
use super::complex::ChainComplex;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<Scalar>> = (0..rows)
        .map(|_| (0..cols).map(|_| random_scalar(rng, field)).collect())
        .collect();
    Matrix::from_dense(field, cols, &data)
}

/// Complex in degrees [-1, 1] with total dimension at most `max_total` and components of
/// dimension at most 2. The second differential is a random map killing the image of the first.
pub fn random_complex(rng: &mut ChaCha8Rng, field: FieldSpec, max_total: usize) -> ChainComplex {
    loop {
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
        let total: usize = dims.iter().sum();
        if total == 0 || total > max_total {
            continue;
        }
        let d0 = random_matrix(rng, field, dims[1], dims[0]);
        let image = d0.columns();
        let q = Quotient::new(field, dims[1], &image);
        let proj = Matrix::from_columns(
            field,
            q.dim(),
            &(0..dims[1]).map(|i| q.coords(&SparseVec::unit(i, field))).collect::<Vec<_>>(),
        );
        let d1 = random_matrix(rng, field, dims[2], q.dim()).mul(&proj);
        return ChainComplex::new(field, -1, dims, vec![d0, d1]).expect("d1 kills the image of d0");
    }
}

/// Either a full subcategory of complexes (1 to 3 objects, each of total dimension at most 2)
/// or a truncated ringoid of a small algebra on up to 3 weights.
pub fn random_category(rng: &mut ChaCha8Rng, field: FieldSpec) -> SmallDgCategory {
    if rng.gen_bool(0.75) {
        random_complexes_category(rng, field)
    } else {
        random_ringoid(rng, field)
    }
}

pub fn random_complexes_category(rng: &mut ChaCha8Rng, field: FieldSpec) -> SmallDgCategory {
    let n = rng.gen_range(1..=3);
    let objects: Vec<(String, ChainComplex)> = (0..n)
        .map(|i| (format!("C{}", i), random_complex(rng, field, 2)))
        .collect();
    complexes_category(field, &objects).expect("complexes form a dg category")
}

pub fn random_ringoid(rng: &mut ChaCha8Rng, field: FieldSpec) -> SmallDgCategory {
    let pres = if rng.gen_bool(0.5) {
        polynomial_ring(field, 1).expect("polynomial ring")
    } else {
        let q = loop {
            let q = random_scalar(rng, field);
            if !q.is_zero() {
                break q;
            }
        };
        quantum_plane(field, q).expect("quantum plane")
    };
    let count = rng.gen_range(1..=3);
    let start: i64 = rng.gen_range(-1..=1);
    let weights: Vec<i64> = (0..count).map(|k| start + k).collect();
    ringoid_truncated(&pres, &weights, 2).expect("gap within cutoff").0
}
