//! Seeded random inputs for experiments and tests.

use rand::Rng;

use crate::algebra::{Field, Matrix, Scalar};
use crate::poly::{monomials_of_degree, Monomial, Poly};

/// Small random scalar: integers in `[-bound, bound]` (Gaussian integers over
/// `Qi`, uniform residues over `Fp`).
pub fn scalar<R: Rng>(rng: &mut R, field: Field, bound: i64) -> Scalar {
    match field {
        Field::Rationals => Scalar::from_i64(field, rng.gen_range(-bound..=bound)),
        Field::GaussianRationals => {
            Scalar::gaussian_int(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
        }
        Field::PrimeField(p) => Scalar::from_i64(field, rng.gen_range(0..p as i64)),
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, field: Field, bound: i64) -> Scalar {
    loop {
        let s = scalar(rng, field, bound.max(1));
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, field: Field, n: usize, bound: i64) -> Vec<Scalar> {
    (0..n).map(|_| scalar(rng, field, bound)).collect()
}

/// Random homogeneous polynomial of degree `d`; each monomial is kept with
/// probability `density`. Never zero.
pub fn homogeneous<R: Rng>(rng: &mut R, field: Field, n: usize, d: u32, density: f64, bound: i64) -> Poly {
    let monos = monomials_of_degree(n, d);
    loop {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        for m in &monos {
            if rng.gen_bool(density) {
                terms.push((m.clone(), scalar(rng, field, bound)));
            }
        }
        let p = Poly::from_terms(field, n, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random polynomial with degrees in `min_deg..=max_deg`.
pub fn poly<R: Rng>(
    rng: &mut R,
    field: Field,
    n: usize,
    min_deg: u32,
    max_deg: u32,
    nterms: usize,
    bound: i64,
) -> Poly {
    let terms: Vec<(Monomial, Scalar)> = (0..nterms)
        .map(|_| {
            let d = rng.gen_range(min_deg..=max_deg);
            let monos = monomials_of_degree(n, d);
            let m = monos[rng.gen_range(0..monos.len())].clone();
            (m, scalar(rng, field, bound))
        })
        .collect();
    Poly::from_terms(field, n, terms)
}

pub fn matrix<R: Rng>(rng: &mut R, field: Field, n: usize, bound: i64) -> Matrix<Scalar> {
    let rows = (0..n).map(|_| vector(rng, field, n, bound)).collect();
    Matrix::from_rows(field, rows).expect("square")
}

pub fn invertible<R: Rng>(rng: &mut R, field: Field, n: usize, bound: i64) -> Matrix<Scalar> {
    loop {
        let m = matrix(rng, field, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn symmetric<R: Rng>(rng: &mut R, field: Field, n: usize, bound: i64) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in i..n {
            let s = scalar(rng, field, bound);
            m.set(i, j, s.clone());
            m.set(j, i, s);
        }
    }
    m
}

pub fn symmetric_invertible<R: Rng>(rng: &mut R, field: Field, n: usize, bound: i64) -> Matrix<Scalar> {
    loop {
        let m = symmetric(rng, field, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

/// Symmetric `n x n` matrix of rank exactly `r`, as `V diag(d_1..d_r, 0) V^T`.
pub fn symmetric_of_rank<R: Rng>(
    rng: &mut R,
    field: Field,
    n: usize,
    r: usize,
    bound: i64,
) -> Matrix<Scalar> {
    let v = invertible(rng, field, n, bound);
    let d: Vec<Scalar> = (0..n)
        .map(|i| {
            if i < r {
                nonzero_scalar(rng, field, 2)
            } else {
                Scalar::zero(field)
            }
        })
        .collect();
    v.mul(&Matrix::diagonal(field, &d))
        .and_then(|m| m.mul(&v.transpose()))
        .expect("square")
}
