use super::op::DiffOp;
use crate::algebra::{Congruence, Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// A symmetric matrix `A` with the objects derived from it: `Delta_A`, the
/// rank, `A^{-1}` and `sigma_{A^{-1}}(z) = z^T A^{-1} z` when invertible, and
/// the congruence factorization.
#[derive(Clone, Debug)]
pub struct SymBilinearContext {
    a: Matrix<Scalar>,
    ainv: Option<Matrix<Scalar>>,
    rank: usize,
    delta: DiffOp,
    sigma: Option<Poly>,
    factorization: Option<Congruence>,
    name: String,
}

impl SymBilinearContext {
    pub fn new(a: Matrix<Scalar>) -> Result<Self> {
        Self::with_name(a, "custom")
    }

    fn with_name(a: Matrix<Scalar>, name: &str) -> Result<Self> {
        if !a.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = a.rows();
        let field = a.field();
        let rank = a.rank();
        let delta = DiffOp::laplace_a(&a)?;
        let ainv = (rank == n).then(|| a.inverse()).transpose()?;
        let sigma = match &ainv {
            Some(inv) => {
                let z: Vec<Poly> = (0..n).map(|i| Poly::var(field, n, i)).collect();
                let mut s = Poly::zero(field, n);
                for i in 0..n {
                    for j in 0..n {
                        if !inv.get(i, j).is_zero() {
                            s = &s + &(&z[i] * &z[j]).scale(inv.get(i, j));
                        }
                    }
                }
                // sigma_{A^{-1}}(A D) must reproduce Delta_A
                if DiffOp::f_of_ad(&s, &a)? != delta {
                    return Err(Error::precondition("sigma(AD) differs from Delta_A"));
                }
                Some(s)
            }
            None => None,
        };
        let factorization = if field.characteristic() == 2 {
            None
        } else {
            Some(a.congruence_diagonalize()?)
        };
        Ok(SymBilinearContext {
            a,
            ainv,
            rank,
            delta,
            sigma,
            factorization,
            name: name.to_string(),
        })
    }

    /// Replaces the computed normalized factor with a caller-supplied `U`
    /// satisfying `A = U diag(I_r, 0) U^T`, which is verified.
    pub fn with_factor(mut self, u: Matrix<Scalar>) -> Result<Self> {
        if !self.a.verify_factorization(&u, self.rank) {
            return Err(Error::precondition("supplied factor does not reproduce A"));
        }
        u.inverse()?;
        match &mut self.factorization {
            Some(f) => f.normalized = Some(u),
            None => return Err(Error::Unsupported("factorization in characteristic 2".into())),
        }
        Ok(self)
    }

    /// `Delta_n`, the ordinary Laplacian.
    pub fn laplace(field: Field, n: usize) -> Result<Self> {
        Self::with_name(Matrix::identity(field, n), "laplace")
    }

    /// `D_1^2 - sum_{i >= 2} D_i^2` in `n` variables.
    pub fn minkowski(field: Field, n: usize) -> Result<Self> {
        let d: Vec<Scalar> = (0..n)
            .map(|i| Scalar::from_i64(field, if i == 0 { 1 } else { -1 }))
            .collect();
        Self::with_name(Matrix::diagonal(field, &d), "minkowski")
    }

    /// `sum_{i <= k} D_i D_{i+k}` in `2k` variables.
    pub fn symplectic(field: Field, k: usize) -> Result<Self> {
        Self::with_name(pairing(field, k), "symplectic")
    }

    /// `sum_i d^2/(dz_i d zbar_i)` in the coordinates `(z_1..z_k, zbar_1..zbar_k)`.
    pub fn complex_laplacian(field: Field, k: usize) -> Result<Self> {
        Self::with_name(pairing(field, k), "complex-laplacian")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.a
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn nvars(&self) -> usize {
        self.a.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_invertible(&self) -> bool {
        self.ainv.is_some()
    }

    pub fn inverse(&self) -> Option<&Matrix<Scalar>> {
        self.ainv.as_ref()
    }

    pub fn delta(&self) -> &DiffOp {
        &self.delta
    }

    pub fn sigma(&self) -> Option<&Poly> {
        self.sigma.as_ref()
    }

    pub fn factorization(&self) -> Option<&Congruence> {
        self.factorization.as_ref()
    }

    /// `U` with `A = U diag(I_r, 0) U^T`, when one exists over the field.
    pub fn normalized_factor(&self) -> Option<&Matrix<Scalar>> {
        self.factorization.as_ref()?.normalized.as_ref()
    }

    /// `<u, v>_A = u^T A v`.
    pub fn pairing(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        let av = self.a.mul_vec(v)?;
        if u.len() != av.len() {
            return Err(Error::Shape("vector length differs from matrix size".into()));
        }
        Ok(u.iter()
            .zip(&av)
            .fold(Scalar::zero(self.field()), |acc, (x, y)| &acc + &(x * y)))
    }

    /// `<grad f, grad g>_A`.
    pub fn grad_pairing(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let gf = gradient(f);
        let gg = gradient(g);
        let n = self.nvars();
        let mut acc = Poly::zero(self.field(), n);
        for i in 0..n {
            for j in 0..n {
                let a = self.a.get(i, j);
                if !a.is_zero() && !gf[i].is_zero() && !gg[j].is_zero() {
                    acc = &acc + &(&gf[i] * &gg[j]).scale(a);
                }
            }
        }
        Ok(acc)
    }

    /// The congruent context `U A U^T`.
    pub fn conjugate(&self, u: &Matrix<Scalar>) -> Result<Self> {
        Self::new(u.mul(&self.a)?.mul(&u.transpose())?)
    }

    /// `f(A D)` as an operator.
    pub fn f_of_ad(&self, f: &Poly) -> Result<DiffOp> {
        DiffOp::f_of_ad(f, &self.a)
    }
}

fn pairing(field: Field, k: usize) -> Matrix<Scalar> {
    let half = Scalar::ratio(field, 1, 2);
    let mut m = Matrix::zeros(field, 2 * k, 2 * k);
    for i in 0..k {
        m.set(i, i + k, half.clone());
        m.set(i + k, i, half.clone());
    }
    m
}

/// `(D_1 P, ..., D_n P)`.
pub fn gradient(p: &Poly) -> Vec<Poly> {
    (0..p.nvars()).map(|i| p.derivative(i)).collect()
}

/// Matrix of second partials; symmetric by construction.
pub fn hessian(p: &Poly) -> Matrix<Poly> {
    let n = p.nvars();
    let g = gradient(p);
    let mut h = Matrix::filled(n, n, Poly::zero(p.field(), n));
    for i in 0..n {
        for j in i..n {
            let d = g[i].derivative(j);
            h.set(j, i, d.clone());
            h.set(i, j, d);
        }
    }
    h
}

/// Embeds a scalar matrix as a constant polynomial matrix in `nvars` variables.
pub fn constant_matrix(a: &Matrix<Scalar>, nvars: usize) -> Matrix<Poly> {
    a.map(Poly::zero(a.field(), nvars), |x| Poly::constant(nvars, x.clone()))
}
