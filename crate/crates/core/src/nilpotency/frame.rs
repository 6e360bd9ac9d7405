use crate::algebra::{Matrix, Scalar};
use crate::diffops::SymBilinearContext;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Presentation `P = sum c_i h_{alpha_i}^d` with every `alpha_i` isotropic
/// for `<.,.>_A`.
///
/// The linear forms use the standard pairing `h_alpha(z) = sum alpha_k z_k`;
/// with this choice `Delta_A h_alpha^d = d(d-1) <alpha, alpha>_A h_alpha^{d-2}`.
/// Coefficients `c_i` are kept explicitly since not every scalar of the
/// Gaussian rationals is a `d`-th power.
#[derive(Clone, Debug)]
pub struct IsotropicFrame {
    d: u32,
    vectors: Vec<Vec<Scalar>>,
    coeffs: Vec<Scalar>,
    ctx: SymBilinearContext,
}

impl IsotropicFrame {
    pub fn new(
        ctx: SymBilinearContext,
        d: u32,
        vectors: Vec<Vec<Scalar>>,
        coeffs: Vec<Scalar>,
    ) -> Result<Self> {
        if d < 2 {
            return Err(Error::precondition("frame degree must be at least 2"));
        }
        if vectors.is_empty() || vectors.len() != coeffs.len() {
            return Err(Error::Shape("one coefficient per frame vector".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ctx.nvars() {
                return Err(Error::Shape(format!("frame vector {i} has wrong length")));
            }
            if !ctx.pairing(v, v)?.is_zero() {
                return Err(Error::precondition(format!("frame vector {i} is not isotropic")));
            }
            if coeffs[i].is_zero() {
                return Err(Error::precondition(format!("frame coefficient {i} is zero")));
            }
        }
        Ok(IsotropicFrame {
            d,
            vectors,
            coeffs,
            ctx,
        })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn context(&self) -> &SymBilinearContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `h_alpha(z) = sum alpha_k z_k`.
    pub fn linear_form(&self, i: usize) -> Poly {
        Poly::linear_form(self.ctx.field(), &self.vectors[i])
    }

    /// `P = sum c_i h_{alpha_i}^d`.
    pub fn assemble(&self) -> Poly {
        (0..self.len()).fold(Poly::zero(self.ctx.field(), self.ctx.nvars()), |acc, i| {
            &acc + &self.linear_form(i).pow(self.d).scale(&self.coeffs[i])
        })
    }

    /// Gram matrix `Xi_P = (<alpha_i, alpha_j>_A)`.
    pub fn gram(&self) -> Matrix<Scalar> {
        let k = self.len();
        let mut m = Matrix::zeros(self.ctx.field(), k, k);
        for i in 0..k {
            for j in 0..k {
                let v = self
                    .ctx
                    .pairing(&self.vectors[i], &self.vectors[j])
                    .expect("validated lengths");
                m.set(i, j, v);
            }
        }
        m
    }

    /// `Omega_{P;j} = B^j Xi C B^{d-2-j}` with `B = diag(h_{alpha_i})` and
    /// `C = diag(c_i)`; `j = 0` gives `Omega_P`.
    pub fn omega(&self, j: u32) -> Result<Matrix<Poly>> {
        if j > self.d - 2 {
            return Err(Error::precondition(format!(
                "balance index {j} exceeds d - 2 = {}",
                self.d - 2
            )));
        }
        let k = self.len();
        let n = self.ctx.nvars();
        let f = self.ctx.field();
        let xi = self.gram();
        let h: Vec<Poly> = (0..k).map(|i| self.linear_form(i)).collect();
        let mut m = Matrix::filled(k, k, Poly::zero(f, n));
        for r in 0..k {
            for c in 0..k {
                let g = xi.get(r, c);
                if g.is_zero() {
                    continue;
                }
                let e = &h[r].pow(j) * &h[c].pow(self.d - 2 - j);
                m.set(r, c, e.scale(&(g * &self.coeffs[c])));
            }
        }
        Ok(m)
    }
}
