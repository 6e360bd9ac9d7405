use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::poly::kernel::{dispatch, finish, Cleared, IntoScalar, Lane, LaneVisitor};
use crate::poly::{format_poly, parse_poly, phi, Monomial, Poly};

/// Differential operator `sum_a c_a(z) D^a` with coefficients written to the
/// left of the derivatives.
///
/// Constant-coefficient operators are the case where every `c_a` is a
/// constant polynomial; they correspond one-to-one with symbol polynomials
/// `f(xi)` via `D_i <-> xi_i` (see [`DiffOp::from_symbol`]).
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    field: Field,
    nvars: usize,
    terms: Vec<(Monomial, Poly)>,
}

impl DiffOp {
    pub fn zero(field: Field, nvars: usize) -> DiffOp {
        DiffOp {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn identity(field: Field, nvars: usize) -> DiffOp {
        DiffOp::derivative(field, Monomial::one(nvars), Scalar::one(field))
    }

    /// `c * D^a`.
    pub fn derivative(field: Field, a: Monomial, c: Scalar) -> DiffOp {
        let nvars = a.nvars();
        DiffOp::from_terms(field, nvars, [(a, Poly::constant(nvars, c))])
            .expect("matching field and variables")
    }

    /// Sums terms `(a, c_a)`; derivative indices must be nonnegative.
    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Poly)>,
    ) -> Result<DiffOp> {
        let mut acc: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (a, c) in terms {
            if a.nvars() != nvars {
                return Err(Error::NvarsMismatch(nvars, a.nvars()));
            }
            if !a.is_holomorphic() {
                return Err(Error::precondition("derivative orders must be nonnegative"));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            if c.nvars() != nvars {
                return Err(Error::NvarsMismatch(nvars, c.nvars()));
            }
            match acc.get_mut(&a) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(a, c);
                }
            }
        }
        Ok(DiffOp {
            field,
            nvars,
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Constant-coefficient operator with symbol `f`, i.e. `f(D)`.
    pub fn from_symbol(f: &Poly) -> Result<DiffOp> {
        if !f.is_polynomial() {
            return Err(Error::precondition("symbol must be a polynomial"));
        }
        let n = f.nvars();
        DiffOp::from_terms(
            f.field(),
            n,
            f.terms()
                .iter()
                .map(|(m, c)| (m.clone(), Poly::constant(n, c.clone()))),
        )
    }

    /// Symbol polynomial of a constant-coefficient operator.
    pub fn symbol(&self) -> Result<Poly> {
        if !self.is_constant_coeff() {
            return Err(Error::Unsupported(
                "symbol of an operator with polynomial coefficients".into(),
            ));
        }
        Ok(Poly::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().map(|(a, c)| (a.clone(), c.constant_term())),
        ))
    }

    /// `(sum beta_i D_i)^k`.
    pub fn directional(field: Field, beta: &[Scalar], k: u32) -> DiffOp {
        DiffOp::from_symbol(&Poly::linear_form(field, beta).pow(k)).expect("polynomial symbol")
    }

    /// `f(A D)`: the symbol `f(A xi)`.
    pub fn f_of_ad(f: &Poly, a: &Matrix<Scalar>) -> Result<DiffOp> {
        DiffOp::from_symbol(&f.apply_matrix(a)?)
    }

    /// `Delta_A = sum_ij a_ij D_i D_j`; off-diagonal pairs contribute
    /// `2 a_ij D_i D_j`.
    pub fn laplace_a(a: &Matrix<Scalar>) -> Result<DiffOp> {
        if !a.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = a.rows();
        let xi: Vec<Poly> = (0..n).map(|i| Poly::var(a.field(), n, i)).collect();
        let mut sym = Poly::zero(a.field(), n);
        for i in 0..n {
            for j in 0..n {
                if !a.get(i, j).is_zero() {
                    sym = &sym + &(&xi[i] * &xi[j]).scale(a.get(i, j));
                }
            }
        }
        DiffOp::from_symbol(&sym)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Poly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|a|` over stored terms; `None` for the zero operator.
    pub fn order(&self) -> Option<i64> {
        self.terms.iter().map(|(a, _)| a.degree()).max()
    }

    /// Smallest `|a|`; an operator with `min_order() == Some(0)` has an
    /// order-zero part.
    pub fn min_order(&self) -> Option<i64> {
        self.terms.iter().map(|(a, _)| a.degree()).min()
    }

    pub fn is_constant_coeff(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_constant())
    }

    /// Degree drop `|a| - deg c_a` when it is the same for every term of
    /// every coefficient, so the operator maps homogeneous polynomials of
    /// degree `e` to degree `e - w`.
    pub fn weight(&self) -> Option<i64> {
        let mut w = None;
        for (a, c) in &self.terms {
            for (m, _) in c.terms() {
                let this = a.degree() - m.degree();
                match w {
                    None => w = Some(this),
                    Some(prev) if prev != this => return None,
                    _ => {}
                }
            }
        }
        w
    }

    pub fn check_poly(&self, p: &Poly) -> Result<()> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch(self.field, p.field()));
        }
        if p.nvars() != self.nvars {
            return Err(Error::NvarsMismatch(self.nvars, p.nvars()));
        }
        Ok(())
    }

    /// Applies the operator. `D^a z^b` is the falling-factorial multiple of
    /// `z^{b-a}`; the formula also covers negative (Laurent) exponents.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.check_poly(p)?;
        if p.is_zero() || self.is_zero() {
            return Ok(Poly::zero(self.field, self.nvars));
        }
        let mut constant: Vec<(Monomial, Scalar)> = Vec::new();
        let mut out = Poly::zero(self.field, self.nvars);
        for (a, c) in &self.terms {
            if c.is_constant() {
                constant.push((a.clone(), c.constant_term()));
            } else {
                let one = [(a.clone(), Scalar::one(self.field))];
                let da = dispatch(self.field, &[&one, p.terms()], ApplyVisitor(self.field));
                let da = Poly::from_sorted_unchecked(self.field, self.nvars, da);
                out = &out + &(c * &da);
            }
        }
        if !constant.is_empty() {
            let t = dispatch(self.field, &[&constant, p.terms()], ApplyVisitor(self.field));
            out = &out + &Poly::from_sorted_unchecked(self.field, self.nvars, t);
        }
        Ok(out)
    }

    /// Applies the operator `m` times, stopping early at zero.
    pub fn apply_pow(&self, p: &Poly, m: u32) -> Result<Poly> {
        let mut cur = p.clone();
        for _ in 0..m {
            if cur.is_zero() {
                break;
            }
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// Composition `self o rhs` for constant-coefficient operators.
    pub fn compose(&self, rhs: &DiffOp) -> Result<DiffOp> {
        DiffOp::from_symbol(&(&self.symbol()? * &rhs.symbol()?))
    }

    pub fn add(&self, rhs: &DiffOp) -> Result<DiffOp> {
        DiffOp::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().chain(&rhs.terms).cloned(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> DiffOp {
        DiffOp::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().map(|(a, p)| (a.clone(), p.scale(c))),
        )
        .expect("same shape")
    }

    /// `Psi_U`: coefficients transform by `Phi_U` and the derivative vector
    /// by `D -> U^T D`, so that `Phi_U(L P) = Psi_U(L) Phi_U(P)`.
    pub fn conjugate(&self, u: &Matrix<Scalar>) -> Result<DiffOp> {
        if u.rows() != self.nvars || u.cols() != self.nvars {
            return Err(Error::Shape(format!(
                "conjugation needs a {0}x{0} matrix",
                self.nvars
            )));
        }
        u.inverse()?;
        let ut = u.transpose();
        let mut out: Vec<(Monomial, Poly)> = Vec::new();
        for (a, c) in &self.terms {
            let coeff = phi(c, u)?;
            let sym = Poly::monomial(a.clone(), Scalar::one(self.field)).apply_matrix(&ut)?;
            for (b, s) in sym.terms() {
                out.push((b.clone(), coeff.scale(s)));
            }
        }
        DiffOp::from_terms(self.field, self.nvars, out)
    }

    pub fn to_json(&self) -> DiffOpJson {
        DiffOpJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| DiffOpTermJson {
                    da: a.exps().iter().map(|&e| e as u32).collect(),
                    coeff: format_poly(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &DiffOpJson, field: Field) -> Result<DiffOp> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for (k, t) in j.terms.iter().enumerate() {
            if t.da.len() != j.nvars {
                return Err(Error::descriptor(
                    format!("/terms/{k}/da"),
                    format!("expected {} entries", j.nvars),
                ));
            }
            let exps: Vec<i32> = t.da.iter().map(|&e| e as i32).collect();
            let c = parse_poly(&t.coeff, j.nvars, field, false)
                .map_err(|e| Error::descriptor(format!("/terms/{k}/coeff"), e))?;
            terms.push((Monomial::new(&exps), c));
        }
        DiffOp::from_terms(field, j.nvars, terms)
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({self})")
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let mut d = Vec::new();
                for (i, &e) in a.exps().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => d.push(format!("D{}", i + 1)),
                        _ => d.push(format!("D{}^{e}", i + 1)),
                    }
                }
                let d = d.join("*");
                match (c.is_one(), d.is_empty()) {
                    (_, true) => format!("({c})"),
                    (true, false) => d,
                    (false, false) => format!("({c})*{d}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Operator exchange format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffOpJson {
    pub nvars: usize,
    pub terms: Vec<DiffOpTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffOpTermJson {
    pub da: Vec<u32>,
    pub coeff: String,
}

fn falling(b: &Monomial, a: &Monomial) -> Option<BigInt> {
    let mut acc: i64 = 1;
    let mut big: Option<BigInt> = None;
    for (&bi, &ai) in b.exps().iter().zip(a.exps()) {
        for k in 0..ai {
            let f = (bi - k) as i64;
            if f == 0 {
                return None;
            }
            match &mut big {
                Some(x) => *x *= f,
                None => match acc.checked_mul(f) {
                    Some(v) => acc = v,
                    None => big = Some(BigInt::from(acc) * f),
                },
            }
        }
    }
    Some(big.unwrap_or_else(|| BigInt::from(acc)))
}

struct ApplyVisitor(Field);

impl LaneVisitor for ApplyVisitor {
    type Out = Vec<(Monomial, Scalar)>;

    fn visit<L: Lane + IntoScalar>(self, inputs: Vec<Cleared<L>>, p: u64) -> Self::Out {
        let [op, poly]: [Cleared<L>; 2] = inputs.try_into().ok().expect("two operands");
        let mut acc: FxHashMap<Monomial, L> = FxHashMap::default();
        acc.reserve(poly.terms.len() * 2);
        for (a, ca) in &op.terms {
            for (b, cb) in &poly.terms {
                let Some(ff) = falling(b, a) else { continue };
                let v = ca.mul(cb, p).mul_big(&ff, p);
                if v.lane_is_zero() {
                    continue;
                }
                acc.entry(b.div(a))
                    .and_modify(|e| e.add_assign(&v, p))
                    .or_insert(v);
            }
        }
        finish(acc, &(&op.den * &poly.den), self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;
    const QI: Field = Field::GaussianRationals;

    fn p(s: &str, n: usize, f: Field) -> Poly {
        parse_poly(s, n, f, false).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        let d2 = DiffOp::laplace_a(&Matrix::identity(Q, 2)).unwrap();
        assert_eq!(d2.apply(&p("z1^2 + z2^2", 2, Q)).unwrap(), p("4", 2, Q));
        let a = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]).unwrap();
        let da = DiffOp::laplace_a(&a).unwrap();
        assert_eq!(da.apply(&p("z1*z2", 2, Q)).unwrap(), p("2", 2, Q));
    }

    #[test]
    fn bondt_operator_kills_z1() {
        let op = DiffOp::from_terms(Q, 1, [(Monomial::new(&[2]), p("z1", 1, Q))]).unwrap();
        assert!(op.apply(&p("z1", 1, Q)).unwrap().is_zero());
        assert_eq!(op.apply(&p("z1^3", 1, Q)).unwrap(), p("6*z1^2", 1, Q));
        assert_eq!(op.weight(), Some(1));
    }

    #[test]
    fn directional_examples() {
        let e1 = [Scalar::one(Q), Scalar::zero(Q)];
        let op = DiffOp::directional(Q, &e1, 2);
        assert_eq!(op, DiffOp::derivative(Q, Monomial::new(&[2, 0]), Scalar::one(Q)));
        let beta = [Scalar::one(QI), Scalar::imag_unit()];
        let op = DiffOp::directional(QI, &beta, 1);
        assert!(op.apply(&p("z1 + i*z2", 2, QI)).unwrap().is_zero());
        assert_eq!(DiffOp::directional(Q, &e1, 0), DiffOp::identity(Q, 2));
    }

    #[test]
    fn laurent_derivatives() {
        let op = DiffOp::derivative(Q, Monomial::new(&[2]), Scalar::one(Q));
        let f = parse_poly("z1^-1", 1, Q, true).unwrap();
        assert_eq!(op.apply(&f).unwrap(), parse_poly("2*z1^-3", 1, Q, true).unwrap());
    }

    #[test]
    fn conjugation_of_laplacian() {
        let u = Matrix::from_i64(Q, &[&[1, 0], &[1, 1]]).unwrap();
        let d = DiffOp::laplace_a(&Matrix::identity(Q, 2)).unwrap();
        let uut = u.mul(&u.transpose()).unwrap();
        assert_eq!(d.conjugate(&u).unwrap(), DiffOp::laplace_a(&uut).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let op = DiffOp::from_terms(Q, 1, [(Monomial::new(&[2]), p("z1", 1, Q))]).unwrap();
        let j = serde_json::to_string(&op.to_json()).unwrap();
        assert_eq!(j, r#"{"nvars":1,"terms":[{"da":[2],"coeff":"z1"}]}"#);
        let back: DiffOpJson = serde_json::from_str(&j).unwrap();
        assert_eq!(DiffOp::from_json(&back, Q).unwrap(), op);
    }
}
