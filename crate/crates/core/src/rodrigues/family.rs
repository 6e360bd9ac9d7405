use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, RationalFn};

const Q: Field = Field::Rationals;

/// The registered weight families.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FamilyKind {
    /// `e^{-x^2}` on the line.
    Hermite,
    /// `x^alpha e^{-x}` on the half line.
    Laguerre { alpha: String },
    /// `(1-x)^alpha (1+x)^beta` on `(-1, 1)`.
    Jacobi { alpha: String, beta: String },
    /// `(1-x^2)^{lambda-1/2}` on `(-1, 1)`.
    Gegenbauer { lambda: String },
    /// `(1-|x|^2)^{mu-1/2}` on the unit ball.
    Ball { mu: String },
    /// `x^kappa (1-|x|_1)^{kappa_{n+1}-1/2}` on the simplex.
    Simplex { kappa: Vec<String> },
    /// Cartesian product of one-variable families.
    Product { factors: Vec<FamilyKind> },
}

/// A weight `w` known only through `rho_i = (d_i w)/w`, the Rodrigues seed
/// `g`, the normalizing constants and an exact moment functional.
#[derive(Clone, Debug)]
pub struct WeightFamily {
    pub name: String,
    pub kind: FamilyKind,
    pub nvars: usize,
    pub rho: Vec<RationalFn>,
    pub p: Poly,
    pub parameters: BTreeMap<String, Scalar>,
    factors: Vec<WeightFamily>,
}

fn q(s: &Scalar) -> BigRational {
    s.as_rational().expect("rational parameter")
}

fn int(v: i64) -> Scalar {
    Scalar::from_i64(Q, v)
}

fn check_gt(name: &str, v: &Scalar, bound: (i64, i64)) -> Result<()> {
    let r = v
        .as_rational()
        .ok_or_else(|| Error::precondition(format!("{name} must be rational")))?;
    if r <= BigRational::new(bound.0.into(), bound.1.into()) {
        return Err(Error::precondition(format!(
            "{name} must exceed {}/{}",
            bound.0, bound.1
        )));
    }
    Ok(())
}

/// `(c)_k = c (c+1) ... (c+k-1)`.
pub fn pochhammer(c: &Scalar, k: u32) -> Scalar {
    (0..k).fold(Scalar::one(c.field()), |acc, j| {
        &acc * &(c + &Scalar::from_i64(c.field(), j as i64))
    })
}

pub(crate) fn factorial(k: u32) -> Scalar {
    pochhammer(&int(1), k)
}

fn binomial(n: u32, k: u32) -> Scalar {
    &factorial(n) / &(&factorial(k) * &factorial(n - k))
}

fn x(n: usize, i: usize) -> Poly {
    Poly::var(Q, n, i)
}

fn one(n: usize) -> Poly {
    Poly::one(Q, n)
}

/// `sum_k c_k / bases[k] + poly`.
fn rho_from(poly: Poly, parts: &[(usize, Poly)], bases: &Arc<[Poly]>) -> RationalFn {
    let mut r = RationalFn::from_poly(poly, bases.clone());
    for (k, num) in parts {
        let mut exps = vec![0; bases.len()];
        exps[*k] = 1;
        r = r.add(&RationalFn::new(num.clone(), exps, bases.clone()).expect("same ring"));
    }
    r
}

impl WeightFamily {
    fn one_var(
        kind: FamilyKind,
        name: &str,
        bases: Vec<Poly>,
        rho: impl FnOnce(&Arc<[Poly]>) -> RationalFn,
        p: Poly,
        params: &[(&str, &Scalar)],
    ) -> Self {
        let bases: Arc<[Poly]> = bases.into();
        WeightFamily {
            name: name.to_string(),
            kind,
            nvars: 1,
            rho: vec![rho(&bases)],
            p,
            parameters: params
                .iter()
                .map(|(k, v)| (k.to_string(), (*v).clone()))
                .collect(),
            factors: Vec::new(),
        }
    }

    pub fn hermite() -> Self {
        Self::one_var(
            FamilyKind::Hermite,
            "hermite",
            vec![],
            |b| RationalFn::from_poly(x(1, 0).scale(&int(-2)), b.clone()),
            one(1),
            &[],
        )
    }

    pub fn laguerre(alpha: &Scalar) -> Result<Self> {
        check_gt("alpha", alpha, (-1, 1))?;
        let kind = FamilyKind::Laguerre {
            alpha: alpha.to_plain_string(),
        };
        Ok(Self::one_var(
            kind,
            "laguerre",
            vec![x(1, 0)],
            |b| {
                rho_from(
                    Poly::constant(1, int(-1)),
                    &[(0, Poly::constant(1, alpha.clone()))],
                    b,
                )
            },
            x(1, 0),
            &[("alpha", alpha)],
        ))
    }

    pub fn jacobi(alpha: &Scalar, beta: &Scalar) -> Result<Self> {
        check_gt("alpha", alpha, (-1, 1))?;
        check_gt("beta", beta, (-1, 1))?;
        let kind = FamilyKind::Jacobi {
            alpha: alpha.to_plain_string(),
            beta: beta.to_plain_string(),
        };
        Ok(Self::one_var(
            kind,
            "jacobi",
            vec![&one(1) - &x(1, 0), &one(1) + &x(1, 0)],
            |b| {
                rho_from(
                    Poly::zero(Q, 1),
                    &[
                        (0, Poly::constant(1, -alpha)),
                        (1, Poly::constant(1, beta.clone())),
                    ],
                    b,
                )
            },
            &one(1) - &x(1, 0).pow(2),
            &[("alpha", alpha), ("beta", beta)],
        ))
    }

    pub fn gegenbauer(lambda: &Scalar) -> Result<Self> {
        check_gt("lambda", lambda, (-1, 2))?;
        let kind = FamilyKind::Gegenbauer {
            lambda: lambda.to_plain_string(),
        };
        let c = &(lambda * &int(2)) - &int(1);
        Ok(Self::one_var(
            kind,
            "gegenbauer",
            vec![&one(1) - &x(1, 0).pow(2)],
            |b| rho_from(Poly::zero(Q, 1), &[(0, x(1, 0).scale(&-&c))], b),
            &one(1) - &x(1, 0).pow(2),
            &[("lambda", lambda)],
        ))
    }

    pub fn ball(n: usize, mu: &Scalar) -> Result<Self> {
        check_gt("mu", mu, (1, 2))?;
        if n == 0 {
            return Err(Error::precondition("ball family needs n >= 1"));
        }
        let norm = (0..n).fold(Poly::zero(Q, n), |acc, i| &acc + &x(n, i).pow(2));
        let base = &one(n) - &norm;
        let bases: Arc<[Poly]> = vec![base.clone()].into();
        let c = &(mu * &int(2)) - &int(1);
        let rho = (0..n)
            .map(|i| rho_from(Poly::zero(Q, n), &[(0, x(n, i).scale(&-&c))], &bases))
            .collect();
        Ok(WeightFamily {
            name: "ball".into(),
            kind: FamilyKind::Ball {
                mu: mu.to_plain_string(),
            },
            nvars: n,
            rho,
            p: base,
            parameters: [("mu".to_string(), mu.clone())].into(),
            factors: Vec::new(),
        })
    }

    /// `kappa` has `n + 1` entries.
    pub fn simplex(kappa: &[Scalar]) -> Result<Self> {
        if kappa.len() < 2 {
            return Err(Error::precondition("simplex family needs n + 1 >= 2 parameters"));
        }
        for (i, k) in kappa.iter().enumerate() {
            check_gt(&format!("kappa{}", i + 1), k, (-1, 2))?;
        }
        let n = kappa.len() - 1;
        let l1 = (0..n).fold(Poly::zero(Q, n), |acc, i| &acc + &x(n, i));
        let base = &one(n) - &l1;
        let mut bases: Vec<Poly> = (0..n).map(|i| x(n, i)).collect();
        bases.push(base.clone());
        let bases: Arc<[Poly]> = bases.into();
        let last = &kappa[n] - &Scalar::ratio(Q, 1, 2);
        let rho = (0..n)
            .map(|i| {
                rho_from(
                    Poly::zero(Q, n),
                    &[
                        (i, Poly::constant(n, kappa[i].clone())),
                        (n, Poly::constant(n, -&last)),
                    ],
                    &bases,
                )
            })
            .collect();
        Ok(WeightFamily {
            name: "simplex".into(),
            kind: FamilyKind::Simplex {
                kappa: kappa.iter().map(Scalar::to_plain_string).collect(),
            },
            nvars: n,
            rho,
            p: base,
            parameters: kappa
                .iter()
                .enumerate()
                .map(|(i, k)| (format!("kappa{}", i + 1), k.clone()))
                .collect(),
            factors: Vec::new(),
        })
    }

    /// `W(x) = prod w_i(x_i)` from one-variable families.
    pub fn product(factors: Vec<WeightFamily>) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|f| f.nvars != 1 || !f.factors.is_empty()) {
            return Err(Error::precondition("product needs one-variable factors"));
        }
        let n = factors.len();
        let embed = |p: &Poly, i: usize| p.remap_vars(&[i], n);
        let mut bases = Vec::new();
        let mut offsets = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            offsets.push(bases.len());
            bases.extend(f.rho[0].bases().iter().map(|b| embed(b, i)));
        }
        let bases: Arc<[Poly]> = bases.into();
        let rho = factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let r = &f.rho[0];
                let mut exps = vec![0; bases.len()];
                exps[offsets[i]..offsets[i] + r.bases().len()].copy_from_slice(r.denominator_exps());
                RationalFn::new(embed(r.numerator(), i), exps, bases.clone()).expect("same ring")
            })
            .collect();
        let p = factors
            .iter()
            .enumerate()
            .fold(one(n), |acc, (i, f)| &acc * &embed(&f.p, i));
        let mut parameters = BTreeMap::new();
        for (i, f) in factors.iter().enumerate() {
            for (k, v) in &f.parameters {
                parameters.insert(format!("{k}{}", i + 1), v.clone());
            }
        }
        Ok(WeightFamily {
            name: format!(
                "product({})",
                factors
                    .iter()
                    .map(|f| f.name.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            kind: FamilyKind::Product {
                factors: factors.iter().map(|f| f.kind.clone()).collect(),
            },
            nvars: n,
            rho,
            p,
            parameters,
            factors,
        })
    }

    pub fn factors(&self) -> &[WeightFamily] {
        &self.factors
    }

    fn param(&self, k: &str) -> &Scalar {
        &self.parameters[k]
    }

    /// One-variable normalizing constant `c_m`.
    pub fn c1(&self, m: u32) -> Scalar {
        let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
        let two_m = int(2).pow(m as u64);
        match &self.kind {
            FamilyKind::Hermite => sign,
            FamilyKind::Laguerre { .. } => factorial(m).inv().expect("nonzero"),
            FamilyKind::Jacobi { .. } => &sign / &(&two_m * &factorial(m)),
            FamilyKind::Gegenbauer { .. } => {
                let l = self.param("lambda") + &Scalar::ratio(Q, 1, 2);
                &sign / &(&two_m * &pochhammer(&l, m))
            }
            _ => panic!("c1 on a multivariate family"),
        }
    }

    /// Constant multiplying the `s^m` coefficient `V_m`.
    pub fn c_multi(&self, m: &[u32]) -> Scalar {
        let total: u32 = m.iter().sum();
        let mfact = m.iter().fold(int(1), |acc, &k| &acc * &factorial(k));
        match &self.kind {
            FamilyKind::Ball { .. } => {
                let mu = self.param("mu");
                let sign = if total.is_multiple_of(2) { int(1) } else { int(-1) };
                let num = &sign * &pochhammer(&(mu * &int(2)), total);
                let den = &(&int(2).pow(total as u64) * &factorial(total))
                    * &pochhammer(&(mu + &Scalar::ratio(Q, 1, 2)), total);
                &num / &den
            }
            FamilyKind::Simplex { .. } => &mfact / &factorial(total),
            FamilyKind::Product { .. } => {
                let cm = self
                    .factors
                    .iter()
                    .zip(m)
                    .fold(int(1), |acc, (f, &k)| &acc * &f.c1(k));
                &(&cm * &mfact) / &factorial(total)
            }
            _ => self.c1(total),
        }
    }

    /// Description of the symbolic unit the moments are multiples of.
    pub fn unit(&self) -> String {
        match &self.kind {
            FamilyKind::Hermite => "sqrt(pi)".into(),
            FamilyKind::Laguerre { alpha } => format!("Gamma({alpha} + 1)"),
            FamilyKind::Jacobi { alpha, beta } => {
                format!("2^({alpha} + {beta} + 1) B({alpha} + 1, {beta} + 1)")
            }
            FamilyKind::Gegenbauer { lambda } => {
                format!("2^(2*{lambda}) B({lambda} + 1/2, {lambda} + 1/2)")
            }
            FamilyKind::Ball { mu } => {
                format!(
                    "pi^({}/2) Gamma({mu} + 1/2) / Gamma({}/2 + {mu} + 1/2)",
                    self.nvars, self.nvars
                )
            }
            FamilyKind::Simplex { kappa } => format!("Dirichlet({})", kappa.join(", ")),
            FamilyKind::Product { .. } => self
                .factors
                .iter()
                .map(|f| format!("[{}]", f.unit()))
                .collect::<Vec<_>>()
                .join(" * "),
        }
    }

    /// `int x^k w dx` divided by the unit.
    pub fn moment(&self, k: &[i32]) -> Scalar {
        let k: Vec<u32> = k.iter().map(|&e| e as u32).collect();
        match &self.kind {
            FamilyKind::Hermite => {
                if k[0] % 2 == 1 {
                    return int(0);
                }
                // Gamma(j + 1/2) / Gamma(1/2) = (1/2)_j
                pochhammer(&Scalar::ratio(Q, 1, 2), k[0] / 2)
            }
            FamilyKind::Laguerre { .. } => pochhammer(&(self.param("alpha") + &int(1)), k[0]),
            FamilyKind::Jacobi { .. } => jacobi_moment(self.param("alpha"), self.param("beta"), k[0]),
            FamilyKind::Gegenbauer { .. } => {
                let a = self.param("lambda") - &Scalar::ratio(Q, 1, 2);
                jacobi_moment(&a, &a, k[0])
            }
            FamilyKind::Ball { .. } => {
                if k.iter().any(|e| e % 2 == 1) {
                    return int(0);
                }
                let half = Scalar::ratio(Q, 1, 2);
                let num = k.iter().fold(int(1), |acc, &e| &acc * &pochhammer(&half, e / 2));
                let c = &(&Scalar::ratio(Q, self.nvars as i64, 2) + self.param("mu")) + &half;
                &num / &pochhammer(&c, k.iter().sum::<u32>() / 2)
            }
            FamilyKind::Simplex { .. } => {
                let n = self.nvars;
                let kap: Vec<&Scalar> = (1..=n + 1).map(|i| self.param(&format!("kappa{i}"))).collect();
                let num = (0..n).fold(int(1), |acc, i| &acc * &pochhammer(&(kap[i] + &int(1)), k[i]));
                let total = kap[..n].iter().fold(int(0), |acc, x| &acc + *x);
                let c = &(&(&total + &int(n as i64)) + kap[n]) + &Scalar::ratio(Q, 1, 2);
                &num / &pochhammer(&c, k.iter().sum())
            }
            FamilyKind::Product { .. } => self
                .factors
                .iter()
                .zip(&k)
                .fold(int(1), |acc, (f, &e)| &acc * &f.moment(&[e as i32])),
        }
    }

    /// Applies the moment functional to a polynomial.
    pub fn integrate(&self, f: &Poly) -> Scalar {
        f.terms()
            .iter()
            .fold(int(0), |acc, (m, c)| &acc + &(c * &self.moment(m.exps())))
    }

    /// Index vectors are per variable; one-variable families use length 1.
    pub fn check_index(&self, m: &[u32]) -> Result<()> {
        if m.len() != self.nvars {
            return Err(Error::Shape(format!(
                "index has {} entries, family has {} variables",
                m.len(),
                self.nvars
            )));
        }
        Ok(())
    }
}

/// `int_{-1}^{1} x^k (1-x)^a (1+x)^b dx` over the same integral with `k = 0`,
/// by `x^k = sum_i C(k,i) (-1)^i (1-x)^i`.
fn jacobi_moment(a: &Scalar, b: &Scalar, k: u32) -> Scalar {
    let ab2 = &(a + b) + &int(2);
    (0..=k).fold(int(0), |acc, i| {
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        let t = &(&(&sign * &binomial(k, i)) * &int(2).pow(i as u64)) * &pochhammer(&(a + &int(1)), i);
        &acc + &(&t / &pochhammer(&ab2, i))
    })
}

pub(crate) fn is_positive(s: &Scalar) -> bool {
    q(s) > BigRational::zero()
}

pub(crate) fn monomial_power(m: &[u32]) -> Poly {
    let e: Vec<i32> = m.iter().map(|&k| k as i32).collect();
    Poly::monomial(Monomial::new(&e), int(1))
}
