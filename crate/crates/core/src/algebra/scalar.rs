use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;

/// An exact element of one of the supported fields.
///
/// Values are kept in canonical form: rationals are reduced with a positive
/// denominator, Gaussian values are a pair of reduced rationals and prime-field
/// values are residues in `[0, p)`. Arithmetic between different fields panics;
/// containers such as [`Matrix`](super::Matrix) and [`Poly`](crate::poly::Poly)
/// validate fields up front and report [`Error::FieldMismatch`](crate::Error).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Qi(BigRational, BigRational),
    Fp { v: u32, p: u32 },
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn bigint_mod(n: &BigInt, p: u32) -> u32 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u32().expect("residue fits in u32")
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Tonelli-Shanks square root in `F_p`.
fn fp_sqrt(a: u32, p: u32) -> Option<u32> {
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, ((p - 1) / 2) as u64, p) != 1 {
        return None;
    }
    let mut q = (p - 1) as u64;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, ((p - 1) / 2) as u64, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, v: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(v))
    }

    pub fn from_bigint(field: Field, v: &BigInt) -> Scalar {
        match field {
            Field::Rationals => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::GaussianRationals => Scalar::Qi(BigRational::from_integer(v.clone()), BigRational::zero()),
            Field::PrimeField(p) => Scalar::Fp {
                v: bigint_mod(v, p),
                p,
            },
        }
    }

    /// Embeds a rational number. Returns `None` in `F_p` when the denominator
    /// vanishes modulo `p`.
    pub fn from_rational(field: Field, q: &BigRational) -> Option<Scalar> {
        match field {
            Field::Rationals => Some(Scalar::Q(q.clone())),
            Field::GaussianRationals => Some(Scalar::Qi(q.clone(), BigRational::zero())),
            Field::PrimeField(p) => {
                let d = bigint_mod(q.denom(), p);
                if d == 0 {
                    return None;
                }
                let n = bigint_mod(q.numer(), p);
                Some(Scalar::Fp {
                    v: mul_mod(n, pow_mod(d, (p - 2) as u64, p), p),
                    p,
                })
            }
        }
    }

    pub fn ratio(field: Field, n: i64, d: i64) -> Scalar {
        Scalar::from_rational(field, &BigRational::new(n.into(), d.into()))
            .expect("denominator invertible in field")
    }

    /// `re + im*i` in the Gaussian rationals.
    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        Scalar::Qi(re, im)
    }

    pub fn gaussian_int(re: i64, im: i64) -> Scalar {
        Scalar::Qi(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn imag_unit() -> Scalar {
        Scalar::gaussian_int(0, 1)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Qi(..) => Field::GaussianRationals,
            Scalar::Fp { p, .. } => Field::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Qi(a, b) => a.is_zero() && b.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Qi(a, b) => a.is_one() && b.is_zero(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Real part for `Q`/`Qi` values; `None` for prime-field residues.
    pub fn re(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(q) => Some(q.clone()),
            Scalar::Qi(a, _) => Some(a.clone()),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn im(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(_) => Some(BigRational::zero()),
            Scalar::Qi(_, b) => Some(b.clone()),
            Scalar::Fp { .. } => None,
        }
    }

    /// The value as a rational number when it has no imaginary part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(q) => Some(q.clone()),
            Scalar::Qi(a, b) if b.is_zero() => Some(a.clone()),
            _ => None,
        }
    }

    /// True for strictly positive rational values (imaginary part zero).
    pub fn is_positive_real(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_positive())
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Qi(a, b) => {
                let n = a * a + b * b;
                Scalar::Qi(a / &n, -(b / &n))
            }
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v, (*p - 2) as u64, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate; identity outside the Gaussian rationals.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Qi(a, b) => Scalar::Qi(a.clone(), -b.clone()),
            other => other.clone(),
        }
    }

    /// Exact square root inside the field, when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(q) => rational_sqrt(q).map(Scalar::Q),
            Scalar::Qi(re, im) => {
                if im.is_zero() {
                    if let Some(r) = rational_sqrt(re) {
                        return Some(Scalar::Qi(r, BigRational::zero()));
                    }
                    return rational_sqrt(&-re.clone()).map(|r| Scalar::Qi(BigRational::zero(), r));
                }
                let modulus = rational_sqrt(&(re * re + im * im))?;
                let two = BigRational::from_integer(2.into());
                let a = rational_sqrt(&((re + &modulus) / &two))?;
                if a.is_zero() {
                    return None;
                }
                let b = im / (&two * &a);
                let cand = Scalar::Qi(a, b);
                (&cand * &cand == *self).then_some(cand)
            }
            Scalar::Fp { v, p } => fp_sqrt(*v, *p).map(|r| Scalar::Fp { v: r, p: *p }),
        }
    }

    /// Text form used inside JSON payloads: `a/b`, or `a/b+c/d i` for
    /// Gaussian values with a nonzero imaginary part.
    pub fn to_plain_string(&self) -> String {
        match self {
            Scalar::Q(q) => fmt_rational(q),
            Scalar::Qi(a, b) if b.is_zero() => fmt_rational(a),
            Scalar::Qi(a, b) => {
                let sign = if b.is_negative() { '-' } else { '+' };
                format!("{}{}{} i", fmt_rational(a), sign, fmt_rational(&b.abs()))
            }
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }

    /// Maps a Gaussian rational into `F_p` by sending `i` to `root`, a square
    /// root of -1 modulo `p`.
    pub fn reduce_mod(&self, p: u32, root: Option<u32>) -> Option<Scalar> {
        let f = Field::PrimeField(p);
        match self {
            Scalar::Q(q) => Scalar::from_rational(f, q),
            Scalar::Qi(a, b) => {
                let ra = Scalar::from_rational(f, a)?;
                if b.is_zero() {
                    return Some(ra);
                }
                let rb = Scalar::from_rational(f, b)?;
                let i = Scalar::from_i64(f, root? as i64);
                Some(&ra + &(&rb * &i))
            }
            Scalar::Fp { p: q, .. } if *q == p => Some(self.clone()),
            Scalar::Fp { .. } => None,
        }
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Qi(a, b), Scalar::Qi(c, d)) => Scalar::Qi(a + c, b + d),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a.clone()),
            Scalar::Qi(a, b) => Scalar::Qi(-a.clone(), -b.clone()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (*p - *v) % *p,
                p: *p,
            },
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Qi(a, b), Scalar::Qi(c, d)) => Scalar::Qi(a * c - b * d, a * d + b * c),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(Field::Rationals, n, d)
    }

    #[test]
    fn canonical_rationals() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-1, -2), q(1, 2));
        assert_eq!((&q(1, 3) + &q(2, 3)), Scalar::one(Field::Rationals));
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = Scalar::imag_unit();
        assert_eq!(&i * &i, Scalar::from_i64(Field::GaussianRationals, -1));
        let z = Scalar::gaussian_int(3, 4);
        assert_eq!(&z * &z.inv().unwrap(), Scalar::one(Field::GaussianRationals));
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(7).unwrap();
        for v in 1..7 {
            let s = Scalar::from_i64(f, v);
            assert!((&s * &s.inv().unwrap()).is_one());
        }
        assert_eq!(Scalar::from_i64(f, -1), Scalar::from_i64(f, 6));
        assert_eq!(
            Scalar::from_rational(f, &BigRational::new(1.into(), 7.into())),
            None
        );
    }

    #[test]
    fn square_roots() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        let m1 = Scalar::from_i64(Field::GaussianRationals, -1);
        let r = m1.sqrt().unwrap();
        assert_eq!(&r * &r, m1);
        // 2i = (1+i)^2
        let two_i = Scalar::gaussian_int(0, 2);
        let r = two_i.sqrt().unwrap();
        assert_eq!(&r * &r, two_i);
        assert_eq!(Scalar::from_i64(Field::GaussianRationals, 2).sqrt(), None);
        let f = Field::prime(13).unwrap();
        for v in 0..13 {
            let s = Scalar::from_i64(f, v);
            if let Some(r) = s.sqrt() {
                assert_eq!(&r * &r, s);
            }
        }
        assert!(Scalar::from_i64(f, 2).sqrt().is_none());
    }

    #[test]
    fn plain_text() {
        assert_eq!(q(-3, 2).to_plain_string(), "-3/2");
        let z = Scalar::gaussian(
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        );
        assert_eq!(z.to_plain_string(), "1/2-3/4 i");
    }

    #[test]
    fn reduction_mod_p() {
        // 5 = (2+i)(2-i); 2 is a square root of -1 mod 5
        let z = Scalar::gaussian_int(2, 1);
        assert!(!z.reduce_mod(5, Some(2)).unwrap().is_one());
        assert!(z.reduce_mod(5, Some(3)).unwrap().is_zero());
    }
}
