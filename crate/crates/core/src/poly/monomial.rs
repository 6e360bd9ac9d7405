use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector `z^b`. Entries may be negative for Laurent monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[i32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn new(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// `z_i` in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn exps_mut(&mut self) -> &mut [i32] {
        &mut self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True when every exponent is nonnegative.
    pub fn is_holomorphic(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self >= rhs`.
    pub fn dominates(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a >= b)
    }

    /// Appends `extra` zero exponents.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut m = self.0.clone();
        m.extend(std::iter::repeat_n(0, extra));
        Monomial(m)
    }

    /// Keeps the first `n` exponents.
    pub fn truncate(&self, n: usize) -> Monomial {
        Monomial(SmallVec::from_slice(&self.0[..n]))
    }

    /// Graded lexicographic order: total degree first, then lexicographic
    /// with `z1 > z2 > ...`.
    pub fn grlex_cmp(&self, rhs: &Monomial) -> Ordering {
        self.degree().cmp(&rhs.degree()).then_with(|| self.0.cmp(&rhs.0))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors in `nvars` variables of total degree exactly `d`, in
/// descending grlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left as i32;
            out.push(Monomial::new(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as i32;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 {
            vec![Monomial::one(0)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Monomial::new(&[2, 0]);
        let b = Monomial::new(&[1, 1]);
        let c = Monomial::new(&[0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::new(&[-1, 0]) < Monomial::one(2));
    }

    #[test]
    fn degree_enumeration() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::one(2)]);
    }
}
