//! Exact cyclotomic scalars Q(ζ_n), represented as polynomials in ζ modulo
//! the n-th cyclotomic polynomial. Needed for scalar group actions of order
//! n ≥ 3, which have no rational matrix realization.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Zero};

use crate::poly::{FreePoly, Scalar};

fn rzero() -> BigRational {
    num::Zero::zero()
}

fn rone() -> BigRational {
    num::One::one()
}

fn ris_zero(q: &BigRational) -> bool {
    num::Zero::is_zero(q)
}

/// Coefficients of the n-th cyclotomic polynomial, ascending, monic.
/// Computed by exact division: Φ_n = (x^n − 1) / Π_{d|n, d<n} Φ_d.
pub fn cyclotomic(n: u32) -> Arc<Vec<BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = memo.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1);
    let mut num = vec![BigInt::from(0); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::from(1);
    let mut quotient = num;
    for d in 1..n {
        if n % d == 0 {
            quotient = poly_div_exact(&quotient, &cyclotomic(d));
        }
    }
    let out = Arc::new(quotient);
    memo.lock().unwrap().insert(n, out.clone());
    out
}

/// Exact division of integer polynomials (denominator monic).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::from(0); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        q[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
    q
}

/// Element of Q(ζ_n): coefficients of 1, ζ, ζ², … reduced modulo Φ_n.
/// `n == 0` marks a plain rational constant, compatible with any order.
#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn rational(q: BigRational) -> Self {
        let coeffs = if ris_zero(&q) { Vec::new() } else { vec![q] };
        Cyclo { n: 0, coeffs }
    }

    /// The primitive root of unity ζ_n.
    pub fn zeta(n: u32) -> Self {
        assert!(n >= 1);
        let coeffs = reduce(n, vec![rzero(), rone()]);
        Cyclo { n, coeffs }.normalized()
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(rzero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Cyclo::rational(rone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().map_or(false, Zero::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.len() <= 1 {
            self.n = 0;
        }
        self
    }

    fn unified_order(&self, other: &Self) -> u32 {
        match (self.n, other.n) {
            (0, n) | (n, 0) => n,
            (a, b) => {
                assert_eq!(a, b, "mixed cyclotomic orders {a} and {b}");
                a
            }
        }
    }
}

/// Reduce a coefficient vector modulo Φ_n.
fn reduce(n: u32, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    if n == 0 {
        return coeffs;
    }
    let phi = cyclotomic(n);
    let d = phi.len() - 1;
    while coeffs.len() > d {
        let c = coeffs.pop().unwrap();
        if ris_zero(&c) {
            continue;
        }
        let k = coeffs.len() - d;
        for (i, p) in phi.iter().take(d).enumerate() {
            coeffs[k + i] -= &c * BigRational::from_integer(p.clone());
        }
    }
    coeffs
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        // Both sides are kept normalized: constants always have n == 0.
        self.coeffs == other.coeffs && (self.n == other.n || self.coeffs.len() <= 1)
    }
}

impl Eq for Cyclo {}

impl Scalar for Cyclo {
    fn zero() -> Self {
        Cyclo::rational(rzero())
    }

    fn one() -> Self {
        Cyclo::rational(rone())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let n = self.unified_order(other);
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), rzero());
        }
        for (c, o) in coeffs.iter_mut().zip(other.coeffs.iter()) {
            *c += o;
        }
        Cyclo { n, coeffs }.normalized()
    }

    fn neg_ref(&self) -> Self {
        Cyclo {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.unified_order(other);
        let mut coeffs =
            vec![rzero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ris_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Cyclo {
            n,
            coeffs: reduce(n, coeffs),
        }
        .normalized()
    }

    fn from_rational(q: &BigRational) -> Self {
        Cyclo::rational(q.clone())
    }
}

/// Lift a rational polynomial into cyclotomic coefficients.
pub fn poly_to_cyclo(p: &FreePoly) -> FreePoly<Cyclo> {
    let mut out = FreePoly::zero();
    for (t, c) in p.terms() {
        out.add_term(t.clone(), Cyclo::rational(c.clone()));
    }
    out
}

/// Project back to rational coefficients; None if any coefficient is
/// irrational.
pub fn poly_to_rational(p: &FreePoly<Cyclo>) -> Option<FreePoly> {
    let mut out = FreePoly::zero();
    for (t, c) in p.terms() {
        out.add_term(t.clone(), c.to_rational()?);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic(3), ints(&[1, 1, 1]));
        assert_eq!(*cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn zeta_orders() {
        for n in 1u32..=7 {
            let z = Cyclo::zeta(n);
            assert_eq!(z.pow(n), Cyclo::one(), "zeta_{n}^{n}");
            for k in 1..n {
                assert_ne!(z.pow(k), Cyclo::one(), "zeta_{n}^{k}");
            }
        }
        assert_eq!(Cyclo::zeta(1), Cyclo::one());
        assert_eq!(Cyclo::zeta(2), Cyclo::rational(rat(-1)));
    }

    #[test]
    fn zeta3_sums_to_minus_one() {
        let z = Cyclo::zeta(3);
        let sum = z.add_ref(&z.pow(2));
        assert_eq!(sum.to_rational(), Some(rat(-1)));
        assert_eq!(z.to_rational(), None);
    }

    #[test]
    fn field_arithmetic() {
        let z = Cyclo::zeta(5);
        let a = z.mul_ref(&z).add_ref(&Cyclo::rational(ratio(1, 2)));
        let b = z.pow(4).neg_ref();
        assert_eq!(a.add_ref(&b).add_ref(&b.neg_ref()), a);
        assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        // (1 + ζ + ζ² + ζ³ + ζ⁴) = 0 in Q(ζ_5).
        let mut s = Cyclo::one();
        for k in 1..5 {
            s = s.add_ref(&z.pow(k));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn poly_round_trip() {
        let p = crate::parser::parse("3/2*x*y - z", 3).unwrap();
        let lifted = poly_to_cyclo(&p);
        assert_eq!(poly_to_rational(&lifted), Some(p));
        let zp = lifted.scale(&Cyclo::zeta(3));
        assert_eq!(poly_to_rational(&zp), None);
    }
}
