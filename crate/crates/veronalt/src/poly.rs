//! Exact-coefficient polynomials in the free nonassociative algebra:
//! linear combinations of tree monomials with scalar coefficients.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Generator, MultiDegree, TreeMonomial};

/// Coefficient ring. Implemented for `BigRational` and for cyclotomic
/// rationals (used by finite group actions of non-rational scalar type).
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn from_rational(q: &BigRational) -> Self;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p/q` rendering of a rational (plain integer when q = 1).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A finite linear combination of tree monomials. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreePoly<S: Scalar = BigRational> {
    terms: BTreeMap<TreeMonomial, S>,
}

impl<S: Scalar> Default for FreePoly<S> {
    fn default() -> Self {
        FreePoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> FreePoly<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(t: TreeMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(t, S::one());
        FreePoly { terms }
    }

    pub fn generator(index: usize) -> Self {
        Self::monomial(TreeMonomial::leaf(Generator(index)))
    }

    pub fn term(t: TreeMonomial, coeff: S) -> Self {
        let mut p = Self::zero();
        p.add_term(t, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TreeMonomial, &S)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, t: TreeMonomial, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FreePoly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.mul_ref(k));
        }
        out
    }

    /// Bilinear extension of tree grafting.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(TreeMonomial::node(a.clone(), b.clone()), ca.mul_ref(cb));
            }
        }
        out
    }

    /// Largest generator index occurring, or `None` for the zero polynomial.
    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().map(|t| t.max_generator()).max()
    }

    /// Decomposition into multihomogeneous components, keyed by multidegree.
    pub fn components(&self, rank: usize) -> BTreeMap<MultiDegree, FreePoly<S>> {
        let mut out: BTreeMap<MultiDegree, FreePoly<S>> = BTreeMap::new();
        for (t, c) in &self.terms {
            out.entry(t.multidegree(rank))
                .or_default()
                .add_term(t.clone(), c.clone());
        }
        out
    }

    /// The common multidegree of all terms, if the polynomial is
    /// multihomogeneous and nonzero.
    pub fn multidegree(&self, rank: usize) -> Option<MultiDegree> {
        let mut iter = self.terms.keys();
        let first = iter.next()?.multidegree(rank);
        for t in iter {
            if t.multidegree(rank) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Homomorphic image under a substitution of generators.
    pub fn substitute(&self, s: &Substitution<S>) -> Result<FreePoly<S>> {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            let image = s.apply_monomial(t)?;
            for (u, cu) in &image.terms {
                out.add_term(u.clone(), c.mul_ref(cu));
            }
        }
        Ok(out)
    }
}

impl FreePoly<BigRational> {
    /// Scale by the common denominator and strip integer content; returns the
    /// primitive integer coefficient vector alongside monomials.
    pub fn primitive_integer_terms(&self) -> Vec<(TreeMonomial, BigInt)> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut ints: Vec<(TreeMonomial, BigInt)> = self
            .terms
            .iter()
            .map(|(t, c)| (t.clone(), c.numer() * (&denom_lcm / c.denom())))
            .collect();
        let mut content = BigInt::zero();
        for (_, v) in &ints {
            content = num::integer::gcd(content, v.abs());
        }
        if !content.is_one() && !content.is_zero() {
            for (_, v) in &mut ints {
                *v = &*v / &content;
            }
        }
        ints
    }
}

/// A map from generators to polynomials (images indexed by generator).
#[derive(Clone, Debug)]
pub struct Substitution<S: Scalar = BigRational> {
    images: Vec<FreePoly<S>>,
}

impl<S: Scalar> Substitution<S> {
    pub fn new(images: Vec<FreePoly<S>>) -> Self {
        Substitution { images }
    }

    /// Substitution sending each generator to the given monomial.
    pub fn monomials(images: &[TreeMonomial]) -> Self {
        Substitution {
            images: images
                .iter()
                .map(|t| FreePoly::monomial(t.clone()))
                .collect(),
        }
    }

    pub fn image(&self, g: Generator) -> Result<&FreePoly<S>> {
        self.images
            .get(g.0)
            .ok_or(Error::UnmappedGenerator { index: g.0 })
    }

    fn apply_monomial(&self, t: &TreeMonomial) -> Result<FreePoly<S>> {
        match t {
            TreeMonomial::Leaf(g) => self.image(*g).cloned(),
            TreeMonomial::Node(l, r) => {
                let li = self.apply_monomial(l)?;
                let ri = self.apply_monomial(r)?;
                Ok(li.mul(&ri))
            }
        }
    }
}

/// Graft monomial images into a monomial's variable leaves. Fails if a leaf
/// index exceeds the image list.
pub fn graft_monomial(t: &TreeMonomial, images: &[TreeMonomial]) -> Result<TreeMonomial> {
    match t {
        TreeMonomial::Leaf(g) => images
            .get(g.0)
            .cloned()
            .ok_or(Error::UnmappedGenerator { index: g.0 }),
        TreeMonomial::Node(l, r) => Ok(TreeMonomial::node(
            graft_monomial(l, images)?,
            graft_monomial(r, images)?,
        )),
    }
}

/// (a,b,c) = (ab)c - a(bc)
pub fn associator<S: Scalar>(a: &FreePoly<S>, b: &FreePoly<S>, c: &FreePoly<S>) -> FreePoly<S> {
    a.mul(b).mul(c).sub(&a.mul(&b.mul(c)))
}

/// [a,b] = ab - ba
pub fn commutator<S: Scalar>(a: &FreePoly<S>, b: &FreePoly<S>) -> FreePoly<S> {
    a.mul(b).sub(&b.mul(a))
}

/// a∘b = ab + ba
pub fn circ<S: Scalar>(a: &FreePoly<S>, b: &FreePoly<S>) -> FreePoly<S> {
    a.mul(b).add(&b.mul(a))
}

/// Left-normed power ((a·a)·a)···a.
pub fn lpow<S: Scalar>(a: &FreePoly<S>, n: u32) -> Result<FreePoly<S>> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "lpow requires a positive exponent".to_string(),
        ));
    }
    let mut out = a.clone();
    for _ in 1..n {
        out = out.mul(a);
    }
    Ok(out)
}

/// m(a,b,c) - (ma,b,c) - (m,a,bc) + (m,ab,c) + (m,a,b)c.
/// Identically zero in the free nonassociative algebra.
pub fn teichmuller_check<S: Scalar>(
    m: &FreePoly<S>,
    a: &FreePoly<S>,
    b: &FreePoly<S>,
    c: &FreePoly<S>,
) -> FreePoly<S> {
    m.mul(&associator(a, b, c))
        .sub(&associator(&m.mul(a), b, c))
        .sub(&associator(m, a, &b.mul(c)))
        .add(&associator(m, &a.mul(b), c))
        .add(&associator(m, a, b).mul(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::enumerate_monomials;

    fn x() -> FreePoly {
        FreePoly::generator(0)
    }
    fn y() -> FreePoly {
        FreePoly::generator(1)
    }
    fn z() -> FreePoly {
        FreePoly::generator(2)
    }

    #[test]
    fn multiply_examples() {
        // (x + y) * x = x·x + y·x
        let p = x().add(&y()).mul(&x());
        assert_eq!(p.num_terms(), 2);
        // 0 * p = 0
        assert!(FreePoly::<BigRational>::zero().mul(&p).is_zero());
        // (x·y) * (x·y) is a single degree-4 monomial with coefficient 1
        let xy = x().mul(&y());
        let q = xy.mul(&xy);
        assert_eq!(q.num_terms(), 1);
        let (t, c) = q.terms().next().unwrap();
        assert_eq!(t.degree(), 4);
        assert_eq!(c, &rat(1));
    }

    #[test]
    fn substitute_examples() {
        // x·y - y·x under y -> x collapses
        let p = commutator(&x(), &y());
        let s = Substitution::new(vec![x(), x()]);
        assert!(p.substitute(&s).unwrap().is_zero());

        // (x,x,y) under y -> z·z
        let p = associator(&x(), &x(), &y());
        let s = Substitution::new(vec![x(), z().mul(&z()), z()]);
        let img = p.substitute(&s).unwrap();
        assert_eq!(img.num_terms(), 2);
        assert_eq!(img.multidegree(3), Some(MultiDegree::new(vec![2, 0, 2])));

        // x under x -> x + y
        let s = Substitution::new(vec![x().add(&y())]);
        assert_eq!(x().substitute(&s).unwrap(), x().add(&y()));
    }

    #[test]
    fn unmapped_generator_errors() {
        let s = Substitution::new(vec![x()]);
        assert!(matches!(
            y().substitute(&s),
            Err(Error::UnmappedGenerator { index: 1 })
        ));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(associator(&x(), &x(), &y()).num_terms(), 2);
        assert!(commutator(&x(), &x()).is_zero());
        let c = circ(&x(), &y());
        assert_eq!(c.num_terms(), 2);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let p = associator(&x(), &y(), &z());
        let q = commutator(&x(), &z());
        let s = Substitution::new(vec![y().mul(&z()), x(), z().add(&x())]);
        let lhs = p.mul(&q).substitute(&s).unwrap();
        let rhs = p.substitute(&s).unwrap().mul(&q.substitute(&s).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn teichmuller_simple_cases() {
        assert!(teichmuller_check(&x(), &y(), &z(), &x()).is_zero());
        assert!(teichmuller_check(&x(), &x(), &x(), &x()).is_zero());
        assert!(teichmuller_check(&x().mul(&y()), &z(), &x(), &y()).is_zero());
    }

    #[test]
    fn teichmuller_on_random_monomials() {
        // Deterministic sweep over monomial quadruples of total degree <= 8.
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        let pool: Vec<TreeMonomial> = (1..=2u32)
            .flat_map(|d| {
                MultiDegree::all_of_degree(2, d)
                    .into_iter()
                    .flat_map(|m| enumerate_monomials(2, &m).unwrap())
            })
            .collect();
        for _ in 0..200 {
            let pick = |rng: &mut StdRng| -> FreePoly {
                FreePoly::monomial(pool[rng.gen_range(0..pool.len())].clone())
            };
            let (m, a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
            assert!(teichmuller_check(&m, &a, &b, &c).is_zero());
        }
    }
}
