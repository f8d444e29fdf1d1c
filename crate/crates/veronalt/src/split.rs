//! Split-octonion backend: an independent zero test for rank-≤3 alternative
//! elements via the embedding into (free associative algebra) ⊕ (generic
//! octonions).
//!
//! Octonions are realized as Zorn vector matrices [[a, v], [w, b]] with
//! a, b scalars and v, w in Q³:
//!
//! ```text
//! [[a,v],[w,b]] · [[a',v'],[w',b']] =
//!   [[a a' + v·w',  a v' + b' v − w×w'],
//!    [a' w + b w' + v×v',  b b' + w·v']]
//! ```
//!
//! Coordinates are stored in the order [a, v1, v2, v3, w1, w2, w3, b].
//! Generic elements X, Y, Z use 8 fresh scalar indeterminates each.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{MonomialBasis, MultiDegree, TreeMonomial};
use crate::poly::FreePoly;

/// Scalar indeterminates: 8 coordinates for each of the three generic
/// octonions.
pub const NVARS: usize = 24;

type Expo = [u8; NVARS];

/// Exact multivariate polynomial in the 24 scalar indeterminates.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SPoly {
    terms: BTreeMap<Expo, BigRational>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0u8; NVARS], c);
        }
        SPoly { terms }
    }

    pub fn one() -> Self {
        SPoly::constant(BigRational::one())
    }

    pub fn var(i: usize) -> Self {
        assert!(i < NVARS);
        let mut e = [0u8; NVARS];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        SPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Expo, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SPoly) -> SPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &SPoly) -> SPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &(-c));
        }
        out
    }

    pub fn neg(&self) -> SPoly {
        SPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> SPoly {
        if k.is_zero() {
            return SPoly::zero();
        }
        SPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        let mut out = SPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for (slot, add) in e.iter_mut().zip(e2.iter()) {
                    *slot = slot.checked_add(*add).expect("exponent overflow");
                }
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    /// Coefficients paired with flat column keys, for rank computations.
    fn entries(&self) -> impl Iterator<Item = (&Expo, &BigRational)> {
        self.terms.iter()
    }
}

fn dot(u: &[SPoly; 3], v: &[SPoly; 3]) -> SPoly {
    u[0].mul(&v[0]).add(&u[1].mul(&v[1])).add(&u[2].mul(&v[2]))
}

fn cross(u: &[SPoly; 3], v: &[SPoly; 3]) -> [SPoly; 3] {
    [
        u[1].mul(&v[2]).sub(&u[2].mul(&v[1])),
        u[2].mul(&v[0]).sub(&u[0].mul(&v[2])),
        u[0].mul(&v[1]).sub(&u[1].mul(&v[0])),
    ]
}

/// Split octonion as a Zorn vector matrix; coordinates [a, v, w, b].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Octonion {
    pub a: SPoly,
    pub v: [SPoly; 3],
    pub w: [SPoly; 3],
    pub b: SPoly,
}

impl Octonion {
    pub fn zero() -> Self {
        Octonion {
            a: SPoly::zero(),
            v: [SPoly::zero(), SPoly::zero(), SPoly::zero()],
            w: [SPoly::zero(), SPoly::zero(), SPoly::zero()],
            b: SPoly::zero(),
        }
    }

    pub fn unit() -> Self {
        let mut u = Octonion::zero();
        u.a = SPoly::one();
        u.b = SPoly::one();
        u
    }

    /// Scalar multiple of the unit.
    pub fn scalar(s: &SPoly) -> Self {
        let mut u = Octonion::zero();
        u.a = s.clone();
        u.b = s.clone();
        u
    }

    /// The generic octonion X (k=0), Y (k=1) or Z (k=2): eight fresh
    /// indeterminate coordinates.
    pub fn generic(k: usize) -> Self {
        assert!(k < 3);
        let base = 8 * k;
        Octonion {
            a: SPoly::var(base),
            v: [
                SPoly::var(base + 1),
                SPoly::var(base + 2),
                SPoly::var(base + 3),
            ],
            w: [
                SPoly::var(base + 4),
                SPoly::var(base + 5),
                SPoly::var(base + 6),
            ],
            b: SPoly::var(base + 7),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
            && self.b.is_zero()
            && self.v.iter().all(SPoly::is_zero)
            && self.w.iter().all(SPoly::is_zero)
    }

    pub fn coords(&self) -> [&SPoly; 8] {
        [
            &self.a, &self.v[0], &self.v[1], &self.v[2], &self.w[0], &self.w[1], &self.w[2],
            &self.b,
        ]
    }

    pub fn add(&self, o: &Octonion) -> Octonion {
        Octonion {
            a: self.a.add(&o.a),
            v: [
                self.v[0].add(&o.v[0]),
                self.v[1].add(&o.v[1]),
                self.v[2].add(&o.v[2]),
            ],
            w: [
                self.w[0].add(&o.w[0]),
                self.w[1].add(&o.w[1]),
                self.w[2].add(&o.w[2]),
            ],
            b: self.b.add(&o.b),
        }
    }

    pub fn sub(&self, o: &Octonion) -> Octonion {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Octonion {
        Octonion {
            a: self.a.neg(),
            v: [self.v[0].neg(), self.v[1].neg(), self.v[2].neg()],
            w: [self.w[0].neg(), self.w[1].neg(), self.w[2].neg()],
            b: self.b.neg(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Octonion {
        Octonion {
            a: self.a.scale(k),
            v: [self.v[0].scale(k), self.v[1].scale(k), self.v[2].scale(k)],
            w: [self.w[0].scale(k), self.w[1].scale(k), self.w[2].scale(k)],
            b: self.b.scale(k),
        }
    }

    pub fn conj(&self) -> Octonion {
        Octonion {
            a: self.b.clone(),
            v: [self.v[0].neg(), self.v[1].neg(), self.v[2].neg()],
            w: [self.w[0].neg(), self.w[1].neg(), self.w[2].neg()],
            b: self.a.clone(),
        }
    }

    /// Trace t(a) = a + ā, a scalar.
    pub fn trace(&self) -> SPoly {
        self.a.add(&self.b)
    }

    /// Norm n(a) = a·ā, a scalar.
    pub fn norm(&self) -> SPoly {
        self.a.mul(&self.b).sub(&dot(&self.v, &self.w))
    }
}

pub fn octonion_mul(p: &Octonion, q: &Octonion) -> Octonion {
    let vv = cross(&p.v, &q.v);
    let ww = cross(&p.w, &q.w);
    Octonion {
        a: p.a.mul(&q.a).add(&dot(&p.v, &q.w)),
        v: [
            p.a.mul(&q.v[0]).add(&q.b.mul(&p.v[0])).sub(&ww[0]),
            p.a.mul(&q.v[1]).add(&q.b.mul(&p.v[1])).sub(&ww[1]),
            p.a.mul(&q.v[2]).add(&q.b.mul(&p.v[2])).sub(&ww[2]),
        ],
        w: [
            q.a.mul(&p.w[0]).add(&p.b.mul(&q.w[0])).add(&vv[0]),
            q.a.mul(&p.w[1]).add(&p.b.mul(&q.w[1])).add(&vv[1]),
            q.a.mul(&p.w[2]).add(&p.b.mul(&q.w[2])).add(&vv[2]),
        ],
        b: p.b.mul(&q.b).add(&dot(&p.w, &q.v)),
    }
}

pub fn octonion_associator(a: &Octonion, b: &Octonion, c: &Octonion) -> Octonion {
    octonion_mul(&octonion_mul(a, b), c).sub(&octonion_mul(a, &octonion_mul(b, c)))
}

/// Image of a rank-≤3 element under the embedding x ↦ x + X, etc.:
/// the associative word part together with the generic-octonion evaluation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitRep {
    /// Associative words (generator indices, left to right) with coefficients.
    pub assoc: BTreeMap<Vec<usize>, BigRational>,
    pub oct: Octonion,
}

impl SplitRep {
    pub fn is_zero(&self) -> bool {
        self.assoc.is_empty() && self.oct.is_zero()
    }
}

fn check_rank(p: &FreePoly) -> Result<()> {
    if p.max_generator().map_or(false, |g| g > 2) {
        return Err(Error::SplitRankTooLarge);
    }
    Ok(())
}

fn eval_tree(t: &TreeMonomial, memo: &mut HashMap<TreeMonomial, Octonion>) -> Octonion {
    if let Some(o) = memo.get(t) {
        return o.clone();
    }
    let out = match t {
        TreeMonomial::Leaf(g) => Octonion::generic(g.0),
        TreeMonomial::Node(l, r) => {
            let lo = eval_tree(l.as_ref(), memo);
            let ro = eval_tree(r.as_ref(), memo);
            octonion_mul(&lo, &ro)
        }
    };
    memo.insert(t.clone(), out.clone());
    out
}

pub fn eval_split(p: &FreePoly) -> Result<SplitRep> {
    check_rank(p)?;
    let mut assoc: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    let mut oct = Octonion::zero();
    let mut memo = HashMap::new();
    for (t, c) in p.terms() {
        let word = t.word();
        let entry = assoc.entry(word).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            let word = t.word();
            assoc.remove(&word);
        }
        oct = oct.add(&eval_tree(t, &mut memo).scale(c));
    }
    Ok(SplitRep { assoc, oct })
}

/// Zero test for rank-≤3 alternative elements: true iff both the
/// associative part and the generic-octonion part vanish.
pub fn is_zero_split(p: &FreePoly) -> Result<bool> {
    Ok(eval_split(p)?.is_zero())
}

/// Residual of (z0+z1)² − 2 z0 (z0+z1) − (z1² − z0²); zero whenever z0, z1
/// are central (scalar multiples of the unit).
pub fn even_odd_center_identity(z0: &Octonion, z1: &Octonion) -> Octonion {
    let z = z0.add(z1);
    let sq = octonion_mul(&z, &z);
    let two = BigRational::from_integer(BigInt::from(2));
    let mid = octonion_mul(z0, &z).scale(&two);
    let rest = octonion_mul(z1, z1).sub(&octonion_mul(z0, z0));
    sq.sub(&mid).sub(&rest)
}

/// Rank of the restriction of `eval_split` to the monomial basis of the
/// multidegree-`m` component (rank ≤ 3). Equals the codimension of its
/// kernel, for cross-checking against the T-ideal engine's quotient_dim.
pub fn split_component_rank(m: &MultiDegree) -> Result<usize> {
    if m.rank() > 3 {
        return Err(Error::SplitRankTooLarge);
    }
    let basis = MonomialBasis::new(m.rank(), m)?;
    let images: Vec<SplitRep> = basis
        .monomials
        .iter()
        .map(|t| eval_split(&FreePoly::monomial(t.clone())))
        .collect::<Result<_>>()?;
    // Rank via the transpose: every output coordinate (word or octonion
    // monomial) is one row over the monomial columns.
    #[derive(PartialEq, Eq, PartialOrd, Ord, Hash, Clone)]
    enum Key {
        Word(Vec<usize>),
        Oct(usize, Expo),
    }
    let mut rows: HashMap<Key, Vec<(u32, BigRational)>> = HashMap::new();
    for (j, rep) in images.iter().enumerate() {
        for (word, c) in &rep.assoc {
            rows.entry(Key::Word(word.clone()))
                .or_default()
                .push((j as u32, c.clone()));
        }
        for (k, coord) in rep.oct.coords().into_iter().enumerate() {
            for (e, c) in coord.entries() {
                rows.entry(Key::Oct(k, *e))
                    .or_default()
                    .push((j as u32, c.clone()));
            }
        }
    }
    let mut elim = crate::linalg::Eliminator::new(basis.len());
    let mut keyed: Vec<(Key, Vec<(u32, BigRational)>)> = rows.into_iter().collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, row) in keyed {
        let entries = row
            .into_iter()
            .map(|(c, v)| {
                debug_assert!(v.denom().is_one());
                (c, v.numer().clone())
            })
            .collect();
        elim.insert_big(entries);
    }
    Ok(elim.rank())
}
