//! Graded T-ideal components for a configurable identity set: spanning sets,
//! reduced echelon normalizers, quotient dimensions, identity membership.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, Zero};
use rayon::prelude::*;

use crate::cache;
use crate::error::{Error, Result};
use crate::linalg::{Eliminator, Row, Rref};
use crate::monomial::{MonomialBasis, MultiDegree, TreeMonomial};
use crate::parser::{format, parse};
use crate::poly::{graft_monomial, FreePoly, Substitution};

/// A named set of defining identities in abstract variables.
#[derive(Clone, Debug)]
pub struct IdentitySet {
    name: String,
    defining: Vec<FreePoly>,
}

impl IdentitySet {
    pub fn new(name: impl Into<String>, defining: Vec<FreePoly>) -> Self {
        IdentitySet {
            name: name.into(),
            defining,
        }
    }

    /// {(x,y,z)}
    pub fn associative() -> Self {
        Self::new("assoc", vec![parse("assoc(x,y,z)", 3).unwrap()])
    }

    /// {(x,x,y), (y,x,x)}
    pub fn alternative() -> Self {
        Self::new(
            "alt",
            vec![
                parse("assoc(x,x,y)", 2).unwrap(),
                parse("assoc(y,x,x)", 2).unwrap(),
            ],
        )
    }

    /// {(y,x,x)}
    pub fn right_alternative() -> Self {
        Self::new("ralt", vec![parse("assoc(y,x,x)", 2).unwrap()])
    }

    /// Empty identity set: the absolutely free nonassociative algebra.
    pub fn nonassoc_free() -> Self {
        Self::new("nonassoc", Vec::new())
    }

    /// One identity per line in the term grammar; `#` starts a comment line.
    pub fn from_file(name: impl Into<String>, path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_lines(name, &text)
    }

    pub fn from_lines(name: impl Into<String>, text: &str) -> Result<Self> {
        const MAX_VARS: usize = 16;
        let mut defining = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            defining.push(parse(line, MAX_VARS)?);
        }
        Ok(IdentitySet::new(name, defining))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn defining(&self) -> &[FreePoly] {
        &self.defining
    }

    /// Stable textual form, used as part of the on-disk cache key.
    pub fn canonical_text(&self) -> String {
        let mut s = self.name.clone();
        for f in &self.defining {
            s.push('\n');
            s.push_str(&format(f));
        }
        s
    }
}

/// Full polarization of a defining identity: one multilinear identity per
/// multihomogeneous component, with variables renumbered to 0..t-1.
pub fn multilinearize(f: &FreePoly) -> Vec<FreePoly> {
    let Some(maxg) = f.max_generator() else {
        return Vec::new();
    };
    let rank = maxg + 1;
    let mut out = Vec::new();
    for (_, comp) in f.components(rank) {
        out.push(relabel_contiguous(polarize_full(comp)));
    }
    out
}

fn polarize_full(mut f: FreePoly) -> FreePoly {
    loop {
        let rank = f.max_generator().map(|g| g + 1).unwrap_or(0);
        if rank == 0 {
            return f;
        }
        let m = f
            .multidegree(rank)
            .expect("polarization input must be multihomogeneous");
        let Some(i) = m.counts().iter().position(|&c| c >= 2) else {
            return f;
        };
        let fresh = rank;
        let images: Vec<FreePoly> = (0..rank)
            .map(|j| {
                if j == i {
                    FreePoly::generator(i).add(&FreePoly::generator(fresh))
                } else {
                    FreePoly::generator(j)
                }
            })
            .collect();
        let g = f.substitute(&Substitution::new(images)).unwrap();
        let target = {
            let mut counts = m.counts().to_vec();
            counts[i] -= 1;
            counts.push(1);
            MultiDegree::new(counts)
        };
        f = g
            .components(rank + 1)
            .remove(&target)
            .expect("polarized component must exist in characteristic zero");
    }
}

fn relabel_contiguous(f: FreePoly) -> FreePoly {
    let Some(maxg) = f.max_generator() else {
        return f;
    };
    let rank = maxg + 1;
    let m = f.multidegree(rank).expect("multilinear form");
    let used: Vec<usize> = (0..rank).filter(|&i| m.counts()[i] > 0).collect();
    let mut images = vec![FreePoly::zero(); rank];
    for (new, &old) in used.iter().enumerate() {
        images[old] = FreePoly::generator(new);
    }
    f.substitute(&Substitution::new(images)).unwrap()
}

pub fn default_degree_cap(rank: usize) -> u32 {
    match rank {
        0..=2 => 8,
        3 => 6,
        _ => 5,
    }
}

/// Image of a multihomogeneous element in the relatively free algebra,
/// expressed on the non-pivot monomials of its component.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalVector {
    pub multidegree: MultiDegree,
    pub coords: Vec<BigRational>,
}

impl NormalVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn zero(multidegree: MultiDegree, dim: usize) -> Self {
        NormalVector {
            multidegree,
            coords: vec![BigRational::zero(); dim],
        }
    }
}

/// Reduced echelon basis of one T-ideal component plus the normal-form map.
pub struct ComponentNormalizer {
    pub multidegree: MultiDegree,
    basis: Arc<MonomialBasis>,
    rref: Rref,
}

impl ComponentNormalizer {
    pub fn quotient_dim(&self) -> usize {
        self.rref.quotient_dim()
    }

    pub fn tideal_dim(&self) -> usize {
        self.rref.rank()
    }

    pub fn monomial_count(&self) -> usize {
        self.basis.len()
    }

    pub fn monomial_basis(&self) -> &MonomialBasis {
        &self.basis
    }

    /// The quotient's canonical monomial representatives.
    pub fn non_pivot_monomials(&self) -> Vec<TreeMonomial> {
        self.rref
            .non_pivot_cols
            .iter()
            .map(|&c| self.basis.monomials[c as usize].clone())
            .collect()
    }

    /// Echelon spanning set of the T-ideal component.
    pub fn tideal_basis(&self) -> Vec<FreePoly> {
        self.rref
            .basis_rows()
            .into_iter()
            .map(|row| {
                let mut p = FreePoly::zero();
                for (c, v) in row {
                    p.add_term(self.basis.monomials[c as usize].clone(), v);
                }
                p
            })
            .collect()
    }

    pub fn normal_form(&self, p: &FreePoly) -> Result<NormalVector> {
        if p.is_zero() {
            return Ok(NormalVector::zero(
                self.multidegree.clone(),
                self.quotient_dim(),
            ));
        }
        let rank = self.multidegree.rank();
        let got = p
            .multidegree(rank.max(p.max_generator().map(|g| g + 1).unwrap_or(0)))
            .ok_or_else(|| Error::InvalidInput("element is not multihomogeneous".into()))?;
        if got != self.multidegree {
            return Err(Error::MultiDegreeMismatch {
                expected: self.multidegree.clone(),
                got,
            });
        }
        let entries: Vec<(u32, BigRational)> = p
            .terms()
            .map(|(t, c)| {
                let idx = self
                    .basis
                    .index_of(t)
                    .expect("monomial outside component basis");
                (idx as u32, c.clone())
            })
            .collect();
        Ok(NormalVector {
            multidegree: self.multidegree.clone(),
            coords: self.rref.reduce(&entries),
        })
    }

    /// Canonical lift of a normal vector: the combination of non-pivot
    /// monomials with the given coordinates.
    pub fn lift(&self, v: &NormalVector) -> FreePoly {
        let mut p = FreePoly::zero();
        for (i, c) in v.coords.iter().enumerate() {
            if !c.is_zero() {
                let col = self.rref.non_pivot_cols[i];
                p.add_term(self.basis.monomials[col as usize].clone(), c.clone());
            }
        }
        p
    }

    /// Normal-form coordinates of a single monomial of this multidegree.
    pub fn reduce_monomial(&self, t: &TreeMonomial) -> Vec<BigRational> {
        let idx = self
            .basis
            .index_of(t)
            .expect("monomial outside component basis") as u32;
        self.rref
            .reduce(&[(idx, BigRational::from_integer(BigInt::from(1)))])
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }
}

type Memo<T> = Mutex<HashMap<MultiDegree, Arc<OnceLock<Arc<T>>>>>;

/// Builds and memoizes `ComponentNormalizer`s for one (identity set, rank).
pub struct TIdealEngine {
    ids: IdentitySet,
    rank: usize,
    cap: u32,
    multilinear: Vec<Vec<(TreeMonomial, BigRational)>>,
    normalizers: Memo<ComponentNormalizer>,
    bases: Memo<MonomialBasis>,
    cache_dir: Option<PathBuf>,
}

impl TIdealEngine {
    pub fn new(ids: IdentitySet, rank: usize) -> Self {
        let cap = default_degree_cap(rank);
        Self::with_cap(ids, rank, cap)
    }

    pub fn with_cap(ids: IdentitySet, rank: usize, cap: u32) -> Self {
        let multilinear = ids
            .defining
            .iter()
            .flat_map(multilinearize)
            .map(|f| f.terms().map(|(t, c)| (t.clone(), c.clone())).collect())
            .collect();
        let cache_dir = std::env::var_os("VERONALT_CACHE_DIR").map(PathBuf::from);
        TIdealEngine {
            ids,
            rank,
            cap,
            multilinear,
            normalizers: Mutex::new(HashMap::new()),
            bases: Mutex::new(HashMap::new()),
            cache_dir,
        }
    }

    pub fn without_cache(mut self) -> Self {
        self.cache_dir = None;
        self
    }

    pub fn identity_set(&self) -> &IdentitySet {
        &self.ids
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree_cap(&self) -> u32 {
        self.cap
    }

    pub fn check_cap(&self, degree: u32) -> Result<()> {
        if degree > self.cap {
            Err(Error::DegreeCapExceeded {
                needed: degree,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    fn memo_cell<T>(memo: &Memo<T>, m: &MultiDegree) -> Arc<OnceLock<Arc<T>>> {
        let mut map = memo.lock().unwrap();
        map.entry(m.clone()).or_default().clone()
    }

    pub fn monomial_basis(&self, m: &MultiDegree) -> Arc<MonomialBasis> {
        let cell = Self::memo_cell(&self.bases, m);
        cell.get_or_init(|| Arc::new(MonomialBasis::new(self.rank, m).unwrap()))
            .clone()
    }

    /// The normalizer of the multidegree-m component.
    pub fn normalizer(&self, m: &MultiDegree) -> Result<Arc<ComponentNormalizer>> {
        self.check_cap(m.total())?;
        if m.total() == 0 {
            return Err(Error::EmptyMultiDegree);
        }
        assert_eq!(m.rank(), self.rank, "multidegree rank mismatch");
        let cell = Self::memo_cell(&self.normalizers, m);
        Ok(cell.get_or_init(|| Arc::new(self.build(m))).clone())
    }

    fn build(&self, m: &MultiDegree) -> ComponentNormalizer {
        let basis = self.monomial_basis(m);
        if let Some(dir) = &self.cache_dir {
            if let Some(rref) = cache::load(dir, &self.ids, self.rank, m, basis.len()) {
                return ComponentNormalizer {
                    multidegree: m.clone(),
                    basis,
                    rref,
                };
            }
        }
        let mut elim = Eliminator::new(basis.len());

        // (i)+(ii): all monomial substitution instances of the multilinear
        // polarizations landing in multidegree m.
        for identity in &self.multilinear {
            let t = identity
                .first()
                .map(|(tree, _)| tree.degree())
                .unwrap_or(0) as usize;
            if t == 0 || t as u32 > m.total() {
                continue;
            }
            let mut tuple: Vec<TreeMonomial> = Vec::with_capacity(t);
            self.for_each_monomial_tuple(m, t, &mut tuple, &mut |tuple| {
                let mut acc: HashMap<u32, BigRational> = HashMap::new();
                for (tree, coeff) in identity {
                    let grafted = graft_monomial(tree, tuple).unwrap();
                    let idx = basis.index_of(&grafted).unwrap() as u32;
                    *acc.entry(idx).or_insert_with(BigRational::zero) += coeff;
                }
                elim.insert(integer_row(acc));
            });
        }

        // (iii): ideal closure by full monomials of every degree, iterated
        // through the memoized lower components.
        for sub_m in submultidegrees(m) {
            let sub = self.normalizer(&sub_m).unwrap();
            if sub.tideal_dim() == 0 {
                continue;
            }
            let u_mdeg = m.checked_sub(&sub_m).unwrap();
            let u_basis = self.monomial_basis(&u_mdeg);
            let lower: Vec<Vec<(TreeMonomial, BigInt)>> = sub
                .tideal_basis()
                .iter()
                .map(|p| p.primitive_integer_terms())
                .collect();
            for row in &lower {
                for u in &u_basis.monomials {
                    for left in [true, false] {
                        let mut acc: HashMap<u32, BigRational> = HashMap::new();
                        for (t, c) in row {
                            let prod = if left {
                                TreeMonomial::node(u.clone(), t.clone())
                            } else {
                                TreeMonomial::node(t.clone(), u.clone())
                            };
                            let idx = basis.index_of(&prod).unwrap() as u32;
                            *acc.entry(idx).or_insert_with(BigRational::zero) +=
                                BigRational::from_integer(c.clone());
                        }
                        elim.insert(integer_row(acc));
                    }
                }
            }
        }

        let rref = elim.finalize();
        if let Some(dir) = &self.cache_dir {
            cache::store(dir, &self.ids, self.rank, m, &rref);
        }
        ComponentNormalizer {
            multidegree: m.clone(),
            basis,
            rref,
        }
    }

    /// Ordered tuples of monomials whose multidegrees sum to `m`.
    fn for_each_monomial_tuple(
        &self,
        remaining: &MultiDegree,
        slots: usize,
        tuple: &mut Vec<TreeMonomial>,
        f: &mut impl FnMut(&[TreeMonomial]),
    ) {
        if slots == 1 {
            if remaining.total() == 0 {
                return;
            }
            let b = self.monomial_basis(remaining);
            for t in &b.monomials {
                tuple.push(t.clone());
                f(tuple);
                tuple.pop();
            }
            return;
        }
        // The first slot takes any nonzero multidegree that leaves at least
        // slots-1 degrees for the rest.
        for part in sub_nonzero(remaining, (slots - 1) as u32) {
            let rest = remaining.checked_sub(&part).unwrap();
            let b = self.monomial_basis(&part);
            for t in &b.monomials {
                tuple.push(t.clone());
                self.for_each_monomial_tuple(&rest, slots - 1, tuple, f);
                tuple.pop();
            }
        }
    }

    /// Spanning set of the multidegree-m T-ideal component.
    pub fn tideal_component(&self, m: &MultiDegree) -> Result<Vec<FreePoly>> {
        Ok(self.normalizer(m)?.tideal_basis())
    }

    /// Normal form of a multihomogeneous element.
    pub fn normal_form(&self, p: &FreePoly) -> Result<NormalVector> {
        let rank = self.rank;
        let m = p
            .multidegree(rank)
            .ok_or_else(|| Error::InvalidInput("element is not multihomogeneous".into()))?;
        self.normalizer(&m)?.normal_form(p)
    }

    /// True iff every multihomogeneous component lies in the T-ideal.
    pub fn is_identity(&self, candidate: &FreePoly) -> Result<bool> {
        if let Some(maxg) = candidate.max_generator() {
            if maxg >= self.rank {
                return Err(Error::InvalidInput(format!(
                    "candidate uses generator x{} but the rank is {}",
                    maxg + 1,
                    self.rank
                )));
            }
        }
        for (m, comp) in candidate.components(self.rank) {
            self.check_cap(m.total())?;
            if !self.normalizer(&m)?.normal_form(&comp)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimension of the degree-d component of the relatively free algebra.
    pub fn degree_dim(&self, d: u32) -> Result<usize> {
        self.check_cap(d)?;
        let mds = MultiDegree::all_of_degree(self.rank, d);
        mds.par_iter()
            .map(|m| self.normalizer(m).map(|n| n.quotient_dim()))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    }

    /// Graded dimension table, degree -> dimension.
    pub fn dim_table(&self, max_degree: u32) -> Result<Vec<(u32, usize)>> {
        (1..=max_degree)
            .map(|d| Ok((d, self.degree_dim(d)?)))
            .collect()
    }
}

fn integer_row(acc: HashMap<u32, BigRational>) -> Row {
    let mut poly = Vec::with_capacity(acc.len());
    let mut lcm = BigInt::from(1);
    for c in acc.values() {
        lcm = num::integer::lcm(lcm, c.denom().clone());
    }
    for (idx, c) in acc {
        if !c.is_zero() {
            poly.push((idx, c.numer() * (&lcm / c.denom())));
        }
    }
    poly.sort_unstable_by_key(|e| e.0);
    Row::from_big(poly)
}

/// Nonzero multidegrees strictly below `m` componentwise-or-equal, leaving at
/// least `reserve` total degree.
fn sub_nonzero(m: &MultiDegree, reserve: u32) -> Vec<MultiDegree> {
    let mut out = Vec::new();
    let counts = m.counts();
    let mut cur = vec![0u32; counts.len()];
    fn rec(counts: &[u32], cur: &mut Vec<u32>, pos: usize, out: &mut Vec<MultiDegree>) {
        if pos == counts.len() {
            out.push(MultiDegree::new(cur.clone()));
            return;
        }
        for c in 0..=counts[pos] {
            cur[pos] = c;
            rec(counts, cur, pos + 1, out);
        }
        cur[pos] = 0;
    }
    rec(counts, &mut cur, 0, &mut out);
    out.retain(|p| {
        let t = p.total();
        t >= 1 && m.total() - t >= reserve
    });
    out
}

/// Nonzero proper sub-multidegrees of `m` (used for ideal closure).
pub fn submultidegrees(m: &MultiDegree) -> Vec<MultiDegree> {
    sub_nonzero(m, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatRref;
    use crate::monomial::enumerate_monomials;
    use crate::poly::{associator, commutator};

    fn md(counts: &[u32]) -> MultiDegree {
        MultiDegree::new(counts.to_vec())
    }

    fn engine(ids: IdentitySet, rank: usize) -> TIdealEngine {
        TIdealEngine::new(ids, rank).without_cache()
    }

    #[test]
    fn multilinearize_alternative() {
        let alt = IdentitySet::alternative();
        let lin = multilinearize(&alt.defining()[0]);
        assert_eq!(lin.len(), 1);
        // (x1,x3,x2) + (x3,x1,x2): 4 monomials, multilinear of degree 3.
        let f = &lin[0];
        assert_eq!(f.num_terms(), 4);
        assert_eq!(f.multidegree(3), Some(md(&[1, 1, 1])));
    }

    /// Independent brute-force T-ideal component: substitute identities with
    /// all monomial tuples, then close under monomial multiplication by
    /// brute-force iteration over all lower-degree products.
    fn brute_force_quotient_dim(ids: &IdentitySet, rank: usize, m: &MultiDegree) -> usize {
        let total = m.total();
        // All T-ideal elements by multidegree, built degree by degree.
        let mut by_md: HashMap<MultiDegree, Vec<FreePoly>> = HashMap::new();
        for d in 1..=total {
            for target in MultiDegree::all_of_degree(rank, d) {
                let mut elems: Vec<FreePoly> = Vec::new();
                // Substitution instances (raw identities, all monomial tuples
                // of polynomial images would be redundant by multilinearity).
                for f in ids.defining() {
                    for lin in multilinearize(f) {
                        let vars = lin.max_generator().map(|g| g + 1).unwrap_or(0);
                        let tuples = monomial_tuples(rank, vars, &target);
                        for tuple in tuples {
                            let s = Substitution::monomials(&tuple);
                            elems.push(lin.substitute(&s).unwrap());
                        }
                    }
                }
                // Closure: monomial * lower element and lower element * monomial.
                for sub_m in submultidegrees(&target) {
                    let u_mdeg = target.checked_sub(&sub_m).unwrap();
                    let us = enumerate_monomials(rank, &u_mdeg).unwrap();
                    if let Some(lower) = by_md.get(&sub_m) {
                        for p in lower {
                            for u in &us {
                                let um = FreePoly::monomial(u.clone());
                                elems.push(um.mul(p));
                                elems.push(p.mul(&um));
                            }
                        }
                    }
                }
                by_md.insert(target, elems);
            }
        }
        let basis = MonomialBasis::new(rank, m).unwrap();
        let mut rref = RatRref::new(basis.len());
        for p in &by_md[m] {
            let mut v = vec![BigRational::zero(); basis.len()];
            for (t, c) in p.terms() {
                v[basis.index_of(t).unwrap()] += c;
            }
            rref.insert(&v);
        }
        basis.len() - rref.rank()
    }

    fn monomial_tuples(rank: usize, vars: usize, target: &MultiDegree) -> Vec<Vec<TreeMonomial>> {
        let mut out = Vec::new();
        let mut tuple = Vec::new();
        fn rec(
            rank: usize,
            vars: usize,
            remaining: &MultiDegree,
            tuple: &mut Vec<TreeMonomial>,
            out: &mut Vec<Vec<TreeMonomial>>,
        ) {
            if tuple.len() == vars {
                if remaining.total() == 0 {
                    out.push(tuple.clone());
                }
                return;
            }
            for part in submultidegrees(remaining)
                .into_iter()
                .chain([remaining.clone()])
            {
                if part.total() == 0 {
                    continue;
                }
                let rest = remaining.checked_sub(&part).unwrap();
                for t in enumerate_monomials(rank, &part).unwrap() {
                    tuple.push(t);
                    rec(rank, vars, &rest, tuple, out);
                    tuple.pop();
                }
            }
        }
        rec(rank, vars, target, &mut tuple, &mut out);
        out
    }

    #[test]
    fn associative_small_components() {
        let eng = engine(IdentitySet::associative(), 2);
        // Degree 2: identity has degree 3, so the component is empty.
        let n = eng.normalizer(&md(&[1, 1])).unwrap();
        assert_eq!(n.tideal_dim(), 0);
        assert_eq!(n.quotient_dim(), 2);
        // Multidegree (2,1): 6 monomials, 3 associative words.
        let n = eng.normalizer(&md(&[2, 1])).unwrap();
        assert_eq!(n.monomial_count(), 6);
        assert_eq!(n.tideal_dim(), 3);
        assert_eq!(n.quotient_dim(), 3);
    }

    #[test]
    fn alternative_2_1_oracle() {
        let ids = IdentitySet::alternative();
        // Independent brute-force oracle value, frozen: quotient dim 3.
        assert_eq!(brute_force_quotient_dim(&ids, 2, &md(&[2, 1])), 3);
        let eng = engine(ids, 2);
        let n = eng.normalizer(&md(&[2, 1])).unwrap();
        assert_eq!(n.quotient_dim(), 3);
        // All three associators of multidegree (2,1) lie in the span.
        let x = FreePoly::generator(0);
        let y = FreePoly::generator(1);
        for a in [
            associator(&x, &x, &y),
            associator(&x, &y, &x),
            associator(&y, &x, &x),
        ] {
            assert!(n.normal_form(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn alternative_multilinear_rank3_oracle() {
        let ids = IdentitySet::alternative();
        assert_eq!(brute_force_quotient_dim(&ids, 3, &md(&[1, 1, 1])), 7);
        let eng = engine(ids, 3);
        let n = eng.normalizer(&md(&[1, 1, 1])).unwrap();
        assert_eq!(n.quotient_dim(), 7);
    }

    #[test]
    fn nonassoc_free_quotient_is_everything() {
        let eng = engine(IdentitySet::nonassoc_free(), 2);
        for m in [md(&[2, 1]), md(&[2, 2]), md(&[0, 3])] {
            let n = eng.normalizer(&m).unwrap();
            assert_eq!(n.quotient_dim(), n.monomial_count());
        }
        // Rank 1 dims are the Catalan numbers.
        let eng = engine(IdentitySet::nonassoc_free(), 1);
        let dims: Vec<usize> = eng
            .dim_table(5)
            .unwrap()
            .into_iter()
            .map(|(_, d)| d)
            .collect();
        assert_eq!(dims, vec![1, 1, 2, 5, 14]);
    }

    #[test]
    fn associative_dim_table_is_powers_of_two() {
        let eng = engine(IdentitySet::associative(), 2);
        let dims: Vec<usize> = eng
            .dim_table(5)
            .unwrap()
            .into_iter()
            .map(|(_, d)| d)
            .collect();
        assert_eq!(dims, vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn alternative_is_identity_examples() {
        let eng = engine(IdentitySet::alternative(), 3);
        // Defining identity.
        assert!(eng.is_identity(&parse("assoc(x,x,y)", 2).unwrap()).unwrap());
        // Moufang Eq. (1): (rx,s,x) = x(r,s,x) at multidegree (1,1,2).
        let p = parse("assoc(x*z,y,z) - z*assoc(x,y,z)", 3).unwrap();
        assert!(eng.is_identity(&p).unwrap());
        // The plain associator is not an identity.
        assert!(!eng.is_identity(&parse("assoc(x,y,z)", 3).unwrap()).unwrap());
    }

    #[test]
    fn monotonicity_and_symmetry() {
        let m = md(&[2, 1]);
        let free = engine(IdentitySet::nonassoc_free(), 2);
        let ralt = engine(IdentitySet::right_alternative(), 2);
        let alt = engine(IdentitySet::alternative(), 2);
        let q_free = free.normalizer(&m).unwrap().quotient_dim();
        let q_ralt = ralt.normalizer(&m).unwrap().quotient_dim();
        let q_alt = alt.normalizer(&m).unwrap().quotient_dim();
        assert!(q_free >= q_ralt && q_ralt >= q_alt);
        // Symmetry under permuting the multidegree.
        let q_swapped = alt.normalizer(&md(&[1, 2])).unwrap().quotient_dim();
        assert_eq!(q_alt, q_swapped);
    }

    #[test]
    fn ideal_and_substitution_closure_spot_checks() {
        let eng = engine(IdentitySet::alternative(), 2);
        let p = parse("assoc(x,x,y)", 2).unwrap();
        assert!(eng.normal_form(&p).unwrap().is_zero());
        // Multiplying by monomials stays in the ideal.
        for u in ["x", "y", "x*y", "y*(x*x)"] {
            let um = parse(u, 2).unwrap();
            assert!(eng.normal_form(&um.mul(&p)).unwrap().is_zero());
            assert!(eng.normal_form(&p.mul(&um)).unwrap().is_zero());
        }
        // Substitution instances stay in the ideal.
        let s = Substitution::new(vec![
            parse("x*y", 2).unwrap(),
            parse("y", 2).unwrap(),
        ]);
        let image = p.substitute(&s).unwrap();
        assert!(eng.is_identity(&image).unwrap());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let eng = TIdealEngine::with_cap(IdentitySet::alternative(), 2, 4).without_cache();
        let p = lpow_comm();
        assert!(matches!(
            eng.is_identity(&p),
            Err(Error::DegreeCapExceeded { needed: 8, cap: 4 })
        ));
    }

    fn lpow_comm() -> FreePoly {
        crate::poly::lpow(
            &commutator(&FreePoly::generator(0), &FreePoly::generator(1)),
            4,
        )
        .unwrap()
    }

    #[test]
    fn custom_identity_file_lines() {
        let ids = IdentitySet::from_lines(
            "custom",
            "# commutativity\nx*y - y*x\n\nassoc(x,y,z)\n",
        )
        .unwrap();
        assert_eq!(ids.defining().len(), 2);
        let eng = engine(ids, 2);
        // Commutative and associative: dims are the symmetric powers.
        let dims: Vec<usize> = eng
            .dim_table(4)
            .unwrap()
            .into_iter()
            .map(|(_, d)| d)
            .collect();
        assert_eq!(dims, vec![2, 3, 4, 5]);
    }
}
