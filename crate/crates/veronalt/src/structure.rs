//! Degree-truncated structure subspaces of the relatively free algebra:
//! nucleus, center, associative nucleus, associator ideal, and the D_i chain,
//! plus the pigeonhole witness used by the residue-counting argument.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel, RatRref};
use crate::monomial::MultiDegree;
use crate::poly::{associator, commutator, FreePoly};
use crate::tideal::{submultidegrees, NormalVector, TIdealEngine};

/// Basis of a subspace of one multigraded component, in normal-form
/// coordinates and reduced echelon form.
#[derive(Clone, Debug)]
pub struct SubspaceSlice {
    pub multidegree: MultiDegree,
    /// Dimension of the ambient relatively free component.
    pub ambient_dim: usize,
    pub basis: Vec<NormalVector>,
}

impl SubspaceSlice {
    pub fn zero(multidegree: MultiDegree, ambient_dim: usize) -> Self {
        SubspaceSlice {
            multidegree,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rat_rref(&self) -> RatRref {
        let mut r = RatRref::new(self.ambient_dim);
        for v in &self.basis {
            r.insert(&v.coords);
        }
        r
    }

    pub fn contains(&self, v: &NormalVector) -> bool {
        v.multidegree == self.multidegree && self.rat_rref().contains(&v.coords)
    }

    pub fn contains_slice(&self, other: &SubspaceSlice) -> bool {
        other.multidegree == self.multidegree
            && self.rat_rref().contains_space(&other.rat_rref())
    }

    fn from_rref(multidegree: MultiDegree, rref: &RatRref) -> Self {
        let basis = rref
            .basis()
            .into_iter()
            .map(|coords| NormalVector {
                multidegree: multidegree.clone(),
                coords,
            })
            .collect();
        SubspaceSlice {
            multidegree,
            ambient_dim: rref.dim(),
            basis,
        }
    }
}

/// Structure computations over a frozen T-ideal engine.
pub struct StructureEngine {
    eng: Arc<TIdealEngine>,
    assoc_ideal: Mutex<HashMap<(u32, MultiDegree), Arc<SubspaceSlice>>>,
}

impl StructureEngine {
    pub fn new(eng: Arc<TIdealEngine>) -> Self {
        StructureEngine {
            eng,
            assoc_ideal: Mutex::new(HashMap::new()),
        }
    }

    pub fn engine(&self) -> &TIdealEngine {
        &self.eng
    }

    fn rank(&self) -> usize {
        self.eng.rank()
    }

    /// Lifted polynomial representatives of a subspace basis.
    fn lifts(&self, slice: &SubspaceSlice) -> Result<Vec<FreePoly>> {
        let norm = self.eng.normalizer(&slice.multidegree)?;
        Ok(slice.basis.iter().map(|v| norm.lift(v)).collect())
    }

    /// Full component as a subspace slice (unit vectors).
    fn full_slice(&self, m: &MultiDegree) -> Result<SubspaceSlice> {
        let norm = self.eng.normalizer(m)?;
        let q = norm.quotient_dim();
        let basis = (0..q)
            .map(|j| {
                let mut coords = vec![BigRational::zero(); q];
                coords[j] = BigRational::from_integer(1.into());
                NormalVector {
                    multidegree: m.clone(),
                    coords,
                }
            })
            .collect();
        Ok(SubspaceSlice {
            multidegree: m.clone(),
            ambient_dim: q,
            basis,
        })
    }

    /// Restrict `slice` to the kernel of the linear constraint
    /// `v ↦ residual of nf(make(lift(v)))` against `target` (whole component
    /// when `target` is `None`). Constraints are applied to the current basis
    /// only, so the slice shrinks monotonically.
    fn restrict(
        &self,
        slice: SubspaceSlice,
        make: impl Fn(&FreePoly) -> FreePoly,
        target: Option<&RatRref>,
    ) -> Result<SubspaceSlice> {
        if slice.dim() == 0 {
            return Ok(slice);
        }
        let lifts = self.lifts(&slice)?;
        let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(lifts.len());
        let mut codomain = 0usize;
        for p in &lifts {
            let image = make(p);
            let col = if image.is_zero() {
                Vec::new()
            } else {
                let nf = self.eng.normal_form(&image)?;
                match target {
                    Some(t) => t.residual(&nf.coords),
                    None => nf.coords,
                }
            };
            codomain = codomain.max(col.len());
            columns.push(col);
        }
        if columns.iter().all(|c| c.iter().all(|x| x.is_zero())) {
            return Ok(slice);
        }
        for c in &mut columns {
            c.resize(codomain, BigRational::zero());
        }
        let combos = kernel(&columns, codomain);
        let mut rref = RatRref::new(slice.ambient_dim);
        for combo in combos {
            let mut coords = vec![BigRational::zero(); slice.ambient_dim];
            for (i, k) in combo.iter().enumerate() {
                if !k.is_zero() {
                    for (c, b) in coords.iter_mut().zip(slice.basis[i].coords.iter()) {
                        *c += k * b;
                    }
                }
            }
            rref.insert(&coords);
        }
        Ok(SubspaceSlice::from_rref(slice.multidegree, &rref))
    }

    /// Truncated nucleus at one multidegree: vectors whose associators with
    /// all monomial pairs (in every argument position) have zero normal form,
    /// for products of total degree ≤ `cutoff`. An over-approximation of the
    /// nucleus component that shrinks as the cutoff grows.
    pub fn nucleus_slice(&self, m: &MultiDegree, cutoff: u32) -> Result<SubspaceSlice> {
        self.eng.check_cap(cutoff)?;
        let d = m.total();
        let mut slice = self.full_slice(m)?;
        // Cheapest constraints first: early exit once the slice is empty.
        for rest in 2..=cutoff.saturating_sub(d) {
            for a in 1..rest {
                let b = rest - a;
                for mu in MultiDegree::all_of_degree(self.rank(), a) {
                    let ubasis = self.eng.monomial_basis(&mu);
                    for mw in MultiDegree::all_of_degree(self.rank(), b) {
                        let wbasis = self.eng.monomial_basis(&mw);
                        for u in &ubasis.monomials {
                            let up = FreePoly::monomial(u.clone());
                            for w in &wbasis.monomials {
                                if slice.dim() == 0 {
                                    return Ok(slice);
                                }
                                let wp = FreePoly::monomial(w.clone());
                                slice =
                                    self.restrict(slice, |v| associator(v, &up, &wp), None)?;
                                slice =
                                    self.restrict(slice, |v| associator(&up, v, &wp), None)?;
                                slice =
                                    self.restrict(slice, |v| associator(&up, &wp, v), None)?;
                            }
                        }
                    }
                }
            }
        }
        Ok(slice)
    }

    /// Truncated nucleus of the whole degree-d component, one slice per
    /// multidegree.
    pub fn nucleus_component(&self, d: u32, cutoff: u32) -> Result<Vec<SubspaceSlice>> {
        check_cutoff(d, cutoff)?;
        MultiDegree::all_of_degree(self.rank(), d)
            .iter()
            .map(|m| self.nucleus_slice(m, cutoff))
            .collect()
    }

    /// Truncated center: nucleus plus vanishing commutators with all
    /// monomials within the cutoff.
    pub fn center_slice(&self, m: &MultiDegree, cutoff: u32) -> Result<SubspaceSlice> {
        let d = m.total();
        let mut slice = self.nucleus_slice(m, cutoff)?;
        for a in 1..=cutoff.saturating_sub(d) {
            for mu in MultiDegree::all_of_degree(self.rank(), a) {
                let ubasis = self.eng.monomial_basis(&mu);
                for u in &ubasis.monomials {
                    if slice.dim() == 0 {
                        return Ok(slice);
                    }
                    let up = FreePoly::monomial(u.clone());
                    slice = self.restrict(slice, |v| commutator(v, &up), None)?;
                }
            }
        }
        Ok(slice)
    }

    pub fn center_component(&self, d: u32, cutoff: u32) -> Result<Vec<SubspaceSlice>> {
        check_cutoff(d, cutoff)?;
        MultiDegree::all_of_degree(self.rank(), d)
            .iter()
            .map(|m| self.center_slice(m, cutoff))
            .collect()
    }

    /// Multidegree-m component of D_i: D_0 is the whole algebra and D_i is
    /// the ideal generated by (D_{i−1}, A, A).
    pub fn d_chain_component(&self, i: u32, m: &MultiDegree) -> Result<Arc<SubspaceSlice>> {
        self.eng.check_cap(m.total())?;
        if i == 0 {
            return Ok(Arc::new(self.full_slice(m)?));
        }
        let key = (i, m.clone());
        if let Some(s) = self.assoc_ideal.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let norm = self.eng.normalizer(m)?;
        let q = norm.quotient_dim();
        let mut rref = RatRref::new(q);
        // Generators: associators (p, u, w) with p in D_{i−1}.
        for (m1, m2, m3) in three_part_splits(m) {
            let prev = self.d_chain_component(i - 1, &m1)?;
            if prev.dim() == 0 {
                continue;
            }
            let plifts = self.lifts(&prev)?;
            let ubasis = self.eng.monomial_basis(&m2);
            let wbasis = self.eng.monomial_basis(&m3);
            for p in &plifts {
                for u in &ubasis.monomials {
                    let up = FreePoly::monomial(u.clone());
                    for w in &wbasis.monomials {
                        let wp = FreePoly::monomial(w.clone());
                        let nf = norm.normal_form(&associator(p, &up, &wp))?;
                        rref.insert(&nf.coords);
                    }
                }
            }
        }
        // Ideal closure through lower components of the same level.
        for m1 in submultidegrees(m) {
            let lower = self.d_chain_component(i, &m1)?;
            if lower.dim() == 0 {
                continue;
            }
            let plifts = self.lifts(&lower)?;
            let ubasis = self.eng.monomial_basis(&m.checked_sub(&m1).unwrap());
            for p in &plifts {
                for u in &ubasis.monomials {
                    let up = FreePoly::monomial(u.clone());
                    let left = norm.normal_form(&up.mul(p))?;
                    rref.insert(&left.coords);
                    let right = norm.normal_form(&p.mul(&up))?;
                    rref.insert(&right.coords);
                }
            }
        }
        let slice = Arc::new(SubspaceSlice::from_rref(m.clone(), &rref));
        self.assoc_ideal.lock().unwrap().insert(key, slice.clone());
        Ok(slice)
    }

    /// Multidegree-m component of the associator ideal D(A) = D_1.
    pub fn associator_ideal_component(&self, m: &MultiDegree) -> Result<Arc<SubspaceSlice>> {
        self.d_chain_component(1, m)
    }

    /// Truncated associative nucleus: greatest graded subspace of the
    /// truncated nucleus whose monomial multiples (of total degree ≤ cutoff)
    /// stay inside it, by greatest-fixed-point iteration. An
    /// over-approximation of U(A).
    pub fn assoc_nucleus_component(&self, d: u32, cutoff: u32) -> Result<Vec<SubspaceSlice>> {
        check_cutoff(d, cutoff)?;
        let rank = self.rank();
        let mut mds: Vec<MultiDegree> = Vec::new();
        for t in 1..=cutoff {
            mds.extend(MultiDegree::all_of_degree(rank, t));
        }
        let mut current: HashMap<MultiDegree, SubspaceSlice> = HashMap::new();
        for m in &mds {
            current.insert(m.clone(), self.nucleus_slice(m, cutoff)?);
        }
        loop {
            let mut changed = false;
            for m in &mds {
                let mut slice = current[m].clone();
                if slice.dim() == 0 {
                    continue;
                }
                let before = slice.dim();
                for a in 1..=cutoff - m.total() {
                    for mu in MultiDegree::all_of_degree(rank, a) {
                        let target_m = m.add(&mu);
                        let target = current[&target_m].rat_rref();
                        let ubasis = self.eng.monomial_basis(&mu);
                        for u in &ubasis.monomials {
                            if slice.dim() == 0 {
                                break;
                            }
                            let up = FreePoly::monomial(u.clone());
                            slice = self.restrict(slice, |v| v.mul(&up), Some(&target))?;
                            slice = self.restrict(slice, |v| up.mul(v), Some(&target))?;
                        }
                    }
                }
                if slice.dim() != before {
                    changed = true;
                }
                current.insert(m.clone(), slice);
            }
            if !changed {
                break;
            }
        }
        Ok(MultiDegree::all_of_degree(rank, d)
            .into_iter()
            .map(|m| current.remove(&m).unwrap())
            .collect())
    }
}

fn check_cutoff(d: u32, cutoff: u32) -> Result<()> {
    if d == 0 || d >= cutoff {
        return Err(Error::InvalidInput(format!(
            "degree {d} must satisfy 1 <= degree < cutoff {cutoff}"
        )));
    }
    Ok(())
}

/// Ordered splits m = m1 + m2 + m3 with every part nonzero.
fn three_part_splits(m: &MultiDegree) -> Vec<(MultiDegree, MultiDegree, MultiDegree)> {
    let mut out = Vec::new();
    for m1 in submultidegrees(m) {
        let rest = m.checked_sub(&m1).unwrap();
        for m2 in submultidegrees(&rest) {
            let m3 = rest.checked_sub(&m2).unwrap();
            if m3.total() > 0 {
                out.push((m1.clone(), m2, m3));
            }
        }
    }
    out
}

/// Index of a residue class from {1..n−1} containing at least n elements,
/// or None. Guaranteed to exist when the multiset has ≥ (n−1)²+1 members.
pub fn pigeonhole_witness(n: u32, residues: &[u32]) -> Result<Option<u32>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    let mut counts = vec![0usize; n as usize];
    for &r in residues {
        if r == 0 || r >= n {
            return Err(Error::ResidueOutOfRange { residue: r, n });
        }
        counts[r as usize] += 1;
    }
    Ok((1..n).find(|&c| counts[c as usize] >= n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tideal::IdentitySet;

    fn structure(ids: IdentitySet, rank: usize) -> StructureEngine {
        StructureEngine::new(Arc::new(TIdealEngine::new(ids, rank).without_cache()))
    }

    fn total_dim(slices: &[SubspaceSlice]) -> usize {
        slices.iter().map(|s| s.dim()).sum()
    }

    fn ambient_dim(slices: &[SubspaceSlice]) -> usize {
        slices.iter().map(|s| s.ambient_dim).sum()
    }

    #[test]
    fn associative_everything_is_nuclear_and_assoc_nuclear() {
        let se = structure(IdentitySet::associative(), 2);
        for d in 1..=3 {
            let n = se.nucleus_component(d, 5).unwrap();
            assert_eq!(total_dim(&n), ambient_dim(&n));
            let u = se.assoc_nucleus_component(d, 5).unwrap();
            assert_eq!(total_dim(&u), ambient_dim(&u));
        }
    }

    #[test]
    fn associative_rank_one_center_is_full() {
        let se = structure(IdentitySet::associative(), 1);
        for d in 1..=3 {
            let c = se.center_component(d, 5).unwrap();
            assert_eq!(total_dim(&c), ambient_dim(&c));
        }
    }

    #[test]
    fn alternative_rank2_low_degrees_fully_nuclear() {
        // Two-generated alternative subalgebras are associative.
        let se = structure(IdentitySet::alternative(), 2);
        for d in 1..=4 {
            let n = se.nucleus_component(d, 7).unwrap();
            assert_eq!(total_dim(&n), ambient_dim(&n), "degree {d}");
        }
        let u = se.assoc_nucleus_component(2, 6).unwrap();
        assert_eq!(total_dim(&u), ambient_dim(&u));
    }

    #[test]
    fn alternative_rank2_center_kills_degree_one() {
        let se = structure(IdentitySet::alternative(), 2);
        let c = se.center_component(1, 5).unwrap();
        assert_eq!(total_dim(&c), 0);
    }

    #[test]
    fn alternative_rank3_degree_one_structure_is_zero() {
        let se = structure(IdentitySet::alternative(), 3);
        assert_eq!(total_dim(&se.nucleus_component(1, 5).unwrap()), 0);
        assert_eq!(total_dim(&se.center_component(1, 5).unwrap()), 0);
        assert_eq!(total_dim(&se.assoc_nucleus_component(1, 5).unwrap()), 0);
    }

    #[test]
    fn associator_ideal_components() {
        let m111 = MultiDegree::new(vec![1, 1, 1]);
        // Associative: no associators at all.
        let se = structure(IdentitySet::associative(), 3);
        assert_eq!(se.associator_ideal_component(&m111).unwrap().dim(), 0);
        // Alternative rank 3: the multilinear associator spans one dimension.
        let se = structure(IdentitySet::alternative(), 3);
        let slice = se.associator_ideal_component(&m111).unwrap();
        assert_eq!(slice.ambient_dim, 7);
        assert_eq!(slice.dim(), 1);
        // Alternative rank 2: zero by Artin.
        let se = structure(IdentitySet::alternative(), 2);
        for m in [
            MultiDegree::new(vec![2, 1]),
            MultiDegree::new(vec![2, 2]),
            MultiDegree::new(vec![3, 1]),
        ] {
            assert_eq!(se.associator_ideal_component(&m).unwrap().dim(), 0);
        }
    }

    #[test]
    fn d_chain_containments() {
        let se = structure(IdentitySet::alternative(), 3);
        // D_2 vanishes below its minimal degree 5.
        for m in MultiDegree::all_of_degree(3, 4) {
            assert_eq!(se.d_chain_component(2, &m).unwrap().dim(), 0);
        }
        // D_2 ⊆ D_1 at total degree 5.
        for m in MultiDegree::all_of_degree(3, 5) {
            let d1 = se.d_chain_component(1, &m).unwrap();
            let d2 = se.d_chain_component(2, &m).unwrap();
            assert!(d1.contains_slice(&d2), "at {m}");
        }
    }

    #[test]
    fn pigeonhole_examples() {
        assert_eq!(pigeonhole_witness(2, &[1, 1]).unwrap(), Some(1));
        assert_eq!(pigeonhole_witness(3, &[1, 2, 1, 2, 1]).unwrap(), Some(1));
        assert_eq!(pigeonhole_witness(3, &[1, 2, 1, 2]).unwrap(), None);
        assert!(matches!(
            pigeonhole_witness(3, &[0]),
            Err(Error::ResidueOutOfRange { .. })
        ));
        assert!(pigeonhole_witness(1, &[]).is_err());
    }

    #[test]
    fn pigeonhole_exhaustive_small() {
        // All residue multisets for n ≤ 4 up to size (n−1)²+2.
        for n in 2u32..=4 {
            let classes = (n - 1) as usize;
            let bound = (n as usize - 1) * (n as usize - 1) + 1;
            for size in 0..=bound + 1 {
                let mut counts = vec![0usize; classes];
                loop {
                    if counts.iter().sum::<usize>() == size {
                        let residues: Vec<u32> = counts
                            .iter()
                            .enumerate()
                            .flat_map(|(i, &c)| std::iter::repeat(i as u32 + 1).take(c))
                            .collect();
                        let w = pigeonhole_witness(n, &residues).unwrap();
                        let expect = counts.iter().any(|&c| c >= n as usize);
                        assert_eq!(w.is_some(), expect, "n={n} counts={counts:?}");
                        if size >= bound {
                            assert!(w.is_some());
                        }
                        if let Some(cl) = w {
                            assert!(counts[cl as usize - 1] >= n as usize);
                        }
                    }
                    // Next composition with entries ≤ size.
                    let mut i = 0;
                    loop {
                        if i == classes {
                            break;
                        }
                        counts[i] += 1;
                        if counts[i] > size {
                            counts[i] = 0;
                            i += 1;
                        } else {
                            break;
                        }
                    }
                    if i == classes {
                        break;
                    }
                }
            }
        }
    }
}
