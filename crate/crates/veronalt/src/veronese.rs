//! Veronese subalgebra components, degree-by-degree generator counting, and
//! invariant subalgebras of finite linear groups.

use std::collections::HashMap;
use std::sync::Arc;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::group::LinearGroupAction;
use crate::linalg::{Eliminator, RatRref, Row};
use crate::monomial::{MultiDegree, TreeMonomial};
use crate::poly::FreePoly;
use crate::structure::SubspaceSlice;
use crate::tideal::{NormalVector, TIdealEngine};

/// Veronese n-subalgebra parameters over a fixed engine.
#[derive(Clone, Debug)]
pub struct VeroneseConfig {
    pub n: u32,
    pub max_degree: u32,
}

impl VeroneseConfig {
    pub fn new(n: u32, max_degree: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "Veronese parameter n must be at least 2, got {n}"
            )));
        }
        Ok(VeroneseConfig { n, max_degree })
    }
}

/// One degree of a generator report.
#[derive(Clone, Debug)]
pub struct GeneratorDegreeRow {
    pub degree: u32,
    /// Dimension of the target subspace (Veronese or invariant component).
    pub dim_target: usize,
    /// Dimension spanned by products of lower-degree components.
    pub dim_generated: usize,
    pub new_count: usize,
    /// Canonical representatives of the new generators.
    pub new_generators: Vec<FreePoly>,
}

#[derive(Clone, Debug, Default)]
pub struct GeneratorReport {
    pub rows: Vec<GeneratorDegreeRow>,
}

impl GeneratorReport {
    pub fn new_counts(&self) -> Vec<(u32, usize)> {
        self.rows.iter().map(|r| (r.degree, r.new_count)).collect()
    }
}

/// Degree-d component of the Veronese n-subalgebra: the full relatively free
/// component when n | d, zero otherwise.
pub fn veronese_component(
    eng: &TIdealEngine,
    n: u32,
    d: u32,
) -> Result<Vec<SubspaceSlice>> {
    eng.check_cap(d)?;
    let mut out = Vec::new();
    for m in MultiDegree::all_of_degree(eng.rank(), d) {
        let norm = eng.normalizer(&m)?;
        let q = norm.quotient_dim();
        if d % n == 0 {
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
            out.push(SubspaceSlice {
                multidegree: m,
                ambient_dim: q,
                basis,
            });
        } else {
            out.push(SubspaceSlice::zero(m, q));
        }
    }
    Ok(out)
}

fn integer_row_from_coords(coords: &[BigRational]) -> Row {
    let mut lcm = BigInt::from(1);
    for c in coords {
        if !c.is_zero() {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
    }
    let entries = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32, c.numer() * (&lcm / c.denom())))
        .collect();
    Row::from_big(entries)
}

/// Minimal-generator counting for the Veronese n-subalgebra: at each degree
/// d = n, 2n, …, the generated part is the span of normal forms of products
/// S_a · S_b over ordered splits a + b = d with a, b ≥ n, where S_e is the
/// full Veronese component once degree e has been processed; new generators
/// are the echelon complement.
pub fn new_generators(eng: &TIdealEngine, cfg: &VeroneseConfig) -> Result<GeneratorReport> {
    eng.check_cap(cfg.max_degree)?;
    let n = cfg.n;
    let rank = eng.rank();
    let mut report = GeneratorReport::default();
    let mut d = n;
    while d <= cfg.max_degree {
        let mut dim_target = 0usize;
        let mut dim_generated = 0usize;
        let mut new_generators = Vec::new();
        for m in MultiDegree::all_of_degree(rank, d) {
            let norm = eng.normalizer(&m)?;
            let q = norm.quotient_dim();
            dim_target += q;
            let mut elim = Eliminator::new(q);
            // Lower components are full, so monomial pair products span the
            // generated part.
            for m1 in crate::tideal::submultidegrees(&m) {
                let a = m1.total();
                let b = d - a;
                if a < n || b < n || a % n != 0 || b % n != 0 {
                    continue;
                }
                let m2 = m.checked_sub(&m1).unwrap();
                let b1 = eng.monomial_basis(&m1);
                let b2 = eng.monomial_basis(&m2);
                for t1 in &b1.monomials {
                    for t2 in &b2.monomials {
                        let prod = TreeMonomial::node(t1.clone(), t2.clone());
                        let coords = norm.reduce_monomial(&prod);
                        elim.insert(integer_row_from_coords(&coords));
                    }
                }
            }
            dim_generated += elim.rank();
            // Echelon complement in canonical order: one new generator per
            // non-pivot coordinate, represented by its monomial lift.
            let rref = elim.finalize();
            let reps = norm.non_pivot_monomials();
            for &col in &rref.non_pivot_cols {
                new_generators.push(FreePoly::monomial(reps[col as usize].clone()));
            }
        }
        report.rows.push(GeneratorDegreeRow {
            degree: d,
            dim_target,
            dim_generated,
            new_count: dim_target - dim_generated,
            new_generators,
        });
        d += n;
    }
    Ok(report)
}

/// A subspace of one total-degree component in concatenated normal-form
/// coordinates (group actions mix multidegrees of equal total degree).
#[derive(Clone, Debug)]
pub struct DegreeComponent {
    pub degree: u32,
    pub multidegrees: Vec<MultiDegree>,
    pub offsets: Vec<usize>,
    pub ambient_dim: usize,
    pub basis: Vec<Vec<BigRational>>,
}

impl DegreeComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn rat_rref(&self) -> RatRref {
        let mut r = RatRref::new(self.ambient_dim);
        for v in &self.basis {
            r.insert(v);
        }
        r
    }

    /// Exact subspace equality against a graded subspace given per
    /// multidegree.
    pub fn equals_slices(&self, slices: &[SubspaceSlice]) -> bool {
        let by_m: HashMap<&MultiDegree, &SubspaceSlice> =
            slices.iter().map(|s| (&s.multidegree, s)).collect();
        let mut other = RatRref::new(self.ambient_dim);
        for (m, &off) in self.multidegrees.iter().zip(self.offsets.iter()) {
            let Some(slice) = by_m.get(m) else {
                return false;
            };
            for v in &slice.basis {
                let mut coords = vec![BigRational::zero(); self.ambient_dim];
                coords[off..off + v.coords.len()].clone_from_slice(&v.coords);
                other.insert(&coords);
            }
        }
        let mine = self.rat_rref();
        mine.rank() == other.rank() && mine.contains_space(&other)
    }

    /// Lift a concatenated coordinate vector to a polynomial.
    pub fn lift(&self, eng: &TIdealEngine, coords: &[BigRational]) -> Result<FreePoly> {
        let mut p = FreePoly::zero();
        for (m, &off) in self.multidegrees.iter().zip(self.offsets.iter()) {
            let norm = eng.normalizer(m)?;
            let q = norm.quotient_dim();
            let part = NormalVector {
                multidegree: m.clone(),
                coords: coords[off..off + q].to_vec(),
            };
            p = p.add(&norm.lift(&part));
        }
        Ok(p)
    }
}

fn degree_layout(eng: &TIdealEngine, d: u32) -> Result<(Vec<MultiDegree>, Vec<usize>, usize)> {
    let mds = MultiDegree::all_of_degree(eng.rank(), d);
    let mut offsets = Vec::with_capacity(mds.len());
    let mut total = 0usize;
    for m in &mds {
        offsets.push(total);
        total += eng.normalizer(m)?.quotient_dim();
    }
    Ok((mds, offsets, total))
}

fn concatenated_coords(
    eng: &TIdealEngine,
    mds: &[MultiDegree],
    offsets: &[usize],
    total: usize,
    p: &FreePoly,
) -> Result<Vec<BigRational>> {
    let mut coords = vec![BigRational::zero(); total];
    for (m, comp) in p.components(eng.rank()) {
        let i = mds
            .iter()
            .position(|x| *x == m)
            .ok_or_else(|| Error::InvalidInput("component of unexpected degree".into()))?;
        let nf = eng.normalizer(&m)?.normal_form(&comp)?;
        coords[offsets[i]..offsets[i] + nf.coords.len()].clone_from_slice(&nf.coords);
    }
    Ok(coords)
}

/// Fixed subspace of the degree-d component under the group action,
/// as the image of the Reynolds projector in normal-form coordinates.
pub fn invariant_component(
    action: &LinearGroupAction,
    eng: &TIdealEngine,
    d: u32,
) -> Result<DegreeComponent> {
    eng.check_cap(d)?;
    if action.rank() != eng.rank() {
        return Err(Error::InvalidInput(format!(
            "group acts on rank {} but the engine has rank {}",
            action.rank(),
            eng.rank()
        )));
    }
    let (mds, offsets, total) = degree_layout(eng, d)?;
    let mut rref = RatRref::new(total);
    for m in &mds {
        let norm = eng.normalizer(m)?;
        for t in norm.non_pivot_monomials() {
            let avg = action.reynolds(&FreePoly::monomial(t))?;
            if avg.is_zero() {
                continue;
            }
            let coords = concatenated_coords(eng, &mds, &offsets, total, &avg)?;
            rref.insert(&coords);
        }
    }
    Ok(DegreeComponent {
        degree: d,
        multidegrees: mds,
        offsets,
        ambient_dim: total,
        basis: rref.basis(),
    })
}

/// Generator report for the invariant subalgebra: target components are the
/// invariant components, generated parts are spans of products of
/// lower-degree invariant components.
pub fn invariant_generators(
    action: &LinearGroupAction,
    eng: &TIdealEngine,
    max_degree: u32,
) -> Result<GeneratorReport> {
    eng.check_cap(max_degree)?;
    let mut components: Vec<Arc<DegreeComponent>> = Vec::new();
    let mut lifted: Vec<Vec<FreePoly>> = Vec::new();
    for d in 1..=max_degree {
        let comp = invariant_component(action, eng, d)?;
        let lifts = comp
            .basis
            .iter()
            .map(|v| comp.lift(eng, v))
            .collect::<Result<Vec<_>>>()?;
        components.push(Arc::new(comp));
        lifted.push(lifts);
    }
    let mut report = GeneratorReport::default();
    for d in 1..=max_degree {
        let comp = &components[d as usize - 1];
        let mut generated = RatRref::new(comp.ambient_dim);
        for a in 1..d {
            let b = d - a;
            for p in &lifted[a as usize - 1] {
                for q in &lifted[b as usize - 1] {
                    let prod = p.mul(q);
                    if prod.is_zero() {
                        continue;
                    }
                    let coords = concatenated_coords(
                        eng,
                        &comp.multidegrees,
                        &comp.offsets,
                        comp.ambient_dim,
                        &prod,
                    )?;
                    generated.insert(&coords);
                }
            }
        }
        let dim_generated = generated.rank();
        let mut new_generators = Vec::new();
        for (v, lift) in comp.basis.iter().zip(lifted[d as usize - 1].iter()) {
            if generated.insert(v) {
                new_generators.push(lift.clone());
            }
        }
        report.rows.push(GeneratorDegreeRow {
            degree: d,
            dim_target: comp.dim(),
            dim_generated,
            new_count: comp.dim() - dim_generated,
            new_generators,
        });
    }
    Ok(report)
}
