//! Finite linear group actions on the free algebra and the Reynolds
//! averaging operator.

use std::collections::HashSet;
use std::path::Path;

use num::{BigInt, BigRational, Zero};

use crate::cyclo::{poly_to_cyclo, poly_to_rational, Cyclo};
use crate::error::{Error, Result};
use crate::poly::{FreePoly, Scalar, Substitution};

/// Default bound on the closure of the generated group.
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

pub type Matrix = Vec<Vec<Cyclo>>;

/// A finite subgroup of GL(rank, Q(ζ)) given by generators, with its closure
/// enumerated up front. The action extends to the free algebra by linear
/// substitution on the generators: g sends x_i to Σ_j g[j][i]·x_j.
pub struct LinearGroupAction {
    rank: usize,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
}

impl LinearGroupAction {
    pub fn new(generators: Vec<Matrix>, bound: usize) -> Result<Self> {
        let rank = match generators.first() {
            Some(m) => m.len(),
            None => {
                return Err(Error::InvalidInput(
                    "group action needs at least one generator matrix".into(),
                ))
            }
        };
        for m in &generators {
            if m.len() != rank || m.iter().any(|row| row.len() != rank) {
                return Err(Error::InvalidInput(format!(
                    "all group generators must be {rank}x{rank} matrices"
                )));
            }
            if det(m).is_zero() {
                return Err(Error::SingularGenerator);
            }
        }
        let elements = close(&generators, rank, bound)?;
        Ok(LinearGroupAction {
            rank,
            generators,
            elements,
        })
    }

    pub fn from_rational_matrices(mats: Vec<Vec<Vec<BigRational>>>) -> Result<Self> {
        let generators = mats
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|row| row.into_iter().map(Cyclo::rational).collect())
                    .collect()
            })
            .collect();
        Self::new(generators, DEFAULT_CLOSURE_BOUND)
    }

    /// The scalar group of order n: generated by ζ_n · identity.
    pub fn scalar(rank: usize, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("scalar order must be >= 1".into()));
        }
        let z = Cyclo::zeta(n);
        let mut m = identity(rank);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = z.clone();
        }
        Self::new(vec![m], DEFAULT_CLOSURE_BOUND)
    }

    /// Group file: one matrix per block, one row of rationals per line,
    /// blocks separated by blank lines.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut mats: Vec<Vec<Vec<BigRational>>> = Vec::new();
        let mut block: Vec<Vec<BigRational>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                if !block.is_empty() {
                    mats.push(std::mem::take(&mut block));
                }
                continue;
            }
            let row = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            block.push(row);
        }
        if !block.is_empty() {
            mats.push(block);
        }
        Self::from_rational_matrices(mats)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    /// Image of a polynomial under one group element.
    pub fn apply(&self, g: &Matrix, p: &FreePoly<Cyclo>) -> FreePoly<Cyclo> {
        let images: Vec<FreePoly<Cyclo>> = (0..self.rank)
            .map(|i| {
                let mut img = FreePoly::zero();
                for (j, row) in g.iter().enumerate() {
                    if !row[i].is_zero() {
                        img = img.add(&FreePoly::generator(j).scale(&row[i]));
                    }
                }
                img
            })
            .collect();
        p.substitute(&Substitution::new(images))
            .expect("generator images cover the rank")
    }

    /// Reynolds average (1/|G|) Σ_g p^g over cyclotomic coefficients.
    pub fn reynolds_cyclo(&self, p: &FreePoly<Cyclo>) -> FreePoly<Cyclo> {
        let mut sum = FreePoly::zero();
        for g in &self.elements {
            sum = sum.add(&self.apply(g, p));
        }
        let inv = Cyclo::rational(BigRational::new(
            BigInt::from(1),
            BigInt::from(self.elements.len() as i64),
        ));
        sum.scale(&inv)
    }

    /// Reynolds average of a rational polynomial. The average of a rational
    /// polynomial under a group closed under complex conjugation is again
    /// rational; anything else is reported as an error.
    pub fn reynolds(&self, p: &FreePoly) -> Result<FreePoly> {
        let avg = self.reynolds_cyclo(&poly_to_cyclo(p));
        poly_to_rational(&avg).ok_or_else(|| {
            Error::InvalidInput("Reynolds average has irrational coefficients".into())
        })
    }
}

fn identity(rank: usize) -> Matrix {
    (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| if i == j { Cyclo::one() } else { Cyclo::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Cyclo::zero();
                    for k in 0..n {
                        s = s.add_ref(&a[i][k].mul_ref(&b[k][j]));
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Laplace-expansion determinant; ranks are small.
fn det(m: &Matrix) -> Cyclo {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = Cyclo::zero();
    for (j, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Matrix = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot.mul_ref(&det(&minor));
        out = if j % 2 == 0 {
            out.add_ref(&term)
        } else {
            out.add_ref(&term.neg_ref())
        };
    }
    out
}

fn matrix_key(m: &Matrix) -> String {
    format!("{m:?}")
}

fn close(generators: &[Matrix], rank: usize, bound: usize) -> Result<Vec<Matrix>> {
    let mut elements = vec![identity(rank)];
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(matrix_key(&elements[0]));
    let mut frontier = elements.clone();
    while let Some(e) = frontier.pop() {
        for g in generators {
            let h = mat_mul(&e, g);
            let key = matrix_key(&h);
            if seen.insert(key) {
                if elements.len() >= bound {
                    return Err(Error::GroupClosureExceeded { bound });
                }
                elements.push(h.clone());
                frontier.push(h);
            }
        }
    }
    Ok(elements)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("invalid rational '{s}' in group file"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n.parse().map_err(|_| bad())?, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
