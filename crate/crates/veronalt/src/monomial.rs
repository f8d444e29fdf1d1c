//! Tree monomials: fully bracketed words on free generators, graded by
//! multidegree, with a canonical enumeration per graded component.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// A free generator, identified by its index in `[0, rank)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator(pub usize);

impl Generator {
    /// Display name: `x, y, z` for the first three, `x4, x5, ...` beyond.
    pub fn name(&self) -> String {
        match self.0 {
            0 => "x".to_string(),
            1 => "y".to_string(),
            2 => "z".to_string(),
            i => format!("x{}", i + 1),
        }
    }
}

/// Occurrence counts of each generator in a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiDegree {
    counts: Vec<u32>,
}

impl MultiDegree {
    pub fn new(counts: Vec<u32>) -> Self {
        MultiDegree { counts }
    }

    pub fn zero(rank: usize) -> Self {
        MultiDegree {
            counts: vec![0; rank],
        }
    }

    pub fn of_generator(g: Generator, rank: usize) -> Self {
        let mut counts = vec![0; rank.max(g.0 + 1)];
        counts[g.0] = 1;
        MultiDegree { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn rank(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Componentwise sum; the ranks must agree.
    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        assert_eq!(self.counts.len(), other.counts.len(), "rank mismatch");
        MultiDegree {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference, or `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        if self.counts.len() != other.counts.len() {
            return None;
        }
        let mut counts = Vec::with_capacity(self.counts.len());
        for (a, b) in self.counts.iter().zip(&other.counts) {
            counts.push(a.checked_sub(*b)?);
        }
        Some(MultiDegree { counts })
    }

    /// All multidegrees of the given rank and total degree, in lexicographic
    /// order of their count vectors.
    pub fn all_of_degree(rank: usize, total: u32) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        let mut counts = vec![0u32; rank];
        fn rec(counts: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiDegree>) {
            if pos + 1 == counts.len() {
                counts[pos] = remaining;
                out.push(MultiDegree {
                    counts: counts.clone(),
                });
                return;
            }
            for c in 0..=remaining {
                counts[pos] = c;
                rec(counts, pos + 1, remaining - c, out);
            }
        }
        if rank == 0 {
            return out;
        }
        rec(&mut counts, 0, total, &mut out);
        out
    }
}

impl std::fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A fully bracketed word: a binary tree with generator leaves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TreeMonomial {
    Leaf(Generator),
    Node(Arc<TreeMonomial>, Arc<TreeMonomial>),
}

impl TreeMonomial {
    pub fn leaf(g: Generator) -> Self {
        TreeMonomial::Leaf(g)
    }

    pub fn node(left: TreeMonomial, right: TreeMonomial) -> Self {
        TreeMonomial::Node(Arc::new(left), Arc::new(right))
    }

    /// Number of leaves.
    pub fn degree(&self) -> u32 {
        match self {
            TreeMonomial::Leaf(_) => 1,
            TreeMonomial::Node(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn multidegree(&self, rank: usize) -> MultiDegree {
        let mut counts = vec![0u32; rank];
        self.collect_counts(&mut counts);
        MultiDegree { counts }
    }

    fn collect_counts(&self, counts: &mut Vec<u32>) {
        match self {
            TreeMonomial::Leaf(g) => {
                if g.0 >= counts.len() {
                    counts.resize(g.0 + 1, 0);
                }
                counts[g.0] += 1;
            }
            TreeMonomial::Node(l, r) => {
                l.collect_counts(counts);
                r.collect_counts(counts);
            }
        }
    }

    /// Largest generator index occurring, or `None` for no leaves (impossible).
    pub fn max_generator(&self) -> usize {
        match self {
            TreeMonomial::Leaf(g) => g.0,
            TreeMonomial::Node(l, r) => l.max_generator().max(r.max_generator()),
        }
    }

    /// Leaves in left-to-right order (the underlying associative word).
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::new();
        self.collect_word(&mut w);
        w
    }

    fn collect_word(&self, w: &mut Vec<usize>) {
        match self {
            TreeMonomial::Leaf(g) => w.push(g.0),
            TreeMonomial::Node(l, r) => {
                l.collect_word(w);
                r.collect_word(w);
            }
        }
    }
}

impl std::fmt::Display for TreeMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TreeMonomial::Leaf(g) => write!(f, "{}", g.name()),
            TreeMonomial::Node(l, r) => write!(f, "({l}*{r})"),
        }
    }
}

/// Bracketing shapes of binary trees with `n` leaves, leaves unlabelled.
#[derive(Clone, PartialEq, Eq, Debug)]
enum Shape {
    Leaf,
    Node(Arc<Shape>, Arc<Shape>),
}

/// Shapes with `n` leaves in canonical (Catalan unranking) order: left
/// subtree size ascending, then left shape order, then right shape order.
fn shapes(n: u32) -> Arc<Vec<Arc<Shape>>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<Vec<Arc<Shape>>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().unwrap().get(&n) {
        return v.clone();
    }
    let result = if n == 1 {
        Arc::new(vec![Arc::new(Shape::Leaf)])
    } else {
        let mut out = Vec::new();
        for left in 1..n {
            let ls = shapes(left);
            let rs = shapes(n - left);
            for l in ls.iter() {
                for r in rs.iter() {
                    out.push(Arc::new(Shape::Node(l.clone(), r.clone())));
                }
            }
        }
        Arc::new(out)
    };
    memo.lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| result.clone());
    result
}

/// All leaf words with the given occurrence counts, lexicographically.
fn words(m: &MultiDegree) -> Vec<Vec<usize>> {
    let total = m.total() as usize;
    let mut out = Vec::new();
    let mut remaining = m.counts.clone();
    let mut word = Vec::with_capacity(total);
    fn rec(
        remaining: &mut Vec<u32>,
        word: &mut Vec<usize>,
        total: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if word.len() == total {
            out.push(word.clone());
            return;
        }
        for g in 0..remaining.len() {
            if remaining[g] > 0 {
                remaining[g] -= 1;
                word.push(g);
                rec(remaining, word, total, out);
                word.pop();
                remaining[g] += 1;
            }
        }
    }
    rec(&mut remaining, &mut word, total, &mut out);
    out
}

fn graft(shape: &Shape, word: &[usize], pos: &mut usize) -> TreeMonomial {
    match shape {
        Shape::Leaf => {
            let g = Generator(word[*pos]);
            *pos += 1;
            TreeMonomial::Leaf(g)
        }
        Shape::Node(l, r) => {
            let lt = graft(l, word, pos);
            let rt = graft(r, word, pos);
            TreeMonomial::node(lt, rt)
        }
    }
}

/// All monomials of the given multidegree in canonical order: tree shape by
/// Catalan unranking, then leaf word lexicographically.
pub fn enumerate_monomials(rank: usize, m: &MultiDegree) -> Result<Vec<TreeMonomial>> {
    if m.total() == 0 {
        return Err(Error::EmptyMultiDegree);
    }
    assert!(
        m.rank() <= rank,
        "multidegree rank {} exceeds ambient rank {rank}",
        m.rank()
    );
    let ws = words(m);
    let ss = shapes(m.total());
    let mut out = Vec::with_capacity(ss.len() * ws.len());
    for s in ss.iter() {
        for w in &ws {
            let mut pos = 0;
            out.push(graft(s, w, &mut pos));
        }
    }
    Ok(out)
}

/// A graded component's canonical monomial list plus the inverse index map.
#[derive(Debug)]
pub struct MonomialBasis {
    pub multidegree: MultiDegree,
    pub monomials: Vec<TreeMonomial>,
    index: HashMap<TreeMonomial, usize>,
}

impl MonomialBasis {
    pub fn new(rank: usize, m: &MultiDegree) -> Result<Self> {
        let monomials = enumerate_monomials(rank, m)?;
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        Ok(MonomialBasis {
            multidegree: m.clone(),
            monomials,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, t: &TreeMonomial) -> Option<usize> {
        self.index.get(t).copied()
    }
}

pub fn catalan(n: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(counts: &[u32]) -> MultiDegree {
        MultiDegree::new(counts.to_vec())
    }

    #[test]
    fn enumerate_deg_1_1() {
        let mons = enumerate_monomials(2, &md(&[1, 1])).unwrap();
        let strs: Vec<String> = mons.iter().map(|t| t.to_string()).collect();
        assert_eq!(strs, vec!["(x*y)", "(y*x)"]);
    }

    #[test]
    fn enumerate_deg_2_1() {
        let mons = enumerate_monomials(2, &md(&[2, 1])).unwrap();
        assert_eq!(mons.len(), 6);
    }

    #[test]
    fn enumerate_deg_1_1_1() {
        let mons = enumerate_monomials(3, &md(&[1, 1, 1])).unwrap();
        assert_eq!(mons.len(), 12);
    }

    #[test]
    fn empty_multidegree_errors() {
        assert!(matches!(
            enumerate_monomials(2, &md(&[0, 0])),
            Err(Error::EmptyMultiDegree)
        ));
    }

    #[test]
    fn counts_match_catalan_times_multinomial() {
        for counts in [[3u32, 2], [4, 0], [2, 2], [1, 4]] {
            let m = md(&counts);
            let n = m.total();
            let mut multinomial: u128 = 1;
            let mut k: u128 = 0;
            for &c in m.counts() {
                for j in 1..=c as u128 {
                    k += 1;
                    multinomial = multinomial * k / j;
                }
            }
            let expected = catalan(n - 1) * multinomial;
            let mons = enumerate_monomials(2, &m).unwrap();
            assert_eq!(mons.len() as u128, expected, "multidegree {m}");
        }
    }

    #[test]
    fn enumeration_is_deterministic_and_indexed() {
        let m = md(&[2, 2]);
        let a = enumerate_monomials(2, &m).unwrap();
        let b = enumerate_monomials(2, &m).unwrap();
        assert_eq!(a, b);
        let basis = MonomialBasis::new(2, &m).unwrap();
        for (i, t) in basis.monomials.iter().enumerate() {
            assert_eq!(basis.index_of(t), Some(i));
        }
    }
}
