//! Acceptance gate: one test per criterion, each printing a pass line
//! (visible with `--nocapture`) and asserting its runtime budget.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use veronalt::poly::rat;
use veronalt::{
    associator, circ, commutator, invariant_component, is_zero_split, lpow, new_generators,
    pigeonhole_witness, split_component_rank, teichmuller_check, veronese_component, FreePoly,
    Generator, IdentitySet, LinearGroupAction, MultiDegree, StructureEngine, TIdealEngine,
    TreeMonomial, VeroneseConfig,
};

fn finish(n: u32, label: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("criterion {n} ({label}): PASS ({:.2}s)", elapsed.as_secs_f64());
    assert!(
        elapsed < budget,
        "criterion {n} exceeded its {:.0}s budget: {:.2}s",
        budget.as_secs_f64(),
        elapsed.as_secs_f64()
    );
}

fn gen(i: usize) -> FreePoly {
    FreePoly::generator(i)
}

#[test]
fn criterion_01_moufang_suite() {
    let start = Instant::now();
    let eng = TIdealEngine::new(IdentitySet::alternative(), 4);
    let (x, y, r, s) = (gen(0), gen(1), gen(2), gen(3));

    // (rx, s, x) = x(r, s, x)
    let eq1 = associator(&r.mul(&x), &s, &x).sub(&x.mul(&associator(&r, &s, &x)));
    assert!(eng.is_identity(&eq1).unwrap(), "Moufang (1) fails");

    // (r, s, x^2) = (r, s, x) ∘ x
    let eq2 = associator(&r, &s, &x.mul(&x)).sub(&circ(&associator(&r, &s, &x), &x));
    assert!(eng.is_identity(&eq2).unwrap(), "Moufang (2) fails");

    // (r, s, xyx) = x(r, s, y)x + {xy(r, s, x)},
    // with {abc} = (ab)c + (cb)a and xyx = (xy)x.
    let xyx = x.mul(&y).mul(&x);
    let asc = associator(&r, &s, &x);
    let braced = x.mul(&y).mul(&asc).add(&asc.mul(&y).mul(&x));
    let eq3 = associator(&r, &s, &xyx)
        .sub(&x.mul(&associator(&r, &s, &y)).mul(&x))
        .sub(&braced);
    assert!(eng.is_identity(&eq3).unwrap(), "Moufang (3) fails");

    finish(1, "Moufang suite", start, Duration::from_secs(10));
}

fn random_monomial(rng: &mut ChaCha8Rng, rank: usize, degree: u32) -> TreeMonomial {
    if degree == 1 {
        TreeMonomial::leaf(Generator(rng.gen_range(0..rank)))
    } else {
        let left = rng.gen_range(1..degree);
        TreeMonomial::node(
            random_monomial(rng, rank, left),
            random_monomial(rng, rank, degree - left),
        )
    }
}

#[test]
fn criterion_02_teichmuller() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1c);
    for _ in 0..1000 {
        // Four monomial degrees, each >= 1, totalling at most 8.
        let total = rng.gen_range(4..=8u32);
        let mut degs = [1u32; 4];
        for _ in 0..total - 4 {
            degs[rng.gen_range(0..4)] += 1;
        }
        let [m, a, b, c]: [FreePoly; 4] =
            degs.map(|d| FreePoly::monomial(random_monomial(&mut rng, 4, d)));
        assert!(
            teichmuller_check(&m, &a, &b, &c).is_zero(),
            "Teichmüller residue nonzero on {m:?}, {a:?}, {b:?}, {c:?}"
        );
    }
    finish(2, "Teichmüller on 1000 quadruples", start, Duration::from_secs(10));
}

#[test]
fn criterion_03_artin_rank2() {
    let start = Instant::now();
    let alt = TIdealEngine::new(IdentitySet::alternative(), 2);
    let assoc = TIdealEngine::new(IdentitySet::associative(), 2);
    for d in 1..=6 {
        let mut total = 0usize;
        for m in MultiDegree::all_of_degree(2, d) {
            let da = alt.normalizer(&m).unwrap().quotient_dim();
            let ds = assoc.normalizer(&m).unwrap().quotient_dim();
            assert_eq!(da, ds, "alternative vs associative mismatch at {m}");
            total += da;
        }
        assert_eq!(total, 1 << d, "degree {d} total is not 2^d");
    }
    finish(3, "Artin rank-2 oracle", start, Duration::from_secs(300));
}

#[test]
fn criterion_04_cross_backend() {
    let start = Instant::now();
    let eng = Arc::new(TIdealEngine::new(IdentitySet::alternative(), 3));
    for d in 1..=5 {
        for m in MultiDegree::all_of_degree(3, d) {
            let q = eng.normalizer(&m).unwrap().quotient_dim();
            let r = split_component_rank(&m).unwrap();
            assert_eq!(q, r, "quotient dim vs split rank mismatch at {m}");
        }
    }
    let ml = MultiDegree::new(vec![1, 1, 1]);
    assert_eq!(split_component_rank(&ml).unwrap(), 7);
    let se = StructureEngine::new(eng);
    assert_eq!(se.associator_ideal_component(&ml).unwrap().dim(), 1);
    finish(4, "cross-backend oracle", start, Duration::from_secs(600));
}

/// All count vectors (c_1..c_k) with sum t, fed to `f` as a residue list.
fn for_each_multiset(k: usize, t: u32, counts: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if counts.len() == k - 1 {
        counts.push(t);
        f(counts);
        counts.pop();
        return;
    }
    for c in 0..=t {
        counts.push(c);
        for_each_multiset(k, t - c, counts, f);
        counts.pop();
    }
}

#[test]
fn criterion_05_pigeonhole() {
    let start = Instant::now();
    for n in 2..=4u32 {
        let bound = (n - 1) * (n - 1) + 1;
        for t in 0..=bound + 1 {
            let mut scratch = Vec::new();
            for_each_multiset((n - 1) as usize, t, &mut scratch, &mut |counts| {
                let residues: Vec<u32> = counts
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &c)| std::iter::repeat(i as u32 + 1).take(c as usize))
                    .collect();
                let expected = counts.iter().position(|&c| c >= n).map(|i| i as u32 + 1);
                let got = pigeonhole_witness(n, &residues).unwrap();
                assert_eq!(got, expected, "n={n} residues={residues:?}");
                if t >= bound {
                    assert!(got.is_some(), "bound t={t} >= {bound} must force a witness");
                }
            });
        }
    }
    // An explicit "none" case below the bound.
    assert_eq!(pigeonhole_witness(3, &[1, 2, 1, 2]).unwrap(), None);
    finish(5, "pigeonhole exhaustive", start, Duration::from_secs(1));
}

#[test]
fn criterion_06_veronese_baseline() {
    let start = Instant::now();
    let cfg = VeroneseConfig::new(2, 8).unwrap();
    for ids in [IdentitySet::associative(), IdentitySet::alternative()] {
        let name = ids.name().to_string();
        let eng = TIdealEngine::new(ids, 2);
        let report = new_generators(&eng, &cfg).unwrap();
        let counts: Vec<usize> = report.rows.iter().map(|r| r.new_count).collect();
        assert_eq!(counts, [4, 0, 0, 0], "{name} new-generator counts");
    }
    finish(6, "Veronese baseline", start, Duration::from_secs(300));
}

#[test]
fn criterion_07_right_alternative_growth() {
    let start = Instant::now();
    let eng = TIdealEngine::new(IdentitySet::right_alternative(), 2);
    let cfg = VeroneseConfig::new(2, 8).unwrap();
    let report = new_generators(&eng, &cfg).unwrap();
    let at = |d: u32| {
        report
            .rows
            .iter()
            .find(|r| r.degree == d)
            .map(|r| r.new_count)
            .unwrap()
    };
    assert!(at(4) > 0, "expected new generators at degree 4");
    assert!(at(6) > 0, "expected new generators at degree 6");
    finish(7, "right-alternative growth", start, Duration::from_secs(900));
}

#[test]
fn criterion_08_scalar_invariance() {
    let start = Instant::now();
    let eng = TIdealEngine::with_cap(IdentitySet::alternative(), 2, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1);
    for n in [2u32, 3] {
        let action = LinearGroupAction::scalar(2, n).unwrap();
        for d in 1..=6 {
            let inv = invariant_component(&action, &eng, d).unwrap();
            let ver = veronese_component(&eng, n, d).unwrap();
            assert!(
                inv.equals_slices(&ver),
                "invariants != Veronese at order {n}, degree {d}"
            );
        }
        for _ in 0..250 {
            let mut p = FreePoly::zero();
            for _ in 0..rng.gen_range(1..=4usize) {
                let d = rng.gen_range(1..=6u32);
                p.add_term(random_monomial(&mut rng, 2, d), rat(rng.gen_range(-9..=9)));
            }
            let once = action.reynolds(&p).unwrap();
            let twice = action.reynolds(&once).unwrap();
            assert!(twice.sub(&once).is_zero(), "Reynolds not idempotent");
        }
    }
    finish(8, "scalar invariance", start, Duration::from_secs(120));
}

#[test]
fn criterion_09_commutator_fourth_power() {
    let start = Instant::now();
    let (x, y) = (gen(0), gen(1));
    let c4 = lpow(&commutator(&x, &y), 4).unwrap();
    assert!(is_zero_split(&associator(&c4, &x, &y)).unwrap());
    assert!(is_zero_split(&associator(&x, &c4, &y)).unwrap());
    finish(9, "[x,y]^4 in the nucleus", start, Duration::from_secs(300));
}

#[test]
fn criterion_10_structure_containments() {
    let start = Instant::now();
    let cutoff = 6u32;
    let eng = Arc::new(TIdealEngine::with_cap(IdentitySet::alternative(), 3, cutoff));
    let se = StructureEngine::new(eng.clone());

    for d in 1..cutoff {
        let nucleus = se.nucleus_component(d, cutoff).unwrap();
        let center = se.center_component(d, cutoff).unwrap();
        let assoc_nuc = se.assoc_nucleus_component(d, cutoff).unwrap();
        for ((nuc, cen), anu) in nucleus.iter().zip(&center).zip(&assoc_nuc) {
            assert_eq!(nuc.multidegree, cen.multidegree);
            assert_eq!(nuc.multidegree, anu.multidegree);
            assert!(nuc.contains_slice(cen), "center ⊄ nucleus at {}", nuc.multidegree);
            assert!(
                nuc.contains_slice(anu),
                "associative nucleus ⊄ nucleus at {}",
                nuc.multidegree
            );
        }

        // [v, g] stays in the truncated nucleus while the truncation still
        // constrains the result: degree d+1 needs margin >= 2 below cutoff.
        if d + 1 <= cutoff - 2 {
            for slice in &nucleus {
                let norm = eng.normalizer(&slice.multidegree).unwrap();
                for v in &slice.basis {
                    let lifted = norm.lift(v);
                    for g in 0..3 {
                        let bracket = commutator(&lifted, &gen(g));
                        let m = slice
                            .multidegree
                            .add(&MultiDegree::of_generator(Generator(g), 3));
                        let target = se.nucleus_slice(&m, cutoff).unwrap();
                        let nf = eng.normal_form(&bracket).unwrap();
                        assert!(target.contains(&nf), "[v,x{g}] leaves the nucleus at {m}");
                    }
                }
            }
        }
    }

    // D_2 ⊆ D_1 componentwise over the whole truncation window.
    for d in 1..=cutoff {
        for m in MultiDegree::all_of_degree(3, d) {
            let d1 = se.d_chain_component(1, &m).unwrap();
            let d2 = se.d_chain_component(2, &m).unwrap();
            assert!(d1.contains_slice(&d2), "D2 ⊄ D1 at {m}");
        }
    }

    finish(10, "structure containments", start, Duration::from_secs(900));
}
