//! Strategies, random builders and independent oracles shared by the
//! integration tests and the acceptance runner.

#![allow(dead_code)]

use std::collections::BTreeSet;

use braidrep::rep::evaluate_word;
use braidrep::{
    BraidWord, DenseMatrix, GaussianRational, MonomialMatrix, QTable, Representation, Scalar,
    ValueTuple,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::Rng;

pub fn gauss(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    &GaussianRational::ratio(re.0, re.1)
        + &(&GaussianRational::ratio(im.0, im.1) * &GaussianRational::i())
}

pub fn gauss_strategy() -> impl Strategy<Value = GaussianRational> {
    ((-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4)).prop_map(|(re, im)| gauss(re, im))
}

pub fn nonzero_gauss_strategy() -> impl Strategy<Value = GaussianRational> {
    gauss_strategy().prop_filter("nonzero", |g| !g.is_zero())
}

pub fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, gauss_strategy()), 0..4).prop_map(Scalar::from_terms)
}

pub fn nonzero_scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, nonzero_gauss_strategy()), 1..3)
        .prop_map(Scalar::from_terms)
        .prop_filter("nonzero", |s| !s.is_zero())
}

/// Invertible scalars `c·t^e`.
pub fn unit_scalar_strategy() -> impl Strategy<Value = Scalar> {
    (nonzero_gauss_strategy(), -3i64..=3).prop_map(|(c, e)| Scalar::monomial(c, e))
}

/// Nonzero evaluation points.
pub fn point_strategy() -> impl Strategy<Value = GaussianRational> {
    nonzero_gauss_strategy()
}

pub fn permutation_strategy(dim: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..dim).collect::<Vec<_>>()).prop_shuffle()
}

pub fn monomial_strategy(
    dim: usize,
    scale: BoxedStrategy<Scalar>,
) -> impl Strategy<Value = MonomialMatrix> {
    (permutation_strategy(dim), prop::collection::vec(scale, dim))
        .prop_map(|(perm, scale)| MonomialMatrix::new(perm, scale).expect("valid monomial matrix"))
}

/// A pair of same-sized monomial matrices with nonzero scales.
pub fn monomial_pair_strategy() -> impl Strategy<Value = (MonomialMatrix, MonomialMatrix)> {
    (1usize..=6).prop_flat_map(|d| {
        (
            monomial_strategy(d, nonzero_scalar_strategy().boxed()),
            monomial_strategy(d, nonzero_scalar_strategy().boxed()),
        )
    })
}

pub fn unit_monomial_strategy() -> impl Strategy<Value = MonomialMatrix> {
    (1usize..=6).prop_flat_map(|d| monomial_strategy(d, unit_scalar_strategy().boxed()))
}

/// Tuples of length 3..=8 over `{0, 1, 2, 3}`.
pub fn tuple_strategy() -> impl Strategy<Value = ValueTuple> {
    prop::collection::vec(0u32..4, 3..=8).prop_map(|v| ValueTuple::new(v).unwrap())
}

/// `(n, m, word)` with `3 <= n <= 6` and letters in `±1..=n-1`.
pub fn phi_word_strategy() -> impl Strategy<Value = (usize, usize, BraidWord)> {
    (3usize..=6).prop_flat_map(|n| {
        let letter = (1i32..n as i32, any::<bool>()).prop_map(|(k, neg)| if neg { -k } else { k });
        (
            Just(n),
            1..n,
            prop::collection::vec(letter, 0..12).prop_map(BraidWord::new),
        )
    })
}

/// 1000 cases, no regression files.
pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 1000,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

// ---- property bodies -------------------------------------------------------

pub fn ring_axioms(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    p: &GaussianRational,
) -> Result<(), TestCaseError> {
    let zero = Scalar::zero();
    let one = Scalar::one();
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert_eq!(&(a + &zero), a);
    prop_assert_eq!(&(a * &one), a);
    prop_assert!((a + &(-a)).is_zero());
    prop_assert!((a * &zero).is_zero());
    // conjugation: involutive ring automorphism fixing t
    prop_assert_eq!(&a.conj().conj(), a);
    prop_assert_eq!((a * b).conj(), &a.conj() * &b.conj());
    prop_assert_eq!((a + b).conj(), &a.conj() + &b.conj());
    // evaluation is a ring homomorphism
    let (ea, eb) = (a.eval(p).unwrap(), b.eval(p).unwrap());
    prop_assert_eq!((a * b).eval(p).unwrap(), &ea * &eb);
    prop_assert_eq!((a + b).eval(p).unwrap(), &ea + &eb);
    // exact division undoes multiplication
    if !b.is_zero() {
        prop_assert_eq!((a * b).div_exact(b), Some(a.clone()));
    }
    Ok(())
}

pub fn render_round_trip(a: &Scalar) -> Result<(), TestCaseError> {
    let text = a.to_string();
    let back: Scalar = text
        .parse()
        .map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(&back, a);
    prop_assert_eq!(back.to_string(), text);
    Ok(())
}

/// Reference product of dense matrices, written out with plain loops.
pub fn dense_product(a: &DenseMatrix, b: &DenseMatrix) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for k in 0..n {
                        acc += &(a.get(i, k) * b.get(k, j));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn dense_rows(m: &DenseMatrix) -> Vec<Vec<Scalar>> {
    m.rows().map(<[Scalar]>::to_vec).collect()
}

pub fn monomial_vs_dense(a: &MonomialMatrix, b: &MonomialMatrix) -> Result<(), TestCaseError> {
    let composed = a.compose(b).unwrap();
    prop_assert_eq!(
        dense_rows(&composed.to_dense()),
        dense_product(&a.to_dense(), &b.to_dense())
    );
    prop_assert_eq!(
        dense_rows(&composed.to_dense()),
        dense_rows(&a.to_dense().mul(&b.to_dense()).unwrap())
    );
    // adjoint is the conjugate transpose
    let adj = a.adjoint().to_dense();
    let d = a.to_dense();
    for i in 0..d.dim() {
        for j in 0..d.dim() {
            prop_assert_eq!(adj.get(i, j), &d.get(j, i).conj());
        }
    }
    // action on a vector agrees with the dense product
    let v: Vec<Scalar> = (0..d.dim())
        .map(|i| Scalar::monomial(GaussianRational::from_integer(i as i64 + 1), i as i64))
        .collect();
    let dense_apply: Vec<Scalar> = (0..d.dim())
        .map(|i| {
            let mut acc = Scalar::zero();
            for (j, vj) in v.iter().enumerate() {
                acc += &(d.get(i, j) * vj);
            }
            acc
        })
        .collect();
    prop_assert_eq!(a.apply(&v), dense_apply);
    Ok(())
}

pub fn monomial_inverse(a: &MonomialMatrix) -> Result<(), TestCaseError> {
    let inv = a.inverse().unwrap();
    prop_assert!(a.compose(&inv).unwrap().is_identity());
    prop_assert!(inv.compose(a).unwrap().is_identity());
    Ok(())
}

pub fn word_inverse(n: usize, m: usize, w: &BraidWord) -> Result<(), TestCaseError> {
    let rep = Representation::build_phi_m(n, m).unwrap();
    let mw = evaluate_word(&rep, w).unwrap();
    let inv = evaluate_word(&rep, &w.inverse()).unwrap();
    prop_assert!(mw.compose(&inv).unwrap().is_identity());
    prop_assert!(inv.compose(&mw).unwrap().is_identity());
    prop_assert!(evaluate_word(&rep, &w.concat(&w.inverse()))
        .unwrap()
        .is_identity());
    prop_assert_eq!(&w.inverse().inverse(), w);
    // the printed word parses back
    let back: BraidWord = w.to_string().parse().unwrap();
    prop_assert_eq!(&back, w);
    Ok(())
}

/// The coordinate swaps satisfy the braid and far-commutation relations on
/// every tuple, and the induced index permutations compose accordingly.
pub fn orbit_braid(x: &ValueTuple) -> Result<(), TestCaseError> {
    let n = x.len();
    let s = |y: &ValueTuple, k: usize| y.sigma(k).unwrap();
    for k in 1..n - 1 {
        prop_assert_eq!(s(&s(&s(x, k), k + 1), k), s(&s(&s(x, k + 1), k), k + 1));
        prop_assert_eq!(&s(&s(x, k), k), x);
    }
    for j in 1..n {
        for k in j + 2..n {
            prop_assert_eq!(s(&s(x, j), k), s(&s(x, k), j));
        }
    }
    if n <= 7 {
        let orbit = braidrep::OrbitIndex::generate(x);
        let perms: Vec<Vec<usize>> = (1..n)
            .map(|k| orbit.sigma_permutation(k).unwrap())
            .collect();
        for k in 0..perms.len().saturating_sub(1) {
            let (a, b) = (&perms[k], &perms[k + 1]);
            for i in 0..orbit.len() {
                prop_assert_eq!(a[b[a[i]]], b[a[b[i]]]);
            }
        }
    }
    Ok(())
}

/// Orbit enumeration against brute force over all position permutations and
/// against the multinomial count.
pub fn orbit_enumeration(x: &ValueTuple) -> Result<(), TestCaseError> {
    let orbit = braidrep::OrbitIndex::generate(x);
    prop_assert_eq!(orbit.len() as u128, x.orbit_cardinality());
    if x.len() <= 7 {
        let brute = brute_force_orbit(x.entries());
        let listed: Vec<Vec<u32>> = orbit.basis().iter().map(|y| y.entries().to_vec()).collect();
        prop_assert_eq!(listed, brute.into_iter().collect::<Vec<_>>());
    }
    for (i, y) in orbit.basis().iter().enumerate() {
        prop_assert_eq!(orbit.rank_of(y), Some(i));
    }
    Ok(())
}

// ---- oracles ---------------------------------------------------------------

/// All rearrangements of `v`, by recursion over positions.
pub fn brute_force_orbit(v: &[u32]) -> BTreeSet<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, acc: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
        if rest.is_empty() {
            out.insert(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = BTreeSet::new();
    go(&mut v.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// `n! / ∏ multiplicity!`, computed with floating-free integer factorials.
pub fn multinomial(v: &[u32]) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut counts = std::collections::BTreeMap::new();
    for x in v {
        *counts.entry(x).or_insert(0usize) += 1;
    }
    counts.values().fold(fact(v.len()), |acc, &c| acc / fact(c))
}

/// Braid relations checked with dense products of formal matrices.
pub fn dense_relations_hold(rep: &Representation) -> bool {
    let g: Vec<DenseMatrix> = rep
        .generators()
        .iter()
        .map(MonomialMatrix::to_dense)
        .collect();
    let mul =
        |a: &DenseMatrix, b: &DenseMatrix| DenseMatrix::from_rows(dense_product(a, b)).unwrap();
    for i in 0..g.len() {
        if i + 1 < g.len() {
            let l = mul(&mul(&g[i], &g[i + 1]), &g[i]);
            let r = mul(&mul(&g[i + 1], &g[i]), &g[i + 1]);
            if l != r {
                return false;
            }
        }
        for j in i + 2..g.len() {
            if mul(&g[i], &g[j]) != mul(&g[j], &g[i]) {
                return false;
            }
        }
    }
    true
}

/// Random nonzero Laurent polynomial with up to two terms.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let terms = (0..rng.gen_range(1..=2)).map(|_| {
            let c = gauss(
                (rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                (rng.gen_range(-2..=2), 1),
            );
            (rng.gen_range(-2..=3), c)
        });
        let s = Scalar::from_terms(terms);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random seed of length `3..=6` over two or three values, with a random
/// q-table on those values.
pub fn random_generic(rng: &mut impl Rng) -> (ValueTuple, QTable) {
    let values = rng.gen_range(2..=3);
    random_generic_with(rng, values)
}

/// As [`random_generic`] with exactly `values` distinct seed values.
pub fn random_generic_with(rng: &mut impl Rng, values: u32) -> (ValueTuple, QTable) {
    let n = rng.gen_range(3..=6);
    let mut entries: Vec<u32> = (0..values).collect();
    while entries.len() < n {
        entries.push(rng.gen_range(0..values));
    }
    let vals: Vec<u32> = (0..values).collect();
    let q = QTable::from_fn(&vals, |_, _| random_scalar(rng));
    (ValueTuple::new(entries).unwrap(), q)
}

pub fn tuple(v: &[u32]) -> ValueTuple {
    ValueTuple::new(v.to_vec()).unwrap()
}

/// `C(n, k)` by the multiplicative formula.
pub fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}
