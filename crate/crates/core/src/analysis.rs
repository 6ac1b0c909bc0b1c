//! Irreducibility certificates, commutant dimension, corank and the
//! equivalence of the `m = 1` member with the standard representation.

use std::collections::HashMap;

use crate::error::Error;
use crate::linalg::{self, SparseRow};
use crate::monomial::{DenseMatrix, MonomialMatrix, RankMode};
use crate::orbit::ValueTuple;
use crate::rep::{build_standard, classify_adjointness, Representation};
use crate::scalar::{GaussianRational, Scalar};

/// Which pairs of basis tuples the separation condition is required on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationMode {
    /// Every pair `x ≠ y` of the orbit.
    AllPairs,
    /// Only pairs adjacent in ascending lexicographic order.
    ConsecutiveLex,
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub mode: SeparationMode,
    pub holds: bool,
    pub witness_pair: Option<(ValueTuple, ValueTuple)>,
    pub self_adjoint: bool,
    /// Basis indices grouped by equal `(|q_1|², …, |q_{n−1}|²)` signature;
    /// only groups of size at least two are listed.
    pub indistinguishable: Vec<Vec<usize>>,
}

/// `|scale_k(x)|²` for every generator `k`, i.e. `|q(x_k, x_{k+1})|²`.
fn abs_sq_signatures(rep: &Representation) -> Vec<Vec<Scalar>> {
    (0..rep.dim())
        .map(|x| {
            rep.generators()
                .iter()
                .map(|g| g.scale()[x].abs_sq())
                .collect()
        })
        .collect()
}

pub fn separation_check(rep: &Representation, mode: SeparationMode) -> SeparationReport {
    let sigs = abs_sq_signatures(rep);
    let mut groups: HashMap<&[Scalar], Vec<usize>> = HashMap::new();
    for (x, s) in sigs.iter().enumerate() {
        groups.entry(s.as_slice()).or_default().push(x);
    }
    let mut indistinguishable: Vec<Vec<usize>> =
        groups.into_values().filter(|g| g.len() > 1).collect();
    indistinguishable.sort();
    let witness = match mode {
        SeparationMode::AllPairs => indistinguishable.first().map(|g| (g[0], g[1])),
        SeparationMode::ConsecutiveLex => (1..rep.dim())
            .find(|&i| sigs[i - 1] == sigs[i])
            .map(|i| (i - 1, i)),
    };
    let orbit = rep.orbit();
    SeparationReport {
        mode,
        holds: witness.is_none(),
        witness_pair: witness.map(|(x, y)| (orbit.get(x).clone(), orbit.get(y).clone())),
        self_adjoint: classify_adjointness(rep).iter().all(|c| c.self_adjoint),
        indistinguishable,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    Reducible,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Irreducible => "irreducible",
            Self::Reducible => "reducible",
            Self::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    DimensionOne,
    Separation,
    PhiMSpecialCase,
    Commutant,
    Witness,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DimensionOne => "dimension_one",
            Self::Separation => "separation",
            Self::PhiMSpecialCase => "phi_m_special_case",
            Self::Commutant => "commutant",
            Self::Witness => "witness",
        }
    }
}

/// Refutes invariance of `span{v_x, v_y}` for a complement pair: `σ_k` moves
/// `x` outside the pair, so `φ(τ_k)(a·v_x + b·v_y)` with `a, b ≠ 0` has a
/// component off the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRefutation {
    pub x: ValueTuple,
    pub y: ValueTuple,
    pub k: usize,
    pub image_support: (ValueTuple, ValueTuple),
}

/// A line spanned by `vector` that every generator maps to a multiple of itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantLine {
    pub vector: Vec<Scalar>,
    pub eigenvalues: Vec<Scalar>,
}

impl InvariantLine {
    /// Re-applies every generator and checks `g·v = λ_g·v`.
    pub fn verify(&self, rep: &Representation) -> bool {
        self.eigenvalues.len() == rep.generators().len()
            && !self.vector.iter().all(Scalar::is_zero)
            && rep
                .generators()
                .iter()
                .zip(&self.eigenvalues)
                .all(|(g, lambda)| {
                    let image = g.apply(&self.vector);
                    image
                        .iter()
                        .zip(&self.vector)
                        .all(|(a, v)| *a == v * lambda)
                })
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibilityCertificate {
    pub verdict: Verdict,
    pub method: Method,
    pub evaluation_point: Option<GaussianRational>,
    pub commutant_dim: Option<usize>,
    pub failing_pair: Option<(ValueTuple, ValueTuple)>,
    pub refutations: Vec<PairRefutation>,
    pub witness: Option<InvariantLine>,
    pub symmetry: Option<ComplementSymmetry>,
}

impl IrreducibilityCertificate {
    fn new(verdict: Verdict, method: Method) -> Self {
        Self {
            verdict,
            method,
            evaluation_point: None,
            commutant_dim: None,
            failing_pair: None,
            refutations: Vec::new(),
            witness: None,
            symmetry: None,
        }
    }
}

/// Checks the `n = 2m` argument for `φ_m`: every indistinguishable class is a
/// complement pair, and each pair's span is moved off itself by some `τ_k`.
fn complement_pair_argument(
    rep: &Representation,
    sep: &SeparationReport,
) -> Option<Vec<PairRefutation>> {
    let orbit = rep.orbit();
    let mut out = Vec::new();
    for class in &sep.indistinguishable {
        let [xi, yi] = class.as_slice() else {
            return None;
        };
        let (x, y) = (orbit.get(*xi), orbit.get(*yi));
        if x.complement().ok()? != *y {
            return None;
        }
        let k = (1..rep.strands()).find(|&k| {
            let sx = x.sigma(k).expect("k in range");
            sx != *x && sx != *y
        });
        let k = k.expect("n > 2 leaves some σ_k moving x off the pair");
        let g = rep.generator(k).ok()?;
        let mut v = vec![Scalar::zero(); rep.dim()];
        // a = 1, b = t stand in for arbitrary nonzero coefficients; only the
        // support of the image matters.
        v[*xi] = Scalar::one();
        v[*yi] = Scalar::t();
        let image = g.apply(&v);
        let support: Vec<usize> = (0..rep.dim()).filter(|&i| !image[i].is_zero()).collect();
        if support.iter().all(|i| i == xi || i == yi) {
            return None;
        }
        out.push(PairRefutation {
            x: x.clone(),
            y: y.clone(),
            k,
            image_support: (
                orbit.get(g.perm()[*xi]).clone(),
                orbit.get(g.perm()[*yi]).clone(),
            ),
        });
    }
    Some(out)
}

/// The involution `J: v_x ↦ v_x̄` exchanging zeros and ones, for binary orbits
/// closed under complement. When `J` commutes with every generator, its `±1`
/// eigenspaces `span{v_x ± v_x̄}` are proper invariant subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementSymmetry {
    pub involution: MonomialMatrix,
    /// Unordered pairs `{x, x̄}` as basis indices, smaller index first.
    pub pairs: Vec<(usize, usize)>,
    /// Dimensions of the `+1` and `−1` eigenspaces.
    pub eigenspace_dims: (usize, usize),
}

impl ComplementSymmetry {
    /// `J² = 1`, both eigenspaces nonzero, and `J·g = g·J` for every generator.
    pub fn verify(&self, rep: &Representation) -> bool {
        let j = &self.involution;
        let squares_to_one = j.compose(j).is_ok_and(|p| p.is_identity());
        let proper = self.eigenspace_dims.0 > 0 && self.eigenspace_dims.1 > 0;
        squares_to_one
            && proper
            && rep
                .generators()
                .iter()
                .all(|g| match (j.compose(g), g.compose(j)) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => false,
                })
    }
}

pub fn complement_symmetry(rep: &Representation) -> Option<ComplementSymmetry> {
    let orbit = rep.orbit();
    if !rep.seed().is_binary() {
        return None;
    }
    let perm = orbit
        .basis()
        .iter()
        .map(|x| orbit.rank_of(&x.complement().ok()?))
        .collect::<Option<Vec<usize>>>()?;
    let pairs: Vec<(usize, usize)> = (0..perm.len())
        .filter(|&x| x < perm[x])
        .map(|x| (x, perm[x]))
        .collect();
    let fixed = (0..perm.len()).filter(|&x| perm[x] == x).count();
    let involution = MonomialMatrix::new(perm, vec![Scalar::one(); rep.dim()]).ok()?;
    let sym = ComplementSymmetry {
        involution,
        eigenspace_dims: (fixed + pairs.len(), pairs.len()),
        pairs,
    };
    sym.verify(rep).then_some(sym)
}

/// `Σ_x v_x` is invariant whenever each generator has a single scale value.
pub fn sum_vector_witness(rep: &Representation) -> Option<InvariantLine> {
    let eigenvalues = rep
        .generators()
        .iter()
        .map(|g| {
            let first = &g.scale()[0];
            g.scale().iter().all(|s| s == first).then(|| first.clone())
        })
        .collect::<Option<Vec<_>>>()?;
    let line = InvariantLine {
        vector: vec![Scalar::one(); rep.dim()],
        eigenvalues,
    };
    line.verify(rep).then_some(line)
}

/// Every generator is self-adjoint or unitary after `t := at`.
fn adjoint_closed_at(rep: &Representation, at: &GaussianRational) -> Result<bool, Error> {
    for g in rep.generators() {
        let vals: Vec<GaussianRational> = g
            .scale()
            .iter()
            .map(|s| s.eval(at))
            .collect::<Result<_, _>>()?;
        let unitary = vals.iter().all(|v| v.norm_sq() == num::One::one());
        let self_adjoint = (0..g.dim()).all(|x| {
            let y = g.perm()[x];
            g.perm()[y] == x && vals[y] == vals[x].conj()
        });
        if !unitary && !self_adjoint {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides irreducibility: dimension one, then separation with self-adjoint
/// generators, then the complement symmetry (which settles `φ_m` with
/// `n = 2m` as reducible), then an invariant-line search and the commutant at
/// `at`.
pub fn certify_irreducible(
    rep: &Representation,
    at: &GaussianRational,
) -> Result<IrreducibilityCertificate, Error> {
    if rep.dim() == 1 {
        return Ok(IrreducibilityCertificate::new(
            Verdict::Irreducible,
            Method::DimensionOne,
        ));
    }
    let sep = separation_check(rep, SeparationMode::AllPairs);
    if sep.holds && sep.self_adjoint {
        return Ok(IrreducibilityCertificate::new(
            Verdict::Irreducible,
            Method::Separation,
        ));
    }
    // For φ_m with n = 2m no pair span {v_x, v_x̄} is invariant, but that does
    // not exclude subspaces spread over all pairs: the complement involution
    // commutes with every generator and splits the space.
    let is_half = rep
        .phi_m_parameter()
        .is_some_and(|m| rep.strands() == 2 * m && rep.strands() > 2);
    if let Some(sym) = complement_symmetry(rep) {
        let method = if is_half {
            Method::PhiMSpecialCase
        } else {
            Method::Witness
        };
        let mut cert = IrreducibilityCertificate::new(Verdict::Reducible, method);
        cert.failing_pair = sep.witness_pair.clone();
        if is_half {
            cert.refutations = complement_pair_argument(rep, &sep).unwrap_or_default();
        }
        cert.symmetry = Some(sym);
        return Ok(cert);
    }
    if let Some(line) = sum_vector_witness(rep) {
        let mut cert = IrreducibilityCertificate::new(Verdict::Reducible, Method::Witness);
        cert.failing_pair = sep.witness_pair.clone();
        cert.witness = Some(line);
        return Ok(cert);
    }
    let dim = commutant_dimension(rep, at)?;
    // A reducible verdict needs an explicit subspace, so a larger commutant
    // stays undecided.
    let verdict = if dim == 1 && adjoint_closed_at(rep, at)? {
        Verdict::Irreducible
    } else {
        Verdict::Undecided
    };
    let mut cert = IrreducibilityCertificate::new(verdict, Method::Commutant);
    cert.evaluation_point = Some(at.clone());
    cert.commutant_dim = Some(dim);
    cert.failing_pair = sep.witness_pair;
    Ok(cert)
}

fn evaluated_scales(
    rep: &Representation,
    at: &GaussianRational,
) -> Result<Vec<Vec<GaussianRational>>, Error> {
    rep.generators()
        .iter()
        .map(|g| g.scale().iter().map(|s| s.eval(at)).collect())
        .collect()
}

/// Dimension of the commutant `{M : M·g = g·M for every generator g}` at `t := at`.
///
/// Matrix positions `(z, x)` are linked by `M[π z, π x] = (s_z / s_x)·M[z, x]`
/// for each generator `g·e_x = s_x·e_{π x}`. Each orbit of positions carries
/// one free parameter if its weights are consistent around every cycle, and
/// none otherwise.
pub fn commutant_dimension(rep: &Representation, at: &GaussianRational) -> Result<usize, Error> {
    if at.is_zero() {
        return Err(Error::EvalAtZero);
    }
    let scales = evaluated_scales(rep, at)?;
    if scales.iter().flatten().any(GaussianRational::is_zero) {
        // A generator degenerates at this point; only the linear system applies.
        return commutant_dimension_dense(rep, at);
    }
    let n = rep.dim();
    let mut value: Vec<Option<GaussianRational>> = vec![None; n * n];
    let mut dim = 0;
    for start in 0..n * n {
        if value[start].is_some() {
            continue;
        }
        value[start] = Some(GaussianRational::one());
        let mut stack = vec![start];
        let mut consistent = true;
        while let Some(pos) = stack.pop() {
            let (z, x) = (pos / n, pos % n);
            let here = value[pos].clone().expect("assigned before push");
            for (g, s) in rep.generators().iter().zip(&scales) {
                let next = g.perm()[z] * n + g.perm()[x];
                let w = s[z].checked_div(&s[x]).expect("nonzero scale");
                let v = &w * &here;
                match &value[next] {
                    Some(existing) => consistent &= *existing == v,
                    None => {
                        value[next] = Some(v);
                        stack.push(next);
                    }
                }
            }
        }
        if consistent {
            dim += 1;
        }
    }
    Ok(dim)
}

/// Commutant dimension by solving `M·G − G·M = 0` for all `dim²` unknowns
/// with dense generator matrices.
pub fn commutant_dimension_dense(
    rep: &Representation,
    at: &GaussianRational,
) -> Result<usize, Error> {
    if at.is_zero() {
        return Err(Error::EvalAtZero);
    }
    let n = rep.dim();
    let unknown = |r: usize, c: usize| r * n + c;
    let mut equations: Vec<SparseRow<GaussianRational>> = Vec::new();
    for g in rep.generators() {
        let dense = g.to_dense().eval(at)?;
        for a in 0..n {
            for b in 0..n {
                let mut row: SparseRow<GaussianRational> = SparseRow::new();
                // (M·G)[a][b] = Σ_c M[a][c]·G[c][b]
                for (c, gr) in dense.iter().enumerate() {
                    if !gr[b].is_zero() {
                        let e = row
                            .entry(unknown(a, c))
                            .or_insert_with(GaussianRational::zero);
                        *e = &*e + &gr[b];
                    }
                }
                // (G·M)[a][b] = Σ_c G[a][c]·M[c][b]
                for (c, gac) in dense[a].iter().enumerate() {
                    if !gac.is_zero() {
                        let e = row
                            .entry(unknown(c, b))
                            .or_insert_with(GaussianRational::zero);
                        *e = &*e - gac;
                    }
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    equations.push(row);
                }
            }
        }
    }
    Ok(n * n - linalg::rank(equations))
}

/// Rank of `g − I` over the fraction field, from the cycle structure of `g`:
/// a cycle of length `L` contributes `L − 1` if the product of its scales is
/// one and `L` otherwise.
pub fn structural_rank_minus_identity(g: &MonomialMatrix) -> usize {
    let mut seen = vec![false; g.dim()];
    let mut rank = 0;
    for start in 0..g.dim() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut prod = Scalar::one();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            prod = &prod * &g.scale()[x];
            x = g.perm()[x];
        }
        rank += if prod.is_one() { len - 1 } else { len };
    }
    rank
}

#[derive(Clone, Debug)]
pub struct DenseRankCheck {
    pub point: GaussianRational,
    pub per_k: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CorankResult {
    /// Structural rank of `φ(τ_k) − 1` for `k = 1..n−1`.
    pub per_k: Vec<usize>,
    pub closed_form: Option<u128>,
    pub k_independent: bool,
    pub dense_checks: Vec<DenseRankCheck>,
}

impl CorankResult {
    pub fn value(&self) -> Option<usize> {
        self.k_independent
            .then(|| self.per_k.first().copied())
            .flatten()
    }

    /// Every dense rank at every point equals the structural rank.
    pub fn dense_agrees(&self) -> bool {
        self.dense_checks.iter().all(|c| c.per_k == self.per_k)
    }

    pub fn matches_closed_form(&self) -> Option<bool> {
        let cf = self.closed_form?;
        Some(self.k_independent && self.per_k.iter().all(|&r| r as u128 == cf))
    }
}

/// Corank per generator, cross-checked by dense rank at each of `points`.
pub fn corank(rep: &Representation, points: &[GaussianRational]) -> Result<CorankResult, Error> {
    let per_k: Vec<usize> = rep
        .generators()
        .iter()
        .map(structural_rank_minus_identity)
        .collect();
    let k_independent = per_k.windows(2).all(|w| w[0] == w[1]);
    let identity = DenseMatrix::identity(rep.dim());
    let shifted: Vec<DenseMatrix> = rep
        .generators()
        .iter()
        .map(|g| g.to_dense().sub(&identity))
        .collect::<Result<_, _>>()?;
    let dense_checks = points
        .iter()
        .map(|p| {
            let per_k = shifted
                .iter()
                .map(|m| m.rank(&RankMode::At(p.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(DenseRankCheck {
                point: p.clone(),
                per_k,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let closed_form = rep
        .phi_m_parameter()
        .and_then(|m| corank_closed_form(rep.strands(), m).ok());
    Ok(CorankResult {
        per_k,
        closed_form,
        k_independent,
        dense_checks,
    })
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (1..=k).fold(1u128, |acc, i| acc * (n - k + i) / i)
}

/// `2·(n−2)! / ((m−1)!·(n−m−1)!)`, which equals `2·C(n−2, m−1)`.
pub fn corank_closed_form(n: usize, m: usize) -> Result<u128, Error> {
    if n <= 2 || m < 1 || m >= n {
        return Err(Error::BadRange(format!(
            "need n > 2 and 1 <= m < n, got n={n}, m={m}"
        )));
    }
    Ok(2 * binomial((n - 2) as u128, (m - 1) as u128))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub k: usize,
    /// Column (canonical basis index `j`, 0-based) where the two sides differ.
    pub column: usize,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub n: usize,
    pub per_k: Vec<bool>,
    pub witness: Option<EquivalenceWitness>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.per_k.iter().all(|&b| b)
    }
}

/// The permutation matrix of `β_j ↦ v_{x_j}`, where `x_j` has its single 1 at position `j`.
pub fn standard_intertwiner(rep: &Representation) -> Result<DenseMatrix, Error> {
    let n = rep.strands();
    if rep.dim() != n {
        return Err(Error::DimMismatch(n, rep.dim()));
    }
    let mut alpha = DenseMatrix::zero(n);
    for j in 0..n {
        let x = ValueTuple::new((0..n).map(|i| u32::from(i == j)).collect())?;
        let row = rep
            .orbit()
            .rank_of(&x)
            .ok_or_else(|| Error::Invalid(format!("{x} is not in the orbit")))?;
        alpha.set(row, j, Scalar::one());
    }
    Ok(alpha)
}

/// Checks `α·ρ(τ_k) = φ(τ_k)·α` exactly for every `k`, for a representation on
/// the indicator-tuple orbit.
pub fn check_equivalence(rep: &Representation) -> Result<EquivalenceReport, Error> {
    let n = rep.strands();
    let alpha = standard_intertwiner(rep)?;
    let rho = build_standard(n)?;
    let mut per_k = Vec::new();
    let mut witness = None;
    for (i, (r, g)) in rho.iter().zip(rep.generators()).enumerate() {
        let lhs = alpha.mul(r)?;
        let rhs = g.to_dense().mul(&alpha)?;
        let ok = lhs == rhs;
        if !ok && witness.is_none() {
            let column = (0..n)
                .find(|&c| (0..n).any(|row| lhs.get(row, c) != rhs.get(row, c)))
                .expect("matrices differ");
            witness = Some(EquivalenceWitness {
                k: i + 1,
                column,
                lhs: (0..n).map(|row| lhs.get(row, column).clone()).collect(),
                rhs: (0..n).map(|row| rhs.get(row, column).clone()).collect(),
            });
        }
        per_k.push(ok);
    }
    Ok(EquivalenceReport { n, per_k, witness })
}

/// The intertwiner check for the `m = 1` orbit with `q(a, b) = 1 + (t − 1)·b`.
pub fn check_standard_equivalence(n: usize) -> Result<EquivalenceReport, Error> {
    check_equivalence(&Representation::build_standard_family(n)?)
}
