//! Orbit representations of the braid group: construction from a q-table,
//! relation verification, adjointness classification and braid words.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::Error;
use crate::monomial::{DenseMatrix, MonomialMatrix};
use crate::orbit::{OrbitIndex, ValueTuple};
use crate::scalar::Scalar;

/// Assignment `(a, b) ↦ q_{a,b}` of a nonzero scalar to ordered value pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QTable {
    entries: BTreeMap<(u32, u32), Scalar>,
}

impl QTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table over `values` with `q(a, b) = f(a, b)`.
    pub fn from_fn(values: &[u32], mut f: impl FnMut(u32, u32) -> Scalar) -> Self {
        let mut out = Self::new();
        for &a in values {
            for &b in values {
                out.insert(a, b, f(a, b));
            }
        }
        out
    }

    /// `q = 1` on equal pairs and `t` on unequal pairs of `{0, 1}`.
    pub fn phi_m() -> Self {
        Self::from_fn(
            &[0, 1],
            |a, b| if a == b { Scalar::one() } else { Scalar::t() },
        )
    }

    /// `q(a, b) = 1 + (t − 1)·b` on `{0, 1}`.
    pub fn standard() -> Self {
        Self::from_fn(&[0, 1], |_, b| {
            let b = Scalar::from_integer(i64::from(b));
            &Scalar::one() + &(&(&Scalar::t() - &Scalar::one()) * &b)
        })
    }

    /// Every pair over `values` mapped to the same `c`.
    pub fn constant(values: &[u32], c: Scalar) -> Self {
        Self::from_fn(values, |_, _| c.clone())
    }

    pub fn insert(&mut self, a: u32, b: u32, q: Scalar) {
        self.entries.insert((a, b), q);
    }

    pub fn get(&self, a: u32, b: u32) -> Option<&Scalar> {
        self.entries.get(&(a, b))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), &Scalar)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// Checks totality and nonzero-ness on every ordered pair of `values`.
    pub fn validate(&self, values: &BTreeSet<u32>) -> Result<(), Error> {
        for &a in values {
            for &b in values {
                match self.get(a, b) {
                    None => return Err(Error::MissingQEntry(a, b)),
                    Some(q) if q.is_zero() => return Err(Error::ZeroQEntry(a, b)),
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    /// The `"a,b" → scalar` string map used by q-table files.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.entries
            .iter()
            .map(|((a, b), q)| (format!("{a},{b}"), q.to_string()))
            .collect()
    }

    pub fn from_string_map(map: &BTreeMap<String, String>) -> Result<Self, Error> {
        let mut out = Self::new();
        for (key, value) in map {
            let (a, b) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| {
                    Error::Invalid(format!("q-table key `{key}` is not of the form \"a,b\""))
                })?;
            let q: Scalar = value.parse()?;
            if q.is_zero() {
                return Err(Error::ZeroQEntry(a, b));
            }
            out.insert(a, b, q);
        }
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let map: BTreeMap<String, String> =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("q-table JSON: {e}")))?;
        Self::from_string_map(&map)
    }
}

/// A representation of `B_n` on the span of an orbit.
#[derive(Clone, Debug)]
pub struct Representation {
    seed: ValueTuple,
    orbit: OrbitIndex,
    q: QTable,
    generators: Vec<MonomialMatrix>,
}

impl Representation {
    /// `φ(τ_k) v_x = q(x_k, x_{k+1}) v_{σ_k(x)}` for every `k`.
    pub fn build_generic(seed: &ValueTuple, q: &QTable) -> Result<Self, Error> {
        let values: BTreeSet<u32> = seed.entries().iter().copied().collect();
        q.validate(&values)?;
        let orbit = OrbitIndex::generate(seed);
        let n = seed.len();
        let generators = (1..n)
            .map(|k| {
                let perm = orbit.sigma_permutation(k)?;
                let scale = orbit
                    .basis()
                    .iter()
                    .map(|x| {
                        q.get(x.at(k), x.at(k + 1))
                            .cloned()
                            .expect("validated q-table")
                    })
                    .collect();
                MonomialMatrix::new(perm, scale)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            seed: seed.clone(),
            orbit,
            q: q.clone(),
            generators,
        })
    }

    /// The family member with `m` ones followed by `n − m` zeros.
    pub fn build_phi_m(n: usize, m: usize) -> Result<Self, Error> {
        if n < 2 || m < 1 || m >= n {
            return Err(Error::BadRange(format!(
                "need n >= 2 and 1 <= m < n, got n={n}, m={m}"
            )));
        }
        let entries = (0..n).map(|i| u32::from(i < m)).collect();
        Self::build_generic(&ValueTuple::new(entries)?, &QTable::phi_m())
    }

    /// The `m = 1` seed with `q(a, b) = 1 + (t − 1)·b`.
    pub fn build_standard_family(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::BadRange(format!("need n >= 2, got {n}")));
        }
        let entries = (0..n).map(|i| u32::from(i == 0)).collect();
        Self::build_generic(&ValueTuple::new(entries)?, &QTable::standard())
    }

    /// Assembles a representation from explicit generators, e.g. after loading
    /// it from a file. No relation is checked here.
    pub fn from_parts(
        seed: ValueTuple,
        q: QTable,
        generators: Vec<MonomialMatrix>,
    ) -> Result<Self, Error> {
        let orbit = OrbitIndex::generate(&seed);
        if generators.len() != seed.len() - 1 {
            return Err(Error::DimMismatch(seed.len() - 1, generators.len()));
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != orbit.len()) {
            return Err(Error::DimMismatch(orbit.len(), g.dim()));
        }
        Ok(Self {
            seed,
            orbit,
            q,
            generators,
        })
    }

    /// Replaces generator `k` (1-based).
    pub fn with_generator(&self, k: usize, g: MonomialMatrix) -> Result<Self, Error> {
        self.check_k(k)?;
        let mut generators = self.generators.clone();
        generators[k - 1] = g;
        Self::from_parts(self.seed.clone(), self.q.clone(), generators)
    }

    fn check_k(&self, k: usize) -> Result<(), Error> {
        if k == 0 || k > self.generators.len() {
            return Err(Error::IndexOutOfRange {
                k,
                max: self.generators.len(),
            });
        }
        Ok(())
    }

    pub fn strands(&self) -> usize {
        self.seed.len()
    }

    pub fn dim(&self) -> usize {
        self.orbit.len()
    }

    pub fn seed(&self) -> &ValueTuple {
        &self.seed
    }

    pub fn orbit(&self) -> &OrbitIndex {
        &self.orbit
    }

    pub fn q_table(&self) -> &QTable {
        &self.q
    }

    pub fn generators(&self) -> &[MonomialMatrix] {
        &self.generators
    }

    /// `φ(τ_k)`, 1-based.
    pub fn generator(&self, k: usize) -> Result<&MonomialMatrix, Error> {
        self.check_k(k)?;
        Ok(&self.generators[k - 1])
    }

    /// `Some(m)` if this is structurally the `φ_m` member: binary seed with
    /// both values present, `q = 1` on equal pairs and `t` otherwise.
    pub fn phi_m_parameter(&self) -> Option<usize> {
        let ones = self.seed.entries().iter().filter(|&&v| v == 1).count();
        let binary = self.seed.is_binary() && ones > 0 && ones < self.strands();
        (binary && self.q == QTable::phi_m()).then_some(ones)
    }
}

/// Dense `ρ(τ_k)`: identity except `[[0, t], [1, 0]]` at rows/columns `k, k+1`.
pub fn build_standard(n: usize) -> Result<Vec<DenseMatrix>, Error> {
    if n < 2 {
        return Err(Error::BadRange(format!("need n >= 2, got {n}")));
    }
    Ok((0..n - 1)
        .map(|k| {
            let mut m = DenseMatrix::identity(n);
            m.set(k, k, Scalar::zero());
            m.set(k + 1, k + 1, Scalar::zero());
            m.set(k, k + 1, Scalar::t());
            m.set(k + 1, k, Scalar::one());
            m
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `τ_j τ_k = τ_k τ_j` for `|j − k| > 1`.
    FarCommutation { j: usize, k: usize },
    /// `τ_k τ_{k+1} τ_k = τ_{k+1} τ_k τ_{k+1}`.
    Braid { k: usize },
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FarCommutation { j, k } => write!(f, "t{j} t{k} = t{k} t{j}"),
            Self::Braid { k } => write!(f, "t{k} t{} t{k} = t{} t{k} t{}", k + 1, k + 1, k + 1),
        }
    }
}

/// A basis vector on which the two sides of a relation differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationWitness {
    pub basis_index: usize,
    pub tuple: ValueTuple,
    pub lhs_target: usize,
    pub lhs_scalar: Scalar,
    pub rhs_target: usize,
    pub rhs_scalar: Scalar,
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub relation: Relation,
    pub passed: bool,
    pub witness: Option<RelationWitness>,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> + '_ {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn product(rep: &Representation, ks: &[usize]) -> MonomialMatrix {
    ks.iter()
        .map(|&k| &rep.generators[k - 1])
        .try_fold(MonomialMatrix::identity(rep.dim()), |acc, g| acc.compose(g))
        .expect("generators share the representation dimension")
}

fn check_relation(rep: &Representation, relation: Relation) -> RelationCheck {
    let (lhs, rhs) = match relation {
        Relation::FarCommutation { j, k } => (product(rep, &[j, k]), product(rep, &[k, j])),
        Relation::Braid { k } => (
            product(rep, &[k, k + 1, k]),
            product(rep, &[k + 1, k, k + 1]),
        ),
    };
    let witness = (0..rep.dim())
        .find(|&x| lhs.image(x) != rhs.image(x))
        .map(|x| {
            let (lt, ls) = lhs.image(x);
            let (rt, rs) = rhs.image(x);
            RelationWitness {
                basis_index: x,
                tuple: rep.orbit.get(x).clone(),
                lhs_target: lt,
                lhs_scalar: ls.clone(),
                rhs_target: rt,
                rhs_scalar: rs.clone(),
            }
        });
    RelationCheck {
        relation,
        passed: witness.is_none(),
        witness,
    }
}

/// Checks every far-commutation and braid relation by exact monomial equality.
pub fn verify_braid_relations(rep: &Representation) -> RelationReport {
    let r = rep.generators.len();
    let mut relations = Vec::new();
    for j in 1..=r {
        for k in j + 2..=r {
            relations.push(Relation::FarCommutation { j, k });
        }
    }
    for k in 1..r {
        relations.push(Relation::Braid { k });
    }
    let checks = relations
        .into_par_iter()
        .map(|rel| check_relation(rep, rel))
        .collect();
    RelationReport { checks }
}

/// Self-adjointness and unitarity of one generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAdjointness {
    /// 1-based generator index.
    pub k: usize,
    /// `q(x_{k+1}, x_k) = conj(q(x_k, x_{k+1}))` on every basis tuple.
    pub self_adjoint: bool,
    /// `|q(x_k, x_{k+1})|² = 1` on every basis tuple.
    pub unitary: bool,
    /// `M* = M` computed on the matrix itself.
    pub matrix_self_adjoint: bool,
    /// `M*·M = I` computed on the matrix itself.
    pub matrix_unitary: bool,
}

impl GeneratorAdjointness {
    pub fn label(&self) -> &'static str {
        match (self.self_adjoint, self.unitary) {
            (true, true) => "self_adjoint+unitary",
            (true, false) => "self_adjoint",
            (false, true) => "unitary",
            (false, false) => "neither",
        }
    }

    pub fn consistent(&self) -> bool {
        self.self_adjoint == self.matrix_self_adjoint && self.unitary == self.matrix_unitary
    }
}

/// Decides adjointness per generator from the q-table, with the matrix
/// computation recorded alongside as a cross-check.
pub fn classify_adjointness(rep: &Representation) -> Vec<GeneratorAdjointness> {
    rep.generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let k = i + 1;
            let pairs: BTreeSet<(u32, u32)> = rep
                .orbit
                .basis()
                .iter()
                .map(|x| (x.at(k), x.at(k + 1)))
                .collect();
            let q = |a, b| rep.q.get(a, b);
            // Loaded representations may carry generators unrelated to their
            // q-table; fall back to the matrix scales then.
            let from_table = pairs
                .iter()
                .all(|&(a, b)| q(a, b).is_some() && q(b, a).is_some());
            let (self_adjoint, unitary) = if from_table {
                (
                    pairs
                        .iter()
                        .all(|&(a, b)| q(b, a).unwrap() == &q(a, b).unwrap().conj()),
                    pairs
                        .iter()
                        .all(|&(a, b)| q(a, b).unwrap().abs_sq().is_one()),
                )
            } else {
                let adj = g.adjoint();
                (
                    adj == *g,
                    adj.compose(g).map(|p| p.is_identity()).unwrap_or(false),
                )
            };
            let adj = g.adjoint();
            GeneratorAdjointness {
                k,
                self_adjoint,
                unitary,
                matrix_self_adjoint: adj == *g,
                matrix_unitary: adj.compose(g).map(|p| p.is_identity()).unwrap_or(false),
            }
        })
        .collect()
}

/// A word in the generators; `+k` is `τ_k`, `−k` is `τ_k⁻¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BraidWord {
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(letters: Vec<i32>) -> Self {
        Self { letters }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Reverse of the word with every letter inverted.
    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self {
            letters: self.letters.iter().chain(&other.letters).copied().collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

fn parse_signed(tok: &str, pos: usize) -> Result<i32, Error> {
    let digits = tok.strip_prefix(['+', '-']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::WordParse {
            pos,
            msg: format!("expected a signed integer, found `{tok}`"),
        });
    }
    tok.parse().map_err(|_| Error::WordParse {
        pos,
        msg: format!("integer `{tok}` out of range"),
    })
}

/// Whitespace-separated signed generators, each optionally raised to an
/// integer power: `1 -2 3^-2`.
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in text.split_whitespace() {
            let pos = offset + text[offset..].find(tok).expect("token comes from text");
            offset = pos + tok.len();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, Some((e, pos + b.len() + 1))),
                None => (tok, None),
            };
            let gen = parse_signed(base, pos)?;
            if gen == 0 {
                return Err(Error::ZeroGenerator { pos });
            }
            let power = match exp {
                Some((e, epos)) => parse_signed(e, epos)?,
                None => 1,
            };
            let letter = gen * power.signum();
            letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
        }
        Ok(Self { letters })
    }
}

/// Matrix of a braid word: `φ(τ_a)·φ(τ_b)·…` in left-to-right text order.
pub fn evaluate_word(rep: &Representation, w: &BraidWord) -> Result<MonomialMatrix, Error> {
    let r = rep.generators.len();
    let mut inverses: HashMap<usize, MonomialMatrix> = HashMap::new();
    let mut acc = MonomialMatrix::identity(rep.dim());
    for &letter in &w.letters {
        let k = letter.unsigned_abs() as usize;
        if k == 0 || k > r {
            return Err(Error::GeneratorOutOfRange {
                letter,
                strands: rep.strands(),
            });
        }
        let g = if letter > 0 {
            &rep.generators[k - 1]
        } else {
            if let Entry::Vacant(slot) = inverses.entry(k) {
                slot.insert(rep.generators[k - 1].inverse()?);
            }
            &inverses[&k]
        };
        acc = acc.compose(g)?;
    }
    Ok(acc)
}

/// A positive word whose matrix sends `v_from` to a multiple of `v_to`,
/// found by breadth-first search over the orbit.
pub fn transport_word(rep: &Representation, from: usize, to: usize) -> Option<BraidWord> {
    let n = rep.dim();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for (i, g) in rep.generators.iter().enumerate() {
            let y = g.perm()[x];
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, i + 1));
                queue.push_back(y);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    // Applied first is rightmost in the word.
    let mut letters = Vec::new();
    let mut cur = to;
    while let Some((p, k)) = prev[cur] {
        letters.push(k as i32);
        cur = p;
    }
    Some(BraidWord { letters })
}
