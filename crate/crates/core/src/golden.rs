//! Reference matrices for `n = 5, m = 3`, kept as a hand-written fixture.

use serde::Deserialize;

use crate::error::Error;
use crate::orbit::ValueTuple;
use crate::rep::Representation;

pub const PHI3_N5_FIXTURE: &str = include_str!("../fixtures/phi3_n5.json");

#[derive(Debug, Deserialize)]
pub struct GoldenFixture {
    pub n: usize,
    pub m: usize,
    pub convention: String,
    pub basis: Vec<ValueTuple>,
    /// `generators[k-1][row][col]`, canonical scalar strings.
    pub generators: Vec<Vec<Vec<String>>>,
}

impl GoldenFixture {
    pub fn embedded() -> Self {
        serde_json::from_str(PHI3_N5_FIXTURE).expect("embedded fixture is valid JSON")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenMismatch {
    pub k: usize,
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug)]
pub struct GoldenReport {
    pub basis_matches: bool,
    pub per_k: Vec<bool>,
    pub mismatches: Vec<GoldenMismatch>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.basis_matches && self.per_k.iter().all(|&b| b) && self.mismatches.is_empty()
    }
}

/// Compares the dense rendering of every generator with the fixture,
/// string for string.
pub fn compare(rep: &Representation, fixture: &GoldenFixture) -> GoldenReport {
    let basis_matches = rep.orbit().basis() == fixture.basis.as_slice();
    let mut per_k = Vec::new();
    let mut mismatches = Vec::new();
    for k in 1..=fixture.generators.len().max(rep.generators().len()) {
        let (Some(expected), Ok(g)) = (fixture.generators.get(k - 1), rep.generator(k)) else {
            per_k.push(false);
            continue;
        };
        let actual = g.to_dense().to_strings();
        let mut ok = actual.len() == expected.len();
        for (row, (a_row, e_row)) in actual.iter().zip(expected).enumerate() {
            ok &= a_row.len() == e_row.len();
            for (col, (a, e)) in a_row.iter().zip(e_row).enumerate() {
                if a != e {
                    ok = false;
                    mismatches.push(GoldenMismatch {
                        k,
                        row,
                        col,
                        expected: e.clone(),
                        actual: a.clone(),
                    });
                }
            }
        }
        per_k.push(ok);
    }
    GoldenReport {
        basis_matches,
        per_k,
        mismatches,
    }
}

/// Builds `φ_3` on five strands and compares it with the embedded fixture.
pub fn golden_check() -> Result<GoldenReport, Error> {
    let fixture = GoldenFixture::embedded();
    let rep = Representation::build_phi_m(fixture.n, fixture.m)?;
    Ok(compare(&rep, &fixture))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_well_formed() {
        let f = GoldenFixture::embedded();
        assert_eq!((f.n, f.m), (5, 3));
        assert_eq!(f.generators.len(), 4);
        for g in &f.generators {
            assert_eq!(g.len(), 10);
            assert!(g.iter().all(|r| r.len() == 10));
            // one nonzero per column
            for col in 0..10 {
                assert_eq!(g.iter().filter(|r| r[col] != "0").count(), 1);
            }
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let mut f = GoldenFixture::embedded();
        f.generators[2][0][0] = "t".into();
        let rep = Representation::build_phi_m(5, 3).unwrap();
        let report = compare(&rep, &f);
        assert!(!report.passed());
        assert_eq!(report.per_k, vec![true, true, false, true]);
        assert_eq!(
            report.mismatches,
            vec![GoldenMismatch {
                k: 3,
                row: 0,
                col: 0,
                expected: "t".into(),
                actual: "1".into()
            }]
        );
    }
}
