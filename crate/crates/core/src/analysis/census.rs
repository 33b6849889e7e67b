use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::groups::{
    check_relations, presentation_of, Generator, GroupKind, GroupWord, Presentation, RepCandidate,
};
use crate::linalg::{block_embed, Matrix};
use crate::reps::{l3_family_matrices, l3_family_parameters, TwoLocalParams};
use crate::scalar::{is_prime, PrimeFieldElement, ScalarError};

/// Outcome of matching one census solution against the known families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "match", content = "families")]
pub enum FamilyMatch {
    Family(String),
    Unmatched,
    Ambiguous(Vec<String>),
}

impl fmt::Display for FamilyMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyMatch::Family(name) => f.write_str(name),
            FamilyMatch::Unmatched => f.write_str("unmatched"),
            FamilyMatch::Ambiguous(names) => write!(f, "ambiguous({})", names.join(",")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusSolution {
    /// Residues in `0..p`, in the order of the census unknowns.
    pub values: Vec<u32>,
    pub family: FamilyMatch,
}

/// Which system a census enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CensusKind {
    /// One 2x2 block per generator family, shared by every index.
    Homogeneous(GroupKind),
    /// Independent blocks for `ℓ_1` and `ℓ_2` of `L_3`.
    L3,
}

impl CensusKind {
    pub fn label(self) -> String {
        match self {
            CensusKind::Homogeneous(k) => format!("homogeneous-{}", k.name()),
            CensusKind::L3 => "l3".into(),
        }
    }

    fn unknowns(self) -> &'static [&'static str] {
        match self {
            CensusKind::Homogeneous(GroupKind::Triplet) => &["a", "b", "c", "d"],
            CensusKind::Homogeneous(_) => &["a", "b", "c", "d", "w", "x", "y", "z"],
            CensusKind::L3 => &["a", "b", "c", "d", "e", "f", "g", "h"],
        }
    }

    /// Unknown indices of the block of each generator.
    fn block_of(self, g: Generator) -> [usize; 4] {
        match (self, g.family) {
            (CensusKind::L3, _) if g.index == 2 => [4, 5, 6, 7],
            (CensusKind::Homogeneous(_), crate::groups::Family::Rho) => [4, 5, 6, 7],
            _ => [0, 1, 2, 3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationCensus {
    pub kind: CensusKind,
    pub modulus: u32,
    pub domain_size: u64,
    pub unknowns: Vec<String>,
    pub solutions: Vec<CensusSolution>,
}

impl ClassificationCensus {
    pub fn family_counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for s in &self.solutions {
            let key = match &s.family {
                FamilyMatch::Family(name) => name.clone(),
                FamilyMatch::Unmatched => "unmatched".into(),
                FamilyMatch::Ambiguous(_) => "ambiguous".into(),
            };
            *out.entry(key).or_insert(0) += 1;
        }
        out
    }

    /// Solutions not matched to exactly one family.
    pub fn discrepancies(&self) -> Vec<&CensusSolution> {
        self.solutions
            .iter()
            .filter(|s| !matches!(s.family, FamilyMatch::Family(_)))
            .collect()
    }

    pub fn all_matched(&self) -> bool {
        self.discrepancies().is_empty()
    }

    /// Candidate representation of the census presentation at one solution.
    pub fn candidate(
        &self,
        solution: &CensusSolution,
    ) -> Result<RepCandidate<Matrix<PrimeFieldElement>>, AnalysisError> {
        build_candidate(self.kind, self.modulus, &solution.values)
    }

    /// Re-checks every solution through the generic relation checker over
    /// `F_p`, independently of the fast enumeration path.
    pub fn reverify(&self) -> Result<bool, AnalysisError> {
        for s in &self.solutions {
            let rep = self.candidate(s)?;
            if !check_relations(&rep)?.iter().all(|c| c.passed) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn presentation_for(kind: CensusKind) -> Result<Presentation, AnalysisError> {
    let gk = match kind {
        CensusKind::Homogeneous(k) => k,
        CensusKind::L3 => GroupKind::Triplet,
    };
    Ok(presentation_of(gk, 3)?)
}

fn build_candidate(
    kind: CensusKind,
    p: u32,
    values: &[u32],
) -> Result<RepCandidate<Matrix<PrimeFieldElement>>, AnalysisError> {
    let pres = presentation_for(kind)?;
    let el = |v: u32| PrimeFieldElement::new(i64::from(v), p);
    let mut images = Vec::new();
    for &g in &pres.generators {
        let idx = kind.block_of(g);
        let block = Matrix::new(2, 2, idx.iter().map(|&k| el(values[k])).collect::<Result<_, _>>()?)?;
        images.push((g, block_embed(3, g.index, &block)?));
    }
    Ok(RepCandidate::new(pres, format!("census-{}", kind.label()), images)?)
}

type M3 = [u32; 9];

struct FastField {
    p: u32,
}

impl FastField {
    fn mul(&self, a: &M3, b: &M3) -> M3 {
        let p = u64::from(self.p);
        let mut out = [0u32; 9];
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = 0u64;
                for k in 0..3 {
                    acc += u64::from(a[3 * r + k]) * u64::from(b[3 * k + c]);
                }
                out[3 * r + c] = (acc % p) as u32;
            }
        }
        out
    }

    fn pow(&self, a: u32, mut e: u32) -> u32 {
        let p = u64::from(self.p);
        let (mut acc, mut base) = (1u64, u64::from(a));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }

    /// Inverse of a 2-local matrix with invertible block at `pos`.
    fn inverse_block(&self, m: &M3, pos: usize) -> M3 {
        let p = u64::from(self.p);
        let k = pos - 1;
        let (a, b, c, d) = (
            u64::from(m[3 * k + k]),
            u64::from(m[3 * k + k + 1]),
            u64::from(m[3 * (k + 1) + k]),
            u64::from(m[3 * (k + 1) + k + 1]),
        );
        let det = (a * d + p * p - b * c) % p;
        let inv = u64::from(self.pow(det as u32, self.p - 2));
        let mut out = *m;
        out[3 * k + k] = (d * inv % p) as u32;
        out[3 * k + k + 1] = ((p - b) * inv % p) as u32;
        out[3 * (k + 1) + k] = ((p - c) * inv % p) as u32;
        out[3 * (k + 1) + k + 1] = (a * inv % p) as u32;
        out
    }
}

const IDENTITY: M3 = [1, 0, 0, 0, 1, 0, 0, 0, 1];

struct CompiledSystem {
    gens: Vec<(usize, [usize; 4])>,
    relations: Vec<(Vec<(usize, bool)>, Vec<(usize, bool)>)>,
}

impl CompiledSystem {
    fn new(kind: CensusKind, pres: &Presentation) -> Self {
        let gens: Vec<(usize, [usize; 4])> = pres
            .generators
            .iter()
            .map(|&g| (g.index, kind.block_of(g)))
            .collect();
        let compile = |w: &GroupWord| -> Vec<(usize, bool)> {
            w.letters()
                .iter()
                .map(|&(g, e)| {
                    let slot = pres.generators.iter().position(|&h| h == g).expect("generator");
                    (slot, e < 0)
                })
                .collect()
        };
        let relations = pres
            .relations
            .iter()
            .map(|r| (compile(&r.lhs), compile(&r.rhs)))
            .collect();
        CompiledSystem { gens, relations }
    }

    fn solves(&self, field: &FastField, values: &[u32]) -> bool {
        let p = u64::from(field.p);
        let mut images: Vec<(M3, M3)> = Vec::with_capacity(self.gens.len());
        let mut trivial = true;
        for &(pos, idx) in &self.gens {
            let [a, b, c, d] = idx.map(|k| u64::from(values[k]));
            if (a * d + p * p - b * c) % p == 0 {
                return false;
            }
            let k = pos - 1;
            let mut m = IDENTITY;
            m[3 * k + k] = a as u32;
            m[3 * k + k + 1] = b as u32;
            m[3 * (k + 1) + k] = c as u32;
            m[3 * (k + 1) + k + 1] = d as u32;
            trivial &= m == IDENTITY;
            let inv = field.inverse_block(&m, pos);
            images.push((m, inv));
        }
        if trivial {
            return false;
        }
        let eval = |w: &[(usize, bool)]| {
            w.iter().fold(IDENTITY, |acc, &(slot, inv)| {
                let (m, mi) = &images[slot];
                field.mul(&acc, if inv { mi } else { m })
            })
        };
        self.relations
            .iter()
            .all(|(lhs, rhs)| eval(lhs) == eval(rhs))
    }
}

fn check_modulus(p: u32) -> Result<(), AnalysisError> {
    if p <= 3 || !is_prime(u64::from(p)) {
        return Err(ScalarError::BadModulus(u64::from(p)).into());
    }
    Ok(())
}

fn enumerate(kind: CensusKind, p: u32) -> Result<(u64, Vec<Vec<u32>>), AnalysisError> {
    check_modulus(p)?;
    let pres = presentation_for(kind)?;
    let system = CompiledSystem::new(kind, &pres);
    let field = FastField { p };
    let width = kind.unknowns().len() as u32;
    let domain = u64::from(p).pow(width);
    let solutions: Vec<Vec<u32>> = (0..domain)
        .into_par_iter()
        .filter_map(|code| {
            let mut values = vec![0u32; width as usize];
            let mut rest = code;
            for slot in values.iter_mut().rev() {
                *slot = (rest % u64::from(p)) as u32;
                rest /= u64::from(p);
            }
            system.solves(&field, &values).then_some(values)
        })
        .collect();
    Ok((domain, solutions))
}

fn fp(v: u32, p: u32) -> PrimeFieldElement {
    PrimeFieldElement::new(i64::from(v), p).expect("checked modulus")
}

fn is_antidiag_pair(block: &[u32], p: u32) -> bool {
    let [a, b, c, d] = [block[0], block[1], block[2], block[3]];
    a == 0 && d == 0 && u64::from(b) * u64::from(c) % u64::from(p) == 1
}

fn is_identity_block(block: &[u32]) -> bool {
    block == [1, 0, 0, 1]
}

fn match_homogeneous(kind: GroupKind, values: &[u32], p: u32) -> FamilyMatch {
    let mut hits = Vec::new();
    match kind {
        GroupKind::Triplet => {
            if is_antidiag_pair(&values[..4], p) {
                hits.push("lambda-homog");
            }
        }
        _ => {
            let (ell, rho) = (&values[..4], &values[4..]);
            if is_antidiag_pair(ell, p) && is_antidiag_pair(rho, p) {
                hits.push("omega1");
            }
            if kind == GroupKind::VirtualTriplet
                && is_identity_block(ell)
                && is_antidiag_pair(rho, p)
            {
                hits.push("omega2");
            }
        }
    }
    finish(hits)
}

fn finish(hits: Vec<&str>) -> FamilyMatch {
    match hits.as_slice() {
        [] => FamilyMatch::Unmatched,
        [one] => FamilyMatch::Family(one.to_string()),
        _ => FamilyMatch::Ambiguous(hits.iter().map(|s| s.to_string()).collect()),
    }
}

/// Solves the family parameters from designated entries, rebuilds the
/// family's matrices and compares them with the solution.
fn match_l3(values: &[u32], p: u32) -> FamilyMatch {
    let entry = |name: &str| {
        let k = ["a", "b", "c", "d", "e", "f", "g", "h"]
            .iter()
            .position(|&u| u == name)
            .expect("unknown name");
        fp(values[k], p)
    };
    let mut hits = Vec::new();
    for j in 1..=4usize {
        let params = l3_family_parameters(j)
            .iter()
            .fold(TwoLocalParams::over(fp(1, p)), |acc, &name| {
                acc.with(name, entry(name))
            });
        let Ok((l1, l2)) = l3_family_matrices(j, &params) else {
            continue;
        };
        let got: Vec<u32> = [
            l1.get(0, 0),
            l1.get(0, 1),
            l1.get(1, 0),
            l1.get(1, 1),
            l2.get(1, 1),
            l2.get(1, 2),
            l2.get(2, 1),
            l2.get(2, 2),
        ]
        .iter()
        .map(|e| e.value())
        .collect();
        if got == values {
            hits.push(["1", "2", "3", "4"][j - 1]);
        }
    }
    finish(hits)
}

/// Exhaustive census of the nontrivial homogeneous 2-local
/// representations of `kind` at `n = 3` over `F_p`.
pub fn classify_homog_2local_fp(
    kind: GroupKind,
    p: u32,
) -> Result<ClassificationCensus, AnalysisError> {
    if !kind.is_triplet_family() {
        return Err(AnalysisError::UnsupportedKind(kind.name().into()));
    }
    let ck = CensusKind::Homogeneous(kind);
    let (domain_size, raw) = enumerate(ck, p)?;
    let solutions = raw
        .into_iter()
        .map(|values| {
            let family = match_homogeneous(kind, &values, p);
            CensusSolution { values, family }
        })
        .collect();
    Ok(ClassificationCensus {
        kind: ck,
        modulus: p,
        domain_size,
        unknowns: ck.unknowns().iter().map(|s| s.to_string()).collect(),
        solutions,
    })
}

/// Exhaustive census of the nontrivial 2-local representations of `L_3`
/// over `F_p`, each matched against the four families.
pub fn classify_l3_2local_fp(p: u32) -> Result<ClassificationCensus, AnalysisError> {
    let ck = CensusKind::L3;
    let (domain_size, raw) = enumerate(ck, p)?;
    let solutions = raw
        .into_iter()
        .map(|values| {
            let family = match_l3(&values, p);
            CensusSolution { values, family }
        })
        .collect();
    Ok(ClassificationCensus {
        kind: ck,
        modulus: p,
        domain_size,
        unknowns: ck.unknowns().iter().map(|s| s.to_string()).collect(),
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over the homogeneous system written out by hand.
    fn homog_oracle(p: u32) -> Vec<Vec<u32>> {
        let p64 = i64::from(p);
        let m = |v: i64| v.rem_euclid(p64);
        let mut out = Vec::new();
        for a in 0..p64 {
            for b in 0..p64 {
                for c in 0..p64 {
                    for d in 0..p64 {
                        if m(a * d - b * c) == 0 || (a, b, c, d) == (1, 0, 0, 1) {
                            continue;
                        }
                        let eqs = [
                            a * a + b * c - 1,
                            b * (a + d),
                            c * (a + d),
                            b * c + d * d - 1,
                            a * (-1 + a + b * c),
                            a * b * d,
                            a * c * d,
                            a * d * (-a + d),
                            d * (1 - b * c - d * d),
                        ];
                        if eqs.iter().all(|&e| m(e) == 0) {
                            out.push([a, b, c, d].iter().map(|&v| v as u32).collect());
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn triplet_census_matches_hand_system() {
        for p in [5, 7] {
            let c = classify_homog_2local_fp(GroupKind::Triplet, p).unwrap();
            let got: Vec<Vec<u32>> = c.solutions.iter().map(|s| s.values.clone()).collect();
            assert_eq!(got, homog_oracle(p));
            assert_eq!(got.len() as u32, p - 1);
            assert!(c.all_matched());
            assert!(c.reverify().unwrap());
            assert_eq!(c.domain_size, u64::from(p).pow(4));
        }
    }

    #[test]
    fn virtual_and_welded_f5() {
        let v = classify_homog_2local_fp(GroupKind::VirtualTriplet, 5).unwrap();
        assert_eq!(v.solutions.len(), 20);
        let counts = v.family_counts();
        assert_eq!(counts.get("omega1"), Some(&16));
        assert_eq!(counts.get("omega2"), Some(&4));
        assert!(v.reverify().unwrap());
        let w = classify_homog_2local_fp(GroupKind::WeldedTriplet, 5).unwrap();
        assert_eq!(w.family_counts(), BTreeMap::from([("omega1".to_string(), 16)]));
    }

    #[test]
    fn l3_census_f5_examples() {
        let c = classify_l3_2local_fp(5).unwrap();
        let find = |v: [u32; 8]| c.solutions.iter().find(|s| s.values == v).map(|s| &s.family);
        assert_eq!(find([1, 0, 0, 4, 4, 0, 0, 1]), Some(&FamilyMatch::Family("4".into())));
        assert_eq!(find([2, 1, 2, 3, 4, 0, 0, 1]), Some(&FamilyMatch::Family("2".into())));
        assert!(c.reverify().unwrap());
    }

    /// The fifteen polynomial conditions, checked by brute force.
    fn l3_oracle(p: u32) -> Vec<Vec<u32>> {
        let p64 = i64::from(p);
        let m = |v: i64| v.rem_euclid(p64);
        let mut out = Vec::new();
        let range = 0..p64.pow(8);
        for code in range {
            let mut v = [0i64; 8];
            let mut rest = code;
            for slot in v.iter_mut().rev() {
                *slot = rest % p64;
                rest /= p64;
            }
            let [a, b, c, d, e, f, g, h] = v;
            if m(a * d - b * c) == 0 || m(e * h - f * g) == 0 || v == [1, 0, 0, 1, 1, 0, 0, 1] {
                continue;
            }
            let eqs = [
                -1 + a * a + b * c,
                b * (a + d),
                c * (a + d),
                -1 + b * c + d * d,
                -1 + e * e + f * g,
                f * (e + h),
                g * (e + h),
                -1 + f * g + h * h,
                -a + a * a + b * c * e,
                b * (a - e + d * e),
                c * (a - e + d * e),
                b * c + d * d * e - d * e * e - f * g,
                f * (d - d * e - h),
                g * (d - d * e - h),
                -d * f * g + h - h * h,
            ];
            if eqs.iter().all(|&x| m(x) == 0) {
                out.push(v.iter().map(|&x| x as u32).collect());
            }
        }
        out
    }

    #[test]
    fn l3_census_matches_fifteen_equations_f5() {
        let c = classify_l3_2local_fp(5).unwrap();
        let got: Vec<Vec<u32>> = c.solutions.iter().map(|s| s.values.clone()).collect();
        assert_eq!(got, l3_oracle(5));
    }

    #[test]
    fn bad_moduli_and_kinds() {
        assert!(matches!(
            classify_l3_2local_fp(3),
            Err(AnalysisError::Scalar(ScalarError::BadModulus(3)))
        ));
        assert!(classify_homog_2local_fp(GroupKind::Triplet, 9).is_err());
        assert!(matches!(
            classify_homog_2local_fp(GroupKind::Braid, 5),
            Err(AnalysisError::UnsupportedKind(_))
        ));
    }
}
