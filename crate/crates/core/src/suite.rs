//! Named theorem suites, the JSON report they produce, and the word
//! evaluator behind the command-line `eval` subcommand.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::{
    census_report, certify_kernel_witness, classify_homog_2local_fp, classify_l3_2local_fp,
    det_a_sequence, faithfulness_by_enumeration, irreducibility_test, kernel_is_pure_check,
    omega1_power_formula, omega1_root_of_unity_report, small_triplet_elements, tits_lemma_checks,
    AnalysisError, ClassificationCensus, VerificationReport,
};
use crate::freegroup::{magnus_jacobian, MonomialAutomorphism};
use crate::groups::{
    check_relations, image_closure, kernel_witness_search, presentation_of, sn_projection,
    word_eval, Generator, GroupImage, GroupKind, GroupWord, ProjectionKind, RelationCheck,
    RepCandidate,
};
use crate::linalg::{common_fixed_vector, conjugate, Matrix, DEFAULT_SPAN_CAP};
use crate::reps::{
    extend_standard, l3_family, l3_family_parameters, l3_family_symbolic, lambda_homog,
    mu_automorphism, mu_conjugator, mu_doubleprime, mu_matrix, omega, omega_normalizer,
    pair_reflection, tits_theta, Extension, KExponent, OmegaVariant, RepError, TwoLocalParams,
};
use crate::scalar::{Constant, LaurentPoly, Rational, RationalFunction, Scalar};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid representation spec: {0}")]
    BadRepSpec(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

impl From<RepError> for SuiteError {
    fn from(e: RepError) -> Self {
        SuiteError::Analysis(e.into())
    }
}

impl From<crate::groups::GroupError> for SuiteError {
    fn from(e: crate::groups::GroupError) -> Self {
        SuiteError::Analysis(e.into())
    }
}

impl From<crate::linalg::LinalgError> for SuiteError {
    fn from(e: crate::linalg::LinalgError) -> Self {
        SuiteError::Analysis(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tits,
    Mu,
    TwoLocal,
    L3Families,
    Extensions,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["tits", "mu", "two-local", "l3-families", "extensions", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tits => "tits",
            Suite::Mu => "mu",
            Suite::TwoLocal => "two-local",
            Suite::L3Families => "l3-families",
            Suite::Extensions => "extensions",
            Suite::All => "all",
        }
    }

    fn default_n(self) -> (usize, usize) {
        match self {
            Suite::Tits => (3, 7),
            Suite::Mu => (2, 6),
            Suite::TwoLocal => (3, 6),
            Suite::L3Families => (3, 3),
            Suite::Extensions => (3, 5),
            Suite::All => (0, 0),
        }
    }

    fn n_bounds(self) -> (usize, usize) {
        match self {
            Suite::Tits => (3, 8),
            Suite::Mu => (2, 6),
            Suite::TwoLocal => (3, 8),
            Suite::L3Families => (3, 3),
            Suite::Extensions => (3, 6),
            Suite::All => (0, usize::MAX),
        }
    }

    fn default_primes(self) -> Vec<u32> {
        match self {
            Suite::Extensions => vec![5],
            _ => vec![5, 7],
        }
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "tits" => Suite::Tits,
            "mu" => Suite::Mu,
            "two-local" => Suite::TwoLocal,
            "l3-families" => Suite::L3Families,
            "extensions" => Suite::Extensions,
            "all" => Suite::All,
            other => return Err(SuiteError::UnknownSuite(other.into())),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite plus its overrides; `None` picks the suite default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSpec {
    pub suite: Suite,
    pub n_range: Option<(usize, usize)>,
    pub primes: Option<Vec<u32>>,
    pub depth: usize,
    pub cap: usize,
}

impl SuiteSpec {
    pub fn new(suite: Suite) -> Self {
        SuiteSpec {
            suite,
            n_range: None,
            primes: None,
            depth: 8,
            cap: crate::groups::DEFAULT_CLOSURE_CAP,
        }
    }

    fn ns(&self, suite: Suite) -> Result<Vec<usize>, SuiteError> {
        let (lo, hi) = match (self.suite, self.n_range) {
            (Suite::All, _) | (_, None) => suite.default_n(),
            (_, Some(r)) => r,
        };
        let (min, max) = suite.n_bounds();
        if lo > hi || lo < min || hi > max {
            return Err(SuiteError::InvalidConfig(format!(
                "n range {lo}..{hi} outside {min}..{max} for suite {suite}"
            )));
        }
        Ok((lo..=hi).collect())
    }

    fn primes(&self, suite: Suite) -> Result<Vec<u32>, SuiteError> {
        let primes = self.primes.clone().unwrap_or_else(|| suite.default_primes());
        if let Some(&p) = primes
            .iter()
            .find(|&&p| p <= 3 || !crate::scalar::is_prime(u64::from(p)))
        {
            return Err(SuiteError::InvalidConfig(format!("{p} is not a prime > 3")));
        }
        Ok(primes)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: String,
    pub checks: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(VerificationReport::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn relations_report<I: GroupImage>(
    name: &str,
    rep: &RepCandidate<I>,
) -> Result<VerificationReport, SuiteError> {
    let checks = check_relations(rep)?;
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.relation.as_str())
        .collect();
    Ok(VerificationReport::new(name)
        .param("presentation", rep.presentation.label())
        .param("representation", &rep.name)
        .param("parameters", &rep.parameters)
        .with_data(json!({ "relations": checks.len(), "failed": failed }))
        .passed_if(failed.is_empty()))
}

fn ratfun_images(rep: &RepCandidate<Matrix<LaurentPoly>>) -> Result<Vec<Matrix<RationalFunction>>, SuiteError> {
    Ok(rep
        .generator_images()
        .iter()
        .map(|m| m.map(|e| RationalFunction::from(e.clone())))
        .collect())
}

fn render_vector<T: Scalar>(v: &Option<Vec<T>>) -> Value {
    match v {
        Some(v) => json!(v.iter().map(ToString::to_string).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn all_ones<T: Scalar>(v: &Option<Vec<T>>) -> bool {
    matches!(v, Some(v) if v.iter().all(Scalar::is_one))
}

fn tits_suite(spec: &SuiteSpec, out: &mut Vec<VerificationReport>) -> Result<(), SuiteError> {
    for n in spec.ns(Suite::Tits)? {
        let theta = tits_theta(n)?;
        out.push(relations_report("tits-relations", &theta)?.param("n", n));
        let irr = irreducibility_test(&theta, DEFAULT_SPAN_CAP)?;
        out.push(
            VerificationReport::new("tits-irreducible")
                .param("n", n)
                .with_data(json!({ "spanDimension": irr.span_dimension, "expected": (n - 1) * (n - 1) }))
                .passed_if(irr.is_irreducible()),
        );
        out.push(tits_lemma_checks(n)?);
    }
    let dets = det_a_sequence(12)?;
    out.push(
        VerificationReport::new("det-a-sequence")
            .param("maxM", 12)
            .with_data(json!(dets
                .iter()
                .map(|(m, d)| json!({ "m": m, "det": d.to_string() }))
                .collect::<Vec<_>>()))
            .passed_if(dets.iter().all(|(_, d)| !d.is_zero())),
    );
    Ok(())
}

fn mu_suite(spec: &SuiteSpec, out: &mut Vec<VerificationReport>) -> Result<(), SuiteError> {
    let s = KExponent::Symbolic;
    let ns = spec.ns(Suite::Mu)?;
    for &n in &ns {
        let aut = mu_automorphism(n, s)?;
        let prime = mu_matrix(n, s)?;
        let dbl = mu_doubleprime(n, s)?;
        out.push(relations_report("mu-relations", &aut)?.param("n", n));
        out.push(relations_report("mu-prime-relations", &prime)?.param("n", n));
        out.push(relations_report("mu-doubleprime-relations", &dbl)?.param("n", n));

        let mut jac_ok = true;
        for i in 1..n {
            let g = Generator::ell(i);
            let jac = magnus_jacobian(aut.image(g).expect("image")).map_err(|e| {
                SuiteError::InvalidConfig(format!("jacobian failed: {e}"))
            })?;
            jac_ok &= prime.image(g) == Some(&jac);
        }
        out.push(
            VerificationReport::new("jacobian-block-matrix")
                .param("n", n)
                .passed_if(jac_ok),
        );

        let p = mu_conjugator(n, s);
        let conj_ok = prime
            .generator_images()
            .iter()
            .zip(dbl.generator_images())
            .all(|(m, d)| conjugate(&p, m).map_or(false, |c| c == d));
        out.push(
            VerificationReport::new("mu-doubleprime-conjugation")
                .param("n", n)
                .passed_if(conj_ok),
        );
        let fixed = common_fixed_vector(&ratfun_images(&dbl)?)?;
        out.push(
            VerificationReport::new("mu-doubleprime-fixed-vector")
                .param("n", n)
                .with_data(json!({ "vector": render_vector(&fixed) }))
                .passed_if(all_ones(&fixed)),
        );
        let k0 = mu_matrix(n, KExponent::Integer(0))?;
        let fixed = common_fixed_vector(&ratfun_images(&k0)?)?;
        out.push(
            VerificationReport::new("mu-prime-k0-fixed-vector")
                .param("n", n)
                .with_data(json!({ "vector": render_vector(&fixed) }))
                .passed_if(all_ones(&fixed)),
        );
        if n >= 3 {
            let order = image_closure(&prime, spec.cap)?.len();
            let expected: usize = (1..=n).product();
            out.push(
                VerificationReport::new("mu-image-order")
                    .param("n", n)
                    .with_data(json!({ "order": order, "expected": expected }))
                    .passed_if(order == expected),
            );
        }
        if (4..=6).contains(&n) {
            out.push(kernel_is_pure_check(n, spec.depth, spec.cap)?);
        }
    }
    for n in [2, 3].into_iter().filter(|n| ns.contains(n)) {
        let rep = mu_matrix(n, s)?;
        let elements = small_triplet_elements(n)?;
        let images: Vec<Value> = elements
            .iter()
            .map(|w| Ok(json!({ "word": w.to_string(), "image": word_eval(&rep, w)?.to_string() })))
            .collect::<Result<_, SuiteError>>()?;
        out.push(
            VerificationReport::new("mu-faithful-by-enumeration")
                .param("n", n)
                .with_data(json!({ "elements": images }))
                .passed_if(faithfulness_by_enumeration(&rep, &elements)?),
        );
    }
    if ns.contains(&3) {
        let mu = mu_matrix(3, KExponent::Integer(1))?;
        let at2 = mu.map_images(|m| {
            Ok(m.map(|e| {
                e.eval(&[("t".to_string(), Rational::integer(2))].into_iter().collect())
                    .expect("t = 2 is a unit")
            }))
        })?;
        let irr = irreducibility_test(&at2, DEFAULT_SPAN_CAP)?;
        out.push(
            VerificationReport::new("mu-prime-reducible")
                .param("n", 3)
                .param("t", 2)
                .param("k", 1)
                .with_data(json!({
                    "spanDimension": irr.span_dimension,
                    "fixedVector": render_vector(&irr.fixed_vector),
                }))
                .passed_if(!irr.is_irreducible() && irr.fixed_vector.is_some()),
        );
    }
    Ok(())
}

fn two_local_suite(spec: &SuiteSpec, out: &mut Vec<VerificationReport>) -> Result<(), SuiteError> {
    for n in spec.ns(Suite::TwoLocal)? {
        let rep = lambda_homog(n, LaurentPoly::var("b", 1))?;
        out.push(relations_report("lambda-homog-relations", &rep)?.param("n", n));
    }
    for p in spec.primes(Suite::TwoLocal)? {
        let c = classify_homog_2local_fp(GroupKind::Triplet, p)?;
        out.push(census_report(&c)?);
    }
    Ok(())
}

fn l3_suite(spec: &SuiteSpec, out: &mut Vec<VerificationReport>) -> Result<(), SuiteError> {
    for j in 1..=4 {
        let rep = l3_family_symbolic(j)?;
        out.push(
            relations_report("l3-family-relations", &rep)?
                .param("family", j)
                .param("symbols", l3_family_parameters(j)),
        );
    }
    for p in spec.primes(Suite::L3Families)? {
        let c = classify_l3_2local_fp(p)?;
        out.push(census_report(&c)?);
    }
    Ok(())
}

fn failing_tags<I: GroupImage>(rep: &RepCandidate<I>) -> Result<Vec<&'static str>, SuiteError> {
    let mut tags: Vec<&'static str> = Vec::new();
    for c in check_relations(rep)? {
        if !c.passed && !tags.contains(&c.tag) {
            tags.push(c.tag);
        }
    }
    Ok(tags)
}

fn extensions_suite(spec: &SuiteSpec, out: &mut Vec<VerificationReport>) -> Result<(), SuiteError> {
    let (b, x) = (LaurentPoly::var("b", 1), LaurentPoly::var("x", 1));
    for n in spec.ns(Suite::Extensions)? {
        let lam = lambda_homog(n, b.clone())?;
        for sign in [1i8, -1] {
            for ext in [Extension::Virtual, Extension::Welded] {
                let rep = extend_standard(&lam, sign, ext)?;
                out.push(relations_report("standard-extension-relations", &rep)?.param("n", n));
            }
        }
        let w1 = omega(n, OmegaVariant::One, Some(b.clone()), x.clone(), Extension::Welded)?;
        out.push(relations_report("omega1-welded-relations", &w1)?.param("n", n));
        let w2 = omega(n, OmegaVariant::Two, None, x.clone(), Extension::Virtual)?;
        out.push(relations_report("omega2-virtual-relations", &w2)?.param("n", n));
        let w2w = omega(n, OmegaVariant::Two, None, x.clone(), Extension::Welded)?;
        let tags = failing_tags(&w2w)?;
        out.push(
            VerificationReport::new("omega2-fails-welded")
                .param("n", n)
                .with_data(json!({ "failedFamilies": tags }))
                .passed_if(tags == ["welded-l"]),
        );
    }
    for p in spec.primes(Suite::Extensions)? {
        for kind in [GroupKind::VirtualTriplet, GroupKind::WeldedTriplet] {
            let c: ClassificationCensus = classify_homog_2local_fp(kind, p)?;
            out.push(census_report(&c)?);
        }
    }
    omega1_faithfulness(spec, out)?;
    omega1_irreducibility(out)?;
    Ok(())
}

fn omega1_faithfulness(spec: &SuiteSpec, out: &mut Vec<VerificationReport>) -> Result<(), SuiteError> {
    let q = Rational::integer;
    out.push(
        VerificationReport::new("omega1-power-formula")
            .param("n", 2)
            .param("maxM", 6)
            .passed_if(omega1_power_formula(6)?),
    );
    let r = omega1_root_of_unity_report(q(2), q(-2), 24)?;
    let ok = r.passed() && r.data["m"] == json!(2);
    out.push(r.passed_if(ok));
    let r = omega1_root_of_unity_report(q(2), q(3), 24)?;
    let ok = r.passed() && r.data["m"].is_null();
    out.push(r.passed_if(ok));

    let (b, x) = (LaurentPoly::var("b", 1), LaurentPoly::var("x", 1));
    let sym3 = omega(3, OmegaVariant::One, Some(b.clone()), x.clone(), Extension::Virtual)?;
    let forget = sn_projection(
        ProjectionKind::ForgetEll,
        &presentation_of(GroupKind::VirtualTriplet, 3)?,
    )?;
    let w = GroupWord::parse("(l1 r2)^3")?;
    let certified = certify_kernel_witness(&sym3, &forget, &w)?;
    let num3 = omega(3, OmegaVariant::One, Some(q(2)), q(3), Extension::Virtual)?;
    let found = kernel_witness_search(&num3, &forget, spec.depth.min(6))?;
    let found_ok = match &found {
        Some(f) => certify_kernel_witness(&num3, &forget, f)?,
        None => false,
    };
    out.push(
        VerificationReport::new("omega1-kernel-n3")
            .param("oracle", "sn-forget-ell")
            .with_data(json!({
                "word": w.to_string(),
                "certifiedSymbolic": certified,
                "forgetEllImage": word_eval(&forget, &w)?.to_string(),
                "searchWitness": found.as_ref().map(|f| f.to_string()),
                "searchCertified": found_ok,
            }))
            .passed_if(certified && found_ok),
    );

    let num4 = omega(4, OmegaVariant::One, Some(q(2)), q(3), Extension::Virtual)?;
    let oracle = pair_reflection(4)?;
    let c = GroupWord::parse("l1 l3 l1 l3")?;
    let certified = certify_kernel_witness(&num4, &oracle, &c)?;
    let found = kernel_witness_search(&num4, &oracle, spec.depth.min(4))?;
    let found_ok = match &found {
        Some(f) => certify_kernel_witness(&num4, &oracle, f)?,
        None => false,
    };
    out.push(
        VerificationReport::new("omega1-kernel-n4")
            .param("oracle", "pair-reflection")
            .param("b", 2)
            .param("x", 3)
            .with_data(json!({
                "word": c.to_string(),
                "certified": certified,
                "searchWitness": found.as_ref().map(|f| f.to_string()),
                "searchCertified": found_ok,
            }))
            .passed_if(certified && found_ok),
    );
    Ok(())
}

fn omega1_irreducibility(out: &mut Vec<VerificationReport>) -> Result<(), SuiteError> {
    let (b, x) = (RationalFunction::var("b"), RationalFunction::var("x"));
    for n in [3, 4] {
        let w = omega(n, OmegaVariant::One, Some(b.clone()), x.clone(), Extension::Virtual)?;
        let irr = irreducibility_test(&w, DEFAULT_SPAN_CAP)?;
        out.push(
            VerificationReport::new("omega1-irreducible-generic")
                .param("n", n)
                .with_data(json!({ "spanDimension": irr.span_dimension }))
                .passed_if(irr.is_irreducible()),
        );
        let w = omega(n, OmegaVariant::One, Some(b.clone()), b.clone(), Extension::Virtual)?;
        let p = omega_normalizer(n, &b);
        let normal = w.map_images(|m| Ok(conjugate(&p, m)?))?;
        let irr = irreducibility_test(&normal, DEFAULT_SPAN_CAP)?;
        out.push(
            VerificationReport::new("omega1-reducible-at-b-equals-x")
                .param("n", n)
                .with_data(json!({
                    "spanDimension": irr.span_dimension,
                    "fixedVector": render_vector(&irr.fixed_vector),
                }))
                .passed_if(!irr.is_irreducible() && all_ones(&irr.fixed_vector)),
        );
        let q = Rational::integer;
        let w = omega(n, OmegaVariant::One, Some(q(2)), q(-2), Extension::Virtual)?;
        let irr = irreducibility_test(&w, DEFAULT_SPAN_CAP)?;
        out.push(
            VerificationReport::new("omega1-irreducible-specialized")
                .param("n", n)
                .param("b", 2)
                .param("x", -2)
                .with_data(json!({ "spanDimension": irr.span_dimension }))
                .passed_if(irr.is_irreducible()),
        );
    }
    Ok(())
}

/// Runs a suite; `Err` means the run itself could not complete.
pub fn run_suite(spec: &SuiteSpec) -> Result<SuiteReport, SuiteError> {
    let mut checks = Vec::new();
    let parts = match spec.suite {
        Suite::All => vec![
            Suite::Tits,
            Suite::Mu,
            Suite::TwoLocal,
            Suite::L3Families,
            Suite::Extensions,
        ],
        one => vec![one],
    };
    for part in parts {
        match part {
            Suite::Tits => tits_suite(spec, &mut checks)?,
            Suite::Mu => mu_suite(spec, &mut checks)?,
            Suite::TwoLocal => two_local_suite(spec, &mut checks)?,
            Suite::L3Families => l3_suite(spec, &mut checks)?,
            _ => extensions_suite(spec, &mut checks)?,
        }
    }
    Ok(SuiteReport {
        suite: spec.suite.name().into(),
        version: VERSION.into(),
        checks,
    })
}

/// A parsed `name:key=value,...` representation spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl FromStr for RepSpec {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = BTreeMap::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| SuiteError::BadRepSpec(format!("expected key=value, got `{part}`")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(RepSpec {
            name: name.trim().to_string(),
            params,
        })
    }
}

impl RepSpec {
    fn usize(&self, key: &str) -> Result<usize, SuiteError> {
        let v = self
            .params
            .get(key)
            .ok_or_else(|| SuiteError::BadRepSpec(format!("`{}` needs `{key}`", self.name)))?;
        v.parse()
            .map_err(|_| SuiteError::BadRepSpec(format!("`{key}` must be a nonnegative integer, got `{v}`")))
    }

    /// The value of `key` as a rational, or `None` for a symbolic parameter.
    fn rational(&self, key: &str) -> Result<Option<Rational>, SuiteError> {
        match self.params.get(key).map(String::as_str) {
            None | Some("sym") | Some("symbolic") => Ok(None),
            Some(v) => v
                .parse::<Rational>()
                .map(Some)
                .map_err(|e| SuiteError::BadRepSpec(format!("`{key}`: {e}"))),
        }
    }

    fn exponent(&self) -> Result<KExponent, SuiteError> {
        match self.params.get("k").map(String::as_str) {
            None | Some("sym") | Some("symbolic") | Some("k") => Ok(KExponent::Symbolic),
            Some(v) => v
                .parse()
                .map(KExponent::Integer)
                .map_err(|_| SuiteError::BadRepSpec(format!("`k` must be an integer, got `{v}`"))),
        }
    }

    fn extension(&self) -> Result<Extension, SuiteError> {
        match self.params.get("group").map(String::as_str) {
            None | Some("virtual") | Some("VL") => Ok(Extension::Virtual),
            Some("welded") | Some("WL") => Ok(Extension::Welded),
            Some(other) => Err(SuiteError::BadRepSpec(format!("unknown group `{other}`"))),
        }
    }

    /// Every parameter symbolic or every parameter numeric.
    fn all_numeric(&self, keys: &[&str]) -> Result<Option<Vec<Rational>>, SuiteError> {
        let vals: Vec<Option<Rational>> = keys
            .iter()
            .map(|k| self.rational(k))
            .collect::<Result<_, _>>()?;
        Ok(vals.into_iter().collect())
    }
}

fn symbol(name: &str, value: Option<Rational>) -> RationalFunction {
    value.map_or_else(|| RationalFunction::var(name), RationalFunction::from)
}

/// A representation built from a spec string, over whichever ring its
/// parameters need.
#[derive(Debug, Clone)]
pub enum BuiltRep {
    Rational(RepCandidate<Matrix<Rational>>),
    Laurent(RepCandidate<Matrix<LaurentPoly>>),
    RationalFunction(RepCandidate<Matrix<RationalFunction>>),
    Automorphism(RepCandidate<MonomialAutomorphism>),
}

impl From<RepCandidate<Matrix<Rational>>> for BuiltRep {
    fn from(r: RepCandidate<Matrix<Rational>>) -> Self {
        BuiltRep::Rational(r)
    }
}

impl From<RepCandidate<Matrix<LaurentPoly>>> for BuiltRep {
    fn from(r: RepCandidate<Matrix<LaurentPoly>>) -> Self {
        BuiltRep::Laurent(r)
    }
}

impl From<RepCandidate<Matrix<RationalFunction>>> for BuiltRep {
    fn from(r: RepCandidate<Matrix<RationalFunction>>) -> Self {
        BuiltRep::RationalFunction(r)
    }
}

impl From<RepCandidate<MonomialAutomorphism>> for BuiltRep {
    fn from(r: RepCandidate<MonomialAutomorphism>) -> Self {
        BuiltRep::Automorphism(r)
    }
}

fn render<I: GroupImage>(rep: &RepCandidate<I>, word: &GroupWord) -> Result<String, SuiteError> {
    Ok(word_eval(rep, word)?.to_string())
}

impl BuiltRep {
    /// Parses and builds `name:key=value,...`; see [`eval_word`] for the
    /// accepted names.
    pub fn from_spec(spec: &str) -> Result<Self, SuiteError> {
        let spec: RepSpec = spec.parse()?;
        let built = match spec.name.as_str() {
            "tits" => tits_theta(spec.usize("n")?)?.into(),
            "mu" | "mu-prime" => mu_matrix(spec.usize("n")?, spec.exponent()?)?.into(),
            "mu-aut" => mu_automorphism(spec.usize("n")?, spec.exponent()?)?.into(),
            "mu-doubleprime" => mu_doubleprime(spec.usize("n")?, spec.exponent()?)?.into(),
            "lambda" => {
                let n = spec.usize("n")?;
                match spec.rational("b")? {
                    Some(b) => lambda_homog(n, b)?.into(),
                    None => lambda_homog(n, LaurentPoly::var("b", 1))?.into(),
                }
            }
            "omega1" | "omega2" => {
                let n = spec.usize("n")?;
                let variant = if spec.name == "omega1" {
                    OmegaVariant::One
                } else {
                    OmegaVariant::Two
                };
                let ext = spec.extension()?;
                let keys: &[&str] = if variant == OmegaVariant::One { &["b", "x"] } else { &["x"] };
                match spec.all_numeric(keys)? {
                    Some(v) => {
                        let b = (variant == OmegaVariant::One).then(|| v[0].clone());
                        omega(n, variant, b, v[keys.len() - 1].clone(), ext)?.into()
                    }
                    None => {
                        let b = match variant {
                            OmegaVariant::One => Some(symbol("b", spec.rational("b")?)),
                            OmegaVariant::Two => None,
                        };
                        let x = symbol("x", spec.rational("x")?);
                        omega(n, variant, b, x, ext)?.into()
                    }
                }
            }
            "l3" => {
                let j = spec.usize("j")?;
                let names = l3_family_parameters(j);
                let params = names.iter().try_fold(
                    TwoLocalParams::over(RationalFunction::one()),
                    |acc, &name| {
                        Ok::<_, SuiteError>(acc.with(name, symbol(name, spec.rational(name)?)))
                    },
                )?;
                l3_family(j, &params)?.into()
            }
            "pair" => pair_reflection(spec.usize("n")?)?.into(),
            "forget-ell" => {
                let p = presentation_of(GroupKind::VirtualTriplet, spec.usize("n")?)?;
                sn_projection(ProjectionKind::ForgetEll, &p)?.into()
            }
            other => {
                return Err(SuiteError::BadRepSpec(format!("unknown representation `{other}`")))
            }
        };
        Ok(built)
    }

    pub fn name(&self) -> &str {
        match self {
            BuiltRep::Rational(r) => &r.name,
            BuiltRep::Laurent(r) => &r.name,
            BuiltRep::RationalFunction(r) => &r.name,
            BuiltRep::Automorphism(r) => &r.name,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            BuiltRep::Rational(r) => r.dimension(),
            BuiltRep::Laurent(r) => r.dimension(),
            BuiltRep::RationalFunction(r) => r.dimension(),
            BuiltRep::Automorphism(r) => r.dimension(),
        }
    }

    /// The image of `word`, rendered as text.
    pub fn eval(&self, word: &GroupWord) -> Result<String, SuiteError> {
        match self {
            BuiltRep::Rational(r) => render(r, word),
            BuiltRep::Laurent(r) => render(r, word),
            BuiltRep::RationalFunction(r) => render(r, word),
            BuiltRep::Automorphism(r) => render(r, word),
        }
    }

    pub fn relations(&self) -> Result<Vec<RelationCheck>, SuiteError> {
        let out = match self {
            BuiltRep::Rational(r) => check_relations(r)?,
            BuiltRep::Laurent(r) => check_relations(r)?,
            BuiltRep::RationalFunction(r) => check_relations(r)?,
            BuiltRep::Automorphism(r) => check_relations(r)?,
        };
        Ok(out)
    }
}

/// Evaluates `word` under the representation described by `spec`.
///
/// Specs: `tits:n=N`, `mu:n=N[,k=K]`, `mu-aut:n=N[,k=K]`,
/// `mu-doubleprime:n=N[,k=K]`, `lambda:n=N[,b=B]`, `omega1:n=N[,b=B][,x=X][,group=welded]`,
/// `omega2:n=N[,x=X][,group=welded]`, `l3:j=J[,params]`, `pair:n=N`,
/// `forget-ell:n=N`. Omitted parameters stay symbolic.
pub fn eval_word(spec: &str, word: &str) -> Result<String, SuiteError> {
    let rep = BuiltRep::from_spec(spec)?;
    rep.eval(&GroupWord::parse(word)?)
}

/// Census kinds accepted on the command line.
pub fn census_by_name(kind: &str, p: u32) -> Result<ClassificationCensus, SuiteError> {
    let census = match kind {
        "triplet" | "L" => classify_homog_2local_fp(GroupKind::Triplet, p)?,
        "virtual" | "VL" => classify_homog_2local_fp(GroupKind::VirtualTriplet, p)?,
        "welded" | "WL" => classify_homog_2local_fp(GroupKind::WeldedTriplet, p)?,
        "l3" | "L3" => classify_l3_2local_fp(p)?,
        other => {
            return Err(SuiteError::InvalidConfig(format!(
                "unknown census kind `{other}`; expected triplet, virtual, welded or l3"
            )))
        }
    };
    Ok(census)
}
