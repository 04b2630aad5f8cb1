use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::casimir::{casimir, GroupScale};
use super::nu::{canonical_eigenvalue_exact, sasaki_parameters, to_f64};
use super::roots::{int, rat, RootType};
use super::table::{lookup, CaseRecord, FiberAction};
use crate::error::{consistency, parameter, Error, Result};
use crate::homspace::{structure_triples, DiagonalMetric, EinsteinCandidate, StabilityVerdict, Witness};
use crate::liecore::{build_algebra, elementary_skew, triple_s3_basis, BackgroundForm, CMatrix, Family};

/// Largest weight coordinate visited by the class-one search on `SU(2)^3`.
pub const TRIPLE_SEARCH_BOUND: i64 = 3;

const SP_SU_THRESHOLD: i64 = -8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    TripleS3,
    Hyperquadric(i64),
    E6,
    E7,
    Grassmannian(i64),
    SpSu(i64),
}

impl CaseId {
    pub fn validate(self) -> Result<Self> {
        let bad = |what: &str, v: i64, min: i64| {
            Err(parameter(format!("{what} needs parameter >= {min}, got {v}")))
        };
        match self {
            CaseId::Hyperquadric(m) if m < 3 => bad("hyperquadric", m, 3),
            CaseId::Grassmannian(p) if p < 2 => bad("grassmannian", p, 2),
            CaseId::SpSu(k) if k < 4 => bad("sp-su", k, 4),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::TripleS3 => write!(f, "triple-S3"),
            CaseId::Hyperquadric(m) => write!(f, "hyperquadric({m})"),
            CaseId::E6 => write!(f, "E6"),
            CaseId::E7 => write!(f, "E7"),
            CaseId::Grassmannian(p) => write!(f, "grassmannian({p})"),
            CaseId::SpSu(k) => write!(f, "sp-su({k})"),
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        let (name, arg) = match lower.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| parameter(format!("unbalanced parentheses in '{s}'")))?;
                let v: i64 = inner
                    .trim()
                    .parse()
                    .map_err(|_| parameter(format!("bad parameter in '{s}'")))?;
                (name.trim().to_owned(), Some(v))
            }
            None => (lower.clone(), None),
        };
        let id = match (name.as_str(), arg) {
            ("triple-s3", None) => CaseId::TripleS3,
            ("e6", None) => CaseId::E6,
            ("e7", None) => CaseId::E7,
            ("hyperquadric", Some(m)) => CaseId::Hyperquadric(m),
            ("grassmannian", Some(p)) => CaseId::Grassmannian(p),
            ("sp-su", Some(k)) => CaseId::SpSu(k),
            _ => return Err(parameter(format!("unknown spectral case '{s}'"))),
        };
        id.validate()
    }
}

/// Outcome of a spectral instability test for one case.
#[derive(Debug, Clone)]
pub struct NuReport {
    pub case: CaseId,
    pub group: String,
    pub subgroup: String,
    /// Real dimension `2m` of the Kähler base of a circle bundle.
    pub base_dimension: Option<i64>,
    pub einstein_constant: BigRational,
    /// Squared length of the fiber generator under the negative Killing form.
    pub fiber_length: Option<BigRational>,
    pub representation: String,
    pub representation_dimension: Option<BigInt>,
    pub casimir_prime: Option<BigRational>,
    pub casimir_q: Option<BigRational>,
    /// Quantity compared against `threshold`.
    pub eigenvalue: BigRational,
    pub threshold: BigRational,
    pub destabilizing_dimension: Option<BigInt>,
    pub search_bound: Option<i64>,
    pub citation: String,
    pub verdict: StabilityVerdict,
}

impl NuReport {
    /// Exact form of the inequality the verdict rests on.
    pub fn exact_margin(&self) -> BigRational {
        self.threshold.clone() - self.eigenvalue.clone()
    }

    fn check(self) -> Result<Self> {
        let float_unstable = self.verdict.witness.margin() > 0.0;
        if float_unstable != self.exact_margin().is_positive() {
            return Err(consistency(format!(
                "floating point verdict for {} disagrees with exact arithmetic",
                self.case
            )));
        }
        Ok(self)
    }
}

/// Best rational approximation with denominator at most `max_den`
/// agreeing with `x` to `tol`.
pub(crate) fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - x).abs() <= tol * x.abs().max(1.0) {
            return Some(rat(h1, k1));
        }
        let frac = r - a;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Einstein constant of the normal metric on `SU(2)^3 / diag SU(2)` induced
/// by `-tr` on each factor.
pub fn triple_s3_einstein_constant() -> Result<f64> {
    let data = structure_triples(&triple_s3_basis()?, BackgroundForm::Trace(1.0))?;
    let candidate = EinsteinCandidate::evaluate(&data, DiagonalMetric::new(vec![1.0])?);
    if !candidate.is_einstein() {
        return Err(consistency("normal metric on the triple S^3 space is not Einstein"));
    }
    Ok(candidate.lambda)
}

/// `-Q(J, J)` recomputed for the generator `J` of `SO(2)` inside `so(m+2)`.
pub fn hyperquadric_fiber_length(m: i64) -> Result<f64> {
    let n = usize::try_from(m + 2).map_err(|_| parameter("negative dimension"))?;
    let g = build_algebra(Family::So, n)?;
    let j = CMatrix::real(elementary_skew(n, n - 2, n - 1));
    Ok(g.form(BackgroundForm::NegativeKilling, &j, &j))
}

fn exact_from(x: f64, what: &str) -> Result<BigRational> {
    rationalize(x, 1_000_000, 1e-11).ok_or_else(|| consistency(format!("{what} = {x} is not a small rational")))
}

fn clebsch_gordan_invariants(a: i64, b: i64, c: i64) -> u32 {
    u32::from((a - b).abs() <= c && c <= a + b && (a + b + c) % 2 == 0)
}

fn triple_s3(record: &CaseRecord) -> Result<NuReport> {
    let su2 = GroupScale::new(RootType::A(1))?;
    let lambda = exact_from(triple_s3_einstein_constant()?, "Einstein constant")?;

    let mut best: Option<BigRational> = None;
    let mut eigenspace = BigInt::zero();
    let mut minimizers = Vec::new();
    let range = 0..=TRIPLE_SEARCH_BOUND;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                let mult = clebsch_gordan_invariants(a, b, c);
                if mult == 0 || a + b + c == 0 {
                    continue;
                }
                let mut value = BigRational::zero();
                let mut dim = BigInt::one();
                for w in [a, b, c] {
                    value += casimir(&su2, &[w])?.prime;
                    dim *= su2.dimension(&[w])?;
                }
                let dim = dim * BigInt::from(mult);
                match &best {
                    Some(v) if value > *v => {}
                    Some(v) if value == *v => {
                        eigenspace += dim;
                        minimizers.push(vec![a, b, c]);
                    }
                    _ => {
                        best = Some(value);
                        eigenspace = dim;
                        minimizers = vec![vec![a, b, c]];
                    }
                }
            }
        }
    }
    let eigenvalue = best.ok_or_else(|| consistency("class-one search found nothing"))?;
    let representative: Vec<i64> = record.weight.iter().map(|&w| w as i64).collect();
    if !minimizers.contains(&representative) {
        return Err(consistency("curated representative is not a Casimir minimizer"));
    }
    if record.reference_casimir.as_ref().is_some_and(|r| *r != eigenvalue) {
        return Err(consistency("triple S^3 Casimir disagrees with the curated value"));
    }
    let verdict = StabilityVerdict::from_witness(
        Witness::EigenvalueGap {
            eigenvalue: to_f64(&eigenvalue),
            einstein_constant: to_f64(&lambda),
        },
        eigenspace.to_usize().unwrap_or(usize::MAX),
    );
    NuReport {
        case: CaseId::TripleS3,
        group: record.group.clone(),
        subgroup: record.subgroup.clone(),
        base_dimension: None,
        threshold: int(2) * lambda.clone(),
        einstein_constant: lambda,
        fiber_length: None,
        representation: format!("{} minimizers of the Casimir, e.g. spin weights {:?}", minimizers.len(), representative),
        representation_dimension: Some(BigInt::from(4)),
        casimir_prime: Some(eigenvalue.clone()),
        casimir_q: None,
        eigenvalue,
        destabilizing_dimension: Some(eigenspace),
        search_bound: Some(TRIPLE_SEARCH_BOUND),
        citation: record.citation.clone(),
        verdict,
    }
    .check()
}

struct Bundle {
    case: CaseId,
    kind: RootType,
    m: i64,
    group: String,
    subgroup: String,
}

fn circle_bundle(bundle: Bundle, record: &CaseRecord) -> Result<NuReport> {
    let scale = GroupScale::new(bundle.kind)?;
    let [index] = record.weight[..] else {
        return Err(consistency(format!("record {} must name one fundamental weight", record.id)));
    };
    let weight = scale.fundamental(index)?;
    let value = casimir(&scale, &weight)?;
    if record.reference_casimir.as_ref().is_some_and(|r| *r != value.prime) {
        return Err(consistency(format!("Casimir of {} disagrees with the curated value", record.id)));
    }
    let dim = scale.dimension(&weight)?;
    let sasaki = sasaki_parameters(bundle.m)?;

    let (fiber_length, eigenvalue) = match record.fiber {
        FiberAction::Nontrivial => {
            let a = exact_from(hyperquadric_fiber_length(bundle.m)?, "fiber length")?;
            let e = canonical_eigenvalue_exact(&value.q, 1, &a, bundle.m);
            (Some(a), e)
        }
        _ => (None, value.q.clone()),
    };
    let destabilizing = BigInt::from(record.trivial_multiplicity) * BigInt::from(record.conjugate_factor) * dim.clone();
    let verdict = StabilityVerdict::from_witness(
        Witness::EigenvalueGap {
            eigenvalue: to_f64(&eigenvalue),
            einstein_constant: to_f64(&sasaki.einstein_constant),
        },
        destabilizing.to_usize().unwrap_or(usize::MAX),
    );
    NuReport {
        case: bundle.case,
        group: bundle.group,
        subgroup: bundle.subgroup,
        base_dimension: Some(2 * bundle.m),
        einstein_constant: sasaki.einstein_constant,
        fiber_length,
        representation: format!("omega_{index} of {}", bundle.kind),
        representation_dimension: Some(dim),
        casimir_prime: Some(value.prime),
        casimir_q: Some(value.q),
        eigenvalue,
        threshold: sasaki.two_lambda,
        destabilizing_dimension: Some(destabilizing),
        search_bound: None,
        citation: record.citation.clone(),
        verdict,
    }
    .check()
}

fn sp_su(k: i64) -> Result<NuReport> {
    let eigenvalue = rat(-2 * (k * k + k + 2), k + 1);
    let threshold = int(SP_SU_THRESHOLD);
    let verdict = StabilityVerdict::from_witness(
        Witness::OperatorEigenvalue {
            eigenvalue: to_f64(&eigenvalue),
            threshold: to_f64(&threshold),
        },
        1,
    );
    NuReport {
        case: CaseId::SpSu(k),
        group: format!("Sp({k})"),
        subgroup: format!("SU({k})"),
        base_dimension: None,
        einstein_constant: BigRational::zero(),
        fiber_length: None,
        representation: "invariant trace-free symmetric 2-tensor".to_owned(),
        representation_dimension: None,
        casimir_prime: None,
        casimir_q: None,
        eigenvalue,
        threshold,
        destabilizing_dimension: None,
        search_bound: None,
        citation: "the Lichnerowicz-type operator on the invariant direction transverse to the fiber has this closed-form eigenvalue".to_owned(),
        verdict,
    }
    .check()
}

pub fn case_study(id: CaseId) -> Result<NuReport> {
    let id = id.validate()?;
    match id {
        CaseId::TripleS3 => triple_s3(lookup("triple-S3")?),
        CaseId::Hyperquadric(m) => {
            let record = lookup("hyperquadric")?;
            let bundle = Bundle {
                case: id,
                kind: RootType::orthogonal((m + 2) as usize)?,
                m,
                group: format!("SO({})", m + 2),
                subgroup: format!("SO({m})xSO(2)"),
            };
            circle_bundle(bundle, record)
        }
        CaseId::E6 | CaseId::E7 => {
            let (key, kind, m) = if id == CaseId::E6 { ("E6", RootType::E6, 16) } else { ("E7", RootType::E7, 27) };
            let record = lookup(key)?;
            let bundle = Bundle {
                case: id,
                kind,
                m,
                group: record.group.clone(),
                subgroup: record.subgroup.clone(),
            };
            circle_bundle(bundle, record)
        }
        CaseId::Grassmannian(p) => {
            let record = lookup(if p == 2 { "grassmannian-p2" } else { "grassmannian" })?;
            let bundle = Bundle {
                case: id,
                kind: RootType::A((p + 1) as usize),
                m: 2 * p,
                group: format!("SU({})", p + 2),
                subgroup: format!("S(U({p})xU(2))"),
            };
            circle_bundle(bundle, record)
        }
        CaseId::SpSu(k) => sp_su(k),
    }
}
