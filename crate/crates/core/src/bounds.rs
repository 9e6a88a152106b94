//! Lower bounds on `d(Γ̂)` from hom counts, as self-checking certificates.
//!
//! A conclusion `c` is certified when the product of per-factor count lower
//! bounds exceeds `|H|^(c-1)`; every comparison is between exact integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homcount::{count_homs, ln_big};
use crate::presentation::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofKind {
    ExactCount,
    PowerInequality,
    SymbolicStrict,
}

impl fmt::Display for ProofKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofKind::ExactCount => "exact-count",
            ProofKind::PowerInequality => "power-inequality",
            ProofKind::SymbolicStrict => "symbolic-strict",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = ">=")]
    GreaterEq,
}

impl Relation {
    pub fn holds(self, lhs: &BigUint, rhs: &BigUint) -> bool {
        match self {
            Relation::Greater => lhs > rhs,
            Relation::GreaterEq => lhs >= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Greater => ">",
            Relation::GreaterEq => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    #[serde(with = "crate::bigstr")]
    pub lhs: BigUint,
    #[serde(with = "crate::bigstr")]
    pub rhs: BigUint,
    pub relation: Relation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContributionKind {
    /// `count` is the exact number of homomorphisms.
    Exact,
    /// `count = p^(l m units)`, a lower bound from the semidirect construction.
    Formula,
    /// `count = k! + 1`, a lower bound into `Sym(k)`.
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorContribution {
    pub factor: String,
    pub kind: ContributionKind,
    /// Number of generators of the factor as given, an upper bound on its `d`.
    pub generators: u64,
    #[serde(with = "crate::bigstr")]
    pub count: BigUint,
    #[serde(with = "crate::bigstr")]
    pub target_order: BigUint,
    /// How many copies of `p^(lm)` a formula contribution stands for.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub units: u64,
    /// Display value of `ln(count) / ln(target_order)`.
    pub h: f64,
}

fn one() -> u64 {
    1
}

fn is_one(x: &u64) -> bool {
    *x == 1
}

/// Exact ingredients of a semidirect-target bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaParams {
    #[serde(with = "crate::bigstr")]
    pub p: BigUint,
    pub l: u64,
    pub m: u64,
    #[serde(with = "crate::bigstr")]
    pub r: BigUint,
}

impl FormulaParams {
    /// `p^(l m)`, the order of `V^m`.
    pub fn module_order(&self) -> BigUint {
        self.p.pow((self.l * self.m) as u32)
    }

    pub fn target_order(&self) -> BigUint {
        self.module_order() * &self.r
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub name: String,
    #[serde(with = "crate::bigstr")]
    pub order: BigUint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub factors: Vec<String>,
    pub target: Target,
    pub per_factor: Vec<FactorContribution>,
    pub total_h: f64,
    pub comparison: Comparison,
    pub conclusion: u64,
    pub proof_kind: ProofKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<FormulaParams>,
    /// Set when a step of the construction was inconclusive; the arithmetic
    /// still checks but the stated factors were not all realized.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conditional: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Construction parameters, all as decimal strings or lists of them.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub construction: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
}

impl BoundCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

fn h_of(count: &BigUint, order: &BigUint) -> f64 {
    if order <= &BigUint::one() {
        0.0
    } else {
        ln_big(count) / ln_big(order)
    }
}

impl FactorContribution {
    pub fn exact(factor: impl Into<String>, generators: u64, count: BigUint, order: BigUint) -> Self {
        let h = h_of(&count, &order);
        FactorContribution {
            factor: factor.into(),
            kind: ContributionKind::Exact,
            generators,
            count,
            target_order: order,
            units: 1,
            h,
        }
    }

    pub fn formula(
        factor: impl Into<String>,
        generators: u64,
        params: &FormulaParams,
        units: u64,
    ) -> Self {
        let count = params.module_order().pow(units as u32);
        let order = params.target_order();
        let h = h_of(&count, &order);
        FactorContribution {
            factor: factor.into(),
            kind: ContributionKind::Formula,
            generators,
            count,
            target_order: order,
            units,
            h,
        }
    }

    pub fn symbolic(factor: impl Into<String>, generators: u64, k_factorial: &BigUint) -> Self {
        let count = k_factorial + 1u32;
        let h = h_of(&count, k_factorial);
        FactorContribution {
            factor: factor.into(),
            kind: ContributionKind::Symbolic,
            generators,
            count,
            target_order: k_factorial.clone(),
            units: 1,
            h,
        }
    }
}

/// Largest `c` with `product > order^(c-1)`; 0 when the product is 1.
pub fn certified_conclusion(product: &BigUint, order: &BigUint) -> Result<u64> {
    if order <= &BigUint::one() {
        return Err(Error::Invalid("the target group must be nontrivial".into()));
    }
    if product.is_one() {
        return Ok(0);
    }
    let mut c = 1u64;
    let mut power = BigUint::one();
    loop {
        let next = &power * order;
        if product > &next {
            power = next;
            c += 1;
        } else {
            return Ok(c);
        }
    }
}

/// Certificate from exact per-factor counts into one target.
pub fn certificate_from_counts(
    target: Target,
    per_factor: Vec<FactorContribution>,
) -> Result<BoundCertificate> {
    let product: BigUint = per_factor.iter().map(|f| f.count.clone()).product();
    let conclusion = certified_conclusion(&product, &target.order)?;
    let comparison = if conclusion == 0 {
        Comparison {
            lhs: product,
            rhs: BigUint::one(),
            relation: Relation::GreaterEq,
        }
    } else {
        Comparison {
            lhs: product,
            rhs: target.order.pow((conclusion - 1) as u32),
            relation: Relation::Greater,
        }
    };
    Ok(BoundCertificate {
        factors: per_factor.iter().map(|f| f.factor.clone()).collect(),
        total_h: per_factor.iter().map(|f| f.h).sum(),
        target,
        per_factor,
        comparison,
        conclusion,
        proof_kind: ProofKind::ExactCount,
        formula: None,
        conditional: false,
        notes: vec![],
        construction: BTreeMap::new(),
        generated_at: None,
    })
}

/// Certificate for formula contributions `p^(lm)` per unit into a target of
/// order `p^(lm) r`: conclusion `c` holds when `p^(lm(U-c+1)) > r^(c-1)`.
pub fn certificate_from_formula(
    params: FormulaParams,
    target_name: impl Into<String>,
    per_factor: Vec<FactorContribution>,
) -> Result<BoundCertificate> {
    let units: u64 = per_factor.iter().map(|f| f.units).sum();
    if units == 0 {
        return Err(Error::Invalid("formula certificate without factors".into()));
    }
    let q = params.module_order();
    if q <= BigUint::one() {
        return Err(Error::Invalid("p^(lm) must exceed 1".into()));
    }
    // largest c <= units with q^(units-c+1) > r^(c-1); c = 1 always holds
    let mut c = units;
    let (lhs, rhs) = loop {
        let lhs = q.pow((units + 1 - c) as u32);
        let rhs = params.r.pow((c - 1) as u32);
        if lhs > rhs || c == 1 {
            break (lhs, rhs);
        }
        c -= 1;
    };
    let conclusion = c;
    Ok(BoundCertificate {
        factors: per_factor.iter().map(|f| f.factor.clone()).collect(),
        total_h: per_factor.iter().map(|f| f.h).sum(),
        target: Target {
            name: target_name.into(),
            order: params.target_order(),
        },
        per_factor,
        comparison: Comparison {
            lhs,
            rhs,
            relation: Relation::Greater,
        },
        conclusion,
        proof_kind: ProofKind::PowerInequality,
        formula: Some(params),
        conditional: false,
        notes: vec![],
        construction: BTreeMap::new(),
        generated_at: None,
    })
}

/// Counts each factor into `H` and certifies the least integer `>= Σh`.
pub fn lower_bound_explicit(factors: &[Presentation], h: &FiniteGroup) -> Result<BoundCertificate> {
    let order = BigUint::from(h.order_usize()?);
    let per_factor = factors
        .iter()
        .map(|f| {
            let r = count_homs(f, h)?;
            Ok(FactorContribution::exact(
                f.name(),
                f.num_generators() as u64,
                r.count,
                r.target_order,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    certificate_from_counts(
        Target {
            name: h.name().to_string(),
            order,
        },
        per_factor,
    )
}

/// `n - Σ 1/|G_i|`.
pub fn weak_bound(orders: &[u64]) -> Result<BigRational> {
    if orders.contains(&0) {
        return Err(Error::Invalid("group orders are positive".into()));
    }
    let n = BigRational::from_integer(orders.len().into());
    Ok(orders.iter().fold(n, |acc, &o| {
        acc - BigRational::new(1.into(), o.into())
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub index: usize,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestBound {
    pub best_index: usize,
    pub certificate: BoundCertificate,
    pub candidates: Vec<Candidate>,
}

/// Σh of `a` against `b`, exactly when the targets agree.
fn compare_h(a: &BoundCertificate, b: &BoundCertificate) -> std::cmp::Ordering {
    if a.target.order == b.target.order {
        return a.comparison.lhs.cmp(&b.comparison.lhs);
    }
    let (x, y) = (a.total_h, b.total_h);
    if (x - y).abs() <= 1e-12 * x.abs().max(y.abs()) {
        std::cmp::Ordering::Equal
    } else {
        x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Tries every target in the library; keeps the highest conclusion, then the
/// larger Σh, then the earlier library index.
pub fn best_bound(factors: &[Presentation], library: &[FiniteGroup]) -> Result<BestBound> {
    if library.is_empty() {
        return Err(Error::Invalid("the target library is empty".into()));
    }
    let results: Vec<Result<BoundCertificate>> = library
        .par_iter()
        .map(|h| lower_bound_explicit(factors, h))
        .collect();
    let mut best: Option<(usize, &BoundCertificate)> = None;
    let mut candidates = Vec::new();
    for (i, (r, h)) in results.iter().zip(library).enumerate() {
        match r {
            Ok(cert) => {
                candidates.push(Candidate {
                    index: i,
                    target: h.name().to_string(),
                    conclusion: Some(cert.conclusion),
                    total_h: Some(cert.total_h),
                    error: None,
                });
                let better = match best {
                    None => true,
                    Some((_, b)) => {
                        cert.conclusion > b.conclusion
                            || (cert.conclusion == b.conclusion
                                && compare_h(cert, b) == std::cmp::Ordering::Greater)
                    }
                };
                if better {
                    best = Some((i, cert));
                }
            }
            Err(e) => candidates.push(Candidate {
                index: i,
                target: h.name().to_string(),
                conclusion: None,
                total_h: None,
                error: Some(e.to_string()),
            }),
        }
    }
    match best {
        Some((i, cert)) => Ok(BestBound {
            best_index: i,
            certificate: cert.clone(),
            candidates,
        }),
        None => Err(Error::AllCandidatesFailed(
            candidates
                .iter()
                .map(|c| format!("{}: {}", c.target, c.error.as_deref().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("; "),
        )),
    }
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

/// Re-derives the conclusion from the stored numbers alone.
pub fn verify_certificate(cert: &BoundCertificate) -> Result<()> {
    let c = cert.conclusion;
    let cmp = &cert.comparison;
    if cert.factors.len() != cert.per_factor.len()
        || cert.factors.iter().zip(&cert.per_factor).any(|(a, f)| a != &f.factor)
    {
        return Err(fail("factor list and per-factor entries disagree".into()));
    }
    if cert
        .per_factor
        .iter()
        .any(|f| f.target_order != cert.target.order)
    {
        return Err(fail("a per-factor target order differs from the target".into()));
    }
    if cert.per_factor.iter().any(|f| f.count.is_zero()) {
        return Err(fail("a hom count is zero".into()));
    }
    if !cmp.relation.holds(&cmp.lhs, &cmp.rhs) {
        return Err(fail(format!(
            "stored comparison {} {} {} is false",
            cmp.lhs,
            cmp.relation.symbol(),
            cmp.rhs
        )));
    }
    let ceiling: u64 = cert.per_factor.iter().map(|f| f.generators).sum();
    if c > ceiling {
        return Err(fail(format!(
            "conclusion {c} exceeds the generator ceiling {ceiling}"
        )));
    }
    let n = &cert.target.order;
    match cert.proof_kind {
        ProofKind::ExactCount => {
            let product: BigUint = cert.per_factor.iter().map(|f| f.count.clone()).product();
            if cmp.lhs != product {
                return Err(fail("lhs is not the product of the counts".into()));
            }
            if c == 0 {
                if !(cmp.rhs.is_one() && cmp.relation == Relation::GreaterEq) {
                    return Err(fail("conclusion 0 must compare against 1 with >=".into()));
                }
            } else {
                if cmp.relation != Relation::Greater || cmp.rhs != n.pow((c - 1) as u32) {
                    return Err(fail(format!("rhs must be |H|^{} with >", c - 1)));
                }
                let exact = cert
                    .per_factor
                    .iter()
                    .all(|f| f.kind == ContributionKind::Exact);
                if exact && product > n.pow(c as u32) {
                    return Err(fail(format!(
                        "the counts certify more than {c}; the conclusion is not the least integer above the sum"
                    )));
                }
            }
            if c == 0 && !product.is_one() {
                return Err(fail("a nontrivial count certifies at least 1".into()));
            }
        }
        ProofKind::PowerInequality => {
            let params = cert
                .formula
                .as_ref()
                .ok_or_else(|| fail("power-inequality certificate without formula".into()))?;
            if &params.target_order() != n {
                return Err(fail("target order is not p^(lm) r".into()));
            }
            let q = params.module_order();
            let mut units = 0u64;
            for f in &cert.per_factor {
                if f.kind == ContributionKind::Symbolic {
                    return Err(fail("symbolic contribution in a power-inequality certificate".into()));
                }
                // an exact count can stand in for a formula unit when it is at least as large
                let floor = q.pow(f.units as u32);
                if f.count < floor {
                    return Err(fail(format!("count for {} is below p^(lm units)", f.factor)));
                }
                units += f.units;
            }
            if c == 0 || c > units {
                return Err(fail(format!("conclusion {c} outside 1..={units}")));
            }
            if cmp.lhs != q.pow((units - c + 1) as u32)
                || cmp.rhs != params.r.pow((c - 1) as u32)
                || cmp.relation != Relation::Greater
            {
                return Err(fail("comparison is not p^(lm(U-c+1)) > r^(c-1)".into()));
            }
        }
        ProofKind::SymbolicStrict => {
            if cmp.rhs != *n || cmp.lhs != n + 1u32 || cmp.relation != Relation::Greater {
                return Err(fail("comparison is not |H| + 1 > |H|".into()));
            }
            if cert.per_factor.iter().any(|f| f.count < cmp.lhs) {
                return Err(fail("a factor count is below |H| + 1".into()));
            }
            if c != cert.per_factor.len() as u64 + 1 {
                return Err(fail("symbolic-strict concludes n + 1".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn three_a5_factors_into_alt5() {
        let a5 = library::alternating(5);
        let f = vec![Presentation::alternating5(); 3];
        let cert = lower_bound_explicit(&f, &a5).unwrap();
        assert_eq!(cert.conclusion, 4);
        assert_eq!(cert.comparison.lhs, 1_771_561u32.into());
        assert_eq!(cert.comparison.rhs, 216_000u32.into());
        verify_certificate(&cert).unwrap();
    }

    #[test]
    fn trivial_factors_conclude_zero() {
        let f = vec![Presentation::cyclic(1); 3];
        let cert = lower_bound_explicit(&f, &library::symmetric(3)).unwrap();
        assert_eq!(cert.conclusion, 0);
        verify_certificate(&cert).unwrap();
    }

    #[test]
    fn conclusion_is_ceiling_of_sum() {
        assert_eq!(certified_conclusion(&90u32.into(), &24u32.into()).unwrap(), 2);
        assert_eq!(certified_conclusion(&576u32.into(), &24u32.into()).unwrap(), 2);
        assert_eq!(certified_conclusion(&577u32.into(), &24u32.into()).unwrap(), 3);
        assert_eq!(certified_conclusion(&2u32.into(), &24u32.into()).unwrap(), 1);
    }

    #[test]
    fn weak_bound_values() {
        assert_eq!(
            weak_bound(&[2, 3]).unwrap(),
            BigRational::new(7.into(), 6.into())
        );
        assert_eq!(
            weak_bound(&[60; 4]).unwrap(),
            BigRational::new(236.into(), 60.into())
        );
    }

    #[test]
    fn tampered_certificates_fail() {
        let cert = lower_bound_explicit(
            &[Presentation::cyclic(2), Presentation::cyclic(3)],
            &library::symmetric(4),
        )
        .unwrap();
        verify_certificate(&cert).unwrap();
        let mut bad = cert.clone();
        bad.conclusion = 3;
        assert!(verify_certificate(&bad).is_err());
        let mut bad = cert.clone();
        bad.comparison.lhs += 1u32;
        assert!(verify_certificate(&bad).is_err());
        let mut bad = cert;
        bad.per_factor[0].count = 1u32.into();
        assert!(verify_certificate(&bad).is_err());
    }

    #[test]
    fn formula_certificate() {
        let params = FormulaParams {
            p: 7u32.into(),
            l: 1,
            m: 1,
            r: 6u32.into(),
        };
        let pf = vec![
            FactorContribution::formula("C2", 1, &params, 1),
            FactorContribution::formula("C3", 1, &params, 1),
        ];
        let cert = certificate_from_formula(params, "H", pf).unwrap();
        assert_eq!(cert.conclusion, 2);
        assert_eq!(cert.comparison.lhs, 7u32.into());
        assert_eq!(cert.comparison.rhs, 6u32.into());
        verify_certificate(&cert).unwrap();
    }

    #[test]
    fn json_round_trip() {
        let cert = lower_bound_explicit(
            &[Presentation::cyclic(2), Presentation::cyclic(3)],
            &library::symmetric(4),
        )
        .unwrap();
        let s = cert.to_json();
        assert!(s.contains("\"lhs\": \"90\""));
        let back = BoundCertificate::from_json(&s).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), s);
    }
}
