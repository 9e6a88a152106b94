//! Quick invariant suites run by `hombound verify` without a certificate.

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::{lower_bound_explicit, verify_certificate, BoundCertificate};
use crate::constructions::solsol_construct;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::homcount::{count_homs, count_homs_cyclic, free_product_count, power_target_count};
use crate::library;
use crate::numtheory::{common_subset_sum, crt_solve, first_odd_primes};
use crate::perm::Permutation;
use crate::permgroup::centralizer_order_transitive;
use crate::presentation::Presentation;
use crate::subgroup::is_metabelian;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub passed: bool,
    pub detail: String,
}

fn check(suite: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        suite: suite.into(),
        passed,
        detail: detail.into(),
    }
}

fn small_targets() -> Vec<FiniteGroup> {
    vec![
        library::symmetric(3),
        library::symmetric(4),
        library::dihedral(4),
        library::alternating(4),
        library::quaternion(),
    ]
}

fn multiplicativity() -> Result<Check> {
    let pres = [Presentation::cyclic(2), Presentation::cyclic(3), Presentation::free(1)];
    let mut bad = Vec::new();
    for h in small_targets() {
        for a in &pres {
            for b in &pres {
                let joint = free_product_count(&[a.clone(), b.clone()], &h)?.count;
                let combined = count_homs(&Presentation::free_product(&[a.clone(), b.clone()]), &h)?.count;
                let split = count_homs(a, &h)?.count * count_homs(b, &h)?.count;
                if joint != split || combined != split {
                    bad.push(format!("{} * {} into {}", a.name(), b.name(), h.name()));
                }
            }
        }
    }
    Ok(check(
        "free-product-multiplicativity",
        bad.is_empty(),
        if bad.is_empty() { "45 products agree".to_string() } else { bad.join(", ") },
    ))
}

fn cyclic_closed_form() -> Result<Check> {
    let mut bad = Vec::new();
    for h in small_targets() {
        for m in 1..=12u64 {
            if count_homs_cyclic(m, &h)?.count != count_homs(&Presentation::cyclic(m), &h)?.count {
                bad.push(format!("C{m} into {}", h.name()));
            }
        }
    }
    Ok(check(
        "cyclic-closed-form",
        bad.is_empty(),
        if bad.is_empty() { "m = 1..12 on 5 targets".to_string() } else { bad.join(", ") },
    ))
}

fn power_invariance() -> Result<Check> {
    let mut bad = Vec::new();
    for h in [library::symmetric(3), library::klein_four(), library::cyclic(5)] {
        for p in [Presentation::cyclic(2), Presentation::cyclic(3)] {
            let single = count_homs(&p, &h)?.count;
            if power_target_count(&p, &h, 2)?.count != &single * &single {
                bad.push(format!("{} into {}^2", p.name(), h.name()));
            }
        }
    }
    Ok(check(
        "power-invariance",
        bad.is_empty(),
        if bad.is_empty() { "count(P, H^2) = count(P, H)^2".to_string() } else { bad.join(", ") },
    ))
}

fn crt_and_subset_sum() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for n in 1..=4 {
        let moduli = first_odd_primes(n);
        for i in 0..n {
            let r: Vec<u64> = (0..n).map(|j| if i == j { 1 } else { 2 }).collect();
            let x = crt_solve(&r, &moduli)?;
            if !r.iter().zip(&moduli).all(|(&a, &m)| x % m == a % m) {
                bad.push(format!("{r:?} mod {moduli:?} -> {x}"));
            }
        }
    }
    out.push(check("crt", bad.is_empty(), if bad.is_empty() { "n = 1..4".to_string() } else { bad.join(", ") }));

    let sets = vec![vec![2u64, 5, 9, 11], vec![3, 4, 7, 13]];
    let found = common_subset_sum(&sets, 100)?;
    let sums = |s: &[u64]| -> Vec<u64> {
        (0u32..1 << s.len())
            .map(|mask| (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).sum())
            .collect()
    };
    let (a, b) = (sums(&sets[0]), sums(&sets[1]));
    let brute = a.iter().filter(|&&x| x > 0 && b.contains(&x)).min().copied();
    let ok = found.as_ref().map(|c| c.k) == brute
        && found.as_ref().is_none_or(|c| {
            c.decompositions
                .iter()
                .zip(&sets)
                .all(|(d, s)| d.iter().sum::<u64>() == c.k && d.iter().all(|x| s.contains(x)))
        });
    out.push(check(
        "subset-sum-minimality",
        ok,
        format!("dp {:?}, brute force {brute:?}", found.map(|c| c.k)),
    ));
    Ok(out)
}

fn centralizers() -> Result<Check> {
    let groups = [
        library::cyclic(5),
        library::symmetric(4),
        library::dihedral(5),
        library::klein_four_regular(),
        library::affine_line(7, 2),
    ];
    let mut bad = Vec::new();
    for g in &groups {
        let n = g.degree().unwrap();
        let gens = g.perm_generators().unwrap();
        let fast = centralizer_order_transitive(g)?;
        let brute = all_perms(n)
            .into_iter()
            .filter(|c| {
                gens.iter()
                    .all(|x| c.compose(x).unwrap() == x.compose(c).unwrap())
            })
            .count() as u64;
        if fast != brute {
            bad.push(format!("{}: {fast} vs {brute}", g.name()));
        }
    }
    Ok(check(
        "centralizer-criterion",
        bad.is_empty(),
        if bad.is_empty() { "5 transitive groups, degree <= 7".to_string() } else { bad.join(", ") },
    ))
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn go(v: &mut Vec<u32>, k: usize, out: &mut Vec<Permutation>) {
        if k == v.len() {
            out.push(Permutation::from_images(v.clone()).unwrap());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            go(v, k + 1, out);
            v.swap(k, i);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n as u32).collect(), 0, &mut out);
    out
}

fn solsol_suites() -> Result<Vec<Check>> {
    let mut sound = Vec::new();
    let mut meta = Vec::new();
    for (primes, m) in [(vec![2u64, 3], 1u64), (vec![2, 3], 2), (vec![2], 1), (vec![3, 5], 1), (vec![2, 2, 2], 1)] {
        let r = solsol_construct(&primes, Some(m))?;
        let floor = r.target.params().module_order();
        for &q in &r.primes {
            let c = count_homs_cyclic(q, &r.target.group)?.count;
            if c < floor {
                sound.push(format!("C{q} into order {}: {c} < {floor}", r.target.order()));
            }
        }
        if r.target.order() <= BigUint::from(5000u32) && !is_metabelian(&r.target.group)? {
            meta.push(format!("{primes:?}, m = {m}"));
        }
    }
    Ok(vec![
        check(
            "formula-soundness",
            sound.is_empty(),
            if sound.is_empty() { "explicit counts reach p^(lm)".to_string() } else { sound.join(", ") },
        ),
        check(
            "solsol-metabelian",
            meta.is_empty(),
            if meta.is_empty() { "second derived subgroups trivial".to_string() } else { meta.join(", ") },
        ),
    ])
}

fn certificate_round_trip() -> Result<Check> {
    let c = lower_bound_explicit(
        &[Presentation::cyclic(2), Presentation::cyclic(3)],
        &library::symmetric(3),
    )?;
    let back = BoundCertificate::from_json(&c.to_json())?;
    let ok = back == c && verify_certificate(&back).is_ok();
    Ok(check("certificate-round-trip", ok, format!("conclusion {}", c.conclusion)))
}

/// Runs every suite; failures are reported, not raised.
pub fn run_invariant_suites() -> Result<Vec<Check>> {
    let mut out = vec![
        multiplicativity()?,
        cyclic_closed_form()?,
        power_invariance()?,
    ];
    out.extend(crt_and_subset_sum()?);
    out.push(centralizers()?);
    out.extend(solsol_suites()?);
    out.push(certificate_round_trip()?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    #[test]
    fn suites_pass() {
        for c in super::run_invariant_suites().unwrap() {
            assert!(c.passed, "{}: {}", c.suite, c.detail);
        }
    }
}
