use std::fmt::Write as _;

use btw_core::kernel::is_irreducible;
use btw_core::rational::{int, ratio, to_ratio_string, Rational};
use btw_core::sabem::{
    cross_term_closed_form, cross_term_quadratic_form, derive_w_prime, encode_triple,
    enumerate_moments, first_moment, second_moment_closed_form, second_moment_enumerated,
    table1_distribution, table2_report, w_prime_relations, xp_polynomial, xp_weight, CASE_WEIGHTS,
    DIAGONAL_WEIGHT, ENUMERATION_MAX_N, W_PRIME,
};
use btw_core::{Constraint, Instance};
use serde::Serialize;

use crate::commands::to_json;
use crate::{read_instance, Failure, Format, VerifyArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    status: Status,
    computed: String,
    expected: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl Check {
    fn compare(name: &'static str, computed: String, expected: String) -> Self {
        let status = if computed == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name,
            status,
            computed,
            expected,
            note: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Serialize)]
struct Report {
    passed: bool,
    checks: Vec<Check>,
}

fn list(rs: &[Rational]) -> String {
    rs.iter().map(to_ratio_string).collect::<Vec<_>>().join(" ")
}

fn pair_case_weights() -> Check {
    let report = table2_report();
    let computed: Vec<Rational> = report.cases.iter().map(|c| c.computed.clone()).collect();
    let expected: Vec<Rational> = CASE_WEIGHTS.iter().map(|&w| int(w)).collect();
    let mut check = Check::compare("pair_case_weights", list(&computed), list(&expected));
    if !report.all_match {
        check.status = Status::Fail;
        let off: Vec<String> = report
            .cases
            .iter()
            .filter(|c| !c.matches)
            .map(|c| format!("S{}", c.class.number()))
            .collect();
        check = check.note(format!("mismatched classes: {}", off.join(", ")));
    }
    check
        .note
        .get_or_insert_with(|| "768·E[X_l X_l'] per pair class".into());
    check
}

fn single_constraint_distribution() -> Check {
    let rows = table1_distribution();
    let computed: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{}@{}",
                to_ratio_string(&r.value),
                to_ratio_string(&r.probability)
            )
        })
        .collect();
    let expected: Vec<String> = [(0, 1), (-2, 3), (1, 6), (4, 2), (-2, 4)]
        .iter()
        .map(|&(six, sixteenths)| {
            format!(
                "{}@{}",
                to_ratio_string(&ratio(six, 6)),
                to_ratio_string(&ratio(sixteenths, 16))
            )
        })
        .collect();
    Check::compare(
        "single_constraint_distribution",
        computed.join(" "),
        expected.join(" "),
    )
    .note("value@probability per colour pattern")
}

fn single_constraint_moments() -> Check {
    let rows = table1_distribution();
    let mean: Rational = rows.iter().map(|r| &r.value * &r.probability).sum();
    let second: Rational = rows
        .iter()
        .map(|r| &r.value * &r.value * &r.probability)
        .sum();
    Check::compare(
        "single_constraint_moments",
        list(&[mean, second]),
        list(&[int(0), ratio(11, 96)]),
    )
    .note("E[X_p] E[X_p²]")
}

fn polynomial_matches_weights() -> Check {
    let c = Constraint::from_ids(1, 2, 3).expect("distinct ids");
    let poly = xp_polynomial(&c);
    let mut bad = Vec::new();
    for q in 0..64u8 {
        let (mid, lo, hi) = (q >> 4, (q >> 2) & 3, q & 3);
        if poly.evaluate(encode_triple(mid, lo, hi)) != xp_weight(mid, lo, hi) {
            bad.push(format!("({mid},{lo},{hi})"));
        }
    }
    let mut check = Check::compare(
        "polynomial_matches_weights",
        format!("{} of 64 points agree", 64 - bad.len()),
        "64 of 64 points agree".into(),
    )
    .note(format!("degree {} (at most 6)", poly.degree()));
    if poly.degree() > 6 {
        check.status = Status::Fail;
    }
    if bad.is_empty() {
        check
    } else {
        check.note(format!("disagree at {}", bad.join(" ")))
    }
}

fn w_prime_identities() -> Check {
    let derived = derive_w_prime(CASE_WEIGHTS);
    let mut failures: Vec<String> = w_prime_relations()
        .into_iter()
        .filter(|(_, lhs, rhs)| lhs != rhs)
        .map(|(name, lhs, rhs)| format!("{name}: {lhs} ≠ {rhs}"))
        .collect();
    let render = |w: [i64; 8]| {
        w.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut check = Check::compare("w_prime_relations", render(derived), render(W_PRIME));
    if !failures.is_empty() {
        check.status = Status::Fail;
        check = check.note(failures.remove(0));
    }
    check
}

fn instance_checks(inst: &Instance) -> Vec<Check> {
    let m = inst.m() as i64;
    let closed = second_moment_closed_form(inst);
    let mut checks = vec![Check::compare(
        "first_moment",
        to_ratio_string(&first_moment(inst)),
        "0/1".into(),
    )];

    let quadratic = ratio(DIAGONAL_WEIGHT * m, 768) + cross_term_quadratic_form(inst);
    let enumerated = second_moment_enumerated(inst);
    let mut others = vec![
        ("quadratic_form", quadratic),
        ("pair_enumeration", enumerated),
    ];
    let mut note = "closed form vs quadratic form and pair enumeration".to_string();
    if inst.n() <= ENUMERATION_MAX_N {
        let direct = enumerate_moments(inst)
            .expect("n within the enumeration limit")
            .second;
        others.push(("direct_enumeration", direct));
        note.push_str(" and direct enumeration");
    } else {
        note.push_str(&format!(
            "; direct enumeration skipped for n > {ENUMERATION_MAX_N}"
        ));
    }
    let disagree: Vec<&str> = others
        .iter()
        .filter(|(_, v)| *v != closed)
        .map(|(k, _)| *k)
        .collect();
    let mut agreement = Check::compare(
        "second_moment_agreement",
        to_ratio_string(&closed),
        to_ratio_string(&closed),
    )
    .note(note);
    if !disagree.is_empty() {
        agreement.status = Status::Fail;
        agreement.expected = list(&others.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
        agreement.note = Some(format!("disagreeing: {}", disagree.join(", ")));
    }
    checks.push(agreement);

    let bound = ratio(11 * m, 768);
    let bound_check = if is_irreducible(inst) {
        let cross = cross_term_closed_form(inst);
        let ok = closed >= bound && cross >= ratio(-77 * m, 768);
        Check {
            name: "second_moment_lower_bound",
            status: if ok { Status::Pass } else { Status::Fail },
            computed: to_ratio_string(&closed),
            expected: format!(">= {}", to_ratio_string(&bound)),
            note: Some(format!("cross term {}", to_ratio_string(&cross))),
        }
    } else {
        Check {
            name: "second_moment_lower_bound",
            status: Status::Skipped,
            computed: to_ratio_string(&closed),
            expected: format!(">= {}", to_ratio_string(&bound)),
            note: Some("not irreducible: bound applies only without complete triples".into()),
        }
    };
    checks.push(bound_check);
    checks
}

pub fn run(a: &VerifyArgs) -> Result<String, Failure> {
    let inst = a
        .input
        .as_deref()
        .map(|p| read_instance(p, a.dedupe))
        .transpose()?;
    let mut checks = vec![
        pair_case_weights(),
        single_constraint_distribution(),
        single_constraint_moments(),
        polynomial_matches_weights(),
        w_prime_identities(),
    ];
    if let Some(inst) = &inst {
        checks.extend(instance_checks(inst));
    }
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    let report = Report { passed, checks };

    if passed {
        return Ok(match a.out.format {
            Format::Json => to_json(&report),
            Format::Text => text(&report),
        });
    }
    let mut message = String::from("verification failed\n");
    for c in report.checks.iter().filter(|c| c.status == Status::Fail) {
        writeln!(
            message,
            "{}: computed {} expected {}",
            c.name, c.computed, c.expected
        )
        .unwrap();
        if let Some(n) = &c.note {
            writeln!(message, "  {n}").unwrap();
        }
    }
    Err(Failure { code: 1, message })
}

fn text(r: &Report) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        writeln!(
            s,
            "{tag} {}: computed {} expected {}",
            c.name, c.computed, c.expected
        )
        .unwrap();
        if let Some(n) = &c.note {
            writeln!(s, "  {n}").unwrap();
        }
    }
    writeln!(
        s,
        "{}",
        if r.passed {
            "all checks passed"
        } else {
            "checks failed"
        }
    )
    .unwrap();
    s
}
