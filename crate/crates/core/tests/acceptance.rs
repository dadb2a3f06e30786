//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monogenic::autgroup::{
    aut_group_order, enumerate_auts, gn_compose, gn_entries, gn_invert, gn_order, local_aut_compose,
    DEFAULT_ENUMERATION_CAP,
};
use monogenic::classify::{classify, local_iso_witness, monogenic_forms, realize};
use monogenic::oracle::{brute_automorphisms, QuotientAlgebra, DEFAULT_BRUTE_CAP};
use monogenic::poly::{count_irreducibles, enumerate_irreducibles};
use monogenic::verify::{self, monic_polynomials, sieve_irreducible_count, CheckOutcome};
use monogenic::{
    ext_field, CanonicalForm, Error, ExtensionField, FieldElement, FormPart, GnMatrix, LocalAut, Polynomial,
    PrimeField, ProductAlgebra,
};

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn poly(p: u64, coeffs: &[u64]) -> Polynomial {
    Polynomial::from_u64s(&ExtensionField::prime(fp(p)), coeffs)
}

fn merge(name: &str, rows: impl IntoIterator<Item = CheckOutcome>) -> CheckOutcome {
    let mut out = CheckOutcome {
        name: name.into(),
        ..Default::default()
    };
    for r in rows {
        out.cases += r.cases;
        out.skipped += r.skipped;
        out.failures.extend(r.failures.into_iter().map(|f| format!("{}: {f}", r.name)));
    }
    out
}

fn single(name: &str, cases: u64, failures: Vec<String>) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        cases,
        skipped: 0,
        failures,
    }
}

/// Every `G_n(L)` element: `λ_1` over `L^*`, the rest over `L`.
fn all_gn(field: &ExtensionField, n: usize) -> Vec<GnMatrix> {
    let q = field.order().unwrap();
    let mut out = Vec::new();
    let tail = q.pow(n.saturating_sub(2) as u32);
    if n == 1 {
        return vec![GnMatrix::identity(field, 1)];
    }
    for first in 1..q {
        for mut idx in 0..tail {
            let mut ls = vec![field.from_index(first)];
            for _ in 0..n - 2 {
                ls.push(field.from_index(idx % q));
                idx /= q;
            }
            out.push(GnMatrix::new(field, n, ls).unwrap());
        }
    }
    out
}

fn mat_mul(a: &[Vec<FieldElement>], b: &[Vec<FieldElement>], field: &ExtensionField) -> Vec<Vec<FieldElement>> {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).fold(field.zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn criterion_1() -> CheckOutcome {
    let forms: Vec<_> = [2, 3].into_iter().flat_map(|p| monogenic_forms(fp(p), 8)).collect();
    merge("idempotent count", [verify::check_idempotent_counts(&forms, DEFAULT_BRUTE_CAP)])
}

fn criterion_2() -> CheckOutcome {
    let f2: Vec<Polynomial> = (1..=4).flat_map(|d| monic_polynomials(fp(2), d)).collect();
    let mut pairs = Vec::new();
    for (i, a) in f2.iter().enumerate() {
        for b in &f2[i..] {
            pairs.push((a.clone(), b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e_55ed);
    let by_degree: Vec<Vec<Polynomial>> = (1..=3).map(|d| monic_polynomials(fp(3), d)).collect();
    for _ in 0..200 {
        // same degree, so the brute-force search is never trivially skipped
        let pool = &by_degree[rng.gen_range(0..3)];
        let a = pool[rng.gen_range(0..pool.len())].clone();
        let b = pool[rng.gen_range(0..pool.len())].clone();
        pairs.push((a, b));
    }
    merge("isomorphism equivalence", [verify::check_isomorphism_pairs(&pairs, DEFAULT_BRUTE_CAP)])
}

fn criterion_3() -> CheckOutcome {
    let mut failures = Vec::new();
    match local_iso_witness(&poly(2, &[1, 1, 1]), 2) {
        Ok(w) if w.change_of_basis.rank() == 4 && w.change_of_basis.rows() == 4 => {}
        Ok(w) => failures.push(format!("F_4[Y]/(Y^2) witness has rank {}", w.change_of_basis.rank())),
        Err(e) => failures.push(format!("F_4[Y]/(Y^2) witness: {e}")),
    }
    let mut out = merge(
        "local witness rank",
        [2, 3].into_iter().map(|p| verify::check_local_witnesses(fp(p), 6)),
    );
    out.cases += 1;
    out.failures.extend(failures);
    out
}

fn criterion_4() -> CheckOutcome {
    let fields = [
        ext_field(fp(2), 1).unwrap(),
        ext_field(fp(3), 1).unwrap(),
        ext_field(fp(2), 2).unwrap(),
        ext_field(fp(5), 1).unwrap(),
    ];
    let mut cases = 0;
    let mut failures = Vec::new();
    for field in &fields {
        let q = field.order().unwrap();
        for n in 2..=4 {
            let all = all_gn(field, n);
            let distinct: HashSet<_> = all.iter().collect();
            cases += 1;
            if BigUint::from(distinct.len()) != gn_order(&BigUint::from(q), n) {
                failures.push(format!("|G_{n}(F_{q})| = {}", distinct.len()));
            }
            let id = GnMatrix::identity(field, n);
            for a in &all {
                let ea = gn_entries(a);
                cases += 1;
                if gn_compose(a, &gn_invert(a)).unwrap() != id || gn_compose(&gn_invert(a), a).unwrap() != id {
                    failures.push(format!("inverse of {:?} over F_{q}", a.lambdas()));
                }
                for b in &all {
                    cases += 1;
                    let ab = gn_compose(a, b).unwrap();
                    if gn_entries(&ab) != mat_mul(&ea, &gn_entries(b), field) {
                        failures.push(format!("entries of {:?} * {:?} over F_{q}", a.lambdas(), b.lambdas()));
                    }
                }
            }
        }
    }
    single("G_n group law", cases, failures)
}

fn criterion_5() -> CheckOutcome {
    let mut forms = monogenic_forms(fp(2), 5);
    forms.extend(monogenic_forms(fp(3), 3));
    let mut out = merge("automorphism order", [verify::check_aut_orders(&forms, DEFAULT_BRUTE_CAP)]);
    for (coeffs, expect) in [(&[0u64, 0, 1, 1][..], 1u32), (&[0, 1, 1], 2), (&[1, 0, 1, 0, 1], 6)] {
        let p = poly(2, coeffs);
        let brute = brute_automorphisms(&QuotientAlgebra::new(&p).unwrap(), DEFAULT_BRUTE_CAP)
            .unwrap()
            .len();
        let order = aut_group_order(&classify(&p).unwrap());
        out.cases += 1;
        if brute as u32 != expect || order != BigUint::from(expect) {
            out.failures.push(format!("{p}: brute {brute}, order {order}, expected {expect}"));
        }
    }
    out
}

fn criterion_6() -> CheckOutcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for d in [2, 3] {
        let field = ext_field(fp(2), d).unwrap();
        for n in 1..=3 {
            for m in all_gn(&field, n) {
                let local = LocalAut::new(m.clone(), 0).unwrap();
                for s in 0..d as u32 {
                    let frob = LocalAut::new(GnMatrix::identity(&field, n), s).unwrap();
                    let conj = local_aut_compose(&local_aut_compose(&frob, &local).unwrap(), &frob.inverse()).unwrap();
                    let twisted: Vec<Vec<FieldElement>> = gn_entries(&m)
                        .iter()
                        .map(|row| row.iter().map(|x| x.frobenius(s as i64)).collect())
                        .collect();
                    cases += 1;
                    if conj.frob() != 0 || gn_entries(conj.matrix()) != twisted {
                        failures.push(format!("F_{} n={n} sigma={s} lambdas {:?}", 1 << d, m.lambdas()));
                    }
                }
            }
        }
    }
    single("Frobenius conjugation", cases, failures)
}

fn criterion_7() -> CheckOutcome {
    let forms = monogenic_forms(fp(2), 6);
    let mut out = merge("wreath faithfulness", [verify::check_aut_bijection(&forms, DEFAULT_BRUTE_CAP)]);
    // injectivity on the whole carrier, not just on a generator
    for form in &forms {
        let alg = ProductAlgebra::new(form);
        let elems: Vec<_> = alg.elements().collect();
        let mut maps = HashSet::new();
        let mut count = 0u64;
        for g in enumerate_auts(form, DEFAULT_ENUMERATION_CAP).unwrap() {
            let graph: Vec<_> = elems.iter().map(|x| g.apply(x).unwrap()).collect();
            maps.insert(graph);
            count += 1;
        }
        out.cases += 1;
        if maps.len() as u64 != count {
            out.failures.push(format!("{form}: {count} automorphisms, {} distinct maps", maps.len()));
        }
    }
    out
}

fn criterion_8() -> CheckOutcome {
    let forms: Vec<_> = [2, 3].into_iter().flat_map(|p| monogenic_forms(fp(p), 6)).collect();
    let mut out = merge("round trip", [verify::check_round_trip(&forms)]);
    let three_points = CanonicalForm::new(fp(2), vec![FormPart::new(1, 1, 3)]).unwrap();
    out.cases += 1;
    match realize(&three_points) {
        Err(Error::Infeasible { needed: 3, available, .. }) if available == BigUint::from(2u32) => {}
        other => out.failures.push(format!("{{(1,1,3)}} over F_2 gave {other:?}")),
    }
    out
}

fn criterion_9() -> CheckOutcome {
    let cases: Vec<(u64, usize)> = [2, 3]
        .into_iter()
        .flat_map(|p| (1..=4).map(move |d| (p, d)))
        .chain([(5, 1), (5, 2)])
        .collect();
    let mut failures = Vec::new();
    for &(p, d) in &cases {
        let phi = count_irreducibles(fp(p), d);
        let sieve = BigUint::from(sieve_irreducible_count(fp(p), d));
        let by_test = monic_polynomials(fp(p), d)
            .iter()
            .filter(|q| q.is_irreducible().unwrap())
            .count();
        let listed = enumerate_irreducibles(fp(p), d, by_test).unwrap().len();
        if phi != sieve || sieve != BigUint::from(by_test) || listed != by_test {
            failures.push(format!("p={p} d={d}: phi {phi}, sieve {sieve}, tested {by_test}"));
        }
    }
    single("irreducible count", cases.len() as u64, failures)
}

fn main() -> ExitCode {
    let criteria: [fn() -> CheckOutcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let start = Instant::now();
    let mut all_passed = true;
    for (i, criterion) in criteria.iter().enumerate() {
        let t = Instant::now();
        let row = criterion();
        all_passed &= row.passed() && row.skipped == 0;
        let extra = if row.skipped > 0 { " (skips are not allowed here)" } else { "" };
        println!("criterion {}: {row}  [{:.2?}]{extra}", i + 1, t.elapsed());
        for f in row.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    println!("acceptance: {} in {:.2?}", if all_passed { "all passed" } else { "FAILED" }, start.elapsed());
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
