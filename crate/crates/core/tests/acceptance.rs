//! Acceptance criteria 1–11, one report line each.
//!
//! Runs without the libtest harness so the report always prints. The process
//! exits nonzero if a criterion fails that is not listed in
//! [`KNOWN_FAILURES`], or if a listed one unexpectedly passes.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kvlie::arith::{int, rat};
use kvlie::idempotents::{dynkin, dynkin_via_permutations, eulerian, eulerian_via_convolution};
use kvlie::kv::oracle::{
    e_nullity_on_lie, homogeneous_dimension_generic, homogeneous_dimension_parameterized,
};
use kvlie::kv::{
    apply_operator, bch_eulerian, bch_oracle, f0, g0, multilinear_particular, particular_solution,
    phi_split, solve_split_linear, verify_kv1, verify_multilinear, KvSolutionPair, OperatorSpec,
    SignConvention,
};
use kvlie::linalg::Matrix;
use kvlie::lyndon::{lyndon_basis, lyndon_words, witt_dimension};
use kvlie::text::{format_poly, parse_poly};
use kvlie::{Alphabet, GradedSeries, Poly, Rational, Substitution, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const X: u8 = 0;
const Y: u8 = 1;

/// Criteria expected to fail, with the reason shown next to the failure.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    1,
    "the reference degree-5 row is not a solution; see the KV-1 check in the detail",
)];

type Outcome = Result<String, String>;

fn p(s: &str) -> Poly {
    parse_poly(&Alphabet::xy(), s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words(max_degree: usize) -> impl Iterator<Item = Word> {
    (1..=max_degree).flat_map(|d| Word::all_of_degree(2, d))
}

fn reference_f0() -> Vec<Poly> {
    [
        "1/4*y",
        "1/24*xy - 1/24*yx",
        "-1/48*xxy + 1/24*xyx + 1/48*xyy - 1/48*yxx - 1/24*yxy + 1/48*yyx",
        "-1/180*xxxy + 1/60*xxyx + 1/480*xxyy - 1/60*xyxx - 1/240*xyxy + 1/360*xyyy \
         + 1/180*yxxx + 1/240*yxyx - 1/120*yxyy - 1/480*yyxx + 1/120*yyxy - 1/360*yyyx",
        "1/2880*xxxxy - 1/720*xxxyx - 7/2880*xxxyy + 1/480*xxyxx + 7/1440*xxyxy \
         + 7/2880*xxyyx + 1/720*xxyyy - 1/720*xyxxx - 7/720*xyxyx - 1/240*xyxyy \
         + 7/2880*xyyxx + 1/240*xyyxy - 1/360*xyyyx + 1/2880*yxxxx + 7/1440*yxyxx \
         + 1/240*yxyyx - 1/240*yyxyx - 7/2880*yyxxx + 1/720*yyyxx",
    ]
    .iter()
    .map(|s| p(s))
    .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f = f0(5).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || {
        format!("f0 through degree 5 took {elapsed:?}")
    })?;
    let reference = reference_f0();
    let spot = f.component(4).coeff_of("xxyy") == rat(1, 480)
        && f.component(4).coeff_of("yxyy") == rat(-1, 120);
    ensure(spot, || "degree-4 spot values differ".into())?;
    let mut mismatched = Vec::new();
    for (d, row) in reference.iter().enumerate().map(|(i, r)| (i + 1, r)) {
        if f.component(d) != row {
            mismatched.push(d);
        }
    }
    if mismatched.is_empty() {
        return Ok(format!("degrees 1-5 match exactly in {elapsed:?}"));
    }
    let d = mismatched[0];
    let diff = f.component(d) - &reference[d - 1];
    let (word, _) = diff.leading_term().unwrap();
    let word = word.display(&Alphabet::xy()).to_string();
    let table_pair = {
        let mut comps = f.components().to_vec();
        comps[5] = reference[4].clone();
        let ft = GradedSeries::from_components(&Alphabet::xy(), comps);
        let gt = ft.substitute(&Substitution::swap_negate()).unwrap();
        KvSolutionPair::new(ft, gt)
    };
    let table_defect = verify_kv1(&table_pair, 6).unwrap();
    let computed_defect = verify_kv1(&particular_solution(5).unwrap(), 6).unwrap();
    Err(format!(
        "degrees {mismatched:?} differ from the reference table; first word {word}: computed {}, reference {}; \
         {} differing words; with the reference row the KV-1 defect through degree 6 has {} terms (first {}), \
         with the computed row it has {}",
        f.component(d).coeff_of(&word),
        reference[d - 1].coeff_of(&word),
        diff.len(),
        table_defect.nonzero_terms().len(),
        table_defect.first_nonzero().map_or("none".into(), |t| t.to_string()),
        computed_defect.nonzero_terms().len(),
    ))
}

fn criterion_2() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let (eul, ora) = pool.install(|| (bch_eulerian(8), bch_oracle(8)));
    let elapsed = start.elapsed();
    let (eul, ora) = (
        eul.map_err(|e| e.to_string())?,
        ora.map_err(|e| e.to_string())?,
    );
    for n in 0..=8 {
        ensure(eul.component(n) == ora.component(n), || {
            format!("degree {n} differs")
        })?;
    }
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?} single-threaded")
    })?;
    Ok(format!("degrees 0-8 equal, {elapsed:?} on one thread"))
}

fn criterion_3() -> Outcome {
    let defect = verify_kv1(&KvSolutionPair::new(f0(8).unwrap(), g0(8).unwrap()), 8)
        .map_err(|e| e.to_string())?;
    match defect.first_nonzero() {
        None => Ok("defect zero through degree 8".into()),
        Some(t) => Err(format!("first defect term {t}")),
    }
}

fn criterion_4() -> Outcome {
    let f = f0(6).unwrap();
    for n in 1..=6 {
        let solved = solve_split_linear(n).map_err(|e| e.to_string())?;
        let diff = f.component(n) - &solved;
        let only_x = diff.terms().all(|(w, _)| *w == Word::letter(X));
        ensure(only_x && (n == 1 || diff.is_zero()), || {
            format!("degree {n}: difference {}", format_poly(&diff))
        })?;
    }
    Ok("linear solve equals f0 at degrees 1-6, up to the x line at degree 1".into())
}

fn criterion_5() -> Outcome {
    let a = Alphabet::xy();
    let mut count = 0;
    for w in words(6) {
        let wp = Poly::word(&a, w.clone());
        let g = dynkin(&wp);
        let e = eulerian(&wp);
        let label = w.display(&a).to_string();
        ensure(dynkin(&g) == g, || format!("γ∘γ ≠ γ on {label}"))?;
        ensure(eulerian(&e) == e, || format!("e∘e ≠ e on {label}"))?;
        ensure(dynkin_via_permutations(&wp) == g, || {
            format!("permutation γ ≠ bracket γ on {label}")
        })?;
        ensure(eulerian_via_convolution(&wp) == e, || {
            format!("eulerian ≠ convolution log on {label}")
        })?;
        count += 1;
    }
    Ok(format!("all four laws on {count} words of degree 1-6"))
}

fn random_lie(rng: &mut StdRng, max_degree: usize) -> Poly {
    let a = Alphabet::xy();
    let mut out = Poly::zero(&a);
    for d in 1..=max_degree {
        let basis = lyndon_basis(&a, d).unwrap();
        for b in &basis.bracketings {
            if rng.gen_bool(0.4) {
                out.add_scaled(b, &rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let n = 8;
    let mut rng = StdRng::seed_from_u64(0x6b76);
    let cases = 24;
    for case in 0..cases {
        let input = GradedSeries::from_poly(&random_lie(&mut rng, n - 1), n - 1);
        for z in [X, Y] {
            for negative in [false, true] {
                let ad = apply_operator(&OperatorSpec::ad(z, negative, n), &input).unwrap();
                let e = apply_operator(&OperatorSpec::e(z, negative, n), &input).unwrap();
                let ber_e = apply_operator(&OperatorSpec::ber(z, negative, n), &e).unwrap();
                let ber = apply_operator(&OperatorSpec::ber(z, negative, n - 1), &input).unwrap();
                let e_ber = apply_operator(&OperatorSpec::e(z, negative, n), &ber).unwrap();
                ensure(ber_e == ad && e_ber == ad, || {
                    format!("case {case}, letter {z}, negative {negative}")
                })?;
            }
        }
    }
    let nullities: Vec<usize> = (1..=6).map(|d| e_nullity_on_lie(d).unwrap()).collect();
    ensure(nullities == [1, 0, 0, 0, 0, 0], || {
        format!("nullities of E(x) on Lie_1..6: {nullities:?}")
    })?;
    Ok(format!(
        "Ber∘E = E∘Ber = ad on {cases} random Lie series through degree {n}; E(x) nullities {nullities:?}"
    ))
}

/// `[a₁,[a₂,[…,aₙ]]]`.
fn bracket_right(letters: &str) -> Poly {
    let mut chars = letters.chars().rev();
    let mut acc = p(&chars.next().unwrap().to_string());
    for c in chars {
        acc = p(&c.to_string()).bracket(&acc);
    }
    acc
}

const REFERENCE_Q: &str = "2xxxxyy-8xxxyxy+xxxyyx+12xxyxxy-4xxyxyx+xxyyxx-2xxyyyy-8xyxxxxy\
     +6xyxxyx-4xyxyxx+xyyxxx+8xyxyyy-12xyyxyy+8xyyyxy-xyyyyx\
     +yxxxxy-yxxyyy+4yxyxyy-6yxyyxy-yyxxyy+4yyxyxy-yyyxxy";

fn criterion_7() -> Outcome {
    let a = Alphabet::xy();
    let big_p = &(&bracket_right("xyxxy") - &bracket_right("yxxxy").scale(&int(2)))
        - &bracket_right("yyyyx");
    let flipped = big_p.substitute(&Substitution::swap_negate()).unwrap();
    let ad_identity = &big_p.ad_letter(X) + &flipped.ad_letter(Y);
    ensure(ad_identity.is_zero(), || {
        format!("ad(x)P + ad(y)P(-y,-x) = {}", format_poly(&ad_identity))
    })?;
    let small_p = &Poly::letter(&a, X).checked_concat(&big_p).unwrap()
        + &Poly::letter(&a, Y).checked_concat(&flipped).unwrap();
    ensure(dynkin(&small_p).is_zero(), || "p is not in Ker γ".into())?;

    let q = p(REFERENCE_Q);
    let reference_residual = &(&q - &dynkin(&q)) - &small_p;
    let odd_degree: Vec<String> = q
        .terms()
        .filter(|(w, _)| w.degree() != 6)
        .map(|(w, _)| w.display(&a).to_string())
        .collect();

    // Solve (1 - γ)q = p on degree-6 words.
    let basis = Word::all_of_degree(2, 6);
    let columns: Vec<Vec<Rational>> = basis
        .iter()
        .map(|w| {
            let wp = Poly::word(&a, w.clone());
            let image = &wp - &dynkin(&wp);
            basis.iter().map(|u| image.coeff(u)).collect()
        })
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|u| small_p.coeff(u)).collect();
    let solution = Matrix::from_columns(basis.len(), &columns)
        .solve(&rhs)
        .ok_or("no q with q - γ(q) = p")?;
    let derived = Poly::from_terms(&a, basis.iter().cloned().zip(solution));
    ensure((&derived - &dynkin(&derived)) == small_p, || {
        "derived q does not reproduce p".into()
    })?;
    let reference_note = if reference_residual.is_zero() {
        "reference q reproduces p".to_string()
    } else {
        format!(
            "reference q fails ({} residual terms; words off degree 6: {odd_degree:?}); derived q has {} terms",
            reference_residual.len(),
            derived.len()
        )
    };
    Ok(format!("ad identity holds, p ∈ Ker γ; {reference_note}"))
}

fn criterion_8() -> Outcome {
    let mut dims = Vec::new();
    for n in 2..=4 {
        let generic = homogeneous_dimension_generic(n).map_err(|e| e.to_string())?;
        let param = homogeneous_dimension_parameterized(n).map_err(|e| e.to_string())?;
        ensure(generic == param, || {
            format!("degree {n}: generic {generic}, parameterized {param}")
        })?;
        dims.push(generic);
    }
    Ok(format!("dimensions at degrees 2-4: {dims:?}"))
}

fn criterion_9() -> Outcome {
    let a = Alphabet::xy();
    for w in words(6) {
        let n = w.degree();
        let sign = if n % 2 == 1 { int(1) } else { int(-1) };
        let lhs = eulerian(&Poly::word(&a, w.clone()));
        let rhs = eulerian(&Poly::word(&a, w.reversed())).scale(&sign);
        ensure(lhs == rhs, || {
            format!("e ≠ (-1)^(n+1) e∘ω on {}", w.display(&a))
        })?;
    }
    let phi = bch_eulerian(8).unwrap();
    let (plus, minus) = phi_split(&phi).unwrap();
    let swap = Substitution::swap_negate();
    ensure(plus == -&minus.substitute(&swap).unwrap(), || {
        "Φ⁺(x,y) ≠ -Φ⁻(-y,-x)".into()
    })?;
    for n in 2..=8 {
        let c = phi.component(n);
        ensure(*c == -&c.substitute(&swap).unwrap(), || {
            format!("Φ_{n}(x,y) ≠ -Φ_{n}(-y,-x)")
        })?;
    }
    ensure(
        g0(8).unwrap() == f0(8).unwrap().substitute(&swap).unwrap(),
        || "g0 ≠ f0(-y,-x)".into(),
    )?;
    Ok("Eulerian reversal (n ≤ 6), Φ± and Φ_n antisymmetry (n ≤ 8), g0 = f0(-y,-x)".into())
}

fn criterion_10() -> Outcome {
    let n = 4;
    let sols = multilinear_particular(3, n, SignConvention::Alternating).unwrap();
    let defect = verify_multilinear(3, &sols, n).unwrap();
    if let Some(t) = defect.first_nonzero() {
        return Err(format!("k=3 alternating defect {t}"));
    }
    let uniform = multilinear_particular(3, n, SignConvention::Uniform).unwrap();
    let uniform_defect = verify_multilinear(3, &uniform, n).unwrap();
    let two = multilinear_particular(2, 6, SignConvention::Alternating).unwrap();
    ensure(
        two[0] == f0(6).unwrap() && two[1] == -&g0(6).unwrap(),
        || "k=2 tuple is not (f0, -g0)".into(),
    )?;
    Ok(format!(
        "k=3 defect zero through degree {n} with alternating signs (uniform signs leave {}); k=2 gives (f0, -g0)",
        uniform_defect
            .first_nonzero()
            .map_or("no defect".into(), |t| t.to_string())
    ))
}

fn criterion_11() -> Outcome {
    let a = Alphabet::xy();
    let expected = [2u64, 1, 2, 3, 6, 9, 18, 30, 56, 99];
    let mut counts = Vec::new();
    for n in 1..=10 {
        let count = lyndon_words(&a, n).unwrap().len() as u64;
        let witt = witt_dimension(2, n as u64).unwrap();
        ensure(count == witt && witt == expected[n - 1], || {
            format!("n={n}: {count} Lyndon words, Witt {witt}")
        })?;
        counts.push(count);
    }
    Ok(format!("{counts:?}"))
}

fn main() -> ExitCode {
    let order: [(u32, fn() -> Outcome); 11] = [
        (2, criterion_2),
        (1, criterion_1),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut results = Vec::new();
    for (id, run) in order {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        results.push((id, outcome, start.elapsed()));
    }
    results.sort_by_key(|r| r.0);

    let mut unexpected = 0;
    for (id, outcome, elapsed) in &results {
        let known = KNOWN_FAILURES.iter().find(|(k, _)| k == id);
        match (outcome, known) {
            (Ok(detail), None) => println!("criterion {id}: PASS ({elapsed:.1?}) {detail}"),
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!(
                    "criterion {id}: PASS, but listed as a known failure ({elapsed:.1?}) {detail}"
                );
            }
            (Err(detail), Some((_, why))) => {
                println!("criterion {id}: FAIL (known: {why}) ({elapsed:.1?}) {detail}")
            }
            (Err(detail), None) => {
                unexpected += 1;
                println!("criterion {id}: FAIL ({elapsed:.1?}) {detail}");
            }
        }
    }
    let passed = results.iter().filter(|r| r.1.is_ok()).count();
    println!(
        "acceptance: {passed}/{} passed, {} known failure(s), {unexpected} unexpected",
        results.len(),
        KNOWN_FAILURES.len()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
