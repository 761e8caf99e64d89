use kvlie::arith::int;
use kvlie::idempotents::kernel_generator;
use kvlie::kv::{
    a_series, bch_eulerian, f0, g0, general_solution, homogeneous_solution, phi_split, verify_kv1,
};
use kvlie::lyndon::is_lie;
use kvlie::text::{format_poly, parse_poly, to_json};
use kvlie::{Alphabet, GradedSeries, Poly, Word};

fn all_lie(name: &str, s: &GradedSeries) {
    for (d, c) in s.components().iter().enumerate() {
        assert!(is_lie(c), "{name}, degree {d}: {}", format_poly(c));
    }
}

#[test]
fn constructed_series_are_lie() {
    let n = 7;
    let phi = bch_eulerian(n).unwrap();
    let (plus, minus) = phi_split(&phi).unwrap();
    all_lie("Φ", phi.series());
    all_lie("Φ⁺", &plus);
    all_lie("Φ⁻", &minus);
    all_lie("a", &a_series(n).unwrap());
    all_lie("F₀", &f0(n).unwrap());
    all_lie("G₀", &g0(n).unwrap());
}

#[test]
fn homogeneous_solutions_are_lie() {
    let a = Alphabet::xy();
    for w in Word::all_of_degree(2, 5) {
        let p = kernel_generator(&w, &Poly::zero(&a)).unwrap();
        let pair = homogeneous_solution(&p, &int(2), &int(-1), 6).unwrap();
        all_lie("F", &pair.f);
        all_lie("G", &pair.g);
    }
}

#[test]
fn general_solution_from_text() {
    let a = Alphabet::xy();
    let p = parse_poly(&a, "3*xxy - 1/2*yxyx + yy").unwrap();
    let pair = general_solution(&p, &int(1), &int(0), 6).unwrap();
    assert!(verify_kv1(&pair, 7).unwrap().is_zero());
    let f = pair.f.to_poly();
    assert_eq!(parse_poly(&a, &format_poly(&f)).unwrap(), f);
    assert_eq!(kvlie::text::from_json(&a, &to_json(&f)).unwrap(), f);
}
