use aperiodica::betanum::{first_beta_integers, BetaBasis};
use aperiodica::capcore::{normalize, word_string, CapParams, Letter, Window};
use aperiodica::exactnum::QuadraticReal;
use aperiodica::substderive::{
    derive, iterate, merge_letters, substitution_matrix, verify_projection, DeriveOptions, Morphism,
};

fn eps() -> QuadraticReal {
    QuadraticReal::from_parts(0, 1, -1, 2, 2).unwrap()
}

fn lin(a: i64, b: i64) -> QuadraticReal {
    QuadraticReal::from_int(a) + QuadraticReal::from_int(b) * eps()
}

fn octagonal() -> (CapParams, Window) {
    let e = eps();
    (
        CapParams::new(e.clone(), e.conjugate()).unwrap(),
        Window::new(QuadraticReal::zero(), lin(-2, -4)).unwrap(),
    )
}

#[test]
fn iteration_rounds_match_the_table() {
    let (p, w) = octagonal();
    let r = derive(&p, &w, &DeriveOptions::default()).unwrap();
    let m = &r.morphism;
    assert_eq!(r.iterate(0).unwrap().render(m), "3|0");
    assert_eq!(r.iterate(1).unwrap().render(m), "013|002013");
    assert_eq!(
        r.iterate(2).unwrap().render(m),
        "00201300202013|0020130020130020201300201300202013"
    );
}

#[test]
fn rounds_extend_on_both_sides() {
    let (p, w) = octagonal();
    let r = derive(&p, &w, &DeriveOptions::default()).unwrap();
    let mut prev = r.iterate(0).unwrap();
    for k in 1..=10 {
        let cur = iterate(&r.morphism, r.initial, k).unwrap();
        assert!(cur.right.starts_with(&prev.right));
        assert!(cur.left.ends_with(&prev.left));
        prev = cur;
    }
}

#[test]
fn merge_of_letters_zero_and_one() {
    let (p, w) = octagonal();
    let r = derive(&p, &w, &DeriveOptions::default()).unwrap();
    let sq = r.morphism.power(2);
    assert_eq!(sq.image(0), sq.image(1));
    let psi = r.projection_map();
    let mr = merge_letters(&r.morphism, 2, Some(&psi)).unwrap();
    assert_eq!(mr.classes, vec![vec![0, 1], vec![2], vec![3]]);
    let tilde = mr.induced.expect("projection respected");
    let a = tilde.letter("A").unwrap();
    let c = tilde.letter("C").unwrap();
    assert_eq!(
        tilde.render(tilde.image(a)),
        "AABAACAABAACAABABAACAABAACAABABAAC"
    );
    assert_eq!(tilde.render(tilde.image(a)).len(), 34);
    assert_eq!(tilde.render(tilde.image(c)), "AABAACAABABAAC");
    // The induced morphism regenerates the coded word from C|A.
    let w1 = iterate(&tilde, (c, a), 3).unwrap();
    let (pl, pr) = r.projected_word(10_000).unwrap();
    let n = w1.right.len().min(10_000);
    assert_eq!(tilde.render(&w1.right[..n]), word_string(&pr[..n]));
    let m = w1.left.len().min(10_000);
    assert_eq!(
        tilde.render(&w1.left[w1.left.len() - m..]),
        word_string(&pl[pl.len() - m..])
    );
}

#[test]
fn merged_fixed_point_projects_identically() {
    let (p, w) = octagonal();
    let r = derive(&p, &w, &DeriveOptions::default()).unwrap();
    let mr = merge_letters(&r.morphism, 2, Some(&r.projection_map())).unwrap();
    let q = &mr.quotient;
    let seed = (mr.class_of(r.initial.0), mr.class_of(r.initial.1));
    let qv = aperiodica::substderive::iterate_to(q, seed, 10_000).unwrap();
    let proj = |cls: usize| r.projection[mr.classes[cls][0]];
    let (pl, pr) = r.projected_word(10_000).unwrap();
    assert!(qv.right.iter().map(|&c| proj(c)).eq(pr.iter().copied()));
    assert!(qv.left.iter().map(|&c| proj(c)).eq(pl.iter().copied()));
}

#[test]
fn matrix_row_of_letter_zero() {
    let (p, w) = octagonal();
    let r = derive(&p, &w, &DeriveOptions::default()).unwrap();
    let s = substitution_matrix(&r.morphism);
    assert_eq!(s.m[0], vec![3, 1, 1, 1]);
    assert!(s.primitive);
}

#[test]
fn theorem_on_several_parameter_sets() {
    let sqrt2 = QuadraticReal::sqrt(2).unwrap();
    let sqrt3 = QuadraticReal::sqrt(3).unwrap();
    let tau = QuadraticReal::tau();
    let cases = [
        // the worked example with its own conjugate as η
        (eps(), eps().conjugate(), QuadraticReal::zero(), lin(-2, -4)),
        // ε′ < −1, handled without the reflection
        (
            &sqrt2 / QuadraticReal::from_int(2) - QuadraticReal::one(),
            &sqrt3 + QuadraticReal::one(),
            QuadraticReal::zero(),
            QuadraticReal::from_ratio(3, 4),
        ),
        // golden case with c < 0 and η unrelated to ε
        (
            -(QuadraticReal::one() / &tau),
            sqrt3.clone(),
            QuadraticReal::from_ratio(-1, 3),
            QuadraticReal::from_ratio(9, 10),
        ),
        // ℓ = 1, binary word
        (
            -(QuadraticReal::one() / &tau),
            tau.clone(),
            QuadraticReal::from_ratio(-1, 2),
            QuadraticReal::one(),
        ),
    ];
    for (e, eta, c, l) in cases {
        let p = CapParams::new(e, eta).unwrap();
        let w = Window::new(c, l).unwrap();
        let r = derive(&p, &w, &DeriveOptions::default()).unwrap();
        let rep = verify_projection(&r, &p, &w, 10_000).unwrap();
        assert!(rep.passed, "{p:?} {w}: {rep:?}");
    }
}

#[test]
fn golden_beta_integers_from_the_derived_morphism() {
    let tau = QuadraticReal::tau();
    let p = CapParams::new(-(QuadraticReal::one() / &tau), tau.clone()).unwrap();
    let w = Window::from_bounds(QuadraticReal::from_int(-1), tau.clone()).unwrap();
    let nf = normalize(&p, &w).unwrap();
    let r = derive(&nf.params, &nf.window, &DeriveOptions::default()).unwrap();
    let (_, right) = r.projected_word(999).unwrap();
    let gaps: String = right
        .iter()
        .map(|&l| match nf.original_letter(l) {
            Letter::A => 'A',
            _ => 'B',
        })
        .collect();
    let z = first_beta_integers(&BetaBasis::new(tau).unwrap(), 1000).unwrap();
    assert_eq!(gaps, z.gap_word());
    let fib = Morphism::parse("A->AB,B->A").unwrap();
    assert_eq!(fib.render(&fib.fixed_point_prefix(0, 999).unwrap()), gaps);
}
