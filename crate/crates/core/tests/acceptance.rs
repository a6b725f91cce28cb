//! Acceptance suite: one line per criterion, non-zero exit status if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use aperiodica::betanum::{
    beta_substitution, cap_equivalence, first_beta_integers, BetaBasis, QuadraticSign,
};
use aperiodica::capcore::{
    binary_string, ladder_levels, mechanical, word_string, CapParams, CapSequence, Letter,
    MechanicalKind, SteppingFn, Window,
};
use aperiodica::exactnum::QuadraticReal;
use aperiodica::selfsim::{find_factor, verify_inclusion};
use aperiodica::substderive::{derive, merge_letters, verify_projection, DeriveOptions};
use aperiodica::wordcomb::{
    complexity_counts, dn_breakpoints, dn_cells, factors, factors_of, is_balanced, rauzy,
    scan_factors, sturmian_checks,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64) -> QuadraticReal {
    QuadraticReal::from_int(n)
}

fn tau() -> QuadraticReal {
    QuadraticReal::tau()
}

/// `a + b·τ`.
fn t(a: i64, b: i64) -> QuadraticReal {
    q(a) + q(b) * tau()
}

/// `−1/√2`.
fn e8() -> QuadraticReal {
    QuadraticReal::from_parts(0, 1, -1, 2, 2).unwrap()
}

/// `a + b·ε` with `ε = −1/√2`.
fn lin(a: i64, b: i64) -> QuadraticReal {
    q(a) + q(b) * e8()
}

fn golden_params() -> CapParams {
    CapParams::new(-(QuadraticReal::one() / tau()), tau()).unwrap()
}

fn octagonal() -> (CapParams, Window) {
    let e = e8();
    (
        CapParams::new(e.clone(), e.conjugate()).unwrap(),
        Window::new(q(0), lin(-2, -4)).unwrap(),
    )
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn set(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn derivation() -> Check {
    let (p, w) = octagonal();
    let r = derive(&p, &w, &DeriveOptions::default()).map_err(err)?;
    ensure!(r.gamma == lin(3, 4), "gamma = {}", r.gamma);
    ensure!(
        r.gamma == QuadraticReal::from_parts(3, 1, -2, 1, 2).unwrap(),
        "gamma is not 3-2*sqrt(2)"
    );
    let s = vec![lin(0, 0), lin(-1, -2), lin(-3, -5), lin(0, -1)];
    ensure!(r.s == s, "S = {:?}", r.s);
    let m = r.morphism.to_string();
    ensure!(m == "0->002013, 1->00202, 2->00202013, 3->013", "phi = {m}");
    ensure!(r.j[0] == 6 && r.j[3] == 3, "j = {:?}", r.j);
    ensure!(r.initial == (3, 0), "initial = {:?}", r.initial);
    let psi = word_string(&r.projection);
    ensure!(psi == "AABC", "psi = {psi}");
    Ok(())
}

fn fixed_point() -> Check {
    let (p, w) = octagonal();
    let r = derive(&p, &w, &DeriveOptions::default()).map_err(err)?;
    let rep = verify_projection(&r, &p, &w, 10_000).map_err(err)?;
    ensure!(
        rep.passed && rep.n_letters == 10_000,
        "projection report {rep:?}"
    );
    let m = &r.morphism;
    let r1 = r.iterate(1).map_err(err)?.render(m);
    ensure!(r1 == "013|002013", "round 1: {r1}");
    let r2 = r.iterate(2).map_err(err)?.render(m);
    ensure!(
        r2 == "00201300202013|0020130020130020201300201300202013",
        "round 2: {r2}"
    );
    Ok(())
}

fn merge() -> Check {
    let (p, w) = octagonal();
    let r = derive(&p, &w, &DeriveOptions::default()).map_err(err)?;
    let sq = r.morphism.power(2);
    ensure!(sq.image(0) == sq.image(1), "phi^2(0) != phi^2(1)");
    let mr = merge_letters(&r.morphism, 2, Some(&r.projection_map())).map_err(err)?;
    let tilde = mr.induced.ok_or("no induced morphism")?;
    let img = |name: &str| tilde.render(tilde.image(tilde.letter(name).unwrap()));
    let a = img("A");
    ensure!(
        a == "AABAACAABAACAABABAACAABAACAABABAAC" && a.len() == 34,
        "A -> {a}"
    );
    ensure!(img("C") == "AABAACAABABAAC", "C -> {}", img("C"));
    Ok(())
}

fn fibonacci_factors() -> Check {
    let p = golden_params();
    let w = Window::new(q(-1), q(1)).map_err(err)?;
    let bin = |n: usize| -> Result<BTreeSet<String>, String> {
        let fs = factors(&p, &w, n).map_err(err)?;
        fs.words()
            .iter()
            .map(|x| binary_string(x).ok_or_else(|| "three letters".to_string()))
            .collect()
    };
    ensure!(
        bin(3)? == set(&["010", "011", "101", "110"]),
        "L3 = {:?}",
        bin(3)?
    );
    ensure!(
        bin(4)? == set(&["0101", "0110", "1010", "1011", "1101"]),
        "L4 = {:?}",
        bin(4)?
    );
    ensure!(
        bin(5)? == set(&["01011", "01101", "10101", "10110", "11010", "11011"]),
        "L5 = {:?}",
        bin(5)?
    );
    for (n, want) in [(3, (4, 5)), (4, (5, 6))] {
        let g = rauzy(&p, &w, n).map_err(err)?;
        ensure!(
            (g.vertices.len(), g.edges.len()) == want,
            "Rauzy graph {n}: {} / {}",
            g.vertices.len(),
            g.edges.len()
        );
    }
    Ok(())
}

fn breakpoints() -> Check {
    let eps = -(QuadraticReal::one() / tau());
    let d4 = dn_breakpoints(&eps, 4).map_err(err)?;
    ensure!(d4 == vec![t(4, -2), t(-4, 3), t(1, 0)], "D4 = {d4:?}");
    let figure: [&[&str]; 6] = [
        &[
            "ABAB", "ABAC", "ABBA", "ACAB", "BABA", "BABB", "BACA", "BBAB", "CABA",
        ],
        &["ABAB", "ABAC", "ACAB", "BABA", "BACA", "CABA"],
        &[
            "AACA", "ABAB", "ABAC", "ACAA", "ACAB", "BABA", "BACA", "CAAC", "CABA",
        ],
        &["AACA", "ABAC", "ACAA", "ACAB", "BACA", "CAAC", "CABA"],
        &[
            "AACA", "ABAC", "ACAA", "ACAB", "ACAC", "BACA", "CAAC", "CABA", "CACA",
        ],
        &["AACA", "ACAA", "ACAC", "CAAC", "CACA"],
    ];
    let cells = dn_cells(&eps, 4).map_err(err)?;
    ensure!(cells.len() == 6, "{} cells", cells.len());
    for (i, (cell, want)) in cells.iter().zip(figure).enumerate() {
        let got: BTreeSet<String> = cell.factors.iter().cloned().collect();
        ensure!(got == set(want), "cell {i}: {got:?}");
    }
    Ok(())
}

fn complexity_law() -> Check {
    let sqrt3 = QuadraticReal::sqrt(3).unwrap();
    let configs = [
        (
            golden_params(),
            Window::new(q(0), QuadraticReal::from_ratio(7, 10)).unwrap(),
        ),
        (
            golden_params(),
            Window::new(
                QuadraticReal::from_ratio(-1, 3),
                QuadraticReal::from_ratio(9, 10),
            )
            .unwrap(),
        ),
        (
            CapParams::new(e8(), sqrt3).unwrap(),
            Window::new(
                QuadraticReal::from_ratio(-1, 4),
                QuadraticReal::from_ratio(1, 2),
            )
            .unwrap(),
        ),
    ];
    for (p, w) in &configs {
        let f = SteppingFn::new(p, w).map_err(err)?;
        let counts = complexity_counts(&f, 20).map_err(err)?;
        let seq = CapSequence::new(p, w).map_err(err)?;
        let prefix: Vec<Letter> = seq.right_letters().take(100_000).collect();
        for n in 1..=20 {
            ensure!(
                counts[n - 1] == 2 * n + 1,
                "C({n}) = {} for {w}",
                counts[n - 1]
            );
            let scanned = scan_factors(&prefix, n).len();
            ensure!(scanned == 2 * n + 1, "scanned C({n}) = {scanned} for {w}");
        }
    }
    let w = Window::new(q(-1), q(1)).map_err(err)?;
    let f = SteppingFn::new(&golden_params(), &w).map_err(err)?;
    let counts = complexity_counts(&f, 20).map_err(err)?;
    ensure!(
        counts.iter().enumerate().all(|(i, &c)| c == i + 2),
        "l = 1: {counts:?}"
    );
    Ok(())
}

fn densities() -> Check {
    let p = golden_params();
    let w = Window::new(q(0), QuadraticReal::from_ratio(7, 10)).map_err(err)?;
    let f = SteppingFn::new(&p, &w).map_err(err)?;
    for n in 1..=15 {
        let fs = factors_of(&f, n).map_err(err)?;
        let mut values = BTreeSet::new();
        let mut total = q(0);
        for x in &fs.factors {
            let rho = fs.density(&x.word).map_err(err)?;
            let rev: Vec<Letter> = x.word.iter().rev().copied().collect();
            let mirror = fs.density(&rev).map_err(err)?;
            ensure!(
                rho == mirror,
                "rho({}) != rho(reverse)",
                word_string(&x.word)
            );
            total = total + &rho;
            values.insert(rho);
        }
        ensure!(
            values.len() <= 5,
            "n = {n}: {} density values",
            values.len()
        );
        ensure!(total == q(1), "n = {n}: densities sum to {total}");
    }
    Ok(())
}

fn beta_equivalence() -> Check {
    let bases = [
        BetaBasis::new(tau()).map_err(err)?,
        BetaBasis::from_polynomial(3, 1, QuadraticSign::Minus).map_err(err)?,
    ];
    for b in &bases {
        let eq = cap_equivalence(b, 1000).map_err(err)?;
        ensure!(eq.holds(), "beta = {}: {eq:?}", b.beta());
        let z = first_beta_integers(b, 1000).map_err(err)?;
        let m = beta_substitution(b).map_err(err)?;
        let gaps = z.gap_word();
        let fixed = m.render(&m.fixed_point_prefix(0, gaps.len()).map_err(err)?);
        ensure!(
            gaps == fixed,
            "beta = {}: gap word differs from the fixed point",
            b.beta()
        );
        ensure!(gaps.len() == 999, "{} gaps", gaps.len());
    }
    Ok(())
}

fn self_similarity() -> Check {
    let p = golden_params();
    let w = Window::new(q(0), q(1)).map_err(err)?;
    let f = find_factor(&p, &w).map_err(err)?;
    ensure!(f.gamma == &tau() * &tau(), "gamma = {}", f.gamma);
    let rep = verify_inclusion(&f, &p, &w, 1000).map_err(err)?;
    ensure!(rep.passed && rep.checked == 1000, "{rep:?}");
    let (p, w) = octagonal();
    let f = find_factor(&p, &w).map_err(err)?;
    ensure!(
        f.conjugate.is_positive() && f.conjugate < q(1),
        "conjugate = {}",
        f.conjugate
    );
    let rep = verify_inclusion(&f, &p, &w, 1000).map_err(err)?;
    ensure!(rep.passed, "{rep:?}");
    Ok(())
}

/// A binary word read as a number, most significant letter first.
fn bits_value(w: &[u8]) -> u32 {
    w.iter().fold(0, |acc, &b| (acc << 1) | u32::from(b))
}

fn sturmian() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alphas = [
        QuadraticReal::one() / tau(),
        QuadraticReal::from_parts(0, 1, 1, 2, 2).unwrap(),
    ];
    for alpha in &alphas {
        let mut languages = Vec::new();
        for n in 1..=30 {
            let r = sturmian_checks(alpha, &q(0), n).map_err(err)?;
            ensure!(r.all_pass(), "alpha = {alpha}, n = {n}: {r:?}");
            let lang: BTreeSet<u32> = r
                .factors
                .iter()
                .map(|w| u32::from_str_radix(w, 2).unwrap())
                .collect();
            languages.push(lang);
        }
        for _ in 0..10 {
            let beta = QuadraticReal::from_ratio(rng.gen_range(0..1000), 1000);
            let prefix =
                mechanical(alpha, &beta, MechanicalKind::Lower, 0..100_000).map_err(err)?;
            ensure!(
                is_balanced(&prefix, 30),
                "alpha = {alpha}, beta = {beta}: unbalanced prefix"
            );
            for (i, lang) in languages.iter().enumerate() {
                let n = i + 1;
                let sorted: Vec<u32> = lang.iter().copied().collect();
                let mut seen = vec![false; sorted.len()];
                let mask = (1u32 << n) - 1;
                let mut code = bits_value(&prefix[..n - 1]);
                for &b in &prefix[n - 1..] {
                    code = ((code << 1) | u32::from(b)) & mask;
                    let Ok(k) = sorted.binary_search(&code) else {
                        return Err(format!(
                            "alpha = {alpha}, beta = {beta}: unexpected factor of length {n}"
                        ));
                    };
                    seen[k] = true;
                }
                ensure!(
                    seen.iter().all(|&x| x),
                    "alpha = {alpha}, beta = {beta}: a factor of length {n} is missing"
                );
            }
        }
    }
    Ok(())
}

fn ladder() -> Check {
    for p in [
        golden_params(),
        CapParams::new(e8(), e8().conjugate()).unwrap(),
    ] {
        let levels = ladder_levels(&p, -2, 1).map_err(err)?;
        for pair in levels.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            ensure!(lo.upper < hi.upper, "ladder not increasing");
            let union: BTreeSet<QuadraticReal> = lo
                .physical_gaps(&p)
                .into_iter()
                .chain(hi.physical_gaps(&p))
                .collect();
            let len = (&lo.upper + &hi.upper) / q(2);
            let w = Window::new(-(&len / q(3)), len).map_err(err)?;
            let seq = CapSequence::new(&p, &w).map_err(err)?;
            let pts = seq.points(5_000, 4_999);
            let gaps: BTreeSet<QuadraticReal> =
                pts.windows(2).map(|x| &x[1].value - &x[0].value).collect();
            ensure!(
                gaps == union,
                "level {}: gaps {gaps:?} vs {union:?}",
                hi.level
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("golden derivation", derivation),
        ("fixed point verification", fixed_point),
        ("merge of letters", merge),
        ("fibonacci factor sets", fibonacci_factors),
        ("breakpoints of length 4", breakpoints),
        ("complexity law", complexity_law),
        ("density properties", densities),
        ("beta-integer equivalence", beta_equivalence),
        ("self-similarity", self_similarity),
        ("sturmian properties", sturmian),
        ("ladder consistency", ladder),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s) {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
