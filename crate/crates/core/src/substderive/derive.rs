use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::merge::Projection;
use super::morphism::{images_map, iterate_to, Morphism, PointedWord};
use crate::capcore::{word_string, CapParams, CapSequence, Coords, Letter, SteppingFn, Window};
use crate::exactnum::{QuadraticReal, ZTheta};
use crate::{Error, Result};

/// Bound on `ind(x)`.
pub const IND_CAP: usize = 1_000;
/// Bound on the size of `S`.
pub const SET_CAP: usize = 10_000;

/// Tuning knobs of `derive`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeriveOptions {
    /// Use `γ^k` instead of the fundamental unit `γ`.
    pub gamma_power: u32,
    pub ind_cap: usize,
    pub set_cap: usize,
}

impl Default for DeriveOptions {
    fn default() -> Self {
        Self {
            gamma_power: 1,
            ind_cap: IND_CAP,
            set_cap: SET_CAP,
        }
    }
}

/// Alphabet `{0, …, k}`, morphism, seed letters and projection generating a coded word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutivityResult {
    /// Unit `γ ∈ (0,1)` with `γ′ > 1` and `γZ[ε] = Z[ε]`.
    pub gamma: QuadraticReal,
    /// `c₀ < c₁ < … < c_k`.
    pub s: Vec<QuadraticReal>,
    /// `c_{k+1} = c + ℓ`.
    pub end: QuadraticReal,
    pub morphism: Morphism,
    /// `j_i`, the length of `φ(i)`.
    pub j: Vec<usize>,
    /// `(v₋₁, v₀)`.
    pub initial: (usize, usize),
    pub projection: Vec<Letter>,
}

impl SubstitutivityResult {
    pub fn projection_map(&self) -> Projection {
        let names = Letter::ALL
            .iter()
            .map(|l| l.to_char().to_string())
            .collect();
        Projection {
            names,
            map: self.projection.iter().map(|l| l.index()).collect(),
        }
    }

    /// `φ^n(v₋₁) | φ^n(v₀)`.
    pub fn iterate(&self, rounds: u32) -> Result<PointedWord> {
        super::morphism::iterate(&self.morphism, self.initial, rounds)
    }

    /// `n` letters of `ψ(v)` on each side of the origin.
    pub fn projected_word(&self, n: usize) -> Result<(Vec<Letter>, Vec<Letter>)> {
        let v = iterate_to(&self.morphism, self.initial, n)?;
        let psi = |w: &[usize]| w.iter().map(|&a| self.projection[a]).collect();
        Ok((psi(&v.left), psi(&v.right)))
    }
}

impl Serialize for SubstitutivityResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let names = self.morphism.names();
        let projection: std::collections::BTreeMap<&str, String> = names
            .iter()
            .zip(&self.projection)
            .map(|(n, l)| (n.as_str(), l.to_char().to_string()))
            .collect();
        let mut st = s.serialize_struct("SubstitutivityResult", 7)?;
        st.serialize_field("alphabet", names)?;
        st.serialize_field("images", &images_map(&self.morphism))?;
        st.serialize_field("initial", &[&names[self.initial.0], &names[self.initial.1]])?;
        st.serialize_field("projection", &projection)?;
        st.serialize_field("gamma", &self.gamma)?;
        st.serialize_field("points", &self.s)?;
        st.serialize_field("j", &self.j)?;
        st.end()
    }
}

/// Stepping function together with the scaled window `γΩ`.
struct Scaled<'a> {
    f: &'a SteppingFn,
    gamma: &'a QuadraticReal,
    lo: QuadraticReal,
    hi: QuadraticReal,
}

impl<'a> Scaled<'a> {
    fn new(f: &'a SteppingFn, gamma: &'a QuadraticReal) -> Self {
        let lo = gamma * &f.window.c;
        let hi = gamma * &f.window.end();
        Self { f, gamma, lo, hi }
    }

    fn contains(&self, y: &QuadraticReal) -> bool {
        &self.lo <= y && y < &self.hi
    }
}

/// `g_γ(x) = f^{−ind(x)}(x)/γ` with `ind(x) = min{i ≥ 0 : f^{−i}(x) ∈ γΩ}`.
pub fn g_gamma(
    x: &QuadraticReal,
    gamma: &QuadraticReal,
    f: &SteppingFn,
    cap: usize,
) -> Result<(QuadraticReal, usize)> {
    let sc = Scaled::new(f, gamma);
    g_scaled(x, &sc, cap)
}

fn g_scaled(x: &QuadraticReal, sc: &Scaled<'_>, cap: usize) -> Result<(QuadraticReal, usize)> {
    if !sc.f.window.contains(x) {
        return Err(Error::OutsideWindow(format!(
            "{x} is not in {}",
            sc.f.window
        )));
    }
    let mut y = x.clone();
    for i in 0..=cap {
        if sc.contains(&y) {
            return Ok((y / sc.gamma, i));
        }
        y = sc.f.step_inv(&y)?;
    }
    Err(Error::CapExceeded {
        what: "ind(x)",
        cap,
    })
}

/// Smallest `S ⊇ {c, c+ℓ−1−ε, c−ε}` with `g_γ(S) ⊆ S`, in increasing order.
pub fn closure_set(
    f: &SteppingFn,
    gamma: &QuadraticReal,
    opts: &DeriveOptions,
) -> Result<Vec<QuadraticReal>> {
    let sc = Scaled::new(f, gamma);
    let mut s: BTreeSet<QuadraticReal> = BTreeSet::new();
    let mut todo = vec![f.window.c.clone(), f.delta1.clone(), f.delta2.clone()];
    while let Some(x) = todo.pop() {
        if !s.insert(x.clone()) {
            continue;
        }
        if s.len() > opts.set_cap {
            return Err(Error::CapExceeded {
                what: "closure set S",
                cap: opts.set_cap,
            });
        }
        todo.push(g_scaled(&x, &sc, opts.ind_cap)?.0);
    }
    Ok(s.into_iter().collect())
}

/// Index `m` with `y ∈ [c_m, c_{m+1})`.
fn cell(s: &[QuadraticReal], y: &QuadraticReal) -> usize {
    s.partition_point(|c| c <= y) - 1
}

/// Checks the input conditions of the derivation and returns the stepping function with `η` as given.
fn check_input(params: &CapParams, window: &Window) -> Result<SteppingFn> {
    let eps = &params.eps;
    let one = QuadraticReal::one();
    if !(eps.is_negative() && eps > &-&one) {
        return Err(Error::Precondition(format!(
            "eps = {eps} must lie in (-1,0)"
        )));
    }
    let conj = eps.conjugate();
    if !(conj.is_positive() || conj < -&one) {
        return Err(Error::Precondition(format!(
            "-eps = {} is not a Sturm number: eps' = {conj}",
            -eps
        )));
    }
    if !params.eta.is_positive() {
        return Err(Error::Precondition(format!(
            "eta = {} must be positive",
            params.eta
        )));
    }
    if window.c.is_positive() || !window.end().is_positive() {
        return Err(Error::Precondition(format!(
            "window {window} must satisfy c <= 0 < c+l"
        )));
    }
    let floor = std::cmp::max(-eps, &one + eps);
    if !(window.len > floor && window.len <= one) {
        return Err(Error::Precondition(format!(
            "length {} must lie in ({floor}, 1]",
            window.len
        )));
    }
    let f = SteppingFn::new(params, window)?;
    if f.pair.d1_star != &one + eps || &f.pair.d2_star != eps {
        return Err(Error::Inconsistent(
            "unexpected distance pair for the window".into(),
        ));
    }
    Ok(f)
}

/// Alphabet, morphism, seed and projection whose projected fixed point is the coded word of `Σ_{ε,η}(Ω)`.
pub fn derive(
    params: &CapParams,
    window: &Window,
    opts: &DeriveOptions,
) -> Result<SubstitutivityResult> {
    if opts.gamma_power == 0 {
        return Err(Error::InvalidParameter(
            "gamma power must be at least 1".into(),
        ));
    }
    let f = check_input(params, window)?;
    let gamma = ZTheta::new(params.eps.clone())?
        .fundamental_unit()?
        .pow(opts.gamma_power as i32)?;
    let s = closure_set(&f, &gamma, opts)?;
    let sc = Scaled::new(&f, &gamma);
    let mut images = Vec::with_capacity(s.len());
    let mut js = Vec::with_capacity(s.len());
    for c in &s {
        let mut y = &gamma * c;
        let mut w = Vec::new();
        loop {
            w.push(cell(&s, &y));
            y = f.step(&y)?;
            if sc.contains(&y) {
                break;
            }
            if w.len() > opts.set_cap * opts.ind_cap {
                return Err(Error::CapExceeded {
                    what: "j_i",
                    cap: opts.set_cap * opts.ind_cap,
                });
            }
        }
        js.push(w.len());
        images.push(w);
    }
    let zero = QuadraticReal::zero();
    let initial = (cell(&s, &f.step_inv(&zero)?), cell(&s, &zero));
    let projection = s.iter().map(|c| f.region(c)).collect();
    let names = (0..s.len()).map(letter_name).collect();
    let morphism = Morphism::new(names, images)?;
    Ok(SubstitutivityResult {
        gamma,
        s,
        end: window.end(),
        morphism,
        j: js,
        initial,
        projection,
    })
}

/// `0 … 9`, then `a … z`, then `A0, A1, …`.
fn letter_name(i: usize) -> String {
    match i {
        0..=9 => char::from(b'0' + i as u8).to_string(),
        10..=35 => char::from(b'a' + (i - 10) as u8).to_string(),
        _ => format!("<{i}>"),
    }
}

/// Outcome of comparing `ψ(v)` with the coded word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub n_letters: usize,
    pub passed: bool,
    /// Position `n` (negative on the left) of the first disagreement.
    pub first_mismatch: Option<i64>,
    pub right_prefix: String,
    pub left_suffix: String,
}

/// Compares `ψ(v)` with `u_{ε,η}(Ω)` on `n_letters` letters each side of the origin.
pub fn verify_projection(
    result: &SubstitutivityResult,
    params: &CapParams,
    window: &Window,
    n_letters: usize,
) -> Result<ProjectionReport> {
    let seq = CapSequence::new(params, window)?;
    if seq.seed() != Coords::ZERO {
        return Err(Error::Precondition(
            "the origin must belong to the set".into(),
        ));
    }
    let right: Vec<Letter> = seq.right_letters().take(n_letters).collect();
    let left: Vec<Letter> = seq.left_letters().take(n_letters).collect();
    let (pl, pr) = result.projected_word(n_letters)?;
    let mut first_mismatch = right
        .iter()
        .zip(&pr)
        .position(|(a, b)| a != b)
        .map(|i| i as i64);
    if first_mismatch.is_none() {
        // left_letters yields u_{−1}, u_{−2}, …
        first_mismatch = left
            .iter()
            .zip(pl.iter().rev())
            .position(|(a, b)| a != b)
            .map(|i| -(i as i64) - 1);
    }
    let show = 12.min(n_letters);
    Ok(ProjectionReport {
        n_letters,
        passed: first_mismatch.is_none(),
        first_mismatch,
        right_prefix: word_string(&pr[..show]),
        left_suffix: word_string(&pl[pl.len() - show..]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps() -> QuadraticReal {
        QuadraticReal::from_parts(0, 1, -1, 2, 2).unwrap()
    }

    fn lin(a: i64, b: i64) -> QuadraticReal {
        QuadraticReal::from_int(a) + QuadraticReal::from_int(b) * eps()
    }

    fn setup() -> (CapParams, Window) {
        let e = eps();
        let p = CapParams::new(e.clone(), e.conjugate()).unwrap();
        (p, Window::new(QuadraticReal::zero(), lin(-2, -4)).unwrap())
    }

    #[test]
    fn g_gamma_values() {
        let (p, w) = setup();
        let f = SteppingFn::new(&p, &w).unwrap();
        let g = lin(3, 4);
        assert_eq!(
            g_gamma(&QuadraticReal::zero(), &g, &f, IND_CAP).unwrap(),
            (QuadraticReal::zero(), 0)
        );
        assert_eq!(
            g_gamma(&lin(0, -1), &g, &f, IND_CAP).unwrap(),
            (lin(0, -1), 2)
        );
        assert_eq!(
            g_gamma(&lin(-3, -5), &g, &f, IND_CAP).unwrap(),
            (lin(-1, -2), 4)
        );
        assert_eq!(
            g_gamma(&lin(-1, -2), &g, &f, IND_CAP).unwrap(),
            (lin(0, -1), 1)
        );
    }

    #[test]
    fn worked_derivation() {
        let (p, w) = setup();
        let r = derive(&p, &w, &DeriveOptions::default()).unwrap();
        assert_eq!(r.gamma, lin(3, 4));
        assert_eq!(r.s, vec![lin(0, 0), lin(-1, -2), lin(-3, -5), lin(0, -1)]);
        assert_eq!(
            r.morphism.to_string(),
            "0->002013, 1->00202, 2->00202013, 3->013"
        );
        assert_eq!(r.j, vec![6, 5, 8, 3]);
        assert_eq!(r.initial, (3, 0));
        assert_eq!(word_string(&r.projection), "AABC");
        assert_eq!(r.iterate(1).unwrap().render(&r.morphism), "013|002013");
        let rep = verify_projection(&r, &p, &w, 2000).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(&rep.right_prefix[..6], "AABAAC");
        assert!(rep.left_suffix.ends_with("BABAAC"));
    }

    #[test]
    fn json_shape() {
        let (p, w) = setup();
        let r = derive(&p, &w, &DeriveOptions::default()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["initial"], serde_json::json!(["3", "0"]));
        assert_eq!(j["images"]["2"], "00202013");
        assert_eq!(j["projection"]["3"], "C");
    }

    #[test]
    fn squared_unit_still_generates() {
        let (p, w) = setup();
        let opts = DeriveOptions {
            gamma_power: 2,
            ..DeriveOptions::default()
        };
        let r = derive(&p, &w, &opts).unwrap();
        assert!(verify_projection(&r, &p, &w, 1000).unwrap().passed);
    }

    #[test]
    fn rejects_bad_inputs() {
        let (p, _) = setup();
        let w = Window::new(QuadraticReal::from_ratio(1, 10), lin(-2, -4)).unwrap();
        assert!(matches!(
            derive(&p, &w, &DeriveOptions::default()),
            Err(Error::Precondition(_))
        ));
        let w = Window::new(QuadraticReal::zero(), QuadraticReal::from_ratio(1, 2)).unwrap();
        assert!(matches!(
            derive(&p, &w, &DeriveOptions::default()),
            Err(Error::Precondition(_))
        ));
    }
}
