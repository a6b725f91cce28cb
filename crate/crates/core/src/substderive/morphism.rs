use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// A morphism of the free monoid over a finite, ordered alphabet.
///
/// Letters are indices into `names`; images are non-empty words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    names: Vec<String>,
    images: Vec<Vec<usize>>,
}

impl Morphism {
    pub fn new(names: Vec<String>, images: Vec<Vec<usize>>) -> Result<Self> {
        if names.len() != images.len() || names.is_empty() {
            return Err(Error::InvalidParameter(
                "one image per letter is required".into(),
            ));
        }
        for (n, im) in names.iter().zip(&images) {
            if im.is_empty() {
                return Err(Error::InvalidParameter(format!("image of {n} is empty")));
            }
            if im.iter().any(|&i| i >= names.len()) {
                return Err(Error::InvalidParameter(format!(
                    "image of {n} uses an unknown letter"
                )));
            }
        }
        Ok(Self { names, images })
    }

    /// Builds a morphism from rules such as `[("A", "AB"), ("B", "A")]` over one-character letters.
    pub fn from_rules(rules: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = rules.iter().map(|(a, _)| a.to_string()).collect();
        let mut images = Vec::with_capacity(rules.len());
        for (a, img) in rules {
            let w = img
                .chars()
                .map(|c| {
                    names
                        .iter()
                        .position(|n| n.len() == c.len_utf8() && n.starts_with(c))
                })
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("image {img:?} of {a} uses an unknown letter"))
                })?;
            images.push(w);
        }
        Self::new(names, images)
    }

    /// Parses `A->AB,B->A`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for part in spec.split(',') {
            let (a, b) = part.split_once("->").ok_or_else(|| Error::Parse {
                input: spec.into(),
                reason: format!("rule {part:?} lacks '->'"),
            })?;
            rules.push((a.trim(), b.trim()));
        }
        Self::from_rules(&rules)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn image(&self, letter: usize) -> &[usize] {
        &self.images[letter]
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn letter(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn apply(&self, w: &[usize]) -> Vec<usize> {
        w.iter()
            .flat_map(|&a| self.images[a].iter().copied())
            .collect()
    }

    /// `φ^k`.
    pub fn power(&self, k: u32) -> Self {
        let mut images: Vec<Vec<usize>> = (0..self.size()).map(|a| vec![a]).collect();
        for _ in 0..k {
            images = images.iter().map(|w| self.apply(w)).collect();
        }
        Self {
            names: self.names.clone(),
            images,
        }
    }

    /// Writes a word by concatenating letter names.
    pub fn render(&self, w: &[usize]) -> String {
        w.iter().map(|&a| self.names[a].as_str()).collect()
    }

    /// Reads a word over one-character letter names.
    pub fn read(&self, s: &str) -> Result<Vec<usize>> {
        s.chars()
            .map(|c| {
                self.names
                    .iter()
                    .position(|n| n.len() == c.len_utf8() && n.starts_with(c))
                    .ok_or_else(|| Error::Parse {
                        input: s.into(),
                        reason: format!("unknown letter {c:?}"),
                    })
            })
            .collect()
    }

    /// Letter counts `M_ij = |φ(a_i)|_{a_j}`.
    pub fn matrix(&self) -> SubstitutionMatrix {
        let k = self.size();
        let m = self
            .images
            .iter()
            .map(|im| {
                let mut row = vec![0u64; k];
                for &a in im {
                    row[a] += 1;
                }
                row
            })
            .collect();
        SubstitutionMatrix::new(m)
    }

    /// Prefix of length `n` of the fixed point `lim φ^k(a)`.
    pub fn fixed_point_prefix(&self, a: usize, n: usize) -> Result<Vec<usize>> {
        let im = &self.images[a];
        if im[0] != a || im.len() < 2 {
            return Err(Error::IncompatibleSeed(format!(
                "image of {} must start with it and be longer than one letter",
                self.names[a]
            )));
        }
        let mut w = vec![a];
        while w.len() < n {
            w = self.apply(&w);
        }
        w.truncate(n);
        Ok(w)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, im)) in self.names.iter().zip(&self.images).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}->{}", self.render(im))?;
        }
        Ok(())
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Images<'a>(&'a Morphism);
        impl Serialize for Images<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.size()))?;
                for (n, im) in self.0.names.iter().zip(&self.0.images) {
                    m.serialize_entry(n, &self.0.render(im))?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("Morphism", 2)?;
        st.serialize_field("alphabet", &self.names)?;
        st.serialize_field("images", &Images(self))?;
        st.end()
    }
}

/// Non-negative integer matrix of letter counts, with a primitivity flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionMatrix {
    pub m: Vec<Vec<u64>>,
    pub primitive: bool,
}

impl SubstitutionMatrix {
    pub fn new(m: Vec<Vec<u64>>) -> Self {
        let primitive = is_primitive(&m);
        Self { m, primitive }
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.m.iter().map(|r| r.iter().sum()).collect()
    }
}

/// Some power up to `k²` is strictly positive; the identity `(1)` is excluded.
fn is_primitive(m: &[Vec<u64>]) -> bool {
    let k = m.len();
    if k == 1 && m[0][0] == 1 {
        return false;
    }
    let pattern: Vec<Vec<bool>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x > 0).collect())
        .collect();
    let mut p = pattern.clone();
    for _ in 0..k * k {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        let next = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (0..k).any(|l| p[i][l] && pattern[l][j]))
                    .collect()
            })
            .collect();
        p = next;
    }
    false
}

/// A finite window `v_{−n} … v_{−1} | v_0 … v_{m−1}` of a bidirectional word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedWord {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Iterates `φ` on both sides of the seed `v₋₁ | v₀` for `rounds` rounds.
pub fn iterate(m: &Morphism, seed: (usize, usize), rounds: u32) -> Result<PointedWord> {
    let (l, r) = seed;
    if m.image(r)[0] != r {
        return Err(Error::IncompatibleSeed(format!(
            "image of {} does not start with it",
            m.names[r]
        )));
    }
    if *m.image(l).last().expect("non-empty") != l {
        return Err(Error::IncompatibleSeed(format!(
            "image of {} does not end with it",
            m.names[l]
        )));
    }
    let mut w = PointedWord {
        left: vec![l],
        right: vec![r],
    };
    for _ in 0..rounds {
        w = PointedWord {
            left: m.apply(&w.left),
            right: m.apply(&w.right),
        };
    }
    Ok(w)
}

/// Iterates until both sides hold at least `n` letters, then trims to exactly `n`.
pub fn iterate_to(m: &Morphism, seed: (usize, usize), n: usize) -> Result<PointedWord> {
    let mut w = iterate(m, seed, 0)?;
    let mut rounds = 0;
    while w.left.len() < n || w.right.len() < n {
        let next = PointedWord {
            left: m.apply(&w.left),
            right: m.apply(&w.right),
        };
        if next.left.len() == w.left.len() && next.right.len() == w.right.len() {
            return Err(Error::IncompatibleSeed(
                "the seed does not grow under iteration".into(),
            ));
        }
        w = next;
        rounds += 1;
        if rounds > 10_000 {
            return Err(Error::CapExceeded {
                what: "fixed point iteration",
                cap: 10_000,
            });
        }
    }
    let cut = w.left.len() - n;
    w.left.drain(..cut);
    w.right.truncate(n);
    Ok(w)
}

impl PointedWord {
    pub fn render(&self, m: &Morphism) -> String {
        format!("{}|{}", m.render(&self.left), m.render(&self.right))
    }
}

/// Counts of each letter in `w`.
pub fn letter_counts(w: &[usize], k: usize) -> Vec<usize> {
    let mut c = vec![0; k];
    for &a in w {
        c[a] += 1;
    }
    c
}

/// Letters `names[i]` mapped to images, as an ordered map for display.
pub fn images_map(m: &Morphism) -> BTreeMap<String, String> {
    m.names
        .iter()
        .zip(&m.images)
        .map(|(n, im)| (n.clone(), m.render(im)))
        .collect()
}
