use std::collections::BTreeMap;

use serde::Serialize;

use super::morphism::Morphism;
use crate::{Error, Result};

/// Letter-to-letter map from a morphism's alphabet onto a target alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub names: Vec<String>,
    pub map: Vec<usize>,
}

impl Projection {
    pub fn new(names: Vec<String>, map: Vec<usize>) -> Result<Self> {
        if map.iter().any(|&t| t >= names.len()) {
            return Err(Error::InvalidParameter(
                "projection hits an unknown letter".into(),
            ));
        }
        Ok(Self { names, map })
    }

    pub fn apply(&self, w: &[usize]) -> Vec<usize> {
        w.iter().map(|&a| self.map[a]).collect()
    }

    pub fn render(&self, w: &[usize]) -> String {
        w.iter()
            .map(|&a| self.names[self.map[a]].as_str())
            .collect()
    }
}

/// Letters identified by `merge_letters`, the morphism they carry and, when a
/// projection is constant on classes and on their images, the induced morphism on its alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeResult {
    pub power: u32,
    pub classes: Vec<Vec<usize>>,
    /// `φ^k` acting on classes; each class is named after its first member.
    pub quotient: Morphism,
    pub induced: Option<Morphism>,
}

impl MergeResult {
    pub fn merged_any(&self) -> bool {
        self.classes.iter().any(|c| c.len() > 1)
    }

    /// Class of a letter of the original alphabet.
    pub fn class_of(&self, letter: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&letter))
            .expect("classes cover the alphabet")
    }
}

/// Merges letters whose `φ^k`-images agree once already merged letters are
/// identified, until nothing changes; with a projection only letters of one fibre merge.
pub fn merge_letters(m: &Morphism, k: u32, projection: Option<&Projection>) -> Result<MergeResult> {
    if k == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    let n = m.size();
    if projection.is_some_and(|p| p.map.len() != n) {
        return Err(Error::InvalidParameter(
            "projection size differs from the alphabet".into(),
        ));
    }
    let mk = m.power(k);
    let fibre = |a: usize| projection.map_or(0, |p| p.map[a]);
    let mut block: Vec<usize> = (0..n).collect();
    loop {
        let mut seen: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut changed = false;
        for a in 0..n {
            let key = (fibre(a), mk.image(a).iter().map(|&b| block[b]).collect());
            let rep = *seen.entry(key).or_insert(a);
            if block[rep] != block[a] {
                let (from, to) = (block[a].max(block[rep]), block[a].min(block[rep]));
                block
                    .iter_mut()
                    .filter(|b| **b == from)
                    .for_each(|b| *b = to);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let count = renumber(&mut block);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); count];
    for a in 0..n {
        classes[block[a]].push(a);
    }
    let names = classes.iter().map(|c| m.names()[c[0]].clone()).collect();
    let images = classes
        .iter()
        .map(|c| mk.image(c[0]).iter().map(|&b| block[b]).collect())
        .collect();
    let quotient = Morphism::new(names, images)?;
    let induced = projection.and_then(|p| induced_morphism(&mk, p));
    Ok(MergeResult {
        power: k,
        classes,
        quotient,
        induced,
    })
}

/// `ψ ∘ φ^k` read as a morphism on the target alphabet, if it is well defined there.
fn induced_morphism(mk: &Morphism, p: &Projection) -> Option<Morphism> {
    let mut images: Vec<Option<Vec<usize>>> = vec![None; p.names.len()];
    for a in 0..mk.size() {
        let img = p.apply(mk.image(a));
        match &images[p.map[a]] {
            Some(prev) if prev != &img => return None,
            _ => images[p.map[a]] = Some(img),
        }
    }
    let images: Option<Vec<Vec<usize>>> = images.into_iter().collect();
    Morphism::new(p.names.clone(), images?).ok()
}

/// Relabels blocks in order of first appearance and returns their number.
fn renumber(block: &mut [usize]) -> usize {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    for b in block.iter_mut() {
        let len = map.len();
        *b = *map.entry(*b).or_insert(len);
    }
    map.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_has_no_merge() {
        let m = Morphism::parse("A->AB,B->A").unwrap();
        let r = merge_letters(&m, 1, None).unwrap();
        assert!(!r.merged_any());
        assert_eq!(r.quotient, m);
    }

    #[test]
    fn identical_images_merge() {
        let m = Morphism::parse("a->ab,b->ab,c->ca").unwrap();
        let r = merge_letters(&m, 1, None).unwrap();
        assert_eq!(r.classes, vec![vec![0, 1], vec![2]]);
        assert_eq!(r.quotient.to_string(), "a->aa, c->ca");
    }

    #[test]
    fn induced_needs_constant_images() {
        let m = Morphism::parse("a->ab,b->ba").unwrap();
        let p = Projection::new(vec!["X".into()], vec![0, 0]).unwrap();
        let r = merge_letters(&m, 1, Some(&p)).unwrap();
        assert_eq!(r.induced.unwrap().to_string(), "X->XX");
        let p = Projection::new(vec!["X".into(), "Y".into()], vec![0, 1]).unwrap();
        let r = merge_letters(&m, 1, Some(&p)).unwrap();
        assert!(!r.merged_any());
        assert_eq!(r.induced.unwrap().to_string(), "X->XY, Y->YX");
    }
}
