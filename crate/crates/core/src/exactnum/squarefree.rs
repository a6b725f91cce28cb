use crate::{Error, Result};

/// Radicands above this bound are rejected; trial division up to 10⁶ factors them completely.
pub const MAX_RADICAND: u64 = 1_000_000_000_000;

/// Splits `d` as `s²·core` with `core` square-free.
pub fn split_square(d: u64) -> Result<(u64, u64)> {
    if d > MAX_RADICAND {
        return Err(Error::RadicandOutOfRange(d.to_string()));
    }
    let mut rest = d;
    let mut s = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    core *= rest;
    Ok((s, core))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits() {
        assert_eq!(split_square(8).unwrap(), (2, 2));
        assert_eq!(split_square(45).unwrap(), (3, 5));
        assert_eq!(split_square(1).unwrap(), (1, 1));
        assert_eq!(split_square(49).unwrap(), (7, 1));
        assert_eq!(split_square(999_983 * 4).unwrap(), (2, 999_983));
        assert!(split_square(MAX_RADICAND + 1).is_err());
    }

    #[test]
    fn product_is_preserved() {
        for d in 1..2000u64 {
            let (s, c) = split_square(d).unwrap();
            assert_eq!(s * s * c, d);
            let mut p = 2;
            while p * p <= c {
                assert_ne!(c % (p * p), 0);
                p += 1;
            }
        }
    }
}
