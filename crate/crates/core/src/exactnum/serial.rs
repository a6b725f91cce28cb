use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{QuadraticReal, Rational};

/// Integers fitting in `i64` are JSON numbers, larger ones decimal strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn from_big(n: &BigInt) -> Self {
        n.to_i64()
            .map_or_else(|| Int::Big(n.to_string()), Int::Small)
    }

    fn to_big<E: serde::de::Error>(&self) -> Result<BigInt, E> {
        match self {
            Int::Small(v) => Ok(BigInt::from(*v)),
            Int::Big(s) => s
                .parse()
                .map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

fn pair(r: &Rational) -> (Int, Int) {
    (Int::from_big(r.numer()), Int::from_big(r.denom()))
}

impl Serialize for QuadraticReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadraticReal", 3)?;
        st.serialize_field("a", &pair(self.a()))?;
        st.serialize_field("b", &pair(self.b()))?;
        st.serialize_field("d", &self.d())?;
        st.end()
    }
}

#[derive(Deserialize)]
struct Raw {
    a: (Int, Int),
    b: (Int, Int),
    d: u64,
}

impl<'de> Deserialize<'de> for QuadraticReal {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = Raw::deserialize(de)?;
        let ratio = |(n, m): &(Int, Int)| -> Result<Rational, D::Error> {
            let m = m.to_big::<D::Error>()?;
            if m == BigInt::from(0) {
                return Err(D::Error::custom("zero denominator"));
            }
            Ok(Rational::new(n.to_big::<D::Error>()?, m))
        };
        QuadraticReal::new(ratio(&raw.a)?, ratio(&raw.b)?, raw.d).map_err(D::Error::custom)
    }
}
