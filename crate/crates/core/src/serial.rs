//! Serde helpers: exact rationals travel as "num/den" strings.

use num_rational::BigRational;

pub fn rat_to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub mod rat {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::rat_to_string(x))
    }
}

pub mod rat_vec {
    use num_rational::BigRational;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&super::rat_to_string(x))?;
        }
        seq.end()
    }
}

/// Serialize any `Display` value (polynomials) as its text form.
pub mod display {
    use serde::Serializer;
    use std::fmt::Display;

    pub fn serialize<T: Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }
}

pub fn rat_opt<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&rat_to_string(v)),
        None => s.serialize_none(),
    }
}
