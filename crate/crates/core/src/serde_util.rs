//! Big integers serialize as decimal strings: JSON numbers lose precision past 2^53.

use num_bigint::{BigInt, BigUint};
use serde::Serializer;

pub fn biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn biguint_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn poly<S: Serializer>(v: &crate::IntPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
