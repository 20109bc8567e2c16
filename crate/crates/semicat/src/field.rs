//! Exact scalar arithmetic over the two supported ground fields: the
//! rationals and prime fields GF(p).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Ground field of a document. All scalars in one document share one spec.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    pub fn zero(&self) -> K {
        match self {
            FieldSpec::Q => K::Q(BigRational::zero()),
            FieldSpec::Fp(p) => K::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> K {
        match self {
            FieldSpec::Q => K::Q(BigRational::one()),
            FieldSpec::Fp(p) => K::Fp { v: 1 % *p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> K {
        match self {
            FieldSpec::Q => K::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => {
                let p = *p;
                let r = n.rem_euclid(p as i64) as u64;
                K::Fp { v: r, p }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fp(p) => *p,
        }
    }

    /// Prime-field moduli must be prime; Q always passes.
    pub fn is_valid(&self) -> bool {
        match self {
            FieldSpec::Q => true,
            FieldSpec::Fp(p) => is_prime(*p),
        }
    }

    /// Parse the document text form: rationals as "a" or "a/b", prime-field
    /// elements as (possibly signed) decimal residues.
    pub fn parse(&self, s: &str) -> Result<K, String> {
        let s = s.trim();
        match self {
            FieldSpec::Q => {
                if let Some((a, b)) = s.split_once('/') {
                    let num = BigInt::from_str(a.trim()).map_err(|e| format!("bad numerator {a:?}: {e}"))?;
                    let den = BigInt::from_str(b.trim()).map_err(|e| format!("bad denominator {b:?}: {e}"))?;
                    if den.is_zero() {
                        return Err(format!("zero denominator in {s:?}"));
                    }
                    Ok(K::Q(BigRational::new(num, den)))
                } else {
                    let num = BigInt::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))?;
                    Ok(K::Q(BigRational::from_integer(num)))
                }
            }
            FieldSpec::Fp(p) => {
                let n = i128::from_str(s).map_err(|e| format!("bad residue {s:?}: {e}"))?;
                let r = n.rem_euclid(*p as i128) as u64;
                Ok(K::Fp { v: r, p: *p })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element. Prime-field values carry their modulus so mixed-field
/// arithmetic fails loudly instead of corrupting data.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum K {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

impl K {
    pub fn field(&self) -> FieldSpec {
        match self {
            K::Q(_) => FieldSpec::Q,
            K::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            K::Q(r) => r.is_zero(),
            K::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            K::Q(r) => r.is_one(),
            K::Fp { v, p } => *v == 1 % *p,
        }
    }

    pub fn add(&self, o: &K) -> K {
        match (self, o) {
            (K::Q(a), K::Q(b)) => K::Q(a + b),
            (K::Fp { v: a, p }, K::Fp { v: b, p: q }) if p == q => K::Fp { v: (a + b) % p, p: *p },
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn sub(&self, o: &K) -> K {
        match (self, o) {
            (K::Q(a), K::Q(b)) => K::Q(a - b),
            (K::Fp { v: a, p }, K::Fp { v: b, p: q }) if p == q => {
                K::Fp { v: (a + p - b % p) % p, p: *p }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn mul(&self, o: &K) -> K {
        match (self, o) {
            (K::Q(a), K::Q(b)) => K::Q(a * b),
            (K::Fp { v: a, p }, K::Fp { v: b, p: q }) if p == q => {
                K::Fp { v: mulmod(*a, *b, *p), p: *p }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn neg(&self) -> K {
        match self {
            K::Q(a) => K::Q(-a),
            K::Fp { v, p } => K::Fp { v: (p - v % p) % p, p: *p },
        }
    }

    pub fn inv(&self) -> Option<K> {
        match self {
            K::Q(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(K::Q(a.recip()))
                }
            }
            K::Fp { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(K::Fp { v: powmod(*v, p - 2, *p), p: *p })
                }
            }
        }
    }

    pub fn div(&self, o: &K) -> K {
        self.mul(&o.inv().expect("division by zero"))
    }

    /// Canonical text form used by the document format.
    pub fn render(&self) -> String {
        match self {
            K::Q(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            K::Fp { v, .. } => format!("{v}"),
        }
    }
}

impl fmt::Display for K {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_render() {
        let f = FieldSpec::Q;
        assert_eq!(f.parse("3/6").unwrap().render(), "1/2");
        assert_eq!(f.parse("-4/2").unwrap().render(), "-2");
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::Fp(7);
        let a = f.parse("5").unwrap();
        let b = f.parse("-1").unwrap();
        assert_eq!(a.add(&b).render(), "4");
        assert_eq!(a.mul(&b).render(), "2");
        assert!(a.inv().unwrap().mul(&a).is_one());
    }

    #[test]
    fn primality_gate() {
        assert!(FieldSpec::Fp(2).is_valid());
        assert!(FieldSpec::Fp(31).is_valid());
        assert!(!FieldSpec::Fp(1).is_valid());
        assert!(!FieldSpec::Fp(57).is_valid());
    }
}
