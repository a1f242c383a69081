//! Arbitrary-precision scalar helpers shared across the workspace.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Render as "p/q", or plain "p" when the denominator is 1.
pub fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p/q" or "p".
pub fn rat_parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn rat_ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn idot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

/// Pair an integer functional with a rational point.
pub fn mixed_dot(a: &[Int], x: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), x.len());
    a.iter()
        .zip(x)
        .fold(Rat::zero(), |acc, (c, v)| acc + Rat::from_integer(c.clone()) * v)
}

pub fn int_to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Scale a rational vector to the primitive integer vector pointing the same way.
/// The zero vector maps to zeros.
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let lr = Rat::from_integer(l);
    let ints: Vec<Int> = v.iter().map(|x| (x * &lr).to_integer()).collect();
    primitive_int(&ints)
}

/// Divide an integer vector by the gcd of its entries (zero vector unchanged).
pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn neg_vec(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x.clone()).collect()
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}
