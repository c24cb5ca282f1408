//! Exact rational points and segment predicates.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A point (or vector) in 3-space with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(pub [BigRational; 3]);

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        RationalPoint([x, y, z])
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        RationalPoint([r(x), r(y), r(z)])
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, o: &RationalPoint) -> BigRational {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub fn cross(&self, o: &RationalPoint) -> RationalPoint {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &o.0;
        RationalPoint([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn scale(&self, k: &BigRational) -> RationalPoint {
        RationalPoint(self.0.clone().map(|c| c * k))
    }

    /// `self + t (to - self)`.
    pub fn lerp(&self, to: &RationalPoint, t: &BigRational) -> RationalPoint {
        self + &(to - self).scale(t)
    }

    /// Approximate coordinates for display.
    pub fn to_f64(&self) -> [f64; 3] {
        self.0.clone().map(|c| ratio_to_f64(&c))
    }

    /// Coordinates as `p/q` (or integer) strings.
    pub fn to_strings(&self) -> [String; 3] {
        self.0.clone().map(|c| c.to_string())
    }

    pub fn parse(coords: &[impl AsRef<str>]) -> Result<Self, String> {
        if coords.len() != 3 {
            return Err(format!("expected 3 coordinates, found {}", coords.len()));
        }
        let one = |s: &str| {
            let s = s.trim();
            BigRational::from_str(s).map_err(|_| format!("`{s}` is not a rational number"))
        };
        Ok(RationalPoint([
            one(coords[0].as_ref())?,
            one(coords[1].as_ref())?,
            one(coords[2].as_ref())?,
        ]))
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl<'a> Add for &'a RationalPoint {
    type Output = RationalPoint;
    fn add(self, o: &'a RationalPoint) -> RationalPoint {
        RationalPoint([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

impl<'a> Sub for &'a RationalPoint {
    type Output = RationalPoint;
    fn sub(self, o: &'a RationalPoint) -> RationalPoint {
        RationalPoint([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }
}

impl<'a> Mul<&'a BigRational> for &'a RationalPoint {
    type Output = RationalPoint;
    fn mul(self, k: &'a BigRational) -> RationalPoint {
        self.scale(k)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        RationalPoint::parse(&raw).map_err(serde::de::Error::custom)
    }
}

/// How two closed segments meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Meet {
    Disjoint,
    Point(RationalPoint),
    Overlap,
}

fn in_unit(t: &BigRational) -> bool {
    !t.is_negative() && *t <= BigRational::from_integer(1.into())
}

/// Intersection of the closed segments `a0 a1` and `b0 b1`, both of
/// positive length.
pub(crate) fn segment_meet(
    a0: &RationalPoint,
    a1: &RationalPoint,
    b0: &RationalPoint,
    b1: &RationalPoint,
) -> Meet {
    let da = a1 - a0;
    let db = b1 - b0;
    let r = b0 - a0;
    let n = da.cross(&db);
    if !n.is_zero() {
        if !r.dot(&n).is_zero() {
            return Meet::Disjoint;
        }
        let nn = n.dot(&n);
        let t = r.cross(&db).dot(&n) / &nn;
        let s = r.cross(&da).dot(&n) / &nn;
        return if in_unit(&t) && in_unit(&s) {
            Meet::Point(a0.lerp(a1, &t))
        } else {
            Meet::Disjoint
        };
    }
    if !r.cross(&da).is_zero() {
        return Meet::Disjoint;
    }
    // collinear: place b's endpoints on a's parameter line
    let dd = da.dot(&da);
    let t0 = r.dot(&da) / &dd;
    let t1 = (b1 - a0).dot(&da) / &dd;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    let lo = lo.max(zero);
    let hi = hi.min(one);
    match lo.cmp(&hi) {
        std::cmp::Ordering::Greater => Meet::Disjoint,
        std::cmp::Ordering::Equal => Meet::Point(a0.lerp(a1, &lo)),
        std::cmp::Ordering::Less => Meet::Overlap,
    }
}

/// Whether `p` lies on the closed segment `a b`.
pub(crate) fn on_segment(p: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> bool {
    let d = b - a;
    let r = p - a;
    if !r.cross(&d).is_zero() {
        return false;
    }
    let t = r.dot(&d);
    !t.is_negative() && t <= d.dot(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y, z)
    }

    #[test]
    fn skew_and_crossing() {
        assert_eq!(segment_meet(&p(0, 0, 0), &p(2, 0, 0), &p(1, -1, 1), &p(1, 1, 1)), Meet::Disjoint);
        assert_eq!(
            segment_meet(&p(0, 0, 0), &p(2, 0, 0), &p(1, -1, 0), &p(1, 1, 0)),
            Meet::Point(p(1, 0, 0))
        );
        assert_eq!(segment_meet(&p(0, 0, 0), &p(2, 0, 0), &p(3, -1, 0), &p(3, 1, 0)), Meet::Disjoint);
    }

    #[test]
    fn collinear_cases() {
        assert_eq!(segment_meet(&p(0, 0, 0), &p(2, 2, 2), &p(1, 1, 1), &p(5, 5, 5)), Meet::Overlap);
        assert_eq!(
            segment_meet(&p(0, 0, 0), &p(2, 2, 2), &p(2, 2, 2), &p(5, 5, 5)),
            Meet::Point(p(2, 2, 2))
        );
        assert_eq!(segment_meet(&p(0, 0, 0), &p(1, 1, 1), &p(2, 2, 2), &p(5, 5, 5)), Meet::Disjoint);
        assert_eq!(segment_meet(&p(0, 0, 0), &p(1, 0, 0), &p(0, 1, 0), &p(1, 1, 0)), Meet::Disjoint);
    }

    #[test]
    fn point_on_segment() {
        assert!(on_segment(&p(1, 1, 1), &p(0, 0, 0), &p(3, 3, 3)));
        assert!(on_segment(&p(3, 3, 3), &p(0, 0, 0), &p(3, 3, 3)));
        assert!(!on_segment(&p(4, 4, 4), &p(0, 0, 0), &p(3, 3, 3)));
        assert!(!on_segment(&p(1, 1, 0), &p(0, 0, 0), &p(3, 3, 3)));
    }

    #[test]
    fn parse_rationals() {
        let q = RationalPoint::parse(&["1/2", "-3", " 4/6 "]).unwrap();
        assert_eq!(q.to_strings(), ["1/2".to_string(), "-3".into(), "2/3".into()]);
        assert!(RationalPoint::parse(&["1/0", "0", "0"]).is_err());
        assert!(RationalPoint::parse(&["x", "0", "0"]).is_err());
        assert!(RationalPoint::parse(&["1", "0"]).is_err());
    }
}
