//! Exact rational points and vectors in the plane.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used for every coordinate in the crate.
pub type Q = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// A point or vector with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Rational2 {
    pub x: Q,
    pub y: Q,
}

impl Rational2 {
    pub fn new(x: Q, y: Q) -> Self {
        Rational2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Rational2::new(qi(x), qi(y))
    }

    pub fn zero() -> Self {
        Rational2::new(Q::zero(), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, s: &Q) -> Self {
        Rational2::new(&self.x * s, &self.y * s)
    }

    pub fn dot(&self, other: &Rational2) -> Q {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of the planar cross product.
    pub fn cross(&self, other: &Rational2) -> Q {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Counter-clockwise rotation by a right angle.
    pub fn perp(&self) -> Self {
        Rational2::new(-&self.y, self.x.clone())
    }

    pub fn norm_sq(&self) -> Q {
        self.dot(self)
    }

    pub fn midpoint(&self, other: &Rational2) -> Self {
        let half = q(1, 2);
        Rational2::new((&self.x + &other.x) * &half, (&self.y + &other.y) * &half)
    }

    /// True when `(x > 0) or (x == 0 and y > 0)`.
    pub fn has_canonical_sign(&self) -> bool {
        self.x.is_positive() || (self.x.is_zero() && self.y.is_positive())
    }

    /// The vector or its negation, whichever has canonical sign.
    pub fn canonical_sign(&self) -> Self {
        if self.has_canonical_sign() || self.is_zero() {
            self.clone()
        } else {
            -self
        }
    }

    pub fn is_parallel(&self, other: &Rational2) -> bool {
        self.cross(other).is_zero()
    }

    /// Both coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl fmt::Display for Rational2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Add<&'a Rational2> for &'a Rational2 {
    type Output = Rational2;
    fn add(self, rhs: &'a Rational2) -> Rational2 {
        Rational2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Add for Rational2 {
    type Output = Rational2;
    fn add(self, rhs: Rational2) -> Rational2 {
        Rational2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<'a> Sub<&'a Rational2> for &'a Rational2 {
    type Output = Rational2;
    fn sub(self, rhs: &'a Rational2) -> Rational2 {
        Rational2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Sub for Rational2 {
    type Output = Rational2;
    fn sub(self, rhs: Rational2) -> Rational2 {
        Rational2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for &Rational2 {
    type Output = Rational2;
    fn neg(self) -> Rational2 {
        Rational2::new(-&self.x, -&self.y)
    }
}

impl Neg for Rational2 {
    type Output = Rational2;
    fn neg(self) -> Rational2 {
        Rational2::new(-self.x, -self.y)
    }
}

/// Sign of the turn `a -> b -> c`: positive for a left turn.
pub fn orient(a: &Rational2, b: &Rational2, c: &Rational2) -> Ordering {
    // Cross-multiplied over the (positive) denominators: no gcd reductions,
    // which dominate the cost of rational subtraction.
    let diff = |p: &Q, q: &Q| (p.numer() * q.denom() - q.numer() * p.denom(), p.denom() * q.denom());
    let (ux, uxd) = diff(&b.x, &a.x);
    let (uy, uyd) = diff(&b.y, &a.y);
    let (vx, vxd) = diff(&c.x, &a.x);
    let (vy, vyd) = diff(&c.y, &a.y);
    (ux * vy * uyd * vxd).cmp(&(uy * vx * uxd * vyd))
}

/// Closed bounding-box test; on its own it does not imply collinearity.
pub(crate) fn within_box(a: &Rational2, b: &Rational2, p: &Rational2) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    *xlo <= p.x && p.x <= *xhi && *ylo <= p.y && p.y <= *yhi
}

/// `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: &Rational2, b: &Rational2, p: &Rational2) -> bool {
    within_box(a, b, p) && orient(a, b, p) == Ordering::Equal
}

/// Whether closed segments `[a, b]` and `[c, d]` share at least one point.
pub fn segments_touch(a: &Rational2, b: &Rational2, c: &Rational2, d: &Rational2) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Intersection point of two non-parallel segments, if it lies on both.
pub fn segment_intersection(a: &Rational2, b: &Rational2, c: &Rational2, d: &Rational2) -> Option<Rational2> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(&s);
    if denom.is_zero() {
        return None;
    }
    let ac = c - a;
    let t = ac.cross(&s) / &denom;
    let u = ac.cross(&r) / &denom;
    let unit = Q::one();
    if t.is_negative() || t > unit || u.is_negative() || u > unit {
        return None;
    }
    Some(a + &r.scale(&t))
}

/// The rational with the smallest denominator (then smallest magnitude) inside an
/// interval. `None` bounds are infinite; the flags mark closed ends.
pub fn simplest_between(lo: Option<(&Q, bool)>, hi: Option<(&Q, bool)>) -> Option<Q> {
    let above_lo = |v: &Q| match lo {
        None => true,
        Some((l, closed)) => v > l || (closed && v == l),
    };
    let below_hi = |v: &Q| match hi {
        None => true,
        Some((h, closed)) => v < h || (closed && v == h),
    };
    if let (Some((l, lc)), Some((h, hc))) = (lo, hi) {
        if l > h || (l == h && !(lc && hc)) {
            return None;
        }
    }
    let zero = Q::zero();
    if above_lo(&zero) && below_hi(&zero) {
        return Some(zero);
    }
    // The interval lies strictly on one side of zero; mirror negatives.
    let negative = match hi {
        Some((h, _)) => !h.is_positive(),
        None => false,
    };
    if negative {
        let nlo = hi.map(|(h, c)| (-h, c));
        let nhi = lo.map(|(l, c)| (-l, c));
        return simplest_positive(
            nlo.as_ref().map(|(v, c)| (v, *c)).expect("bounded above"),
            nhi.as_ref().map(|(v, c)| (v, *c)),
        )
        .map(|v| -v);
    }
    simplest_positive(lo.expect("bounded below"), hi)
}

/// Simplest rational in an interval with a non-negative lower end.
fn simplest_positive(lo: (&Q, bool), hi: Option<(&Q, bool)>) -> Option<Q> {
    let (l, lc) = lo;
    let mut cand = l.ceil();
    if cand == *l && !lc {
        cand += Q::one();
    }
    let fits = match hi {
        None => true,
        Some((h, hc)) => cand < *h || (hc && cand == *h),
    };
    if fits {
        return Some(cand);
    }
    // No integer inside: lo and hi share the integer part `fl`.
    let fl = l.floor();
    let (h, hc) = hi.expect("bounded interval");
    let l_frac = l - &fl;
    let h_frac = h - &fl;
    // x = fl + 1/y with y in (1/h_frac, 1/l_frac); closedness swaps ends.
    let new_lo = h_frac.recip();
    let new_hi = if l_frac.is_zero() { None } else { Some(l_frac.recip()) };
    let y = simplest_positive((&new_lo, hc), new_hi.as_ref().map(|v| (v, lc)))?;
    Some(fl + y.recip())
}
