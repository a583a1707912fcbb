//! Ear-clipping triangulation and convex-window clipping, both exact.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::geometry::SimplePolygon;
use crate::point::{orient, q, Rational2, Q};

pub type Triangle = [Rational2; 3];

fn in_closed_triangle(t: &Triangle, p: &Rational2) -> bool {
    let o = [orient(&t[0], &t[1], p), orient(&t[1], &t[2], p), orient(&t[2], &t[0], p)];
    o.iter().all(|s| *s != Ordering::Less)
}

/// Counter-clockwise triangles covering the polygon.
pub fn ear_clip(poly: &SimplePolygon) -> Vec<Triangle> {
    let mut idx: Vec<usize> = (0..poly.len()).collect();
    let v = poly.vertices();
    let mut out = Vec::with_capacity(v.len().saturating_sub(2));
    while idx.len() > 3 {
        let n = idx.len();
        let ear = (0..n).find(|&i| {
            let (p, c, nx) = (idx[(i + n - 1) % n], idx[i], idx[(i + 1) % n]);
            if orient(&v[p], &v[c], &v[nx]) != Ordering::Greater {
                return false;
            }
            let tri = [v[p].clone(), v[c].clone(), v[nx].clone()];
            idx.iter().filter(|&&k| k != p && k != c && k != nx).all(|&k| !in_closed_triangle(&tri, &v[k]))
        });
        let i = ear.expect("a simple polygon always has an ear");
        let (p, c, nx) = (idx[(i + n - 1) % n], idx[i], idx[(i + 1) % n]);
        out.push([v[p].clone(), v[c].clone(), v[nx].clone()]);
        idx.remove(i);
    }
    out.push([v[idx[0]].clone(), v[idx[1]].clone(), v[idx[2]].clone()]);
    out
}

/// Sutherland-Hodgman clip of a convex polygon against a convex
/// counter-clockwise window.
pub fn clip_convex(subject: &[Rational2], window: &[Rational2]) -> Vec<Rational2> {
    let mut output: Vec<Rational2> = subject.to_vec();
    let m = window.len();
    for i in 0..m {
        if output.is_empty() {
            break;
        }
        let (a, b) = (&window[i], &window[(i + 1) % m]);
        let input = core::mem::take(&mut output);
        let n = input.len();
        for j in 0..n {
            let cur = &input[j];
            let prev = &input[(j + n - 1) % n];
            let cur_in = orient(a, b, cur) != Ordering::Less;
            let prev_in = orient(a, b, prev) != Ordering::Less;
            if cur_in != prev_in {
                output.push(line_cut(a, b, prev, cur));
            }
            if cur_in {
                output.push(cur.clone());
            }
        }
    }
    output
}

/// Part of the segment `[p, c]` inside a convex counter-clockwise window, or
/// `None` when that part is empty or a single point.
pub fn clip_segment(p: &Rational2, c: &Rational2, window: &[Rational2]) -> Option<(Rational2, Rational2)> {
    let d = c - p;
    let (mut t0, mut t1) = (Q::zero(), Q::one());
    let m = window.len();
    for i in 0..m {
        let (a, b) = (&window[i], &window[(i + 1) % m]);
        let dir = b - a;
        let f0 = dir.cross(&(p - a));
        let fd = dir.cross(&d);
        if fd.is_zero() {
            if f0.is_negative() {
                return None;
            }
            continue;
        }
        let t = -(&f0 / &fd);
        if fd.is_positive() {
            if t > t0 {
                t0 = t;
            }
        } else if t < t1 {
            t1 = t;
        }
        if t0 >= t1 {
            return None;
        }
    }
    Some((p + &d.scale(&t0), p + &d.scale(&t1)))
}

/// Point where segment `[p, c]` meets the line through `a`, `b`.
fn line_cut(a: &Rational2, b: &Rational2, p: &Rational2, c: &Rational2) -> Rational2 {
    let dir = b - a;
    let dp = dir.cross(&(p - a));
    let dc = dir.cross(&(c - a));
    let t = &dp / (&dp - &dc);
    p + &(c - p).scale(&t)
}

/// Shoelace area of a vertex list, non-negative for counter-clockwise input.
pub fn polygon_area(v: &[Rational2]) -> Q {
    let n = v.len();
    let mut s = Q::zero();
    for i in 0..n {
        s += v[i].cross(&v[(i + 1) % n]);
    }
    s * q(1, 2)
}
