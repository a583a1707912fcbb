//! Vertical decomposition of a segment arrangement.
//!
//! Every x-coordinate where a segment starts, ends or meets another segment
//! cuts the plane into slabs. Inside an open slab no two segments cross, so
//! the segments spanning it are totally ordered by height and consecutive
//! ones bound a trapezoid that meets no segment. Each face of the arrangement
//! is a union of such trapezoids, so any property that is constant on faces
//! can be read off one sample point per trapezoid.

use alloc::vec::Vec;

use crate::point::{q, segment_intersection, Rational2, Q};

/// An open trapezoid of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Exact interior point: the midpoint of the trapezoid's vertical midline.
    pub sample: Rational2,
    pub area: Q,
    pub x_range: (Q, Q),
}

struct Edge {
    left: Rational2,
    slope: Q,
    x_max: Q,
}

impl Edge {
    fn y_at(&self, x: &Q) -> Q {
        &self.left.y + (x - &self.left.x) * &self.slope
    }
}

fn x_span(a: &Rational2, b: &Rational2) -> (Q, Q) {
    if a.x <= b.x {
        (a.x.clone(), b.x.clone())
    } else {
        (b.x.clone(), a.x.clone())
    }
}

fn y_span(a: &Rational2, b: &Rational2) -> (Q, Q) {
    if a.y <= b.y {
        (a.y.clone(), b.y.clone())
    } else {
        (b.y.clone(), a.y.clone())
    }
}

/// Event x-coordinates inside `[x_lo, x_hi]`, sorted and deduplicated.
pub fn event_abscissae(segments: &[(Rational2, Rational2)], x_lo: &Q, x_hi: &Q) -> Vec<Q> {
    let in_window = |x: &Q| x_lo <= x && x <= x_hi;
    let mut xs: Vec<Q> = alloc::vec![x_lo.clone(), x_hi.clone()];
    for (a, b) in segments {
        for p in [a, b] {
            if in_window(&p.x) {
                xs.push(p.x.clone());
            }
        }
    }
    // Sweep in order of left end so that only x-overlapping pairs are tested.
    let mut order: Vec<(Q, Q, Q, Q, usize)> = segments
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let (xl, xr) = x_span(a, b);
            let (yl, yr) = y_span(a, b);
            (xl, xr, yl, yr, i)
        })
        .collect();
    order.sort();
    for (i, (_, xr_i, yl_i, yr_i, si)) in order.iter().enumerate() {
        for (xl_j, _, yl_j, yr_j, sj) in &order[i + 1..] {
            if xl_j > xr_i {
                break;
            }
            if yl_j > yr_i || yl_i > yr_j {
                continue;
            }
            let (a, b) = &segments[*si];
            let (c, d) = &segments[*sj];
            if let Some(p) = segment_intersection(a, b, c, d) {
                if in_window(&p.x) {
                    xs.push(p.x);
                }
            }
        }
    }
    xs.sort();
    xs.dedup();
    xs
}

/// Bounded trapezoids of the arrangement whose x-extent lies in `[x_lo, x_hi]`.
///
/// Unbounded regions above the top segment and below the bottom segment of a
/// slab are not reported.
pub fn vertical_cells(segments: &[(Rational2, Rational2)], x_lo: &Q, x_hi: &Q) -> Vec<Cell> {
    let xs = event_abscissae(segments, x_lo, x_hi);
    let mut edges: Vec<Edge> = segments
        .iter()
        .filter(|(a, b)| a.x != b.x)
        .map(|(a, b)| {
            let (left, right) = if a.x < b.x { (a, b) } else { (b, a) };
            let slope = (&right.y - &left.y) / (&right.x - &left.x);
            Edge { left: left.clone(), slope, x_max: right.x.clone() }
        })
        .collect();
    edges.sort_by(|a, b| a.left.x.cmp(&b.left.x));

    let half = q(1, 2);
    let mut cells = Vec::new();
    let mut next = 0;
    let mut live: Vec<usize> = Vec::new();
    for w in xs.windows(2) {
        let (xa, xb) = (&w[0], &w[1]);
        let xm = (xa + xb) * &half;
        while next < edges.len() && edges[next].left.x <= *xa {
            live.push(next);
            next += 1;
        }
        // Endpoints are events, so an edge reaching past xa spans the slab.
        live.retain(|&i| edges[i].x_max > *xa);
        let mut active: Vec<(Q, Q, Q)> = live
            .iter()
            .map(|&i| {
                let e = &edges[i];
                (e.y_at(&xm), e.y_at(xa), e.y_at(xb))
            })
            .collect();
        active.sort();
        // Equal midline heights mean overlapping collinear segments.
        active.dedup_by(|a, b| a.0 == b.0);
        let width = xb - xa;
        for pair in active.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            let area = (&hi.1 - &lo.1 + &hi.2 - &lo.2) * &width * &half;
            cells.push(Cell {
                sample: Rational2::new(xm.clone(), (&lo.0 + &hi.0) * &half),
                area,
                x_range: (xa.clone(), xb.clone()),
            });
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::qi;
    use alloc::vec;

    fn seg(a: (i64, i64), b: (i64, i64)) -> (Rational2, Rational2) {
        (Rational2::from_ints(a.0, a.1), Rational2::from_ints(b.0, b.1))
    }

    #[test]
    fn square_with_diagonals() {
        let segs = vec![
            seg((0, 0), (2, 0)),
            seg((2, 0), (2, 2)),
            seg((2, 2), (0, 2)),
            seg((0, 2), (0, 0)),
            seg((0, 0), (2, 2)),
            seg((0, 2), (2, 0)),
        ];
        let xs = event_abscissae(&segs, &qi(0), &qi(2));
        assert_eq!(xs, vec![qi(0), qi(1), qi(2)]);
        let cells = vertical_cells(&segs, &qi(0), &qi(2));
        assert_eq!(cells.len(), 6);
        let total: Q = cells.iter().map(|c| c.area.clone()).sum();
        assert_eq!(total, qi(4));
    }

    #[test]
    fn overlapping_collinear_segments_collapse() {
        let segs = vec![seg((0, 0), (4, 0)), seg((1, 0), (3, 0)), seg((0, 1), (4, 1))];
        let cells = vertical_cells(&segs, &qi(0), &qi(4));
        assert_eq!(cells.len(), 3);
        assert!(cells.iter().all(|c| c.sample.y == q(1, 2)));
    }
}
