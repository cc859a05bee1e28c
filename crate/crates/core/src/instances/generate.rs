//! Seeded random instances.
//!
//! Sets are placed on a jittered grid. Each one is the convex hull of `k`
//! lattice points (spacing 1/8) drawn from an annulus around its cell's
//! jittered centre; draws whose hull loses a point are rejected. All
//! arithmetic is integer, so output bytes depend only on the seed and
//! parameters.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Instance;
use crate::error::{Error, Result};
use crate::geometry::{
    interiors_intersect, polygon_in_closed_halfplane, rat, ratio, ConvexPolygon, HalfPlane, Point2,
    Rational,
};

/// Lattice points per unit.
const UNIT: i64 = 8;
const DRAWS_PER_SET: usize = 2000;
const RETRIES_PER_SET: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub k_min: usize,
    pub k_max: usize,
    /// Width of a grid cell.
    pub spread: i64,
    /// Minimum distance between sets; zero allows touching.
    pub min_gap: Rational,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self { k_min: 3, k_max: 6, spread: 40, min_gap: rat(1) }
    }
}

impl GeneratorParams {
    pub fn squares_only() -> Self {
        Self { k_min: 4, k_max: 4, ..Self::default() }
    }

    fn check(&self) -> Result<()> {
        if self.k_min < 3 || self.k_min > self.k_max || self.k_max > 16 {
            return Err(Error::InvalidInput(format!(
                "side counts must satisfy 3 <= k_min <= k_max <= 16, got {}..{}",
                self.k_min, self.k_max
            )));
        }
        if self.spread <= 0 || self.spread > 1 << 20 {
            return Err(Error::InvalidInput(format!("spread {} out of range", self.spread)));
        }
        if self.min_gap < rat(0) {
            return Err(Error::InvalidInput("min_gap must be non-negative".into()));
        }
        Ok(())
    }
}

/// Strict convex hull of integer points, CCW (Andrew's monotone chain).
fn hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// `true` when some side line of `p` or `q` has the other polygon at
/// distance at least `gap` beyond it. This underestimates the true distance,
/// so it never accepts a pair that is too close.
fn gap_at_least(p: &ConvexPolygon, q: &ConvexPolygon, gap: &Rational) -> bool {
    if *gap == rat(0) {
        return !interiors_intersect(p, q);
    }
    let gap2 = gap * gap;
    let apart = |owner: &ConvexPolygon, other: &ConvexPolygon| {
        (0..owner.len()).any(|k| {
            let h: HalfPlane = owner.outer_halfplane(k);
            if !polygon_in_closed_halfplane(other, &h) {
                return false;
            }
            let l = &h.line;
            let norm2 = Rational::from_integer(l.a() * l.a() + l.b() * l.b());
            other.vertices().iter().all(|v| {
                let d = l.eval(v);
                &d * &d >= &gap2 * &norm2
            })
        })
    };
    apart(p, q) || apart(q, p)
}

struct Layout {
    cols: i64,
    cell: i64,
    radius: i64,
    jitter: i64,
}

impl Layout {
    fn new(n: usize, params: &GeneratorParams) -> Result<Self> {
        let cols = (1..).find(|c: &i64| c * c >= n as i64).expect("n is finite");
        let cell = params.spread * UNIT;
        // keep each set within its cell, min_gap / 2 away from the border
        let margin = (&params.min_gap * rat(UNIT) / rat(2)).ceil().to_integer();
        let margin = i64::try_from(margin).map_err(|_| Error::GenerationFailed("min_gap too large".into()))?;
        let avail = cell / 2 - margin;
        let radius = avail * 3 / 4;
        if radius < 4 {
            return Err(Error::GenerationFailed(format!(
                "spread {} leaves no room for sets with min_gap {}",
                params.spread, params.min_gap
            )));
        }
        Ok(Self { cols, cell, radius, jitter: avail - radius })
    }

    fn centre(&self, k: usize, rng: &mut ChaCha8Rng) -> (i64, i64) {
        let (col, row) = (k as i64 % self.cols, k as i64 / self.cols);
        let j = self.jitter;
        (
            col * self.cell + self.cell / 2 + rng.gen_range(-j..=j),
            row * self.cell + self.cell / 2 + rng.gen_range(-j..=j),
        )
    }

    fn draw_set(&self, k: usize, params: &GeneratorParams, rng: &mut ChaCha8Rng) -> Option<ConvexPolygon> {
        let c = self.centre(k, rng);
        let r = self.radius;
        let inner = r * 3 / 4;
        let sides = rng.gen_range(params.k_min..=params.k_max);
        for _ in 0..DRAWS_PER_SET {
            let mut pts = Vec::with_capacity(sides);
            while pts.len() < sides {
                let (x, y) = (rng.gen_range(-r..=r), rng.gen_range(-r..=r));
                let d2 = x * x + y * y;
                if d2 <= r * r && d2 >= inner * inner {
                    pts.push((c.0 + x, c.1 + y));
                }
            }
            let h = hull(pts);
            if h.len() == sides {
                let vs = h.into_iter().map(|(x, y)| Point2::new(ratio(x, UNIT), ratio(y, UNIT))).collect();
                return ConvexPolygon::new(vs).ok();
            }
        }
        None
    }
}

/// `n` pairwise disjoint strictly convex polygons, deterministic in `seed`.
pub fn random_disjoint_polygons(n: usize, seed: u64, params: &GeneratorParams) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    params.check()?;
    let layout = Layout::new(n, params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets: Vec<ConvexPolygon> = Vec::with_capacity(n);
    for k in 0..n {
        let accepted = (0..RETRIES_PER_SET).find_map(|_| {
            let p = layout.draw_set(k, params, &mut rng)?;
            sets.iter().all(|q| gap_at_least(&p, q, &params.min_gap)).then_some(p)
        });
        match accepted {
            Some(p) => sets.push(p),
            None => {
                return Err(Error::GenerationFailed(format!(
                    "could not place set {} after {RETRIES_PER_SET} attempts",
                    k + 1
                )))
            }
        }
    }
    Ok(Instance::new(format!("random n={n} seed={seed}"), Some(seed), sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{serialize_instance, validate_instance};

    #[test]
    fn deterministic_bytes() {
        let p = GeneratorParams::squares_only();
        let a = random_disjoint_polygons(3, 7, &p).unwrap();
        let b = random_disjoint_polygons(3, 7, &p).unwrap();
        assert_eq!(serialize_instance(&a), serialize_instance(&b));
        assert!(a.sets.iter().all(|s| s.len() == 4));
        let c = random_disjoint_polygons(3, 8, &p).unwrap();
        assert_ne!(serialize_instance(&a), serialize_instance(&c));
    }

    #[test]
    fn forty_sets_validate() {
        let inst = random_disjoint_polygons(40, 1, &GeneratorParams::default()).unwrap();
        assert_eq!(inst.len(), 40);
        assert!(validate_instance(&inst).passed());
        for s in &inst.sets {
            assert!((3..=6).contains(&s.len()));
        }
    }

    #[test]
    fn single_set() {
        let inst = random_disjoint_polygons(1, 0, &GeneratorParams::default()).unwrap();
        assert_eq!(inst.len(), 1);
        assert!(validate_instance(&inst).passed());
    }

    #[test]
    fn gaps_are_respected() {
        let p = GeneratorParams { min_gap: rat(5), ..GeneratorParams::default() };
        let inst = random_disjoint_polygons(9, 3, &p).unwrap();
        for i in 0..9 {
            for j in i + 1..9 {
                assert!(gap_at_least(&inst.sets[i], &inst.sets[j], &rat(5)));
            }
        }
    }

    #[test]
    fn overcrowded_parameters_fail() {
        let p = GeneratorParams { spread: 2, min_gap: rat(1), ..GeneratorParams::default() };
        assert!(matches!(random_disjoint_polygons(4, 0, &p), Err(Error::GenerationFailed(_))));
        assert!(matches!(random_disjoint_polygons(0, 0, &GeneratorParams::default()), Err(Error::InvalidInput(_))));
        let bad = GeneratorParams { k_min: 2, ..GeneratorParams::default() };
        assert!(random_disjoint_polygons(2, 0, &bad).is_err());
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let h = hull(vec![(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1)]);
        assert_eq!(h, vec![(0, 0), (2, 0), (2, 2), (0, 2)]);
    }

    #[test]
    fn gap_check_is_exact_at_the_boundary() {
        let a = ConvexPolygon::from_i64(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let b = ConvexPolygon::from_i64(&[(3, 0), (4, 0), (4, 1), (3, 1)]).unwrap();
        assert!(gap_at_least(&a, &b, &rat(2)));
        assert!(!gap_at_least(&a, &b, &ratio(201, 100)));
    }
}
