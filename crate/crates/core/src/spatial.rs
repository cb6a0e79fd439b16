use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::geometry::{Aabb, Point};

/// Uniform bucket grid over point ids.
#[derive(Debug, Clone)]
pub(crate) struct BucketGrid {
    cell: f64,
    buckets: BTreeMap<(i64, i64), Vec<usize>>,
}

impl BucketGrid {
    pub(crate) fn new(cell: f64) -> Self {
        debug_assert!(cell > 0.0);
        BucketGrid {
            cell,
            buckets: BTreeMap::new(),
        }
    }

    fn key(&self, p: Point) -> (i64, i64) {
        (
            libm::floor(p.x / self.cell) as i64,
            libm::floor(p.y / self.cell) as i64,
        )
    }

    pub(crate) fn insert(&mut self, id: usize, p: Point) {
        let k = self.key(p);
        self.buckets.entry(k).or_default().push(id);
    }

    /// Ids in every bucket overlapping `area`; a superset of the points
    /// inside it.
    pub(crate) fn query(&self, area: &Aabb) -> Vec<usize> {
        let (x0, y0) = self.key(area.min);
        let (x1, y1) = self.key(area.max);
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                if let Some(b) = self.buckets.get(&(x, y)) {
                    out.extend_from_slice(b);
                }
            }
        }
        out
    }

    pub(crate) fn query_radius(&self, p: Point, r: f64) -> Vec<usize> {
        self.query(&Aabb { min: p, max: p }.expanded(r))
    }
}
