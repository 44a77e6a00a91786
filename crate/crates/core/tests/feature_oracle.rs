//! Exhaustive comparison of the profile code against a slow per-slice
//! reference on every figure of 2 to 6 pixels in a 4x4 grid.

use geomint_core::features::{self_symmetry, Axis, Feature, FeatureProfiles, Profile};
use geomint_core::{profile_difference, PointSet};

const GRID: i64 = 4;

/// Figures as lists of `(x, y)` cells in row-major order.
fn figures(min: usize, max: usize) -> Vec<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (GRID * GRID)) {
        let n = mask.count_ones() as usize;
        if n < min || n > max {
            continue;
        }
        let cells = (0..GRID * GRID)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| (i % GRID, i / GRID))
            .collect();
        out.push(cells);
    }
    out
}

/// `(along, across)` for each cell, keeping cell order.
fn coords(cells: &[(i64, i64)], axis: Axis) -> Vec<(i64, f64)> {
    cells
        .iter()
        .map(|&(x, y)| match axis {
            Axis::Vertical => (y, x as f64),
            Axis::Horizontal => (x, y as f64),
        })
        .collect()
}

fn oracle_profile(cells: &[(i64, i64)], axis: Axis, feature: Feature) -> Vec<(i64, f64)> {
    let pts = coords(cells, axis);
    let lo = pts.iter().map(|p| p.0).min().unwrap().min(0);
    let hi = pts.iter().map(|p| p.0).max().unwrap().max(0);
    (lo..=hi)
        .map(|bin| {
            let slice: Vec<f64> = pts.iter().filter(|p| p.0 == bin).map(|p| p.1).collect();
            if slice.is_empty() {
                return (bin, 0.0);
            }
            let n = slice.len() as f64;
            let mut sum = 0.0;
            for v in &slice {
                sum += v;
            }
            let mean = sum / n;
            let value = match feature {
                Feature::CenterShift => mean,
                Feature::Area => n,
                Feature::Spread => {
                    let mut ss = 0.0;
                    for v in &slice {
                        ss += (v - mean) * (v - mean);
                    }
                    (ss / n).sqrt()
                }
            };
            (bin, value)
        })
        .collect()
}

fn oracle_get(p: &[(i64, f64)], bin: i64) -> f64 {
    p.iter().find(|e| e.0 == bin).map_or(0.0, |e| e.1)
}

fn oracle_diff(p: &[(i64, f64)], q: &[(i64, f64)]) -> f64 {
    let lo = p[0].0.min(q[0].0);
    let hi = p.last().unwrap().0.max(q.last().unwrap().0);
    let mut total = 0.0;
    for bin in lo..=hi {
        total += (oracle_get(p, bin) - oracle_get(q, bin)).abs();
    }
    total
}

fn oracle_self(v: &[(i64, f64)], h: &[(i64, f64)]) -> Vec<(i64, f64)> {
    let lo = v[0].0.min(h[0].0);
    let hi = v.last().unwrap().0.max(h.last().unwrap().0);
    (lo..=hi)
        .map(|b| (b, oracle_get(v, b) - oracle_get(h, b)))
        .collect()
}

fn bits(p: &Profile) -> Vec<(i64, u64)> {
    p.bins().map(|(b, v)| (b, v.to_bits())).collect()
}

fn oracle_bits(p: &[(i64, f64)]) -> Vec<(i64, u64)> {
    p.iter().map(|&(b, v)| (b, v.to_bits())).collect()
}

fn point_set(cells: &[(i64, i64)]) -> PointSet {
    PointSet::from_coords(cells.iter().map(|&(x, y)| (x as f64, y as f64)))
}

fn profile_of(fp: &FeatureProfiles, feature: Feature, axis: Axis) -> &Profile {
    fp.base(feature, axis)
}

#[test]
fn profiles_match_oracle_bit_for_bit() {
    let all = figures(2, 6);
    assert_eq!(all.len(), 120 + 560 + 1820 + 4368 + 8008);
    let mut previous: Option<(Vec<(i64, i64)>, FeatureProfiles)> = None;
    for cells in &all {
        let fp = FeatureProfiles::extract(&point_set(cells));
        for feature in Feature::ALL {
            let v = oracle_profile(cells, Axis::Vertical, feature);
            let h = oracle_profile(cells, Axis::Horizontal, feature);
            assert_eq!(
                bits(profile_of(&fp, feature, Axis::Vertical)),
                oracle_bits(&v),
                "{cells:?} {feature:?} v"
            );
            assert_eq!(
                bits(profile_of(&fp, feature, Axis::Horizontal)),
                oracle_bits(&h),
                "{cells:?} {feature:?} h"
            );
            let s = oracle_self(&v, &h);
            assert_eq!(
                bits(fp.self_profile(feature)),
                oracle_bits(&s),
                "{cells:?} {feature:?} self"
            );
            assert_eq!(
                self_symmetry(
                    profile_of(&fp, feature, Axis::Vertical),
                    profile_of(&fp, feature, Axis::Horizontal)
                ),
                *fp.self_profile(feature)
            );

            if let Some((prev_cells, prev)) = &previous {
                for axis in Axis::BOTH {
                    let ours = profile_difference(
                        profile_of(&fp, feature, axis),
                        profile_of(prev, feature, axis),
                    );
                    let theirs = oracle_diff(
                        &oracle_profile(cells, axis, feature),
                        &oracle_profile(prev_cells, axis, feature),
                    );
                    assert_eq!(
                        ours.to_bits(),
                        theirs.to_bits(),
                        "{cells:?} vs {prev_cells:?}"
                    );
                }
                let ours = profile_difference(fp.self_profile(feature), prev.self_profile(feature));
                let prev_s = oracle_self(
                    &oracle_profile(prev_cells, Axis::Vertical, feature),
                    &oracle_profile(prev_cells, Axis::Horizontal, feature),
                );
                assert_eq!(ours.to_bits(), oracle_diff(&s, &prev_s).to_bits());
            }
        }
        previous = Some((cells.clone(), fp));
    }
}

#[test]
fn shifted_grid_uses_rounded_bins() {
    // Half-integer coordinates land in the bin above.
    let ps = PointSet::from_coords([(0.5, -0.5), (1.5, -0.5), (1.0, 1.49)]);
    let fp = FeatureProfiles::extract(&ps);
    let area_v: Vec<_> = fp.area_v.bins().collect();
    assert_eq!(area_v, vec![(0, 2.0), (1, 1.0)]);
    let area_h: Vec<_> = fp.area_h.bins().collect();
    assert_eq!(area_h, vec![(0, 0.0), (1, 2.0), (2, 1.0)]);
}
