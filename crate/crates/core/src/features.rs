//! Slice-profile features.
//!
//! A figure is cut into unit-width slices perpendicular to an axis. Along
//! the vertical axis, slice `b` holds the points whose `y` rounds to `b`,
//! and the profile records something about their `x` values; the
//! horizontal axis swaps the roles. Three statistics are recorded per
//! slice:
//!
//! * center shift: mean cross-coordinate,
//! * area: number of points,
//! * spread: population standard deviation of the cross-coordinate.
//!
//! The self-symmetry profile of a feature is its vertical profile minus its
//! horizontal profile, bin by bin. Profiles of different extent are
//! compared by lining up the bin that contains coordinate 0 (the centroid
//! bin) and filling missing bins with 0.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    /// Slices are rows: grouped by `y`, measuring `x`.
    Vertical,
    /// Slices are columns: grouped by `x`, measuring `y`.
    Horizontal,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::Vertical, Axis::Horizontal];

    pub fn label(self) -> &'static str {
        match self {
            Axis::Vertical => "v",
            Axis::Horizontal => "h",
        }
    }
}

/// Slice index of a coordinate: nearest integer, halves rounded up.
pub fn bin_index(coord: f64) -> i64 {
    libm::floor(coord + 0.5) as i64
}

/// Groups cross-coordinates by slice, preserving point order within a slice.
pub fn slice_bins(points: &PointSet, axis: Axis) -> BTreeMap<i64, Vec<f64>> {
    let mut bins: BTreeMap<i64, Vec<f64>> = BTreeMap::new();
    for p in points {
        let (along, across) = match axis {
            Axis::Vertical => (p.y, p.x),
            Axis::Horizontal => (p.x, p.y),
        };
        bins.entry(bin_index(along)).or_default().push(across);
    }
    bins
}

/// A real-valued curve over integer slice bins.
///
/// `values[offset]` is bin 0. Bins outside the stored range read as 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    values: Vec<f64>,
    offset: usize,
}

impl Profile {
    /// Returns `None` unless `values` is nonempty and `offset` indexes it.
    pub fn new(values: Vec<f64>, offset: usize) -> Option<Self> {
        (offset < values.len()).then_some(Profile { values, offset })
    }

    /// A profile covering `first..=last` (widened to include bin 0) built
    /// from a per-bin function.
    fn spanning(first: i64, last: i64, mut value: impl FnMut(i64) -> f64) -> Self {
        let lo = first.min(0);
        let hi = last.max(0);
        let values = (lo..=hi).map(&mut value).collect();
        Profile {
            values,
            offset: (-lo) as usize,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn first_bin(&self) -> i64 {
        -(self.offset as i64)
    }

    pub fn last_bin(&self) -> i64 {
        self.values.len() as i64 - 1 - self.offset as i64
    }

    pub fn get(&self, bin: i64) -> f64 {
        let idx = bin + self.offset as i64;
        if idx < 0 {
            return 0.0;
        }
        self.values.get(idx as usize).copied().unwrap_or(0.0)
    }

    /// `(bin, value)` pairs in increasing bin order.
    pub fn bins(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let first = self.first_bin();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (first + i as i64, v))
    }
}

fn profile_from_slices(points: &PointSet, axis: Axis, stat: impl Fn(&[f64]) -> f64) -> Profile {
    let slices = slice_bins(points, axis);
    let (Some(&first), Some(&last)) = (slices.keys().next(), slices.keys().next_back()) else {
        return Profile {
            values: vec![0.0],
            offset: 0,
        };
    };
    Profile::spanning(first, last, |b| slices.get(&b).map_or(0.0, |s| stat(s)))
}

fn slice_mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn slice_std(xs: &[f64]) -> f64 {
    let mean = slice_mean(xs);
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / xs.len() as f64;
    libm::sqrt(var)
}

/// Mean cross-coordinate of each slice; empty slices read 0.
pub fn center_shift_profile(points: &PointSet, axis: Axis) -> Profile {
    profile_from_slices(points, axis, slice_mean)
}

/// Point count of each slice.
pub fn area_profile(points: &PointSet, axis: Axis) -> Profile {
    profile_from_slices(points, axis, |xs| xs.len() as f64)
}

/// Population standard deviation of each slice's cross-coordinates.
pub fn spread_profile(points: &PointSet, axis: Axis) -> Profile {
    profile_from_slices(points, axis, slice_std)
}

/// Vertical minus horizontal profile over the union of both domains.
pub fn self_symmetry(vertical: &Profile, horizontal: &Profile) -> Profile {
    let first = vertical.first_bin().min(horizontal.first_bin());
    let last = vertical.last_bin().max(horizontal.last_bin());
    Profile::spanning(first, last, |b| vertical.get(b) - horizontal.get(b))
}

/// Sum of absolute bin-wise differences over the union of both domains.
pub fn profile_difference(p: &Profile, q: &Profile) -> f64 {
    let first = p.first_bin().min(q.first_bin());
    let last = p.last_bin().max(q.last_bin());
    (first..=last)
        .map(|b| libm::fabs(p.get(b) - q.get(b)))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    CenterShift,
    Area,
    Spread,
}

impl Feature {
    pub const ALL: [Feature; 3] = [Feature::CenterShift, Feature::Area, Feature::Spread];

    pub fn name(self) -> &'static str {
        match self {
            Feature::CenterShift => "center_shift",
            Feature::Area => "area",
            Feature::Spread => "spread",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Base,
    SelfSymmetry,
}

/// All nine profiles of one aligned figure.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureProfiles {
    pub center_shift_v: Profile,
    pub center_shift_h: Profile,
    pub area_v: Profile,
    pub area_h: Profile,
    pub spread_v: Profile,
    pub spread_h: Profile,
    pub self_center_shift: Profile,
    pub self_area: Profile,
    pub self_spread: Profile,
}

impl FeatureProfiles {
    pub fn extract(points: &PointSet) -> Self {
        let center_shift_v = center_shift_profile(points, Axis::Vertical);
        let center_shift_h = center_shift_profile(points, Axis::Horizontal);
        let area_v = area_profile(points, Axis::Vertical);
        let area_h = area_profile(points, Axis::Horizontal);
        let spread_v = spread_profile(points, Axis::Vertical);
        let spread_h = spread_profile(points, Axis::Horizontal);
        FeatureProfiles {
            self_center_shift: self_symmetry(&center_shift_v, &center_shift_h),
            self_area: self_symmetry(&area_v, &area_h),
            self_spread: self_symmetry(&spread_v, &spread_h),
            center_shift_v,
            center_shift_h,
            area_v,
            area_h,
            spread_v,
            spread_h,
        }
    }

    pub fn base(&self, feature: Feature, axis: Axis) -> &Profile {
        match (feature, axis) {
            (Feature::CenterShift, Axis::Vertical) => &self.center_shift_v,
            (Feature::CenterShift, Axis::Horizontal) => &self.center_shift_h,
            (Feature::Area, Axis::Vertical) => &self.area_v,
            (Feature::Area, Axis::Horizontal) => &self.area_h,
            (Feature::Spread, Axis::Vertical) => &self.spread_v,
            (Feature::Spread, Axis::Horizontal) => &self.spread_h,
        }
    }

    pub fn self_profile(&self, feature: Feature) -> &Profile {
        match feature {
            Feature::CenterShift => &self.self_center_shift,
            Feature::Area => &self.self_area,
            Feature::Spread => &self.self_spread,
        }
    }
}

/// Vertical plus horizontal profile difference for one base feature.
pub fn base_difference(
    target: &FeatureProfiles,
    choice: &FeatureProfiles,
    feature: Feature,
) -> f64 {
    Axis::BOTH
        .iter()
        .map(|&axis| profile_difference(target.base(feature, axis), choice.base(feature, axis)))
        .sum()
}

/// Difference of the self-symmetry profiles for one feature.
pub fn self_difference(
    target: &FeatureProfiles,
    choice: &FeatureProfiles,
    feature: Feature,
) -> f64 {
    profile_difference(target.self_profile(feature), choice.self_profile(feature))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionError(pub String);

impl fmt::Display for SelectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl core::error::Error for SelectionError {}

/// A nonempty set of equally weighted features.
///
/// Entries are kept sorted, base features before self-symmetry ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FeatureSelection {
    entries: Vec<(Feature, Variant)>,
}

impl FeatureSelection {
    /// Named presets, in the order they are usually reported.
    pub const PRESETS: [&'static str; 3] = ["cs", "cs+sspread", "four"];

    pub fn new<I>(entries: I) -> Option<Self>
    where
        I: IntoIterator<Item = (Feature, Variant)>,
    {
        let mut entries: Vec<_> = entries.into_iter().map(|(f, v)| (v, f)).collect();
        entries.sort();
        entries.dedup();
        if entries.is_empty() {
            return None;
        }
        Some(FeatureSelection {
            entries: entries.into_iter().map(|(v, f)| (f, v)).collect(),
        })
    }

    /// Center shift (base).
    pub fn center_shift() -> Self {
        Self::new([(Feature::CenterShift, Variant::Base)]).unwrap()
    }

    /// Center shift (base) and spread (self-symmetry).
    pub fn center_shift_self_spread() -> Self {
        Self::new([
            (Feature::CenterShift, Variant::Base),
            (Feature::Spread, Variant::SelfSymmetry),
        ])
        .unwrap()
    }

    /// Center shift (base) and all three self-symmetry features.
    pub fn four() -> Self {
        Self::new([
            (Feature::CenterShift, Variant::Base),
            (Feature::CenterShift, Variant::SelfSymmetry),
            (Feature::Area, Variant::SelfSymmetry),
            (Feature::Spread, Variant::SelfSymmetry),
        ])
        .unwrap()
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "cs" => Some(Self::center_shift()),
            "cs+sspread" => Some(Self::center_shift_self_spread()),
            "four" => Some(Self::four()),
            _ => None,
        }
    }

    /// Parses a comma-separated list such as `center_shift,self_spread`.
    ///
    /// Short forms `cs`, `area`, `spread`, `scs`, `sarea`, `sspread` are
    /// accepted as well.
    pub fn parse_list(list: &str) -> Result<Self, SelectionError> {
        let mut entries = Vec::new();
        for raw in list.split(',') {
            let name = raw.trim();
            let entry = match name {
                "center_shift" | "cs" => (Feature::CenterShift, Variant::Base),
                "area" => (Feature::Area, Variant::Base),
                "spread" => (Feature::Spread, Variant::Base),
                "self_center_shift" | "scs" => (Feature::CenterShift, Variant::SelfSymmetry),
                "self_area" | "sarea" => (Feature::Area, Variant::SelfSymmetry),
                "self_spread" | "sspread" => (Feature::Spread, Variant::SelfSymmetry),
                "" => continue,
                other => return Err(SelectionError(alloc::format!("unknown feature `{other}`"))),
            };
            entries.push(entry);
        }
        Self::new(entries).ok_or_else(|| SelectionError("empty feature list".into()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Feature, Variant)> + '_ {
        self.entries.iter().copied()
    }

    pub fn contains(&self, feature: Feature, variant: Variant) -> bool {
        self.entries.contains(&(feature, variant))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for FeatureSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (feature, variant)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if variant == Variant::SelfSymmetry {
                f.write_str("self_")?;
            }
            f.write_str(feature.name())?;
        }
        Ok(())
    }
}

impl Serialize for FeatureSelection {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FeatureSelection {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        FeatureSelection::parse_list(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn ps(coords: &[(f64, f64)]) -> PointSet {
        PointSet::from_coords(coords.iter().copied())
    }

    fn l_shape() -> PointSet {
        ps(&[(0.0, 0.0), (0.0, 1.0), (0.0, 2.0), (1.0, 0.0), (2.0, 0.0)])
    }

    fn square3() -> PointSet {
        let mut v = Vec::new();
        for y in -1..=1 {
            for x in -1..=1 {
                v.push((x as f64, y as f64));
            }
        }
        PointSet::from_coords(v)
    }

    #[test]
    fn binning_rounds_halves_up() {
        assert_eq!(bin_index(0.6), 1);
        assert_eq!(bin_index(0.5), 1);
        assert_eq!(bin_index(-0.5), 0);
        assert_eq!(bin_index(-0.51), -1);
        assert_eq!(bin_index(-1.5), -1);
    }

    #[test]
    fn slices_by_axis() {
        let row = ps(&[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let bins = slice_bins(&row, Axis::Vertical);
        assert_eq!(bins.len(), 1);
        assert_eq!(bins[&0], vec![-1.0, 0.0, 1.0]);

        let pair = ps(&[(0.0, -1.0), (0.0, 1.0)]);
        let bins = slice_bins(&pair, Axis::Vertical);
        assert_eq!(bins[&-1], vec![0.0]);
        assert_eq!(bins[&1], vec![0.0]);
        assert!(!bins.contains_key(&0));

        let bins = slice_bins(&ps(&[(0.6, 0.0)]), Axis::Horizontal);
        assert_eq!(bins.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn gap_bins_fill_with_zero() {
        let pair = ps(&[(3.0, -1.0), (5.0, 1.0)]);
        let cs = center_shift_profile(&pair, Axis::Vertical);
        assert_eq!(cs.values(), &[3.0, 0.0, 5.0]);
        assert_eq!(cs.offset(), 1);
        // Profiles always contain bin 0 even when the figure does not.
        let far = ps(&[(0.0, 4.0), (0.0, 5.0)]);
        let area = area_profile(&far, Axis::Vertical);
        assert_eq!(area.first_bin(), 0);
        assert_eq!(area.values(), &[0.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn square_profiles() {
        let sq = square3();
        let cs = center_shift_profile(&sq, Axis::Vertical);
        assert!(cs.values().iter().all(|&v| v == 0.0));
        assert_eq!(area_profile(&sq, Axis::Vertical).values(), &[3.0, 3.0, 3.0]);
        let fp = FeatureProfiles::extract(&sq);
        for f in Feature::ALL {
            assert!(fp.self_profile(f).values().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn l_shape_profiles() {
        let l = l_shape();
        let cs = center_shift_profile(&l, Axis::Vertical);
        assert_eq!((cs.get(0), cs.get(1), cs.get(2)), (1.0, 0.0, 0.0));
        let area = area_profile(&l, Axis::Horizontal);
        assert_eq!((area.get(0), area.get(1), area.get(2)), (3.0, 1.0, 1.0));
    }

    #[test]
    fn single_column_shift_is_constant() {
        let col = ps(&[(2.0, 0.0), (2.0, 1.0), (2.0, 2.0), (2.0, 3.0)]);
        let cs = center_shift_profile(&col, Axis::Vertical);
        assert!(cs.values().iter().all(|&v| v == 2.0));
    }

    #[test]
    fn spread_values() {
        let two = ps(&[(0.0, 0.0), (2.0, 0.0)]);
        assert_eq!(spread_profile(&two, Axis::Vertical).get(0), 1.0);
        let three = ps(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let expected = libm::sqrt(2.0 / 3.0);
        assert!((spread_profile(&three, Axis::Vertical).get(0) - expected).abs() < 1e-15);
        let diag = ps(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        assert!(spread_profile(&diag, Axis::Vertical)
            .values()
            .iter()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn tall_rectangle_self_area() {
        // 2 wide x 4 tall, centered: x in {-0.5, 0.5}, y in {-1.5, .., 1.5}.
        let mut v = Vec::new();
        for y in [-1.5, -0.5, 0.5, 1.5] {
            for x in [-0.5, 0.5] {
                v.push((x, y));
            }
        }
        let rect = PointSet::from_coords(v);
        let av = area_profile(&rect, Axis::Vertical);
        let ah = area_profile(&rect, Axis::Horizontal);
        assert_eq!(av.bins().filter(|&(_, v)| v == 2.0).count(), 4);
        assert_eq!(ah.bins().filter(|&(_, v)| v == 4.0).count(), 2);
        let s = self_symmetry(&av, &ah);
        let mass: f64 = s.values().iter().map(|v| v.abs()).sum();
        assert_eq!(mass, 8.0);
    }

    #[test]
    fn difference_examples() {
        let p = Profile::new(vec![1.0, 2.0], 0).unwrap();
        let q = Profile::new(vec![1.0, 3.0], 0).unwrap();
        assert_eq!(profile_difference(&p, &p), 0.0);
        assert_eq!(profile_difference(&p, &q), 1.0);
        let five = Profile::new(vec![5.0], 0).unwrap();
        let shifted = Profile::new(vec![0.0, 5.0], 0).unwrap();
        assert_eq!(profile_difference(&five, &shifted), 10.0);
    }

    #[test]
    fn rejects_bad_offset() {
        assert!(Profile::new(vec![], 0).is_none());
        assert!(Profile::new(vec![1.0], 1).is_none());
    }

    #[test]
    fn presets_and_lists() {
        assert_eq!(FeatureSelection::preset("cs").unwrap().len(), 1);
        assert_eq!(FeatureSelection::preset("cs+sspread").unwrap().len(), 2);
        let four = FeatureSelection::preset("four").unwrap();
        assert_eq!(
            four.to_string(),
            "center_shift,self_center_shift,self_area,self_spread"
        );
        assert_eq!(
            FeatureSelection::parse_list(&four.to_string()).unwrap(),
            four
        );
        assert_eq!(
            FeatureSelection::parse_list("sspread, cs").unwrap(),
            FeatureSelection::center_shift_self_spread()
        );
        assert!(FeatureSelection::preset("bogus").is_none());
        assert!(FeatureSelection::parse_list("cs,bogus").is_err());
        assert!(FeatureSelection::parse_list("").is_err());
        assert!(FeatureSelection::new([]).is_none());
    }

    fn profile() -> impl Strategy<Value = Profile> {
        proptest::collection::vec(-10.0f64..10.0, 1..8)
            .prop_flat_map(|v| {
                let n = v.len();
                (Just(v), 0..n)
            })
            .prop_map(|(v, o)| Profile::new(v, o).unwrap())
    }

    fn figure() -> impl Strategy<Value = PointSet> {
        proptest::collection::vec((-8.0f64..8.0, -8.0f64..8.0), 1..40)
            .prop_map(PointSet::from_coords)
    }

    proptest! {
        #[test]
        fn difference_is_pseudometric(p in profile(), q in profile(), r in profile()) {
            let pq = profile_difference(&p, &q);
            prop_assert!(pq >= 0.0);
            prop_assert_eq!(pq, profile_difference(&q, &p));
            prop_assert_eq!(profile_difference(&p, &p), 0.0);
            let pr = profile_difference(&p, &r);
            let rq = profile_difference(&r, &q);
            prop_assert!(pq <= pr + rq + 1e-9);
        }

        #[test]
        fn self_of_identical_is_zero(p in profile()) {
            prop_assert!(self_symmetry(&p, &p).values().iter().all(|&v| v == 0.0));
        }

        #[test]
        fn area_conserves_mass(fig in figure()) {
            let n = fig.len() as f64;
            prop_assert_eq!(area_profile(&fig, Axis::Vertical).values().iter().sum::<f64>(), n);
            prop_assert_eq!(area_profile(&fig, Axis::Horizontal).values().iter().sum::<f64>(), n);
        }

        #[test]
        fn mirror_about_x_nulls_vertical_shift(fig in figure()) {
            // Reflect about the x-axis; y = 0 rows are kept once.
            let mut pts: Vec<_> = fig.iter().map(|p| (p.x, libm::fabs(p.y))).collect();
            let mirrored: Vec<_> = pts.iter().filter(|p| p.1 != 0.0).map(|&(x, y)| (x, -y)).collect();
            pts.extend(mirrored);
            let sym = PointSet::from_coords(pts);
            let cs = center_shift_profile(&sym, Axis::Horizontal);
            prop_assert!(cs.values().iter().all(|v| v.abs() < 1e-9), "{:?}", cs);
        }

        #[test]
        fn self_profile_spans_union(fig in figure()) {
            let fp = FeatureProfiles::extract(&fig);
            for f in Feature::ALL {
                let s = fp.self_profile(f);
                let v = fp.base(f, Axis::Vertical);
                let h = fp.base(f, Axis::Horizontal);
                prop_assert_eq!(s.first_bin(), v.first_bin().min(h.first_bin()));
                prop_assert_eq!(s.last_bin(), v.last_bin().max(h.last_bin()));
            }
        }
    }
}
