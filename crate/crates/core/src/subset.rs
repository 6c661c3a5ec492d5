//! Subsets of a small ordered carrier, stored as bitmasks.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub};

use crate::error::{Error, Result};

/// Largest supported carrier. Every subset fits in one word and a closure
/// table has at most 2^16 entries.
pub const MAX_ELEMENTS: usize = 16;

/// A subset of a [`GroundSet`]; bit `i` is set iff element `i` is a member.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Position of this subset in a closure table.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn singleton(element: usize) -> Self {
        SubsetMask(1 << element)
    }

    /// The whole carrier of an `n`-element ground set.
    pub fn full(n: usize) -> Self {
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    pub fn contains(self, element: usize) -> bool {
        element < 32 && self.0 >> element & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_disjoint(self, other: SubsetMask) -> bool {
        !self.intersects(other)
    }

    /// Complement relative to an `n`-element carrier.
    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    pub fn is_valid_for(self, n: usize) -> bool {
        self.is_subset(Self::full(n))
    }

    pub fn with(self, element: usize) -> Self {
        SubsetMask(self.0 | 1 << element)
    }

    pub fn without(self, element: usize) -> Self {
        SubsetMask(self.0 & !(1 << element))
    }

    /// Member indices in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self` in ascending numeric order, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            within: self.0,
            next: Some(0),
        }
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitOrAssign for SubsetMask {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl BitAndAssign for SubsetMask {
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

/// Set difference.
impl Sub for SubsetMask {
    type Output = SubsetMask;
    fn sub(self, rhs: Self) -> Self {
        SubsetMask(self.0 & !rhs.0)
    }
}

impl fmt::Binary for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Binary::fmt(&self.0, f)
    }
}

#[derive(Clone, Debug)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Ascending enumeration of the subsets of a fixed mask.
#[derive(Clone, Debug)]
pub struct Subsets {
    within: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let current = self.next?;
        let following = (current | !self.within).wrapping_add(1) & self.within;
        self.next = (following != 0).then_some(following);
        Some(SubsetMask(current))
    }
}

/// Every subset of an `n`-element carrier, in ascending numeric order.
pub fn all_subsets(
    n: usize,
) -> impl DoubleEndedIterator<Item = SubsetMask> + ExactSizeIterator + Clone {
    (0..1u32 << n).map(SubsetMask)
}

/// Ordered finite carrier. Element `i` is identified with bit `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if !is_valid_label(label) {
                return Err(Error::InvalidElementName(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateElement(label.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Carrier `{a, b, c, ...}` with `n` elements.
    pub fn letters(n: usize) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        GroundSet::new((0..n as u8).map(|i| char::from(b'a' + i).to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, element: usize) -> Option<&str> {
        self.labels.get(element).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    /// Number of subsets, i.e. the length of a closure table.
    pub fn subset_count(&self) -> usize {
        1 << self.len()
    }

    pub fn subsets(
        &self,
    ) -> impl DoubleEndedIterator<Item = SubsetMask> + ExactSizeIterator + Clone {
        all_subsets(self.len())
    }

    pub fn check(&self, mask: SubsetMask) -> Result<SubsetMask> {
        if mask.is_valid_for(self.len()) {
            Ok(mask)
        } else {
            Err(Error::MaskOutOfRange {
                mask: mask.bits(),
                n: self.len(),
            })
        }
    }

    pub fn check_element(&self, element: usize) -> Result<usize> {
        if element < self.len() {
            Ok(element)
        } else {
            Err(Error::ElementOutOfRange {
                index: element,
                n: self.len(),
            })
        }
    }

    /// Comma-joined labels in element order; the empty set is the empty string.
    pub fn format_subset(&self, mask: SubsetMask) -> String {
        let mut out = String::new();
        for (k, i) in mask.elements().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.labels[i]);
        }
        out
    }

    /// Inverse of [`format_subset`](Self::format_subset). Names must be known,
    /// distinct and listed in element order.
    pub fn parse_subset(&self, text: &str) -> Result<SubsetMask> {
        if text.is_empty() {
            return Ok(SubsetMask::EMPTY);
        }
        let mut mask = SubsetMask::EMPTY;
        let mut last: Option<usize> = None;
        for name in text.split(',') {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))?;
            if last.is_some_and(|prev| prev >= i) {
                return Err(Error::NonCanonicalSubset(text.to_string()));
            }
            last = Some(i);
            mask = mask.with(i);
        }
        Ok(mask)
    }
}

fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '{' | '}' | '|'))
}
