//! Link patterns on `L` points, their Dyck paths, the Temperley–Lieb action,
//! and the bijections with endpoint tuples and between sizes `2n` and `2n − 1`.
//!
//! Points are numbered from 1. For odd `L` exactly one point is unmatched; it
//! is joined to infinity by a half-line that crosses no arc, which forces it
//! to sit at an odd position outside every arc.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinkPatternError {
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("invalid link pattern: {0}")]
    Invalid(&'static str),
    #[error("endpoint tuple violates r_i <= 2i or strict increase")]
    MalformedTuple,
    #[error("operation needs an even size, got {0}")]
    OddSize(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, LinkPatternError> {
        let mut h: i64 = 0;
        for s in &steps {
            h += if *s == Step::Up { 1 } else { -1 };
            if h < 0 {
                return Err(LinkPatternError::Invalid("path goes below zero"));
            }
        }
        if h != (steps.len() % 2) as i64 {
            return Err(LinkPatternError::Invalid("path ends at the wrong height"));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Heights after each step, `h_1..h_L`.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = 0usize;
        self.steps
            .iter()
            .map(|s| {
                if *s == Step::Up {
                    h += 1;
                } else {
                    h -= 1;
                }
                h
            })
            .collect()
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == Step::Up { "U" } else { "D" })?;
        }
        Ok(())
    }
}

/// `(r_1, …, r_{n−1})` with `r_1 < … < r_{n−1}` and `1 ≤ r_i ≤ 2i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndpointTuple {
    r: Vec<usize>,
}

impl EndpointTuple {
    pub fn new(r: Vec<usize>) -> Result<Self, LinkPatternError> {
        for (k, &ri) in r.iter().enumerate() {
            let i = k + 1;
            if ri < 1 || ri > 2 * i || (k > 0 && r[k - 1] >= ri) {
                return Err(LinkPatternError::MalformedTuple);
            }
        }
        Ok(EndpointTuple { r })
    }

    /// The `n` of the tuple, one more than its length.
    pub fn n(&self) -> usize {
        self.r.len() + 1
    }

    pub fn values(&self) -> &[usize] {
        &self.r
    }

    /// `Σ (2i − r_i)`.
    pub fn box_count(&self) -> usize {
        self.r
            .iter()
            .enumerate()
            .map(|(k, &ri)| 2 * (k + 1) - ri)
            .sum()
    }
}

/// All admissible tuples for a given `n`, in lexicographic order.
pub fn admissible_endpoints(n: usize) -> Vec<EndpointTuple> {
    fn rec(i: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<EndpointTuple>) {
        if i == n {
            out.push(EndpointTuple { r: prefix.clone() });
            return;
        }
        let lo = prefix.last().map_or(1, |&x| x + 1);
        for ri in lo..=2 * i {
            prefix.push(ri);
            rec(i + 1, n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        rec(1, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `partner[i - 1]` is the point matched to `i`, or 0 when `i` is unmatched.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    partner: Vec<usize>,
}

impl LinkPattern {
    /// Builds a pattern from its arcs; for odd `size` the remaining point is
    /// the unmatched one.
    pub fn new(size: usize, arcs: &[(usize, usize)]) -> Result<Self, LinkPatternError> {
        if size == 0 {
            return Err(LinkPatternError::Invalid("size must be positive"));
        }
        let mut partner = vec![0usize; size];
        for &(a, b) in arcs {
            if a == b || a == 0 || b == 0 || a > size || b > size {
                return Err(LinkPatternError::Invalid("arc endpoint out of range"));
            }
            if partner[a - 1] != 0 || partner[b - 1] != 0 {
                return Err(LinkPatternError::Invalid("point used twice"));
            }
            partner[a - 1] = b;
            partner[b - 1] = a;
        }
        let p = LinkPattern { partner };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), LinkPatternError> {
        let free = self.partner.iter().filter(|&&x| x == 0).count();
        if free != self.size() % 2 {
            return Err(LinkPatternError::Invalid(
                "wrong number of unmatched points",
            ));
        }
        // Non-crossing with the unmatched point outside every arc is exactly
        // the condition that the stack matching reproduces the pattern.
        let mut stack: Vec<usize> = Vec::new();
        for i in 1..=self.size() {
            match self.partner[i - 1] {
                0 => {
                    if !stack.is_empty() {
                        return Err(LinkPatternError::Invalid("unmatched point under an arc"));
                    }
                }
                j if j > i => stack.push(i),
                j => {
                    if stack.pop() != Some(j) {
                        return Err(LinkPatternError::Invalid("crossing arcs"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_dyck(path: &DyckPath) -> Self {
        let l = path.steps.len();
        let mut partner = vec![0usize; l];
        let mut stack: Vec<usize> = Vec::new();
        for (k, s) in path.steps.iter().enumerate() {
            let i = k + 1;
            match s {
                Step::Up => stack.push(i),
                Step::Down => {
                    let j = stack.pop().expect("valid Dyck path");
                    partner[i - 1] = j;
                    partner[j - 1] = i;
                }
            }
        }
        LinkPattern { partner }
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    /// The point matched to `i`, or `None` for the unmatched point.
    pub fn partner(&self, i: usize) -> Option<usize> {
        match self.partner[i - 1] {
            0 => None,
            j => Some(j),
        }
    }

    pub fn unmatched(&self) -> Option<usize> {
        self.partner.iter().position(|&x| x == 0).map(|k| k + 1)
    }

    /// Arcs `(a, b)` with `a < b`, sorted by `a`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (1..=self.size())
            .filter_map(|i| match self.partner[i - 1] {
                j if j > i => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.size() && self.partner[i - 1] == j && j != 0
    }

    pub fn to_dyck(&self) -> DyckPath {
        let steps = (1..=self.size())
            .map(|i| {
                if self.partner[i - 1] == 0 || self.partner[i - 1] > i {
                    Step::Up
                } else {
                    Step::Down
                }
            })
            .collect();
        DyckPath { steps }
    }

    /// Number of boxes between the Dyck path and the lowest zig-zag path.
    pub fn box_count(&self) -> usize {
        let h = self.to_dyck().heights();
        (1..self.size()).map(|k| (h[k - 1] - k % 2) / 2).sum()
    }

    /// `e_i`: returns the new pattern and whether a closed loop was created.
    pub fn tl_apply(&self, i: usize) -> Result<(LinkPattern, bool), LinkPatternError> {
        let l = self.size();
        if i == 0 || i >= l {
            return Err(LinkPatternError::IndexOutOfRange { index: i, size: l });
        }
        let a = self.partner[i - 1];
        let b = self.partner[i];
        if a == i + 1 {
            return Ok((self.clone(), true));
        }
        let mut partner = self.partner.clone();
        partner[i - 1] = i + 1;
        partner[i] = i;
        // The other ends are glued; an end at infinity passes to the partner.
        match (a, b) {
            (0, b) => partner[b - 1] = 0,
            (a, 0) => partner[a - 1] = 0,
            (a, b) => {
                partner[a - 1] = b;
                partner[b - 1] = a;
            }
        }
        Ok((LinkPattern { partner }, false))
    }

    /// Every `π' ≠ π` among `patterns` with `e_i π' = π`.
    pub fn preimages_in<'a>(
        &self,
        i: usize,
        patterns: &'a [LinkPattern],
    ) -> Result<Vec<&'a LinkPattern>, LinkPatternError> {
        let mut out = Vec::new();
        for p in patterns {
            if p != self && p.tl_apply(i)?.0 == *self {
                out.push(p);
            }
        }
        Ok(out)
    }

    pub fn preimages(&self, i: usize) -> Result<Vec<LinkPattern>, LinkPatternError> {
        let all = enumerate_patterns(self.size());
        Ok(self.preimages_in(i, &all)?.into_iter().cloned().collect())
    }

    /// Mirror image under `i ↦ L + 1 − i`.
    pub fn reflect(&self) -> LinkPattern {
        let l = self.size();
        let partner = (1..=l)
            .map(|i| match self.partner[l - i] {
                0 => 0,
                j => l + 1 - j,
            })
            .collect();
        LinkPattern { partner }
    }

    /// The endpoint tuple of an even-size pattern.
    pub fn to_endpoints(&self) -> Result<EndpointTuple, LinkPatternError> {
        if self.size() % 2 == 1 {
            return Err(LinkPatternError::OddSize(self.size()));
        }
        let r = self
            .reflect()
            .arcs()
            .into_iter()
            .map(|(a, _)| a - 1)
            .skip(1)
            .collect();
        Ok(EndpointTuple { r })
    }

    pub fn from_endpoints(t: &EndpointTuple) -> LinkPattern {
        let l = 2 * t.n();
        let mut steps = vec![Step::Down; l];
        steps[0] = Step::Up;
        for &r in &t.r {
            steps[r] = Step::Up;
        }
        LinkPattern::from_dyck(&DyckPath { steps }).reflect()
    }

    /// Deletes point `L` of an even-size pattern; its partner becomes unmatched.
    pub fn reduce_even_to_odd(&self) -> Result<LinkPattern, LinkPatternError> {
        let l = self.size();
        if l % 2 == 1 {
            return Err(LinkPatternError::OddSize(l));
        }
        let mut partner = self.partner.clone();
        let j = partner.pop().expect("nonempty");
        partner[j - 1] = 0;
        Ok(LinkPattern { partner })
    }

    /// Inverse of [`reduce_even_to_odd`](Self::reduce_even_to_odd).
    pub fn lift_odd_to_even(&self) -> LinkPattern {
        let u = self.unmatched().expect("odd-size pattern");
        let mut partner = self.partner.clone();
        partner[u - 1] = self.size() + 1;
        partner.push(u);
        LinkPattern { partner }
    }

    /// Inserts a new point 1 joined to the unmatched point of an odd-size
    /// pattern; this extends the endpoint bijection to odd sizes.
    pub fn prepend_partner(&self) -> LinkPattern {
        let u = self.unmatched().expect("odd-size pattern");
        let mut partner = Vec::with_capacity(self.size() + 1);
        partner.push(u + 1);
        partner.extend(self.partner.iter().map(|&j| if j == 0 { 1 } else { j + 1 }));
        LinkPattern { partner }
    }

    /// The pattern joining `i` to `L + 1 − i`.
    pub fn fully_nested(l: usize) -> LinkPattern {
        let arcs: Vec<_> = (1..=l / 2).map(|i| (i, l + 1 - i)).collect();
        LinkPattern::new(l, &arcs).expect("valid")
    }

    /// The pattern joining `2i − 1` to `2i`.
    pub fn fully_unnested(l: usize) -> LinkPattern {
        let arcs: Vec<_> = (1..=l / 2).map(|i| (2 * i - 1, 2 * i)).collect();
        LinkPattern::new(l, &arcs).expect("valid")
    }
}

/// All link patterns of size `l` in canonical order: lexicographic in the
/// endpoint tuple for even `l`, and induced through point deletion from
/// size `l + 1` for odd `l`.
pub fn enumerate_patterns(l: usize) -> Vec<LinkPattern> {
    assert!(l >= 1, "size must be positive");
    if l % 2 == 1 {
        return enumerate_patterns(l + 1)
            .iter()
            .map(|p| p.reduce_even_to_odd().expect("even"))
            .collect();
    }
    admissible_endpoints(l / 2)
        .iter()
        .map(LinkPattern::from_endpoints)
        .collect()
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (a, b) in self.arcs() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
            first = false;
        }
        if let Some(u) = self.unmatched() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "u={u}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}{}", self.size(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn lp(l: usize, arcs: &[(usize, usize)]) -> LinkPattern {
        LinkPattern::new(l, arcs).unwrap()
    }

    fn catalan(n: usize) -> usize {
        let mut c = 1usize;
        for k in 0..n {
            c = c * 2 * (2 * k + 1) / (k + 2);
        }
        c
    }

    #[test]
    fn counts_are_catalan() {
        for l in 1..=12 {
            let all = enumerate_patterns(l);
            assert_eq!(all.len(), catalan(l.div_ceil(2)), "L={l}");
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
    }

    #[test]
    fn dyck_examples() {
        assert_eq!(lp(2, &[(1, 2)]).to_dyck().to_string(), "UD");
        assert_eq!(lp(4, &[(1, 4), (2, 3)]).to_dyck().to_string(), "UUDD");
        assert_eq!(lp(3, &[(1, 2)]).to_dyck().to_string(), "UDU");
    }

    #[test]
    fn validity() {
        assert!(LinkPattern::new(4, &[(1, 3), (2, 4)]).is_err());
        assert!(LinkPattern::new(3, &[(1, 3)]).is_err());
        assert!(LinkPattern::new(3, &[(2, 3)]).is_ok());
        assert!(LinkPattern::new(4, &[(1, 2)]).is_err());
    }

    #[test]
    fn prepend_partner_examples() {
        let p = lp(5, &[(1, 2), (4, 5)]);
        assert_eq!(p.prepend_partner(), lp(6, &[(1, 4), (2, 3), (5, 6)]));
        assert_eq!(lp(1, &[]).prepend_partner(), lp(2, &[(1, 2)]));
    }

    #[test]
    fn box_counts() {
        assert_eq!(lp(4, &[(1, 2), (3, 4)]).box_count(), 0);
        assert_eq!(lp(4, &[(1, 4), (2, 3)]).box_count(), 1);
        let t = EndpointTuple::new(vec![2, 3, 4, 7]).unwrap();
        let p = LinkPattern::from_endpoints(&t);
        assert_eq!(p.box_count(), 4);
        assert_eq!(p.to_endpoints().unwrap(), t);
        for l in (2..=12).step_by(2) {
            for p in enumerate_patterns(l) {
                assert_eq!(p.box_count(), p.to_endpoints().unwrap().box_count());
                assert_eq!(p.box_count(), p.reflect().box_count());
            }
        }
        assert_eq!(LinkPattern::fully_nested(8).box_count(), 6);
    }

    #[test]
    fn tl_examples() {
        let flat = lp(4, &[(1, 2), (3, 4)]);
        assert_eq!(flat.tl_apply(1).unwrap(), (flat.clone(), true));
        assert_eq!(
            lp(4, &[(1, 4), (2, 3)]).tl_apply(1).unwrap(),
            (flat.clone(), false)
        );
        assert_eq!(
            lp(3, &[(2, 3)]).tl_apply(1).unwrap(),
            (lp(3, &[(1, 2)]), false)
        );
        assert_eq!(
            lp(3, &[(1, 2)]).tl_apply(2).unwrap(),
            (lp(3, &[(2, 3)]), false)
        );
        assert!(flat.tl_apply(4).is_err());
        assert!(flat.tl_apply(0).is_err());
    }

    #[test]
    fn tl_relations() {
        for l in 2..=8 {
            let all = enumerate_patterns(l);
            for p in &all {
                for i in 1..l {
                    let (a, _) = p.tl_apply(i).unwrap();
                    let (b, looped) = a.tl_apply(i).unwrap();
                    assert!(looped && a == b);
                    for j in [i.wrapping_sub(1), i + 1] {
                        if j == 0 || j >= l {
                            continue;
                        }
                        let (x, l1) = p.tl_apply(i).unwrap();
                        let (y, l2) = x.tl_apply(j).unwrap();
                        let (z, l3) = y.tl_apply(i).unwrap();
                        let (_, l0) = p.tl_apply(i).unwrap();
                        assert_eq!(z, a);
                        assert_eq!(l1 as u8 + l2 as u8 + l3 as u8, l0 as u8);
                    }
                }
            }
        }
    }

    #[test]
    fn preimage_examples() {
        let nest = lp(4, &[(1, 4), (2, 3)]);
        assert_eq!(nest.preimages(2).unwrap(), vec![lp(4, &[(1, 2), (3, 4)])]);
        assert!(nest.preimages(1).unwrap().is_empty());
        let flat6 = lp(6, &[(1, 2), (3, 4), (5, 6)]);
        let mut got = flat6.preimages(3).unwrap();
        got.sort();
        let mut want = vec![
            lp(6, &[(1, 2), (3, 6), (4, 5)]),
            lp(6, &[(1, 4), (2, 3), (5, 6)]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn reflect_and_reduce() {
        assert_eq!(
            lp(6, &[(1, 2), (3, 6), (4, 5)]).reflect(),
            lp(6, &[(1, 4), (2, 3), (5, 6)])
        );
        assert_eq!(lp(3, &[(2, 3)]).reflect(), lp(3, &[(1, 2)]));
        assert_eq!(
            lp(4, &[(1, 2), (3, 4)]).reduce_even_to_odd().unwrap(),
            lp(3, &[(1, 2)])
        );
        assert_eq!(
            lp(4, &[(1, 4), (2, 3)]).reduce_even_to_odd().unwrap(),
            lp(3, &[(2, 3)])
        );
        assert_eq!(lp(2, &[(1, 2)]).reduce_even_to_odd().unwrap(), lp(1, &[]));
        for p in enumerate_patterns(7) {
            assert_eq!(p.lift_odd_to_even().reduce_even_to_odd().unwrap(), p);
            assert_eq!(p.unmatched().unwrap() % 2, 1);
        }
    }

    #[test]
    fn endpoints_round_trip() {
        assert_eq!(
            lp(4, &[(1, 2), (3, 4)]).to_endpoints().unwrap().values(),
            &[2]
        );
        assert_eq!(
            lp(4, &[(1, 4), (2, 3)]).to_endpoints().unwrap().values(),
            &[1]
        );
        for n in 1..=6 {
            for t in admissible_endpoints(n) {
                assert_eq!(LinkPattern::from_endpoints(&t).to_endpoints().unwrap(), t);
            }
        }
        assert!(EndpointTuple::new(vec![3]).is_err());
        assert!(EndpointTuple::new(vec![2, 2]).is_err());
    }
}
