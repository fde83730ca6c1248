use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{NilpError, PathVariant, WeightRule};
use crate::exactalg::{Int, TauPoly};

pub const BRUTE_FORCE_MAX_N: usize = 7;

struct Search {
    n: usize,
    variant: PathVariant,
    rule: WeightRule,
    depth: i64,
    height: usize,
    occupied: Vec<bool>,
    ends: Vec<usize>,
    cells: Vec<usize>,
    out: BTreeMap<Vec<usize>, Vec<u64>>,
}

impl Search {
    fn cell(&self, x: usize, y: i64) -> usize {
        x * self.height + (y + self.depth) as usize
    }

    fn weight(&self, s: usize, mask: u32) -> usize {
        let diag = mask.count_ones() as usize;
        match self.rule {
            WeightRule::AllVertical => s - diag,
            WeightRule::AllDiagonal => diag,
            WeightRule::LastStepFree => {
                let last_vertical = s > 0 && mask & (1 << (s - 1)) == 0;
                s - diag - usize::from(last_vertical)
            }
        }
    }

    fn go(&mut self, i: usize, e: usize) {
        if i == self.n {
            let slot = self.out.entry(self.ends.clone()).or_default();
            if slot.len() <= e {
                slot.resize(e + 1, 0);
            }
            slot[e] += 1;
            return;
        }
        let s = self.variant.length(i);
        let cells_base = self.cells.len();
        for mask in 0..1u32 << s {
            let (mut x, mut y) = (i, -(s as i64));
            let mut free = !self.occupied[self.cell(x, y)];
            let mut k = 0;
            while free && k < s {
                if mask & (1 << k) != 0 {
                    x += 1;
                }
                y += 1;
                free = !self.occupied[self.cell(x, y)];
                k += 1;
            }
            if !free {
                continue;
            }
            let (mut x, mut y) = (i, -(s as i64));
            self.cells.push(self.cell(x, y));
            for k in 0..s {
                if mask & (1 << k) != 0 {
                    x += 1;
                }
                y += 1;
                self.cells.push(self.cell(x, y));
            }
            for &c in &self.cells[cells_base..] {
                self.occupied[c] = true;
            }
            debug_assert!(self.ends.last().map_or(true, |&r| r < x));
            self.ends.push(x);
            let w = self.weight(s, mask);
            self.go(i + 1, e + w);
            self.ends.pop();
            for k in cells_base..self.cells.len() {
                let c = self.cells[k];
                self.occupied[c] = false;
            }
            self.cells.truncate(cells_base);
        }
    }
}

/// Exhaustive enumeration of vertex-disjoint families of paths `1..n−1`,
/// grouped by endpoint tuple. The empty family (`n = 1`) has weight 1.
pub fn brute_force(
    n: usize,
    variant: PathVariant,
    rule: WeightRule,
) -> Result<BTreeMap<Vec<usize>, TauPoly>, NilpError> {
    if n == 0 || n > BRUTE_FORCE_MAX_N {
        return Err(NilpError::SizeLimit {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let depth = n as i64 + 1;
    let height = depth as usize + 1;
    let width = 2 * n + 3;
    let mut search = Search {
        n,
        variant,
        rule,
        depth,
        height,
        occupied: vec![false; width * height],
        ends: Vec::new(),
        cells: Vec::new(),
        out: BTreeMap::new(),
    };
    search.go(1, 0);
    Ok(search
        .out
        .into_iter()
        .map(|(k, v)| {
            (
                k,
                TauPoly::from_coeffs(v.into_iter().map(Int::from).collect()),
            )
        })
        .collect())
}

/// `Σ_t a[t] · b[t]` over endpoint tuples present in both maps.
pub fn paired_sum(a: &BTreeMap<Vec<usize>, TauPoly>, b: &BTreeMap<Vec<usize>, TauPoly>) -> TauPoly {
    a.iter().filter_map(|(t, x)| b.get(t).map(|y| x * y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Int;

    #[test]
    fn two_one_step_paths() {
        let m = brute_force(2, PathVariant::Tsscpp, WeightRule::AllVertical).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&vec![1]], TauPoly::from_i64s(&[0, 1]));
        assert_eq!(m[&vec![2]], TauPoly::from_i64s(&[1]));
    }

    #[test]
    fn empty_family() {
        let m = brute_force(1, PathVariant::SecondVsasm, WeightRule::LastStepFree).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&Vec::new()], TauPoly::one());
    }

    #[test]
    fn tsscpp_totals() {
        let total: TauPoly = brute_force(3, PathVariant::Tsscpp, WeightRule::AllVertical)
            .unwrap()
            .into_values()
            .sum();
        assert_eq!(total.eval(&Int::ONE), Int::small(7));
    }

    #[test]
    fn vsasm_pairs() {
        let a = brute_force(3, PathVariant::Tsscpp, WeightRule::AllVertical).unwrap();
        let b = brute_force(3, PathVariant::SecondVsasm, WeightRule::LastStepFree).unwrap();
        assert_eq!(
            paired_sum(&a, &b),
            TauPoly::from_i64s(&[1, 3, 7, 6, 6, 2, 1])
        );
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            brute_force(8, PathVariant::Tsscpp, WeightRule::AllVertical),
            Err(NilpError::SizeLimit { n: 8, .. })
        ));
    }
}
