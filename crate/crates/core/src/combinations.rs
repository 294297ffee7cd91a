//! Distinct knot selections from a local window and their repetition counts.
//!
//! Choosing `p1` of the `p` knots in a window with repeated values produces
//! many identical sub-vectors. Writing the window as runs
//! `(theta_1^{m_1}, ..., theta_s^{m_s})`, a distinct selection is a profile
//! `(mu_1, ..., mu_s)` with `0 <= mu_j <= m_j` and `sum mu_j = p1`, and it
//! occurs `prod_j C(m_j, mu_j)` times among the `C(p, p1)` index subsets.

use alloc::vec::Vec;

use crate::binomial::binomial_exact;
use crate::knots::{runs, BreakpointRun};
use crate::{Error, Result};

/// Distinct selections of `p1` knots from a window, with repetition factors.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinationSet {
    runs: Vec<BreakpointRun>,
    selected: usize,
    // one profile of runs.len() entries per combination, flattened
    profiles: Vec<usize>,
    repetitions: Vec<u128>,
}

impl CombinationSet {
    pub fn window_breakpoints(&self) -> &[BreakpointRun] {
        &self.runs
    }

    /// Number of knots drawn per selection (`p1`).
    pub fn selected(&self) -> usize {
        self.selected
    }

    /// Window length `p`.
    pub fn window_len(&self) -> usize {
        self.runs.iter().map(|r| r.multiplicity).sum()
    }

    pub fn len(&self) -> usize {
        self.repetitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.repetitions.is_empty()
    }

    pub fn profile(&self, index: usize) -> &[usize] {
        let s = self.runs.len();
        &self.profiles[index * s..(index + 1) * s]
    }

    pub fn repetition(&self, index: usize) -> u128 {
        self.repetitions[index]
    }

    pub fn repetitions(&self) -> &[u128] {
        &self.repetitions
    }

    /// `(profile, repetition)` pairs in generation order.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], u128)> + '_ {
        (0..self.len()).map(move |i| (self.profile(i), self.repetitions[i]))
    }

    /// Sum of all repetition factors; equals `C(p, p1)`.
    pub fn total_repetitions(&self) -> Option<u128> {
        self.repetitions.iter().try_fold(0u128, |acc, &r| acc.checked_add(r))
    }

    /// Write the selected knots of combination `index` into `chosen` and the
    /// remaining ones into `rest`, both in nondecreasing order.
    pub fn split_into(&self, index: usize, chosen: &mut Vec<f64>, rest: &mut Vec<f64>) {
        chosen.clear();
        rest.clear();
        for (run, &mu) in self.runs.iter().zip(self.profile(index)) {
            chosen.extend(core::iter::repeat_n(run.value, mu));
            rest.extend(core::iter::repeat_n(run.value, run.multiplicity - mu));
        }
    }
}

/// All distinct selections of `p1` knots from the nondecreasing `window`.
///
/// Profiles are generated by recursion over the runs, the first run's count
/// descending from `min(p1, m_1)` to `p1 - min(p1, m_2 + ... + m_s)`; that
/// order is the one used for summation downstream.
pub fn knot_combinations(window: &[f64], p1: usize) -> Result<CombinationSet> {
    if p1 > window.len() {
        return Err(Error::InvalidInput("cannot select more knots than the window holds"));
    }
    if window.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidInput("window knots must be nondecreasing"));
    }
    let runs = runs(window);
    let mults: Vec<usize> = runs.iter().map(|r| r.multiplicity).collect();
    let mut set = CombinationSet {
        runs,
        selected: p1,
        profiles: Vec::new(),
        repetitions: Vec::new(),
    };
    if mults.is_empty() {
        set.repetitions.push(1);
        return Ok(set);
    }
    let mut prefix = Vec::with_capacity(mults.len());
    let overflow = Error::CombinationOverflow(window.len());
    collect(&mults, p1, 1, &mut prefix, &mut set).ok_or(overflow)?;
    Ok(set)
}

fn collect(mults: &[usize], p1: usize, scale: u128, prefix: &mut Vec<usize>, out: &mut CombinationSet) -> Option<()> {
    let m1 = mults[0];
    let rest: usize = mults[1..].iter().sum();
    let hi = p1.min(m1);
    let lo = p1 - p1.min(rest);
    let choose = |m: usize, mu: usize| binomial_exact(m as u64, mu as u64);
    if mults.len() <= 2 {
        for mu1 in (lo..=hi).rev() {
            let mu2 = p1 - mu1;
            let mut rep = scale.checked_mul(choose(m1, mu1)?)?;
            out.profiles.extend_from_slice(prefix);
            out.profiles.push(mu1);
            if let Some(&m2) = mults.get(1) {
                rep = rep.checked_mul(choose(m2, mu2)?)?;
                out.profiles.push(mu2);
            }
            out.repetitions.push(rep);
        }
    } else {
        for mu1 in (lo..=hi).rev() {
            prefix.push(mu1);
            let rep = scale.checked_mul(choose(m1, mu1)?)?;
            collect(&mults[1..], p1 - mu1, rep, prefix, out)?;
            prefix.pop();
        }
    }
    Some(())
}
