//! The sign-reversing pairing on distinct-part partitions in a class `C(N)`.
//!
//! A distinct-part partition lies in `C(N)` when `largest >= N > largest -
//! smallest`. Within `D(n) ∩ C(N)` the pairing matches partitions with an
//! odd number of parts against ones with an even number, leaving only the
//! one-part partition `(n)` unmatched, and only when `N | n`. Summing
//! `(-1)^{#parts - 1}` over the class therefore gives `[N | n]`.
//!
//! Both directions run as one loop over a working multiset:
//!
//! - case 1 (one part `j N`, at least two parts): drop that part, then `j`
//!   times add `N` to the current smallest part;
//! - case 2 (no part divisible by `N`): repeatedly subtract `N` from the
//!   current largest part until the running total `T = j N` satisfies
//!   `largest - N < T < smallest + N` on the working multiset, then insert
//!   `T` as a part.
//!
//! Anything the loop cannot finish cleanly (guard overrun, a nonpositive
//! part, a repeated part) is an [`Error::AlgorithmFault`].

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{enumerate_distinct, Partition};

/// Which branch of the pairing applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairingCase {
    Case1,
    Case2,
    Fixed,
}

impl fmt::Display for PairingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairingCase::Case1 => "case1",
            PairingCase::Case2 => "case2",
            PairingCase::Fixed => "fixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepAction {
    Start,
    Remove { part: u32 },
    AddToSmallest { from: u32, to: u32 },
    SubtractFromLargest { from: u32, to: u32, total: u32 },
    Insert { part: u32 },
    Fixed,
}

impl fmt::Display for StepAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepAction::Start => f.write_str("start"),
            StepAction::Remove { part } => write!(f, "remove {part}"),
            StepAction::AddToSmallest { from, to } => write!(f, "add-to-smallest {from}->{to}"),
            StepAction::SubtractFromLargest { from, to, total } => {
                write!(f, "subtract-from-largest {from}->{to} total={total}")
            }
            StepAction::Insert { part } => write!(f, "insert {part}"),
            StepAction::Fixed => f.write_str("fixed"),
        }
    }
}

/// One loop iteration: the action and the working multiset after it
/// (nonincreasing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingStep {
    pub action: StepAction,
    pub working: Vec<u32>,
}

/// Full record of one application of the pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTrace {
    pub input: Partition,
    pub divisor: u32,
    pub case: PairingCase,
    pub steps: Vec<PairingStep>,
    /// The part `j N` removed (case 1) or the total `T = j N` inserted (case 2).
    pub moved_part: Option<u32>,
    /// `None` for the fixed point.
    pub output: Option<Partition>,
}

impl PairingTrace {
    pub fn is_fixed(&self) -> bool {
        self.case == PairingCase::Fixed
    }

    /// Line-oriented rendering, one step per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("pair N={} input={}\n", self.divisor, self.input);
        out.push_str(&format!("case {}\n", self.case));
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!("step {i} {} | {}\n", step.action, render_parts(&step.working)));
        }
        match &self.output {
            Some(p) => out.push_str(&format!("output {p}\n")),
            None => out.push_str("output fixed\n"),
        }
        out
    }
}

fn render_parts(parts: &[u32]) -> String {
    if parts.is_empty() {
        return "()".into();
    }
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join("+")
}

fn distinct_stats(p: &Partition) -> Result<(u32, u32)> {
    let s = p.stats()?;
    if !s.is_distinct() {
        return Err(Error::Usage(format!("{p} does not have distinct parts")));
    }
    Ok((s.smallest, s.largest))
}

/// Whether `p` lies in `C(N)`: `largest >= N > largest - smallest`.
pub fn in_class(p: &Partition, divisor: u32) -> Result<bool> {
    if divisor == 0 {
        return Err(Error::Usage("N must be positive".into()));
    }
    let (s, l) = distinct_stats(p)?;
    Ok(l >= divisor && divisor > l - s)
}

/// Number of `N >= 1` with `p` in `C(N)`; equals the smallest part.
pub fn membership_count(p: &Partition) -> Result<u32> {
    let (_, l) = distinct_stats(p)?;
    let mut count = 0;
    for divisor in 1..=l {
        if in_class(p, divisor)? {
            count += 1;
        }
    }
    Ok(count)
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

fn fault(p: &Partition, divisor: u32, what: impl fmt::Display) -> Error {
    Error::AlgorithmFault(format!("pairing {p} with N={divisor}: {what}"))
}

fn descending(ascending: &[u32]) -> Vec<u32> {
    ascending.iter().rev().copied().collect()
}

fn insert_sorted(working: &mut Vec<u32>, value: u32) {
    let at = working.partition_point(|&x| x < value);
    working.insert(at, value);
}

/// Applies the pairing to `p` within `C(N)`.
pub fn pair(p: &Partition, divisor: u32) -> Result<PairingTrace> {
    if !in_class(p, divisor)? {
        return Err(Error::Usage(format!("{p} is not in C({divisor})")));
    }
    let n = p.n();
    let guard = ceil_div(n, divisor);
    let multiples: Vec<u32> = p.parts().iter().copied().filter(|a| a % divisor == 0).collect();
    if multiples.len() > 1 {
        return Err(fault(p, divisor, "more than one part divisible by N inside the class window"));
    }
    // working multiset kept ascending
    let mut working: Vec<u32> = p.parts().iter().rev().copied().collect();
    let mut steps = vec![PairingStep { action: StepAction::Start, working: p.parts().to_vec() }];

    if let Some(&multiple) = multiples.first() {
        if p.len() == 1 {
            steps.push(PairingStep { action: StepAction::Fixed, working: p.parts().to_vec() });
            return Ok(PairingTrace {
                input: p.clone(),
                divisor,
                case: PairingCase::Fixed,
                steps,
                moved_part: None,
                output: None,
            });
        }
        let j = multiple / divisor;
        if j > guard {
            return Err(fault(p, divisor, format!("loop guard exceeded (j = {j} > {guard})")));
        }
        working.retain(|&a| a != multiple);
        steps.push(PairingStep { action: StepAction::Remove { part: multiple }, working: descending(&working) });
        for _ in 0..j {
            let from = working.remove(0);
            let to = from + divisor;
            insert_sorted(&mut working, to);
            steps.push(PairingStep {
                action: StepAction::AddToSmallest { from, to },
                working: descending(&working),
            });
        }
        let output = finish(p, divisor, working)?;
        return Ok(PairingTrace {
            input: p.clone(),
            divisor,
            case: PairingCase::Case1,
            steps,
            moved_part: Some(multiple),
            output: Some(output),
        });
    }

    let mut j = 0;
    loop {
        j += 1;
        if j > guard {
            return Err(fault(p, divisor, format!("loop guard exceeded (j > {guard})")));
        }
        let from = working.pop().expect("working multiset is nonempty");
        if from <= divisor {
            return Err(fault(p, divisor, format!("part {from} would become nonpositive")));
        }
        let to = from - divisor;
        insert_sorted(&mut working, to);
        let total = j * divisor;
        steps.push(PairingStep {
            action: StepAction::SubtractFromLargest { from, to, total },
            working: descending(&working),
        });
        let (smallest, largest) = (i64::from(working[0]), i64::from(*working.last().unwrap()));
        let (t, nn) = (i64::from(total), i64::from(divisor));
        if largest - nn < t && t < smallest + nn {
            if working.contains(&total) {
                return Err(fault(p, divisor, format!("inserted part {total} already present")));
            }
            insert_sorted(&mut working, total);
            steps.push(PairingStep { action: StepAction::Insert { part: total }, working: descending(&working) });
            let output = finish(p, divisor, working)?;
            return Ok(PairingTrace {
                input: p.clone(),
                divisor,
                case: PairingCase::Case2,
                steps,
                moved_part: Some(total),
                output: Some(output),
            });
        }
    }
}

fn finish(p: &Partition, divisor: u32, ascending: Vec<u32>) -> Result<Partition> {
    if ascending.windows(2).any(|w| w[0] == w[1]) {
        return Err(fault(p, divisor, format!("output {} has a repeated part", render_parts(&descending(&ascending)))));
    }
    Ok(Partition::from_sorted_unchecked(descending(&ascending)))
}

/// The explicit case-1 images for `j <= k - 1`, written out position by
/// position over the ascending parts `a_1 < ... < a_k` with `a_i = j N`.
/// Returns `None` outside that range or when `p` is not a case-1 input.
pub fn case1_closed_form(p: &Partition, divisor: u32) -> Option<Partition> {
    let a: Vec<u32> = p.parts().iter().rev().copied().collect();
    let k = a.len();
    if k < 2 {
        return None;
    }
    let i = a.iter().position(|x| x % divisor == 0)? + 1;
    let j = (a[i - 1] / divisor) as usize;
    // a[idx] is a_{idx+1}
    let part = |m: usize| a[m - 1];
    let mut out = Vec::with_capacity(k - 1);
    if j + 1 < i {
        out.extend((j + 1..i).map(part));
        out.extend((i + 1..=k).map(part));
        out.extend((1..=j).map(|m| part(m) + divisor));
    } else if j + 1 < k {
        out.extend((j + 2..=k).map(part));
        out.extend((1..i).map(|m| part(m) + divisor));
        out.extend((i + 1..=j + 1).map(|m| part(m) + divisor));
    } else if j + 1 == k {
        out.extend((1..=k).filter(|&m| m != i).map(|m| part(m) + divisor));
    } else {
        return None;
    }
    Partition::from_unsorted(out).ok()
}

/// `sum_{p in D(n) ∩ C(N)} (-1)^{#parts - 1}`.
pub fn class_sum(n: u32, divisor: u32) -> Result<i64> {
    if divisor == 0 || divisor > n {
        return Err(Error::Usage(format!("class_sum needs 1 <= N <= n, got N={divisor}, n={n}")));
    }
    let mut total = 0i64;
    let mut stream = enumerate_distinct(n)?;
    while let Some(parts) = stream.advance() {
        let (l, s) = (parts[0], *parts.last().unwrap());
        if l >= divisor && divisor > l - s {
            total += if parts.len() % 2 == 1 { 1 } else { -1 };
        }
    }
    Ok(total)
}

/// Tallies from checking every pairing in `D(n) ∩ C(N)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairingSummary {
    pub class_size: u64,
    pub case1: u64,
    pub case2: u64,
    pub fixed: u64,
}

/// Runs the pairing over `D(n) ∩ C(N)` and checks that it is
/// parity-reversing, class-closed and self-inverse, with the single fixed
/// point `(n)` exactly when `N | n`. Any violation is an algorithm fault.
pub fn verify_class(n: u32, divisor: u32) -> Result<PairingSummary> {
    let mut summary = PairingSummary::default();
    for p in enumerate_distinct(n)? {
        if !in_class(&p, divisor)? {
            continue;
        }
        summary.class_size += 1;
        let trace = pair(&p, divisor)?;
        let Some(out) = &trace.output else {
            summary.fixed += 1;
            continue;
        };
        match trace.case {
            PairingCase::Case1 => summary.case1 += 1,
            PairingCase::Case2 => summary.case2 += 1,
            PairingCase::Fixed => unreachable!(),
        }
        if out.n() != n || !out.is_distinct() || !in_class(out, divisor)? {
            return Err(fault(&p, divisor, format!("image {out} left D({n}) ∩ C({divisor})")));
        }
        if out.len().abs_diff(p.len()) != 1 {
            return Err(fault(&p, divisor, format!("image {out} does not flip parity")));
        }
        let back = pair(out, divisor)?;
        if back.output.as_ref() != Some(&p) {
            return Err(fault(&p, divisor, format!("not self-inverse: {out} maps to {:?}", back.output)));
        }
    }
    let expected_fixed = u64::from(n % divisor == 0);
    if summary.fixed != expected_fixed {
        return Err(Error::AlgorithmFault(format!(
            "n={n}, N={divisor}: {} fixed points, expected {expected_fixed}",
            summary.fixed
        )));
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn class_membership() {
        assert!(in_class(&p(&[6]), 4).unwrap());
        assert!(!in_class(&p(&[5, 1]), 3).unwrap());
        assert!(in_class(&p(&[4, 2]), 4).unwrap());
        assert!(matches!(in_class(&p(&[2, 2]), 2), Err(Error::Usage(_))));
        assert!(in_class(&Partition::empty(), 1).is_err());
    }

    #[test]
    fn membership_counts() {
        assert_eq!(membership_count(&p(&[3, 2, 1])).unwrap(), 1);
        assert_eq!(membership_count(&p(&[7])).unwrap(), 7);
        assert_eq!(membership_count(&p(&[4, 2])).unwrap(), 2);
    }

    #[test]
    fn hand_traces() {
        let t = pair(&p(&[4, 2]), 4).unwrap();
        assert_eq!(t.case, PairingCase::Case1);
        assert_eq!(t.output, Some(p(&[6])));
        assert_eq!(t.moved_part, Some(4));

        let t = pair(&p(&[6]), 4).unwrap();
        assert_eq!(t.case, PairingCase::Case2);
        assert_eq!(t.output, Some(p(&[4, 2])));

        let t = pair(&p(&[4, 2]), 3).unwrap();
        assert_eq!(t.case, PairingCase::Case2);
        assert_eq!(t.output, Some(p(&[3, 2, 1])));
        let back = pair(&p(&[3, 2, 1]), 3).unwrap();
        assert_eq!(back.case, PairingCase::Case1);
        assert_eq!(back.output, Some(p(&[4, 2])));

        let t = pair(&p(&[6]), 2).unwrap();
        assert!(t.is_fixed());
        assert_eq!(t.output, None);
    }

    #[test]
    fn pairing_outside_class_is_rejected() {
        assert!(matches!(pair(&p(&[5, 1]), 3), Err(Error::Usage(_))));
    }

    #[test]
    fn trace_text() {
        let text = pair(&p(&[4, 2]), 3).unwrap().to_text();
        assert_eq!(
            text,
            "pair N=3 input=4+2\n\
             case case2\n\
             step 0 start | 4+2\n\
             step 1 subtract-from-largest 4->1 total=3 | 2+1\n\
             step 2 insert 3 | 3+2+1\n\
             output 3+2+1\n"
        );
    }

    #[test]
    fn class_sums() {
        assert_eq!(class_sum(6, 2).unwrap(), 1);
        assert_eq!(class_sum(6, 4).unwrap(), 0);
        assert_eq!(class_sum(6, 5).unwrap(), 0);
        assert!(class_sum(6, 7).is_err());
    }

    #[test]
    fn closed_form_agrees_on_small_inputs() {
        let mut compared = 0;
        for n in 1..=25 {
            for divisor in 1..=n {
                for q in enumerate_distinct(n).unwrap() {
                    if !in_class(&q, divisor).unwrap() {
                        continue;
                    }
                    if let Some(closed) = case1_closed_form(&q, divisor) {
                        assert_eq!(pair(&q, divisor).unwrap().output, Some(closed), "{q} N={divisor}");
                        compared += 1;
                    }
                }
            }
        }
        assert!(compared > 100);
    }

    #[test]
    fn verify_small_classes() {
        for n in 1..=15 {
            for divisor in 1..=n {
                verify_class(n, divisor).unwrap();
            }
        }
    }
}
