//! Marks where sibling explanations differ: steps are aligned by the rule and
//! segment that produced them, then words inside aligned steps by text.

use std::collections::BTreeSet;

use super::{Change, Explanation};

/// Index pairs of a longest common subsequence under `eq`.
pub fn lcs_pairs<A, B>(a: &[A], b: &[B], eq: impl Fn(&A, &B) -> bool) -> Vec<(usize, usize)> {
    let (n, m) = (a.len(), b.len());
    let mut dp = vec![vec![0u32; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            dp[i][j] = if eq(&a[i], &b[j]) { dp[i + 1][j + 1] + 1 } else { dp[i + 1][j].max(dp[i][j + 1]) };
        }
    }
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < n && j < m {
        if eq(&a[i], &b[j]) {
            out.push((i, j));
            i += 1;
            j += 1;
        } else if dp[i + 1][j] >= dp[i][j + 1] {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

fn words(text: &str) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, i));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, text.len()));
    }
    out
}

/// Fills `changes` on every step of every explanation.
pub fn diff_explanations(docs: &mut [Explanation]) {
    let n = docs.len();
    let mut all: Vec<Vec<Vec<BTreeSet<usize>>>> =
        docs.iter().map(|d| d.steps.iter().map(|s| vec![BTreeSet::new(); words(&s.text).len()]).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (&docs[i], &docs[j]);
            let pairs = lcs_pairs(&a.steps, &b.steps, |x, y| {
                let (p, q) = (&x.signature, &y.signature);
                (p.tier, p.rule, p.segment) == (q.tier, q.rule, q.segment)
            });
            let mut aligned: Vec<Option<usize>> = vec![None; a.steps.len()];
            for (x, y) in pairs {
                aligned[x] = Some(y);
            }
            for (si, step) in a.steps.iter().enumerate() {
                let wa = words(&step.text);
                let mut present = vec![false; wa.len()];
                if let Some(y) = aligned[si] {
                    let other = &b.steps[y].text;
                    let wb = words(other);
                    for (x, _) in lcs_pairs(&wa, &wb, |p, q| step.text[p.0..p.1] == other[q.0..q.1]) {
                        present[x] = true;
                    }
                }
                for (w, here) in present.iter().enumerate() {
                    if !here {
                        all[i][si][w].insert(j);
                    }
                }
            }
        }
    }
    for (doc, marks) in docs.iter_mut().zip(all) {
        for (step, marks) in doc.steps.iter_mut().zip(marks) {
            let ws = words(&step.text);
            let mut changes: Vec<Change> = Vec::new();
            for ((s, e), set) in ws.into_iter().zip(marks) {
                if set.is_empty() {
                    continue;
                }
                let absent_in: Vec<usize> = set.into_iter().collect();
                match changes.last_mut() {
                    Some(c) if c.absent_in == absent_in && step.text[c.end..s].trim().is_empty() => c.end = e,
                    _ => changes.push(Change { start: s, end: e, absent_in }),
                }
            }
            step.changes = changes;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcs_of_strings() {
        let a: Vec<char> = "ABCBDAB".chars().collect();
        let b: Vec<char> = "BDCABA".chars().collect();
        assert_eq!(lcs_pairs(&a, &b, |x, y| x == y).len(), 4);
        assert!(lcs_pairs::<char, char>(&[], &b, |x, y| x == y).is_empty());
    }

    #[test]
    fn word_offsets() {
        assert_eq!(words(" ab  c"), vec![(1, 3), (5, 6)]);
    }
}
