use super::ring::{DerivVar, DiffrlRanking};
use crate::error::{Error, Result};

/// Janet multiplicative axes for each leader. Leaders of different dependent
/// variables never interact; within one variable the axes are examined in
/// ranking precedence order: an axis is multiplicative for a leader when its
/// order along that axis is maximal among the leaders agreeing with it on all
/// previously examined axes.
pub fn janet_assign(leaders: &[DerivVar], ranking: &DiffrlRanking) -> Result<Vec<Vec<usize>>> {
    for (i, a) in leaders.iter().enumerate() {
        if leaders[..i].contains(a) {
            return Err(Error::DuplicateLeader(format!("{a:?}")));
        }
    }
    let axes = ranking.axis_precedence();
    let mut out = vec![Vec::new(); leaders.len()];
    for (i, a) in leaders.iter().enumerate() {
        for (pos, &ax) in axes.iter().enumerate() {
            let max = leaders
                .iter()
                .filter(|b| b.indet == a.indet && axes[..pos].iter().all(|&k| b.index[k] == a.index[k]))
                .map(|b| b.index[ax])
                .max()
                .unwrap_or(0);
            if a.index[ax] == max {
                out[i].push(ax);
            }
        }
        out[i].sort_unstable();
    }
    Ok(out)
}

/// Whether `v` lies in the Janet cone of `leader` with multiplicative axes
/// `mult`; returns the prolongation multi-index if so.
pub fn in_cone(v: &DerivVar, leader: &DerivVar, mult: &[usize]) -> Option<Vec<u32>> {
    if v.indet != leader.indet {
        return None;
    }
    let mut theta = vec![0u32; v.index.len()];
    for (i, (&a, &b)) in v.index.iter().zip(&leader.index).enumerate() {
        if a < b {
            return None;
        }
        if a > b && !mult.contains(&i) {
            return None;
        }
        theta[i] = a - b;
    }
    Some(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::Ranking;

    #[test]
    fn singleton_gets_every_axis() {
        let r = Ranking::orderly(2, 1);
        let got = janet_assign(&[DerivVar::new(0, &[2, 0])], &r).unwrap();
        assert_eq!(got, vec![vec![0, 1]]);
    }

    #[test]
    fn two_leaders_in_one_variable() {
        let r = Ranking::orderly(2, 1);
        let got = janet_assign(&[DerivVar::new(0, &[2, 0]), DerivVar::new(0, &[1, 1])], &r).unwrap();
        assert_eq!(got, vec![vec![0, 1], vec![1]]);
    }

    #[test]
    fn duplicates_are_rejected() {
        let r = Ranking::orderly(1, 1);
        let l = DerivVar::new(0, &[1]);
        assert!(matches!(
            janet_assign(&[l.clone(), l], &r),
            Err(Error::DuplicateLeader(_))
        ));
    }
}
