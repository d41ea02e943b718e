use serde::{Deserialize, Serialize};

use super::family::families;
use crate::conjecture::objective;
use crate::error::{Error, Result};
use crate::parallel::map_indexed;
use crate::rng::stream;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub index: usize,
    pub family: String,
    pub value: f64,
}

/// `n` random feasible points cycling through every family available at
/// `d`; sample `i` uses stream `i` of `seed`.
pub fn figure1_sweep(d: usize, n: usize, seed: u64) -> Result<Vec<SweepRecord>> {
    if n == 0 {
        return Err(Error::InvalidArgument("sweep needs n >= 1".into()));
    }
    if d < 2 {
        return Err(Error::Dimension(format!("d must be at least 2, got {d}")));
    }
    let fams = families().available(d);
    map_indexed(n, |i| {
        let f = fams[i % fams.len()];
        let p = f.draw(d, &mut stream(seed, i as u64))?.point();
        Ok(SweepRecord { index: i, family: f.tag().to_string(), value: objective(&p) })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_ordered() {
        let a = figure1_sweep(4, 50, 7).unwrap();
        let b = figure1_sweep(4, 50, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().enumerate().all(|(i, r)| r.index == i));
        assert_eq!(a[4].family, "theorem2_forms");
        assert!(figure1_sweep(4, 0, 7).is_err());
    }

    #[test]
    fn small_sweep_below_bound() {
        let r = figure1_sweep(5, 200, 1).unwrap();
        assert!(r.iter().all(|x| x.value < 0.44));
        assert!(r.iter().all(|x| x.family != "theorem2_forms"));
    }
}
