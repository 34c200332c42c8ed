//! Seeded random tableaux with two glued columns of equal height.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tableau::{ArrowSpec, TableauSpec};

const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusBounds {
    pub max_columns: usize,
    pub max_cells: usize,
    pub max_junction: usize,
    pub max_labels: usize,
}

impl Default for CorpusBounds {
    fn default() -> Self {
        CorpusBounds {
            max_columns: 4,
            max_cells: 8,
            max_junction: 3,
            max_labels: 3,
        }
    }
}

impl CorpusBounds {
    fn check(&self) -> Result<()> {
        if self.max_columns < 2
            || self.max_cells < 2
            || self.max_junction < 1
            || self.max_labels < 1
        {
            return Err(Error::Precondition(format!(
                "unsatisfiable corpus bounds: {} columns, {} cells, junction {}, {} labels",
                self.max_columns, self.max_cells, self.max_junction, self.max_labels
            )));
        }
        Ok(())
    }
}

/// `count` valid tableaux drawn deterministically from `seed`. Each carries
/// its glued columns in `q`.
pub fn gen_corpus(seed: u64, bounds: &CorpusBounds, count: usize) -> Result<Vec<TableauSpec>> {
    bounds.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen_one(&mut rng, bounds)).collect()
}

fn gen_one(rng: &mut ChaCha8Rng, bounds: &CorpusBounds) -> Result<TableauSpec> {
    for _ in 0..MAX_ATTEMPTS {
        if let Some(spec) = attempt(rng, bounds) {
            spec.build()?;
            return Ok(spec);
        }
    }
    Err(Error::Precondition(format!(
        "no tableau found within corpus bounds after {MAX_ATTEMPTS} attempts"
    )))
}

fn attempt(rng: &mut ChaCha8Rng, b: &CorpusBounds) -> Option<TableauSpec> {
    let n = rng.gen_range(1..=b.max_junction.min(b.max_cells / 2));
    let budget = b.max_cells - 2 * n;
    let m = rng.gen_range(2..=b.max_columns.min(budget + 2));
    let mut dims = vec![0; m];
    let (q1, q2) = {
        let mut cols: Vec<usize> = (0..m).collect();
        cols.shuffle(rng);
        (cols[0].min(cols[1]), cols[0].max(cols[1]))
    };
    dims[q1] = n;
    dims[q2] = n;
    let mut left = budget;
    let others: Vec<usize> = (0..m).filter(|&c| c != q1 && c != q2).collect();
    for (k, &c) in others.iter().enumerate() {
        let reserve = others.len() - k - 1;
        let h = rng.gen_range(1..=left - reserve);
        dims[c] = h;
        left -= h;
    }
    if dims.iter().sum::<usize>() % 2 == 1 {
        return None;
    }

    let mut cells: Vec<[usize; 2]> = dims
        .iter()
        .enumerate()
        .flat_map(|(c, &h)| (1..=h).map(move |r| [c + 1, r]))
        .collect();
    cells.shuffle(rng);
    let mut pairs: Vec<([usize; 2], [usize; 2])> = cells
        .chunks(2)
        .map(|p| {
            if rng.gen_bool(0.5) {
                (p[0], p[1])
            } else {
                (p[1], p[0])
            }
        })
        .collect();
    pairs.sort();

    let mut by_type: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, (tail, head)) in pairs.iter().enumerate() {
        by_type.entry((tail[0], head[0])).or_default().push(i);
    }
    if by_type.len() > b.max_labels {
        return None;
    }
    let mut groups: Vec<Vec<usize>> = by_type.into_values().collect();
    while groups.len() < b.max_labels && rng.gen_bool(0.5) {
        let splittable: Vec<usize> = (0..groups.len()).filter(|&g| groups[g].len() > 1).collect();
        let Some(&g) = splittable.choose(rng) else {
            break;
        };
        let k = rng.gen_range(1..groups[g].len());
        let rest = groups[g].split_off(k);
        groups.push(rest);
    }
    groups.shuffle(rng);
    let mut labels = vec![0u32; pairs.len()];
    for (l, g) in groups.iter().enumerate() {
        for &i in g {
            labels[i] = l as u32 + 1;
        }
    }
    let arrows = pairs
        .iter()
        .zip(labels)
        .map(|(&(tail, head), label)| ArrowSpec { tail, head, label })
        .collect();
    Some(TableauSpec {
        dims,
        arrows,
        matrices: BTreeMap::new(),
        q: Some([q1 + 1, q2 + 1]),
    })
}
