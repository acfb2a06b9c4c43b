// Independent oracles over plain boolean matrices. Nothing here calls into
// the lattice or mining code; they only share the context type for input.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semlattice::{BitSet, FormalContext};

/// A random incidence table with no all-false rows.
#[derive(Debug, Clone)]
pub struct Table {
    pub m: usize,
    pub rows: Vec<Vec<bool>>,
}

impl Table {
    pub fn random(rng: &mut ChaCha8Rng, max_objects: usize, max_attrs: usize, p: f64) -> Table {
        loop {
            let n = rng.gen_range(1..=max_objects);
            let m = rng.gen_range(1..=max_attrs);
            let rows: Vec<Vec<bool>> = (0..n)
                .map(|_| (0..m).map(|_| rng.gen_bool(p)).collect::<Vec<_>>())
                .filter(|r| r.iter().any(|&x| x))
                .collect();
            if !rows.is_empty() {
                return Table { m, rows };
            }
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Attribute names sort in index order, so indices carry over unchanged.
    pub fn context(&self) -> FormalContext {
        let objects = (0..self.n()).map(|g| format!("g{g:02}")).collect();
        let attributes = (0..self.m).map(|a| format!("m{a:02}")).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| BitSet::from_indices(self.m, (0..self.m).filter(|&a| r[a])))
            .collect();
        FormalContext::from_rows(objects, attributes, rows).unwrap()
    }

    pub fn extent(&self, intent: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.n()).filter(|&g| intent.iter().all(|&a| self.rows[g][a])).collect()
    }

    pub fn intent(&self, extent: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.m).filter(|&a| extent.iter().all(|&g| self.rows[g][a])).collect()
    }

    /// Every concept, found by closing all `2^m` attribute subsets.
    pub fn concepts(&self) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << self.m) {
            let b: BTreeSet<usize> = (0..self.m).filter(|&a| mask >> a & 1 == 1).collect();
            let ext = self.extent(&b);
            let int = self.intent(&ext);
            out.insert((ext.into_iter().collect(), int.into_iter().collect()));
        }
        out
    }

    /// Covering pairs `(upper, lower)` by extents, via a three-way check.
    pub fn covers(&self) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
        let cs: Vec<BTreeSet<usize>> = self.concepts().into_iter().map(|(e, _)| e.into_iter().collect()).collect();
        let lt = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| x != y && x.is_subset(y);
        let mut out = BTreeSet::new();
        for u in &cs {
            for l in &cs {
                if lt(l, u) && !cs.iter().any(|k| lt(l, k) && lt(k, u)) {
                    out.insert((u.iter().copied().collect(), l.iter().copied().collect()));
                }
            }
        }
        out
    }

    pub fn support(&self, items: &[usize]) -> usize {
        self.rows.iter().filter(|r| items.iter().all(|&a| r[a])).count()
    }

    /// All attribute subsets with `min ≤ size ≤ max` and support `≥ theta`.
    pub fn itemsets(&self, theta: usize, min: usize, max: usize) -> BTreeMap<Vec<usize>, usize> {
        let mut out = BTreeMap::new();
        for mask in 0u32..(1 << self.m) {
            let items: Vec<usize> = (0..self.m).filter(|&a| mask >> a & 1 == 1).collect();
            if items.len() < min || items.len() > max {
                continue;
            }
            let s = self.support(&items);
            if s >= theta {
                out.insert(items, s);
            }
        }
        out
    }

    /// `(antecedent, consequent) → (joint, antecedent count)` for every split
    /// of every frequent set, with both ratios strictly above the thresholds.
    pub fn rules(
        &self,
        theta: usize,
        min: usize,
        max: usize,
        min_supp: f64,
        min_conf: f64,
    ) -> BTreeMap<(Vec<usize>, Vec<usize>), (usize, usize)> {
        let n = self.n();
        let mut out = BTreeMap::new();
        for (items, joint) in self.itemsets(theta, min, max) {
            if items.len() < 2 {
                continue;
            }
            for mask in 1u32..(1 << items.len()) - 1 {
                let (a, b): (Vec<usize>, Vec<usize>) = {
                    let mut a = Vec::new();
                    let mut b = Vec::new();
                    for (p, &x) in items.iter().enumerate() {
                        if mask >> p & 1 == 1 {
                            a.push(x)
                        } else {
                            b.push(x)
                        }
                    }
                    (a, b)
                };
                let ac = self.support(&a);
                if joint as f64 / n as f64 > min_supp && joint as f64 / ac as f64 > min_conf {
                    out.insert((a, b), (joint, ac));
                }
            }
        }
        out
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_subset(rng: &mut ChaCha8Rng, universe: usize) -> BTreeSet<usize> {
    (0..universe).filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn to_bits(universe: usize, s: &BTreeSet<usize>) -> BitSet {
    BitSet::from_indices(universe, s.iter().copied())
}

pub fn from_bits(b: &BitSet) -> BTreeSet<usize> {
    b.iter().collect()
}

/// The four-object context used throughout: rows {a,b}, {a,c}, {a,b,c}, {d}.
pub fn c1() -> FormalContext {
    FormalContext::from_json(
        r#"{"objects":["1","2","3","4"],"attributes":["a","b","c","d"],"rows":["1100","1010","1110","0001"]}"#,
    )
    .unwrap()
}

pub fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> PathBuf {
    manifest().join("tests/fixtures").join(name)
}

pub fn golden_dir() -> PathBuf {
    manifest().join("tests/golden")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semlattice")).args(args).output().unwrap()
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Runs every command over the bundled corpus the way the golden files were
/// produced: itemsets over all dictionary lexemes, the rest over the field.
pub fn run_fixture_pipeline(out: &Path) -> Result<(), String> {
    let config = fixture("fixture.toml");
    let input = fixture("corpus.jsonl");
    let field = fixture("field.txt");
    let base = ["--config", p(&config), "--input", p(&input), "--out-dir", p(out)];
    let with_field = ["--field", p(&field)];
    for args in [
        [&base[..], &["dict"]].concat(),
        [&base[..], &["itemsets"]].concat(),
        [&base[..], &with_field, &["lattice"]].concat(),
        [&base[..], &with_field, &["rules"]].concat(),
        [&base[..], &with_field, &["ideal-filter", "android", "developer"]].concat(),
    ] {
        let o = run(&args);
        if !o.status.success() {
            return Err(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)));
        }
    }
    Ok(())
}
