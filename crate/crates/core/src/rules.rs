//! Frequent keyword sets and association rules over a formal context.
//!
//! Itemsets are mined level-wise (Apriori): candidates of size `k` are joined
//! from frequent `(k-1)`-sets sharing a `(k-2)`-prefix and pruned unless
//! every `(k-1)`-subset is frequent. Rules are the splits `A → B` of a single
//! frequent itemset `F = A ∪ B`.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::lattice::format_set;

#[derive(Debug, Clone, PartialEq)]
pub struct MiningParams {
    /// Absolute support count threshold.
    pub theta: usize,
    /// Require `|F′| > theta` instead of `|F′| ≥ theta`.
    pub strict_theta: bool,
    pub min_size: usize,
    pub max_size: usize,
    /// Rules need `support > min_supp`.
    pub min_supp: f64,
    /// Rules need `confidence > min_conf`.
    pub min_conf: f64,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams {
            theta: 10,
            strict_theta: false,
            min_size: 2,
            max_size: 5,
            min_supp: 0.0,
            min_conf: 0.0,
        }
    }
}

impl MiningParams {
    pub fn validate(&self) -> Result<()> {
        if self.theta < 1 {
            return Err(Error::Config("theta must be at least 1".into()));
        }
        if self.min_size < 1 || self.min_size > self.max_size {
            return Err(Error::Config(format!(
                "itemset size bounds {}..{} are invalid",
                self.min_size, self.max_size
            )));
        }
        for (name, v) in [("min_supp", self.min_supp), ("min_conf", self.min_conf)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(())
    }

    fn is_frequent(&self, count: usize) -> bool {
        if self.strict_theta {
            count > self.theta
        } else {
            count >= self.theta
        }
    }
}

/// A frequent attribute set. `items` are attribute indices, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Itemset {
    pub items: Vec<usize>,
    pub support_count: usize,
}

impl Itemset {
    pub fn labels(&self, ctx: &FormalContext) -> Vec<String> {
        self.items.iter().map(|&i| ctx.attributes()[i].clone()).collect()
    }
}

fn support_of(ctx: &FormalContext, items: &[usize]) -> usize {
    ctx.support_count(&BitSet::from_indices(ctx.attribute_count(), items.iter().copied()))
}

/// Frequent itemsets with `min_size ≤ |F| ≤ max_size`, sorted by size then
/// lexicographically.
pub fn mine_frequent_itemsets(ctx: &FormalContext, params: &MiningParams) -> Vec<Itemset> {
    let m = ctx.attribute_count();
    let mut out = Vec::new();
    let mut level: Vec<(Vec<usize>, BitSet)> = (0..m)
        .filter(|&a| params.is_frequent(ctx.column(a).count()))
        .map(|a| (vec![a], ctx.column(a).clone()))
        .collect();

    let mut k = 1;
    while !level.is_empty() && k <= params.max_size {
        if k >= params.min_size {
            out.extend(level.iter().map(|(items, ext)| Itemset {
                items: items.clone(),
                support_count: ext.count(),
            }));
        }
        if k == params.max_size {
            break;
        }
        let frequent: HashSet<&[usize]> = level.iter().map(|(items, _)| items.as_slice()).collect();
        let mut next = Vec::new();
        for (i, (a, ext_a)) in level.iter().enumerate() {
            for (b, _) in &level[i + 1..] {
                if a[..k - 1] != b[..k - 1] {
                    // level is sorted, so no later set shares a's prefix
                    break;
                }
                let last = b[k - 1];
                let mut cand = a.clone();
                cand.push(last);
                let all_subsets_frequent = (0..k - 1).all(|skip| {
                    let sub: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    frequent.contains(sub.as_slice())
                });
                if !all_subsets_frequent {
                    continue;
                }
                let ext = ext_a.intersection(ctx.column(last));
                if params.is_frequent(ext.count()) {
                    next.push((cand, ext));
                }
            }
        }
        level = next;
        k += 1;
    }
    out
}

fn check_parts(ctx: &FormalContext, a: &BitSet, b: &BitSet) -> Result<()> {
    if let Some(x) = a.intersection(b).iter().next() {
        return Err(Error::OverlappingRule(ctx.attributes()[x].clone()));
    }
    if a.is_empty() && b.is_empty() {
        return Err(Error::EmptyRule);
    }
    Ok(())
}

/// `|(A ∪ B)′| / |objects|`.
pub fn support<S: AsRef<str>>(ctx: &FormalContext, a: &[S], b: &[S]) -> Result<f64> {
    let (a, b) = (ctx.attribute_set(a)?, ctx.attribute_set(b)?);
    check_parts(ctx, &a, &b)?;
    Ok(ctx.support_count(&a.union(&b)) as f64 / ctx.object_count() as f64)
}

/// `|(A ∪ B)′| / |A′|`.
pub fn confidence<S: AsRef<str>>(ctx: &FormalContext, a: &[S], b: &[S]) -> Result<f64> {
    let (a, b) = (ctx.attribute_set(a)?, ctx.attribute_set(b)?);
    check_parts(ctx, &a, &b)?;
    if a.is_empty() {
        return Err(Error::EmptyRule);
    }
    let denom = ctx.support_count(&a);
    if denom == 0 {
        return Err(Error::UndefinedConfidence);
    }
    Ok(ctx.support_count(&a.union(&b)) as f64 / denom as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssociationRule {
    pub antecedent: Vec<usize>,
    pub consequent: Vec<usize>,
    pub support: f64,
    pub confidence: f64,
    /// `|(A ∪ B)′|`
    pub joint_count: usize,
    /// `|A′|`
    pub antecedent_count: usize,
    pub object_count: usize,
}

impl AssociationRule {
    /// Confidence is exactly 1: every object with `A` also has `B`.
    pub fn is_implication(&self) -> bool {
        self.joint_count == self.antecedent_count
    }

    fn cmp_confidence(&self, other: &Self) -> Ordering {
        // joint/ante vs joint'/ante' by cross multiplication
        (self.joint_count * other.antecedent_count).cmp(&(other.joint_count * self.antecedent_count))
    }
}

pub fn is_implication(rule: &AssociationRule) -> bool {
    rule.is_implication()
}

/// `num / den > threshold`, compared on the same `f64` value a rule stores.
fn exceeds(num: usize, den: usize, threshold: f64) -> bool {
    num as f64 / den as f64 > threshold
}

/// Every split of every mined itemset with support and confidence strictly
/// above the thresholds, sorted by confidence desc, support desc, then
/// antecedent and consequent lexicographically.
pub fn generate_rules(ctx: &FormalContext, itemsets: &[Itemset], params: &MiningParams) -> Vec<AssociationRule> {
    let n = ctx.object_count();
    let mut rules = Vec::new();
    for set in itemsets.iter().filter(|s| s.items.len() >= 2) {
        let k = set.items.len();
        assert!(k < 64, "cannot split an itemset of {k} attributes");
        let joint = set.support_count;
        if !exceeds(joint, n, params.min_supp) {
            continue;
        }
        for mask in 1u64..(1u64 << k) - 1 {
            let (mut ante, mut cons) = (Vec::new(), Vec::new());
            for (p, &item) in set.items.iter().enumerate() {
                if mask >> p & 1 == 1 {
                    ante.push(item);
                } else {
                    cons.push(item);
                }
            }
            let ante_count = support_of(ctx, &ante);
            if !exceeds(joint, ante_count, params.min_conf) {
                continue;
            }
            rules.push(AssociationRule {
                antecedent: ante,
                consequent: cons,
                support: joint as f64 / n as f64,
                confidence: joint as f64 / ante_count as f64,
                joint_count: joint,
                antecedent_count: ante_count,
                object_count: n,
            });
        }
    }
    rules.sort_by(|a, b| {
        b.cmp_confidence(a)
            .then_with(|| b.joint_count.cmp(&a.joint_count))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    rules
}

/// Percentage of `num / den`, rounded half-up to two decimals, trailing
/// zeros trimmed to one decimal: `100.0%`, `20.47%`, `0.5%`.
pub fn format_percent(num: usize, den: usize) -> String {
    let mut s = format_percent_fixed(num, den);
    s.pop();
    while s.ends_with('0') && !s.ends_with(".0") {
        s.pop();
    }
    s.push('%');
    s
}

/// Percentage of `num / den`, rounded half-up, always two decimals: `50.00%`.
pub fn format_percent_fixed(num: usize, den: usize) -> String {
    if den == 0 {
        return "0.00%".to_string();
    }
    let (num, den) = (num as u128, den as u128);
    let hundredths = (num * 20_000 + den) / (2 * den);
    format!("{}.{:02}%", hundredths / 100, hundredths % 100)
}

/// `{item, item}<TAB>count` per line.
pub fn itemsets_to_text(ctx: &FormalContext, itemsets: &[Itemset]) -> String {
    let mut s = String::new();
    for set in itemsets {
        s.push_str(&format_set(&set.labels(ctx)));
        s.push('\t');
        s.push_str(&set.support_count.to_string());
        s.push('\n');
    }
    s
}

pub const RULES_HEADER: &str = "antecedent\tconsequent\tsupport\tconfidence\timplication";

/// Tab-separated rule table with a header row.
pub fn rules_to_tsv(ctx: &FormalContext, rules: &[AssociationRule]) -> String {
    let name = |v: &[usize]| format_set(&v.iter().map(|&i| ctx.attributes()[i].as_str()).collect::<Vec<_>>());
    let mut s = String::from(RULES_HEADER);
    s.push('\n');
    for r in rules {
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            name(&r.antecedent),
            name(&r.consequent),
            format_percent(r.joint_count, r.object_count),
            format_percent(r.joint_count, r.antecedent_count),
            if r.is_implication() { "yes" } else { "no" },
        ));
    }
    s
}
