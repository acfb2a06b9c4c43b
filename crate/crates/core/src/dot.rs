//! Hasse diagram export in Graphviz DOT.

use std::fmt::Write;

use crate::context::FormalContext;
use crate::lattice::{format_set, ConceptLattice};
use crate::rules::format_percent_fixed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Labeling {
    /// Every node shows its whole intent.
    #[default]
    Full,
    /// A node shows only the attributes whose attribute concept it is.
    Reduced,
}

impl std::str::FromStr for Labeling {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "full" => Ok(Labeling::Full),
            "reduced" => Ok(Labeling::Reduced),
            other => Err(crate::Error::Config(format!("unknown labeling {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DotOptions {
    pub labeling: Labeling,
    pub hide_empty_bottom: bool,
    pub show_extent_pct: bool,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nodes `c0..cN` in lattice order, edges upper → lower, one `rank=same`
/// group per longest-path depth from the top.
pub fn to_dot(ctx: &FormalContext, lattice: &ConceptLattice, opts: &DotOptions) -> String {
    let bottom = lattice.bottom();
    let hidden = |i: usize| {
        opts.hide_empty_bottom && i == bottom && lattice.concept(i).extent.is_empty() && bottom != lattice.top()
    };

    let reduced: Vec<Vec<&str>> = match opts.labeling {
        Labeling::Full => Vec::new(),
        Labeling::Reduced => {
            let mut own = vec![Vec::new(); lattice.len()];
            for (a, c) in lattice.attribute_concepts(ctx).into_iter().enumerate() {
                own[c].push(ctx.attributes()[a].as_str());
            }
            own
        }
    };

    let mut out = String::new();
    out.push_str("digraph lattice {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [shape=box];\n");
    for (i, c) in lattice.concepts().iter().enumerate() {
        if hidden(i) {
            continue;
        }
        let mut label = match opts.labeling {
            Labeling::Full => escape(&format_set(&ctx.attribute_names(&c.intent))),
            Labeling::Reduced => escape(&reduced[i].join(", ")),
        };
        if opts.show_extent_pct {
            if !label.is_empty() {
                label.push_str("\\n");
            }
            label.push_str(&format_percent_fixed(c.extent.count(), ctx.object_count()));
        }
        writeln!(out, "  c{i} [label=\"{label}\"];").unwrap();
    }

    let ranks = lattice.ranks();
    let depth = ranks.iter().copied().max().unwrap_or(0);
    for r in 0..=depth {
        let members: Vec<String> = (0..lattice.len())
            .filter(|&i| ranks[i] == r && !hidden(i))
            .map(|i| format!("c{i}"))
            .collect();
        if !members.is_empty() {
            writeln!(out, "  {{ rank=same; {}; }}", members.join("; ")).unwrap();
        }
    }

    for &(u, l) in lattice.edges() {
        if hidden(u) || hidden(l) {
            continue;
        }
        writeln!(out, "  c{u} -> c{l};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::tests::c1;
    use crate::lattice::enumerate_concepts;

    fn count(dot: &str, pat: &str) -> usize {
        dot.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn c1_full() {
        let ctx = c1();
        let lat = enumerate_concepts(&ctx).unwrap();
        let dot = to_dot(&ctx, &lat, &DotOptions::default());
        assert_eq!(count(&dot, "[label="), 7);
        assert_eq!(count(&dot, " -> "), 8);
        assert!(dot.contains("c2 [label=\"{a, b}\"];"));
        assert!(dot.contains("c0 [label=\"{}\"];"));
        assert!(dot.contains("{ rank=same; c2; c3; }"));
    }

    #[test]
    fn c1_hidden_bottom() {
        let ctx = c1();
        let lat = enumerate_concepts(&ctx).unwrap();
        let opts = DotOptions {
            hide_empty_bottom: true,
            ..Default::default()
        };
        let dot = to_dot(&ctx, &lat, &opts);
        assert_eq!(count(&dot, "[label="), 6);
        assert_eq!(count(&dot, " -> "), 6);
        assert!(!dot.contains("c6"));
    }

    #[test]
    fn c1_reduced_with_pct() {
        let ctx = c1();
        let lat = enumerate_concepts(&ctx).unwrap();
        let opts = DotOptions {
            labeling: Labeling::Reduced,
            show_extent_pct: true,
            ..Default::default()
        };
        let dot = to_dot(&ctx, &lat, &opts);
        assert!(dot.contains("c0 [label=\"100.00%\"];"));
        assert!(dot.contains("c1 [label=\"a\\n75.00%\"];"));
        assert!(dot.contains("c4 [label=\"25.00%\"];"));
        assert!(dot.contains("c5 [label=\"d\\n25.00%\"];"));
    }

    #[test]
    fn nonempty_bottom_is_kept() {
        let ctx = crate::FormalContext::from_json(r#"{"objects":["x","y"],"attributes":["aa","bb"],"rows":["11","10"]}"#)
            .unwrap();
        let lat = enumerate_concepts(&ctx).unwrap();
        let opts = DotOptions {
            hide_empty_bottom: true,
            ..Default::default()
        };
        let dot = to_dot(&ctx, &lat, &opts);
        assert_eq!(count(&dot, "[label="), 2);
        assert_eq!(count(&dot, " -> "), 1);
    }
}
