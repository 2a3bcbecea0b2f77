//! Instance fixtures, seeded generators, and text I/O.
//!
//! The edge-list format is line-oriented UTF-8: a header `n m`, then `m`
//! lines `u w` with 1-indexed vertex labels. `#` starts a comment anywhere on
//! a line; blank lines are skipped. Duplicate arc lines collapse with a
//! warning. Internally vertices are 0-indexed; the label mapping is
//! `label = id + 1`.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::Error as GraphError;
use crate::graph::{ArcSubset, Digraph};
use crate::Result;

/// Errors from [`parse_edge_list`], carrying 1-based line numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no header line found")]
    EmptyInput,

    #[error("line {line}: header must be two integers `n m`")]
    InvalidHeader { line: usize },

    #[error("line {line}: expected two integer labels `u w`")]
    InvalidArc { line: usize },

    #[error("line {line}: label {label} outside [1, {n}]")]
    LabelOutOfRange { line: usize, label: i64, n: usize },

    #[error("line {line}: self-loop at label {label}")]
    SelfLoop { line: usize, label: usize },

    #[error("expected {expected} arc lines, found only {found}")]
    MissingArcs { expected: usize, found: usize },

    #[error("line {line}: content after the declared {expected} arcs")]
    TrailingContent { line: usize, expected: usize },
}

/// Non-fatal parse findings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    DuplicateArc { line: usize, tail: usize, head: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::DuplicateArc { line, tail, head } => {
                write!(f, "line {line}: duplicate arc {tail} {head} collapsed")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParsedEdgeList {
    pub graph: Digraph,
    pub warnings: Vec<ParseWarning>,
}

/// Parses the edge-list format. Labels are 1-indexed in the text and become
/// ids `label - 1`.
pub fn parse_edge_list(text: &str) -> std::result::Result<ParsedEdgeList, ParseError> {
    let mut significant = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, s)| !s.is_empty());

    let (header_line, header) = significant.next().ok_or(ParseError::EmptyInput)?;
    let mut fields = header.split_whitespace();
    let n: usize = fields
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError::InvalidHeader { line: header_line })?;
    let m: usize = fields
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError::InvalidHeader { line: header_line })?;
    if fields.next().is_some() {
        return Err(ParseError::InvalidHeader { line: header_line });
    }

    let mut arcs = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    let mut warnings = Vec::new();
    for read in 0..m {
        let (line, body) = significant.next().ok_or(ParseError::MissingArcs {
            expected: m,
            found: read,
        })?;
        let mut fields = body.split_whitespace();
        let tail: i64 = fields
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError::InvalidArc { line })?;
        let head: i64 = match fields.next().and_then(|s| s.parse().ok()) {
            Some(v) => v,
            None => return Err(ParseError::InvalidArc { line }),
        };
        if fields.next().is_some() {
            return Err(ParseError::InvalidArc { line });
        }
        for label in [tail, head] {
            if label < 1 || label > n as i64 {
                return Err(ParseError::LabelOutOfRange { line, label, n });
            }
        }
        if tail == head {
            return Err(ParseError::SelfLoop {
                line,
                label: tail as usize,
            });
        }
        let pair = (tail as usize - 1, head as usize - 1);
        if seen.insert(pair) {
            arcs.push(pair);
        } else {
            warnings.push(ParseWarning::DuplicateArc {
                line,
                tail: tail as usize,
                head: head as usize,
            });
        }
    }
    if let Some((line, _)) = significant.next() {
        return Err(ParseError::TrailingContent { line, expected: m });
    }

    let graph = Digraph::new(n, arcs).expect("labels validated during parsing");
    Ok(ParsedEdgeList { graph, warnings })
}

/// Canonical edge-list text: header, then arcs sorted by (tail, head) with
/// 1-indexed labels, one per line, trailing newline. Parsing the output
/// recovers the same arc set.
pub fn emit_edge_list(g: &Digraph) -> String {
    let mut pairs: Vec<(usize, usize)> = g.arcs().iter().map(|a| a.endpoints()).collect();
    pairs.sort_unstable();
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (t, h) in pairs {
        out.push_str(&format!("{} {}\n", t + 1, h + 1));
    }
    out
}

/// DOT text for the graph, 1-indexed labels. Arcs in `highlight` carry a
/// distinguishing color/penwidth attribute.
pub fn emit_dot(g: &Digraph, highlight: Option<&ArcSubset>) -> Result<String> {
    if let Some(subset) = highlight {
        if !subset.belongs_to(g) {
            return Err(GraphError::SubsetGraphMismatch {
                subset_m: subset.parent_arc_count(),
                m: g.m(),
            });
        }
    }
    let mut out = String::from("digraph {\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {};\n", v + 1));
    }
    for (i, arc) in g.arcs().iter().enumerate() {
        let (t, h) = arc.endpoints();
        let marked = highlight.map(|s| s.contains(i)).unwrap_or(false);
        if marked {
            out.push_str(&format!(
                "  {} -> {} [color=\"red\", penwidth=2];\n",
                t + 1,
                h + 1
            ));
        } else {
            out.push_str(&format!("  {} -> {};\n", t + 1, h + 1));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// The bundled 13-vertex, 16-arc showcase instance (labels 1..13 map to ids
/// 0..12). Strongly biconnected; its best strongly connected spanning
/// subgraph has 14 arcs while the best strongly biconnected one has 15.
pub fn figure1a() -> Digraph {
    Digraph::new(13, FIGURE1_ARCS.iter().map(|&(t, h)| (t - 1, h - 1)))
        .expect("fixture arcs are valid")
}

/// First 14 arcs of the showcase instance: strongly connected and as small
/// as possible for that, but label 5 cuts the underlying graph.
pub fn figure1b() -> Digraph {
    Digraph::new(13, FIGURE1_ARCS[..14].iter().map(|&(t, h)| (t - 1, h - 1)))
        .expect("fixture arcs are valid")
}

/// First 15 arcs of the showcase instance: a minimum strongly biconnected
/// spanning subgraph of the full instance.
pub fn figure1c() -> Digraph {
    Digraph::new(13, FIGURE1_ARCS[..15].iter().map(|&(t, h)| (t - 1, h - 1)))
        .expect("fixture arcs are valid")
}

// 1-indexed labels, in fixture order; also shipped as data/figure1.txt.
const FIGURE1_ARCS: [(usize, usize); 16] = [
    (5, 13),
    (13, 7),
    (7, 6),
    (6, 8),
    (8, 4),
    (4, 12),
    (12, 11),
    (11, 5),
    (5, 1),
    (1, 10),
    (10, 9),
    (9, 2),
    (2, 3),
    (3, 5),
    (12, 2),
    (7, 8),
];

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0` plus `extra` distinct random
/// non-cycle arcs. Always strongly biconnected for n >= 3; the cycle itself
/// shows the exact strongly biconnected optimum is n.
pub fn gen_hamiltonian_chords(n: usize, extra: usize, seed: u64) -> Result<Digraph> {
    if n < 3 {
        return Err(GraphError::TooFewVertices { n, min: 3 });
    }
    let max_extra = n * (n - 1) - n;
    if extra > max_extra {
        return Err(GraphError::TooManyExtraArcs {
            requested: extra,
            max: max_extra,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cycle: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let arcs = with_random_extras(n, cycle, extra, &mut rng);
    Digraph::new(n, arcs)
}

/// Strongly biconnected instance with exactly `target_m` arcs: a directed
/// Hamiltonian cycle over a random vertex permutation, topped up with random
/// distinct arcs. Fully determined by the seed.
pub fn gen_random_sb(n: usize, target_m: usize, seed: u64) -> Result<Digraph> {
    if n < 3 {
        return Err(GraphError::TooFewVertices { n, min: 3 });
    }
    let max_m = n * (n - 1);
    if target_m < n || target_m > max_m {
        return Err(GraphError::TargetArcsOutOfRange {
            target: target_m,
            min: n,
            max: max_m,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    shuffle(&mut perm, n, &mut rng);
    let cycle: Vec<(usize, usize)> = (0..n).map(|i| (perm[i], perm[(i + 1) % n])).collect();
    let arcs = with_random_extras(n, cycle, target_m - n, &mut rng);
    Digraph::new(n, arcs)
}

/// Appends `extra` arcs drawn uniformly without replacement from the
/// non-cycle slots. Sparse requests use rejection sampling so dense pools
/// are never materialized; dense ones shuffle the explicit pool. The branch
/// depends only on (n, extra), so a fixed seed still fixes the output.
fn with_random_extras(
    n: usize,
    cycle: Vec<(usize, usize)>,
    extra: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, usize)> {
    let pool_size = n * (n - 1) - cycle.len();
    let mut taken: HashSet<(usize, usize)> = cycle.iter().copied().collect();
    let mut arcs = cycle;
    let target = arcs.len() + extra;
    if 4 * extra <= pool_size {
        while arcs.len() < target {
            let u = rng.random_range(0..n);
            let w = rng.random_range(0..n);
            if u != w && taken.insert((u, w)) {
                arcs.push((u, w));
            }
        }
    } else {
        let mut pool: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |w| (u, w)))
            .filter(|&(u, w)| u != w && !taken.contains(&(u, w)))
            .collect();
        shuffle(&mut pool, extra, rng);
        arcs.extend(pool.into_iter().take(extra));
    }
    arcs
}

// Partial Fisher-Yates: after the call, items[..take] is a uniform sample
// without replacement. Hand-rolled so output depends only on the seed, not
// on rand's shuffle internals.
fn shuffle<T>(items: &mut [T], take: usize, rng: &mut ChaCha8Rng) {
    let len = items.len();
    for i in 0..take.min(len) {
        let j = rng.random_range(i..len);
        items.swap(i, j);
    }
}

/// Instance family selector for batch generation; the seed fully determines
/// the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    HamiltonianChords,
    RandomSb,
    Figure1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Arcs beyond the base Hamiltonian cycle.
    pub extra_edges: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Digraph> {
        match self.family {
            Family::HamiltonianChords => gen_hamiltonian_chords(self.n, self.extra_edges, self.seed),
            Family::RandomSb => gen_random_sb(self.n, self.n + self.extra_edges, self.seed),
            Family::Figure1 => Ok(figure1a()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_strongly_biconnected;
    use crate::exact::exact_msbss;

    #[test]
    fn parses_directed_triangle() {
        let parsed = parse_edge_list("3 3\n1 2\n2 3\n3 1").unwrap();
        assert_eq!(parsed.graph.m(), 3);
        assert!(parsed.warnings.is_empty());
        assert!(parsed.graph.has_arc(0.into(), 1.into()));
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# tiny\n\n3 3  # header\n1 2\n# middle\n2 3\n3 1\n";
        assert_eq!(parse_edge_list(text).unwrap().graph.m(), 3);
    }

    #[test]
    fn duplicate_line_collapses_with_warning() {
        let parsed = parse_edge_list("2 2\n1 2\n1 2").unwrap();
        assert_eq!(parsed.graph.m(), 1);
        assert_eq!(
            parsed.warnings,
            vec![ParseWarning::DuplicateArc {
                line: 3,
                tail: 1,
                head: 2
            }]
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("nope").unwrap_err(),
            ParseError::InvalidHeader { line: 1 }
        );
        assert_eq!(
            parse_edge_list("2 1\n1 x").unwrap_err(),
            ParseError::InvalidArc { line: 2 }
        );
        assert_eq!(
            parse_edge_list("2 1\n1 3").unwrap_err(),
            ParseError::LabelOutOfRange {
                line: 2,
                label: 3,
                n: 2
            }
        );
        assert_eq!(
            parse_edge_list("2 1\n2 2").unwrap_err(),
            ParseError::SelfLoop { line: 2, label: 2 }
        );
        assert_eq!(
            parse_edge_list("2 2\n1 2").unwrap_err(),
            ParseError::MissingArcs {
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            parse_edge_list("2 1\n1 2\n2 1").unwrap_err(),
            ParseError::TrailingContent {
                line: 3,
                expected: 1
            }
        );
    }

    #[test]
    fn emit_is_canonical() {
        let g = Digraph::new(3, [(2, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(emit_edge_list(&g), "3 3\n1 2\n2 3\n3 1\n");
        let lonely = Digraph::new(1, []).unwrap();
        assert_eq!(emit_edge_list(&lonely), "1 0\n");
    }

    #[test]
    fn showcase_round_trips() {
        let g = figure1a();
        let parsed = parse_edge_list(&emit_edge_list(&g)).unwrap();
        assert!(parsed.warnings.is_empty());
        let before: HashSet<_> = g.arcs().iter().map(|a| a.endpoints()).collect();
        let after: HashSet<_> = parsed.graph.arcs().iter().map(|a| a.endpoints()).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn dot_lists_every_arc() {
        let g = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let dot = emit_dot(&g, None).unwrap();
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(!dot.contains("penwidth"));
    }

    #[test]
    fn dot_highlights_the_given_subset() {
        let g = figure1a();
        let res = exact_msbss(&g).unwrap();
        let dot = emit_dot(&g, Some(&res.witness)).unwrap();
        assert_eq!(dot.matches("penwidth").count(), 15);
        assert_eq!(dot.matches(" -> ").count(), 16);
    }

    #[test]
    fn dot_rejects_foreign_subset() {
        let g = figure1a();
        let other = Digraph::new(3, [(0, 1)]).unwrap();
        assert!(emit_dot(&g, Some(&ArcSubset::full(&other))).is_err());
    }

    #[test]
    fn plain_cycle_is_strongly_biconnected() {
        let g = gen_hamiltonian_chords(5, 0, 0).unwrap();
        assert_eq!(g.m(), 5);
        assert!(is_strongly_biconnected(&g));
    }

    #[test]
    fn chord_generator_hits_requested_size() {
        let g = gen_hamiltonian_chords(6, 3, 7).unwrap();
        assert_eq!(g.m(), 9);
        assert!(is_strongly_biconnected(&g));
    }

    #[test]
    fn generators_validate_bounds() {
        assert_eq!(
            gen_hamiltonian_chords(2, 0, 0).unwrap_err(),
            GraphError::TooFewVertices { n: 2, min: 3 }
        );
        assert_eq!(
            gen_hamiltonian_chords(3, 4, 0).unwrap_err(),
            GraphError::TooManyExtraArcs { requested: 4, max: 3 }
        );
        assert_eq!(
            gen_random_sb(4, 3, 0).unwrap_err(),
            GraphError::TargetArcsOutOfRange {
                target: 3,
                min: 4,
                max: 12
            }
        );
    }

    #[test]
    fn random_sb_generator_is_deterministic() {
        let a = gen_random_sb(10, 18, 1).unwrap();
        let b = gen_random_sb(10, 18, 1).unwrap();
        assert_eq!(a.m(), 18);
        assert!(is_strongly_biconnected(&a));
        assert_eq!(emit_edge_list(&a), emit_edge_list(&b));
        let c = gen_random_sb(10, 18, 2).unwrap();
        assert_ne!(emit_edge_list(&a), emit_edge_list(&c));
    }

    #[test]
    fn tiny_random_sb_is_a_triangle() {
        let g = gen_random_sb(3, 3, 5).unwrap();
        assert_eq!(g.m(), 3);
        assert!(is_strongly_biconnected(&g));
    }

    #[test]
    fn genspec_maps_families() {
        let spec = GenSpec {
            family: Family::Figure1,
            n: 0,
            extra_edges: 0,
            seed: 0,
        };
        assert_eq!(spec.generate().unwrap(), figure1a());
        let spec = GenSpec {
            family: Family::RandomSb,
            n: 8,
            extra_edges: 4,
            seed: 9,
        };
        assert_eq!(spec.generate().unwrap().m(), 12);
    }
}
