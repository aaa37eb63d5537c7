//! Line-oriented instance files.
//!
//! ```text
//! p graph <n>        header, first non-comment line
//! e <u> <v>          edge (1-based ids)
//! vcolor <v> <c>     motif: vertex color
//! motif <c> <count>  motif: multiset entry
//! pair <s> <t>       paths: terminal pair
//! precolor <v> <c>   precolor: precolored vertex
//! colors <r>         precolor: color budget
//! ```
//!
//! `#` starts a comment that runs to the end of the line. At most one
//! problem's annotations may appear in a file; a bare graph is also valid.

use std::fmt::Write as _;

use crate::error::{GraphError, ParseError, ParseErrorKind, ValidationError};
use crate::graph::{Graph, Vertex};
use crate::instance::{Color, ColorMultiset, Instance, MotifInstance, PathsInstance, PrecolorInstance};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Family {
    Motif,
    Paths,
    Precolor,
}

struct Parser {
    n: usize,
    family: Option<Family>,
    adjacency: Vec<Vec<Vertex>>,
    edge_lines: Vec<(Vertex, Vertex, usize)>,
    vcolor: Vec<Option<(Color, usize)>>,
    motif: ColorMultiset,
    pairs: Vec<(Vertex, Vertex, usize)>,
    precolor: Vec<Option<(Color, usize)>>,
    colors: Option<(Color, usize)>,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::at(line, ParseErrorKind::Syntax(msg.into()))
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

impl Parser {
    fn vertex(&self, tok: Option<&str>, line: usize) -> Result<Vertex, ParseError> {
        let id: usize = number(tok, line, "vertex id")?;
        if id == 0 || id > self.n {
            return Err(ParseError::at(
                line,
                ValidationError::Graph(GraphError::VertexOutOfRange { vertex: id, n: self.n }),
            ));
        }
        Ok(id - 1)
    }

    fn color(tok: Option<&str>, line: usize) -> Result<Color, ParseError> {
        let c: Color = number(tok, line, "color")?;
        if c == 0 {
            return Err(ParseError::at(line, ValidationError::ZeroColor));
        }
        Ok(c)
    }

    fn enter(&mut self, family: Family, line: usize) -> Result<(), ParseError> {
        match self.family {
            Some(f) if f != family => Err(ParseError::at(line, ParseErrorKind::MixedProblems)),
            _ => {
                self.family = Some(family);
                Ok(())
            }
        }
    }

    fn line(&mut self, keyword: &str, args: &[&str], line: usize) -> Result<(), ParseError> {
        let mut it = args.iter().copied();
        match keyword {
            "e" => {
                let u = self.vertex(it.next(), line)?;
                let v = self.vertex(it.next(), line)?;
                if u == v {
                    return Err(ParseError::at(line, ValidationError::Graph(GraphError::SelfLoop(u))));
                }
                self.adjacency[u].push(v);
                self.adjacency[v].push(u);
                self.edge_lines.push((u, v, line));
            }
            "vcolor" => {
                self.enter(Family::Motif, line)?;
                let v = self.vertex(it.next(), line)?;
                let c = Self::color(it.next(), line)?;
                if self.vcolor[v].replace((c, line)).is_some() {
                    return Err(ParseError::at(line, ValidationError::DuplicateVertexColor(v)));
                }
            }
            "motif" => {
                self.enter(Family::Motif, line)?;
                let c = Self::color(it.next(), line)?;
                let count: usize = number(it.next(), line, "motif count")?;
                if count == 0 {
                    return Err(ParseError::at(line, ValidationError::ZeroMotifCount(c)));
                }
                if self.motif.insert(c, count).is_some() {
                    return Err(ParseError::at(line, ValidationError::DuplicateMotifColor(c)));
                }
            }
            "pair" => {
                self.enter(Family::Paths, line)?;
                let s = self.vertex(it.next(), line)?;
                let t = self.vertex(it.next(), line)?;
                self.pairs.push((s, t, line));
            }
            "precolor" => {
                self.enter(Family::Precolor, line)?;
                let v = self.vertex(it.next(), line)?;
                let c = Self::color(it.next(), line)?;
                if self.precolor[v].replace((c, line)).is_some() {
                    return Err(ParseError::at(line, ValidationError::DuplicatePrecolor(v)));
                }
            }
            "colors" => {
                self.enter(Family::Precolor, line)?;
                let r: Color = number(it.next(), line, "color budget")?;
                if r == 0 {
                    return Err(ParseError::at(line, ValidationError::ZeroColorBudget));
                }
                if self.colors.replace((r, line)).is_some() {
                    return Err(ParseError::at(line, ValidationError::DuplicateColorBudget));
                }
            }
            "p" => return Err(syntax(line, "header may appear only once")),
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
        if it.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
        Ok(())
    }

    fn finish(self) -> Result<Instance, ParseError> {
        let Parser { n, family, adjacency, edge_lines, vcolor, motif, pairs, precolor, colors } = self;
        let graph = Graph::from_unsorted_adjacency(adjacency).map_err(|e| {
            // attribute the duplicate to the second line that declared it
            let line = match &e {
                GraphError::DuplicateEdge(a, b) => {
                    edge_lines.iter().filter(|&&(u, v, _)| (u.min(v), u.max(v)) == (*a, *b)).nth(1).map(|&(_, _, l)| l)
                }
                _ => None,
            };
            ParseError { line, kind: ValidationError::Graph(e).into() }
        })?;

        match family {
            None => Ok(Instance::Graph(graph)),
            Some(Family::Motif) => {
                let mut colors = Vec::with_capacity(n);
                for (v, c) in vcolor.iter().enumerate() {
                    match c {
                        Some((c, _)) => colors.push(*c),
                        None => return Err(ParseError::global(ValidationError::MissingVertexColor(v))),
                    }
                }
                MotifInstance::new(graph, colors, motif).map(Instance::Motif).map_err(ParseError::global)
            }
            Some(Family::Paths) => {
                let mut seen: Vec<bool> = vec![false; n];
                for &(s, t, line) in &pairs {
                    if s == t {
                        return Err(ParseError::at(line, ValidationError::IdenticalEndpoints(s)));
                    }
                    for v in [s, t] {
                        if std::mem::replace(&mut seen[v], true) {
                            return Err(ParseError::at(line, ValidationError::OverlappingTerminal(v)));
                        }
                    }
                }
                let pairs = pairs.into_iter().map(|(s, t, _)| (s, t)).collect();
                PathsInstance::new(graph, pairs).map(Instance::Paths).map_err(ParseError::global)
            }
            Some(Family::Precolor) => {
                let Some((r, _)) = colors else {
                    return Err(ParseError::global(ValidationError::MissingColorBudget));
                };
                for (v, c) in precolor.iter().enumerate() {
                    if let Some((c, line)) = *c {
                        if c > r {
                            return Err(ParseError::at(
                                line,
                                ValidationError::ColorOutOfRange { vertex: v, color: c, budget: r },
                            ));
                        }
                    }
                }
                for (u, v) in graph.edges() {
                    if let (Some((a, la)), Some((b, lb))) = (precolor[u], precolor[v]) {
                        if a == b {
                            return Err(ParseError::at(la.max(lb), ValidationError::ImproperPrecoloring(u, v, a)));
                        }
                    }
                }
                let precolor = precolor.into_iter().map(|c| c.map(|(c, _)| c)).collect();
                PrecolorInstance::new(graph, precolor, r).map(Instance::Precolor).map_err(ParseError::global)
            }
        }
    }
}

/// Parses an instance file. Vertex ids in the text are 1-based.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut parser: Option<Parser> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().expect("non-empty line has a token");
        let args: Vec<&str> = tokens.collect();
        match parser.as_mut() {
            None => {
                if keyword != "p" {
                    return Err(ParseError::at(line, ParseErrorKind::MissingHeader));
                }
                if args.first() != Some(&"graph") {
                    return Err(syntax(line, "expected `p graph <n>`"));
                }
                let n: usize = number(args.get(1).copied(), line, "vertex count")?;
                if args.len() > 2 {
                    return Err(syntax(line, "trailing tokens"));
                }
                parser = Some(Parser {
                    n,
                    family: None,
                    adjacency: vec![Vec::new(); n],
                    edge_lines: Vec::new(),
                    vcolor: vec![None; n],
                    motif: ColorMultiset::new(),
                    pairs: Vec::new(),
                    precolor: vec![None; n],
                    colors: None,
                });
            }
            Some(p) => p.line(keyword, &args, line)?,
        }
    }
    parser.ok_or_else(|| ParseError::global(ParseErrorKind::MissingHeader))?.finish()
}

/// Writes an instance in the canonical form read by [`parse_instance`].
pub fn serialize_instance(instance: &Instance) -> String {
    let graph = instance.graph();
    let mut out = String::new();
    writeln!(out, "p graph {}", graph.n()).unwrap();
    for (u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    match instance {
        Instance::Graph(_) => {}
        Instance::Motif(m) => {
            for (v, c) in m.vertex_colors().iter().enumerate() {
                writeln!(out, "vcolor {} {}", v + 1, c).unwrap();
            }
            for (c, count) in m.motif() {
                writeln!(out, "motif {c} {count}").unwrap();
            }
        }
        Instance::Paths(p) => {
            for &(s, t) in p.pairs() {
                writeln!(out, "pair {} {}", s + 1, t + 1).unwrap();
            }
        }
        Instance::Precolor(p) => {
            writeln!(out, "colors {}", p.num_colors()).unwrap();
            for (v, c) in p.precoloring().iter().enumerate() {
                if let Some(c) = c {
                    writeln!(out, "precolor {} {}", v + 1, c).unwrap();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn parses_plain_graph() {
        let inst = parse_instance("p graph 3\ne 1 2\ne 2 3").unwrap();
        let Instance::Graph(g) = inst else { panic!("expected a bare graph") };
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn self_loop_is_rejected_with_line() {
        let err = parse_instance("p graph 2\ne 1 1").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert_eq!(err.kind, ParseErrorKind::Invalid(ValidationError::Graph(GraphError::SelfLoop(0))));
    }

    #[test]
    fn improper_precoloring_is_rejected() {
        let err = parse_instance("p graph 4\ne 1 2\nprecolor 1 1\nprecolor 2 1\ncolors 2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Invalid(ValidationError::ImproperPrecoloring(0, 1, 1)));
        assert_eq!(err.line, Some(4));
    }

    #[test]
    fn other_errors() {
        let dup = parse_instance("p graph 3\ne 1 2\n# again\ne 2 1\n").unwrap_err();
        assert_eq!(dup.line, Some(4));
        assert_eq!(dup.kind, ParseErrorKind::Invalid(ValidationError::Graph(GraphError::DuplicateEdge(0, 1))));

        let range = parse_instance("p graph 3\ne 1 4").unwrap_err();
        assert_eq!(range.line, Some(2));

        let budget = parse_instance("p graph 2\nprecolor 1 3\ncolors 2").unwrap_err();
        assert!(matches!(budget.kind, ParseErrorKind::Invalid(ValidationError::ColorOutOfRange { .. })));

        let overlap = parse_instance("p graph 4\npair 1 2\npair 2 3").unwrap_err();
        assert_eq!(overlap.line, Some(3));
        assert_eq!(overlap.kind, ParseErrorKind::Invalid(ValidationError::OverlappingTerminal(1)));

        let syntax = parse_instance("p graph 2\nedge 1 2").unwrap_err();
        assert_eq!(syntax.line, Some(2));
        assert!(matches!(syntax.kind, ParseErrorKind::Syntax(_)));

        let header = parse_instance("# nothing\ne 1 2").unwrap_err();
        assert_eq!(header.kind, ParseErrorKind::MissingHeader);

        let mixed = parse_instance("p graph 2\npair 1 2\ncolors 3").unwrap_err();
        assert_eq!(mixed.kind, ParseErrorKind::MixedProblems);

        let uncolored = parse_instance("p graph 2\nvcolor 1 1\nmotif 1 1").unwrap_err();
        assert_eq!(uncolored.kind, ParseErrorKind::Invalid(ValidationError::MissingVertexColor(1)));

        let no_budget = parse_instance("p graph 2\nprecolor 1 1").unwrap_err();
        assert_eq!(no_budget.kind, ParseErrorKind::Invalid(ValidationError::MissingColorBudget));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a triangle\n\np graph 3 # header\ne 1 2\ne 2 3\ne 1 3\nvcolor 1 1\nvcolor 2 2\nvcolor 3 3\nmotif 1 1\nmotif 2 1\n";
        let Instance::Motif(m) = parse_instance(text).unwrap() else { panic!() };
        assert_eq!(m.motif_size(), 2);
        assert_eq!(m.color(2), 3);
    }

    #[test]
    fn serialize_single_vertex() {
        assert_eq!(serialize_instance(&Instance::Graph(Graph::new(1))), "p graph 1\n");
    }

    #[test]
    fn round_trip_k23() {
        let inst = Instance::Graph(named::complete_bipartite(2, 3));
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }
}
