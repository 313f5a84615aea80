//! Minimal independent DOT reader used to round-trip exported graphs.
//! Deliberately not built on the export code: it tokenizes and parses
//! the subset of DOT the exporters may emit (graph, subgraph, node and
//! edge statements with attribute lists) and reports nodes and edges.

#[derive(Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Symbol(char),
    EdgeOp,
}

fn tokenize(input: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_alphanumeric() || c == '_' || c == '.' {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' || c == '.' {
                    ident.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(Token::Ident(ident));
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(c) => s.push(c),
                    None => return Err("unterminated string".into()),
                }
            }
            tokens.push(Token::Ident(s));
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some('-') => tokens.push(Token::EdgeOp),
                other => return Err(format!("expected '--', got '-{other:?}'")),
            }
        } else if "{}[]=,;!".contains(c) {
            chars.next();
            tokens.push(Token::Symbol(c));
        } else {
            return Err(format!("unexpected character '{c}'"));
        }
    }
    Ok(tokens)
}

#[derive(Debug, Default)]
pub struct DotGraph {
    pub name: String,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

/// Parses an undirected DOT graph, failing on any syntax the grammar
/// subset does not cover.
pub fn parse_dot(input: &str) -> Result<DotGraph, String> {
    let tokens = tokenize(input)?;
    let mut pos = 0;
    let expect_ident = |tokens: &[Token], pos: &mut usize| -> Result<String, String> {
        match tokens.get(*pos) {
            Some(Token::Ident(s)) => {
                *pos += 1;
                Ok(s.clone())
            }
            other => Err(format!("expected identifier, got {other:?}")),
        }
    };
    let expect_symbol = |tokens: &[Token], pos: &mut usize, c: char| -> Result<(), String> {
        match tokens.get(*pos) {
            Some(Token::Symbol(s)) if *s == c => {
                *pos += 1;
                Ok(())
            }
            other => Err(format!("expected '{c}', got {other:?}")),
        }
    };

    let keyword = expect_ident(&tokens, &mut pos)?;
    if keyword != "graph" {
        return Err(format!("expected 'graph', got '{keyword}'"));
    }
    let mut graph = DotGraph {
        name: expect_ident(&tokens, &mut pos)?,
        ..DotGraph::default()
    };
    expect_symbol(&tokens, &mut pos, '{')?;
    parse_body(&tokens, &mut pos, &mut graph)?;
    if pos != tokens.len() {
        return Err("trailing tokens after closing brace".into());
    }
    Ok(graph)
}

fn parse_attr_list(tokens: &[Token], pos: &mut usize) -> Result<(), String> {
    // [ ident = ident (, ident = ident)* ]
    *pos += 1; // consume '['
    loop {
        match tokens.get(*pos) {
            Some(Token::Ident(_)) => {
                *pos += 1;
                if tokens.get(*pos) != Some(&Token::Symbol('=')) {
                    return Err("attribute without '='".into());
                }
                *pos += 1;
                match tokens.get(*pos) {
                    Some(Token::Ident(_)) => *pos += 1,
                    other => return Err(format!("attribute value missing, got {other:?}")),
                }
                // trailing '!' from pin positions is folded into the
                // quoted string by the tokenizer, nothing extra here
                if tokens.get(*pos) == Some(&Token::Symbol(',')) {
                    *pos += 1;
                }
            }
            Some(Token::Symbol(']')) => {
                *pos += 1;
                return Ok(());
            }
            other => return Err(format!("bad attribute list at {other:?}")),
        }
    }
}

fn parse_body(tokens: &[Token], pos: &mut usize, graph: &mut DotGraph) -> Result<(), String> {
    loop {
        match tokens.get(*pos) {
            Some(Token::Symbol('}')) => {
                *pos += 1;
                return Ok(());
            }
            Some(Token::Ident(word)) if word == "subgraph" => {
                *pos += 1;
                match tokens.get(*pos) {
                    Some(Token::Ident(_)) => *pos += 1,
                    _ => return Err("subgraph needs a name".into()),
                }
                if tokens.get(*pos) != Some(&Token::Symbol('{')) {
                    return Err("subgraph needs a body".into());
                }
                *pos += 1;
                parse_body(tokens, pos, graph)?;
            }
            Some(Token::Ident(id)) => {
                let id = id.clone();
                *pos += 1;
                match tokens.get(*pos) {
                    // graph attribute: ident = ident ;
                    Some(Token::Symbol('=')) => {
                        *pos += 1;
                        match tokens.get(*pos) {
                            Some(Token::Ident(_)) => *pos += 1,
                            other => return Err(format!("bad attribute value {other:?}")),
                        }
                    }
                    // edge: a -- b [attrs]? ;
                    Some(Token::EdgeOp) => {
                        *pos += 1;
                        let other = match tokens.get(*pos) {
                            Some(Token::Ident(s)) => s.clone(),
                            t => return Err(format!("edge target missing, got {t:?}")),
                        };
                        *pos += 1;
                        if tokens.get(*pos) == Some(&Token::Symbol('[')) {
                            parse_attr_list(tokens, pos)?;
                        }
                        graph.edges.push((id, other));
                    }
                    // node: a [attrs]? ;
                    _ => {
                        if tokens.get(*pos) == Some(&Token::Symbol('[')) {
                            parse_attr_list(tokens, pos)?;
                        }
                        // default-attr statements like `node [shape=box]`
                        // are not vertices
                        if id != "node" && id != "edge" && id != "graph" {
                            graph.nodes.push(id);
                        }
                    }
                }
                if tokens.get(*pos) == Some(&Token::Symbol(';')) {
                    *pos += 1;
                }
            }
            other => return Err(format!("unexpected token {other:?}")),
        }
    }
}
