//! Line-oriented text formats for automata, families, grammars, PDAs and
//! Turing machines.
//!
//! Tokens are whitespace-separated. A line whose first token starts with
//! `#` is a comment, and a lone `#` token comments out the rest of its
//! line; tokens such as `#0` elsewhere on a line are ordinary symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::automaton::{Automaton, Symbol};
use crate::error::{Error, Result};
use crate::generatability::Family;
use crate::grammar::cfg::{Cfg, GSym};
use crate::grammar::pda::{Pda, PdaRule};
use crate::tm::{Move, TuringMachine};

struct Line<'a> {
    no: usize,
    tokens: Vec<&'a str>,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let mut tokens: Vec<&str> = raw.split_whitespace().take_while(|t| *t != "#").collect();
            if tokens.first().is_some_and(|t| t.starts_with('#')) {
                tokens.clear();
            }
            (!tokens.is_empty()).then_some(Line { no: i + 1, tokens })
        })
        .collect()
}

fn number(line: &Line, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line.no, format!("expected a natural number, found `{tok}`")))
}

fn one<'a>(line: &Line<'a>) -> Result<&'a str> {
    match line.tokens.as_slice() {
        [_, v] => Ok(v),
        _ => Err(Error::parse(line.no, format!("`{}` takes exactly one value", line.tokens[0]))),
    }
}

fn owned(tokens: &[&str]) -> Vec<Symbol> {
    tokens.iter().map(|s| s.to_string()).collect()
}

/// Splits the lines into `<keyword> <name> … end` blocks.
fn blocks<'a>(text: &'a str, keyword: &str) -> Result<Vec<(usize, String, Vec<Line<'a>>)>> {
    let mut out = Vec::new();
    let mut current: Option<(usize, String, Vec<Line<'a>>)> = None;
    for line in lines(text) {
        let head = line.tokens[0];
        match current.as_mut() {
            None => {
                if head != keyword || line.tokens.len() != 2 {
                    return Err(Error::parse(line.no, format!("expected `{keyword} <name>`")));
                }
                current = Some((line.no, line.tokens[1].to_string(), Vec::new()));
            }
            Some(_) if head == "end" => {
                if line.tokens.len() != 1 {
                    return Err(Error::parse(line.no, "`end` takes no values"));
                }
                out.push(current.take().expect("open block"));
            }
            Some((_, _, body)) => body.push(line),
        }
    }
    if let Some((no, name, _)) = current {
        return Err(Error::parse(no, format!("block `{name}` has no `end`")));
    }
    Ok(out)
}

fn single<T>(mut items: Vec<T>, what: &str) -> Result<T> {
    if items.len() != 1 {
        return Err(Error::parse(1, format!("expected exactly one {what}, found {}", items.len())));
    }
    Ok(items.pop().expect("one item"))
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: &Line) -> Result<()> {
    if slot.is_some() {
        return Err(Error::parse(line.no, format!("`{}` given twice", line.tokens[0])));
    }
    *slot = Some(value);
    Ok(())
}

fn unknown(line: &Line) -> Error {
    Error::parse(line.no, format!("unknown keyword `{}`", line.tokens[0]))
}

fn required<T>(slot: Option<T>, no: usize, key: &str) -> Result<T> {
    slot.ok_or_else(|| Error::parse(no, format!("missing `{key}` line")))
}

fn invalid(no: usize, e: Error) -> Error {
    Error::parse(no, e.to_string())
}

/// Every `automaton … end` block in order.
pub fn parse_automata(text: &str) -> Result<Vec<(String, Automaton)>> {
    blocks(text, "automaton")?
        .into_iter()
        .map(|(no, name, body)| Ok((name, automaton_block(no, &body)?)))
        .collect()
}

pub fn parse_automaton(text: &str) -> Result<(String, Automaton)> {
    single(parse_automata(text)?, "automaton block")
}

/// A family file; member order is file order. Rejects finite members.
pub fn parse_family(text: &str) -> Result<Family> {
    let members = parse_automata(text)?;
    if members.is_empty() {
        return Err(Error::parse(1, "no automaton blocks"));
    }
    Family::new(members)
}

fn automaton_block(no: usize, body: &[Line]) -> Result<Automaton> {
    let mut alphabet = None;
    let mut states = None;
    let mut initial = None;
    let mut finals = BTreeSet::new();
    let mut trans = Vec::new();
    for line in body {
        match line.tokens[0] {
            "alphabet" => set_once(&mut alphabet, owned(&line.tokens[1..]), line)?,
            "states" => set_once(&mut states, number(line, one(line)?)?, line)?,
            "initial" => set_once(&mut initial, number(line, one(line)?)?, line)?,
            "final" => {
                for t in &line.tokens[1..] {
                    finals.insert(number(line, t)?);
                }
            }
            "trans" => match line.tokens.as_slice() {
                [_, from, sym, to] => trans.push((number(line, from)?, *sym, number(line, to)?)),
                _ => return Err(Error::parse(line.no, "expected `trans <from> <sym> <to>`")),
            },
            _ => return Err(unknown(line)),
        }
    }
    let alphabet = required(alphabet, no, "alphabet")?;
    let states = required(states, no, "states")?;
    let initial = match initial {
        Some(q) => q,
        None if states == 0 => 0,
        None => return Err(Error::parse(no, "missing `initial` line")),
    };
    Automaton::new(alphabet, states, initial, finals, trans).map_err(|e| invalid(no, e))
}

pub fn write_automaton(name: &str, a: &Automaton) -> String {
    let mut out = String::new();
    writeln!(out, "automaton {name}").unwrap();
    writeln!(out, "alphabet {}", a.alphabet().join(" ")).unwrap();
    writeln!(out, "states {}", a.state_count()).unwrap();
    if let Some(q) = a.initial() {
        writeln!(out, "initial {q}").unwrap();
    }
    let finals: Vec<String> = a.finals().iter().map(usize::to_string).collect();
    writeln!(out, "final {}", finals.join(" ")).unwrap();
    for &(from, sym, to) in a.transitions() {
        writeln!(out, "trans {from} {} {to}", a.alphabet()[sym]).unwrap();
    }
    out.push_str("end\n");
    clean(out)
}

pub fn write_family(family: &Family) -> String {
    family
        .members()
        .iter()
        .map(|(name, a)| write_automaton(name, a))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Drops trailing spaces left by empty value lists.
fn clean(text: String) -> String {
    text.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n"
}

/// A grammar file. Without `nonterminals`/`terminals` lines, the
/// nonterminals are the start symbol and the rule heads, and every other
/// body token is a terminal.
pub fn parse_grammar(text: &str) -> Result<(String, Cfg)> {
    let (no, name, body) = single(blocks(text, "grammar")?, "grammar block")?;
    let mut declared_nt: Option<Vec<Symbol>> = None;
    let mut declared_t: Option<Vec<Symbol>> = None;
    let mut start = None;
    let mut rules: Vec<(&str, Vec<&str>)> = Vec::new();
    for line in &body {
        match line.tokens[0] {
            "nonterminals" => set_once(&mut declared_nt, owned(&line.tokens[1..]), line)?,
            "terminals" => set_once(&mut declared_t, owned(&line.tokens[1..]), line)?,
            "start" => set_once(&mut start, one(line)?, line)?,
            "rule" => match line.tokens.as_slice() {
                [_, head, "->", rest @ ..] if !rest.is_empty() => {
                    let body = if rest == ["eps"] { Vec::new() } else { rest.to_vec() };
                    if body.contains(&"eps") {
                        return Err(Error::parse(line.no, "`eps` must stand alone"));
                    }
                    rules.push((head, body));
                }
                _ => return Err(Error::parse(line.no, "expected `rule <NT> -> <tok>…`")),
            },
            _ => return Err(unknown(line)),
        }
    }
    let start = required(start, no, "start")?;
    let nonterminals = declared_nt.unwrap_or_else(|| {
        let mut v: Vec<Symbol> = vec![start.to_string()];
        for (h, _) in &rules {
            if !v.iter().any(|x| x == h) {
                v.push(h.to_string());
            }
        }
        v
    });
    let terminals = declared_t.unwrap_or_else(|| {
        let mut v: Vec<Symbol> = Vec::new();
        for tok in rules.iter().flat_map(|(_, b)| b) {
            if !nonterminals.iter().any(|x| x == tok) && !v.iter().any(|x| x == tok) {
                v.push(tok.to_string());
            }
        }
        v
    });
    let g = Cfg::new(nonterminals, terminals, start, &rules).map_err(|e| invalid(no, e))?;
    Ok((name, g))
}

pub fn write_grammar(name: &str, g: &Cfg) -> String {
    let mut out = String::new();
    writeln!(out, "grammar {name}").unwrap();
    writeln!(out, "nonterminals {}", g.nonterminals().join(" ")).unwrap();
    writeln!(out, "terminals {}", g.terminals().join(" ")).unwrap();
    writeln!(out, "start {}", g.start_name()).unwrap();
    for p in g.productions() {
        let body: Vec<&str> = p.body.iter().map(|&s| g.name(s)).collect();
        let body = if body.is_empty() { "eps".to_string() } else { body.join(" ") };
        writeln!(out, "rule {} -> {body}", g.name(GSym::N(p.head))).unwrap();
    }
    out.push_str("end\n");
    clean(out)
}

fn lookup(line: &Line, syms: &[Symbol], tok: &str, what: &str) -> Result<usize> {
    syms.iter()
        .position(|s| s == tok)
        .ok_or_else(|| Error::parse(line.no, format!("undeclared {what} `{tok}`")))
}

/// A PDA file. `trans` lists pushed symbols top first.
pub fn parse_pda(text: &str) -> Result<(String, Pda)> {
    let (no, name, body) = single(blocks(text, "pda")?, "pda block")?;
    let mut input = None;
    let mut stack = None;
    let mut states = None;
    let mut initial = None;
    let mut stackinit = None;
    let mut finals = BTreeSet::new();
    let mut trans: Vec<&Line> = Vec::new();
    for line in &body {
        match line.tokens[0] {
            "alphabet" => set_once(&mut input, owned(&line.tokens[1..]), line)?,
            "stack" => set_once(&mut stack, owned(&line.tokens[1..]), line)?,
            "states" => set_once(&mut states, number(line, one(line)?)?, line)?,
            "initial" => set_once(&mut initial, number(line, one(line)?)?, line)?,
            "stackinit" => set_once(&mut stackinit, one(line)?, line)?,
            "final" => {
                for t in &line.tokens[1..] {
                    finals.insert(number(line, t)?);
                }
            }
            "trans" => trans.push(line),
            _ => return Err(unknown(line)),
        }
    }
    let input = required(input, no, "alphabet")?;
    let stack = required(stack, no, "stack")?;
    let states = required(states, no, "states")?;
    let initial = required(initial, no, "initial")?;
    let stackinit = required(stackinit, no, "stackinit")?;
    let z = stack
        .iter()
        .position(|s| s == stackinit)
        .ok_or_else(|| Error::parse(no, format!("undeclared stack symbol `{stackinit}`")))?;
    let mut rules = Vec::new();
    for line in trans {
        let [_, from, a, x, to, push @ ..] = line.tokens.as_slice() else {
            return Err(Error::parse(line.no, "expected `trans <q> <a|eps> <X> <q'> <push…|eps>`"));
        };
        if push.is_empty() {
            return Err(Error::parse(line.no, "missing push list (use `eps` for none)"));
        }
        let push = if push == ["eps"] {
            Vec::new()
        } else {
            push.iter()
                .map(|t| lookup(line, &stack, t, "stack symbol"))
                .collect::<Result<Vec<_>>>()?
        };
        rules.push(PdaRule {
            from: number(line, from)?,
            input: if *a == "eps" { None } else { Some(lookup(line, &input, a, "input symbol")?) },
            pop: lookup(line, &stack, x, "stack symbol")?,
            to: number(line, to)?,
            push,
        });
    }
    let p = Pda::new(states, input, stack, initial, z, finals, rules).map_err(|e| invalid(no, e))?;
    Ok((name, p))
}

pub fn write_pda(name: &str, p: &Pda) -> String {
    let mut out = String::new();
    writeln!(out, "pda {name}").unwrap();
    writeln!(out, "alphabet {}", p.input_alphabet().join(" ")).unwrap();
    writeln!(out, "stack {}", p.stack_alphabet().join(" ")).unwrap();
    writeln!(out, "states {}", p.state_count()).unwrap();
    writeln!(out, "initial {}", p.initial()).unwrap();
    writeln!(out, "stackinit {}", p.stack_alphabet()[p.initial_stack()]).unwrap();
    let finals: Vec<String> = p.finals().iter().map(usize::to_string).collect();
    writeln!(out, "final {}", finals.join(" ")).unwrap();
    for r in p.rules() {
        let a = r.input.map_or("eps", |a| p.input_alphabet()[a].as_str());
        let push: Vec<&str> = r.push.iter().map(|&x| p.stack_alphabet()[x].as_str()).collect();
        let push = if push.is_empty() { "eps".to_string() } else { push.join(" ") };
        writeln!(out, "trans {} {a} {} {} {push}", r.from, p.stack_alphabet()[r.pop], r.to).unwrap();
    }
    out.push_str("end\n");
    clean(out)
}

pub fn parse_tm(text: &str) -> Result<(String, TuringMachine)> {
    let (no, name, body) = single(blocks(text, "tm")?, "tm block")?;
    let mut tape = None;
    let mut blank = None;
    let mut states = None;
    let mut initial = None;
    let mut halting = BTreeSet::new();
    let mut trans: Vec<&Line> = Vec::new();
    for line in &body {
        match line.tokens[0] {
            "tape" => set_once(&mut tape, owned(&line.tokens[1..]), line)?,
            "blank" => set_once(&mut blank, one(line)?, line)?,
            "states" => set_once(&mut states, number(line, one(line)?)?, line)?,
            "initial" => set_once(&mut initial, number(line, one(line)?)?, line)?,
            "halt" => {
                for t in &line.tokens[1..] {
                    halting.insert(number(line, t)?);
                }
            }
            "trans" => trans.push(line),
            _ => return Err(unknown(line)),
        }
    }
    let tape = required(tape, no, "tape")?;
    let blank = required(blank, no, "blank")?;
    let blank = tape
        .iter()
        .position(|s| s == blank)
        .ok_or_else(|| Error::parse(no, format!("blank `{blank}` is not a tape symbol")))?;
    let states = required(states, no, "states")?;
    let initial = required(initial, no, "initial")?;
    let mut rules = BTreeMap::new();
    for line in trans {
        let [_, q, a, p, b, m] = line.tokens.as_slice() else {
            return Err(Error::parse(line.no, "expected `trans <q> <a> <q'> <b> <L|R>`"));
        };
        let m = match *m {
            "L" => Move::Left,
            "R" => Move::Right,
            other => return Err(Error::parse(line.no, format!("move must be L or R, found `{other}`"))),
        };
        let key = (number(line, q)?, lookup(line, &tape, a, "tape symbol")?);
        let value = (number(line, p)?, lookup(line, &tape, b, "tape symbol")?, m);
        if rules.insert(key, value).is_some() {
            return Err(Error::parse(line.no, "second transition for the same state and symbol"));
        }
    }
    let m = TuringMachine::from_parts(tape, blank, states, initial, halting, rules).map_err(|e| invalid(no, e))?;
    Ok((name, m))
}

pub fn write_tm(name: &str, m: &TuringMachine) -> String {
    let mut out = String::new();
    writeln!(out, "tm {name}").unwrap();
    writeln!(out, "tape {}", m.tape_alphabet().join(" ")).unwrap();
    writeln!(out, "blank {}", m.tape_alphabet()[m.blank()]).unwrap();
    writeln!(out, "states {}", m.state_count()).unwrap();
    writeln!(out, "initial {}", m.initial()).unwrap();
    let halting: Vec<String> = m.halting().iter().map(usize::to_string).collect();
    writeln!(out, "halt {}", halting.join(" ")).unwrap();
    for (&(q, a), &(p, b, mv)) in m.rules() {
        let tape = m.tape_alphabet();
        writeln!(out, "trans {q} {} {p} {} {mv}", tape[a], tape[b]).unwrap();
    }
    out.push_str("end\n");
    clean(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::chars_word;
    use crate::count::Count;

    const PAIR: &str = "\
# two members
automaton L1
alphabet 0 1
states 2
initial 0
final 0 1
trans 0 0 0
trans 0 1 1
trans 1 0 0   # back
end

automaton L2
alphabet 0 1
states 2
initial 0
final 0 1
trans 0 1 0
trans 0 0 1
end
";

    #[test]
    fn automaton_round_trip() {
        let members = parse_automata(PAIR).unwrap();
        assert_eq!(members.len(), 2);
        assert_eq!(members[0].0, "L1");
        assert!(members[0].1.member(&chars_word("0100")).unwrap());
        let text = write_automaton("L1", &members[0].1);
        assert_eq!(parse_automaton(&text).unwrap(), members[0].clone());
        assert_eq!(write_automaton("L1", &parse_automaton(&text).unwrap().1), text);
        let fam = parse_family(PAIR).unwrap();
        assert_eq!(parse_family(&write_family(&fam)).unwrap().members(), fam.members());
    }

    #[test]
    fn zero_state_automaton() {
        let text = "automaton E\nalphabet 0\nstates 0\nfinal\nend\n";
        let (_, a) = parse_automaton(text).unwrap();
        assert!(a.is_empty());
        assert_eq!(write_automaton("E", &a), text);
    }

    #[test]
    fn automaton_errors_carry_lines() {
        for (text, line) in [
            ("automaton A\nalphabet 0\nstates 1\ninitial 0\nbogus\nend\n", 5),
            ("automaton A\nalphabet 0\nstates x\nend\n", 3),
            ("automaton A\nalphabet 0\nstates 1\ninitial 0\n", 1),
            ("automaton A\nalphabet 0\nstates 1\ninitial 0\ntrans 0 2 0\nend\n", 1),
            ("automaton A\nalphabet 0\nstates 1\ninitial 0\nstates 1\nend\n", 5),
        ] {
            match parse_automaton(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn grammar_round_trip() {
        let text = "grammar G\nstart S\nrule S -> 0 S 1\nrule S -> eps\nend\n";
        let (name, g) = parse_grammar(text).unwrap();
        assert_eq!(name, "G");
        assert_eq!(g.terminals(), ["0", "1"]);
        assert!(g.member(&chars_word("0011")).unwrap());
        let written = write_grammar(&name, &g);
        assert_eq!(parse_grammar(&written).unwrap().1, g);
        assert!(written.contains("rule S -> eps"));
    }

    #[test]
    fn grammar_with_declared_nonterminal_without_rules() {
        let text = "grammar G\nnonterminals S A B\nterminals a\nstart S\nrule S -> A B\nrule A -> a\nend\n";
        let (_, g) = parse_grammar(text).unwrap();
        assert_eq!(g.cardinality(10).unwrap(), Count::zero());
    }

    #[test]
    fn pda_round_trip() {
        let text = "\
pda P
alphabet 0 1
stack Z A
states 3
initial 0
stackinit Z
final 2
trans 0 0 Z 0 A Z
trans 0 0 A 0 A A
trans 0 1 A 1 eps
trans 1 1 A 1 eps
trans 1 eps Z 2 Z
end
";
        let (name, p) = parse_pda(text).unwrap();
        let caps = crate::grammar::PdaCaps::for_input(&p, 4);
        assert!(p.member(&chars_word("0011"), caps).unwrap());
        assert!(!p.member(&chars_word("0010"), caps).unwrap());
        let written = write_pda(&name, &p);
        assert_eq!(parse_pda(&written).unwrap().1, p);
    }

    #[test]
    fn tm_round_trip_and_delimiter_tokens() {
        let text = "tm M\ntape _ 1\nblank _\nstates 2\ninitial 0\nhalt 1\ntrans 0 _ 1 1 R\nend\n";
        let (name, m) = parse_tm(text).unwrap();
        assert_eq!(m.run(10).halted(), Some(2));
        assert_eq!(write_tm(&name, &m), text);
        // `#0` after the first token is a symbol, not a comment.
        let (_, a) = parse_automaton("automaton D\nalphabet #0 #1\nstates 1\ninitial 0\nfinal 0\nend\n").unwrap();
        assert_eq!(a.alphabet(), ["#0", "#1"]);
    }
}
