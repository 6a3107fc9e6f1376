//! Top-down matching of a token stream against the SQL side of a grammar,
//! memoized on (nonterminal, position).

use std::collections::HashMap;
use std::rc::Rc;

use super::scfg::{PhKind, Placeholder, Scfg, Sym};
use super::stream::Tok;

#[derive(Debug)]
pub struct Deriv {
    pub rule: usize,
    pub binds: Vec<(Placeholder, Tok)>,
    pub children: Vec<Rc<Deriv>>,
}

impl Deriv {
    pub fn bound(&self, p: Placeholder) -> Option<Tok> {
        self.binds.iter().find(|(q, _)| *q == p).map(|(_, t)| *t)
    }
}

type Results = Rc<Vec<(usize, Rc<Deriv>)>>;

struct Matcher<'a> {
    g: &'a Scfg,
    toks: &'a [Tok],
    memo: HashMap<(usize, usize), Results>,
}

#[derive(Clone)]
struct Partial {
    pos: usize,
    binds: Vec<(Placeholder, Tok)>,
    children: Vec<Rc<Deriv>>,
}

fn fits(kind: PhKind, t: Tok) -> bool {
    matches!(
        (kind, t),
        (PhKind::Table, Tok::Table(_))
            | (PhKind::Column, Tok::Column(_))
            | (PhKind::Agg, Tok::Agg(_))
            | (PhKind::Cmp, Tok::Cmp(_))
            | (PhKind::Arith, Tok::Arith(_))
            | (PhKind::Lit, Tok::Lit(_) | Tok::Sub(_) | Tok::Num(_))
    )
}

impl Matcher<'_> {
    fn nt(&mut self, nt: usize, pos: usize) -> Results {
        if let Some(r) = self.memo.get(&(nt, pos)) {
            return r.clone();
        }
        // Guards against re-entry; the grammar has no left recursion, so this
        // entry is only read back for a strictly later position.
        self.memo.insert((nt, pos), Rc::new(Vec::new()));
        let mut out: Vec<(usize, Rc<Deriv>)> = Vec::new();
        for &rid in &self.g.by_lhs[nt] {
            for p in self.rule(rid, pos) {
                if !out.iter().any(|(end, _)| *end == p.pos) {
                    out.push((p.pos, Rc::new(Deriv { rule: rid, binds: p.binds, children: p.children })));
                }
            }
        }
        let r = Rc::new(out);
        self.memo.insert((nt, pos), r.clone());
        r
    }

    fn rule(&mut self, rid: usize, pos: usize) -> Vec<Partial> {
        let g = self.g;
        let mut states = vec![Partial { pos, binds: Vec::new(), children: Vec::new() }];
        for sym in &g.rules[rid].sql {
            let mut next: Vec<Partial> = Vec::new();
            for s in states {
                let tok = self.toks.get(s.pos).copied();
                match sym {
                    Sym::Nt(c) => {
                        for (end, d) in self.nt(*c, s.pos).iter() {
                            let mut n = s.clone();
                            n.pos = *end;
                            n.children.push(d.clone());
                            push_dedup(&mut next, n);
                        }
                    }
                    Sym::Kw(k) => {
                        if matches!(tok, Some(Tok::Kw(t)) if t == k) {
                            push_dedup(&mut next, Partial { pos: s.pos + 1, ..s });
                        }
                    }
                    Sym::Agg(a) => {
                        if tok == Some(Tok::Agg(*a)) {
                            push_dedup(&mut next, Partial { pos: s.pos + 1, ..s });
                        }
                    }
                    Sym::Star => {
                        if tok == Some(Tok::Star) {
                            push_dedup(&mut next, Partial { pos: s.pos + 1, ..s });
                        }
                    }
                    Sym::Num(n) => {
                        if tok == Some(Tok::Num(*n)) {
                            push_dedup(&mut next, Partial { pos: s.pos + 1, ..s });
                        }
                    }
                    Sym::Ph(p) => {
                        let Some(t) = tok.filter(|t| fits(p.0, *t)) else { continue };
                        match s.binds.iter().find(|(q, _)| q == p) {
                            Some((_, prev)) if *prev != t => {}
                            Some(_) => push_dedup(&mut next, Partial { pos: s.pos + 1, ..s }),
                            None => {
                                let mut n = s.clone();
                                n.pos += 1;
                                n.binds.push((*p, t));
                                push_dedup(&mut next, n);
                            }
                        }
                    }
                }
            }
            states = next;
            if states.is_empty() {
                break;
            }
        }
        states
    }
}

fn push_dedup(v: &mut Vec<Partial>, p: Partial) {
    if !v.iter().any(|q| q.pos == p.pos && q.binds == p.binds) {
        v.push(p);
    }
}

/// First derivation covering the whole stream, preferring lower rule ids.
pub fn derive(g: &Scfg, toks: &[Tok]) -> Option<Rc<Deriv>> {
    let mut m = Matcher { g, toks, memo: HashMap::new() };
    let res = m.nt(g.start(), 0);
    res.iter().find(|(end, _)| *end == toks.len()).map(|(_, d)| d.clone())
}
