use super::lexer::{tokenize, Tok, Token};
use super::{Origin, ParseError, ParseErrorKind, ParseOptions, Signature};
use crate::confidentiality::{Policy, PolicyElement};
use crate::edp::{Atom, BodyElem, Conjunction, Literal, Program, Rule, Symbol, Term};

pub(crate) struct Parser<'s> {
    toks: Vec<Token>,
    pos: usize,
    origin: Origin,
    sig: &'s mut Signature,
    opts: ParseOptions,
}

impl<'s> Parser<'s> {
    pub(crate) fn new(
        text: &str,
        origin: Origin,
        sig: &'s mut Signature,
        opts: ParseOptions,
    ) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            origin,
            sig,
            opts,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn at(&self, tok: &Tok) -> bool {
        &self.peek().tok == tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.at(tok) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError {
            kind: ParseErrorKind::Syntax,
            line: t.line,
            column: t.column,
            message: message.into(),
            token: t.tok.text(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub(crate) fn program(mut self) -> Result<Program, ParseError> {
        let mut p = Program::new();
        while !self.at(&Tok::Eof) {
            p.insert(self.rule()?);
        }
        Ok(p)
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let mut head = Vec::new();
        if !self.at(&Tok::If) {
            if self.at(&Tok::Dot) {
                return Err(self.error("empty statement"));
            }
            head.push(self.literal()?);
            while self.eat(&Tok::Semi) {
                head.push(self.literal()?);
            }
        }
        let mut body = Vec::new();
        if self.eat(&Tok::If) && !self.at(&Tok::Dot) {
            body = self.body()?;
        }
        self.expect(Tok::Dot, "`.` at end of rule")?;
        Ok(Rule::new(head, body))
    }

    fn body(&mut self) -> Result<Vec<BodyElem>, ParseError> {
        let mut body = vec![self.body_elem()?];
        while self.eat(&Tok::Comma) {
            body.push(self.body_elem()?);
        }
        Ok(body)
    }

    fn body_elem(&mut self) -> Result<BodyElem, ParseError> {
        if self.eat(&Tok::Not) {
            Ok(BodyElem::naf(self.literal()?))
        } else {
            Ok(BodyElem::pos(self.literal()?))
        }
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let negated = self.eat(&Tok::Minus);
        let start = self.peek().clone();
        let name = match &start.tok {
            Tok::Ident(name) => name.clone(),
            Tok::Var(_) => return Err(self.error("expected a predicate, found a variable")),
            _ => return Err(self.error("expected a literal")),
        };
        if name.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.error("predicate names must start with a letter"));
        }
        if name.starts_with('_') && !self.opts.allow_reserved {
            return Err(ParseError {
                kind: ParseErrorKind::ReservedPredicate,
                line: start.line,
                column: start.column,
                message: "predicates starting with `_` are reserved".into(),
                token: name,
            });
        }
        self.bump();
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            args.push(self.term()?);
            while self.eat(&Tok::Comma) {
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        let pred = Symbol::new(&name);
        self.sig
            .record(&pred, args.len(), self.origin, start.line, start.column)?;
        let atom = Atom {
            predicate: pred,
            args,
        };
        Ok(Literal { atom, negated })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match &self.peek().tok {
            Tok::Var(v) => {
                let t = Term::var(v);
                self.bump();
                Ok(t)
            }
            Tok::Ident(c) if !c.starts_with('_') || self.opts.allow_reserved => {
                let t = Term::constant(c);
                self.bump();
                Ok(t)
            }
            _ => Err(self.error("expected a constant or a variable")),
        }
    }

    fn conjunction(&mut self) -> Result<Conjunction, ParseError> {
        Ok(Conjunction::new(self.body()?))
    }

    pub(crate) fn policy(mut self) -> Result<Policy, ParseError> {
        let mut elements = Vec::new();
        while !self.at(&Tok::Eof) {
            let mut disjuncts = vec![self.conjunction()?];
            while self.eat(&Tok::Bar) {
                disjuncts.push(self.conjunction()?);
            }
            if self.at(&Tok::If) || self.at(&Tok::Semi) {
                return Err(self.error("policy files hold conjunctions, not rules"));
            }
            self.expect(Tok::Dot, "`.` at end of policy element")?;
            elements.push(PolicyElement::new(disjuncts));
        }
        Ok(Policy::new(elements))
    }

    pub(crate) fn query(mut self) -> Result<Conjunction, ParseError> {
        let c = self.conjunction()?;
        self.eat(&Tok::Dot);
        if !self.at(&Tok::Eof) {
            return Err(self.error("trailing input after query"));
        }
        Ok(c)
    }

    pub(crate) fn single_literal(mut self) -> Result<Literal, ParseError> {
        let l = self.literal()?;
        self.eat(&Tok::Dot);
        if !self.at(&Tok::Eof) {
            return Err(self.error("trailing input after literal"));
        }
        Ok(l)
    }
}
