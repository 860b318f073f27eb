//! Rule-based dependency parser for short English sentences.
//!
//! This is a low-fidelity fallback so that fixtures and benchmarks run without
//! an external parser. It tags tokens from word lists plus left context, chunks
//! noun phrases and verb groups, and attaches them with a handful of positional
//! rules (pre-verbal noun -> nsubj, post-verbal noun -> obj, prepositional
//! noun -> obl/nmod, copula sentences headed by their predicate). Real corpora
//! should be parsed externally and read as CoNLL-U.

use serde::Serialize;

use crate::ingest::types::{validate_tokens, ParsedSentence, Token, Upos};
use crate::ingest::wordlists::WordLists;

/// A sentence the parser could not find a verb or noun pattern in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unparsed {
    pub doc_id: String,
    pub text: String,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VerbForm {
    Base,
    ThirdSg,
    Past,
    Ing,
}

/// Context-free lexical class of a token.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Lex {
    Punct,
    Num,
    Neg,
    Copula,
    Modal,
    /// do / have: auxiliary or main verb depending on what follows.
    AuxCand,
    Possessive,
    Det,
    To,
    Adp,
    Cconj,
    Sconj,
    Pron,
    Adv,
    Adj,
    VerbCand(VerbForm),
    Noun,
}

#[derive(Debug, Clone)]
struct Tagged {
    form: String,
    lemma: String,
    lex: Lex,
    upos: Upos,
    form_kind: Option<VerbForm>,
}

pub struct HeuristicParser<'a> {
    lists: &'a WordLists,
}

impl Default for HeuristicParser<'static> {
    fn default() -> Self {
        HeuristicParser::new(WordLists::bundled())
    }
}

/// Parses one sentence with the bundled word lists.
pub fn heuristic_parse(sentence: &str, doc_id: &str) -> Result<ParsedSentence, Unparsed> {
    HeuristicParser::default().parse(sentence, doc_id)
}

const CLITICS: [&str; 6] = ["'s", "'re", "'ve", "'ll", "'d", "'m"];

fn tokenize(text: &str) -> Vec<String> {
    let text = text.replace(['\u{2019}', '\u{2018}'], "'");
    let mut out = Vec::new();
    for raw in text.split_whitespace() {
        let chars: Vec<char> = raw.chars().collect();
        let mut start = 0;
        let mut end = chars.len();
        let mut leading = Vec::new();
        while start < end && !chars[start].is_alphanumeric() {
            leading.push(chars[start].to_string());
            start += 1;
        }
        let mut trailing = Vec::new();
        while end > start && !chars[end - 1].is_alphanumeric() {
            trailing.push(chars[end - 1].to_string());
            end -= 1;
        }
        trailing.reverse();
        out.extend(leading);
        if start < end {
            let core: String = chars[start..end].iter().collect();
            out.extend(split_clitics(&core));
        }
        out.extend(trailing);
    }
    out
}

fn split_clitics(word: &str) -> Vec<String> {
    let lower = word.to_lowercase();
    if lower.ends_with("n't") && lower.len() > 3 {
        let stem = &word[..word.len() - 3];
        let stem = match stem.to_lowercase().as_str() {
            "ca" => "can".to_string(),
            "wo" => "will".to_string(),
            "sha" => "shall".to_string(),
            _ => stem.to_string(),
        };
        return vec![stem, "n't".to_string()];
    }
    for clitic in CLITICS {
        if lower.ends_with(clitic) && lower.len() > clitic.len() {
            let cut = word.len() - clitic.len();
            return vec![word[..cut].to_string(), word[cut..].to_string()];
        }
    }
    vec![word.to_string()]
}

impl<'a> HeuristicParser<'a> {
    pub fn new(lists: &'a WordLists) -> Self {
        HeuristicParser { lists }
    }

    fn verb_analysis(&self, w: &str) -> Option<(String, VerbForm)> {
        let verbs = &self.lists.verbs;
        if verbs.contains(w) {
            return Some((w.to_string(), VerbForm::Base));
        }
        let try_stems = |stems: &[String], form| {
            stems
                .iter()
                .find(|s| s.len() >= 2 && verbs.contains(s.as_str()))
                .map(|s| (s.clone(), form))
        };
        if let Some(base) = w.strip_suffix("ies") {
            if let Some(hit) = try_stems(&[format!("{base}y")], VerbForm::ThirdSg) {
                return Some(hit);
            }
        }
        if let Some(base) = w.strip_suffix("es") {
            if let Some(hit) = try_stems(&[base.to_string()], VerbForm::ThirdSg) {
                return Some(hit);
            }
        }
        if let Some(base) = w.strip_suffix('s') {
            if !w.ends_with("ss") {
                if let Some(hit) = try_stems(&[base.to_string()], VerbForm::ThirdSg) {
                    return Some(hit);
                }
            }
        }
        for (suffix, form) in [("ed", VerbForm::Past), ("ing", VerbForm::Ing)] {
            if let Some(base) = w.strip_suffix(suffix) {
                let mut stems = vec![base.to_string(), format!("{base}e")];
                if suffix == "ed" {
                    if let Some(b) = base.strip_suffix('i') {
                        stems.push(format!("{b}y"));
                    }
                }
                let b: Vec<char> = base.chars().collect();
                if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] {
                    stems.push(b[..b.len() - 1].iter().collect());
                }
                if let Some(hit) = try_stems(&stems, form) {
                    return Some(hit);
                }
            }
        }
        None
    }

    fn lex(&self, form: &str, prev: Option<&str>) -> (Lex, String) {
        let l = self.lists;
        let w = form.to_lowercase();
        if w.chars().all(|c| !c.is_alphanumeric()) {
            return (Lex::Punct, w);
        }
        if w.chars().any(|c| c.is_ascii_digit()) {
            return (Lex::Num, w);
        }
        if l.negations.contains(&w) {
            let lemma = if w == "n't" { "not".to_string() } else { w };
            return (Lex::Neg, lemma);
        }
        if w == "'s" {
            let after_pronoun = prev.is_some_and(|p| {
                let p = p.to_lowercase();
                l.pronouns.contains(&p) || matches!(p.as_str(), "that" | "there" | "what" | "here")
            });
            return if after_pronoun {
                (Lex::Copula, "be".to_string())
            } else {
                (Lex::Possessive, w)
            };
        }
        if l.copulas.contains(&w) {
            return (Lex::Copula, "be".to_string());
        }
        if w == "to" {
            return (Lex::To, w);
        }
        if l.auxiliaries.contains(&w) {
            return match w.as_str() {
                "do" | "does" | "did" => (Lex::AuxCand, "do".to_string()),
                "have" | "has" | "had" | "having" | "'ve" => (Lex::AuxCand, "have".to_string()),
                "ca" => (Lex::Modal, "can".to_string()),
                "wo" | "'ll" => (Lex::Modal, "will".to_string()),
                "'d" => (Lex::Modal, "would".to_string()),
                _ => (Lex::Modal, w),
            };
        }
        if l.determiners.contains(&w) {
            return (Lex::Det, w);
        }
        if l.prepositions.contains(&w) {
            return (Lex::Adp, w);
        }
        if l.conjunctions.contains(&w) {
            return (Lex::Cconj, w);
        }
        if l.subordinators.contains(&w) {
            return (Lex::Sconj, w);
        }
        if l.pronouns.contains(&w) {
            return (Lex::Pron, w);
        }
        if l.nouns.contains(&w) {
            return (Lex::Noun, w);
        }
        if let Some(lemma) = l.irregular.get(&w) {
            return (Lex::VerbCand(VerbForm::Past), lemma.clone());
        }
        if l.adverbs.contains(&w) {
            return (Lex::Adv, w);
        }
        if l.adjectives.contains(&w) {
            return (Lex::Adj, w);
        }
        if let Some((lemma, vf)) = self.verb_analysis(&w) {
            return (Lex::VerbCand(vf), lemma);
        }
        if w.len() > 4 && w.ends_with("ly") {
            return (Lex::Adv, w);
        }
        const ADJ_SUFFIXES: [&str; 8] = ["ous", "ive", "ful", "less", "able", "ible", "ical", "istic"];
        if w.len() > 5 && ADJ_SUFFIXES.iter().any(|s| w.ends_with(s)) {
            return (Lex::Adj, w);
        }
        (Lex::Noun, w)
    }

    fn tag(&self, forms: &[String]) -> Vec<Tagged> {
        let lexed: Vec<(Lex, String)> = forms
            .iter()
            .enumerate()
            .map(|(i, f)| self.lex(f, i.checked_sub(1).map(|p| forms[p].as_str())))
            .collect();
        let n = forms.len();
        // next token index skipping adverbs and negations
        let next_core = |i: usize| (i + 1..n).find(|&j| !matches!(lexed[j].0, Lex::Adv | Lex::Neg));

        let mut out: Vec<Tagged> = Vec::with_capacity(n);
        let mut clause_has_verb = false;
        for (i, (lex, lemma)) in lexed.iter().enumerate() {
            let prev_idx = (0..i).rev().find(|&j| !matches!(out[j].upos, Upos::Adv));
            let prev = prev_idx.map(|j| &out[j]);
            let mut form_kind = None;
            let mut lemma = lemma.clone();
            let upos = match lex {
                Lex::Punct => {
                    if matches!(forms[i].as_str(), "," | ";" | ":" | "-" | "--") {
                        clause_has_verb = false;
                    }
                    Upos::Punct
                }
                Lex::Num => Upos::Num,
                Lex::Neg => match lemma.as_str() {
                    "no" => Upos::Det,
                    "never" => Upos::Adv,
                    _ => Upos::Part,
                },
                Lex::Copula => {
                    clause_has_verb = true;
                    Upos::Aux
                }
                Lex::Modal => Upos::Aux,
                Lex::AuxCand => {
                    let aux = next_core(i).is_some_and(|j| {
                        matches!(lexed[j].0, Lex::VerbCand(_) | Lex::Copula)
                    });
                    if aux {
                        Upos::Aux
                    } else {
                        clause_has_verb = true;
                        Upos::Verb
                    }
                }
                Lex::Possessive => Upos::Part,
                Lex::Det => {
                    let pronominal = matches!(lemma.as_str(), "this" | "these" | "those")
                        && next_core(i).is_none_or(|j| {
                            matches!(
                                lexed[j].0,
                                Lex::Copula
                                    | Lex::Modal
                                    | Lex::AuxCand
                                    | Lex::Punct
                                    | Lex::VerbCand(VerbForm::ThirdSg | VerbForm::Past)
                            )
                        });
                    if pronominal {
                        Upos::Pron
                    } else {
                        Upos::Det
                    }
                }
                Lex::To => {
                    let infinitive = next_core(i)
                        .is_some_and(|j| matches!(lexed[j].0, Lex::VerbCand(VerbForm::Base) | Lex::AuxCand | Lex::Copula));
                    if infinitive {
                        Upos::Part
                    } else {
                        Upos::Adp
                    }
                }
                Lex::Adp => Upos::Adp,
                Lex::Cconj => Upos::Cconj,
                Lex::Sconj => {
                    clause_has_verb = false;
                    Upos::Sconj
                }
                Lex::Pron => Upos::Pron,
                Lex::Adv => Upos::Adv,
                Lex::Adj => Upos::Adj,
                Lex::Noun => {
                    let capitalized = forms[i].chars().next().is_some_and(char::is_uppercase);
                    if capitalized && i > 0 {
                        Upos::Propn
                    } else {
                        Upos::Noun
                    }
                }
                Lex::VerbCand(vf) => {
                    form_kind = Some(*vf);
                    let verbal = self.verb_in_context(*vf, prev, prev_idx, &out, clause_has_verb);
                    if verbal {
                        clause_has_verb = true;
                        Upos::Verb
                    } else {
                        lemma = forms[i].to_lowercase();
                        Upos::Noun
                    }
                }
            };
            if matches!(lex, Lex::Cconj) {
                let before_verb = prev.is_some_and(|p| p.upos == Upos::Verb);
                if !before_verb {
                    // "adapt and evolve" keeps the clause open for the second verb
                    clause_has_verb = false;
                }
            }
            out.push(Tagged {
                form: forms[i].clone(),
                lemma,
                lex: lex.clone(),
                upos,
                form_kind,
            });
        }
        out
    }

    fn verb_in_context(
        &self,
        vf: VerbForm,
        prev: Option<&Tagged>,
        prev_idx: Option<usize>,
        out: &[Tagged],
        clause_has_verb: bool,
    ) -> bool {
        let Some(p) = prev else {
            return false;
        };
        match p.upos {
            Upos::Det | Upos::Adj | Upos::Num => false,
            Upos::Part if p.lex == Lex::To => true,
            Upos::Part if p.lex == Lex::Neg => true,
            Upos::Part => false,
            Upos::Adp => vf == VerbForm::Ing,
            Upos::Aux => {
                if p.lex == Lex::Copula {
                    matches!(vf, VerbForm::Ing | VerbForm::Past)
                } else {
                    vf != VerbForm::ThirdSg
                }
            }
            Upos::Pron => true,
            Upos::Sconj => true,
            Upos::Cconj => {
                let before = prev_idx
                    .and_then(|j| (0..j).rev().find(|&k| out[k].upos != Upos::Adv))
                    .map(|k| out[k].upos);
                match before {
                    Some(Upos::Verb) => true,
                    Some(Upos::Noun | Upos::Propn | Upos::Pron) => !clause_has_verb,
                    _ => false,
                }
            }
            Upos::Noun | Upos::Propn => {
                !clause_has_verb || matches!(vf, VerbForm::Past | VerbForm::Ing)
            }
            Upos::Verb => matches!(vf, VerbForm::Ing | VerbForm::Past),
            Upos::Punct => !clause_has_verb && matches!(vf, VerbForm::Base | VerbForm::ThirdSg) && out.len() > 1,
            _ => false,
        }
    }

    /// Parses one sentence into a dependency tree.
    pub fn parse(&self, sentence: &str, doc_id: &str) -> Result<ParsedSentence, Unparsed> {
        let forms = tokenize(sentence);
        let unparsed = |reason| Unparsed {
            doc_id: doc_id.to_string(),
            text: sentence.to_string(),
            reason,
        };
        if forms.is_empty() {
            return Err(unparsed("empty sentence"));
        }
        let tags = self.tag(&forms);
        let heads = TreeBuilder::new(&tags).build().ok_or_else(|| unparsed("no verb or noun pattern"))?;

        let tokens: Vec<Token> = tags
            .iter()
            .zip(heads)
            .enumerate()
            .map(|(i, (t, (head, deprel)))| Token {
                index: i + 1,
                form: t.form.clone(),
                lemma: t.lemma.clone(),
                upos: t.upos,
                head,
                deprel: deprel.to_string(),
            })
            .collect();
        debug_assert!(validate_tokens(&tokens).is_ok());
        Ok(ParsedSentence {
            doc_id: doc_id.to_string(),
            tokens,
        })
    }
}

struct TreeBuilder<'t> {
    tags: &'t [Tagged],
    head: Vec<Option<usize>>,
    rel: Vec<&'static str>,
    /// Nominal (or predicative adjective) phrase heads.
    is_head: Vec<bool>,
    is_pred: Vec<bool>,
    /// First token of each head's chunk or each predicate's verb group.
    span_start: Vec<usize>,
}

impl<'t> TreeBuilder<'t> {
    fn new(tags: &'t [Tagged]) -> Self {
        let n = tags.len();
        TreeBuilder {
            tags,
            head: vec![None; n],
            rel: vec![""; n],
            is_head: vec![false; n],
            is_pred: vec![false; n],
            span_start: (0..n).collect(),
        }
    }

    fn upos(&self, i: usize) -> Upos {
        self.tags[i].upos
    }

    fn is_neg(&self, i: usize) -> bool {
        self.tags[i].lex == Lex::Neg
    }

    fn attach(&mut self, dep: usize, gov: usize, rel: &'static str) {
        if dep != gov && self.head[dep].is_none() {
            self.head[dep] = Some(gov);
            self.rel[dep] = rel;
        }
    }

    fn nominal(&self, i: usize) -> bool {
        matches!(self.upos(i), Upos::Noun | Upos::Propn | Upos::Pron | Upos::Num)
    }

    /// Marks phrase heads and attaches their pre-modifiers.
    fn chunk_nominals(&mut self) {
        let n = self.tags.len();
        for i in 0..n {
            let next = self.tags.get(i + 1).map(|t| t.upos);
            let compound_next = matches!(next, Some(Upos::Noun | Upos::Propn));
            self.is_head[i] = match self.upos(i) {
                Upos::Pron => true,
                Upos::Noun | Upos::Propn | Upos::Num => !compound_next,
                Upos::Adj => !matches!(next, Some(Upos::Noun | Upos::Propn | Upos::Adj | Upos::Num)),
                _ => false,
            };
        }
        for h in 0..n {
            if !self.is_head[h] || self.upos(h) == Upos::Pron {
                continue;
            }
            let mut j = h;
            while j > 0 {
                let k = j - 1;
                if self.is_head[k] && self.upos(k) != Upos::Adj {
                    break;
                }
                let rel = match self.upos(k) {
                    Upos::Det => "det",
                    Upos::Adj if !self.is_head[k] => "amod",
                    Upos::Noun | Upos::Propn => "compound",
                    Upos::Num => "nummod",
                    Upos::Adv if j < h && self.upos(j) == Upos::Adj => {
                        self.attach(k, j, "advmod");
                        j = k;
                        continue;
                    }
                    Upos::Part if self.tags[k].lex == Lex::Possessive && k > 0 && self.is_head[k - 1] => {
                        self.attach(k, k - 1, "case");
                        self.attach(k - 1, h, "nmod:poss");
                        j = self.span_start[k - 1];
                        continue;
                    }
                    _ => break,
                };
                self.attach(k, h, rel);
                j = k;
            }
            self.span_start[h] = j;
        }
    }

    /// Attaches auxiliaries, negation, adverbs and infinitive "to" to their
    /// verbs, and turns copula sentences into predicate-headed clauses.
    fn chunk_predicates(&mut self) {
        let n = self.tags.len();
        for v in 0..n {
            if self.upos(v) != Upos::Verb {
                continue;
            }
            self.is_pred[v] = true;
            let mut k = v;
            while k > 0 {
                let j = k - 1;
                let t = &self.tags[j];
                let rel = match (t.upos, &t.lex) {
                    (_, Lex::Neg) => "advmod",
                    (Upos::Aux, Lex::Copula) => "aux:pass",
                    (Upos::Aux, _) => "aux",
                    (Upos::Adv, _) => "advmod",
                    (Upos::Part, Lex::To) => "mark",
                    _ => break,
                };
                self.attach(j, v, rel);
                k = j;
            }
            self.span_start[v] = k;
        }
        for c in 0..n {
            if self.tags[c].lex != Lex::Copula || self.upos(c) != Upos::Aux || self.head[c].is_some() {
                continue;
            }
            let mut pred = None;
            for j in c + 1..n {
                if self.is_head[j] && self.upos(j) != Upos::Pron || self.is_head[j] && j == c + 1 {
                    pred = Some(j);
                    break;
                }
                if !matches!(self.upos(j), Upos::Adv | Upos::Det | Upos::Adj | Upos::Num | Upos::Noun | Upos::Propn | Upos::Part)
                    || self.tags[j].lex == Lex::To
                    || self.tags[j].lex == Lex::Possessive
                {
                    break;
                }
            }
            let p = pred.unwrap_or(c);
            self.is_pred[p] = true;
            if p != c {
                self.attach(c, p, "cop");
                for j in c + 1..self.span_start[p] {
                    if matches!(self.upos(j), Upos::Adv) || self.is_neg(j) {
                        self.attach(j, p, "advmod");
                    }
                }
            }
            let mut k = c;
            while k > 0 {
                let j = k - 1;
                let t = &self.tags[j];
                let rel = match (t.upos, &t.lex) {
                    (_, Lex::Neg) => "advmod",
                    (Upos::Aux, _) => "aux",
                    (Upos::Adv, _) => "advmod",
                    (Upos::Part, Lex::To) => "mark",
                    _ => break,
                };
                self.attach(j, p, rel);
                k = j;
            }
            self.span_start[p] = k;
        }
    }

    /// Chunk head owning token `i` (itself when `i` is a head or predicate).
    fn owner(&self, i: usize) -> usize {
        let mut cur = i;
        let mut steps = 0;
        while !self.is_head[cur] && !self.is_pred[cur] {
            match self.head[cur] {
                Some(h) if steps < self.tags.len() => {
                    cur = h;
                    steps += 1;
                }
                _ => return i,
            }
        }
        cur
    }

    fn preds(&self) -> Vec<usize> {
        (0..self.tags.len()).filter(|&i| self.is_pred[i]).collect()
    }

    fn negation_of(&self, p: usize) -> Option<usize> {
        (0..self.tags.len()).find(|&j| self.head[j] == Some(p) && self.is_neg(j))
    }

    fn attach_predicates(&mut self, preds: &[usize]) {
        for (k, &p) in preds.iter().enumerate().skip(1) {
            let prev_pred = preds[k - 1];
            let start = self.span_start[p];
            let has_to = (start..p).any(|j| self.tags[j].lex == Lex::To && self.head[j] == Some(p));
            if has_to {
                self.attach(p, prev_pred, "xcomp");
                continue;
            }
            let Some(b) = start.checked_sub(1) else {
                continue;
            };
            match self.upos(b) {
                Upos::Sconj => {
                    self.attach(b, p, "mark");
                    let anchor = b.checked_sub(1).map(|a| self.owner(a));
                    match anchor {
                        Some(a) if self.is_head[a] && !self.is_pred[a] => self.attach(p, a, "acl:relcl"),
                        _ => self.attach(p, prev_pred, "advcl"),
                    }
                }
                Upos::Cconj => {
                    self.attach(b, p, "cc");
                    self.attach(p, prev_pred, "conj");
                }
                Upos::Punct => self.attach(p, prev_pred, "conj"),
                _ => {
                    let owner = self.owner(b);
                    let participle = matches!(self.tags[p].form_kind, Some(VerbForm::Past | VerbForm::Ing));
                    if participle && start == p && self.is_head[owner] && !self.is_pred[owner] {
                        self.attach(p, owner, "acl");
                    } else {
                        self.attach(p, prev_pred, "ccomp");
                    }
                }
            }
        }
    }

    fn attach_nominals(&mut self, preds: &[usize]) {
        let n = self.tags.len();
        for h in 0..n {
            if !self.is_head[h] || self.is_pred[h] || self.head[h].is_some() {
                continue;
            }
            let cs = self.span_start[h];
            let before = cs.checked_sub(1);
            if let Some(b) = before.filter(|&b| self.upos(b) == Upos::Adp) {
                self.attach(b, h, "case");
                let anchor = (0..b).rev().map(|j| self.owner(j)).find(|&o| self.is_head[o] || self.is_pred[o]);
                match anchor {
                    Some(a) if self.is_pred[a] => self.attach(h, a, "obl"),
                    Some(a) => self.attach(h, a, "nmod"),
                    None => {
                        if let Some(&p) = preds.iter().find(|&&p| p > h) {
                            self.attach(h, p, "obl");
                        }
                    }
                }
                continue;
            }
            if let Some(b) = before.filter(|&b| matches!(self.upos(b), Upos::Cconj | Upos::Punct)) {
                if let Some(a) = b.checked_sub(1) {
                    let g = self.owner(a);
                    if self.is_head[g] && !self.is_pred[g] && g != h {
                        if self.upos(b) == Upos::Cconj {
                            self.attach(b, h, "cc");
                        }
                        self.attach(h, g, "conj");
                        continue;
                    }
                }
            }
            let prev_pred = preds.iter().rev().find(|&&p| p < h).copied();
            let next_pred = preds.iter().find(|&&p| p > h && self.span_start[p] > h).copied();
            let boundary = prev_pred.is_some_and(|p| {
                (p + 1..cs).any(|j| matches!(self.upos(j), Upos::Sconj | Upos::Cconj | Upos::Punct))
            });
            let subject_of = |this: &Self, p: usize| this.negation_of(p).filter(|_| this.tags[p].upos != Upos::Verb);
            match (prev_pred, next_pred) {
                (Some(p), _) if !boundary => {
                    let rel = if self.is_pred[p] && self.upos(p) != Upos::Verb && self.tags[p].lex != Lex::Copula {
                        "nmod"
                    } else {
                        "obj"
                    };
                    self.attach(h, p, rel);
                }
                (_, Some(p)) => {
                    let gov = subject_of(self, p).unwrap_or(p);
                    self.attach(h, gov, "nsubj");
                }
                (Some(p), None) => self.attach(h, p, "obj"),
                (None, None) => {}
            }
        }
    }

    fn nearest(&self, i: usize, pool: &[usize]) -> Option<usize> {
        pool.iter()
            .copied()
            .filter(|&p| p != i)
            .min_by_key(|&p| (p.abs_diff(i), p < i))
    }

    fn attach_leftovers(&mut self, root: usize, preds: &[usize]) {
        let n = self.tags.len();
        let heads: Vec<usize> = (0..n).filter(|&i| self.is_head[i] || self.is_pred[i]).collect();
        for i in 0..n {
            if i == root || self.head[i].is_some() {
                continue;
            }
            let next_content = heads.iter().copied().find(|&h| h > i);
            let prev_content = heads.iter().rev().copied().find(|&h| h < i);
            let (gov, rel) = match self.upos(i) {
                Upos::Punct => (Some(root), "punct"),
                Upos::Adv | Upos::Part if self.is_neg(i) || self.upos(i) == Upos::Adv => {
                    (self.nearest(i, preds).or(self.nearest(i, &heads)), "advmod")
                }
                Upos::Cconj => (next_content.or(prev_content), "cc"),
                Upos::Sconj => (preds.iter().copied().find(|&p| p > i).or(next_content), "mark"),
                Upos::Adp => match next_content {
                    Some(h) => (Some(h), "case"),
                    None => (prev_content, "compound:prt"),
                },
                Upos::Det => (next_content.or(prev_content), "det"),
                Upos::Adj => (next_content.or(prev_content), "amod"),
                Upos::Aux => (
                    preds.iter().copied().find(|&p| p > i).or(prev_content),
                    "aux",
                ),
                Upos::Part => (next_content.or(prev_content), "mark"),
                _ => (self.nearest(i, &heads), "dep"),
            };
            self.attach(i, gov.unwrap_or(root), rel);
            if self.head[i].is_none() {
                self.attach(i, root, "dep");
            }
        }
    }

    /// Re-attaches any token whose head chain does not reach the root.
    fn repair_cycles(&mut self, root: usize) {
        let n = self.tags.len();
        for i in 0..n {
            if i == root {
                continue;
            }
            let mut cur = i;
            let mut steps = 0;
            loop {
                match self.head[cur] {
                    None => break,
                    Some(h) => {
                        cur = h;
                        steps += 1;
                    }
                }
                if cur == root || steps > n {
                    break;
                }
            }
            if cur != root {
                self.head[i] = Some(root);
                self.rel[i] = "dep";
            }
        }
    }

    fn build(mut self) -> Option<Vec<(usize, &'static str)>> {
        self.chunk_nominals();
        self.chunk_predicates();
        let preds = self.preds();
        let n = self.tags.len();
        let root = match preds.first() {
            Some(&p) => p,
            None => {
                let heads: Vec<usize> = (0..n).filter(|&i| self.is_head[i]).collect();
                if heads.len() < 2 {
                    return None;
                }
                heads[0]
            }
        };
        // the root never keeps a governor
        self.head[root] = None;
        self.attach_predicates(&preds);
        self.attach_nominals(&preds);
        for i in 0..n {
            let loose = self.is_head[i] && i != root && self.head[i].is_none() && !self.is_pred[i];
            if loose && (self.nominal(i) || self.upos(i) == Upos::Adj) {
                let rel = if i > root { "nmod" } else { "dep" };
                self.attach(i, root, rel);
            }
        }
        self.attach_leftovers(root, &preds);
        self.head[root] = None;
        self.repair_cycles(root);
        Some(
            (0..n)
                .map(|i| match self.head[i] {
                    None => (0, "root"),
                    Some(h) => (h + 1, self.rel[i]),
                })
                .collect(),
        )
    }
}
