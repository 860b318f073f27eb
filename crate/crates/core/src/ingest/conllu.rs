//! CoNLL-U reading and writing.
//!
//! Only the fields the network builder needs are kept (ID, FORM, LEMMA, UPOS,
//! HEAD, DEPREL). Multiword-token ranges and empty nodes are skipped.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::ingest::types::{validate_tokens, ParsedSentence, Token, Upos};

/// A sentence block that failed tree validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRejection {
    /// Line of the first token of the block.
    pub line: usize,
    pub doc_id: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SentenceOutcome {
    Parsed(ParsedSentence),
    Rejected(SentenceRejection),
}

/// Streams sentence blocks out of a CoNLL-U source.
pub struct ConlluReader<R> {
    lines: std::io::Lines<R>,
    line_no: usize,
    doc_id: String,
    done: bool,
}

impl<R: BufRead> ConlluReader<R> {
    /// `default_doc_id` applies until the first `# newdoc id =` marker.
    pub fn new(reader: R, default_doc_id: impl Into<String>) -> Self {
        ConlluReader {
            lines: reader.lines(),
            line_no: 0,
            doc_id: default_doc_id.into(),
            done: false,
        }
    }

    fn next_block(&mut self) -> Result<Option<SentenceOutcome>> {
        let mut tokens: Vec<Token> = Vec::new();
        let mut start_line = 0;
        let mut block_doc = self.doc_id.clone();
        loop {
            let Some(line) = self.lines.next() else {
                self.done = true;
                break;
            };
            let line = line?;
            self.line_no += 1;
            let trimmed = line.trim_end_matches(['\r', '\n']);
            if trimmed.trim().is_empty() {
                if tokens.is_empty() {
                    continue;
                }
                break;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                if let Some(id) = comment.trim().strip_prefix("newdoc id") {
                    self.doc_id = id.trim_start().trim_start_matches('=').trim().to_string();
                    if tokens.is_empty() {
                        block_doc = self.doc_id.clone();
                    }
                }
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            if fields.len() != 10 {
                return Err(Error::Conllu {
                    line: self.line_no,
                    message: format!("expected 10 tab-separated columns, found {}", fields.len()),
                });
            }
            if fields[0].contains('-') || fields[0].contains('.') {
                continue;
            }
            let index: usize = fields[0].parse().map_err(|_| Error::Conllu {
                line: self.line_no,
                message: format!("bad token id {:?}", fields[0]),
            })?;
            let head: usize = fields[6].parse().map_err(|_| Error::Conllu {
                line: self.line_no,
                message: format!("bad head {:?}", fields[6]),
            })?;
            let upos: Upos = fields[3].parse().map_err(|message| Error::Conllu {
                line: self.line_no,
                message,
            })?;
            if tokens.is_empty() {
                start_line = self.line_no;
            }
            tokens.push(Token {
                index,
                form: fields[1].to_string(),
                lemma: fields[2].to_string(),
                upos,
                head,
                deprel: fields[7].to_string(),
            });
        }
        if tokens.is_empty() {
            return Ok(None);
        }
        Ok(Some(match validate_tokens(&tokens) {
            Ok(()) => SentenceOutcome::Parsed(ParsedSentence {
                doc_id: block_doc,
                tokens,
            }),
            Err(reason) => SentenceOutcome::Rejected(SentenceRejection {
                line: start_line,
                doc_id: block_doc,
                reason,
            }),
        }))
    }
}

impl<R: BufRead> Iterator for ConlluReader<R> {
    type Item = Result<SentenceOutcome>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.next_block() {
            Ok(Some(outcome)) => Some(Ok(outcome)),
            Ok(None) => None,
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ConlluCorpus {
    pub sentences: Vec<ParsedSentence>,
    pub rejected: Vec<SentenceRejection>,
}

/// Reads a whole CoNLL-U source. Invalid trees are collected as rejections;
/// malformed lines fail the whole read.
pub fn read_conllu<R: BufRead>(reader: R, default_doc_id: &str) -> Result<ConlluCorpus> {
    let mut corpus = ConlluCorpus::default();
    for outcome in ConlluReader::new(reader, default_doc_id) {
        match outcome? {
            SentenceOutcome::Parsed(s) => corpus.sentences.push(s),
            SentenceOutcome::Rejected(r) => {
                log::warn!("rejected sentence at line {}: {}", r.line, r.reason);
                corpus.rejected.push(r);
            }
        }
    }
    Ok(corpus)
}

fn field(s: &str) -> &str {
    if s.is_empty() {
        "_"
    } else {
        s
    }
}

/// Writes sentences as CoNLL-U, emitting a `# newdoc id` line whenever the
/// document changes.
pub fn write_conllu(sentences: &[ParsedSentence]) -> String {
    let mut out = String::new();
    let mut current_doc: Option<&str> = None;
    for s in sentences {
        if current_doc != Some(s.doc_id.as_str()) {
            let _ = writeln!(out, "# newdoc id = {}", s.doc_id);
            current_doc = Some(&s.doc_id);
        }
        for t in &s.tokens {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t_",
                t.index,
                field(&t.form),
                field(&t.lemma),
                t.upos,
                t.head,
                field(&t.deprel)
            );
        }
        out.push('\n');
    }
    out
}
