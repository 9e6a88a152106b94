//! Finite presentations: generator names and relator words.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Enumeration, FiniteGroup};

/// A word as `(generator index, nonzero exponent)` syllables.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    generators: Vec<String>,
    relators: Vec<Word>,
}

/// Merges adjacent syllables on the same generator and drops zero exponents.
pub fn reduce(word: &[(usize, i64)]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &(g, e) in word {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    out
}

pub fn invert_word(word: &[(usize, i64)]) -> Word {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, name) in generators.iter().enumerate() {
            if generators[..i].contains(name) {
                return Err(Error::Invalid(format!("generator {name} declared twice")));
            }
        }
        for r in &relators {
            if let Some(&(g, _)) = r.iter().find(|&&(g, _)| g >= generators.len()) {
                return Err(Error::Invalid(format!(
                    "relator uses generator index {g} but only {} are declared",
                    generators.len()
                )));
            }
            if r.iter().any(|&(_, e)| e == 0) {
                return Err(Error::Invalid("relator has a zero exponent".into()));
            }
        }
        let name = format!("<{} | {} relators>", generators.join(","), relators.len());
        Ok(Presentation {
            name,
            generators,
            relators,
        })
    }

    /// Parses relator strings such as `a^2`, `(a*b)^5`, `a^-1*b` or `[a,b]`.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let words = relators
            .iter()
            .map(|r| parse_word(r, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, words)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Free group of rank `d`.
    pub fn free(d: usize) -> Self {
        let names = (0..d).map(|i| format!("x{i}")).collect();
        Self::new(names, vec![])
            .unwrap()
            .with_name(format!("F{d}"))
    }

    /// `<g | g^m>`.
    pub fn cyclic(m: u64) -> Self {
        Self::new(vec!["g".into()], vec![vec![(0, m as i64)]])
            .unwrap()
            .with_name(format!("C{m}"))
    }

    /// `<a, b | a^2, b^3, (ab)^5>`, a presentation of Alt(5).
    pub fn alternating5() -> Self {
        Self::parse(&["a", "b"], &["a^2", "b^3", "(a*b)^5"])
            .unwrap()
            .with_name("A5")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Disjoint union: generators renamed apart, relators concatenated.
    pub fn free_product(factors: &[Presentation]) -> Presentation {
        let mut generators = Vec::new();
        let mut relators = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            let offset = generators.len();
            for g in &f.generators {
                generators.push(if factors.len() == 1 {
                    g.clone()
                } else {
                    format!("{g}_{i}")
                });
            }
            for r in &f.relators {
                relators.push(r.iter().map(|&(g, e)| (g + offset, e)).collect());
            }
        }
        let name = factors
            .iter()
            .map(|f| f.name.as_str())
            .collect::<Vec<_>>()
            .join(" * ");
        Presentation {
            name,
            generators,
            relators,
        }
    }

    pub fn word_to_string(&self, word: &[(usize, i64)]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.generators[g].clone()
                } else {
                    format!("{}^{e}", self.generators[g])
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Relators rendered with [`Presentation::word_to_string`]; these parse
    /// back to the same words.
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.word_to_string(r)).collect()
    }

    /// Presentation read off the Cayley graph of `G`: a spanning tree from
    /// breadth-first search, and one relator per non-tree edge.
    pub fn of_group(g: &FiniteGroup) -> Result<Presentation> {
        let gens = g.generator_indices()?;
        Self::of_group_on(g, &gens)
    }

    /// Cayley-graph presentation on the given generating elements. The
    /// power relators `s^ord(s)` and `(s t)^ord(st)` are added in front; they
    /// are consequences of the others and let the hom search prune early.
    pub fn of_group_on(g: &FiniteGroup, gens: &[u32]) -> Result<Presentation> {
        let e = g.enumerate()?;
        let n = e.len();
        let mut tree: Vec<Option<Word>> = vec![None; n];
        tree[0] = Some(vec![]);
        let mut queue = VecDeque::from([0u32]);
        let mut order = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for (j, &s) in gens.iter().enumerate() {
                let y = e.mul(x, s);
                if tree[y as usize].is_none() {
                    let mut w = tree[x as usize].clone().unwrap();
                    w.push((j, 1));
                    tree[y as usize] = Some(reduce(&w));
                    queue.push_back(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Invalid(format!(
                "the chosen elements generate a subgroup of order {} in a group of order {n}",
                order.len()
            )));
        }
        let mut relators: Vec<Word> = Vec::new();
        for (j, &s) in gens.iter().enumerate() {
            relators.push(vec![(j, e.element_order(s) as i64)]);
        }
        for (i, &s) in gens.iter().enumerate() {
            for (j, &t) in gens.iter().enumerate().skip(i + 1) {
                let k = e.element_order(e.mul(s, t)) as usize;
                relators.push([(i, 1), (j, 1)].repeat(k));
            }
        }
        let mut cayley = Vec::new();
        for &x in &order {
            for (j, &s) in gens.iter().enumerate() {
                let y = e.mul(x, s);
                let mut w = tree[x as usize].clone().unwrap();
                w.push((j, 1));
                w.extend(invert_word(tree[y as usize].as_ref().unwrap()));
                let w = reduce(&w);
                if !w.is_empty() {
                    cayley.push(w);
                }
            }
        }
        cayley.sort();
        cayley.dedup();
        relators.extend(cayley.into_iter().filter(|w| w.len() > 1));
        let names = (0..gens.len()).map(|i| format!("s{i}")).collect();
        Ok(Presentation::new(names, relators)?.with_name(format!("pres({})", g.name())))
    }

    /// Checks every relator on the given images (element indices).
    pub fn satisfied_by(&self, e: &Enumeration, images: &[u32]) -> bool {
        self.relators.iter().all(|r| evaluate(e, r, images) == 0)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{} | {}>",
            self.generators.join(", "),
            self.relator_strings().join(", ")
        )
    }
}

/// Value of a word under generator images.
pub fn evaluate(e: &Enumeration, word: &[(usize, i64)], images: &[u32]) -> u32 {
    word.iter()
        .fold(0u32, |acc, &(g, k)| e.mul(acc, e.pow(images[g], k)))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Invalid(format!("in word {:?} at column {}: {msg}", self.text, self.pos + 1))
    }

    fn skip(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn product(&mut self) -> Result<Word> {
        let mut w = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            w.extend(self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(b')')?;
                w
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.product()?;
                self.expect(b',')?;
                let b = self.product()?;
                self.expect(b']')?;
                let mut w = invert_word(&a);
                w.extend(invert_word(&b));
                w.extend(a);
                w.extend(b);
                w
            }
            Some(b'1') => {
                self.pos += 1;
                vec![]
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                let g = self
                    .names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| {
                        self.pos = start;
                        self.err(&format!("undeclared generator {name}"))
                    })?;
                vec![(g, 1)]
            }
            _ => return Err(self.err("expected a generator, '(' or '['")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip();
            let start = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: i64 = self.text[start..self.pos]
                .parse()
                .map_err(|_| self.err("expected an integer exponent"))?;
            Ok(power(&base, k))
        } else {
            Ok(base)
        }
    }
}

fn power(w: &[(usize, i64)], k: i64) -> Word {
    if w.len() == 1 {
        return vec![(w[0].0, w[0].1 * k)];
    }
    let unit = if k < 0 { invert_word(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(unit.len() * k.unsigned_abs() as usize);
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&unit);
    }
    out
}

/// Parses one word over the declared generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        names,
        text,
    };
    let w = p.product()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(reduce(&w))
}
