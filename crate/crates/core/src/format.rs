//! TOML documents describing groups and presentations.
//!
//! ```toml
//! type = "perm"            # or "cayley", "matrix", "presentation", "presentation-ref"
//! degree = 3
//! generators = [[1, 0, 2]]
//! ```
//!
//! `cayley` takes `order` and `table` (rows of element indices), `matrix`
//! takes `prime`, `dim` and row-major `generators`, `presentation` takes
//! generator names and relator words, and `presentation-ref` pairs a
//! presentation (a path relative to the document, or an inline table) with
//! permutation images of its generators, checking every relator.

use std::path::Path;

use serde::Serialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup, Realization};
use crate::matrix::FpMatrix;
use crate::perm::Permutation;
use crate::presentation::{parse_word, Presentation};

#[derive(Clone, Debug)]
pub enum Document {
    Group(FiniteGroup),
    Presentation(Presentation),
    /// A presentation together with a permutation group satisfying it.
    Realized {
        presentation: Presentation,
        group: FiniteGroup,
    },
}

impl Document {
    pub fn group(&self) -> Option<&FiniteGroup> {
        match self {
            Document::Group(g) | Document::Realized { group: g, .. } => Some(g),
            Document::Presentation(_) => None,
        }
    }

    /// The presentation, or one read off the group's Cayley graph.
    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            Document::Presentation(p) | Document::Realized { presentation: p, .. } => Ok(p.clone()),
            Document::Group(g) => Ok(Presentation::of_group(g)?.with_name(g.name().to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Document::Group(g) | Document::Realized { group: g, .. } => g.name().to_string(),
            Document::Presentation(p) => p.name().to_string(),
        }
    }
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn err(&self, span: std::ops::Range<usize>, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: line_of(self.src, span.start),
            message: msg.into(),
        }
    }

    fn at(&self, span: std::ops::Range<usize>, e: Error) -> Error {
        let message = match e {
            Error::Parse { message, .. } => message,
            other => other.to_string(),
        };
        Error::Parse {
            line: line_of(self.src, span.start),
            message,
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpanned {
    #[serde(rename = "type")]
    kind: Spanned<String>,
    name: Option<Spanned<String>>,
    degree: Option<Spanned<i64>>,
    order: Option<Spanned<i64>>,
    prime: Option<Spanned<i64>>,
    dim: Option<Spanned<i64>>,
    generators: Option<Spanned<Vec<Spanned<toml::Value>>>>,
    relators: Option<Spanned<Vec<Spanned<String>>>>,
    table: Option<Spanned<Vec<Spanned<Vec<i64>>>>>,
    presentation: Option<Spanned<toml::Value>>,
}

fn int_list(ctx: &Ctx<'_>, v: &Spanned<toml::Value>) -> Result<Vec<i64>> {
    let arr = v
        .get_ref()
        .as_array()
        .ok_or_else(|| ctx.err(v.span(), "expected an array of integers"))?;
    arr.iter()
        .map(|x| {
            x.as_integer()
                .ok_or_else(|| ctx.err(v.span(), "expected an integer"))
        })
        .collect()
}

fn name_list(ctx: &Ctx<'_>, gens: &Spanned<Vec<Spanned<toml::Value>>>) -> Result<Vec<String>> {
    gens.get_ref()
        .iter()
        .map(|g| {
            g.get_ref()
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| ctx.err(g.span(), "generator names must be strings"))
        })
        .collect()
}

fn nonneg(ctx: &Ctx<'_>, v: &Spanned<i64>, what: &str) -> Result<usize> {
    usize::try_from(*v.get_ref())
        .map_err(|_| ctx.err(v.span(), format!("{what} must be nonnegative")))
}

fn required<'a, T>(ctx: &Ctx<'_>, v: &'a Option<T>, key: &str, kind: &Spanned<String>) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| ctx.err(kind.span(), format!("type {} needs `{key}`", kind.get_ref())))
}

fn presentation_from(
    ctx: &Ctx<'_>,
    gens: &Spanned<Vec<Spanned<toml::Value>>>,
    rels: Option<&Spanned<Vec<Spanned<String>>>>,
    name: Option<&Spanned<String>>,
) -> Result<Presentation> {
    let names = name_list(ctx, gens)?;
    let mut words = Vec::new();
    if let Some(rels) = rels {
        for r in rels.get_ref() {
            words.push(parse_word(r.get_ref(), &names).map_err(|e| ctx.at(r.span(), e))?);
        }
    }
    let p = Presentation::new(names, words).map_err(|e| ctx.at(gens.span(), e))?;
    Ok(match name {
        Some(n) => p.with_name(n.get_ref().clone()),
        None => p,
    })
}

fn perm_generators(
    ctx: &Ctx<'_>,
    gens: &Spanned<Vec<Spanned<toml::Value>>>,
    degree: usize,
) -> Result<Vec<Permutation>> {
    gens.get_ref()
        .iter()
        .map(|g| {
            let ints = int_list(ctx, g)?;
            if ints.len() != degree {
                return Err(ctx.err(
                    g.span(),
                    format!("permutation has {} images but degree is {degree}", ints.len()),
                ));
            }
            let images = ints
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| ctx.err(g.span(), "negative image")))
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(images).map_err(|_| ctx.err(g.span(), "not a bijection"))
        })
        .collect()
}

/// Parses a document. `base` resolves `presentation-ref` paths.
pub fn parse_document(src: &str, base: Option<&Path>) -> Result<Document> {
    let ctx = Ctx { src };
    let raw: RawSpanned = toml::from_str(src).map_err(|e| Error::Parse {
        line: e.span().map_or(1, |s| line_of(src, s.start)),
        message: e.message().to_string(),
    })?;
    let kind = &raw.kind;
    let name = raw.name.as_ref().map(|n| n.get_ref().clone());
    let named = |g: FiniteGroup| match &name {
        Some(n) => g.with_name(n.clone()),
        None => g,
    };
    match kind.get_ref().as_str() {
        "perm" => {
            let degree = nonneg(&ctx, required(&ctx, &raw.degree, "degree", kind)?, "degree")?;
            let gens = required(&ctx, &raw.generators, "generators", kind)?;
            let perms = perm_generators(&ctx, gens, degree)?;
            Ok(Document::Group(named(FiniteGroup::perm(degree, perms)?)))
        }
        "cayley" => {
            let order = nonneg(&ctx, required(&ctx, &raw.order, "order", kind)?, "order")?;
            let table = required(&ctx, &raw.table, "table", kind)?;
            if table.get_ref().len() != order {
                return Err(ctx.err(table.span(), format!("table must have {order} rows")));
            }
            let mut rows = Vec::new();
            for row in table.get_ref() {
                if row.get_ref().len() != order || row.get_ref().iter().any(|&x| x < 0 || x as usize >= order) {
                    return Err(ctx.err(
                        row.span(),
                        format!("each row needs {order} entries in 0..{order}"),
                    ));
                }
                rows.push(row.get_ref().iter().map(|&x| x as u32).collect());
            }
            let t = CayleyTable::new(rows).map_err(|e| ctx.at(table.span(), e))?;
            Ok(Document::Group(named(FiniteGroup::cayley(t))))
        }
        "matrix" => {
            let p_raw = required(&ctx, &raw.prime, "prime", kind)?;
            let p = u32::try_from(*p_raw.get_ref())
                .ok()
                .filter(|&p| crate::numtheory::is_prime(p as u64))
                .ok_or_else(|| ctx.err(p_raw.span(), "prime must be a prime"))?;
            let dim = nonneg(&ctx, required(&ctx, &raw.dim, "dim", kind)?, "dim")?;
            let gens = required(&ctx, &raw.generators, "generators", kind)?;
            let mut mats = Vec::new();
            for g in gens.get_ref() {
                let ints = int_list(&ctx, g)?;
                if ints.len() != dim * dim {
                    return Err(ctx.err(g.span(), format!("matrix needs {} entries", dim * dim)));
                }
                let m = FpMatrix::from_row_major(p, &ints).map_err(|e| ctx.at(g.span(), e))?;
                if !m.is_invertible() {
                    return Err(ctx.err(g.span(), "matrix is not invertible"));
                }
                mats.push(m);
            }
            Ok(Document::Group(named(FiniteGroup::matrix(p, dim, mats)?)))
        }
        "presentation" => {
            let gens = required(&ctx, &raw.generators, "generators", kind)?;
            let p = presentation_from(&ctx, gens, raw.relators.as_ref(), raw.name.as_ref())?;
            Ok(Document::Presentation(p))
        }
        "presentation-ref" => {
            let pres_field = required(&ctx, &raw.presentation, "presentation", kind)?;
            let presentation = match pres_field.get_ref() {
                toml::Value::String(path) => {
                    let full = base.map_or_else(|| Path::new(path).to_path_buf(), |b| b.join(path));
                    let text = std::fs::read_to_string(&full).map_err(|e| {
                        ctx.err(pres_field.span(), format!("cannot read {}: {e}", full.display()))
                    })?;
                    match parse_document(&text, full.parent()) {
                        Ok(Document::Presentation(p)) => p,
                        Ok(_) => {
                            return Err(ctx.err(
                                pres_field.span(),
                                format!("{} is not a presentation", full.display()),
                            ))
                        }
                        Err(e) => {
                            return Err(ctx.err(
                                pres_field.span(),
                                format!("in {}: {e}", full.display()),
                            ))
                        }
                    }
                }
                toml::Value::Table(_) => {
                    let inline = toml::to_string(pres_field.get_ref()).expect("table serializes");
                    let mut doc = String::from("type = \"presentation\"\n");
                    doc.push_str(&inline);
                    match parse_document(&doc, base) {
                        Ok(Document::Presentation(p)) => p,
                        Ok(_) => unreachable!(),
                        Err(e) => return Err(ctx.at(pres_field.span(), e)),
                    }
                }
                _ => {
                    return Err(ctx.err(
                        pres_field.span(),
                        "presentation must be a path or an inline table",
                    ))
                }
            };
            let degree = nonneg(&ctx, required(&ctx, &raw.degree, "degree", kind)?, "degree")?;
            let gens = required(&ctx, &raw.generators, "generators", kind)?;
            let perms = perm_generators(&ctx, gens, degree)?;
            if perms.len() != presentation.num_generators() {
                return Err(ctx.err(
                    gens.span(),
                    format!(
                        "{} images for {} presentation generators",
                        perms.len(),
                        presentation.num_generators()
                    ),
                ));
            }
            for (i, r) in presentation.relators().iter().enumerate() {
                let mut acc = Permutation::identity(degree);
                for &(g, k) in r {
                    let base_perm = if k < 0 { perms[g].inverse() } else { perms[g].clone() };
                    for _ in 0..k.unsigned_abs() {
                        acc = acc.compose(&base_perm)?;
                    }
                }
                if !acc.is_identity() {
                    return Err(ctx.err(
                        gens.span(),
                        format!(
                            "relator {} ({}) does not hold for these images",
                            i,
                            presentation.word_to_string(r)
                        ),
                    ));
                }
            }
            let group = FiniteGroup::perm(degree, perms)?
                .with_name(name.clone().unwrap_or_else(|| presentation.name().to_string()));
            Ok(Document::Realized {
                presentation,
                group,
            })
        }
        other => Err(ctx.err(
            kind.span(),
            format!("unknown type {other:?}; expected perm, cayley, matrix, presentation or presentation-ref"),
        )),
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text, path.parent())
}

#[derive(Serialize)]
struct CanonicalPresentation {
    generators: Vec<String>,
    relators: Vec<String>,
}

#[derive(Serialize)]
struct Canonical {
    #[serde(rename = "type")]
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentation: Option<CanonicalPresentation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<toml::Value>,
}

fn empty(kind: &'static str, name: Option<String>) -> Canonical {
    Canonical {
        kind,
        name,
        degree: None,
        order: None,
        prime: None,
        dim: None,
        relators: None,
        table: None,
        presentation: None,
        generators: None,
    }
}

fn int_rows(gens: &[Box<[u32]>]) -> toml::Value {
    toml::Value::Array(
        gens.iter()
            .map(|g| toml::Value::Array(g.iter().map(|&x| toml::Value::Integer(x as i64)).collect()))
            .collect(),
    )
}

fn names_value(names: &[String]) -> toml::Value {
    toml::Value::Array(names.iter().map(|s| toml::Value::String(s.clone())).collect())
}

/// Canonical TOML for a document; `parse_document` reads it back to an equal
/// document.
pub fn to_toml(doc: &Document) -> Result<String> {
    let c = match doc {
        Document::Presentation(p) => {
            let mut c = empty("presentation", Some(p.name().to_string()));
            c.generators = Some(names_value(p.generators()));
            c.relators = Some(p.relator_strings());
            c
        }
        Document::Realized {
            presentation,
            group,
        } => {
            let mut c = empty("presentation-ref", Some(group.name().to_string()));
            c.degree = group.degree();
            c.presentation = Some(CanonicalPresentation {
                generators: presentation.generators().to_vec(),
                relators: presentation.relator_strings(),
            });
            c.generators = Some(int_rows(group.generators()));
            c
        }
        Document::Group(g) => match g.realization() {
            Realization::Perm { degree } => {
                let mut c = empty("perm", Some(g.name().to_string()));
                c.degree = Some(*degree);
                c.generators = Some(int_rows(g.generators()));
                c
            }
            Realization::Cayley { table } => {
                let mut c = empty("cayley", Some(g.name().to_string()));
                c.order = Some(table.order());
                c.table = Some(table.rows());
                c
            }
            Realization::Matrix { prime, dim } => {
                let mut c = empty("matrix", Some(g.name().to_string()));
                c.prime = Some(*prime);
                c.dim = Some(*dim);
                c.generators = Some(int_rows(g.generators()));
                c
            }
            other => {
                return Err(Error::Invalid(format!(
                    "{} groups have no file format",
                    other.kind()
                )))
            }
        },
    };
    toml::to_string(&c).map_err(|e| Error::Invalid(e.to_string()))
}
