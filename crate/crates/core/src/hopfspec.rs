//! HopfSpec: a line-oriented text format for Hopf algebras, functionals,
//! R-matrices and YD modules and algebras.
//!
//! ```text
//! hopfspec 1
//! field rationals            # or `gf 5`, or `ratfun`
//! hopf H4
//!   basis 1 g h gh
//!   mult g h gh 1            # e_g e_h has coefficient 1 at e_gh
//!   unit 1 1
//!   comult g g g 1           # Δ(e_g) has coefficient 1 at e_g ⊗ e_g
//!   counit g 1
//!   antipode h gh 1          # S(e_h) has coefficient 1 at e_gh
//! end
//! functional sigma arity 2 on H4
//!   entry gh gh -t/2
//! end
//! ydmodule V on H4
//!   basis v0 v1
//!   act g v1 v1 -1           # g·v1 has coefficient -1 at v1
//!   coact v1 v1 g 1          # χ(v1) has coefficient 1 at v1 ⊗ g
//! end
//! ```
//!
//! `ydalgebra` blocks take the `ydmodule` lines plus `mult` and `unit`;
//! `rmatrix` blocks take `entry a b v`. `on <hopf>` defaults to the most
//! recent `hopf` block. Every entry is listed at most once and omitted
//! entries are zero. Scalars are single tokens such as `3/2` or `(t+1)/t`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::convolution::Functional;
use crate::double::RMatrix;
use crate::error::{Error, Result};
use crate::hopf::{join_index, split_index, FinHopf, HopfBuilder};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use crate::yd::{YDAlgebra, YDModule};

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

/// A YD module together with the labels of its basis.
#[derive(Clone, Debug)]
pub struct LabeledModule {
    pub labels: Vec<String>,
    pub module: YDModule,
}

#[derive(Clone, Debug)]
pub struct LabeledAlgebra {
    pub labels: Vec<String>,
    pub algebra: YDAlgebra,
}

#[derive(Clone, Debug)]
pub struct Document {
    pub field: Field,
    pub hopfs: Vec<Named<Arc<FinHopf>>>,
    pub functionals: Vec<Named<Functional>>,
    pub rmatrices: Vec<Named<RMatrix>>,
    pub modules: Vec<Named<LabeledModule>>,
    pub algebras: Vec<Named<LabeledAlgebra>>,
}

fn find<'a, T>(items: &'a [Named<T>], name: &str) -> Option<&'a T> {
    items.iter().find(|x| x.name == name).map(|x| &x.value)
}

impl Document {
    pub fn new(field: Field) -> Document {
        Document {
            field,
            hopfs: Vec::new(),
            functionals: Vec::new(),
            rmatrices: Vec::new(),
            modules: Vec::new(),
            algebras: Vec::new(),
        }
    }

    pub fn hopf(&self, name: &str) -> Option<&Arc<FinHopf>> {
        find(&self.hopfs, name)
    }

    pub fn functional(&self, name: &str) -> Option<&Functional> {
        find(&self.functionals, name)
    }

    pub fn rmatrix(&self, name: &str) -> Option<&RMatrix> {
        find(&self.rmatrices, name)
    }

    pub fn module(&self, name: &str) -> Option<&YDModule> {
        find(&self.modules, name).map(|m| &m.module)
    }

    pub fn algebra(&self, name: &str) -> Option<&YDAlgebra> {
        find(&self.algebras, name).map(|a| &a.algebra)
    }

    /// The first `hopf` block, if any.
    pub fn primary(&self) -> Option<&Arc<FinHopf>> {
        self.hopfs.first().map(|h| &h.value)
    }

    pub fn add_hopf(&mut self, name: &str, h: Arc<FinHopf>) {
        self.hopfs.push(Named {
            name: name.to_string(),
            value: h,
        });
    }

    pub fn add_functional(&mut self, name: &str, f: Functional) {
        self.functionals.push(Named {
            name: name.to_string(),
            value: f,
        });
    }

    pub fn add_rmatrix(&mut self, name: &str, r: RMatrix) {
        self.rmatrices.push(Named {
            name: name.to_string(),
            value: r,
        });
    }

    pub fn add_module(&mut self, name: &str, module: YDModule) {
        let labels = (0..module.dim()).map(|i| format!("m{i}")).collect();
        self.modules.push(Named {
            name: name.to_string(),
            value: LabeledModule { labels, module },
        });
    }

    pub fn add_algebra(&mut self, name: &str, algebra: YDAlgebra) {
        let labels = (0..algebra.dim()).map(|i| format!("a{i}")).collect();
        self.algebras.push(Named {
            name: name.to_string(),
            value: LabeledAlgebra { labels, algebra },
        });
    }

    /// Serializes the document. Objects must live over hosts in `hopfs`.
    pub fn to_text(&self) -> Result<String> {
        let mut w = Writer::default();
        w.line("hopfspec 1".into());
        w.line(match self.field {
            Field::Rational => "field rationals".into(),
            Field::Prime(p) => format!("field gf {p}"),
            Field::RatFun => "field ratfun".into(),
        });
        for h in &self.hopfs {
            check_token(&h.name)?;
            w.hopf(&h.name, &h.value)?;
        }
        for f in &self.functionals {
            let host = self.host_name(f.value.host())?;
            check_token(&f.name)?;
            w.line(format!("functional {} arity {} on {host}", f.name, f.value.arity()));
            let h = f.value.host();
            for (p, v) in f.value.coeffs().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let labels: Vec<&str> = split_index(p, h.dim(), f.value.arity())
                    .into_iter()
                    .map(|i| h.labels()[i].as_str())
                    .collect();
                w.line(format!("  entry {} {v}", labels.join(" ")));
            }
            w.line("end".into());
        }
        for r in &self.rmatrices {
            let host = self.host_name(r.value.host())?;
            check_token(&r.name)?;
            w.line(format!("rmatrix {} on {host}", r.name));
            let h = r.value.host();
            let n = h.dim();
            for (p, v) in r.value.coeffs().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                w.line(format!("  entry {} {} {v}", h.labels()[p / n], h.labels()[p % n]));
            }
            w.line("end".into());
        }
        for m in &self.modules {
            let host = self.host_name(m.value.module.host())?;
            check_token(&m.name)?;
            w.line(format!("ydmodule {} on {host}", m.name));
            w.module_body(&m.value.labels, &m.value.module)?;
            w.line("end".into());
        }
        for a in &self.algebras {
            let alg = &a.value.algebra;
            let host = self.host_name(alg.host())?;
            check_token(&a.name)?;
            w.line(format!("ydalgebra {} on {host}", a.name));
            let labels = &a.value.labels;
            w.module_body(labels, alg.module())?;
            let m = alg.dim();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let v = alg.mult().get(k, i * m + j);
                        if !v.is_zero() {
                            w.line(format!("  mult {} {} {} {v}", labels[i], labels[j], labels[k]));
                        }
                    }
                }
            }
            for (i, v) in alg.unit().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                w.line(format!("  unit {} {v}", labels[i]));
            }
            w.line("end".into());
        }
        Ok(w.out)
    }

    fn host_name(&self, host: &Arc<FinHopf>) -> Result<&str> {
        self.hopfs
            .iter()
            .find(|h| Arc::ptr_eq(&h.value, host))
            .or_else(|| self.hopfs.iter().find(|h| h.value.structure_eq(host)))
            .map(|h| h.name.as_str())
            .ok_or_else(|| Error::StructureInvalid("object lives over a Hopf algebra not in the document".into()))
    }
}

fn check_token(s: &str) -> Result<()> {
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(Error::StructureInvalid(format!("`{s}` is not a valid name or label")));
    }
    Ok(())
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        check_token(l)?;
        if !seen.insert(l) {
            return Err(Error::StructureInvalid(format!("repeated label `{l}`")));
        }
    }
    Ok(())
}

#[derive(Default)]
struct Writer {
    out: String,
}

impl Writer {
    fn line(&mut self, s: String) {
        self.out.push_str(&s);
        self.out.push('\n');
    }

    fn hopf(&mut self, name: &str, h: &FinHopf) -> Result<()> {
        let labels = h.labels();
        check_labels(labels)?;
        let n = h.dim();
        self.line(format!("hopf {name}"));
        self.line(format!("  dim {n}"));
        self.line(format!("  basis {}", labels.join(" ")));
        for i in 0..n {
            for j in 0..n {
                for (k, v) in h.mul_basis(i, j) {
                    self.line(format!("  mult {} {} {} {v}", labels[i], labels[j], labels[*k]));
                }
            }
        }
        for (i, v) in h.unit().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            self.line(format!("  unit {} {v}", labels[i]));
        }
        for k in 0..n {
            for (p, v) in h.coproduct_basis(k) {
                self.line(format!(
                    "  comult {} {} {} {v}",
                    labels[p / n],
                    labels[p % n],
                    labels[k]
                ));
            }
        }
        for (i, v) in h.counit().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            self.line(format!("  counit {} {v}", labels[i]));
        }
        if let Some(s) = h.antipode() {
            for j in 0..n {
                for i in 0..n {
                    let v = s.get(i, j);
                    if !v.is_zero() {
                        self.line(format!("  antipode {} {} {v}", labels[j], labels[i]));
                    }
                }
            }
        }
        self.line("end".into());
        Ok(())
    }

    fn module_body(&mut self, labels: &[String], m: &YDModule) -> Result<()> {
        check_labels(labels)?;
        let h = m.host();
        let (n, d) = (h.dim(), m.dim());
        self.line(format!("  dim {d}"));
        self.line(format!("  basis {}", labels.join(" ")));
        for a in 0..n {
            for i in 0..d {
                for j in 0..d {
                    let v = m.action(a).get(j, i);
                    if !v.is_zero() {
                        self.line(format!("  act {} {} {} {v}", h.labels()[a], labels[i], labels[j]));
                    }
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for b in 0..n {
                    let v = m.coaction().get(j * n + b, i);
                    if !v.is_zero() {
                        self.line(format!("  coact {} {} {} {v}", labels[i], labels[j], h.labels()[b]));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
}

impl Line<'_> {
    fn err(&self, tok: usize, message: impl Into<String>) -> Error {
        let column = self.toks.get(tok).map_or(1, |t| t.col);
        Error::Parse {
            line: self.no,
            column,
            message: message.into(),
        }
    }

    fn arity(&self, k: usize) -> Result<()> {
        if self.toks.len() != k + 1 {
            let at = self.toks.len().min(k + 1);
            return Err(self.err(
                at,
                format!(
                    "`{}` takes {k} arguments, found {}",
                    self.toks[0].text,
                    self.toks.len() - 1
                ),
            ));
        }
        Ok(())
    }

    fn usize_at(&self, i: usize) -> Result<usize> {
        self.toks[i].text.parse().map_err(|_| {
            self.err(
                i,
                format!("expected a non-negative integer, found `{}`", self.toks[i].text),
            )
        })
    }

    fn scalar_at(&self, field: Field, i: usize) -> Result<Scalar> {
        let t = self.toks[i];
        field.parse(t.text).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::Parse {
                line: self.no,
                column: t.col + column - 1,
                message,
            },
            other => Error::Parse {
                line: self.no,
                column: t.col,
                message: other.to_string(),
            },
        })
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start: Option<usize> = None;
        let mut col = 0;
        let mut start_col = 0;
        for (b, ch) in body.char_indices() {
            col += 1;
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    toks.push(Tok {
                        text: &body[s..b],
                        col: start_col,
                    });
                }
            } else if start.is_none() {
                start = Some(b);
                start_col = col;
            }
        }
        if let Some(s) = start {
            toks.push(Tok {
                text: &body[s..],
                col: start_col,
            });
        }
        if !toks.is_empty() {
            lines.push(Line { no: no + 1, toks });
        }
    }
    lines
}

/// Basis labels of a block, fixed by `dim` and/or `basis` lines.
struct Basis {
    labels: Option<Vec<String>>,
    dim: Option<(usize, usize)>,
    index: HashMap<String, usize>,
}

impl Basis {
    fn new() -> Basis {
        Basis {
            labels: None,
            dim: None,
            index: HashMap::new(),
        }
    }

    /// Handles `dim` and `basis`; returns false for any other keyword.
    fn header(&mut self, line: &Line) -> Result<bool> {
        match line.toks[0].text {
            "dim" => {
                line.arity(1)?;
                if self.labels.is_some() || self.dim.is_some() {
                    return Err(line.err(0, "`dim` must come first and only once"));
                }
                self.dim = Some((line.usize_at(1)?, line.no));
                Ok(true)
            }
            "basis" => {
                if self.labels.is_some() {
                    return Err(line.err(0, "repeated `basis`"));
                }
                let labels: Vec<String> = line.toks[1..].iter().map(|t| t.text.to_string()).collect();
                if let Some((d, _)) = self.dim {
                    if d != labels.len() {
                        return Err(line.err(0, format!("`dim {d}` but {} labels", labels.len())));
                    }
                }
                for (i, l) in labels.iter().enumerate() {
                    if self.index.insert(l.clone(), i).is_some() {
                        return Err(line.err(i + 1, format!("repeated label `{l}`")));
                    }
                }
                self.labels = Some(labels);
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    fn fix(&mut self, line: &Line) -> Result<usize> {
        if self.labels.is_none() {
            let Some((d, _)) = self.dim else {
                return Err(line.err(0, "`dim` or `basis` must come before entries"));
            };
            let labels: Vec<String> = (0..d).map(|i| format!("e{i}")).collect();
            for (i, l) in labels.iter().enumerate() {
                self.index.insert(l.clone(), i);
            }
            self.labels = Some(labels);
        }
        Ok(self.labels.as_ref().map_or(0, Vec::len))
    }

    fn finish(&mut self, line: &Line) -> Result<Vec<String>> {
        self.fix(line)?;
        Ok(self.labels.take().unwrap_or_default())
    }

    fn lookup(&self, line: &Line, i: usize) -> Result<usize> {
        let l = line.toks[i].text;
        self.index
            .get(l)
            .copied()
            .ok_or_else(|| line.err(i, format!("unknown label `{l}`")))
    }
}

fn host_lookup(line: &Line, h: &FinHopf, i: usize) -> Result<usize> {
    let l = line.toks[i].text;
    h.index_of(l)
        .ok_or_else(|| line.err(i, format!("unknown label `{l}` of the Hopf algebra")))
}

/// Rejects a second entry for the same key.
struct Seen(HashSet<(String, Vec<usize>)>);

impl Seen {
    fn once(&mut self, line: &Line, key: Vec<usize>) -> Result<()> {
        if !self.0.insert((line.toks[0].text.to_string(), key)) {
            return Err(line.err(0, "repeated entry"));
        }
        Ok(())
    }
}

/// Parses a HopfSpec document.
pub fn parse(text: &str) -> Result<Document> {
    let lines = tokenize(text);
    let mut it = lines.iter().peekable();
    let first = it.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "empty document".into(),
    })?;
    if first.toks[0].text != "hopfspec" || first.toks.len() != 2 || first.toks[1].text != "1" {
        return Err(first.err(0, "expected header `hopfspec 1`"));
    }
    let fl = it.next().ok_or(Error::Parse {
        line: first.no + 1,
        column: 1,
        message: "expected a `field` line".into(),
    })?;
    if fl.toks[0].text != "field" || fl.toks.len() < 2 {
        return Err(fl.err(0, "expected `field rationals`, `field gf <p>` or `field ratfun`"));
    }
    let field = match (fl.toks[1].text, fl.toks.len()) {
        ("rationals", 2) => Field::Rational,
        ("ratfun", 2) => Field::RatFun,
        ("gf", 3) => {
            let p = fl.usize_at(2)? as u64;
            Field::prime(p).map_err(|e| fl.err(2, e.to_string()))?
        }
        _ => return Err(fl.err(1, "expected `rationals`, `gf <p>` or `ratfun`")),
    };
    let mut doc = Document::new(field);
    while let Some(head) = it.next() {
        let mut body = Vec::new();
        let mut closed = None;
        for l in it.by_ref() {
            if l.toks[0].text == "end" {
                l.arity(0)?;
                closed = Some(l);
                break;
            }
            body.push(l);
        }
        let end = closed.ok_or_else(|| head.err(0, "block is missing `end`"))?;
        let kind = head.toks[0].text;
        let name = head
            .toks
            .get(1)
            .map(|t| t.text.to_string())
            .ok_or_else(|| head.err(0, format!("`{kind}` needs a name")))?;
        let taken = match kind {
            "hopf" => doc.hopf(&name).is_some(),
            "functional" => doc.functional(&name).is_some(),
            "rmatrix" => doc.rmatrix(&name).is_some(),
            "ydmodule" => doc.module(&name).is_some(),
            "ydalgebra" => doc.algebra(&name).is_some(),
            _ => return Err(head.err(0, format!("unknown block `{kind}`"))),
        };
        if taken {
            return Err(head.err(1, format!("repeated {kind} name `{name}`")));
        }
        match kind {
            "hopf" => {
                head.arity(1)?;
                let h = parse_hopf(field, &body, end)?;
                doc.add_hopf(&name, Arc::new(h));
            }
            "functional" => {
                let mut arity = None;
                let host = block_options(&doc, head, &mut arity)?;
                let k = arity.ok_or_else(|| head.err(0, "`functional` needs `arity <k>`"))?;
                let f = parse_functional(&host, k, &body)?;
                doc.add_functional(&name, f);
            }
            "rmatrix" => {
                let host = block_options(&doc, head, &mut None)?;
                let f = parse_functional(&host, 2, &body)?;
                let r = RMatrix::new(host, f.coeffs().to_vec()).map_err(|e| head.err(0, e.to_string()))?;
                doc.add_rmatrix(&name, r);
            }
            "ydmodule" | "ydalgebra" => {
                let host = block_options(&doc, head, &mut None)?;
                let (labels, module, alg) = parse_module(&host, &body, end, kind == "ydalgebra")?;
                match alg {
                    Some((mult, unit)) => {
                        let algebra = YDAlgebra::new(module, mult, unit).map_err(|e| head.err(0, e.to_string()))?;
                        doc.algebras.push(Named {
                            name,
                            value: LabeledAlgebra { labels, algebra },
                        });
                    }
                    None => doc.modules.push(Named {
                        name,
                        value: LabeledModule { labels, module },
                    }),
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(doc)
}

/// Reads `arity <k>` and `on <hopf>` after a block name.
fn block_options(doc: &Document, head: &Line, arity: &mut Option<usize>) -> Result<Arc<FinHopf>> {
    let mut host = None;
    let mut i = 2;
    while i < head.toks.len() {
        match head.toks[i].text {
            "on" if i + 1 < head.toks.len() => {
                let n = head.toks[i + 1].text;
                host = Some(
                    doc.hopf(n)
                        .cloned()
                        .ok_or_else(|| head.err(i + 1, format!("unknown hopf `{n}`")))?,
                );
            }
            "arity" if i + 1 < head.toks.len() && head.toks[0].text == "functional" => {
                *arity = Some(head.usize_at(i + 1)?);
            }
            other => return Err(head.err(i, format!("unexpected `{other}`"))),
        }
        i += 2;
    }
    match host {
        Some(h) => Ok(h),
        None => doc
            .hopfs
            .last()
            .map(|h| h.value.clone())
            .ok_or_else(|| head.err(0, "no `hopf` block to attach to")),
    }
}

fn parse_hopf(field: Field, body: &[&Line], end: &Line) -> Result<FinHopf> {
    let mut basis = Basis::new();
    let mut builder: Option<HopfBuilder> = None;
    let mut seen = Seen(HashSet::new());
    for &line in body {
        if basis.header(line)? {
            if builder.is_some() {
                return Err(line.err(0, "`dim` and `basis` must come before entries"));
            }
            continue;
        }
        basis.fix(line)?;
        let b = builder.get_or_insert_with(|| HopfBuilder::new(field, basis.labels.clone().unwrap_or_default()));
        match line.toks[0].text {
            "mult" | "comult" => {
                line.arity(4)?;
                let (i, j, k) = (basis.lookup(line, 1)?, basis.lookup(line, 2)?, basis.lookup(line, 3)?);
                let v = line.scalar_at(field, 4)?;
                seen.once(line, vec![i, j, k])?;
                if line.toks[0].text == "mult" {
                    b.product(i, j, k, v);
                } else {
                    b.coproduct(i, j, k, v);
                }
            }
            "unit" | "counit" => {
                line.arity(2)?;
                let i = basis.lookup(line, 1)?;
                let v = line.scalar_at(field, 2)?;
                seen.once(line, vec![i])?;
                if line.toks[0].text == "unit" {
                    b.unit(i, v);
                } else {
                    b.counit(i, v);
                }
            }
            "antipode" => {
                line.arity(3)?;
                let (i, j) = (basis.lookup(line, 1)?, basis.lookup(line, 2)?);
                let v = line.scalar_at(field, 3)?;
                seen.once(line, vec![i, j])?;
                b.antipode(j, i, v);
            }
            other => return Err(line.err(0, format!("unknown entry `{other}` in hopf block"))),
        }
    }
    let labels = basis.finish(end)?;
    let b = builder.unwrap_or_else(|| HopfBuilder::new(field, labels));
    b.build().map_err(|e| end.err(0, e.to_string()))
}

fn parse_functional(host: &Arc<FinHopf>, arity: usize, body: &[&Line]) -> Result<Functional> {
    let n = host.dim();
    let field = host.field();
    let len = n
        .checked_pow(arity as u32)
        .filter(|&l| l <= 1 << 24)
        .ok_or(Error::Parse {
            line: body.first().map_or(0, |l| l.no),
            column: 1,
            message: "arity too large".into(),
        })?;
    let mut coeffs = vec![field.zero(); len];
    let mut seen = Seen(HashSet::new());
    for &line in body {
        if line.toks[0].text != "entry" {
            return Err(line.err(0, format!("unknown entry `{}`", line.toks[0].text)));
        }
        line.arity(arity + 1)?;
        let idx = (1..=arity)
            .map(|i| host_lookup(line, host, i))
            .collect::<Result<Vec<_>>>()?;
        let v = line.scalar_at(field, arity + 1)?;
        seen.once(line, idx.clone())?;
        coeffs[join_index(&idx, n)] = v;
    }
    Functional::new(host.clone(), arity, coeffs)
}

type ModuleParts = (Vec<String>, YDModule, Option<(Matrix, Vec<Scalar>)>);

fn parse_module(host: &Arc<FinHopf>, body: &[&Line], end: &Line, algebra: bool) -> Result<ModuleParts> {
    let field = host.field();
    let n = host.dim();
    let mut basis = Basis::new();
    let mut seen = Seen(HashSet::new());
    let mut parts: Option<(Vec<Matrix>, Matrix, Matrix, Vec<Scalar>)> = None;
    for &line in body {
        if basis.header(line)? {
            if parts.is_some() {
                return Err(line.err(0, "`dim` and `basis` must come before entries"));
            }
            continue;
        }
        let m = basis.fix(line)?;
        let (act, coact, mult, unit) = parts.get_or_insert_with(|| {
            (
                vec![Matrix::zeros(field, m, m); n],
                Matrix::zeros(field, m * n, m),
                Matrix::zeros(field, m, m * m),
                vec![field.zero(); m],
            )
        });
        match line.toks[0].text {
            "act" => {
                line.arity(4)?;
                let a = host_lookup(line, host, 1)?;
                let (i, j) = (basis.lookup(line, 2)?, basis.lookup(line, 3)?);
                let v = line.scalar_at(field, 4)?;
                seen.once(line, vec![a, i, j])?;
                act[a].set(j, i, v);
            }
            "coact" => {
                line.arity(4)?;
                let (i, j) = (basis.lookup(line, 1)?, basis.lookup(line, 2)?);
                let b = host_lookup(line, host, 3)?;
                let v = line.scalar_at(field, 4)?;
                seen.once(line, vec![i, j, b])?;
                coact.set(j * n + b, i, v);
            }
            "mult" if algebra => {
                line.arity(4)?;
                let (i, j, k) = (basis.lookup(line, 1)?, basis.lookup(line, 2)?, basis.lookup(line, 3)?);
                let v = line.scalar_at(field, 4)?;
                seen.once(line, vec![i, j, k])?;
                mult.set(k, i * m + j, v);
            }
            "unit" if algebra => {
                line.arity(2)?;
                let i = basis.lookup(line, 1)?;
                let v = line.scalar_at(field, 2)?;
                seen.once(line, vec![i])?;
                unit[i] = v;
            }
            other => return Err(line.err(0, format!("unknown entry `{other}`"))),
        }
    }
    let labels = basis.finish(end)?;
    let m = labels.len();
    let (act, coact, mult, unit) = parts.unwrap_or_else(|| {
        (
            vec![Matrix::zeros(field, m, m); n],
            Matrix::zeros(field, m * n, m),
            Matrix::zeros(field, m, m * m),
            vec![field.zero(); m],
        )
    });
    let module = YDModule::new(host.clone(), act, coact).map_err(|e| end.err(0, e.to_string()))?;
    Ok((labels, module, algebra.then_some((mult, unit))))
}

/// Parses a document and returns its first Hopf algebra.
pub fn parse_hopf_text(text: &str) -> Result<Arc<FinHopf>> {
    let doc = parse(text)?;
    doc.primary().cloned().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "document has no `hopf` block".into(),
    })
}

/// Writes a single Hopf algebra as a complete document.
pub fn write_hopf(name: &str, h: &FinHopf) -> Result<String> {
    let mut doc = Document::new(h.field());
    doc.add_hopf(name, Arc::new(h.clone()));
    doc.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{graded_yd, h4_cocycle, h4_rform, h4_rmatrix, make_h4};
    use crate::yd::{end_algebra, EndSide};

    const H4_TEXT: &str = "hopfspec 1
field rationals
hopf H4   # Sweedler
  basis 1 g h gh
  mult 1 1 1 1
  mult 1 g g 1
  mult 1 h h 1
  mult 1 gh gh 1
  mult g 1 g 1
  mult g g 1 1
  mult g h gh 1
  mult g gh h 1
  mult h 1 h 1
  mult h g gh -1
  mult h gh 1 -1
  mult h gh 1 0
  end
";

    #[test]
    fn rejects_repeated_entry_with_position() {
        let err = parse(H4_TEXT).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 16,
                column: 3,
                message: "repeated entry".into()
            }
        );
    }

    #[test]
    fn round_trips_h4_and_attached_objects() {
        let f = Field::RatFun;
        let h = Arc::new(make_h4(f).unwrap());
        let t = f.var().unwrap();
        let mut doc = Document::new(f);
        doc.add_hopf("H4", h.clone());
        doc.add_functional("sigma", h4_cocycle(&h, &t).unwrap());
        doc.add_rmatrix("R", h4_rmatrix(&h, &t).unwrap());
        let r = h4_rform(&h, &t).unwrap();
        let v = graded_yd(&r).unwrap();
        doc.add_algebra("EndV", end_algebra(&v, EndSide::Standard).unwrap());
        doc.add_module("V", v);
        let text = doc.to_text().unwrap();
        let back = parse(&text).unwrap();
        let h2 = back.hopf("H4").unwrap();
        assert!(h2.structure_eq(&h));
        assert_eq!(
            back.functional("sigma").unwrap().coeffs(),
            doc.functional("sigma").unwrap().coeffs()
        );
        assert_eq!(back.rmatrix("R").unwrap().coeffs(), doc.rmatrix("R").unwrap().coeffs());
        assert_eq!(back.module("V"), doc.module("V"));
        assert_eq!(back.algebra("EndV"), doc.algebra("EndV"));
        assert_eq!(back.to_text().unwrap(), text);
    }

    #[test]
    fn bad_scalar_points_into_token() {
        let text = "hopfspec 1\nfield rationals\nhopf A\n  dim 1\n  unit e0 1/0\nend\n";
        match parse(text).unwrap_err() {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 5);
                assert!(column >= 11);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn unknown_label_and_missing_end() {
        let text = "hopfspec 1\nfield gf 5\nhopf A\n  basis x\n  unit y 1\nend\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 5, column: 8, .. })));
        let text = "hopfspec 1\nfield gf 5\nhopf A\n  basis x\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 3, .. })));
        let text = "hopfspec 2\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 1, .. })));
    }
}
