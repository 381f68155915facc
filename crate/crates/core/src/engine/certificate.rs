//! Persistence certificates.
//!
//! A certificate records how a Gotzmann set breaks down: strip the gcd, then
//! either stop at a full set `M^d` or a singleton, or split along a variable
//! `x_i` into `K_i(V)` (same variables) and `D_i(V)` (one variable fewer) and
//! recurse into both. Each split node carries the counts `a = |V|`,
//! `b = |D_i(V)|`, `c = |K_i(V)|` whose growth identities together force
//! `|M^2 V| = |MV|^<n-1>`.
//!
//! [`check_certificate`] re-derives everything from the set itself and shares
//! no state with [`build_certificate`].

use std::fmt::{self, Write as _};

use num_bigint::BigUint;

use super::{find_splitting_index, is_gotzmann, split_conditions, EngineError};
use crate::binomial;
use crate::monomial::{Monomial, MonomialSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceCertificate {
    pub n_vars: usize,
    /// Degree of the set before its gcd is removed.
    pub degree: u32,
    pub gcd_removed: Monomial,
    pub size: usize,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    /// After removing the gcd the set is all of `M^d`.
    FullSet,
    /// A single monomial.
    Singleton,
    Split(Box<SplitNode>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitNode {
    pub index: usize,
    /// `|V|`
    pub a: usize,
    /// `|D_i(V)|`
    pub b: usize,
    /// `|K_i(V)|`
    pub c: usize,
    /// Certificate for `K_i(V)` in the same variables.
    pub kept: PersistenceCertificate,
    /// Certificate for `D_i(V)` with `x_i` deleted.
    pub dropped: PersistenceCertificate,
}

/// Where and why [`check_certificate`] rejected a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateMismatch {
    pub path: String,
    pub reason: String,
}

impl fmt::Display for CertificateMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.reason)
    }
}

impl std::error::Error for CertificateMismatch {}

/// Builds the splitting tree for a nonempty Gotzmann set.
pub fn build_certificate(v: &MonomialSet) -> Result<PersistenceCertificate, EngineError> {
    if v.is_empty() {
        return Err(EngineError::EmptySet);
    }
    super::require_gotzmann(v)?;
    let gcd = v.gcd()?;
    let stripped = v.divide_out(&gcd)?;
    let kind = if stripped.len() == 1 {
        NodeKind::Singleton
    } else if stripped.is_full() {
        NodeKind::FullSet
    } else {
        let (index, split, cond) = find_splitting_index(&stripped)?;
        let kept = build_certificate(&split.kept)?;
        let dropped = build_certificate(&split.dropped.restrict_vars(index)?)?;
        NodeKind::Split(Box::new(SplitNode {
            index,
            a: cond.a,
            b: cond.b,
            c: cond.c,
            kept,
            dropped,
        }))
    };
    Ok(PersistenceCertificate {
        n_vars: v.n_vars(),
        degree: v.degree(),
        gcd_removed: gcd,
        size: v.len(),
        kind,
    })
}

/// Validates every node of `cert` against `v`, recomputing each split.
pub fn check_certificate(
    cert: &PersistenceCertificate,
    v: &MonomialSet,
) -> Result<(), CertificateMismatch> {
    check_node(cert, v, "root")
}

impl PersistenceCertificate {
    pub fn is_valid_for(&self, v: &MonomialSet) -> bool {
        check_certificate(self, v).is_ok()
    }

    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        1 + match &self.kind {
            NodeKind::Split(s) => s.kept.node_count() + s.dropped.node_count(),
            _ => 0,
        }
    }

    /// Preorder walk, kept child before dropped child.
    pub fn for_each_node<'a>(&'a self, f: &mut impl FnMut(&'a PersistenceCertificate)) {
        f(self);
        if let NodeKind::Split(s) = &self.kind {
            s.kept.for_each_node(f);
            s.dropped.for_each_node(f);
        }
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            NodeKind::FullSet => "full",
            NodeKind::Singleton => "singleton",
            NodeKind::Split(_) => "split",
        }
    }

    /// Indented, human-readable tree.
    pub fn to_tree(&self) -> String {
        let mut out = String::new();
        self.write_tree(&mut out, 0, "");
        out
    }

    fn write_tree(&self, out: &mut String, depth: usize, label: &str) {
        let pad = "  ".repeat(depth);
        let _ = write!(
            out,
            "{pad}{label}{} n={} d={} gcd={} a={}",
            self.kind_name(),
            self.n_vars,
            self.degree,
            self.gcd_removed,
            self.size
        );
        match &self.kind {
            NodeKind::Split(s) => {
                let _ = writeln!(out, " i={} b={} c={}", s.index, s.b, s.c);
                s.kept.write_tree(out, depth + 1, "kept: ");
                s.dropped.write_tree(out, depth + 1, "dropped: ");
            }
            _ => out.push('\n'),
        }
    }

    /// One node per line in preorder: `id parent kind i u a b c`, with `-`
    /// for absent fields, after an `n=<int> d=<int>` header for the root.
    pub fn to_machine(&self) -> String {
        let mut out = format!("n={} d={}\n", self.n_vars, self.degree);
        let mut next_id = 0usize;
        self.write_machine(&mut out, None, &mut next_id);
        out
    }

    fn write_machine(&self, out: &mut String, parent: Option<usize>, next_id: &mut usize) {
        let id = *next_id;
        *next_id += 1;
        let parent = parent.map_or("-".to_string(), |p| p.to_string());
        match &self.kind {
            NodeKind::Split(s) => {
                let _ = writeln!(
                    out,
                    "{id} {parent} split {} {} {} {} {}",
                    s.index, self.gcd_removed, s.a, s.b, s.c
                );
                s.kept.write_machine(out, Some(id), next_id);
                s.dropped.write_machine(out, Some(id), next_id);
            }
            _ => {
                let _ = writeln!(
                    out,
                    "{id} {parent} {} - {} {} - -",
                    self.kind_name(),
                    self.gcd_removed,
                    self.size
                );
            }
        }
    }

    /// Parses the output of [`PersistenceCertificate::to_machine`].
    pub fn from_machine(text: &str) -> Result<PersistenceCertificate, EngineError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, message: String| EngineError::CertificateParse { line, message };
        let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
        let mut n_vars = None;
        let mut degree = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("n", v)) => n_vars = v.parse::<usize>().ok(),
                Some(("d", v)) => degree = v.parse::<u32>().ok(),
                _ => return Err(err(hline, format!("bad header field `{field}`"))),
            }
        }
        let (Some(n_vars), Some(degree)) = (n_vars, degree) else {
            return Err(err(hline, "header must be `n=<int> d=<int>`".into()));
        };
        let rows: Vec<(usize, Vec<&str>)> = lines
            .map(|(k, l)| (k, l.split_whitespace().collect()))
            .collect();
        let mut cursor = 0usize;
        let cert = parse_node(&rows, &mut cursor, None, n_vars, degree)?;
        if let Some((line, _)) = rows.get(cursor) {
            return Err(err(*line, "trailing node outside the tree".into()));
        }
        Ok(cert)
    }
}

fn parse_node(
    rows: &[(usize, Vec<&str>)],
    cursor: &mut usize,
    parent: Option<usize>,
    n_vars: usize,
    degree: u32,
) -> Result<PersistenceCertificate, EngineError> {
    let id = *cursor;
    let (line, fields) = rows.get(id).ok_or(EngineError::CertificateParse {
        line: rows.last().map_or(1, |r| r.0),
        message: "tree ends early".into(),
    })?;
    let line = *line;
    let err = |message: String| EngineError::CertificateParse { line, message };
    if fields.len() != 8 {
        return Err(err(format!("expected 8 fields, found {}", fields.len())));
    }
    if fields[0] != id.to_string() {
        return Err(err(format!("expected node id {id}, found `{}`", fields[0])));
    }
    let expected_parent = parent.map_or("-".to_string(), |p| p.to_string());
    if fields[1] != expected_parent {
        return Err(err(format!(
            "expected parent {expected_parent}, found `{}`",
            fields[1]
        )));
    }
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| err(format!("bad count `{s}`")))
    };
    let gcd = Monomial::parse(fields[4], n_vars).map_err(&err)?;
    let size = number(fields[5])?;
    *cursor += 1;
    let kind = match fields[2] {
        "full" => NodeKind::FullSet,
        "singleton" => NodeKind::Singleton,
        "split" => {
            let index = number(fields[3])?;
            let (b, c) = (number(fields[6])?, number(fields[7])?);
            let child_degree = degree
                .checked_sub(gcd.degree())
                .ok_or_else(|| err("gcd degree exceeds node degree".into()))?;
            if n_vars < 2 {
                return Err(err("split node needs at least two variables".into()));
            }
            let kept = parse_node(rows, cursor, Some(id), n_vars, child_degree)?;
            let dropped = parse_node(rows, cursor, Some(id), n_vars - 1, child_degree)?;
            NodeKind::Split(Box::new(SplitNode {
                index,
                a: size,
                b,
                c,
                kept,
                dropped,
            }))
        }
        other => return Err(err(format!("unknown node kind `{other}`"))),
    };
    Ok(PersistenceCertificate {
        n_vars,
        degree,
        gcd_removed: gcd,
        size,
        kind,
    })
}

fn check_node(
    cert: &PersistenceCertificate,
    v: &MonomialSet,
    path: &str,
) -> Result<(), CertificateMismatch> {
    let fail = |reason: String| {
        Err(CertificateMismatch {
            path: path.to_string(),
            reason,
        })
    };
    if cert.n_vars != v.n_vars() || cert.degree != v.degree() {
        return fail(format!(
            "node is for n={} d={}, set has n={} d={}",
            cert.n_vars,
            cert.degree,
            v.n_vars(),
            v.degree()
        ));
    }
    if cert.size != v.len() {
        return fail(format!("recorded |V| = {}, actual {}", cert.size, v.len()));
    }
    if v.is_empty() {
        return fail("empty set".into());
    }
    if !is_gotzmann(v) {
        return fail("set is not Gotzmann".into());
    }
    let gcd = v.gcd().expect("nonempty");
    if gcd != cert.gcd_removed {
        return fail(format!("recorded gcd {}, actual {gcd}", cert.gcd_removed));
    }
    let w = v.divide_out(&gcd).expect("gcd divides every member");
    match &cert.kind {
        NodeKind::FullSet => {
            if !w.is_full() {
                return fail(format!(
                    "claimed M^{} but only {} members",
                    w.degree(),
                    w.len()
                ));
            }
            Ok(())
        }
        NodeKind::Singleton => {
            if w.len() != 1 {
                return fail(format!("claimed a singleton, found {} members", w.len()));
            }
            Ok(())
        }
        NodeKind::Split(s) => {
            if w.len() < 2 || w.is_full() {
                return fail("split node on a full set or singleton".into());
            }
            let split = match w.split(s.index) {
                Ok(split) => split,
                Err(e) => return fail(format!("cannot split: {e}")),
            };
            if (s.a, s.b, s.c) != (w.len(), split.dropped.len(), split.kept.len()) {
                return fail(format!(
                    "recorded (a,b,c) = ({},{},{}), actual ({},{},{})",
                    s.a,
                    s.b,
                    s.c,
                    w.len(),
                    split.dropped.len(),
                    split.kept.len()
                ));
            }
            if s.a != s.b + s.c {
                return fail("a != b + c".into());
            }
            let cond = match split_conditions(&w, &split) {
                Ok(cond) => cond,
                Err(e) => return fail(format!("conditions not evaluable: {e}")),
            };
            let checks = [
                (cond.kept_gotzmann, "K_i(V) is not Gotzmann"),
                (
                    cond.dropped_gotzmann,
                    "D_i(V) is not Gotzmann in n-1 variables",
                ),
                (
                    cond.above_remainder,
                    "|D_i(V)| is below the remainder bound",
                ),
                (cond.below_ddown, "|D_i(V)| is not below |V|_<<n-1>>"),
                (
                    cond.containment,
                    "x_i D_i(V) is not inside the restricted shadow of K_i(V)",
                ),
                (cond.growth_identity, "c^<n-1> + b^<n-2> != a^<n-1>"),
                (cond.doubled_identity, "doubled growth identity fails"),
            ];
            if let Some((_, reason)) = checks.iter().find(|(ok, _)| !ok) {
                return fail(format!("i={}: {reason}", s.index));
            }
            // numeric restatement straight from the recorded counts
            let n = cert.n_vars as u32;
            let rem = binomial::remainder(&BigUint::from(s.a), n - 1).map(|r| r.rem);
            let dd = binomial::ddown(&BigUint::from(s.a), n - 1);
            match (rem, dd) {
                (Ok(rem), Ok(dd)) if rem <= BigUint::from(s.b) && BigUint::from(s.b) < dd => {}
                _ => return fail("recorded b violates the remainder/ddown window".into()),
            }
            check_node(&s.kept, &split.kept, &format!("{path}/kept"))?;
            let sub = match split.dropped.restrict_vars(s.index) {
                Ok(sub) => sub,
                Err(e) => return fail(format!("cannot restrict D_i(V): {e}")),
            };
            check_node(&s.dropped, &sub, &format!("{path}/dropped"))
        }
    }
}
