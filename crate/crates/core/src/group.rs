//! Finite groups given by Cayley tables.
//!
//! A [`FiniteGroup`] is always valid once constructed: the constructors run
//! [`validate_table`] and refuse tables that are not group tables. Element
//! indices are `0..order`; the identity is whatever index the table makes
//! neutral (all built-in families put it at 0).

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type GroupRef = Arc<FiniteGroup>;

/// Largest `n` accepted for `S<n>` and `A<n>`.
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotSquare,
    EntryOutOfRange { row: usize, col: usize, value: usize },
    NotLatinSquare { row: Option<usize>, col: Option<usize> },
    NoIdentity,
    NoInverse(usize),
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare => write!(f, "table is not square"),
            Violation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} out of range")
            }
            Violation::NotLatinSquare { row: Some(r), .. } => {
                write!(f, "not a Latin square (row {r} repeats an entry)")
            }
            Violation::NotLatinSquare { col: Some(c), .. } => {
                write!(f, "not a Latin square (column {c} repeats an entry)")
            }
            Violation::NotLatinSquare { .. } => write!(f, "not a Latin square"),
            Violation::NoIdentity => write!(f, "no identity element"),
            Violation::NoInverse(x) => write!(f, "element {x} has no inverse"),
            Violation::NotAssociative { a, b, c } => {
                write!(f, "associativity fails at (a,b,c) = ({a},{b},{c})")
            }
        }
    }
}

/// Checks every group axiom on a raw Cayley table.
///
/// Returns `Ok(())` iff the table is square with entries in range, is a Latin
/// square, has a two-sided identity, has inverses and is associative. Only
/// the first associativity failure is reported.
pub fn validate_table(table: &[Vec<usize>]) -> std::result::Result<(), Vec<Violation>> {
    let n = table.len();
    let mut out = Vec::new();
    if n == 0 || table.iter().any(|r| r.len() != n) {
        out.push(Violation::NotSquare);
        return Err(out);
    }
    for (i, row) in table.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                out.push(Violation::EntryOutOfRange { row: i, col: j, value: v });
            }
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    for (i, row) in table.iter().enumerate() {
        if row.iter().collect::<BTreeSet<_>>().len() != n {
            out.push(Violation::NotLatinSquare { row: Some(i), col: None });
        }
    }
    for j in 0..n {
        if (0..n).map(|i| table[i][j]).collect::<BTreeSet<_>>().len() != n {
            out.push(Violation::NotLatinSquare { row: None, col: Some(j) });
        }
    }
    match find_identity(table) {
        None => out.push(Violation::NoIdentity),
        Some(e) => {
            for x in 0..n {
                if !(0..n).any(|y| table[x][y] == e && table[y][x] == e) {
                    out.push(Violation::NoInverse(x));
                }
            }
        }
    }
    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    out.push(Violation::NotAssociative { a, b, c });
                    break 'assoc;
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn find_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
}

/// A finite group stored as a flat Cayley table plus derived data
/// (inverses, conjugacy classes, a small generating set).
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    label: String,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mult == other.mult
    }
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self> {
        validate_table(&table).map_err(Error::Validation)?;
        Ok(Self::from_valid_table(table, label))
    }

    /// Tables already known to be group tables (products, closed subsets).
    fn from_valid_table(table: Vec<Vec<usize>>, label: impl Into<String>) -> Self {
        let n = table.len();
        let identity = find_identity(&table).expect("validated");
        let mult: Vec<usize> = table.into_iter().flatten().collect();
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n).find(|&y| mult[x * n + y] == identity).expect("validated");
        }
        let mut g = FiniteGroup {
            order: n,
            mult,
            identity,
            inverse,
            label: label.into(),
            classes: Vec::new(),
            class_of: Vec::new(),
            generators: Vec::new(),
        };
        g.compute_classes();
        g.compute_generators();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, x), self.inverse[g]))
                .collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    fn compute_generators(&mut self) {
        let mut candidates: Vec<usize> = (0..self.order).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = [self.identity].into();
        for x in candidates {
            if span.len() == self.order {
                break;
            }
            if !span.contains(&x) {
                gens.push(x);
                span = closure_set(self, &gens);
            }
        }
        gens.sort_unstable();
        self.generators = gens;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    /// The Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Conjugacy classes ordered by their smallest element; the class of the
    /// identity is first whenever the identity is element 0.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// A small generating set (greedy, highest element order first).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Re-runs the full axiom check on the stored table.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        validate_table(&self.table())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

fn closure_set(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = [g.identity()].into();
    set.extend(gens.iter().copied());
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// A subgroup of a parent group together with its re-indexed standalone copy.
///
/// Element `i` of [`Subgroup::as_group`] corresponds to `elements()[i]` in the
/// parent.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: GroupRef,
    elements: Vec<usize>,
    standalone: GroupRef,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && *self.parent == *other.parent
    }
}

impl Subgroup {
    /// Wraps an explicit element set, checking closure.
    pub fn new(parent: GroupRef, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if set.iter().any(|&x| x >= parent.order()) {
            return Err(Error::Invalid("subgroup element out of range".into()));
        }
        if !set.contains(&parent.identity()) {
            return Err(Error::Invalid("subset does not contain the identity".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inv(a)) {
                return Err(Error::Invalid(format!("subset not closed under inverse at {a}")));
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::Invalid(format!(
                        "subset not closed under product at ({a},{b})"
                    )));
                }
            }
        }
        let elements: Vec<usize> = set.into_iter().collect();
        let pos = |x: usize| elements.binary_search(&x).expect("closed");
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(parent.mul(a, b))).collect())
            .collect();
        let label = if elements.len() == parent.order() {
            parent.label().to_string()
        } else {
            format!(
                "{}{{{}}}",
                parent.label(),
                elements.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            )
        };
        let standalone = Arc::new(FiniteGroup::from_valid_table(table, label));
        Ok(Subgroup { parent, elements, standalone })
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Subgroup { parent: parent.clone(), elements: (0..parent.order()).collect(), standalone: parent.clone() }
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Subgroup::new(parent.clone(), [parent.identity()]).expect("trivial subgroup")
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn as_group(&self) -> &GroupRef {
        &self.standalone
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Index of parent element `x` inside the standalone group.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }
}

/// Smallest subgroup containing `generators`.
pub fn subgroup_closure(g: &GroupRef, generators: &[usize]) -> Result<Subgroup> {
    if let Some(&bad) = generators.iter().find(|&&x| x >= g.order()) {
        return Err(Error::Invalid(format!(
            "generator {bad} out of range for group of order {}",
            g.order()
        )));
    }
    Subgroup::new(g.clone(), closure_set(g, generators))
}

/// `G x H` with `(a, b)` encoded as `a * |H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order(), h.order());
    let table: Vec<Vec<usize>> = (0..m * n)
        .map(|x| {
            let (a1, b1) = (x / n, x % n);
            (0..m * n)
                .map(|y| {
                    let (a2, b2) = (y / n, y % n);
                    g.mul(a1, a2) * n + h.mul(b1, b2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_valid_table(table, format!("prod({},{})", g.label(), h.label()))
}

/// Embeds `K x L` (with `K <= G`, `L <= H`) as a subgroup of `product = G x H`.
///
/// The standalone group of the result has the same table as
/// `direct_product(K, L)`, since the product encoding is order-preserving.
pub fn product_subgroup(product: &GroupRef, h_order: usize, k: &Subgroup, l: &Subgroup) -> Result<Subgroup> {
    let elements = k
        .elements()
        .iter()
        .flat_map(|&a| l.elements().iter().map(move |&b| a * h_order + b));
    Subgroup::new(product.clone(), elements)
}

/// Subgroups used by the verification sweeps: the trivial subgroup, the
/// cyclic subgroups generated by each of the group's generators, the
/// subgroups generated by consecutive generator pairs, and the whole group.
/// Deduplicated, ordered by size then elements.
pub fn standard_subgroups(g: &GroupRef) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    let gens = g.generators();
    let mut candidates: Vec<Vec<usize>> = gens.iter().map(|&x| vec![x]).collect();
    for w in gens.windows(2) {
        candidates.push(w.to_vec());
    }
    for c in candidates {
        out.push(subgroup_closure(g, &c).expect("in range"));
    }
    out.push(Subgroup::whole(g));
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    out.dedup_by(|a, b| a.elements() == b.elements());
    out
}

// ---------------------------------------------------------------------------
// Built-in families

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Invalid("C0 is not a group".into()));
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(table, format!("C{n}"))
}

/// Dihedral group of order `2n`; element `j*n + k` is `s^j r^k`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Invalid("D0 is not a group".into()));
    }
    let elem = |k: usize, j: usize| j * n + k;
    let table = (0..2 * n)
        .map(|x| {
            let (j1, k1) = (x / n, x % n);
            (0..2 * n)
                .map(|y| {
                    let (j2, k2) = (y / n, y % n);
                    // s^j1 r^k1 s^j2 r^k2 = s^(j1+j2) r^((-1)^j2 k1 + k2)
                    let k = if j2 == 0 { (k1 + k2) % n } else { (n - k1 + k2) % n };
                    elem(k, (j1 + j2) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table, format!("D{n}"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn permutation_group(perms: Vec<Vec<usize>>, label: String) -> Result<FiniteGroup> {
    let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed");
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index(&b.iter().map(|&i| a[i]).collect()))
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table, label)
}

/// Symmetric group on `n` points, permutations in lexicographic order
/// (identity first), product `(ab)(i) = a(b(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::Invalid(format!("S{n} unsupported (1 <= n <= {MAX_SYMMETRIC_DEGREE})")));
    }
    permutation_group(permutations(n), format!("S{n}"))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::Invalid(format!("A{n} unsupported (1 <= n <= {MAX_SYMMETRIC_DEGREE})")));
    }
    let perms = permutations(n).into_iter().filter(|p| is_even(p)).collect();
    permutation_group(perms, format!("A{n}"))
}

/// Quaternion group; element `4*s + u` is `(-1)^s * [1, i, j, k][u]`.
pub fn quaternion() -> FiniteGroup {
    // unit products: (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, u) = UNIT[x % 4][y % 4];
                    4 * ((s + x / 4 + y / 4) % 2) + u
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table, "Q8").expect("Q8 table")
}

// ---------------------------------------------------------------------------
// Spec grammar and table files

/// On-disk Cayley table document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CayleyTableFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

pub fn load_table_file(path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::File {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let doc: CayleyTableFile = serde_json::from_str(&text).map_err(|e| Error::File {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    if doc.table.len() != doc.order {
        return Err(Error::Validation(vec![Violation::NotSquare]));
    }
    FiniteGroup::from_table(doc.table, format!("table:{}", path.display()))
}

pub fn save_table_file(g: &FiniteGroup, path: &Path) -> Result<()> {
    let doc = CayleyTableFile { order: g.order(), table: g.table() };
    let text = serde_json::to_string_pretty(&doc).expect("serialisable");
    std::fs::write(path, text).map_err(|e| Error::File {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

/// Parses `C<n>`, `D<n>`, `S<n>`, `A<n>`, `Q8`, `table:<path>` and
/// `prod(<spec>,<spec>)`. The returned group's label is the canonical
/// spelling of the spec (whitespace removed).
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup> {
    let mut p = SpecParser { src: spec, pos: 0 };
    let g = p.parse()?;
    p.skip_ws();
    if p.pos != spec.len() {
        return Err(p.err("trailing input"));
    }
    Ok(g)
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::Parse { spec: self.src.to_string(), reason: format!("{reason} at offset {}", self.pos) }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.err("expected a number"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.err("number too large"))
    }

    fn parse(&mut self) -> Result<FiniteGroup> {
        self.skip_ws();
        let rest = self.rest();
        if rest.starts_with("prod(") {
            self.pos += 5;
            let g = self.parse()?;
            self.expect(',')?;
            let h = self.parse()?;
            self.expect(')')?;
            return Ok(direct_product(&g, &h));
        }
        if let Some(path) = rest.strip_prefix("table:") {
            // the path runs to the next top-level `,` or `)`
            let end = path.find([',', ')']).unwrap_or(path.len());
            let file = path[..end].trim().to_string();
            self.pos += 6 + end;
            return load_table_file(Path::new(&file)).map(|g| g.with_label(format!("table:{file}")));
        }
        if rest.starts_with("Q8") {
            self.pos += 2;
            return Ok(quaternion());
        }
        let family = rest.chars().next().ok_or_else(|| self.err("empty spec"))?;
        self.pos += family.len_utf8();
        let map = |r: Result<FiniteGroup>, s: &Self| {
            r.map_err(|e| Error::Parse { spec: s.src.to_string(), reason: e.to_string() })
        };
        match family {
            'C' => {
                let n = self.number()?;
                map(cyclic(n), self)
            }
            'D' => {
                let n = self.number()?;
                map(dihedral(n), self)
            }
            'S' => {
                let n = self.number()?;
                map(symmetric(n), self)
            }
            'A' => {
                let n = self.number()?;
                map(alternating(n), self)
            }
            _ => Err(self.err("unknown group family")),
        }
    }
}
