//! Fusion laws: tables, units, sublaws, isomorphisms, grading groups and
//! characters.
//!
//! The grading group of a law is the abelian group generated by one symbol
//! per label with a relation g_x + g_y - g_z = 0 for every z in x*y,
//! computed via Smith normal form. A law is graded when this group is
//! nontrivial.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("duplicate eigenvalue label {0}")]
    DuplicateEigenvalue(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("grading group has a factor not supported over this field: {0}")]
    UnsupportedDivisor(String),
    #[error("law parse error: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FusionLaw {
    labels: Vec<Scalar>,
    /// Entry for every (i, j); construction enforces symmetry.
    table: BTreeMap<(usize, usize), BTreeSet<usize>>,
}

impl FusionLaw {
    pub fn new(labels: Vec<Scalar>) -> Result<FusionLaw, FusionError> {
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i + 1..] {
                if a == b {
                    return Err(FusionError::DuplicateEigenvalue(a.to_string()));
                }
            }
        }
        let n = labels.len();
        let mut table = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                table.insert((i, j), BTreeSet::new());
            }
        }
        Ok(FusionLaw { labels, table })
    }

    /// Set x*y = y*x = the given set of label indices.
    pub fn set(&mut self, x: usize, y: usize, products: &[usize]) {
        let set: BTreeSet<usize> = products.iter().copied().collect();
        assert!(set.iter().all(|&k| k < self.labels.len()));
        self.table.insert((x, y), set.clone());
        self.table.insert((y, x), set);
    }

    pub fn labels(&self) -> &[Scalar] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn entry(&self, x: usize, y: usize) -> &BTreeSet<usize> {
        &self.table[&(x, y)]
    }

    pub fn label_index(&self, s: &Scalar) -> Option<usize> {
        self.labels.iter().position(|l| l == s)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i..n).all(|j| self.table[&(i, j)] == self.table[&(j, i)]))
    }

    /// Labels e with e*x contained in {x} for every x.
    pub fn units(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&e| {
                (0..self.len()).all(|x| self.entry(e, x).iter().all(|&z| z == x))
            })
            .collect()
    }

    pub fn checks(&self) -> LawReport {
        let units = self.units();
        let one = Scalar::one();
        let one_is_unit = self
            .label_index(&one)
            .map_or(false, |i| units.contains(&i));
        LawReport { symmetric: self.is_symmetric(), units, one_is_unit }
    }

    /// True iff every label of `self` is a label of `f` and each table
    /// entry is contained in the corresponding entry of `f`. On failure the
    /// witness is the first violating label pair (as strings).
    pub fn is_sublaw_of(&self, f: &FusionLaw) -> (bool, Option<(String, String)>) {
        let mut map = Vec::with_capacity(self.len());
        for l in &self.labels {
            match f.label_index(l) {
                Some(i) => map.push(i),
                None => return (false, Some((l.to_string(), "<absent label>".into()))),
            }
        }
        for i in 0..self.len() {
            for j in i..self.len() {
                let img: BTreeSet<usize> =
                    self.entry(i, j).iter().map(|&k| map[k]).collect();
                if !img.is_subset(f.entry(map[i], map[j])) {
                    return (
                        false,
                        Some((self.labels[i].to_string(), self.labels[j].to_string())),
                    );
                }
            }
        }
        (true, None)
    }

    /// Exhaustive search for a label bijection preserving the table both
    /// ways; with `fix_unit` the label 1 must map to 1.
    pub fn isomorphism(&self, other: &FusionLaw, fix_unit: bool) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let n = self.len();
        let one = Scalar::one();
        let mut perm: Vec<usize> = (0..n).collect();
        permute_search(&mut perm, 0, &mut |p: &[usize]| {
            if fix_unit {
                if let (Some(i), Some(j)) = (self.label_index(&one), other.label_index(&one))
                {
                    if p[i] != j {
                        return false;
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let img: BTreeSet<usize> =
                        self.entry(x, y).iter().map(|&k| p[k]).collect();
                    if &img != other.entry(p[x], p[y]) {
                        return false;
                    }
                }
            }
            true
        })
    }

    pub fn grading_group(&self) -> GradingGroup {
        let n = self.len();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for x in 0..n {
            for y in x..n {
                for &z in self.entry(x, y) {
                    let mut row = vec![0i64; n];
                    row[x] += 1;
                    row[y] += 1;
                    row[z] -= 1;
                    relations.push(row);
                }
            }
        }
        GradingGroup::from_presentation(n, &relations, &self.labels)
    }

    pub fn to_json(&self) -> Value {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        let mut table = serde_json::Map::new();
        let n = self.len();
        for i in 0..n {
            for j in i..n {
                let set = self.entry(i, j);
                if set.is_empty() {
                    continue;
                }
                let key = format!("{},{}", labels[i], labels[j]);
                let vals: Vec<String> = set.iter().map(|&k| labels[k].clone()).collect();
                table.insert(key, json!(vals));
            }
        }
        json!({ "labels": labels, "table": table })
    }

    pub fn from_json(v: &Value) -> Result<FusionLaw, FusionError> {
        let labels_json = v
            .get("labels")
            .and_then(Value::as_array)
            .ok_or_else(|| FusionError::Parse("missing \"labels\" array".into()))?;
        let mut labels = Vec::new();
        for l in labels_json {
            let s = l
                .as_str()
                .ok_or_else(|| FusionError::Parse("label must be a string".into()))?;
            labels.push(
                Scalar::parse(s).map_err(|e| FusionError::Parse(format!("label {s}: {e}")))?,
            );
        }
        let mut law = FusionLaw::new(labels)?;
        if let Some(table) = v.get("table").and_then(Value::as_object) {
            for (key, val) in table {
                let (a, b) = key
                    .split_once(',')
                    .ok_or_else(|| FusionError::Parse(format!("bad table key {key}")))?;
                let pa = Scalar::parse(a.trim())
                    .map_err(|e| FusionError::Parse(format!("key {key}: {e}")))?;
                let pb = Scalar::parse(b.trim())
                    .map_err(|e| FusionError::Parse(format!("key {key}: {e}")))?;
                let i = law
                    .label_index(&pa)
                    .ok_or_else(|| FusionError::UnknownLabel(a.to_string()))?;
                let j = law
                    .label_index(&pb)
                    .ok_or_else(|| FusionError::UnknownLabel(b.to_string()))?;
                let arr = val
                    .as_array()
                    .ok_or_else(|| FusionError::Parse(format!("entry {key} not a list")))?;
                let mut prods = Vec::new();
                for z in arr {
                    let zs = z
                        .as_str()
                        .ok_or_else(|| FusionError::Parse("entry member not a string".into()))?;
                    let pz = Scalar::parse(zs)
                        .map_err(|e| FusionError::Parse(format!("member {zs}: {e}")))?;
                    prods.push(
                        law.label_index(&pz)
                            .ok_or_else(|| FusionError::UnknownLabel(zs.to_string()))?,
                    );
                }
                law.set(i, j, &prods);
            }
        }
        Ok(law)
    }
}

fn permute_search(
    perm: &mut Vec<usize>,
    k: usize,
    accept: &mut impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if k == perm.len() {
        return accept(perm).then(|| perm.clone());
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if let Some(found) = permute_search(perm, k + 1, accept) {
            perm.swap(k, i);
            return Some(found);
        }
        perm.swap(k, i);
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LawReport {
    pub symmetric: bool,
    pub units: Vec<usize>,
    pub one_is_unit: bool,
}

/// Finitely generated abelian group in invariant-factor form, with the
/// image of each fusion-law label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradingGroup {
    /// Elementary divisors, each >= 2, in divisibility order.
    pub divisors: Vec<i64>,
    pub free_rank: usize,
    /// Per label: torsion coordinates (mod the matching divisor) then free
    /// coordinates.
    pub label_map: Vec<Vec<i64>>,
}

impl GradingGroup {
    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty() && self.free_rank == 0
    }

    /// Quotient Z^n by the row span of `relations`; labels only name the
    /// generators for the post-construction relation check.
    fn from_presentation(n: usize, relations: &[Vec<i64>], _labels: &[Scalar]) -> GradingGroup {
        let (d, v) = smith_with_right_transform(relations, n);
        let r = d.len();
        // generator e_j maps to row j of v; invariant coordinates:
        // index i < r has order d[i] (drop when 1), index >= r is free.
        let mut torsion_idx = Vec::new();
        let mut divisors = Vec::new();
        for (i, &di) in d.iter().enumerate() {
            if di >= 2 {
                torsion_idx.push(i);
                divisors.push(di);
            }
        }
        let free_rank = n - r;
        let label_map: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut coords: Vec<i64> = torsion_idx
                    .iter()
                    .zip(&divisors)
                    .map(|(&i, &di)| v[j][i].rem_euclid(di))
                    .collect();
                coords.extend((r..n).map(|i| v[j][i]));
                coords
            })
            .collect();
        let g = GradingGroup { divisors, free_rank, label_map };
        for rel in relations {
            let mut acc = vec![0i64; g.divisors.len() + g.free_rank];
            for (j, &c) in rel.iter().enumerate() {
                for (k, x) in g.label_map[j].iter().enumerate() {
                    acc[k] += c * x;
                }
            }
            for (k, &di) in g.divisors.iter().enumerate() {
                assert!(acc[k] % di == 0, "grading relation violated after SNF");
            }
            for a in &acc[g.divisors.len()..] {
                assert!(*a == 0, "grading relation violated after SNF");
            }
        }
        g
    }

    /// Degree of a label as a canonical string, e.g. "(1, 0)".
    pub fn degree_string(&self, label: usize) -> String {
        let parts: Vec<String> =
            self.label_map[label].iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    /// Structure string like "C2", "C3", "Z", "C2 x Z", "trivial".
    pub fn structure(&self) -> String {
        let mut parts: Vec<String> =
            self.divisors.iter().map(|d| format!("C{}", d)).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(self.free_rank));
        if parts.is_empty() {
            "trivial".into()
        } else {
            parts.join(" x ")
        }
    }

    /// All characters into the scalar field's roots of unity: order-2
    /// factors map into {1, -1}; order-3 factors need omega mode.
    pub fn characters(&self, omega_mode: bool) -> Result<Vec<Character>, FusionError> {
        if self.free_rank > 0 {
            return Err(FusionError::UnsupportedDivisor("Z (free factor)".into()));
        }
        let mut choices: Vec<Vec<Scalar>> = Vec::new();
        for &d in &self.divisors {
            match d {
                2 => {
                    let vals = vec![Scalar::one(), Scalar::from_int(-1)];
                    choices.push(if omega_mode {
                        vals.iter().map(Scalar::lift_omega).collect()
                    } else {
                        vals
                    });
                }
                3 => {
                    if omega_mode {
                        choices.push(vec![
                            Scalar::one().lift_omega(),
                            Scalar::omega(),
                            Scalar::omega_sq(),
                        ]);
                    } else {
                        choices.push(vec![Scalar::one()]);
                    }
                }
                _ => return Err(FusionError::UnsupportedDivisor(format!("C{}", d))),
            }
        }
        let mut out = vec![Character { values: vec![] }];
        for vals in choices {
            let mut next = Vec::new();
            for c in &out {
                for v in &vals {
                    let mut w = c.values.clone();
                    w.push(v.clone());
                    next.push(Character { values: w });
                }
            }
            out = next;
        }
        Ok(out)
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.structure())
    }
}

/// Character of a grading group: one root of unity per torsion generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }

    /// Value on a group element given in label_map coordinates.
    pub fn apply(&self, coords: &[i64]) -> Scalar {
        let mut acc = self
            .values
            .first()
            .map_or_else(Scalar::one, Scalar::one_like);
        for (v, &e) in self.values.iter().zip(coords) {
            let e = i32::try_from(e).expect("exponent fits i32");
            acc = acc.mul(&v.pow(e).expect("roots of unity are invertible"));
        }
        acc
    }
}

/// Smith normal form of the integer matrix with given column count.
/// Returns the diagonal (nonzero invariant factors, in divisibility order,
/// padded implicitly by zeros) and the right transform V (n x n) with
/// D = U * A * V for some unimodular U.
fn smith_with_right_transform(rows: &[Vec<i64>], n: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let m = rows.len();
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut v: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut t = 0usize;
    let mut diag: Vec<i64> = Vec::new();
    while t < m.min(n) {
        // find a nonzero entry in the remaining block with minimal |value|
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = a[i][j].abs();
                if x != 0 && best.map_or(true, |(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        let Some((_, bi, bj)) = best else { break };
        a.swap(t, bi);
        if bj != t {
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
        }
        // clear row and column t
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in t + 1..m {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut() {
                        let x = row[t];
                        row[j] -= q * x;
                    }
                    for row in v.iter_mut() {
                        let x = row[t];
                        row[j] -= q * x;
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        for row in v.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }
    // enforce divisibility chain d_i | d_{i+1}
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..diag.len().saturating_sub(1) {
            if diag[i + 1] % diag[i] != 0 {
                let a0 = diag[i];
                let b0 = diag[i + 1];
                let g = gcd64(a0, b0);
                let l = a0 / g * b0;
                diag[i] = g;
                diag[i + 1] = l;
                // fix the right transform: with D = diag(a0, b0) on
                // coordinates (i, i+1), replacing them by (g, l) corresponds
                // to a change of basis; recompute label coordinates via the
                // explicit 2x2 transform below.
                // For a0 x + b0 y relations, a valid transform is:
                //   new_i = s*x + t*y with s*a0' + t*b0' structure; we use
                //   the standard construction from the Bezout identity.
                let (s, tt) = bezout(a0, b0);
                // columns i, i+1 of V: c_i' = c_i + c_{i+1}*? ; derive from
                // the unimodular right factor W with diag(a0,b0) W' =
                // U' diag(g,l):
                //   W = [[1, -b0*tt/g], [s... ]]
                // Use the known pair of column ops: first add col i+1 to
                // col i scaled by tt (tracking), then standard reduction.
                // Simpler: apply the generic 2x2 smith to [[a0,0],[0,b0]]
                // with tracked right ops.
                let (w, _check_g, _check_l) = two_by_two_right(a0, b0, g, l, s, tt);
                for row in v.iter_mut() {
                    let ci = row[i];
                    let cj = row[i + 1];
                    row[i] = ci * w[0][0] + cj * w[1][0];
                    row[i + 1] = ci * w[0][1] + cj * w[1][1];
                }
                changed = true;
            }
        }
    }
    (diag, v)
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// s*a + t*b = gcd(a, b).
fn bezout(a: i64, b: i64) -> (i64, i64) {
    if b == 0 {
        return (a.signum(), 0);
    }
    let (s, t) = bezout(b, a % b);
    (t, s - (a / b) * t)
}

/// Right transform W (2x2 unimodular) with U * diag(a,b) * W = diag(g,l)
/// for some unimodular U, where g = gcd(a,b), l = lcm(a,b), s*a + t*b = g.
fn two_by_two_right(a: i64, b: i64, g: i64, l: i64, s: i64, t: i64) -> ([[i64; 2]; 2], i64, i64) {
    // U = [[s, t], [-b/g, a/g]], W = [[1, -t*b/g], [1, s*a/g]]
    let w = [[1, -t * b / g], [1, s * a / g]];
    // sanity: U diag(a,b) W = diag(g, l)
    let u = [[s, t], [-b / g, a / g]];
    let d = [[a, 0], [0, b]];
    let mut p = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = 0;
            for k in 0..2 {
                for q in 0..2 {
                    acc += u[i][k] * d[k][q] * w[q][j];
                }
            }
            p[i][j] = acc;
        }
    }
    assert_eq!(p, [[g, 0], [0, l]], "2x2 smith step failed");
    (w, g, l)
}
