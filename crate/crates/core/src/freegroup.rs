//! Words in a free group of rank `r >= 2`: free and cyclic reduction,
//! Cayley-line prefixes, Whitehead graphs, the Whitehead primitivity
//! algorithm, and enumeration of primitive conjugacy classes.
//!
//! Words serialize as ASCII: `a..z` are generators, `A..Z` their inverses
//! (`a^-1 <-> A`). All values are immutable after construction and all
//! operations are pure.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// One signed generator symbol. `idx` is 0-based; the ASCII form of
/// `Letter { idx: 0, inv: false }` is `a` and of its inverse `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    idx: u8,
    inv: bool,
}

impl Letter {
    pub fn new(idx: usize, inv: bool) -> Self {
        assert!(idx < 26, "at most 26 generators have ASCII names");
        Letter {
            idx: idx as u8,
            inv,
        }
    }

    pub fn index(self) -> usize {
        self.idx as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inv
    }

    pub fn inverse(self) -> Self {
        Letter {
            idx: self.idx,
            inv: !self.inv,
        }
    }

    /// Dense id in `0..2r`: generator `i` maps to `2i`, its inverse to `2i+1`.
    pub fn id(self) -> usize {
        2 * self.idx as usize + usize::from(self.inv)
    }

    pub fn from_id(id: usize) -> Self {
        Letter {
            idx: (id / 2) as u8,
            inv: id % 2 == 1,
        }
    }

    pub fn to_char(self) -> char {
        let base = if self.inv { b'A' } else { b'a' };
        (base + self.idx) as char
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'a'..='z' => Ok(Letter::new(c as usize - 'a' as usize, false)),
            'A'..='Z' => Ok(Letter::new(c as usize - 'A' as usize, true)),
            _ => Err(Error::WordParse(format!("invalid letter {c:?}"))),
        }
    }
}

/// A freely reduced word in the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
    rank: usize,
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// Freely reduce a raw letter sequence. Idempotent; validates indices.
pub fn reduce(letters: &[Letter], rank: usize) -> Result<FreeWord> {
    if !(2..=26).contains(&rank) {
        return Err(Error::InvalidInput(format!(
            "rank must be in 2..=26, got {rank}"
        )));
    }
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if l.index() >= rank {
            return Err(Error::IndexOutOfRange {
                index: l.index() + 1,
                rank,
            });
        }
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Ok(FreeWord {
        letters: stack,
        rank,
    })
}

impl FreeWord {
    /// The empty word (identity).
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            letters: Vec::new(),
            rank,
        }
    }

    /// Parse from ASCII (`a..z` generators, `A..Z` inverses); reduces.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            letters.push(Letter::from_char(c)?);
        }
        reduce(&letters, rank)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            rank: self.rank,
        }
    }

    /// Reduced product `self * rhs`.
    pub fn concat(&self, rhs: &FreeWord) -> Result<Self> {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        reduce(&letters, self.rank)
    }

    /// Whether the word is cyclically reduced (no cancellation across the
    /// wrap-around). Empty words count as cyclically reduced.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => f != l.inverse() || self.letters.len() == 1,
            _ => true,
        }
    }

    /// Cyclic reduction: returns `(core, conjugator)` with
    /// `self = conjugator * core * conjugator^-1` and `core` cyclically
    /// reduced. The cyclic length of `self` is `core.len()`.
    pub fn cyclic_reduce(&self) -> (FreeWord, FreeWord) {
        let mut letters = self.letters.clone();
        let mut conj = Vec::new();
        while letters.len() >= 2 && letters[0] == letters[letters.len() - 1].inverse() {
            conj.push(letters[0]);
            letters.pop();
            letters.remove(0);
        }
        (
            FreeWord {
                letters,
                rank: self.rank,
            },
            FreeWord {
                letters: conj,
                rank: self.rank,
            },
        )
    }

    /// Cyclic word length: the length of the cyclically reduced core.
    pub fn cyclic_length(&self) -> usize {
        self.cyclic_reduce().0.len()
    }

    /// Rotation by `k` of a cyclically reduced word.
    pub fn rotate(&self, k: usize) -> FreeWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let m = self.letters.len();
        let mut letters = Vec::with_capacity(m);
        for i in 0..m {
            letters.push(self.letters[(i + k) % m]);
        }
        FreeWord {
            letters,
            rank: self.rank,
        }
    }

    /// Canonical representative of the conjugacy-and-inversion class: the
    /// lexicographic minimum over all rotations of the cyclic core and of its
    /// inverse.
    pub fn class_canonical(&self) -> FreeWord {
        let (core, _) = self.cyclic_reduce();
        if core.is_empty() {
            return core;
        }
        let inv = core.inverse();
        let mut best: Option<Vec<Letter>> = None;
        for base in [&core, &inv] {
            for k in 0..base.letters.len() {
                let rot = base.rotate(k).letters;
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        FreeWord {
            letters: best.expect("nonempty core"),
            rank: self.rank,
        }
    }

    /// Vertices `q(k)`, `k_min <= k <= k_max`, of the bi-infinite Cayley-graph
    /// geodesic through the identity determined by the periodic word of
    /// `self`: for `k >= 0` the length-`k` prefix of `self` repeated, for
    /// `k < 0` the length-`|k|` prefix of the repeated inverse word.
    pub fn cayley_line_prefixes(&self, k_min: i64, k_max: i64) -> Result<Vec<FreeWord>> {
        if self.is_empty() {
            return Err(Error::WordNotReduced {
                expected: "cyclically reduced and nonempty",
                detail: "empty word has no invariant line".into(),
            });
        }
        if !self.is_cyclically_reduced() {
            return Err(Error::WordNotReduced {
                expected: "cyclically reduced",
                detail: format!("{self}"),
            });
        }
        let m = self.letters.len();
        let inv = self.inverse();
        let mut out = Vec::new();
        for k in k_min..=k_max {
            let (word, count) = if k >= 0 {
                (self, k as usize)
            } else {
                (&inv, (-k) as usize)
            };
            let letters: Vec<Letter> = (0..count).map(|i| word.letters[i % m]).collect();
            out.push(FreeWord {
                letters,
                rank: self.rank,
            });
        }
        Ok(out)
    }
}

/// Whitehead graph of a cyclically reduced word: `2r` vertices labeled by the
/// signed generators, one edge `{v, u^-1}` per cyclic 2-substring `v u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadGraph {
    rank: usize,
    /// Edge multiset as vertex-id pairs, each stored `(min, max)`.
    edges: Vec<(usize, usize)>,
}

impl WhiteheadGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge list in ASCII labels, sorted, with multiplicity.
    pub fn edge_labels(&self) -> Vec<(char, char)> {
        let mut v: Vec<(char, char)> = self
            .edges
            .iter()
            .map(|&(a, b)| (Letter::from_id(a).to_char(), Letter::from_id(b).to_char()))
            .collect();
        v.sort_unstable();
        v
    }

    fn adjacency(&self) -> Vec<HashSet<usize>> {
        let mut adj = vec![HashSet::new(); self.vertex_count()];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// Connectivity over all `2r` vertices (isolated vertices disconnect).
    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        reachable_count(&adj, 0, None) == self.vertex_count()
    }

    /// Whether some vertex disconnects the rest of the graph.
    pub fn has_cutpoint(&self) -> bool {
        let n = self.vertex_count();
        let adj = self.adjacency();
        for v in 0..n {
            let start = (0..n).find(|&s| s != v).expect("at least two vertices");
            if reachable_count(&adj, start, Some(v)) != n - 1 {
                return true;
            }
        }
        false
    }
}

fn reachable_count(adj: &[HashSet<usize>], start: usize, skip: Option<usize>) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &u in &adj[v] {
            if Some(u) != skip && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    count
}

/// Build the Whitehead graph of a cyclically reduced, nonempty word.
pub fn whitehead_graph(w: &FreeWord) -> Result<WhiteheadGraph> {
    if w.is_empty() {
        return Err(Error::WordNotReduced {
            expected: "nonempty",
            detail: "Whitehead graph of the empty word is undefined".into(),
        });
    }
    if !w.is_cyclically_reduced() {
        return Err(Error::WordNotReduced {
            expected: "cyclically reduced",
            detail: format!("{w}"),
        });
    }
    let m = w.len();
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let v = w.letters[i];
        let u = w.letters[(i + 1) % m];
        let (a, b) = (v.id(), u.inverse().id());
        edges.push((a.min(b), a.max(b)));
    }
    edges.sort_unstable();
    Ok(WhiteheadGraph {
        rank: w.rank,
        edges,
    })
}

/// Whitehead's obstruction: `true` iff the graph is connected with no
/// cutpoint, in which case the word is certainly not primitive. `false` says
/// nothing on its own.
pub fn whitehead_obstruction(w: &FreeWord) -> Result<bool> {
    let (core, _) = w.cyclic_reduce();
    if core.is_empty() {
        return Ok(false);
    }
    let g = whitehead_graph(&core)?;
    Ok(g.is_connected() && !g.has_cutpoint())
}

/// A Whitehead automorphism of the second kind, determined by a multiplier
/// letter `a` and a set `A` of letters with `a` in `A` and `a^-1` not in `A`.
/// A letter `x` (other than `a`, `a^-1`) maps to `a^-e' x a^e` where `e = 1`
/// iff `x` is in `A` and `e' = 1` iff `x^-1` is in `A`.
#[derive(Debug, Clone, Copy)]
struct WhiteheadMove {
    multiplier: Letter,
    /// Bitmask over letter ids.
    set: u64,
}

impl WhiteheadMove {
    fn contains(self, l: Letter) -> bool {
        self.set >> l.id() & 1 == 1
    }

    fn map_letter(self, x: Letter, out: &mut Vec<Letter>) {
        let a = self.multiplier;
        if x == a || x == a.inverse() {
            out.push(x);
            return;
        }
        if self.contains(x.inverse()) {
            out.push(a.inverse());
        }
        out.push(x);
        if self.contains(x) {
            out.push(a);
        }
    }

    fn apply(self, w: &FreeWord) -> FreeWord {
        let mut raw = Vec::with_capacity(3 * w.len());
        for &x in w.letters() {
            self.map_letter(x, &mut raw);
        }
        reduce(&raw, w.rank()).expect("images of valid letters are valid")
    }
}

/// All nontrivial Whitehead moves of the second kind for the given rank.
fn whitehead_moves(rank: usize) -> Vec<WhiteheadMove> {
    let mut moves = Vec::new();
    for a_id in 0..2 * rank {
        let a = Letter::from_id(a_id);
        let others: Vec<usize> = (0..2 * rank)
            .filter(|&id| id != a_id && id != a.inverse().id())
            .collect();
        for bits in 0..(1u64 << others.len()) {
            if bits == 0 {
                continue; // A = {a} is the identity automorphism
            }
            let mut set = 1u64 << a_id;
            for (pos, &id) in others.iter().enumerate() {
                if bits >> pos & 1 == 1 {
                    set |= 1u64 << id;
                }
            }
            moves.push(WhiteheadMove { multiplier: a, set });
        }
    }
    moves
}

/// Whitehead's primitivity decision: repeatedly apply the cyclic-length-
/// reducing Whitehead moves; the word is primitive iff the descent ends at
/// cyclic length one.
pub fn is_primitive(w: &FreeWord) -> bool {
    let (mut core, _) = w.cyclic_reduce();
    if core.is_empty() {
        return false;
    }
    if core.len() == 1 {
        return true;
    }
    let moves = whitehead_moves(core.rank());
    loop {
        let mut best: Option<FreeWord> = None;
        for mv in &moves {
            let (img_core, _) = mv.apply(&core).cyclic_reduce();
            if img_core.len() < best.as_ref().map_or(core.len(), FreeWord::len) {
                best = Some(img_core);
            }
        }
        match best {
            Some(b) => {
                core = b;
                if core.len() <= 1 {
                    return core.len() == 1;
                }
            }
            None => return false,
        }
    }
}

/// A primitive conjugacy class, identified with its inverse class; the
/// representative is the canonical (lexicographically minimal) cyclic word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimitiveClass {
    representative: FreeWord,
}

impl PrimitiveClass {
    /// Wrap a word after canonicalizing and verifying primitivity.
    pub fn new(w: &FreeWord) -> Result<Self> {
        if !is_primitive(w) {
            return Err(Error::InvalidInput(format!("{w} is not primitive")));
        }
        Ok(PrimitiveClass {
            representative: w.class_canonical(),
        })
    }

    pub fn representative(&self) -> &FreeWord {
        &self.representative
    }

    pub fn length(&self) -> usize {
        self.representative.len()
    }
}

impl fmt::Display for PrimitiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

/// All cyclically reduced words of exactly length `len`.
fn cyclically_reduced_words(rank: usize, len: usize) -> Vec<FreeWord> {
    fn rec(
        alphabet: &[Letter],
        buf: &mut Vec<Letter>,
        len: usize,
        rank: usize,
        out: &mut Vec<FreeWord>,
    ) {
        if buf.len() == len {
            if len == 1 || buf[0] != buf[len - 1].inverse() {
                out.push(FreeWord {
                    letters: buf.clone(),
                    rank,
                });
            }
            return;
        }
        for &l in alphabet {
            if buf.last() == Some(&l.inverse()) {
                continue;
            }
            buf.push(l);
            rec(alphabet, buf, len, rank, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    let alphabet: Vec<Letter> = (0..2 * rank).map(Letter::from_id).collect();
    let mut buf: Vec<Letter> = Vec::with_capacity(len);
    rec(&alphabet, &mut buf, len, rank, &mut out);
    out
}

/// Enumerate all primitive conjugacy classes (identified with their inverse
/// classes) of cyclic length at most `max_len`, sorted by length then by the
/// canonical representative.
pub fn enumerate_primitive_classes(rank: usize, max_len: usize) -> Result<Vec<PrimitiveClass>> {
    if !(2..=26).contains(&rank) {
        return Err(Error::InvalidInput(format!(
            "rank must be in 2..=26, got {rank}"
        )));
    }
    if max_len == 0 {
        return Err(Error::InvalidInput("cutoff must be at least 1".into()));
    }
    let mut candidates: HashSet<FreeWord> = HashSet::new();
    for len in 1..=max_len {
        for w in cyclically_reduced_words(rank, len) {
            candidates.insert(w.class_canonical());
        }
    }
    let mut classes: Vec<PrimitiveClass> = candidates
        .into_par_iter()
        .filter(is_primitive)
        .map(|w| PrimitiveClass { representative: w })
        .collect();
    classes.sort_by(|a, b| {
        (a.length(), &a.representative.letters).cmp(&(b.length(), &b.representative.letters))
    });
    Ok(classes)
}

/// Finite-cutoff primitive-blocking test: `true` iff `w` occurs as a subword
/// of no cyclically reduced primitive word of cyclic length at most `cutoff`.
/// The quantification over all primitives is truncated at the cutoff, which
/// callers should report alongside the verdict.
pub fn is_primitive_blocking(w: &FreeWord, cutoff: usize) -> Result<bool> {
    let classes = enumerate_primitive_classes(w.rank(), cutoff)?;
    if w.is_empty() {
        return Ok(false); // the empty word occurs in everything
    }
    for class in &classes {
        let rep = class.representative();
        if w.len() > rep.len() {
            continue;
        }
        for word in [rep.clone(), rep.inverse()] {
            // Substring of the doubled word covers every rotation.
            let mut doubled = word.letters.clone();
            doubled.extend_from_slice(&word.letters);
            if doubled
                .windows(w.len())
                .any(|win| win == w.letters.as_slice())
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, 2).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        assert_eq!(w("abB"), w("a"));
        assert_eq!(w(""), FreeWord::identity(2));
        assert_eq!(w("abAB").to_string(), "abAB");
    }

    #[test]
    fn reduce_is_idempotent_and_validates_rank() {
        let raw = [Letter::new(0, false), Letter::new(0, true)];
        assert!(reduce(&raw, 2).unwrap().is_empty());
        assert!(matches!(
            FreeWord::parse("ac", 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn cyclic_reduce_examples() {
        // b a b^-1 -> core a, conjugator b
        let (core, conj) = w("baB").cyclic_reduce();
        assert_eq!(core, w("a"));
        assert_eq!(conj, w("b"));
        // commutator is already cyclically reduced
        let (core, conj) = w("abAB").cyclic_reduce();
        assert_eq!(core, w("abAB"));
        assert!(conj.is_empty());
        // a^-1 b a^3 -> core b a^2, conjugator a^-1
        let (core, conj) = w("Abaaa").cyclic_reduce();
        assert_eq!(core, w("baa"));
        assert_eq!(conj, w("A"));
        assert_eq!(core.len(), 3);
        // conjugation identity
        let back = conj.concat(&core).unwrap().concat(&conj.inverse()).unwrap();
        assert_eq!(back, w("Abaaa"));
    }

    #[test]
    fn cayley_prefixes_read_the_periodic_word() {
        let word = w("ab");
        let pts = word.cayley_line_prefixes(0, 4).unwrap();
        let expect = ["", "a", "ab", "aba", "abab"];
        for (p, e) in pts.iter().zip(expect) {
            assert_eq!(p.to_string(), e);
        }
        let neg = word.cayley_line_prefixes(-1, -1).unwrap();
        assert_eq!(neg[0], w("B"));
    }

    #[test]
    fn cayley_prefix_periodicity() {
        for s in ["ab", "abbA", "aabab"] {
            let word = FreeWord::parse(s, 2).unwrap().class_canonical();
            let m = word.len() as i64;
            let pts = word.cayley_line_prefixes(-2 * m, 2 * m).unwrap();
            let offset = 2 * m;
            for k in -2 * m..=m {
                let qk = &pts[(k + offset) as usize];
                let qkm = &pts[(k + m + offset) as usize];
                assert_eq!(&word.concat(qk).unwrap(), qkm, "k = {k} in {s}");
            }
        }
    }

    #[test]
    fn cayley_prefixes_reject_bad_words() {
        assert!(w("").cayley_line_prefixes(0, 1).is_err());
        assert!(w("abA").cayley_line_prefixes(0, 1).is_err());
    }

    #[test]
    fn whitehead_graph_of_commutator_is_a_4_cycle() {
        let g = whitehead_graph(&w("abAB")).unwrap();
        // {a,B}, {b,a}, {A,b}, {B,A}
        let mut expect: Vec<(char, char)> = [('a', 'B'), ('a', 'b'), ('b', 'A'), ('A', 'B')]
            .into_iter()
            .map(|(x, y)| {
                let (i, j) = (
                    Letter::from_char(x).unwrap().id(),
                    Letter::from_char(y).unwrap().id(),
                );
                if i <= j {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        expect.sort_unstable();
        let mut got = g.edge_labels();
        got.sort_unstable();
        assert_eq!(got, expect);
        assert!(g.is_connected());
        assert!(!g.has_cutpoint());
    }

    #[test]
    fn whitehead_graph_of_square_doubles_multiplicities() {
        let c = w("abAB");
        let c2 = c.concat(&c).unwrap();
        let g1 = whitehead_graph(&c).unwrap();
        let g2 = whitehead_graph(&c2).unwrap();
        let mut doubled = g1.edges().to_vec();
        doubled.extend_from_slice(g1.edges());
        doubled.sort_unstable();
        assert_eq!(g2.edges(), doubled.as_slice());
        assert!(g2.is_connected() && !g2.has_cutpoint());
    }

    #[test]
    fn whitehead_graph_of_single_letter() {
        let g = whitehead_graph(&w("a")).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edge_labels(), vec![('a', 'A')]);
        assert!(!g.is_connected()); // b, B isolated
    }

    #[test]
    fn obstruction_examples() {
        assert!(whitehead_obstruction(&w("abAB")).unwrap());
        assert!(!whitehead_obstruction(&w("a")).unwrap());
        assert!(!whitehead_obstruction(&w("ab")).unwrap());
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&w("a")));
        assert!(is_primitive(&w("abb"))); // a b^2 is primitive in F_2
        assert!(!is_primitive(&w("abAB")));
        assert!(!is_primitive(&w("aa")));
        assert!(!is_primitive(&w("")));
        // conjugation invariance
        assert!(is_primitive(&w("b").concat(&w("abb")).unwrap().concat(&w("B")).unwrap()));
    }

    #[test]
    fn enumerate_small_classes() {
        let classes = enumerate_primitive_classes(2, 1).unwrap();
        let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
        assert_eq!(names, vec!["a", "b"]);

        let classes = enumerate_primitive_classes(2, 2).unwrap();
        let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
        assert_eq!(names.len(), 4);
        assert!(names.contains(&"a".to_string()) && names.contains(&"b".to_string()));
        assert!(names.contains(&"ab".to_string()));
        assert!(names.iter().any(|s| s == "aB" || s == "bA"));
        // a^2, b^2 must be absent
        assert!(!names.contains(&"aa".to_string()));
        assert!(!names.contains(&"bb".to_string()));
    }

    #[test]
    fn commutator_class_is_not_enumerated() {
        let classes = enumerate_primitive_classes(2, 4).unwrap();
        let c = w("abAB").class_canonical();
        assert!(classes.iter().all(|k| k.representative() != &c));
    }

    /// Primitive classes of F_2 with cyclic length m correspond to coprime
    /// pairs (p, q) with |p| + |q| = m, modulo (p, q) ~ (-p, -q). The
    /// expected counts are computed from that correspondence.
    #[test]
    fn class_counts_match_coprime_pairs() {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        fn coprime_class_count(m: i64) -> usize {
            let mut count = 0usize;
            for p in -m..=m {
                for q in -m..=m {
                    if p.abs() + q.abs() == m && gcd(p, q) == 1 {
                        count += 1;
                    }
                }
            }
            count / 2
        }
        let classes = enumerate_primitive_classes(2, 8).unwrap();
        for m in 1..=8usize {
            let got = classes.iter().filter(|c| c.length() == m).count();
            assert_eq!(got, coprime_class_count(m as i64), "length {m}");
        }
        assert_eq!(classes.len(), 44);
    }

    #[test]
    fn class_set_closed_under_inversion() {
        let classes = enumerate_primitive_classes(2, 5).unwrap();
        for c in &classes {
            let inv_canon = c.representative().inverse().class_canonical();
            assert_eq!(&inv_canon, c.representative());
        }
    }

    #[test]
    fn blocking_examples() {
        let c = w("abAB");
        let c2 = c.concat(&c).unwrap();
        assert!(is_primitive_blocking(&c2, 8).unwrap());
        assert!(is_primitive_blocking(&c2, 10).unwrap());
        assert!(!is_primitive_blocking(&w("a"), 1).unwrap());
        assert!(!is_primitive_blocking(&w("ab"), 2).unwrap());
    }
}
