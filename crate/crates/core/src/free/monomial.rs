use crate::error::{invalid, Error, Result};
use crate::tree::PlanarTree;
use std::fmt;

pub type GenId = u16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: String,
    pub arity: usize,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, arity: usize, degree: i64) -> Self {
        Generator { name: name.into(), arity, degree }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        for (k, g) in gens.iter().enumerate() {
            if g.arity == 0 {
                return invalid(format!("generator {} has arity 0", g.name));
            }
            if g.name.is_empty() || !g.name.chars().next().unwrap().is_ascii_alphabetic() {
                return invalid(format!("bad generator name `{}`", g.name));
            }
            if gens[..k].iter().any(|h| h.name == g.name) {
                return invalid(format!("duplicate generator {}", g.name));
            }
        }
        Ok(Alphabet { gens })
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn id(&self, name: &str) -> Result<GenId> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .map(|p| p as GenId)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.gens.len()).map(|k| k as GenId)
    }

    pub fn has_unary(&self) -> bool {
        self.gens.iter().any(|g| g.arity == 1)
    }

    /// The corolla monomial of a generator.
    pub fn corolla(&self, id: GenId) -> Monomial {
        Monomial::Node(id, vec![Monomial::Leaf; self.get(id).arity])
    }

    pub fn corolla_named(&self, name: &str) -> Result<Monomial> {
        Ok(self.corolla(self.id(name)?))
    }
}

/// A tree monomial: a planar tree whose vertices carry generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    Leaf,
    Node(GenId, Vec<Monomial>),
}

/// A monomial with a hole: `upper` with `lowers` grafted below the vertex
/// that will be inserted at leaf `slot` of `upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub upper: Monomial,
    pub slot: usize,
    pub lowers: Vec<Monomial>,
}

impl Monomial {
    pub fn identity() -> Self {
        Monomial::Leaf
    }

    pub fn arity(&self) -> usize {
        match self {
            Monomial::Leaf => 1,
            Monomial::Node(_, ch) => ch.iter().map(|c| c.arity()).sum(),
        }
    }

    /// Number of vertices.
    pub fn weight(&self) -> usize {
        match self {
            Monomial::Leaf => 0,
            Monomial::Node(_, ch) => 1 + ch.iter().map(|c| c.weight()).sum::<usize>(),
        }
    }

    pub fn degree(&self, a: &Alphabet) -> i64 {
        match self {
            Monomial::Leaf => 0,
            Monomial::Node(g, ch) => a.get(*g).degree + ch.iter().map(|c| c.degree(a)).sum::<i64>(),
        }
    }

    /// Occurrences of each generator.
    pub fn content(&self, ngens: usize) -> Vec<usize> {
        let mut v = vec![0; ngens];
        self.visit(&mut |g| v[g as usize] += 1);
        v
    }

    pub fn visit(&self, f: &mut impl FnMut(GenId)) {
        if let Monomial::Node(g, ch) = self {
            f(*g);
            for c in ch {
                c.visit(f);
            }
        }
    }

    /// Generators in preorder.
    pub fn preorder(&self) -> Vec<GenId> {
        let mut v = Vec::new();
        self.visit(&mut |g| v.push(g));
        v
    }

    pub fn is_well_formed(&self, a: &Alphabet) -> bool {
        match self {
            Monomial::Leaf => true,
            Monomial::Node(g, ch) => {
                (*g as usize) < a.len() && a.get(*g).arity == ch.len() && ch.iter().all(|c| c.is_well_formed(a))
            }
        }
    }

    /// Underlying planar tree; None when a unary vertex is present.
    pub fn shape(&self) -> Option<PlanarTree> {
        match self {
            Monomial::Leaf => Some(PlanarTree::Leaf),
            Monomial::Node(_, ch) if ch.len() >= 2 => {
                Some(PlanarTree::Node(ch.iter().map(|c| c.shape()).collect::<Option<Vec<_>>>()?))
            }
            _ => None,
        }
    }

    /// For each leaf, the generators on the path from the root.
    pub fn path_sequence(&self) -> Vec<Vec<GenId>> {
        fn go(m: &Monomial, prefix: &mut Vec<GenId>, out: &mut Vec<Vec<GenId>>) {
            match m {
                Monomial::Leaf => out.push(prefix.clone()),
                Monomial::Node(g, ch) => {
                    prefix.push(*g);
                    for c in ch {
                        go(c, prefix, out);
                    }
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Grafts `b` at leaf `i` (1-based); returns the result together with the
    /// total degree of vertices of `self` that follow leaf `i` in preorder.
    fn graft_raw(&self, i: usize, b: &Monomial, a: &Alphabet) -> (Monomial, i64) {
        struct St<'x> {
            remaining: usize,
            after: i64,
            b: &'x Monomial,
        }
        fn go(m: &Monomial, st: &mut St, a: &Alphabet) -> Monomial {
            match m {
                Monomial::Leaf => {
                    if st.remaining == 0 {
                        return Monomial::Leaf;
                    }
                    st.remaining -= 1;
                    if st.remaining == 0 {
                        st.b.clone()
                    } else {
                        Monomial::Leaf
                    }
                }
                Monomial::Node(g, ch) => {
                    if st.remaining == 0 {
                        st.after += a.get(*g).degree;
                    }
                    Monomial::Node(*g, ch.iter().map(|c| go(c, st, a)).collect())
                }
            }
        }
        if let Monomial::Leaf = self {
            return (b.clone(), 0);
        }
        let mut st = St { remaining: i, after: 0, b };
        let out = go(self, &mut st, a);
        (out, st.after)
    }

    /// Infinitesimal composition of monomials with its Koszul sign.
    pub fn compose(&self, i: usize, b: &Monomial, a: &Alphabet) -> Result<(bool, Monomial)> {
        let n = self.arity();
        if i == 0 || i > n {
            return Err(Error::OutOfRange { index: i, len: n });
        }
        let (m, after) = self.graft_raw(i, b, a);
        let negative = (b.degree(a) * after).rem_euclid(2) == 1;
        Ok((negative, m))
    }

    /// Paths (child indices from the root) of every vertex, in preorder.
    pub fn vertex_paths(&self) -> Vec<Vec<usize>> {
        fn go(m: &Monomial, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if let Monomial::Node(_, ch) = m {
                out.push(p.clone());
                for (k, c) in ch.iter().enumerate() {
                    p.push(k);
                    go(c, p, out);
                    p.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn subtree(&self, path: &[usize]) -> &Monomial {
        let mut m = self;
        for &k in path {
            match m {
                Monomial::Node(_, ch) => m = &ch[k],
                Monomial::Leaf => panic!("path leaves the tree"),
            }
        }
        m
    }

    pub fn replace_subtree(&self, path: &[usize], with: Monomial) -> Monomial {
        if path.is_empty() {
            return with;
        }
        match self {
            Monomial::Node(g, ch) => {
                let mut ch = ch.clone();
                ch[path[0]] = ch[path[0]].replace_subtree(&path[1..], with);
                Monomial::Node(*g, ch)
            }
            Monomial::Leaf => panic!("path leaves the tree"),
        }
    }

    /// Number of leaves strictly before the subtree at `path`.
    pub fn leaves_before(&self, path: &[usize]) -> usize {
        let mut m = self;
        let mut count = 0;
        for &k in path {
            match m {
                Monomial::Node(_, ch) => {
                    count += ch[..k].iter().map(|c| c.arity()).sum::<usize>();
                    m = &ch[k];
                }
                Monomial::Leaf => panic!("path leaves the tree"),
            }
        }
        count
    }

    /// Matches `pattern` at the root of `self`, collecting the subtrees that
    /// hang below the pattern's leaves.
    pub fn match_root(&self, pattern: &Monomial, lowers: &mut Vec<Monomial>) -> bool {
        match pattern {
            Monomial::Leaf => {
                lowers.push(self.clone());
                true
            }
            Monomial::Node(g, pch) => match self {
                Monomial::Node(h, ch) if g == h && ch.len() == pch.len() => {
                    ch.iter().zip(pch).all(|(c, p)| c.match_root(p, lowers))
                }
                _ => false,
            },
        }
    }

    pub fn divides_at_root(&self, pattern: &Monomial) -> bool {
        match pattern {
            Monomial::Leaf => true,
            Monomial::Node(g, pch) => match self {
                Monomial::Node(h, ch) if g == h && ch.len() == pch.len() => {
                    ch.iter().zip(pch).all(|(c, p)| c.divides_at_root(p))
                }
                _ => false,
            },
        }
    }

    /// Vertex paths at which `pattern` embeds as a planar divisor.
    pub fn embeddings(&self, pattern: &Monomial) -> Vec<Vec<usize>> {
        self.vertex_paths().into_iter().filter(|p| self.subtree(p).divides_at_root(pattern)).collect()
    }

    pub fn first_embedding(&self, pattern: &Monomial) -> Option<Vec<usize>> {
        fn go(m: &Monomial, pat: &Monomial, p: &mut Vec<usize>) -> bool {
            if let Monomial::Node(_, ch) = m {
                if m.divides_at_root(pat) {
                    return true;
                }
                for (k, c) in ch.iter().enumerate() {
                    p.push(k);
                    if go(c, pat, p) {
                        return true;
                    }
                    p.pop();
                }
            }
            false
        }
        let mut p = Vec::new();
        go(self, pattern, &mut p).then_some(p)
    }

    pub fn contains(&self, pattern: &Monomial) -> bool {
        self.first_embedding(pattern).is_some()
    }

    /// The context around an embedding of `pattern` at `path`.
    pub fn context_at(&self, path: &[usize], pattern: &Monomial) -> Context {
        let sub = self.subtree(path);
        let mut lowers = Vec::new();
        let ok = sub.match_root(pattern, &mut lowers);
        assert!(ok, "pattern does not embed at path");
        let upper = self.replace_subtree(path, Monomial::Leaf);
        let slot = self.leaves_before(path) + 1;
        Context { upper, slot, lowers }
    }

    pub fn display<'a>(&'a self, a: &'a Alphabet) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, a }
    }
}

impl Context {
    /// Fills the hole with `x`; the sign is the product of composition signs.
    pub fn fill(&self, x: &Monomial, a: &Alphabet) -> (bool, Monomial) {
        let mut neg = false;
        let mut y = x.clone();
        for t in (0..self.lowers.len()).rev() {
            if let Monomial::Leaf = self.lowers[t] {
                continue;
            }
            let (s, z) = y.compose(t + 1, &self.lowers[t], a).expect("slot in range");
            neg ^= s;
            y = z;
        }
        let (s, z) = self.upper.compose(self.slot, &y, a).expect("slot in range");
        (neg ^ s, z)
    }

    pub fn weight(&self) -> usize {
        self.upper.weight() + self.lowers.iter().map(|l| l.weight()).sum::<usize>()
    }

    pub fn degree(&self, a: &Alphabet) -> i64 {
        self.upper.degree(a) + self.lowers.iter().map(|l| l.degree(a)).sum::<i64>()
    }

    pub fn hole_arity(&self) -> usize {
        self.lowers.len()
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    a: &'a Alphabet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Monomial::Leaf => f.write_str("_"),
            Monomial::Node(g, ch) => {
                write!(f, "{}(", self.a.get(*g).name)?;
                for (k, c) in ch.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", c.display(self.a))?;
                }
                f.write_str(")")
            }
        }
    }
}
