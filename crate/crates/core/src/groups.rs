//! Finite permutation groups as Cayley tables, and factorizations X = GM with
//! their matched-pair actions.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{CoreError, Result};

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// A permutation of {0..degree-1}, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self { Perm((0..degree as u16).collect()) }

    pub fn degree(&self) -> usize { self.0.len() }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm { Perm(self.0.iter().map(|&i| other.0[i as usize]).collect()) }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u16;
        }
        Perm(out)
    }

    pub fn padded(&self, degree: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u16..degree as u16);
        Perm(v)
    }

    /// Shift the support by `offset` points inside a larger degree.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut v: Vec<u16> = (0..degree as u16).collect();
        for (i, &j) in self.0.iter().enumerate() {
            v[i + offset] = j + offset as u16;
        }
        Perm(v)
    }

    /// Parse cycle notation such as `(1 2)(3 4 5)`; `()` is the identity.
    pub fn parse(s: &str) -> Result<Perm> {
        let bad = |reason: &str| CoreError::Permutation { input: s.to_string(), reason: reason.to_string() };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad("empty string"));
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = body.find(')').ok_or_else(|| bad("unbalanced parenthesis"))?;
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let p: usize = tok.parse().map_err(|_| bad(&format!("`{tok}` is not a point")))?;
                if p == 0 {
                    return Err(bad("points are numbered from 1"));
                }
                if cycle.contains(&p) || cycles.iter().any(|c| c.contains(&p)) {
                    return Err(bad(&format!("point {p} repeated")));
                }
                cycle.push(p);
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
        let mut img: Vec<u16> = (0..degree as u16).collect();
        for c in &cycles {
            for (k, &p) in c.iter().enumerate() {
                img[p - 1] = (c[(k + 1) % c.len()] - 1) as u16;
            }
        }
        Ok(Perm(img))
    }

    pub fn to_cycles(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for i in 0..self.0.len() {
            if seen[i] || self.0[i] as usize == i {
                continue;
            }
            let mut cyc = vec![i + 1];
            seen[i] = true;
            let mut j = self.0[i] as usize;
            while j != i {
                seen[j] = true;
                cyc.push(j + 1);
                j = self.0[j] as usize;
            }
            let parts: Vec<String> = cyc.iter().map(usize::to_string).collect();
            let _ = write!(out, "({})", parts.join(" "));
        }
        if out.is_empty() {
            "()".to_string()
        } else {
            out
        }
    }
}

/// A word in labelled generators, rendered like `u^2st`.
fn render_word(word: &[(usize, i64)], labels: &[String]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let mut out = String::new();
    for &(g, p) in word {
        out.push_str(&labels[g]);
        if p != 1 {
            let _ = write!(out, "^{p}");
        }
    }
    out
}

fn push_letter(word: &mut Vec<(usize, i64)>, g: usize) {
    match word.last_mut() {
        Some((h, p)) if *h == g => *p += 1,
        _ => word.push((g, 1)),
    }
}

/// A finite group with dense element indices; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    perms: Vec<Perm>,
    names: Vec<String>,
    generators: Vec<usize>,
    index: HashMap<Perm, usize>,
}

impl FiniteGroup {
    pub fn from_permutations(gens: &[&str]) -> Result<Self> {
        let perms = gens.iter().map(|g| Perm::parse(g)).collect::<Result<Vec<_>>>()?;
        let labels: Vec<String> = (1..=perms.len()).map(|i| format!("g{i}")).collect();
        Self::generated_by(&perms, &labels, DEFAULT_ORDER_BOUND)
    }

    /// Breadth-first closure from the identity, trying generators in order.
    pub fn generated_by(gens: &[Perm], labels: &[String], bound: usize) -> Result<Self> {
        let degree = gens.iter().map(Perm::degree).max().unwrap_or(0);
        let gens: Vec<Perm> = gens.iter().map(|g| g.padded(degree)).collect();
        let mut perms = vec![Perm::identity(degree)];
        let mut words: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(perms[0].clone(), 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let y = perms[x].then(g);
                if index.contains_key(&y) {
                    continue;
                }
                if perms.len() >= bound {
                    return Err(CoreError::OrderBound(bound));
                }
                index.insert(y.clone(), perms.len());
                let mut w = words[x].clone();
                push_letter(&mut w, gi);
                words.push(w);
                queue.push_back(perms.len());
                perms.push(y);
            }
        }
        let order = perms.len();
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                mul[a * order + b] = index[&perms[a].then(&perms[b])] as u32;
            }
        }
        let inv = perms.iter().map(|p| index[&p.inverse()] as u32).collect();
        let names = words.iter().map(|w| render_word(w, labels)).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup { order, mul, inv, perms, names, generators, index })
    }

    pub fn order(&self) -> usize { self.order }

    pub fn identity(&self) -> usize { 0 }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize { self.mul[a * self.order + b] as usize }

    #[inline]
    pub fn inv(&self, a: usize) -> usize { self.inv[a] as usize }

    /// g⁻¹ x g.
    pub fn conj(&self, x: usize, g: usize) -> usize { self.mul(self.mul(self.inv(g), x), g) }

    pub fn mul_all(&self, xs: &[usize]) -> usize { xs.iter().fold(0, |acc, &x| self.mul(acc, x)) }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn perm(&self, x: usize) -> &Perm { &self.perms[x] }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        let degree = self.perms[0].degree();
        if p.degree() > degree {
            return None;
        }
        self.index.get(&p.padded(degree)).copied()
    }

    pub fn name(&self, x: usize) -> &str { &self.names[x] }

    pub fn generators(&self) -> &[usize] { &self.generators }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|x| self.element_order(x)).fold(1, |a, b| a / gcd(a, b) * b)
    }

    pub fn is_abelian(&self) -> bool { (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))) }

    /// Sorted closure of a generating set.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> { self.subgroup_bfs(gens) .into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect() }

    /// Closure of a generating set in breadth-first order from the identity.
    pub fn subgroup_bfs(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        member[0] && set.iter().all(|&a| member[self.inv(a)] && set.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> { (0..self.order).filter(|&g| self.mul(g, x) == self.mul(x, g)).collect() }

    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.order).map(|g| self.conj(x, g)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Classes ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut done = vec![false; self.order];
        let mut out = Vec::new();
        for x in 0..self.order {
            if done[x] {
                continue;
            }
            let members = self.conjugacy_class(x);
            for &m in &members {
                done[m] = true;
            }
            out.push(ConjugacyClass { representative: x, members });
        }
        out
    }

    /// Associativity, identity and inverse laws, checked exhaustively.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a || self.mul(a, self.inv(a)) != 0 {
                return Err(CoreError::Invariant(format!("group unit/inverse law fails at {}", self.names[a])));
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(CoreError::Invariant("group multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize { if b == 0 { a } else { gcd(b, a % b) } }

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize { self.members.len() }

    pub fn is_empty(&self) -> bool { self.members.is_empty() }

    pub fn contains(&self, x: usize) -> bool { self.members.binary_search(&x).is_ok() }
}

/// Elements of a subgroup listed in a chosen order, with display names.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    pub elements: Vec<usize>,
    pub names: Vec<String>,
}

impl SubgroupSpec {
    /// Breadth-first listing from labelled generators.
    pub fn generated(x: &FiniteGroup, gens: &[usize], labels: &[String]) -> Self {
        let mut elements = vec![0];
        let mut words: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
        let mut seen = vec![false; x.order()];
        seen[0] = true;
        let mut i = 0;
        while i < elements.len() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = x.mul(elements[i], g);
                if !seen[y] {
                    seen[y] = true;
                    let mut w = words[i].clone();
                    push_letter(&mut w, gi);
                    words.push(w);
                    elements.push(y);
                }
            }
            i += 1;
        }
        let names = words.iter().map(|w| render_word(w, labels)).collect();
        SubgroupSpec { elements, names }
    }

    /// Elements given explicitly as words like `st^2` in labelled generators.
    pub fn from_words(x: &FiniteGroup, gens: &[usize], labels: &[String], words: &[&str]) -> Result<Self> {
        let mut elements = Vec::new();
        for w in words {
            elements.push(eval_word(x, gens, labels, w)?);
        }
        Ok(SubgroupSpec { elements, names: words.iter().map(|w| w.to_string()).collect() })
    }
}

/// Evaluate a word such as `u^2s` or `x1^-1 x2` over labelled generators.
pub fn eval_word(x: &FiniteGroup, gens: &[usize], labels: &[String], word: &str) -> Result<usize> {
    let bad = |r: String| CoreError::Invalid(format!("word `{word}`: {r}"));
    let w: String = word.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if w == "e" || w.is_empty() {
        return Ok(0);
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(labels[i].len()));
    let mut acc = 0;
    let mut rest = w.as_str();
    while !rest.is_empty() {
        let gi = order.iter().copied().find(|&i| rest.starts_with(labels[i].as_str())).ok_or_else(|| bad(format!("unknown generator at `{rest}`")))?;
        rest = &rest[labels[gi].len()..];
        let mut power = 1i64;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.char_indices().find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-'))).map_or(r.len(), |(i, _)| i);
            power = r[..end].parse().map_err(|_| bad("bad exponent".into()))?;
            rest = &r[end..];
        }
        acc = x.mul(acc, x.pow(gens[gi], power));
    }
    Ok(acc)
}

/// A factorization X = GM with derived actions s▷u ∈ G and s◁u ∈ M from su = (s▷u)(s◁u).
#[derive(Clone, Debug)]
pub struct Factorization {
    pub name: String,
    pub x: FiniteGroup,
    g: Vec<usize>,
    m: Vec<usize>,
    g_pos: Vec<Option<usize>>,
    m_pos: Vec<Option<usize>>,
    gm: Vec<(usize, usize)>,
    mg: Vec<(usize, usize)>,
    tri: Vec<usize>,
    tle: Vec<usize>,
    labels: Vec<String>,
    g_names: Vec<String>,
    m_names: Vec<String>,
}

impl Factorization {
    /// Build and verify a factorization from listed subgroups of X.
    pub fn derive(name: &str, x: FiniteGroup, g: SubgroupSpec, m: SubgroupSpec) -> Result<Self> {
        let n = x.order();
        for (which, s) in [("G", &g), ("M", &m)] {
            let mut sorted = s.elements.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.elements.len() || !x.is_subgroup(&sorted) {
                return Err(CoreError::NotFactorization(format!("{which} is not a subgroup")));
            }
        }
        if g.elements.len() * m.elements.len() != n {
            return Err(CoreError::NotFactorization(format!("|G|·|M| = {}·{} differs from |X| = {n}", g.elements.len(), m.elements.len())));
        }
        let mut g_pos = vec![None; n];
        let mut m_pos = vec![None; n];
        for (i, &e) in g.elements.iter().enumerate() {
            g_pos[e] = Some(i);
        }
        for (i, &e) in m.elements.iter().enumerate() {
            m_pos[e] = Some(i);
        }
        if g.elements[0] != 0 || m.elements[0] != 0 {
            return Err(CoreError::Invalid("subgroup listings must start with the identity".into()));
        }
        let mut gm = vec![(usize::MAX, usize::MAX); n];
        let mut mg = vec![(usize::MAX, usize::MAX); n];
        for (ui, &u) in g.elements.iter().enumerate() {
            for (si, &s) in m.elements.iter().enumerate() {
                let us = x.mul(u, s);
                let su = x.mul(s, u);
                if gm[us].0 != usize::MAX || mg[su].0 != usize::MAX {
                    return Err(CoreError::NotFactorization("factorization is not unique (G ∩ M ≠ {e})".into()));
                }
                gm[us] = (ui, si);
                mg[su] = (si, ui);
            }
        }
        let ng = g.elements.len();
        let nm = m.elements.len();
        let mut tri = vec![0; nm * ng];
        let mut tle = vec![0; nm * ng];
        for si in 0..nm {
            for ui in 0..ng {
                let (a, b) = gm[x.mul(m.elements[si], g.elements[ui])];
                tri[si * ng + ui] = a;
                tle[si * ng + ui] = b;
            }
        }
        let labels = (0..n)
            .map(|z| {
                let (ui, si) = gm[z];
                match (ui, si) {
                    (0, 0) => "e".to_string(),
                    (0, _) => m.names[si].clone(),
                    (_, 0) => g.names[ui].clone(),
                    _ => format!("{}{}", g.names[ui], m.names[si]),
                }
            })
            .collect();
        let f = Factorization {
            name: name.to_string(),
            x,
            g: g.elements,
            m: m.elements,
            g_pos,
            m_pos,
            gm,
            mg,
            tri,
            tle,
            labels,
            g_names: g.names,
            m_names: m.names,
        };
        f.verify_matched_pair()?;
        Ok(f)
    }

    pub fn g_elems(&self) -> &[usize] { &self.g }

    pub fn m_elems(&self) -> &[usize] { &self.m }

    /// Position of an X element inside the G listing.
    pub fn g_index(&self, x: usize) -> Option<usize> { self.g_pos[x] }

    pub fn m_index(&self, x: usize) -> Option<usize> { self.m_pos[x] }

    pub fn in_g(&self, x: usize) -> bool { self.g_pos[x].is_some() }

    pub fn in_m(&self, x: usize) -> bool { self.m_pos[x].is_some() }

    /// (u, s) with x = u·s.
    pub fn gm_factor(&self, x: usize) -> (usize, usize) {
        let (a, b) = self.gm[x];
        (self.g[a], self.m[b])
    }

    /// (s, u) with x = s·u.
    pub fn mg_factor(&self, x: usize) -> (usize, usize) {
        let (a, b) = self.mg[x];
        (self.m[a], self.g[b])
    }

    /// s▷u for s ∈ M, u ∈ G (X indices).
    pub fn tri(&self, s: usize, u: usize) -> usize { self.g[self.tri[self.m_pos[s].unwrap() * self.g.len() + self.g_pos[u].unwrap()]] }

    /// s◁u for s ∈ M, u ∈ G (X indices).
    pub fn tle(&self, s: usize, u: usize) -> usize { self.m[self.tle[self.m_pos[s].unwrap() * self.g.len() + self.g_pos[u].unwrap()]] }

    /// Display name of an X element in the form `us`.
    pub fn label(&self, x: usize) -> &str { &self.labels[x] }

    /// Look up an element by its label, or by `g.m` with the two factor names.
    pub fn element(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        match name.split_once('.') {
            Some((u, s)) => {
                let ui = self.g_names.iter().position(|n| n == u.trim())?;
                let si = self.m_names.iter().position(|n| n == s.trim())?;
                Some(self.x.mul(self.g[ui], self.m[si]))
            },
            None => self.labels.iter().position(|l| l == name),
        }
    }

    pub fn g_name(&self, pos: usize) -> &str { &self.g_names[pos] }

    pub fn m_name(&self, pos: usize) -> &str { &self.m_names[pos] }

    /// Session conductor: the exponent of X.
    pub fn conductor(&self) -> u32 { self.x.exponent() as u32 }

    /// Whether the M-on-G action ▷ is trivial.
    pub fn tri_is_trivial(&self) -> bool { self.m.iter().all(|&s| self.g.iter().all(|&u| self.tri(s, u) == u)) }

    /// Whether the G-on-M action ◁ is trivial.
    pub fn tle_is_trivial(&self) -> bool { self.m.iter().all(|&s| self.g.iter().all(|&u| self.tle(s, u) == s)) }

    /// Exhaustive check of the matched-pair conditions and the inverse identities.
    pub fn verify_matched_pair(&self) -> Result<()> {
        let x = &self.x;
        let fail = |what: &str, s: usize, u: usize| CoreError::MatchedPair(format!("{what} at s={}, u={}", self.label(s), self.label(u)));
        for &s in &self.m {
            for &u in &self.g {
                if x.mul(s, u) != x.mul(self.tri(s, u), self.tle(s, u)) {
                    return Err(fail("su = (s▷u)(s◁u)", s, u));
                }
            }
            if self.tle(s, 0) != s || self.tri(s, 0) != 0 {
                return Err(fail("unit law", s, 0));
            }
        }
        for &u in &self.g {
            if self.tri(0, u) != u || self.tle(0, u) != 0 {
                return Err(fail("unit law", 0, u));
            }
        }
        for &s in &self.m {
            for &u in &self.g {
                let su_r = self.tle(s, u);
                let su_l = self.tri(s, u);
                for &v in &self.g {
                    if self.tle(su_r, v) != self.tle(s, x.mul(u, v)) {
                        return Err(fail("(s◁u)◁v = s◁(uv)", s, u));
                    }
                    if self.tri(s, x.mul(u, v)) != x.mul(su_l, self.tri(su_r, v)) {
                        return Err(fail("s▷(uv) = (s▷u)((s◁u)▷v)", s, u));
                    }
                }
                for &t in &self.m {
                    if self.tri(s, self.tri(t, u)) != self.tri(x.mul(s, t), u) {
                        return Err(fail("s▷(t▷u) = (st)▷u", s, u));
                    }
                    if self.tle(x.mul(s, t), u) != x.mul(self.tle(s, self.tri(t, u)), self.tle(t, u)) {
                        return Err(fail("(st)◁u = (s◁(t▷u))(t◁u)", s, u));
                    }
                }
                let a = x.inv(su_r);
                let b = x.inv(su_l);
                if self.tri(a, b) != x.inv(u) || self.tle(a, b) != x.inv(s) {
                    return Err(fail("inverse identities", s, u));
                }
                let (gu, gs) = self.gm_factor(x.mul(u, s));
                if gu != u || gs != s {
                    return Err(fail("gm round trip", s, u));
                }
            }
        }
        Ok(())
    }
}

fn labels(ls: &[&str]) -> Vec<String> { ls.iter().map(|s| s.to_string()).collect() }

fn perms(gens: &[&str]) -> Result<Vec<Perm>> { gens.iter().map(|g| Perm::parse(g)).collect() }

/// Split a comma-separated generator list, ignoring commas inside cycles.
pub fn split_gens(s: &str) -> Vec<String> {
    let s = s.trim();
    if s.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c)
            },
            ')' => {
                depth -= 1;
                cur.push(c);
            },
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
            },
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Default generator labels for G (`u`, `v`, …) and M (`s`, `t`, …).
pub fn default_labels(count: usize, first: &[&str], prefix: &str) -> Vec<String> {
    (0..count).map(|i| first.get(i).map_or_else(|| format!("{prefix}{}", i + 1), |s| s.to_string())).collect()
}

/// Assemble a factorization from permutation generators of X, G and M.
pub fn factorization_from_generators(name: &str, x_gens: &[Perm], g_gens: &[Perm], m_gens: &[Perm]) -> Result<Factorization> {
    let degree = x_gens.iter().chain(g_gens).chain(m_gens).map(Perm::degree).max().unwrap_or(0);
    let pad = |v: &[Perm]| v.iter().map(|p| p.padded(degree)).collect::<Vec<_>>();
    let mut xs = pad(x_gens);
    if xs.is_empty() {
        xs = pad(g_gens);
        xs.extend(pad(m_gens));
    }
    if xs.is_empty() {
        xs.push(Perm::identity(degree.max(1)));
    }
    let xl: Vec<String> = (1..=xs.len()).map(|i| format!("x{i}")).collect();
    let x = FiniteGroup::generated_by(&xs, &xl, DEFAULT_ORDER_BOUND)?;
    let find = |p: &Perm| x.index_of(p).ok_or_else(|| CoreError::NotFactorization(format!("generator {} is not in X", p.to_cycles())));
    let gi = g_gens.iter().map(find).collect::<Result<Vec<_>>>()?;
    let mi = m_gens.iter().map(find).collect::<Result<Vec<_>>>()?;
    let g = SubgroupSpec::generated(&x, &gi, &default_labels(gi.len(), &["u", "v", "w"], "g"));
    let m = SubgroupSpec::generated(&x, &mi, &default_labels(mi.len(), &["s", "t", "r"], "m"));
    Factorization::derive(name, x, g, m)
}

pub const CATALOG_NAMES: &[&str] = &["s3_as_z2z3", "z6_s3", "double_s3", "codouble_s3"];

/// Built-in factorizations, plus the parametric forms `group:<gens>`,
/// `functions:<gens>` and `tensor:<gensG>;<gensM>`.
pub fn catalog(name: &str) -> Result<Factorization> {
    let parse_list = |s: &str| -> Result<Vec<Perm>> { split_gens(s).iter().map(|g| Perm::parse(g)).collect() };
    if let Some(rest) = name.strip_prefix("group:") {
        let g = parse_list(rest)?;
        return factorization_from_generators(name, &g, &g, &[]);
    }
    if let Some(rest) = name.strip_prefix("functions:") {
        let m = parse_list(rest)?;
        return factorization_from_generators(name, &m, &[], &m);
    }
    if let Some(rest) = name.strip_prefix("tensor:") {
        let (a, b) = rest.split_once(';').ok_or_else(|| CoreError::Invalid("tensor:<gensG>;<gensM> needs a `;`".into()))?;
        let g = parse_list(a)?;
        let m = parse_list(b)?;
        let dg = g.iter().map(Perm::degree).max().unwrap_or(0);
        let dm = m.iter().map(Perm::degree).max().unwrap_or(0);
        let g: Vec<Perm> = g.iter().map(|p| p.padded(dg + dm)).collect();
        let m: Vec<Perm> = m.iter().map(|p| p.shifted(dg, dg + dm)).collect();
        return factorization_from_generators(name, &[], &g, &m);
    }
    match name {
        "s3_as_z2z3" => {
            let x = FiniteGroup::generated_by(&perms(&["(1 2)", "(1 2 3)"])?, &labels(&["s", "u"]), DEFAULT_ORDER_BOUND)?;
            let u = x.index_of(&Perm::parse("(1 2 3)")?).unwrap();
            let s = x.index_of(&Perm::parse("(1 2)")?).unwrap();
            let g = SubgroupSpec::from_words(&x, &[u], &labels(&["u"]), &["e", "u", "u^2"])?;
            let m = SubgroupSpec::from_words(&x, &[s], &labels(&["s"]), &["e", "s"])?;
            Factorization::derive(name, x, g, m)
        },
        "z6_s3" => {
            let x = FiniteGroup::generated_by(&perms(&["(1 2)", "(1 2 3)", "(4 5)", "(4 5 6)"])?, &labels(&["a", "b", "c", "d"]), DEFAULT_ORDER_BOUND)?;
            let u = x.index_of(&Perm::parse("(1 2 3)(4 5)")?).unwrap();
            let s = x.index_of(&Perm::parse("(1 2)(4 5)")?).unwrap();
            let t = x.index_of(&Perm::parse("(1 3 2)(4 5 6)")?).unwrap();
            let g = SubgroupSpec::from_words(&x, &[u], &labels(&["u"]), &["e", "u", "u^2", "u^3", "u^4", "u^5"])?;
            let m = SubgroupSpec::from_words(&x, &[s, t], &labels(&["s", "t"]), &["e", "s", "t", "t^2", "st", "st^2"])?;
            Factorization::derive(name, x, g, m)
        },
        "double_s3" | "codouble_s3" => {
            let x = FiniteGroup::generated_by(&perms(&["(1 2)", "(1 2 3)", "(4 5)", "(4 5 6)"])?, &labels(&["a", "b", "c", "d"]), DEFAULT_ORDER_BOUND)?;
            let idx = |p: &str| -> Result<usize> { Ok(x.index_of(&Perm::parse(p)?).unwrap()) };
            let (s, u) = (idx("(1 2)")?, idx("(1 2 3)")?);
            let (ds, du) = (idx("(1 2)(4 5)")?, idx("(1 2 3)(4 5 6)")?);
            let words = ["e", "u", "u^2", "s", "us", "u^2s"];
            let cap = ["e", "U", "U^2", "S", "US", "U^2S"];
            let (g, m) = if name == "double_s3" {
                (SubgroupSpec::from_words(&x, &[du, ds], &labels(&["U", "S"]), &cap)?, SubgroupSpec::from_words(&x, &[u, s], &labels(&["u", "s"]), &words)?)
            } else {
                (SubgroupSpec::from_words(&x, &[u, s], &labels(&["u", "s"]), &words)?, SubgroupSpec::from_words(&x, &[du, ds], &labels(&["U", "S"]), &cap)?)
            };
            Factorization::derive(name, x, g, m)
        },
        _ => Err(CoreError::UnknownCatalog(name.to_string())),
    }
}
