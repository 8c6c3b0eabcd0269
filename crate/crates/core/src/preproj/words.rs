//! Canonical words and the textual syntax for elements.
//!
//! A canonical word is a degree-0 root (`a` or an S-basis element) followed
//! by alternating generators `f b_j` and `e`; S-letters sit in the slot
//! after each `f` and at the root only, every other S-action having been
//! absorbed to the left. Text uses juxtaposition for products, e.g.
//! `efst + seft - 2/3*tefs`.

use super::{Gen, GradedAlgebra, Node, PiElement, PreprojError, Root};
use crate::exactfield::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalWord {
    pub root: Root,
    pub gens: Vec<Gen>,
}

impl CanonicalWord {
    pub fn degree(&self) -> usize {
        self.gens.len()
    }

    /// `e`/`f` strictly alternate, `e` only after S-side letters and `f`
    /// only after R-side ones, and all S-indices are below `n`.
    pub fn is_valid(&self, n: usize) -> bool {
        let mut right_is_r = match self.root {
            Root::A => true,
            Root::B(i) => {
                if i >= n {
                    return false;
                }
                false
            }
        };
        for g in &self.gens {
            match g {
                Gen::F(j) if right_is_r && *j < n => right_is_r = false,
                Gen::E if !right_is_r => right_is_r = true,
                _ => return false,
            }
        }
        true
    }
}

impl<F: Field> GradedAlgebra<F> {
    /// The canonical word of basis element `idx` of `Π_d`.
    pub fn word(&self, d: usize, idx: usize) -> Result<CanonicalWord, PreprojError> {
        self.check_degree(d)?;
        let mut gens = Vec::with_capacity(d);
        let (mut level, mut i) = (d, idx);
        loop {
            match self.levels[level].basis[i].node {
                Node::Root(root) => {
                    gens.reverse();
                    return Ok(CanonicalWord { root, gens });
                }
                Node::Child { parent, gen } => {
                    gens.push(gen);
                    level -= 1;
                    i = parent;
                }
            }
        }
    }

    /// Evaluate a canonical word as an element.
    pub fn eval_word(&self, w: &CanonicalWord) -> Result<PiElement<F>, PreprojError> {
        if !w.is_valid(self.rank_s()) {
            return Err(PreprojError::IllFormed(format!("{w:?}")));
        }
        self.check_degree(w.degree())?;
        let f = self.field();
        let mut cur = match w.root {
            Root::A => vec![(0, f.one())],
            Root::B(i) => vec![(i + 1, f.one())],
        };
        for (k, g) in w.gens.iter().enumerate() {
            cur = self.op_right_gen(k, &cur, *g);
        }
        self.element(w.degree(), cur)
    }

    /// Text form of a canonical word; the root `a` and S-letters named `1`
    /// are left out when a generator follows them.
    pub fn word_name(&self, w: &CanonicalWord) -> String {
        let names = self.pair.algebra().names();
        let mut s = String::new();
        match w.root {
            Root::A if w.gens.is_empty() => s.push('a'),
            Root::A => {}
            Root::B(i) if names[i] == "1" && !w.gens.is_empty() => {}
            Root::B(i) => s.push_str(&names[i]),
        }
        for g in &w.gens {
            match g {
                Gen::F(j) => {
                    s.push('f');
                    if names[*j] != "1" {
                        s.push_str(&names[*j]);
                    }
                }
                Gen::E => s.push('e'),
            }
        }
        s
    }

    pub fn basis_name(&self, d: usize, idx: usize) -> Result<String, PreprojError> {
        Ok(self.word_name(&self.word(d, idx)?))
    }

    /// Format as a sum of basis words with coefficients, sorted by word.
    pub fn format_element(&self, x: &PiElement<F>) -> String {
        let f = self.field();
        let mut terms: Vec<(String, String)> = x
            .coeffs()
            .iter()
            .map(|(w, c)| (self.basis_name(x.degree(), *w).expect("element degree is in range"), f.format(c)))
            .collect();
        if terms.is_empty() {
            return "0".into();
        }
        terms.sort();
        let mut out = String::new();
        for (k, (word, coef)) in terms.iter().enumerate() {
            let (negative, mag) = match coef.strip_prefix('-') {
                Some(m) if is_plain_number(m) => (true, m.to_string()),
                _ => (false, coef.clone()),
            };
            out.push_str(match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            });
            if mag != "1" {
                if is_plain_number(&mag) {
                    out.push_str(&mag);
                } else {
                    out.push('(');
                    out.push_str(&mag);
                    out.push(')');
                }
                out.push('*');
            }
            out.push_str(word);
        }
        out
    }

    /// Parse a sum of products of letters: `a`, `b` (= 1_S), `e`, `f` and
    /// the S-basis names (longest match first), each term optionally
    /// preceded by a coefficient (`2`, `-1/3*`, `(u+1)*`).
    pub fn parse_element(&self, text: &str) -> Result<PiElement<F>, PreprojError> {
        let ill = || PreprojError::IllFormed(text.to_string());
        let f = self.field();
        let mut total: Option<PiElement<F>> = None;
        for (negative, term) in split_terms(text).ok_or_else(ill)? {
            let (coef, word) = split_coefficient(term).ok_or_else(ill)?;
            let mut c = match coef {
                Some(s) => f.parse(s).map_err(|_| ill())?,
                None => f.one(),
            };
            if negative {
                c = f.neg(&c);
            }
            let x = self.scale(&c, &self.parse_word(word)?);
            total = Some(match total {
                None => x,
                Some(t) => self.add(&t, &x).map_err(|_| ill())?,
            });
        }
        total.ok_or_else(ill)
    }

    fn parse_word(&self, word: &str) -> Result<PiElement<F>, PreprojError> {
        let names = self.pair.algebra().names();
        let mut letters: Vec<(&str, Option<usize>)> = vec![("a", None), ("b", None), ("e", None), ("f", None)];
        letters.extend(names.iter().enumerate().map(|(i, n)| (n.as_str(), Some(i))));
        letters.sort_by_key(|(s, _)| std::cmp::Reverse(s.len()));
        let mut rest = word;
        let mut factors = Vec::new();
        let mut degree = 0;
        while !rest.is_empty() {
            let (name, idx) =
                letters.iter().find(|(s, _)| rest.starts_with(s)).ok_or_else(|| PreprojError::UnknownLetter(rest.to_string()))?;
            let x = match (*name, idx) {
                (_, Some(i)) => PiElement::from_parts(0, vec![(i + 1, self.field().one())]),
                ("a", None) => self.idem_r(),
                ("b", None) => self.idem_s(),
                ("e", None) => self.gen_e(),
                _ => self.gen_f(),
            };
            degree += x.degree();
            self.check_degree(degree)?;
            factors.push(x);
            rest = &rest[name.len()..];
        }
        if factors.is_empty() {
            return Err(PreprojError::IllFormed(word.to_string()));
        }
        self.product(&factors)
    }
}

fn is_plain_number(s: &str) -> bool {
    let mut parts = s.splitn(2, '/');
    let digits = |p: Option<&str>| p.is_some_and(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()));
    let first = parts.next();
    let second = parts.next();
    digits(first) && (second.is_none() || digits(second))
}

/// Split at top-level `+`/`-` into signed terms.
fn split_terms(text: &str) -> Option<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let t = text[start..i].trim();
                if !t.is_empty() {
                    out.push((negative, t));
                } else if i > 0 && !text[..i].trim().is_empty() {
                    return None;
                }
                negative = c == '-';
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    let t = text[start..].trim();
    if t.is_empty() || depth != 0 {
        return None;
    }
    out.push((negative, t));
    Some(out)
}

/// Separate a leading coefficient from the word; spaces inside the word are
/// not allowed.
fn split_coefficient(term: &str) -> Option<(Option<&str>, &str)> {
    fn finish<'a>(coef: &'a str, rest: &'a str) -> Option<(Option<&'a str>, &'a str)> {
        let rest = rest.trim_start();
        let rest = rest.strip_prefix('*').unwrap_or(rest).trim_start();
        (!rest.is_empty() && !rest.contains(char::is_whitespace)).then_some((Some(coef), rest))
    }
    if let Some(inner) = term.strip_prefix('(') {
        let mut depth = 1;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return finish(&inner[..i], &inner[i + 1..]);
                    }
                }
                _ => {}
            }
        }
        return None;
    }
    let end = term.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(term.len());
    if end == 0 || end == term.len() {
        // no coefficient, or a bare word such as `1`
        return (!term.contains(char::is_whitespace)).then_some((None, term));
    }
    finish(&term[..end], &term[end..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rationals;
    use crate::frobalg::catalog;

    fn g(name: &str, d: usize) -> GradedAlgebra<Rationals> {
        GradedAlgebra::build(&catalog(&Rationals, name).unwrap().into_pair(name).unwrap(), d)
    }

    #[test]
    fn basic_words() {
        let b = g("bikwad", 4);
        assert!(b.parse_element("fe").unwrap().is_zero());
        assert!(b.parse_element("es").unwrap().is_zero());
        let a = b.parse_element("a").unwrap();
        assert_eq!(b.multiply(&a, &a).unwrap(), a);
        assert_eq!(b.format_element(&a), "a");
        assert!(matches!(b.parse_element("fx"), Err(PreprojError::UnknownLetter(_))));
        assert!(matches!(b.parse_element("fefef"), Err(PreprojError::DegreeOutOfRange { .. })));
        assert!(matches!(b.parse_element("e + se f"), Err(PreprojError::IllFormed(_))));
        assert!(matches!(b.parse_element("e + ef"), Err(PreprojError::IllFormed(_))));
    }

    #[test]
    fn basis_names_round_trip() {
        for name in ["bikwad", "split4", "t4"] {
            let alg = g(name, 4);
            for d in 0..=4 {
                for w in 0..alg.dim(d).unwrap() {
                    let x = alg.basis_element(d, w).unwrap();
                    let text = alg.format_element(&x);
                    assert_eq!(alg.parse_element(&text).unwrap(), x, "{name}: {text}");
                    assert_eq!(alg.eval_word(&alg.word(d, w).unwrap()).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn sums_round_trip() {
        let b = g("bikwad", 3);
        let x = b.parse_element("2*sef - 1/3 efs + fse").unwrap();
        let text = b.format_element(&x);
        assert_eq!(b.parse_element(&text).unwrap(), x);
        let y = b.parse_element("-sef").unwrap();
        assert_eq!(b.format_element(&y), "-sef");
    }

    #[test]
    fn canonical_word_validity() {
        let w = CanonicalWord { root: Root::B(1), gens: vec![Gen::E, Gen::F(2), Gen::E] };
        assert!(w.is_valid(4));
        assert!(!CanonicalWord { root: Root::B(1), gens: vec![Gen::F(0)] }.is_valid(4));
        assert!(!CanonicalWord { root: Root::A, gens: vec![Gen::E] }.is_valid(4));
        assert!(!CanonicalWord { root: Root::A, gens: vec![Gen::F(0), Gen::F(1)] }.is_valid(4));
    }
}
