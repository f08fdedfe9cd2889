use std::fmt;

/// Freely reduced word; letter `+(i+1)` is generator `i`, `-(i+1)` its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<i32>);

fn letter(g: usize, inverse: bool) -> i32 {
    let l = i32::try_from(g + 1).expect("generator index fits in i32");
    if inverse {
        -l
    } else {
        l
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![letter(g, false)])
    }

    pub fn inverse_generator(g: usize) -> Self {
        Word(vec![letter(g, true)])
    }

    /// Builds a word from signed letters, freely reducing it.
    pub fn from_letters(letters: &[i32]) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "letter 0 is not a generator");
        let mut w = Word(Vec::with_capacity(letters.len()));
        for &l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: i32) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Removes inverse pairs at the two ends.
    pub fn cyclically_reduced(&self) -> Word {
        let v = &self.0;
        let (mut i, mut j) = (0, v.len());
        while j > i + 1 && v[i] == -v[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(v[i..j].to_vec())
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotated(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::identity();
        }
        let k = k % n;
        let letters: Vec<i32> = self.0[k..].iter().chain(&self.0[..k]).copied().collect();
        Word::from_letters(&letters)
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        let l = letter(g, false);
        self.0
            .iter()
            .map(|&x| if x == l { 1 } else if x == -l { -1 } else { 0 })
            .sum()
    }

    /// Number of letters equal to `g` or `g⁻¹`.
    pub fn occurrences(&self, g: usize) -> usize {
        let l = letter(g, false);
        self.0.iter().filter(|&&x| x == l || x == -l).count()
    }

    /// Replaces each generator `g` by `images[g]` (inverses by inverse images).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            w = w.mul(&if l > 0 { img.clone() } else { img.inverse() });
        }
        w
    }

    /// Column index in a coset table: `2g` for `g`, `2g+1` for `g⁻¹`.
    pub(crate) fn columns(&self) -> Vec<usize> {
        self.0.iter().map(|&l| column(l)).collect()
    }

    /// Parses whitespace- or juxtaposition-separated tokens `a`, `a^-1`,
    /// `a^k`; `1` is the identity. Errors carry a byte offset.
    pub fn parse(gens: &[String], s: &str) -> Result<Word, (usize, String)> {
        let mut names: Vec<(usize, &str)> = gens.iter().map(String::as_str).enumerate().collect();
        names.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut w = Word::identity();
        while pos < s.len() {
            let c = bytes[pos];
            if c.is_ascii_whitespace() || c == b'*' {
                pos += 1;
                continue;
            }
            if c == b'1' && !bytes.get(pos + 1).is_some_and(|b| b.is_ascii_alphanumeric()) {
                pos += 1;
                continue;
            }
            let rest = &s[pos..];
            let Some(&(g, name)) = names.iter().find(|(_, n)| rest.starts_with(n)) else {
                let token = rest.split(|c: char| c.is_whitespace() || c == '^').next().unwrap_or(rest);
                return Err((pos, format!("unknown generator `{token}`")));
            };
            pos += name.len();
            let mut exp: i64 = 1;
            if s[pos..].starts_with('^') {
                let start = pos + 1;
                let mut end = start;
                if bytes.get(end) == Some(&b'-') {
                    end += 1;
                }
                while bytes.get(end).is_some_and(u8::is_ascii_digit) {
                    end += 1;
                }
                exp = s[start..end]
                    .parse()
                    .map_err(|_| (start, "expected an integer exponent".to_string()))?;
                pos = end;
            }
            w = w.mul(&Word::generator(g).pow(exp));
        }
        Ok(w)
    }

    pub fn format(&self, gens: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == l {
                k += 1;
            }
            let name = &gens[l.unsigned_abs() as usize - 1];
            let e = if l > 0 { k as i64 } else { -(k as i64) };
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i += k;
        }
        parts.join(" ")
    }
}

pub(crate) fn column(l: i32) -> usize {
    let g = l.unsigned_abs() as usize - 1;
    if l > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

pub(crate) fn inverse_column(x: usize) -> usize {
    x ^ 1
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
