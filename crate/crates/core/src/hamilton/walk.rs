use std::fmt;

/// One step of a walk: a generator name and a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub name: String,
    pub inverse: bool,
}

impl Token {
    pub fn new(name: &str, inverse: bool) -> Self {
        Token { name: name.to_string(), inverse }
    }

    pub fn pos(name: &str) -> Self {
        Token::new(name, false)
    }

    pub fn neg(name: &str) -> Self {
        Token::new(name, true)
    }

    pub fn inverted(&self) -> Self {
        Token { name: self.name.clone(), inverse: !self.inverse }
    }

    /// Parse `a`, `a+` or `a-`. The name itself is not validated here.
    pub fn parse(text: &str) -> Option<Token> {
        let (name, inverse) = if let Some(n) = text.strip_suffix('-') {
            (n, true)
        } else if let Some(n) = text.strip_suffix('+') {
            (n, false)
        } else {
            (text, false)
        };
        (!name.is_empty()).then(|| Token::new(name, inverse))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.inverse {
            f.write_str("-")?;
        }
        Ok(())
    }
}

/// A sequence of signed generator tokens.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Walk {
    pub tokens: Vec<Token>,
}

impl Walk {
    pub fn new(tokens: Vec<Token>) -> Self {
        Walk { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Whitespace-separated tokens.
    pub fn parse(text: &str) -> Option<Walk> {
        text.split_whitespace().map(Token::parse).collect::<Option<Vec<_>>>().map(Walk::new)
    }

    /// `(s_m^-1, ..., s_1^-1)`.
    pub fn reverse_inverse(&self) -> Walk {
        Walk::new(self.tokens.iter().rev().map(Token::inverted).collect())
    }

    /// `self` repeated `k` times.
    pub fn repeat(&self, k: usize) -> Walk {
        let mut tokens = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            tokens.extend(self.tokens.iter().cloned());
        }
        Walk::new(tokens)
    }

    pub fn concat(&self, other: &Walk) -> Walk {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        Walk::new(tokens)
    }

    /// Rotate so the walk starts with token `k`.
    pub fn rotate(&self, k: usize) -> Walk {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut tokens = self.tokens[k..].to_vec();
        tokens.extend_from_slice(&self.tokens[..k]);
        Walk::new(tokens)
    }

    /// Short form with runs collapsed, e.g. `(a^4, b-, a)` or `(a)^5` when
    /// the whole walk is a power of a shorter one.
    pub fn compact(&self) -> String {
        let n = self.len();
        if n == 0 {
            return "()".to_string();
        }
        let period = (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|i| self.tokens[i] == self.tokens[i - p]))
            .unwrap_or(n);
        let body = Walk::new(self.tokens[..period].to_vec()).runs();
        if period < n {
            format!("({body})^{}", n / period)
        } else {
            format!("({body})")
        }
    }

    fn runs(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.len() {
            let mut j = i + 1;
            while j < self.len() && self.tokens[j] == self.tokens[i] {
                j += 1;
            }
            let t = &self.tokens[i];
            let k = j - i;
            parts.push(match (k, t.inverse) {
                (1, false) => t.name.clone(),
                (1, true) => format!("{}^-1", t.name),
                (k, false) => format!("{}^{k}", t.name),
                (k, true) => format!("{}^-{k}", t.name),
            });
            i = j;
        }
        parts.join(", ")
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromIterator<Token> for Walk {
    fn from_iter<I: IntoIterator<Item = Token>>(iter: I) -> Self {
        Walk::new(iter.into_iter().collect())
    }
}

/// Walk notation with concatenation, powers and reverse-inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkExpr {
    Atom(Token),
    Concat(Vec<WalkExpr>),
    Power(Box<WalkExpr>, usize),
    /// `(s_1, ..., s_m) -> (s_m^-1, ..., s_1^-1)`.
    ReverseInverse(Box<WalkExpr>),
}

impl WalkExpr {
    pub fn atom(name: &str) -> Self {
        WalkExpr::Atom(Token::pos(name))
    }

    pub fn atom_inv(name: &str) -> Self {
        WalkExpr::Atom(Token::neg(name))
    }

    /// `s^k` for `k >= 0`, or `(s^-1)^|k|` for `k < 0`.
    pub fn gen_pow(name: &str, k: i64) -> Self {
        let atom = if k < 0 { Self::atom_inv(name) } else { Self::atom(name) };
        WalkExpr::Power(Box::new(atom), k.unsigned_abs() as usize)
    }

    pub fn seq(parts: Vec<WalkExpr>) -> Self {
        WalkExpr::Concat(parts)
    }

    pub fn pow(self, k: usize) -> Self {
        WalkExpr::Power(Box::new(self), k)
    }

    pub fn reverse_inverse(self) -> Self {
        WalkExpr::ReverseInverse(Box::new(self))
    }

    pub fn from_walk(w: &Walk) -> Self {
        WalkExpr::Concat(w.tokens.iter().cloned().map(WalkExpr::Atom).collect())
    }

    pub fn flatten(&self) -> Walk {
        let mut out = Vec::new();
        self.push(&mut out);
        Walk::new(out)
    }

    fn push(&self, out: &mut Vec<Token>) {
        match self {
            WalkExpr::Atom(t) => out.push(t.clone()),
            WalkExpr::Concat(parts) => parts.iter().for_each(|p| p.push(out)),
            WalkExpr::Power(e, k) => {
                let start = out.len();
                if *k > 0 {
                    e.push(out);
                }
                let chunk = out[start..].to_vec();
                for _ in 1..*k {
                    out.extend(chunk.iter().cloned());
                }
            }
            WalkExpr::ReverseInverse(e) => out.extend(e.flatten().reverse_inverse().tokens),
        }
    }
}

/// Flatten a walk expression.
pub fn flatten(expr: &WalkExpr) -> Walk {
    expr.flatten()
}
