//! Printing of qubit states, Pauli decomposition of operators and a parser
//! for Pauli-string expressions such as `5*xye+xyz`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::operator::{QuantumOperator, Storage};
use crate::sparse::CsrMatrix;
use crate::state::{RegisterShape, StateVector};
use crate::C64;

pub const PRINTV_THRESHOLD: f64 = 1e-4;
pub const DECOMPOSE_THRESHOLD: f64 = 1e-14;

/// Formats like C's `%.{sig}g`.
pub fn format_g(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -4 || exp >= sig as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn format_amplitude(a: C64, threshold: f64) -> String {
    let re = if a.re.abs() < threshold { 0.0 } else { a.re };
    let im = if a.im.abs() < threshold { 0.0 } else { a.im };
    if im == 0.0 && re > 0.0 {
        return format_g(re, 5);
    }
    if im == 0.0 {
        return format!("({})", format_g(re, 5));
    }
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("({}{sign}{}i)", format_g(re, 5), format_g(im.abs(), 5))
}

/// Sum of `amp|bits>` terms with `|amp| >= threshold`, most significant
/// qubit first. Amplitudes that are not positive reals are parenthesized.
pub fn printv(v: &StateVector, threshold: f64) -> Result<String> {
    let shape = v.shape();
    if shape.dim() != 2 {
        return Err(Error::Unsupported(format!("printv handles qubits only, got d = {}", shape.dim())));
    }
    let n = shape.n_qudits();
    let mut out = String::new();
    for (i, a) in v.amplitudes().iter().enumerate() {
        if a.norm() < threshold {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&format_amplitude(*a, threshold));
        out.push('|');
        for k in (0..n).rev() {
            out.push(if (i >> k) & 1 == 1 { '1' } else { '0' });
        }
        out.push('>');
    }
    if out.is_empty() {
        out.push('0');
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    /// Bits `(x, z)` of the symplectic representation.
    fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    /// Letter used by [`decompose`]; the identity prints as `1`.
    pub fn symbol(self) -> char {
        match self {
            PauliLetter::I => '1',
            PauliLetter::X => 'x',
            PauliLetter::Y => 'y',
            PauliLetter::Z => 'z',
        }
    }
}

/// `coefficient * letters[0] (x) letters[1] (x) ...`, most significant qubit
/// first.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: C64,
    pub letters: Vec<PauliLetter>,
}

impl PauliTerm {
    pub fn new(coefficient: C64, letters: Vec<PauliLetter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("Pauli word must be nonempty".into()));
        }
        Ok(PauliTerm { coefficient, letters })
    }

    fn masks(&self) -> (usize, usize) {
        let n = self.letters.len();
        let mut xm = 0;
        let mut zm = 0;
        for (i, l) in self.letters.iter().enumerate() {
            let bit = 1 << (n - 1 - i);
            let (x, z) = l.bits();
            if x {
                xm |= bit;
            }
            if z {
                zm |= bit;
            }
        }
        (xm, zm)
    }

    pub fn word(&self) -> String {
        self.letters.iter().map(|l| l.symbol()).collect()
    }
}

/// Pauli words `W` satisfy `W[c ^ xm, c] = i^{#y} (-1)^{popcount(c & zm)}`
/// and vanish elsewhere.
fn word_entry(xm: usize, zm: usize, col: usize) -> C64 {
    let ny = (xm & zm).count_ones();
    let base = match ny % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    if (col & zm).count_ones() % 2 == 1 {
        -base
    } else {
        base
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliPolynomial {
    terms: Vec<PauliTerm>,
}

impl PauliPolynomial {
    /// Merges repeated words, keeping the first occurrence's position.
    pub fn new(terms: Vec<PauliTerm>) -> Result<Self> {
        let mut merged: Vec<PauliTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(first) = merged.first() {
                if first.letters.len() != t.letters.len() {
                    return Err(Error::InvalidArgument(format!(
                        "Pauli words of unequal length {} and {}",
                        first.letters.len(),
                        t.letters.len()
                    )));
                }
            }
            match merged.iter_mut().find(|m| m.letters == t.letters) {
                Some(m) => m.coefficient += t.coefficient,
                None => merged.push(t),
            }
        }
        Ok(PauliPolynomial { terms: merged })
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn n_qubits(&self) -> Option<usize> {
        self.terms.first().map(|t| t.letters.len())
    }

    /// Coefficients `Tr(m W) / 2^N` for every word with magnitude at least
    /// `threshold`, sorted by word with `1 < x < y < z`.
    pub fn from_operator(m: &QuantumOperator, threshold: f64) -> Result<Self> {
        let side = m.side();
        if !side.is_power_of_two() || side < 2 {
            return Err(Error::NotPowerOf { len: side, dim: 2 });
        }
        let n = side.trailing_zeros() as usize;
        let dense = m.dense()?;
        let mut terms = Vec::new();
        let mut f = vec![C64::new(0.0, 0.0); side];
        for xm in 0..side {
            // f(c) = m[c, c ^ xm]; then sum_c f(c) (-1)^{c . zm} for all zm at once
            for (c, fc) in f.iter_mut().enumerate() {
                *fc = dense[(c, c ^ xm)];
            }
            walsh_hadamard(&mut f);
            for (zm, s) in f.iter().enumerate() {
                let coeff = word_entry(xm, zm, 0) * s / side as f64;
                if coeff.norm() < threshold {
                    continue;
                }
                let letters =
                    (0..n).rev().map(|k| PauliLetter::from_bits((xm >> k) & 1 == 1, (zm >> k) & 1 == 1)).collect();
                terms.push(PauliTerm { coefficient: coeff, letters });
            }
        }
        terms.sort_by(|a, b| a.letters.cmp(&b.letters));
        Ok(PauliPolynomial { terms })
    }

    pub fn to_operator(&self, storage: Storage) -> Result<QuantumOperator> {
        let n = self.n_qubits().ok_or_else(|| Error::InvalidArgument("empty Pauli polynomial".into()))?;
        let shape = RegisterShape::qubits(n)?;
        let side = shape.total_dim();
        let mut triplets = Vec::with_capacity(side * self.terms.len());
        for t in &self.terms {
            let (xm, zm) = t.masks();
            for col in 0..side {
                triplets.push((col ^ xm, col, t.coefficient * word_entry(xm, zm, col)));
            }
        }
        let m = CsrMatrix::from_triplets(side, side, triplets);
        QuantumOperator::from_sparse(m, shape)?.to_storage(storage)
    }

    /// Plain (`2*xy1-z1z`) or LaTeX rendering.
    pub fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for t in &self.terms {
            let c = t.coefficient;
            let (neg, body) = if c.im == 0.0 {
                (c.re < 0.0, format_real_coeff(c.re.abs()))
            } else {
                (false, Some(format!("({}{}{}i)", c.re, if c.im < 0.0 { "-" } else { "+" }, c.im.abs())))
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if latex {
                if let Some(b) = body {
                    out.push_str(&b);
                    out.push(' ');
                }
                out.push_str(&latex_word(&t.letters));
            } else {
                if let Some(b) = body {
                    out.push_str(&b);
                    out.push('*');
                }
                out.push_str(&t.word());
            }
        }
        out
    }
}

fn format_real_coeff(v: f64) -> Option<String> {
    if v == 1.0 {
        None
    } else {
        Some(format!("{v}"))
    }
}

fn latex_word(letters: &[PauliLetter]) -> String {
    let n = letters.len();
    let mut s = String::new();
    for (i, l) in letters.iter().enumerate() {
        if *l != PauliLetter::I {
            let _ = write!(s, "\\sigma_{}^{{({})}}", l.symbol(), n - i);
        }
    }
    if s.is_empty() {
        s.push_str("\\mathbb{1}");
    }
    s
}

fn walsh_hadamard(f: &mut [C64]) {
    let n = f.len();
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for i in start..start + h {
                let (a, b) = (f[i], f[i + h]);
                f[i] = a + b;
                f[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Pauli decomposition of an operator on qubits; the identity letter is `1`.
pub fn decompose(m: &QuantumOperator, latex: bool, threshold: f64) -> Result<String> {
    Ok(PauliPolynomial::from_operator(m, threshold)?.render(latex))
}

/// Rewrites [`decompose`] output into [`paulistr`] syntax by replacing the
/// identity letter `1` with `e` inside words, leaving coefficients alone.
pub fn identity_letters_to_e(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut depth = 0usize;
    let mut term = String::new();
    let flush = |term: &mut String, out: &mut String| {
        match term.rfind('*') {
            Some(star) => {
                out.push_str(&term[..=star]);
                out.push_str(&term[star + 1..].replace('1', "e"));
            }
            None => out.push_str(&term.replace('1', "e")),
        }
        term.clear();
    };
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 => {
                flush(&mut term, &mut out);
                out.push(ch);
                continue;
            }
            _ => {}
        }
        term.push(ch);
    }
    flush(&mut term, &mut out);
    out
}

/// Parses `[sign] [number '*'] word (('+' | '-') [number '*'] word)*` with
/// letters `x`, `y`, `z` and `e` (identity). Whitespace is ignored.
pub fn parse_pauli(s: &str) -> Result<PauliPolynomial> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut first = true;
    while !p.at_end() {
        let mut sign = 1.0;
        match p.peek() {
            Some(b'+') => {
                p.pos += 1;
            }
            Some(b'-') => {
                p.pos += 1;
                sign = -1.0;
            }
            Some(_) if first => {}
            Some(c) => return Err(p.error(format!("expected '+' or '-', found {}", show(c)))),
            None => unreachable!(),
        }
        first = false;
        p.skip_ws();
        let coeff = if p.starts_number() {
            let v = p.number()?;
            p.skip_ws();
            p.expect(b'*')?;
            p.skip_ws();
            v
        } else {
            1.0
        };
        let start = p.pos;
        let letters = p.word()?;
        if let Some(prev) = terms.first().map(|t: &PauliTerm| t.letters.len()) {
            if prev != letters.len() {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("word has {} letters, expected {prev}", letters.len()),
                });
            }
        }
        terms.push(PauliTerm { coefficient: C64::new(sign * coeff, 0.0), letters });
        p.skip_ws();
    }
    PauliPolynomial::new(terms)
}

/// Operator of a Pauli-string expression, dense.
pub fn paulistr(s: &str) -> Result<QuantumOperator> {
    parse_pauli(s)?.to_operator(Storage::Dense)
}

fn show(c: u8) -> String {
    if c.is_ascii_graphic() {
        format!("'{}'", c as char)
    } else {
        format!("byte 0x{c:02x}")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected '{}', found {}", c as char, show(x)))),
            None => Err(self.error(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn starts_number(&self) -> bool {
        let digit_or_dot = |c: Option<u8>| c.is_some_and(|c| c.is_ascii_digit() || c == b'.');
        match self.peek() {
            Some(b'+') | Some(b'-') => digit_or_dot(self.peek_at(1)),
            c => digit_or_dot(c),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        let mut digits = 0;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            digits += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
                digits += 1;
            }
        }
        if digits == 0 {
            return Err(Error::Parse { pos: start, msg: "number has no digits".into() });
        }
        // an exponent only when digits follow; otherwise 'e' is left alone
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            let sign_len = usize::from(matches!(self.peek_at(1), Some(b'+') | Some(b'-')));
            if self.peek_at(1 + sign_len).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1 + sign_len;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii number");
        let v: f64 = text.parse().map_err(|_| Error::Parse { pos: start, msg: format!("bad number '{text}'") })?;
        if !v.is_finite() {
            return Err(Error::Parse { pos: start, msg: format!("number '{text}' is not finite") });
        }
        Ok(v)
    }

    fn word(&mut self) -> Result<Vec<PauliLetter>> {
        let mut letters = Vec::new();
        loop {
            let letter = match self.peek() {
                Some(b'x') => PauliLetter::X,
                Some(b'y') => PauliLetter::Y,
                Some(b'z') => PauliLetter::Z,
                Some(b'e') => PauliLetter::I,
                _ => break,
            };
            letters.push(letter);
            self.pos += 1;
            let save = self.pos;
            self.skip_ws();
            if !matches!(self.peek(), Some(b'x' | b'y' | b'z' | b'e')) {
                self.pos = save;
                break;
            }
        }
        if letters.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a Pauli letter, found {}", show(c))),
                None => self.error("expected a Pauli letter, found end of input".into()),
            });
        }
        Ok(letters)
    }
}
