//! Standard matrix form of a type-C seaweed: compositions, admissible
//! locations, the Chevalley basis, the commutator bracket and evaluation of
//! one-forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SeaweedError, Side};

pub type Rational = BigRational;

/// `p/q` in lowest terms, with `q` always shown.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Ordered positive parts summing to at most `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialComposition {
    parts: Vec<usize>,
    n: usize,
}

impl PartialComposition {
    pub fn new(parts: Vec<usize>, n: usize, side: Side) -> Result<Self> {
        if n == 0 {
            return Err(SeaweedError::ZeroRank);
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(SeaweedError::ZeroPart { side });
        }
        let sum: usize = parts.iter().sum();
        if sum > n {
            return Err(SeaweedError::CompositionOverflow { side, sum, n });
        }
        Ok(Self { parts, n })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Palindromic expansion `a1|...|am|2(n-sum)|am|...|a1`, zero middle dropped.
    pub fn expand(&self) -> FullComposition {
        let middle = 2 * (self.n - self.total());
        let mut parts = self.parts.clone();
        if middle > 0 {
            parts.push(middle);
        }
        parts.extend(self.parts.iter().rev());
        FullComposition { parts }
    }
}

impl fmt::Display for PartialComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let joined: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&joined.join("|"))
    }
}

/// A composition of `2n`; here always the palindromic expansion of a
/// partial composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FullComposition {
    parts: Vec<usize>,
}

impl FullComposition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_palindrome(&self) -> bool {
        self.parts.iter().eq(self.parts.iter().rev())
    }

    /// Inclusive 1-based vertex ranges of the blocks.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut start = 1;
        self.parts
            .iter()
            .map(|&p| {
                let block = (start, start + p - 1);
                start += p;
                block
            })
            .collect()
    }

    /// `ids[v]` is the block holding vertex `v` (index 0 unused).
    pub fn block_ids(&self) -> Vec<usize> {
        let mut ids = vec![usize::MAX; self.total() + 1];
        for (b, (lo, hi)) in self.blocks().into_iter().enumerate() {
            for id in &mut ids[lo..=hi] {
                *id = b;
            }
        }
        ids
    }
}

impl fmt::Display for FullComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joined: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&joined.join("|"))
    }
}

/// A 1-based matrix position. Ordered row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixLocation {
    pub row: usize,
    pub col: usize,
}

impl MatrixLocation {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Reflection across the antidiagonal of a `2n x 2n` matrix.
    pub fn mirror(self, n: usize) -> Self {
        Self::new(2 * n + 1 - self.col, 2 * n + 1 - self.row)
    }

    /// Relative sign between an entry and its mirror in `sp(2n)`: `-1` in the
    /// diagonal quadrants, `+1` in the off-diagonal ones.
    pub fn mirror_sign(self, n: usize) -> i64 {
        if (self.row <= n) == (self.col <= n) {
            -1
        } else {
            1
        }
    }

    pub fn is_on_or_above_antidiagonal(self, n: usize) -> bool {
        self.row + self.col <= 2 * n + 1
    }
}

impl fmt::Display for MatrixLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// `p^C_{2n} top / bottom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeaweedDescriptor {
    n: usize,
    top: PartialComposition,
    bottom: PartialComposition,
}

impl SeaweedDescriptor {
    pub fn new(n: usize, top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        Ok(Self {
            n,
            top: PartialComposition::new(top, n, Side::Top)?,
            bottom: PartialComposition::new(bottom, n, Side::Bottom)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix_size(&self) -> usize {
        2 * self.n
    }

    pub fn top(&self) -> &PartialComposition {
        &self.top
    }

    pub fn bottom(&self) -> &PartialComposition {
        &self.bottom
    }

    pub fn full_compositions(&self) -> (FullComposition, FullComposition) {
        (self.top.expand(), self.bottom.expand())
    }

    pub fn admissibility(&self) -> Admissibility {
        let (top, bottom) = self.full_compositions();
        Admissibility {
            n: self.n,
            top_ids: top.block_ids(),
            bottom_ids: bottom.block_ids(),
        }
    }

    pub fn is_admissible(&self, loc: MatrixLocation) -> bool {
        self.admissibility().contains(loc)
    }

    /// All admissible locations, row-major.
    pub fn admissible_locations(&self) -> Vec<MatrixLocation> {
        let adm = self.admissibility();
        let size = self.matrix_size();
        (1..=size)
            .flat_map(|row| (1..=size).map(move |col| MatrixLocation::new(row, col)))
            .filter(|&loc| adm.contains(loc))
            .collect()
    }

    /// One element per admissible representative with `row + col <= 2n + 1`,
    /// row-major.
    pub fn chevalley_basis(&self) -> Vec<BasisElement> {
        let n = self.n;
        self.admissible_locations()
            .into_iter()
            .filter(|loc| loc.is_on_or_above_antidiagonal(n))
            .map(|loc| BasisElement::for_representative(loc, n))
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.chevalley_basis().len()
    }
}

impl fmt::Display for SeaweedDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{} {} / {}", 2 * self.n, self.top, self.bottom)
    }
}

impl FromStr for SeaweedDescriptor {
    type Err = SeaweedError;

    /// Grammar: `"C" INT WS comp WS? "/" WS? comp` with
    /// `comp := "-" | INT ("|" INT)*`; the leading integer is `2n`.
    fn from_str(text: &str) -> Result<Self> {
        let mut p = Parser { src: text, pos: 0 };
        p.skip_ws();
        p.expect('C')?;
        let size_at = p.pos;
        let size = p.integer()?;
        if size == 0 || size % 2 != 0 {
            return Err(SeaweedError::Parse {
                position: size_at,
                message: format!("matrix size {size} must be positive and even"),
            });
        }
        if p.skip_ws() == 0 {
            return Err(p.error("expected whitespace after matrix size"));
        }
        let top = p.composition()?;
        p.skip_ws();
        p.expect('/')?;
        p.skip_ws();
        let bottom = p.composition()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Self::new(size / 2, top, bottom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn error(&self, message: &str) -> SeaweedError {
        SeaweedError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) -> usize {
        let start = self.pos;
        while let Some(c) = self.peek().filter(|c| c.is_whitespace()) {
            self.pos += c.len_utf8();
        }
        self.pos - start
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            _ => Err(self.error(&format!("expected '{want}'"))),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| SeaweedError::Parse {
            position: start,
            message: "integer out of range".to_string(),
        })
    }

    fn composition(&mut self) -> Result<Vec<usize>> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut parts = vec![self.integer()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.integer()?);
        }
        Ok(parts)
    }
}

/// Cached block membership for fast admissibility tests.
#[derive(Clone, Debug)]
pub struct Admissibility {
    n: usize,
    top_ids: Vec<usize>,
    bottom_ids: Vec<usize>,
}

impl Admissibility {
    /// Lower triangle of a top block, or upper triangle of a bottom block.
    pub fn contains(&self, loc: MatrixLocation) -> bool {
        let size = 2 * self.n;
        let MatrixLocation { row, col } = loc;
        if row == 0 || col == 0 || row > size || col > size {
            return false;
        }
        (row >= col && self.top_ids[row] == self.top_ids[col])
            || (row <= col && self.bottom_ids[row] == self.bottom_ids[col])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    /// `e_{i,j} - e_{2n-j+1,2n-i+1}`, `i, j <= n`.
    UpperLeftPair,
    /// `e_{i,j}`, `i + j = 2n + 1`.
    Antidiagonal,
    /// `e_{i,j} + e_{2n-j+1,2n-i+1}` with `i + j < 2n + 1` off the diagonal quadrants.
    CrossPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub location: MatrixLocation,
}

impl BasisElement {
    fn for_representative(location: MatrixLocation, n: usize) -> Self {
        let kind = if location.row + location.col == 2 * n + 1 {
            BasisKind::Antidiagonal
        } else if location.row <= n && location.col <= n {
            BasisKind::UpperLeftPair
        } else {
            BasisKind::CrossPair
        };
        Self { kind, location }
    }

    pub fn sign(&self) -> Option<i64> {
        match self.kind {
            BasisKind::UpperLeftPair => Some(-1),
            BasisKind::Antidiagonal => None,
            BasisKind::CrossPair => Some(1),
        }
    }

    /// Matrix entries of the element: the representative with coefficient 1
    /// and, unless on the antidiagonal, its mirror with the relative sign.
    pub fn terms(&self, n: usize) -> Vec<(MatrixLocation, i64)> {
        let mut terms = vec![(self.location, 1)];
        if let Some(sign) = self.sign() {
            terms.push((self.location.mirror(n), sign));
        }
        terms
    }

    pub fn to_element(&self, n: usize) -> AlgebraElement {
        AlgebraElement::from_terms(
            n,
            self.terms(n).into_iter().map(|(loc, c)| (loc, Rational::from_integer(c.into()))),
        )
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let MatrixLocation { row, col } = self.location;
        match self.kind {
            BasisKind::UpperLeftPair => write!(f, "e[{row},{col}]-e'"),
            BasisKind::Antidiagonal => write!(f, "e[{row},{col}]"),
            BasisKind::CrossPair => write!(f, "e[{row},{col}]+e'"),
        }
    }
}

/// A sparse `2n x 2n` matrix with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    n: usize,
    entries: BTreeMap<MatrixLocation, Rational>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Sums repeated locations; drops zero entries.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MatrixLocation, Rational)>) -> Self {
        let mut x = Self::zero(n);
        for (loc, c) in terms {
            x.add_entry(loc, c);
        }
        x
    }

    /// `sum_a coeffs[a] * basis[a]`.
    pub fn from_basis_combination(n: usize, basis: &[BasisElement], coeffs: &[Rational]) -> Self {
        let mut x = Self::zero(n);
        for (b, c) in basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (loc, s) in b.terms(n) {
                x.add_entry(loc, c * Rational::from_integer(s.into()));
            }
        }
        x
    }

    fn add_entry(&mut self, loc: MatrixLocation, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(loc).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&loc);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, loc: MatrixLocation) -> Rational {
        self.entries.get(&loc).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MatrixLocation, &Rational)> {
        self.entries.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.n, self.entries.iter().map(|(l, v)| (*l, v * c)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut x = self.clone();
        for (loc, c) in &other.entries {
            x.add_entry(*loc, c.clone());
        }
        Ok(x)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(SeaweedError::SizeMismatch {
                left: 2 * self.n,
                right: 2 * other.n,
            });
        }
        Ok(())
    }

    /// Matrix commutator `xy - yx`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        fn by_row(m: &AlgebraElement) -> HashMap<usize, Vec<(usize, &Rational)>> {
            let mut rows: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
            for (loc, c) in &m.entries {
                rows.entry(loc.row).or_default().push((loc.col, c));
            }
            rows
        }
        let other_rows = by_row(other);
        let self_rows = by_row(self);
        let mut out = Self::zero(self.n);
        for (loc, a) in &self.entries {
            for (l, b) in other_rows.get(&loc.col).into_iter().flatten() {
                out.add_entry(MatrixLocation::new(loc.row, *l), a * *b);
            }
        }
        for (loc, b) in &other.entries {
            for (l, a) in self_rows.get(&loc.col).into_iter().flatten() {
                out.add_entry(MatrixLocation::new(loc.row, *l), -(b * *a));
            }
        }
        Ok(out)
    }

    /// Supported on admissible locations and symmetric across the antidiagonal
    /// with the `sp(2n)` sign rule.
    pub fn is_member_of(&self, d: &SeaweedDescriptor) -> bool {
        if self.n != d.n() {
            return false;
        }
        let adm = d.admissibility();
        self.entries.iter().all(|(loc, c)| {
            let mirror = loc.mirror(self.n);
            let expected = c * Rational::from_integer(loc.mirror_sign(self.n).into());
            adm.contains(*loc) && (mirror == *loc || self.get(mirror) == expected)
        })
    }
}

impl fmt::Display for AlgebraElement {
    /// `e[8,8]-e[9,9]`, `2*e[1,1]+1/2*e[1,2]`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (k, (loc, c)) in self.entries.iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "e[{},{}]", loc.row, loc.col)?;
        }
        Ok(())
    }
}

/// A linear functional `sum c_{i,j} e*_{i,j}` over admissible locations with
/// `i + j <= 2n + 1`, evaluated entrywise on matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneForm {
    n: usize,
    terms: BTreeMap<MatrixLocation, Rational>,
}

impl OneForm {
    pub fn new(
        d: &SeaweedDescriptor,
        terms: impl IntoIterator<Item = (MatrixLocation, Rational)>,
    ) -> Result<Self> {
        let n = d.n();
        let adm = d.admissibility();
        let mut map = BTreeMap::new();
        for (loc, c) in terms {
            if loc.row == 0 || loc.col == 0 || loc.row > 2 * n || loc.col > 2 * n {
                return Err(SeaweedError::OutOfRange {
                    row: loc.row,
                    col: loc.col,
                    size: 2 * n,
                });
            }
            if !loc.is_on_or_above_antidiagonal(n) {
                return Err(SeaweedError::BelowAntidiagonal {
                    row: loc.row,
                    col: loc.col,
                    bound: 2 * n + 1,
                });
            }
            if !adm.contains(loc) {
                return Err(SeaweedError::NotAdmissible {
                    row: loc.row,
                    col: loc.col,
                });
            }
            let slot: &mut Rational = map.entry(loc).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { n, terms: map })
    }

    /// Every location with coefficient 1.
    pub fn from_locations(
        d: &SeaweedDescriptor,
        locations: impl IntoIterator<Item = MatrixLocation>,
    ) -> Result<Self> {
        Self::new(d, locations.into_iter().map(|l| (l, Rational::one())))
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn locations(&self) -> Vec<MatrixLocation> {
        self.terms.keys().copied().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MatrixLocation, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, loc: MatrixLocation) -> Rational {
        self.terms.get(&loc).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, x: &AlgebraElement) -> Rational {
        debug_assert_eq!(self.n, x.n(), "form and element live in different sp(2n)");
        self.terms
            .iter()
            .map(|(loc, c)| c * x.get(*loc))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Integer coefficients after clearing denominators, with the common
    /// scale factor. Rank and kernel computations are scale-invariant.
    pub fn integer_terms(&self) -> (Vec<(MatrixLocation, BigInt)>, BigInt) {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(loc, c)| (*loc, (c * Rational::from_integer(lcm.clone())).to_integer()))
            .collect();
        (terms, lcm)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (loc, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "e*[{},{}]", loc.row, loc.col)?;
        }
        Ok(())
    }
}

/// Every partial composition of `n` (parts summing to at most `n`), in
/// lexicographic order; the empty one comes first.
pub fn partial_compositions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, room: usize, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        for p in 1..=room {
            prefix.push(p);
            extend(prefix, room - p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, &mut out);
    out
}

/// All seaweeds of rank `n`, ordered by top then bottom composition.
pub fn all_descriptors(n: usize) -> impl Iterator<Item = SeaweedDescriptor> {
    let comps = partial_compositions(n);
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = comps
        .iter()
        .flat_map(|a| comps.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    pairs
        .into_iter()
        .map(move |(a, b)| SeaweedDescriptor::new(n, a, b).expect("parts bounded by n"))
}
