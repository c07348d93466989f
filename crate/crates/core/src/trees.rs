//! Calkin-Wilf and Stern-Brocot trees and their parity automata.
//!
//! Rows are produced by a depth-first walk to the row's depth, so a row
//! streams in left-to-right order with memory proportional to its depth.
//! The symbol-only automata work on [`Parity`] values and never touch
//! rational arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::parity::Parity;
use crate::rational::Rational;
use crate::DEFAULT_ELEMENT_CAP;

/// Depth at which row walks are split into independent subtrees for
/// parallel classification (at most 2^8 tasks per row).
const SPLIT_DEPTH: u32 = 8;

fn check_cap(requested: u128, cap: u64) -> Result<()> {
    if requested > cap as u128 {
        return Err(Error::CapExceeded { requested, cap });
    }
    Ok(())
}

fn row_index(what: &'static str, r: i64, min: i64) -> Result<u32> {
    if r < min {
        return Err(Error::OutOfRange { what, min, got: r });
    }
    // anything deeper is far past every cap
    Ok(r.min(127) as u32)
}

/// A string of parity symbols `o`, `n`, `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParityString(Vec<Parity>);

impl ParityString {
    pub fn new(symbols: Vec<Parity>) -> Self {
        ParityString(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Parity] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Parity> {
        self.0
    }

    /// `pattern` repeated `times` times.
    pub fn repeat(pattern: &str, times: usize) -> Result<Self> {
        let unit: ParityString = pattern.parse()?;
        Ok(ParityString(unit.0.repeat(times)))
    }

    fn push_str(&mut self, other: &ParityString) {
        self.0.extend_from_slice(&other.0);
    }
}

impl fmt::Display for ParityString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|p| p.symbol()).collect();
        f.write_str(&s)
    }
}

impl FromStr for ParityString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| Parity::from_symbol(c).ok_or_else(|| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(ParityString)
    }
}

impl From<Vec<Parity>> for ParityString {
    fn from(v: Vec<Parity>) -> Self {
        ParityString(v)
    }
}

// ---------------------------------------------------------------------------
// Calkin-Wilf

/// Children `m/(m+n)` and `(m+n)/n` of a positive rational `m/n`.
pub fn cw_children(q: &Rational) -> Result<(Rational, Rational)> {
    if !q.is_positive() {
        return Err(Error::NotPositive(q.to_string()));
    }
    let (m, n) = (q.numer(), q.denom());
    let s = m + n;
    Ok((
        Rational::from_reduced(m.clone(), s.clone()),
        Rational::from_reduced(s, n.clone()),
    ))
}

// (m, n) with gcd 1; both children of a reduced pair are reduced.
type Pair = (BigInt, BigInt);

fn cw_split((m, n): Pair) -> (Pair, Pair) {
    let s = &m + &n;
    ((m, s.clone()), (s, n))
}

fn into_rational((m, n): Pair) -> Rational {
    Rational::from_reduced(m, n)
}

/// Streams the nodes at one depth of a binary tree in left-to-right order.
struct DepthWalk<N, F> {
    target: u32,
    stack: Vec<(N, u32)>,
    split: F,
}

impl<N, F: FnMut(N) -> (N, N)> DepthWalk<N, F> {
    fn new(root: N, root_depth: u32, target: u32, split: F) -> Self {
        DepthWalk {
            target,
            stack: vec![(root, root_depth)],
            split,
        }
    }
}

impl<N, F: FnMut(N) -> (N, N)> Iterator for DepthWalk<N, F> {
    type Item = N;

    fn next(&mut self) -> Option<N> {
        while let Some((node, depth)) = self.stack.pop() {
            if depth == self.target {
                return Some(node);
            }
            let (l, r) = (self.split)(node);
            self.stack.push((r, depth + 1));
            self.stack.push((l, depth + 1));
        }
        None
    }
}

fn cw_root() -> Pair {
    (BigInt::one(), BigInt::one())
}

fn cw_row_iter(r: u32) -> impl Iterator<Item = Rational> {
    DepthWalk::new(cw_root(), 1, r, cw_split).map(into_rational)
}

/// Row `r` (root row is 1) of the Calkin-Wilf tree, `2^(r-1)` entries.
pub fn cw_row(r: i64) -> Result<Vec<Rational>> {
    cw_row_capped(r, DEFAULT_ELEMENT_CAP)
}

pub fn cw_row_capped(r: i64, cap: u64) -> Result<Vec<Rational>> {
    let r = row_index("row", r, 1)?;
    check_cap(1u128 << (r - 1), cap)?;
    Ok(cw_row_iter(r).collect())
}

/// Breadth-first Calkin-Wilf enumeration of the positive rationals: 1/1,
/// 1/2, 2/1, 1/3, 3/2, 2/3, 3/1, ...
pub struct CwSequence {
    row: u32,
    walk: Box<dyn Iterator<Item = Rational> + Send>,
}

impl CwSequence {
    pub fn new() -> Self {
        CwSequence {
            row: 1,
            walk: Box::new(cw_row_iter(1)),
        }
    }
}

impl Default for CwSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CwSequence {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        loop {
            if let Some(q) = self.walk.next() {
                return Some(q);
            }
            self.row += 1;
            self.walk = Box::new(cw_row_iter(self.row));
        }
    }
}

/// The first `count` elements of the Calkin-Wilf sequence, lazily.
pub fn cw_sequence(count: u64) -> impl Iterator<Item = Rational> {
    CwSequence::new().take(count as usize)
}

/// Parities of row `r` computed by rational arithmetic, one subtree per
/// task. Order matches [`cw_row`].
pub fn cw_row_classes(r: i64, exec: Execution) -> Result<Vec<Parity>> {
    cw_row_classes_capped(r, exec, DEFAULT_ELEMENT_CAP)
}

pub fn cw_row_classes_capped(r: i64, exec: Execution, cap: u64) -> Result<Vec<Parity>> {
    let r = row_index("row", r, 1)?;
    check_cap(1u128 << (r - 1), cap)?;
    let split = (r - 1).min(SPLIT_DEPTH) + 1;
    let tops: Vec<Pair> = DepthWalk::new(cw_root(), 1, split, cw_split).collect();
    let parts = exec.map(&tops, |top| {
        DepthWalk::new(top.clone(), split, r, cw_split)
            .map(|pair| into_rational(pair).parity())
            .collect::<Vec<_>>()
    });
    Ok(parts.concat())
}

/// Parities of a node's two Calkin-Wilf children, given the node's parity.
pub fn parity_transfer(p: Parity) -> (Parity, Parity) {
    match p {
        Parity::Even => (Parity::Even, Parity::Odd),
        Parity::Odd => (Parity::None, Parity::Even),
        Parity::None => (Parity::Odd, Parity::None),
    }
}

fn cw_expand(row: &[Parity]) -> Vec<Parity> {
    let mut next = Vec::with_capacity(row.len() * 2);
    for &p in row {
        let (l, r) = parity_transfer(p);
        next.push(l);
        next.push(r);
    }
    next
}

/// Parity string of Calkin-Wilf row `r`, from the transfer automaton alone.
pub fn cw_parity_row(r: i64) -> Result<ParityString> {
    cw_parity_row_capped(r, DEFAULT_ELEMENT_CAP)
}

pub fn cw_parity_row_capped(r: i64, cap: u64) -> Result<ParityString> {
    let r = row_index("row", r, 1)?;
    check_cap(1u128 << (r - 1), cap)?;
    let mut row = vec![Parity::Odd];
    for _ in 1..r {
        row = cw_expand(&row);
    }
    Ok(ParityString(row))
}

/// Exponent `k` in the row pattern: `(one)^k o` for odd rows, `ne(one)^k`
/// for even rows. Starts at 0; odd to even row maps `k -> 2k`, even to odd
/// maps `k -> 2k + 1`, so consecutive odd rows go `k -> 4k + 1`.
pub fn cw_row_exponent(r: i64) -> Result<u128> {
    let r = row_index("row", r, 1)?;
    if r > 120 {
        return Err(Error::CapExceeded {
            requested: u128::MAX,
            cap: u64::MAX,
        });
    }
    let mut k: u128 = 0;
    for row in 1..r {
        k = if row % 2 == 1 { 2 * k } else { 2 * k + 1 };
    }
    Ok(k)
}

/// Closed-form parity pattern of Calkin-Wilf row `r`.
pub fn cw_parity_row_closed_form(r: i64) -> Result<ParityString> {
    let k = cw_row_exponent(r)?;
    check_cap(1u128 << (r.min(127) - 1), DEFAULT_ELEMENT_CAP)?;
    let k = k as usize;
    if r % 2 == 1 {
        let mut s = ParityString::repeat("one", k)?;
        s.0.push(Parity::Odd);
        Ok(s)
    } else {
        let mut s: ParityString = "ne".parse()?;
        s.push_str(&ParityString::repeat("one", k)?);
        Ok(s)
    }
}

/// Parity of the `n`-th element (1-based) of the Calkin-Wilf sequence.
pub fn cw_parity_at(n: u64) -> Result<Parity> {
    match n % 3 {
        _ if n == 0 => Err(Error::OutOfRange {
            what: "position",
            min: 1,
            got: 0,
        }),
        1 => Ok(Parity::Odd),
        2 => Ok(Parity::None),
        _ => Ok(Parity::Even),
    }
}

/// Symbol-only Calkin-Wilf parity sequence, row after row.
#[derive(Debug, Clone)]
pub struct CwParityStream {
    row: Vec<Parity>,
    pos: usize,
}

impl CwParityStream {
    pub fn new() -> Self {
        CwParityStream {
            row: vec![Parity::Odd],
            pos: 0,
        }
    }

    /// Appends the next `count` symbols to `out`, a row slice at a time.
    pub fn fill(&mut self, out: &mut Vec<Parity>, mut count: usize) {
        out.reserve(count);
        while count > 0 {
            if self.pos == self.row.len() {
                self.advance();
            }
            let take = count.min(self.row.len() - self.pos);
            out.extend_from_slice(&self.row[self.pos..self.pos + take]);
            self.pos += take;
            count -= take;
        }
    }

    fn advance(&mut self) {
        self.row = cw_expand(&self.row);
        self.pos = 0;
    }
}

impl Default for CwParityStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CwParityStream {
    type Item = Parity;

    fn next(&mut self) -> Option<Parity> {
        if self.pos == self.row.len() {
            self.advance();
        }
        self.pos += 1;
        Some(self.row[self.pos - 1])
    }
}

/// The first `count` symbols of the Calkin-Wilf parity sequence.
pub fn cw_parity_prefix(count: usize) -> ParityString {
    let mut out = Vec::new();
    CwParityStream::new().fill(&mut out, count);
    ParityString(out)
}

// ---------------------------------------------------------------------------
// Stern-Brocot

/// An entry of a Stern-Brocot level: a rational, or the right boundary
/// `1/0` standing for +∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SbValue {
    Finite(Rational),
    Infinity,
}

impl SbValue {
    fn parts(&self) -> (BigInt, BigInt) {
        match self {
            SbValue::Finite(q) => (q.numer().clone(), q.denom().clone()),
            SbValue::Infinity => (BigInt::one(), BigInt::zero()),
        }
    }

    pub fn parity(&self) -> Parity {
        match self {
            SbValue::Finite(q) => q.parity(),
            SbValue::Infinity => Parity::None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            SbValue::Finite(q) => Some(q),
            SbValue::Infinity => None,
        }
    }
}

impl From<Rational> for SbValue {
    fn from(q: Rational) -> Self {
        SbValue::Finite(q)
    }
}

impl PartialOrd for SbValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SbValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SbValue::Infinity, SbValue::Infinity) => Ordering::Equal,
            (SbValue::Infinity, _) => Ordering::Greater,
            (_, SbValue::Infinity) => Ordering::Less,
            (SbValue::Finite(a), SbValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for SbValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SbValue::Finite(q) => q.fmt(f),
            SbValue::Infinity => f.write_str("1/0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbEntry {
    pub value: SbValue,
    pub parity: Parity,
}

impl SbEntry {
    fn new(value: SbValue) -> Self {
        let parity = value.parity();
        SbEntry { value, parity }
    }
}

/// `(m1+m2)/(n1+n2)`, reduced. Either side may be the `1/0` boundary.
pub fn mediant(a: &SbValue, b: &SbValue) -> Result<Rational> {
    if *a == SbValue::Infinity && *b == SbValue::Infinity {
        return Err(Error::BothBoundaries);
    }
    let (m1, n1) = a.parts();
    let (m2, n2) = b.parts();
    Rational::new(m1 + m2, n1 + n2)
}

/// Parity of the mediant of two rationals of distinct parities: always the
/// third parity.
pub fn mediant_parity(a: Parity, b: Parity) -> Result<Parity> {
    use Parity::*;
    match (a, b) {
        (Even, Odd) | (Odd, Even) => Ok(None),
        (Odd, None) | (None, Odd) => Ok(Even),
        (None, Even) | (Even, None) => Ok(Odd),
        _ => Err(Error::EqualParities(a.symbol())),
    }
}

/// Level `k` of the Stern-Brocot construction including both boundaries:
/// `2^k + 1` strictly increasing entries from `0/1` to `1/0`.
pub fn sb_level(k: i64) -> Result<Vec<SbEntry>> {
    sb_level_capped(k, DEFAULT_ELEMENT_CAP)
}

pub fn sb_level_capped(k: i64, cap: u64) -> Result<Vec<SbEntry>> {
    let k = row_index("level", k, 0)?;
    check_cap((1u128 << k) + 1, cap)?;
    let mut level = vec![
        SbEntry::new(SbValue::Finite(Rational::zero())),
        SbEntry::new(SbValue::Infinity),
    ];
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * 2 - 1);
        for pair in level.windows(2) {
            next.push(pair[0].clone());
            let m = mediant(&pair[0].value, &pair[1].value)?;
            next.push(SbEntry::new(SbValue::Finite(m)));
        }
        next.push(level[level.len() - 1].clone());
        level = next;
    }
    Ok(level)
}

/// Parity string of Stern-Brocot level `k` (boundaries included), from the
/// mediant-parity rule alone.
pub fn sb_parity_level(k: i64) -> Result<ParityString> {
    sb_parity_level_capped(k, DEFAULT_ELEMENT_CAP)
}

pub fn sb_parity_level_capped(k: i64, cap: u64) -> Result<ParityString> {
    let k = row_index("level", k, 1)?;
    check_cap((1u128 << k) + 1, cap)?;
    let mut level = vec![Parity::Even, Parity::None];
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * 2 - 1);
        for pair in level.windows(2) {
            next.push(pair[0]);
            next.push(mediant_parity(pair[0], pair[1])?);
        }
        next.push(Parity::None);
        level = next;
    }
    Ok(ParityString(level))
}

/// Repetition count in the level pattern: `(2^k + 1)/3` for odd `k`
/// (pattern `(eon)^K`), `(2^k - 1)/3` for even `k` (pattern `e(noe)^K n`).
pub fn sb_level_exponent(k: i64) -> Result<u128> {
    let k = row_index("level", k, 1)?;
    if k > 120 {
        return Err(Error::CapExceeded {
            requested: u128::MAX,
            cap: u64::MAX,
        });
    }
    let p = 1u128 << k;
    Ok(if k % 2 == 1 { (p + 1) / 3 } else { (p - 1) / 3 })
}

pub fn sb_parity_level_closed_form(k: i64) -> Result<ParityString> {
    let big_k = sb_level_exponent(k)?;
    check_cap((1u128 << k) + 1, DEFAULT_ELEMENT_CAP)?;
    let big_k = big_k as usize;
    if k % 2 == 1 {
        ParityString::repeat("eon", big_k)
    } else {
        let mut s: ParityString = "e".parse()?;
        s.push_str(&ParityString::repeat("noe", big_k)?);
        s.0.push(Parity::None);
        Ok(s)
    }
}

// Stern-Brocot tree node: the value and its two bounding fractions, all as
// raw (num, den) pairs so that 1/0 can appear as a bound.
type SbNode = (Pair, Pair, Pair);

fn sb_root() -> SbNode {
    let zero = (BigInt::zero(), BigInt::one());
    let inf = (BigInt::one(), BigInt::zero());
    ((BigInt::one(), BigInt::one()), zero, inf)
}

fn raw_mediant(a: &Pair, b: &Pair) -> Pair {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn sb_split((v, lo, hi): SbNode) -> (SbNode, SbNode) {
    let left = (raw_mediant(&lo, &v), lo, v.clone());
    let right = (raw_mediant(&v, &hi), v, hi);
    (left, right)
}

fn sb_row_iter(r: u32) -> impl Iterator<Item = Rational> {
    DepthWalk::new(sb_root(), 1, r, sb_split).map(|(v, _, _)| into_rational(v))
}

/// Row `r` of the Stern-Brocot tree: the `2^(r-1)` mediants first inserted
/// at level `r`, in increasing order.
pub fn sb_row(r: i64) -> Result<Vec<Rational>> {
    let r = row_index("row", r, 1)?;
    check_cap(1u128 << (r - 1), DEFAULT_ELEMENT_CAP)?;
    Ok(sb_row_iter(r).collect())
}

/// Stern-Brocot enumeration of the positive rationals, row by row:
/// 1/1, 1/2, 2/1, 1/3, 2/3, 3/2, 3/1, ...
pub struct SbSequence {
    row: u32,
    walk: Box<dyn Iterator<Item = Rational> + Send>,
}

impl SbSequence {
    pub fn new() -> Self {
        SbSequence {
            row: 1,
            walk: Box::new(sb_row_iter(1)),
        }
    }
}

impl Default for SbSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for SbSequence {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        loop {
            if let Some(q) = self.walk.next() {
                return Some(q);
            }
            self.row += 1;
            self.walk = Box::new(sb_row_iter(self.row));
        }
    }
}

pub fn sb_row_classes(r: i64, exec: Execution) -> Result<Vec<Parity>> {
    sb_row_classes_capped(r, exec, DEFAULT_ELEMENT_CAP)
}

pub fn sb_row_classes_capped(r: i64, exec: Execution, cap: u64) -> Result<Vec<Parity>> {
    let r = row_index("row", r, 1)?;
    check_cap(1u128 << (r - 1), cap)?;
    let split = (r - 1).min(SPLIT_DEPTH) + 1;
    let tops: Vec<SbNode> = DepthWalk::new(sb_root(), 1, split, sb_split).collect();
    let parts = exec.map(&tops, |top| {
        DepthWalk::new(top.clone(), split, r, sb_split)
            .map(|(v, _, _)| into_rational(v).parity())
            .collect::<Vec<_>>()
    });
    Ok(parts.concat())
}
