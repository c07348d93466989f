//! Orderings of ℕ and ℚ and the prefix densities of parity classes under
//! them.
//!
//! Counting is exact: classes are tallied as integers and ratios are
//! [`Rational`]s. Rational orderings are generated sequentially and
//! classified in batches through [`Execution`]; tree orderings classify
//! whole rows subtree-parallel. Tallying walks the classes in order, so
//! every strategy yields the same report.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::parity::Parity;
use crate::rational::Rational;
use crate::trees::{cw_row_classes_capped, sb_row_classes_capped};
use crate::DEFAULT_ELEMENT_CAP;

const BATCH: usize = 1 << 16;

/// Rationals in `(0, 1)` by increasing denominator, then numerator, keeping
/// only reduced fractions: 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...
#[derive(Debug, Clone)]
pub struct ListOrder {
    m: u64,
    n: u64,
}

impl ListOrder {
    pub fn new() -> Self {
        ListOrder { m: 0, n: 2 }
    }
}

impl Default for ListOrder {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for ListOrder {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        loop {
            self.m += 1;
            if self.m == self.n {
                self.n += 1;
                self.m = 1;
            }
            if self.m.gcd(&self.n) == 1 {
                return Some(Rational::from_reduced(self.m.into(), self.n.into()));
            }
        }
    }
}

fn check_min(what: &'static str, v: i64, min: i64) -> Result<u64> {
    if v < min {
        return Err(Error::OutOfRange { what, min, got: v });
    }
    Ok(v as u64)
}

fn totient(n: u64) -> u64 {
    let (mut n, mut phi, mut p) = (n, n, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Prefix lengths at which [`ListOrder`] completes each denominator
/// `2..=n_max`; the last entry is `|list_order(n_max)|`.
pub fn list_order_block_ends(n_max: i64) -> Result<Vec<u64>> {
    let n_max = check_min("n_max", n_max, 2)?;
    let mut total = 0;
    Ok((2..=n_max)
        .map(|d| {
            total += totient(d);
            total
        })
        .collect())
}

/// All reduced `m/n` in `(0, 1)` with `2 <= n <= n_max`, grouped by
/// denominator.
pub fn list_order(n_max: i64) -> Result<Vec<Rational>> {
    let ends = list_order_block_ends(n_max)?;
    let len = *ends.last().unwrap_or(&0);
    Ok(ListOrder::new().take(len as usize).collect())
}

/// Farey sequence of order `n` restricted to the open interval `(0, 1)`,
/// ascending.
pub fn farey(n: i64) -> Result<Vec<Rational>> {
    let n = check_min("Farey order", n, 1)?;
    Ok(FareyIter::new(n).collect())
}

/// Next-term recurrence over `F_n`, skipping the endpoints.
#[derive(Debug, Clone)]
struct FareyIter {
    n: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl FareyIter {
    fn new(n: u64) -> Self {
        FareyIter {
            n,
            a: 0,
            b: 1,
            c: 1,
            d: n,
        }
    }
}

impl Iterator for FareyIter {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        if self.c >= self.d {
            return None;
        }
        let out = Rational::from_reduced(self.c.into(), self.d.into());
        let k = (self.n + self.b) / self.d;
        let (c, d) = (k * self.c - self.a, k * self.d - self.b);
        self.a = self.c;
        self.b = self.d;
        self.c = c;
        self.d = d;
        Some(out)
    }
}

/// Natural numbers with each odd followed by two evens:
/// `2n-1, 4n-2, 4n` for `n = 1, 2, ...`.
#[derive(Debug, Clone, Default)]
pub struct FReorder {
    block: u64,
    slot: u8,
}

impl FReorder {
    pub fn new() -> Self {
        FReorder { block: 1, slot: 0 }
    }
}

impl Iterator for FReorder {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let n = self.block;
        let v = match self.slot {
            0 => 2 * n - 1,
            1 => 4 * n - 2,
            _ => 4 * n,
        };
        self.slot += 1;
        if self.slot == 3 {
            self.slot = 0;
            self.block += 1;
        }
        Some(v)
    }
}

pub fn f_reorder(count: u64) -> Vec<u64> {
    FReorder::new().take(count as usize).collect()
}

/// Natural numbers in groups: group `g` is the odd number `2g-1` followed
/// by the `g` smallest even numbers not yet used.
#[derive(Debug, Clone)]
pub struct HReorder {
    group: u64,
    left_in_group: u64,
    next_even: u64,
}

impl HReorder {
    pub fn new() -> Self {
        HReorder {
            group: 0,
            left_in_group: 0,
            next_even: 2,
        }
    }
}

impl Default for HReorder {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for HReorder {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.left_in_group == 0 {
            self.group += 1;
            self.left_in_group = self.group;
            return Some(2 * self.group - 1);
        }
        self.left_in_group -= 1;
        let v = self.next_even;
        self.next_even += 2;
        Some(v)
    }
}

pub fn h_reorder(count: u64) -> Vec<u64> {
    HReorder::new().take(count as usize).collect()
}

/// Extends an enumeration of the positive rationals to all of ℚ:
/// `0, q1, -q1, q2, -q2, ...`.
#[derive(Debug, Clone)]
pub struct FullQ<I> {
    base: I,
    started: bool,
    pending: Option<Rational>,
}

impl<I: Iterator<Item = Rational>> FullQ<I> {
    pub fn new(base: I) -> Self {
        FullQ {
            base,
            started: false,
            pending: None,
        }
    }
}

impl<I: Iterator<Item = Rational>> Iterator for FullQ<I> {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        if !self.started {
            self.started = true;
            return Some(Rational::zero());
        }
        if let Some(neg) = self.pending.take() {
            return Some(neg);
        }
        let q = self.base.next()?;
        self.pending = Some(-&q);
        Some(q)
    }
}

pub fn full_q_order<I>(base: I, count: u64) -> Vec<Rational>
where
    I: IntoIterator<Item = Rational>,
{
    FullQ::new(base.into_iter()).take(count as usize).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    NaturalN,
    FReorder,
    HReorder,
    ListOrder,
    Farey,
    Cw,
    Sb,
    CwFullQ,
    SbFullQ,
}

impl OrderingKind {
    pub const ALL: [OrderingKind; 9] = [
        OrderingKind::NaturalN,
        OrderingKind::FReorder,
        OrderingKind::HReorder,
        OrderingKind::ListOrder,
        OrderingKind::Farey,
        OrderingKind::Cw,
        OrderingKind::Sb,
        OrderingKind::CwFullQ,
        OrderingKind::SbFullQ,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            OrderingKind::NaturalN => "natural-n",
            OrderingKind::FReorder => "f-reorder",
            OrderingKind::HReorder => "h-reorder",
            OrderingKind::ListOrder => "list-order",
            OrderingKind::Farey => "farey",
            OrderingKind::Cw => "cw",
            OrderingKind::Sb => "sb",
            OrderingKind::CwFullQ => "cw-fullq",
            OrderingKind::SbFullQ => "sb-fullq",
        }
    }

    /// Orderings of ℕ, where only the even and odd classes occur.
    pub fn is_integer(self) -> bool {
        matches!(
            self,
            OrderingKind::NaturalN | OrderingKind::FReorder | OrderingKind::HReorder
        )
    }
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for OrderingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        OrderingKind::ALL
            .into_iter()
            .find(|k| k.tag() == lower)
            .ok_or_else(|| Error::UnknownOrdering(s.to_string()))
    }
}

/// Per-class tallies, indexed by [`Parity::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassCounts([u64; 3]);

impl ClassCounts {
    pub fn get(&self, p: Parity) -> u64 {
        self.0[p.index()]
    }

    pub fn even(&self) -> u64 {
        self.get(Parity::Even)
    }

    pub fn odd(&self) -> u64 {
        self.get(Parity::Odd)
    }

    pub fn none(&self) -> u64 {
        self.get(Parity::None)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add(&mut self, p: Parity) {
        self.0[p.index()] += 1;
    }

    pub fn merge(self, other: ClassCounts) -> ClassCounts {
        ClassCounts([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn tally(classes: &[Parity]) -> ClassCounts {
        let mut c = ClassCounts::default();
        for &p in classes {
            c.add(p);
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityRow {
    pub n: u64,
    pub counts: ClassCounts,
    /// `count / n` per class, in [`Parity::ALL`] order.
    pub ratios: [Rational; 3],
}

impl DensityRow {
    fn new(n: u64, counts: ClassCounts) -> Self {
        let ratio = |p| Rational::new(BigInt::from(counts.get(p)), BigInt::from(n)).unwrap();
        DensityRow {
            n,
            counts,
            ratios: [ratio(Parity::Even), ratio(Parity::Odd), ratio(Parity::None)],
        }
    }

    pub fn ratio(&self, p: Parity) -> &Rational {
        &self.ratios[p.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub ordering: OrderingKind,
    pub rows: Vec<DensityRow>,
}

/// Powers of two below `count`, then `count` itself.
pub fn default_checkpoints(count: u64) -> Vec<u64> {
    let mut v: Vec<u64> = std::iter::successors(Some(1u64), |x| x.checked_mul(2))
        .take_while(|&x| x < count)
        .collect();
    if count > 0 {
        v.push(count);
    }
    v
}

/// Smallest Farey order whose `(0, 1)` part has at least `count` terms.
fn farey_order_for(count: u64) -> u64 {
    let mut total = 0;
    let mut n = 1;
    while total < count {
        n += 1;
        total += totient(n);
    }
    n
}

fn emit_rational_batches<I, S>(iter: I, count: u64, exec: Execution, sink: &mut S)
where
    I: Iterator<Item = Rational>,
    S: FnMut(&[Parity]),
{
    let mut iter = iter.take(count as usize);
    loop {
        let batch: Vec<Rational> = iter.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return;
        }
        sink(&exec.map(&batch, Rational::parity));
    }
}

fn emit_integer_batches<I, S>(iter: I, count: u64, sink: &mut S)
where
    I: Iterator<Item = u64>,
    S: FnMut(&[Parity]),
{
    let mut iter = iter.take(count as usize);
    loop {
        let batch: Vec<Parity> = iter
            .by_ref()
            .take(BATCH)
            .map(|z| {
                if z % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            })
            .collect();
        if batch.is_empty() {
            return;
        }
        sink(&batch);
    }
}

fn emit_tree_rows<R, S>(row_classes: R, full_q: bool, count: u64, sink: &mut S) -> Result<()>
where
    R: Fn(i64) -> Result<Vec<Parity>>,
    S: FnMut(&[Parity]),
{
    let mut left = count;
    if full_q && left > 0 {
        sink(&[Parity::Even]);
        left -= 1;
    }
    let mut r = 1;
    while left > 0 {
        let mut classes = row_classes(r)?;
        if full_q {
            classes = classes.iter().flat_map(|&p| [p, p]).collect();
        }
        classes.truncate(left.min(usize::MAX as u64) as usize);
        left -= classes.len() as u64;
        sink(&classes);
        r += 1;
    }
    Ok(())
}

/// Streams the parity classes of the first `count` elements of an ordering
/// to `sink`, in order, in chunks.
pub fn for_each_class_chunk<S>(
    ordering: OrderingKind,
    count: u64,
    exec: Execution,
    cap: u64,
    mut sink: S,
) -> Result<()>
where
    S: FnMut(&[Parity]),
{
    if count > cap {
        return Err(Error::CapExceeded {
            requested: count as u128,
            cap,
        });
    }
    let cw = |r| cw_row_classes_capped(r, exec, cap);
    let sb = |r| sb_row_classes_capped(r, exec, cap);
    match ordering {
        OrderingKind::NaturalN => emit_integer_batches(1u64.., count, &mut sink),
        OrderingKind::FReorder => emit_integer_batches(FReorder::new(), count, &mut sink),
        OrderingKind::HReorder => emit_integer_batches(HReorder::new(), count, &mut sink),
        OrderingKind::ListOrder => emit_rational_batches(ListOrder::new(), count, exec, &mut sink),
        OrderingKind::Farey => {
            let order = farey_order_for(count);
            emit_rational_batches(FareyIter::new(order), count, exec, &mut sink)
        }
        OrderingKind::Cw => emit_tree_rows(cw, false, count, &mut sink)?,
        OrderingKind::Sb => emit_tree_rows(sb, false, count, &mut sink)?,
        OrderingKind::CwFullQ => emit_tree_rows(cw, true, count, &mut sink)?,
        OrderingKind::SbFullQ => emit_tree_rows(sb, true, count, &mut sink)?,
    }
    Ok(())
}

/// Calls `visit(n, counts)` after each of the first `count` elements.
pub fn scan_prefixes<V>(
    ordering: OrderingKind,
    count: u64,
    exec: Execution,
    mut visit: V,
) -> Result<()>
where
    V: FnMut(u64, &ClassCounts),
{
    let mut counts = ClassCounts::default();
    let mut n = 0;
    for_each_class_chunk(ordering, count, exec, DEFAULT_ELEMENT_CAP, |chunk| {
        for &p in chunk {
            counts.add(p);
            n += 1;
            visit(n, &counts);
        }
    })
}

/// Class counts and exact ratios at each checkpoint among the first `count`
/// elements of `ordering`.
pub fn density_report(
    ordering: OrderingKind,
    count: u64,
    checkpoints: &[u64],
) -> Result<DensityReport> {
    density_report_with(
        ordering,
        count,
        checkpoints,
        Execution::default(),
        DEFAULT_ELEMENT_CAP,
    )
}

pub fn density_report_with(
    ordering: OrderingKind,
    count: u64,
    checkpoints: &[u64],
    exec: Execution,
    cap: u64,
) -> Result<DensityReport> {
    if let Some(&bad) = checkpoints.iter().find(|&&c| c < 1 || c > count) {
        return Err(Error::BadCheckpoint {
            checkpoint: bad,
            count,
        });
    }
    let mut wanted = checkpoints.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    let mut rows = Vec::with_capacity(wanted.len());
    let mut next = wanted.iter().peekable();
    let mut counts = ClassCounts::default();
    let mut n = 0u64;
    for_each_class_chunk(ordering, count, exec, cap, |chunk| {
        let mut rest = chunk;
        while let Some(&&cp) = next.peek() {
            let need = (cp - n) as usize;
            if need > rest.len() {
                break;
            }
            counts = counts.merge(ClassCounts::tally(&rest[..need]));
            n = cp;
            rows.push(DensityRow::new(n, counts));
            rest = &rest[need..];
            next.next();
        }
        counts = counts.merge(ClassCounts::tally(rest));
        n += rest.len() as u64;
    })?;
    Ok(DensityReport { ordering, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: i64, n: i64) -> Rational {
        Rational::new(m, n).unwrap()
    }

    fn show(v: &[Rational]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn list_order_prefixes() {
        assert_eq!(show(&list_order(3).unwrap()), ["1/2", "1/3", "2/3"]);
        assert_eq!(
            show(&list_order(4).unwrap()),
            ["1/2", "1/3", "2/3", "1/4", "3/4"]
        );
        let eight = list_order(8).unwrap();
        assert_eq!(eight.len(), 21);
        assert_eq!(eight.last(), Some(&q(7, 8)));
        assert!(list_order(1).is_err());
        assert_eq!(list_order_block_ends(8).unwrap(), [1, 3, 5, 9, 11, 17, 21]);
    }

    #[test]
    fn farey_examples() {
        assert_eq!(show(&farey(3).unwrap()), ["1/3", "1/2", "2/3"]);
        assert_eq!(
            show(&farey(5).unwrap()),
            ["1/5", "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "4/5"]
        );
        assert!(farey(1).unwrap().is_empty());
        assert!(farey(0).is_err());
    }

    #[test]
    fn farey_matches_sorted_brute_force() {
        for n in 1..=40 {
            let mut brute = Vec::new();
            for d in 2..=n {
                for m in 1..d {
                    brute.push(q(m, d));
                }
            }
            brute.sort();
            brute.dedup();
            assert_eq!(farey(n).unwrap(), brute, "order {n}");
        }
    }

    #[test]
    fn reorders() {
        assert_eq!(f_reorder(6), [1, 2, 4, 3, 6, 8]);
        assert_eq!(&f_reorder(9)[6..], [5, 10, 12]);
        assert_eq!(h_reorder(6), [1, 2, 3, 4, 6, 5]);
        assert_eq!(h_reorder(10), [1, 2, 3, 4, 6, 5, 8, 10, 12, 7]);
        assert!(f_reorder(0).is_empty());
    }

    #[test]
    fn h_groups_even_count() {
        // after G full groups: G odds and G(G+1)/2 evens
        for g in 1..30u64 {
            let len = g + g * (g + 1) / 2;
            let evens = h_reorder(len).iter().filter(|&&z| z % 2 == 0).count() as u64;
            assert_eq!(evens, g * (g + 1) / 2);
        }
    }

    #[test]
    fn full_q() {
        let v = full_q_order(crate::trees::CwSequence::new(), 5);
        assert_eq!(show(&v), ["0/1", "1/1", "-1/1", "1/2", "-1/2"]);
        assert_eq!(
            full_q_order(crate::trees::CwSequence::new(), 1),
            [Rational::zero()]
        );
        assert!(full_q_order(Vec::new(), 3).len() == 1);
    }

    #[test]
    fn tags_parse() {
        for k in OrderingKind::ALL {
            assert_eq!(k.tag().parse::<OrderingKind>(), Ok(k));
        }
        assert_eq!(
            "natural-N".parse::<OrderingKind>(),
            Ok(OrderingKind::NaturalN)
        );
        assert_eq!(
            "CW-FullQ".parse::<OrderingKind>(),
            Ok(OrderingKind::CwFullQ)
        );
        assert!(matches!(
            "zigzag".parse::<OrderingKind>(),
            Err(Error::UnknownOrdering(_))
        ));
    }

    #[test]
    fn report_examples() {
        let r = density_report(OrderingKind::Cw, 6, &[3, 6]).unwrap();
        for row in &r.rows {
            for p in Parity::ALL {
                assert_eq!(row.counts.get(p), row.n / 3);
                assert_eq!(*row.ratio(p), q(1, 3));
            }
        }
        let r = density_report(OrderingKind::NaturalN, 200, &[200]).unwrap();
        assert_eq!(*r.rows[0].ratio(Parity::Even), q(1, 2));
        assert_eq!(r.rows[0].counts.none(), 0);
        // 1/2, 1/4, 3/4, 1/6, 5/6 and the four eighths have no parity
        let r = density_report(OrderingKind::ListOrder, 21, &[21]).unwrap();
        assert_eq!(
            (
                r.rows[0].counts.even(),
                r.rows[0].counts.odd(),
                r.rows[0].counts.none()
            ),
            (6, 6, 9)
        );
    }

    #[test]
    fn report_rejects_bad_checkpoints() {
        assert!(matches!(
            density_report(OrderingKind::Cw, 10, &[0]),
            Err(Error::BadCheckpoint { .. })
        ));
        assert!(density_report(OrderingKind::Cw, 10, &[11]).is_err());
        assert!(matches!(
            density_report_with(OrderingKind::Cw, 10, &[10], Execution::default(), 9),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn checkpoints_are_sorted_and_deduplicated() {
        let r = density_report(OrderingKind::Sb, 50, &[50, 7, 7, 1]).unwrap();
        let ns: Vec<u64> = r.rows.iter().map(|row| row.n).collect();
        assert_eq!(ns, [1, 7, 50]);
        for row in &r.rows {
            assert_eq!(row.counts.total(), row.n);
        }
    }

    #[test]
    fn default_checkpoint_spacing() {
        assert_eq!(default_checkpoints(10), [1, 2, 4, 8, 10]);
        assert_eq!(default_checkpoints(8), [1, 2, 4, 8]);
        assert_eq!(default_checkpoints(1), [1]);
        assert!(default_checkpoints(0).is_empty());
    }

    #[test]
    fn farey_ordering_uses_smallest_covering_order() {
        assert_eq!(farey_order_for(1), 2);
        assert_eq!(farey_order_for(21), 8);
        assert_eq!(farey_order_for(22), 9);
        let r = density_report(OrderingKind::Farey, 21, &[21]).unwrap();
        assert_eq!(r.rows[0].counts, ClassCounts([6, 6, 9]));
    }

    #[test]
    fn strategies_give_identical_reports() {
        for k in OrderingKind::ALL {
            let cps = default_checkpoints(5000);
            let a = density_report_with(k, 5000, &cps, Execution::Sequential, DEFAULT_ELEMENT_CAP);
            let b = density_report_with(k, 5000, &cps, Execution::Parallel, DEFAULT_ELEMENT_CAP);
            assert_eq!(a.unwrap(), b.unwrap(), "{k}");
        }
    }

    #[test]
    fn totients() {
        let phi: Vec<u64> = (1..=12).map(totient).collect();
        assert_eq!(phi, [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
