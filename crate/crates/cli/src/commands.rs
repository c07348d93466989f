use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use qparity_core::density::{
    default_checkpoints, density_report_with, farey as farey_seq, list_order_block_ends,
    ClassCounts, OrderingKind,
};
use qparity_core::partition::{
    compare_cosets, coset_rep, coset_reps, dyadic_decompose, in_qp, level, CosetClass,
};
use qparity_core::trees::{
    cw_parity_row_capped, cw_row_capped, sb_level_capped, sb_parity_level_capped, SbValue,
};
use qparity_core::{Error, Execution, Parity, Rational, Valuation};

const SIG_DIGITS: u32 = 12;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroDenominator
            | Error::InvalidBase(_)
            | Error::OutOfRange { .. }
            | Error::BadCheckpoint { .. }
            | Error::UnknownOrdering(_)
            | Error::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn csv_writer<'a>(
    path: Option<&Path>,
    out: &'a mut dyn Write,
) -> Result<csv::Writer<Box<dyn Write + 'a>>> {
    let sink: Box<dyn Write + 'a> = match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(out),
    };
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink))
}

fn decimal(q: &Rational) -> String {
    q.to_sig_decimal(SIG_DIGITS)
}

pub fn classify(q: &Rational, out: &mut dyn Write) -> Result<()> {
    let nu2 = q.nu2();
    writeln!(out, "q: {q}")?;
    writeln!(out, "parity: {}", q.parity())?;
    writeln!(out, "uneven: {}", q.is_uneven())?;
    writeln!(out, "nu2: {nu2}")?;
    writeln!(out, "level: Q_{}", level(q))?;
    match dyadic_decompose(q) {
        Some(form) => writeln!(out, "dyadic: {form}")?,
        None => writeln!(out, "dyadic: not dyadic")?,
    }
    writeln!(out, "in_QP: {}", in_qp(q))?;
    if let CosetClass::Rep(rep) = coset_rep(q) {
        writeln!(out, "coset_rep: {rep} (k={}, l={})", rep.k(), rep.ell())?;
    }
    Ok(())
}

pub fn valuation(q: &Rational, p: i64, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "nu_{p}({q}) = {}", q.nu(p)?)?;
    Ok(())
}

fn tree_size(cw: bool, rows: i64) -> u128 {
    let rows = rows.min(127) as u32;
    if cw {
        (1u128 << rows) - 1
    } else {
        // levels 1..=rows, 2^k + 1 entries each
        (1u128 << (rows + 1)) - 2 + rows as u128
    }
}

pub fn tree(
    cw: bool,
    rows: i64,
    parity_only: bool,
    csv_path: Option<&Path>,
    cap: u64,
    out: &mut dyn Write,
) -> Result<()> {
    let total = tree_size(cw, rows);
    if total > cap as u128 {
        return Err(Error::CapExceeded {
            requested: total,
            cap,
        }
        .into());
    }
    let mut csv = match csv_path {
        Some(p) => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(io::BufWriter::new(File::create(p)?));
            w.write_record(["row", "index_in_row", "num", "den", "parity"])?;
            Some(w)
        }
        None => None,
    };
    for r in 1..=rows {
        if parity_only {
            let symbols = if cw {
                cw_parity_row_capped(r, cap)?
            } else {
                sb_parity_level_capped(r, cap)?
            };
            match csv.as_mut() {
                Some(w) => {
                    for (i, p) in symbols.as_slice().iter().enumerate() {
                        let (row, idx) = (r.to_string(), (i + 1).to_string());
                        w.write_record([row.as_str(), &idx, "", "", p.name()])?;
                    }
                }
                None => writeln!(out, "{symbols}")?,
            }
            continue;
        }
        let entries: Vec<(String, String, Parity)> = if cw {
            cw_row_capped(r, cap)?
                .into_iter()
                .map(|q| (q.numer().to_string(), q.denom().to_string(), q.parity()))
                .collect()
        } else {
            sb_level_capped(r, cap)?
                .into_iter()
                .map(|e| match &e.value {
                    SbValue::Finite(q) => (q.numer().to_string(), q.denom().to_string(), e.parity),
                    SbValue::Infinity => ("1".into(), "0".into(), e.parity),
                })
                .collect()
        };
        match csv.as_mut() {
            Some(w) => {
                for (i, (m, n, p)) in entries.iter().enumerate() {
                    let (row, idx) = (r.to_string(), (i + 1).to_string());
                    w.write_record([row.as_str(), &idx, m, n, p.name()])?;
                }
            }
            None => {
                let line: Vec<String> =
                    entries.iter().map(|(m, n, _)| format!("{m}/{n}")).collect();
                writeln!(out, "{}", line.join(", "))?;
            }
        }
    }
    if let Some(mut w) = csv {
        w.flush()?;
    }
    Ok(())
}

fn ratio(count: u64, n: u64) -> Rational {
    Rational::new(count as i64, n as i64).expect("n >= 1")
}

pub fn density(
    order: OrderingKind,
    count: Option<u64>,
    n_max: Option<i64>,
    checkpoints: Option<Vec<u64>>,
    csv_path: Option<&Path>,
    cap: u64,
    out: &mut dyn Write,
) -> Result<()> {
    let (count, implied) = match (count, n_max) {
        (Some(c), _) => (c, None),
        (None, Some(n)) => {
            if !matches!(order, OrderingKind::ListOrder | OrderingKind::Farey) {
                return Err(CliError::Usage(format!(
                    "--n-max applies to list-order and farey, not {order}"
                )));
            }
            let ends = list_order_block_ends(n)?;
            (*ends.last().expect("n_max >= 2"), Some(ends))
        }
        (None, None) => return Err(CliError::Usage("--count or --n-max is required".into())),
    };
    let checkpoints = checkpoints
        .or(if order == OrderingKind::ListOrder {
            implied
        } else {
            None
        })
        .unwrap_or_else(|| default_checkpoints(count));
    let report = density_report_with(order, count, &checkpoints, Execution::default(), cap)?;
    let mut w = csv_writer(csv_path, out)?;
    w.write_record([
        "ordering",
        "n",
        "count_even",
        "count_odd",
        "count_none",
        "ratio_even",
        "ratio_odd",
        "ratio_none",
    ])?;
    for row in &report.rows {
        let c = &row.counts;
        w.write_record([
            order.tag().to_string(),
            row.n.to_string(),
            c.even().to_string(),
            c.odd().to_string(),
            c.none().to_string(),
            decimal(row.ratio(Parity::Even)),
            decimal(row.ratio(Parity::Odd)),
            decimal(row.ratio(Parity::None)),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn coset(k: i64, out: &mut dyn Write) -> Result<()> {
    let reps: Vec<String> = coset_reps(k)?.iter().map(|r| r.to_string()).collect();
    writeln!(out, "{}", reps.join(" "))?;
    Ok(())
}

pub fn coset_eq(q1: &Rational, q2: &Rational, out: &mut dyn Write) -> Result<()> {
    let cmp = compare_cosets(q1, q2);
    writeln!(out, "{}", if cmp.equal { "equal" } else { "distinct" })?;
    match cmp.witness {
        Some((k, v)) => writeln!(out, "witness: k={k} nu2(a1*b2 - a2*b1)={v}")?,
        None => writeln!(out, "witness: none (nu2 {} vs {})", q1.nu2(), q2.nu2())?,
    }
    Ok(())
}

pub fn farey(n: i64, out: &mut dyn Write) -> Result<()> {
    let seq = farey_seq(n)?;
    let terms: Vec<String> = seq.iter().map(|q| q.to_string()).collect();
    writeln!(out, "{}", terms.join(" "))?;
    let mut c = ClassCounts::default();
    for q in &seq {
        c.add(q.parity());
    }
    let len = seq.len() as u64;
    writeln!(out, "terms: {len}")?;
    for p in Parity::ALL {
        if len == 0 {
            writeln!(out, "{}: 0", p.name())?;
        } else {
            writeln!(
                out,
                "{}: {} ({})",
                p.name(),
                c.get(p),
                decimal(&ratio(c.get(p), len))
            )?;
        }
    }
    Ok(())
}

pub fn plane(
    k_min: i64,
    k_max: i64,
    max_odd: u64,
    csv_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    if k_min > k_max {
        return Err(CliError::Usage(format!(
            "--k-min {k_min} exceeds --k-max {k_max}"
        )));
    }
    let mut w = csv_writer(csv_path, out)?;
    w.write_record(["num", "den", "value_decimal", "nu2", "mu2"])?;
    let max_odd = max_odd as i64;
    let top = if max_odd % 2 == 0 {
        max_odd - 1
    } else {
        max_odd
    };
    for k in k_min..=k_max {
        let scale = Rational::pow2(k);
        for odd in (-top..=top).step_by(2) {
            let q = &scale * &Rational::from_integer(odd);
            let Valuation::Finite(v) = q.nu2() else {
                unreachable!("odd multiples of 2^k are nonzero")
            };
            w.write_record([
                q.numer().to_string(),
                q.denom().to_string(),
                decimal(&q),
                v.to_string(),
                decimal(&Rational::pow2(v)),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
