//! Sparse nonnegative integer matrices in compressed-row form, plus the
//! plain-text dump format `nrows ncols nnz` followed by `row col value`
//! lines.

use std::io::{BufRead, Write};

use num_traits::Zero;

use crate::counting::BigCount;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    vals: Vec<u64>,
}

impl SparseMatrix {
    /// Builds from `(row, col, value)` triples; duplicates are summed and
    /// zeros dropped.
    pub fn from_triples(rows: usize, cols: usize, mut triples: Vec<(usize, usize, u64)>) -> Result<Self> {
        if let Some(&(r, c, _)) = triples.iter().find(|&&(r, c, _)| r >= rows || c >= cols) {
            return Err(Error::invalid(format!("entry ({r},{c}) outside a {rows}x{cols} matrix")));
        }
        triples.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(triples.len());
        let mut vals: Vec<u64> = Vec::with_capacity(triples.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triples {
            if v == 0 {
                continue;
            }
            if last == Some((r, c)) {
                *vals.last_mut().expect("previous entry") += v;
                continue;
            }
            col_idx.push(c as u32);
            vals.push(v);
            row_ptr[r + 1] += 1;
            last = Some((r, c));
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Ok(SparseMatrix { rows, cols, row_ptr, col_idx, vals })
    }

    pub fn from_dense(rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::invalid("ragged dense matrix"));
        }
        let triples = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)))
            .collect();
        Self::from_triples(n, m, triples)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()].iter().map(|&c| c as usize).zip(self.vals[span].iter().copied())
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.row(r).find(|&(cc, _)| cc == c).map_or(0, |(_, v)| v)
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triples() {
            d[r][c] = v;
        }
        d
    }

    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (r, out) in y.iter_mut().enumerate() {
            *out = self.row(r).map(|(c, v)| v as f64 * x[c]).sum();
        }
    }

    pub fn mul_vec_transposed(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (r, &xr) in x.iter().enumerate().take(self.rows) {
            for (c, v) in self.row(r) {
                y[c] += v as f64 * xr;
            }
        }
    }

    pub fn mul_big(&self, x: &[BigCount]) -> Vec<BigCount> {
        (0..self.rows)
            .map(|r| {
                let mut acc = BigCount::zero();
                for (c, v) in self.row(r) {
                    if !x[c].is_zero() {
                        acc += &x[c] * v;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn write_dump<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {} {}", self.rows, self.cols, self.nnz())?;
        for (r, c, v) in self.triples() {
            writeln!(w, "{r} {c} {v}")?;
        }
        Ok(())
    }

    pub fn read_dump<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines().enumerate().filter_map(|(i, l)| match l {
            Ok(s) if s.trim().is_empty() => None,
            other => Some((i + 1, other)),
        });
        let parse = |lineno: usize, s: &str| -> Result<[u64; 3]> {
            let fields: Vec<_> = s.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::invalid(format!("dump line {lineno}: expected three fields")));
            }
            let mut out = [0u64; 3];
            for (o, f) in out.iter_mut().zip(fields) {
                *o = f
                    .parse()
                    .map_err(|_| Error::invalid(format!("dump line {lineno}: `{f}` is not a nonnegative integer")))?;
            }
            Ok(out)
        };
        let (lineno, header) = lines.next().ok_or_else(|| Error::invalid("empty matrix dump"))?;
        let [rows, cols, nnz] = parse(lineno, &header?)?;
        let mut triples = Vec::with_capacity(nnz as usize);
        for (lineno, line) in lines {
            let [r, c, v] = parse(lineno, &line?)?;
            triples.push((r as usize, c as usize, v));
        }
        if triples.len() as u64 != nnz {
            return Err(Error::invalid(format!("dump declares {nnz} entries but holds {}", triples.len())));
        }
        Self::from_triples(rows as usize, cols as usize, triples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_are_merged_and_sorted() {
        let m = SparseMatrix::from_triples(2, 3, vec![(1, 2, 1), (0, 1, 2), (1, 2, 3), (0, 0, 0)]).unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(1, 2), 4);
        assert_eq!(m.to_dense(), vec![vec![0, 2, 0], vec![0, 0, 4]]);
        assert!(SparseMatrix::from_triples(2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let m = SparseMatrix::from_dense(&[vec![2, 1], vec![0, 7]]).unwrap();
        let mut buf = Vec::new();
        m.write_dump(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "2 2 3\n0 0 2\n0 1 1\n1 1 7\n");
        assert_eq!(SparseMatrix::read_dump(&buf[..]).unwrap(), m);
    }

    #[test]
    fn dump_errors() {
        assert!(SparseMatrix::read_dump(&b""[..]).is_err());
        assert!(SparseMatrix::read_dump(&b"2 2 1\n0 0\n"[..]).is_err());
        assert!(SparseMatrix::read_dump(&b"2 2 2\n0 0 1\n"[..]).is_err());
        assert!(SparseMatrix::read_dump(&b"2 2 1\n0 5 1\n"[..]).is_err());
        assert!(SparseMatrix::read_dump(&b"2 2 1\n0 0 -1\n"[..]).is_err());
    }

    #[test]
    fn products() {
        let m = SparseMatrix::from_dense(&[vec![1, 2], vec![3, 4]]).unwrap();
        let mut y = [0.0; 2];
        m.mul_vec(&[1.0, 1.0], &mut y);
        assert_eq!(y, [3.0, 7.0]);
        m.mul_vec_transposed(&[1.0, 1.0], &mut y);
        assert_eq!(y, [4.0, 6.0]);
        let b = m.mul_big(&[BigCount::from(1u8), BigCount::from(10u8)]);
        assert_eq!(b, vec![BigCount::from(21u8), BigCount::from(43u8)]);
    }
}
