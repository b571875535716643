//! Dense exact matrices over a prime field or the rationals, with the
//! elimination routines (rref, rank, kernel, solve) every homological
//! operation reduces to.
//!
//! Convention: a `rows x cols` matrix represents a linear map k^cols -> k^rows
//! acting on column vectors.

use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldKind, FpRed, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
enum MatData {
    Fp { p: u64, v: Vec<u64> },
    Rat(Vec<BigRational>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: MatData,
}

impl Matrix {
    pub fn zeros(field: FieldKind, rows: usize, cols: usize) -> Matrix {
        let data = match field {
            FieldKind::Fp(p) => MatData::Fp {
                p,
                v: vec![0; rows * cols],
            },
            FieldKind::Rat => MatData::Rat(vec![BigRational::zero(); rows * cols]),
        };
        Matrix { rows, cols, data }
    }

    pub fn identity(field: FieldKind, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: FieldKind,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Rows given as integer literals; convenience for tests and tables.
    pub fn from_int_rows(field: FieldKind, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Matrix::from_fn(field, r, c, |i, j| field.from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldKind {
        match &self.data {
            MatData::Fp { p, .. } => FieldKind::Fp(*p),
            MatData::Rat(_) => FieldKind::Rat,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.data {
            MatData::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: v[i * self.cols + j],
            },
            MatData::Rat(v) => Scalar::Rat(v[i * self.cols + j].clone()),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let c = self.cols;
        match (&mut self.data, s) {
            (MatData::Fp { p, v }, Scalar::Fp { p: q, v: x }) => {
                assert_eq!(*p, q, "field tag mismatch");
                v[i * c + j] = x;
            }
            (MatData::Rat(v), Scalar::Rat(x)) => v[i * c + j] = x,
            _ => panic!("field tag mismatch"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            MatData::Fp { v, .. } => v.iter().all(|&x| x == 0),
            MatData::Rat(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        match (&self.data, &rhs.data) {
            (MatData::Fp { p, v: a }, MatData::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "field tag mismatch");
                let v = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                Matrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: MatData::Fp { p: *p, v },
                }
            }
            (MatData::Rat(a), MatData::Rat(b)) => {
                let v = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Matrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: MatData::Rat(v),
                }
            }
            _ => panic!("field tag mismatch"),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        match &self.data {
            MatData::Fp { p, v } => {
                let v = v.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect();
                Matrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: MatData::Fp { p: *p, v },
                }
            }
            MatData::Rat(v) => {
                let v = v.iter().map(|x| -x).collect();
                Matrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: MatData::Rat(v),
                }
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.field(), self.rows, self.cols, |i, j| {
            self.get(i, j).mul(s)
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        match (&self.data, &rhs.data) {
            (MatData::Fp { p, v: a }, MatData::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "field tag mismatch");
                let red = FpRed::new(*p);
                let (m, k, n) = (self.rows, self.cols, rhs.cols);
                let mut v = vec![0u64; m * n];
                for i in 0..m {
                    for j in 0..n {
                        let mut acc: u128 = 0;
                        for l in 0..k {
                            acc += (a[i * k + l] * b[l * n + j]) as u128;
                        }
                        v[i * n + j] = red.red((acc % *p as u128) as u64);
                    }
                }
                Matrix {
                    rows: m,
                    cols: n,
                    data: MatData::Fp { p: *p, v },
                }
            }
            (MatData::Rat(a), MatData::Rat(b)) => {
                let (m, k, n) = (self.rows, self.cols, rhs.cols);
                let mut v = vec![BigRational::zero(); m * n];
                for i in 0..m {
                    for j in 0..n {
                        let mut acc = BigRational::zero();
                        for l in 0..k {
                            acc += &a[i * k + l] * &b[l * n + j];
                        }
                        v[i * n + j] = acc;
                    }
                }
                Matrix {
                    rows: m,
                    cols: n,
                    data: MatData::Rat(v),
                }
            }
            _ => panic!("field tag mismatch"),
        }
    }

    /// Horizontal concatenation [a | b | ...].
    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        let field = parts[0].field();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        let field = parts[0].field();
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack col mismatch");
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, m: &Matrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(i0 + i, j0 + j, m.get(i, j));
            }
        }
    }

    pub fn block(&self, i0: usize, rows: usize, j0: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field(), rows, cols, |i, j| self.get(i0 + i, j0 + j))
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.block(0, self.rows, j, 1)
    }

    pub fn from_columns(field: FieldKind, rows: usize, cols: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.rows, rows);
            assert_eq!(c.cols, 1);
            out.set_block(0, j, c);
        }
        out
    }

    /// Reduced row echelon form. Returns (rref, pivot columns, rank).
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than full rref.
        let mut m = self.clone();
        m.echelon_in_place().len()
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let pivots = self.echelon_in_place();
        // Back-substitute to clear above the pivots.
        let cols = self.cols;
        match &mut self.data {
            MatData::Fp { p, v } => {
                let red = FpRed::new(*p);
                for (r, &pc) in pivots.iter().enumerate().rev() {
                    for i in 0..r {
                        let f = v[i * cols + pc];
                        if f != 0 {
                            for j in pc..cols {
                                let t = v[i * cols + j] + red.mul(f, red.neg(v[r * cols + j]));
                                v[i * cols + j] = red.red(t);
                            }
                        }
                    }
                }
            }
            MatData::Rat(v) => {
                for (r, &pc) in pivots.iter().enumerate().rev() {
                    for i in 0..r {
                        let f = v[i * cols + pc].clone();
                        if !f.is_zero() {
                            for j in pc..cols {
                                let t = &v[r * cols + j] * &f;
                                v[i * cols + j] -= t;
                            }
                        }
                    }
                }
            }
        }
        pivots
    }

    /// Row echelon form with unit pivots; returns pivot column list.
    fn echelon_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        match &mut self.data {
            MatData::Fp { p, v } => {
                let red = FpRed::new(*p);
                let mut r = 0;
                for c in 0..cols {
                    if r >= rows {
                        break;
                    }
                    let mut pr = None;
                    for i in r..rows {
                        if v[i * cols + c] != 0 {
                            pr = Some(i);
                            break;
                        }
                    }
                    let Some(pr) = pr else { continue };
                    if pr != r {
                        for j in 0..cols {
                            v.swap(r * cols + j, pr * cols + j);
                        }
                    }
                    let inv = red.inv(v[r * cols + c]);
                    for j in c..cols {
                        v[r * cols + j] = red.mul(v[r * cols + j], inv);
                    }
                    for i in (r + 1)..rows {
                        let f = v[i * cols + c];
                        if f != 0 {
                            for j in c..cols {
                                let t = v[i * cols + j] + red.mul(f, red.neg(v[r * cols + j]));
                                v[i * cols + j] = red.red(t);
                            }
                        }
                    }
                    pivots.push(c);
                    r += 1;
                }
            }
            MatData::Rat(v) => {
                let mut r = 0;
                for c in 0..cols {
                    if r >= rows {
                        break;
                    }
                    let mut pr = None;
                    for i in r..rows {
                        if !v[i * cols + c].is_zero() {
                            pr = Some(i);
                            break;
                        }
                    }
                    let Some(pr) = pr else { continue };
                    if pr != r {
                        for j in 0..cols {
                            v.swap(r * cols + j, pr * cols + j);
                        }
                    }
                    let inv = v[r * cols + c].recip();
                    for j in c..cols {
                        let t = &v[r * cols + j] * &inv;
                        v[r * cols + j] = t;
                    }
                    for i in (r + 1)..rows {
                        let f = v[i * cols + c].clone();
                        if !f.is_zero() {
                            for j in c..cols {
                                let t = &v[r * cols + j] * &f;
                                v[i * cols + j] -= t;
                            }
                        }
                    }
                    pivots.push(c);
                    r += 1;
                }
            }
        }
        pivots
    }

    /// Basis of the right kernel {x : self . x = 0}, as columns.
    pub fn kernel_basis(&self) -> Matrix {
        self.kernel_basis_with_free().0
    }

    /// Kernel basis together with the free-coordinate indices; the basis has
    /// identity rows at those coordinates, so expressing a kernel vector in
    /// the basis is just row selection.
    pub fn kernel_basis_with_free(&self) -> (Matrix, Vec<usize>) {
        let (r, pivots, rank) = self.rref();
        let field = self.field();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, field.one());
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, r.get(row, fc).neg());
            }
        }
        debug_assert_eq!(out.cols(), self.cols - rank);
        (out, free)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field(), rows.len(), self.cols, |i, j| {
            self.get(rows[i], j)
        })
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field(), self.rows, cols.len(), |i, j| {
            self.get(i, cols[j])
        })
    }

    /// Any solution X of self . X = b (matrix right-hand side), or NoSolution.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        assert_eq!(self.rows, b.rows, "solve: rhs row mismatch");
        let aug = Matrix::hstack(&[self, b]);
        let (r, pivots, _) = aug.rref();
        // Consistent iff no pivot lies in the rhs block.
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NoSolution);
        }
        let field = self.field();
        let mut x = Matrix::zeros(field, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Ok(x)
    }

    /// Exactness of the two-step complex  . -a-> middle -b-> .  at `middle`,
    /// where `a` maps INTO the middle space (rows(a) = dim middle) and `b`
    /// maps OUT of it (cols(b) = dim middle). Errors unless b . a = 0.
    pub fn is_exact_at(a: &Matrix, b: &Matrix) -> Result<bool> {
        assert_eq!(a.rows, b.cols, "middle dimension mismatch");
        if !b.mul(a).is_zero() {
            return Err(Error::NotAComplex);
        }
        Ok(a.rank() + b.rank() == a.rows)
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A subspace of k^ambient with a canonical (rref) basis, stored as columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    field: FieldKind,
    /// ambient x dim matrix whose columns are the canonical basis.
    basis: Matrix,
}

impl Subspace {
    /// Span of the columns of `gen`.
    pub fn span(gen: &Matrix) -> Subspace {
        let ambient = gen.rows();
        let field = gen.field();
        let mut elim = Eliminator::new(field, ambient);
        for j in 0..gen.cols() {
            elim.insert(gen.column(j).transpose());
        }
        let basis = elim.basis_columns();
        Subspace {
            ambient,
            field,
            basis,
        }
    }

    pub fn zero(field: FieldKind, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            field,
            basis: Matrix::zeros(field, ambient, 0),
        }
    }

    pub fn full(field: FieldKind, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            field,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains_vec(&self, v: &Matrix) -> bool {
        assert_eq!(v.rows(), self.ambient);
        self.basis.solve(v).is_ok()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.basis.solve(&other.basis).is_ok()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&Matrix::hstack(&[&self.basis, &other.basis]))
    }

    /// Coordinates of v in the canonical basis, if v lies in the subspace.
    pub fn coords_of(&self, v: &Matrix) -> Result<Matrix> {
        self.basis.solve(v)
    }

    /// Lexicographically first subset of standard basis vectors completing
    /// this subspace to the whole ambient space.
    pub fn lex_complement_indices(&self) -> Vec<usize> {
        let mut elim = Eliminator::new(self.field, self.ambient);
        for j in 0..self.basis.cols() {
            elim.insert(self.basis.column(j).transpose());
        }
        let mut chosen = Vec::new();
        for j in 0..self.ambient {
            if elim.rank() == self.ambient {
                break;
            }
            let mut e = Matrix::zeros(self.field, 1, self.ambient);
            e.set(0, j, self.field.one());
            if elim.insert(e) {
                chosen.push(j);
            }
        }
        chosen
    }

    /// Standard-vector complement as an ambient x q matrix.
    pub fn lex_complement_matrix(&self) -> Matrix {
        let idx = self.lex_complement_indices();
        let mut c = Matrix::zeros(self.field, self.ambient, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            c.set(j, k, self.field.one());
        }
        c
    }
}

/// Incremental row elimination: rows kept in echelon form (each with a unit
/// leading entry at a distinct pivot column, zeros before it); candidates are
/// reduced against the stored rows in pivot order.
pub struct Eliminator {
    field: FieldKind,
    cols: usize,
    /// (pivot column, reduced row), kept sorted by pivot.
    rows: Vec<(usize, Matrix)>,
}

impl Eliminator {
    pub fn new(field: FieldKind, cols: usize) -> Eliminator {
        Eliminator {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce a row vector against the stored rows.
    pub fn reduce(&self, row: &Matrix) -> Matrix {
        assert_eq!(row.cols(), self.cols);
        let mut v = row.clone();
        for (p, r) in &self.rows {
            let c = v.get(0, *p);
            if !c.is_zero() {
                v = v.sub(&r.scale(&c));
            }
        }
        v
    }

    /// Insert a row; returns true if the rank grew.
    pub fn insert(&mut self, row: Matrix) -> bool {
        let v = self.reduce(&row);
        let lead = (0..self.cols).find(|&j| !v.get(0, j).is_zero());
        let Some(lead) = lead else { return false };
        let normalized = v.scale(&v.get(0, lead).inv());
        let pos = self.rows.partition_point(|(p, _)| *p < lead);
        self.rows.insert(pos, (lead, normalized));
        true
    }

    pub fn contains(&self, row: &Matrix) -> bool {
        self.reduce(row).is_zero()
    }

    /// The stored echelon rows as columns of a basis matrix.
    pub fn basis_columns(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows.len());
        for (k, (_, r)) in self.rows.iter().enumerate() {
            for j in 0..self.cols {
                let v = r.get(0, j);
                if !v.is_zero() {
                    m.set(j, k, v);
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F: FieldKind = FieldKind::Fp(101);

    #[test]
    fn rref_empty_and_identity() {
        let z = Matrix::zeros(F, 0, 0);
        let (_, _, rank) = z.rref();
        assert_eq!(rank, 0);

        let id = Matrix::identity(F, 3);
        let (r, pivots, rank) = id.rref();
        assert_eq!(rank, 3);
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(r, id);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_int_rows(F, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_cases() {
        assert_eq!(Matrix::identity(F, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(F, 2, 3).kernel_basis().cols(), 3);
        let m = Matrix::from_int_rows(F, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_cases() {
        let b = Matrix::from_int_rows(F, &[&[5], &[7]]);
        let x = Matrix::identity(F, 2).solve(&b).unwrap();
        assert_eq!(x, b);

        let z = Matrix::zeros(F, 2, 2);
        assert!(z.solve(&b).is_err());

        let f5 = FieldKind::Fp(5);
        let m = Matrix::from_int_rows(f5, &[&[2]]);
        let rhs = Matrix::from_int_rows(f5, &[&[1]]);
        let x = m.solve(&rhs).unwrap();
        assert_eq!(x, Matrix::from_int_rows(f5, &[&[3]]));
    }

    #[test]
    fn exactness_cases() {
        // 0 -> k^2 with injective b: exact at middle.
        let a = Matrix::zeros(F, 2, 0);
        let b = Matrix::identity(F, 2);
        assert!(Matrix::is_exact_at(&a, &b).unwrap());

        // identity in, zero out.
        let a = Matrix::identity(F, 2);
        let b = Matrix::zeros(F, 0, 2);
        assert!(Matrix::is_exact_at(&a, &b).unwrap());

        // zero in, zero out of dim 2: homology of dim 2.
        let a = Matrix::zeros(F, 2, 0);
        let b = Matrix::zeros(F, 0, 2);
        assert!(!Matrix::is_exact_at(&a, &b).unwrap());

        // b.a != 0 rejected.
        let a = Matrix::identity(F, 2);
        let b = Matrix::identity(F, 2);
        assert!(Matrix::is_exact_at(&a, &b).is_err());
    }

    #[test]
    fn rationals_cross_check() {
        let q = FieldKind::Rat;
        let m = Matrix::from_int_rows(q, &[&[2, 1], &[4, 3]]);
        assert_eq!(m.rank(), 2);
        let b = Matrix::from_int_rows(q, &[&[1], &[1]]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul(&x), b);
    }

    #[test]
    fn subspace_lex_complement() {
        // span{(1,1)}: greedy complement is e0, not the rref free column.
        let g = Matrix::from_int_rows(F, &[&[1], &[1]]);
        let s = Subspace::span(&g);
        assert_eq!(s.lex_complement_indices(), vec![0]);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0i64..101, r * c)
                .prop_map(move |v| Matrix::from_fn(F, r, c, |i, j| F.from_int(v[i * c + j])))
        })
    }

    proptest! {
        #[test]
        fn rank_transpose_invariant(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_is_annihilated(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.cols(), m.cols() - m.rank());
            // columns independent
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_recovers_consistent_rhs(m in arb_matrix(), xs in proptest::collection::vec(0i64..101, 25)) {
            let x = Matrix::from_fn(F, m.cols(), 1, |i, _| F.from_int(xs[i % xs.len()]));
            let b = m.mul(&x);
            let sol = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul(&sol), b);
        }

        #[test]
        fn rref_preserves_row_space_rank(m in arb_matrix()) {
            let (r, _, rank) = m.rref();
            prop_assert_eq!(r.rank(), rank);
            prop_assert_eq!(m.rank(), rank);
        }
    }
}
