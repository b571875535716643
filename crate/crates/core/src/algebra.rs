//! Finite-dimensional commutative local k-algebras given by structure
//! constants, including Artinian quotients k[x_1..x_n]/I built from relation
//! ideals. Validation enforces commutativity, associativity, a unit, and
//! locality (codimension-one nilpotent maximal ideal).

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::matrix::{Matrix, Subspace};
use crate::poly::{monomials_up_to, Monomial, Poly};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// An element of a local algebra, as a coordinate column in the basis.
#[derive(Clone, PartialEq, Debug)]
pub struct RingElement {
    pub coords: Matrix,
}

impl RingElement {
    pub fn dim(&self) -> usize {
        self.coords.rows()
    }
}

struct AlgInner {
    field: FieldKind,
    dim: usize,
    labels: Vec<String>,
    unit: usize,
    mm: Vec<usize>,
    gens: Vec<RingElement>,
    gen_labels: Vec<String>,
    /// left_mul[i] is the dim x dim matrix of multiplication by basis element i.
    left_mul: Vec<Matrix>,
    /// Elements whose action (with the unit) determines R-linearity; the
    /// algebra generators when they generate, else the full m-basis.
    hom_gens: Vec<RingElement>,
    nilpotency: usize,
    name: String,
    id: u64,
}

#[derive(Clone)]
pub struct LocalAlgebra(Arc<AlgInner>);

impl fmt::Debug for LocalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalAlgebra({}, dim {})", self.0.name, self.0.dim)
    }
}

impl LocalAlgebra {
    pub fn field(&self) -> FieldKind {
        self.0.field
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn unit_index(&self) -> usize {
        self.0.unit
    }

    pub fn mm_indices(&self) -> &[usize] {
        &self.0.mm
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.0.gens
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.0.gen_labels
    }

    pub fn left_mul(&self, i: usize) -> &Matrix {
        &self.0.left_mul[i]
    }

    /// Elements whose action (together with the identity) determines
    /// R-linearity of a k-linear map between modules.
    pub fn hom_generators(&self) -> &[RingElement] {
        &self.0.hom_gens
    }

    /// Least N with m^N = 0.
    pub fn nilpotency_index(&self) -> usize {
        self.0.nilpotency
    }

    pub fn same_as(&self, other: &LocalAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.dim == other.0.dim
                && self.0.unit == other.0.unit
                && self.0.left_mul == other.0.left_mul)
    }

    pub fn elem_zero(&self) -> RingElement {
        RingElement {
            coords: Matrix::zeros(self.field(), self.dim(), 1),
        }
    }

    pub fn elem_unit(&self) -> RingElement {
        self.elem_basis(self.0.unit)
    }

    pub fn elem_basis(&self, i: usize) -> RingElement {
        let mut m = Matrix::zeros(self.field(), self.dim(), 1);
        m.set(i, 0, self.field().one());
        RingElement { coords: m }
    }

    pub fn elem_from_coords(&self, coords: Matrix) -> RingElement {
        assert_eq!(coords.rows(), self.dim());
        assert_eq!(coords.cols(), 1);
        RingElement { coords }
    }

    /// The matrix of multiplication by `a`.
    pub fn mul_matrix(&self, a: &RingElement) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        for i in 0..self.dim() {
            let c = a.coords.get(i, 0);
            if !c.is_zero() {
                m = m.add(&self.0.left_mul[i].scale(&c));
            }
        }
        m
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coords: self.mul_matrix(a).mul(&b.coords),
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coords: a.coords.add(&b.coords),
        }
    }

    pub fn scale(&self, c: &Scalar, a: &RingElement) -> RingElement {
        RingElement {
            coords: a.coords.scale(c),
        }
    }

    /// Elements of the maximal ideal have zero unit coordinate.
    pub fn is_in_mm(&self, a: &RingElement) -> bool {
        a.coords.get(self.0.unit, 0).is_zero()
    }

    pub fn is_invertible(&self, a: &RingElement) -> bool {
        !self.is_in_mm(a)
    }

    pub fn inverse(&self, a: &RingElement) -> Result<RingElement> {
        let x = self
            .mul_matrix(a)
            .solve(&self.elem_unit().coords)
            .map_err(|_| Error::NotLocal("element is not invertible".into()))?;
        Ok(RingElement { coords: x })
    }

    /// Subspace of R spanned by the maximal ideal.
    pub fn mm_subspace(&self) -> Subspace {
        let cols: Vec<Matrix> = self
            .0
            .mm
            .iter()
            .map(|&i| self.elem_basis(i).coords)
            .collect();
        let refs = Matrix::from_columns(self.field(), self.dim(), &cols);
        Subspace::span(&refs)
    }

    /// socle(R) = (0 : m), the annihilator of the maximal ideal.
    pub fn socle(&self) -> Subspace {
        if self.0.mm.is_empty() {
            return Subspace::full(self.field(), self.dim());
        }
        let stacked: Vec<&Matrix> = self.0.mm.iter().map(|&i| &self.0.left_mul[i]).collect();
        let big = Matrix::vstack(&stacked);
        Subspace::span(&big.kernel_basis())
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle().dim() == 1
    }

    pub fn elem_to_string(&self, a: &RingElement) -> String {
        let mut parts = Vec::new();
        for i in 0..self.dim() {
            let c = a.coords.get(i, 0);
            if c.is_zero() {
                continue;
            }
            let lbl = &self.0.labels[i];
            if i == self.0.unit {
                parts.push(format!("{c}"));
            } else if c.is_one() {
                parts.push(lbl.clone());
            } else {
                parts.push(format!("{c}*{lbl}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Evaluate a polynomial in the algebra's generator variables.
    pub fn elem_from_poly(&self, p: &Poly, vars: &[String]) -> Result<RingElement> {
        let mut idx = Vec::with_capacity(vars.len());
        for v in vars {
            match self.0.gen_labels.iter().position(|g| g == v) {
                Some(k) => idx.push(k),
                None => {
                    return Err(Error::ConstructionFailed(format!(
                        "unknown variable `{v}` over ring {}",
                        self.0.name
                    )))
                }
            }
        }
        let mut acc = self.elem_zero();
        for (m, c) in &p.terms {
            let mut t = self.elem_unit();
            for (pos, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = self.mul(&t, &self.0.gens[idx[pos]]);
                }
            }
            acc = self.add(&acc, &self.scale(c, &t));
        }
        Ok(acc)
    }

    /// Build and validate an algebra from multiplication data.
    ///
    /// `table[i]` is the matrix of multiplication by basis element i (column j
    /// holds the coordinates of e_i * e_j).
    pub fn build_from_structure_constants(
        field: FieldKind,
        name: &str,
        labels: Vec<String>,
        table: Vec<Matrix>,
        unit: usize,
        mm: Vec<usize>,
        generators: Vec<usize>,
    ) -> Result<LocalAlgebra> {
        field.validate()?;
        let dim = labels.len();
        if table.len() != dim || unit >= dim {
            return Err(Error::NoUnit);
        }
        for t in &table {
            if t.rows() != dim || t.cols() != dim || t.field() != field {
                return Err(Error::FieldMismatch);
            }
        }

        // Unit acts as identity.
        if table[unit] != Matrix::identity(field, dim) {
            return Err(Error::NoUnit);
        }
        // Commutativity: e_i e_j = e_j e_i.
        for i in 0..dim {
            for j in (i + 1)..dim {
                if table[i].column(j) != table[j].column(i) {
                    return Err(Error::NotCommutative(i, j));
                }
            }
        }
        // Associativity: L_i L_j = L_(e_i e_j).
        for i in 0..dim {
            for j in 0..dim {
                let lhs = table[i].mul(&table[j]);
                let mut rhs = Matrix::zeros(field, dim, dim);
                for l in 0..dim {
                    let c = table[i].get(l, j);
                    if !c.is_zero() {
                        rhs = rhs.add(&table[l].scale(&c));
                    }
                }
                if lhs != rhs {
                    return Err(Error::NotAssociative(i, j));
                }
            }
        }

        // Maximal ideal: complement of the unit, spanning an ideal.
        let mut sorted = mm.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != dim.saturating_sub(1) || sorted.contains(&unit) {
            return Err(Error::NotLocal(
                "maximal ideal basis must be the complement of the unit".into(),
            ));
        }
        for &i in &sorted {
            for j in 0..dim {
                if !table[i].get(unit, j).is_zero() {
                    return Err(Error::NotLocal(format!(
                        "claimed maximal ideal is not an ideal: e_{i} * e_{j} has a unit component"
                    )));
                }
            }
        }

        // Nilpotency of m by iterated products.
        let mm_cols: Vec<Matrix> = sorted
            .iter()
            .map(|&i| {
                let mut c = Matrix::zeros(field, dim, 1);
                c.set(i, 0, field.one());
                c
            })
            .collect();
        let mut power = Subspace::span(&Matrix::from_columns(field, dim, &mm_cols));
        let mut nilpotency = 1;
        loop {
            if power.dim() == 0 {
                break;
            }
            let mut prods = Vec::new();
            for &i in &sorted {
                prods.push(table[i].mul(power.basis()));
            }
            let refs: Vec<&Matrix> = prods.iter().collect();
            let next = Subspace::span(&Matrix::hstack(&refs));
            if next.dim() >= power.dim() {
                // Stuck: find the obstruction (idempotent or non-nilpotent element).
                for &i in &sorted {
                    let helper = ElemAnalysis::new(field, dim, &table, i);
                    if let Some(reason) = helper.locality_obstruction() {
                        return Err(Error::NotLocal(reason));
                    }
                }
                return Err(Error::NotNilpotent);
            }
            power = next;
            nilpotency += 1;
        }

        // Spot-check: 1 + m elements are invertible.
        let unit_col = {
            let mut c = Matrix::zeros(field, dim, 1);
            c.set(unit, 0, field.one());
            c
        };
        for &i in &sorted {
            let mut a = Matrix::zeros(field, dim, dim);
            a = a.add(&table[unit]).add(&table[i]);
            if a.solve(&unit_col).is_err() {
                return Err(Error::NotLocal(format!("1 + e_{i} is not invertible")));
            }
        }

        // Generators of m as an algebra.
        let gens_idx = if generators.is_empty() {
            sorted.clone()
        } else {
            generators
        };
        for &g in &gens_idx {
            if g >= dim || g == unit {
                return Err(Error::NotLocal("generator index out of range".into()));
            }
        }
        let gen_elems: Vec<RingElement> = gens_idx
            .iter()
            .map(|&g| {
                let mut c = Matrix::zeros(field, dim, 1);
                c.set(g, 0, field.one());
                RingElement { coords: c }
            })
            .collect();
        let gen_labels: Vec<String> = gens_idx.iter().map(|&g| labels[g].clone()).collect();

        let hom_gens = compute_hom_generators(field, dim, &table, unit, &sorted, &gen_elems);

        Ok(LocalAlgebra(Arc::new(AlgInner {
            field,
            dim,
            labels,
            unit,
            mm: sorted,
            gens: gen_elems,
            gen_labels,
            left_mul: table,
            hom_gens,
            nilpotency,
            name: name.to_string(),
            id: fresh_id(),
        })))
    }

    /// Build R = k[vars]/(relations) as a local algebra. The relation ideal
    /// must contain a power of each variable (Artinian check, bounded search
    /// up to total degree `max_degree`).
    pub fn build_quotient(
        field: FieldKind,
        name: &str,
        vars: &[String],
        relations: &[Poly],
        max_degree: usize,
    ) -> Result<LocalAlgebra> {
        field.validate()?;
        let n = vars.len();
        for r in relations {
            if r.nvars != n {
                return Err(Error::ConstructionFailed(
                    "relation variable count mismatch".into(),
                ));
            }
            if let Some(f) = r.field() {
                if f != field {
                    return Err(Error::FieldMismatch);
                }
            }
        }
        let relations: Vec<&Poly> = relations.iter().filter(|r| !r.is_zero()).collect();

        // Stage 1: find per-variable power bounds a_i with x_i^{a_i} in I.
        let mut bounds: Option<Vec<usize>> = None;
        for cap in 1..=max_degree {
            let table = SpanTable::new(field, n, cap, &relations, false);
            let mut found = vec![None; n];
            for (i, slot) in found.iter_mut().enumerate() {
                for a in 1..=cap {
                    let m = Monomial::var_power(n, i, a as u32);
                    if table.contains_monomial(&m) {
                        *slot = Some(a);
                        break;
                    }
                }
            }
            if found.iter().all(|b| b.is_some()) {
                bounds = Some(found.into_iter().map(|b| b.unwrap()).collect());
                break;
            }
            if cap == max_degree {
                let missing: Vec<String> = found
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.is_none())
                    .map(|(i, _)| vars[i].clone())
                    .collect();
                return Err(Error::NotArtinian {
                    var: missing.join(", "),
                    bound: max_degree,
                });
            }
        }
        let bounds = bounds.unwrap();

        // Stage 2: every monomial of degree >= cutoff is divisible by some
        // x_i^{a_i}, hence lies in I; work in the space of smaller monomials.
        let cutoff = bounds.iter().map(|a| a - 1).sum::<usize>() + 1;
        let table = SpanTable::new(field, n, cutoff - 1, &relations, true);

        if table.pivot_monomials().iter().any(|m| m.degree() == 0) {
            return Err(Error::ZeroQuotient);
        }

        // Standard monomials, deglex ascending: basis of the quotient.
        let basis: Vec<Monomial> = table.standard_monomials();
        let dim = basis.len();
        let labels: Vec<String> = basis.iter().map(|m| m.label(vars)).collect();
        let index_of = |m: &Monomial| basis.iter().position(|b| b == m);

        let normal_form = |m: &Monomial| -> Matrix {
            let mut col = Matrix::zeros(field, dim, 1);
            if m.degree() >= cutoff {
                return col; // in I by the cutoff argument
            }
            let coords = table.reduce_monomial(m);
            for (mon, c) in coords {
                let k = index_of(&mon).expect("residual supported on standard monomials");
                col.set(k, 0, c);
            }
            col
        };

        let mut left_mul = Vec::with_capacity(dim);
        for bi in &basis {
            let mut mat = Matrix::zeros(field, dim, dim);
            for (j, bj) in basis.iter().enumerate() {
                let col = normal_form(&bi.mul(bj));
                mat.set_block(0, j, &col);
            }
            left_mul.push(mat);
        }

        let unit = index_of(&Monomial::one(n)).ok_or(Error::ZeroQuotient)?;
        let mm: Vec<usize> = (0..dim).filter(|&i| i != unit).collect();

        // Variable classes generate m.
        let var_is_basis: Vec<Option<usize>> =
            (0..n).map(|i| index_of(&Monomial::var(n, i))).collect();

        let alg = LocalAlgebra::build_from_structure_constants(
            field,
            name,
            labels,
            left_mul,
            unit,
            mm,
            Vec::new(), // placeholder; replaced below with variable classes
        )?;

        // Re-wire generators to the variable classes (not necessarily basis
        // elements when a variable is reducible).
        let gens: Vec<RingElement> = (0..n)
            .map(|i| match var_is_basis[i] {
                Some(k) => alg.elem_basis(k),
                None => RingElement {
                    coords: normal_form(&Monomial::var(n, i)),
                },
            })
            .collect();
        let gen_labels = vars.to_vec();
        let hom_gens = compute_hom_generators(
            field,
            alg.dim(),
            &alg.0.left_mul,
            alg.0.unit,
            &alg.0.mm,
            &gens,
        );
        let inner = AlgInner {
            field,
            dim: alg.0.dim,
            labels: alg.0.labels.clone(),
            unit: alg.0.unit,
            mm: alg.0.mm.clone(),
            gens,
            gen_labels,
            left_mul: alg.0.left_mul.clone(),
            hom_gens,
            nilpotency: alg.0.nilpotency,
            name: name.to_string(),
            id: fresh_id(),
        };
        Ok(LocalAlgebra(Arc::new(inner)))
    }
}

/// Row-reduced span of {m*g : g relation} inside the monomial space of
/// degree <= cap, used both for the Artinian search and the final quotient.
struct SpanTable {
    /// Monomials of degree <= cap, deglex DESCENDING (pivots prefer large monomials).
    monomials: Vec<Monomial>,
    rref: Matrix,
    pivots: Vec<usize>,
}

impl SpanTable {
    /// When `truncate` is set, products are truncated to the table degree
    /// (valid once every dropped monomial is known to lie in the ideal).
    fn new(
        field: FieldKind,
        nvars: usize,
        cap: usize,
        relations: &[&Poly],
        truncate: bool,
    ) -> SpanTable {
        let mut monomials = monomials_up_to(nvars, cap);
        monomials.reverse(); // descending
        let index: std::collections::HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();

        let mut rows: Vec<Matrix> = Vec::new();
        for g in relations {
            let gdeg = if truncate {
                g.low_degree().unwrap_or(0)
            } else {
                g.degree().unwrap_or(0)
            };
            if gdeg > cap {
                continue;
            }
            let mdeg = cap - gdeg;
            for m in monomials_up_to(nvars, mdeg) {
                let prod = g.mul_monomial(&m);
                let mut row = Matrix::zeros(field, 1, monomials.len());
                let mut nonzero = false;
                for (mono, c) in &prod.terms {
                    match index.get(mono) {
                        Some(&k) => {
                            row.set(0, k, c.clone());
                            nonzero = true;
                        }
                        None => {
                            if !truncate {
                                // product exceeded the table; skip this row entirely
                                nonzero = false;
                                break;
                            }
                        }
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            rows.push(Matrix::zeros(field, 1, monomials.len()));
        }
        let refs: Vec<&Matrix> = rows.iter().collect();
        let (rref, pivots, _) = Matrix::vstack(&refs).rref();
        SpanTable {
            monomials,
            rref,
            pivots,
        }
    }

    fn contains_monomial(&self, m: &Monomial) -> bool {
        let Some(k) = self.monomials.iter().position(|x| x == m) else {
            return false;
        };
        let field = self.rref.field();
        let mut v = Matrix::zeros(field, 1, self.monomials.len());
        v.set(0, k, field.one());
        self.reduce_row(&v).is_zero()
    }

    /// Reduce a row vector against the rref rows; returns the residual.
    fn reduce_row(&self, v: &Matrix) -> Matrix {
        let mut out = v.clone();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out.get(0, pc);
            if !c.is_zero() {
                for j in pc..self.monomials.len() {
                    let t = out.get(0, j).sub(&c.mul(&self.rref.get(r, j)));
                    out.set(0, j, t);
                }
            }
        }
        out
    }

    fn pivot_monomials(&self) -> Vec<Monomial> {
        self.pivots
            .iter()
            .map(|&c| self.monomials[c].clone())
            .collect()
    }

    /// Non-pivot monomials: degree ascending, earlier variables first within
    /// a degree (so a basis prints as 1, x, y, z, xy, xz, ...).
    fn standard_monomials(&self) -> Vec<Monomial> {
        let mut std: Vec<Monomial> = (0..self.monomials.len())
            .filter(|c| !self.pivots.contains(c))
            .map(|c| self.monomials[c].clone())
            .collect();
        std.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0)));
        std
    }

    /// Normal form of a monomial as (standard monomial, coefficient) pairs.
    fn reduce_monomial(&self, m: &Monomial) -> Vec<(Monomial, Scalar)> {
        let field = self.rref.field();
        let k = self
            .monomials
            .iter()
            .position(|x| x == m)
            .expect("monomial outside table");
        let mut v = Matrix::zeros(field, 1, self.monomials.len());
        v.set(0, k, field.one());
        let red = self.reduce_row(&v);
        let mut out = Vec::new();
        for j in 0..self.monomials.len() {
            let c = red.get(0, j);
            if !c.is_zero() {
                out.push((self.monomials[j].clone(), c));
            }
        }
        out
    }
}

fn compute_hom_generators(
    field: FieldKind,
    dim: usize,
    table: &[Matrix],
    unit: usize,
    mm: &[usize],
    gens: &[RingElement],
) -> Vec<RingElement> {
    // Do the given generators (with the unit) generate the algebra?
    let gen_mats: Vec<Matrix> = gens
        .iter()
        .map(|g| {
            let mut m = Matrix::zeros(field, dim, dim);
            for i in 0..dim {
                let c = g.coords.get(i, 0);
                if !c.is_zero() {
                    m = m.add(&table[i].scale(&c));
                }
            }
            m
        })
        .collect();
    let mut span = {
        let mut unit_col = Matrix::zeros(field, dim, 1);
        unit_col.set(unit, 0, field.one());
        Subspace::span(&unit_col)
    };
    loop {
        let mut cols = vec![span.basis().clone()];
        for g in &gen_mats {
            cols.push(g.mul(span.basis()));
        }
        let refs: Vec<&Matrix> = cols.iter().collect();
        let next = Subspace::span(&Matrix::hstack(&refs));
        if next.dim() == span.dim() {
            break;
        }
        span = next;
    }
    if span.dim() == dim {
        gens.to_vec()
    } else {
        mm.iter()
            .map(|&i| {
                let mut c = Matrix::zeros(field, dim, 1);
                c.set(i, 0, field.one());
                RingElement { coords: c }
            })
            .collect()
    }
}

/// Minimal-polynomial analysis of a single basis element, used to explain a
/// failed nilpotency check (idempotent witness vs. honest non-nilpotence).
struct ElemAnalysis {
    field: FieldKind,
    /// powers[j] holds a^{j+1} as a coordinate column.
    powers: Vec<Matrix>,
    table: Vec<Matrix>,
    elem_index: usize,
    dim: usize,
}

impl ElemAnalysis {
    fn new(field: FieldKind, dim: usize, table: &[Matrix], i: usize) -> ElemAnalysis {
        let mul = &table[i];
        let mut cur = {
            let mut c = Matrix::zeros(field, dim, 1);
            c.set(i, 0, field.one());
            c
        };
        let mut powers = vec![cur.clone()];
        for _ in 0..=dim {
            cur = mul.mul(&cur);
            powers.push(cur.clone());
        }
        ElemAnalysis {
            field,
            powers,
            table: table.to_vec(),
            elem_index: i,
            dim,
        }
    }

    /// Returns a human-readable obstruction if e_i shows the algebra is not
    /// local (invertible claimed-ideal element or a nontrivial idempotent),
    /// None when e_i is nilpotent.
    fn locality_obstruction(&self) -> Option<String> {
        let field = self.field;
        // First linear dependence among a^1, a^2, ...: gives the minimal monic
        // relation t^{k+1} = sum_{j=1..k} c_j t^j satisfied by a (modulo t).
        for k in 1..self.powers.len() {
            let span = Matrix::from_columns(field, self.dim, &self.powers[..k]);
            let Ok(coeffs) = span.solve(&self.powers[k]) else {
                continue;
            };
            let mut poly = vec![field.zero(); k + 2];
            poly[k + 1] = field.one();
            for j in 1..=k {
                poly[j] = coeffs.get(j - 1, 0).neg();
            }
            let low = poly.iter().position(|c| !c.is_zero()).unwrap_or(k + 1);
            if low == k + 1 {
                return None; // annihilated by a power of t: nilpotent
            }
            if low == 0 {
                return Some(format!(
                    "basis element {} of the claimed maximal ideal is invertible",
                    self.elem_index
                ));
            }
            // poly = t^low * g with g(0) != 0 and deg g >= 1: k[a] splits and
            // e = (u*t^low)(a) is a nontrivial idempotent, where u*t^low + v*g = 1.
            let tk: Vec<Scalar> = {
                let mut t = vec![field.zero(); low + 1];
                t[low] = field.one();
                t
            };
            let g: Vec<Scalar> = poly[low..].to_vec();
            if let Some((u, _v)) = bezout(field, &tk, &g) {
                // e = u(a) * a^low = sum_j u_j a^{j+low}; powers[m] = a^{m+1}.
                let mut e = Matrix::zeros(field, self.dim, 1);
                for (j, c) in u.iter().enumerate() {
                    if !c.is_zero() {
                        e = e.add(&self.powers[j + low - 1].scale(c));
                    }
                }
                let e2 = self.mul_matrix_of(&e).mul(&e);
                if e2 == e && !e.is_zero() {
                    return Some(format!(
                        "nontrivial idempotent found in k[e_{}]",
                        self.elem_index
                    ));
                }
            }
            return Some(format!(
                "basis element {} of the claimed maximal ideal is not nilpotent",
                self.elem_index
            ));
        }
        None
    }

    fn mul_matrix_of(&self, a: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let c = a.get(i, 0);
            if !c.is_zero() {
                m = m.add(&self.table[i].scale(&c));
            }
        }
        m
    }
}

/// Extended Euclid for univariate polys (dense ascending coeffs): returns
/// (u, v) with u*a + v*b = 1, or None if gcd is not a unit.
fn bezout(field: FieldKind, a: &[Scalar], b: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
        while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
        p
    }
    fn is_zero(p: &[Scalar]) -> bool {
        p.iter().all(|c| c.is_zero())
    }
    fn sub_scaled(field: FieldKind, p: &mut Vec<Scalar>, q: &[Scalar], c: &Scalar, shift: usize) {
        while p.len() < q.len() + shift {
            p.push(field.zero());
        }
        for (i, qc) in q.iter().enumerate() {
            p[i + shift] = p[i + shift].sub(&c.mul(qc));
        }
    }
    fn divmod(field: FieldKind, a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut r = trim(a.to_vec());
        let b = trim(b.to_vec());
        let mut q = vec![field.zero(); a.len()];
        let db = b.len() - 1;
        let lead_inv = b.last().unwrap().inv();
        while !is_zero(&r) && r.len() - 1 >= db {
            let dr = r.len() - 1;
            let c = r.last().unwrap().mul(&lead_inv);
            q[dr - db] = q[dr - db].add(&c);
            sub_scaled(field, &mut r, &b, &c, dr - db);
            r = trim(r);
            if r.len() == 1 && r[0].is_zero() {
                break;
            }
        }
        (trim(q), trim(r))
    }

    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut u0 = vec![field.one()];
    let mut u1 = vec![field.zero()];
    let mut v0 = vec![field.zero()];
    let mut v1 = vec![field.one()];
    while !is_zero(&r1) {
        let (q, r) = divmod(field, &r0, &r1);
        let mul_sub = |x0: &[Scalar], x1: &[Scalar]| {
            // x0 - q * x1
            let mut prod = vec![field.zero(); q.len() + x1.len()];
            for (i, qc) in q.iter().enumerate() {
                for (j, xc) in x1.iter().enumerate() {
                    prod[i + j] = prod[i + j].add(&qc.mul(xc));
                }
            }
            let mut out = x0.to_vec();
            while out.len() < prod.len() {
                out.push(field.zero());
            }
            for (i, pc) in prod.iter().enumerate() {
                out[i] = out[i].sub(pc);
            }
            trim(out)
        };
        let nu = mul_sub(&u0, &u1);
        let nv = mul_sub(&v0, &v1);
        r0 = r1;
        r1 = r;
        u0 = std::mem::replace(&mut u1, nu);
        v0 = std::mem::replace(&mut v1, nv);
    }
    // r0 = gcd; need a nonzero constant.
    if r0.len() == 1 && !r0[0].is_zero() {
        let inv = r0[0].inv();
        let scale = |p: Vec<Scalar>| p.into_iter().map(|c| c.mul(&inv)).collect();
        Some((scale(u0), scale(v0)))
    } else {
        None
    }
}
