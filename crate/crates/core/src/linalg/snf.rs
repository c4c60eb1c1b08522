use super::IntRing;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<R> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<R>,
}

impl<R: IntRing> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows);
        let mut out: Matrix<R> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> R {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut prev = R::one();
        let mut neg = false;
        for k in 0..n {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return R::zero();
                };
                m.swap_rows(k, p);
                neg = !neg;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j).clone() * m.get(k, k).clone()
                        - m.get(i, k).clone() * m.get(k, j).clone())
                        / prev.clone();
                    m.set(i, j, v);
                }
                m.set(i, k, R::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = if n == 0 { R::one() } else { m.get(n - 1, n - 1).clone() };
        if neg {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &R) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j).clone() + f.clone() * s.clone();
                self.set(dst, j, v);
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &R) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst).clone() + f.clone() * s.clone();
                self.set(i, dst, v);
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }
}

/// Smith form `u * a * v = d` with `d` diagonal, `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct Snf<R> {
    /// Nonzero diagonal entries, all positive.
    pub factors: Vec<R>,
    pub d: Matrix<R>,
    pub u: Matrix<R>,
    pub v: Matrix<R>,
}

impl<R: IntRing> Snf<R> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Row/column operations are mirrored into `u`/`v` only when tracking.
struct Reducer<R> {
    d: Matrix<R>,
    u: Option<Matrix<R>>,
    v: Option<Matrix<R>>,
}

impl<R: IntRing> Reducer<R> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }
    fn add_row(&mut self, dst: usize, src: usize, f: &R) {
        self.d.add_row(dst, src, f);
        if let Some(u) = &mut self.u {
            u.add_row(dst, src, f);
        }
    }
    fn add_col(&mut self, dst: usize, src: usize, f: &R) {
        self.d.add_col(dst, src, f);
        if let Some(v) = &mut self.v {
            v.add_col(dst, src, f);
        }
    }
    fn negate_row(&mut self, r: usize) {
        self.d.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
    }

    fn run(&mut self) -> Vec<R> {
        let (rows, cols) = (self.d.rows, self.d.cols);
        let mut factors = Vec::new();
        for t in 0..rows.min(cols) {
            loop {
                // smallest nonzero entry in the trailing block becomes the pivot
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let e = self.d.get(i, j);
                        if e.is_zero() {
                            continue;
                        }
                        if best.map_or(true, |(bi, bj)| e.abs() < self.d.get(bi, bj).abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return factors;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.d.get(t, t).clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    let e = self.d.get(i, t).clone();
                    if !e.is_zero() {
                        let q = e.div_floor(&p);
                        self.add_row(i, t, &-q);
                        dirty |= !self.d.get(i, t).is_zero();
                    }
                }
                for j in t + 1..cols {
                    let e = self.d.get(t, j).clone();
                    if !e.is_zero() {
                        let q = e.div_floor(&p);
                        self.add_col(j, t, &-q);
                        dirty |= !self.d.get(t, j).is_zero();
                    }
                }
                if dirty {
                    continue;
                }
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.d.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &R::one()),
                    None => break,
                }
            }
            if self.d.get(t, t).is_negative() {
                self.negate_row(t);
            }
            factors.push(self.d.get(t, t).clone());
        }
        factors
    }
}

pub fn smith_normal_form<R: IntRing>(a: &Matrix<R>) -> Snf<R> {
    let mut r = Reducer {
        d: a.clone(),
        u: Some(Matrix::identity(a.rows)),
        v: Some(Matrix::identity(a.cols)),
    };
    let factors = r.run();
    Snf { factors, d: r.d, u: r.u.unwrap(), v: r.v.unwrap() }
}

/// Invariant factors only, skipping the transforms.
pub fn invariant_factors<R: IntRing>(a: &Matrix<R>) -> Vec<R> {
    Reducer { d: a.clone(), u: None, v: None }.run()
}
