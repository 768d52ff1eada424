//! Linear algebra in two flavours: exact Gaussian elimination over the scalar
//! field for ranks, null spaces and solves, and a small dense complex-Hermitian
//! eigensolver (Jacobi rotations + Cholesky) for the numeric claims.

use num_complex::Complex64;

use crate::error::QslabError;
use crate::scalar::ScalarQ;

// ---------------------------------------------------------------------------
// exact matrices
// ---------------------------------------------------------------------------

/// Dense row-major matrix over ScalarQ.
#[derive(Clone, Debug, PartialEq)]
pub struct MatQ {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<ScalarQ>,
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatQ {
            rows,
            cols,
            a: vec![ScalarQ::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ScalarQ::one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &ScalarQ {
        &self.a[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut ScalarQ {
        &mut self.a[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ScalarQ) {
        self.a[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> MatQ {
        let mut t = MatQ::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    /// Conjugate transpose (entrywise complex conjugation).
    pub fn dagger(&self) -> MatQ {
        let mut t = MatQ::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).conj());
            }
        }
        t
    }

    pub fn matmul(&self, other: &MatQ) -> MatQ {
        assert_eq!(self.cols, other.rows);
        let mut out = MatQ::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.at(r, k);
                if x.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let y = other.at(k, c);
                    if y.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).clone() + x * y;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &MatQ) -> MatQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.a.len() {
            out.a[i] = &self.a[i] - &other.a[i];
        }
        out
    }

    pub fn eval(&self, q: f64) -> Result<Vec<Vec<Complex64>>, QslabError> {
        let mut out = vec![vec![Complex64::new(0.0, 0.0); self.cols]; self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[r][c] = self.at(r, c).eval(q)?.value;
            }
        }
        Ok(out)
    }
}

/// Result of exact row reduction: reduced row-echelon form with pivot columns.
pub struct Echelon {
    pub mat: MatQ,
    pub pivots: Vec<usize>,
}

/// Reduced row-echelon form, pivoting on the first nonzero column per row
/// (column order = given order, which callers arrange deterministically).
pub fn rref(mut m: MatQ) -> Echelon {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row >= m.rows {
            break;
        }
        // find a pivot in this column at or below `row`
        let mut pr = None;
        for r in row..m.rows {
            if !m.at(r, col).is_zero() {
                pr = Some(r);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        // swap into place
        if pr != row {
            for c in 0..m.cols {
                let tmp = m.at(pr, c).clone();
                let v = m.at(row, c).clone();
                m.set(pr, c, v);
                m.set(row, c, tmp);
            }
        }
        // scale pivot row to 1
        let inv = m.at(row, col).inv().expect("pivot is nonzero");
        for c in col..m.cols {
            let v = m.at(row, c) * &inv;
            m.set(row, c, v);
        }
        // eliminate the column everywhere else
        for r in 0..m.rows {
            if r == row || m.at(r, col).is_zero() {
                continue;
            }
            let f = m.at(r, col).clone();
            for c in col..m.cols {
                let v = m.at(r, c) - &(&f * m.at(row, c));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon { mat: m, pivots }
}

pub fn rank(m: MatQ) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right null space {x : M x = 0}, one column vector per free
/// column, in free-column order (deterministic for a fixed column order).
pub fn null_space(m: MatQ) -> Vec<Vec<ScalarQ>> {
    let cols = m.cols;
    let ech = rref(m);
    let piv = &ech.pivots;
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in piv {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut x = vec![ScalarQ::zero(); cols];
        x[free] = ScalarQ::one();
        for (r, &p) in piv.iter().enumerate() {
            // pivot var = -entry(r, free)
            x[p] = -ech.mat.at(r, free);
        }
        basis.push(x);
    }
    basis
}

/// Solve M x = b exactly. Returns None if inconsistent; picks the solution
/// with free variables set to zero.
pub fn solve(m: &MatQ, b: &[ScalarQ]) -> Option<Vec<ScalarQ>> {
    assert_eq!(m.rows, b.len());
    let mut aug = MatQ::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.at(r, c).clone());
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let ech = rref(aug);
    if ech.pivots.contains(&m.cols) {
        return None; // pivot in the constants column
    }
    let mut x = vec![ScalarQ::zero(); m.cols];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.mat.at(r, m.cols).clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// numeric: complex Hermitian eigensolver
// ---------------------------------------------------------------------------

pub type CMat = Vec<Vec<Complex64>>;

pub fn cmat_zeros(n: usize, m: usize) -> CMat {
    vec![vec![Complex64::new(0.0, 0.0); m]; n]
}

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = cmat_zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn cmat_dagger(a: &CMat) -> CMat {
    let (n, m) = (a.len(), a[0].len());
    let mut out = cmat_zeros(m, n);
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

fn max_offdiag(a: &CMat) -> f64 {
    let n = a.len();
    let mut m = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            m = m.max(a[i][j].norm());
        }
    }
    m
}

/// Eigenvalues of a complex Hermitian matrix by cyclic Jacobi rotations.
/// Returns the eigenvalues sorted ascending.
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let mut m = a.clone();
    let scale: f64 = m
        .iter()
        .flat_map(|r| r.iter().map(|x| x.norm()))
        .fold(0.0, f64::max)
        .max(1.0);
    let tol = 1e-14 * scale;
    for _sweep in 0..100 {
        if max_offdiag(&m) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p][q];
                let g = apq.norm();
                if g <= tol {
                    continue;
                }
                let phase = apq / g; // apq = g * phase
                let app = m[p][p].re;
                let aqq = m[q][q].re;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // unitary U = diag-phase * Givens; A <- U^dagger A U zeroes A[p][q]
                for k in 0..n {
                    let akp = m[k][p];
                    let akq = m[k][q];
                    m[k][p] = akp * c - phase.conj() * s * akq;
                    m[k][q] = akp * s + phase.conj() * c * akq;
                }
                for k in 0..n {
                    let apk = m[p][k];
                    let aqk = m[q][k];
                    m[p][k] = apk * c - phase * s * aqk;
                    m[q][k] = apk * s + phase * c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[i][i].re).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// Cholesky factor L (lower triangular, L L^dagger = A) of a Hermitian
/// positive definite matrix. Errors if a pivot is not strictly positive.
pub fn cholesky(a: &CMat, q: f64) -> Result<CMat, QslabError> {
    let n = a.len();
    let mut l = cmat_zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k].conj();
            }
            if i == j {
                if sum.re <= 0.0 || sum.im.abs() > 1e-9 * (1.0 + sum.re.abs()) {
                    return Err(QslabError::SingularGram { q });
                }
                l[i][j] = Complex64::new(sum.re.sqrt(), 0.0);
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Ok(l)
}

/// Solve L x = b with L lower triangular.
fn forward_solve(l: &CMat, b: &[Complex64]) -> Vec<Complex64> {
    let n = l.len();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}

/// Eigenvalues of the pencil (B, G): B x = lambda G x with B Hermitian and
/// G Hermitian positive definite, via C = L^{-1} B L^{-dagger}.
pub fn generalized_eigenvalues(b: &CMat, g: &CMat, q: f64) -> Result<Vec<f64>, QslabError> {
    let n = b.len();
    let l = cholesky(g, q)?;
    // Y = L^{-1} B  (solve column by column on B^T rows)
    let mut y = cmat_zeros(n, n);
    for j in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| b[i][j]).collect();
        let sol = forward_solve(&l, &col);
        for i in 0..n {
            y[i][j] = sol[i];
        }
    }
    // C = Y L^{-dagger}: C^dagger = L^{-1} Y^dagger, solve again
    let ydag = cmat_dagger(&y);
    let mut cdag = cmat_zeros(n, n);
    for j in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| ydag[i][j]).collect();
        let sol = forward_solve(&l, &col);
        for i in 0..n {
            cdag[i][j] = sol[i];
        }
    }
    let c = cmat_dagger(&cdag);
    Ok(hermitian_eigenvalues(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarQ;

    #[test]
    fn rref_and_nullspace() {
        // x + y = 0 over Q(s): null space is one-dimensional
        let mut m = MatQ::zeros(1, 2);
        m.set(0, 0, ScalarQ::one());
        m.set(0, 1, ScalarQ::q_pow(1));
        let ns = null_space(m);
        assert_eq!(ns.len(), 1);
        // verify: x = -q * t, y = t satisfies x + q y = 0
        let x = &ns[0];
        let check = &x[0] + &(&ScalarQ::q_pow(1) * &x[1]);
        assert!(check.is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut m = MatQ::zeros(2, 2);
        m.set(0, 0, ScalarQ::one());
        m.set(1, 1, ScalarQ::q_pow(2));
        let b = vec![ScalarQ::q_pow(1), ScalarQ::one()];
        let x = solve(&m, &b).unwrap();
        assert_eq!(x[0], ScalarQ::q_pow(1));
        assert_eq!(x[1], ScalarQ::q_pow(-2));

        let mut m2 = MatQ::zeros(2, 1);
        m2.set(0, 0, ScalarQ::one());
        m2.set(1, 0, ScalarQ::one());
        let b2 = vec![ScalarQ::one(), ScalarQ::q_pow(1)];
        assert!(solve(&m2, &b2).is_none());
    }

    #[test]
    fn jacobi_known_spectrum() {
        let a = vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
        ];
        let e = hermitian_eigenvalues(&a);
        assert!((e[0] - 1.0).abs() < 1e-12);
        assert!((e[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_complex_hermitian() {
        // [[0, -i],[i, 0]] has eigenvalues -1, 1
        let a = vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ];
        let e = hermitian_eigenvalues(&a);
        assert!((e[0] + 1.0).abs() < 1e-12);
        assert!((e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_trace_preserved_random() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in [3usize, 6, 9] {
            let mut a = cmat_zeros(n, n);
            for i in 0..n {
                a[i][i] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
                for j in (i + 1)..n {
                    let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    a[i][j] = z;
                    a[j][i] = z.conj();
                }
            }
            let tr: f64 = (0..n).map(|i| a[i][i].re).sum();
            let e = hermitian_eigenvalues(&a);
            let se: f64 = e.iter().sum();
            assert!((tr - se).abs() < 1e-9);
        }
    }

    #[test]
    fn generalized_diagonal_case() {
        let b = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)],
        ];
        let g = vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        let e = generalized_eigenvalues(&b, &g, 0.5).unwrap();
        assert!((e[0] - 0.5).abs() < 1e-12);
        assert!((e[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let g = vec![
            vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        assert!(cholesky(&g, 0.5).is_err());
    }
}
