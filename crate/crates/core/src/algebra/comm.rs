use num_traits::{One, Zero};

use crate::error::{ensure_dim, Result};
use crate::exactlin::{axpy, int, solve_homogeneous, unit, zeros, Matrix, Scalar, Subspace, Tensor3, Vector};
use crate::report::{Axiom, ValidationReport};

/// A finite-dimensional unital commutative algebra over the rationals, given
/// by structure constants: `e_i · e_j = Σ_k mult[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    unit: Vector,
    mult: Tensor3,
}

impl CommAlgebra {
    pub fn new(unit: Vector, mult: Tensor3) -> Result<Self> {
        let n = unit.len();
        let [a, b, c] = mult.dims();
        ensure_dim("base multiplication (slot 1)", n, a)?;
        ensure_dim("base multiplication (slot 2)", n, b)?;
        ensure_dim("base multiplication (slot 3)", n, c)?;
        Ok(CommAlgebra { unit, mult })
    }

    /// `Q`, one-dimensional.
    pub fn rationals() -> Self {
        let mut mult = Tensor3::zeros(1, 1, 1);
        mult.set(0, 0, 0, int(1));
        CommAlgebra {
            unit: vec![int(1)],
            mult,
        }
    }

    /// `Q[t]/(t^n)` with basis `1, t, …, t^{n-1}`.
    pub fn truncated_polynomials(n: usize) -> Self {
        assert!(n >= 1);
        let mut mult = Tensor3::zeros(n, n, n);
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    mult.set(i, j, i + j, int(1));
                }
            }
        }
        CommAlgebra { unit: unit(n, 0), mult }
    }

    /// The dual numbers `Q[ε]/(ε²)`, basis `1, ε`.
    pub fn dual_numbers() -> Self {
        Self::truncated_polynomials(2)
    }

    /// `Q ⊕ V` with `V` of dimension `k` and `V · V = 0`.
    pub fn square_zero(k: usize) -> Self {
        let n = k + 1;
        let mut mult = Tensor3::zeros(n, n, n);
        mult.set(0, 0, 0, int(1));
        for i in 1..n {
            mult.set(0, i, i, int(1));
            mult.set(i, 0, i, int(1));
        }
        CommAlgebra { unit: unit(n, 0), mult }
    }

    /// `Q^n` with componentwise product; basis of orthogonal idempotents.
    pub fn split(n: usize) -> Self {
        let mut mult = Tensor3::zeros(n, n, n);
        for i in 0..n {
            mult.set(i, i, i, int(1));
        }
        CommAlgebra {
            unit: vec![int(1); n],
            mult,
        }
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mult(&self) -> &Tensor3 {
        &self.mult
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        self.mult.fiber(i, j)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                axpy(&mut out, &(x * y), self.mult.fiber(i, j));
            }
        }
        out
    }

    /// Multiplication by `a` as an operator on `A`.
    pub fn mult_operator(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(a, &unit(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn basis_operator(&self, i: usize) -> Matrix {
        self.mult_operator(&unit(self.dim(), i))
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::new();
        for i in 0..n {
            for j in 0..n {
                report.check(
                    self.mult.fiber(i, j) == self.mult.fiber(j, i),
                    Axiom::Commutativity,
                    &[i, j],
                );
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mult.fiber(i, j).to_vec();
                for k in 0..n {
                    let ek = unit(n, k);
                    let lhs = self.mul(&ij, &ek);
                    let rhs = self.mul(&unit(n, i), self.mult.fiber(j, k));
                    report.check(lhs == rhs, Axiom::Associativity, &[i, j, k]);
                }
            }
        }
        for i in 0..n {
            let ei = unit(n, i);
            report.check(self.mul(&self.unit, &ei) == ei, Axiom::Unit, &[i]);
        }
        report
    }

    /// Checks the Leibniz rule `D(e_i e_j) = e_i D(e_j) + D(e_i) e_j`.
    pub fn derivation_report(&self, d: &Matrix) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::new();
        if d.rows() != n || d.cols() != n {
            report.push(Axiom::DerivationLeibniz, &[]);
            return report;
        }
        for i in 0..n {
            for j in i..n {
                report.check(
                    self.leibniz_defect(d, i, j).iter().all(Zero::is_zero),
                    Axiom::DerivationLeibniz,
                    &[i, j],
                );
            }
        }
        report
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        self.derivation_report(d).is_valid()
    }

    fn leibniz_defect(&self, d: &Matrix, i: usize, j: usize) -> Vector {
        let n = self.dim();
        let lhs = d.apply(self.mult.fiber(i, j));
        let a = self.mul(&unit(n, i), &d.column(j));
        let b = self.mul(&d.column(i), &unit(n, j));
        lhs.iter().zip(a.iter().zip(&b)).map(|(l, (x, y))| l - x - y).collect()
    }

    /// A basis of `Der_K(A)`, the solution space of the Leibniz system.
    ///
    /// Unknowns are the entries of `D` in row-major order; the returned basis
    /// is the canonical RREF basis of the solution space.
    pub fn derivations(&self) -> Vec<Matrix> {
        let n = self.dim();
        let sol = solve_homogeneous(n * n, |u| {
            let d = Matrix::from_fn(n, n, |r, c| u[r * n + c].clone());
            let mut out = Vec::new();
            for i in 0..n {
                for j in i..n {
                    out.extend(self.leibniz_defect(&d, i, j));
                }
            }
            out
        });
        sol.basis()
            .iter()
            .map(|v| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
            .collect()
    }

    /// The derivation `a·D : b ↦ a D(b)`.
    pub fn scale_derivation(&self, a: &[Scalar], d: &Matrix) -> Matrix {
        self.mult_operator(a).mul(d)
    }

    /// The nilradical, computed as the radical of the trace form
    /// `(x, y) ↦ tr(L_{xy})` (valid in characteristic zero).
    pub fn nilradical(&self) -> Subspace {
        let n = self.dim();
        let gram = Matrix::from_fn(n, n, |i, j| {
            let op = self.mult_operator(self.mult.fiber(i, j));
            (0..n).fold(Scalar::zero(), |acc, k| acc + op.get(k, k))
        });
        gram.kernel()
    }

    /// The algebra map `A → Q` with kernel the nilradical, when `A` is local
    /// with residue field `Q`. Returned as the values `χ(e_i)`.
    pub fn augmentation(&self) -> Option<Vector> {
        let n = self.dim();
        let rad = self.nilradical();
        if rad.rank() + 1 != n {
            return None;
        }
        // χ vanishes on rad and χ(1) = 1.
        let mut rows: Vec<Vector> = rad.basis().to_vec();
        rows.push(self.unit.clone());
        let m = Matrix::from_rows(n, rows);
        let mut rhs = zeros(n);
        rhs[n - 1] = Scalar::one();
        let chi = crate::exactlin::solve(&m, &rhs)?;
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let prod: Scalar = self.mult.fiber(i, j).iter().zip(&chi).map(|(c, x)| c * x).sum();
                prod == &chi[i] * &chi[j]
            })
        });
        ok.then_some(chi)
    }
}
