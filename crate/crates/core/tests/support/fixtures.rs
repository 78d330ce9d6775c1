//! Small problems with independently known answers.

/// `(c, A, b, bounds)` for `min cᵀx` subject to `Ax ≤ b`.
pub type Lp = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>, Vec<(f64, f64)>);

/// Small LPs with known bounded optima.
pub fn bundled_lps() -> Vec<Lp> {
    let inf = f64::INFINITY;
    vec![
        // textbook 2-variable maximization
        (vec![-3.0, -5.0], vec![vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]], vec![4.0, 12.0, 18.0], vec![(0.0, inf); 2]),
        // ≥ constraints as negated rows
        (vec![2.0, 3.0], vec![vec![-1.0, -1.0], vec![-1.0, 2.0]], vec![-4.0, 2.0], vec![(0.0, inf); 2]),
        // free variable with box on the other
        (vec![1.0, -1.0], vec![vec![-1.0, 1.0], vec![1.0, 1.0]], vec![1.0, 3.0], vec![(-inf, inf), (0.0, 5.0)]),
        // three variables, shifted lower bounds and a reflected one
        (
            vec![1.0, 2.0, -1.0],
            vec![vec![1.0, 1.0, 1.0], vec![-1.0, 2.0, 0.0], vec![0.0, -1.0, 1.0]],
            vec![6.0, 4.0, 2.0],
            vec![(-1.0, 3.0), (0.5, inf), (-inf, 2.5)],
        ),
        // degenerate vertex: three constraints through one point
        (vec![-1.0, -1.0], vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]], vec![1.0, 1.0, 2.0], vec![(0.0, inf); 2]),
        // three variables with equality written as two inequalities
        (
            vec![-1.0, -2.0, -3.0],
            vec![vec![1.0, 1.0, 1.0], vec![-1.0, -1.0, -1.0], vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 0.0]],
            vec![3.0, -3.0, 4.0, 1.0],
            vec![(0.0, inf); 3],
        ),
    ]
}

/// Two-dimensional SVM fixtures: (points, labels in ±1, C).
pub fn svm_toys() -> Vec<(Vec<[f64; 2]>, Vec<f64>, f64)> {
    vec![
        (
            vec![[0.0, 0.0], [1.0, 0.5], [0.5, 1.0], [3.0, 3.0], [2.5, 4.0], [4.0, 2.5]],
            vec![-1.0, -1.0, -1.0, 1.0, 1.0, 1.0],
            1.0,
        ),
        (
            vec![[0.0, 1.0], [1.0, 0.0], [1.5, 1.5], [1.0, 1.0], [2.0, 2.0], [0.5, 2.0], [2.5, 0.5]],
            vec![-1.0, -1.0, -1.0, 1.0, 1.0, 1.0, -1.0],
            0.5,
        ),
        (
            vec![[-1.0, 0.2], [-0.8, -0.5], [0.1, 0.9], [0.9, -0.1], [1.2, 0.4], [-0.2, -1.0], [0.3, 0.3], [-0.4, 0.6]],
            vec![-1.0, -1.0, 1.0, 1.0, 1.0, -1.0, 1.0, -1.0],
            2.0,
        ),
    ]
}
