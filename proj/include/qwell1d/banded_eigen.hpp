#pragma once

#include <lapacke.h>

#include <string>
#include <vector>

#include "qwell1d/constants.hpp"

namespace qwell1d::banded {

// Symmetric banded matrix, upper triangle, LAPACK column-major band storage:
// entry (i, j) with 0 <= j - i <= bw lives at ab[j * (bw + 1) + (bw + i - j)].
struct SymBanded {
    int n = 0;
    int bw = 0;
    std::vector<double> ab;

    static SymBanded zeros(int n, int bw) {
        return {n, bw, std::vector<double>(static_cast<std::size_t>(n) * (bw + 1), 0.0)};
    }

    double& at(int i, int j) {  // requires i <= j <= i + bw
        return ab[static_cast<std::size_t>(j) * (bw + 1) + (bw + i - j)];
    }
    double at(int i, int j) const {
        return ab[static_cast<std::size_t>(j) * (bw + 1) + (bw + i - j)];
    }
};

struct EigenSolution {
    std::vector<double> values;   // ascending, size n_modes
    std::vector<double> vectors;  // column-major n x n_modes
};

// Lowest n_modes eigenpairs of the symmetric-definite pencil A x = lambda B x
// (B positive definite), both banded with the same bandwidth.  Wraps
// LAPACK dsbgvx; deterministic for fixed inputs.
inline EigenSolution solve_lowest(SymBanded A, SymBanded B, int n_modes) {
    require(A.n == B.n && A.bw == B.bw, "solve_lowest: pencil shape mismatch");
    require(n_modes >= 1 && n_modes <= A.n, "solve_lowest: need 1 <= n_modes <= n");

    const lapack_int n = A.n, ka = A.bw, ldab = A.bw + 1;
    EigenSolution sol;
    sol.values.assign(n, 0.0);
    sol.vectors.assign(static_cast<std::size_t>(n) * n_modes, 0.0);
    std::vector<double> q(static_cast<std::size_t>(n) * n);
    std::vector<lapack_int> ifail(n, 0);
    lapack_int m_found = 0;
    const double abstol = 2.0 * LAPACKE_dlamch('S');

    const lapack_int info = LAPACKE_dsbgvx(
        LAPACK_COL_MAJOR, 'V', 'I', 'U', n, ka, ka, A.ab.data(), ldab, B.ab.data(),
        ldab, q.data(), n, 0.0, 0.0, 1, n_modes, abstol, &m_found, sol.values.data(),
        sol.vectors.data(), n, ifail.data());

    if (info != 0) {
        if (info > n)
            throw numerical_error(
                "solve_lowest: right-hand-side matrix is not positive definite");
        std::string which;
        for (lapack_int i = 0; i < info; ++i)
            which += (i ? ", " : "") + std::to_string(ifail[i]);
        throw numerical_error("solve_lowest: eigenvector(s) failed to converge, mode index " +
                              which);
    }
    if (m_found < n_modes)
        throw numerical_error("solve_lowest: fewer eigenvalues found than requested");
    sol.values.resize(n_modes);
    return sol;
}

}  // namespace qwell1d::banded
