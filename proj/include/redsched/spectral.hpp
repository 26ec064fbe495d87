#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "redsched/designkit.hpp"

namespace redsched {

// Bipartite adjacency [[0, M], [M^T, 0]] of a square incidence matrix,
// stored dense row-major, size 2n x 2n.
struct AdjacencyMatrix {
    int n = 0;  // half-size
    std::vector<double> a;

    int size() const { return 2 * n; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * size() + j]; }
};

AdjacencyMatrix adjacency(const IncidenceStructure& m);

// Eigenvalues of a dense symmetric matrix by cyclic Jacobi sweeps.
// Converges when the off-diagonal Frobenius norm drops below
// 1e-13 * max(1, ||A||_F); returns values sorted descending.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

// Square roots of the Gram spectrum of M, sorted descending. Gram
// eigenvalues below 1e-9 * max(1, ||G||_F) are snapped to zero before
// the square root so rank-deficient structures report exact zeros.
std::vector<double> singular_values(const IncidenceStructure& m);

struct SpectralReport {
    std::vector<double> singular_values;  // nonincreasing, length n
    double lambda2 = 0;                   // second-largest singular value
    double gap = 0;                       // d - lambda2, clamped at 0
    std::optional<double> closed_form_gap;
    bool disconnected = false;            // lambda2 ties with d
};

// Requires M square and d-regular (all row and column sums d).
SpectralReport spectral_gap(const IncidenceStructure& m, int d);

// phi_m = sum_{l<d} e^{-j 2 pi m l / n}, m = 0..n-1.
std::vector<std::complex<double>> circulant_eigenvalues(int n, int d);

// d - sin(d pi / n) / sin(pi / n)
double rr_gap_closed_form(int n, int d);

// d - sqrt(d - 1)
double bibd_gap_closed_form(int d);

// M M^T == M^T M, checked in integer arithmetic.
bool is_normal(const IncidenceStructure& m);

}  // namespace redsched
