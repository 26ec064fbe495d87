#include "redsched/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace redsched {

AdjacencyMatrix adjacency(const IncidenceStructure& m) {
    if (!m.is_square())
        throw std::invalid_argument("adjacency requires a square incidence structure");
    AdjacencyMatrix adj;
    adj.n = m.n;
    int size = 2 * m.n;
    adj.a.assign(static_cast<size_t>(size) * size, 0.0);
    for (int j = 0; j < m.b(); ++j)
        for (int v : m.blocks[static_cast<size_t>(j)].members) {
            adj.a[static_cast<size_t>(j) * size + (m.n + v)] = 1.0;
            adj.a[static_cast<size_t>(m.n + v) * size + j] = 1.0;
        }
    return adj;
}

namespace {

double off_diag_norm(const std::vector<double>& a, int n) {
    double s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = a[static_cast<size_t>(i) * n + j];
            s += 2 * v * v;
        }
    return std::sqrt(s);
}

double frobenius(const std::vector<double>& a) {
    double s = 0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

// One Jacobi rotation zeroing a[p][q].
void rotate(std::vector<double>& a, int n, int p, int q) {
    size_t N = static_cast<size_t>(n);
    double apq = a[p * N + q];
    if (apq == 0.0) return;
    double theta = (a[q * N + q] - a[p * N + p]) / (2.0 * apq);
    double t = (theta >= 0 ? 1.0 : -1.0) /
               (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    double c = 1.0 / std::sqrt(t * t + 1.0);
    double s = t * c;
    double tau = s / (1.0 + c);
    double app = a[p * N + p], aqq = a[q * N + q];
    a[p * N + p] = app - t * apq;
    a[q * N + q] = aqq + t * apq;
    a[p * N + q] = 0.0;
    a[q * N + p] = 0.0;
    for (int r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        double arp = a[r * N + p], arq = a[r * N + q];
        a[r * N + p] = arp - s * (arq + tau * arp);
        a[p * N + r] = a[r * N + p];
        a[r * N + q] = arq + s * (arp - tau * arq);
        a[q * N + r] = a[r * N + q];
    }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    if (n < 1 || a.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("symmetric_eigenvalues: bad dimensions");
    const double tol = 1e-13 * std::max(1.0, frobenius(a));
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diag_norm(a, n) <= tol) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                rotate(a, n, p, q);
    }
    std::vector<double> eig(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = a[static_cast<size_t>(i) * n + i];
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

std::vector<double> singular_values(const IncidenceStructure& m) {
    int n = m.n;
    // Gram G = M^T M, integer entries: G[u][v] = #blocks containing both.
    std::vector<double> gram(static_cast<size_t>(n) * n, 0.0);
    for (const Block& blk : m.blocks)
        for (int u : blk.members)
            for (int v : blk.members)
                gram[static_cast<size_t>(u) * n + v] += 1.0;
    double snap = 1e-9 * std::max(1.0, frobenius(gram));
    std::vector<double> eig = symmetric_eigenvalues(std::move(gram), n);
    std::vector<double> sv(eig.size());
    for (size_t i = 0; i < eig.size(); ++i)
        sv[i] = eig[i] <= snap ? 0.0 : std::sqrt(eig[i]);
    return sv;
}

SpectralReport spectral_gap(const IncidenceStructure& m, int d) {
    if (!m.is_square())
        throw std::invalid_argument("spectral_gap requires a square incidence structure");
    for (int r : m.row_sums())
        if (r != d) throw std::invalid_argument("spectral_gap: structure is not row d-regular");
    for (int c : m.column_sums())
        if (c != d) throw std::invalid_argument("spectral_gap: structure is not column d-regular");
    SpectralReport rep;
    rep.singular_values = singular_values(m);
    rep.lambda2 = rep.singular_values.size() > 1 ? rep.singular_values[1] : 0.0;
    rep.disconnected = rep.lambda2 > d - 1e-9;
    rep.gap = std::max(0.0, d - rep.lambda2);
    return rep;
}

std::vector<std::complex<double>> circulant_eigenvalues(int n, int d) {
    if (d < 1 || d > n)
        throw std::invalid_argument("circulant_eigenvalues requires 1 <= d <= n");
    std::vector<std::complex<double>> phi(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) {
        std::complex<double> sum = 0;
        for (int l = 0; l < d; ++l)
            sum += std::polar(1.0, -2.0 * M_PI * m * l / n);
        phi[static_cast<size_t>(m)] = sum;
    }
    return phi;
}

double rr_gap_closed_form(int n, int d) {
    if (n < 2 || d < 1 || d > n)
        throw std::invalid_argument("rr_gap_closed_form requires n >= 2, 1 <= d <= n");
    return d - std::sin(d * M_PI / n) / std::sin(M_PI / n);
}

double bibd_gap_closed_form(int d) {
    if (d < 2) throw std::invalid_argument("bibd_gap_closed_form requires d >= 2");
    return d - std::sqrt(static_cast<double>(d) - 1.0);
}

bool is_normal(const IncidenceStructure& m) {
    if (!m.is_square()) return false;
    int n = m.n;
    std::vector<int> mmt(static_cast<size_t>(n) * n, 0);  // block x block overlaps
    std::vector<int> mtm(static_cast<size_t>(n) * n, 0);  // object co-occurrence
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mmt[static_cast<size_t>(i) * n + j] =
                block_overlap(m.blocks[static_cast<size_t>(i)], m.blocks[static_cast<size_t>(j)]);
    for (const Block& blk : m.blocks)
        for (int u : blk.members)
            for (int v : blk.members) ++mtm[static_cast<size_t>(u) * n + v];
    return mmt == mtm;
}

}  // namespace redsched
