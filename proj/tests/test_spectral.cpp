#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "redsched/spectral.hpp"

using namespace redsched;

namespace {

IncidenceStructure identity_structure(int n) {
    std::vector<Block> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back(Block{{i}});
    return make_structure(n, 1, blocks);
}

IncidenceStructure all_ones(int n) {
    std::vector<Block> blocks;
    for (int i = 0; i < n; ++i) {
        Block b;
        for (int j = 0; j < n; ++j) b.members.push_back(j);
        blocks.push_back(b);
    }
    return make_structure(n, n, blocks);
}

}  // namespace

TEST_CASE("symmetric_eigenvalues on known matrices") {
    std::vector<double> a = {2, 1, 1, 2};
    auto eig = symmetric_eigenvalues(a, 2);
    CHECK(eig[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> diag = {5, 0, 0, 0, -2, 0, 0, 0, 1};
    auto e3 = symmetric_eigenvalues(diag, 3);
    CHECK(e3[0] == doctest::Approx(5.0));
    CHECK(e3[1] == doctest::Approx(1.0));
    CHECK(e3[2] == doctest::Approx(-2.0));
}

TEST_CASE("adjacency assembles the bipartite block matrix") {
    IncidenceStructure m = circulant_incidence(4, 2);
    AdjacencyMatrix adj = adjacency(m);
    CHECK(adj.size() == 8);
    for (int i = 0; i < 8; ++i) {
        double row = 0;
        for (int j = 0; j < 8; ++j) {
            CHECK(adj.at(i, j) == adj.at(j, i));
            row += adj.at(i, j);
        }
        CHECK(row == doctest::Approx(2.0));
    }
    // top-left and bottom-right blocks stay zero
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(adj.at(i, j) == 0.0);
            CHECK(adj.at(4 + i, 4 + j) == 0.0);
        }

    AdjacencyMatrix fano_adj = adjacency(fano_blocks());
    CHECK(fano_adj.size() == 14);
    for (int i = 0; i < 14; ++i) {
        double row = 0;
        for (int j = 0; j < 14; ++j) row += fano_adj.at(i, j);
        CHECK(row == doctest::Approx(3.0));
    }
}

TEST_CASE("singular values of the reference structures") {
    auto sv = singular_values(circulant_incidence(4, 2));
    CHECK(sv[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(sv[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(sv[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(sv[3] == doctest::Approx(0.0).epsilon(1e-9));

    auto fano = singular_values(fano_blocks());
    CHECK(fano[0] == doctest::Approx(3.0).epsilon(1e-10));
    for (int i = 1; i < 7; ++i)
        CHECK(fano[size_t(i)] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

    auto ones = singular_values(all_ones(5));
    CHECK(ones[0] == doctest::Approx(5.0).epsilon(1e-10));
    for (int i = 1; i < 5; ++i) CHECK(ones[size_t(i)] == 0.0);
}

TEST_CASE("bipartite adjacency spectrum is plus/minus the singular values") {
    for (const IncidenceStructure& m :
         {circulant_incidence(4, 2), fano_blocks(), circulant_incidence(7, 3)}) {
        AdjacencyMatrix adj = adjacency(m);
        auto eig = symmetric_eigenvalues(adj.a, adj.size());
        auto sv = singular_values(m);
        std::vector<double> expected;
        for (double s : sv) expected.push_back(s);
        for (auto it = sv.rbegin(); it != sv.rend(); ++it) expected.push_back(-*it);
        REQUIRE(eig.size() == expected.size());
        for (size_t i = 0; i < eig.size(); ++i)
            CHECK(eig[i] == doctest::Approx(expected[i]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("spectral_gap on the reference structures") {
    SpectralReport circ = spectral_gap(circulant_incidence(4, 2), 2);
    CHECK(circ.gap == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-9));
    CHECK_FALSE(circ.disconnected);

    SpectralReport fano = spectral_gap(fano_blocks(), 3);
    CHECK(fano.gap == doctest::Approx(3.0 - std::sqrt(2.0)).epsilon(1e-9));

    SpectralReport full = spectral_gap(all_ones(4), 4);
    CHECK(full.lambda2 == 0.0);
    CHECK(full.gap == doctest::Approx(4.0));

    // d=1 perfect matching: lambda2 = 1 = d, gap 0, disconnected
    SpectralReport matching = spectral_gap(identity_structure(5), 1);
    CHECK(matching.lambda2 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(matching.gap == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(matching.disconnected);

    // non-regular structures are rejected
    IncidenceStructure bad = circulant_incidence(5, 2);
    bad.blocks[0] = Block{{0, 2}};
    CHECK_THROWS_AS(spectral_gap(bad, 2), std::invalid_argument);
}

TEST_CASE("circulant eigenvalues phi_m") {
    auto phi = circulant_eigenvalues(4, 2);
    CHECK(phi[0].real() == doctest::Approx(2.0));
    CHECK(phi[0].imag() == doctest::Approx(0.0).scale(1.0));
    CHECK(phi[1].real() == doctest::Approx(1.0));
    CHECK(phi[1].imag() == doctest::Approx(-1.0));
    CHECK(std::abs(phi[2]) == doctest::Approx(0.0).scale(1.0));
    CHECK(phi[3].real() == doctest::Approx(1.0));
    CHECK(phi[3].imag() == doctest::Approx(1.0));

    auto full = circulant_eigenvalues(6, 6);
    CHECK(std::abs(full[0]) == doctest::Approx(6.0));
    for (int m = 1; m < 6; ++m)
        CHECK(std::abs(full[size_t(m)]) == doctest::Approx(0.0).scale(1.0));

    CHECK(std::abs(circulant_eigenvalues(7, 3)[1]) ==
          doctest::Approx(std::sin(3 * M_PI / 7) / std::sin(M_PI / 7)).epsilon(1e-12));
    CHECK(std::abs(circulant_eigenvalues(7, 3)[1]) == doctest::Approx(2.2470).epsilon(1e-4));
}

TEST_CASE("sorted |phi_m| equals the numeric singular values") {
    for (int d = 2; d <= 8; ++d) {
        int n = d * (d - 1) + 1;
        auto phi = circulant_eigenvalues(n, d);
        std::vector<double> mags;
        for (auto& c : phi) mags.push_back(std::abs(c));
        std::sort(mags.begin(), mags.end(), std::greater<double>());
        auto sv = singular_values(circulant_incidence(n, d));
        REQUIRE(sv.size() == mags.size());
        for (size_t i = 0; i < sv.size(); ++i)
            CHECK(sv[i] == doctest::Approx(mags[i]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("round-robin closed-form gap matches the numeric eigensolve") {
    CHECK(rr_gap_closed_form(4, 2) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rr_gap_closed_form(7, 3) == doctest::Approx(0.753020).epsilon(1e-5));

    for (int n = 2; n <= 16; ++n)
        for (int d = 2; d <= n; ++d) {
            double numeric = spectral_gap(circulant_incidence(n, d), d).gap;
            CHECK(numeric == doctest::Approx(rr_gap_closed_form(n, d)).epsilon(1e-9).scale(1.0));
        }
}

TEST_CASE("bibd closed-form gap matches every shipped design") {
    CHECK(bibd_gap_closed_form(3) == doctest::Approx(3.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(bibd_gap_closed_form(4) == doctest::Approx(4.0 - std::sqrt(3.0)).epsilon(1e-12));
    CHECK(bibd_gap_closed_form(2) == doctest::Approx(1.0).epsilon(1e-12));
    for (int d : {2, 3, 4, 5, 6, 8}) {
        double numeric = spectral_gap(known_bibd(d), d).gap;
        CHECK(numeric == doctest::Approx(bibd_gap_closed_form(d)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(bibd_gap_closed_form(1), std::invalid_argument);
}

TEST_CASE("bibd gap dominates round-robin gap and the trends are monotone") {
    double prev_bibd = 0;
    for (int d = 2; d <= 8; ++d) {
        int n = d * (d - 1) + 1;
        double rr = rr_gap_closed_form(n, d);
        double bibd = bibd_gap_closed_form(d);
        if (d >= 3) CHECK(bibd > rr);
        CHECK(bibd > prev_bibd);
        prev_bibd = bibd;
    }
    // round-robin gap decays toward zero along the sweep
    for (int d = 3; d <= 8; ++d)
        CHECK(rr_gap_closed_form(d * (d - 1) + 1, d) <
              rr_gap_closed_form((d - 1) * (d - 2) + 1, d - 1));
    CHECK(rr_gap_closed_form(57, 8) < 0.35);
}

TEST_CASE("is_normal") {
    CHECK(is_normal(circulant_incidence(4, 2)));
    CHECK(is_normal(fano_blocks()));
    IncidenceStructure broken = circulant_incidence(5, 2);
    broken.blocks[0] = Block{{0, 2}};  // breaks column regularity
    CHECK_FALSE(is_normal(broken));
}
