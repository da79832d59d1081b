#include "hochlab/hochschild.hpp"
#include "hochlab/pois.hpp"

#include <gtest/gtest.h>

using namespace hochlab;

namespace {

std::size_t rank_at(const ComplexWindow& w, int p, int q) { return w.homology_at({p, q}).dim(); }

}  // namespace

TEST(NormalizedBasis, SingletonCriterion) {
    PoisOperad op(5);
    ComplexWindow w(op, {8, 16});
    ASSERT_EQ(w.basis(2, 4).size(), 1u);
    EXPECT_EQ(to_string(w.basis(2, 4)[0]), "[x1,x2]");
    EXPECT_TRUE(w.basis(2, 0).empty());
    ASSERT_EQ(w.basis(0, 0).size(), 1u);
    EXPECT_EQ(to_string(w.basis(0, 0)[0]), "e");
    EXPECT_TRUE(w.basis(1, 0).empty());
}

TEST(NormalizedBasis, AgreesWithCodegeneracyKernel) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        ComplexWindow w(op, {5, 4 * (n - 1)});
        for (int p = 0; p <= 5; ++p)
            for (int m = 0; m <= 4; ++m) {
                int q = m * (n - 1);
                auto kernel = codegeneracy_kernel(op, p, q);
                auto full = op.basis(p, q);
                ASSERT_EQ(kernel.size(), w.dim(p, q)) << "n=" << n << " p=" << p << " m=" << m;
                // every kernel vector is supported on singleton-free monomials
                for (auto& v : kernel)
                    for (std::size_t k = 0; k < v.size(); ++k)
                        if (v[k] != 0) EXPECT_FALSE(full[k].has_singleton());
            }
    }
}

TEST(NormalizedBasis, Band) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        for (int p = 1; p <= 8; ++p)
            for (int m = 0; m <= 4; ++m) {
                bool nonempty = !op.normalized_basis(p, m * (n - 1)).empty();
                EXPECT_EQ(nonempty, m + 1 <= p && p <= 2 * m) << "p=" << p << " m=" << m;
                EXPECT_EQ(op.normalized_vanishes(p, m * (n - 1)), !nonempty);
            }
    }
}

TEST(Boundary, SmallExamples) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        EXPECT_TRUE(hochschild_boundary(op.normalize("[x1,x2]")).is_zero());
        EXPECT_TRUE(hochschild_boundary(op.mu_element(2)).is_zero());
        EXPECT_EQ(hochschild_boundary(op.identity()), op.mu_element(2));
        EXPECT_TRUE(hochschild_boundary(op.unit()).is_zero());
    }
}

TEST(Boundary, SquaresToZeroNormalized) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        ComplexWindow w(op, {8, 4 * (n - 1)});
        for (int m = 0; m <= 4; ++m)
            for (int p = 0; p <= 7; ++p) {
                int q = m * (n - 1);
                auto dd = w.boundary(p + 1, q).multiply(w.boundary(p, q));
                EXPECT_TRUE(dd.is_zero()) << "n=" << n << " p=" << p << " q=" << q;
            }
    }
}

TEST(Boundary, SquaresToZeroFull) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        ComplexWindow w(op, {6, 3 * (n - 1)}, false);
        for (int m = 0; m <= 3; ++m)
            for (int p = 0; p <= 4; ++p) {
                int q = m * (n - 1);
                EXPECT_TRUE(w.boundary(p + 1, q).multiply(w.boundary(p, q)).is_zero()) << "p=" << p << " q=" << q;
            }
    }
}

TEST(Homology, NamedBidegrees) {
    PoisOperad p5(5), p6(6);
    ComplexWindow w5(p5, {8, 16}), w6(p6, {8, 20});
    EXPECT_EQ(rank_at(w5, 0, 0), 1u);
    EXPECT_EQ(rank_at(w5, 2, 4), 1u);
    EXPECT_EQ(rank_at(w5, 4, 8), 2u);
    EXPECT_EQ(rank_at(w5, 3, 8), 1u);
    EXPECT_EQ(rank_at(w6, 2, 5), 1u);
    EXPECT_EQ(rank_at(w6, 4, 10), 1u);
    EXPECT_EQ(rank_at(w5, 5, 4), 0u);
    EXPECT_EQ(rank_at(w6, 7, 5), 0u);
}

TEST(Homology, ClassOfBracketIsTheGenerator) {
    PoisOperad op(5);
    ComplexWindow w(op, {8, 16});
    const auto& h = w.homology_at({2, 4});
    auto coords = h.reduce(w.to_vector(op.normalize("[x1,x2]"), 2, 4));
    ASSERT_EQ(coords.size(), 1u);
    EXPECT_NE(coords[0], 0);
}

TEST(Homology, TotalDegreeSlices) {
    PoisOperad p5(5), p6(6);
    ComplexWindow w5(p5, {8, 16}), w6(p6, {8, 20});
    auto s5 = w5.total_degree_slice(7);
    ASSERT_EQ(s5.size(), 1u);
    EXPECT_EQ(s5.begin()->first, (Bidegree{5, 12}));
    EXPECT_EQ(s5.begin()->second, 2u);
    auto s6 = w6.total_degree_slice(10);
    ASSERT_EQ(s6.size(), 1u);
    EXPECT_EQ(s6.begin()->first, (Bidegree{5, 15}));
    EXPECT_EQ(s6.begin()->second, 1u);
    EXPECT_TRUE(w5.total_degree_slice(-1).empty());
    EXPECT_TRUE(w5.total_degree_slice(-5).empty());
}

TEST(Homology, FullAgreesWithNormalized) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        ComplexWindow norm(op, {6, 4 * (n - 1)});
        ComplexWindow full(op, {6, 4 * (n - 1)}, false);
        for (int m = 0; m <= 4; ++m)
            for (int p = 0; p <= 5; ++p) {
                int q = m * (n - 1);
                EXPECT_EQ(rank_at(full, p, q), rank_at(norm, p, q)) << "n=" << n << " p=" << p << " q=" << q;
            }
    }
}

TEST(Homology, WindowTooSmallNamesBidegrees) {
    PoisOperad op(5);
    ComplexWindow w(op, {3, 8});
    try {
        w.homology_at({3, 8});
        FAIL() << "expected WindowError";
    } catch (const WindowError& e) {
        EXPECT_NE(std::string(e.what()).find("(-4,8)"), std::string::npos) << e.what();
    }
}

TEST(Homology, AssociativeOperad) {
    AssocOperad op;
    ComplexWindow full(op, {6, 0}, false);
    EXPECT_EQ(rank_at(full, 0, 0), 1u);
    for (int p = 1; p <= 5; ++p) EXPECT_EQ(rank_at(full, p, 0), 0u) << "p=" << p;
    ComplexWindow norm(op, {6, 0});
    EXPECT_EQ(rank_at(norm, 0, 0), 1u);
    EXPECT_EQ(norm.dim(3, 0), 0u);
}

TEST(Window, PrefetchInParallelMatchesSerial) {
    PoisOperad op(6);
    ComplexWindow a(op, {7, 15}), b(op, {7, 15});
    std::vector<Bidegree> bs;
    for (int m = 1; m <= 3; ++m)
        for (int p = 0; p <= 6; ++p) bs.push_back({p, m * 5});
    a.prefetch(bs, 4);
    for (auto& x : bs) EXPECT_EQ(a.boundary(x.p, x.q), b.boundary(x.p, x.q));
}
