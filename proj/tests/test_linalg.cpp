#include "hochlab/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hochlab;

namespace {

SparseMatrix random_matrix(std::size_t rows, std::size_t cols, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(-5, 5);
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (u(rng) < density) t.push_back({r, c, Rational(v(rng))});
    return SparseMatrix(rows, cols, std::move(t));
}

// Low-rank matrix as a product of two random factors.
SparseMatrix low_rank(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    return random_matrix(n, k, 0.6, rng).multiply(random_matrix(k, n, 0.6, rng));
}

}  // namespace

TEST(Linalg, IdentityAndZero) {
    EXPECT_EQ(rank(SparseMatrix::identity(2)), 2u);
    SparseMatrix zero(3, 4);
    EXPECT_EQ(rank(zero), 0u);
    EXPECT_EQ(kernel_basis(zero).size(), 4u);
    EXPECT_EQ(kernel_basis(SparseMatrix::identity(5)).size(), 0u);
}

TEST(Linalg, DuplicatesSummedAndZerosDropped) {
    SparseMatrix m(2, 2, {{0, 0, 1}, {0, 0, -1}, {1, 1, 2}, {1, 1, 3}});
    ASSERT_EQ(m.nonzeros(), 1u);
    EXPECT_EQ(m.entries()[0].value, 5);
    EXPECT_THROW(SparseMatrix(1, 1, {{1, 0, 1}}), ArgumentError);
}

TEST(Linalg, RankAgreesWithModularRank) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        auto m = (trial % 2 == 0) ? random_matrix(40, 40, 0.15, rng) : low_rank(40, 7 + trial, rng);
        auto r = rank(m);
        for (std::uint64_t p : {32003ull, 65537ull}) {
            auto rp = rank_mod_p(m, p);
            ASSERT_TRUE(rp.has_value());
            // rank mod p never exceeds the rational rank; for these primes it agrees
            EXPECT_LE(*rp, r);
            EXPECT_EQ(*rp, r) << "trial " << trial << " p=" << p;
        }
    }
}

TEST(Linalg, RankPlusNullity) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = random_matrix(15 + trial, 25, 0.2, rng);
        auto ker = kernel_basis(m);
        EXPECT_EQ(rank(m) + ker.size(), m.cols());
        for (auto& v : ker)
            for (auto& x : m.apply(v)) EXPECT_EQ(x, 0);
    }
}

TEST(Linalg, SolveRoundTrip) {
    std::mt19937_64 rng(5);
    auto m = low_rank(20, 6, rng);
    std::uniform_int_distribution<int> v(-4, 4);
    Vector x(20);
    for (auto& c : x) c = v(rng);
    auto b = m.apply(x);
    auto sol = solve(m, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m.apply(*sol), b);
    // a vector outside the image of a rank-deficient map
    Vector e(20);
    bool found = false;
    for (std::size_t k = 0; k < 20 && !found; ++k) {
        std::fill(e.begin(), e.end(), Rational(0));
        e[k] = 1;
        found = !solve(m, e).has_value();
    }
    EXPECT_TRUE(found);
}

TEST(Linalg, ExactRationalEntries) {
    SparseMatrix m(2, 2, {{0, 0, Rational(1, 3)}, {0, 1, Rational(1, 2)}, {1, 0, Rational(2, 3)}, {1, 1, 1}});
    EXPECT_EQ(rank(m), 1u);
    auto ker = kernel_basis(m);
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_EQ(m.apply(ker[0]), (Vector{0, 0}));
}

TEST(Quotient, BoundaryReducesToZero) {
    // chain complex Q -> Q^2 -> Q: 1 |-> (1,1), (a,b) |-> a-b... plus a free cycle
    SparseMatrix in(3, 1, {{0, 0, 1}, {1, 0, 1}});
    SparseMatrix out(1, 3, {{0, 0, 1}, {0, 1, -1}});
    QuotientPresentation h(in, out);
    EXPECT_EQ(h.dim(), 1u);
    EXPECT_TRUE(h.is_boundary({2, 2, 0}));
    EXPECT_FALSE(h.is_boundary({0, 0, 1}));
    EXPECT_FALSE(h.is_cycle({1, 0, 0}));
    EXPECT_THROW(h.reduce({1, 0, 0}), ContractViolation);
    auto c = h.reduce({3, 3, 5});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NE(c[0], 0);
    EXPECT_EQ(h.reduce({3, 3, 5}), h.reduce({0, 0, 5}));
}

TEST(Quotient, FreeFunction) {
    std::vector<Vector> cycles{{1, 0, 0}, {0, 1, 0}};
    std::vector<Vector> boundaries{{1, 1, 0}};
    auto c = quotient_reduce(cycles, boundaries, {2, 2, 0});
    for (auto& x : c) EXPECT_EQ(x, 0);
    EXPECT_THROW(quotient_reduce(cycles, boundaries, {0, 0, 1}), ContractViolation);
    EXPECT_THROW(QuotientPresentation(SparseMatrix(2, 1), SparseMatrix(1, 3)), ArgumentError);
}
