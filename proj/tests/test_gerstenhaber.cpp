#include "hochlab/gerstenhaber.hpp"
#include "hochlab/pois.hpp"

#include <gtest/gtest.h>

using namespace hochlab;

TEST(Psi, IotaIotaOddN) {
    PoisOperad op(5);
    auto iota = op.normalize("[x1,x2]");
    auto psi = psi_bracket(iota, iota);
    // p = r = 2, q = s = 2: both sums carry the signs (+, -)
    auto expected = Rational(2) * (compose(iota, 2, iota) - compose(iota, 1, iota));
    EXPECT_EQ(psi, expected);
    EXPECT_EQ(psi, Rational(-2) * op.normalize("[[x1,x3],x2]"));
    EXPECT_EQ(psi.arity(), 3);
    EXPECT_EQ(psi.degree(), 8);
    EXPECT_TRUE(hochschild_boundary(psi).is_zero());
}

TEST(Psi, IotaIotaEvenNVanishes) {
    PoisOperad op(6);
    auto iota = op.normalize("[x1,x2]");
    EXPECT_TRUE(psi_bracket(iota, iota).is_zero());
}

TEST(Psi, FormulaLevelAntisymmetry) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        auto rep = verify_antisymmetry(op, 3, 2 * (n - 1), 300, 17);
        EXPECT_TRUE(rep.pass) << rep.first_failure;
        EXPECT_GT(rep.checks, 100u);
    }
}

TEST(Psi, PrintedFirstExponentBreaksAntisymmetry) {
    // With (q-1)(p-i) in place of (r-1)(p-i) the x o_i y terms of Psi(x,y)
    // and Psi(y,x) no longer cancel.
    PoisOperad op(5);
    auto rep = verify_antisymmetry(op, 3, 8, 300, 17, EpsilonReading::Printed);
    EXPECT_FALSE(rep.pass);
}

TEST(Psi, ReadingsAgreeWhenDegreesMatchArity) {
    // (q-1) = (r-1) mod 2 whenever q = r mod 2
    SignExponents a{3, 2, 4, 6, EpsilonReading::Proof}, b{3, 2, 4, 6, EpsilonReading::Printed};
    for (int i = 1; i <= 3; ++i) EXPECT_EQ(sign_of_parity(a.eps(i)), sign_of_parity(b.eps(i)));
}

TEST(Psi, MultiplicationGivesTheDifferential) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        std::map<std::pair<int, int>, int> signs;
        auto rep = verify_mu2_boundary(op, 4, 3 * (n - 1), &signs);
        EXPECT_TRUE(rep.pass) << rep.first_failure;
        EXPECT_GE(rep.checks, 7u);
        EXPECT_FALSE(signs.empty());
    }
    PoisOperad op(5);
    std::size_t nonzero = 0;
    for (auto& m : op.normalized_basis(3, 8)) {
        Element x(op, m);
        auto dx = hochschild_boundary(x);
        if (dx.is_zero()) continue;
        ++nonzero;
        auto psi = psi_bracket(op.mu_element(2), x);
        EXPECT_TRUE(psi == dx || psi == -dx) << to_string(m);
    }
    EXPECT_GT(nonzero, 0u);
}

TEST(Psi, ChainLevelLeibniz) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        auto rep = verify_leibniz(op, 6, 5 * (n - 1));
        EXPECT_TRUE(rep.pass) << "n=" << n << ": " << rep.first_failure;
        EXPECT_GT(rep.checks, 600u);
    }
}

TEST(Psi, LeibnizOddNInTotalDegreeForm) {
    // d Psi(x,y) = Psi(dx,y) + (-1)^{q+1} Psi(x,dy)
    PoisOperad op(5);
    std::size_t checked = 0;
    for (int p = 1; p <= 4; ++p)
        for (int r = 1; p + r <= 6; ++r)
            for (int m1 = 0; m1 <= 3; ++m1)
                for (int m2 = 0; m2 <= 3; ++m2)
                    for (auto& a : op.normalized_basis(p, 4 * m1))
                        for (auto& b : op.normalized_basis(r, 4 * m2)) {
                            Element x(op, a), y(op, b);
                            int q = 4 * m1 - p;
                            EXPECT_EQ(hochschild_boundary(psi_bracket(x, y)),
                                      psi_bracket(hochschild_boundary(x), y) +
                                          Rational(sign_of_parity(q + 1)) * psi_bracket(x, hochschild_boundary(y)));
                            ++checked;
                        }
    EXPECT_GT(checked, 20u);
}

TEST(Psi, Errors) {
    PoisOperad op(5), other(5);
    auto mixed = op.normalize("x1*x2 + [x1,x2]");
    EXPECT_THROW(psi_bracket(mixed, op.identity()), ArgumentError);
    EXPECT_THROW(cup_product(op.identity(), mixed), ArgumentError);
    EXPECT_THROW(psi_bracket(op.identity(), other.identity()), ArgumentError);
    EXPECT_THROW(psi_bracket(op.unit(), op.unit()), ArgumentError);
}

TEST(Cup, Examples) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        EXPECT_EQ(cup_product(op.mu_element(2), op.mu_element(2)), op.normalize("x1*x2*x3*x4"));
        auto iota = op.normalize("[x1,x2]");
        auto sq = cup_product(iota, iota);
        auto target = op.normalize("[x1,x2]*[x3,x4]");
        EXPECT_TRUE(sq == target || sq == -target) << sq.to_string();
        for (int p = 0; p <= 3; ++p)
            for (auto& m : op.basis(p)) {
                Element x(op, m);
                EXPECT_EQ(cup_product(op.unit(), x), x);
                EXPECT_EQ(cup_product(x, op.unit()), x);
            }
    }
}

TEST(Cup, LeibnizWithDifferential) {
    // Without the Koszul factor the cup product satisfies
    // d(x.y) = dx.y + (-1)^p x.dy; with (-1)^{ps} this becomes
    // d(x cup y) = (-1)^s dx cup y + x cup dy, s the total degree of y.
    for (int n : {5, 6}) {
        PoisOperad op(n);
        int d = n - 1;
        for (int p = 0; p <= 3; ++p)
            for (int r = 0; r <= 3; ++r)
                for (int m1 = 0; m1 <= 2; ++m1)
                    for (int m2 = 0; m2 <= 2; ++m2)
                        for (auto& a : op.normalized_basis(p, m1 * d))
                            for (auto& b : op.normalized_basis(r, m2 * d)) {
                                Element x(op, a), y(op, b);
                                int s = m2 * d - r;
                                EXPECT_EQ(hochschild_boundary(cup_product(x, y)),
                                          Rational(sign_of_parity(s)) * cup_product(hochschild_boundary(x), y) +
                                              cup_product(x, hochschild_boundary(y)))
                                    << to_string(a) << " " << to_string(b);
                            }
    }
}

TEST(Homology, WellDefinedness) {
    PoisOperad op(5);
    ComplexWindow w(op, {8, 16});
    auto iota = basis_class(w, {2, 4}, 0);
    for (Bidegree b : {Bidegree{3, 8}, Bidegree{4, 8}}) {
        const auto& h = w.homology_at(b);
        for (auto& z : h.cycles()) {
            auto x = w.from_vector(b.p, b.q, z);
            auto psi = psi_bracket(iota.representative, x);
            EXPECT_TRUE(hochschild_boundary(psi).is_zero());
        }
        // boundaries bracket to boundaries
        for (auto& m : w.basis(b.p - 1, b.q)) {
            auto bd = hochschild_boundary(Element(op, m));
            if (bd.is_zero()) continue;
            auto psi = psi_bracket(iota.representative, bd);
            auto c = make_class(w, psi, b.q + 4);
            EXPECT_TRUE(c.is_zero()) << to_string(m);
        }
    }
}

TEST(Homology, LawsOddN) {
    PoisOperad op(5);
    ComplexWindow w(op, {8, 16});
    std::size_t triples = 0;
    auto rep = verify_homology_laws(w, 8, &triples);
    EXPECT_TRUE(rep.pass) << rep.first_failure;
    EXPECT_GE(triples, 10u);
}

TEST(Homology, LawsEvenN) {
    PoisOperad op(6);
    ComplexWindow w(op, {8, 20});
    auto rep = verify_homology_laws(w, 8);
    EXPECT_TRUE(rep.pass) << rep.first_failure;
    EXPECT_GT(rep.checks, 5u);
}

TEST(Homology, BracketOutsideWindowNamesBidegrees) {
    PoisOperad op(5);
    ComplexWindow w(op, {4, 8});
    auto iota = basis_class(w, {2, 4}, 0);
    auto big = basis_class(w, {3, 8}, 0);
    try {
        bracket_on_homology(w, iota, big);
        FAIL() << "expected WindowError";
    } catch (const WindowError& e) {
        EXPECT_NE(std::string(e.what()).find("(-4,12)"), std::string::npos) << e.what();
    }
}
