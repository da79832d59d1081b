#include "hochlab/pois.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hochlab;

namespace {

// Coefficients of prod_{i=1}^{p-1} (1 + i t): the Poincare polynomial of
// Conf(R^n, p) in the variable t = t^{n-1}.
std::vector<long long> poincare_coefficients(int p) {
    std::vector<long long> c{1};
    for (int i = 1; i <= p - 1; ++i) {
        std::vector<long long> next(c.size() + 1, 0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k];
            next[k + 1] += c[k] * i;
        }
        c = next;
    }
    return c;
}

std::vector<std::string> names(const std::vector<Monomial>& ms) {
    std::vector<std::string> out;
    for (auto& m : ms) out.push_back(to_string(m));
    return out;
}

}  // namespace

TEST(PoisBasis, ArityTwo) {
    PoisOperad op(5);
    EXPECT_EQ(names(op.basis(2)), (std::vector<std::string>{"x1*x2", "[x1,x2]"}));
    EXPECT_EQ(names(op.basis(0)), (std::vector<std::string>{"e"}));
    EXPECT_EQ(names(op.basis(1)), (std::vector<std::string>{"x1"}));
}

TEST(PoisBasis, DimensionsMatchPoincarePolynomial) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        for (int p = 0; p <= 7; ++p) {
            long long factorial = 1;
            for (int k = 2; k <= p; ++k) factorial *= k;
            EXPECT_EQ(static_cast<long long>(op.basis(p).size()), factorial) << "n=" << n << " p=" << p;
            auto coeffs = poincare_coefficients(p);
            for (int m = 0; m < static_cast<int>(coeffs.size()); ++m) {
                auto graded = op.basis(p, m * (n - 1)).size();
                EXPECT_EQ(static_cast<long long>(graded), coeffs[static_cast<std::size_t>(m)]);
                EXPECT_EQ(Integer(static_cast<unsigned long>(graded)), stirling_first_unsigned(p, p - m));
            }
        }
    }
}

TEST(PoisBasis, FourLettersTwoBrackets) {
    EXPECT_EQ(PoisOperad(5).basis(4, 8).size(), 11u);
    EXPECT_EQ(PoisOperad(6).basis(4, 10).size(), 11u);
}

TEST(PoisBasis, DegreeNotMultipleIsEmpty) {
    EXPECT_TRUE(PoisOperad(5).basis(3, 3).empty());
    EXPECT_TRUE(PoisOperad(5).basis(3, -4).empty());
}

TEST(PoisBasis, Determinism) {
    PoisOperad a(6), b(6);
    EXPECT_EQ(a.basis(5), b.basis(5));
}

TEST(PoisNormalize, AntisymmetryBothParities) {
    PoisOperad p5(5), p6(6);
    EXPECT_EQ(p5.normalize("[x2,x1]"), -p5.normalize("[x1,x2]"));
    EXPECT_EQ(p6.normalize("[x2,x1]"), p6.normalize("[x1,x2]"));
}

TEST(PoisNormalize, JacobiRewrite) {
    PoisOperad op(5);
    EXPECT_EQ(op.normalize("[x1,[x2,x3]]"), op.normalize("[[x1,x2],x3]") - op.normalize("[[x1,x3],x2]"));
    EXPECT_EQ(op.normalize("[x1,[x2,x3]]").to_string(), "[[x1,x2],x3] - [[x1,x3],x2]");
}

TEST(PoisNormalize, GradedJacobiIdentity) {
    // [a,[b,c]] = [[a,b],c] + (-1)^{(|a|+d)(|b|+d)} [b,[a,c]] on letters.
    for (int n : {5, 6}) {
        PoisOperad op(n);
        int d = n - 1;
        Rational s = sign_of_parity(static_cast<long long>(d) * d);
        EXPECT_EQ(op.normalize("[x1,[x2,x3]]"), op.normalize("[[x1,x2],x3]") + s * op.normalize("[x2,[x1,x3]]"))
            << "n=" << n;
    }
}

TEST(PoisNormalize, ProductCommutativity) {
    PoisOperad p6(6);
    // two odd-degree blocks anticommute when n is even
    EXPECT_EQ(p6.normalize("[x3,x4]*[x1,x2]"), -p6.normalize("[x1,x2]*[x3,x4]"));
    PoisOperad p5(5);
    EXPECT_EQ(p5.normalize("[x3,x4]*[x1,x2]"), p5.normalize("[x1,x2]*[x3,x4]"));
    EXPECT_EQ(p6.normalize("x2*[x1,x3]"), p6.normalize("[x1,x3]*x2"));
}

TEST(PoisNormalize, Errors) {
    PoisOperad op(5);
    EXPECT_THROW(op.normalize("[x1,x1]"), ArgumentError);
    EXPECT_THROW(op.normalize("[x1,x3]"), ArgumentError);
    EXPECT_THROW(op.normalize("[x1,"), ArgumentError);
}

TEST(PoisSubstitute, UnitSubstitution) {
    PoisOperad op(5);
    auto bracket = op.normalize("[x1,x2]");
    auto product = op.normalize("x1*x2");
    EXPECT_TRUE(compose(bracket, 2, op.unit()).is_zero());
    EXPECT_EQ(compose(product, 2, op.unit()), op.identity());
}

TEST(PoisSubstitute, ProductOfBracket) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        EXPECT_EQ(compose(op.mu_element(2), 1, op.normalize("[x1,x2]")), op.normalize("[x1,x2]*x3"));
    }
}

TEST(PoisSubstitute, LeibnizExpansion) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        EXPECT_EQ(compose(op.normalize("[x1,x2]"), 1, op.normalize("x1*x2")),
                  op.normalize("x1*[x2,x3] + [x1,x3]*x2")) << "n=" << n;
    }
}

TEST(PoisSubstitute, AssociativityInstance) {
    PoisOperad op(6);
    auto b = op.normalize("[x1,x2]");
    EXPECT_EQ(compose(compose(b, 1, op.mu_element(2)), 1, op.mu_element(2)), compose(b, 1, op.mu_element(3)));
}

TEST(PoisSubstitute, MatchesTextualSubstitutionForOddN) {
    // For odd n every degree is even, so substituting the expression of y
    // into the written form of x and normalizing must agree with o_i.
    PoisOperad op(5);
    std::mt19937_64 rng(7);
    for (int p = 1; p <= 3; ++p)
        for (auto& x : op.basis(p))
            for (int r = 0; r <= 3; ++r)
                for (auto& y : op.basis(r))
                    for (int i = 1; i <= p; ++i) {
                        std::string xs = to_string(x), out;
                        for (std::size_t k = 0; k < xs.size(); ++k) {
                            if (xs[k] == 'x') {
                                std::size_t j = k + 1;
                                while (j < xs.size() && std::isdigit(static_cast<unsigned char>(xs[j]))) ++j;
                                int v = std::stoi(xs.substr(k + 1, j - k - 1));
                                if (v == i) {
                                    std::string ys = to_string(y), shifted;
                                    for (std::size_t a = 0; a < ys.size(); ++a) {
                                        if (ys[a] == 'x') {
                                            std::size_t b2 = a + 1;
                                            while (b2 < ys.size() && std::isdigit(static_cast<unsigned char>(ys[b2]))) ++b2;
                                            shifted += "x" + std::to_string(std::stoi(ys.substr(a + 1, b2 - a - 1)) + i - 1);
                                            a = b2 - 1;
                                        } else {
                                            shifted += ys[a];
                                        }
                                    }
                                    out += "(" + shifted + ")";
                                } else {
                                    out += "x" + std::to_string(v < i ? v : v + r - 1);
                                }
                                k = j - 1;
                            } else {
                                out += xs[k];
                            }
                        }
                        EXPECT_EQ(compose(Element(op, x), i, Element(op, y)), op.normalize(out, p + r - 1))
                            << to_string(x) << " o_" << i << " " << to_string(y);
                    }
}

TEST(PoisOperadAxioms, AssociativityAndUnit) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        for (int p = 1; p <= 3; ++p)
            for (auto& xm : op.basis(p)) {
                Element x(op, xm);
                for (int i = 1; i <= p; ++i) EXPECT_EQ(compose(x, i, op.identity()), x);
                EXPECT_EQ(compose(op.identity(), 1, x), x);
                for (int r = 0; r <= 3; ++r)
                    for (auto& ym : op.basis(r)) {
                        Element y(op, ym);
                        for (int s = 0; s <= 2; ++s)
                            for (auto& zm : op.basis(s)) {
                                Element z(op, zm);
                                long long sign_exp = static_cast<long long>(op.degree(ym)) * op.degree(zm);
                                for (int i = 1; i <= p; ++i) {
                                    // sequential: (x o_i y) o_{i+j-1} z = x o_i (y o_j z)
                                    for (int j = 1; j <= r; ++j)
                                        ASSERT_EQ(compose(compose(x, i, y), i + j - 1, z), compose(x, i, compose(y, j, z)))
                                            << "n=" << n << " " << x.to_string() << " " << y.to_string() << " " << z.to_string();
                                    // parallel: (x o_j z) o_i y = (-1)^{|y||z|} (x o_i y) o_{j+r-1} z, i < j
                                    for (int j = i + 1; j <= p; ++j)
                                        ASSERT_EQ(compose(compose(x, j, z), i, y),
                                                  Rational(sign_of_parity(sign_exp)) * compose(compose(x, i, y), j + r - 1, z))
                                            << "n=" << n << " " << x.to_string() << " " << y.to_string() << " " << z.to_string();
                                }
                            }
                    }
            }
    }
}

TEST(AssocOperad, Basics) {
    AssocOperad op;
    EXPECT_EQ(op.basis(3).size(), 1u);
    EXPECT_EQ(compose(op.mu_element(2), 2, op.mu_element(2)), op.mu_element(3));
    EXPECT_TRUE(op.basis(2, 1).empty());
}

TEST(Stirling, SmallValues) {
    EXPECT_EQ(stirling_first_unsigned(4, 2), 11);
    EXPECT_EQ(stirling_first_unsigned(5, 1), 24);
    EXPECT_EQ(stirling_first_unsigned(0, 0), 1);
}
