#include "hochlab/operad.hpp"
#include "hochlab/pois.hpp"

#include <gtest/gtest.h>

using namespace hochlab;

TEST(Cosimplicial, PoisIdentitiesHold) {
    for (int n : {5, 6}) {
        PoisOperad op(n);
        auto rep = verify_cosimplicial(op, 5);
        EXPECT_TRUE(rep.pass) << "n=" << n << ": " << rep.first_failure;
        EXPECT_GT(rep.checks, 1000u);
    }
}

TEST(Cosimplicial, AssocIdentitiesHold) {
    AssocOperad op;
    auto rep = verify_cosimplicial(op, 6);
    EXPECT_TRUE(rep.pass) << rep.first_failure;
}

TEST(Cosimplicial, Errors) {
    PoisOperad op(5);
    EXPECT_THROW(verify_cosimplicial(op, 1), ArgumentError);
    EXPECT_THROW(coface(4, op.mu_element(2)), ArgumentError);
    EXPECT_THROW(codegeneracy(0, op.unit()), ArgumentError);
    EXPECT_THROW(codegeneracy(2, op.mu_element(2)), ArgumentError);
    PoisOperad other(6);
    EXPECT_THROW(compose(op.mu_element(2), 1, other.mu_element(2)), ArgumentError);
    EXPECT_THROW(compose(op.mu_element(2), 3, op.mu_element(2)), ArgumentError);
}

TEST(Codegeneracy, Examples) {
    PoisOperad op(5);
    EXPECT_EQ(codegeneracy(0, op.mu_element(2)), op.identity());
    EXPECT_EQ(codegeneracy(1, op.mu_element(2)), op.identity());
    EXPECT_TRUE(codegeneracy(0, op.normalize("[x1,x2]")).is_zero());
    EXPECT_EQ(codegeneracy(1, op.normalize("[x1,x3]*x2")), op.normalize("[x1,x2]"));
    EXPECT_TRUE(codegeneracy(0, op.normalize("[x1,x3]*x2")).is_zero());
}

TEST(Coface, Examples) {
    PoisOperad op(5);
    auto b = op.normalize("[x1,x2]");
    EXPECT_EQ(coface(0, b), op.normalize("x1*[x2,x3]"));
    EXPECT_EQ(coface(3, b), op.normalize("[x1,x2]*x3"));
    EXPECT_EQ(coface(1, b), op.normalize("[x1*x2,x3]"));
    EXPECT_EQ(coface(2, b), op.normalize("[x1,x2*x3]"));
}

TEST(Element, ArithmeticAndDegree) {
    PoisOperad op(6);
    auto a = op.normalize("[x1,x2]*x3");
    auto b = op.normalize("x1*x2*x3");
    EXPECT_EQ(a.degree(), 5);
    EXPECT_EQ(b.degree(), 0);
    EXPECT_FALSE((a + b).degree().has_value());
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(Rational(2) * a, a + a);
    EXPECT_THROW(a + op.mu_element(2), ArgumentError);
}
