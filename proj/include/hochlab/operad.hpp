#ifndef HOCHLAB_OPERAD_HPP
#define HOCHLAB_OPERAD_HPP

#include "hochlab/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace hochlab {

/// A left-normed bracket [[..[x_a1,x_a2],..],x_ak] of 1-based variable indices.
/// A single letter is the bare variable.
using LieWord = std::vector<std::uint8_t>;

/// Basis monomial of an operad component: an ordered product of Lie words.
/// For the canonical Poisson basis the blocks partition {1..p} and are
/// ordered by their first (= minimal) letter. The empty product is the unit e.
struct Monomial {
    std::vector<LieWord> blocks;

    int arity() const {
        int p = 0;
        for (auto& b : blocks) p += static_cast<int>(b.size());
        return p;
    }
    int brackets() const { return arity() - static_cast<int>(blocks.size()); }
    bool has_singleton() const {
        for (auto& b : blocks)
            if (b.size() == 1) return true;
        return false;
    }

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
};

inline std::string to_string(const LieWord& w) {
    std::string s = "x" + std::to_string(w.front());
    for (std::size_t k = 1; k < w.size(); ++k) s = "[" + s + ",x" + std::to_string(w[k]) + "]";
    return s;
}

/// Canonical identifier: `[x1,x3]*x2`, `[[x1,x2],x4]*x3`, `e` for the unit.
inline std::string to_string(const Monomial& m) {
    if (m.blocks.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < m.blocks.size(); ++i) {
        if (i) s += "*";
        s += to_string(m.blocks[i]);
    }
    return s;
}

using Terms = std::map<Monomial, Rational>;

inline void add_term(Terms& t, const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = t.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

class Operad;

/// Exact formal linear combination of basis monomials of O(p).
class Element {
public:
    Element(const Operad& op, int arity) : op_(&op), arity_(arity) {
        if (arity < 0) throw ArgumentError("Element: negative arity");
    }
    Element(const Operad& op, int arity, Terms terms);
    Element(const Operad& op, const Monomial& m, Rational c = 1);

    const Operad& operad() const { return *op_; }
    int arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Internal degree if all terms share one, nullopt otherwise. The zero
    /// element reports nullopt.
    std::optional<int> degree() const;

    Element operator+(const Element& o) const {
        check_same(o);
        Element r = *this;
        for (auto& [m, c] : o.terms_) add_term(r.terms_, m, c);
        return r;
    }
    Element operator-(const Element& o) const { return *this + o * Rational(-1); }
    Element operator-() const { return *this * Rational(-1); }
    Element operator*(const Rational& s) const {
        Element r(*op_, arity_);
        if (s == 0) return r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }
    friend Element operator*(const Rational& s, const Element& x) { return x * s; }
    Element& operator+=(const Element& o) { return *this = *this + o; }
    Element& operator-=(const Element& o) { return *this = *this - o; }

    bool operator==(const Element& o) const {
        return op_ == o.op_ && arity_ == o.arity_ && terms_ == o.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) os << "-";
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            if (a < 0) a = -a;
            if (a != 1) os << a.get_str() << " ";
            os << hochlab::to_string(m);
            first = false;
        }
        return os.str();
    }

    void check_same(const Element& o) const {
        if (op_ != o.op_) throw ArgumentError("Element: mixed operads");
        if (arity_ != o.arity_) throw ArgumentError("Element: arity mismatch");
    }

private:
    const Operad* op_;
    int arity_;
    Terms terms_;
};

/// A graded (non-symmetric) operad with multiplication mu_k, presented by a
/// basis of each component and the structure constants of the partial
/// compositions on basis monomials.
// Used by test frameworks that look up PrintTo by argument-dependent lookup.
inline void PrintTo(const Element& x, std::ostream* os) { *os << x.to_string(); }

class Operad {
public:
    virtual ~Operad() = default;

    virtual std::string name() const = 0;
    /// Stable identity of the structure constants (name plus parameters).
    virtual std::string signature() const { return name(); }
    /// True when the normalized component at (arity, degree) is known to be
    /// zero without enumerating it.
    virtual bool normalized_vanishes(int /*arity*/, int /*degree*/) const { return false; }
    /// Canonical monomials of arity p (optionally of one internal degree),
    /// in deterministic order.
    virtual std::vector<Monomial> basis(int arity, std::optional<int> degree = std::nullopt) const = 0;
    virtual int degree(const Monomial& m) const = 0;
    /// x o_i y on basis monomials, 1 <= i <= arity(x).
    virtual Terms compose_basis(const Monomial& x, int i, const Monomial& y) const = 0;

    /// Basis of the joint kernel of the codegeneracies at (arity, degree).
    /// The default keeps the monomials every s^i kills, which is the whole
    /// kernel whenever s^i maps the remaining monomials injectively to
    /// monomials.
    virtual std::vector<Monomial> normalized_basis(int arity, int degree) const;

    /// mu_k: the product x1*x2*..*xk; mu_0 = e, mu_1 = id.
    Monomial mu(int k) const {
        Monomial m;
        for (int a = 1; a <= k; ++a) m.blocks.push_back({static_cast<std::uint8_t>(a)});
        return m;
    }
    Element mu_element(int k) const { return Element(*this, mu(k)); }
    Element unit() const { return mu_element(0); }
    Element identity() const { return mu_element(1); }
};

inline Element::Element(const Operad& op, int arity, Terms terms) : op_(&op), arity_(arity) {
    for (auto& [m, c] : terms) {
        if (m.arity() != arity) throw ArgumentError("Element: monomial arity mismatch");
        if (c != 0) terms_.emplace(m, c);
    }
}

inline Element::Element(const Operad& op, const Monomial& m, Rational c) : op_(&op), arity_(m.arity()) {
    if (c != 0) terms_.emplace(m, std::move(c));
}

inline std::optional<int> Element::degree() const {
    std::optional<int> d;
    for (auto& [m, c] : terms_) {
        int k = op_->degree(m);
        if (d && *d != k) return std::nullopt;
        d = k;
    }
    return d;
}

/// x o_i y, bilinear in both arguments.
inline Element compose(const Element& x, int i, const Element& y) {
    if (&x.operad() != &y.operad()) throw ArgumentError("compose: mixed operads");
    if (i < 1 || i > x.arity()) throw ArgumentError("compose: slot " + std::to_string(i) + " out of range");
    const Operad& op = x.operad();
    Terms out;
    for (auto& [a, ca] : x.terms())
        for (auto& [b, cb] : y.terms()) {
            Rational c = ca * cb;
            for (auto& [m, cm] : op.compose_basis(a, i, b)) add_term(out, m, c * cm);
        }
    return Element(op, x.arity() + y.arity() - 1, std::move(out));
}

/// Coface d^i : O(p) -> O(p+1), 0 <= i <= p+1.
inline Element coface(int i, const Element& x) {
    const int p = x.arity();
    if (i < 0 || i > p + 1) throw ArgumentError("coface: index " + std::to_string(i) + " out of range");
    const Operad& op = x.operad();
    if (i == 0) return compose(op.mu_element(2), 2, x);
    if (i == p + 1) return compose(op.mu_element(2), 1, x);
    return compose(x, i, op.mu_element(2));
}

/// Codegeneracy s^i : O(p) -> O(p-1), s^i(x) = x o_{i+1} e.
inline Element codegeneracy(int i, const Element& x) {
    const int p = x.arity();
    if (p == 0) throw ArgumentError("codegeneracy: arity 0 has no codegeneracies");
    if (i < 0 || i > p - 1) throw ArgumentError("codegeneracy: index " + std::to_string(i) + " out of range");
    return compose(x, i + 1, x.operad().unit());
}

inline std::vector<Monomial> Operad::normalized_basis(int arity, int degree) const {
    std::vector<Monomial> out;
    for (auto& m : basis(arity, degree)) {
        bool killed = true;
        for (int i = 0; i < arity && killed; ++i) killed = codegeneracy(i, Element(*this, m)).is_zero();
        if (killed) out.push_back(m);
    }
    return out;
}

/// Deterministic pseudo-random element of O(p) with small integer coefficients.
inline Element random_element(const Operad& op, int arity, std::mt19937_64& rng,
                              std::optional<int> degree = std::nullopt, int max_terms = 4) {
    auto basis = op.basis(arity, degree);
    Element x(op, arity);
    if (basis.empty()) return x;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int k = 0; k < max_terms; ++k) {
        int c = coef(rng);
        if (c != 0) x += Element(op, basis[pick(rng)], c);
    }
    return x;
}

struct CheckReport {
    bool pass = true;
    std::size_t checks = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) {
            pass = false;
            first_failure = what;
        }
    }
    void merge(const CheckReport& o) {
        checks += o.checks;
        if (!o.pass && pass) {
            pass = false;
            first_failure = o.first_failure;
        }
    }
};

namespace detail {

inline void check_cosimplicial_on(const Element& x, CheckReport& rep) {
    const int p = x.arity();
    auto tag = [&](const std::string& id) { return id + " on " + x.to_string() + " (arity " + std::to_string(p) + ")"; };
    // d^j d^i = d^i d^{j-1}, i < j
    for (int j = 0; j <= p + 2; ++j)
        for (int i = 0; i < j; ++i)
            rep.record(coface(j, coface(i, x)) == coface(i, coface(j - 1, x)),
                       tag("d^" + std::to_string(j) + "d^" + std::to_string(i)));
    // s^j d^i
    for (int j = 0; j <= p; ++j)
        for (int i = 0; i <= p + 1; ++i) {
            Element lhs = codegeneracy(j, coface(i, x));
            Element rhs = (i < j)       ? coface(i, codegeneracy(j - 1, x))
                          : (i <= j + 1) ? x
                                         : coface(i - 1, codegeneracy(j, x));
            rep.record(lhs == rhs, tag("s^" + std::to_string(j) + "d^" + std::to_string(i)));
        }
    // s^j s^i = s^i s^{j+1}, i <= j
    if (p >= 2)
        for (int j = 0; j <= p - 2; ++j)
            for (int i = 0; i <= j; ++i)
                rep.record(codegeneracy(j, codegeneracy(i, x)) == codegeneracy(i, codegeneracy(j + 1, x)),
                           tag("s^" + std::to_string(j) + "s^" + std::to_string(i)));
}

}  // namespace detail

/// Checks every cosimplicial identity on all basis monomials of arity
/// 0..max_arity-1 (so that all images stay within max_arity+1) and on a few
/// pseudo-random combinations per arity.
inline CheckReport verify_cosimplicial(const Operad& op, int max_arity, std::uint64_t seed = 2024) {
    if (max_arity < 2) throw ArgumentError("verify_cosimplicial: max_arity must be >= 2");
    CheckReport rep;
    std::mt19937_64 rng(seed);
    for (int p = 0; p < max_arity; ++p) {
        for (auto& m : op.basis(p)) detail::check_cosimplicial_on(Element(op, m), rep);
        for (int k = 0; k < 3; ++k) detail::check_cosimplicial_on(random_element(op, p, rng), rep);
    }
    return rep;
}

/// Unit, sequential and parallel associativity on all triples of basis
/// monomials whose iterated composite has arity <= max_arity:
///   (x o_i y) o_{i+j-1} z = x o_i (y o_j z)
///   (x o_j z) o_i y = (-1)^{|y||z|} (x o_i y) o_{j+r-1} z,  i < j
inline CheckReport verify_operad_axioms(const Operad& op, int max_arity) {
    if (max_arity < 1) throw ArgumentError("verify_operad_axioms: max_arity must be >= 1");
    CheckReport rep;
    std::vector<std::vector<Monomial>> basis;
    for (int p = 0; p <= max_arity; ++p) basis.push_back(op.basis(p));
    for (int p = 1; p <= max_arity; ++p)
        for (auto& xm : basis[static_cast<std::size_t>(p)]) {
            Element x(op, xm);
            for (int i = 1; i <= p; ++i)
                rep.record(compose(x, i, op.identity()) == x, "right unit on " + to_string(xm));
            rep.record(compose(op.identity(), 1, x) == x, "left unit on " + to_string(xm));
            for (int r = 0; r <= max_arity && p + r - 1 <= max_arity; ++r)
                for (auto& ym : basis[static_cast<std::size_t>(r)]) {
                    Element y(op, ym);
                    for (int s = 0; s <= max_arity && p + r + s - 2 <= max_arity; ++s)
                        for (auto& zm : basis[static_cast<std::size_t>(s)]) {
                            Element z(op, zm);
                            auto tag = [&](const char* law) {
                                return std::string(law) + " on " + to_string(xm) + ", " + to_string(ym) + ", " + to_string(zm);
                            };
                            Rational sign(sign_of_parity(static_cast<long long>(op.degree(ym)) * op.degree(zm)));
                            for (int i = 1; i <= p; ++i) {
                                for (int j = 1; j <= r; ++j)
                                    rep.record(compose(compose(x, i, y), i + j - 1, z) == compose(x, i, compose(y, j, z)),
                                               tag("sequential associativity"));
                                for (int j = i + 1; j <= p; ++j)
                                    rep.record(compose(compose(x, j, z), i, y) == sign * compose(compose(x, i, y), j + r - 1, z),
                                               tag("parallel associativity"));
                            }
                        }
                }
        }
    return rep;
}

}  // namespace hochlab

#endif
