#ifndef HOCHLAB_POIS_HPP
#define HOCHLAB_POIS_HPP

// The Poisson n-operad Pois_n = H_*(little n-disks) and the associative
// operad.
//
// Pois_n(p) has basis the products of Lie words over a set partition of
// {1..p}; each bracket has degree n-1. Lie words are left-normed with the
// minimal letter first, which gives the (k-1)! multilinear basis of each
// block. Algebra-level sign rules (d = n-1, |a| the internal degree):
//
//   [a,b]   = -(-1)^{(|a|+d)(|b|+d)} [b,a]
//   [a,bc]  = [a,b]c + (-1)^{|b|(|a|+d)} b[a,c]
//   a b     = (-1)^{|a||b|} b a
//
// Composition x o_i y substitutes y for the i-th letter of x and carries the
// Koszul sign (-1)^{|y| * (degree of the bracket symbols right of x_i)};
// with the bracket symbol sitting at the comma this is the sign of moving y
// into place, and it makes o_i independent of the representative of x.

#include "hochlab/operad.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string_view>
#include <tuple>
#include <variant>

namespace hochlab {

namespace pois {

/// Ordered product of (not necessarily canonical) left-normed Lie words.
using Product = std::vector<LieWord>;
/// Linear combination of products; the intermediate form during expansion.
using Poly = std::map<Product, Rational>;
using LieCombo = std::map<LieWord, Rational>;

inline void add(Poly& p, const Product& m, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = p.try_emplace(m, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline void add(LieCombo& p, const LieWord& m, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = p.try_emplace(m, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

/// Sign arithmetic for a fixed bracket degree d = n-1.
class Signs {
public:
    explicit Signs(int n) : d_(n - 1) {}
    int d() const { return d_; }
    long long word_degree(const LieWord& w) const { return static_cast<long long>(w.size() - 1) * d_; }
    long long product_degree(const Product& p) const {
        long long s = 0;
        for (auto& w : p) s += word_degree(w);
        return s;
    }

    /// [u, v] for left-normed words, as left-normed words whose prefix is u.
    /// Uses [u,[w,c]] = [[u,w],c] - (-1)^{w'c'} [[u,c],w] in the shifted
    /// grading (a word of length k has shifted degree k*d).
    LieCombo bracket(const LieWord& u, const LieWord& v) const {
        LieCombo out;
        if (v.size() == 1) {
            LieWord w = u;
            w.push_back(v[0]);
            add(out, w, 1);
            return out;
        }
        LieWord w(v.begin(), v.end() - 1);
        std::uint8_t c = v.back();
        for (auto& [t, coef] : bracket(u, w)) {
            LieWord tc = t;
            tc.push_back(c);
            add(out, tc, coef);
        }
        LieWord uc = u;
        uc.push_back(c);
        Rational s = sign_of_parity(static_cast<long long>(w.size()) * d_ * d_) * -1;
        for (auto& [t, coef] : bracket(uc, w)) add(out, t, coef * s);
        return out;
    }

    /// Rewrites a left-normed word so every output word starts with its
    /// minimal letter.
    LieCombo canonical(const LieWord& word) const {
        auto j = static_cast<std::size_t>(std::min_element(word.begin(), word.end()) - word.begin());
        LieCombo out;
        if (j == 0) {
            add(out, word, 1);
            return out;
        }
        // [W, m] = -(-1)^{W' m'} [m, W], W = word[0..j)
        LieWord prefix(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(j));
        Rational s = -sign_of_parity(static_cast<long long>(j) * d_ * d_);
        for (auto& [t, coef] : bracket(LieWord{word[j]}, prefix)) {
            LieWord full = t;
            full.insert(full.end(), word.begin() + static_cast<std::ptrdiff_t>(j) + 1, word.end());
            add(out, full, coef * s);
        }
        return out;
    }

    Poly multiply(const Poly& a, const Poly& b) const {
        Poly out;
        for (auto& [x, cx] : a)
            for (auto& [y, cy] : b) {
                Product z = x;
                z.insert(z.end(), y.begin(), y.end());
                add(out, z, cx * cy);
            }
        return out;
    }

    /// Poisson bracket of two polynomials via the derivation rule in both
    /// arguments. The unit brackets to zero.
    Poly bracket(const Poly& a, const Poly& b) const {
        Poly out;
        for (auto& [x, cx] : a)
            for (auto& [y, cy] : b) {
                const long long deg_y = product_degree(y);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    long long right_of_i = 0;
                    for (std::size_t k = i + 1; k < x.size(); ++k) right_of_i += word_degree(x[k]);
                    const long long deg_ai = word_degree(x[i]);
                    long long left_of_j = 0;
                    for (std::size_t j = 0; j < y.size(); ++j) {
                        long long e = (deg_y + d_) * right_of_i + (deg_ai + d_) * left_of_j;
                        Rational c = cx * cy * sign_of_parity(e);
                        for (auto& [w, cw] : bracket(x[i], y[j])) {
                            Product z(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
                            z.insert(z.end(), y.begin(), y.begin() + static_cast<std::ptrdiff_t>(j));
                            z.push_back(w);
                            z.insert(z.end(), y.begin() + static_cast<std::ptrdiff_t>(j) + 1, y.end());
                            z.insert(z.end(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1, x.end());
                            add(out, z, c * cw);
                        }
                        left_of_j += word_degree(y[j]);
                    }
                }
            }
        return out;
    }

    /// Canonical form: canonical Lie words, factors sorted by first letter
    /// with the graded-commutativity sign. Requires each variable 1..p to
    /// occur exactly once in every product.
    Terms to_terms(const Poly& poly, int arity) const {
        Terms out;
        for (auto& [prod, coef] : poly) {
            std::vector<int> seen(static_cast<std::size_t>(arity) + 1, 0);
            for (auto& w : prod)
                for (auto l : w) {
                    if (l < 1 || l > arity || seen[l]++)
                        throw ArgumentError("normalize: expression is not multilinear");
                }
            for (int l = 1; l <= arity; ++l)
                if (!seen[static_cast<std::size_t>(l)])
                    throw ArgumentError("normalize: expression is not multilinear");
            // Expand the product of canonical Lie combinations.
            std::vector<std::pair<Product, Rational>> partial{{Product{}, coef}};
            for (auto& w : prod) {
                std::vector<std::pair<Product, Rational>> next;
                for (auto& [t, ct] : canonical(w))
                    for (auto& [pp, cp] : partial) {
                        Product q = pp;
                        q.push_back(t);
                        next.push_back({std::move(q), cp * ct});
                    }
                partial = std::move(next);
            }
            for (auto& [pp, cp] : partial) {
                Product q = pp;
                long long swaps = 0;
                // insertion sort by first letter, counting odd-odd swaps
                for (std::size_t a = 1; a < q.size(); ++a)
                    for (std::size_t b = a; b > 0 && q[b - 1].front() > q[b].front(); --b) {
                        swaps += word_degree(q[b - 1]) * word_degree(q[b]);
                        std::swap(q[b - 1], q[b]);
                    }
                add_term(out, Monomial{std::move(q)}, cp * sign_of_parity(swaps));
            }
        }
        return out;
    }

private:
    int d_;
};

/// Raw multilinear expression: variables, products and brackets.
struct Expr {
    struct Var {
        int index;
    };
    struct Unit {};
    struct Node {
        char op;  // '*', '[', '+', '-', or 'n' (negation, lhs only)
        std::shared_ptr<const Expr> lhs, rhs;
    };
    std::variant<Var, Unit, Node> v;

    static Expr var(int i) { return {Var{i}}; }
    static Expr unit() { return {Unit{}}; }
    static Expr product(Expr a, Expr b) {
        return {Node{'*', std::make_shared<const Expr>(std::move(a)), std::make_shared<const Expr>(std::move(b))}};
    }
    static Expr bracket(Expr a, Expr b) {
        return {Node{'[', std::make_shared<const Expr>(std::move(a)), std::make_shared<const Expr>(std::move(b))}};
    }
    /// op is '+' or '-'.
    static Expr combine(char op, Expr a, Expr b) {
        return {Node{op, std::make_shared<const Expr>(std::move(a)), std::make_shared<const Expr>(std::move(b))}};
    }
    static Expr negate(Expr a) { return {Node{'n', std::make_shared<const Expr>(std::move(a)), nullptr}}; }

    int max_var() const {
        if (auto* x = std::get_if<Var>(&v)) return x->index;
        if (auto* n = std::get_if<Node>(&v)) return std::max(n->lhs->max_var(), n->rhs ? n->rhs->max_var() : 0);
        return 0;
    }
};

/// Parser for the monomial grammar extended to arbitrary nesting:
///   expr := ['-'] term (('+'|'-') term)* ;  term := factor ('*' factor)* ;
///   factor := 'x'<int> | 'e' | '[' expr ',' expr ']' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return e;
    }

private:
    Expr expr() {
        skip();
        bool negate = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            negate = true;
            ++pos_;
        }
        Expr e = term();
        if (negate) e = Expr::negate(std::move(e));
        for (skip(); pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-'); skip()) {
            char op = s_[pos_++];
            e = Expr::combine(op, std::move(e), term());
        }
        return e;
    }
    Expr term() {
        Expr e = factor();
        for (skip(); pos_ < s_.size() && s_[pos_] == '*'; skip()) {
            ++pos_;
            e = Expr::product(std::move(e), factor());
        }
        return e;
    }
    Expr factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == 'x') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected variable index");
            return Expr::var(std::stoi(std::string(s_.substr(start, pos_ - start))));
        }
        if (c == 'e') {
            ++pos_;
            return Expr::unit();
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (c == '[') {
            ++pos_;
            Expr a = expr();
            expect(',');
            Expr b = expr();
            expect(']');
            return Expr::bracket(std::move(a), std::move(b));
        }
        fail(std::string("unexpected '") + c + "'");
    }
    void expect(char c) {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ArgumentError("parse error at position " + std::to_string(pos_) + ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace pois

/// Pois_n with n >= 2.
class PoisOperad final : public Operad {
public:
    explicit PoisOperad(int n) : n_(n), signs_(n) {
        if (n < 2) throw ArgumentError("PoisOperad: n must be >= 2");
    }

    std::string name() const override { return "pois"; }
    std::string signature() const override { return "pois:n=" + std::to_string(n_); }
    /// Outside m+1 <= p <= 2m (q = m(n-1)) no monomial is free of singleton
    /// blocks; p = 0 carries only e at q = 0.
    bool normalized_vanishes(int arity, int degree) const override {
        if (degree < 0 || degree % bracket_degree() != 0) return true;
        int m = degree / bracket_degree();
        if (arity == 0) return m != 0;
        return arity < m + 1 || arity > 2 * m;
    }
    int n() const { return n_; }
    /// Degree of one bracket, n-1.
    int bracket_degree() const { return n_ - 1; }
    const pois::Signs& signs() const { return signs_; }

    int degree(const Monomial& m) const override { return m.brackets() * bracket_degree(); }

    /// Monomials without singleton blocks: s^i deletes a singleton x_{i+1}
    /// and kills any monomial where x_{i+1} sits inside a bracket.
    std::vector<Monomial> normalized_basis(int arity, int degree) const override {
        std::vector<Monomial> out;
        for (auto& m : basis(arity, degree))
            if (!m.has_singleton()) out.push_back(m);
        return out;
    }

    std::vector<Monomial> basis(int arity, std::optional<int> degree = std::nullopt) const override {
        if (arity < 0) throw ArgumentError("basis: negative arity");
        std::optional<int> brackets;
        if (degree) {
            if (*degree < 0 || *degree % bracket_degree() != 0) return {};
            brackets = *degree / bracket_degree();
            if (arity == 0 ? *brackets != 0 : *brackets > arity - 1) return {};
        }
        std::vector<Monomial> out;
        std::vector<std::vector<std::uint8_t>> blocks;
        enumerate_partitions(1, arity, blocks, [&](const std::vector<std::vector<std::uint8_t>>& part) {
            if (brackets && arity - static_cast<int>(part.size()) != *brackets) return;
            enumerate_words(part, 0, Monomial{}, out);
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    Terms compose_basis(const Monomial& x, int i, const Monomial& y) const override {
        auto key = std::make_tuple(x, i, y);
        {
            std::shared_lock lock(cache_mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        Terms result = substitute_basis(x, i, y);
        std::unique_lock lock(cache_mutex_);
        cache_.emplace(std::move(key), result);
        return result;
    }

    /// Canonical form of a raw multilinear expression in x1..xp.
    Element normalize(const pois::Expr& e, std::optional<int> arity = std::nullopt) const {
        int p = arity.value_or(e.max_var());
        return Element(*this, p, signs_.to_terms(evaluate(e), p));
    }
    Element normalize(std::string_view text, std::optional<int> arity = std::nullopt) const {
        return normalize(pois::Parser(text).parse(), arity);
    }

    /// Canonical monomial from its identifier; the identifier must already
    /// be in canonical form.
    Monomial parse_monomial(std::string_view text) const {
        Element e = normalize(text);
        if (e.size() != 1 || e.terms().begin()->second != 1 || to_string(e.terms().begin()->first) != text)
            throw ArgumentError("parse_monomial: not a canonical monomial: " + std::string(text));
        return e.terms().begin()->first;
    }

private:
    template <typename F>
    static void enumerate_partitions(int next, int arity, std::vector<std::vector<std::uint8_t>>& blocks, F&& f) {
        if (next > arity) {
            f(blocks);
            return;
        }
        auto v = static_cast<std::uint8_t>(next);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(v);
            enumerate_partitions(next + 1, arity, blocks, f);
            blocks[b].pop_back();
        }
        blocks.push_back({v});
        enumerate_partitions(next + 1, arity, blocks, f);
        blocks.pop_back();
    }

    static void enumerate_words(const std::vector<std::vector<std::uint8_t>>& part, std::size_t k, Monomial cur,
                                std::vector<Monomial>& out) {
        if (k == part.size()) {
            out.push_back(std::move(cur));
            return;
        }
        std::vector<std::uint8_t> rest(part[k].begin() + 1, part[k].end());
        do {
            Monomial m = cur;
            LieWord w{part[k][0]};
            w.insert(w.end(), rest.begin(), rest.end());
            m.blocks.push_back(std::move(w));
            enumerate_words(part, k + 1, std::move(m), out);
        } while (std::next_permutation(rest.begin(), rest.end()));
    }

    pois::Poly evaluate(const pois::Expr& e) const {
        if (auto* x = std::get_if<pois::Expr::Var>(&e.v)) {
            if (x->index < 1 || x->index > 255) throw ArgumentError("normalize: variable index out of range");
            return {{pois::Product{LieWord{static_cast<std::uint8_t>(x->index)}}, Rational(1)}};
        }
        if (std::holds_alternative<pois::Expr::Unit>(e.v)) return {{pois::Product{}, Rational(1)}};
        auto& n = std::get<pois::Expr::Node>(e.v);
        auto a = evaluate(*n.lhs);
        if (n.op == 'n') {
            for (auto& [m, c] : a) c = -c;
            return a;
        }
        auto b = evaluate(*n.rhs);
        switch (n.op) {
            case '*': return signs_.multiply(a, b);
            case '[': return signs_.bracket(a, b);
            default:
                for (auto& [m, c] : b) pois::add(a, m, n.op == '+' ? c : Rational(-c));
                return a;
        }
    }

    Terms substitute_basis(const Monomial& x, int i, const Monomial& y) const {
        const int p = x.arity(), r = y.arity();
        if (i < 1 || i > p) throw ArgumentError("compose: slot out of range");
        auto relabel_x = [&](std::uint8_t a) -> std::uint8_t { return a < i ? a : static_cast<std::uint8_t>(a + r - 1); };
        pois::Product y_shifted;
        for (auto& w : y.blocks) {
            LieWord s;
            for (auto a : w) s.push_back(static_cast<std::uint8_t>(a + i - 1));
            y_shifted.push_back(std::move(s));
        }
        const pois::Poly y_poly{{y_shifted, Rational(1)}};

        // Bracket symbols to the right of x_i in the written form of x.
        long long commas_right = 0;
        bool found = false;
        for (auto& w : x.blocks) {
            if (found) {
                commas_right += static_cast<long long>(w.size()) - 1;
                continue;
            }
            for (std::size_t k = 0; k < w.size(); ++k)
                if (w[k] == i) {
                    found = true;
                    commas_right += static_cast<long long>(w.size()) - 1 - static_cast<long long>(k);
                }
        }
        const long long koszul = static_cast<long long>(degree(y)) * bracket_degree() * commas_right;

        pois::Poly acc{{pois::Product{}, Rational(sign_of_parity(koszul))}};
        for (auto& w : x.blocks) {
            auto leaf = [&](std::uint8_t a) -> pois::Poly {
                if (a == i) return y_poly;
                return {{pois::Product{LieWord{relabel_x(a)}}, Rational(1)}};
            };
            pois::Poly block = leaf(w[0]);
            for (std::size_t k = 1; k < w.size(); ++k) block = signs_.bracket(block, leaf(w[k]));
            acc = signs_.multiply(acc, block);
        }
        return signs_.to_terms(acc, p + r - 1);
    }

    int n_;
    pois::Signs signs_;
    mutable std::shared_mutex cache_mutex_;
    mutable std::map<std::tuple<Monomial, int, Monomial>, Terms> cache_;
};

/// The associative operad: one degree-0 monomial mu_p per arity.
class AssocOperad final : public Operad {
public:
    std::string name() const override { return "assoc"; }
    bool normalized_vanishes(int arity, int degree) const override { return degree != 0 || arity > 0; }
    int degree(const Monomial&) const override { return 0; }
    std::vector<Monomial> basis(int arity, std::optional<int> degree = std::nullopt) const override {
        if (arity < 0) throw ArgumentError("basis: negative arity");
        if (degree && *degree != 0) return {};
        return {mu(arity)};
    }
    Terms compose_basis(const Monomial& x, int i, const Monomial& y) const override {
        if (i < 1 || i > x.arity()) throw ArgumentError("compose: slot out of range");
        return {{mu(x.arity() + y.arity() - 1), Rational(1)}};
    }
};

/// Unsigned Stirling numbers of the first kind, c(p, k).
inline Integer stirling_first_unsigned(int p, int k) {
    std::vector<std::vector<Integer>> c(static_cast<std::size_t>(p) + 1,
                                        std::vector<Integer>(static_cast<std::size_t>(p) + 1, 0));
    c[0][0] = 1;
    for (int a = 1; a <= p; ++a)
        for (int b = 1; b <= a; ++b)
            c[a][b] = c[a - 1][b - 1] + Integer(a - 1) * c[a - 1][b];
    return (k < 0 || k > p) ? Integer(0) : c[p][k];
}

}  // namespace hochlab

#endif
