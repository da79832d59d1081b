#ifndef HOCHLAB_GERSTENHABER_HPP
#define HOCHLAB_GERSTENHABER_HPP

// Gerstenhaber bracket and cup product on the Hochschild complex of a
// multiplicative operad, and their classes in homology.
//
// Degrees: for x in O(p) of internal degree deg x, q = deg x - p is the
// total degree. Psi has total degree +1, the cup product degree 0.

#include "hochlab/hochschild.hpp"

#include <random>

namespace hochlab {

/// Which printed form of the first sign exponent to use. The two readings
/// differ only in the coefficient of (p - i).
enum class EpsilonReading {
    Proof,    // (r-1)(p-i) + (p-1)(r+s)
    Printed,  // (q-1)(p-i) + (p-1)(r+s)
};

struct SignExponents {
    int p = 0, r = 0;
    int q = 0, s = 0;
    EpsilonReading reading = EpsilonReading::Proof;

    long long eps(int i) const {
        long long a = reading == EpsilonReading::Proof ? r - 1 : q - 1;
        return a * (p - i) + static_cast<long long>(p - 1) * (r + s);
    }
    long long eps_prime(int j) const {
        return static_cast<long long>(p - 1) * (r - j) + static_cast<long long>(p + q) * (r - 1);
    }
    long long antisymmetry() const { return static_cast<long long>(q + 1) * (s + 1); }
};

inline void check_same_operad(const Element& x, const Element& y, const char* what) {
    if (&x.operad() != &y.operad()) throw ArgumentError(std::string(what) + ": mixed operads");
}

inline int total_degree(const Element& x, const char* what) {
    auto d = x.degree();
    if (!d) throw ArgumentError(std::string(what) + ": element is not homogeneous");
    return *d - x.arity();
}

inline SignExponents sign_exponents(const Element& x, const Element& y,
                                    EpsilonReading reading = EpsilonReading::Proof) {
    return {x.arity(), y.arity(), total_degree(x, "psi_bracket"), total_degree(y, "psi_bracket"), reading};
}

/// Psi(x, y) in O(p+r-1). Zero inputs are accepted and give zero.
inline Element psi_bracket(const Element& x, const Element& y, EpsilonReading reading = EpsilonReading::Proof) {
    check_same_operad(x, y, "psi_bracket");
    if (x.arity() + y.arity() == 0) throw ArgumentError("psi_bracket: both arguments have arity 0");
    Element out(x.operad(), x.arity() + y.arity() - 1);
    if (x.is_zero() || y.is_zero()) return out;
    auto e = sign_exponents(x, y, reading);
    for (int i = 1; i <= e.p; ++i) {
        Element c = compose(x, i, y);
        out += sign_of_parity(e.eps(i)) == 1 ? c : -c;
    }
    int outer = sign_of_parity(e.antisymmetry());
    for (int j = 1; j <= e.r; ++j) {
        Element c = compose(y, j, x);
        out += (outer * sign_of_parity(e.eps_prime(j)) == 1) ? -c : c;
    }
    return out;
}

/// x cup y = (-1)^{p s} (mu_2 o_1 x) o_{p+1} y, s the total degree of y.
inline Element cup_product(const Element& x, const Element& y) {
    check_same_operad(x, y, "cup_product");
    Element out(x.operad(), x.arity() + y.arity());
    if (x.is_zero() || y.is_zero()) return out;
    total_degree(x, "cup_product");
    int s = total_degree(y, "cup_product");
    const Operad& op = x.operad();
    Element c = compose(compose(op.mu_element(2), 1, x), x.arity() + 1, y);
    return sign_of_parity(static_cast<long long>(x.arity()) * s) == 1 ? c : -c;
}

struct HomologyClass {
    Bidegree bidegree;
    Element representative;
    Vector coordinates;

    int total() const { return bidegree.total(); }
    bool is_zero() const {
        for (auto& c : coordinates)
            if (c != 0) return false;
        return true;
    }
};

/// Class of a cycle x at (p, q) in the window's homology basis.
inline HomologyClass make_class(const ComplexWindow& w, const Element& x, int q) {
    Bidegree b{x.arity(), q};
    if (!x.is_zero()) {
        auto d = x.degree();
        if (!d || *d != q) throw ArgumentError("make_class: element is not homogeneous of degree " + std::to_string(q));
    }
    const auto& h = w.homology_at(b);
    auto coords = h.reduce(w.to_vector(x, b.p, b.q));
    if (coords.empty()) coords.assign(h.dim(), Rational(0));
    return {b, x, std::move(coords)};
}

/// The k-th homology basis class at b.
inline HomologyClass basis_class(const ComplexWindow& w, Bidegree b, std::size_t k) {
    const auto& h = w.homology_at(b);
    if (k >= h.dim()) throw ArgumentError("basis_class: index out of range at " + b.to_string());
    Vector coords(h.dim());
    coords[k] = 1;
    return {b, w.from_vector(b.p, b.q, h.homology_basis()[k]), std::move(coords)};
}

inline HomologyClass bracket_on_homology(const ComplexWindow& w, const HomologyClass& x, const HomologyClass& y,
                                         EpsilonReading reading = EpsilonReading::Proof) {
    Bidegree target{x.bidegree.p + y.bidegree.p - 1, x.bidegree.q + y.bidegree.q};
    w.require({{target.p - 1, target.q}, target, {target.p + 1, target.q}}, "bracket " + target.to_string());
    Element z = psi_bracket(x.representative, y.representative, reading);
    if (z.is_zero()) z = Element(w.operad(), target.p);
    return make_class(w, z, target.q);
}

inline HomologyClass cup_on_homology(const ComplexWindow& w, const HomologyClass& x, const HomologyClass& y) {
    Bidegree target{x.bidegree.p + y.bidegree.p, x.bidegree.q + y.bidegree.q};
    w.require({{target.p - 1, target.q}, target, {target.p + 1, target.q}}, "cup " + target.to_string());
    Element z = cup_product(x.representative, y.representative);
    if (z.is_zero()) z = Element(w.operad(), target.p);
    return make_class(w, z, target.q);
}

/// All homology basis classes with total degree in [lo, hi] inside the window.
inline std::vector<HomologyClass> basis_classes(const ComplexWindow& w, int lo, int hi) {
    std::vector<HomologyClass> out;
    for (int t = lo; t <= hi; ++t)
        for (auto& [b, r] : w.total_degree_slice(t))
            for (std::size_t k = 0; k < r; ++k) out.push_back(basis_class(w, b, k));
    return out;
}

/// Chain-level Leibniz rule over all pairs of normalized basis monomials with
/// p + r <= max_arity_sum:
///   d Psi(x,y) = (-1)^{|y|} Psi(dx, y) + (-1)^{q+1+|x|} Psi(x, dy)
/// with q the total and |.| the internal degree. For odd n all internal
/// degrees are even and the factors reduce to 1 and (-1)^{q+1}.
inline CheckReport verify_leibniz(const Operad& op, int max_arity_sum, int max_degree) {
    CheckReport rep;
    std::map<int, std::vector<Monomial>> by_arity;
    std::vector<std::pair<int, Monomial>> all;
    for (int p = 0; p <= max_arity_sum; ++p)
        for (int deg = 0; deg <= max_degree; ++deg)
            if (!op.normalized_vanishes(p, deg))
                for (auto& m : op.normalized_basis(p, deg)) all.push_back({p, m});
    for (auto& [p, a] : all)
        for (auto& [r, b] : all) {
            if (p + r > max_arity_sum || p + r == 0) continue;
            Element x(op, a), y(op, b);
            int X = op.degree(a), Y = op.degree(b), q = X - p;
            Element lhs = hochschild_boundary(psi_bracket(x, y));
            Element rhs = Rational(sign_of_parity(Y)) * psi_bracket(hochschild_boundary(x), y) +
                          Rational(sign_of_parity(q + 1 + X)) * psi_bracket(x, hochschild_boundary(y));
            rep.record(lhs == rhs, "Leibniz on " + to_string(a) + ", " + to_string(b));
        }
    return rep;
}

/// Psi(mu_2, x) = +-dx with the sign a function of (p, deg x) only, over the
/// normalized basis up to arity max_arity. The observed signs are returned.
inline CheckReport verify_mu2_boundary(const Operad& op, int max_arity, int max_degree,
                                       std::map<std::pair<int, int>, int>* signs = nullptr) {
    CheckReport rep;
    std::map<std::pair<int, int>, int> seen;
    for (int p = 0; p <= max_arity; ++p)
        for (int deg = 0; deg <= max_degree; ++deg) {
            if (op.normalized_vanishes(p, deg)) continue;
            for (auto& m : op.normalized_basis(p, deg)) {
                Element x(op, m);
                Element psi = psi_bracket(op.mu_element(2), x);
                Element dx = hochschild_boundary(x);
                int sign = psi == dx ? 1 : (psi == -dx ? -1 : 0);
                if (dx.is_zero() && psi.is_zero()) continue;
                bool ok = sign != 0;
                if (ok) {
                    auto [it, fresh] = seen.emplace(std::pair{p, deg}, sign);
                    ok = fresh || it->second == sign;
                }
                rep.record(ok, "Psi(mu2, x) vs dx on " + to_string(m));
            }
        }
    if (signs) *signs = seen;
    return rep;
}

/// Psi(x,y) + (-1)^{(q+1)(s+1)} Psi(y,x) = 0 on pseudo-random homogeneous
/// elements of arity <= max_arity.
inline CheckReport verify_antisymmetry(const Operad& op, int max_arity, int max_degree, int samples,
                                       std::uint64_t seed = 2024, EpsilonReading reading = EpsilonReading::Proof) {
    CheckReport rep;
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> slots;
    for (int p = 0; p <= max_arity; ++p)
        for (int deg = 0; deg <= max_degree; ++deg)
            if (!op.basis(p, deg).empty()) slots.push_back({p, deg});
    std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
    for (int k = 0; k < samples; ++k) {
        auto [p, dp] = slots[pick(rng)];
        auto [r, dr] = slots[pick(rng)];
        if (p + r == 0) continue;
        Element x = random_element(op, p, rng, dp), y = random_element(op, r, rng, dr);
        if (x.is_zero() || y.is_zero()) continue;
        int q = dp - p, s = dr - r;
        Element sum = psi_bracket(x, y, reading) +
                      Rational(sign_of_parity(static_cast<long long>(q + 1) * (s + 1))) * psi_bracket(y, x, reading);
        rep.record(sum.is_zero(), "antisymmetry on " + x.to_string() + ", " + y.to_string());
    }
    return rep;
}

namespace detail {

inline Vector combine(const Vector& a, const Vector& b, int sb) {
    Vector out = a;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += sb * b[k];
    return out;
}

inline bool is_zero_vector(const Vector& v) {
    for (auto& c : v)
        if (c != 0) return false;
    return true;
}

}  // namespace detail

/// Graded commutativity of cup, antisymmetry of Psi, the Poisson rule
///   Psi(x, y cup z) = Psi(x,y) cup z + (-1)^{(t_x+1) t_y} y cup Psi(x,z)
/// and the Jacobi identity
///   Psi(x, Psi(y,z)) = Psi(Psi(x,y), z) + (-1)^{(t_x+1)(t_y+1)} Psi(y, Psi(x,z))
/// on homology basis classes of total degree <= max_total, restricted to
/// combinations whose results lie in the window.
inline CheckReport verify_homology_laws(const ComplexWindow& w, int max_total, std::size_t* triples = nullptr) {
    CheckReport rep;
    auto cls = basis_classes(w, 0, max_total);
    auto fits = [&](int p, int q) { return w.available(p - 1, q) && w.available(p, q) && w.available(p + 1, q); };
    auto name = [](const HomologyClass& c) { return c.bidegree.to_string(); };
    std::size_t n3 = 0;
    for (auto& x : cls)
        for (auto& y : cls) {
            int tx = x.total(), ty = y.total();
            int pp = x.bidegree.p + y.bidegree.p, qq = x.bidegree.q + y.bidegree.q;
            if (!fits(pp, qq)) continue;
            auto a = cup_on_homology(w, x, y), b = cup_on_homology(w, y, x);
            rep.record(a.coordinates == detail::combine(Vector(a.coordinates.size()), b.coordinates, sign_of_parity(tx * ty)),
                       "cup commutativity " + name(x) + " " + name(y));
            if (pp == 0 || !fits(pp - 1, qq)) continue;
            auto u = bracket_on_homology(w, x, y), v = bracket_on_homology(w, y, x);
            rep.record(detail::is_zero_vector(detail::combine(u.coordinates, v.coordinates, sign_of_parity((tx + 1) * (ty + 1)))),
                       "bracket antisymmetry " + name(x) + " " + name(y));
            for (auto& z : cls) {
                if (x.bidegree.p == 0 || y.bidegree.p == 0 || z.bidegree.p == 0) continue;
                std::vector<Vector> v;
                try {
                    auto yz = cup_on_homology(w, y, z);
                    v.push_back(bracket_on_homology(w, x, yz).coordinates);
                    v.push_back(cup_on_homology(w, bracket_on_homology(w, x, y), z).coordinates);
                    v.push_back(cup_on_homology(w, y, bracket_on_homology(w, x, z)).coordinates);
                    v.push_back(bracket_on_homology(w, x, bracket_on_homology(w, y, z)).coordinates);
                    v.push_back(bracket_on_homology(w, bracket_on_homology(w, x, y), z).coordinates);
                    v.push_back(bracket_on_homology(w, y, bracket_on_homology(w, x, z)).coordinates);
                } catch (const WindowError&) {
                    continue;
                }
                ++n3;
                rep.record(v[0] == detail::combine(v[1], v[2], sign_of_parity((tx + 1) * ty)),
                           "Poisson rule " + name(x) + " " + name(y) + " " + name(z));
                rep.record(v[3] == detail::combine(v[4], v[5], sign_of_parity((tx + 1) * (ty + 1))),
                           "Jacobi " + name(x) + " " + name(y) + " " + name(z));
            }
        }
    if (triples) *triples = n3;
    return rep;
}

}  // namespace hochlab

#endif
