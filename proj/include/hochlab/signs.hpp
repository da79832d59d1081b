#ifndef HOCHLAB_SIGNS_HPP
#define HOCHLAB_SIGNS_HPP

// Index functions and coordinate charts on S^1 x Delta^l, and the
// orientation signs of the block maps
//   Delta^q x Delta^s x Delta(i0,i1)  -> (Delta^q x Delta^p) x (Delta^s x Delta^r)
//   Delta^q x Delta^s x Delta'(j0,j1) -> (Delta^s x Delta^r) x (Delta^q x Delta^p)
// computed as exact determinants. Delta^k = {-1 <= t_1 <= ... <= t_k <= 1}.

#include "hochlab/rational.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <optional>
#include <random>
#include <vector>

namespace hochlab {

struct BoundaryError : ArgumentError {
    using ArgumentError::ArgumentError;
};

struct SimplexPoint {
    Rational tau;
    std::vector<Rational> t;

    int l() const { return static_cast<int>(t.size()); }
};

inline bool in_simplex(const std::vector<Rational>& t) {
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < -1 || t[k] > 1) return false;
        if (k > 0 && t[k - 1] > t[k]) return false;
    }
    return true;
}

/// A cell Delta(a,b) (negative tau, a = i0, b = i1) or Delta'(a,b)
/// (positive tau, a = j0, b = j1) inside (-1,1) x Delta^l.
struct Cell {
    bool negative = true;
    int l = 0;
    int a = 0, b = 0;

    /// Arities (p, r) of the pieces fed to g_1 and g_2.
    int p() const { return negative ? l + a - b + 1 : b - a; }
    int r() const { return negative ? b - a : l + a - b + 1; }
    std::string to_string() const {
        return std::string(negative ? "Delta(" : "Delta'(") + std::to_string(a) + "," + std::to_string(b) +
               ") l=" + std::to_string(l);
    }
    auto operator<=>(const Cell&) const = default;
};

/// min{ i ; t_{i+1} >= bound }, with min of the empty set equal to l.
inline int first_index_at_least(const std::vector<Rational>& t, const Rational& bound) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] >= bound) return static_cast<int>(i);
    return static_cast<int>(t.size());
}

inline Cell index_functions(const SimplexPoint& x) {
    if (!in_simplex(x.t)) throw ArgumentError("index_functions: t is not in the simplex");
    if (x.tau <= -1 || x.tau >= 1 || x.tau == 0)
        throw BoundaryError("index_functions: tau = " + hochlab::to_string(x.tau) + " lies on a chart boundary");
    if (x.tau < 0) return {true, x.l(), first_index_at_least(x.t, x.tau), first_index_at_least(x.t, 1 + x.tau)};
    return {false, x.l(), first_index_at_least(x.t, -x.tau), first_index_at_least(x.t, 1 - x.tau)};
}

struct ChartValue {
    Cell cell;
    std::vector<Rational> first, second;  // (u1, u2) or (v1, v2)
};

/// u = (u1, u2) for negative tau, v = (v1, v2) for positive tau.
inline ChartValue charts(const SimplexPoint& x) {
    Cell c = index_functions(x);
    const auto& t = x.t;
    const int l = x.l();
    auto at = [&](int k) { return t[static_cast<std::size_t>(k - 1)]; };  // 1-based
    ChartValue out{c, {}, {}};
    // outer piece: t_1..t_a doubled up, the insertion coordinate, t_{b+1}..t_l doubled down
    std::vector<Rational> outer, inner;
    for (int k = 1; k <= c.a; ++k) outer.push_back(2 * at(k) + 1);
    outer.push_back(c.negative ? Rational(1 + 2 * x.tau) : Rational(1 - 2 * x.tau));
    for (int k = c.b + 1; k <= l; ++k) outer.push_back(2 * at(k) - 1);
    // on the positive half the inner block is 2t_k + 2tau - 1, the affine map
    // [-tau, 1-tau] -> [-1, 1]; 2t_k - 2tau - 1 would leave the simplex
    for (int k = c.a + 1; k <= c.b; ++k)
        inner.push_back(c.negative ? Rational(2 * at(k) - 2 * x.tau - 1) : Rational(2 * at(k) + 2 * x.tau - 1));
    if (c.negative) {
        out.first = std::move(outer);
        out.second = std::move(inner);
    } else {
        out.first = std::move(inner);
        out.second = std::move(outer);
    }
    if (!in_simplex(out.first) || !in_simplex(out.second))
        throw ContractViolation("charts: image of a point in " + c.to_string() + " leaves the target simplices");
    return out;
}

/// Sign of the determinant of a square rational matrix (0 if singular).
inline int determinant_sign(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            sign = -sign;
        }
        if (m[c][c] < 0) sign = -sign;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return sign;
}

/// A point strictly inside the cell, drawn with rational coordinates.
inline SimplexPoint interior_point(const Cell& c, std::mt19937_64& rng) {
    if (c.a < 0 || c.a > c.b || c.b > c.l) throw ArgumentError("interior_point: invalid cell " + c.to_string());
    std::uniform_int_distribution<int> u(1, 999);
    auto open = [&](const Rational& lo, const Rational& hi, int count) {
        std::vector<int> picks;
        for (int k = 0; k < count; ++k) picks.push_back(u(rng));
        std::sort(picks.begin(), picks.end());
        std::vector<Rational> out;
        for (int k : picks) out.push_back(lo + (hi - lo) * ratio(k, 1000));
        // ties are harmless for the index functions but keep points generic
        for (std::size_t k = 1; k < out.size(); ++k)
            if (out[k] == out[k - 1]) out[k] += (hi - out[k]) / 1000;
        return out;
    };
    Rational tau = -ratio(u(rng), 1000);
    if (!c.negative) tau = -tau;
    // negative: [-1, tau) | [tau, 1+tau) | [1+tau, 1]; positive with -tau
    Rational s = c.negative ? tau : Rational(-tau);
    SimplexPoint x{tau, {}};
    for (auto& v : open(-1, s, c.a)) x.t.push_back(v);
    for (auto& v : open(s, 1 + s, c.b - c.a)) x.t.push_back(v);
    for (auto& v : open(1 + s, 1, c.l - c.b)) x.t.push_back(v);
    for (auto& v : x.t) v.canonicalize();
    return x;
}

/// Orientation sign of the block map on Delta^q x Delta^s x cell, from the
/// exact Jacobian of the chart at x (the chart is affine on the cell).
inline int jacobian_sign_at(int q, int s, const SimplexPoint& x) {
    ChartValue base = charts(x);
    const Cell& c = base.cell;
    const int l = c.l, p = c.p(), r = c.r();
    // derivative of (first, second) with respect to (tau, t_1..t_l)
    Rational gap = 1;
    std::vector<Rational> marks{-1, 1, x.tau, 1 + x.tau, -x.tau, 1 - x.tau, 0};
    for (auto& v : x.t)
        for (auto& m : marks)
            if (v != m) gap = std::min(gap, Rational(abs(Rational(v - m))));
    for (std::size_t k = 1; k < x.t.size(); ++k)
        if (x.t[k] != x.t[k - 1]) gap = std::min(gap, Rational(x.t[k] - x.t[k - 1]));
    gap = std::min(gap, Rational(abs(x.tau)));
    gap = std::min(gap, Rational(1 - Rational(abs(x.tau))));
    Rational h = gap / 8;
    auto flat = [](const ChartValue& v) {
        std::vector<Rational> out = v.first;
        out.insert(out.end(), v.second.begin(), v.second.end());
        return out;
    };
    auto f0 = flat(base);
    std::vector<std::vector<Rational>> chart(static_cast<std::size_t>(l + 1), std::vector<Rational>(static_cast<std::size_t>(l + 1)));
    for (int k = 0; k <= l; ++k) {
        SimplexPoint y = x;
        if (k == 0) y.tau += h;
        else y.t[static_cast<std::size_t>(k - 1)] += h;
        ChartValue moved = charts(y);
        if (moved.cell != c) throw ContractViolation("jacobian_sign: step left the cell " + c.to_string());
        auto f1 = flat(moved);
        for (int row = 0; row <= l; ++row)
            chart[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] =
                (f1[static_cast<std::size_t>(row)] - f0[static_cast<std::size_t>(row)]) / h;
    }
    // full map: source (x_1..x_q, y_1..y_s, tau, t); target blocks as in the header
    const int n = q + s + l + 1;
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    auto put_identity = [&](int row0, int col0, int len) {
        for (int k = 0; k < len; ++k) m[static_cast<std::size_t>(row0 + k)][static_cast<std::size_t>(col0 + k)] = 1;
    };
    auto put_chart = [&](int row0, int chart_row0, int len) {
        for (int k = 0; k < len; ++k)
            for (int j = 0; j <= l; ++j)
                m[static_cast<std::size_t>(row0 + k)][static_cast<std::size_t>(q + s + j)] =
                    chart[static_cast<std::size_t>(chart_row0 + k)][static_cast<std::size_t>(j)];
    };
    if (c.negative) {
        // (x, u1, y, u2); u1 has length p, u2 length r
        put_identity(0, 0, q);
        put_chart(q, 0, p);
        put_identity(q + p, q, s);
        put_chart(q + p + s, p, r);
    } else {
        // (y, v2, x, v1); v1 has length p, v2 length r
        put_identity(0, q, s);
        put_chart(s, p, r);
        put_identity(s + r, 0, q);
        put_chart(s + r + q, 0, p);
    }
    return determinant_sign(std::move(m));
}

/// Sign on the cell, checked to be constant over `samples` interior points.
inline int jacobian_sign(int q, int s, const Cell& c, std::mt19937_64& rng, int samples = 10) {
    if (q < 0 || s < 0) throw ArgumentError("jacobian_sign: negative degree");
    int sign = 0;
    for (int k = 0; k < samples; ++k) {
        int here = jacobian_sign_at(q, s, interior_point(c, rng));
        if (here == 0) throw ContractViolation("jacobian_sign: degenerate chart on " + c.to_string());
        if (sign != 0 && here != sign) throw ContractViolation("jacobian_sign: sign not constant on " + c.to_string());
        sign = here;
    }
    return sign;
}

inline std::vector<Cell> all_cells(int l) {
    std::vector<Cell> out;
    for (int neg = 1; neg >= 0; --neg)
        for (int a = 0; a <= l; ++a)
            for (int b = a; b <= l; ++b) out.push_back({neg == 1, l, a, b});
    return out;
}

/// Exponent of the sign that the bracket formula assigns to a cell:
/// negative tau, i = i0 + 1:
///   (p+1)(r+1) + s + 1 + eps_i,  eps_i = (r-1)(p-i) + (p-1)(r+s)
/// positive tau, j = j0 + 1:
///   (p+1)(r+1) + qs + q + 1 + eps'_j,  eps'_j = (p-1)(r-j) + (p+q)(r-1)
inline long long closed_form_exponent(int q, int s, const Cell& c) {
    long long p = c.p(), r = c.r();
    if (c.negative) return (p + 1) * (r + 1) + s + 1 + (r - 1) * (p - c.a - 1) + (p - 1) * (r + s);
    return (p + 1) * (r + 1) + static_cast<long long>(q) * s + q + 1 + (p - 1) * (r - c.a - 1) + (p + q) * (r - 1);
}

struct Reading {
    std::string id;
    std::string text;
    bool negative_cells;  // which half of the circle the formula speaks about
    std::function<long long(int q, int s, const Cell&)> exponent;
};

/// Candidate readings of the printed sign exponents.
inline std::vector<Reading> printed_readings() {
    auto P = [](const Cell& c) { return static_cast<long long>(c.p()); };
    auto R = [](const Cell& c) { return static_cast<long long>(c.r()); };
    return {
        {"neg-sum", "1+i0+(i1-i0)(l-i1)+ps", true,
         [P](int, int s, const Cell& c) { return 1LL + c.a + static_cast<long long>(c.b - c.a) * (c.l - c.b) + P(c) * s; }},
        {"neg-product", "1+i0(i1-i0)(l-i1)+ps", true,
         [P](int, int s, const Cell& c) {
             return 1LL + static_cast<long long>(c.a) * (c.b - c.a) * (c.l - c.b) + P(c) * s;
         }},
        {"eps-paren", "(p+1)(r+1)+s+1+(r-1)(p-i0-1)+(p-1)(r+s)", true,
         [P, R](int, int s, const Cell& c) {
             return (P(c) + 1) * (R(c) + 1) + s + 1 + (R(c) - 1) * (P(c) - c.a - 1) + (P(c) - 1) * (R(c) + s);
         }},
        {"eps-brace", "(p+1)(r+1)+s+1+(r-1)(p-i0-1)+(p-1)r+s", true,
         [P, R](int, int s, const Cell& c) {
             return (P(c) + 1) * (R(c) + 1) + s + 1 + (R(c) - 1) * (P(c) - c.a - 1) + (P(c) - 1) * R(c) + s;
         }},
        {"eps-first-q", "(p+1)(r+1)+s+1+(q-1)(p-i0-1)+(p-1)(r+s)", true,
         [P, R](int q, int s, const Cell& c) {
             return (P(c) + 1) * (R(c) + 1) + s + 1 + static_cast<long long>(q - 1) * (P(c) - c.a - 1) +
                    (P(c) - 1) * (R(c) + s);
         }},
        {"pos-printed", "1+j0+(j1-j0)(l-j1)+q(r+s)", false,
         [R](int q, int s, const Cell& c) {
             return 1LL + c.a + static_cast<long long>(c.b - c.a) * (c.l - c.b) + static_cast<long long>(q) * (R(c) + s);
         }},
        {"pos-eps", "(p+1)(r+1)+qs+q+1+(p-1)(r-j0-1)+(p+q)(r-1)", false,
         [P, R](int q, int s, const Cell& c) {
             return (P(c) + 1) * (R(c) + 1) + static_cast<long long>(q) * s + q + 1 + (P(c) - 1) * (R(c) - c.a - 1) +
                    (P(c) + q) * (R(c) - 1);
         }},
    };
}

struct ReadingVerdict {
    std::string id, text;
    bool negative_cells = true;
    std::size_t cells = 0;
    std::size_t agree = 0;  // cells where the reading equals the determinant sign
    bool matches() const { return cells > 0 && agree == cells; }
    bool matches_up_to_global_sign() const { return cells > 0 && (agree == cells || agree == 0); }
};

struct SignSweep {
    int max_l = 0, max_q = 0, max_s = 0;
    std::size_t cells = 0;
    std::size_t negative_match = 0, negative_cells = 0;  // determinant vs closed form
    std::size_t positive_match = 0, positive_cells = 0;
    std::vector<ReadingVerdict> readings;
    std::string first_mismatch;

    bool negative_agrees() const { return negative_cells > 0 && negative_match == negative_cells; }
    bool positive_agrees() const { return positive_cells > 0 && positive_match == positive_cells; }
    bool negative_agrees_up_to_sign() const { return negative_cells > 0 && (negative_match == 0 || negative_agrees()); }
};

/// Determinant sign on every cell with l <= max_l, q <= max_q, s <= max_s,
/// compared with the closed forms and every printed reading.
inline SignSweep sweep_signs(int max_l, int max_q, int max_s, std::uint64_t seed = 2024, int samples = 3) {
    SignSweep out{max_l, max_q, max_s, 0, 0, 0, 0, 0, {}, {}};
    auto readings = printed_readings();
    for (auto& rd : readings) out.readings.push_back({rd.id, rd.text, rd.negative_cells, 0, 0});
    std::mt19937_64 rng(seed);
    for (int l = 0; l <= max_l; ++l)
        for (const Cell& c : all_cells(l))
            for (int q = 0; q <= max_q; ++q)
                for (int s = 0; s <= max_s; ++s) {
                    int det = jacobian_sign(q, s, c, rng, samples);
                    int closed = sign_of_parity(closed_form_exponent(q, s, c));
                    ++out.cells;
                    auto [match, total] = c.negative ? std::tie(out.negative_match, out.negative_cells)
                                                     : std::tie(out.positive_match, out.positive_cells);
                    ++total;
                    if (det == closed) ++match;
                    else if (out.first_mismatch.empty())
                        out.first_mismatch = c.to_string() + " q=" + std::to_string(q) + " s=" + std::to_string(s);
                    for (std::size_t k = 0; k < readings.size(); ++k) {
                        if (readings[k].negative_cells != c.negative) continue;
                        ++out.readings[k].cells;
                        if (sign_of_parity(readings[k].exponent(q, s, c)) == det) ++out.readings[k].agree;
                    }
                }
    return out;
}

/// Two exponents compared as parity functions over the sweep window.
struct ParityComparison {
    std::string left, right;
    std::size_t points = 0, agree = 0;
    bool identical() const { return points > 0 && agree == points; }
};

inline ParityComparison compare_parities(const Reading& a, const Reading& b, int max_l, int max_q, int max_s) {
    if (a.negative_cells != b.negative_cells) throw ArgumentError("compare_parities: readings speak about different cells");
    ParityComparison out{a.id, b.id, 0, 0};
    for (int l = 0; l <= max_l; ++l)
        for (const Cell& c : all_cells(l)) {
            if (c.negative != a.negative_cells) continue;
            for (int q = 0; q <= max_q; ++q)
                for (int s = 0; s <= max_s; ++s) {
                    ++out.points;
                    if (sign_of_parity(a.exponent(q, s, c)) == sign_of_parity(b.exponent(q, s, c))) ++out.agree;
                }
        }
    return out;
}

struct ResolverReport {
    SignSweep sweep;
    std::vector<ParityComparison> identities;
    std::vector<std::string> matching;               // readings equal to the determinant on every cell
    std::vector<std::string> matching_up_to_sign;    // equal up to one global sign on their half
};

/// Every reading of the printed exponents against the determinant oracle,
/// plus the printed equalities checked as parity identities.
inline ResolverReport resolve_printed_exponents(int max_l = 6, int max_q = 4, int max_s = 4, std::uint64_t seed = 2024) {
    ResolverReport out{sweep_signs(max_l, max_q, max_s, seed), {}, {}, {}};
    for (auto& v : out.sweep.readings) {
        if (v.matches()) out.matching.push_back(v.id);
        if (v.matches_up_to_global_sign()) out.matching_up_to_sign.push_back(v.id);
    }
    auto rs = printed_readings();
    auto find = [&](const std::string& id) -> const Reading& {
        for (auto& r : rs)
            if (r.id == id) return r;
        throw ArgumentError("resolve_printed_exponents: unknown reading " + id);
    };
    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"neg-sum", "eps-paren"},
                                                                        {"neg-product", "eps-paren"},
                                                                        {"neg-sum", "eps-brace"},
                                                                        {"neg-product", "eps-brace"},
                                                                        {"neg-sum", "eps-first-q"},
                                                                        {"pos-printed", "pos-eps"}})
        out.identities.push_back(compare_parities(find(a), find(b), max_l, max_q, max_s));
    return out;
}

}  // namespace hochlab

#endif
