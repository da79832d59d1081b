#ifndef HOCHLAB_LINALG_HPP
#define HOCHLAB_LINALG_HPP

// Exact sparse linear algebra over Q, with an F_p mode kept around as a
// cheap cross-check. Elimination is fraction-free: every working row is a
// primitive integer vector, pivots are chosen by shortest row among the
// candidates for the current column (ties broken by row index), and the
// result is a fully reduced echelon form so that kernels and preimages come
// out in a canonical, platform-independent basis.

#include "hochlab/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hochlab {

using Vector = std::vector<Rational>;

struct Triplet {
    std::size_t row;
    std::size_t col;
    Rational value;
};

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    /// Builds a matrix from triplets; duplicates are summed and zeros dropped.
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
        : rows_(rows), cols_(cols) {
        std::map<std::pair<std::size_t, std::size_t>, Rational> acc;
        for (auto& t : entries) {
            if (t.row >= rows || t.col >= cols)
                throw ArgumentError("SparseMatrix: triplet index out of range");
            acc[{t.row, t.col}] += t.value;
        }
        for (auto& [rc, v] : acc)
            if (v != 0) entries_.push_back({rc.first, rc.second, v});
    }

    static SparseMatrix identity(std::size_t n) {
        std::vector<Triplet> t;
        for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, Rational(1)});
        return {n, n, std::move(t)};
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static SparseMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
        std::vector<Triplet> t;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].size() != rows)
                throw ArgumentError("SparseMatrix::from_columns: column length mismatch");
            for (std::size_t r = 0; r < rows; ++r)
                if (columns[c][r] != 0) t.push_back({r, c, columns[c][r]});
        }
        return {rows, columns.size(), std::move(t)};
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Triplet>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    SparseMatrix transpose() const {
        std::vector<Triplet> t;
        t.reserve(entries_.size());
        for (auto& e : entries_) t.push_back({e.col, e.row, e.value});
        return {cols_, rows_, std::move(t)};
    }

    Vector apply(const Vector& x) const {
        if (x.size() != cols_) throw ArgumentError("SparseMatrix::apply: dimension mismatch");
        Vector y(rows_);
        for (auto& e : entries_)
            if (x[e.col] != 0) y[e.row] += e.value * x[e.col];
        return y;
    }

    SparseMatrix multiply(const SparseMatrix& rhs) const {
        if (cols_ != rhs.rows_) throw ArgumentError("SparseMatrix::multiply: dimension mismatch");
        std::vector<std::vector<std::pair<std::size_t, Rational>>> rhs_rows(rhs.rows_);
        for (auto& e : rhs.entries_) rhs_rows[e.row].push_back({e.col, e.value});
        std::vector<Triplet> t;
        for (auto& e : entries_)
            for (auto& [c, v] : rhs_rows[e.col]) t.push_back({e.row, c, e.value * v});
        return {rows_, rhs.cols_, std::move(t)};
    }

    bool operator==(const SparseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Triplet> entries_;  // sorted by (row, col), no zeros
};

inline bool operator==(const Triplet& a, const Triplet& b) {
    return a.row == b.row && a.col == b.col && a.value == b.value;
}

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;  // sorted by column

inline void make_primitive(IntRow& row) {
    if (row.empty()) return;
    Integer g = 0;
    for (auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (row.front().second < 0) g = -g;
    if (g != 1)
        for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

inline IntRow integer_row(const std::vector<std::pair<std::size_t, Rational>>& row) {
    Integer l = 1;
    for (auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    IntRow out;
    out.reserve(row.size());
    for (auto& [c, v] : row) {
        Integer x = v.get_num() * (l / v.get_den());
        out.push_back({c, x});
    }
    make_primitive(out);
    return out;
}

inline const Integer* entry_at(const IntRow& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// row := a*row - b*pivot, then primitive.
inline void eliminate(IntRow& row, const Integer& a, const Integer& b, const IntRow& pivot) {
    IntRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.push_back({row[i].first, a * row[i].second});
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.push_back({pivot[j].first, -b * pivot[j].second});
            ++j;
        } else {
            Integer v = a * row[i].second - b * pivot[j].second;
            if (v != 0) out.push_back({row[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    row = std::move(out);
}

}  // namespace detail

/// Reduced row echelon form of a matrix, kept as primitive integer rows.
/// Row i has its pivot in column pivot_cols[i]; every other pivot column is
/// zero in row i.
class Echelon {
public:
    explicit Echelon(const SparseMatrix& m) : cols_(m.cols()) {
        std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(m.rows());
        for (auto& e : m.entries()) rows[e.row].push_back({e.col, e.value});
        std::vector<detail::IntRow> work;
        work.reserve(rows.size());
        for (auto& r : rows)
            if (!r.empty()) work.push_back(detail::integer_row(r));
        reduce(std::move(work));
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivots_; }
    const std::vector<detail::IntRow>& rows() const { return rows_; }

    /// Basis of the null space: one primitive integer vector per free column,
    /// in increasing order of the free column.
    std::vector<Vector> kernel_basis() const {
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots_) is_pivot[c] = true;
        std::vector<Vector> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            Vector x(cols_);
            x[f] = 1;
            for (std::size_t r = 0; r < rows_.size(); ++r)
                if (auto* v = detail::entry_at(rows_[r], f))
                    x[pivots_[r]] = ratio(-*v, pivot_value(r));
            basis.push_back(primitive(std::move(x)));
        }
        return basis;
    }

    const Integer& pivot_value(std::size_t r) const { return *detail::entry_at(rows_[r], pivots_[r]); }

    /// Scales a rational vector to a primitive integer vector with positive
    /// leading entry.
    static Vector primitive(Vector x) {
        std::vector<std::pair<std::size_t, Rational>> nz;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0) nz.push_back({i, x[i]});
        if (nz.empty()) return x;
        auto ir = detail::integer_row(nz);
        Vector out(x.size());
        for (auto& [c, v] : ir) out[c] = Rational(v);
        return out;
    }

private:
    void reduce(std::vector<detail::IntRow> work) {
        std::vector<bool> used(work.size(), false);
        std::vector<std::size_t> pivot_rows;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::optional<std::size_t> best;
            for (std::size_t r = 0; r < work.size(); ++r) {
                if (used[r] || work[r].empty() || work[r].front().first != c) continue;
                if (!best || work[r].size() < work[*best].size()) best = r;
            }
            if (!best) continue;
            used[*best] = true;
            const detail::IntRow pivot = work[*best];
            const Integer& a = pivot.front().second;
            for (std::size_t r = 0; r < work.size(); ++r) {
                if (r == *best) continue;
                if (auto* v = detail::entry_at(work[r], c)) {
                    Integer b = *v;
                    Integer g;
                    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                    detail::eliminate(work[r], a / g, b / g, pivot);
                }
            }
            pivot_rows.push_back(*best);
            pivots_.push_back(c);
        }
        for (auto r : pivot_rows) rows_.push_back(std::move(work[r]));
    }

    std::size_t cols_;
    std::vector<std::size_t> pivots_;
    std::vector<detail::IntRow> rows_;
};

inline std::size_t rank(const SparseMatrix& m) { return Echelon(m).rank(); }

inline std::vector<Vector> kernel_basis(const SparseMatrix& m) { return Echelon(m).kernel_basis(); }

/// Some x with m*x = b, or nullopt when b is not in the column space.
inline std::optional<Vector> solve(const SparseMatrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw ArgumentError("solve: right-hand side has wrong length");
    std::vector<Triplet> t = m.entries();
    for (std::size_t r = 0; r < b.size(); ++r)
        if (b[r] != 0) t.push_back({r, m.cols(), b[r]});
    Echelon e(SparseMatrix(m.rows(), m.cols() + 1, std::move(t)));
    Vector x(m.cols());
    for (std::size_t r = 0; r < e.rank(); ++r) {
        std::size_t pc = e.pivot_cols()[r];
        if (pc == m.cols()) return std::nullopt;
        if (auto* v = detail::entry_at(e.rows()[r], m.cols())) x[pc] = ratio(*v, e.pivot_value(r));
    }
    return x;
}

/// Rank over F_p. Returns nullopt when some entry's denominator vanishes mod p.
inline std::optional<std::size_t> rank_mod_p(const SparseMatrix& m, std::uint64_t p) {
    auto reduce_mod = [p](const Integer& z) {
        Integer r = z % Integer(static_cast<unsigned long>(p));
        if (r < 0) r += static_cast<unsigned long>(p);
        return static_cast<std::uint64_t>(r.get_ui());
    };
    auto inverse = [p](std::uint64_t a) {
        std::uint64_t result = 1, e = p - 2;
        while (e) {
            if (e & 1) result = static_cast<std::uint64_t>((unsigned __int128)result * a % p);
            a = static_cast<std::uint64_t>((unsigned __int128)a * a % p);
            e >>= 1;
        }
        return result;
    };
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
    for (auto& e : m.entries()) {
        std::uint64_t den = reduce_mod(e.value.get_den());
        if (den == 0) return std::nullopt;
        a[e.row][e.col] = static_cast<std::uint64_t>(
            (unsigned __int128)reduce_mod(e.value.get_num()) * inverse(den) % p);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && a[piv][c] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[rank]);
        std::uint64_t inv = inverse(a[rank][c]);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (a[r][c] == 0) continue;
            std::uint64_t f = static_cast<std::uint64_t>((unsigned __int128)a[r][c] * inv % p);
            for (std::size_t k = c; k < m.cols(); ++k) {
                std::uint64_t sub = static_cast<std::uint64_t>((unsigned __int128)f * a[rank][k] % p);
                a[r][k] = (a[r][k] + p - sub) % p;
            }
        }
        ++rank;
    }
    return rank;
}

/// Cycles modulo boundaries for a pair of composable maps
///   C_prev --incoming--> C --outgoing--> C_next.
/// The homology basis is chosen greedily from the kernel basis: a cycle is
/// kept when it is independent of the boundaries and of the cycles already
/// kept.
class QuotientPresentation {
public:
    QuotientPresentation() = default;

    QuotientPresentation(const SparseMatrix& incoming, const SparseMatrix& outgoing)
        : ambient_(outgoing.cols()), outgoing_(outgoing) {
        if (incoming.rows() != outgoing.cols())
            throw ArgumentError("QuotientPresentation: incoming/outgoing dimensions do not compose");
        cycles_ = kernel_basis(outgoing);
        Echelon image(incoming.transpose());
        for (auto& row : image.rows()) {
            Vector v(ambient_);
            for (auto& [c, x] : row) v[c] = Rational(x);
            boundaries_.push_back(std::move(v));
        }
        std::vector<Vector> span = boundaries_;
        std::size_t current = Echelon(SparseMatrix::from_columns(ambient_, span).transpose()).rank();
        for (auto& z : cycles_) {
            span.push_back(z);
            std::size_t next = Echelon(SparseMatrix::from_columns(ambient_, span).transpose()).rank();
            if (next > current) {
                homology_.push_back(z);
                current = next;
            } else {
                span.pop_back();
            }
        }
        if (boundaries_.size() + homology_.size() != cycles_.size())
            throw ContractViolation("QuotientPresentation: boundaries are not contained in cycles");
        combined_ = SparseMatrix::from_columns(ambient_, span);
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return homology_.size(); }
    const std::vector<Vector>& cycles() const { return cycles_; }
    const std::vector<Vector>& boundaries() const { return boundaries_; }
    const std::vector<Vector>& homology_basis() const { return homology_; }

    bool is_cycle(const Vector& v) const {
        for (auto& x : outgoing_.apply(v))
            if (x != 0) return false;
        return true;
    }

    /// Coordinates of the class of v in homology_basis().
    Vector reduce(const Vector& v) const {
        if (v.size() != ambient_) throw ArgumentError("quotient_reduce: vector has wrong length");
        if (!is_cycle(v)) throw ContractViolation("quotient_reduce: vector is not a cycle");
        if (homology_.empty()) return {};
        auto x = solve(combined_, v);
        if (!x) throw ContractViolation("quotient_reduce: cycle outside span of boundaries and homology basis");
        return Vector(x->begin() + static_cast<std::ptrdiff_t>(boundaries_.size()), x->end());
    }

    bool is_boundary(const Vector& v) const {
        if (!is_cycle(v)) return false;
        for (auto& c : reduce(v))
            if (c != 0) return false;
        return true;
    }

private:
    std::size_t ambient_ = 0;
    SparseMatrix outgoing_;
    std::vector<Vector> cycles_, boundaries_, homology_;
    SparseMatrix combined_;
};

/// Coordinates of v's class given explicit cycle and boundary bases (the
/// homology basis is picked from `cycles` as in QuotientPresentation).
inline Vector quotient_reduce(const std::vector<Vector>& cycles, const std::vector<Vector>& boundaries,
                              const Vector& v) {
    std::size_t n = v.size();
    for (auto& c : cycles)
        if (c.size() != n) throw ArgumentError("quotient_reduce: dimension mismatch");
    for (auto& b : boundaries)
        if (b.size() != n) throw ArgumentError("quotient_reduce: dimension mismatch");
    // Present the quotient as kernel of the projection off span(cycles):
    // outgoing = 0 on span(cycles), so check membership explicitly.
    if (!solve(SparseMatrix::from_columns(n, cycles), v))
        throw ContractViolation("quotient_reduce: vector is not in the cycle subspace");
    std::vector<Vector> span = boundaries;
    std::vector<Vector> homology;
    std::size_t current = rank(SparseMatrix::from_columns(n, span));
    for (auto& z : cycles) {
        span.push_back(z);
        std::size_t next = rank(SparseMatrix::from_columns(n, span));
        if (next > current) {
            homology.push_back(z);
            current = next;
        } else {
            span.pop_back();
        }
    }
    auto x = solve(SparseMatrix::from_columns(n, span), v);
    if (!x) throw ContractViolation("quotient_reduce: boundaries not contained in cycles");
    return Vector(x->end() - static_cast<std::ptrdiff_t>(homology.size()), x->end());
}

}  // namespace hochlab

#endif
