#ifndef HOCHLAB_HOCHSCHILD_HPP
#define HOCHLAB_HOCHSCHILD_HPP

// The Hochschild complex of a multiplicative operad: C^p = O(p) with
// differential sum_{i=0}^{p+1} (-1)^i d^i, bigraded by arity p and internal
// degree q. The spectral-sequence position of C^p_q is (-p, q), total degree
// q - p. The normalized complex keeps the intersection of the kernels of all
// codegeneracies.

#include "hochlab/cache.hpp"
#include "hochlab/linalg.hpp"
#include "hochlab/operad.hpp"

#include <compare>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

namespace hochlab {

/// Arity p (filtration -p) and internal degree q.
struct Bidegree {
    int p = 0;
    int q = 0;

    int total() const { return q - p; }
    std::string to_string() const { return "(-" + std::to_string(p) + "," + std::to_string(q) + ")"; }
    auto operator<=>(const Bidegree&) const = default;
};

struct WindowError : ArgumentError {
    using ArgumentError::ArgumentError;
};

inline Element hochschild_boundary(const Element& x) {
    Element out(x.operad(), x.arity() + 1);
    for (int i = 0; i <= x.arity() + 1; ++i) {
        Element d = coface(i, x);
        out += (i % 2 == 0) ? d : -d;
    }
    return out;
}

struct WindowBounds {
    int max_arity = 8;
    int max_degree = 0;
};

class ComplexWindow {
public:
    ComplexWindow(const Operad& op, WindowBounds bounds, bool normalized = true,
                  std::optional<std::filesystem::path> cache_dir = std::nullopt)
        : op_(&op), bounds_(bounds), normalized_(normalized) {
        if (bounds.max_arity < 0 || bounds.max_degree < 0) throw ArgumentError("ComplexWindow: negative bounds");
        if (cache_dir) cache_.emplace(*cache_dir, op, normalized);
    }

    ComplexWindow(const ComplexWindow&) = delete;
    ComplexWindow& operator=(const ComplexWindow&) = delete;

    const Operad& operad() const { return *op_; }
    bool normalized() const { return normalized_; }
    const WindowBounds& bounds() const { return bounds_; }

    bool in_window(int p, int q) const { return p >= 0 && q >= 0 && p <= bounds_.max_arity && q <= bounds_.max_degree; }
    bool known_zero(int p, int q) const { return p < 0 || q < 0 || (normalized_ && op_->normalized_vanishes(p, q)); }
    bool available(int p, int q) const { return known_zero(p, q) || in_window(p, q); }

    void require(const std::vector<Bidegree>& needed, const std::string& what) const {
        std::string missing;
        for (auto& b : needed)
            if (!available(b.p, b.q)) missing += (missing.empty() ? "" : ", ") + b.to_string();
        if (!missing.empty())
            throw WindowError(what + ": window (max arity " + std::to_string(bounds_.max_arity) + ", max degree " +
                              std::to_string(bounds_.max_degree) + ") is missing bidegrees " + missing);
    }

    const std::vector<Monomial>& basis(int p, int q) const {
        require({{p, q}}, "basis");
        std::lock_guard lock(mutex_);
        auto key = Bidegree{p, q};
        if (auto it = bases_.find(key); it != bases_.end()) return it->second;
        std::vector<Monomial> b;
        if (!known_zero(p, q)) b = normalized_ ? op_->normalized_basis(p, q) : op_->basis(p, q);
        std::map<Monomial, std::size_t> index;
        for (std::size_t k = 0; k < b.size(); ++k) index.emplace(b[k], k);
        indices_.emplace(key, std::move(index));
        return bases_.emplace(key, std::move(b)).first->second;
    }

    std::size_t dim(int p, int q) const { return basis(p, q).size(); }

    Vector to_vector(const Element& x, int p, int q) const {
        if (&x.operad() != op_) throw ArgumentError("to_vector: element of a different operad");
        if (x.arity() != p) throw ArgumentError("to_vector: arity mismatch");
        basis(p, q);
        std::lock_guard lock(mutex_);
        const auto& index = indices_.at({p, q});
        Vector v(index.size());
        for (auto& [m, c] : x.terms()) {
            auto it = index.find(m);
            if (it == index.end() || op_->degree(m) != q)
                throw ContractViolation("to_vector: " + to_string(m) + " is not in the basis at " + Bidegree{p, q}.to_string());
            v[it->second] = c;
        }
        return v;
    }

    Element from_vector(int p, int q, const Vector& v) const {
        const auto& b = basis(p, q);
        if (v.size() != b.size()) throw ArgumentError("from_vector: length mismatch");
        Terms t;
        for (std::size_t k = 0; k < b.size(); ++k)
            if (v[k] != 0) t.emplace(b[k], v[k]);
        return Element(*op_, p, std::move(t));
    }

    /// Matrix of the differential C^p_q -> C^{p+1}_q in the window bases.
    const SparseMatrix& boundary(int p, int q) const {
        {
            std::lock_guard lock(mutex_);
            if (auto it = boundaries_.find({p, q}); it != boundaries_.end()) return it->second;
        }
        const auto& source = basis(p, q);
        const auto& target = basis(p + 1, q);
        std::optional<SparseMatrix> m;
        if (cache_ && p >= 0) m = cache_->load(p, q, source, target);
        if (!m) {
            m = assemble(p, q, source, target);
            if (cache_ && p >= 0 && !source.empty()) cache_->store(p, q, source, target, *m);
        }
        std::lock_guard lock(mutex_);
        return boundaries_.emplace(Bidegree{p, q}, std::move(*m)).first->second;
    }

    const QuotientPresentation& homology_at(Bidegree b) const {
        require({{b.p - 1, b.q}, {b.p, b.q}, {b.p + 1, b.q}}, "homology at " + b.to_string());
        {
            std::lock_guard lock(mutex_);
            if (auto it = homology_.find(b); it != homology_.end()) return it->second;
        }
        QuotientPresentation h(boundary(b.p - 1, b.q), boundary(b.p, b.q));
        std::lock_guard lock(mutex_);
        return homology_.emplace(b, std::move(h)).first->second;
    }

    /// Nonzero homology ranks with q - p = t. Bidegrees outside the window
    /// must be known to vanish; otherwise the window is reported too small.
    std::map<Bidegree, std::size_t> total_degree_slice(int t) const {
        std::map<Bidegree, std::size_t> out;
        if (t < -bounds_.max_arity) return out;
        std::vector<Bidegree> candidates;
        for (int p = std::max(0, -t); p <= bounds_.max_arity + 64; ++p) {
            int q = t + p;
            if (known_zero(p, q)) continue;
            candidates.push_back({p, q});
        }
        std::vector<Bidegree> needed;
        for (auto& b : candidates)
            for (int dp = -1; dp <= 1; ++dp) needed.push_back({b.p + dp, b.q});
        require(needed, "total degree slice " + std::to_string(t));
        for (auto& b : candidates)
            if (auto r = homology_at(b).dim()) out.emplace(b, r);
        return out;
    }

    /// Assembles the listed boundaries using up to `jobs` threads.
    void prefetch(const std::vector<Bidegree>& bidegrees, unsigned jobs) const {
        for (auto& b : bidegrees) {
            basis(b.p, b.q);
            basis(b.p + 1, b.q);
        }
        if (jobs <= 1) {
            for (auto& b : bidegrees) boundary(b.p, b.q);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (std::size_t k; (k = next++) < bidegrees.size();) boundary(bidegrees[k].p, bidegrees[k].q);
            });
        for (auto& th : pool) th.join();
    }

private:
    SparseMatrix assemble(int p, int q, const std::vector<Monomial>& source, const std::vector<Monomial>& target) const {
        std::map<Monomial, std::size_t> tindex;
        for (std::size_t k = 0; k < target.size(); ++k) tindex.emplace(target[k], k);
        std::vector<Triplet> t;
        for (std::size_t c = 0; c < source.size(); ++c) {
            Element d = hochschild_boundary(Element(*op_, source[c]));
            for (auto& [m, coef] : d.terms()) {
                auto it = tindex.find(m);
                if (it == tindex.end())
                    throw ContractViolation("boundary of " + to_string(source[c]) + " leaves the complex at " +
                                            Bidegree{p + 1, q}.to_string() + " via " + to_string(m));
                t.push_back({it->second, c, coef});
            }
        }
        return SparseMatrix(target.size(), source.size(), std::move(t));
    }

    const Operad* op_;
    WindowBounds bounds_;
    bool normalized_;
    std::optional<BoundaryCache> cache_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<Bidegree, std::vector<Monomial>> bases_;
    mutable std::map<Bidegree, std::map<Monomial, std::size_t>> indices_;
    mutable std::map<Bidegree, SparseMatrix> boundaries_;
    mutable std::map<Bidegree, QuotientPresentation> homology_;
};

/// Normalized basis at (p, q) computed straight from the definition: the
/// joint kernel of all codegeneracies, as a basis of vectors in the full
/// monomial basis. Used as an independent check of the singleton criterion.
inline std::vector<Vector> codegeneracy_kernel(const Operad& op, int p, int q) {
    auto source = op.basis(p, q);
    if (p == 0) {
        std::vector<Vector> id;
        for (std::size_t k = 0; k < source.size(); ++k) {
            Vector v(source.size());
            v[k] = 1;
            id.push_back(v);
        }
        return id;
    }
    auto target = op.basis(p - 1, q);
    std::map<Monomial, std::size_t> tindex;
    for (std::size_t k = 0; k < target.size(); ++k) tindex.emplace(target[k], k);
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < source.size(); ++c)
        for (int i = 0; i < p; ++i) {
            Element s = codegeneracy(i, Element(op, source[c]));
            for (auto& [m, coef] : s.terms())
                t.push_back({static_cast<std::size_t>(i) * target.size() + tindex.at(m), c, coef});
        }
    return kernel_basis(SparseMatrix(static_cast<std::size_t>(p) * target.size(), source.size(), std::move(t)));
}

/// d o d = 0 as a matrix identity on every bidegree of the window whose
/// second image is still inside it.
inline CheckReport verify_boundary_squared(const ComplexWindow& w) {
    CheckReport rep;
    const auto& b = w.bounds();
    for (int p = 0; p + 2 <= b.max_arity; ++p)
        for (int q = 0; q <= b.max_degree; ++q) {
            if (w.known_zero(p, q)) continue;
            const auto& d1 = w.boundary(p, q);
            const auto& d2 = w.boundary(p + 1, q);
            rep.record(d2.multiply(d1).is_zero(), "d^2 = 0 at " + Bidegree{p, q}.to_string());
        }
    return rep;
}

}  // namespace hochlab

#endif
