#ifndef HOCHLAB_KNOT_HPP
#define HOCHLAB_KNOT_HPP

// Named classes in the normalized Hochschild homology of Pois_n (the E^2
// term for long knots) and the table of their products and brackets.

#include "hochlab/gerstenhaber.hpp"
#include "hochlab/pois.hpp"

#include <memory>

namespace hochlab {

class KnotContext {
public:
    /// Window defaults to complexity m <= 4 and arity p <= 8.
    explicit KnotContext(int n, int max_complexity = 4, int max_arity = 8,
                         std::optional<std::filesystem::path> cache_dir = std::nullopt)
        : n_(n), op_(std::make_unique<PoisOperad>(n)) {
        if (max_complexity < 0) throw ArgumentError("KnotContext: negative complexity bound");
        if (n < 4) warnings_.push_back("n = " + std::to_string(n) + " < 4: classes have no knot-space interpretation");
        window_ = std::make_unique<ComplexWindow>(*op_, WindowBounds{max_arity, max_complexity * (n - 1)}, true,
                                                  std::move(cache_dir));
    }

    int n() const { return n_; }
    int bracket_degree() const { return n_ - 1; }
    const PoisOperad& operad() const { return *op_; }
    const ComplexWindow& window() const { return *window_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    void register_class(const std::string& name, HomologyClass c) {
        if (auto it = registry_.find(name); it != registry_.end()) it->second = std::move(c);
        else {
            order_.push_back(name);
            registry_.emplace(name, std::move(c));
        }
    }
    const HomologyClass& get(const std::string& name) const {
        auto it = registry_.find(name);
        if (it == registry_.end()) throw ArgumentError("KnotContext: no class named " + name);
        return it->second;
    }
    const std::vector<std::string>& names() const { return order_; }

private:
    int n_;
    std::unique_ptr<PoisOperad> op_;
    std::unique_ptr<ComplexWindow> window_;
    std::vector<std::string> warnings_;
    std::map<std::string, HomologyClass> registry_;
    std::vector<std::string> order_;
};

/// The class of [x1,x2] at (-2, n-1).
inline HomologyClass class_iota(const KnotContext& ctx) {
    const auto& w = ctx.window();
    int d = ctx.bracket_degree();
    w.require({{1, d}, {2, d}, {3, d}}, "class_iota");
    auto c = make_class(w, ctx.operad().normalize("[x1,x2]"), d);
    if (c.is_zero()) throw ContractViolation("class_iota: [x1,x2] is null-homologous");
    return c;
}

/// Generator at (-4, 2n-2). For odd n the homology there has rank 2 and
/// contains iota cup iota; v2 is the basis class at the first index that is
/// not the echelon pivot of iota cup iota. For even n the rank is 1 and v2 is
/// its basis class.
inline HomologyClass class_v2(const KnotContext& ctx) {
    const auto& w = ctx.window();
    int d = ctx.bracket_degree();
    Bidegree b{4, 2 * d};
    w.require({{3, b.q}, b, {5, b.q}}, "class_v2");
    std::size_t rank = w.homology_at(b).dim();
    if (ctx.n() % 2 == 0) {
        if (rank != 1) throw ContractViolation("class_v2: expected rank 1 at " + b.to_string() + ", found " + std::to_string(rank));
        return basis_class(w, b, 0);
    }
    if (rank != 2) throw ContractViolation("class_v2: expected rank 2 at " + b.to_string() + ", found " + std::to_string(rank));
    auto iota = class_iota(ctx);
    auto sq = cup_on_homology(w, iota, iota);
    std::size_t pivot = 0;
    while (pivot < sq.coordinates.size() && sq.coordinates[pivot] == 0) ++pivot;
    if (pivot == sq.coordinates.size()) throw ContractViolation("class_v2: iota cup iota vanishes in homology");
    return basis_class(w, b, pivot == 0 ? 1 : 0);
}

/// Registers iota and v2 when the window allows.
inline void register_standard_classes(KnotContext& ctx) {
    ctx.register_class("iota", class_iota(ctx));
    ctx.register_class("v2", class_v2(ctx));
}

struct TableRow {
    std::string operation;  // "cup" or "bracket"
    std::string left, right;
    Bidegree bidegree;
    Vector coordinates;
};

/// Cup products and brackets of all ordered pairs of registered classes
/// whose result has total degree <= max_total_degree.
inline std::vector<TableRow> poisson_table(const KnotContext& ctx, int max_total_degree) {
    const auto& w = ctx.window();
    std::vector<TableRow> rows;
    for (auto& a : ctx.names())
        for (auto& b : ctx.names()) {
            const auto& x = ctx.get(a);
            const auto& y = ctx.get(b);
            if (x.total() + y.total() <= max_total_degree) {
                auto c = cup_on_homology(w, x, y);
                rows.push_back({"cup", a, b, c.bidegree, c.coordinates});
            }
            if (x.total() + y.total() + 1 <= max_total_degree && x.bidegree.p + y.bidegree.p > 0) {
                auto c = bracket_on_homology(w, x, y);
                rows.push_back({"bracket", a, b, c.bidegree, c.coordinates});
            }
        }
    return rows;
}

}  // namespace hochlab

#endif
