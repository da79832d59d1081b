#ifndef HOCHLAB_CACHE_HPP
#define HOCHLAB_CACHE_HPP

// On-disk cache of assembled boundary matrices, one JSON document per
// bidegree. Documents live under <root>/<key>/ where <key> is a content hash
// of (format version, operad signature, normalization flag), so a format
// bump or a different operad never reuses stale files. Writes go to a
// temporary file first and are renamed into place.

#include "hochlab/linalg.hpp"
#include "hochlab/operad.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace hochlab {

inline constexpr const char* kBoundaryFormat = "hochlab-boundary-v1";

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class BoundaryCache {
public:
    BoundaryCache(std::filesystem::path root, const Operad& op, bool normalized)
        : root_(std::move(root)), normalized_(normalized), signature_(op.signature()) {
        std::ostringstream key;
        key << std::hex << fnv1a64(std::string(kBoundaryFormat) + "|" + signature_ + "|" + (normalized ? "N" : "F"));
        dir_ = root_ / key.str();
    }

    const std::filesystem::path& directory() const { return dir_; }

    std::filesystem::path file_for(int p, int q) const {
        return dir_ / ("p" + std::to_string(p) + "_q" + std::to_string(q) + ".json");
    }

    /// Boundary matrix C^p_q -> C^{p+1}_q if a matching document exists.
    std::optional<SparseMatrix> load(int p, int q, const std::vector<Monomial>& source,
                                     const std::vector<Monomial>& target) const {
        auto path = file_for(p, q);
        std::ifstream in(path);
        if (!in) return std::nullopt;
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception&) {
            return std::nullopt;
        }
        if (doc.value("format", "") != kBoundaryFormat || doc.value("operad", "") != signature_ ||
            doc.value("normalized", !normalized_) != normalized_ || doc.value("p", -1) != p || doc.value("q", -1) != q)
            return std::nullopt;
        if (doc["source_basis"] != names(source) || doc["target_basis"] != names(target)) return std::nullopt;
        std::vector<Triplet> t;
        for (auto& e : doc["triplets"])
            t.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), Rational(e[2].get<std::string>())});
        for (auto& x : t) x.value.canonicalize();
        return SparseMatrix(target.size(), source.size(), std::move(t));
    }

    void store(int p, int q, const std::vector<Monomial>& source, const std::vector<Monomial>& target,
               const SparseMatrix& m) const {
        nlohmann::json doc = to_json(p, q, source, target, m);
        std::filesystem::create_directories(dir_);
        static std::atomic<unsigned> counter{0};
        std::ostringstream tmpname;
        tmpname << ".tmp-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-" << counter++;
        auto tmp = dir_ / tmpname.str();
        {
            std::ofstream out(tmp);
            out << doc.dump() << '\n';
        }
        std::filesystem::rename(tmp, file_for(p, q));
    }

    nlohmann::json to_json(int p, int q, const std::vector<Monomial>& source, const std::vector<Monomial>& target,
                           const SparseMatrix& m) const {
        nlohmann::json trip = nlohmann::json::array();
        for (auto& e : m.entries()) trip.push_back({e.row, e.col, e.value.get_str()});
        return {{"format", kBoundaryFormat}, {"operad", signature_},     {"normalized", normalized_},
                {"p", p},                    {"q", q},                   {"source_basis", names(source)},
                {"target_basis", names(target)}, {"triplets", std::move(trip)}};
    }

private:
    static nlohmann::json names(const std::vector<Monomial>& ms) {
        nlohmann::json a = nlohmann::json::array();
        for (auto& m : ms) a.push_back(to_string(m));
        return a;
    }

    std::filesystem::path root_, dir_;
    bool normalized_;
    std::string signature_;
};

}  // namespace hochlab

#endif
