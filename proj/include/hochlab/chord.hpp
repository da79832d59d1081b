#ifndef HOCHLAB_CHORD_HPP
#define HOCHLAB_CHORD_HPP

// Linear chord diagrams modulo the 4-term and 1-term relations.

#include "hochlab/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <map>
#include <string>
#include <vector>

namespace hochlab {

inline constexpr int kMaxChords = 6;

/// A perfect matching on {1..2k}, stored as the chord label at each point
/// with chords numbered by first endpoint.
class ChordDiagram {
public:
    ChordDiagram() = default;

    /// From labels along the line; any labelling where each label occurs
    /// exactly twice is accepted and canonicalized.
    static ChordDiagram from_labels(const std::vector<int>& labels) {
        std::map<int, int> count, rename;
        for (int l : labels) ++count[l];
        for (auto& [l, c] : count)
            if (c != 2) throw ArgumentError("ChordDiagram: every chord needs exactly two endpoints");
        ChordDiagram d;
        for (int l : labels) {
            auto [it, fresh] = rename.emplace(l, static_cast<int>(rename.size()));
            d.labels_.push_back(it->second);
        }
        return d;
    }

    static ChordDiagram from_pairs(const std::vector<std::pair<int, int>>& pairs) {
        int n = 2 * static_cast<int>(pairs.size());
        std::vector<int> labels(static_cast<std::size_t>(n), -1);
        for (std::size_t c = 0; c < pairs.size(); ++c)
            for (int pt : {pairs[c].first, pairs[c].second}) {
                if (pt < 1 || pt > n || labels[static_cast<std::size_t>(pt - 1)] != -1)
                    throw ArgumentError("ChordDiagram: pairs do not partition {1.." + std::to_string(n) + "}");
                labels[static_cast<std::size_t>(pt - 1)] = static_cast<int>(c);
            }
        return from_labels(labels);
    }

    /// Parses "(1 3)(2 4)"; the empty string is the empty diagram.
    static ChordDiagram parse(const std::string& text) {
        std::vector<std::pair<int, int>> pairs;
        std::size_t i = 0;
        auto skip = [&] {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        auto number = [&] {
            skip();
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i) throw ArgumentError("ChordDiagram: expected a point number in '" + text + "'");
            int v = std::stoi(text.substr(i, j - i));
            i = j;
            return v;
        };
        for (skip(); i < text.size(); skip()) {
            if (text[i] != '(') throw ArgumentError("ChordDiagram: expected '(' in '" + text + "'");
            ++i;
            int a = number();
            skip();
            if (i < text.size() && text[i] == ',') ++i;
            int b = number();
            skip();
            if (i >= text.size() || text[i] != ')') throw ArgumentError("ChordDiagram: expected ')' in '" + text + "'");
            ++i;
            pairs.push_back({std::min(a, b), std::max(a, b)});
        }
        return from_pairs(pairs);
    }

    int chords() const { return static_cast<int>(labels_.size()) / 2; }
    const std::vector<int>& labels() const { return labels_; }

    /// Chords as (a, b), a < b, 1-based, sorted by first endpoint.
    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out(static_cast<std::size_t>(chords()), {0, 0});
        for (std::size_t pos = 0; pos < labels_.size(); ++pos) {
            auto& pr = out[static_cast<std::size_t>(labels_[pos])];
            (pr.first == 0 ? pr.first : pr.second) = static_cast<int>(pos) + 1;
        }
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (auto [a, b] : pairs()) s += "(" + std::to_string(a) + " " + std::to_string(b) + ")";
        return s;
    }

    /// No other chord has exactly one endpoint strictly between a and b.
    bool chord_isolated(int c) const {
        auto [a, b] = pairs()[static_cast<std::size_t>(c)];
        std::vector<int> inside(static_cast<std::size_t>(chords()), 0);
        for (int pos = a; pos < b - 1; ++pos) ++inside[static_cast<std::size_t>(labels_[static_cast<std::size_t>(pos)])];
        for (int o = 0; o < chords(); ++o)
            if (o != c && inside[static_cast<std::size_t>(o)] == 1) return false;
        return true;
    }

    bool has_isolated_chord() const {
        for (int c = 0; c < chords(); ++c)
            if (chord_isolated(c)) return true;
        return false;
    }

    auto operator<=>(const ChordDiagram&) const = default;

private:
    std::vector<int> labels_;
};

/// All (2k-1)!! diagrams in lexicographic order of their label sequences.
inline std::vector<ChordDiagram> enumerate_diagrams(int k) {
    if (k < 0) throw ArgumentError("enumerate_diagrams: negative chord count");
    if (k > kMaxChords + 2) throw ResourceError("enumerate_diagrams: k = " + std::to_string(k) + " is too large to enumerate");
    std::vector<ChordDiagram> out;
    std::vector<int> labels(static_cast<std::size_t>(2 * k), -1);
    auto rec = [&](auto&& self, int next) -> void {
        auto it = std::find(labels.begin(), labels.end(), -1);
        if (it == labels.end()) {
            out.push_back(ChordDiagram::from_labels(labels));
            return;
        }
        *it = next;
        for (auto jt = it + 1; jt != labels.end(); ++jt)
            if (*jt == -1) {
                *jt = next;
                self(self, next + 1);
                *jt = -1;
            }
        *it = -1;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

inline ChordDiagram concat(const ChordDiagram& a, const ChordDiagram& b) {
    std::vector<int> labels = a.labels();
    for (int l : b.labels()) labels.push_back(l + a.chords());
    return ChordDiagram::from_labels(labels);
}

using ChordCombo = std::map<ChordDiagram, Rational>;

/// Four-term relators: for chords a != b and an endpoint e of b, put e
/// immediately left and right of each endpoint of a. With L_i / R_i the
/// diagrams where e sits left / right of the i-th endpoint of a,
///   L_1 - R_1 + L_2 - R_2
/// is the relator (invariance of the Casimir tensor under the sliding chord).
inline std::vector<ChordCombo> four_term_relators(int k) {
    std::vector<ChordCombo> out;
    std::set<ChordCombo> seen;
    for (auto& d : enumerate_diagrams(k)) {
        const auto& w = d.labels();
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                if (a == b) continue;
                for (int which = 0; which < 2; ++which) {
                    std::vector<int> rest;
                    int seen_b = 0;
                    for (int l : w) {
                        if (l == b && seen_b++ == which) continue;
                        rest.push_back(l);
                    }
                    std::vector<std::size_t> apos;
                    for (std::size_t i = 0; i < rest.size(); ++i)
                        if (rest[i] == a) apos.push_back(i);
                    auto place = [&](std::size_t at) {
                        std::vector<int> v = rest;
                        v.insert(v.begin() + static_cast<std::ptrdiff_t>(at), b);
                        return ChordDiagram::from_labels(v);
                    };
                    ChordCombo rel;
                    auto add = [&](const ChordDiagram& x, int c) {
                        auto& slot = rel[x];
                        slot += c;
                        if (slot == 0) rel.erase(x);
                    };
                    add(place(apos[0]), 1);
                    add(place(apos[0] + 1), -1);
                    add(place(apos[1]), 1);
                    add(place(apos[1] + 1), -1);
                    if (rel.empty()) continue;
                    // normalize the overall sign so duplicates collapse
                    if (rel.begin()->second < 0)
                        for (auto& [x, c] : rel) c = -c;
                    if (seen.insert(rel).second) out.push_back(std::move(rel));
                }
            }
    }
    return out;
}

/// Relation subspace in the diagram basis of enumerate_diagrams(k): rows are
/// the 4T relators and, if one_term, every diagram with an isolated chord.
class RelationSpan {
public:
    explicit RelationSpan(int k, bool one_term = true) : k_(k) {
        if (k < 0) throw ArgumentError("RelationSpan: negative chord count");
        if (k > kMaxChords)
            throw ResourceError("chord diagrams with k = " + std::to_string(k) + " exceed the enumeration budget (k <= " +
                                std::to_string(kMaxChords) + "); lower --max-k");
        basis_ = enumerate_diagrams(k);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            index_.emplace(basis_[i], i);
            // diagrams killed by 1T are dropped from the columns up front
            if (!(one_term && basis_[i].has_isolated_chord())) active_.emplace(i, active_.size());
        }
        std::vector<Triplet> t;
        std::size_t row = 0;
        for (auto& rel : four_term_relators(k)) {
            bool any = false;
            for (auto& [d, c] : rel)
                if (auto it = active_.find(index_.at(d)); it != active_.end()) {
                    t.push_back({row, it->second, c});
                    any = true;
                }
            if (any) ++row;
        }
        echelon_ = Echelon(SparseMatrix(row, active_.size(), std::move(t)));
    }

    int k() const { return k_; }
    const std::vector<ChordDiagram>& basis() const { return basis_; }
    std::size_t rank() const { return (basis_.size() - active_.size()) + echelon_->rank(); }
    std::size_t quotient_dim() const { return active_.size() - echelon_->rank(); }

    Vector to_vector(const ChordCombo& x) const {
        Vector v(basis_.size());
        for (auto& [d, c] : x) {
            auto it = index_.find(d);
            if (it == index_.end()) throw ArgumentError("RelationSpan: diagram " + d.to_string() + " has the wrong chord count");
            v[it->second] += c;
        }
        return v;
    }

    bool contains(const ChordCombo& x) const {
        Vector full = to_vector(x);
        Vector v(active_.size());
        for (auto& [i, a] : active_) v[a] = full[i];
        std::vector<Vector> rows;
        for (auto& r : echelon_->rows()) {
            Vector rv(active_.size());
            for (auto& [c, val] : r) rv[c] = Rational(val);
            rows.push_back(std::move(rv));
        }
        rows.push_back(v);
        return hochlab::rank(SparseMatrix::from_columns(active_.size(), rows)) == echelon_->rank();
    }

private:
    int k_;
    std::vector<ChordDiagram> basis_;
    std::map<ChordDiagram, std::size_t> index_;
    std::map<std::size_t, std::size_t> active_;
    std::optional<Echelon> echelon_;
};

inline std::size_t dim_A(int k, bool one_term = true) { return RelationSpan(k, one_term).quotient_dim(); }

}  // namespace hochlab

#endif
