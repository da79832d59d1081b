// hochlab: command-line front end.
//
// Exit status: 0 ok, 1 failed check or contract violation, 2 usage error,
// 3 resource bound exceeded.

#include "hochlab/acceptance.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

using namespace hochlab;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string operad = "pois";
    std::vector<int> ns{5};
    int max_complexity = 4;
    int max_arity = 8;
    std::string field = "Q";
    std::string format = "text";
    std::string cache_dir;
    unsigned jobs = 1;

    std::optional<std::uint64_t> prime() const {
        if (field == "Q" || field == "rational" || field == "rationals") return std::nullopt;
        std::uint64_t p = 0;
        try {
            p = std::stoull(field);
        } catch (const std::exception&) {
            throw UsageError("--field must be Q or a prime, got '" + field + "'");
        }
        if (p < 2) throw UsageError("--field: " + field + " is not prime");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw UsageError("--field: " + field + " is not prime");
        return p;
    }
    std::optional<std::filesystem::path> cache() const {
        if (cache_dir.empty()) return std::nullopt;
        return std::filesystem::path(cache_dir);
    }
    json to_json() const {
        return {{"operad", operad}, {"n", ns}, {"max_complexity", max_complexity}, {"max_arity", max_arity}, {"field", field}};
    }
};

struct Output {
    json results = json::array();
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> text;  // replaces the table in text format when set
    bool failed = false;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit(const std::string& command, const RunConfig& cfg, const Output& out) {
    if (cfg.format == "json") {
        json doc{{"command", command}, {"config", cfg.to_json()}, {"results", out.results}, {"version", kVersion}};
        std::cout << doc.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        auto line = [](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "," : "") + csv_field(r[k]);
            return s;
        };
        std::cout << line(out.header) << '\n';
        for (auto& r : out.rows) std::cout << line(r) << '\n';
    } else if (!out.text.empty()) {
        for (auto& l : out.text) std::cout << l << '\n';
    } else {
        std::vector<std::size_t> width(out.header.size(), 0);
        auto widen = [&](const std::vector<std::string>& r) {
            for (std::size_t k = 0; k < r.size() && k < width.size(); ++k) width[k] = std::max(width[k], r[k].size());
        };
        widen(out.header);
        for (auto& r : out.rows) widen(r);
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t k = 0; k < r.size(); ++k) {
                std::string cell = r[k];
                if (k + 1 < r.size()) cell.resize(std::max(width[k], cell.size()), ' ');
                s += (k ? "  " : "") + cell;
            }
            return s;
        };
        std::cout << line(out.header) << '\n';
        for (auto& r : out.rows) std::cout << line(r) << '\n';
    }
}

std::unique_ptr<Operad> make_operad(const RunConfig& cfg, int n) {
    if (cfg.operad == "pois") return std::make_unique<PoisOperad>(n);
    if (cfg.operad == "assoc") return std::make_unique<AssocOperad>();
    throw UsageError("--operad must be pois or assoc");
}

int max_degree(const RunConfig& cfg, const Operad& op) {
    if (auto p = dynamic_cast<const PoisOperad*>(&op)) return cfg.max_complexity * p->bracket_degree();
    return 0;
}

Bidegree parse_bidegree(std::string s) {
    std::erase_if(s, [](char c) { return c == '(' || c == ')' || c == ' '; });
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--bidegree expects -p,q, got '" + s + "'");
    std::string ps = s.substr(0, comma), qs = s.substr(comma + 1);
    if (!ps.empty() && ps[0] == '-') ps.erase(0, 1);
    try {
        std::size_t used = 0;
        int p = std::stoi(ps, &used);
        if (used != ps.size()) throw std::invalid_argument("p");
        int q = std::stoi(qs, &used);
        if (used != qs.size()) throw std::invalid_argument("q");
        if (p < 0) throw std::invalid_argument("p");
        return {p, q};
    } catch (const std::logic_error&) {
        throw UsageError("--bidegree expects -p,q with integers p >= 0, got '" + s + "'");
    }
}

std::string vector_string(const Vector& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].get_str();
    return s + "]";
}

json vector_json(const Vector& v) {
    json a = json::array();
    for (auto& c : v) a.push_back(c.get_str());
    return a;
}

// Homology dimension over F_p from the same window matrices.
std::optional<std::size_t> homology_dim_mod(const ComplexWindow& w, Bidegree b, std::uint64_t p) {
    w.require({{b.p - 1, b.q}, b, {b.p + 1, b.q}}, "homology at " + b.to_string());
    auto in = rank_mod_p(w.boundary(b.p - 1, b.q), p);
    auto out = rank_mod_p(w.boundary(b.p, b.q), p);
    if (!in || !out) return std::nullopt;
    return w.dim(b.p, b.q) - *in - *out;
}

std::vector<Bidegree> window_bidegrees(const ComplexWindow& w) {
    std::vector<Bidegree> out;
    for (int p = 0; p < w.bounds().max_arity; ++p)
        for (int q = 0; q <= w.bounds().max_degree; ++q)
            if (!w.known_zero(p, q)) out.push_back({p, q});
    return out;
}

Output cmd_basis(const RunConfig& cfg, int arity, std::optional<int> degree, bool full) {
    Output out;
    out.header = {"n", "index", "monomial", "degree"};
    for (int n : cfg.ns) {
        auto op = make_operad(cfg, n);
        std::vector<Monomial> b;
        if (degree) b = full ? op->basis(arity, *degree) : op->normalized_basis(arity, *degree);
        else {
            b = op->basis(arity);
            if (!full) std::erase_if(b, [](const Monomial& m) { return m.has_singleton(); });
            if (!full && arity == 0) b = op->basis(0);
        }
        json items = json::array();
        for (std::size_t k = 0; k < b.size(); ++k) {
            items.push_back({{"monomial", to_string(b[k])}, {"degree", op->degree(b[k])}});
            out.rows.push_back({std::to_string(n), std::to_string(k), to_string(b[k]), std::to_string(op->degree(b[k]))});
        }
        out.results.push_back({{"n", n}, {"arity", arity}, {"degree", degree ? json(*degree) : json(nullptr)},
                               {"normalized", !full}, {"dim", b.size()}, {"basis", items}});
    }
    return out;
}

Output cmd_homology(const RunConfig& cfg, Bidegree b, bool full) {
    Output out;
    out.header = {"n", "bidegree", "rank", "generator"};
    auto prime = cfg.prime();
    for (int n : cfg.ns) {
        auto op = make_operad(cfg, n);
        ComplexWindow w(*op, {cfg.max_arity, max_degree(cfg, *op)}, !full, cfg.cache());
        json entry{{"n", n}, {"bidegree", b.to_string()}, {"normalized", !full}};
        if (prime) {
            auto d = homology_dim_mod(w, b, *prime);
            if (!d) throw ArgumentError("homology: matrix entries are not integral mod " + std::to_string(*prime));
            entry["rank"] = *d;
            out.rows.push_back({std::to_string(n), b.to_string(), std::to_string(*d), ""});
        } else {
            const auto& h = w.homology_at(b);
            json gens = json::array();
            for (auto& v : h.homology_basis()) {
                std::string g = w.from_vector(b.p, b.q, v).to_string();
                gens.push_back(g);
                out.rows.push_back({std::to_string(n), b.to_string(), std::to_string(h.dim()), g});
            }
            if (h.dim() == 0) out.rows.push_back({std::to_string(n), b.to_string(), "0", ""});
            entry["rank"] = h.dim();
            entry["generators"] = gens;
        }
        out.results.push_back(entry);
    }
    return out;
}

Output cmd_slice(const RunConfig& cfg, int t) {
    Output out;
    out.header = {"n", "total_degree", "bidegree", "rank"};
    auto prime = cfg.prime();
    for (int n : cfg.ns) {
        auto op = make_operad(cfg, n);
        ComplexWindow w(*op, {cfg.max_arity, max_degree(cfg, *op)}, true, cfg.cache());
        if (cfg.jobs > 1) w.prefetch(window_bidegrees(w), cfg.jobs);
        auto slice = w.total_degree_slice(t);
        json parts = json::array();
        std::size_t total = 0;
        for (auto& [b, k] : slice) {
            std::size_t r = k;
            if (prime) {
                auto d = homology_dim_mod(w, b, *prime);
                if (!d) throw ArgumentError("slice: matrix entries are not integral mod " + std::to_string(*prime));
                r = *d;
            }
            total += r;
            parts.push_back({{"bidegree", b.to_string()}, {"rank", r}});
            out.rows.push_back({std::to_string(n), std::to_string(t), b.to_string(), std::to_string(r)});
        }
        out.rows.push_back({std::to_string(n), std::to_string(t), "total", std::to_string(total)});
        out.results.push_back({{"n", n}, {"total_degree", t}, {"rank", total}, {"bidegrees", parts}});
    }
    return out;
}

json class_json(const HomologyClass& c) {
    return {{"bidegree", c.bidegree.to_string()}, {"total_degree", c.total()},
            {"representative", c.representative.to_string()}, {"coordinates", vector_json(c.coordinates)}};
}

Output cmd_product(const RunConfig& cfg, const std::string& which, const std::string& left, const std::string& right,
                   const std::string& reading_name) {
    Output out;
    out.header = {"n", "operation", "left", "right", "bidegree", "result"};
    EpsilonReading reading = EpsilonReading::Proof;
    if (reading_name == "printed") reading = EpsilonReading::Printed;
    else if (reading_name != "proof") throw UsageError("--reading must be proof or printed");
    for (int n : cfg.ns) {
        if (cfg.operad != "pois") throw UsageError(which + " needs --operad pois");
        KnotContext ctx(n, cfg.max_complexity, cfg.max_arity, cfg.cache());
        auto named = [](const std::string& s) { return s == "iota" || s == "v2"; };
        if (named(left) && named(right)) {
            auto get = [&](const std::string& s) { return s == "iota" ? class_iota(ctx) : class_v2(ctx); };
            auto x = get(left), y = get(right);
            auto c = which == "bracket" ? bracket_on_homology(ctx.window(), x, y, reading) : cup_on_homology(ctx.window(), x, y);
            json entry = class_json(c);
            entry["n"] = n;
            entry["level"] = "homology";
            entry["zero"] = c.is_zero();
            out.results.push_back(entry);
            out.rows.push_back({std::to_string(n), which, left, right, c.bidegree.to_string(), vector_string(c.coordinates)});
            continue;
        }
        if (named(left) || named(right)) throw UsageError(which + ": give two class names or two expressions");
        const auto& op = ctx.operad();
        Element x = op.normalize(left), y = op.normalize(right);
        Element z = which == "bracket" ? psi_bracket(x, y, reading) : cup_product(x, y);
        auto deg = z.degree();
        out.results.push_back({{"n", n}, {"level", "chain"}, {"arity", z.arity()}, {"degree", deg ? json(*deg) : json(nullptr)},
                               {"result", z.to_string()}, {"cycle", hochschild_boundary(z).is_zero()}});
        out.rows.push_back({std::to_string(n), which, x.to_string(), y.to_string(),
                            deg ? Bidegree{z.arity(), *deg}.to_string() : "", z.to_string()});
    }
    return out;
}

Output cmd_classes(const RunConfig& cfg) {
    Output out;
    out.header = {"n", "name", "bidegree", "total_degree", "representative"};
    for (int n : cfg.ns) {
        if (cfg.operad != "pois") throw UsageError("classes needs --operad pois");
        KnotContext ctx(n, cfg.max_complexity, cfg.max_arity, cfg.cache());
        register_standard_classes(ctx);
        json items = json::array();
        for (auto& name : ctx.names()) {
            const auto& c = ctx.get(name);
            json e = class_json(c);
            e["name"] = name;
            items.push_back(e);
            out.rows.push_back({std::to_string(n), name, c.bidegree.to_string(), std::to_string(c.total()),
                                c.representative.to_string()});
        }
        out.results.push_back({{"n", n}, {"classes", items}, {"warnings", ctx.warnings()}});
    }
    return out;
}

Output cmd_table(const RunConfig& cfg, int max_total) {
    Output out;
    out.header = {"n", "operation", "left", "right", "bidegree", "coordinates"};
    for (int n : cfg.ns) {
        if (cfg.operad != "pois") throw UsageError("table needs --operad pois");
        KnotContext ctx(n, cfg.max_complexity, cfg.max_arity, cfg.cache());
        register_standard_classes(ctx);
        json rows = json::array();
        for (auto& r : poisson_table(ctx, max_total)) {
            rows.push_back({{"operation", r.operation}, {"left", r.left}, {"right", r.right},
                            {"bidegree", r.bidegree.to_string()}, {"coordinates", vector_json(r.coordinates)}});
            out.rows.push_back({std::to_string(n), r.operation, r.left, r.right, r.bidegree.to_string(), vector_string(r.coordinates)});
        }
        out.results.push_back({{"n", n}, {"max_total_degree", max_total}, {"rows", rows}});
    }
    return out;
}

Output cmd_chord_dims(int max_k, bool framed) {
    Output out;
    out.header = {"k", "dim"};
    json dims = json::array();
    std::string joined;
    if (max_k > kMaxChords)
        throw ResourceError("chord diagrams with k = " + std::to_string(max_k) +
                            " exceed the enumeration budget (k <= " + std::to_string(kMaxChords) + "); lower --max-k");
    for (int k = 0; k <= max_k; ++k) {
        auto d = dim_A(k, !framed);
        dims.push_back(d);
        joined += (k ? "," : "") + std::to_string(d);
        out.rows.push_back({std::to_string(k), std::to_string(d)});
    }
    out.results.push_back({{"max_k", max_k}, {"one_term", !framed}, {"dims", dims}});
    out.text = {joined};
    return out;
}

void add_check(Output& out, const std::string& name, const std::string& scope, const CheckReport& rep) {
    out.results.push_back({{"check", name}, {"scope", scope}, {"pass", rep.pass}, {"checks", rep.checks},
                           {"first_failure", rep.first_failure}});
    out.rows.push_back({name, scope, rep.pass ? "PASS" : "FAIL", std::to_string(rep.checks), rep.first_failure});
    if (!rep.pass) out.failed = true;
}

Output cmd_verify(const RunConfig& cfg, const std::string& what) {
    Output out;
    out.header = {"check", "scope", "verdict", "count", "detail"};
    static const std::set<std::string> known{"cosimplicial", "operad-axioms", "leibniz", "signs", "all"};
    if (!known.count(what)) throw UsageError("verify: unknown check '" + what + "'");
    if (what == "all") {
        AcceptanceSuite suite(cfg.cache(), cfg.jobs);
        int id = 0;
        for (auto& f : suite.all()) {
            auto r = run_criterion(f, ++id);
            out.results.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
            out.rows.push_back({"criterion " + std::to_string(r.id), r.title, r.pass ? "PASS" : "FAIL", "", r.detail});
            if (!r.pass) out.failed = true;
        }
        return out;
    }
    if (what == "signs") {
        auto rep = resolve_printed_exponents();
        const auto& sw = rep.sweep;
        for (auto& v : sw.readings) {
            out.results.push_back({{"reading", v.id}, {"text", v.text}, {"cells", v.cells}, {"agree", v.agree},
                                   {"matches", v.matches()}, {"matches_up_to_global_sign", v.matches_up_to_global_sign()}});
            out.rows.push_back({"reading " + v.id, v.negative_cells ? "negative tau" : "positive tau",
                                v.matches() ? "MATCH" : (v.matches_up_to_global_sign() ? "SIGN" : "NO"),
                                std::to_string(v.agree) + "/" + std::to_string(v.cells), v.text});
        }
        for (auto& i : rep.identities) {
            out.results.push_back({{"identity", i.left + " = " + i.right}, {"agree", i.agree}, {"points", i.points}});
            out.rows.push_back({"parity " + i.left + " = " + i.right, "sweep", i.identical() ? "EQUAL" : "DIFFER",
                                std::to_string(i.agree) + "/" + std::to_string(i.points), ""});
        }
        bool ok = sw.negative_agrees() && sw.positive_agrees();
        out.results.push_back({{"check", "determinant vs closed form"}, {"pass", ok},
                               {"negative", std::to_string(sw.negative_match) + "/" + std::to_string(sw.negative_cells)},
                               {"positive", std::to_string(sw.positive_match) + "/" + std::to_string(sw.positive_cells)}});
        out.rows.push_back({"determinant vs closed form", "l<=6 q,s<=4", ok ? "PASS" : "FAIL",
                            std::to_string(sw.negative_match + sw.positive_match) + "/" + std::to_string(sw.cells),
                            ok ? "" : "negative half " + std::to_string(sw.negative_match) + "/" + std::to_string(sw.negative_cells)});
        if (!ok) out.failed = true;
        return out;
    }
    for (int n : cfg.ns) {
        auto op = make_operad(cfg, n);
        std::string scope = op->signature();
        if (what == "cosimplicial") add_check(out, "cosimplicial", scope, verify_cosimplicial(*op, 4));
        if (what == "operad-axioms") add_check(out, "operad-axioms", scope, verify_operad_axioms(*op, 4));
        if (what == "leibniz") {
            int top = max_degree(cfg, *op);
            add_check(out, "leibniz", scope, verify_leibniz(*op, 6, top));
            add_check(out, "mu2-boundary", scope, verify_mu2_boundary(*op, 6, top));
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hochschild homology of Poisson operads and the Gerstenhaber structure on it"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    RunConfig cfg;
    if (const char* env = std::getenv("HOCHLAB_CACHE_DIR")) cfg.cache_dir = env;
    app.add_option("--operad", cfg.operad, "pois or assoc")->check(CLI::IsMember({"pois", "assoc"}));
    app.add_option("--n", cfg.ns, "ambient dimension n (repeatable)")->check(CLI::Range(2, 64));
    app.add_option("--max-complexity", cfg.max_complexity, "window: brackets per monomial")->check(CLI::Range(0, 16));
    app.add_option("--max-arity", cfg.max_arity, "window: largest arity")->check(CLI::Range(1, 12));
    app.add_option("--field", cfg.field, "Q (default) or a prime for cross-checks");
    app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--cache-dir", cfg.cache_dir, "boundary matrix cache (default $HOCHLAB_CACHE_DIR)");
    app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    // global options may also follow the subcommand
    app.fallthrough();

    int arity = 0;
    std::optional<int> degree;
    bool full = false;
    auto* basis = app.add_subcommand("basis", "list a basis of O(p), normalized unless --full");
    basis->add_option("--arity", arity)->required()->check(CLI::Range(0, 9));
    basis->add_option("--degree", degree);
    basis->add_flag("--full", full);

    std::string bidegree;
    auto* homology = app.add_subcommand("homology", "homology at a bidegree (-p,q)");
    homology->add_option("--bidegree", bidegree, "-p,q")->required()->allow_extra_args(false);
    homology->add_flag("--full", full, "use the full rather than the normalized complex");

    int total = 0;
    auto* slice = app.add_subcommand("slice", "homology of total degree t = q - p");
    slice->add_option("--total-degree", total)->required();

    std::string left, right, reading = "proof";
    auto* bracket = app.add_subcommand("bracket", "Gerstenhaber bracket of two classes (iota, v2) or expressions");
    auto* cup = app.add_subcommand("cup", "cup product of two classes (iota, v2) or expressions");
    for (auto* sc : {bracket, cup}) {
        sc->add_option("--left", left)->required();
        sc->add_option("--right", right)->required();
    }
    bracket->add_option("--reading", reading, "proof or printed first exponent");

    app.add_subcommand("classes", "the named classes iota and v2");
    int max_total = 8;
    auto* table = app.add_subcommand("table", "cup products and brackets of the named classes");
    table->add_option("--max-total-degree", max_total);

    int max_k = 4;
    bool framed = false;
    auto* chord = app.add_subcommand("chord-dims", "dimensions of chord diagrams modulo 4T (and 1T)");
    chord->add_option("--max-k", max_k)->check(CLI::Range(0, 64));
    chord->add_flag("--framed", framed, "omit the 1T relation");

    std::string what;
    auto* verify = app.add_subcommand("verify", "run property checks");
    verify->add_option("check", what, "cosimplicial | operad-axioms | leibniz | signs | all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        bool prime_mode = cfg.prime().has_value();
        if (prime_mode && command != "homology" && command != "slice")
            throw UsageError("--field " + cfg.field + " is only supported by homology and slice");
        Output out;
        if (command == "basis") out = cmd_basis(cfg, arity, degree, full);
        else if (command == "homology") out = cmd_homology(cfg, parse_bidegree(bidegree), full);
        else if (command == "slice") out = cmd_slice(cfg, total);
        else if (command == "bracket" || command == "cup") out = cmd_product(cfg, command, left, right, reading);
        else if (command == "classes") out = cmd_classes(cfg);
        else if (command == "table") out = cmd_table(cfg, max_total);
        else if (command == "chord-dims") out = cmd_chord_dims(max_k, framed);
        else if (command == "verify") out = cmd_verify(cfg, what);
        emit(command, cfg, out);
        return out.failed ? 1 : 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const WindowError& e) {
        std::cerr << "resource bound: " << e.what() << "\nadvice: raise --max-arity or --max-complexity\n";
        return 3;
    } catch (const ResourceError& e) {
        std::cerr << "resource bound: " << e.what() << '\n';
        return 3;
    } catch (const ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
