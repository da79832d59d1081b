#include "hochlab/hochschild.hpp"
#include "hochlab/pois.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace hochlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hochlab-cache-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& root) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) {
            std::ifstream in(e.path());
            std::string body((std::istreambuf_iterator<char>(in)), {});
            out.push_back({fs::relative(e.path(), root).string(), body});
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Cache, RoundTrip) {
    TempDir dir;
    PoisOperad op(5);
    ComplexWindow plain(op, {6, 8});
    BoundaryCache cache(dir.path, op, true);
    const auto& src = plain.basis(3, 8);
    const auto& tgt = plain.basis(4, 8);
    const auto& m = plain.boundary(3, 8);
    EXPECT_FALSE(cache.load(3, 8, src, tgt));
    cache.store(3, 8, src, tgt, m);
    auto back = cache.load(3, 8, src, tgt);
    ASSERT_TRUE(back);
    EXPECT_EQ(back->rows(), m.rows());
    EXPECT_EQ(back->cols(), m.cols());
    EXPECT_EQ(back->entries(), m.entries());
}

TEST(Cache, WindowReusesStoredMatrices) {
    TempDir dir;
    PoisOperad op(5);
    std::size_t cold = 0, warm = 0;
    {
        ComplexWindow w(op, {8, 16}, true, dir.path);
        cold = w.homology_at({4, 8}).dim();
    }
    auto files = snapshot(dir.path);
    EXPECT_FALSE(files.empty());
    {
        ComplexWindow w(op, {8, 16}, true, dir.path);
        warm = w.homology_at({4, 8}).dim();
    }
    EXPECT_EQ(cold, 2u);
    EXPECT_EQ(warm, cold);
    EXPECT_EQ(snapshot(dir.path), files);
}

TEST(Cache, KeyedByOperadAndNormalization) {
    TempDir dir;
    PoisOperad p5(5), p6(6);
    BoundaryCache a(dir.path, p5, true), b(dir.path, p6, true), c(dir.path, p5, false);
    EXPECT_NE(a.directory(), b.directory());
    EXPECT_NE(a.directory(), c.directory());
    EXPECT_EQ(a.directory(), BoundaryCache(dir.path, PoisOperad(5), true).directory());
}

TEST(Cache, RejectsStaleDocuments) {
    TempDir dir;
    PoisOperad op(5);
    ComplexWindow plain(op, {6, 8});
    BoundaryCache cache(dir.path, op, true);
    const auto& src = plain.basis(3, 8);
    const auto& tgt = plain.basis(4, 8);
    cache.store(3, 8, src, tgt, plain.boundary(3, 8));
    auto path = cache.file_for(3, 8);
    nlohmann::json doc;
    {
        std::ifstream in(path);
        in >> doc;
    }
    auto rewrite = [&](nlohmann::json d) {
        std::ofstream out(path);
        out << d.dump();
    };
    auto stale_format = doc;
    stale_format["format"] = "hochlab-boundary-v0";
    rewrite(stale_format);
    EXPECT_FALSE(cache.load(3, 8, src, tgt));
    auto other_operad = doc;
    other_operad["operad"] = "pois:n=7";
    rewrite(other_operad);
    EXPECT_FALSE(cache.load(3, 8, src, tgt));
    auto shuffled = doc;
    std::swap(shuffled["source_basis"][0], shuffled["source_basis"][1]);
    rewrite(shuffled);
    EXPECT_FALSE(cache.load(3, 8, src, tgt));
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    EXPECT_FALSE(cache.load(3, 8, src, tgt));
    rewrite(doc);
    EXPECT_TRUE(cache.load(3, 8, src, tgt));
}

TEST(Cache, StoredBytesAreDeterministic) {
    TempDir one, two;
    PoisOperad op(6);
    {
        ComplexWindow w(op, {8, 20}, true, one.path);
        w.total_degree_slice(10);
    }
    {
        ComplexWindow w(op, {8, 20}, true, two.path);
        std::vector<Bidegree> all;
        for (int p = 0; p < 8; ++p)
            for (int m = 0; m <= 4; ++m)
                if (!w.known_zero(p, 5 * m)) all.push_back({p, 5 * m});
        w.prefetch(all, 4);
        w.total_degree_slice(10);
    }
    // the parallel run may store more bidegrees; the shared ones must agree
    auto a = snapshot(one.path), b = snapshot(two.path);
    std::map<std::string, std::string> bmap(b.begin(), b.end());
    ASSERT_FALSE(a.empty());
    for (auto& [name, body] : a) {
        ASSERT_TRUE(bmap.count(name)) << name;
        EXPECT_EQ(bmap[name], body) << name;
    }
}
