#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "sze/database.hpp"
#include "sze/synthgen.hpp"

using namespace sze;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) { std::remove(path.c_str()); }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

SummaryConfig db_config() {
    SummaryConfig cfg;
    cfg.epsilon = 0.5;
    cfg.loop = LoopMode::classic;
    cfg.fallback_last = true;
    cfg.c_min = 0.8;
    return cfg;
}

Graph planted(int n, int clusters, std::uint64_t seed) {
    GeneratorConfig gen;
    gen.n = n;
    gen.num_clusters = clusters;
    gen.eta1 = 0.1;
    gen.eta2 = 0.1;
    gen.seed = seed;
    return generate(gen).g;
}

}  // namespace

TEST_CASE("db add assigns monotone ids and persists records") {
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    TempFile tmp("test_store_add.db");
    {
        SummaryDb db = SummaryDb::open(tmp.path);
        CHECK(db.size() == 0);
        for (std::uint64_t s = 0; s < 3; ++s) {
            const Graph g = planted(120, 3, s);
            const std::int64_t id = db.add(g, db_config(), "graph_" + std::to_string(s));
            CHECK(id == static_cast<std::int64_t>(s));
        }
        CHECK(db.size() == 3);
    }
    const std::string bytes_after_add = slurp(tmp.path);

    // reopen: same records, and re-serialization reproduces the file bytes
    SummaryDb db = SummaryDb::open(tmp.path);
    REQUIRE(db.size() == 3);
    std::ostringstream rewritten;
    rewritten << "SZE-DB v1\n";
    for (std::size_t i = 0; i < db.size(); ++i) write_record(db.record(i), rewritten);
    CHECK(rewritten.str() == bytes_after_add);
    CHECK(db.record(1).meta.source == "graph_1");
    CHECK(db.record(1).meta.created == 1700000000);
    CHECK(db.record(1).sig.eigs.size() == static_cast<std::size_t>(db.record(1).summary.reduced.k));
}

TEST_CASE("self-query ranks its own record first with distance zero") {
    TempFile tmp("test_store_self.db");
    SummaryDb db = SummaryDb::open(tmp.path);
    const SummaryConfig cfg = db_config();
    for (std::uint64_t s = 0; s < 4; ++s) db.add(planted(120, 3, s), cfg, "g");

    const Graph q = planted(120, 3, 2);  // same generator seed as record 2
    const auto hits = db.query(q, 4, cfg);
    REQUIRE(hits.size() == 4);
    CHECK(hits[0].id == 2);
    CHECK(hits[0].distance == doctest::Approx(0.0));
}

TEST_CASE("k larger than the store returns the full ranking") {
    TempFile tmp("test_store_k.db");
    SummaryDb db = SummaryDb::open(tmp.path);
    const SummaryConfig cfg = db_config();
    for (std::uint64_t s = 0; s < 3; ++s) db.add(planted(100, 2, s), cfg, "g");
    const auto hits = db.query(planted(100, 2, 9), 50, cfg);
    CHECK(hits.size() == 3);
    // totality: every id exactly once
    std::vector<std::int64_t> ids;
    for (const auto& h : hits) ids.push_back(h.id);
    std::sort(ids.begin(), ids.end());
    CHECK(ids == std::vector<std::int64_t>{0, 1, 2});

    CHECK_THROWS_AS(db.query(planted(100, 2, 9), 0, cfg), contract_error);
}

TEST_CASE("a failed add leaves the store untouched") {
    TempFile tmp("test_store_atomic.db");
    SummaryDb db = SummaryDb::open(tmp.path);
    SummaryConfig cfg = db_config();
    db.add(planted(100, 2, 0), cfg, "ok");
    const std::string before = slurp(tmp.path);

    // literal loop on a strongly structured graph aborts immediately
    cfg.loop = LoopMode::literal;
    cfg.fallback_last = false;
    CHECK_THROWS_AS(db.add(planted(100, 2, 1), cfg, "bad"), summary_failed);
    CHECK(db.size() == 1);
    CHECK(slurp(tmp.path) == before);
}

TEST_CASE("one-stage queries need full spectra and rank the identical graph first") {
    TempFile tmp("test_store_one.db");
    SummaryDb db = SummaryDb::open(tmp.path);
    const SummaryConfig cfg = db_config();
    db.add(planted(80, 2, 0), cfg, "g0", /*with_full_spectrum=*/true);
    db.add(planted(80, 2, 1), cfg, "g1", /*with_full_spectrum=*/true);
    db.add(planted(80, 2, 2), cfg, "g2", /*with_full_spectrum=*/true);

    const auto hits = db.query_one_stage(planted(80, 2, 1), 3);
    CHECK(hits[0].id == 1);
    CHECK(hits[0].distance == doctest::Approx(0.0));

    // reopen keeps the full signatures
    SummaryDb db2 = SummaryDb::open(tmp.path);
    REQUIRE(db2.record(0).full_sig);
    CHECK(db2.record(0).full_sig->eigs.size() == 80);

    TempFile tmp2("test_store_nofull.db");
    SummaryDb plain = SummaryDb::open(tmp2.path);
    plain.add(planted(80, 2, 0), cfg, "g0");
    CHECK_THROWS_AS(plain.query_one_stage(planted(80, 2, 0), 1), contract_error);
}

TEST_CASE("query on an empty store is a contract violation") {
    TempFile tmp("test_store_empty.db");
    SummaryDb db = SummaryDb::open(tmp.path);
    CHECK_THROWS_AS(db.query(planted(80, 2, 0), 1, db_config()), contract_error);
}

TEST_CASE("rankings are deterministic functions of the store and query") {
    TempFile tmp("test_store_det.db");
    SummaryDb db = SummaryDb::open(tmp.path);
    const SummaryConfig cfg = db_config();
    for (std::uint64_t s = 0; s < 5; ++s) db.add(planted(90, 3, s), cfg, "g");
    const Graph q = planted(90, 3, 77);
    const auto h1 = db.query(q, 5, cfg);
    const auto h2 = db.query(q, 5, cfg);
    REQUIRE(h1.size() == h2.size());
    for (std::size_t i = 0; i < h1.size(); ++i) {
        CHECK(h1[i].id == h2[i].id);
        CHECK(h1[i].distance == h2[i].distance);
    }
}

TEST_CASE("rank_by_spectral_distance orders ties by ascending id") {
    SpectralSignature q;
    q.eigs = {0.0, 1.0};
    std::vector<SpectralSignature> store(3, q);  // all identical -> all distance 0
    const auto hits = rank_by_spectral_distance(q, store, 3, {});
    REQUIRE(hits.size() == 3);
    CHECK(hits[0].id == 0);
    CHECK(hits[1].id == 1);
    CHECK(hits[2].id == 2);
}
