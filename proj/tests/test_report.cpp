#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "affapp/report.hpp"

using namespace affapp;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("affapp_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Documents, ComputeFieldsAndOrder) {
    Group g = cyclic(5);
    auto cert = worst_case_value(g, Metric::affine);
    Json j = compute_document("cyclic(5)", g, cert);
    EXPECT_EQ(j["kind"], "compute");
    EXPECT_EQ(j["tool_version"], kToolVersion);
    EXPECT_EQ(j["order"], 5);
    EXPECT_EQ(j["metric"], "affapp");
    EXPECT_EQ(j["certificate"]["exact"], true);
    EXPECT_EQ(j["certificate"]["value"], 2);
    EXPECT_EQ(j["certificate"]["evidence"]["kind"], "universal-tuple");
    EXPECT_EQ(j["certificate"]["witness"].size(), 5u);
    EXPECT_EQ(j["cached"], false);
    // keys serialize sorted
    const std::string s = dump(j);
    EXPECT_LT(s.find("\"cached\""), s.find("\"certificate\""));
    EXPECT_LT(s.find("\"order\""), s.find("\"timing\""));
    EXPECT_EQ(s.back(), '\n');
}

TEST(Documents, InexactCertificateHasNullValue) {
    SearchOptions opt;
    opt.bounds_only = true;
    Group g = alt(4);
    Json j = certificate_json(worst_case_value(g, Metric::affine, opt));
    EXPECT_EQ(j["exact"], false);
    EXPECT_TRUE(j["value"].is_null());
    EXPECT_EQ(j["lower_bound"], 2);
}

TEST(Documents, TableRowIsReproducible) {
    Group g = dihedral(6);
    auto e = worst_case_value(g, Metric::endo);
    auto a = worst_case_value(g, Metric::affine);
    auto row = table_row("dihedral(6)", g, e, a);
    EXPECT_FALSE(row.contains("timing"));
    EXPECT_EQ(row["affapp"]["value"], 2);
    auto again = table_row("dihedral(6)", g, worst_case_value(g, Metric::endo), worst_case_value(g, Metric::affine));
    EXPECT_EQ(dump(row), dump(again));
}

TEST(Documents, BoundsUsesStringsForBigIntegers) {
    Json j = bounds_document(gen_app_bounds(60, 100, 2));
    EXPECT_EQ(j["kind"], "bounds");
    ASSERT_EQ(j["nu"].size(), 61u);
    EXPECT_EQ(j["nu"][60], big_pow(100, 60).str());
    EXPECT_EQ(j["gamma"][0], "1");
    EXPECT_EQ(j["lower"]["exact"], "1");
    EXPECT_EQ(j["upper"]["active_branch"], "fval*ln(m2)+ln(m1)");
    EXPECT_EQ(bounds_document(gen_app_bounds(9, 6, 1))["lower"]["exact"], "3/2");
}

TEST(Documents, PartitionAndWitness) {
    auto p = Partition::from_sizes({2, 2, 1});
    Json j = partition_document(p, build_avoiding_permutation(p));
    EXPECT_EQ(j["exists"], true);
    EXPECT_EQ(j["permutation"].size(), 5u);
    auto q = Partition::from_sizes({3, 1});
    Json k = partition_document(q, build_avoiding_permutation(q));
    EXPECT_EQ(k["exists"], false);
    EXPECT_TRUE(k["permutation"].is_null());

    auto w = named_witness("klein");
    Json wj = witness_document(w, 2);
    EXPECT_EQ(wj["images"], Json({1, 1, 2, 2}));
    EXPECT_EQ(wj["metric"], "enapp");
    EXPECT_EQ(wj["measured"], 2);
}

TEST(Documents, VerifyJk) {
    const jk::JKGroup j(jk::make_params(3, 0, 1));
    jk::VerifyOptions opt;
    opt.mode = jk::ScanMode::sampled;
    opt.samples = 100;
    auto r = jk::verify_affapp_one(j, jk::final_prop_function(j, jk::singer_sigma(3)), opt);
    Json d = verify_document(j.params(), "singer", r);
    EXPECT_EQ(d["kind"], "verify-jk");
    EXPECT_EQ(d["ok"], true);
    EXPECT_EQ(d["pairs_scanned"], 100);
    EXPECT_EQ(d["lambda"], Json({0, 1}));
}

TEST(Atomic, WritesAndReplaces) {
    auto d = fresh_dir("atomic");
    auto p = d / "sub" / "out.json";
    write_atomic(p, "first\n");
    EXPECT_EQ(slurp(p), "first\n");
    write_atomic(p, "second\n");
    EXPECT_EQ(slurp(p), "second\n");
    std::size_t files = 0;
    for ([[maybe_unused]] auto& e : fs::directory_iterator(d / "sub")) ++files;
    EXPECT_EQ(files, 1u);
    fs::remove_all(d);
}

TEST(Cache, Fnv1aKnownValues) {
    EXPECT_EQ(fnv1a(""), 14695981039346656037ull);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
    EXPECT_NE(fnv1a("cyclic(5)\naffapp"), fnv1a("cyclic(5)\nenapp"));
}

TEST(Cache, RoundTripAndMisses) {
    auto d = fresh_dir("cache");
    ResultCache cache(d);
    Group g = cyclic(4);
    Json doc = compute_document("cyclic(4)", g, worst_case_value(g, Metric::endo));
    std::ostringstream warn;
    EXPECT_FALSE(cache.get("cyclic(4)", "enapp", warn));
    cache.put("cyclic(4)", "enapp", doc);
    auto hit = cache.get("cyclic(4)", "enapp", warn);
    ASSERT_TRUE(hit);
    EXPECT_EQ(*hit, doc);
    EXPECT_FALSE(cache.get("cyclic(4)", "affapp", warn));
    EXPECT_FALSE(ResultCache(d, "9.9.9").get("cyclic(4)", "enapp", warn));
    EXPECT_TRUE(warn.str().empty());
    fs::remove_all(d);
}

TEST(Cache, CorruptEntryWarnsAndMisses) {
    auto d = fresh_dir("corrupt");
    ResultCache cache(d);
    std::ofstream(cache.path_for("cyclic(3)", "affapp")) << "{ not json";
    std::ostringstream warn;
    EXPECT_FALSE(cache.get("cyclic(3)", "affapp", warn));
    EXPECT_NE(warn.str().find("warning"), std::string::npos);
    fs::remove_all(d);
}

TEST(Cache, DefaultDirHonoursEnvironment) {
    ::setenv("AFFAPP_CACHE_DIR", "/tmp/affapp-env-check", 1);
    EXPECT_EQ(ResultCache::default_dir(), fs::path("/tmp/affapp-env-check"));
    ::unsetenv("AFFAPP_CACHE_DIR");
    ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
    EXPECT_EQ(ResultCache::default_dir(), fs::path("/tmp/xdg/affapp"));
    ::unsetenv("XDG_CACHE_HOME");
}
