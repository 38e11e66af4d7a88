#pragma once

// JSON report documents and the on-disk result cache.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "affapp/approx.hpp"
#include "affapp/bounds.hpp"
#include "affapp/constructions.hpp"
#include "affapp/jk.hpp"

namespace affapp {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::json;  // std::map objects: keys come out sorted

inline Json elements_json(std::span<const Elem> xs) { return Json(std::vector<Elem>(xs.begin(), xs.end())); }

inline Json certificate_json(const ApproxCertificate& c) {
    Json j;
    j["exact"] = c.exact;
    j["value"] = c.value ? Json(*c.value) : Json(nullptr);
    j["lower_bound"] = c.lower_bound;
    j["upper_bound"] = c.upper_bound;
    j["evidence"] = {{"kind", std::string(bound_kind_name(c.evidence.kind))},
                     {"bound", c.evidence.bound},
                     {"elements", elements_json(c.evidence.elements)}};
    j["witness"] = c.witness ? elements_json(c.witness->images) : Json(nullptr);
    return j;
}

inline Json compute_document(const std::string& spec, const Group& g, const ApproxCertificate& c) {
    return Json{{"kind", "compute"},
                {"tool_version", kToolVersion},
                {"group", spec},
                {"order", g.order()},
                {"metric", std::string(metric_name(c.metric))},
                {"certificate", certificate_json(c)},
                {"timing", {{"seconds", c.stats.seconds}}},
                {"search_stats", {{"nodes", c.stats.nodes}}},
                {"cached", false}};
}

/// Rows carry no timing so that the document is reproducible byte for byte.
inline Json table_row(const std::string& spec, const Group& g, const ApproxCertificate& endo,
                      const ApproxCertificate& affine) {
    auto cell = [](const ApproxCertificate& c) {
        return Json{{"exact", c.exact},
                    {"value", c.value ? Json(*c.value) : Json(nullptr)},
                    {"lower_bound", c.lower_bound},
                    {"upper_bound", c.upper_bound},
                    {"evidence", std::string(bound_kind_name(c.evidence.kind))},
                    {"nodes", c.stats.nodes}};
    };
    return Json{{"group", spec}, {"order", g.order()}, {"enapp", cell(endo)}, {"affapp", cell(affine)}};
}

inline Json bounds_document(const BoundReport& r) {
    Json gamma = Json::array(), nu = Json::array();
    for (const auto& v : r.gamma) gamma.push_back(v.str());
    for (const auto& v : r.nu) nu.push_back(v.str());
    return Json{{"kind", "bounds"},
                {"tool_version", kToolVersion},
                {"m1", r.m1},
                {"m2", r.m2},
                {"fval", r.fval},
                {"L", r.L},
                {"gamma", gamma},
                {"nu", nu},
                {"lower", {{"exact", r.lower.str()}, {"decimal", r.lower.value()}}},
                {"upper",
                 {{"value", r.upper},
                  {"active_branch", upper_branch_name(r.active)},
                  {"e_squared_branch", r.upper_e_squared},
                  {"log_branch", r.upper_log_terms}}}};
}

inline Json verify_document(const jk::Params& params, const std::string& sigma_source, const jk::VerifyReport& r) {
    Json viol = Json::array();
    for (auto [x, y] : r.violations) viol.push_back({x, y});
    return Json{{"kind", "verify-jk"},
                {"tool_version", kToolVersion},
                {"group", params.name()},
                {"p", params.p},
                {"lambda", {params.lambda1, params.lambda2}},
                {"sigma", sigma_source},
                {"mode", r.mode == jk::ScanMode::full ? "full" : "sampled"},
                {"pairs_scanned", r.pairs_scanned},
                {"violation_count", r.violation_count},
                {"violations", viol},
                {"ok", r.ok()},
                {"timing", {{"seconds", r.seconds}}}};
}

inline Json partition_document(const Partition& p, const std::optional<std::vector<Elem>>& perm) {
    Json classes = Json::array();
    for (const auto& c : p.classes) classes.push_back(elements_json(c));
    return Json{{"kind", "partition-avoid"},
                {"tool_version", kToolVersion},
                {"m", p.m},
                {"classes", classes},
                {"exists", perm.has_value()},
                {"permutation", perm ? elements_json(*perm) : Json(nullptr)}};
}

inline Json witness_document(const NamedWitness& w, std::size_t measured) {
    return Json{{"kind", "witness"},
                {"tool_version", kToolVersion},
                {"name", w.name},
                {"group", w.group_spec},
                {"order", w.function.size()},
                {"metric", std::string(metric_name(w.metric))},
                {"images", elements_json(w.function.images)},
                {"claimed", w.claimed},
                {"measured", measured}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Writes to a sibling temp file and renames it over the target.
inline void write_atomic(const std::filesystem::path& path, const std::string& text) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::random_device rd;
    const fs::path tmp = path.string() + ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Cache.

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir, std::string version = kToolVersion)
        : dir_(std::move(dir)), version_(std::move(version)) {}

    /// AFFAPP_CACHE_DIR, else $XDG_CACHE_HOME/affapp, else $HOME/.cache/affapp.
    static std::filesystem::path default_dir() {
        if (const char* d = std::getenv("AFFAPP_CACHE_DIR"); d && *d) return d;
        if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "affapp";
        if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "affapp";
        return std::filesystem::temp_directory_path() / "affapp-cache";
    }

    std::filesystem::path path_for(const std::string& spec, std::string_view metric) const {
        std::ostringstream name;
        name << std::hex << fnv1a(spec + '\n' + std::string(metric) + '\n' + version_) << ".json";
        return dir_ / name.str();
    }

    /// The stored document, or none on a miss. Corrupt or mismatching entries
    /// produce a warning on `warn` and count as a miss.
    std::optional<Json> get(const std::string& spec, std::string_view metric, std::ostream& warn = std::cerr) const {
        const auto path = path_for(spec, metric);
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        try {
            Json doc = Json::parse(in);
            if (doc.at("tool_version") != version_ || doc.at("group") != spec || doc.at("metric") != metric)
                return std::nullopt;
            doc.at("certificate").at("exact").get<bool>();
            return doc;
        } catch (const std::exception& e) {
            warn << "warning: ignoring corrupt cache entry " << path.string() << ": " << e.what() << "\n";
            return std::nullopt;
        }
    }

    void put(const std::string& spec, std::string_view metric, const Json& doc) const {
        write_atomic(path_for(spec, metric), dump(doc));
    }

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::string version_;
};

}  // namespace affapp
