// affapp command-line front end. Exit status: 0 ok, 1 internal error,
// 2 usage error, 3 capacity or budget exceeded, 4 verification violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "affapp/affapp.hpp"

namespace {

using namespace affapp;

constexpr int kUsage = 2;
constexpr int kCapacity = 3;
constexpr int kViolation = 4;

void emit(const Json& doc, const std::string& out) {
    if (out.empty()) {
        std::cout << dump(doc);
    } else {
        write_atomic(out, dump(doc));
    }
}

std::vector<std::uint32_t> split_numbers(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
            throw ArgumentError("expected a comma-separated list of nonnegative integers, got '" + s + "'");
        out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
    if (out.empty()) throw ArgumentError("empty list");
    return out;
}

// ----------------------------------------------------------------------------

struct ComputeArgs {
    std::string group;
    std::string metric;
    bool exact = false;
    bool bounds_only = false;
    std::uint64_t budget = 1'000'000'000;
    std::size_t capacity = 64;
    std::string out;
    bool no_cache = false;
};

int run_compute(const ComputeArgs& a) {
    const Metric metric = parse_metric(a.metric);
    const std::string spec = parse_group_spec(a.group).canonical();
    const std::string mname(metric_name(metric));

    ResultCache cache(ResultCache::default_dir());
    if (!a.no_cache) {
        if (auto doc = cache.get(spec, mname)) {
            (*doc)["cached"] = true;
            emit(*doc, a.out);
            return 0;
        }
    }

    const Group g = construct(spec);
    SearchOptions opt;
    opt.budget = a.budget;
    opt.bounds_only = a.bounds_only;
    opt.enumeration.capacity = a.capacity;

    ApproxCertificate cert;
    try {
        cert = worst_case_value(g, metric, opt);
    } catch (const CapacityError& e) {
        // no enumeration: only the trivial bounds are available
        std::cerr << "affapp: " << e.what() << "\n";
        cert.metric = metric;
        cert.lower_bound = metric == Metric::affine ? 1 : 0;
        cert.upper_bound = g.order();
        if (metric == Metric::affine) cert.evidence = {BoundKind::constants, 1, {}};
        emit(compute_document(spec, g, cert), a.out);
        return kCapacity;
    }
    Json doc = compute_document(spec, g, cert);
    if (!cert.exact) {
        emit(doc, a.out);
        if (a.bounds_only) return 0;
        std::cerr << "affapp: search budget exhausted; emitted bounds only\n";
        return kCapacity;
    }
    if (!a.no_cache) {
        try {
            cache.put(spec, mname, doc);
        } catch (const std::exception& e) {
            std::cerr << "warning: cache write failed: " << e.what() << "\n";
        }
    }
    emit(doc, a.out);
    return 0;
}

// ----------------------------------------------------------------------------

int run_table(std::size_t max_order, std::uint64_t budget, const std::string& out) {
    Json rows = Json::array();
    bool all_exact = true;
    std::ostringstream text;
    text << "group                               order  enapp  affapp\n";
    for (const Group& g : catalog_up_to(max_order)) {
        SearchOptions opt;
        opt.budget = budget;
        const auto endo = worst_case_value(g, Metric::endo, opt);
        const auto aff = worst_case_value(g, Metric::affine, opt);
        all_exact = all_exact && endo.exact && aff.exact;
        rows.push_back(table_row(g.name(), g, endo, aff));
        auto cell = [](const ApproxCertificate& c) {
            return c.exact ? std::to_string(*c.value)
                           : std::to_string(c.lower_bound) + ".." + std::to_string(c.upper_bound);
        };
        char line[128];
        std::snprintf(line, sizeof line, "%-35s %5zu  %5s  %6s\n", g.name().c_str(), g.order(),
                      cell(endo).c_str(), cell(aff).c_str());
        text << line;
    }
    const Json doc{{"kind", "table"}, {"tool_version", kToolVersion}, {"max_order", max_order}, {"rows", rows}};
    if (out.empty()) {
        std::cout << dump(doc);
    } else {
        write_atomic(out, dump(doc));
        std::cout << text.str();
    }
    return all_exact ? 0 : kCapacity;
}

// ----------------------------------------------------------------------------

struct VerifyArgs {
    std::uint32_t p = 3;
    std::string lambda = "0,1";
    std::string mode = "full";
    std::string sigma = "singer";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    bool allow_large = false;
    std::string out;
};

jk::Mat4 read_matrix(const std::string& path, std::uint32_t p) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open sigma file " + path);
    jk::Mat4 m{};
    for (auto& row : m)
        for (auto& c : row) {
            long long v;
            if (!(in >> v)) throw FormatError("sigma file needs 16 integers");
            c = static_cast<std::uint32_t>(((v % p) + p) % p);
        }
    return m;
}

int run_verify(const VerifyArgs& a) {
    const auto lam = split_numbers(a.lambda);
    if (lam.size() != 2) throw ArgumentError("--lambda takes two values L1,L2");
    const auto params = jk::make_params(a.p, lam[0], lam[1], a.allow_large);
    const jk::JKGroup j(params);
    const jk::SigmaMap sigma = a.sigma == "singer" ? jk::singer_sigma(a.p) : jk::SigmaMap::make(a.p, read_matrix(a.sigma, a.p));
    const auto f = jk::final_prop_function(j, sigma);
    jk::VerifyOptions opt;
    opt.mode = a.mode == "full" ? jk::ScanMode::full : jk::ScanMode::sampled;
    opt.samples = a.samples;
    opt.seed = a.seed;
    const auto rep = jk::verify_affapp_one(j, f, opt);
    emit(verify_document(params, a.sigma, rep), a.out);
    return rep.ok() ? 0 : kViolation;
}

// ----------------------------------------------------------------------------

double parse_fval(const std::string& f, std::size_t m1) {
    if (f == "log2") return std::log2(static_cast<double>(m1));
    auto number = [](const std::string& s) -> std::optional<double> {
        std::istringstream in(s);
        double v;
        if (in >> v && (in >> std::ws).eof()) return v;
        return std::nullopt;
    };
    if (auto v = number(f)) return *v;
    std::ifstream in(f);
    if (!in) throw ArgumentError("--f must be log2, a number or a readable file");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (auto v = number(content)) return *v;
    throw FormatError("fval file must contain a single number");
}

// ----------------------------------------------------------------------------

int run_witness(const std::string& name, const std::string& format, std::size_t capacity, const std::string& out) {
    const NamedWitness w = named_witness(name);
    if (format == "csv") {
        std::string csv = "index,image\n";
        for (Elem x = 0; x < w.function.size(); ++x)
            csv += std::to_string(x) + "," + std::to_string(w.function(x)) + "\n";
        if (out.empty())
            std::cout << csv;
        else
            write_atomic(out, csv);
        return 0;
    }
    const Group g = construct(w.group_spec);
    EnumerationOptions eo;
    eo.capacity = capacity;
    const std::size_t measured = approximability(g, w.function, w.metric, eo);
    emit(witness_document(w, measured), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximability of functions on finite groups by endomorphisms and affine maps"};
    app.require_subcommand(1);

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "worst-case enapp or affapp of a group");
    compute->add_option("--group", ca.group, "group spec, e.g. cyclic(8), sym:3, file:PATH")->required();
    compute->add_option("--metric", ca.metric, "enapp or affapp")
        ->required()
        ->check(CLI::IsMember({"enapp", "affapp"}));
    auto* exact_flag = compute->add_flag("--exact", ca.exact, "run the exact search (default)");
    compute->add_flag("--bounds-only", ca.bounds_only, "certificates and greedy bound only")->excludes(exact_flag);
    compute->add_option("--budget", ca.budget, "search node budget");
    compute->add_option("--capacity", ca.capacity, "largest order whose endomorphisms are enumerated");
    compute->add_option("--out", ca.out, "write the JSON document here");
    compute->add_flag("--no-cache", ca.no_cache, "bypass the result cache");

    std::size_t max_order = 7;
    std::uint64_t table_budget = 1'000'000'000;
    std::string table_out;
    auto* table = app.add_subcommand("table", "enapp and affapp of every group up to an order");
    table->add_option("--max-order", max_order, "largest order (<= 15)")->required()->check(CLI::Range(1, 15));
    table->add_option("--budget", table_budget, "search node budget per value");
    table->add_option("--out", table_out, "write the JSON document here; the text table goes to stdout");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify-jk", "check affapp(f) = 1 on a JK group");
    verify->add_option("--p", va.p, "odd prime")->required();
    verify->add_option("--lambda", va.lambda, "L1,L2")->required();
    verify->add_option("--mode", va.mode, "full or sampled")->check(CLI::IsMember({"full", "sampled"}));
    verify->add_option("--sigma", va.sigma, "singer, or a file with a 4x4 matrix");
    verify->add_option("--samples", va.samples, "pairs drawn in sampled mode");
    verify->add_option("--seed", va.seed, "sampling seed");
    verify->add_flag("--allow-large", va.allow_large, "permit p > 3");
    verify->add_option("--out", va.out, "write the JSON document here");

    std::size_t m1 = 0, m2 = 0;
    std::string fspec;
    std::string bounds_out;
    auto* bounds = app.add_subcommand("bounds", "Hamming-ball counts and general approximability bounds");
    bounds->add_option("--m1", m1, "domain size")->required();
    bounds->add_option("--m2", m2, "codomain size")->required();
    bounds->add_option("--f", fspec, "log2, a number, or a file holding fval")->required();
    bounds->add_option("--out", bounds_out, "write the JSON document here");

    std::string classes;
    std::string part_out;
    auto* part = app.add_subcommand("partition-avoid", "avoiding permutation for consecutive classes");
    part->add_option("--classes", classes, "class sizes a,b,c,...")->required();
    part->add_option("--out", part_out, "write the JSON document here");

    std::string wname;
    std::size_t wcap = 64;
    std::string wout;
    std::string wformat = "csv";
    auto* witness = app.add_subcommand("witness", "emit and re-measure a named hard function");
    witness->add_option("--name", wname, "cyclic-enapp:N | prime-square:P | rem-quot:P,K | z6-swap | klein | sym3")
        ->required();
    witness->add_option("--format", wformat, "csv (index,image) or json with the re-measured value")
        ->check(CLI::IsMember({"csv", "json"}));
    witness->add_option("--capacity", wcap, "largest order whose endomorphisms are enumerated");
    witness->add_option("--out", wout, "write the JSON document here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*compute) return run_compute(ca);
        if (*table) return run_table(max_order, table_budget, table_out);
        if (*verify) return run_verify(va);
        if (*bounds) {
            emit(bounds_document(gen_app_bounds(m1, m2, parse_fval(fspec, m1))), bounds_out);
            return 0;
        }
        if (*part) {
            std::vector<std::size_t> sizes;
            for (auto s : split_numbers(classes)) sizes.push_back(s);
            const Partition p = Partition::from_sizes(sizes);
            emit(partition_document(p, build_avoiding_permutation(p)), part_out);
            return 0;
        }
        if (*witness) return run_witness(wname, wformat, wcap, wout);
    } catch (const CapacityError& e) {
        std::cerr << "affapp: " << e.what() << "\n";
        return kCapacity;
    } catch (const ParameterError& e) {
        std::cerr << "affapp: " << e.what() << "\n";
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "affapp: " << e.what() << "\n";
        return kUsage;
    } catch (const ArgumentError& e) {
        std::cerr << "affapp: " << e.what() << "\n";
        return kUsage;
    } catch (const ScopeError& e) {
        std::cerr << "affapp: " << e.what() << "\n";
        return kUsage;
    } catch (const GroupAxiomError& e) {
        std::cerr << "affapp: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "affapp: internal error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}
