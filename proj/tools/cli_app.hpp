#pragma once

// posetramsey command line: optimize, certify, constants, sweep, oracle.
//
// Exit codes: 0 success or verified, 1 unverified / failed check / not
// found, 2 usage, I/O, schema or budget errors. Results go to stdout,
// progress to stderr.

#include "posetramsey/certificate_io.hpp"
#include "posetramsey/certifier.hpp"
#include "posetramsey/optimizer.hpp"
#include "posetramsey/oracle.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace posetramsey::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Directory used when --out is omitted.
inline constexpr const char* kOutDirEnv = "POSETRAMSEY_OUT_DIR";

/// Raised for bad input files, unwritable outputs and the like.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace fs = std::filesystem;

inline std::optional<fs::path> env_out_dir() {
    const char* v = std::getenv(kOutDirEnv);
    if (!v || !*v) return std::nullopt;
    return fs::path(v);
}

// Fails early instead of after a long optimization.
inline void ensure_writable(const fs::path& file) {
    const fs::path dir = file.has_parent_path() ? file.parent_path() : fs::path(".");
    if (!fs::is_directory(dir)) throw UsageError("output directory does not exist: " + dir.string());
    fs::path probe = file;
    probe += ".probe";
    {
        std::ofstream f(probe, std::ios::trunc);
        if (!f) throw UsageError("cannot write to " + file.string());
    }
    fs::remove(probe);
}

inline void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw UsageError("cannot create output directory " + dir.string());
    ensure_writable(dir / "sweep.csv");
}

inline std::string fmt(double v, int digits = 10) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

inline oracle::SetMask parse_set(const std::string& text) {
    std::vector<int> items;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            items.push_back(std::stoi(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("bad set element '" + tok + "'");
        }
    }
    try {
        return oracle::make_set(items);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline nlohmann::json load_json(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(path + ": invalid JSON: " + e.what());
    }
}

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
    int layers = 0;
    int restarts = OptimizerConfig{}.restarts;
    std::uint64_t seed = 0;
    double epsilon = OptimizerConfig{}.epsilon;
    double jitter = 0.0;
    bool no_hints = false;
    std::string out;
    bool json = false;
    bool quiet = false;
};

inline OptimizerConfig make_config(const OptimizeArgs& a) {
    OptimizerConfig cfg;
    cfg.restarts = a.restarts;
    cfg.seed = a.seed;
    cfg.epsilon = a.epsilon;
    cfg.restart_jitter = a.jitter;
    cfg.use_monotonicity_hints = !a.no_hints;
    return cfg;
}

struct LayerRun {
    OptimizeResult result;
    Certificate certificate;
    double seconds = 0.0;
};

inline LayerRun optimize_layers(int L, const OptimizerConfig& cfg, const std::function<void(const std::string&)>& log) {
    const auto t0 = std::chrono::steady_clock::now();
    const LayerSchedule schedule = make_layers(static_cast<std::size_t>(L));
    LayerRun run;
    run.result = optimize(schedule, cfg, log);
    run.certificate = certify(schedule, run.result.best_params, cfg.epsilon);
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

inline int cmd_optimize(const OptimizeArgs& a, Streams io) {
    const OptimizerConfig cfg = make_config(a);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (a.layers < 1) throw UsageError("--layers must be at least 1");

    std::optional<fs::path> out_path;
    if (!a.out.empty()) {
        out_path = fs::path(a.out);
    } else if (auto dir = env_out_dir()) {
        out_path = *dir / ("certificate_L" + std::to_string(a.layers) + ".json");
    }
    if (out_path) ensure_writable(*out_path);

    auto log = [&](const std::string& line) {
        if (!a.quiet) io.err << line << "\n";
    };
    const LayerRun run = optimize_layers(a.layers, cfg, log);
    const Certificate& cert = run.certificate;
    const std::string text = to_canonical_json(cert);
    if (out_path) write_file_atomic(*out_path, text);

    if (a.json) {
        nlohmann::json restarts = nlohmann::json::array();
        for (const auto& r : run.result.history) {
            restarts.push_back(
                {{"restart", r.restart}, {"c_total", r.c_total}, {"verified", r.verified}, {"iterations", r.iterations}});
        }
        nlohmann::json j = {{"L", a.layers},
                            {"c_total", cert.c_total},
                            {"verified", cert.verified},
                            {"seconds", run.seconds},
                            {"digest", certificate_digest(cert)},
                            {"restarts", restarts},
                            {"out", out_path ? nlohmann::json(out_path->string()) : nlohmann::json(nullptr)}};
        io.out << j.dump(2) << "\n";
    } else {
        io.out << "L = " << a.layers << "\n";
        io.out << "c_total = " << fmt(cert.c_total, 12) << "\n";
        io.out << "verified = " << (cert.verified ? "yes" : "no") << "\n";
        if (out_path) io.out << "certificate = " << out_path->string() << "\n";
    }
    return cert.verified ? kExitOk : kExitFailed;
}

// ----------------------------------------------------------------- certify

struct CertifyArgs {
    std::string in;
    std::optional<double> epsilon;
    std::optional<std::int64_t> rationalize;
    std::string out;
    bool json = false;
};

struct FieldDiff {
    std::string field;
    std::size_t index = 0;
    double stored = 0;
    double recomputed = 0;
};

inline bool numbers_agree(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

/// Stored fields that disagree with a fresh certification.
inline std::vector<FieldDiff> compare_certificates(const Certificate& stored, const Certificate& fresh) {
    std::vector<FieldDiff> diffs;
    auto cmp = [&](const std::string& name, const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            if (!numbers_agree(a[i], b[i])) diffs.push_back({name, i, a[i], b[i]});
        }
    };
    if (!numbers_agree(stored.c_total, fresh.c_total)) diffs.push_back({"c_total", 0, stored.c_total, fresh.c_total});
    cmp("margins.intersection", stored.margins.intersection, fresh.margins.intersection);
    cmp("margins.probability", stored.margins.probability, fresh.margins.probability);
    cmp("margins.room_for_h", stored.margins.room_for_h, fresh.margins.room_for_h);
    cmp("margins.t_below_top", stored.margins.t_below_top, fresh.margins.t_below_top);
    cmp("margins.subfamily", stored.margins.subfamily, fresh.margins.subfamily);
    if (!numbers_agree(stored.derived.N, fresh.derived.N)) diffs.push_back({"derived.N", 0, stored.derived.N, fresh.derived.N});
    cmp("derived.s", stored.derived.s, fresh.derived.s);
    cmp("derived.t", stored.derived.t, fresh.derived.t);
    cmp("derived.top", stored.derived.top, fresh.derived.top);
    if (stored.verified != fresh.verified) {
        diffs.push_back({"verified", 0, stored.verified ? 1.0 : 0.0, fresh.verified ? 1.0 : 0.0});
    }
    return diffs;
}

inline int cmd_certify(const CertifyArgs& a, Streams io) {
    std::string text;
    try {
        text = read_file(a.in);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    const Certificate stored = parse_certificate(text);
    const double eps = a.epsilon.value_or(stored.epsilon);
    if (!a.out.empty()) ensure_writable(a.out);
    const LayerSchedule schedule = make_layers(stored.L);

    // The stored certificate is compared against a recomputation at its own
    // epsilon; a different --epsilon only changes the verdict below.
    Certificate same_eps;
    try {
        same_eps = certify(schedule, stored.params, stored.epsilon, stored.rationalized_denominator);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    const auto diffs = compare_certificates(stored, same_eps);

    Certificate fresh = certify(schedule, stored.params, eps, stored.rationalized_denominator);
    if (a.rationalize) {
        if (*a.rationalize < 1) throw UsageError("--rationalize needs a positive denominator");
        fresh = certify(schedule, rationalize(stored.params, *a.rationalize), eps, *a.rationalize);
    }
    if (!a.out.empty()) write_file_atomic(a.out, to_canonical_json(fresh));

    const bool ok = fresh.verified && diffs.empty();
    if (a.json) {
        nlohmann::json d = nlohmann::json::array();
        for (const auto& x : diffs) {
            d.push_back({{"field", x.field}, {"index", x.index}, {"stored", x.stored}, {"recomputed", x.recomputed}});
        }
        nlohmann::json failures = nlohmann::json::array();
        for (const auto& f : fresh.failures) {
            failures.push_back({{"family", family_name(f.family)}, {"layer", f.layer}, {"margin", f.margin}});
        }
        io.out << nlohmann::json{{"L", fresh.L},
                                 {"epsilon", eps},
                                 {"c_total", fresh.c_total},
                                 {"verified", fresh.verified},
                                 {"rationalized_denominator", fresh.rationalized_denominator
                                                                  ? nlohmann::json(*fresh.rationalized_denominator)
                                                                  : nlohmann::json(nullptr)},
                                 {"precision_warning", fresh.precision_warning},
                                 {"stored_fields_match", diffs.empty()},
                                 {"diff", d},
                                 {"failures", failures},
                                 {"digest", certificate_digest(fresh)}}
                      .dump(2)
               << "\n";
    } else {
        io.out << "L = " << fresh.L << ", epsilon = " << eps << "\n";
        io.out << "c_total = " << fmt(fresh.c_total, 12) << "\n";
        if (!diffs.empty()) {
            io.out << "stored fields disagree with recomputation:\n";
            for (const auto& x : diffs) {
                io.out << "  " << x.field << "[" << x.index << "]: stored " << fmt(x.stored, 17) << ", recomputed "
                       << fmt(x.recomputed, 17) << "\n";
            }
        }
        for (const auto& f : fresh.failures) {
            io.out << "  failed " << family_name(f.family) << " at layer " << f.layer + 1 << ": margin "
                   << fmt(f.margin, 6) << "\n";
        }
        if (fresh.precision_warning) io.out << "warning: a margin sits within double-precision noise\n";
        io.out << "verified = " << (ok ? "yes" : "no") << "\n";
    }
    return ok ? kExitOk : kExitFailed;
}

// --------------------------------------------------------------- constants

inline int cmd_constants(bool json, Streams io) {
    const ConstantsTable table = paper_constants();
    if (json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& e : table.entries) {
            rows.push_back({{"name", e.name},
                            {"value", e.value},
                            {"reference", e.paper_value},
                            {"relation", relation_symbol(e.relation)},
                            {"tolerance", e.tolerance},
                            {"formula", e.formula},
                            {"pass", e.passes()}});
        }
        io.out << nlohmann::json{{"entries", rows}, {"all_pass", table.all_pass()}}.dump(2) << "\n";
    } else {
        io.out << std::left << std::setw(20) << "name" << std::setw(14) << "value" << std::setw(4) << "rel"
               << std::setw(12) << "reference" << "pass\n";
        for (const auto& e : table.entries) {
            io.out << std::left << std::setw(20) << e.name << std::setw(14) << fmt(e.value, 8) << std::setw(4)
                   << relation_symbol(e.relation) << std::setw(12) << fmt(e.paper_value, 8)
                   << (e.passes() ? "yes" : "NO") << "\n";
        }
    }
    return table.all_pass() ? kExitOk : kExitFailed;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
    int from = 1;
    int to = 0;
    std::string out;
    int jobs = 1;
    OptimizeArgs opt;
};

inline int cmd_sweep(const SweepArgs& a, Streams io) {
    if (a.from < 1 || a.to < a.from) throw UsageError("need 1 <= --layers-from <= --layers-to");
    if (a.jobs < 1) throw UsageError("--jobs must be at least 1");
    fs::path dir;
    if (!a.out.empty()) {
        dir = a.out;
    } else if (auto env = env_out_dir()) {
        dir = *env;
    } else {
        throw UsageError(std::string("sweep needs --out DIR or ") + kOutDirEnv);
    }
    ensure_directory(dir);
    const OptimizerConfig cfg = make_config(a.opt);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const auto count = static_cast<std::size_t>(a.to - a.from + 1);
    std::vector<LayerRun> runs(count);
    std::vector<std::string> errors(count);
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < count;) {
            const int L = a.from + static_cast<int>(k);
            try {
                runs[k] = optimize_layers(L, cfg, nullptr);
                write_file_atomic(dir / ("certificate_L" + std::to_string(L) + ".json"),
                                  to_canonical_json(runs[k].certificate));
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
            if (!a.opt.quiet) {
                std::lock_guard<std::mutex> lock(log_mutex);
                io.err << "L = " << L << ": c_total = " << fmt(runs[k].certificate.c_total) << " ("
                       << fmt(runs[k].seconds, 3) << " s)\n";
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::min<int>(a.jobs, static_cast<int>(count));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "L,c_total,verified,seconds\n";
    bool all_verified = true;
    for (std::size_t k = 0; k < count; ++k) {
        if (!errors[k].empty()) throw std::runtime_error("L = " + std::to_string(a.from + k) + ": " + errors[k]);
        const auto& c = runs[k].certificate;
        all_verified = all_verified && c.verified;
        csv << a.from + static_cast<int>(k) << "," << fmt(c.c_total, 17) << "," << (c.verified ? "true" : "false")
            << "," << fmt(runs[k].seconds, 6) << "\n";
    }
    write_file_atomic(dir / "sweep.csv", csv.str());
    io.out << csv.str();
    return all_verified ? kExitOk : kExitFailed;
}

// ------------------------------------------------------------------ oracle

struct OracleArgs {
    int N = 0;
    int n = 0;
    std::string X, P;
    int s = 0, t = 0, cap = 0, floor = 0;
    std::string in;
    bool above = false;
    int threshold = -1;
    std::string uniform;
    std::string spec;
    int level = 0;
    double q = 0.0;
    std::uint64_t seed = 0;
};

inline oracle::GroundSetInstance instance_from(const OracleArgs& a) {
    oracle::GroundSetInstance inst;
    inst.N = a.N;
    inst.X = parse_set(a.X);
    inst.P = parse_set(a.P);
    inst.s = a.s;
    inst.t = a.t;
    inst.cap = a.cap;
    inst.floor = a.floor;
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return inst;
}

inline oracle::PivotSizes sizes_from_json(const nlohmann::json& j) {
    oracle::PivotSizes s;
    s.p1 = j.at("p1").get<int>();
    s.p1_x = j.at("p1_x").get<int>();
    s.cap = j.at("cap").get<int>();
    s.p2 = j.at("p2").get<int>();
    s.p2_x = j.at("p2_x").get<int>();
    s.floor = j.at("floor").get<int>();
    return s;
}

inline int cmd_oracle(const std::string& op, const OracleArgs& a, Streams io) {
    using namespace oracle;
    if (op == "s-cone" || op == "t-cone") {
        const auto inst = instance_from(a);
        const SetFamily f = op == "s-cone" ? enumerate_s_cone(inst) : enumerate_t_cone(inst);
        io.out << nlohmann::json{{"count", f.count()}, {"family", family_to_json(f)}}.dump() << "\n";
        return kExitOk;
    }
    if (op == "pivot-check") {
        const auto j = load_json(a.in);
        PivotVerdict v;
        try {
            const int N = j.at("N").get<int>(), n = j.at("n").get<int>();
            const auto sizes = sizes_from_json(j.at("sizes"));
            const SetFamily S = family_from_json(j.at("S"));
            const SetFamily T = family_from_json(j.at("T"));
            v = a.above ? check_above_pivot_conditions(S, T, N, n, sizes) : check_pivot_conditions(S, T, N, n, sizes);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(a.in + ": " + e.what());
        }
        io.out << verdict_to_json(v).dump(2) << "\n";
        return v.pass() ? kExitOk : kExitFailed;
    }
    if (op == "dualize") {
        const auto j = load_json(a.in);
        SetFamily f;
        try {
            f = family_from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(a.in + ": " + e.what());
        }
        io.out << family_to_json(dualize(f, a.N)).dump() << "\n";
        return kExitOk;
    }
    if (op == "normalize") {
        const auto j = load_json(a.in);
        EmbeddingMap phi;
        try {
            phi = embedding_from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(a.in + ": " + e.what());
        }
        try {
            const auto norm = normalize_embedding(phi, a.N);
            io.out << nlohmann::json{{"X", set_to_json(norm.X)}, {"phi_prime", embedding_to_json(norm.phi_prime)}}.dump(2)
                   << "\n";
        } catch (const NotAnEmbedding& e) {
            io.out << nlohmann::json{{"error", e.what()},
                                     {"witness", {set_to_json(phi.source_set(e.first)), set_to_json(phi.source_set(e.second))}}}
                          .dump(2)
                   << "\n";
            return kExitFailed;
        }
        return kExitOk;
    }
    if (op == "mono-search") {
        Colouring colouring;
        int N = a.N;
        if (!a.spec.empty()) {
            ColouringSpec spec;
            try {
                spec = colouring_spec_from_json(load_json(a.spec));
            } catch (const nlohmann::json::exception& e) {
                throw UsageError(a.spec + ": " + e.what());
            }
            colouring = build_colouring(spec);
            N = spec.N;
        } else if (!a.uniform.empty()) {
            if (a.uniform != "blue" && a.uniform != "red") throw UsageError("--uniform takes blue or red");
            colouring = Colouring::uniform(N, a.uniform == "blue" ? Colour::blue : Colour::red);
        } else if (a.threshold >= 0) {
            colouring = Colouring::layered(N, a.threshold);
        } else {
            throw UsageError("mono-search needs --spec, --uniform or --threshold");
        }
        const auto hit = find_monochromatic_copy(colouring, a.n);
        if (!hit) {
            io.out << nlohmann::json{{"found", false}}.dump() << "\n";
            return kExitFailed;
        }
        io.out << nlohmann::json{{"found", true},
                                 {"colour", colour_name(colouring(hit->image[0]))},
                                 {"embedding", embedding_to_json(*hit)}}
                      .dump(2)
               << "\n";
        return kExitOk;
    }
    if (op == "sample") {
        const SetFamily f = sample_pivot_family(a.N, a.level, a.q, a.seed);
        io.out << nlohmann::json{{"count", f.count()}, {"family", family_to_json(f)}}.dump() << "\n";
        return kExitOk;
    }
    throw UsageError("unknown oracle operation '" + op + "'");
}

// -------------------------------------------------------------------- run

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Streams io{out, err};
    CLI::App app{"Layered-colouring lower bounds for diagonal poset Ramsey numbers"};
    app.name("posetramsey");
    app.require_subcommand(1);

    OptimizeArgs opt;
    auto add_opt_flags = [](CLI::App* sub, OptimizeArgs& o) {
        sub->add_option("--restarts", o.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "seed for restart jitter");
        sub->add_option("--epsilon", o.epsilon, "strictness of every constraint");
        sub->add_option("--jitter", o.jitter, "relative restart perturbation (0 = deterministic warm start)");
        sub->add_flag("--no-hints", o.no_hints, "drop the c_i/h_i monotonicity hints");
        sub->add_flag("-q,--quiet", o.quiet, "no progress on stderr");
    };
    auto* optimize_cmd = app.add_subcommand("optimize", "maximize c_total for L layer pairs and certify the result");
    optimize_cmd->add_option("--layers", opt.layers, "number of layer pairs L")->required();
    add_opt_flags(optimize_cmd, opt);
    optimize_cmd->add_option("--out", opt.out, "certificate path");
    optimize_cmd->add_flag("--json", opt.json, "JSON summary on stdout");

    CertifyArgs cert;
    auto* certify_cmd = app.add_subcommand("certify", "re-verify a certificate from its parameters");
    certify_cmd->add_option("--in", cert.in, "certificate path")->required();
    certify_cmd->add_option("--epsilon", cert.epsilon, "override the stored epsilon");
    certify_cmd->add_option("--rationalize", cert.rationalize, "round c down and h up to multiples of 1/D");
    certify_cmd->add_option("--out", cert.out, "write the recomputed certificate here");
    certify_cmd->add_flag("--json", cert.json, "JSON report on stdout");

    bool constants_json = false;
    auto* constants_cmd = app.add_subcommand("constants", "recompute the six-layer growth constants");
    constants_cmd->add_flag("--json", constants_json, "JSON table on stdout");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "optimize every L in a range and write a CSV");
    sweep_cmd->add_option("--layers-from", sweep.from, "first L")->required();
    sweep_cmd->add_option("--layers-to", sweep.to, "last L")->required();
    sweep_cmd->add_option("--out", sweep.out, "output directory");
    sweep_cmd->add_option("--jobs", sweep.jobs, "concurrent layer counts");
    add_opt_flags(sweep_cmd, sweep.opt);

    OracleArgs orc;
    std::string op;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact small-instance checks (JSON output)");
    oracle_cmd->add_option("op", op, "s-cone | t-cone | pivot-check | dualize | normalize | mono-search | sample")
        ->required()
        ->check(CLI::IsMember({"s-cone", "t-cone", "pivot-check", "dualize", "normalize", "mono-search", "sample"}));
    oracle_cmd->add_option("--N", orc.N, "ground set size");
    oracle_cmd->add_option("--n", orc.n, "cube dimension");
    oracle_cmd->add_option("--X", orc.X, "comma-separated set");
    oracle_cmd->add_option("--P", orc.P, "comma-separated set");
    oracle_cmd->add_option("--s", orc.s, "s-cone level");
    oracle_cmd->add_option("--t", orc.t, "t-cone level");
    oracle_cmd->add_option("--cap", orc.cap, "s-cone bound on |S & X|");
    oracle_cmd->add_option("--floor", orc.floor, "t-cone bound on |T & X|");
    oracle_cmd->add_option("--in", orc.in, "input JSON");
    oracle_cmd->add_flag("--above", orc.above, "pivot-check: families above the middle level");
    oracle_cmd->add_option("--threshold", orc.threshold, "mono-search: blue iff |A| <= threshold");
    oracle_cmd->add_option("--uniform", orc.uniform, "mono-search: single-colour colouring");
    oracle_cmd->add_option("--spec", orc.spec, "mono-search: colouring spec JSON");
    oracle_cmd->add_option("--level", orc.level, "sample: level");
    oracle_cmd->add_option("--q", orc.q, "sample: inclusion probability");
    oracle_cmd->add_option("--seed", orc.seed, "sample: seed");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (optimize_cmd->parsed()) return cmd_optimize(opt, io);
        if (certify_cmd->parsed()) return cmd_certify(cert, io);
        if (constants_cmd->parsed()) return cmd_constants(constants_json, io);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep, io);
        if (oracle_cmd->parsed()) return cmd_oracle(op, orc, io);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const oracle::BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace posetramsey::cli
