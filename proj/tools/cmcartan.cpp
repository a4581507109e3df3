// Command-line front end: single-query reports, grid sweeps to CSV/JSON,
// and an oracle-vs-formula verification sweep.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmcartan/cartan.hpp"
#include "cmcartan/classify.hpp"
#include "cmcartan/degrees.hpp"
#include "cmcartan/orbits.hpp"
#include "cmcartan/orders.hpp"
#include "cmcartan/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cmcartan;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBounds = 3;
constexpr int kExitMismatch = 4;

constexpr const char* kSchemaVersion = "1";

struct HardBounds {
    i64 max_disc = kMaxAbsDiscriminant;  // absolute value
    i64 max_level = kMaxFormulaLevel;
};

HardBounds load_bounds() {
    HardBounds b;
    if (const char* s = std::getenv("CMCARTAN_MAX_DISC")) b.max_disc = std::llabs(std::atoll(s));
    if (const char* s = std::getenv("CMCARTAN_MAX_LEVEL")) b.max_level = std::atoll(s);
    return b;
}

void require_in_bounds(const HardBounds& b, i64 delta, i64 n) {
    if (-delta > b.max_disc) throw bounds_error("discriminant exceeds configured bound");
    if (n > b.max_level) throw bounds_error("level exceeds configured bound");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Runs one job per row index on a small worker pool and returns the
/// results in index order, so output is deterministic regardless of
/// scheduling.
template <typename Fn>
std::vector<std::string> parallel_rows(std::size_t count, int jobs, Fn&& fn) {
    std::vector<std::string> rows(count);
    if (jobs < 1) jobs = 1;
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                rows[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    int nthreads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(jobs), count ? count : 1));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return rows;
}

json degree_payload(Discriminant delta, i64 n) {
    DegreeTableRow row = make_degree_row(delta, n);
    json factors = json::array();
    for (auto [l, a, v] : row.t_tilde_factors)
        factors.push_back({{"l", l}, {"a", a}, {"value", v}});
    return json{
        {"delta", row.delta},
        {"delta_k", row.delta_k},
        {"f", row.conductor},
        {"n", row.n},
        {"cartan_order", row.cartan_order},
        {"t_tilde_factors", factors},
        {"t", row.t},
        {"h", row.h},
        {"simply_transitive", n >= 2 ? simply_transitive(delta, n) : true},
        {"weber_degree", row.weber},
        {"tower_degree", row.tower},
    };
}

int cmd_report(i64 disc, i64 level, bool oracle, const HardBounds& bounds) {
    Discriminant delta(disc);
    require_in_bounds(bounds, disc, level);
    json doc{
        {"schema_version", kSchemaVersion},
        {"query", {{"delta", disc}, {"n", level}, {"mode", "report"}}},
        {"provenance", oracle ? "both" : "formula"},
        {"payload", degree_payload(delta, level)},
    };
    if (oracle) {
        if (level > kMaxEnumerationLevel) throw bounds_error("oracle needs level <= enumeration bound");
        OrbitReport rep = make_orbit_report(delta, level);
        json full = json::array(), reduced = json::array();
        for (i64 s : rep.full_orbit_sizes) full.push_back(s);
        for (i64 s : rep.reduced_orbit_sizes) reduced.push_back(s);
        doc["payload"]["oracle"] = {
            {"full_orbit_sizes", full},
            {"reduced_orbit_sizes", reduced},
            {"t_tilde_observed", rep.t_tilde_observed},
            {"t_observed", rep.t_observed},
            {"h_observed", rep.h_observed},
            {"simply_transitive_observed", rep.simply_transitive_observed},
        };
        const json& p = doc["payload"];
        bool agree = rep.t_observed == p["t"].get<i64>() &&
                     rep.h_observed == p["h"].get<bool>() &&
                     (level < 2 || rep.simply_transitive_observed == p["simply_transitive"].get<bool>());
        doc["payload"]["oracle"]["cross_check"] = agree ? "ok" : "mismatch";
        if (!agree) {
            std::cerr << "formula/oracle mismatch at delta=" << disc << " n=" << level << "\n";
            std::cout << doc.dump(2) << "\n";
            return kExitMismatch;
        }
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

std::vector<Discriminant> disc_range(i64 min_disc, i64 max_disc) {
    if (min_disc > max_disc) std::swap(min_disc, max_disc);
    std::vector<Discriminant> out;
    for (i64 d = std::min<i64>(max_disc, -3); d >= min_disc; --d) {
        i64 r = mod_floor(d, 4);
        if (r == 0 || r == 1) out.emplace_back(d);
    }
    return out;
}

int cmd_table(i64 min_disc, i64 max_disc, i64 min_level, i64 max_level,
              const std::string& format, int jobs, const HardBounds& bounds) {
    require_in_bounds(bounds, std::min(min_disc, max_disc), std::max<i64>(max_level, 1));
    if (min_level < 1) throw std::invalid_argument("levels must be >= 1");
    auto discs = disc_range(min_disc, max_disc);
    std::vector<std::pair<Discriminant, i64>> cells;
    for (const auto& d : discs)
        for (i64 n = min_level; n <= max_level; ++n) cells.emplace_back(d, n);

    const char* header = "delta,delta_k,f,n,cartan_order,t,h,weber_degree,tower_degree,isogeny";
    auto render = [&](std::size_t i) {
        auto [delta, n] = cells[i];
        DegreeTableRow row = make_degree_row(delta, n);
        row.isogeny = cyclic_isogeny_exists(delta, n);
        if (format == "csv") {
            std::ostringstream os;
            os << row.delta << ',' << row.delta_k << ',' << row.conductor << ','
               << row.n << ',' << row.cartan_order << ',' << row.t << ','
               << (row.h ? 1 : 0) << ',' << row.weber << ',' << row.tower << ','
               << (row.isogeny ? 1 : 0);
            return os.str();
        }
        json j = degree_payload(delta, n);
        j.erase("t_tilde_factors");
        j.erase("simply_transitive");
        j["isogeny"] = row.isogeny;
        return j.dump();
    };
    auto rows = parallel_rows(cells.size(), jobs, render);
    if (format == "csv") {
        std::cout << header << "\n";
        for (const auto& r : rows) std::cout << r << "\n";
    } else {
        json doc{{"schema_version", kSchemaVersion},
                 {"query", {{"mode", "table"},
                            {"min_disc", min_disc},
                            {"max_disc", max_disc},
                            {"min_level", min_level},
                            {"max_level", max_level}}},
                 {"provenance", "formula"},
                 {"rows", json::array()}};
        for (const auto& r : rows) doc["rows"].push_back(json::parse(r));
        std::cout << doc.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_classify_torsion(i64 disc, const std::string& format, const HardBounds& bounds) {
    Discriminant delta(disc);
    require_in_bounds(bounds, disc, 1);
    auto groups = torsion_groups_over_kj(delta);
    if (format == "csv") {
        std::cout << "delta,shape\n";
        for (const auto& g : groups)
            std::cout << disc << ',' << csv_field(g.str()) << "\n";
        return kExitOk;
    }
    json shapes = json::array();
    for (const auto& g : groups) shapes.push_back(g.str());
    json doc{{"schema_version", kSchemaVersion},
             {"query", {{"delta", disc}, {"mode", "classify-torsion"}}},
             {"provenance", "formula"},
             {"payload", {{"torsion_groups", shapes}}}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_classify_isogeny(i64 disc, i64 min_level, i64 max_level,
                         const std::string& format, const HardBounds& bounds) {
    Discriminant delta(disc);
    require_in_bounds(bounds, disc, max_level);
    if (min_level < 1) throw std::invalid_argument("levels must be >= 1");
    if (format == "csv") {
        std::cout << "delta,n,isogeny\n";
        for (i64 n = min_level; n <= max_level; ++n)
            std::cout << disc << ',' << n << ',' << (cyclic_isogeny_exists(delta, n) ? 1 : 0) << "\n";
        return kExitOk;
    }
    json levels = json::array();
    for (i64 n = min_level; n <= max_level; ++n)
        levels.push_back({{"n", n}, {"isogeny", cyclic_isogeny_exists(delta, n)}});
    json doc{{"schema_version", kSchemaVersion},
             {"query", {{"delta", disc},
                        {"min_level", min_level},
                        {"max_level", max_level},
                        {"mode", "classify-isogeny"}}},
             {"provenance", "formula"},
             {"payload", {{"levels", levels}}}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(i64 max_disc, i64 max_level, const HardBounds& bounds) {
    max_disc = std::llabs(max_disc);
    if (max_disc > bounds.max_disc || max_level > bounds.max_level)
        throw bounds_error("verify bounds exceed configured limits");
    auto families = verify_all(max_disc, max_level);
    bool all_ok = true;
    for (const auto& fam : families) {
        std::cout << fam.name << ": " << (fam.failed == 0 ? "PASS" : "FAIL")
                  << " (" << fam.checked - fam.failed << "/" << fam.checked << ")";
        if (fam.failed != 0) {
            std::cout << " first counterexample: " << fam.first_counterexample;
            all_ok = false;
        }
        std::cout << "\n";
    }
    return all_ok ? kExitOk : kExitVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cartan orbit and torsion degree tables for imaginary quadratic orders"};
    app.require_subcommand(1);
    app.allow_extras(false);

    HardBounds bounds = load_bounds();
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;

    i64 disc = -3, level = 1;
    i64 min_disc = -100, max_disc_flag = -3;
    i64 min_level = 1, max_level = 10;
    i64 verify_max_disc = 100, verify_max_level = 20;
    bool oracle = false;
    std::string format = "csv";

    auto* report = app.add_subcommand("report", "single (delta, N) report as JSON");
    report->add_option("--disc", disc, "discriminant")->required();
    report->add_option("--level", level, "level N")->required();
    report->add_flag("--oracle", oracle, "add brute-force orbit cross-check");

    auto* table = app.add_subcommand("table", "degree table over a (delta, N) grid");
    table->add_option("--min-disc", min_disc, "most negative discriminant");
    table->add_option("--max-disc", max_disc_flag, "least negative discriminant");
    table->add_option("--min-level", min_level, "first level");
    table->add_option("--max-level", max_level, "last level");
    table->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--jobs", jobs, "worker threads");

    auto* ctors = app.add_subcommand("classify-torsion", "torsion groups over K(j)");
    ctors->add_option("--disc", disc, "discriminant")->required();
    ctors->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* ciso = app.add_subcommand("classify-isogeny", "rational cyclic isogeny levels");
    ciso->add_option("--disc", disc, "discriminant")->required();
    ciso->add_option("--level", level, "single level");
    ciso->add_option("--min-level", min_level, "first level");
    ciso->add_option("--max-level", max_level, "last level");
    ciso->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* verify = app.add_subcommand("verify", "oracle-vs-formula invariant sweep");
    verify->add_option("--max-disc", verify_max_disc, "sweep |delta| bound");
    verify->add_option("--max-level", verify_max_level, "sweep level bound");
    verify->add_option("--jobs", jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (report->parsed()) return cmd_report(disc, level, oracle, bounds);
        if (table->parsed())
            return cmd_table(min_disc, max_disc_flag, min_level, max_level, format, jobs, bounds);
        if (ctors->parsed()) return cmd_classify_torsion(disc, format, bounds);
        if (ciso->parsed()) {
            if (ciso->count("--level")) { min_level = level; max_level = level; }
            return cmd_classify_isogeny(disc, min_level, max_level, format, bounds);
        }
        if (verify->parsed()) return cmd_verify(verify_max_disc, verify_max_level, bounds);
    } catch (const bounds_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBounds;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
