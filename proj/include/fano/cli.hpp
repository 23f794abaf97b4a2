#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fano/gv.hpp"
#include "fano/localize.hpp"

namespace fano {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes: 0 success/pass, 1 computational error, 2 check failure,
// 64 usage error.
enum ExitCode { kOk = 0, kError = 1, kCheckFailed = 2, kUsage = 64 };

struct RunConfig {
    std::string command;  // gw | dt | meeting | check | graphs
    Target target = Target::V5;
    int degree = 0;      // single degree; 0 means "use max_degree"
    int max_degree = 0;  // run 1..max_degree
    std::string insertion = "tau0-h2";
    std::string lift = "auto";
    int seeds = 2;
    int jobs = 1;
    std::string format = "table";
    std::string dump_graphs;      // path; gw dumps per-graph contributions
    std::string check_kind = "all";  // genus0 | genus1 | all
    int gr_r = 2, gr_n = 5;       // graphs subcommand
    int markings = 1;
    bool count_only = false;
    bool show_data = false;
    bool progress = false;
};

struct ReportRecord {
    std::string command;
    std::string target;
    nlohmann::ordered_json degree;  // int, or [b1, b2] for meeting invariants
    std::string value;              // reduced "p/q", integers plain
    std::optional<bool> pass;
    std::vector<std::uint64_t> seeds;
    long elapsed_ms = 0;
};

inline nlohmann::ordered_json to_json(const ReportRecord& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["target"] = r.target;
    j["degree"] = r.degree;
    j["value"] = r.value;
    j["pass"] = r.pass.has_value() ? nlohmann::ordered_json(*r.pass) : nullptr;
    j["seeds"] = r.seeds;
    j["elapsed_ms"] = r.elapsed_ms;
    j["version"] = kToolVersion;
    return j;
}

inline std::string render_records(const std::vector<ReportRecord>& records,
                                  const std::string& format) {
    if (format == "json") {
        if (records.size() == 1) return to_json(records[0]).dump(2) + "\n";
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : records) arr.push_back(to_json(r));
        return arr.dump(2) + "\n";
    }
    std::ostringstream out;
    for (const auto& r : records) {
        if (r.pass.has_value()) out << (*r.pass ? "PASS " : "FAIL ");
        out << r.command << " target=" << r.target << " degree=" << r.degree.dump()
            << " value=" << r.value;
        if (!r.seeds.empty()) {
            out << " seeds=";
            for (size_t i = 0; i < r.seeds.size(); ++i)
                out << (i ? "," : "") << r.seeds[i];
        }
        out << " elapsed_ms=" << r.elapsed_ms << "\n";
    }
    return out.str();
}

namespace detail_cli {

inline long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

inline std::vector<int> degree_list(const RunConfig& cfg, int fallback_max) {
    std::vector<int> ds;
    if (cfg.degree > 0) {
        ds.push_back(cfg.degree);
    } else {
        int hi = cfg.max_degree > 0 ? cfg.max_degree : fallback_max;
        for (int d = 1; d <= hi; ++d) ds.push_back(d);
    }
    return ds;
}

inline int gw_degree_cap(Target t) { return t == Target::V5 ? 4 : 3; }

// GW value with the configured lift policy; "auto" runs two independent
// lifts and insists they agree.
inline GWResult gw_value(const RunConfig& cfg, int d, std::ostream& err) {
    GWOptions opts;
    opts.seed_count = cfg.seeds;
    opts.jobs = cfg.jobs;
    if (cfg.progress) {
        opts.progress = [&err](size_t done, size_t total) {
            err << "\r" << done << "/" << total << " graphs" << std::flush;
            if (done == total) err << "\n";
        };
    }
    const auto& g = target_geometry(cfg.target);
    if (cfg.lift != "auto") return twisted_gw(cfg.target, d, cfg.lift, opts);
    std::string second = cfg.target == Target::V5 ? "sigma11" : "c2S";
    GWResult a = twisted_gw(cfg.target, d, "sigma1sq", opts);
    GWResult b = twisted_gw(cfg.target, d, second, opts);
    if (a.value != b.value)
        throw std::runtime_error("insertion lifts disagree on " + g.display + " d=" +
                                 std::to_string(d));
    for (auto s : b.seeds) a.seeds.push_back(s);
    return a;
}

inline void dump_gw_graphs(const RunConfig& cfg, int d, const std::string& path) {
    const auto& g = target_geometry(cfg.target);
    auto records = enumerate_graphs(g.gr_r, g.gr_n, d, 1);
    TwistSpec twist = TwistSpec::for_target(g);
    InsertionLift lift =
        resolve_lift(g, cfg.lift == "auto" ? std::string("sigma1sq") : cfg.lift);
    auto w = TorusWeights::specialize(g.gr_n, kSeedBase);
    std::vector<Rat> per_graph;
    sum_over_graphs(records, twist, lift, w, cfg.jobs, nullptr, &per_graph);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (size_t i = 0; i < records.size(); ++i)
        out << records[i].canon << "\t" << to_string(per_graph[i]) << "\n";
}

}  // namespace detail_cli

// Executes one command; returns the process exit code. All reporting goes
// through `out`; progress and errors through `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    using detail_cli::ms_since;
    std::vector<ReportRecord> records;
    bool any_fail = false;
    try {
        if (cfg.command == "gw") {
            int cap = detail_cli::gw_degree_cap(cfg.target);
            for (int d : detail_cli::degree_list(cfg, 3)) {
                if (d < 1 || d > cap) {
                    err << "gw degree out of range (1.." << cap << " for "
                        << target_name(cfg.target) << ")\n";
                    return kUsage;
                }
            }
            for (int d : detail_cli::degree_list(cfg, 3)) {
                auto t0 = std::chrono::steady_clock::now();
                GWResult res = detail_cli::gw_value(cfg, d, err);
                ReportRecord r;
                r.command = "gw";
                r.target = target_name(cfg.target);
                r.degree = d;
                r.value = to_string(res.value);
                r.seeds = res.seeds;
                r.elapsed_ms = ms_since(t0);
                records.push_back(std::move(r));
                if (!cfg.dump_graphs.empty()) detail_cli::dump_gw_graphs(cfg, d, cfg.dump_graphs);
            }
        } else if (cfg.command == "dt") {
            if (cfg.show_data) {
                out << dataset_text();
                return kOk;
            }
            if (cfg.insertion != "tau0-h2" && cfg.insertion != "tau1-h1") {
                err << "unknown insertion " << cfg.insertion << "\n";
                return kUsage;
            }
            int i = cfg.insertion == "tau0-h2" ? 0 : 1;
            for (int d : detail_cli::degree_list(cfg, 3)) {
                if (d < 1 || d > 3) {
                    err << "dt degree out of range (1..3)\n";
                    return kUsage;
                }
                auto t0 = std::chrono::steady_clock::now();
                auto res = dt_number(cfg.target, d, i);
                ReportRecord r;
                r.command = "dt:" + cfg.insertion;
                r.target = target_name(cfg.target);
                r.degree = d;
                r.value = to_string(res.dt3);
                r.elapsed_ms = ms_since(t0);
                records.push_back(std::move(r));
            }
        } else if (cfg.command == "meeting") {
            int hi = cfg.max_degree > 0 ? cfg.max_degree : (cfg.degree > 0 ? cfg.degree : 2);
            if (hi < 1 || hi > 3) {
                err << "meeting degrees supported up to 3\n";
                return kUsage;
            }
            GVCalculator calc(cfg.target);
            for (int b1 = 1; b1 <= hi; ++b1) {
                for (int b2 = b1; b2 <= hi; ++b2) {
                    auto t0 = std::chrono::steady_clock::now();
                    Rat m = calc.meeting(b1, b2);
                    ReportRecord r;
                    r.command = "meeting";
                    r.target = target_name(cfg.target);
                    r.degree = nlohmann::ordered_json::array({b1, b2});
                    r.value = to_string(m);
                    r.elapsed_ms = ms_since(t0);
                    records.push_back(std::move(r));
                }
            }
        } else if (cfg.command == "check") {
            if (cfg.check_kind != "all" && cfg.check_kind != "genus0" &&
                cfg.check_kind != "genus1") {
                err << "check kind must be genus0, genus1 or all\n";
                return kUsage;
            }
            GVCalculator calc(cfg.target);
            auto degrees = detail_cli::degree_list(cfg, 3);
            for (int d : degrees) {
                if (d < 1 || d > 3) {
                    err << "check degree out of range (1..3)\n";
                    return kUsage;
                }
            }
            if (cfg.check_kind == "all" || cfg.check_kind == "genus0") {
                for (int d : degrees) {
                    auto t0 = std::chrono::steady_clock::now();
                    GWResult gw = detail_cli::gw_value(cfg, d, err);
                    auto chk = calc.check_genus0(d, gw.value);
                    ReportRecord r;
                    r.command = "check:genus0";
                    r.target = target_name(cfg.target);
                    r.degree = d;
                    r.value = to_string(chk.gw) + "=" + to_string(chk.dt_side);
                    r.pass = chk.pass;
                    r.seeds = gw.seeds;
                    r.elapsed_ms = ms_since(t0);
                    any_fail |= !chk.pass;
                    records.push_back(std::move(r));
                }
            }
            if (cfg.check_kind == "all" || cfg.check_kind == "genus1") {
                for (int d : degrees) {
                    auto t0 = std::chrono::steady_clock::now();
                    Rat n1 = calc.residual_n1(d);
                    ReportRecord r;
                    r.command = "check:genus1-residual";
                    r.target = target_name(cfg.target);
                    r.degree = d;
                    r.value = to_string(n1);
                    r.pass = is_zero(n1);
                    r.elapsed_ms = ms_since(t0);
                    any_fail |= !*r.pass;
                    records.push_back(std::move(r));
                }
            }
        } else if (cfg.command == "graphs") {
            if (cfg.degree < 1) {
                err << "graphs needs --degree >= 1\n";
                return kUsage;
            }
            auto t0 = std::chrono::steady_clock::now();
            auto list = enumerate_graphs(cfg.gr_r, cfg.gr_n, cfg.degree, cfg.markings);
            if (!cfg.dump_graphs.empty()) {
                std::ofstream dump(cfg.dump_graphs);
                if (!dump) throw std::runtime_error("cannot open " + cfg.dump_graphs);
                for (const auto& rec : list) dump << rec.canon << "\n";
            } else if (!cfg.count_only) {
                for (const auto& rec : list) out << rec.canon << "\n";
            }
            ReportRecord r;
            r.command = "graphs";
            r.target = std::to_string(cfg.gr_r) + "," + std::to_string(cfg.gr_n);
            r.degree = cfg.degree;
            r.value = std::to_string(list.size());
            r.elapsed_ms = ms_since(t0);
            records.push_back(std::move(r));
        } else {
            err << "unknown command " << cfg.command << "\n";
            return kUsage;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
    out << render_records(records, cfg.format);
    return any_fail ? kCheckFailed : kOk;
}

}  // namespace fano
