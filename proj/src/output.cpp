#include "rotalign/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rotalign/config.hpp"
#include "rotalign/errors.hpp"

namespace rotalign {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

// Times of missing extrema are reported as empty cells rather than -1.
std::string time_cell(double t) {
    return t == kNotFound ? std::string{} : num(t);
}

nlohmann::json extrema_json(const ExtremaSummary& e) {
    auto t = [](double v) -> nlohmann::json {
        return v == kNotFound ? nlohmann::json(nullptr) : nlohmann::json(v);
    };
    return {{"max_align_during", e.max_align_during},
            {"max_align_after", e.max_align_after},
            {"max_orient_pos_after", e.max_orient_pos_after},
            {"max_orient_neg_after", e.max_orient_neg_after},
            {"t_align_during_ps", t(e.t_align_during)},
            {"t_align_after_ps", t(e.t_align_after)},
            {"t_orient_pos_after_ps", t(e.t_orient_pos_after)},
            {"t_orient_neg_after_ps", t(e.t_orient_neg_after)},
            {"post_window_ps", e.post_window_ps}};
}

nlohmann::json report_json(const ConvergenceReport& r) {
    return {{"dt_fs", r.dt_ps * 1e3},
            {"j_max", r.j_max},
            {"rounds", r.rounds},
            {"residual", r.residual},
            {"max_norm_deviation", r.max_norm_deviation}};
}

std::filesystem::path prepare(const std::filesystem::path& dir, const std::string& file) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    return dir / file;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    f << text;
    if (!f) {
        throw Error("write failed: " + path.string());
    }
}

} // namespace

std::string version_string() { return ROTALIGN_VERSION; }

std::string header_block(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "# rotalign " << version_string() << "\n";
    std::istringstream text(to_config_text(config));
    for (std::string line; std::getline(text, line);) {
        out << (line.empty() ? "#" : "# " + line) << "\n";
    }
    return out.str();
}

void write_series_csv(std::ostream& out, const std::vector<CaseResult>& cases,
                      const std::vector<double>* params) {
    out << "time_ps,orientation,alignment,envelope_1,envelope_2,temperature_K,variant";
    if (params) out << ",param";
    out << "\n";
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& r = cases[c];
        if (!r.ok()) continue;
        const auto& s = r.series;
        const std::string tail = "," + num(r.temperature_k) + "," + quoted(r.variant) +
                                 (params ? "," + num((*params)[c]) : std::string{});
        for (std::size_t i = 0; i < s.times_ps.size(); ++i) {
            const double e1 = s.envelopes.size() > 0 ? s.envelopes[0][i] : 0.0;
            const double e2 = s.envelopes.size() > 1 ? s.envelopes[1][i] : 0.0;
            out << num(s.times_ps[i]) << ',' << num(s.orientation[i]) << ','
                << num(s.alignment[i]) << ',' << num(e1) << ',' << num(e2) << tail << "\n";
        }
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "param,max_align_during,max_align_after,max_orient_pos_after,max_orient_neg_after,"
           "t_align_during,t_align_after,t_orient_pos_after,t_orient_neg_after,"
           "temperature_K,variant,dt_fs,j_max,status\n";
    for (const auto& row : rows) {
        out << num(row.param) << ',';
        if (row.ok()) {
            const auto& e = row.extrema;
            out << num(e.max_align_during) << ',' << num(e.max_align_after) << ','
                << num(e.max_orient_pos_after) << ',' << num(e.max_orient_neg_after) << ','
                << time_cell(e.t_align_during) << ',' << time_cell(e.t_align_after) << ','
                << time_cell(e.t_orient_pos_after) << ',' << time_cell(e.t_orient_neg_after)
                << ',';
        } else {
            out << ",,,,,,,,";
        }
        out << num(row.temperature_k) << ',' << quoted(row.variant) << ',';
        if (row.ok()) {
            out << num(row.report.dt_ps * 1e3) << ',' << row.report.j_max << ",ok\n";
        } else {
            out << ",," << quoted("error: " + row.error) << "\n";
        }
    }
}

std::string meta_json(const ExperimentConfig& config, const std::vector<CaseResult>& cases,
                      const std::vector<SweepRow>* rows) {
    nlohmann::json j;
    j["name"] = config.name;
    j["version"] = version_string();
    j["kind"] = rows ? "sweep" : "run";
    j["config"] = to_config_text(config);
    j["t_rot_ps"] = rotational_period_ps(config.molecule);
    j["post_window_ps"] = config.resolved_post_window_ps();
    if (rows) {
        auto arr = nlohmann::json::array();
        int failed = 0;
        for (const auto& row : *rows) {
            nlohmann::json r{{"param", row.param},
                             {"variant", row.variant},
                             {"temperature_K", row.temperature_k}};
            if (row.ok()) {
                r["convergence"] = report_json(row.report);
            } else {
                r["error"] = row.error;
                ++failed;
            }
            arr.push_back(std::move(r));
        }
        j["sweep_parameter"] = std::string(to_string(config.sweep->parameter));
        j["rows"] = std::move(arr);
        j["failed_rows"] = failed;
    } else {
        auto arr = nlohmann::json::array();
        for (const auto& c : cases) {
            nlohmann::json r{{"variant", c.variant}, {"temperature_K", c.temperature_k}};
            if (c.ok()) {
                r["extrema"] = extrema_json(c.extrema);
                r["convergence"] = report_json(c.report);
            } else {
                r["error"] = c.error;
            }
            arr.push_back(std::move(r));
        }
        j["cases"] = std::move(arr);
    }
    return j.dump(2) + "\n";
}

WrittenFiles write_run_outputs(const ExperimentConfig& config, const std::vector<CaseResult>& cases,
                               const std::filesystem::path& dir) {
    WrittenFiles w;
    for (const auto& c : cases) w.failures += c.ok() ? 0 : 1;
    if (config.write_series) {
        std::ostringstream csv;
        csv << header_block(config);
        write_series_csv(csv, cases);
        const auto path = prepare(dir, config.name + "_series.csv");
        write_text(path, csv.str());
        w.paths.push_back(path);
    }
    const auto meta = prepare(dir, config.name + "_meta.json");
    write_text(meta, meta_json(config, cases));
    w.paths.push_back(meta);
    return w;
}

WrittenFiles write_sweep_outputs(const ExperimentConfig& config, const SweepResult& result,
                                 const std::filesystem::path& dir) {
    WrittenFiles w;
    for (const auto& r : result.rows) w.failures += r.ok() ? 0 : 1;
    std::ostringstream csv;
    csv << header_block(config);
    write_sweep_csv(csv, result.rows);
    const auto sweep_path = prepare(dir, config.name + "_sweep.csv");
    write_text(sweep_path, csv.str());
    w.paths.push_back(sweep_path);
    if (config.write_series && !result.cases.empty()) {
        std::vector<double> params;
        for (const auto& r : result.rows) params.push_back(r.param);
        std::ostringstream s;
        s << header_block(config);
        write_series_csv(s, result.cases, &params);
        const auto path = prepare(dir, config.name + "_series.csv");
        write_text(path, s.str());
        w.paths.push_back(path);
    }
    const auto meta = prepare(dir, config.name + "_meta.json");
    write_text(meta, meta_json(config, result.cases, &result.rows));
    w.paths.push_back(meta);
    return w;
}

} // namespace rotalign
