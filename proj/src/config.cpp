#include "rotalign/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rotalign/errors.hpp"
#include "rotalign/units.hpp"

namespace rotalign {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(',', start);
        const auto end = pos == std::string_view::npos ? s.size() : pos;
        out.push_back(trim(s.substr(start, end - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

/// Splits "<number><space?><unit>" into its parts.
std::pair<double, std::string> split_number(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) {
        throw ConfigError("empty value");
    }
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) {
        // "pi" alone means one pi.
        if (s == "pi") {
            return {1.0, "pi"};
        }
        throw ConfigError("cannot read a number from '" + s + "'");
    }
    if (!std::isfinite(v)) {
        throw ConfigError("non-finite value '" + s + "'");
    }
    return {v, trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)))};
}

std::string describe(Quantity kind) {
    switch (kind) {
    case Quantity::Time: return "a time (ps, fs or Trot)";
    case Quantity::Wavenumber: return "a wavenumber (cm-1)";
    case Quantity::Dipole: return "a dipole (D or au)";
    case Quantity::Polarizability: return "a polarizability (A3 or au)";
    case Quantity::Intensity: return "an intensity (W/cm2)";
    case Quantity::Angle: return "an angle (rad, deg or pi)";
    case Quantity::Temperature: return "a temperature (K)";
    case Quantity::Dimensionless: return "a plain number";
    }
    return "?";
}

double apply_unit(double v, const std::string& unit, Quantity kind, double t_rot_ps,
                  std::string_view text) {
    auto bad = [&]() -> double {
        throw ConfigError("'" + std::string(text) + "' is not " + describe(kind));
    };
    switch (kind) {
    case Quantity::Time:
        if (unit == "ps") return v;
        if (unit == "fs") return v * 1e-3;
        if (unit == "Trot" || unit == "T_rot") {
            if (!(t_rot_ps > 0.0)) {
                throw ConfigError("Trot used before the molecule is known");
            }
            return v * t_rot_ps;
        }
        return bad();
    case Quantity::Wavenumber:
        if (unit == "cm-1" || unit == "cm^-1" || unit == "1/cm") return v;
        return bad();
    case Quantity::Dipole:
        if (unit == "D") return v;
        if (unit == "au") return units::au_to_debye(v);
        return bad();
    case Quantity::Polarizability:
        if (unit == "A3" || unit == "A^3" || unit == "Å3" || unit == "Å³") return v;
        if (unit == "au") return units::au_to_angstrom3(v);
        return bad();
    case Quantity::Intensity:
        if (unit == "W/cm2" || unit == "W/cm^2") return v;
        return bad();
    case Quantity::Angle:
        if (unit == "rad") return v;
        if (unit == "deg") return v * units::kPi / 180.0;
        if (unit == "pi") return v * units::kPi;
        return bad();
    case Quantity::Temperature:
        if (unit == "K") return v;
        return bad();
    case Quantity::Dimensionless:
        if (unit.empty()) return v;
        return bad();
    }
    return bad();
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw ConfigError("expected a boolean, got '" + s + "'");
}

int parse_int(const std::string& s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("expected an integer, got '" + s + "'");
    }
    return v;
}

/// Section view that remembers which keys were consumed.
class Section {
public:
    Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

    bool present() const { return tree_ != nullptr; }

    std::optional<std::string> get(const std::string& key) {
        used_.insert(key);
        if (!tree_) {
            return std::nullopt;
        }
        auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!v) {
            return std::nullopt;
        }
        return trim(*v);
    }

    void check_unknown() const {
        if (!tree_) {
            return;
        }
        for (const auto& [key, child] : *tree_) {
            if (!used_.contains(key)) {
                throw ConfigError("unknown key '" + key + "' in [" + name_ + "]");
            }
        }
    }

private:
    std::string name_;
    const pt::ptree* tree_;
    std::set<std::string> used_;
};

void read_pulse(Section& s, PulseSpec& p, ExperimentConfig& cfg, double t_rot, bool first) {
    if (auto v = s.get("shape")) p.shape = parse_envelope_shape(*v);
    if (auto v = s.get("tau")) p.tau_ps = parse_quantity(*v, Quantity::Time, t_rot);
    if (auto v = s.get("intensity")) p.intensity_wcm2 = parse_quantity(*v, Quantity::Intensity);
    auto g2 = s.get("gamma_sq");
    auto g = s.get("gamma");
    if (g2 && g) {
        throw ConfigError("give either gamma or gamma_sq, not both");
    }
    if (g2) p.set_gamma_sq(parse_quantity(*g2, Quantity::Dimensionless));
    if (g) p.gamma = parse_quantity(*g, Quantity::Dimensionless);
    if (auto v = s.get("delta_cep")) p.delta_cep = parse_quantity(*v, Quantity::Angle);
    if (auto v = s.get("omega")) p.omega_inv_cm = parse_quantity(*v, Quantity::Wavenumber);
    if (auto v = s.get("plateau_ratio")) {
        p.plateau_ratio = parse_quantity(*v, Quantity::Dimensionless);
    }
    if (first) {
        if (auto v = s.get("center")) {
            p.t_center_ps = parse_quantity(*v, Quantity::Time, t_rot);
            cfg.auto_center = false;
        }
    }
    s.check_unknown();
}

} // namespace

Quantity quantity_of(SweepParameter p) {
    switch (p) {
    case SweepParameter::Tau:
    case SweepParameter::TDelay: return Quantity::Time;
    case SweepParameter::GammaSq: return Quantity::Dimensionless;
    case SweepParameter::DeltaCep1:
    case SweepParameter::DeltaCep2: return Quantity::Angle;
    case SweepParameter::Intensity: return Quantity::Intensity;
    case SweepParameter::Temperature: return Quantity::Temperature;
    }
    return Quantity::Dimensionless;
}

double parse_quantity(std::string_view text, Quantity kind, double t_rot_ps) {
    auto [v, unit] = split_number(text);
    return apply_unit(v, unit, kind, t_rot_ps, text);
}

std::vector<double> parse_quantity_list(std::string_view text, Quantity kind, double t_rot_ps) {
    const auto items = split_commas(text);
    std::vector<std::pair<double, std::string>> parts;
    for (const auto& item : items) {
        if (item.empty()) {
            throw ConfigError("empty item in list '" + std::string(text) + "'");
        }
        parts.push_back(split_number(item));
    }
    std::vector<double> out(parts.size());
    std::string unit;
    for (std::size_t i = parts.size(); i-- > 0;) {
        if (!parts[i].second.empty()) {
            unit = parts[i].second;
        }
        out[i] = apply_unit(parts[i].first, parts[i].second.empty() ? unit : parts[i].second,
                            kind, t_rot_ps, items[i]);
    }
    return out;
}

namespace {

// Drops "; ..." or "# ..." tails that follow whitespace.
std::string strip_inline_comments(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        for (std::size_t i = 1; i < line.size(); ++i) {
            if ((line[i] == ';' || line[i] == '#') && std::isspace(static_cast<unsigned char>(line[i - 1]))) {
                line.erase(i);
                break;
            }
        }
        out += line;
        out += '\n';
    }
    return out;
}

} // namespace

ExperimentConfig parse_config(std::string_view raw) {
    const std::string stripped = strip_inline_comments(raw);
    const std::string_view text = stripped;
    pt::ptree tree;
    {
        std::istringstream in{std::string(text)};
        try {
            pt::read_ini(in, tree);
        } catch (const pt::ini_parser_error& e) {
            throw ConfigError(std::string("config syntax: ") + e.what());
        }
    }
    static const std::set<std::string> known = {"experiment", "molecule", "pulse1", "pulse2",
                                                "field", "propagation", "sweep", "variants",
                                                "output"};
    for (const auto& [name, child] : tree) {
        if (!known.contains(name)) {
            throw ConfigError("unknown section [" + name + "]");
        }
        if (child.empty() && !child.data().empty()) {
            throw ConfigError("key '" + name + "' outside any section");
        }
    }
    // read_ini drops empty sections; an empty [pulse2] still means "copy pulse1".
    std::set<std::string> declared;
    {
        std::istringstream in{std::string(text)};
        for (std::string line; std::getline(in, line);) {
            const auto a = line.find_first_not_of(" \t");
            const auto b = line.find(']');
            if (a != std::string::npos && line[a] == '[' && b != std::string::npos && b > a) {
                declared.insert(line.substr(a + 1, b - a - 1));
            }
        }
    }
    static const pt::ptree empty_tree;
    auto section = [&](const std::string& name) {
        auto it = tree.find(name);
        if (it != tree.not_found()) return Section(name, &it->second);
        return Section(name, declared.contains(name) ? &empty_tree : nullptr);
    };

    ExperimentConfig cfg;

    // Molecule first: Trot-valued times depend on it.
    {
        Section s = section("molecule");
        if (auto v = s.get("preset")) cfg.molecule = molecule_preset(*v);
        auto& m = cfg.molecule;
        if (auto v = s.get("name")) m.name = *v;
        if (auto v = s.get("B")) m.b_inv_cm = parse_quantity(*v, Quantity::Wavenumber);
        if (auto v = s.get("mu0")) m.mu0_debye = parse_quantity(*v, Quantity::Dipole);
        if (auto v = s.get("alpha_par")) m.alpha_par_a3 = parse_quantity(*v, Quantity::Polarizability);
        if (auto v = s.get("alpha_perp")) m.alpha_perp_a3 = parse_quantity(*v, Quantity::Polarizability);
        if (auto v = s.get("beta_par")) m.beta_par = parse_quantity(*v, Quantity::Dimensionless);
        if (auto v = s.get("beta_perp")) m.beta_perp = parse_quantity(*v, Quantity::Dimensionless);
        if (auto v = s.get("beta_units")) m.beta_units = parse_beta_units(*v);
        if (auto v = s.get("gJ_even")) m.gj_even = parse_quantity(*v, Quantity::Dimensionless);
        if (auto v = s.get("gJ_odd")) m.gj_odd = parse_quantity(*v, Quantity::Dimensionless);
        s.check_unknown();
        m.validate();
    }
    const double t_rot = rotational_period_ps(cfg.molecule);
    std::optional<bool> write_series;

    {
        Section s = section("experiment");
        if (auto v = s.get("name")) cfg.name = *v;
        auto temps = s.get("temperatures");
        auto temp = s.get("temperature");
        if (temps && temp) {
            throw ConfigError("give either temperature or temperatures");
        }
        if (temps) cfg.temperatures = parse_quantity_list(*temps, Quantity::Temperature);
        if (temp) cfg.temperatures = {parse_quantity(*temp, Quantity::Temperature)};
        if (auto v = s.get("post_window")) cfg.post_window_ps = parse_quantity(*v, Quantity::Time, t_rot);
        if (auto v = s.get("ensemble_epsilon")) {
            cfg.ensemble_epsilon = parse_quantity(*v, Quantity::Dimensionless);
        }
        if (auto v = s.get("write_series")) write_series = parse_bool(*v);
        s.check_unknown();
    }

    {
        PulseSpec p1;
        Section s1 = section("pulse1");
        read_pulse(s1, p1, cfg, t_rot, true);
        cfg.field.pulses = {p1};
        Section s2 = section("pulse2");
        if (s2.present()) {
            PulseSpec p2 = p1;
            read_pulse(s2, p2, cfg, t_rot, false);
            cfg.field.pulses.push_back(p2);
        }
        Section f = section("field");
        if (auto v = f.get("t_delay")) cfg.field.t_delay_ps = parse_quantity(*v, Quantity::Time, t_rot);
        f.check_unknown();
    }

    {
        Section s = section("propagation");
        PropagationMode mode = PropagationMode::CycleAveraged;
        if (auto v = s.get("mode")) mode = parse_propagation_mode(*v);
        cfg.propagation = PropagationConfig::defaults(mode, cfg.field.pulses.front().omega_inv_cm);
        auto& p = cfg.propagation;
        if (auto v = s.get("dt")) {
            p.dt_ps = parse_quantity(*v, Quantity::Time, t_rot);
            p.sample_every = std::max(1, static_cast<int>(std::floor(kMaxSampleStridePs / p.dt_ps + 1e-9)));
        }
        if (auto v = s.get("sample_every")) p.sample_every = parse_int(*v);
        if (auto v = s.get("j_max")) p.j_max = parse_int(*v);
        if (auto v = s.get("convergence")) {
            if (*v == "auto") {
                p.convergence.enabled = true;
            } else if (*v == "off") {
                p.convergence.enabled = false;
            } else {
                throw ConfigError("convergence must be 'off' or 'auto'");
            }
        }
        if (auto v = s.get("tolerance")) p.convergence.tolerance = parse_quantity(*v, Quantity::Dimensionless);
        if (auto v = s.get("max_rounds")) p.convergence.max_rounds = parse_int(*v);
        auto ts = s.get("t_start");
        auto te = s.get("t_end");
        if (ts.has_value() != te.has_value()) {
            throw ConfigError("give both t_start and t_end, or neither");
        }
        if (ts) {
            p.t_start_ps = parse_quantity(*ts, Quantity::Time, t_rot);
            p.t_end_ps = parse_quantity(*te, Quantity::Time, t_rot);
            cfg.auto_window = false;
        }
        s.check_unknown();
    }

    {
        Section s = section("sweep");
        if (s.present()) {
            SweepSpec sw;
            auto name = s.get("parameter");
            if (!name) {
                throw ConfigError("[sweep] needs a parameter");
            }
            sw.parameter = parse_sweep_parameter(*name);
            const Quantity q = quantity_of(sw.parameter);
            auto values = s.get("values");
            auto start = s.get("start");
            auto stop = s.get("stop");
            auto count = s.get("count");
            if (values && (start || stop || count)) {
                throw ConfigError("[sweep] takes values or start/stop/count, not both");
            }
            if (values) {
                sw.values = parse_quantity_list(*values, q, t_rot);
            } else {
                if (!start || !stop || !count) {
                    throw ConfigError("[sweep] needs values or start, stop and count");
                }
                const double a = parse_quantity(*start, q, t_rot);
                const double b = parse_quantity(*stop, q, t_rot);
                const int n = parse_int(*count);
                if (n < 1) {
                    throw ConfigError("[sweep] count must be positive");
                }
                for (int i = 0; i < n; ++i) {
                    sw.values.push_back(n == 1 ? a : a + (b - a) * i / (n - 1.0));
                }
            }
            cfg.sweep = std::move(sw);
        }
        s.check_unknown();
    }

    {
        Section s = section("variants");
        if (s.present()) {
            VariantSpec v;
            auto name = s.get("parameter");
            auto values = s.get("values");
            if (!name || !values) {
                throw ConfigError("[variants] needs parameter and values");
            }
            v.parameter = *name;
            v.values = split_commas(*values);
            cfg.variants = std::move(v);
        }
        s.check_unknown();
    }

    {
        Section s = section("output");
        if (auto v = s.get("dir")) cfg.output_dir = *v;
        s.check_unknown();
    }

    // Per-point series files are opt-in for sweeps.
    cfg.write_series = write_series.value_or(!cfg.sweep.has_value());
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_config_text(const ExperimentConfig& c) {
    std::ostringstream o;
    o << "[experiment]\n";
    o << "name = " << c.name << '\n';
    o << "temperatures = ";
    for (std::size_t i = 0; i < c.temperatures.size(); ++i) {
        o << (i ? ", " : "") << fmt(c.temperatures[i]) << " K";
    }
    o << '\n';
    if (c.post_window_ps > 0.0) {
        o << "post_window = " << fmt(c.post_window_ps) << " ps\n";
    }
    o << "ensemble_epsilon = " << fmt(c.ensemble_epsilon) << '\n';
    o << "write_series = " << (c.write_series ? "true" : "false") << '\n';

    const auto& m = c.molecule;
    o << "\n[molecule]\n";
    o << "name = " << m.name << '\n';
    o << "B = " << fmt(m.b_inv_cm) << " cm-1\n";
    o << "mu0 = " << fmt(m.mu0_debye) << " D\n";
    o << "alpha_par = " << fmt(m.alpha_par_a3) << " A3\n";
    o << "alpha_perp = " << fmt(m.alpha_perp_a3) << " A3\n";
    o << "beta_par = " << fmt(m.beta_par) << '\n';
    o << "beta_perp = " << fmt(m.beta_perp) << '\n';
    o << "beta_units = " << to_string(m.beta_units) << '\n';
    o << "gJ_even = " << fmt(m.gj_even) << '\n';
    o << "gJ_odd = " << fmt(m.gj_odd) << '\n';

    for (std::size_t i = 0; i < c.field.pulses.size(); ++i) {
        const auto& p = c.field.pulses[i];
        o << "\n[pulse" << i + 1 << "]\n";
        o << "shape = " << to_string(p.shape) << '\n';
        o << "tau = " << fmt(p.tau_ps) << " ps\n";
        o << "intensity = " << fmt(p.intensity_wcm2) << " W/cm2\n";
        o << "gamma = " << fmt(p.gamma) << '\n';
        o << "delta_cep = " << fmt(p.delta_cep) << " rad\n";
        o << "omega = " << fmt(p.omega_inv_cm) << " cm-1\n";
        o << "plateau_ratio = " << fmt(p.plateau_ratio) << '\n';
        if (i == 0 && !c.auto_center) {
            o << "center = " << fmt(p.t_center_ps) << " ps\n";
        }
    }
    o << "\n[field]\n";
    o << "t_delay = " << fmt(c.field.t_delay_ps) << " ps\n";

    const auto& p = c.propagation;
    o << "\n[propagation]\n";
    o << "mode = " << to_string(p.mode) << '\n';
    o << "dt = " << fmt(p.dt_ps) << " ps\n";
    o << "sample_every = " << p.sample_every << '\n';
    o << "j_max = " << p.j_max << '\n';
    o << "convergence = " << (p.convergence.enabled ? "auto" : "off") << '\n';
    o << "tolerance = " << fmt(p.convergence.tolerance) << '\n';
    o << "max_rounds = " << p.convergence.max_rounds << '\n';
    if (!c.auto_window) {
        o << "t_start = " << fmt(p.t_start_ps) << " ps\n";
        o << "t_end = " << fmt(p.t_end_ps) << " ps\n";
    }

    if (c.sweep) {
        o << "\n[sweep]\n";
        o << "parameter = " << to_string(c.sweep->parameter) << '\n';
        const auto unit = unit_of(c.sweep->parameter);
        o << "values = ";
        for (std::size_t i = 0; i < c.sweep->values.size(); ++i) {
            o << (i ? ", " : "") << fmt(c.sweep->values[i]);
            if (!unit.empty()) {
                o << ' ' << unit;
            }
        }
        o << '\n';
    }
    if (c.variants) {
        o << "\n[variants]\n";
        o << "parameter = " << c.variants->parameter << '\n';
        o << "values = ";
        for (std::size_t i = 0; i < c.variants->values.size(); ++i) {
            o << (i ? ", " : "") << c.variants->values[i];
        }
        o << '\n';
    }
    o << "\n[output]\n";
    o << "dir = " << c.output_dir << '\n';
    return o.str();
}

} // namespace rotalign
