#include "lzbath/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lzbath {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Section -> key -> raw value text.
using IniDoc = std::map<std::string, std::map<std::string, std::string>>;

IniDoc parse_ini(const std::string& text) {
    IniDoc doc;
    std::string section;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            doc[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": key outside a section");
        if (!doc[section].emplace(key, value).second)
            throw ConfigError("config: duplicate key '" + section + "." + key + "'");
    }
    return doc;
}

double to_double(const std::string& raw, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (trim(raw.substr(used)).empty()) return v;
    } catch (...) {
    }
    throw ConfigError("config: cannot parse number for " + where + ": '" + raw + "'");
}

long to_long(const std::string& raw, const std::string& where) {
    const double v = to_double(raw, where);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) throw ConfigError("config: expected integer for " + where);
    return static_cast<long>(r);
}

std::uint64_t to_u64(const std::string& raw, const std::string& where) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(raw, &used);
        if (trim(raw.substr(used)).empty()) return v;
    } catch (...) {
    }
    throw ConfigError("config: cannot parse unsigned integer for " + where + ": '" + raw + "'");
}

bool to_bool(const std::string& raw, const std::string& where) {
    if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
    if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
    throw ConfigError("config: cannot parse boolean for " + where + ": '" + raw + "'");
}

std::vector<double> to_list(const std::string& raw, const std::string& where) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) {
        std::istringstream part(item);
        std::string token;
        while (part >> token) out.push_back(to_double(token, where));
    }
    if (out.empty()) throw ConfigError("config: empty list for " + where);
    return out;
}

std::vector<std::string> to_string_list(const std::string& raw) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) {
        const std::string v = trim(item);
        if (!v.empty()) out.push_back(v);
    }
    return out;
}

// Tracks which keys were consumed so leftovers can be reported.
class Section {
public:
    Section(const IniDoc& doc, std::string name) : name_(std::move(name)) {
        const auto it = doc.find(name_);
        if (it != doc.end()) entries_ = it->second;
    }

    bool has(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return false;
        return true;
    }

    std::string take(const std::string& key) {
        const auto it = entries_.find(key);
        const std::string value = it->second;
        entries_.erase(it);
        return value;
    }

    void get(const std::string& key, double& target) {
        if (has(key)) target = to_double(take(key), name_ + "." + key);
    }
    void get(const std::string& key, long& target) {
        if (has(key)) target = to_long(take(key), name_ + "." + key);
    }
    void get(const std::string& key, std::uint64_t& target) {
        if (has(key)) target = to_u64(take(key), name_ + "." + key);
    }
    void get(const std::string& key, bool& target) {
        if (has(key)) target = to_bool(take(key), name_ + "." + key);
    }
    void get(const std::string& key, std::string& target) {
        if (has(key)) target = take(key);
    }
    void get_count(const std::string& key, std::size_t& target) {
        if (has(key)) {
            const long v = to_long(take(key), name_ + "." + key);
            if (v < 0) throw ConfigError("config: " + name_ + "." + key + " must be >= 0");
            target = static_cast<std::size_t>(v);
        }
    }
    void get_index(const std::string& key, Index& target) {
        if (has(key)) target = static_cast<Index>(to_long(take(key), name_ + "." + key));
    }

    void finish() const {
        if (!entries_.empty())
            throw ConfigError("config: unknown key '" + name_ + "." + entries_.begin()->first + "'");
    }

private:
    std::string name_;
    std::map<std::string, std::string> entries_;
};

void check_sections(const IniDoc& doc, const std::set<std::string>& allowed) {
    for (const auto& [name, keys] : doc) {
        (void)keys;
        if (!allowed.count(name)) throw ConfigError("config: unknown section '[" + name + "]'");
    }
}

BathSpec parse_bath_ini(const IniDoc& doc) {
    Section section(doc, "bath");
    std::string mode = "continuum";
    section.get("mode", mode);

    BathSpec bath;
    if (mode == "explicit") {
        if (!section.has("omega")) throw ConfigError("config: explicit bath needs bath.omega");
        const std::vector<double> omega = to_list(section.take("omega"), "bath.omega");
        std::vector<double> gamma(omega.size(), 0.0);
        std::vector<double> theta(omega.size(), 0.0);
        if (section.has("gamma")) {
            gamma = to_list(section.take("gamma"), "bath.gamma");
            if (gamma.size() == 1) gamma.assign(omega.size(), gamma.front());
        }
        if (section.has("theta")) {
            theta = to_list(section.take("theta"), "bath.theta");
            if (theta.size() == 1) theta.assign(omega.size(), theta.front());
        }
        if (gamma.size() != omega.size() || theta.size() != omega.size())
            throw ConfigError("config: bath.omega/gamma/theta lengths do not match");
        ExplicitBath ex;
        for (std::size_t q = 0; q < omega.size(); ++q)
            ex.modes.push_back(BathMode{omega[q], gamma[q], theta[q]});
        bath.spec = ex;
    } else if (mode == "continuum") {
        ContinuumBath c;
        section.get("alpha", c.density.alpha);
        section.get("s", c.density.s);
        section.get("omega_c", c.density.omega_c);
        section.get_count("n_modes", c.n_modes);
        section.get("omega_max", c.omega_max);
        section.get("omega_min", c.omega_min);
        section.get("theta", c.theta);
        std::string scheme = "linear";
        section.get("scheme", scheme);
        if (scheme == "linear")
            c.scheme = Scheme::Linear;
        else if (scheme == "logarithmic")
            c.scheme = Scheme::Logarithmic;
        else
            throw ConfigError("config: bath.scheme must be 'linear' or 'logarithmic'");
        bath.spec = c;
    } else {
        throw ConfigError("config: bath.mode must be 'explicit' or 'continuum'");
    }
    section.finish();
    return bath;
}

FullConfig parse_full_ini(const IniDoc& doc, const std::set<std::string>& extra_sections) {
    std::set<std::string> allowed = {"qubit", "bath", "run", "solver", "output", "fock"};
    allowed.insert(extra_sections.begin(), extra_sections.end());
    check_sections(doc, allowed);

    FullConfig cfg;

    Section qubit(doc, "qubit");
    qubit.get("v", cfg.scenario.qubit.v);
    qubit.get("delta", cfg.scenario.qubit.delta);
    qubit.finish();

    cfg.scenario.bath = parse_bath_ini(doc);

    Section run(doc, "run");
    run.get("t_start", cfg.scenario.run.t_start);
    run.get("t_end", cfg.scenario.run.t_end);
    run.get("dt", cfg.scenario.run.dt);
    run.get("record_stride", cfg.scenario.run.record_stride);
    run.get("snapshot_stride", cfg.scenario.run.snapshot_stride);
    run.get("norm_drift_abort", cfg.scenario.run.norm_drift_abort);
    run.get("norm_drift_warn", cfg.scenario.run.norm_drift_warn);
    run.get("steady_window_fraction", cfg.scenario.run.steady_window_fraction);
    run.get("flatness_tol", cfg.scenario.run.flatness_tol);
    run.get_index("M", cfg.scenario.multiplicity);
    run.get("seed", cfg.scenario.seed);
    run.get("delta_offset", cfg.scenario.delta_offset);
    run.finish();

    Section solver(doc, "solver");
    solver.get("tikhonov_eps", cfg.scenario.solver.tikhonov_eps);
    solver.get("svd_cutoff", cfg.scenario.solver.svd_cutoff);
    solver.get("condition_warn", cfg.scenario.solver.condition_warn);
    solver.finish();

    Section output(doc, "output");
    output.get("directory", cfg.output.directory);
    if (output.has("formats")) cfg.output.formats = to_string_list(output.take("formats"));
    output.finish();
    for (const auto& f : cfg.output.formats)
        if (f != "csv") throw ConfigError("config: unsupported output format '" + f + "'");

    Section fock(doc, "fock");
    fock.get_index("n_max", cfg.fock.n_max);
    fock.get_index("verify_margin", cfg.fock.verify_margin);
    fock.get("verify_tol", cfg.fock.verify_tol);
    fock.get("verify", cfg.fock.verify);
    fock.finish();

    return cfg;
}

// ----------------------------- JSON ingestion -------------------------------

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) throw ConfigError("config: unknown key '" + where + key + "'");
    }
}

template <class T>
void json_get(const json& obj, const char* key, T& target, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        target = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad value for " + where + key);
    }
}

BathSpec parse_bath_json(const json& b) {
    BathSpec bath;
    std::string mode = "continuum";
    json_get(b, "mode", mode, "bath.");
    if (mode == "explicit") {
        check_keys(b, "bath.", {"mode", "omega", "gamma", "theta"});
        std::vector<double> omega, gamma, theta;
        json_get(b, "omega", omega, "bath.");
        json_get(b, "gamma", gamma, "bath.");
        json_get(b, "theta", theta, "bath.");
        if (gamma.empty()) gamma.assign(omega.size(), 0.0);
        if (theta.empty()) theta.assign(omega.size(), 0.0);
        if (gamma.size() == 1) gamma.assign(omega.size(), gamma.front());
        if (theta.size() == 1) theta.assign(omega.size(), theta.front());
        if (omega.empty() || gamma.size() != omega.size() || theta.size() != omega.size())
            throw ConfigError("config: bath.omega/gamma/theta lengths do not match");
        ExplicitBath ex;
        for (std::size_t q = 0; q < omega.size(); ++q)
            ex.modes.push_back(BathMode{omega[q], gamma[q], theta[q]});
        bath.spec = ex;
    } else if (mode == "continuum") {
        check_keys(b, "bath.",
                   {"mode", "alpha", "s", "omega_c", "n_modes", "omega_max", "omega_min", "scheme",
                    "theta"});
        ContinuumBath c;
        json_get(b, "alpha", c.density.alpha, "bath.");
        json_get(b, "s", c.density.s, "bath.");
        json_get(b, "omega_c", c.density.omega_c, "bath.");
        json_get(b, "n_modes", c.n_modes, "bath.");
        json_get(b, "omega_max", c.omega_max, "bath.");
        json_get(b, "omega_min", c.omega_min, "bath.");
        json_get(b, "theta", c.theta, "bath.");
        std::string scheme = "linear";
        json_get(b, "scheme", scheme, "bath.");
        if (scheme == "linear")
            c.scheme = Scheme::Linear;
        else if (scheme == "logarithmic")
            c.scheme = Scheme::Logarithmic;
        else
            throw ConfigError("config: bath.scheme must be 'linear' or 'logarithmic'");
        bath.spec = c;
    } else {
        throw ConfigError("config: bath.mode must be 'explicit' or 'continuum'");
    }
    return bath;
}

FullConfig parse_full_json(const json& doc) {
    check_keys(doc, "", {"qubit", "bath", "run", "solver", "output", "fock", "derived"});
    FullConfig cfg;

    if (doc.contains("qubit")) {
        const json& q = doc.at("qubit");
        check_keys(q, "qubit.", {"v", "delta"});
        json_get(q, "v", cfg.scenario.qubit.v, "qubit.");
        json_get(q, "delta", cfg.scenario.qubit.delta, "qubit.");
    }
    if (doc.contains("bath")) cfg.scenario.bath = parse_bath_json(doc.at("bath"));
    if (doc.contains("run")) {
        const json& r = doc.at("run");
        check_keys(r, "run.",
                   {"t_start", "t_end", "dt", "record_stride", "snapshot_stride",
                    "norm_drift_abort", "norm_drift_warn", "steady_window_fraction", "flatness_tol",
                    "M", "seed", "delta_offset"});
        json_get(r, "t_start", cfg.scenario.run.t_start, "run.");
        json_get(r, "t_end", cfg.scenario.run.t_end, "run.");
        json_get(r, "dt", cfg.scenario.run.dt, "run.");
        json_get(r, "record_stride", cfg.scenario.run.record_stride, "run.");
        json_get(r, "snapshot_stride", cfg.scenario.run.snapshot_stride, "run.");
        json_get(r, "norm_drift_abort", cfg.scenario.run.norm_drift_abort, "run.");
        json_get(r, "norm_drift_warn", cfg.scenario.run.norm_drift_warn, "run.");
        json_get(r, "steady_window_fraction", cfg.scenario.run.steady_window_fraction, "run.");
        json_get(r, "flatness_tol", cfg.scenario.run.flatness_tol, "run.");
        long m = cfg.scenario.multiplicity;
        json_get(r, "M", m, "run.");
        cfg.scenario.multiplicity = static_cast<Index>(m);
        json_get(r, "seed", cfg.scenario.seed, "run.");
        json_get(r, "delta_offset", cfg.scenario.delta_offset, "run.");
    }
    if (doc.contains("solver")) {
        const json& s = doc.at("solver");
        check_keys(s, "solver.", {"tikhonov_eps", "svd_cutoff", "condition_warn"});
        json_get(s, "tikhonov_eps", cfg.scenario.solver.tikhonov_eps, "solver.");
        json_get(s, "svd_cutoff", cfg.scenario.solver.svd_cutoff, "solver.");
        json_get(s, "condition_warn", cfg.scenario.solver.condition_warn, "solver.");
    }
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        check_keys(o, "output.", {"directory", "formats"});
        json_get(o, "directory", cfg.output.directory, "output.");
        json_get(o, "formats", cfg.output.formats, "output.");
    }
    if (doc.contains("fock")) {
        const json& f = doc.at("fock");
        check_keys(f, "fock.", {"n_max", "verify_margin", "verify_tol", "verify"});
        long nm = cfg.fock.n_max, vm = cfg.fock.verify_margin;
        json_get(f, "n_max", nm, "fock.");
        json_get(f, "verify_margin", vm, "fock.");
        cfg.fock.n_max = static_cast<Index>(nm);
        cfg.fock.verify_margin = static_cast<Index>(vm);
        json_get(f, "verify_tol", cfg.fock.verify_tol, "fock.");
        json_get(f, "verify", cfg.fock.verify, "fock.");
    }
    return cfg;
}

bool looks_like_json(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{';
    }
    return false;
}

} // namespace

FullConfig load_config(const std::string& path) {
    const std::string text = read_file(path);
    if (looks_like_json(text)) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& err) {
            throw ConfigError(std::string("config: JSON parse error: ") + err.what());
        }
        return parse_full_json(doc);
    }
    return parse_full_ini(parse_ini(text), {});
}

SweepFile load_sweep_spec(const std::string& path) {
    const std::string text = read_file(path);
    SweepFile out;
    if (looks_like_json(text)) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& err) {
            throw ConfigError(std::string("config: JSON parse error: ") + err.what());
        }
        json body = doc;
        body.erase("axes");
        body.erase("sweep");
        const FullConfig base = parse_full_json(body);
        out.spec.base = base.scenario;
        out.output = base.output;
        if (!doc.contains("axes")) throw ConfigError("sweep: missing axes");
        for (const auto& [name, values] : doc.at("axes").items()) {
            SweepAxis axis;
            axis.name = name;
            axis.values = values.get<std::vector<double>>();
            out.spec.axes.push_back(axis);
        }
        if (doc.contains("sweep")) {
            check_keys(doc.at("sweep"), "sweep.", {"cap"});
            json_get(doc.at("sweep"), "cap", out.spec.cap, "sweep.");
        }
    } else {
        IniDoc doc = parse_ini(text);
        IniDoc base_doc = doc;
        base_doc.erase("axes");
        base_doc.erase("sweep");
        const FullConfig base = parse_full_ini(base_doc, {});
        out.spec.base = base.scenario;
        out.output = base.output;
        const auto axes_it = doc.find("axes");
        if (axes_it == doc.end() || axes_it->second.empty())
            throw ConfigError("sweep: missing [axes] section");
        for (const auto& [name, raw] : axes_it->second) {
            SweepAxis axis;
            axis.name = name;
            axis.values = to_list(raw, "axes." + name);
            out.spec.axes.push_back(axis);
        }
        Section sweep(doc, "sweep");
        sweep.get_count("cap", out.spec.cap);
        sweep.finish();
    }
    out.spec.validate();
    return out;
}

ConvergeFile load_converge_spec(const std::string& path) {
    const std::string text = read_file(path);
    ConvergeFile out;
    if (looks_like_json(text)) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& err) {
            throw ConfigError(std::string("config: JSON parse error: ") + err.what());
        }
        json body = doc;
        body.erase("converge");
        const FullConfig base = parse_full_json(body);
        out.base = base.scenario;
        out.output = base.output;
        if (!doc.contains("converge")) throw ConfigError("converge: missing converge block");
        const json& c = doc.at("converge");
        check_keys(c, "converge.", {"kind", "values"});
        json_get(c, "kind", out.kind, "converge.");
        json_get(c, "values", out.values, "converge.");
    } else {
        IniDoc doc = parse_ini(text);
        IniDoc base_doc = doc;
        base_doc.erase("converge");
        const FullConfig base = parse_full_ini(base_doc, {});
        out.base = base.scenario;
        out.output = base.output;
        if (!doc.count("converge")) throw ConfigError("converge: missing [converge] section");
        Section c(doc, "converge");
        if (!c.has("kind")) throw ConfigError("converge: missing converge.kind");
        out.kind = c.take("kind");
        if (!c.has("values")) throw ConfigError("converge: missing converge.values");
        out.values = to_list(c.take("values"), "converge.values");
        c.finish();
    }
    if (out.values.size() < 2) throw ConfigError("converge: need at least 2 values");
    return out;
}

std::string meta_json(const FullConfig& config) {
    const Scenario& sc = config.scenario;
    json doc;
    doc["qubit"] = {{"v", sc.qubit.v}, {"delta", sc.qubit.delta}};

    if (sc.bath.is_explicit()) {
        const auto& ex = sc.bath.explicit_bath();
        std::vector<double> omega, gamma, theta;
        for (const auto& m : ex.modes) {
            omega.push_back(m.omega);
            gamma.push_back(m.gamma);
            theta.push_back(m.theta);
        }
        doc["bath"] = {{"mode", "explicit"}, {"omega", omega}, {"gamma", gamma}, {"theta", theta}};
    } else {
        const auto& c = sc.bath.continuum();
        doc["bath"] = {{"mode", "continuum"},
                       {"alpha", c.density.alpha},
                       {"s", c.density.s},
                       {"omega_c", c.density.omega_c},
                       {"n_modes", c.n_modes},
                       {"omega_max", c.omega_max},
                       {"omega_min", c.omega_min},
                       {"scheme", c.scheme == Scheme::Linear ? "linear" : "logarithmic"},
                       {"theta", c.theta}};
    }

    doc["run"] = {{"t_start", sc.run.t_start},
                  {"t_end", sc.run.t_end},
                  {"dt", sc.run.dt},
                  {"record_stride", sc.run.record_stride},
                  {"snapshot_stride", sc.run.snapshot_stride},
                  {"norm_drift_abort", sc.run.norm_drift_abort},
                  {"norm_drift_warn", sc.run.norm_drift_warn},
                  {"steady_window_fraction", sc.run.steady_window_fraction},
                  {"flatness_tol", sc.run.flatness_tol},
                  {"M", sc.multiplicity},
                  {"seed", sc.seed},
                  {"delta_offset", sc.delta_offset}};
    doc["solver"] = {{"tikhonov_eps", sc.solver.tikhonov_eps},
                     {"svd_cutoff", sc.solver.svd_cutoff},
                     {"condition_warn", sc.solver.condition_warn}};
    doc["output"] = {{"directory", config.output.directory}, {"formats", config.output.formats}};
    doc["fock"] = {{"n_max", config.fock.n_max},
                   {"verify_margin", config.fock.verify_margin},
                   {"verify_tol", config.fock.verify_tol},
                   {"verify", config.fock.verify}};

    json derived;
    try {
        const std::vector<BathMode> modes = sc.bath.resolve();
        derived["n_modes"] = modes.size();
        if (!modes.empty()) {
            const IntegratedQuantities iq = integrated_quantities(modes);
            derived["S"] = iq.S;
            derived["E0"] = iq.E0;
        }
    } catch (const std::exception& err) {
        derived["error"] = err.what();
    }
    doc["derived"] = derived;

    return doc.dump(2) + "\n";
}

std::string defaults_ini() {
    const FullConfig cfg; // built-in defaults
    std::ostringstream out;
    out << "# lzbath default configuration (all keys shown with their defaults)\n";
    out << "\n[qubit]\n";
    out << "v = " << cfg.scenario.qubit.v << "          # sweep velocity, > 0\n";
    out << "delta = " << cfg.scenario.qubit.delta << "      # tunneling strength\n";
    out << "\n[bath]\n";
    out << "mode = continuum   # continuum | explicit\n";
    out << "# --- continuum keys ---\n";
    const ContinuumBath c;
    out << "alpha = " << c.density.alpha << "\n";
    out << "s = " << c.density.s << "            # 1 ohmic, <1 sub-ohmic, >1 super-ohmic\n";
    out << "omega_c = " << c.density.omega_c << "\n";
    out << "n_modes = " << c.n_modes << "\n";
    out << "omega_max = 0      # 0 selects 5*omega_c\n";
    out << "omega_min = " << c.omega_min << "  # lower edge, logarithmic scheme only\n";
    out << "scheme = linear    # linear | logarithmic\n";
    out << "theta = " << c.theta << "          # shared interaction angle\n";
    out << "# --- explicit keys (mode = explicit) ---\n";
    out << "# omega = 10       # comma-separated mode frequencies\n";
    out << "# gamma = 1.2      # couplings (scalar broadcasts)\n";
    out << "# theta = 1.5707963267948966\n";
    out << "\n[run]\n";
    out << "t_start = " << cfg.scenario.run.t_start << "\n";
    out << "t_end = " << cfg.scenario.run.t_end << "\n";
    out << "dt = " << cfg.scenario.run.dt << "\n";
    out << "record_stride = " << cfg.scenario.run.record_stride << "\n";
    out << "snapshot_stride = " << cfg.scenario.run.snapshot_stride << "  # 0 = off\n";
    out << "norm_drift_abort = " << cfg.scenario.run.norm_drift_abort << "\n";
    out << "norm_drift_warn = " << cfg.scenario.run.norm_drift_warn << "\n";
    out << "steady_window_fraction = " << cfg.scenario.run.steady_window_fraction << "\n";
    out << "flatness_tol = " << cfg.scenario.run.flatness_tol << "\n";
    out << "M = " << cfg.scenario.multiplicity << "              # ansatz multiplicity\n";
    out << "seed = " << cfg.scenario.seed << "\n";
    out << "delta_offset = " << cfg.scenario.delta_offset << "\n";
    out << "\n[solver]\n";
    out << "tikhonov_eps = " << cfg.scenario.solver.tikhonov_eps << "\n";
    out << "svd_cutoff = " << cfg.scenario.solver.svd_cutoff << "\n";
    out << "condition_warn = " << cfg.scenario.solver.condition_warn << "\n";
    out << "\n[output]\n";
    out << "directory = " << cfg.output.directory << "\n";
    out << "formats = csv\n";
    out << "\n[fock]\n";
    out << "n_max = " << cfg.fock.n_max << "          # 0 = default per mode count (40/12/8)\n";
    out << "verify_margin = " << cfg.fock.verify_margin << "\n";
    out << "verify_tol = " << cfg.fock.verify_tol << "\n";
    out << "verify = " << (cfg.fock.verify ? "true" : "false") << "\n";
    return out.str();
}

FockConfig make_fock_config(const FullConfig& config) {
    FockConfig fc;
    fc.qubit = config.scenario.qubit;
    fc.modes = config.scenario.bath.resolve();
    fc.n_max = config.fock.n_max;
    fc.run = config.scenario.run;
    fc.verify_margin = config.fock.verify_margin;
    fc.verify_tol = config.fock.verify_tol;
    fc.verify = config.fock.verify;
    return fc;
}

} // namespace lzbath
