#include "vml/cli/config_file.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "vml/error.hpp"

namespace vml {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE) throw ConfigError("'" + v + "' is not a number");
    return d;
}

long long to_int(const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno == ERANGE) throw ConfigError("'" + v + "' is not an integer");
    return i;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("'" + v + "' is not a boolean");
}

std::string fmt(double d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

std::string fmt(bool b) { return b ? "true" : "false"; }

struct Key {
    std::string section, name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define VML_DOUBLE(sec, key, field) \
    Key{sec, key, [](RunConfig& c, const std::string& v) { c.field = to_double(v); }, \
        [](const RunConfig& c) { return fmt(c.field); }}
#define VML_INT(sec, key, field) \
    Key{sec, key, [](RunConfig& c, const std::string& v) { c.field = static_cast<decltype(c.field)>(to_int(v)); }, \
        [](const RunConfig& c) { return std::to_string(c.field); }}
#define VML_BOOL(sec, key, field) \
    Key{sec, key, [](RunConfig& c, const std::string& v) { c.field = to_bool(v); }, \
        [](const RunConfig& c) { return fmt(c.field); }}

const std::vector<Key>& keys() {
    static const std::vector<Key> table = {
        VML_INT("grids", "n_v", n_v),
        VML_DOUBLE("grids", "v_max", v_max),
        VML_INT("grids", "n_x", n_x),
        VML_DOUBLE("grids", "box_length", box_length),
        Key{"grids", "active",
            [](RunConfig& c, const std::string& v) {
                std::array<bool, 3> a{false, false, false};
                std::stringstream ss(v);
                std::string item;
                int i = 0;
                while (std::getline(ss, item, ',')) {
                    if (i >= 3) throw ConfigError("active takes three comma-separated booleans");
                    a[i++] = to_bool(trim(item));
                }
                if (i != 3) throw ConfigError("active takes three comma-separated booleans");
                c.active = a;
            },
            [](const RunConfig& c) {
                return fmt(c.active[0]) + "," + fmt(c.active[1]) + "," + fmt(c.active[2]);
            }},
        VML_DOUBLE("physics", "gamma", weight.gamma),
        VML_DOUBLE("physics", "ell", weight.ell),
        VML_DOUBLE("physics", "q", weight.q),
        VML_DOUBLE("physics", "theta", weight.theta),
        VML_DOUBLE("physics", "s", s),
        Key{"physics", "mode", [](RunConfig& c, const std::string& v) { c.mode = parse_mode(v); },
            [](const RunConfig& c) { return to_string(c.mode); }},
        VML_BOOL("physics", "transport", transport),
        VML_BOOL("physics", "fields", fields),
        VML_BOOL("physics", "coupling", coupling),
        VML_BOOL("physics", "collisions", collisions),
        Key{"physics", "initial", [](RunConfig& c, const std::string& v) { c.initial = parse_initial(v); },
            [](const RunConfig& c) { return to_string(c.initial); }},
        VML_DOUBLE("physics", "amplitude", amplitude),
        VML_INT("physics", "modes", modes),
        VML_INT("physics", "mode_index", mode_index),
        Key{"physics", "seed",
            [](RunConfig& c, const std::string& v) {
                const long long i = to_int(v);
                if (i < 0) throw ConfigError("seed must be nonnegative");
                c.seed = static_cast<std::uint64_t>(i);
            },
            [](const RunConfig& c) { return std::to_string(c.seed); }},
        VML_DOUBLE("integrator", "dt", dt),
        VML_DOUBLE("integrator", "t_end", t_end),
        Key{"integrator", "solver", [](RunConfig& c, const std::string& v) { c.solver = parse_solver(v); },
            [](const RunConfig& c) { return to_string(c.solver); }},
        VML_DOUBLE("integrator", "cg_tol", cg_tol),
        VML_INT("integrator", "cg_max_iter", cg_max_iter),
        VML_INT("diagnostics", "N0", N0),
        VML_INT("diagnostics", "N", N),
        VML_DOUBLE("diagnostics", "l0", l0),
        VML_DOUBLE("diagnostics", "l_prime", l_prime),
        VML_DOUBLE("diagnostics", "eps0", eps0),
        VML_INT("diagnostics", "beta_max", beta_max),
        VML_INT("diagnostics", "output_every", output_every),
        VML_DOUBLE("diagnostics", "lyapunov_factor", lyapunov_factor),
        VML_INT("output", "checkpoint_every", checkpoint_every),
    };
    return table;
}

#undef VML_DOUBLE
#undef VML_INT
#undef VML_BOOL

const Key* find_key(const std::string& section, const std::string& name) {
    for (const Key& k : keys())
        if (k.name == name && (section.empty() || k.section == section)) return &k;
    return nullptr;
}

bool known_section(const std::string& s) {
    for (const Key& k : keys())
        if (k.section == s) return true;
    return false;
}

}  // namespace

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string line, section;
    std::set<std::string> seen;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", no);
            section = trim(line.substr(1, line.size() - 2));
            if (!known_section(section)) throw ConfigError("unknown section [" + section + "]", no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", no);
        const std::string name = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError("key '" + name + "' outside any section", no);
        const Key* k = find_key(section, name);
        if (!k) throw ConfigError("unknown key '" + name + "' in [" + section + "]", no);
        if (!seen.insert(section + "." + name).second) throw ConfigError("duplicate key '" + name + "'", no);
        try {
            k->set(base, value);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(name) + ": " + e.what(), no);
        }
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str(), base);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void apply_override(RunConfig& c, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
    std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    std::string section;
    if (const auto dot = key.find('.'); dot != std::string::npos) {
        section = key.substr(0, dot);
        key = key.substr(dot + 1);
    }
    const Key* k = find_key(section, key);
    if (!k) throw ConfigError("unknown key '" + assignment.substr(0, eq) + "'");
    try {
        k->set(c, value);
    } catch (const ConfigError& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

std::string write_manifest(const RunConfig& c) {
    std::ostringstream out;
    out << "# vml resolved configuration\n";
    std::string section;
    for (const Key& k : keys()) {
        if (k.section != section) {
            if (!section.empty()) out << '\n';
            section = k.section;
            out << '[' << section << "]\n";
        }
        out << k.name << " = " << k.get(c) << '\n';
    }
    return out.str();
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const Key& k : keys()) out.push_back(k.section + "." + k.name);
    return out;
}

}  // namespace vml
