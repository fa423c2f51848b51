#include "btforms/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace btforms {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line)
{
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& what)
{
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

bool parse_number(const std::string& s, double& out)
{
    if (s.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == s.size() && std::isfinite(out);
}

bool parse_string(const std::string& s, std::string& out)
{
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') return false;
    out = s.substr(1, s.size() - 2);
    return out.find('"') == std::string::npos;
}

std::vector<std::string> split_array(const std::string& body)
{
    std::vector<std::string> items;
    std::string cur;
    bool in_string = false;
    for (char c : body) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !items.empty()) items.push_back(trim(cur));
    return items;
}

TomlValue parse_value(const std::string& raw, const std::string& origin, int line)
{
    const std::string s = trim(raw);
    if (s == "true") return true;
    if (s == "false") return false;
    double d = 0.0;
    if (parse_number(s, d)) return d;
    std::string str;
    if (parse_string(s, str)) return str;
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
        const auto items = split_array(s.substr(1, s.size() - 2));
        if (items.empty()) return std::vector<double>{};
        if (!items.front().empty() && items.front().front() == '"') {
            std::vector<std::string> out;
            for (const auto& it : items) {
                if (!parse_string(it, str)) fail_at(origin, line, "mixed or malformed string array element '" + it + "'");
                out.push_back(str);
            }
            return out;
        }
        std::vector<double> out;
        for (const auto& it : items) {
            if (!parse_number(it, d)) fail_at(origin, line, "malformed number array element '" + it + "'");
            out.push_back(d);
        }
        return out;
    }
    fail_at(origin, line, "cannot parse value '" + s + "'");
}

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_array(const std::vector<double>& xs)
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + fmt(xs[i]);
    return out + "]";
}

class Reader {
public:
    Reader(const TomlTable& t, std::string origin) : table_(t), origin_(std::move(origin)) {}

    bool has(const std::string& key) const { return table_.count(key) != 0; }

    template <class T>
    const T& get(const std::string& key, const char* type) const
    {
        const TomlEntry& e = table_.at(key);
        if (const T* v = std::get_if<T>(&e.value)) return *v;
        fail_at(origin_, e.line, "key '" + key + "' must be " + type);
    }

    double number(const std::string& key, double fallback) const
    {
        return has(key) ? get<double>(key, "a number") : fallback;
    }
    int integer(const std::string& key, int fallback) const
    {
        if (!has(key)) return fallback;
        const double d = get<double>(key, "an integer");
        if (d != std::floor(d) || std::abs(d) > 9.0e15) fail_at(origin_, line(key), "key '" + key + "' must be an integer");
        return static_cast<int>(d);
    }
    bool boolean(const std::string& key, bool fallback) const { return has(key) ? get<bool>(key, "true or false") : fallback; }
    std::string string(const std::string& key, const std::string& fallback) const
    {
        return has(key) ? get<std::string>(key, "a string") : fallback;
    }
    std::vector<double> numbers(const std::string& key) const { return get<std::vector<double>>(key, "an array of numbers"); }
    std::vector<std::string> strings(const std::string& key) const
    {
        if (const auto* v = std::get_if<std::vector<double>>(&table_.at(key).value); v && v->empty()) return {};
        return get<std::vector<std::string>>(key, "an array of strings");
    }
    int line(const std::string& key) const { return table_.at(key).line; }
    const std::string& origin() const { return origin_; }

private:
    const TomlTable& table_;
    std::string origin_;
};

const std::set<std::string>& known_keys()
{
    static const std::set<std::string> keys{
        "title",
        "particles.m1", "particles.m2",
        "potential.name", "potential.strength", "potential.range",
        "channels.j", "channels.scheme",
        "grid.n", "grid.scale",
        "forms.run",
        "scattering.k0", "scattering.count", "scattering.k_min", "scattering.k_max",
        "packet.momentum", "packet.width", "packet.plus_margin",
        "verify.spectrum", "verify.smatrix", "verify.oracle", "verify.kinematic", "verify.intertwining",
        "verify.wigner", "verify.samples", "verify.intertwining_samples", "verify.seed",
        "tolerances.spectrum", "tolerances.phase", "tolerances.unitarity", "tolerances.oracle", "tolerances.born",
        "tolerances.born_window", "tolerances.kinematic", "tolerances.sharpness", "tolerances.intertwining",
        "tolerances.wigner", "tolerances.free_phase",
    };
    return keys;
}

}  // namespace

TomlTable parse_toml(const std::string& text, const std::string& origin)
{
    TomlTable table;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3) fail_at(origin, line, "malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section.find_first_of("[]. \t") != std::string::npos)
                fail_at(origin, line, "unsupported section name '" + section + "'");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail_at(origin, line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty() || key.find_first_of(" \t\".[]") != std::string::npos)
            fail_at(origin, line, "malformed key '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        if (table.count(full)) fail_at(origin, line, "duplicate key '" + full + "'");
        table[full] = TomlEntry{parse_value(s.substr(eq + 1), origin, line), line};
    }
    return table;
}

ModelConfig parse_config(const std::string& text, const std::string& origin)
{
    const TomlTable table = parse_toml(text, origin);
    std::vector<std::string> unknown;
    for (const auto& [key, entry] : table)
        if (!known_keys().count(key)) unknown.push_back(key + " (line " + std::to_string(entry.line) + ")");
    if (!unknown.empty()) {
        std::string msg = origin + ": unknown keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }
    for (const char* required : {"particles.m1", "particles.m2", "potential.name"})
        if (!table.count(required)) throw ConfigError(origin + ": missing required key '" + required + "'");

    const Reader r(table, origin);
    ModelConfig c;
    c.title = r.string("title", c.title);
    c.m1 = r.number("particles.m1", 0.0);
    c.m2 = r.number("particles.m2", 0.0);

    const std::string name = r.string("potential.name", "");
    try {
        c.potential.kind = parse_potential_kind(name);
    } catch (const std::exception& e) {
        fail_at(origin, r.line("potential.name"), "potential.name: " + std::string(e.what()));
    }
    if (c.potential.kind != PotentialModel::Kind::Free)
        for (const char* required : {"potential.strength", "potential.range"})
            if (!table.count(required)) throw ConfigError(origin + ": missing required key '" + required + "'");
    c.potential.strength = r.number("potential.strength", 0.0);
    c.potential.range = r.number("potential.range", 1.0);

    if (r.has("channels.j") || r.has("channels.scheme")) {
        DegeneracyScheme scheme = DegeneracyScheme::Spinless;
        if (r.has("channels.scheme")) {
            try {
                scheme = parse_scheme(r.string("channels.scheme", ""));
            } catch (const std::exception& e) {
                fail_at(origin, r.line("channels.scheme"), "channels.scheme: " + std::string(e.what()));
            }
        }
        std::vector<double> js = r.has("channels.j") ? r.numbers("channels.j") : std::vector<double>{0.0};
        c.channels.clear();
        for (double j : js) {
            if (j < 0 || j != std::floor(j) || j > 8)
                fail_at(origin, r.line("channels.j"), "channels.j entries must be integers in [0, 8]");
            c.channels.push_back({static_cast<int>(2 * j), scheme});
        }
    }

    c.grid_n = r.integer("grid.n", c.grid_n);
    c.grid_scale = r.number("grid.scale", c.grid_scale);

    if (r.has("forms.run")) {
        c.forms.clear();
        for (const auto& f : r.strings("forms.run")) {
            try {
                c.forms.push_back(parse_form(f));
            } catch (const std::exception& e) {
                fail_at(origin, r.line("forms.run"), "forms.run: " + std::string(e.what()));
            }
        }
    }

    if (r.has("scattering.k0")) {
        for (const char* k : {"scattering.count", "scattering.k_min", "scattering.k_max"})
            if (r.has(k)) fail_at(origin, r.line(k), std::string("'") + k + "' conflicts with 'scattering.k0'");
        c.k0 = r.numbers("scattering.k0");
    } else {
        const int count = r.integer("scattering.count", 20);
        const double lo = r.number("scattering.k_min", 10.0);
        const double hi = r.number("scattering.k_max", 400.0);
        if (count < 1) throw ConfigError(origin + ": scattering.count must be positive");
        if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError(origin + ": need 0 < scattering.k_min <= scattering.k_max");
        for (int i = 0; i < count; ++i) c.k0.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }

    if (r.has("packet.momentum")) {
        const auto p = r.numbers("packet.momentum");
        if (p.size() != 3) fail_at(origin, r.line("packet.momentum"), "packet.momentum must have three entries");
        c.packet_momentum = Vec3(p[0], p[1], p[2]);
    }
    c.packet_width = r.number("packet.width", c.packet_width);
    c.plus_margin = r.number("packet.plus_margin", c.plus_margin);

    c.verify.spectrum = r.boolean("verify.spectrum", c.verify.spectrum);
    c.verify.smatrix = r.boolean("verify.smatrix", c.verify.smatrix);
    c.verify.oracle = r.boolean("verify.oracle", c.verify.oracle);
    c.verify.kinematic = r.boolean("verify.kinematic", c.verify.kinematic);
    c.verify.intertwining = r.boolean("verify.intertwining", c.verify.intertwining);
    c.verify.wigner = r.boolean("verify.wigner", c.verify.wigner);
    c.samples = r.integer("verify.samples", c.samples);
    c.intertwining_samples = r.integer("verify.intertwining_samples", c.intertwining_samples);
    if (r.has("verify.seed")) {
        const double s = r.number("verify.seed", 0.0);
        if (s < 0 || s != std::floor(s) || s > 9.0e15) fail_at(origin, r.line("verify.seed"), "verify.seed must be a non-negative integer");
        c.seed = static_cast<std::uint64_t>(s);
    }

    Tolerances& t = c.tol;
    t.spectrum = r.number("tolerances.spectrum", t.spectrum);
    t.phase = r.number("tolerances.phase", t.phase);
    t.unitarity = r.number("tolerances.unitarity", t.unitarity);
    t.oracle = r.number("tolerances.oracle", t.oracle);
    t.born = r.number("tolerances.born", t.born);
    t.born_window = r.number("tolerances.born_window", t.born_window);
    t.kinematic = r.number("tolerances.kinematic", t.kinematic);
    t.sharpness = r.number("tolerances.sharpness", t.sharpness);
    t.intertwining = r.number("tolerances.intertwining", t.intertwining);
    t.wigner = r.number("tolerances.wigner", t.wigner);
    t.free_phase = r.number("tolerances.free_phase", t.free_phase);

    try {
        validate(c);
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return c;
}

void validate(const ModelConfig& c)
{
    std::vector<std::string> bad;
    if (!(c.m1 > 0.0)) bad.push_back("particles.m1 must be positive (got " + fmt(c.m1) + ")");
    if (!(c.m2 > 0.0)) bad.push_back("particles.m2 must be positive (got " + fmt(c.m2) + ")");
    if (!(c.potential.range > 0.0)) bad.push_back("potential.range must be positive (got " + fmt(c.potential.range) + ")");
    if (c.potential.kind != PotentialModel::Kind::Free && !(c.potential.strength >= 0.0))
        bad.push_back("potential.strength must be non-negative (got " + fmt(c.potential.strength) + ")");
    if (c.grid_n <= 0)
        bad.push_back("grid.n must be positive (got " + std::to_string(c.grid_n) + ")");
    else if (c.grid_n < 16)
        bad.push_back("grid.n must be at least 16 (got " + std::to_string(c.grid_n) + ")");
    if (!(c.grid_scale > 0.0)) bad.push_back("grid.scale must be positive (got " + fmt(c.grid_scale) + ")");
    if (c.channels.empty()) bad.push_back("channels.j must not be empty");
    for (const auto& ch : c.channels)
        if (ch.two_j % 2 != 0) bad.push_back("channels.j must be integral");
    if (c.forms.empty()) bad.push_back("forms.run must not be empty");
    if (std::set<DynamicsForm>(c.forms.begin(), c.forms.end()).size() != c.forms.size())
        bad.push_back("forms.run has duplicates");
    if (c.k0.empty()) bad.push_back("scattering needs at least one momentum");
    for (double k : c.k0)
        if (!(k > 0.0)) bad.push_back("scattering momenta must be positive (got " + fmt(k) + ")");
    if (!(c.packet_width > 0.0)) bad.push_back("packet.width must be positive (got " + fmt(c.packet_width) + ")");
    if (!(c.plus_margin >= 0.0)) bad.push_back("packet.plus_margin must be non-negative");
    if (c.samples < 1) bad.push_back("verify.samples must be positive");
    if (c.intertwining_samples < 1) bad.push_back("verify.intertwining_samples must be positive");
    for (double t : {c.tol.spectrum, c.tol.phase, c.tol.unitarity, c.tol.oracle, c.tol.born, c.tol.born_window,
                     c.tol.kinematic, c.tol.sharpness, c.tol.intertwining, c.tol.wigner, c.tol.free_phase})
        if (!(t > 0.0)) {
            bad.push_back("tolerances must be positive");
            break;
        }
    if (!bad.empty()) {
        std::string msg = "schema violation:";
        for (const auto& b : bad) msg += " " + b + ";";
        msg.pop_back();
        throw ConfigError(msg);
    }
}

ModelConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

void ModelConfig::scale_tolerances(double factor)
{
    if (!(factor > 0.0)) throw ConfigError("tolerance scale must be positive");
    for (double* t : {&tol.spectrum, &tol.phase, &tol.unitarity, &tol.oracle, &tol.born, &tol.kinematic,
                      &tol.intertwining, &tol.wigner, &tol.free_phase})
        *t *= factor;
}

std::string ModelConfig::echo() const
{
    auto q = [](const std::string& s) { return "\"" + s + "\""; };
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    std::ostringstream o;
    o << "title = " << q(title) << "\n\n";
    o << "[particles]\nm1 = " << fmt(m1) << "\nm2 = " << fmt(m2) << "\n\n";
    o << "[potential]\nname = " << q(std::string(to_string(potential.kind))) << "\nstrength = " << fmt(potential.strength)
      << "\nrange = " << fmt(potential.range) << "\n\n";
    std::vector<double> js;
    for (const auto& ch : channels) js.push_back(ch.two_j / 2);
    o << "[channels]\nj = " << fmt_array(js) << "\nscheme = " << q(std::string(to_string(channels.front().scheme)))
      << "\n\n";
    o << "[grid]\nn = " << grid_n << "\nscale = " << fmt(grid_scale) << "\n\n";
    o << "[forms]\nrun = [";
    for (std::size_t i = 0; i < forms.size(); ++i) o << (i ? ", " : "") << q(std::string(to_string(forms[i])));
    o << "]\n\n";
    o << "[scattering]\nk0 = " << fmt_array(k0) << "\n\n";
    o << "[packet]\nmomentum = " << fmt_array({packet_momentum[0], packet_momentum[1], packet_momentum[2]})
      << "\nwidth = " << fmt(packet_width) << "\nplus_margin = " << fmt(plus_margin) << "\n\n";
    o << "[verify]\nspectrum = " << b(verify.spectrum) << "\nsmatrix = " << b(verify.smatrix)
      << "\noracle = " << b(verify.oracle) << "\nkinematic = " << b(verify.kinematic)
      << "\nintertwining = " << b(verify.intertwining) << "\nwigner = " << b(verify.wigner)
      << "\nsamples = " << samples << "\nintertwining_samples = " << intertwining_samples << "\nseed = " << seed << "\n\n";
    o << "[tolerances]\nspectrum = " << fmt(tol.spectrum) << "\nphase = " << fmt(tol.phase)
      << "\nunitarity = " << fmt(tol.unitarity) << "\noracle = " << fmt(tol.oracle) << "\nborn = " << fmt(tol.born)
      << "\nborn_window = " << fmt(tol.born_window) << "\nkinematic = " << fmt(tol.kinematic)
      << "\nsharpness = " << fmt(tol.sharpness) << "\nintertwining = " << fmt(tol.intertwining)
      << "\nwigner = " << fmt(tol.wigner) << "\nfree_phase = " << fmt(tol.free_phase) << "\n";
    return o.str();
}

}  // namespace btforms
