#include "btforms/report.hpp"

#include "btforms/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace btforms {

using json = nlohmann::ordered_json;

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool VerificationRecord::operator==(const VerificationRecord& o) const
{
    const bool same_residual = (std::isnan(residual) && std::isnan(o.residual)) || residual == o.residual;
    return name == o.name && forms == o.forms && j == o.j && same_residual && tolerance == o.tolerance &&
           comparison == o.comparison && passed == o.passed && note == o.note;
}

bool RunReport::all_passed() const
{
    for (const auto& v : verifications)
        if (!v.passed) return false;
    return true;
}

bool RunReport::has_rejection() const
{
    for (const auto& i : issues)
        if (i.kind == "solver_rejection") return true;
    return false;
}

int RunReport::exit_code() const { return all_passed() && !has_rejection() ? 0 : 1; }

namespace {

// JSON numbers are written with %.17g; non-finite values become null.
void dump(const json& j, std::string& out, int indent)
{
    const std::string pad(indent * 2, ' ');
    const std::string inner((indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + json(it.key()).dump() + ": ";
            dump(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        const bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
        if (scalars) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                dump(j[i], out, indent + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            dump(j[i], out, indent + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case json::value_t::number_float: {
        const double x = j.get<double>();
        out += std::isfinite(x) ? format_double(x) : "null";
        return;
    }
    default:
        out += j.dump();
    }
}

double number_or_nan(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

json doubles(const std::vector<double>& xs)
{
    json a = json::array();
    for (double x : xs) a.push_back(x);
    return a;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_file(const std::filesystem::path& p, const std::string& content)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

std::string report_to_json(const RunReport& r)
{
    json j;
    j["mode"] = r.mode;
    j["exit_code"] = r.exit_code();
    j["provenance"] = {{"config_hash", r.provenance.config_hash},
                       {"version", r.provenance.version},
                       {"eigen_version", r.provenance.eigen_version},
                       {"timestamp", r.provenance.timestamp}};
    j["config"] = r.config;
    j["spectra"] = json::array();
    for (const auto& s : r.spectra)
        j["spectra"].push_back({{"form", s.form},
                                {"j", s.j},
                                {"threshold", s.threshold},
                                {"lowest_eigenvalue", s.lowest_eigenvalue},
                                {"bound_masses", doubles(s.bound_masses)}});
    j["phase_shifts"] = json::array();
    for (const auto& p : r.phase_shifts)
        j["phase_shifts"].push_back({{"form", p.form},
                                     {"j", p.j},
                                     {"k0", p.k0},
                                     {"mass", p.mass},
                                     {"phases", doubles(p.phases)},
                                     {"unitarity", p.unitarity}});
    j["verifications"] = json::array();
    for (const auto& v : r.verifications)
        j["verifications"].push_back({{"name", v.name},
                                      {"forms", v.forms},
                                      {"j", v.j},
                                      {"residual", v.residual},
                                      {"tolerance", v.tolerance},
                                      {"comparison", v.comparison},
                                      {"passed", v.passed},
                                      {"note", v.note}});
    j["issues"] = json::array();
    for (const auto& i : r.issues)
        j["issues"].push_back({{"kind", i.kind}, {"form", i.form}, {"j", i.j}, {"message", i.message}});
    std::string out;
    dump(j, out, 0);
    return out + "\n";
}

RunReport report_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw InvalidArgument(std::string("malformed report JSON: ") + e.what());
    }
    RunReport r;
    try {
        r.mode = j.at("mode").get<std::string>();
        r.config = j.at("config").get<std::string>();
        const auto& pv = j.at("provenance");
        r.provenance = {pv.at("config_hash").get<std::string>(), pv.at("version").get<std::string>(),
                        pv.at("eigen_version").get<std::string>(), pv.at("timestamp").get<std::string>()};
        for (const auto& s : j.at("spectra"))
            r.spectra.push_back({s.at("form").get<std::string>(), s.at("j").get<int>(), number_or_nan(s.at("threshold")),
                                 number_or_nan(s.at("lowest_eigenvalue")), s.at("bound_masses").get<std::vector<double>>()});
        for (const auto& p : j.at("phase_shifts")) {
            std::vector<double> ph;
            for (const auto& x : p.at("phases")) ph.push_back(number_or_nan(x));
            r.phase_shifts.push_back({p.at("form").get<std::string>(), p.at("j").get<int>(), number_or_nan(p.at("k0")),
                                      number_or_nan(p.at("mass")), ph, number_or_nan(p.at("unitarity"))});
        }
        for (const auto& v : j.at("verifications"))
            r.verifications.push_back({v.at("name").get<std::string>(), v.at("forms").get<std::string>(),
                                       v.at("j").get<int>(), number_or_nan(v.at("residual")),
                                       number_or_nan(v.at("tolerance")), v.at("comparison").get<std::string>(),
                                       v.at("passed").get<bool>(), v.at("note").get<std::string>()});
        for (const auto& i : j.at("issues"))
            r.issues.push_back({i.at("kind").get<std::string>(), i.at("form").get<std::string>(), i.at("j").get<int>(),
                                i.at("message").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("report JSON does not match the schema: ") + e.what());
    }
    return r;
}

RunReport load_report(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument(path + ": cannot open report");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return report_from_json(ss.str());
    } catch (const std::exception& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

std::string spectrum_csv(const RunReport& r)
{
    std::string out = "form,j,index,mass,binding_energy,threshold\n";
    for (const auto& s : r.spectra)
        for (std::size_t n = 0; n < s.bound_masses.size(); ++n)
            out += s.form + "," + std::to_string(s.j) + "," + std::to_string(n) + "," + format_double(s.bound_masses[n]) +
                   "," + format_double(s.threshold - s.bound_masses[n]) + "," + format_double(s.threshold) + "\n";
    return out;
}

std::string phaseshifts_csv(const RunReport& r)
{
    std::string out = "form,j,k0,mass,eigenphase_index,phase_rad,unitarity\n";
    for (const auto& p : r.phase_shifts)
        for (std::size_t a = 0; a < p.phases.size(); ++a)
            out += p.form + "," + std::to_string(p.j) + "," + format_double(p.k0) + "," + format_double(p.mass) + "," +
                   std::to_string(a) + "," + format_double(p.phases[a]) + "," + format_double(p.unitarity) + "\n";
    return out;
}

std::string verifications_csv(const RunReport& r)
{
    std::string out = "name,forms,j,residual,comparison,tolerance,passed,note\n";
    for (const auto& v : r.verifications)
        out += v.name + "," + csv_field(v.forms) + "," + std::to_string(v.j) + "," + format_double(v.residual) + "," +
               v.comparison + "," + format_double(v.tolerance) + "," + (v.passed ? "true" : "false") + "," +
               csv_field(v.note) + "\n";
    return out;
}

void export_report(const RunReport& r, const std::string& dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
    const fs::path base(dir);
    write_file(base / "spectrum.csv", spectrum_csv(r));
    write_file(base / "phaseshifts.csv", phaseshifts_csv(r));
    write_file(base / "verifications.csv", verifications_csv(r));
    write_file(base / "report.json", report_to_json(r));
}

}  // namespace btforms
