#include "starkms/scenario.hpp"

#include "starkms/expr.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace starkms
{

namespace
{

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string &text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

class FieldReader
{
public:
    FieldReader(const std::string &text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string &field, const std::string &msg) const
    {
        // Point at the first occurrence of the key; good enough for hand-written configs.
        const std::string key = field.substr(field.rfind('.') == std::string::npos ? 0 : field.rfind('.') + 1);
        const std::string bare = key.substr(0, key.find('['));
        const auto pos = text_.find("\"" + bare + "\"");
        std::string where = source_;
        if (pos != std::string::npos) {
            where += ":" + std::to_string(line_column(text_, pos).first);
        }
        throw config_error(where + ": field '" + field + "': " + msg);
    }

    Rational rational(const json &v, const std::string &field) const
    {
        try {
            if (v.is_string()) {
                return parse_rational(v.get<std::string>());
            }
            if (v.is_number_integer()) {
                return Rational(v.get<long>());
            }
        } catch (const std::exception &e) {
            fail(field, e.what());
        }
        fail(field, "expected an exact rational (string like \"1/2\" or an integer)");
    }

    template <class T>
    T get(const json &obj, const std::string &key, const std::string &prefix, T fallback) const
    {
        if (!obj.contains(key)) {
            return fallback;
        }
        try {
            return obj.at(key).get<T>();
        } catch (const json::exception &) {
            fail(prefix + key, "wrong type");
        }
    }

private:
    const std::string &text_;
    std::string source_;
};

const std::set<std::string> top_level_keys = {"name",  "description", "phase_space", "dof",       "truncation",
                                              "hamiltonian", "one_form", "beta",     "t",         "probes",
                                              "nullspace",   "suites"};

} // namespace

const std::vector<std::string> &known_suites(PhaseSpace space)
{
    static const std::vector<std::string> euclidean = {"moyal",       "star_exp",      "inner",
                                                       "trace",       "kms_static",    "kms_dynamic",
                                                       "kms_classical", "tilde",       "positivity",
                                                       "evolution"};
    static const std::vector<std::string> torus = {"moyal", "kms_classical", "nullspace", "recover_H", "evolution"};
    return space == PhaseSpace::euclidean ? euclidean : torus;
}

Scenario parse_scenario(const std::string &text, const std::string &source)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw config_error(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error (" +
                           e.what() + ")");
    }
    FieldReader r(text, source);
    if (!j.is_object()) {
        throw config_error(source + ": top level must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (!top_level_keys.count(key)) {
            r.fail(key, "unknown field");
        }
    }
    Scenario s;
    s.name = r.get<std::string>(j, "name", "", "");
    if (s.name.empty()) {
        r.fail("name", "a scenario needs a non-empty name");
    }
    s.description = r.get<std::string>(j, "description", "", "");
    const std::string space = r.get<std::string>(j, "phase_space", "", "R2n");
    if (space == "R2n") {
        s.space = PhaseSpace::euclidean;
    } else if (space == "T2") {
        s.space = PhaseSpace::torus;
    } else {
        r.fail("phase_space", "expected \"R2n\" or \"T2\", got \"" + space + "\"");
    }
    const long dof = r.get<long>(j, "dof", "", 1);
    if (dof < 1 || (s.space == PhaseSpace::torus && dof != 1)) {
        r.fail("dof", "must be >= 1 (and 1 on T2)");
    }
    s.dof = static_cast<std::size_t>(dof);
    const long K = r.get<long>(j, "truncation", "", 4);
    if (K < 0 || K > 12) {
        r.fail("truncation", "must be in [0, 12]");
    }
    s.truncation = static_cast<std::size_t>(K);
    s.hamiltonian = r.get<std::string>(j, "hamiltonian", "", "");
    s.one_form = r.get<std::vector<std::string>>(j, "one_form", "", {});
    if (!s.hamiltonian.empty() && !s.one_form.empty()) {
        r.fail("one_form", "give either a hamiltonian or a one_form, not both");
    }
    if (!s.one_form.empty() && s.one_form.size() != 2 * s.dof) {
        r.fail("one_form", "needs " + std::to_string(2 * s.dof) + " components");
    }
    // Expressions are checked here so that mistakes carry a line and field.
    auto check_expr = [&](const std::string &text, const std::string &field) {
        try {
            if (s.space == PhaseSpace::euclidean) {
                (void)parse_exppoly(text, s.dof);
            } else {
                (void)parse_trig(text);
            }
        } catch (const std::exception &e) {
            r.fail(field, e.what());
        }
    };
    if (!s.hamiltonian.empty()) {
        check_expr(s.hamiltonian, "hamiltonian");
    }
    for (std::size_t i = 0; i < s.one_form.size(); ++i) {
        check_expr(s.one_form[i], "one_form[" + std::to_string(i) + "]");
    }
    auto rationals = [&](const std::string &key) {
        std::vector<Rational> out;
        if (!j.contains(key)) {
            return out;
        }
        if (!j.at(key).is_array()) {
            r.fail(key, "expected an array");
        }
        for (std::size_t i = 0; i < j.at(key).size(); ++i) {
            out.push_back(r.rational(j.at(key)[i], key + "[" + std::to_string(i) + "]"));
        }
        return out;
    };
    s.betas = rationals("beta");
    s.times = rationals("t");
    if (j.contains("probes")) {
        const json &p = j.at("probes");
        if (!p.is_object()) {
            r.fail("probes", "expected an object");
        }
        s.probes.count = r.get<int>(p, "count", "probes.", s.probes.count);
        s.probes.degree = r.get<int>(p, "degree", "probes.", s.probes.degree);
        if (p.contains("weight")) {
            s.probes.weight = r.rational(p.at("weight"), "probes.weight");
            if (sgn(s.probes.weight) >= 0) {
                r.fail("probes.weight", "Gaussian weight must be negative");
            }
        }
        s.probes.range = r.get<long>(p, "range", "probes.", s.probes.range);
        s.probes.seed = r.get<std::uint64_t>(p, "seed", "probes.", s.probes.seed);
        s.probes.poly_count = r.get<int>(p, "poly_count", "probes.", s.probes.poly_count);
        s.probes.poly_degree = r.get<int>(p, "poly_degree", "probes.", s.probes.poly_degree);
        if (s.probes.count < 0 || s.probes.degree < 0 || s.probes.range < 1 || s.probes.poly_count < 0 ||
            s.probes.poly_degree < 0) {
            r.fail("probes", "counts and degrees must be non-negative, range positive");
        }
    }
    if (j.contains("nullspace")) {
        const json &n = j.at("nullspace");
        if (!n.is_object()) {
            r.fail("nullspace", "expected an object");
        }
        s.nullspace.n_test = r.get<int>(n, "n_test", "nullspace.", s.nullspace.n_test);
        s.nullspace.n_mu = r.get<int>(n, "n_mu", "nullspace.", s.nullspace.n_mu);
        s.nullspace.rel_tol = r.get<double>(n, "rel_tol", "nullspace.", s.nullspace.rel_tol);
        s.nullspace.gap_threshold = r.get<double>(n, "gap_threshold", "nullspace.", s.nullspace.gap_threshold);
        s.nullspace.angle_tol = r.get<double>(n, "angle_tol", "nullspace.", s.nullspace.angle_tol);
        if (s.nullspace.n_mu < 2 * s.nullspace.n_test) {
            r.fail("nullspace.n_mu", "must be at least 2 * n_test");
        }
    }
    s.suites = r.get<std::vector<std::string>>(j, "suites", "", {});
    const auto &known = known_suites(s.space);
    for (std::size_t i = 0; i < s.suites.size(); ++i) {
        if (std::find(known.begin(), known.end(), s.suites[i]) == known.end()) {
            r.fail("suites[" + std::to_string(i) + "]", "unknown suite '" + s.suites[i] + "' for this phase space");
        }
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw config_error(path.string() + ": cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.string());
}

std::filesystem::path scenario_dir()
{
    if (const char *env = std::getenv("STARKMS_SCENARIO_DIR"); env && *env) {
        return env;
    }
#ifdef STARKMS_DEFAULT_SCENARIO_DIR
    return STARKMS_DEFAULT_SCENARIO_DIR;
#else
    return "scenarios";
#endif
}

std::vector<std::filesystem::path> bundled_scenarios()
{
    std::vector<std::filesystem::path> out;
    std::error_code ec;
    for (const auto &entry : std::filesystem::directory_iterator(scenario_dir(), ec)) {
        if (entry.path().extension() == ".json") {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::filesystem::path resolve_scenario(const std::string &name_or_path)
{
    if (std::filesystem::exists(name_or_path)) {
        return name_or_path;
    }
    const auto bundled = scenario_dir() / (name_or_path + ".json");
    if (std::filesystem::exists(bundled)) {
        return bundled;
    }
    throw config_error(name_or_path + ": no such file or bundled scenario (see list-scenarios)");
}

} // namespace starkms
