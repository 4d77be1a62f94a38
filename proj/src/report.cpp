#include "starkms/report.hpp"

#include <algorithm>
#include <cstdio>
#include <gmpxx.h>
#include <ostream>
#include <sstream>

namespace starkms
{

namespace
{

std::string cell(const ojson &v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array() && v.size() == 2 && v[0].is_string() && v[1].is_string()) {
        // exact complex [re, im]
        const std::string re = v[0].get<std::string>(), im = v[1].get<std::string>();
        if (im == "0/1") {
            return re;
        }
        return "[" + re + ", " + im + "]";
    }
    return v.dump();
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

// Rational "num/den" as written, or in scientific notation when it would not fit.
std::string short_rational(const std::string &s, std::size_t room)
{
    if (s.size() >= 2 && s.ends_with("/1")) {
        return s.substr(0, s.size() - 2);
    }
    if (s.size() <= room) {
        return s;
    }
    try {
        return sci(mpq_class(s).get_d());
    } catch (const std::exception &) {
        return s.substr(0, room - 3) + "...";
    }
}

// Compact rendering for the human table; the JSON keeps the verbatim value.
std::string table_cell(const ojson &v, std::size_t room)
{
    if (v.is_number_float()) {
        return v.get<double>() == 0.0 ? "0" : sci(v.get<double>());
    }
    if (v.is_string()) {
        return short_rational(v.get<std::string>(), room);
    }
    if (v.is_object() && v.contains("value")) {
        const std::string x = table_cell(v.at("value"), room);
        const int k = v.value("pi_power", 0);
        return x == "0" || k == 0 ? x : x + (k == 1 ? "π" : "π^" + std::to_string(k));
    }
    if (v.is_array() && v.size() == 2) {
        if (v[0].is_string() && v[1].is_string()) {
            const std::string re = short_rational(v[0].get<std::string>(), room / 2);
            const std::string im = short_rational(v[1].get<std::string>(), room / 2);
            if (im == "0") {
                return re;
            }
            if (re == "0") {
                return im + "i";
            }
            return re + (im.starts_with('-') ? im : "+" + im) + "i";
        }
        if (v[0].is_number() && v[1].is_number()) {
            return sci(v[0].get<double>()) + (v[1].get<double>() < 0 ? "" : "+") + sci(v[1].get<double>()) + "i";
        }
    }
    return v.dump();
}

std::string csv_escape(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> residual_cells(const ojson &residual)
{
    std::vector<std::string> out;
    if (residual.is_object() && residual.contains("orders")) {
        for (const auto &v : residual.at("orders")) {
            out.push_back(cell(v));
        }
    } else if (!residual.is_null()) {
        out.push_back(cell(residual));
    }
    return out;
}

// Left-justify to a width counted in code points.
std::string pad(const std::string &s, std::size_t width)
{
    const auto len = static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char ch) { return (static_cast<unsigned char>(ch) & 0xC0) != 0x80; }));
    return len >= width ? s + " " : s + std::string(width - len, ' ');
}

} // namespace

bool Report::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord &c) { return c.passed; });
}

ojson to_json(const Report &r)
{
    ojson j;
    j["schema_version"] = report_schema_version;
    j["scenario"] = r.scenario;
    j["description"] = r.description;
    j["config"] = r.config;
    ojson checks = ojson::array();
    std::size_t passed = 0;
    for (const auto &c : r.checks) {
        ojson cj;
        cj["id"] = c.id;
        cj["anchor"] = c.anchor;
        cj["kind"] = c.kind;
        cj["parameters"] = c.parameters;
        cj["residual"] = c.residual;
        cj["tolerance"] = c.tolerance;
        cj["passed"] = c.passed;
        cj["note"] = c.note;
        cj["data"] = c.data;
        checks.push_back(std::move(cj));
        passed += c.passed ? 1 : 0;
    }
    j["checks"] = std::move(checks);
    j["summary"] = {{"total", r.checks.size()}, {"passed", passed}, {"failed", r.checks.size() - passed}};
    ojson runtimes = ojson::object();
    for (const auto &c : r.checks) {
        runtimes[c.id] = c.runtime_ms;
    }
    j["run_info"] = {{"timestamp", r.timestamp}, {"runtime_ms", std::move(runtimes)}};
    return j;
}

Report report_from_json(const ojson &j)
{
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    r.description = j.value("description", "");
    r.config = j.value("config", ojson::object());
    const ojson runtimes = j.contains("run_info") ? j.at("run_info").value("runtime_ms", ojson::object()) : ojson::object();
    for (const auto &cj : j.at("checks")) {
        CheckRecord c;
        c.id = cj.at("id").get<std::string>();
        c.anchor = cj.value("anchor", "");
        c.kind = cj.at("kind").get<std::string>();
        c.parameters = cj.value("parameters", ojson::object());
        c.residual = cj.value("residual", ojson());
        c.tolerance = cj.value("tolerance", ojson());
        c.passed = cj.at("passed").get<bool>();
        c.note = cj.value("note", "");
        c.data = cj.value("data", ojson::object());
        c.runtime_ms = runtimes.value(c.id, 0.0);
        r.checks.push_back(std::move(c));
    }
    if (j.contains("run_info")) {
        r.timestamp = j.at("run_info").value("timestamp", "");
    }
    return r;
}

void emit_json(std::ostream &os, const Report &r) { os << to_json(r).dump(2) << '\n'; }

void emit_csv(std::ostream &os, const Report &r)
{
    std::size_t width = 0;
    for (const auto &c : r.checks) {
        width = std::max(width, residual_cells(c.residual).size());
    }
    os << "id,kind,passed,tolerance";
    for (std::size_t k = 0; k < width; ++k) {
        os << ",r" << k;
    }
    os << '\n';
    for (const auto &c : r.checks) {
        os << csv_escape(c.id) << ',' << c.kind << ',' << (c.passed ? "true" : "false") << ','
           << csv_escape(cell(c.tolerance));
        const auto cells = residual_cells(c.residual);
        for (std::size_t k = 0; k < width; ++k) {
            os << ',' << (k < cells.size() ? csv_escape(cells[k]) : "");
        }
        os << '\n';
    }
}

void emit_table(std::ostream &os, const Report &r)
{
    std::size_t width = 0, id_width = 5;
    for (const auto &c : r.checks) {
        width = std::max(width, residual_cells(c.residual).size());
        id_width = std::max(id_width, c.id.size());
    }
    const std::size_t col = 14;
    os << "scenario: " << r.scenario << '\n';
    os << pad("check", id_width + 2) << pad("pass", 6);
    for (std::size_t k = 0; k < width; ++k) {
        os << pad("λ^" + std::to_string(k), col);
    }
    os << '\n';
    std::size_t passed = 0;
    for (const auto &c : r.checks) {
        passed += c.passed ? 1 : 0;
        os << pad(c.id, id_width + 2) << pad(c.passed ? "ok" : "FAIL", 6);
        std::vector<std::string> cells;
        if (c.residual.is_object() && c.residual.contains("orders")) {
            const int pi_power = c.residual.value("pi_power", 0);
            const std::string pi = pi_power == 0 ? "" : pi_power == 1 ? "π" : "π^" + std::to_string(pi_power);
            for (const auto &v : c.residual.at("orders")) {
                std::string s = table_cell(v, col - 1);
                cells.push_back(s == "0" ? s : s + pi);
            }
        } else if (!c.residual.is_null()) {
            cells.push_back(table_cell(c.residual, col - 1));
        }
        for (std::size_t k = 0; k < width; ++k) {
            const std::string s = k < cells.size() ? cells[k] : "";
            os << pad(s, std::max(col, s.size() + 2));
        }
        if (!c.note.empty()) {
            os << "  " << c.note;
        }
        os << '\n';
    }
    os << passed << "/" << r.checks.size() << " checks passed\n";
}

void emit_spectra_csv(std::ostream &os, const Report &r)
{
    os << "check,index,singular_value\n";
    for (const auto &c : r.checks) {
        if (!c.data.contains("spectrum")) {
            continue;
        }
        std::size_t i = 0;
        for (const auto &s : c.data.at("spectrum")) {
            os << csv_escape(c.id) << ',' << i++ << ',' << s.dump() << '\n';
        }
    }
}

void emit_null_vectors_csv(std::ostream &os, const Report &r)
{
    os << "check,vector,k1,k2,re,im\n";
    for (const auto &c : r.checks) {
        if (!c.data.contains("null_vectors")) {
            continue;
        }
        std::size_t v = 0;
        for (const auto &vec : c.data.at("null_vectors")) {
            for (const auto &e : vec) {
                os << csv_escape(c.id) << ',' << v << ',' << e[0].dump() << ',' << e[1].dump() << ',' << e[2].dump()
                   << ',' << e[3].dump() << '\n';
            }
            ++v;
        }
    }
}

} // namespace starkms
