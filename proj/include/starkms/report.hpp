#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

namespace starkms
{

using ojson = nlohmann::ordered_json;

inline constexpr const char *report_schema_version = "1.0";

struct CheckRecord
{
    std::string id;
    std::string anchor;    // statement being checked
    std::string kind;      // exact_zero | nonzero | tolerance | dimension | sign | error
    ojson parameters = ojson::object();
    ojson residual;        // per λ-order array, or a scalar
    ojson tolerance;       // "0" for exact checks, a number otherwise
    bool passed = false;
    std::string note;
    ojson data = ojson::object(); // extra payload (spectra, dimensions, ...)
    double runtime_ms = 0.0;
};

struct Report
{
    std::string scenario;
    std::string description;
    ojson config = ojson::object();
    std::vector<CheckRecord> checks;
    std::string timestamp;

    [[nodiscard]] bool all_passed() const;
};

ojson to_json(const Report &r);
Report report_from_json(const ojson &j);

void emit_json(std::ostream &os, const Report &r);
// One line per check: id, kind, passed, tolerance, then residual columns r0..rK.
void emit_csv(std::ostream &os, const Report &r);
void emit_table(std::ostream &os, const Report &r);
// Singular values (descending) of every check that carries a spectrum.
void emit_spectra_csv(std::ostream &os, const Report &r);
// Null-vector density coefficients as (check, vector, k1, k2, re, im).
void emit_null_vectors_csv(std::ostream &os, const Report &r);

} // namespace starkms
