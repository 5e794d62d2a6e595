#include <cmath>
#include <cstdio>
#include <sstream>

#include "expspline/harness.hpp"

namespace expspline {

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

nlohmann::ordered_json number_json(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::ordered_json rows_json(const VerifyReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const VerifyRow& r : report.rows) {
        nlohmann::ordered_json row;
        row["n"] = r.n;
        row["delta"] = r.delta;
        row["empirical_error"] = r.empirical_error;
        row["bound"] = r.bound;
        row["ratio"] = opt_json(r.ratio);
        row["norm_bound"] = opt_json(r.norm_bound);
        row["M0_max"] = r.M0_max;
        row["M2_max"] = opt_json(r.M2_max);
        row["c_factor"] = opt_json(r.c_factor);
        row["max_LF"] = r.max_LF;
        row["kernel"] = r.kernel;
        row["d2_error"] = opt_json(r.d2_error);
        row["d2_bound"] = opt_json(r.d2_bound);
        row["condition"] = opt_json(r.condition);
        row["pass"] = r.pass;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string emit_csv(const VerifyReport& report) {
    std::ostringstream out;
    out << "n,delta,empirical_error,bound,ratio,norm_bound,M0_max,M2_max,c_factor\n";
    for (const VerifyRow& r : report.rows) {
        out << r.n << ',' << format_real(r.delta) << ',' << format_real(r.empirical_error) << ',' << format_real(r.bound)
            << ',' << opt(r.ratio) << ',' << opt(r.norm_bound) << ',' << format_real(r.M0_max) << ',' << opt(r.M2_max)
            << ',' << opt(r.c_factor) << '\n';
    }
    return out.str();
}

std::string emit_json(const VerifyReport& report) {
    nlohmann::ordered_json doc;
    doc["config"] = report.config;
    doc["order"] = report.order;
    doc["function"] = report.function;
    doc["rows"] = rows_json(report);
    doc["pass"] = report.pass();
    return doc.dump(2) + "\n";
}

std::string emit_json(const ConvergenceResult& result) {
    nlohmann::ordered_json doc;
    doc["config"] = result.report.config;
    doc["order"] = result.report.order;
    doc["function"] = result.report.function;
    doc["rows"] = rows_json(result.report);
    doc["kernel"] = result.kernel;
    doc["slope"] = number_json(result.slope);
    doc["expected"] = result.expected;
    doc["pass"] = result.pass();
    return doc.dump(2) + "\n";
}

}  // namespace expspline
