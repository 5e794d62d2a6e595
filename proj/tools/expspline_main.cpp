// expspline: command-line front end for interpolation, bounds and verification.
//
// Exit codes: 0 pass, 1 usage or config error, 2 bound violation, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "expspline/acceptance.hpp"
#include "expspline/errbound2.hpp"
#include "expspline/errors.hpp"
#include "expspline/harness.hpp"
#include "expspline/l2proj.hpp"
#include "expspline/simd.hpp"
#include "expspline/spline4.hpp"

namespace {

using namespace expspline;

constexpr int kExitPass = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolation = 2;
constexpr int kExitNumerical = 3;

void write_output(const std::string& text, const std::string& dir, const std::string& file) {
    if (dir.empty()) {
        std::cout << text;
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto path = std::filesystem::path(dir) / file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

void write_file_or_stdout(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

void flag_violations(const VerifyReport& report) {
    for (const VerifyRow& r : report.rows) {
        if (!r.pass) {
            std::cerr << "VIOLATION n=" << r.n << " empirical_error=" << format_real(r.empirical_error)
                      << " bound=" << format_real(r.bound) << "\n";
        }
    }
}

const Partition& single_grid(const Config& c) {
    if (c.grids.size() != 1) throw ConfigError("config key 'n': this command needs a single grid");
    return c.grids[0];
}

std::vector<double> knot_values(const Config& c, const Partition& grid) {
    if (c.samples) return *c.samples;
    if (!c.function) throw ConfigError("config key 'function': interpolation needs a function or samples");
    std::vector<double> v;
    for (double t : grid.knots()) v.push_back((*c.function)(t));
    return v;
}

std::vector<double> eval_points(const Partition& grid, int m) {
    if (m < 2) throw ConfigError("--eval-grid needs at least 2 points");
    std::vector<double> t(m);
    for (int i = 0; i < m; ++i) t[i] = i + 1 == m ? grid.back() : grid.front() + (grid.back() - grid.front()) * i / (m - 1);
    return t;
}

int cmd_verify(const std::string& config_path, const std::string& format, const std::string& dir) {
    const Config c = load_config(config_path);
    const VerifyReport report = run_verify(c);
    if (format == "json") {
        write_output(emit_json(report), dir, "verify.json");
    } else {
        write_output(emit_csv(report), dir, "verify.csv");
    }
    flag_violations(report);
    return report.pass() ? kExitPass : kExitViolation;
}

int cmd_converge(const std::string& config_path, const std::string& format, const std::string& dir) {
    const Config c = load_config(config_path);
    const ConvergenceResult r = convergence_study(c);
    if (format == "json") {
        write_output(emit_json(r), dir, "converge.json");
    } else {
        write_output(emit_csv(r.report), dir, "converge.csv");
        if (r.kernel) {
            std::cerr << "kernel: errors at roundoff level, slope not estimated\n";
        } else {
            std::cerr << "slope " << format_real(r.slope) << " expected [" << r.expected[0] << ", " << r.expected[1] << "]\n";
        }
    }
    flag_violations(r.report);
    return r.pass() && r.report.pass() ? kExitPass : kExitViolation;
}

int cmd_interp2(const std::string& config_path, int m, const std::string& out_path) {
    const Config c = load_config(config_path);
    const Partition& grid = single_grid(c);
    const HatBasis basis(grid, pairs_for(c, grid));
    const SplineOrder2 s = interpolate2(basis, knot_values(c, grid));
    std::ostringstream csv;
    csv << "t,s\n";
    for (double t : eval_points(grid, m)) csv << format_real(t) << ',' << format_real(s(t)) << '\n';
    write_file_or_stdout(csv.str(), out_path);
    return kExitPass;
}

int cmd_interp4(const std::string& config_path, int m, const std::string& out_path, const std::string& dump_path) {
    const Config c = load_config(config_path);
    const Partition& grid = single_grid(c);
    const QuadFrequencySet quads = quads_for(c, grid, false);
    std::array<double, 2> ends{};
    if (c.clamp) {
        ends = *c.clamp;
    } else if (c.function) {
        ends = {c.function->derivative(c.a, 1), c.function->derivative(c.b, 1)};
    } else {
        throw ConfigError("config key 'clamp': needed for sampled data");
    }
    const SplineOrder4 s = build_interpolant4(grid, quads, knot_values(c, grid), ends[0], ends[1]);
    if (s.solve_info().ill_conditioned) {
        std::cerr << "warning: interpolation system condition estimate " << format_real(s.solve_info().condition) << "\n";
    }
    const std::vector<double> t = eval_points(grid, m);
    std::vector<double> v0(t.size()), v1(t.size()), v2(t.size());
    s.evaluate(t, 0, v0);
    s.evaluate(t, 1, v1);
    s.evaluate(t, 2, v2);
    std::ostringstream csv;
    csv << "t,s,ds,d2s\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        csv << format_real(t[i]) << ',' << format_real(v0[i]) << ',' << format_real(v1[i]) << ',' << format_real(v2[i]) << '\n';
    }
    write_file_or_stdout(csv.str(), out_path);
    if (!dump_path.empty()) write_file_or_stdout(spline4_to_json(s) + "\n", dump_path);
    return kExitPass;
}

const char* kind_name(NormBoundKind k) {
    switch (k) {
        case NormBoundKind::Polynomial: return "polynomial";
        case NormBoundKind::Symmetric: return "symmetric";
        case NormBoundKind::MixedSign: return "mixed_sign";
        case NormBoundKind::Generic: return "generic";
    }
    return "generic";
}

int cmd_bounds(const std::string& config_path) {
    const Config c = load_config(config_path);
    nlohmann::ordered_json doc;
    doc["order"] = c.order;
    nlohmann::ordered_json grids = nlohmann::ordered_json::array();
    for (const Partition& grid : c.grids) {
        nlohmann::ordered_json g;
        g["n"] = grid.size();
        g["delta"] = grid.mesh();
        if (c.order == 4) {
            const QuadFrequencySet quads = quads_for(c, grid, true);
            const double p = weight_exponent(c, &quads);
            double max_lf = 1.0;
            if (c.function) {
                max_lf = 0.0;
                for (int j = 0; j < grid.intervals(); ++j) {
                    const Quad& q = quads[j];
                    max_lf = std::max(max_lf, sup_operator(*c.function, FrequencyVector{q[0], q[1], q[2], q[3]},
                                                           grid.knot(j), grid.knot(j + 1)).value);
                }
            }
            const BoundCertificate cert = error_bound4(grid, quads, p, max_lf);
            g["p"] = p;
            g["kind"] = kind_name(cert.kind);
            g["C"] = cert.C;
            g["norm_bound"] = cert.norm_bound;
            g["M0_max"] = cert.M0_max;
            g["M2_max"] = cert.M2_max;
            g["c_factor"] = cert.c_factor;
            g["max_LF"] = c.function ? nlohmann::ordered_json(max_lf) : nlohmann::ordered_json(nullptr);
            g["bound"] = cert.bound;
            g["second_order_bound"] = second_order_error_bound(grid, quads, p, max_lf);
        } else {
            const HatBasis basis(grid, pairs_for(c, grid));
            nlohmann::ordered_json intervals = nlohmann::ordered_json::array();
            std::vector<double> max_lf(grid.intervals(), 1.0);
            double m_max = 0.0;
            for (int j = 0; j < grid.intervals(); ++j) {
                const FrequencyPair& pr = basis.pair(j);
                const IntervalBoundData m = M_constant(pr.l0, pr.l1, grid.knot(j), grid.knot(j + 1));
                m_max = std::max(m_max, m.M);
                if (c.function) {
                    max_lf[j] = sup_operator(*c.function, FrequencyVector{pr.l0, pr.l1}, grid.knot(j), grid.knot(j + 1)).value;
                }
                intervals.push_back({{"l0", pr.l0}, {"l1", pr.l1}, {"M", m.M}, {"t_max", m.t_max}});
            }
            g["M_max"] = m_max;
            g["intervals"] = intervals;
            g["bound"] = interp2_error_bound(basis, max_lf);
            g["max_LF"] = c.function ? nlohmann::ordered_json(*std::max_element(max_lf.begin(), max_lf.end()))
                                     : nlohmann::ordered_json(nullptr);
        }
        grids.push_back(g);
    }
    doc["grids"] = grids;
    std::cout << doc.dump(2) << "\n";
    return kExitPass;
}

int cmd_gram(const std::string& config_path) {
    const Config c = load_config(config_path);
    nlohmann::ordered_json doc;
    nlohmann::ordered_json grids = nlohmann::ordered_json::array();
    for (const Partition& grid : c.grids) {
        double p = c.p.value_or(0.0);
        std::vector<FrequencyPair> pairs;
        if (c.order == 4) {
            const QuadFrequencySet quads = quads_for(c, grid, true);
            p = weight_exponent(c, &quads);
            pairs = quads.hat_pairs();
        } else {
            pairs = pairs_for(c, grid);
        }
        const HatBasis basis(grid, pairs);
        const GramSystem gram = gram_assemble(basis, p);
        nlohmann::ordered_json g;
        g["n"] = grid.size();
        g["p"] = p;
        g["diag"] = gram.diag;
        g["super"] = std::vector<double>(gram.super.begin(), gram.super.end() - 1);
        g["dominance_factor"] = dominance_factor(gram);
        try {
            const NormBound nb = operator_norm_bound_detail(basis, p);
            g["norm_bound"] = nb.value;
            g["norm_kind"] = kind_name(nb.kind);
        } catch (const DominanceError& e) {
            g["norm_bound"] = nullptr;
            g["norm_error"] = e.what();
        }
        if (c.function) {
            const TestFunction f = *c.function;
            const ProjectionResult proj = project(basis, [&](double t) { return f(t); }, p);
            g["projection"] = proj.coeffs;
        }
        grids.push_back(g);
    }
    doc["grids"] = grids;
    std::cout << doc.dump(2) << "\n";
    return kExitPass;
}

int cmd_accept(int only) {
    bool all = true;
    for (int id = 1; id <= kCriteriaCount; ++id) {
        if (only != 0 && id != only) continue;
        const CriterionResult r = run_criterion(id);
        std::cout << format_criterion(r) << std::endl;
        all = all && r.pass;
    }
    return all ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential spline interpolation with certified error bounds"};
    app.require_subcommand(1);
    std::string simd_mode = "auto";
    app.add_option("--simd", simd_mode, "Kernel selection: auto, scalar, avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    std::string config;
    std::string format = "csv";
    std::string out_dir;
    std::string out_file;
    std::string dump;
    int eval_grid = 101;
    int only = 0;

    auto* verify = app.add_subcommand("verify", "Compare measured errors with the certified bounds");
    verify->add_option("-c,--config", config, "Config JSON")->required();
    verify->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("-o,--out", out_dir, "Output directory (default: stdout)");

    auto* converge = app.add_subcommand("converge", "Estimate the convergence rate over grid levels");
    converge->add_option("-c,--config", config, "Config JSON")->required();
    converge->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    converge->add_option("-o,--out", out_dir, "Output directory (default: stdout)");

    auto* interp2 = app.add_subcommand("interp2", "Order-2 interpolant on an evaluation grid");
    interp2->add_option("-c,--config", config, "Config JSON")->required();
    interp2->add_option("--eval-grid", eval_grid, "Number of evaluation points");
    interp2->add_option("-o,--out", out_file, "CSV file (default: stdout)");

    auto* interp4 = app.add_subcommand("interp4", "Order-4 clamped interpolant on an evaluation grid");
    interp4->add_option("-c,--config", config, "Config JSON")->required();
    interp4->add_option("--eval-grid", eval_grid, "Number of evaluation points");
    interp4->add_option("-o,--out", out_file, "CSV file (default: stdout)");
    interp4->add_option("--dump", dump, "Write the spline coefficients as JSON");

    auto* bounds = app.add_subcommand("bounds", "Error certificates for the configured grids");
    bounds->add_option("-c,--config", config, "Config JSON")->required();

    auto* gram = app.add_subcommand("gram", "Gram system, dominance factor and projection norm bound");
    gram->add_option("-c,--config", config, "Config JSON")->required();

    auto* accept = app.add_subcommand("accept", "Run the acceptance criteria");
    accept->add_option("--criterion", only, "Run only this criterion (1-12)")->check(CLI::Range(0, kCriteriaCount));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (simd_mode == "scalar") simd::set_isa(simd::Isa::Scalar);
        if (simd_mode == "avx2") simd::set_isa(simd::Isa::Avx2);
        if (*verify) return cmd_verify(config, format, out_dir);
        if (*converge) return cmd_converge(config, format, out_dir);
        if (*interp2) return cmd_interp2(config, eval_grid, out_file);
        if (*interp4) return cmd_interp4(config, eval_grid, out_file, dump);
        if (*bounds) return cmd_bounds(config);
        if (*gram) return cmd_gram(config);
        if (*accept) return cmd_accept(only);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DominanceError& e) {
        std::cerr << "numerical failure: " << e.what() << " (interval " << e.interval() << ", T = " << e.t_value() << ")\n";
        return kExitNumerical;
    } catch (const SingularSystemError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
