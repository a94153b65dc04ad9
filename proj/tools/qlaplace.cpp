// qlaplace: grid sweeps, inversion round trips and the self-test report for
// the q-Laplace transform library.
//
// Exit codes: 0 success, 1 self-test failure, 2 configuration error,
// 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qlaplace/config_json.hpp"
#include "qlaplace/selftest.hpp"
#include "qlaplace/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

qlaplace::cli::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qlaplace::cli::ConfigError("cannot open config file: " + path);
    try {
        return qlaplace::cli::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw qlaplace::cli::ConfigError(std::string("config parse: ") + e.what());
    }
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  const std::string& format, bool allow_nonconverged) {
    qlaplace::cli::SweepRequest req = [&] {
        return qlaplace::cli::parse_sweep_request(load_json(config_path));
    }();

    std::vector<qlaplace::cli::SweepRow> rows;
    try {
        rows = qlaplace::cli::run_sweep(req);
    } catch (const qlaplace::NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return kExitConfig;
    }
    if (format == "csv")
        qlaplace::cli::write_csv(out, rows);
    else
        out << qlaplace::cli::rows_to_json(rows).dump(2) << "\n";
    out.close();

    bool all_converged = true;
    for (const auto& r : rows) all_converged = all_converged && r.converged;
    if (!all_converged && !allow_nonconverged) {
        std::cerr << "non-converged rows present (rerun with --allow-nonconverged "
                     "to accept them)\n";
        return kExitNumerical;
    }
    std::cout << rows.size() << " rows written to " << out_path << "\n";
    return 0;
}

int run_invert_cmd(const std::string& config_path, const std::string& out_path) {
    qlaplace::cli::InvertRequest req = [&] {
        return qlaplace::cli::parse_invert_request(load_json(config_path));
    }();

    qlaplace::RoundtripReport report;
    try {
        report = qlaplace::roundtrip_check(req.function, req.t_grid, req.epsilon,
                                           req.inversion);
    } catch (const qlaplace::NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return kExitConfig;
    }
    out << "t,recovered,expected,abs_error\n";
    for (const auto& s : report.samples) {
        out << qlaplace::cli::format_number(s.t) << ','
            << qlaplace::cli::format_number(s.recovered) << ','
            << qlaplace::cli::format_number(s.expected) << ','
            << qlaplace::cli::format_number(s.abs_error) << '\n';
    }
    out << "# sup_error = " << qlaplace::cli::format_number(report.sup_error) << '\n';
    out.close();
    std::cout << "sup_error = " << qlaplace::cli::format_number(report.sup_error)
              << " over " << report.samples.size() << " grid points\n";
    return 0;
}

int run_selftest_cmd(bool as_json) {
    double tol_scale = 1.0;
    if (const char* env = std::getenv("QLAPLACE_SELFTEST_TOLERANCE_SCALE"))
        tol_scale = std::atof(env);
    if (!(tol_scale > 0.0)) tol_scale = 1.0;

    auto results = qlaplace::selftest::run_all(tol_scale);
    bool all_pass = true;
    if (as_json) {
        qlaplace::cli::json arr = qlaplace::cli::json::array();
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            qlaplace::cli::json o;
            o["id"] = r.id;
            o["name"] = r.name;
            o["pass"] = r.pass;
            o["measured"] = r.measured;
            o["tolerance"] = r.tolerance;
            o["seconds"] = r.seconds;
            o["detail"] = r.detail;
            arr.push_back(std::move(o));
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            std::printf("[%2d] %s  %-36s measured %.3e  tol %.3e  (%.2f s)\n", r.id,
                        r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                        r.tolerance, r.seconds);
            if (!r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
        }
        std::printf("%s\n", all_pass ? "self-test: all checks passed"
                                     : "self-test: FAILURES present");
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-Laplace transform toolkit"};
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "evaluate a transform on a (p, q) grid");
    std::string sweep_config, sweep_out, sweep_format = "csv";
    bool allow_nonconverged = false;
    sweep->add_option("--config", sweep_config, "JSON sweep request")->required();
    sweep->add_option("--out", sweep_out, "output file")->required();
    sweep->add_option("--format", sweep_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--allow-nonconverged", allow_nonconverged,
                    "exit 0 even when some rows did not converge");

    auto* selftest = app.add_subcommand("selftest", "run the acceptance checks");
    bool selftest_json = false;
    selftest->add_flag("--json", selftest_json, "machine-readable report");

    auto* invert = app.add_subcommand("invert", "inversion round trip on a t grid");
    std::string invert_config, invert_out;
    invert->add_option("--config", invert_config, "JSON invert request")->required();
    invert->add_option("--out", invert_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (sweep->parsed())
            return run_sweep_cmd(sweep_config, sweep_out, sweep_format,
                                 allow_nonconverged);
        if (invert->parsed()) return run_invert_cmd(invert_config, invert_out);
        if (selftest->parsed()) return run_selftest_cmd(selftest_json);
    } catch (const qlaplace::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qlaplace::NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
