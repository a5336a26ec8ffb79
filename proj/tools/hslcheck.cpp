// hslcheck: batch verification driver. Runs the check pipelines on catalog
// surfaces or grid files and emits a machine-readable JSON report; the exit
// code is the number of failing checks.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hsl/report.hpp"

namespace {

using cplx = std::complex<double>;

// accepted forms: "2", "-1.5", "i", "-i", "0.8+0.6i", "e^{i pi/5}" is not
// supported -- use the rectangular form
cplx parse_lambda(const std::string& tok) {
    if (tok == "i") return {0, 1};
    if (tok == "-i") return {0, -1};
    const auto fail = [&]() -> cplx {
        throw CLI::ValidationError("--lambdas", "cannot parse '" + tok + "' as a complex number");
    };
    // split at the last +/- that is not a leading sign or exponent sign
    size_t split = std::string::npos;
    for (size_t p = 1; p < tok.size(); ++p)
        if ((tok[p] == '+' || tok[p] == '-') && tok[p - 1] != 'e' && tok[p - 1] != 'E')
            split = p;
    try {
        if (tok.back() == 'i') {
            if (split == std::string::npos) {  // pure imaginary
                const std::string im = tok.substr(0, tok.size() - 1);
                return {0, im.empty() ? 1 : std::stod(im)};
            }
            std::string im = tok.substr(split, tok.size() - split - 1);
            if (im == "+") im = "1";
            if (im == "-") im = "-1";
            return {std::stod(tok.substr(0, split)), std::stod(im)};
        }
        size_t used = 0;
        const double re = std::stod(tok, &used);
        if (used != tok.size()) return fail();
        return {re, 0};
    } catch (const std::invalid_argument&) {
        return fail();
    }
}

std::vector<cplx> parse_lambdas(const std::string& list) {
    std::vector<cplx> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(parse_lambda(tok));
    if (out.empty()) throw CLI::ValidationError("--lambdas", "empty lambda list");
    return out;
}

hsl::Quaternion parse_unit(const std::string& name) {
    if (name == "i") return hsl::Quaternion::i();
    if (name == "j") return hsl::Quaternion::j();
    if (name == "k") return hsl::Quaternion::k();
    throw CLI::ValidationError("--u", "expected one of i, j, k");
}

int emit(const hsl::Report& rep, const std::string& out_path,
         const std::vector<hsl::PlotPoint>& plot, const std::string& plot_path) {
    const std::string text = rep.dump();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 1;
        }
        os << text;
    }
    if (!plot_path.empty()) {
        std::ofstream os(plot_path);
        if (!os) {
            std::cerr << "cannot open plot file: " << plot_path << "\n";
            return 1;
        }
        os << hsl::plot_csv(plot);
    }
    return rep.failures();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification driver for Lagrangian surface / harmonic lift checks"};
    app.require_subcommand(1);

    hsl::CheckOptions opt;
    // environment override for the default discretization tolerance
    if (const char* env = std::getenv("HSLCHECK_TOL")) opt.discretization_tol = std::atof(env);

    std::string subject, out_path, plot_path, lambdas_arg, u_arg = "j";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the JSON report to this file instead of stdout");
        cmd->add_option("--plot-data", plot_path,
                        "write per-lambda flatness residuals as CSV (lambda_re,lambda_im,h,residual)");
        cmd->add_option("--tol", opt.discretization_tol,
                        "tolerance for discretization-level residuals");
        cmd->add_option("--lambdas", lambdas_arg,
                        "comma-separated spectral parameters, e.g. 'i,2,0.8+0.6i'");
        cmd->add_option("--u", u_arg, "unit imaginary quaternion for the lift (i, j or k)");
    };

    CLI::App* check = app.add_subcommand("check", "single-grid check pipeline on a subject");
    check->add_option("subject", subject, "catalog entry name or grid-file path")->required();
    check->add_option("--grid", opt.grid, "samples per axis");
    add_common(check);

    std::vector<int> grids{32, 64, 128};
    CLI::App* conv = app.add_subcommand("convergence", "residual decay orders across grids");
    conv->add_option("subject", subject, "catalog entry name or grid-file path")->required();
    conv->add_option("--grids", grids, "comma-separated grid sizes")->delimiter(',');
    add_common(conv);

    std::uint64_t seed = 1;
    std::string mode = "polynomial";
    CLI::App* super = app.add_subcommand("super", "superspace identity suite");
    super->add_option("--seed", seed, "random seed (reports are deterministic per seed)");
    super->add_option("--mode", mode, "polynomial (exact) or grid (order-based)")
        ->check(CLI::IsMember({"polynomial", "grid"}));
    super->add_option("--out", out_path, "write the JSON report to this file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!lambdas_arg.empty()) opt.lambdas = parse_lambdas(lambdas_arg);
        opt.u = parse_unit(u_arg);

        std::vector<hsl::PlotPoint> plot;
        auto* plotp = plot_path.empty() ? nullptr : &plot;
        hsl::Report rep;
        if (check->parsed())
            rep = hsl::run_check(subject, opt, plotp);
        else if (conv->parsed())
            rep = hsl::run_convergence(subject, grids, opt, plotp);
        else
            rep = hsl::run_super(seed, mode);
        return emit(rep, out_path, plot, plot_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
