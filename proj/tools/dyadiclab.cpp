// Command-line laboratory for discretised incidence-geometry experiments.
// Exit codes: 0 = all checks pass, 1 = a cap or certificate failed, 2 = usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dyadic/bookkeeping.hpp"
#include "dyadic/branching.hpp"
#include "dyadic/decompose.hpp"
#include "dyadic/harness.hpp"
#include "dyadic/statistics.hpp"
#include "dyadic/tube.hpp"

using namespace dyadic;

namespace {

struct ConstructArgs {
    std::string name;
    int delta_log2 = 8;
    int rho_log2 = 0;
    std::string s = "1/2", t = "1", u = "1/2", alpha = "1/2";
    long sizeA = 16, sizeB = 4;
    std::string cap = "16";
    std::string out_dir = ".";
};

SharpExample build_from_args(const ConstructArgs& a) {
    return build_named_example(a.name, Scale{a.delta_log2}, a.rho_log2, parse_rational(a.s), parse_rational(a.t),
                               parse_rational(a.u), parse_rational(a.alpha), Int(a.sizeA), Int(a.sizeB),
                               parse_rational(a.cap));
}

int report_caps(const SharpExample& ex) {
    for (const auto& c : ex.caps)
        if (!c.pass)
            std::cerr << "cap failed: " << c.name << " measured " << rat_string(c.measured) << " cap "
                      << rat_string(c.cap) << "\n";
    return ex.all_pass() ? 0 : 1;
}

int cmd_construct(const ConstructArgs& a) {
    SharpExample ex = build_from_args(a);
    std::ofstream(a.out_dir + "/points.set") << [&] {
        std::ostringstream os;
        write_set(os, ex.P);
        return os.str();
    }();
    std::ofstream(a.out_dir + "/slopes.set") << [&] {
        std::ostringstream os;
        write_set(os, ex.Theta);
        return os.str();
    }();
    std::ofstream manifest(a.out_dir + "/manifest.json");
    write_manifest_json(manifest, ex);
    return report_caps(ex);
}

int cmd_verify(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw CLI::ValidationError("verify", "cannot open " + manifest_path);
    nlohmann::json j = nlohmann::json::parse(in);
    std::map<std::string, Rat> params;
    for (auto& [key, val] : j.at("parameters").items()) params[key] = parse_rational(val.get<std::string>());
    auto get = [&](const std::string& key, const Rat& dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    auto geti = [&](const std::string& key, long dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt
                                  : boost::multiprecision::numerator(it->second).convert_to<long>();
    };
    std::string name = j.at("construction").get<std::string>();
    int delta_log2 = static_cast<int>(geti("delta_log2", 8));
    int rho_log2 = static_cast<int>(geti("rho_log2", 0));
    SharpExample ex = build_named_example(name, Scale{delta_log2}, rho_log2, get("s", Rat(1, 2)), get("t", Rat(1)),
                                          get("u", Rat(1, 2)), get("alpha", Rat(1, 2)), Int(geti("sizeA", 16)),
                                          Int(geti("sizeB", 4)), get("cap", Rat(16)));
    bool ok = true;
    auto& stored = j.at("verified_caps");
    if (stored.size() != ex.caps.size()) ok = false;
    for (std::size_t i = 0; ok && i < ex.caps.size(); ++i) {
        const auto& sc = stored[i];
        ok = sc.at("name").get<std::string>() == ex.caps[i].name && sc.at("pass").get<bool>() == ex.caps[i].pass &&
             parse_rational(sc.at("measured").get<std::string>()) == ex.caps[i].measured;
    }
    if (!ok) {
        std::cerr << "verify: stored claims do not reproduce\n";
        return 1;
    }
    if (j.at("claimed_exponent").get<std::string>() != rat_string(ex.claimed_exponent)) {
        std::cerr << "verify: claimed exponent mismatch\n";
        return 1;
    }
    return report_caps(ex);
}

int cmd_measure(const std::string& points_path, const std::string& slopes_path, const std::string& s_str,
                const std::string& out_path) {
    std::ifstream pin(points_path), sin(slopes_path);
    if (!pin) throw CLI::ValidationError("measure", "cannot open " + points_path);
    if (!sin) throw CLI::ValidationError("measure", "cannot open " + slopes_path);
    Set1 s1;
    Set2 P;
    int dim = 0;
    if (!read_set(pin, s1, P, dim) || dim != 2) throw CLI::ValidationError("measure", "points file must be 2-D");
    Set1 theta;
    Set2 s2;
    if (!read_set(sin, theta, s2, dim) || dim != 1) throw CLI::ValidationError("measure", "slopes file must be 1-D");
    Configuration cfg = build_configuration(P, theta, parse_rational(s_str));
    if (out_path.empty()) {
        write_configuration_json(std::cout, cfg);
    } else {
        std::ofstream out(out_path);
        write_configuration_json(out, cfg);
    }
    ValidationReport rep = validate_configuration(cfg);
    if (!rep.valid) std::cerr << "configuration invalid: " << rep.note << "\n";
    return rep.valid ? 0 : 1;
}

int cmd_decompose(const std::string& branching_path, const std::string& xi_str, const std::string& tau_str,
                  const std::string& out_path) {
    std::ifstream in(branching_path);
    if (!in) throw CLI::ValidationError("decompose", "cannot open " + branching_path);
    BranchingFunction b = read_branching(in);
    Rat xi = parse_rational(xi_str);
    Decomposition dec = tau_str.empty() ? decompose(b.values, 2, xi) : decompose(b.values, 2, xi, parse_rational(tau_str));
    if (out_path.empty()) {
        write_decomposition_json(std::cout, dec);
    } else {
        std::ofstream out(out_path);
        write_decomposition_json(out, dec);
    }
    if (!dec.certified) std::cerr << "decomposition not certified: " << dec.diagnostic << "\n";
    return dec.certified ? 0 : 1;
}

int cmd_sweep(int delta_log2, const std::string& s_str, const std::string& t_str, std::vector<int> rho_levels,
              const std::string& cap_str, double tolerance) {
    ExponentReport rep =
        sweep_sharp_exponent(Scale{delta_log2}, parse_rational(s_str), parse_rational(t_str), rho_levels,
                             parse_rational(cap_str), tolerance);
    write_exponent_json(std::cout, rep);
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discretised incidence-geometry laboratory"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build a named example and emit set files + manifest");
    construct->add_option("--name", ca.name, "construction name")->required();
    construct->add_option("--delta-log2", ca.delta_log2, "resolution: delta = 2^-k");
    construct->add_option("--rho-log2", ca.rho_log2, "coarse scale: rho = 2^-k");
    construct->add_option("--s", ca.s, "slope-set dimension (rational)");
    construct->add_option("--t", ca.t, "point-set dimension (rational)");
    construct->add_option("--u", ca.u, "single-scale non-concentration exponent (rational)");
    construct->add_option("--alpha", ca.alpha, "non-concentration exponent of A and B (rational)");
    construct->add_option("--sizeA", ca.sizeA, "|A| (power of two)");
    construct->add_option("--sizeB", ca.sizeB, "|B| (power of two)");
    construct->add_option("--cap", ca.cap, "cap constant (rational)");
    construct->add_option("--out-dir", ca.out_dir, "output directory");

    std::string manifest_path;
    auto* verify = app.add_subcommand("verify", "re-check every claim stored in a manifest");
    verify->add_option("--manifest", manifest_path, "manifest JSON path")->required();

    std::string points_path, slopes_path, s_str = "1/2", out_path;
    auto* measure = app.add_subcommand("measure", "incidence statistics for a (points, slopes) pair");
    measure->add_option("--points", points_path, "2-D set file")->required();
    measure->add_option("--slopes", slopes_path, "1-D set file")->required();
    measure->add_option("--s", s_str, "Frostman exponent for the slope sets (rational)");
    measure->add_option("--out", out_path, "output JSON path (stdout if omitted)");

    std::string branching_path, xi_str = "1/10", tau_str, dec_out;
    auto* decomp = app.add_subcommand("decompose", "certified piecewise-linear decomposition of a branching function");
    decomp->add_option("--branching", branching_path, "branching file")->required();
    decomp->add_option("--xi", xi_str, "loss budget xi (rational)");
    decomp->add_option("--tau", tau_str, "minimum piece length fraction (rational, default xi^2/16)");
    decomp->add_option("--out", dec_out, "output JSON path (stdout if omitted)");

    int sweep_delta = 8;
    std::string sweep_s = "1/2", sweep_t = "1", sweep_cap = "16";
    std::vector<int> sweep_rhos{4, 6, 8};
    double tolerance = 0.1;
    auto* sweep = app.add_subcommand("sweep", "projection-exponent sweep across coarse scales");
    sweep->add_option("--delta-log2", sweep_delta, "resolution: delta = 2^-k");
    sweep->add_option("--s", sweep_s, "slope-set dimension (rational)");
    sweep->add_option("--t", sweep_t, "point-set dimension (rational)");
    sweep->add_option("--rho-log2", sweep_rhos, "coarse levels k (rho = 2^-k), at least two");
    sweep->add_option("--cap", sweep_cap, "cap constant (rational)");
    sweep->add_option("--tolerance", tolerance, "log-log slope tolerance");

    auto* self = app.add_subcommand("selftest", "quick end-to-end battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (construct->parsed()) return cmd_construct(ca);
        if (verify->parsed()) return cmd_verify(manifest_path);
        if (measure->parsed()) return cmd_measure(points_path, slopes_path, s_str, out_path);
        if (decomp->parsed()) return cmd_decompose(branching_path, xi_str, tau_str, dec_out);
        if (sweep->parsed()) return cmd_sweep(sweep_delta, sweep_s, sweep_t, sweep_rhos, sweep_cap, tolerance);
        if (self->parsed()) return selftest(std::cout) ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
