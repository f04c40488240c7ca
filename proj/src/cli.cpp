#include "sidonforge/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "sidonforge/bounds.hpp"
#include "sidonforge/construct.hpp"
#include "sidonforge/continuum.hpp"
#include "sidonforge/io.hpp"

namespace sidonforge {

namespace {

using nlohmann::json;

std::string fmt12(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.12f", v);
    return b;
}

double cert_density(const SetCertificate& cert) {
    if (cert.achieved_g == 0 || cert.set.size() == 0) return 0.0;
    return static_cast<double>(cert.set.size()) /
           std::sqrt(static_cast<double>(cert.achieved_g) *
                     static_cast<double>(cert.set.group.order()));
}

void print_cert_summary(std::ostream& out, const std::string& label,
                        const SetCertificate& cert, u64 nominal_cap,
                        const std::string& path, bool as_json) {
    double density = cert_density(cert);
    if (as_json) {
        json j{{"construction", label},
               {"size", cert.set.size()},
               {"achieved_g", cert.achieved_g},
               {"nominal_cap", nominal_cap},
               {"density", density},
               {"verified", cert.verified},
               {"certificate", path}};
        out << j.dump() << "\n";
        return;
    }
    out << label << ": |A|=" << cert.set.size()
        << " achieved_g=" << cert.achieved_g
        << " nominal_cap=" << nominal_cap
        << " density=" << fmt12(density)
        << " -> " << path << "\n";
}

struct VerifyOutcome {
    int exit_code;
};

int do_verify(std::ostream& out, const std::string& path, std::optional<u64> g_override) {
    SetCertificate cert = load_certificate(path);
    RepProfile prof = rep_profile(cert.set);
    out << "max_r=" << prof.max_r
        << " max_r_restricted=" << prof.max_r_restricted
        << " max_r_unordered=" << prof.max_r_unordered
        << " flavor=" << flavor_name(cert.set.flavor) << "\n";

    std::optional<u64> cap = g_override ? g_override : cert.set.claimed_g;
    if (!cap) {
        out << "no claimed_g present; nothing to check\n";
        return 0;
    }
    VerifyResult vr = verify_g_sidon(cert.set, *cap, cert.set.flavor);
    if (vr.ok) {
        out << "OK: " << flavor_name(cert.set.flavor) << " representation function <= "
            << *cap << " everywhere\n";
        return 0;
    }
    out << "FAIL: claim g=" << *cap << " violated at x=" << vr.violating.a;
    if (cert.set.group.kind() == GroupKind::ProductPP) out << "," << vr.violating.b;
    out << " with count " << vr.count << "\n";
    return 1;
}

void print_bound(std::ostream& out, const char* name, const std::optional<double>& b, u64 optimum) {
    if (!b) return;
    out << "bound " << name << "=" << fmt12(*b)
        << " slack=" << fmt12(*b - static_cast<double>(optimum)) << "\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"generalized Sidon sets: construction, verification, bounds, sigma estimation"};
    app.name("sidonforge");
    app.require_subcommand(0, 1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable summaries");

    std::function<int()> action;

    // construct -----------------------------------------------------------
    CLI::App* construct = app.add_subcommand("construct", "build a set and write a certificate");
    construct->require_subcommand(1);
    std::string out_path;

    {
        CLI::App* c = construct->add_subcommand("parabola", "k-parabola union in Z_p x Z_p");
        auto p = std::make_shared<u64>();
        auto k = std::make_shared<u64>();
        auto t = std::make_shared<i64>(-1);
        c->add_option("p", *p, "odd prime")->required();
        c->add_option("k", *k, "number of parabolas")->required();
        c->add_option("--t", *t, "shift (default: best by character-sum scan)");
        c->add_option("-o,--out", out_path, "certificate path");
        c->callback([&, p, k, t] {
            action = [&, p, k, t]() -> int {
                std::optional<u64> given;
                if (*t >= 0) given = static_cast<u64>(*t);
                ParabolaUnion pu = build_parabola_union(*p, *k, given);
                json prov{{"construction", "parabola"}, {"p", *p}, {"k", *k}, {"t", pu.t}, {"s_t", pu.s_t}};
                SetCertificate cert = make_certificate(std::move(pu.set), prov);
                std::string path = out_path.empty()
                    ? "parabola_p" + std::to_string(*p) + "_k" + std::to_string(*k) + ".json"
                    : out_path;
                write_certificate(cert, path);
                print_cert_summary(out, "parabola", cert, pu.nominal_cap, path, as_json);
                return 0;
            };
        });
    }
    {
        CLI::App* c = construct->add_subcommand("cyclic", "projected parabola union in Z_{p^2 s}");
        auto p = std::make_shared<u64>();
        auto k = std::make_shared<u64>();
        auto s = std::make_shared<u64>();
        c->add_option("p", *p, "odd prime")->required();
        c->add_option("k", *k, "number of parabolas")->required();
        c->add_option("s", *s, "projection multiplicity")->required();
        c->add_option("-o,--out", out_path, "certificate path");
        c->callback([&, p, k, s] {
            action = [&, p, k, s]() -> int {
                CyclicConstruction cc = build_cyclic_gsidon(*k, *s, *p);
                json prov{{"construction", "cyclic"}, {"p", *p}, {"k", *k}, {"s", *s}, {"t", cc.t}};
                SetCertificate cert = make_certificate(std::move(cc.set), prov);
                std::string path = out_path.empty()
                    ? "cyclic_p" + std::to_string(*p) + "_k" + std::to_string(*k) +
                      "_s" + std::to_string(*s) + ".json"
                    : out_path;
                write_certificate(cert, path);
                print_cert_summary(out, "cyclic", cert, cc.nominal_cap, path, as_json);
                return 0;
            };
        });
    }
    {
        CLI::App* c = construct->add_subcommand("baseline", "classical Sidon set mod p^2-1");
        auto p = std::make_shared<u64>();
        c->add_option("p", *p, "odd prime")->required();
        c->add_option("-o,--out", out_path, "certificate path");
        c->callback([&, p] {
            action = [&, p]() -> int {
                SidonSet set = bose_sidon_baseline(*p);
                json prov{{"construction", "baseline"}, {"p", *p}};
                SetCertificate cert = make_certificate(std::move(set), prov);
                std::string path = out_path.empty() ? "baseline_p" + std::to_string(*p) + ".json" : out_path;
                write_certificate(cert, path);
                print_cert_summary(out, "baseline", cert, 2, path, as_json);
                return 0;
            };
        });
    }
    {
        CLI::App* c = construct->add_subcommand("paste", "paste integer pattern with modular set");
        auto a_path = std::make_shared<std::string>();
        auto c_path = std::make_shared<std::string>();
        c->add_option("pattern", *a_path, "certificate of the integer pattern (interval)")->required();
        c->add_option("modular", *c_path, "certificate of the modular set (cyclic)")->required();
        c->add_option("-o,--out", out_path, "certificate path");
        c->callback([&, a_path, c_path] {
            action = [&, a_path, c_path]() -> int {
                SetCertificate a = load_certificate(*a_path);
                SetCertificate cmod = load_certificate(*c_path);
                PastingParams pp{a.set, cmod.set, a.achieved_g, cmod.achieved_g};
                PasteResult pr = paste(pp);
                json prov{{"construction", "paste"},
                          {"g1", pp.g1}, {"g2", pp.g2},
                          {"pattern", *a_path}, {"modular", *c_path}};
                SetCertificate cert = make_certificate(std::move(pr.set), prov);
                std::string path = out_path.empty() ? "paste.json" : out_path;
                write_certificate(cert, path);
                print_cert_summary(out, "paste", cert, pr.cap, path, as_json);
                return 0;
            };
        });
    }
    {
        CLI::App* c = construct->add_subcommand("assemble", "end-to-end integer construction");
        auto g = std::make_shared<u64>();
        auto N = std::make_shared<u64>();
        auto eps = std::make_shared<double>();
        c->add_option("g", *g, "target representation cap")->required();
        c->add_option("N", *N, "interval length")->required();
        c->add_option("eps", *eps, "quality parameter in (0,1)")->required();
        c->add_option("-o,--out", out_path, "certificate path");
        c->callback([&, g, N, eps] {
            action = [&, g, N, eps]() -> int {
                AssembleResult ar = assemble_integer_gsidon(*g, *N, *eps);
                json prov{{"construction", "assemble"},
                          {"g", *g}, {"N", *N}, {"eps", *eps},
                          {"g1", ar.g1}, {"g2", ar.g2},
                          {"pattern", ar.pattern_desc}, {"cyclic", ar.cyclic_desc},
                          {"footprint", ar.footprint}};
                SetCertificate cert = make_certificate(ar.set, prov);
                std::string path = out_path.empty()
                    ? "assemble_g" + std::to_string(*g) + "_N" + std::to_string(*N) + ".json"
                    : out_path;
                write_certificate(cert, path);
                print_cert_summary(out, "assemble", cert, ar.cap, path, as_json);
                out << "assemble detail: g1=" << ar.g1 << " g2=" << ar.g2
                    << " footprint=" << ar.footprint
                    << " density_target=" << fmt12(ar.density) << "\n";
                return 0;
            };
        });
    }

    // verify ---------------------------------------------------------------
    {
        CLI::App* c = app.add_subcommand("verify", "recompute a certificate's profile and check its claim");
        auto path = std::make_shared<std::string>();
        auto g_flag = std::make_shared<i64>(-1);
        c->add_option("certificate", *path, "certificate file")->required();
        c->add_option("--g", *g_flag, "override the claimed cap");
        c->callback([&, path, g_flag] {
            action = [&, path, g_flag]() -> int {
                std::optional<u64> ov;
                if (*g_flag >= 0) ov = static_cast<u64>(*g_flag);
                return do_verify(out, *path, ov);
            };
        });
    }

    // search ----------------------------------------------------------------
    {
        CLI::App* c = app.add_subcommand("search", "exact maximum g-Sidon subset");
        auto n_interval = std::make_shared<i64>(-1);
        auto q_cyclic = std::make_shared<i64>(-1);
        auto g = std::make_shared<u64>();
        auto flavor = std::make_shared<std::string>("ordered");
        auto ceiling = std::make_shared<i64>(-1);
        c->add_option("--interval", *n_interval, "search subsets of {1..n}");
        c->add_option("--cyclic", *q_cyclic, "search subsets of Z_q");
        c->add_option("--g", *g, "representation cap")->required();
        c->add_option("--flavor", *flavor, "ordered|restricted|unordered");
        c->add_option("--ceiling", *ceiling, "override the instance-size ceiling");
        c->add_option("-o,--out", out_path, "witness certificate path");
        c->callback([&, n_interval, q_cyclic, g, flavor, ceiling] {
            action = [&, n_interval, q_cyclic, g, flavor, ceiling]() -> int {
                if ((*n_interval < 0) == (*q_cyclic < 0))
                    fail(Errc::InvalidParameter, "search: give exactly one of --interval or --cyclic");
                SearchLimits lim;
                if (*ceiling >= 0) lim.ceiling = static_cast<u64>(*ceiling);
                Flavor fl = flavor_from_name(*flavor);
                SearchResult res = *n_interval >= 0
                    ? exact_beta(static_cast<u64>(*n_interval), *g, fl, lim)
                    : exact_alpha(static_cast<u64>(*q_cyclic), *g, fl, lim);

                out << "optimum=" << res.optimum << " nodes=" << res.nodes << "\nwitness={";
                for (u64 i = 0; i < res.witness.size(); ++i)
                    out << (i ? "," : "") << res.witness.elements[i].a;
                out << "}\n";
                if (*n_interval >= 0) {
                    BoundReport rep = bound_integer_classics(static_cast<u64>(*n_interval), *g);
                    print_bound(out, "trivial", rep.trivial, res.optimum);
                    print_bound(out, "lindstrom", rep.lindstrom, res.optimum);
                    print_bound(out, "ruzsa_weak", rep.ruzsa_weak, res.optimum);
                } else {
                    BoundReport rep = bound_cyclic(static_cast<u64>(*q_cyclic), *g);
                    print_bound(out, "trivial", rep.trivial, res.optimum);
                    print_bound(out, "section2", rep.section2, res.optimum);
                }
                if (!out_path.empty()) {
                    json prov{{"construction", "search"}, {"g", *g}, {"flavor", *flavor}};
                    write_certificate(make_certificate(res.witness, prov), out_path);
                }
                return 0;
            };
        });
    }

    // sigma -------------------------------------------------------------
    {
        CLI::App* c = app.add_subcommand("sigma", "lower-bound candidate for the autoconvolution constant");
        auto N = std::make_shared<u64>(256);
        auto budget = std::make_shared<u64>(60000);
        auto seed = std::make_shared<u64>(1);
        auto emit = std::make_shared<std::string>();
        auto verify_path = std::make_shared<std::string>();
        c->add_option("--N", *N, "step-function pieces");
        c->add_option("--budget", *budget, "optimizer proposal budget");
        c->add_option("--seed", *seed, "random seed");
        c->add_option("--emit", *emit, "write the optimized profile as CSV");
        c->add_option("--verify", *verify_path, "recompute the ratio of a stored CSV profile");
        c->callback([&, N, budget, seed, emit, verify_path] {
            action = [&, N, budget, seed, emit, verify_path]() -> int {
                if (!verify_path->empty()) {
                    StepFunction f = load_step_csv(*verify_path);
                    out << "N=" << f.pieces() << " ratio=" << fmt12(poly_ratio(f)) << "\n";
                    return 0;
                }
                OptimizeResult res = optimize_sigma(static_cast<int>(*N), *budget, *seed);
                out << "N=" << *N << " ratio=" << fmt12(res.ratio)
                    << " evaluations=" << res.evaluations << "\n";
                if (!emit->empty()) write_step_csv(res.f, *emit);
                return 0;
            };
        });
    }

    // montecarlo -----------------------------------------------------------
    {
        CLI::App* c = app.add_subcommand("montecarlo", "random-set experiment against size/cap thresholds");
        auto n = std::make_shared<u64>();
        auto eps = std::make_shared<double>();
        auto trials = std::make_shared<u64>();
        auto seed = std::make_shared<u64>(1);
        auto profile = std::make_shared<std::string>();
        c->add_option("--n", *n, "interval length")->required();
        c->add_option("--eps", *eps, "quality parameter in (0,1)")->required();
        c->add_option("--trials", *trials, "number of sampled sets")->required();
        c->add_option("--seed", *seed, "random seed");
        c->add_option("--profile", *profile, "step-function CSV")->required();
        c->add_option("-o,--out", out_path, "also write the JSON report here");
        c->callback([&, n, eps, trials, seed, profile] {
            action = [&, n, eps, trials, seed, profile]() -> int {
                StepFunction f = load_step_csv(*profile);
                ProbModel model = pipeline_model(f, *n, *eps, *seed);
                MonteCarloReport rep = monte_carlo_check(model, *trials, *eps);
                json j = report_to_json(rep);
                out << j.dump(2) << "\n";
                if (!out_path.empty()) {
                    std::ofstream file(out_path);
                    if (!file) fail(Errc::InvalidParameter, "cannot open '" + out_path + "'");
                    file << j.dump(2) << "\n";
                }
                return 0;
            };
        });
    }

    std::vector<const char*> argv;
    argv.push_back("sidonforge");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (!action) {
        out << app.help();
        return 0;
    }
    try {
        return action();
    } catch (const SidonError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace sidonforge
