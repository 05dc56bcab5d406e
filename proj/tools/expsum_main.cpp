// Command-line front end: character tables, trajectories, bounds, Gauss-sum
// checks, pretentious distances, modified-character diagnostics and the two
// counterexample constructions. CSV/JSON formats are documented in README.md.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "expsum/modified_sums.hpp"
#include "expsum/oracles.hpp"
#include "expsum/pretentious.hpp"
#include "expsum/selftest.hpp"
#include "expsum/trajectory.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace expsum;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string show(Complex z) { return g17(z.real()) + (z.imag() < 0 ? " - " : " + ") + g17(std::abs(z.imag())) + "i"; }

struct Config {
    u64 sieve_limit = 1u << 21;
    u64 default_limit = 100000;
    int threads = 0;
};

Config load_config(const std::string& explicit_path) {
    Config cfg;
    std::string path = explicit_path;
    if (path.empty()) {
        std::ifstream probe("expsum.conf");
        if (probe.good()) path = "expsum.conf";
    }
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in.good()) throw DomainError("config file not found: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        auto strip = [](std::string& s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        };
        strip(key);
        strip(value);
        if (key == "sieve_limit") cfg.sieve_limit = std::stoull(value);
        if (key == "limit") cfg.default_limit = std::stoull(value);
        if (key == "threads") cfg.threads = std::stoi(value);
    }
    return cfg;
}

std::vector<std::pair<u64, Complex>> parse_etas(const std::vector<std::string>& raw) {
    std::vector<std::pair<u64, Complex>> out;
    for (const std::string& s : raw) {
        u64 p = 0;
        double re = 0, im = 0;
        if (std::sscanf(s.c_str(), "%llu=%lf,%lf", reinterpret_cast<unsigned long long*>(&p), &re, &im) != 3)
            throw DomainError("--eta expects p=re,im");
        out.emplace_back(p, Complex{re, im});
    }
    return out;
}

MultiplicativeFunctionSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw DomainError("spec file not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return MultiplicativeFunctionSpec::from_json(ss.str());
}

void print_character_line(const DirichletCharacter& chi) {
    auto [m0, psi] = conductor_and_primitive_part(chi);
    std::cout << chi.label() << "  conductor=" << m0 << "  primitive=" << psi.label()
              << (chi.is_principal() ? "  principal" : "") << (chi.is_real() ? "  real" : "") << "\n";
}

int cmd_characters(u64 m, bool list, const std::string& inspect) {
    if (!inspect.empty()) {
        DirichletCharacter chi = character_by_label(inspect);
        print_character_line(chi);
        std::cout << "values (n: chi(n)):\n";
        for (u64 n = 0; n < chi.modulus(); ++n) std::cout << "  " << n << ": " << show(chi(n)) << "\n";
        return 0;
    }
    CharacterGroup g(m);
    std::cout << "modulus " << m << ": " << g.size() << " characters, group exponent " << g.exponent() << "\n";
    if (list) {
        for (u64 i = 0; i < g.size(); ++i) print_character_line(g.character(i));
    }
    return 0;
}

int cmd_bounds(u64 m, const std::string& alpha_text) {
    PhaseAngle alpha = parse_phase(alpha_text);
    ExplicitBounds b = explicit_bounds(m, alpha);
    std::cout << "alpha = " << alpha.to_string() << ", m = " << m << "\n";
    if (b.geometric)
        std::cout << "geometric bound 2/|1-e(alpha)|        = " << g17(*b.geometric) << "\n";
    else
        std::cout << "geometric bound unavailable (alpha integral)\n";
    if (b.character)
        std::cout << "character bound 2m/|e(m alpha)-1|+m-1 = " << g17(*b.character) << "\n";
    else
        std::cout << "character bound unavailable (m*alpha integral)\n";
    return 0;
}

int cmd_sum(const std::string& spec_file, const std::string& char_label, const std::vector<std::string>& etas,
            const std::string& alpha_text, double t, u64 limit, const std::string& out_path,
            const std::string& meta_path) {
    MultiplicativeFunctionSpec spec = MultiplicativeFunctionSpec::one();
    if (!spec_file.empty()) {
        spec = load_spec_file(spec_file);
    } else if (!char_label.empty()) {
        DirichletCharacter chi = character_by_label(char_label);
        if (etas.empty()) {
            spec = MultiplicativeFunctionSpec::character(chi);
        } else {
            ModifiedCharacterSpec ms{chi, parse_etas(etas)};
            spec = modified_character(ms);
        }
    } else {
        throw DomainError("sum: pass --spec FILE or --char m.i");
    }
    PhaseAngle alpha = parse_phase(alpha_text);
    u64 table_limit = std::max<u64>(limit, 2);
    FactorTable table(table_limit);
    SumTrajectory traj = sum_trajectory(spec, alpha, t, limit, table);

    std::string csv = trajectory_csv(traj);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << csv;
        std::string mp = meta_path.empty() ? out_path + ".meta.json" : meta_path;
        std::ofstream meta(mp, std::ios::binary);
        meta << trajectory_metadata_json(traj, spec) << "\n";
    }
    std::cerr << "final S(" << traj.limit() << ") = " << show(traj.final_value())
              << ", running sup = " << g17(traj.final_sup()) << "\n";
    return 0;
}

int cmd_gauss(u64 m, u64 index, i64 a, bool all) {
    CharacterGroup g(m);
    DirichletCharacter chi = g.character(index);
    if (!gauss_hypothesis_holds(chi))
        throw PreconditionError("gauss: m/m0 must be square-free and coprime to m0 for this character");
    if (all) {
        double worst = 0.0;
        for (u64 aa = 1; aa <= m; ++aa) {
            Complex formula = gauss_P_formula(chi, static_cast<i64>(aa));
            Complex brute = oracles::naive_P(chi, unit_phase(aa, PhaseAngle::rational(1, m)));
            worst = std::max(worst, std::abs(formula - brute));
        }
        std::cout << "chi = " << chi.label() << ", a = 1.." << m << ", max |formula - brute| = " << g17(worst) << "\n";
        return 0;
    }
    Complex formula = gauss_P_formula(chi, a);
    Complex brute = oracles::naive_P(chi, unit_phase(static_cast<u64>(((a % (i64)m) + (i64)m) % (i64)m),
                                                     PhaseAngle::rational(1, m)));
    std::cout << "P(e(" << a << "/" << m << ")) formula    = " << show(formula) << "\n";
    std::cout << "P(e(" << a << "/" << m << ")) brute force = " << show(brute) << "\n";
    std::cout << "deviation = " << g17(std::abs(formula - brute)) << "\n";
    return 0;
}

int cmd_distance(const std::string& f_path, const std::string& g_path, const std::string& twist, u64 x, u64 y) {
    FactorTable table(std::max<u64>(x + 1, 1000));
    MultiplicativeFunctionSpec f = load_spec_file(f_path);
    if (!twist.empty()) {
        auto comma = twist.find(',');
        if (comma == std::string::npos) throw DomainError("--twist expects m.i,T");
        DirichletCharacter chi = character_by_label(twist.substr(0, comma));
        double t = std::stod(twist.substr(comma + 1));
        double d = distance_to_twisted_character(f, chi, t, x, table);
        std::cout << "D(f, chi(n) n^{it}; 1, " << x << ") = " << g17(d) << "\n";
        return 0;
    }
    if (g_path.empty()) throw DomainError("distance: pass --g FILE or --twist m.i,T");
    MultiplicativeFunctionSpec g = load_spec_file(g_path);
    double d = distance(f, g, y, x, table);
    std::cout << "D(f, g; " << y << ", " << x << ") = " << g17(d) << "\n";
    return 0;
}

int cmd_correlate(const std::string& spec_file, const std::string& alpha_text, u64 h, u64 x) {
    MultiplicativeFunctionSpec spec = load_spec_file(spec_file);
    PhaseAngle alpha = parse_phase(alpha_text);
    FactorTable table(x + h + 1);
    LogCorrelation c = log_correlation(spec, alpha, h, x, table);
    std::cout << "phased form    = " << show(c.phased) << "\n";
    std::cout << "e(-h a)*plain  = " << show(c.phase_factor * c.plain) << "\n";
    std::cout << "plain form     = " << show(c.plain) << "\n";
    std::cout << "deviation      = " << g17(c.deviation) << "\n";
    return 0;
}

int cmd_modified(const std::string& char_label, const std::vector<std::string>& etas, const std::string& alpha_text,
                 const std::string& ells_text, u32 br, double x) {
    DirichletCharacter chi = character_by_label(char_label);
    ModifiedCharacterSpec ms{chi, parse_etas(etas)};
    ms.validate();
    PhaseAngle alpha = parse_phase(alpha_text);

    std::vector<u32> ells;
    if (!ells_text.empty()) {
        std::stringstream ss(std::string{ells_text});
        std::string part;
        while (std::getline(ss, part, ',')) ells.push_back(static_cast<u32>(std::stoul(part)));
    }

    auto table = std::make_shared<const FactorTable>(std::max<u64>(static_cast<u64>(x) + 1, 4096));
    ModifiedCharSums sums(ms, table);

    if (!ells.empty() && ells.size() <= sums.prime_count()) {
        Complex rec = sums.recursive(ells, x, alpha);
        Complex exp = sums.expanded(ells, x, alpha);
        std::cout << "A recursive = " << show(rec) << "\n";
        std::cout << "A expansion = " << show(exp) << "\n";
        std::cout << "deviation   = " << g17(std::abs(rec - exp)) << "\n";
    }
    if (br > 0) {
        if (ells.size() != sums.prime_count() - 1)
            throw PreconditionError("modified: --Br needs --ells of length k-1");
        std::cout << "r  |B_r|\n";
        double max_seen = 0.0;
        for (u32 r = 1; r <= br; ++r) {
            Complex b = sums.block_sum(ells, r, alpha);
            max_seen = std::max(max_seen, std::abs(b));
            std::cout << r << "  " << g17(std::abs(b)) << "\n";
        }
        std::cout << "max |B_r| = " << g17(max_seen) << ", |A(x_A) - B_r| tail bound = "
                  << g17(sums.block_tail_bound(ells)) << "\n";
    }
    return 0;
}

int cmd_construct(int example, u32 k, const std::string& alpha_text, const std::string& out_path) {
    MultiplicativeFunctionSpec spec = MultiplicativeFunctionSpec::one();
    if (example == 1) {
        if (alpha_text.empty()) throw DomainError("construct --example 1 needs --alpha");
        PhaseAngle alpha = parse_phase(alpha_text);
        Example1Construction ex = construct_example1(alpha, k);
        spec = ex.spec;
        std::cout << "primes:";
        for (u64 p : ex.primes) std::cout << " " << p;
        std::cout << "\ncertified bound M_1(z_1)+1 = " << g17(ex.certified_bound) << "\n";
    } else if (example == 2) {
        Example2Construction ex = construct_example2(k);
        spec = ex.spec;
        std::cout << "primes:";
        for (u64 p : ex.primes) std::cout << " " << p;
        std::cout << "\n";
        for (size_t i = 0; i < ex.z.size(); ++i)
            std::cout << "z_" << i + 1 << " = " << show(ex.z[i]) << "  |1-z| = " << g17(std::abs(Complex{1.0, 0.0} - ex.z[i]))
                      << "\n";
    } else {
        throw DomainError("construct: --example must be 1 or 2");
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out.good()) throw DomainError("construct: cannot open output file");
    out << spec.to_json() << "\n";
    std::cout << "spec written to " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential sums of multiplicative functions"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (threads, sieve_limit, limit)");

    // characters
    auto* sc_chars = app.add_subcommand("characters", "enumerate or inspect Dirichlet characters");
    u64 ch_m = 1;
    bool ch_list = false;
    std::string ch_inspect;
    sc_chars->add_option("--modulus", ch_m, "modulus m");
    sc_chars->add_flag("--list", ch_list, "list all characters mod m");
    sc_chars->add_option("--inspect", ch_inspect, "print the value table of character m.i");

    // sum
    auto* sc_sum = app.add_subcommand("sum", "trajectory of sum f(n) e(n alpha) n^{it} with running sup");
    std::string sum_spec, sum_char, sum_alpha = "0/1", sum_out, sum_meta;
    std::vector<std::string> sum_etas;
    double sum_t = 0.0;
    u64 sum_limit = 0;
    sc_sum->add_option("--spec", sum_spec, "spec JSON file");
    sc_sum->add_option("--char", sum_char, "character label m.i");
    sc_sum->add_option("--eta", sum_etas, "modification p=re,im (repeatable)");
    sc_sum->add_option("--alpha", sum_alpha, "phase: a/q, decimal, sqrt2m1, phi-1")->required();
    sc_sum->add_option("--t", sum_t, "archimedean twist exponent");
    sc_sum->add_option("--limit", sum_limit, "sum up to x = limit")->required();
    sc_sum->add_option("--out", sum_out, "write trajectory CSV here (plus .meta.json sidecar)");
    sc_sum->add_option("--meta", sum_meta, "metadata sidecar path");

    // bounds
    auto* sc_bounds = app.add_subcommand("bounds", "geometric and character-sum bounds");
    u64 b_m = 1;
    std::string b_alpha;
    sc_bounds->add_option("--modulus", b_m, "modulus m")->required();
    sc_bounds->add_option("--alpha", b_alpha, "phase angle")->required();

    // gauss
    auto* sc_gauss = app.add_subcommand("gauss", "Gauss-sum closed form vs brute force");
    u64 ga_m = 1, ga_idx = 0;
    i64 ga_a = 1;
    bool ga_all = false;
    sc_gauss->add_option("--modulus", ga_m, "modulus m")->required();
    sc_gauss->add_option("--char", ga_idx, "character index");
    sc_gauss->add_option("--a", ga_a, "evaluate at e(a/m)");
    sc_gauss->add_flag("--all", ga_all, "sweep a = 1..m and report the max deviation");

    // distance
    auto* sc_dist = app.add_subcommand("distance", "pretentious distance");
    std::string d_f, d_g, d_twist;
    u64 d_x = 10000, d_y = 1;
    sc_dist->add_option("--f", d_f, "spec JSON file")->required();
    sc_dist->add_option("--g", d_g, "spec JSON file");
    sc_dist->add_option("--twist", d_twist, "target chi(n) n^{it} as m.i,T");
    sc_dist->add_option("--x", d_x, "sum over primes <= x")->required();
    sc_dist->add_option("--y", d_y, "start above y");

    // correlate
    auto* sc_corr = app.add_subcommand("correlate", "logarithmic correlation, both routes");
    sc_corr->set_help_flag("--help", "print help"); // frees --h for the shift
    std::string co_spec, co_alpha;
    u64 co_h = 1, co_x = 10000;
    sc_corr->add_option("--spec", co_spec, "spec JSON file")->required();
    sc_corr->add_option("--alpha", co_alpha, "phase angle")->required();
    sc_corr->add_option("--h", co_h, "shift h >= 1")->required();
    sc_corr->add_option("--x", co_x, "sum up to x")->required();

    // modified
    auto* sc_mod = app.add_subcommand("modified", "A-recursion / B_r diagnostics for a modified character");
    std::string mo_char, mo_alpha, mo_ells;
    std::vector<std::string> mo_etas;
    u32 mo_br = 0;
    double mo_x = 1000.0;
    sc_mod->add_option("--char", mo_char, "character label m.i")->required();
    sc_mod->add_option("--eta", mo_etas, "modification p=re,im (repeatable)")->required();
    sc_mod->add_option("--alpha", mo_alpha, "phase angle")->required();
    sc_mod->add_option("--ells", mo_ells, "comma-separated tuple l1,l2,...");
    sc_mod->add_option("--Br", mo_br, "print |B_r| for r = 1..R");
    sc_mod->add_option("--x", mo_x, "argument x for the A sums");

    // construct
    auto* sc_cons = app.add_subcommand("construct", "emit a counterexample construction spec");
    int cn_example = 1;
    u32 cn_k = 1;
    std::string cn_alpha, cn_out = "spec.json";
    sc_cons->add_option("--example", cn_example, "1 or 2")->required();
    sc_cons->add_option("--k", cn_k, "number of modified primes")->required();
    sc_cons->add_option("--alpha", cn_alpha, "phase angle (example 1)");
    sc_cons->add_option("--out", cn_out, "output spec JSON path");

    // selftest
    auto* sc_self = app.add_subcommand("selftest", "run the acceptance scenarios");
    std::string suite = "acceptance";
    sc_self->add_option("--suite", suite, "acceptance|quick")->check(CLI::IsMember({"acceptance", "quick"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Config cfg = load_config(config_path);
        if (const char* env = std::getenv("EXPSUM_THREADS")) cfg.threads = std::atoi(env);
#ifdef _OPENMP
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
        if (sum_limit == 0) sum_limit = cfg.default_limit;

        if (*sc_chars) return cmd_characters(ch_m, ch_list, ch_inspect);
        if (*sc_sum) return cmd_sum(sum_spec, sum_char, sum_etas, sum_alpha, sum_t, sum_limit, sum_out, sum_meta);
        if (*sc_bounds) return cmd_bounds(b_m, b_alpha);
        if (*sc_gauss) return cmd_gauss(ga_m, ga_idx, ga_a, ga_all);
        if (*sc_dist) return cmd_distance(d_f, d_g, d_twist, d_x, d_y);
        if (*sc_corr) return cmd_correlate(co_spec, co_alpha, co_h, co_x);
        if (*sc_mod) return cmd_modified(mo_char, mo_etas, mo_alpha, mo_ells, mo_br, mo_x);
        if (*sc_cons) return cmd_construct(cn_example, cn_k, cn_alpha, cn_out);
        if (*sc_self) {
            SelfTestOptions opt;
            opt.quick = suite == "quick";
            int failed = run_acceptance(std::cout, opt);
            return failed == 0 ? 0 : 4;
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) { // Domain/Precondition/InvalidConfig
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
