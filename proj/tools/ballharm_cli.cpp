// Command-line driver: every experiment is a subcommand with an explicit
// seed, emitting CSV or JSON.  Exit codes: 0 success, 1 usage error,
// 2 verification failure (report carries witnesses).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballharm/harmonics.hpp"
#include "ballharm/regularity.hpp"
#include "ballharm/series.hpp"
#include "ballharm/specfun.hpp"
#include "ballharm/transmission.hpp"
#include "ballharm/weierstrass.hpp"

using namespace ballharm;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// accepts "1048576", "2^20", "2^-16"
double parse_pow(const std::string& s) {
    const auto caret = s.find('^');
    if (caret == std::string::npos)
        return std::stod(s);
    const double base = std::stod(s.substr(0, caret));
    const double expo = std::stod(s.substr(caret + 1));
    return std::pow(base, expo);
}

int parse_count(const std::string& s) {
    const double v = parse_pow(s);
    if (!(v >= 0.0 && v <= 2147483647.0) || v != std::floor(v))
        throw CLI::ValidationError("expected a nonnegative integer (or 2^j)");
    return static_cast<int>(v);
}

// "0..8" or a single index
std::pair<int, int> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const int k = parse_count(s);
        return {k, k};
    }
    return {parse_count(s.substr(0, dots)), parse_count(s.substr(dots + 2))};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(parse_pow(item));
    return out;
}

std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/')
        return path;
    if (const char* dir = std::getenv("BALLHARM_OUT_DIR"))
        return std::string(dir) + "/" + path;
    return path;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    const std::string resolved = resolve_out(out_path);
    std::ofstream f(resolved);
    if (!f)
        throw std::runtime_error("cannot write " + resolved);
    f << text;
}

BallSeries::Variant variant_arg(const std::string& name) {
    if (name == "notHs") return BallSeries::Variant::notHs;
    if (name == "notCbeta") return BallSeries::Variant::notCbeta;
    if (name == "anyn_holder") return BallSeries::Variant::anyn_holder;
    if (name == "hadamard") return BallSeries::Variant::hadamard_2d;
    throw CLI::ValidationError("unknown variant: " + name);
}

struct Common {
    std::string format = "csv";
    std::string out;
    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out,
                        "output file (default stdout; relative paths resolve "
                        "against $BALLHARM_OUT_DIR)");
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic-series experiments on the unit ball"};
    app.require_subcommand(1);
    app.set_config("--config");

    // ---- dims ----
    auto* dims = app.add_subcommand("dims", "degrees, dimensions d_k, eigenvalues mu_k");
    int dims_n = 3;
    std::string dims_k = "0..8";
    Common dims_c;
    dims->add_option("--n", dims_n, "ambient dimension");
    dims->add_option("--k", dims_k, "degree or range a..b");
    dims_c.attach(dims);

    // ---- eval ----
    auto* ev = app.add_subcommand("eval", "evaluate a series at points");
    std::string ev_variant = "notCbeta", ev_K = "64";
    int ev_n = 3;
    std::uint64_t ev_seed = 0;
    double ev_alpha = 0.5, ev_scale = 1.0, ev_tol = 1e30;
    bool ev_kelvin = false;
    std::vector<std::string> ev_points;
    Common ev_c;
    ev->add_option("--variant", ev_variant, "notHs|notCbeta|anyn_holder|hadamard");
    ev->add_option("--n", ev_n, "ambient dimension");
    ev->add_option("--K", ev_K, "truncation degree (accepts 2^j)");
    ev->add_option("--seed", ev_seed, "seed for the notHs variant");
    ev->add_option("--alpha", ev_alpha, "exponent for anyn_holder");
    ev->add_option("--scale", ev_scale, "global coefficient scale");
    ev->add_flag("--kelvin", ev_kelvin, "evaluate the Kelvin transform (r >= 1)");
    ev->add_option("--point", ev_points, "comma-separated coordinates (repeatable)")
        ->required();
    ev->add_option("--tol", ev_tol, "tail tolerance for the within_tol column");
    ev_c.attach(ev);

    // ---- spectrum ----
    auto* sp = app.add_subcommand("spectrum", "quadrature harmonic coefficients by degree");
    std::string sp_variant = "notCbeta", sp_K = "32";
    int sp_n = 3, sp_degree = 0;
    std::uint64_t sp_seed = 0;
    double sp_alpha = 0.5;
    Common sp_c;
    sp->add_option("--variant", sp_variant);
    sp->add_option("--n", sp_n)->check(CLI::Range(2, 3));
    sp->add_option("--K", sp_K, "truncation degree");
    sp->add_option("--degree", sp_degree, "quadrature exactness (default 2K+8)");
    sp->add_option("--seed", sp_seed);
    sp->add_option("--alpha", sp_alpha);
    sp_c.attach(sp);

    // ---- sobolev ----
    auto* so = app.add_subcommand("sobolev", "dyadic partial-sum scan of the H^sigma series");
    std::string so_variant = "notCbeta", so_K = "2^20", so_sigma = "0.25";
    int so_n = 3;
    std::uint64_t so_seed = 0;
    double so_alpha = 0.5;
    Common so_c;
    so->add_option("--variant", so_variant);
    so->add_option("--n", so_n);
    so->add_option("--K", so_K, "largest degree (accepts 2^j)");
    so->add_option("--sigma", so_sigma, "comma-separated sigma grid");
    so->add_option("--seed", so_seed);
    so->add_option("--alpha", so_alpha);
    so_c.attach(so);

    // ---- energy ----
    auto* en = app.add_subcommand("energy", "Dirichlet energy of the lacunary disk series");
    int en_terms = 4;
    Common en_c;
    en->add_option("--terms", en_terms, "number of retained dyadic terms J")
        ->check(CLI::Range(1, 15));
    en_c.attach(en);

    // ---- holder ----
    auto* ho = app.add_subcommand("holder", "empirical modulus of continuity");
    std::string ho_law = "weierstrass", ho_dmin = "2^-16", ho_dmax = "2^-4";
    int ho_b = 2, ho_trunc = 52, ho_samples = 100000;
    double ho_alpha = 0.5;
    std::uint64_t ho_seed = 1;
    Common ho_c;
    ho->add_option("--law", ho_law)->check(CLI::IsMember({"weierstrass", "hardy"}));
    ho->add_option("--b", ho_b, "lacunary base");
    ho->add_option("--alpha", ho_alpha);
    ho->add_option("--truncation", ho_trunc);
    ho->add_option("--samples", ho_samples);
    ho->add_option("--delta-min", ho_dmin, "smallest scale (accepts 2^-j)");
    ho->add_option("--delta-max", ho_dmax, "largest scale");
    ho->add_option("--seed", ho_seed);
    ho_c.attach(ho);

    // ---- fourier ----
    auto* fo = app.add_subcommand("fourier", "windowed Fourier-decay certificate");
    std::string fo_law = "hardy", fo_N = "2^18", fo_alphas = "0.05,0.1,0.2";
    int fo_b = 2, fo_trunc = 52;
    double fo_walpha = 0.5;
    Common fo_c;
    fo->add_option("--law", fo_law)->check(CLI::IsMember({"weierstrass", "hardy"}));
    fo->add_option("--b", fo_b);
    fo->add_option("--alpha", fo_walpha, "weierstrass-law amplitude exponent");
    fo->add_option("--truncation", fo_trunc);
    fo->add_option("--N", fo_N, "sample count, power of two");
    fo->add_option("--test-alpha", fo_alphas, "comma-separated decay exponents to test");
    fo_c.attach(fo);

    // ---- weierstrass ----
    auto* we = app.add_subcommand("weierstrass", "evaluate a lacunary cosine series");
    std::string we_law = "weierstrass", we_points = "0";
    int we_b = 2, we_trunc = 52;
    double we_alpha = 0.5;
    Common we_c;
    we->add_option("--law", we_law)->check(CLI::IsMember({"weierstrass", "hardy"}));
    we->add_option("--b", we_b);
    we->add_option("--alpha", we_alpha);
    we->add_option("--truncation", we_trunc);
    we->add_option("--t", we_points, "comma-separated arguments");
    we_c.attach(we);

    // ---- neuheisel-sample ----
    auto* ne = app.add_subcommand("neuheisel-sample",
                                  "sup norms of random unit spherical harmonics");
    std::string ne_k = "64,256,1024";
    int ne_n = 3, ne_seeds = 20, ne_grid = 1 << 16;
    std::uint64_t ne_seed0 = 1;
    Common ne_c;
    ne->add_option("--n", ne_n)->check(CLI::Range(3, 3));
    ne->add_option("--k", ne_k, "comma-separated degrees");
    ne->add_option("--seeds", ne_seeds, "number of independent draws per degree");
    ne->add_option("--seed", ne_seed0, "base seed");
    ne->add_option("--grid", ne_grid, "sup-norm grid target");
    ne_c.attach(ne);

    // ---- transmission-verify ----
    auto* tv = app.add_subcommand("transmission-verify",
                                  "five-condition check of a transmission pair");
    std::string tv_variant = "tilde", tv_K = "1024";
    int tv_n = 3, tv_bumps = 5;
    double tv_rho = -1.0, tv_alpha = 0.5;
    std::uint64_t tv_seed = 0;
    Common tv_c;
    tv->add_option("--variant", tv_variant)
        ->check(CLI::IsMember({"example", "tilde", "holder"}));
    tv->add_option("--n", tv_n)->check(CLI::Range(2, 3));
    tv->add_option("--K", tv_K, "truncation degree");
    tv->add_option("--rho", tv_rho, "coefficient scale (default (1-1e-3)/M)");
    tv->add_option("--alpha", tv_alpha, "holder-variant exponent");
    tv->add_option("--seed", tv_seed, "example-variant seed");
    tv->add_option("--bumps", tv_bumps, "number of test bumps (prefix of the default set)")
        ->check(CLI::Range(1, 5));
    tv_c.attach(tv);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dims) {
            auto [k_lo, k_hi] = parse_range(dims_k);
            std::string text;
            if (dims_c.format == "csv") {
                text = "k,d_k,mu_k\n";
                for (int k = k_lo; k <= k_hi; ++k)
                    text += std::to_string(k) + "," +
                            std::to_string(harmonic_dimension(dims_n, k)) + "," +
                            fmt(laplace_beltrami_eigenvalue(dims_n, k)) + "\n";
            } else {
                nlohmann::json rows = nlohmann::json::array();
                for (int k = k_lo; k <= k_hi; ++k)
                    rows.push_back({{"k", k},
                                    {"d_k", harmonic_dimension(dims_n, k)},
                                    {"mu_k", laplace_beltrami_eigenvalue(dims_n, k)}});
                text = rows.dump(2) + "\n";
            }
            emit(dims_c.out, text);
        } else if (*ev) {
            BallSeries u = build_series(variant_arg(ev_variant), ev_n,
                                        parse_count(ev_K), ev_scale, ev_seed, ev_alpha);
            if (ev_kelvin)
                u = kelvin_transform(u);
            std::string csv = "value,tail_bound,within_tol\n";
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& ps : ev_points) {
                const auto x = parse_list(ps);
                const auto r = u.eval(x, ev_tol);
                csv += fmt(r.value) + "," + fmt(r.tail_bound) + "," +
                       (r.within_tol ? "1" : "0") + "\n";
                rows.push_back({{"point", x},
                                {"value", r.value},
                                {"tail_bound", r.tail_bound},
                                {"within_tol", r.within_tol}});
            }
            emit(ev_c.out, ev_c.format == "csv" ? csv : rows.dump(2) + "\n");
        } else if (*sp) {
            const int K = parse_count(sp_K);
            const int degree = sp_degree > 0 ? sp_degree : 2 * K + 8;
            BallSeries u = build_series(variant_arg(sp_variant), sp_n, K, 1.0,
                                        sp_seed, sp_alpha);
            auto rule = build_sphere_quadrature(sp_n, degree, QuadratureMode::product);
            auto sc = spectral_coefficients(
                [&u](std::span<const double> theta) { return u.boundary_eval(theta); },
                sp_n, K, rule);
            std::string csv = "k,degree_power\n";
            nlohmann::json rows = nlohmann::json::array();
            for (int k = 0; k <= K; ++k) {
                csv += std::to_string(k) + "," + fmt(sc.degree_power(k)) + "\n";
                rows.push_back({{"k", k}, {"degree_power", sc.degree_power(k)}});
            }
            emit(sp_c.out, sp_c.format == "csv" ? csv : rows.dump(2) + "\n");
        } else if (*so) {
            BallSeries u = build_series(variant_arg(so_variant), so_n,
                                        parse_count(so_K), 1.0, so_seed, so_alpha);
            const auto sigmas = parse_list(so_sigma);
            auto scans = classify_sobolev(u, sigmas, parse_count(so_K));
            if (so_c.format == "json") {
                std::string text = "[\n";
                for (std::size_t i = 0; i < scans.size(); ++i)
                    text += scans[i].to_json() + (i + 1 < scans.size() ? ",\n" : "\n");
                emit(so_c.out, text + "]\n");
            } else {
                std::string csv =
                    "sigma,verdict,fitted_exponent,r_squared,limit_estimate\n";
                for (const auto& s : scans) {
                    const char* names[] = {"convergent", "divergent",
                                           "divergent_marginal", "inconclusive"};
                    csv += fmt(s.sigma) + "," +
                           names[static_cast<int>(s.verdict)] + "," +
                           fmt(s.fitted_exponent) + "," + fmt(s.r_squared) + "," +
                           fmt(s.limit_estimate) + "\n";
                }
                emit(so_c.out, csv);
            }
        } else if (*en) {
            const int K = 1 << (2 * en_terms); // largest retained degree 4^J
            BallSeries u = build_series(BallSeries::Variant::hadamard_2d, 2, K);
            const double ef = dirichlet_energy_2d(u, K, EnergyMode::formula);
            const double eq = dirichlet_energy_2d(u, K, EnergyMode::quadrature);
            if (en_c.format == "json") {
                nlohmann::json j{{"terms", en_terms},
                                 {"formula", ef},
                                 {"quadrature", eq},
                                 {"per_term", kPi}};
                emit(en_c.out, j.dump(2) + "\n");
            } else {
                emit(en_c.out, "terms,formula,quadrature\n" +
                                   std::to_string(en_terms) + "," + fmt(ef) + "," +
                                   fmt(eq) + "\n");
            }
        } else if (*ho) {
            const auto series =
                ho_law == "weierstrass"
                    ? LacunaryCosineSeries::weierstrass(ho_b, ho_alpha, ho_trunc)
                    : LacunaryCosineSeries::hardy(ho_b, ho_trunc);
            const double dmin = parse_pow(ho_dmin), dmax = parse_pow(ho_dmax);
            std::vector<double> scales;
            for (double d = dmin; d <= dmax * (1 + 1e-12); d *= 2.0)
                scales.push_back(d);
            auto table = holder_modulus(
                [&series](double t) { return series.eval(t).value; }, scales,
                ho_samples, ho_seed);
            if (ho_c.format == "json") {
                nlohmann::json j{{"delta", table.delta},
                                 {"omega", table.omega},
                                 {"fitted_alpha", table.fitted_alpha},
                                 {"fit_residual", table.fit_residual}};
                emit(ho_c.out, j.dump(2) + "\n");
            } else {
                emit(ho_c.out, table.to_csv() + "# fitted_alpha," +
                                   fmt(table.fitted_alpha) + "\n");
            }
        } else if (*fo) {
            const auto series =
                fo_law == "weierstrass"
                    ? LacunaryCosineSeries::weierstrass(fo_b, fo_walpha, fo_trunc)
                    : LacunaryCosineSeries::hardy(fo_b, fo_trunc);
            const int N = parse_count(fo_N);
            std::vector<double> samples(static_cast<std::size_t>(N));
            for (int i = 0; i < N; ++i)
                samples[static_cast<std::size_t>(i)] =
                    series.eval(2.0 * kPi * i / N).value;
            std::string text = "[\n";
            bool first = true;
            for (double a : parse_list(fo_alphas)) {
                auto cert = fourier_decay_certificate(samples, a);
                if (!first)
                    text += ",\n";
                first = false;
                text += cert.to_json();
            }
            emit(fo_c.out, text + "\n]\n");
        } else if (*we) {
            const auto series =
                we_law == "weierstrass"
                    ? LacunaryCosineSeries::weierstrass(we_b, we_alpha, we_trunc)
                    : LacunaryCosineSeries::hardy(we_b, we_trunc);
            std::string csv = "t,value,tail_bound\n";
            nlohmann::json rows = nlohmann::json::array();
            for (double t : parse_list(we_points)) {
                const auto r = series.eval(t);
                csv += fmt(t) + "," + fmt(r.value) + "," + fmt(r.tail_bound) + "\n";
                rows.push_back(
                    {{"t", t}, {"value", r.value}, {"tail_bound", r.tail_bound}});
            }
            emit(we_c.out, we_c.format == "csv" ? csv : rows.dump(2) + "\n");
        } else if (*ne) {
            std::string csv = "k,seed,sup_estimate,ratio,median_ratio\n";
            nlohmann::json rows = nlohmann::json::array();
            for (double kd : parse_list(ne_k)) {
                const int k = static_cast<int>(kd);
                std::vector<double> ratios;
                std::vector<std::pair<std::uint64_t, double>> sups;
                for (int i = 0; i < ne_seeds; ++i) {
                    const std::uint64_t seed = ne_seed0 + static_cast<std::uint64_t>(i);
                    auto y = HarmonicFunction::random_unit(ne_n, k, seed);
                    const double sup = estimate_sup_norm(y, ne_grid);
                    sups.emplace_back(seed, sup);
                    ratios.push_back(sup / std::sqrt(std::log(static_cast<double>(k))));
                }
                auto sorted = ratios;
                std::sort(sorted.begin(), sorted.end());
                const double median =
                    ne_seeds % 2 ? sorted[static_cast<std::size_t>(ne_seeds / 2)]
                                 : 0.5 * (sorted[static_cast<std::size_t>(ne_seeds / 2 - 1)] +
                                          sorted[static_cast<std::size_t>(ne_seeds / 2)]);
                for (int i = 0; i < ne_seeds; ++i) {
                    csv += std::to_string(k) + "," + std::to_string(sups[static_cast<std::size_t>(i)].first) +
                           "," + fmt(sups[static_cast<std::size_t>(i)].second) + "," +
                           fmt(ratios[static_cast<std::size_t>(i)]) + "," + fmt(median) + "\n";
                    rows.push_back({{"k", k},
                                    {"seed", sups[static_cast<std::size_t>(i)].first},
                                    {"sup_estimate", sups[static_cast<std::size_t>(i)].second},
                                    {"ratio", ratios[static_cast<std::size_t>(i)]},
                                    {"median_ratio", median}});
                }
            }
            emit(ne_c.out, ne_c.format == "csv" ? csv : rows.dump(2) + "\n");
        } else if (*tv) {
            TransmissionInstance::Variant v = TransmissionInstance::Variant::tilde;
            if (tv_variant == "example")
                v = TransmissionInstance::Variant::example;
            else if (tv_variant == "holder")
                v = TransmissionInstance::Variant::holder;
            auto inst = TransmissionInstance::build(v, tv_n, parse_count(tv_K),
                                                    tv_rho, tv_seed, tv_alpha);
            auto bumps = default_bump_set(tv_n);
            bumps.resize(static_cast<std::size_t>(tv_bumps),
                         BumpTestFunction({0.3, 0.0}, 0.25));
            auto report = verify_instance(inst, bumps);
            emit(tv_c.out, report.to_json() + "\n");
            if (!report.all_pass) {
                // witnesses live in the report; make sure they also reach stderr
                for (const auto& c : report.conditions)
                    for (const auto& w : c.witnesses)
                        std::cerr << c.name << ": " << w << "\n";
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
