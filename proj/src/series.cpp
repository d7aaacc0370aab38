#include "ballharm/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "ballharm/specfun.hpp"

namespace ballharm {

namespace {

std::complex<double> complex_pow(std::complex<double> z, int k) {
    std::complex<double> r(1.0, 0.0);
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1)
            r *= z;
        z *= z;
    }
    return r;
}

double norm2_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

} // namespace

CoefficientSchedule CoefficientSchedule::dyadic_inverse_square(double scale) {
    return CoefficientSchedule(Variant::dyadic_inverse_square, 0.0, scale);
}

CoefficientSchedule CoefficientSchedule::dyadic_holder(double alpha, double scale) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("CoefficientSchedule: alpha must lie in (0,1)");
    return CoefficientSchedule(Variant::dyadic_holder, alpha, scale);
}

CoefficientSchedule CoefficientSchedule::hadamard(double scale) {
    return CoefficientSchedule(Variant::hadamard, 0.0, scale);
}

CoefficientSchedule CoefficientSchedule::custom(
    std::vector<std::pair<int, double>> entries, double scale) {
    CoefficientSchedule s(Variant::custom, 0.0, scale);
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 0; i + 1 < entries.size(); ++i)
        if (entries[i].first == entries[i + 1].first)
            throw std::domain_error("CoefficientSchedule: duplicate custom index");
    if (!entries.empty() && entries.front().first < 0)
        throw std::domain_error("CoefficientSchedule: negative index");
    s.entries_ = std::move(entries);
    return s;
}

double CoefficientSchedule::base_coefficient(int k) const {
    if (k < 0)
        throw std::domain_error("CoefficientSchedule: k must be >= 0");
    switch (variant_) {
    case Variant::dyadic_inverse_square:
    case Variant::dyadic_holder: {
        if (k < 2 || (k & (k - 1)) != 0)
            return 0.0;
        int j = 0;
        for (int v = k; v > 1; v >>= 1)
            ++j;
        return variant_ == Variant::dyadic_inverse_square
                   ? 1.0 / (static_cast<double>(j) * j)
                   : std::exp2(-alpha_ * j);
    }
    case Variant::hadamard: {
        // nonzero at k = 2^{2j} = 4^j, j >= 1
        if (k < 4)
            return 0.0;
        int v = k, j = 0;
        while (v % 4 == 0) {
            v /= 4;
            ++j;
        }
        if (v != 1)
            return 0.0;
        return std::exp2(-static_cast<double>(j));
    }
    case Variant::custom:
        for (const auto& [kk, a] : entries_)
            if (kk == k)
                return a;
        return 0.0;
    }
    throw std::logic_error("CoefficientSchedule: unknown variant");
}

double CoefficientSchedule::coefficient(int k) const {
    return scale_ * base_coefficient(k);
}

std::vector<int> CoefficientSchedule::support(int k_max) const {
    std::vector<int> ks;
    switch (variant_) {
    case Variant::dyadic_inverse_square:
    case Variant::dyadic_holder:
        for (long long k = 2; k <= k_max; k *= 2)
            ks.push_back(static_cast<int>(k));
        break;
    case Variant::hadamard:
        for (long long k = 4; k <= k_max; k *= 4)
            ks.push_back(static_cast<int>(k));
        break;
    case Variant::custom:
        for (const auto& [k, a] : entries_)
            if (k <= k_max)
                ks.push_back(k);
        break;
    }
    return ks;
}

double CoefficientSchedule::tail_abs(int k_max) const {
    const auto ks = support(k_max);
    const int count = static_cast<int>(ks.size()); // = J, the last included j
    switch (variant_) {
    case Variant::dyadic_inverse_square:
        // sum_{j > J} j^{-2} <= integral bound 1/J
        return count == 0 ? kPi * kPi / 6.0 : 1.0 / count;
    case Variant::dyadic_holder:
        // geometric: sum_{j > J} 2^{-j alpha}
        return std::exp2(-alpha_ * (count + 1)) / (1.0 - std::exp2(-alpha_));
    case Variant::hadamard:
        // sum_{j > J} 2^{-j} = 2^{-J}
        return std::exp2(-static_cast<double>(count));
    case Variant::custom:
        return 0.0;
    }
    throw std::logic_error("CoefficientSchedule: unknown variant");
}

namespace {

CoefficientSchedule schedule_for(BallSeries::Variant variant, double alpha,
                                 std::vector<std::pair<int, double>> entries) {
    switch (variant) {
    case BallSeries::Variant::notHs:
    case BallSeries::Variant::notCbeta:
        return CoefficientSchedule::dyadic_inverse_square();
    case BallSeries::Variant::anyn_holder:
        return CoefficientSchedule::dyadic_holder(alpha);
    case BallSeries::Variant::hadamard_2d:
        return CoefficientSchedule::hadamard();
    case BallSeries::Variant::custom:
        return CoefficientSchedule::custom(std::move(entries));
    }
    throw std::logic_error("build_series: unknown variant");
}

int smallest_omitted(BallSeries::Variant variant, int k_max) {
    if (variant == BallSeries::Variant::custom)
        return 0;
    const long long step = variant == BallSeries::Variant::hadamard_2d ? 4 : 2;
    long long k = step;
    while (k <= k_max)
        k *= step;
    return static_cast<int>(std::min<long long>(k, 1LL << 30));
}

} // namespace

BallSeries build_series(BallSeries::Variant variant, int n, int k_max, double scale,
                        std::uint64_t seed, double alpha,
                        std::vector<std::pair<int, double>> custom_entries) {
    if (n < 2)
        throw std::domain_error("build_series: n must be >= 2");
    if (k_max < 0)
        throw std::domain_error("build_series: k_max must be >= 0");
    if (variant == BallSeries::Variant::hadamard_2d && n != 2)
        throw std::domain_error("build_series: hadamard_2d requires n = 2");
    if (variant == BallSeries::Variant::notHs && n != 2 && n != 3)
        throw std::domain_error("build_series: notHs requires n in {2,3}");
    if (variant == BallSeries::Variant::notHs && n == 3 && k_max > 2048)
        throw std::domain_error(
            "build_series: notHs with n = 3 is limited to k_max <= 2048 "
            "(per-term sup-norm grids become too expensive beyond)");

    const CoefficientSchedule sched =
        schedule_for(variant, alpha, std::move(custom_entries));

    BallSeries u;
    u.n_ = n;
    u.variant_ = variant;
    u.scale_ = scale;
    u.alpha_ = alpha;
    u.seed_ = seed;
    u.k_max_ = k_max;
    u.k_next_ = smallest_omitted(variant, k_max);
    u.r_min_ = 0.0;
    u.r_max_ = 1.0;

    for (int k : sched.support(k_max)) {
        SeriesTerm term{k, sched.base_coefficient(k),
                        variant == BallSeries::Variant::notHs
                            ? HarmonicFunction::random_unit(n, k, seed)
                            : HarmonicFunction::highest_weight(n, k),
                        1.0};
        if (variant == BallSeries::Variant::notHs) {
            if (n == 2) {
                // exact amplitude of c cos(kt)/sqrt(pi) + s sin(kt)/sqrt(pi)
                const auto& c = term.y.coefficients();
                term.sup_bound = std::hypot(c[0], c[1]) / std::sqrt(kPi);
            } else {
                term.sup_bound = estimate_sup_norm(term.y, 1 << 16);
            }
        } else {
            term.sup_bound = term.y.sup_norm_bound(); // = 1 for Q_k
        }
        u.terms_.push_back(std::move(term));
    }

    if (variant == BallSeries::Variant::notHs) {
        // Empirical tail model: sup|Y_{2^j}| <= C sqrt(j ln 2) with C taken
        // from the retained terms, so sum_{j > J} j^{-2} sup_j <=
        // C sqrt(ln 2) sum_{j > J} j^{-3/2} <= 2 C sqrt(ln 2) / sqrt(J).
        // This is a spot-check certificate, not a proof (single draws carry
        // no almost-sure guarantee).
        double c_hat = 1.0 / std::sqrt(kPi * std::numbers::ln2);
        int j = 0;
        for (const auto& t : u.terms_) {
            ++j;
            c_hat = std::max(c_hat, t.sup_bound / std::sqrt(j * std::numbers::ln2));
        }
        const int last_j = static_cast<int>(u.terms_.size());
        u.base_tail_sup_ =
            last_j == 0 ? c_hat * std::sqrt(std::numbers::ln2) * 2.0
                        : c_hat * std::sqrt(std::numbers::ln2) * 2.0 / std::sqrt(last_j);
    } else {
        u.base_tail_sup_ = sched.tail_abs(k_max); // sup|Q_k| = 1
    }
    return u;
}

double BallSeries::tail_sup_bound() const { return std::abs(scale_) * base_tail_sup_; }

double BallSeries::normal_convergence_bound() const {
    double s = base_tail_sup_;
    for (const auto& t : terms_)
        s += std::abs(t.a) * t.sup_bound;
    return std::abs(scale_) * s;
}

BallSeries::EvalResult BallSeries::eval(std::span<const double> x, double tol) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::domain_error("BallSeries::eval: dimension mismatch");
    if (!(tol > 0.0))
        throw std::domain_error("BallSeries::eval: tol must be positive");
    const double r = norm2_of(x);
    const double eps = 1e-12;
    if (r < r_min_ - eps || r > r_max_ + eps)
        throw std::domain_error("BallSeries::eval: point outside radial validity");

    double acc = 0.0;
    if (variant_ != Variant::notHs) {
        // every non-random variant pairs with Q_k, for which
        // r^k Q_k(theta) = Re((x_1 + i x_2)^k) exactly
        const std::complex<double> z(x[0], x[1]);
        if (radial_ == Radial::interior) {
            for (const auto& t : terms_)
                acc += t.a * complex_pow(z, t.k).real();
        } else {
            const std::complex<double> w = r > 0.0 ? z / r : z;
            for (const auto& t : terms_)
                acc += t.a * complex_pow(w, t.k).real() *
                       std::pow(r, static_cast<double>(2 - n_ - t.k));
        }
    } else if (r < 1e-300) {
        for (const auto& t : terms_)
            if (t.k == 0)
                acc += t.a; // no such terms for the dyadic schedules
    } else {
        std::vector<double> theta(x.begin(), x.end());
        for (double& v : theta)
            v /= r;
        for (const auto& t : terms_) {
            const double e = radial_ == Radial::interior
                                 ? static_cast<double>(t.k)
                                 : static_cast<double>(2 - n_ - t.k);
            acc += t.a * std::pow(r, e) * t.y.eval(theta);
        }
    }

    double tail = base_tail_sup_;
    if (k_next_ > 0) {
        if (radial_ == Radial::interior && r <= 0.99)
            tail *= std::pow(r, static_cast<double>(k_next_));
        else if (radial_ == Radial::kelvin && r >= 1.0 / 0.99)
            tail *= std::pow(r, static_cast<double>(2 - n_ - k_next_));
    }
    tail *= std::abs(scale_);
    return EvalResult{scale_ * acc, tail, tail <= tol};
}

double BallSeries::boundary_eval(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != n_)
        throw std::domain_error("BallSeries::boundary_eval: dimension mismatch");
    double acc = 0.0;
    if (variant_ != Variant::notHs) {
        const std::complex<double> z(theta[0], theta[1]);
        for (const auto& t : terms_)
            acc += t.a * complex_pow(z, t.k).real();
    } else {
        for (const auto& t : terms_)
            acc += t.a * t.y.eval(theta);
    }
    return scale_ * acc;
}

BallSeries BallSeries::scaled(double factor) const {
    BallSeries v = *this;
    v.scale_ *= factor;
    return v;
}

BallSeries kelvin_transform(const BallSeries& u) {
    if (u.radial_ == BallSeries::Radial::kelvin)
        throw std::domain_error(
            "kelvin_transform: series already transformed (one layer supported)");
    BallSeries v = u;
    v.radial_ = BallSeries::Radial::kelvin;
    v.r_min_ = 1.0;
    v.r_max_ = std::numeric_limits<double>::infinity();
    return v;
}

namespace {

const char* variant_name(BallSeries::Variant v) {
    switch (v) {
    case BallSeries::Variant::notHs: return "notHs";
    case BallSeries::Variant::notCbeta: return "notCbeta";
    case BallSeries::Variant::anyn_holder: return "anyn_holder";
    case BallSeries::Variant::hadamard_2d: return "hadamard_2d";
    case BallSeries::Variant::custom: return "custom";
    }
    throw std::logic_error("variant_name: unknown variant");
}

BallSeries::Variant variant_from_name(const std::string& s) {
    if (s == "notHs") return BallSeries::Variant::notHs;
    if (s == "notCbeta") return BallSeries::Variant::notCbeta;
    if (s == "anyn_holder") return BallSeries::Variant::anyn_holder;
    if (s == "hadamard_2d") return BallSeries::Variant::hadamard_2d;
    if (s == "custom") return BallSeries::Variant::custom;
    throw std::domain_error("BallSeries::from_json: unknown variant '" + s + "'");
}

} // namespace

std::string BallSeries::to_json() const {
    nlohmann::json j;
    j["dim"] = n_;
    j["variant"] = variant_name(variant_);
    j["scale"] = scale_;
    j["k_max"] = k_max_;
    j["radial"] = radial_ == Radial::interior ? "interior" : "kelvin";
    if (variant_ == Variant::notHs)
        j["seed"] = seed_;
    if (variant_ == Variant::anyn_holder)
        j["alpha"] = alpha_;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : terms_)
        terms.push_back({{"k", t.k}, {"a", t.a}});
    j["terms"] = std::move(terms);
    return j.dump(2);
}

BallSeries BallSeries::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const auto variant = variant_from_name(j.at("variant").get<std::string>());
    const int n = j.at("dim").get<int>();
    const int k_max = j.at("k_max").get<int>();
    const double scale = j.at("scale").get<double>();
    const std::uint64_t seed =
        j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    const double alpha = j.contains("alpha") ? j.at("alpha").get<double>() : 0.0;

    std::vector<std::pair<int, double>> entries;
    if (variant == Variant::custom)
        for (const auto& t : j.at("terms"))
            entries.emplace_back(t.at("k").get<int>(), t.at("a").get<double>());

    BallSeries u = build_series(variant, n, k_max, scale, seed, alpha, entries);
    if (u.terms_.size() != j.at("terms").size())
        throw std::domain_error("BallSeries::from_json: term count mismatch");
    if (j.at("radial").get<std::string>() == "kelvin")
        return kelvin_transform(u);
    return u;
}

namespace {

double fd_laplacian(const std::function<double(std::span<const double>)>& f, int n,
                    std::span<const double> x, double h) {
    std::vector<double> p(x.begin(), x.end());
    double acc = -2.0 * n * f(x);
    for (int d = 0; d < n; ++d) {
        const double saved = p[static_cast<std::size_t>(d)];
        p[static_cast<std::size_t>(d)] = saved + h;
        acc += f(p);
        p[static_cast<std::size_t>(d)] = saved - h;
        acc += f(p);
        p[static_cast<std::size_t>(d)] = saved;
    }
    return acc / (h * h);
}

} // namespace

double check_harmonic_fd(const BallSeries& u,
                         const std::vector<std::vector<double>>& points, double h) {
    if (!(h > 0.0))
        throw std::domain_error("check_harmonic_fd: h must be positive");
    const int n = u.dim();
    auto f = [&u](std::span<const double> x) { return u.eval(x).value; };
    double worst = 0.0;
    for (const auto& pt : points) {
        if (static_cast<int>(pt.size()) != n)
            throw std::domain_error("check_harmonic_fd: point dimension mismatch");
        const double r = norm2_of(pt);
        const bool interior = u.radial() == BallSeries::Radial::interior;
        if (interior ? (r > u.r_max() - 2.0 * h) : (r < u.r_min() + 2.0 * h))
            throw std::domain_error(
                "check_harmonic_fd: point within 2h of the radial boundary");
        const double res = std::abs(fd_laplacian(f, n, pt, h));
        // local second-derivative scale of the truncated series
        double loc = 0.0;
        for (const auto& t : u.terms()) {
            const double kn = static_cast<double>(t.k + n);
            double radial_factor;
            if (interior)
                radial_factor =
                    t.k >= 2 ? std::pow(std::min(1.0, r + 2.0 * h), t.k - 2) : 1.0;
            else
                radial_factor = std::pow(r - 2.0 * h, 2.0 - n - t.k - 2.0);
            loc += std::abs(u.scale() * t.a) * t.sup_bound * kn * kn * radial_factor;
        }
        loc = std::max(loc, 1e-300);
        worst = std::max(worst, res / loc);
    }
    return worst;
}

double check_harmonic_fd(const std::function<double(std::span<const double>)>& f,
                         int n, const std::vector<std::vector<double>>& points,
                         double h) {
    if (!(h > 0.0))
        throw std::domain_error("check_harmonic_fd: h must be positive");
    double worst = 0.0;
    for (const auto& pt : points) {
        if (static_cast<int>(pt.size()) != n)
            throw std::domain_error("check_harmonic_fd: point dimension mismatch");
        worst = std::max(worst, std::abs(fd_laplacian(f, n, pt, h)));
    }
    return worst;
}

double mean_value_check(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> center, double radius,
                        const QuadratureRule& rule) {
    if (!(radius > 0.0))
        throw std::domain_error("mean_value_check: radius must be positive");
    if (static_cast<int>(center.size()) != rule.dim)
        throw std::domain_error("mean_value_check: dimension mismatch");
    const int n = rule.dim;
    std::vector<double> x(static_cast<std::size_t>(n));
    double avg = 0.0, total_w = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        auto theta = rule.node(i);
        for (int d = 0; d < n; ++d)
            x[static_cast<std::size_t>(d)] =
                center[static_cast<std::size_t>(d)] +
                radius * theta[static_cast<std::size_t>(d)];
        avg += rule.weights[i] * f(x);
        total_w += rule.weights[i];
    }
    avg /= total_w;
    return std::abs(avg - f(center));
}

double mean_value_check(const BallSeries& u, std::span<const double> center,
                        double radius, const QuadratureRule& rule) {
    const double rc = norm2_of(center);
    const double eps = 1e-12;
    if (u.radial() == BallSeries::Radial::interior) {
        if (rc + radius > u.r_max() + eps)
            throw std::domain_error("mean_value_check: ball not inside the region");
    } else if (rc - radius < u.r_min() - eps) {
        throw std::domain_error("mean_value_check: ball not inside the region");
    }
    auto f = [&u](std::span<const double> x) { return u.eval(x).value; };
    return mean_value_check(f, center, radius, rule);
}

} // namespace ballharm
