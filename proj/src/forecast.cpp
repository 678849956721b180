#include "qpow/forecast.hpp"

#include "qpow/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace qpow {

double equivalent_hash_rate(double clock_rate, double window_s) {
    require(std::isfinite(clock_rate) && clock_rate > 0.0, "clock rate must be positive");
    require(std::isfinite(window_s) && window_s > 0.0, "window must be positive");
    const double calls = clock_rate * window_s;
    return checked(calls * calls / window_s, "equivalent hash rate");
}

void GrowthModel::validate() const {
    require(std::isfinite(initial_rate) && initial_rate > 0.0, "initial rate must be positive");
    require(std::isfinite(doubling_years) && doubling_years > 0.0, "doubling period must be positive");
    require(std::isfinite(window_s) && window_s > 0.0, "window must be positive");
}

double GrowthModel::rate_at(double years) const {
    const double grown = initial_rate * std::exp2(years / doubling_years);
    return quadratic_equivalent ? equivalent_hash_rate(grown, window_s) : checked(grown, "growth rate");
}

namespace {

std::size_t sample_count(double horizon_years, double step_years) {
    require(std::isfinite(step_years) && step_years > 0.0, "step must be positive");
    require(std::isfinite(horizon_years) && horizon_years >= step_years, "horizon must be at least one step");
    // Tolerate horizon/step landing a hair below an integer.
    return static_cast<std::size_t>(std::floor(horizon_years / step_years + 1e-9)) + 1;
}

} // namespace

std::vector<SeriesPoint> extrapolate_series(const GrowthModel& model, double horizon_years,
                                            double step_years) {
    model.validate();
    const std::size_t n = sample_count(horizon_years, step_years);
    std::vector<SeriesPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = static_cast<double>(i) * step_years;
        out.push_back({y, model.rate_at(y)});
    }
    return out;
}

CrossoverResult crossover_time(const GrowthModel& network, const GrowthModel& quantum,
                               const CrossoverOptions& options) {
    network.validate();
    quantum.validate();
    require(!network.quadratic_equivalent, "network trajectory must be a plain hash rate");
    require(quantum.quadratic_equivalent, "quantum trajectory must use the equivalent rate");

    CrossoverResult result;
    const double net0 = network.rate_at(0.0);
    const double q0 = quantum.rate_at(0.0);
    if (q0 >= net0) {
        result.already_crossed = true;
        result.years_until_crossover = 0.0;
    } else {
        // log2 growth per year: quantum equivalent grows twice as fast as its clock.
        const double gap_growth = 2.0 / quantum.doubling_years - 1.0 / network.doubling_years;
        if (gap_growth <= 0.0)
            raise(ErrorCode::Domain, "quantum equivalent rate never reaches the network rate");
        result.years_until_crossover = std::log2(net0 / q0) / gap_growth;
    }

    const std::size_t n = sample_count(options.horizon_years, options.step_years);
    result.series.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = static_cast<double>(i) * options.step_years;
        CrossoverSample s{y, network.rate_at(y), quantum.rate_at(y)};
        if (!result.scan_crossover_years && s.quantum_rate >= s.network_rate)
            result.scan_crossover_years = y;
        result.series.push_back(s);
    }
    return result;
}

PolyFit PolyFit::from_coefficients(std::vector<double> coefficients) {
    require(!coefficients.empty(), "polynomial needs at least one coefficient");
    PolyFit fit;
    fit.coeffs_ = coefficients;
    fit.centered_ = std::move(coefficients);
    return fit;
}

double PolyFit::evaluate(double x) const {
    require(!centered_.empty(), "polynomial has no coefficients");
    const double u = x - center_;
    double acc = 0.0;
    for (auto it = centered_.rbegin(); it != centered_.rend(); ++it) acc = acc * u + *it;
    return acc;
}

PolyFit fit_polynomial(std::span<const Point2> points, std::size_t degree) {
    const std::size_t cols = degree + 1;
    if (points.size() < cols)
        raise(ErrorCode::InvalidArgument, "need at least " + std::to_string(cols) + " points for degree "
                                              + std::to_string(degree) + ", got "
                                              + std::to_string(points.size()));
    for (const auto& p : points)
        require(std::isfinite(p.x) && std::isfinite(p.y), "fit points must be finite");

    std::vector<double> xs;
    xs.reserve(points.size());
    double mean = 0.0;
    for (const auto& p : points) {
        xs.push_back(p.x);
        mean += p.x;
    }
    mean /= static_cast<double>(points.size());
    std::sort(xs.begin(), xs.end());
    const auto distinct = static_cast<std::size_t>(std::unique(xs.begin(), xs.end()) - xs.begin());
    if (distinct < cols)
        raise(ErrorCode::SingularFit, "only " + std::to_string(distinct) + " distinct x values for degree "
                                          + std::to_string(degree));

    const auto rows = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(cols));
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double u = points[static_cast<std::size_t>(i)].x - mean;
        double pw = 1.0;
        for (std::size_t j = 0; j < cols; ++j) {
            design(i, static_cast<Eigen::Index>(j)) = pw;
            pw *= u;
        }
        rhs(i) = points[static_cast<std::size_t>(i)].y;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < static_cast<Eigen::Index>(cols))
        raise(ErrorCode::SingularFit, "design matrix is rank deficient");
    const Eigen::VectorXd solution = qr.solve(rhs);
    const Eigen::VectorXd residual = design * solution - rhs;

    PolyFit fit;
    fit.center_ = mean;
    fit.centered_.assign(solution.data(), solution.data() + solution.size());
    fit.residual_rms_ = std::sqrt(residual.squaredNorm() / static_cast<double>(rows));

    // Expand sum_k c_k (x - m)^k into powers of x.
    fit.coeffs_.assign(cols, 0.0);
    for (std::size_t k = 0; k < cols; ++k) {
        double binom = 1.0;
        for (std::size_t j = 0; j <= k; ++j) {
            if (j > 0) binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
            fit.coeffs_[j] += fit.centered_[k] * binom * std::pow(-mean, static_cast<double>(k - j));
        }
    }
    for (double c : fit.coeffs_) checked(c, "polynomial coefficient");
    return fit;
}

double extrapolate_difficulty(const PolyFit& fit, double x) {
    require(std::isfinite(x), "extrapolation abscissa must be finite");
    const double d = checked(fit.evaluate(x), "extrapolated difficulty");
    if (d <= 0.0)
        raise(ErrorCode::Domain, "extrapolated difficulty is not positive; try a different degree or data range");
    return d;
}

} // namespace qpow
