#ifndef QPOW_FORECAST_HPP
#define QPOW_FORECAST_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qpow {

/// Doubling period that reproduces the ~27 year Bitcoin crossover from
/// 130 EH/s vs a 40 MHz device. Reverse-engineered, not a measured constant.
inline constexpr double kDefaultDoublingYears = 1.66;

/// Classical hash rate matched by a Grover device running `clock_rate`
/// oracle calls per second over a search window: (c w)^2 / w.
double equivalent_hash_rate(double clock_rate, double window_s = 1.0);

/// Exponential (Moore's law) trajectory. When `quadratic_equivalent` is set
/// the trajectory is a device clock rate and the reported rate is its
/// Grover-equivalent hash rate.
struct GrowthModel {
    double initial_rate = 1.0;
    double doubling_years = kDefaultDoublingYears;
    bool quadratic_equivalent = false;
    double window_s = 1.0;

    void validate() const;
    double rate_at(double years) const;
};

struct SeriesPoint {
    double year = 0.0;
    double rate = 0.0;
};

/// Samples at 0, step, 2*step, ... up to and including horizon.
std::vector<SeriesPoint> extrapolate_series(const GrowthModel& model, double horizon_years,
                                            double step_years);

struct CrossoverSample {
    double year = 0.0;
    double network_rate = 0.0;
    double quantum_rate = 0.0;
};

struct CrossoverResult {
    double years_until_crossover = 0.0; // closed form
    bool already_crossed = false;
    std::optional<double> scan_crossover_years; // first sample at or past the crossover
    std::vector<CrossoverSample> series;
};

struct CrossoverOptions {
    double horizon_years = 40.0;
    double step_years = 0.1;
};

/// Earliest year at which a single quantum device's equivalent rate meets
/// the whole network. Throws Domain when the curves never meet.
CrossoverResult crossover_time(const GrowthModel& network, const GrowthModel& quantum,
                               const CrossoverOptions& options = {});

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

class PolyFit {
public:
    PolyFit() = default;

    /// Wraps known ascending-power coefficients (no fit residual).
    static PolyFit from_coefficients(std::vector<double> coefficients);

    std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    double residual_rms() const noexcept { return residual_rms_; }
    double evaluate(double x) const;

private:
    friend PolyFit fit_polynomial(std::span<const Point2>, std::size_t);

    std::vector<double> coeffs_;   // powers of x
    std::vector<double> centered_; // powers of (x - center_)
    double center_ = 0.0;
    double residual_rms_ = 0.0;
};

/// Ordinary least squares on mean-centred abscissae.
PolyFit fit_polynomial(std::span<const Point2> points, std::size_t degree);

/// Evaluates the fit at `x`; a non-positive difficulty is a Domain error.
double extrapolate_difficulty(const PolyFit& fit, double x);

} // namespace qpow

#endif // QPOW_FORECAST_HPP
