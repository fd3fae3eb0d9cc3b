#include "cdnet/physics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdnet::physics {

namespace {

void require_fidelity(double F, const char* what)
{
    if (!(F >= 0.25 && F <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": fidelity must lie in [0.25, 1], got " +
                                    std::to_string(F));
    }
}

}  // namespace

void FidelityParams::validate() const
{
    if (!(T > 0.0)) {
        throw std::invalid_argument("T must be positive");
    }
    if (M < 1) {
        throw std::invalid_argument("M must be >= 1");
    }
    if (!(F_new > 0.25 && F_new <= 1.0)) {
        throw std::invalid_argument("F_new must lie in (0.25, 1]");
    }
    if (!(F_app > 0.25 && F_app <= F_new)) {
        throw std::invalid_argument("F_app must lie in (0.25, F_new]");
    }
}

double werner_parameter(double F) { return (4.0 * F - 1.0) / 3.0; }

double fidelity_from_werner(double w) { return 0.25 + 0.75 * w; }

double decayed_fidelity(double F, double dt, double T)
{
    require_fidelity(F, "decayed_fidelity");
    if (!(dt >= 0.0)) {
        throw std::invalid_argument("decayed_fidelity: elapsed time must be >= 0");
    }
    if (!(T > 0.0)) {
        throw std::invalid_argument("decayed_fidelity: T must be positive");
    }
    return 0.25 + (F - 0.25) * std::exp(-dt / T);
}

double swap_fidelity(double F1, double F2)
{
    require_fidelity(F1, "swap_fidelity");
    require_fidelity(F2, "swap_fidelity");
    return F1 * F2 + (1.0 - F1) * (1.0 - F2) / 3.0;
}

double max_cutoff(const FidelityParams& params)
{
    params.validate();
    const double arg = (3.0 / (4.0 * params.F_new - 1.0)) *
                       std::pow((4.0 * params.F_app - 1.0) / 3.0, 1.0 / params.M);
    const double bound = -params.T * std::log(arg);
    if (!(bound > 0.0)) {
        throw std::domain_error("max_cutoff: F_app is unreachable with F_new and M (bound " +
                                std::to_string(bound) + " <= 0)");
    }
    return bound;
}

int integer_cutoff(const FidelityParams& params)
{
    const double bound = max_cutoff(params);
    const double t = std::floor(bound);
    if (t < 1.0) {
        throw std::domain_error("integer_cutoff: bound " + std::to_string(bound) +
                                " admits no positive integer cutoff");
    }
    return static_cast<int>(t);
}

double worst_case_link_fidelity(double age, int m, const FidelityParams& params)
{
    if (!(age >= 0.0) || m < 1) {
        throw std::invalid_argument("worst_case_link_fidelity: need age >= 0 and m >= 1");
    }
    if (!(params.T > 0.0)) {
        throw std::invalid_argument("worst_case_link_fidelity: T must be positive");
    }
    const double w = werner_parameter(params.F_new) * std::exp(-age / params.T);
    return fidelity_from_werner(std::pow(w, m));
}

}  // namespace cdnet::physics
