#pragma once

// Werner-state fidelity model. A Werner state of fidelity F has Werner
// parameter w = (4F - 1)/3; depolarizing storage multiplies w by e^{-dt/T}
// and a swap multiplies the two input parameters.

namespace cdnet::physics {

struct FidelityParams {
    double T = 2000.0;      ///< memory decay constant, in time steps
    double F_new = 0.9;     ///< fidelity of freshly generated links
    double F_app = 0.6;     ///< minimum fidelity required by applications
    int M = 1;              ///< maximum number of elementary links per long link

    /// Throws std::invalid_argument unless 0.25 < F_app <= F_new <= 1, T > 0, M >= 1.
    void validate() const;
};

[[nodiscard]] double werner_parameter(double F);
[[nodiscard]] double fidelity_from_werner(double w);

/// Fidelity after `dt` steps of depolarizing storage.
[[nodiscard]] double decayed_fidelity(double F, double dt, double T);

/// Fidelity of the link produced by swapping links of fidelities F1 and F2.
[[nodiscard]] double swap_fidelity(double F1, double F2);

/// Real-valued upper bound on the cutoff time guaranteeing F >= F_app for any
/// link built from at most M elementary links. Throws std::domain_error when
/// the bound is not positive.
[[nodiscard]] double max_cutoff(const FidelityParams& params);

/// Largest integer cutoff satisfying the bound (floor of max_cutoff).
[[nodiscard]] int integer_cutoff(const FidelityParams& params);

/// Fidelity of a link made of m elementary links, each at most `age` steps old.
[[nodiscard]] double worst_case_link_fidelity(double age, int m, const FidelityParams& params);

}  // namespace cdnet::physics
