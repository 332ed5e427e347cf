#pragma once

#include <stdexcept>
#include <string>

namespace tcd {

/// The requested (params, channel) pair admits no bound state.
class unbound_channel : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// kappa_bar == 0: |E| would sit exactly at the effective mass, which is not a
/// bound solution.
class zero_kappa_bar : public unbound_channel {
public:
    zero_kappa_bar() : unbound_channel("kappa_bar = kappa + a is zero; |E| = M* is not a bound state") {}
};

/// A regular-state routine was asked for the E = +-M state; use special_state().
class special_state_required : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class shooting_failure { no_bracket, not_converged, node_mismatch };

class shooting_error : public std::runtime_error {
public:
    shooting_error(shooting_failure kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] shooting_failure kind() const noexcept { return kind_; }

private:
    shooting_failure kind_;
};

} // namespace tcd
