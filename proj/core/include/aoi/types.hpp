#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace aoi {

enum class Protocol { TDMA, FDMA, NOMA };
enum class Policy { MV, ST };

inline constexpr std::array<Protocol, 3> kAllProtocols{Protocol::TDMA, Protocol::FDMA, Protocol::NOMA};
inline constexpr std::array<Policy, 2> kAllPolicies{Policy::MV, Policy::ST};

std::string_view to_string(Protocol p) noexcept;
std::string_view to_string(Policy p) noexcept;

// Case-insensitive parse; nullopt for unknown names.
std::optional<Protocol> parse_protocol(std::string_view name);
std::optional<Policy> parse_policy(std::string_view name);

// Optimizer variables. policy_param is the vacation length in seconds for
// MV and the start-up threshold for ST (real while optimizing).
struct DecisionVector {
  double lambda_rate = 0.0;
  double tau_b_s = 0.0;
  double policy_param = 0.0;
  double phi_r_w = 0.0;

  friend bool operator==(const DecisionVector&, const DecisionVector&) = default;
};

// Strict-inequality guard used for stability and the SIC condition.
inline constexpr double kStabilityMargin = 1e-9;

}  // namespace aoi
