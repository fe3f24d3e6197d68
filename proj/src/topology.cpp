#include "hetsim/topology.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "hetsim/errors.hpp"

namespace hetsim {

std::vector<CellSite> build_scenario(ScenarioKind kind, const TopologyConfig& config) {
  if (config.macro.radius_m <= 0.0) throw ConfigError("macro radius must be positive");
  std::vector<CellSite> cells;
  cells.push_back({0, CellKind::Macro, {0.0, 0.0}, config.macro.tx_power_dbm,
                   config.macro.radius_m});
  if (kind == ScenarioKind::MacroOnly) return cells;

  const int n = config.n_picos;
  if (n < 0) throw ConfigError("pico count must be non-negative");
  if (n == 0) return cells;
  if (config.pico.radius_m <= 0.0) throw ConfigError("pico radius must be positive");
  if (config.pico.radius_m > config.macro.radius_m) {
    throw ConfigError("pico radius exceeds macro radius");
  }
  const double ring = config.pico_distance_fraction * config.macro.radius_m;
  if (ring + config.pico.radius_m > config.macro.radius_m + 1e-9) {
    throw ConfigError("pico discs extend beyond the macro disc");
  }
  if (n > 1) {
    const double spacing = 2.0 * ring * std::sin(std::numbers::pi / n);
    if (spacing < 2.0 * config.pico.radius_m) {
      throw ConfigError("pico cells overlap: " + std::to_string(n) + " picos on a " +
                        std::to_string(ring) + " m ring");
    }
  }
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * k / n;
    cells.push_back({static_cast<std::uint32_t>(k + 1), CellKind::Pico,
                     {ring * std::cos(a), ring * std::sin(a)}, config.pico.tx_power_dbm,
                     config.pico.radius_m});
  }
  return cells;
}

Vec2 sample_in_disc(Vec2 centre, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double a = 2.0 * std::numbers::pi * u(rng);
  return centre + Vec2{r * std::cos(a), r * std::sin(a)};
}

std::vector<UePosition> place_users(int n_users, std::span<const CellSite> cells,
                                    const PlacementConfig& placement, double speed_mps,
                                    std::mt19937_64& rng) {
  if (cells.empty()) throw ConfigError("place_users: no cells");
  if (n_users < 0) throw ConfigError("user count must be non-negative");

  // Users per cell disc, in cell order.
  std::vector<int> counts(cells.size(), 0);
  const auto n_picos = static_cast<int>(cells.size()) - 1;
  if (placement.mode == PlacementMode::PerCell) {
    std::fill(counts.begin(), counts.end(), n_users);
  } else if (n_picos == 0) {
    counts[0] = n_users;
  } else {
    const int per_pico =
        static_cast<int>(std::floor(n_users * (1.0 - placement.macro_fraction) / n_picos));
    for (int k = 1; k <= n_picos; ++k) counts[k] = per_pico;
    counts[0] = n_users - per_pico * n_picos;
  }

  std::uniform_real_distribution<double> heading(0.0, 2.0 * std::numbers::pi);
  std::vector<UePosition> ues;
  std::uint32_t id = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int i = 0; i < counts[c]; ++i) {
      UePosition ue;
      ue.ue_id = id++;
      ue.position = sample_in_disc(cells[c].position, cells[c].radius_m, rng);
      ue.heading = heading(rng);
      ue.speed_mps = speed_mps;
      ue.home_cell = cells[c].cell_id;
      ues.push_back(ue);
    }
  }
  return ues;
}

void move_ue(UePosition& ue, double dt_s, double macro_radius_m, std::mt19937_64& rng) {
  const double step = ue.speed_mps * dt_s;
  ue.position = ue.position + step * Vec2{std::cos(ue.heading), std::sin(ue.heading)};
  const double r = ue.position.norm();
  if (r > macro_radius_m) {
    // Inward directions are within +-pi/2 of the direction to the origin.
    std::uniform_real_distribution<double> off(-std::numbers::pi / 2, std::numbers::pi / 2);
    const double inward = std::atan2(-ue.position.y, -ue.position.x);
    ue.heading = inward + off(rng);
  }
}

std::uint32_t best_server(std::span<const double> rx_power_dbm,
                          std::optional<std::uint32_t> serving, double hysteresis_db) {
  const auto best = static_cast<std::uint32_t>(
      std::max_element(rx_power_dbm.begin(), rx_power_dbm.end()) - rx_power_dbm.begin());
  if (!serving || *serving >= rx_power_dbm.size()) return best;
  if (rx_power_dbm[best] > rx_power_dbm[*serving] + hysteresis_db) return best;
  return *serving;
}

}  // namespace hetsim
