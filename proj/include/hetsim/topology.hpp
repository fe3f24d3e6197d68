#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace hetsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  double norm() const { return std::hypot(x, y); }
};

inline double distance_m(Vec2 a, Vec2 b) { return (a - b).norm(); }

enum class CellKind { Macro, Pico };
enum class ScenarioKind { MacroOnly, HetNet };

struct CellSite {
  std::uint32_t cell_id = 0;
  CellKind kind = CellKind::Macro;
  Vec2 position;
  double tx_power_dbm = 0.0;
  double radius_m = 0.0;
};

struct CellParams {
  double radius_m;
  double tx_power_dbm;
};

struct TopologyConfig {
  CellParams macro{1000.0, 49.0};
  CellParams pico{100.0, 30.0};
  int n_picos = 2;
  // Pico centres sit at this fraction of the macro radius.
  double pico_distance_fraction = 0.9;
};

/// Macro at the origin, picos evenly spaced in angle on a ring near the macro edge.
/// Throws ConfigError when the pico discs would overlap or leave the macro disc.
std::vector<CellSite> build_scenario(ScenarioKind kind, const TopologyConfig& config);

struct UePosition {
  std::uint32_t ue_id = 0;
  Vec2 position;
  double heading = 0.0;
  double speed_mps = 0.0;
  // Disc the UE was dropped in (cell id), for reporting only.
  std::uint32_t home_cell = 0;
};

enum class PlacementMode {
  // `n_users` UEs dropped uniformly in every cell disc.
  PerCell,
  // `n_users` in total: a fraction uniformly in the macro disc, the rest split
  // evenly across pico hotspots.
  Split,
};

struct PlacementConfig {
  PlacementMode mode = PlacementMode::PerCell;
  double macro_fraction = 0.5;
};

/// Uniform point in a disc.
Vec2 sample_in_disc(Vec2 centre, double radius, std::mt19937_64& rng);

std::vector<UePosition> place_users(int n_users, std::span<const CellSite> cells,
                                    const PlacementConfig& placement, double speed_mps,
                                    std::mt19937_64& rng);

/// Straight-line motion. A step that leaves the macro disc redraws the heading
/// uniformly over directions pointing back inside.
void move_ue(UePosition& ue, double dt_s, double macro_radius_m, std::mt19937_64& rng);

/// Cell with the strongest received power. With a current serving cell, a
/// handover needs a candidate stronger than serving by more than `hysteresis_db`.
std::uint32_t best_server(std::span<const double> rx_power_dbm,
                          std::optional<std::uint32_t> serving, double hysteresis_db);

}  // namespace hetsim
