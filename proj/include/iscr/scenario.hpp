#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iscr/errors.hpp"
#include "iscr/fault_sim.hpp"
#include "iscr/llm_plan.hpp"
#include "iscr/panel_budget.hpp"
#include "iscr/silicon.hpp"
#include "iscr/stowage.hpp"
#include "iscr/thermal.hpp"
#include "iscr/tradestudy.hpp"

namespace iscr {

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One pipeline deployment request, bound to a model by name.
struct PlanRequest {
  std::string name = "plan";
  std::string model = "light-96";
  int panels = 16;
  int tensor_width = 1;
  std::optional<int> sessions;

  void validate() const {
    if (panels < 1) {
      throw std::invalid_argument("plan needs at least one panel");
    }
    if (tensor_width < 1) {
      throw std::invalid_argument("tensor width must be positive");
    }
    if (sessions && *sessions < 1) {
      throw std::invalid_argument("sessions must be positive");
    }
  }
};

// Failure sweep request over one named plan.
struct FaultSimRequest {
  std::string plan = "light-16x1";
  FailureProcess process{0.02, 5.0, 0};
  int replicas = 200;
  int points = 11;
  int grid_cols = 12;
  bool use_spares = true;

  void validate() const {
    process.validate();
    if (replicas < 1) {
      throw std::invalid_argument("replicas must be positive");
    }
    if (points < 2) {
      throw std::invalid_argument("curve needs at least two points");
    }
    if (grid_cols < 1) {
      throw std::invalid_argument("grid needs at least one column");
    }
  }
};

// Every input the planner consumes, preloaded with the reference design.
// Scenario files edit this; they never start from nothing.
struct Scenario {
  std::string name = "baseline";
  std::string description;
  std::vector<OrbitEnvironment> orbits;
  std::vector<SolarCellCurve> cell_curves;
  PanelThermalConfig thermal;
  PanelDesign panel;
  std::vector<SiliconOperatingPoint> silicon;
  bool prefer_ulvt = true;
  PanelHardware hardware;
  std::vector<LlmModelSpec> models;
  std::vector<PlanRequest> plans;
  StowageConfig stowage;
  SatelliteDesign satellite;
  std::vector<ArchitectureDesign> trade;
  FaultSimRequest faultsim;
  std::uint64_t digest = 0xcbf29ce484222325ULL;

  const LlmModelSpec& model_named(const std::string& n) const {
    for (const auto& m : models) {
      if (m.name == n) return m;
    }
    throw std::invalid_argument("unknown model '" + n + "'");
  }

  const PlanRequest& plan_named(const std::string& n) const {
    for (const auto& p : plans) {
      if (p.name == n) return p;
    }
    throw std::invalid_argument("unknown plan '" + n + "'");
  }
};

inline Scenario default_scenario() {
  Scenario s;
  s.orbits = {
      OrbitEnvironment{},
      OrbitEnvironment{"2000km", kSolarFluxW_m2, 2000.0, std::nullopt},
      OrbitEnvironment{"1000km", kSolarFluxW_m2, 1000.0, std::nullopt},
      OrbitEnvironment{"600km", kSolarFluxW_m2, 600.0, std::nullopt},
  };
  s.cell_curves = {
      reference_cell_curve(CellTechnology::kPerovskiteSiTandem),
      reference_cell_curve(CellTechnology::kCrystallineSi90um),
      reference_cell_curve(CellTechnology::kThinFilmASi),
      reference_cell_curve(CellTechnology::kTripleJunctionGaAs),
  };
  s.panel = baseline_panel_design();
  s.silicon = reference_operating_points();
  s.models = {light_model_spec(), heavy_model_spec()};
  s.plans = {
      {"light-16x1", "light-96", 16, 1, std::nullopt},
      {"light-16x4", "light-96", 16, 4, std::nullopt},
      {"light-384x4", "light-96", 384, 4, std::nullopt},
      {"heavy-512x4", "heavy-128", 512, 4, std::nullopt},
  };
  s.satellite = baseline_satellite_design();
  s.trade = reference_trade_designs();
  return s;
}

namespace detail {

inline std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

// Known measurement suffixes, for telling a wrong unit apart from a key
// that does not exist at all.
inline constexpr std::string_view kUnitSuffixes[] = {
    "_cm3_per_m2", "_bytes_s", "_fraction", "_tflops", "_g_cm3", "_kg_m2",
    "_kw_m2",      "_w_m2",    "_bytes",    "_years",  "_tons",  "_gb_s",
    "_cm2",        "_ghz",     "_mhz",      "_pct",    "_gb",    "_kw",
    "_mw",         "_mm",      "_km",       "_m2",     "_kg",    "_us",
    "_ms",         "_kj",      "_hz",       "_c",      "_k",     "_j",
    "_v",          "_m",       "_s",        "_t",      "_w",
};

inline std::string unit_stem(std::string_view key) {
  std::size_t best = 0;
  for (const std::string_view suffix : kUnitSuffixes) {
    if (suffix.size() > key.size() || suffix.size() <= best) continue;
    if (key.substr(key.size() - suffix.size()) == suffix) {
      best = suffix.size();
    }
  }
  return std::string(key.substr(0, key.size() - best));
}

class ScenarioParser {
 public:
  ScenarioParser(std::string text, std::string file)
      : text_(std::move(text)), file_(std::move(file)) {}

  Scenario run() {
    s_ = default_scenario();
    s_.digest = fnv1a64(text_);
    std::istringstream in(text_);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      const std::string line = trim(raw);
      if (line.empty() || line[0] == '#') continue;
      if (line.front() == '[') {
        begin_section(line_no, line);
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        fail(line_no, "parse", "expected 'key = value' or a [section] header");
      }
      if (kind_.empty()) {
        fail(line_no, "parse", "key outside any section");
      }
      const std::string key = trim(line.substr(0, eq));
      if (key.empty()) fail(line_no, "parse", "missing key before '='");
      entries_.push_back({line_no, key, trim(line.substr(eq + 1))});
    }
    flush_section();
    finalize();
    return s_;
  }

 private:
  struct Entry {
    int line;
    std::string key;
    std::string value;
  };

  [[noreturn]] void fail(int line, const char* kind,
                         const std::string& msg) const {
    throw scenario_error(msg, file_, line, kind);
  }

  static bool section_needs_name(const std::string& kind) {
    for (const char* k : {"orbit", "cell_curve", "material", "silicon_row",
                          "model", "plan", "trade"}) {
      if (kind == k) return true;
    }
    return false;
  }

  static bool section_is_singleton(const std::string& kind) {
    for (const char* k : {"meta", "thermal", "panel", "silicon", "hardware",
                          "stowage", "satellite", "faultsim"}) {
      if (kind == k) return true;
    }
    return false;
  }

  void begin_section(int line_no, const std::string& line) {
    if (line.back() != ']') {
      fail(line_no, "parse", "section header missing ']'");
    }
    flush_section();
    const std::string inner = trim(line.substr(1, line.size() - 2));
    const std::size_t sp = inner.find_first_of(" \t");
    const std::string kind =
        sp == std::string::npos ? inner : trim(inner.substr(0, sp));
    const std::string name =
        sp == std::string::npos ? std::string() : trim(inner.substr(sp + 1));
    if (section_needs_name(kind)) {
      if (name.empty()) fail(line_no, "parse", "[" + kind + "] needs a name");
    } else if (section_is_singleton(kind)) {
      if (!name.empty()) fail(line_no, "parse", "[" + kind + "] takes no name");
    } else {
      fail(line_no, "parse", "unknown section kind '" + kind + "'");
    }
    kind_ = kind;
    name_ = name;
    header_line_ = line_no;
  }

  void check_keys(std::initializer_list<std::string_view> known) const {
    for (const Entry& e : entries_) {
      bool found = false;
      for (const std::string_view k : known) {
        if (e.key == k) {
          found = true;
          break;
        }
      }
      if (found) continue;
      const std::string stem = unit_stem(e.key);
      for (const std::string_view k : known) {
        if (unit_stem(k) == stem) {
          fail(e.line, "unit-mismatch",
               "key '" + e.key + "' in [" + kind_ + "] should be '" +
                   std::string(k) + "'");
        }
      }
      fail(e.line, "unknown-key",
           "unknown key '" + e.key + "' in [" + kind_ + "]");
    }
  }

  double number_text(int line, const std::string& text) const {
    if (text.empty()) fail(line, "parse", "expected a number");
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v)) {
      fail(line, "parse", "bad number '" + text + "'");
    }
    return v;
  }

  double number(const Entry& e) const { return number_text(e.line, e.value); }

  std::optional<double> opt_number(const Entry& e) const {
    if (e.value == "-") return std::nullopt;
    return number(e);
  }

  long long ll_number(const Entry& e) const {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(e.value.c_str(), &end, 10);
    if (e.value.empty() || end != e.value.c_str() + e.value.size() ||
        errno == ERANGE) {
      fail(e.line, "parse", "bad integer '" + e.value + "'");
    }
    return v;
  }

  int int_number(const Entry& e) const {
    const long long v = ll_number(e);
    if (v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max()) {
      fail(e.line, "parse", "integer out of range");
    }
    return static_cast<int>(v);
  }

  std::optional<int> opt_int(const Entry& e) const {
    if (e.value == "-") return std::nullopt;
    return int_number(e);
  }

  std::uint64_t seed_number(const Entry& e) const {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(e.value.c_str(), &end, 10);
    if (e.value.empty() || e.value[0] == '-' ||
        end != e.value.c_str() + e.value.size() || errno == ERANGE) {
      fail(e.line, "parse", "bad seed '" + e.value + "'");
    }
    return v;
  }

  bool boolean(const Entry& e) const {
    if (e.value == "yes") return true;
    if (e.value == "no") return false;
    fail(e.line, "parse", "expected yes or no, got '" + e.value + "'");
  }

  CellTechnology technology_value(const Entry& e) const {
    if (e.value == "perovskite-si-tandem") {
      return CellTechnology::kPerovskiteSiTandem;
    }
    if (e.value == "crystalline-si-90um") {
      return CellTechnology::kCrystallineSi90um;
    }
    if (e.value == "thin-film-a-si") return CellTechnology::kThinFilmASi;
    if (e.value == "triple-junction-gaas") {
      return CellTechnology::kTripleJunctionGaAs;
    }
    fail(e.line, "parse", "unknown cell technology '" + e.value + "'");
  }

  VthFlavor flavor_value(const Entry& e) const {
    if (e.value == "ulvt") return VthFlavor::kULVT;
    if (e.value == "lvt") return VthFlavor::kLVT;
    if (e.value == "svt") return VthFlavor::kSVT;
    if (e.value == "hvt") return VthFlavor::kHVT;
    fail(e.line, "parse", "unknown transistor flavor '" + e.value + "'");
  }

  CoolingSystem cooling_value(const Entry& e) const {
    if (e.value == "vapor-chamber") return CoolingSystem::kVaporChamber;
    if (e.value == "liquid") return CoolingSystem::kLiquid;
    if (e.value == "high-performance") return CoolingSystem::kHighPerformance;
    fail(e.line, "parse", "unknown cooling system '" + e.value + "'");
  }

  std::vector<CellCurvePoint> curve_points(const Entry& e) const {
    std::vector<CellCurvePoint> pts;
    std::size_t start = 0;
    const std::string& v = e.value;
    while (start <= v.size()) {
      const std::size_t bar = v.find('|', start);
      const std::string tok =
          trim(bar == std::string::npos ? v.substr(start)
                                        : v.substr(start, bar - start));
      if (tok.empty()) fail(e.line, "parse", "empty curve point");
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos) {
        fail(e.line, "parse", "curve points use 'temperature:efficiency'");
      }
      pts.push_back({number_text(e.line, trim(tok.substr(0, colon))),
                     number_text(e.line, trim(tok.substr(colon + 1)))});
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    return pts;
  }

  void apply_meta() {
    check_keys({"name", "description"});
    for (const Entry& e : entries_) {
      if (e.key == "name") {
        s_.name = e.value;
      } else {
        s_.description = e.value;
      }
    }
  }

  void apply_orbit() {
    check_keys({"altitude_km", "solar_flux_w_m2", "earth_ir_w_m2"});
    OrbitEnvironment* slot = nullptr;
    for (auto& o : s_.orbits) {
      if (o.label == name_) {
        slot = &o;
        break;
      }
    }
    OrbitEnvironment work = slot ? *slot : OrbitEnvironment{};
    work.label = name_;
    for (const Entry& e : entries_) {
      if (e.key == "altitude_km") {
        work.altitude_km = opt_number(e);
      } else if (e.key == "solar_flux_w_m2") {
        work.solar_flux_w_m2 = number(e);
      } else {
        work.earth_ir_w_m2 = opt_number(e);
      }
    }
    if (slot) {
      *slot = work;
    } else {
      s_.orbits.push_back(work);
    }
  }

  void apply_cell_curve() {
    check_keys({"technology", "points_c"});
    SolarCellCurve* slot = nullptr;
    for (auto& c : s_.cell_curves) {
      if (c.name == name_) {
        slot = &c;
        break;
      }
    }
    SolarCellCurve work = slot ? *slot : SolarCellCurve{};
    work.name = name_;
    for (const Entry& e : entries_) {
      if (e.key == "technology") {
        work.technology = technology_value(e);
      } else {
        work.points = curve_points(e);
      }
    }
    if (slot) {
      *slot = work;
    } else {
      s_.cell_curves.push_back(work);
    }
  }

  void apply_thermal() {
    check_keys({"absorptivity", "cell_curve", "front_emissivity",
                "front_sides", "back_emissivity", "back_sides",
                "gap_leak_w_m2"});
    for (const Entry& e : entries_) {
      if (e.key == "absorptivity") {
        s_.thermal.absorptivity = number(e);
      } else if (e.key == "cell_curve") {
        pending_curve_ = e.value;
        pending_curve_line_ = e.line;
      } else if (e.key == "front_emissivity") {
        s_.thermal.front.emissivity = number(e);
      } else if (e.key == "front_sides") {
        s_.thermal.front.sides = int_number(e);
      } else if (e.key == "back_emissivity") {
        s_.thermal.back.emissivity = number(e);
      } else if (e.key == "back_sides") {
        s_.thermal.back.sides = int_number(e);
      } else {
        s_.thermal.gap_leak_w_m2 = number(e);
      }
    }
  }

  void apply_panel() {
    check_keys({"side_m", "area_m2", "compute_power_w", "link_bandwidth_gb_s"});
    for (const Entry& e : entries_) {
      if (e.key == "side_m") {
        s_.panel.side_m = number(e);
      } else if (e.key == "area_m2") {
        s_.panel.area_m2 = number(e);
      } else if (e.key == "compute_power_w") {
        s_.panel.compute_power_w = number(e);
      } else {
        s_.panel.link_bandwidth_gb_s = number(e);
      }
    }
  }

  void apply_material() {
    check_keys({"group", "role", "density_g_cm3", "volume_cm3_per_m2",
                "thickness_mm", "area_cm2"});
    std::vector<MaterialLayer>* group = nullptr;
    for (const Entry& e : entries_) {
      if (e.key != "group") continue;
      if (e.value == "solar") {
        group = &s_.panel.solar;
      } else if (e.value == "compute") {
        group = &s_.panel.compute;
      } else if (e.value == "radiator") {
        group = &s_.panel.radiator;
      } else {
        fail(e.line, "parse", "unknown material group '" + e.value + "'");
      }
    }
    if (!group) {
      fail(header_line_, "invariant",
           "[material] needs a group (solar, compute, radiator)");
    }
    MaterialLayer* slot = nullptr;
    for (auto& layer : *group) {
      if (layer.name == name_) {
        slot = &layer;
        break;
      }
    }
    MaterialLayer work = slot ? *slot : MaterialLayer{};
    work.name = name_;
    for (const Entry& e : entries_) {
      if (e.key == "group") continue;
      if (e.key == "role") {
        work.role = e.value;
      } else if (e.key == "density_g_cm3") {
        work.density_g_cm3 = number(e);
      } else if (e.key == "volume_cm3_per_m2") {
        work.volume_cm3_per_m2 = number(e);
      } else if (e.key == "thickness_mm") {
        work.thickness_mm = opt_number(e);
      } else {
        work.area_cm2 = opt_number(e);
      }
    }
    if (slot) {
      *slot = work;
    } else {
      group->push_back(work);
    }
  }

  void apply_silicon() {
    check_keys({"prefer_ulvt"});
    for (const Entry& e : entries_) s_.prefer_ulvt = boolean(e);
  }

  void apply_silicon_row() {
    check_keys({"coolant_temp_c", "junction_temp_c", "flavor", "cooling",
                "vdd_v", "clock_ghz", "e_dynamic_j", "e_static_j"});
    std::optional<double> coolant;
    std::optional<VthFlavor> flavor;
    for (const Entry& e : entries_) {
      if (e.key == "coolant_temp_c") coolant = number(e);
      if (e.key == "flavor") flavor = flavor_value(e);
    }
    if (!coolant || !flavor) {
      fail(header_line_, "invariant",
           "[silicon_row] needs coolant_temp_c and flavor to identify a row");
    }
    std::size_t slot = s_.silicon.size();
    for (std::size_t i = 0; i < s_.silicon.size(); ++i) {
      if (s_.silicon[i].coolant_temp_c == *coolant &&
          s_.silicon[i].flavor == *flavor) {
        slot = i;
        break;
      }
    }
    SiliconOperatingPoint work =
        slot < s_.silicon.size() ? s_.silicon[slot] : SiliconOperatingPoint{};
    work.coolant_temp_c = *coolant;
    work.flavor = *flavor;
    for (const Entry& e : entries_) {
      if (e.key == "junction_temp_c") {
        work.junction_temp_c = number(e);
      } else if (e.key == "cooling") {
        work.cooling = cooling_value(e);
      } else if (e.key == "vdd_v") {
        work.vdd_v = number(e);
      } else if (e.key == "clock_ghz") {
        work.clock_ghz = number(e);
      } else if (e.key == "e_dynamic_j") {
        work.e_dynamic_j = number(e);
      } else if (e.key == "e_static_j") {
        work.e_static_j = number(e);
      }
    }
    if (slot < s_.silicon.size()) {
      s_.silicon[slot] = work;
    } else {
      const auto pos = std::upper_bound(
          s_.silicon.begin(), s_.silicon.end(), work.coolant_temp_c,
          [](double t, const SiliconOperatingPoint& p) {
            return t < p.coolant_temp_c;
          });
      s_.silicon.insert(pos, work);
    }
  }

  void apply_hardware() {
    check_keys({"compute_power_w", "peak_compute_tflops",
                "memory_capacity_bytes", "link_bandwidth_bytes_s"});
    for (const Entry& e : entries_) {
      if (e.key == "compute_power_w") {
        s_.hardware.compute_power_w = number(e);
      } else if (e.key == "peak_compute_tflops") {
        s_.hardware.peak_compute_tflops = number(e);
      } else if (e.key == "memory_capacity_bytes") {
        s_.hardware.memory_capacity_bytes = number(e);
      } else {
        s_.hardware.link_bandwidth_bytes_s = number(e);
      }
    }
  }

  void apply_model() {
    check_keys({"context_length", "num_blocks", "weights_total_bytes",
                "activation_size_bytes", "kv_per_block_per_session_bytes",
                "base_block_time_s"});
    LlmModelSpec* slot = nullptr;
    for (auto& m : s_.models) {
      if (m.name == name_) {
        slot = &m;
        break;
      }
    }
    LlmModelSpec work = slot ? *slot : LlmModelSpec{};
    work.name = name_;
    for (const Entry& e : entries_) {
      if (e.key == "context_length") {
        work.context_length = ll_number(e);
      } else if (e.key == "num_blocks") {
        work.num_blocks = int_number(e);
      } else if (e.key == "weights_total_bytes") {
        work.weights_total_bytes = number(e);
      } else if (e.key == "activation_size_bytes") {
        work.activation_size_bytes = number(e);
      } else if (e.key == "kv_per_block_per_session_bytes") {
        work.kv_per_block_per_session_bytes = number(e);
      } else {
        work.base_block_time_s = number(e);
      }
    }
    if (slot) {
      *slot = work;
    } else {
      s_.models.push_back(work);
    }
  }

  void apply_plan() {
    check_keys({"model", "panels", "tensor_width", "sessions"});
    PlanRequest* slot = nullptr;
    for (auto& p : s_.plans) {
      if (p.name == name_) {
        slot = &p;
        break;
      }
    }
    PlanRequest work = slot ? *slot : PlanRequest{};
    work.name = name_;
    for (const Entry& e : entries_) {
      if (e.key == "model") {
        work.model = e.value;
        model_ref_line_[name_] = e.line;
      } else if (e.key == "panels") {
        work.panels = int_number(e);
      } else if (e.key == "tensor_width") {
        work.tensor_width = int_number(e);
      } else {
        work.sessions = opt_int(e);
      }
    }
    if (slot) {
      *slot = work;
    } else {
      s_.plans.push_back(work);
    }
  }

  void apply_stowage() {
    check_keys({"inner_radius_m", "outer_radius_m", "layer_pitch_m",
                "bay_diameter_m", "bay_length_m", "usable_roll_width_m"});
    for (const Entry& e : entries_) {
      if (e.key == "inner_radius_m") {
        s_.stowage.inner_radius_m = number(e);
      } else if (e.key == "outer_radius_m") {
        s_.stowage.outer_radius_m = number(e);
      } else if (e.key == "layer_pitch_m") {
        s_.stowage.layer_pitch_m = number(e);
      } else if (e.key == "bay_diameter_m") {
        s_.stowage.bay_diameter_m = number(e);
      } else if (e.key == "bay_length_m") {
        s_.stowage.bay_length_m = number(e);
      } else {
        s_.stowage.usable_roll_width_m = number(e);
      }
    }
  }

  void apply_satellite() {
    check_keys({"panel_count", "panels_per_row", "overhead_mass_fraction",
                "overhead_power_fraction", "mass_cap_tons",
                "array_area_override_m2", "area_density_kg_m2"});
    for (const Entry& e : entries_) {
      if (e.key == "panel_count") {
        s_.satellite.panel_count = int_number(e);
      } else if (e.key == "panels_per_row") {
        s_.satellite.panels_per_row = int_number(e);
      } else if (e.key == "overhead_mass_fraction") {
        s_.satellite.overhead_mass_fraction = number(e);
      } else if (e.key == "overhead_power_fraction") {
        s_.satellite.overhead_power_fraction = number(e);
      } else if (e.key == "mass_cap_tons") {
        s_.satellite.mass_cap_tons = number(e);
      } else if (e.key == "array_area_override_m2") {
        s_.satellite.array_area_override_m2 = opt_number(e);
      } else {
        s_.satellite.area_density_kg_m2 = opt_number(e);
      }
    }
  }

  void apply_trade() {
    check_keys({"cell_efficiency", "solar_absorption", "radiator_temp_c",
                "junction_temp_c", "radiator_sides", "emissivity",
                "earth_ir_w_m2", "gap_leak_w_m2", "cooling",
                "silicon_coolant_temp_c"});
    ArchitectureDesign* slot = nullptr;
    for (auto& d : s_.trade) {
      if (d.name == name_) {
        slot = &d;
        break;
      }
    }
    ArchitectureDesign work = slot ? *slot : ArchitectureDesign{};
    work.name = name_;
    for (const Entry& e : entries_) {
      if (e.key == "cell_efficiency") {
        work.cell_efficiency = number(e);
      } else if (e.key == "solar_absorption") {
        work.solar_absorption = number(e);
      } else if (e.key == "radiator_temp_c") {
        work.radiator_temp_c = number(e);
      } else if (e.key == "junction_temp_c") {
        work.junction_temp_c = number(e);
      } else if (e.key == "radiator_sides") {
        work.radiator_sides = int_number(e);
      } else if (e.key == "emissivity") {
        work.emissivity = number(e);
      } else if (e.key == "earth_ir_w_m2") {
        work.earth_ir_w_m2 = number(e);
      } else if (e.key == "gap_leak_w_m2") {
        work.gap_leak_w_m2 = number(e);
      } else if (e.key == "cooling") {
        work.cooling = cooling_value(e);
      } else {
        work.silicon_coolant_temp_c = opt_number(e);
      }
    }
    if (slot) {
      *slot = work;
    } else {
      s_.trade.push_back(work);
    }
  }

  void apply_faultsim() {
    check_keys({"plan", "annual_failure_probability", "horizon_years", "seed",
                "replicas", "points", "grid_cols", "use_spares"});
    for (const Entry& e : entries_) {
      if (e.key == "plan") {
        s_.faultsim.plan = e.value;
        faultsim_plan_line_ = e.line;
      } else if (e.key == "annual_failure_probability") {
        s_.faultsim.process.annual_failure_probability = number(e);
      } else if (e.key == "horizon_years") {
        s_.faultsim.process.horizon_years = number(e);
      } else if (e.key == "seed") {
        s_.faultsim.process.seed = seed_number(e);
      } else if (e.key == "replicas") {
        s_.faultsim.replicas = int_number(e);
      } else if (e.key == "points") {
        s_.faultsim.points = int_number(e);
      } else if (e.key == "grid_cols") {
        s_.faultsim.grid_cols = int_number(e);
      } else {
        s_.faultsim.use_spares = boolean(e);
      }
    }
  }

  void flush_section() {
    if (kind_.empty()) return;
    if (kind_ == "meta") {
      apply_meta();
    } else if (kind_ == "orbit") {
      apply_orbit();
    } else if (kind_ == "cell_curve") {
      apply_cell_curve();
    } else if (kind_ == "thermal") {
      apply_thermal();
    } else if (kind_ == "panel") {
      apply_panel();
    } else if (kind_ == "material") {
      apply_material();
    } else if (kind_ == "silicon") {
      apply_silicon();
    } else if (kind_ == "silicon_row") {
      apply_silicon_row();
    } else if (kind_ == "hardware") {
      apply_hardware();
    } else if (kind_ == "model") {
      apply_model();
    } else if (kind_ == "plan") {
      apply_plan();
    } else if (kind_ == "stowage") {
      apply_stowage();
    } else if (kind_ == "satellite") {
      apply_satellite();
    } else if (kind_ == "trade") {
      apply_trade();
    } else {
      apply_faultsim();
    }
    entries_.clear();
    kind_.clear();
    name_.clear();
  }

  void finalize() {
    if (!pending_curve_.empty()) {
      const SolarCellCurve* found = nullptr;
      for (const auto& c : s_.cell_curves) {
        if (c.name == pending_curve_) {
          found = &c;
          break;
        }
      }
      if (!found) {
        fail(pending_curve_line_, "invariant",
             "cell curve '" + pending_curve_ + "' is not defined");
      }
      s_.thermal.cell_curve = *found;
    }
    for (const PlanRequest& p : s_.plans) {
      bool found = false;
      for (const auto& m : s_.models) found = found || m.name == p.model;
      if (!found) {
        const auto it = model_ref_line_.find(p.name);
        fail(it == model_ref_line_.end() ? 0 : it->second, "invariant",
             "plan '" + p.name + "' references unknown model '" + p.model +
                 "'");
      }
    }
    {
      bool found = false;
      for (const auto& p : s_.plans) found = found || p.name == s_.faultsim.plan;
      if (!found) {
        fail(faultsim_plan_line_, "invariant",
             "fault sweep references unknown plan '" + s_.faultsim.plan + "'");
      }
    }
    s_.satellite.panel = s_.panel;
    try {
      for (const auto& o : s_.orbits) o.validate();
      for (const auto& c : s_.cell_curves) c.validate();
      s_.thermal.validate();
      s_.panel.validate();
      validate_operating_point_table(s_.silicon);
      s_.hardware.validate();
      for (const auto& m : s_.models) m.validate();
      for (const auto& p : s_.plans) p.validate();
      s_.stowage.validate();
      s_.satellite.validate();
      for (const auto& d : s_.trade) d.validate();
      s_.faultsim.validate();
    } catch (const std::logic_error& e) {
      fail(0, "invariant", e.what());
    }
  }

  std::string text_;
  std::string file_;
  Scenario s_;
  std::string kind_;
  std::string name_;
  int header_line_ = 0;
  std::vector<Entry> entries_;
  std::string pending_curve_;
  int pending_curve_line_ = 0;
  std::map<std::string, int> model_ref_line_;
  int faultsim_plan_line_ = 0;
};

}  // namespace detail

inline Scenario parse_scenario(const std::string& text,
                               const std::string& file = "<inline>") {
  return detail::ScenarioParser(text, file).run();
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw scenario_error("cannot open scenario file", path, 0, "parse");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace iscr
