#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "iscr/reporting.hpp"
#include "iscr/version.hpp"

namespace {

struct Options {
  std::string scenario_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::string table;
};

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(digest));
  return buf;
}

void write_file(const std::filesystem::path& path,
                const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// Renders the table, drops it next to a run_info.txt describing the
// invocation, and passes the exit code through.
int emit(const Options& opt, const std::string& command,
         const iscr::Scenario& s, const iscr::ReportTable& table,
         int exit_code) {
  namespace fs = std::filesystem;
  fs::create_directories(opt.out_dir);
  const std::string ext = opt.format == "md" ? ".md" : ".csv";
  const fs::path out_path = fs::path(opt.out_dir) / (command + ext);
  write_file(out_path, opt.format == "md" ? iscr::to_markdown(table)
                                          : iscr::to_csv(table));

  std::string info;
  info += "tool: iscr " + std::string(iscr::kVersion) + "\n";
  info += "command: " + command + "\n";
  info += "scenario: " + s.name + "\n";
  info += "digest: " + digest_hex(s.digest) + "\n";
  if (opt.seed) info += "seed: " + std::to_string(*opt.seed) + "\n";
  info += "format: " + opt.format + "\n";
  info += "output: " + out_path.filename().string() + "\n";
  write_file(fs::path(opt.out_dir) / "run_info.txt", info);

  std::cout << "wrote " << out_path.string() << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"design-space reports for a solar compute array"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("iscr ") + iscr::kVersion);
  app.add_option("--scenario", opt.scenario_path,
                 "scenario file; omit for the built-in baseline");
  app.add_option("--out", opt.out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--format", opt.format, "table format")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "override the fault sweep seed");

  CLI::App* thermal =
      app.add_subcommand("thermal", "panel equilibrium per orbit");
  CLI::App* energy =
      app.add_subcommand("energy", "silicon operating point table");
  CLI::App* mass = app.add_subcommand("mass", "panel mass budget");
  CLI::App* stow =
      app.add_subcommand("stow", "spiral stowage and satellite rollup");
  CLI::App* plan =
      app.add_subcommand("plan-llm", "pipeline deployment metrics");
  CLI::App* trade =
      app.add_subcommand("trade", "architecture trade comparison");
  CLI::App* faultsim =
      app.add_subcommand("faultsim", "failure sweep over one plan");
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "check computed values against a reference table");
  reproduce->add_option("--table", opt.table, "reference table id")
      ->required()
      ->check(CLI::IsMember({"1", "4", "5", "6", "7", "8a", "8b", "abstract"}));

  CLI11_PARSE(app, argc, argv);

  try {
    const iscr::Scenario s = opt.scenario_path.empty()
                                 ? iscr::default_scenario()
                                 : iscr::load_scenario(opt.scenario_path);
    if (thermal->parsed()) {
      return emit(opt, "thermal", s, iscr::thermal_report(s), 0);
    }
    if (energy->parsed()) {
      return emit(opt, "energy", s, iscr::energy_report(s), 0);
    }
    if (mass->parsed()) {
      return emit(opt, "mass", s, iscr::mass_report(s), 0);
    }
    if (stow->parsed()) {
      return emit(opt, "stow", s, iscr::stow_report(s), 0);
    }
    if (plan->parsed()) {
      const iscr::ReportTable table = iscr::plan_report(s);
      bool all_feasible = true;
      for (const auto& req : s.plans) {
        const auto& model = s.model_named(req.model);
        const iscr::ParallelPlan p =
            iscr::make_plan(model, req.panels, req.tensor_width, req.sessions);
        all_feasible = all_feasible &&
                       iscr::feasibility_check(model, p, s.hardware,
                                               s.satellite.panels_per_row)
                           .feasible;
      }
      if (!all_feasible) {
        std::cerr << "error: at least one plan exceeds the panel hardware\n";
      }
      return emit(opt, "plan-llm", s, table, all_feasible ? 0 : 4);
    }
    if (trade->parsed()) {
      return emit(opt, "trade", s, iscr::trade_report(s), 0);
    }
    if (faultsim->parsed()) {
      return emit(opt, "faultsim", s, iscr::faultsim_report(s, opt.seed), 0);
    }
    const iscr::ReproduceReport rep = iscr::reproduce_table(s, opt.table);
    for (const auto& row : rep.rows) {
      if (row.gating && !row.pass) {
        std::cout << "mismatch: " << row.metric << " reference "
                  << iscr::format_number(row.reference) << " computed "
                  << iscr::format_number(row.computed) << "\n";
      }
    }
    std::cout << "reproduce " << opt.table << ": "
              << (rep.all_pass ? "PASS" : "FAIL") << "\n";
    return emit(opt, "reproduce-" + opt.table, s,
                iscr::reproduce_report_table(rep), rep.all_pass ? 0 : 3);
  } catch (const iscr::scenario_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const iscr::plan_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
