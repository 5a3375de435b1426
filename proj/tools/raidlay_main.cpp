#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "raidlay/cli.hpp"

namespace {

using raidlay::RunConfig;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void add_layout_source(CLI::App* cmd, RunConfig& config, std::string& scheme_list) {
  cmd->add_option("--scheme", scheme_list, "comma list of RR, PP1, PP2, RP1, RP2");
  cmd->add_option("--file", config.layout_file, "layout document to load");
  cmd->add_option("--pp", config.pp_offsets, "pp offsets a1,b1,a2,b2")->delimiter(',');
  cmd->add_option("--rp", config.rp_offsets, "rp offsets rho,a,b")->delimiter(',');
  cmd->add_option("--n", config.n_disks, "disk count for generated layouts");
}

int exact_disk_guard() {
  const char* env = std::getenv("RAIDLAY_MAX_EXACT_DISKS");
  if (!env) return raidlay::kDefaultExactDiskLimit;
  int v = std::atoi(env);
  if (v < 1) return raidlay::kDefaultExactDiskLimit;
  return std::min(v, 62);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stripe-layout fault tolerance and reliability analysis"};
  app.require_subcommand(1);

  RunConfig config;
  config.max_exact_disks = exact_disk_guard();
  std::string scheme_list;
  std::string mode_list = "exact";

  CLI::App* layout = app.add_subcommand("layout", "generate, validate or print a layout");
  add_layout_source(layout, config, scheme_list);

  CLI::App* ft = app.add_subcommand("ft", "coverage tables and fault-tolerance degree");
  add_layout_source(ft, config, scheme_list);
  ft->add_option("--failures", config.failures, "failure count to enumerate");
  ft->add_flag("--degree", config.degree, "also print the fault-tolerance degree");

  CLI::App* rel = app.add_subcommand("rel", "reliability curves and points");
  add_layout_source(rel, config, scheme_list);
  rel->add_option("--lambda", config.lambda, "per-disk failure rate per hour");
  rel->add_option("--t", config.t_spec, "mission time grid start:stop:step (hours)");
  rel->add_option("--p", config.p, "evaluate at a fixed per-disk reliability instead");
  rel->add_option("--mode", mode_list, "comma list of exact, koon:<k>, ft");

  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo reliability estimate");
  add_layout_source(mc, config, scheme_list);
  mc->add_option("--p", config.p, "per-disk reliability")->required();
  mc->add_option("--trials", config.trials, "number of trials");
  mc->add_option("--seed", config.seed, "RNG seed");

  CLI::App* search = app.add_subcommand("search", "rank layout families by fault tolerance");
  search->add_option("family", config.search_family, "pp, rp or replication")->required();
  search->add_option("--n", config.n_disks, "disk count");
  search->add_option("--top", config.top, "print only the best K candidates");

  for (CLI::App* cmd : {layout, ft, rel, mc, search}) {
    cmd->add_option("--format", config.format, "table, csv or json");
    cmd->add_option("--out", config.out_path, "write the report to a file instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  config.schemes = split_list(scheme_list);
  config.modes = split_list(mode_list);
  if (layout->parsed()) config.command = RunConfig::Command::Layout;
  if (ft->parsed()) config.command = RunConfig::Command::Ft;
  if (rel->parsed()) config.command = RunConfig::Command::Rel;
  if (mc->parsed()) config.command = RunConfig::Command::Mc;
  if (search->parsed()) config.command = RunConfig::Command::Search;

  return raidlay::run(config, std::cout, std::cerr);
}
