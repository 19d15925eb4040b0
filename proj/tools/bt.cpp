#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "btu/report.hpp"
#include "btu/stabilizer.hpp"

namespace {

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Buekenhout-Tits unital toolkit"};
  app.require_subcommand(1, 1);

  btu::RunOptions opt;
  std::string out_path;
  std::string format;
  bool no_runtime = false;

  for (const auto& name : btu::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("-e", opt.e, "field parameter, q = 2^(2e+1)")->check(CLI::Range(1, 3));
    sub->add_option("--threads", opt.threads, "worker threads, 0 = all cores");
    sub->add_option("--budget", opt.budget, "maximum stabiliser candidates, 0 = unlimited");
    sub->add_option("--out", out_path, "output file, default stdout");
    sub->add_option("--format", format, "json or csv (default from --out extension, else json)")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--all", opt.all_points, "spectrum over every admissible point");
    sub->add_flag("--semilinear", opt.semilinear, "stabiliser scan over the semilinear flag group");
    sub->add_flag("--force", opt.force, "allow the stabiliser scan at e >= 2");
    sub->add_option("--checkpoint", opt.checkpoint, "stabiliser checkpoint file (created or resumed)");
    sub->add_option("--shard-limit", opt.shard_limit, "stop the stabiliser scan after this many new shards");
    sub->add_flag("--no-runtime", no_runtime, "write zero runtime fields");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  if (format.empty()) format = ends_with(out_path, ".csv") ? "csv" : "json";
  if (format == "csv" && command != "spectrum" && command != "group") {
    std::cerr << "bt: csv output is available for the spectrum and group subcommands\n";
    return 2;
  }

  try {
    const btu::VerificationReport rep = btu::run_suites(command, opt);
    if (format == "csv") {
      emit(out_path, command == "spectrum" ? btu::spectrum_csv(*rep.spectrum) : btu::census_csv(*rep.census));
    } else {
      emit(out_path, btu::to_json(rep, !no_runtime).dump(2) + "\n");
    }
    for (const auto& s : rep.suites) {
      if (s.status == btu::SuiteStatus::skipped && s.note == "not selected") continue;
      std::cerr << btu::to_string(s.status) << "  " << s.name << "\n";
    }
    return rep.failed() ? 1 : 0;
  } catch (const btu::BudgetExceeded& ex) {
    std::cerr << "bt: budget exceeded: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "bt: " << ex.what() << "\n";
    return 2;
  }
}
