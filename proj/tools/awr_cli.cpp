#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "awr/cli.hpp"

namespace {

std::string flag_name(std::string_view key) {
  std::string name(key);
  for (char& c : name) {
    if (c == '_') c = '-';
  }
  return "--" + name;
}

}  // namespace

int main(int argc, char** argv) {
  using awr::cli::RunConfig;

  CLI::App app{"Aw-Rascle model with a flux constraint at x = 0"};
  app.require_subcommand(0, 1);
  std::string command;
  for (const char* name : {"riemann", "simulate", "campaign", "domain-check"}) {
    app.add_subcommand(name)->fallthrough()->callback([&command, name] { command = name; });
  }

  std::string preset, config_file;
  bool print_config = false;
  app.add_option("--preset", preset, "test1a, test1b, test2a or test2b");
  app.add_option("--config", config_file, "key = value file applied after the preset");
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  std::map<std::string, std::string> overrides;
  bool invert = false;
  for (std::string_view key : awr::cli::config_keys()) {
    if (key == "invert_check") continue;
    app.add_option(flag_name(key), overrides[std::string(key)]);
  }
  app.add_flag("--invert-check", invert, "flip the TV inequalities (harness self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(awr::cli::ExitCode::Failure);
  }

  RunConfig config;
  try {
    if (!preset.empty()) config = awr::cli::preset(preset, config);
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw awr::Error(awr::Errc::InvalidConfig, "cannot read " + config_file);
      std::stringstream text;
      text << in.rdbuf();
      config = awr::cli::parse_config(text.str(), config);
    }
    for (const auto& [key, value] : overrides) {
      if (app.count(flag_name(key)) > 0) awr::cli::apply_setting(config, key, value);
    }
    if (invert) config.invert_check = true;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(awr::cli::ExitCode::Failure);
  }

  if (print_config) {
    std::cout << awr::cli::serialize(config);
    return 0;
  }
  if (command.empty()) {
    std::cerr << app.help();
    return static_cast<int>(awr::cli::ExitCode::Failure);
  }
  return awr::cli::dispatch(command, config, std::cout, std::cerr);
}
