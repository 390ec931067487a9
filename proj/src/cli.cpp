#include "tdm/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tdm/checker.hpp"
#include "tdm/engine.hpp"
#include "tdm/parser.hpp"
#include "tdm/printer.hpp"
#include "tdm/release.hpp"

namespace tdm::cli {

namespace {

struct UsageError
{
  std::string message;
};

std::optional<std::string> read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buffer.str();
}

void print(std::ostream& err, const std::vector<Diagnostic>& diagnostics)
{
  for (const auto& d : diagnostics) err << format_diagnostic(d) << '\n';
}

EngineOptions engine_options(bool force)
{
  EngineOptions options;
  options.force = force;
  if (const char* cap = std::getenv("TDM_STATE_CAP")) {
    std::string_view text(cap);
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value == 0)
      throw UsageError{"TDM_STATE_CAP must be a positive integer, got '" + std::string(text) + "'"};
    options.state_cap = value;
  }
  return options;
}

// Reads, parses and checks a file. On failure returns the exit status
// after reporting.
struct Loaded
{
  std::optional<CheckResult> checked;
  int status = exit_success;
};

Loaded load(const std::string& path, std::ostream& err)
{
  Loaded loaded;
  auto source = read_file(path);
  if (!source) {
    err << "tdm: cannot read '" << path << "'\n";
    loaded.status = exit_io;
    return loaded;
  }
  auto parsed = parse_model(*source, path);
  if (!parsed.model) {
    print(err, parsed.diagnostics);
    loaded.status = exit_model_error;
    return loaded;
  }
  auto checked = check(std::move(*parsed.model));
  print(err, checked.diagnostics);
  if (!checked.resolved.certified) {
    loaded.status = exit_model_error;
    return loaded;
  }
  loaded.checked = std::move(checked);
  return loaded;
}

int cmd_check(const std::string& path, bool report, std::ostream& out, std::ostream& err)
{
  auto loaded = load(path, err);
  if (!loaded.checked) return loaded.status;
  if (report) out << conformance_report(loaded.checked->resolved);
  return exit_success;
}

struct ConfigsArgs
{
  std::string file;
  bool count = false;
  bool list = false;
  bool dead = false;
  std::optional<std::int64_t> limit;
  std::optional<std::string> spec;
  bool force = false;
};

int cmd_configs(const ConfigsArgs& args, std::ostream& out, std::ostream& err)
{
  if (int modes = args.count + args.list + args.dead; modes != 1)
    throw UsageError{"configs needs exactly one of --count, --list or --dead"};
  if (args.limit && !args.list) throw UsageError{"--limit only applies to --list"};
  if (args.limit && *args.limit < 1) throw UsageError{"--limit must be at least 1"};
  if (args.spec && args.dead) throw UsageError{"--spec cannot be combined with --dead"};
  const auto options = engine_options(args.force);

  auto loaded = load(args.file, err);
  if (!loaded.checked) return loaded.status;
  const auto& resolved = loaded.checked->resolved;
  const std::uint64_t limit = args.limit ? static_cast<std::uint64_t>(*args.limit) : no_limit;

  try {
    if (args.dead) {
      for (const auto& [feature, value] : detect_dead_values(resolved, options)) out << feature << '.' << value << '\n';
      return exit_success;
    }
    std::vector<Assignment> configs;
    bool truncated = false;
    if (args.spec) {
      const auto& specs = resolved.model.meta.configurations;
      auto it = std::find_if(specs.begin(), specs.end(), [&](const ConfigurationSpec& c) { return c.name == *args.spec; });
      if (it == specs.end()) {
        std::string available;
        for (const auto& c : specs) available += (available.empty() ? "" : ", ") + c.name;
        print(err, {make_error("E0503",
                               "no configuration named '" + *args.spec + "' (available: " +
                                 (available.empty() ? "none" : available) + ")",
                               resolved.model.meta.span)});
        return exit_model_error;
      }
      configs = complete_configuration(resolved, *it, options);
      if (configs.size() > limit) {
        configs.resize(limit);
        truncated = true;
      }
    } else if (args.count) {
      out << count_configurations(resolved, options) << '\n';
      return exit_success;
    } else {
      auto enumeration = enumerate_configurations(resolved, limit, options);
      configs = std::move(enumeration.configurations);
      truncated = enumeration.truncated;
    }
    if (args.count) {
      out << configs.size() << '\n';
      return exit_success;
    }
    for (const auto& a : configs) out << format_assignment(resolved, a) << '\n';
    if (truncated) err << "tdm: output truncated at " << configs.size() << " configuration(s)\n";
    return exit_success;
  } catch (const DiagnosticError& e) {
    print(err, {e.diagnostic()});
    return exit_model_error;
  }
}

int cmd_generate(const std::string& path, const std::string& spec, const std::string& target, bool force,
                 std::ostream& out, std::ostream& err)
{
  const auto options = engine_options(force);
  auto loaded = load(path, err);
  if (!loaded.checked) return loaded.status;
  ReleaseResult result;
  try {
    result = generate_release(loaded.checked->resolved, spec, options);
  } catch (const DiagnosticError& e) {
    print(err, {e.diagnostic()});
    return exit_model_error;
  }
  if (!result.release) {
    print(err, result.diagnostics);
    return exit_model_error;
  }
  const std::string manifest = emit_manifest(*result.release);
  if (target == "-") {
    out << manifest;
    return exit_success;
  }
  std::ofstream file(target, std::ios::binary | std::ios::trunc);
  if (!file || !(file << manifest) || !file.flush()) {
    err << "tdm: cannot write '" << target << "'\n";
    return exit_io;
  }
  return exit_success;
}

int cmd_fmt(const std::string& path, bool write, bool verify, std::ostream& err)
{
  if (write == verify) throw UsageError{"fmt needs exactly one of --write or --verify"};
  auto source = read_file(path);
  if (!source) {
    err << "tdm: cannot read '" << path << "'\n";
    return exit_io;
  }
  auto parsed = parse_model(*source, path);
  if (!parsed.model) {
    print(err, parsed.diagnostics);
    return exit_model_error;
  }
  const std::string canonical = pretty_print(*parsed.model);
  if (verify) {
    if (canonical == *source) return exit_success;
    err << path << ": not canonically formatted (run 'tdm fmt --write " << path << "')\n";
    return exit_model_error;
  }
  if (canonical == *source) return exit_success;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << canonical) || !file.flush()) {
    err << "tdm: cannot write '" << path << "'\n";
    return exit_io;
  }
  return exit_success;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Textual variability models: check, enumerate configurations, generate releases", "tdm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tdm 0.1.0");

  std::string check_file;
  bool report = false;
  auto* check_cmd = app.add_subcommand("check", "Validate a model and print its diagnostics");
  check_cmd->add_option("file", check_file, "Model file (.tdm)")->required();
  check_cmd->add_flag("--report", report, "Print the per-feature conformance table");

  ConfigsArgs configs;
  auto* configs_cmd = app.add_subcommand("configs", "Count, list or analyze valid configurations");
  configs_cmd->add_option("file", configs.file, "Model file (.tdm)")->required();
  configs_cmd->add_flag("--count", configs.count, "Print the number of valid configurations");
  configs_cmd->add_flag("--list", configs.list, "Print one configuration per line");
  configs_cmd->add_flag("--dead", configs.dead, "Print feature values no configuration selects");
  configs_cmd->add_option("--limit", configs.limit, "Stop listing after N configurations");
  configs_cmd->add_option("--spec", configs.spec, "Restrict to completions of a named configuration");
  configs_cmd->add_flag("--force", configs.force, "Ignore the state-space safety cap");

  std::string gen_file, gen_spec, gen_out;
  bool gen_force = false;
  auto* generate_cmd = app.add_subcommand("generate", "Derive a release and write its manifest");
  generate_cmd->add_option("file", gen_file, "Model file (.tdm)")->required();
  generate_cmd->add_option("spec", gen_spec, "Configuration name")->required();
  generate_cmd->add_option("out", gen_out, "Manifest path, or - for standard output")->required();
  generate_cmd->add_flag("--force", gen_force, "Ignore the state-space safety cap");

  std::string fmt_file;
  bool fmt_write = false, fmt_verify = false;
  auto* fmt_cmd = app.add_subcommand("fmt", "Rewrite or verify canonical formatting");
  fmt_cmd->add_option("file", fmt_file, "Model file (.tdm)")->required();
  fmt_cmd->add_flag("--write", fmt_write, "Rewrite the file in canonical form");
  fmt_cmd->add_flag("--verify", fmt_verify, "Fail if the file is not canonical");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_success;
  } catch (const CLI::CallForVersion&) {
    out << "tdm 0.1.0\n";
    return exit_success;
  } catch (const CLI::ParseError& e) {
    err << "tdm: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(check_file, report, out, err);
    if (configs_cmd->parsed()) return cmd_configs(configs, out, err);
    if (generate_cmd->parsed()) return cmd_generate(gen_file, gen_spec, gen_out, gen_force, out, err);
    if (fmt_cmd->parsed()) return cmd_fmt(fmt_file, fmt_write, fmt_verify, err);
  } catch (const UsageError& e) {
    err << "tdm: " << e.message << '\n';
    return exit_usage;
  }
  return exit_usage;
}

} // namespace tdm::cli
