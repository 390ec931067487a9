#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tdm/parser.hpp"

namespace testing_support {

std::string read_text(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string corpus_path(const std::string& name) { return std::string(TDM_CORPUS_DIR) + "/" + name; }

std::string data_path(const std::string& name) { return std::string(TDM_TEST_DATA_DIR) + "/" + name; }

tdm::Model parse_or_throw(const std::string& source, const std::string& file)
{
  auto parsed = tdm::parse_model(source, file);
  if (!parsed.model) {
    std::string message = "parse failed:";
    for (const auto& d : parsed.diagnostics) message += "\n" + tdm::format_diagnostic(d);
    throw std::runtime_error(message);
  }
  return std::move(*parsed.model);
}

tdm::ResolvedModel certify(tdm::Model model)
{
  auto checked = tdm::check(std::move(model));
  if (!checked.resolved.certified) {
    std::string message = "check failed:";
    for (const auto& d : checked.diagnostics) message += "\n" + tdm::format_diagnostic(d);
    throw std::runtime_error(message);
  }
  return std::move(checked.resolved);
}

tdm::Model set_model()
{
  return parse_or_throw(read_text(corpus_path("set.tdm")), "corpus/set.tdm");
}

tdm::Literal lit(const std::string& text)
{
  const auto dot = text.find('.');
  if (dot == std::string::npos) throw std::invalid_argument("literal needs a '.': " + text);
  return {text.substr(0, dot), text.substr(dot + 1), {}};
}

tdm::ControlRule make_rule(const std::string& lhs, const std::string& relation, const std::string& rhs)
{
  return {lit(lhs), relation, lit(rhs), {}};
}

tdm::Model set_with_rules(const std::vector<tdm::ControlRule>& rules)
{
  auto model = set_model();
  model.meta.control.insert(model.meta.control.end(), rules.begin(), rules.end());
  return model;
}

} // namespace testing_support
