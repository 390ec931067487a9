#include "tdm/diagnostic.hpp"

#include <algorithm>
#include <tuple>

namespace tdm {

Diagnostic make_error(std::string code, std::string message, SourceSpan span)
{
  return Diagnostic{std::move(code), Severity::error, std::move(message), std::move(span)};
}

Diagnostic make_warning(std::string code, std::string message, SourceSpan span)
{
  return Diagnostic{std::move(code), Severity::warning, std::move(message), std::move(span)};
}

std::string format_diagnostic(const Diagnostic& d)
{
  std::string out = d.span.file;
  out += ':';
  out += std::to_string(d.span.line_start);
  out += ':';
  out += std::to_string(d.span.col_start);
  out += d.severity == Severity::error ? ": ERROR " : ": WARNING ";
  out += d.code;
  out += ": ";
  out += d.message;
  return out;
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics)
{
  std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.span.file, a.span.line_start, a.span.col_start, a.code) <
           std::tie(b.span.file, b.span.line_start, b.span.col_start, b.code);
  });
}

bool has_errors(const std::vector<Diagnostic>& diagnostics)
{
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

const std::vector<DiagnosticCode>& diagnostic_table()
{
  static const std::vector<DiagnosticCode> table = {
    {"E0001", Severity::error, "unterminated method body"},
    {"E0002", Severity::error, "illegal character"},
    {"E0101", Severity::error, "malformed model header or trailing input"},
    {"E0102", Severity::error, "unexpected item in types block"},
    {"E0103", Severity::error, "empty value set"},
    {"E0104", Severity::error, "malformed feature declaration"},
    {"E0105", Severity::error, "malformed relation declaration"},
    {"E0106", Severity::error, "malformed rule or literal"},
    {"E0107", Severity::error, "malformed global or control block"},
    {"E0108", Severity::error, "malformed configuration block"},
    {"E0109", Severity::error, "malformed product or interface declaration"},
    {"E0110", Severity::error, "malformed member declaration"},
    {"E0111", Severity::error, "malformed predicate"},
    {"E0112", Severity::error, "malformed implementation declaration"},
    {"E0201", Severity::error, "unknown feature"},
    {"E0202", Severity::error, "value not in the feature's domain"},
    {"E0203", Severity::error, "duplicate name in a scope"},
    {"E0204", Severity::error, "configuration requires two values of one feature"},
    {"E0205", Severity::error, "relation has no builtin semantics"},
    {"E0206", Severity::error, "implementation realizes an unknown interface"},
    {"E0207", Severity::error, "feature not visible to the interface"},
    {"E0208", Severity::error, "implementation body names an undeclared method"},
    {"E0209", Severity::error, "literal both required and discarded"},
    {"W0301", Severity::warning, "control rule relates a feature to itself"},
    {"W0302", Severity::warning, "feature value is never referenced"},
    {"W0303", Severity::warning, "association not backed by any rule"},
    {"E0401", Severity::error, "configuration space exceeds the safety cap"},
    {"E0501", Severity::error, "no implementation matches"},
    {"E0502", Severity::error, "ambiguous implementation selection"},
    {"E0503", Severity::error, "configuration has no valid completion"},
    {"E0504", Severity::error, "configuration has several valid completions"},
  };
  return table;
}

bool is_known_code(const std::string& code)
{
  const auto& table = diagnostic_table();
  return std::any_of(table.begin(), table.end(), [&](const DiagnosticCode& c) { return code == c.code; });
}

DiagnosticError::DiagnosticError(Diagnostic diagnostic)
    : std::runtime_error(format_diagnostic(diagnostic)), diagnostic_(std::move(diagnostic))
{
}

} // namespace tdm
