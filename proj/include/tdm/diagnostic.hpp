#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tdm/model.hpp"

namespace tdm {

enum class Severity { error, warning };

struct Diagnostic
{
  std::string code; // E0101, W0301, ...
  Severity severity = Severity::error;
  std::string message;
  SourceSpan span;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

[[nodiscard]] Diagnostic make_error(std::string code, std::string message, SourceSpan span);
[[nodiscard]] Diagnostic make_warning(std::string code, std::string message, SourceSpan span);

/// `<file>:<line>:<col>: <SEVERITY> <CODE>: <message>`
[[nodiscard]] std::string format_diagnostic(const Diagnostic& diagnostic);

/// Orders by (file, line, col, code); stable for ties.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Every code the toolchain can emit, with a one-line summary.
struct DiagnosticCode
{
  const char* code;
  Severity severity;
  const char* summary;
};

[[nodiscard]] const std::vector<DiagnosticCode>& diagnostic_table();
[[nodiscard]] bool is_known_code(const std::string& code);

/// Raised when an operation's precondition does not hold (uncertified model,
/// incomplete assignment, ...). Distinct from model findings, which are
/// reported as diagnostics.
class PreconditionError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// A failure that is reported as a single diagnostic (e.g. E0401).
class DiagnosticError : public std::runtime_error
{
public:
  explicit DiagnosticError(Diagnostic diagnostic);

  [[nodiscard]] const Diagnostic& diagnostic() const noexcept { return diagnostic_; }

private:
  Diagnostic diagnostic_;
};

} // namespace tdm
