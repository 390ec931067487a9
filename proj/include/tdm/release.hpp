#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdm/engine.hpp"

namespace tdm {

/// A configuration bound to one implementation per interface.
struct Release
{
  std::string model; // name of the feature model
  std::string name;
  Assignment assignment;
  std::map<std::string, std::string> bindings; // interface -> implementation
  /// Every interface in declaration order with the members whose guard holds.
  std::vector<std::pair<std::string, std::vector<MemberDecl>>> active_members;

  friend bool operator==(const Release&, const Release&) = default;
};

/// Throws IncompleteAssignment naming every unassigned feature the
/// predicate mentions.
[[nodiscard]] bool eval_predicate(const Predicate& predicate, const Assignment& a);

struct Selection
{
  std::map<std::string, std::string> bindings;
  std::vector<Diagnostic> diagnostics; // E0501 / E0502, one per failing interface
};

/// Picks, for each interface with implementations, the single one whose
/// `when` predicate holds. Interfaces without implementations are skipped.
[[nodiscard]] Selection select_implementations(const ResolvedModel& resolved, const Assignment& a);

/// Unguarded members plus guarded members whose guard holds, in source order.
[[nodiscard]] std::vector<MemberDecl> project_members(const InterfaceDecl& iface, const Assignment& a);

struct ReleaseResult
{
  std::optional<Release> release;
  std::vector<Diagnostic> diagnostics;
};

/// Completes the named configuration (it must have exactly one valid
/// completion), selects implementations and projects members.
[[nodiscard]] ReleaseResult generate_release(const ResolvedModel& resolved, const std::string& spec_name,
                                             const EngineOptions& options = {});

/// JSON manifest, keys `model`, `release`, `assignment`, `bindings`,
/// `members`, `fingerprint` in that order; 2-space indent, LF, trailing LF.
/// The fingerprint is FNV-1a 64 over the manifest rendered without it.
[[nodiscard]] std::string emit_manifest(const Release& release);

[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

} // namespace tdm
