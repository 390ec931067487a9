#include "tdm/release.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace tdm {

namespace {

bool eval(const Predicate& p, const Assignment& a)
{
  switch (p.kind) {
  case Predicate::Kind::literal: return a.at(p.literal.feature) == p.literal.value;
  case Predicate::Kind::negation: return !eval(p.operands[0], a);
  case Predicate::Kind::conjunction: return eval(p.operands[0], a) && eval(p.operands[1], a);
  case Predicate::Kind::disjunction: return eval(p.operands[0], a) || eval(p.operands[1], a);
  }
  return false;
}

const char* kind_name(MemberDecl::Kind kind) { return kind == MemberDecl::Kind::attribute ? "attribute" : "method"; }

} // namespace

bool eval_predicate(const Predicate& predicate, const Assignment& a)
{
  std::vector<std::string> missing;
  for (const auto& l : literals_of(predicate))
    if (!a.count(l.feature) && std::find(missing.begin(), missing.end(), l.feature) == missing.end())
      missing.push_back(l.feature);
  if (!missing.empty()) throw IncompleteAssignment(std::move(missing));
  return eval(predicate, a);
}

Selection select_implementations(const ResolvedModel& resolved, const Assignment& a)
{
  require_certified(resolved);
  Selection out;
  const auto& product = resolved.model.product;
  if (!product) return out;
  for (const auto& iface : product->interfaces) {
    std::vector<std::string> candidates, matches;
    for (const auto& impl : product->implementations) {
      if (impl.realizes != iface.name) continue;
      candidates.push_back(impl.name);
      if (eval_predicate(impl.when, a)) matches.push_back(impl.name);
    }
    if (candidates.empty()) continue;
    if (matches.size() == 1) {
      out.bindings.emplace(iface.name, matches.front());
      continue;
    }
    std::string listed;
    for (const auto& m : (matches.empty() ? candidates : matches)) listed += (listed.empty() ? "" : ", ") + m;
    if (matches.empty()) {
      out.diagnostics.push_back(make_error(
        "E0501", "no implementation of interface '" + iface.name + "' matches the configuration (candidates: " + listed + ")",
        iface.span));
    } else {
      out.diagnostics.push_back(make_error(
        "E0502", "ambiguous implementation for interface '" + iface.name + "': " + listed, iface.span));
    }
  }
  sort_diagnostics(out.diagnostics);
  return out;
}

std::vector<MemberDecl> project_members(const InterfaceDecl& iface, const Assignment& a)
{
  std::vector<MemberDecl> out;
  for (const auto& m : iface.members)
    if (!m.guard || eval_predicate(*m.guard, a)) out.push_back(m);
  return out;
}

ReleaseResult generate_release(const ResolvedModel& resolved, const std::string& spec_name, const EngineOptions& options)
{
  require_certified(resolved);
  ReleaseResult out;
  const auto& meta = resolved.model.meta;
  auto spec = std::find_if(meta.configurations.begin(), meta.configurations.end(),
                           [&](const ConfigurationSpec& c) { return c.name == spec_name; });
  if (spec == meta.configurations.end()) {
    std::string available;
    for (const auto& c : meta.configurations) available += (available.empty() ? "" : ", ") + c.name;
    out.diagnostics.push_back(make_error("E0503",
                                         "no configuration named '" + spec_name + "' (available: " +
                                           (available.empty() ? "none" : available) + ")",
                                         meta.span));
    return out;
  }

  const auto completions = complete_configuration(resolved, *spec, options);
  if (completions.empty()) {
    out.diagnostics.push_back(
      make_error("E0503", "configuration '" + spec_name + "' has no valid completion", spec->span));
    return out;
  }
  if (completions.size() > 1) {
    out.diagnostics.push_back(make_error("E0504",
                                         "configuration '" + spec_name + "' has " + std::to_string(completions.size()) +
                                           " valid completions; tighten its require/discard lists",
                                         spec->span));
    return out;
  }

  Release release;
  release.model = meta.name;
  release.name = spec_name;
  release.assignment = completions.front();
  auto selection = select_implementations(resolved, release.assignment);
  if (!selection.diagnostics.empty()) {
    out.diagnostics = std::move(selection.diagnostics);
    return out;
  }
  release.bindings = std::move(selection.bindings);
  if (resolved.model.product)
    for (const auto& iface : resolved.model.product->interfaces)
      release.active_members.emplace_back(iface.name, project_members(iface, release.assignment));
  out.release = std::move(release);
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string emit_manifest(const Release& release)
{
  using json = nlohmann::ordered_json;
  json doc = json::object();
  doc["model"] = release.model;
  doc["release"] = release.name;
  // std::map iteration is already ascending by key.
  json assignment = json::object();
  for (const auto& [feature, value] : release.assignment) assignment[feature] = value;
  doc["assignment"] = std::move(assignment);
  json bindings = json::object();
  for (const auto& [iface, impl] : release.bindings) bindings[iface] = impl;
  doc["bindings"] = std::move(bindings);
  json members = json::object();
  for (const auto& [iface, active] : release.active_members) {
    json list = json::array();
    for (const auto& m : active)
      list.push_back(json{{"kind", kind_name(m.kind)}, {"name", m.name}, {"signature", m.signature()}});
    members[iface] = std::move(list);
  }
  doc["members"] = std::move(members);

  const std::string body = doc.dump(2) + "\n";
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  doc["fingerprint"] = std::string(hex);
  return doc.dump(2) + "\n";
}

} // namespace tdm
