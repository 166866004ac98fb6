#include "mdk/analysis.hpp"

#include <deque>

#include "mdk/syntax.hpp"

namespace mdk {

namespace {

bool user_constant(const std::string& name) { return !name.empty() && name[0] != kPatternVarPrefix; }

class DepsWalker {
 public:
  DepsWalker(const Signature& sig, DependencyReport& report) : sig_(sig), report_(report) {}

  void add(const std::string& name) {
    if (!user_constant(name)) return;
    if (!sig_.contains(name)) throw Error(Category::UnknownName, "unknown constant '" + name + "'");
    if (report_.constants.insert(name).second) pending_.push_back(name);
  }

  void add_all(const Term& t) {
    std::set<std::string> names;
    collect_constants(t, names);
    for (const auto& n : names) add(n);
  }

  // Everything the declaration of `name` mentions: its type, its body, and
  // its rules.
  void expand(const std::string& name) {
    const Declaration* d = sig_.find(name);
    add_all(d->type);
    if (d->body) add_all(*d->body);
    for (const auto& r : sig_.rules(name)) {
      if (r.unfolding) continue;
      for (const auto& [_, ty] : r.context) add_all(ty);
      add_all(r.lhs_term);
      add_all(r.rhs);
    }
  }

  void close() {
    while (!pending_.empty()) {
      std::string n = pending_.front();
      pending_.pop_front();
      expand(n);
    }
  }

 private:
  const Signature& sig_;
  DependencyReport& report_;
  std::deque<std::string> pending_;
};

std::string root_label(const DepsRoot& root) {
  if (const auto* n = std::get_if<std::string>(&root)) return *n;
  return "_";
}

}  // namespace

std::string DependencyReport::format() const {
  std::string out = "root " + root_label(root) + "\n";
  out += std::string("mode ") + (transitive ? "transitive" : "direct") + "\n";
  out += std::string("approx ") + kApproximation + "\n";
  for (const auto& c : constants) out += "const " + c + "\n";
  for (const auto& [head, ordinal] : rules) out += "rule " + head + " " + std::to_string(ordinal) + "\n";
  return out;
}

DependencyReport deps(const Signature& sig, const DepsRoot& root, bool transitive) {
  DependencyReport report;
  report.root = root;
  report.transitive = transitive;
  DepsWalker walker(sig, report);
  if (const auto* name = std::get_if<std::string>(&root)) {
    if (!sig.contains(*name)) throw Error(Category::UnknownName, "unknown constant '" + *name + "'");
    walker.add(*name);
    walker.expand(*name);
  } else {
    walker.add_all(std::get<Term>(root));
  }
  if (transitive) walker.close();
  for (const auto& c : report.constants) {
    for (const auto& r : sig.rules(c)) {
      if (!r.unfolding) report.rules.emplace(c, r.ordinal);
    }
  }
  return report;
}

SourceFile trimmed_source(const Signature& sig, const DependencyReport& report) {
  SourceFile out;
  for (const auto& item : sig.items()) {
    bool keep = item.kind == Signature::Item::Kind::Declaration
                    ? report.constants.count(item.name) > 0
                    : report.rules.count({item.name, item.ordinal}) > 0;
    if (keep) out.entries.push_back(sig.entry_for(item));
  }
  return out;
}

Elaborated check_with_trimmed(const Signature& sig, const DepsRoot& root, const ElabOptions& options) {
  DependencyReport report = deps(sig, root, true);
  Elaborated trimmed = elaborate(trimmed_source(sig, report), options);
  if (const auto* name = std::get_if<std::string>(&root)) {
    const Declaration* before = sig.find(*name);
    const Declaration* after = trimmed.signature.find(*name);
    if (!after || after->kind != before->kind || !alpha_eq(after->type, before->type)) {
      throw Error(Category::Internal, "trimmed signature lost or changed '" + *name + "'");
    }
  } else {
    Fuel fuel(options.fuel, options.trace);
    infer(trimmed.signature, {}, std::get<Term>(root), fuel);
  }
  return trimmed;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "EQUAL";
    case Verdict::Subset: return "SUBSET";
    case Verdict::Superset: return "SUPERSET";
    case Verdict::Compatible: return "COMPATIBLE";
    case Verdict::Conflict: return "CONFLICT";
  }
  return "CONFLICT";
}

std::string TheoryRelation::format() const {
  std::string out = std::string(verdict_name(verdict)) + "\n";
  for (const auto& f : details) {
    switch (f.kind) {
      case Finding::Kind::LeftOnly: out += "left-only " + f.name; break;
      case Finding::Kind::RightOnly: out += "right-only " + f.name; break;
      case Finding::Kind::LeftOnlyRule: out += "left-only-rule " + f.name + " " + f.detail; break;
      case Finding::Kind::RightOnlyRule: out += "right-only-rule " + f.name + " " + f.detail; break;
      case Finding::Kind::Mismatch: out += "mismatch " + f.name + " " + f.detail; break;
      case Finding::Kind::UnionFailed: out += "union-failed " + f.detail; break;
    }
    out += "\n";
  }
  return out;
}

namespace {

std::size_t own_rule_count(const Signature& sig, const std::string& name) {
  std::size_t n = 0;
  for (const auto& r : sig.rules(name)) n += r.unfolding ? 0 : 1;
  return n;
}

}  // namespace

SourceFile union_source(const Signature& left, const Signature& right) {
  SourceFile out = left.to_source();
  for (const auto& item : right.items()) {
    bool right_only = item.kind == Signature::Item::Kind::Declaration
                          ? !left.contains(item.name)
                          : item.ordinal >= own_rule_count(left, item.name);
    if (right_only) out.entries.push_back(right.entry_for(item));
  }
  return out;
}

TheoryRelation compare(const Signature& left, const Signature& right, const ElabOptions& options) {
  TheoryRelation rel;
  bool left_extra = false;
  bool right_extra = false;
  bool conflict = false;
  std::vector<Finding> mismatches;

  for (const auto& name : left.declaration_names()) {
    const Declaration* l = left.find(name);
    const Declaration* r = right.find(name);
    if (!r) {
      rel.details.push_back({Finding::Kind::LeftOnly, name, {}});
      left_extra = true;
      continue;
    }
    if (l->kind != r->kind) {
      mismatches.push_back({Finding::Kind::Mismatch, name,
                            "kind " + std::string(decl_kind_name(l->kind)) + "/" +
                                std::string(decl_kind_name(r->kind))});
      continue;
    }
    if (!alpha_eq(l->type, r->type)) {
      mismatches.push_back({Finding::Kind::Mismatch, name, "type"});
      continue;
    }
    if (l->kind == DeclKind::Definition && !alpha_eq(*l->body, *r->body)) {
      mismatches.push_back({Finding::Kind::Mismatch, name, "body"});
      continue;
    }
    if (l->kind != DeclKind::Definable) continue;
    const auto& lr = left.rules(name);
    const auto& rr = right.rules(name);
    std::size_t common = std::min(lr.size(), rr.size());
    for (std::size_t i = 0; i < common; ++i) {
      if (!same_rule(lr[i], rr[i])) {
        mismatches.push_back({Finding::Kind::Mismatch, name, "rule " + std::to_string(i)});
      }
    }
    for (std::size_t i = common; i < lr.size(); ++i) {
      rel.details.push_back({Finding::Kind::LeftOnlyRule, name, std::to_string(i)});
      left_extra = true;
    }
    for (std::size_t i = common; i < rr.size(); ++i) {
      rel.details.push_back({Finding::Kind::RightOnlyRule, name, std::to_string(i)});
      right_extra = true;
    }
  }
  for (const auto& name : right.declaration_names()) {
    if (!left.contains(name)) {
      rel.details.push_back({Finding::Kind::RightOnly, name, {}});
      right_extra = true;
    }
  }
  conflict = !mismatches.empty();
  rel.details.insert(rel.details.end(), mismatches.begin(), mismatches.end());

  if (conflict) {
    rel.verdict = Verdict::Conflict;
    return rel;
  }
  try {
    rel.union_theory = elaborate(union_source(left, right), options);
  } catch (const Error& e) {
    rel.details.push_back({Finding::Kind::UnionFailed, {}, e.format("union")});
    rel.verdict = Verdict::Conflict;
    return rel;
  }
  if (!left_extra && !right_extra) {
    rel.verdict = Verdict::Equal;
  } else if (!left_extra) {
    rel.verdict = Verdict::Subset;
  } else if (!right_extra) {
    rel.verdict = Verdict::Superset;
  } else {
    rel.verdict = Verdict::Compatible;
  }
  return rel;
}

}  // namespace mdk
