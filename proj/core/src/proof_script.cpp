#include "conlog/proof_script.hpp"

#include <map>

#include <json.hpp>

#include "conlog/error.hpp"
#include "conlog/syntax.hpp"
#include "conlog/translate.hpp"

namespace conlog {

using json = nlohmann::ordered_json;

namespace {

Sort sort_of(const json& v, const Signature& sig, std::size_t line) {
  std::string text = v.is_number_unsigned() ? std::to_string(v.get<unsigned>()) : v.is_string() ? v.get<std::string>() : "";
  auto s = sig.find_sort(text);
  if (!s) throw ParseError("unknown sort '" + text + "'", line, 0);
  return *s;
}

/// Sort of a scheme metavariable, looked up in the schemes the rule cites.
std::optional<Sort> metavariable_sort(const ProofSystem& sys, const std::string& scheme, const std::string& name) {
  for (const auto& s : sys.schemes()) {
    if (!scheme.empty() && s.family != scheme && s.name != scheme) continue;
    for (const auto& v : variables(s.pattern)) {
      if (v.name == name) return v.sort;
    }
  }
  return std::nullopt;
}

Justification parse_rule(const std::string& rule, std::size_t line) {
  Justification j;
  auto parts = std::vector<std::string>{};
  std::size_t start = 0;
  while (true) {
    auto colon = rule.find(':', start);
    parts.push_back(rule.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const std::string& head = parts[0];
  if (head == "premise" && parts.size() == 1) {
    j.kind = RuleKind::premise;
  } else if (head == "mp" && parts.size() == 1) {
    j.kind = RuleKind::mp;
  } else if (head == "pl" && parts.size() == 1) {
    j.kind = RuleKind::axiom;
    j.scheme = "PL";
  } else if (head == "ax" && parts.size() <= 2) {
    j.kind = RuleKind::axiom;
    if (parts.size() == 2) j.scheme = parts[1];
  } else if (head == "ug" && parts.size() <= 3) {
    j.kind = RuleKind::ug;
    if (parts.size() >= 2) j.modality = parts[1];
    if (parts.size() == 3) {
      try {
        j.position = std::stoul(parts[2]);
      } catch (const std::exception&) {
        throw ParseError("bad UG position '" + parts[2] + "'", line, 0);
      }
    }
  } else {
    throw ParseError("unknown rule '" + rule + "'", line, 0);
  }
  return j;
}

std::string rule_text(const Justification& j) {
  switch (j.kind) {
    case RuleKind::premise: return "premise";
    case RuleKind::mp: return "mp";
    case RuleKind::axiom: return j.scheme.empty() ? "ax" : "ax:" + j.scheme;
    case RuleKind::ug: {
      std::string out = "ug";
      if (!j.modality.empty() || j.position != 0) out += ":" + j.modality;
      if (j.position != 0) out += ":" + std::to_string(j.position);
      return out;
    }
  }
  return "?";
}

}  // namespace

ProofScript parse_proof_script(std::string_view text) {
  ProofScript out;
  bool have_header = false;
  std::optional<ProofSystem> sys;
  SortDeclarations decls;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t')) raw.remove_suffix(1);
    std::size_t lead = 0;
    while (lead < raw.size() && (raw[lead] == ' ' || raw[lead] == '\t')) ++lead;
    raw.remove_prefix(lead);
    if (raw.empty() || raw.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno, 0);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", lineno, 0);
    auto parse = [&](const json& v, std::optional<Sort> expected, const char* what) {
      if (!v.is_string()) throw ParseError(std::string(what) + " must be a string", lineno, 0);
      try {
        return expected ? parse_formula(v.get<std::string>(), *expected, sys->signature(), &decls)
                        : parse_formula_any_sort(v.get<std::string>(), sys->signature(), &decls);
      } catch (const ParseError& e) {
        throw ParseError(std::string(what) + ": " + e.what(), lineno, e.column());
      } catch (const Error& e) {
        throw ParseError(std::string(what) + ": " + e.what(), lineno, 0);
      }
    };
    try {
      if (!have_header) {
        have_header = true;
        if (!obj.contains("system")) throw ParseError("header needs a \"system\" field", lineno, 0);
        out.system = obj.at("system").get<std::string>();
        try {
          sys = ProofSystem::by_name(out.system);
        } catch (const Error& e) {
          throw ParseError(e.what(), lineno, 0);
        }
        if (obj.contains("vars")) {
          for (const auto& [name, s] : obj.at("vars").items()) decls[name] = sort_of(s, sys->signature(), lineno);
        }
        if (obj.contains("premises")) {
          for (const auto& p : obj.at("premises")) out.premises.push_back(parse(p, std::nullopt, "premise"));
        }
        if (obj.contains("goal")) out.goal = parse(obj.at("goal"), std::nullopt, "goal");
        continue;
      }
      if (!obj.contains("index") || !obj.at("index").is_number_unsigned()) {
        throw ParseError("line needs a numeric \"index\"", lineno, 0);
      }
      if (!obj.contains("formula")) throw ParseError("line needs a \"formula\"", lineno, 0);
      if (!obj.contains("rule")) throw ParseError("line needs a \"rule\"", lineno, 0);
      ProofLine line{obj.at("index").get<std::size_t>(), parse(obj.at("formula"), std::nullopt, "formula"),
                     parse_rule(obj.at("rule").get<std::string>(), lineno)};
      if (obj.contains("refs")) {
        for (const auto& r : obj.at("refs")) {
          if (!r.is_number_unsigned()) throw ParseError("refs must be positive integers", lineno, 0);
          line.justification.refs.push_back(r.get<std::size_t>());
        }
      }
      if (obj.contains("subst")) {
        for (const auto& [key, value] : obj.at("subst").items()) {
          std::string name = key;
          std::optional<Sort> s;
          if (auto colon = key.find(':'); colon != std::string::npos) {
            name = key.substr(0, colon);
            s = sort_of(json(key.substr(colon + 1)), sys->signature(), lineno);
          } else {
            s = metavariable_sort(*sys, line.justification.scheme, name);
            if (!s) throw ParseError("cannot tell the sort of metavariable '" + name + "'", lineno, 0);
          }
          Formula f = parse(value, s, "substitution");
          line.justification.substitution.emplace(VarKey{name, *s}, f);
        }
      }
      out.lines.push_back(std::move(line));
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed field: ") + e.what(), lineno, 0);
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError("missing header line", 0, 0);
  return out;
}

std::string serialize_proof_script(const ProofScript& script) {
  std::vector<Formula> all = script.premises;
  if (script.goal) all.push_back(*script.goal);
  for (const auto& l : script.lines) {
    all.push_back(l.formula);
    for (const auto& [k, v] : l.justification.substitution) all.push_back(v);
  }
  json header;
  header["system"] = script.system;
  // A name used at two sorts cannot be declared once; print suffixes instead.
  PrintOptions opts;
  std::map<std::string, Sort> seen;
  for (const auto& v : variables(all)) {
    if (!seen.emplace(v.name, v.sort).second) opts.annotate_sorts = true;
  }
  json vars = json::object();
  if (!opts.annotate_sorts) {
    for (const auto& [name, s] : seen) vars[name] = default_sort_name(s);
  }
  header["vars"] = vars;
  auto to_string = [&](const Formula& f) { return conlog::to_string(f, opts); };
  json premises = json::array();
  for (const auto& p : script.premises) premises.push_back(to_string(p));
  header["premises"] = premises;
  if (script.goal) header["goal"] = to_string(*script.goal);
  std::string out = header.dump() + "\n";
  for (const auto& l : script.lines) {
    json obj;
    obj["index"] = l.index;
    obj["formula"] = to_string(l.formula);
    obj["rule"] = rule_text(l.justification);
    if (!l.justification.refs.empty()) obj["refs"] = l.justification.refs;
    if (!l.justification.substitution.empty()) {
      json subst = json::object();
      for (const auto& [k, v] : l.justification.substitution) {
        subst[k.name + ":" + default_sort_name(k.sort)] = to_string(v);
      }
      obj["subst"] = subst;
    }
    out += obj.dump() + "\n";
  }
  return out;
}

Verdict check_script(const ProofScript& script) {
  return check_proof(script.lines, script.premises, ProofSystem::by_name(script.system), script.goal);
}

ProofScript translate_script(const ProofScript& kf_script) {
  if (kf_script.system != "KF") throw SignatureError("only KF scripts can be translated");
  ProofScript out;
  out.system = "KB2";
  for (const auto& p : kf_script.premises) out.premises.push_back(translate_rho(p));
  if (kf_script.goal) out.goal = translate_rho(*kf_script.goal);
  out.lines = translate_proof(kf_script.lines);
  return out;
}

}  // namespace conlog
