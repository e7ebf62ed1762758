#include "sors/lp_export.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <set>
#include <string>

namespace sors {

std::string lp_format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  if (std::strpbrk(buf, "eE") == nullptr) return buf;
  // %g switched to scientific; re-render fixed with matching significance
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  const int precision = std::max(0, 11 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

namespace {

void append_terms(std::string& out, const std::vector<LpTerm>& terms) {
  bool first = true;
  std::size_t line = out.size() - out.rfind('\n') - 1;
  for (const LpTerm& t : terms) {
    std::string piece;
    if (first) {
      if (t.coefficient < 0) piece += "- ";
    } else {
      piece += t.coefficient < 0 ? " - " : " + ";
    }
    const double mag = std::fabs(t.coefficient);
    if (mag != 1.0) {
      piece += lp_format_number(mag);
      piece += ' ';
    }
    piece += t.variable;
    if (line + piece.size() > 72 && !first) {
      out += '\n';
      out += ' ';
      line = 1;
      // the continuation keeps the operator on the new line
      if (piece.starts_with(' ')) piece.erase(0, 1);
    }
    out += piece;
    line += piece.size();
    first = false;
  }
}

}  // namespace

void LpDocument::check() const {
  std::set<std::string> declared(binaries.begin(), binaries.end());
  for (const LpBound& b : bounds) declared.insert(b.variable);
  auto verify = [&](const std::vector<LpTerm>& terms, const std::string& where) {
    for (const LpTerm& t : terms) {
      if (t.variable.empty() || t.variable.size() > 255) {
        throw ValidationError("bad variable name in " + where);
      }
      if (!declared.contains(t.variable)) {
        throw ValidationError("undeclared variable " + t.variable + " in " + where);
      }
    }
  };
  verify(objective, "objective");
  std::set<std::string> row_names;
  for (const LpRow& row : rows) {
    if (!row_names.insert(row.name).second) {
      throw ValidationError("duplicate row name " + row.name);
    }
    verify(row.terms, "row " + row.name);
  }
}

std::string LpDocument::to_text() const {
  check();
  std::string out;
  for (const std::string& c : comments) {
    out += "\\ ";
    out += c;
    out += '\n';
  }
  out += "Maximize\n obj: ";
  append_terms(out, objective);
  out += "\nSubject To\n";
  for (const LpRow& row : rows) {
    out += ' ';
    out += row.name;
    out += ": ";
    append_terms(out, row.terms);
    out += row.sense == '<' ? " <= " : " >= ";
    out += lp_format_number(row.rhs);
    out += '\n';
  }
  if (!bounds.empty()) {
    out += "Bounds\n";
    for (const LpBound& b : bounds) {
      out += ' ';
      out += lp_format_number(b.lower);
      out += " <= ";
      out += b.variable;
      out += " <= ";
      out += lp_format_number(b.upper);
      out += '\n';
    }
  }
  if (!binaries.empty()) {
    out += "Binary\n";
    std::size_t line = 0;
    for (const std::string& b : binaries) {
      if (line == 0) {
        out += ' ';
        line = 1;
      } else if (line + b.size() + 1 > 72) {
        out += "\n ";
        line = 1;
      } else {
        out += ' ';
        ++line;
      }
      out += b;
      line += b.size();
    }
    out += '\n';
  }
  out += "End\n";
  return out;
}

LpDocument export_lp(const SorsModel& model,
                     const std::vector<InfluenceMatrix>& influences) {
  validate_model(model);
  const Index n = model.size();
  const Index types = model.type_count();
  if (influences.size() != types) {
    throw DimensionMismatchError("got " + std::to_string(influences.size()) +
                                 " influence matrices for " + std::to_string(types) +
                                 " value types");
  }

  auto xvar = [](Index i) { return "x" + std::to_string(i + 1); };
  auto gvar = [](Index i) { return "g" + std::to_string(i + 1); };
  auto thetavar = [&](Index i, Index k) {
    return "theta" + std::to_string(i + 1) + "_" + std::to_string(model.value_types[k].key);
  };
  auto yvar = [&](Index i, Index k) {
    return "y" + std::to_string(i + 1) + "_" + std::to_string(model.value_types[k].key);
  };

  // theta/y machinery only exists where some influence can force a penalty;
  // elsewhere theta = y = 0 and the variables would be dead weight.
  std::vector<std::vector<bool>> has_penalty(n, std::vector<bool>(types, false));
  std::vector<bool> has_g(n, false);
  for (Index k = 0; k < types; ++k) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (j != i && influences[k].at(i, j) != 0.0) {
          has_penalty[i][k] = true;
          has_g[i] = true;
          break;
        }
      }
    }
  }

  LpDocument doc;
  doc.comments.push_back("penalty-adjusted requirement selection, " + std::to_string(n) +
                         " requirements, " + std::to_string(types) + " value types");
  for (Index i = 0; i < n; ++i) {
    doc.comments.push_back(xvar(i) + " = " + model.requirements[i].id);
  }

  for (Index i = 0; i < n; ++i) {
    const double v = model.requirements[i].values[0];
    if (v != 0.0) {
      doc.objective.push_back({v, xvar(i)});
      if (has_penalty[i][0]) doc.objective.push_back({-v, yvar(i, 0)});
    }
  }
  if (doc.objective.empty()) doc.objective.push_back({0.0, xvar(0)});

  LpRow budget{"budget", {}, '<', model.budget};
  for (Index i = 0; i < n; ++i) {
    if (model.requirements[i].cost != 0.0) {
      budget.terms.push_back({model.requirements[i].cost, xvar(i)});
    }
  }
  if (budget.terms.empty()) budget.terms.push_back({0.0, xvar(0)});
  doc.rows.push_back(std::move(budget));

  for (Index k = 1; k < types; ++k) {
    LpRow social{"social_" + std::to_string(model.value_types[k].key), {}, '>',
                 model.social_bounds[k - 1]};
    for (Index i = 0; i < n; ++i) {
      const double v = model.requirements[i].values[k];
      if (v != 0.0) {
        social.terms.push_back({v, xvar(i)});
        if (has_penalty[i][k]) social.terms.push_back({-v, yvar(i, k)});
      }
    }
    if (social.terms.empty()) social.terms.push_back({0.0, xvar(0)});
    doc.rows.push_back(std::move(social));
  }

  std::size_t structural_index = 0;
  for (const PrecedenceConstraint& c : model.structural) {
    ++structural_index;
    if (c.kind == StructuralKind::Precedes) {
      doc.rows.push_back({"prec" + std::to_string(structural_index),
                          {{1.0, xvar(c.i)}, {-1.0, xvar(c.j)}},
                          '<',
                          0.0});
    } else {
      doc.rows.push_back({"conf" + std::to_string(structural_index),
                          {{1.0, xvar(c.i)}, {1.0, xvar(c.j)}},
                          '<',
                          1.0});
    }
  }

  // theta_{i,k} + I_{i,j,k} x_j >= (|I| + I)/2, one row per nonzero influence
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < types; ++k) {
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        const double I = influences[k].at(i, j);
        if (I == 0.0) continue;
        doc.rows.push_back({"pen" + std::to_string(i + 1) + "_" + std::to_string(j + 1) +
                                "_" + std::to_string(model.value_types[k].key),
                            {{1.0, thetavar(i, k)}, {I, xvar(j)}},
                            '>',
                            I > 0.0 ? I : 0.0});
      }
    }
  }

  // g_i = x_i and y_{i,k} = g_i ? theta_{i,k} : 0, stated as linear rows
  for (Index i = 0; i < n; ++i) {
    if (!has_g[i]) continue;
    const std::string si = std::to_string(i + 1);
    doc.rows.push_back({"xg_a" + si, {{1.0, xvar(i)}, {-1.0, gvar(i)}}, '<', 0.0});
    doc.rows.push_back({"xg_b" + si, {{1.0, xvar(i)}, {1.0, gvar(i)}}, '>', 0.0});
    doc.rows.push_back({"xg_c" + si, {{1.0, xvar(i)}, {-1.0, gvar(i)}}, '>', 0.0});
    doc.rows.push_back({"xg_d" + si, {{1.0, xvar(i)}, {1.0, gvar(i)}}, '<', 2.0});
    for (Index k = 0; k < types; ++k) {
      if (!has_penalty[i][k]) continue;
      const std::string sk = std::to_string(model.value_types[k].key);
      doc.rows.push_back(
          {"yg_a" + si + "_" + sk, {{1.0, yvar(i, k)}, {-1.0, gvar(i)}}, '<', 0.0});
      doc.rows.push_back(
          {"yg_b" + si + "_" + sk, {{1.0, yvar(i, k)}, {1.0, gvar(i)}}, '>', 0.0});
      doc.rows.push_back({"yth_a" + si + "_" + sk,
                          {{1.0, yvar(i, k)}, {-1.0, thetavar(i, k)}, {1.0, gvar(i)}},
                          '<',
                          1.0});
      doc.rows.push_back({"yth_b" + si + "_" + sk,
                          {{1.0, yvar(i, k)}, {-1.0, thetavar(i, k)}, {-1.0, gvar(i)}},
                          '>',
                          -1.0});
    }
  }

  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < types; ++k) {
      if (!has_penalty[i][k]) continue;
      doc.bounds.push_back({thetavar(i, k), 0.0, 1.0});
      doc.bounds.push_back({yvar(i, k), 0.0, 1.0});
    }
  }

  for (Index i = 0; i < n; ++i) doc.binaries.push_back(xvar(i));
  for (Index i = 0; i < n; ++i) {
    if (has_g[i]) doc.binaries.push_back(gvar(i));
  }

  return doc;
}

}  // namespace sors
