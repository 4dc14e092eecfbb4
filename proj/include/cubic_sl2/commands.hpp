#pragma once

// End-to-end commands behind the command-line tool. Each produces a Report:
// a JSON document with every number written as an exact string.

#include <cubic_sl2/algebra.hpp>
#include <cubic_sl2/diffop.hpp>
#include <cubic_sl2/realization.hpp>
#include <cubic_sl2/rep.hpp>
#include <cubic_sl2/scalar.hpp>

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubic_sl2 {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, error };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
  }
  return "?";
}

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Informational section; does not affect the status.
  void add(const std::string& name, Json value) { sections_.push_back({name, std::nullopt, std::move(value)}); }

  /// Checked section; any failing check makes the report fail.
  void check(const std::string& name, bool ok, Json value = Json::object()) {
    sections_.push_back({name, ok, std::move(value)});
    if (!ok) failed_ = true;
  }

  void set_error(const std::string& message) {
    error_ = message;
    sections_.push_back({"error", std::nullopt, Json{{"message", message}}});
  }

  Status status() const {
    if (error_) return Status::error;
    return failed_ ? Status::fail : Status::pass;
  }

  int exit_code() const {
    switch (status()) {
      case Status::pass: return 0;
      case Status::fail: return 1;
      case Status::error: return 2;
    }
    return 2;
  }

  /// Finding by name, if present.
  const Json* find(const std::string& name) const {
    for (const auto& s : sections_)
      if (s.name == name) return &s.value;
    return nullptr;
  }

  std::optional<bool> passed(const std::string& name) const {
    for (const auto& s : sections_)
      if (s.name == name) return s.pass;
    return std::nullopt;
  }

  Json to_json() const {
    Json out;
    out["command"] = command_;
    out["status"] = to_string(status());
    Json sections = Json::array();
    for (const auto& s : sections_) {
      Json entry;
      entry["name"] = s.name;
      if (s.pass) entry["pass"] = *s.pass;
      entry["value"] = s.value;
      sections.push_back(std::move(entry));
    }
    out["sections"] = std::move(sections);
    return out;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }

 private:
  struct Section {
    std::string name;
    std::optional<bool> pass;
    Json value;
  };

  std::string command_;
  std::vector<Section> sections_;
  bool failed_ = false;
  std::optional<std::string> error_;
};

// ---------------------------------------------------------------------------
// JSON rendering.

inline Json to_json(const Scalar& s) { return s.to_string(); }

inline Json to_json(const Matrix& m) { return m.to_rows(); }

inline Json to_json(const MatrixTriple& t) {
  return Json{{"J0", to_json(t.j0)}, {"J+", to_json(t.j_plus)}, {"J-", to_json(t.j_minus)}};
}

inline Json to_json(const AlgebraParams& p) {
  return Json{{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}, {"gamma", to_json(p.gamma)},
              {"delta", to_json(p.delta)}};
}

inline Json to_json(const DiffOpTriple& t) {
  return Json{{"J0", t.j0.to_string()}, {"J+", t.j_plus.to_string()}, {"J-", t.j_minus.to_string()}};
}

inline Json to_json(const RepSpec& s) {
  return Json{{"twoJ", s.two_j}, {"q", s.q},           {"twoM1", s.two_m1}, {"a", to_json(s.a)},
              {"c", to_json(s.c)}, {"f", to_json(s.f)}, {"g", to_json(s.g)}};
}

inline Json to_json(const CaseSolution& s) {
  Json j{{"c", to_json(s.c)}, {"delta", to_json(s.delta)}, {"fg", to_json(s.fg)}, {"branch", to_string(s.branch)}};
  if (s.radicand) j["radicand"] = s.radicand->get_str();
  return j;
}

/// Nonzero entries of a residual matrix, located.
inline Json nonzero_entries(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.dimension(); ++i)
    for (std::size_t j = 0; j < m.dimension(); ++j)
      if (!m(i, j).is_zero()) out.push_back(Json{{"row", i}, {"col", j}, {"value", to_json(m(i, j))}});
  return out;
}

inline Json to_json(const RelationResiduals& r) {
  return Json{{"raising", nonzero_entries(r.raising)},
              {"lowering", nonzero_entries(r.lowering)},
              {"bracket", nonzero_entries(r.bracket)}};
}

inline Json to_json(const ClosureReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json e{{"relation", f.relation}, {"shift", f.shift}, {"polynomial", f.polynomial.to_string()}};
    if (f.exponent) e["exponent"] = *f.exponent;
    failures.push_back(std::move(e));
  }
  return Json{{"raising", r.raising.to_string()},
              {"lowering", r.lowering.to_string()},
              {"bracket", r.bracket.to_string()},
              {"failures", std::move(failures)}};
}

// ---------------------------------------------------------------------------
// Representation files:
//   {"diagonal": ["c0", ...], "ladders": [[from, to, "coeff"], ...], "params": {...}}
// A ladder with to > from is an entry of J+, with to < from an entry of J-.

inline AlgebraParams params_from_json(const Json& j) {
  auto get = [&](const char* key) {
    if (!j.contains(key)) throw parse_error(std::string("params: missing '") + key + "'");
    return parse_scalar(j.at(key).get<std::string>());
  };
  return {get("alpha"), get("beta"), get("gamma"), get("delta")};
}

inline MatrixTriple rep_from_json(const Json& j) {
  if (!j.contains("diagonal") || !j.at("diagonal").is_array()) throw parse_error("rep: missing 'diagonal' list");
  std::vector<Scalar> diag;
  for (const auto& e : j.at("diagonal")) diag.push_back(parse_scalar(e.get<std::string>()));
  const std::size_t n = diag.size();
  if (n == 0) throw parse_error("rep: empty diagonal");
  MatrixTriple t{Matrix::diagonal(diag), Matrix(n), Matrix(n)};
  if (j.contains("ladders")) {
    for (const auto& e : j.at("ladders")) {
      if (!e.is_array() || e.size() != 3) throw parse_error("rep: ladder entries are [from, to, coefficient]");
      const auto from = e[0].get<long>();
      const auto to = e[1].get<long>();
      if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= n || static_cast<std::size_t>(to) >= n)
        throw std::invalid_argument("rep: ladder index out of range for dimension " + std::to_string(n));
      if (from == to) throw parse_error("rep: ladder entry with from == to");
      const Scalar coeff = parse_scalar(e[2].get<std::string>());
      Matrix& target = to > from ? t.j_plus : t.j_minus;
      target(static_cast<std::size_t>(to), static_cast<std::size_t>(from)) += coeff;
    }
  }
  return t;
}

inline Json rep_to_json(const MatrixTriple& t, const std::optional<AlgebraParams>& params) {
  if (!t.j0.is_diagonal()) throw std::invalid_argument("rep file format needs a diagonal J0");
  Json diag = Json::array();
  for (const auto& d : t.j0.diagonal_entries()) diag.push_back(to_json(d));
  Json ladders = Json::array();
  const auto n = t.dimension();
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row < n; ++row) {
      if (row > col && !t.j_plus(row, col).is_zero()) ladders.push_back(Json::array({col, row, to_json(t.j_plus(row, col))}));
      if (row < col && !t.j_minus(row, col).is_zero()) ladders.push_back(Json::array({col, row, to_json(t.j_minus(row, col))}));
      if ((row <= col && !t.j_plus(row, col).is_zero()) || (row >= col && !t.j_minus(row, col).is_zero()))
        throw std::invalid_argument("rep file format needs J+ strictly raising and J- strictly lowering");
    }
  Json out{{"dimension", n}, {"diagonal", std::move(diag)}, {"ladders", std::move(ladders)}};
  if (params) out["params"] = to_json(*params);
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("'" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------

struct VerifyCaseRequest {
  CaseId id = CaseId::case1;
  Rational alpha;
  Rational beta;
  std::optional<Rational> gamma;  // unset: the space-independent gamma
  std::optional<Branch> branch;   // unset: the valid branch (intrinsic) or upper
  std::optional<std::string> emit_rep_path;
};

/// solve_case -> realization -> preservation of {1, x, x^3} -> closure (on the
/// space and for every monomial) -> matrix relations -> Casimir -> decomposition.
/// With an explicit gamma the space-independent closure and the Casimir are
/// reported but not required.
inline Report cmd_verify_case(const VerifyCaseRequest& req) {
  Report report("verify-case");
  try {
    const bool intrinsic = !req.gamma.has_value();
    const Scalar alpha(req.alpha);
    const Scalar beta(req.beta);
    const auto& table = case_table(req.id);

    Json input{{"case", static_cast<int>(req.id)},
               {"alpha", req.alpha.get_str()},
               {"beta", req.beta.get_str()},
               {"gamma_mode", intrinsic ? "intrinsic" : "explicit"}};
    report.add("input", input);

    if (req.alpha == 0 && req.beta == 0)
      throw invalid_parameters("alpha = beta = 0 forces gamma = delta = 0 (trivial algebra)");

    Scalar gamma;
    Branch branch = Branch::upper;
    std::optional<IntrinsicChoice> choice;
    if (intrinsic) {
      choice = intrinsic_gamma_and_product(req.id, alpha, beta);
      gamma = choice->gamma;
      branch = req.branch.value_or(choice->valid_branch);
    } else {
      gamma = Scalar(*req.gamma);
      branch = req.alpha == 0 ? Branch::alpha_zero : req.branch.value_or(Branch::upper);
    }

    const CaseSolution sol = solve_case(req.id, alpha, beta, gamma, branch);
    const AlgebraParams params{alpha, beta, gamma, sol.delta};
    Json sol_json = to_json(sol);
    sol_json["gamma"] = to_json(gamma);
    report.add("solution", sol_json);
    report.add("params", to_json(params));

    const RepSpec spec = solved_rep_spec(req.id, sol);
    report.add("rep_spec", to_json(spec));
    const auto residuals = constraint_residuals(spec, params);
    Json res_json = Json::array();
    bool residuals_zero = true;
    for (const auto& r : residuals) {
      res_json.push_back(to_json(r));
      residuals_zero = residuals_zero && r.is_zero();
    }
    report.check("constraint_residuals", residuals_zero, res_json);

    if (intrinsic) {
      const bool product_ok = sol.fg == choice->fg;
      report.check("ladder_product", product_ok,
                   Json{{"fg", to_json(sol.fg)}, {"closed_form", to_json(choice->fg)}});
      const bool c_rational = sol.c.is_rational() && sol.delta.is_rational();
      report.check("rational_solution", c_rational, Json{{"c", to_json(sol.c)}, {"delta", to_json(sol.delta)}});
      const AlgebraParams printed = intrinsic_params(req.id, alpha, beta);
      report.check("delta_matches_closed_form", printed.delta == sol.delta,
                   Json{{"delta", to_json(sol.delta)}, {"closed_form", to_json(printed.delta)}});
    }

    const DiffOpTriple ops = build_case_realization_from_label(req.id, sol.c, 1, sol.fg);
    report.add("realization", to_json(ops));
    if (intrinsic) {
      const DiffOpTriple closed = build_case_realization(req.id, alpha, beta, 1, sol.fg);
      report.check("realization_matches_closed_form", closed.j0 == ops.j0,
                   Json{{"J0", closed.j0.to_string()}});
    }

    const MonomialSpace v3 = MonomialSpace::v3();
    const bool preserved =
        preserves_space(ops.j0, v3) && preserves_space(ops.j_plus, v3) && preserves_space(ops.j_minus, v3);
    report.check("preserves_V3", preserved, Json{{"space", v3.exponents()}});
    if (!preserved) return report;

    const auto on_space = closure_check(ops, params, OnSpace{v3});
    report.check("closure_on_V3", on_space.pass, to_json(on_space));
    const auto everywhere = closure_check(ops, params, Intrinsic{});
    if (intrinsic)
      report.check("closure_intrinsic", everywhere.pass, to_json(everywhere));
    else
      report.add("closure_intrinsic", Json{{"pass", everywhere.pass}, {"detail", to_json(everywhere)}});

    const MatrixTriple rep{matrix_on_space(ops.j0, v3), matrix_on_space(ops.j_plus, v3),
                           matrix_on_space(ops.j_minus, v3)};
    report.add("matrices", to_json(rep));
    report.check("matches_rep_matrices", rep == build_new_rep_matrices(spec));
    const auto rel = check_deformed_relations(rep, params);
    report.check("matrix_relations", rel.all_zero(), to_json(rel));

    const Matrix casimir = casimir_matrix(rep, params);
    const auto scalar = is_scalar_multiple_of_identity(casimir);
    Json cas{{"matrix", to_json(casimir)}, {"scalar", scalar ? Json(to_json(*scalar)) : Json(nullptr)}};
    if (intrinsic) {
      const Scalar expected = casimir_closed_form(req.id, alpha, beta);
      cas["closed_form"] = to_json(expected);
      report.check("casimir", scalar && *scalar == expected, cas);
    } else {
      report.add("casimir", cas);
    }

    const auto blocks = decompose_rep(rep);
    Json blocks_json = Json::array();
    for (const auto& b : blocks) {
      Json exps = Json::array();
      for (auto i : b.indices) exps.push_back(v3.exponents()[i]);
      Json eig = Json::array();
      for (const auto& e : b.eigenvalues) eig.push_back(to_json(e));
      Json entry{{"indices", b.indices}, {"exponents", exps}, {"twoJ", b.two_j}, {"eigenvalues", eig}};
      if (b.c_label) {
        entry["c_label"] = to_json(*b.c_label);
        if (b.indices.size() == 2) entry["c_label_meaning"] = "c = c_label - a/4, a free";
      }
      blocks_json.push_back(std::move(entry));
    }
    if (intrinsic) {
      const Scalar shift = -beta / (3 * alpha);
      bool shape_ok = blocks.size() == 2;
      if (shape_ok) {
        const auto& single = blocks[0].indices.size() == 1 ? blocks[0] : blocks[1];
        const auto& pair = blocks[0].indices.size() == 2 ? blocks[0] : blocks[1];
        shape_ok = single.indices.size() == 1 && pair.indices.size() == 2 &&
                   v3.exponents()[single.indices[0]] == table.separated_exponent &&
                   *single.c_label == Scalar(table.c_j0) + shift &&
                   *pair.c_label == Scalar(table.midpoint_j_half) + shift;
      }
      report.check("decomposition", shape_ok, blocks_json);

      Json discrepancies = Json::array();
      const Scalar printed_j1 = Scalar(table.printed_c_j1) + shift;
      if (printed_j1 != sol.c)
        discrepancies.push_back(Json{{"claim", "J=1 label of the decomposition"},
                                     {"printed", to_json(printed_j1)},
                                     {"computed", to_json(sol.c)}});
      report.add("discrepancies", discrepancies);
    } else {
      report.add("decomposition", blocks_json);
    }

    if (req.emit_rep_path) {
      std::ofstream out(*req.emit_rep_path);
      if (!out) throw std::runtime_error("cannot write '" + *req.emit_rep_path + "'");
      out << rep_to_json(rep, params).dump(2) << "\n";
      report.add("emitted_rep", *req.emit_rep_path);
    }
  } catch (const std::exception& e) {
    report.set_error(e.what());
  }
  return report;
}

inline Report cmd_enumerate_preserving(const std::vector<int>& exponents, int max_order) {
  Report report("enumerate-preserving");
  try {
    const MonomialSpace space(exponents);
    report.add("input", Json{{"space", exponents}, {"max_order", max_order}});
    const auto basis = enumerate_preserving_operators(space, max_order);
    Json ops = Json::array();
    bool all_preserve = true;
    for (const auto& op : basis) {
      ops.push_back(op.to_string());
      all_preserve = all_preserve && preserves_space(op, space);
    }
    report.add("dimension", basis.size());
    report.add("restricted_dimension", restricted_dimension(basis, space));
    report.check("basis_preserves_space", all_preserve, ops);
  } catch (const std::exception& e) {
    report.set_error(e.what());
  }
  return report;
}

/// Checks a caller-supplied representation; `params` overrides the rep file's own "params".
inline Report cmd_rep_check(const Json& rep_doc, const std::optional<Json>& params_doc) {
  Report report("rep-check");
  try {
    const MatrixTriple rep = rep_from_json(rep_doc);
    AlgebraParams params;
    if (params_doc) {
      params = params_from_json(*params_doc);
    } else if (rep_doc.contains("params")) {
      params = params_from_json(rep_doc.at("params"));
    } else {
      throw parse_error("no algebra parameters: pass a params file or embed 'params' in the rep file");
    }
    if (rep_doc.contains("dimension") && rep_doc.at("dimension").get<std::size_t>() != rep.dimension())
      throw std::invalid_argument("rep: 'dimension' disagrees with the diagonal length");
    report.add("params", to_json(params));
    report.add("matrices", to_json(rep));
    const auto rel = check_deformed_relations(rep, params);
    report.check("relations", rel.all_zero(), to_json(rel));
    const Matrix casimir = casimir_matrix(rep, params);
    const auto scalar = is_scalar_multiple_of_identity(casimir);
    report.add("casimir", Json{{"matrix", to_json(casimir)}, {"is_scalar", scalar.has_value()},
                               {"scalar", scalar ? Json(to_json(*scalar)) : Json(nullptr)}});
  } catch (const std::exception& e) {
    report.set_error(e.what());
  }
  return report;
}

inline Report cmd_rep_check_files(const std::string& rep_path, const std::optional<std::string>& params_path) {
  try {
    const Json rep = read_json_file(rep_path);
    std::optional<Json> params;
    if (params_path) params = read_json_file(*params_path);
    return cmd_rep_check(rep, params);
  } catch (const std::exception& e) {
    Report report("rep-check");
    report.set_error(e.what());
    return report;
  }
}

}  // namespace cubic_sl2
