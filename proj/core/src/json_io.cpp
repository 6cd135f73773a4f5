// Copyright 2026 The qqbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qqbf/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qqbf {

json point_to_json(const RiemannPoint& z) {
  if (z.is_infinity()) return json("inf");
  const Complex v = z.z();
  return json{{"re", v.real()}, {"im", v.imag()}};
}

RiemannPoint point_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return RiemannPoint::infinity();
    return parse_point(j.get<std::string>());
  }
  return RiemannPoint::from_z({j.at("re").get<double>(), j.at("im").get<double>()});
}

RiemannPoint parse_point(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s == "inf" || s == "Inf" || s == "INF") return RiemannPoint::infinity();

  auto to_double = [&text](std::string part) {
    if (part.empty() || part == "+") part += "1";
    if (part == "-") part = "-1";
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed complex literal: " + text);
    }
    if (used != part.size()) throw std::invalid_argument("malformed complex literal: " + text);
    return v;
  };

  // Accepted forms: "a", "bi", "a+bi", "a-bi", "i", "-i".
  if (s.back() != 'i') return RiemannPoint::from_z({to_double(s), 0.0});
  s.pop_back();
  // Split at the last +/- that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return RiemannPoint::from_z({0.0, to_double(s)});
  return RiemannPoint::from_z(
      {to_double(s.substr(0, split)), to_double(s.substr(split))});
}

namespace {

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw std::invalid_argument("empty matrix");
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)));
  return m;
}

}  // namespace

json block_to_json(const BlockUnitary& block) {
  json rules = json::array();
  for (const BranchRule& rule : block.branch_rules)
    rules.push_back({{"herald_mode", rule.herald_mode}, {"label", to_string(rule.label)}});
  return json{{"kind", block.kind == BlockKind::kProduct ? "product" : "addition"},
              {"phases", block.phases},
              {"matrix", matrix_to_json(block.matrix)},
              {"branch_rules", rules}};
}

BlockUnitary block_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  std::array<double, 4> phases = j.at("phases").get<std::array<double, 4>>();
  BlockUnitary block = kind == "product"
                           ? product_unitary(phases[0], phases[1], phases[2], phases[3])
                           : addition_unitary(phases[0], phases[1], phases[2], phases[3]);
  if (j.contains("matrix")) {
    const Eigen::MatrixXcd m = matrix_from_json(j.at("matrix"));
    if ((m - block.matrix).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("stored block matrix disagrees with its phases");
  }
  return block;
}

json program_to_json(const MeshProgram& program) {
  json nodes = json::array();
  for (const MziSetting& node : program.nodes)
    nodes.push_back({{"layer", node.layer},
                     {"top_mode", node.top_mode},
                     {"theta", node.theta},
                     {"phi", node.phi}});
  json j{{"modes", program.modes}, {"nodes", nodes}};
  if (!program.input_phases.empty()) j["input_phases"] = program.input_phases;
  if (!program.output_phases.empty()) j["output_phases"] = program.output_phases;
  return j;
}

MeshProgram program_from_json(const json& j) {
  MeshProgram program;
  program.modes = j.at("modes").get<int>();
  for (const json& node : j.at("nodes"))
    program.nodes.push_back({node.at("layer").get<int>(), node.at("top_mode").get<int>(),
                             node.at("theta").get<double>(), node.at("phi").get<double>()});
  if (j.contains("input_phases"))
    program.input_phases = j.at("input_phases").get<std::vector<double>>();
  if (j.contains("output_phases"))
    program.output_phases = j.at("output_phases").get<std::vector<double>>();
  validate_layout(program);
  return program;
}

json unitary_to_json(const Eigen::MatrixXcd& u) { return matrix_to_json(u); }

Eigen::MatrixXcd unitary_from_json(const json& j) { return matrix_from_json(j); }

json overlap_to_json(const OverlapSpec& spec) {
  json gram = json::array();
  for (Eigen::Index i = 0; i < spec.gram().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j2 = 0; j2 < spec.gram().cols(); ++j2)
      row.push_back(spec.gram()(i, j2).real());
    gram.push_back(row);
  }
  return json{{"gram", gram},
              {"c_same_pair", spec.c_same_pair},
              {"c_cross_pair", spec.c_cross_pair}};
}

OverlapSpec overlap_from_json(const json& j) {
  if (j.contains("gram")) {
    const json& g = j.at("gram");
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXcd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        gram(i, k) = g.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>();
    OverlapSpec spec(std::move(gram));
    spec.c_same_pair = j.value("c_same_pair", 1.0);
    spec.c_cross_pair = j.value("c_cross_pair", 1.0);
    return spec;
  }
  const double c_same = j.value("c_same_pair", 0.99);
  const double c_cross = j.value("c_cross_pair", 0.90);
  return OverlapSpec::three_photon(c_same, c_cross);
}

json report_to_json(const EnsembleReport& report) {
  json samples = json::array();
  for (const SampleRecord& rec : report.records) {
    json inputs = json::array();
    for (const RiemannPoint& z : rec.inputs) inputs.push_back(point_to_json(z));
    samples.push_back({{"inputs", inputs},
                       {"branch", rec.branch},
                       {"probability", rec.probability},
                       {"fidelity", rec.fidelity},
                       {"sigma", rec.sigma},
                       {"fidelity_raw", rec.fidelity_raw},
                       {"sigma_raw", rec.sigma_raw}});
  }
  return json{{"config",
               {{"operation", report.operation},
                {"seed", report.seed},
                {"samples", report.samples},
                {"shots", report.shots},
                {"accidental_rate", report.accidental_rate},
                {"rep_rate", report.rep_rate},
                {"c_indistinguishability", report.c_indistinguishability}}},
              {"samples", samples},
              {"aggregates",
               {{"mean_fidelity", report.mean_fidelity},
                {"mean_fidelity_error", report.mean_fidelity_error}}},
              {"probability_histogram",
               {{"lo", report.probability_histogram.lo},
                {"hi", report.probability_histogram.hi},
                {"mass", report.probability_histogram.mass},
                {"overlay", report.probability_histogram.overlay}}}};
}

namespace {

void dump_value(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * static_cast<std::size_t>(depth + 1),
                           ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in + json(it.key()).dump() + ": ";
        dump_value(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_value(j.at(i), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case json::value_t::number_float: {
      char buffer[64];
      std::snprintf(buffer, sizeof(buffer), "%.17g", j.get<double>());
      out += buffer;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_fixed_precision(const json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace qqbf
