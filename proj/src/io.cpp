// Copyright 2026 The qudit-gates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qudit/io.hpp"

#include "qudit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qudit::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw FormatError(name, "enclosing value is not a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(name, "missing field");
  return *it;
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw FormatError(name, "expected an integer");
  return v.get<int>();
}

std::string string_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) throw FormatError(name, "expected a string");
  return v.get<std::string>();
}

double number_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number()) throw FormatError(name, "expected a number");
  return v.get<double>();
}

QuditDim dim_field(const json& j) {
  const int d = int_field(j, "dim");
  if (d < 2) throw FormatError("dim", "must be >= 2");
  return QuditDim(d);
}

Eigen::MatrixXd real_table(const json& j, const char* name, QuditDim dim) {
  const json& rows = field(j, name);
  const int d = dim.value();
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw FormatError(name, "expected " + std::to_string(d) + " rows");
  }
  Eigen::MatrixXd m(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw FormatError(name, "row " + std::to_string(r) + " must have " + std::to_string(d) + " entries");
    }
    for (int c = 0; c < d; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) {
        throw FormatError(name, "entry (" + std::to_string(r) + ", " + std::to_string(c) + ") is not a number");
      }
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

json table_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* parity_name(optics::Parity p) { return p == optics::Parity::Even ? "even" : "odd"; }

optics::Parity parity_field(const json& j, const char* name, optics::Parity fallback) {
  if (!j.contains(name)) return fallback;
  const std::string s = string_field(j, name);
  if (s == "even") return optics::Parity::Even;
  if (s == "odd") return optics::Parity::Odd;
  throw FormatError(name, "expected \"even\" or \"odd\", got \"" + s + "\"");
}

}  // namespace

json matrix_to_json(const GateMatrix& g) {
  return {{"dim", g.dim().value()}, {"re", table_to_json(g.matrix().real())}, {"im", table_to_json(g.matrix().imag())}};
}

GateMatrix matrix_from_json(const json& j) {
  const QuditDim dim = dim_field(j);
  const Eigen::MatrixXd re = real_table(j, "re", dim);
  const Eigen::MatrixXd im = real_table(j, "im", dim);
  Eigen::MatrixXcd m(dim.index(), dim.index());
  m.real() = re;
  m.imag() = im;
  return GateMatrix(std::move(m));
}

json coefficients_to_json(const WeylCoefficients& h) {
  return {{"dim", h.dim().value()},
          {"h_re", table_to_json(h.table().real())},
          {"h_im", table_to_json(h.table().imag())}};
}

WeylCoefficients coefficients_from_json(const json& j) {
  const QuditDim dim = dim_field(j);
  const Eigen::MatrixXd re = real_table(j, "h_re", dim);
  const Eigen::MatrixXd im = real_table(j, "h_im", dim);
  Eigen::MatrixXcd h(dim.index(), dim.index());
  h.real() = re;
  h.imag() = im;
  return WeylCoefficients(dim, std::move(h));
}

json element_to_json(const optics::OpticalElement& e) {
  using namespace optics;
  if (const auto* s = std::get_if<SpiralPhasePlate>(&e)) {
    return {{"type", "spp"}, {"path", s->path}, {"delta", s->delta_ell}};
  }
  if (const auto* m = std::get_if<Mirror>(&e)) return {{"type", "mirror"}, {"path", m->path}};
  if (const auto* p = std::get_if<PhaseShift>(&e)) return {{"type", "phase"}, {"path", p->path}, {"phi", p->phi}};
  if (const auto* s = std::get_if<ParitySorter>(&e)) {
    return {{"type", "parity_sorter"},
            {"in", s->in_paths},
            {"out_even", s->out_even},
            {"out_odd", s->out_odd},
            {"reflect", parity_name(s->reflected)}};
  }
  const auto& r = std::get<Recombiner>(e);
  return {{"type", "recombiner"},
          {"in_even", r.in_even},
          {"in_odd", r.in_odd},
          {"out", r.out},
          {"mode", r.mode == RecombinerMode::Ideal ? "ideal" : "lossy_pbs"},
          {"reflect", parity_name(r.reflected)}};
}

optics::OpticalElement element_from_json(const json& j) {
  using namespace optics;
  const std::string type = string_field(j, "type");
  if (type == "spp") return SpiralPhasePlate{string_field(j, "path"), int_field(j, "delta")};
  if (type == "mirror") return Mirror{string_field(j, "path")};
  if (type == "phase") return PhaseShift{string_field(j, "path"), number_field(j, "phi")};
  if (type == "parity_sorter") {
    ParitySorter s;
    const json& in = field(j, "in");
    if (!in.is_array() || in.empty()) throw FormatError("in", "expected a non-empty array of path names");
    for (const auto& p : in) {
      if (!p.is_string()) throw FormatError("in", "path names must be strings");
      s.in_paths.push_back(p.get<std::string>());
    }
    s.out_even = string_field(j, "out_even");
    s.out_odd = string_field(j, "out_odd");
    s.reflected = parity_field(j, "reflect", Parity::Even);
    return s;
  }
  if (type == "recombiner") {
    Recombiner r;
    r.in_even = string_field(j, "in_even");
    r.in_odd = string_field(j, "in_odd");
    r.out = string_field(j, "out");
    if (j.contains("mode")) {
      const std::string mode = string_field(j, "mode");
      if (mode == "ideal") {
        r.mode = RecombinerMode::Ideal;
      } else if (mode == "lossy_pbs") {
        r.mode = RecombinerMode::LossyPbs;
      } else {
        throw FormatError("mode", "expected \"ideal\" or \"lossy_pbs\", got \"" + mode + "\"");
      }
    }
    r.reflected = parity_field(j, "reflect", Parity::Odd);
    return r;
  }
  throw FormatError("type", "unknown element type \"" + type + "\"");
}

json circuit_to_json(const optics::OpticalCircuit& c) {
  json elements = json::array();
  for (const auto& e : c.elements()) elements.push_back(element_to_json(e));
  return {{"dim", c.dim().value()},
          {"oam_offset", c.map().oam_offset()},
          {"elements", std::move(elements)},
          {"input", c.input_path()},
          {"output", c.output_path()}};
}

optics::OpticalCircuit circuit_from_json(const json& j) {
  const QuditDim dim = dim_field(j);
  const int offset = int_field(j, "oam_offset");
  const json& es = field(j, "elements");
  if (!es.is_array()) throw FormatError("elements", "expected an array");
  std::vector<optics::OpticalElement> elements;
  elements.reserve(es.size());
  for (const auto& e : es) elements.push_back(element_from_json(e));
  return optics::OpticalCircuit(SubspaceMap(dim, offset), std::move(elements), string_field(j, "input"),
                                string_field(j, "output"));
}

std::string count_matrix_to_csv(const optics::CountMatrix& m) {
  const std::vector<int> labels = m.map().oam_labels();
  std::ostringstream os;
  os << "input\\output";
  for (int l : labels) os << ',' << l;
  os << '\n';
  char buf[64];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    os << labels[i];
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const double v = m(static_cast<int>(i), static_cast<int>(j));
      if (m.form() == optics::CountForm::Counts) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(v)));
      } else {
        std::snprintf(buf, sizeof buf, "%.6f", v);
      }
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

optics::CountMatrix count_matrix_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      cells.push_back(cell);
    }
    return cells;
  };
  auto to_int = [](const std::string& s, const char* what) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      throw FormatError(what, "\"" + s + "\" is not an integer label");
    }
    if (pos != s.size()) throw FormatError(what, "\"" + s + "\" is not an integer label");
    return v;
  };

  if (!std::getline(is, line)) throw FormatError("header", "empty CSV");
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "input\\output") {
    throw FormatError("header", "expected \"input\\output,<labels>\"");
  }
  std::vector<int> labels;
  for (std::size_t k = 1; k < header.size(); ++k) labels.push_back(to_int(header[k], "header"));
  for (std::size_t k = 1; k < labels.size(); ++k) {
    if (labels[k] != labels[k - 1] + 1) throw FormatError("header", "labels must be consecutive integers");
  }
  const int d = static_cast<int>(labels.size());
  const SubspaceMap map(QuditDim(d), labels.front());

  Eigen::MatrixXd values(d, d);
  bool integral = true;
  int row = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    const std::string where = "row " + std::to_string(row);
    if (row >= d) throw FormatError(where, "more rows than labels");
    if (static_cast<int>(cells.size()) != d + 1) throw FormatError(where, "expected " + std::to_string(d + 1) + " cells");
    if (to_int(cells[0], "input") != labels[static_cast<std::size_t>(row)]) {
      throw FormatError(where, "input label does not match header order");
    }
    for (int c = 0; c < d; ++c) {
      const std::string& cell = cells[static_cast<std::size_t>(c + 1)];
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw FormatError(where, "\"" + cell + "\" is not a number");
      }
      if (pos != cell.size() || !std::isfinite(v)) throw FormatError(where, "\"" + cell + "\" is not a number");
      if (cell.find_first_of(".eE") != std::string::npos) integral = false;
      values(row, c) = v;
    }
    ++row;
  }
  if (row != d) throw FormatError("rows", "expected " + std::to_string(d) + " rows, got " + std::to_string(row));
  return optics::CountMatrix(map, std::move(values),
                             integral ? optics::CountForm::Counts : optics::CountForm::Probability);
}

json count_matrix_to_json(const optics::CountMatrix& m) {
  return {{"labels", m.map().oam_labels()},
          {"form", m.form() == optics::CountForm::Counts ? "counts" : "probability"},
          {"values", table_to_json(m.values())}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("file", "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("json", e.what());
  }
}

}  // namespace qudit::io
